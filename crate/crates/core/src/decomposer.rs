//! Decompositions of `K_2s` minus the 1-factor `I = {(1,2), (3,4), ...}`
//! into triangles and quadrilaterals.
//!
//! Vertices are `1..=2s`. [`decompose`] runs a deterministic depth-first
//! search; [`enumerate_decompositions`] is an exhaustive exact-cover search
//! over precomputed cycles, kept separate so it can serve as an oracle for
//! small `s`.

use std::fmt;

use crate::design::{canonicalize, Cycle4};
use crate::{Error, Result};

pub type Triangle = [u32; 3];
pub type Quad = [u32; 4];

/// Largest `s` accepted by [`enumerate_decompositions`].
pub const ORACLE_MAX_S: u32 = 4;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Decomposition {
    pub s: u32,
    /// Sorted vertex triples.
    pub triangles: Vec<Triangle>,
    /// 4-cycles `(i, j, k, l)` with edges `ij, jk, kl, li`, in the same
    /// canonical orientation as [`canonicalize`].
    pub quads: Vec<Quad>,
}

impl Decomposition {
    /// Cycles in colouring order: triangles first, then quadrilaterals.
    pub fn cycles(&self) -> impl Iterator<Item = Vec<u32>> + '_ {
        self.triangles
            .iter()
            .map(|t| t.to_vec())
            .chain(self.quads.iter().map(|q| q.to_vec()))
    }

    /// Edges of every cycle, each as `(min, max)`.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        self.cycles().flat_map(|c| cycle_edges(&c)).collect()
    }

    fn normalise(mut self) -> Self {
        self.triangles.sort_unstable();
        self.quads.sort_unstable();
        self
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = 2 * self.s;
        let matching: Vec<String> = (1..=self.s)
            .map(|i| format!("({},{})", 2 * i - 1, 2 * i))
            .collect();
        writeln!(f, "K_{n} - I, I = {}", matching.join(" "))?;
        writeln!(f, "triangles ({}):", self.triangles.len())?;
        for [a, b, c] in &self.triangles {
            writeln!(f, "  ({a},{b},{c})")?;
        }
        writeln!(f, "quadrilaterals ({}):", self.quads.len())?;
        for [a, b, c, d] in &self.quads {
            writeln!(f, "  ({a},{b},{c},{d})")?;
        }
        Ok(())
    }
}

pub(crate) fn cycle_edges(cycle: &[u32]) -> Vec<(u32, u32)> {
    (0..cycle.len())
        .map(|i| {
            let (x, y) = (cycle[i], cycle[(i + 1) % cycle.len()]);
            (x.min(y), x.max(y))
        })
        .collect()
}

fn in_one_factor(x: u32, y: u32) -> bool {
    let (lo, hi) = (x.min(y), x.max(y));
    lo % 2 == 1 && hi == lo + 1
}

/// Largest admissible `t` for a given `s`.
pub fn max_t(s: u32) -> u32 {
    (s * s - s) / 6
}

/// `(4t, (s^2 - s)/2 - 3t)`: triangle and quadrilateral counts whose edges
/// add up to `2s^2 - 2s`.
pub fn triangle_quad_counts(s: u32, t: u32) -> Result<(u32, u32)> {
    if s < 3 || t < 1 || t > max_t(s) {
        return Err(Error::CaseNotApplicable {
            case: "triangle/quadrilateral decomposition",
            reason: format!(
                "need s >= 3 and 1 <= t <= {} , got s = {s}, t = {t}",
                max_t(s.max(3))
            ),
        });
    }
    let n3 = 4 * t;
    let n4 = (s * s - s) / 2 - 3 * t;
    debug_assert_eq!(3 * n3 + 4 * n4, 2 * s * s - 2 * s);
    Ok((n3, n4))
}

struct Search {
    n: usize,
    free: Vec<Vec<bool>>,
    triangles: Vec<Triangle>,
    quads: Vec<Quad>,
    n3: u32,
    n4: u32,
}

impl Search {
    fn new(s: u32, n3: u32, n4: u32) -> Self {
        let n = 2 * s as usize;
        let free = (0..=n)
            .map(|x| {
                (0..=n)
                    .map(|y| x > 0 && y > 0 && x != y && !in_one_factor(x as u32, y as u32))
                    .collect()
            })
            .collect();
        Search {
            n,
            free,
            triangles: Vec::new(),
            quads: Vec::new(),
            n3,
            n4,
        }
    }

    fn first_free_edge(&self) -> Option<(usize, usize)> {
        (1..=self.n).find_map(|x| (x + 1..=self.n).find(|&y| self.free[x][y]).map(|y| (x, y)))
    }

    fn set(&mut self, cycle: &[usize], value: bool) {
        for i in 0..cycle.len() {
            let (x, y) = (cycle[i], cycle[(i + 1) % cycle.len()]);
            self.free[x][y] = value;
            self.free[y][x] = value;
        }
    }

    /// Free edges on no free triangle can only be covered by quadrilaterals.
    /// Cutting here never removes a solution, so the first solution found is
    /// unchanged.
    fn hopeless(&self) -> bool {
        let mut triangle_free_edges = 0;
        for x in 1..=self.n {
            for y in x + 1..=self.n {
                if self.free[x][y] && !(1..=self.n).any(|z| self.free[x][z] && self.free[y][z]) {
                    triangle_free_edges += 1;
                    if triangle_free_edges > 4 * self.n4 {
                        return true;
                    }
                }
            }
        }
        false
    }

    fn run(&mut self) -> bool {
        let Some((u, v)) = self.first_free_edge() else {
            return self.n3 == 0 && self.n4 == 0;
        };
        if self.hopeless() {
            return false;
        }
        if self.n3 > 0 {
            for w in 1..=self.n {
                if w != u && w != v && self.free[u][w] && self.free[v][w] {
                    let tri = [u, v, w];
                    self.set(&tri, false);
                    self.n3 -= 1;
                    let mut sorted = [u as u32, v as u32, w as u32];
                    sorted.sort_unstable();
                    self.triangles.push(sorted);
                    if self.run() {
                        return true;
                    }
                    self.triangles.pop();
                    self.n3 += 1;
                    self.set(&tri, true);
                }
            }
        }
        if self.n4 > 0 {
            for w in 1..=self.n {
                if w == u || w == v || !self.free[v][w] {
                    continue;
                }
                for x in 1..=self.n {
                    if x == u || x == v || x == w || !self.free[w][x] || !self.free[x][u] {
                        continue;
                    }
                    let quad = [u, v, w, x];
                    self.set(&quad, false);
                    self.n4 -= 1;
                    self.quads
                        .push(canonical_quad([u as u32, v as u32, w as u32, x as u32]));
                    if self.run() {
                        return true;
                    }
                    self.quads.pop();
                    self.n4 += 1;
                    self.set(&quad, true);
                }
            }
        }
        false
    }
}

fn canonical_quad(q: Quad) -> Quad {
    canonicalize(Cycle4::from(q))
        .expect("quadrilateral vertices are distinct")
        .labels()
}

/// Splits `K_2s - I` into `4t` triangles and `(s^2 - s)/2 - 3t`
/// quadrilaterals.
///
/// Depth-first over the lexicographically first uncovered edge, trying
/// triangles before quadrilaterals and smaller vertices first, so the result
/// is fixed for each `(s, t)`.
pub fn decompose(s: u32, t: u32) -> Result<Decomposition> {
    let (n3, n4) = triangle_quad_counts(s, t)?;
    let mut search = Search::new(s, n3, n4);
    if !search.run() {
        return Err(Error::DecompositionInfeasible {
            s,
            triangles: n3,
            quads: n4,
        });
    }
    Ok(Decomposition {
        s,
        triangles: search.triangles,
        quads: search.quads,
    }
    .normalise())
}

/// Candidate cycle for the exact-cover oracle: an edge bitmask plus its
/// vertex tuple.
struct Candidate {
    mask: u64,
    vertices: Vec<u32>,
}

fn all_cycles(s: u32) -> (Vec<(u32, u32)>, Vec<Candidate>, Vec<Candidate>) {
    let n = 2 * s;
    let edges: Vec<(u32, u32)> = (1..=n)
        .flat_map(|x| (x + 1..=n).map(move |y| (x, y)))
        .filter(|&(x, y)| !in_one_factor(x, y))
        .collect();
    let edge_bit = |x: u32, y: u32| -> Option<u64> {
        let e = (x.min(y), x.max(y));
        edges.iter().position(|&f| f == e).map(|i| 1u64 << i)
    };
    let mask_of = |c: &[u32]| -> Option<u64> {
        cycle_edges(c)
            .into_iter()
            .try_fold(0u64, |m, (x, y)| edge_bit(x, y).map(|b| m | b))
    };
    let mut triangles = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            for c in b + 1..=n {
                if let Some(mask) = mask_of(&[a, b, c]) {
                    triangles.push(Candidate {
                        mask,
                        vertices: vec![a, b, c],
                    });
                }
            }
        }
    }
    // each 4-set carries three distinct 4-cycles: (a,b,c,d), (a,b,d,c), (a,c,b,d)
    let mut quads = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            for c in b + 1..=n {
                for d in c + 1..=n {
                    for cyc in [[a, b, c, d], [a, b, d, c], [a, c, b, d]] {
                        if let Some(mask) = mask_of(&cyc) {
                            quads.push(Candidate {
                                mask,
                                vertices: cyc.to_vec(),
                            });
                        }
                    }
                }
            }
        }
    }
    (edges, triangles, quads)
}

struct Oracle<'a> {
    edge_count: usize,
    triangles: &'a [Candidate],
    quads: &'a [Candidate],
    limit: usize,
    found: Vec<Decomposition>,
    s: u32,
}

impl Oracle<'_> {
    fn search(&mut self, covered: u64, n3: u32, n4: u32, chosen: &mut Vec<(bool, usize)>) {
        if self.found.len() >= self.limit {
            return;
        }
        let full = (1u64 << self.edge_count) - 1;
        if covered == full {
            if n3 == 0 && n4 == 0 {
                self.record(chosen);
            }
            return;
        }
        // branch on the uncovered edge with the fewest usable cycles
        let usable = |c: &Candidate| c.mask & covered == 0;
        let mut best: Option<(usize, u64)> = None;
        for e in 0..self.edge_count {
            let bit = 1u64 << e;
            if covered & bit != 0 {
                continue;
            }
            let mut count = 0;
            if n3 > 0 {
                count += self
                    .triangles
                    .iter()
                    .filter(|c| c.mask & bit != 0 && usable(c))
                    .count();
            }
            if n4 > 0 {
                count += self
                    .quads
                    .iter()
                    .filter(|c| c.mask & bit != 0 && usable(c))
                    .count();
            }
            if count == 0 {
                return;
            }
            if best.is_none_or(|(n, _)| count < n) {
                best = Some((count, bit));
            }
        }
        let (_, bit) = best.expect("an uncovered edge exists");
        if n3 > 0 {
            for i in 0..self.triangles.len() {
                let c = &self.triangles[i];
                if c.mask & bit != 0 && usable(c) {
                    chosen.push((true, i));
                    self.search(covered | c.mask, n3 - 1, n4, chosen);
                    chosen.pop();
                }
            }
        }
        if n4 > 0 {
            for i in 0..self.quads.len() {
                let c = &self.quads[i];
                if c.mask & bit != 0 && usable(c) {
                    chosen.push((false, i));
                    self.search(covered | c.mask, n3, n4 - 1, chosen);
                    chosen.pop();
                }
            }
        }
    }

    fn record(&mut self, chosen: &[(bool, usize)]) {
        let mut d = Decomposition {
            s: self.s,
            triangles: Vec::new(),
            quads: Vec::new(),
        };
        for &(is_triangle, i) in chosen {
            if is_triangle {
                let v = &self.triangles[i].vertices;
                d.triangles.push([v[0], v[1], v[2]]);
            } else {
                let v = &self.quads[i].vertices;
                d.quads.push(canonical_quad([v[0], v[1], v[2], v[3]]));
            }
        }
        self.found.push(d.normalise());
    }
}

/// Up to `limit` distinct decompositions, found by exhaustive search.
/// Returns an empty list when none exists.
pub fn enumerate_decompositions(s: u32, t: u32, limit: usize) -> Result<Vec<Decomposition>> {
    if s > ORACLE_MAX_S {
        return Err(Error::OracleScaleExceeded {
            s,
            max: ORACLE_MAX_S,
        });
    }
    let (n3, n4) = triangle_quad_counts(s, t)?;
    if limit == 0 {
        return Err(Error::ParameterTooSmall {
            name: "limit",
            min: 1,
            value: 0,
        });
    }
    let (edges, triangles, quads) = all_cycles(s);
    let mut oracle = Oracle {
        edge_count: edges.len(),
        triangles: &triangles,
        quads: &quads,
        limit,
        found: Vec::new(),
        s,
    };
    oracle.search(0, n3, n4, &mut Vec::new());
    let mut found = oracle.found;
    found.sort();
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn check_invariants(d: &Decomposition, s: u32, t: u32) {
        assert_eq!(d.triangles.len() as u32, 4 * t);
        assert_eq!(d.quads.len() as u32, (s * s - s) / 2 - 3 * t);
        let mut census = BTreeMap::new();
        for e in d.edges() {
            *census.entry(e).or_insert(0) += 1;
        }
        let n = 2 * s;
        let expected: Vec<(u32, u32)> = (1..=n)
            .flat_map(|x| (x + 1..=n).map(move |y| (x, y)))
            .filter(|&(x, y)| !(x % 2 == 1 && y == x + 1))
            .collect();
        assert_eq!(census.keys().copied().collect::<Vec<_>>(), expected);
        assert!(census.values().all(|&m| m == 1));
        for p in 1..=n {
            let through = d.cycles().filter(|c| c.contains(&p)).count() as u32;
            assert_eq!(through, s - 1, "vertex {p}");
        }
    }

    #[test]
    fn counts() {
        assert_eq!(triangle_quad_counts(3, 1).unwrap(), (4, 0));
        assert_eq!(triangle_quad_counts(4, 1).unwrap(), (4, 3));
        assert_eq!(triangle_quad_counts(4, 2).unwrap(), (8, 0));
        assert!(triangle_quad_counts(3, 0).is_err());
        assert!(triangle_quad_counts(3, 2).is_err());
        assert!(triangle_quad_counts(2, 1).is_err());
        for s in 3..=12 {
            for t in 1..=max_t(s) {
                let (n3, n4) = triangle_quad_counts(s, t).unwrap();
                assert_eq!(3 * n3 + 4 * n4, 2 * s * s - 2 * s);
            }
        }
    }

    #[test]
    fn octahedron_splits_into_four_triangles() {
        let d = decompose(3, 1).unwrap();
        check_invariants(&d, 3, 1);
        assert!(d
            .triangles
            .iter()
            .all(|t| !(t.contains(&1) && t.contains(&2))));
    }

    #[test]
    fn decompose_all_small_cases() {
        for s in 3..=6 {
            for t in 1..=max_t(s) {
                let d = decompose(s, t).unwrap_or_else(|e| panic!("s={s} t={t}: {e}"));
                check_invariants(&d, s, t);
            }
        }
    }

    #[test]
    fn decompose_is_deterministic() {
        assert_eq!(decompose(5, 2).unwrap(), decompose(5, 2).unwrap());
    }

    #[test]
    fn oracle_counts_octahedron() {
        // K_6 minus a perfect matching is the octahedron; its 8 faces are its
        // only triangles and they split into two alternating 4-sets.
        let all = enumerate_decompositions(3, 1, 100).unwrap();
        assert_eq!(all.len(), 2);
        let d = decompose(3, 1).unwrap();
        assert!(all.contains(&d));
    }

    #[test]
    fn oracle_agrees_with_search() {
        for s in 3..=4 {
            for t in 1..=max_t(s) {
                let found = enumerate_decompositions(s, t, 1).unwrap();
                assert_eq!(found.is_empty(), decompose(s, t).is_err());
                for d in &found {
                    check_invariants(d, s, t);
                }
            }
        }
        let all = enumerate_decompositions(4, 2, usize::MAX).unwrap();
        assert!(all.contains(&decompose(4, 2).unwrap()));
    }

    #[test]
    fn oracle_guards() {
        assert!(matches!(
            enumerate_decompositions(5, 1, 1),
            Err(Error::OracleScaleExceeded { s: 5, .. })
        ));
        assert!(matches!(
            enumerate_decompositions(3, 0, 1),
            Err(Error::CaseNotApplicable { .. })
        ));
        assert!(enumerate_decompositions(3, 1, 0).is_err());
    }

    #[test]
    fn oracle_results_are_distinct() {
        let all = enumerate_decompositions(4, 1, 50).unwrap();
        assert!(!all.is_empty());
        let mut dedup = all.clone();
        dedup.dedup();
        assert_eq!(dedup.len(), all.len());
    }
}
