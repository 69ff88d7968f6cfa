//! Acceptance criteria, one line of output each. Runs without the libtest
//! harness so the lines are always printed; exits non-zero if any fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_rational::Ratio;

use c4colour::constructors::cyclic_4cs;
use c4colour::decomposer::{decompose, enumerate_decompositions, max_t, Decomposition};
use c4colour::document::{deserialize, serialize};
use c4colour::verifier::{upper_bound, verify_cycle_system, Witness};
use c4colour::{build, spectrum_range, verify_all, ColouredSystem};

const GRID_S: std::ops::RangeInclusive<u32> = 1..=5;
const GRID_H: std::ops::RangeInclusive<u32> = 1..=3;

const SPECTRUM_BUDGET: Duration = Duration::from_secs(30);
const CYCLIC_BUDGET: Duration = Duration::from_secs(10);
const DECOMPOSER_BUDGET: Duration = Duration::from_secs(10);

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(budget: Duration, start: Instant) -> Result<Duration, String> {
    let took = start.elapsed();
    ensure(took <= budget, || {
        format!("took {took:?}, budget {budget:?}")
    })?;
    Ok(took)
}

/// Every vertex of a built system has exactly `s` colour classes, each of
/// size `4h`; recounted here from the raw blocks.
fn class_sizes_exact(cs: &ColouredSystem, s: u32, h: u32) -> bool {
    let mut tally: Vec<BTreeMap<u32, u32>> = vec![BTreeMap::new(); cs.system.order as usize];
    for (b, &col) in cs.system.blocks.iter().zip(&cs.colouring.colours) {
        for x in b.labels() {
            *tally[x as usize].entry(col).or_default() += 1;
        }
    }
    tally
        .iter()
        .all(|t| t.len() == s as usize && t.values().all(|&n| n == 4 * h))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut built = 0;
    for s in GRID_S {
        for h in GRID_H {
            for c in spectrum_range(s, h).map_err(|e| e.to_string())? {
                let cs = build(s, h, c).map_err(|e| format!("build({s},{h},{c}): {e}"))?;
                let report = verify_all(&cs);
                ensure(report.passed, || {
                    format!("build({s},{h},{c}) failed:\n{report}")
                })?;
                ensure(class_sizes_exact(&cs, s, h), || {
                    format!("build({s},{h},{c}) class sizes")
                })?;
                ensure(cs.colouring.c == c, || {
                    format!("build({s},{h},{c}) claims {}", cs.colouring.c)
                })?;
                built += 1;
            }
        }
    }
    let took = within(SPECTRUM_BUDGET, start)?;
    Ok(format!("{built} colourings verified in {took:.2?}"))
}

fn criterion_2() -> Outcome {
    let mut n = 0;
    for s in GRID_S {
        for h in GRID_H {
            let range = spectrum_range(s, h).map_err(|e| e.to_string())?;
            ensure(*range.start() == s, || {
                format!("spectrum for s={s} starts at {}", range.start())
            })?;
            let cs = build(s, h, s).map_err(|e| e.to_string())?;
            let report = verify_all(&cs);
            ensure(report.passed, || format!("c = s = {s}, h = {h}:\n{report}"))?;
            // type s forces at least s colours globally
            let mut used = cs.colouring.colours.clone();
            used.sort_unstable();
            used.dedup();
            ensure(used.len() as u32 == s, || {
                format!("s={s} h={h} uses {} colours", used.len())
            })?;
            n += 1;
        }
    }
    Ok(format!("c = s realised on all {n} grid points"))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    for k in 1..=20 {
        let sys = cyclic_4cs(k).map_err(|e| e.to_string())?;
        ensure(sys.blocks.len() as u32 == k * (8 * k + 1), || {
            format!("k={k} block count")
        })?;
        let report = verify_cycle_system(&sys);
        ensure(report.passed, || format!("k={k}:\n{report}"))?;
    }
    let took = within(CYCLIC_BUDGET, start)?;
    Ok(format!("k = 1..20 partition K_(8k+1) in {took:.2?}"))
}

/// Recomputed from the decomposition alone.
fn decomposition_exact(d: &Decomposition, s: u32, t: u32) -> Result<(), String> {
    ensure(d.triangles.len() as u32 == 4 * t, || {
        format!("s={s} t={t}: {} triangles", d.triangles.len())
    })?;
    let quads = (s * s - s) / 2 - 3 * t;
    ensure(d.quads.len() as u32 == quads, || {
        format!("s={s} t={t}: {} quads", d.quads.len())
    })?;
    let n = 2 * s;
    let mut census: BTreeMap<(u32, u32), u32> = BTreeMap::new();
    let cycles: Vec<Vec<u32>> = d
        .triangles
        .iter()
        .map(|c| c.to_vec())
        .chain(d.quads.iter().map(|c| c.to_vec()))
        .collect();
    for cyc in &cycles {
        for i in 0..cyc.len() {
            let (x, y) = (cyc[i], cyc[(i + 1) % cyc.len()]);
            *census.entry((x.min(y), x.max(y))).or_default() += 1;
        }
    }
    for x in 1..=n {
        for y in x + 1..=n {
            let in_matching = x % 2 == 1 && y == x + 1;
            let want = if in_matching { 0 } else { 1 };
            let got = census.remove(&(x, y)).unwrap_or(0);
            ensure(got == want, || {
                format!("s={s} t={t}: edge {x}-{y} covered {got} times")
            })?;
        }
    }
    ensure(census.is_empty(), || {
        format!("s={s} t={t}: stray edges {census:?}")
    })?;
    for p in 1..=n {
        let through = cycles.iter().filter(|c| c.contains(&p)).count() as u32;
        ensure(through == s - 1, || {
            format!("s={s} t={t}: vertex {p} on {through} cycles")
        })?;
    }
    Ok(())
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let mut cases = 0;
    for s in 3..=5 {
        for t in 1..=max_t(s) {
            let d = decompose(s, t).map_err(|e| format!("s={s} t={t}: {e}"))?;
            decomposition_exact(&d, s, t)?;
            if s <= 4 {
                let oracle = enumerate_decompositions(s, t, 1).map_err(|e| e.to_string())?;
                ensure(!oracle.is_empty(), || {
                    format!("oracle found nothing for s={s} t={t}")
                })?;
                decomposition_exact(&oracle[0], s, t)?;
            }
            cases += 1;
        }
    }
    let took = within(DECOMPOSER_BUDGET, start)?;
    Ok(format!(
        "{cases} (s, t) cases exact, oracle agrees for s <= 4, {took:.2?}"
    ))
}

fn criterion_5() -> Outcome {
    for s in 1..=12u32 {
        for h in 1..=3u32 {
            let v = 1 + 8 * h * s;
            let bound = upper_bound(v, s);
            ensure(
                bound == Ratio::new(u64::from(s * s * v), u64::from(v + s - 1)),
                || format!("bound({v},{s}) = {bound}"),
            )?;
            let top = u64::from((2 * s * s + s) / 3);
            ensure(top <= bound.to_integer(), || {
                format!("s={s} h={h}: {top} > floor({bound})")
            })?;
        }
    }
    for s in GRID_S {
        for h in GRID_H {
            for c in spectrum_range(s, h).map_err(|e| e.to_string())? {
                let cs = build(s, h, c).map_err(|e| e.to_string())?;
                let bound = upper_bound(cs.system.order, s);
                ensure(
                    Ratio::from_integer(u64::from(cs.colouring.c)) <= bound,
                    || format!("build({s},{h},{c}) exceeds {bound}"),
                )?;
            }
        }
    }
    Ok("spectrum top within exact bound for s <= 12, h <= 3".into())
}

fn concrete(w: &Witness) -> bool {
    matches!(
        w,
        Witness::Edge { .. }
            | Witness::Vertex { .. }
            | Witness::Colour { .. }
            | Witness::Block { .. }
    )
}

fn expect_failure(label: &str, cs: &ColouredSystem) -> Result<(), String> {
    let report = verify_all(cs);
    ensure(!report.passed, || format!("{label}: mutation not detected"))?;
    ensure(report.failures.iter().any(|f| concrete(&f.witness)), || {
        format!("{label}: no concrete witness in\n{report}")
    })
}

fn criterion_6() -> Outcome {
    for (s, h, c) in [(2, 1, 2), (3, 1, 7)] {
        let base = build(s, h, c).map_err(|e| e.to_string())?;
        ensure(verify_all(&base).passed, || {
            format!("build({s},{h},{c}) baseline fails")
        })?;
        let tag = |m: &str| format!("build({s},{h},{c}) {m}");

        let mut m = base.clone();
        m.system.blocks.remove(0);
        m.colouring.colours.remove(0);
        expect_failure(&tag("delete"), &m)?;

        let mut m = base.clone();
        m.system.blocks.push(m.system.blocks[0]);
        m.colouring.colours.push(m.colouring.colours[0]);
        expect_failure(&tag("duplicate"), &m)?;

        let blocks = &base.system.blocks;
        let colours = &base.colouring.colours;
        let (i, j) = (0..blocks.len())
            .flat_map(|i| (i + 1..blocks.len()).map(move |j| (i, j)))
            .find(|&(i, j)| {
                colours[i] != colours[j]
                    && blocks[i].labels().iter().any(|&x| blocks[j].contains(x))
            })
            .ok_or_else(|| tag("no swappable pair"))?;
        let mut m = base.clone();
        m.colouring.colours.swap(i, j);
        expect_failure(&tag("swap"), &m)?;

        let mut m = base.clone();
        for col in m.colouring.colours.iter_mut() {
            if *col == c {
                *col = 1;
            }
        }
        expect_failure(&tag("rename"), &m)?;
    }
    Ok("delete, duplicate, swap and rename all caught with witnesses".into())
}

fn criterion_7() -> Outcome {
    for (s, h, c) in [(1, 1, 1), (2, 1, 3), (3, 1, 7), (4, 2, 11)] {
        let doc = serialize(&build(s, h, c).map_err(|e| e.to_string())?);
        let back = deserialize(&doc).map_err(|e| e.to_string())?;
        ensure(serialize(&back) == doc, || {
            format!("build({s},{h},{c}) round trip differs")
        })?;
    }
    let first = serialize(&build(3, 1, 7).map_err(|e| e.to_string())?);
    let second = serialize(&build(3, 1, 7).map_err(|e| e.to_string())?);
    ensure(first == second, || "two builds of (3,1,7) differ".into())?;
    Ok(format!(
        "round trip exact, build(3,1,7) stable ({} bytes)",
        first.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        (
            "1 spectrum s..floor((2s^2+s)/3) for s<=5, h<=3",
            criterion_1,
        ),
        ("2 lower index equals s", criterion_2),
        ("3 cyclic systems k=1..20", criterion_3),
        ("4 triangle/quad decompositions", criterion_4),
        ("5 colour bound consistency", criterion_5),
        ("6 verifier mutation sensitivity", criterion_6),
        ("7 serialization stability", criterion_7),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS  criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {name}: {why}");
            }
        }
    }
    println!("acceptance: {} of 7 passed", 7 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
