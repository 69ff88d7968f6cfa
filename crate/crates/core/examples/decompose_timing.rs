//! Times `decompose` for the `(s, t)` pairs given on the command line as `s:t`.
fn main() {
    for arg in std::env::args().skip(1) {
        let (s, t) = arg.split_once(':').expect("s:t");
        let (s, t): (u32, u32) = (s.parse().unwrap(), t.parse().unwrap());
        let now = std::time::Instant::now();
        let r = c4colour::decomposer::decompose(s, t);
        println!("s={s} t={t} ok={} {:?}", r.is_ok(), now.elapsed());
    }
}
