//! `c4colour`: build and check equitable colourings of 4-cycle systems.
//!
//! Exit codes: 0 when every check passes, 1 when a verification fails,
//! 2 for invalid arguments or unreadable documents.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::thread;

use clap::{Parser, Subcommand};

use c4colour::colouring::case_for;
use c4colour::decomposer::decompose;
use c4colour::design::Params;
use c4colour::document::{deserialize, serialize};
use c4colour::verifier::{upper_bound, Check, VerificationReport};
use c4colour::{build, spectrum_range, verify_all, Error};

const FAILURES_SHOWN: usize = 50;

#[derive(Parser)]
#[command(
    name = "c4colour",
    version,
    about = "Equitable block colourings of 4-cycle systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a c-colouring of type s of a system of order 1 + 8hs and verify it.
    Construct {
        #[arg(long)]
        s: u32,
        #[arg(long)]
        h: u32,
        #[arg(long)]
        c: u32,
        /// Write the document here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every check on a document.
    Verify {
        file: PathBuf,
        /// Check type s instead of the document's s.
        #[arg(long)]
        s: Option<u32>,
        /// Expect c colours instead of the document's c.
        #[arg(long)]
        c: Option<u32>,
    },
    /// List the constructible c for given s and h.
    Spectrum {
        #[arg(long)]
        s: u32,
        #[arg(long)]
        h: u32,
        /// Build and verify every c in the range.
        #[arg(long)]
        check: bool,
    },
    /// Print the upper bound s^2 v / (v + s - 1) on the number of colours.
    Bound {
        #[arg(long)]
        v: u32,
        #[arg(long)]
        s: u32,
    },
    /// Print a decomposition of K_2s minus a 1-factor into 4t triangles and
    /// (s^2 - s)/2 - 3t quadrilaterals.
    Decompose {
        #[arg(long)]
        s: u32,
        #[arg(long)]
        t: u32,
    },
}

enum Outcome {
    Pass,
    Fail,
    Usage(String),
}

impl From<Error> for Outcome {
    fn from(e: Error) -> Self {
        Outcome::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Construct { s, h, c, out } => construct(s, h, c, out),
        Command::Verify { file, s, c } => verify(file, s, c),
        Command::Spectrum { s, h, check } => spectrum(s, h, check),
        Command::Bound { v, s } => bound(v, s),
        Command::Decompose { s, t } => decomposition(s, t),
    };
    match outcome {
        Outcome::Pass => ExitCode::SUCCESS,
        Outcome::Fail => ExitCode::from(1),
        Outcome::Usage(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn verdict(report: &VerificationReport) -> Outcome {
    if report.passed {
        Outcome::Pass
    } else {
        Outcome::Fail
    }
}

fn print_report(report: &VerificationReport) {
    let checks = [
        Check::CycleSystem,
        Check::Type,
        Check::Equitable,
        Check::ColourCount,
        Check::Bound,
    ];
    for check in checks {
        let n = report.failures.iter().filter(|f| f.check == check).count();
        if n == 0 {
            println!("{check}: pass");
        } else {
            println!("{check}: FAIL ({n})");
        }
    }
    println!("verdict: {}", if report.passed { "PASS" } else { "FAIL" });
    let stderr = io::stderr();
    let mut err = stderr.lock();
    for failure in report.failures.iter().take(FAILURES_SHOWN) {
        let _ = writeln!(err, "{failure}");
    }
    if report.failures.len() > FAILURES_SHOWN {
        let _ = writeln!(err, "... {} more", report.failures.len() - FAILURES_SHOWN);
    }
}

fn construct(s: u32, h: u32, c: u32, out: Option<PathBuf>) -> Outcome {
    let colsys = match build(s, h, c) {
        Ok(cs) => cs,
        Err(e @ Error::DecompositionInfeasible { .. })
        | Err(e @ Error::ConstructionInfeasible(_)) => {
            eprintln!("error: {e}");
            return Outcome::Fail;
        }
        Err(e) => return e.into(),
    };
    let report = verify_all(&colsys);
    let bytes = serialize(&colsys);
    let summary = format!(
        "constructed s={s} h={h} c={c} case={} v={} blocks={}",
        colsys.construction_case,
        colsys.system.order,
        colsys.system.blocks.len()
    );
    match out {
        Some(path) => {
            if let Err(e) = fs::write(&path, &bytes) {
                return Outcome::Usage(format!("cannot write {}: {e}", path.display()));
            }
            println!("{summary}");
            println!("wrote {}", path.display());
            print_report(&report);
        }
        None => {
            // the document owns stdout, so the verdict goes to stderr
            let _ = io::stdout().write_all(&bytes);
            eprintln!("{summary}");
            eprint!("{report}");
        }
    }
    verdict(&report)
}

fn verify(file: PathBuf, s: Option<u32>, c: Option<u32>) -> Outcome {
    let bytes = match fs::read(&file) {
        Ok(b) => b,
        Err(e) => return Outcome::Usage(format!("cannot read {}: {e}", file.display())),
    };
    let mut colsys = match deserialize(&bytes) {
        Ok(cs) => cs,
        Err(e) => return e.into(),
    };
    if let Some(s) = s {
        colsys.params = match Params::for_order(s, colsys.system.order) {
            Ok(p) => p,
            Err(e) => return e.into(),
        };
    }
    if let Some(c) = c {
        colsys.colouring.c = c;
    }
    println!(
        "document {}: v={} blocks={} s={} c={} case={}",
        file.display(),
        colsys.system.order,
        colsys.system.blocks.len(),
        colsys.params.s,
        colsys.colouring.c,
        colsys.construction_case
    );
    let report = verify_all(&colsys);
    print_report(&report);
    verdict(&report)
}

fn spectrum(s: u32, h: u32, check: bool) -> Outcome {
    let range = match spectrum_range(s, h) {
        Ok(r) => r,
        Err(e) => return e.into(),
    };
    let v = 1 + 8 * h * s;
    let values: Vec<u32> = range.collect();
    let listed: Vec<String> = values.iter().map(u32::to_string).collect();
    println!("s={s} h={h} v={v}: {}", listed.join(" "));
    if !check {
        for &c in &values {
            println!("c={c} {}", case_for(s, c).expect("c in range"));
        }
        return Outcome::Pass;
    }
    let results: Vec<Result<VerificationReport, Error>> = thread::scope(|scope| {
        let handles: Vec<_> = values
            .iter()
            .map(|&c| scope.spawn(move || build(s, h, c).map(|cs| verify_all(&cs))))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    let mut all_passed = true;
    for (&c, result) in values.iter().zip(results) {
        let case = case_for(s, c).expect("c in range");
        match result {
            Ok(report) if report.passed => println!("c={c} {case} PASS"),
            Ok(report) => {
                all_passed = false;
                println!("c={c} {case} FAIL");
                eprint!("c={c}: {report}");
            }
            Err(e) => {
                all_passed = false;
                println!("c={c} {case} FAIL");
                eprintln!("c={c}: {e}");
            }
        }
    }
    if all_passed {
        Outcome::Pass
    } else {
        Outcome::Fail
    }
}

fn bound(v: u32, s: u32) -> Outcome {
    if let Err(e) = Params::for_order(s, v) {
        return e.into();
    }
    let b = upper_bound(v, s);
    println!("{b} (floor {})", b.to_integer());
    Outcome::Pass
}

fn decomposition(s: u32, t: u32) -> Outcome {
    match decompose(s, t) {
        Ok(d) => {
            print!("{d}");
            Outcome::Pass
        }
        Err(e @ Error::DecompositionInfeasible { .. }) => {
            eprintln!("error: {e}");
            Outcome::Fail
        }
        Err(e) => e.into(),
    }
}
