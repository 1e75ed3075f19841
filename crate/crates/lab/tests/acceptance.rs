//! One PASS/FAIL line per acceptance criterion, each with its time budget.

use std::process::Command;
use std::time::{Duration, Instant};

use prodseq::suites::run_suite;

const CRITERIA: [(usize, &str, u64); 10] = [
    (1, "symmetric-group", 5),
    (2, "padic", 5),
    (3, "crt", 5),
    (4, "reshuffle", 10),
    (5, "builder", 30),
    (6, "cantor", 10),
    (7, "hp-example", 60),
    (8, "abelian-equiv", 10),
    (9, "bounded-znn", 5),
    (10, "linear-groups", 30),
];

fn seed() -> u64 {
    std::env::var("PRODSEQ_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(0)
}

fn line(n: usize, name: &str, ok: bool, elapsed: Duration, budget: u64, note: &str) -> bool {
    let tag = if ok { "PASS" } else { "FAIL" };
    println!("{tag} criterion {n:>2} {name:<16} {:>8.3}s / {budget}s {note}", elapsed.as_secs_f64());
    ok
}

fn suite_criterion(n: usize, name: &str, budget: u64) -> bool {
    let start = Instant::now();
    let result = run_suite(name, seed());
    let elapsed = start.elapsed();
    match result {
        Ok(report) => {
            let failed: Vec<&str> = report.items.iter().filter(|i| !i.pass()).map(|i| i.name.as_str()).collect();
            let within = elapsed <= Duration::from_secs(budget);
            let note = match (failed.is_empty(), within) {
                (true, true) => format!("({} items)", report.items.len()),
                (false, _) => format!("failing items: {}", failed.join(", ")),
                (true, false) => "over budget".to_string(),
            };
            line(n, name, failed.is_empty() && within, elapsed, budget, &note)
        }
        Err(e) => line(n, name, false, elapsed, budget, &format!("error: {e}")),
    }
}

fn determinism() -> bool {
    let bin = env!("CARGO_BIN_EXE_prodseq");
    let mut outputs = Vec::new();
    let mut slowest = Duration::ZERO;
    for _ in 0..2 {
        let start = Instant::now();
        let out = Command::new(bin).args(["verify", "--suite", "all", "--seed", &seed().to_string()]).output();
        slowest = slowest.max(start.elapsed());
        match out {
            Ok(o) if o.status.success() => outputs.push(o.stdout),
            Ok(o) => return line(11, "all/determinism", false, slowest, 180, &format!("exit status {}", o.status)),
            Err(e) => return line(11, "all/determinism", false, slowest, 180, &format!("could not run: {e}")),
        }
    }
    let same = outputs[0] == outputs[1];
    let within = slowest <= Duration::from_secs(180);
    let note = if same { format!("({} bytes, identical)", outputs[0].len()) } else { "reports differ".into() };
    line(11, "all/determinism", same && within, slowest, 180, &note)
}

fn main() {
    let mut ok = true;
    for (n, name, budget) in CRITERIA {
        ok &= suite_criterion(n, name, budget);
    }
    ok &= determinism();
    if !ok {
        std::process::exit(1);
    }
}
