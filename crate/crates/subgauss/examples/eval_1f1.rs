//! Tiny evaluation shim: prints 1F1(a;b;x) and ln 1F1(a;b;x) for triples
//! given on stdin as "a b x" lines. Used by external cross-checks.

use std::io::BufRead;

use subgauss::{kummer_1f1, log_kummer_1f1, KummerArgs, SeriesConfig};

fn main() {
    let cfg = SeriesConfig::default();
    let stdin = std::io::stdin();
    for line in stdin.lock().lines() {
        let line = line.unwrap();
        let v: Vec<f64> = line
            .split_whitespace()
            .map(|t| t.parse().unwrap())
            .collect();
        let args = KummerArgs::new(v[0], v[1], v[2]).unwrap();
        println!(
            "{:e} {:e}",
            kummer_1f1(&args, &cfg).unwrap(),
            log_kummer_1f1(&args, &cfg).unwrap()
        );
    }
}
