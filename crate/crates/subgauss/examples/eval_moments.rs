//! Prints cumulants κ₁..κ₆ and a few even central moments for "alpha beta"
//! lines on stdin. Used by external cross-checks.

use std::io::BufRead;

use subgauss::kummer::{beta_central_even_moment, beta_cumulants};

fn main() {
    let stdin = std::io::stdin();
    for line in stdin.lock().lines() {
        let line = line.unwrap();
        let v: Vec<f64> = line
            .split_whitespace()
            .map(|t| t.parse().unwrap())
            .collect();
        let k = beta_cumulants(v[0], v[1]);
        let mut out: Vec<String> = k[1..].iter().map(|x| format!("{x:e}")).collect();
        if (v[0] - v[1]).abs() < 1e-12 {
            for j in [1u32, 2, 5, 15, 30] {
                out.push(format!("{:e}", beta_central_even_moment(v[0], j)));
            }
        }
        println!("{}", out.join(" "));
    }
}
