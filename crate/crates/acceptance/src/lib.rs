//! Runner for the acceptance checks in `tests/acceptance.rs`.
//!
//! The checks live in their own package so that `cargo test --workspace`
//! runs every other test target before them.

use std::collections::BTreeSet;
use std::panic::{self, UnwindSafe};
use std::time::Instant;

/// A passing detail line or the reason for failing.
pub type Outcome = Result<String, String>;

pub fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Library errors as failure text.
pub fn lib<T>(r: coising::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// Runs the numbered checks in `wanted`, or all of them when it is empty,
/// and prints `criterion N: PASS|FAIL <detail> (<seconds> s)` for each. A
/// panic counts as a failure. Returns the number of failures.
pub fn run<F>(criteria: &[(usize, F)], wanted: &BTreeSet<usize>) -> usize
where
    F: Fn() -> Outcome + UnwindSafe + Copy,
{
    let mut failed = 0;
    for &(k, check) in criteria {
        if !wanted.is_empty() && !wanted.contains(&k) {
            continue;
        }
        let start = Instant::now();
        let outcome = panic::catch_unwind(check).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {k}: PASS {detail} ({secs:.1} s)"),
            Err(detail) => {
                failed += 1;
                println!("criterion {k}: FAIL {detail} ({secs:.1} s)");
            }
        }
    }
    failed
}
