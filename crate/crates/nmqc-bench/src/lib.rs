//! Benchmark-only crate; see `benches/pipeline.rs`.

use nmqc::BooleanFunction;

/// A pseudo-random but fixed truth table, so benches measure the same
/// function on every run.
pub fn scrambled_table(n: usize) -> BooleanFunction {
    let mut state = 0x9e3779b97f4a7c15u64;
    let table: Vec<u8> = (0..(1usize << n))
        .map(|_| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 60) as u8 & 1
        })
        .collect();
    BooleanFunction::new(n, table).expect("valid table")
}
