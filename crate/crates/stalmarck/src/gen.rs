//! Random k-SAT instance generation with a portable, seeded PRNG.
//!
//! Reproducibility across platforms and languages matters more here than
//! statistical sophistication, so the generator pins down every detail:
//!
//! * PRNG: SplitMix64 (Steele–Lea–Flood; the `SplittableRandom` mixer).
//!   64-bit state, two multiply-xorshift rounds per output, identical
//!   streams everywhere.
//! * Each clause draws `k` distinct variables by a partial Fisher–Yates
//!   shuffle of `1..=n`: at step `j`, one `next_u64` picks the swap index
//!   `j + (draw mod (n - j))`, then a second `next_u64` decides the sign
//!   (even → positive). Literals appear in draw order.
//! * The modulo step carries a bias below 2⁻⁵⁷ for any `n` under a billion —
//!   irrelevant at benchmark scale and kept for portability of the stream.
//!
//! Clauses may repeat across the formula; variables never repeat within a
//! clause.

use thiserror::Error;

use crate::cnf::CnfFormula;

/// SplitMix64 pseudorandom generator.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}

/// Shape and seed of one random instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenSpec {
    pub n: u32,
    pub m: u32,
    pub k: u32,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("invalid instance shape: {detail}")]
    InvalidSpec { detail: String },
}

fn invalid(detail: impl Into<String>) -> GenError {
    GenError::InvalidSpec {
        detail: detail.into(),
    }
}

/// Generates `m` clauses of `k` distinct variables over `1..=n`, signs fair
/// and independent, fully determined by the seed.
pub fn gen_ksat(spec: &GenSpec) -> Result<CnfFormula, GenError> {
    if spec.n == 0 || spec.m == 0 || spec.k == 0 {
        return Err(invalid("n, m, and k must all be positive"));
    }
    if spec.k > spec.n {
        return Err(invalid(format!(
            "clause width k ({}) exceeds variable count n ({})",
            spec.k, spec.n
        )));
    }
    let mut rng = SplitMix64::new(spec.seed);
    let mut clauses = Vec::with_capacity(spec.m as usize);
    for _ in 0..spec.m {
        let mut pool: Vec<u32> = (1..=spec.n).collect();
        let mut clause = Vec::with_capacity(spec.k as usize);
        for j in 0..spec.k as usize {
            let remaining = spec.n as u64 - j as u64;
            let i = j + (rng.next_u64() % remaining) as usize;
            pool.swap(j, i);
            let negative = rng.next_u64() & 1 != 0;
            let var = pool[j] as i32;
            clause.push(if negative { -var } else { var });
        }
        clauses.push(clause);
    }
    Ok(CnfFormula {
        num_vars: spec.n,
        clauses,
    })
}
