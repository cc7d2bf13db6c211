//! The seven simple deduction rules and their fixpoint (0-saturation).
//!
//! Each rule matches a triplet shape built from the truth table of
//! `x ↔ (y → z)` and concludes one or two equivalences:
//!
//! ```text
//! (1) (0, y, z)  ⇒  y ≡ 1, z ≡ 0        (2) (x, y, 1)  ⇒  x ≡ 1
//! (3) (x, 0, z)  ⇒  x ≡ 1               (4) (x, 1, z)  ⇒  x ≡ z
//! (5) (x, y, 0)  ⇒  x ≡ ¬y              (6) (x, x, z)  ⇒  x ≡ 1, z ≡ 1
//! (7) (x, y, y)  ⇒  x ≡ 1
//! ```
//!
//! Rules are tried in that fixed order and the first match wins. Shapes (6)
//! and (7) require literal identity (same variable, same sign) after
//! canonicalization; the overlap between patterns (for instance `(0, 0, z)`
//! fits both (1) and (3)) is harmless since every rule is individually sound.

use std::time::Instant;

use arrayvec::ArrayVec;

use crate::equiv::{EquivState, MergeOutcome};
use crate::lit::Lit;
use crate::triplet::Triplet;

/// Merges concluded by a single rule application; at most two.
pub type RuleMerges = ArrayVec<(Lit, Lit), 2>;

/// Replaces each component of `t` by its current class representative.
#[inline]
pub fn canonicalize(state: &EquivState, t: Triplet) -> Triplet {
    Triplet {
        x: state.find(t.x),
        y: state.find(t.y),
        z: state.find(t.z),
    }
}

/// Applies the first matching rule to a canonicalized triplet and returns its
/// concluded merges; empty when no rule matches.
pub fn match_rule(t: Triplet) -> RuleMerges {
    let Triplet { x, y, z } = t;
    let mut merges = RuleMerges::new();
    if x == Lit::FALSE {
        // (1)
        merges.push((y, Lit::TRUE));
        merges.push((z, Lit::FALSE));
    } else if z == Lit::TRUE {
        // (2)
        merges.push((x, Lit::TRUE));
    } else if y == Lit::FALSE {
        // (3)
        merges.push((x, Lit::TRUE));
    } else if y == Lit::TRUE {
        // (4)
        merges.push((x, z));
    } else if z == Lit::FALSE {
        // (5)
        merges.push((x, !y));
    } else if x == y {
        // (6)
        merges.push((x, Lit::TRUE));
        merges.push((z, Lit::TRUE));
    } else if y == z {
        // (7)
        merges.push((x, Lit::TRUE));
    }
    merges
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SaturationStatus {
    /// A full pass fired no state-changing merge.
    Saturated,
    /// Some conclusion equated a literal with its complement.
    Contradiction,
    /// The deadline expired at a pass boundary.
    TimedOut,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SaturationResult {
    pub status: SaturationStatus,
    /// State-changing merges performed during this saturation.
    pub merges_performed: u64,
    /// Full passes over the triplet list, the final empty pass included.
    pub passes: u64,
}

/// Runs simple rules to a fixpoint over `triplets` in the given order.
///
/// Each pass canonicalizes every live triplet, fires the first matching rule
/// and applies its merges immediately. Saturation ends when a full pass
/// changes nothing, or as soon as a merge contradicts. Triplets whose
/// canonical form has gone fully constant without contradicting can never
/// fire again and are dropped from later passes. The optional deadline is
/// checked only between passes.
pub fn saturate(
    state: &mut EquivState,
    triplets: &[Triplet],
    deadline: Option<Instant>,
) -> SaturationResult {
    debug_assert!(!state.is_contradictory());
    let mut skip = vec![false; triplets.len()];
    let mut merges_performed = 0u64;
    let mut passes = 0u64;
    loop {
        if let Some(limit) = deadline {
            if Instant::now() >= limit {
                return SaturationResult {
                    status: SaturationStatus::TimedOut,
                    merges_performed,
                    passes,
                };
            }
        }
        passes += 1;
        let mut pass_merges = 0u64;
        for (i, &t) in triplets.iter().enumerate() {
            if skip[i] {
                continue;
            }
            let ct = canonicalize(state, t);
            let before = state.merges_done();
            for (a, b) in match_rule(ct) {
                if state.merge(a, b) == MergeOutcome::Contradiction {
                    return SaturationResult {
                        status: SaturationStatus::Contradiction,
                        merges_performed: merges_performed
                            + pass_merges
                            + (state.merges_done() - before),
                        passes,
                    };
                }
            }
            let fired = state.merges_done() - before;
            pass_merges += fired;
            if fired == 0 && ct.x.is_const() && ct.y.is_const() && ct.z.is_const() {
                skip[i] = true;
            }
        }
        merges_performed += pass_merges;
        if pass_merges == 0 {
            return SaturationResult {
                status: SaturationStatus::Saturated,
                merges_performed,
                passes,
            };
        }
    }
}
