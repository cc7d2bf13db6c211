//! Frequency-guided strategies: branch variable selection (CDB) and static
//! triplet ordering (DPO).
//!
//! Both strategies share one precomputed ingredient, a map of how often each
//! variable occurs across all triplet positions. Branch selection picks the
//! most frequent unassigned variable, preferring variables of the source
//! problem over bridge variables. Triplet ordering scores each triplet by the
//! frequency sum of its three positions times a bonus for shapes that are
//! guaranteed to fire a deduction rule, then sorts descending once before the
//! solve; scores are not revisited as the solve progresses.

use std::cmp::Reverse;

use crate::equiv::EquivState;
use crate::lit::Lit;
use crate::triplet::Triplet;

/// Occurrence counts per variable over all triplet positions.
///
/// Counts are polarity-blind, constants contribute nothing, and a variable
/// occupying two positions of one triplet counts twice.
#[derive(Clone, Debug, Default)]
pub struct FrequencyMap {
    counts: Vec<u64>,
    sorted_vars: Vec<u32>,
}

impl FrequencyMap {
    pub fn count(&self, var: u32) -> u64 {
        self.counts.get(var as usize).copied().unwrap_or(0)
    }

    /// Variables with nonzero count, most frequent first, ties by ascending
    /// index.
    pub fn sorted_vars(&self) -> &[u32] {
        &self.sorted_vars
    }
}

/// Single pass over the triplets building the frequency map.
pub fn build_frequency_map(triplets: &[Triplet]) -> FrequencyMap {
    let mut counts: Vec<u64> = Vec::new();
    for t in triplets {
        for lit in [t.x, t.y, t.z] {
            if let Some(v) = lit.var() {
                if counts.len() <= v as usize {
                    counts.resize(v as usize + 1, 0);
                }
                counts[v as usize] += 1;
            }
        }
    }
    let mut sorted_vars: Vec<u32> = (0..counts.len() as u32)
        .filter(|&v| counts[v as usize] > 0)
        .collect();
    sorted_vars.sort_by_key(|&v| (Reverse(counts[v as usize]), v));
    FrequencyMap {
        counts,
        sorted_vars,
    }
}

/// Picks the next branch variable by cardinality.
///
/// Original variables (index ≤ `num_original`) are exhausted before any
/// bridge variable is considered; within a tier the highest count wins, ties
/// by ascending index, and variables absent from the map rank last. Returns
/// `None` when every variable of the state is assigned.
pub fn cdb_select(state: &EquivState, fm: &FrequencyMap, num_original: u32) -> Option<u32> {
    let total = state.num_vars();
    let tiers = [(1, num_original), (num_original + 1, total)];
    for (lo, hi) in tiers {
        for &v in fm.sorted_vars() {
            if v >= lo && v <= hi && state.value(Lit::pos(v)).is_none() {
                return Some(v);
            }
        }
        for v in lo..=hi {
            if fm.count(v) == 0 && state.value(Lit::pos(v)).is_none() {
                return Some(v);
            }
        }
    }
    None
}

/// Deductive potential of one triplet: `base × bonus`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DpoScore {
    /// Frequency sum of the three position variables (constants count 0).
    pub base: u64,
    /// 3 for an `(x, x, z)` shape, 2 for `(x, y, y)`, otherwise 1.
    pub bonus: u64,
}

impl DpoScore {
    pub fn score(&self) -> u64 {
        self.base * self.bonus
    }
}

/// Scores a triplet as constructed; shapes are tested on raw literal
/// identity, not on canonicalized forms.
pub fn dpo_score(t: &Triplet, fm: &FrequencyMap) -> DpoScore {
    let base = [t.x, t.y, t.z]
        .into_iter()
        .filter_map(|l| l.var())
        .map(|v| fm.count(v))
        .sum();
    let bonus = if t.x == t.y {
        3
    } else if t.y == t.z {
        2
    } else {
        1
    };
    DpoScore { base, bonus }
}

/// Orders triplets by descending score; equal scores keep creation order.
pub fn dpo_sort(triplets: &[Triplet], fm: &FrequencyMap) -> Vec<Triplet> {
    let mut scored: Vec<(u64, Triplet)> = triplets
        .iter()
        .map(|t| (dpo_score(t, fm).score(), *t))
        .collect();
    scored.sort_by_key(|&(score, _)| Reverse(score));
    scored.into_iter().map(|(_, t)| t).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(x: Lit, y: Lit, z: Lit) -> Triplet {
        Triplet::new(x, y, z)
    }

    #[test]
    fn counts_all_positions_polarity_blind() {
        // (b1, ¬x1, x2), (b2, x1, b1) with b1=3, b2=4.
        let triplets = [
            t(Lit::pos(3), Lit::neg(1), Lit::pos(2)),
            t(Lit::pos(4), Lit::pos(1), Lit::pos(3)),
        ];
        let fm = build_frequency_map(&triplets);
        assert_eq!(fm.count(1), 2);
        assert_eq!(fm.count(2), 1);
        assert_eq!(fm.count(3), 2);
        assert_eq!(fm.count(4), 1);
        // Descending count, ties by ascending index.
        assert_eq!(fm.sorted_vars(), [1, 3, 2, 4]);
    }

    #[test]
    fn empty_triplet_list_gives_empty_map() {
        let fm = build_frequency_map(&[]);
        assert!(fm.sorted_vars().is_empty());
        assert_eq!(fm.count(1), 0);
    }

    #[test]
    fn duplicate_position_counts_twice() {
        let triplets = [t(Lit::pos(2), Lit::pos(1), Lit::pos(1))];
        let fm = build_frequency_map(&triplets);
        assert_eq!(fm.count(1), 2);
        assert_eq!(fm.count(2), 1);
    }

    #[test]
    fn constants_contribute_nothing() {
        let triplets = [t(Lit::TRUE, Lit::neg(1), Lit::FALSE)];
        let fm = build_frequency_map(&triplets);
        assert_eq!(fm.count(1), 1);
        assert_eq!(fm.sorted_vars(), [1]);
    }

    /// Frequency map where variable 1 counts 2, variable 2 counts 1 and the
    /// bridge variable 3 counts 6 (originals are 1..=2).
    fn skewed_map() -> FrequencyMap {
        let triplets = [
            t(Lit::pos(3), Lit::pos(1), Lit::pos(2)),
            t(Lit::pos(3), Lit::pos(3), Lit::pos(1)),
            t(Lit::pos(3), Lit::pos(3), Lit::pos(3)),
        ];
        build_frequency_map(&triplets)
    }

    #[test]
    fn cdb_prefers_originals_over_busier_bridges() {
        let fm = skewed_map();
        assert_eq!(fm.count(3), 6);
        let st = EquivState::new(3);
        assert_eq!(cdb_select(&st, &fm, 2), Some(1));
    }

    #[test]
    fn cdb_moves_to_next_original_once_assigned() {
        let fm = skewed_map();
        let mut st = EquivState::new(3);
        let _ = st.merge(Lit::pos(1), Lit::TRUE);
        assert_eq!(cdb_select(&st, &fm, 2), Some(2));
    }

    #[test]
    fn cdb_falls_back_to_bridges_then_none() {
        let fm = skewed_map();
        let mut st = EquivState::new(3);
        let _ = st.merge(Lit::pos(1), Lit::TRUE);
        let _ = st.merge(Lit::pos(2), Lit::FALSE);
        assert_eq!(cdb_select(&st, &fm, 2), Some(3));
        let _ = st.merge(Lit::pos(3), Lit::TRUE);
        assert_eq!(cdb_select(&st, &fm, 2), None);
    }

    #[test]
    fn cdb_reaches_variables_absent_from_the_map() {
        // Variable 2 occurs in no triplet but must still be branchable.
        let triplets = [t(Lit::pos(3), Lit::pos(1), Lit::pos(1))];
        let fm = build_frequency_map(&triplets);
        let mut st = EquivState::new(3);
        let _ = st.merge(Lit::pos(1), Lit::TRUE);
        assert_eq!(cdb_select(&st, &fm, 2), Some(2));
    }

    #[test]
    fn score_with_self_antecedent_bonus() {
        // t = (a, a, c) with counts a:4, c:2 → base 10, bonus 3, score 30.
        let a = Lit::pos(1);
        let c = Lit::pos(2);
        let triplets = [t(a, a, c), t(a, a, c)];
        let fm = build_frequency_map(&triplets);
        let s = dpo_score(&triplets[0], &fm);
        assert_eq!((s.base, s.bonus, s.score()), (10, 3, 30));
    }

    #[test]
    fn score_with_trivial_implication_bonus() {
        // t = (a, b, b) with counts a:1, b:2 → base 5, bonus 2, score 10.
        let triplets = [t(Lit::pos(1), Lit::pos(2), Lit::pos(2))];
        let fm = build_frequency_map(&triplets);
        let s = dpo_score(&triplets[0], &fm);
        assert_eq!((s.base, s.bonus, s.score()), (5, 2, 10));
    }

    #[test]
    fn distinct_shape_gets_no_bonus() {
        let triplets = [t(Lit::pos(1), Lit::pos(2), Lit::pos(3))];
        let fm = build_frequency_map(&triplets);
        let s = dpo_score(&triplets[0], &fm);
        assert_eq!((s.base, s.bonus, s.score()), (3, 1, 3));
    }

    #[test]
    fn shape_tests_use_literal_identity_not_variable() {
        // (a, ¬a, z) is not an (x, x, z) shape.
        let triplets = [t(Lit::pos(1), Lit::neg(1), Lit::pos(2))];
        let fm = build_frequency_map(&triplets);
        assert_eq!(dpo_score(&triplets[0], &fm).bonus, 1);
    }

    #[test]
    fn sort_is_descending_by_score() {
        let a = Lit::pos(1);
        let b = Lit::pos(2);
        let c = Lit::pos(3);
        // Shapes chosen so scores come out 9, 36, 24 in creation order.
        let triplets = vec![t(c, b, a), t(a, a, c), t(b, a, a)];
        let fm = build_frequency_map(&triplets);
        let scores: Vec<u64> = triplets.iter().map(|t| dpo_score(t, &fm).score()).collect();
        let sorted = dpo_sort(&triplets, &fm);
        let sorted_scores: Vec<u64> = sorted.iter().map(|t| dpo_score(t, &fm).score()).collect();
        let mut expect = scores.clone();
        expect.sort_by_key(|&s| Reverse(s));
        assert_eq!(sorted_scores, expect);
        assert!(sorted_scores.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn sort_preserves_creation_order_on_ties() {
        let triplets = vec![
            t(Lit::pos(1), Lit::pos(2), Lit::pos(3)),
            t(Lit::pos(3), Lit::pos(1), Lit::pos(2)),
            t(Lit::pos(2), Lit::pos(3), Lit::pos(1)),
        ];
        let fm = build_frequency_map(&triplets);
        assert_eq!(dpo_sort(&triplets, &fm), triplets);
    }

    #[test]
    fn sort_of_empty_list_is_empty() {
        let fm = build_frequency_map(&[]);
        assert!(dpo_sort(&[], &fm).is_empty());
    }
}
