//! The decision procedure: assert the root, saturate, and apply the dilemma
//! rule recursively until the verdict is known or the time budget runs out.
//!
//! Each dilemma probes one variable at both polarities under a rollback
//! mark. Two contradictions refute the subproblem; one contradiction forces
//! the surviving polarity, which is committed and re-saturated; none means
//! the procedure must recurse, exploring the `False` polarity first and
//! falling back to `True` when that subtree is refuted. Satisfiability is
//! declared only once every variable — original and bridge alike — has a
//! constant value, at which point the equivalence state is itself a model.
//!
//! The solve is deterministic: identical formula and configuration give the
//! identical verdict, model, and statistics. Timeouts are polled between
//! saturation passes and ahead of each dilemma, so a verdict may overshoot
//! the budget by at most one pass.

use std::time::{Duration, Instant};

use thiserror::Error;

use crate::cnf::Assignment;
use crate::equiv::{EquivState, MergeOutcome};
use crate::heuristics::{build_frequency_map, cdb_select, dpo_sort, FrequencyMap};
use crate::lit::Lit;
use crate::rules::{saturate, SaturationStatus};
use crate::triplet::{Triplet, TripletFormula};

/// Strategy switches for one solve. The solver itself is deterministic;
/// there is no seed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolverConfig {
    /// Branch on the most frequent unassigned variable instead of the
    /// lowest-indexed one.
    pub use_cdb: bool,
    /// Process triplets in descending deductive-priority order instead of
    /// creation order.
    pub use_dpo: bool,
    /// Wall-clock budget; `None` runs to completion.
    pub timeout: Option<Duration>,
}

impl SolverConfig {
    pub fn new(use_cdb: bool, use_dpo: bool) -> SolverConfig {
        SolverConfig {
            use_cdb,
            use_dpo,
            timeout: None,
        }
    }

    /// Canonical name of this strategy combination.
    pub fn label(&self) -> &'static str {
        match (self.use_dpo, self.use_cdb) {
            (false, false) => "baseline",
            (true, false) => "dpo",
            (false, true) => "cdb",
            (true, true) => "dpo_cdb",
        }
    }
}

/// Why a solve stopped without a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StopReason {
    Timeout,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Satisfiable, with a model over the original variables.
    Sat(Assignment),
    Unsat,
    Unknown(StopReason),
}

/// Work counters for one solve.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    /// Dilemma applications; zero when saturation alone decides.
    pub branches: u64,
    /// Total merges performed on the equivalence state, probes included.
    pub merges: u64,
    /// Saturation passes summed over every saturation run.
    pub saturation_passes: u64,
    pub elapsed: Duration,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveOutcome {
    pub verdict: Verdict,
    pub stats: SolveStats,
}

/// A variable expected to carry a value had none; indicates a logic error in
/// the caller, since the solver only extracts models from total states.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
#[error("variable {var} has no value in a state expected to be total")]
pub struct IncompleteState {
    pub var: u32,
}

/// Reads the model over variables `1..=num_original` out of a total state.
pub fn extract_model(state: &EquivState, num_original: u32) -> Result<Assignment, IncompleteState> {
    (1..=num_original)
        .map(|v| match state.value(Lit::pos(v)) {
            Some(b) => Ok((v, b)),
            None => Err(IncompleteState { var: v }),
        })
        .collect()
}

/// Decides the formula under the given configuration.
pub fn solve(formula: &TripletFormula, config: SolverConfig) -> SolveOutcome {
    let start = Instant::now();
    let deadline = config.timeout.and_then(|t| start.checked_add(t));
    let mut state = EquivState::new(formula.num_vars_total());

    let fm = build_frequency_map(&formula.triplets);
    let triplets = if config.use_dpo {
        dpo_sort(&formula.triplets, &fm)
    } else {
        formula.triplets.clone()
    };

    let mut search = Search {
        triplets: &triplets,
        fm,
        num_original: formula.num_original_vars,
        use_cdb: config.use_cdb,
        deadline,
        branches: 0,
        saturation_passes: 0,
    };

    let explored = if state.merge(formula.root, Lit::TRUE) == MergeOutcome::Contradiction {
        Explored::Unsat
    } else {
        match search.run_saturation(&mut state) {
            SaturationStatus::Contradiction => Explored::Unsat,
            SaturationStatus::TimedOut => Explored::Timeout,
            SaturationStatus::Saturated => search.search(&mut state),
        }
    };

    let verdict = match explored {
        Explored::Sat(model) => Verdict::Sat(model),
        Explored::Unsat => Verdict::Unsat,
        Explored::Timeout => Verdict::Unknown(StopReason::Timeout),
    };
    SolveOutcome {
        verdict,
        stats: SolveStats {
            branches: search.branches,
            merges: state.merges_done(),
            saturation_passes: search.saturation_passes,
            elapsed: start.elapsed(),
        },
    }
}

enum Explored {
    Sat(Assignment),
    Unsat,
    Timeout,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Probe {
    Contra,
    Open,
    Timeout,
}

struct Search<'a> {
    triplets: &'a [Triplet],
    fm: FrequencyMap,
    num_original: u32,
    use_cdb: bool,
    deadline: Option<Instant>,
    branches: u64,
    saturation_passes: u64,
}

impl Search<'_> {
    fn run_saturation(&mut self, state: &mut EquivState) -> SaturationStatus {
        let result = saturate(state, self.triplets, self.deadline);
        self.saturation_passes += result.passes;
        result.status
    }

    fn past_deadline(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }

    fn all_known(&self, state: &EquivState) -> bool {
        (1..=state.num_vars()).all(|v| state.value(Lit::pos(v)).is_some())
    }

    fn pick(&self, state: &EquivState) -> Option<u32> {
        if self.use_cdb {
            cdb_select(state, &self.fm, self.num_original)
        } else {
            // Originals precede bridges, so the ascending scan prefers the
            // lowest-indexed original and falls back to bridges on its own.
            (1..=state.num_vars()).find(|&v| state.value(Lit::pos(v)).is_none())
        }
    }

    /// Tries `var ≡ polarity` under a mark, restoring the state afterwards.
    fn probe(&mut self, state: &mut EquivState, var_lit: Lit, polarity: Lit) -> Probe {
        let mark = state.mark();
        let out = if state.merge(var_lit, polarity) == MergeOutcome::Contradiction {
            Probe::Contra
        } else {
            match self.run_saturation(state) {
                SaturationStatus::Saturated => Probe::Open,
                SaturationStatus::Contradiction => Probe::Contra,
                SaturationStatus::TimedOut => Probe::Timeout,
            }
        };
        state
            .rollback(mark)
            .expect("probe mark is the most recent mark");
        out
    }

    /// Permanently asserts `var ≡ polarity` and re-saturates.
    fn commit(&mut self, state: &mut EquivState, var_lit: Lit, polarity: Lit) -> SaturationStatus {
        if state.merge(var_lit, polarity) == MergeOutcome::Contradiction {
            return SaturationStatus::Contradiction;
        }
        self.run_saturation(state)
    }

    /// Explores a saturated, non-contradictory state to a verdict.
    fn search(&mut self, state: &mut EquivState) -> Explored {
        loop {
            if self.all_known(state) {
                let model = extract_model(state, self.num_original)
                    .expect("every variable was just checked to have a value");
                return Explored::Sat(model);
            }
            if self.past_deadline() {
                return Explored::Timeout;
            }
            let v = self
                .pick(state)
                .expect("an unassigned variable exists when not all are known");
            let var_lit = Lit::pos(v);
            self.branches += 1;

            let probe_false = self.probe(state, var_lit, Lit::FALSE);
            if probe_false == Probe::Timeout {
                return Explored::Timeout;
            }
            let probe_true = self.probe(state, var_lit, Lit::TRUE);
            if probe_true == Probe::Timeout {
                return Explored::Timeout;
            }

            match (probe_false, probe_true) {
                (Probe::Contra, Probe::Contra) => return Explored::Unsat,
                (Probe::Contra, Probe::Open) => match self.commit(state, var_lit, Lit::TRUE) {
                    SaturationStatus::Saturated => {}
                    SaturationStatus::Contradiction => return Explored::Unsat,
                    SaturationStatus::TimedOut => return Explored::Timeout,
                },
                (Probe::Open, Probe::Contra) => match self.commit(state, var_lit, Lit::FALSE) {
                    SaturationStatus::Saturated => {}
                    SaturationStatus::Contradiction => return Explored::Unsat,
                    SaturationStatus::TimedOut => return Explored::Timeout,
                },
                (Probe::Open, Probe::Open) => {
                    let mark = state.mark();
                    match self.commit(state, var_lit, Lit::FALSE) {
                        SaturationStatus::Saturated => match self.search(state) {
                            Explored::Sat(model) => return Explored::Sat(model),
                            Explored::Timeout => return Explored::Timeout,
                            Explored::Unsat => {
                                state
                                    .rollback(mark)
                                    .expect("subtree left the dilemma mark in place");
                                match self.commit(state, var_lit, Lit::TRUE) {
                                    SaturationStatus::Saturated => {}
                                    SaturationStatus::Contradiction => return Explored::Unsat,
                                    SaturationStatus::TimedOut => return Explored::Timeout,
                                }
                            }
                        },
                        // The probe of this polarity just saturated without
                        // contradiction, so the committed re-run cannot
                        // contradict; kept for robustness.
                        SaturationStatus::Contradiction => {
                            state
                                .rollback(mark)
                                .expect("failed commit left the dilemma mark in place");
                            match self.commit(state, var_lit, Lit::TRUE) {
                                SaturationStatus::Saturated => {}
                                SaturationStatus::Contradiction => return Explored::Unsat,
                                SaturationStatus::TimedOut => return Explored::Timeout,
                            }
                        }
                        SaturationStatus::TimedOut => return Explored::Timeout,
                    }
                }
                (Probe::Timeout, _) | (_, Probe::Timeout) => unreachable!("handled above"),
            }
        }
    }
}
