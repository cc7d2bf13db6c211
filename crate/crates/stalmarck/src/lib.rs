//! A SAT solver built on Stålmarck's proof procedure.
//!
//! CNF input is normalized into *implication triplets* `(x, y, z)`, each
//! asserting `x ↔ (y → z)` over literals ([`normalize`]). Solving maintains
//! equivalence classes of literals ([`EquivState`]) and alternates two
//! mechanisms:
//!
//! * **saturation** — seven pattern rules on triplets that merge literals
//!   with constants or each other until nothing more follows ([`rules`]);
//! * **the dilemma rule** — try a variable at both polarities under a
//!   rollback mark; two contradictions refute the formula, one forces the
//!   other polarity, none recurses ([`solver`]).
//!
//! Two optional strategies steer the search ([`heuristics`]): CDB picks the
//! branch variable by occurrence frequency, and DPO statically orders the
//! triplets by deductive potential. A seeded k-SAT generator ([`gen`]) and a
//! benchmark harness ([`bench`]) measure their effect.
//!
//! ```
//! use stalmarck::{normalize, parse_dimacs, solve, SolverConfig, Verdict};
//!
//! let parsed = parse_dimacs("p cnf 2 2\n1 2 0\n-1 0\n").unwrap();
//! let formula = normalize(&parsed.formula);
//! let outcome = solve(&formula, SolverConfig::default());
//! assert!(matches!(outcome.verdict, Verdict::Sat(_)));
//! ```

pub mod bench;
pub mod cnf;
pub mod equiv;
pub mod gen;
pub mod heuristics;
pub mod lit;
pub mod normalize;
pub mod rules;
pub mod solver;
pub mod triplet;

pub use bench::{
    cactus_data, emit_csv, instance_specs, parse_csv, run_matrix, summarize, write_cactus_files,
    BenchRecord, ConfigSummary, CsvError, VerdictKind,
};
pub use cnf::{
    evaluate, parse_dimacs, write_dimacs, Assignment, CnfFormula, EvalError, ParseError,
    ParseWarning, ParsedDimacs,
};
pub use equiv::{EquivState, MergeOutcome, RollbackMark, StaleMark};
pub use gen::{gen_ksat, GenError, GenSpec, SplitMix64};
pub use heuristics::{
    build_frequency_map, cdb_select, dpo_score, dpo_sort, DpoScore, FrequencyMap,
};
pub use lit::Lit;
pub use normalize::{normalize, EmptyClause, TripletBuilder};
pub use rules::{canonicalize, match_rule, saturate, SaturationResult, SaturationStatus};
pub use solver::{
    extract_model, solve, IncompleteState, SolveOutcome, SolveStats, SolverConfig, StopReason,
    Verdict,
};
pub use triplet::{Triplet, TripletFormula};
