//! CNF → triplet-formula transformation.
//!
//! Every connective is rewritten into implications over literals, and each
//! implication node is named by a fresh *bridge* variable `b` carrying the
//! triplet `(b, y, z)`, i.e. `b ↔ (y → z)`:
//!
//! * a disjunction `l1 ∨ l2 ∨ … ∨ lk` becomes the right-folded chain
//!   `¬l1 → (¬l2 → (… → lk))`;
//! * a conjunction `A ∧ B` becomes `¬(A → ¬B)`, again right-folded, with the
//!   negation carried by the sign of the returned literal;
//! * negation itself is just a sign flip, so double negations vanish and no
//!   triplet is ever spent on one.
//!
//! The fold direction is arbitrary for correctness but fixed so that
//! identical input produces the identical triplet list, bridge numbering
//! included. Bridges are numbered after the original variables in the order
//! their nodes are encountered (innermost first within each fold). The whole
//! transformation emits one triplet per fold node, so the output stays
//! linear in the number of literal occurrences.

use thiserror::Error;

use crate::cnf::CnfFormula;
use crate::lit::Lit;
use crate::triplet::{Triplet, TripletFormula};

/// An empty clause cannot be encoded as an implication chain; the caller
/// maps it to a constant-false root instead.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
#[error("cannot encode an empty clause")]
pub struct EmptyClause;

/// Accumulates triplets and allocates bridge variables during encoding.
#[derive(Clone, Debug)]
pub struct TripletBuilder {
    num_original_vars: u32,
    num_bridge_vars: u32,
    triplets: Vec<Triplet>,
}

impl TripletBuilder {
    pub fn new(num_original_vars: u32) -> TripletBuilder {
        TripletBuilder {
            num_original_vars,
            num_bridge_vars: 0,
            triplets: Vec::new(),
        }
    }

    fn fresh_bridge(&mut self) -> Lit {
        self.num_bridge_vars += 1;
        Lit::pos(self.num_original_vars + self.num_bridge_vars)
    }

    /// Encodes one clause of DIMACS-signed indices, returning the literal
    /// that is true exactly when the clause is.
    ///
    /// A single-literal clause is its own encoding and emits nothing; longer
    /// clauses emit one triplet per implication node, innermost node first.
    pub fn encode_clause(&mut self, clause: &[i32]) -> Result<Lit, EmptyClause> {
        let (&last, rest) = clause.split_last().ok_or(EmptyClause)?;
        let mut acc = Lit::from_dimacs(last);
        for &l in rest.iter().rev() {
            let b = self.fresh_bridge();
            self.triplets
                .push(Triplet::new(b, !Lit::from_dimacs(l), acc));
            acc = b;
        }
        Ok(acc)
    }

    /// Encodes `parts[0] ∧ parts[1] ∧ …`, returning the literal that is true
    /// exactly when every part is. `parts` must be nonempty.
    ///
    /// Each binary node `A ∧ B` becomes a bridge `b ↔ (A → ¬B)` and the node
    /// value is `¬b`.
    pub fn encode_conjunction(&mut self, parts: &[Lit]) -> Lit {
        let (&last, rest) = parts
            .split_last()
            .expect("conjunction of zero parts has no encoding");
        let mut acc = last;
        for &p in rest.iter().rev() {
            let b = self.fresh_bridge();
            self.triplets.push(Triplet::new(b, p, !acc));
            acc = !b;
        }
        acc
    }

    pub fn finish(self, root: Lit) -> TripletFormula {
        TripletFormula {
            triplets: self.triplets,
            root,
            num_original_vars: self.num_original_vars,
            num_bridge_vars: self.num_bridge_vars,
        }
    }
}

/// Transforms a CNF formula into an equisatisfiable triplet formula.
///
/// The returned root literal is true exactly when the CNF is, for every
/// assignment of the original variables extended by the (functionally
/// determined) bridge values. Degenerate shapes collapse to constants: zero
/// clauses give a `TRUE` root, and any empty clause gives a `FALSE` root
/// with no triplets at all, which the solver then reports as Unsat.
pub fn normalize(cnf: &CnfFormula) -> TripletFormula {
    if cnf.clauses.iter().any(|c| c.is_empty()) {
        return TripletBuilder::new(cnf.num_vars).finish(Lit::FALSE);
    }
    let mut builder = TripletBuilder::new(cnf.num_vars);
    if cnf.clauses.is_empty() {
        return builder.finish(Lit::TRUE);
    }
    let parts: Vec<Lit> = cnf
        .clauses
        .iter()
        .map(|c| {
            builder
                .encode_clause(c)
                .expect("empty clauses were handled above")
        })
        .collect();
    let root = builder.encode_conjunction(&parts);
    builder.finish(root)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::{evaluate, Assignment};

    fn eval_lit(values: &[bool], l: Lit) -> bool {
        if l == Lit::TRUE {
            true
        } else if l == Lit::FALSE {
            false
        } else {
            let v = values[l.var().unwrap() as usize];
            v != l.is_negative()
        }
    }

    /// Extends an assignment of original variables with the functionally
    /// determined bridge values, in triplet emission order.
    fn extend_with_bridges(
        triplets: &[Triplet],
        total_vars: u32,
        originals: &[(u32, bool)],
    ) -> Vec<bool> {
        let mut values = vec![false; total_vars as usize + 1];
        for &(v, b) in originals {
            values[v as usize] = b;
        }
        for t in triplets {
            let head = t.x.var().expect("emitted triplets name a bridge in x");
            values[head as usize] = !eval_lit(&values, t.y) || eval_lit(&values, t.z);
        }
        values
    }

    #[test]
    fn unit_clause_is_its_own_encoding() {
        let mut b = TripletBuilder::new(1);
        let lit = b.encode_clause(&[1]).unwrap();
        assert_eq!(lit, Lit::pos(1));
        assert!(b.finish(lit).triplets.is_empty());
    }

    #[test]
    fn empty_clause_is_rejected() {
        let mut b = TripletBuilder::new(1);
        assert_eq!(b.encode_clause(&[]), Err(EmptyClause));
    }

    #[test]
    fn binary_clause_encodes_disjunction() {
        let mut b = TripletBuilder::new(2);
        let root = b.encode_clause(&[1, 2]).unwrap();
        assert_eq!(root, Lit::pos(3));
        let tf = b.finish(root);
        assert_eq!(
            tf.triplets,
            vec![Triplet::new(Lit::pos(3), Lit::neg(1), Lit::pos(2))]
        );
        for mask in 0..4u32 {
            let x1 = mask & 1 != 0;
            let x2 = mask & 2 != 0;
            let values = extend_with_bridges(&tf.triplets, 3, &[(1, x1), (2, x2)]);
            assert_eq!(eval_lit(&values, root), x1 || x2);
        }
    }

    #[test]
    fn ternary_clause_right_folds() {
        let mut b = TripletBuilder::new(3);
        let root = b.encode_clause(&[1, 2, 3]).unwrap();
        assert_eq!(root, Lit::pos(5));
        let tf = b.finish(root);
        assert_eq!(
            tf.triplets,
            vec![
                Triplet::new(Lit::pos(4), Lit::neg(2), Lit::pos(3)),
                Triplet::new(Lit::pos(5), Lit::neg(1), Lit::pos(4)),
            ]
        );
        for mask in 0..8u32 {
            let bits = [(1, mask & 1 != 0), (2, mask & 2 != 0), (3, mask & 4 != 0)];
            let values = extend_with_bridges(&tf.triplets, 5, &bits);
            let want = bits.iter().any(|&(_, b)| b);
            assert_eq!(eval_lit(&values, root), want);
        }
    }

    #[test]
    fn single_part_conjunction_is_itself() {
        let mut b = TripletBuilder::new(1);
        let c1 = Lit::neg(1);
        assert_eq!(b.encode_conjunction(&[c1]), c1);
        assert!(b.finish(c1).triplets.is_empty());
    }

    #[test]
    fn binary_conjunction_negates_an_implication() {
        let mut b = TripletBuilder::new(2);
        let root = b.encode_conjunction(&[Lit::pos(1), Lit::neg(2)]);
        assert_eq!(root, Lit::neg(3));
        let tf = b.finish(root);
        assert_eq!(
            tf.triplets,
            vec![Triplet::new(Lit::pos(3), Lit::pos(1), Lit::pos(2))]
        );
        for mask in 0..4u32 {
            let x1 = mask & 1 != 0;
            let x2 = mask & 2 != 0;
            let values = extend_with_bridges(&tf.triplets, 3, &[(1, x1), (2, x2)]);
            assert_eq!(eval_lit(&values, root), x1 && !x2);
        }
    }

    #[test]
    fn ternary_conjunction_right_folds() {
        let mut b = TripletBuilder::new(3);
        let parts = [Lit::pos(1), Lit::pos(2), Lit::pos(3)];
        let root = b.encode_conjunction(&parts);
        let tf = b.finish(root);
        assert_eq!(tf.triplets.len(), 2);
        for mask in 0..8u32 {
            let bits = [(1, mask & 1 != 0), (2, mask & 2 != 0), (3, mask & 4 != 0)];
            let values = extend_with_bridges(&tf.triplets, 5, &bits);
            let want = bits.iter().all(|&(_, b)| b);
            assert_eq!(eval_lit(&values, root), want);
        }
    }

    #[test]
    fn normalize_single_clause_formula() {
        let cnf = CnfFormula {
            num_vars: 2,
            clauses: vec![vec![1, 2]],
        };
        let tf = normalize(&cnf);
        assert_eq!(tf.root, Lit::pos(3));
        assert_eq!(
            tf.triplets,
            vec![Triplet::new(Lit::pos(3), Lit::neg(1), Lit::pos(2))]
        );
        assert_eq!((tf.num_original_vars, tf.num_bridge_vars), (2, 1));
    }

    #[test]
    fn normalize_contradictory_units() {
        // x1 ∧ ¬x1: both clauses are bare literals, one conjunction node.
        let cnf = CnfFormula {
            num_vars: 1,
            clauses: vec![vec![1], vec![-1]],
        };
        let tf = normalize(&cnf);
        assert_eq!(
            tf.triplets,
            vec![Triplet::new(Lit::pos(2), Lit::pos(1), Lit::pos(1))]
        );
        assert_eq!(tf.root, Lit::neg(2));
        // Brute force over x1: the root is never true.
        for x1 in [false, true] {
            let values = extend_with_bridges(&tf.triplets, 2, &[(1, x1)]);
            assert!(!eval_lit(&values, tf.root));
        }
    }

    #[test]
    fn normalize_zero_clauses_gives_true_root() {
        let cnf = CnfFormula {
            num_vars: 3,
            clauses: vec![],
        };
        let tf = normalize(&cnf);
        assert!(tf.triplets.is_empty());
        assert_eq!(tf.root, Lit::TRUE);
        assert_eq!((tf.num_original_vars, tf.num_bridge_vars), (3, 0));
    }

    #[test]
    fn normalize_empty_clause_gives_false_root() {
        let cnf = CnfFormula {
            num_vars: 2,
            clauses: vec![vec![1], vec![], vec![2]],
        };
        let tf = normalize(&cnf);
        assert!(tf.triplets.is_empty());
        assert_eq!(tf.root, Lit::FALSE);
        assert_eq!(tf.num_bridge_vars, 0);
    }

    #[test]
    fn triplet_count_is_linear_in_literal_occurrences() {
        let cnf = CnfFormula {
            num_vars: 3,
            clauses: vec![vec![1, 2, 3], vec![-1, 2], vec![3]],
        };
        let tf = normalize(&cnf);
        // Two nodes for the ternary clause, one for the binary, none for the
        // unit, and two conjunction nodes joining three parts.
        assert_eq!(tf.triplets.len(), 5);
        let occurrences: usize = cnf.clauses.iter().map(Vec::len).sum();
        assert!(tf.triplets.len() <= occurrences);
    }

    #[test]
    fn normalize_is_deterministic() {
        let cnf = CnfFormula {
            num_vars: 4,
            clauses: vec![vec![1, -2, 3], vec![-3, 4], vec![2], vec![-4, -1]],
        };
        assert_eq!(normalize(&cnf), normalize(&cnf));
    }

    #[test]
    fn bridges_are_consecutive_and_name_one_triplet_each() {
        let cnf = CnfFormula {
            num_vars: 4,
            clauses: vec![vec![1, -2, 3], vec![-3, 4], vec![2], vec![-4, -1]],
        };
        let tf = normalize(&cnf);
        let mut head_seen = vec![0u32; tf.num_vars_total() as usize + 1];
        for t in &tf.triplets {
            for l in [t.x, t.y, t.z] {
                if let Some(v) = l.var() {
                    assert!(v >= 1 && v <= tf.num_vars_total());
                }
            }
            let head = t.x.var().unwrap();
            assert!(tf.is_bridge_var(head));
            assert!(!t.x.is_negative());
            head_seen[head as usize] += 1;
        }
        for b in tf.num_original_vars + 1..=tf.num_vars_total() {
            assert_eq!(head_seen[b as usize], 1, "bridge {b} must name one triplet");
        }
    }

    #[test]
    fn root_agrees_with_clause_semantics_on_a_small_formula() {
        let cnf = CnfFormula {
            num_vars: 2,
            clauses: vec![vec![1, 2], vec![-1, -2]],
        };
        let tf = normalize(&cnf);
        for mask in 0..4u32 {
            let x1 = mask & 1 != 0;
            let x2 = mask & 2 != 0;
            let values =
                extend_with_bridges(&tf.triplets, tf.num_vars_total(), &[(1, x1), (2, x2)]);
            let asg: Assignment = [(1, x1), (2, x2)].into_iter().collect();
            let want = evaluate(&cnf, &asg).unwrap();
            assert_eq!(eval_lit(&values, tf.root), want);
        }
    }
}
