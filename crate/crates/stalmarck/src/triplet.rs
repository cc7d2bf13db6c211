//! Implication triplets, the normalized formula unit.

use crate::lit::Lit;

/// The constraint `x ↔ (y → z)` as a tuple `(x, y, z)`.
///
/// Triplets are immutable once built; their position in the owning
/// [`TripletFormula`] doubles as the creation index used for tie-breaking.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Triplet {
    pub x: Lit,
    pub y: Lit,
    pub z: Lit,
}

impl Triplet {
    pub fn new(x: Lit, y: Lit, z: Lit) -> Triplet {
        Triplet { x, y, z }
    }
}

/// A formula in triplet form: asserting `root` = true asserts the formula.
///
/// Variables `1..=num_original_vars` come from the source problem; bridge
/// variables naming subexpressions follow, numbered
/// `num_original_vars+1..=num_original_vars+num_bridge_vars`. Each bridge
/// variable appears in the x position of exactly one triplet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripletFormula {
    pub triplets: Vec<Triplet>,
    pub root: Lit,
    pub num_original_vars: u32,
    pub num_bridge_vars: u32,
}

impl TripletFormula {
    /// Total number of variables, originals and bridges together.
    pub fn num_vars_total(&self) -> u32 {
        self.num_original_vars + self.num_bridge_vars
    }

    /// True if `var` names a bridge variable of this formula.
    pub fn is_bridge_var(&self, var: u32) -> bool {
        var > self.num_original_vars && var <= self.num_vars_total()
    }
}
