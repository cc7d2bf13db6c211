//! Literals over propositional variables plus the two Boolean constants.
//!
//! A literal is stored as a single `u32` code: variable `v` (1-based) becomes
//! `2*v` when positive and `2*v + 1` when negated. Codes 0 and 1 are reserved
//! for the constants true and false, which behave like the two polarities of
//! a virtual variable 0. Negation is a single bit flip, so `!!l == l` and
//! `!TRUE == FALSE` hold structurally.

use std::fmt;
use std::ops::Not;

/// A signed reference to a variable, or one of the constants true/false.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit(u32);

impl Lit {
    /// The constant true literal.
    pub const TRUE: Lit = Lit(0);
    /// The constant false literal.
    pub const FALSE: Lit = Lit(1);

    /// Positive literal of variable `var` (1-based).
    #[inline]
    pub fn pos(var: u32) -> Lit {
        debug_assert!(var > 0, "variable indices are 1-based");
        Lit(var << 1)
    }

    /// Negative literal of variable `var` (1-based).
    #[inline]
    pub fn neg(var: u32) -> Lit {
        debug_assert!(var > 0, "variable indices are 1-based");
        Lit((var << 1) | 1)
    }

    /// Builds a literal from a nonzero DIMACS integer (`3` → x3, `-3` → ¬x3).
    #[inline]
    pub fn from_dimacs(lit: i32) -> Lit {
        debug_assert!(lit != 0);
        if lit > 0 {
            Lit::pos(lit as u32)
        } else {
            Lit::neg(lit.unsigned_abs())
        }
    }

    /// True for the constants `TRUE` and `FALSE`.
    #[inline]
    pub fn is_const(self) -> bool {
        self.0 < 2
    }

    /// Variable index (1-based), or `None` for constants.
    #[inline]
    pub fn var(self) -> Option<u32> {
        if self.is_const() {
            None
        } else {
            Some(self.0 >> 1)
        }
    }

    /// The raw variable slot, counting the constants as variable 0.
    #[inline]
    pub fn var_slot(self) -> u32 {
        self.0 >> 1
    }

    #[inline]
    pub fn is_negative(self) -> bool {
        self.0 & 1 == 1
    }

    /// Dense code usable as an array index; complement codes differ in bit 0.
    #[inline]
    pub fn code(self) -> usize {
        self.0 as usize
    }

    /// Inverse of [`Lit::code`].
    #[inline]
    pub fn from_code(code: usize) -> Lit {
        Lit(code as u32)
    }
}

impl Not for Lit {
    type Output = Lit;

    #[inline]
    fn not(self) -> Lit {
        Lit(self.0 ^ 1)
    }
}

impl fmt::Debug for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (*self, self.var()) {
            (Lit::TRUE, _) => write!(f, "T"),
            (Lit::FALSE, _) => write!(f, "F"),
            (_, Some(v)) if self.is_negative() => write!(f, "-x{v}"),
            (_, Some(v)) => write!(f, "x{v}"),
            _ => unreachable!(),
        }
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
