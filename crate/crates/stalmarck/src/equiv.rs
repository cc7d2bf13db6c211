//! Equivalence classes over literals with complement closure and rollback.
//!
//! This is a union-find over literal codes with one twist: merges are applied
//! to complement pairs in lockstep, so `find(!l) == !find(l)` holds at all
//! times. Representatives are deterministic: a class containing a constant is
//! represented by that constant, otherwise by the literal of its lowest
//! variable index in whichever orientation that variable first entered the
//! class.
//!
//! Every parent write is logged on a trail, and `mark`/`rollback` undo merges
//! for branch exploration. There is no path compression: a compressed pointer
//! would outlive the merge that justified it and survive rollback, so finds
//! walk the uncompressed forest instead.

use thiserror::Error;

use crate::lit::Lit;

/// Result of a merge: either the classes were united (or already equal), or
/// doing so would equate a literal with its own complement. A contradiction
/// is a proof signal, not a failure; the state stays queryable but rejects
/// further merges until rolled back.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[must_use]
pub enum MergeOutcome {
    Ok,
    Contradiction,
}

/// A snapshot of the trail, restorable in LIFO order.
#[derive(Clone, Copy, Debug)]
pub struct RollbackMark {
    trail_len: usize,
    seq: u64,
    was_contradictory: bool,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("rollback mark is stale (marks must be consumed in LIFO order)")]
pub struct StaleMark;

/// Equivalence classes over the literals of `num_vars` variables plus the
/// constants, with contradiction detection and trail-based rollback.
#[derive(Clone, Debug)]
pub struct EquivState {
    /// parent[code] for every literal code; roots point to themselves.
    parent: Vec<u32>,
    /// Codes whose parent pointer was overwritten, in merge order. Each entry
    /// covers its complement too.
    trail: Vec<u32>,
    /// Set when a merge would equate a literal with its complement; restored
    /// to its mark-time value by rollback.
    contradictory: bool,
    /// Live marks: (sequence number, trail length), innermost last.
    marks: Vec<(u64, usize)>,
    next_mark_seq: u64,
    /// Monotone count of state-changing merges; never decremented by rollback.
    merges_done: u64,
    num_vars: u32,
}

impl EquivState {
    /// Fresh state over variables `1..=num_vars`: every literal is its own
    /// representative and nothing is contradictory.
    pub fn new(num_vars: u32) -> EquivState {
        let slots = 2 * (num_vars as usize + 1);
        EquivState {
            parent: (0..slots as u32).collect(),
            trail: Vec::new(),
            contradictory: false,
            marks: Vec::new(),
            next_mark_seq: 0,
            merges_done: 0,
            num_vars,
        }
    }

    /// Number of variables this state covers (constants excluded).
    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    /// Total state-changing merges performed over the lifetime of the state,
    /// including merges later undone by rollback.
    pub fn merges_done(&self) -> u64 {
        self.merges_done
    }

    pub fn is_contradictory(&self) -> bool {
        self.contradictory
    }

    /// Canonical representative of `l`'s class.
    #[inline]
    pub fn find(&self, l: Lit) -> Lit {
        let mut code = l.code();
        loop {
            let p = self.parent[code] as usize;
            if p == code {
                return Lit::from_code(code);
            }
            code = p;
        }
    }

    /// Truth value of `l` if its class contains a constant.
    #[inline]
    pub fn value(&self, l: Lit) -> Option<bool> {
        match self.find(l) {
            Lit::TRUE => Some(true),
            Lit::FALSE => Some(false),
            _ => None,
        }
    }

    /// Unites the classes of `a` and `b` (and, in lockstep, of `!a` and
    /// `!b`). Merging already-equivalent literals is a no-op that leaves the
    /// trail untouched.
    pub fn merge(&mut self, a: Lit, b: Lit) -> MergeOutcome {
        if self.is_contradictory() {
            return MergeOutcome::Contradiction;
        }
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return MergeOutcome::Ok;
        }
        if ra == !rb {
            self.contradictory = true;
            return MergeOutcome::Contradiction;
        }
        // Constants dominate; otherwise the lower variable index wins and
        // keeps the orientation it already has.
        let (winner, loser) = if ra.is_const() {
            (ra, rb)
        } else if rb.is_const() {
            (rb, ra)
        } else if ra.var_slot() < rb.var_slot() {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[loser.code()] = winner.code() as u32;
        self.parent[(!loser).code()] = (!winner).code() as u32;
        self.trail.push(loser.code() as u32);
        self.merges_done += 1;
        MergeOutcome::Ok
    }

    /// Records the current state for a later [`EquivState::rollback`].
    pub fn mark(&mut self) -> RollbackMark {
        let seq = self.next_mark_seq;
        self.next_mark_seq += 1;
        self.marks.push((seq, self.trail.len()));
        RollbackMark {
            trail_len: self.trail.len(),
            seq,
            was_contradictory: self.contradictory,
        }
    }

    /// Restores the state as of `mark`, undoing every merge since; the
    /// contradiction flag returns to whatever it was when the mark was
    /// taken. Rolling back to an outer mark discards any inner marks taken
    /// since; using a discarded (or already consumed) mark is an error.
    pub fn rollback(&mut self, mark: RollbackMark) -> Result<(), StaleMark> {
        let pos = self
            .marks
            .iter()
            .rposition(|&(seq, _)| seq == mark.seq)
            .ok_or(StaleMark)?;
        self.marks.truncate(pos);
        while self.trail.len() > mark.trail_len {
            let code = self.trail.pop().expect("trail shorter than mark") as usize;
            self.parent[code] = code as u32;
            self.parent[code ^ 1] = (code ^ 1) as u32;
        }
        self.contradictory = mark.was_contradictory;
        Ok(())
    }
}
