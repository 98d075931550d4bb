//! Field-operation counters.
//!
//! Counts are per payload element: a GF(2^h) row operation over a symbol of
//! `k` field elements adds `k` to `gf_add` and, unless the coefficient is
//! one, `k` to `gf_mul`. GF(2) row XORs are counted once per row. Coding
//! vector bookkeeping is not counted.

use std::ops::AddAssign;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpCounters {
    /// Whole-row XORs performed by GF(2) elimination or recoding.
    pub gf2_row_xors: u64,
    /// GF(2^h) element multiplications.
    pub gf_mul: u64,
    /// GF(2^h) element additions.
    pub gf_add: u64,
}

impl OpCounters {
    pub fn reset(&mut self) {
        *self = Self::default();
    }
}

impl AddAssign for OpCounters {
    fn add_assign(&mut self, rhs: Self) {
        self.gf2_row_xors += rhs.gf2_row_xors;
        self.gf_mul += rhs.gf_mul;
        self.gf_add += rhs.gf_add;
    }
}
