//! Incremental Gauss-Jordan elimination over GF(2^h) with payloads.

use crate::counters::OpCounters;
use crate::field::{Element, Field};

#[derive(Debug, Clone)]
pub(crate) struct DenseRow {
    pub coeffs: Vec<Element>,
    pub payload: Vec<u8>,
}

/// Rows are kept in reduced row-echelon form with unit pivots. The pivot of
/// a new row is its first nonzero column.
#[derive(Debug, Clone)]
pub(crate) struct DenseEliminator {
    field: &'static Field,
    rows: Vec<Option<DenseRow>>,
    rank: usize,
    symbol_elements: u64,
}

impl DenseEliminator {
    pub fn new(field: &'static Field, columns: usize, symbol_size: usize) -> Self {
        Self {
            field,
            rows: vec![None; columns],
            rank: 0,
            symbol_elements: field.spec().elements_per_symbol(symbol_size) as u64,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `dst <- dst + coeff * src` on both coefficients and payload. `src`
    /// must be zero before column `from`.
    fn axpy(
        &self,
        dst: &mut DenseRow,
        src: &DenseRow,
        from: usize,
        coeff: Element,
        counters: &mut OpCounters,
    ) {
        if coeff == 0 {
            return;
        }
        self.field
            .vec_axpy(&mut dst.coeffs[from..], &src.coeffs[from..], coeff);
        if dst.payload.is_empty() {
            return;
        }
        self.field.axpy(&mut dst.payload, &src.payload, coeff);
        counters.gf_add += self.symbol_elements;
        if coeff != 1 {
            counters.gf_mul += self.symbol_elements;
        }
    }

    pub fn reduce(&self, row: &mut DenseRow, counters: &mut OpCounters) {
        for c in 0..self.rows.len() {
            let f = row.coeffs[c];
            if f != 0 {
                if let Some(pivot) = &self.rows[c] {
                    self.axpy(row, pivot, c, f, counters);
                }
            }
        }
    }

    /// Inserts a row; returns its pivot or `None` if it was dependent.
    pub fn insert(&mut self, mut row: DenseRow, counters: &mut OpCounters) -> Option<usize> {
        debug_assert_eq!(row.coeffs.len(), self.rows.len());
        self.reduce(&mut row, counters);
        let pivot = row.coeffs.iter().position(|&c| c != 0)?;
        let lead = row.coeffs[pivot];
        if lead != 1 {
            let inv = self.field.inv_nonzero(lead);
            self.field.vec_scale(&mut row.coeffs, inv);
            if !row.payload.is_empty() {
                self.field.scale(&mut row.payload, inv);
                counters.gf_mul += self.symbol_elements;
            }
        }
        let mut rows = std::mem::take(&mut self.rows);
        for other in rows.iter_mut().flatten() {
            let f = other.coeffs[pivot];
            self.axpy(other, &row, pivot, f, counters);
        }
        rows[pivot] = Some(row);
        self.rows = rows;
        self.rank += 1;
        Some(pivot)
    }

    /// Payloads in pivot order; only meaningful at full rank.
    pub fn into_payloads(self) -> Vec<Vec<u8>> {
        self.rows
            .into_iter()
            .map(|r| r.map(|r| r.payload).unwrap_or_default())
            .collect()
    }

    pub fn payloads(&self) -> Vec<Vec<u8>> {
        self.rows
            .iter()
            .map(|r| r.as_ref().map(|r| r.payload.clone()).unwrap_or_default())
            .collect()
    }
}

/// Rank over `field` of a matrix given by rows.
pub fn matrix_rank(field: &'static Field, rows: &[Vec<Element>]) -> usize {
    let Some(width) = rows.first().map(Vec::len) else {
        return 0;
    };
    let mut elim = DenseEliminator::new(field, width, 0);
    let mut counters = OpCounters::default();
    for r in rows {
        elim.insert(
            DenseRow {
                coeffs: r.clone(),
                payload: Vec::new(),
            },
            &mut counters,
        );
    }
    elim.rank()
}
