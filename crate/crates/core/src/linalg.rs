//! Row reduction over GF(p^m).

use crate::field::{FieldElement, FieldParams};

/// A subspace of F^width kept in reduced row-echelon form: leftmost pivots,
/// pivots scaled to 1, pivot columns cleared in every other row, rows sorted
/// by pivot column.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RowSpace {
    width: usize,
    rows: Vec<Vec<FieldElement>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn empty(width: usize) -> Self {
        RowSpace {
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_rows(field: &FieldParams, width: usize, rows: impl IntoIterator<Item = Vec<FieldElement>>) -> Self {
        let mut space = RowSpace::empty(width);
        for row in rows {
            space.insert(field, row);
        }
        space
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<FieldElement>] {
        &self.rows
    }

    /// `v` minus its projection onto the current pivots.
    pub fn reduce(&self, field: &FieldParams, v: &[FieldElement]) -> Vec<FieldElement> {
        debug_assert_eq!(v.len(), self.width);
        let mut v = v.to_vec();
        for (row, &col) in self.rows.iter().zip(&self.pivots) {
            let c = v[col];
            if c.is_zero() {
                continue;
            }
            for (x, &r) in v.iter_mut().zip(row) {
                *x = field.sub(*x, field.mul(c, r));
            }
        }
        v
    }

    pub fn contains(&self, field: &FieldParams, v: &[FieldElement]) -> bool {
        self.reduce(field, v).iter().all(FieldElement::is_zero)
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, field: &FieldParams, v: Vec<FieldElement>) -> bool {
        let mut v = self.reduce(field, &v);
        let Some(col) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = field.inv(v[col]).expect("nonzero pivot");
        for x in v.iter_mut() {
            *x = field.mul(inv, *x);
        }
        for row in self.rows.iter_mut() {
            let c = row[col];
            if c.is_zero() {
                continue;
            }
            for (x, &r) in row.iter_mut().zip(&v) {
                *x = field.sub(*x, field.mul(c, r));
            }
        }
        let at = self.pivots.partition_point(|&p| p < col);
        self.pivots.insert(at, col);
        self.rows.insert(at, v);
        true
    }

    pub fn is_subspace_of(&self, field: &FieldParams, other: &RowSpace) -> bool {
        self.rows.iter().all(|r| other.contains(field, r))
    }
}
