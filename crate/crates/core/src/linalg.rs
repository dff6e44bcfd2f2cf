//! Exact linear algebra over the Gaussian rationals: incremental reduced
//! row-echelon forms on sparse rows and nullspace bases.
//!
//! Everything is deterministic: rows are reduced in insertion order, pivots
//! are always the leftmost nonzero column, and nullspace basis vectors are
//! emitted one per free column in ascending column order, scaled to a
//! primitive integer form with a positive leading entry.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalar::Scalar;

/// A sparse row: column index -> nonzero coefficient.
pub type SparseRow = BTreeMap<usize, Scalar>;

/// An incrementally maintained reduced row-echelon form.
pub struct Rref {
    ncols: usize,
    /// pivot column -> row normalized to 1 at that column and fully reduced
    /// against every other pivot.
    rows: BTreeMap<usize, SparseRow>,
}

fn row_axpy(target: &mut SparseRow, factor: &Scalar, source: &SparseRow) {
    if factor.is_zero() {
        return;
    }
    for (col, c) in source {
        let add = factor * c;
        match target.get_mut(col) {
            Some(existing) => {
                let sum = &*existing + &add;
                if sum.is_zero() {
                    target.remove(col);
                } else {
                    *existing = sum;
                }
            }
            None => {
                if !add.is_zero() {
                    target.insert(*col, add);
                }
            }
        }
    }
}

impl Rref {
    pub fn new(ncols: usize) -> Self {
        Rref { ncols, rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Reduces `row` against the current pivots, returning the remainder.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        // Collect the eliminations first; `row`'s key set shrinks as we go.
        loop {
            let hit = row
                .iter()
                .find_map(|(col, c)| self.rows.get(col).map(|pivot| (*col, c.clone(), pivot)));
            match hit {
                Some((_, coeff, pivot)) => row_axpy(&mut row, &-&coeff, pivot),
                None => return row,
            }
        }
    }

    /// Reduces and, if nonzero, installs `row` as a new pivot row
    /// (keeping the form fully reduced). Returns whether the rank grew.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let mut row = self.reduce(row);
        let Some((&lead, _)) = row.iter().next() else {
            return false;
        };
        let inv = row[&lead].inv().expect("leading coefficient is nonzero");
        for c in row.values_mut() {
            *c = &*c * &inv;
        }
        // Back-substitute into the existing pivot rows.
        let cols: Vec<usize> = self.rows.keys().copied().collect();
        for col in cols {
            let factor = {
                let existing = &self.rows[&col];
                existing.get(&lead).cloned()
            };
            if let Some(factor) = factor {
                let target = self.rows.get_mut(&col).expect("pivot row exists");
                row_axpy(target, &-&factor, &row);
            }
        }
        self.rows.insert(lead, row);
        true
    }

    /// Basis of the solution space of `A x = 0` where the inserted rows are
    /// the rows of `A`: one primitive vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let mut basis = Vec::new();
        for free in 0..self.ncols {
            if self.rows.contains_key(&free) {
                continue;
            }
            let mut v = vec![Scalar::zero(); self.ncols];
            v[free] = Scalar::one();
            for (pivot_col, row) in &self.rows {
                if let Some(c) = row.get(&free) {
                    v[*pivot_col] = -c;
                }
            }
            normalize_primitive(&mut v);
            basis.push(v);
        }
        basis
    }
}

/// Scales a nonzero vector by a positive rational so that all numerators
/// become coprime integers, then flips the sign so the first nonzero entry
/// is positive (real part first, imaginary part as tie-breaker).
pub fn normalize_primitive(v: &mut [Scalar]) {
    let mut den_lcm = BigInt::one();
    for s in v.iter() {
        den_lcm = den_lcm.lcm(s.re().denom());
        den_lcm = den_lcm.lcm(s.im().denom());
    }
    let mut num_gcd = BigInt::zero();
    for s in v.iter() {
        num_gcd = num_gcd.gcd(&(s.re().numer() * &den_lcm / s.re().denom()));
        num_gcd = num_gcd.gcd(&(s.im().numer() * &den_lcm / s.im().denom()));
    }
    if num_gcd.is_zero() {
        return;
    }
    let factor = Scalar::new(
        BigRational::new(den_lcm, num_gcd),
        BigRational::zero(),
    );
    let mut flip = false;
    for s in v.iter() {
        if !s.is_zero() {
            flip = s.re().is_negative() || (s.re().is_zero() && s.im().is_negative());
            break;
        }
    }
    let factor = if flip { -&factor } else { factor };
    for s in v.iter_mut() {
        *s = &*s * &factor;
    }
}

/// `A v` for sparse rows: true when every row is orthogonal to `v`.
pub fn maps_to_zero(rows: &[SparseRow], v: &[Scalar]) -> bool {
    rows.iter().all(|row| {
        let mut acc = Scalar::zero();
        for (col, c) in row {
            acc = &acc + &(c * &v[*col]);
        }
        acc.is_zero()
    })
}
