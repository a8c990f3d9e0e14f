//! Incremental row-echelon reduction over the integers.
//!
//! Relation matrices have far more rows than columns, most of them
//! redundant. Folding rows one at a time into an echelon basis keeps the
//! matrix handed to the Smith normal form at most square.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::snf::IntMatrix;

pub(crate) struct Echelon {
    cols: usize,
    /// Pivot column -> row whose first nonzero entry sits there.
    pivots: BTreeMap<usize, Vec<BigInt>>,
}

impl Echelon {
    pub(crate) fn new(cols: usize) -> Self {
        Echelon {
            cols,
            pivots: BTreeMap::new(),
        }
    }

    /// Adds `v` to the row lattice.
    pub(crate) fn insert(&mut self, mut v: Vec<BigInt>) {
        debug_assert_eq!(v.len(), self.cols);
        let mut c = 0;
        while c < self.cols {
            if v[c].is_zero() {
                c += 1;
                continue;
            }
            let Some(row) = self.pivots.get_mut(&c) else {
                if v[c].is_negative() {
                    v.iter_mut().for_each(|x| *x = -std::mem::take(x));
                }
                self.pivots.insert(c, v);
                return;
            };
            let p = row[c].clone();
            let x = v[c].clone();
            if x.is_multiple_of(&p) {
                let q = &x / &p;
                for j in c..self.cols {
                    if !row[j].is_zero() {
                        v[j] -= &q * &row[j];
                    }
                }
            } else {
                // [s t; -x/g p/g] is unimodular and sends (p, x) to (g, 0)
                let e = p.extended_gcd(&x);
                let (g, s, t) = (e.gcd, e.x, e.y);
                let (pg, xg) = (&p / &g, &x / &g);
                for j in c..self.cols {
                    let (r, w) = (&row[j], &v[j]);
                    if r.is_zero() && w.is_zero() {
                        continue;
                    }
                    let new_row = &s * r + &t * w;
                    let new_v = &pg * w - &xg * r;
                    row[j] = new_row;
                    v[j] = new_v;
                }
            }
            debug_assert!(v[c].is_zero());
            c += 1;
        }
    }

    #[cfg(test)]
    pub(crate) fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub(crate) fn into_matrix(self) -> IntMatrix {
        let rows: Vec<Vec<BigInt>> = self.pivots.into_values().collect();
        IntMatrix::from_rows(&rows, self.cols)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::snf::smith_normal_form;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn keeps_the_lattice() {
        let rows = [[4, 6, 0], [6, 9, 3], [2, 3, 0], [0, 0, 6], [8, 12, 3]];
        let mut e = Echelon::new(3);
        for r in rows {
            e.insert(big(&r));
        }
        assert_eq!(e.rank(), 2);
        let direct = smith_normal_form(&IntMatrix::from_rows(&rows.map(|r| big(&r)), 3)).factors;
        let reduced = smith_normal_form(&e.into_matrix()).factors;
        let nonzero = |f: Vec<BigInt>| f.into_iter().filter(|x| !x.is_zero()).collect::<Vec<_>>();
        assert_eq!(nonzero(direct), nonzero(reduced));
    }
}
