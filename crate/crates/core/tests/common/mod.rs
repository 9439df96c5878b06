//! Test-side oracle: order verdicts straight from the defining identities,
//! over `Complex<BigRational>` with its own elimination. Range inclusions
//! are rank tests, so no generalized inverse is involved anywhere.

#![allow(dead_code)]

use matorder::{GaussRational, Matrix};
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = Complex<BigRational>;

#[derive(Clone, PartialEq)]
pub struct Dense {
    pub rows: usize,
    pub cols: usize,
    pub d: Vec<Vec<Q>>,
}

pub fn dense(m: &Matrix<GaussRational>) -> Dense {
    Dense {
        rows: m.rows(),
        cols: m.cols(),
        d: m.iter_rows()
            .map(|r| r.iter().map(|x| Complex::new(x.re.clone(), x.im.clone())).collect())
            .collect(),
    }
}

impl Dense {
    pub fn adj(&self) -> Dense {
        Dense {
            rows: self.cols,
            cols: self.rows,
            d: (0..self.cols)
                .map(|j| (0..self.rows).map(|i| self.d[i][j].conj()).collect())
                .collect(),
        }
    }

    pub fn mul(&self, o: &Dense) -> Dense {
        assert_eq!(self.cols, o.rows);
        let d = (0..self.rows)
            .map(|i| {
                (0..o.cols)
                    .map(|j| {
                        (0..self.cols).fold(Q::zero(), |acc, k| acc + &self.d[i][k] * &o.d[k][j])
                    })
                    .collect()
            })
            .collect();
        Dense { rows: self.rows, cols: o.cols, d }
    }

    pub fn sub(&self, o: &Dense) -> Dense {
        let d = self
            .d
            .iter()
            .zip(&o.d)
            .map(|(x, y)| x.iter().zip(y).map(|(p, q)| p - q).collect())
            .collect();
        Dense { rows: self.rows, cols: self.cols, d }
    }

    pub fn hcat(&self, o: &Dense) -> Dense {
        let d = self
            .d
            .iter()
            .zip(&o.d)
            .map(|(x, y)| x.iter().chain(y).cloned().collect())
            .collect();
        Dense { rows: self.rows, cols: self.cols + o.cols, d }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.d.clone();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(p) = (r..self.rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let pivot = m[r].clone();
            let inv = Q::one() / &pivot[c];
            for (i, row) in m.iter_mut().enumerate() {
                if i != r && !row[c].is_zero() {
                    let f = &row[c] * &inv;
                    for (x, p) in row[c..].iter_mut().zip(&pivot[c..]) {
                        *x = &*x - &f * p;
                    }
                }
            }
            r += 1;
        }
        r
    }
}

/// `R(A) ⊆ R(B)` iff appending the columns of `A` keeps the rank of `B`.
fn col_leq(a: &Dense, b: &Dense) -> bool {
    b.hcat(a).rank() == b.rank()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Verdicts {
    pub star: bool,
    pub minus: bool,
    pub space: bool,
    pub diamond: bool,
    pub left: bool,
    pub right: bool,
}

pub fn verdicts(a: &Matrix<GaussRational>, b: &Matrix<GaussRational>) -> Verdicts {
    let (a, b) = (dense(a), dense(b));
    let (ah, bh) = (a.adj(), b.adj());
    let cols = col_leq(&a, &b);
    let rows = col_leq(&ah, &bh);
    let left_id = ah.mul(&a) == ah.mul(&b);
    let right_id = a.mul(&ah) == b.mul(&ah);
    let space = cols && rows;
    Verdicts {
        star: left_id && right_id,
        minus: b.sub(&a).rank() + a.rank() == b.rank(),
        space,
        diamond: space && a.mul(&bh).mul(&a) == a.mul(&ah).mul(&a),
        left: left_id && cols,
        right: right_id && rows,
    }
}
