//! Smith normal form over the integers.
//!
//! Elimination always pivots on a nonzero entry of least absolute value in
//! the remaining block, breaking ties by leftmost column and then uppermost
//! row. All arithmetic is exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntegerMatrix;

/// `U * M * V = D` with `D` diagonal, `d_1 | d_2 | ... | d_rank` positive,
/// and `U`, `V` unimodular.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl SmithForm {
    /// The diagonal matrix `D` with the shape of the input.
    pub fn diagonal_matrix(&self) -> IntegerMatrix {
        let mut d = IntegerMatrix::zeros(self.u.rows(), self.v.cols());
        for (i, x) in self.diagonal.iter().enumerate() {
            d[(i, i)] = x.clone();
        }
        d
    }

    /// Re-checks every contractual property against the original matrix.
    pub fn verify(&self, m: &IntegerMatrix) -> bool {
        let unimodular = |x: &IntegerMatrix| x.determinant().abs().is_one();
        let chain = self.diagonal.iter().all(|d| d.is_positive())
            && self.diagonal.windows(2).all(|w| (&w[1] % &w[0]).is_zero());
        chain
            && self.rank == self.diagonal.len()
            && unimodular(&self.u)
            && unimodular(&self.v)
            && self.u.mul(m).mul(&self.v) == self.diagonal_matrix()
    }
}

pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let mut run = Elimination::new(m.clone(), true);
    run.process();
    let form = SmithForm {
        rank: run.diagonal.len(),
        diagonal: run.diagonal,
        u: run.u.expect("witnesses tracked"),
        v: run.v.expect("witnesses tracked"),
    };
    debug_assert!(form.verify(m), "Smith form witnesses failed verification");
    form
}

/// Invariant factors only, without tracking the transforms.
pub fn smith_diagonal(m: &IntegerMatrix) -> Vec<BigInt> {
    let mut run = Elimination::new(m.clone(), false);
    run.process();
    run.diagonal
}

struct Elimination {
    a: IntegerMatrix,
    u: Option<IntegerMatrix>,
    v: Option<IntegerMatrix>,
    diagonal: Vec<BigInt>,
}

impl Elimination {
    fn new(a: IntegerMatrix, witnesses: bool) -> Self {
        let (r, c) = (a.rows(), a.cols());
        Elimination {
            u: witnesses.then(|| IntegerMatrix::identity(r)),
            v: witnesses.then(|| IntegerMatrix::identity(c)),
            a,
            diagonal: Vec::new(),
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some(u) = self.u.as_mut() {
            u.swap_rows(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some(v) = self.v.as_mut() {
            v.swap_cols(i, j);
        }
    }

    fn add_row(&mut self, target: usize, source: usize, f: &BigInt) {
        self.a.add_row_multiple(target, source, f);
        if let Some(u) = self.u.as_mut() {
            u.add_row_multiple(target, source, f);
        }
    }

    fn add_col(&mut self, target: usize, source: usize, f: &BigInt) {
        self.a.add_col_multiple(target, source, f);
        if let Some(v) = self.v.as_mut() {
            v.add_col_multiple(target, source, f);
        }
    }

    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for j in t..self.a.cols() {
            for i in t..self.a.rows() {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some(b) => x.abs() < self.a[b].abs(),
                };
                if better {
                    best = Some((i, j));
                    if x.abs().is_one() {
                        return best;
                    }
                }
            }
        }
        best
    }

    fn process(&mut self) {
        let steps = self.a.rows().min(self.a.cols());
        for t in 0..steps {
            let Some((pi, pj)) = self.pivot(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut clean = true;
                for i in t + 1..self.a.rows() {
                    if self.a[(i, t)].is_zero() {
                        continue;
                    }
                    let q = self.a[(i, t)].div_floor(&self.a[(t, t)]);
                    self.add_row(i, t, &-q);
                    clean &= self.a[(i, t)].is_zero();
                }
                for j in t + 1..self.a.cols() {
                    if self.a[(t, j)].is_zero() {
                        continue;
                    }
                    let q = self.a[(t, j)].div_floor(&self.a[(t, t)]);
                    self.add_col(j, t, &-q);
                    clean &= self.a[(t, j)].is_zero();
                }
                if !clean {
                    let (pi, pj) = self.pivot(t).expect("a remainder is nonzero");
                    self.swap_rows(t, pi);
                    self.swap_cols(t, pj);
                    continue;
                }
                let pivot = self.a[(t, t)].clone();
                let offender = (t + 1..self.a.rows())
                    .find(|&i| (t + 1..self.a.cols()).any(|j| !(&self.a[(i, j)] % &pivot).is_zero()));
                match offender {
                    Some(i) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a[(t, t)].is_negative() {
                self.a.negate_row(t);
                if let Some(u) = self.u.as_mut() {
                    u.negate_row(t);
                }
            }
            self.diagonal.push(self.a[(t, t)].clone());
        }
    }
}
