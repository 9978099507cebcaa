use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// `U·A·V = D` with `U`, `V` unimodular and `D` diagonal with
/// nonnegative entries `d₁ | d₂ | …`.
///
/// The inverses of `U` and `V` are tracked alongside, since saturation,
/// kernels and basis completion all need them.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    u_inv: IntMatrix,
    v_inv: IntMatrix,
}

impl SmithDecomposition {
    pub fn u_inverse(&self) -> &IntMatrix {
        &self.u_inv
    }

    pub fn v_inverse(&self) -> &IntMatrix {
        &self.v_inv
    }

    /// The nonzero diagonal entries.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let k = self.d.nrows().min(self.d.ncols());
        (0..k)
            .map(|i| self.d.get(i, i).clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

struct Work {
    a: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    u_inv: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
    v_inv: Vec<Vec<BigInt>>,
    m: usize,
    n: usize,
}

impl Work {
    // row_i += k * row_j
    fn row_add(&mut self, i: usize, j: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for c in 0..self.n {
            let t = &self.a[j][c] * k;
            self.a[i][c] += t;
        }
        for c in 0..self.m {
            let t = &self.u[j][c] * k;
            self.u[i][c] += t;
        }
        // U⁻¹ gets the inverse operation on columns: col_j -= k * col_i
        for r in 0..self.m {
            let t = &self.u_inv[r][i] * k;
            self.u_inv[r][j] -= t;
        }
    }

    // col_i += k * col_j
    fn col_add(&mut self, i: usize, j: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for r in 0..self.m {
            let t = &self.a[r][j] * k;
            self.a[r][i] += t;
        }
        for r in 0..self.n {
            let t = &self.v[r][j] * k;
            self.v[r][i] += t;
        }
        // V⁻¹ gets row_j -= k * row_i
        for c in 0..self.n {
            let t = &self.v_inv[i][c] * k;
            self.v_inv[j][c] -= t;
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        self.u.swap(i, j);
        for r in 0..self.m {
            self.u_inv[r].swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.m {
            self.a[r].swap(i, j);
        }
        for r in 0..self.n {
            self.v[r].swap(i, j);
        }
        self.v_inv.swap(i, j);
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut() {
            *x = -&*x;
        }
        for x in self.u[i].iter_mut() {
            *x = -&*x;
        }
        for r in 0..self.m {
            self.u_inv[r][i] = -&self.u_inv[r][i];
        }
    }

    fn min_nonzero(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.m {
            for j in t..self.n {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.abs() < self.a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    fn eliminate(&mut self, t: usize) {
        loop {
            let p = self.a[t][t].clone();
            let mut dirty = false;
            for i in t + 1..self.m {
                if self.a[i][t].is_zero() {
                    continue;
                }
                let q = self.a[i][t].div_floor(&p);
                self.row_add(i, t, &-q);
                dirty |= !self.a[i][t].is_zero();
            }
            for j in t + 1..self.n {
                if self.a[t][j].is_zero() {
                    continue;
                }
                let q = self.a[t][j].div_floor(&p);
                self.col_add(j, t, &-q);
                dirty |= !self.a[t][j].is_zero();
            }
            if dirty {
                // a remainder smaller than the pivot survives: move it up
                let mut best = (t, t);
                for i in t + 1..self.m {
                    if !self.a[i][t].is_zero() && self.a[i][t].abs() < self.a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..self.n {
                    if !self.a[t][j].is_zero() && self.a[t][j].abs() < self.a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                self.swap_rows(t, best.0);
                self.swap_cols(t, best.1);
                continue;
            }
            let bad = (t + 1..self.m).find_map(|i| {
                (t + 1..self.n)
                    .find(|&j| !self.a[i][j].is_multiple_of(&p))
                    .map(|_| i)
            });
            match bad {
                Some(i) => self.row_add(t, i, &BigInt::one()),
                None => break,
            }
        }
    }
}

/// Smith normal form of an arbitrary integer matrix.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (m, n) = (a.nrows(), a.ncols());
    let mut w = Work {
        a: a.data().to_vec(),
        u: IntMatrix::identity(m).data().to_vec(),
        u_inv: IntMatrix::identity(m).data().to_vec(),
        v: IntMatrix::identity(n).data().to_vec(),
        v_inv: IntMatrix::identity(n).data().to_vec(),
        m,
        n,
    };
    for t in 0..m.min(n) {
        let Some((pi, pj)) = w.min_nonzero(t) else {
            break;
        };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        w.eliminate(t);
        if w.a[t][t].is_negative() {
            w.negate_row(t);
        }
    }
    SmithDecomposition {
        u: IntMatrix::from_data(m, m, w.u),
        d: IntMatrix::from_data(m, n, w.a),
        v: IntMatrix::from_data(n, n, w.v),
        u_inv: IntMatrix::from_data(m, m, w.u_inv),
        v_inv: IntMatrix::from_data(n, n, w.v_inv),
    }
}
