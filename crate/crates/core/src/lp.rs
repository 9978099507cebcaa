//! Dense two-phase simplex over ℚ with Bland's rule.
//!
//! Only used on small systems (cone intersections, relative-interior
//! points), so no attempt is made at sparsity or numerical cleverness.

use num_traits::{One, Signed, Zero};

use crate::lattice::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { x: Vec<Rational>, value: Rational },
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    z: Vec<Rational>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x -= p * &f;
            }
        }
        if !self.z[c].is_zero() {
            let f = self.z[c].clone();
            for (x, p) in self.z.iter_mut().zip(&pivot_row) {
                *x -= p * &f;
            }
        }
        self.basis[r] = c;
    }

    // columns < `allowed` may enter
    fn run(&mut self, allowed: usize) -> bool {
        loop {
            let Some(c) = (0..allowed).find(|&j| self.z[j].is_negative()) else {
                return true;
            };
            let rhs = self.width;
            let mut best: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[c].is_positive() {
                    continue;
                }
                let ratio = &row[rhs] / &row[c];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }
}

/// Maximizes `c·x` subject to `A·x = b`, `x ≥ 0`.
pub fn maximize(c: &[Rational], a: &[Vec<Rational>], b: &[Rational]) -> LpOutcome {
    let n = c.len();
    let m = a.len();
    assert_eq!(b.len(), m);
    let width = n + m;
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(m);
    for (i, ai) in a.iter().enumerate() {
        assert_eq!(ai.len(), n);
        let flip = b[i].is_negative();
        let mut row: Vec<Rational> = ai.iter().map(|x| if flip { -x } else { x.clone() }).collect();
        row.extend((0..m).map(|k| if k == i { Rational::one() } else { Rational::zero() }));
        row.push(if flip { -&b[i] } else { b[i].clone() });
        rows.push(row);
    }
    // phase one: maximize -Σ artificials
    let mut z = vec![Rational::zero(); width + 1];
    for row in &rows {
        for j in 0..n {
            z[j] -= &row[j];
        }
        z[width] -= &row[width];
    }
    let mut t = Tableau {
        rows,
        z,
        basis: (n..n + m).collect(),
        width,
    };
    t.run(width);
    if t.z[width].is_negative() {
        return LpOutcome::Infeasible;
    }
    // drive artificials out of the basis, dropping redundant rows
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            match (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => t.pivot(i, j),
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }
    // phase two on the original columns; artificial columns never re-enter
    let mut z = vec![Rational::zero(); width + 1];
    for j in 0..n {
        z[j] = -c[j].clone();
    }
    for (row, &bv) in t.rows.iter().zip(&t.basis) {
        let cb = &c[bv];
        if cb.is_zero() {
            continue;
        }
        for j in 0..=width {
            z[j] += &row[j] * cb;
        }
    }
    t.z = z;
    if !t.run(n) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Rational::zero(); n];
    for (row, &bv) in t.rows.iter().zip(&t.basis) {
        x[bv] = row[width].clone();
    }
    let value = t.z[width].clone();
    LpOutcome::Optimal { x, value }
}
