//! Exact linear algebra over ℚ.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::IntVector;

pub type Rational = BigRational;

pub fn q(x: &BigInt) -> Rational {
    Rational::from_integer(x.clone())
}

pub fn to_rational(v: &IntVector) -> Vec<Rational> {
    v.entries().iter().map(q).collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut [Vec<Rational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let t = &m[r][j] * &f;
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank_of(vectors: &[IntVector]) -> usize {
    let mut m: Vec<Vec<Rational>> = vectors.iter().map(to_rational).collect();
    rref(&mut m).len()
}

/// Coefficients `c` with `Σ cᵢ·rowsᵢ = target`, if `target` lies in the
/// rational span. `rows` must be linearly independent.
pub fn solve_combination(rows: &[IntVector], target: &IntVector) -> Option<Vec<Rational>> {
    let n = target.len();
    let k = rows.len();
    // columns are the rows, last column is the target
    let mut m: Vec<Vec<Rational>> = (0..n)
        .map(|j| {
            let mut line: Vec<Rational> = rows.iter().map(|r| q(&r[j])).collect();
            line.push(q(&target[j]));
            line
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.last() == Some(&k) {
        return None;
    }
    debug_assert_eq!(pivots.len(), k, "rows are not independent");
    let mut c = vec![Rational::zero(); k];
    for (r, &p) in pivots.iter().enumerate() {
        c[p] = m[r][k].clone();
    }
    Some(c)
}

/// Integer coefficients expressing `target` in `rows`, if any.
pub fn integer_combination(rows: &[IntVector], target: &IntVector) -> Option<Vec<BigInt>> {
    solve_combination(rows, target)?
        .into_iter()
        .map(|x| x.is_integer().then(|| x.to_integer()))
        .collect()
}

/// Is `target` a nonnegative combination of the (independent) `rows`?
pub fn in_simplicial_cone(rows: &[IntVector], target: &IntVector) -> Option<Vec<Rational>> {
    solve_combination(rows, target).filter(|c| c.iter().all(|x| !x.is_negative()))
}

/// Basis of the rational kernel `{x : Σ xⱼ·colⱼ = 0}` of a matrix given by rows.
pub fn kernel(rows: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Rational::zero(); cols];
            x[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                x[p] = -m[r][f].clone();
            }
            x
        })
        .collect()
}

/// Clears denominators and divides out the content.
pub fn primitive_integer_vector(x: &[Rational]) -> IntVector {
    let lcm = x
        .iter()
        .fold(BigInt::one(), |l, v| num_integer::lcm(l, v.denom().clone()));
    IntVector::new(x.iter().map(|v| (v * q(&lcm)).to_integer()).collect()).primitive_part()
}
