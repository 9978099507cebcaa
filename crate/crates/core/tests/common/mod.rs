//! Small-integer oracles shared by the integration tests. Everything here is
//! written against plain `i128` arithmetic and does not call into the
//! library's lattice code.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use toricarr::arrangement::{xi_of, Arrangement, Layer, TorusValue};
use toricarr::fan::{make_orthant_fan, Fan};
use toricarr::subdiv::resolve_all;
use toricarr::lattice::IntVector;

pub fn ints(v: &IntVector) -> Vec<i128> {
    v.to_i64s().expect("small entries").into_iter().map(i128::from).collect()
}

pub fn vecs(v: &[i64]) -> IntVector {
    IntVector::from_i64s(v)
}

pub fn dot(a: &[i128], b: &[i128]) -> i128 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Laplace expansion; fine for the tiny sizes used here.
pub fn det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    match n {
        0 => 1,
        1 => m[0][0],
        _ => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

pub fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: i128, b: i128) -> i128 {
    a / gcd(a, b) * b
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Rank and gcd of the maximal nonzero minors of a row set.
pub fn rank_and_divisor(rows: &[Vec<i128>], n: usize) -> (usize, i128) {
    for k in (1..=rows.len().min(n)).rev() {
        let mut g = 0;
        for rs in subsets(rows.len(), k) {
            for cs in subsets(n, k) {
                let m: Vec<Vec<i128>> = rs.iter().map(|&r| cs.iter().map(|&c| rows[r][c]).collect()).collect();
                g = gcd(g, det(&m));
            }
        }
        if g != 0 {
            return (k, g);
        }
    }
    (0, 1)
}

/// Every maximal cone is spanned by part of a lattice basis.
pub fn smooth(f: &Fan) -> bool {
    f.maximal_frames().iter().all(|m| {
        let rows: Vec<Vec<i128>> = m.iter().map(|&i| ints(f.ray(i))).collect();
        rank_and_divisor(&rows, f.rank()) == (m.len(), 1)
    })
}

/// `p` in the closed full-dimensional simplicial cone on `rays`, by Cramer.
pub fn in_full_cone(rays: &[Vec<i128>], p: &[i128]) -> bool {
    let d = det(rays);
    assert_ne!(d, 0, "cone is not full-dimensional");
    (0..rays.len()).all(|i| {
        let mut m = rays.to_vec();
        m[i] = p.to_vec();
        det(&m) * d.signum() >= 0
    })
}

pub fn covered(f: &Fan, p: &[i128]) -> bool {
    Locator::new(f).covers(p)
}

/// Full-dimensional maximal cones as adjugate rows: `p` lies in the cone
/// iff every row pairs with `p` to a value of the sign of the determinant.
pub struct Locator {
    cones: Vec<(Vec<Vec<i128>>, i128)>,
}

impl Locator {
    pub fn new(f: &Fan) -> Locator {
        let n = f.rank();
        let cones = f
            .maximal_frames()
            .iter()
            .filter(|m| m.len() == n)
            .map(|m| {
                let rays: Vec<Vec<i128>> = m.iter().map(|&i| ints(f.ray(i))).collect();
                let d = det(&rays);
                assert_ne!(d, 0, "cone is not full-dimensional");
                // row i of the adjugate: x ↦ det(rays with row i replaced by x)
                let adj = (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|k| {
                                let mut m = rays.clone();
                                m[i] = (0..n).map(|j| i128::from(j == k)).collect();
                                det(&m)
                            })
                            .collect()
                    })
                    .collect();
                (adj, d.signum())
            })
            .collect();
        Locator { cones }
    }

    pub fn covers(&self, p: &[i128]) -> bool {
        self.cones
            .iter()
            .any(|(adj, sign)| adj.iter().all(|row| dot(row, p) * sign >= 0))
    }
}

/// A random lattice point in the interior of a cone.
pub fn interior_point<R: Rng>(rays: &[Vec<i128>], n: usize, rng: &mut R) -> Vec<i128> {
    let mut p = vec![0i128; n];
    for r in rays {
        let w: i128 = rng.gen_range(1..=1000);
        for (x, y) in p.iter_mut().zip(r) {
            *x += w * y;
        }
    }
    p
}

/// Support of `fine` contains the support of `coarse`, sampled.
pub fn support_covers<R: Rng>(fine: &Fan, coarse: &Fan, samples: usize, rng: &mut R) -> bool {
    let locator = Locator::new(fine);
    coarse.maximal_frames().iter().all(|m| {
        let rays: Vec<Vec<i128>> = m.iter().map(|&i| ints(coarse.ray(i))).collect();
        (0..samples).all(|_| locator.covers(&interior_point(&rays, coarse.rank(), rng)))
    })
}

/// Every maximal cone of `fine` lies in some maximal cone of `coarse`.
pub fn refines(fine: &Fan, coarse: &Fan) -> bool {
    fine.maximal_frames().iter().all(|m| {
        coarse.maximal_frames().iter().any(|c| {
            let rays: Vec<Vec<i128>> = c.iter().map(|&i| ints(coarse.ray(i))).collect();
            m.iter().all(|&i| in_full_cone(&rays, &ints(fine.ray(i))))
        })
    })
}

pub fn two_faces(f: &Fan) -> BTreeSet<(usize, usize)> {
    let mut out = BTreeSet::new();
    for m in f.maximal_frames() {
        for (x, &a) in m.iter().enumerate() {
            for &b in &m[x + 1..] {
                out.insert((a.min(b), a.max(b)));
            }
        }
    }
    out
}

/// `(M, ε, q)` over the two-faces on which `χ` changes sign.
pub fn measure(f: &Fan, chi: &[i128]) -> (i128, u8, usize) {
    let scores: Vec<(i128, u8)> = two_faces(f)
        .into_iter()
        .filter_map(|(a, b)| {
            let x = dot(chi, &ints(f.ray(a)));
            let y = dot(chi, &ints(f.ray(b)));
            (x * y < 0).then(|| (x.abs().max(y.abs()), u8::from(x.abs() == y.abs())))
        })
        .collect();
    match scores.iter().max() {
        None => (0, 0, 0),
        Some(&top) => (top.0, top.1, scores.iter().filter(|&&s| s == top).count()),
    }
}

/// `χ` does not change sign on any maximal cone.
pub fn coherent(f: &Fan, chi: &[i128]) -> bool {
    f.maximal_frames().iter().all(|m| {
        let vals: Vec<i128> = m.iter().map(|&i| dot(chi, &ints(f.ray(i)))).collect();
        vals.iter().all(|&v| v >= 0) || vals.iter().all(|&v| v <= 0)
    })
}

pub fn random_character<R: Rng>(n: usize, bound: i64, rng: &mut R) -> IntVector {
    loop {
        let v: Vec<i64> = (0..n).map(|_| rng.gen_range(-bound..=bound)).collect();
        if v.iter().any(|&x| x != 0) {
            return vecs(&v);
        }
    }
}

/// One to three layers of codimension at most two with values `±1`.
pub fn random_arrangement(n: usize, rng: &mut ChaCha8Rng) -> Arrangement {
    loop {
        let count = rng.gen_range(1..=3);
        let mut layers = Vec::new();
        for _ in 0..count {
            let k = rng.gen_range(1..=n.min(2));
            let rows: Vec<Vec<i128>> = (0..k).map(|_| (0..n).map(|_| rng.gen_range(-2..=2)).collect()).collect();
            if rank_and_divisor(&rows, n) != (k, 1) {
                continue;
            }
            let basis = rows.iter().map(|r| vecs(&r.iter().map(|&x| x as i64).collect::<Vec<_>>())).collect();
            let values = (0..k).map(|_| TorusValue::root_of_unity(rng.gen_range(0..2), 2, 0)).collect();
            layers.push(Layer::new(n, 0, basis, values).unwrap());
        }
        if let Ok(a) = Arrangement::new(n, 0, layers) {
            if !a.is_empty() {
                return a;
            }
        }
    }
}

/// A random arrangement and the fan produced for it from the orthant fan.
pub fn resolved(n: usize, rng: &mut ChaCha8Rng) -> (Fan, Arrangement) {
    let a = random_arrangement(n, rng);
    let (f, _) = resolve_all(&make_orthant_fan(n), &xi_of(&a)).unwrap();
    (f, a)
}

