//! Simplicial fans with lattice rays.
//!
//! A [`Fan`] stores its rays and its maximal cones; every other cone is a
//! face of a maximal one and is recomputed on demand. Maximal cones are kept
//! as ordered frames `(e¹,…,eᵏ)` so that the coordinates of a character in
//! the dual basis of a cone have a definite order; a stellar move replaces
//! a generator in place. [`Cone`] is the unordered identity of a cone.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::rational::{self, in_simplicial_cone, Rational};
use crate::lattice::{IntVector, LatticeError, Sublattice};
use crate::lp::{self, LpOutcome};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FanError {
    #[error("ray {0} has the wrong length for rank {1}")]
    RankMismatch(IntVector, usize),
    #[error("zero vector cannot be a ray")]
    ZeroRay,
    #[error("ray {0} is not primitive")]
    NotPrimitive(IntVector),
    #[error("cone refers to ray index {0}, which does not exist")]
    BadRayIndex(usize),
    #[error("cone {0:?} has linearly dependent rays")]
    DependentRays(Vec<usize>),
    #[error("cone {0:?} is not a two-dimensional cone of the fan")]
    NotATwoFace(Vec<IntVector>),
    #[error("cone {0:?} is not a cone of the fan")]
    ConeNotInFan(Vec<IntVector>),
    #[error("maximal cone {0:?} has dimension below the ambient rank")]
    MixedDimension(Vec<IntVector>),
    #[error("cones {0:?} and {1:?} do not meet in a common face")]
    BadIntersection(Vec<IntVector>, Vec<IntVector>),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// A cone of a fan, identified by the sorted set of its ray indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Cone(Vec<usize>);

impl Cone {
    pub fn new(mut ids: Vec<usize>) -> Self {
        ids.sort_unstable();
        ids.dedup();
        Cone(ids)
    }

    pub fn zero() -> Self {
        Cone(Vec::new())
    }

    pub fn ray_ids(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_face_of(&self, other: &Cone) -> bool {
        self.0.iter().all(|i| other.0.binary_search(i).is_ok())
    }

    pub fn contains_ray(&self, id: usize) -> bool {
        self.0.binary_search(&id).is_ok()
    }

    pub fn union(&self, other: &Cone) -> Cone {
        Cone::new(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn intersection(&self, other: &Cone) -> Cone {
        Cone(self.0.iter().filter(|i| other.contains_ray(**i)).copied().collect())
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.iter().join(","))
    }
}

/// On-disk form: `{ "rank": n, "rays": [[..]..], "maximal_cones": [[..]..] }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanFile {
    pub rank: usize,
    pub rays: Vec<IntVector>,
    pub maximal_cones: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FanFile", into = "FanFile")]
pub struct Fan {
    rank: usize,
    rays: Vec<IntVector>,
    maximal: Vec<Vec<usize>>,
    lookup: BTreeMap<IntVector, usize>,
}

impl TryFrom<FanFile> for Fan {
    type Error = FanError;
    fn try_from(f: FanFile) -> Result<Fan, FanError> {
        Fan::new(f.rank, f.rays, f.maximal_cones)
    }
}

impl From<Fan> for FanFile {
    fn from(f: Fan) -> FanFile {
        FanFile {
            rank: f.rank,
            rays: f.rays,
            maximal_cones: f.maximal,
        }
    }
}

impl Fan {
    /// Validates rays and cones. Duplicate rays are merged, unused rays
    /// dropped, and listed cones that are faces of other listed cones are
    /// discarded. Face compatibility (condition (b)) is not checked here;
    /// see [`Fan::check_intersections`].
    pub fn new(rank: usize, rays: Vec<IntVector>, cones: Vec<Vec<usize>>) -> Result<Fan, FanError> {
        for r in &rays {
            if r.len() != rank {
                return Err(FanError::RankMismatch(r.clone(), rank));
            }
            if !r.is_primitive().map_err(|_| FanError::ZeroRay)? {
                return Err(FanError::NotPrimitive(r.clone()));
            }
        }
        let mut cones = if cones.is_empty() { vec![Vec::new()] } else { cones };
        for c in &cones {
            if let Some(&bad) = c.iter().find(|&&i| i >= rays.len()) {
                return Err(FanError::BadRayIndex(bad));
            }
        }
        // merge duplicates and drop unused rays, keeping first-use order
        let used: BTreeSet<usize> = cones.iter().flatten().copied().collect();
        let mut lookup: BTreeMap<IntVector, usize> = BTreeMap::new();
        let mut kept: Vec<IntVector> = Vec::new();
        let mut remap: Vec<usize> = vec![usize::MAX; rays.len()];
        for (i, r) in rays.iter().enumerate() {
            if !used.contains(&i) {
                continue;
            }
            let id = *lookup.entry(r.clone()).or_insert_with(|| {
                kept.push(r.clone());
                kept.len() - 1
            });
            remap[i] = id;
        }
        for c in cones.iter_mut() {
            for i in c.iter_mut() {
                *i = remap[*i];
            }
        }
        let mut maximal: Vec<Vec<usize>> = Vec::new();
        let mut seen: BTreeSet<Cone> = BTreeSet::new();
        for c in &cones {
            let set = Cone::new(c.clone());
            if set.dim() != c.len() {
                return Err(FanError::DependentRays(c.clone()));
            }
            let vecs: Vec<IntVector> = c.iter().map(|&i| kept[i].clone()).collect();
            if rational::rank_of(&vecs) != vecs.len() {
                return Err(FanError::DependentRays(c.clone()));
            }
            if seen.insert(set) {
                maximal.push(c.clone());
            }
        }
        let sets: Vec<Cone> = maximal.iter().map(|c| Cone::new(c.clone())).collect();
        let maximal: Vec<Vec<usize>> = maximal
            .into_iter()
            .enumerate()
            .filter(|(i, _)| !sets.iter().enumerate().any(|(j, s)| j != *i && sets[*i].is_face_of(s)))
            .map(|(_, c)| c)
            .collect();
        Ok(Fan {
            rank,
            rays: kept,
            maximal,
            lookup,
        })
    }

    /// The fan of a single cone and its faces.
    pub fn single_cone(rank: usize, rays: Vec<IntVector>) -> Result<Fan, FanError> {
        let ids = (0..rays.len()).collect();
        Fan::new(rank, rays, vec![ids])
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[IntVector] {
        &self.rays
    }

    pub fn ray(&self, id: usize) -> &IntVector {
        &self.rays[id]
    }

    pub fn ray_id(&self, v: &IntVector) -> Option<usize> {
        self.lookup.get(v).copied()
    }

    /// Maximal cones as ordered frames.
    pub fn maximal_frames(&self) -> &[Vec<usize>] {
        &self.maximal
    }

    pub fn maximal_cones(&self) -> Vec<Cone> {
        self.maximal.iter().map(|c| Cone::new(c.clone())).collect()
    }

    pub fn cone_vectors(&self, c: &Cone) -> Vec<IntVector> {
        c.ray_ids().iter().map(|&i| self.rays[i].clone()).collect()
    }

    pub fn frame_vectors(&self, frame: &[usize]) -> Vec<IntVector> {
        frame.iter().map(|&i| self.rays[i].clone()).collect()
    }

    /// The cone spanned by the given ray vectors, if it belongs to the fan.
    pub fn cone_from_vectors(&self, vs: &[IntVector]) -> Option<Cone> {
        let ids: Option<Vec<usize>> = vs.iter().map(|v| self.ray_id(v)).collect();
        let c = Cone::new(ids?);
        (c.dim() == vs.len() && self.contains_cone(&c)).then_some(c)
    }

    pub fn contains_cone(&self, c: &Cone) -> bool {
        c.ray_ids().iter().all(|&i| i < self.rays.len())
            && self.maximal.iter().any(|m| c.ray_ids().iter().all(|i| m.contains(i)))
    }

    /// Every cone of the fan, including the zero cone.
    pub fn cones(&self) -> BTreeSet<Cone> {
        let mut out = BTreeSet::new();
        for m in &self.maximal {
            let set = Cone::new(m.clone());
            for k in 0..=set.dim() {
                for sub in set.ray_ids().iter().copied().combinations(k) {
                    out.insert(Cone(sub));
                }
            }
        }
        out
    }

    pub fn cones_of_dim(&self, k: usize) -> BTreeSet<Cone> {
        let mut out = BTreeSet::new();
        for m in &self.maximal {
            let set = Cone::new(m.clone());
            if set.dim() < k {
                continue;
            }
            for sub in set.ray_ids().iter().copied().combinations(k) {
                out.insert(Cone(sub));
            }
        }
        out
    }

    pub fn two_dim_cones(&self) -> BTreeSet<Cone> {
        self.cones_of_dim(2)
    }

    /// Maximal cones containing the given cone, as frames.
    pub fn frames_containing(&self, c: &Cone) -> Vec<&Vec<usize>> {
        self.maximal
            .iter()
            .filter(|m| c.ray_ids().iter().all(|i| m.contains(i)))
            .collect()
    }

    /// Number of cones of each dimension `0..=rank`.
    pub fn face_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.rank + 1];
        for c in self.cones() {
            counts[c.dim()] += 1;
        }
        counts
    }

    /// Every maximal cone spans a split direct summand.
    pub fn is_smooth(&self) -> bool {
        self.maximal.iter().all(|m| {
            Sublattice::new(self.rank, self.frame_vectors(m))
                .map(|l| l.is_split_summand())
                .unwrap_or(false)
        })
    }

    pub fn is_pure_full_dimensional(&self) -> bool {
        self.maximal.iter().all(|m| m.len() == self.rank)
    }

    /// Wall-pairing plus connectivity of the wall-adjacency graph; valid
    /// for pure, full-dimensional simplicial fans.
    pub fn is_complete(&self) -> Result<bool, FanError> {
        if let Some(m) = self.maximal.iter().find(|m| m.len() != self.rank) {
            return Err(FanError::MixedDimension(self.frame_vectors(m)));
        }
        if self.rank == 0 {
            return Ok(true);
        }
        let mut walls: BTreeMap<Cone, Vec<usize>> = BTreeMap::new();
        for (idx, m) in self.maximal.iter().enumerate() {
            let set = Cone::new(m.clone());
            for w in set.ray_ids().iter().copied().combinations(self.rank - 1) {
                walls.entry(Cone(w)).or_default().push(idx);
            }
        }
        if walls.values().any(|owners| owners.len() != 2) {
            return Ok(false);
        }
        let mut parent: Vec<usize> = (0..self.maximal.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for owners in walls.values() {
            let a = find(&mut parent, owners[0]);
            let b = find(&mut parent, owners[1]);
            parent[a] = b;
        }
        let root = find(&mut parent, 0);
        Ok((0..self.maximal.len()).all(|i| find(&mut parent, i) == root))
    }

    /// Checks that any two maximal cones meet in a common face.
    pub fn check_intersections(&self) -> Result<(), FanError> {
        let cones = self.maximal_cones();
        let duals: Vec<Option<Vec<IntVector>>> = self.maximal.iter().map(|m| self.dual_rows(m)).collect();
        for (i, a) in cones.iter().enumerate() {
            for (j, b) in cones.iter().enumerate().skip(i + 1) {
                if self.separated(&self.maximal[i], &duals[i], b, a)
                    || self.separated(&self.maximal[j], &duals[j], a, b)
                {
                    continue;
                }
                if !self.meet_in_common_face(a, b) {
                    return Err(FanError::BadIntersection(self.cone_vectors(a), self.cone_vectors(b)));
                }
            }
        }
        Ok(())
    }

    /// Rows `L·uᵢ` with `uᵢ·rⱼ = δᵢⱼ` for a full-dimensional frame, one
    /// positive `L` clearing all denominators.
    fn dual_rows(&self, frame: &[usize]) -> Option<Vec<IntVector>> {
        if frame.len() != self.rank {
            return None;
        }
        let rays = self.frame_vectors(frame);
        let mut rows = vec![vec![Rational::zero(); self.rank]; self.rank];
        for k in 0..self.rank {
            let c = rational::solve_combination(&rays, &IntVector::unit(self.rank, k))?;
            for (i, x) in c.into_iter().enumerate() {
                rows[i][k] = x;
            }
        }
        let l = rows
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, x| num_integer::lcm(acc, x.denom().clone()));
        let l = Rational::from_integer(l);
        Some(
            rows.into_iter()
                .map(|r| IntVector::new(r.into_iter().map(|x| (x * &l).to_integer()).collect()))
                .collect(),
        )
    }

    /// Looks for `h ≥ 0` on the frame's cone, zero on the common face and
    /// negative on the other rays of `other`; then `a ∩ b ⊆ b ∩ ker h` is the
    /// common face. Candidates are the dual rows of rays outside `other` and
    /// their sum.
    fn separated(&self, frame: &[usize], dual: &Option<Vec<IntVector>>, other: &Cone, own: &Cone) -> bool {
        let Some(dual) = dual else {
            return false;
        };
        let common = own.intersection(other);
        let rest: Vec<&IntVector> = other
            .ray_ids()
            .iter()
            .filter(|id| !common.contains_ray(**id))
            .map(|&id| self.ray(id))
            .collect();
        let outside: Vec<&IntVector> = frame
            .iter()
            .zip(dual)
            .filter(|(id, _)| !common.contains_ray(**id))
            .map(|(_, u)| u)
            .collect();
        let works = |h: &IntVector| rest.iter().all(|v| h.dot(v).expect("same rank") < BigInt::zero());
        let sum = outside
            .iter()
            .fold(IntVector::zeros(self.rank), |acc, u| &acc + *u);
        works(&sum) || outside.iter().any(|u| works(u))
    }

    fn meet_in_common_face(&self, a: &Cone, b: &Cone) -> bool {
        let common = a.intersection(b);
        let mut all = self.cone_vectors(&a.union(b));
        if rational::rank_of(&all) == all.len() {
            return true;
        }
        // maximize the weight outside the common face over
        // { Aλ = Bμ, λ, μ ≥ 0, Σλ + Σμ = 1 }
        let av = self.cone_vectors(a);
        let bv = self.cone_vectors(b);
        let nv = av.len() + bv.len();
        let mut rows: Vec<Vec<Rational>> = (0..self.rank)
            .map(|k| {
                av.iter()
                    .map(|v| rational::q(&v[k]))
                    .chain(bv.iter().map(|v| -rational::q(&v[k])))
                    .collect()
            })
            .collect();
        rows.push(vec![Rational::one(); nv]);
        let mut rhs = vec![Rational::zero(); self.rank];
        rhs.push(Rational::one());
        let objective: Vec<Rational> = a
            .ray_ids()
            .iter()
            .chain(b.ray_ids())
            .map(|i| if common.contains_ray(*i) { Rational::zero() } else { Rational::one() })
            .collect();
        all.clear();
        match lp::maximize(&objective, &rows, &rhs) {
            LpOutcome::Optimal { value, .. } => value.is_zero(),
            LpOutcome::Infeasible => true,
            LpOutcome::Unbounded => unreachable!("bounded by normalization"),
        }
    }

    /// Indices of the maximal cones containing the point.
    pub fn locate(&self, p: &IntVector) -> Vec<usize> {
        self.maximal
            .iter()
            .enumerate()
            .filter(|(_, m)| in_simplicial_cone(&self.frame_vectors(m), p).is_some())
            .map(|(i, _)| i)
            .collect()
    }

    /// Replaces every cone containing the two-dimensional cone `σ = C(e¹,e²)`
    /// by `C(e¹, e¹+e², w…)` and `C(e¹+e², e², w…)`.
    pub fn stellar_subdivide_2cone(&self, sigma: &Cone) -> Result<Fan, FanError> {
        if sigma.dim() != 2 || !self.contains_cone(sigma) {
            return Err(FanError::NotATwoFace(
                sigma
                    .ray_ids()
                    .iter()
                    .filter(|&&i| i < self.rays.len())
                    .map(|&i| self.rays[i].clone())
                    .collect(),
            ));
        }
        let (a, b) = (sigma.ray_ids()[0], sigma.ray_ids()[1]);
        let new_ray = &self.rays[a] + &self.rays[b];
        assert_eq!(new_ray.is_primitive(), Ok(true), "sum of a 2-face's rays must be primitive");
        let mut rays = self.rays.clone();
        let mut lookup = self.lookup.clone();
        let new_id = rays.len();
        assert!(!lookup.contains_key(&new_ray), "new ray already present");
        rays.push(new_ray.clone());
        lookup.insert(new_ray, new_id);
        let mut maximal = Vec::with_capacity(self.maximal.len() + 2);
        for m in &self.maximal {
            let pa = m.iter().position(|&i| i == a);
            let pb = m.iter().position(|&i| i == b);
            match (pa, pb) {
                (Some(pa), Some(pb)) => {
                    let mut first = m.clone();
                    first[pb] = new_id;
                    let mut second = m.clone();
                    second[pa] = new_id;
                    maximal.push(first);
                    maximal.push(second);
                }
                _ => maximal.push(m.clone()),
            }
        }
        Ok(Fan {
            rank: self.rank,
            rays,
            maximal,
            lookup,
        })
    }

    /// The fan of the orbit closure `V(C)`, living in `ℤⁿ / (ℤⁿ ∩ span C)`.
    pub fn orbit_closure_fan(&self, c: &Cone) -> Result<Fan, FanError> {
        if !self.contains_cone(c) {
            return Err(FanError::ConeNotInFan(
                c.ray_ids()
                    .iter()
                    .filter(|&&i| i < self.rays.len())
                    .map(|&i| self.rays[i].clone())
                    .collect(),
            ));
        }
        let k = c.dim();
        let span = Sublattice::new(self.rank, self.cone_vectors(c))?.saturate();
        let basis = span.complete_to_basis()?.row_vectors();
        let project = |v: &IntVector| -> IntVector {
            let coords = rational::integer_combination(&basis, v).expect("unimodular basis");
            IntVector::new(coords[k..].to_vec())
        };
        let mut rays: Vec<IntVector> = Vec::new();
        let mut cones: Vec<Vec<usize>> = Vec::new();
        for m in self.frames_containing(c) {
            let mut frame = Vec::new();
            for &i in m {
                if c.contains_ray(i) {
                    continue;
                }
                let img = project(&self.rays[i]).primitive_part();
                let id = match rays.iter().position(|r| *r == img) {
                    Some(id) => id,
                    None => {
                        rays.push(img);
                        rays.len() - 1
                    }
                };
                frame.push(id);
            }
            cones.push(frame);
        }
        Fan::new(self.rank - k, rays, cones)
    }

    /// Same fan with rays sorted lexicographically and cones renumbered;
    /// frames keep their internal order, cones are sorted by ray set.
    pub fn canonical(&self) -> Fan {
        let order: Vec<usize> = (0..self.rays.len()).sorted_by(|&i, &j| self.rays[i].cmp(&self.rays[j])).collect();
        let mut remap = vec![0; self.rays.len()];
        for (new, &old) in order.iter().enumerate() {
            remap[old] = new;
        }
        let rays: Vec<IntVector> = order.iter().map(|&i| self.rays[i].clone()).collect();
        let maximal: Vec<Vec<usize>> = self
            .maximal
            .iter()
            .map(|m| m.iter().map(|&i| remap[i]).collect::<Vec<_>>())
            .sorted_by_key(|m| Cone::new(m.clone()))
            .collect();
        let lookup = rays.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        Fan {
            rank: self.rank,
            rays,
            maximal,
            lookup,
        }
    }

    /// Applies `v ↦ M·v` (as a column vector) to every ray; `M` must be
    /// unimodular for the result to be a smooth fan again.
    pub fn transformed(&self, m: &crate::lattice::IntMatrix) -> Result<Fan, FanError> {
        let rays = self.rays.iter().map(|r| m.mul_vector(r)).collect::<Result<Vec<_>, _>>()?;
        Fan::new(m.nrows(), rays, self.maximal.clone())
    }

    /// The product with the orthant fan of rank `extra`, appended as
    /// trailing coordinates.
    pub fn product_with_orthant(&self, extra: usize) -> Fan {
        let n = self.rank + extra;
        let mut rays: Vec<IntVector> = self.rays.iter().map(|r| r.padded(n)).collect();
        let base = rays.len();
        for i in 0..extra {
            rays.push(IntVector::unit(n, self.rank + i));
        }
        for i in 0..extra {
            rays.push(-IntVector::unit(n, self.rank + i));
        }
        let mut cones = Vec::new();
        for m in &self.maximal {
            for signs in 0..(1usize << extra) {
                let mut frame = m.clone();
                for i in 0..extra {
                    let neg = signs >> i & 1 == 1;
                    frame.push(base + i + if neg { extra } else { 0 });
                }
                cones.push(frame);
            }
        }
        Fan::new(n, rays, cones).expect("product of fans is a fan")
    }

    /// Checks that `self` refines `coarse`: every maximal cone lies in a
    /// cone of `coarse` (exact), and sampled points of every maximal cone of
    /// `coarse` are covered by `self`.
    pub fn is_subdivision_of<R: Rng>(&self, coarse: &Fan, rng: &mut R, samples: usize) -> bool {
        if self.rank != coarse.rank {
            return false;
        }
        let coarse_frames: Vec<Vec<IntVector>> = coarse.maximal.iter().map(|m| coarse.frame_vectors(m)).collect();
        let inside = self.maximal.iter().all(|m| {
            let vs = self.frame_vectors(m);
            coarse_frames
                .iter()
                .any(|cf| vs.iter().all(|v| in_simplicial_cone(cf, v).is_some()))
        });
        if !inside {
            return false;
        }
        if matches!((self.is_complete(), coarse.is_complete()), (Ok(true), Ok(true))) {
            return true;
        }
        coarse_frames.iter().all(|cf| {
            (0..samples).all(|_| {
                let p = random_point_in_cone(cf, self.rank, rng);
                !self.locate(&p).is_empty()
            })
        })
    }
}

/// A lattice point `Σ wᵢ·rᵢ` with random weights `wᵢ ∈ [1, 1000]`, so it lies
/// in the relative interior of the cone.
pub fn random_point_in_cone<R: Rng>(rays: &[IntVector], rank: usize, rng: &mut R) -> IntVector {
    let mut p = IntVector::zeros(rank);
    for r in rays {
        let w = BigInt::from(rng.gen_range(1..=1000i64));
        p = &p + &r.scaled(&w);
    }
    p
}

/// Rays `±eᵢ` and all `2ⁿ` sign orthants.
pub fn make_orthant_fan(n: usize) -> Fan {
    let mut rays: Vec<IntVector> = (0..n).map(|i| IntVector::unit(n, i)).collect();
    rays.extend((0..n).map(|i| -IntVector::unit(n, i)));
    let cones = (0..(1usize << n))
        .map(|signs| (0..n).map(|i| if signs >> i & 1 == 1 { n + i } else { i }).collect())
        .collect();
    Fan::new(n, rays, cones).expect("orthant fan is valid")
}

/// The positive orthant `C(e₁,…,eₙ)` and its faces.
pub fn make_positive_orthant(n: usize) -> Fan {
    Fan::single_cone(n, (0..n).map(|i| IntVector::unit(n, i)).collect()).expect("valid cone")
}

/// Weyl chambers of type `Aₙ` in the cocharacter space of the adjoint
/// torus, in the basis dual to the simple roots.
///
/// Rays are the images of fundamental coweights, one for each nonempty
/// proper subset `S ⊂ {1,…,n+1}`; the coordinates of the ray for `S` are
/// `1_S(j) − 1_S(j+1)`. The chamber of a permutation `w` is spanned by the
/// rays of the prefixes `{w(1)}, {w(1),w(2)}, …`.
pub fn make_weyl_fan_a(n: usize) -> Fan {
    assert!(n >= 1, "type A needs rank at least 1");
    let m = n + 1;
    let ray_of = |mask: usize| -> IntVector {
        IntVector::new(
            (0..n)
                .map(|j| BigInt::from((mask >> j & 1) as i64 - (mask >> (j + 1) & 1) as i64))
                .collect(),
        )
    };
    let masks: Vec<usize> = (1..(1usize << m) - 1).collect();
    let rays: Vec<IntVector> = masks.iter().map(|&s| ray_of(s)).collect();
    let cones = (0..m)
        .permutations(m)
        .map(|w| {
            let mut mask = 0usize;
            w[..n]
                .iter()
                .map(|&i| {
                    mask |= 1 << i;
                    mask - 1
                })
                .collect()
        })
        .collect();
    Fan::new(n, rays, cones).expect("Weyl fan is valid")
}
