//! Layer closures in a toric variety and the poset of strata they cut out
//! together with the torus-orbit closures.
//!
//! A stratum is a pair `(L, C)` of an `𝒜`-layer and a cone `C ⊆ V_H` of the
//! fan: the closure of `L` met with the orbit closure `V(C)`. Its dimension
//! is `n − rank Γ − dim C`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::arrangement::{all_a_layers, intersect_layers, Arrangement, Layer, TorusValue};
use crate::fan::{Cone, Fan, FanError};
use crate::lattice::rational::{integer_combination, q, rank_of, Rational};
use crate::lattice::{pairing, IntMatrix, IntVector, Sublattice};
use crate::lp::{self, LpOutcome};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrataError {
    #[error("layer {layer} lacks property (E) on the cone spanned by {cone:?}")]
    PropertyEViolated { layer: String, cone: Vec<IntVector> },
    #[error("layer and fan have different ranks")]
    RankMismatch,
    #[error(transparent)]
    Fan(#[from] FanError),
}

/// Basis (as rows) of `X_*(H) = { v : ⟨χ,v⟩ = 0 for χ ∈ Γ }`.
pub fn subtorus_space_basis(gamma: &Sublattice) -> IntMatrix {
    let ann = gamma.annihilator();
    IntMatrix::from_rows(gamma.ambient(), ann.basis()).expect("rows have the ambient length")
}

fn pairing_matrix(gamma: &Sublattice, rays: &[IntVector]) -> Vec<Vec<Rational>> {
    gamma
        .basis()
        .iter()
        .map(|chi| rays.iter().map(|e| q(&pairing(chi, e).expect("same rank"))).collect())
        .collect()
}

/// Does `Γ⊗ℝ` have a basis pairing nonnegatively with every ray?
///
/// Fast path: every basis character is sign-coherent on the rays. Otherwise
/// the cone `S = { x : Σ xᵢ⟨χᵢ,e_j⟩ ≥ 0 }` is tested for full dimension by
/// finding its implicit equalities with one LP.
pub fn has_property_e(gamma: &Sublattice, rays: &[IntVector]) -> bool {
    let p = pairing_matrix(gamma, rays);
    let coherent = p.iter().all(|row| {
        let pos = row.iter().any(|x| *x > Rational::zero());
        let neg = row.iter().any(|x| *x < Rational::zero());
        !(pos && neg)
    });
    if coherent {
        return true;
    }
    property_e_exact(&p)
}

/// The LP-only decision, exposed for testing against the fast path.
pub fn property_e_exact(p: &[Vec<Rational>]) -> bool {
    let r = p.len();
    let k = p.first().map_or(0, |row| row.len());
    if r == 0 || k == 0 {
        return true;
    }
    // variables: x⁺ (r), x⁻ (r), t (k), s (k), w (k)
    let nv = 2 * r + 3 * k;
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for j in 0..k {
        let mut row = vec![Rational::zero(); nv];
        for i in 0..r {
            row[i] = p[i][j].clone();
            row[r + i] = -p[i][j].clone();
        }
        row[2 * r + j] = -Rational::one();
        row[2 * r + k + j] = -Rational::one();
        rows.push(row);
        rhs.push(Rational::zero());
        let mut cap = vec![Rational::zero(); nv];
        cap[2 * r + j] = Rational::one();
        cap[2 * r + 2 * k + j] = Rational::one();
        rows.push(cap);
        rhs.push(Rational::one());
    }
    let mut c = vec![Rational::zero(); nv];
    for j in 0..k {
        c[2 * r + j] = Rational::one();
    }
    let LpOutcome::Optimal { x, .. } = lp::maximize(&c, &rows, &rhs) else {
        unreachable!("the origin is feasible and t ≤ 1");
    };
    (0..k).all(|j| !x[2 * r + j].is_zero() || (0..r).all(|i| p[i][j].is_zero()))
}

fn in_vh(gamma: &Sublattice, v: &IntVector) -> bool {
    gamma.basis().iter().all(|chi| pairing(chi, v).expect("same rank").is_zero())
}

/// Does the orbit of `C` meet the closure of the layer? True iff `C ⊆ V_H`.
pub fn orbit_meets_layer(f: &Fan, c: &Cone, layer: &Layer) -> bool {
    c.ray_ids().iter().all(|&i| in_vh(layer.gamma(), f.ray(i)))
}

/// First maximal cone on which the layer fails property (E).
pub fn property_e_witness(f: &Fan, layer: &Layer) -> Option<Cone> {
    f.maximal_cones()
        .into_iter()
        .find(|c| !has_property_e(layer.gamma(), &f.cone_vectors(c)))
}

fn check_property_e(f: &Fan, layer: &Layer) -> Result<(), StrataError> {
    if f.rank() != layer.rank() {
        return Err(StrataError::RankMismatch);
    }
    match property_e_witness(f, layer) {
        None => Ok(()),
        Some(c) => Err(StrataError::PropertyEViolated {
            layer: layer.to_string(),
            cone: f.cone_vectors(&c),
        }),
    }
}

/// All cones of `f` lying in `V_H`, i.e. the cones of `Δ_H` as cones of `f`.
pub fn closure_cones(f: &Fan, layer: &Layer) -> Result<BTreeSet<Cone>, StrataError> {
    check_property_e(f, layer)?;
    let mut out = BTreeSet::new();
    for m in f.maximal_cones() {
        let face: Vec<usize> = m
            .ray_ids()
            .iter()
            .copied()
            .filter(|&i| in_vh(layer.gamma(), f.ray(i)))
            .collect();
        for k in 0..=face.len() {
            for sub in itertools::Itertools::combinations(face.iter().copied(), k) {
                out.insert(Cone::new(sub));
            }
        }
    }
    Ok(out)
}

/// `Δ_H` in the coordinates of [`subtorus_space_basis`].
pub fn closure_fan(f: &Fan, layer: &Layer) -> Result<Fan, StrataError> {
    let cones = closure_cones(f, layer)?;
    let basis = subtorus_space_basis(layer.gamma()).row_vectors();
    let dim = basis.len();
    let mut rays: Vec<IntVector> = Vec::new();
    let mut ids: BTreeMap<usize, usize> = BTreeMap::new();
    let mut out = Vec::new();
    for c in &cones {
        let mut frame = Vec::new();
        for &i in c.ray_ids() {
            let id = *ids.entry(i).or_insert_with(|| {
                let coords = integer_combination(&basis, f.ray(i)).expect("ray lies in the saturated V_H");
                rays.push(IntVector::new(coords));
                rays.len() - 1
            });
            frame.push(id);
        }
        out.push(frame);
    }
    Ok(Fan::new(dim, rays, out)?)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Stratum {
    /// Index into [`StrataPoset::layers`].
    pub layer: usize,
    pub cone: Cone,
}

/// The strata of the compactified arrangement, ordered by inclusion.
#[derive(Clone, Debug)]
pub struct StrataPoset {
    fan: Fan,
    layers: Vec<Layer>,
    layer_meet: Vec<Vec<Vec<usize>>>,
    layer_leq: Vec<Vec<bool>>,
    strata: Vec<Stratum>,
    index: BTreeMap<Stratum, usize>,
}

/// Builds the poset. Every `𝒜`-layer must have property (E) on `f`.
pub fn build_strata_poset(f: &Fan, a: &Arrangement) -> Result<StrataPoset, StrataError> {
    if f.rank() != a.rank() {
        return Err(StrataError::RankMismatch);
    }
    let layers = all_a_layers(a);
    let pos: BTreeMap<Layer, usize> = layers.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
    let nl = layers.len();
    let mut layer_meet = vec![vec![Vec::new(); nl]; nl];
    let mut layer_leq = vec![vec![false; nl]; nl];
    for i in 0..nl {
        for j in i..nl {
            let comps: Vec<usize> = intersect_layers(&layers[i], &layers[j])
                .expect("layers of one arrangement")
                .iter()
                .map(|c| pos[c])
                .collect();
            layer_meet[i][j] = comps.clone();
            layer_meet[j][i] = comps;
            layer_leq[i][j] = layers[i].is_contained_in(&layers[j]);
            layer_leq[j][i] = layers[j].is_contained_in(&layers[i]);
        }
    }
    let mut strata = Vec::new();
    for (li, l) in layers.iter().enumerate() {
        for c in closure_cones(f, l)? {
            strata.push(Stratum { layer: li, cone: c });
        }
    }
    let n = f.rank();
    let dim = |s: &Stratum| n - layers[s.layer].codim() - s.cone.dim();
    strata.sort_by(|x, y| dim(y).cmp(&dim(x)).then_with(|| x.cmp(y)));
    let index = strata.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    Ok(StrataPoset {
        fan: f.clone(),
        layers,
        layer_meet,
        layer_leq,
        strata,
        index,
    })
}

impl StrataPoset {
    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn rank(&self) -> usize {
        self.fan.rank()
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn len(&self) -> usize {
        self.strata.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strata.is_empty()
    }

    pub fn strata(&self) -> &[Stratum] {
        &self.strata
    }

    pub fn stratum(&self, i: usize) -> &Stratum {
        &self.strata[i]
    }

    pub fn layer_of(&self, i: usize) -> &Layer {
        &self.layers[self.strata[i].layer]
    }

    pub fn find(&self, s: &Stratum) -> Option<usize> {
        self.index.get(s).copied()
    }

    /// Index of the whole variety.
    pub fn top(&self) -> usize {
        0
    }

    pub fn dim(&self, i: usize) -> usize {
        let s = &self.strata[i];
        self.rank() - self.layers[s.layer].codim() - s.cone.dim()
    }

    pub fn codim(&self, i: usize) -> usize {
        self.rank() - self.dim(i)
    }

    /// `Sᵢ ⊆ Sⱼ`.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        let (a, b) = (&self.strata[i], &self.strata[j]);
        self.layer_leq[a.layer][b.layer] && b.cone.is_face_of(&a.cone)
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    /// Components of `Sᵢ ∩ Sⱼ`, as strata indices.
    pub fn intersect(&self, i: usize, j: usize) -> Vec<usize> {
        let (a, b) = (&self.strata[i], &self.strata[j]);
        let cone = a.cone.union(&b.cone);
        // (m, C) is a stratum exactly when C is a cone of the fan inside V_H
        let mut out: Vec<usize> = self.layer_meet[a.layer][b.layer]
            .iter()
            .filter_map(|&m| {
                self.index
                    .get(&Stratum {
                        layer: m,
                        cone: cone.clone(),
                    })
                    .copied()
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Components of the intersection of all listed strata; the whole
    /// variety for an empty list.
    pub fn intersect_all(&self, items: &[usize]) -> Vec<usize> {
        let mut current: BTreeSet<usize> = [self.top()].into();
        for &x in items {
            let mut next = BTreeSet::new();
            for &c in &current {
                next.extend(self.intersect(c, x));
            }
            current = next;
            if current.is_empty() {
                break;
            }
        }
        current.into_iter().collect()
    }

    /// Dimension count shadow of clean intersection: every component has
    /// dimension `n − rank(Γ₁+Γ₂) − dim(C₁∪C₂)`.
    pub fn check_clean(&self, i: usize, j: usize) -> bool {
        let (a, b) = (&self.strata[i], &self.strata[j]);
        let chars: Vec<IntVector> = self.layers[a.layer]
            .characters()
            .iter()
            .chain(self.layers[b.layer].characters())
            .cloned()
            .collect();
        let rank = rank_of(&chars);
        let cone_dim = a.cone.union(&b.cone).dim();
        self.intersect(i, j)
            .into_iter()
            .all(|k| self.rank() >= rank + cone_dim && self.dim(k) == self.rank() - rank - cone_dim)
    }

    /// Pairs `(i, j)` with `Sᵢ` covered by `Sⱼ`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.lt(i, j) && !(0..n).any(|k| self.lt(i, k) && self.lt(k, j)) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn label(&self, i: usize) -> String {
        let s = &self.strata[i];
        let rays: Vec<String> = self.fan.cone_vectors(&s.cone).iter().map(|r| r.to_string()).collect();
        format!("{} ∩ V[{}]", self.layers[s.layer], rays.join(" "))
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Entry {
            id: usize,
            dim: usize,
            gamma: Vec<IntVector>,
            values: Vec<TorusValue>,
            cone: Vec<IntVector>,
        }
        let strata: Vec<Entry> = (0..self.len())
            .map(|i| Entry {
                id: i,
                dim: self.dim(i),
                gamma: self.layer_of(i).characters().to_vec(),
                values: self.layer_of(i).values().to_vec(),
                cone: self.fan.cone_vectors(&self.strata[i].cone),
            })
            .collect();
        serde_json::json!({
            "rank": self.rank(),
            "strata": strata,
            "covers": self.covers(),
        })
    }

    /// Hasse diagram, larger strata on top.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph strata {\n  rankdir=BT;\n");
        for i in 0..self.len() {
            let _ = writeln!(s, "  s{} [label=\"{} (dim {})\"];", i, self.label(i).replace('"', "'"), self.dim(i));
        }
        for (i, j) in self.covers() {
            let _ = writeln!(s, "  s{i} -> s{j};");
        }
        s.push_str("}\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::TorusValue;
    use crate::fan::{make_orthant_fan, make_positive_orthant};
    use crate::ivec;
    use crate::arrangement::xi_of;
    use crate::subdiv::resolve_all;

    fn gamma(chars: &[IntVector]) -> Sublattice {
        Sublattice::new(chars[0].len(), chars.to_vec()).unwrap()
    }

    fn eight_ray_fan() -> Fan {
        let rays = vec![
            ivec![1, 0],
            ivec![2, -1],
            ivec![1, -1],
            ivec![0, -1],
            ivec![-1, 0],
            ivec![-2, 1],
            ivec![-1, 1],
            ivec![0, 1],
        ];
        Fan::new(2, rays, (0..8).map(|i| vec![i, (i + 1) % 8]).collect()).unwrap()
    }

    fn divisor(chi: IntVector) -> Layer {
        Layer::new(chi.len(), 0, vec![chi], vec![TorusValue::identity(0)]).unwrap()
    }

    #[test]
    fn subtorus_spaces() {
        assert_eq!(subtorus_space_basis(&gamma(&[ivec![1, 0]])).row_vectors(), vec![ivec![0, 1]]);
        let b = subtorus_space_basis(&gamma(&[ivec![1, 2]])).row_vectors();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].sign_normalized(), ivec![2, -1]);
        assert_eq!(subtorus_space_basis(&Sublattice::full(3)).nrows(), 0);
    }

    #[test]
    fn property_e_examples() {
        let g = gamma(&[ivec![3, 0, -2]]);
        assert!(has_property_e(&g, &[ivec![1, 0, 0], ivec![0, 1, 0]]));
        assert!(!has_property_e(&g, &[ivec![1, 0, 0], ivec![0, 0, 1]]));
        assert!(has_property_e(&Sublattice::zero(3), &[ivec![1, 0, 0]]));
        // a rank-two Γ whose given basis is not coherent, but a better basis is
        let g = gamma(&[ivec![1, 0], ivec![1, 1]]);
        assert!(has_property_e(&g, &[ivec![1, -1], ivec![0, 1]]));
        // rank one in rank three: basis (1,-1,0) on a cone with (1,0,0),(0,1,0)
        let g = gamma(&[ivec![1, -1, 0]]);
        assert!(!has_property_e(&g, &[ivec![1, 0, 0], ivec![0, 1, 0]]));
        assert!(has_property_e(&g, &[ivec![1, 1, 0], ivec![0, 0, 1]]));
    }

    #[test]
    fn exact_matches_fast_path() {
        use proptest::prelude::*;
        use proptest::test_runner::TestRunner;
        let mut runner = TestRunner::default();
        runner
            .run(
                &(
                    proptest::collection::vec(-3i64..=3, 3),
                    proptest::collection::vec(proptest::collection::vec(-2i64..=2, 3), 1..=3),
                ),
                |(chi, rays)| {
                    let chi = IntVector::from_i64s(&chi);
                    let rays: Vec<IntVector> = rays.iter().map(|r| IntVector::from_i64s(r)).collect();
                    prop_assume!(!chi.is_zero());
                    let g = Sublattice::new(3, vec![chi.clone()]).unwrap();
                    let p = pairing_matrix(&g, &rays);
                    // rank one: property (E) is exactly sign coherence
                    let coherent = {
                        let vals: Vec<_> = rays.iter().map(|r| pairing(&chi, r).unwrap()).collect();
                        !(vals.iter().any(|v| *v > 0.into()) && vals.iter().any(|v| *v < 0.into()))
                    };
                    prop_assert_eq!(property_e_exact(&p), coherent);
                    Ok(())
                },
            )
            .unwrap();
    }

    #[test]
    fn closure_fans() {
        let q = make_orthant_fan(2);
        let f = closure_fan(&q, &divisor(ivec![1, 0])).unwrap();
        assert_eq!(f.rank(), 1);
        assert_eq!(f.rays().len(), 2);
        assert_eq!(f.is_complete(), Ok(true));

        let f4 = eight_ray_fan();
        let l = divisor(ivec![1, 2]);
        let f = closure_fan(&f4, &l).unwrap();
        assert_eq!(f.rays().len(), 2);
        assert_eq!(f.is_complete(), Ok(true));
        let cones = closure_cones(&f4, &l).unwrap();
        let rays: BTreeSet<IntVector> = cones.iter().flat_map(|c| f4.cone_vectors(c)).collect();
        assert_eq!(rays, [ivec![2, -1], ivec![-2, 1]].into());

        let point = Layer::new(2, 0, vec![ivec![1, 0], ivec![0, 1]], vec![TorusValue::identity(0); 2]).unwrap();
        let f = closure_fan(&q, &point).unwrap();
        assert_eq!(f.rank(), 0);
        assert_eq!(f.maximal_cones(), vec![Cone::zero()]);

        assert!(matches!(
            closure_fan(&q, &divisor(ivec![1, 2])),
            Err(StrataError::PropertyEViolated { .. })
        ));
    }

    #[test]
    fn incidences() {
        let f4 = eight_ray_fan();
        let l = divisor(ivec![1, 2]);
        assert!(orbit_meets_layer(&f4, &f4.cone_from_vectors(&[ivec![2, -1]]).unwrap(), &l));
        assert!(!orbit_meets_layer(&f4, &f4.cone_from_vectors(&[ivec![1, 0]]).unwrap(), &l));
        assert!(orbit_meets_layer(&f4, &Cone::zero(), &l));
    }

    #[test]
    fn small_posets() {
        let p1 = make_orthant_fan(1);
        let p = build_strata_poset(&p1, &Arrangement::empty(1)).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p.dim(p.top()), 1);

        let a = Arrangement::divisorial(1, &[ivec![1]]).unwrap();
        let p = build_strata_poset(&p1, &a).unwrap();
        assert_eq!(p.len(), 4);
        let point = (0..p.len()).find(|&i| !p.layer_of(i).is_top()).unwrap();
        assert_eq!(p.dim(point), 0);
        for i in 0..p.len() {
            if p.stratum(i).cone.dim() == 1 {
                assert!(p.intersect(point, i).is_empty());
            }
        }
    }

    #[test]
    fn diagonal_arrangement_poset() {
        let a = Arrangement::divisorial(2, &[ivec![1, 1], ivec![1, -1]]).unwrap();
        let (f, _) = resolve_all(&make_orthant_fan(2), &xi_of(&a)).unwrap();
        let p = build_strata_poset(&f, &a).unwrap();
        // toric strata: 1 + rays + 2-cones; each divisor closure: itself and two boundary points
        let rays = f.rays().len();
        assert_eq!(p.len(), 1 + rays + f.maximal_cones().len() + 2 * 3 + 2);
        for i in 0..p.len() {
            for j in 0..p.len() {
                assert!(p.check_clean(i, j));
                for k in p.intersect(i, j) {
                    assert!(p.leq(k, i) && p.leq(k, j));
                }
                if p.lt(i, j) {
                    assert!(p.dim(i) < p.dim(j));
                }
            }
        }
        assert!(p.to_dot().starts_with("digraph"));
        assert_eq!(p.to_json()["strata"].as_array().unwrap().len(), p.len());
    }

    #[test]
    fn octant_layers_are_clean() {
        let a = Arrangement::divisorial(3, &[ivec![3, 0, -2], ivec![2, 1, -1]]).unwrap();
        let oct = make_positive_orthant(3);
        assert!(build_strata_poset(&oct, &a).is_err());
        let (f, _) = resolve_all(&oct, &xi_of(&a)).unwrap();
        let p = build_strata_poset(&f, &a).unwrap();
        for i in 0..p.len() {
            for j in 0..p.len() {
                assert!(p.check_clean(i, j));
            }
        }
    }
}
