//! Layers and toric arrangements.
//!
//! Values of characters live in `(ℚ/ℤ) × ℚᵏ`, written additively: the
//! torsion part `a` stands for `e^{2πi·a}` and the generic part for
//! exponents on `k` multiplicatively independent parameters `t₁…t_k`.
//! A [`Layer`] is kept in canonical form: `Γ` in Hermite normal form and
//! the values transported to that basis, so equal layers compare equal.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::fan::{Fan, FanError};
use crate::lattice::rational::{q, Rational};
use crate::lattice::{smith_normal_form, IntMatrix, IntVector, LatticeError, Sublattice};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArrangementError {
    #[error("expected rank {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("expected {expected} parameters, found {found}")]
    ParameterMismatch { expected: usize, found: usize },
    #[error("{characters} characters but {values} values")]
    ValueCountMismatch { characters: usize, values: usize },
    #[error("gamma is not a split direct summand (index {0})")]
    NotSplitSummand(BigInt),
    #[error("layer equations have no solution")]
    Inconsistent,
    #[error("zero character carries no constraint")]
    ZeroCharacter,
    #[error("arrow {0} -> {0} is a self-loop")]
    SelfLoop(usize),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("bad rational {0:?}")]
    BadRational(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Fan(#[from] FanError),
}

/// An element of `(ℚ/ℤ) × ℚᵏ`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TorusValue {
    torsion: Rational,
    generic: Vec<Rational>,
}

fn frac(x: &Rational) -> Rational {
    x - x.floor()
}

impl TorusValue {
    pub fn new(torsion: Rational, generic: Vec<Rational>) -> Self {
        TorusValue {
            torsion: frac(&torsion),
            generic,
        }
    }

    pub fn identity(k: usize) -> Self {
        TorusValue::new(Rational::zero(), vec![Rational::zero(); k])
    }

    /// The root of unity `e^{2πi·p/q}`.
    pub fn root_of_unity(p: i64, qd: i64, k: usize) -> Self {
        TorusValue::new(Rational::new(p.into(), qd.into()), vec![Rational::zero(); k])
    }

    pub fn torsion(&self) -> &Rational {
        &self.torsion
    }

    pub fn generic(&self) -> &[Rational] {
        &self.generic
    }

    pub fn parameters(&self) -> usize {
        self.generic.len()
    }

    pub fn is_identity(&self) -> bool {
        self.torsion.is_zero() && self.generic.iter().all(Zero::is_zero)
    }

    fn add(&self, other: &TorusValue) -> TorusValue {
        debug_assert_eq!(self.generic.len(), other.generic.len());
        TorusValue::new(
            &self.torsion + &other.torsion,
            self.generic.iter().zip(&other.generic).map(|(a, b)| a + b).collect(),
        )
    }

    fn scale(&self, r: &Rational) -> TorusValue {
        TorusValue::new(&self.torsion * r, self.generic.iter().map(|a| a * r).collect())
    }

    fn times(&self, k: &BigInt) -> TorusValue {
        self.scale(&q(k))
    }

    pub fn inverse(&self) -> TorusValue {
        self.scale(&-Rational::one())
    }

    /// Order of the torsion part.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.denom().clone()
    }
}

impl fmt::Display for TorusValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e(2πi·{})", self.torsion)?;
        for (i, g) in self.generic.iter().enumerate() {
            if !g.is_zero() {
                write!(f, "·t{}^{}", i + 1, g)?;
            }
        }
        Ok(())
    }
}

fn check_params(u: &TorusValue, v: &TorusValue) -> Result<(), ArrangementError> {
    if u.parameters() != v.parameters() {
        return Err(ArrangementError::ParameterMismatch {
            expected: u.parameters(),
            found: v.parameters(),
        });
    }
    Ok(())
}

pub fn value_eq(u: &TorusValue, v: &TorusValue) -> Result<bool, ArrangementError> {
    check_params(u, v)?;
    Ok(u == v)
}

pub fn value_mul(u: &TorusValue, v: &TorusValue) -> Result<TorusValue, ArrangementError> {
    check_params(u, v)?;
    Ok(u.add(v))
}

/// `v^r` on the principal branch: torsion and exponents are multiplied by `r`.
pub fn value_pow(v: &TorusValue, r: &Rational) -> TorusValue {
    v.scale(r)
}

fn parse_rational(s: &str) -> Result<Rational, ArrangementError> {
    let t = s.trim().replace('−', "-");
    t.parse::<Rational>().map_err(|_| ArrangementError::BadRational(s.to_string()))
}

fn rational_to_string(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RationalRepr {
    Int(i64),
    Str(String),
}

mod rational_serde {
    use super::*;

    pub fn to_repr(r: &Rational) -> RationalRepr {
        RationalRepr::Str(rational_to_string(r))
    }

    pub fn from_repr(r: RationalRepr) -> Result<Rational, ArrangementError> {
        match r {
            RationalRepr::Int(i) => Ok(Rational::from_integer(i.into())),
            RationalRepr::Str(s) => parse_rational(&s),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct TorusValueFile {
    #[serde(default = "zero_repr")]
    torsion: RationalRepr,
    #[serde(default)]
    generic: Vec<RationalRepr>,
}

fn zero_repr() -> RationalRepr {
    RationalRepr::Int(0)
}

impl Serialize for TorusValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        TorusValueFile {
            torsion: rational_serde::to_repr(&self.torsion),
            generic: self.generic.iter().map(rational_serde::to_repr).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TorusValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let f = TorusValueFile::deserialize(d)?;
        let torsion = rational_serde::from_repr(f.torsion).map_err(serde::de::Error::custom)?;
        let generic = f
            .generic
            .into_iter()
            .map(rational_serde::from_repr)
            .collect::<Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        Ok(TorusValue::new(torsion, generic))
    }
}

/// `𝒦_{Γ,φ} = { t ∈ T : χ(t) = φ(χ) for all χ ∈ Γ }` with `Γ` a split summand.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Layer {
    gamma: Sublattice,
    values: Vec<TorusValue>,
    parameters: usize,
}

impl Layer {
    /// Checks that `Γ` is a split summand and canonicalizes.
    pub fn new(rank: usize, parameters: usize, basis: Vec<IntVector>, values: Vec<TorusValue>) -> Result<Layer, ArrangementError> {
        check_layer_input(rank, parameters, &basis, &values)?;
        let gamma = Sublattice::new(rank, basis)?;
        let index = gamma.index_in_saturation();
        if !index.is_one() {
            return Err(ArrangementError::NotSplitSummand(index));
        }
        Ok(Layer::canonical(gamma, values, parameters))
    }

    /// The whole torus.
    pub fn top(rank: usize, parameters: usize) -> Layer {
        Layer {
            gamma: Sublattice::zero(rank),
            values: Vec::new(),
            parameters,
        }
    }

    fn canonical(gamma: Sublattice, values: Vec<TorusValue>, parameters: usize) -> Layer {
        let (h, t) = gamma.hermite();
        let values = (0..t.nrows())
            .map(|i| {
                values
                    .iter()
                    .enumerate()
                    .fold(TorusValue::identity(parameters), |acc, (j, v)| acc.add(&v.times(t.get(i, j))))
            })
            .collect();
        Layer {
            gamma: h,
            values,
            parameters,
        }
    }

    /// Connected components of `{ χ(t) = φ(χ) }` for arbitrary generators
    /// (possibly dependent, possibly not saturated).
    pub fn components(
        rank: usize,
        parameters: usize,
        generators: &[IntVector],
        values: &[TorusValue],
    ) -> Result<Vec<Layer>, ArrangementError> {
        check_layer_input(rank, parameters, generators, values)?;
        if generators.is_empty() {
            return Ok(vec![Layer::top(rank, parameters)]);
        }
        let g = IntMatrix::from_rows(rank, generators)?;
        let s = smith_normal_form(&g);
        let d = s.invariant_factors();
        let r = d.len();
        // ψᵢ = value of row i of U·G
        let psi: Vec<TorusValue> = (0..generators.len())
            .map(|i| {
                values
                    .iter()
                    .enumerate()
                    .fold(TorusValue::identity(parameters), |acc, (j, v)| acc.add(&v.times(s.u.get(i, j))))
            })
            .collect();
        if psi[r..].iter().any(|p| !p.is_identity()) {
            return Ok(Vec::new());
        }
        let basis: Vec<IntVector> = (0..r).map(|i| s.v_inverse().row(i)).collect();
        let gamma = Sublattice::new(rank, basis)?;
        let counts: Vec<u64> = d
            .iter()
            .map(|x| x.to_u64().expect("component count fits in u64"))
            .collect();
        let mut out = Vec::new();
        let mut twist = vec![0u64; r];
        loop {
            let vals: Vec<TorusValue> = (0..r)
                .map(|i| {
                    let di = q(&d[i]);
                    TorusValue::new(
                        (&psi[i].torsion + Rational::from_integer(twist[i].into())) / &di,
                        psi[i].generic.iter().map(|x| x / &di).collect(),
                    )
                })
                .collect();
            out.push(Layer::canonical(gamma.clone(), vals, parameters));
            // odometer over Π [0, dᵢ)
            let mut i = 0;
            while i < r {
                twist[i] += 1;
                if twist[i] < counts[i] {
                    break;
                }
                twist[i] = 0;
                i += 1;
            }
            if i == r {
                break;
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        self.gamma.ambient()
    }

    pub fn parameters(&self) -> usize {
        self.parameters
    }

    pub fn gamma(&self) -> &Sublattice {
        &self.gamma
    }

    /// Canonical basis characters of `Γ`.
    pub fn characters(&self) -> &[IntVector] {
        self.gamma.basis()
    }

    pub fn values(&self) -> &[TorusValue] {
        &self.values
    }

    pub fn codim(&self) -> usize {
        self.gamma.rank()
    }

    pub fn dim(&self) -> usize {
        self.rank() - self.codim()
    }

    pub fn is_top(&self) -> bool {
        self.gamma.rank() == 0
    }

    /// `φ(χ)` for `χ ∈ Γ`.
    pub fn value_of(&self, chi: &IntVector) -> Option<TorusValue> {
        let c = self.gamma.coordinates(chi)?;
        Some(
            c.iter()
                .zip(&self.values)
                .fold(TorusValue::identity(self.parameters), |acc, (k, v)| acc.add(&v.times(k))),
        )
    }

    /// Inclusion of subsets of the torus: `self ⊆ other`.
    pub fn is_contained_in(&self, other: &Layer) -> bool {
        self.rank() == other.rank()
            && self.parameters == other.parameters
            && other
                .characters()
                .iter()
                .zip(other.values())
                .all(|(chi, v)| self.value_of(chi).as_ref() == Some(v))
    }

    /// Whether a point, given by the values of its coordinates, lies on the layer.
    pub fn contains_point(&self, point: &[TorusValue]) -> bool {
        self.characters()
            .iter()
            .zip(&self.values)
            .all(|(chi, v)| character_value(chi, point) == *v)
    }
}

impl fmt::Display for Layer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_top() {
            return write!(f, "T");
        }
        let parts: Vec<String> = self
            .characters()
            .iter()
            .zip(&self.values)
            .map(|(c, v)| format!("x^{c} = {v}"))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// `χ(t) = Π tᵢ^{χᵢ}` in additive notation.
pub fn character_value(chi: &IntVector, point: &[TorusValue]) -> TorusValue {
    let k = point.first().map_or(0, |p| p.parameters());
    chi.entries()
        .iter()
        .zip(point)
        .fold(TorusValue::identity(k), |acc, (c, p)| acc.add(&p.times(c)))
}

fn check_layer_input(rank: usize, parameters: usize, chars: &[IntVector], values: &[TorusValue]) -> Result<(), ArrangementError> {
    if chars.len() != values.len() {
        return Err(ArrangementError::ValueCountMismatch {
            characters: chars.len(),
            values: values.len(),
        });
    }
    if let Some(c) = chars.iter().find(|c| c.len() != rank) {
        return Err(ArrangementError::RankMismatch {
            expected: rank,
            found: c.len(),
        });
    }
    if let Some(v) = values.iter().find(|v| v.parameters() != parameters) {
        return Err(ArrangementError::ParameterMismatch {
            expected: parameters,
            found: v.parameters(),
        });
    }
    Ok(())
}

/// Connected components of `L1 ∩ L2`; empty when the values disagree on
/// `Γ1 ∩ Γ2`.
pub fn intersect_layers(a: &Layer, b: &Layer) -> Result<Vec<Layer>, ArrangementError> {
    if a.rank() != b.rank() {
        return Err(ArrangementError::RankMismatch {
            expected: a.rank(),
            found: b.rank(),
        });
    }
    if a.parameters != b.parameters {
        return Err(ArrangementError::ParameterMismatch {
            expected: a.parameters,
            found: b.parameters,
        });
    }
    let gens: Vec<IntVector> = a.characters().iter().chain(b.characters()).cloned().collect();
    let vals: Vec<TorusValue> = a.values.iter().chain(&b.values).cloned().collect();
    Layer::components(a.rank(), a.parameters, &gens, &vals)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    rank: usize,
    parameters: usize,
    layers: Vec<Layer>,
}

impl Arrangement {
    pub fn new(rank: usize, parameters: usize, layers: Vec<Layer>) -> Result<Arrangement, ArrangementError> {
        for l in &layers {
            if l.rank() != rank {
                return Err(ArrangementError::RankMismatch {
                    expected: rank,
                    found: l.rank(),
                });
            }
            if l.parameters() != parameters {
                return Err(ArrangementError::ParameterMismatch {
                    expected: parameters,
                    found: l.parameters(),
                });
            }
        }
        let mut seen = BTreeSet::new();
        let layers = layers.into_iter().filter(|l| seen.insert(l.clone())).collect();
        Ok(Arrangement {
            rank,
            parameters,
            layers,
        })
    }

    pub fn empty(rank: usize) -> Arrangement {
        Arrangement {
            rank,
            parameters: 0,
            layers: Vec::new(),
        }
    }

    /// One divisor layer `χ = 1` per character.
    pub fn divisorial(rank: usize, characters: &[IntVector]) -> Result<Arrangement, ArrangementError> {
        let mut layers = Vec::new();
        for chi in characters {
            layers.extend(Layer::components(rank, 0, std::slice::from_ref(chi), &[TorusValue::identity(0)])?);
        }
        Arrangement::new(rank, 0, layers)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn parameters(&self) -> usize {
        self.parameters
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }
}

#[derive(Serialize, Deserialize)]
struct LayerFile {
    gamma: Vec<IntVector>,
    values: Vec<TorusValue>,
}

#[derive(Serialize, Deserialize)]
struct ArrangementFile {
    rank: usize,
    #[serde(default)]
    parameters: usize,
    layers: Vec<LayerFile>,
}

impl Serialize for Arrangement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ArrangementFile {
            rank: self.rank,
            parameters: self.parameters,
            layers: self
                .layers
                .iter()
                .map(|l| LayerFile {
                    gamma: l.characters().to_vec(),
                    values: l.values.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Arrangement {
    /// Input layers need not be connected: each is split into components.
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let f = ArrangementFile::deserialize(d)?;
        let build = || -> Result<Arrangement, ArrangementError> {
            let mut layers = Vec::new();
            for l in &f.layers {
                if l.gamma.iter().any(IntVector::is_zero) {
                    return Err(ArrangementError::ZeroCharacter);
                }
                let comps = Layer::components(f.rank, f.parameters, &l.gamma, &l.values)?;
                if comps.is_empty() {
                    return Err(ArrangementError::Inconsistent);
                }
                layers.extend(comps);
            }
            Arrangement::new(f.rank, f.parameters, layers)
        };
        build().map_err(serde::de::Error::custom)
    }
}

/// Basis characters of all layers, in order, with repeats and negatives dropped.
pub fn xi_of(a: &Arrangement) -> Vec<IntVector> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for chi in a.layers.iter().flat_map(|l| l.characters()) {
        if seen.insert(chi.sign_normalized()) {
            out.push(chi.clone());
        }
    }
    out
}

/// All `𝒜`-layers: the closure of the arrangement under taking components of
/// intersections, together with the whole torus. Sorted by decreasing
/// dimension, the torus first.
pub fn all_a_layers(a: &Arrangement) -> Vec<Layer> {
    let mut set: BTreeSet<Layer> = a.layers.iter().cloned().collect();
    let mut queue: Vec<Layer> = set.iter().cloned().collect();
    while let Some(l) = queue.pop() {
        let current: Vec<Layer> = set.iter().cloned().collect();
        for m in &current {
            for c in intersect_layers(&l, m).expect("layers of one arrangement") {
                if set.insert(c.clone()) {
                    queue.push(c);
                }
            }
        }
    }
    set.insert(Layer::top(a.rank, a.parameters));
    let mut out: Vec<Layer> = set.into_iter().collect();
    out.sort_by(|x, y| x.codim().cmp(&y.codim()).then_with(|| x.cmp(y)));
    out
}

/// The graphic arrangement of a digraph on vertices `1..=vertices`: the arrow
/// `i → j` gives the divisor `e_i − e_j = value`, written in the simple-root
/// basis `αₖ = e_k − e_{k+1}` of `A_{vertices−1}`.
pub fn from_digraph(vertices: usize, arrows: &[(usize, usize)], values: &[TorusValue]) -> Result<Arrangement, ArrangementError> {
    let n = vertices.saturating_sub(1);
    if values.len() != arrows.len() {
        return Err(ArrangementError::ValueCountMismatch {
            characters: arrows.len(),
            values: values.len(),
        });
    }
    let k = values.first().map_or(0, |v| v.parameters());
    let mut layers = Vec::new();
    for (&(i, j), v) in arrows.iter().zip(values) {
        for x in [i, j] {
            if x == 0 || x > vertices {
                return Err(ArrangementError::VertexOutOfRange(x));
            }
        }
        if i == j {
            return Err(ArrangementError::SelfLoop(i));
        }
        let (lo, hi, sign) = if i < j { (i, j, 1) } else { (j, i, -1) };
        let mut chi = vec![BigInt::zero(); n];
        for c in chi.iter_mut().take(hi - 1).skip(lo - 1) {
            *c = BigInt::from(sign);
        }
        layers.extend(Layer::components(n, k, &[IntVector::new(chi)], std::slice::from_ref(v))?);
    }
    Arrangement::new(n, k, layers)
}

/// Rewrites the arrangement in a basis `η₁…ηₙ` of `ℤⁿ` whose first `r`
/// vectors span the saturation of the span of `Ξ`, and drops the last
/// `n − r` coordinates. Returns the reduced arrangement and the matrix
/// with rows `ηᵢ`.
pub fn reduce_span(a: &Arrangement) -> Result<(Arrangement, IntMatrix), ArrangementError> {
    let n = a.rank;
    let chars: Vec<IntVector> = a.layers.iter().flat_map(|l| l.characters().iter().cloned()).collect();
    let span = Sublattice::generated_by(n, &chars)?.saturate();
    let r = span.rank();
    if r == n {
        return Ok((a.clone(), IntMatrix::identity(n)));
    }
    let eta = span.complete_to_basis()?;
    let inv = eta.inverse()?;
    let mut layers = Vec::new();
    for l in &a.layers {
        let basis = l
            .characters()
            .iter()
            .map(|chi| {
                let c = inv.left_mul_vector(chi)?;
                debug_assert!(c.entries()[r..].iter().all(Zero::is_zero));
                Ok(IntVector::new(c.entries()[..r].to_vec()))
            })
            .collect::<Result<Vec<_>, LatticeError>>()?;
        layers.push(Layer::new(r, a.parameters, basis, l.values.clone())?);
    }
    Ok((Arrangement::new(r, a.parameters, layers)?, eta))
}

/// Inverse of [`reduce_span`] on the cocharacter side: takes a fan for the
/// reduced arrangement, multiplies by the orthant fan on the remaining
/// coordinates, and moves it to the original coordinates, so that pairings
/// with characters are preserved.
pub fn expand_fan(reduced: &Fan, eta: &IntMatrix) -> Result<Fan, ArrangementError> {
    let n = eta.nrows();
    if reduced.rank() > n {
        return Err(ArrangementError::RankMismatch {
            expected: n,
            found: reduced.rank(),
        });
    }
    let full = reduced.product_with_orthant(n - reduced.rank());
    Ok(full.transformed(&eta.inverse()?)?)
}

/// `m` where all torsion values are `m`-th roots of unity.
pub fn torsion_exponent(values: &[TorusValue]) -> BigInt {
    values.iter().fold(BigInt::one(), |acc, v| acc.lcm(&v.torsion_order()))
}
