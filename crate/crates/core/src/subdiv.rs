//! Subdividing a smooth fan until a finite set of characters is
//! sign-coherent on every cone.
//!
//! A two-dimensional cone `C(e¹,e²)` is bad for `χ` when `⟨χ,e¹⟩⟨χ,e²⟩ < 0`.
//! The loop repeatedly picks a bad cone of maximal score `(M, ε)` and
//! replaces it by the stellar move through `e¹+e²`.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fan::{Cone, Fan, FanError};
use crate::lattice::{pairing, IntVector};

// callers guarantee matching lengths
fn pair(chi: &IntVector, r: &IntVector) -> BigInt {
    pairing(chi, r).expect("character and ray have the ambient rank")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubdivError {
    #[error("cone is not in the fan")]
    ConeNotInFan,
    #[error("cone is not bad for the character")]
    NotBadCone,
    #[error("zero character carries no constraint")]
    ZeroCharacter,
    #[error("character {0} has the wrong length for rank {1}")]
    RankMismatch(IntVector, usize),
    #[error("trace step {0} does not apply: {1}")]
    BadTrace(usize, FanError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SignStatus {
    NonNeg,
    NonPos,
    Mixed,
}

/// `P(σ) = (M, ε)`, ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Score {
    pub m: BigInt,
    pub eps: u8,
}

/// The triple `(M, ε, q)` over all bad cones of a fan; all zero when there
/// are none.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Measure {
    pub m: BigInt,
    pub eps: u8,
    pub q: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub character: IntVector,
    pub cone: [IntVector; 2],
    pub new_ray: IntVector,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SubdivisionTrace(pub Vec<TraceStep>);

impl SubdivisionTrace {
    pub fn steps(&self) -> &[TraceStep] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Reapplies every move to `start`.
    pub fn replay(&self, start: &Fan) -> Result<Fan, SubdivError> {
        let mut f = start.clone();
        for (i, step) in self.0.iter().enumerate() {
            let sigma = f
                .cone_from_vectors(&step.cone)
                .ok_or_else(|| SubdivError::BadTrace(i, FanError::NotATwoFace(step.cone.to_vec())))?;
            f = f.stellar_subdivide_2cone(&sigma).map_err(|e| SubdivError::BadTrace(i, e))?;
        }
        Ok(f)
    }
}

/// One move of the loop, handed to observers.
pub struct Step<'a> {
    pub character: &'a IntVector,
    pub before: &'a Fan,
    pub after: &'a Fan,
    pub cone: &'a [IntVector; 2],
    pub score: &'a Score,
    pub measure_before: &'a Measure,
    pub measure_after: &'a Measure,
}

fn status_of(values: impl IntoIterator<Item = BigInt>) -> SignStatus {
    let (mut pos, mut neg) = (false, false);
    for v in values {
        pos |= v.is_positive();
        neg |= v.is_negative();
    }
    match (pos, neg) {
        (true, true) => SignStatus::Mixed,
        (false, true) => SignStatus::NonPos,
        _ => SignStatus::NonNeg,
    }
}

pub fn sign_status(chi: &IntVector, c: &Cone, f: &Fan) -> Result<SignStatus, SubdivError> {
    if !f.contains_cone(c) {
        return Err(SubdivError::ConeNotInFan);
    }
    check_rank(chi, f)?;
    Ok(status_of(f.cone_vectors(c).iter().map(|r| pair(chi, r))))
}

fn check_rank(chi: &IntVector, f: &Fan) -> Result<(), SubdivError> {
    if chi.len() != f.rank() {
        return Err(SubdivError::RankMismatch(chi.clone(), f.rank()));
    }
    Ok(())
}

/// `χ` is sign-coherent on every cone of `f`.
pub fn has_property_e_everywhere(f: &Fan, chi: &IntVector) -> bool {
    f.maximal_frames()
        .iter()
        .all(|m| status_of(m.iter().map(|&i| pair(chi, f.ray(i)))) != SignStatus::Mixed)
}

fn pair_score(a: &BigInt, b: &BigInt) -> Option<Score> {
    if (a * b).is_negative() {
        let (x, y) = (a.abs(), b.abs());
        let eps = u8::from(x == y);
        Some(Score { m: x.max(y), eps })
    } else {
        None
    }
}

pub fn bad_two_cones(f: &Fan, chi: &IntVector) -> BTreeSet<Cone> {
    let values: Vec<BigInt> = f.rays().iter().map(|r| pair(chi, r)).collect();
    f.two_dim_cones()
        .into_iter()
        .filter(|c| {
            let ids = c.ray_ids();
            (&values[ids[0]] * &values[ids[1]]).is_negative()
        })
        .collect()
}

pub fn score(f: &Fan, sigma: &Cone, chi: &IntVector) -> Result<Score, SubdivError> {
    if sigma.dim() != 2 || !f.contains_cone(sigma) {
        return Err(SubdivError::ConeNotInFan);
    }
    check_rank(chi, f)?;
    let ids = sigma.ray_ids();
    pair_score(&pair(chi, f.ray(ids[0])), &pair(chi, f.ray(ids[1]))).ok_or(SubdivError::NotBadCone)
}

fn scored_bad_cones(f: &Fan, chi: &IntVector) -> Vec<(Score, Cone)> {
    let values: Vec<BigInt> = f.rays().iter().map(|r| pair(chi, r)).collect();
    f.two_dim_cones()
        .into_iter()
        .filter_map(|c| {
            let ids = c.ray_ids();
            pair_score(&values[ids[0]], &values[ids[1]]).map(|s| (s, c))
        })
        .collect()
}

fn measure_of(scored: &[(Score, Cone)]) -> Measure {
    match scored.iter().map(|(s, _)| s).max() {
        None => Measure {
            m: BigInt::zero(),
            eps: 0,
            q: 0,
        },
        Some(top) => Measure {
            m: top.m.clone(),
            eps: top.eps,
            q: scored.iter().filter(|(s, _)| s == top).count(),
        },
    }
}

pub fn measure(f: &Fan, chi: &IntVector) -> Measure {
    measure_of(&scored_bad_cones(f, chi))
}

fn sorted_pair(f: &Fan, c: &Cone) -> [IntVector; 2] {
    let mut v = f.cone_vectors(c);
    v.sort();
    [v[0].clone(), v[1].clone()]
}

/// A maximal-score bad cone, ties broken by the lexicographically smallest
/// sorted pair of ray vectors.
pub fn choose_cone(f: &Fan, chi: &IntVector) -> Option<(Score, Cone)> {
    scored_bad_cones(f, chi)
        .into_iter()
        .map(|(s, c)| {
            let key = sorted_pair(f, &c);
            (s, key, c)
        })
        .min_by(|a, b| match b.0.cmp(&a.0) {
            Ordering::Equal => a.1.cmp(&b.1),
            o => o,
        })
        .map(|(s, _, c)| (s, c))
}

pub fn resolve_character(f: &Fan, chi: &IntVector) -> (Fan, SubdivisionTrace) {
    resolve_character_with(f, chi, |_| {})
}

/// Like [`resolve_character`], calling `observe` after every move.
pub fn resolve_character_with<F: FnMut(&Step<'_>)>(f: &Fan, chi: &IntVector, mut observe: F) -> (Fan, SubdivisionTrace) {
    let mut trace = SubdivisionTrace::default();
    let mut current = f.clone();
    let mut scored = scored_bad_cones(&current, chi);
    while let Some((s, sigma)) = choose_cone(&current, chi) {
        let before_measure = measure_of(&scored);
        let pair = sorted_pair(&current, &sigma);
        let next = current
            .stellar_subdivide_2cone(&sigma)
            .expect("bad cones are two-dimensional cones of the fan");
        scored = scored_bad_cones(&next, chi);
        let after_measure = measure_of(&scored);
        let new_ray = &pair[0] + &pair[1];
        observe(&Step {
            character: chi,
            before: &current,
            after: &next,
            cone: &pair,
            score: &s,
            measure_before: &before_measure,
            measure_after: &after_measure,
        });
        trace.0.push(TraceStep {
            character: chi.clone(),
            cone: pair,
            new_ray,
        });
        current = next;
    }
    (current, trace)
}

/// Drops zero characters (as an error), repeats and negatives of earlier
/// characters, keeping input order.
pub fn normalize_characters(xi: &[IntVector]) -> Result<Vec<IntVector>, SubdivError> {
    let mut seen: BTreeSet<IntVector> = BTreeSet::new();
    let mut out = Vec::new();
    for chi in xi {
        if chi.is_zero() {
            return Err(SubdivError::ZeroCharacter);
        }
        if seen.contains(chi) || seen.contains(&-chi) {
            continue;
        }
        seen.insert(chi.clone());
        out.push(chi.clone());
    }
    Ok(out)
}

pub fn resolve_all(f: &Fan, xi: &[IntVector]) -> Result<(Fan, SubdivisionTrace), SubdivError> {
    resolve_all_with(f, xi, |_| {})
}

pub fn resolve_all_with<F: FnMut(&Step<'_>)>(
    f: &Fan,
    xi: &[IntVector],
    mut observe: F,
) -> Result<(Fan, SubdivisionTrace), SubdivError> {
    let chars = normalize_characters(xi)?;
    for chi in &chars {
        check_rank(chi, f)?;
    }
    let mut current = f.clone();
    let mut trace = SubdivisionTrace::default();
    for chi in &chars {
        let (next, t) = resolve_character_with(&current, chi, &mut observe);
        current = next;
        trace.0.extend(t.0);
    }
    Ok((current, trace))
}

/// Pairings of `χ` with the generators of a maximal cone, in frame order.
pub fn pairing_coordinates(f: &Fan, frame: &[usize], chi: &IntVector) -> Vec<BigInt> {
    frame.iter().map(|&i| pair(chi, f.ray(i))).collect()
}
