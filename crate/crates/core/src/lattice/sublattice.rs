use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rational;
use super::{smith_normal_form, IntMatrix, IntVector, LatticeError, SmithDecomposition};

/// A sublattice of ℤⁿ given by a basis of linearly independent rows.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Sublattice {
    ambient: usize,
    basis: Vec<IntVector>,
}

impl Sublattice {
    pub fn new(ambient: usize, basis: Vec<IntVector>) -> Result<Self, LatticeError> {
        for b in &basis {
            if b.len() != ambient {
                return Err(LatticeError::DimensionMismatch {
                    left: ambient,
                    right: b.len(),
                });
            }
        }
        if rational::rank_of(&basis) != basis.len() {
            return Err(LatticeError::LinearlyDependent);
        }
        Ok(Sublattice { ambient, basis })
    }

    pub fn zero(ambient: usize) -> Self {
        Sublattice {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Sublattice {
            ambient,
            basis: (0..ambient).map(|i| IntVector::unit(ambient, i)).collect(),
        }
    }

    /// The lattice generated by arbitrary (possibly dependent) vectors.
    pub fn generated_by(ambient: usize, generators: &[IntVector]) -> Result<Self, LatticeError> {
        let a = IntMatrix::from_rows(ambient, generators)?;
        let s = smith_normal_form(&a);
        let basis = s
            .invariant_factors()
            .iter()
            .enumerate()
            .map(|(i, d)| s.v_inverse().row(i).scaled(d))
            .collect();
        Ok(Sublattice { ambient, basis })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[IntVector] {
        &self.basis
    }

    pub fn matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(self.ambient, &self.basis).expect("basis rows have ambient length")
    }

    pub fn smith(&self) -> SmithDecomposition {
        smith_normal_form(&self.matrix())
    }

    /// The largest sublattice with the same rational span.
    pub fn saturate(&self) -> Sublattice {
        let s = self.smith();
        Sublattice {
            ambient: self.ambient,
            basis: (0..self.rank()).map(|i| s.v_inverse().row(i)).collect(),
        }
    }

    /// `[saturate(L) : L]`, the product of the invariant factors.
    pub fn index_in_saturation(&self) -> BigInt {
        self.smith().invariant_factors().iter().product()
    }

    pub fn is_split_summand(&self) -> bool {
        self.index_in_saturation().is_one()
    }

    /// A unimodular `n×n` matrix whose first `r` rows are this basis.
    pub fn complete_to_basis(&self) -> Result<IntMatrix, LatticeError> {
        let s = self.smith();
        let index: BigInt = s.invariant_factors().iter().product();
        if !index.is_one() {
            return Err(LatticeError::NotSplitSummand { index });
        }
        let r = self.rank();
        // B = U⁻¹·[I 0]·V⁻¹, so the rows r.. of V⁻¹ complete B
        let mut rows = self.basis.clone();
        rows.extend((r..self.ambient).map(|i| s.v_inverse().row(i)));
        let m = IntMatrix::from_rows(self.ambient, &rows)?;
        debug_assert!(m.is_unimodular());
        Ok(m)
    }

    /// Saturated basis of `{v ∈ ℤⁿ : ⟨b, v⟩ = 0 for every basis vector b}`.
    pub fn annihilator(&self) -> Sublattice {
        let s = self.smith();
        let r = s.rank();
        Sublattice {
            ambient: self.ambient,
            basis: (r..self.ambient).map(|j| s.v.column(j)).collect(),
        }
    }

    /// Integer coordinates of `v` in this basis, when `v` is in the lattice.
    pub fn coordinates(&self, v: &IntVector) -> Option<Vec<BigInt>> {
        rational::integer_combination(&self.basis, v)
    }

    pub fn contains(&self, v: &IntVector) -> bool {
        v.len() == self.ambient && self.coordinates(v).is_some()
    }

    pub fn contains_lattice(&self, other: &Sublattice) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    pub fn same_span(&self, other: &Sublattice) -> bool {
        if self.rank() != other.rank() {
            return false;
        }
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        rational::rank_of(&all) == self.rank()
    }

    /// Row-style Hermite normal form of the basis together with the
    /// unimodular `T` such that `hermite = T · basis`.
    pub fn hermite(&self) -> (Sublattice, IntMatrix) {
        let r = self.rank();
        let n = self.ambient;
        let mut a: Vec<Vec<BigInt>> = self.basis.iter().map(|b| b.entries().to_vec()).collect();
        let mut t = IntMatrix::identity(r).data().to_vec();
        let sub = |a: &mut Vec<Vec<BigInt>>, t: &mut Vec<Vec<BigInt>>, i: usize, j: usize, k: &BigInt| {
            for c in 0..n {
                let x = &a[j][c] * k;
                a[i][c] -= x;
            }
            for c in 0..r {
                let x = &t[j][c] * k;
                t[i][c] -= x;
            }
        };
        let mut row = 0;
        for col in 0..n {
            if row == r {
                break;
            }
            loop {
                let best = (row..r)
                    .filter(|&i| !a[i][col].is_zero())
                    .min_by(|&i, &j| a[i][col].abs().cmp(&a[j][col].abs()));
                let Some(p) = best else { break };
                a.swap(row, p);
                t.swap(row, p);
                let mut clean = true;
                for i in row + 1..r {
                    if a[i][col].is_zero() {
                        continue;
                    }
                    let k = a[i][col].div_floor(&a[row][col]);
                    sub(&mut a, &mut t, i, row, &k);
                    clean &= a[i][col].is_zero();
                }
                if clean {
                    break;
                }
            }
            if row == r || a[row][col].is_zero() {
                continue;
            }
            if a[row][col].is_negative() {
                for x in a[row].iter_mut() {
                    *x = -&*x;
                }
                for x in t[row].iter_mut() {
                    *x = -&*x;
                }
            }
            for i in 0..row {
                let k = a[i][col].div_floor(&a[row][col]);
                sub(&mut a, &mut t, i, row, &k);
            }
            row += 1;
        }
        (
            Sublattice {
                ambient: n,
                basis: a.into_iter().map(IntVector::new).collect(),
            },
            IntMatrix::from_data(r, r, t),
        )
    }
}
