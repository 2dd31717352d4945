//! Sharp fine saturated monoids `M = {m in Z^k : A m >= 0}`, given as a dual
//! pair of inequality rows `A` and extreme rays of the cone.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::abgroup::{rank, IntMatrix};

/// An element of the lattice `M^gp = Z^k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LatticeVector(Vec<BigInt>);

impl LatticeVector {
    pub fn new(coords: Vec<BigInt>) -> Self {
        LatticeVector(coords)
    }

    pub fn zero(dim: usize) -> Self {
        LatticeVector(vec![BigInt::zero(); dim])
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        LatticeVector(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// The `i`-th standard basis vector of `Z^dim`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[i] = BigInt::from(1);
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, functional: &[BigInt]) -> BigInt {
        self.0.iter().zip(functional).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        LatticeVector(self.0.iter().map(|x| x * c).collect())
    }

    /// The integer `s` with `self = s * base`, if any. Panics if `base` is zero.
    pub fn divide_by(&self, base: &LatticeVector) -> Option<BigInt> {
        let pivot = base.0.iter().position(|x| !x.is_zero()).expect("division by zero vector");
        let (s, r) = self.0[pivot].div_rem(&base.0[pivot]);
        (r.is_zero() && base.scale(&s) == *self).then_some(s)
    }
}

impl From<Vec<BigInt>> for LatticeVector {
    fn from(v: Vec<BigInt>) -> Self {
        LatticeVector(v)
    }
}

impl Add for &LatticeVector {
    type Output = LatticeVector;

    fn add(self, rhs: &LatticeVector) -> LatticeVector {
        assert_eq!(self.dim(), rhs.dim(), "lattice dimension mismatch");
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;

    fn sub(self, rhs: &LatticeVector) -> LatticeVector {
        assert_eq!(self.dim(), rhs.dim(), "lattice dimension mismatch");
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;

    fn neg(self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MonoidError {
    #[error("inequality matrix has {cols} columns but the lattice has rank {rank}")]
    InequalityShape { rank: usize, cols: usize },
    #[error("monoid not sharp: rank(A) = {found} < k = {rank}")]
    NotSharp { rank: usize, found: usize },
    #[error("ray {index} is zero")]
    ZeroRay { index: usize },
    #[error("ray {index} has length {len}, expected {rank}")]
    RayShape { index: usize, len: usize, rank: usize },
    #[error("ray {index} violates inequality row {row}")]
    RayOutsideCone { index: usize, row: usize },
    #[error("rays span rank {found} < k = {rank}; the cone of M must be full-dimensional")]
    RaysNotSpanning { rank: usize, found: usize },
    #[error("inequality row {row} vanishes on every ray; rays and inequalities do not describe the same cone")]
    RowVanishesOnRays { row: usize },
    #[error("vector has length {found}, lattice has rank {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{0} is not an element of the monoid")]
    NotInMonoid(LatticeVector),
    #[error("hom matrix is {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    HomShape {
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },
    #[error("homomorphisms do not compose: target of the first is not the source of the second")]
    NotComposable,
}

/// A sharp fs monoid of rank `k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SharpFsMonoid {
    rank: usize,
    inequalities: IntMatrix,
    rays: Vec<LatticeVector>,
}

impl SharpFsMonoid {
    /// Validates the dual pair: `rank(A) = k`, every ray nonzero with `A r >= 0`,
    /// rays spanning `Q^k`, and `A (sum of rays) > 0` in every row.
    pub fn new(rank_k: usize, inequalities: IntMatrix, rays: Vec<LatticeVector>) -> Result<Self, MonoidError> {
        if inequalities.cols() != rank_k {
            return Err(MonoidError::InequalityShape {
                rank: rank_k,
                cols: inequalities.cols(),
            });
        }
        let found = rank(&inequalities);
        if found < rank_k {
            return Err(MonoidError::NotSharp { rank: rank_k, found });
        }
        let mut total = LatticeVector::zero(rank_k);
        for (index, ray) in rays.iter().enumerate() {
            if ray.dim() != rank_k {
                return Err(MonoidError::RayShape {
                    index,
                    len: ray.dim(),
                    rank: rank_k,
                });
            }
            if ray.is_zero() {
                return Err(MonoidError::ZeroRay { index });
            }
            let image = inequalities.mul_vec(ray.coords());
            if let Some(row) = image.iter().position(Signed::is_negative) {
                return Err(MonoidError::RayOutsideCone { index, row });
            }
            total = &total + ray;
        }
        let ray_matrix = IntMatrix::from_columns(rank_k, &rays.iter().map(|r| r.coords().to_vec()).collect::<Vec<_>>());
        let span = rank(&ray_matrix);
        if span < rank_k {
            return Err(MonoidError::RaysNotSpanning { rank: rank_k, found: span });
        }
        if let Some(row) = inequalities.mul_vec(total.coords()).iter().position(|x| !x.is_positive()) {
            return Err(MonoidError::RowVanishesOnRays { row });
        }
        Ok(SharpFsMonoid {
            rank: rank_k,
            inequalities,
            rays,
        })
    }

    /// `N^k`: identity inequalities, standard basis rays.
    pub fn free(k: usize) -> Self {
        SharpFsMonoid {
            rank: k,
            inequalities: IntMatrix::identity(k),
            rays: (0..k).map(|i| LatticeVector::unit(k, i)).collect(),
        }
    }

    pub fn is_standard_free(&self) -> bool {
        *self == Self::free(self.rank)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn inequalities(&self) -> &IntMatrix {
        &self.inequalities
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    fn check_dim(&self, x: &LatticeVector) -> Result<(), MonoidError> {
        if x.dim() == self.rank {
            Ok(())
        } else {
            Err(MonoidError::DimensionMismatch {
                expected: self.rank,
                found: x.dim(),
            })
        }
    }

    /// `A x`, one entry per inequality row.
    pub fn evaluate(&self, x: &LatticeVector) -> Result<Vec<BigInt>, MonoidError> {
        self.check_dim(x)?;
        Ok(self.inequalities.mul_vec(x.coords()))
    }

    pub fn contains(&self, x: &LatticeVector) -> Result<bool, MonoidError> {
        Ok(self.evaluate(x)?.iter().all(|v| !v.is_negative()))
    }

    /// `a <= b` in the monoidal order, i.e. `b - a` lies in `M`.
    pub fn leq(&self, a: &LatticeVector, b: &LatticeVector) -> Result<bool, MonoidError> {
        self.check_dim(a)?;
        self.check_dim(b)?;
        self.contains(&(b - a))
    }

    /// Whether `-N ell <= x <= N ell` for some `N >= 0`.
    ///
    /// Decided by the face criterion: every inequality row vanishing on `ell`
    /// must vanish on `x`.
    pub fn is_bounded_by(&self, x: &LatticeVector, ell: &LatticeVector) -> Result<bool, MonoidError> {
        Ok(self.bound_witness(x, ell)?.is_some())
    }

    /// The least `N` with `-N ell <= x <= N ell`, or `None` if `x` is unbounded.
    pub fn bound_witness(&self, x: &LatticeVector, ell: &LatticeVector) -> Result<Option<BigInt>, MonoidError> {
        self.check_dim(x)?;
        let on_ell = self.evaluate(ell)?;
        if on_ell.iter().any(Signed::is_negative) {
            return Err(MonoidError::NotInMonoid(ell.clone()));
        }
        let on_x = self.inequalities.mul_vec(x.coords());
        let mut n = BigInt::zero();
        for (l, v) in on_ell.iter().zip(&on_x) {
            if l.is_zero() {
                if !v.is_zero() {
                    return Ok(None);
                }
            } else {
                n = n.max(v.abs().div_ceil(l));
            }
        }
        Ok(Some(n))
    }
}

/// A lattice map `source^gp -> target^gp` meant to send `source` into `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidHom {
    source: SharpFsMonoid,
    target: SharpFsMonoid,
    matrix: IntMatrix,
}

impl MonoidHom {
    /// Checks only the shape; use [`MonoidHom::validate`] for monoid compatibility.
    pub fn new(source: SharpFsMonoid, target: SharpFsMonoid, matrix: IntMatrix) -> Result<Self, MonoidError> {
        if matrix.rows() != target.rank || matrix.cols() != source.rank {
            return Err(MonoidError::HomShape {
                rows: matrix.rows(),
                cols: matrix.cols(),
                expected_rows: target.rank,
                expected_cols: source.rank,
            });
        }
        Ok(MonoidHom { source, target, matrix })
    }

    pub fn identity(m: &SharpFsMonoid) -> Self {
        MonoidHom {
            source: m.clone(),
            target: m.clone(),
            matrix: IntMatrix::identity(m.rank),
        }
    }

    pub fn source(&self) -> &SharpFsMonoid {
        &self.source
    }

    pub fn target(&self) -> &SharpFsMonoid {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// True iff every extreme ray of the source lands in the target cone.
    pub fn validate(&self) -> bool {
        self.source.rays.iter().all(|r| {
            let image = self.apply(r);
            self.target.inequalities.mul_vec(image.coords()).iter().all(|v| !v.is_negative())
        })
    }

    /// Panics if `x` does not live in the source lattice.
    pub fn apply(&self, x: &LatticeVector) -> LatticeVector {
        LatticeVector(self.matrix.mul_vec(x.coords()))
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &MonoidHom) -> Result<MonoidHom, MonoidError> {
        if self.target != next.source {
            return Err(MonoidError::NotComposable);
        }
        Ok(MonoidHom {
            source: self.source.clone(),
            target: next.target.clone(),
            matrix: next.matrix.mul(&self.matrix),
        })
    }
}

/// Free-function form of [`MonoidHom::validate`].
pub fn validate_hom(h: &MonoidHom) -> bool {
    h.validate()
}
