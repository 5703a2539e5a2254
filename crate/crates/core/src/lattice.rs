//! Rational intersection lattices of hyperbolic signature and their classes.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{QuadNum, Rat};

/// A (1,1)-class as a coordinate vector in the lattice basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DivClass(Vec<Rat>);

impl DivClass {
    pub fn new(coords: Vec<Rat>) -> Self {
        DivClass(coords)
    }

    pub fn zero(rank: usize) -> Self {
        DivClass(vec![Rat::zero(); rank])
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        DivClass(coords.iter().map(|&c| crate::numeric::int(c)).collect())
    }

    pub fn coords(&self) -> &[Rat] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn scale(&self, s: &Rat) -> Self {
        DivClass(self.0.iter().map(|c| c * s).collect())
    }

    /// `a*self + b*other`.
    pub fn combine(&self, a: &Rat, other: &DivClass, b: &Rat) -> Self {
        assert_eq!(self.rank(), other.rank(), "class rank mismatch");
        DivClass(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(x, y)| a * x + b * y)
                .collect(),
        )
    }

    pub fn to_quad(&self) -> QuadClass {
        QuadClass(self.0.iter().cloned().map(QuadNum::from_rat).collect())
    }
}

impl Add for &DivClass {
    type Output = DivClass;
    fn add(self, rhs: &DivClass) -> DivClass {
        assert_eq!(self.rank(), rhs.rank(), "class rank mismatch");
        DivClass(self.0.iter().zip(&rhs.0).map(|(x, y)| x + y).collect())
    }
}

impl Sub for &DivClass {
    type Output = DivClass;
    fn sub(self, rhs: &DivClass) -> DivClass {
        assert_eq!(self.rank(), rhs.rank(), "class rank mismatch");
        DivClass(self.0.iter().zip(&rhs.0).map(|(x, y)| x - y).collect())
    }
}

impl Neg for &DivClass {
    type Output = DivClass;
    fn neg(self) -> DivClass {
        DivClass(self.0.iter().map(|x| -x).collect())
    }
}

impl fmt::Display for DivClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// A class whose coordinates lie in a real quadratic field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadClass(pub Vec<QuadNum>);

impl QuadClass {
    pub fn coords(&self) -> &[QuadNum] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn to_rational(&self) -> Option<DivClass> {
        self.0
            .iter()
            .map(QuadNum::to_rat)
            .collect::<Option<Vec<_>>>()
            .map(DivClass)
    }
}

impl fmt::Display for QuadClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Inertia of a symmetric form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Signature {
    pub fn is_hyperbolic(&self) -> bool {
        self.positive == 1 && self.zero == 0
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.positive, self.negative, self.zero)
    }
}

fn check_symmetric(matrix: &[Vec<Rat>]) -> Result<()> {
    let n = matrix.len();
    if n == 0 || matrix.iter().any(|row| row.len() != n) {
        return Err(Error::MalformedMatrix);
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if matrix[i][j] != matrix[j][i] {
                return Err(Error::NotSymmetric(i, j));
            }
        }
    }
    Ok(())
}

/// Signature of a symmetric rational matrix by congruence diagonalization.
///
/// At each step a nonzero diagonal pivot is used if one exists; otherwise a
/// nonzero off-diagonal entry `a_ij` is promoted to the diagonal by the basis
/// change `e_i <- e_i + e_j`, which makes the new `a_ii = 2 a_ij`.
pub fn signature(matrix: &[Vec<Rat>]) -> Result<Signature> {
    check_symmetric(matrix)?;
    let mut a: Vec<Vec<Rat>> = matrix.to_vec();
    let n = a.len();
    let mut sig = Signature {
        positive: 0,
        negative: 0,
        zero: 0,
    };
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        let pivot = match active.iter().copied().find(|&i| !a[i][i].is_zero()) {
            Some(p) => p,
            None => {
                let pair = active
                    .iter()
                    .flat_map(|&i| active.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i != j && !a[i][j].is_zero());
                match pair {
                    None => {
                        sig.zero += active.len();
                        break;
                    }
                    Some((i, j)) => {
                        // row/column operation: e_i <- e_i + e_j
                        for k in 0..n {
                            let v = &a[i][k] + &a[j][k];
                            a[i][k] = v;
                        }
                        for k in 0..n {
                            let v = &a[k][i] + &a[k][j];
                            a[k][i] = v;
                        }
                        i
                    }
                }
            }
        };
        let p = a[pivot][pivot].clone();
        if p.is_positive() {
            sig.positive += 1;
        } else {
            sig.negative += 1;
        }
        active.retain(|&i| i != pivot);
        for &i in &active {
            let factor = &a[i][pivot] / &p;
            if factor.is_zero() {
                continue;
            }
            for &k in &active {
                let v = &a[i][k] - &factor * &a[pivot][k];
                a[i][k] = v;
            }
        }
        for &i in &active {
            a[i][pivot] = Rat::zero();
            a[pivot][i] = Rat::zero();
        }
    }
    Ok(sig)
}

/// Succeeds iff the form has signature `(1, rank - 1)`.
pub fn validate_signature(matrix: &[Vec<Rat>]) -> Result<()> {
    let sig = signature(matrix)?;
    if sig.is_hyperbolic() {
        Ok(())
    } else {
        Err(Error::BadSignature(sig))
    }
}

/// Real (1,1)-cohomology modelled as a rational lattice with its intersection
/// pairing. Construction enforces symmetry and hyperbolic signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionLattice {
    matrix: Vec<Vec<Rat>>,
    labels: Vec<String>,
}

impl IntersectionLattice {
    pub fn new(matrix: Vec<Vec<Rat>>, labels: Option<Vec<String>>) -> Result<Self> {
        validate_signature(&matrix)?;
        let n = matrix.len();
        let labels = match labels {
            Some(l) if l.len() != n => {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: l.len(),
                })
            }
            Some(l) => l,
            None => (0..n).map(|i| format!("e{}", i)).collect(),
        };
        Ok(IntersectionLattice { matrix, labels })
    }

    pub fn diagonal(entries: &[Rat], labels: Option<Vec<String>>) -> Result<Self> {
        let n = entries.len();
        let matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            entries[i].clone()
                        } else {
                            Rat::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        Self::new(matrix, labels)
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<Rat>] {
        &self.matrix
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn signature(&self) -> Signature {
        signature(&self.matrix).expect("validated at construction")
    }

    pub fn check_rank(&self, x: &DivClass) -> Result<()> {
        if x.rank() == self.rank() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: x.rank(),
            })
        }
    }

    /// `x^T M y`.
    pub fn pair(&self, x: &DivClass, y: &DivClass) -> Result<Rat> {
        self.check_rank(x)?;
        self.check_rank(y)?;
        let mut total = Rat::zero();
        for (i, xi) in x.coords().iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.coords().iter().enumerate() {
                if !yj.is_zero() && !self.matrix[i][j].is_zero() {
                    total += xi * &self.matrix[i][j] * yj;
                }
            }
        }
        Ok(total)
    }

    pub fn self_pair(&self, x: &DivClass) -> Result<Rat> {
        self.pair(x, x)
    }

    /// Pairing of quadratic-coordinate classes; all entries must share a radicand.
    pub fn pair_quad(&self, x: &QuadClass, y: &QuadClass) -> Result<QuadNum> {
        for v in [x.rank(), y.rank()] {
            if v != self.rank() {
                return Err(Error::DimensionMismatch {
                    expected: self.rank(),
                    found: v,
                });
            }
        }
        let mut total = QuadNum::zero();
        for (i, xi) in x.coords().iter().enumerate() {
            for (j, yj) in y.coords().iter().enumerate() {
                let m = &self.matrix[i][j];
                if m.is_zero() {
                    continue;
                }
                total = total.checked_add(&xi.checked_mul(yj)?.mul_rat(m))?;
            }
        }
        Ok(total)
    }
}
