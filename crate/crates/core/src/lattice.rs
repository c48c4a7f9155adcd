//! Lattice vectors in the dual pair `(N, M)` and the pairing between them.
//!
//! `N` holds weight vectors, `M` holds exponent vectors of monomials. Both are
//! identified with `Z^n` through a fixed dual basis, so the pairing is the dot
//! product of coordinates.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Which lattice of the dual pair a vector lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Role {
    /// The weight lattice `N`.
    Weight,
    /// The exponent lattice `M`.
    Exponent,
}

impl Role {
    pub fn dual(self) -> Role {
        match self {
            Role::Weight => Role::Exponent,
            Role::Exponent => Role::Weight,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Role::Weight => "weight",
            Role::Exponent => "exponent",
        }
    }
}

/// An integer vector tagged with the lattice it belongs to.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeVector {
    coords: Vec<BigInt>,
    role: Role,
}

impl LatticeVector {
    pub fn new<I, T>(role: Role, coords: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        LatticeVector {
            coords: coords.into_iter().map(Into::into).collect(),
            role,
        }
    }

    /// A vector of `N`.
    pub fn weight<I, T>(coords: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        Self::new(Role::Weight, coords)
    }

    /// A vector of `M`.
    pub fn exponent<I, T>(coords: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        Self::new(Role::Exponent, coords)
    }

    pub fn zero(role: Role, rank: usize) -> Self {
        LatticeVector {
            coords: vec![BigInt::zero(); rank],
            role,
        }
    }

    /// The `i`-th standard basis vector (0-based).
    pub fn unit(role: Role, rank: usize, i: usize) -> Self {
        let mut v = Self::zero(role, rank);
        v.coords[i] = BigInt::one();
        v
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn role(&self) -> Role {
        self.role
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.coords
    }

    /// Same coordinates, reinterpreted in the other lattice.
    pub fn with_role(mut self, role: Role) -> Self {
        self.role = role;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// gcd of the coordinates, with `gcd(0, x) = |x|`.
    pub fn content(&self) -> BigInt {
        gcd_all(&self.coords)
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    /// Divides by the gcd of the coordinates.
    pub fn primitive(&self) -> Result<LatticeVector> {
        if self.is_zero() {
            return Err(Error::ZeroVector);
        }
        let g = self.content();
        Ok(LatticeVector {
            coords: self.coords.iter().map(|c| c / &g).collect(),
            role: self.role,
        })
    }

    pub fn to_rational(&self) -> RationalVector {
        RationalVector::new(self.coords.iter().cloned().map(BigRational::from_integer))
    }

    pub fn add(&self, other: &LatticeVector) -> Result<LatticeVector> {
        check_rank(self.rank(), other.rank())?;
        Ok(LatticeVector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
            role: self.role,
        })
    }

    pub fn scale(&self, k: &BigInt) -> LatticeVector {
        LatticeVector {
            coords: self.coords.iter().map(|c| c * k).collect(),
            role: self.role,
        }
    }

    /// Dot product of coordinates, ignoring roles.
    pub fn dot(&self, other: &LatticeVector) -> Result<BigInt> {
        check_rank(self.rank(), other.rank())?;
        Ok(dot(&self.coords, &other.coords))
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// `w · m` for `w ∈ N` and `m ∈ M`.
pub fn pairing(w: &LatticeVector, m: &LatticeVector) -> Result<BigInt> {
    check_rank(w.rank(), m.rank())?;
    if w.role == m.role {
        return Err(Error::RoleMismatch(w.role.name()));
    }
    Ok(dot(&w.coords, &m.coords))
}

/// A point of `N_R` or `M_R` with rational coordinates in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalVector {
    coords: Vec<BigRational>,
}

impl RationalVector {
    pub fn new<I: IntoIterator<Item = BigRational>>(coords: I) -> Self {
        // BigRational reduces on construction, so lowest terms hold already.
        RationalVector {
            coords: coords.into_iter().collect(),
        }
    }

    pub fn from_ints<I, T>(coords: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        Self::new(coords.into_iter().map(|c| BigRational::from_integer(c.into())))
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, q: &BigRational) -> RationalVector {
        RationalVector {
            coords: self.coords.iter().map(|c| c * q).collect(),
        }
    }

    /// Smallest positive integer multiple, as a lattice vector with the given role.
    pub fn clear_denominators(&self, role: Role) -> LatticeVector {
        let l = self
            .coords
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        LatticeVector::new(role, self.coords.iter().map(|c| (c * &l).to_integer()))
    }

    pub fn dot_int(&self, v: &[BigInt]) -> Result<BigRational> {
        check_rank(self.rank(), v.len())?;
        Ok(self
            .coords
            .iter()
            .zip(v)
            .fold(BigRational::zero(), |acc, (a, b)| acc + a * b))
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

pub(crate) fn check_rank(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::RankMismatch { expected, found })
    }
}

pub(crate) fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn gcd_all(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, c| g.gcd(c)).abs()
}

/// Divides an integer vector by its content; the zero vector is returned unchanged.
pub(crate) fn make_primitive(v: &mut [BigInt]) {
    let g = gcd_all(v);
    if !g.is_zero() && !g.is_one() {
        for c in v.iter_mut() {
            *c /= &g;
        }
    }
}
