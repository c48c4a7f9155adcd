//! Coefficient fields for arcs: quadratic extensions of ℚ (exact) and `Complex64` (float).

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Field operations needed to evaluate series on arcs.
pub trait Coefficient: Clone + fmt::Debug + fmt::Display + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(q: &BigRational) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    /// Exact zero test (no tolerance).
    fn is_zero(&self) -> bool;
    fn to_complex(&self) -> Complex64;

    fn magnitude(&self) -> f64 {
        self.to_complex().norm()
    }

    fn from_int(n: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(n)))
    }

    /// Compact human-readable form used when printing series.
    fn display_coefficient(&self) -> String {
        self.to_string()
    }

    fn pow(&self, e: u64) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }
}

/// `a + b·√d` with rational `a`, `b` and a non-square integer `d`.
///
/// Elements with `b = 0` are plain rationals and combine with any field.
#[derive(Debug, Clone)]
pub struct QuadraticNumber {
    a: BigRational,
    b: BigRational,
    d: BigInt,
}

impl PartialEq for QuadraticNumber {
    fn eq(&self, o: &Self) -> bool {
        self.a == o.a && self.b == o.b && (self.b.is_zero() || self.d == o.d)
    }
}

impl Eq for QuadraticNumber {}

impl QuadraticNumber {
    pub fn rational(a: BigRational) -> QuadraticNumber {
        QuadraticNumber {
            a,
            b: BigRational::zero(),
            d: BigInt::zero(),
        }
    }

    /// `a + b√d`; `d` must not be a perfect square.
    pub fn new(a: BigRational, b: BigRational, d: BigInt) -> QuadraticNumber {
        debug_assert!(b.is_zero() || !is_square(&d), "{d} is a square");
        let d = if b.is_zero() { BigInt::zero() } else { d };
        QuadraticNumber { a, b, d }
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn irrational_part(&self) -> &BigRational {
        &self.b
    }

    /// The radicand, or 0 for a rational.
    pub fn radicand(&self) -> &BigInt {
        &self.d
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.b.is_zero().then_some(&self.a)
    }

    fn field(&self, o: &Self) -> BigInt {
        if self.b.is_zero() {
            o.d.clone()
        } else {
            assert!(o.b.is_zero() || o.d == self.d, "mixing √{} and √{}", self.d, o.d);
            self.d.clone()
        }
    }

    pub fn conjugate(&self) -> QuadraticNumber {
        QuadraticNumber::new(self.a.clone(), -self.b.clone(), self.d.clone())
    }

    /// Square root inside `ℚ(√d)` (`d = 0` meaning ℚ), if it exists there.
    pub fn sqrt_in(&self, d: &BigInt) -> Option<QuadraticNumber> {
        if self.b.is_zero() {
            if let Some(r) = rational_sqrt(&self.a) {
                return Some(QuadraticNumber::rational(r));
            }
            if d.is_zero() {
                return None;
            }
            let y = rational_sqrt(&(&self.a / BigRational::from_integer(d.clone())))?;
            return Some(QuadraticNumber::new(BigRational::zero(), y, d.clone()));
        }
        // (x + y√d)² = A + B√d  ⇔  x² + d y² = A, 2xy = B
        let dd = BigRational::from_integer(self.d.clone());
        let norm = &self.a * &self.a - &dd * &self.b * &self.b;
        let s = rational_sqrt(&norm)?;
        let two = BigRational::from_integer(BigInt::from(2));
        for x2 in [(&self.a + &s) / &two, (&self.a - &s) / &two] {
            if let Some(x) = rational_sqrt(&x2) {
                if x.is_zero() {
                    continue;
                }
                let y = &self.b / (&two * &x);
                let cand = QuadraticNumber::new(x, y, self.d.clone());
                if cand.mul(&cand) == *self {
                    return Some(cand);
                }
            }
        }
        None
    }
}

impl fmt::Display for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let root = format!("sqrt({})", self.d);
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}", scaled(&self.b, &root)),
            (false, false) => {
                let s = scaled(&self.b.abs(), &root);
                let sign = if self.b.is_negative() { "-" } else { "+" };
                write!(f, "{} {sign} {s}", self.a)
            }
        }
    }
}

fn scaled(c: &BigRational, root: &str) -> String {
    if c.is_one() {
        root.to_string()
    } else if *c == -BigRational::one() {
        format!("-{root}")
    } else {
        format!("{c}*{root}")
    }
}

impl Coefficient for QuadraticNumber {
    fn zero() -> Self {
        QuadraticNumber::rational(BigRational::zero())
    }

    fn one() -> Self {
        QuadraticNumber::rational(BigRational::one())
    }

    fn from_rational(q: &BigRational) -> Self {
        QuadraticNumber::rational(q.clone())
    }

    fn add(&self, o: &Self) -> Self {
        let d = self.field(o);
        QuadraticNumber::new(&self.a + &o.a, &self.b + &o.b, d)
    }

    fn sub(&self, o: &Self) -> Self {
        let d = self.field(o);
        QuadraticNumber::new(&self.a - &o.a, &self.b - &o.b, d)
    }

    fn mul(&self, o: &Self) -> Self {
        let d = self.field(o);
        let dd = BigRational::from_integer(d.clone());
        QuadraticNumber::new(
            &self.a * &o.a + dd * &self.b * &o.b,
            &self.a * &o.b + &self.b * &o.a,
            d,
        )
    }

    fn neg(&self) -> Self {
        QuadraticNumber::new(-self.a.clone(), -self.b.clone(), self.d.clone())
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let dd = BigRational::from_integer(self.d.clone());
        let norm = &self.a * &self.a - dd * &self.b * &self.b;
        Some(QuadraticNumber::new(
            &self.a / &norm,
            -(&self.b / &norm),
            self.d.clone(),
        ))
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn to_complex(&self) -> Complex64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        let d = self.d.to_f64().unwrap_or(f64::NAN);
        if d >= 0.0 {
            Complex64::new(a + b * d.sqrt(), 0.0)
        } else {
            Complex64::new(a, b * (-d).sqrt())
        }
    }
}

impl Coefficient for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }

    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }

    fn from_rational(q: &BigRational) -> Self {
        Complex64::new(q.to_f64().unwrap_or(f64::NAN), 0.0)
    }

    fn add(&self, o: &Self) -> Self {
        self + o
    }

    fn sub(&self, o: &Self) -> Self {
        self - o
    }

    fn mul(&self, o: &Self) -> Self {
        self * o
    }

    fn neg(&self) -> Self {
        -self
    }

    fn inv(&self) -> Option<Self> {
        (self.norm() > 0.0).then(|| Complex64::new(1.0, 0.0) / self)
    }

    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }

    fn to_complex(&self) -> Complex64 {
        *self
    }

    /// Imaginary (or real) parts below `1e-12` of the modulus are dropped.
    fn display_coefficient(&self) -> String {
        let tiny = 1e-12 * self.norm().max(1.0);
        match (self.re.abs() > tiny, self.im.abs() > tiny) {
            (_, false) => format!("{}", self.re),
            (false, true) => format!("{}i", self.im),
            (true, true) => {
                let sign = if self.im < 0.0 { "-" } else { "+" };
                format!("{} {sign} {}i", self.re, self.im.abs())
            }
        }
    }
}

pub(crate) fn is_square(n: &BigInt) -> bool {
    !n.is_negative() && {
        let r = n.sqrt();
        &r * &r == *n
    }
}

/// Exact `p`-th root of a rational, if it is one.
pub(crate) fn rational_root(q: &BigRational, p: u32) -> Option<BigRational> {
    if q.is_negative() && p.is_multiple_of(2) {
        return None;
    }
    let root = |n: &BigInt| -> Option<BigInt> {
        let r = n.nth_root(p);
        (num_traits::pow(r.clone(), p as usize) == *n).then_some(r)
    };
    Some(BigRational::new(root(q.numer())?, root(q.denom())?))
}

pub(crate) fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    rational_root(q, 2)
}

/// `√q = c·√d` for an integer `d` with small square factors removed.
pub(crate) fn radical_form(q: &BigRational) -> (BigRational, BigInt) {
    let mut d = q.numer() * q.denom();
    let mut c = BigRational::new(BigInt::one(), q.denom().clone());
    let mut k = BigInt::from(2);
    let limit = BigInt::from(10_000);
    while k <= limit && &k * &k <= d.abs() {
        let k2 = &k * &k;
        while d.is_multiple_of(&k2) {
            d /= &k2;
            c *= BigRational::from_integer(k.clone());
        }
        k += 1;
    }
    (c, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn sqrt2() -> QuadraticNumber {
        QuadraticNumber::new(q(0, 1), q(1, 1), BigInt::from(2))
    }

    #[test]
    fn field_arithmetic() {
        let s = sqrt2();
        assert_eq!(s.mul(&s), QuadraticNumber::rational(q(2, 1)));
        let x = s.add(&QuadraticNumber::one());
        assert_eq!(x.mul(&x.inv().unwrap()), QuadraticNumber::one());
        assert_eq!(x.to_string(), "1 + sqrt(2)");
        assert_eq!(s.neg().to_string(), "-sqrt(2)");
        assert!((x.to_complex().re - (1.0 + 2f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn square_roots() {
        let two = BigInt::from(2);
        assert_eq!(QuadraticNumber::rational(q(2, 1)).sqrt_in(&BigInt::zero()), None);
        assert_eq!(QuadraticNumber::rational(q(2, 1)).sqrt_in(&two), Some(sqrt2()));
        assert_eq!(QuadraticNumber::rational(q(9, 4)).sqrt_in(&BigInt::zero()).unwrap().to_string(), "3/2");
        // (1 + √2)² = 3 + 2√2
        let x = QuadraticNumber::new(q(3, 1), q(2, 1), two.clone());
        let r = x.sqrt_in(&two).unwrap();
        assert_eq!(r.mul(&r), x);
    }

    #[test]
    fn radicals() {
        assert_eq!(radical_form(&q(8, 1)), (q(2, 1), BigInt::from(2)));
        assert_eq!(radical_form(&q(1, 2)), (q(1, 2), BigInt::from(2)));
        assert_eq!(rational_root(&q(-27, 8), 3), Some(q(-3, 2)));
        assert_eq!(rational_root(&q(2, 1), 2), None);
    }
}
