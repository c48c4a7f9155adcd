//! Truncated arcs, their weight vectors, the semivaluations they induce, and
//! the Newton–Puiseux iteration for plane curves.

mod puiseux;
mod scalar;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::lattice::{LatticeVector, Role};
use crate::newton::Series;

pub use puiseux::{
    newton_step_exact, newton_step_float, puiseux_expand_exact, puiseux_expand_float, EdgeRoot, NewtonStep,
    PuiseuxOptions, DEFAULT_MAX_RECURSION,
};
pub use scalar::{Coefficient, QuadraticNumber};

/// Default residual tolerance in float mode.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

/// An arc `t ↦ (x_1(t), …, x_n(t))` known modulo `t^truncation_order`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedArc<C> {
    cone: Cone,
    coords: Vec<Vec<C>>,
    truncation_order: usize,
}

impl<C: Coefficient> TruncatedArc<C> {
    /// `coords[i][k]` is the coefficient of `t^k` in `x_i`; terms at or past
    /// the truncation order are dropped.
    pub fn new(cone: &Cone, coords: Vec<Vec<C>>, truncation_order: usize) -> Result<TruncatedArc<C>> {
        if coords.len() != cone.rank() {
            return Err(Error::RankMismatch {
                expected: cone.rank(),
                found: coords.len(),
            });
        }
        if truncation_order == 0 {
            return Err(Error::Precondition("truncation order must be at least 1".into()));
        }
        let coords = coords
            .into_iter()
            .map(|mut c| {
                c.truncate(truncation_order);
                while c.last().is_some_and(Coefficient::is_zero) {
                    c.pop();
                }
                c
            })
            .collect();
        Ok(TruncatedArc {
            cone: cone.clone(),
            coords,
            truncation_order,
        })
    }

    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Vec<C>] {
        &self.coords
    }

    pub fn truncation_order(&self) -> usize {
        self.truncation_order
    }

    /// t-adic order of coordinate `i`, if it has a nonzero term below truncation.
    pub fn order(&self, i: usize) -> Option<usize> {
        self.coords[i].iter().position(|c| !c.is_zero())
    }

    /// The arc `t ↦ a(t^k)`.
    pub fn reparametrize(&self, k: usize) -> Result<TruncatedArc<C>> {
        if k == 0 {
            return Err(Error::Precondition("reparametrization exponent must be positive".into()));
        }
        let coords = self
            .coords
            .iter()
            .map(|c| {
                let mut out = vec![C::zero(); c.len().saturating_sub(1) * k + 1];
                for (i, x) in c.iter().enumerate() {
                    out[i * k] = x.clone();
                }
                out
            })
            .collect();
        TruncatedArc::new(&self.cone, coords, self.truncation_order * k)
    }
}

impl<C: Coefficient> fmt::Display for TruncatedArc<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_series(c, self.truncation_order))?;
        }
        write!(f, ")")
    }
}

fn format_series<C: Coefficient>(c: &[C], valid_below: usize) -> String {
    let mut out = String::new();
    for (k, x) in c.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let mono = match k {
            0 => String::new(),
            1 => "t".to_string(),
            _ => format!("t^{k}"),
        };
        let coef = x.display_coefficient();
        let (neg, abs) = match coef.strip_prefix('-') {
            Some(rest) if !rest.contains(' ') => (true, rest.to_string()),
            _ => (false, coef),
        };
        let term = match (abs.as_str(), mono.is_empty()) {
            (_, true) => abs,
            ("1", false) => mono,
            _ if abs.contains(' ') => format!("({abs})*{mono}"),
            _ => format!("{abs}*{mono}"),
        };
        match (out.is_empty(), neg) {
            (true, false) => out.push_str(&term),
            (true, true) => out.push_str(&format!("-{term}")),
            (false, false) => out.push_str(&format!(" + {term}")),
            (false, true) => out.push_str(&format!(" - {term}")),
        }
    }
    if !out.is_empty() {
        out.push_str(" + ");
    }
    out.push_str(&format!("O(t^{valid_below})"));
    out
}

/// The weight vector `(ord x_1, …, ord x_n)` of an arc, which must lie in `σ°`.
pub fn arc_weight<C: Coefficient>(a: &TruncatedArc<C>) -> Result<LatticeVector> {
    let w = LatticeVector::weight(
        (0..a.rank())
            .map(|i| a.order(i).map(BigInt::from).ok_or(Error::WeightUndetermined(i + 1)))
            .collect::<Result<Vec<_>>>()?,
    );
    if !a.cone.relative_interior_contains_lattice(&w)? {
        return Err(Error::ArcNotInterior(w.to_string()));
    }
    Ok(w)
}

/// A series in `t` whose coefficients are trustworthy below `valid_below`.
#[derive(Debug, Clone, PartialEq)]
pub struct EvaluatedSeries<C> {
    coeffs: Vec<C>,
}

impl<C: Coefficient> EvaluatedSeries<C> {
    pub fn valid_below(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coefficient(&self, k: usize) -> Option<&C> {
        self.coeffs.get(k)
    }

    pub fn coefficients(&self) -> &[C] {
        &self.coeffs
    }

    /// First order with a nonzero coefficient, exact comparison.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// First order with a coefficient of magnitude above `tol`.
    pub fn order_with_tolerance(&self, tol: f64) -> Option<usize> {
        self.coeffs.iter().position(|c| c.magnitude() > tol)
    }

    /// Largest coefficient magnitude below order `k`.
    pub fn max_magnitude_below(&self, k: usize) -> f64 {
        self.coeffs.iter().take(k).map(Coefficient::magnitude).fold(0.0, f64::max)
    }
}

impl<C: Coefficient> fmt::Display for EvaluatedSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_series(&self.coeffs, self.valid_below()))
    }
}

fn mul_trunc<C: Coefficient>(a: &[C], b: &[C], len: usize) -> Vec<C> {
    let mut out = vec![C::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    out
}

fn inv_trunc<C: Coefficient>(a: &[C], len: usize) -> Vec<C> {
    let inv0 = a[0].inv().expect("unit series");
    let mut out = vec![C::zero(); len];
    if len == 0 {
        return out;
    }
    out[0] = inv0.clone();
    for k in 1..len {
        let mut s = C::zero();
        for j in 1..=k.min(a.len() - 1) {
            s = s.add(&a[j].mul(&out[k - j]));
        }
        out[k] = s.mul(&inv0).neg();
    }
    out
}

fn pow_trunc<C: Coefficient>(a: &[C], e: i64, len: usize) -> Vec<C> {
    let base = if e < 0 { inv_trunc(a, len) } else { a[..a.len().min(len)].to_vec() };
    let mut e = e.unsigned_abs();
    let mut out = vec![C::one()];
    let mut b = base;
    while e > 0 {
        if e & 1 == 1 {
            out = mul_trunc(&out, &b, len);
        }
        e >>= 1;
        if e > 0 {
            b = mul_trunc(&b, &b, len);
        }
    }
    out.resize(len, C::zero());
    out
}

/// Substitutes the arc into `f`.
///
/// With `x_i = t^{w_i} u_i(t)` known modulo `t^T`, the monomial `χ^m` is known
/// below `⟨w, m⟩ + T − max{w_i : m_i ≠ 0}`; the result is cut at the minimum
/// of these bounds over the support of `f`.
pub fn evaluate_on_arc<C: Coefficient>(f: &Series, a: &TruncatedArc<C>) -> Result<EvaluatedSeries<C>> {
    if f.rank() != a.rank() {
        return Err(Error::RankMismatch {
            expected: a.rank(),
            found: f.rank(),
        });
    }
    let t = a.truncation_order as i64;
    let mut orders = vec![None; a.rank()];
    for m in f.support() {
        for (i, c) in m.coords().iter().enumerate() {
            if !c.is_zero() && orders[i].is_none() {
                orders[i] = Some(a.order(i).ok_or(Error::WeightUndetermined(i + 1))? as i64);
            }
        }
    }
    let mut valid = i64::MAX;
    let mut planned = Vec::new();
    for (m, c) in f.terms() {
        let exps: Vec<i64> = m
            .coords()
            .iter()
            .map(|x| x.to_i64().ok_or_else(|| Error::Precondition(format!("exponent {x} too large"))))
            .collect::<Result<_>>()?;
        let mut o = 0i64;
        let mut top = None::<i64>;
        for (i, &e) in exps.iter().enumerate() {
            if e != 0 {
                let wi = orders[i].expect("filled above");
                o += e * wi;
                top = Some(top.map_or(wi, |x: i64| x.max(wi)));
            }
        }
        if o < 0 {
            return Err(Error::ArcNotInterior(format!("monomial {m} has negative order {o}")));
        }
        if let Some(top) = top {
            valid = valid.min(o + t - top);
        }
        planned.push((exps, o, c));
    }
    if valid == i64::MAX {
        valid = t;
    }
    let len = valid.max(0) as usize;
    let mut out = vec![C::zero(); len];
    for (exps, o, c) in planned {
        if o as usize >= len {
            continue;
        }
        let rel = len - o as usize;
        let mut prod = vec![C::from_rational(c)];
        prod.resize(rel, C::zero());
        for (i, &e) in exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let wi = orders[i].expect("filled above") as usize;
            let unit = &a.coords[i][wi..];
            prod = mul_trunc(&prod, &pow_trunc(unit, e, rel), rel);
        }
        for (k, x) in prod.into_iter().enumerate() {
            out[o as usize + k] = out[o as usize + k].add(&x);
        }
    }
    Ok(EvaluatedSeries { coeffs: out })
}

/// Value of an arc-induced semivaluation on one element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SemiValue {
    Finite(usize),
    /// No nonzero term below the validity threshold.
    InfiniteUpTo(usize),
}

impl fmt::Display for SemiValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemiValue::Finite(v) => write!(f, "{v}"),
            SemiValue::InfiniteUpTo(v) => write!(f, "inf (up to t^{v})"),
        }
    }
}

/// `ν_t(f(a(t)))` for each element; values at or past truncation validity are
/// reported as infinite.
pub fn semivaluation_on<C: Coefficient>(a: &TruncatedArc<C>, elements: &[Series]) -> Result<Vec<SemiValue>> {
    arc_weight(a)?;
    elements
        .iter()
        .map(|f| {
            let s = evaluate_on_arc(f, a)?;
            Ok(match s.order() {
                Some(k) => SemiValue::Finite(k),
                None => SemiValue::InfiniteUpTo(s.valid_below()),
            })
        })
        .collect()
}

/// An orthant arc with rational coefficients given as `(order, numerator, denominator)` terms.
pub fn rational_arc(rank: usize, coords: &[&[(usize, i64, i64)]], truncation_order: usize) -> Result<TruncatedArc<QuadraticNumber>> {
    let cone = Cone::orthant(rank, Role::Weight)?;
    let coords = coords
        .iter()
        .map(|terms| {
            let len = terms.iter().map(|t| t.0 + 1).max().unwrap_or(0);
            let mut c = vec![QuadraticNumber::zero(); len];
            for &(k, n, d) in terms.iter() {
                c[k] = QuadraticNumber::rational(num_rational::BigRational::new(n.into(), d.into()));
            }
            c
        })
        .collect();
    TruncatedArc::new(&cone, coords, truncation_order)
}
