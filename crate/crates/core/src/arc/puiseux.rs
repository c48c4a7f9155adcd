//! Newton–Puiseux iteration for plane curves over the 2-orthant.

use std::collections::BTreeMap;
use std::fmt;

use nalgebra::{DMatrix, Schur};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::scalar::{radical_form, rational_root, Coefficient, QuadraticNumber};
use super::TruncatedArc;
use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::lattice::{LatticeVector, Role};
use crate::newton::Series;

pub const DEFAULT_MAX_RECURSION: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PuiseuxOptions {
    /// Arcs are expanded until their last known y-term has t-order at least this.
    pub depth: usize,
    /// Cap on the number of steps taken at multiple roots along one branch.
    pub max_recursion: usize,
    /// Float mode only: relative threshold below which coefficients count as zero.
    pub tol: f64,
}

impl PuiseuxOptions {
    pub fn new(depth: usize) -> PuiseuxOptions {
        PuiseuxOptions {
            depth,
            max_recursion: DEFAULT_MAX_RECURSION,
            tol: super::DEFAULT_TOLERANCE,
        }
    }
}

/// One solution of the edge equation: `x_p = 1` and `y_q` a root.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeRoot<C> {
    pub x: C,
    pub y: C,
    pub multiplicity: usize,
}

/// Output of a Newton step on a compact edge.
#[derive(Debug, Clone, PartialEq)]
pub struct NewtonStep<C> {
    /// Primitive inner normal `(p, q)` of the edge.
    pub weight: LatticeVector,
    /// Coefficients of `Σ_{(α,β)∈δ} f_{αβ} y^β`, lowest power first.
    pub edge_polynomial: Vec<C>,
    pub roots: Vec<EdgeRoot<C>>,
}

type Poly<C> = BTreeMap<(u64, u64), C>;

/// Fields in which edge equations can be solved.
trait PuiseuxField: Coefficient {
    /// Extension data carried by a branch (the radicand for exact mode).
    type Ext: Clone + fmt::Debug;

    fn base_ext() -> Self::Ext;
    /// Roots of a univariate polynomial (lowest power first) with multiplicities.
    fn roots(p: &[Self], ext: &Self::Ext, tol: f64) -> Result<Vec<(Self, usize, Self::Ext)>>;
    /// `p`-th roots of `rho`: one if `all` is false, otherwise all representable ones.
    fn pth_roots(rho: &Self, p: u64, ext: &Self::Ext, all: bool) -> Result<Vec<(Self, Self::Ext)>>;
    fn negligible(&self, scale: f64, tol: f64) -> bool;
    fn sort_key(&self) -> (f64, f64) {
        let z = self.to_complex();
        (z.re, z.im)
    }
}

fn poly_string<C: Coefficient>(p: &[C]) -> String {
    let parts: Vec<String> = p
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| match k {
            0 => format!("({c})"),
            1 => format!("({c})*y"),
            _ => format!("({c})*y^{k}"),
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn trim<C: Coefficient>(p: &[C]) -> Vec<C> {
    let mut v = p.to_vec();
    while v.last().is_some_and(Coefficient::is_zero) {
        v.pop();
    }
    v
}

fn horner<C: Coefficient>(p: &[C], x: &C) -> C {
    p.iter().rev().fold(C::zero(), |acc, c| acc.mul(x).add(c))
}

/// Divides by `(y − r)`, assuming `r` is a root.
fn deflate<C: Coefficient>(p: &[C], r: &C) -> Vec<C> {
    let n = p.len() - 1;
    let mut out = vec![C::zero(); n];
    let mut carry = C::zero();
    for k in (1..=n).rev() {
        carry = carry.mul(r).add(&p[k]);
        out[k - 1] = carry.clone();
    }
    out
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut k = BigInt::from(2);
    let limit = BigInt::from(1_000_000);
    while k <= limit && &k * &k <= n {
        let mut e = 0;
        while n.is_multiple_of(&k) {
            n /= &k;
            e += 1;
        }
        if e > 0 {
            primes.push((k.clone(), e));
        }
        k += 1;
    }
    if n > BigInt::one() {
        // Either prime or beyond the trial bound; treated as a prime factor.
        primes.push((n, 1));
    }
    let mut out = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::new();
        for d in &out {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        out = next;
    }
    out
}

/// Rational roots by the rational root test; `p` has rational coefficients and `p(0) ≠ 0`.
fn rational_candidates(p: &[BigRational]) -> Vec<BigRational> {
    let lcm = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let a0 = &ints[0];
    let an = ints.last().expect("nonconstant");
    let mut out = Vec::new();
    for num in divisors(a0) {
        for den in divisors(an) {
            let r = BigRational::new(num.clone(), den);
            out.push(-r.clone());
            out.push(r);
        }
    }
    out.sort();
    out.dedup();
    out
}

impl PuiseuxField for QuadraticNumber {
    type Ext = BigInt;

    fn base_ext() -> BigInt {
        BigInt::zero()
    }

    fn roots(p: &[Self], ext: &BigInt, _tol: f64) -> Result<Vec<(Self, usize, BigInt)>> {
        let mut poly = trim(p);
        let mut out = Vec::new();
        let zeros = poly.iter().take_while(|c| c.is_zero()).count();
        if zeros > 0 {
            out.push((QuadraticNumber::zero(), zeros, ext.clone()));
            poly.drain(..zeros);
        }
        if poly.len() > 2 {
            // Rational roots; for coefficients in ℚ(√d) test against the norm polynomial.
            let rational: Option<Vec<BigRational>> = poly.iter().map(|c| c.as_rational().cloned()).collect();
            let norm = match rational {
                Some(r) => r,
                None => {
                    let conj: Vec<QuadraticNumber> = poly.iter().map(QuadraticNumber::conjugate).collect();
                    let mut n = vec![QuadraticNumber::zero(); 2 * poly.len() - 1];
                    for (i, a) in poly.iter().enumerate() {
                        for (j, b) in conj.iter().enumerate() {
                            n[i + j] = n[i + j].add(&a.mul(b));
                        }
                    }
                    n.iter()
                        .map(|c| c.as_rational().cloned().expect("norm is rational"))
                        .collect()
                }
            };
            for r in rational_candidates(&norm) {
                let r = QuadraticNumber::rational(r);
                let mut k = 0;
                while poly.len() > 1 && horner(&poly, &r).is_zero() {
                    poly = deflate(&poly, &r);
                    k += 1;
                }
                if k > 0 {
                    out.push((r, k, ext.clone()));
                }
            }
        }
        match poly.len() {
            0 | 1 => {}
            2 => {
                let r = poly[0].mul(&poly[1].inv().expect("leading coefficient")).neg();
                out.push((r, 1, ext.clone()));
            }
            3 => {
                let (a, b, c) = (&poly[2], &poly[1], &poly[0]);
                let disc = b.mul(b).sub(&QuadraticNumber::from_int(4).mul(a).mul(c));
                let two_a_inv = QuadraticNumber::from_int(2).mul(a).inv().expect("leading coefficient");
                let (s, field) = match disc.sqrt_in(ext) {
                    Some(s) => (s, ext.clone()),
                    None => match (ext.is_zero(), disc.as_rational()) {
                        (true, Some(q)) => {
                            let (c, d) = radical_form(q);
                            (QuadraticNumber::new(BigRational::zero(), c, d.clone()), d)
                        }
                        _ => return Err(Error::NoRationalRoot(poly_string(&poly))),
                    },
                };
                if s.is_zero() {
                    out.push((b.neg().mul(&two_a_inv), 2, field));
                } else {
                    out.push((b.neg().add(&s).mul(&two_a_inv), 1, field.clone()));
                    out.push((b.neg().sub(&s).mul(&two_a_inv), 1, field));
                }
            }
            _ => return Err(Error::NoRationalRoot(poly_string(&poly))),
        }
        Ok(out)
    }

    fn pth_roots(rho: &Self, p: u64, ext: &BigInt, all: bool) -> Result<Vec<(Self, BigInt)>> {
        let fail = || Error::NoRationalRoot(format!("y^{p} - ({rho})"));
        let with_neg = |r: QuadraticNumber, e: BigInt| {
            if all && p.is_multiple_of(2) {
                vec![(r.clone(), e.clone()), (r.neg(), e)]
            } else {
                vec![(r, e)]
            }
        };
        if p == 1 {
            return Ok(vec![(rho.clone(), ext.clone())]);
        }
        if p == 2 {
            if let Some(r) = rho.sqrt_in(ext) {
                return Ok(with_neg(r, ext.clone()));
            }
            if let (true, Some(q)) = (ext.is_zero(), rho.as_rational()) {
                let (c, d) = radical_form(q);
                return Ok(with_neg(QuadraticNumber::new(BigRational::zero(), c, d.clone()), d));
            }
            return Err(fail());
        }
        let q = rho.as_rational().ok_or_else(fail)?;
        let e = u32::try_from(p).map_err(|_| fail())?;
        let r = rational_root(q, e).ok_or_else(fail)?;
        Ok(with_neg(QuadraticNumber::rational(r), ext.clone()))
    }

    fn negligible(&self, _scale: f64, _tol: f64) -> bool {
        Coefficient::is_zero(self)
    }
}

fn float_roots(p: &[Complex64], tol: f64) -> Result<Vec<(Complex64, usize, ())>> {
    let scale = p.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut poly = p.to_vec();
    while poly.last().is_some_and(|c| c.norm() <= tol * scale) {
        poly.pop();
    }
    let n = poly.len().saturating_sub(1);
    if n == 0 {
        return Ok(Vec::new());
    }
    let lead = poly[n];
    let mut roots: Vec<Complex64> = if n == 1 {
        vec![-poly[0] / lead]
    } else {
        let mut m = DMatrix::<Complex64>::zeros(n, n);
        for i in 1..n {
            m[(i, i - 1)] = Complex64::new(1.0, 0.0);
        }
        for i in 0..n {
            m[(i, n - 1)] = -poly[i] / lead;
        }
        Schur::try_new(m, 1e-15, 10_000)
            .and_then(|s| s.eigenvalues())
            .ok_or_else(|| Error::Precondition(format!("eigenvalue iteration failed on {}", poly_string(&poly))))?
            .iter()
            .copied()
            .collect()
    };
    let dpoly: Vec<Complex64> = (1..=n).map(|k| poly[k] * k as f64).collect();
    for r in roots.iter_mut() {
        for _ in 0..20 {
            let v = horner(&poly, r);
            let d = horner(&dpoly, r);
            if d.norm() == 0.0 {
                break;
            }
            let next = *r - v / d;
            if horner(&poly, &next).norm() < v.norm() {
                *r = next;
            } else {
                break;
            }
        }
    }
    let ctol = tol.sqrt().max(1e-6) * 10.0;
    let mut clusters: Vec<(Complex64, Vec<Complex64>)> = Vec::new();
    for r in roots {
        match clusters.iter_mut().find(|(c, _)| (c - r).norm() <= ctol * c.norm().max(1.0)) {
            Some((c, members)) => {
                members.push(r);
                *c = members.iter().sum::<Complex64>() / members.len() as f64;
            }
            None => clusters.push((r, vec![r])),
        }
    }
    Ok(clusters.into_iter().map(|(c, m)| (c, m.len(), ())).collect())
}

impl PuiseuxField for Complex64 {
    type Ext = ();

    fn base_ext() {}

    fn roots(p: &[Self], _ext: &(), tol: f64) -> Result<Vec<(Self, usize, ())>> {
        float_roots(p, tol)
    }

    fn pth_roots(rho: &Self, p: u64, _ext: &(), all: bool) -> Result<Vec<(Self, ())>> {
        let r = rho.powf(1.0 / p as f64);
        let count = if all { p } else { 1 };
        Ok((0..count)
            .map(|k| (r * Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / p as f64), ()))
            .collect())
    }

    fn negligible(&self, scale: f64, tol: f64) -> bool {
        self.norm() <= tol * scale
    }
}

/// Compact edges of the Newton polygon, from the top-left vertex downwards.
fn newton_edges(points: impl Iterator<Item = (u64, u64)>) -> Vec<((u64, u64), (u64, u64))> {
    let mut lowest: BTreeMap<u64, u64> = BTreeMap::new();
    for (a, b) in points {
        let e = lowest.entry(a).or_insert(b);
        *e = (*e).min(b);
    }
    let Some(bmin) = lowest.values().min().copied() else {
        return Vec::new();
    };
    let astar = lowest.iter().find(|(_, &b)| b == bmin).map(|(&a, _)| a).expect("nonempty");
    let mut hull: Vec<(u64, u64)> = Vec::new();
    for (&a, &b) in lowest.range(..=astar) {
        if hull.last().is_some_and(|&(_, lb)| lb <= b) {
            continue;
        }
        while hull.len() >= 2 {
            let (o, p) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (p.0 as i128 - o.0 as i128) * (b as i128 - o.1 as i128)
                - (p.1 as i128 - o.1 as i128) * (a as i128 - o.0 as i128);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push((a, b));
    }
    hull.windows(2).map(|w| (w[0], w[1])).collect()
}

struct Edge {
    p: u64,
    q: u64,
    m: u64,
    beta_low: u64,
    len: u64,
}

fn edge_data(top: (u64, u64), bottom: (u64, u64)) -> Edge {
    let db = top.1 - bottom.1;
    let da = bottom.0 - top.0;
    let g = db.gcd(&da);
    let (p, q) = (db / g, da / g);
    Edge {
        p,
        q,
        m: p * top.0 + q * top.1,
        beta_low: bottom.1,
        len: g,
    }
}

/// Coefficients of `Q` with `Σ_{δ} f_{αβ} y^β = y^{β_low} Q(y^p)`.
fn edge_poly<C: Coefficient>(poly: &Poly<C>, e: &Edge) -> Vec<C> {
    (0..=e.len)
        .map(|j| {
            let beta = e.beta_low + j * e.p;
            let rest = e.m - e.q * beta;
            poly.get(&(rest / e.p, beta))
                .filter(|_| rest.is_multiple_of(e.p))
                .cloned()
                .unwrap_or_else(C::zero)
        })
        .collect()
}

/// `g(s^p, s^q (c + y)) / s^m`.
fn transform<C: PuiseuxField>(poly: &Poly<C>, e: &Edge, c: &C, tol: f64) -> Poly<C> {
    let max_beta = poly.keys().map(|k| k.1).max().unwrap_or(0) as usize;
    let cpow: Vec<C> = std::iter::successors(Some(C::one()), |x| Some(x.mul(c)))
        .take(max_beta + 1)
        .collect();
    let mut out: Poly<C> = BTreeMap::new();
    for (&(a, b), coef) in poly {
        let base = e.p * a + e.q * b - e.m;
        let mut binom = BigInt::one();
        for j in 0..=b {
            let term = coef
                .mul(&C::from_rational(&BigRational::from_integer(binom.clone())))
                .mul(&cpow[(b - j) as usize]);
            let slot = out.entry((base, j)).or_insert_with(C::zero);
            *slot = slot.add(&term);
            binom = binom * BigInt::from(b - j) / BigInt::from(j + 1);
        }
    }
    let scale = out.values().map(Coefficient::magnitude).fold(0.0, f64::max);
    out.retain(|_, v| !v.negligible(scale, tol));
    out
}

fn plane_poly<C: Coefficient>(f: &Series) -> Result<Poly<C>> {
    if f.rank() != 2 {
        return Err(Error::WrongRank {
            expected: 2,
            found: f.rank(),
        });
    }
    if f.cone() != &Cone::orthant(2, Role::Weight)? {
        return Err(Error::Precondition("Puiseux expansion needs a series over the 2-orthant".into()));
    }
    let mut poly = BTreeMap::new();
    for (m, c) in f.terms() {
        let a = m.coords()[0].to_u64().expect("orthant exponent");
        let b = m.coords()[1].to_u64().expect("orthant exponent");
        poly.insert((a, b), C::from_rational(c));
    }
    let pure_x = poly.keys().any(|k| k.1 == 0);
    let pure_y = poly.keys().any(|k| k.0 == 0);
    if !(pure_x && pure_y) {
        return Err(Error::NotInterior(f.to_string()));
    }
    Ok(poly)
}

fn newton_step<C: PuiseuxField>(f: &Series, edge: [&LatticeVector; 2], tol: f64) -> Result<NewtonStep<C>> {
    let poly: Poly<C> = plane_poly(f)?;
    let as_pair = |v: &LatticeVector| -> Option<(u64, u64)> {
        (v.rank() == 2).then(|| (v.coords()[0].to_u64(), v.coords()[1].to_u64())).and_then(|(a, b)| Some((a?, b?)))
    };
    let (e0, e1) = (as_pair(edge[0]).ok_or(Error::NotCompactEdge)?, as_pair(edge[1]).ok_or(Error::NotCompactEdge)?);
    let (top, bottom) = newton_edges(poly.keys().copied())
        .into_iter()
        .find(|&(t, b)| (t, b) == (e0, e1) || (t, b) == (e1, e0))
        .ok_or(Error::NotCompactEdge)?;
    let e = edge_data(top, bottom);
    let q_poly = edge_poly(&poly, &e);
    let mut edge_polynomial = vec![C::zero(); (e.beta_low + e.len * e.p + 1) as usize];
    for (j, c) in q_poly.iter().enumerate() {
        edge_polynomial[(e.beta_low + j as u64 * e.p) as usize] = c.clone();
    }
    let mut roots = Vec::new();
    for (rho, k, ext) in C::roots(&q_poly, &C::base_ext(), tol)? {
        for (y, _) in C::pth_roots(&rho, e.p, &ext, true)? {
            roots.push(EdgeRoot {
                x: C::one(),
                y,
                multiplicity: k,
            });
        }
    }
    roots.sort_by(|a, b| {
        let (ka, kb) = (a.y.sort_key(), b.y.sort_key());
        ka.0.total_cmp(&kb.0).then(ka.1.total_cmp(&kb.1))
    });
    Ok(NewtonStep {
        weight: LatticeVector::weight([e.p as i64, e.q as i64]),
        edge_polynomial,
        roots,
    })
}

/// Newton step with exact coefficients in `ℚ(√d)`; fails if the roots need more.
pub fn newton_step_exact(f: &Series, edge: [&LatticeVector; 2]) -> Result<NewtonStep<QuadraticNumber>> {
    newton_step(f, edge, 0.0)
}

/// Newton step with all complex roots found numerically.
pub fn newton_step_float(f: &Series, edge: [&LatticeVector; 2], tol: f64) -> Result<NewtonStep<Complex64>> {
    newton_step(f, edge, tol)
}

struct Branch<C: PuiseuxField> {
    poly: Poly<C>,
    ext: C::Ext,
    /// `x = t^ramification`.
    ramification: u64,
    /// Known y-terms `(order, coefficient)`.
    y: Vec<(u64, C)>,
    last: u64,
    multiple_steps: usize,
}

impl<C: PuiseuxField> Branch<C> {
    fn into_arc(self, truncation: u64) -> Result<TruncatedArc<C>> {
        let mut x = vec![C::zero(); self.ramification as usize + 1];
        x[self.ramification as usize] = C::one();
        let mut y = vec![C::zero(); self.last as usize + 1];
        for (k, c) in self.y {
            y[k as usize] = c;
        }
        TruncatedArc::new(&Cone::orthant(2, Role::Weight)?, vec![x, y], truncation as usize)
    }
}

fn expand<C: PuiseuxField>(f: &Series, opts: &PuiseuxOptions) -> Result<Vec<TruncatedArc<C>>> {
    if opts.depth == 0 {
        return Err(Error::Precondition("depth must be positive".into()));
    }
    let depth = opts.depth as u64;
    let mut stack = vec![Branch::<C> {
        poly: plane_poly(f)?,
        ext: C::base_ext(),
        ramification: 1,
        y: Vec::new(),
        last: 0,
        multiple_steps: 0,
    }];
    let mut arcs = Vec::new();
    while let Some(mut b) = stack.pop() {
        if !b.y.is_empty() && b.last >= depth && b.last >= b.ramification {
            let t = b.last + 1;
            arcs.push(b.into_arc(t)?);
            continue;
        }
        let kmin = b.poly.keys().map(|k| k.1).min();
        if !b.y.is_empty() && kmin != Some(0) {
            // y = 0 solves the current equation: the known terms are exact.
            let t = depth.max(b.last).max(b.ramification) + 1;
            if let Some(k) = kmin {
                b.poly = b.poly.into_iter().map(|((a, beta), c)| ((a, beta - k), c)).collect();
            }
            let mut exact = Branch {
                poly: BTreeMap::new(),
                ext: b.ext.clone(),
                ramification: b.ramification,
                y: b.y.clone(),
                last: b.last,
                multiple_steps: b.multiple_steps,
            };
            exact.last = exact.y.iter().map(|t| t.0).max().unwrap_or(0);
            arcs.push(exact.into_arc(t)?);
            if b.poly.is_empty() {
                continue;
            }
        }
        for (top, bottom) in newton_edges(b.poly.keys().copied()) {
            let e = edge_data(top, bottom);
            let q_poly = edge_poly(&b.poly, &e);
            for (rho, k, ext) in C::roots(&q_poly, &b.ext, opts.tol)? {
                if rho.is_zero() {
                    continue;
                }
                let steps = b.multiple_steps + usize::from(k > 1);
                if steps > opts.max_recursion {
                    return Err(Error::DepthExceeded(opts.max_recursion));
                }
                let (c, ext) = C::pth_roots(&rho, e.p, &ext, false)?.remove(0);
                let mut y: Vec<(u64, C)> = b.y.iter().map(|(o, v)| (o * e.p, v.clone())).collect();
                let last = b.last * e.p + e.q;
                y.push((last, c.clone()));
                stack.push(Branch {
                    poly: transform(&b.poly, &e, &c, opts.tol),
                    ext,
                    ramification: b.ramification * e.p,
                    y,
                    last,
                    multiple_steps: steps,
                });
            }
        }
    }
    arcs.sort_by(|a, b| arc_key(a).partial_cmp(&arc_key(b)).unwrap_or(std::cmp::Ordering::Equal));
    Ok(arcs)
}

fn arc_key<C: PuiseuxField>(a: &TruncatedArc<C>) -> (Vec<usize>, Vec<(f64, f64)>) {
    let orders = (0..a.rank()).map(|i| a.order(i).unwrap_or(usize::MAX)).collect();
    let coeffs = a.coords()[1].iter().map(PuiseuxField::sort_key).collect();
    (orders, coeffs)
}

/// Newton–Puiseux expansion over `ℚ(√d)`, one arc per branch direction found.
///
/// Fails with [`Error::NoRationalRoot`] when an edge equation needs roots
/// outside a single quadratic extension; float mode handles those.
pub fn puiseux_expand_exact(f: &Series, opts: &PuiseuxOptions) -> Result<Vec<TruncatedArc<QuadraticNumber>>> {
    expand(f, opts)
}

/// Newton–Puiseux expansion with complex floating-point coefficients.
pub fn puiseux_expand_float(f: &Series, opts: &PuiseuxOptions) -> Result<Vec<TruncatedArc<Complex64>>> {
    expand(f, opts)
}
