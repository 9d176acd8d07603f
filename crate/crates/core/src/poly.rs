//! Sparse multivariate polynomials over [`CycloNum`].
//!
//! Besides ring arithmetic this module carries the two operations the rest of
//! the crate is built on: the star operator `f* = f̄(∂)` acting on another
//! polynomial, and the apolar inner product `⟨f, g⟩ = (f* g)(0)`.
//!
//! Terms live in a `BTreeMap` keyed by [`ExpVec`], whose order is graded
//! lexicographic; iteration in reverse gives the canonical printing order
//! (highest degree first, then `x_1` before `x_2`).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::cyclo::{CycloNum, Rational};
use crate::error::{Error, Result};

/// Exponent vector (multi-index) of a monomial.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExpVec(Vec<u32>);

impl ExpVec {
    pub fn new(exps: Vec<u32>) -> Self {
        ExpVec(exps)
    }

    pub fn zeros(n: usize) -> Self {
        ExpVec(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        ExpVec(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    /// Componentwise `self - other`, if nonnegative.
    pub fn checked_sub(&self, other: &ExpVec) -> Option<ExpVec> {
        self.0.iter().zip(&other.0).map(|(a, b)| a.checked_sub(*b)).collect::<Option<Vec<_>>>().map(ExpVec)
    }

    pub fn add(&self, other: &ExpVec) -> ExpVec {
        ExpVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `𝒂! = ∏ a_j!`
    pub fn factorial(&self) -> BigInt {
        self.0.iter().fold(BigInt::one(), |acc, &a| acc * factorial(a))
    }
}

impl Ord for ExpVec {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ExpVec {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n as u64).fold(BigInt::one(), |acc, k| acc * k)
}

// ∏_j b_j! / (b_j - a_j)!
fn falling(b: &ExpVec, a: &ExpVec) -> BigInt {
    let mut small: u128 = 1;
    for (&bj, &aj) in b.0.iter().zip(&a.0) {
        for k in (bj - aj + 1)..=bj {
            match small.checked_mul(k as u128) {
                Some(v) => small = v,
                None => {
                    return b
                        .0
                        .iter()
                        .zip(&a.0)
                        .fold(BigInt::one(), |acc, (&bj, &aj)| ((bj - aj + 1)..=bj).fold(acc, |acc, k| acc * k))
                }
            }
        }
    }
    BigInt::from(small)
}

fn int_scalar(k: BigInt) -> Rational {
    Rational::from_integer(k)
}

/// All monomials of total degree `d` in `n` variables, in descending graded-lex order.
pub fn monomials(n: usize, d: u32) -> Vec<ExpVec> {
    fn go(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<ExpVec>) {
        if prefix.len() == n - 1 {
            prefix.push(d);
            out.push(ExpVec(prefix.clone()));
            prefix.pop();
            return;
        }
        for a in (0..=d).rev() {
            prefix.push(a);
            go(n, d - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(n, d, &mut Vec::with_capacity(n), &mut out);
    }
    out
}

/// A polynomial in `x_1, …, x_n` with cyclotomic coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    n: usize,
    terms: BTreeMap<ExpVec, CycloNum>,
}

fn add_term(terms: &mut BTreeMap<ExpVec, CycloNum>, e: ExpVec, c: &CycloNum) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match terms.entry(e) {
        Entry::Vacant(v) => {
            v.insert(c.clone());
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

impl Poly {
    /// The zero polynomial in `n ≥ 1` variables.
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroVariables);
        }
        Ok(Poly { n, terms: BTreeMap::new() })
    }

    /// Panics if `n == 0`; use [`Poly::new`] for a checked constructor.
    pub fn zero(n: usize) -> Self {
        Poly::new(n).expect("polynomials need at least one variable")
    }

    pub fn constant(n: usize, c: CycloNum) -> Self {
        Poly::monomial(n, ExpVec::zeros(n), c)
    }

    pub fn one(n: usize) -> Self {
        Poly::constant(n, CycloNum::one())
    }

    /// The variable `x_{i+1}` (0-based index).
    pub fn var(n: usize, i: usize) -> Self {
        assert!(i < n, "variable index {i} out of range for {n} variables");
        Poly::monomial(n, ExpVec::unit(n, i), CycloNum::one())
    }

    pub fn monomial(n: usize, e: ExpVec, c: CycloNum) -> Self {
        assert_eq!(e.len(), n, "exponent vector length must equal variable count");
        let mut p = Poly::zero(n);
        add_term(&mut p.terms, e, &c);
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, CycloNum)>,
    {
        let mut p = Poly::new(n)?;
        for (e, c) in terms {
            if e.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: e.len() });
            }
            add_term(&mut p.terms, ExpVec(e), &c);
        }
        Ok(p)
    }

    /// Inverse of [`Poly::coeff_vector`].
    pub fn from_coeff_vector(n: usize, basis: &[ExpVec], coeffs: &[CycloNum]) -> Self {
        let mut p = Poly::zero(n);
        for (e, c) in basis.iter().zip(coeffs) {
            add_term(&mut p.terms, e.clone(), c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExpVec, &CycloNum)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, e: &ExpVec) -> CycloNum {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    /// Coefficients against an explicit monomial basis.
    pub fn coeff_vector(&self, basis: &[ExpVec]) -> Vec<CycloNum> {
        basis.iter().map(|e| self.coeff(e)).collect()
    }

    /// Largest term in graded-lex order.
    pub fn leading_term(&self) -> Option<(&ExpVec, &CycloNum)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(ExpVec::degree)
    }

    /// The common degree of all terms; `None` for the zero polynomial or mixed degrees.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(ExpVec::degree);
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    /// Degree-`d` part.
    pub fn component(&self, d: u32) -> Poly {
        Poly {
            n: self.n,
            terms: self.terms.iter().filter(|(e, _)| e.degree() == d).map(|(e, c)| (e.clone(), c.clone())).collect(),
        }
    }

    fn check_dim(&self, other: &Poly) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            add_term(&mut out.terms, e.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            add_term(&mut out.terms, e.clone(), &-c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_dim(other)?;
        let mut out = Poly::zero(self.n);
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                add_term(&mut out.terms, a.add(b), &(c * d));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &CycloNum) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.n);
        }
        Poly { n: self.n, terms: self.terms.iter().map(|(e, d)| (e.clone(), c * d)).collect() }
    }

    pub fn scale_rational(&self, r: &Rational) -> Poly {
        self.scale(&CycloNum::from_rational(r.clone()))
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(self.n);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Conjugates every coefficient.
    pub fn conj(&self) -> Poly {
        Poly { n: self.n, terms: self.terms.iter().map(|(e, c)| (e.clone(), c.conj())).collect() }
    }

    /// Formal derivative `∂f/∂x_{j+1}` (0-based index).
    pub fn partial(&self, j: usize) -> Result<Poly> {
        if j >= self.n {
            return Err(Error::IndexOutOfRange { index: j, len: self.n });
        }
        let mut out = Poly::zero(self.n);
        for (e, c) in &self.terms {
            let a = e.0[j];
            if a == 0 {
                continue;
            }
            let mut de = e.clone();
            de.0[j] -= 1;
            add_term(&mut out.terms, de, &c.scale_rational(&int_scalar(a.into())));
        }
        Ok(out)
    }

    /// Gradient `(∂_1 f, …, ∂_n f)`.
    pub fn gradient(&self) -> Vec<Poly> {
        (0..self.n).map(|j| self.partial(j).expect("index in range")).collect()
    }

    /// `f* g = Σ_𝒂 conj(c_𝒂) ∂^𝒂 g`.
    pub fn star_apply(&self, g: &Poly) -> Result<Poly> {
        self.check_dim(g)?;
        let mut out = Poly::zero(self.n);
        let conj: Vec<(&ExpVec, CycloNum)> = self.terms.iter().map(|(e, c)| (e, c.conj())).collect();
        for (a, ca) in &conj {
            let da = a.degree();
            for (b, cb) in g.terms.range((*a).clone()..) {
                if b.degree() < da {
                    continue;
                }
                let Some(diff) = b.checked_sub(a) else { continue };
                let k = falling(b, a);
                let coeff = (ca * cb).scale_rational(&int_scalar(k));
                add_term(&mut out.terms, diff, &coeff);
            }
        }
        Ok(out)
    }

    /// Apolar inner product `⟨f, g⟩ = (f* g)(0) = Σ conj(c_𝒂) d_𝒂 𝒂!`.
    pub fn inner(&self, g: &Poly) -> Result<CycloNum> {
        self.check_dim(g)?;
        let (small, large, flip) = if self.terms.len() <= g.terms.len() { (self, g, false) } else { (g, self, true) };
        let mut acc = CycloNum::zero();
        for (e, c) in &small.terms {
            if let Some(d) = large.terms.get(e) {
                let (f_coeff, g_coeff) = if flip { (d, c) } else { (c, d) };
                let term = (&f_coeff.conj() * g_coeff).scale_rational(&int_scalar(e.factorial()));
                acc += &term;
            }
        }
        Ok(acc)
    }

    /// Substitutes `x_i ↦ Σ_j M[i][j] x_j`.
    pub fn subst_linear(&self, m: &[Vec<CycloNum>]) -> Result<Poly> {
        let max_deg = self.terms.keys().flat_map(|e| e.0.iter().copied()).max().unwrap_or(0);
        Ok(LinearSubst::new(m, self.n, max_deg)?.apply(self))
    }

    /// `Σ_j x_j ∂_j f`; equals `(deg f) f` for homogeneous `f`.
    pub fn euler(&self) -> Poly {
        let mut out = Poly::zero(self.n);
        for (e, c) in &self.terms {
            add_term(&mut out.terms, e.clone(), &c.scale_rational(&int_scalar(e.degree().into())));
        }
        out
    }

    pub fn evaluate(&self, point: &[CycloNum]) -> Result<CycloNum> {
        if point.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: point.len() });
        }
        let max_deg = self.terms.keys().flat_map(|e| e.0.iter().copied()).max().unwrap_or(0);
        let powers: Vec<Vec<CycloNum>> = point
            .iter()
            .map(|p| {
                let mut v = vec![CycloNum::one()];
                for k in 1..=max_deg as usize {
                    let next = &v[k - 1] * p;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = CycloNum::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (j, &a) in e.0.iter().enumerate() {
                if a > 0 {
                    t = &t * &powers[j][a as usize];
                }
            }
            acc += &t;
        }
        Ok(acc)
    }

    /// `Some(c)` with `self = c · other` exactly, when `other ≠ 0` and such `c` exists.
    pub fn scalar_ratio(&self, other: &Poly) -> Option<CycloNum> {
        self.check_dim(other).ok()?;
        let (e, d) = other.leading_term()?;
        let c = self.coeff(e).checked_div(d).ok()?;
        (other.scale(&c) == *self).then_some(c)
    }

    /// Scales so the graded-lex-first coefficient is 1.
    pub fn monic(&self) -> Poly {
        match self.leading_term() {
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
            None => self.clone(),
        }
    }

    fn var_name(&self, j: usize) -> String {
        if self.n <= 3 {
            ["x", "y", "z"][j].to_string()
        } else {
            format!("x{}", j + 1)
        }
    }

    fn monomial_text(&self, e: &ExpVec, latex: bool) -> String {
        let mut parts = Vec::new();
        for (j, &a) in e.0.iter().enumerate() {
            let v = if latex && self.n > 3 { format!("x_{{{}}}", j + 1) } else { self.var_name(j) };
            match a {
                0 => {}
                1 => parts.push(v),
                _ if latex => parts.push(format!("{v}^{{{a}}}")),
                _ => parts.push(format!("{v}^{a}")),
            }
        }
        parts.join(if latex { " " } else { "*" })
    }

    /// LaTeX rendering in descending graded-lex order.
    pub fn to_latex(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms().enumerate() {
            let mono = self.monomial_text(e, true);
            let (neg, body) = match c.demote().as_rational() {
                Some(r) => {
                    let abs = r.abs();
                    let body = if abs.is_one() && !mono.is_empty() {
                        String::new()
                    } else if abs.is_integer() {
                        abs.to_string()
                    } else {
                        format!("\\frac{{{}}}{{{}}}", abs.numer(), abs.denom())
                    };
                    (r.is_negative(), body)
                }
                None => (false, format!("\\left({}\\right)", cyclo_latex(c))),
            };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
            out.push_str(&mono);
        }
        out
    }
}

/// LaTeX for a cyclotomic scalar, with `\zeta_{m}^{k}`.
pub fn cyclo_latex(c: &CycloNum) -> String {
    let d = c.demote();
    let m = d.conductor();
    let mut out = String::new();
    for (k, r) in d.coeffs().iter().enumerate() {
        if r.is_zero() {
            continue;
        }
        let neg = r.is_negative();
        let abs = r.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let coeff =
            if abs.is_integer() { abs.to_string() } else { format!("\\frac{{{}}}{{{}}}", abs.numer(), abs.denom()) };
        let zeta = match k {
            0 => String::new(),
            1 => format!("\\zeta_{{{m}}}"),
            _ => format!("\\zeta_{{{m}}}^{{{k}}}"),
        };
        if k == 0 {
            out.push_str(&coeff);
        } else if abs.is_one() {
            out.push_str(&zeta);
        } else {
            out.push_str(&coeff);
            out.push_str(&zeta);
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

/// A linear substitution with cached powers of the substituted forms.
pub struct LinearSubst {
    n: usize,
    powers: Vec<Vec<Poly>>,
}

impl LinearSubst {
    /// `m` is the `n × n` substitution matrix; powers are cached up to `max_deg`.
    pub fn new(m: &[Vec<CycloNum>], n: usize, max_deg: u32) -> Result<Self> {
        if m.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: m.len() });
        }
        let mut powers = Vec::with_capacity(n);
        for row in m {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: row.len() });
            }
            let form = Poly::from_terms(n, row.iter().enumerate().map(|(j, c)| (ExpVec::unit(n, j).0, c.clone())))?;
            let mut ps = vec![Poly::one(n)];
            for k in 1..=max_deg as usize {
                let next = &ps[k - 1] * &form;
                ps.push(next);
            }
            powers.push(ps);
        }
        Ok(LinearSubst { n, powers })
    }

    pub fn apply(&self, f: &Poly) -> Poly {
        assert_eq!(f.n, self.n, "substitution applied across variable counts");
        let mut out = Poly::zero(self.n);
        for (e, c) in &f.terms {
            let mut t = Poly::constant(self.n, c.clone());
            for (i, &a) in e.0.iter().enumerate() {
                if a > 0 {
                    t = &t * &self.powers[i][a as usize];
                }
            }
            for (te, tc) in t.terms {
                add_term(&mut out.terms, te, &tc);
            }
        }
        out
    }
}

/// `det[∂_j f_i]` for `n` polynomials in `n` variables.
pub fn jacobian(fs: &[Poly]) -> Result<Poly> {
    let n = fs.first().map(Poly::nvars).ok_or(Error::DimensionMismatch { expected: 1, found: 0 })?;
    if fs.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: fs.len() });
    }
    for f in fs {
        if f.n != n {
            return Err(Error::DimensionMismatch { expected: n, found: f.n });
        }
    }
    let matrix: Vec<Vec<Poly>> = fs.iter().map(Poly::gradient).collect();
    Ok(poly_det(&matrix, n))
}

// Laplace expansion along the first row.
fn poly_det(m: &[Vec<Poly>], n: usize) -> Poly {
    match m.len() {
        1 => m[0][0].clone(),
        2 => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        k => {
            let mut acc = Poly::zero(n);
            for col in 0..k {
                if m[0][col].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Poly>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(c, _)| *c != col).map(|(_, p)| p.clone()).collect())
                    .collect();
                let term = &m[0][col] * &poly_det(&minor, n);
                acc = if col % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    /// Panics on mismatched variable counts.
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("polynomial variable counts differ")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("polynomial variable counts differ")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("polynomial variable counts differ")
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&CycloNum::from_int(-1))
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            let mono = self.monomial_text(e, false);
            let demoted = c.demote();
            let (neg, coeff) = match demoted.as_rational() {
                Some(r) => (r.is_negative(), r.abs().to_string()),
                None => {
                    let text = demoted.to_string();
                    if text.contains(" + ") || text.contains(" - ") {
                        (false, format!("({text})"))
                    } else if let Some(rest) = text.strip_prefix('-') {
                        (true, rest.to_string())
                    } else {
                        (false, text)
                    }
                }
            };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            match (coeff.as_str(), mono.is_empty()) {
                (_, true) => write!(f, "{coeff}")?,
                ("1", false) => write!(f, "{mono}")?,
                (_, false) => write!(f, "{coeff}*{mono}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[n={}]({self})", self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Poly {
        Poly::var(2, 0)
    }
    fn y() -> Poly {
        Poly::var(2, 1)
    }
    fn c(k: i64) -> CycloNum {
        CycloNum::from_int(k)
    }
    fn k(n: usize, v: i64) -> Poly {
        Poly::constant(n, c(v))
    }

    #[test]
    fn ring_arithmetic() {
        assert_eq!(&(&x() + &y()) * &(&x() - &y()), &x().pow(2) - &y().pow(2));
        let i = CycloNum::zeta(4).unwrap();
        assert!((&x().scale(&i) + &x().scale(&-&i)).is_zero());
        let sq = (&x() + &y()).pow(2);
        assert_eq!(sq, &(&x().pow(2) + &(&x() * &y()).scale(&c(2))) + &y().pow(2));
        assert_eq!(sq.to_string(), "x^2 + 2*x*y + y^2");
        assert!(x().checked_add(&Poly::var(3, 0)).is_err());
    }

    #[test]
    fn partial_derivatives() {
        let f = &x().pow(2) * &y();
        assert_eq!(f.partial(0).unwrap(), (&x() * &y()).scale(&c(2)));
        assert_eq!(f.partial(1).unwrap(), x().pow(2));
        assert!(k(2, 7).partial(0).unwrap().is_zero());
        assert!(matches!(f.partial(2), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn star_operator() {
        let x1 = Poly::var(1, 0);
        assert_eq!(x1.pow(2).star_apply(&x1.pow(3)).unwrap(), x1.scale(&c(6)));
        let i = CycloNum::zeta(4).unwrap();
        assert_eq!(x1.scale(&i).star_apply(&x1.pow(2)).unwrap(), x1.scale(&(&i * &c(-2))));
        // g*(x h) = x g*h + (∂g)* h with g = x², h = x
        let g = x1.pow(2);
        let h = x1.clone();
        let lhs = g.star_apply(&(&x1 * &h)).unwrap();
        let rhs = &(&x1 * &g.star_apply(&h).unwrap()) + &g.partial(0).unwrap().star_apply(&h).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs, k(1, 2));
    }

    #[test]
    fn inner_products() {
        let f = &x().pow(2) * &y();
        assert_eq!(f.inner(&f).unwrap(), c(2));
        assert!(f.inner(&x().pow(3)).unwrap().is_zero());
        let i = CycloNum::zeta(4).unwrap();
        assert_eq!(x().scale(&i).inner(&x()).unwrap(), -i);
    }

    #[test]
    fn linear_substitution() {
        let zero = CycloNum::zero();
        let one = CycloNum::one();
        let swap = vec![vec![zero.clone(), one.clone()], vec![one.clone(), zero.clone()]];
        let f = &x().pow(2) + &y().pow(2);
        assert_eq!(f.subst_linear(&swap).unwrap(), f);
        let w = CycloNum::zeta(3).unwrap();
        let diag = vec![vec![w.clone(), zero.clone()], vec![zero.clone(), one.clone()]];
        assert_eq!(x().subst_linear(&diag).unwrap(), x().scale(&w));
        let rot = vec![vec![zero.clone(), -&one], vec![one.clone(), zero.clone()]];
        assert_eq!((&x() * &y()).subst_linear(&rot).unwrap(), -(&x() * &y()));
        assert!(x().subst_linear(&[vec![one]]).is_err());
    }

    #[test]
    fn jacobians() {
        assert_eq!(jacobian(&[x(), y()]).unwrap(), k(2, 1));
        let j = jacobian(&[&x().pow(2) + &y().pow(2), &x().pow(4) + &y().pow(4)]).unwrap();
        let expected = &(&x() * &y().pow(3)).scale(&c(8)) - &(&x().pow(3) * &y()).scale(&c(8));
        assert_eq!(j, expected);
        assert!(jacobian(&[&x() + &y(), (&x() + &y()).scale(&c(2))]).unwrap().is_zero());
        assert!(jacobian(&[x()]).is_err());
        let (x3, y3, z3) = (Poly::var(3, 0), Poly::var(3, 1), Poly::var(3, 2));
        assert_eq!(jacobian(&[y3.clone(), x3.clone(), z3.clone()]).unwrap(), k(3, -1));
    }

    #[test]
    fn evaluation() {
        let f = &x().pow(2) + &y().pow(2);
        assert_eq!(f.evaluate(&[c(1), c(2)]).unwrap(), c(5));
        let w = CycloNum::zeta(3).unwrap();
        assert!((&x() - &y()).evaluate(&[w.clone(), w]).unwrap().is_zero());
        assert!(matches!(Poly::new(0), Err(Error::ZeroVariables)));
        assert!(f.evaluate(&[c(1)]).is_err());
    }

    #[test]
    fn ordering_and_printing() {
        let f = Poly::from_terms(2, [(vec![0, 4], c(1)), (vec![2, 2], c(-6)), (vec![4, 0], c(1))]).unwrap();
        assert_eq!(f.to_string(), "x^4 - 6*x^2*y^2 + y^4");
        assert_eq!(f.to_latex(), "x^{4} - 6x^{2} y^{2} + y^{4}");
        assert_eq!(f.homogeneous_degree(), Some(4));
        assert_eq!((&f + &x()).homogeneous_degree(), None);
        assert_eq!(monomials(2, 2), vec![ExpVec::new(vec![2, 0]), ExpVec::new(vec![1, 1]), ExpVec::new(vec![0, 2])]);
        assert_eq!(monomials(3, 3).len(), 10);
    }

    #[test]
    fn euler_identity() {
        let f = &x().pow(2) * &y();
        assert_eq!(f.euler(), f.scale(&c(3)));
        assert!(k(2, 5).euler().is_zero());
    }

    #[test]
    fn scalar_ratios() {
        let f = &x().pow(2) - &y();
        assert_eq!(f.scale(&c(-8)).scalar_ratio(&f), Some(c(-8)));
        assert_eq!(x().scalar_ratio(&f), None);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn poly(n: usize) -> impl Strategy<Value = Poly> {
            prop::collection::vec((prop::collection::vec(0u32..4, n), -6i64..=6, 0i64..4), 0..6).prop_map(
                move |terms| {
                    Poly::from_terms(
                        n,
                        terms
                            .into_iter()
                            .map(|(e, r, k)| (e, CycloNum::from_int(r) * CycloNum::zeta_pow(4, k).unwrap())),
                    )
                    .unwrap()
                },
            )
        }

        proptest! {
            #[test]
            fn ring_laws(f in poly(2), g in poly(2), h in poly(2)) {
                prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
                prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
                prop_assert_eq!(&f - &f, Poly::zero(2));
            }

            #[test]
            fn leibniz(f in poly(2), g in poly(2), h in poly(2), j in 0usize..2) {
                prop_assert_eq!((&f * &g).partial(j).unwrap(), &(&f.partial(j).unwrap() * &g) + &(&f * &g.partial(j).unwrap()));
                let xj = Poly::var(2, j);
                let lhs = h.star_apply(&(&xj * &f)).unwrap();
                let rhs = &(&xj * &h.star_apply(&f).unwrap()) + &h.partial(j).unwrap().star_apply(&f).unwrap();
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn inner_product(f in poly(3), g in poly(3), a in -4i64..=4) {
                prop_assert_eq!(f.inner(&g).unwrap(), g.inner(&f).unwrap().conj());
                let ip = f.inner(&f).unwrap();
                prop_assert!(ip.is_real());
                prop_assert_eq!(ip.is_zero(), f.is_zero());
                let scaled = g.scale(&CycloNum::from_int(a));
                prop_assert_eq!(f.inner(&scaled).unwrap(), f.inner(&g).unwrap() * CycloNum::from_int(a));
            }

            #[test]
            fn star_composition(f in poly(2), g in poly(2), h in poly(2)) {
                // (fg)* = f* g*, with g* and f* commuting
                let lhs = (&f * &g).star_apply(&h).unwrap();
                prop_assert_eq!(&lhs, &f.star_apply(&g.star_apply(&h).unwrap()).unwrap());
                prop_assert_eq!(&lhs, &g.star_apply(&f.star_apply(&h).unwrap()).unwrap());
            }
        }
    }
}
