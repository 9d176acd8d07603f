//! Exact arithmetic in cyclotomic fields `Q(ζ_m)`.
//!
//! A [`CycloNum`] stores its conductor `m` and a coefficient vector of length
//! `φ(m)` in the power basis `1, ζ_m, …, ζ_m^{φ(m)-1}`, reduced modulo the
//! `m`-th cyclotomic polynomial. Binary operations promote both operands to
//! the lcm of their conductors; nothing is demoted automatically. Call
//! [`CycloNum::demote`] for the minimal-conductor form.

use std::collections::HashMap;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::atomic::{AtomicU32, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar; always stored in lowest terms with positive denominator.
pub type Rational = BigRational;

static CONDUCTOR_CAP: AtomicU32 = AtomicU32::new(120);

/// Largest conductor that constructors and promotions accept (default 120).
pub fn conductor_cap() -> u32 {
    CONDUCTOR_CAP.load(Ordering::Relaxed)
}

/// Changes the process-wide conductor cap.
pub fn set_conductor_cap(cap: u32) {
    CONDUCTOR_CAP.store(cap.max(1), Ordering::Relaxed);
}

/// Euler's totient.
pub fn totient(m: u32) -> usize {
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result as usize
}

fn divisors(m: u32) -> Vec<u32> {
    (1..=m).filter(|d| m.is_multiple_of(*d)).collect()
}

/// Coefficients (constant term first) of the `m`-th cyclotomic polynomial,
/// computed by dividing `t^m - 1` by `Φ_d` for every proper divisor `d`.
pub fn cyclotomic_polynomial(m: u32) -> Vec<i64> {
    fn go(m: u32, memo: &mut HashMap<u32, Vec<i64>>) -> Vec<i64> {
        if let Some(p) = memo.get(&m) {
            return p.clone();
        }
        let mut num = vec![0i64; m as usize + 1];
        num[0] = -1;
        num[m as usize] = 1;
        for d in divisors(m) {
            if d == m {
                continue;
            }
            let den = go(d, memo);
            num = divide_monic(&num, &den);
        }
        memo.insert(m, num.clone());
        num
    }
    go(m, &mut HashMap::new())
}

// exact division by a monic integer polynomial
fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn];
        quot[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// Per-conductor tables: `Φ_m` and the reduced images of `ζ_m^e` for `0 ≤ e < m`.
pub(crate) struct Field {
    conductor: u32,
    degree: usize,
    powers: Vec<Vec<i64>>,
}

impl Field {
    fn build(m: u32) -> Field {
        let modulus = cyclotomic_polynomial(m);
        let degree = modulus.len() - 1;
        let mut powers = Vec::with_capacity(m as usize);
        let mut cur = vec![0i64; degree];
        cur[0] = 1;
        for _ in 0..m {
            powers.push(cur.clone());
            // multiply by t and fold t^degree back with the monic modulus
            let top = cur[degree - 1];
            for k in (1..degree).rev() {
                cur[k] = cur[k - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for k in 0..degree {
                    cur[k] = cur[k]
                        .checked_sub(top.checked_mul(modulus[k]).expect("overflow in ζ table"))
                        .expect("overflow in ζ table");
                }
            }
        }
        Field { conductor: m, degree, powers }
    }
}

fn field_table() -> &'static Mutex<HashMap<u32, Arc<Field>>> {
    static FIELDS: OnceLock<Mutex<HashMap<u32, Arc<Field>>>> = OnceLock::new();
    FIELDS.get_or_init(|| Mutex::new(HashMap::new()))
}

fn field_unchecked(m: u32) -> Arc<Field> {
    let mut table = field_table().lock().expect("field table poisoned");
    table.entry(m).or_insert_with(|| Arc::new(Field::build(m))).clone()
}

fn field(m: u64) -> Result<Arc<Field>> {
    let cap = conductor_cap();
    if m == 0 || m > cap as u64 {
        return Err(Error::ConductorTooLarge { conductor: m, cap });
    }
    Ok(field_unchecked(m as u32))
}

/// An exact element of `Q(ζ_m)`.
#[derive(Clone)]
pub struct CycloNum {
    field: Arc<Field>,
    coeffs: Vec<Rational>,
}

impl CycloNum {
    fn from_parts(field: Arc<Field>, coeffs: Vec<Rational>) -> Self {
        debug_assert_eq!(coeffs.len(), field.degree);
        CycloNum { field, coeffs }
    }

    pub fn zero() -> Self {
        CycloNum::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        CycloNum::from_rational(Rational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        CycloNum::from_parts(field_unchecked(1), vec![r])
    }

    pub fn from_int(i: i64) -> Self {
        CycloNum::from_rational(Rational::from_integer(BigInt::from(i)))
    }

    pub fn from_ratio(p: i64, q: i64) -> Self {
        CycloNum::from_rational(Rational::new(BigInt::from(p), BigInt::from(q)))
    }

    /// The primitive root `ζ_m = exp(2πi/m)`.
    pub fn zeta(m: u32) -> Result<Self> {
        CycloNum::zeta_pow(m, 1)
    }

    /// `ζ_m^k` for any integer `k`.
    pub fn zeta_pow(m: u32, k: i64) -> Result<Self> {
        let f = field(m as u64)?;
        let e = k.rem_euclid(m as i64) as usize;
        let coeffs = f.powers[e].iter().map(|&c| Rational::from_integer(c.into())).collect();
        Ok(CycloNum::from_parts(f, coeffs))
    }

    /// Builds `Σ r_j ζ_m^{k_j}` from arbitrary (exponent, coefficient) pairs.
    pub fn from_exponent_terms<I>(m: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, Rational)>,
    {
        let f = field(m as u64)?;
        let mut coeffs = vec![Rational::zero(); f.degree];
        for (k, r) in terms {
            let e = k.rem_euclid(m as i64) as usize;
            accumulate_power(&mut coeffs, &f.powers[e], &r);
        }
        Ok(CycloNum::from_parts(f, coeffs))
    }

    pub fn conductor(&self) -> u32 {
        self.field.conductor
    }

    /// Power-basis coefficients at the current conductor.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// Re-expresses the value in `Q(ζ_m)`; `m` must be a multiple of the conductor.
    pub fn promote(&self, m: u32) -> Result<Self> {
        let own = self.conductor();
        if !m.is_multiple_of(own) {
            return Err(Error::Inconsistent(format!("cannot promote conductor {own} to {m}")));
        }
        if m == own {
            return Ok(self.clone());
        }
        let f = field(m as u64)?;
        Ok(self.promote_into(&f))
    }

    fn promote_into(&self, f: &Arc<Field>) -> Self {
        if f.conductor == self.conductor() {
            return self.clone();
        }
        let step = (f.conductor / self.conductor()) as usize;
        let mut coeffs = vec![Rational::zero(); f.degree];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                accumulate_power(&mut coeffs, &f.powers[(k * step) % f.conductor as usize], c);
            }
        }
        CycloNum::from_parts(f.clone(), coeffs)
    }

    /// Minimal-conductor representative of the same number.
    pub fn demote(&self) -> Self {
        let m = self.conductor();
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            return CycloNum::from_rational(self.coeffs[0].clone());
        }
        for d in divisors(m) {
            if d == 1 || d == m || d % 4 == 2 {
                continue;
            }
            let sub = field_unchecked(d);
            let step = (m / d) as usize;
            let rows: Vec<Vec<Rational>> = (0..self.field.degree)
                .map(|r| {
                    (0..sub.degree)
                        .map(|k| Rational::from_integer(self.field.powers[(k * step) % m as usize][r].into()))
                        .collect()
                })
                .collect();
            if let Some(x) = solve_rational(rows, self.coeffs.clone()) {
                return CycloNum::from_parts(sub, x);
            }
        }
        self.clone()
    }

    /// Complex conjugate: the automorphism `ζ_m ↦ ζ_m^{m-1}`.
    pub fn conj(&self) -> Self {
        let m = self.conductor() as usize;
        let mut coeffs = vec![Rational::zero(); self.field.degree];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                accumulate_power(&mut coeffs, &self.field.powers[(m - k) % m], c);
            }
        }
        CycloNum::from_parts(self.field.clone(), coeffs)
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// The value as a rational, when it is one.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Multiplicative inverse, by solving `a·x = 1` in the power basis over `Q`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = &self.field;
        if f.degree == 1 {
            return Ok(CycloNum::from_parts(f.clone(), vec![self.coeffs[0].recip()]));
        }
        // column k of the multiplication matrix is a·ζ^k
        let columns: Vec<Vec<Rational>> = (0..f.degree).map(|k| self.mul_zeta_power(k).coeffs).collect();
        let rows: Vec<Vec<Rational>> =
            (0..f.degree).map(|r| columns.iter().map(|col| col[r].clone()).collect()).collect();
        let mut rhs = vec![Rational::zero(); f.degree];
        rhs[0] = Rational::one();
        let x = solve_rational(rows, rhs).ok_or(Error::DivisionByZero)?;
        Ok(CycloNum::from_parts(f.clone(), x))
    }

    fn mul_zeta_power(&self, k: usize) -> Self {
        let f = &self.field;
        let m = f.conductor as usize;
        let mut coeffs = vec![Rational::zero(); f.degree];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                accumulate_power(&mut coeffs, &f.powers[(j + k) % m], c);
            }
        }
        CycloNum::from_parts(f.clone(), coeffs)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = CycloNum::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let (f, a, b) = align(self, other)?;
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        Ok(CycloNum::from_parts(f, coeffs))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        let (f, a, b) = align(self, other)?;
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect();
        Ok(CycloNum::from_parts(f, coeffs))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        // scalar fast paths
        if other.field.degree == 1 && self.conductor().is_multiple_of(other.conductor()) {
            return Ok(self.scale_rational(&other.coeffs[0]));
        }
        if self.field.degree == 1 && other.conductor().is_multiple_of(self.conductor()) {
            return Ok(other.scale_rational(&self.coeffs[0]));
        }
        let (f, a, b) = align(self, other)?;
        let d = f.degree;
        let m = f.conductor as usize;
        let mut raw = vec![Rational::zero(); 2 * d - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    raw[i + j] += x * y;
                }
            }
        }
        let mut coeffs: Vec<Rational> = raw.drain(..d).collect();
        for (off, c) in raw.iter().enumerate() {
            if !c.is_zero() {
                accumulate_power(&mut coeffs, &f.powers[(d + off) % m], c);
            }
        }
        Ok(CycloNum::from_parts(f, coeffs))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.checked_mul(&other.inv()?)
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        let coeffs = self.coeffs.iter().map(|c| c * r).collect();
        CycloNum::from_parts(self.field.clone(), coeffs)
    }

    /// Floating-point value under the embedding `ζ_m ↦ exp(2πi/m)`; debug output only.
    pub fn approx(&self) -> (f64, f64) {
        let m = self.conductor() as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.coeffs.iter().enumerate() {
            let v = c.to_f64().unwrap_or(f64::NAN);
            let angle = 2.0 * std::f64::consts::PI * k as f64 / m;
            re += v * angle.cos();
            im += v * angle.sin();
        }
        (re, im)
    }

    /// Text literal `m; k1:r1, k2:r2, ...` of the minimal-conductor form.
    pub fn to_literal(&self) -> String {
        let d = self.demote();
        let terms: Vec<String> =
            d.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| format!("{k}:{c}")).collect();
        if terms.is_empty() {
            format!("{}; 0:0", d.conductor())
        } else {
            format!("{}; {}", d.conductor(), terms.join(", "))
        }
    }

    pub fn parse_literal(s: &str) -> Result<Self> {
        let err = |msg: String| Error::Parse { what: "cyclotomic literal", msg };
        let (head, tail) = s.split_once(';').ok_or_else(|| err(format!("missing ';' in {s:?}")))?;
        let m: u32 = head.trim().parse().map_err(|_| err(format!("bad conductor {:?}", head.trim())))?;
        if m == 0 {
            return Err(err("conductor must be positive".into()));
        }
        let mut terms = Vec::new();
        for part in tail.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (k, r) = part.split_once(':').ok_or_else(|| err(format!("term {part:?} lacks ':'")))?;
            let k: i64 = k.trim().parse().map_err(|_| err(format!("bad exponent {k:?}")))?;
            let r = parse_rational(r.trim()).ok_or_else(|| err(format!("bad rational {r:?}")))?;
            terms.push((k, r));
        }
        CycloNum::from_exponent_terms(m, terms)
    }
}

/// Parses `p/q` or `p`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(Rational::new(p, q))
            }
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

fn accumulate_power(acc: &mut [Rational], power: &[i64], c: &Rational) {
    for (slot, &p) in acc.iter_mut().zip(power) {
        match p {
            0 => {}
            1 => *slot += c,
            -1 => *slot -= c,
            _ => *slot += c * Rational::from_integer(p.into()),
        }
    }
}

fn align(a: &CycloNum, b: &CycloNum) -> Result<(Arc<Field>, CycloNum, CycloNum)> {
    if a.conductor() == b.conductor() {
        return Ok((a.field.clone(), a.clone(), b.clone()));
    }
    let m = (a.conductor() as u64).lcm(&(b.conductor() as u64));
    let f = field(m)?;
    Ok((f.clone(), a.promote_into(&f), b.promote_into(&f)))
}

/// Solves `A x = b` over `Q` (A given by rows, possibly overdetermined).
/// Returns `None` when the system is inconsistent or underdetermined.
pub(crate) fn solve_rational(mut rows: Vec<Vec<Rational>>, rhs: Vec<Rational>) -> Option<Vec<Rational>> {
    let ncols = rows.first().map_or(0, Vec::len);
    for (row, b) in rows.iter_mut().zip(rhs) {
        row.push(b);
    }
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..ncols {
        let Some(sel) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, sel);
        let inv = rows[pivot_row][col].recip();
        for v in rows[pivot_row].iter_mut() {
            *v = &*v * &inv;
        }
        let prow = rows[pivot_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != pivot_row && !row[col].is_zero() {
                let factor = row[col].clone();
                for (v, p) in row.iter_mut().zip(&prow) {
                    if !p.is_zero() {
                        *v -= &factor * p;
                    }
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    if pivots.len() < ncols {
        return None;
    }
    if rows[pivot_row..].iter().any(|r| !r[ncols].is_zero()) {
        return None;
    }
    Some(rows[..ncols].iter().map(|r| r[ncols].clone()).collect())
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor() == other.conductor() {
            return self.coeffs == other.coeffs;
        }
        let m = (self.conductor()).lcm(&other.conductor());
        let f = field_unchecked(m);
        self.promote_into(&f).coeffs == other.promote_into(&f).coeffs
    }
}

impl Eq for CycloNum {}

impl Default for CycloNum {
    fn default() -> Self {
        CycloNum::zero()
    }
}

impl Zero for CycloNum {
    fn zero() -> Self {
        CycloNum::zero()
    }
    fn is_zero(&self) -> bool {
        CycloNum::is_zero(self)
    }
}

impl One for CycloNum {
    fn one() -> Self {
        CycloNum::one()
    }
}

impl From<i64> for CycloNum {
    fn from(i: i64) -> Self {
        CycloNum::from_int(i)
    }
}

impl From<Rational> for CycloNum {
    fn from(r: Rational) -> Self {
        CycloNum::from_rational(r)
    }
}

impl FromStr for CycloNum {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        CycloNum::parse_literal(s)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&CycloNum> for &CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: &CycloNum) -> CycloNum {
                self.$checked(rhs).expect("cyclotomic conductor overflow")
            }
        }
        impl $trait<CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: CycloNum) -> CycloNum {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: &CycloNum) -> CycloNum {
                (&self).$method(rhs)
            }
        }
        impl $trait<CycloNum> for &CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: CycloNum) -> CycloNum {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Div<&CycloNum> for &CycloNum {
    type Output = CycloNum;
    /// Panics on division by zero.
    fn div(self, rhs: &CycloNum) -> CycloNum {
        self.checked_div(rhs).expect("cyclotomic division")
    }
}

impl Div<CycloNum> for CycloNum {
    type Output = CycloNum;
    fn div(self, rhs: CycloNum) -> CycloNum {
        &self / &rhs
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum::from_parts(self.field.clone(), self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -&self
    }
}

impl AddAssign<&CycloNum> for CycloNum {
    fn add_assign(&mut self, rhs: &CycloNum) {
        if self.conductor() == rhs.conductor() {
            for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                if !b.is_zero() {
                    *a += b;
                }
            }
        } else {
            *self = &*self + rhs;
        }
    }
}

impl SubAssign<&CycloNum> for CycloNum {
    fn sub_assign(&mut self, rhs: &CycloNum) {
        if self.conductor() == rhs.conductor() {
            for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                if !b.is_zero() {
                    *a -= b;
                }
            }
        } else {
            *self = &*self - rhs;
        }
    }
}

impl MulAssign<&CycloNum> for CycloNum {
    fn mul_assign(&mut self, rhs: &CycloNum) {
        *self = &*self * rhs;
    }
}

impl Sum for CycloNum {
    fn sum<I: Iterator<Item = CycloNum>>(iter: I) -> Self {
        iter.fold(CycloNum::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

impl Product for CycloNum {
    fn product<I: Iterator<Item = CycloNum>>(iter: I) -> Self {
        iter.fold(CycloNum::one(), |acc, x| &acc * &x)
    }
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.demote();
        if let Some(r) = d.as_rational() {
            return write!(f, "{r}");
        }
        let m = d.conductor();
        let mut first = true;
        for (k, c) in d.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let zeta = match k {
                0 => String::new(),
                1 => format!("E({m})"),
                _ => format!("E({m})^{k}"),
            };
            match (k, abs.is_one()) {
                (0, _) => write!(f, "{abs}")?,
                (_, true) => write!(f, "{zeta}")?,
                _ => write!(f, "{abs}*{zeta}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloNum({})", self.to_literal())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: u32) -> CycloNum {
        CycloNum::zeta(m).unwrap()
    }

    fn q(p: i64, d: i64) -> CycloNum {
        CycloNum::from_ratio(p, d)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        // Φ_105 is the first with a coefficient of absolute value 2
        assert!(cyclotomic_polynomial(105).contains(&-2));
        for m in 1..=60 {
            assert_eq!(cyclotomic_polynomial(m).len() - 1, totient(m));
        }
    }

    #[test]
    fn cyclotomic_relation() {
        let w = z(3);
        assert!((&w * &w + &w + CycloNum::one()).is_zero());
        assert_eq!(&z(4) * &z(4), CycloNum::from_int(-1));
    }

    #[test]
    fn promotion_on_addition() {
        let one = CycloNum::one().promote(2).unwrap();
        assert_eq!(one.conductor(), 2);
        let s = &one + &z(6);
        assert_eq!(s.conductor(), 6);
        let expected = CycloNum::from_exponent_terms(6, [(0, Rational::one()), (1, Rational::one())]).unwrap();
        assert_eq!(s, expected);
    }

    #[test]
    fn inverses() {
        assert_eq!(CycloNum::from_int(2).inv().unwrap(), q(1, 2));
        let i = z(4);
        let a = CycloNum::one() + &i;
        let expected = (CycloNum::one() - &i).scale_rational(&Rational::new(1.into(), 2.into()));
        assert_eq!(a.inv().unwrap(), expected);
        let z5 = z(5);
        assert_eq!(z5.inv().unwrap(), z5.pow(4));
        assert_eq!(CycloNum::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn conjugation() {
        assert_eq!(z(4).conj(), -z(4));
        assert_eq!(q(3, 7).conj(), q(3, 7));
        assert_eq!(z(3).conj(), -CycloNum::one() - z(3));
    }

    #[test]
    fn reality() {
        let w = z(3);
        let s = &w + &w.conj();
        assert!(s.is_real());
        assert_eq!(s.as_rational(), Some(Rational::from_integer((-1).into())));
        assert_eq!(z(4).as_rational(), None);
        let t = z(6) + z(6).pow(5);
        assert_eq!(t.as_rational(), Some(Rational::one()));
    }

    #[test]
    fn demotion() {
        let i12 = z(12).pow(3);
        let d = i12.demote();
        assert_eq!(d.conductor(), 4);
        assert_eq!(d, z(4));
        assert_eq!(z(6).demote().conductor(), 3);
        assert_eq!(CycloNum::from_int(5).promote(20).unwrap().demote().conductor(), 1);
        // sqrt(3) = ζ12 + ζ12^11 lives at conductor 12
        let s3 = z(12) + z(12).pow(11);
        assert_eq!(s3.demote().conductor(), 12);
        assert_eq!(&s3 * &s3, CycloNum::from_int(3));
    }

    #[test]
    fn literals() {
        let a = CycloNum::parse_literal("4; 0:1, 1:-1/2").unwrap();
        assert_eq!(a, CycloNum::one() - z(4).scale_rational(&Rational::new(1.into(), 2.into())));
        assert_eq!(a.to_literal(), "4; 0:1, 1:-1/2");
        assert_eq!(CycloNum::parse_literal(&a.to_literal()).unwrap(), a);
        assert_eq!(CycloNum::zero().to_literal(), "1; 0:0");
        assert_eq!(CycloNum::parse_literal("3; 2:1").unwrap(), -CycloNum::one() - z(3));
        assert!(CycloNum::parse_literal("3 2:1").is_err());
        assert!(CycloNum::parse_literal("3; 2:1/0").is_err());
    }

    #[test]
    fn conductor_cap_is_enforced() {
        assert!(matches!(CycloNum::zeta(121), Err(Error::ConductorTooLarge { conductor: 121, cap: 120 })));
        assert!(z(8).checked_mul(&z(15)).is_ok());
        assert!(z(7).checked_mul(&z(20)).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(q(-3, 2).to_string(), "-3/2");
        assert_eq!((z(4) - CycloNum::from_int(2)).to_string(), "-2 + E(4)");
        assert_eq!(z(3).conj().to_string(), "-1 - E(3)");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_cyclo() -> impl Strategy<Value = CycloNum> {
            (prop::sample::select(vec![1u32, 3, 4, 5, 8, 12]), prop::collection::vec((-5i64..=5, 1i64..=3), 1..5))
                .prop_map(|(m, cs)| {
                    CycloNum::from_exponent_terms(
                        m,
                        cs.into_iter()
                            .enumerate()
                            .map(|(k, (p, d))| (k as i64 * 7 % m as i64, Rational::new(p.into(), d.into()))),
                    )
                    .unwrap()
                })
        }

        proptest! {
            #[test]
            fn field_axioms(a in small_cyclo(), b in small_cyclo(), c in small_cyclo()) {
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                prop_assert_eq!(&a * &b, &b * &a);
                if !a.is_zero() {
                    prop_assert!((&a * &a.inv().unwrap()).is_one());
                }
            }

            #[test]
            fn conj_is_an_involutive_automorphism(a in small_cyclo(), b in small_cyclo()) {
                prop_assert_eq!(a.conj().conj(), a.clone());
                prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
                prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
                let norm = &a * &a.conj();
                prop_assert!(norm.is_real());
                if !a.is_zero() {
                    prop_assert!(!norm.is_zero());
                }
            }

            #[test]
            fn promote_then_demote_round_trips(a in small_cyclo(), k in 1u32..4) {
                let d = a.demote();
                let up = d.promote(d.conductor() * k).unwrap();
                prop_assert_eq!(up.demote().conductor(), d.conductor());
                let back = up.demote();
                prop_assert_eq!(back.coeffs(), d.coeffs());
            }
        }
    }
}
