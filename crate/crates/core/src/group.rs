//! Finite unitary reflection groups given by matrix generators.
//!
//! Matrices act on `V`; the coordinates `x_1, …, x_n` are the dual basis, and
//! an element `w` with matrix `A` acts on polynomials contravariantly by
//! `x_i ↦ Σ_j (A⁻¹)_{ij} x_j`, where `A⁻¹` is the conjugate transpose.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use crate::cyclo::{CycloNum, Rational};
use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::{monomials, ExpVec, LinearSubst, Poly};

/// Default bound on the number of group elements produced by [`closure`].
pub const DEFAULT_CLOSURE_CAP: usize = 20_000;

/// Square unitary matrix with cyclotomic entries, stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct UMatrix {
    n: usize,
    entries: Vec<CycloNum>,
}

impl UMatrix {
    /// Builds a matrix from rows and checks that it is square and unitary.
    pub fn new(rows: Vec<Vec<CycloNum>>) -> Result<Self> {
        let m = UMatrix::from_rows(rows)?;
        if !m.is_unitary() {
            return Err(Error::NonUnitary(format!("{m}")));
        }
        Ok(m)
    }

    /// Shape check only; unitarity is not verified.
    pub fn from_rows(rows: Vec<Vec<CycloNum>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::ZeroVariables);
        }
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: row.len() });
            }
            entries.extend(row);
        }
        Ok(UMatrix { n, entries })
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![CycloNum::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = CycloNum::one();
        }
        UMatrix { n, entries }
    }

    /// Diagonal matrix.
    pub fn diagonal(d: Vec<CycloNum>) -> Self {
        let n = d.len();
        let mut m = UMatrix::identity(n);
        for (i, c) in d.into_iter().enumerate() {
            m.entries[i * n + i] = c;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &CycloNum {
        &self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<CycloNum>> {
        self.entries.chunks(self.n).map(<[CycloNum]>::to_vec).collect()
    }

    pub fn mul(&self, other: &UMatrix) -> UMatrix {
        assert_eq!(self.n, other.n, "matrix sizes differ");
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = CycloNum::zero();
                for k in 0..n {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                entries.push(acc);
            }
        }
        UMatrix { n, entries }
    }

    /// Conjugate transpose; the inverse of a unitary matrix.
    pub fn adjoint(&self) -> UMatrix {
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(self.get(j, i).conj());
            }
        }
        UMatrix { n, entries }
    }

    pub fn is_identity(&self) -> bool {
        *self == UMatrix::identity(self.n)
    }

    pub fn is_unitary(&self) -> bool {
        self.mul(&self.adjoint()).is_identity()
    }

    pub fn trace(&self) -> CycloNum {
        (0..self.n).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn det(&self) -> CycloNum {
        linalg::determinant(self.rows())
    }

    /// `A - I` by rows.
    pub fn minus_identity(&self) -> Vec<Vec<CycloNum>> {
        let mut rows = self.rows();
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] -= &CycloNum::one();
        }
        rows
    }

    /// Smallest `k ≥ 1` with `A^k = I`, up to `limit`.
    pub fn order(&self, limit: usize) -> Option<usize> {
        let mut p = self.clone();
        for k in 1..=limit {
            if p.is_identity() {
                return Some(k);
            }
            p = p.mul(self);
        }
        None
    }

    fn promoted(&self, conductor: u32) -> Result<UMatrix> {
        let entries = self.entries.iter().map(|c| c.promote(conductor)).collect::<Result<Vec<_>>>()?;
        Ok(UMatrix { n: self.n, entries })
    }

    // hash key; all entries must already share `conductor`
    fn key(&self, conductor: u32) -> Vec<Rational> {
        self.entries
            .iter()
            .flat_map(|c| c.promote(conductor).expect("entries share the group conductor").coeffs().to_vec())
            .collect()
    }

    fn conductor(&self) -> u32 {
        self.entries.iter().fold(1u32, |acc, c| acc.lcm(&c.conductor()))
    }
}

impl fmt::Display for UMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.entries.chunks(self.n).enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            write!(f, "[{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for UMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UMatrix{self}")
    }
}

fn common_conductor(gens: &[UMatrix]) -> u32 {
    gens.iter().fold(1u32, |acc, g| acc.lcm(&g.conductor()))
}

/// Breadth-first product closure of `generators`, identity first.
pub fn closure(generators: &[UMatrix], cap: usize) -> Result<Vec<UMatrix>> {
    let n = generators.first().ok_or(Error::ZeroVariables)?.dim();
    for (i, g) in generators.iter().enumerate() {
        if g.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: g.dim() });
        }
        if !g.is_unitary() {
            return Err(Error::NonUnitary(format!("generator {i}")));
        }
    }
    let conductor = common_conductor(generators);
    let gens = generators.iter().map(|g| g.promoted(conductor)).collect::<Result<Vec<_>>>()?;
    let identity = UMatrix::identity(n).promoted(conductor)?;
    let mut seen = HashMap::new();
    seen.insert(identity.key(conductor), 0usize);
    let mut elements = vec![identity];
    let mut queue = VecDeque::from([0usize]);
    while let Some(idx) = queue.pop_front() {
        for g in &gens {
            let p = elements[idx].mul(g);
            let key = p.key(conductor);
            if seen.contains_key(&key) {
                continue;
            }
            if elements.len() >= cap {
                return Err(Error::CapExceeded { cap });
            }
            seen.insert(key, elements.len());
            queue.push_back(elements.len());
            elements.push(p);
        }
    }
    Ok(elements)
}

/// A reflecting hyperplane `H = ker L` with the order `e` of its pointwise stabilizer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hyperplane {
    /// Linear form with first nonzero coefficient 1.
    pub form: Poly,
    pub order: u32,
    /// Indices of the `order - 1` reflections fixing `H` pointwise.
    pub reflections: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct AnalyzeOptions {
    pub cap: usize,
    /// Accept groups whose representation splits, as long as no nonzero
    /// vector is fixed by the whole group.
    pub allow_reducible: bool,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions { cap: DEFAULT_CLOSURE_CAP, allow_reducible: false }
    }
}

/// An enumerated reflection group with its hyperplane data and `Δ`.
#[derive(Clone, Debug)]
pub struct ReflGroup {
    name: String,
    n: usize,
    conductor: u32,
    generators: Vec<usize>,
    elements: Vec<UMatrix>,
    inverse_rows: Vec<Vec<Vec<CycloNum>>>,
    reflections: Vec<usize>,
    hyperplanes: Vec<Hyperplane>,
    delta: Poly,
    degrees: Vec<u32>,
    irreducibility: Rational,
}

impl ReflGroup {
    /// Enumerates the group and extracts reflections, hyperplanes, `Δ` and degrees.
    pub fn analyze(name: &str, generators: &[UMatrix], opts: &AnalyzeOptions) -> Result<Self> {
        let elements = closure(generators, opts.cap)?;
        let n = elements[0].dim();
        let order = elements.len();
        let conductor = common_conductor(generators);
        let inv_order = Rational::new(1.into(), (order as i64).into());

        let traces: Vec<CycloNum> = elements.iter().map(UMatrix::trace).collect();
        let fixed: CycloNum = traces.iter().cloned().sum();
        let norm_sum: CycloNum = traces.iter().map(|t| t * &t.conj()).sum();
        let irreducibility =
            norm_sum.as_rational().ok_or_else(|| Error::Inconsistent("character norm is not rational".into()))?
                * &inv_order;
        if !fixed.is_zero() {
            return Err(Error::Reducible { certificate: format!("{irreducibility} (nonzero fixed vectors)") });
        }
        if !irreducibility.is_one() && !opts.allow_reducible {
            return Err(Error::Reducible { certificate: irreducibility.to_string() });
        }

        let mut index = HashMap::new();
        for (i, e) in elements.iter().enumerate() {
            index.insert(e.key(conductor), i);
        }
        let generators_idx =
            generators.iter().map(|g| index[&g.promoted(conductor).expect("promotable").key(conductor)]).collect();

        let mut reflections = Vec::new();
        let mut hyperplanes: Vec<Hyperplane> = Vec::new();
        for (i, w) in elements.iter().enumerate().skip(1) {
            let rows = w.minus_identity();
            if linalg::rank(rows.clone()) != 1 {
                continue;
            }
            reflections.push(i);
            let row = rows.into_iter().find(|r| r.iter().any(|c| !c.is_zero())).expect("rank 1");
            let lead = row.iter().find(|c| !c.is_zero()).expect("nonzero row").inv()?;
            let form = Poly::from_terms(
                n,
                row.iter().enumerate().map(|(j, c)| (ExpVec::unit(n, j).as_slice().to_vec(), c * &lead)),
            )?;
            match hyperplanes.iter_mut().find(|h| h.form == form) {
                Some(h) => {
                    h.order += 1;
                    h.reflections.push(i);
                }
                None => hyperplanes.push(Hyperplane { form, order: 2, reflections: vec![i] }),
            }
        }
        if reflections.is_empty() {
            return Err(Error::NotReflectionGroup("the group contains no reflections".into()));
        }
        for h in &hyperplanes {
            let e = h.order as usize;
            let cyclic = h.reflections.iter().any(|&r| elements[r].order(e) == Some(e));
            if !cyclic {
                return Err(Error::Inconsistent(format!(
                    "pointwise stabilizer of {} is not cyclic of order {e}",
                    h.form
                )));
            }
        }
        let delta = hyperplanes.iter().fold(Poly::one(n), |acc, h| &acc * &h.form.pow(h.order - 1));

        let inverse_rows = elements.iter().map(|w| w.adjoint().rows()).collect();
        let mut group = ReflGroup {
            name: name.to_string(),
            n,
            conductor,
            generators: generators_idx,
            elements,
            inverse_rows,
            reflections,
            hyperplanes,
            delta,
            degrees: Vec::new(),
            irreducibility,
        };
        group.degrees = group.detect_degrees()?;
        let prod: u64 = group.degrees.iter().map(|&m| m as u64).product();
        let codeg: u32 = group.degrees.iter().map(|m| m - 1).sum();
        if prod != order as u64 || codeg as usize != group.reflections.len() {
            return Err(Error::NotReflectionGroup(format!(
                "degrees {:?} give product {prod} (|W| = {order}) and sum of m_i - 1 = {codeg} \
                 ({} reflections)",
                group.degrees,
                group.reflections.len()
            )));
        }
        Ok(group)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Lcm of the conductors of the generator entries.
    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn elements(&self) -> &[UMatrix] {
        &self.elements
    }

    /// Indices (into [`ReflGroup::elements`]) of the generators.
    pub fn generator_indices(&self) -> &[usize] {
        &self.generators
    }

    pub fn reflections(&self) -> &[usize] {
        &self.reflections
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    /// `Δ = ∏_H L_H^{e_H - 1}`.
    pub fn delta(&self) -> &Poly {
        &self.delta
    }

    /// Degrees `m_1 ≤ … ≤ m_n` of the basic invariants.
    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// `(1/|W|) Σ_w |tr w|²`; equal to 1 exactly for irreducible groups.
    pub fn irreducibility_certificate(&self) -> &Rational {
        &self.irreducibility
    }

    pub fn is_irreducible(&self) -> bool {
        self.irreducibility.is_one()
    }

    /// `w · f` with `(w·f)(v) = f(w⁻¹ v)`.
    pub fn act(&self, w: usize, f: &Poly) -> Result<Poly> {
        let rows = self.inverse_rows.get(w).ok_or(Error::IndexOutOfRange { index: w, len: self.order() })?;
        if f.nvars() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: f.nvars() });
        }
        f.subst_linear(rows)
    }

    /// Whether `f` is fixed by every generator.
    pub fn is_invariant(&self, f: &Poly) -> Result<bool> {
        for &g in &self.generators {
            if self.act(g, f)? != *f {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Averaging operator `f♯ = (1/|W|) Σ_w w·f`.
    pub fn reynolds(&self, f: &Poly) -> Result<Poly> {
        if f.nvars() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: f.nvars() });
        }
        let max_exp = f.terms().flat_map(|(e, _)| e.as_slice().iter().copied()).max().unwrap_or(0);
        let mut acc = Poly::zero(self.n);
        for rows in &self.inverse_rows {
            let subst = LinearSubst::new(rows, self.n, max_exp)?;
            acc = &acc + &subst.apply(f);
        }
        Ok(acc.scale_rational(&Rational::new(1.into(), (self.order() as i64).into())))
    }

    /// Reynolds images of every degree-`d` monomial, in the order of [`monomials`].
    pub fn reynolds_monomials(&self, d: u32) -> Vec<Poly> {
        let basis = monomials(self.n, d);
        let mut acc = vec![Poly::zero(self.n); basis.len()];
        for rows in &self.inverse_rows {
            let subst = LinearSubst::new(rows, self.n, d).expect("square matrix");
            for (slot, e) in acc.iter_mut().zip(&basis) {
                let img = subst.apply(&Poly::monomial(self.n, e.clone(), CycloNum::one()));
                *slot = &*slot + &img;
            }
        }
        let scale = Rational::new(1.into(), (self.order() as i64).into());
        acc.into_iter().map(|p| p.scale_rational(&scale)).collect()
    }

    /// Coefficients `a_0, …, a_D` of the Molien series `(1/|W|) Σ_w 1/det(I - t w)`.
    pub fn molien_coeffs(&self, max_degree: usize) -> Result<Vec<u64>> {
        let mut acc = vec![CycloNum::zero(); max_degree + 1];
        for w in &self.elements {
            let q = one_minus_t_charpoly(w);
            let series = invert_series(&q, max_degree);
            for (a, s) in acc.iter_mut().zip(&series) {
                *a += s;
            }
        }
        let inv_order = Rational::new(1.into(), (self.order() as i64).into());
        acc.iter()
            .enumerate()
            .map(|(d, a)| {
                let r =
                    a.as_rational().map(|r| r * &inv_order).filter(|r| r.is_integer() && !r.is_negative()).ok_or_else(
                        || Error::Inconsistent(format!("Molien coefficient {d} is {a}, not a nonnegative integer")),
                    )?;
                r.to_integer().to_u64().ok_or_else(|| Error::Inconsistent(format!("Molien coefficient {d} too large")))
            })
            .collect()
    }

    fn detect_degrees(&self) -> Result<Vec<u32>> {
        let bound = 2 * self.reflections.len() + 2;
        let molien = self.molien_coeffs(bound)?;
        let mut rest: Vec<i128> = molien.iter().map(|&a| a as i128).collect();
        let mut degrees = Vec::with_capacity(self.n);
        for _ in 0..self.n {
            let Some(d) = (1..rest.len()).find(|&d| rest[d] != 0) else {
                return Err(Error::DegreeExtraction(format!("found only {degrees:?} below degree {bound}")));
            };
            if rest[d] < 0 {
                return Err(Error::DegreeExtraction(format!("negative remainder at degree {d}")));
            }
            degrees.push(d as u32);
            // multiply by (1 - t^d)
            for k in (d..rest.len()).rev() {
                rest[k] -= rest[k - d];
            }
        }
        if rest[0] != 1 || rest[1..].iter().any(|&r| r != 0) {
            return Err(Error::DegreeExtraction(format!("series is not ∏ 1/(1 - t^m) for m in {degrees:?}")));
        }
        Ok(degrees)
    }

    /// `det(w)` of element `w`.
    pub fn det(&self, w: usize) -> Result<CycloNum> {
        self.elements.get(w).map(UMatrix::det).ok_or(Error::IndexOutOfRange { index: w, len: self.order() })
    }
}

// coefficients of det(I - tA), constant term first (Faddeev-LeVerrier)
fn one_minus_t_charpoly(a: &UMatrix) -> Vec<CycloNum> {
    let n = a.dim();
    // c[k] is the coefficient of λ^k in det(λI - A)
    let mut c = vec![CycloNum::zero(); n + 1];
    c[n] = CycloNum::one();
    let mut m = UMatrix { n, entries: vec![CycloNum::zero(); n * n] };
    for k in 1..=n {
        let mut next = a.mul(&m);
        for i in 0..n {
            next.entries[i * n + i] += &c[n - k + 1];
        }
        m = next;
        let tr = a.mul(&m).trace();
        c[n - k] = -tr.scale_rational(&Rational::new(1.into(), (k as i64).into()));
    }
    (0..=n).map(|j| c[n - j].clone()).collect()
}

fn invert_series(q: &[CycloNum], len: usize) -> Vec<CycloNum> {
    let mut s: Vec<CycloNum> = Vec::with_capacity(len + 1);
    s.push(CycloNum::one());
    for k in 1..=len {
        let mut acc = CycloNum::zero();
        for j in 1..q.len().min(k + 1) {
            if !q[j].is_zero() {
                acc -= &(&q[j] * &s[k - j]);
            }
        }
        s.push(acc);
    }
    s
}
