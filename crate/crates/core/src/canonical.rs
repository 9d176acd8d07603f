//! Canonical systems of basic invariants.
//!
//! Given any basic invariants `h_1, …, h_n`, the candidates
//!
//! ```text
//! f_i = Σ_j x_j φ(∂_j h_i),   φ(f) = (f* Δ)* Δ
//! ```
//!
//! are again basic invariants, lie in the span fixed by the canonical
//! condition, and are mutually orthogonal across degrees. Gram–Schmidt inside
//! each equal-degree block then yields `f_i* f_j = δ_ij`.
//!
//! The square roots are never formed: a [`CanonicalSystem`] stores pairs
//! `(g_i, c_i)` standing for `f_i = g_i / √c_i`, with `c_i = ⟨g_i, g_i⟩`.

use crate::cyclo::CycloNum;
use crate::error::{Error, Result};
use crate::group::ReflGroup;
use crate::invariants::{invariant_space, InvariantSystem};
use crate::linalg;
use crate::poly::{jacobian, monomials, ExpVec, Poly};
use crate::report::Report;

/// Pairs `(g_i, c_i)` encoding `f_i = g_i / √c_i`, ordered by degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalSystem {
    pub pairs: Vec<(Poly, CycloNum)>,
    pub degrees: Vec<u32>,
}

impl CanonicalSystem {
    pub fn new(pairs: Vec<(Poly, CycloNum)>) -> Self {
        let degrees = pairs.iter().map(|(g, _)| g.total_degree().unwrap_or(0)).collect();
        CanonicalSystem { pairs, degrees }
    }

    pub fn polys(&self) -> Vec<Poly> {
        self.pairs.iter().map(|(g, _)| g.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// One `f_{i} = \frac{1}{\sqrt{c}} \left(g\right)` line per pair.
    pub fn to_latex(&self) -> String {
        let mut out = String::new();
        for (i, (g, c)) in self.pairs.iter().enumerate() {
            let c_tex = crate::poly::cyclo_latex(c);
            out.push_str(&format!(
                "f_{{{}}} = \\frac{{1}}{{\\sqrt{{{c_tex}}}}} \\left({}\\right)\n",
                i + 1,
                g.to_latex()
            ));
        }
        out
    }
}

/// `φ(f) = (f* Δ)* Δ`.
pub fn phi(g: &ReflGroup, f: &Poly) -> Result<Poly> {
    let delta = g.delta();
    f.star_apply(delta)?.star_apply(delta)
}

/// Whether `w · φ(f) = φ(w · f)`.
pub fn w_equivariance_check(g: &ReflGroup, w: usize, f: &Poly) -> Result<bool> {
    Ok(g.act(w, &phi(g, f)?)? == phi(g, &g.act(w, f)?)?)
}

/// `Σ_j x_j φ(∂_j h)`, the invariant built from the differential of `h`.
pub fn candidate(g: &ReflGroup, h: &Poly) -> Result<Poly> {
    let n = g.rank();
    let mut acc = Poly::zero(n);
    for j in 0..n {
        let image = phi(g, &h.partial(j)?)?;
        acc = &acc + &(&Poly::var(n, j) * &image);
    }
    Ok(acc)
}

/// Candidates for every member of `sys`.
pub fn candidates(g: &ReflGroup, sys: &InvariantSystem) -> Result<Vec<Poly>> {
    let cands = sys.polys.iter().map(|h| candidate(g, h)).collect::<Result<Vec<_>>>()?;
    if let Some(i) = cands.iter().position(Poly::is_zero) {
        return Err(Error::DegenerateCandidate(format!(
            "candidate {} vanishes; h{} lies in the square of the invariant ideal",
            i + 1,
            i + 1
        )));
    }
    if cands.len() != g.rank() || jacobian(&cands)?.is_zero() {
        return Err(Error::DegenerateCandidate("candidates are algebraically dependent".into()));
    }
    Ok(cands)
}

/// Degree-blocked Gram–Schmidt under the apolar product, then normalization
/// so each `g_i` has graded-lex-first coefficient 1.
pub fn orthogonalize(_g: &ReflGroup, cands: &[Poly]) -> Result<CanonicalSystem> {
    let mut order: Vec<usize> = (0..cands.len()).collect();
    order.sort_by_key(|&i| cands[i].total_degree().unwrap_or(0));
    let sorted: Vec<&Poly> = order.iter().map(|&i| &cands[i]).collect();

    // lower-degree members must already annihilate higher-degree ones
    for (a, low) in sorted.iter().enumerate() {
        for high in &sorted[a + 1..] {
            if low.total_degree() < high.total_degree() && !low.star_apply(high)?.is_zero() {
                return Err(Error::Inconsistent(format!(
                    "candidate of degree {:?} is not annihilated by one of degree {:?}",
                    high.total_degree(),
                    low.total_degree()
                )));
            }
        }
    }

    let mut pairs: Vec<(Poly, CycloNum)> = Vec::with_capacity(cands.len());
    let mut block_start = 0;
    for (k, u) in sorted.iter().enumerate() {
        let degree = u.total_degree().unwrap_or(0);
        if k > 0 && sorted[k - 1].total_degree() != u.total_degree() {
            block_start = k;
        }
        let mut v = (*u).clone();
        for (prev, norm) in &pairs[block_start..k] {
            let coeff = prev.inner(u)?.checked_div(norm)?;
            v = &v - &prev.scale(&coeff);
        }
        if v.is_zero() {
            return Err(Error::ZeroInBlock { degree });
        }
        let v = v.monic();
        let c = v.inner(&v)?;
        pairs.push((v, c));
    }
    Ok(CanonicalSystem::new(pairs))
}

/// Full construction: candidates from `sys`, then [`orthogonalize`].
pub fn canonical_system(g: &ReflGroup, sys: &InvariantSystem) -> Result<CanonicalSystem> {
    let cands = candidates(g, sys)?;
    orthogonalize(g, &cands)
}

/// Exact verification of `f_i* f_j = δ_ij` in the `(g, c)` encoding, plus
/// invariance, independence, and annihilation by all lower-degree invariants.
pub fn verify_canonical(g: &ReflGroup, cs: &CanonicalSystem) -> Result<Report> {
    let mut report = Report::new(format!("canonical system for {}", g.name()));
    let n = g.rank();
    report.push("count", cs.len() == n, format!("{} pairs for rank {n}", cs.len()));
    if let Some((p, _)) = cs.pairs.iter().find(|(p, _)| p.nvars() != n) {
        report.push("variables", false, format!("polynomial in {} variables, expected {n}", p.nvars()));
        return Ok(report);
    }

    let mut degs: Vec<u32> = cs.pairs.iter().map(|(p, _)| p.homogeneous_degree().unwrap_or(0)).collect();
    let homogeneous = cs.pairs.iter().all(|(p, _)| p.homogeneous_degree().is_some());
    degs.sort_unstable();
    report.push("degrees", homogeneous && degs == g.degrees(), format!("{degs:?} vs group degrees {:?}", g.degrees()));

    // pairwise orthogonality
    let mut offenders = Vec::new();
    for (i, (gi, _)) in cs.pairs.iter().enumerate() {
        for (j, (gj, _)) in cs.pairs.iter().enumerate() {
            if i != j && !gi.star_apply(gj)?.is_zero() {
                offenders.push((i + 1, j + 1));
            }
        }
    }
    report.push(
        "pairwise-orthogonality",
        offenders.is_empty(),
        if offenders.is_empty() {
            "g_i* g_j = 0 for all i != j".to_string()
        } else {
            format!("g_i* g_j != 0 for (i, j) in {offenders:?}")
        },
    );

    // normalization constants
    let mut bad = Vec::new();
    for (i, (gi, ci)) in cs.pairs.iter().enumerate() {
        let self_star = gi.star_apply(gi)?;
        let positive = ci.as_rational().is_none_or(|r| r > num_traits::Zero::zero());
        let ok = self_star == Poly::constant(n, ci.clone()) && ci.is_real() && !ci.is_zero() && positive;
        if !ok {
            bad.push(i + 1);
        }
    }
    report.push(
        "normalization",
        bad.is_empty(),
        if bad.is_empty() {
            "g_i* g_i = c_i, totally real and nonzero".to_string()
        } else {
            format!("bad c_i for i in {bad:?}")
        },
    );

    // invariance
    let mut bad = Vec::new();
    for (i, (gi, _)) in cs.pairs.iter().enumerate() {
        if !g.is_invariant(gi)? {
            bad.push(i + 1);
        }
    }
    report.push(
        "invariance",
        bad.is_empty(),
        if bad.is_empty() { "all fixed by every generator".to_string() } else { format!("not invariant: g{bad:?}") },
    );

    // independence via the Jacobian
    if cs.len() == n {
        let j = jacobian(&cs.polys())?;
        let detail = match j.scalar_ratio(g.delta()) {
            Some(c) if !c.is_zero() => format!("J/Delta = {c}"),
            _ if j.is_zero() => "J = 0".to_string(),
            _ => "J is not a constant multiple of Delta".to_string(),
        };
        let ok = !j.is_zero() && j.scalar_ratio(g.delta()).is_some();
        report.push("jacobian", ok, detail);
    } else {
        report.push("jacobian", false, "wrong number of polynomials");
    }

    // annihilation by every invariant of lower positive degree
    let max_degree = cs.pairs.iter().filter_map(|(p, _)| p.total_degree()).max().unwrap_or(0);
    let mut spaces = Vec::new();
    for l in 1..max_degree {
        spaces.push((l, invariant_space(g, l)?));
    }
    let mut offenders = Vec::new();
    let mut tested = 0usize;
    for (i, (gi, _)) in cs.pairs.iter().enumerate() {
        let m = gi.total_degree().unwrap_or(0);
        for (l, space) in spaces.iter().filter(|(l, _)| *l < m) {
            for q in space {
                tested += 1;
                if !q.star_apply(gi)?.is_zero() {
                    offenders.push((i + 1, *l));
                }
            }
        }
    }
    report.push(
        "lower-degree-annihilation",
        offenders.is_empty(),
        if offenders.is_empty() {
            format!("{tested} products q* g_i with 0 < deg q < deg g_i all vanish")
        } else {
            format!("nonzero q* g_i for (i, deg q) in {offenders:?}")
        },
    );
    Ok(report)
}

/// `(f* Δ, f* Δ = 0)`; the flag decides membership of homogeneous `f` in the
/// ideal generated by positive-degree invariants.
pub fn steinberg_membership(g: &ReflGroup, f: &Poly) -> Result<(Poly, bool)> {
    let r = f.star_apply(g.delta())?;
    let zero = r.is_zero();
    Ok((r, zero))
}

/// Rank of `φ` on degree-`d` polynomials, next to the coinvariant prediction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HarmonicWitness {
    pub degree: u32,
    pub rank: usize,
    pub expected: u64,
}

impl HarmonicWitness {
    pub fn matches(&self) -> bool {
        self.rank as u64 == self.expected
    }
}

/// Coefficients of `∏_i (1 + t + … + t^{m_i - 1})`.
pub fn coinvariant_series(degrees: &[u32]) -> Vec<u64> {
    let mut series = vec![1u64];
    for &m in degrees {
        let mut next = vec![0u64; series.len() + m as usize - 1];
        for (i, &a) in series.iter().enumerate() {
            for k in 0..m as usize {
                next[i + k] += a;
            }
        }
        series = next;
    }
    series
}

/// Matrix of `φ` on the degree-`d` monomial basis (rows are images).
pub fn phi_matrix(g: &ReflGroup, d: u32) -> Result<(Vec<ExpVec>, Vec<Vec<CycloNum>>)> {
    let basis = monomials(g.rank(), d);
    let rows = basis
        .iter()
        .map(|e| {
            let img = phi(g, &Poly::monomial(g.rank(), e.clone(), CycloNum::one()))?;
            Ok(img.coeff_vector(&basis))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((basis, rows))
}

/// `rank φ|_{S_d}` for `d = 0..=max_degree`; requires `max_degree ≤ deg Δ`.
pub fn harmonic_dims(g: &ReflGroup, max_degree: u32) -> Result<Vec<HarmonicWitness>> {
    let top = g.delta().total_degree().unwrap_or(0);
    if max_degree > top {
        return Err(Error::InvalidArgument(format!(
            "harmonic dimensions requested up to {max_degree}, beyond deg Delta = {top}"
        )));
    }
    let expected = coinvariant_series(g.degrees());
    (0..=max_degree)
        .map(|d| {
            let (_, rows) = phi_matrix(g, d)?;
            Ok(HarmonicWitness {
                degree: d,
                rank: linalg::rank(rows),
                expected: expected.get(d as usize).copied().unwrap_or(0),
            })
        })
        .collect()
}

/// `Σ_j x_j ∂_j h = (deg h) h` for homogeneous `h`.
pub fn euler_check(h: &Poly) -> bool {
    match h.homogeneous_degree() {
        Some(d) => h.euler() == h.scale(&CycloNum::from_int(d as i64)),
        None => h.is_zero(),
    }
}

/// Rank of the 1-forms `φ̃(dh_i) = Σ_j φ(∂_j h_i) dx_j`; equals `n` for basic invariants.
pub fn differential_rank(g: &ReflGroup, sys: &InvariantSystem) -> Result<usize> {
    let n = g.rank();
    let mut forms = Vec::with_capacity(sys.len());
    for h in &sys.polys {
        let comps = (0..n).map(|j| phi(g, &h.partial(j)?)).collect::<Result<Vec<_>>>()?;
        forms.push(comps);
    }
    // flatten over (component, monomial) pairs
    let mut keys: Vec<(usize, ExpVec)> = Vec::new();
    for comps in &forms {
        for (j, p) in comps.iter().enumerate() {
            for (e, _) in p.terms() {
                let key = (j, e.clone());
                if !keys.contains(&key) {
                    keys.push(key);
                }
            }
        }
    }
    let rows = forms.iter().map(|comps| keys.iter().map(|(j, e)| comps[*j].coeff(e)).collect()).collect();
    Ok(linalg::rank(rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{AnalyzeOptions, UMatrix};
    use crate::Rational;

    fn c(k: i64) -> CycloNum {
        CycloNum::from_int(k)
    }

    fn b2() -> ReflGroup {
        let gens = vec![
            UMatrix::new(vec![vec![c(0), c(1)], vec![c(1), c(0)]]).unwrap(),
            UMatrix::new(vec![vec![c(-1), c(0)], vec![c(0), c(1)]]).unwrap(),
        ];
        ReflGroup::analyze("B2", &gens, &AnalyzeOptions::default()).unwrap()
    }

    fn mu(m: u32) -> ReflGroup {
        let gens = vec![UMatrix::diagonal(vec![CycloNum::zeta(m).unwrap()])];
        ReflGroup::analyze("mu", &gens, &AnalyzeOptions::default()).unwrap()
    }

    fn x() -> Poly {
        Poly::var(2, 0)
    }
    fn y() -> Poly {
        Poly::var(2, 1)
    }

    fn fact(k: i64) -> i64 {
        (1..=k).product()
    }

    #[test]
    fn phi_on_cyclic_groups() {
        for m in 2..=6u32 {
            let g = mu(m);
            let x1 = Poly::var(1, 0);
            let top = x1.pow(m - 1);
            assert_eq!(phi(&g, &top).unwrap(), top.scale(&c(fact(m as i64 - 1))));
            let h = x1.pow(m);
            assert_eq!(candidate(&g, &h).unwrap(), h.scale(&c(fact(m as i64))));
        }
    }

    #[test]
    fn phi_on_b2() {
        let g = b2();
        assert!(phi(&g, &(&x().pow(2) + &y().pow(2))).unwrap().is_zero());
        let dd = g.delta().inner(g.delta()).unwrap();
        assert_eq!(phi(&g, &Poly::one(2)).unwrap(), Poly::constant(2, dd.clone()));
        assert_eq!(phi(&g, g.delta()).unwrap(), g.delta().scale(&dd));
        for w in 0..g.order() {
            assert!(w_equivariance_check(&g, w, &x().pow(2)).unwrap());
            assert!(w_equivariance_check(&g, w, &Poly::zero(2)).unwrap());
        }
    }

    #[test]
    fn b2_canonical_system() {
        let g = b2();
        let sys = InvariantSystem::new(vec![&x().pow(2) + &y().pow(2), &x().pow(4) + &y().pow(4)]);
        let cands = candidates(&g, &sys).unwrap();
        assert!(cands[0].scalar_ratio(&(&x().pow(2) + &y().pow(2))).is_some());
        let cs = orthogonalize(&g, &cands).unwrap();
        let g2 = Poly::from_terms(2, [(vec![4, 0], c(1)), (vec![2, 2], c(-6)), (vec![0, 4], c(1))]).unwrap();
        assert_eq!(cs.pairs[0], (&x().pow(2) + &y().pow(2), c(4)));
        assert_eq!(cs.pairs[1], (g2, c(192)));
        let r = verify_canonical(&g, &cs).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn non_canonical_input_fails() {
        let g = b2();
        let cs = CanonicalSystem::new(vec![(&x().pow(2) + &y().pow(2), c(4)), (&x().pow(4) + &y().pow(4), c(48))]);
        let r = verify_canonical(&g, &cs).unwrap();
        assert!(!r.check("pairwise-orthogonality").unwrap().passed);
        assert!(!r.check("lower-degree-annihilation").unwrap().passed);
        assert!(r.check("invariance").unwrap().passed);
        let q = &x().pow(2) + &y().pow(2);
        assert_eq!(q.star_apply(&(&x().pow(4) + &y().pow(4))).unwrap(), q.scale(&c(12)));
    }

    #[test]
    fn rank_one_verification() {
        let g = mu(2);
        let cs = CanonicalSystem::new(vec![(Poly::var(1, 0).pow(2), c(2))]);
        assert!(verify_canonical(&g, &cs).unwrap().passed());
        let wrong = CanonicalSystem::new(vec![(Poly::var(1, 0).pow(2), c(3))]);
        assert!(!verify_canonical(&g, &wrong).unwrap().passed());
    }

    #[test]
    fn steinberg_examples() {
        let g = b2();
        let (r, inside) = steinberg_membership(&g, &(&x().pow(2) + &y().pow(2))).unwrap();
        assert!(r.is_zero() && inside);
        let (r, inside) = steinberg_membership(&g, &(&x().pow(2) - &y().pow(2))).unwrap();
        assert!(!inside);
        assert_eq!(r, (&x() * &y()).scale(&c(12)));
        let (r, inside) = steinberg_membership(&g, g.delta()).unwrap();
        assert!(!inside);
        assert_eq!(r, Poly::constant(2, g.delta().inner(g.delta()).unwrap()));
    }

    #[test]
    fn harmonic_dimensions() {
        let ranks: Vec<usize> = harmonic_dims(&b2(), 4).unwrap().iter().map(|w| w.rank).collect();
        assert_eq!(ranks, vec![1, 2, 2, 2, 1]);
        assert!(harmonic_dims(&b2(), 5).is_err());
        for m in 2..=5 {
            let w = harmonic_dims(&mu(m), m - 1).unwrap();
            assert!(w.iter().all(|h| h.rank == 1 && h.matches()));
        }
        assert_eq!(coinvariant_series(&[2, 4]), vec![1, 2, 2, 2, 1]);
        assert_eq!(coinvariant_series(&[2, 4]).iter().sum::<u64>(), 8);
    }

    #[test]
    fn euler_identity() {
        assert!(euler_check(&(&x().pow(2) * &y())));
        assert!(euler_check(&Poly::constant(2, c(3))));
        assert!(euler_check(b2().delta()));
        assert_eq!(b2().delta().euler(), b2().delta().scale(&c(4)));
    }

    #[test]
    fn differential_rank_is_full() {
        let g = b2();
        let sys = InvariantSystem::new(vec![&x().pow(2) + &y().pow(2), &x().pow(4) + &y().pow(4)]);
        assert_eq!(differential_rank(&g, &sys).unwrap(), 2);
    }

    #[test]
    fn latex_output() {
        let cs = CanonicalSystem::new(vec![(
            Poly::var(1, 0).pow(3),
            CycloNum::from_rational(Rational::from_integer(6.into())),
        )]);
        assert_eq!(cs.to_latex(), "f_{1} = \\frac{1}{\\sqrt{6}} \\left(x^{3}\\right)\n");
    }
}
