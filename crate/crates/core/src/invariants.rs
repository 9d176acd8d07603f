//! Invariant spaces and systems of basic invariants.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cyclo::CycloNum;
use crate::error::{Error, Result};
use crate::group::ReflGroup;
use crate::linalg;
use crate::poly::{jacobian, monomials, Poly};
use crate::report::Report;

/// Homogeneous invariants `h_1, …, h_n` listed by ascending degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantSystem {
    pub polys: Vec<Poly>,
    pub degrees: Vec<u32>,
}

impl InvariantSystem {
    /// Stable-sorts `polys` by total degree and records the degrees.
    pub fn new(mut polys: Vec<Poly>) -> Self {
        polys.sort_by_key(|p| p.total_degree().unwrap_or(0));
        let degrees = polys.iter().map(|p| p.total_degree().unwrap_or(0)).collect();
        InvariantSystem { polys, degrees }
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }
}

/// Basis of the degree-`d` invariants `R_d`: Reynolds images of all degree-`d`
/// monomials, row-reduced. Each basis element has graded-lex-first coefficient 1.
pub fn invariant_space(g: &ReflGroup, d: u32) -> Result<Vec<Poly>> {
    let n = g.rank();
    let basis = monomials(n, d);
    let mut rows: Vec<Vec<_>> = g.reynolds_monomials(d).iter().map(|p| p.coeff_vector(&basis)).collect();
    linalg::row_reduce(&mut rows);
    let space: Vec<Poly> = rows.iter().map(|r| Poly::from_coeff_vector(n, &basis, r)).collect();
    let expected = g.molien_coeffs(d as usize)?[d as usize];
    if space.len() as u64 != expected {
        return Err(Error::Inconsistent(format!(
            "invariant space of degree {d} has dimension {} but the Molien coefficient is {expected}",
            space.len()
        )));
    }
    Ok(space)
}

const RETRY_BUDGET: u32 = 10;

/// Generates basic invariants: for each degree `m_i`, pick the sparsest element of
/// `R_{m_i}` whose gradient at a seeded random point raises the Jacobian rank.
pub fn basic_invariants(g: &ReflGroup, seed: u64) -> Result<InvariantSystem> {
    let n = g.rank();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut distinct: Vec<u32> = g.degrees().to_vec();
    distinct.dedup();
    let mut spaces = Vec::new();
    for &d in &distinct {
        let mut space = invariant_space(g, d)?;
        // sparsest first, then by leading monomial (descending graded-lex)
        space.sort_by(|a, b| {
            a.num_terms()
                .cmp(&b.num_terms())
                .then_with(|| b.leading_term().map(|t| t.0).cmp(&a.leading_term().map(|t| t.0)))
        });
        let grads: Vec<Vec<Poly>> = space.iter().map(Poly::gradient).collect();
        spaces.push((d, space, grads));
    }

    for attempt in 0..RETRY_BUDGET {
        let height = 1i64 << (attempt + 3);
        let point: Vec<CycloNum> = (0..n).map(|_| CycloNum::from_int(rng.gen_range(1..=height))).collect();
        let mut chosen: Vec<Poly> = Vec::with_capacity(n);
        let mut rows: Vec<Vec<CycloNum>> = Vec::with_capacity(n);
        let mut ok = true;
        for &m in g.degrees() {
            let (_, space, grads) = spaces.iter().find(|(d, _, _)| *d == m).expect("degree present");
            let mut picked = false;
            for (p, grad) in space.iter().zip(grads) {
                if chosen.contains(p) {
                    continue;
                }
                let row = grad.iter().map(|q| q.evaluate(&point)).collect::<Result<Vec<_>>>()?;
                let mut trial = rows.clone();
                trial.push(row.clone());
                if linalg::rank(trial) == rows.len() + 1 {
                    rows.push(row);
                    chosen.push(p.clone());
                    picked = true;
                    break;
                }
            }
            if !picked {
                ok = false;
                break;
            }
        }
        if ok && !jacobian(&chosen)?.is_zero() {
            return Ok(InvariantSystem::new(chosen));
        }
    }
    Err(Error::RankSelection(format!(
        "no independent choice found after {RETRY_BUDGET} evaluation points for degrees {:?}",
        g.degrees()
    )))
}

/// Checks that `sys` is a system of basic invariants for `g`.
pub fn verify_basic(g: &ReflGroup, sys: &InvariantSystem) -> Result<Report> {
    let mut report = Report::new(format!("basic invariants for {}", g.name()));
    let n = g.rank();
    report.push("count", sys.len() == n, format!("{} polynomials for rank {n}", sys.len()));
    if let Some(p) = sys.polys.iter().find(|p| p.nvars() != n) {
        report.push("variables", false, format!("polynomial in {} variables, expected {n}", p.nvars()));
        return Ok(report);
    }

    let mut bad = Vec::new();
    for (i, h) in sys.polys.iter().enumerate() {
        if !g.is_invariant(h)? {
            bad.push(i + 1);
        }
    }
    report.push(
        "invariance",
        bad.is_empty(),
        if bad.is_empty() { "all fixed by every generator".to_string() } else { format!("not invariant: h{bad:?}") },
    );

    let homogeneous = sys.polys.iter().all(|p| p.homogeneous_degree().is_some());
    report.push(
        "homogeneity",
        homogeneous,
        if homogeneous { "all homogeneous".into() } else { "some polynomial is zero or mixes degrees".to_string() },
    );

    let mut degs: Vec<u32> = sys.polys.iter().map(|p| p.homogeneous_degree().unwrap_or(0)).collect();
    degs.sort_unstable();
    report.push("degrees", degs == g.degrees(), format!("{degs:?} vs group degrees {:?}", g.degrees()));

    if sys.len() != n {
        report.push("jacobian", false, "wrong number of polynomials");
        return Ok(report);
    }
    let j = jacobian(&sys.polys)?;
    report.push(
        "jacobian",
        !j.is_zero(),
        if j.is_zero() { "J = 0: algebraically dependent".to_string() } else { "J != 0".to_string() },
    );
    match j.scalar_ratio(g.delta()) {
        Some(c) if !c.is_zero() => report.push("jacobian-delta", true, format!("J/Delta = {c}")),
        _ => report.push("jacobian-delta", false, "J is not a nonzero constant multiple of Delta"),
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{AnalyzeOptions, UMatrix};

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

    #[test]
    fn spaces_of_b2() {
        let g = b2();
        assert_eq!(invariant_space(&g, 2).unwrap(), vec![&x().pow(2) + &y().pow(2)]);
        assert!(invariant_space(&g, 3).unwrap().is_empty());
        assert_eq!(invariant_space(&g, 4).unwrap().len(), 2);
        assert_eq!(invariant_space(&mu(3), 3).unwrap(), vec![Poly::var(1, 0).pow(3)]);
    }

    #[test]
    fn generated_systems() {
        let m5 = basic_invariants(&mu(5), 0).unwrap();
        assert_eq!(m5.polys, vec![Poly::var(1, 0).pow(5)]);
        let g = b2();
        let sys = basic_invariants(&g, 7).unwrap();
        assert_eq!(sys.degrees, vec![2, 4]);
        assert!(verify_basic(&g, &sys).unwrap().passed());
        // deterministic in the seed
        assert_eq!(sys, basic_invariants(&g, 7).unwrap());
    }

    #[test]
    fn verify_reports() {
        let g = b2();
        let good = InvariantSystem::new(vec![&x().pow(2) + &y().pow(2), &x().pow(4) + &y().pow(4)]);
        let r = verify_basic(&g, &good).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.check("jacobian-delta").unwrap().detail, "J/Delta = -8");

        let q = &x().pow(2) + &y().pow(2);
        let dependent = InvariantSystem::new(vec![q.clone(), q.pow(2)]);
        let r = verify_basic(&g, &dependent).unwrap();
        assert!(!r.check("jacobian").unwrap().passed);
        assert!(r.check("invariance").unwrap().passed);

        let broken = InvariantSystem::new(vec![x().pow(2), y().pow(2)]);
        let r = verify_basic(&g, &broken).unwrap();
        assert!(!r.check("invariance").unwrap().passed);
    }
}
