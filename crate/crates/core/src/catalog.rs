//! Shipped groups: `cyclic:m`, `G:m,p,n`, `dihedral:m`, `B:n`, `G4`.

use crate::cyclo::CycloNum;
use crate::error::{Error, Result};
use crate::group::{AnalyzeOptions, ReflGroup, UMatrix};

/// A named list of generator matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    pub name: String,
    pub rank: usize,
    pub generators: Vec<UMatrix>,
    /// Set for catalog entries that act reducibly but are still analyzed.
    pub allow_reducible: bool,
}

impl GroupSpec {
    pub fn analyze(&self, opts: &AnalyzeOptions) -> Result<ReflGroup> {
        let opts = AnalyzeOptions { allow_reducible: opts.allow_reducible || self.allow_reducible, ..*opts };
        let g = ReflGroup::analyze(&self.name, &self.generators, &opts)?;
        if self.name == "G4" && (g.order() != 24 || g.degrees() != [4, 6]) {
            return Err(Error::Inconsistent(format!(
                "shipped G4 data fails its self-check: |W| = {}, degrees {:?}",
                g.order(),
                g.degrees()
            )));
        }
        Ok(g)
    }
}

/// Names used by the test suites to mean "every catalog group".
pub const CATALOG: &[&str] = &[
    "cyclic:2",
    "cyclic:3",
    "cyclic:4",
    "cyclic:5",
    "cyclic:6",
    "B:2",
    "B:3",
    "G:3,1,2",
    "G:4,1,2",
    "dihedral:3",
    "dihedral:4",
    "dihedral:5",
    "dihedral:6",
    "dihedral:7",
    "dihedral:8",
    "G:2,2,2",
    "G4",
];

/// Parses a catalog name.
pub fn lookup(spec: &str) -> Result<GroupSpec> {
    let spec = spec.trim();
    let bad = |msg: &str| Error::Parse { what: "catalog name", msg: format!("{spec:?}: {msg}") };
    let (head, args) = spec.split_once(':').unwrap_or((spec, ""));
    let nums = || -> Result<Vec<u32>> {
        args.split(',')
            .map(|s| s.trim().parse::<u32>().map_err(|_| bad("parameters must be positive integers")))
            .collect()
    };
    let (m, p, n) = match head {
        "G4" if args.is_empty() => return Ok(g4()),
        "cyclic" => match nums()?[..] {
            [m] => (m, 1, 1),
            _ => return Err(bad("expected cyclic:m")),
        },
        "dihedral" => match nums()?[..] {
            [m] => (m, m, 2),
            _ => return Err(bad("expected dihedral:m")),
        },
        "B" => match nums()?[..] {
            [n] => (2, 1, n),
            _ => return Err(bad("expected B:n")),
        },
        "G" => match nums()?[..] {
            [m, p, n] => (m, p, n),
            _ => return Err(bad("expected G:m,p,n")),
        },
        _ => return Err(bad("unknown family; use cyclic:m, G:m,p,n, dihedral:m, B:n or G4")),
    };
    let mut g = imprimitive(m, p, n)?;
    g.name = spec.to_string();
    Ok(g)
}

/// `G(m,p,n)`: monomial matrices with entries in `μ_m` whose nonzero entries
/// multiply to an element of `μ_{m/p}`.
pub fn imprimitive(m: u32, p: u32, n: u32) -> Result<GroupSpec> {
    if m == 0 || p == 0 || n == 0 || !m.is_multiple_of(p) {
        return Err(Error::InvalidArgument(format!("G({m},{p},{n}) needs m, p, n >= 1 and p | m")));
    }
    if n == 1 && p == m {
        return Err(Error::InvalidArgument(format!("G({m},{m},1) is trivial")));
    }
    let n = n as usize;
    let zero = CycloNum::zero;
    let one = CycloNum::one;
    let mut gens = Vec::new();
    for i in 0..n.saturating_sub(1) {
        let mut rows = UMatrix::identity(n).rows();
        rows[i][i] = zero();
        rows[i + 1][i + 1] = zero();
        rows[i][i + 1] = one();
        rows[i + 1][i] = one();
        gens.push(UMatrix::new(rows)?);
    }
    if n >= 2 && m > 1 && p > 1 {
        let mut rows = UMatrix::identity(n).rows();
        rows[0][0] = zero();
        rows[1][1] = zero();
        rows[0][1] = CycloNum::zeta_pow(m, -1)?;
        rows[1][0] = CycloNum::zeta(m)?;
        gens.push(UMatrix::new(rows)?);
    }
    if p < m {
        let mut diag = vec![one(); n];
        diag[0] = CycloNum::zeta_pow(m, p as i64)?;
        gens.push(UMatrix::diagonal(diag));
    }
    Ok(GroupSpec {
        name: format!("G:{m},{p},{n}"),
        rank: n,
        generators: gens,
        allow_reducible: m == 2 && p == 2 && n == 2,
    })
}

/// The tetrahedral reflection group over `Q(ζ_12)`: two order-3 reflections
/// `ω·q` with `q` unit quaternions of order 3.
pub fn g4() -> GroupSpec {
    let z = |k: i64| CycloNum::zeta_pow(12, k).expect("conductor 12 is below any cap");
    let half = CycloNum::from_ratio(1, 2);
    let i = z(3);
    let omega = z(4);
    // s + p·i + q·j + r·k as a 2x2 complex matrix
    let quaternion = |s: i64, p: i64, q: i64, r: i64| -> UMatrix {
        let c = |a: i64| CycloNum::from_int(a);
        let rows = vec![
            vec![c(s) + c(p) * i.clone(), c(q) + c(r) * i.clone()],
            vec![c(-q) + c(r) * i.clone(), c(s) - c(p) * i.clone()],
        ];
        let rows =
            rows.into_iter().map(|r| r.into_iter().map(|e| e * half.clone() * omega.clone()).collect()).collect();
        UMatrix::new(rows).expect("unit quaternion times a root of unity is unitary")
    };
    GroupSpec {
        name: "G4".to_string(),
        rank: 2,
        generators: vec![quaternion(-1, 1, 1, 1), quaternion(-1, 1, -1, -1)],
        allow_reducible: false,
    }
}
