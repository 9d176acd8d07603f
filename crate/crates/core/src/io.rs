//! JSON file formats. Coefficients are cyclotomic literals such as `"4; 1:1"`.

use serde::{Deserialize, Serialize};

use crate::canonical::CanonicalSystem;
use crate::catalog::{self, GroupSpec};
use crate::cyclo::CycloNum;
use crate::error::{Error, Result};
use crate::group::UMatrix;
use crate::invariants::InvariantSystem;
use crate::poly::Poly;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub coeff: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolyJson {
    pub n: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InvariantSystemJson {
    pub degrees: Vec<u32>,
    pub polys: Vec<PolyJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PairJson {
    pub g: PolyJson,
    pub c: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CanonicalSystemJson {
    pub degrees: Vec<u32>,
    pub pairs: Vec<PairJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupSpecJson {
    pub name: String,
    pub rank: usize,
    pub generators: Vec<Vec<Vec<String>>>,
}

impl From<&Poly> for PolyJson {
    fn from(p: &Poly) -> Self {
        PolyJson {
            n: p.nvars(),
            terms: p.terms().map(|(e, c)| TermJson { exp: e.as_slice().to_vec(), coeff: c.to_literal() }).collect(),
        }
    }
}

impl TryFrom<&PolyJson> for Poly {
    type Error = Error;

    fn try_from(j: &PolyJson) -> Result<Poly> {
        let terms = j
            .terms
            .iter()
            .map(|t| Ok((t.exp.clone(), CycloNum::parse_literal(&t.coeff)?)))
            .collect::<Result<Vec<_>>>()?;
        Poly::from_terms(j.n, terms)
    }
}

impl From<&InvariantSystem> for InvariantSystemJson {
    fn from(s: &InvariantSystem) -> Self {
        InvariantSystemJson { degrees: s.degrees.clone(), polys: s.polys.iter().map(PolyJson::from).collect() }
    }
}

impl TryFrom<&InvariantSystemJson> for InvariantSystem {
    type Error = Error;

    fn try_from(j: &InvariantSystemJson) -> Result<InvariantSystem> {
        let polys = j.polys.iter().map(Poly::try_from).collect::<Result<Vec<_>>>()?;
        let sys = InvariantSystem::new(polys);
        check_degrees(&j.degrees, &sys.degrees)?;
        Ok(sys)
    }
}

impl From<&CanonicalSystem> for CanonicalSystemJson {
    fn from(s: &CanonicalSystem) -> Self {
        CanonicalSystemJson {
            degrees: s.degrees.clone(),
            pairs: s.pairs.iter().map(|(g, c)| PairJson { g: g.into(), c: c.to_literal() }).collect(),
        }
    }
}

impl TryFrom<&CanonicalSystemJson> for CanonicalSystem {
    type Error = Error;

    fn try_from(j: &CanonicalSystemJson) -> Result<CanonicalSystem> {
        let pairs = j
            .pairs
            .iter()
            .map(|p| Ok((Poly::try_from(&p.g)?, CycloNum::parse_literal(&p.c)?)))
            .collect::<Result<Vec<_>>>()?;
        let sys = CanonicalSystem::new(pairs);
        check_degrees(&j.degrees, &sys.degrees)?;
        Ok(sys)
    }
}

impl From<&GroupSpec> for GroupSpecJson {
    fn from(g: &GroupSpec) -> Self {
        GroupSpecJson {
            name: g.name.clone(),
            rank: g.rank,
            generators: g
                .generators
                .iter()
                .map(|m| m.rows().iter().map(|r| r.iter().map(CycloNum::to_literal).collect()).collect())
                .collect(),
        }
    }
}

impl TryFrom<&GroupSpecJson> for GroupSpec {
    type Error = Error;

    fn try_from(j: &GroupSpecJson) -> Result<GroupSpec> {
        let mut generators = Vec::with_capacity(j.generators.len());
        for m in &j.generators {
            let rows = m
                .iter()
                .map(|r| r.iter().map(|s| CycloNum::parse_literal(s)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            let mat = UMatrix::new(rows)?;
            if mat.dim() != j.rank {
                return Err(Error::DimensionMismatch { expected: j.rank, found: mat.dim() });
            }
            generators.push(mat);
        }
        Ok(GroupSpec { name: j.name.clone(), rank: j.rank, generators, allow_reducible: false })
    }
}

fn check_degrees(declared: &[u32], actual: &[u32]) -> Result<()> {
    if declared != actual {
        return Err(Error::Parse {
            what: "system",
            msg: format!("declared degrees {declared:?} differ from the polynomials' degrees {actual:?}"),
        });
    }
    Ok(())
}

fn parse_json<T: serde::de::DeserializeOwned>(what: &'static str, text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse { what, msg: e.to_string() })
}

fn pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn poly_to_json(p: &Poly) -> String {
    pretty(&PolyJson::from(p))
}

pub fn poly_from_json(text: &str) -> Result<Poly> {
    Poly::try_from(&parse_json::<PolyJson>("polynomial JSON", text)?)
}

pub fn invariants_to_json(s: &InvariantSystem) -> String {
    pretty(&InvariantSystemJson::from(s))
}

pub fn invariants_from_json(text: &str) -> Result<InvariantSystem> {
    InvariantSystem::try_from(&parse_json::<InvariantSystemJson>("invariant system JSON", text)?)
}

pub fn canonical_to_json(s: &CanonicalSystem) -> String {
    pretty(&CanonicalSystemJson::from(s))
}

pub fn canonical_from_json(text: &str) -> Result<CanonicalSystem> {
    CanonicalSystem::try_from(&parse_json::<CanonicalSystemJson>("canonical system JSON", text)?)
}

pub fn group_to_json(g: &GroupSpec) -> String {
    pretty(&GroupSpecJson::from(g))
}

pub fn group_from_json(text: &str) -> Result<GroupSpec> {
    GroupSpec::try_from(&parse_json::<GroupSpecJson>("group spec JSON", text)?)
}

/// Catalog name, or else a path to a group-spec JSON file.
pub fn resolve_group(spec: &str) -> Result<GroupSpec> {
    let path = std::path::Path::new(spec);
    if spec.ends_with(".json") || path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse { what: "group spec file", msg: format!("{spec}: {e}") })?;
        return group_from_json(&text);
    }
    catalog::lookup(spec)
}
