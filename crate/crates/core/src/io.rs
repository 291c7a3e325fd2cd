//! JSON formats.
//!
//! Scalars are `[re, im]` pairs; a bare number is accepted as a real
//! scalar. Group elements, AN elements, subalgebra specs and B maps use the
//! shapes below.
//!
//! ```json
//! { "field": "C", "n": 3, "entries": [[[1, 0], [0, 0], ...], ...] }
//! { "t1": 0, "t2": 0, "phi": [0, 0], "x": [[1, 0]], "y": [[0, 0]],
//!   "eta": [0, 0], "xx": [0, 1], "yy": [0, 0] }
//! { "field": "R", "n": 4, "name": "hb", "basis": [ ... ] }
//! { "field": "R", "n": 4, "convention": "xB", "entries": [[0, 1], [-1, 0]] }
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize, Serializer};

use crate::ancoords::ANElement;
use crate::error::{Error, Result};
use crate::families::{BMap, SubalgebraSpec};
use crate::linalg::RMat;
use crate::scalars::{CMat, FieldTag, Scalar, DEFAULT_TOL, ZERO};
use crate::sunf::{GroupContext, GroupMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarJson {
    Pair([f64; 2]),
    Bare(f64),
}

impl Default for ScalarJson {
    fn default() -> Self {
        ScalarJson::Pair([0.0, 0.0])
    }
}

impl From<Scalar> for ScalarJson {
    fn from(z: Scalar) -> Self {
        ScalarJson::Pair([z.re, z.im])
    }
}

impl From<ScalarJson> for Scalar {
    fn from(s: ScalarJson) -> Self {
        match s {
            ScalarJson::Pair([a, b]) => Scalar::new(a, b),
            ScalarJson::Bare(a) => Scalar::new(a, 0.0),
        }
    }
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ANElementJson {
    #[serde(default)]
    pub t1: f64,
    #[serde(default)]
    pub t2: f64,
    #[serde(default)]
    pub phi: ScalarJson,
    #[serde(default)]
    pub x: Vec<ScalarJson>,
    #[serde(default)]
    pub y: Vec<ScalarJson>,
    #[serde(default)]
    pub eta: ScalarJson,
    #[serde(default)]
    pub xx: ScalarJson,
    #[serde(default)]
    pub yy: ScalarJson,
}

impl From<&ANElement> for ANElementJson {
    fn from(u: &ANElement) -> Self {
        ANElementJson {
            t1: u.t1,
            t2: u.t2,
            phi: u.phi.into(),
            x: u.x.iter().map(|&z| z.into()).collect(),
            y: u.y.iter().map(|&z| z.into()).collect(),
            eta: u.eta.into(),
            xx: u.xx.into(),
            yy: u.yy.into(),
        }
    }
}

impl ANElementJson {
    /// Converts under the given context. Empty `x`/`y` mean zero vectors.
    pub fn into_element(self, ctx: GroupContext) -> Result<ANElement> {
        let k = ctx.n - 2;
        let vec = |v: Vec<ScalarJson>, name: &str| -> Result<Vec<Scalar>> {
            if v.is_empty() {
                return Ok(vec![ZERO; k]);
            }
            if v.len() != k {
                return Err(Error::Parse(format!("`{name}` has length {}, expected {k}", v.len())));
            }
            Ok(v.into_iter().map(Scalar::from).collect())
        };
        let u = ANElement {
            ctx,
            t1: self.t1,
            t2: self.t2,
            phi: self.phi.into(),
            x: vec(self.x, "x")?,
            y: vec(self.y, "y")?,
            eta: self.eta.into(),
            xx: self.xx.into(),
            yy: self.yy.into(),
        };
        u.validate(DEFAULT_TOL).map_err(|e| Error::Parse(e.to_string()))?;
        Ok(u)
    }
}

impl Serialize for ANElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ANElementJson::from(self).serialize(s)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpecJson {
    pub field: FieldTag,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub basis: Vec<ANElementJson>,
}

impl From<&SubalgebraSpec> for SpecJson {
    fn from(s: &SubalgebraSpec) -> Self {
        SpecJson {
            field: s.ctx.field,
            n: s.ctx.n,
            name: s.name.clone(),
            basis: s.basis.iter().map(ANElementJson::from).collect(),
        }
    }
}

impl Serialize for SubalgebraSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SpecJson::from(self).serialize(s)
    }
}

fn context(field: FieldTag, n: usize) -> Result<GroupContext> {
    GroupContext::new(field, n).map_err(|e| Error::Parse(e.to_string()))
}

pub fn spec_from_json(text: &str) -> Result<SubalgebraSpec> {
    let j: SpecJson = serde_json::from_str(text)?;
    let ctx = context(j.field, j.n)?;
    let basis = j.basis.into_iter().map(|b| b.into_element(ctx)).collect::<Result<Vec<_>>>()?;
    SubalgebraSpec::new(ctx, basis, j.name)
}

pub fn spec_to_json(s: &SubalgebraSpec) -> String {
    serde_json::to_string_pretty(s).expect("spec serializes")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupMatrixJson {
    pub field: FieldTag,
    pub n: usize,
    pub entries: Vec<Vec<ScalarJson>>,
}

pub fn group_from_json(text: &str, tol: f64) -> Result<GroupMatrix> {
    let j: GroupMatrixJson = serde_json::from_str(text)?;
    let ctx = context(j.field, j.n)?;
    let s = ctx.size();
    if j.entries.len() != s || j.entries.iter().any(|r| r.len() != s) {
        return Err(Error::Parse(format!("entries must be a {s}x{s} array")));
    }
    let m = CMat::from_fn(s, s, |i, k| j.entries[i][k].into());
    GroupMatrix::new(ctx, m, tol)
}

pub fn group_to_json(g: &GroupMatrix) -> String {
    let j = GroupMatrixJson {
        field: g.ctx.field,
        n: g.ctx.n,
        entries: g
            .entries
            .row_iter()
            .map(|r| r.iter().map(|&z| z.into()).collect())
            .collect(),
    };
    serde_json::to_string_pretty(&j).expect("matrix serializes")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BMapJson {
    pub field: FieldTag,
    pub n: usize,
    #[serde(default = "default_convention")]
    pub convention: String,
    pub entries: Vec<Vec<f64>>,
}

fn default_convention() -> String {
    "xB".into()
}

pub fn bmap_from_json(text: &str) -> Result<BMap> {
    let j: BMapJson = serde_json::from_str(text)?;
    if j.convention != "xB" {
        return Err(Error::Parse(format!("unsupported convention `{}` (only xB)", j.convention)));
    }
    let ctx = context(j.field, j.n)?;
    let rows = j.entries.len();
    let cols = j.entries.first().map_or(0, Vec::len);
    if j.entries.iter().any(|r| r.len() != cols) {
        return Err(Error::Parse("ragged B matrix".into()));
    }
    let m = RMat::from_fn(rows, cols, |i, k| j.entries[i][k]);
    BMap::new(ctx, m).map_err(|e| Error::Parse(e.to_string()))
}

impl From<&BMap> for BMapJson {
    fn from(b: &BMap) -> Self {
        BMapJson {
            field: b.ctx.field,
            n: b.ctx.n,
            convention: default_convention(),
            entries: b.entries.row_iter().map(|r| r.iter().copied().collect()).collect(),
        }
    }
}

impl Serialize for BMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BMapJson::from(self).serialize(s)
    }
}

pub fn bmap_to_json(b: &BMap) -> String {
    serde_json::to_string_pretty(b).expect("B serializes")
}

pub fn read_to_string(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{hc_subalgebra, sp1m_an};
    use crate::sampling::{random_group, seeded};

    #[test]
    fn spec_round_trip() {
        let ctx = GroupContext::complex(4);
        for s in [hc_subalgebra(ctx, 0.5), sp1m_an(ctx, 2).unwrap()] {
            let back = spec_from_json(&spec_to_json(&s)).unwrap();
            assert_eq!(back, s);
        }
    }

    #[test]
    fn bare_numbers_are_real_scalars() {
        let text = r#"{"field":"R","n":3,"basis":[{"t1":1,"phi":2,"x":[0.5]}]}"#;
        let s = spec_from_json(text).unwrap();
        assert_eq!(s.basis[0].phi, Scalar::new(2.0, 0.0));
        assert_eq!(s.basis[0].x, vec![Scalar::new(0.5, 0.0)]);
    }

    #[test]
    fn parse_errors_carry_locations() {
        let err = spec_from_json("{\"field\": \"R\",\n \"n\": }").unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("line 2"));
        let err = spec_from_json(r#"{"field":"R","n":3,"basis":[{"phi":[0,1]}]}"#).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn group_round_trip() {
        let mut rng = seeded(31);
        let g = random_group(GroupContext::complex(3), 0.3, &mut rng);
        let back = group_from_json(&group_to_json(&g), 1e-9).unwrap();
        assert!((back.entries - g.entries).norm() < 1e-15);
    }

    #[test]
    fn bmap_round_trip() {
        let b = BMap::rotation90(GroupContext::real(4)).unwrap();
        assert_eq!(bmap_from_json(&bmap_to_json(&b)).unwrap(), b);
        assert!(bmap_from_json(r#"{"field":"R","n":4,"entries":[[1]]}"#).is_err());
    }
}
