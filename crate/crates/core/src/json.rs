//! Structural JSON: group-scheme files, group tables and versioned
//! certificates. Elements are written as ring literals.

use std::path::Path;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::hopf::GroupScheme;
use crate::rings::{Elem, Ring};

pub const SCHEMA_VERSION: u32 = 1;

pub fn ser_ring<S: Serializer>(r: &Ring, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSchemeFile {
    pub base: String,
    pub rank: usize,
    pub mult: Vec<Vec<Vec<String>>>,
    pub unit: Vec<String>,
    pub comult: Vec<Vec<Vec<String>>>,
    pub counit: Vec<String>,
    pub antipode: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl GroupSchemeFile {
    pub fn from_scheme(g: &GroupScheme) -> GroupSchemeFile {
        let r = g.base();
        let v = |x: &[Elem]| x.iter().map(|e| r.fmt_elem(e)).collect::<Vec<_>>();
        let m = |x: &[Vec<Elem>]| x.iter().map(|row| v(row)).collect::<Vec<_>>();
        GroupSchemeFile {
            base: r.to_string(),
            rank: g.order(),
            mult: g.mult_tensor().iter().map(|row| m(row)).collect(),
            unit: v(g.unit()),
            comult: g.comult_tensor().iter().map(|t| m(t)).collect(),
            counit: v(g.counit()),
            antipode: m(g.antipode_matrix()),
            name: g.name().map(str::to_string),
        }
    }

    pub fn to_scheme(&self) -> Result<GroupScheme> {
        let r = Ring::parse(&self.base)?;
        let v = |x: &[String]| x.iter().map(|s| r.parse_elem(s)).collect::<Result<Vec<_>>>();
        let m = |x: &[Vec<String>]| x.iter().map(|row| v(row)).collect::<Result<Vec<_>>>();
        let g = GroupScheme::new(
            r.clone(),
            self.mult.iter().map(|row| m(row)).collect::<Result<_>>()?,
            v(&self.unit)?,
            self.comult.iter().map(|t| m(t)).collect::<Result<_>>()?,
            v(&self.counit)?,
            m(&self.antipode)?,
        )?;
        if g.order() != self.rank {
            return Err(Error::Dimension(format!("rank field {} but tensors have rank {}", self.rank, g.order())));
        }
        Ok(match &self.name {
            Some(n) => g.with_name(n.clone()),
            None => g,
        })
    }
}

fn pretty<T: Serialize>(x: &T) -> String {
    let mut s = serde_json::to_string_pretty(x).expect("serializable");
    s.push('\n');
    s
}

pub fn scheme_to_json(g: &GroupScheme) -> String {
    pretty(&GroupSchemeFile::from_scheme(g))
}

pub fn scheme_from_json(s: &str) -> Result<GroupScheme> {
    let f: GroupSchemeFile = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    f.to_scheme()
}

pub fn load_scheme(path: &Path) -> Result<GroupScheme> {
    scheme_from_json(&read(path)?)
}

pub fn save_scheme(g: &GroupScheme, path: &Path) -> Result<()> {
    std::fs::write(path, scheme_to_json(g)).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

#[derive(Deserialize)]
struct TableFile {
    table: Vec<Vec<usize>>,
    identity: Option<usize>,
    name: Option<String>,
}

/// Reads `{table, identity?, name?}`; the identity is recomputed and must
/// agree with the stated one.
pub fn group_from_json(s: &str) -> Result<FiniteGroup> {
    let f: TableFile = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    let g = FiniteGroup::from_table(f.table)?;
    if f.identity.is_some_and(|e| e != g.identity) {
        return Err(Error::Precondition(format!("stated identity is not the identity {}", g.identity)));
    }
    Ok(match f.name {
        Some(n) => g.with_name(n),
        None => g,
    })
}

pub fn load_group(path: &Path) -> Result<FiniteGroup> {
    group_from_json(&read(path)?)
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

#[derive(Serialize)]
pub struct Certificate<'a, T: Serialize> {
    pub schema_version: u32,
    pub kind: &'a str,
    pub body: &'a T,
}

pub fn certificate_json<T: Serialize>(kind: &str, body: &T) -> String {
    pretty(&Certificate { schema_version: SCHEMA_VERSION, kind, body })
}
