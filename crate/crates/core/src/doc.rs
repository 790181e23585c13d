//! The JSON structure document: named spaces and named, role-tagged linear
//! maps with dense matrices of exact scalar strings.
//!
//! ```json
//! {
//!   "format": "cotwist-structure/1",
//!   "field": "Q",
//!   "provenance": ["builtin sweedler:H4"],
//!   "spaces": { "H4": ["1", "g", "x", "gx"] },
//!   "maps": [
//!     { "name": "H.S", "role": "antipode", "domain": ["H4"], "codomain": ["H4"],
//!       "matrix": [["1", "0", "0", "0"], ...] }
//!   ]
//! }
//! ```
//!
//! `domain`/`codomain` list tensor factors by space name; `[]` is the ground
//! field. Matrix rows index the codomain basis, columns the domain basis.
//! Every entry is written out, zeros included.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::crossed::{HarrisonCocycle, WeakCoaction};
use crate::error::{Error, Result};
use crate::hopf::{Coalgebra, HopfAlgebra};
use crate::linmap::LinMap;
use crate::modcoalg::ModuleCoalgebra;
use crate::scalar::FieldSpec;
use crate::space::Space;

pub const FORMAT: &str = "cotwist-structure/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Role {
    Delta,
    Eps,
    Mult,
    Unit,
    Antipode,
    Action,
    Coaction,
    Twisting,
    LeftTwisting,
    Cocycle,
    Witness,
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapDoc {
    pub name: String,
    pub role: Role,
    pub domain: Vec<String>,
    pub codomain: Vec<String>,
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureDoc {
    pub format: String,
    pub field: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub provenance: Vec<String>,
    pub spaces: BTreeMap<String, Vec<String>>,
    pub maps: Vec<MapDoc>,
}

impl StructureDoc {
    pub fn new(field: FieldSpec) -> Self {
        StructureDoc {
            format: FORMAT.to_string(),
            field: field.to_string(),
            provenance: Vec::new(),
            spaces: BTreeMap::new(),
            maps: Vec::new(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: StructureDoc = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        if doc.format != FORMAT {
            return Err(Error::Format(format!("unsupported format {:?}, expected {FORMAT:?}", doc.format)));
        }
        for m in &doc.maps {
            doc.decode(m)?;
        }
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }

    pub fn field(&self) -> Result<FieldSpec> {
        self.field.parse()
    }

    pub fn note(&mut self, line: impl Into<String>) -> &mut Self {
        self.provenance.push(line.into());
        self
    }

    fn factors(&mut self, space: &Space) -> Result<Vec<String>> {
        let mut names = Vec::new();
        for atom in space.atoms() {
            match self.spaces.get(&atom.name) {
                Some(labels) if labels != &atom.labels => {
                    return Err(Error::Format(format!("two different spaces are both named {:?}", atom.name)));
                }
                Some(_) => {}
                None => {
                    self.spaces.insert(atom.name.clone(), atom.labels.clone());
                }
            }
            names.push(atom.name.clone());
        }
        Ok(names)
    }

    /// Adds or replaces the map called `name`.
    pub fn add_map(&mut self, name: &str, role: Role, map: &LinMap) -> Result<&mut Self> {
        let field = self.field()?;
        if map.field() != field {
            return Err(Error::FieldMismatch(field.to_string(), map.field().to_string()));
        }
        let domain = self.factors(map.domain())?;
        let codomain = self.factors(map.codomain())?;
        let matrix = map
            .to_rows()
            .iter()
            .map(|row| row.iter().map(|s| field.format_scalar(s)).collect())
            .collect();
        let entry = MapDoc { name: name.to_string(), role, domain, codomain, matrix };
        match self.maps.iter_mut().find(|m| m.name == name) {
            Some(slot) => *slot = entry,
            None => self.maps.push(entry),
        }
        Ok(self)
    }

    pub fn space(&self, factors: &[String]) -> Result<Space> {
        let field = self.field()?;
        let mut acc = Space::ground(field);
        for name in factors {
            let labels = self.spaces.get(name).ok_or_else(|| Error::Format(format!("undeclared space {name:?}")))?;
            acc = acc.tensor(&Space::new(name, field, labels.clone())?)?;
        }
        Ok(acc)
    }

    fn decode(&self, m: &MapDoc) -> Result<LinMap> {
        let field = self.field()?;
        let dom = self.space(&m.domain)?;
        let cod = self.space(&m.codomain)?;
        let bad = |what: String| Error::Format(format!("map {:?}: {what}", m.name));
        if m.matrix.len() != cod.dim() {
            return Err(bad(format!("{} rows, codomain has dimension {}", m.matrix.len(), cod.dim())));
        }
        let mut rows = Vec::with_capacity(m.matrix.len());
        for (i, row) in m.matrix.iter().enumerate() {
            if row.len() != dom.dim() {
                return Err(bad(format!("row {i} has {} entries, domain has dimension {}", row.len(), dom.dim())));
            }
            rows.push(row.iter().map(|s| field.parse_scalar(s)).collect::<Result<Vec<_>>>()?);
        }
        LinMap::from_rows(dom, cod, &rows)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.maps.iter().any(|m| m.name == name)
    }

    pub fn map(&self, name: &str) -> Result<LinMap> {
        let m = self.maps.iter().find(|m| m.name == name).ok_or_else(|| Error::UnknownName(name.to_string()))?;
        self.decode(m)
    }

    /// The map called `name`, which must carry `role`.
    pub fn map_with_role(&self, name: &str, role: Role) -> Result<LinMap> {
        let m = self.maps.iter().find(|m| m.name == name).ok_or_else(|| Error::UnknownName(name.to_string()))?;
        if m.role != role {
            return Err(Error::Format(format!("map {name:?} has role {:?}, expected {role:?}", m.role)));
        }
        self.decode(m)
    }

    /// All maps by name, in document order.
    pub fn all_maps(&self) -> Result<Vec<(String, Role, LinMap)>> {
        self.maps.iter().map(|m| Ok((m.name.clone(), m.role, self.decode(m)?))).collect()
    }

    /// Spaces by name, for expression environments.
    pub fn named_spaces(&self) -> Result<Vec<(String, Space)>> {
        self.spaces.keys().map(|n| Ok((n.clone(), self.space(std::slice::from_ref(n))?))).collect()
    }

    pub fn add_hopf(&mut self, prefix: &str, h: &HopfAlgebra) -> Result<&mut Self> {
        self.add_map(&format!("{prefix}.mult"), Role::Mult, h.mult())?;
        self.add_map(&format!("{prefix}.unit"), Role::Unit, h.unit())?;
        self.add_map(&format!("{prefix}.delta"), Role::Delta, h.delta())?;
        self.add_map(&format!("{prefix}.eps"), Role::Eps, h.eps())?;
        self.add_map(&format!("{prefix}.S"), Role::Antipode, h.antipode())
    }

    pub fn hopf(&self, prefix: &str) -> Result<HopfAlgebra> {
        HopfAlgebra::new(
            prefix,
            self.map_with_role(&format!("{prefix}.mult"), Role::Mult)?,
            self.map_with_role(&format!("{prefix}.unit"), Role::Unit)?,
            self.map_with_role(&format!("{prefix}.delta"), Role::Delta)?,
            self.map_with_role(&format!("{prefix}.eps"), Role::Eps)?,
            self.map_with_role(&format!("{prefix}.S"), Role::Antipode)?,
        )
    }

    pub fn add_coalgebra(&mut self, prefix: &str, c: &Coalgebra) -> Result<&mut Self> {
        self.add_map(&format!("{prefix}.delta"), Role::Delta, c.delta())?;
        self.add_map(&format!("{prefix}.eps"), Role::Eps, c.eps())
    }

    pub fn coalgebra(&self, prefix: &str) -> Result<Coalgebra> {
        Coalgebra::new(
            self.map_with_role(&format!("{prefix}.delta"), Role::Delta)?,
            self.map_with_role(&format!("{prefix}.eps"), Role::Eps)?,
        )
    }

    /// `H.*` and `C.delta`, `C.eps`, `C.act`.
    pub fn add_module_coalgebra(&mut self, mc: &ModuleCoalgebra) -> Result<&mut Self> {
        self.add_hopf("H", mc.h())?;
        self.add_coalgebra("C", mc.coalgebra())?;
        self.add_map("C.act", Role::Action, mc.act())
    }

    pub fn module_coalgebra(&self) -> Result<ModuleCoalgebra> {
        let h = Arc::new(self.hopf("H")?);
        ModuleCoalgebra::new(self.coalgebra("C")?, h, self.map_with_role("C.act", Role::Action)?)
    }

    /// `H.*`, `C.delta`, `C.eps`, `rho` and `alpha`.
    pub fn add_harrison(&mut self, hc: &HarrisonCocycle) -> Result<&mut Self> {
        self.add_hopf("H", hc.h())?;
        self.add_coalgebra("C", hc.coalgebra())?;
        self.add_map("rho", Role::Coaction, hc.rho())?;
        self.add_map("alpha", Role::Cocycle, hc.alpha())
    }

    pub fn weak_coaction(&self) -> Result<WeakCoaction> {
        let h = Arc::new(self.hopf("H")?);
        WeakCoaction::new(self.coalgebra("C")?, h, self.map_with_role("rho", Role::Coaction)?)
    }

    pub fn harrison(&self) -> Result<HarrisonCocycle> {
        HarrisonCocycle::new(self.weak_coaction()?, self.map_with_role("alpha", Role::Cocycle)?)
    }
}
