//! Command arguments name either a catalog builtin or a structure document.

use std::path::Path;

use cotwist::catalog::{self, Builtin};
use cotwist::cocycle::TwistedCocycle;
use cotwist::crossed::{tensor_module, HarrisonCocycle};
use cotwist::doc::{Role, StructureDoc};
use cotwist::equivalence::EquivWitness;
use cotwist::twisting::{LeftTwist, RightTwist};
use cotwist::{Coalgebra, Error, FieldSpec, LinMap, ModuleCoalgebra, Result};

/// Reads `src` as a file when one exists at that path, otherwise as a
/// builtin name exported over `field`.
pub fn load(src: &str, field: FieldSpec) -> Result<StructureDoc> {
    if Path::new(src).is_file() {
        return StructureDoc::from_json(&std::fs::read_to_string(src)?);
    }
    export(src, field)
}

pub fn export(name: &str, field: FieldSpec) -> Result<StructureDoc> {
    let mut doc = StructureDoc::new(field);
    doc.note(format!("builtin {name} over {field}"));
    match catalog::builtin(name, field)? {
        Builtin::Hopf(h) => doc.add_hopf("H", &h)?,
        Builtin::ModuleCoalgebra(mc) => doc.add_module_coalgebra(&mc)?,
        Builtin::Harrison(hc) => doc.add_harrison(&hc)?,
    };
    Ok(doc)
}

/// `C` with its action; a cocycle document gives `C ⊗ H`, a bare Hopf
/// algebra the regular module coalgebra.
pub fn module_coalgebra(doc: &StructureDoc) -> Result<ModuleCoalgebra> {
    if doc.contains("C.act") {
        doc.module_coalgebra()
    } else if doc.contains("rho") {
        tensor_module(&doc.coalgebra("C")?, doc.weak_coaction()?.hopf().clone())
    } else {
        Ok(ModuleCoalgebra::regular(std::sync::Arc::new(doc.hopf("H")?)))
    }
}

/// The coalgebra `C` of a crossed coproduct `C ⊗ H`: the `C.*` maps of
/// `base`, or the ground field.
pub fn base_coalgebra(base: Option<&str>, field: FieldSpec) -> Result<Coalgebra> {
    match base {
        None => Ok(Coalgebra::ground(field)),
        Some(src) => {
            let doc = load(src, field)?;
            if doc.contains("C.delta") {
                doc.coalgebra("C")
            } else {
                Ok(doc.hopf("H")?.coalgebra().clone())
            }
        }
    }
}

pub fn harrison(doc: &StructureDoc) -> Result<HarrisonCocycle> {
    doc.harrison()
}

/// `tau` (with `tau.inv` attached when present), or the twisting of a
/// crossed coproduct document.
pub fn twisting(doc: &StructureDoc) -> Result<RightTwist> {
    if doc.contains("tau") {
        let t = RightTwist::new(module_coalgebra(doc)?, doc.map_with_role("tau", Role::Twisting)?)?;
        return match doc.contains("tau.inv") {
            true => t.with_inverse(doc.map_with_role("tau.inv", Role::Twisting)?),
            false => Ok(t),
        };
    }
    if doc.contains("alpha") && doc.contains("rho") {
        return doc.harrison()?.to_twisting();
    }
    Err(Error::Format("document holds no twisting `tau` and no cocycle".into()))
}

/// A twisting placed on the module coalgebra `mc`, which must carry the
/// same structure maps.
pub fn twisting_on(mc: &ModuleCoalgebra, t: &RightTwist) -> Result<RightTwist> {
    mc.ensure_same_context(t.mc(), "twisting")?;
    if mc.delta() != t.mc().delta() || mc.act() != t.mc().act() {
        return Err(Error::Shape("the twisting belongs to a different module coalgebra".into()));
    }
    let out = RightTwist::new(mc.clone(), t.map().clone())?;
    match t.inverse() {
        Some(lam) => out.with_inverse(lam.clone()),
        None => Ok(out),
    }
}

pub fn left_twisting(doc: &StructureDoc) -> Result<LeftTwist> {
    let l = LeftTwist::new(module_coalgebra(doc)?, doc.map_with_role("gamma", Role::LeftTwisting)?)?;
    match doc.contains("gamma.inv") {
        true => l.with_inverse(doc.map_with_role("gamma.inv", Role::LeftTwisting)?),
        false => Ok(l),
    }
}

pub fn twisted_cocycle(doc: &StructureDoc) -> Result<TwistedCocycle> {
    if !doc.contains("C.act") {
        return Err(Error::Format("a twisted 2-cocycle document needs `C.act`; lift a Harrison cocycle first".into()));
    }
    TwistedCocycle::new(doc.module_coalgebra()?, doc.map_with_role("alpha", Role::Cocycle)?)
}

/// `tau`, `lambda` and `v` on one module coalgebra.
pub fn witness(doc: &StructureDoc) -> Result<EquivWitness> {
    let mc = module_coalgebra(doc)?;
    let tau = RightTwist::new(mc.clone(), doc.map_with_role("tau", Role::Twisting)?)?;
    let lambda = RightTwist::new(mc, doc.map_with_role("lambda", Role::Twisting)?)?;
    EquivWitness::new(tau, lambda, doc.map_with_role("v", Role::Witness)?)
}

/// The map `u : C → H` named `u` in `src`.
pub fn gauge(src: &str, field: FieldSpec) -> Result<LinMap> {
    load(src, field)?.map("u")
}

pub fn base_doc(mc: &ModuleCoalgebra, field: FieldSpec) -> Result<StructureDoc> {
    let mut doc = StructureDoc::new(field);
    doc.add_module_coalgebra(mc)?;
    Ok(doc)
}

pub fn add_twisting(doc: &mut StructureDoc, name: &str, t: &RightTwist) -> Result<()> {
    doc.add_map(name, Role::Twisting, t.map())?;
    if let Some(lam) = t.inverse() {
        doc.add_map(&format!("{name}.inv"), Role::Twisting, lam)?;
    }
    Ok(())
}

pub fn witness_doc(w: &EquivWitness) -> Result<StructureDoc> {
    let mut doc = base_doc(w.mc(), w.mc().h().field())?;
    doc.add_map("tau", Role::Twisting, w.tau().map())?;
    doc.add_map("lambda", Role::Twisting, w.lambda().map())?;
    doc.add_map("v", Role::Witness, w.v())?;
    Ok(doc)
}
