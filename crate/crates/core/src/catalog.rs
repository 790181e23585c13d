//! Built-in Hopf algebras, module coalgebras and cocycles.

use std::sync::Arc;

use crate::crossed::{HarrisonCocycle, WeakCoaction};
use crate::error::{Error, Result};
use crate::hopf::{Coalgebra, HopfAlgebra};
use crate::linmap::LinMap;
use crate::modcoalg::ModuleCoalgebra;
use crate::scalar::{FieldSpec, Scalar};
use crate::space::Space;

pub const HOPF_NAMES: &[&str] = &["group:C2", "group:C4", "dualgroup:C2", "sweedler:H4"];

pub const HARRISON_NAMES: &[&str] = &["harrison:C2-sign", "harrison:C2-trivial", "harrison:H4-twist"];

/// Every name accepted by [`builtin`].
pub fn names() -> Vec<String> {
    let mut out: Vec<String> = HOPF_NAMES.iter().map(|s| s.to_string()).collect();
    for h in HOPF_NAMES {
        out.push(format!("regular:{h}"));
        out.push(format!("trivial:{h}"));
    }
    out.extend(HARRISON_NAMES.iter().map(|s| s.to_string()));
    out
}

pub enum Builtin {
    Hopf(Arc<HopfAlgebra>),
    ModuleCoalgebra(ModuleCoalgebra),
    Harrison(HarrisonCocycle),
}

pub fn builtin(name: &str, field: FieldSpec) -> Result<Builtin> {
    if let Some(h) = name.strip_prefix("regular:") {
        return Ok(Builtin::ModuleCoalgebra(ModuleCoalgebra::regular(Arc::new(hopf(h, field)?))));
    }
    if let Some(h) = name.strip_prefix("trivial:") {
        return Ok(Builtin::ModuleCoalgebra(ModuleCoalgebra::trivial(Arc::new(hopf(h, field)?))));
    }
    if name.starts_with("harrison:") {
        return Ok(Builtin::Harrison(harrison(name, field)?));
    }
    Ok(Builtin::Hopf(Arc::new(hopf(name, field)?)))
}

pub fn hopf(name: &str, field: FieldSpec) -> Result<HopfAlgebra> {
    match name {
        "group:C2" => group_algebra(field, 2),
        "group:C4" => group_algebra(field, 4),
        "dualgroup:C2" => dual_group_algebra(field, 2),
        "sweedler:H4" => sweedler(field),
        _ => Err(Error::UnknownName(name.to_string())),
    }
}

pub fn module_coalgebra(name: &str, field: FieldSpec) -> Result<ModuleCoalgebra> {
    match builtin(name, field)? {
        Builtin::ModuleCoalgebra(mc) => Ok(mc),
        _ => Err(Error::UnknownName(format!("{name} is not a module coalgebra"))),
    }
}

fn one(field: FieldSpec) -> Scalar {
    field.one()
}

/// Group algebra of the cyclic group of order `n`: basis `1, g, g2, …`,
/// `Δg = g⊗g`, `S(g) = g⁻¹`.
pub fn group_algebra(field: FieldSpec, n: usize) -> Result<HopfAlgebra> {
    let labels = (0..n).map(|i| match i {
        0 => "1".to_string(),
        1 => "g".to_string(),
        _ => format!("g{i}"),
    });
    let h = Space::new(&format!("kC{n}"), field, labels)?;
    let hh = h.tensor(&h)?;
    let k = Space::ground(field);
    let mult = LinMap::from_fn(hh.clone(), h.clone(), |j| vec![((j / n + j % n) % n, one(field))])?;
    let unit = LinMap::from_fn(k.clone(), h.clone(), |_| vec![(0, one(field))])?;
    let delta = LinMap::from_fn(h.clone(), hh, |a| vec![(a * n + a, one(field))])?;
    let eps = LinMap::from_fn(h.clone(), k, |_| vec![(0, one(field))])?;
    let s = LinMap::from_fn(h.clone(), h, |a| vec![((n - a) % n, one(field))])?;
    HopfAlgebra::new(&format!("group:C{n}"), mult, unit, delta, eps, s)
}

/// Dual of the group algebra of the cyclic group of order `n`: basis of
/// idempotents `e0, e1, …`, `Δeₐ = Σ_b e_b ⊗ e_{a−b}`.
pub fn dual_group_algebra(field: FieldSpec, n: usize) -> Result<HopfAlgebra> {
    let h = Space::new(&format!("k^C{n}"), field, (0..n).map(|i| format!("e{i}")))?;
    let hh = h.tensor(&h)?;
    let k = Space::ground(field);
    let mult = LinMap::from_fn(hh.clone(), h.clone(), |j| {
        let (a, b) = (j / n, j % n);
        if a == b {
            vec![(a, one(field))]
        } else {
            vec![]
        }
    })?;
    let unit = LinMap::from_fn(k.clone(), h.clone(), |_| (0..n).map(|a| (a, one(field))).collect())?;
    let delta = LinMap::from_fn(h.clone(), hh, |a| (0..n).map(|b| (b * n + (a + n - b) % n, one(field))).collect())?;
    let eps = LinMap::from_fn(h.clone(), k, |a| if a == 0 { vec![(0, one(field))] } else { vec![] })?;
    let s = LinMap::from_fn(h.clone(), h, |a| vec![((n - a) % n, one(field))])?;
    HopfAlgebra::new(&format!("dualgroup:C{n}"), mult, unit, delta, eps, s)
}

/// Sweedler's four-dimensional Hopf algebra: basis `1, g, x, gx` with
/// `g² = 1`, `x² = 0`, `xg = −gx`, `Δx = x⊗1 + g⊗x`, `S(x) = −gx`.
pub fn sweedler(field: FieldSpec) -> Result<HopfAlgebra> {
    if field.is_char_two() {
        return Err(Error::CharacteristicTwo("sweedler:H4".into()));
    }
    let h = Space::new("H4", field, ["1", "g", "x", "gx"])?;
    let hh = h.tensor(&h)?;
    let k = Space::ground(field);
    // basis index = g-exponent + 2·x-exponent
    let idx = |a: usize, b: usize| (a % 2) + 2 * b;
    let sign = |neg: bool| if neg { field.from_i64(-1) } else { field.one() };
    let mult = LinMap::from_fn(hh.clone(), h.clone(), |j| {
        let (p, q) = (j / 4, j % 4);
        let (a, b, c, d) = (p % 2, p / 2, q % 2, q / 2);
        if b + d > 1 {
            vec![]
        } else {
            vec![(idx(a + c, b + d), sign(b * c == 1))]
        }
    })?;
    let unit = LinMap::from_fn(k.clone(), h.clone(), |_| vec![(0, field.one())])?;
    let delta = LinMap::from_fn(h.clone(), hh, |p| {
        let (a, b) = (p % 2, p / 2);
        if b == 0 {
            vec![(idx(a, 0) * 4 + idx(a, 0), field.one())]
        } else {
            vec![(idx(a, 1) * 4 + idx(a, 0), field.one()), (idx(a + 1, 0) * 4 + idx(a, 1), field.one())]
        }
    })?;
    let eps = LinMap::from_fn(h.clone(), k, |p| if p < 2 { vec![(0, field.one())] } else { vec![] })?;
    // S(g^a x^b) = S(x)^b g^a; S(x) = −gx, S(gx) = x
    let s = LinMap::from_int_rows(
        h.clone(),
        h,
        &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 0, 1], &[0, 0, -1, 0]],
    )?;
    HopfAlgebra::new("sweedler:H4", mult, unit, delta, eps, s)
}

/// Harrison cocycles with trivial weak coaction on `C = k`.
///
/// `harrison:C2-sign` is `α(1) = Σ (−1)^{ab} eₐ ⊗ e_b` on the dual group
/// algebra of `C2`; `harrison:C2-trivial` is `α(1) = 1 ⊗ 1`;
/// `harrison:H4-twist` is `α(1) = 1⊗1 + gx⊗x` on Sweedler's algebra.
/// All three live on `C = k` with the trivial weak coaction.
pub fn harrison(name: &str, field: FieldSpec) -> Result<HarrisonCocycle> {
    let k = Space::ground(field);
    let (h, entries): (HopfAlgebra, Vec<(usize, Scalar)>) = match name {
        "harrison:C2-sign" => (
            dual_group_algebra(field, 2)?,
            (0..4).map(|j| (j, if j == 3 { field.from_i64(-1) } else { field.one() })).collect(),
        ),
        "harrison:C2-trivial" => (dual_group_algebra(field, 2)?, (0..4).map(|j| (j, field.one())).collect()),
        "harrison:H4-twist" => (sweedler(field)?, vec![(0, field.one()), (3 * 4 + 2, field.one())]),
        _ => return Err(Error::UnknownName(name.to_string())),
    };
    let h = Arc::new(h);
    let hh = h.space().tensor(h.space())?;
    let alpha = LinMap::from_fn(k, hh, |_| entries.clone())?;
    let coaction = WeakCoaction::trivial(Coalgebra::ground(field), h)?;
    HarrisonCocycle::new(coaction, alpha)
}
