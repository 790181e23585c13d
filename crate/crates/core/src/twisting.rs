//! Twistings `τ : C → H ⊗ C` and left hand twistings `λ : C → C ⊗ H` of a
//! right H-module coalgebra, their monoid structures, the twisted
//! coalgebras and comodules, inversion, and the bijection `ℓ`/`r` between
//! invertible right and left twistings.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::linalg;
use crate::linmap::LinMap;
use crate::modcoalg::{record, ModuleCoalgebra, RelHopfModule, Side};
use crate::report::CheckReport;
use crate::scalar::Scalar;
use crate::space::Space;
use crate::wiring::Wiring;

pub const NORMAL_COUNIT_C: &str = "normal: (id⊗ε_C)τ = ε_C(-)1";
pub const NORMAL_COUNIT_H: &str = "normal: (ε_H⊗id)τ = id";
pub const MODULE_COMPAT: &str = "module compatibility";
pub const COMULT_COMPAT: &str = "comultiplicativity";
pub const MODULE_COMPAT_S: &str = "module compatibility, antipode form";
pub const MODULE_FORMS_AGREE: &str = "module compatibility forms agree";

pub const LEFT_NORMAL_COUNIT_H: &str = "normal: (id⊗ε_H)λ = id";
pub const LEFT_NORMAL_COUNIT_C: &str = "normal: (ε_C⊗id)λ = ε_C(-)1";
pub const LEFT_MODULE_COMPAT_S: &str = "module compatibility, inverse antipode form";

/// `H ⊗ C`.
pub fn hc(mc: &ModuleCoalgebra) -> Space {
    mc.h().space().tensor(mc.space()).expect("same field")
}

/// `C ⊗ H`.
pub fn ch(mc: &ModuleCoalgebra) -> Space {
    mc.space().tensor(mc.h().space()).expect("same field")
}

fn ensure_right(mc: &ModuleCoalgebra, t: &LinMap) -> Result<()> {
    t.domain().ensure_eq(mc.space(), "twisting domain")?;
    t.codomain().ensure_eq(&hc(mc), "twisting codomain (H⊗C)")
}

fn ensure_left(mc: &ModuleCoalgebra, t: &LinMap) -> Result<()> {
    t.domain().ensure_eq(mc.space(), "left twisting domain")?;
    t.codomain().ensure_eq(&ch(mc), "left twisting codomain (C⊗H)")
}

/// `σ(c) = 1 ⊗ c`.
pub fn sigma(mc: &ModuleCoalgebra) -> LinMap {
    Wiring::new(&[mc.space()]).unit(0, mc.h()).expect("unit leg").finish()
}

/// `σ′(c) = c ⊗ 1`.
pub fn sigma_prime(mc: &ModuleCoalgebra) -> LinMap {
    Wiring::new(&[mc.space()]).unit(1, mc.h()).expect("unit leg").finish()
}

/// `τ₁ ∗ τ₂ = (m_H ⊗ id)(id ⊗ τ₂)τ₁`.
pub fn star(mc: &ModuleCoalgebra, t1: &LinMap, t2: &LinMap) -> Result<LinMap> {
    ensure_right(mc, t1)?;
    ensure_right(mc, t2)?;
    let (h, c) = (mc.h().space(), mc.space());
    Ok(Wiring::from_map(t1, &[h, c])?.apply(1, 1, t2, &[h, c])?.mult(0, mc.h())?.finish())
}

/// `γ₁ × γ₂ = T ∘ (Tγ₂ ∗ Tγ₁)`.
pub fn times(mc: &ModuleCoalgebra, g1: &LinMap, g2: &LinMap) -> Result<LinMap> {
    ensure_left(mc, g1)?;
    ensure_left(mc, g2)?;
    let (h, c) = (mc.h().space(), mc.space());
    let t = LinMap::swap(c, h)?;
    let back = LinMap::swap(h, c)?;
    back.compose(&star(mc, &t.compose(g2)?, &t.compose(g1)?)?)
}

/// `f_τ(h ⊗ c) = hτ(c)`, the endomorphism of `H ⊗ C` attached to `τ`.
pub fn f_tau(mc: &ModuleCoalgebra, t: &LinMap) -> Result<LinMap> {
    ensure_right(mc, t)?;
    let (h, c) = (mc.h().space(), mc.space());
    Ok(Wiring::new(&[h, c]).apply(1, 1, t, &[h, c])?.mult(0, mc.h())?.finish())
}

/// Inverse of `t` in `(Hom(C, H⊗C), ∗, σ)`, through `f_{τ∗λ} = f_λ ∘ f_τ`.
pub fn star_inverse(mc: &ModuleCoalgebra, t: &LinMap) -> Result<LinMap> {
    let f = f_tau(mc, t)?;
    let finv = linalg::inverse(&f).map_err(|e| Error::NotInvertible(format!("f_τ is singular: {e}")))?;
    let unit_leg = Wiring::new(&[mc.space()]).unit(0, mc.h())?.finish();
    let lam = finv.compose(&unit_leg)?;
    let s = sigma(mc);
    if star(mc, t, &lam)? != s || star(mc, &lam, t)? != s {
        return Err(Error::Invariant("f_τ inverse does not give a two-sided ∗-inverse".into()));
    }
    Ok(lam)
}

/// Inverse of `g` in `(Hom(C, C⊗H), ×, σ′)`.
pub fn times_inverse(mc: &ModuleCoalgebra, g: &LinMap) -> Result<LinMap> {
    ensure_left(mc, g)?;
    let (h, c) = (mc.h().space(), mc.space());
    let tg = LinMap::swap(c, h)?.compose(g)?;
    let mu = LinMap::swap(h, c)?.compose(&star_inverse(mc, &tg)?)?;
    let s = sigma_prime(mc);
    if times(mc, g, &mu)? != s || times(mc, &mu, g)? != s {
        return Err(Error::Invariant("×-inverse is not two-sided".into()));
    }
    Ok(mu)
}

/// A normalized map `σ + (P_H ⊗ P_C) ∘ r`, where `P_H = id − uε_H`,
/// `P_C = id − eε_C` for a fixed `e` with `ε_C(e) = 1`, and `r` has
/// entries drawn from `coeff`.
pub fn normalized_right(mc: &ModuleCoalgebra, mut coeff: impl FnMut() -> Scalar) -> Result<LinMap> {
    let (ph, pc) = projections(mc)?;
    let hc = hc(mc);
    let r = LinMap::from_fn(mc.space().clone(), hc.clone(), |_| (0..hc.dim()).map(|i| (i, coeff())).collect())?;
    sigma(mc).add(&ph.kron(&pc)?.compose(&r)?)
}

/// The left analogue of [`normalized_right`].
pub fn normalized_left(mc: &ModuleCoalgebra, mut coeff: impl FnMut() -> Scalar) -> Result<LinMap> {
    let (ph, pc) = projections(mc)?;
    let ch = ch(mc);
    let r = LinMap::from_fn(mc.space().clone(), ch.clone(), |_| (0..ch.dim()).map(|i| (i, coeff())).collect())?;
    sigma_prime(mc).add(&pc.kron(&ph)?.compose(&r)?)
}

fn projections(mc: &ModuleCoalgebra) -> Result<(LinMap, LinMap)> {
    let h = mc.h();
    let ph = LinMap::identity(h.space()).sub(&h.unit_counit())?;
    let field = mc.space().field();
    let eps = mc.eps();
    let (j, v) = (0..mc.space().dim())
        .find_map(|j| eps.column(j).first().map(|(_, v)| (j, v.clone())))
        .ok_or_else(|| Error::Shape("counit of C vanishes".into()))?;
    let inv = field.inv(&v).expect("nonzero");
    let e = LinMap::from_fn(Space::ground(field), mc.space().clone(), |_| vec![(j, inv.clone())])?;
    let pc = LinMap::identity(mc.space()).sub(&e.compose(eps)?)?;
    Ok((ph, pc))
}

/// A candidate twisting `τ : C → H ⊗ C` with lazily computed checks.
#[derive(Clone, Debug)]
pub struct RightTwist {
    mc: ModuleCoalgebra,
    map: LinMap,
    report: OnceLock<CheckReport>,
    inverse: Option<LinMap>,
}

impl RightTwist {
    pub fn new(mc: ModuleCoalgebra, map: LinMap) -> Result<Self> {
        ensure_right(&mc, &map)?;
        Ok(RightTwist { mc, map, report: OnceLock::new(), inverse: None })
    }

    pub fn sigma(mc: &ModuleCoalgebra) -> Self {
        RightTwist::new(mc.clone(), sigma(mc)).expect("σ has the right shape")
    }

    pub fn mc(&self) -> &ModuleCoalgebra {
        &self.mc
    }

    pub fn map(&self) -> &LinMap {
        &self.map
    }

    pub fn inverse(&self) -> Option<&LinMap> {
        self.inverse.as_ref()
    }

    pub fn require_inverse(&self) -> Result<&LinMap> {
        self.inverse.as_ref().ok_or_else(|| Error::InverseMissing("twisting".into()))
    }

    /// Attaches `λ` after checking `τ∗λ = λ∗τ = σ`.
    pub fn with_inverse(mut self, lam: LinMap) -> Result<Self> {
        let s = sigma(&self.mc);
        let mut r = CheckReport::new("twisting inverse");
        r.check_maps("τ∗λ = σ", &star(&self.mc, &self.map, &lam)?, &s);
        r.check_maps("λ∗τ = σ", &star(&self.mc, &lam, &self.map)?, &s);
        if !r.passed() {
            return Err(Error::NotInvertible(r.failure_summary()));
        }
        self.inverse = Some(lam);
        Ok(self)
    }

    /// Computes and attaches the ∗-inverse.
    pub fn invertible(self) -> Result<Self> {
        let lam = star_inverse(&self.mc, &self.map)?;
        self.with_inverse(lam)
    }

    /// The inverse `τ⁻¹` as a twisting of `C^τ`, with `τ` attached as its
    /// inverse.
    pub fn inverse_twist(&self) -> Result<RightTwist> {
        let lam = self.require_inverse()?.clone();
        let twisted = twist_coalgebra(self, false)?;
        RightTwist::new(twisted, lam)?.with_inverse(self.map.clone())
    }

    pub fn star(&self, other: &RightTwist) -> Result<RightTwist> {
        self.mc.ensure_same_context(&other.mc, "∗ product")?;
        RightTwist::new(self.mc.clone(), star(&self.mc, &self.map, &other.map)?)
    }

    /// All twisting conditions, computed once.
    pub fn report(&self) -> &CheckReport {
        self.report.get_or_init(|| check_right(&self.mc, &self.map))
    }

    /// Tri-state flag: `None` while unchecked, otherwise the outcome.
    pub fn flag(&self, name: &str) -> Option<bool> {
        self.report.get().and_then(|r| r.outcome(name))
    }

    pub fn is_twisting(&self) -> bool {
        self.report().passed()
    }

    pub fn verified(self) -> Result<Self> {
        if self.is_twisting() {
            Ok(self)
        } else {
            Err(Error::NotATwisting(Box::new(self.report().clone())))
        }
    }
}

fn check_right(mc: &ModuleCoalgebra, t: &LinMap) -> CheckReport {
    let (c, h) = (mc.space(), mc.h().space());
    let hs = mc.h();
    let mut r = CheckReport::new(format!("twisting of {}", c.name()));
    let tau = |w: Wiring, at: usize| w.apply(at, 1, t, &[h, c]);
    let fin = |w: Result<Wiring>| w.map(Wiring::finish);
    record(
        &mut r,
        NORMAL_COUNIT_C,
        fin(tau(Wiring::new(&[c]), 0).and_then(|w| w.eps(1, mc.coalgebra()))),
        hs.unit().compose(mc.eps()),
    );
    record(
        &mut r,
        NORMAL_COUNIT_H,
        fin(tau(Wiring::new(&[c]), 0).and_then(|w| w.eps(0, hs))),
        Ok(LinMap::identity(c)),
    );
    let eq6 = record(
        &mut r,
        MODULE_COMPAT,
        fin(tau(Wiring::new(&[c, h]), 0)
            .and_then(|w| w.delta(2, hs))
            .and_then(|w| w.permute(&[0, 2, 1, 3]))
            .and_then(|w| w.mult(0, hs))
            .and_then(|w| w.act(1, mc))),
        fin(Wiring::new(&[c, h])
            .delta(1, hs)
            .and_then(|w| w.permute(&[1, 0, 2]))
            .and_then(|w| w.act(1, mc))
            .and_then(|w| tau(w, 1))
            .and_then(|w| w.mult(0, hs))),
    );
    record(
        &mut r,
        COMULT_COMPAT,
        fin(tau(Wiring::new(&[c]), 0)
            .and_then(|w| w.delta(1, mc.coalgebra()))
            .and_then(|w| tau(w, 2))
            .and_then(|w| w.act(1, mc))),
        fin(Wiring::new(&[c])
            .delta(0, mc.coalgebra())
            .and_then(|w| tau(w, 0))
            .and_then(|w| tau(w, 2))
            .and_then(|w| w.delta(2, hs))
            .and_then(|w| w.permute(&[0, 2, 1, 3, 4]))
            .and_then(|w| w.mult(0, hs))
            .and_then(|w| w.act(1, mc))),
    );
    let eq10 = record(
        &mut r,
        MODULE_COMPAT_S,
        fin(tau(Wiring::new(&[c, h]), 0)
            .and_then(|w| w.delta_n(2, hs, 2))
            .and_then(|w| w.map(2, hs.antipode()))
            .and_then(|w| w.permute(&[2, 0, 3, 1, 4]))
            .and_then(|w| w.mult(0, hs))
            .and_then(|w| w.mult(0, hs))
            .and_then(|w| w.act(1, mc))),
        fin(Wiring::new(&[c, h]).act(0, mc).and_then(|w| tau(w, 0))),
    );
    r.check(
        MODULE_FORMS_AGREE,
        eq6 == eq10,
        (eq6 != eq10).then(|| format!("direct form {eq6}, antipode form {eq10}")),
    );
    r
}

/// A candidate left hand twisting `λ : C → C ⊗ H`.
#[derive(Clone, Debug)]
pub struct LeftTwist {
    mc: ModuleCoalgebra,
    map: LinMap,
    report: OnceLock<CheckReport>,
    inverse: Option<LinMap>,
}

impl LeftTwist {
    pub fn new(mc: ModuleCoalgebra, map: LinMap) -> Result<Self> {
        ensure_left(&mc, &map)?;
        Ok(LeftTwist { mc, map, report: OnceLock::new(), inverse: None })
    }

    pub fn sigma_prime(mc: &ModuleCoalgebra) -> Self {
        LeftTwist::new(mc.clone(), sigma_prime(mc)).expect("σ′ has the right shape")
    }

    pub fn mc(&self) -> &ModuleCoalgebra {
        &self.mc
    }

    pub fn map(&self) -> &LinMap {
        &self.map
    }

    pub fn inverse(&self) -> Option<&LinMap> {
        self.inverse.as_ref()
    }

    pub fn require_inverse(&self) -> Result<&LinMap> {
        self.inverse.as_ref().ok_or_else(|| Error::InverseMissing("left twisting".into()))
    }

    pub fn with_inverse(mut self, mu: LinMap) -> Result<Self> {
        let s = sigma_prime(&self.mc);
        let mut r = CheckReport::new("left twisting inverse");
        r.check_maps("γ×μ = σ′", &times(&self.mc, &self.map, &mu)?, &s);
        r.check_maps("μ×γ = σ′", &times(&self.mc, &mu, &self.map)?, &s);
        if !r.passed() {
            return Err(Error::NotInvertible(r.failure_summary()));
        }
        self.inverse = Some(mu);
        Ok(self)
    }

    pub fn invertible(self) -> Result<Self> {
        let mu = times_inverse(&self.mc, &self.map)?;
        self.with_inverse(mu)
    }

    pub fn times(&self, other: &LeftTwist) -> Result<LeftTwist> {
        self.mc.ensure_same_context(&other.mc, "× product")?;
        LeftTwist::new(self.mc.clone(), times(&self.mc, &self.map, &other.map)?)
    }

    pub fn report(&self) -> &CheckReport {
        self.report.get_or_init(|| check_left(&self.mc, &self.map))
    }

    pub fn flag(&self, name: &str) -> Option<bool> {
        self.report.get().and_then(|r| r.outcome(name))
    }

    pub fn is_twisting(&self) -> bool {
        self.report().passed()
    }

    pub fn verified(self) -> Result<Self> {
        if self.is_twisting() {
            Ok(self)
        } else {
            Err(Error::NotATwisting(Box::new(self.report().clone())))
        }
    }
}

fn check_left(mc: &ModuleCoalgebra, l: &LinMap) -> CheckReport {
    let (c, h) = (mc.space(), mc.h().space());
    let hs = mc.h();
    let mut r = CheckReport::new(format!("left hand twisting of {}", c.name()));
    let lam = |w: Wiring, at: usize| w.apply(at, 1, l, &[c, h]);
    let fin = |w: Result<Wiring>| w.map(Wiring::finish);
    record(
        &mut r,
        LEFT_NORMAL_COUNIT_H,
        fin(lam(Wiring::new(&[c]), 0).and_then(|w| w.eps(1, hs))),
        Ok(LinMap::identity(c)),
    );
    record(
        &mut r,
        LEFT_NORMAL_COUNIT_C,
        fin(lam(Wiring::new(&[c]), 0).and_then(|w| w.eps(0, mc.coalgebra()))),
        hs.unit().compose(mc.eps()),
    );
    let eq8 = record(
        &mut r,
        MODULE_COMPAT,
        fin(lam(Wiring::new(&[c, h]), 0)
            .and_then(|w| w.delta(2, hs))
            .and_then(|w| w.permute(&[0, 2, 1, 3]))
            .and_then(|w| w.act(0, mc))
            .and_then(|w| w.mult(1, hs))),
        fin(Wiring::new(&[c, h])
            .delta(1, hs)
            .and_then(|w| w.act(0, mc))
            .and_then(|w| lam(w, 0))
            .and_then(|w| w.permute(&[0, 2, 1]))
            .and_then(|w| w.mult(1, hs))),
    );
    record(
        &mut r,
        COMULT_COMPAT,
        fin(lam(Wiring::new(&[c]), 0)
            .and_then(|w| w.delta(0, mc.coalgebra()))
            .and_then(|w| lam(w, 0))
            .and_then(|w| w.permute(&[0, 2, 1, 3]))
            .and_then(|w| w.act(1, mc))),
        fin(Wiring::new(&[c])
            .delta(0, mc.coalgebra())
            .and_then(|w| lam(w, 0))
            .and_then(|w| lam(w, 2))
            .and_then(|w| w.delta(1, hs))
            .and_then(|w| w.permute(&[0, 3, 1, 4, 2]))
            .and_then(|w| w.act(1, mc))
            .and_then(|w| w.mult(2, hs))),
    );
    let eq11 = match hs.antipode_inverse() {
        Ok(sbar) => record(
            &mut r,
            LEFT_MODULE_COMPAT_S,
            fin(lam(Wiring::new(&[c, h]), 0)
                .and_then(|w| w.delta_n(2, hs, 2))
                .and_then(|w| w.map(4, sbar))
                .and_then(|w| w.permute(&[0, 2, 4, 1, 3]))
                .and_then(|w| w.act(0, mc))
                .and_then(|w| w.mult(1, hs))
                .and_then(|w| w.mult(1, hs))),
            fin(Wiring::new(&[c, h]).act(0, mc).and_then(|w| lam(w, 0))),
        ),
        Err(e) => r.check(LEFT_MODULE_COMPAT_S, false, Some(e.to_string())),
    };
    r.check(
        MODULE_FORMS_AGREE,
        eq8 == eq11,
        (eq8 != eq11).then(|| format!("direct form {eq8}, inverse antipode form {eq11}")),
    );
    r
}

/// `Δ_τ = (m_H ⊗ id)(id ⊗ τ)Δ`, whether or not `τ` is a twisting.
pub fn twisted_delta(mc: &ModuleCoalgebra, t: &LinMap) -> Result<LinMap> {
    ensure_right(mc, t)?;
    let (c, h) = (mc.space(), mc.h().space());
    Ok(Wiring::new(&[c])
        .delta(0, mc.coalgebra())?
        .apply(1, 1, t, &[h, c])?
        .act(0, mc)?
        .finish())
}

/// `ₗΔ(c) = c₁.₀ ⊗ c₂·c₁.₁`.
pub fn left_twisted_delta(mc: &ModuleCoalgebra, l: &LinMap) -> Result<LinMap> {
    ensure_left(mc, l)?;
    let (c, h) = (mc.space(), mc.h().space());
    Ok(Wiring::new(&[c])
        .delta(0, mc.coalgebra())?
        .apply(0, 1, l, &[c, h])?
        .permute(&[0, 2, 1])?
        .act(1, mc)?
        .finish())
}

/// `C^τ`. With `force`, the twisted structure is returned even when `τ`
/// fails its checks (and may then fail to be coassociative).
pub fn twist_coalgebra(t: &RightTwist, force: bool) -> Result<ModuleCoalgebra> {
    if !force && !t.is_twisting() {
        return Err(Error::NotATwisting(Box::new(t.report().clone())));
    }
    t.mc.with_delta(twisted_delta(&t.mc, &t.map)?)
}

/// `^λC`.
pub fn twist_coalgebra_left(l: &LeftTwist, force: bool) -> Result<ModuleCoalgebra> {
    if !force && !l.is_twisting() {
        return Err(Error::NotATwisting(Box::new(l.report().clone())));
    }
    l.mc.with_delta(left_twisted_delta(&l.mc, &l.map)?)
}

/// `M^τ` with `ρ^τ(m) = m₀·m₁.₋₁ ⊗ m₁.₀`, an object over `C^τ`.
pub fn twist_comodule(m: &RelHopfModule, t: &RightTwist) -> Result<RelHopfModule> {
    if m.side != Side::Right {
        return Err(Error::Shape("a right twisting twists right C-comodules".into()));
    }
    m.mc.ensure_same_context(&t.mc, "comodule twisting")?;
    let twisted = twist_coalgebra(t, false)?;
    let (c, h, ms) = (t.mc.space(), t.mc.h().space(), &m.space);
    let coact = Wiring::from_map(&m.coact, &[ms, c])?
        .apply(1, 1, &t.map, &[h, c])?
        .apply(0, 2, &m.act, &[ms])?
        .finish();
    RelHopfModule::new(twisted, m.act.clone(), coact, Side::Right)
}

/// `^λM` with `^λρ(m) = m₋₁.₀ ⊗ m₀m₋₁.₁`, an object over `^λC`.
pub fn twist_comodule_left(m: &RelHopfModule, l: &LeftTwist) -> Result<RelHopfModule> {
    if m.side != Side::Left {
        return Err(Error::Shape("a left hand twisting twists left C-comodules".into()));
    }
    m.mc.ensure_same_context(&l.mc, "comodule twisting")?;
    let twisted = twist_coalgebra_left(l, false)?;
    let (c, h, ms) = (l.mc.space(), l.mc.h().space(), &m.space);
    let coact = Wiring::from_map(&m.coact, &[c, ms])?
        .apply(0, 1, &l.map, &[c, h])?
        .permute(&[0, 2, 1])?
        .apply(1, 2, &m.act, &[ms])?
        .finish();
    RelHopfModule::new(twisted, m.act.clone(), coact, Side::Left)
}

/// `ℓ(τ)` for an invertible twisting, with `ℓ(τ)′` attached as inverse.
pub fn left_of(t: &RightTwist) -> Result<LeftTwist> {
    let lam = t.require_inverse()?;
    let mc = &t.mc;
    let hs = mc.h();
    let sbar = hs.antipode_inverse()?;
    let (c, h) = (mc.space(), hs.space());
    let start = || -> Result<Wiring> {
        Wiring::from_map(&t.map, &[h, c])?.apply(1, 1, lam, &[h, c])?.map(0, sbar)?.map(1, sbar)
    };
    let ell = start()?.delta(0, hs)?.permute(&[3, 2, 0, 1])?.mult(1, hs)?.act(0, mc)?.finish();
    let ell_inv = start()?
        .delta_n(0, hs, 2)?
        .delta(3, hs)?
        .map(2, sbar)?
        .permute(&[5, 3, 0, 2, 4, 1])?
        .mult(1, hs)?
        .mult(2, hs)?
        .mult(2, hs)?
        .act(0, mc)?
        .finish();
    LeftTwist::new(mc.clone(), ell)?.with_inverse(ell_inv)
}

/// `r(γ)` for an invertible left hand twisting, with `r(γ)′` attached.
pub fn right_of(g: &LeftTwist) -> Result<RightTwist> {
    let mu = g.require_inverse()?;
    let mc = &g.mc;
    let hs = mc.h();
    let s = hs.antipode();
    let (c, h) = (mc.space(), hs.space());
    let start = || -> Result<Wiring> {
        Wiring::from_map(&g.map, &[c, h])?.apply(0, 1, mu, &[c, h])?.map(1, s)?.map(2, s)
    };
    let r = start()?.delta(2, hs)?.permute(&[2, 0, 1, 3])?.mult(2, hs)?.act(1, mc)?.finish();
    let r_inv = start()?
        .delta_n(2, hs, 2)?
        .map(2, s)?
        .delta(1, hs)?
        .permute(&[3, 1, 4, 0, 2, 5])?
        .mult(0, hs)?
        .mult(0, hs)?
        .mult(2, hs)?
        .act(1, mc)?
        .finish();
    RightTwist::new(mc.clone(), r)?.with_inverse(r_inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::scalar::FieldSpec;
    use std::sync::Arc;

    fn regular(name: &str) -> ModuleCoalgebra {
        ModuleCoalgebra::regular(Arc::new(catalog::hopf(name, FieldSpec::Rationals).unwrap()))
    }

    #[test]
    fn sigma_is_a_twisting_and_unit() {
        let mc = regular("sweedler:H4");
        let s = RightTwist::sigma(&mc);
        assert_eq!(s.flag(MODULE_COMPAT), None);
        assert!(s.is_twisting(), "{}", s.report());
        assert_eq!(s.flag(MODULE_COMPAT), Some(true));
        assert_eq!(twist_coalgebra(&s, false).unwrap().delta(), mc.delta());
        let l = LeftTwist::sigma_prime(&mc);
        assert!(l.is_twisting(), "{}", l.report());
        assert_eq!(star_inverse(&mc, &sigma(&mc)).unwrap(), sigma(&mc));
    }

    #[test]
    fn transpose_of_units() {
        let mc = regular("sweedler:H4");
        let s = RightTwist::sigma(&mc).invertible().unwrap();
        let l = left_of(&s).unwrap();
        assert_eq!(l.map(), &sigma_prime(&mc));
        let back = right_of(&LeftTwist::sigma_prime(&mc).invertible().unwrap()).unwrap();
        assert_eq!(back.map(), &sigma(&mc));
    }

    #[test]
    fn random_normal_map_is_usually_not_a_twisting() {
        let mc = regular("sweedler:H4");
        let f = FieldSpec::Rationals;
        let mut n = 0i64;
        let t = normalized_right(&mc, || {
            n += 1;
            f.from_i64(n % 3 - 1)
        })
        .unwrap();
        let t = RightTwist::new(mc, t).unwrap();
        let r = t.report();
        assert_eq!(r.outcome(NORMAL_COUNIT_C), Some(true));
        assert_eq!(r.outcome(NORMAL_COUNIT_H), Some(true));
        assert_eq!(r.outcome(COMULT_COMPAT), Some(false));
        assert!(r.entry(COMULT_COMPAT).unwrap().witness.is_some());
        assert_eq!(r.outcome(MODULE_FORMS_AGREE), Some(true));
        assert!(twist_coalgebra(&t, false).is_err());
        let forced = twist_coalgebra(&t, true).unwrap();
        assert!(!forced.check().passed());
    }

    #[test]
    fn singular_map_is_not_invertible() {
        let mc = regular("group:C2");
        let z = LinMap::zero(mc.space(), &hc(&mc));
        assert!(matches!(star_inverse(&mc, &z), Err(Error::NotInvertible(_))));
    }
}
