//! Twisted 2-cocycles `α : C → H ⊗ H` of a module coalgebra, the twisting
//! `τ_α` they induce, Harrison 2-cocycles for the trivial weak coaction,
//! and the bijection between the latter on `C` and twisted 2-cocycles on
//! `C ⊗ H`.

use std::sync::{Arc, OnceLock};

use crate::crossed::{tensor_module, HarrisonCocycle, COCYCLE_COUNIT_LEFT, COCYCLE_COUNIT_RIGHT};
use crate::error::{Error, Result};
use crate::hopf::{Coalgebra, HopfAlgebra};
use crate::linmap::LinMap;
use crate::modcoalg::{record, ModuleCoalgebra};
use crate::report::CheckReport;
use crate::twisting::RightTwist;
use crate::wiring::Wiring;

pub const TW_COUNIT_LEFT: &str = "counit: (ε⊗id)α = ε(-)1";
pub const TW_COUNIT_RIGHT: &str = "counit: (id⊗ε)α = ε(-)1";
pub const TW_MODULE: &str = "module condition α(c·h) = S(h₁)α₁h₂ ⊗ S̄(h₄)α₂h₃";
pub const TW_COCYCLE: &str = "twisted cocycle condition";
pub const TH_COCYCLE: &str = "cocycle condition, trivial coaction";
pub const TH_SYMMETRY: &str = "comodule condition, trivial coaction";

/// `S(h₁)α₁(c)h₂ ⊗ S̄(h₄)α₂(c)h₃` for `α : C → H ⊗ H`, as a map `C ⊗ H → H ⊗ H`.
fn conjugated(c: &crate::space::Space, h: &HopfAlgebra, alpha: &LinMap) -> Result<LinMap> {
    let sbar = h.antipode_inverse()?;
    let hs = h.space();
    Ok(Wiring::new(&[c, hs])
        .apply(0, 1, alpha, &[hs, hs])?
        .delta_n(2, h, 3)?
        .map(2, h.antipode())?
        .map(5, sbar)?
        .permute(&[2, 0, 3, 5, 1, 4])?
        .mult(0, h)?
        .mult(0, h)?
        .mult(1, h)?
        .mult(1, h)?
        .finish())
}

/// A candidate twisted 2-cocycle on a module coalgebra.
#[derive(Clone, Debug)]
pub struct TwistedCocycle {
    mc: ModuleCoalgebra,
    alpha: LinMap,
    report: OnceLock<CheckReport>,
}

impl TwistedCocycle {
    /// Rejects Hopf algebras without bijective antipode.
    pub fn new(mc: ModuleCoalgebra, alpha: LinMap) -> Result<Self> {
        mc.h().antipode_inverse()?;
        let h = mc.h().space();
        alpha.domain().ensure_eq(mc.space(), "twisted cocycle domain")?;
        alpha.codomain().ensure_eq(&h.tensor(h)?, "twisted cocycle codomain (H⊗H)")?;
        Ok(TwistedCocycle { mc, alpha, report: OnceLock::new() })
    }

    pub fn trivial(mc: ModuleCoalgebra) -> Result<Self> {
        let h = mc.hopf().clone();
        let alpha = Wiring::new(&[mc.space()]).eps(0, mc.coalgebra())?.unit(0, &*h)?.unit(0, &*h)?.finish();
        TwistedCocycle::new(mc, alpha)
    }

    pub fn mc(&self) -> &ModuleCoalgebra {
        &self.mc
    }

    pub fn alpha(&self) -> &LinMap {
        &self.alpha
    }

    pub fn with_alpha(&self, alpha: LinMap) -> Result<Self> {
        TwistedCocycle::new(self.mc.clone(), alpha)
    }

    pub fn report(&self) -> &CheckReport {
        self.report.get_or_init(|| self.check())
    }

    pub fn flag(&self, name: &str) -> Option<bool> {
        self.report.get().and_then(|r| r.outcome(name))
    }

    pub fn is_cocycle(&self) -> bool {
        self.report().passed()
    }

    pub fn verified(self) -> Result<Self> {
        if self.is_cocycle() {
            Ok(self)
        } else {
            Err(Error::NotACocycle(Box::new(self.report().clone())))
        }
    }

    fn alpha_at(&self, w: Wiring, at: usize) -> Result<Wiring> {
        let h = self.mc.h().space();
        w.apply(at, 1, &self.alpha, &[h, h])
    }

    fn check(&self) -> CheckReport {
        let mc = &self.mc;
        let (c, h) = (mc.space(), mc.h());
        let mut r = CheckReport::new(format!("twisted 2-cocycle on {}", c.name()));
        let fin = |w: Result<Wiring>| w.map(Wiring::finish);
        let start = || Wiring::new(&[c]);
        let ue = h.unit_counit_on(mc.coalgebra());
        record(&mut r, TW_COUNIT_LEFT, fin(self.alpha_at(start(), 0).and_then(|w| w.eps(0, h))), Ok(ue.clone()));
        record(&mut r, TW_COUNIT_RIGHT, fin(self.alpha_at(start(), 0).and_then(|w| w.eps(1, h))), Ok(ue));
        record(
            &mut r,
            TW_MODULE,
            self.alpha.compose(mc.act()),
            conjugated(c, h, &self.alpha),
        );
        let cc = mc.coalgebra();
        record(
            &mut r,
            TW_COCYCLE,
            fin(start()
                .delta_n(0, cc, 2)
                .and_then(|w| self.alpha_at(w, 2))
                .and_then(|w| w.delta(2, h))
                .and_then(|w| self.alpha_at(w, 0))
                .and_then(|w| w.permute(&[0, 3, 2, 1, 4, 5]))
                .and_then(|w| w.mult(0, h))
                .and_then(|w| w.mult(2, h))
                .and_then(|w| w.act(1, mc))),
            fin(start()
                .delta_n(0, cc, 2)
                .and_then(|w| self.alpha_at(w, 2))
                .and_then(|w| self.alpha_at(w, 0))
                .and_then(|w| w.delta(1, h))
                .and_then(|w| w.permute(&[0, 3, 4, 1, 5, 2]))
                .and_then(|w| w.mult(2, h))
                .and_then(|w| w.act(1, mc))
                .and_then(|w| w.mult(2, h))),
        );
        r
    }

    /// `τ_α(c) = α₁(c₁) ⊗ c₂·α₂(c₁)`, without checking the cocycle.
    pub fn twisting_map(&self) -> Result<LinMap> {
        let mc = &self.mc;
        Ok(self
            .alpha_at(Wiring::new(&[mc.space()]).delta(0, mc.coalgebra())?, 0)?
            .permute(&[0, 2, 1])?
            .act(1, mc)?
            .finish())
    }

    pub fn to_twisting(&self) -> Result<RightTwist> {
        if !self.is_cocycle() {
            return Err(Error::NotACocycle(Box::new(self.report().clone())));
        }
        RightTwist::new(self.mc.clone(), self.twisting_map()?)
    }
}

/// A Harrison 2-cocycle for the trivial weak coaction `ρ(c) = 1 ⊗ c`.
#[derive(Clone, Debug)]
pub struct TrivialHarrison {
    coalgebra: Coalgebra,
    hopf: Arc<HopfAlgebra>,
    alpha: LinMap,
    report: OnceLock<CheckReport>,
}

impl TrivialHarrison {
    pub fn new(coalgebra: Coalgebra, hopf: Arc<HopfAlgebra>, alpha: LinMap) -> Result<Self> {
        let h = hopf.space();
        alpha.domain().ensure_eq(coalgebra.space(), "cocycle domain")?;
        alpha.codomain().ensure_eq(&h.tensor(h)?, "cocycle codomain (H⊗H)")?;
        Ok(TrivialHarrison { coalgebra, hopf, alpha, report: OnceLock::new() })
    }

    /// Requires the weak coaction of `hc` to be trivial.
    pub fn from_harrison(hc: &HarrisonCocycle) -> Result<Self> {
        let trivial = Wiring::new(&[hc.space()]).unit(0, hc.h())?.finish();
        if hc.rho() != &trivial {
            return Err(Error::Shape("weak coaction is not trivial".into()));
        }
        TrivialHarrison::new(hc.coalgebra().clone(), hc.hopf().clone(), hc.alpha().clone())
    }

    pub fn to_harrison(&self) -> Result<HarrisonCocycle> {
        let wc = crate::crossed::WeakCoaction::trivial(self.coalgebra.clone(), self.hopf.clone())?;
        HarrisonCocycle::new(wc, self.alpha.clone())
    }

    pub fn coalgebra(&self) -> &Coalgebra {
        &self.coalgebra
    }

    pub fn hopf(&self) -> &Arc<HopfAlgebra> {
        &self.hopf
    }

    pub fn alpha(&self) -> &LinMap {
        &self.alpha
    }

    pub fn with_alpha(&self, alpha: LinMap) -> Result<Self> {
        TrivialHarrison::new(self.coalgebra.clone(), self.hopf.clone(), alpha)
    }

    pub fn report(&self) -> &CheckReport {
        self.report.get_or_init(|| self.check())
    }

    pub fn is_cocycle(&self) -> bool {
        self.report().passed()
    }

    fn alpha_at(&self, w: Wiring, at: usize) -> Result<Wiring> {
        let h = self.hopf.space();
        w.apply(at, 1, &self.alpha, &[h, h])
    }

    fn check(&self) -> CheckReport {
        let (c, h) = (&self.coalgebra, &*self.hopf);
        let mut r = CheckReport::new(format!("Harrison 2-cocycle with trivial coaction on {}", c.space().name()));
        let fin = |w: Result<Wiring>| w.map(Wiring::finish);
        let start = || Wiring::new(&[c.space()]).delta(0, c);
        let ue = h.unit_counit_on(c);
        let one = || Wiring::new(&[c.space()]);
        record(&mut r, COCYCLE_COUNIT_LEFT, fin(self.alpha_at(one(), 0).and_then(|w| w.eps(0, h))), Ok(ue.clone()));
        record(&mut r, COCYCLE_COUNIT_RIGHT, fin(self.alpha_at(one(), 0).and_then(|w| w.eps(1, h))), Ok(ue));
        record(
            &mut r,
            TH_COCYCLE,
            fin(start()
                .and_then(|w| self.alpha_at(w, 1))
                .and_then(|w| w.delta(2, h))
                .and_then(|w| self.alpha_at(w, 0))
                .and_then(|w| w.permute(&[2, 0, 3, 1, 4]))
                .and_then(|w| w.mult(1, h))
                .and_then(|w| w.mult(2, h))),
            fin(start()
                .and_then(|w| self.alpha_at(w, 0))
                .and_then(|w| self.alpha_at(w, 2))
                .and_then(|w| w.delta(2, h))
                .and_then(|w| w.permute(&[0, 2, 1, 3, 4]))
                .and_then(|w| w.mult(0, h))
                .and_then(|w| w.mult(1, h))),
        );
        record(
            &mut r,
            TH_SYMMETRY,
            fin(start().and_then(|w| self.alpha_at(w, 1)).and_then(|w| w.permute(&[1, 2, 0]))),
            fin(start().and_then(|w| self.alpha_at(w, 0))),
        );
        r
    }

    /// `αᵗ(c⊗h) = S(h₁)α₁(c)h₂ ⊗ S̄(h₄)α₂(c)h₃` on `C ⊗ H`.
    pub fn lift(&self) -> Result<TwistedCocycle> {
        if !self.is_cocycle() {
            return Err(Error::NotACocycle(Box::new(self.report().clone())));
        }
        let mc = tensor_module(&self.coalgebra, self.hopf.clone())?;
        let alpha = conjugated(self.coalgebra.space(), &self.hopf, &self.alpha)?;
        let tc = TwistedCocycle::new(mc, alpha)?;
        if !tc.is_cocycle() {
            return Err(Error::Invariant(tc.report().failure_summary()));
        }
        Ok(tc)
    }
}

/// `α(c) = αᵗ(c ⊗ 1)` for a twisted 2-cocycle on `C ⊗ H`.
pub fn restrict(c: &Coalgebra, tc: &TwistedCocycle) -> Result<TrivialHarrison> {
    let hopf = tc.mc().hopf().clone();
    let expected = tensor_module(c, hopf.clone())?;
    tc.mc().space().ensure_eq(expected.space(), "twisted cocycle on C⊗H")?;
    if tc.mc().delta() != expected.delta() || tc.mc().act() != expected.act() {
        return Err(Error::Shape("twisted cocycle must live on the tensor product module coalgebra C⊗H".into()));
    }
    if !tc.is_cocycle() {
        return Err(Error::NotACocycle(Box::new(tc.report().clone())));
    }
    let h = hopf.space();
    let alpha = Wiring::new(&[c.space()]).unit(1, &*hopf)?.apply(0, 2, tc.alpha(), &[h, h])?.finish();
    let th = TrivialHarrison::new(c.clone(), hopf, alpha)?;
    if !th.is_cocycle() {
        return Err(Error::Invariant(th.report().failure_summary()));
    }
    Ok(th)
}
