//! Weak coactions, Harrison 2-cocycles, the crossed coproduct `C ⊲_α H`,
//! isomorphisms between crossed coproducts induced by `u : C → H`, and the
//! correspondence with twistings of `C ⊗ H`.

use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::hopf::{Coalgebra, Convolution, HopfAlgebra};
use crate::linalg;
use crate::linmap::LinMap;
use crate::modcoalg::{record, ModuleCoalgebra};
use crate::report::CheckReport;
use crate::space::Space;
use crate::twisting::RightTwist;
use crate::wiring::Wiring;

pub const WEAK_COMULT: &str = "weak comultiplicativity";
pub const WEAK_COUNIT_C: &str = "counit on C: ε_C(c₀)c₋₁ = ε(c)1";
pub const WEAK_COUNIT_H: &str = "counit on H: ε_H(c₋₁)c₀ = c";
pub const COCYCLE_COUNIT_LEFT: &str = "counit: (ε⊗id)α = ε(-)1";
pub const COCYCLE_COUNIT_RIGHT: &str = "counit: (id⊗ε)α = ε(-)1";
pub const COCYCLE: &str = "cocycle condition";
pub const TWISTED_COMODULE: &str = "twisted comodule condition";

/// A map `ρ : C → H ⊗ C`, `ρ(c) = c₋₁ ⊗ c₀`.
#[derive(Clone, Debug)]
pub struct WeakCoaction {
    coalgebra: Coalgebra,
    hopf: Arc<HopfAlgebra>,
    rho: LinMap,
}

impl WeakCoaction {
    pub fn new(coalgebra: Coalgebra, hopf: Arc<HopfAlgebra>, rho: LinMap) -> Result<Self> {
        rho.domain().ensure_eq(coalgebra.space(), "weak coaction domain")?;
        rho.codomain().ensure_eq(&hopf.space().tensor(coalgebra.space())?, "weak coaction codomain (H⊗C)")?;
        Ok(WeakCoaction { coalgebra, hopf, rho })
    }

    /// `ρ(c) = 1 ⊗ c`.
    pub fn trivial(coalgebra: Coalgebra, hopf: Arc<HopfAlgebra>) -> Result<Self> {
        let rho = Wiring::new(&[coalgebra.space()]).unit(0, &*hopf)?.finish();
        WeakCoaction::new(coalgebra, hopf, rho)
    }

    pub fn coalgebra(&self) -> &Coalgebra {
        &self.coalgebra
    }

    pub fn hopf(&self) -> &Arc<HopfAlgebra> {
        &self.hopf
    }

    pub fn h(&self) -> &HopfAlgebra {
        &self.hopf
    }

    pub fn space(&self) -> &Space {
        self.coalgebra.space()
    }

    pub fn rho(&self) -> &LinMap {
        &self.rho
    }

    pub(crate) fn rho_at(&self, w: Wiring, at: usize) -> Result<Wiring> {
        w.apply(at, 1, &self.rho, &[self.h().space(), self.space()])
    }

    pub fn check(&self) -> CheckReport {
        let (c, h) = (self.coalgebra(), self.h());
        let mut r = CheckReport::new(format!("weak coaction of {} on {}", h.name(), c.space().name()));
        let fin = |w: Result<Wiring>| w.map(Wiring::finish);
        let start = || Wiring::new(&[c.space()]);
        record(
            &mut r,
            WEAK_COMULT,
            fin(self.rho_at(start(), 0).and_then(|w| w.delta(1, c))),
            fin(start()
                .delta(0, c)
                .and_then(|w| self.rho_at(w, 0))
                .and_then(|w| self.rho_at(w, 2))
                .and_then(|w| w.permute(&[0, 2, 1, 3]))
                .and_then(|w| w.mult(0, h))),
        );
        record(
            &mut r,
            WEAK_COUNIT_C,
            fin(self.rho_at(start(), 0).and_then(|w| w.eps(1, c))),
            h.unit().compose(c.eps()),
        );
        record(
            &mut r,
            WEAK_COUNIT_H,
            fin(self.rho_at(start(), 0).and_then(|w| w.eps(0, h))),
            Ok(LinMap::identity(c.space())),
        );
        r
    }
}

/// A weak coaction with a map `α : C → H ⊗ H`.
#[derive(Clone, Debug)]
pub struct HarrisonCocycle {
    coaction: WeakCoaction,
    alpha: LinMap,
    report: OnceLock<CheckReport>,
}

impl HarrisonCocycle {
    pub fn new(coaction: WeakCoaction, alpha: LinMap) -> Result<Self> {
        let h = coaction.h().space();
        alpha.domain().ensure_eq(coaction.space(), "cocycle domain")?;
        alpha.codomain().ensure_eq(&h.tensor(h)?, "cocycle codomain (H⊗H)")?;
        Ok(HarrisonCocycle { coaction, alpha, report: OnceLock::new() })
    }

    /// `α(c) = ε(c)1 ⊗ 1` with the trivial weak coaction.
    pub fn trivial(coalgebra: Coalgebra, hopf: Arc<HopfAlgebra>) -> Result<Self> {
        let alpha = Wiring::new(&[coalgebra.space()]).eps(0, &coalgebra)?.unit(0, &*hopf)?.unit(0, &*hopf)?.finish();
        HarrisonCocycle::new(WeakCoaction::trivial(coalgebra, hopf)?, alpha)
    }

    pub fn coaction(&self) -> &WeakCoaction {
        &self.coaction
    }

    pub fn rho(&self) -> &LinMap {
        self.coaction.rho()
    }

    pub fn alpha(&self) -> &LinMap {
        &self.alpha
    }

    pub fn coalgebra(&self) -> &Coalgebra {
        self.coaction.coalgebra()
    }

    pub fn h(&self) -> &HopfAlgebra {
        self.coaction.h()
    }

    pub fn hopf(&self) -> &Arc<HopfAlgebra> {
        self.coaction.hopf()
    }

    pub fn space(&self) -> &Space {
        self.coaction.space()
    }

    pub fn with_alpha(&self, alpha: LinMap) -> Result<Self> {
        HarrisonCocycle::new(self.coaction.clone(), alpha)
    }

    fn alpha_at(&self, w: Wiring, at: usize) -> Result<Wiring> {
        let h = self.h().space();
        w.apply(at, 1, &self.alpha, &[h, h])
    }

    /// Weak coaction checks followed by the three cocycle conditions.
    pub fn report(&self) -> &CheckReport {
        self.report.get_or_init(|| self.check())
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

    fn check(&self) -> CheckReport {
        let (c, h) = (self.coalgebra(), self.h());
        let wc = &self.coaction;
        let mut r = CheckReport::new(format!("Harrison 2-cocycle on {}", c.space().name()));
        r.absorb("weak coaction", &wc.check());
        let fin = |w: Result<Wiring>| w.map(Wiring::finish);
        let start = || Wiring::new(&[c.space()]);
        let ue = h.unit_counit_on(c);
        record(&mut r, COCYCLE_COUNIT_LEFT, fin(self.alpha_at(start(), 0).and_then(|w| w.eps(0, h))), Ok(ue.clone()));
        record(&mut r, COCYCLE_COUNIT_RIGHT, fin(self.alpha_at(start(), 0).and_then(|w| w.eps(1, h))), Ok(ue));
        record(
            &mut r,
            COCYCLE,
            fin(start()
                .delta(0, c)
                .and_then(|w| wc.rho_at(w, 0))
                .and_then(|w| self.alpha_at(w, 2))
                .and_then(|w| self.alpha_at(w, 1))
                .and_then(|w| w.delta(4, h))
                .and_then(|w| w.permute(&[0, 3, 1, 4, 2, 5]))
                .and_then(|w| w.mult(0, h))
                .and_then(|w| w.mult(1, h))
                .and_then(|w| w.mult(2, h))),
            fin(start()
                .delta(0, c)
                .and_then(|w| self.alpha_at(w, 0))
                .and_then(|w| self.alpha_at(w, 2))
                .and_then(|w| w.delta(2, h))
                .and_then(|w| w.permute(&[0, 2, 1, 3, 4]))
                .and_then(|w| w.mult(0, h))
                .and_then(|w| w.mult(1, h))),
        );
        record(
            &mut r,
            TWISTED_COMODULE,
            fin(start()
                .delta(0, c)
                .and_then(|w| wc.rho_at(w, 0))
                .and_then(|w| wc.rho_at(w, 1))
                .and_then(|w| self.alpha_at(w, 3))
                .and_then(|w| w.permute(&[0, 3, 1, 4, 2]))
                .and_then(|w| w.mult(0, h))
                .and_then(|w| w.mult(1, h))),
            fin(start()
                .delta(0, c)
                .and_then(|w| self.alpha_at(w, 0))
                .and_then(|w| wc.rho_at(w, 2))
                .and_then(|w| w.delta(2, h))
                .and_then(|w| w.permute(&[0, 2, 1, 3, 4]))
                .and_then(|w| w.mult(0, h))
                .and_then(|w| w.mult(1, h))),
        );
        r
    }

    /// `Δ_α(c ⊲ h) = (c₁ ⊲ c₂₋₁α₁(c₃)h₁) ⊗ (c₂₀ ⊲ α₂(c₃)h₂)`.
    pub fn crossed_delta(&self) -> Result<LinMap> {
        let (c, h) = (self.coalgebra(), self.h());
        Ok(self
            .alpha_at(
                self.coaction.rho_at(Wiring::new(&[c.space(), h.space()]).delta_n(0, c, 2)?, 1)?,
                3,
            )?
            .delta(5, h)?
            .permute(&[0, 1, 3, 5, 2, 4, 6])?
            .mult(1, h)?
            .mult(1, h)?
            .mult(3, h)?
            .finish())
    }

    /// `Δ_α` with `ε_α = ε_C ⊗ ε_H` and the action `id ⊗ m_H`, without
    /// checking the cocycle conditions.
    pub fn crossed_unchecked(&self) -> Result<ModuleCoalgebra> {
        let base = tensor_module(self.coalgebra(), self.hopf().clone())?;
        base.with_delta(self.crossed_delta()?)
    }

    /// `C ⊲_α H`; the cocycle conditions must hold, and coassociativity is
    /// checked again on the result.
    pub fn build_crossed(&self) -> Result<ModuleCoalgebra> {
        if !self.is_cocycle() {
            return Err(Error::NotACocycle(Box::new(self.report().clone())));
        }
        let mc = self.crossed_unchecked()?;
        let r = mc.check();
        if !r.passed() {
            return Err(Error::Invariant(r.failure_summary()));
        }
        Ok(mc)
    }

    /// The twisting of `C ⊗ H` attached to the cocycle:
    /// `τ(c⊗h) = S(h₁)c₁₋₁α₁(c₂)h₂ ⊗ c₁₀ ⊗ α₂(c₂)h₃`.
    pub fn twisting_map(&self) -> Result<LinMap> {
        let (c, h) = (self.coalgebra(), self.h());
        let w = Wiring::new(&[c.space(), h.space()]).delta(0, c)?;
        let w = self.alpha_at(self.coaction.rho_at(w, 0)?, 2)?;
        Ok(w.delta_n(4, h, 2)?
            .map(4, h.antipode())?
            .permute(&[4, 0, 2, 5, 1, 3, 6])?
            .mult(0, h)?
            .mult(0, h)?
            .mult(0, h)?
            .mult(2, h)?
            .finish())
    }

    pub fn to_twisting(&self) -> Result<RightTwist> {
        if !self.is_cocycle() {
            return Err(Error::NotACocycle(Box::new(self.report().clone())));
        }
        let mc = tensor_module(self.coalgebra(), self.hopf().clone())?;
        RightTwist::new(mc, self.twisting_map()?)
    }

    /// `(ρ′, α′)` obtained from `(ρ, α)` and a convolution invertible
    /// `u : C → H`, so that `c ⊗ h ↦ c₁ ⊗ u(c₂)h` is an isomorphism
    /// `C ⊲′_{α′} H → C ⊲_α H`.
    pub fn gauge(&self, u: &LinMap) -> Result<HarrisonCocycle> {
        let (c, h) = (self.coalgebra(), self.h());
        let uinv = Convolution::new(c, h.algebra()).inverse(u)?;
        let (rho2, alpha2) = self.gauge_maps(u, &uinv)?;
        HarrisonCocycle::new(WeakCoaction::new(c.clone(), self.hopf().clone(), rho2)?, alpha2)
    }

    fn gauge_maps(&self, u: &LinMap, uinv: &LinMap) -> Result<(LinMap, LinMap)> {
        let (c, h) = (self.coalgebra(), self.h());
        let hs = h.space();
        let rho2 = Wiring::new(&[c.space()]).delta_n(0, c, 2)?.apply(0, 1, uinv, &[hs])?;
        let rho2 = self
            .coaction
            .rho_at(rho2, 1)?
            .apply(3, 1, u, &[hs])?
            .permute(&[0, 1, 3, 2])?
            .mult(0, h)?
            .mult(0, h)?
            .finish();
        let w = Wiring::new(&[c.space()]).delta_n(0, c, 3)?.apply(0, 1, uinv, &[hs])?;
        let w = self.coaction.rho_at(w, 1)?.apply(2, 1, uinv, &[hs])?;
        let alpha2 = self
            .alpha_at(w, 3)?
            .apply(5, 1, u, &[hs])?
            .delta(5, h)?
            .permute(&[0, 1, 3, 5, 2, 4, 6])?
            .mult(0, h)?
            .mult(0, h)?
            .mult(0, h)?
            .mult(1, h)?
            .mult(1, h)?
            .finish();
        Ok((rho2, alpha2))
    }
}

/// `u = (1 + b)ε_C` with `b` the last basis vector of `H`; an error unless
/// `ε_H(b) = 0` and `u` is convolution invertible.
pub fn standard_gauge(hc: &HarrisonCocycle) -> Result<LinMap> {
    let (c, h) = (hc.coalgebra(), hc.h());
    let f = h.field();
    let last = h.dim() - 1;
    let b = LinMap::from_fn(Space::ground(f), h.space().clone(), |_| vec![(last, f.one())])?;
    if !h.eps().compose(&b)?.is_zero() {
        return Err(Error::Shape(format!("last basis vector {} of H is not in the kernel of ε", h.space().label(last))));
    }
    let u = h.unit().add(&b)?.compose(c.eps())?;
    Convolution::new(c, h.algebra()).inverse(&u)?;
    Ok(u)
}

/// `C ⊗ H` with the tensor product coalgebra structure and `H` acting by
/// right multiplication on the second factor.
pub fn tensor_module(c: &Coalgebra, hopf: Arc<HopfAlgebra>) -> Result<ModuleCoalgebra> {
    let coalgebra = c.tensor(hopf.coalgebra())?;
    let act = Wiring::new(&[c.space(), hopf.space(), hopf.space()]).mult(1, &*hopf)?.finish();
    ModuleCoalgebra::new(coalgebra, hopf, act)
}

/// Recovers `(ρ, α)` from a twisting of `C ⊗ H`:
/// `ρ(c) = (id⊗id⊗ε)τ(c⊗1)`, `α(c) = (id⊗ε_C⊗id)τ(c⊗1)`.
pub fn crossed_from_twisting(c: &Coalgebra, t: &RightTwist) -> Result<HarrisonCocycle> {
    let hopf = t.mc().hopf().clone();
    let expected = tensor_module(c, hopf.clone())?;
    t.mc().space().ensure_eq(expected.space(), "twisting of C⊗H")?;
    if t.mc().delta() != expected.delta() || t.mc().act() != expected.act() {
        return Err(Error::Shape("twisting must live on the tensor product module coalgebra C⊗H".into()));
    }
    if !t.is_twisting() {
        return Err(Error::NotATwisting(Box::new(t.report().clone())));
    }
    let h = hopf.space();
    let at_one = Wiring::new(&[c.space()]).unit(1, &*hopf)?.apply(0, 2, t.map(), &[h, c.space(), h])?;
    let rho = at_one.clone().eps(2, &*hopf)?.finish();
    let alpha = at_one.eps(1, c)?.finish();
    HarrisonCocycle::new(WeakCoaction::new(c.clone(), hopf, rho)?, alpha)
}

/// `φ(c ⊗ h) = c₁ ⊗ u(c₂)h`.
pub fn phi_from_u(c: &Coalgebra, hopf: &HopfAlgebra, u: &LinMap) -> Result<LinMap> {
    Ok(Wiring::new(&[c.space(), hopf.space()])
        .delta(0, c)?
        .apply(1, 1, u, &[hopf.space()])?
        .mult(1, hopf)?
        .finish())
}

/// Checks that `φ : source → target` is a left `C`-colinear, right
/// `H`-linear coalgebra isomorphism between crossed coproducts.
pub fn check_crossed_iso(
    c: &Coalgebra,
    source: &ModuleCoalgebra,
    target: &ModuleCoalgebra,
    phi: &LinMap,
) -> CheckReport {
    let mut r = CheckReport::new("crossed coproduct isomorphism");
    record(
        &mut r,
        "comultiplicative",
        target.delta().compose(phi),
        phi.kron(phi).and_then(|pp| pp.compose(source.delta())),
    );
    record(&mut r, "counital", target.eps().compose(phi), Ok(source.eps().clone()));
    let coact = Wiring::new(&[c.space(), source.h().space()]).delta(0, c).map(Wiring::finish);
    let lhs = coact.as_ref().map_err(|e| Error::Shape(e.to_string())).and_then(|k| {
        LinMap::identity(c.space()).kron(phi)?.compose(k)
    });
    let rhs = coact.as_ref().map_err(|e| Error::Shape(e.to_string())).and_then(|k| k.compose(phi));
    record(&mut r, "left C-colinear", lhs, rhs);
    let h = source.h().space();
    record(
        &mut r,
        "right H-linear",
        phi.compose(source.act()),
        phi.kron(&LinMap::identity(h)).and_then(|m| target.act().compose(&m)),
    );
    let rank = linalg::rank(phi);
    let dim = phi.domain().dim();
    r.check("bijective", rank == dim && dim == phi.codomain().dim(), (rank < dim).then(|| format!("rank {rank} < {dim}")));
    r
}

/// The isomorphism `C ⊲′_{α′} H → C ⊲_α H` induced by `u`, after checking
/// that `(ρ′, α′)` is the gauge transform of `(ρ, α)` by `u`.
pub fn crossed_iso_from_u(u: &LinMap, source: &HarrisonCocycle, target: &HarrisonCocycle) -> Result<LinMap> {
    let (c, h) = (target.coalgebra(), target.h());
    source.space().ensure_eq(c.space(), "crossed isomorphism")?;
    let uinv = Convolution::new(c, h.algebra()).inverse(u)?;
    let (rho2, alpha2) = target.gauge_maps(u, &uinv)?;
    let mut r = CheckReport::new("gauge conditions on u");
    r.check_maps("weak coaction transported by u", source.rho(), &rho2);
    r.check_maps("cocycle transported by u", source.alpha(), &alpha2);
    if !r.passed() {
        return Err(Error::WitnessInvalid(Box::new(r)));
    }
    let phi = phi_from_u(c, h, u)?;
    let iso = check_crossed_iso(c, &source.build_crossed()?, &target.build_crossed()?, &phi);
    if !iso.passed() {
        return Err(Error::Invariant(iso.failure_summary()));
    }
    Ok(phi)
}

/// `u(c) = (ε ⊗ id)φ(c ⊗ 1)`, recovered from an isomorphism.
pub fn u_from_phi(c: &Coalgebra, hopf: &HopfAlgebra, phi: &LinMap) -> Result<LinMap> {
    let h = hopf.space();
    Ok(Wiring::new(&[c.space()])
        .unit(1, hopf)?
        .apply(0, 2, phi, &[c.space(), h])?
        .eps(0, c)?
        .finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::scalar::FieldSpec;

    #[test]
    fn trivial_data_gives_tensor_coalgebra_and_sigma() {
        let h = Arc::new(catalog::sweedler(FieldSpec::Rationals).unwrap());
        let hc = HarrisonCocycle::trivial(h.coalgebra().clone(), h.clone()).unwrap();
        assert!(hc.is_cocycle(), "{}", hc.report());
        let crossed = hc.build_crossed().unwrap();
        let plain = tensor_module(h.coalgebra(), h.clone()).unwrap();
        assert_eq!(crossed.delta(), plain.delta());
        let t = hc.to_twisting().unwrap();
        assert_eq!(t.map(), &crate::twisting::sigma(t.mc()));
    }

    #[test]
    fn sign_cocycle_by_hand() {
        let f = FieldSpec::Rationals;
        let hc = catalog::harrison("harrison:C2-sign", f).unwrap();
        assert!(hc.is_cocycle(), "{}", hc.report());
        let rows = hc.alpha().to_rows();
        let col: Vec<_> = rows.iter().map(|r| f.display_scalar(&r[0])).collect();
        assert_eq!(col, ["1", "1", "1", "-1"]);
        // flipping the sign at e0⊗e1 breaks the cocycle condition
        let flipped = LinMap::from_int_rows(
            hc.alpha().domain().clone(),
            hc.alpha().codomain().clone(),
            &[&[1], &[-1], &[1], &[-1]],
        )
        .unwrap();
        let bad = hc.with_alpha(flipped).unwrap();
        assert_eq!(bad.report().outcome(COCYCLE), Some(false));
        assert!(bad.report().entry(COCYCLE).unwrap().witness.is_some());
    }

    #[test]
    fn identity_gauge_is_identity_iso() {
        let hc = catalog::harrison("harrison:C2-sign", FieldSpec::Rationals).unwrap();
        let ue = hc.h().unit().compose(hc.coalgebra().eps()).unwrap();
        let phi = crossed_iso_from_u(&ue, &hc, &hc).unwrap();
        assert_eq!(phi, LinMap::identity(phi.domain()));
    }
}
