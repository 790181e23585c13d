//! Equivalence of twistings: witnesses `v : C → H`, the coalgebra map
//! `ψ(c) = c₁·v(c₂)`, the relation axioms, transfer of inverses, and the
//! correspondence with isomorphisms of crossed coproducts.

use std::sync::OnceLock;

use crate::crossed::{crossed_from_twisting, crossed_iso_from_u, HarrisonCocycle};
use crate::error::{Error, Result};
use crate::hopf::{Coalgebra, Convolution};
use crate::linmap::LinMap;
use crate::modcoalg::{record, ModuleCoalgebra, QuotientBase};
use crate::report::CheckReport;
use crate::twisting::{star, twist_coalgebra, RightTwist};
use crate::wiring::Wiring;

pub const WITNESS_COUNIT: &str = "counit: ε_H∘v = ε_C";
pub const WITNESS_LINEAR: &str = "H-linearity: v(c·h) = S(h₁)v(c)h₂";
pub const WITNESS_INTERTWINES: &str = "intertwining of τ and λ";
pub const WITNESS_INTERTWINES_INV: &str = "intertwining of τ and λ, inverse form";

pub const PSI_COMULT: &str = "coalgebra map C^τ → C^λ";
pub const PSI_COUNIT: &str = "counital";
pub const PSI_LINEAR: &str = "right H-linear";
pub const PSI_COLINEAR: &str = "left B-colinear";
pub const PSI_ON_B: &str = "induces the identity on B";

/// A candidate `v` relating two twistings `τ` and `λ` of the same module
/// coalgebra.
#[derive(Clone, Debug)]
pub struct EquivWitness {
    tau: RightTwist,
    lambda: RightTwist,
    v: LinMap,
    inverse: OnceLock<Option<LinMap>>,
    report: OnceLock<CheckReport>,
}

impl EquivWitness {
    pub fn new(tau: RightTwist, lambda: RightTwist, v: LinMap) -> Result<Self> {
        tau.mc().ensure_same_context(lambda.mc(), "equivalence witness")?;
        v.domain().ensure_eq(tau.mc().space(), "witness domain")?;
        v.codomain().ensure_eq(tau.mc().h().space(), "witness codomain")?;
        Ok(EquivWitness { tau, lambda, v, inverse: OnceLock::new(), report: OnceLock::new() })
    }

    /// `v(c) = ε(c)1`, relating `τ` to itself.
    pub fn reflexive(tau: RightTwist) -> Result<Self> {
        let v = tau.mc().h().unit_counit_on(tau.mc().coalgebra());
        EquivWitness::new(tau.clone(), tau, v)
    }

    pub fn mc(&self) -> &ModuleCoalgebra {
        self.tau.mc()
    }

    pub fn tau(&self) -> &RightTwist {
        &self.tau
    }

    pub fn lambda(&self) -> &RightTwist {
        &self.lambda
    }

    pub fn v(&self) -> &LinMap {
        &self.v
    }

    fn convolution(&self) -> Convolution<'_> {
        Convolution::new(self.mc().coalgebra(), self.mc().h().algebra())
    }

    /// The convolution inverse of `v`, if `v ∈ Reg(C, H)`.
    pub fn inverse(&self) -> Option<&LinMap> {
        self.inverse.get_or_init(|| self.convolution().inverse(&self.v).ok()).as_ref()
    }

    pub fn require_inverse(&self) -> Result<&LinMap> {
        self.inverse().ok_or_else(|| Error::NotInvertible("witness is not convolution invertible".into()))
    }

    pub fn report(&self) -> &CheckReport {
        self.report.get_or_init(|| self.check())
    }

    /// `v` satisfies the witness identities (a morphism `C^τ → C^λ`).
    pub fn is_witness(&self) -> bool {
        self.report().passed()
    }

    /// Additionally convolution invertible, so `τ ∼ λ`.
    pub fn is_equivalence(&self) -> bool {
        self.is_witness() && self.inverse().is_some()
    }

    pub fn verified(self) -> Result<Self> {
        if self.is_witness() {
            Ok(self)
        } else {
            Err(Error::WitnessInvalid(Box::new(self.report().clone())))
        }
    }

    fn v_at(&self, w: Wiring, at: usize) -> Result<Wiring> {
        w.apply(at, 1, &self.v, &[self.mc().h().space()])
    }

    fn check(&self) -> CheckReport {
        let mc = self.mc();
        let (c, h) = (mc.space(), mc.h());
        let (hs, cc) = (h.space(), mc.coalgebra());
        let fin = |w: Result<Wiring>| w.map(Wiring::finish);
        let mut r = CheckReport::new("equivalence witness");
        record(&mut r, WITNESS_COUNIT, h.eps().compose(&self.v), Ok(mc.eps().clone()));
        record(
            &mut r,
            WITNESS_LINEAR,
            self.v.compose(mc.act()),
            fin(Wiring::new(&[c, hs])
                .delta(1, h)
                .and_then(|w| self.v_at(w, 0))
                .and_then(|w| w.map(1, h.antipode()))
                .and_then(|w| w.permute(&[1, 0, 2]))
                .and_then(|w| w.mult(0, h))
                .and_then(|w| w.mult(0, h))),
        );
        let lam = self.lambda.map();
        let tau = self.tau.map();
        let lhs = fin(Wiring::new(&[c])
            .delta(0, cc)
            .and_then(|w| self.v_at(w, 1))
            .and_then(|w| w.delta(1, h))
            .and_then(|w| w.apply(0, 1, lam, &[hs, c]))
            .and_then(|w| w.permute(&[0, 2, 1, 3]))
            .and_then(|w| w.mult(0, h))
            .and_then(|w| w.act(1, mc)));
        let rhs = fin(Wiring::new(&[c])
            .delta(0, cc)
            .and_then(|w| self.v_at(w, 0))
            .and_then(|w| w.apply(1, 1, tau, &[hs, c]))
            .and_then(|w| w.mult(0, h))
            .and_then(|w| w.delta(1, cc))
            .and_then(|w| self.v_at(w, 2))
            .and_then(|w| w.act(1, mc)));
        record(&mut r, WITNESS_INTERTWINES, lhs, rhs);
        if let Some(winv) = self.inverse() {
            let rhs = fin(Wiring::new(&[c])
                .delta_n(0, cc, 2)
                .and_then(|w| self.v_at(w, 0))
                .and_then(|w| w.apply(1, 1, tau, &[hs, c]))
                .and_then(|w| w.apply(3, 1, winv, &[hs]))
                .and_then(|w| w.delta(3, h))
                .and_then(|w| w.delta(2, cc))
                .and_then(|w| self.v_at(w, 3))
                .and_then(|w| w.permute(&[0, 1, 4, 2, 3, 5]))
                .and_then(|w| w.mult(0, h))
                .and_then(|w| w.mult(0, h))
                .and_then(|w| w.mult(2, h))
                .and_then(|w| w.act(1, mc)));
            record(&mut r, WITNESS_INTERTWINES_INV, Ok(lam.clone()), rhs);
        }
        r
    }

    /// `ψ(c) = c₁·v(c₂)`.
    pub fn psi(&self) -> Result<LinMap> {
        psi_of(self.mc(), &self.v)
    }

    /// `ψ`, after checking the witness and that `ψ` is a left `B`-colinear,
    /// right `H`-linear coalgebra map `C^τ → C^λ` inducing the identity on
    /// `B`. When `v` is invertible, `ψ` is also checked to be bijective with
    /// inverse `c ↦ c₁·v⁻¹(c₂)`.
    pub fn psi_checked(&self) -> Result<(LinMap, CheckReport)> {
        if !self.is_witness() {
            return Err(Error::WitnessInvalid(Box::new(self.report().clone())));
        }
        let psi = self.psi()?;
        let source = twist_coalgebra(&self.tau, false)?;
        let target = twist_coalgebra(&self.lambda, false)?;
        let q = QuotientBase::new(self.mc())?;
        let mut r = check_morphism(&source, &target, &q, &psi);
        if let Some(winv) = self.inverse() {
            let phi = psi_of(self.mc(), winv)?;
            let id = LinMap::identity(self.mc().space());
            record(&mut r, "ψ∘φ = id", psi.compose(&phi), Ok(id.clone()));
            record(&mut r, "φ∘ψ = id", phi.compose(&psi), Ok(id));
        }
        if !r.passed() {
            return Err(Error::Invariant(r.failure_summary()));
        }
        Ok((psi, r))
    }

    /// The witness `v⁻¹` for `λ ∼ τ`.
    pub fn invert(&self) -> Result<EquivWitness> {
        let u = self.require_inverse()?.clone();
        EquivWitness::new(self.lambda.clone(), self.tau.clone(), u)
    }

    /// For `self : τ ∼ λ` and `next : λ ∼ γ`, the witness `u∗v : τ ∼ γ`.
    pub fn compose(&self, next: &EquivWitness) -> Result<EquivWitness> {
        self.mc().ensure_same_context(next.mc(), "witness composition")?;
        if self.lambda.map() != next.tau.map() {
            return Err(Error::Shape("middle twistings of the composed witnesses differ".into()));
        }
        let w = self.convolution().convolve(&next.v, &self.v)?;
        EquivWitness::new(self.tau.clone(), next.lambda.clone(), w)
    }

    /// Given the inverse of `τ`, builds
    /// `μ(c) = a v⁻¹(b₁) v(b₃)₁ ⊗ b₂·v(b₃)₂` with `a ⊗ b = τ⁻¹(ψ⁻¹(c))`
    /// and returns `λ` with `μ` attached as its (two-sided) inverse.
    pub fn transfer_inverse(&self, tau_inverse: &LinMap) -> Result<RightTwist> {
        if !self.is_witness() {
            return Err(Error::WitnessInvalid(Box::new(self.report().clone())));
        }
        let winv = self.require_inverse()?;
        let tau = self.tau.clone().with_inverse(tau_inverse.clone())?;
        let mc = self.mc();
        let (c, h) = (mc.space(), mc.h());
        let hs = h.space();
        let psi_inv = psi_of(mc, winv)?;
        let mu = Wiring::from_map(&psi_inv, &[c])?
            .apply(0, 1, tau.require_inverse()?, &[hs, c])?
            .delta_n(1, mc.coalgebra(), 2)?
            .apply(1, 1, winv, &[hs])?
            .apply(3, 1, &self.v, &[hs])?
            .delta(3, h)?
            .permute(&[0, 1, 3, 2, 4])?
            .mult(0, h)?
            .mult(0, h)?
            .act(1, mc)?
            .finish();
        self.lambda.clone().with_inverse(mu)
    }
}

/// `c ↦ c₁·v(c₂)`.
pub fn psi_of(mc: &ModuleCoalgebra, v: &LinMap) -> Result<LinMap> {
    Ok(Wiring::new(&[mc.space()])
        .delta(0, mc.coalgebra())?
        .apply(1, 1, v, &[mc.h().space()])?
        .act(0, mc)?
        .finish())
}

/// Checks that `ψ : source → target` is a left `B`-colinear, right
/// `H`-linear coalgebra map inducing the identity on `B`. Both module
/// coalgebras share the underlying space and action.
pub fn check_morphism(source: &ModuleCoalgebra, target: &ModuleCoalgebra, q: &QuotientBase, psi: &LinMap) -> CheckReport {
    let mut r = CheckReport::new("morphism of twisted coalgebras");
    record(
        &mut r,
        PSI_COMULT,
        target.delta().compose(psi),
        psi.kron(psi).and_then(|pp| pp.compose(source.delta())),
    );
    record(&mut r, PSI_COUNIT, target.eps().compose(psi), Ok(source.eps().clone()));
    let hs = source.h().space();
    record(
        &mut r,
        PSI_LINEAR,
        psi.compose(source.act()),
        psi.kron(&LinMap::identity(hs)).and_then(|m| target.act().compose(&m)),
    );
    let coact = |mc: &ModuleCoalgebra| q.pi.kron(&LinMap::identity(mc.space())).and_then(|p| p.compose(mc.delta()));
    record(
        &mut r,
        PSI_COLINEAR,
        coact(target).and_then(|k| k.compose(psi)),
        coact(source).and_then(|k| LinMap::identity(q.space()).kron(psi)?.compose(&k)),
    );
    record(&mut r, PSI_ON_B, q.pi.compose(psi), Ok(q.pi.clone()));
    r
}

/// For `u : C → H` relating crossed data `source = target.gauge(u)`,
/// the witness `v(c⊗h) = S(h₁)u⁻¹(c)h₂` between the twistings of `C ⊗ H`
/// corresponding to `target` and `source`.
pub fn witness_from_crossed_iso(
    u: &LinMap,
    source: &HarrisonCocycle,
    target: &HarrisonCocycle,
) -> Result<EquivWitness> {
    crossed_iso_from_u(u, source, target)?;
    let (c, h) = (target.coalgebra(), target.h());
    let hs = h.space();
    let uinv = Convolution::new(c, h.algebra()).inverse(u)?;
    let v = Wiring::new(&[c.space(), hs])
        .delta(1, h)?
        .apply(0, 1, &uinv, &[hs])?
        .map(1, h.antipode())?
        .permute(&[1, 0, 2])?
        .mult(0, h)?
        .mult(0, h)?
        .finish();
    let w = EquivWitness::new(target.to_twisting()?, source.to_twisting()?, v)?;
    if !w.is_equivalence() {
        return Err(Error::Invariant(format!("constructed witness fails: {}", w.report().failure_summary())));
    }
    Ok(w)
}

/// `u(c) = v⁻¹(c ⊗ 1)` for a witness between twistings of `C ⊗ H`, checked
/// to induce the crossed coproduct isomorphism `c ⊗ h ↦ c₁ ⊗ u(c₂)h`.
pub fn crossed_iso_from_witness(c: &Coalgebra, w: &EquivWitness) -> Result<LinMap> {
    if !w.is_witness() {
        return Err(Error::WitnessInvalid(Box::new(w.report().clone())));
    }
    let winv = w.require_inverse()?;
    let h = w.mc().hopf().clone();
    let target = crossed_from_twisting(c, w.tau())?;
    let source = crossed_from_twisting(c, w.lambda())?;
    let u = Wiring::new(&[c.space()]).unit(1, &*h)?.apply(0, 2, winv, &[h.space()])?.finish();
    crossed_iso_from_u(&u, &source, &target)?;
    Ok(u)
}

/// Checks `μ∗λ = λ∗μ = σ` directly, for reporting.
pub fn inverse_report(t: &RightTwist) -> Result<CheckReport> {
    let mu = t.require_inverse()?;
    let s = crate::twisting::sigma(t.mc());
    let mut r = CheckReport::new("transferred inverse");
    r.check_maps("μ∗λ = σ", &star(t.mc(), mu, t.map())?, &s);
    r.check_maps("λ∗μ = σ", &star(t.mc(), t.map(), mu)?, &s);
    Ok(r)
}
