//! Hopf-Galois coextensions `C/B`: the canonical map `β`, its mirror `β′`,
//! the translation map `c ◊ d = (ε ⊗ id)β⁻¹(c ⊗ d)`, invariance under
//! invertible twistings, and recovery of witnesses from morphisms.

use crate::equivalence::{check_morphism, psi_of, EquivWitness};
use crate::error::{Error, Result};
use crate::linalg;
use crate::linmap::LinMap;
use crate::modcoalg::{record, CotensorSquare, ModuleCoalgebra, QuotientBase};
use crate::report::CheckReport;
use crate::space::Space;
use crate::twisting::{twist_coalgebra, RightTwist};
use crate::wiring::Wiring;

pub const DIAMOND_COUNIT: &str = "ε_H(c◊d) = ε(c)ε(d)";
pub const DIAMOND_RIGHT: &str = "(c◊d)h = c◊(d·h)";
pub const DIAMOND_LEFT: &str = "(c·h)◊d = S(h)(c◊d)";
pub const DIAMOND_SECTION: &str = "c₁·(c₂◊d) = ε(c)d";

/// `β(c ⊗ h) = c₁ ⊗ c₂·h` as a map `C ⊗ H → C ⊗ C`.
pub fn beta_raw(mc: &ModuleCoalgebra) -> Result<LinMap> {
    Ok(Wiring::new(&[mc.space(), mc.h().space()]).delta(0, mc.coalgebra())?.act(1, mc)?.finish())
}

/// `β′(c ⊗ h) = c₁·h ⊗ c₂`.
pub fn beta_prime_raw(mc: &ModuleCoalgebra) -> Result<LinMap> {
    Ok(Wiring::new(&[mc.space(), mc.h().space()])
        .delta(0, mc.coalgebra())?
        .permute(&[0, 2, 1])?
        .act(0, mc)?
        .finish())
}

/// `φ(c ⊗ h) = c·h₁ ⊗ S(h₂)` and its inverse `c ⊗ h ↦ c·h₂ ⊗ S̄(h₁)`.
pub fn lemma_phi(mc: &ModuleCoalgebra) -> Result<(LinMap, LinMap)> {
    let h = mc.h();
    let sbar = h.antipode_inverse()?;
    let start = || Wiring::new(&[mc.space(), h.space()]).delta(1, h);
    let phi = start()?.map(2, h.antipode())?.act(0, mc)?.finish();
    let phi_inv = start()?.permute(&[0, 2, 1])?.act(0, mc)?.map(1, sbar)?.finish();
    Ok((phi, phi_inv))
}

/// `β′ = β∘φ`, `φ` bijective, and `rank β = rank β′`.
pub fn check_lemma31(mc: &ModuleCoalgebra) -> Result<CheckReport> {
    let (phi, phi_inv) = lemma_phi(mc)?;
    let beta = beta_raw(mc)?;
    let beta_p = beta_prime_raw(mc)?;
    let id = LinMap::identity(phi.domain());
    let mut r = CheckReport::new(format!("β versus β′ on {}", mc.space().name()));
    record(&mut r, "φ∘φ⁻¹ = id", phi.compose(&phi_inv), Ok(id.clone()));
    record(&mut r, "φ⁻¹∘φ = id", phi_inv.compose(&phi), Ok(id));
    record(&mut r, "β′ = β∘φ", Ok(beta_p.clone()), beta.compose(&phi));
    let (rb, rp) = (linalg::rank(&beta), linalg::rank(&beta_p));
    r.check("rank β = rank β′", rb == rp, Some(format!("rank β = {rb}, rank β′ = {rp}")));
    Ok(r)
}

/// `C ⊗ C → W`, reading off the coordinates of the cotensor basis; agrees
/// with the inverse of the inclusion on `W`.
fn projection(w: &CotensorSquare) -> Result<LinMap> {
    let cc = w.incl.codomain().clone();
    let field = cc.field();
    let slot = |i: usize| w.free.iter().position(|&p| p == i);
    LinMap::from_fn(cc, w.space().clone(), |i| slot(i).map(|s| vec![(s, field.one())]).unwrap_or_default())
}

/// A verified Galois coextension with exact `β⁻¹`.
#[derive(Clone, Debug)]
pub struct GaloisCertificate {
    pub mc: ModuleCoalgebra,
    pub quotient: QuotientBase,
    pub cotensor: CotensorSquare,
    /// `β` in cotensor coordinates, `C ⊗ H → W`.
    pub beta: LinMap,
    pub beta_inv: LinMap,
    projection: LinMap,
}

/// Builds the certificate or reports `NotGalois` with rank data and a
/// kernel vector of `β` when one exists.
pub fn check_galois(mc: &ModuleCoalgebra) -> Result<GaloisCertificate> {
    let quotient = QuotientBase::new(mc)?;
    let cotensor = CotensorSquare::new(mc, &quotient)?;
    let raw = beta_raw(mc)?;
    let beta = cotensor
        .coordinates(&raw)
        .map_err(|_| Error::Invariant("image of β leaves the cotensor square".into()))?;
    let rank = linalg::rank(&beta);
    let (source_dim, cotensor_dim) = (beta.domain().dim(), cotensor.dim());
    if rank != source_dim || rank != cotensor_dim {
        let kernel_vector = linalg::kernel_basis(&beta)
            .first()
            .map(|v| v.iter().map(|(i, s)| format!("{}·{}", beta.field().display_scalar(s), beta.domain().label(*i as usize))).collect());
        return Err(Error::NotGalois { rank, source_dim, cotensor_dim, kernel_vector });
    }
    let beta_inv = linalg::inverse(&beta)?;
    let projection = projection(&cotensor)?;
    Ok(GaloisCertificate { mc: mc.clone(), quotient, cotensor, beta, beta_inv, projection })
}

impl GaloisCertificate {
    /// `β⁻¹` as a map on `C ⊗ C`, only meaningful on `W`.
    fn beta_inv_extended(&self) -> Result<LinMap> {
        self.beta_inv.compose(&self.projection)
    }

    /// `◊ : W → H`.
    pub fn diamond(&self) -> Result<LinMap> {
        let (c, h) = (self.mc.space(), self.mc.h().space());
        Wiring::from_map(&self.beta_inv, &[c, h])?.eps(0, self.mc.coalgebra()).map(Wiring::finish)
    }

    /// `◊` applied to the columns of `m : X → C ⊗ C`; every column must lie
    /// in `W`.
    pub fn diamond_on(&self, m: &LinMap) -> Result<LinMap> {
        self.diamond()?.compose(&self.cotensor.coordinates(m)?)
    }

    fn diamond_extended(&self) -> Result<LinMap> {
        self.diamond()?.compose(&self.projection)
    }

    /// The closed form `c ⊗ d ↦ c₁ ⊗ S(c₂)d` for `C = H` regular.
    pub fn regular_inverse_closed_form(&self) -> Result<LinMap> {
        let h = self.mc.h();
        let hs = h.space();
        let f = Wiring::new(&[hs, hs]).delta(0, h)?.map(1, h.antipode())?.mult(1, h)?.finish();
        f.compose(&self.cotensor.incl)
    }

    /// The four translation map identities, quantified over the basis of `W`
    /// (and of `W ⊗ H` where `H` enters).
    pub fn check_diamond(&self) -> Result<CheckReport> {
        let mc = &self.mc;
        let (c, h) = (mc.space(), mc.h());
        let hs = h.space();
        let incl = &self.cotensor.incl;
        let w = self.cotensor.space();
        let dia = self.diamond()?;
        let dia_ext = self.diamond_extended()?;
        let id_h = LinMap::identity(hs);
        let mut r = CheckReport::new("translation map");
        record(
            &mut r,
            DIAMOND_COUNIT,
            h.eps().compose(&dia),
            Wiring::from_map(incl, &[c, c]).and_then(|x| x.eps(0, mc.coalgebra())?.eps(0, mc.coalgebra())).map(Wiring::finish),
        );
        let incl_h = incl.kron(&id_h)?;
        let right_moved = Wiring::from_map(&incl_h, &[c, c, hs])?.act(1, mc)?.finish();
        record(
            &mut r,
            DIAMOND_RIGHT,
            Wiring::new(&[w, hs]).map(0, &dia).and_then(|x| x.mult(0, h)).map(Wiring::finish),
            self.diamond_on(&right_moved),
        );
        let left_moved = Wiring::from_map(&incl_h, &[c, c, hs])?.permute(&[0, 2, 1])?.act(0, mc)?.finish();
        record(
            &mut r,
            DIAMOND_LEFT,
            self.diamond_on(&left_moved),
            Wiring::new(&[w, hs])
                .map(0, &dia)
                .and_then(|x| x.map(1, h.antipode()))
                .and_then(|x| x.permute(&[1, 0]))
                .and_then(|x| x.mult(0, h))
                .map(Wiring::finish),
        );
        let split = Wiring::from_map(incl, &[c, c])?.delta(0, mc.coalgebra())?.finish();
        let inner_in_w = {
            let keep = LinMap::identity(c).kron(&incl.compose(&self.projection)?)?;
            keep.compose(&split)? == split
        };
        r.check(format!("{DIAMOND_SECTION}: (c₂, d) lies in the cotensor square"), inner_in_w, None);
        record(
            &mut r,
            DIAMOND_SECTION,
            Wiring::from_map(&split, &[c, c, c]).and_then(|x| x.apply(1, 2, &dia_ext, &[hs])?.act(0, mc)).map(Wiring::finish),
            Wiring::from_map(incl, &[c, c]).and_then(|x| x.eps(0, mc.coalgebra())).map(Wiring::finish),
        );
        Ok(r)
    }

    /// `v(c) = c₁ ◊ ψ(c₂)` for a left `B`-colinear, right `H`-linear
    /// coalgebra map `ψ : C^τ → C^λ`, checked to be a witness with
    /// `ψ(c) = c₁·v(c₂)`; when `ψ` is bijective `v` must be invertible.
    pub fn extract_witness(&self, psi: &LinMap, tau: &RightTwist, lambda: &RightTwist) -> Result<EquivWitness> {
        let mc = &self.mc;
        mc.ensure_same_context(tau.mc(), "witness extraction")?;
        let source = twist_coalgebra(tau, false)?;
        let target = twist_coalgebra(lambda, false)?;
        let morphism = check_morphism(&source, &target, &self.quotient, psi);
        if !morphism.passed() {
            return Err(Error::PsiNotColinear(Box::new(morphism)));
        }
        let c = mc.space();
        let pairs = Wiring::new(&[c]).delta(0, mc.coalgebra())?.map(1, psi)?.finish();
        let v = self.diamond_on(&pairs)?;
        let w = EquivWitness::new(tau.clone(), lambda.clone(), v)?;
        let mut r = CheckReport::new("extracted witness");
        r.absorb("witness", w.report());
        record(&mut r, "ψ(c) = c₁·v(c₂)", psi_of(mc, w.v()), Ok(psi.clone()));
        if linalg::is_bijective(psi) {
            r.check("ψ bijective ⇒ v convolution invertible", w.inverse().is_some(), None);
        }
        if !r.passed() {
            return Err(Error::Invariant(r.failure_summary()));
        }
        Ok(w)
    }

    /// `β⁻¹` maps `W` back onto `C ⊗ H` and is two-sided.
    pub fn check(&self) -> CheckReport {
        let mut r = CheckReport::new(format!("Galois coextension {}", self.mc.space().name()));
        let dom = self.beta.domain().clone();
        record(&mut r, "β∘β⁻¹ = id", self.beta.compose(&self.beta_inv), Ok(LinMap::identity(self.cotensor.space())));
        record(&mut r, "β⁻¹∘β = id", self.beta_inv.compose(&self.beta), Ok(LinMap::identity(&dom)));
        let ext = self.beta_inv_extended();
        record(
            &mut r,
            "β⁻¹ inverts the raw canonical map",
            beta_raw(&self.mc).and_then(|b| ext?.compose(&b)),
            Ok(LinMap::identity(&dom)),
        );
        r
    }
}

/// `f(c⊗h) = c₀ ⊗ S̄(c₋₁)h` on `C ⊗ H` and `g(c⊗d) = c₀·S̄(c₋₁) ⊗ d` on
/// `C ⊗ C`, for the twisting map `t`.
fn square_maps(mc: &ModuleCoalgebra, t: &LinMap) -> Result<(LinMap, LinMap)> {
    let h = mc.h();
    let sbar = h.antipode_inverse()?;
    let (c, hs) = (mc.space(), h.space());
    let start = |other: &Space| -> Result<Wiring> {
        Wiring::new(&[c, other]).apply(0, 1, t, &[hs, c])?.map(0, sbar)?.permute(&[1, 0, 2])
    };
    Ok((start(hs)?.mult(1, h)?.finish(), start(c)?.act(0, mc)?.finish()))
}

/// Twisting by an invertible `τ` preserves the Galois property: builds the
/// square `g∘β′ = β′^τ∘f` with bijective `f`, `g` in both directions
/// (`C → C^τ` via `τ`, `C^τ → C` via `τ⁻¹`), and compares the ranks of
/// `β` and `β^τ`.
pub fn thm32_check(t: &RightTwist) -> Result<CheckReport> {
    let back = t.inverse_twist()?;
    let mut r = CheckReport::new(format!("Galois property under twisting of {}", t.mc().space().name()));
    for (prefix, forward) in [("C → C^τ", t), ("C^τ → C", &back)] {
        if !forward.is_twisting() {
            return Err(Error::NotATwisting(Box::new(forward.report().clone())));
        }
        let sub = square_report(forward)?;
        r.absorb(prefix, &sub);
    }
    let twisted = twist_coalgebra(t, false)?;
    let (rb, rt) = (linalg::rank(&beta_raw(t.mc())?), linalg::rank(&beta_raw(&twisted)?));
    r.check("rank β = rank β^τ", rb == rt, Some(format!("rank β = {rb}, rank β^τ = {rt}")));
    let (g1, g2) = (check_galois(t.mc()).is_ok(), check_galois(&twisted).is_ok());
    r.check("C/B Galois ⟺ C^τ/B Galois", g1 == g2, Some(format!("C: {g1}, C^τ: {g2}")));
    Ok(r)
}

/// The commuting square for one (possibly unverified) twisting with an
/// attached inverse.
pub fn square_report(t: &RightTwist) -> Result<CheckReport> {
    let mc = t.mc();
    let lam = t.require_inverse()?;
    let twisted = twist_coalgebra(t, true)?;
    let (f, g) = square_maps(mc, t.map())?;
    let (f_inv, g_inv) = square_maps(mc, lam)?;
    let mut r = CheckReport::new("commuting square");
    let id_ch = LinMap::identity(f.domain());
    let id_cc = LinMap::identity(g.domain());
    record(&mut r, "f∘f⁻¹ = id", f.compose(&f_inv), Ok(id_ch.clone()));
    record(&mut r, "f⁻¹∘f = id", f_inv.compose(&f), Ok(id_ch));
    record(&mut r, "g∘g⁻¹ = id", g.compose(&g_inv), Ok(id_cc.clone()));
    record(&mut r, "g⁻¹∘g = id", g_inv.compose(&g), Ok(id_cc));
    let beta = beta_prime_raw(mc)?;
    let beta_t = beta_prime_raw(&twisted)?;
    record(&mut r, "g∘β′ = β′^τ∘f", g.compose(&beta), beta_t.compose(&f));
    Ok(r)
}
