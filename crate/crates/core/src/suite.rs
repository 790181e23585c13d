//! Scripted theorem scenarios.
//!
//! Each theorem has a TOML script under `suites/` listing its steps. A step
//! is either a named built-in procedure (`op`) or an equation in the
//! expression language (`lhs`/`rhs`) evaluated in the instance environment.
//! Step reports are merged in script order, so identical inputs give
//! byte-identical reports.
//!
//! Instances are catalog names: `harrison:*` (the crossed coproduct twisting
//! of `C ⊗ H`), `regular:*` or `trivial:*` (with `τ = σ`), or
//! `<module coalgebra>+<harrison name>` to put the cocycle's twisting on a
//! structurally equal module coalgebra.

use serde::Deserialize;

use crate::catalog::{self, Builtin};
use crate::cocycle::{restrict, TrivialHarrison};
use crate::crossed::{check_crossed_iso, crossed_from_twisting, phi_from_u, standard_gauge, HarrisonCocycle};
use crate::equivalence::{crossed_iso_from_witness, witness_from_crossed_iso, EquivWitness};
use crate::error::{Error, Result};
use crate::expr::{check_equation, Env};
use crate::galois::{beta_prime_raw, beta_raw, check_galois, check_lemma31, lemma_phi, thm32_check};
use crate::linmap::LinMap;
use crate::modcoalg::ModuleCoalgebra;
use crate::report::CheckReport;
use crate::scalar::FieldSpec;
use crate::twisting::{left_of, right_of, sigma, sigma_prime, star, twist_coalgebra, LeftTwist, RightTwist};

const SOURCES: &[&str] = &[
    include_str!("../suites/prop1.2.toml"),
    include_str!("../suites/lemma1.4.toml"),
    include_str!("../suites/prop2.2.toml"),
    include_str!("../suites/prop2.3.toml"),
    include_str!("../suites/lemma2.4a.toml"),
    include_str!("../suites/thm2.5.toml"),
    include_str!("../suites/prop3.4.toml"),
    include_str!("../suites/thm3.5.toml"),
    include_str!("../suites/lemma3.1.toml"),
    include_str!("../suites/thm3.2.toml"),
    include_str!("../suites/thm3.3.toml"),
];

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Script {
    pub id: String,
    pub title: String,
    /// Instances the scenario is exercised on; the first is the default.
    pub instances: Vec<String>,
    #[serde(rename = "step")]
    pub steps: Vec<Step>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Step {
    pub name: String,
    #[serde(default)]
    pub op: Option<String>,
    #[serde(default)]
    pub lhs: Option<String>,
    #[serde(default)]
    pub rhs: Option<String>,
}

pub fn parse_script(text: &str) -> Result<Script> {
    let s: Script = toml::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    if s.instances.is_empty() {
        return Err(Error::Format(format!("script {} lists no instances", s.id)));
    }
    for st in &s.steps {
        match (&st.op, &st.lhs, &st.rhs) {
            (Some(op), None, None) if OPS.iter().any(|(n, _)| n == op) => {}
            (Some(op), None, None) => return Err(Error::Format(format!("script {}: unknown op {op:?}", s.id))),
            (None, Some(_), Some(_)) => {}
            _ => return Err(Error::Format(format!("script {}, step {:?}: give `op` or `lhs` and `rhs`", s.id, st.name))),
        }
    }
    Ok(s)
}

/// All shipped scripts, in theorem order.
pub fn scripts() -> Vec<Script> {
    SOURCES.iter().map(|s| parse_script(s).expect("shipped scripts parse")).collect()
}

pub fn script(id: &str) -> Result<Script> {
    scripts()
        .into_iter()
        .find(|s| s.id == id)
        .ok_or_else(|| Error::UnknownName(format!("theorem {id}")))
}

pub fn theorem_ids() -> Vec<String> {
    scripts().into_iter().map(|s| s.id).collect()
}

/// A module coalgebra with an invertible twisting and, when the twisting
/// comes from a crossed coproduct, the cocycle it came from.
#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub mc: ModuleCoalgebra,
    pub tau: RightTwist,
    pub harrison: Option<HarrisonCocycle>,
}

impl Instance {
    pub fn resolve(name: &str, field: FieldSpec) -> Result<Self> {
        let (base, cocycle) = match name.split_once('+') {
            Some((b, c)) => (b, Some(c)),
            None => (name, None),
        };
        let (mc, harrison) = match catalog::builtin(base, field)? {
            Builtin::ModuleCoalgebra(mc) => (mc, None),
            Builtin::Harrison(hc) => {
                let t = hc.to_twisting()?;
                (t.mc().clone(), Some(hc))
            }
            Builtin::Hopf(_) => return Err(Error::UnknownName(format!("{base} is not a module coalgebra"))),
        };
        let harrison = match cocycle {
            None => harrison,
            Some(c) if harrison.is_none() => Some(catalog::harrison(c, field)?),
            Some(_) => return Err(Error::UnknownName(format!("instance {name}: two cocycles"))),
        };
        let tau = match &harrison {
            None => RightTwist::sigma(&mc),
            Some(hc) => {
                let t = hc.to_twisting()?;
                mc.ensure_same_context(t.mc(), "instance twisting")?;
                if t.mc().delta() != mc.delta() || t.mc().act() != mc.act() {
                    return Err(Error::UnknownName(format!("instance {name}: cocycle lives on another module coalgebra")));
                }
                RightTwist::new(mc.clone(), t.map().clone())?
            }
        };
        let tau = tau.verified()?.invertible()?;
        Ok(Instance { name: name.to_string(), mc, tau, harrison })
    }

    pub fn field(&self) -> FieldSpec {
        self.mc.h().field()
    }

    fn harrison(&self) -> Result<&HarrisonCocycle> {
        self.harrison
            .as_ref()
            .ok_or_else(|| Error::UnknownName(format!("instance {} carries no cocycle", self.name)))
    }

    pub fn gauge_element(&self) -> Result<LinMap> {
        standard_gauge(self.harrison()?)
    }

    /// The witness `τ ∼ λ` obtained by gauging the cocycle with
    /// [`gauge_element`](Self::gauge_element).
    pub fn gauge_witness(&self) -> Result<(LinMap, HarrisonCocycle, EquivWitness)> {
        let hc = self.harrison()?;
        let u = self.gauge_element()?;
        let gauged = hc.gauge(&u)?;
        let w = witness_from_crossed_iso(&u, &gauged, hc)?;
        Ok((u, gauged, w))
    }

    /// Generators for equation steps: `H.*`, `C.*`, `tau`, `tau.inv`,
    /// `Ctau.delta`, and for Galois-type steps `beta`, `beta.prime`, `phi`.
    pub fn env(&self) -> Result<Env> {
        let mut env = Env::new(self.field());
        env.add_module_coalgebra("C", &self.mc)?;
        env.bind("tau", self.tau.map().clone())?;
        env.bind("tau.inv", self.tau.require_inverse()?.clone())?;
        env.bind("sigma", sigma(&self.mc))?;
        env.bind("Ctau.delta", twist_coalgebra(&self.tau, false)?.delta().clone())?;
        if self.mc.h().antipode_inverse().is_ok() {
            env.bind("beta", beta_raw(&self.mc)?)?;
            env.bind("beta.prime", beta_prime_raw(&self.mc)?)?;
            env.bind("phi", lemma_phi(&self.mc)?.0)?;
        }
        if let Some(hc) = &self.harrison {
            env.bind("alpha", hc.alpha().clone())?;
            env.bind("rho", hc.rho().clone())?;
        }
        Ok(env)
    }
}

type Op = fn(&Instance) -> Result<CheckReport>;

const OPS: &[(&str, Op)] = &[
    ("hopf-axioms", |i| Ok(i.mc.h().verify().clone())),
    ("module-coalgebra-axioms", |i| Ok(i.mc.check())),
    ("twisting-conditions", |i| Ok(i.tau.report().clone())),
    ("left-of-sigma", left_of_sigma),
    ("right-of-sigma-prime", right_of_sigma_prime),
    ("right-left-roundtrip", right_left_roundtrip),
    ("left-right-roundtrip", left_right_roundtrip),
    ("harrison-conditions", |i| Ok(i.harrison()?.report().clone())),
    ("crossed-equals-twisted", crossed_equals_twisted),
    ("cocycle-from-twisting", cocycle_from_twisting),
    ("twisted-cocycle-conditions", twisted_cocycle_conditions),
    ("induced-twisting", induced_twisting),
    ("trivial-harrison-conditions", |i| Ok(TrivialHarrison::from_harrison(i.harrison()?)?.report().clone())),
    ("lift-restrict-roundtrip", lift_restrict_roundtrip),
    ("gauge-witness", |i| Ok(i.gauge_witness()?.2.report().clone())),
    ("psi-morphism", |i| Ok(i.gauge_witness()?.2.psi_checked()?.1)),
    ("reflexive", reflexive),
    ("symmetric", symmetric),
    ("transitive", transitive),
    ("transfer-inverse", transfer_inverse),
    ("iso-to-witness", iso_to_witness),
    ("witness-to-iso", witness_to_iso),
    ("canonical-map-variant", |i| check_lemma31(&i.mc)),
    ("galois-certificate", galois_certificate),
    ("galois-square", |i| thm32_check(&i.tau)),
    ("extract-identity", extract_identity),
    ("extract-roundtrip", extract_roundtrip),
];

fn left_of_sigma(i: &Instance) -> Result<CheckReport> {
    let mut r = CheckReport::new("ℓ(σ)");
    let s = RightTwist::sigma(&i.mc).invertible()?;
    let l = left_of(&s)?;
    r.check_maps("ℓ(σ) = σ′", l.map(), &sigma_prime(&i.mc));
    Ok(r)
}

fn right_of_sigma_prime(i: &Instance) -> Result<CheckReport> {
    let mut r = CheckReport::new("r(σ′)");
    let s = LeftTwist::sigma_prime(&i.mc).invertible()?;
    r.check_maps("r(σ′) = σ", right_of(&s)?.map(), &sigma(&i.mc));
    Ok(r)
}

fn right_left_roundtrip(i: &Instance) -> Result<CheckReport> {
    let mut r = CheckReport::new("r∘ℓ");
    for (prefix, t) in [("τ", i.tau.clone()), ("τ⁻¹ on C^τ", i.tau.inverse_twist()?)] {
        let l = left_of(&t)?;
        r.absorb(prefix, l.report());
        r.check_maps(format!("{prefix}/r(ℓ(τ)) = τ"), right_of(&l)?.map(), t.map());
    }
    Ok(r)
}

fn left_right_roundtrip(i: &Instance) -> Result<CheckReport> {
    let mut r = CheckReport::new("ℓ∘r");
    let gamma = left_of(&i.tau)?;
    let back = right_of(&gamma)?;
    r.absorb("r(γ)", back.report());
    r.check_maps("ℓ(r(γ)) = γ", left_of(&back)?.map(), gamma.map());
    Ok(r)
}

fn crossed_equals_twisted(i: &Instance) -> Result<CheckReport> {
    let hc = i.harrison()?;
    let mut r = CheckReport::new("crossed coproduct as a twisted coalgebra");
    let crossed = hc.build_crossed()?;
    let twisted = twist_coalgebra(&i.tau, false)?;
    r.check_maps("(C⊗H)^τ comultiplication = crossed comultiplication", twisted.delta(), crossed.delta());
    r.check_maps("counits agree", twisted.eps(), crossed.eps());
    r.absorb("crossed coproduct", &crossed.check());
    Ok(r)
}

fn cocycle_from_twisting(i: &Instance) -> Result<CheckReport> {
    let hc = i.harrison()?;
    let mut r = CheckReport::new("cocycle recovered from the twisting");
    let back = crossed_from_twisting(hc.coalgebra(), &i.tau)?;
    r.check_maps("weak coaction recovered", back.rho(), hc.rho());
    r.check_maps("cocycle recovered", back.alpha(), hc.alpha());
    Ok(r)
}

fn twisted_cocycle_conditions(i: &Instance) -> Result<CheckReport> {
    let th = TrivialHarrison::from_harrison(i.harrison()?)?;
    Ok(th.lift()?.report().clone())
}

fn induced_twisting(i: &Instance) -> Result<CheckReport> {
    let tc = TrivialHarrison::from_harrison(i.harrison()?)?.lift()?;
    let t = tc.to_twisting()?;
    let mut r = CheckReport::new("twisting induced by a twisted cocycle");
    r.absorb("τ_α", t.report());
    r.check_maps("τ_α = crossed coproduct twisting", t.map(), i.tau.map());
    Ok(r)
}

fn lift_restrict_roundtrip(i: &Instance) -> Result<CheckReport> {
    let hc = i.harrison()?;
    let mut r = CheckReport::new("lift and restrict");
    let mut cases = vec![("trivial α", TrivialHarrison::from_harrison(&HarrisonCocycle::trivial(hc.coalgebra().clone(), hc.hopf().clone())?)?)];
    cases.push(("α", TrivialHarrison::from_harrison(hc)?));
    for (prefix, th) in cases {
        let tc = th.lift()?;
        let back = restrict(hc.coalgebra(), &tc)?;
        r.check_maps(format!("{prefix}/restrict(lift(α)) = α"), back.alpha(), th.alpha());
        r.check_maps(format!("{prefix}/lift(restrict(αᵗ)) = αᵗ"), back.lift()?.alpha(), tc.alpha());
    }
    Ok(r)
}

fn reflexive(i: &Instance) -> Result<CheckReport> {
    Ok(EquivWitness::reflexive(i.tau.clone())?.report().clone())
}

fn symmetric(i: &Instance) -> Result<CheckReport> {
    let (_, _, w) = i.gauge_witness()?;
    Ok(w.invert()?.report().clone())
}

/// Composes the gauge witness with a second gauge by `1 + 3b`.
fn transitive(i: &Instance) -> Result<CheckReport> {
    let (u, gauged, w1) = i.gauge_witness()?;
    let f = i.field();
    let one = gauged.h().unit().compose(gauged.coalgebra().eps())?;
    let u2 = one.add(&u.sub(&one)?.scale(&f.from_i64(3)))?;
    let last = gauged.gauge(&u2)?;
    let w2 = witness_from_crossed_iso(&u2, &last, &gauged)?;
    let w = w1.compose(&w2)?;
    let mut r = CheckReport::new("transitivity");
    r.absorb("composite", w.report());
    r.check_maps("composite ends at the last twisting", w.lambda().map(), last.to_twisting()?.map());
    Ok(r)
}

fn transfer_inverse(i: &Instance) -> Result<CheckReport> {
    let (_, _, w) = i.gauge_witness()?;
    let lam = w.transfer_inverse(i.tau.require_inverse()?)?;
    let mu = lam.require_inverse()?;
    let mc = lam.mc();
    let s = sigma(mc);
    let mut r = CheckReport::new("inverse transferred along an equivalence");
    r.check_maps("μ∗λ = σ", &star(mc, mu, lam.map())?, &s);
    r.check_maps("λ∗μ = σ", &star(mc, lam.map(), mu)?, &s);
    r.check_maps("μ equals the direct ∗-inverse of λ", mu, &crate::twisting::star_inverse(mc, lam.map())?);
    Ok(r)
}

fn iso_to_witness(i: &Instance) -> Result<CheckReport> {
    let (u, gauged, w) = i.gauge_witness()?;
    let hc = i.harrison()?;
    let mut r = CheckReport::new("crossed coproduct isomorphism to witness");
    let phi = phi_from_u(hc.coalgebra(), hc.h(), &u)?;
    r.absorb("φ", &check_crossed_iso(hc.coalgebra(), &gauged.build_crossed()?, &hc.build_crossed()?, &phi));
    r.absorb("v", w.report());
    Ok(r)
}

fn witness_to_iso(i: &Instance) -> Result<CheckReport> {
    let (u, _, w) = i.gauge_witness()?;
    let hc = i.harrison()?;
    let mut r = CheckReport::new("witness to crossed coproduct isomorphism");
    let back = crossed_iso_from_witness(hc.coalgebra(), &w)?;
    r.check_maps("u recovered from v", &back, &u);
    let rebuilt = witness_from_crossed_iso(&back, &hc.gauge(&back)?, hc)?;
    r.check_maps("v recovered from u", rebuilt.v(), w.v());
    Ok(r)
}

fn galois_certificate(i: &Instance) -> Result<CheckReport> {
    let mut r = CheckReport::new("Galois certificates");
    let twisted = twist_coalgebra(&i.tau, false)?;
    for (prefix, mc) in [("C", &i.mc), ("C^τ", &twisted)] {
        match check_galois(mc) {
            Ok(cert) => {
                r.absorb(prefix, &cert.check());
                r.absorb(&format!("{prefix}/diamond"), &cert.check_diamond()?);
            }
            Err(e) => {
                r.check(format!("{prefix}/Galois"), false, Some(e.to_string()));
            }
        }
    }
    Ok(r)
}

fn extract_identity(i: &Instance) -> Result<CheckReport> {
    let cert = check_galois(&i.mc)?;
    let twisted = twist_coalgebra(&i.tau, false)?;
    let id = LinMap::identity(twisted.space());
    let w = cert.extract_witness(&id, &i.tau, &i.tau)?;
    let mut r = CheckReport::new("witness of the identity");
    r.check_maps("ψ = id gives v = uε", w.v(), &i.mc.h().unit_counit_on(i.mc.coalgebra()));
    Ok(r)
}

fn extract_roundtrip(i: &Instance) -> Result<CheckReport> {
    let (_, _, w) = i.gauge_witness()?;
    let cert = check_galois(w.mc())?;
    let psi = w.psi()?;
    let back = cert.extract_witness(&psi, w.tau(), w.lambda())?;
    let mut r = CheckReport::new("witness extraction");
    r.check_maps("extract(ψ_v) = v", back.v(), w.v());
    r.check_maps("ψ rebuilt from the extracted witness", &back.psi()?, &psi);
    r.absorb("extracted", back.report());
    Ok(r)
}

fn run_step(step: &Step, inst: &Instance, env: &Env) -> Result<CheckReport> {
    if let Some(op) = &step.op {
        let (_, f) = OPS.iter().find(|(n, _)| n == op).expect("ops are validated on parse");
        return f(inst);
    }
    let (lhs, rhs) = (step.lhs.as_deref().unwrap_or(""), step.rhs.as_deref().unwrap_or(""));
    check_equation(lhs, rhs, env)
}

/// Runs the script for `id` on `instance` (the script's first instance
/// when `None`). Unknown ids and instances, or instances lacking the data a
/// step needs, are errors; every other failure is recorded in the report.
pub fn verify_theorem(id: &str, instance: Option<&str>, field: FieldSpec) -> Result<CheckReport> {
    let s = script(id)?;
    let name = instance.unwrap_or(&s.instances[0]);
    let inst = Instance::resolve(name, field)?;
    let env = inst.env()?;
    let mut report = CheckReport::new(format!("{} ({}) on {} over {}", s.id, s.title, inst.name, field));
    for step in &s.steps {
        match run_step(step, &inst, &env) {
            Ok(sub) => report.absorb(&step.name, &sub),
            Err(e @ Error::UnknownName(_)) => return Err(e),
            Err(e) => {
                report.check(step.name.clone(), false, Some(e.to_string()));
            }
        }
    }
    Ok(report)
}

/// Every theorem on every listed instance.
pub fn verify_all(field: FieldSpec) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for s in scripts() {
        for inst in &s.instances {
            out.push(verify_theorem(&s.id, Some(inst), field)?);
        }
    }
    Ok(out)
}
