use cotwist::catalog;
use cotwist::cocycle::{restrict, TrivialHarrison};
use cotwist::crossed::{check_crossed_iso, crossed_from_twisting, crossed_iso_from_u, phi_from_u, standard_gauge};
use cotwist::doc::{Role, StructureDoc};
use cotwist::equivalence::{crossed_iso_from_witness, witness_from_crossed_iso};
use cotwist::expr::{check_file, Env};
use cotwist::galois::{check_galois, thm32_check};
use cotwist::suite::{script, scripts, verify_theorem};
use cotwist::twisting::{
    left_of, right_of, sigma, sigma_prime, star, times, twist_coalgebra, twisted_delta, LeftTwist, RightTwist,
};
use cotwist::{CheckReport, Error, FieldSpec, Result};

use crate::input::{self, load};
use crate::{CheckKind, Cli, Cmd, CocycleCmd, CrossedCmd, Direction, EquivCmd, GaloisCmd, Outcome};

pub fn run(cli: &Cli) -> Result<Outcome> {
    let f = cli.field;
    match &cli.cmd {
        Cmd::Check { kind, inputs } => {
            let mut out = Outcome::default();
            for src in inputs {
                let mut r = check(*kind, &load(src, f)?)?;
                r.title = format!("{src}: {}", r.title);
                out.reports.push(r);
            }
            Ok(out)
        }
        Cmd::Twist { c, tau } => {
            let mc = input::module_coalgebra(&load(c, f)?)?;
            let t = input::twisting_on(&mc, &input::twisting(&load(tau, f)?)?)?;
            let twisted = twist_coalgebra(&t, false)?;
            let mut doc = input::base_doc(&twisted, mc.h().field())?;
            doc.note(format!("{c} twisted by {tau}"));
            Ok(Outcome::report(t.report().clone()).with_doc(doc))
        }
        Cmd::InvertTwisting { tau } => {
            let t = input::twisting(&load(tau, f)?)?.verified()?.invertible()?;
            let inv = t.inverse_twist()?;
            let mut doc = input::base_doc(inv.mc(), inv.mc().h().field())?;
            doc.note(format!("inverse of {tau}, a twisting of the twisted coalgebra"));
            input::add_twisting(&mut doc, "tau", &inv)?;
            let mut r = CheckReport::new("inverse twisting");
            r.absorb("τ⁻¹", inv.report());
            let mc = t.mc();
            r.check_maps("τ∗τ⁻¹ = σ", &star(mc, t.map(), inv.map())?, &cotwist::twisting::sigma(mc));
            r.check_maps("τ⁻¹∗τ = σ", &star(mc, inv.map(), t.map())?, &cotwist::twisting::sigma(mc));
            Ok(Outcome::report(r).with_doc(doc))
        }
        Cmd::Transpose { direction, input: src } => transpose(*direction, &load(src, f)?),
        Cmd::Crossed(c) => crossed(c, f),
        Cmd::Cocycle(c) => cocycle(c, f),
        Cmd::Equiv(c) => equiv(c, f),
        Cmd::Galois(c) => galois(c, f),
        Cmd::Eval { file, bindings } => {
            let text = std::fs::read_to_string(file)?;
            let env = environment(bindings, f)?;
            Ok(Outcome::report(check_file(&text, &env)?))
        }
        Cmd::Verify { id, instance, all_instances } => {
            let s = script(id)?;
            let names: Vec<Option<&str>> = match (instance, all_instances) {
                (Some(i), _) => vec![Some(i.as_str())],
                (None, true) => s.instances.iter().map(|i| Some(i.as_str())).collect(),
                (None, false) => vec![None],
            };
            let reports = names.into_iter().map(|n| verify_theorem(id, n, f)).collect::<Result<_>>()?;
            Ok(Outcome { reports, doc: None })
        }
        Cmd::Export { name } => Ok(Outcome::default().with_doc(input::export(name, f)?)),
        Cmd::List => {
            for n in catalog::names() {
                println!("builtin  {n}");
            }
            for s in scripts() {
                println!("theorem  {:<10} {} [{}]", s.id, s.title, s.instances.join(", "));
            }
            Ok(Outcome::default())
        }
    }
}

fn check(kind: CheckKind, doc: &StructureDoc) -> Result<CheckReport> {
    Ok(match kind {
        CheckKind::Hopf => doc.hopf("H")?.verify().clone(),
        CheckKind::Modcoalg => input::module_coalgebra(doc)?.check(),
        CheckKind::Twisting if doc.contains("tau") => {
            let mc = input::module_coalgebra(doc)?;
            let t = RightTwist::new(mc.clone(), doc.map_with_role("tau", Role::Twisting)?)?;
            let mut r = t.report().clone();
            if doc.contains("tau.inv") {
                let lam = doc.map_with_role("tau.inv", Role::Twisting)?;
                r.check_maps("stored inverse: τ∗λ = σ", &star(&mc, t.map(), &lam)?, &sigma(&mc));
                r.check_maps("stored inverse: λ∗τ = σ", &star(&mc, &lam, t.map())?, &sigma(&mc));
            }
            r
        }
        CheckKind::Twisting => input::twisting(doc)?.report().clone(),
        CheckKind::LeftTwisting => {
            let mc = input::module_coalgebra(doc)?;
            let l = LeftTwist::new(mc.clone(), doc.map_with_role("gamma", Role::LeftTwisting)?)?;
            let mut r = l.report().clone();
            if doc.contains("gamma.inv") {
                let mu = doc.map_with_role("gamma.inv", Role::LeftTwisting)?;
                r.check_maps("stored inverse: γ×μ = σ′", &times(&mc, l.map(), &mu)?, &sigma_prime(&mc));
                r.check_maps("stored inverse: μ×γ = σ′", &times(&mc, &mu, l.map())?, &sigma_prime(&mc));
            }
            r
        }
        CheckKind::WeakCoaction => doc.weak_coaction()?.check(),
        CheckKind::Harrison => input::harrison(doc)?.report().clone(),
        CheckKind::TwistedCocycle => input::twisted_cocycle(doc)?.report().clone(),
        CheckKind::Witness => input::witness(doc)?.report().clone(),
        CheckKind::Galois => {
            let mc = input::module_coalgebra(doc)?;
            match check_galois(&mc) {
                Ok(cert) => {
                    let mut r = cert.check();
                    r.absorb("diamond", &cert.check_diamond()?);
                    r
                }
                Err(e @ Error::NotGalois { .. }) => galois_failure(&mc, &e),
                Err(e) => return Err(e),
            }
        }
    })
}

fn galois_failure(mc: &cotwist::ModuleCoalgebra, e: &Error) -> CheckReport {
    let mut r = CheckReport::new(format!("Galois coextension {}", mc.space().name()));
    let mut detail = e.to_string();
    if let Error::NotGalois { kernel_vector: Some(k), .. } = e {
        detail.push_str(&format!("; kernel vector of β: {}", k.join(" + ")));
    }
    r.check("canonical map β is bijective", false, Some(detail));
    r
}

fn transpose(direction: Direction, doc: &StructureDoc) -> Result<Outcome> {
    let field = doc.field()?;
    match direction {
        Direction::Rtl => {
            let t = input::twisting(doc)?.verified()?.invertible()?;
            let l = left_of(&t)?;
            let mut out = input::base_doc(t.mc(), field)?;
            out.add_map("gamma", Role::LeftTwisting, l.map())?;
            out.add_map("gamma.inv", Role::LeftTwisting, l.require_inverse()?)?;
            let mut r = CheckReport::new("left hand twisting of a twisting");
            r.absorb("ℓ(τ)", l.report());
            r.check_maps("r(ℓ(τ)) = τ", right_of(&l)?.map(), t.map());
            Ok(Outcome::report(r).with_doc(out))
        }
        Direction::Ltr => {
            let l = input::left_twisting(doc)?.verified()?.invertible()?;
            let t = right_of(&l)?;
            let mut out = input::base_doc(l.mc(), field)?;
            input::add_twisting(&mut out, "tau", &t)?;
            let mut r = CheckReport::new("twisting of a left hand twisting");
            r.absorb("r(γ)", t.report());
            r.check_maps("ℓ(r(γ)) = γ", left_of(&t)?.map(), l.map());
            Ok(Outcome::report(r).with_doc(out))
        }
    }
}

fn gauge_of(u: &Option<String>, hc: &cotwist::crossed::HarrisonCocycle, f: FieldSpec) -> Result<cotwist::LinMap> {
    match u {
        Some(src) => input::gauge(src, f),
        None => standard_gauge(hc),
    }
}

fn crossed(c: &CrossedCmd, f: FieldSpec) -> Result<Outcome> {
    match c {
        CrossedCmd::Build { cocycle } => {
            let hc = load(cocycle, f)?.harrison()?.verified()?;
            let mc = hc.build_crossed()?;
            let mut doc = input::base_doc(&mc, hc.h().field())?;
            doc.note(format!("crossed coproduct of {cocycle}"));
            Ok(Outcome::report(mc.check()).with_doc(doc))
        }
        CrossedCmd::ToTwisting { cocycle } => {
            let t = load(cocycle, f)?.harrison()?.to_twisting()?;
            let mut doc = input::base_doc(t.mc(), t.mc().h().field())?;
            doc.add_map("tau", Role::Twisting, t.map())?;
            Ok(Outcome::report(t.report().clone()).with_doc(doc))
        }
        CrossedCmd::FromTwisting { tau, base } => {
            let t = input::twisting(&load(tau, f)?)?;
            let c = input::base_coalgebra(base.as_deref(), t.mc().h().field())?;
            let hc = crossed_from_twisting(&c, &t)?;
            let mut doc = StructureDoc::new(hc.h().field());
            doc.add_harrison(&hc)?;
            let mut r = hc.report().clone();
            r.check_maps("twisting rebuilt from the cocycle", hc.to_twisting()?.map(), t.map());
            Ok(Outcome::report(r).with_doc(doc))
        }
        CrossedCmd::Gauge { cocycle, u } => {
            let hc = load(cocycle, f)?.harrison()?;
            let u = gauge_of(u, &hc, f)?;
            let gauged = hc.gauge(&u)?;
            let mut doc = StructureDoc::new(hc.h().field());
            doc.note(format!("{cocycle} transformed by a gauge"));
            doc.add_harrison(&gauged)?;
            doc.add_map("u", Role::Other, &u)?;
            Ok(Outcome::report(gauged.report().clone()).with_doc(doc))
        }
        CrossedCmd::Iso { source, target, u } => {
            let (src, tgt) = (load(source, f)?.harrison()?, load(target, f)?.harrison()?);
            let u = gauge_of(u, &tgt, f)?;
            let phi = crossed_iso_from_u(&u, &src, &tgt)?;
            let r = check_crossed_iso(tgt.coalgebra(), &src.build_crossed()?, &tgt.build_crossed()?, &phi);
            let mut doc = StructureDoc::new(tgt.h().field());
            doc.add_map("phi", Role::Other, &phi)?;
            Ok(Outcome::report(r).with_doc(doc))
        }
    }
}

fn cocycle(c: &CocycleCmd, f: FieldSpec) -> Result<Outcome> {
    match c {
        CocycleCmd::Lift { cocycle } => {
            let th = TrivialHarrison::from_harrison(&load(cocycle, f)?.harrison()?)?;
            let tc = th.lift()?;
            let mut doc = input::base_doc(tc.mc(), th.hopf().field())?;
            doc.add_map("alpha", Role::Cocycle, tc.alpha())?;
            let mut r = CheckReport::new("lift");
            r.absorb("trivial coaction cocycle", th.report());
            r.absorb("lifted", tc.report());
            Ok(Outcome::report(r).with_doc(doc))
        }
        CocycleCmd::Restrict { cocycle, base } => {
            let tc = input::twisted_cocycle(&load(cocycle, f)?)?;
            let c = input::base_coalgebra(base.as_deref(), tc.mc().h().field())?;
            let th = restrict(&c, &tc)?;
            let mut doc = StructureDoc::new(th.hopf().field());
            doc.add_harrison(&th.to_harrison()?)?;
            let mut r = th.report().clone();
            r.check_maps("lift(restrict(αᵗ)) = αᵗ", th.lift()?.alpha(), tc.alpha());
            Ok(Outcome::report(r).with_doc(doc))
        }
        CocycleCmd::ToTwisting { cocycle } => {
            let tc = input::twisted_cocycle(&load(cocycle, f)?)?;
            let t = tc.to_twisting()?;
            let mut doc = input::base_doc(t.mc(), t.mc().h().field())?;
            doc.add_map("tau", Role::Twisting, t.map())?;
            let mut r = CheckReport::new("twisting of a twisted 2-cocycle");
            r.absorb("cocycle", tc.report());
            r.absorb("τ_α", t.report());
            Ok(Outcome::report(r).with_doc(doc))
        }
    }
}

fn equiv(c: &EquivCmd, f: FieldSpec) -> Result<Outcome> {
    match c {
        EquivCmd::Check { witness } => Ok(Outcome::report(input::witness(&load(witness, f)?)?.report().clone())),
        EquivCmd::Psi { witness } => {
            let w = input::witness(&load(witness, f)?)?.verified()?;
            let (psi, r) = w.psi_checked()?;
            let mut doc = input::witness_doc(&w)?;
            doc.add_map("psi", Role::Other, &psi)?;
            Ok(Outcome::report(r).with_doc(doc))
        }
        EquivCmd::TransferInverse { witness } => {
            let w = input::witness(&load(witness, f)?)?.verified()?;
            let tau = w.tau().clone().invertible()?;
            let lam = w.transfer_inverse(tau.require_inverse()?)?;
            let mu = lam.require_inverse()?;
            let mc = lam.mc();
            let s = cotwist::twisting::sigma(mc);
            let mut r = CheckReport::new("inverse transferred along an equivalence");
            r.check_maps("μ∗λ = σ", &star(mc, mu, lam.map())?, &s);
            r.check_maps("λ∗μ = σ", &star(mc, lam.map(), mu)?, &s);
            r.check_maps("μ equals the direct ∗-inverse of λ", mu, &cotwist::twisting::star_inverse(mc, lam.map())?);
            let mut doc = input::base_doc(mc, mc.h().field())?;
            input::add_twisting(&mut doc, "tau", &lam)?;
            Ok(Outcome::report(r).with_doc(doc))
        }
        EquivCmd::FromIso { source, target, u } => {
            let (src, tgt) = (load(source, f)?.harrison()?, load(target, f)?.harrison()?);
            let u = gauge_of(u, &tgt, f)?;
            let w = witness_from_crossed_iso(&u, &src, &tgt)?;
            Ok(Outcome::report(w.report().clone()).with_doc(input::witness_doc(&w)?))
        }
        EquivCmd::ToIso { witness, base } => {
            let w = input::witness(&load(witness, f)?)?.verified()?;
            let c = input::base_coalgebra(base.as_deref(), w.mc().h().field())?;
            let u = crossed_iso_from_witness(&c, &w)?;
            let h = w.mc().h();
            let source = crossed_from_twisting(&c, w.lambda())?.build_crossed()?;
            let target = crossed_from_twisting(&c, w.tau())?.build_crossed()?;
            let r = check_crossed_iso(&c, &source, &target, &phi_from_u(&c, h, &u)?);
            let mut doc = StructureDoc::new(h.field());
            doc.add_map("u", Role::Other, &u)?;
            Ok(Outcome::report(r).with_doc(doc))
        }
    }
}

fn galois(c: &GaloisCmd, f: FieldSpec) -> Result<Outcome> {
    match c {
        GaloisCmd::Cert { input: src } => {
            let mc = input::module_coalgebra(&load(src, f)?)?;
            let cert = match check_galois(&mc) {
                Ok(cert) => cert,
                Err(e @ Error::NotGalois { .. }) => return Ok(Outcome::report(galois_failure(&mc, &e))),
                Err(e) => return Err(e),
            };
            let mut doc = StructureDoc::new(mc.h().field());
            doc.add_map("beta", Role::Other, &cert.beta)?;
            doc.add_map("beta.inv", Role::Other, &cert.beta_inv)?;
            Ok(Outcome::report(cert.check()).with_doc(doc))
        }
        GaloisCmd::Diamond { input: src } => {
            let mc = input::module_coalgebra(&load(src, f)?)?;
            let cert = check_galois(&mc)?;
            let mut doc = StructureDoc::new(mc.h().field());
            doc.add_map("diamond", Role::Other, &cert.diamond()?)?;
            Ok(Outcome::report(cert.check_diamond()?).with_doc(doc))
        }
        GaloisCmd::Thm32 { tau } => {
            let t = input::twisting(&load(tau, f)?)?;
            let t = match t.inverse() {
                Some(_) => t,
                None => t.invertible()?,
            };
            Ok(Outcome::report(thm32_check(&t)?))
        }
        GaloisCmd::Extract { input: src } => {
            let doc = load(src, f)?;
            let w0 = input::witness(&doc)?;
            let psi = doc.map("psi")?;
            let cert = check_galois(w0.mc())?;
            let w = cert.extract_witness(&psi, w0.tau(), w0.lambda())?;
            let mut r = w.report().clone();
            r.check_maps("ψ rebuilt from the extracted witness", &w.psi()?, &psi);
            Ok(Outcome::report(r).with_doc(input::witness_doc(&w)?))
        }
    }
}

/// Each `NAME=SOURCE` binds the structure maps of SOURCE: a module
/// coalgebra as `NAME.delta`, `NAME.eps`, `NAME.act` with `H.*`; a Hopf
/// algebra as `NAME.*`. Every other map of the document keeps its own name,
/// every space its own name, and a twisting also gives `NAMEtau.delta`.
fn environment(bindings: &[String], f: FieldSpec) -> Result<Env> {
    let mut env: Option<Env> = None;
    for b in bindings {
        let (name, src) = b
            .split_once('=')
            .ok_or_else(|| Error::Format(format!("binding {b:?} is not NAME=SOURCE")))?;
        let doc = load(src, f)?;
        let field = doc.field()?;
        let e = env.get_or_insert_with(|| Env::new(field));
        if e.field() != field {
            return Err(Error::FieldMismatch(e.field().to_string(), field.to_string()));
        }
        for (n, s) in doc.named_spaces()? {
            e.add_space(&n, &s);
        }
        for (n, _, m) in doc.all_maps()? {
            e.bind(&n, m)?;
        }
        if doc.contains("C.act") || doc.contains("rho") {
            let mc = input::module_coalgebra(&doc)?;
            e.add_module_coalgebra(name, &mc)?;
            if let Ok(t) = input::twisting(&doc) {
                e.bind(&format!("{name}tau.delta"), twisted_delta(&mc, t.map())?)?;
                e.bind("tau", t.map().clone())?;
            }
        } else if doc.contains("H.mult") {
            e.add_hopf(name, &doc.hopf("H")?)?;
        }
    }
    Ok(env.unwrap_or_else(|| Env::new(f)))
}
