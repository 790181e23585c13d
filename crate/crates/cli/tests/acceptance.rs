//! One line per acceptance criterion; exits nonzero when any fails.

use std::path::Path;
use std::process::Command;
use std::sync::Arc;

use cotwist::catalog::{self, Builtin, HARRISON_NAMES, HOPF_NAMES};
use cotwist::cocycle::{restrict, TrivialHarrison};
use cotwist::crossed::{crossed_from_twisting, HarrisonCocycle};
use cotwist::galois::{beta_raw, check_galois, check_lemma31};
use cotwist::suite::verify_theorem;
use cotwist::twisting::{
    left_of, normalized_left, normalized_right, right_of, sigma, sigma_prime, star, times, twist_coalgebra,
    RightTwist,
};
use cotwist::{FieldSpec, LinMap, ModuleCoalgebra, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FIELDS: [FieldSpec; 2] = [FieldSpec::Rationals, FieldSpec::Prime(5)];

type Outcome = Result<String, String>;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_cotwist")).args(args).env_remove("COTWIST_FIELD").output().unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn module_coalgebras(f: FieldSpec) -> Vec<(String, ModuleCoalgebra)> {
    catalog::names()
        .into_iter()
        .filter_map(|n| match catalog::builtin(&n, f).unwrap() {
            Builtin::ModuleCoalgebra(mc) => Some((n, mc)),
            _ => None,
        })
        .collect()
}

fn axiom_suite() -> Outcome {
    let mut checks = 0;
    for f in FIELDS {
        let fname = f.to_string();
        for name in HOPF_NAMES {
            let (code, out) = cli(&["check", "hopf", name, "--field", &fname]);
            ensure(code == 0, || format!("{name} over {f}: exit {code}\n{out}"))?;
            for mc in [format!("regular:{name}"), format!("trivial:{name}")] {
                let (code, out) = cli(&["check", "modcoalg", &mc, "--field", &fname]);
                ensure(code == 0, || format!("{mc} over {f}: exit {code}\n{out}"))?;
            }
            checks += 3;
        }
        let h = catalog::sweedler(f).map_err(|e| e.to_string())?;
        let s = h.antipode();
        let s2 = s.compose(s).unwrap();
        ensure(s2.compose(&s2).unwrap() == LinMap::identity(h.space()), || "S⁴ ≠ id".into())?;
        ensure(s2 != LinMap::identity(h.space()), || "S² = id".into())?;
    }
    Ok(format!("{checks} structures pass; S⁴ = id and S² ≠ id on H4"))
}

fn monoid_suite() -> Outcome {
    let mut count = 0;
    for f in FIELDS {
        for (name, mc) in module_coalgebras(f) {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            let mut coeff = || -> Scalar { f.from_i64(rng.gen_range(-3..=3)) };
            let r: Vec<LinMap> = (0..20).map(|_| normalized_right(&mc, &mut coeff).unwrap()).collect();
            let l: Vec<LinMap> = (0..20).map(|_| normalized_left(&mc, &mut coeff).unwrap()).collect();
            let (s, s2) = (sigma(&mc), sigma_prime(&mc));
            for i in 0..20 {
                let (a, b, c) = (&r[i], &r[(i + 1) % 20], &r[(i + 7) % 20]);
                let st = |x: &LinMap, y: &LinMap| star(&mc, x, y).unwrap();
                ensure(st(&st(a, b), c) == st(a, &st(b, c)), || format!("∗ not associative on {name}"))?;
                ensure(st(&s, a) == *a && st(a, &s) == *a, || format!("σ not a unit on {name}"))?;
                let (x, y, z) = (&l[i], &l[(i + 1) % 20], &l[(i + 7) % 20]);
                let tm = |p: &LinMap, q: &LinMap| times(&mc, p, q).unwrap();
                ensure(tm(&tm(x, y), z) == tm(x, &tm(y, z)), || format!("× not associative on {name}"))?;
                ensure(tm(&s2, x) == *x && tm(x, &s2) == *x, || format!("σ′ not a unit on {name}"))?;
                count += 2;
            }
        }
    }
    Ok(format!("{count} random normalized maps, 20 per product per module coalgebra and field"))
}

fn correspondence() -> Outcome {
    let mut n = 0;
    for f in FIELDS {
        for name in HARRISON_NAMES {
            let t = catalog::harrison(name, f).unwrap().to_twisting().unwrap().verified().unwrap().invertible().unwrap();
            let s = RightTwist::sigma(t.mc()).invertible().unwrap();
            ensure(left_of(&s).unwrap().map() == &sigma_prime(t.mc()), || "ℓ(σ) ≠ σ′".into())?;
            for tw in [s, t.inverse_twist().unwrap(), t] {
                let l = left_of(&tw).unwrap();
                ensure(right_of(&l).unwrap().map() == tw.map(), || format!("r(ℓ(τ)) ≠ τ on {name}"))?;
                let back = right_of(&l).unwrap();
                ensure(left_of(&back).unwrap().map() == l.map(), || format!("ℓ(r(γ)) ≠ γ on {name}"))?;
                n += 1;
            }
        }
        let mc = ModuleCoalgebra::regular(Arc::new(catalog::sweedler(f).unwrap()));
        let sp = cotwist::twisting::LeftTwist::sigma_prime(&mc).invertible().unwrap();
        ensure(right_of(&sp).unwrap().map() == &sigma(&mc), || "r(σ′) ≠ σ".into())?;
    }
    let (code, out) = cli(&["verify", "prop1.2", "--instance", "harrison:C2-sign"]);
    ensure(code == 0, || out)?;
    Ok(format!("{n} invertible twistings roundtrip both ways"))
}

fn crossed_bijection() -> Outcome {
    for f in FIELDS {
        let sign = catalog::harrison("harrison:C2-sign", f).unwrap();
        let trivial = HarrisonCocycle::trivial(sign.coalgebra().clone(), sign.hopf().clone()).unwrap();
        for hc in [trivial, sign, catalog::harrison("harrison:H4-twist", f).unwrap()] {
            let t = hc.to_twisting().unwrap();
            let back = crossed_from_twisting(hc.coalgebra(), &t).unwrap();
            ensure(back.rho() == hc.rho() && back.alpha() == hc.alpha(), || "cocycle roundtrip".into())?;
            ensure(back.to_twisting().unwrap().map() == t.map(), || "twisting roundtrip".into())?;
            let twisted = twist_coalgebra(&t, false).unwrap();
            ensure(twisted.delta() == hc.build_crossed().unwrap().delta(), || "(C⊗H)^τ ≠ crossed coproduct".into())?;
        }
    }
    let (code, out) = cli(&["verify", "lemma1.4", "--all-instances"]);
    ensure(code == 0, || out)?;
    Ok("cocycle ↔ twisting roundtrips exact; (C⊗H)^τ = C ⊲_α H for trivial α, R_σ and the H4 cocycle".into())
}

fn cocycle_suite() -> Outcome {
    for f in FIELDS {
        let sign = catalog::harrison("harrison:C2-sign", f).unwrap();
        let trivial = HarrisonCocycle::trivial(sign.coalgebra().clone(), sign.hopf().clone()).unwrap();
        for hc in [trivial, sign, catalog::harrison("harrison:H4-twist", f).unwrap()] {
            let th = TrivialHarrison::from_harrison(&hc).unwrap();
            let tc = th.lift().map_err(|e| e.to_string())?;
            let back = restrict(hc.coalgebra(), &tc).map_err(|e| e.to_string())?;
            ensure(back.alpha() == th.alpha(), || "restrict(lift(α)) ≠ α".into())?;
            ensure(back.lift().unwrap().alpha() == tc.alpha(), || "lift(restrict(αᵗ)) ≠ αᵗ".into())?;
            let t = tc.to_twisting().unwrap();
            let r = t.report();
            ensure(r.passed() && r.entries.len() >= 4, || r.to_string())?;
        }
    }
    for id in ["prop3.4", "prop2.2"] {
        let (code, out) = cli(&["verify", id, "--all-instances"]);
        ensure(code == 0, || out)?;
    }
    Ok("lift/restrict exact on trivial α and R_σ; τ_αᵗ passes every twisting condition".into())
}

fn equivalence_suite() -> Outcome {
    for f in FIELDS {
        for inst in ["harrison:C2-sign", "harrison:H4-twist"] {
            for id in ["lemma2.4a", "thm2.5", "thm3.5", "prop2.3"] {
                let r = verify_theorem(id, Some(inst), f).map_err(|e| e.to_string())?;
                ensure(r.passed(), || r.to_string())?;
            }
        }
    }
    let dir = tempfile::tempdir().unwrap();
    let p = |n: &str| dir.path().join(n).to_string_lossy().into_owned();
    for (args, _) in [
        (vec!["crossed", "gauge", "harrison:C2-sign", "-o", &p("g.json")], ()),
        (vec!["equiv", "from-iso", &p("g.json"), "harrison:C2-sign", "-o", &p("w.json")], ()),
        (vec!["equiv", "check", &p("w.json")], ()),
        (vec!["equiv", "transfer-inverse", &p("w.json"), "-o", &p("t.json")], ()),
        (vec!["equiv", "to-iso", &p("w.json"), "-o", &p("u.json")], ()),
    ] {
        let (code, out) = cli(&args);
        ensure(code == 0, || format!("{}: exit {code}\n{out}", args.join(" ")))?;
    }
    let u = cotwist::doc::StructureDoc::from_json(&std::fs::read_to_string(p("u.json")).unwrap()).unwrap();
    let g = cotwist::doc::StructureDoc::from_json(&std::fs::read_to_string(p("g.json")).unwrap()).unwrap();
    ensure(u.map("u").unwrap() == g.map("u").unwrap(), || "to-iso does not recover the gauge".into())?;
    Ok("relation axioms, inverse transfer (μ∗λ = λ∗μ = σ, μ = λ⁻¹) and iso ↔ witness pass on the corpus".into())
}

/// `c ⊗ d ↦ c₁ ⊗ S(c₂)d` by index loops over the structure constants of a
/// regular module coalgebra.
fn closed_form_by_loops(mc: &ModuleCoalgebra) -> LinMap {
    let h = mc.h();
    let (n, f) = (h.dim(), h.field());
    let cc = h.space().tensor(h.space()).unwrap();
    LinMap::from_fn(cc.clone(), cc, |col| {
        let (i, j) = (col / n, col % n);
        let mut acc: Vec<(usize, Scalar)> = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let d = h.delta().entry(a * n + b, i);
                for s in 0..n {
                    let sv = h.antipode().entry(s, b);
                    for k in 0..n {
                        let m = h.mult().entry(k, s * n + j);
                        acc.push((a * n + k, f.mul(&f.mul(&d, &sv), &m)));
                    }
                }
            }
        }
        acc
    })
    .unwrap()
}

fn galois_suite() -> Outcome {
    for f in FIELDS {
        for name in HOPF_NAMES {
            let mc = ModuleCoalgebra::regular(Arc::new(catalog::hopf(name, f).unwrap()));
            let cert = check_galois(&mc).map_err(|e| format!("{name}: {e}"))?;
            let closed = closed_form_by_loops(&mc).compose(&cert.cotensor.incl).unwrap();
            ensure(closed == cert.beta_inv, || format!("β⁻¹ ≠ closed form on {name}"))?;
            let d = cert.check_diamond().unwrap();
            ensure(d.passed(), || d.to_string())?;
        }
        for (name, mc) in module_coalgebras(f) {
            let r = check_lemma31(&mc).unwrap();
            ensure(r.passed(), || format!("{name}: {r}"))?;
        }
        for inst in ["regular:sweedler:H4+harrison:H4-twist", "harrison:C2-sign"] {
            for id in ["thm3.2", "thm3.3"] {
                let r = verify_theorem(id, Some(inst), f).map_err(|e| e.to_string())?;
                ensure(r.passed(), || r.to_string())?;
            }
        }
        let t = catalog::harrison("harrison:H4-twist", f).unwrap().to_twisting().unwrap();
        let beta_t = beta_raw(&twist_coalgebra(&t, false).unwrap()).unwrap();
        ensure(cotwist::linalg::rank(&beta_t) == 16, || "β^τ not bijective on twisted H4".into())?;
    }
    let (code, out) = cli(&["check", "galois", "trivial:sweedler:H4"]);
    ensure(code == 1 && out.contains("kernel vector"), || out)?;
    Ok("regular C = H Galois with closed-form β⁻¹; diamond identities, rank equality, square and extraction exact".into())
}

/// Replaces one matrix entry of map `name` with a different value.
fn corrupt(src: &Path, dst: &Path, name: &str, row: usize, col: usize) {
    let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(src).unwrap()).unwrap();
    let maps = v["maps"].as_array_mut().unwrap();
    let m = maps.iter_mut().find(|m| m["name"] == name).unwrap();
    let cell = &mut m["matrix"][row][col];
    *cell = serde_json::Value::String(if cell == "0" { "1".into() } else { "0".into() });
    std::fs::write(dst, serde_json::to_string_pretty(&v).unwrap()).unwrap();
}

fn negative_controls() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let p = |n: &str| dir.path().join(n);
    let s = |n: &str| p(n).to_string_lossy().into_owned();
    let setup: &[&[&str]] = &[
        &["export", "sweedler:H4", "-o", &s("hopf.json")],
        &["export", "regular:group:C2", "-o", &s("mc.json")],
        &["crossed", "to-twisting", "harrison:H4-twist", "-o", &s("tau.json")],
        &["transpose", "rtl", "harrison:C2-sign", "-o", &s("gamma.json")],
        &["export", "harrison:C2-sign", "-o", &s("hc.json")],
        &["cocycle", "lift", "harrison:H4-twist", "-o", &s("tc.json")],
        &["crossed", "gauge", "harrison:H4-twist", "-o", &s("g.json")],
    ];
    for args in setup {
        let (code, out) = cli(args);
        ensure(code == 0, || format!("{}: exit {code}\n{out}", args.join(" ")))?;
    }
    let (code, out) = cli(&["equiv", "from-iso", &s("g.json"), "harrison:H4-twist", "-o", &s("w.json")]);
    ensure(code == 0, || out)?;
    // (checker, source, map, row, col)
    let cases = [
        ("hopf", "hopf.json", "H.eps", 0, 2),
        ("modcoalg", "mc.json", "C.act", 0, 1),
        ("twisting", "tau.json", "tau", 5, 1),
        ("left-twisting", "gamma.json", "gamma", 1, 0),
        ("weak-coaction", "hc.json", "rho", 1, 0),
        ("harrison", "hc.json", "alpha", 1, 0),
        ("twisted-cocycle", "tc.json", "alpha", 14, 1),
        ("witness", "w.json", "v", 2, 2),
    ];
    for (checker, src, map, row, col) in cases {
        let bad = p(&format!("bad-{checker}.json"));
        corrupt(&p(src), &bad, map, row, col);
        let (good, _) = cli(&["check", checker, &s(src)]);
        ensure(good == 0, || format!("{checker}: uncorrupted input fails"))?;
        let (code, out) = cli(&["check", checker, &bad.to_string_lossy()]);
        ensure(code == 1, || format!("{checker}: exit {code}\n{out}"))?;
        ensure(out.contains("FAIL") && out.contains("at basis vector"), || format!("{checker}: no witness\n{out}"))?;
    }
    let (code, out) = cli(&["check", "galois", "trivial:group:C4"]);
    ensure(code == 1 && out.contains("kernel vector"), || format!("galois: exit {code}\n{out}"))?;
    let (code, _) = cli(&["check", "hopf", "no:such:thing"]);
    ensure(code == 2, || format!("unknown name gives exit {code}"))?;
    std::fs::write(p("junk.json"), "{\"format\": 1}").unwrap();
    let (code, _) = cli(&["check", "hopf", &s("junk.json")]);
    ensure(code == 2, || format!("malformed file gives exit {code}"))?;
    let (code, _) = cli(&["verify", "thm9.9"]);
    ensure(code == 2, || format!("unknown theorem gives exit {code}"))?;
    Ok(format!("{} checkers fail with printed witnesses; exit codes 0/1/2 as specified", cases.len() + 1))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("axiom suite", axiom_suite),
        ("monoid suite", monoid_suite),
        ("right/left twisting correspondence", correspondence),
        ("crossed coproduct bijection", crossed_bijection),
        ("cocycle lift/restrict and induced twisting", cocycle_suite),
        ("equivalence suite", equivalence_suite),
        ("Galois suite", galois_suite),
        ("negative controls and exit codes", negative_controls),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let result = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {} PASS {name} ({secs:.2}s): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} FAIL {name} ({secs:.2}s): {}", i + 1, why.lines().next().unwrap_or(""));
                for line in why.lines().skip(1).take(20) {
                    println!("    {line}");
                }
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
