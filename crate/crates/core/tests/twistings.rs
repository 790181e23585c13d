use cotwist::catalog::{self, Builtin};
use cotwist::crossed::{crossed_from_twisting, HarrisonCocycle};
use cotwist::twisting::{
    left_of, normalized_left, normalized_right, right_of, sigma, sigma_prime, star, times, twist_coalgebra,
    LeftTwist, RightTwist,
};
use cotwist::{FieldSpec, LinMap, ModuleCoalgebra};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const F5: FieldSpec = FieldSpec::Prime(5);

fn module_coalgebras(f: FieldSpec) -> Vec<(String, ModuleCoalgebra)> {
    catalog::names()
        .into_iter()
        .filter_map(|n| match catalog::builtin(&n, f).unwrap() {
            Builtin::ModuleCoalgebra(mc) => Some((n, mc)),
            _ => None,
        })
        .collect()
}

fn random_maps(mc: &ModuleCoalgebra, seed: u64) -> ([LinMap; 3], [LinMap; 3]) {
    let f = mc.space().field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coeff = || f.from_i64(rng.gen_range(-2..=2));
    let r = [(); 3].map(|_| normalized_right(mc, &mut coeff).unwrap());
    let l = [(); 3].map(|_| normalized_left(mc, &mut coeff).unwrap());
    (r, l)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn star_and_times_are_unital_and_associative(seed in any::<u64>()) {
        for (name, mc) in module_coalgebras(F5) {
            let ([a, b, c], [x, y, z]) = random_maps(&mc, seed);
            let s = sigma(&mc);
            prop_assert_eq!(&star(&mc, &s, &a).unwrap(), &a, "{}: σ∗τ", name);
            prop_assert_eq!(&star(&mc, &a, &s).unwrap(), &a, "{}: τ∗σ", name);
            let ab_c = star(&mc, &star(&mc, &a, &b).unwrap(), &c).unwrap();
            let a_bc = star(&mc, &a, &star(&mc, &b, &c).unwrap()).unwrap();
            prop_assert_eq!(ab_c, a_bc, "{}: ∗ associativity", name);
            let s2 = sigma_prime(&mc);
            prop_assert_eq!(&times(&mc, &s2, &x).unwrap(), &x, "{}: σ′×γ", name);
            prop_assert_eq!(&times(&mc, &x, &s2).unwrap(), &x, "{}: γ×σ′", name);
            let xy_z = times(&mc, &times(&mc, &x, &y).unwrap(), &z).unwrap();
            let x_yz = times(&mc, &x, &times(&mc, &y, &z).unwrap()).unwrap();
            prop_assert_eq!(xy_z, x_yz, "{}: × associativity", name);
        }
    }
}

#[test]
fn products_stay_normalized() {
    let (_, mc) = module_coalgebras(FieldSpec::Rationals).into_iter().find(|(n, _)| n == "regular:sweedler:H4").unwrap();
    let ([a, b, _], _) = random_maps(&mc, 7);
    let ab = star(&mc, &a, &b).unwrap();
    let h = mc.h();
    let eps_h = h.eps().kron(&LinMap::identity(mc.space())).unwrap();
    assert_eq!(eps_h.compose(&ab).unwrap(), LinMap::identity(mc.space()));
}

/// σ together with every catalog cocycle twisting and its inverse on `C^τ`.
fn invertible_corpus(f: FieldSpec) -> Vec<RightTwist> {
    let mut out = Vec::new();
    for name in catalog::HARRISON_NAMES {
        let t = catalog::harrison(name, f).unwrap().to_twisting().unwrap().verified().unwrap().invertible().unwrap();
        out.push(RightTwist::sigma(t.mc()).invertible().unwrap());
        out.push(t.inverse_twist().unwrap());
        out.push(t);
    }
    out
}

#[test]
fn left_and_right_twistings_correspond_bijectively() {
    for f in [FieldSpec::Rationals, F5] {
        for t in invertible_corpus(f) {
            let mc = t.mc();
            let l = left_of(&t).unwrap();
            assert!(l.is_twisting(), "{}", l.report());
            let back = right_of(&l).unwrap();
            assert_eq!(back.map(), t.map());
            assert_eq!(left_of(&back).unwrap().map(), l.map());
            if t.map() == &sigma(mc) {
                assert_eq!(l.map(), &sigma_prime(mc));
            }
        }
    }
    let mc = ModuleCoalgebra::regular(std::sync::Arc::new(catalog::sweedler(F5).unwrap()));
    let sp = LeftTwist::sigma_prime(&mc).invertible().unwrap();
    assert_eq!(right_of(&sp).unwrap().map(), &sigma(&mc));
}

#[test]
fn nontrivial_cocycles_give_nontrivial_twistings() {
    for name in ["harrison:C2-sign", "harrison:H4-twist"] {
        let t = catalog::harrison(name, FieldSpec::Rationals).unwrap().to_twisting().unwrap();
        assert!(t.is_twisting(), "{}", t.report());
        assert_ne!(t.map(), &sigma(t.mc()), "{name}");
    }
}

/// `Δ_τ(c) = c₁·τ(c₂)₋₁ ⊗ τ(c₂)₀` by explicit index loops over structure
/// constants.
fn twisted_delta_by_loops(mc: &ModuleCoalgebra, t: &LinMap) -> Vec<Vec<String>> {
    let f = mc.space().field();
    let (n, dh) = (mc.space().dim(), mc.h().dim());
    let mut out = vec![vec![f.zero(); n]; n * n];
    for j in 0..n {
        for a in 0..n {
            for b in 0..n {
                let d = mc.delta().entry(a * n + b, j);
                if f.is_zero(&d) {
                    continue;
                }
                for h in 0..dh {
                    for c2 in 0..n {
                        let tv = t.entry(h * n + c2, b);
                        if f.is_zero(&tv) {
                            continue;
                        }
                        for i in 0..n {
                            let av = mc.act().entry(i, a * dh + h);
                            let term = f.mul(&f.mul(&d, &tv), &av);
                            out[i * n + c2][j] = f.add(&out[i * n + c2][j], &term);
                        }
                    }
                }
            }
        }
    }
    out.iter().map(|r| r.iter().map(|s| f.format_scalar(s)).collect()).collect()
}

fn rows(m: &LinMap) -> Vec<Vec<String>> {
    let f = m.field();
    m.to_rows().iter().map(|r| r.iter().map(|s| f.format_scalar(s)).collect()).collect()
}

#[test]
fn crossed_coproduct_is_the_twisted_tensor_coalgebra() {
    for f in [FieldSpec::Rationals, F5] {
        let mut cases: Vec<HarrisonCocycle> = catalog::HARRISON_NAMES.iter().map(|n| catalog::harrison(n, f).unwrap()).collect();
        let sign = cases[0].clone();
        cases.push(HarrisonCocycle::trivial(sign.coalgebra().clone(), sign.hopf().clone()).unwrap());
        for hc in cases {
            let t = hc.to_twisting().unwrap();
            let crossed = hc.build_crossed().unwrap();
            let twisted = twist_coalgebra(&t, false).unwrap();
            assert_eq!(crossed.delta(), twisted.delta());
            assert_eq!(rows(crossed.delta()), twisted_delta_by_loops(t.mc(), t.map()));
            let back = crossed_from_twisting(hc.coalgebra(), &t).unwrap();
            assert_eq!(back.rho(), hc.rho());
            assert_eq!(back.alpha(), hc.alpha());
            assert_eq!(back.to_twisting().unwrap().map(), t.map());
        }
    }
}

#[test]
fn trivial_cocycle_gives_the_tensor_coalgebra() {
    let sign = catalog::harrison("harrison:C2-sign", FieldSpec::Rationals).unwrap();
    let hc = HarrisonCocycle::trivial(sign.coalgebra().clone(), sign.hopf().clone()).unwrap();
    let crossed = hc.build_crossed().unwrap();
    assert_eq!(crossed.delta(), sign.h().delta());
    assert_eq!(hc.to_twisting().unwrap().map(), &sigma(&ModuleCoalgebra::regular(sign.hopf().clone())));
}

#[test]
fn sign_cocycle_deforms_the_dual_group_comultiplication() {
    // Δ(e₁) = e₀⊗e₁ + e₁⊗e₀ untwisted; the sign cocycle flips the e₁ ⊗ e₁
    // contributions: Δ_α(eₐ) = Σ (−1)^{b(a−b)} e_b ⊗ e_{a−b}.
    let f = FieldSpec::Rationals;
    let hc = catalog::harrison("harrison:C2-sign", f).unwrap();
    let crossed = hc.build_crossed().unwrap();
    let d = crossed.delta();
    // e₀ ↦ e₀⊗e₀ − e₁⊗e₁
    assert_eq!(d.entry(0, 0), f.one());
    assert_eq!(d.entry(3, 0), f.from_i64(-1));
    // e₁ ↦ e₀⊗e₁ + e₁⊗e₀
    assert_eq!(d.entry(1, 1), f.one());
    assert_eq!(d.entry(2, 1), f.one());
}

#[test]
fn corrupted_twisting_fails_with_witness() {
    let t = catalog::harrison("harrison:H4-twist", FieldSpec::Rationals).unwrap().to_twisting().unwrap();
    let f = FieldSpec::Rationals;
    let mut r = t.map().to_rows();
    r[5][1] = f.add(&r[5][1], &f.one());
    let bad = LinMap::from_rows(t.map().domain().clone(), t.map().codomain().clone(), &r).unwrap();
    let bad = RightTwist::new(t.mc().clone(), bad).unwrap();
    assert!(!bad.is_twisting());
    assert!(bad.report().failures().any(|e| e.witness.is_some()), "{}", bad.report());
    assert!(twist_coalgebra(&bad, false).is_err());
}
