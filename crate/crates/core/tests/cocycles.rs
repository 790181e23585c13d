use cotwist::catalog;
use cotwist::cocycle::{restrict, TrivialHarrison, TwistedCocycle, TH_SYMMETRY};
use cotwist::crossed::tensor_module;
use cotwist::twisting::sigma;
use cotwist::{FieldSpec, LinMap};

fn fields() -> [FieldSpec; 2] {
    [FieldSpec::Rationals, FieldSpec::prime(5).unwrap()]
}

#[test]
fn catalog_cocycles_lift_and_restrict_exactly() {
    for f in fields() {
        for name in catalog::HARRISON_NAMES {
            let hc = catalog::harrison(name, f).unwrap();
            let th = TrivialHarrison::from_harrison(&hc).unwrap();
            assert!(th.is_cocycle(), "{name}: {}", th.report());
            let lifted = th.lift().unwrap();
            assert!(lifted.is_cocycle(), "{name}: {}", lifted.report());
            let back = restrict(th.coalgebra(), &lifted).unwrap();
            assert_eq!(back.alpha(), th.alpha(), "{name}");
            let again = back.lift().unwrap();
            assert_eq!(again.alpha(), lifted.alpha(), "{name}");
        }
    }
}

#[test]
fn induced_twisting_matches_crossed_twisting() {
    for f in fields() {
        for name in catalog::HARRISON_NAMES {
            let hc = catalog::harrison(name, f).unwrap();
            let lifted = TrivialHarrison::from_harrison(&hc).unwrap().lift().unwrap();
            let t = lifted.to_twisting().unwrap();
            assert!(t.is_twisting(), "{name}: {}", t.report());
            let direct = hc.to_twisting().unwrap();
            assert_eq!(t.map(), direct.map(), "{name}");
        }
    }
}

#[test]
fn sign_cocycle_gives_nontrivial_twisting() {
    let hc = catalog::harrison("harrison:C2-sign", FieldSpec::Rationals).unwrap();
    let t = TrivialHarrison::from_harrison(&hc).unwrap().lift().unwrap().to_twisting().unwrap();
    assert_ne!(t.map(), &sigma(t.mc()));
}

#[test]
fn noncommutative_order_breaks_symmetry() {
    // C = H4 as a coalgebra; α(c) = ε(c)1⊗1 + (coefficient of x in c)·(g⊗x),
    // which sees c₁ and c₂ differently because Δx = x⊗1 + g⊗x.
    let f = FieldSpec::Rationals;
    let h = std::sync::Arc::new(catalog::sweedler(f).unwrap());
    let hh = h.space().tensor(h.space()).unwrap();
    let base = TrivialHarrison::new(h.coalgebra().clone(), h.clone(), {
        let unit_counit = h.unit().kron(h.unit()).unwrap();
        unit_counit.compose(h.eps()).unwrap()
    })
    .unwrap();
    assert!(base.is_cocycle(), "{}", base.report());
    let bump = LinMap::from_fn(h.space().clone(), hh, |j| if j == 2 { vec![(4 + 2, f.one())] } else { vec![] }).unwrap();
    let bad = base.with_alpha(base.alpha().add(&bump).unwrap()).unwrap();
    assert_eq!(bad.report().outcome(TH_SYMMETRY), Some(false), "{}", bad.report());
}

#[test]
fn trivial_cocycle_on_tensor_module_is_sigma() {
    let f = FieldSpec::Rationals;
    let h = std::sync::Arc::new(catalog::group_algebra(f, 4).unwrap());
    let mc = tensor_module(h.coalgebra(), h.clone()).unwrap();
    let tc = TwistedCocycle::trivial(mc).unwrap();
    let t = tc.to_twisting().unwrap();
    assert_eq!(t.map(), &sigma(t.mc()));
}
