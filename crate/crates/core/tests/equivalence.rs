use cotwist::catalog;
use cotwist::crossed::HarrisonCocycle;
use cotwist::equivalence::{crossed_iso_from_witness, witness_from_crossed_iso, EquivWitness, WITNESS_LINEAR};
use cotwist::twisting::{star_inverse, RightTwist};
use cotwist::{FieldSpec, LinMap, Scalar, Space};

/// `u(1) = Σ coeffs[i]·hᵢ` on `C = k`.
fn element(hc: &HarrisonCocycle, coeffs: &[(usize, i64)]) -> LinMap {
    let f = hc.h().field();
    let entries: Vec<(usize, Scalar)> = coeffs.iter().map(|&(i, v)| (i, f.from_i64(v))).collect();
    LinMap::from_fn(Space::ground(f), hc.h().space().clone(), |_| entries.clone()).unwrap()
}

/// Catalog cocycles with convolution invertible gauges `u` (`ε(u) = 1`).
fn corpus(f: FieldSpec) -> Vec<(HarrisonCocycle, LinMap)> {
    let sign = catalog::harrison("harrison:C2-sign", f).unwrap();
    let h4 = catalog::harrison("harrison:H4-twist", f).unwrap();
    let u_sign = element(&sign, &[(0, 1), (1, 2)]);
    let u_x = element(&h4, &[(0, 1), (2, 1)]);
    let u_gx = element(&h4, &[(0, 1), (2, 3), (3, -1)]);
    vec![(sign, u_sign), (h4.clone(), u_x), (h4, u_gx)]
}

#[test]
fn gauge_gives_equivalent_twistings() {
    for f in [FieldSpec::Rationals, FieldSpec::prime(5).unwrap()] {
        for (hc, u) in corpus(f) {
            let gauged = hc.gauge(&u).unwrap();
            assert!(gauged.is_cocycle(), "{}", gauged.report());
            let w = witness_from_crossed_iso(&u, &gauged, &hc).unwrap();
            assert!(w.is_equivalence(), "{}", w.report());
            let (_, report) = w.psi_checked().unwrap();
            assert!(report.passed(), "{report}");
            let back = crossed_iso_from_witness(hc.coalgebra(), &w).unwrap();
            assert_eq!(back, u);
        }
    }
}

#[test]
fn sign_gauge_changes_the_twisting() {
    let (hc, u) = corpus(FieldSpec::Rationals).remove(0);
    let gauged = hc.gauge(&u).unwrap();
    assert_ne!(gauged.alpha(), hc.alpha());
    let f = FieldSpec::Rationals;
    // e₁⊗e₁ coefficient: −1/4 for u = e₀ + 2e₁
    assert_eq!(gauged.alpha().entry(3, 0), f.frac(-1, 4));
}

#[test]
fn relation_axioms_hold_constructively() {
    for (hc, u) in corpus(FieldSpec::Rationals) {
        let u2 = {
            let f = hc.h().field();
            let one = hc.h().unit().clone();
            one.add(&u.sub(&one).unwrap().scale(&f.from_i64(3))).unwrap()
        };
        let mid = hc.gauge(&u).unwrap();
        let last = mid.gauge(&u2).unwrap();
        let w1 = witness_from_crossed_iso(&u, &mid, &hc).unwrap();
        let w2 = witness_from_crossed_iso(&u2, &last, &mid).unwrap();
        let refl = EquivWitness::reflexive(w1.tau().clone()).unwrap();
        assert!(refl.is_equivalence(), "{}", refl.report());
        let sym = w1.invert().unwrap();
        assert!(sym.is_equivalence(), "{}", sym.report());
        let trans = w1.compose(&w2).unwrap();
        assert!(trans.is_equivalence(), "{}", trans.report());
        assert_eq!(trans.lambda().map(), last.to_twisting().unwrap().map());
        trans.psi_checked().unwrap();
        let round = w1.compose(&sym).unwrap();
        assert_eq!(round.v(), refl.v());
    }
}

#[test]
fn inverse_transfers_along_equivalence() {
    for (hc, u) in corpus(FieldSpec::Rationals) {
        let gauged = hc.gauge(&u).unwrap();
        let w = witness_from_crossed_iso(&u, &gauged, &hc).unwrap();
        let tau = w.tau().clone().invertible().unwrap();
        let lam = w.transfer_inverse(tau.inverse().unwrap()).unwrap();
        let direct = star_inverse(lam.mc(), lam.map()).unwrap();
        assert_eq!(lam.inverse().unwrap(), &direct);
    }
}

#[test]
fn sigma_transfers_to_sigma() {
    let h = std::sync::Arc::new(catalog::sweedler(FieldSpec::Rationals).unwrap());
    let mc = cotwist::ModuleCoalgebra::regular(h);
    let s = RightTwist::sigma(&mc);
    let w = EquivWitness::reflexive(s.clone()).unwrap();
    let lam = w.transfer_inverse(s.map()).unwrap();
    assert_eq!(lam.inverse().unwrap(), s.map());
}

#[test]
fn non_linear_witness_is_rejected() {
    let h = std::sync::Arc::new(catalog::sweedler(FieldSpec::Rationals).unwrap());
    let mc = cotwist::ModuleCoalgebra::regular(h.clone());
    let s = RightTwist::sigma(&mc);
    // v = id_H is counital but not H-linear in the conjugation sense
    let w = EquivWitness::new(s.clone(), s, LinMap::identity(h.space())).unwrap();
    assert_eq!(w.report().outcome(WITNESS_LINEAR), Some(false));
    assert!(w.report().entry(WITNESS_LINEAR).unwrap().witness.is_some());
}
