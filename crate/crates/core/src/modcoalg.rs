//! Right H-module coalgebras, relative Hopf modules, the quotient
//! coalgebra `B = C/CH⁺` and the cotensor square `C □_B C`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hopf::{Coalgebra, HopfAlgebra};
use crate::linalg;
use crate::linmap::LinMap;
use crate::report::CheckReport;
use crate::space::Space;
use crate::wiring::Wiring;

/// A coalgebra `C` with a right `H`-action `C ⊗ H → C`.
#[derive(Clone, Debug)]
pub struct ModuleCoalgebra {
    coalgebra: Coalgebra,
    hopf: Arc<HopfAlgebra>,
    act: LinMap,
}

impl ModuleCoalgebra {
    pub fn new(coalgebra: Coalgebra, hopf: Arc<HopfAlgebra>, act: LinMap) -> Result<Self> {
        let c = coalgebra.space();
        act.domain().ensure_eq(&c.tensor(hopf.space())?, "action domain")?;
        act.codomain().ensure_eq(c, "action codomain")?;
        Ok(ModuleCoalgebra { coalgebra, hopf, act })
    }

    /// `H` acting on itself by right multiplication.
    pub fn regular(hopf: Arc<HopfAlgebra>) -> Self {
        let act = hopf.mult().clone();
        ModuleCoalgebra { coalgebra: hopf.coalgebra().clone(), hopf, act }
    }

    /// The ground field with `1·h = ε(h)1`.
    pub fn trivial(hopf: Arc<HopfAlgebra>) -> Self {
        let act = hopf.eps().clone();
        ModuleCoalgebra { coalgebra: Coalgebra::ground(hopf.field()), hopf, act }
    }

    pub fn space(&self) -> &Space {
        self.coalgebra.space()
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

    pub fn act(&self) -> &LinMap {
        &self.act
    }

    pub fn delta(&self) -> &LinMap {
        self.coalgebra.delta()
    }

    pub fn eps(&self) -> &LinMap {
        self.coalgebra.eps()
    }

    /// Same action, new comultiplication.
    pub fn with_delta(&self, delta: LinMap) -> Result<Self> {
        ModuleCoalgebra::new(self.coalgebra.with_delta(delta)?, self.hopf.clone(), self.act.clone())
    }

    pub fn with_act(&self, act: LinMap) -> Result<Self> {
        ModuleCoalgebra::new(self.coalgebra.clone(), self.hopf.clone(), act)
    }

    /// `C` and `H` with the same carrier and field as `other`.
    pub fn ensure_same_context(&self, other: &ModuleCoalgebra, context: &str) -> Result<()> {
        self.space().ensure_eq(other.space(), context)?;
        self.h().space().ensure_eq(other.h().space(), context)
    }

    pub fn check(&self) -> CheckReport {
        let mut r = CheckReport::new(format!("module coalgebra {} over {}", self.space().name(), self.h().name()));
        self.coalgebra.check_into(&mut r);
        let (c, h) = (self.space(), self.h().space());
        let lhs = Wiring::new(&[c, h]).act(0, self).and_then(|w| w.delta(0, &self.coalgebra)).map(Wiring::finish);
        let rhs = Wiring::new(&[c, h])
            .delta(0, &self.coalgebra)
            .and_then(|w| w.delta(2, self.h()))
            .and_then(|w| w.permute(&[0, 2, 1, 3]))
            .and_then(|w| w.act(0, self))
            .and_then(|w| w.act(1, self))
            .map(Wiring::finish);
        record(&mut r, "delta compatibility", lhs, rhs);
        record(
            &mut r,
            "eps compatibility",
            self.eps().compose(&self.act),
            self.eps().kron(self.h().eps()),
        );
        record(
            &mut r,
            "unit acts trivially",
            Wiring::new(&[c]).unit(1, self.h()).and_then(|w| w.act(0, self)).map(Wiring::finish),
            Ok(LinMap::identity(c)),
        );
        record(
            &mut r,
            "action associativity",
            Wiring::new(&[c, h, h]).act(0, self).and_then(|w| w.act(0, self)).map(Wiring::finish),
            Wiring::new(&[c, h, h]).mult(1, self.h()).and_then(|w| w.act(0, self)).map(Wiring::finish),
        );
        r
    }

    /// Returns `self` when every axiom holds.
    pub fn verified(self) -> Result<Self> {
        let r = self.check();
        if r.passed() {
            Ok(self)
        } else {
            Err(Error::Shape(r.failure_summary()))
        }
    }
}

pub(crate) fn record(r: &mut CheckReport, name: &str, lhs: Result<LinMap>, rhs: Result<LinMap>) -> bool {
    match (lhs, rhs) {
        (Ok(l), Ok(rr)) => r.check_maps(name, &l, &rr),
        (Err(e), _) | (_, Err(e)) => r.check(name, false, Some(e.to_string())),
    }
}

impl Wiring {
    /// Applies the right action of `mc` to legs `at, at+1`.
    pub fn act(self, at: usize, mc: &ModuleCoalgebra) -> Result<Self> {
        let c = mc.space().clone();
        self.apply(at, 2, &mc.act, &[&c])
    }
}

/// Which side the comodule structure lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `ρ : M → M ⊗ C`
    Right,
    /// `ρ : M → C ⊗ M`
    Left,
}

/// A right `H`-module that is a `C`-comodule compatibly with the actions.
#[derive(Clone, Debug)]
pub struct RelHopfModule {
    pub mc: ModuleCoalgebra,
    pub space: Space,
    pub act: LinMap,
    pub coact: LinMap,
    pub side: Side,
}

impl RelHopfModule {
    pub fn new(mc: ModuleCoalgebra, act: LinMap, coact: LinMap, side: Side) -> Result<Self> {
        let space = coact.domain().clone();
        let (c, h) = (mc.space(), mc.h().space());
        act.domain().ensure_eq(&space.tensor(h)?, "module action domain")?;
        act.codomain().ensure_eq(&space, "module action codomain")?;
        let expected = match side {
            Side::Right => space.tensor(c)?,
            Side::Left => c.tensor(&space)?,
        };
        coact.codomain().ensure_eq(&expected, "coaction codomain")?;
        Ok(RelHopfModule { mc, space, act, coact, side })
    }

    /// `C` itself, with `Δ` as coaction on the chosen side.
    pub fn of_coalgebra(mc: &ModuleCoalgebra, side: Side) -> Self {
        RelHopfModule {
            mc: mc.clone(),
            space: mc.space().clone(),
            act: mc.act().clone(),
            coact: mc.delta().clone(),
            side,
        }
    }

    pub fn check(&self) -> CheckReport {
        let mc = &self.mc;
        let (m, c, h) = (&self.space, mc.space(), mc.h().space());
        let mut r = CheckReport::new(format!("relative Hopf module {}", m.name()));
        let act = |w: Wiring, at: usize| w.apply(at, 2, &self.act, &[m]);
        let coact = |w: Wiring, at: usize| match self.side {
            Side::Right => w.apply(at, 1, &self.coact, &[m, c]),
            Side::Left => w.apply(at, 1, &self.coact, &[c, m]),
        };
        record(
            &mut r,
            "action associativity",
            act(Wiring::new(&[m, h, h]), 0).and_then(|w| act(w, 0)).map(Wiring::finish),
            Wiring::new(&[m, h, h]).mult(1, mc.h()).and_then(|w| act(w, 0)).map(Wiring::finish),
        );
        record(
            &mut r,
            "unit acts trivially",
            Wiring::new(&[m]).unit(1, mc.h()).and_then(|w| act(w, 0)).map(Wiring::finish),
            Ok(LinMap::identity(m)),
        );
        let (mpos, cpos) = match self.side {
            Side::Right => (0, 1),
            Side::Left => (1, 0),
        };
        record(
            &mut r,
            "coassociativity",
            coact(Wiring::new(&[m]), 0).and_then(|w| coact(w, mpos)).map(Wiring::finish),
            coact(Wiring::new(&[m]), 0).and_then(|w| w.delta(cpos, mc.coalgebra())).map(Wiring::finish),
        );
        record(
            &mut r,
            "counit",
            coact(Wiring::new(&[m]), 0).and_then(|w| w.eps(cpos, mc.coalgebra())).map(Wiring::finish),
            Ok(LinMap::identity(m)),
        );
        let lhs = act(Wiring::new(&[m, h]), 0).and_then(|w| coact(w, 0)).map(Wiring::finish);
        let rhs = coact(Wiring::new(&[m, h]), 0)
            .and_then(|w| w.delta(2, mc.h()))
            .and_then(|w| w.permute(&[0, 2, 1, 3]))
            .and_then(|w| match self.side {
                Side::Right => act(w, 0)?.act(1, mc),
                Side::Left => act(w.act(0, mc)?, 1),
            })
            .map(Wiring::finish);
        record(&mut r, "coaction compatibility", lhs, rhs);
        r
    }
}

/// `B = C/I` with `I = span{c·h − ε(h)c}`, presented by the non-pivot
/// coordinates of a row reduction of a spanning set of `I`.
#[derive(Clone, Debug)]
pub struct QuotientBase {
    pub b: Coalgebra,
    pub pi: LinMap,
    /// `B → C`, basis vector `[c]` to `c`.
    pub section: LinMap,
    /// `C ⊗ H → C`, `c ⊗ h ↦ c·h − ε(h)c`; its image is `I`.
    pub spanning: LinMap,
}

impl QuotientBase {
    pub fn new(mc: &ModuleCoalgebra) -> Result<Self> {
        let c = mc.space();
        let field = c.field();
        let eps_part = Wiring::new(&[c, mc.h().space()]).eps(1, mc.h())?.finish();
        let spanning = mc.act().sub(&eps_part)?;
        let rows: Vec<Vec<_>> = spanning
            .columns()
            .iter()
            .map(|col| {
                let mut row = vec![field.zero(); c.dim()];
                for (i, v) in col {
                    row[*i as usize] = v.clone();
                }
                row
            })
            .collect();
        let red = linalg::rref(field, rows, c.dim());
        let free: Vec<usize> = (0..c.dim()).filter(|j| !red.pivots.contains(j)).collect();
        let labels: Vec<String> = free.iter().map(|&j| format!("[{}]", c.label(j))).collect();
        let b_space = if free.is_empty() { Space::zero("B", field) } else { Space::new("B", field, labels)? };
        let slot = |j: usize| free.iter().position(|&f| f == j);
        let pi = LinMap::from_fn(c.clone(), b_space.clone(), |j| match slot(j) {
            Some(s) => vec![(s, field.one())],
            None => {
                let r = red.pivots.iter().position(|&p| p == j).expect("pivot column");
                free.iter()
                    .enumerate()
                    .map(|(s, &f)| (s, field.neg(&red.rows[r][f])))
                    .collect()
            }
        })?;
        let section = LinMap::from_fn(b_space.clone(), c.clone(), |s| vec![(free[s], field.one())])?;
        let pp = pi.kron(&pi)?;
        let delta_b = pp.compose(mc.delta())?.compose(&section)?;
        let eps_b = mc.eps().compose(&section)?;
        if !pp.compose(mc.delta())?.compose(&spanning)?.is_zero() {
            return Err(Error::CoidealFailure("Δ(I) is not contained in I⊗C + C⊗I".into()));
        }
        if !mc.eps().compose(&spanning)?.is_zero() {
            return Err(Error::CoidealFailure("ε(I) ≠ 0".into()));
        }
        let b = Coalgebra::new(delta_b, eps_b)?;
        Ok(QuotientBase { b, pi, section, spanning })
    }

    pub fn space(&self) -> &Space {
        self.b.space()
    }

    pub fn dim(&self) -> usize {
        self.space().dim()
    }

    /// `π` is a surjective coalgebra map and the action descends trivially.
    pub fn check(&self, mc: &ModuleCoalgebra) -> CheckReport {
        let mut r = CheckReport::new("quotient coalgebra B = C/CH⁺");
        self.b.check_into(&mut r);
        record(
            &mut r,
            "pi comultiplicative",
            self.b.delta().compose(&self.pi),
            self.pi.kron(&self.pi).and_then(|pp| pp.compose(mc.delta())),
        );
        record(&mut r, "pi counital", self.b.eps().compose(&self.pi), Ok(mc.eps().clone()));
        record(&mut r, "pi section", self.pi.compose(&self.section), Ok(LinMap::identity(self.space())));
        let trivial = Wiring::new(&[mc.space(), mc.h().space()])
            .eps(1, mc.h())
            .map(Wiring::finish)
            .and_then(|m| self.pi.compose(&m));
        record(&mut r, "action descends trivially", self.pi.compose(mc.act()), trivial);
        r
    }
}

/// The cotensor square `W = C □_B C ⊆ C ⊗ C`.
#[derive(Clone, Debug)]
pub struct CotensorSquare {
    pub incl: LinMap,
    /// Position in `C ⊗ C` of each `W` basis vector's leading coordinate;
    /// restricting to these positions gives `W`-coordinates.
    pub free: Vec<usize>,
}

impl CotensorSquare {
    pub fn new(mc: &ModuleCoalgebra, q: &QuotientBase) -> Result<Self> {
        let c = mc.space();
        let left = Wiring::new(&[c, c]).delta(0, mc.coalgebra())?.map(1, &q.pi)?.finish();
        let right = Wiring::new(&[c, c]).delta(1, mc.coalgebra())?.map(1, &q.pi)?.finish();
        let (incl, free) = linalg::kernel_inclusion(&left.sub(&right)?, "W")?;
        Ok(CotensorSquare { incl, free })
    }

    pub fn space(&self) -> &Space {
        self.incl.domain()
    }

    pub fn dim(&self) -> usize {
        self.space().dim()
    }

    /// `W`-coordinates of the columns of `m : X → C ⊗ C`, or
    /// `OutsideCotensor` when some column is not in `W`.
    pub fn coordinates(&self, m: &LinMap) -> Result<LinMap> {
        m.codomain().ensure_eq(self.incl.codomain(), "cotensor coordinates")?;
        let w = self.space().clone();
        let coords = LinMap::from_fn(m.domain().clone(), w, |j| {
            let col = m.column(j);
            self.free
                .iter()
                .enumerate()
                .filter_map(|(s, &p)| col.iter().find(|(i, _)| *i as usize == p).map(|(_, v)| (s, v.clone())))
                .collect()
        })?;
        if self.incl.compose(&coords)? != *m {
            return Err(Error::OutsideCotensor);
        }
        Ok(coords)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::scalar::FieldSpec;

    #[test]
    fn regular_and_trivial_pass() {
        for f in [FieldSpec::Rationals, FieldSpec::Prime(5)] {
            let h = Arc::new(catalog::sweedler(f).unwrap());
            assert!(ModuleCoalgebra::regular(h.clone()).check().passed());
            assert!(ModuleCoalgebra::trivial(h).check().passed());
        }
    }

    #[test]
    fn antipode_twisted_action_fails_delta_compatibility() {
        let h = Arc::new(catalog::sweedler(FieldSpec::Rationals).unwrap());
        let act = Wiring::new(&[h.space(), h.space()]).map(1, h.antipode()).unwrap().mult(0, &*h).unwrap().finish();
        let mc = ModuleCoalgebra::regular(h).with_act(act).unwrap();
        let r = mc.check();
        let e = r.entry("delta compatibility").unwrap();
        assert!(!e.passed);
        assert!(e.witness.is_some());
    }

    #[test]
    fn quotient_of_regular_is_one_dimensional() {
        for name in ["group:C2", "group:C4", "dualgroup:C2", "sweedler:H4"] {
            let h = Arc::new(catalog::hopf(name, FieldSpec::Rationals).unwrap());
            let mc = ModuleCoalgebra::regular(h.clone());
            let q = QuotientBase::new(&mc).unwrap();
            assert_eq!(q.dim(), 1, "{name}");
            assert!(q.check(&mc).passed());
            // π is ε up to scaling of the single basis vector
            let scaled = q.pi.compose(&h.unit().compose(h.eps()).unwrap()).unwrap();
            assert_eq!(scaled, q.pi);
            let w = CotensorSquare::new(&mc, &q).unwrap();
            assert_eq!(w.dim(), h.dim() * h.dim());
        }
    }

    #[test]
    fn trivial_action_keeps_c() {
        let h = Arc::new(catalog::group_algebra(FieldSpec::Rationals, 2).unwrap());
        let mc = ModuleCoalgebra::trivial(h);
        let q = QuotientBase::new(&mc).unwrap();
        assert_eq!(q.dim(), 1);
        assert_eq!(q.pi.to_rows(), vec![vec![mc.space().field().one()]]);
    }

    #[test]
    fn cotensor_of_trivially_acted_group_coalgebra_is_diagonal() {
        // C = kC2 as a coalgebra with the trivial kC2-action c·h = ε(h)c: B = C
        let h = Arc::new(catalog::group_algebra(FieldSpec::Rationals, 2).unwrap());
        let act = Wiring::new(&[h.space(), h.space()]).eps(1, &*h).unwrap().finish();
        let mc = ModuleCoalgebra::regular(h).with_act(act).unwrap();
        assert!(mc.check().passed());
        let q = QuotientBase::new(&mc).unwrap();
        assert_eq!(q.dim(), 2);
        let w = CotensorSquare::new(&mc, &q).unwrap();
        assert_eq!(w.dim(), 2);
        let coords = w.coordinates(mc.delta()).unwrap();
        assert_eq!(linalg::rank(&coords), 2);
    }

    #[test]
    fn comodule_of_coalgebra_itself() {
        let h = Arc::new(catalog::sweedler(FieldSpec::Rationals).unwrap());
        let mc = ModuleCoalgebra::regular(h);
        for side in [Side::Right, Side::Left] {
            let m = RelHopfModule::of_coalgebra(&mc, side);
            assert!(m.check().passed(), "{}", m.check());
        }
        let mut bad = RelHopfModule::of_coalgebra(&mc, Side::Right);
        bad.coact = bad.coact.scale(&FieldSpec::Rationals.from_i64(2));
        assert!(!bad.check().passed());
    }
}
