//! Coalgebras, algebras and Hopf algebras given by structure-constant
//! matrices, and the convolution algebra `Hom(C, A)`.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::linalg;
use crate::linmap::LinMap;
use crate::report::CheckReport;
use crate::scalar::FieldSpec;
use crate::space::Space;
use crate::wiring::Wiring;

#[derive(Clone, Debug)]
pub struct Coalgebra {
    space: Space,
    delta: LinMap,
    eps: LinMap,
}

#[derive(Clone, Debug)]
pub struct Algebra {
    space: Space,
    mult: LinMap,
    unit: LinMap,
}

/// A Hopf algebra with its antipode and, when the antipode is bijective,
/// its composition inverse `S̄`.
#[derive(Debug)]
pub struct HopfAlgebra {
    name: String,
    algebra: Algebra,
    coalgebra: Coalgebra,
    antipode: LinMap,
    antipode_inv: Option<LinMap>,
    report: OnceLock<CheckReport>,
}

impl Coalgebra {
    pub fn new(delta: LinMap, eps: LinMap) -> Result<Self> {
        let space = delta.domain().clone();
        delta.codomain().ensure_eq(&space.tensor(&space)?, "comultiplication codomain")?;
        eps.domain().ensure_eq(&space, "counit domain")?;
        eps.codomain().ensure_eq(&Space::ground(space.field()), "counit codomain")?;
        Ok(Coalgebra { space, delta, eps })
    }

    /// The ground field as a coalgebra: `Δ(1) = 1 ⊗ 1`, `ε(1) = 1`.
    pub fn ground(field: FieldSpec) -> Self {
        let k = Space::ground(field);
        Coalgebra { space: k.clone(), delta: LinMap::identity(&k), eps: LinMap::identity(&k) }
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn delta(&self) -> &LinMap {
        &self.delta
    }

    pub fn eps(&self) -> &LinMap {
        &self.eps
    }

    pub fn field(&self) -> FieldSpec {
        self.space.field()
    }

    /// Same space, new comultiplication (counit kept).
    pub fn with_delta(&self, delta: LinMap) -> Result<Self> {
        Coalgebra::new(delta, self.eps.clone())
    }

    pub fn with_eps(&self, eps: LinMap) -> Result<Self> {
        Coalgebra::new(self.delta.clone(), eps)
    }

    /// Tensor product coalgebra `C ⊗ D` with `Δ(c⊗d) = c₁⊗d₁⊗c₂⊗d₂`.
    pub fn tensor(&self, other: &Coalgebra) -> Result<Coalgebra> {
        let (c, d) = (&self.space, &other.space);
        let delta = Wiring::new(&[c, d])
            .delta(0, self)?
            .delta(2, other)?
            .permute(&[0, 2, 1, 3])?
            .finish();
        let eps = self.eps.kron(&other.eps)?;
        Coalgebra::new(delta, eps)
    }

    /// `Δⁿ : C → C^{⊗(n+1)}`, expanding the leftmost factor each time.
    pub fn iterated_comult(&self, n: usize) -> LinMap {
        let mut w = Wiring::new(&[&self.space]);
        for _ in 0..n {
            w = w.delta(0, self).expect("comultiplication has matching legs");
        }
        w.finish()
    }

    /// Coassociativity and both counit laws.
    pub fn check(&self) -> CheckReport {
        let mut r = CheckReport::new(format!("coalgebra {}", self.space.name()));
        self.check_into(&mut r);
        r
    }

    pub(crate) fn check_into(&self, r: &mut CheckReport) {
        let c = &self.space;
        let left = Wiring::new(&[c]).delta(0, self).and_then(|w| w.delta(0, self)).map(Wiring::finish);
        let right = Wiring::new(&[c]).delta(0, self).and_then(|w| w.delta(1, self)).map(Wiring::finish);
        match (left, right) {
            (Ok(l), Ok(rr)) => r.check_maps("coassociativity", &l, &rr),
            (Err(e), _) | (_, Err(e)) => r.check("coassociativity", false, Some(e.to_string())),
        };
        let id = LinMap::identity(c);
        let lc = Wiring::new(&[c]).delta(0, self).and_then(|w| w.eps(0, self)).map(Wiring::finish);
        let rc = Wiring::new(&[c]).delta(0, self).and_then(|w| w.eps(1, self)).map(Wiring::finish);
        match lc {
            Ok(m) => r.check_maps("left counit", &m, &id),
            Err(e) => r.check("left counit", false, Some(e.to_string())),
        };
        match rc {
            Ok(m) => r.check_maps("right counit", &m, &id),
            Err(e) => r.check("right counit", false, Some(e.to_string())),
        };
    }
}

impl AsRef<Coalgebra> for Coalgebra {
    fn as_ref(&self) -> &Coalgebra {
        self
    }
}

impl Algebra {
    pub fn new(mult: LinMap, unit: LinMap) -> Result<Self> {
        let space = mult.codomain().clone();
        mult.domain().ensure_eq(&space.tensor(&space)?, "multiplication domain")?;
        unit.domain().ensure_eq(&Space::ground(space.field()), "unit domain")?;
        unit.codomain().ensure_eq(&space, "unit codomain")?;
        Ok(Algebra { space, mult, unit })
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn mult(&self) -> &LinMap {
        &self.mult
    }

    pub fn unit(&self) -> &LinMap {
        &self.unit
    }

    pub fn check(&self) -> CheckReport {
        let mut r = CheckReport::new(format!("algebra {}", self.space.name()));
        self.check_into(&mut r);
        r
    }

    pub(crate) fn check_into(&self, r: &mut CheckReport) {
        let a = &self.space;
        let run = |w: Result<Wiring>| w.map(Wiring::finish);
        let left = run(Wiring::new(&[a, a, a]).mult(0, self).and_then(|w| w.mult(0, self)));
        let right = run(Wiring::new(&[a, a, a]).mult(1, self).and_then(|w| w.mult(0, self)));
        let lu = run(Wiring::new(&[a]).unit(0, self).and_then(|w| w.mult(0, self)));
        let ru = run(Wiring::new(&[a]).unit(1, self).and_then(|w| w.mult(0, self)));
        let id = LinMap::identity(a);
        for (name, l, rr) in [
            ("associativity", left, right),
            ("left unit", lu, Ok(id.clone())),
            ("right unit", ru, Ok(id)),
        ] {
            match (l, rr) {
                (Ok(l), Ok(rr)) => r.check_maps(name, &l, &rr),
                (Err(e), _) | (_, Err(e)) => r.check(name, false, Some(e.to_string())),
            };
        }
    }
}

impl AsRef<Algebra> for Algebra {
    fn as_ref(&self) -> &Algebra {
        self
    }
}

impl HopfAlgebra {
    /// Assembles a Hopf algebra candidate. Only shapes are checked here;
    /// axioms are checked by [`HopfAlgebra::verify`]. `S̄` is computed when
    /// the antipode is bijective.
    pub fn new(
        name: &str,
        mult: LinMap,
        unit: LinMap,
        delta: LinMap,
        eps: LinMap,
        antipode: LinMap,
    ) -> Result<Self> {
        let algebra = Algebra::new(mult, unit)?;
        let coalgebra = Coalgebra::new(delta, eps)?;
        algebra.space.ensure_eq(&coalgebra.space, "algebra and coalgebra carrier")?;
        antipode.domain().ensure_eq(&algebra.space, "antipode domain")?;
        antipode.codomain().ensure_eq(&algebra.space, "antipode codomain")?;
        let antipode_inv = linalg::inverse(&antipode).ok();
        Ok(HopfAlgebra {
            name: name.to_string(),
            algebra,
            coalgebra,
            antipode,
            antipode_inv,
            report: OnceLock::new(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn space(&self) -> &Space {
        &self.algebra.space
    }

    pub fn field(&self) -> FieldSpec {
        self.space().field()
    }

    pub fn dim(&self) -> usize {
        self.space().dim()
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn coalgebra(&self) -> &Coalgebra {
        &self.coalgebra
    }

    pub fn mult(&self) -> &LinMap {
        &self.algebra.mult
    }

    pub fn unit(&self) -> &LinMap {
        &self.algebra.unit
    }

    pub fn delta(&self) -> &LinMap {
        &self.coalgebra.delta
    }

    pub fn eps(&self) -> &LinMap {
        &self.coalgebra.eps
    }

    pub fn antipode(&self) -> &LinMap {
        &self.antipode
    }

    /// `S̄`, the composition inverse of the antipode.
    pub fn antipode_inverse(&self) -> Result<&LinMap> {
        self.antipode_inv.as_ref().ok_or_else(|| Error::SNotBijective {
            rank: linalg::rank(&self.antipode),
            dim: self.dim(),
        })
    }

    /// `u ∘ ε : H → H`.
    pub fn unit_counit(&self) -> LinMap {
        self.unit().compose(self.eps()).expect("unit and counit are composable")
    }

    /// `u ∘ ε_C : C → H` for a coalgebra `C`.
    pub fn unit_counit_on(&self, c: &Coalgebra) -> LinMap {
        self.unit().compose(c.eps()).expect("unit and counit are composable")
    }

    /// Full axiom check, cached after the first call.
    pub fn verify(&self) -> &CheckReport {
        self.report.get_or_init(|| self.check_axioms())
    }

    fn check_axioms(&self) -> CheckReport {
        let h = self.space();
        let mut r = CheckReport::new(format!("hopf algebra {}", self.name));
        self.algebra.check_into(&mut r);
        self.coalgebra.check_into(&mut r);
        let run = |w: Result<Wiring>| w.map(Wiring::finish);
        let k = Space::ground(self.field());
        let pairs = [
            (
                "delta multiplicative",
                run(Wiring::new(&[h, h]).mult(0, self).and_then(|w| w.delta(0, self))),
                run(Wiring::new(&[h, h])
                    .delta(0, self)
                    .and_then(|w| w.delta(2, self))
                    .and_then(|w| w.permute(&[0, 2, 1, 3]))
                    .and_then(|w| w.mult(0, self))
                    .and_then(|w| w.mult(1, self))),
            ),
            (
                "delta unital",
                self.delta().compose(self.unit()),
                self.unit().kron(self.unit()),
            ),
            (
                "eps multiplicative",
                self.eps().compose(self.mult()),
                self.eps().kron(self.eps()),
            ),
            ("eps unital", self.eps().compose(self.unit()), Ok(LinMap::identity(&k))),
            (
                "antipode left",
                run(Wiring::new(&[h])
                    .delta(0, self)
                    .and_then(|w| w.map(0, &self.antipode))
                    .and_then(|w| w.mult(0, self))),
                Ok(self.unit_counit()),
            ),
            (
                "antipode right",
                run(Wiring::new(&[h])
                    .delta(0, self)
                    .and_then(|w| w.map(1, &self.antipode))
                    .and_then(|w| w.mult(0, self))),
                Ok(self.unit_counit()),
            ),
        ];
        for (name, l, rr) in pairs {
            match (l, rr) {
                (Ok(l), Ok(rr)) => r.check_maps(name, &l, &rr),
                (Err(e), _) | (_, Err(e)) => r.check(name, false, Some(e.to_string())),
            };
        }
        let rank = linalg::rank(&self.antipode);
        r.check(
            "antipode bijective",
            rank == self.dim(),
            (rank < self.dim()).then(|| format!("rank {rank} < {}", self.dim())),
        );
        r
    }
}

impl AsRef<Coalgebra> for HopfAlgebra {
    fn as_ref(&self) -> &Coalgebra {
        &self.coalgebra
    }
}

impl AsRef<Algebra> for HopfAlgebra {
    fn as_ref(&self) -> &Algebra {
        &self.algebra
    }
}

impl Wiring {
    pub fn delta(self, at: usize, c: &impl AsRef<Coalgebra>) -> Result<Self> {
        let c = c.as_ref();
        self.apply(at, 1, &c.delta, &[&c.space, &c.space])
    }

    /// `Δⁿ` on leg `at`, producing `n + 1` legs.
    pub fn delta_n(mut self, at: usize, c: &impl AsRef<Coalgebra>, n: usize) -> Result<Self> {
        for _ in 0..n {
            self = self.delta(at, c)?;
        }
        Ok(self)
    }

    pub fn eps(self, at: usize, c: &impl AsRef<Coalgebra>) -> Result<Self> {
        self.apply(at, 1, &c.as_ref().eps, &[])
    }

    pub fn mult(self, at: usize, a: &impl AsRef<Algebra>) -> Result<Self> {
        let a = a.as_ref();
        self.apply(at, 2, &a.mult, &[&a.space])
    }

    /// Inserts the unit `1` as a new leg at position `at`.
    pub fn unit(self, at: usize, a: &impl AsRef<Algebra>) -> Result<Self> {
        let a = a.as_ref();
        self.insert(at, &a.unit, &[&a.space])
    }
}

/// The convolution algebra `Hom(C, A)` with `f ∗ g = m ∘ (f ⊗ g) ∘ Δ`.
pub struct Convolution<'a> {
    coalgebra: &'a Coalgebra,
    algebra: &'a Algebra,
}

impl<'a> Convolution<'a> {
    pub fn new(coalgebra: &'a Coalgebra, algebra: &'a Algebra) -> Self {
        Convolution { coalgebra, algebra }
    }

    fn check_element(&self, f: &LinMap, what: &str) -> Result<()> {
        f.domain().ensure_eq(&self.coalgebra.space, &format!("convolution context ({what} domain)"))?;
        f.codomain().ensure_eq(&self.algebra.space, &format!("convolution context ({what} codomain)"))
    }

    /// `u ∘ ε`, the convolution unit.
    pub fn unit(&self) -> LinMap {
        self.algebra.unit.compose(&self.coalgebra.eps).expect("unit after counit")
    }

    pub fn convolve(&self, f: &LinMap, g: &LinMap) -> Result<LinMap> {
        self.check_element(f, "left factor")?;
        self.check_element(g, "right factor")?;
        Ok(Wiring::new(&[&self.coalgebra.space])
            .delta(0, self.coalgebra)?
            .map(0, f)?
            .map(1, g)?
            .mult(0, self.algebra)?
            .finish())
    }

    /// Solves `f ∗ g = uε` for `g` and confirms `g ∗ f = uε`.
    pub fn inverse(&self, f: &LinMap) -> Result<LinMap> {
        self.check_element(f, "element")?;
        let (c, a) = (&self.coalgebra.space, &self.algebra.space);
        let field = c.field();
        let (dc, da) = (c.dim(), a.dim());
        let hom = Space::new(
            "Hom",
            field,
            (0..dc).flat_map(|j| (0..da).map(move |i| (j, i))).map(|(j, i)| format!("{}↦{}", c.label(j), a.label(i))),
        )?;
        let vectorize = |m: &LinMap| -> Vec<(u32, crate::Scalar)> {
            m.columns()
                .iter()
                .enumerate()
                .flat_map(|(j, col)| col.iter().map(move |(i, v)| ((j * da) as u32 + i, v.clone())))
                .collect()
        };
        let mut cols = Vec::with_capacity(dc * da);
        for j in 0..dc {
            for i in 0..da {
                let e = LinMap::from_fn(c.clone(), a.clone(), |q| {
                    if q == j {
                        vec![(i, field.one())]
                    } else {
                        vec![]
                    }
                })?;
                cols.push(vectorize(&self.convolve(f, &e)?));
            }
        }
        let op = LinMap::from_columns(hom.clone(), hom.clone(), cols)?;
        let target = LinMap::from_columns(Space::ground(field), hom, vec![vectorize(&self.unit())])?;
        let sol = linalg::linear_solve(&op, &target)
            .map_err(|_| Error::NotInvertible("element is not convolution invertible".into()))?;
        let x = sol.x.column(0);
        let g = LinMap::from_fn(c.clone(), a.clone(), |q| {
            x.iter()
                .filter(|(idx, _)| *idx as usize / da == q)
                .map(|(idx, v)| (*idx as usize % da, v.clone()))
                .collect()
        })?;
        if self.convolve(&g, f)? != self.unit() {
            return Err(Error::Invariant("right convolution inverse is not a left inverse".into()));
        }
        Ok(g)
    }
}
