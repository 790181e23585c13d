//! String-diagram style evaluation on tensor legs.
//!
//! A [`Wiring`] tracks a map `X → L₀ ⊗ L₁ ⊗ … ⊗ Lₙ₋₁` together with the leg
//! decomposition of its codomain. Structure maps are applied to contiguous
//! runs of legs and legs can be permuted; this realizes `id ⊗ f ⊗ id`
//! without materializing the Kronecker product.
//!
//! ```
//! # use cotwist::{FieldSpec, Space, LinMap, Wiring};
//! let f = FieldSpec::Rationals;
//! let a = Space::new("A", f, ["a0", "a1"]).unwrap();
//! let b = Space::new("B", f, ["b0"]).unwrap();
//! let swapped = Wiring::new(&[&a, &b]).permute(&[1, 0]).unwrap().finish();
//! assert_eq!(swapped, LinMap::swap(&a, &b).unwrap());
//! ```

use crate::error::{Error, Result};
use crate::linmap::{normalize, LinMap, SparseVec};
use crate::scalar::FieldSpec;
use crate::space::Space;

#[derive(Clone, Debug)]
pub struct Wiring {
    field: FieldSpec,
    dom: Space,
    legs: Vec<Space>,
    cols: Vec<SparseVec>,
}

impl Wiring {
    /// The identity on `legs[0] ⊗ … ⊗ legs[n-1]`.
    pub fn new(legs: &[&Space]) -> Self {
        let field = legs.first().map(|s| s.field()).unwrap_or(crate::scalar::FieldSpec::Rationals);
        let dom = Space::tensor_all(field, legs).expect("legs share a field");
        let id = LinMap::identity(&dom);
        Wiring {
            field,
            dom,
            legs: legs.iter().map(|s| (*s).clone()).collect(),
            cols: id.columns().to_vec(),
        }
    }

    /// Identity on the ground field (no legs) for the given field.
    pub fn ground(field: FieldSpec) -> Self {
        let dom = Space::ground(field);
        Wiring { field, dom, legs: Vec::new(), cols: vec![vec![(0, field.one())]] }
    }

    /// Starts from `f`, splitting its codomain into `legs`.
    pub fn from_map(f: &LinMap, legs: &[&Space]) -> Result<Self> {
        let cod = Space::tensor_all(f.field(), legs)?;
        f.codomain().ensure_eq(&cod, "wiring start")?;
        Ok(Wiring {
            field: f.field(),
            dom: f.domain().clone(),
            legs: legs.iter().map(|s| (*s).clone()).collect(),
            cols: f.columns().to_vec(),
        })
    }

    pub fn legs(&self) -> &[Space] {
        &self.legs
    }

    fn dims(&self) -> Vec<usize> {
        self.legs.iter().map(|s| s.dim()).collect()
    }

    /// Replaces legs `at..at+consumes` by the legs `produces` through `f`.
    pub fn apply(mut self, at: usize, consumes: usize, f: &LinMap, produces: &[&Space]) -> Result<Self> {
        if at + consumes > self.legs.len() {
            return Err(Error::Shape(format!(
                "cannot apply map to legs {at}..{} of {} legs",
                at + consumes,
                self.legs.len()
            )));
        }
        let input = Space::tensor_all(self.field, &self.legs[at..at + consumes].iter().collect::<Vec<_>>())?;
        f.domain().ensure_eq(&input, "wiring input")?;
        let output = Space::tensor_all(self.field, produces)?;
        f.codomain().ensure_eq(&output, "wiring output")?;
        let dims = self.dims();
        let right: usize = dims[at + consumes..].iter().product();
        let mid = input.dim();
        let out = output.dim();
        let field = self.field;
        let block = mid * right;
        for col in self.cols.iter_mut() {
            if block == 0 || col.is_empty() {
                col.clear();
                continue;
            }
            let mut acc = Vec::with_capacity(col.len() * 2);
            for (idx, c) in col.iter() {
                let idx = *idx as usize;
                let (l, rest) = (idx / block, idx % block);
                let (m, r) = (rest / right, rest % right);
                for (o, v) in f.column(m) {
                    let new = (l * out + *o as usize) * right + r;
                    acc.push((new as u32, field.mul(c, v)));
                }
            }
            *col = normalize(field, acc);
        }
        let tail = self.legs.split_off(at + consumes);
        self.legs.truncate(at);
        self.legs.extend(produces.iter().map(|s| (*s).clone()));
        self.legs.extend(tail);
        Ok(self)
    }

    /// Applies an endomorphism-shaped map `L → L'` to the single leg `at`.
    pub fn map(self, at: usize, f: &LinMap) -> Result<Self> {
        let cod = f.codomain().clone();
        self.apply(at, 1, f, &[&cod])
    }

    /// Inserts a map from the ground field (e.g. a unit) as new legs at `at`.
    pub fn insert(self, at: usize, f: &LinMap, produces: &[&Space]) -> Result<Self> {
        self.apply(at, 0, f, produces)
    }

    /// Reorders legs: new leg `k` is old leg `order[k]`.
    pub fn permute(mut self, order: &[usize]) -> Result<Self> {
        let n = self.legs.len();
        let mut seen = vec![false; n];
        if order.len() != n || order.iter().any(|&o| o >= n || std::mem::replace(&mut seen[o], true)) {
            return Err(Error::Shape(format!("{order:?} is not a permutation of {n} legs")));
        }
        let dims = self.dims();
        let new_dims: Vec<usize> = order.iter().map(|&o| dims[o]).collect();
        // stride of each old leg inside the new index
        let mut new_stride = vec![0usize; n];
        let mut s = 1;
        for k in (0..n).rev() {
            new_stride[order[k]] = s;
            s *= new_dims[k];
        }
        let field = self.field;
        for col in self.cols.iter_mut() {
            let mut moved: Vec<(u32, _)> = col
                .drain(..)
                .map(|(idx, c)| {
                    let mut idx = idx as usize;
                    let mut new = 0;
                    for k in (0..n).rev() {
                        new += (idx % dims[k]) * new_stride[k];
                        idx /= dims[k];
                    }
                    (new as u32, c)
                })
                .collect();
            moved.sort_unstable_by_key(|(i, _)| *i);
            *col = normalize(field, moved);
        }
        self.legs = order.iter().map(|&o| self.legs[o].clone()).collect();
        Ok(self)
    }

    pub fn finish(self) -> LinMap {
        let cod = Space::tensor_all(self.field, &self.legs.iter().collect::<Vec<_>>()).expect("legs share a field");
        LinMap::from_normalized(self.dom, cod, self.cols)
    }
}
