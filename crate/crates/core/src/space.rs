//! Vector spaces with labeled bases.
//!
//! A space is an ordered tensor product of atoms. The ground field `k` is the
//! empty product, so `k ⊗ V` and `V` are literally the same space. Identity
//! is structural: two spaces are equal when they share a field and the
//! flattened label sequences agree, whatever the atom names.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::FieldSpec;

pub const LABEL_SEPARATOR: &str = "⋄";

#[derive(Debug, PartialEq, Eq, Hash)]
pub struct Atom {
    pub name: String,
    pub labels: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct Space {
    field: FieldSpec,
    atoms: Arc<[Arc<Atom>]>,
    dim: usize,
}

impl Space {
    /// A single named space with the given basis labels.
    pub fn new<S: Into<String>>(name: &str, field: FieldSpec, labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::Shape(format!("duplicate basis label {l:?} in space {name}")));
            }
        }
        let dim = labels.len();
        Ok(Space {
            field,
            atoms: vec![Arc::new(Atom { name: name.to_string(), labels })].into(),
            dim,
        })
    }

    /// The ground field as a one-dimensional space, neutral for ⊗.
    pub fn ground(field: FieldSpec) -> Self {
        Space { field, atoms: Vec::new().into(), dim: 1 }
    }

    pub fn zero(name: &str, field: FieldSpec) -> Self {
        Space::new::<String>(name, field, []).expect("empty basis")
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_ground(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atoms(&self) -> &[Arc<Atom>] {
        &self.atoms
    }

    pub fn name(&self) -> String {
        if self.atoms.is_empty() {
            "k".to_string()
        } else {
            self.atoms.iter().map(|a| a.name.as_str()).collect::<Vec<_>>().join("⊗")
        }
    }

    /// Label of the `i`-th basis vector; row-major over the atoms.
    pub fn label(&self, mut i: usize) -> String {
        if self.atoms.is_empty() {
            return "1".to_string();
        }
        let mut parts = vec![""; self.atoms.len()];
        for (slot, atom) in self.atoms.iter().enumerate().rev() {
            let n = atom.labels.len();
            parts[slot] = &atom.labels[i % n];
            i /= n;
        }
        parts.join(LABEL_SEPARATOR)
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.dim).map(|i| self.label(i)).collect()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        (0..self.dim).find(|&i| self.label(i) == label)
    }

    /// `self ⊗ other`.
    pub fn tensor(&self, other: &Space) -> Result<Space> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()));
        }
        let atoms: Vec<Arc<Atom>> = self.atoms.iter().chain(other.atoms.iter()).cloned().collect();
        Ok(Space { field: self.field, atoms: atoms.into(), dim: self.dim * other.dim })
    }

    /// Tensor product of a list of spaces; the empty list gives `k`.
    pub fn tensor_all(field: FieldSpec, spaces: &[&Space]) -> Result<Space> {
        let mut acc = Space::ground(field);
        for s in spaces {
            acc = acc.tensor(s)?;
        }
        Ok(acc)
    }

    /// `self^{⊗n}`.
    pub fn power(&self, n: usize) -> Space {
        let mut acc = Space::ground(self.field);
        for _ in 0..n {
            acc = acc.tensor(self).expect("same field");
        }
        acc
    }

    /// A space with this space's labels under a single new atom name.
    pub fn renamed(&self, name: &str) -> Space {
        Space::new(name, self.field, self.labels()).expect("labels already distinct")
    }

    pub fn ensure_eq(&self, other: &Space, context: &str) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::mismatch(context, self.describe(), other.describe()))
        }
    }

    /// `name [l1, l2, ...] over F`, truncated for large spaces.
    pub fn describe(&self) -> String {
        let mut labels: Vec<String> = (0..self.dim.min(6)).map(|i| self.label(i)).collect();
        if self.dim > 6 {
            labels.push("…".to_string());
        }
        format!("{} (dim {}) [{}] over {}", self.name(), self.dim, labels.join(", "), self.field)
    }
}

impl PartialEq for Space {
    fn eq(&self, other: &Space) -> bool {
        if self.field != other.field || self.dim != other.dim {
            return false;
        }
        if Arc::ptr_eq(&self.atoms, &other.atoms) {
            return true;
        }
        let atomwise = self.atoms.len() == other.atoms.len()
            && self.atoms.iter().zip(other.atoms.iter()).all(|(a, b)| a.labels == b.labels);
        atomwise || (0..self.dim).all(|i| self.label(i) == other.label(i))
    }
}

impl Eq for Space {}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(name: &str, labels: &[&str]) -> Space {
        Space::new(name, FieldSpec::Rationals, labels.iter().copied()).unwrap()
    }

    #[test]
    fn tensor_label_order_is_row_major() {
        let a = sp("A", &["a1", "a2"]);
        let b = sp("B", &["b1", "b2", "b3"]);
        let ab = a.tensor(&b).unwrap();
        assert_eq!(ab.dim(), 6);
        assert_eq!(
            ab.labels(),
            ["a1⋄b1", "a1⋄b2", "a1⋄b3", "a2⋄b1", "a2⋄b2", "a2⋄b3"]
        );
    }

    #[test]
    fn tensor_with_zero_space_is_zero() {
        let a = sp("A", &["a1", "a2"]);
        let z = Space::zero("Z", FieldSpec::Rationals);
        assert_eq!(a.tensor(&z).unwrap().dim(), 0);
    }

    #[test]
    fn tensor_is_associative_on_labels() {
        let v = sp("V", &["v1", "v2"]);
        let w = sp("W", &["w1"]);
        let u = sp("U", &["u1", "u2"]);
        let left = v.tensor(&w).unwrap().tensor(&u).unwrap();
        let right = v.tensor(&w.tensor(&u).unwrap()).unwrap();
        assert_eq!(left.labels(), right.labels());
        assert_eq!(left, right);
    }

    #[test]
    fn ground_field_is_neutral() {
        let v = sp("V", &["v1", "v2"]);
        let k = Space::ground(FieldSpec::Rationals);
        assert_eq!(k.tensor(&v).unwrap(), v);
        assert_eq!(k.dim(), 1);
        assert_eq!(k.label(0), "1");
    }

    #[test]
    fn identity_is_structural() {
        let a = sp("A", &["x", "y"]);
        let b = sp("B", &["x", "y"]);
        assert_eq!(a, b);
        let c = sp("C", &["y", "x"]);
        assert_ne!(a, c);
        let q = Space::new("A", FieldSpec::Prime(5), ["x", "y"]).unwrap();
        assert_ne!(a, q);
    }

    #[test]
    fn duplicate_labels_rejected() {
        assert!(Space::new("A", FieldSpec::Rationals, ["x", "x"]).is_err());
    }

    #[test]
    fn field_mismatch_rejected() {
        let a = sp("A", &["x"]);
        let b = Space::new("B", FieldSpec::Prime(5), ["y"]).unwrap();
        assert!(matches!(a.tensor(&b), Err(Error::FieldMismatch(..))));
    }
}
