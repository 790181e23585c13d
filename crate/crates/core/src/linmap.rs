//! Linear maps between labeled spaces.
//!
//! Entry `(i, j)` is the coefficient of the `i`-th codomain basis vector in
//! the image of the `j`-th domain basis vector. Columns are stored sparsely
//! (sorted, zero-free), so two maps are equal exactly when their matrices are.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{FieldSpec, Scalar};
use crate::space::Space;

/// A vector as sorted `(index, coefficient)` pairs with no zero coefficients.
pub type SparseVec = Vec<(u32, Scalar)>;

/// Sorts, merges duplicates and drops zeros.
pub fn normalize(field: FieldSpec, mut entries: Vec<(u32, Scalar)>) -> SparseVec {
    entries.sort_unstable_by_key(|(i, _)| *i);
    let mut out: SparseVec = Vec::with_capacity(entries.len());
    for (i, v) in entries {
        match out.last_mut() {
            Some((j, acc)) if *j == i => *acc = field.add(acc, &v),
            _ => {
                if let Some((_, acc)) = out.last() {
                    if field.is_zero(acc) {
                        out.pop();
                    }
                }
                out.push((i, v));
            }
        }
    }
    if let Some((_, acc)) = out.last() {
        if field.is_zero(acc) {
            out.pop();
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinMap {
    dom: Space,
    cod: Space,
    cols: Vec<SparseVec>,
}

impl LinMap {
    pub fn from_columns(dom: Space, cod: Space, cols: Vec<SparseVec>) -> Result<Self> {
        if dom.field() != cod.field() {
            return Err(Error::FieldMismatch(dom.field().to_string(), cod.field().to_string()));
        }
        if cols.len() != dom.dim() {
            return Err(Error::Shape(format!(
                "{} columns given for domain of dimension {}",
                cols.len(),
                dom.dim()
            )));
        }
        let field = dom.field();
        let cols = cols
            .into_iter()
            .map(|c| {
                if c.iter().any(|(i, v)| *i as usize >= cod.dim() || !field.contains(v)) {
                    Err(Error::Shape(format!("column entry outside codomain {}", cod.name())))
                } else {
                    Ok(normalize(field, c))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LinMap { dom, cod, cols })
    }

    /// Builds from rows: `rows[i][j]` is entry `(i, j)`.
    pub fn from_rows(dom: Space, cod: Space, rows: &[Vec<Scalar>]) -> Result<Self> {
        if rows.len() != cod.dim() || rows.iter().any(|r| r.len() != dom.dim()) {
            return Err(Error::Shape(format!(
                "matrix shape does not match {} x {}",
                cod.dim(),
                dom.dim()
            )));
        }
        let cols = (0..dom.dim())
            .map(|j| {
                rows.iter()
                    .enumerate()
                    .map(|(i, r)| (i as u32, r[j].clone()))
                    .collect()
            })
            .collect();
        LinMap::from_columns(dom, cod, cols)
    }

    /// Builds from small integer rows.
    pub fn from_int_rows(dom: Space, cod: Space, rows: &[&[i64]]) -> Result<Self> {
        let f = dom.field();
        let rows: Vec<Vec<Scalar>> = rows.iter().map(|r| r.iter().map(|&v| f.from_i64(v)).collect()).collect();
        LinMap::from_rows(dom, cod, &rows)
    }

    /// Builds column by column from a closure returning `(row, coefficient)` pairs.
    pub fn from_fn(dom: Space, cod: Space, mut col: impl FnMut(usize) -> Vec<(usize, Scalar)>) -> Result<Self> {
        let cols = (0..dom.dim())
            .map(|j| col(j).into_iter().map(|(i, v)| (i as u32, v)).collect())
            .collect();
        LinMap::from_columns(dom, cod, cols)
    }

    pub(crate) fn from_normalized(dom: Space, cod: Space, cols: Vec<SparseVec>) -> Self {
        debug_assert_eq!(cols.len(), dom.dim());
        LinMap { dom, cod, cols }
    }

    pub fn identity(space: &Space) -> Self {
        let one = space.field().one();
        let cols = (0..space.dim()).map(|j| vec![(j as u32, one.clone())]).collect();
        LinMap { dom: space.clone(), cod: space.clone(), cols }
    }

    pub fn zero(dom: &Space, cod: &Space) -> Self {
        LinMap { dom: dom.clone(), cod: cod.clone(), cols: vec![Vec::new(); dom.dim()] }
    }

    /// The swap `a ⊗ b ↦ b ⊗ a`.
    pub fn swap(a: &Space, b: &Space) -> Result<Self> {
        let dom = a.tensor(b)?;
        let cod = b.tensor(a)?;
        let one = a.field().one();
        let (na, nb) = (a.dim(), b.dim());
        let cols = (0..dom.dim())
            .map(|j| {
                let (i, k) = (j / nb, j % nb);
                vec![((k * na + i) as u32, one.clone())]
            })
            .collect();
        Ok(LinMap { dom, cod, cols })
    }

    pub fn domain(&self) -> &Space {
        &self.dom
    }

    pub fn codomain(&self) -> &Space {
        &self.cod
    }

    pub fn field(&self) -> FieldSpec {
        self.dom.field()
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> Scalar {
        self.cols[j]
            .binary_search_by_key(&(i as u32), |(r, _)| *r)
            .map(|k| self.cols[j][k].1.clone())
            .unwrap_or_else(|_| self.field().zero())
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    /// Dense rows, `rows[i][j]` = entry `(i, j)`.
    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        let f = self.field();
        let mut rows = vec![vec![f.zero(); self.dom.dim()]; self.cod.dim()];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col {
                rows[*i as usize][j] = v.clone();
            }
        }
        rows
    }

    /// Same matrix, reinterpreted between spaces of equal dimensions.
    pub fn relabel(&self, dom: &Space, cod: &Space) -> Result<Self> {
        if dom.dim() != self.dom.dim() || cod.dim() != self.cod.dim() || dom.field() != self.field() {
            return Err(Error::Shape(format!(
                "cannot relabel {} -> {} as {} -> {}",
                self.dom.name(),
                self.cod.name(),
                dom.name(),
                cod.name()
            )));
        }
        Ok(LinMap { dom: dom.clone(), cod: cod.clone(), cols: self.cols.clone() })
    }

    /// Applies the map to a sparse vector in the domain.
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let f = self.field();
        let mut acc = Vec::new();
        for (j, a) in v {
            for (i, b) in &self.cols[*j as usize] {
                acc.push((*i, f.mul(a, b)));
            }
        }
        normalize(f, acc)
    }

    /// `self ∘ g`: `g` is applied first.
    pub fn compose(&self, g: &LinMap) -> Result<LinMap> {
        self.dom.ensure_eq(&g.cod, "composition")?;
        let cols = g.cols.iter().map(|c| self.apply(c)).collect();
        Ok(LinMap { dom: g.dom.clone(), cod: self.cod.clone(), cols })
    }

    /// `self ⊗ g`, consistent with the row-major order of tensor spaces.
    pub fn kron(&self, g: &LinMap) -> Result<LinMap> {
        let dom = self.dom.tensor(&g.dom)?;
        let cod = self.cod.tensor(&g.cod)?;
        let f = self.field();
        let m2 = g.cod.dim() as u32;
        let mut cols = Vec::with_capacity(dom.dim());
        for c1 in &self.cols {
            for c2 in &g.cols {
                let mut col = Vec::with_capacity(c1.len() * c2.len());
                for (i1, a) in c1 {
                    for (i2, b) in c2 {
                        col.push((i1 * m2 + i2, f.mul(a, b)));
                    }
                }
                cols.push(col);
            }
        }
        Ok(LinMap { dom, cod, cols })
    }

    pub fn add(&self, g: &LinMap) -> Result<LinMap> {
        self.dom.ensure_eq(&g.dom, "sum (domain)")?;
        self.cod.ensure_eq(&g.cod, "sum (codomain)")?;
        let f = self.field();
        let cols = self
            .cols
            .iter()
            .zip(&g.cols)
            .map(|(a, b)| normalize(f, a.iter().chain(b.iter()).cloned().collect()))
            .collect();
        Ok(LinMap { dom: self.dom.clone(), cod: self.cod.clone(), cols })
    }

    pub fn scale(&self, s: &Scalar) -> LinMap {
        let f = self.field();
        let cols = self
            .cols
            .iter()
            .map(|c| normalize(f, c.iter().map(|(i, v)| (*i, f.mul(v, s))).collect()))
            .collect();
        LinMap { dom: self.dom.clone(), cod: self.cod.clone(), cols }
    }

    pub fn sub(&self, g: &LinMap) -> Result<LinMap> {
        self.add(&g.scale(&self.field().neg(&self.field().one())))
    }

    /// Index of the first domain basis vector on which the two maps differ.
    pub fn first_difference(&self, g: &LinMap) -> Option<usize> {
        (0..self.cols.len()).find(|&j| self.cols[j] != g.cols[j])
    }

    /// Human-readable form of a vector in `space`: `2·g⋄x + -1·1`.
    pub fn render_vector(space: &Space, v: &SparseVec) -> String {
        if v.is_empty() {
            return "0".to_string();
        }
        let f = space.field();
        v.iter()
            .map(|(i, c)| format!("{}·{}", f.display_scalar(c), space.label(*i as usize)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for LinMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} -> {}", self.dom.name(), self.cod.name())?;
        for (j, c) in self.cols.iter().enumerate() {
            writeln!(f, "  {} ↦ {}", self.dom.label(j), LinMap::render_vector(&self.cod, c))?;
        }
        Ok(())
    }
}

/// `f ⊗ g ⊗ ...` for a list of maps.
pub fn kron_all(field: FieldSpec, maps: &[&LinMap]) -> Result<LinMap> {
    let mut acc = LinMap::identity(&Space::ground(field));
    for m in maps {
        acc = acc.kron(m)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(name: &str, n: usize, field: FieldSpec) -> Space {
        Space::new(name, field, (0..n).map(|i| format!("{}{}", name.to_lowercase(), i + 1))).unwrap()
    }

    #[test]
    fn kron_of_identities_is_identity() {
        let f = FieldSpec::Rationals;
        let a = sp("A", 2, f);
        let b = sp("B", 3, f);
        let k = LinMap::identity(&a).kron(&LinMap::identity(&b)).unwrap();
        assert_eq!(k, LinMap::identity(&a.tensor(&b).unwrap()));
    }

    #[test]
    fn kron_on_basis_tensor() {
        let f = FieldSpec::Prime(5);
        let a = sp("A", 2, f);
        let b = sp("B", 2, f);
        let m1 = LinMap::from_int_rows(a.clone(), a.clone(), &[&[1, 2], &[3, 4]]).unwrap();
        let m2 = LinMap::from_int_rows(b.clone(), b.clone(), &[&[0, 1], &[2, 3]]).unwrap();
        let k = m1.kron(&m2).unwrap();
        // column of e1⊗e1 is m1(e1)⊗m2(e1) = (1,3)⊗(0,2)
        let expected: Vec<Scalar> = [0, 2, 0, 6].iter().map(|&v| f.from_i64(v)).collect();
        for (i, e) in expected.iter().enumerate() {
            assert_eq!(&k.entry(i, 0), e);
        }
    }

    #[test]
    fn compose_with_identity() {
        let f = FieldSpec::Rationals;
        let a = sp("A", 2, f);
        let b = sp("B", 3, f);
        let m = LinMap::from_int_rows(a.clone(), b.clone(), &[&[1, 2], &[0, -1], &[5, 0]]).unwrap();
        assert_eq!(m.compose(&LinMap::identity(&a)).unwrap(), m);
        assert_eq!(LinMap::identity(&b).compose(&m).unwrap(), m);
        assert!(m.compose(&m).is_err());
    }

    #[test]
    fn swap_is_the_expected_permutation() {
        let f = FieldSpec::Rationals;
        let a = sp("A", 2, f);
        let b = sp("B", 2, f);
        let s = LinMap::swap(&a, &b).unwrap();
        let expected = [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]];
        for (i, row) in expected.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                assert_eq!(s.entry(i, j), f.from_i64(*v));
            }
        }
        let back = LinMap::swap(&b, &a).unwrap().compose(&s).unwrap();
        assert_eq!(back, LinMap::identity(&a.tensor(&b).unwrap()));
        let v = sp("V", 1, f);
        assert_eq!(LinMap::swap(&v, &v).unwrap(), LinMap::identity(&v.tensor(&v).unwrap()));
    }

    #[test]
    fn normalize_merges_and_drops_zeros() {
        let f = FieldSpec::Rationals;
        let v = normalize(
            f,
            vec![(3, f.one()), (1, f.one()), (3, f.from_i64(-1)), (1, f.one()), (0, f.zero())],
        );
        assert_eq!(v, vec![(1, f.from_i64(2))]);
    }
}
