//! Exact Gaussian elimination: row reduction, rank, solving, inversion and
//! kernels. Pivots are chosen deterministically as the first nonzero entry
//! in column order, so every derived basis is reproducible.

use crate::error::{Error, Result};
use crate::linmap::{LinMap, SparseVec};
use crate::scalar::{FieldSpec, Scalar};
use crate::space::Space;

/// Reduced row echelon form of a dense matrix.
#[derive(Clone, Debug)]
pub struct Rref {
    pub rows: Vec<Vec<Scalar>>,
    /// Pivot column of each nonzero row, in order.
    pub pivots: Vec<usize>,
}

/// Row reduces `rows` in place, choosing pivots only among the first
/// `pivot_cols` columns.
pub fn rref(field: FieldSpec, mut rows: Vec<Vec<Scalar>>, pivot_cols: usize) -> Rref {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !field.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = field.inv(&rows[r][c]).expect("pivot is nonzero");
        for v in rows[r].iter_mut() {
            *v = field.mul(v, &inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || field.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !field.is_zero(p) {
                    *v = field.sub(v, &field.mul(&factor, p));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref { rows, pivots }
}

pub fn rank(m: &LinMap) -> usize {
    rref(m.field(), m.to_rows(), m.domain().dim()).pivots.len()
}

/// Rank equal to both dimensions.
pub fn is_bijective(m: &LinMap) -> bool {
    m.domain().dim() == m.codomain().dim() && rank(m) == m.domain().dim()
}

#[derive(Clone, Debug)]
pub struct Solution {
    /// Some `x` with `m ∘ x = rhs`; free variables are set to zero.
    pub x: LinMap,
    pub kernel_dim: usize,
}

/// Solves `m ∘ x = rhs` for `x`.
pub fn linear_solve(m: &LinMap, rhs: &LinMap) -> Result<Solution> {
    m.codomain().ensure_eq(rhs.codomain(), "linear_solve (codomains)")?;
    let field = m.field();
    let n = m.domain().dim();
    let k = rhs.domain().dim();
    let mrows = m.to_rows();
    let rrows = rhs.to_rows();
    let aug: Vec<Vec<Scalar>> = mrows
        .into_iter()
        .zip(rrows)
        .map(|(mut a, b)| {
            a.extend(b);
            a
        })
        .collect();
    let red = rref(field, aug, n);
    let rank = red.pivots.len();
    if red.rows[rank..].iter().any(|row| row[n..].iter().any(|v| !field.is_zero(v))) {
        return Err(Error::NoSolution);
    }
    let cols = (0..k)
        .map(|j| {
            red.pivots
                .iter()
                .enumerate()
                .filter(|(r, _)| !field.is_zero(&red.rows[*r][n + j]))
                .map(|(r, &p)| (p as u32, red.rows[r][n + j].clone()))
                .collect()
        })
        .collect();
    let x = LinMap::from_columns(rhs.domain().clone(), m.domain().clone(), cols)?;
    Ok(Solution { x, kernel_dim: n - rank })
}

/// Two-sided inverse of a square bijective map.
pub fn inverse(m: &LinMap) -> Result<LinMap> {
    if m.domain().dim() != m.codomain().dim() {
        return Err(Error::NotInvertible(format!(
            "{} -> {} is not square",
            m.domain().name(),
            m.codomain().name()
        )));
    }
    let sol = linear_solve(m, &LinMap::identity(m.codomain()))
        .map_err(|_| Error::NotInvertible(format!("rank {} < {}", rank(m), m.domain().dim())))?;
    if sol.kernel_dim != 0 {
        return Err(Error::NotInvertible(format!("kernel of dimension {}", sol.kernel_dim)));
    }
    Ok(sol.x)
}

/// Basis of the kernel of `m`, one vector per free column of the RREF,
/// normalized to 1 at its free position.
pub fn kernel_basis(m: &LinMap) -> Vec<SparseVec> {
    kernel_parts(m).1
}

fn kernel_parts(m: &LinMap) -> (Vec<usize>, Vec<SparseVec>) {
    let field = m.field();
    let n = m.domain().dim();
    let red = rref(field, m.to_rows(), n);
    let free: Vec<usize> = (0..n).filter(|c| !red.pivots.contains(c)).collect();
    let vecs = free
        .iter()
        .map(|&fc| {
            let mut v: SparseVec = vec![(fc as u32, field.one())];
            for (r, &p) in red.pivots.iter().enumerate() {
                let e = &red.rows[r][fc];
                if !field.is_zero(e) {
                    v.push((p as u32, field.neg(e)));
                }
            }
            v.sort_unstable_by_key(|(i, _)| *i);
            v
        })
        .collect();
    (free, vecs)
}

/// Kernel of `m` as an inclusion `W → dom(m)` together with the free
/// positions. Restricting a kernel element to the free positions gives its
/// `W`-coordinates, since each basis vector is 1 at its own free position
/// and 0 at the others.
pub fn kernel_inclusion(m: &LinMap, name: &str) -> Result<(LinMap, Vec<usize>)> {
    let (free, basis) = kernel_parts(m);
    let w = Space::new(name, m.field(), (0..basis.len()).map(|i| format!("w{i}")))?;
    let incl = LinMap::from_columns(w, m.domain().clone(), basis)?;
    Ok((incl, free))
}
