use cotwist::linalg::{inverse, linear_solve, rank};
use cotwist::{Error, FieldSpec, LinMap, Scalar, Space};
use proptest::prelude::*;

const F5: FieldSpec = FieldSpec::Prime(5);

fn space(name: &str, f: FieldSpec, dim: usize) -> Space {
    Space::new(name, f, (0..dim).map(|i| format!("{name}{i}"))).unwrap()
}

fn map(dom: &Space, cod: &Space, entries: &[i64]) -> LinMap {
    let f = dom.field();
    let n = dom.dim();
    let rows: Vec<Vec<Scalar>> =
        (0..cod.dim()).map(|i| (0..n).map(|j| f.from_i64(entries[i * n + j])).collect()).collect();
    LinMap::from_rows(dom.clone(), cod.clone(), &rows).unwrap()
}

fn dense(m: &LinMap) -> Vec<Vec<i64>> {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(|s| F5.format_scalar(s).split(' ').next().unwrap().parse().unwrap()).collect())
        .collect()
}

/// Triple-loop product modulo 5.
fn naive_product(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let (n, m, k) = (a.len(), b.len(), b[0].len());
    let mut out = vec![vec![0; k]; n];
    for i in 0..n {
        for j in 0..k {
            for l in 0..m {
                out[i][j] += a[i][l] * b[l][j];
            }
            out[i][j] = out[i][j].rem_euclid(5);
        }
    }
    out
}

/// Kronecker product by its index formula.
fn naive_kron(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let (ra, ca, rb, cb) = (a.len(), a[0].len(), b.len(), b[0].len());
    let mut out = vec![vec![0; ca * cb]; ra * rb];
    for i in 0..ra * rb {
        for j in 0..ca * cb {
            out[i][j] = (a[i / rb][j / cb] * b[i % rb][j % cb]).rem_euclid(5);
        }
    }
    out
}

fn entries(n: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-4i64..5, n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn compose_agrees_with_triple_loop(a in entries(9), b in entries(9)) {
        let v = space("v", F5, 3);
        let (fa, fb) = (map(&v, &v, &a), map(&v, &v, &b));
        prop_assert_eq!(dense(&fa.compose(&fb).unwrap()), naive_product(&dense(&fa), &dense(&fb)));
    }

    #[test]
    fn kron_agrees_with_index_formula(a in entries(6), b in entries(6)) {
        let (v2, v3) = (space("v", F5, 2), space("w", F5, 3));
        let (fa, fb) = (map(&v2, &v3, &a), map(&v3, &v2, &b));
        prop_assert_eq!(dense(&fa.kron(&fb).unwrap()), naive_kron(&dense(&fa), &dense(&fb)));
    }

    #[test]
    fn interchange_law(a in entries(4), b in entries(4), c in entries(4), d in entries(4)) {
        let (x, y) = (space("x", F5, 2), space("y", F5, 2));
        let (f, f2) = (map(&x, &x, &a), map(&x, &x, &b));
        let (g, g2) = (map(&y, &y, &c), map(&y, &y, &d));
        let lhs = f.compose(&f2).unwrap().kron(&g.compose(&g2).unwrap()).unwrap();
        let rhs = f.kron(&g).unwrap().compose(&f2.kron(&g2).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn swap_is_natural(a in entries(6), b in entries(6)) {
        for field in [F5, FieldSpec::Rationals] {
            let (a2, a3, b2, b3) = (space("a", field, 2), space("A", field, 3), space("b", field, 3), space("B", field, 2));
            let f = map(&a2, &a3, &a);
            let g = map(&b2, &b3, &b);
            let lhs = LinMap::swap(&a3, &b3).unwrap().compose(&f.kron(&g).unwrap()).unwrap();
            let rhs = g.kron(&f).unwrap().compose(&LinMap::swap(&a2, &b2).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn solutions_substitute_back(a in entries(12), b in entries(8)) {
        for field in [F5, FieldSpec::Rationals] {
            let (x, y, z) = (space("x", field, 4), space("y", field, 3), space("z", field, 2));
            let m = map(&x, &y, &a);
            // rhs in the image: m ∘ r for some r
            let r = map(&z, &x, &b);
            let rhs = m.compose(&r).unwrap();
            let sol = linear_solve(&m, &rhs).unwrap();
            prop_assert_eq!(m.compose(&sol.x).unwrap(), rhs);
            prop_assert_eq!(sol.kernel_dim, 4 - rank(&m));
        }
    }

    #[test]
    fn inverse_multiplies_back(a in entries(16)) {
        let v = space("v", F5, 4);
        let m = map(&v, &v, &a);
        match inverse(&m) {
            Ok(inv) => {
                prop_assert_eq!(m.compose(&inv).unwrap(), LinMap::identity(&v));
                prop_assert_eq!(inv.compose(&m).unwrap(), LinMap::identity(&v));
            }
            Err(Error::NotInvertible(_)) => prop_assert!(rank(&m) < 4),
            Err(e) => prop_assert!(false, "unexpected {e}"),
        }
    }
}

#[test]
fn singular_system_has_no_solution() {
    let f = FieldSpec::Rationals;
    let (v, k) = (space("v", f, 2), Space::ground(f));
    let m = map(&v, &v, &[1, 1, 1, 1]);
    let rhs = map(&k, &v, &[1, 0]);
    assert!(matches!(linear_solve(&m, &rhs), Err(Error::NoSolution)));
    assert_eq!(rank(&m), 1);
}

#[test]
fn rationals_stay_exact_through_elimination() {
    let f = FieldSpec::Rationals;
    let v = space("v", f, 3);
    let m = map(&v, &v, &[2, 0, 1, 1, 3, 0, 0, 1, 7]);
    let inv = inverse(&m).unwrap();
    // det = 2·21 − 0 + 1·1 = 43
    assert_eq!(inv.entry(0, 0), f.frac(21, 43));
    assert_eq!(m.compose(&inv).unwrap(), LinMap::identity(&v));
}
