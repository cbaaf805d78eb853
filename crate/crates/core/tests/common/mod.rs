//! Helpers shared by the integration tests.
#![allow(dead_code)]

use num_traits::Zero;
use rand::Rng;

use rota_omega::ideal::{check_primality, Parametrization};
use rota_omega::omega::{kernel_omega, Matrix, OmegaAlgebra, OperatorMatrix};
use rota_omega::reports::{parse_catalog, parse_expectations, shipped, CatalogEntry, ParamValues};
use rota_omega::solver::operator_ring;
use rota_omega::{rat, OrderKind, Rational};

pub fn catalog() -> Vec<CatalogEntry> {
    parse_catalog(shipped::CATALOG).expect("shipped catalog parses")
}

/// Every concrete algebra of the shipped catalog, with parametric entries
/// expanded at their sample values.
pub fn shipped_algebras() -> Vec<(String, OmegaAlgebra)> {
    let mut out = Vec::new();
    for e in catalog().iter().filter(|e| !e.external_source) {
        if e.is_parametric() {
            for v in e.sample_specializations() {
                let label = format!("{}{:?}", e.name, v);
                out.push((label, e.specialize(&v).unwrap()));
            }
        } else {
            out.push((e.name.clone(), e.specialize(&ParamValues::new()).unwrap()));
        }
    }
    out
}

pub fn algebra(name: &str) -> OmegaAlgebra {
    let cat = catalog();
    let e = cat.iter().find(|e| e.name == name).unwrap();
    e.specialize(&ParamValues::new()).unwrap()
}

pub fn algebra_at(name: &str, param: &str, value: Rational) -> OmegaAlgebra {
    let cat = catalog();
    let e = cat.iter().find(|e| e.name == name).unwrap();
    let mut v = ParamValues::new();
    v.insert(param.to_string(), value);
    e.specialize(&v).unwrap()
}

pub fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    rat(rng.gen_range(-6..=6), rng.gen_range(1..=3))
}

pub fn nonzero_rational<R: Rng>(rng: &mut R) -> Rational {
    loop {
        let q = small_rational(rng);
        if !q.is_zero() {
            return q;
        }
    }
}

pub fn random_matrix<R: Rng>(rng: &mut R, n: usize) -> OperatorMatrix {
    Matrix::from_rows((0..n).map(|_| (0..n).map(|_| small_rational(rng)).collect()).collect()).unwrap()
}

pub fn matrix(rows: &[&[Rational]]) -> OperatorMatrix {
    Matrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
}

fn random_combination<R: Rng>(rng: &mut R, n: usize, basis: &[Vec<Rational>]) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    for b in basis {
        let c = small_rational(rng);
        for (vi, bi) in v.iter_mut().zip(b) {
            *vi += &c * bi;
        }
    }
    v
}

/// A rank-one operator `R(v) = φ(v) u` with `u` in the kernel of ω and
/// `φ` vanishing on `[u, L]` (and on `u` itself when `square_zero`).
///
/// Then `[Rx, Ry] = 0 = R([Rx, y] + [x, Ry])`, both compatibility terms
/// vanish, and `R² = φ(u) R`, so these are compatible weight-0
/// Rota-Baxter operators with image in the kernel of ω.
pub fn rank_one_operator<R: Rng>(rng: &mut R, l: &OmegaAlgebra, square_zero: bool) -> OperatorMatrix {
    let n = l.dim();
    let u = random_combination(rng, n, kernel_omega(l).basis());
    let mut constraints: Vec<Vec<Rational>> = (0..n).map(|j| l.bracket(&u, &l.basis_vector(j))).collect();
    if square_zero {
        constraints.push(u.clone());
    }
    let phi = random_combination(rng, n, &Matrix::from_rows(constraints).unwrap().null_space());
    Matrix::from_rows((0..n).map(|i| u.iter().map(|c| c * &phi[i]).collect()).collect()).unwrap()
}

/// Parametrizations of the certified candidates of `algebra`'s row in a
/// shipped expectation table.
pub fn component_parametrizations(table: &str, algebra: &str) -> Vec<Parametrization> {
    let file = parse_expectations(table).unwrap();
    let row = file.row.iter().find(|r| r.algebra == algebra).unwrap();
    let ring = operator_ring(self::algebra(algebra).dim(), OrderKind::Grevlex);
    row.candidate
        .iter()
        .map(|c| {
            let c = c.to_candidate(&ring, &ParamValues::new()).unwrap();
            check_primality(&c.ideal, c.certificate.as_ref().unwrap()).unwrap()
        })
        .collect()
}
