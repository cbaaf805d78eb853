mod common;

use num_traits::Zero;

use common::*;
use rota_omega::constructions::{
    annihilator, homlie_from_rb, homlie_structure, iterate_deform, left_symmetric_from_rb, module_twist, omega_deform,
    validate_module, ModuleAction, StructureLabel,
};
use rota_omega::omega::{is_compatible, is_rota_baxter, validate_algebra, Matrix, OmegaAlgebra, OperatorMatrix};
use rota_omega::{int, rat, Rational};

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&a| int(a)).collect()
}

fn op(rows: &[&[i64]]) -> OperatorMatrix {
    Matrix::from_i64(rows)
}

/// `(xy)z - x(yz) - (yx)z + y(xz)` for `xy = [Rx, y]`, computed here.
fn associator_defect(l: &OmegaAlgebra, r: &OperatorMatrix, x: &[Rational], y: &[Rational], z: &[Rational]) -> Vec<Rational> {
    let prod = |a: &[Rational], b: &[Rational]| l.bracket(&r.apply(a), b);
    let terms = [
        prod(&prod(x, y), z),
        prod(x, &prod(y, z)),
        prod(&prod(y, x), z),
        prod(y, &prod(x, z)),
    ];
    (0..l.dim())
        .map(|k| &terms[0][k] - &terms[1][k] - &terms[2][k] + &terms[3][k])
        .collect()
}

/// Row-convention family on `L_{1,1}` with image in `<e, z>`.
fn l11_operator(a: i64, b: i64, d: i64, r: i64, s: i64) -> OperatorMatrix {
    Matrix::from_rows(vec![
        vec![int(a), int(0), int(0), int(-b)],
        vec![rat(-a * d, b), int(0), int(0), int(d)],
        vec![int(r), int(0), int(0), int(s)],
        vec![rat(a * a, b), int(0), int(0), int(-a)],
    ])
    .unwrap()
}

#[test]
fn left_symmetric_algebras_from_l11() {
    let l = algebra("L1_1");
    for (a, b, d, r, s) in [(1, 1, 1, 0, 0), (1, 1, 0, 0, 0), (2, -3, 1, 4, -1), (0, 5, 2, -1, 3)] {
        let rb = l11_operator(a, b, d, r, s);
        assert!(is_rota_baxter(&l, &rb, &Rational::zero()));
        let lsa = left_symmetric_from_rb(&l, &rb).unwrap();
        assert!(lsa.left_symmetry_failures().is_empty());
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(lsa.product_basis(i, j), l.bracket(rb.row(i), &l.basis_vector(j)).as_slice());
                for k in 0..4 {
                    let (x, y, z) = (l.basis_vector(i), l.basis_vector(j), l.basis_vector(k));
                    assert!(associator_defect(&l, &rb, &x, &y, &z).iter().all(Zero::is_zero));
                }
            }
        }
    }
}

#[test]
fn left_symmetric_algebra_from_l1() {
    let l = algebra("L1");
    let lsa = left_symmetric_from_rb(&l, &op(&[&[0, 0, 1], &[0, 0, 1], &[0, 0, 0]])).unwrap();
    assert_eq!(lsa.table_lines(), vec!["x*y = -z", "y*y = -z"]);
}

#[test]
fn deformation_of_l1_is_a_lie_algebra() {
    let l = algebra("L1");
    // a = 1, b = 1, c = -1, d = 1, e = 1 in the compatible family
    let r = op(&[&[-1, 1, 1], &[-1, 1, 1], &[0, 0, 0]]);
    let d = omega_deform(&l, &r).unwrap();
    assert_eq!(d.bracket_basis(0, 1), ints(&[0, 0, -1]).as_slice());
    assert_eq!(d.bracket_basis(0, 2), ints(&[0, 0, 1]).as_slice());
    assert_eq!(d.bracket_basis(1, 2), ints(&[0, 0, 1]).as_slice());
    assert!(d.is_lie());
    assert!(is_rota_baxter(&d, &r, &Rational::zero()) && is_compatible(&d, &r));
}

#[test]
fn iterated_deformation_of_l1() {
    let l = algebra("L1");
    let r = op(&[&[-1, 1, 1], &[-1, 1, 1], &[0, 0, 0]]);
    let out = iterate_deform(&l, &r, 2).unwrap();
    assert!(out.r_in_bc_of_first);
    assert!(out.halted.is_none());
    assert_eq!(out.algebras.len(), 3);
    assert_eq!(out.algebras[1], omega_deform(&l, &r).unwrap());
    // R^2 = 0 here, so the second step is abelian
    assert!(r.power(2).unwrap().is_zero());
    assert!(validate_algebra(&out.algebras[2]).is_valid());
    assert!((0..3).all(|i| (0..3).all(|j| out.algebras[2].bracket_basis(i, j).iter().all(Zero::is_zero))));
}

#[test]
fn iteration_with_zero_operator_is_abelian() {
    let l = algebra("L1_8");
    let out = iterate_deform(&l, &Matrix::zeros(4, 4), 3).unwrap();
    assert_eq!(out.algebras.len(), 4);
    for a in &out.algebras[1..] {
        assert!(a.is_lie());
        assert!((0..4).all(|i| (0..4).all(|j| a.bracket_basis(i, j).iter().all(Zero::is_zero))));
    }
}

#[test]
fn rota_baxter_but_incompatible_operators_are_refused() {
    let l = algebra("L1");
    let r = op(&[&[1, 1, 0], &[0, 0, 0], &[0, 0, 0]]);
    assert!(is_rota_baxter(&l, &r, &Rational::zero()));
    let err = omega_deform(&l, &r).unwrap_err().to_string();
    assert!(err.contains("compatible"), "{err}");

    let a = algebra_at("Atilde_alpha", "alpha", rat(-1, 4));
    let v = |xs: &[(i64, i64)]| xs.iter().map(|&(n, d)| rat(n, d)).collect::<Vec<_>>();
    let r = Matrix::from_rows(vec![
        v(&[(-1, 1), (0, 1), (0, 1), (-1, 1)]),
        v(&[(4, 1), (1, 2), (1, 1), (2, 1)]),
        v(&[(0, 1), (-1, 4), (-1, 2), (1, 1)]),
        v(&[(1, 1), (0, 1), (0, 1), (1, 1)]),
    ])
    .unwrap();
    assert!(is_rota_baxter(&a, &r, &Rational::zero()));
    assert!(!is_compatible(&a, &r));
    assert!(omega_deform(&a, &r).unwrap_err().to_string().contains("compatible"));
}

#[test]
fn hom_lie_algebra_from_l2() {
    let l = algebra("L2");
    let r = op(&[&[0, 2, 3], &[0, 0, 0], &[0, 0, 0]]);
    let g = homlie_from_rb(&l, &r).unwrap();
    assert_eq!(g.bracket_basis(0, 1), ints(&[0, 0, -3]).as_slice());
    assert_eq!(g.bracket_basis(0, 2), ints(&[0, 0, 2]).as_slice());
    assert_eq!(g.bracket_basis(1, 2), ints(&[0, 0, 0]).as_slice());
    assert_eq!(g.twist(), &r);
    assert!(g.hom_jacobi_failures().is_empty());
}

#[test]
fn hom_lie_algebra_from_l12() {
    let l = algebra("L1_2");
    // a = 1, every other parameter 0
    let r = op(&[&[0, 0, 0, 1], &[0, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0]]);
    let g = homlie_from_rb(&l, &r).unwrap();
    assert_eq!(g.bracket_basis(0, 2), ints(&[0, 0, 0, -1]).as_slice());
    let s = homlie_structure(&g);
    assert_eq!(s.label, StructureLabel::Nilpotent);
    assert_eq!(s.nilpotency_class, Some(2));
}

#[test]
fn hom_lie_algebra_from_l18_is_nilpotent() {
    let l = algebra("L1_8");
    // a = 0, b = 1, c = 0 on the first component
    let r = op(&[&[1, -1, 0, 0], &[1, -1, 0, 0], &[-1, 1, 0, 0], &[0, 0, 0, 0]]);
    let g = homlie_from_rb(&l, &r).unwrap();
    assert_eq!(g.bracket_basis(0, 2), ints(&[0, 0, 0, 1]).as_slice());
    assert_eq!(g.bracket_basis(1, 2), ints(&[0, 0, 0, 1]).as_slice());
    for i in 0..4 {
        assert!(g.bracket_basis(i, 3).iter().all(Zero::is_zero));
    }
    let s = homlie_structure(&g);
    assert_eq!(s.nilpotency_class, Some(2));
    assert_eq!(s.lower_central_dims, vec![4, 1, 0]);
}

#[test]
fn hom_lie_algebras_from_l11() {
    // image in the kernel of omega, and R^2 = 0 exactly when rb + sa = 0
    let l = algebra("L1_1");
    for (a, b, d, r, s) in [(1, 1, 1, 0, 0), (2, -3, 1, 4, 6)] {
        let rb = l11_operator(a, b, d, r, s);
        assert!(rb.power(2).unwrap().is_zero());
        let g = homlie_from_rb(&l, &rb).unwrap();
        assert!(g.hom_jacobi_failures().is_empty());
    }
    assert!(homlie_from_rb(&l, &l11_operator(2, -3, 1, 4, -1)).is_err());
}

#[test]
fn hom_lie_requires_square_zero() {
    let l = algebra("L1");
    // first compatible component of L1 at a = b = 1, c = 0
    let r = op(&[&[0, 0, 1], &[1, 0, 0], &[0, 0, 0]]);
    assert!(is_rota_baxter(&l, &r, &Rational::zero()) && is_compatible(&l, &r));
    assert!(!r.power(2).unwrap().is_zero());
    let err = homlie_from_rb(&l, &r).unwrap_err().to_string();
    assert!(err.contains("squares to zero"), "{err}");
}

fn line_module(t: i64, y: i64) -> ModuleAction {
    ModuleAction::new(1, vec![Matrix::from_i64(&[&[t]]), Matrix::from_i64(&[&[y]]), Matrix::from_i64(&[&[0]])]).unwrap()
}

#[test]
fn one_dimensional_modules_of_l1() {
    let l = algebra("L1");
    for t in -3..=3 {
        assert!(validate_module(&l, &line_module(t, 1)).unwrap().is_valid());
    }
    let bad = validate_module(&l, &line_module(0, 0)).unwrap();
    assert_eq!(bad.failures, vec![(0, 1)]);
}

#[test]
fn module_twist_outcomes() {
    let l = algebra("L1");
    let minus_one = Matrix::scalar(3, int(-1));
    let v = line_module(0, 1);
    assert_eq!(annihilator(&l, &v).dim(), 2);
    let err = module_twist(&l, &v, &minus_one).unwrap_err().to_string();
    assert!(err.contains("annihilator"), "{err}");

    let twisted = module_twist(&l, &ModuleAction::zero(3), &minus_one).unwrap();
    assert_eq!(twisted.dim(), 0);
    assert!(validate_module(&l, &twisted).unwrap().is_valid());

    let err = module_twist(&l, &ModuleAction::zero(3), &Matrix::identity(3)).unwrap_err().to_string();
    assert!(err.contains("weight 1"), "{err}");
}
