//! Exact searches for objects whose existence is not settled by hand: each
//! search is phrased as a polynomial system and decided with Groebner bases,
//! so an empty outcome holds over the complex numbers, not just on a grid.

mod common;

use std::sync::Arc;

use num_traits::{One, Zero};

use rota_omega::ideal::{radical_membership, Ideal};
use rota_omega::omega::OmegaAlgebra;
use rota_omega::solver::entry_name;
use rota_omega::{OrderKind, PolyRing, Polynomial, Rational};

use common::{algebra, algebra_at};

/// Vectors of `L` with polynomial coordinates.
struct Symbolic<'a> {
    l: &'a OmegaAlgebra,
    ring: Arc<PolyRing>,
}

impl<'a> Symbolic<'a> {
    fn zero(&self) -> Polynomial {
        self.ring.zero()
    }

    fn constant(&self, c: &Rational) -> Polynomial {
        self.ring.constant(c.clone())
    }

    fn basis(&self, i: usize) -> Vec<Polynomial> {
        (0..self.l.dim())
            .map(|k| if k == i { self.ring.one() } else { self.zero() })
            .collect()
    }

    fn bracket(&self, u: &[Polynomial], v: &[Polynomial]) -> Vec<Polynomial> {
        let n = self.l.dim();
        let mut out = vec![self.zero(); n];
        for i in 0..n {
            for j in 0..n {
                if u[i].is_zero() || v[j].is_zero() {
                    continue;
                }
                let uv = u[i].checked_mul(&v[j]).unwrap();
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.l.structure_constant(i, j, k);
                    if !c.is_zero() {
                        *o = o.checked_add(&uv.scale(c)).unwrap();
                    }
                }
            }
        }
        out
    }

    fn omega(&self, u: &[Polynomial], v: &[Polynomial]) -> Polynomial {
        let n = self.l.dim();
        let mut out = self.zero();
        for i in 0..n {
            for j in 0..n {
                let w = self.l.omega_basis(i, j);
                if !w.is_zero() {
                    out = out.checked_add(&u[i].checked_mul(&v[j]).unwrap().scale(w)).unwrap();
                }
            }
        }
        out
    }

    /// `v ↦ Σ_i v_i · row_i` for a matrix of ring variables.
    fn apply(&self, rows: &[Vec<Polynomial>], v: &[Polynomial]) -> Vec<Polynomial> {
        let n = self.l.dim();
        let mut out = vec![self.zero(); n];
        for (vi, row) in v.iter().zip(rows) {
            if vi.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(row) {
                *o = o.checked_add(&vi.checked_mul(r).unwrap()).unwrap();
            }
        }
        out
    }

    fn sub(&self, a: &[Polynomial], b: &[Polynomial]) -> Vec<Polynomial> {
        a.iter().zip(b).map(|(p, q)| p.checked_sub(q).unwrap()).collect()
    }

    fn add(&self, a: &[Polynomial], b: &[Polynomial]) -> Vec<Polynomial> {
        a.iter().zip(b).map(|(p, q)| p.checked_add(q).unwrap()).collect()
    }
}

fn variable_rows(ring: &Arc<PolyRing>, n: usize, name: impl Fn(usize, usize) -> String) -> Vec<Vec<Polynomial>> {
    (0..n)
        .map(|i| (0..n).map(|j| ring.var(&name(i, j)).unwrap()).collect())
        .collect()
}

fn determinant(m: &[Vec<Polynomial>]) -> Polynomial {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut out = m[0][0].ring().zero();
    for c in 0..n {
        let minor: Vec<Vec<Polynomial>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, p)| p.clone()).collect())
            .collect();
        let term = m[0][c].checked_mul(&determinant(&minor)).unwrap();
        out = if c % 2 == 0 { out.checked_add(&term) } else { out.checked_sub(&term) }.unwrap();
    }
    out
}

fn shipped_concrete() -> Vec<(String, OmegaAlgebra)> {
    let mut out: Vec<(String, OmegaAlgebra)> = ["L1", "L2", "L1_1", "L1_2", "L1_8"]
        .iter()
        .map(|n| (n.to_string(), algebra(n)))
        .collect();
    for a in ["-1/4", "2", "-1", "1/2"] {
        let q = rota_omega::exactpoly::parse_rational(a).unwrap();
        out.push((format!("Atilde_alpha({a})"), algebra_at("Atilde_alpha", "alpha", q)));
    }
    out
}

/// An invertible weight-0 Rota-Baxter automorphism `R` corresponds to the
/// derivation-automorphism `R⁻¹`. On every shipped algebra the
/// determinant vanishes on the whole variety of derivation-automorphisms, so
/// neither set has invertible members.
#[test]
fn no_invertible_derivation_automorphisms() {
    for (name, l) in shipped_concrete() {
        let n = l.dim();
        let names: Vec<String> = (0..n).flat_map(|i| (0..n).map(move |j| format!("d{}{}", i + 1, j + 1))).collect();
        let ring = PolyRing::new(&names, OrderKind::Grevlex).unwrap();
        let s = Symbolic { l: &l, ring: ring.clone() };
        let d = variable_rows(&ring, n, |i, j| format!("d{}{}", i + 1, j + 1));
        let mut eqs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let (x, y) = (s.basis(i), s.basis(j));
                let (dx, dy) = (s.apply(&d, &x), s.apply(&d, &y));
                let image = s.apply(&d, &s.bracket(&x, &y));
                let leibniz = s.add(&s.bracket(&dx, &y), &s.bracket(&x, &dy));
                eqs.extend(s.sub(&image, &leibniz));
                eqs.extend(s.sub(&image, &s.bracket(&dx, &dy)));
            }
        }
        let ideal = Ideal::new(&ring, eqs).unwrap();
        assert!(
            radical_membership(&determinant(&d), &ideal).unwrap(),
            "{name} has an invertible derivation-automorphism"
        );
    }
}

/// Isometric weight-1 Rota-Baxter operators `R` and `m`-dimensional modules
/// `V` with `R([R(L), L])` acting trivially on `V`: the system in the entries
/// of `R` and of the action is inconsistent for the listed cases.
fn twist_system(l: &OmegaAlgebra, m: usize) -> Ideal {
    let n = l.dim();
    let mut names: Vec<String> = (0..n).flat_map(|i| (0..n).map(move |j| entry_name(n, i, j))).collect();
    let act = |k: usize, a: usize, b: usize| format!("r{}_{}{}", k + 1, a + 1, b + 1);
    for k in 0..n {
        for a in 0..m {
            for b in 0..m {
                names.push(act(k, a, b));
            }
        }
    }
    let ring = PolyRing::new(&names, OrderKind::Grevlex).unwrap();
    let s = Symbolic { l, ring: ring.clone() };
    let r = variable_rows(&ring, n, |i, j| entry_name(n, i, j));
    let rho: Vec<Vec<Vec<Polynomial>>> = (0..n)
        .map(|k| (0..m).map(|a| (0..m).map(|b| ring.var(&act(k, a, b)).unwrap()).collect()).collect())
        .collect();
    // matrix of the action of a symbolic element
    let action = |v: &[Polynomial]| -> Vec<Vec<Polynomial>> {
        (0..m)
            .map(|a| {
                (0..m)
                    .map(|b| {
                        v.iter().zip(&rho).fold(ring.zero(), |acc, (vk, rk)| {
                            acc.checked_add(&vk.checked_mul(&rk[a][b]).unwrap()).unwrap()
                        })
                    })
                    .collect()
            })
            .collect()
    };
    let matmul = |p: &[Vec<Polynomial>], q: &[Vec<Polynomial>]| -> Vec<Vec<Polynomial>> {
        (0..m)
            .map(|a| {
                (0..m)
                    .map(|b| {
                        (0..m).fold(ring.zero(), |acc, c| acc.checked_add(&p[a][c].checked_mul(&q[c][b]).unwrap()).unwrap())
                    })
                    .collect()
            })
            .collect()
    };
    let mut eqs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let (x, y) = (s.basis(i), s.basis(j));
            let (rx, ry) = (s.apply(&r, &x), s.apply(&r, &y));
            let xy = s.bracket(&x, &y);
            let inner = s.add(&s.add(&s.bracket(&rx, &y), &s.bracket(&x, &ry)), &xy);
            eqs.extend(s.sub(&s.bracket(&rx, &ry), &s.apply(&r, &inner)));
            eqs.push(s.omega(&rx, &ry).checked_sub(&s.omega(&x, &y)).unwrap());
            let (ax, ay) = (action(&x), action(&y));
            let (p, q) = (matmul(&ax, &ay), matmul(&ay, &ax));
            let w = s.constant(l.omega_basis(i, j));
            let lhs = action(&xy);
            for a in 0..m {
                for b in 0..m {
                    let mut e = lhs[a][b].checked_sub(&p[a][b]).unwrap().checked_add(&q[a][b]).unwrap();
                    if a == b {
                        e = e.checked_sub(&w).unwrap();
                    }
                    eqs.push(e);
                }
            }
            let killed = action(&s.apply(&r, &s.bracket(&rx, &y)));
            eqs.extend(killed.into_iter().flatten());
        }
    }
    Ideal::new(&ring, eqs).unwrap()
}

#[test]
fn module_twist_preconditions_are_never_met_in_low_dimension() {
    let mut cases: Vec<(String, OmegaAlgebra, usize)> = Vec::new();
    for name in ["L1", "L2"] {
        for m in [1, 2] {
            cases.push((name.to_string(), algebra(name), m));
        }
    }
    for (name, l) in shipped_concrete().into_iter().skip(2) {
        cases.push((name, l, 1));
    }
    for (name, l, m) in cases {
        let ideal = twist_system(&l, m);
        assert!(ideal.is_unit().unwrap(), "{name} admits a module twist with a {m}-dimensional module");
    }
}

#[test]
fn determinant_expansion() {
    let ring = PolyRing::new(&["a", "b", "c", "d"], OrderKind::Lex).unwrap();
    let v = |s: &str| ring.var(s).unwrap();
    let m = vec![vec![v("a"), v("b")], vec![v("c"), v("d")]];
    assert_eq!(determinant(&m), ring.parse("a*d - b*c").unwrap());
    let id: Vec<Vec<Polynomial>> = (0..3)
        .map(|i| (0..3).map(|j| if i == j { ring.one() } else { ring.zero() }).collect())
        .collect();
    assert_eq!(determinant(&id).constant_value(), Some(Rational::one()));
}
