use std::sync::Arc;

use crate::exactpoly::{MonomialOrder, OrderKind, PolyRing, Polynomial};

use super::{Ideal, IdealError};

pub fn ideal_membership(f: &Polynomial, ideal: &Ideal) -> Result<bool, IdealError> {
    if f.is_zero() {
        return Ok(true);
    }
    let gb = ideal.groebner()?;
    Ok(gb.reduce(f)?.is_zero())
}

/// Reduced Groebner bases under the order of `a`'s ring coincide.
pub fn ideal_equal(a: &Ideal, b: &Ideal) -> Result<bool, IdealError> {
    let b = b.to_ring(a.ring())?;
    let ga = a.groebner()?;
    let gb = b.groebner()?;
    Ok(ga.elements() == gb.elements())
}

/// A variable name not present in `ring`, derived from `stem`.
pub fn fresh_variable(ring: &PolyRing, stem: &str) -> String {
    let vars = ring.vars();
    if vars.index_of(stem).is_none() {
        return stem.to_string();
    }
    (1..)
        .map(|k| format!("{stem}{k}"))
        .find(|n| vars.index_of(n).is_none())
        .unwrap()
}

/// Generators of `I ∩ Q[keep]`, read off a Groebner basis under an
/// elimination order that ranks the eliminated variables above the kept
/// ones. The result lives in the same ring as `ideal`.
pub fn elimination(ideal: &Ideal, keep: &[&str]) -> Result<Ideal, IdealError> {
    let ring = ideal.ring();
    let vars = ring.vars();
    let mut kept = Vec::new();
    for name in keep {
        kept.push(
            vars.index_of(name)
                .ok_or_else(|| crate::exactpoly::PolyError::UnknownVariable(name.to_string()))?,
        );
    }
    let eliminated: Vec<usize> = (0..vars.len()).filter(|i| !kept.contains(i)).collect();
    if eliminated.is_empty() {
        return Ok(ideal.clone());
    }
    let mut priority = eliminated.clone();
    // kept variables keep their relative rank from the ambient order
    priority.extend(ring.order().priority().iter().copied().filter(|i| kept.contains(i)));
    let order = MonomialOrder::new(OrderKind::Elimination { block: eliminated.len() }, priority)?;
    let elim_ring = PolyRing::with_order(vars.clone(), order)?;
    let gb = ideal.groebner_in(&elim_ring)?;
    let gens = gb
        .elements()
        .iter()
        .filter(|g| g.variables().iter().all(|v| !eliminated.contains(v)))
        .map(|g| g.to_ring(ring))
        .collect::<Result<Vec<_>, _>>()?;
    Ideal::new(ring, gens)
}

/// `ring` with one extra variable appended, plus that variable's name.
/// The new variable is ranked highest.
fn extended_ring(ring: &Arc<PolyRing>, stem: &str) -> Result<(Arc<PolyRing>, String), IdealError> {
    let name = fresh_variable(ring, stem);
    let mut names: Vec<String> = ring.vars().names().to_vec();
    names.push(name.clone());
    let n = ring.nvars();
    let mut priority = vec![n];
    priority.extend_from_slice(ring.order().priority());
    let kind = match ring.order().kind() {
        OrderKind::Lex => OrderKind::Lex,
        _ => OrderKind::Grevlex,
    };
    let vars = Arc::new(crate::exactpoly::VariableTable::new(&names)?);
    let order = MonomialOrder::new(kind, priority)?;
    Ok((PolyRing::with_order(vars, order)?, name))
}

fn lift(ideal: &Ideal, ring: &Arc<PolyRing>) -> Result<Vec<Polynomial>, IdealError> {
    ideal
        .generators()
        .iter()
        .map(|g| g.to_ring(ring).map_err(IdealError::from))
        .collect()
}

/// `I ∩ J` by eliminating `t` from `t I + (1 - t) J`.
pub fn intersect(a: &Ideal, b: &Ideal) -> Result<Ideal, IdealError> {
    let b = b.to_ring(a.ring())?;
    let (ext, t) = extended_ring(a.ring(), "_t")?;
    let tv = ext.var(&t)?;
    let one_minus_t = &ext.one() - &tv;
    let mut gens: Vec<Polynomial> = lift(a, &ext)?.iter().map(|g| &tv * g).collect();
    gens.extend(lift(&b, &ext)?.iter().map(|g| &one_minus_t * g));
    let joint = Ideal::new(&ext, gens)?;
    let keep: Vec<&str> = a.ring().vars().names().iter().map(String::as_str).collect();
    let elim = elimination(&joint, &keep)?;
    let gens = elim
        .generators()
        .iter()
        .map(|g| g.to_ring(a.ring()))
        .collect::<Result<Vec<_>, _>>()?;
    Ideal::new(a.ring(), gens)
}

/// `I : f = (1/f) (I ∩ <f>)`.
pub fn colon(ideal: &Ideal, f: &Polynomial) -> Result<Ideal, IdealError> {
    if f.is_zero() {
        return Err(IdealError::ZeroPolynomial("colon by the zero polynomial"));
    }
    let f = f.to_ring(ideal.ring())?;
    let principal = Ideal::new(ideal.ring(), vec![f.clone()])?;
    let inter = intersect(ideal, &principal)?;
    let mut gens = Vec::with_capacity(inter.generators().len());
    for g in inter.generators() {
        match g.exact_div(&f)? {
            Some(q) => gens.push(q),
            None => {
                return Err(IdealError::Internal(format!(
                    "intersection generator {g} is not divisible by {f}"
                )))
            }
        }
    }
    Ideal::new(ideal.ring(), gens)
}

/// `I : f^∞`, iterating the colon until the ideal stops growing.
pub fn saturate(ideal: &Ideal, f: &Polynomial) -> Result<Ideal, IdealError> {
    let mut current = ideal.clone();
    loop {
        let next = colon(&current, f)?;
        if current.contains_ideal(&next)? {
            return Ok(current);
        }
        current = next;
    }
}

pub fn product(a: &Ideal, b: &Ideal) -> Result<Ideal, IdealError> {
    let b = b.to_ring(a.ring())?;
    let mut gens = Vec::with_capacity(a.generators().len() * b.generators().len());
    for f in a.generators() {
        for g in b.generators() {
            gens.push(f * g);
        }
    }
    Ideal::new(a.ring(), gens)
}

pub fn sum(a: &Ideal, b: &Ideal) -> Result<Ideal, IdealError> {
    let b = b.to_ring(a.ring())?;
    let mut gens = a.generators().to_vec();
    gens.extend(b.generators().iter().cloned());
    Ideal::new(a.ring(), gens)
}

/// `f ∈ √I` iff `1 ∈ I + <1 - t f>` with a new variable `t`.
pub fn radical_membership(f: &Polynomial, ideal: &Ideal) -> Result<bool, IdealError> {
    if f.is_zero() {
        return Ok(true);
    }
    let (ext, t) = extended_ring(ideal.ring(), "_t")?;
    let tv = ext.var(&t)?;
    let f = f.to_ring(&ext)?;
    let mut gens = lift(ideal, &ext)?;
    gens.push(&ext.one() - &(&tv * &f));
    Ok(Ideal::new(&ext, gens)?.is_unit()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::OrderKind;

    fn xyz() -> Arc<PolyRing> {
        PolyRing::new(&["x", "y", "z"], OrderKind::Grevlex).unwrap()
    }

    fn id(r: &Arc<PolyRing>, g: &[&str]) -> Ideal {
        Ideal::from_strs(r, g).unwrap()
    }

    #[test]
    fn membership_basics() {
        let r = xyz();
        let i = id(&r, &["x"]);
        assert!(ideal_membership(&r.zero(), &i).unwrap());
        assert!(!ideal_membership(&r.one(), &i).unwrap());
        assert!(ideal_membership(&r.parse("x*y + x^2").unwrap(), &i).unwrap());
    }

    #[test]
    fn equality() {
        let r = xyz();
        assert!(ideal_equal(&id(&r, &["x"]), &id(&r, &["x", "x^2"])).unwrap());
        assert!(!ideal_equal(&id(&r, &["x"]), &id(&r, &["x^2"])).unwrap());
    }

    #[test]
    fn eliminate() {
        let r = xyz();
        let i = id(&r, &["x - y"]);
        let e = elimination(&i, &["y"]).unwrap();
        assert!(e.is_zero_ideal());
        let e = elimination(&i, &["x", "y", "z"]).unwrap();
        assert!(ideal_equal(&e, &i).unwrap());
        let j = id(&r, &["x - y", "y - z^2"]);
        let e = elimination(&j, &["x", "z"]).unwrap();
        assert!(ideal_equal(&e, &id(&r, &["x - z^2"])).unwrap());
    }

    #[test]
    fn intersections() {
        let r = xyz();
        let i = intersect(&id(&r, &["x"]), &id(&r, &["y"])).unwrap();
        assert!(ideal_equal(&i, &id(&r, &["x*y"])).unwrap());
        let a = id(&r, &["x^2 - y", "z"]);
        assert!(ideal_equal(&intersect(&a, &a).unwrap(), &a).unwrap());
    }

    #[test]
    fn colons() {
        let r = xyz();
        let i = id(&r, &["x*y"]);
        assert!(ideal_equal(&colon(&i, &r.var("x").unwrap()).unwrap(), &id(&r, &["y"])).unwrap());
        assert!(ideal_equal(&colon(&i, &r.one()).unwrap(), &i).unwrap());
        assert!(colon(&i, &r.zero()).is_err());
    }

    #[test]
    fn saturation() {
        let r = xyz();
        let i = id(&r, &["x^2*y"]);
        let s = saturate(&i, &r.var("y").unwrap()).unwrap();
        assert!(ideal_equal(&s, &id(&r, &["x^2"])).unwrap());
        let p = id(&r, &["x - z", "y"]);
        assert!(ideal_equal(&saturate(&p, &r.var("z").unwrap()).unwrap(), &p).unwrap());
        let q = id(&r, &["x^3*y^2 + x^2*y^3"]);
        let s = saturate(&q, &r.var("x").unwrap()).unwrap();
        assert!(ideal_equal(&s, &id(&r, &["x*y^2 + y^3"])).unwrap());
    }

    #[test]
    fn products() {
        let r = xyz();
        let p = product(&id(&r, &["x"]), &id(&r, &["y"])).unwrap();
        assert!(ideal_equal(&p, &id(&r, &["x*y"])).unwrap());
        let i = id(&r, &["x - z", "y^2"]);
        assert!(ideal_equal(&product(&i, &id(&r, &["1"])).unwrap(), &i).unwrap());
    }

    #[test]
    fn radicals() {
        let r = xyz();
        let x = r.var("x").unwrap();
        assert!(radical_membership(&x, &id(&r, &["x^2"])).unwrap());
        assert!(!radical_membership(&r.one(), &id(&r, &["x"])).unwrap());
        assert!(!radical_membership(&r.var("y").unwrap(), &id(&r, &["x^2"])).unwrap());
        assert!(radical_membership(&(&x + &r.var("y").unwrap()), &id(&r, &["x^3", "y^5"])).unwrap());
    }

    #[test]
    fn fresh_names() {
        let r = PolyRing::new(&["_t", "_t1"], OrderKind::Lex).unwrap();
        assert_eq!(fresh_variable(&r, "_t"), "_t2");
    }
}
