use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::{denominator_lcm, numerator_gcd};
use super::{parse_expr, Monomial, MonomialOrder, OrderKind, PolyError, Rational};

/// Ordered list of distinct variable names. Index `i` is the `i`-th entry
/// of every exponent vector built over this table.
#[derive(Debug, PartialEq, Eq)]
pub struct VariableTable {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl VariableTable {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self, PolyError> {
        let mut index = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            let n = n.as_ref();
            if n.is_empty() || !n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(PolyError::BadVariableName(n.to_string()));
            }
            if n.chars().next().unwrap().is_ascii_digit() {
                return Err(PolyError::BadVariableName(n.to_string()));
            }
            if index.insert(n.to_string(), i).is_some() {
                return Err(PolyError::DuplicateVariable(n.to_string()));
            }
        }
        Ok(VariableTable {
            names: names.iter().map(|s| s.as_ref().to_string()).collect(),
            index,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }
}

/// Polynomial ring `Q[vars]` with a fixed monomial order.
#[derive(Debug, PartialEq, Eq)]
pub struct PolyRing {
    vars: Arc<VariableTable>,
    order: MonomialOrder,
}

impl PolyRing {
    /// Ring whose order ranks the variables in table order.
    pub fn new<S: AsRef<str>>(names: &[S], kind: OrderKind) -> Result<Arc<Self>, PolyError> {
        let vars = Arc::new(VariableTable::new(names)?);
        let order = MonomialOrder::natural(kind, vars.len());
        Ok(Arc::new(PolyRing { vars, order }))
    }

    pub fn with_order(vars: Arc<VariableTable>, order: MonomialOrder) -> Result<Arc<Self>, PolyError> {
        if order.nvars() != vars.len() {
            return Err(PolyError::Dimension {
                expected: vars.len(),
                found: order.nvars(),
            });
        }
        Ok(Arc::new(PolyRing { vars, order }))
    }

    /// Same variables, order of `kind` with the given variables ranked from
    /// largest to smallest.
    pub fn reordered<S: AsRef<str>>(&self, kind: OrderKind, ranking: &[S]) -> Result<Arc<Self>, PolyError> {
        let priority = ranking
            .iter()
            .map(|n| {
                self.vars
                    .index_of(n.as_ref())
                    .ok_or_else(|| PolyError::UnknownVariable(n.as_ref().to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let order = MonomialOrder::new(kind, priority)?;
        Self::with_order(self.vars.clone(), order)
    }

    pub fn vars(&self) -> &Arc<VariableTable> {
        &self.vars
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn zero(self: &Arc<Self>) -> Polynomial {
        Polynomial {
            ring: self.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(self: &Arc<Self>) -> Polynomial {
        self.constant(Rational::one())
    }

    pub fn constant(self: &Arc<Self>, c: Rational) -> Polynomial {
        let terms = if c.is_zero() {
            Vec::new()
        } else {
            vec![(c, Monomial::one(self.nvars()))]
        };
        Polynomial {
            ring: self.clone(),
            terms,
        }
    }

    pub fn var(self: &Arc<Self>, name: &str) -> Result<Polynomial, PolyError> {
        let i = self
            .vars
            .index_of(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        Ok(self.var_at(i))
    }

    pub fn var_at(self: &Arc<Self>, i: usize) -> Polynomial {
        Polynomial {
            ring: self.clone(),
            terms: vec![(Rational::one(), Monomial::var(self.nvars(), i))],
        }
    }

    pub fn monomial(self: &Arc<Self>, c: Rational, m: Monomial) -> Polynomial {
        Polynomial::from_terms(self, vec![(c, m)])
    }

    pub fn parse(self: &Arc<Self>, text: &str) -> Result<Polynomial, PolyError> {
        parse_expr(text)?.to_poly(self)
    }

    /// Parses each line that is not blank or a `#` comment.
    pub fn parse_lines(self: &Arc<Self>, text: &str) -> Result<Vec<Polynomial>, PolyError> {
        text.lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| self.parse(l))
            .collect()
    }
}

pub type Term = (Rational, Monomial);

/// Sparse polynomial with rational coefficients. Terms are kept sorted in
/// strictly descending order under the ring's monomial order, with no zero
/// coefficients.
#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: Vec<Term>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    /// Builds a polynomial from arbitrary terms: sorts, merges duplicate
    /// monomials and drops zeros.
    pub fn from_terms(ring: &Arc<PolyRing>, mut terms: Vec<Term>) -> Polynomial {
        let order = ring.order();
        terms.sort_by(|a, b| order.compare(&b.1, &a.1));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for (c, m) in terms {
            match out.last_mut() {
                Some(last) if last.1 == m => last.0 += c,
                _ => out.push((c, m)),
            }
        }
        out.retain(|t| !t.0.is_zero());
        Polynomial {
            ring: ring.clone(),
            terms: out,
        }
    }

    /// Wraps terms already in strictly descending order with nonzero
    /// coefficients.
    pub(crate) fn from_sorted_terms(ring: &Arc<PolyRing>, terms: Vec<Term>) -> Polynomial {
        debug_assert!(terms.windows(2).all(|w| ring.order().compare(&w[0].1, &w[1].1) == Ordering::Greater));
        debug_assert!(terms.iter().all(|t| !t.0.is_zero()));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Removes and returns the leading term.
    pub fn pop_leading(&mut self) -> Option<Term> {
        if self.terms.is_empty() {
            None
        } else {
            Some(self.terms.remove(0))
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.terms.first().map(|t| &t.0)
    }

    /// `Some(c)` for a constant polynomial (including zero).
    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(c, m)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.constant_value().is_some()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.1.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|t| t.1.exponent(var)).max().unwrap_or(0)
    }

    /// Indices of variables that occur in some term.
    pub fn variables(&self) -> BTreeSet<usize> {
        self.terms.iter().flat_map(|t| t.1.support()).collect()
    }

    pub fn same_ring(&self, other: &Polynomial) -> Result<(), PolyError> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else if self.ring.vars != other.ring.vars {
            Err(PolyError::RingMismatch(format!(
                "variables {:?} vs {:?}",
                self.ring.vars.names(),
                other.ring.vars.names()
            )))
        } else {
            Err(PolyError::RingMismatch("same variables, different monomial orders".into()))
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.same_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.same_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.same_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(self.ring.zero());
        }
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (a, ma) in &self.terms {
            for (b, mb) in &other.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(Rational::zero) += a * b;
            }
        }
        Ok(Polynomial::from_terms(&self.ring, acc.into_iter().map(|(m, c)| (c, m)).collect()))
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (a, b) = (&self.terms[i], &other.terms[j]);
            match order.compare(&a.1, &b.1) {
                Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(if negate { (-&b.0, b.1.clone()) } else { b.clone() });
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a.0 - &b.0 } else { &a.0 + &b.0 };
                    if !c.is_zero() {
                        out.push((c, a.1.clone()));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(
            other.terms[j..]
                .iter()
                .map(|b| if negate { (-&b.0, b.1.clone()) } else { b.clone() }),
        );
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    /// `self - c * m * g`, the elementary reduction step.
    pub fn sub_scaled(&self, c: &Rational, m: &Monomial, g: &Polynomial) -> Polynomial {
        let shifted = g.mul_term(c, m);
        self.merge(&shifted, true)
    }

    pub fn mul_term(&self, c: &Rational, m: &Monomial) -> Polynomial {
        if c.is_zero() {
            return self.ring.zero();
        }
        // multiplication by a monomial preserves the order of terms
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(a, ma)| (a * c, ma.mul(m))).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        self.mul_term(c, &Monomial::one(self.ring.nvars()))
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = self.ring.one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Integer coefficients with gcd 1 and a positive leading coefficient.
    pub fn primitive(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let l = denominator_lcm(self.terms.iter().map(|t| &t.0));
        let g = numerator_gcd(self.terms.iter().map(|t| &t.0));
        let mut f = Rational::new(l, g);
        if self.terms[0].0.is_negative() {
            f = -f;
        }
        self.scale(&f)
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Polynomial) -> Result<Option<Polynomial>, PolyError> {
        self.same_ring(d)?;
        let Some((dc, dm)) = d.leading_term() else {
            return Err(PolyError::DivisionByZero);
        };
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((c, m)) = rem.leading_term().cloned() {
            let Some(q) = dm.quotient_of(&m) else {
                return Ok(None);
            };
            let qc = &c / dc;
            rem = rem.sub_scaled(&qc, &q, d);
            quot.push((qc, q));
        }
        Ok(Some(Polynomial::from_terms(&self.ring, quot)))
    }

    /// Simultaneous substitution of the variables in `assignment`
    /// (indices into the variable table). Replacement polynomials must live
    /// in the same ring; unassigned variables are kept.
    pub fn substitute(&self, assignment: &HashMap<usize, Polynomial>) -> Result<Polynomial, PolyError> {
        for (&v, p) in assignment {
            if v >= self.ring.nvars() {
                return Err(PolyError::Dimension {
                    expected: self.ring.nvars(),
                    found: v + 1,
                });
            }
            self.same_ring(p)?;
        }
        let n = self.ring.nvars();
        let mut powers: HashMap<(usize, u32), Polynomial> = HashMap::new();
        let mut acc = self.ring.zero();
        for (c, m) in &self.terms {
            let mut kept = m.exponents().to_vec();
            let mut factor = self.ring.one();
            for (v, e) in m.exponents().iter().enumerate().take(n) {
                if *e == 0 {
                    continue;
                }
                if let Some(p) = assignment.get(&v) {
                    kept[v] = 0;
                    let pw = powers.entry((v, *e)).or_insert_with(|| p.pow(*e)).clone();
                    factor = &factor * &pw;
                }
            }
            acc = &acc + &factor.mul_term(c, &Monomial::from_exponents(kept));
        }
        Ok(acc)
    }

    /// Substitution keyed by variable name with rational or polynomial values.
    pub fn substitute_named(&self, assignment: &[(&str, Polynomial)]) -> Result<Polynomial, PolyError> {
        let mut map = HashMap::new();
        for (name, p) in assignment {
            let i = self
                .ring
                .vars
                .index_of(name)
                .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
            map.insert(i, p.clone());
        }
        self.substitute(&map)
    }

    /// Evaluates at a full point.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational, PolyError> {
        if point.len() != self.ring.nvars() {
            return Err(PolyError::Dimension {
                expected: self.ring.nvars(),
                found: point.len(),
            });
        }
        let mut total = Rational::zero();
        for (c, m) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.exponents().iter().enumerate() {
                for _ in 0..*e {
                    t *= &point[v];
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Re-expresses the polynomial in `ring`, matching variables by name.
    /// Fails if a variable that actually occurs is missing from `ring`.
    pub fn to_ring(&self, ring: &Arc<PolyRing>) -> Result<Polynomial, PolyError> {
        if Arc::ptr_eq(&self.ring, ring) {
            return Ok(self.clone());
        }
        let map: Vec<Option<usize>> = self
            .ring
            .vars
            .names()
            .iter()
            .map(|n| ring.vars.index_of(n))
            .collect();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (c, m) in &self.terms {
            let mut e = vec![0; ring.nvars()];
            for (v, k) in m.exponents().iter().enumerate() {
                if *k == 0 {
                    continue;
                }
                match map[v] {
                    Some(t) => e[t] = *k,
                    None => {
                        return Err(PolyError::UnknownVariable(self.ring.vars.name(v).to_string()))
                    }
                }
            }
            terms.push((c.clone(), Monomial::from_exponents(e)));
        }
        Ok(Polynomial::from_terms(ring, terms))
    }

    pub fn content_denominator(&self) -> BigInt {
        denominator_lcm(self.terms.iter().map(|t| &t.0))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (c, m)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mono: Vec<String> = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .map(|(v, e)| {
                    let name = self.ring.vars.name(v);
                    if *e == 1 {
                        name.to_string()
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{a}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            /// Panics if the operands live in different rings; use the
            /// `checked_*` methods to get an error instead.
            fn $m(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("polynomial operands from different rings")
            }
        }
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(c, m)| (-c, m.clone())).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}
