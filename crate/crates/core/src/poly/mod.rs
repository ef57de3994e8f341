//! Sparse multivariate polynomials over a finite field.

mod monomial;
mod reducer;
mod text;
pub(crate) mod univariate;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::field::{FieldElement, FieldSpec};

pub use monomial::{Monomial, MonomialOrder, VarTable};
pub use reducer::Reducer;
pub(crate) use text::{format_const_factor as text_const_factor, split_sign as text_split_sign};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomials belong to different rings")]
    RingMismatch,
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("no value bound for variable `{0}`")]
    MissingBinding(String),
    #[error("coefficient belongs to a different field")]
    FieldMismatch,
    #[error("{0}")]
    Parse(String),
}

struct RingInner {
    field: FieldSpec,
    vars: VarTable,
    order: MonomialOrder,
}

/// Polynomial ring `F_q[x_1, .., x_n]` with a fixed term order.
#[derive(Clone)]
pub struct Ring(Arc<RingInner>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.field == other.0.field && self.0.vars == other.0.vars && self.0.order == other.0.order)
    }
}

impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{:?} {:?}", self.0.field, self.0.vars, self.0.order)
    }
}

impl Ring {
    pub fn new(field: FieldSpec, vars: VarTable, order: MonomialOrder) -> Ring {
        Ring(Arc::new(RingInner { field, vars, order }))
    }

    /// Lex ring over the given variables, first name highest.
    pub fn lex<S: AsRef<str>>(field: &FieldSpec, names: &[S]) -> Result<Ring, PolyError> {
        let vars = VarTable::new(names).map_err(PolyError::DuplicateVariable)?;
        Ok(Ring::new(field.clone(), vars, MonomialOrder::Lex))
    }

    pub fn field(&self) -> &FieldSpec {
        &self.0.field
    }

    pub fn vars(&self) -> &VarTable {
        &self.0.vars
    }

    pub fn order(&self) -> MonomialOrder {
        self.0.order
    }

    pub fn nvars(&self) -> usize {
        self.0.vars.len()
    }

    pub fn with_order(&self, order: MonomialOrder) -> Ring {
        Ring::new(self.field().clone(), self.vars().clone(), order)
    }

    pub fn var_index(&self, name: &str) -> Result<usize, PolyError> {
        self.vars().index(name).ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }

    #[inline]
    pub(crate) fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.0.order.cmp(a, b)
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial { ring: self.clone(), terms: Vec::new() }
    }

    pub fn one(&self) -> Polynomial {
        self.constant_raw(1)
    }

    pub fn constant(&self, c: &FieldElement) -> Result<Polynomial, PolyError> {
        if c.field() != self.field() {
            return Err(PolyError::FieldMismatch);
        }
        Ok(self.constant_raw(c.code()))
    }

    pub(crate) fn constant_raw(&self, code: u32) -> Polynomial {
        let terms = if code == 0 { Vec::new() } else { vec![(Monomial::one(self.nvars()), code)] };
        Polynomial { ring: self.clone(), terms }
    }

    pub fn var(&self, name: &str) -> Result<Polynomial, PolyError> {
        let i = self.var_index(name)?;
        Ok(self.monomial(Monomial::variable(self.nvars(), i, 1), 1))
    }

    pub(crate) fn monomial(&self, m: Monomial, code: u32) -> Polynomial {
        let terms = if code == 0 { Vec::new() } else { vec![(m, code)] };
        Polynomial { ring: self.clone(), terms }
    }

    /// `x^q - x` for the named variable.
    pub fn field_polynomial(&self, name: &str) -> Result<Polynomial, PolyError> {
        let i = self.var_index(name)?;
        Ok(self.field_polynomial_at(i))
    }

    pub(crate) fn field_polynomial_at(&self, i: usize) -> Polynomial {
        let n = self.nvars();
        let q = self.field().q();
        let minus_one = self.field().neg_raw(1);
        self.poly_from_terms(vec![(Monomial::variable(n, i, q), 1), (Monomial::variable(n, i, 1), minus_one)])
    }

    /// Builds a polynomial from arbitrary terms: like terms are combined, zero
    /// coefficients dropped and the result sorted.
    pub(crate) fn poly_from_terms(&self, terms: Vec<(Monomial, u32)>) -> Polynomial {
        let mut map: HashMap<Monomial, u32> = HashMap::with_capacity(terms.len());
        let field = self.field();
        for (m, c) in terms {
            let e = map.entry(m).or_insert(0);
            *e = field.add_raw(*e, c);
        }
        self.poly_from_map(map)
    }

    pub(crate) fn poly_from_map(&self, map: HashMap<Monomial, u32>) -> Polynomial {
        let mut terms: Vec<(Monomial, u32)> = map.into_iter().filter(|(_, c)| *c != 0).collect();
        terms.sort_unstable_by(|a, b| self.cmp(&b.0, &a.0));
        Polynomial { ring: self.clone(), terms }
    }

    /// Polynomial from already sorted, nonzero, duplicate-free terms.
    pub(crate) fn poly_from_sorted(&self, terms: Vec<(Monomial, u32)>) -> Polynomial {
        debug_assert!(terms.windows(2).all(|w| self.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|t| t.1 != 0));
        Polynomial { ring: self.clone(), terms }
    }

    /// Parses the polynomial text syntax (`+ - * ^`, parentheses, constants in the
    /// field's rendering).
    pub fn parse(&self, text: &str) -> Result<Polynomial, PolyError> {
        text::parse(self, text)
    }
}

/// A point of `F_q^n`: values for named variables, in insertion order.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Assignment {
    entries: Vec<(String, FieldElement)>,
}

impl Assignment {
    pub fn new() -> Assignment {
        Assignment::default()
    }

    /// Sets a value, replacing any previous binding of the same name.
    pub fn set(&mut self, name: &str, value: FieldElement) {
        match self.entries.iter_mut().find(|(n, _)| n == name) {
            Some(entry) => entry.1 = value,
            None => self.entries.push((name.to_string(), value)),
        }
    }

    pub fn with(mut self, name: &str, value: FieldElement) -> Assignment {
        self.set(name, value);
        self
    }

    pub fn get(&self, name: &str) -> Option<&FieldElement> {
        self.entries.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &FieldElement)> {
        self.entries.iter().map(|(n, v)| (n.as_str(), v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|(n, v)| format!("{n} = {v}")).collect();
        f.write_str(&parts.join(", "))
    }
}

/// Sparse polynomial. Terms are stored with nonzero coefficient codes, sorted
/// descending under the ring's order.
#[derive(Clone)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<(Monomial, u32)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::format(self))
    }
}

impl Polynomial {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn field(&self) -> &FieldSpec {
        self.ring.field()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero constant or zero.
    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, FieldElement)> + '_ {
        self.terms.iter().map(|(m, c)| (m, self.field().element(*c)))
    }

    pub(crate) fn raw_terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn leading_term(&self) -> Result<(&Monomial, FieldElement), PolyError> {
        self.terms.first().map(|(m, c)| (m, self.field().element(*c))).ok_or(PolyError::ZeroPolynomial)
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub(crate) fn leading_coeff_raw(&self) -> u32 {
        self.terms.first().map_or(0, |t| t.1)
    }

    /// Constant value if the polynomial is constant.
    pub fn constant_value(&self) -> Option<FieldElement> {
        match self.terms.as_slice() {
            [] => Some(self.field().zero()),
            [(m, c)] if m.is_one() => Some(self.field().element(*c)),
            _ => None,
        }
    }

    /// Indices of variables that occur.
    pub fn support(&self) -> Vec<usize> {
        let n = self.ring.nvars();
        (0..n).filter(|&i| self.terms.iter().any(|(m, _)| m.exponent(i) > 0)).collect()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exponent(var)).max().unwrap_or(0)
    }

    fn check_ring(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(PolyError::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        Ok(self.add_scaled(other, 1, None))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        Ok(self.add_scaled(other, self.field().neg_raw(1), None))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        Ok(self.mul_raw(other))
    }

    pub fn neg(&self) -> Polynomial {
        self.scale_raw(self.field().neg_raw(1))
    }

    pub fn scale(&self, c: &FieldElement) -> Result<Polynomial, PolyError> {
        if c.field() != self.field() {
            return Err(PolyError::FieldMismatch);
        }
        Ok(self.scale_raw(c.code()))
    }

    pub(crate) fn scale_raw(&self, c: u32) -> Polynomial {
        if c == 0 {
            return self.ring.zero();
        }
        let f = self.field();
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), f.mul_raw(*a, c))).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    /// Multiplies every term by a monomial and a coefficient.
    pub(crate) fn mul_term(&self, m: &Monomial, c: u32) -> Polynomial {
        if c == 0 {
            return self.ring.zero();
        }
        let f = self.field();
        let terms = self.terms.iter().map(|(t, a)| (t.mul(m), f.mul_raw(*a, c))).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    /// `self + c * t * other` by merging sorted term lists.
    pub(crate) fn add_scaled(&self, other: &Polynomial, c: u32, t: Option<&Monomial>) -> Polynomial {
        let f = self.field();
        let ring = &self.ring;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b =
            other.terms.iter().map(|(m, k)| (t.map_or_else(|| m.clone(), |t| m.mul(t)), f.mul_raw(*k, c))).peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => out.push(b.next().unwrap()),
                (Some(x), Some(y)) => match ring.cmp(&x.0, &y.0) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => out.push(b.next().unwrap()),
                    Ordering::Equal => {
                        let (m, k1) = a.next().unwrap().clone();
                        let (_, k2) = b.next().unwrap();
                        let s = f.add_raw(k1, k2);
                        if s != 0 {
                            out.push((m, s));
                        }
                    }
                },
            }
        }
        out.retain(|t| t.1 != 0);
        Polynomial { ring: ring.clone(), terms: out }
    }

    pub(crate) fn mul_raw(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return self.ring.zero();
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].0, other.terms[0].1);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].0, self.terms[0].1);
        }
        let f = self.field();
        let mut map: HashMap<Monomial, u32> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let e = map.entry(ma.mul(mb)).or_insert(0);
                *e = f.add_raw(*e, f.mul_raw(*ca, *cb));
            }
        }
        self.ring.poly_from_map(map)
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut result = self.ring.one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_raw(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_raw(&base);
            }
        }
        result
    }

    /// Divides by the leading coefficient. Zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.field().inv_raw(self.leading_coeff_raw()) {
            Some(inv) if inv != 1 => self.scale_raw(inv),
            _ => self.clone(),
        }
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff_raw() == 1
    }

    /// Multivariate division remainder. At each step the largest reducible term
    /// is reduced by the first generator (in list order) whose leading monomial
    /// divides it.
    pub fn normal_form(&self, basis: &[Polynomial]) -> Result<Polynomial, PolyError> {
        for g in basis {
            self.check_ring(g)?;
        }
        let basis: Vec<&Polynomial> = basis.iter().filter(|g| !g.is_zero()).collect();
        reduce_full(self, &basis, &mut |_| Ok::<(), std::convert::Infallible>(())).map_err(|e| match e {})
    }

    /// `(L/LT(f)) f - (L/LT(g)) g` with `L = lcm(LM(f), LM(g))`.
    pub fn s_polynomial(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        Ok(s_poly_raw(self, other))
    }

    /// Value at a point. Only the variables that occur must be bound.
    pub fn evaluate(&self, point: &Assignment) -> Result<FieldElement, PolyError> {
        let field = self.field();
        let mut values = vec![0u32; self.ring.nvars()];
        for i in self.support() {
            let name = self.ring.vars().name(i);
            let v = point.get(name).ok_or_else(|| PolyError::MissingBinding(name.to_string()))?;
            if v.field() != field {
                return Err(PolyError::FieldMismatch);
            }
            values[i] = v.code();
        }
        Ok(field.element(self.evaluate_raw(&values)))
    }

    /// Value at a point given as codes indexed by variable rank.
    pub fn evaluate_raw(&self, values: &[u32]) -> u32 {
        let f = self.field();
        let mut acc = 0;
        for (m, c) in &self.terms {
            let mut t = *c;
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = f.mul_raw(t, f.pow_raw(values[i], e as u64));
                    if t == 0 {
                        break;
                    }
                }
            }
            acc = f.add_raw(acc, t);
        }
        acc
    }

    /// Replaces every exponent `e >= q` using `x^q = x`, giving per-variable degree
    /// below `q`; congruent modulo the field polynomials.
    pub fn reduce_exponents_by_field_polys(&self) -> Polynomial {
        let q = self.field().q();
        if self.terms.iter().all(|(m, _)| m.exponents().iter().all(|&e| e < q)) {
            return self.clone();
        }
        let terms = self.terms.iter().map(|(m, c)| (m.map_exponents(|e| reduce_exponent(e, q)), *c)).collect();
        self.ring.poly_from_terms(terms)
    }

    /// Re-expresses the polynomial in another ring over the same field, matching
    /// variables by name.
    pub fn map_into(&self, target: &Ring) -> Result<Polynomial, PolyError> {
        if target.field() != self.field() {
            return Err(PolyError::FieldMismatch);
        }
        let support = self.support();
        let mut mapping = Vec::with_capacity(support.len());
        for &i in &support {
            mapping.push((i, target.var_index(self.ring.vars().name(i))?));
        }
        let n = target.nvars();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0; n];
                for &(from, to) in &mapping {
                    e[to] = m.exponent(from);
                }
                (Monomial::from_exponents(e), *c)
            })
            .collect();
        Ok(target.poly_from_terms(terms))
    }

    /// Dense coefficients (low-to-high) if the polynomial only involves `var`.
    pub fn to_univariate(&self, var: usize) -> Option<Vec<u32>> {
        let mut out = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exponent(var) as usize;
            if m.degree() != e as u64 {
                return None;
            }
            if out.len() <= e {
                out.resize(e + 1, 0);
            }
            out[e] = *c;
        }
        Some(out)
    }

    pub(crate) fn from_univariate(ring: &Ring, var: usize, coeffs: &[u32]) -> Polynomial {
        let n = ring.nvars();
        let terms = coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| **c != 0)
            .map(|(e, c)| (Monomial::variable(n, var, e as u32), *c))
            .collect();
        ring.poly_from_terms(terms)
    }
}

#[inline]
pub(crate) fn reduce_exponent(e: u32, q: u32) -> u32 {
    if e < q {
        e
    } else {
        (e - 1) % (q - 1) + 1
    }
}

pub(crate) fn s_poly_raw(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let field = f.field();
    let (mf, cf) = (&f.terms[0].0, f.terms[0].1);
    let (mg, cg) = (&g.terms[0].0, g.terms[0].1);
    let l = mf.lcm(mg);
    let tf = l.div(mf).unwrap();
    let tg = l.div(mg).unwrap();
    let a = field.inv_raw(cf).unwrap();
    let b = field.neg_raw(field.inv_raw(cg).unwrap());
    // a*tf*f + b*tg*g, with leading terms cancelling
    let left = f.mul_term(&tf, a);
    left.add_scaled(g, b, Some(&tg))
}

mod heap {
    use super::*;

    /// Binary max-heap of terms under a runtime term order.
    pub(crate) struct TermHeap<'a> {
        ring: &'a Ring,
        items: Vec<(Monomial, u32)>,
    }

    impl<'a> TermHeap<'a> {
        pub fn new(ring: &'a Ring, items: Vec<(Monomial, u32)>) -> Self {
            let mut h = TermHeap { ring, items: Vec::with_capacity(items.len()) };
            for it in items {
                h.push(it.0, it.1);
            }
            h
        }

        pub fn len(&self) -> usize {
            self.items.len()
        }

        fn greater(&self, i: usize, j: usize) -> bool {
            self.ring.cmp(&self.items[i].0, &self.items[j].0) == Ordering::Greater
        }

        pub fn push(&mut self, m: Monomial, c: u32) {
            self.items.push((m, c));
            let mut i = self.items.len() - 1;
            while i > 0 {
                let parent = (i - 1) / 2;
                if self.greater(i, parent) {
                    self.items.swap(i, parent);
                    i = parent;
                } else {
                    break;
                }
            }
        }

        fn pop(&mut self) -> Option<(Monomial, u32)> {
            let n = self.items.len();
            if n == 0 {
                return None;
            }
            self.items.swap(0, n - 1);
            let top = self.items.pop();
            let n = n - 1;
            let mut i = 0;
            loop {
                let (l, r) = (2 * i + 1, 2 * i + 2);
                let mut largest = i;
                if l < n && self.greater(l, largest) {
                    largest = l;
                }
                if r < n && self.greater(r, largest) {
                    largest = r;
                }
                if largest == i {
                    break;
                }
                self.items.swap(i, largest);
                i = largest;
            }
            top
        }

        /// Pops the largest monomial with all its duplicates summed; skips
        /// monomials whose coefficients cancel.
        pub fn pop_combined(&mut self) -> Option<(Monomial, u32)> {
            let field = self.ring.field();
            while let Some((m, mut c)) = self.pop() {
                while self.items.first().is_some_and(|t| t.0 == m) {
                    let (_, d) = self.pop().unwrap();
                    c = field.add_raw(c, d);
                }
                if c != 0 {
                    return Some((m, c));
                }
            }
            None
        }
    }
}

/// Full reduction of `f` by `basis` (nonzero polynomials). `tick` sees the
/// number of pending terms before every step and aborts the reduction by
/// returning an error.
pub(crate) fn reduce_full<E>(
    f: &Polynomial,
    basis: &[&Polynomial],
    tick: &mut dyn FnMut(usize) -> Result<(), E>,
) -> Result<Polynomial, E> {
    if f.is_zero() || basis.is_empty() {
        return Ok(f.clone());
    }
    let ring = f.ring();
    let field = ring.field();
    let leads: Vec<(&Monomial, u64, u32)> = basis
        .iter()
        .map(|g| {
            let (m, c) = &g.terms[0];
            (m, m.support_mask(), field.inv_raw(*c).unwrap())
        })
        .collect();
    let mut heap = heap::TermHeap::new(ring, f.terms.clone());
    let mut rem = Vec::new();
    while let Some((m, c)) = heap.pop_combined() {
        tick(heap.len())?;
        let mask = m.support_mask();
        let hit = leads.iter().position(|(lm, lmask, _)| lmask & !mask == 0 && lm.divides(&m));
        match hit {
            Some(k) => {
                let g = basis[k];
                let t = m.div(leads[k].0).unwrap();
                let factor = field.neg_raw(field.mul_raw(c, leads[k].2));
                for (gm, gc) in &g.terms[1..] {
                    heap.push(gm.mul(&t), field.mul_raw(*gc, factor));
                }
            }
            None => rem.push((m, c)),
        }
    }
    Ok(ring.poly_from_sorted(rem))
}

macro_rules! forward_poly_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait for &Polynomial {
            type Output = Polynomial;

            /// Panics when the operands live in different rings.
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("ring mismatch")
            }
        }
    };
}

forward_poly_op!(Add, add, checked_add);
forward_poly_op!(Sub, sub, checked_sub);
forward_poly_op!(Mul, mul, checked_mul);
