//! Unexpanded polynomial expressions over the signature `0, 1, +, *`.
//!
//! Atoms of formulas keep their terms in this factored form; expansion into a
//! [`Polynomial`] happens only when a ring (and possibly a [`Reducer`]) is known.
//! Products such as `(1 - y_1)^3 * .. * (1 - y_18)^3` therefore stay small until
//! they can be reduced on the fly.

use std::collections::HashMap;
use std::fmt;

use crate::field::{FieldElement, FieldSpec};
use crate::poly::{PolyError, Polynomial, Reducer, Ring};

#[derive(Clone, PartialEq, Eq)]
pub enum Term {
    Const(FieldElement),
    Var(String),
    Add(Vec<Term>),
    Mul(Vec<Term>),
    Neg(Box<Term>),
    Pow(Box<Term>, u32),
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn constant(c: FieldElement) -> Term {
        Term::Const(c)
    }

    pub fn int(field: &FieldSpec, n: i64) -> Term {
        Term::Const(field.from_int(n))
    }

    fn as_const(&self) -> Option<&FieldElement> {
        match self {
            Term::Const(c) => Some(c),
            _ => None,
        }
    }

    /// Sum; folds to a constant when every summand is constant.
    pub fn sum(terms: Vec<Term>) -> Term {
        if terms.len() == 1 {
            return terms.into_iter().next().unwrap();
        }
        if !terms.is_empty() && terms.iter().all(|t| t.as_const().is_some()) {
            let mut it = terms.iter().filter_map(Term::as_const);
            let first = it.next().unwrap().clone();
            return Term::Const(it.fold(first, |a, b| &a + b));
        }
        Term::Add(terms)
    }

    /// Product; folds to a constant when every factor is constant.
    pub fn product(terms: Vec<Term>) -> Term {
        if terms.len() == 1 {
            return terms.into_iter().next().unwrap();
        }
        if !terms.is_empty() && terms.iter().all(|t| t.as_const().is_some()) {
            let mut it = terms.iter().filter_map(Term::as_const);
            let first = it.next().unwrap().clone();
            return Term::Const(it.fold(first, |a, b| &a * b));
        }
        Term::Mul(terms)
    }

    pub fn negated(t: Term) -> Term {
        match t {
            Term::Const(c) => Term::Const(c.neg()),
            t => Term::Neg(Box::new(t)),
        }
    }

    pub fn power(t: Term, e: u32) -> Term {
        match t {
            Term::Const(c) => Term::Const(c.pow(e as u64)),
            t => Term::Pow(Box::new(t), e),
        }
    }

    /// `a - b`, flattening a sum on the left.
    pub fn difference(a: Term, b: Term) -> Term {
        let mut parts = match a {
            Term::Add(v) => v,
            t => vec![t],
        };
        parts.push(Term::negated(b));
        Term::sum(parts)
    }

    pub fn is_zero_const(&self) -> bool {
        matches!(self, Term::Const(c) if c.is_zero())
    }

    /// Variables in order of first occurrence.
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    pub(crate) fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Term::Const(_) => {}
            Term::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Term::Add(ts) | Term::Mul(ts) => ts.iter().for_each(|t| t.collect_vars(out)),
            Term::Neg(t) | Term::Pow(t, _) => t.collect_vars(out),
        }
    }

    pub fn rename(&self, map: &HashMap<String, String>) -> Term {
        match self {
            Term::Var(v) => Term::Var(map.get(v).cloned().unwrap_or_else(|| v.clone())),
            Term::Const(_) => self.clone(),
            Term::Add(ts) => Term::Add(ts.iter().map(|t| t.rename(map)).collect()),
            Term::Mul(ts) => Term::Mul(ts.iter().map(|t| t.rename(map)).collect()),
            Term::Neg(t) => Term::Neg(Box::new(t.rename(map))),
            Term::Pow(t, e) => Term::Pow(Box::new(t.rename(map)), *e),
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Term::Const(_) | Term::Var(_) => 1,
            Term::Add(ts) | Term::Mul(ts) => 1 + ts.iter().map(Term::size).sum::<usize>(),
            Term::Neg(t) | Term::Pow(t, _) => 1 + t.size(),
        }
    }

    /// Plain expansion, no reduction of exponents.
    pub fn to_polynomial(&self, ring: &Ring) -> Result<Polynomial, PolyError> {
        Ok(match self {
            Term::Const(c) => ring.constant(c)?,
            Term::Var(v) => ring.var(v)?,
            Term::Add(ts) => {
                let mut acc = ring.zero();
                for t in ts {
                    acc = acc.add_scaled(&t.to_polynomial(ring)?, 1, None);
                }
                acc
            }
            Term::Mul(ts) => {
                let mut acc = ring.one();
                for t in ts {
                    acc = acc.mul_raw(&t.to_polynomial(ring)?);
                }
                acc
            }
            Term::Neg(t) => t.to_polynomial(ring)?.neg(),
            Term::Pow(t, e) => t.to_polynomial(ring)?.pow(*e),
        })
    }

    /// Expansion with every intermediate product reduced by `reducer`.
    pub fn expand(&self, reducer: &Reducer) -> Result<Polynomial, PolyError> {
        let ring = reducer.ring();
        Ok(match self {
            Term::Const(c) => ring.constant(c)?,
            Term::Var(v) => reducer.reduce(&ring.var(v)?),
            Term::Add(ts) => {
                let mut acc = ring.zero();
                for t in ts {
                    acc = acc.add_scaled(&t.expand(reducer)?, 1, None);
                }
                acc
            }
            Term::Mul(ts) => {
                let factors = ts.iter().map(|t| t.expand(reducer)).collect::<Result<Vec<_>, _>>()?;
                product_smallest_first(reducer, factors)
            }
            Term::Neg(t) => t.expand(reducer)?.neg(),
            Term::Pow(t, e) => match &**t {
                Term::Mul(ts) => {
                    let factors =
                        ts.iter()
                            .map(|f| Ok(reducer.pow(&f.expand(reducer)?, *e)))
                            .collect::<Result<Vec<_>, PolyError>>()?;
                    product_smallest_first(reducer, factors)
                }
                inner => reducer.pow(&inner.expand(reducer)?, *e),
            },
        })
    }

    /// Sum-of-monomials term for a polynomial.
    pub fn from_polynomial(p: &Polynomial) -> Term {
        let field = p.field();
        let ring = p.ring();
        let mut summands = Vec::new();
        for (m, c) in p.terms() {
            let negative = !m.is_one() && is_negative_const(&c);
            let c = if negative { c.neg() } else { c };
            let mut factors = Vec::new();
            if !c.is_one() || m.is_one() {
                factors.push(Term::Const(c));
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                let v = Term::var(ring.vars().name(i));
                match e {
                    0 => {}
                    1 => factors.push(v),
                    _ => factors.push(Term::Pow(Box::new(v), e)),
                }
            }
            let body = if factors.len() == 1 { factors.pop().unwrap() } else { Term::Mul(factors) };
            summands.push(if negative { Term::Neg(Box::new(body)) } else { body });
        }
        match summands.len() {
            0 => Term::Const(field.zero()),
            1 => summands.pop().unwrap(),
            _ => Term::Add(summands),
        }
    }

    /// Compiles against a variable index map for fast repeated evaluation.
    pub fn compile(&self, index: &dyn Fn(&str) -> Option<usize>) -> Result<CompiledTerm, String> {
        Ok(match self {
            Term::Const(c) => CompiledTerm::Const(c.code()),
            Term::Var(v) => CompiledTerm::Var(index(v).ok_or_else(|| v.clone())?),
            Term::Add(ts) => CompiledTerm::Add(ts.iter().map(|t| t.compile(index)).collect::<Result<_, _>>()?),
            Term::Mul(ts) => CompiledTerm::Mul(ts.iter().map(|t| t.compile(index)).collect::<Result<_, _>>()?),
            Term::Neg(t) => CompiledTerm::Neg(Box::new(t.compile(index)?)),
            Term::Pow(t, e) => CompiledTerm::Pow(Box::new(t.compile(index)?), *e),
        })
    }
}

/// A term with variables resolved to slots of a value array.
#[derive(Clone, Debug)]
pub enum CompiledTerm {
    Const(u32),
    Var(usize),
    Add(Vec<CompiledTerm>),
    Mul(Vec<CompiledTerm>),
    Neg(Box<CompiledTerm>),
    Pow(Box<CompiledTerm>, u32),
}

impl CompiledTerm {
    pub fn eval(&self, field: &FieldSpec, values: &[u32]) -> u32 {
        match self {
            CompiledTerm::Const(c) => *c,
            CompiledTerm::Var(i) => values[*i],
            CompiledTerm::Add(ts) => ts.iter().fold(0, |acc, t| field.add_raw(acc, t.eval(field, values))),
            CompiledTerm::Mul(ts) => {
                let mut acc = 1;
                for t in ts {
                    acc = field.mul_raw(acc, t.eval(field, values));
                    if acc == 0 {
                        break;
                    }
                }
                acc
            }
            CompiledTerm::Neg(t) => field.neg_raw(t.eval(field, values)),
            CompiledTerm::Pow(t, e) => field.pow_raw(t.eval(field, values), *e as u64),
        }
    }
}

/// Multiplies reduced factors, fewest terms first, stopping at zero.
fn product_smallest_first(reducer: &Reducer, mut factors: Vec<Polynomial>) -> Polynomial {
    factors.sort_by_key(Polynomial::len);
    let mut acc = reducer.ring().one();
    for f in &factors {
        if acc.is_zero() {
            break;
        }
        acc = reducer.mul(&acc, f);
    }
    acc
}

fn is_negative_const(c: &FieldElement) -> bool {
    let f = c.field();
    crate::poly::text_split_sign(f, c.code()).0
}

fn fmt_factor(t: &Term, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match t {
        Term::Add(_) | Term::Mul(_) | Term::Neg(_) => write!(f, "({t})"),
        Term::Const(c) => f.write_str(&crate::poly::text_const_factor(c.field(), c.code())),
        _ => write!(f, "{t}"),
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Const(c) => f.write_str(&crate::poly::text_const_factor(c.field(), c.code())),
            Term::Var(v) => f.write_str(v),
            Term::Add(ts) => {
                for (i, t) in ts.iter().enumerate() {
                    let (neg, body): (bool, Term) = match t {
                        Term::Neg(inner) => (true, (**inner).clone()),
                        Term::Const(c) if is_negative_const(c) => (true, Term::Const(c.neg())),
                        other => (false, other.clone()),
                    };
                    match (i, neg) {
                        (0, true) => f.write_str("-")?,
                        (0, false) => {}
                        (_, true) => f.write_str(" - ")?,
                        (_, false) => f.write_str(" + ")?,
                    }
                    match &body {
                        Term::Add(_) => write!(f, "({body})")?,
                        // `a - (b*c)` would re-parse identically without parentheses,
                        // but a leading negative constant inside needs them.
                        Term::Neg(_) => write!(f, "({body})")?,
                        _ => write!(f, "{body}")?,
                    }
                }
                Ok(())
            }
            Term::Mul(ts) => {
                for (i, t) in ts.iter().enumerate() {
                    if i > 0 {
                        f.write_str("*")?;
                    }
                    fmt_factor(t, f)?;
                }
                Ok(())
            }
            Term::Neg(t) => {
                f.write_str("-")?;
                match **t {
                    Term::Add(_) | Term::Neg(_) => write!(f, "({t})"),
                    _ => write!(f, "{t}"),
                }
            }
            Term::Pow(t, e) => {
                match **t {
                    Term::Var(_) => write!(f, "{t}")?,
                    Term::Const(ref c) if c.field().format_raw(c.code()).chars().all(|ch| ch.is_ascii_digit()) => {
                        write!(f, "{t}")?
                    }
                    _ => write!(f, "({t})")?,
                }
                write!(f, "^{e}")
            }
        }
    }
}
