//! Ground-truth semantics by exhaustive enumeration.
//!
//! A formula's realization is the set of assignments to its free variables
//! that make it true. Quantifiers are evaluated by looping over every field
//! element, so the cost is `q^(number of variables)`; callers choose a bound.

use std::collections::{HashMap, HashSet};

use thiserror::Error;

use crate::field::FieldSpec;
use crate::logic::Formula;
use crate::poly::{Assignment, PolyError, Polynomial};
use crate::term::{CompiledTerm, Term};

/// Default cap on `q^n` for enumeration.
pub const DEFAULT_MAX_POINTS: u64 = 1 << 24;

/// Largest `log2` size of a realization stored as a dense bitset.
const DENSE_BITS: f64 = 24.0;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("enumeration over {q}^{vars} points exceeds the bound of {limit}")]
    TooLarge { q: u32, vars: usize, limit: u64 },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("formula is not of the form `exists x.. . body` with a quantifier-free body")]
    NotExistential,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Clone, Copy, Debug)]
pub struct OracleOptions {
    pub max_points: u64,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions { max_points: DEFAULT_MAX_POINTS }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Points {
    Dense(Vec<u64>),
    Sparse(HashSet<Vec<u32>>),
}

/// A set of points of `F_q^n` over named coordinates.
#[derive(Clone, Debug)]
pub struct Realization {
    field: FieldSpec,
    vars: Vec<String>,
    points: Points,
}

impl PartialEq for Realization {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.vars == other.vars && self.sorted_points() == other.sorted_points()
    }
}

impl Eq for Realization {}

impl Realization {
    pub fn empty(field: &FieldSpec, vars: &[String]) -> Realization {
        let dense = (vars.len() as f64) * (field.q() as f64).log2() <= DENSE_BITS;
        let points = if dense {
            let size = (field.q() as u64).pow(vars.len() as u32);
            Points::Dense(vec![0; size.div_ceil(64) as usize])
        } else {
            Points::Sparse(HashSet::new())
        };
        Realization { field: field.clone(), vars: vars.to_vec(), points }
    }

    pub fn full(field: &FieldSpec, vars: &[String]) -> Realization {
        let mut r = Realization::empty(field, vars);
        for p in all_points(field.q(), vars.len()) {
            r.insert(&p);
        }
        r
    }

    pub fn from_points(field: &FieldSpec, vars: &[String], points: impl IntoIterator<Item = Vec<u32>>) -> Realization {
        let mut r = Realization::empty(field, vars);
        for p in points {
            r.insert(&p);
        }
        r
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    fn index(&self, point: &[u32]) -> u64 {
        let q = self.field.q() as u64;
        point.iter().fold(0, |acc, &c| acc * q + c as u64)
    }

    pub fn insert(&mut self, point: &[u32]) {
        debug_assert_eq!(point.len(), self.vars.len());
        let idx = self.index(point);
        match &mut self.points {
            Points::Dense(bits) => bits[(idx / 64) as usize] |= 1 << (idx % 64),
            Points::Sparse(set) => {
                set.insert(point.to_vec());
            }
        }
    }

    pub fn contains(&self, point: &[u32]) -> bool {
        match &self.points {
            Points::Dense(bits) => {
                let idx = self.index(point);
                bits[(idx / 64) as usize] >> (idx % 64) & 1 == 1
            }
            Points::Sparse(set) => set.contains(point),
        }
    }

    /// Membership of an assignment binding (at least) every coordinate.
    pub fn contains_assignment(&self, a: &Assignment) -> Result<bool, OracleError> {
        let point = self
            .vars
            .iter()
            .map(|v| a.get(v).map(|e| e.code()).ok_or_else(|| OracleError::UnknownVariable(v.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.contains(&point))
    }

    pub fn len(&self) -> usize {
        match &self.points {
            Points::Dense(bits) => bits.iter().map(|w| w.count_ones() as usize).sum(),
            Points::Sparse(set) => set.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_full(&self) -> bool {
        self.len() as u64 == (self.field.q() as u64).pow(self.vars.len() as u32)
    }

    /// Points in enumeration order (first coordinate most significant).
    pub fn sorted_points(&self) -> Vec<Vec<u32>> {
        match &self.points {
            Points::Dense(_) => all_points(self.field.q(), self.vars.len()).filter(|p| self.contains(p)).collect(),
            Points::Sparse(set) => {
                let mut v: Vec<Vec<u32>> = set.iter().cloned().collect();
                v.sort();
                v
            }
        }
    }

    pub fn assignments(&self) -> Vec<Assignment> {
        self.sorted_points()
            .into_iter()
            .map(|p| {
                let mut a = Assignment::new();
                for (v, c) in self.vars.iter().zip(p) {
                    a.set(v, self.field.element(c));
                }
                a
            })
            .collect()
    }

    /// Same set over a reordered or enlarged coordinate list; new coordinates range freely.
    pub fn extend_to(&self, vars: &[String]) -> Result<Realization, OracleError> {
        let pos: Vec<Option<usize>> = vars.iter().map(|v| self.vars.iter().position(|w| w == v)).collect();
        for v in &self.vars {
            if !vars.contains(v) {
                return Err(OracleError::UnknownVariable(v.clone()));
            }
        }
        let mut out = Realization::empty(&self.field, vars);
        let mut src = vec![0u32; self.vars.len()];
        for p in all_points(self.field.q(), vars.len()) {
            for (k, slot) in pos.iter().enumerate() {
                if let Some(i) = slot {
                    src[*i] = p[k];
                }
            }
            if self.contains(&src) {
                out.insert(&p);
            }
        }
        Ok(out)
    }
}

/// Iterator over `F_q^n` as code vectors, first coordinate most significant.
pub fn all_points(q: u32, n: usize) -> impl Iterator<Item = Vec<u32>> {
    let total = (q as u64).pow(n as u32);
    (0..total).map(move |mut idx| {
        let mut p = vec![0u32; n];
        for slot in p.iter_mut().rev() {
            *slot = (idx % q as u64) as u32;
            idx /= q as u64;
        }
        p
    })
}

enum Compiled {
    True,
    False,
    Zero(CompiledTerm),
    NonZero(CompiledTerm),
    And(Vec<Compiled>),
    Or(Vec<Compiled>),
    Not(Box<Compiled>),
    Exists(Vec<usize>, Box<Compiled>),
    Forall(Vec<usize>, Box<Compiled>),
}

struct Compiler {
    slots: usize,
}

impl Compiler {
    fn compile(&mut self, f: &Formula, env: &HashMap<String, usize>) -> Result<Compiled, OracleError> {
        let term = |t: &Term| t.compile(&|v| env.get(v).copied()).map_err(OracleError::UnknownVariable);
        Ok(match f {
            Formula::True => Compiled::True,
            Formula::False => Compiled::False,
            Formula::Atom(t) => Compiled::Zero(term(t)?),
            Formula::NegAtom(t) => Compiled::NonZero(term(t)?),
            Formula::And(fs) => Compiled::And(fs.iter().map(|g| self.compile(g, env)).collect::<Result<_, _>>()?),
            Formula::Or(fs) => Compiled::Or(fs.iter().map(|g| self.compile(g, env)).collect::<Result<_, _>>()?),
            Formula::Not(g) => Compiled::Not(Box::new(self.compile(g, env)?)),
            Formula::Exists(vs, g) | Formula::Forall(vs, g) => {
                let mut inner = env.clone();
                let mut slots = Vec::with_capacity(vs.len());
                for v in vs {
                    inner.insert(v.clone(), self.slots);
                    slots.push(self.slots);
                    self.slots += 1;
                }
                let body = Box::new(self.compile(g, &inner)?);
                if matches!(f, Formula::Exists(..)) {
                    Compiled::Exists(slots, body)
                } else {
                    Compiled::Forall(slots, body)
                }
            }
        })
    }
}

struct Evaluator<'a> {
    field: &'a FieldSpec,
    forall_by_duality: bool,
}

impl Evaluator<'_> {
    fn eval(&self, f: &Compiled, values: &mut [u32]) -> bool {
        match f {
            Compiled::True => true,
            Compiled::False => false,
            Compiled::Zero(t) => t.eval(self.field, values) == 0,
            Compiled::NonZero(t) => t.eval(self.field, values) != 0,
            Compiled::And(fs) => fs.iter().all(|g| self.eval(g, values)),
            Compiled::Or(fs) => fs.iter().any(|g| self.eval(g, values)),
            Compiled::Not(g) => !self.eval(g, values),
            Compiled::Exists(slots, g) => self.exists(slots, g, values, false),
            Compiled::Forall(slots, g) => {
                if self.forall_by_duality {
                    !self.exists(slots, g, values, true)
                } else {
                    self.forall(slots, g, values)
                }
            }
        }
    }

    /// Is there a value of `slots` making `g` true (or false, when `negate`)?
    fn exists(&self, slots: &[usize], g: &Compiled, values: &mut [u32], negate: bool) -> bool {
        match slots.split_first() {
            None => self.eval(g, values) != negate,
            Some((&s, rest)) => (0..self.field.q()).any(|c| {
                values[s] = c;
                self.exists(rest, g, values, negate)
            }),
        }
    }

    fn forall(&self, slots: &[usize], g: &Compiled, values: &mut [u32]) -> bool {
        match slots.split_first() {
            None => self.eval(g, values),
            Some((&s, rest)) => (0..self.field.q()).all(|c| {
                values[s] = c;
                self.forall(rest, g, values)
            }),
        }
    }
}

fn compile(f: &Formula, vars: &[String]) -> Result<(Compiled, usize), OracleError> {
    let env: HashMap<String, usize> = vars.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
    let mut compiler = Compiler { slots: vars.len() };
    let compiled = compiler.compile(f, &env)?;
    Ok((compiled, compiler.slots))
}

fn prepare(f: &Formula, vars: &[String], opts: &OracleOptions, q: u32) -> Result<(Compiled, usize), OracleError> {
    let (compiled, total) = compile(f, vars)?;
    let fits = (q as u64).checked_pow(total as u32).is_some_and(|n| n <= opts.max_points);
    if !fits {
        return Err(OracleError::TooLarge { q, vars: total, limit: opts.max_points });
    }
    Ok((compiled, total))
}

/// Realization over the formula's free variables, in first-occurrence order.
pub fn realization(f: &Formula, field: &FieldSpec) -> Result<Realization, OracleError> {
    realization_over(f, field, &f.free_variables(), &OracleOptions::default())
}

/// Realization over `vars`, which must include every free variable; any extra
/// coordinate ranges over the whole field.
pub fn realization_over(
    f: &Formula,
    field: &FieldSpec,
    vars: &[String],
    opts: &OracleOptions,
) -> Result<Realization, OracleError> {
    realization_impl(f, field, vars, opts, false)
}

/// Same as [`realization_over`] but evaluates `forall` as `not exists not`.
pub fn realization_by_duality(
    f: &Formula,
    field: &FieldSpec,
    vars: &[String],
    opts: &OracleOptions,
) -> Result<Realization, OracleError> {
    realization_impl(f, field, vars, opts, true)
}

fn realization_impl(
    f: &Formula,
    field: &FieldSpec,
    vars: &[String],
    opts: &OracleOptions,
    forall_by_duality: bool,
) -> Result<Realization, OracleError> {
    let (compiled, total) = prepare(f, vars, opts, field.q())?;
    let ev = Evaluator { field, forall_by_duality };
    let mut out = Realization::empty(field, vars);
    let mut values = vec![0u32; total];
    for p in all_points(field.q(), vars.len()) {
        values[..vars.len()].copy_from_slice(&p);
        if ev.eval(&compiled, &mut values) {
            out.insert(&p);
        }
    }
    Ok(out)
}

/// Truth value at a single point binding every free variable.
pub fn evaluate(f: &Formula, field: &FieldSpec, point: &Assignment) -> Result<bool, OracleError> {
    let vars = f.free_variables();
    let (compiled, total) = compile(f, &vars)?;
    let mut values = vec![0u32; total];
    for (i, v) in vars.iter().enumerate() {
        let e = point.get(v).ok_or_else(|| OracleError::UnknownVariable(v.clone()))?;
        if e.field() != field {
            return Err(PolyError::FieldMismatch.into());
        }
        values[i] = e.code();
    }
    Ok(Evaluator { field, forall_by_duality: false }.eval(&compiled, &mut values))
}

/// Image of `r` under deleting the coordinates in `drop_vars`.
pub fn project<S: AsRef<str>>(r: &Realization, drop_vars: &[S]) -> Result<Realization, OracleError> {
    for d in drop_vars {
        if !r.vars.iter().any(|v| v == d.as_ref()) {
            return Err(OracleError::UnknownVariable(d.as_ref().to_string()));
        }
    }
    let keep: Vec<usize> = (0..r.vars.len()).filter(|&i| !drop_vars.iter().any(|d| d.as_ref() == r.vars[i])).collect();
    let vars: Vec<String> = keep.iter().map(|&i| r.vars[i].clone()).collect();
    let mut out = Realization::empty(&r.field, &vars);
    for p in r.sorted_points() {
        let image: Vec<u32> = keep.iter().map(|&i| p[i]).collect();
        out.insert(&image);
    }
    Ok(out)
}

/// Variety of a list of polynomials over all variables of their ring.
pub fn variety(polys: &[Polynomial], ring: &crate::poly::Ring) -> Realization {
    let vars: Vec<String> = ring.vars().names().to_vec();
    let mut out = Realization::empty(ring.field(), &vars);
    for p in all_points(ring.field().q(), vars.len()) {
        if polys.iter().all(|f| f.evaluate_raw(&p) == 0) {
            out.insert(&p);
        }
    }
    out
}

/// Compares realizations over the union of both free-variable lists; a
/// variable missing from one side ranges freely there.
pub fn equivalent(a: &Formula, b: &Formula, field: &FieldSpec) -> Result<bool, OracleError> {
    equivalent_with(a, b, field, &OracleOptions::default())
}

pub fn equivalent_with(a: &Formula, b: &Formula, field: &FieldSpec, opts: &OracleOptions) -> Result<bool, OracleError> {
    let mut vars = a.free_variables();
    for v in b.free_variables() {
        if !vars.contains(&v) {
            vars.push(v);
        }
    }
    Ok(realization_over(a, field, &vars, opts)? == realization_over(b, field, &vars, opts)?)
}

/// First satisfying assignment, in enumeration order, of a formula
/// `exists x1 .. xk. body` with quantifier-free `body`. Free variables are
/// enumerated before the bound ones and included in the result.
pub fn witness(f: &Formula, field: &FieldSpec, opts: &OracleOptions) -> Result<Option<Assignment>, OracleError> {
    let mut bound: Vec<String> = Vec::new();
    let mut body = f;
    while let Formula::Exists(vs, g) = body {
        bound.extend(vs.iter().cloned());
        body = g;
    }
    if !body.is_quantifier_free() {
        return Err(OracleError::NotExistential);
    }
    let mut vars = f.free_variables();
    vars.extend(bound);
    let (compiled, total) = prepare(body, &vars, opts, field.q())?;
    let ev = Evaluator { field, forall_by_duality: false };
    let mut values = vec![0u32; total];
    for p in all_points(field.q(), vars.len()) {
        values[..vars.len()].copy_from_slice(&p);
        if ev.eval(&compiled, &mut values) {
            let mut a = Assignment::new();
            for (v, c) in vars.iter().zip(p) {
                a.set(v, field.element(c));
            }
            return Ok(Some(a));
        }
    }
    Ok(None)
}
