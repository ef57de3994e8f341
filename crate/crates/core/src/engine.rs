//! Blockwise quantifier elimination.
//!
//! The innermost existential block is removed by flattening the matrix into
//! generators and computing, together with the field polynomials of every
//! variable, the reduced lexicographic Gröbner basis of the elimination ideal
//! in the surviving variables. An innermost universal block over a matrix
//! `g_1 = 0 /\ .. /\ g_s = 0` is removed one conjunct at a time through
//! `forall X. g = 0  <=>  ~exists X z. g*z - 1 = 0`, producing clauses of
//! disequations. Formulas whose innermost block is universal are handled
//! through their negation.

use std::collections::HashSet;
use std::fmt;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::field::FieldSpec;
use crate::groebner::{
    buchberger_with_budget, eliminate, eliminate_by_linear_algebra, Budget, GbStats, GroebnerError, Ideal,
};
use crate::logic::{Formula, PrenexFormula, Quantifier};
use crate::oracle::{self, OracleError, OracleOptions};
use crate::poly::{Assignment, MonomialOrder, PolyError, Polynomial, Reducer, Ring, VarTable};
use crate::term::Term;
use crate::transform::{flatten, FreshNames};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QeError {
    #[error("budget exhausted: {0}")]
    BudgetExhausted(String),
    #[error("formula is not closed; free variables: {}", .0.join(", "))]
    NotClosed(Vec<String>),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("a reduction exceeded {0} pending terms")]
    TermLimit(usize),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl From<GroebnerError> for QeError {
    fn from(e: GroebnerError) -> Self {
        match e {
            GroebnerError::BudgetExhausted(m) => QeError::BudgetExhausted(m),
            GroebnerError::Poly(p) => QeError::Poly(p),
            GroebnerError::TermLimit(n) => QeError::TermLimit(n),
            other => QeError::Internal(other.to_string()),
        }
    }
}

/// Term order used for the Gröbner basis computations.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OrderKind {
    #[default]
    Lex,
    /// Graded reverse lex on the eliminated block, lex on the rest.
    BlockGrevlex,
}

/// How the elimination ideal of each round is obtained.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum EliminationMethod {
    /// Change of order, falling back to direct elimination when a reduction
    /// grows past a fixed number of pending terms.
    #[default]
    Auto,
    /// A basis with the surviving variables ranked highest, followed by a
    /// linear-algebra search for the lex basis of the elimination ideal.
    ChangeOfOrder,
    /// A basis under an elimination order, filtered to the surviving variables.
    Direct,
}

#[derive(Clone, Debug, Default)]
pub struct QeOptions {
    /// Wall-clock limit for the whole call.
    pub timeout: Option<Duration>,
    /// Abort when an intermediate basis grows beyond this many elements.
    pub max_basis: Option<usize>,
    /// Reduce outputs modulo the free variables' field polynomials.
    pub simplify: bool,
    /// Re-establish conjunctive normal form for outputs of the negation wrapper.
    pub cnf: bool,
    /// Record per-round statistics.
    pub trace: bool,
    pub method: EliminationMethod,
    /// Term order of the direct method.
    pub order: OrderKind,
    /// Tiebreak for variables of the same rank group (free variables, one
    /// quantifier block).
    pub var_order: Vec<String>,
}

/// Statistics of one Gröbner basis run inside a round.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationTrace {
    pub ring: Vec<String>,
    pub eliminated: Vec<String>,
    pub dropped: Vec<String>,
    pub generators: usize,
    /// The method that produced the basis.
    pub method: EliminationMethod,
    /// The reduced basis of the elimination ideal, printed.
    pub basis: Vec<String>,
    pub gb: GbStats,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundTrace {
    pub round: usize,
    pub quantifier: Quantifier,
    pub block: Vec<String>,
    /// Literals and clauses of the matrix entering the round.
    pub input_literals: usize,
    pub input_clauses: usize,
    pub fresh_u: usize,
    pub fresh_v: usize,
    /// Inverse variables introduced by a universal round, one per conjunct.
    pub fresh_z: usize,
    pub eliminations: Vec<EliminationTrace>,
    pub output_literals: usize,
    pub elapsed: Duration,
}

impl fmt::Display for RoundTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "round {} {} {}: in {} literals/{} clauses, fresh u={} v={} z={}, {} GB runs, out {} literals, {:.3}s",
            self.round,
            self.quantifier.keyword(),
            self.block.join(" "),
            self.input_literals,
            self.input_clauses,
            self.fresh_u,
            self.fresh_v,
            self.fresh_z,
            self.eliminations.len(),
            self.output_literals,
            self.elapsed.as_secs_f64()
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QeOutput {
    pub formula: Formula,
    /// Whether `formula` is a conjunction of clauses of (dis)equations.
    pub cnf: bool,
    /// True when the negation wrapper was used.
    pub negated: bool,
    pub trace: Vec<RoundTrace>,
}

impl QeOutput {
    /// The output as clauses of signed literals `(is_equation, polynomial text)`.
    pub fn clauses(&self) -> Option<Vec<Vec<(bool, String)>>> {
        cnf_clauses(&self.formula)
    }
}

/// Clause list of a CNF formula, or `None` when the formula is not in CNF.
pub fn cnf_clauses(f: &Formula) -> Option<Vec<Vec<(bool, String)>>> {
    let literal = |g: &Formula| match g {
        Formula::Atom(t) => Some((true, t.to_string())),
        Formula::NegAtom(t) => Some((false, t.to_string())),
        _ => None,
    };
    let clause = |g: &Formula| match g {
        Formula::Or(ls) => ls.iter().map(literal).collect::<Option<Vec<_>>>(),
        Formula::False => Some(Vec::new()),
        other => literal(other).map(|l| vec![l]),
    };
    match f {
        Formula::True => Some(Vec::new()),
        Formula::And(cs) => cs.iter().map(clause).collect(),
        other => clause(other).map(|c| vec![c]),
    }
}

pub fn is_cnf(f: &Formula) -> bool {
    cnf_clauses(f).is_some()
}

/// Pending-term limit of a change-of-order attempt before the engine falls
/// back to direct elimination.
const CHANGE_OF_ORDER_TERM_LIMIT: usize = 1 << 18;

struct Attempt {
    gb_vars: Vec<String>,
    generators: usize,
    basis: Vec<Polynomial>,
    stats: GbStats,
    method: EliminationMethod,
}

struct Engine<'a> {
    field: FieldSpec,
    opts: &'a QeOptions,
    budget: Budget,
    names: FreshNames,
    trace: Vec<RoundTrace>,
}

/// Matrix between rounds.
enum Matrix {
    /// Arbitrary quantifier-free NNF (before the first round).
    Formula(Formula),
    /// `g_1 = 0 /\ .. /\ g_s = 0`; a unit basis is represented by `[1]`.
    Equations(Vec<Polynomial>),
}

impl Matrix {
    fn to_formula(&self) -> Formula {
        match self {
            Matrix::Formula(f) => f.clone(),
            Matrix::Equations(gs) => {
                Formula::and(gs.iter().map(|g| Formula::Atom(Term::from_polynomial(g))).collect()).fold_constants()
            }
        }
    }
}

fn literal_and_clause_counts(f: &Formula) -> (usize, usize) {
    match f {
        Formula::True => (0, 0),
        Formula::And(cs) => cs.iter().map(literal_and_clause_counts).fold((0, 0), |a, b| (a.0 + b.0, a.1 + b.1.max(1))),
        other => (other.atoms().len(), 1),
    }
}

impl<'a> Engine<'a> {
    fn new(field: &FieldSpec, opts: &'a QeOptions) -> Engine<'a> {
        Engine {
            field: field.clone(),
            opts,
            budget: Budget {
                deadline: opts.timeout.map(|t| Instant::now() + t),
                max_basis: opts.max_basis,
                max_terms: None,
            },
            names: FreshNames::new(),
            trace: Vec::new(),
        }
    }

    fn check_time(&self) -> Result<(), QeError> {
        if self.budget.expired() {
            Err(QeError::BudgetExhausted("time limit reached".into()))
        } else {
            Ok(())
        }
    }

    /// Stable reordering of one rank group by the user's tiebreak list.
    fn tiebreak(&self, group: &[String]) -> Vec<String> {
        let mut g = group.to_vec();
        let pos = |v: &String| self.opts.var_order.iter().position(|w| w == v).unwrap_or(usize::MAX);
        g.sort_by_key(pos);
        g
    }

    /// Variables that survive an elimination, highest rank first: the
    /// remaining blocks (innermost first), then the free variables.
    fn kept_order(&self, blocks: &[(Quantifier, Vec<String>)], free: &[String]) -> Vec<String> {
        let mut out = Vec::new();
        for (_, vs) in blocks.iter().rev() {
            out.extend(self.tiebreak(vs));
        }
        out.extend(self.tiebreak(free));
        out
    }

    /// Computes generators of `(exists fresh, block. /\ conjuncts = 0)` over `kept`.
    ///
    /// Conjuncts involving a single variable narrow that variable's modulus
    /// instead of entering the basis computation directly; eliminated
    /// variables that then occur only in their own modulus are dropped, since
    /// every nonconstant divisor of `v^q - v` has a root.
    fn eliminate_exists(
        &mut self,
        conjuncts: &[Term],
        eliminated: &[String],
        kept: &[String],
    ) -> Result<(Vec<Polynomial>, EliminationTrace), QeError> {
        self.check_time()?;
        let all: Vec<String> = eliminated.iter().chain(kept).cloned().collect();
        let ring = Ring::lex(&self.field, &all)?;
        let mut reducer = Reducer::new(&ring);
        let mut pending: Vec<&Term> = conjuncts.iter().collect();
        let mut expanded: Vec<Polynomial> = Vec::new();
        let mut changed = true;
        while changed {
            changed = false;
            expanded.clear();
            let mut rest = Vec::new();
            for t in pending {
                let p = t.expand(&reducer)?;
                let support = p.support();
                if p.is_zero() {
                    continue;
                }
                if support.is_empty() || reducer.is_unit() {
                    return Ok((vec![self.unit_over(kept)?], self.trivial_trace(&all, eliminated, conjuncts.len())));
                }
                if support.len() == 1 {
                    let coeffs = p.to_univariate(support[0]).expect("single-variable support");
                    reducer.constrain(support[0], &coeffs);
                    changed = true;
                    if reducer.is_unit() {
                        return Ok((
                            vec![self.unit_over(kept)?],
                            self.trivial_trace(&all, eliminated, conjuncts.len()),
                        ));
                    }
                    continue;
                }
                rest.push(t);
                expanded.push(p);
            }
            pending = rest;
        }
        self.check_time()?;

        let mut used = vec![false; all.len()];
        for p in &expanded {
            for i in p.support() {
                used[i] = true;
            }
        }
        let n_elim = eliminated.len();
        let dropped: Vec<String> = (0..n_elim).filter(|&i| !used[i]).map(|i| all[i].clone()).collect();
        let survivors: Vec<String> = (0..n_elim).filter(|&i| used[i]).map(|i| all[i].clone()).collect();
        let survivors = self.rank_block(survivors, &expanded, &ring)?;
        let attempt = |method: EliminationMethod, budget: &Budget| -> Result<Attempt, QeError> {
            let (gb_vars, order) = match method {
                EliminationMethod::Direct => (
                    survivors.iter().chain(kept).cloned().collect::<Vec<_>>(),
                    match self.opts.order {
                        OrderKind::Lex => MonomialOrder::Lex,
                        OrderKind::BlockGrevlex => MonomialOrder::BlockGrevlex { block: survivors.len() },
                    },
                ),
                _ => (kept.iter().chain(&survivors).cloned().collect(), MonomialOrder::Lex),
            };
            let gb_ring =
                Ring::new(self.field.clone(), VarTable::new(&gb_vars).map_err(PolyError::DuplicateVariable)?, order);
            let mut gens: Vec<Polynomial> = Vec::with_capacity(expanded.len() + gb_vars.len());
            for p in &expanded {
                gens.push(p.map_into(&gb_ring)?);
            }
            for v in &gb_vars {
                gens.push(reducer.generator(ring.var_index(v)?).map_into(&gb_ring)?);
            }
            let ideal = Ideal::new(&gb_ring, gens).map_err(QeError::from)?;
            let generators = ideal.generators().len();
            let (gb, stats) = buchberger_with_budget(&ideal, budget)?;
            let basis = match method {
                EliminationMethod::Direct => {
                    let out_ring = Ring::lex(&self.field, kept)?;
                    eliminate(&gb, kept)?.iter().map(|p| p.map_into(&out_ring)).collect::<Result<_, _>>()?
                }
                _ => eliminate_by_linear_algebra(&gb, kept, budget)?,
            };
            Ok(Attempt { gb_vars, generators, basis, stats, method })
        };
        let result = match self.opts.method {
            EliminationMethod::Auto if kept.is_empty() => attempt(EliminationMethod::Direct, &self.budget)?,
            EliminationMethod::Auto => {
                let capped = Budget { max_terms: Some(CHANGE_OF_ORDER_TERM_LIMIT), ..self.budget };
                match attempt(EliminationMethod::ChangeOfOrder, &capped) {
                    Err(QeError::TermLimit(_)) => attempt(EliminationMethod::Direct, &self.budget)?,
                    other => other?,
                }
            }
            m => attempt(m, &self.budget)?,
        };
        let basis = result.basis;
        let trace = EliminationTrace {
            ring: result.gb_vars,
            eliminated: eliminated.to_vec(),
            dropped,
            generators: result.generators,
            method: result.method,
            basis: basis.iter().map(Polynomial::to_string).collect(),
            gb: result.stats,
        };
        Ok((basis, trace))
    }

    /// Orders eliminated variables: fresh variables first in creation order,
    /// then the quantified ones. Unless the caller's tiebreak list mentions
    /// them, quantified variables are ranked by the number of generator terms
    /// they occur in, most first, so that variables defined by a short
    /// equation rank low.
    fn rank_block(&self, vars: Vec<String>, gens: &[Polynomial], ring: &Ring) -> Result<Vec<String>, QeError> {
        let (fresh, mut block): (Vec<String>, Vec<String>) = vars.into_iter().partition(|v| v.starts_with('_'));
        if !block.iter().any(|v| self.opts.var_order.contains(v)) {
            let mut counts = Vec::with_capacity(block.len());
            for v in &block {
                let i = ring.var_index(v)?;
                let n: usize =
                    gens.iter().map(|g| g.raw_terms().iter().filter(|(m, _)| m.exponent(i) > 0).count()).sum();
                counts.push((v.clone(), n));
            }
            counts.sort_by_key(|c| std::cmp::Reverse(c.1));
            block = counts.into_iter().map(|(v, _)| v).collect();
        }
        Ok(fresh.into_iter().chain(block).collect())
    }

    fn unit_over(&self, kept: &[String]) -> Result<Polynomial, QeError> {
        Ok(Ring::lex(&self.field, kept)?.one())
    }

    fn trivial_trace(&self, all: &[String], eliminated: &[String], generators: usize) -> EliminationTrace {
        EliminationTrace {
            ring: all.to_vec(),
            eliminated: eliminated.to_vec(),
            dropped: Vec::new(),
            generators,
            method: self.opts.method,
            basis: vec!["1".into()],
            gb: GbStats::default(),
        }
    }

    fn existential_round(
        &mut self,
        block: &[String],
        matrix: &Matrix,
        kept: &[String],
        round: usize,
    ) -> Result<Matrix, QeError> {
        let start = Instant::now();
        let f = matrix.to_formula().fold_constants();
        let (input_literals, input_clauses) = literal_and_clause_counts(&f);
        let flat = flatten(&f, &self.field, &mut self.names);
        let mut eliminated = flat.fresh_vars();
        eliminated.extend(self.tiebreak(block));
        let (basis, etrace) = self.eliminate_exists(&flat.conjuncts, &eliminated, kept)?;
        if self.opts.trace {
            self.trace.push(RoundTrace {
                round,
                quantifier: Quantifier::Exists,
                block: block.to_vec(),
                input_literals,
                input_clauses,
                fresh_u: flat.fresh_u.len(),
                fresh_v: flat.fresh_v.len(),
                fresh_z: 0,
                eliminations: vec![etrace],
                output_literals: basis.len(),
                elapsed: start.elapsed(),
            });
        }
        Ok(Matrix::Equations(basis))
    }

    fn universal_round(
        &mut self,
        block: &[String],
        matrix: &Matrix,
        kept: &[String],
        round: usize,
    ) -> Result<Formula, QeError> {
        let start = Instant::now();
        let gs = match matrix {
            Matrix::Equations(gs) => gs.clone(),
            Matrix::Formula(_) => {
                return Err(QeError::Internal("universal round expects a conjunction of equations".into()))
            }
        };
        let mut clauses = Vec::with_capacity(gs.len());
        let mut eliminations = Vec::new();
        let mut literals = 0;
        let block = self.tiebreak(block);
        for g in &gs {
            self.check_time()?;
            if Reducer::new(g.ring()).reduce(g).is_zero() {
                continue;
            }
            let z = self.names.next_z();
            let conjunct = Term::sum(vec![
                Term::product(vec![Term::from_polynomial(g), Term::Var(z.clone())]),
                Term::int(&self.field, -1),
            ]);
            let mut eliminated = vec![z];
            eliminated.extend(block.iter().cloned());
            let (hs, etrace) = self.eliminate_exists(&[conjunct], &eliminated, kept)?;
            eliminations.push(etrace);
            let clause: Vec<Formula> = hs.iter().map(|h| Formula::NegAtom(Term::from_polynomial(h))).collect();
            literals += clause.len();
            clauses.push(Formula::or(clause));
        }
        let out = Formula::and(clauses);
        if self.opts.trace {
            let (input_literals, input_clauses) = (gs.len(), gs.len());
            self.trace.push(RoundTrace {
                round,
                quantifier: Quantifier::Forall,
                block: block.to_vec(),
                input_literals,
                input_clauses,
                fresh_u: 0,
                fresh_v: 0,
                fresh_z: eliminations.len(),
                eliminations,
                output_literals: literals,
                elapsed: start.elapsed(),
            });
        }
        Ok(out.fold_constants())
    }

    /// Eliminates all blocks of a prenex formula whose innermost block is
    /// existential (or which has no blocks).
    fn run(&mut self, pf: &PrenexFormula, free: &[String]) -> Result<Formula, QeError> {
        let mut blocks = pf.blocks.clone();
        let mut matrix = Matrix::Formula(pf.matrix.fold_constants());
        let mut round = 0;
        while let Some((q, block)) = blocks.pop() {
            round += 1;
            let kept = self.kept_order(&blocks, free);
            matrix = match q {
                Quantifier::Exists => self.existential_round(&block, &matrix, &kept, round)?,
                Quantifier::Forall => Matrix::Formula(self.universal_round(&block, &matrix, &kept, round)?),
            };
        }
        Ok(matrix.to_formula())
    }

    /// Conjunction of equations equivalent to `f` with no new free variables.
    fn restore_cnf(&mut self, f: &Formula, free: &[String]) -> Result<Formula, QeError> {
        let f = f.to_nnf().fold_constants();
        if is_cnf(&f) {
            return Ok(f);
        }
        let kept = self.tiebreak(free);
        let m = self.existential_round(&[], &Matrix::Formula(f), &kept, self.trace.len() + 1)?;
        Ok(m.to_formula())
    }
}

/// Removes the innermost block, which must be existential. The new matrix is
/// `g_1 = 0 /\ .. /\ g_s = 0` for the reduced basis of the elimination ideal
/// over the remaining variables.
pub fn eliminate_innermost_existential(
    pf: &PrenexFormula,
    field: &FieldSpec,
    opts: &QeOptions,
) -> Result<PrenexFormula, QeError> {
    let mut blocks = pf.blocks.clone();
    let Some((Quantifier::Exists, block)) = blocks.pop() else {
        return Err(QeError::Internal("innermost block is not existential".into()));
    };
    let mut engine = Engine::new(field, opts);
    let kept = engine.kept_order(&blocks, &pf.free_variables());
    let matrix = engine.existential_round(&block, &Matrix::Formula(pf.matrix.fold_constants()), &kept, 1)?;
    Ok(PrenexFormula { blocks, matrix: matrix.to_formula() })
}

/// Removes the innermost block, which must be universal over a matrix of the
/// form `g_1 = 0 /\ .. /\ g_s = 0`. The new matrix is `/\_i \/_j h_ij != 0`
/// where the `h_ij` generate the elimination ideal of `g_i * z - 1`.
pub fn eliminate_innermost_universal(
    pf: &PrenexFormula,
    field: &FieldSpec,
    opts: &QeOptions,
) -> Result<PrenexFormula, QeError> {
    let mut blocks = pf.blocks.clone();
    let Some((Quantifier::Forall, block)) = blocks.pop() else {
        return Err(QeError::Internal("innermost block is not universal".into()));
    };
    let mut engine = Engine::new(field, opts);
    let kept = engine.kept_order(&blocks, &pf.free_variables());
    let vars: Vec<String> = block.iter().chain(&kept).cloned().collect();
    let ring = Ring::lex(field, &vars)?;
    let equations = match pf.matrix.fold_constants() {
        Formula::True => Vec::new(),
        Formula::False => vec![ring.one()],
        Formula::Atom(t) => vec![t.to_polynomial(&ring)?],
        Formula::And(parts) => parts
            .iter()
            .map(|p| match p {
                Formula::Atom(t) => Ok(t.to_polynomial(&ring)?),
                other => Err(QeError::Internal(format!("`{other}` is not an equation"))),
            })
            .collect::<Result<_, _>>()?,
        other => return Err(QeError::Internal(format!("`{other}` is not a conjunction of equations"))),
    };
    let matrix = engine.universal_round(&block, &Matrix::Equations(equations), &kept, 1)?;
    Ok(PrenexFormula { blocks, matrix })
}

/// Reduces every atom modulo the field polynomials of its variables and folds
/// the atoms that become constant.
pub fn simplify(f: &Formula, field: &FieldSpec) -> Result<Formula, QeError> {
    let vars = f.free_variables();
    let ring = Ring::lex(field, &vars)?;
    let reducer = Reducer::new(&ring);
    fn walk(f: &Formula, r: &Reducer) -> Result<Formula, QeError> {
        Ok(match f {
            Formula::Atom(t) => Formula::Atom(Term::from_polynomial(&t.expand(r)?)),
            Formula::NegAtom(t) => Formula::NegAtom(Term::from_polynomial(&t.expand(r)?)),
            Formula::And(fs) => Formula::And(fs.iter().map(|g| walk(g, r)).collect::<Result<_, _>>()?),
            Formula::Or(fs) => Formula::Or(fs.iter().map(|g| walk(g, r)).collect::<Result<_, _>>()?),
            other => other.clone(),
        })
    }
    Ok(walk(f, &reducer)?.fold_constants())
}

fn negated_prenex(pf: &PrenexFormula) -> PrenexFormula {
    PrenexFormula {
        blocks: pf.blocks.iter().map(|(q, vs)| (q.dual(), vs.clone())).collect(),
        matrix: Formula::negate(pf.matrix.clone()).to_nnf(),
    }
}

/// Quantifier elimination: a quantifier-free formula over the free variables
/// of `phi` with the same realization.
pub fn qe(phi: &Formula, field: &FieldSpec, opts: &QeOptions) -> Result<QeOutput, QeError> {
    let free = phi.free_variables();
    let pf = phi.to_prenex();
    let mut engine = Engine::new(field, opts);
    let wrapped = pf.innermost() == Some(Quantifier::Forall);
    let mut formula = if wrapped {
        let inner = engine.run(&negated_prenex(&pf), &free)?;
        Formula::negate(inner).to_nnf().fold_constants()
    } else {
        engine.run(&pf, &free)?
    };
    if opts.simplify {
        formula = simplify(&formula, field)?;
    }
    if opts.cnf {
        formula = engine.restore_cnf(&formula, &free)?;
        if opts.simplify {
            formula = simplify(&formula, field)?;
        }
    }
    Ok(QeOutput { cnf: is_cnf(&formula), formula, negated: wrapped, trace: engine.trace })
}

/// Truth value of a closed formula.
pub fn decide(phi: &Formula, field: &FieldSpec, opts: &QeOptions) -> Result<bool, QeError> {
    let free = phi.free_variables();
    if !free.is_empty() {
        return Err(QeError::NotClosed(free));
    }
    match qe(phi, field, opts)?.formula.fold_constants() {
        Formula::True => Ok(true),
        Formula::False => Ok(false),
        other => Err(QeError::Internal(format!("closed formula reduced to `{other}`"))),
    }
}

/// Truth value of a closed formula by enumeration.
pub fn decide_by_enumeration(phi: &Formula, field: &FieldSpec, opts: &OracleOptions) -> Result<bool, QeError> {
    let free = phi.free_variables();
    if !free.is_empty() {
        return Err(QeError::NotClosed(free));
    }
    Ok(!oracle::realization_over(phi, field, &[], opts)?.is_empty())
}

/// Quantifier-free formula with the same realization, built by enumeration:
/// a disjunction of points (or of non-points when that is shorter).
pub fn qe_by_enumeration(phi: &Formula, field: &FieldSpec, opts: &OracleOptions) -> Result<Formula, QeError> {
    let free = phi.free_variables();
    let r = oracle::realization_over(phi, field, &free, opts)?;
    if r.is_empty() {
        return Ok(Formula::False);
    }
    if r.is_full() {
        return Ok(Formula::True);
    }
    let point = |p: &[u32], negate: bool| {
        let lits: Vec<Formula> = free
            .iter()
            .zip(p)
            .map(|(v, &c)| {
                let t = Term::difference(Term::var(v), Term::Const(field.element(c)));
                if negate {
                    Formula::NegAtom(t)
                } else {
                    Formula::Atom(t)
                }
            })
            .collect();
        if negate {
            Formula::or(lits)
        } else {
            Formula::and(lits)
        }
    };
    let points = r.sorted_points();
    let total = (field.q() as u64).pow(free.len() as u32) as usize;
    if points.len() * 2 <= total {
        Ok(Formula::or(points.iter().map(|p| point(p, false)).collect()).fold_constants())
    } else {
        let inside: HashSet<Vec<u32>> = points.into_iter().collect();
        let outside: Vec<Formula> = oracle::all_points(field.q(), free.len())
            .filter(|p| !inside.contains(p))
            .map(|p| point(&p, true))
            .collect();
        Ok(Formula::and(outside).fold_constants())
    }
}

/// A satisfying assignment of `exists x.. . body` (quantifier-free body) found
/// by enumeration and checked by evaluation.
pub fn witness(phi: &Formula, field: &FieldSpec, opts: &OracleOptions) -> Result<Option<Assignment>, QeError> {
    let found = oracle::witness(phi, field, opts)?;
    if let Some(a) = &found {
        let mut body = phi;
        while let Formula::Exists(_, g) = body {
            body = g;
        }
        if !oracle::evaluate(body, field, a)? {
            return Err(QeError::Internal("witness does not satisfy the matrix".into()));
        }
    }
    Ok(found)
}
