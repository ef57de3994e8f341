//! First-order formulas over the signature `0, 1, +, *, =`.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::field::FieldSpec;
use crate::syntax::{self, ParseError};
use crate::term::Term;

/// A formula whose atoms are terms `t` meaning `t = 0` (or `t != 0` for
/// [`Formula::NegAtom`]).
#[derive(Clone, PartialEq, Eq)]
pub enum Formula {
    True,
    False,
    Atom(Term),
    NegAtom(Term),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Not(Box<Formula>),
    Exists(Vec<String>, Box<Formula>),
    Forall(Vec<String>, Box<Formula>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Quantifier {
    Exists,
    Forall,
}

impl Quantifier {
    pub fn dual(self) -> Quantifier {
        match self {
            Quantifier::Exists => Quantifier::Forall,
            Quantifier::Forall => Quantifier::Exists,
        }
    }

    pub fn keyword(self) -> &'static str {
        match self {
            Quantifier::Exists => "exists",
            Quantifier::Forall => "forall",
        }
    }
}

/// Alternating quantifier blocks, outermost first, over a quantifier-free NNF matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PrenexFormula {
    pub blocks: Vec<(Quantifier, Vec<String>)>,
    pub matrix: Formula,
}

pub fn parse(text: &str, field: &FieldSpec) -> Result<Formula, ParseError> {
    syntax::parse_formula(text, field)
}

impl Formula {
    pub fn eq(lhs: Term, rhs: Term) -> Formula {
        if rhs.is_zero_const() {
            Formula::Atom(lhs)
        } else {
            Formula::Atom(Term::difference(lhs, rhs))
        }
    }

    pub fn neq(lhs: Term, rhs: Term) -> Formula {
        match Formula::eq(lhs, rhs) {
            Formula::Atom(t) => Formula::NegAtom(t),
            _ => unreachable!(),
        }
    }

    pub fn and(mut parts: Vec<Formula>) -> Formula {
        match parts.len() {
            0 => Formula::True,
            1 => parts.pop().unwrap(),
            _ => Formula::And(parts),
        }
    }

    pub fn or(mut parts: Vec<Formula>) -> Formula {
        match parts.len() {
            0 => Formula::False,
            1 => parts.pop().unwrap(),
            _ => Formula::Or(parts),
        }
    }

    pub fn negate(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Or(vec![Formula::negate(a), b])
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::And(vec![Formula::implies(a.clone(), b.clone()), Formula::implies(b, a)])
    }

    pub fn exists<S: AsRef<str>>(vars: &[S], body: Formula) -> Formula {
        if vars.is_empty() {
            return body;
        }
        Formula::Exists(vars.iter().map(|v| v.as_ref().to_string()).collect(), Box::new(body))
    }

    pub fn forall<S: AsRef<str>>(vars: &[S], body: Formula) -> Formula {
        if vars.is_empty() {
            return body;
        }
        Formula::Forall(vars.iter().map(|v| v.as_ref().to_string()).collect(), Box::new(body))
    }

    pub fn quantified(q: Quantifier, vars: Vec<String>, body: Formula) -> Formula {
        if vars.is_empty() {
            return body;
        }
        match q {
            Quantifier::Exists => Formula::Exists(vars, Box::new(body)),
            Quantifier::Forall => Formula::Forall(vars, Box::new(body)),
        }
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) | Formula::NegAtom(_) => true,
            Formula::And(fs) | Formula::Or(fs) => fs.iter().all(Formula::is_quantifier_free),
            Formula::Not(f) => f.is_quantifier_free(),
            Formula::Exists(..) | Formula::Forall(..) => false,
        }
    }

    /// True when negation occurs only on atoms, i.e. no `Not` node is present.
    pub fn is_nnf(&self) -> bool {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) | Formula::NegAtom(_) => true,
            Formula::And(fs) | Formula::Or(fs) => fs.iter().all(Formula::is_nnf),
            Formula::Not(_) => false,
            Formula::Exists(_, f) | Formula::Forall(_, f) => f.is_nnf(),
        }
    }

    /// Free variables in order of first occurrence.
    pub fn free_variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut Vec<String>) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Atom(t) | Formula::NegAtom(t) => {
                for v in t.variables() {
                    if !bound.contains(&v) && !out.contains(&v) {
                        out.push(v);
                    }
                }
            }
            Formula::And(fs) | Formula::Or(fs) => fs.iter().for_each(|f| f.collect_free(bound, out)),
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::Exists(vs, f) | Formula::Forall(vs, f) => {
                let depth = bound.len();
                bound.extend(vs.iter().cloned());
                f.collect_free(bound, out);
                bound.truncate(depth);
            }
        }
    }

    /// Every variable name occurring anywhere, bound or free.
    pub fn all_variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_all(&mut out);
        out
    }

    fn collect_all(&self, out: &mut Vec<String>) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Atom(t) | Formula::NegAtom(t) => t.collect_vars(out),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().for_each(|f| f.collect_all(out)),
            Formula::Not(f) => f.collect_all(out),
            Formula::Exists(vs, f) | Formula::Forall(vs, f) => {
                for v in vs {
                    if !out.contains(v) {
                        out.push(v.clone());
                    }
                }
                f.collect_all(out);
            }
        }
    }

    /// Atoms (positive and negative) in left-to-right order.
    pub fn atoms(&self) -> Vec<&Term> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<&'a Term>) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Atom(t) | Formula::NegAtom(t) => out.push(t),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().for_each(|f| f.collect_atoms(out)),
            Formula::Not(f) | Formula::Exists(_, f) | Formula::Forall(_, f) => f.collect_atoms(out),
        }
    }

    /// Renames free occurrences according to `map`.
    pub fn rename_free(&self, map: &HashMap<String, String>) -> Formula {
        match self {
            Formula::True | Formula::False => self.clone(),
            Formula::Atom(t) => Formula::Atom(t.rename(map)),
            Formula::NegAtom(t) => Formula::NegAtom(t.rename(map)),
            Formula::And(fs) => Formula::And(fs.iter().map(|f| f.rename_free(map)).collect()),
            Formula::Or(fs) => Formula::Or(fs.iter().map(|f| f.rename_free(map)).collect()),
            Formula::Not(f) => Formula::Not(Box::new(f.rename_free(map))),
            Formula::Exists(vs, f) | Formula::Forall(vs, f) => {
                let mut inner = map.clone();
                for v in vs {
                    inner.remove(v);
                }
                let body = Box::new(f.rename_free(&inner));
                match self {
                    Formula::Exists(..) => Formula::Exists(vs.clone(), body),
                    _ => Formula::Forall(vs.clone(), body),
                }
            }
        }
    }

    /// Negation normal form: `Not` is pushed through connectives and
    /// quantifiers until it disappears into `NegAtom`.
    pub fn to_nnf(&self) -> Formula {
        self.nnf(false)
    }

    fn nnf(&self, negate: bool) -> Formula {
        match (self, negate) {
            (Formula::True, false) | (Formula::False, true) => Formula::True,
            (Formula::True, true) | (Formula::False, false) => Formula::False,
            (Formula::Atom(t), false) | (Formula::NegAtom(t), true) => Formula::Atom(t.clone()),
            (Formula::Atom(t), true) | (Formula::NegAtom(t), false) => Formula::NegAtom(t.clone()),
            (Formula::And(fs), false) | (Formula::Or(fs), true) => {
                Formula::And(fs.iter().map(|f| f.nnf(negate)).collect())
            }
            (Formula::Or(fs), false) | (Formula::And(fs), true) => {
                Formula::Or(fs.iter().map(|f| f.nnf(negate)).collect())
            }
            (Formula::Not(f), _) => f.nnf(!negate),
            (Formula::Exists(vs, f), false) | (Formula::Forall(vs, f), true) => {
                Formula::Exists(vs.clone(), Box::new(f.nnf(negate)))
            }
            (Formula::Forall(vs, f), false) | (Formula::Exists(vs, f), true) => {
                Formula::Forall(vs.clone(), Box::new(f.nnf(negate)))
            }
        }
    }

    /// Replaces atoms over constants by `True`/`False` and absorbs them
    /// through the connectives. Also flattens nested `And`/`Or` of the same kind.
    pub fn fold_constants(&self) -> Formula {
        match self {
            Formula::Atom(Term::Const(c)) => {
                if c.is_zero() {
                    Formula::True
                } else {
                    Formula::False
                }
            }
            Formula::NegAtom(Term::Const(c)) => {
                if c.is_zero() {
                    Formula::False
                } else {
                    Formula::True
                }
            }
            Formula::True | Formula::False | Formula::Atom(_) | Formula::NegAtom(_) => self.clone(),
            Formula::And(fs) => {
                let mut out = Vec::new();
                for f in fs {
                    match f.fold_constants() {
                        Formula::True => {}
                        Formula::False => return Formula::False,
                        Formula::And(inner) => out.extend(inner),
                        g => out.push(g),
                    }
                }
                Formula::and(out)
            }
            Formula::Or(fs) => {
                let mut out = Vec::new();
                for f in fs {
                    match f.fold_constants() {
                        Formula::False => {}
                        Formula::True => return Formula::True,
                        Formula::Or(inner) => out.extend(inner),
                        g => out.push(g),
                    }
                }
                Formula::or(out)
            }
            Formula::Not(f) => match f.fold_constants() {
                Formula::True => Formula::False,
                Formula::False => Formula::True,
                g => Formula::Not(Box::new(g)),
            },
            Formula::Exists(vs, f) => match f.fold_constants() {
                g @ (Formula::True | Formula::False) => g,
                g => Formula::Exists(vs.clone(), Box::new(g)),
            },
            Formula::Forall(vs, f) => match f.fold_constants() {
                g @ (Formula::True | Formula::False) => g,
                g => Formula::Forall(vs.clone(), Box::new(g)),
            },
        }
    }

    /// Prenex form with NNF matrix.
    ///
    /// Bound variables are first renamed apart from each other and from the
    /// free variables. Quantifier prefixes of the operands of a connective are
    /// then concatenated left to right and adjacent blocks of the same kind merged.
    pub fn to_prenex(&self) -> PrenexFormula {
        let nnf = self.to_nnf();
        let mut used: HashSet<String> = nnf.all_variables().into_iter().collect();
        let mut claimed: HashSet<String> = nnf.free_variables().into_iter().collect();
        let renamed = rename_apart(&nnf, &HashMap::new(), &mut used, &mut claimed);
        let (raw_blocks, matrix) = pull_quantifiers(renamed);
        let mut blocks: Vec<(Quantifier, Vec<String>)> = Vec::new();
        for (q, vs) in raw_blocks {
            match blocks.last_mut() {
                Some((last, lvs)) if *last == q => lvs.extend(vs),
                _ => blocks.push((q, vs)),
            }
        }
        PrenexFormula { blocks, matrix }
    }

    /// Number of connective, quantifier and atom nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::True | Formula::False => 1,
            Formula::Atom(t) | Formula::NegAtom(t) => t.size(),
            Formula::And(fs) | Formula::Or(fs) => 1 + fs.iter().map(Formula::size).sum::<usize>(),
            Formula::Not(f) | Formula::Exists(_, f) | Formula::Forall(_, f) => 1 + f.size(),
        }
    }
}

fn fresh_name(base: &str, used: &HashSet<String>) -> String {
    (1..).map(|i| format!("{base}_{i}")).find(|n| !used.contains(n)).expect("unbounded name supply")
}

fn rename_apart(
    f: &Formula,
    env: &HashMap<String, String>,
    used: &mut HashSet<String>,
    claimed: &mut HashSet<String>,
) -> Formula {
    match f {
        Formula::True | Formula::False => f.clone(),
        Formula::Atom(t) => Formula::Atom(t.rename(env)),
        Formula::NegAtom(t) => Formula::NegAtom(t.rename(env)),
        Formula::And(fs) => Formula::And(fs.iter().map(|g| rename_apart(g, env, used, claimed)).collect()),
        Formula::Or(fs) => Formula::Or(fs.iter().map(|g| rename_apart(g, env, used, claimed)).collect()),
        Formula::Not(g) => Formula::Not(Box::new(rename_apart(g, env, used, claimed))),
        Formula::Exists(vs, g) | Formula::Forall(vs, g) => {
            let mut inner = env.clone();
            let mut names = Vec::with_capacity(vs.len());
            for v in vs {
                let name = if claimed.contains(v) {
                    let n = fresh_name(v, used);
                    used.insert(n.clone());
                    n
                } else {
                    v.clone()
                };
                claimed.insert(name.clone());
                if name == *v {
                    inner.remove(v);
                } else {
                    inner.insert(v.clone(), name.clone());
                }
                names.push(name);
            }
            let body = Box::new(rename_apart(g, &inner, used, claimed));
            match f {
                Formula::Exists(..) => Formula::Exists(names, body),
                _ => Formula::Forall(names, body),
            }
        }
    }
}

type Prefix = Vec<(Quantifier, Vec<String>)>;

fn pull_quantifiers(f: Formula) -> (Prefix, Formula) {
    match f {
        Formula::Exists(vs, g) => {
            let (mut prefix, m) = pull_quantifiers(*g);
            prefix.insert(0, (Quantifier::Exists, vs));
            (prefix, m)
        }
        Formula::Forall(vs, g) => {
            let (mut prefix, m) = pull_quantifiers(*g);
            prefix.insert(0, (Quantifier::Forall, vs));
            (prefix, m)
        }
        Formula::And(fs) => {
            let (prefix, parts) = pull_all(fs);
            (prefix, Formula::And(parts))
        }
        Formula::Or(fs) => {
            let (prefix, parts) = pull_all(fs);
            (prefix, Formula::Or(parts))
        }
        other => (Vec::new(), other),
    }
}

fn pull_all(fs: Vec<Formula>) -> (Prefix, Vec<Formula>) {
    let mut prefix = Vec::new();
    let mut parts = Vec::with_capacity(fs.len());
    for f in fs {
        let (p, m) = pull_quantifiers(f);
        prefix.extend(p);
        parts.push(m);
    }
    (prefix, parts)
}

impl PrenexFormula {
    pub fn innermost(&self) -> Option<Quantifier> {
        self.blocks.last().map(|(q, _)| *q)
    }

    pub fn bound_variables(&self) -> Vec<String> {
        self.blocks.iter().flat_map(|(_, vs)| vs.iter().cloned()).collect()
    }

    pub fn free_variables(&self) -> Vec<String> {
        self.to_formula().free_variables()
    }

    pub fn to_formula(&self) -> Formula {
        self.blocks.iter().rev().fold(self.matrix.clone(), |body, (q, vs)| Formula::quantified(*q, vs.clone(), body))
    }

    /// Checks alternation of blocks and that the matrix is quantifier-free NNF.
    pub fn is_well_formed(&self) -> bool {
        self.blocks.iter().all(|(_, vs)| !vs.is_empty())
            && self.blocks.windows(2).all(|w| w[0].0 != w[1].0)
            && self.matrix.is_quantifier_free()
            && self.matrix.is_nnf()
    }
}

impl fmt::Display for PrenexFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_formula())
    }
}

fn needs_parens_in_connective(f: &Formula) -> bool {
    matches!(f, Formula::And(_) | Formula::Or(_) | Formula::Exists(..) | Formula::Forall(..))
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::True => f.write_str("true"),
            Formula::False => f.write_str("false"),
            Formula::Atom(t) => write!(f, "{t} = 0"),
            Formula::NegAtom(t) => write!(f, "{t} != 0"),
            Formula::And(fs) | Formula::Or(fs) => {
                if fs.is_empty() {
                    return f.write_str(if matches!(self, Formula::And(_)) { "true" } else { "false" });
                }
                let op = if matches!(self, Formula::And(_)) { " /\\ " } else { " \\/ " };
                for (i, g) in fs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(op)?;
                    }
                    if needs_parens_in_connective(g) {
                        write!(f, "({g})")?;
                    } else {
                        write!(f, "{g}")?;
                    }
                }
                Ok(())
            }
            Formula::Not(g) => match **g {
                Formula::True | Formula::False | Formula::Not(_) => write!(f, "~{g}"),
                _ => write!(f, "~({g})"),
            },
            Formula::Exists(vs, g) | Formula::Forall(vs, g) => {
                let kw = if matches!(self, Formula::Exists(..)) { "exists" } else { "forall" };
                write!(f, "{kw} {}. {g}", vs.join(" "))
            }
        }
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> FieldSpec {
        FieldSpec::prime(3).unwrap()
    }

    #[test]
    fn parses_simple_existential() {
        let f = parse("exists x. x = 0", &f3()).unwrap();
        assert_eq!(f, Formula::Exists(vec!["x".into()], Box::new(Formula::Atom(Term::var("x")))));
    }

    #[test]
    fn walkthrough_has_single_free_variable() {
        let f = parse("exists b. forall a. exists y x. (y = a*x^2 + b*x + c /\\ y = a*x)", &f3()).unwrap();
        assert_eq!(f.free_variables(), vec!["c".to_string()]);
        let p = f.to_prenex();
        assert_eq!(p.blocks.len(), 3);
        assert!(p.is_well_formed());
    }

    #[test]
    fn dangling_operator_is_an_error() {
        let e = parse("x !=", &f3()).unwrap_err();
        assert_eq!((e.line, e.col), (1, 5));
    }

    #[test]
    fn de_morgan_and_duality() {
        let f = parse("~(x = 0 /\\ y = 0)", &f3()).unwrap().to_nnf();
        assert_eq!(f.to_string(), "x != 0 \\/ y != 0");
        let g = parse("~exists x. x = 0", &f3()).unwrap().to_nnf();
        assert_eq!(g.to_string(), "forall x. x != 0");
    }

    #[test]
    fn prenex_renames_apart_and_merges() {
        let f = parse("(exists x. x = 0) /\\ exists x. x = 1", &f3()).unwrap();
        let p = f.to_prenex();
        assert_eq!(p.blocks, vec![(Quantifier::Exists, vec!["x".to_string(), "x_1".to_string()])]);
        assert_eq!(p.matrix.to_string(), "x = 0 /\\ x_1 - 1 = 0");
    }

    #[test]
    fn prenex_avoids_free_names() {
        let f = parse("x = 1 /\\ exists x. x = 0", &f3()).unwrap();
        let p = f.to_prenex();
        assert_eq!(p.blocks, vec![(Quantifier::Exists, vec!["x_1".to_string()])]);
        assert_eq!(p.free_variables(), vec!["x".to_string()]);
    }

    #[test]
    fn rejects_reserved_and_shadowed_names() {
        assert!(parse("_u1 = 0", &f3()).is_err());
        assert!(parse("exists x. exists x. x = 0", &f3()).is_err());
        assert!(parse("exists x x. x = 0", &f3()).is_err());
        assert!(parse("exists true. x = 0", &f3()).is_err());
        let f4 = FieldSpec::of_order(4).unwrap();
        assert!(parse("exists w. w = 0", &f4).is_err());
        assert!(parse("x = w", &f4).is_ok());
    }

    #[test]
    fn parenthesised_terms_and_formulas() {
        let f = parse("(x + 1) * y = 0 /\\ ((x = 1))", &f3()).unwrap();
        assert_eq!(f.to_string(), "(x + 1)*y = 0 /\\ x - 1 = 0");
        let g = parse("(x) = (y)", &f3()).unwrap();
        assert_eq!(g.to_string(), "x - y = 0");
    }

    #[test]
    fn implication_and_iff_desugar() {
        let f = parse("x = 0 -> y = 0", &f3()).unwrap();
        assert_eq!(f.to_nnf().to_string(), "x != 0 \\/ y = 0");
        let g = parse("x = 0 <-> y = 0", &f3()).unwrap();
        assert_eq!(g.to_nnf().to_string(), "(x != 0 \\/ y = 0) /\\ (y != 0 \\/ x = 0)");
    }

    #[test]
    fn comments_and_keywords() {
        let f = parse("# header\ntrue /\\ ~false # trailing\n", &f3()).unwrap();
        assert_eq!(f.fold_constants(), Formula::True);
    }

    #[test]
    fn constant_atoms_fold() {
        let f = parse("1 = 0 \\/ x = 0", &f3()).unwrap().fold_constants();
        assert_eq!(f.to_string(), "x = 0");
        let g = parse("2 != 0 /\\ x = 0", &f3()).unwrap().fold_constants();
        assert_eq!(g.to_string(), "x = 0");
    }

    #[test]
    fn error_positions_track_lines() {
        let e = parse("x = 0 /\\\n  y = = 1", &f3()).unwrap_err();
        assert_eq!((e.line, e.col), (2, 7));
    }
}
