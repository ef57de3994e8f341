//! Flattening of quantifier-free formulas into generators of an ideal.
//!
//! A disequation `f != 0` becomes `f*u - 1 = 0` for a fresh `u`, and a
//! disjunction of subformulas with generator lists `J1`, `J2` becomes
//! `J1*v` together with `J2*(1 - v)` for a fresh `v`. The projection that forgets
//! the fresh variables maps the variety of the result onto the realization of
//! the input.

use crate::field::FieldSpec;
use crate::logic::Formula;
use crate::term::Term;

/// Counters for system-generated variable names (`_u1`, `_v1`, `_z1`, ...).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FreshNames {
    u: usize,
    v: usize,
    z: usize,
}

impl FreshNames {
    pub fn new() -> FreshNames {
        FreshNames::default()
    }

    pub fn next_u(&mut self) -> String {
        self.u += 1;
        format!("_u{}", self.u)
    }

    pub fn next_v(&mut self) -> String {
        self.v += 1;
        format!("_v{}", self.v)
    }

    pub fn next_z(&mut self) -> String {
        self.z += 1;
        format!("_z{}", self.z)
    }
}

/// Generators whose common zeros, projected away from the fresh variables,
/// are the realization of the flattened formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlattenResult {
    pub fresh_u: Vec<String>,
    pub fresh_v: Vec<String>,
    pub conjuncts: Vec<Term>,
}

impl FlattenResult {
    /// Fresh variables, negation variables first.
    pub fn fresh_vars(&self) -> Vec<String> {
        self.fresh_u.iter().chain(&self.fresh_v).cloned().collect()
    }
}

/// Replaces every `NegAtom(f)` by `Atom(f*u - 1)` with a fresh `u`, in
/// left-to-right order. The input must be quantifier-free NNF.
pub fn eliminate_negations(psi: &Formula, field: &FieldSpec, names: &mut FreshNames) -> (Vec<String>, Formula) {
    let mut fresh = Vec::new();
    let out = rabinowitsch(psi, field, names, &mut fresh);
    (fresh, out)
}

fn rabinowitsch(f: &Formula, field: &FieldSpec, names: &mut FreshNames, fresh: &mut Vec<String>) -> Formula {
    match f {
        Formula::NegAtom(t) => {
            let u = names.next_u();
            fresh.push(u.clone());
            Formula::Atom(Term::sum(vec![times(t.clone(), &Term::Var(u)), Term::int(field, -1)]))
        }
        Formula::And(fs) => Formula::And(fs.iter().map(|g| rabinowitsch(g, field, names, fresh)).collect()),
        Formula::Or(fs) => Formula::Or(fs.iter().map(|g| rabinowitsch(g, field, names, fresh)).collect()),
        Formula::True | Formula::False | Formula::Atom(_) => f.clone(),
        Formula::Not(_) | Formula::Exists(..) | Formula::Forall(..) => {
            panic!("eliminate_negations expects a quantifier-free NNF formula")
        }
    }
}

/// Generators for a negation-free, quantifier-free formula. `n`-ary
/// disjunctions are folded from the left with one fresh `v` per fold.
pub fn flatten_to_ideal(psi: &Formula, field: &FieldSpec, names: &mut FreshNames) -> FlattenResult {
    let mut fresh_v = Vec::new();
    let conjuncts = generators(psi, field, names, &mut fresh_v);
    FlattenResult { fresh_u: Vec::new(), fresh_v, conjuncts }
}

/// Negation removal followed by flattening.
pub fn flatten(psi: &Formula, field: &FieldSpec, names: &mut FreshNames) -> FlattenResult {
    let (fresh_u, no_neg) = eliminate_negations(psi, field, names);
    let mut r = flatten_to_ideal(&no_neg, field, names);
    r.fresh_u = fresh_u;
    r
}

fn times(t: Term, factor: &Term) -> Term {
    match t {
        Term::Mul(mut fs) => {
            fs.push(factor.clone());
            Term::Mul(fs)
        }
        t => Term::Mul(vec![t, factor.clone()]),
    }
}

fn generators(f: &Formula, field: &FieldSpec, names: &mut FreshNames, fresh_v: &mut Vec<String>) -> Vec<Term> {
    match f {
        Formula::True => Vec::new(),
        Formula::False => vec![Term::int(field, 1)],
        Formula::Atom(t) => vec![t.clone()],
        Formula::And(fs) => fs.iter().flat_map(|g| generators(g, field, names, fresh_v)).collect(),
        Formula::Or(fs) => {
            let Some((first, rest)) = fs.split_first() else {
                return vec![Term::int(field, 1)];
            };
            let mut acc = generators(first, field, names, fresh_v);
            for g in rest {
                let v = names.next_v();
                fresh_v.push(v.clone());
                let right = generators(g, field, names, fresh_v);
                let v_term = Term::Var(v);
                let one_minus_v = Term::difference(Term::int(field, 1), v_term.clone());
                let mut next: Vec<Term> = acc.into_iter().map(|t| times(t, &v_term)).collect();
                next.extend(right.into_iter().map(|t| times(t, &one_minus_v)));
                acc = next;
            }
            acc
        }
        Formula::NegAtom(_) | Formula::Not(_) | Formula::Exists(..) | Formula::Forall(..) => {
            panic!("flatten_to_ideal expects a quantifier-free formula without negations")
        }
    }
}

/// Counts of `NegAtom` and `Or` nodes, each `n`-ary `Or` counting `n - 1`.
pub fn negation_and_disjunction_counts(f: &Formula) -> (usize, usize) {
    match f {
        Formula::NegAtom(_) => (1, 0),
        Formula::And(fs) | Formula::Or(fs) => {
            let (n, mut d) = fs.iter().map(negation_and_disjunction_counts).fold((0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
            if matches!(f, Formula::Or(_)) {
                d += fs.len().saturating_sub(1);
            }
            (n, d)
        }
        Formula::Not(g) | Formula::Exists(_, g) | Formula::Forall(_, g) => negation_and_disjunction_counts(g),
        _ => (0, 0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse;
    use crate::oracle::{project, realization_over, OracleOptions};

    fn f3() -> FieldSpec {
        FieldSpec::prime(3).unwrap()
    }

    fn conj(r: &FlattenResult) -> Formula {
        Formula::and(r.conjuncts.iter().cloned().map(Formula::Atom).collect())
    }

    #[test]
    fn negation_becomes_rabinowitsch_atom() {
        let psi = parse("x*y != 0", &f3()).unwrap();
        let (fresh, out) = eliminate_negations(&psi, &f3(), &mut FreshNames::new());
        assert_eq!(fresh, vec!["_u1".to_string()]);
        assert_eq!(out.to_string(), "x*y*_u1 - 1 = 0");
    }

    #[test]
    fn negation_free_input_is_unchanged() {
        let psi = parse("x = 0 \\/ y = 1", &f3()).unwrap();
        let (fresh, out) = eliminate_negations(&psi, &f3(), &mut FreshNames::new());
        assert!(fresh.is_empty());
        assert_eq!(out, psi);
    }

    #[test]
    fn walkthrough_negated_conjunction() {
        let f = f3();
        let psi = parse("~(b^2 - b*c = 0 /\\ c^2 - 1 = 0)", &f).unwrap().to_nnf();
        let mut names = FreshNames::new();
        let (fresh, no_neg) = eliminate_negations(&psi, &f, &mut names);
        assert_eq!(fresh, vec!["_u1".to_string(), "_u2".to_string()]);
        assert_eq!(no_neg.to_string(), "(b^2 - b*c)*_u1 - 1 = 0 \\/ (c^2 - 1)*_u2 - 1 = 0");
        let flat = flatten_to_ideal(&no_neg, &f, &mut names);
        assert_eq!(flat.fresh_v, vec!["_v1".to_string()]);
        let printed: Vec<String> = flat.conjuncts.iter().map(Term::to_string).collect();
        assert_eq!(printed, vec!["((b^2 - b*c)*_u1 - 1)*_v1", "((c^2 - 1)*_u2 - 1)*(1 - _v1)"]);
    }

    #[test]
    fn asymmetric_printed_form_agrees_only_after_binding_b() {
        let f = f3();
        let vars: Vec<String> = ["b", "c", "_u1", "_u2", "_v1"].iter().map(|s| s.to_string()).collect();
        let systematic = parse("((b^2 - b*c)*u1 - 1)*v = 0 /\\ ((c^2 - 1)*u2 - 1)*(1 - v) = 0", &f).unwrap();
        let shortcut = parse("((b^2 - b*c)*u1 - 1)*v = 0 /\\ ((c^2 - 1)*u2)*(1 - v) = 0", &f).unwrap();
        let rename = |phi: &Formula| {
            let map = [("u1", "_u1"), ("u2", "_u2"), ("v", "_v1")]
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect();
            phi.rename_free(&map)
        };
        let opts = OracleOptions::default();
        let a = realization_over(&rename(&systematic), &f, &vars, &opts).unwrap();
        let b = realization_over(&rename(&shortcut), &f, &vars, &opts).unwrap();
        let drop = ["_u1", "_u2", "_v1"];
        let pa = project(&a, &drop).unwrap();
        let pb = project(&b, &drop).unwrap();
        let direct = parse("~(b^2 - b*c = 0 /\\ c^2 - 1 = 0)", &f).unwrap();
        assert_eq!(realization_over(&direct, &f, &vars[..2], &opts).unwrap(), pa);
        // Without the `- 1` the second factor vanishes at u2 = 0, so every (b, c) survives.
        assert_eq!(pa.len(), 5);
        assert!(pb.is_full());
        assert_eq!(project(&pa, &["b"]).unwrap(), project(&pb, &["b"]).unwrap());
    }

    #[test]
    fn atoms_and_binary_disjunction() {
        let f = f3();
        let r = flatten(&parse("x = 0", &f).unwrap(), &f, &mut FreshNames::new());
        assert_eq!(r.conjuncts, vec![Term::var("x")]);
        assert!(r.fresh_vars().is_empty());
        let r = flatten(&parse("x = 0 \\/ y = 0", &f).unwrap(), &f, &mut FreshNames::new());
        let printed: Vec<String> = r.conjuncts.iter().map(Term::to_string).collect();
        assert_eq!(printed, vec!["x*_v1", "y*(1 - _v1)"]);
    }

    #[test]
    fn constants_flatten_to_trivial_ideals() {
        let f = f3();
        let t = flatten(&Formula::True, &f, &mut FreshNames::new());
        assert!(t.conjuncts.is_empty());
        let r = flatten(&Formula::False, &f, &mut FreshNames::new());
        let vars: Vec<String> = Vec::new();
        let real = realization_over(&conj(&r), &f, &vars, &OracleOptions::default()).unwrap();
        assert!(real.is_empty());
    }

    #[test]
    fn nary_disjunction_uses_one_variable_per_fold() {
        let f = f3();
        let psi = parse("x = 0 \\/ x = 1 \\/ x = 2 \\/ y = 0", &f).unwrap();
        let r = flatten(&psi, &f, &mut FreshNames::new());
        assert_eq!(r.fresh_v, vec!["_v1", "_v2", "_v3"]);
        assert_eq!(negation_and_disjunction_counts(&psi), (0, 3));
    }
}
