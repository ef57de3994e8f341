//! Random instances and property checks shared by the integration tests.

#![allow(dead_code)]

use ffqe::groebner::{buchberger, eliminate, Ideal};
use ffqe::oracle::{self, project, variety};
use ffqe::transform::{flatten, negation_and_disjunction_counts, FreshNames};
use ffqe::{FieldSpec, Formula, Polynomial, Quantifier, Ring, Term};
use rand::seq::SliceRandom;
use rand::Rng;

pub const NAMES: [&str; 3] = ["x", "y", "z"];

/// Base seed of the randomized suites, overridable with `FFQE_SEED`.
pub fn base_seed() -> u64 {
    std::env::var("FFQE_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(0x5eed_f1e1d)
}

pub fn names(n: usize) -> Vec<String> {
    NAMES[..n].iter().map(|s| s.to_string()).collect()
}

/// A sum of up to `max_terms` monomials of total degree at most `max_deg`.
pub fn random_term<R: Rng>(rng: &mut R, field: &FieldSpec, vars: &[String], max_terms: usize, max_deg: u32) -> Term {
    let k = rng.gen_range(1..=max_terms);
    let mut summands = Vec::with_capacity(k);
    for _ in 0..k {
        let c = field.element(rng.gen_range(1..field.q()));
        let mut factors = if c.is_one() { Vec::new() } else { vec![Term::Const(c)] };
        let mut budget = rng.gen_range(0..=max_deg);
        while budget > 0 && !vars.is_empty() {
            let v = vars.choose(rng).unwrap();
            let e = rng.gen_range(1..=budget);
            factors.push(if e == 1 { Term::var(v) } else { Term::power(Term::var(v), e) });
            budget -= e;
        }
        summands.push(if factors.is_empty() { Term::int(field, 1) } else { Term::product(factors) });
    }
    Term::sum(summands)
}

pub fn random_poly<R: Rng>(rng: &mut R, ring: &Ring, max_terms: usize, max_deg: u32) -> Polynomial {
    let vars = ring.vars().names().to_vec();
    random_term(rng, ring.field(), &vars, max_terms, max_deg).to_polynomial(ring).unwrap()
}

fn random_atom<R: Rng>(rng: &mut R, field: &FieldSpec, vars: &[String]) -> Formula {
    let lhs = random_term(rng, field, vars, 2, 2);
    let rhs = if rng.gen_bool(0.5) { random_term(rng, field, vars, 2, 2) } else { Term::int(field, 0) };
    if rng.gen_bool(0.3) {
        Formula::neq(lhs, rhs)
    } else {
        Formula::eq(lhs, rhs)
    }
}

/// A quantifier-free formula with exactly `atoms` atoms.
pub fn random_matrix<R: Rng>(rng: &mut R, field: &FieldSpec, vars: &[String], atoms: usize) -> Formula {
    if atoms <= 1 {
        let a = random_atom(rng, field, vars);
        return if rng.gen_bool(0.1) { Formula::negate(a) } else { a };
    }
    let left = rng.gen_range(1..atoms);
    let l = random_matrix(rng, field, vars, left);
    let r = random_matrix(rng, field, vars, atoms - left);
    let f = match rng.gen_range(0..4) {
        0 | 1 => Formula::and(vec![l, r]),
        2 => Formula::or(vec![l, r]),
        _ => Formula::implies(l, r),
    };
    if rng.gen_bool(0.1) {
        Formula::negate(f)
    } else {
        f
    }
}

/// A formula with at most three variables, two quantifier blocks and six
/// atoms. Occasionally a quantifier is placed under a connective.
pub fn random_formula<R: Rng>(rng: &mut R, field: &FieldSpec) -> Formula {
    let n = rng.gen_range(1..=3);
    let mut vars = names(n);
    vars.shuffle(rng);
    let atoms = rng.gen_range(1..=6);
    let nblocks = rng.gen_range(0..=2.min(n));
    let mut bound = rng.gen_range(nblocks..=n);
    if nblocks == 0 {
        bound = 0;
    }
    let mut blocks: Vec<Vec<String>> = vec![Vec::new(); nblocks];
    for (i, v) in vars[..bound].iter().enumerate() {
        let b = if i < nblocks { i } else { rng.gen_range(0..nblocks) };
        blocks[b].push(v.clone());
    }
    let first = if rng.gen_bool(0.5) { Quantifier::Exists } else { Quantifier::Forall };
    let quantify = |body: Formula, blocks: &[Vec<String>]| {
        let mut f = body;
        let mut q = if blocks.len() % 2 == 1 { first } else { first.dual() };
        for b in blocks.iter().rev() {
            f = Formula::quantified(q, b.clone(), f);
            q = q.dual();
        }
        f
    };
    if nblocks > 0 && atoms >= 2 && rng.gen_bool(0.2) {
        let inner = rng.gen_range(1..atoms);
        let body = random_matrix(rng, field, &vars, inner);
        let side = random_matrix(rng, field, &vars, atoms - inner);
        let quantified = quantify(body, &blocks);
        return if rng.gen_bool(0.5) {
            Formula::and(vec![quantified, side])
        } else {
            Formula::or(vec![side, quantified])
        };
    }
    quantify(random_matrix(rng, field, &vars, atoms), &blocks)
}

/// `f` lies in `J + field polynomials` exactly when it vanishes on `V(J)`.
pub fn check_nullstellensatz(gens: &[Polynomial], f: &Polynomial) -> Result<(), String> {
    let ring = f.ring();
    let gb = buchberger(&Ideal::new(ring, gens.to_vec()).unwrap().with_all_field_polynomials());
    let member = gb.contains(f).unwrap();
    let v = variety(gens, ring);
    let vanishes = v.sorted_points().iter().all(|p| f.evaluate_raw(p) == 0);
    if member == vanishes {
        Ok(())
    } else {
        Err(format!("J = {gens:?}, f = {f}: membership {member}, vanishing {vanishes}"))
    }
}

/// The variety of the `k`-th elimination ideal is the projection of `V(J)`.
pub fn check_elimination_projection(gens: &[Polynomial], k: usize) -> Result<(), String> {
    let ring = gens[0].ring();
    let names = ring.vars().names().to_vec();
    let gb = buchberger(&Ideal::new(ring, gens.to_vec()).unwrap().with_all_field_polynomials());
    let kept = &names[k..];
    let elim = eliminate(&gb, kept).unwrap();
    let sub = Ring::lex(ring.field(), kept).unwrap();
    let mapped: Vec<Polynomial> = elim.iter().map(|p| p.map_into(&sub).unwrap()).collect();
    let projected = project(&variety(gens, ring), &names[..k]).unwrap();
    if variety(&mapped, &sub) == projected {
        Ok(())
    } else {
        Err(format!("J = {gens:?}, eliminating {:?}: got {elim:?}", &names[..k]))
    }
}

/// Flattening preserves the realization after projecting away the fresh
/// variables, and introduces one variable per negation and per extra
/// disjunct.
pub fn check_flattening(psi: &Formula, field: &FieldSpec, vars: &[String]) -> Result<(), String> {
    let nnf = psi.to_nnf();
    let (negs, ors) = negation_and_disjunction_counts(&nnf);
    let flat = flatten(&nnf, field, &mut FreshNames::new());
    if flat.fresh_u.len() != negs || flat.fresh_v.len() != ors {
        return Err(format!(
            "{psi}: fresh u={} v={}, expected {negs} and {ors}",
            flat.fresh_u.len(),
            flat.fresh_v.len()
        ));
    }
    let fresh = flat.fresh_vars();
    let all: Vec<String> = vars.iter().cloned().chain(fresh.iter().cloned()).collect();
    let ring = Ring::lex(field, &all).unwrap();
    let gens: Vec<Polynomial> = flat.conjuncts.iter().map(|t| t.to_polynomial(&ring).unwrap()).collect();
    let projected = project(&variety(&gens, &ring), &fresh).unwrap();
    let expected = oracle::realization_over(psi, field, vars, &Default::default()).unwrap();
    if projected == expected {
        Ok(())
    } else {
        Err(format!("{psi}: projected variety differs from the realization"))
    }
}

/// Every S-polynomial of the basis reduces to zero, the basis is reduced,
/// and shuffling the generators does not change it.
pub fn check_groebner<R: Rng>(rng: &mut R, gens: &[Polynomial]) -> Result<(), String> {
    let ring = gens[0].ring();
    let gb = buchberger(&Ideal::new(ring, gens.to_vec()).unwrap());
    let polys = gb.polys();
    for (i, f) in polys.iter().enumerate() {
        if !f.is_monic() {
            return Err(format!("{f} is not monic"));
        }
        for (j, g) in polys.iter().enumerate() {
            if i < j && !f.s_polynomial(g).unwrap().normal_form(polys).unwrap().is_zero() {
                return Err(format!("S({f}, {g}) does not reduce to zero"));
            }
            if i != j {
                let lm = g.leading_monomial().unwrap();
                if f.terms().any(|(m, _)| lm.divides(m)) {
                    return Err(format!("a term of {f} is divisible by the leading monomial of {g}"));
                }
            }
        }
    }
    for f in gens {
        if !gb.contains(f).unwrap() {
            return Err(format!("generator {f} is not in the ideal of its basis"));
        }
    }
    let mut shuffled = gens.to_vec();
    shuffled.shuffle(rng);
    let again = buchberger(&Ideal::new(ring, shuffled).unwrap());
    if again.polys() != polys {
        return Err(format!("bases differ after shuffling {gens:?}"));
    }
    Ok(())
}

/// `a^q = a` for every element of `F_q`. Returns the number of elements checked.
pub fn check_fermat(q: u64) -> Result<usize, String> {
    let field = FieldSpec::of_order(q).map_err(|e| e.to_string())?;
    let elems = field.elements();
    for a in &elems {
        if a.pow(q) != *a {
            return Err(format!("a^{q} != a for a = {a} in F_{q}"));
        }
    }
    Ok(elems.len())
}

pub fn prime_powers_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&q| ffqe::field::prime_power(q).is_some()).collect()
}
