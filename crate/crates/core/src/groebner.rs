//! Buchberger's algorithm, elimination ideals and ideal membership.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::poly::{reduce_full, s_poly_raw, Monomial, MonomialOrder, PolyError, Polynomial, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("budget exhausted: {0}")]
    BudgetExhausted(String),
    #[error("variables {0:?} are not a suffix of the ring's variable order")]
    NotASuffix(Vec<String>),
    #[error("the term order does not eliminate the requested variables")]
    NotAnEliminationOrder,
    #[error("the ideal is not zero-dimensional in variable `{0}`")]
    NotZeroDimensional(String),
    #[error("a reduction exceeded {0} pending terms")]
    TermLimit(usize),
}

/// Limits on a Gröbner basis computation.
#[derive(Clone, Copy, Debug, Default)]
pub struct Budget {
    pub deadline: Option<Instant>,
    pub max_basis: Option<usize>,
    /// Largest number of pending terms allowed in a single reduction.
    pub max_terms: Option<usize>,
}

impl Budget {
    pub fn unlimited() -> Budget {
        Budget::default()
    }

    pub fn with_timeout(timeout: Duration) -> Budget {
        Budget { deadline: Some(Instant::now() + timeout), ..Budget::default() }
    }

    pub fn expired(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }

    fn check_time(&self) -> Result<(), GroebnerError> {
        if self.expired() {
            Err(GroebnerError::BudgetExhausted("time limit reached".into()))
        } else {
            Ok(())
        }
    }

    /// Step callback for reductions: checks the term limit on every step and
    /// the clock every 256 steps.
    fn reduction_guard(&self) -> impl FnMut(usize) -> Result<(), GroebnerError> + '_ {
        let mut steps = 0u32;
        move |pending| {
            if self.max_terms.is_some_and(|m| pending > m) {
                return Err(GroebnerError::TermLimit(self.max_terms.unwrap()));
            }
            steps = steps.wrapping_add(1);
            if steps.is_multiple_of(256) {
                self.check_time()?;
            }
            Ok(())
        }
    }
}

/// Counters collected during one Buchberger run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GbStats {
    pub input_generators: usize,
    pub pairs_created: usize,
    pub pairs_reduced: usize,
    pub product_criterion: usize,
    pub chain_criterion: usize,
    pub zero_reductions: usize,
    pub max_intermediate: usize,
    pub output_size: usize,
    pub elapsed: Duration,
}

/// Finitely generated ideal of a polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    ring: Ring,
    generators: Vec<Polynomial>,
}

impl Ideal {
    /// Drops zero generators; fails when a generator belongs to another ring.
    pub fn new(ring: &Ring, generators: Vec<Polynomial>) -> Result<Ideal, GroebnerError> {
        if generators.iter().any(|g| g.ring() != ring) {
            return Err(PolyError::RingMismatch.into());
        }
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal { ring: ring.clone(), generators })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// Appends `v^q - v` for each listed variable unless already present.
    pub fn add_field_polynomials<S: AsRef<str>>(&self, vars: &[S]) -> Result<Ideal, GroebnerError> {
        let mut generators = self.generators.clone();
        for v in vars {
            let fp = self.ring.field_polynomial(v.as_ref())?;
            if !generators.contains(&fp) {
                generators.push(fp);
            }
        }
        Ok(Ideal { ring: self.ring.clone(), generators })
    }

    pub fn with_all_field_polynomials(&self) -> Ideal {
        let names: Vec<String> = self.ring.vars().names().to_vec();
        self.add_field_polynomials(&names).expect("ring variables are known")
    }
}

/// Reduced Gröbner basis: monic, autoreduced, sorted descending by leading monomial.
#[derive(Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Ring,
    polys: Vec<Polynomial>,
}

impl fmt::Debug for GroebnerBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.polys.iter()).finish()
    }
}

impl fmt::Display for GroebnerBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.polys {
            writeln!(f, "{p}")?;
        }
        Ok(())
    }
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.ring.order()
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn into_polys(self) -> Vec<Polynomial> {
        self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// The basis `{1}` of the whole ring.
    pub fn is_unit(&self) -> bool {
        self.polys.len() == 1 && self.polys[0].is_constant()
    }

    /// Remainder of `f` on division by the basis.
    pub fn reduce(&self, f: &Polynomial) -> Result<Polynomial, GroebnerError> {
        Ok(f.normal_form(&self.polys)?)
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool, GroebnerError> {
        Ok(self.reduce(f)?.is_zero())
    }
}

pub fn ideal_membership(f: &Polynomial, gb: &GroebnerBasis) -> Result<bool, GroebnerError> {
    gb.contains(f)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct State<'a> {
    ring: &'a Ring,
    polys: Vec<Polynomial>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
    stats: GbStats,
    budget: &'a Budget,
}

impl<'a> State<'a> {
    fn lm(&self, i: usize) -> &Monomial {
        self.polys[i].leading_monomial().expect("basis elements are nonzero")
    }

    fn reduce(&self, f: &Polynomial) -> Result<Polynomial, GroebnerError> {
        let reducers: Vec<&Polynomial> =
            self.polys.iter().zip(&self.active).filter(|(_, a)| **a).map(|(p, _)| p).collect();
        let budget = self.budget;
        reduce_full(f, &reducers, &mut budget.reduction_guard())
    }

    /// Gebauer–Möller installation of a new basis element.
    fn update(&mut self, h: Polynomial) -> Result<(), GroebnerError> {
        let hidx = self.polys.len();
        let lm_h = h.leading_monomial().unwrap().clone();
        self.polys.push(h);
        self.active.push(true);
        if let Some(max) = self.budget.max_basis {
            if self.polys.len() > max {
                return Err(GroebnerError::BudgetExhausted(format!("basis exceeded {max} elements")));
            }
        }

        let mut candidates: Vec<(usize, Monomial, bool)> = (0..hidx)
            .filter(|&g| self.active[g])
            .map(|g| {
                let lm_g = self.lm(g);
                (g, lm_h.lcm(lm_g), lm_h.is_coprime(lm_g))
            })
            .collect();
        self.stats.pairs_created += candidates.len();

        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        while !candidates.is_empty() {
            let (g, l, coprime) = candidates.remove(0);
            let dominated = candidates.iter().chain(kept.iter()).any(|(_, l2, _)| l2.divides(&l));
            if coprime || !dominated {
                kept.push((g, l, coprime));
            } else {
                self.stats.chain_criterion += 1;
            }
        }

        let before = self.pairs.len();
        let polys = &self.polys;
        self.pairs.retain(|p| {
            let lm_i = polys[p.i].leading_monomial().unwrap();
            let lm_j = polys[p.j].leading_monomial().unwrap();
            !(lm_h.divides(&p.lcm) && lm_h.lcm(lm_i) != p.lcm && lm_h.lcm(lm_j) != p.lcm)
        });
        self.stats.chain_criterion += before - self.pairs.len();

        for (g, l, coprime) in kept {
            if coprime {
                self.stats.product_criterion += 1;
            } else {
                self.pairs.push(Pair { i: g, j: hidx, lcm: l });
            }
        }

        for g in 0..hidx {
            if self.active[g] && lm_h.divides(self.lm(g)) {
                self.active[g] = false;
            }
        }
        let live = self.active.iter().filter(|a| **a).count();
        self.stats.max_intermediate = self.stats.max_intermediate.max(live);
        Ok(())
    }

    /// Index of the pair with the smallest lcm (normal strategy).
    fn select(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (k, p) in self.pairs.iter().enumerate() {
            best = match best {
                None => Some(k),
                Some(b) => {
                    let q = &self.pairs[b];
                    let ord = self.ring.cmp(&p.lcm, &q.lcm).then((p.j, p.i).cmp(&(q.j, q.i)));
                    if ord == Ordering::Less {
                        Some(k)
                    } else {
                        Some(b)
                    }
                }
            };
        }
        best
    }
}

/// Reduced Gröbner basis without resource limits.
pub fn buchberger(ideal: &Ideal) -> GroebnerBasis {
    buchberger_with_budget(ideal, &Budget::unlimited()).expect("unlimited budget").0
}

/// Reduced Gröbner basis under a budget, with statistics.
pub fn buchberger_with_budget(ideal: &Ideal, budget: &Budget) -> Result<(GroebnerBasis, GbStats), GroebnerError> {
    let start = Instant::now();
    let ring = ideal.ring();
    let mut state = State {
        ring,
        polys: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
        stats: GbStats { input_generators: ideal.generators().len(), ..GbStats::default() },
        budget,
    };

    let mut inputs: Vec<Polynomial> = ideal.generators().iter().map(Polynomial::monic).collect();
    inputs.sort_by(|a, b| ring.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    inputs.dedup();
    for f in inputs {
        budget.check_time()?;
        let h = state.reduce(&f)?;
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Ok(unit_basis(ring, state.stats, start));
        }
        state.update(h.monic())?;
    }

    while let Some(k) = state.select() {
        budget.check_time()?;
        let pair = state.pairs.swap_remove(k);
        state.stats.pairs_reduced += 1;
        let s = s_poly_raw(&state.polys[pair.i], &state.polys[pair.j]);
        let h = state.reduce(&s)?;
        if h.is_zero() {
            state.stats.zero_reductions += 1;
            continue;
        }
        if h.is_constant() {
            return Ok(unit_basis(ring, state.stats, start));
        }
        state.update(h.monic())?;
    }

    let minimal: Vec<Polynomial> =
        state.polys.iter().zip(&state.active).filter(|(_, a)| **a).map(|(p, _)| p.clone()).collect();
    let mut reduced = Vec::with_capacity(minimal.len());
    for (k, g) in minimal.iter().enumerate() {
        budget.check_time()?;
        let others: Vec<&Polynomial> = minimal.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, p)| p).collect();
        let r = reduce_full(g, &others, &mut budget.reduction_guard())?;
        reduced.push(r.monic());
    }
    reduced.sort_by(|a, b| ring.cmp(b.leading_monomial().unwrap(), a.leading_monomial().unwrap()));
    let mut stats = state.stats;
    stats.output_size = reduced.len();
    stats.elapsed = start.elapsed();
    Ok((GroebnerBasis { ring: ring.clone(), polys: reduced }, stats))
}

fn unit_basis(ring: &Ring, mut stats: GbStats, start: Instant) -> (GroebnerBasis, GbStats) {
    stats.output_size = 1;
    stats.elapsed = start.elapsed();
    (GroebnerBasis { ring: ring.clone(), polys: vec![ring.one()] }, stats)
}

/// Basis elements involving only `keep_vars`, which must be a suffix of the
/// variable order (every dropped variable ranks above every kept one).
pub fn eliminate<S: AsRef<str>>(gb: &GroebnerBasis, keep_vars: &[S]) -> Result<Vec<Polynomial>, GroebnerError> {
    let ring = gb.ring();
    let names = ring.vars().names();
    let n = names.len();
    let k = keep_vars.len();
    let as_strings = || keep_vars.iter().map(|s| s.as_ref().to_string()).collect::<Vec<_>>();
    if k > n {
        return Err(GroebnerError::NotASuffix(as_strings()));
    }
    let start = n - k;
    let suffix: std::collections::HashSet<&str> = names[start..].iter().map(String::as_str).collect();
    if keep_vars.iter().any(|v| !suffix.contains(v.as_ref())) {
        return Err(GroebnerError::NotASuffix(as_strings()));
    }
    if let MonomialOrder::BlockGrevlex { block } = ring.order() {
        if start != 0 && start < block {
            return Err(GroebnerError::NotAnEliminationOrder);
        }
    }
    Ok(gb.polys().iter().filter(|p| p.support().iter().all(|&i| i >= start)).cloned().collect())
}

/// Reduced lexicographic Gröbner basis of `<gb> ∩ F[keep_vars]`, in a ring
/// over `keep_vars` (highest first), for a zero-dimensional ideal under any
/// term order.
///
/// Monomials in the kept variables are visited in increasing lex order; each
/// normal form modulo `gb` is reduced against the normal forms of the
/// standard monomials found so far. A linear dependency yields the basis
/// element led by the current monomial, whose multiples are then skipped.
pub fn eliminate_by_linear_algebra<S: AsRef<str>>(
    gb: &GroebnerBasis,
    keep_vars: &[S],
    budget: &Budget,
) -> Result<Vec<Polynomial>, GroebnerError> {
    let ring = gb.ring();
    let target = Ring::lex(ring.field(), keep_vars)?;
    if gb.is_unit() {
        return Ok(vec![target.one()]);
    }
    let k = keep_vars.len();
    let positions: Vec<usize> = keep_vars.iter().map(|v| ring.var_index(v.as_ref())).collect::<Result<_, _>>()?;
    for (v, &i) in keep_vars.iter().zip(&positions) {
        let pure = gb.polys().iter().any(|g| {
            let lm = g.leading_monomial().expect("nonzero");
            lm.exponent(i) > 0 && lm.degree() == lm.exponent(i) as u64
        });
        if !pure {
            return Err(GroebnerError::NotZeroDimensional(v.as_ref().to_string()));
        }
    }
    let basis: Vec<&Polynomial> = gb.polys().iter().collect();
    let field = ring.field();
    let nf = |p: &Polynomial| reduce_full(p, &basis, &mut budget.reduction_guard());
    let times_var = |p: &Polynomial, var: usize| {
        let t = Monomial::variable(ring.nvars(), var, 1);
        ring.zero().add_scaled(p, 1, Some(&t))
    };

    // Echelon rows: a monic normal form combination, keyed by its leading
    // monomial, with the kept-variable polynomial it is the normal form of.
    let mut pivots: HashMap<Monomial, usize> = HashMap::new();
    let mut rows: Vec<(Polynomial, Polynomial)> = Vec::new();
    let mut standard_nf: Vec<Polynomial> = Vec::new();
    let mut leads: Vec<Monomial> = Vec::new();
    let mut out: Vec<Polynomial> = Vec::new();
    let mut queue: BTreeMap<Vec<u32>, Option<(usize, usize)>> = BTreeMap::new();
    queue.insert(vec![0; k], None);

    while let Some((exps, origin)) = queue.pop_first() {
        budget.check_time()?;
        let m = Monomial::from_exponents(exps.clone());
        if leads.iter().any(|l| l.divides(&m)) {
            continue;
        }
        let mut v = match origin {
            None => nf(&ring.one())?,
            Some((parent, var)) => nf(&times_var(&standard_nf[parent], positions[var]))?,
        };
        let own_nf = v.clone();
        let mut combo = target.poly_from_terms(vec![(m.clone(), 1)]);
        let mut start = 0;
        loop {
            let hit = v.raw_terms()[start..].iter().position(|(t, _)| pivots.contains_key(t));
            let Some(offset) = hit else { break };
            let idx = start + offset;
            let (t, c) = v.raw_terms()[idx].clone();
            let (row, row_combo) = &rows[pivots[&t]];
            let factor = field.neg_raw(c);
            v = v.add_scaled(row, factor, None);
            combo = combo.add_scaled(row_combo, factor, None);
            start = idx;
        }
        if v.is_zero() {
            leads.push(m);
            out.push(combo);
            continue;
        }
        let inv = field.inv_raw(v.leading_coeff_raw()).expect("nonzero leading coefficient");
        let lm = v.leading_monomial().expect("nonzero").clone();
        pivots.insert(lm, rows.len());
        rows.push((v.scale_raw(inv), combo.scale_raw(inv)));
        let sidx = standard_nf.len();
        standard_nf.push(own_nf);
        for var in 0..k {
            let mut e = exps.clone();
            e[var] += 1;
            queue.entry(e).or_insert(Some((sidx, var)));
        }
    }
    out.sort_by(|a, b| target.cmp(b.leading_monomial().unwrap(), a.leading_monomial().unwrap()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn f3() -> FieldSpec {
        FieldSpec::prime(3).unwrap()
    }

    fn parse_all(ring: &Ring, polys: &[&str]) -> Vec<Polynomial> {
        polys.iter().map(|p| ring.parse(p).unwrap()).collect()
    }

    #[test]
    fn single_field_polynomial_is_reduced() {
        let r = Ring::lex(&f3(), &["x"]).unwrap();
        let gb = buchberger(&Ideal::new(&r, parse_all(&r, &["x^3 - x"])).unwrap());
        assert_eq!(gb.polys(), parse_all(&r, &["x^3 - x"]).as_slice());
    }

    #[test]
    fn walkthrough_first_elimination() {
        let r = Ring::lex(&f3(), &["x", "y", "a", "b", "c"]).unwrap();
        let ideal = Ideal::new(&r, parse_all(&r, &["y - a*x^2 - b*x - c", "y - a*x"]))
            .unwrap()
            .add_field_polynomials(&["x", "y", "a", "b", "c"])
            .unwrap();
        let gb = buchberger(&ideal);
        let g1 = eliminate(&gb, &["a", "b", "c"]).unwrap();
        let expected = parse_all(&r, &["a^3 - a", "a*b*c + a*c^2 + b^2*c - c", "b^3 - b", "c^3 - c"]);
        assert_eq!(g1, expected);
    }

    #[test]
    fn walkthrough_universal_step() {
        let r = Ring::lex(&f3(), &["a", "u", "b", "c"]).unwrap();
        let ideal =
            Ideal::new(&r, parse_all(&r, &["(a*b*c + a*c^2 + b^2*c - c)*u - 1"])).unwrap().with_all_field_polynomials();
        let gb = buchberger(&ideal);
        let g2 = eliminate(&gb, &["b", "c"]).unwrap();
        assert_eq!(g2, parse_all(&r, &["b^2 - b*c", "c^2 - 1"]));
    }

    #[test]
    fn elimination_examples() {
        let r = Ring::lex(&f3(), &["x", "y"]).unwrap();
        let gb = buchberger(&Ideal::new(&r, parse_all(&r, &["x - y", "y^2 - 1"])).unwrap());
        assert_eq!(eliminate(&gb, &["y"]).unwrap(), parse_all(&r, &["y^2 - 1"]));
        assert_eq!(eliminate(&gb, &["x", "y"]).unwrap(), gb.polys());
        assert!(matches!(eliminate(&gb, &["x"]), Err(GroebnerError::NotASuffix(_))));
    }

    #[test]
    fn membership_examples() {
        let r = Ring::lex(&f3(), &["c"]).unwrap();
        let gb = buchberger(&Ideal::new(&r, parse_all(&r, &["c^3 - c"])).unwrap());
        assert!(ideal_membership(&r.parse("c^3 - c").unwrap(), &gb).unwrap());
        assert!(!ideal_membership(&r.parse("c - 1").unwrap(), &gb).unwrap());
    }

    #[test]
    fn field_polynomial_augmentation() {
        let r = Ring::lex(&f3(), &["x", "y"]).unwrap();
        let base = Ideal::new(&r, parse_all(&r, &["x - y"])).unwrap();
        assert_eq!(base.add_field_polynomials::<&str>(&[]).unwrap(), base);
        let once = base.add_field_polynomials(&["x"]).unwrap();
        let twice = once.add_field_polynomials(&["x"]).unwrap();
        assert_eq!(once.generators().len(), 2);
        assert_eq!(once, twice);
        assert!(base.add_field_polynomials(&["z"]).is_err());
    }

    #[test]
    fn zero_and_unit_ideals() {
        let r = Ring::lex(&f3(), &["x"]).unwrap();
        let zero = buchberger(&Ideal::new(&r, vec![r.zero()]).unwrap());
        assert!(zero.is_empty());
        let unit = buchberger(&Ideal::new(&r, parse_all(&r, &["x", "x - 1"])).unwrap());
        assert!(unit.is_unit());
        assert_eq!(unit.polys(), &[r.one()]);
    }

    #[test]
    fn basis_size_budget_aborts() {
        let r = Ring::lex(&f3(), &["x", "y", "z"]).unwrap();
        let ideal = Ideal::new(&r, parse_all(&r, &["x*y - z", "y*z - x", "x*z - y"])).unwrap();
        let budget = Budget { max_basis: Some(2), ..Budget::default() };
        assert!(matches!(buchberger_with_budget(&ideal, &budget), Err(GroebnerError::BudgetExhausted(_))));
    }

    #[test]
    fn block_order_elimination_agrees_with_lex() {
        let r = Ring::lex(&f3(), &["x", "y", "a", "b", "c"]).unwrap();
        let gens = parse_all(&r, &["y - a*x^2 - b*x - c", "y - a*x"]);
        let lex = buchberger(&Ideal::new(&r, gens.clone()).unwrap().with_all_field_polynomials());
        let rb = r.with_order(MonomialOrder::BlockGrevlex { block: 2 });
        let gens_b: Vec<Polynomial> = gens.iter().map(|g| g.map_into(&rb).unwrap()).collect();
        let blk = buchberger(&Ideal::new(&rb, gens_b).unwrap().with_all_field_polynomials());
        let from_lex: Vec<Polynomial> =
            eliminate(&lex, &["a", "b", "c"]).unwrap().iter().map(|p| p.map_into(&rb).unwrap()).collect();
        assert_eq!(eliminate(&blk, &["a", "b", "c"]).unwrap(), from_lex);
        assert!(matches!(eliminate(&blk, &["y", "a", "b", "c"]), Err(GroebnerError::NotAnEliminationOrder)));
    }

    #[test]
    fn linear_algebra_elimination_matches_lex_filtering() {
        let f = f3();
        let lex = Ring::lex(&f, &["x", "y", "a", "b", "c"]).unwrap();
        let gens = parse_all(&lex, &["y - a*x^2 - b*x - c", "y - a*x"]);
        let ideal = Ideal::new(&lex, gens).unwrap().with_all_field_polynomials();
        let expected: Vec<String> =
            eliminate(&buchberger(&ideal), &["a", "b", "c"]).unwrap().iter().map(|p| p.to_string()).collect();
        let other = Ring::lex(&f, &["c", "a", "y", "b", "x"]).unwrap();
        let moved =
            Ideal::new(&other, ideal.generators().iter().map(|g| g.map_into(&other).unwrap()).collect()).unwrap();
        let got = eliminate_by_linear_algebra(&buchberger(&moved), &["a", "b", "c"], &Budget::unlimited()).unwrap();
        let got: Vec<String> = got.iter().map(|p| p.to_string()).collect();
        assert_eq!(got, expected);
        assert_eq!(got, ["a^3 - a", "a*b*c + a*c^2 + b^2*c - c", "b^3 - b", "c^3 - c"]);
    }

    #[test]
    fn linear_algebra_elimination_edge_cases() {
        let f = f3();
        let r = Ring::lex(&f, &["x", "y"]).unwrap();
        let unit = buchberger(&Ideal::new(&r, parse_all(&r, &["x", "x - 1"])).unwrap());
        let out = eliminate_by_linear_algebra(&unit, &["y"], &Budget::unlimited()).unwrap();
        assert_eq!(out.len(), 1);
        assert!(out[0].is_constant());
        let open = buchberger(&Ideal::new(&r, parse_all(&r, &["x^3 - x"])).unwrap());
        assert_eq!(
            eliminate_by_linear_algebra(&open, &["y"], &Budget::unlimited()),
            Err(GroebnerError::NotZeroDimensional("y".into()))
        );
        let closed = buchberger(&Ideal::new(&r, parse_all(&r, &["x - y^2"])).unwrap().with_all_field_polynomials());
        let none: [&str; 0] = [];
        assert!(eliminate_by_linear_algebra(&closed, &none, &Budget::unlimited()).unwrap().is_empty());
    }

    #[test]
    fn term_limit_aborts_reduction() {
        let f = f3();
        let r = Ring::lex(&f, &["x", "y", "z"]).unwrap();
        let gens = parse_all(&r, &["x*y - z^2 - y - 1", "y^2 - x*z + 1"]);
        let ideal = Ideal::new(&r, gens).unwrap().with_all_field_polynomials();
        let budget = Budget { max_terms: Some(1), ..Budget::default() };
        assert_eq!(buchberger_with_budget(&ideal, &budget).unwrap_err(), GroebnerError::TermLimit(1));
    }
}
