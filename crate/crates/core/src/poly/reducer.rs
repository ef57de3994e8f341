use std::collections::HashMap;

use super::{reduce_exponent, univariate, Monomial, Polynomial, Ring};

/// Canonical reduction modulo one univariate polynomial per variable.
///
/// Each variable `v` carries a monic `m_v` dividing `v^q - v` (the field
/// polynomial itself unless narrowed with [`Reducer::constrain`]). Polynomials
/// in distinct variables have coprime leading monomials, so the set of all `m_v`
/// is a Gröbner basis and reducing by it never changes the ideal it generates
/// together with the `m_v`. Products are reduced term by term so intermediate
/// results keep per-variable degree below `deg m_v`.
#[derive(Clone)]
pub struct Reducer {
    ring: Ring,
    moduli: Vec<Vec<u32>>,
    tables: Vec<Option<Vec<Vec<u32>>>>,
}

impl Reducer {
    /// Reduction by the field polynomials of every variable.
    pub fn new(ring: &Ring) -> Reducer {
        let fp = univariate::field_polynomial(ring.field());
        Reducer { ring: ring.clone(), moduli: vec![fp; ring.nvars()], tables: vec![None; ring.nvars()] }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Narrows `m_var` to `gcd(m_var, f)` for a univariate `f` (dense, low-to-high).
    pub fn constrain(&mut self, var: usize, coeffs: &[u32]) {
        let field = self.ring.field();
        let g = univariate::gcd(&self.moduli[var], coeffs, field);
        if g == self.moduli[var] {
            return;
        }
        let q = field.q() as usize;
        self.tables[var] = Some(univariate::power_table(&g, q, field));
        self.moduli[var] = g;
    }

    pub fn modulus(&self, var: usize) -> &[u32] {
        &self.moduli[var]
    }

    /// True when some `m_v` is constant, i.e. the generated ideal is the unit ideal.
    pub fn is_unit(&self) -> bool {
        self.moduli.iter().any(|m| m.len() == 1)
    }

    /// True when `m_var` is still the field polynomial.
    pub fn is_unconstrained(&self, var: usize) -> bool {
        self.tables[var].is_none()
    }

    pub fn generator(&self, var: usize) -> Polynomial {
        Polynomial::from_univariate(&self.ring, var, &self.moduli[var])
    }

    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        let mut map = HashMap::with_capacity(f.len());
        for (m, c) in f.raw_terms() {
            self.push_reduced(m.exponents(), *c, &mut map);
        }
        self.ring.poly_from_map(map)
    }

    /// Reduced product.
    pub fn mul(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        if f.is_zero() || g.is_zero() {
            return self.ring.zero();
        }
        if f.is_constant() {
            return g.scale_raw(f.leading_coeff_raw());
        }
        if g.is_constant() {
            return f.scale_raw(g.leading_coeff_raw());
        }
        let field = self.ring.field();
        let mut map = HashMap::with_capacity(f.len() * g.len());
        let mut exps = vec![0u32; self.ring.nvars()];
        for (ma, ca) in f.raw_terms() {
            for (mb, cb) in g.raw_terms() {
                for (i, e) in exps.iter_mut().enumerate() {
                    *e = ma.exponent(i) + mb.exponent(i);
                }
                self.push_reduced(&exps, field.mul_raw(*ca, *cb), &mut map);
            }
        }
        self.ring.poly_from_map(map)
    }

    pub fn pow(&self, f: &Polynomial, mut e: u32) -> Polynomial {
        let mut result = self.ring.one();
        let mut base = self.reduce(f);
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    fn push_reduced(&self, exps: &[u32], c: u32, out: &mut HashMap<Monomial, u32>) {
        let field = self.ring.field();
        let q = field.q();
        let mut base = Vec::with_capacity(exps.len());
        let mut expand: Vec<(usize, &Vec<u32>)> = Vec::new();
        for (i, &e) in exps.iter().enumerate() {
            let e = reduce_exponent(e, q);
            match &self.tables[i] {
                Some(t) if e as usize >= self.moduli[i].len() - 1 => {
                    base.push(0);
                    expand.push((i, &t[e as usize]));
                }
                _ => base.push(e),
            }
        }
        let mut acc = |m: Monomial, k: u32| {
            if k != 0 {
                let slot = out.entry(m).or_insert(0);
                *slot = field.add_raw(*slot, k);
            }
        };
        if expand.is_empty() {
            acc(Monomial::from_exponents(base), c);
            return;
        }
        let mut partial = vec![(base, c)];
        for (var, coeffs) in expand {
            let mut next = Vec::with_capacity(partial.len() * coeffs.len());
            for (e, k) in &partial {
                for (j, &a) in coeffs.iter().enumerate() {
                    if a != 0 {
                        let mut e2 = e.clone();
                        e2[var] = j as u32;
                        next.push((e2, field.mul_raw(*k, a)));
                    }
                }
            }
            partial = next;
        }
        for (e, k) in partial {
            acc(Monomial::from_exponents(e), k);
        }
    }
}
