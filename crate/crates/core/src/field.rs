//! Exact arithmetic in finite fields `F_q`, `q = p^r`.
//!
//! Elements are stored as integer codes: the coefficient vector
//! `(c_0, .., c_{r-1})` of the residue class `c_0 + c_1 w + .. + c_{r-1} w^{r-1}`
//! read as a base-`p` number with `c_0` least significant. Codes are canonical, so
//! equality and hashing are structural. Multiplication goes through discrete
//! log tables built once per field.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use thiserror::Error;

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 16;

/// Fields up to this order get a dense addition table.
const ADD_TABLE_LIMIT: u32 = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("characteristic {0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{r} exceeds the supported bound 2^16")]
    TooLarge { p: u64, r: u32 },
    #[error("modulus must be monic of degree {degree} with coefficients in [0, {p})")]
    MalformedModulus { degree: u32, p: u32 },
    #[error("modulus is reducible over F_{0}")]
    ReducibleModulus(u32),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid field element `{0}`")]
    BadElement(String),
    #[error("invalid generator name `{0}`")]
    BadGeneratorName(String),
}

struct Inner {
    p: u32,
    r: u32,
    q: u32,
    modulus: Vec<u32>,
    generator: String,
    // exp[i] = g^i for i in 0..2(q-1); log[a] for a != 0.
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add: Option<Vec<u16>>,
}

/// A finite field `F_{p^r}` together with its defining modulus.
///
/// Cloning is cheap (shared handle).
#[derive(Clone)]
pub struct FieldSpec(Arc<Inner>);

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.r == other.0.r && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.r == 1 {
            write!(f, "F_{}", self.0.p)
        } else {
            write!(f, "F_{}[{}]/({})", self.0.p, self.0.generator, self.modulus_string())
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` into `(p, r)` with `q = p^r`, if `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while !q.is_multiple_of(p) {
        p += 1;
    }
    if !is_prime(p) {
        return None;
    }
    let mut rest = q;
    let mut r = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        r += 1;
    }
    (rest == 1).then_some((p, r))
}

// Dense univariate helpers over F_p, coefficient vectors low-to-high.

fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // p prime, a != 0
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

fn poly_rem(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    let mut r = f.to_vec();
    trim(&mut r);
    let mut g = g.to_vec();
    trim(&mut g);
    let dg = g.len() - 1;
    let lead_inv = inv_mod(g[dg], p) as u64;
    while r.len() > dg {
        let dr = r.len() - 1;
        let factor = r[dr] as u64 * lead_inv % p as u64;
        for (i, &gc) in g.iter().enumerate() {
            let idx = dr - dg + i;
            let sub = factor * gc as u64 % p as u64;
            r[idx] = ((r[idx] as u64 + p as u64 - sub) % p as u64) as u32;
        }
        trim(&mut r);
    }
    r
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let degree = f.len() - 1;
    for d in 1..=degree / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut g = digits(code, p as u64, d);
            g.push(1);
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn digits(mut code: u64, p: u64, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((code % p) as u32);
        code /= p;
    }
    out
}

fn default_modulus(p: u32, r: u32) -> Vec<u32> {
    let count = (p as u64).pow(r);
    for code in 0..count {
        let mut f = digits(code, p as u64, r as usize);
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn mul_slow(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let r = modulus.len() - 1;
    let mut prod = vec![0u64; 2 * r];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
    let mut rem = poly_rem(&prod, modulus, p);
    rem.resize(r, 0);
    rem
}

impl FieldSpec {
    /// Builds `F_{p^r}`. Without an explicit modulus the smallest monic irreducible
    /// polynomial of degree `r` is used, comparing coefficient vectors from the
    /// highest non-leading coefficient down.
    pub fn new(p: u64, r: u32, modulus: Option<&[u32]>) -> Result<FieldSpec, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if r == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let q = p.checked_pow(r).filter(|&q| q <= MAX_ORDER).ok_or(FieldError::TooLarge { p, r })?;
        let p = p as u32;
        let modulus = match modulus {
            Some(m) => {
                if m.len() != r as usize + 1 || m[r as usize] != 1 || m.iter().any(|&c| c >= p) {
                    return Err(FieldError::MalformedModulus { degree: r, p });
                }
                if !is_irreducible(m, p) {
                    return Err(FieldError::ReducibleModulus(p));
                }
                if r == 1 {
                    vec![0, 1]
                } else {
                    m.to_vec()
                }
            }
            None if r == 1 => vec![0, 1],
            None => default_modulus(p, r),
        };
        Ok(Self::build(p, r, q as u32, modulus, "w".to_string()))
    }

    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<FieldSpec, FieldError> {
        Self::new(p, 1, None)
    }

    /// The field of order `q` with the default modulus.
    pub fn of_order(q: u64) -> Result<FieldSpec, FieldError> {
        let (p, r) = prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
        Self::new(p, r, None)
    }

    /// Returns the same field with a different name for the generator in text I/O.
    pub fn with_generator_name(&self, name: &str) -> Result<FieldSpec, FieldError> {
        let valid = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
            && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !valid {
            return Err(FieldError::BadGeneratorName(name.to_string()));
        }
        let inner = &self.0;
        Ok(FieldSpec(Arc::new(Inner {
            p: inner.p,
            r: inner.r,
            q: inner.q,
            modulus: inner.modulus.clone(),
            generator: name.to_string(),
            exp: inner.exp.clone(),
            log: inner.log.clone(),
            neg: inner.neg.clone(),
            add: inner.add.clone(),
        })))
    }

    fn build(p: u32, r: u32, q: u32, modulus: Vec<u32>, generator: String) -> FieldSpec {
        let to_vec = |code: u32| digits(code as u64, p as u64, r as usize);
        let from_vec = |v: &[u32]| v.iter().rev().fold(0u32, |acc, &c| acc * p + c);

        // Find a primitive element by brute force.
        let mut exp = Vec::new();
        for candidate in 1..q {
            let g = to_vec(candidate);
            let mut powers = vec![1u32];
            let mut cur = to_vec(1);
            loop {
                cur = mul_slow(&cur, &g, &modulus, p);
                let code = from_vec(&cur);
                if code == 1 {
                    break;
                }
                powers.push(code);
            }
            if powers.len() == (q - 1) as usize {
                exp = powers;
                break;
            }
        }
        let mut log = vec![0u32; q as usize];
        for (i, &e) in exp.iter().enumerate() {
            log[e as usize] = i as u32;
        }
        let doubled: Vec<u32> = exp.iter().chain(exp.iter()).copied().collect();

        let add_digits = |a: u32, b: u32| {
            let (da, db) = (to_vec(a), to_vec(b));
            let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
            from_vec(&sum)
        };
        let neg: Vec<u32> = (0..q)
            .map(|a| {
                let v: Vec<u32> = to_vec(a).iter().map(|&c| (p - c) % p).collect();
                from_vec(&v)
            })
            .collect();
        let add = (r > 1 && p != 2 && q <= ADD_TABLE_LIMIT).then(|| {
            let mut table = vec![0u16; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    table[(a * q + b) as usize] = add_digits(a, b) as u16;
                }
            }
            table
        });
        FieldSpec(Arc::new(Inner { p, r, q, modulus, generator, exp: doubled, log, neg, add }))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn r(&self) -> u32 {
        self.0.r
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    /// Monic modulus, low-to-high. For prime fields this is the placeholder `x`.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn generator_name(&self) -> &str {
        &self.0.generator
    }

    pub fn modulus_string(&self) -> String {
        let gen = &self.0.generator;
        let mut parts = Vec::new();
        for (i, &c) in self.0.modulus.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => gen.clone(),
                _ => format!("{gen}^{i}"),
            };
            parts.push(match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}*{mono}"),
            });
        }
        parts.join("+")
    }

    // Raw code arithmetic. Callers guarantee codes are below q.

    #[inline]
    pub fn add_raw(&self, a: u32, b: u32) -> u32 {
        let f = &*self.0;
        if f.p == 2 {
            a ^ b
        } else if f.r == 1 {
            let s = a + b;
            if s >= f.p {
                s - f.p
            } else {
                s
            }
        } else if let Some(t) = &f.add {
            t[(a * f.q + b) as usize] as u32
        } else {
            let (mut a, mut b) = (a, b);
            let mut out = 0;
            let mut scale = 1;
            for _ in 0..f.r {
                out += ((a % f.p + b % f.p) % f.p) * scale;
                a /= f.p;
                b /= f.p;
                scale *= f.p;
            }
            out
        }
    }

    #[inline]
    pub fn neg_raw(&self, a: u32) -> u32 {
        self.0.neg[a as usize]
    }

    #[inline]
    pub fn sub_raw(&self, a: u32, b: u32) -> u32 {
        self.add_raw(a, self.neg_raw(b))
    }

    #[inline]
    pub fn mul_raw(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let f = &*self.0;
        if f.r == 1 {
            return ((a as u64 * b as u64) % f.p as u64) as u32;
        }
        f.exp[(f.log[a as usize] + f.log[b as usize]) as usize]
    }

    #[inline]
    pub fn inv_raw(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let f = &*self.0;
        let l = f.log[a as usize];
        Some(f.exp[((f.q - 1 - l) % (f.q - 1)) as usize])
    }

    #[inline]
    pub fn pow_raw(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let f = &*self.0;
        let l = f.log[a as usize] as u64 * (e % (f.q as u64 - 1));
        f.exp[(l % (f.q as u64 - 1)) as usize]
    }

    /// Embeds an integer through the prime subfield.
    pub fn int_raw(&self, n: i64) -> u32 {
        n.rem_euclid(self.0.p as i64) as u32
    }

    /// Code of the residue class of the indeterminate (`w`).
    pub fn generator_raw(&self) -> u32 {
        if self.0.r == 1 {
            // The placeholder modulus `x` makes the indeterminate congruent to 0.
            0
        } else {
            self.0.p
        }
    }

    pub fn element(&self, code: u32) -> FieldElement {
        assert!(code < self.0.q, "code {code} out of range for {self:?}");
        FieldElement { field: self.clone(), code }
    }

    pub fn zero(&self) -> FieldElement {
        self.element(0)
    }

    pub fn one(&self) -> FieldElement {
        self.element(1)
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        self.element(self.int_raw(n))
    }

    /// The residue class of the indeterminate. Only meaningful for `r > 1`.
    pub fn generator(&self) -> FieldElement {
        self.element(self.generator_raw())
    }

    /// Element with the given coefficient vector (low-to-high, length at most `r`).
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement, FieldError> {
        if coeffs.len() > self.0.r as usize || coeffs.iter().any(|&c| c >= self.0.p) {
            return Err(FieldError::BadElement(format!("{coeffs:?}")));
        }
        let code = coeffs.iter().rev().fold(0u32, |acc, &c| acc * self.0.p + c);
        Ok(self.element(code))
    }

    pub fn coeffs_raw(&self, code: u32) -> Vec<u32> {
        digits(code as u64, self.0.p as u64, self.0.r as usize)
    }

    /// All `q` elements in coefficient-vector order: `0, 1, .., p-1, w, w+1, ..`.
    pub fn elements(&self) -> Vec<FieldElement> {
        (0..self.0.q).map(|c| self.element(c)).collect()
    }

    /// Renders an element code. Prime fields print decimal residues; extension
    /// fields print a polynomial in the generator such as `2*w^2+w+1`.
    pub fn format_raw(&self, code: u32) -> String {
        if self.0.r == 1 || code < self.0.p {
            return code.to_string();
        }
        let gen = &self.0.generator;
        let coeffs = self.coeffs_raw(code);
        let mut parts = Vec::new();
        for (i, &c) in coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => gen.clone(),
                _ => format!("{gen}^{i}"),
            };
            parts.push(match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}*{mono}"),
            });
        }
        parts.join("+")
    }

    /// Number of nonzero coefficients in the element's polynomial form.
    pub fn weight_raw(&self, code: u32) -> usize {
        self.coeffs_raw(code).iter().filter(|&&c| c != 0).count()
    }

    /// Parses the rendering grammar: a sum of terms `c`, `c*w^k`, `w^k`, with
    /// optional signs. Integers are reduced modulo `p`.
    pub fn parse_element(&self, text: &str) -> Result<FieldElement, FieldError> {
        let bad = || FieldError::BadElement(text.to_string());
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let mut acc = 0u32;
        let mut rest = compact.as_str();
        let mut first = true;
        while !rest.is_empty() {
            let mut negate = false;
            if let Some(s) = rest.strip_prefix('-') {
                negate = true;
                rest = s;
            } else if let Some(s) = rest.strip_prefix('+') {
                if first {
                    return Err(bad());
                }
                rest = s;
            } else if !first {
                return Err(bad());
            }
            first = false;
            let end = rest.find(['+', '-']).unwrap_or(rest.len());
            let (term, tail) = rest.split_at(end);
            rest = tail;
            let mut value = 1u32;
            for factor in term.split('*') {
                let v = self.parse_factor(factor).ok_or_else(bad)?;
                value = self.mul_raw(value, v);
            }
            if negate {
                value = self.neg_raw(value);
            }
            acc = self.add_raw(acc, value);
        }
        Ok(self.element(acc))
    }

    fn parse_factor(&self, factor: &str) -> Option<u32> {
        if factor.is_empty() {
            return None;
        }
        if factor.bytes().all(|b| b.is_ascii_digit()) {
            let n: u64 = factor.parse().ok()?;
            return Some((n % self.0.p as u64) as u32);
        }
        let (base, power) = match factor.split_once('^') {
            Some((b, e)) => (b, e.parse::<u64>().ok()?),
            None => (factor, 1),
        };
        if self.0.r > 1 && base == self.0.generator {
            Some(self.pow_raw(self.generator_raw(), power))
        } else {
            None
        }
    }
}

/// An element of a [`FieldSpec`].
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: FieldSpec,
    code: u32,
}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.p().hash(state);
        self.field.r().hash(state);
        self.code.hash(state);
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format_raw(self.code))
    }
}

impl FieldElement {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    /// Integer code of the element, see the module docs.
    pub fn code(&self) -> u32 {
        self.code
    }

    /// Coefficients over `F_p`, low-to-high, exactly `r` entries.
    pub fn coeffs(&self) -> Vec<u32> {
        self.field.coeffs_raw(self.code)
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }

    pub fn is_one(&self) -> bool {
        self.code == 1
    }

    fn same_field(&self, other: &FieldElement) -> Result<(), FieldError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch)
        }
    }

    pub fn checked_add(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.same_field(other)?;
        Ok(self.with(self.field.add_raw(self.code, other.code)))
    }

    pub fn checked_sub(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.same_field(other)?;
        Ok(self.with(self.field.sub_raw(self.code, other.code)))
    }

    pub fn checked_mul(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.same_field(other)?;
        Ok(self.with(self.field.mul_raw(self.code, other.code)))
    }

    pub fn neg(&self) -> FieldElement {
        self.with(self.field.neg_raw(self.code))
    }

    pub fn inv(&self) -> Result<FieldElement, FieldError> {
        self.field.inv_raw(self.code).map(|c| self.with(c)).ok_or(FieldError::DivisionByZero)
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        self.with(self.field.pow_raw(self.code, e))
    }

    fn with(&self, code: u32) -> FieldElement {
        FieldElement { field: self.field.clone(), code }
    }
}

macro_rules! forward_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait for &FieldElement {
            type Output = FieldElement;

            /// Panics when the operands live in different fields.
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs).expect("field mismatch")
            }
        }

        impl std::ops::$trait for FieldElement {
            type Output = FieldElement;

            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_op!(Add, add, checked_add);
forward_op!(Sub, sub, checked_sub);
forward_op!(Mul, mul, checked_mul);

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        FieldElement::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> FieldSpec {
        FieldSpec::new(2, 2, None).unwrap()
    }

    #[test]
    fn make_field_examples() {
        let f3 = FieldSpec::new(3, 1, None).unwrap();
        let names: Vec<String> = f3.elements().iter().map(|e| e.to_string()).collect();
        assert_eq!(names, ["0", "1", "2"]);
        assert_eq!(f4().modulus(), &[1, 1, 1]);
        assert_eq!(FieldSpec::new(4, 1, None).unwrap_err(), FieldError::NotPrime(4));
    }

    #[test]
    fn unique_irreducible_quadratic_over_f2() {
        // Enumerate all monic quadratics and check for roots directly.
        let irreducible: Vec<[u32; 3]> = (0..4u32)
            .map(|c| [c & 1, c >> 1, 1])
            .filter(|m| (0..2u32).all(|x| (m[0] + m[1] * x + x * x) % 2 != 0))
            .collect();
        assert_eq!(irreducible, vec![[1, 1, 1]]);
        assert_eq!(f4().modulus(), &irreducible[0]);
    }

    #[test]
    fn rejects_bad_moduli() {
        assert_eq!(FieldSpec::new(2, 2, Some(&[1, 0, 1])).unwrap_err(), FieldError::ReducibleModulus(2));
        assert!(matches!(FieldSpec::new(3, 2, Some(&[1, 0, 2])), Err(FieldError::MalformedModulus { .. })));
        assert!(matches!(FieldSpec::new(2, 17, None), Err(FieldError::TooLarge { .. })));
        assert!(FieldSpec::new(3, 2, Some(&[1, 0, 1])).is_ok());
    }

    #[test]
    fn arithmetic_examples() {
        let f3 = FieldSpec::prime(3).unwrap();
        assert_eq!(&f3.from_int(2) * &f3.from_int(2), f3.one());
        let f4 = f4();
        let w = f4.generator();
        let w1 = f4.parse_element("w+1").unwrap();
        assert_eq!(&w * &w, w1);
        assert_eq!(&w1 + &w1, f4.zero());
        assert_eq!(f3.from_int(2).inv().unwrap(), f3.from_int(2));
        assert_eq!(w.inv().unwrap(), w1);
        assert_eq!(f4.one().inv().unwrap(), f4.one());
        assert_eq!(f4.zero().inv().unwrap_err(), FieldError::DivisionByZero);
    }

    #[test]
    fn mismatched_fields() {
        let a = FieldSpec::prime(3).unwrap().one();
        let b = FieldSpec::prime(5).unwrap().one();
        assert_eq!(a.checked_add(&b).unwrap_err(), FieldError::FieldMismatch);
    }

    #[test]
    fn enumeration_order() {
        let names: Vec<String> = f4().elements().iter().map(|e| e.to_string()).collect();
        assert_eq!(names, ["0", "1", "w", "w+1"]);
        assert_eq!(FieldSpec::prime(2).unwrap().elements().len(), 2);
        assert_eq!(FieldSpec::prime(5).unwrap().elements().len(), 5);
        let f9 = FieldSpec::of_order(9).unwrap();
        let names: Vec<String> = f9.elements().iter().map(|e| e.to_string()).collect();
        assert_eq!(&names[..5], ["0", "1", "2", "w", "w+1"]);
        assert_eq!(names[8], "2*w+2");
    }

    #[test]
    fn render_and_parse() {
        let f = FieldSpec::of_order(27).unwrap().with_generator_name("a").unwrap();
        for e in f.elements() {
            assert_eq!(f.parse_element(&e.to_string()).unwrap(), e);
        }
        assert_eq!(f.parse_element("-1").unwrap(), f.from_int(2));
        assert_eq!(f.parse_element("a^3").unwrap(), f.generator().pow(3));
        assert!(f.parse_element("b").is_err());
        assert!(f.parse_element("").is_err());
    }

    fn small_fields() -> Vec<FieldSpec> {
        [2, 3, 4, 5, 7, 8, 9].iter().map(|&q| FieldSpec::of_order(q).unwrap()).collect()
    }

    #[test]
    fn field_axioms_exhaustive() {
        for f in small_fields() {
            let els = f.elements();
            for a in &els {
                assert_eq!(a + &f.zero(), *a);
                assert_eq!(a * &f.one(), *a);
                assert_eq!(a + &a.neg(), f.zero());
                for b in &els {
                    assert_eq!(a + b, b + a);
                    assert_eq!(a * b, b * a);
                    for c in &els {
                        assert_eq!(&(a + b) + c, a + &(b + c));
                        assert_eq!(&(a * b) * c, a * &(b * c));
                        assert_eq!(a * &(b + c), &(a * b) + &(a * c));
                    }
                }
            }
        }
    }

    #[test]
    fn table_multiplication_matches_schoolbook() {
        for f in [FieldSpec::of_order(8).unwrap(), FieldSpec::of_order(25).unwrap()] {
            for a in 0..f.q() {
                for b in 0..f.q() {
                    let slow = mul_slow(&f.coeffs_raw(a), &f.coeffs_raw(b), f.modulus(), f.p());
                    assert_eq!(f.coeffs_raw(f.mul_raw(a, b)), slow);
                }
            }
        }
    }

    #[test]
    fn fermat_and_inverses_up_to_81() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 32, 49, 64, 81] {
            let f = FieldSpec::of_order(q).unwrap();
            let els = f.elements();
            assert_eq!(els.len(), q as usize);
            for a in &els {
                assert_eq!(a.pow(q), *a, "a^q = a in F_{q}");
                if !a.is_zero() {
                    assert!((a * &a.inv().unwrap()).is_one());
                }
            }
        }
    }

    #[test]
    fn large_field_digitwise_addition() {
        let f = FieldSpec::of_order(3u64.pow(6)).unwrap();
        let a = f.parse_element("2*w^5+w+1").unwrap();
        let b = f.parse_element("w^5+2*w+2").unwrap();
        assert_eq!(&a + &b, f.zero());
        assert_eq!(f.q(), 729);
    }
}
