use super::{Monomial, PolyError, Polynomial, Ring};
use crate::field::FieldSpec;
use crate::syntax;

pub(super) fn parse(ring: &Ring, text: &str) -> Result<Polynomial, PolyError> {
    let term = syntax::parse_term(text, ring.field()).map_err(|e| PolyError::Parse(e.to_string()))?;
    term.to_polynomial(ring)
}

/// Signed rendering of a coefficient: prime fields of odd characteristic print
/// residues above `p/2` as negatives.
pub(crate) fn split_sign(field: &FieldSpec, c: u32) -> (bool, u32) {
    let p = field.p();
    if field.r() == 1 && p > 2 && c > p / 2 {
        (true, p - c)
    } else {
        (false, c)
    }
}

/// Renders a constant so that it parses back as a single constant inside a
/// product.
pub(crate) fn format_const_factor(field: &FieldSpec, c: u32) -> String {
    let s = field.format_raw(c);
    if s.chars().all(|ch| ch.is_ascii_digit()) || s == field.generator_name() {
        s
    } else {
        format!("({s})")
    }
}

pub(crate) fn format_monomial(ring: &Ring, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(ring.vars().name(i).to_string()),
            _ => parts.push(format!("{}^{}", ring.vars().name(i), e)),
        }
    }
    parts.join("*")
}

pub(super) fn format(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let field = p.field();
    let mut out = String::new();
    for (idx, (m, c)) in p.raw_terms().iter().enumerate() {
        let (negative, mag) = split_sign(field, *c);
        let body = if m.is_one() {
            format_const_factor(field, mag)
        } else if mag == 1 {
            format_monomial(p.ring(), m)
        } else {
            format!("{}*{}", format_const_factor(field, mag), format_monomial(p.ring(), m))
        };
        match (idx, negative) {
            (0, false) => {}
            (0, true) => out.push('-'),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" - "),
        }
        out.push_str(&body);
    }
    out
}
