use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

/// Ordered list of distinct variable names. Index 0 is the highest-ranked variable.
#[derive(Clone, PartialEq, Eq)]
pub struct VarTable(Arc<[String]>);

impl VarTable {
    /// Fails with the first duplicated name.
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<VarTable, String> {
        let mut seen = std::collections::HashSet::new();
        for n in names {
            if !seen.insert(n.as_ref()) {
                return Err(n.as_ref().to_string());
            }
        }
        Ok(VarTable(names.iter().map(|n| n.as_ref().to_string()).collect()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn name(&self, index: usize) -> &str {
        &self.0[index]
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }
}

impl fmt::Debug for VarTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0.join(" > "))
    }
}

/// Exponent vector, one entry per variable of a [`VarTable`].
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(SmallVec<[u32; 12]>);

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn from_exponents(exps: Vec<u32>) -> Monomial {
        Monomial(SmallVec::from_vec(exps))
    }

    pub fn variable(nvars: usize, index: usize, exp: u32) -> Monomial {
        let mut e = vec![0; nvars];
        e[index] = exp;
        Monomial::from_exponents(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.0[var]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        other.divides(self).then(|| Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a - b).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Bit `i mod 64` set when variable `i` occurs. Used as a fast divisibility filter.
    pub(crate) fn support_mask(&self) -> u64 {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).fold(0, |m, (i, _)| m | 1 << (i % 64))
    }

    pub(crate) fn map_exponents(&self, f: impl Fn(u32) -> u32) -> Monomial {
        Monomial(self.0.iter().map(|&e| f(e)).collect())
    }
}

/// Term orders over a [`VarTable`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Pure lexicographic, variable 0 highest.
    Lex,
    /// The first `block` variables are compared by graded reverse lex; ties are
    /// broken by lex on the remaining variables. Still an elimination order for
    /// the leading block.
    BlockGrevlex { block: usize },
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::BlockGrevlex { block } => {
                let (ha, ta) = a.0.split_at(block.min(a.0.len()));
                let (hb, tb) = b.0.split_at(block.min(b.0.len()));
                let da: u64 = ha.iter().map(|&e| e as u64).sum();
                let db: u64 = hb.iter().map(|&e| e as u64).sum();
                da.cmp(&db)
                    .then_with(|| {
                        for (x, y) in ha.iter().zip(hb.iter()).rev() {
                            if x != y {
                                return y.cmp(x);
                            }
                        }
                        Ordering::Equal
                    })
                    .then_with(|| ta.cmp(tb))
            }
        }
    }
}
