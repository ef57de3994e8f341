//! Dense univariate polynomials over `F_q`, coefficient codes low-to-high.

use crate::field::FieldSpec;

pub(crate) fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub(crate) fn rem(f: &[u32], g: &[u32], field: &FieldSpec) -> Vec<u32> {
    let mut r = f.to_vec();
    trim(&mut r);
    let mut g = g.to_vec();
    trim(&mut g);
    assert!(!g.is_empty(), "division by the zero polynomial");
    let dg = g.len() - 1;
    let lead_inv = field.inv_raw(g[dg]).unwrap();
    while r.len() > dg {
        let dr = r.len() - 1;
        let factor = field.mul_raw(r[dr], lead_inv);
        for (i, &gc) in g.iter().enumerate() {
            let idx = dr - dg + i;
            r[idx] = field.sub_raw(r[idx], field.mul_raw(factor, gc));
        }
        trim(&mut r);
    }
    r
}

pub(crate) fn monic(f: &[u32], field: &FieldSpec) -> Vec<u32> {
    let mut f = f.to_vec();
    trim(&mut f);
    if let Some(&lead) = f.last() {
        let inv = field.inv_raw(lead).unwrap();
        for c in f.iter_mut() {
            *c = field.mul_raw(*c, inv);
        }
    }
    f
}

/// Monic gcd; `gcd(0, 0) = 0`.
pub(crate) fn gcd(a: &[u32], b: &[u32], field: &FieldSpec) -> Vec<u32> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(&a, &b, field);
        a = b;
        b = r;
    }
    monic(&a, field)
}

/// `x^q - x`.
pub(crate) fn field_polynomial(field: &FieldSpec) -> Vec<u32> {
    let q = field.q() as usize;
    let mut f = vec![0; q + 1];
    f[q] = 1;
    f[1] = field.neg_raw(1);
    f
}

/// Table of `x^e mod m` for `e` in `0..count`, each padded to `deg m` entries.
pub(crate) fn power_table(m: &[u32], count: usize, field: &FieldSpec) -> Vec<Vec<u32>> {
    let d = m.len() - 1;
    let mut table = Vec::with_capacity(count);
    let mut cur = vec![0u32; d.max(1)];
    if d == 0 {
        // unit modulus: everything is zero
        return vec![vec![0]; count];
    }
    cur[0] = 1;
    for _ in 0..count {
        table.push(cur.clone());
        // cur *= x mod m (m monic)
        let top = cur[d - 1];
        for i in (1..d).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for i in 0..d {
                cur[i] = field.sub_raw(cur[i], field.mul_raw(top, m[i]));
            }
        }
    }
    table
}
