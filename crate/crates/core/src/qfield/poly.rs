//! Dense univariate integer polynomials, index = degree.
//!
//! These are the workhorse for normalizing fractions in `RatFunc`; callers keep
//! vectors trimmed (no trailing zeros, empty = zero).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub(crate) fn trim(p: &mut Vec<BigInt>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn content(p: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in p {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

pub(crate) fn scale_div(p: &[BigInt], d: &BigInt) -> Vec<BigInt> {
    p.iter().map(|c| c / d).collect()
}

pub(crate) fn primitive(p: &[BigInt]) -> Vec<BigInt> {
    if p.is_empty() {
        return Vec::new();
    }
    let c = content(p);
    let mut out = if c.is_one() { p.to_vec() } else { scale_div(p, &c) };
    if out.last().is_some_and(|c| c.is_negative()) {
        for c in out.iter_mut() {
            *c = -&*c;
        }
    }
    out
}

pub(crate) fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// Pseudo-remainder of `a` by `b` (b nonzero).
fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (j, bc) in b.iter().enumerate() {
            r[shift + j] -= &lr * bc;
        }
        trim(&mut r);
        let c = content(&r);
        if !c.is_zero() && !c.is_one() {
            r = scale_div(&r, &c);
        }
    }
    r
}

/// Greatest common divisor with positive leading coefficient (primitive part
/// times the content gcd).
pub(crate) fn gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() {
        return primitive(b);
    }
    if b.is_empty() {
        return primitive(a);
    }
    let c = content(a).gcd(&content(b));
    let (mut x, mut y) = (primitive(a), primitive(b));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        if y.len() == 1 {
            x = vec![BigInt::one()];
            break;
        }
        let r = prem(&x, &y);
        x = y;
        y = primitive(&r);
    }
    let mut g = primitive(&x);
    if !c.is_one() {
        for v in g.iter_mut() {
            *v *= &c;
        }
    }
    g
}

/// Exact quotient `a / b` over the integers; `None` if `b` does not divide `a`.
pub(crate) fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert!(!b.is_empty(), "division by zero polynomial");
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let (quo, rem) = r[dr].div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        let shift = dr - db;
        for (j, bc) in b.iter().enumerate() {
            r[shift + j] -= &quo * bc;
        }
        q[shift] = quo;
        trim(&mut r);
    }
    if !r.is_empty() {
        return None;
    }
    trim(&mut q);
    Some(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> Vec<BigInt> {
        let mut out: Vec<BigInt> = v.iter().map(|&c| BigInt::from(c)).collect();
        trim(&mut out);
        out
    }

    #[test]
    fn gcd_of_products() {
        // (x+1)(x-2) and (x+1)(3x+5)
        let a = mul(&p(&[1, 1]), &p(&[-2, 1]));
        let b = mul(&p(&[1, 1]), &p(&[5, 3]));
        assert_eq!(gcd(&a, &b), p(&[1, 1]));
        assert_eq!(gcd(&p(&[2, 4]), &p(&[6])), p(&[2]));
    }

    #[test]
    fn exact_division() {
        let a = mul(&p(&[1, 1, 1]), &p(&[-3, 2]));
        assert_eq!(div_exact(&a, &p(&[-3, 2])), Some(p(&[1, 1, 1])));
        assert_eq!(div_exact(&p(&[1, 0, 1]), &p(&[1, 1])), None);
    }
}
