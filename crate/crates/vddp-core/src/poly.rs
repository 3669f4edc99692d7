//! Dense univariate polynomial helpers over a generic field. Coefficients
//! are little-endian (index = power of X).

use alloc::vec;
use alloc::vec::Vec;

use crate::field::Field;

/// Horner evaluation of sum coeffs[j] x^j.
pub fn poly_eval<F: Field>(coeffs: &[F], x: &F) -> F {
    let mut acc = F::zero();
    for c in coeffs.iter().rev() {
        acc = acc * *x + *c;
    }
    acc
}

/// Degree with zero-polynomial convention deg = 0.
pub fn poly_degree<F: Field>(coeffs: &[F]) -> usize {
    coeffs
        .iter()
        .rposition(|c| !c.is_zero())
        .unwrap_or(0)
}

pub fn poly_add<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    let n = a.len().max(b.len());
    let mut out = vec![F::zero(); n];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or_else(F::zero);
        let y = b.get(i).copied().unwrap_or_else(F::zero);
        *o = x + y;
    }
    out
}

pub fn poly_sub<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    let n = a.len().max(b.len());
    let mut out = vec![F::zero(); n];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or_else(F::zero);
        let y = b.get(i).copied().unwrap_or_else(F::zero);
        *o = x - y;
    }
    out
}

pub fn poly_scale<F: Field>(a: &[F], s: &F) -> Vec<F> {
    a.iter().map(|c| *c * *s).collect()
}

/// Schoolbook product; used for tests and small masks only.
pub fn poly_mul_naive<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![F::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j] + *x * *y;
        }
    }
    out
}

/// Synthetic division by (X - x): returns (quotient, remainder) with
/// a(X) = q(X) (X - x) + r.
pub fn poly_div_linear<F: Field>(a: &[F], x: &F) -> (Vec<F>, F) {
    if a.is_empty() {
        return (Vec::new(), F::zero());
    }
    let mut q = vec![F::zero(); a.len().saturating_sub(1)];
    let mut carry = F::zero();
    for i in (0..a.len()).rev() {
        let cur = a[i] + carry * *x;
        if i == 0 {
            return (q, cur);
        }
        q[i - 1] = cur;
        carry = cur;
    }
    (q, carry)
}

/// Division by the subgroup vanishing polynomial X^n - 1: returns
/// (quotient, remainder) with deg(remainder) < n.
pub fn poly_div_vanishing<F: Field>(a: &[F], n: usize) -> (Vec<F>, Vec<F>) {
    if a.len() <= n {
        return (Vec::new(), a.to_vec());
    }
    let mut rem = a.to_vec();
    let mut q = vec![F::zero(); a.len() - n];
    for i in (n..a.len()).rev() {
        let c = rem[i];
        if c.is_zero() {
            continue;
        }
        q[i - n] = q[i - n] + c;
        rem[i] = F::zero();
        rem[i - n] = rem[i - n] + c;
    }
    rem.truncate(n);
    (q, rem)
}

/// Coefficients of f(s X) given those of f(X).
pub fn poly_compose_scale<F: Field>(a: &[F], s: &F) -> Vec<F> {
    let mut out = Vec::with_capacity(a.len());
    let mut pow = F::one();
    for c in a {
        out.push(*c * pow);
        pow = pow * *s;
    }
    out
}
