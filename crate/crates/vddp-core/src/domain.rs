//! Power-of-two evaluation domains and the number-theoretic transform.
//!
//! Following the convention of the protocols built on top, `ntt` maps a
//! vector of values on the domain to polynomial coefficients (interpolation)
//! and `intt` maps coefficients back to domain values (evaluation), so that
//! `poly_eval(ntt(v), omega^i) == v[i]`.

use alloc::vec;
use alloc::vec::Vec;

use crate::field::Field;

/// Errors from domain construction and transforms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DomainError {
    /// Requested 2^m exceeds the field's 2-adicity.
    UnsupportedDomainSize,
    /// Input length does not match the domain size.
    LengthMismatch,
}

impl core::fmt::Display for DomainError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            DomainError::UnsupportedDomainSize => write!(f, "unsupported domain size"),
            DomainError::LengthMismatch => write!(f, "length mismatch"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for DomainError {}

/// Multiplicative subgroup of order 2^m with generator omega.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvalDomain<F: Field> {
    log_size: u32,
    omega: F,
    omega_inv: F,
    size_inv: F,
}

impl<F: Field> EvalDomain<F> {
    /// Domain of size 2^m. Fails when 2^m does not divide p - 1.
    pub fn generate(m: u32) -> Result<Self, DomainError> {
        if m > F::TWO_ADICITY {
            return Err(DomainError::UnsupportedDomainSize);
        }
        let mut omega = F::two_adic_root();
        for _ in 0..(F::TWO_ADICITY - m) {
            omega = omega.square();
        }
        let size_inv = F::from_u64(1u64 << m)
            .invert()
            .expect("field characteristic exceeds domain size");
        let omega_inv = omega.invert().expect("root of unity is invertible");
        Ok(EvalDomain {
            log_size: m,
            omega,
            omega_inv,
            size_inv,
        })
    }

    pub fn size(&self) -> usize {
        1usize << self.log_size
    }

    pub fn log_size(&self) -> u32 {
        self.log_size
    }

    pub fn omega(&self) -> F {
        self.omega
    }

    /// omega^i, with i reduced mod the domain size.
    pub fn element(&self, i: usize) -> F {
        let i = i & (self.size() - 1);
        self.omega.pow_u64(i as u64)
    }

    /// All domain elements omega^0 .. omega^{n-1}.
    pub fn elements(&self) -> Vec<F> {
        let mut out = Vec::with_capacity(self.size());
        let mut cur = F::one();
        for _ in 0..self.size() {
            out.push(cur);
            cur = cur * self.omega;
        }
        out
    }

    /// Z(x) = x^n - 1, the vanishing polynomial of the domain at x.
    pub fn vanishing_at(&self, x: F) -> F {
        x.pow_u64(self.size() as u64) - F::one()
    }

    /// Values on the domain -> coefficients (interpolation).
    pub fn ntt(&self, evals: &[F]) -> Result<Vec<F>, DomainError> {
        if evals.len() != self.size() {
            return Err(DomainError::LengthMismatch);
        }
        let mut a = evals.to_vec();
        fft_in_place(&mut a, self.omega_inv);
        for v in a.iter_mut() {
            *v = *v * self.size_inv;
        }
        Ok(a)
    }

    /// Coefficients -> values on the domain (evaluation).
    pub fn intt(&self, coeffs: &[F]) -> Result<Vec<F>, DomainError> {
        if coeffs.len() != self.size() {
            return Err(DomainError::LengthMismatch);
        }
        let mut a = coeffs.to_vec();
        fft_in_place(&mut a, self.omega);
        Ok(a)
    }

    /// Evaluate a polynomial of arbitrary degree < n on the domain by
    /// zero-padding its coefficients.
    pub fn evaluate_padded(&self, coeffs: &[F]) -> Result<Vec<F>, DomainError> {
        if coeffs.len() > self.size() {
            return Err(DomainError::LengthMismatch);
        }
        let mut padded = coeffs.to_vec();
        padded.resize(self.size(), F::zero());
        self.intt(&padded)
    }

    /// All Lagrange basis polynomials evaluated at x:
    /// L_i(x) = omega^i (x^n - 1) / (n (x - omega^i)).
    /// For x inside the domain this degenerates to the indicator vector.
    pub fn lagrange_at(&self, x: F) -> Vec<F> {
        let n = self.size();
        let z = self.vanishing_at(x);
        if z.is_zero() {
            let mut out = vec![F::zero(); n];
            let mut cur = F::one();
            for item in out.iter_mut() {
                if cur == x {
                    *item = F::one();
                }
                cur = cur * self.omega;
            }
            return out;
        }
        // Batch the denominators n (x - omega^i) with Montgomery's trick.
        let mut denoms = Vec::with_capacity(n);
        let n_f = F::from_u64(n as u64);
        let mut cur = F::one();
        for _ in 0..n {
            denoms.push(n_f * (x - cur));
            cur = cur * self.omega;
        }
        let invs = batch_invert(&denoms);
        let mut out = Vec::with_capacity(n);
        let mut cur = F::one();
        for inv in invs {
            out.push(cur * z * inv);
            cur = cur * self.omega;
        }
        out
    }
}

/// In-place radix-2 transform: a[k] <- sum_j a[j] root^{jk}.
fn fft_in_place<F: Field>(a: &mut [F], root: F) {
    let n = a.len();
    debug_assert!(n.is_power_of_two());
    let log_n = n.trailing_zeros();
    for i in 0..n {
        let j = bit_reverse(i, log_n);
        if i < j {
            a.swap(i, j);
        }
    }
    let mut len = 2usize;
    while len <= n {
        let w_len = root.pow_u64((n / len) as u64);
        for chunk in a.chunks_mut(len) {
            let mut w = F::one();
            for i in 0..len / 2 {
                let u = chunk[i];
                let v = chunk[i + len / 2] * w;
                chunk[i] = u + v;
                chunk[i + len / 2] = u - v;
                w = w * w_len;
            }
        }
        len <<= 1;
    }
}

fn bit_reverse(mut v: usize, bits: u32) -> usize {
    let mut out = 0usize;
    for _ in 0..bits {
        out = (out << 1) | (v & 1);
        v >>= 1;
    }
    out
}

/// Batch inversion; panics on zero input (inputs are constructed nonzero).
pub fn batch_invert<F: Field>(values: &[F]) -> Vec<F> {
    let mut prefix = Vec::with_capacity(values.len());
    let mut acc = F::one();
    for v in values {
        prefix.push(acc);
        acc = acc * *v;
    }
    let mut inv = acc.invert().expect("batch_invert: zero element");
    let mut out = vec![F::zero(); values.len()];
    for i in (0..values.len()).rev() {
        out[i] = prefix[i] * inv;
        inv = inv * values[i];
    }
    out
}

/// Cyclic multiplicative subgroup of arbitrary order; the quantized
/// randomized-response construction uses one for its class group, and the
/// toy-field oracles use non-power-of-two instances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicGroup<F: Field> {
    generator: F,
    order: usize,
}

impl<F: Field> CyclicGroup<F> {
    /// Wraps a generator after checking it has the exact claimed order.
    pub fn new(generator: F, order: usize) -> Option<Self> {
        if order == 0 || generator.pow_u64(order as u64) != F::one() {
            return None;
        }
        // Exact order: no proper divisor annihilates the generator.
        for d in 1..order {
            if order % d == 0 && generator.pow_u64(d as u64) == F::one() {
                return None;
            }
        }
        Some(CyclicGroup { generator, order })
    }

    pub fn generator(&self) -> F {
        self.generator
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn element(&self, i: usize) -> F {
        self.generator.pow_u64((i % self.order) as u64)
    }

    pub fn contains(&self, x: &F) -> bool {
        x.pow_u64(self.order as u64) == F::one()
    }

    /// Discrete log by enumeration; only sensible at oracle scale.
    pub fn index_of(&self, x: &F) -> Option<usize> {
        let mut cur = F::one();
        for i in 0..self.order {
            if cur == *x {
                return Some(i);
            }
            cur = cur * self.generator;
        }
        None
    }
}
