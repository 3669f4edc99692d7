//! Pairing-group layer over BLS12-381: multi-scalar multiplication,
//! fixed-base tables for parameter generation, and pairing product checks.

use alloc::vec;
use alloc::vec::Vec;

use bls12_381::{multi_miller_loop, G1Affine, G1Projective, G2Prepared, G2Projective, Gt, Scalar};
use group::Curve;

/// G1 group element (projective form used for arithmetic).
pub type GroupElem = G1Projective;
/// G2 group element.
pub type GroupElem2 = G2Projective;
/// Pairing target group element.
pub type TargetElem = Gt;

pub fn g1_identity() -> GroupElem {
    G1Projective::identity()
}

pub fn g1_generator() -> GroupElem {
    G1Projective::generator()
}

pub fn g2_generator() -> GroupElem2 {
    G2Projective::generator()
}

/// e(a, b) for projective inputs.
pub fn pairing(a: &GroupElem, b: &GroupElem2) -> TargetElem {
    bls12_381::pairing(&a.to_affine(), &b.to_affine())
}

/// Checks e(a1, b1) == e(a2, b2) with a single Miller loop.
pub fn pairing_eq(a1: &GroupElem, b1: &GroupElem2, a2: &GroupElem, b2: &GroupElem2) -> bool {
    let a1 = a1.to_affine();
    let a2 = (-a2).to_affine();
    let b1 = G2Prepared::from(b1.to_affine());
    let b2 = G2Prepared::from(b2.to_affine());
    let ml = multi_miller_loop(&[(&a1, &b1), (&a2, &b2)]);
    ml.final_exponentiation() == Gt::identity()
}

/// Pippenger bucket multi-scalar multiplication.
///
/// Points and scalars must have equal length; the empty product is the
/// identity. Window size is fixed per input size so the cost is a
/// deterministic function of n.
pub fn msm(points: &[GroupElem], scalars: &[Scalar]) -> GroupElem {
    assert_eq!(points.len(), scalars.len(), "msm length mismatch");
    let n = points.len();
    if n == 0 {
        return G1Projective::identity();
    }
    if n < 8 {
        let mut acc = G1Projective::identity();
        for (p, s) in points.iter().zip(scalars) {
            acc += p * s;
        }
        return acc;
    }
    let window = match n {
        0..=127 => 4usize,
        128..=1023 => 6,
        1024..=8191 => 8,
        _ => 10,
    };
    let bytes: Vec<[u8; 32]> = scalars.iter().map(|s| s.to_bytes()).collect();
    let windows = (255 + window) / window;
    let mut result = G1Projective::identity();
    for w in (0..windows).rev() {
        for _ in 0..window {
            result = result.double();
        }
        let mut buckets = vec![G1Projective::identity(); (1 << window) - 1];
        for (i, p) in points.iter().enumerate() {
            let digit = scalar_window(&bytes[i], w * window, window);
            if digit > 0 {
                buckets[digit - 1] += p;
            }
        }
        // Suffix-sum the buckets: sum_j (j+1) * bucket[j].
        let mut running = G1Projective::identity();
        let mut acc = G1Projective::identity();
        for b in buckets.iter().rev() {
            running += b;
            acc += running;
        }
        result += acc;
    }
    result
}

// Extracts `width` bits starting at `lo` from a little-endian encoding.
fn scalar_window(bytes: &[u8; 32], lo: usize, width: usize) -> usize {
    let mut v = 0usize;
    for bit in 0..width {
        let idx = lo + bit;
        if idx >= 256 {
            break;
        }
        if (bytes[idx / 8] >> (idx % 8)) & 1 == 1 {
            v |= 1 << bit;
        }
    }
    v
}

/// Window table for repeated multiplications of one fixed base, used when
/// generating the powers-of-tau parameters.
pub struct FixedBaseTable {
    // table[w][d] = (d+1) * 2^{4w} * base
    table: Vec<Vec<G1Projective>>,
}

const FB_WINDOW: usize = 4;

impl FixedBaseTable {
    pub fn new(base: &GroupElem) -> Self {
        let windows = (255 + FB_WINDOW) / FB_WINDOW;
        let mut table = Vec::with_capacity(windows);
        let mut cur = *base;
        for _ in 0..windows {
            let mut row = Vec::with_capacity((1 << FB_WINDOW) - 1);
            let mut acc = cur;
            for _ in 0..(1 << FB_WINDOW) - 1 {
                row.push(acc);
                acc += cur;
            }
            table.push(row);
            for _ in 0..FB_WINDOW {
                cur = cur.double();
            }
        }
        FixedBaseTable { table }
    }

    pub fn mul(&self, scalar: &Scalar) -> GroupElem {
        let bytes = scalar.to_bytes();
        let mut acc = G1Projective::identity();
        for (w, row) in self.table.iter().enumerate() {
            let digit = scalar_window(&bytes, w * FB_WINDOW, FB_WINDOW);
            if digit > 0 {
                acc += row[digit - 1];
            }
        }
        acc
    }
}

/// Batch conversion to affine for serialization.
pub fn to_affine_batch(points: &[GroupElem]) -> Vec<G1Affine> {
    let mut out = vec![G1Affine::identity(); points.len()];
    G1Projective::batch_normalize(points, &mut out);
    out
}

/// Counter for verifier-side group operations; the randomized-response
/// verifier is required to perform a constant number of them per client.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct OpCount {
    pub g1_mul: u64,
    pub g1_add: u64,
    pub g2_mul: u64,
    pub pairings: u64,
    pub scalar_pow: u64,
}

impl OpCount {
    pub fn total_group_ops(&self) -> u64 {
        self.g1_mul + self.g1_add + self.g2_mul + self.pairings
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    #[test]
    fn pairing_bilinearity() {
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        for _ in 0..4 {
            let a = <Scalar as crate::field::Field>::random(&mut rng);
            let b = <Scalar as crate::field::Field>::random(&mut rng);
            let lhs = pairing(&(g1_generator() * a), &(g2_generator() * b));
            let rhs = pairing(&(g1_generator() * (a * b)), &g2_generator());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn pairing_eq_accepts_and_rejects() {
        let mut rng = ChaCha20Rng::seed_from_u64(2);
        let a = <Scalar as crate::field::Field>::random(&mut rng);
        let g1a = g1_generator() * a;
        assert!(pairing_eq(&g1a, &g2_generator(), &g1_generator(), &(g2_generator() * a)));
        assert!(!pairing_eq(
            &g1a,
            &g2_generator(),
            &g1_generator(),
            &(g2_generator() * (a + <Scalar as crate::field::Field>::one()))
        ));
    }

    #[test]
    fn msm_matches_naive() {
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        for n in [0usize, 1, 7, 8, 57, 200] {
            let points: Vec<GroupElem> = (0..n)
                .map(|_| g1_generator() * <Scalar as crate::field::Field>::random(&mut rng))
                .collect();
            let scalars: Vec<Scalar> = (0..n).map(|_| <Scalar as crate::field::Field>::random(&mut rng)).collect();
            let naive = points
                .iter()
                .zip(&scalars)
                .fold(G1Projective::identity(), |acc, (p, s)| acc + p * s);
            assert_eq!(msm(&points, &scalars), naive, "n={n}");
        }
    }

    #[test]
    fn fixed_base_table_matches_mul() {
        let mut rng = ChaCha20Rng::seed_from_u64(4);
        let base = g1_generator() * <Scalar as crate::field::Field>::random(&mut rng);
        let table = FixedBaseTable::new(&base);
        for _ in 0..10 {
            let s = <Scalar as crate::field::Field>::random(&mut rng);
            assert_eq!(table.mul(&s), base * s);
        }
        assert_eq!(table.mul(&<Scalar as crate::field::Field>::zero()), g1_identity());
    }
}
