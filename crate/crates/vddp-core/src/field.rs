//! Prime-field arithmetic: the BLS12-381 scalar field used by all protocols,
//! plus small const-modulus fields that drive exhaustive test oracles.

use alloc::vec::Vec;
use core::fmt::Debug;
use core::ops::{Add, Mul, Neg, Sub};

use rand_core::RngCore;

/// The production scalar field (BLS12-381, ~255 bits, 2-adicity 32).
pub type Scalar = bls12_381::Scalar;

/// Errors from field-level operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldError {
    /// Inversion of zero.
    NonInvertible,
    /// Residue does not decode to a signed integer within the supported range.
    SignedRangeOverflow,
}

impl core::fmt::Display for FieldError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            FieldError::NonInvertible => write!(f, "non-invertible"),
            FieldError::SignedRangeOverflow => write!(f, "signed decode out of range"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for FieldError {}

/// Minimal prime-field interface shared by the production scalar field and
/// the toy test fields. All arithmetic is exact and modular.
pub trait Field:
    Copy
    + Clone
    + PartialEq
    + Eq
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    /// Largest s with 2^s | p - 1.
    const TWO_ADICITY: u32;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_u64(v: u64) -> Self;
    fn is_zero(&self) -> bool;

    fn square(&self) -> Self {
        *self * *self
    }

    /// Multiplicative inverse; `None` for zero.
    fn invert(&self) -> Option<Self>;

    /// Variable-time exponentiation by a little-endian limb exponent.
    fn pow_limbs(&self, exp: &[u64]) -> Self;

    /// Odd t with p - 1 = 2^TWO_ADICITY * t, as little-endian limbs.
    fn odd_cofactor() -> Vec<u64>;

    /// (p - 1)/2 as little-endian limbs (Euler criterion exponent).
    fn half_order() -> Vec<u64>;

    /// An element of exact multiplicative order 2^TWO_ADICITY.
    fn two_adic_root() -> Self;

    fn random(rng: &mut dyn RngCore) -> Self;

    /// Canonical little-endian byte encoding.
    fn to_bytes_le(&self) -> Vec<u8>;

    /// Square root, if one exists. The default is Tonelli–Shanks.
    fn sqrt(&self) -> Option<Self> {
        tonelli_shanks(*self)
    }

    fn pow_u64(&self, exp: u64) -> Self {
        self.pow_limbs(&[exp])
    }
}

/// Euler criterion: 1 for nonzero squares, -1 for non-squares, 0 for zero.
pub fn legendre<F: Field>(a: &F) -> i8 {
    if a.is_zero() {
        return 0;
    }
    let e = a.pow_limbs(&F::half_order());
    if e == F::one() {
        1
    } else {
        -1
    }
}

/// Whether `a` is a square, counting zero as a square.
pub fn is_square<F: Field>(a: &F) -> bool {
    legendre(a) >= 0
}

/// Tonelli–Shanks square root for fields of known 2-adicity.
pub fn tonelli_shanks<F: Field>(a: F) -> Option<F> {
    if a.is_zero() {
        return Some(F::zero());
    }
    if legendre(&a) != 1 {
        return None;
    }
    let t = F::odd_cofactor();
    // x = a^{(t+1)/2}, u = a^t
    let t_plus_1_half = limbs_add1_shr1(&t);
    let mut x = a.pow_limbs(&t_plus_1_half);
    let mut u = a.pow_limbs(&t);
    let mut c = F::two_adic_root();
    let mut m = F::TWO_ADICITY;
    while u != F::one() {
        let mut i = 0u32;
        let mut probe = u;
        while probe != F::one() {
            probe = probe.square();
            i += 1;
        }
        // b = c^{2^{m-i-1}}
        let mut b = c;
        for _ in 0..(m - i - 1) {
            b = b.square();
        }
        x = x * b;
        c = b.square();
        u = u * c;
        m = i;
    }
    debug_assert!(x.square() == a);
    Some(x)
}

// (limbs + 1) >> 1 for an odd little-endian value.
fn limbs_add1_shr1(limbs: &[u64]) -> Vec<u64> {
    let mut v: Vec<u64> = limbs.to_vec();
    let mut carry = 1u64;
    for l in v.iter_mut() {
        let (s, c) = l.overflowing_add(carry);
        *l = s;
        carry = u64::from(c);
        if carry == 0 {
            break;
        }
    }
    if carry != 0 {
        v.push(1);
    }
    let mut out = Vec::with_capacity(v.len());
    for i in 0..v.len() {
        let hi = if i + 1 < v.len() { v[i + 1] } else { 0 };
        out.push((v[i] >> 1) | (hi << 63));
    }
    while out.len() > 1 && *out.last().unwrap() == 0 {
        out.pop();
    }
    out
}

// ---------------------------------------------------------------------------
// BLS12-381 scalar field
// ---------------------------------------------------------------------------

// (p - 1) / 2^32, p the BLS12-381 scalar field order.
const BLS_ODD_COFACTOR: [u64; 4] = [
    0xfffe_5bfe_ffff_ffff,
    0x09a1_d805_53bd_a402,
    0x299d_7d48_3339_d808,
    0x0000_0000_73ed_a753,
];

// (p - 1) / 2.
const BLS_HALF_ORDER: [u64; 4] = [
    0x7fff_ffff_8000_0000,
    0xa9de_d201_7fff_2dff,
    0x199c_ec04_04d0_ec02,
    0x39f6_d3a9_94ce_bea4,
];

impl Field for Scalar {
    const TWO_ADICITY: u32 = 32;

    fn zero() -> Self {
        <Scalar as ff::Field>::ZERO
    }

    fn one() -> Self {
        <Scalar as ff::Field>::ONE
    }

    fn from_u64(v: u64) -> Self {
        Scalar::from(v)
    }

    fn is_zero(&self) -> bool {
        bool::from(<Scalar as ff::Field>::is_zero(self))
    }

    fn invert(&self) -> Option<Self> {
        Option::from(<Scalar as ff::Field>::invert(self))
    }

    fn pow_limbs(&self, exp: &[u64]) -> Self {
        <Scalar as ff::Field>::pow_vartime(self, exp)
    }

    fn odd_cofactor() -> Vec<u64> {
        BLS_ODD_COFACTOR.to_vec()
    }

    fn half_order() -> Vec<u64> {
        BLS_HALF_ORDER.to_vec()
    }

    fn two_adic_root() -> Self {
        <Scalar as ff::PrimeField>::ROOT_OF_UNITY
    }

    fn random(rng: &mut dyn RngCore) -> Self {
        <Scalar as ff::Field>::random(rng)
    }

    fn to_bytes_le(&self) -> Vec<u8> {
        self.to_bytes().to_vec()
    }

    fn sqrt(&self) -> Option<Self> {
        Option::from(<Scalar as ff::Field>::sqrt(self))
    }
}

/// Embed a signed integer as a field residue: negatives map to p - |a|.
pub fn embed_signed<F: Field>(v: i64) -> F {
    if v >= 0 {
        F::from_u64(v as u64)
    } else {
        -F::from_u64(v.unsigned_abs())
    }
}

/// Decode a residue back to a signed integer. Residues above p/2 are read as
/// negatives; anything outside +/- 2^62 is an error.
pub fn decode_signed<F: Field>(x: &F) -> Result<i64, FieldError> {
    const BOUND: u64 = 1 << 62;
    if let Some(v) = residue_as_small(x) {
        if v < BOUND {
            return Ok(v as i64);
        }
    }
    if let Some(v) = residue_as_small(&(-*x)) {
        if v < BOUND {
            return Ok(-(v as i64));
        }
    }
    Err(FieldError::SignedRangeOverflow)
}

// Interprets the canonical encoding as u64 when all higher bytes are zero.
fn residue_as_small<F: Field>(x: &F) -> Option<u64> {
    let bytes = x.to_bytes_le();
    if bytes.iter().skip(8).any(|&b| b != 0) {
        return None;
    }
    let mut v = [0u8; 8];
    for (i, b) in bytes.iter().take(8).enumerate() {
        v[i] = *b;
    }
    Some(u64::from_le_bytes(v))
}

// ---------------------------------------------------------------------------
// Toy const-modulus fields for exhaustive oracles
// ---------------------------------------------------------------------------

/// Prime field with a compile-time u64 modulus; used only by test oracles
/// where exhaustive enumeration over the whole field is feasible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GfP<const P: u64>(pub u64);

impl<const P: u64> GfP<P> {
    pub fn new(v: u64) -> Self {
        GfP(v % P)
    }

    pub const fn modulus() -> u64 {
        P
    }

    pub fn value(&self) -> u64 {
        self.0
    }
}

impl<const P: u64> Add for GfP<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let s = self.0 + rhs.0;
        GfP(if s >= P { s - P } else { s })
    }
}

impl<const P: u64> Sub for GfP<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<const P: u64> Mul for GfP<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        GfP(((self.0 as u128 * rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Neg for GfP<P> {
    type Output = Self;
    fn neg(self) -> Self {
        GfP(if self.0 == 0 { 0 } else { P - self.0 })
    }
}

const fn two_adicity_of(p: u64) -> u32 {
    (p - 1).trailing_zeros()
}

impl<const P: u64> Field for GfP<P> {
    const TWO_ADICITY: u32 = two_adicity_of(P);

    fn zero() -> Self {
        GfP(0)
    }

    fn one() -> Self {
        GfP(1 % P)
    }

    fn from_u64(v: u64) -> Self {
        GfP(v % P)
    }

    fn is_zero(&self) -> bool {
        self.0 == 0
    }

    fn invert(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow_u64(P - 2))
        }
    }

    fn pow_limbs(&self, exp: &[u64]) -> Self {
        let mut acc = Self::one();
        for limb in exp.iter().rev() {
            for bit in (0..64).rev() {
                acc = acc.square();
                if (limb >> bit) & 1 == 1 {
                    acc = acc * *self;
                }
            }
        }
        acc
    }

    fn odd_cofactor() -> Vec<u64> {
        alloc::vec![(P - 1) >> Self::TWO_ADICITY]
    }

    fn half_order() -> Vec<u64> {
        alloc::vec![(P - 1) / 2]
    }

    fn two_adic_root() -> Self {
        // First quadratic non-residue raised to the odd cofactor has exact
        // order 2^TWO_ADICITY.
        let mut n = 2u64;
        loop {
            let cand = GfP::<P>(n % P);
            if legendre(&cand) == -1 {
                return cand.pow_u64((P - 1) >> Self::TWO_ADICITY);
            }
            n += 1;
        }
    }

    fn random(rng: &mut dyn RngCore) -> Self {
        // Rejection sampling over u64 keeps the distribution uniform.
        loop {
            let v = rng.next_u64();
            let limit = u64::MAX - (u64::MAX % P);
            if v < limit {
                return GfP(v % P);
            }
        }
    }

    fn to_bytes_le(&self) -> Vec<u8> {
        self.0.to_le_bytes().to_vec()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    type F7 = GfP<7>;
    type F97 = GfP<97>;

    fn rng() -> ChaCha20Rng {
        ChaCha20Rng::seed_from_u64(0x57ddf)
    }

    #[test]
    fn small_integer_arithmetic() {
        assert_eq!(Scalar::from_u64(2) + Scalar::from_u64(3), Scalar::from_u64(5));
        assert_eq!(F7::from_u64(5) + F7::from_u64(4), F7::from_u64(2));
    }

    #[test]
    fn inverse_is_multiplicative_inverse() {
        let mut rng = rng();
        for _ in 0..50 {
            let a = Scalar::random(&mut rng);
            if a.is_zero() {
                continue;
            }
            assert_eq!(a * Field::invert(&a).unwrap(), Field::one());
        }
        assert!(Field::invert(&<Scalar as Field>::zero()).is_none());
        assert!(F7::zero().invert().is_none());
    }

    // Fermat check against a square-and-multiply oracle independent of
    // pow_vartime: p - 1 applied bit by bit from plain limb data.
    #[test]
    fn pow_p_minus_one_is_identity() {
        let mut rng = rng();
        // p - 1 limbs = 2 * half_order
        let half = <Scalar as Field>::half_order();
        for _ in 0..20 {
            let a = Scalar::random(&mut rng);
            if a.is_zero() {
                continue;
            }
            let sq = a.pow_limbs(&half);
            // oracle: (a^{(p-1)/2})^2 computed by repeated multiplication
            let mut oracle = <Scalar as Field>::one();
            for _ in 0..2 {
                oracle = oracle * sq;
            }
            assert_eq!(oracle, <Scalar as Field>::one());
        }
    }

    #[test]
    fn bls_cofactor_constants_match_modulus() {
        // Rebuild p - 1 from the hardcoded limbs and compare against the
        // crate's modulus string.
        use num_bigint::BigUint;
        let p = BigUint::parse_bytes(
            b"73eda753299d7d483339d80809a1d80553bda402fffe5bfeffffffff00000001",
            16,
        )
        .unwrap();
        let p_minus_1 = &p - 1u32;
        let t = BigUint::new(
            BLS_ODD_COFACTOR
                .iter()
                .flat_map(|l| alloc::vec![(*l & 0xffff_ffff) as u32, (*l >> 32) as u32])
                .collect(),
        );
        assert_eq!(&t << 32, p_minus_1.clone());
        let h = BigUint::new(
            BLS_HALF_ORDER
                .iter()
                .flat_map(|l| alloc::vec![(*l & 0xffff_ffff) as u32, (*l >> 32) as u32])
                .collect(),
        );
        assert_eq!(&h << 1, p_minus_1);
    }

    #[test]
    fn sqrt_witness_matches_euler_criterion() {
        let mut rng = rng();
        for _ in 0..1000 {
            let a = Scalar::random(&mut rng);
            let sq = is_square(&a);
            let euler = if a.is_zero() {
                true
            } else {
                a.pow_limbs(&<Scalar as Field>::half_order()) == Field::one()
            };
            assert_eq!(sq, euler);
            if sq {
                let x = Field::sqrt(&a).unwrap();
                assert_eq!(x.square(), a);
            } else {
                assert!(Field::sqrt(&a).is_none());
            }
        }
    }

    #[test]
    fn sqrt_zero_and_four() {
        assert_eq!(Field::sqrt(&<Scalar as Field>::zero()), Some(Field::zero()));
        let x = Field::sqrt(&Scalar::from_u64(4)).unwrap();
        assert!(x == Scalar::from_u64(2) || x == -Scalar::from_u64(2));
    }

    #[test]
    fn generic_tonelli_shanks_exhaustive_small_fields() {
        // Exhaustive over all residues: is_square agrees with counting
        // squares, and witnesses square back.
        fn check<const P: u64>() {
            let mut squares = alloc::vec![false; P as usize];
            for v in 0..P {
                squares[((v as u128 * v as u128) % P as u128) as usize] = true;
            }
            for v in 0..P {
                let a = GfP::<P>(v);
                assert_eq!(is_square(&a), squares[v as usize], "p={P} v={v}");
                if let Some(x) = tonelli_shanks(a) {
                    assert_eq!(x * x, a);
                } else {
                    assert!(!squares[v as usize]);
                }
            }
        }
        check::<7>();
        check::<97>();
        check::<193>();
        check::<769>();
    }

    #[test]
    fn two_adic_root_has_exact_order() {
        let r = <Scalar as Field>::two_adic_root();
        let mut x = r;
        for _ in 0..31 {
            x = x.square();
        }
        assert_eq!(x, -<Scalar as Field>::one());
        assert_eq!(x.square(), Field::one());

        let r97 = F97::two_adic_root();
        assert_eq!(F97::TWO_ADICITY, 5);
        assert_eq!(r97.pow_u64(32), F97::one());
        assert!(r97.pow_u64(16) != F97::one());
    }

    #[test]
    fn signed_embedding_roundtrip() {
        for v in [-5i64, -1, 0, 1, 7, 1 << 40, -(1 << 40)] {
            let e: Scalar = embed_signed(v);
            assert_eq!(decode_signed(&e).unwrap(), v);
        }
        let huge = Scalar::from_u64(1) + embed_signed::<Scalar>(1 << 62);
        assert!(decode_signed(&huge).is_err());
    }

    #[test]
    fn limb_helper_add1_shr1() {
        assert_eq!(limbs_add1_shr1(&[3]), alloc::vec![2]);
        assert_eq!(limbs_add1_shr1(&[u64::MAX]), alloc::vec![1 << 63]);
        assert_eq!(limbs_add1_shr1(&[u64::MAX, 1]), alloc::vec![0, 1]);
    }
}
