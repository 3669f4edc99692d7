//! Pedersen scalar commitments and hiding KZG polynomial commitments.
//!
//! The setup here is ceremony-free: the trapdoor tau (and the second base
//! h = g^upsilon) are derived pseudorandomly from a seed and erased after the
//! powers are computed. That makes parameters reproducible at desk scale; a
//! production deployment would replace this with an external ceremony.

use alloc::vec;
use alloc::vec::Vec;

use bls12_381::G1Affine;
use group::Curve;
use sha2::{Digest, Sha256};

use crate::field::{Field, Scalar};
use crate::group::{
    g1_generator, g2_generator, msm, pairing_eq, to_affine_batch, FixedBaseTable, GroupElem,
    GroupElem2,
};
use crate::poly::{poly_div_linear, poly_eval};

/// Errors from commitment operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommitError {
    /// Polynomial degree exceeds the committed setup.
    DegreeOverflow,
    /// Malformed serialized parameters.
    Malformed,
}

impl core::fmt::Display for CommitError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            CommitError::DegreeOverflow => write!(f, "degree overflow"),
            CommitError::Malformed => write!(f, "malformed parameters"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for CommitError {}

/// Retained trapdoor, available only when requested at setup. Tests use it
/// as an oracle; protocol code never touches it.
#[derive(Debug, Clone)]
pub struct Trapdoor {
    pub tau: Scalar,
    pub upsilon: Scalar,
}

/// Commitment setup shared by every protocol: powers of tau over two G1
/// bases plus the G2 elements needed for opening and subgroup-vanishing
/// checks.
#[derive(Clone)]
pub struct PublicParams {
    max_degree: usize,
    g_powers: Vec<GroupElem>,
    h_powers: Vec<GroupElem>,
    g2: GroupElem2,
    g2_tau: GroupElem2,
    // g2^{tau^{2^j}}, used to check divisibility by X^{2^j} - 1.
    g2_pow2: Vec<GroupElem2>,
    trapdoor: Option<Trapdoor>,
    fingerprint: [u8; 32],
}

/// A commitment (Pedersen or KZG) is a single G1 element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Commitment(pub GroupElem);

impl Commitment {
    pub fn identity() -> Self {
        Commitment(crate::group::g1_identity())
    }

    /// Homomorphic combination: commit(a)+commit(b) binds a+b.
    pub fn combine(&self, other: &Commitment) -> Commitment {
        Commitment(self.0 + other.0)
    }

    pub fn scale(&self, s: &Scalar) -> Commitment {
        Commitment(self.0 * s)
    }

    pub fn to_bytes(&self) -> [u8; 48] {
        self.0.to_affine().to_compressed()
    }

    pub fn from_bytes(bytes: &[u8; 48]) -> Option<Commitment> {
        Option::<G1Affine>::from(G1Affine::from_compressed(bytes))
            .map(|a| Commitment(GroupElem::from(a)))
    }
}

/// Evaluation opening: the randomness value rho = R(x) and the quotient
/// witness gamma.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KzgOpening {
    pub rho: Scalar,
    pub gamma: GroupElem,
}

fn seed_scalar(seed: &[u8], label: &[u8]) -> Scalar {
    let mut wide = [0u8; 64];
    for half in 0..2u8 {
        let mut hasher = Sha256::new();
        hasher.update(b"vddp-setup");
        hasher.update([half]);
        hasher.update((seed.len() as u64).to_le_bytes());
        hasher.update(seed);
        hasher.update(label);
        wide[half as usize * 32..(half as usize + 1) * 32].copy_from_slice(&hasher.finalize());
    }
    Scalar::from_bytes_wide(&wide)
}

impl PublicParams {
    /// Deterministic setup from a seed, supporting degrees up to
    /// `max_degree`. `retain_trapdoor` keeps tau around for test oracles.
    pub fn setup(max_degree: usize, seed: &[u8], retain_trapdoor: bool) -> Self {
        let tau = seed_scalar(seed, b"tau");
        let upsilon = seed_scalar(seed, b"upsilon");
        let g = g1_generator();
        let h = g * upsilon;

        let mut tau_powers = Vec::with_capacity(max_degree + 1);
        let mut cur = <Scalar as Field>::one();
        for _ in 0..=max_degree {
            tau_powers.push(cur);
            cur *= tau;
        }
        let g_table = FixedBaseTable::new(&g);
        let h_table = FixedBaseTable::new(&h);
        let g_powers: Vec<GroupElem> = tau_powers.iter().map(|t| g_table.mul(t)).collect();
        let h_powers: Vec<GroupElem> = tau_powers.iter().map(|t| h_table.mul(t)).collect();

        let g2 = g2_generator();
        let g2_tau = g2 * tau;
        let mut g2_pow2 = Vec::new();
        let mut e = 1usize;
        let mut j = 0u32;
        while e <= max_degree {
            g2_pow2.push(g2 * tau.pow_u64(e as u64));
            j += 1;
            e = 1usize << j;
        }

        let mut pp = PublicParams {
            max_degree,
            g_powers,
            h_powers,
            g2,
            g2_tau,
            g2_pow2,
            trapdoor: retain_trapdoor.then_some(Trapdoor { tau, upsilon }),
            fingerprint: [0u8; 32],
        };
        pp.fingerprint = pp.compute_fingerprint();
        pp
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn g(&self) -> GroupElem {
        self.g_powers[0]
    }

    pub fn h(&self) -> GroupElem {
        self.h_powers[0]
    }

    pub fn g_power(&self, j: usize) -> GroupElem {
        self.g_powers[j]
    }

    pub fn g_powers(&self) -> &[GroupElem] {
        &self.g_powers
    }

    pub fn h_powers(&self) -> &[GroupElem] {
        &self.h_powers
    }

    pub fn g2(&self) -> GroupElem2 {
        self.g2
    }

    pub fn g2_tau(&self) -> GroupElem2 {
        self.g2_tau
    }

    /// g2^{Z(tau)} for the vanishing polynomial Z = X^{2^j} - 1 of a
    /// power-of-two subgroup.
    pub fn g2_vanishing_pow2(&self, log_order: u32) -> Option<GroupElem2> {
        self.g2_pow2
            .get(log_order as usize)
            .map(|p| p - self.g2)
    }

    pub fn trapdoor(&self) -> Option<&Trapdoor> {
        self.trapdoor.as_ref()
    }

    /// Digest binding every public element; mixing commitments produced
    /// under different parameter sets is detected through this.
    pub fn fingerprint(&self) -> [u8; 32] {
        self.fingerprint
    }

    fn compute_fingerprint(&self) -> [u8; 32] {
        let mut hasher = Sha256::new();
        hasher.update(b"vddp-pp");
        hasher.update((self.max_degree as u64).to_le_bytes());
        for p in to_affine_batch(&self.g_powers) {
            hasher.update(p.to_compressed());
        }
        for p in to_affine_batch(&self.h_powers) {
            hasher.update(p.to_compressed());
        }
        hasher.update(self.g2.to_affine().to_compressed());
        hasher.update(self.g2_tau.to_affine().to_compressed());
        for p in &self.g2_pow2 {
            hasher.update(p.to_affine().to_compressed());
        }
        hasher.finalize().into()
    }

    /// Canonical binary encoding: header (magic, version, degree) followed
    /// by compressed point arrays. The trapdoor is never serialized.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        out.extend_from_slice(b"VDPP");
        out.extend_from_slice(&1u16.to_le_bytes());
        out.extend_from_slice(&(self.max_degree as u32).to_le_bytes());
        out.extend_from_slice(&(self.g2_pow2.len() as u32).to_le_bytes());
        for p in to_affine_batch(&self.g_powers) {
            out.extend_from_slice(&p.to_compressed());
        }
        for p in to_affine_batch(&self.h_powers) {
            out.extend_from_slice(&p.to_compressed());
        }
        out.extend_from_slice(&self.g2.to_affine().to_compressed());
        out.extend_from_slice(&self.g2_tau.to_affine().to_compressed());
        for p in &self.g2_pow2 {
            out.extend_from_slice(&p.to_affine().to_compressed());
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, CommitError> {
        use bls12_381::G2Affine;
        let err = CommitError::Malformed;
        if bytes.len() < 14 || &bytes[0..4] != b"VDPP" {
            return Err(err);
        }
        let version = u16::from_le_bytes([bytes[4], bytes[5]]);
        if version != 1 {
            return Err(err);
        }
        let max_degree = u32::from_le_bytes(bytes[6..10].try_into().unwrap()) as usize;
        let n_pow2 = u32::from_le_bytes(bytes[10..14].try_into().unwrap()) as usize;
        let n = max_degree + 1;
        let expected = 14 + 48 * 2 * n + 96 * (2 + n_pow2);
        if bytes.len() != expected {
            return Err(err);
        }
        let mut off = 14;
        let mut read_g1 = |off: &mut usize| -> Result<GroupElem, CommitError> {
            let raw: [u8; 48] = bytes[*off..*off + 48].try_into().unwrap();
            *off += 48;
            Option::<G1Affine>::from(G1Affine::from_compressed(&raw))
                .map(GroupElem::from)
                .ok_or(err)
        };
        let mut g_powers = Vec::with_capacity(n);
        for _ in 0..n {
            g_powers.push(read_g1(&mut off)?);
        }
        let mut h_powers = Vec::with_capacity(n);
        for _ in 0..n {
            h_powers.push(read_g1(&mut off)?);
        }
        let mut read_g2 = |off: &mut usize| -> Result<GroupElem2, CommitError> {
            let raw: [u8; 96] = bytes[*off..*off + 96].try_into().unwrap();
            *off += 96;
            Option::<G2Affine>::from(G2Affine::from_compressed(&raw))
                .map(GroupElem2::from)
                .ok_or(err)
        };
        let g2 = read_g2(&mut off)?;
        let g2_tau = read_g2(&mut off)?;
        let mut g2_pow2 = Vec::with_capacity(n_pow2);
        for _ in 0..n_pow2 {
            g2_pow2.push(read_g2(&mut off)?);
        }
        let mut pp = PublicParams {
            max_degree,
            g_powers,
            h_powers,
            g2,
            g2_tau,
            g2_pow2,
            trapdoor: None,
            fingerprint: [0u8; 32],
        };
        pp.fingerprint = pp.compute_fingerprint();
        Ok(pp)
    }
}

/// Pedersen commitment g^x h^r.
pub fn pedersen_commit(x: &Scalar, r: &Scalar, pp: &PublicParams) -> Commitment {
    Commitment(pp.g() * x + pp.h() * r)
}

/// Hiding KZG commitment g^{F(tau)} h^{R(tau)}. An all-zero `r` commits a
/// public polynomial without hiding.
pub fn kzg_commit(f: &[Scalar], r: &[Scalar], pp: &PublicParams) -> Result<Commitment, CommitError> {
    if f.len() > pp.max_degree + 1 || r.len() > pp.max_degree + 1 {
        return Err(CommitError::DegreeOverflow);
    }
    let mut points = Vec::with_capacity(f.len() + r.len());
    let mut scalars = Vec::with_capacity(f.len() + r.len());
    for (j, c) in f.iter().enumerate() {
        if !c.is_zero() {
            points.push(pp.g_powers[j]);
            scalars.push(*c);
        }
    }
    for (j, c) in r.iter().enumerate() {
        if !c.is_zero() {
            points.push(pp.h_powers[j]);
            scalars.push(*c);
        }
    }
    Ok(Commitment(msm(&points, &scalars)))
}

/// Opens F at x: returns y = F(x) together with the witness
/// (rho = R(x), gamma = g^{(F(tau)-y)/(tau-x)} h^{(R(tau)-rho)/(tau-x)}).
pub fn kzg_open(
    f: &[Scalar],
    r: &[Scalar],
    x: &Scalar,
    pp: &PublicParams,
) -> Result<(Scalar, KzgOpening), CommitError> {
    let y = poly_eval(f, x);
    let rho = poly_eval(r, x);
    let (qf, _) = poly_div_linear(&sub_constant(f, &y), x);
    let (qr, _) = poly_div_linear(&sub_constant(r, &rho), x);
    let gamma = kzg_commit(&qf, &qr, pp)?;
    Ok((y, KzgOpening { rho, gamma: gamma.0 }))
}

fn sub_constant(f: &[Scalar], c: &Scalar) -> Vec<Scalar> {
    if f.is_empty() {
        return vec![-*c];
    }
    let mut out = f.to_vec();
    out[0] -= c;
    out
}

/// Pairing check e(gamma, g2^tau g2^{-x}) == e(com g^{-y} h^{-rho}, g2).
pub fn kzg_verify(
    com: &Commitment,
    x: &Scalar,
    y: &Scalar,
    opening: &KzgOpening,
    pp: &PublicParams,
) -> bool {
    let lhs_g2 = pp.g2_tau - pp.g2 * x;
    let rhs_g1 = com.0 - pp.g() * y - pp.h() * opening.rho;
    pairing_eq(&opening.gamma, &lhs_g2, &rhs_g1, &pp.g2())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use rand_core::RngCore;

    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    fn rng() -> ChaCha20Rng {
        ChaCha20Rng::seed_from_u64(0xc011117)
    }

    fn rand_scalar(rng: &mut dyn RngCore) -> Scalar {
        <Scalar as Field>::random(rng)
    }

    fn rand_poly(rng: &mut dyn RngCore, len: usize) -> Vec<Scalar> {
        (0..len).map(|_| rand_scalar(rng)).collect()
    }

    #[test]
    fn setup_is_deterministic_and_consistent() {
        let pp1 = PublicParams::setup(16, b"seed-a", false);
        let pp2 = PublicParams::setup(16, b"seed-a", false);
        assert_eq!(pp1.to_bytes(), pp2.to_bytes());
        let pp3 = PublicParams::setup(16, b"seed-b", false);
        assert_ne!(pp1.to_bytes(), pp3.to_bytes());
        // Consistency: e(g^{tau^j}, g2^tau) == e(g^{tau^{j+1}}, g2).
        for j in 0..16 {
            assert!(pairing_eq(
                &pp1.g_powers[j],
                &pp1.g2_tau(),
                &pp1.g_powers[j + 1],
                &pp1.g2()
            ));
        }
    }

    // Trapdoor oracle: recompute every power directly from tau.
    #[test]
    fn powers_match_trapdoor_oracle() {
        let pp = PublicParams::setup(12, b"trapdoor", true);
        let td = pp.trapdoor().unwrap();
        for j in 0..=12usize {
            let tj = td.tau.pow_u64(j as u64);
            assert_eq!(pp.g_powers[j], g1_generator() * tj);
            assert_eq!(pp.h_powers[j], g1_generator() * (td.upsilon * tj));
        }
        assert_eq!(pp.g2_tau(), g2_generator() * td.tau);
    }

    #[test]
    fn pedersen_zero_is_identity() {
        let pp = PublicParams::setup(4, b"ped", false);
        let z = <Scalar as Field>::zero();
        assert_eq!(pedersen_commit(&z, &z, &pp), Commitment::identity());
    }

    #[test]
    fn pedersen_homomorphism() {
        let pp = PublicParams::setup(4, b"ped2", false);
        let mut rng = rng();
        for _ in 0..20 {
            let (a, r) = (rand_scalar(&mut rng), rand_scalar(&mut rng));
            let (b, s) = (rand_scalar(&mut rng), rand_scalar(&mut rng));
            let lhs = pedersen_commit(&a, &r, &pp).combine(&pedersen_commit(&b, &s, &pp));
            assert_eq!(lhs, pedersen_commit(&(a + b), &(r + s), &pp));
        }
    }

    #[test]
    fn pedersen_matches_trapdoor_oracle() {
        let pp = PublicParams::setup(4, b"ped3", true);
        let mut rng = rng();
        let (x, r) = (rand_scalar(&mut rng), rand_scalar(&mut rng));
        let td = pp.trapdoor().unwrap();
        let oracle = g1_generator() * (x + td.upsilon * r);
        assert_eq!(pedersen_commit(&x, &r, &pp).0, oracle);
    }

    #[test]
    fn kzg_zero_commit_and_homomorphism() {
        let pp = PublicParams::setup(10, b"kzg", false);
        let mut rng = rng();
        assert_eq!(kzg_commit(&[], &[], &pp).unwrap(), Commitment::identity());
        let f1 = rand_poly(&mut rng, 8);
        let r1 = rand_poly(&mut rng, 8);
        let f2 = rand_poly(&mut rng, 5);
        let r2 = rand_poly(&mut rng, 8);
        let lhs = kzg_commit(&f1, &r1, &pp)
            .unwrap()
            .combine(&kzg_commit(&f2, &r2, &pp).unwrap());
        let fsum = crate::poly::poly_add(&f1, &f2);
        let rsum = crate::poly::poly_add(&r1, &r2);
        assert_eq!(lhs, kzg_commit(&fsum, &rsum, &pp).unwrap());
    }

    #[test]
    fn kzg_matches_trapdoor_oracle() {
        let pp = PublicParams::setup(10, b"kzg2", true);
        let mut rng = rng();
        let f = rand_poly(&mut rng, 9);
        let r = rand_poly(&mut rng, 9);
        let td = pp.trapdoor().unwrap();
        let oracle =
            g1_generator() * (poly_eval(&f, &td.tau) + td.upsilon * poly_eval(&r, &td.tau));
        assert_eq!(kzg_commit(&f, &r, &pp).unwrap().0, oracle);
    }

    #[test]
    fn degree_overflow_rejected() {
        let pp = PublicParams::setup(4, b"kzg3", false);
        let f = vec![<Scalar as Field>::one(); 6];
        assert_eq!(kzg_commit(&f, &[], &pp).unwrap_err(), CommitError::DegreeOverflow);
    }

    #[test]
    fn open_verify_roundtrip() {
        let pp = PublicParams::setup(16, b"open", false);
        let mut rng = rng();
        for _ in 0..100 {
            let f = rand_poly(&mut rng, 12);
            let r = rand_poly(&mut rng, 12);
            let com = kzg_commit(&f, &r, &pp).unwrap();
            let x = rand_scalar(&mut rng);
            let (y, opening) = kzg_open(&f, &r, &x, &pp).unwrap();
            assert_eq!(y, poly_eval(&f, &x));
            assert!(kzg_verify(&com, &x, &y, &opening, &pp));
        }
    }

    #[test]
    fn constant_polynomial_opening() {
        let pp = PublicParams::setup(8, b"open-const", false);
        let mut rng = rng();
        let c = rand_scalar(&mut rng);
        let r = rand_poly(&mut rng, 3);
        let com = kzg_commit(&[c], &r, &pp).unwrap();
        let x = rand_scalar(&mut rng);
        let (y, opening) = kzg_open(&[c], &r, &x, &pp).unwrap();
        assert_eq!(y, c);
        assert!(kzg_verify(&com, &x, &y, &opening, &pp));
        // With constant randomness too, the quotient witness is trivial.
        let com2 = kzg_commit(&[c], &[r[0]], &pp).unwrap();
        let (y2, opening2) = kzg_open(&[c], &[r[0]], &x, &pp).unwrap();
        assert_eq!(opening2.gamma, crate::group::g1_identity());
        assert!(kzg_verify(&com2, &x, &y2, &opening2, &pp));
    }

    // Quotient against schoolbook long division.
    #[test]
    fn quotient_matches_long_division_oracle() {
        let pp = PublicParams::setup(12, b"quot", true);
        let mut rng = rng();
        let f = rand_poly(&mut rng, 10);
        let x = rand_scalar(&mut rng);
        let y = poly_eval(&f, &x);
        let (q, rem) = poly_div_linear(&sub_constant(&f, &y), &x);
        assert_eq!(rem, <Scalar as Field>::zero());
        // Long-division oracle, highest coefficient first.
        let mut num: Vec<Scalar> = sub_constant(&f, &y);
        let mut oracle = vec![<Scalar as Field>::zero(); q.len()];
        for i in (1..num.len()).rev() {
            let c = num[i];
            oracle[i - 1] = c;
            num[i] = <Scalar as Field>::zero();
            num[i - 1] += c * x;
        }
        assert_eq!(q, oracle);
    }

    #[test]
    fn tampered_openings_rejected() {
        let pp = PublicParams::setup(12, b"tamper", false);
        let mut rng = rng();
        for _ in 0..100 {
            let f = rand_poly(&mut rng, 8);
            let r = rand_poly(&mut rng, 8);
            let com = kzg_commit(&f, &r, &pp).unwrap();
            let x = rand_scalar(&mut rng);
            let (y, opening) = kzg_open(&f, &r, &x, &pp).unwrap();

            let one = <Scalar as Field>::one();
            assert!(!kzg_verify(&com, &x, &(y + one), &opening, &pp));
            let bad_rho = KzgOpening { rho: opening.rho + one, gamma: opening.gamma };
            assert!(!kzg_verify(&com, &x, &y, &bad_rho, &pp));
            let bad_gamma = KzgOpening {
                rho: opening.rho,
                gamma: g1_generator() * rand_scalar(&mut rng),
            };
            assert!(!kzg_verify(&com, &x, &y, &bad_gamma, &pp));
            assert!(!kzg_verify(&com, &(x + one), &y, &opening, &pp));
            let bad_com = Commitment(com.0 + g1_generator());
            assert!(!kzg_verify(&bad_com, &x, &y, &opening, &pp));
        }
    }

    // Hiding is structural here: distinct randomness gives distinct points.
    #[test]
    fn hiding_no_collisions() {
        let pp = PublicParams::setup(4, b"hiding", false);
        let mut rng = rng();
        let f = rand_poly(&mut rng, 3);
        let mut seen = std::collections::HashSet::new();
        for _ in 0..10_000 {
            let r = rand_poly(&mut rng, 3);
            let com = kzg_commit(&f, &r, &pp).unwrap();
            assert!(seen.insert(com.to_bytes()), "commitment collision");
        }
    }

    #[test]
    fn serialization_roundtrip() {
        let pp = PublicParams::setup(8, b"serde", false);
        let bytes = pp.to_bytes();
        let back = PublicParams::from_bytes(&bytes).unwrap();
        assert_eq!(back.to_bytes(), bytes);
        assert_eq!(back.fingerprint(), pp.fingerprint());
        assert!(PublicParams::from_bytes(&bytes[..bytes.len() - 1]).is_err());
        let mut corrupt = bytes.clone();
        corrupt[0] = b'X';
        assert!(PublicParams::from_bytes(&corrupt).is_err());
    }

    #[test]
    fn vanishing_pow2_elements() {
        let pp = PublicParams::setup(16, b"vanish", true);
        let td = pp.trapdoor().unwrap();
        for j in 0..=4u32 {
            let zh = pp.g2_vanishing_pow2(j).unwrap();
            let expected = g2_generator()
                * (td.tau.pow_u64(1u64 << j) - <Scalar as Field>::one());
            assert_eq!(zh, expected);
        }
        assert!(pp.g2_vanishing_pow2(5).is_none());
    }
}
