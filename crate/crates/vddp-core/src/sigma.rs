//! Interactive sigma protocols over commitments: Pedersen opening, product
//! relation, bit-validity OR, Pedersen/KZG-constant equality, and EvSc (the
//! evaluation of a public polynomial at a committed point). Each protocol is
//! public-coin with challenges from the full scalar field, has a verifier
//! that replays a transcript, and has an honest-verifier zero-knowledge
//! simulator.

use alloc::vec;
use alloc::vec::Vec;

use rand_core::RngCore;

use crate::commit::{kzg_commit, kzg_open, kzg_verify, Commitment, KzgOpening, PublicParams};
use crate::field::{Field, Scalar};
use crate::poly::{poly_div_linear, poly_eval, poly_scale, poly_sub};
use crate::transcript::{
    draw_challenge, read_point, read_scalar, ChallengeMode, Coins, Replay, Role, Transcript,
    TranscriptError,
};

/// Verification failure reasons.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SigmaError {
    /// A protocol check failed.
    Reject(&'static str),
    /// The transcript could not be parsed or replayed.
    Transcript(TranscriptError),
}

impl From<TranscriptError> for SigmaError {
    fn from(e: TranscriptError) -> Self {
        SigmaError::Transcript(e)
    }
}

impl core::fmt::Display for SigmaError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            SigmaError::Reject(what) => write!(f, "rejected: {what}"),
            SigmaError::Transcript(e) => write!(f, "transcript: {e}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for SigmaError {}

fn scalars_msg(scalars: &[Scalar]) -> Vec<u8> {
    let mut out = Vec::with_capacity(scalars.len() * 32);
    for s in scalars {
        out.extend_from_slice(&s.to_bytes_le());
    }
    out
}

fn parse_scalars(bytes: &[u8], n: usize) -> Result<Vec<Scalar>, SigmaError> {
    if bytes.len() != 32 * n {
        return Err(TranscriptError::Malformed.into());
    }
    let mut out = Vec::with_capacity(n);
    for chunk in bytes.chunks(32) {
        out.push(read_scalar(chunk)?);
    }
    Ok(out)
}

fn points_msg(points: &[Commitment]) -> Vec<u8> {
    let mut out = Vec::with_capacity(points.len() * 48);
    for p in points {
        out.extend_from_slice(&p.to_bytes());
    }
    out
}

fn parse_points(bytes: &[u8], n: usize) -> Result<Vec<Commitment>, SigmaError> {
    if bytes.len() != 48 * n {
        return Err(TranscriptError::Malformed.into());
    }
    let mut out = Vec::with_capacity(n);
    for chunk in bytes.chunks(48) {
        out.push(read_point(chunk)?);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Pedersen opening proof
// ---------------------------------------------------------------------------

/// Statement: knowledge of (x, r) with com = g^x h^r.
#[derive(Debug, Clone, Copy)]
pub struct OpeningStatement {
    pub com: Commitment,
}

#[derive(Debug, Clone, Copy)]
pub struct OpeningWitness {
    pub x: Scalar,
    pub r: Scalar,
}

pub fn opening_prove(
    stmt: &OpeningStatement,
    wit: &OpeningWitness,
    role: Role,
    pp: &PublicParams,
    t: &mut Transcript,
    coins: &mut dyn Coins,
    rng: &mut dyn RngCore,
) {
    let k1 = <Scalar as Field>::random(rng);
    let k2 = <Scalar as Field>::random(rng);
    let a = Commitment(pp.g() * k1 + pp.h() * k2);
    t.append(role, points_msg(&[a]));
    let c = draw_challenge(t, coins);
    let s1 = k1 + c * wit.x;
    let s2 = k2 + c * wit.r;
    t.append(role, scalars_msg(&[s1, s2]));
}

pub fn opening_verify(
    stmt: &OpeningStatement,
    role: Role,
    pp: &PublicParams,
    replay: &mut Replay<'_>,
) -> Result<(), SigmaError> {
    let a = parse_points(replay.next_message(role)?, 1)?[0];
    let c = replay.next_challenge()?;
    let s = parse_scalars(replay.next_message(role)?, 2)?;
    if pp.g() * s[0] + pp.h() * s[1] != a.0 + stmt.com.0 * c {
        return Err(SigmaError::Reject("opening"));
    }
    Ok(())
}

/// HVZK simulator for the opening proof.
pub fn opening_simulate(
    stmt: &OpeningStatement,
    role: Role,
    pp: &PublicParams,
    t: &mut Transcript,
    rng: &mut dyn RngCore,
) {
    let c = <Scalar as Field>::random(rng);
    let s1 = <Scalar as Field>::random(rng);
    let s2 = <Scalar as Field>::random(rng);
    let a = Commitment(pp.g() * s1 + pp.h() * s2 - stmt.com.0 * c);
    t.append(role, points_msg(&[a]));
    t.append_scalar(Role::Verifier, &c);
    t.append(role, scalars_msg(&[s1, s2]));
}

/// Two-transcript extractor: recovers (x, r) from accepting transcripts that
/// share the first move but have distinct challenges.
pub fn opening_extract(t1: &Transcript, t2: &Transcript) -> Option<(Scalar, Scalar)> {
    let parse = |t: &Transcript| -> Option<(Vec<u8>, Scalar, Vec<Scalar>)> {
        let e = t.entries();
        if e.len() != 3 {
            return None;
        }
        let c = read_scalar(&e[1].1).ok()?;
        let s = parse_scalars(&e[2].1, 2).ok()?;
        Some((e[0].1.clone(), c, s))
    };
    let (a1, c1, s1) = parse(t1)?;
    let (a2, c2, s2) = parse(t2)?;
    if a1 != a2 || c1 == c2 {
        return None;
    }
    let dinv = Field::invert(&(c1 - c2))?;
    Some(((s1[0] - s2[0]) * dinv, (s1[1] - s2[1]) * dinv))
}

// ---------------------------------------------------------------------------
// Product proof: y = z * x under Pedersen commitments
// ---------------------------------------------------------------------------

/// Statement: committed values satisfy y = z * x.
///
/// The prover shows knowledge of (x, r_x) opening com_x and of x opening
/// com_y over the bases (com_z, h) with randomness r_y - x r_z, with one
/// shared challenge binding the two x-responses.
#[derive(Debug, Clone, Copy)]
pub struct ProdStatement {
    pub com_y: Commitment,
    pub com_z: Commitment,
    pub com_x: Commitment,
}

#[derive(Debug, Clone, Copy)]
pub struct ProdWitness {
    pub y: Scalar,
    pub r_y: Scalar,
    pub z: Scalar,
    pub r_z: Scalar,
    pub x: Scalar,
    pub r_x: Scalar,
}

pub fn prod_prove(
    stmt: &ProdStatement,
    wit: &ProdWitness,
    role: Role,
    pp: &PublicParams,
    t: &mut Transcript,
    coins: &mut dyn Coins,
    rng: &mut dyn RngCore,
) {
    let r_link = wit.r_y - wit.x * wit.r_z;
    let k = <Scalar as Field>::random(rng);
    let k1 = <Scalar as Field>::random(rng);
    let k3 = <Scalar as Field>::random(rng);
    let a1 = Commitment(pp.g() * k + pp.h() * k1);
    let a2 = Commitment(stmt.com_z.0 * k + pp.h() * k3);
    t.append(role, points_msg(&[a1, a2]));
    let c = draw_challenge(t, coins);
    let s = k + c * wit.x;
    let s1 = k1 + c * wit.r_x;
    let s3 = k3 + c * r_link;
    t.append(role, scalars_msg(&[s, s1, s3]));
}

pub fn prod_verify(
    stmt: &ProdStatement,
    role: Role,
    pp: &PublicParams,
    replay: &mut Replay<'_>,
) -> Result<(), SigmaError> {
    let a = parse_points(replay.next_message(role)?, 2)?;
    let c = replay.next_challenge()?;
    let s = parse_scalars(replay.next_message(role)?, 3)?;
    if pp.g() * s[0] + pp.h() * s[1] != a[0].0 + stmt.com_x.0 * c {
        return Err(SigmaError::Reject("prod: x-opening"));
    }
    if stmt.com_z.0 * s[0] + pp.h() * s[2] != a[1].0 + stmt.com_y.0 * c {
        return Err(SigmaError::Reject("prod: linkage"));
    }
    Ok(())
}

pub fn prod_simulate(
    stmt: &ProdStatement,
    role: Role,
    pp: &PublicParams,
    t: &mut Transcript,
    rng: &mut dyn RngCore,
) {
    let c = <Scalar as Field>::random(rng);
    let s = <Scalar as Field>::random(rng);
    let s1 = <Scalar as Field>::random(rng);
    let s3 = <Scalar as Field>::random(rng);
    let a1 = Commitment(pp.g() * s + pp.h() * s1 - stmt.com_x.0 * c);
    let a2 = Commitment(stmt.com_z.0 * s + pp.h() * s3 - stmt.com_y.0 * c);
    t.append(role, points_msg(&[a1, a2]));
    t.append_scalar(Role::Verifier, &c);
    t.append(role, scalars_msg(&[s, s1, s3]));
}

/// Forked-transcript extractor: returns (x, r_x, r_link).
pub fn prod_extract(t1: &Transcript, t2: &Transcript) -> Option<(Scalar, Scalar, Scalar)> {
    let parse = |t: &Transcript| -> Option<(Vec<u8>, Scalar, Vec<Scalar>)> {
        let e = t.entries();
        if e.len() != 3 {
            return None;
        }
        Some((e[0].1.clone(), read_scalar(&e[1].1).ok()?, parse_scalars(&e[2].1, 3).ok()?))
    };
    let (a1, c1, s1) = parse(t1)?;
    let (a2, c2, s2) = parse(t2)?;
    if a1 != a2 || c1 == c2 {
        return None;
    }
    let dinv = Field::invert(&(c1 - c2))?;
    Some((
        (s1[0] - s2[0]) * dinv,
        (s1[1] - s2[1]) * dinv,
        (s1[2] - s2[2]) * dinv,
    ))
}

// ---------------------------------------------------------------------------
// OR proof: committed bit is 0 or 1
// ---------------------------------------------------------------------------

/// Statement: com = g^b h^r with b in {0, 1}.
#[derive(Debug, Clone, Copy)]
pub struct OrStatement {
    pub com: Commitment,
}

#[derive(Debug, Clone, Copy)]
pub struct OrWitness {
    pub bit: bool,
    pub r: Scalar,
}

// Branch targets: T_0 = com, T_1 = com * g^{-1}; the honest branch satisfies
// T_b = h^r.
fn or_targets(stmt: &OrStatement, pp: &PublicParams) -> [Commitment; 2] {
    [stmt.com, Commitment(stmt.com.0 - pp.g())]
}

pub fn or_prove(
    stmt: &OrStatement,
    wit: &OrWitness,
    role: Role,
    pp: &PublicParams,
    t: &mut Transcript,
    coins: &mut dyn Coins,
    rng: &mut dyn RngCore,
) {
    let targets = or_targets(stmt, pp);
    let b = wit.bit as usize;
    let other = 1 - b;
    // Simulate the false branch, run the real branch honestly.
    let c_other = <Scalar as Field>::random(rng);
    let s_other = <Scalar as Field>::random(rng);
    let a_other = Commitment(pp.h() * s_other - targets[other].0 * c_other);
    let k = <Scalar as Field>::random(rng);
    let a_real = Commitment(pp.h() * k);
    let mut a = [Commitment::identity(); 2];
    a[b] = a_real;
    a[other] = a_other;
    t.append(role, points_msg(&a));
    let c = draw_challenge(t, coins);
    let c_real = c - c_other;
    let s_real = k + c_real * wit.r;
    let mut cs = [<Scalar as Field>::zero(); 2];
    let mut ss = [<Scalar as Field>::zero(); 2];
    cs[b] = c_real;
    cs[other] = c_other;
    ss[b] = s_real;
    ss[other] = s_other;
    t.append(role, scalars_msg(&[cs[0], ss[0], cs[1], ss[1]]));
}

pub fn or_verify(
    stmt: &OrStatement,
    role: Role,
    pp: &PublicParams,
    replay: &mut Replay<'_>,
) -> Result<(), SigmaError> {
    let targets = or_targets(stmt, pp);
    let a = parse_points(replay.next_message(role)?, 2)?;
    let c = replay.next_challenge()?;
    let s = parse_scalars(replay.next_message(role)?, 4)?;
    let (c0, s0, c1, s1) = (s[0], s[1], s[2], s[3]);
    if c0 + c1 != c {
        return Err(SigmaError::Reject("or: challenge split"));
    }
    if pp.h() * s0 != a[0].0 + targets[0].0 * c0 {
        return Err(SigmaError::Reject("or: branch 0"));
    }
    if pp.h() * s1 != a[1].0 + targets[1].0 * c1 {
        return Err(SigmaError::Reject("or: branch 1"));
    }
    Ok(())
}

pub fn or_simulate(
    stmt: &OrStatement,
    role: Role,
    pp: &PublicParams,
    t: &mut Transcript,
    rng: &mut dyn RngCore,
) {
    let targets = or_targets(stmt, pp);
    let c = <Scalar as Field>::random(rng);
    let c0 = <Scalar as Field>::random(rng);
    let c1 = c - c0;
    let s0 = <Scalar as Field>::random(rng);
    let s1 = <Scalar as Field>::random(rng);
    let a0 = Commitment(pp.h() * s0 - targets[0].0 * c0);
    let a1 = Commitment(pp.h() * s1 - targets[1].0 * c1);
    t.append(role, points_msg(&[a0, a1]));
    t.append_scalar(Role::Verifier, &c);
    t.append(role, scalars_msg(&[c0, s0, c1, s1]));
}

// ---------------------------------------------------------------------------
// Equality proof: Pedersen commitment and KZG constant commitment bind the
// same scalar
// ---------------------------------------------------------------------------

/// Statement: com_ped = g^v h^r and com_kzg = g^v h^{R(tau)} for the same v,
/// where R has `kzg_r_len` coefficients known to the prover.
#[derive(Debug, Clone, Copy)]
pub struct EqStatement {
    pub com_ped: Commitment,
    pub com_kzg: Commitment,
    pub kzg_r_len: usize,
}

#[derive(Debug, Clone)]
pub struct EqWitness {
    pub v: Scalar,
    pub r_ped: Scalar,
    pub r_kzg: Vec<Scalar>,
}

pub fn eq_prove(
    stmt: &EqStatement,
    wit: &EqWitness,
    role: Role,
    pp: &PublicParams,
    t: &mut Transcript,
    coins: &mut dyn Coins,
    rng: &mut dyn RngCore,
) {
    debug_assert_eq!(wit.r_kzg.len(), stmt.kzg_r_len);
    let kv = <Scalar as Field>::random(rng);
    let kr = <Scalar as Field>::random(rng);
    let k_big: Vec<Scalar> = (0..stmt.kzg_r_len)
        .map(|_| <Scalar as Field>::random(rng))
        .collect();
    let a1 = Commitment(pp.g() * kv + pp.h() * kr);
    let mut a2 = pp.g() * kv;
    for (j, kj) in k_big.iter().enumerate() {
        a2 += pp.h_powers()[j] * kj;
    }
    t.append(role, points_msg(&[a1, Commitment(a2)]));
    let c = draw_challenge(t, coins);
    let mut resp = vec![kv + c * wit.v, kr + c * wit.r_ped];
    for (kj, rj) in k_big.iter().zip(&wit.r_kzg) {
        resp.push(*kj + c * rj);
    }
    t.append(role, scalars_msg(&resp));
}

pub fn eq_verify(
    stmt: &EqStatement,
    role: Role,
    pp: &PublicParams,
    replay: &mut Replay<'_>,
) -> Result<(), SigmaError> {
    let a = parse_points(replay.next_message(role)?, 2)?;
    let c = replay.next_challenge()?;
    let s = parse_scalars(replay.next_message(role)?, 2 + stmt.kzg_r_len)?;
    if pp.g() * s[0] + pp.h() * s[1] != a[0].0 + stmt.com_ped.0 * c {
        return Err(SigmaError::Reject("eq: pedersen side"));
    }
    let mut lhs = pp.g() * s[0];
    for (j, sj) in s[2..].iter().enumerate() {
        lhs += pp.h_powers()[j] * sj;
    }
    if lhs != a[1].0 + stmt.com_kzg.0 * c {
        return Err(SigmaError::Reject("eq: kzg side"));
    }
    Ok(())
}

pub fn eq_simulate(
    stmt: &EqStatement,
    role: Role,
    pp: &PublicParams,
    t: &mut Transcript,
    rng: &mut dyn RngCore,
) {
    let c = <Scalar as Field>::random(rng);
    let s: Vec<Scalar> = (0..2 + stmt.kzg_r_len)
        .map(|_| <Scalar as Field>::random(rng))
        .collect();
    let a1 = Commitment(pp.g() * s[0] + pp.h() * s[1] - stmt.com_ped.0 * c);
    let mut a2 = pp.g() * s[0] - stmt.com_kzg.0 * c;
    for (j, sj) in s[2..].iter().enumerate() {
        a2 += pp.h_powers()[j] * sj;
    }
    t.append(role, points_msg(&[a1, Commitment(a2)]));
    t.append_scalar(Role::Verifier, &c);
    t.append(role, scalars_msg(&s));
}

// ---------------------------------------------------------------------------
// EvSc: evaluation of a public polynomial at a committed secret point
// ---------------------------------------------------------------------------

/// Statement: y = F(x) for public F, where x and y are bound by Pedersen
/// commitments and F by com_f = g^{F(tau)}.
#[derive(Debug, Clone)]
pub struct EvScStatement {
    pub com_y: Commitment,
    pub com_x: Commitment,
    pub f: Vec<Scalar>,
    pub com_f: Commitment,
}

#[derive(Debug, Clone, Copy)]
pub struct EvScWitness {
    pub y: Scalar,
    pub r_y: Scalar,
    pub x: Scalar,
    pub r_x: Scalar,
}

// Single-byte marker asking the verifier for a fresh challenge when u
// collides with the committed point.
const RETRY_MARKER: u8 = 0x52;
const MAX_RETRIES: usize = 8;

/// Quotient F'(X) = (y - F(X)) / (x - X); for dishonest y the division
/// leaves a remainder which is silently dropped (the proof then fails).
fn evsc_quotient(f: &[Scalar], y: &Scalar, x: &Scalar) -> Vec<Scalar> {
    let mut num: Vec<Scalar> = f.iter().map(|c| -*c).collect();
    if num.is_empty() {
        num.push(*y);
    } else {
        num[0] += y;
    }
    // (y - F) = q (X - x) + rem  =>  (y - F)/(x - X) = -q.
    let (q, _rem) = poly_div_linear(&num, x);
    q.iter().map(|c| -*c).collect()
}

pub fn evsc_prove(
    stmt: &EvScStatement,
    wit: &EvScWitness,
    role: Role,
    pp: &PublicParams,
    t: &mut Transcript,
    coins: &mut dyn Coins,
    rng: &mut dyn RngCore,
) -> Result<(), SigmaError> {
    let f_quot = evsc_quotient(&stmt.f, &wit.y, &wit.x);
    let r_quot: Vec<Scalar> = (0..3).map(|_| <Scalar as Field>::random(rng)).collect();
    let com_quot = kzg_commit(&f_quot, &r_quot, pp).map_err(|_| SigmaError::Reject("degree"))?;
    t.append(role, points_msg(&[com_quot]));

    let mut u = draw_challenge(t, coins);
    let mut retries = 0;
    while u == wit.x {
        if retries == MAX_RETRIES {
            return Err(SigmaError::Reject("challenge collision"));
        }
        t.append(role, vec![RETRY_MARKER]);
        u = draw_challenge(t, coins);
        retries += 1;
    }

    let z = poly_eval(&stmt.f, &u);
    let z_quot = poly_eval(&f_quot, &u);
    let r_z_quot = <Scalar as Field>::random(rng);
    let com_z_quot = Commitment(pp.g() * z_quot + pp.h() * r_z_quot);
    let mut z_msg = scalars_msg(&[z]);
    z_msg.extend_from_slice(&com_z_quot.to_bytes());
    t.append(role, z_msg);

    // (y - z) = (x - u) * z_quot
    let prod_stmt = ProdStatement {
        com_y: Commitment(stmt.com_y.0 - pp.g() * z),
        com_z: Commitment(stmt.com_x.0 - pp.g() * u),
        com_x: com_z_quot,
    };
    let prod_wit = ProdWitness {
        y: wit.y - z,
        r_y: wit.r_y,
        z: wit.x - u,
        r_z: wit.r_x,
        x: z_quot,
        r_x: r_z_quot,
    };
    prod_prove(&prod_stmt, &prod_wit, role, pp, t, coins, rng);

    // Public F opened at u.
    let (zf, opening_f) = kzg_open(&stmt.f, &[], &u, pp).map_err(|_| SigmaError::Reject("degree"))?;
    debug_assert_eq!(zf, z);
    let mut msg = scalars_msg(&[opening_f.rho]);
    msg.extend_from_slice(&Commitment(opening_f.gamma).to_bytes());
    t.append(role, msg);

    // (F' - z') opened to 0 at u against com_quot / com_z_quot.
    let shifted = poly_sub(&f_quot, &[z_quot]);
    let shifted_r = poly_sub(&r_quot, &[r_z_quot]);
    let (zero_val, opening_q) =
        kzg_open(&shifted, &shifted_r, &u, pp).map_err(|_| SigmaError::Reject("degree"))?;
    debug_assert!(bool::from(ff::Field::is_zero(&zero_val)));
    let mut msg = scalars_msg(&[opening_q.rho]);
    msg.extend_from_slice(&Commitment(opening_q.gamma).to_bytes());
    t.append(role, msg);
    Ok(())
}

pub fn evsc_verify(
    stmt: &EvScStatement,
    role: Role,
    pp: &PublicParams,
    replay: &mut Replay<'_>,
) -> Result<(), SigmaError> {
    let com_quot = parse_points(replay.next_message(role)?, 1)?[0];
    let mut u = replay.next_challenge()?;
    let mut retries = 0;
    loop {
        // A retry marker withdraws the challenge; anything else is the
        // prover's (z, com_z') message.
        let msg = replay.next_message(role)?;
        if msg == [RETRY_MARKER] {
            if retries == MAX_RETRIES {
                return Err(SigmaError::Reject("challenge collision"));
            }
            u = replay.next_challenge()?;
            retries += 1;
            continue;
        }
        if msg.len() != 32 + 48 {
            return Err(SigmaError::Transcript(TranscriptError::Malformed));
        }
        let z = read_scalar(&msg[..32])?;
        let com_z_quot = read_point(&msg[32..])?;

        let prod_stmt = ProdStatement {
            com_y: Commitment(stmt.com_y.0 - pp.g() * z),
            com_z: Commitment(stmt.com_x.0 - pp.g() * u),
            com_x: com_z_quot,
        };
        prod_verify(&prod_stmt, role, pp, replay)?;

        let msg = replay.next_message(role)?;
        if msg.len() != 32 + 48 {
            return Err(SigmaError::Transcript(TranscriptError::Malformed));
        }
        let opening_f = KzgOpening {
            rho: read_scalar(&msg[..32])?,
            gamma: read_point(&msg[32..])?.0,
        };
        if !kzg_verify(&stmt.com_f, &u, &z, &opening_f, pp) {
            return Err(SigmaError::Reject("evsc: public evaluation"));
        }

        let msg = replay.next_message(role)?;
        if msg.len() != 32 + 48 {
            return Err(SigmaError::Transcript(TranscriptError::Malformed));
        }
        let opening_q = KzgOpening {
            rho: read_scalar(&msg[..32])?,
            gamma: read_point(&msg[32..])?.0,
        };
        let target = Commitment(com_quot.0 - com_z_quot.0);
        if !kzg_verify(&target, &u, &<Scalar as Field>::zero(), &opening_q, pp) {
            return Err(SigmaError::Reject("evsc: quotient evaluation"));
        }
        return Ok(());
    }
}

/// Simulator for EvSc: uniform com_z', uniform u, simulated product proof,
/// simulated zero-opening, honest opening of the public polynomial.
pub fn evsc_simulate(
    stmt: &EvScStatement,
    role: Role,
    pp: &PublicParams,
    t: &mut Transcript,
    rng: &mut dyn RngCore,
) -> Result<(), SigmaError> {
    let u = <Scalar as Field>::random(rng);
    let a = <Scalar as Field>::random(rng);
    let b = <Scalar as Field>::random(rng);
    let com_z_quot = Commitment(pp.g() * a + pp.h() * b);

    // Simulated zero-opening at u: gamma' = g^a2 h^b2 with matching
    // commitment c' = h^rho' (g^tau g^-u)^a2 (h^tau h^-u)^b2.
    let rho = <Scalar as Field>::random(rng);
    let a2 = <Scalar as Field>::random(rng);
    let b2 = <Scalar as Field>::random(rng);
    let gamma = pp.g() * a2 + pp.h() * b2;
    let c_prime = pp.h() * rho
        + (pp.g_power(1) - pp.g() * u) * a2
        + (pp.h_powers()[1] - pp.h() * u) * b2;
    let com_quot = Commitment(c_prime + com_z_quot.0);

    t.append(role, points_msg(&[com_quot]));
    t.append_scalar(Role::Verifier, &u);

    let z = poly_eval(&stmt.f, &u);
    let mut z_msg = scalars_msg(&[z]);
    z_msg.extend_from_slice(&com_z_quot.to_bytes());
    t.append(role, z_msg);

    let prod_stmt = ProdStatement {
        com_y: Commitment(stmt.com_y.0 - pp.g() * z),
        com_z: Commitment(stmt.com_x.0 - pp.g() * u),
        com_x: com_z_quot,
    };
    prod_simulate(&prod_stmt, role, pp, t, rng);

    let (_, opening_f) = kzg_open(&stmt.f, &[], &u, pp).map_err(|_| SigmaError::Reject("degree"))?;
    let mut msg = scalars_msg(&[opening_f.rho]);
    msg.extend_from_slice(&Commitment(opening_f.gamma).to_bytes());
    t.append(role, msg);

    let mut msg = scalars_msg(&[rho]);
    msg.extend_from_slice(&Commitment(gamma).to_bytes());
    t.append(role, msg);
    Ok(())
}

// ---------------------------------------------------------------------------
// Dispatch wrappers
// ---------------------------------------------------------------------------

/// Public inputs of any sigma protocol, for simulator dispatch.
#[derive(Debug, Clone)]
pub enum Statement {
    Opening(OpeningStatement),
    Prod(ProdStatement),
    Or(OrStatement),
    Eq(EqStatement),
    EvSc(EvScStatement),
}

/// Produces a simulated transcript for the given statement; the simulator
/// never sees a witness.
pub fn simulate(
    stmt: &Statement,
    role: Role,
    pp: &PublicParams,
    rng: &mut dyn RngCore,
) -> Result<Transcript, SigmaError> {
    let mut t = Transcript::new();
    match stmt {
        Statement::Opening(s) => opening_simulate(s, role, pp, &mut t, rng),
        Statement::Prod(s) => prod_simulate(s, role, pp, &mut t, rng),
        Statement::Or(s) => or_simulate(s, role, pp, &mut t, rng),
        Statement::Eq(s) => eq_simulate(s, role, pp, &mut t, rng),
        Statement::EvSc(s) => evsc_simulate(s, role, pp, &mut t, rng)?,
    }
    Ok(t)
}

/// Verifies a complete transcript for the given statement.
pub fn verify(
    stmt: &Statement,
    role: Role,
    pp: &PublicParams,
    transcript: &Transcript,
    mode: ChallengeMode,
) -> Result<(), SigmaError> {
    let mut replay = Replay::new(transcript, mode);
    match stmt {
        Statement::Opening(s) => opening_verify(s, role, pp, &mut replay)?,
        Statement::Prod(s) => prod_verify(s, role, pp, &mut replay)?,
        Statement::Or(s) => or_verify(s, role, pp, &mut replay)?,
        Statement::Eq(s) => eq_verify(s, role, pp, &mut replay)?,
        Statement::EvSc(s) => evsc_verify(s, role, pp, &mut replay)?,
    }
    if !replay.finished() {
        return Err(SigmaError::Transcript(TranscriptError::Malformed));
    }
    Ok(())
}
