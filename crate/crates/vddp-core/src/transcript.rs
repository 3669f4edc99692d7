//! Protocol transcripts and challenge sources.
//!
//! Every protocol here is public-coin: provers append messages, the
//! verifier's only moves are uniformly random challenges. A transcript
//! records both, so verification is a pure function of the transcript
//! bytes. Challenges come from a [`Coins`] source, either true randomness
//! (the interactive mode the protocols are designed for) or a hash of the
//! transcript prefix (used to serialize reproducible transcripts).

use alloc::string::String;
use alloc::vec::Vec;

use rand_core::RngCore;
use sha2::{Digest, Sha256};

use crate::field::{Field, Scalar};

/// Sender of a transcript entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Client = 0,
    Server = 1,
    Verifier = 2,
}

impl Role {
    fn from_u8(v: u8) -> Option<Role> {
        match v {
            0 => Some(Role::Client),
            1 => Some(Role::Server),
            2 => Some(Role::Verifier),
            _ => None,
        }
    }
}

/// Ordered list of (role, message) pairs. Verifier entries are challenges.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Transcript {
    entries: Vec<(Role, Vec<u8>)>,
}

/// Transcript decoding / replay errors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TranscriptError {
    /// Ran out of entries or role mismatch while replaying.
    Malformed,
    /// A recomputed Fiat-Shamir challenge disagrees with the recorded one.
    ChallengeMismatch,
}

impl core::fmt::Display for TranscriptError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            TranscriptError::Malformed => write!(f, "malformed transcript"),
            TranscriptError::ChallengeMismatch => write!(f, "challenge mismatch"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for TranscriptError {}

impl Transcript {
    pub fn new() -> Self {
        Transcript::default()
    }

    pub fn append(&mut self, role: Role, bytes: Vec<u8>) {
        self.entries.push((role, bytes));
    }

    pub fn append_scalar(&mut self, role: Role, s: &Scalar) {
        self.append(role, s.to_bytes_le());
    }

    pub fn append_point(&mut self, role: Role, c: &crate::commit::Commitment) {
        self.append(role, c.to_bytes().to_vec());
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(Role, Vec<u8>)] {
        &self.entries
    }

    /// Total payload bytes, used for communication metrics.
    pub fn message_bytes(&self) -> usize {
        self.entries.iter().map(|(_, b)| b.len()).sum()
    }

    /// Binary format: per entry a 1-byte role tag and a 4-byte LE length
    /// prefix, then the raw message.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        for (role, bytes) in &self.entries {
            out.push(*role as u8);
            out.extend_from_slice(&(bytes.len() as u32).to_le_bytes());
            out.extend_from_slice(bytes);
        }
        out
    }

    pub fn from_bytes(mut data: &[u8]) -> Result<Self, TranscriptError> {
        let mut t = Transcript::new();
        while !data.is_empty() {
            if data.len() < 5 {
                return Err(TranscriptError::Malformed);
            }
            let role = Role::from_u8(data[0]).ok_or(TranscriptError::Malformed)?;
            let len = u32::from_le_bytes(data[1..5].try_into().unwrap()) as usize;
            if data.len() < 5 + len {
                return Err(TranscriptError::Malformed);
            }
            t.append(role, data[5..5 + len].to_vec());
            data = &data[5 + len..];
        }
        Ok(t)
    }

    /// Hex-JSON dump for debugging.
    pub fn to_hex_json(&self) -> String {
        use core::fmt::Write;
        let mut out = String::from("[");
        for (i, (role, bytes)) in self.entries.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let tag = match role {
                Role::Client => "client",
                Role::Server => "server",
                Role::Verifier => "verifier",
            };
            let _ = write!(out, "{{\"role\":\"{tag}\",\"hex\":\"");
            for b in bytes {
                let _ = write!(out, "{b:02x}");
            }
            out.push_str("\"}");
        }
        out.push(']');
        out
    }
}

/// Challenge mode: who produces verifier randomness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChallengeMode {
    /// Challenges are true verifier randomness recorded in the transcript.
    Interactive,
    /// Challenges are a hash of the transcript prefix.
    FiatShamir,
}

/// Source of verifier challenges on the prover side.
pub trait Coins {
    fn mode(&self) -> ChallengeMode;
    /// Draws the next challenge given everything appended so far.
    fn draw(&mut self, transcript: &Transcript) -> Scalar;
}

/// Interactive coins from an RNG (the verifier's randomness in tests and
/// in-process sessions).
pub struct RandomCoins<'a> {
    rng: &'a mut dyn RngCore,
}

impl<'a> RandomCoins<'a> {
    pub fn new(rng: &'a mut dyn RngCore) -> Self {
        RandomCoins { rng }
    }
}

impl Coins for RandomCoins<'_> {
    fn mode(&self) -> ChallengeMode {
        ChallengeMode::Interactive
    }

    fn draw(&mut self, _transcript: &Transcript) -> Scalar {
        <Scalar as Field>::random(self.rng)
    }
}

/// Deterministic coins hashing the transcript prefix.
#[derive(Debug, Default, Clone)]
pub struct FiatShamirCoins {
    counter: u64,
}

impl FiatShamirCoins {
    pub fn new() -> Self {
        FiatShamirCoins::default()
    }
}

pub(crate) fn fiat_shamir_challenge(transcript: &Transcript, counter: u64) -> Scalar {
    let mut wide = [0u8; 64];
    for half in 0..2u8 {
        let mut hasher = Sha256::new();
        hasher.update(b"vddp-fs");
        hasher.update([half]);
        hasher.update(counter.to_le_bytes());
        hasher.update(transcript.to_bytes());
        wide[half as usize * 32..(half as usize + 1) * 32].copy_from_slice(&hasher.finalize());
    }
    Scalar::from_bytes_wide(&wide)
}

impl Coins for FiatShamirCoins {
    fn mode(&self) -> ChallengeMode {
        ChallengeMode::FiatShamir
    }

    fn draw(&mut self, transcript: &Transcript) -> Scalar {
        let c = fiat_shamir_challenge(transcript, self.counter);
        self.counter += 1;
        c
    }
}

/// Draws a challenge and records it in the transcript as a verifier entry.
pub fn draw_challenge(t: &mut Transcript, coins: &mut dyn Coins) -> Scalar {
    let c = coins.draw(t);
    t.append_scalar(Role::Verifier, &c);
    c
}

/// Cursor over a transcript used by verifiers to replay a protocol.
pub struct Replay<'a> {
    transcript: &'a Transcript,
    pos: usize,
    mode: ChallengeMode,
    fs_counter: u64,
}

impl<'a> Replay<'a> {
    pub fn new(transcript: &'a Transcript, mode: ChallengeMode) -> Self {
        Replay {
            transcript,
            pos: 0,
            mode,
            fs_counter: 0,
        }
    }

    /// Next prover message, checking the sender role.
    pub fn next_message(&mut self, role: Role) -> Result<&'a [u8], TranscriptError> {
        let (r, bytes) = self
            .transcript
            .entries
            .get(self.pos)
            .ok_or(TranscriptError::Malformed)?;
        if *r != role {
            return Err(TranscriptError::Malformed);
        }
        self.pos += 1;
        Ok(bytes)
    }

    /// Next challenge. In Fiat-Shamir mode it is recomputed from the prefix
    /// and must match the recorded value.
    pub fn next_challenge(&mut self) -> Result<Scalar, TranscriptError> {
        let (r, bytes) = self
            .transcript
            .entries
            .get(self.pos)
            .ok_or(TranscriptError::Malformed)?;
        if *r != Role::Verifier || bytes.len() != 32 {
            return Err(TranscriptError::Malformed);
        }
        let recorded = read_scalar(bytes)?;
        if self.mode == ChallengeMode::FiatShamir {
            let prefix = Transcript {
                entries: self.transcript.entries[..self.pos].to_vec(),
            };
            let expected = fiat_shamir_challenge(&prefix, self.fs_counter);
            self.fs_counter += 1;
            if expected != recorded {
                return Err(TranscriptError::ChallengeMismatch);
            }
        }
        self.pos += 1;
        Ok(recorded)
    }

    pub fn finished(&self) -> bool {
        self.pos == self.transcript.entries.len()
    }

    pub fn position(&self) -> usize {
        self.pos
    }
}

/// Decodes a canonical 32-byte little-endian scalar.
pub fn read_scalar(bytes: &[u8]) -> Result<Scalar, TranscriptError> {
    let raw: [u8; 32] = bytes.try_into().map_err(|_| TranscriptError::Malformed)?;
    Option::<Scalar>::from(Scalar::from_bytes(&raw)).ok_or(TranscriptError::Malformed)
}

/// Decodes a compressed commitment point.
pub fn read_point(bytes: &[u8]) -> Result<crate::commit::Commitment, TranscriptError> {
    let raw: [u8; 48] = bytes.try_into().map_err(|_| TranscriptError::Malformed)?;
    crate::commit::Commitment::from_bytes(&raw).ok_or(TranscriptError::Malformed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    #[test]
    fn binary_roundtrip() {
        let mut t = Transcript::new();
        t.append(Role::Client, alloc::vec![1, 2, 3]);
        t.append(Role::Verifier, alloc::vec![]);
        t.append(Role::Server, alloc::vec![0xff; 70000]);
        let bytes = t.to_bytes();
        assert_eq!(Transcript::from_bytes(&bytes).unwrap(), t);
        assert!(Transcript::from_bytes(&bytes[..3]).is_err());
    }

    #[test]
    fn fiat_shamir_is_prefix_deterministic() {
        let mut t = Transcript::new();
        t.append(Role::Client, alloc::vec![9, 9]);
        let mut coins = FiatShamirCoins::new();
        let c1 = draw_challenge(&mut t, &mut coins);
        t.append(Role::Client, alloc::vec![1]);
        let c2 = draw_challenge(&mut t, &mut coins);
        assert_ne!(c1, c2);

        // Replay re-derives the identical challenges.
        let mut replay = Replay::new(&t, ChallengeMode::FiatShamir);
        assert_eq!(replay.next_message(Role::Client).unwrap(), &[9, 9]);
        assert_eq!(replay.next_challenge().unwrap(), c1);
        assert_eq!(replay.next_message(Role::Client).unwrap(), &[1]);
        assert_eq!(replay.next_challenge().unwrap(), c2);
        assert!(replay.finished());
    }

    #[test]
    fn fiat_shamir_detects_tampering() {
        let mut t = Transcript::new();
        t.append(Role::Client, alloc::vec![7]);
        let mut coins = FiatShamirCoins::new();
        let _ = draw_challenge(&mut t, &mut coins);
        let mut tampered = t.clone();
        tampered.entries[0].1 = alloc::vec![8];
        let mut replay = Replay::new(&tampered, ChallengeMode::FiatShamir);
        let _ = replay.next_message(Role::Client).unwrap();
        assert_eq!(replay.next_challenge().unwrap_err(), TranscriptError::ChallengeMismatch);
    }

    #[test]
    fn interactive_replay_accepts_recorded_challenges() {
        let mut rng = ChaCha20Rng::seed_from_u64(5);
        let mut t = Transcript::new();
        let mut coins = RandomCoins::new(&mut rng);
        let c = draw_challenge(&mut t, &mut coins);
        let mut replay = Replay::new(&t, ChallengeMode::Interactive);
        assert_eq!(replay.next_challenge().unwrap(), c);
    }

    #[test]
    fn hex_json_dump() {
        let mut t = Transcript::new();
        t.append(Role::Client, alloc::vec![0xab, 0x01]);
        assert_eq!(t.to_hex_json(), "[{\"role\":\"client\",\"hex\":\"ab01\"}]");
    }
}
