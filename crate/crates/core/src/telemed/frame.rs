//! Sealed envelopes and their wire encoding.
//!
//! Layout, integers big-endian:
//!
//! ```text
//! magic            4   4D 45 44 43
//! version          1   01
//! sender_id       16
//! nonce           16
//! suite_id         1   01 DES .. 06 BLOWFISH
//! wrapped_key_len  2   + wrapped_key
//! iv_len           1   + iv
//! ciphertext_len   4   + ciphertext
//! signature_len    2   + signature (big-endian integer)
//! ```
//!
//! Everything before `signature_len` is what gets hashed and signed.

use num_bigint::BigUint;

use crate::cipher::{BlockCipherSuite, InitializationVector};
use crate::digsig::Signature;
use crate::{Error, Result};

pub const MAGIC: [u8; 4] = [0x4d, 0x45, 0x44, 0x43];
pub const VERSION: u8 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SealedEnvelope {
    pub sender_id: [u8; 16],
    pub nonce: [u8; 16],
    pub suite: BlockCipherSuite,
    /// RSA-wrapped session key; present when a session starts or rotates.
    pub wrapped_key: Option<Vec<u8>>,
    pub iv: InitializationVector,
    pub ciphertext: Vec<u8>,
    /// `signer_key_id` always equals `sender_id` on the wire.
    pub signature: Signature,
}

impl SealedEnvelope {
    /// Header and ciphertext: the bytes the signature covers.
    pub fn signed_bytes(&self) -> Vec<u8> {
        let wrapped = self.wrapped_key.as_deref().unwrap_or_default();
        let iv = self.iv.as_bytes();
        let mut out = Vec::with_capacity(48 + wrapped.len() + iv.len() + self.ciphertext.len());
        out.extend_from_slice(&MAGIC);
        out.push(VERSION);
        out.extend_from_slice(&self.sender_id);
        out.extend_from_slice(&self.nonce);
        out.push(self.suite.wire_id());
        out.extend_from_slice(&(wrapped.len() as u16).to_be_bytes());
        out.extend_from_slice(wrapped);
        out.push(iv.len() as u8);
        out.extend_from_slice(iv);
        out.extend_from_slice(&(self.ciphertext.len() as u32).to_be_bytes());
        out.extend_from_slice(&self.ciphertext);
        out
    }
}

pub fn encode_frame(env: &SealedEnvelope) -> Vec<u8> {
    let mut out = env.signed_bytes();
    let sig = env.signature.value.to_bytes_be();
    out.extend_from_slice(&(sig.len() as u16).to_be_bytes());
    out.extend_from_slice(&sig);
    out
}

struct Cursor<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, n: usize, what: &str) -> Result<&'a [u8]> {
        let end = self
            .pos
            .checked_add(n)
            .filter(|&end| end <= self.buf.len())
            .ok_or_else(|| Error::Frame(format!("truncated in {what}")))?;
        let slice = &self.buf[self.pos..end];
        self.pos = end;
        Ok(slice)
    }

    fn array<const N: usize>(&mut self, what: &str) -> Result<[u8; N]> {
        Ok(self.take(N, what)?.try_into().unwrap())
    }
}

/// Parse one frame from the front of `bytes`, returning it and the number
/// of bytes consumed.
pub fn decode_frame_prefix(bytes: &[u8]) -> Result<(SealedEnvelope, usize)> {
    let mut cur = Cursor { buf: bytes, pos: 0 };
    if cur.array::<4>("magic")? != MAGIC {
        return Err(Error::Frame("bad magic".into()));
    }
    let [version] = cur.array::<1>("version")?;
    if version != VERSION {
        return Err(Error::Frame(format!("unsupported version {version}")));
    }
    let sender_id = cur.array::<16>("sender id")?;
    let nonce = cur.array::<16>("nonce")?;
    let [suite_id] = cur.array::<1>("suite")?;
    let suite = BlockCipherSuite::from_wire_id(suite_id)
        .ok_or_else(|| Error::Frame(format!("unknown suite id {suite_id:#04x}")))?;
    let wrapped_len = u16::from_be_bytes(cur.array("wrapped key length")?) as usize;
    let wrapped = cur.take(wrapped_len, "wrapped key")?;
    let [iv_len] = cur.array::<1>("iv length")?;
    if iv_len as usize != suite.block_size() {
        return Err(Error::Frame(format!("iv length {iv_len} does not match {suite}")));
    }
    let iv = cur.take(iv_len as usize, "iv")?;
    let ct_len = u32::from_be_bytes(cur.array("ciphertext length")?) as usize;
    if ct_len == 0 || !ct_len.is_multiple_of(suite.block_size()) {
        return Err(Error::Frame(format!("ciphertext length {ct_len} is not a positive block multiple")));
    }
    let ciphertext = cur.take(ct_len, "ciphertext")?;
    let sig_len = u16::from_be_bytes(cur.array("signature length")?) as usize;
    if sig_len == 0 {
        return Err(Error::Frame("empty signature".into()));
    }
    let sig = cur.take(sig_len, "signature")?;
    let env = SealedEnvelope {
        sender_id,
        nonce,
        suite,
        wrapped_key: (!wrapped.is_empty()).then(|| wrapped.to_vec()),
        iv: InitializationVector::new(iv),
        ciphertext: ciphertext.to_vec(),
        signature: Signature {
            value: BigUint::from_bytes_be(sig),
            signer_key_id: sender_id,
        },
    };
    Ok((env, cur.pos))
}

/// Parse exactly one frame; trailing bytes are an error.
pub fn decode_frame(bytes: &[u8]) -> Result<SealedEnvelope> {
    let (env, used) = decode_frame_prefix(bytes)?;
    if used != bytes.len() {
        return Err(Error::Frame(format!("{} trailing bytes", bytes.len() - used)));
    }
    Ok(env)
}

/// Split a concatenation of frames.
pub fn decode_frame_stream(mut bytes: &[u8]) -> Result<Vec<SealedEnvelope>> {
    let mut out = Vec::new();
    while !bytes.is_empty() {
        let (env, used) = decode_frame_prefix(bytes)?;
        out.push(env);
        bytes = &bytes[used..];
    }
    Ok(out)
}
