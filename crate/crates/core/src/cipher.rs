//! Shared block-cipher plumbing: suites, tagged keys, PKCS#7 padding and
//! the ECB/CBC chaining modes every cipher in the crate plugs into.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::aes::Aes;
use crate::blowfish::Blowfish;
use crate::des::{Des, TdesKeyBundle, TripleDes};
use crate::{Error, Result};

/// A single-block keyed permutation.
pub trait BlockCipher {
    fn block_size(&self) -> usize;
    fn encrypt_block(&self, block: &mut [u8]);
    fn decrypt_block(&self, block: &mut [u8]);
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlockCipherSuite {
    Des,
    Tdes,
    Aes128,
    Aes192,
    Aes256,
    Blowfish,
}

impl BlockCipherSuite {
    pub const ALL: [BlockCipherSuite; 6] = [
        BlockCipherSuite::Des,
        BlockCipherSuite::Tdes,
        BlockCipherSuite::Aes128,
        BlockCipherSuite::Aes192,
        BlockCipherSuite::Aes256,
        BlockCipherSuite::Blowfish,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BlockCipherSuite::Des => "DES",
            BlockCipherSuite::Tdes => "TDES",
            BlockCipherSuite::Aes128 => "AES128",
            BlockCipherSuite::Aes192 => "AES192",
            BlockCipherSuite::Aes256 => "AES256",
            BlockCipherSuite::Blowfish => "BLOWFISH",
        }
    }

    pub fn block_size(self) -> usize {
        match self {
            BlockCipherSuite::Des | BlockCipherSuite::Tdes | BlockCipherSuite::Blowfish => 8,
            _ => 16,
        }
    }

    /// Effective key strength in bits. For Blowfish this is the lower end
    /// of the accepted range; see [`BlockCipherSuite::key_bits_range`].
    pub fn key_bits(self) -> usize {
        *self.key_bits_range().start()
    }

    pub fn key_bits_range(self) -> std::ops::RangeInclusive<usize> {
        match self {
            BlockCipherSuite::Des => 56..=56,
            BlockCipherSuite::Tdes => 168..=168,
            BlockCipherSuite::Aes128 => 128..=128,
            BlockCipherSuite::Aes192 => 192..=192,
            BlockCipherSuite::Aes256 => 256..=256,
            BlockCipherSuite::Blowfish => 32..=448,
        }
    }

    /// Raw key bytes accepted. DES and 3DES keys carry one parity bit per byte.
    pub fn key_len_range(self) -> std::ops::RangeInclusive<usize> {
        match self {
            BlockCipherSuite::Des => 8..=8,
            BlockCipherSuite::Tdes => 24..=24,
            BlockCipherSuite::Aes128 => 16..=16,
            BlockCipherSuite::Aes192 => 24..=24,
            BlockCipherSuite::Aes256 => 32..=32,
            BlockCipherSuite::Blowfish => 4..=56,
        }
    }

    /// Length of the keys produced by [`BlockKey::generate`].
    pub fn session_key_len(self) -> usize {
        match self {
            BlockCipherSuite::Blowfish => 16,
            other => *other.key_len_range().start(),
        }
    }

    /// Suite identifier used in wire frames.
    pub fn wire_id(self) -> u8 {
        match self {
            BlockCipherSuite::Des => 0x01,
            BlockCipherSuite::Tdes => 0x02,
            BlockCipherSuite::Aes128 => 0x03,
            BlockCipherSuite::Aes192 => 0x04,
            BlockCipherSuite::Aes256 => 0x05,
            BlockCipherSuite::Blowfish => 0x06,
        }
    }

    pub fn from_wire_id(id: u8) -> Option<Self> {
        Self::ALL.into_iter().find(|s| s.wire_id() == id)
    }
}

impl fmt::Display for BlockCipherSuite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BlockCipherSuite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let upper = s.trim().to_ascii_uppercase();
        Self::ALL
            .into_iter()
            .find(|suite| suite.name() == upper)
            .ok_or_else(|| Error::Parse(format!("unknown cipher suite `{s}`")))
    }
}

/// Symmetric key material tagged with the suite it belongs to.
#[derive(Clone, PartialEq, Eq)]
pub struct BlockKey {
    suite: BlockCipherSuite,
    bytes: Vec<u8>,
}

impl BlockKey {
    pub fn new(suite: BlockCipherSuite, bytes: &[u8]) -> Result<Self> {
        if !suite.key_len_range().contains(&bytes.len()) {
            return Err(Error::KeyLength {
                suite: suite.name(),
                got: bytes.len(),
            });
        }
        Ok(BlockKey {
            suite,
            bytes: bytes.to_vec(),
        })
    }

    pub fn generate<R: Rng + ?Sized>(suite: BlockCipherSuite, rng: &mut R) -> Self {
        let mut bytes = vec![0u8; suite.session_key_len()];
        rng.fill_bytes(&mut bytes);
        BlockKey { suite, bytes }
    }

    pub fn suite(&self) -> BlockCipherSuite {
        self.suite
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    /// One key-file line, e.g. `AES128:000102...`.
    pub fn to_line(&self) -> String {
        format!("{}:{}", self.suite.name(), hex::encode(&self.bytes))
    }

    pub fn from_line(line: &str) -> Result<Self> {
        let (suite, key_hex) = line
            .trim()
            .split_once(':')
            .ok_or_else(|| Error::Parse("key line must be SUITE:hex".into()))?;
        let suite: BlockCipherSuite = suite.parse()?;
        if key_hex.chars().any(|c| c.is_ascii_uppercase()) {
            return Err(Error::Parse("key hex must be lowercase".into()));
        }
        let bytes = hex::decode(key_hex).map_err(|e| Error::Parse(e.to_string()))?;
        BlockKey::new(suite, &bytes)
    }
}

impl fmt::Debug for BlockKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BlockKey")
            .field("suite", &self.suite)
            .field("len", &self.bytes.len())
            .finish_non_exhaustive()
    }
}

/// Parse a key file: one `SUITE:hex` key per line, blank lines skipped.
pub fn parse_key_file(text: &str) -> Result<Vec<BlockKey>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(BlockKey::from_line)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InitializationVector(Vec<u8>);

impl InitializationVector {
    pub fn new(bytes: &[u8]) -> Self {
        InitializationVector(bytes.to_vec())
    }

    pub fn zero(block_size: usize) -> Self {
        InitializationVector(vec![0; block_size])
    }

    pub fn random<R: Rng + ?Sized>(block_size: usize, rng: &mut R) -> Self {
        let mut iv = vec![0u8; block_size];
        rng.fill_bytes(&mut iv);
        InitializationVector(iv)
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Ecb,
    Cbc,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ecb" => Ok(Mode::Ecb),
            "cbc" => Ok(Mode::Cbc),
            _ => Err(Error::Parse(format!("unknown mode `{s}`"))),
        }
    }
}

/// Any of the crate's ciphers, keyed. Built from a [`BlockKey`], so the
/// cipher always matches the key's suite.
#[derive(Clone)]
pub enum Cipher {
    Des(Des),
    Tdes(Box<TripleDes>),
    Aes(Aes),
    Blowfish(Box<Blowfish>),
}

impl Cipher {
    pub fn new(key: &BlockKey) -> Self {
        let bytes = key.as_bytes();
        match key.suite() {
            BlockCipherSuite::Des => {
                Cipher::Des(Des::new(u64::from_be_bytes(bytes.try_into().unwrap())))
            }
            BlockCipherSuite::Tdes => {
                let k = |i: usize| u64::from_be_bytes(bytes[i * 8..i * 8 + 8].try_into().unwrap());
                Cipher::Tdes(Box::new(TripleDes::new(&TdesKeyBundle {
                    k1: k(0),
                    k2: k(1),
                    k3: k(2),
                })))
            }
            BlockCipherSuite::Aes128 | BlockCipherSuite::Aes192 | BlockCipherSuite::Aes256 => {
                Cipher::Aes(Aes::new(bytes).expect("length checked by BlockKey"))
            }
            BlockCipherSuite::Blowfish => Cipher::Blowfish(Box::new(
                Blowfish::new(bytes).expect("length checked by BlockKey"),
            )),
        }
    }

    fn inner(&self) -> &dyn BlockCipher {
        match self {
            Cipher::Des(c) => c,
            Cipher::Tdes(c) => c.as_ref(),
            Cipher::Aes(c) => c,
            Cipher::Blowfish(c) => c.as_ref(),
        }
    }
}

impl BlockCipher for Cipher {
    fn block_size(&self) -> usize {
        self.inner().block_size()
    }

    fn encrypt_block(&self, block: &mut [u8]) {
        self.inner().encrypt_block(block)
    }

    fn decrypt_block(&self, block: &mut [u8]) {
        self.inner().decrypt_block(block)
    }
}

/// PKCS#7 padding. Always adds between 1 and `block_size` bytes.
pub fn pad(data: &[u8], block_size: usize) -> Vec<u8> {
    assert!((1..=255).contains(&block_size), "block size must be in 1..=255");
    let count = block_size - data.len() % block_size;
    let mut out = Vec::with_capacity(data.len() + count);
    out.extend_from_slice(data);
    out.resize(data.len() + count, count as u8);
    out
}

pub fn unpad(data: &[u8], block_size: usize) -> Result<Vec<u8>> {
    if data.is_empty() || !data.len().is_multiple_of(block_size) {
        return Err(Error::Length {
            len: data.len(),
            block_size,
        });
    }
    let count = *data.last().unwrap() as usize;
    if count == 0 || count > block_size {
        return Err(Error::Padding);
    }
    let (body, tail) = data.split_at(data.len() - count);
    if tail.iter().any(|&b| b as usize != count) {
        return Err(Error::Padding);
    }
    Ok(body.to_vec())
}

fn check_lengths<C: BlockCipher + ?Sized>(
    cipher: &C,
    iv: &InitializationVector,
    mode: Mode,
    len: usize,
) -> Result<usize> {
    let bs = cipher.block_size();
    if !len.is_multiple_of(bs) {
        return Err(Error::Length { len, block_size: bs });
    }
    if mode == Mode::Cbc && iv.as_bytes().len() != bs {
        return Err(Error::Length {
            len: iv.as_bytes().len(),
            block_size: bs,
        });
    }
    Ok(bs)
}

/// Encrypt an already padded message. The IV is ignored in ECB mode.
pub fn mode_encrypt<C: BlockCipher + ?Sized>(
    cipher: &C,
    iv: &InitializationVector,
    mode: Mode,
    plaintext: &[u8],
) -> Result<Vec<u8>> {
    let bs = check_lengths(cipher, iv, mode, plaintext.len())?;
    let mut out = plaintext.to_vec();
    match mode {
        Mode::Ecb => out.chunks_exact_mut(bs).for_each(|b| cipher.encrypt_block(b)),
        Mode::Cbc => {
            let mut prev = iv.as_bytes().to_vec();
            for block in out.chunks_exact_mut(bs) {
                block.iter_mut().zip(&prev).for_each(|(b, p)| *b ^= p);
                cipher.encrypt_block(block);
                prev.copy_from_slice(block);
            }
        }
    }
    Ok(out)
}

pub fn mode_decrypt<C: BlockCipher + ?Sized>(
    cipher: &C,
    iv: &InitializationVector,
    mode: Mode,
    ciphertext: &[u8],
) -> Result<Vec<u8>> {
    let bs = check_lengths(cipher, iv, mode, ciphertext.len())?;
    let mut out = ciphertext.to_vec();
    match mode {
        Mode::Ecb => out.chunks_exact_mut(bs).for_each(|b| cipher.decrypt_block(b)),
        Mode::Cbc => {
            let mut prev = iv.as_bytes().to_vec();
            let mut saved = vec![0u8; bs];
            for block in out.chunks_exact_mut(bs) {
                saved.copy_from_slice(block);
                cipher.decrypt_block(block);
                block.iter_mut().zip(&prev).for_each(|(b, p)| *b ^= p);
                std::mem::swap(&mut prev, &mut saved);
            }
        }
    }
    Ok(out)
}

/// Pad then encrypt.
pub fn seal_bytes<C: BlockCipher + ?Sized>(
    cipher: &C,
    iv: &InitializationVector,
    mode: Mode,
    plaintext: &[u8],
) -> Result<Vec<u8>> {
    mode_encrypt(cipher, iv, mode, &pad(plaintext, cipher.block_size()))
}

/// Decrypt then strip padding.
pub fn open_bytes<C: BlockCipher + ?Sized>(
    cipher: &C,
    iv: &InitializationVector,
    mode: Mode,
    ciphertext: &[u8],
) -> Result<Vec<u8>> {
    unpad(&mode_decrypt(cipher, iv, mode, ciphertext)?, cipher.block_size())
}
