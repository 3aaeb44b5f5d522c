//! Textbook RSA: key generation in five steps, raw exponentiation, and two
//! classic attacks on small or unlucky parameters.
//!
//! There is no padding here and nothing is constant time.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use sha2::{Digest as _, Sha256};

use crate::{Error, Result};

pub const DEFAULT_E: u32 = 65537;
pub const MILLER_RABIN_ROUNDS: usize = 40;
/// Largest modulus [`brute_force_private_key`] will attempt to factor.
pub const BRUTE_FORCE_LIMIT: u64 = 1_000_000;

/// Left-to-right square-and-multiply.
pub fn mod_pow(base: &BigUint, exp: &BigUint, modulus: &BigUint) -> BigUint {
    assert!(!modulus.is_zero(), "zero modulus");
    if modulus.is_one() {
        return BigUint::zero();
    }
    let base = base % modulus;
    let mut acc = BigUint::one();
    for i in (0..exp.bits()).rev() {
        acc = &acc * &acc % modulus;
        if exp.bit(i) {
            acc = &acc * &base % modulus;
        }
    }
    acc
}

/// Inverse of `a` modulo `m` by the extended Euclidean algorithm.
pub fn mod_inverse(a: &BigUint, m: &BigUint) -> Option<BigUint> {
    let m_int = BigInt::from_biguint(Sign::Plus, m.clone());
    let (mut old_r, mut r) = (BigInt::from_biguint(Sign::Plus, a % m), m_int.clone());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    while !r.is_zero() {
        let q = &old_r / &r;
        let next_r = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, next_r);
        let next_s = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, next_s);
    }
    if !old_r.is_one() {
        return None;
    }
    old_s.mod_floor(&m_int).to_biguint()
}

/// Uniform integer with at most `bits` bits.
pub fn random_bits<R: Rng + ?Sized>(bits: u64, rng: &mut R) -> BigUint {
    let mut bytes = vec![0u8; bits.div_ceil(8) as usize];
    rng.fill_bytes(&mut bytes);
    let excess = bytes.len() as u64 * 8 - bits;
    if let Some(first) = bytes.first_mut() {
        *first &= 0xff >> excess;
    }
    BigUint::from_bytes_be(&bytes)
}

/// Uniform integer in `[0, bound)` by rejection.
pub fn random_below<R: Rng + ?Sized>(bound: &BigUint, rng: &mut R) -> BigUint {
    assert!(!bound.is_zero());
    loop {
        let candidate = random_bits(bound.bits(), rng);
        if &candidate < bound {
            return candidate;
        }
    }
}

const SMALL_PRIMES: [u32; 54] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101,
    103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193, 197, 199,
    211, 223, 227, 229, 233, 239, 241, 251,
];

/// Miller-Rabin with `rounds` random bases, after trial division by primes below 256.
pub fn is_probable_prime<R: Rng + ?Sized>(n: &BigUint, rounds: usize, rng: &mut R) -> bool {
    let two = BigUint::from(2u32);
    if n < &two {
        return false;
    }
    for &p in &SMALL_PRIMES {
        let p = BigUint::from(p);
        if n == &p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let n_minus_one = n - 1u32;
    let s = n_minus_one.trailing_zeros().unwrap_or(0);
    let d = &n_minus_one >> s;
    let span = n - 3u32;
    'witness: for _ in 0..rounds {
        let a = random_below(&span, rng) + &two;
        let mut x = mod_pow(&a, &d, n);
        if x.is_one() || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = &x * &x % n;
            if x == n_minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A probable prime of exactly `bits` bits.
pub fn generate_prime<R: Rng + ?Sized>(bits: u64, rng: &mut R) -> BigUint {
    assert!(bits >= 8, "prime size must be at least 8 bits");
    loop {
        let mut candidate = random_bits(bits, rng);
        candidate.set_bit(bits - 1, true);
        candidate.set_bit(0, true);
        if is_probable_prime(&candidate, MILLER_RABIN_ROUNDS, rng) {
            return candidate;
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RsaPublicKey {
    pub e: BigUint,
    pub n: BigUint,
}

#[derive(Clone, PartialEq, Eq)]
pub struct RsaPrivateKey {
    pub d: BigUint,
    pub n: BigUint,
}

impl fmt::Debug for RsaPublicKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RsaPublicKey {{ e: {}, n: {} bits }}", self.e, self.n.bits())
    }
}

impl fmt::Debug for RsaPrivateKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RsaPrivateKey {{ n: {} bits, .. }}", self.n.bits())
    }
}

/// All the values produced by key generation. Keep this secret; hand out
/// [`RsaKeyPair::public`].
#[derive(Clone, PartialEq, Eq)]
pub struct RsaKeyPair {
    pub p: BigUint,
    pub q: BigUint,
    pub n: BigUint,
    pub phi_n: BigUint,
    pub e: BigUint,
    pub d: BigUint,
}

impl fmt::Debug for RsaKeyPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RsaKeyPair")
            .field("bits", &self.n.bits())
            .field("e", &self.e)
            .finish_non_exhaustive()
    }
}

/// 65537 when it is coprime to and below φ(n), otherwise the smallest odd
/// exponent from 3 upwards that is coprime.
pub fn choose_public_exponent(phi_n: &BigUint) -> Option<BigUint> {
    let preferred = BigUint::from(DEFAULT_E);
    if &preferred < phi_n && phi_n.gcd(&preferred).is_one() {
        return Some(preferred);
    }
    let mut e = BigUint::from(3u32);
    while &e < phi_n {
        if phi_n.gcd(&e).is_one() {
            return Some(e);
        }
        e += 2u32;
    }
    None
}

impl RsaKeyPair {
    /// Run the five key-generation steps on chosen primes. With `e = None`
    /// the exponent comes from [`choose_public_exponent`].
    pub fn from_primes(p: BigUint, q: BigUint, e: Option<BigUint>) -> Result<Self> {
        if p == q {
            return Err(Error::InvalidKey("p and q must differ".into()));
        }
        if p < BigUint::from(2u32) || q < BigUint::from(2u32) {
            return Err(Error::InvalidKey("primes must be at least 2".into()));
        }
        let n = &p * &q;
        let phi_n = (&p - 1u32) * (&q - 1u32);
        let e = match e {
            Some(e) => e,
            None => choose_public_exponent(&phi_n)
                .ok_or_else(|| Error::InvalidKey("no public exponent available".into()))?,
        };
        if e.is_zero() || !phi_n.gcd(&e).is_one() {
            return Err(Error::InvalidKey(format!("gcd(phi(n), {e}) != 1")));
        }
        let d = mod_inverse(&e, &phi_n).expect("coprime exponent is invertible");
        Ok(RsaKeyPair { p, q, n, phi_n, e, d })
    }

    /// Generate a keypair whose modulus has exactly `bits` bits.
    pub fn generate<R: Rng + ?Sized>(bits: u64, rng: &mut R) -> Self {
        assert!(bits >= 16, "modulus must be at least 16 bits");
        let p_bits = bits / 2;
        let q_bits = bits - p_bits;
        loop {
            let p = generate_prime(p_bits, rng);
            let q = generate_prime(q_bits, rng);
            if p == q || (&p * &q).bits() != bits {
                continue;
            }
            if let Ok(pair) = RsaKeyPair::from_primes(p, q, None) {
                return pair;
            }
        }
    }

    pub fn public(&self) -> RsaPublicKey {
        RsaPublicKey {
            e: self.e.clone(),
            n: self.n.clone(),
        }
    }

    pub fn private(&self) -> RsaPrivateKey {
        RsaPrivateKey {
            d: self.d.clone(),
            n: self.n.clone(),
        }
    }

    /// Checks every relation between the stored values.
    pub fn is_consistent(&self) -> bool {
        self.p != self.q
            && self.n == &self.p * &self.q
            && self.phi_n == (&self.p - 1u32) * (&self.q - 1u32)
            && self.phi_n.gcd(&self.e).is_one()
            && (&self.e * &self.d % &self.phi_n).is_one()
    }

    pub fn to_file_string(&self) -> String {
        format!(
            "d=0x{:x}\nn=0x{:x}\ne=0x{:x}\np=0x{:x}\nq=0x{:x}\n",
            self.d, self.n, self.e, self.p, self.q
        )
    }

    /// Parse a private key file carrying `p=`, `q=` and `e=` as well as `d=`, `n=`.
    pub fn from_file_str(text: &str) -> Result<Self> {
        let fields = parse_fields(text)?;
        let get = |k: &str| {
            field(&fields, k).ok_or_else(|| Error::Parse(format!("keypair file lacks {k}=")))
        };
        let pair = RsaKeyPair::from_primes(get("p")?, get("q")?, Some(get("e")?))?;
        if pair.n != get("n")? || pair.d != get("d")? {
            return Err(Error::InvalidKey("stored n or d disagree with p, q, e".into()));
        }
        Ok(pair)
    }
}

impl RsaPublicKey {
    /// Modulus length in bytes.
    pub fn modulus_len(&self) -> usize {
        self.n.bits().div_ceil(8) as usize
    }

    pub fn key_id(&self) -> [u8; 16] {
        key_id(&self.n)
    }

    pub fn to_file_string(&self) -> String {
        format!("e=0x{:x}\nn=0x{:x}\n", self.e, self.n)
    }

    pub fn from_file_str(text: &str) -> Result<Self> {
        let fields = parse_fields(text)?;
        match (field(&fields, "e"), field(&fields, "n")) {
            (Some(e), Some(n)) if n > BigUint::one() => Ok(RsaPublicKey { e, n }),
            (Some(_), Some(_)) => Err(Error::InvalidKey("modulus must exceed 1".into())),
            _ => Err(Error::Parse("public key file needs e= and n=".into())),
        }
    }
}

impl RsaPrivateKey {
    pub fn key_id(&self) -> [u8; 16] {
        key_id(&self.n)
    }

    pub fn to_file_string(&self) -> String {
        format!("d=0x{:x}\nn=0x{:x}\n", self.d, self.n)
    }

    pub fn from_file_str(text: &str) -> Result<Self> {
        let fields = parse_fields(text)?;
        match (field(&fields, "d"), field(&fields, "n")) {
            (Some(d), Some(n)) if n > BigUint::one() => Ok(RsaPrivateKey { d, n }),
            (Some(_), Some(_)) => Err(Error::InvalidKey("modulus must exceed 1".into())),
            _ => Err(Error::Parse("private key file needs d= and n=".into())),
        }
    }
}

/// Identifies a keypair by its modulus: the first 16 bytes of SHA-256 over
/// the big-endian bytes of `n`. Public and private halves share the id.
pub fn key_id(n: &BigUint) -> [u8; 16] {
    Sha256::digest(n.to_bytes_be())[..16].try_into().unwrap()
}

/// Decimal, or hexadecimal with a `0x` prefix.
pub fn parse_integer(s: &str) -> Result<BigUint> {
    let s = s.trim();
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => BigUint::parse_bytes(hex.as_bytes(), 16),
        None => BigUint::parse_bytes(s.as_bytes(), 10),
    };
    parsed.ok_or_else(|| Error::Parse(format!("not an integer: `{s}`")))
}

fn parse_fields(text: &str) -> Result<Vec<(String, BigUint)>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|line| {
            let (label, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected label=value, got `{line}`")))?;
            Ok((label.trim().to_ascii_lowercase(), parse_integer(value)?))
        })
        .collect()
}

fn field(fields: &[(String, BigUint)], label: &str) -> Option<BigUint> {
    fields.iter().find(|(k, _)| k == label).map(|(_, v)| v.clone())
}

/// `c = m^e mod n`.
pub fn encrypt(m: &BigUint, key: &RsaPublicKey) -> Result<BigUint> {
    if m >= &key.n {
        return Err(Error::MessageRange);
    }
    Ok(mod_pow(m, &key.e, &key.n))
}

/// `m = c^d mod n`.
pub fn decrypt(c: &BigUint, key: &RsaPrivateKey) -> Result<BigUint> {
    if c >= &key.n {
        return Err(Error::MessageRange);
    }
    Ok(mod_pow(c, &key.d, &key.n))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleFound {
    pub plaintext: BigUint,
    /// Encryptions needed to get back to the ciphertext.
    pub iterations: u64,
}

/// Re-encrypt `c` until it comes back to itself; the value just before is
/// the plaintext. `None` if the cycle is longer than `max_iterations`.
pub fn cycle_attack(c: &BigUint, key: &RsaPublicKey, max_iterations: u64) -> Result<Option<CycleFound>> {
    let mut prev = c.clone();
    for k in 1..=max_iterations {
        let next = encrypt(&prev, key)?;
        if &next == c {
            return Ok(Some(CycleFound {
                plaintext: prev,
                iterations: k,
            }));
        }
        prev = next;
    }
    Ok(None)
}

/// Recover the private exponent by factoring `n` with trial division.
/// Only attempted for `n <= 10^6`.
pub fn brute_force_private_key(key: &RsaPublicKey) -> Result<RsaPrivateKey> {
    let n = key
        .n
        .to_u64()
        .filter(|&n| n <= BRUTE_FORCE_LIMIT)
        .ok_or_else(|| Error::Scale(key.n.to_string()))?;
    let p = (2..=n).find(|p| n % p == 0).filter(|&p| p < n).ok_or_else(|| {
        Error::InvalidKey(format!("{n} has no nontrivial factor"))
    })?;
    let q = n / p;
    if p == q {
        return Err(Error::InvalidKey(format!("{n} is a square of a prime")));
    }
    let phi = BigUint::from((p - 1) * (q - 1));
    let d = mod_inverse(&key.e, &phi)
        .ok_or_else(|| Error::InvalidKey("exponent not invertible mod phi(n)".into()))?;
    Ok(RsaPrivateKey { d, n: key.n.clone() })
}
