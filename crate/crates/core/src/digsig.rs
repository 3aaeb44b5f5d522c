//! Hash-then-sign over textbook RSA, Chaum-style blind signatures, and
//! signing-key rotation.
//!
//! A digest is mapped to an integer by reading it big-endian and reducing
//! it modulo `n`. Signing raises that integer to `d`; verification raises
//! the signature to `e` and compares.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use rand::Rng;
use sha2::{Digest as _, Sha256};

use crate::rsa::{self, mod_inverse, mod_pow, RsaKeyPair, RsaPrivateKey, RsaPublicKey};
use crate::{Error, Result};

/// A 32-byte SHA-256 digest.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Digest(pub [u8; 32]);

impl Digest {
    pub fn as_bytes(&self) -> &[u8; 32] {
        &self.0
    }

    /// Big-endian integer value, reduced modulo `n`.
    pub fn to_integer(&self, n: &BigUint) -> BigUint {
        BigUint::from_bytes_be(&self.0) % n
    }
}

impl fmt::Debug for Digest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Digest({})", hex::encode(self.0))
    }
}

impl fmt::Display for Digest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&hex::encode(self.0))
    }
}

pub fn hash(data: &[u8]) -> Digest {
    Digest(Sha256::digest(data).into())
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Signature {
    pub value: BigUint,
    pub signer_key_id: [u8; 16],
}

impl Signature {
    /// Two lines: the signature value in hex, then the signer key id in hex.
    pub fn to_file_string(&self) -> String {
        format!("{:x}\n{}\n", self.value, hex::encode(self.signer_key_id))
    }

    pub fn from_file_str(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let (Some(value), Some(id), None) = (lines.next(), lines.next(), lines.next()) else {
            return Err(Error::Parse("signature file needs exactly two lines".into()));
        };
        let value = BigUint::parse_bytes(value.as_bytes(), 16)
            .ok_or_else(|| Error::Parse("signature value is not hex".into()))?;
        let signer_key_id = hex::decode(id)
            .ok()
            .and_then(|b| b.try_into().ok())
            .ok_or_else(|| Error::Parse("signer key id must be 16 hex bytes".into()))?;
        Ok(Signature { value, signer_key_id })
    }
}

/// `s = H^d mod n`, with `H` the digest reduced modulo `n`.
pub fn sign(digest: &Digest, key: &RsaPrivateKey) -> Signature {
    Signature {
        value: mod_pow(&digest.to_integer(&key.n), &key.d, &key.n),
        signer_key_id: key.key_id(),
    }
}

pub fn verify(digest: &Digest, sig: &Signature, key: &RsaPublicKey) -> bool {
    sig.signer_key_id == key.key_id()
        && sig.value < key.n
        && mod_pow(&sig.value, &key.e, &key.n) == digest.to_integer(&key.n)
}

/// The requester's secret multiplier `r`, coprime to the signer's modulus.
#[derive(Clone, PartialEq, Eq)]
pub struct BlindingFactor {
    r: BigUint,
}

impl fmt::Debug for BlindingFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("BlindingFactor(..)")
    }
}

impl BlindingFactor {
    /// Accepts `1 <= r < n` with `gcd(r, n) = 1`; `r = 1` blinds nothing.
    pub fn new(r: BigUint, key: &RsaPublicKey) -> Result<Self> {
        if r.bits() == 0 || r >= key.n || !r.gcd(&key.n).is_one() {
            return Err(Error::Blinding);
        }
        Ok(BlindingFactor { r })
    }

    /// Uniform `r` in `(1, n)` coprime to `n`.
    pub fn random<R: Rng + ?Sized>(key: &RsaPublicKey, rng: &mut R) -> Self {
        loop {
            let r = rsa::random_below(&key.n, rng);
            if r > BigUint::one() && r.gcd(&key.n).is_one() {
                return BlindingFactor { r };
            }
        }
    }

    pub fn value(&self) -> &BigUint {
        &self.r
    }
}

/// `m * r^e mod n`. The signer sees only this value.
pub fn blind(m: &BigUint, r: &BlindingFactor, key: &RsaPublicKey) -> Result<BigUint> {
    if m >= &key.n {
        return Err(Error::MessageRange);
    }
    if r.r >= key.n || !r.r.gcd(&key.n).is_one() {
        return Err(Error::Blinding);
    }
    Ok(m * mod_pow(&r.r, &key.e, &key.n) % &key.n)
}

/// The signer's step: a raw private-key exponentiation of the blinded value.
pub fn sign_blinded(blinded: &BigUint, key: &RsaPrivateKey) -> Result<BigUint> {
    rsa::decrypt(blinded, key)
}

/// `s' * r^-1 mod n`, which equals the direct signature on `m`.
pub fn unblind(blind_sig: &BigUint, r: &BlindingFactor, key: &RsaPublicKey) -> Result<BigUint> {
    let r_inv = mod_inverse(&r.r, &key.n).ok_or(Error::Blinding)?;
    Ok(blind_sig * r_inv % &key.n)
}

/// A signing keypair plus the public halves of every key it replaced.
/// Rotation drops the old private key; old signatures stay checkable
/// through the archive.
#[derive(Debug, Clone)]
pub struct SigningKeyChain {
    current: RsaKeyPair,
    archive: Vec<RsaPublicKey>,
}

impl SigningKeyChain {
    pub fn new(current: RsaKeyPair) -> Self {
        SigningKeyChain {
            current,
            archive: Vec::new(),
        }
    }

    pub fn current(&self) -> &RsaKeyPair {
        &self.current
    }

    pub fn epoch(&self) -> usize {
        self.archive.len()
    }

    pub fn archived(&self) -> &[RsaPublicKey] {
        &self.archive
    }

    pub fn sign(&self, digest: &Digest) -> Signature {
        sign(digest, &self.current.private())
    }

    /// Verify against the current key or any archived one, chosen by key id.
    pub fn verify(&self, digest: &Digest, sig: &Signature) -> bool {
        std::iter::once(self.current.public())
            .chain(self.archive.iter().cloned())
            .find(|k| k.key_id() == sig.signer_key_id)
            .is_some_and(|k| verify(digest, sig, &k))
    }
}

/// Replace the signing key with a fresh `bits`-bit keypair.
pub fn rotate_signing_key<R: Rng + ?Sized>(chain: SigningKeyChain, bits: u64, rng: &mut R) -> SigningKeyChain {
    let SigningKeyChain { current, mut archive } = chain;
    archive.push(current.public());
    let fresh = loop {
        let candidate = RsaKeyPair::generate(bits, rng);
        if candidate.n != current.n {
            break candidate;
        }
    };
    drop(current);
    SigningKeyChain { current: fresh, archive }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    fn toy() -> RsaKeyPair {
        RsaKeyPair::from_primes(big(3), big(11), Some(big(3))).unwrap()
    }

    /// A digest whose integer value is `v`.
    fn digest_of(v: u8) -> Digest {
        let mut d = [0u8; 32];
        d[31] = v;
        Digest(d)
    }

    #[test]
    fn sha256_empty() {
        assert_eq!(
            hash(b"").to_string(),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
        assert_eq!(hash(b"abc"), hash(b"abc"));
    }

    #[test]
    fn avalanche() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut data = vec![0u8; 1024];
        rng.fill(&mut data[..]);
        let base = hash(&data);
        for _ in 0..64 {
            let bit = rng.gen_range(0..8192);
            let mut flipped = data.clone();
            flipped[bit / 8] ^= 1 << (bit % 8);
            assert_ne!(hash(&flipped), base);
        }
    }

    #[test]
    fn toy_sign_verify() {
        let k = toy();
        let sig = sign(&digest_of(4), &k.private());
        assert_eq!(sig.value, big(16));
        assert!(verify(&digest_of(4), &sig, &k.public()));
        assert_eq!(sign(&digest_of(0), &k.private()).value, big(0));
    }

    #[test]
    fn toy_perturbed_signatures_fail() {
        let k = toy();
        let sig = sign(&digest_of(4), &k.private());
        for bit in 0..8 {
            let bad = Signature {
                value: &sig.value ^ big(1 << bit),
                ..sig.clone()
            };
            assert!(!verify(&digest_of(4), &bad, &k.public()), "bit {bit}");
        }
    }

    #[test]
    fn toy_blind_chain() {
        let k = toy();
        let pubk = k.public();
        let r = BlindingFactor::new(big(2), &pubk).unwrap();
        let blinded = blind(&big(4), &r, &pubk).unwrap();
        assert_eq!(blinded, big(32));
        let blind_sig = sign_blinded(&blinded, &k.private()).unwrap();
        assert_eq!(blind_sig, big(32));
        assert_eq!(mod_inverse(&big(2), &big(33)), Some(big(17)));
        assert_eq!(unblind(&blind_sig, &r, &pubk).unwrap(), big(16));
    }

    #[test]
    fn identity_blinding() {
        let k = toy();
        let r = BlindingFactor::new(big(1), &k.public()).unwrap();
        for m in 0..33 {
            assert_eq!(blind(&big(m), &r, &k.public()).unwrap(), big(m));
        }
    }

    #[test]
    fn blinding_factor_must_be_coprime() {
        let pubk = toy().public();
        assert_eq!(BlindingFactor::new(big(11), &pubk), Err(Error::Blinding));
        assert_eq!(BlindingFactor::new(big(0), &pubk), Err(Error::Blinding));
        assert_eq!(BlindingFactor::new(big(33), &pubk), Err(Error::Blinding));
    }

    #[test]
    fn random_keys_sign_and_cross_fail() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let a = RsaKeyPair::generate(384, &mut rng);
        let b = RsaKeyPair::generate(384, &mut rng);
        for i in 0..20u32 {
            let d = hash(&i.to_be_bytes());
            let sig = sign(&d, &a.private());
            assert!(verify(&d, &sig, &a.public()));
            assert!(!verify(&d, &sig, &b.public()));
            // same value, relabelled as b's: still rejected
            let relabelled = Signature { signer_key_id: b.public().key_id(), ..sig };
            assert!(!verify(&d, &relabelled, &b.public()));
        }
    }

    #[test]
    fn rotation_keeps_old_signatures_verifiable() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let chain = SigningKeyChain::new(RsaKeyPair::generate(256, &mut rng));
        let old_pub = chain.current().public();
        let d = hash(b"before rotation");
        let old_sig = chain.sign(&d);
        let chain = rotate_signing_key(chain, 256, &mut rng);
        assert_ne!(chain.current().n, old_pub.n);
        assert_eq!(chain.epoch(), 1);
        assert!(verify(&d, &old_sig, &old_pub));
        assert!(chain.verify(&d, &old_sig));
        let new_sig = chain.sign(&d);
        assert!(!verify(&d, &new_sig, &old_pub));
        assert!(!verify(&d, &old_sig, &chain.current().public()));
    }

    #[test]
    fn signature_file_round_trip() {
        let k = toy();
        let sig = sign(&digest_of(4), &k.private());
        assert_eq!(Signature::from_file_str(&sig.to_file_string()).unwrap(), sig);
        assert!(Signature::from_file_str("10\n").is_err());
        assert!(Signature::from_file_str("10\nabcd\n").is_err());
    }
}
