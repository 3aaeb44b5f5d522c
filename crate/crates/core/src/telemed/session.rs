//! Hybrid sessions between a patient and a doctor.
//!
//! The initiator picks a random symmetric key and wraps it with the peer's
//! RSA public key. Every envelope after that is CBC-encrypted under the
//! session key, then the header and ciphertext are hashed and signed with
//! the sender's RSA key. Each envelope carries a fresh random nonce which
//! the receiver accepts at most once. After a configurable number of
//! envelopes the sender switches to a new session key and ships it, wrapped,
//! in the envelope that first uses it.

use std::collections::HashSet;
use std::sync::Arc;

use num_bigint::BigUint;
use rand::Rng;

use super::frame::SealedEnvelope;
use super::record::{parse_records, serialize_records, PatientRecord};
use crate::cipher::{open_bytes, seal_bytes, BlockCipherSuite, BlockKey, Cipher, InitializationVector, Mode};
use crate::digsig::{hash, sign, verify};
use crate::rsa::{self, RsaKeyPair, RsaPrivateKey, RsaPublicKey};
use crate::{Error, Result};

pub const DEFAULT_ROTATION_PERIOD: u64 = 100;

/// Wrap `key` for `peer`: split into chunks of `k - 2` bytes (`k` the
/// modulus length), prefix each with one random byte, RSA-encrypt, and
/// concatenate the `k`-byte results.
pub fn wrap_key<R: Rng + ?Sized>(key: &[u8], peer: &RsaPublicKey, rng: &mut R) -> Result<Vec<u8>> {
    let k = peer.modulus_len();
    if k < 3 {
        return Err(Error::InvalidKey("modulus too small to wrap keys".into()));
    }
    let mut out = Vec::with_capacity(key.len().div_ceil(k - 2) * k);
    for chunk in key.chunks(k - 2) {
        let mut block = Vec::with_capacity(chunk.len() + 1);
        block.push(rng.gen::<u8>());
        block.extend_from_slice(chunk);
        let c = rsa::encrypt(&BigUint::from_bytes_be(&block), peer)?;
        let bytes = c.to_bytes_be();
        out.resize(out.len() + k - bytes.len(), 0);
        out.extend_from_slice(&bytes);
    }
    Ok(out)
}

/// Inverse of [`wrap_key`] for a key of `key_len` bytes.
pub fn unwrap_key(wrapped: &[u8], own: &RsaPrivateKey, key_len: usize) -> Result<Vec<u8>> {
    let k = own.n.bits().div_ceil(8) as usize;
    let fail = |why: &str| Error::Decrypt(format!("cannot unwrap session key: {why}"));
    if k < 3 || wrapped.len() != key_len.div_ceil(k - 2) * k {
        return Err(fail("wrong length"));
    }
    let mut key = Vec::with_capacity(key_len);
    for block in wrapped.chunks(k) {
        let want = (key_len - key.len()).min(k - 2);
        let m = rsa::decrypt(&BigUint::from_bytes_be(block), own).map_err(|_| fail("out of range"))?;
        let bytes = m.to_bytes_be();
        if bytes.len() > want + 1 {
            return Err(fail("chunk too long"));
        }
        let mut padded = vec![0u8; want + 1 - bytes.len()];
        padded.extend_from_slice(&bytes);
        key.extend_from_slice(&padded[1..]);
    }
    Ok(key)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Initiator,
    Responder,
}

/// One side of a patient-doctor channel. Sessions are used by one thread
/// at a time; the methods take `&mut self`.
pub struct Session {
    session_id: [u8; 16],
    role: Role,
    suite: BlockCipherSuite,
    session_key: Option<BlockKey>,
    cipher: Option<Cipher>,
    own_keys: Arc<RsaKeyPair>,
    own_id: [u8; 16],
    peer_public_key: RsaPublicKey,
    send_counter: u64,
    seen_nonces: HashSet<[u8; 16]>,
    messages_since_rotation: u64,
    rotation_period: u64,
}

impl std::fmt::Debug for Session {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Session")
            .field("session_id", &hex::encode(self.session_id))
            .field("role", &self.role)
            .field("suite", &self.suite)
            .field("send_counter", &self.send_counter)
            .field("seen_nonces", &self.seen_nonces.len())
            .finish_non_exhaustive()
    }
}

/// Open a session toward `peer`. The returned envelope carries the wrapped
/// session key and no records.
pub fn start_session<R: Rng + ?Sized>(
    own_keys: Arc<RsaKeyPair>,
    peer: RsaPublicKey,
    suite: BlockCipherSuite,
    rotation_period: u64,
    rng: &mut R,
) -> Result<(Session, SealedEnvelope)> {
    let mut session = Session::new(Role::Initiator, own_keys, peer, rotation_period, rng);
    session.suite = suite;
    let key = BlockKey::generate(suite, rng);
    let wrapped = wrap_key(key.as_bytes(), &session.peer_public_key, rng)?;
    session.install_key(key);
    let env = session.seal_with(&[], Some(wrapped), rng)?;
    Ok((session, env))
}

impl Session {
    fn new<R: Rng + ?Sized>(
        role: Role,
        own_keys: Arc<RsaKeyPair>,
        peer: RsaPublicKey,
        rotation_period: u64,
        rng: &mut R,
    ) -> Self {
        let own_id = own_keys.public().key_id();
        Session {
            session_id: rng.gen(),
            role,
            suite: BlockCipherSuite::Aes128,
            session_key: None,
            cipher: None,
            own_keys,
            own_id,
            peer_public_key: peer,
            send_counter: 0,
            seen_nonces: HashSet::new(),
            messages_since_rotation: 0,
            rotation_period: rotation_period.max(1),
        }
    }

    /// The receiving side, waiting for the initiator's key envelope.
    pub fn respond<R: Rng + ?Sized>(
        own_keys: Arc<RsaKeyPair>,
        peer: RsaPublicKey,
        rotation_period: u64,
        rng: &mut R,
    ) -> Self {
        Session::new(Role::Responder, own_keys, peer, rotation_period, rng)
    }

    pub fn session_id(&self) -> [u8; 16] {
        self.session_id
    }

    pub fn role(&self) -> Role {
        self.role
    }

    pub fn suite(&self) -> BlockCipherSuite {
        self.suite
    }

    pub fn session_key(&self) -> Option<&BlockKey> {
        self.session_key.as_ref()
    }

    pub fn peer_public_key(&self) -> &RsaPublicKey {
        &self.peer_public_key
    }

    pub fn send_counter(&self) -> u64 {
        self.send_counter
    }

    pub fn messages_since_rotation(&self) -> u64 {
        self.messages_since_rotation
    }

    pub fn seen_nonce_count(&self) -> usize {
        self.seen_nonces.len()
    }

    fn install_key(&mut self, key: BlockKey) {
        self.suite = key.suite();
        self.cipher = Some(Cipher::new(&key));
        self.session_key = Some(key);
        self.messages_since_rotation = 0;
    }

    fn seal_with<R: Rng + ?Sized>(
        &mut self,
        records: &[PatientRecord],
        wrapped_key: Option<Vec<u8>>,
        rng: &mut R,
    ) -> Result<SealedEnvelope> {
        let cipher = self
            .cipher
            .as_ref()
            .ok_or_else(|| Error::InvalidKey("session has no key yet".into()))?;
        let iv = InitializationVector::random(self.suite.block_size(), rng);
        let ciphertext = seal_bytes(cipher, &iv, Mode::Cbc, serialize_records(records).as_bytes())?;
        let mut env = SealedEnvelope {
            sender_id: self.own_id,
            nonce: rng.gen(),
            suite: self.suite,
            wrapped_key,
            iv,
            ciphertext,
            signature: Default::default(),
        };
        env.signature = sign(&hash(&env.signed_bytes()), &self.own_keys.private());
        self.send_counter += 1;
        Ok(env)
    }

    /// Encrypt, hash, sign. Rotates the session key first when the period
    /// has been reached; the new key rides along wrapped.
    pub fn seal_envelope<R: Rng + ?Sized>(
        &mut self,
        records: &[PatientRecord],
        rng: &mut R,
    ) -> Result<SealedEnvelope> {
        if self.cipher.is_none() {
            return Err(Error::InvalidKey("session has no key yet".into()));
        }
        let mut wrapped = None;
        if self.messages_since_rotation >= self.rotation_period {
            let key = BlockKey::generate(self.suite, rng);
            wrapped = Some(wrap_key(key.as_bytes(), &self.peer_public_key, rng)?);
            self.install_key(key);
        }
        let env = self.seal_with(records, wrapped, rng)?;
        self.messages_since_rotation += 1;
        Ok(env)
    }

    /// Check and decrypt an envelope from the peer.
    ///
    /// Order: nonce unseen, signature valid, wrapped key unwrapped, then
    /// decrypt, unpad and parse. Session state changes only once every step
    /// has passed.
    pub fn open_envelope(&mut self, env: &SealedEnvelope) -> Result<Vec<PatientRecord>> {
        if self.seen_nonces.contains(&env.nonce) {
            return Err(Error::Replay);
        }
        let peer = &self.peer_public_key;
        if env.sender_id != peer.key_id() || !verify(&hash(&env.signed_bytes()), &env.signature, peer) {
            return Err(Error::Authenticity);
        }
        let new_key = match &env.wrapped_key {
            Some(wrapped) => {
                let bytes = unwrap_key(wrapped, &self.own_keys.private(), env.suite.session_key_len())?;
                Some(BlockKey::new(env.suite, &bytes).map_err(|e| Error::Decrypt(e.to_string()))?)
            }
            None => None,
        };
        let fresh_cipher = new_key.as_ref().map(Cipher::new);
        let cipher = match (&fresh_cipher, &self.cipher) {
            (Some(c), _) => c,
            (None, Some(c)) if env.suite == self.suite => c,
            (None, Some(_)) => return Err(Error::Decrypt(format!("envelope suite {} without a new key", env.suite))),
            (None, None) => return Err(Error::Decrypt("no session key established".into())),
        };
        let plain = open_bytes(cipher, &env.iv, Mode::Cbc, &env.ciphertext)
            .map_err(|e| Error::Decrypt(e.to_string()))?;
        let text = String::from_utf8(plain).map_err(|_| Error::Decrypt("records are not UTF-8".into()))?;
        let records = parse_records(&text).map_err(|e| Error::Decrypt(e.to_string()))?;

        self.seen_nonces.insert(env.nonce);
        if let Some(key) = new_key {
            self.install_key(key);
        }
        Ok(records)
    }
}
