//! Browser bindings for three interactive views of the toolkit. Every
//! export returns a JSON document; failures come back as JS exceptions.

use num_bigint::BigUint;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use medseal::digsig::{blind, sign_blinded, unblind, BlindingFactor};
use medseal::rsa::{self, RsaKeyPair};
use medseal::{BlockCipher, BlockCipherSuite, BlockKey, Cipher};

/// Longest cycle trace returned to the page.
pub const MAX_TRACE: usize = 64;
/// The cycle attack gives up after this many encryptions.
pub const MAX_CYCLE: u64 = 100_000;

fn int(s: &str, what: &str) -> Result<BigUint, String> {
    rsa::parse_integer(s.trim()).map_err(|e| format!("{what}: {e}"))
}

fn keypair(p: &str, q: &str, e: &str) -> Result<RsaKeyPair, String> {
    let e = match e.trim() {
        "" => None,
        s => Some(int(s, "e")?),
    };
    RsaKeyPair::from_primes(int(p, "p")?, int(q, "q")?, e).map_err(|e| e.to_string())
}

/// Key generation from chosen primes, one encryption, and the cycle attack
/// on the resulting ciphertext.
pub fn rsa_explore(p: &str, q: &str, e: &str, m: &str) -> Result<Value, String> {
    let keys = keypair(p, q, e)?;
    let public = keys.public();
    let m = int(m, "m")?;
    let c = rsa::encrypt(&m, &public).map_err(|e| e.to_string())?;
    let decrypted = rsa::decrypt(&c, &keys.private()).map_err(|e| e.to_string())?;

    let mut trace = vec![c.clone()];
    while trace.len() < MAX_TRACE {
        let next = rsa::encrypt(trace.last().unwrap(), &public).map_err(|e| e.to_string())?;
        let closed = next == c;
        trace.push(next);
        if closed {
            break;
        }
    }
    let found = rsa::cycle_attack(&c, &public, MAX_CYCLE).map_err(|e| e.to_string())?;
    Ok(json!({
        "n": keys.n.to_string(),
        "phi": keys.phi_n.to_string(),
        "e": keys.e.to_string(),
        "d": keys.d.to_string(),
        "ciphertext": c.to_string(),
        "decrypted": decrypted.to_string(),
        "cycle": {
            "trace": trace.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "iterations": found.as_ref().map(|f| f.iterations),
            "recovered": found.map(|f| f.plaintext.to_string()),
        },
    }))
}

fn flip(bytes: &mut [u8], bit: usize) {
    bytes[bit / 8] ^= 0x80 >> (bit % 8);
}

fn diff_bits(a: &[u8], b: &[u8]) -> u32 {
    a.iter().zip(b).map(|(x, y)| (x ^ y).count_ones()).sum()
}

/// Encrypt one block, then the same block with one plaintext bit flipped,
/// and the original block under a key with one bit flipped.
pub fn avalanche(suite: &str, key_hex: &str, block_hex: &str, bit: usize) -> Result<Value, String> {
    let suite: BlockCipherSuite = suite.parse().map_err(|e: medseal::Error| e.to_string())?;
    let key = hex::decode(key_hex.trim()).map_err(|e| format!("key: {e}"))?;
    let block = hex::decode(block_hex.trim()).map_err(|e| format!("block: {e}"))?;
    let bs = suite.block_size();
    if block.len() != bs {
        return Err(format!("{suite} needs a {bs}-byte block, got {}", block.len()));
    }
    if bit >= bs * 8 {
        return Err(format!("bit must be below {}", bs * 8));
    }
    let encrypt = |key: &[u8], block: &[u8]| -> Result<Vec<u8>, String> {
        let cipher = Cipher::new(&BlockKey::new(suite, key).map_err(|e| e.to_string())?);
        let mut out = block.to_vec();
        cipher.encrypt_block(&mut out);
        Ok(out)
    };
    let base = encrypt(&key, &block)?;
    let mut flipped_block = block.clone();
    flip(&mut flipped_block, bit);
    let by_plaintext = encrypt(&key, &flipped_block)?;
    let mut flipped_key = key.clone();
    let mut key_bit = bit % (key.len() * 8);
    // DES-family keys ignore the low bit of every byte.
    if matches!(suite, BlockCipherSuite::Des | BlockCipherSuite::Tdes) && key_bit % 8 == 7 {
        key_bit -= 1;
    }
    flip(&mut flipped_key, key_bit);
    let by_key = encrypt(&flipped_key, &block)?;
    Ok(json!({
        "block_bits": bs * 8,
        "ciphertext": hex::encode(&base),
        "plaintext_flip": {
            "bit": bit,
            "ciphertext": hex::encode(&by_plaintext),
            "changed_bits": diff_bits(&base, &by_plaintext),
        },
        "key_flip": {
            "bit": key_bit,
            "ciphertext": hex::encode(&by_key),
            "changed_bits": diff_bits(&base, &by_key),
        },
    }))
}

/// Every step of a blind signature next to the direct signature.
pub fn blind_trace(p: &str, q: &str, e: &str, m: &str, r: &str) -> Result<Value, String> {
    let keys = keypair(p, q, e)?;
    let public = keys.public();
    let private = keys.private();
    let m = int(m, "m")?;
    let factor = BlindingFactor::new(int(r, "r")?, &public).map_err(|e| e.to_string())?;
    let blinded = blind(&m, &factor, &public).map_err(|e| e.to_string())?;
    let blind_sig = sign_blinded(&blinded, &private).map_err(|e| e.to_string())?;
    let unblinded = unblind(&blind_sig, &factor, &public).map_err(|e| e.to_string())?;
    let direct = rsa::decrypt(&m, &private).map_err(|e| e.to_string())?;
    let verifies = rsa::encrypt(&unblinded, &public).map_err(|e| e.to_string())? == m;
    Ok(json!({
        "n": keys.n.to_string(),
        "e": keys.e.to_string(),
        "d": keys.d.to_string(),
        "blinded": blinded.to_string(),
        "blind_signature": blind_sig.to_string(),
        "unblinded": unblinded.to_string(),
        "direct_signature": direct.to_string(),
        "equal": unblinded == direct,
        "verifies": verifies,
    }))
}

fn to_js(result: Result<Value, String>) -> Result<String, JsError> {
    result.map(|v| v.to_string()).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = rsaExplore)]
pub fn rsa_explore_js(p: &str, q: &str, e: &str, m: &str) -> Result<String, JsError> {
    to_js(rsa_explore(p, q, e, m))
}

#[wasm_bindgen(js_name = avalanche)]
pub fn avalanche_js(suite: &str, key_hex: &str, block_hex: &str, bit: usize) -> Result<String, JsError> {
    to_js(avalanche(suite, key_hex, block_hex, bit))
}

#[wasm_bindgen(js_name = blindTrace)]
pub fn blind_trace_js(p: &str, q: &str, e: &str, m: &str, r: &str) -> Result<String, JsError> {
    to_js(blind_trace(p, q, e, m, r))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toy_rsa() {
        let v = rsa_explore("3", "11", "3", "2").unwrap();
        assert_eq!(v["d"], "7");
        assert_eq!(v["ciphertext"], "8");
        assert_eq!(v["decrypted"], "2");
        assert_eq!(v["cycle"]["iterations"], 4);
        assert_eq!(v["cycle"]["recovered"], "2");
        assert_eq!(v["cycle"]["trace"], json!(["8", "17", "29", "2", "8"]));
    }

    #[test]
    fn default_exponent() {
        let v = rsa_explore("61", "53", "", "65").unwrap();
        assert_eq!(v["e"], "7", "65537 exceeds phi = 3120");
        assert_eq!(v["decrypted"], "65");
        assert_eq!(v["cycle"]["recovered"], "65");
    }

    #[test]
    fn rsa_input_errors() {
        assert!(rsa_explore("3", "11", "3", "33").is_err());
        assert!(rsa_explore("3", "3", "3", "1").is_err());
        assert!(rsa_explore("x", "11", "3", "1").is_err());
    }

    #[test]
    fn avalanche_des_vector() {
        let v = avalanche("DES", "133457799bbcdff1", "0123456789abcdef", 0).unwrap();
        assert_eq!(v["ciphertext"], "85e813540f0ab405");
        assert_eq!(v["key_flip"]["bit"], 0);
        let v = avalanche("DES", "133457799bbcdff1", "0123456789abcdef", 15).unwrap();
        assert_eq!(v["key_flip"]["bit"], 14);
        let changed = v["plaintext_flip"]["changed_bits"].as_u64().unwrap();
        assert!((1..=64).contains(&changed));
    }

    #[test]
    fn avalanche_aes_spreads() {
        let v = avalanche("AES128", "000102030405060708090a0b0c0d0e0f", "00112233445566778899aabbccddeeff", 127).unwrap();
        assert_eq!(v["ciphertext"], "69c4e0d86a7b0430d8cdb78070b4c55a");
        for side in ["plaintext_flip", "key_flip"] {
            let changed = v[side]["changed_bits"].as_u64().unwrap();
            assert!((30..=98).contains(&changed), "{side}: {changed}");
        }
    }

    #[test]
    fn avalanche_rejects_bad_input() {
        assert!(avalanche("AES128", "00", "00", 0).is_err());
        assert!(avalanche("DES", "133457799bbcdff1", "0123456789abcdef", 64).is_err());
        assert!(avalanche("ROT13", "00", "00", 0).is_err());
    }

    #[test]
    fn blind_toy() {
        let v = blind_trace("3", "11", "3", "4", "2").unwrap();
        assert_eq!(v["blinded"], "32");
        assert_eq!(v["blind_signature"], "32");
        assert_eq!(v["unblinded"], "16");
        assert_eq!(v["direct_signature"], "16");
        assert_eq!(v["equal"], true);
        assert_eq!(v["verifies"], true);
        assert!(blind_trace("3", "11", "3", "4", "11").is_err());
    }
}
