//! AES-128/192/256 (FIPS 197), byte oriented.
//!
//! The state is the 16-byte block read column by column, so `state[4 * c + r]`
//! is row `r` of column `c`. The S-box is derived at compile time from the
//! multiplicative inverse in GF(2^8) followed by the affine map.

use crate::cipher::BlockCipher;
use crate::{Error, Result};

pub type AesState = [u8; 16];

/// Multiply in GF(2^8) modulo x^8 + x^4 + x^3 + x + 1.
pub const fn gf_mul(mut a: u8, mut b: u8) -> u8 {
    let mut p = 0u8;
    while b != 0 {
        if b & 1 != 0 {
            p ^= a;
        }
        let carry = a & 0x80;
        a <<= 1;
        if carry != 0 {
            a ^= 0x1b;
        }
        b >>= 1;
    }
    p
}

const fn gf_inv(a: u8) -> u8 {
    // a^254 = a^-1 for nonzero a; maps 0 to 0
    let mut result = 1u8;
    let mut base = a;
    let mut e = 254u32;
    while e > 0 {
        if e & 1 != 0 {
            result = gf_mul(result, base);
        }
        base = gf_mul(base, base);
        e >>= 1;
    }
    if a == 0 {
        0
    } else {
        result
    }
}

pub const SBOX: [u8; 256] = {
    let mut s = [0u8; 256];
    let mut i = 0;
    while i < 256 {
        let b = gf_inv(i as u8);
        s[i] = b ^ b.rotate_left(1) ^ b.rotate_left(2) ^ b.rotate_left(3) ^ b.rotate_left(4) ^ 0x63;
        i += 1;
    }
    s
};

pub const INV_SBOX: [u8; 256] = {
    let mut inv = [0u8; 256];
    let mut i = 0;
    while i < 256 {
        inv[SBOX[i] as usize] = i as u8;
        i += 1;
    }
    inv
};

pub fn sub_bytes(state: &mut AesState) {
    state.iter_mut().for_each(|b| *b = SBOX[*b as usize]);
}

pub fn inv_sub_bytes(state: &mut AesState) {
    state.iter_mut().for_each(|b| *b = INV_SBOX[*b as usize]);
}

/// Row `r` rotates left by `r` positions.
pub fn shift_rows(state: &mut AesState) {
    let s = *state;
    for c in 0..4 {
        for r in 1..4 {
            state[4 * c + r] = s[4 * ((c + r) % 4) + r];
        }
    }
}

pub fn inv_shift_rows(state: &mut AesState) {
    let s = *state;
    for c in 0..4 {
        for r in 1..4 {
            state[4 * ((c + r) % 4) + r] = s[4 * c + r];
        }
    }
}

pub fn mix_column(col: [u8; 4]) -> [u8; 4] {
    let [a, b, c, d] = col;
    [
        gf_mul(a, 2) ^ gf_mul(b, 3) ^ c ^ d,
        a ^ gf_mul(b, 2) ^ gf_mul(c, 3) ^ d,
        a ^ b ^ gf_mul(c, 2) ^ gf_mul(d, 3),
        gf_mul(a, 3) ^ b ^ c ^ gf_mul(d, 2),
    ]
}

pub fn inv_mix_column(col: [u8; 4]) -> [u8; 4] {
    let [a, b, c, d] = col;
    [
        gf_mul(a, 14) ^ gf_mul(b, 11) ^ gf_mul(c, 13) ^ gf_mul(d, 9),
        gf_mul(a, 9) ^ gf_mul(b, 14) ^ gf_mul(c, 11) ^ gf_mul(d, 13),
        gf_mul(a, 13) ^ gf_mul(b, 9) ^ gf_mul(c, 14) ^ gf_mul(d, 11),
        gf_mul(a, 11) ^ gf_mul(b, 13) ^ gf_mul(c, 9) ^ gf_mul(d, 14),
    ]
}

pub fn mix_columns(state: &mut AesState) {
    for col in state.chunks_exact_mut(4) {
        let mixed = mix_column(col.try_into().unwrap());
        col.copy_from_slice(&mixed);
    }
}

pub fn inv_mix_columns(state: &mut AesState) {
    for col in state.chunks_exact_mut(4) {
        let mixed = inv_mix_column(col.try_into().unwrap());
        col.copy_from_slice(&mixed);
    }
}

pub fn add_round_key(state: &mut AesState, key: &[u8; 16]) {
    state.iter_mut().zip(key).for_each(|(s, k)| *s ^= k);
}

/// Expanded key schedule: `rounds + 1` round keys.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AesRoundKeys {
    keys: Vec<[u8; 16]>,
}

impl AesRoundKeys {
    pub fn expand(key: &[u8]) -> Result<Self> {
        let nk = match key.len() {
            16 | 24 | 32 => key.len() / 4,
            got => return Err(Error::KeyLength { suite: "AES", got }),
        };
        let rounds = nk + 6;
        let total_words = 4 * (rounds + 1);
        let mut words: Vec<[u8; 4]> = key.chunks_exact(4).map(|w| w.try_into().unwrap()).collect();
        let mut rcon = 1u8;
        for i in nk..total_words {
            let mut temp = words[i - 1];
            if i % nk == 0 {
                temp.rotate_left(1);
                temp.iter_mut().for_each(|b| *b = SBOX[*b as usize]);
                temp[0] ^= rcon;
                rcon = gf_mul(rcon, 2);
            } else if nk > 6 && i % nk == 4 {
                temp.iter_mut().for_each(|b| *b = SBOX[*b as usize]);
            }
            let prev = words[i - nk];
            words.push(std::array::from_fn(|j| prev[j] ^ temp[j]));
        }
        let keys = words
            .chunks_exact(4)
            .map(|w| std::array::from_fn(|j| w[j / 4][j % 4]))
            .collect();
        Ok(AesRoundKeys { keys })
    }

    pub fn rounds(&self) -> usize {
        self.keys.len() - 1
    }

    pub fn round_keys(&self) -> &[[u8; 16]] {
        &self.keys
    }
}

#[derive(Debug, Clone)]
pub struct Aes {
    keys: AesRoundKeys,
}

impl Aes {
    pub fn new(key: &[u8]) -> Result<Self> {
        Ok(Aes {
            keys: AesRoundKeys::expand(key)?,
        })
    }

    pub fn round_keys(&self) -> &AesRoundKeys {
        &self.keys
    }

    pub fn encrypt(&self, block: &AesState) -> AesState {
        let mut state = *block;
        self.encrypt_counted(&mut state, &mut 0);
        state
    }

    pub fn decrypt(&self, block: &AesState) -> AesState {
        let mut state = *block;
        self.decrypt_counted(&mut state, &mut 0);
        state
    }

    /// Encrypt in place, counting rounds into `rounds`. The final round
    /// skips MixColumns.
    pub fn encrypt_counted(&self, state: &mut AesState, rounds: &mut usize) {
        let keys = self.keys.round_keys();
        let last = keys.len() - 1;
        add_round_key(state, &keys[0]);
        for key in &keys[1..last] {
            sub_bytes(state);
            shift_rows(state);
            mix_columns(state);
            add_round_key(state, key);
            *rounds += 1;
        }
        sub_bytes(state);
        shift_rows(state);
        add_round_key(state, &keys[last]);
        *rounds += 1;
    }

    pub fn decrypt_counted(&self, state: &mut AesState, rounds: &mut usize) {
        let keys = self.keys.round_keys();
        let last = keys.len() - 1;
        add_round_key(state, &keys[last]);
        inv_shift_rows(state);
        inv_sub_bytes(state);
        *rounds += 1;
        for key in keys[1..last].iter().rev() {
            add_round_key(state, key);
            inv_mix_columns(state);
            inv_shift_rows(state);
            inv_sub_bytes(state);
            *rounds += 1;
        }
        add_round_key(state, &keys[0]);
    }
}

impl BlockCipher for Aes {
    fn block_size(&self) -> usize {
        16
    }

    fn encrypt_block(&self, block: &mut [u8]) {
        let state: &mut AesState = block.try_into().unwrap();
        self.encrypt_counted(state, &mut 0);
    }

    fn decrypt_block(&self, block: &mut [u8]) {
        let state: &mut AesState = block.try_into().unwrap();
        self.decrypt_counted(state, &mut 0);
    }
}
