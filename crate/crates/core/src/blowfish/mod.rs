//! Blowfish: 64-bit blocks, 16 Feistel rounds, 32- to 448-bit keys.
//!
//! The P-array and S-boxes start from the hexadecimal digits of pi and are
//! then mixed with the key by repeatedly encrypting an all-zero block.

mod consts;

use crate::cipher::BlockCipher;
use crate::{Error, Result};

pub const ROUNDS: usize = 16;
pub const P_ENTRIES: usize = ROUNDS + 2;
pub const S_BOXES: usize = 4;
pub const S_ENTRIES: usize = 256;
pub const MIN_KEY_BYTES: usize = 4;
pub const MAX_KEY_BYTES: usize = 56;

/// Keyed Blowfish state.
#[derive(Clone, PartialEq, Eq)]
pub struct Blowfish {
    p: [u32; P_ENTRIES],
    s: [[u32; S_ENTRIES]; S_BOXES],
}

impl std::fmt::Debug for Blowfish {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Blowfish").finish_non_exhaustive()
    }
}

impl Blowfish {
    pub fn new(key: &[u8]) -> Result<Self> {
        if !(MIN_KEY_BYTES..=MAX_KEY_BYTES).contains(&key.len()) {
            return Err(Error::KeyLength {
                suite: "BLOWFISH",
                got: key.len(),
            });
        }
        let mut state = Blowfish {
            p: consts::P_INIT,
            s: consts::S_INIT,
        };
        let mut key_bytes = key.iter().cycle();
        for p in state.p.iter_mut() {
            let word = (0..4).fold(0u32, |acc, _| (acc << 8) | *key_bytes.next().unwrap() as u32);
            *p ^= word;
        }
        let (mut l, mut r) = (0u32, 0u32);
        for i in (0..P_ENTRIES).step_by(2) {
            (l, r) = state.encrypt_halves(l, r);
            state.p[i] = l;
            state.p[i + 1] = r;
        }
        for b in 0..S_BOXES {
            for i in (0..S_ENTRIES).step_by(2) {
                (l, r) = state.encrypt_halves(l, r);
                state.s[b][i] = l;
                state.s[b][i + 1] = r;
            }
        }
        Ok(state)
    }

    pub fn p_array(&self) -> &[u32; P_ENTRIES] {
        &self.p
    }

    pub fn s_boxes(&self) -> &[[u32; S_ENTRIES]; S_BOXES] {
        &self.s
    }

    #[inline]
    fn f(&self, x: u32) -> u32 {
        let [a, b, c, d] = x.to_be_bytes();
        (self.s[0][a as usize].wrapping_add(self.s[1][b as usize]) ^ self.s[2][c as usize])
            .wrapping_add(self.s[3][d as usize])
    }

    fn encrypt_halves(&self, l: u32, r: u32) -> (u32, u32) {
        run(self, self.p.iter().copied(), l, r, &mut 0)
    }

    pub fn encrypt_u64(&self, block: u64) -> u64 {
        self.encrypt_counted(block, &mut 0)
    }

    pub fn decrypt_u64(&self, block: u64) -> u64 {
        self.decrypt_counted(block, &mut 0)
    }

    pub fn encrypt_counted(&self, block: u64, rounds: &mut usize) -> u64 {
        let (l, r) = run(self, self.p.iter().copied(), (block >> 32) as u32, block as u32, rounds);
        ((l as u64) << 32) | r as u64
    }

    /// Decryption is the encryption network with the P-array reversed.
    pub fn decrypt_counted(&self, block: u64, rounds: &mut usize) -> u64 {
        let (l, r) = run(self, self.p.iter().rev().copied(), (block >> 32) as u32, block as u32, rounds);
        ((l as u64) << 32) | r as u64
    }

    /// A copy with the P-array reversed. Encrypting with it decrypts under `self`.
    pub fn with_reversed_p(&self) -> Blowfish {
        let mut rev = self.clone();
        rev.p.reverse();
        rev
    }
}

fn run(bf: &Blowfish, mut p: impl Iterator<Item = u32>, mut l: u32, mut r: u32, rounds: &mut usize) -> (u32, u32) {
    for _ in 0..ROUNDS {
        l ^= p.next().unwrap();
        r ^= bf.f(l);
        std::mem::swap(&mut l, &mut r);
        *rounds += 1;
    }
    std::mem::swap(&mut l, &mut r);
    r ^= p.next().unwrap();
    l ^= p.next().unwrap();
    (l, r)
}

impl BlockCipher for Blowfish {
    fn block_size(&self) -> usize {
        8
    }

    fn encrypt_block(&self, block: &mut [u8]) {
        let v = self.encrypt_u64(u64::from_be_bytes(block.try_into().unwrap()));
        block.copy_from_slice(&v.to_be_bytes());
    }

    fn decrypt_block(&self, block: &mut [u8]) {
        let v = self.decrypt_u64(u64::from_be_bytes(block.try_into().unwrap()));
        block.copy_from_slice(&v.to_be_bytes());
    }
}
