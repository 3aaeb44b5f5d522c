//! DES and three-key 3DES (EDE), built from the FIPS 46-3 tables.
//!
//! Blocks and keys are handled as big-endian `u64`s. Bit numbering in the
//! tables follows the standard: bit 1 is the most significant bit.
//! Key parity bits are accepted and ignored.

use crate::cipher::BlockCipher;

pub const ROUNDS: usize = 16;
pub const TDES_ROUNDS: usize = 3 * ROUNDS;

const IP: [u8; 64] = [
    58, 50, 42, 34, 26, 18, 10, 2, 60, 52, 44, 36, 28, 20, 12, 4, //
    62, 54, 46, 38, 30, 22, 14, 6, 64, 56, 48, 40, 32, 24, 16, 8, //
    57, 49, 41, 33, 25, 17, 9, 1, 59, 51, 43, 35, 27, 19, 11, 3, //
    61, 53, 45, 37, 29, 21, 13, 5, 63, 55, 47, 39, 31, 23, 15, 7,
];

const FP: [u8; 64] = [
    40, 8, 48, 16, 56, 24, 64, 32, 39, 7, 47, 15, 55, 23, 63, 31, //
    38, 6, 46, 14, 54, 22, 62, 30, 37, 5, 45, 13, 53, 21, 61, 29, //
    36, 4, 44, 12, 52, 20, 60, 28, 35, 3, 43, 11, 51, 19, 59, 27, //
    34, 2, 42, 10, 50, 18, 58, 26, 33, 1, 41, 9, 49, 17, 57, 25,
];

const P: [u8; 32] = [
    16, 7, 20, 21, 29, 12, 28, 17, 1, 15, 23, 26, 5, 18, 31, 10, //
    2, 8, 24, 14, 32, 27, 3, 9, 19, 13, 30, 6, 22, 11, 4, 25,
];

const PC1: [u8; 56] = [
    57, 49, 41, 33, 25, 17, 9, 1, 58, 50, 42, 34, 26, 18, //
    10, 2, 59, 51, 43, 35, 27, 19, 11, 3, 60, 52, 44, 36, //
    63, 55, 47, 39, 31, 23, 15, 7, 62, 54, 46, 38, 30, 22, //
    14, 6, 61, 53, 45, 37, 29, 21, 13, 5, 28, 20, 12, 4,
];

const PC2: [u8; 48] = [
    14, 17, 11, 24, 1, 5, 3, 28, 15, 6, 21, 10, //
    23, 19, 12, 4, 26, 8, 16, 7, 27, 20, 13, 2, //
    41, 52, 31, 37, 47, 55, 30, 40, 51, 45, 33, 48, //
    44, 49, 39, 56, 34, 53, 46, 42, 50, 36, 29, 32,
];

const SHIFTS: [u32; 16] = [1, 1, 2, 2, 2, 2, 2, 2, 1, 2, 2, 2, 2, 2, 2, 1];

const SBOXES: [[u8; 64]; 8] = [
    [
        14, 4, 13, 1, 2, 15, 11, 8, 3, 10, 6, 12, 5, 9, 0, 7, //
        0, 15, 7, 4, 14, 2, 13, 1, 10, 6, 12, 11, 9, 5, 3, 8, //
        4, 1, 14, 8, 13, 6, 2, 11, 15, 12, 9, 7, 3, 10, 5, 0, //
        15, 12, 8, 2, 4, 9, 1, 7, 5, 11, 3, 14, 10, 0, 6, 13,
    ],
    [
        15, 1, 8, 14, 6, 11, 3, 4, 9, 7, 2, 13, 12, 0, 5, 10, //
        3, 13, 4, 7, 15, 2, 8, 14, 12, 0, 1, 10, 6, 9, 11, 5, //
        0, 14, 7, 11, 10, 4, 13, 1, 5, 8, 12, 6, 9, 3, 2, 15, //
        13, 8, 10, 1, 3, 15, 4, 2, 11, 6, 7, 12, 0, 5, 14, 9,
    ],
    [
        10, 0, 9, 14, 6, 3, 15, 5, 1, 13, 12, 7, 11, 4, 2, 8, //
        13, 7, 0, 9, 3, 4, 6, 10, 2, 8, 5, 14, 12, 11, 15, 1, //
        13, 6, 4, 9, 8, 15, 3, 0, 11, 1, 2, 12, 5, 10, 14, 7, //
        1, 10, 13, 0, 6, 9, 8, 7, 4, 15, 14, 3, 11, 5, 2, 12,
    ],
    [
        7, 13, 14, 3, 0, 6, 9, 10, 1, 2, 8, 5, 11, 12, 4, 15, //
        13, 8, 11, 5, 6, 15, 0, 3, 4, 7, 2, 12, 1, 10, 14, 9, //
        10, 6, 9, 0, 12, 11, 7, 13, 15, 1, 3, 14, 5, 2, 8, 4, //
        3, 15, 0, 6, 10, 1, 13, 8, 9, 4, 5, 11, 12, 7, 2, 14,
    ],
    [
        2, 12, 4, 1, 7, 10, 11, 6, 8, 5, 3, 15, 13, 0, 14, 9, //
        14, 11, 2, 12, 4, 7, 13, 1, 5, 0, 15, 10, 3, 9, 8, 6, //
        4, 2, 1, 11, 10, 13, 7, 8, 15, 9, 12, 5, 6, 3, 0, 14, //
        11, 8, 12, 7, 1, 14, 2, 13, 6, 15, 0, 9, 10, 4, 5, 3,
    ],
    [
        12, 1, 10, 15, 9, 2, 6, 8, 0, 13, 3, 4, 14, 7, 5, 11, //
        10, 15, 4, 2, 7, 12, 9, 5, 6, 1, 13, 14, 0, 11, 3, 8, //
        9, 14, 15, 5, 2, 8, 12, 3, 7, 0, 4, 10, 1, 13, 11, 6, //
        4, 3, 2, 12, 9, 5, 15, 10, 11, 14, 1, 7, 6, 0, 8, 13,
    ],
    [
        4, 11, 2, 14, 15, 0, 8, 13, 3, 12, 9, 7, 5, 10, 6, 1, //
        13, 0, 11, 7, 4, 9, 1, 10, 14, 3, 5, 12, 2, 15, 8, 6, //
        1, 4, 11, 13, 12, 3, 7, 14, 10, 15, 6, 8, 0, 5, 9, 2, //
        6, 11, 13, 8, 1, 4, 10, 7, 9, 5, 0, 15, 14, 2, 3, 12,
    ],
    [
        13, 2, 8, 4, 6, 15, 11, 1, 10, 9, 3, 14, 5, 0, 12, 7, //
        1, 15, 13, 8, 10, 3, 7, 4, 12, 5, 6, 11, 0, 14, 9, 2, //
        7, 11, 4, 1, 9, 12, 14, 2, 0, 6, 10, 13, 15, 3, 5, 8, //
        2, 1, 14, 7, 4, 10, 8, 13, 15, 12, 9, 0, 3, 5, 6, 11,
    ],
];

/// Pick bits out of `input` (a `width`-bit value) in table order.
const fn permute(input: u64, width: u32, table: &[u8]) -> u64 {
    let mut out = 0u64;
    let mut i = 0;
    while i < table.len() {
        let bit = (input >> (width - table[i] as u32)) & 1;
        out = (out << 1) | bit;
        i += 1;
    }
    out
}

/// S-box output already routed through P, indexed by box and 6-bit input.
const SP: [[u32; 64]; 8] = {
    let mut sp = [[0u32; 64]; 8];
    let mut b = 0;
    while b < 8 {
        let mut v = 0;
        while v < 64 {
            let row = ((v & 0x20) >> 4) | (v & 1);
            let col = (v >> 1) & 0xf;
            let s = SBOXES[b][row * 16 + col] as u64;
            sp[b][v] = permute(s << (28 - 4 * b), 32, &P) as u32;
            v += 1;
        }
        b += 1;
    }
    sp
};

/// The round function: expand to 48 bits, mix in the subkey, substitute, permute.
fn feistel(half: u32, subkey: u64) -> u32 {
    // 34-bit copy of the half with bit 32 prepended and bit 1 appended,
    // so every 6-bit expansion group is a contiguous window.
    let r = half as u64;
    let wrapped = ((r & 1) << 33) | (r << 1) | (r >> 31);
    let mut out = 0u32;
    for (i, sp) in SP.iter().enumerate() {
        let group = (wrapped >> (28 - 4 * i)) & 0x3f;
        let k = (subkey >> (42 - 6 * i)) & 0x3f;
        out |= sp[(group ^ k) as usize];
    }
    out
}

/// The 16 48-bit round keys derived from one 64-bit key.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DesSubkeys {
    round_keys: [u64; ROUNDS],
}

impl DesSubkeys {
    pub fn schedule(key: u64) -> Self {
        let cd = permute(key, 64, &PC1);
        let mut c = (cd >> 28) as u32 & 0x0fff_ffff;
        let mut d = cd as u32 & 0x0fff_ffff;
        let rot = |x: u32, n: u32| ((x << n) | (x >> (28 - n))) & 0x0fff_ffff;
        let mut round_keys = [0u64; ROUNDS];
        for (rk, &shift) in round_keys.iter_mut().zip(SHIFTS.iter()) {
            c = rot(c, shift);
            d = rot(d, shift);
            *rk = permute(((c as u64) << 28) | d as u64, 56, &PC2);
        }
        DesSubkeys { round_keys }
    }

    pub fn round_keys(&self) -> &[u64; ROUNDS] {
        &self.round_keys
    }

    /// The same keys in reverse order; running encryption with these decrypts.
    pub fn reversed(&self) -> Self {
        let mut round_keys = self.round_keys;
        round_keys.reverse();
        DesSubkeys { round_keys }
    }

    pub fn encrypt_block(&self, block: u64) -> u64 {
        run(block, self.round_keys.iter(), &mut 0)
    }

    pub fn decrypt_block(&self, block: u64) -> u64 {
        run(block, self.round_keys.iter().rev(), &mut 0)
    }
}

fn run<'a>(block: u64, keys: impl Iterator<Item = &'a u64>, rounds: &mut usize) -> u64 {
    let ip = permute(block, 64, &IP);
    let (mut left, mut right) = ((ip >> 32) as u32, ip as u32);
    for &k in keys {
        (left, right) = (right, left ^ feistel(right, k));
        *rounds += 1;
    }
    // the last round's swap is undone before the final permutation
    permute(((right as u64) << 32) | left as u64, 64, &FP)
}

/// Single DES keyed with one 64-bit key.
#[derive(Debug, Clone)]
pub struct Des {
    subkeys: DesSubkeys,
}

impl Des {
    pub fn new(key: u64) -> Self {
        Des {
            subkeys: DesSubkeys::schedule(key),
        }
    }

    pub fn subkeys(&self) -> &DesSubkeys {
        &self.subkeys
    }

    pub fn encrypt_u64(&self, block: u64) -> u64 {
        self.subkeys.encrypt_block(block)
    }

    pub fn decrypt_u64(&self, block: u64) -> u64 {
        self.subkeys.decrypt_block(block)
    }

    /// Encrypt while counting executed Feistel rounds into `rounds`.
    pub fn encrypt_counted(&self, block: u64, rounds: &mut usize) -> u64 {
        run(block, self.subkeys.round_keys.iter(), rounds)
    }

    pub fn decrypt_counted(&self, block: u64, rounds: &mut usize) -> u64 {
        run(block, self.subkeys.round_keys.iter().rev(), rounds)
    }
}

impl BlockCipher for Des {
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

/// Three independent raw DES keys (168 effective bits).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TdesKeyBundle {
    pub k1: u64,
    pub k2: u64,
    pub k3: u64,
}

/// 3DES in encrypt-decrypt-encrypt form: `E_k3(D_k2(E_k1(x)))`.
#[derive(Debug, Clone)]
pub struct TripleDes {
    stages: [Des; 3],
}

impl TripleDes {
    pub fn new(bundle: &TdesKeyBundle) -> Self {
        TripleDes {
            stages: [Des::new(bundle.k1), Des::new(bundle.k2), Des::new(bundle.k3)],
        }
    }

    pub fn encrypt_u64(&self, block: u64) -> u64 {
        self.encrypt_counted(block, &mut 0)
    }

    pub fn decrypt_u64(&self, block: u64) -> u64 {
        self.decrypt_counted(block, &mut 0)
    }

    pub fn encrypt_counted(&self, block: u64, rounds: &mut usize) -> u64 {
        let [s1, s2, s3] = &self.stages;
        let x = s1.encrypt_counted(block, rounds);
        let x = s2.decrypt_counted(x, rounds);
        s3.encrypt_counted(x, rounds)
    }

    pub fn decrypt_counted(&self, block: u64, rounds: &mut usize) -> u64 {
        let [s1, s2, s3] = &self.stages;
        let x = s3.decrypt_counted(block, rounds);
        let x = s2.encrypt_counted(x, rounds);
        s1.decrypt_counted(x, rounds)
    }
}

impl BlockCipher for TripleDes {
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
