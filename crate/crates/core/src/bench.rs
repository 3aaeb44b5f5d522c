//! Throughput comparison between the block ciphers and RSA, and an
//! exhaustive DES key search over a small unknown slice of the key.

use std::fmt::Write as _;
use std::hint::black_box;
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cipher::{mode_decrypt, mode_encrypt, pad, BlockCipherSuite, BlockKey, Cipher, InitializationVector, Mode};
use crate::des::DesSubkeys;
use crate::rsa::{self, RsaKeyPair};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Encrypt,
    Decrypt,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Encrypt => "encrypt",
            Direction::Decrypt => "decrypt",
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub suites: Vec<BlockCipherSuite>,
    pub rsa_bits: u64,
    pub payload_size: usize,
    /// At least 3; the median run is reported.
    pub repetitions: usize,
    pub seed: u64,
    /// RSA private-key operations are slow at 1 MiB; off unless asked for.
    pub rsa_decrypt: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            suites: BlockCipherSuite::ALL.to_vec(),
            rsa_bits: 1024,
            payload_size: 1 << 20,
            repetitions: 3,
            seed: 0,
            rsa_decrypt: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub algorithm: String,
    pub direction: Direction,
    pub payload_bytes: usize,
    /// Median over the repetitions.
    pub elapsed: Duration,
    /// `payload_bytes / elapsed`, in bytes per second.
    pub throughput: f64,
    pub samples: Vec<Duration>,
}

#[derive(Debug, Clone, Default)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    pub fn row(&self, algorithm: &str, direction: Direction) -> Option<&BenchRow> {
        self.rows
            .iter()
            .find(|r| r.algorithm == algorithm && r.direction == direction)
    }

    /// Tab-separated, with a header row.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("algorithm\tdirection\tpayload_bytes\telapsed_seconds\tthroughput_bytes_per_second\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{:.6}\t{:.0}",
                r.algorithm,
                r.direction.as_str(),
                r.payload_bytes,
                r.elapsed.as_secs_f64(),
                r.throughput
            );
        }
        out
    }
}

fn median(mut samples: Vec<Duration>) -> Duration {
    samples.sort();
    samples[samples.len() / 2]
}

fn measure(
    algorithm: String,
    direction: Direction,
    payload_bytes: usize,
    repetitions: usize,
    mut run: impl FnMut(),
) -> BenchRow {
    let samples: Vec<Duration> = (0..repetitions)
        .map(|_| {
            let start = Instant::now();
            run();
            start.elapsed()
        })
        .collect();
    let elapsed = median(samples.clone()).max(Duration::from_nanos(1));
    BenchRow {
        algorithm,
        direction,
        payload_bytes,
        elapsed,
        throughput: payload_bytes as f64 / elapsed.as_secs_f64(),
        samples,
    }
}

/// Time every requested suite (CBC) and RSA on one seeded payload.
/// RSA works on consecutive chunks one byte shorter than the modulus.
pub fn run_benchmark(config: &BenchConfig) -> Result<BenchReport> {
    let reps = config.repetitions.max(3);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut payload = vec![0u8; config.payload_size.max(16)];
    rng.fill(&mut payload[..]);
    let mut report = BenchReport::default();

    for &suite in &config.suites {
        let cipher = Cipher::new(&BlockKey::generate(suite, &mut rng));
        let iv = InitializationVector::random(suite.block_size(), &mut rng);
        let padded = pad(&payload, suite.block_size());
        let ciphertext = mode_encrypt(&cipher, &iv, Mode::Cbc, &padded)?;
        report.rows.push(measure(suite.name().into(), Direction::Encrypt, payload.len(), reps, || {
            black_box(mode_encrypt(&cipher, &iv, Mode::Cbc, black_box(&padded)).unwrap());
        }));
        report.rows.push(measure(suite.name().into(), Direction::Decrypt, payload.len(), reps, || {
            black_box(mode_decrypt(&cipher, &iv, Mode::Cbc, black_box(&ciphertext)).unwrap());
        }));
    }

    let keys = RsaKeyPair::generate(config.rsa_bits, &mut rng);
    let (public, private) = (keys.public(), keys.private());
    let chunk = public.modulus_len() - 1;
    let messages: Vec<BigUint> = payload.chunks(chunk).map(BigUint::from_bytes_be).collect();
    let name = format!("RSA{}", config.rsa_bits);
    report.rows.push(measure(name.clone(), Direction::Encrypt, payload.len(), reps, || {
        for m in &messages {
            black_box(rsa::encrypt(black_box(m), &public).unwrap());
        }
    }));
    if config.rsa_decrypt {
        let ciphertexts: Vec<BigUint> = messages
            .iter()
            .map(|m| rsa::encrypt(m, &public))
            .collect::<Result<_>>()?;
        report.rows.push(measure(name, Direction::Decrypt, payload.len(), reps, || {
            for c in &ciphertexts {
                black_box(rsa::decrypt(black_box(c), &private).unwrap());
            }
        }));
    }
    Ok(report)
}

pub const MAX_UNKNOWN_KEY_BITS: u32 = 24;

/// A known plaintext/ciphertext pair and a key with its low `unknown_key_bits`
/// non-parity bits to be searched.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BruteForceTask {
    pub known_plaintext: u64,
    pub known_ciphertext: u64,
    pub unknown_key_bits: u32,
    pub fixed_key_template: u64,
}

/// Position in the 64-bit key of the `j`-th non-parity bit, counting from
/// the least significant. Bit 0 of every byte is parity.
fn key_bit_position(j: u32) -> u32 {
    8 * (j / 7) + 1 + j % 7
}

impl BruteForceTask {
    /// The template with the searched bits replaced by `index`.
    pub fn candidate(&self, index: u64) -> u64 {
        (0..self.unknown_key_bits).fold(self.fixed_key_template, |key, j| {
            let pos = key_bit_position(j);
            (key & !(1 << pos)) | (((index >> j) & 1) << pos)
        })
    }

    /// Build a task whose answer is `key`, hiding its low `unknown_bits`
    /// effective bits.
    pub fn from_key(key: u64, plaintext: u64, unknown_bits: u32) -> Self {
        let hidden = (0..unknown_bits).fold(0u64, |m, j| m | 1 << key_bit_position(j));
        BruteForceTask {
            known_plaintext: plaintext,
            known_ciphertext: DesSubkeys::schedule(key).encrypt_block(plaintext),
            unknown_key_bits: unknown_bits,
            fixed_key_template: key & !hidden,
        }
    }
}

/// Search all `2^k` completions of the template. Returns the lowest
/// matching key, or `None` if the template is wrong.
pub fn des_brute_force(task: &BruteForceTask) -> Result<Option<u64>> {
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get());
    des_brute_force_with_workers(task, workers)
}

pub fn des_brute_force_with_workers(task: &BruteForceTask, workers: usize) -> Result<Option<u64>> {
    if task.unknown_key_bits > MAX_UNKNOWN_KEY_BITS {
        return Err(Error::Scale(format!("{} unknown key bits", task.unknown_key_bits)));
    }
    let total = 1u64 << task.unknown_key_bits;
    let workers = (workers.max(1) as u64).min(total);
    let best = AtomicU64::new(u64::MAX);
    let search = |range: std::ops::Range<u64>| {
        for index in range {
            if index >= best.load(Ordering::Relaxed) {
                return;
            }
            let key = task.candidate(index);
            if DesSubkeys::schedule(key).encrypt_block(task.known_plaintext) == task.known_ciphertext {
                best.fetch_min(index, Ordering::Relaxed);
                return;
            }
        }
    };
    let per = total.div_ceil(workers);
    if workers == 1 {
        search(0..total);
    } else {
        std::thread::scope(|scope| {
            for w in 0..workers {
                let range = (w * per).min(total)..((w + 1) * per).min(total);
                scope.spawn(move || search(range));
            }
        });
    }
    Ok(match best.into_inner() {
        u64::MAX => None,
        index => Some(task.candidate(index)),
    })
}
