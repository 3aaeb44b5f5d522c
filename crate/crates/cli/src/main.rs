//! `medseal` command-line tool.
//!
//! Exit status: 0 success, 1 usage or I/O error, 2 cryptographic or
//! protocol failure. Results go to stdout, diagnostics to stderr.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use medseal::bench::{des_brute_force, run_benchmark, BenchConfig, BruteForceTask, MAX_UNKNOWN_KEY_BITS};
use medseal::cipher::{open_bytes, parse_key_file, seal_bytes};
use medseal::des::Des;
use medseal::digsig::{self, Signature};
use medseal::rsa::{self, RsaKeyPair, RsaPublicKey};
use medseal::telemed::record::{parse_records, serialize_records};
use medseal::telemed::{
    decode_frame_prefix, decode_frame_stream, encode_frame, start_session, PatientRecord, RecordStore, Session,
    DEFAULT_ROTATION_PERIOD,
};
use medseal::{BlockCipherSuite, BlockKey, Cipher, InitializationVector, Mode};

#[derive(Parser)]
#[command(name = "medseal", version, about = "Ciphers, RSA signatures and sealed patient-record exchange")]
struct Cli {
    /// Fix every random choice for a reproducible run.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a symmetric key line or an RSA keypair.
    Keygen(KeygenArgs),
    /// Encrypt a file with a symmetric key. CBC output starts with the IV.
    Encrypt(CipherArgs),
    /// Reverse `encrypt`.
    Decrypt(CipherArgs),
    /// Sign the SHA-256 digest of a file.
    Sign(SignArgs),
    /// Check a signature; prints `valid` or `invalid`.
    Verify(VerifyArgs),
    /// Append one measurement to a record store.
    RecordAdd(RecordAddArgs),
    /// Seal a record file into a key frame followed by one data frame.
    Seal(SealArgs),
    /// Open frames written by `seal` or `send` and write the records.
    Open(OpenArgs),
    /// Write a record file as a stream of frames, in batches, rotating keys.
    Send(SendArgs),
    /// Read a frame stream and print each accepted batch.
    Receive(ReceiveArgs),
    /// Throughput of each block cipher and RSA as tab-separated values.
    Bench(BenchArgs),
    /// Recover a textbook RSA plaintext by repeated encryption.
    AttackCycle(AttackCycleArgs),
    /// Search a DES key with a bounded number of unknown bits.
    AttackDes(AttackDesArgs),
}

#[derive(Args)]
struct KeygenArgs {
    #[arg(long, conflicts_with = "rsa_bits", required_unless_present = "rsa_bits")]
    suite: Option<BlockCipherSuite>,
    #[arg(long)]
    rsa_bits: Option<u64>,
    /// Writes `<PREFIX>.pub` and `<PREFIX>.key`.
    #[arg(long, requires = "rsa_bits")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CipherArgs {
    /// File holding one `SUITE:hex` line.
    #[arg(long)]
    key: PathBuf,
    #[arg(long, default_value = "cbc")]
    mode: Mode,
    /// Input file; stdin when absent.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SignArgs {
    /// RSA keypair file.
    #[arg(long)]
    key: PathBuf,
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// RSA public key file.
    #[arg(long = "pub")]
    public: PathBuf,
    #[arg(long)]
    sig: PathBuf,
    #[arg(long = "in")]
    input: Option<PathBuf>,
}

#[derive(Args)]
struct RecordAddArgs {
    #[arg(long)]
    store: PathBuf,
    /// 32 lowercase hex characters.
    #[arg(long)]
    patient: String,
    #[arg(long)]
    timestamp: u64,
    #[arg(long)]
    measurement: String,
    #[arg(long)]
    value: String,
    #[arg(long, default_value = "")]
    unit: String,
}

#[derive(Args)]
struct PeerKeys {
    /// Own RSA keypair file.
    #[arg(long)]
    key: PathBuf,
    /// The other party's RSA public key file.
    #[arg(long)]
    peer: PathBuf,
}

#[derive(Args)]
struct SealArgs {
    #[command(flatten)]
    keys: PeerKeys,
    #[arg(long, default_value = "AES128")]
    suite: BlockCipherSuite,
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OpenArgs {
    #[command(flatten)]
    keys: PeerKeys,
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SendArgs {
    #[command(flatten)]
    keys: PeerKeys,
    #[arg(long, default_value = "AES128")]
    suite: BlockCipherSuite,
    /// Records per frame.
    #[arg(long, default_value_t = 16, value_parser = clap::value_parser!(u64).range(1..))]
    batch: u64,
    /// Frames between session key rotations.
    #[arg(long, default_value_t = DEFAULT_ROTATION_PERIOD, value_parser = clap::value_parser!(u64).range(1..))]
    rotate_every: u64,
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReceiveArgs {
    #[command(flatten)]
    keys: PeerKeys,
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Append accepted records to this store as well.
    #[arg(long)]
    store: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated suite names; all suites when absent.
    #[arg(long, value_delimiter = ',')]
    suites: Option<Vec<BlockCipherSuite>>,
    #[arg(long, default_value_t = 1024)]
    rsa_bits: u64,
    #[arg(long, default_value_t = 1 << 20)]
    payload: usize,
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(3..))]
    repetitions: u64,
    /// Also time RSA private-key operations.
    #[arg(long)]
    rsa_decrypt: bool,
}

#[derive(Args)]
struct AttackCycleArgs {
    #[arg(long)]
    e: String,
    #[arg(long)]
    n: String,
    #[arg(long)]
    c: String,
    #[arg(long, default_value_t = 1_000_000)]
    max_iterations: u64,
}

#[derive(Args)]
struct AttackDesArgs {
    #[arg(long, default_value_t = 16)]
    bits: u32,
    /// Known pair and template as 16 hex digits; a random task is built when absent.
    #[arg(long, requires_all = ["ciphertext", "template"])]
    plaintext: Option<String>,
    #[arg(long)]
    ciphertext: Option<String>,
    #[arg(long)]
    template: Option<String>,
}

enum Failure {
    Usage(String),
    Crypto(String),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<medseal::Error> for Failure {
    fn from(e: medseal::Error) -> Self {
        match e {
            medseal::Error::Io(msg) => Failure::Usage(msg),
            other => Failure::Crypto(other.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn read_input(path: &Option<PathBuf>) -> io::Result<Vec<u8>> {
    match path {
        Some(p) => fs::read(p).map_err(|e| io::Error::new(e.kind(), format!("{}: {e}", p.display()))),
        None => {
            let mut buf = Vec::new();
            io::stdin().read_to_end(&mut buf)?;
            Ok(buf)
        }
    }
}

fn read_text(path: &Path) -> io::Result<String> {
    fs::read_to_string(path).map_err(|e| io::Error::new(e.kind(), format!("{}: {e}", path.display())))
}

fn write_output(path: &Option<PathBuf>, bytes: &[u8]) -> io::Result<()> {
    match path {
        Some(p) => fs::write(p, bytes),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()
        }
    }
}

fn records_text(bytes: Vec<u8>) -> Result<String, Failure> {
    String::from_utf8(bytes).map_err(|_| Failure::Usage("record file is not UTF-8".into()))
}

fn load_keypair(path: &Path) -> Result<RsaKeyPair, Failure> {
    let keys = RsaKeyPair::from_file_str(&read_text(path)?)?;
    Ok(keys)
}

fn load_public(path: &Path) -> Result<RsaPublicKey, Failure> {
    Ok(RsaPublicKey::from_file_str(&read_text(path)?)?)
}

fn load_block_key(path: &Path) -> Result<BlockKey, Failure> {
    let mut keys = parse_key_file(&read_text(path)?)?;
    match keys.len() {
        1 => Ok(keys.remove(0)),
        n => Err(Failure::Usage(format!("{}: expected one key line, found {n}", path.display()))),
    }
}

fn parse_u64_hex(s: &str, what: &str) -> Result<u64, Failure> {
    u64::from_str_radix(s.trim_start_matches("0x"), 16)
        .map_err(|_| Failure::Usage(format!("{what} must be 16 hex digits")))
}

fn keygen(args: KeygenArgs, rng: &mut ChaCha8Rng) -> Outcome {
    if let Some(suite) = args.suite {
        println!("{}", BlockKey::generate(suite, rng).to_line());
        return Ok(());
    }
    let bits = args.rsa_bits.expect("clap enforces one of suite or rsa-bits");
    if bits < 16 {
        return Err(Failure::Usage("--rsa-bits must be at least 16".into()));
    }
    let keys = RsaKeyPair::generate(bits, rng);
    match args.out {
        Some(prefix) => {
            let with_ext = |ext: &str| {
                let mut p = prefix.clone().into_os_string();
                p.push(ext);
                PathBuf::from(p)
            };
            fs::write(with_ext(".pub"), keys.public().to_file_string())?;
            fs::write(with_ext(".key"), keys.to_file_string())?;
            println!("{}", hex::encode(keys.public().key_id()));
        }
        None => print!("{}", keys.to_file_string()),
    }
    Ok(())
}

fn encrypt(args: CipherArgs, rng: &mut ChaCha8Rng) -> Outcome {
    let key = load_block_key(&args.key)?;
    let cipher = Cipher::new(&key);
    let data = read_input(&args.input)?;
    let bs = key.suite().block_size();
    let mut out = Vec::new();
    let iv = match args.mode {
        Mode::Cbc => {
            let iv = InitializationVector::random(bs, rng);
            out.extend_from_slice(iv.as_bytes());
            iv
        }
        Mode::Ecb => InitializationVector::zero(bs),
    };
    out.extend(seal_bytes(&cipher, &iv, args.mode, &data)?);
    Ok(write_output(&args.out, &out)?)
}

fn decrypt(args: CipherArgs) -> Outcome {
    let key = load_block_key(&args.key)?;
    let cipher = Cipher::new(&key);
    let data = read_input(&args.input)?;
    let bs = key.suite().block_size();
    let (iv, body) = match args.mode {
        Mode::Cbc if data.len() < bs => return Err(Failure::Crypto("input shorter than one IV".into())),
        Mode::Cbc => (InitializationVector::new(&data[..bs]), &data[bs..]),
        Mode::Ecb => (InitializationVector::zero(bs), &data[..]),
    };
    Ok(write_output(&args.out, &open_bytes(&cipher, &iv, args.mode, body)?)?)
}

fn sign(args: SignArgs) -> Outcome {
    let keys = load_keypair(&args.key)?;
    let sig = digsig::sign(&digsig::hash(&read_input(&args.input)?), &keys.private());
    Ok(write_output(&args.out, sig.to_file_string().as_bytes())?)
}

fn verify(args: VerifyArgs) -> Outcome {
    let public = load_public(&args.public)?;
    let sig = Signature::from_file_str(&read_text(&args.sig)?)?;
    if digsig::verify(&digsig::hash(&read_input(&args.input)?), &sig, &public) {
        println!("valid");
        Ok(())
    } else {
        println!("invalid");
        Err(Failure::Crypto("signature does not verify".into()))
    }
}

fn record_add(args: RecordAddArgs) -> Outcome {
    let record = PatientRecord::new(
        args.patient.parse()?,
        args.timestamp,
        &args.measurement,
        args.value.parse()?,
        &args.unit,
    )
    .map_err(|e| Failure::Usage(e.to_string()))?;
    let mut store = RecordStore::open(&args.store)?;
    store.append(record)?;
    println!("{}", store.len());
    Ok(())
}

fn sessions_keys(keys: &PeerKeys) -> Result<(Arc<RsaKeyPair>, RsaPublicKey), Failure> {
    Ok((Arc::new(load_keypair(&keys.key)?), load_public(&keys.peer)?))
}

fn send_frames(
    keys: &PeerKeys,
    suite: BlockCipherSuite,
    batch: usize,
    period: u64,
    input: &Option<PathBuf>,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<u8>, Failure> {
    let (own, peer) = sessions_keys(keys)?;
    let records = parse_records(&records_text(read_input(input)?)?).map_err(|e| Failure::Usage(e.to_string()))?;
    let (mut session, first) = start_session(own, peer, suite, period, rng)?;
    let mut out = encode_frame(&first);
    for chunk in records.chunks(batch) {
        out.extend(encode_frame(&session.seal_envelope(chunk, rng)?));
    }
    Ok(out)
}

fn seal(args: SealArgs, rng: &mut ChaCha8Rng) -> Outcome {
    let frames = send_frames(&args.keys, args.suite, usize::MAX, u64::MAX, &args.input, rng)?;
    Ok(write_output(&args.out, &frames)?)
}

fn open(args: OpenArgs, rng: &mut ChaCha8Rng) -> Outcome {
    let (own, peer) = sessions_keys(&args.keys)?;
    let mut session = Session::respond(own, peer, DEFAULT_ROTATION_PERIOD, rng);
    let mut records = Vec::new();
    for env in decode_frame_stream(&read_input(&args.input)?)? {
        records.extend(session.open_envelope(&env)?);
    }
    Ok(write_output(&args.out, serialize_records(&records).as_bytes())?)
}

fn send(args: SendArgs, rng: &mut ChaCha8Rng) -> Outcome {
    let batch = usize::try_from(args.batch).unwrap_or(usize::MAX);
    let frames = send_frames(&args.keys, args.suite, batch, args.rotate_every, &args.input, rng)?;
    Ok(write_output(&args.out, &frames)?)
}

/// Accepts frames one at a time so a bad frame does not discard the
/// batches already delivered before it.
fn receive(args: ReceiveArgs, rng: &mut ChaCha8Rng) -> Outcome {
    let (own, peer) = sessions_keys(&args.keys)?;
    let mut session = Session::respond(own, peer, DEFAULT_ROTATION_PERIOD, rng);
    let mut store = args.store.as_ref().map(RecordStore::open).transpose()?;
    let bytes = read_input(&args.input)?;
    let mut rest = &bytes[..];
    let (mut accepted, mut rejected) = (0usize, 0usize);
    let mut stdout = io::stdout().lock();
    while !rest.is_empty() {
        let (env, used) = match decode_frame_prefix(rest) {
            Ok(parsed) => parsed,
            Err(e) => {
                eprintln!("frame {}: {e}; stopping", accepted + rejected);
                rejected += 1;
                break;
            }
        };
        rest = &rest[used..];
        match session.open_envelope(&env) {
            Ok(records) => {
                accepted += 1;
                stdout.write_all(serialize_records(&records).as_bytes())?;
                if let Some(store) = store.as_mut() {
                    for r in records {
                        store.append(r)?;
                    }
                }
            }
            Err(e) => {
                eprintln!("frame {}: {e}", accepted + rejected);
                rejected += 1;
            }
        }
    }
    stdout.flush()?;
    eprintln!("{accepted} frames accepted, {rejected} rejected");
    if rejected > 0 {
        return Err(Failure::Crypto(format!("{rejected} frames rejected")));
    }
    Ok(())
}

fn bench(args: BenchArgs, seed: u64) -> Outcome {
    if args.rsa_bits < 16 {
        return Err(Failure::Usage("--rsa-bits must be at least 16".into()));
    }
    let config = BenchConfig {
        suites: args.suites.unwrap_or_else(|| BlockCipherSuite::ALL.to_vec()),
        rsa_bits: args.rsa_bits,
        payload_size: args.payload,
        repetitions: args.repetitions as usize,
        seed,
        rsa_decrypt: args.rsa_decrypt,
    };
    print!("{}", run_benchmark(&config)?.to_tsv());
    Ok(())
}

fn attack_cycle(args: AttackCycleArgs) -> Outcome {
    let parse = |s: &str| rsa::parse_integer(s).map_err(|e| Failure::Usage(e.to_string()));
    let key = RsaPublicKey {
        e: parse(&args.e)?,
        n: parse(&args.n)?,
    };
    match rsa::cycle_attack(&parse(&args.c)?, &key, args.max_iterations)? {
        Some(found) => {
            println!("plaintext={}", found.plaintext);
            println!("iterations={}", found.iterations);
            Ok(())
        }
        None => Err(Failure::Crypto(format!("no cycle within {} iterations", args.max_iterations))),
    }
}

fn attack_des(args: AttackDesArgs, rng: &mut ChaCha8Rng) -> Outcome {
    if args.bits > MAX_UNKNOWN_KEY_BITS {
        return Err(Failure::Usage(format!("--bits may be at most {MAX_UNKNOWN_KEY_BITS}")));
    }
    let task = match (&args.plaintext, &args.ciphertext, &args.template) {
        (Some(p), Some(c), Some(t)) => BruteForceTask {
            known_plaintext: parse_u64_hex(p, "--plaintext")?,
            known_ciphertext: parse_u64_hex(c, "--ciphertext")?,
            unknown_key_bits: args.bits,
            fixed_key_template: parse_u64_hex(t, "--template")?,
        },
        _ => BruteForceTask::from_key(rng.gen(), rng.gen(), args.bits),
    };
    let start = Instant::now();
    let found = des_brute_force(&task)?;
    let elapsed = start.elapsed();
    match found {
        Some(key) => {
            debug_assert_eq!(Des::new(key).encrypt_u64(task.known_plaintext), task.known_ciphertext);
            println!("plaintext={:016x}", task.known_plaintext);
            println!("ciphertext={:016x}", task.known_ciphertext);
            println!("key={key:016x}");
            println!("candidates={}", 1u64 << task.unknown_key_bits);
            println!("seconds={:.3}", elapsed.as_secs_f64());
            Ok(())
        }
        None => Err(Failure::Crypto("no key matches the template".into())),
    }
}

fn run(cli: Cli) -> Outcome {
    let seed = cli.seed.unwrap_or_else(|| rand::thread_rng().gen());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match cli.command {
        Command::Keygen(a) => keygen(a, &mut rng),
        Command::Encrypt(a) => encrypt(a, &mut rng),
        Command::Decrypt(a) => decrypt(a),
        Command::Sign(a) => sign(a),
        Command::Verify(a) => verify(a),
        Command::RecordAdd(a) => record_add(a),
        Command::Seal(a) => seal(a, &mut rng),
        Command::Open(a) => open(a, &mut rng),
        Command::Send(a) => send(a, &mut rng),
        Command::Receive(a) => receive(a, &mut rng),
        Command::Bench(a) => bench(a, seed),
        Command::AttackCycle(a) => attack_cycle(a),
        Command::AttackDes(a) => attack_des(a, &mut rng),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("medseal: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Crypto(msg)) => {
            eprintln!("medseal: {msg}");
            ExitCode::from(2)
        }
    }
}
