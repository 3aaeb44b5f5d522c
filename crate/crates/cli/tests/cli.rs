use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn medseal(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_medseal"))
        .current_dir(dir)
        .args(["--seed", "7"])
        .args(args)
        .output()
        .unwrap()
}

fn ok(dir: &Path, args: &[&str]) -> String {
    let out = medseal(dir, args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn keypairs(dir: &Path) {
    ok(dir, &["keygen", "--rsa-bits", "512", "--out", "patient"]);
    let out = Command::new(env!("CARGO_BIN_EXE_medseal"))
        .current_dir(dir)
        .args(["--seed", "8", "keygen", "--rsa-bits", "512", "--out", "doctor"])
        .output()
        .unwrap();
    assert!(out.status.success());
}

fn record_file(dir: &Path, n: u64) {
    for i in 0..n {
        ok(
            dir,
            &[
                "record-add",
                "--store",
                "records.tsv",
                "--patient",
                "0f0e0d0c0b0a09080706050403020100",
                "--timestamp",
                &(1_700_000_000 + i).to_string(),
                "--measurement",
                "systolic",
                "--value",
                &format!("12{i}.0"),
                "--unit",
                "mmHg",
            ],
        );
    }
}

#[test]
fn keygen_suite_prints_one_hex_line() {
    let dir = tempfile::tempdir().unwrap();
    let out = ok(dir.path(), &["keygen", "--suite", "AES128"]);
    let lines: Vec<_> = out.lines().collect();
    assert_eq!(lines.len(), 1);
    let hex = lines[0].strip_prefix("AES128:").unwrap();
    assert_eq!(hex.len(), 32);
    assert!(hex.bytes().all(|b| b.is_ascii_hexdigit() && !b.is_ascii_uppercase()));
}

#[test]
fn seed_makes_output_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(ok(dir.path(), &["keygen", "--suite", "TDES"]), ok(dir.path(), &["keygen", "--suite", "TDES"]));
}

#[test]
fn attack_cycle_toy() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(ok(dir.path(), &["attack-cycle", "--e", "3", "--n", "33", "--c", "8"]), "plaintext=2\niterations=4\n");
}

#[test]
fn seal_open_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    keypairs(d);
    record_file(d, 5);
    for suite in ["DES", "TDES", "AES128", "AES192", "AES256", "BLOWFISH"] {
        ok(d, &["seal", "--key", "patient.key", "--peer", "doctor.pub", "--suite", suite, "--in", "records.tsv", "--out", "sealed.bin"]);
        ok(d, &["open", "--key", "doctor.key", "--peer", "patient.pub", "--in", "sealed.bin", "--out", "opened.tsv"]);
        assert_eq!(fs::read(d.join("records.tsv")).unwrap(), fs::read(d.join("opened.tsv")).unwrap(), "{suite}");
    }
}

#[test]
fn open_rejects_tampering_and_wrong_peer() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    keypairs(d);
    record_file(d, 3);
    ok(d, &["seal", "--key", "patient.key", "--peer", "doctor.pub", "--in", "records.tsv", "--out", "sealed.bin"]);
    let mut bytes = fs::read(d.join("sealed.bin")).unwrap();
    let last = bytes.len() - 3;
    bytes[last] ^= 1;
    fs::write(d.join("bad.bin"), &bytes).unwrap();
    let out = medseal(d, &["open", "--key", "doctor.key", "--peer", "patient.pub", "--in", "bad.bin"]);
    assert_eq!(code(&out), 2);
    let out = medseal(d, &["open", "--key", "doctor.key", "--peer", "doctor.pub", "--in", "sealed.bin"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn send_receive_with_rotation() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    keypairs(d);
    record_file(d, 7);
    ok(d, &["send", "--key", "patient.key", "--peer", "doctor.pub", "--in", "records.tsv", "--batch", "2", "--rotate-every", "1", "--out", "stream.bin"]);
    let out = ok(d, &["receive", "--key", "doctor.key", "--peer", "patient.pub", "--in", "stream.bin", "--store", "inbox.tsv"]);
    let original = fs::read_to_string(d.join("records.tsv")).unwrap();
    assert_eq!(out, original);
    assert_eq!(fs::read_to_string(d.join("inbox.tsv")).unwrap(), original);
}

#[test]
fn receive_reports_replayed_frame() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    keypairs(d);
    record_file(d, 2);
    ok(d, &["send", "--key", "patient.key", "--peer", "doctor.pub", "--in", "records.tsv", "--out", "stream.bin"]);
    let mut stream = fs::read(d.join("stream.bin")).unwrap();
    stream.extend(stream.clone());
    fs::write(d.join("twice.bin"), stream).unwrap();
    let out = medseal(d, &["receive", "--key", "doctor.key", "--peer", "patient.pub", "--in", "twice.bin"]);
    assert_eq!(code(&out), 2);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), fs::read_to_string(d.join("records.tsv")).unwrap());
    assert!(String::from_utf8(out.stderr).unwrap().contains("replay"));
}

#[test]
fn encrypt_decrypt_round_trip_both_modes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("msg"), b"blood pressure 120/80, pulse 64").unwrap();
    for suite in ["DES", "BLOWFISH", "AES256"] {
        fs::write(d.join("key"), ok(d, &["keygen", "--suite", suite])).unwrap();
        for mode in ["ecb", "cbc"] {
            ok(d, &["encrypt", "--key", "key", "--mode", mode, "--in", "msg", "--out", "ct"]);
            ok(d, &["decrypt", "--key", "key", "--mode", mode, "--in", "ct", "--out", "pt"]);
            assert_eq!(fs::read(d.join("pt")).unwrap(), fs::read(d.join("msg")).unwrap(), "{suite} {mode}");
        }
    }
}

#[test]
fn sign_verify() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    keypairs(d);
    fs::write(d.join("doc"), b"discharge summary").unwrap();
    ok(d, &["sign", "--key", "doctor.key", "--in", "doc", "--out", "doc.sig"]);
    assert_eq!(ok(d, &["verify", "--pub", "doctor.pub", "--sig", "doc.sig", "--in", "doc"]), "valid\n");
    fs::write(d.join("doc"), b"discharge summary!").unwrap();
    let out = medseal(d, &["verify", "--pub", "doctor.pub", "--sig", "doc.sig", "--in", "doc"]);
    assert_eq!(code(&out), 2);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "invalid\n");
}

#[test]
fn record_add_rejects_time_regression() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    record_file(d, 2);
    let out = medseal(
        d,
        &["record-add", "--store", "records.tsv", "--patient", "0f0e0d0c0b0a09080706050403020100", "--timestamp", "5", "--measurement", "x", "--value", "1"],
    );
    assert_eq!(code(&out), 2);
}

#[test]
fn bench_emits_tsv() {
    let dir = tempfile::tempdir().unwrap();
    let out = ok(dir.path(), &["bench", "--suites", "AES128,DES", "--rsa-bits", "256", "--payload", "4096"]);
    let lines: Vec<_> = out.lines().collect();
    assert_eq!(lines[0], "algorithm\tdirection\tpayload_bytes\telapsed_seconds\tthroughput_bytes_per_second");
    assert_eq!(lines.len(), 6);
    assert!(lines[5].starts_with("RSA256\tencrypt\t4096\t"));
}

#[test]
fn attack_des_recovers_key() {
    let dir = tempfile::tempdir().unwrap();
    let out = ok(dir.path(), &["attack-des", "--bits", "12"]);
    assert!(out.contains("candidates=4096"));
    let out = ok(
        dir.path(),
        &["attack-des", "--bits", "0", "--plaintext", "0123456789abcdef", "--ciphertext", "85e813540f0ab405", "--template", "133457799bbcdff1"],
    );
    assert!(out.contains("key=133457799bbcdff1"));
    let out = medseal(dir.path(), &["attack-des", "--bits", "25"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(code(&medseal(d, &["no-such-command"])), 1);
    assert_eq!(code(&medseal(d, &["keygen"])), 1);
    assert_eq!(code(&medseal(d, &["keygen", "--suite", "ROT13"])), 1);
    assert_eq!(code(&medseal(d, &["encrypt", "--key", "missing", "--in", "missing"])), 1);
    assert_eq!(code(&medseal(d, &["attack-cycle", "--e", "3", "--n", "33", "--c", "99"])), 2);
    assert_eq!(code(&medseal(d, &["--help"])), 0);
}
