//! Patient measurement rows and the append-only file that stores them.
//!
//! Line format, UTF-8: `hex(patient_id) TAB timestamp TAB measurement TAB value TAB unit`.
//! The same lines, newline-terminated, are what travels inside an envelope.

use std::collections::HashMap;
use std::fmt;
use std::fs::{File, OpenOptions};
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::{Error, Result};

pub const MAX_LABEL_BYTES: usize = 64;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PatientId(pub [u8; 16]);

impl fmt::Debug for PatientId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PatientId({})", hex::encode(self.0))
    }
}

impl fmt::Display for PatientId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&hex::encode(self.0))
    }
}

impl FromStr for PatientId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.len() != 32 || s.chars().any(|c| c.is_ascii_uppercase()) {
            return Err(Error::Record(format!("patient id must be 32 lowercase hex chars: `{s}`")));
        }
        let bytes = hex::decode(s).map_err(|e| Error::Record(e.to_string()))?;
        Ok(PatientId(bytes.try_into().unwrap()))
    }
}

/// A decimal number kept in the exact text it was written in, so records
/// survive a round trip byte for byte.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DecimalValue(String);

impl DecimalValue {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn to_f64(&self) -> f64 {
        self.0.parse().expect("validated decimal")
    }
}

impl FromStr for DecimalValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let digits = s.strip_prefix('-').unwrap_or(s);
        let (int, frac) = match digits.split_once('.') {
            Some((i, f)) => (i, Some(f)),
            None => (digits, None),
        };
        let all_digits = |p: &str| !p.is_empty() && p.bytes().all(|b| b.is_ascii_digit());
        if !all_digits(int) || frac.is_some_and(|f| !all_digits(f)) || s.len() > MAX_LABEL_BYTES {
            return Err(Error::Record(format!("not a decimal number: `{s}`")));
        }
        Ok(DecimalValue(s.to_string()))
    }
}

impl From<u32> for DecimalValue {
    fn from(v: u32) -> Self {
        DecimalValue(v.to_string())
    }
}

impl fmt::Display for DecimalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PatientRecord {
    pub patient_id: PatientId,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
    pub measurement: String,
    pub value: DecimalValue,
    pub unit: String,
}

fn check_label(what: &str, s: &str, allow_empty: bool) -> Result<()> {
    if (!allow_empty && s.is_empty())
        || s.len() > MAX_LABEL_BYTES
        || s.chars().any(|c| c == '\t' || c == '\n' || c == '\r')
    {
        return Err(Error::Record(format!("invalid {what}: `{s}`")));
    }
    Ok(())
}

impl PatientRecord {
    pub fn new(
        patient_id: PatientId,
        timestamp: u64,
        measurement: &str,
        value: DecimalValue,
        unit: &str,
    ) -> Result<Self> {
        check_label("measurement", measurement, false)?;
        check_label("unit", unit, true)?;
        Ok(PatientRecord {
            patient_id,
            timestamp,
            measurement: measurement.to_string(),
            value,
            unit: unit.to_string(),
        })
    }

    /// The record as one line, without the trailing newline.
    pub fn to_line(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{}",
            self.patient_id, self.timestamp, self.measurement, self.value, self.unit
        )
    }

    pub fn from_line(line: &str) -> Result<Self> {
        let fields: Vec<&str> = line.split('\t').collect();
        let [id, ts, measurement, value, unit] = fields[..] else {
            return Err(Error::Record(format!("expected 5 tab-separated fields: `{line}`")));
        };
        if ts.is_empty() || !ts.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Record(format!("bad timestamp `{ts}`")));
        }
        let timestamp = ts.parse().map_err(|_| Error::Record(format!("bad timestamp `{ts}`")))?;
        PatientRecord::new(id.parse()?, timestamp, measurement, value.parse()?, unit)
    }
}

/// Newline-terminated lines, one per record.
pub fn serialize_records(records: &[PatientRecord]) -> String {
    records.iter().map(|r| r.to_line() + "\n").collect()
}

pub fn parse_records(text: &str) -> Result<Vec<PatientRecord>> {
    if text.is_empty() {
        return Ok(Vec::new());
    }
    let body = text
        .strip_suffix('\n')
        .ok_or_else(|| Error::Record("record text must end with a newline".into()))?;
    body.split('\n').map(PatientRecord::from_line).collect()
}

/// Append-only record file. The store holds an exclusive lock on the file
/// for as long as it is open, so there is one writer at a time.
#[derive(Debug)]
pub struct RecordStore {
    path: PathBuf,
    file: File,
    records: Vec<PatientRecord>,
    last_seen: HashMap<PatientId, u64>,
}

fn check_order(last_seen: &HashMap<PatientId, u64>, record: &PatientRecord) -> Result<()> {
    match last_seen.get(&record.patient_id) {
        Some(&last) if record.timestamp < last => Err(Error::Order {
            last,
            got: record.timestamp,
        }),
        _ => Ok(()),
    }
}

impl RecordStore {
    /// Open or create the store at `path`. Fails if another store holds the lock.
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let mut file = OpenOptions::new()
            .read(true)
            .append(true)
            .create(true)
            .open(&path)?;
        file.try_lock()
            .map_err(|_| Error::Io(format!("{} is locked by another writer", path.display())))?;
        let mut text = String::new();
        file.read_to_string(&mut text)?;
        let mut store = RecordStore {
            path,
            file,
            records: Vec::new(),
            last_seen: HashMap::new(),
        };
        for record in parse_records(&text)? {
            check_order(&store.last_seen, &record)?;
            store.last_seen.insert(record.patient_id, record.timestamp);
            store.records.push(record);
        }
        Ok(store)
    }

    /// Read the file under a shared lock without taking ownership of it.
    pub fn snapshot(path: impl AsRef<Path>) -> Result<Vec<PatientRecord>> {
        let mut file = File::open(path)?;
        file.lock_shared()?;
        let mut text = String::new();
        file.read_to_string(&mut text)?;
        parse_records(&text)
    }

    /// Persist one row. Timestamps may not go backwards for a patient.
    pub fn append(&mut self, record: PatientRecord) -> Result<()> {
        check_order(&self.last_seen, &record)?;
        self.file.write_all((record.to_line() + "\n").as_bytes())?;
        self.file.flush()?;
        self.last_seen.insert(record.patient_id, record.timestamp);
        self.records.push(record);
        Ok(())
    }

    pub fn records(&self) -> &[PatientRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn path(&self) -> &Path {
        &self.path
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(id: u8, ts: u64, value: &str) -> PatientRecord {
        PatientRecord::new(PatientId([id; 16]), ts, "heart-rate", value.parse().unwrap(), "bpm").unwrap()
    }

    #[test]
    fn line_round_trip() {
        let r = rec(0xab, 1_700_000_000, "72.50");
        let line = r.to_line();
        assert_eq!(line, format!("{}\t1700000000\theart-rate\t72.50\tbpm", "ab".repeat(16)));
        assert_eq!(PatientRecord::from_line(&line).unwrap(), r);
    }

    #[test]
    fn rejects_malformed() {
        assert!("7a".parse::<DecimalValue>().is_err());
        assert!("".parse::<DecimalValue>().is_err());
        assert!("1.".parse::<DecimalValue>().is_err());
        assert!("-0.5".parse::<DecimalValue>().is_ok());
        assert!(PatientRecord::new(PatientId([0; 16]), 0, "a\tb", 1.into(), "").is_err());
        assert!(PatientRecord::new(PatientId([0; 16]), 0, "", 1.into(), "").is_err());
        assert!(PatientRecord::from_line("00\t1\thr\t1\tbpm").is_err());
        assert!(PatientRecord::from_line(&format!("{}\t-1\thr\t1\tbpm", "00".repeat(16))).is_err());
        assert!(parse_records("no newline").is_err());
        assert_eq!(parse_records("").unwrap(), vec![]);
    }

    #[test]
    fn store_append_and_order() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("records.tsv");
        let mut store = RecordStore::open(&path).unwrap();
        assert!(store.is_empty());
        store.append(rec(1, 100, "70")).unwrap();
        assert_eq!(store.len(), 1);
        store.append(rec(2, 50, "70")).unwrap();
        assert_eq!(
            store.append(rec(1, 99, "71")),
            Err(Error::Order { last: 100, got: 99 })
        );
        store.append(rec(1, 100, "71")).unwrap();
        assert_eq!(store.len(), 3);
    }

    #[test]
    fn single_writer() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("records.tsv");
        let mut store = RecordStore::open(&path).unwrap();
        assert!(matches!(RecordStore::open(&path), Err(Error::Io(_))));
        store.append(rec(1, 1, "1")).unwrap();
        drop(store);
        assert_eq!(RecordStore::open(&path).unwrap().len(), 1);
    }

    #[test]
    fn thousand_appends_reload() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("records.tsv");
        let mut expected = Vec::new();
        {
            let mut store = RecordStore::open(&path).unwrap();
            for i in 0..1000u64 {
                let r = rec((i % 7) as u8, i / 3, &format!("{}.{}", 60 + i % 40, i % 10));
                store.append(r.clone()).unwrap();
                expected.push(r);
            }
        }
        assert_eq!(RecordStore::open(&path).unwrap().records(), &expected[..]);
        assert_eq!(RecordStore::snapshot(&path).unwrap(), expected);
    }
}
