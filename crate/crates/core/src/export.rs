//! CSV export and the JSON-lines verdict cache.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::StrictPartition;
use crate::verify::{Classification, ShiftRow, VerdictRecord};

/// Schema version written to every cache line.
pub const CACHE_VERSION: u32 = 1;

const VERDICT_HEADER: [&str; 12] = [
    "n",
    "u",
    "r",
    "candidates",
    "e_min",
    "e_winners",
    "winners",
    "refined_by_polynomial",
    "classification",
    "e_lex",
    "e_revlex",
    "closed_forms_agree",
];

fn join_partitions(list: &[StrictPartition]) -> String {
    list.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(";")
}

fn split_partitions(field: &str) -> Result<Vec<StrictPartition>> {
    if field.is_empty() {
        return Ok(Vec::new());
    }
    field.split(';').map(str::parse).collect()
}

fn csv_error(err: csv::Error) -> Error {
    Error::validation(format!("csv: {err}"))
}

/// Verdict records as CSV with a header row. Partitions are comma-joined (and
/// therefore quoted); several partitions in one field are separated by `;`.
pub fn export_csv(records: &[VerdictRecord]) -> String {
    let mut out = csv::Writer::from_writer(Vec::new());
    out.write_record(VERDICT_HEADER).expect("writing to memory");
    for rec in records {
        out.write_record([
            rec.n.to_string(),
            rec.u.to_string(),
            rec.r.to_string(),
            rec.candidates.to_string(),
            rec.e_min.to_string(),
            join_partitions(&rec.e_winners),
            join_partitions(&rec.winners),
            rec.refined_by_polynomial.to_string(),
            rec.classification.to_string(),
            rec.e_lex.to_string(),
            rec.e_revlex.to_string(),
            rec.closed_forms_agree.to_string(),
        ])
        .expect("writing to memory");
    }
    String::from_utf8(out.into_inner().expect("flush to memory")).expect("csv output is UTF-8")
}

/// Parses text produced by [`export_csv`].
pub fn parse_csv(text: &str) -> Result<Vec<VerdictRecord>> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader.headers().map_err(csv_error)?.clone();
    if header.iter().ne(VERDICT_HEADER) {
        return Err(Error::validation(format!(
            "unexpected csv header {header:?}"
        )));
    }
    let mut records = Vec::new();
    for row in reader.records() {
        let row = row.map_err(csv_error)?;
        let field = |i: usize| row.get(i).unwrap_or("");
        let num = |i: usize| {
            field(i).parse::<u64>().map_err(|_| {
                Error::validation(format!("bad {} field {:?}", VERDICT_HEADER[i], field(i)))
            })
        };
        let big = |i: usize| {
            field(i).parse().map_err(|_| {
                Error::validation(format!("bad {} field {:?}", VERDICT_HEADER[i], field(i)))
            })
        };
        let flag = |i: usize| {
            field(i).parse::<bool>().map_err(|_| {
                Error::validation(format!("bad {} field {:?}", VERDICT_HEADER[i], field(i)))
            })
        };
        let classification: Classification =
            serde_json::from_value(serde_json::Value::String(field(8).to_owned()))
                .map_err(|_| Error::validation(format!("bad classification {:?}", field(8))))?;
        records.push(VerdictRecord {
            n: num(0)? as u32,
            u: num(1)?,
            r: num(2)? as u32,
            candidates: num(3)? as usize,
            e_min: big(4)?,
            e_winners: split_partitions(field(5))?,
            winners: split_partitions(field(6))?,
            refined_by_polynomial: flag(7)?,
            classification,
            e_lex: big(9)?,
            e_revlex: big(10)?,
            closed_forms_agree: flag(11)?,
        });
    }
    Ok(records)
}

/// Shift rows as CSV: `n, first, last, flips, boundaries, ties, pattern`.
pub fn export_shift_csv(rows: &[ShiftRow]) -> String {
    let joined = |v: &[u32]| {
        v.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(";")
    };
    let winner = |w: Option<crate::verify::SegmentWinner>| {
        w.map(|w| format!("{w:?}").to_uppercase())
            .unwrap_or_default()
    };
    let mut out = csv::Writer::from_writer(Vec::new());
    out.write_record([
        "n",
        "first",
        "last",
        "flips",
        "boundaries",
        "ties",
        "pattern",
    ])
    .expect("writing to memory");
    for row in rows {
        out.write_record([
            row.n.to_string(),
            winner(row.first),
            winner(row.last),
            row.flips().to_string(),
            joined(&row.boundaries),
            joined(&row.ties),
            row.pattern.clone(),
        ])
        .expect("writing to memory");
    }
    String::from_utf8(out.into_inner().expect("flush to memory")).expect("csv output is UTF-8")
}

#[derive(Serialize)]
struct CacheLineRef<'a> {
    v: u32,
    #[serde(flatten)]
    record: &'a VerdictRecord,
}

#[derive(Deserialize)]
struct CacheLine {
    v: u32,
    #[serde(flatten)]
    record: VerdictRecord,
}

/// One verdict as a cache line (no trailing newline).
pub fn cache_line(record: &VerdictRecord) -> String {
    serde_json::to_string(&CacheLineRef {
        v: CACHE_VERSION,
        record,
    })
    .expect("verdict records serialize")
}

/// Append-only JSON-lines store of verdicts keyed by `(n, u)`.
///
/// Every record is flushed as soon as it is written, so an interrupted run
/// loses at most the line being written; truncated lines are ignored on load.
#[derive(Debug)]
pub struct VerdictCache {
    path: PathBuf,
    records: BTreeMap<(u32, u64), VerdictRecord>,
    writer: BufWriter<File>,
}

impl VerdictCache {
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let io = |err: std::io::Error| Error::Resource(format!("{}: {err}", path.display()));
        let mut records = BTreeMap::new();
        let mut needs_newline = false;
        if path.exists() {
            let reader = BufReader::new(File::open(&path).map_err(io)?);
            let lines: Vec<String> = reader.lines().collect::<std::io::Result<_>>().map_err(io)?;
            let count = lines.len();
            for (idx, line) in lines.iter().enumerate() {
                if line.trim().is_empty() {
                    continue;
                }
                match serde_json::from_str::<CacheLine>(line) {
                    Ok(entry) if entry.v == CACHE_VERSION => {
                        records.insert((entry.record.n, entry.record.u), entry.record);
                    }
                    Ok(entry) => {
                        return Err(Error::validation(format!(
                            "{}:{}: unsupported cache version {}",
                            path.display(),
                            idx + 1,
                            entry.v
                        )))
                    }
                    // A line cut short by an interrupted write.
                    Err(err) if err.is_eof() => needs_newline = idx + 1 == count,
                    Err(err) => {
                        return Err(Error::validation(format!(
                            "{}:{}: {err}",
                            path.display(),
                            idx + 1
                        )))
                    }
                }
            }
        }
        let file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&path)
            .map_err(io)?;
        let mut writer = BufWriter::new(file);
        if needs_newline {
            writer.write_all(b"\n").map_err(io)?;
        }
        Ok(VerdictCache {
            path,
            records,
            writer,
        })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn get(&self, n: u32, u: u64) -> Option<&VerdictRecord> {
        self.records.get(&(n, u))
    }

    pub fn insert(&mut self, record: VerdictRecord) -> Result<()> {
        let io = |err: std::io::Error| Error::Resource(format!("{}: {err}", self.path.display()));
        let line = cache_line(&record);
        self.writer.write_all(line.as_bytes()).map_err(io)?;
        self.writer.write_all(b"\n").map_err(io)?;
        self.writer.flush().map_err(io)?;
        self.records.insert((record.n, record.u), record);
        Ok(())
    }

    /// All cached records for one `n`, ordered by `u`.
    pub fn records_for(&self, n: u32) -> Vec<VerdictRecord> {
        self.records
            .range((n, 0)..=(n, u64::MAX))
            .map(|(_, rec)| rec.clone())
            .collect()
    }
}
