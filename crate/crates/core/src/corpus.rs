//! The table of ribbon knots with at most ten crossings, and a replay
//! harness that recomputes every column.
//!
//! One record per line, fields separated by `|`:
//!
//! ```text
//! name|sr_flag|delta2|det|delta_prime|factorization
//! 6_1|yes|0|9|2 - 5*t + 2*t^2|F(2,0,0)
//! 10_3|no|1|25|6 - 13*t + 6*t^2|
//! ```

use std::collections::HashSet;
use std::fmt;
use std::path::Path;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::invariants::{delta2, knot_det};
use crate::laurent::{LaurentPoly, NormalForm};
use crate::srpoly::{product_formula, SRDecomposition};
use crate::srsearch::{classify_with, CandidateTable, SRClassification};

/// The shipped table, embedded at build time.
pub const TABLE1: &str = include_str!("../data/table1.txt");

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KnotRecord {
    pub name: String,
    pub sr_flag: bool,
    pub delta2: BigUint,
    pub det: BigUint,
    pub delta_prime: NormalForm,
    pub factorization: Option<SRDecomposition>,
}

impl fmt::Display for KnotRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}|{}|{}|{}|{}|",
            self.name,
            if self.sr_flag { "yes" } else { "no" },
            self.delta2,
            self.det,
            self.delta_prime
        )?;
        if let Some(d) = &self.factorization {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

fn parse_line(line: &str, lineno: usize) -> Result<KnotRecord> {
    let err = |msg: String| Error::Corpus { line: lineno, msg };
    let fields: Vec<&str> = line.split('|').collect();
    if fields.len() != 6 {
        return Err(err(format!("expected 6 fields, found {}", fields.len())));
    }
    let name = fields[0].trim();
    if name.is_empty() {
        return Err(err("empty name".into()));
    }
    let sr_flag = match fields[1].trim() {
        "yes" => true,
        "no" => false,
        other => return Err(err(format!("sr_flag must be yes or no, found {other:?}"))),
    };
    let int = |s: &str, what: &str| -> Result<BigUint> {
        s.trim()
            .parse()
            .map_err(|_| err(format!("{what} is not a non-negative integer: {s:?}")))
    };
    let delta2 = int(fields[2], "delta2")?;
    let det = int(fields[3], "det")?;
    let poly: LaurentPoly = fields[4]
        .parse()
        .map_err(|e| err(format!("delta_prime: {e}")))?;
    let delta_prime = poly
        .normalize()
        .map_err(|e| err(format!("delta_prime: {e}")))?;
    if delta_prime.poly() != &poly {
        return Err(err(format!("delta_prime is not in normal form: {poly}")));
    }
    let fact = fields[5].trim();
    let factorization = if fact.is_empty() {
        None
    } else {
        Some(
            fact.parse::<SRDecomposition>()
                .map_err(|e| err(format!("factorization: {e}")))?,
        )
    };
    if sr_flag != factorization.is_some() {
        return Err(err(
            "a factorization must be given exactly when sr_flag is yes".into(),
        ));
    }
    Ok(KnotRecord {
        name: name.to_string(),
        sr_flag,
        delta2,
        det,
        delta_prime,
        factorization,
    })
}

/// Parses corpus text.  Line numbers in errors are 1-based.
pub fn parse_corpus(text: &str) -> Result<Vec<KnotRecord>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let rec = parse_line(line, i + 1)?;
        if !seen.insert(rec.name.clone()) {
            return Err(Error::DuplicateRecord(rec.name));
        }
        out.push(rec);
    }
    Ok(out)
}

pub fn load_corpus(path: impl AsRef<Path>) -> Result<Vec<KnotRecord>> {
    parse_corpus(&std::fs::read_to_string(path)?)
}

/// The embedded table.
pub fn table1() -> Vec<KnotRecord> {
    parse_corpus(TABLE1).expect("embedded table parses")
}

/// Serializes records, one per line with a trailing newline.
pub fn save_corpus(records: &[KnotRecord]) -> String {
    records.iter().map(|r| format!("{r}\n")).collect()
}

pub fn write_corpus(path: impl AsRef<Path>, records: &[KnotRecord]) -> Result<()> {
    std::fs::write(path, save_corpus(records))?;
    Ok(())
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CheckOutcome {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckOutcome::Pass => "pass",
            CheckOutcome::Fail => "FAIL",
            CheckOutcome::Skipped => "skip",
        })
    }
}

fn outcome(ok: bool) -> CheckOutcome {
    if ok {
        CheckOutcome::Pass
    } else {
        CheckOutcome::Fail
    }
}

/// Result of replaying one record.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RecordReport {
    pub name: String,
    pub delta2: CheckOutcome,
    pub det: CheckOutcome,
    pub factorization: CheckOutcome,
    pub classify: CheckOutcome,
    pub classification: SRClassification,
    /// The polynomial the listed factorization actually produces.
    pub factorization_product: Option<NormalForm>,
}

impl RecordReport {
    pub fn passed(&self) -> bool {
        [self.delta2, self.det, self.factorization, self.classify]
            .iter()
            .all(|&c| c != CheckOutcome::Fail)
    }
}

impl fmt::Display for RecordReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "row={} delta2={} det={} factorization={} classify={} verdict=",
            self.name, self.delta2, self.det, self.factorization, self.classify
        )?;
        match &self.classification {
            SRClassification::PolyCompatible(c) => {
                write!(f, "POLY_COMPATIBLE certificates={}", c.len())?
            }
            SRClassification::NotSr(o) => write!(f, "NOT_SR obstruction={o}")?,
        }
        if self.factorization == CheckOutcome::Fail {
            if let Some(p) = &self.factorization_product {
                write!(f, " factorization_product=\"{p}\"")?;
            }
        }
        Ok(())
    }
}

/// Recomputes δ₂, the determinant, the factorization product and the
/// classification of one record.
pub fn verify_record(r: &KnotRecord) -> RecordReport {
    verify_with(r, None)
}

fn verify_with(r: &KnotRecord, table: Option<&CandidateTable>) -> RecordReport {
    let dp = &r.delta_prime;
    let product = r
        .factorization
        .as_ref()
        .map(|d| product_formula(&LaurentPoly::one(), d).expect("unit base"));
    let factorization = match &product {
        None => CheckOutcome::Skipped,
        Some(p) => outcome(p.poly().equal_up_to_unit(dp.poly())),
    };
    let classification = classify_with(dp, table);
    RecordReport {
        name: r.name.clone(),
        delta2: outcome(delta2(dp).value() == &r.delta2),
        det: outcome(knot_det(dp) == r.det),
        factorization,
        classify: outcome(r.sr_flag != classification.is_not_sr()),
        classification,
        factorization_product: product,
    }
}

/// Replays every record in parallel; reports keep input order.
pub fn verify_corpus(records: &[KnotRecord]) -> Vec<RecordReport> {
    let max_span = records
        .iter()
        .map(|r| r.delta_prime.degree())
        .max()
        .unwrap_or(0);
    let table = CandidateTable::new(max_span);
    records
        .par_iter()
        .map(|r| verify_with(r, Some(&table)))
        .collect()
}
