//! OEIS b-file parsing and sequence cross-validation.
//!
//! A b-file lists one `n a(n)` pair per line; `#` starts a comment. Index
//! conventions vary per sequence, so comparisons support either a fixed
//! index offset or automatic alignment of the first generated term against
//! the first few b-file entries.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum OeisError {
    #[error("malformed b-file at line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("mismatch at term {n}: generated {generated}, b-file has {listed:?}")]
    MismatchAt {
        n: u64,
        generated: u64,
        listed: Option<i64>,
    },
    #[error("cannot align first generated term {0} with the leading b-file entries")]
    OffsetUnresolved(u64),
}

/// A parsed b-file: strictly increasing indices with integer values.
pub struct BFile {
    entries: Vec<(i64, i64)>,
}

impl BFile {
    pub fn parse(text: &str) -> Result<BFile, OeisError> {
        let mut entries: Vec<(i64, i64)> = vec![];
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut parts = line.split_whitespace();
            let parse_int = |s: Option<&str>| -> Result<i64, OeisError> {
                s.and_then(|t| t.parse().ok()).ok_or(OeisError::Malformed {
                    line: lineno + 1,
                    reason: format!("expected two integers, got {line:?}"),
                })
            };
            let idx = parse_int(parts.next())?;
            let val = parse_int(parts.next())?;
            if parts.next().is_some() {
                return Err(OeisError::Malformed {
                    line: lineno + 1,
                    reason: "trailing fields".into(),
                });
            }
            if let Some(&(prev, _)) = entries.last() {
                if idx <= prev {
                    return Err(OeisError::Malformed {
                        line: lineno + 1,
                        reason: format!("index {idx} not increasing after {prev}"),
                    });
                }
            }
            entries.push((idx, val));
        }
        Ok(BFile { entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn value_at(&self, index: i64) -> Option<i64> {
        self.entries
            .binary_search_by_key(&index, |&(i, _)| i)
            .ok()
            .map(|pos| self.entries[pos].1)
    }

    pub fn first_entries(&self, k: usize) -> &[(i64, i64)] {
        &self.entries[..k.min(self.entries.len())]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OffsetSpec {
    /// Align the first generated term within the first three b-file entries.
    Auto,
    /// Compare term n against b-file index n + offset.
    Fixed(i64),
}

#[derive(Clone, Copy, Debug)]
pub struct MatchReport {
    /// Resolved offset: term n was compared against b-file index n + offset.
    pub offset: i64,
    pub compared: u64,
}

/// Compares `count` generated terms (n = 1..=count) against the b-file.
pub fn check_sequence(
    term: impl Fn(u64) -> u64,
    bfile: &BFile,
    count: u64,
    offset: OffsetSpec,
) -> Result<MatchReport, OeisError> {
    let offset = match offset {
        OffsetSpec::Fixed(k) => k,
        OffsetSpec::Auto => {
            let first = term(1);
            bfile
                .first_entries(3)
                .iter()
                .find(|&&(_, v)| v == first as i64)
                .map(|&(i, _)| i - 1)
                .ok_or(OeisError::OffsetUnresolved(first))?
        }
    };
    for n in 1..=count {
        let generated = term(n);
        let listed = bfile.value_at(n as i64 + offset);
        if listed != Some(generated as i64) {
            return Err(OeisError::MismatchAt { n, generated, listed });
        }
    }
    Ok(MatchReport { offset, compared: count })
}
