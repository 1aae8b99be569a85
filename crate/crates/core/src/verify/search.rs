//! Search for quasi group codes whose automorphism group is `<sigma>`.
//!
//! The scan covers sigma-invariant `[n,k]` codes outside the dimensions
//! where no such code exists (`k <= 4` or `k >= n-4`). Work is cut into
//! `(k, chunk)` units; each finished unit is appended to an optional
//! newline-delimited JSON journal and skipped when the run is repeated.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{Read, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{pool, triage, Counterexample, Tally, VerifyReport, CHUNKS, CONJECTURE_ID};
use crate::aut::{is_automorphism, paut_order, MAX_PAUT_LEN};
use crate::census::{shard_pair_invariant, Slice};
use crate::error::{invalid, too_large, Result};
use crate::fixed::fixed_point_witness;
use crate::gf2::LinearCode;
use crate::perm::canonical_sigma;

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub n: usize,
    pub k_lo: usize,
    pub k_hi: usize,
    pub slice: Slice,
    pub jobs: usize,
    pub journal: Option<PathBuf>,
}

impl SearchConfig {
    pub fn new(n: usize, k_lo: usize, k_hi: usize) -> Self {
        SearchConfig {
            n,
            k_lo,
            k_hi,
            slice: Slice::WHOLE,
            jobs: 1,
            journal: None,
        }
    }

    fn validate(&self) -> Result<()> {
        let n = self.n;
        if n > MAX_PAUT_LEN {
            return Err(too_large(format!("search limited to n <= {MAX_PAUT_LEN}, got {n}")));
        }
        if n == 0 || n % 2 == 1 {
            return Err(invalid(format!("n must be even, got {n}")));
        }
        if self.k_lo < 5 || self.k_lo > self.k_hi || self.k_hi + 5 > n {
            return Err(invalid(format!(
                "need 5 <= k_lo <= k_hi <= n - 5, got k in {}..={} for n = {n}; \
                 smaller and larger dimensions have no such code",
                self.k_lo, self.k_hi
            )));
        }
        Slice::new(self.slice.index, self.slice.total)?;
        Ok(())
    }

    fn part(&self, chunk: usize) -> Slice {
        Slice {
            index: self.slice.index + self.slice.total * chunk,
            total: self.slice.total * CHUNKS,
        }
    }
}

/// One finished `(k, chunk)` unit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JournalRecord {
    pub n: usize,
    pub k: usize,
    pub slice: Slice,
    pub chunk: usize,
    pub chunks: usize,
    pub scanned: u64,
    pub witnesses_checked: u64,
    pub counterexamples: Vec<Counterexample>,
}

impl JournalRecord {
    fn tally(&self) -> Tally {
        Tally {
            scanned: self.scanned,
            witnesses_checked: self.witnesses_checked,
            counterexamples: self.counterexamples.clone(),
        }
    }
}

/// `Some(reason)` when `PAut(C) = <sigma>`.
pub(crate) fn conjecture_failure(code: &LinearCode) -> Result<Option<String>> {
    Ok(classify(code)?.err())
}

/// `Ok(true)` when a validated fixed-point witness settled the code without
/// computing the whole group.
fn classify(code: &LinearCode) -> Result<std::result::Result<bool, String>> {
    let sigma = canonical_sigma(code.length())?;
    if !is_automorphism(code, &sigma)? {
        return Ok(Ok(false));
    }
    if let Some(beta) = fixed_point_witness(code, &sigma)? {
        if beta != sigma && is_automorphism(code, &beta)? {
            return Ok(Ok(true));
        }
    }
    if paut_order(code)? == 2 {
        return Ok(Err(triage(
            code,
            "PAut = <sigma> with sigma fixed-point-free: a quasi group code with PAut of order 2".into(),
        )));
    }
    Ok(Ok(false))
}

fn scan_unit(cfg: &SearchConfig, k: usize, chunk: usize) -> Result<JournalRecord> {
    let mut tally = Tally::default();
    for code in shard_pair_invariant(cfg.n, k, cfg.n / 2, cfg.part(chunk))? {
        tally.scanned += 1;
        match classify(&code)? {
            Ok(true) => tally.witnesses_checked += 1,
            Ok(false) => {}
            Err(reason) => tally.counterexamples.push(Counterexample::new(&code, reason)),
        }
    }
    Ok(JournalRecord {
        n: cfg.n,
        k,
        slice: cfg.slice,
        chunk,
        chunks: CHUNKS,
        scanned: tally.scanned,
        witnesses_checked: tally.witnesses_checked,
        counterexamples: tally.counterexamples,
    })
}

struct Journal {
    file: Mutex<File>,
}

impl Journal {
    /// Opens `path` for appending and returns the records already in it.
    /// Lines that do not parse (a torn final write) are ignored.
    fn open(path: &Path) -> Result<(Journal, Vec<JournalRecord>)> {
        let mut file = OpenOptions::new()
            .read(true)
            .append(true)
            .create(true)
            .open(path)?;
        let mut text = String::new();
        file.read_to_string(&mut text)?;
        let records = text
            .lines()
            .filter_map(|line| serde_json::from_str::<JournalRecord>(line).ok())
            .collect();
        if !text.is_empty() && !text.ends_with('\n') {
            file.seek(SeekFrom::End(0))?;
            file.write_all(b"\n")?;
            file.sync_data()?;
        }
        Ok((Journal { file: Mutex::new(file) }, records))
    }

    fn append(&self, record: &JournalRecord) -> Result<()> {
        let mut line = serde_json::to_string(record)?;
        line.push('\n');
        let mut file = self.file.lock().expect("journal writer poisoned");
        file.write_all(line.as_bytes())?;
        file.sync_data()?;
        Ok(())
    }
}

/// Scans the configured slice and reports every code with `PAut(C) = <sigma>`.
/// Codes settled by a validated fixed-point witness count as witnesses.
pub fn conjecture_search(cfg: &SearchConfig) -> Result<VerifyReport> {
    let started = Instant::now();
    cfg.validate()?;
    let (journal, previous) = match &cfg.journal {
        Some(path) => {
            let (j, r) = Journal::open(path)?;
            (Some(j), r)
        }
        None => (None, Vec::new()),
    };
    let mut done: BTreeMap<(usize, usize), JournalRecord> = BTreeMap::new();
    for r in previous {
        let matches = r.n == cfg.n
            && r.slice == cfg.slice
            && r.chunks == CHUNKS
            && (cfg.k_lo..=cfg.k_hi).contains(&r.k)
            && r.chunk < CHUNKS;
        if matches {
            done.entry((r.k, r.chunk)).or_insert(r);
        }
    }
    let pending: Vec<(usize, usize)> = (cfg.k_lo..=cfg.k_hi)
        .flat_map(|k| (0..CHUNKS).map(move |c| (k, c)))
        .filter(|key| !done.contains_key(key))
        .collect();
    let fresh: Vec<Result<JournalRecord>> = pool(cfg.jobs)?.install(|| {
        pending
            .par_iter()
            .map(|&(k, chunk)| {
                let record = scan_unit(cfg, k, chunk)?;
                if let Some(j) = &journal {
                    j.append(&record)?;
                }
                Ok(record)
            })
            .collect()
    });
    for r in fresh {
        let r = r?;
        done.insert((r.k, r.chunk), r);
    }
    let mut tally = Tally::default();
    for r in done.values() {
        tally.absorb(r.tally());
    }
    Ok(tally.into_report(CONJECTURE_ID, cfg.n, [cfg.k_lo, cfg.k_hi], cfg.slice, started))
}
