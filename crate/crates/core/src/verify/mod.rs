//! Exhaustive and randomized checks of the structural results on involutory
//! automorphisms, and the search harness for codes with `PAut(C) = <sigma>`.

mod checks;
pub mod sample;
mod search;

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::census::{shard, shard_pair_invariant, CensusSlice, CodeStream, Slice};
use crate::error::{invalid, Error, Result};
use crate::gf2::{LinearCode, Word};
use crate::perm::Perm;

pub use checks::{
    verify_dim_one, verify_dim_two, verify_four_dimensional, verify_fixed_interval,
    verify_fixed_point_witness, verify_flip_property, verify_half_dimension,
    verify_length_four, verify_no_sigma_group, verify_pair_involution_bound,
};
pub use search::{conjecture_search, JournalRecord, SearchConfig};

/// Identifiers accepted by [`run`], with a one-line description each.
pub const THEOREM_IDS: &[(&str, &str)] = &[
    ("lemma-2.1", "an involution fixes at least half the dimension (random planted codes)"),
    ("lemma-2.2", "PAut = <(1,2)...(t,t+1)>, t >= 3, forces f <= k-1 (exhaustive)"),
    ("prop-3.1", "one-dimensional codes: group order, quasi group and group code flags"),
    ("thm-3.2", "no two-dimensional code has PAut of order 2 (exhaustive)"),
    ("prop-3.4", "length 4, dimension 2: PAut = <transposition> characterization"),
    ("thm-4.2", "PAut = <sigma> forces ceil(k/2) <= f <= k-2 (exhaustive)"),
    ("thm-4.4", "no sigma-invariant [n,4] code has PAut = <sigma> (exhaustive, with witnesses)"),
    ("thm-5.1", "T(sigma) not full yields a commuting automorphism with fixed points (random)"),
    ("cor-4.8", "no sigma-invariant code of any dimension has PAut = <sigma> (exhaustive)"),
    ("lemma-4.1", "alpha_x sends w to w + x whenever T_x is inside T_y (random)"),
];

/// Identifier used for conjecture search reports.
pub const CONJECTURE_ID: &str = "conjecture";

/// One code on which a checked statement failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub generators: Vec<String>,
    pub reason: String,
    /// The involution the check was run against, in cycle notation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub involution: Option<String>,
    /// Extra words the check depends on.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub words: Vec<String>,
}

impl Counterexample {
    pub fn new(code: &LinearCode, reason: impl Into<String>) -> Self {
        Counterexample {
            generators: code.generators().iter().map(Word::to_bit_string).collect(),
            reason: reason.into(),
            involution: None,
            words: Vec::new(),
        }
    }

    pub fn with_involution(mut self, p: &Perm) -> Self {
        self.involution = Some(p.to_string());
        self
    }

    pub fn with_words(mut self, words: &[&Word]) -> Self {
        self.words = words.iter().map(|w| w.to_bit_string()).collect();
        self
    }

    /// The stored code; `n` is used only when there are no generators.
    pub fn code(&self, n: usize) -> Result<LinearCode> {
        if self.generators.is_empty() {
            return Ok(LinearCode::zero(n));
        }
        let rows = self
            .generators
            .iter()
            .map(|r| r.parse::<Word>())
            .collect::<Result<Vec<_>>>()?;
        LinearCode::from_row_list(rows)
    }

    pub fn perm(&self, n: usize) -> Result<Option<Perm>> {
        self.involution.as_deref().map(|s| Perm::parse(s, n)).transpose()
    }
}

/// Outcome of one verifier run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub theorem_id: String,
    pub n: usize,
    pub k_range: [usize; 2],
    pub scanned: u64,
    pub counterexamples: Vec<Counterexample>,
    pub witnesses_checked: u64,
    pub elapsed_ms: u64,
    pub slice: Slice,
}

impl VerifyReport {
    pub fn is_clean(&self) -> bool {
        self.counterexamples.is_empty()
    }

    /// The report with `elapsed_ms` zeroed, for comparing runs.
    pub fn without_timing(&self) -> VerifyReport {
        VerifyReport {
            elapsed_ms: 0,
            ..self.clone()
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Length of the codes behind `cex`.
    fn code_length(&self, cex: &Counterexample) -> usize {
        cex.generators.first().map_or(self.n, String::len)
    }
}

/// Running totals merged across shards.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct Tally {
    pub scanned: u64,
    pub witnesses_checked: u64,
    pub counterexamples: Vec<Counterexample>,
}

impl Tally {
    pub fn absorb(&mut self, other: Tally) {
        self.scanned += other.scanned;
        self.witnesses_checked += other.witnesses_checked;
        self.counterexamples.extend(other.counterexamples);
    }

    pub fn into_report(
        self,
        theorem_id: &str,
        n: usize,
        k_range: [usize; 2],
        slice: Slice,
        started: Instant,
    ) -> VerifyReport {
        VerifyReport {
            theorem_id: theorem_id.to_string(),
            n,
            k_range,
            scanned: self.scanned,
            counterexamples: self.counterexamples,
            witnesses_checked: self.witnesses_checked,
            elapsed_ms: started.elapsed().as_millis() as u64,
            slice,
        }
    }
}

pub(crate) fn pool(jobs: usize) -> Result<rayon::ThreadPool> {
    if jobs == 0 {
        return Err(invalid("jobs must be at least 1"));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| invalid(format!("cannot start worker pool: {e}")))
}

/// A shard of codes to scan: all `k`-subspaces of GF(2)^n, or only those
/// invariant under `(1,2)...(2t-1,2t)` with `t = pairs`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Unit {
    pub n: usize,
    pub k: usize,
    pub pairs: Option<usize>,
    pub part: Slice,
}

impl Unit {
    fn stream(&self) -> Result<CodeStream> {
        match self.pairs {
            None => shard(&CensusSlice {
                n: self.n,
                k: self.k,
                sigma_invariant_only: false,
                partition: self.part,
            }),
            Some(t) => shard_pair_invariant(self.n, self.k, t, self.part),
        }
    }
}

/// Shards per `(n, k)` stream. Fixed so that reports do not depend on the
/// number of workers.
pub(crate) const CHUNKS: usize = 64;

pub(crate) fn units(n: usize, ks: impl IntoIterator<Item = usize>, pairs: Option<usize>) -> Vec<Unit> {
    ks.into_iter()
        .flat_map(|k| {
            (0..CHUNKS).map(move |index| Unit {
                n,
                k,
                pairs,
                part: Slice { index, total: CHUNKS },
            })
        })
        .collect()
}

/// Runs `check` on every code of every unit on `jobs` workers. Results are
/// merged in unit order, so the outcome does not depend on `jobs`.
pub(crate) fn scan_units<F>(jobs: usize, units: &[Unit], check: F) -> Result<Tally>
where
    F: Fn(&Unit, &LinearCode, &mut Tally) -> Result<()> + Sync,
{
    let parts: Vec<Result<Tally>> = pool(jobs)?.install(|| {
        units
            .par_iter()
            .map(|u| {
                let mut tally = Tally::default();
                for code in u.stream()? {
                    tally.scanned += 1;
                    check(u, &code, &mut tally)?;
                }
                Ok(tally)
            })
            .collect()
    });
    let mut total = Tally::default();
    for part in parts {
        total.absorb(part?);
    }
    Ok(total)
}

/// Parameters for [`run`]. Fields a verifier does not use are ignored.
#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub n: Option<usize>,
    pub trials: Option<usize>,
    pub n_max: Option<usize>,
    pub seed: u64,
    pub jobs: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            n: None,
            trials: None,
            n_max: None,
            seed: 0,
            jobs: 1,
        }
    }
}

/// Dispatches a verifier by identifier.
pub fn run(theorem_id: &str, opts: &VerifyOptions) -> Result<VerifyReport> {
    let trials = opts.trials.unwrap_or(10_000);
    match theorem_id {
        "lemma-2.1" => verify_half_dimension(trials, opts.n_max.unwrap_or(12), opts.seed),
        "lemma-2.2" => verify_pair_involution_bound(opts.n.unwrap_or(6), opts.jobs),
        "prop-3.1" => verify_dim_one(opts.n.unwrap_or(8)),
        "thm-3.2" => verify_dim_two(opts.n.unwrap_or(6), opts.jobs),
        "prop-3.4" => verify_length_four(),
        "thm-4.2" => verify_fixed_interval(opts.n.unwrap_or(6), opts.jobs),
        "thm-4.4" => verify_four_dimensional(opts.n.unwrap_or(6), opts.jobs),
        "thm-5.1" => verify_fixed_point_witness(trials, opts.n_max.unwrap_or(16), opts.seed),
        "cor-4.8" => verify_no_sigma_group(opts.n.unwrap_or(6), opts.jobs),
        "lemma-4.1" => verify_flip_property(trials, opts.n_max.unwrap_or(12), opts.seed),
        other => Err(invalid(format!("unknown theorem id {other:?}"))),
    }
}

/// Re-runs the failed check behind `cex`. `Ok(true)` means the failure
/// reproduces.
pub fn replay(report: &VerifyReport, cex: &Counterexample) -> Result<bool> {
    let n = report.code_length(cex);
    let code = cex.code(n)?;
    let perm = cex.perm(n)?;
    let words = cex
        .words
        .iter()
        .map(|w| w.parse::<Word>())
        .collect::<Result<Vec<_>>>()?;
    let need_perm = || perm.clone().ok_or_else(|| invalid("counterexample lacks its involution"));
    let failure = match report.theorem_id.as_str() {
        "lemma-2.1" => checks::half_dimension(&code, &need_perm()?)?,
        "lemma-2.2" => checks::pair_involution_bound(&code, &need_perm()?)?,
        "prop-3.1" => checks::dim_one(&code)?,
        "thm-3.2" => checks::dim_two(&code)?,
        "prop-3.4" if cex.generators.is_empty() => checks::length_four_count(&need_perm()?)?,
        "prop-3.4" => checks::length_four(&code, &need_perm()?)?,
        "thm-4.2" => checks::fixed_interval(&code, &mut Tally::default())?,
        "thm-4.4" => checks::four_dimensional(&code, &mut Tally::default())?,
        "thm-5.1" => checks::fixed_point_witness_holds(&code)?,
        "cor-4.8" => checks::no_sigma_group(&code)?,
        "lemma-4.1" => match words.as_slice() {
            [w, x] => checks::flip_property(&code, w, x)?,
            _ => return Err(invalid("counterexample lacks w and x")),
        },
        CONJECTURE_ID => search::conjecture_failure(&code)?,
        other => return Err(invalid(format!("unknown theorem id {other:?}"))),
    };
    Ok(failure.is_some())
}

/// Adds an independent `n!` recount to a reason when the code is short
/// enough, so a reported failure can be told apart from a search bug.
pub(crate) fn triage(code: &LinearCode, reason: String) -> String {
    match crate::aut::brute_force_order(code) {
        Ok(order) => format!("{reason}; brute-force recount gives order {order}"),
        Err(_) => reason,
    }
}

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidInput(msg()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(n: Option<usize>, jobs: usize) -> VerifyOptions {
        VerifyOptions {
            n,
            trials: Some(300),
            jobs,
            ..VerifyOptions::default()
        }
    }

    #[test]
    fn small_runs_are_clean() {
        for (id, _) in THEOREM_IDS {
            let report = run(id, &opts(None, 2)).unwrap();
            assert!(report.is_clean(), "{id}: {:?}", report.counterexamples);
            assert!(report.scanned > 0, "{id}");
        }
    }

    #[test]
    fn scanned_counts() {
        assert_eq!(run("prop-3.4", &opts(None, 1)).unwrap().scanned, 210);
        assert_eq!(run("thm-3.2", &opts(Some(6), 1)).unwrap().scanned, 651);
        assert_eq!(run("prop-3.1", &opts(Some(4), 1)).unwrap().scanned, 15);
    }

    #[test]
    fn guards_and_unknown_ids() {
        assert!(matches!(run("thm-9.9", &opts(None, 1)), Err(Error::InvalidInput(_))));
        assert!(matches!(run("thm-4.4", &opts(Some(14), 1)), Err(Error::TooLarge(_))));
        assert!(matches!(run("thm-4.4", &opts(Some(4), 1)), Err(Error::InvalidInput(_))));
        assert!(matches!(run("thm-3.2", &opts(Some(4), 1)), Err(Error::InvalidInput(_))));
        assert!(matches!(run("thm-4.4", &opts(Some(6), 0)), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn reports_do_not_depend_on_jobs_or_repetition() {
        for id in ["thm-4.2", "lemma-2.1", "thm-5.1"] {
            let a = run(id, &opts(Some(6), 1)).unwrap().without_timing();
            let b = run(id, &opts(Some(6), 3)).unwrap().without_timing();
            let c = run(id, &opts(Some(6), 3)).unwrap().without_timing();
            assert_eq!(a.to_json().unwrap(), b.to_json().unwrap());
            assert_eq!(b, c);
        }
    }

    #[test]
    fn json_schema_keys() {
        let report = run("prop-3.4", &opts(None, 1)).unwrap();
        let value: serde_json::Value = serde_json::from_str(&report.to_json().unwrap()).unwrap();
        let keys: Vec<&str> = value.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(
            keys,
            ["theorem_id", "n", "k_range", "scanned", "counterexamples", "witnesses_checked", "elapsed_ms", "slice"]
        );
        assert_eq!(value["slice"], serde_json::json!({"index": 0, "total": 1}));
        assert_eq!(VerifyReport::from_json(&report.to_json().unwrap()).unwrap(), report);
    }

    #[test]
    fn replay_reproduces_real_failures_only() {
        let report = VerifyReport {
            theorem_id: "cor-4.8".into(),
            n: 2,
            k_range: [0, 2],
            scanned: 1,
            counterexamples: vec![],
            witnesses_checked: 0,
            elapsed_ms: 0,
            slice: Slice::WHOLE,
        };
        // GF(2)^2 has PAut = <(1,2)>, the length excluded by the statement
        let full = Counterexample::new(&LinearCode::full(2), "PAut = <sigma>");
        assert!(replay(&report, &full).unwrap());
        let four = Counterexample::new(&LinearCode::full(4), "fabricated");
        assert!(!replay(&report, &four).unwrap());

        let flip = VerifyReport {
            theorem_id: "lemma-4.1".into(),
            ..report.clone()
        };
        let code = LinearCode::from_row_list(vec!["1011".parse().unwrap(), "1100".parse().unwrap()]).unwrap();
        let w: Word = "1011".parse().unwrap();
        let x: Word = "1100".parse().unwrap();
        let cex = Counterexample::new(&code, "fabricated").with_words(&[&w, &x]);
        assert!(!replay(&flip, &cex).unwrap());
        let bare = Counterexample::new(&code, "fabricated");
        assert!(replay(&flip, &bare).is_err());
    }

    #[test]
    fn length_four_count_per_transposition() {
        for a in 0..4 {
            for b in a + 1..4 {
                let beta = Perm::transposition(4, a, b).unwrap();
                assert_eq!(checks::length_four_count(&beta).unwrap(), None);
            }
        }
    }
}
