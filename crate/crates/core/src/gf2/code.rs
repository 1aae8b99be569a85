use std::fmt;

use super::Word;
use crate::error::{invalid, too_large, Result};

/// Largest dimension whose codewords may be enumerated.
pub const MAX_ENUM_DIM: usize = 30;

/// A binary linear code held as its reduced row echelon generator matrix.
///
/// The pivot of a row is its lowest coordinate holding a one. Rows are
/// sorted by pivot, and every pivot column holds exactly one one, so two
/// values are equal exactly when they span the same subspace.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearCode {
    n: usize,
    gens: Vec<Word>,
}

impl LinearCode {
    /// Canonical basis of the span of `rows`, all of length `n`.
    pub fn from_rows(n: usize, rows: impl IntoIterator<Item = Word>) -> Result<Self> {
        let mut rows: Vec<Word> = rows.into_iter().collect();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(invalid(format!(
                "row of length {} in a code of length {n}",
                bad.len()
            )));
        }
        let mut rank = 0;
        for col in 0..n {
            let Some(pos) = (rank..rows.len()).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(rank, pos);
            let pivot_row = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row.get(col) {
                    row.xor_assign(&pivot_row);
                }
            }
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rows.truncate(rank);
        Ok(LinearCode { n, gens: rows })
    }

    /// Same as [`LinearCode::from_rows`] with the length taken from the first row.
    pub fn from_row_list(rows: Vec<Word>) -> Result<Self> {
        let n = rows
            .first()
            .map(Word::len)
            .ok_or_else(|| invalid("cannot infer the length of an empty row list"))?;
        Self::from_rows(n, rows)
    }

    /// `rows` must already be in the canonical form; checked in debug builds.
    pub(crate) fn from_rref_unchecked(n: usize, gens: Vec<Word>) -> Self {
        let code = LinearCode { n, gens };
        debug_assert!(code.is_rref(), "rows are not in reduced row echelon form");
        code
    }

    pub fn zero(n: usize) -> Self {
        LinearCode { n, gens: Vec::new() }
    }

    pub fn full(n: usize) -> Self {
        LinearCode {
            n,
            gens: (0..n).map(|i| Word::unit(n, i)).collect(),
        }
    }

    pub fn length(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.gens.len()
    }

    pub fn generators(&self) -> &[Word] {
        &self.gens
    }

    /// Pivot coordinate of each generator, ascending.
    pub fn pivots(&self) -> Vec<usize> {
        self.gens.iter().map(|g| g.first_one().unwrap()).collect()
    }

    fn is_rref(&self) -> bool {
        let pivots: Vec<Option<usize>> = self.gens.iter().map(Word::first_one).collect();
        if pivots.iter().any(Option::is_none) {
            return false;
        }
        let pivots: Vec<usize> = pivots.into_iter().flatten().collect();
        pivots.windows(2).all(|w| w[0] < w[1])
            && pivots.iter().enumerate().all(|(r, &p)| {
                self.gens
                    .iter()
                    .enumerate()
                    .all(|(s, g)| (s == r) == g.get(p))
            })
    }

    /// What remains of `w` after clearing every pivot coordinate.
    pub fn residue(&self, w: &Word) -> Word {
        let mut out = w.clone();
        for g in &self.gens {
            let p = g.first_one().unwrap();
            if out.get(p) {
                out.xor_assign(g);
            }
        }
        out
    }

    pub fn contains(&self, w: &Word) -> Result<bool> {
        if w.len() != self.n {
            return Err(invalid(format!(
                "word of length {} against a code of length {}",
                w.len(),
                self.n
            )));
        }
        Ok(self.residue(w).is_zero())
    }

    /// True when every generator of `self` lies in `other`.
    pub fn is_subcode_of(&self, other: &LinearCode) -> bool {
        self.n == other.n && self.gens.iter().all(|g| other.residue(g).is_zero())
    }

    /// Span of both codes.
    pub fn sum(&self, other: &LinearCode) -> Result<LinearCode> {
        LinearCode::from_rows(
            self.n,
            self.gens.iter().chain(other.gens.iter()).cloned(),
        )
    }

    /// The orthogonal complement under the standard inner product.
    pub fn dual(&self) -> LinearCode {
        let pivots = self.pivots();
        let mut is_pivot = vec![false; self.n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let rows = (0..self.n).filter(|&c| !is_pivot[c]).map(|c| {
            let mut h = Word::unit(self.n, c);
            for (g, &p) in self.gens.iter().zip(&pivots) {
                if g.get(c) {
                    h.set(p, true);
                }
            }
            h
        });
        LinearCode::from_rows(self.n, rows).expect("dual rows share the code length")
    }

    /// All codewords in Gray-code order: the `i`-th word is the sum of the
    /// generators selected by the bits of `i ^ (i >> 1)`.
    pub fn codewords(&self) -> Result<Codewords<'_>> {
        if self.dim() > MAX_ENUM_DIM {
            return Err(too_large(format!(
                "dimension {} exceeds the enumeration guard {MAX_ENUM_DIM}",
                self.dim()
            )));
        }
        Ok(Codewords {
            gens: &self.gens,
            current: Word::zeros(self.n),
            index: 0,
            total: 1u64 << self.dim(),
        })
    }

    pub fn weight_distribution(&self) -> Result<WeightDistribution> {
        let mut counts = vec![0u64; self.n + 1];
        for c in self.codewords()? {
            counts[c.weight()] += 1;
        }
        Ok(WeightDistribution { counts })
    }

    /// Least nonzero weight, `None` for the zero code.
    pub fn min_weight(&self) -> Result<Option<usize>> {
        Ok(self.weight_distribution()?.min_weight())
    }

    /// Generators as masks, for codes of length at most 64.
    pub fn masks(&self) -> Option<Vec<u64>> {
        self.gens.iter().map(Word::as_u64).collect()
    }
}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.gens.iter().map(Word::to_bit_string).collect();
        write!(f, "LinearCode[n={}; {}]", self.n, rows.join(", "))
    }
}

/// Iterator over the codewords of a [`LinearCode`].
pub struct Codewords<'a> {
    gens: &'a [Word],
    current: Word,
    index: u64,
    total: u64,
}

impl Iterator for Codewords<'_> {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if self.index >= self.total {
            return None;
        }
        if self.index > 0 {
            let flip = self.index.trailing_zeros() as usize;
            self.current.xor_assign(&self.gens[flip]);
        }
        self.index += 1;
        Some(self.current.clone())
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.index) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for Codewords<'_> {}

/// Counts `(A_0, ..., A_n)` of codewords by weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDistribution {
    counts: Vec<u64>,
}

impl WeightDistribution {
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn min_weight(&self) -> Option<usize> {
        self.counts.iter().skip(1).position(|&c| c > 0).map(|p| p + 1)
    }
}

/// Basis of the relations `{l : sum_i l_i rows_i = 0}`, as words of length `rows.len()`.
pub(crate) fn row_relations(rows: &[Word]) -> Vec<Word> {
    let r = rows.len();
    let mut work: Vec<(Word, Word)> = rows
        .iter()
        .enumerate()
        .map(|(i, w)| (w.clone(), Word::unit(r, i)))
        .collect();
    let n = rows.first().map_or(0, Word::len);
    let mut rank = 0;
    for col in 0..n {
        let Some(pos) = (rank..r).find(|&i| work[i].0.get(col)) else {
            continue;
        };
        work.swap(rank, pos);
        let (pw, pt) = work[rank].clone();
        for (i, (w, t)) in work.iter_mut().enumerate() {
            if i != rank && w.get(col) {
                w.xor_assign(&pw);
                t.xor_assign(&pt);
            }
        }
        rank += 1;
    }
    work.into_iter().skip(rank).map(|(_, tag)| tag).collect()
}
