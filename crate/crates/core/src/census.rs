//! Exhaustive enumeration of subspaces of GF(2)^n.
//!
//! `enumerate_subspaces(n, k)` walks reduced row echelon matrices in
//! lexicographic order: pivot tuples in lexicographic order, and for each
//! pivot tuple the free entries (non-pivot columns right of each pivot,
//! row-major) as a binary counter, least significant slot first.
//!
//! Subspaces invariant under `(1,2)(3,4)...(2t-1,2t)` are generated directly.
//! Such a code `C` is determined by its fixed part `F = C ∩ Fix`, the image
//! `X = (id + beta)C ⊆ F ∩ Im(id + beta)`, and a lift of a basis of `X` back
//! into `C`, which is unique modulo `Fix / F`. The walk runs over `f = dim F`
//! ascending, then `F`, then `X`, then the lift, each in the order above, so
//! every invariant code appears exactly once.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{invalid, too_large, Error, Result};
use crate::gf2::{LinearCode, Word};
use crate::perm::{image_code, Perm};

/// Largest length the census accepts.
pub const MAX_CENSUS_LEN: usize = 12;
/// Largest stream the census agrees to produce.
pub const MAX_CENSUS_COUNT: u128 = 1_000_000_000;

/// Number of `k`-dimensional subspaces of GF(2)^n.
pub fn gaussian_binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= (1u128 << (n - i)) - 1;
        den *= (1u128 << (i + 1)) - 1;
    }
    num / den
}

/// Number of `k`-dimensional subspaces fixed by `(1,2)(3,4)...(n-1,n)`.
pub fn sigma_invariant_count(n: usize, k: usize) -> u128 {
    let m = n / 2;
    (0..=k.min(m))
        .filter(|&f| k - f <= f)
        .map(|f| {
            let r = k - f;
            gaussian_binomial(m, f) * gaussian_binomial(f, r) * (1u128 << (r * (m - f)))
        })
        .sum()
}

/// Upper bound on the number of `k`-subspaces invariant under `pairs`
/// disjoint pair transpositions of `n` points.
fn pair_invariant_bound(n: usize, k: usize, pairs: usize) -> u128 {
    let fix_dim = n - pairs;
    (0..=k.min(fix_dim))
        .filter(|&f| k - f <= f.min(pairs))
        .map(|f| {
            let r = k - f;
            gaussian_binomial(fix_dim, f)
                * gaussian_binomial(f.min(pairs), r)
                * (1u128 << (r * (fix_dim - f)))
        })
        .sum()
}

fn check_len(n: usize) -> Result<()> {
    if n > MAX_CENSUS_LEN {
        return Err(too_large(format!("census is limited to n <= {MAX_CENSUS_LEN}, got {n}")));
    }
    Ok(())
}

fn check_count(count: u128) -> Result<()> {
    if count > MAX_CENSUS_COUNT {
        return Err(too_large(format!(
            "{count} subspaces exceed the census guard of {MAX_CENSUS_COUNT}"
        )));
    }
    Ok(())
}

/// RREF matrices as row masks, lexicographic order.
#[derive(Clone)]
pub(crate) struct RrefMasks {
    n: usize,
    k: usize,
    pivots: Vec<usize>,
    slots: Vec<(usize, usize)>,
    counter: u64,
    done: bool,
}

impl RrefMasks {
    pub(crate) fn new(n: usize, k: usize) -> Self {
        let mut it = RrefMasks {
            n,
            k,
            pivots: (0..k).collect(),
            slots: Vec::new(),
            counter: 0,
            done: k > n,
        };
        it.refresh_slots();
        it
    }

    fn refresh_slots(&mut self) {
        self.slots.clear();
        let mut is_pivot = vec![false; self.n];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        for (r, &p) in self.pivots.iter().enumerate() {
            for c in p + 1..self.n {
                if !is_pivot[c] {
                    self.slots.push((r, c));
                }
            }
        }
    }

    fn advance_pivots(&mut self) -> bool {
        let (n, k) = (self.n, self.k);
        let Some(i) = (0..k).rev().find(|&i| self.pivots[i] < n - k + i) else {
            return false;
        };
        self.pivots[i] += 1;
        for j in i + 1..k {
            self.pivots[j] = self.pivots[j - 1] + 1;
        }
        true
    }
}

impl Iterator for RrefMasks {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        if self.done {
            return None;
        }
        if self.counter >> self.slots.len() != 0 {
            if !self.advance_pivots() {
                self.done = true;
                return None;
            }
            self.refresh_slots();
            self.counter = 0;
        }
        let mut rows: Vec<u64> = self.pivots.iter().map(|&p| 1u64 << p).collect();
        for (s, &(r, c)) in self.slots.iter().enumerate() {
            if (self.counter >> s) & 1 == 1 {
                rows[r] |= 1u64 << c;
            }
        }
        self.counter += 1;
        Some(rows)
    }
}

fn masks_to_code(n: usize, rows: &[u64]) -> LinearCode {
    LinearCode::from_rows(n, rows.iter().map(|&r| Word::from_u64(n, r))).expect("rows share n")
}

fn rref_masks_to_code(n: usize, rows: &[u64]) -> LinearCode {
    LinearCode::from_rref_unchecked(n, rows.iter().map(|&r| Word::from_u64(n, r)).collect())
}

pub type CodeStream = Box<dyn Iterator<Item = LinearCode> + Send>;
type MaskStream = Box<dyn Iterator<Item = Vec<u64>> + Send>;

/// Every `k`-dimensional subspace of GF(2)^n exactly once, lexicographic RREF order.
pub fn enumerate_subspaces(n: usize, k: usize) -> Result<CodeStream> {
    check_len(n)?;
    check_count(gaussian_binomial(n, k))?;
    Ok(Box::new(RrefMasks::new(n, k).map(move |rows| rref_masks_to_code(n, &rows))))
}

/// Every `k`-dimensional subspace invariant under `(1,2)(3,4)...(n-1,n)`.
pub fn enumerate_sigma_invariant(n: usize, k: usize) -> Result<CodeStream> {
    if n == 0 || n % 2 == 1 {
        return Err(invalid(format!("sigma-invariant census needs an even positive n, got {n}")));
    }
    enumerate_pair_invariant(n, k, n / 2)
}

/// Every `k`-dimensional subspace invariant under `(1,2)(3,4)...(2t-1,2t)`
/// with `t = pairs`.
pub fn enumerate_pair_invariant(n: usize, k: usize, pairs: usize) -> Result<CodeStream> {
    Ok(Box::new(
        pair_invariant_masks(n, k, pairs)?.map(move |rows| masks_to_code(n, &rows)),
    ))
}

/// Same stream as [`enumerate_pair_invariant`], obtained by filtering every
/// subspace through `C^beta == C`.
pub fn enumerate_invariant_by_filter(n: usize, k: usize, beta: &Perm) -> Result<CodeStream> {
    if beta.len() != n {
        return Err(invalid("permutation degree differs from n"));
    }
    let beta = beta.clone();
    Ok(Box::new(
        enumerate_subspaces(n, k)?.filter(move |c| image_code(c, &beta).expect("same n") == *c),
    ))
}

fn pair_invariant_masks(n: usize, k: usize, pairs: usize) -> Result<MaskStream> {
    check_len(n)?;
    if 2 * pairs > n {
        return Err(invalid(format!("{pairs} pairs do not fit in {n} points")));
    }
    if k > n {
        return Err(invalid(format!("dimension {k} exceeds length {n}")));
    }
    check_count(pair_invariant_bound(n, k, pairs))?;
    let layout = Arc::new(PairLayout { n, pairs });
    let fix_dim = n - pairs;
    let stream = (0..=k.min(fix_dim)).filter(move |&f| k - f <= f).flat_map(move |f| {
        let layout = Arc::clone(&layout);
        RrefMasks::new(fix_dim, f).flat_map(move |fixed| layout.codes_over(fixed, k - f))
    });
    Ok(Box::new(stream))
}

/// Coordinates of the fixed space `Fix` of the pair involution: compressed
/// coordinate `c < pairs` stands for the pair `(2c, 2c+1)`, and
/// `c >= pairs` for the fixed point `pairs + c`.
struct PairLayout {
    n: usize,
    pairs: usize,
}

impl PairLayout {
    fn expand(&self, v: u64) -> u64 {
        let low = v & ((1u64 << self.pairs) - 1);
        let mut out = (v >> self.pairs) << (2 * self.pairs);
        let mut rest = low;
        while rest != 0 {
            let c = rest.trailing_zeros();
            rest &= rest - 1;
            out |= 0b11 << (2 * c);
        }
        out
    }

    /// A word `w` with `w + w^beta = expand(x)`, for `x` supported on pairs.
    fn lift(&self, x: u64) -> u64 {
        let mut out = 0;
        let mut rest = x;
        while rest != 0 {
            let c = rest.trailing_zeros();
            rest &= rest - 1;
            out |= 1 << (2 * c);
        }
        out
    }

    /// All invariant codes with fixed part spanned by `fixed` (compressed
    /// RREF rows) and an `r`-dimensional image.
    fn codes_over(&self, fixed: Vec<u64>, r: usize) -> MaskStream {
        let fix_dim = self.n - self.pairs;
        let pair_mask = (1u64 << self.pairs) - 1;
        // F ∩ Im: combinations of the fixed rows vanishing off the pairs
        let mut work: Vec<(u64, u64)> = fixed.iter().map(|&row| (row >> self.pairs, row)).collect();
        let mut rank = 0;
        for bit in 0..(fix_dim - self.pairs) {
            let Some(pos) = (rank..work.len()).find(|&i| (work[i].0 >> bit) & 1 == 1) else {
                continue;
            };
            work.swap(rank, pos);
            let pivot = work[rank];
            for (i, item) in work.iter_mut().enumerate() {
                if i != rank && (item.0 >> bit) & 1 == 1 {
                    item.0 ^= pivot.0;
                    item.1 ^= pivot.1;
                }
            }
            rank += 1;
        }
        let image_basis: Vec<u64> = work[rank..].iter().map(|&(_, v)| v & pair_mask).collect();
        if image_basis.len() < r {
            return Box::new(std::iter::empty());
        }
        let mut is_pivot = vec![false; fix_dim];
        for &row in &fixed {
            is_pivot[row.trailing_zeros() as usize] = true;
        }
        let free_units: Vec<u64> = (0..fix_dim)
            .filter(|&c| !is_pivot[c])
            .map(|c| self.expand(1u64 << c))
            .collect();
        let fixed_rows: Vec<u64> = fixed.iter().map(|&v| self.expand(v)).collect();
        let shared = Arc::new((fixed_rows, free_units, image_basis));
        let lifts_per_x = shared.1.len();
        let layout = PairLayout {
            n: self.n,
            pairs: self.pairs,
        };
        let layout = Arc::new(layout);
        Box::new(RrefMasks::new(shared.2.len(), r).flat_map(move |selection| {
            let shared = Arc::clone(&shared);
            let layout = Arc::clone(&layout);
            let xs: Vec<u64> = selection
                .iter()
                .map(|&sel| {
                    let mut x = 0;
                    for (i, &b) in shared.2.iter().enumerate() {
                        if (sel >> i) & 1 == 1 {
                            x ^= b;
                        }
                    }
                    x
                })
                .collect();
            let bits = r * lifts_per_x;
            (0..1u64 << bits).map(move |phi| {
                let mut rows = shared.0.clone();
                for (j, &x) in xs.iter().enumerate() {
                    let mut w = layout.lift(x);
                    for (c, &unit) in shared.1.iter().enumerate() {
                        if (phi >> (j * lifts_per_x + c)) & 1 == 1 {
                            w ^= unit;
                        }
                    }
                    rows.push(w);
                }
                rows
            })
        }))
    }
}

/// `index / total` work partition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct Slice {
    pub index: usize,
    pub total: usize,
}

impl Slice {
    pub const WHOLE: Slice = Slice { index: 0, total: 1 };

    pub fn new(index: usize, total: usize) -> Result<Self> {
        if total == 0 || index >= total {
            return Err(invalid(format!("invalid slice {index}/{total}")));
        }
        Ok(Slice { index, total })
    }

    /// Whether the `ordinal`-th element of a stream belongs to this slice.
    pub fn owns(&self, ordinal: u64) -> bool {
        ordinal % self.total as u64 == self.index as u64
    }
}

impl fmt::Display for Slice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.index, self.total)
    }
}

impl FromStr for Slice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (i, t) = s
            .split_once('/')
            .ok_or_else(|| invalid(format!("slice {s:?} is not of the form i/t")))?;
        let parse = |v: &str| {
            v.trim()
                .parse::<usize>()
                .map_err(|_| invalid(format!("bad slice component {v:?}")))
        };
        Slice::new(parse(i)?, parse(t)?)
    }
}

/// A unit of census work.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CensusSlice {
    pub n: usize,
    pub k: usize,
    pub sigma_invariant_only: bool,
    pub partition: Slice,
}

/// The codes of `slice`: stream elements whose ordinal is `index` modulo `total`.
pub fn shard(slice: &CensusSlice) -> Result<CodeStream> {
    let part = Slice::new(slice.partition.index, slice.partition.total)?;
    if slice.k > slice.n {
        return Err(invalid(format!("dimension {} exceeds length {}", slice.k, slice.n)));
    }
    let n = slice.n;
    if slice.sigma_invariant_only {
        if n == 0 || n % 2 == 1 {
            return Err(invalid(format!("sigma-invariant census needs an even positive n, got {n}")));
        }
        shard_pair_invariant(n, slice.k, n / 2, part)
    } else {
        check_len(n)?;
        check_count(gaussian_binomial(n, slice.k))?;
        Ok(Box::new(
            RrefMasks::new(n, slice.k)
                .enumerate()
                .filter(move |(o, _)| part.owns(*o as u64))
                .map(move |(_, rows)| rref_masks_to_code(n, &rows)),
        ))
    }
}

/// Shard of the stream of `k`-subspaces invariant under `(1,2)...(2t-1,2t)`, `t = pairs`.
pub fn shard_pair_invariant(n: usize, k: usize, pairs: usize, part: Slice) -> Result<CodeStream> {
    let part = Slice::new(part.index, part.total)?;
    let masks = pair_invariant_masks(n, k, pairs)?;
    Ok(Box::new(
        masks
            .enumerate()
            .filter(move |(o, _)| part.owns(*o as u64))
            .map(move |(_, rows)| masks_to_code(n, &rows)),
    ))
}
