//! Fixed subcodes under involutions, T-sets over the pairs of
//! `sigma = (1,2)(3,4)...(n-1,n)`, and constructive extra automorphisms.
//!
//! Pair `p` covers the 0-based coordinates `2p` and `2p + 1`, which are the
//! coordinates `2p + 1` and `2p + 2` in 1-based notation. T-sets store pair
//! indices and print the odd 1-based coordinate of each pair.

use std::collections::BTreeSet;
use std::fmt;

use crate::aut::{find_automorphism, is_automorphism, MAX_PAUT_LEN};
use crate::error::{invalid, too_large, Error, Result};
use crate::gf2::{row_relations, LinearCode, Word};
use crate::perm::{is_canonical_sigma, Perm};

/// A set of pair indices in `0..m`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct TSet {
    m: usize,
    pairs: BTreeSet<usize>,
}

impl TSet {
    pub fn new(m: usize, pairs: impl IntoIterator<Item = usize>) -> Result<Self> {
        let pairs: BTreeSet<usize> = pairs.into_iter().collect();
        if let Some(&bad) = pairs.iter().find(|&&p| p >= m) {
            return Err(invalid(format!("pair {bad} out of range for {m} pairs")));
        }
        Ok(TSet { m, pairs })
    }

    pub fn empty(m: usize) -> Self {
        TSet {
            m,
            pairs: BTreeSet::new(),
        }
    }

    pub fn full(m: usize) -> Self {
        TSet {
            m,
            pairs: (0..m).collect(),
        }
    }

    /// Pairs on which `x` is nonzero; `x` is assumed pair-constant.
    fn support_of(x: &Word) -> Self {
        let m = x.len() / 2;
        TSet {
            m,
            pairs: (0..m).filter(|&p| x.get(2 * p)).collect(),
        }
    }

    pub fn pair_count(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.pairs.len() == self.m
    }

    pub fn contains(&self, pair: usize) -> bool {
        self.pairs.contains(&pair)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.pairs.iter().copied()
    }

    pub fn is_subset(&self, other: &TSet) -> bool {
        self.pairs.is_subset(&other.pairs)
    }

    pub fn union(&self, other: &TSet) -> TSet {
        TSet {
            m: self.m.max(other.m),
            pairs: self.pairs.union(&other.pairs).copied().collect(),
        }
    }

    pub fn difference(&self, other: &TSet) -> TSet {
        TSet {
            m: self.m,
            pairs: self.pairs.difference(&other.pairs).copied().collect(),
        }
    }

    pub fn complement(&self) -> TSet {
        TSet {
            m: self.m,
            pairs: (0..self.m).filter(|p| !self.pairs.contains(p)).collect(),
        }
    }

    /// 1-based odd coordinates, as printed.
    pub fn odd_coordinates(&self) -> Vec<usize> {
        self.pairs.iter().map(|p| 2 * p + 1).collect()
    }
}

impl fmt::Display for TSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coords: Vec<String> = self.odd_coordinates().iter().map(usize::to_string).collect();
        write!(f, "{{{}}}", coords.join(", "))
    }
}

impl fmt::Debug for TSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TSet{self}")
    }
}

/// Product of the pair transpositions `(2p+1, 2p+2)` over `pairs`.
pub fn pair_product(n: usize, pairs: impl IntoIterator<Item = usize>) -> Perm {
    let mut images: Vec<usize> = (0..n).collect();
    for p in pairs {
        images.swap(2 * p, 2 * p + 1);
    }
    Perm::from_images_unchecked(images)
}

/// `{c in C : c^p = c}`, the kernel of `id + p` on `C`.
pub fn fixed_subcode(code: &LinearCode, p: &Perm) -> Result<LinearCode> {
    if code.length() != p.len() {
        return Err(invalid("permutation and code lengths differ"));
    }
    let gens = code.generators();
    let diffs = gens
        .iter()
        .map(|g| Ok(g + &p.apply(g)?))
        .collect::<Result<Vec<Word>>>()?;
    let rows = row_relations(&diffs).into_iter().map(|rel| {
        let mut c = Word::zeros(code.length());
        for i in rel.ones_iter() {
            c.xor_assign(&gens[i]);
        }
        c
    });
    LinearCode::from_rows(code.length(), rows)
}

fn require_canonical(sigma: &Perm) -> Result<()> {
    if !is_canonical_sigma(sigma) {
        return Err(invalid(format!("{sigma} is not (1,2)(3,4)...(n-1,n)")));
    }
    Ok(())
}

fn require_invariant(code: &LinearCode, sigma: &Perm) -> Result<()> {
    require_canonical(sigma)?;
    if !is_automorphism(code, sigma)? {
        return Err(Error::NotInvariant);
    }
    Ok(())
}

fn is_sigma_fixed(x: &Word) -> bool {
    (0..x.len() / 2).all(|p| x.get(2 * p) == x.get(2 * p + 1))
}

/// Pairs on which the sigma-fixed word `x` reads `11`.
pub fn t_set(x: &Word, sigma: &Perm) -> Result<TSet> {
    require_canonical(sigma)?;
    if x.len() != sigma.len() {
        return Err(invalid("word and permutation lengths differ"));
    }
    if !is_sigma_fixed(x) {
        return Err(Error::NotFixed);
    }
    Ok(TSet::support_of(x))
}

/// The involution swapping the two coordinates of every pair in `T_x`.
///
/// Whenever `y = w + w^sigma` satisfies `T_x ⊆ T_y`, this sends `w` to `w + x`.
pub fn alpha_x(x: &Word, sigma: &Perm) -> Result<Perm> {
    let t = t_set(x, sigma)?;
    if t.is_empty() {
        return Err(invalid("alpha_x needs a nonzero word"));
    }
    Ok(pair_product(x.len(), t.iter()))
}

/// `C = F ⊕ N` for an involution `sigma` of `C`, with `x_j = w_j + w_j^sigma`
/// for the chosen basis `w_j` of `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedDecomposition {
    pub fixed: LinearCode,
    pub complement_basis: Vec<Word>,
    pub x_list: Vec<Word>,
}

impl FixedDecomposition {
    /// `f = dim F_sigma(C)`.
    pub fn f(&self) -> usize {
        self.fixed.dim()
    }
}

/// Splits `C` using the first rows of its canonical basis that are
/// independent of the fixed subcode and of the rows already kept.
pub fn decompose(code: &LinearCode, sigma: &Perm) -> Result<FixedDecomposition> {
    require_invariant(code, sigma)?;
    let fixed = fixed_subcode(code, sigma)?;
    let mut span = fixed.clone();
    let mut complement_basis = Vec::new();
    for g in code.generators() {
        if span.dim() == code.dim() {
            break;
        }
        if !span.residue(g).is_zero() {
            complement_basis.push(g.clone());
            span = LinearCode::from_rows(code.length(), span.generators().iter().cloned().chain([g.clone()]))?;
        }
    }
    let x_list = complement_basis
        .iter()
        .map(|w| Ok(w + &sigma.apply(w)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(FixedDecomposition {
        fixed,
        complement_basis,
        x_list,
    })
}

/// `T(sigma)`: pairs where some word of `(id + sigma)C` is nonzero.
///
/// This equals the union of `T_{x_j}` for any complement of the fixed
/// subcode, since the `x_j` always span `(id + sigma)C`.
pub fn t_sigma(code: &LinearCode, sigma: &Perm) -> Result<TSet> {
    require_invariant(code, sigma)?;
    let mut support = Word::zeros(code.length());
    for g in code.generators() {
        support = or_words(&support, &(g + &sigma.apply(g)?));
    }
    Ok(TSet::support_of(&support))
}

fn or_words(a: &Word, b: &Word) -> Word {
    let mut out = a.clone();
    for i in b.ones_iter() {
        out.set(i, true);
    }
    out
}

/// `T(sigma)` as the union of `T_{x_j}` over a caller-supplied complement
/// `w_1, ..., w_{k-f}` of the fixed subcode.
pub fn t_sigma_from_complement(code: &LinearCode, sigma: &Perm, complement: &[Word]) -> Result<TSet> {
    require_invariant(code, sigma)?;
    let fixed = fixed_subcode(code, sigma)?;
    if fixed.dim() + complement.len() != code.dim() {
        return Err(invalid(format!(
            "complement has {} vectors, expected {}",
            complement.len(),
            code.dim() - fixed.dim()
        )));
    }
    for w in complement {
        if !code.contains(w)? {
            return Err(invalid("complement vector outside the code"));
        }
    }
    let span = LinearCode::from_rows(
        code.length(),
        fixed.generators().iter().chain(complement.iter()).cloned(),
    )?;
    if span.dim() != code.dim() {
        return Err(invalid("complement vectors are dependent modulo the fixed subcode"));
    }
    let m = code.length() / 2;
    complement.iter().try_fold(TSet::empty(m), |acc, w| {
        let x = w + &sigma.apply(w)?;
        Ok(acc.union(&t_set(&x, sigma)?))
    })
}

/// An automorphism with fixed points that commutes with `sigma`.
///
/// When `T(sigma)` is neither empty nor full this is the product of pair
/// transpositions over the pairs outside `T(sigma)`. When `T(sigma)` is empty
/// the code is fixed pointwise by every pair transposition and `(1,2)` is
/// returned. When `T(sigma)` is full there is nothing to return.
pub fn fixed_point_witness(code: &LinearCode, sigma: &Perm) -> Result<Option<Perm>> {
    require_invariant(code, sigma)?;
    let n = code.length();
    if n < 4 {
        return Err(invalid("the fixed-point witness needs n >= 4"));
    }
    let t = t_sigma(code, sigma)?;
    if t.is_full() {
        return Ok(None);
    }
    if t.is_empty() {
        return Ok(Some(pair_product(n, [0])));
    }
    Ok(Some(pair_product(n, t.complement().iter())))
}

/// Which construction produced an extra automorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Construction {
    /// `(1,2)` on a code fixed pointwise by `sigma`.
    PointwiseFixingPair,
    /// Pair transpositions over the complement of `T(sigma)`.
    TSigmaComplement,
    /// `alpha_x` for a nonzero fixed codeword `x`.
    AlphaX,
    /// `(i,j)(i+1,j+1)` for two pairs.
    PairSwap,
    /// `(i,j+1)(i+1,j)` for two pairs.
    CrossedPairSwap,
    /// `(k,k+1)(i,j)(i+1,j+1)`.
    PairFlipWithSwap,
    /// A single transposition.
    Transposition,
    /// Pair transpositions over `T_b \ T_a` times `(k1,l1)(sigma(k1),sigma(l1))`.
    FlipsWithLinkedTranspositions,
    /// Exhaustive search over involutions.
    BruteForce,
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Construction::PointwiseFixingPair => "pointwise-fixing pair",
            Construction::TSigmaComplement => "T(σ)-complement",
            Construction::AlphaX => "α_x",
            Construction::PairSwap => "pair swap",
            Construction::CrossedPairSwap => "crossed pair swap",
            Construction::PairFlipWithSwap => "pair flip with pair swap",
            Construction::Transposition => "transposition",
            Construction::FlipsWithLinkedTranspositions => "pair flips with linked transpositions",
            Construction::BruteForce => "brute force",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub perm: Perm,
    pub construction: Construction,
}

/// Largest fixed subcode whose nonzero words are all tried as `x` for `alpha_x`.
const ALPHA_ENUM_DIM: usize = 16;

/// An involution in `PAut(C)` other than `sigma`, if one exists.
///
/// Candidates are tried in a fixed order: the fixed-point witness, `alpha_x`
/// over the fixed subcode, the pair-swap families, single transpositions,
/// flip products with linked transpositions, and finally an exhaustive
/// search (only for `n <= 12`). `None` means `PAut(C)` has no involution
/// besides `sigma`.
pub fn extra_automorphism(code: &LinearCode, sigma: &Perm) -> Result<Option<Witness>> {
    require_invariant(code, sigma)?;
    let n = code.length();
    let m = n / 2;
    let accept = |p: &Perm| -> Result<bool> {
        Ok(p != sigma && p.is_involution() && is_automorphism(code, p)?)
    };
    let found = |perm: Perm, construction| Ok(Some(Witness { perm, construction }));

    let decomposition = decompose(code, sigma)?;
    if n >= 4 {
        if let Some(beta) = fixed_point_witness(code, sigma)? {
            let construction = if decomposition.x_list.is_empty() {
                Construction::PointwiseFixingPair
            } else {
                Construction::TSigmaComplement
            };
            if accept(&beta)? {
                return found(beta, construction);
            }
        }
    }

    let fixed = &decomposition.fixed;
    let alpha_sources: Vec<Word> = if fixed.dim() <= ALPHA_ENUM_DIM {
        fixed.codewords()?.skip(1).collect()
    } else {
        fixed.generators().to_vec()
    };
    for x in &alpha_sources {
        let alpha = alpha_x(x, sigma)?;
        if accept(&alpha)? {
            return found(alpha, Construction::AlphaX);
        }
    }

    for i in 0..m {
        for j in i + 1..m {
            let swap = Perm::from_cycles(n, &[vec![2 * i, 2 * j], vec![2 * i + 1, 2 * j + 1]])?;
            if accept(&swap)? {
                return found(swap, Construction::PairSwap);
            }
            let crossed = Perm::from_cycles(n, &[vec![2 * i, 2 * j + 1], vec![2 * i + 1, 2 * j]])?;
            if accept(&crossed)? {
                return found(crossed, Construction::CrossedPairSwap);
            }
        }
    }

    for k in 0..m {
        for i in 0..m {
            for j in i + 1..m {
                if k == i || k == j {
                    continue;
                }
                for cycles in [
                    [vec![2 * k, 2 * k + 1], vec![2 * i, 2 * j], vec![2 * i + 1, 2 * j + 1]],
                    [vec![2 * k, 2 * k + 1], vec![2 * i, 2 * j + 1], vec![2 * i + 1, 2 * j]],
                ] {
                    let p = Perm::from_cycles(n, &cycles)?;
                    if accept(&p)? {
                        return found(p, Construction::PairFlipWithSwap);
                    }
                }
            }
        }
    }

    for a in 0..n {
        for b in a + 1..n {
            let t = Perm::transposition(n, a, b)?;
            if accept(&t)? {
                return found(t, Construction::Transposition);
            }
        }
    }

    let t_sets = decomposition
        .x_list
        .iter()
        .map(|x| t_set(x, sigma))
        .collect::<Result<Vec<_>>>()?;
    for (a, ta) in t_sets.iter().enumerate() {
        for (b, tb) in t_sets.iter().enumerate() {
            if a == b {
                continue;
            }
            let flips = tb.difference(ta);
            for k in (0..m).filter(|p| !flips.contains(*p)) {
                for l in (k + 1..m).filter(|p| !flips.contains(*p)) {
                    for (k1, l1) in [(2 * k, 2 * l), (2 * k, 2 * l + 1)] {
                        let mut images = pair_product(n, flips.iter()).images().to_vec();
                        images[k1] = l1;
                        images[l1] = k1;
                        images[k1 ^ 1] = l1 ^ 1;
                        images[l1 ^ 1] = k1 ^ 1;
                        let p = Perm::from_images(images)?;
                        if accept(&p)? {
                            return found(p, Construction::FlipsWithLinkedTranspositions);
                        }
                    }
                }
            }
        }
    }

    if n > MAX_PAUT_LEN {
        return Err(too_large(format!(
            "no constructive witness found and exhaustive search is limited to n <= {MAX_PAUT_LEN}"
        )));
    }
    let brute = find_automorphism(code, &[1, 2], |p| p != sigma && p.is_involution())?;
    Ok(brute.map(|perm| Witness {
        perm,
        construction: Construction::BruteForce,
    }))
}
