//! Coordinate permutations and their right action on words and codes.
//!
//! A [`Perm`] stores the image of every 0-based coordinate. Acting on a word
//! moves the bit at coordinate `i` to coordinate `p(i)`, so the result reads
//! `w[p^{-1}(i)]` at position `i`. Products are written left to right:
//! `p.then(q)` applies `p` first, which makes the action a right action:
//! `q.apply(&p.apply(w)) == p.then(q).apply(w)`.
//!
//! Everything printed or parsed uses 1-based cycle notation such as
//! `(1,2)(3,4)`, with `()` for the identity.

use std::fmt;

use crate::error::{invalid, Result};
use crate::gf2::{LinearCode, Word};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

/// Multiset of cycle lengths, fixed points included, sorted descending.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycleType(Vec<usize>);

impl CycleType {
    pub fn lengths(&self) -> &[usize] {
        &self.0
    }

    pub fn fixed_points(&self) -> usize {
        self.0.iter().filter(|&&l| l == 1).count()
    }
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm {
            images: (0..n).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &j in &images {
            if j >= n || seen[j] {
                return Err(invalid(format!("{images:?} is not a permutation")));
            }
            seen[j] = true;
        }
        Ok(Perm { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Perm::from_images(images.clone()).is_ok());
        Perm { images }
    }

    /// Transposition of the 0-based coordinates `a` and `b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        if a >= n || b >= n || a == b {
            return Err(invalid(format!("bad transposition ({a},{b}) on {n} points")));
        }
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a, b);
        Ok(Perm { images })
    }

    /// Product of disjoint 0-based cycles.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        for cycle in cycles {
            for (idx, &a) in cycle.iter().enumerate() {
                if a >= n || used[a] {
                    return Err(invalid(format!("cycle entry {} repeated or out of range", a + 1)));
                }
                used[a] = true;
                images[a] = cycle[(idx + 1) % cycle.len()];
            }
        }
        Ok(Perm { images })
    }

    /// Parses 1-based cycle notation on `n` points. Whitespace is ignored.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut cycles = Vec::new();
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .and_then(|r| r.split_once(')'))
                .ok_or_else(|| invalid(format!("malformed cycle notation {s:?}")))?;
            let (inner, tail) = body;
            rest = tail;
            if inner.is_empty() {
                continue;
            }
            let cycle = inner
                .split(',')
                .map(|t| match t.parse::<usize>() {
                    Ok(v) if v >= 1 => Ok(v - 1),
                    _ => Err(invalid(format!("bad point {t:?} in {s:?}"))),
                })
                .collect::<Result<Vec<_>>>()?;
            cycles.push(cycle);
        }
        Perm::from_cycles(n, &cycles)
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    #[inline]
    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Perm { images: inv }
    }

    /// `self` first, then `next`: maps `i` to `next(self(i))`.
    pub fn then(&self, next: &Perm) -> Perm {
        assert_eq!(self.len(), next.len(), "permutation degree mismatch");
        Perm {
            images: self.images.iter().map(|&j| next.images[j]).collect(),
        }
    }

    /// `b^{-1} self b` in the left-to-right product, i.e. `i -> b(self(b^{-1}(i)))`.
    pub fn conjugate(&self, b: &Perm) -> Result<Perm> {
        if self.len() != b.len() {
            return Err(invalid("conjugating by a permutation of another degree"));
        }
        Ok(b.inverse().then(self).then(b))
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        if w.len() != self.len() {
            return Err(invalid(format!(
                "permutation on {} points applied to a word of length {}",
                self.len(),
                w.len()
            )));
        }
        let mut out = Word::zeros(w.len());
        for i in w.ones_iter() {
            out.set(self.images[i], true);
        }
        Ok(out)
    }

    /// [`Perm::apply`] for a word packed in a single mask.
    #[inline]
    pub fn apply_mask(&self, mask: u64) -> u64 {
        let mut out = 0u64;
        let mut rest = mask;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            out |= 1u64 << self.images[i];
        }
        out
    }

    /// Disjoint cycles (0-based), each starting at its least point, ordered by
    /// that point. Fixed points are included as 1-cycles.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        let mut lengths: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        CycleType(lengths)
    }

    /// Order 2: every cycle has length at most 2 and one has length 2.
    pub fn is_involution(&self) -> bool {
        let mut moved = false;
        for (i, &j) in self.images.iter().enumerate() {
            if self.images[j] != i {
                return false;
            }
            moved |= i != j;
        }
        moved
    }

    pub fn is_fixed_point_free(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i != j)
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.images[i] == i).collect()
    }

    pub fn order(&self) -> u64 {
        fn gcd(a: u64, b: u64) -> u64 {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        self.cycles()
            .iter()
            .map(|c| c.len() as u64)
            .fold(1, |acc, l| acc / gcd(acc, l) * l)
    }
}

/// The fixed-point-free involution `(1,2)(3,4)...(n-1,n)`.
pub fn canonical_sigma(n: usize) -> Result<Perm> {
    if n == 0 || n % 2 == 1 {
        return Err(invalid(format!("canonical involution needs a positive even length, got {n}")));
    }
    Ok(pair_involution(n, n / 2))
}

/// `(1,2)(3,4)...(2t-1,2t)` on `n` points, fixing the rest.
pub fn pair_involution(n: usize, pairs: usize) -> Perm {
    assert!(2 * pairs <= n);
    let images = (0..n)
        .map(|i| if i < 2 * pairs { i ^ 1 } else { i })
        .collect();
    Perm { images }
}

/// True when `p` is `(1,2)(3,4)...(n-1,n)`.
pub fn is_canonical_sigma(p: &Perm) -> bool {
    !p.is_empty() && p.len() % 2 == 0 && p.images.iter().enumerate().all(|(i, &j)| j == i ^ 1)
}

/// `C^p`: the image of every codeword, as a canonical code.
pub fn image_code(code: &LinearCode, p: &Perm) -> Result<LinearCode> {
    if code.length() != p.len() {
        return Err(invalid(format!(
            "permutation on {} points against a code of length {}",
            p.len(),
            code.length()
        )));
    }
    let rows = code
        .generators()
        .iter()
        .map(|g| p.apply(g))
        .collect::<Result<Vec<_>>>()?;
    LinearCode::from_rows(code.length(), rows)
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<Vec<usize>> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", pts.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{self}")
    }
}
