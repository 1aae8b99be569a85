use std::fmt;
use std::ops::{Add, AddAssign, BitAnd};
use std::str::FromStr;

use smallvec::SmallVec;

use crate::error::{invalid, Error, Result};

type Limbs = SmallVec<[u64; 1]>;

/// A vector of GF(2)^n, bit-packed.
///
/// Coordinate `i` (0-based) is bit `i % 64` of limb `i / 64`. Bits past
/// `len` are always zero, so derived equality and hashing are
/// coordinate-wise.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    len: usize,
    limbs: Limbs,
}

fn limb_count(len: usize) -> usize {
    len.div_ceil(64)
}

impl Word {
    pub fn zeros(len: usize) -> Self {
        Word {
            len,
            limbs: smallvec::smallvec![0; limb_count(len)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut w = Word::zeros(len);
        for i in 0..len {
            w.set(i, true);
        }
        w
    }

    /// Builds a word from the low `len` bits of `mask`.
    pub fn from_u64(len: usize, mask: u64) -> Self {
        assert!(len <= 64, "from_u64 needs len <= 64, got {len}");
        let mut w = Word::zeros(len);
        if len > 0 {
            let keep = if len == 64 { u64::MAX } else { (1u64 << len) - 1 };
            w.limbs[0] = mask & keep;
        }
        w
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut w = Word::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            w.set(i, b);
        }
        w
    }

    /// The unit vector with a single one at coordinate `i`.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut w = Word::zeros(len);
        w.set(i, true);
        w
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// The packed limbs, little-endian by coordinate.
    pub fn limbs(&self) -> &[u64] {
        &self.limbs
    }

    /// The whole word as one mask, when it fits.
    pub fn as_u64(&self) -> Option<u64> {
        match self.limbs.len() {
            0 => Some(0),
            1 => Some(self.limbs[0]),
            _ => None,
        }
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.limbs[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "coordinate {i} out of range for length {}", self.len);
        let bit = 1u64 << (i % 64);
        if value {
            self.limbs[i / 64] |= bit;
        } else {
            self.limbs[i / 64] &= !bit;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len);
        self.limbs[i / 64] ^= 1u64 << (i % 64);
    }

    /// Hamming weight.
    pub fn weight(&self) -> usize {
        self.limbs.iter().map(|l| l.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.iter().all(|&l| l == 0)
    }

    /// Lowest coordinate holding a one.
    pub fn first_one(&self) -> Option<usize> {
        self.limbs
            .iter()
            .enumerate()
            .find(|(_, &l)| l != 0)
            .map(|(idx, l)| idx * 64 + l.trailing_zeros() as usize)
    }

    /// Coordinates holding a one, ascending.
    pub fn ones_iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.limbs.iter().enumerate().flat_map(|(idx, &limb)| {
            let mut rest = limb;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let tz = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(idx * 64 + tz)
                }
            })
        })
    }

    /// Standard inner product over GF(2): parity of the overlap.
    pub fn dot(&self, other: &Word) -> bool {
        assert_eq!(self.len, other.len);
        let ones: u32 = self
            .limbs
            .iter()
            .zip(other.limbs.iter())
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones % 2 == 1
    }

    pub fn xor_assign(&mut self, other: &Word) {
        assert_eq!(self.len, other.len, "word length mismatch");
        for (a, b) in self.limbs.iter_mut().zip(other.limbs.iter()) {
            *a ^= b;
        }
    }

    /// 0/1 string: character `i` is coordinate `i + 1`.
    pub fn to_bit_string(&self) -> String {
        (0..self.len).map(|i| if self.get(i) { '1' } else { '0' }).collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bit_string())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({})", self.to_bit_string())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut w = Word::zeros(s.chars().count());
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => w.set(i, true),
                other => return Err(invalid(format!("unexpected character {other:?} in word"))),
            }
        }
        Ok(w)
    }
}

impl Add for &Word {
    type Output = Word;

    fn add(self, rhs: &Word) -> Word {
        let mut out = self.clone();
        out.xor_assign(rhs);
        out
    }
}

impl Add for Word {
    type Output = Word;

    fn add(mut self, rhs: Word) -> Word {
        self.xor_assign(&rhs);
        self
    }
}

impl AddAssign<&Word> for Word {
    fn add_assign(&mut self, rhs: &Word) {
        self.xor_assign(rhs);
    }
}

impl BitAnd for &Word {
    type Output = Word;

    fn bitand(self, rhs: &Word) -> Word {
        assert_eq!(self.len, rhs.len);
        let mut out = self.clone();
        for (a, b) in out.limbs.iter_mut().zip(rhs.limbs.iter()) {
            *a &= b;
        }
        out
    }
}
