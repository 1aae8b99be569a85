//! Brute-force reference implementations, independent of the library
//! internals. Words are `u64` masks with coordinate `i` at bit `i`.
#![allow(dead_code)]

use std::collections::HashSet;

use pautkit::gf2::LinearCode;
use pautkit::perm::Perm;

pub fn masks(code: &LinearCode) -> Vec<u64> {
    code.generators()
        .iter()
        .map(|g| {
            g.to_bit_string()
                .chars()
                .enumerate()
                .filter(|&(_, c)| c == '1')
                .fold(0u64, |acc, (i, _)| acc | 1 << i)
        })
        .collect()
}

pub fn span(gens: &[u64]) -> HashSet<u64> {
    let mut out = HashSet::from([0u64]);
    for &g in gens {
        let more: Vec<u64> = out.iter().map(|&c| c ^ g).collect();
        out.extend(more);
    }
    out
}

pub fn dim_of(set: &HashSet<u64>) -> usize {
    set.len().trailing_zeros() as usize
}

/// `result[images[i]] = w[i]`.
pub fn act(images: &[usize], w: u64) -> u64 {
    (0..images.len())
        .filter(|&i| (w >> i) & 1 == 1)
        .fold(0, |acc, i| acc | 1 << images[i])
}

pub fn preserves(images: &[usize], gens: &[u64], words: &HashSet<u64>) -> bool {
    gens.iter().all(|&g| words.contains(&act(images, g)))
}

pub fn all_perms(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for smaller in all_perms(n - 1) {
        for pos in 0..n {
            let mut p = smaller.clone();
            p.insert(pos, n - 1);
            out.push(p);
        }
    }
    out
}

pub fn brute_paut(n: usize, gens: &[u64], perms: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let words = span(gens);
    debug_assert!(perms.iter().all(|p| p.len() == n));
    perms.iter().filter(|p| preserves(p, gens, &words)).cloned().collect()
}

pub fn sigma_images(n: usize) -> Vec<usize> {
    (0..n).map(|i| i ^ 1).collect()
}

pub fn compose(first: &[usize], second: &[usize]) -> Vec<usize> {
    first.iter().map(|&i| second[i]).collect()
}

pub fn closure(gens: &[Vec<usize>]) -> HashSet<Vec<usize>> {
    let n = gens.first().map_or(0, Vec::len);
    let id: Vec<usize> = (0..n).collect();
    let mut seen = HashSet::from([id.clone()]);
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = compose(&x, g);
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen
}

pub fn is_involution(p: &[usize]) -> bool {
    p.iter().enumerate().all(|(i, &j)| p[j] == i) && p.iter().enumerate().any(|(i, &j)| i != j)
}

/// Number of `k`-subspaces of GF(2)^n by the q-Pascal recurrence.
pub fn q_binomial(n: usize, k: usize) -> u128 {
    let mut table = vec![vec![0u128; n + 1]; n + 1];
    for row in 0..=n {
        table[row][0] = 1;
        for col in 1..=row {
            table[row][col] = table[row - 1][col - 1] + (1u128 << col) * if col <= row - 1 { table[row - 1][col] } else { 0 };
        }
    }
    if k > n {
        0
    } else {
        table[n][k]
    }
}

/// Every subspace of GF(2)^n as a sorted codeword list (n <= 5).
pub fn all_subspaces(n: usize) -> HashSet<Vec<u64>> {
    let mut found: HashSet<Vec<u64>> = HashSet::new();
    let mut stack = vec![vec![0u64]];
    while let Some(words) = stack.pop() {
        let mut sorted = words.clone();
        sorted.sort_unstable();
        if !found.insert(sorted) {
            continue;
        }
        let set: HashSet<u64> = words.iter().copied().collect();
        for v in 1..1u64 << n {
            if !set.contains(&v) {
                let mut bigger = words.clone();
                bigger.extend(words.iter().map(|&c| c ^ v));
                stack.push(bigger);
            }
        }
    }
    found
}

pub fn sorted_words(code: &LinearCode) -> Vec<u64> {
    let mut v: Vec<u64> = span(&masks(code)).into_iter().collect();
    v.sort_unstable();
    v
}

pub fn to_perm(images: &[usize]) -> Perm {
    Perm::from_images(images.to_vec()).unwrap()
}
