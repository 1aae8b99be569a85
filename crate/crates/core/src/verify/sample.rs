//! Random codes with a planted involutory automorphism.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::gf2::{LinearCode, Word};
use crate::perm::{canonical_sigma, Perm};

pub fn random_word<R: Rng>(rng: &mut R, n: usize) -> Word {
    let bits: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
    Word::from_bits(&bits)
}

/// An involution on `n >= 2` points with at least one 2-cycle.
pub fn random_involution<R: Rng>(rng: &mut R, n: usize) -> Perm {
    let mut points: Vec<usize> = (0..n).collect();
    points.shuffle(rng);
    let pairs = rng.gen_range(1..=n / 2);
    let cycles: Vec<Vec<usize>> = points.chunks(2).take(pairs).map(<[usize]>::to_vec).collect();
    Perm::from_cycles(n, &cycles).expect("disjoint cycles")
}

/// A random word fixed by the involution `beta`.
pub fn random_fixed_word<R: Rng>(rng: &mut R, beta: &Perm) -> Word {
    let mut w = Word::zeros(beta.len());
    for cycle in beta.cycles() {
        if rng.gen() {
            for i in cycle {
                w.set(i, true);
            }
        }
    }
    w
}

/// Span of `w, w^beta` for a few random `w` plus a few fixed words.
pub fn planted_code<R: Rng>(rng: &mut R, beta: &Perm) -> LinearCode {
    let n = beta.len();
    let orbits = rng.gen_range(1..=n / 2 + 1);
    let fixed = rng.gen_range(0..=n / 2);
    let mut rows = Vec::new();
    for _ in 0..orbits {
        let w = random_word(rng, n);
        rows.push(beta.apply(&w).expect("same length"));
        rows.push(w);
    }
    for _ in 0..fixed {
        rows.push(random_fixed_word(rng, beta));
    }
    LinearCode::from_rows(n, rows).expect("same length")
}

/// A code invariant under `(1,2)(3,4)...(n-1,n)` whose orbit words read
/// `00` or `11` on every pair listed in `quiet`, so `T(sigma)` misses them.
pub fn sigma_invariant_code<R: Rng>(rng: &mut R, n: usize, quiet: &[usize]) -> LinearCode {
    let sigma = canonical_sigma(n).expect("even n");
    let orbits = rng.gen_range(0..=n / 2);
    let fixed = rng.gen_range(0..=n / 2);
    let mut rows = Vec::new();
    for _ in 0..orbits {
        let mut w = random_word(rng, n);
        for &p in quiet {
            let b = w.get(2 * p);
            w.set(2 * p + 1, b);
        }
        rows.push(sigma.apply(&w).expect("same length"));
        rows.push(w);
    }
    for _ in 0..fixed {
        rows.push(random_fixed_word(rng, &sigma));
    }
    LinearCode::from_rows(n, rows).expect("same length")
}

/// A random element of `code`.
pub fn random_codeword<R: Rng>(rng: &mut R, code: &LinearCode) -> Word {
    let mut w = Word::zeros(code.length());
    for g in code.generators() {
        if rng.gen() {
            w.xor_assign(g);
        }
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aut::is_automorphism;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn planted_codes_carry_their_involution() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(2..=12);
            let beta = random_involution(&mut rng, n);
            assert!(beta.is_involution());
            let c = planted_code(&mut rng, &beta);
            assert!(is_automorphism(&c, &beta).unwrap());
        }
    }

    #[test]
    fn sigma_codes_are_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..200 {
            let n = 2 * rng.gen_range(1..=8);
            let c = sigma_invariant_code(&mut rng, n, &[0]);
            assert!(is_automorphism(&c, &canonical_sigma(n).unwrap()).unwrap());
        }
    }
}
