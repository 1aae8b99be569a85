//! Acceptance criteria. Runs as a plain binary and prints one PASS/FAIL
//! line per criterion; exits nonzero if any criterion fails.

mod common;

use std::collections::HashSet;
use std::process::Command;
use std::time::{Duration, Instant};

use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pautkit::aut::paut_order;
use pautkit::census::{
    enumerate_invariant_by_filter, enumerate_sigma_invariant, enumerate_subspaces, sigma_invariant_count,
};
use pautkit::fixed::{alpha_x, decompose, extra_automorphism, fixed_point_witness, t_set, t_sigma_from_complement};
use pautkit::gf2::{LinearCode, Word};
use pautkit::perm::canonical_sigma;
use pautkit::verify::sample::{planted_code, random_codeword, random_involution, sigma_invariant_code};
use pautkit::verify::{
    conjecture_search, verify_fixed_point_witness, verify_flip_property, verify_four_dimensional,
    verify_half_dimension, verify_length_four, verify_no_sigma_group, SearchConfig,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn words_of(code: &LinearCode) -> (Vec<u64>, HashSet<u64>) {
    let g = masks(code);
    let s = span(&g);
    (g, s)
}

fn length_four_characterization() -> Outcome {
    let started = Instant::now();
    let perms = all_perms(4);
    let codes: Vec<LinearCode> = enumerate_subspaces(4, 2).map_err(|e| e.to_string())?.collect();
    ensure(codes.len() == 35, || format!("{} codes", codes.len()))?;
    for a in 0..4 {
        for b in a + 1..4 {
            let mut beta: Vec<usize> = (0..4).collect();
            beta.swap(a, b);
            let mut hits = 0;
            for c in &codes {
                let (g, s) = words_of(c);
                let auts = brute_paut(4, &g, &perms);
                let is_beta = auts.len() == 2 && auts.contains(&beta);
                let fixed = s.iter().all(|&w| act(&beta, w) == w);
                let mut profile = [0u64; 5];
                for &w in &s {
                    profile[w.count_ones() as usize] += 1;
                }
                ensure(is_beta == (fixed && profile == [1, 1, 1, 1, 0]), || format!("{c:?} against {beta:?}"))?;
                hits += usize::from(is_beta);
            }
            ensure(hits == 2, || format!("{hits} codes for {beta:?}"))?;
        }
    }
    let report = verify_length_four().map_err(|e| e.to_string())?;
    ensure(report.is_clean() && report.scanned == 210 && report.witnesses_checked == 12, || {
        format!("library report {report:?}")
    })?;
    let elapsed = started.elapsed();
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("2 codes per transposition, 210 pairs, {elapsed:.2?}"))
}

fn no_sigma_group_up_to_eight() -> Outcome {
    let started = Instant::now();
    let mut total = 0;
    for n in [6usize, 8] {
        let report = verify_no_sigma_group(n, 4).map_err(|e| e.to_string())?;
        let expected: u128 = (0..=n).map(|k| sigma_invariant_count(n, k)).sum();
        ensure(report.scanned as u128 == expected, || format!("n={n}: scanned {} of {expected}", report.scanned))?;
        ensure(report.is_clean(), || format!("n={n}: {:?}", report.counterexamples))?;
        total += report.scanned;
    }
    let elapsed = started.elapsed();
    ensure(elapsed < Duration::from_secs(600), || format!("took {elapsed:?}"))?;
    Ok(format!("{total} sigma-invariant codes at n = 6, 8, none with PAut = <sigma>, {elapsed:.2?}"))
}

fn four_dimensional_length_ten() -> Outcome {
    let n = 10;
    let sigma = canonical_sigma(n).map_err(|e| e.to_string())?;
    let sigma_images = sigma_images(n);
    let mut scanned = 0u64;
    for c in enumerate_sigma_invariant(n, 4).map_err(|e| e.to_string())? {
        scanned += 1;
        let (g, s) = words_of(&c);
        let w = extra_automorphism(&c, &sigma)
            .map_err(|e| e.to_string())?
            .ok_or_else(|| format!("no witness for {c:?}"))?;
        let images = w.perm.images();
        ensure(is_involution(images) && images != sigma_images.as_slice(), || format!("{} for {c:?}", w.perm))?;
        ensure(preserves(images, &g, &s), || format!("{} does not preserve {c:?}", w.perm))?;
    }
    ensure(scanned as u128 == sigma_invariant_count(n, 4), || format!("scanned {scanned}"))?;
    let report = verify_four_dimensional(n, 4).map_err(|e| e.to_string())?;
    ensure(report.is_clean() && report.witnesses_checked == scanned, || format!("{report:?}"))?;
    Ok(format!("{scanned} codes, each with a validated involution besides sigma"))
}

fn half_dimension_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..10_000 {
        let n = rng.gen_range(2..=12);
        let beta = random_involution(&mut rng, n);
        let c = planted_code(&mut rng, &beta);
        let (g, s) = words_of(&c);
        let images = beta.images();
        ensure(preserves(images, &g, &s), || format!("{beta} not planted in {c:?}"))?;
        let fixed = s.iter().filter(|&&w| act(images, w) == w).count();
        let f = fixed.trailing_zeros() as usize;
        ensure(2 * f >= dim_of(&s), || format!("{c:?}: f = {f}"))?;
    }
    let report = verify_half_dimension(10_000, 12, 1).map_err(|e| e.to_string())?;
    ensure(report.is_clean() && report.scanned == 10_000, || format!("{report:?}"))?;
    Ok("2 x 10^4 planted codes, no violation".into())
}

fn flip_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let mut checked = 0;
    let mut proper = 0;
    while checked < 10_000 {
        let n = 2 * rng.gen_range(1..=6);
        let sigma = canonical_sigma(n).map_err(|e| e.to_string())?;
        let c = sigma_invariant_code(&mut rng, n, &[]);
        let (_, s) = words_of(&c);
        let w = random_codeword(&mut rng, &c);
        let wm = masks_of_word(&w);
        let y = wm ^ act(&sigma_images(n), wm);
        if y == 0 {
            continue;
        }
        let fixed: Vec<u64> = s.iter().copied().filter(|&x| x != 0 && act(&sigma_images(n), x) == x).collect();
        let pick = fixed[rng.gen_range(0..fixed.len())];
        let pairs = |v: u64| (0..n / 2).filter(move |p| (v >> (2 * p)) & 3 == 3).collect::<HashSet<_>>();
        let x = if pairs(pick).is_subset(&pairs(y)) { pick } else { y };
        proper += usize::from(x != y);
        let xw = word_of(n, x);
        let alpha = alpha_x(&xw, &sigma).map_err(|e| e.to_string())?;
        ensure(t_set(&xw, &sigma).map_err(|e| e.to_string())?.iter().collect::<HashSet<_>>() == pairs(x), || {
            "T_x disagrees".to_string()
        })?;
        ensure(act(alpha.images(), wm) == wm ^ x, || format!("alpha_x fails on {c:?}, w = {w}"))?;
        checked += 1;
    }
    let report = verify_flip_property(10_000, 12, 2).map_err(|e| e.to_string())?;
    ensure(report.is_clean() && report.scanned == 10_000, || format!("{report:?}"))?;
    Ok(format!("2 x 10^4 samples ({proper} with x != y), no violation"))
}

fn fixed_point_witness_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..10_000 {
        let n = 2 * rng.gen_range(2..=8);
        let m = n / 2;
        let sigma = canonical_sigma(n).map_err(|e| e.to_string())?;
        let mut quiet: Vec<usize> = (0..m).filter(|_| rng.gen()).collect();
        if quiet.is_empty() {
            quiet.push(rng.gen_range(0..m));
        }
        let c = sigma_invariant_code(&mut rng, n, &quiet);
        let beta = fixed_point_witness(&c, &sigma)
            .map_err(|e| e.to_string())?
            .ok_or_else(|| format!("no witness for {c:?}"))?;
        let b = beta.images().to_vec();
        let s = sigma_images(n);
        let id: Vec<usize> = (0..n).collect();
        ensure(b != id, || "identity".into())?;
        ensure(b != s, || "equals sigma".into())?;
        let (g, words) = words_of(&c);
        ensure(preserves(&b, &g, &words), || format!("{beta} not an automorphism of {c:?}"))?;
        let fixed_points = b.iter().enumerate().filter(|&(i, &j)| i == j).count();
        ensure(fixed_points >= 2, || format!("{beta} has {fixed_points} fixed points"))?;
        let group = closure(&[s, b]);
        ensure(group.len() == 4 && group.iter().all(|p| *p == id || is_involution(p)), || {
            format!("<sigma, {beta}> has order {}", group.len())
        })?;
    }
    let report = verify_fixed_point_witness(10_000, 16, 3).map_err(|e| e.to_string())?;
    ensure(report.is_clean() && report.witnesses_checked == 10_000, || format!("{report:?}"))?;
    Ok("2 x 10^4 codes, all five properties hold".into())
}

fn paut_oracle_equivalence() -> Outcome {
    let mut codes = 0;
    for n in 1..=6 {
        let perms = all_perms(n);
        for k in 0..=n {
            for c in enumerate_subspaces(n, k).map_err(|e| e.to_string())? {
                let expected = brute_paut(n, &masks(&c), &perms).len() as u64;
                let got = paut_order(&c).map_err(|e| e.to_string())?;
                ensure(got == expected, || format!("{c:?}: {got} vs {expected}"))?;
                codes += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for n in [7usize, 8] {
        let perms = all_perms(n);
        for _ in 0..100 {
            let k = rng.gen_range(0..=n);
            let rows: Vec<Word> = (0..k).map(|_| pautkit::verify::sample::random_word(&mut rng, n)).collect();
            let c = LinearCode::from_rows(n, rows).map_err(|e| e.to_string())?;
            let expected = brute_paut(n, &masks(&c), &perms).len() as u64;
            let got = paut_order(&c).map_err(|e| e.to_string())?;
            ensure(got == expected, || format!("{c:?}: {got} vs {expected}"))?;
            codes += 1;
        }
    }
    Ok(format!("{codes} codes, orders equal to the n! filter"))
}

fn census_exactness() -> Outcome {
    for n in 0..=8 {
        for k in 0..=n {
            let count = enumerate_subspaces(n, k).map_err(|e| e.to_string())?.count() as u128;
            ensure(count == q_binomial(n, k), || format!("n={n} k={k}: {count}"))?;
        }
    }
    let mut invariant = 0;
    for n in (2..=8).step_by(2) {
        let sigma = canonical_sigma(n).map_err(|e| e.to_string())?;
        let s = sigma_images(n);
        for k in 0..=n {
            let native: Vec<LinearCode> = enumerate_sigma_invariant(n, k).map_err(|e| e.to_string())?.collect();
            let set: HashSet<LinearCode> = native.iter().cloned().collect();
            ensure(set.len() == native.len(), || format!("duplicates at n={n} k={k}"))?;
            let filtered: HashSet<LinearCode> =
                enumerate_invariant_by_filter(n, k, &sigma).map_err(|e| e.to_string())?.collect();
            ensure(set == filtered, || format!("filter mismatch at n={n} k={k}"))?;
            let own: HashSet<LinearCode> = enumerate_subspaces(n, k)
                .map_err(|e| e.to_string())?
                .filter(|c| {
                    let (g, w) = words_of(c);
                    preserves(&s, &g, &w)
                })
                .collect();
            ensure(set == own, || format!("brute filter mismatch at n={n} k={k}"))?;
            invariant += set.len();
        }
    }
    Ok(format!("all (n <= 8, k) counts exact, {invariant} sigma-invariant codes match both filters"))
}

fn t_sigma_choice_free() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    let mut nontrivial = 0;
    for _ in 0..1_000 {
        let n = 2 * rng.gen_range(1..=6);
        let sigma = canonical_sigma(n).map_err(|e| e.to_string())?;
        let s = sigma_images(n);
        let c = sigma_invariant_code(&mut rng, n, &[]);
        let support = span(&masks(&c)).into_iter().fold(0u64, |acc, w| acc | (w ^ act(&s, w)));
        let expected: HashSet<usize> = (0..n / 2).filter(|p| (support >> (2 * p)) & 3 == 3).collect();
        let d = decompose(&c, &sigma).map_err(|e| e.to_string())?;
        let r = d.complement_basis.len();
        nontrivial += usize::from(r > 0);
        for _ in 0..100 {
            let basis = random_complement(&mut rng, &d.complement_basis, &d.fixed);
            let got: HashSet<usize> = t_sigma_from_complement(&c, &sigma, &basis)
                .map_err(|e| e.to_string())?
                .iter()
                .collect();
            ensure(got == expected, || format!("{c:?}: {got:?} vs {expected:?}"))?;
        }
    }
    Ok(format!("10^3 codes ({nontrivial} with nonzero complement) x 100 complements, all equal"))
}

/// `A * basis + (random fixed words)` for a random invertible matrix `A`.
fn random_complement(rng: &mut ChaCha8Rng, basis: &[Word], fixed: &LinearCode) -> Vec<Word> {
    let r = basis.len();
    loop {
        let rows: Vec<Vec<bool>> = (0..r).map(|_| (0..r).map(|_| rng.gen()).collect()).collect();
        if rank_gf2(&rows) < r {
            continue;
        }
        return rows
            .iter()
            .map(|row| {
                let mut w = random_codeword(rng, fixed);
                for (j, &bit) in row.iter().enumerate() {
                    if bit {
                        w.xor_assign(&basis[j]);
                    }
                }
                w
            })
            .collect();
    }
}

fn rank_gf2(rows: &[Vec<bool>]) -> usize {
    let mut m: Vec<u64> = rows
        .iter()
        .map(|r| r.iter().enumerate().fold(0u64, |a, (i, &b)| a | (u64::from(b) << i)))
        .collect();
    let mut rank = 0;
    for bit in 0..64 {
        if let Some(p) = (rank..m.len()).find(|&i| (m[i] >> bit) & 1 == 1) {
            m.swap(rank, p);
            let pivot = m[rank];
            for (i, v) in m.iter_mut().enumerate() {
                if i != rank && (*v >> bit) & 1 == 1 {
                    *v ^= pivot;
                }
            }
            rank += 1;
        }
    }
    rank
}

fn search_harness() -> Outcome {
    let fresh = conjecture_search(&SearchConfig::new(10, 5, 5)).map_err(|e| e.to_string())?;
    let expected = sigma_invariant_count(10, 5) as u64;
    ensure(fresh.scanned == expected, || format!("scanned {} of {expected}", fresh.scanned))?;

    let mut shard_sum = 0;
    for index in 0..2 {
        let mut cfg = SearchConfig::new(10, 5, 5);
        cfg.slice = pautkit::census::Slice::new(index, 2).map_err(|e| e.to_string())?;
        cfg.jobs = 2;
        shard_sum += conjecture_search(&cfg).map_err(|e| e.to_string())?.scanned;
    }
    ensure(shard_sum == fresh.scanned, || format!("shards sum to {shard_sum}"))?;

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let journal = dir.path().join("journal.ndjson");
    let mut cfg = SearchConfig::new(10, 5, 5);
    cfg.journal = Some(journal.clone());
    cfg.jobs = 4;
    let journaled = conjecture_search(&cfg).map_err(|e| e.to_string())?;
    // simulate a crash: keep the first 20 records and half of the next one
    let text = std::fs::read_to_string(&journal).map_err(|e| e.to_string())?;
    let lines: Vec<&str> = text.lines().collect();
    let kept: u64 = lines[..20]
        .iter()
        .map(|l| serde_json::from_str::<pautkit::verify::JournalRecord>(l).unwrap().scanned)
        .sum();
    let torn = format!("{}\n{}", lines[..20].join("\n"), &lines[20][..lines[20].len() / 2]);
    std::fs::write(&journal, torn).map_err(|e| e.to_string())?;
    let resumed = conjecture_search(&cfg).map_err(|e| e.to_string())?;
    ensure(resumed.without_timing() == fresh.without_timing(), || "resumed report differs".into())?;
    ensure(journaled.without_timing() == fresh.without_timing(), || "journaled report differs".into())?;

    let out = Command::new(env!("CARGO_BIN_EXE_pautkit"))
        .args(["conjecture", "--n", "10", "--k", "5", "--jobs", "4"])
        .output()
        .map_err(|e| e.to_string())?;
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    ensure(v["scanned"] == expected, || format!("cli scanned {}", v["scanned"]))?;
    let clean = v["counterexamples"].as_array().is_some_and(Vec::is_empty);
    ensure(out.status.code() == Some(if clean { 0 } else { 1 }), || format!("exit {:?}", out.status))?;
    Ok(format!(
        "scanned {expected}, shards 0/2 + 1/2 = {shard_sum}, resume after {kept} journaled codes matches, \
         outcome: {} code(s) with PAut = <sigma>",
        fresh.counterexamples.len()
    ))
}

fn masks_of_word(w: &Word) -> u64 {
    w.ones_iter().fold(0, |acc, i| acc | 1 << i)
}

fn word_of(n: usize, mask: u64) -> Word {
    Word::from_bits(&(0..n).map(|i| (mask >> i) & 1 == 1).collect::<Vec<_>>())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("length-4 transposition characterization", length_four_characterization),
        ("no PAut = <sigma> at n = 6, 8 (all dimensions)", no_sigma_group_up_to_eight),
        ("[10,4] sigma-invariant codes have a second involution", four_dimensional_length_ten),
        ("fixed subcode has at least half the dimension", half_dimension_suite),
        ("alpha_x sends w to w + x", flip_suite),
        ("fixed-point witness generates C2 x C2 with sigma", fixed_point_witness_suite),
        ("PAut order equals brute-force filter", paut_oracle_equivalence),
        ("census counts and invariant enumeration", census_exactness),
        ("T(sigma) is independent of the complement", t_sigma_choice_free),
        ("search harness at n = 10, k = 5", search_harness),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = started.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{elapsed:.2?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{elapsed:.2?}]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

