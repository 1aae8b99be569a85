//! Per-code checks and the verifiers that run them.
//!
//! Every check returns `Ok(None)` when the statement holds on the code (or
//! the code lies outside the statement's hypotheses) and `Ok(Some(reason))`
//! when it fails. The same functions replay stored counterexamples.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::sample::{
    planted_code, random_codeword, random_involution, sigma_invariant_code,
};
use super::{require, scan_units, triage, units, Counterexample, Tally, VerifyReport};
use crate::aut::{group_elements, is_automorphism, is_group_code, paut_order, quasi_group_witness};
use crate::census::{enumerate_subspaces, Slice};
use crate::error::{too_large, Result};
use crate::fixed::{alpha_x, extra_automorphism, fixed_point_witness, fixed_subcode, t_sigma, t_set};
use crate::gf2::{LinearCode, Word};
use crate::perm::{canonical_sigma, pair_involution, Perm};

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn record(tally: &mut Tally, failure: Option<String>, cex: impl FnOnce(String) -> Counterexample) {
    if let Some(reason) = failure {
        tally.counterexamples.push(cex(reason));
    }
}

// ---- half dimension ------------------------------------------------------

pub(crate) fn half_dimension(code: &LinearCode, beta: &Perm) -> Result<Option<String>> {
    if !beta.is_involution() || !is_automorphism(code, beta)? {
        return Ok(Some(format!("{beta} is not an involutory automorphism")));
    }
    let k = code.dim();
    let f = fixed_subcode(code, beta)?.dim();
    Ok((2 * f < k).then(|| format!("k = {k} but the fixed subcode has dimension {f}")))
}

/// Random codes with a planted involution `beta`: `dim F_beta(C) >= ceil(k/2)`.
pub fn verify_half_dimension(trials: usize, n_max: usize, seed: u64) -> Result<VerifyReport> {
    let started = Instant::now();
    require(n_max >= 2, || format!("n_max must be at least 2, got {n_max}"))?;
    let mut rng = seeded(seed);
    let mut tally = Tally::default();
    for _ in 0..trials {
        let n = rng.gen_range(2..=n_max);
        let beta = random_involution(&mut rng, n);
        let code = planted_code(&mut rng, &beta);
        tally.scanned += 1;
        let failure = half_dimension(&code, &beta)?;
        if failure.is_none() {
            tally.witnesses_checked += 1;
        }
        record(&mut tally, failure, |r| Counterexample::new(&code, r).with_involution(&beta));
    }
    Ok(tally.into_report("lemma-2.1", n_max, [0, n_max], Slice::WHOLE, started))
}

// ---- pair involution bound -----------------------------------------------

pub(crate) fn pair_involution_bound(code: &LinearCode, beta: &Perm) -> Result<Option<String>> {
    if !is_automorphism(code, beta)? || paut_order(code)? != 2 {
        return Ok(None);
    }
    let k = code.dim();
    let f = fixed_subcode(code, beta)?.dim();
    if f + 1 > k || 2 * f < k {
        return Ok(Some(triage(code, format!("PAut = <{beta}> with k = {k}, f = {f}"))));
    }
    Ok(None)
}

/// For `beta = (1,2)(3,4)...(t,t+1)`, `t >= 3` odd, every `beta`-invariant
/// code with `PAut(C) = <beta>` has `ceil(k/2) <= f <= k-1`. Codes in the
/// hypothesis count as witnesses.
pub fn verify_pair_involution_bound(n: usize, jobs: usize) -> Result<VerifyReport> {
    let started = Instant::now();
    if n > 8 {
        return Err(too_large(format!("exhaustive scan limited to n <= 8, got {n}")));
    }
    require(n >= 4 && n % 2 == 0, || format!("n must be even and at least 4, got {n}"))?;
    let mut tally = Tally::default();
    for pairs in 2..=n / 2 {
        let beta = pair_involution(n, pairs);
        let part = scan_units(jobs, &units(n, 0..=n, Some(pairs)), |_, code, t| {
            let failure = pair_involution_bound(code, &beta)?;
            if failure.is_none() && paut_order(code)? == 2 {
                t.witnesses_checked += 1;
            }
            record(t, failure, |r| Counterexample::new(code, r).with_involution(&beta));
            Ok(())
        })?;
        tally.absorb(part);
    }
    Ok(tally.into_report("lemma-2.2", n, [0, n], Slice::WHOLE, started))
}

// ---- dimension one -------------------------------------------------------

pub(crate) fn dim_one(code: &LinearCode) -> Result<Option<String>> {
    let n = code.length();
    let d = code.generators()[0].weight();
    let order = paut_order(code)?;
    let expected = factorial(d) * factorial(n - d);
    if order != expected {
        return Ok(Some(triage(code, format!("order {order}, expected {d}!({n}-{d})! = {expected}"))));
    }
    let dual_order = paut_order(&code.dual())?;
    if dual_order != order {
        return Ok(Some(format!("dual has order {dual_order}, code has {order}")));
    }
    if order == 2 {
        return Ok(Some("PAut has order 2".into()));
    }
    if d == n {
        return Ok(None);
    }
    let quasi = quasi_group_witness(code)?.is_some();
    let group = is_group_code(code)?;
    if d % 2 == 0 && !(quasi && !group) {
        return Ok(Some(format!("even weight {d}: quasi group {quasi}, group {group}")));
    }
    if n.is_power_of_two() && (quasi && !group) != (d % 2 == 0) {
        return Ok(Some(format!("weight {d}: quasi group {quasi}, group {group}")));
    }
    Ok(None)
}

/// Every one-dimensional code of length `n`: `|PAut| = d!(n-d)! != 2`, the
/// dual has the same group, and the quasi group / group code flags follow
/// the weight. Validated quasi group witnesses are counted.
pub fn verify_dim_one(n: usize) -> Result<VerifyReport> {
    let started = Instant::now();
    if n > 8 {
        return Err(too_large(format!("group code test limited to n <= 8, got {n}")));
    }
    require(n >= 4 && n % 2 == 0, || format!("n must be even and at least 4, got {n}"))?;
    let mut tally = Tally::default();
    for code in enumerate_subspaces(n, 1)? {
        tally.scanned += 1;
        let failure = dim_one(&code)?;
        if let Some(w) = quasi_group_witness(&code)? {
            if w.is_fixed_point_free() && is_automorphism(&code, &w)? {
                tally.witnesses_checked += 1;
            }
        }
        record(&mut tally, failure, |r| Counterexample::new(&code, r));
    }
    Ok(tally.into_report("prop-3.1", n, [1, 1], Slice::WHOLE, started))
}

// ---- dimension two -------------------------------------------------------

pub(crate) fn dim_two(code: &LinearCode) -> Result<Option<String>> {
    let order = paut_order(code)?;
    Ok((order == 2).then(|| triage(code, "PAut has order 2".into())))
}

/// No two-dimensional code of length `n` has `|PAut| = 2`.
pub fn verify_dim_two(n: usize, jobs: usize) -> Result<VerifyReport> {
    let started = Instant::now();
    if n > 8 {
        return Err(too_large(format!("exhaustive scan limited to n <= 8, got {n}")));
    }
    require(n == 6 || n == 8, || format!("n must be 6 or 8, got {n}"))?;
    let tally = scan_units(jobs, &units(n, [2], None), |_, code, t| {
        record(t, dim_two(code)?, |r| Counterexample::new(code, r));
        Ok(())
    })?;
    Ok(tally.into_report("thm-3.2", n, [2, 2], Slice::WHOLE, started))
}

// ---- length four ---------------------------------------------------------

const LENGTH_FOUR_PROFILE: [u64; 5] = [1, 1, 1, 1, 0];

fn is_generated_by(code: &LinearCode, beta: &Perm) -> Result<bool> {
    Ok(is_automorphism(code, beta)? && paut_order(code)? == 2)
}

pub(crate) fn length_four(code: &LinearCode, beta: &Perm) -> Result<Option<String>> {
    let lhs = is_generated_by(code, beta)?;
    let fixed = fixed_subcode(code, beta)? == *code;
    let profile = code.weight_distribution()?.counts() == LENGTH_FOUR_PROFILE;
    Ok((lhs != (fixed && profile)).then(|| {
        format!("PAut = <{beta}> is {lhs}, pointwise fixed {fixed}, weight profile (1,1,1,1,0) {profile}")
    }))
}

pub(crate) fn length_four_count(beta: &Perm) -> Result<Option<String>> {
    let mut count = 0;
    for code in enumerate_subspaces(4, 2)? {
        if is_generated_by(&code, beta)? {
            count += 1;
        }
    }
    Ok((count != 2).then(|| format!("{count} codes have PAut = <{beta}>, expected 2")))
}

/// All 35 `[4,2]` codes against all 6 transpositions: `PAut(C) = <beta>`
/// exactly when `beta` fixes `C` pointwise and the weight distribution is
/// `(1,1,1,1,0)`, and exactly two codes qualify per transposition.
pub fn verify_length_four() -> Result<VerifyReport> {
    let started = Instant::now();
    let codes: Vec<LinearCode> = enumerate_subspaces(4, 2)?.collect();
    let mut tally = Tally::default();
    for a in 0..4 {
        for b in a + 1..4 {
            let beta = Perm::transposition(4, a, b)?;
            let mut count = 0;
            for code in &codes {
                tally.scanned += 1;
                if is_generated_by(code, &beta)? {
                    count += 1;
                    tally.witnesses_checked += 1;
                }
                record(&mut tally, length_four(code, &beta)?, |r| {
                    Counterexample::new(code, r).with_involution(&beta)
                });
            }
            if count != 2 {
                tally.counterexamples.push(Counterexample {
                    generators: Vec::new(),
                    reason: format!("{count} codes have PAut = <{beta}>, expected 2"),
                    involution: Some(beta.to_string()),
                    words: Vec::new(),
                });
            }
        }
    }
    Ok(tally.into_report("prop-3.4", 4, [2, 2], Slice::WHOLE, started))
}

// ---- sigma-invariant scans -----------------------------------------------

/// A validated involution of `code` other than `sigma`, or the reason none was found.
fn checked_extra(code: &LinearCode, sigma: &Perm) -> Result<std::result::Result<Perm, String>> {
    let Some(w) = extra_automorphism(code, sigma)? else {
        return Ok(Err(triage(code, "no involution besides sigma".into())));
    };
    let p = w.perm;
    if p == *sigma || !p.is_involution() || !is_automorphism(code, &p)? {
        return Ok(Err(format!("{} witness {p} failed validation", w.construction)));
    }
    Ok(Ok(p))
}

pub(crate) fn fixed_interval(code: &LinearCode, tally: &mut Tally) -> Result<Option<String>> {
    let n = code.length();
    let sigma = canonical_sigma(n)?;
    let k = code.dim();
    let f = fixed_subcode(code, &sigma)?.dim();
    if paut_order(code)? == 2 {
        if k == 3 || f + 1 >= k || 2 * f < k {
            return Ok(Some(triage(code, format!("PAut = <sigma> with k = {k}, f = {f}"))));
        }
    }
    if f + 1 >= k {
        match checked_extra(code, &sigma)? {
            Ok(_) => tally.witnesses_checked += 1,
            Err(reason) => return Ok(Some(format!("f = {f}, k = {k}: {reason}"))),
        }
    }
    Ok(None)
}

/// Every sigma-invariant code with `k >= 3`: `PAut(C) = <sigma>` forces
/// `ceil(k/2) <= f <= k-2`, and never happens for `k = 3`. Codes with
/// `f >= k-1` get an explicit second involution, counted as witnesses.
pub fn verify_fixed_interval(n: usize, jobs: usize) -> Result<VerifyReport> {
    let started = Instant::now();
    if n > 8 {
        return Err(too_large(format!("exhaustive scan limited to n <= 8, got {n}")));
    }
    require(n == 6 || n == 8, || format!("n must be 6 or 8, got {n}"))?;
    let tally = scan_units(jobs, &units(n, 3..=n, Some(n / 2)), |_, code, t| {
        let failure = fixed_interval(code, t)?;
        record(t, failure, |r| Counterexample::new(code, r));
        Ok(())
    })?;
    Ok(tally.into_report("thm-4.2", n, [3, n], Slice::WHOLE, started))
}

pub(crate) fn four_dimensional(code: &LinearCode, tally: &mut Tally) -> Result<Option<String>> {
    let sigma = canonical_sigma(code.length())?;
    if paut_order(code)? == 2 {
        return Ok(Some(triage(code, "PAut = <sigma>".into())));
    }
    match checked_extra(code, &sigma)? {
        Ok(_) => {
            tally.witnesses_checked += 1;
            Ok(None)
        }
        Err(reason) => Ok(Some(reason)),
    }
}

/// Every sigma-invariant `[n,4]` code has `PAut(C) != <sigma>`, and a second
/// involution is produced and validated for each.
pub fn verify_four_dimensional(n: usize, jobs: usize) -> Result<VerifyReport> {
    let started = Instant::now();
    if n > 10 {
        return Err(too_large(format!("exhaustive scan limited to n <= 10, got {n}")));
    }
    require(n >= 6 && n % 2 == 0, || format!("n must be 6, 8 or 10, got {n}"))?;
    let tally = scan_units(jobs, &units(n, [4], Some(n / 2)), |_, code, t| {
        let failure = four_dimensional(code, t)?;
        record(t, failure, |r| Counterexample::new(code, r));
        Ok(())
    })?;
    Ok(tally.into_report("thm-4.4", n, [4, 4], Slice::WHOLE, started))
}

pub(crate) fn no_sigma_group(code: &LinearCode) -> Result<Option<String>> {
    Ok((paut_order(code)? == 2).then(|| triage(code, "PAut = <sigma>".into())))
}

/// No sigma-invariant code of length `n` (any dimension) has `PAut(C) = <sigma>`.
pub fn verify_no_sigma_group(n: usize, jobs: usize) -> Result<VerifyReport> {
    let started = Instant::now();
    if n > 8 {
        return Err(too_large(format!("exhaustive scan limited to n <= 8, got {n}")));
    }
    require(n >= 4 && n % 2 == 0, || format!("n must be 4, 6 or 8, got {n}"))?;
    let tally = scan_units(jobs, &units(n, 0..=n, Some(n / 2)), |_, code, t| {
        record(t, no_sigma_group(code)?, |r| Counterexample::new(code, r));
        Ok(())
    })?;
    Ok(tally.into_report("cor-4.8", n, [0, n], Slice::WHOLE, started))
}

// ---- fixed-point witness -------------------------------------------------

pub(crate) fn fixed_point_witness_holds(code: &LinearCode) -> Result<Option<String>> {
    let n = code.length();
    let sigma = canonical_sigma(n)?;
    if t_sigma(code, &sigma)?.is_full() {
        return Ok(None);
    }
    let Some(beta) = fixed_point_witness(code, &sigma)? else {
        return Ok(Some("no witness although T(sigma) is not full".into()));
    };
    if beta.is_identity() {
        return Ok(Some("witness is the identity".into()));
    }
    if beta == sigma {
        return Ok(Some("witness equals sigma".into()));
    }
    if !is_automorphism(code, &beta)? {
        return Ok(Some(format!("witness {beta} is not an automorphism")));
    }
    if beta.fixed_points().len() < 2 {
        return Ok(Some(format!("witness {beta} has fewer than two fixed points")));
    }
    let group = group_elements(n, &[sigma, beta.clone()], 4);
    let klein = group.is_some_and(|g| g.len() == 4 && g.iter().all(|e| e.is_identity() || e.is_involution()));
    if !klein {
        return Ok(Some(format!("<sigma, {beta}> is not a Klein four-group")));
    }
    Ok(None)
}

/// Random sigma-invariant codes with `T(sigma)` not full: the fixed-point
/// witness is a non-identity automorphism other than `sigma` with at least
/// two fixed points, and together with `sigma` generates `C2 x C2`.
pub fn verify_fixed_point_witness(trials: usize, n_max: usize, seed: u64) -> Result<VerifyReport> {
    let started = Instant::now();
    require(n_max >= 4, || format!("n_max must be at least 4, got {n_max}"))?;
    let mut rng = seeded(seed);
    let mut tally = Tally::default();
    for _ in 0..trials {
        let n = 2 * rng.gen_range(2..=n_max / 2);
        let m = n / 2;
        let mut quiet: Vec<usize> = (0..m).filter(|_| rng.gen()).collect();
        if quiet.is_empty() {
            quiet.push(rng.gen_range(0..m));
        }
        let code = sigma_invariant_code(&mut rng, n, &quiet);
        tally.scanned += 1;
        let failure = fixed_point_witness_holds(&code)?;
        if failure.is_none() {
            tally.witnesses_checked += 1;
        }
        record(&mut tally, failure, |r| Counterexample::new(&code, r));
    }
    Ok(tally.into_report("thm-5.1", n_max, [0, n_max], Slice::WHOLE, started))
}

// ---- alpha_x ---------------------------------------------------------------

pub(crate) fn flip_property(code: &LinearCode, w: &Word, x: &Word) -> Result<Option<String>> {
    let sigma = canonical_sigma(code.length())?;
    let y = w + &sigma.apply(w)?;
    let in_domain = code.contains(w)?
        && !y.is_zero()
        && !x.is_zero()
        && code.contains(x)?
        && sigma.apply(x)? == *x
        && t_set(x, &sigma)?.is_subset(&t_set(&y, &sigma)?);
    if !in_domain {
        return Ok(None);
    }
    let image = alpha_x(x, &sigma)?.apply(w)?;
    let expected = w + x;
    Ok((image != expected).then(|| format!("alpha_x sends w to {image}, expected {expected}")))
}

/// Random `(C, w, x)` with `w` in `C` not fixed by sigma, `x` a nonzero fixed
/// codeword and `T_x ⊆ T_y` for `y = w + w^sigma`: `alpha_x` sends `w` to `w + x`.
pub fn verify_flip_property(trials: usize, n_max: usize, seed: u64) -> Result<VerifyReport> {
    let started = Instant::now();
    require(n_max >= 2, || format!("n_max must be at least 2, got {n_max}"))?;
    let mut rng = seeded(seed);
    let sigmas: Vec<Perm> = (1..=n_max / 2).map(|m| canonical_sigma(2 * m)).collect::<Result<_>>()?;
    let mut tally = Tally::default();
    while (tally.scanned as usize) < trials {
        let m = rng.gen_range(1..=n_max / 2);
        let sigma = &sigmas[m - 1];
        let code = sigma_invariant_code(&mut rng, 2 * m, &[]);
        let w = random_codeword(&mut rng, &code);
        let y = &w + &sigma.apply(&w)?;
        if y.is_zero() {
            continue;
        }
        let ty = t_set(&y, sigma)?;
        let fixed = fixed_subcode(&code, sigma)?;
        let x = (0..8)
            .map(|_| random_codeword(&mut rng, &fixed))
            .find(|x| !x.is_zero() && t_set(x, sigma).is_ok_and(|tx| tx.is_subset(&ty)))
            .unwrap_or_else(|| y.clone());
        tally.scanned += 1;
        let failure = flip_property(&code, &w, &x)?;
        if failure.is_none() {
            tally.witnesses_checked += 1;
        }
        record(&mut tally, failure, |r| Counterexample::new(&code, r).with_words(&[&w, &x]));
    }
    Ok(tally.into_report("lemma-4.1", n_max, [0, n_max], Slice::WHOLE, started))
}
