//! Permutation automorphism groups of short codes.
//!
//! The group is computed along the base `0, 1, ..., n-1` with a stabilizer
//! chain: for each level `i` we decide, for every point `j` outside the orbit
//! already generated, whether some automorphism fixing `0..i` pointwise sends
//! `i` to `j`. The order is the product of the orbit lengths.
//!
//! Candidate images are pruned with three necessary conditions, none of
//! which can reject a real automorphism:
//! - per-coordinate weight signatures (how many codewords of each weight have
//!   a one there) must agree;
//! - per-pair signatures (the same count over codewords holding ones at both
//!   coordinates) must agree for every pair of assigned coordinates;
//! - the projection of the code onto the assigned coordinates must be carried
//!   onto the projection onto their images.
//!
//! At full depth the projection check is exact, so every leaf is an
//! automorphism.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{invalid, too_large, Result};
use crate::gf2::LinearCode;
use crate::perm::Perm;

/// Length guard for exact group computations.
pub const MAX_PAUT_LEN: usize = 12;
/// Length guard for the regular-subgroup (group code) search.
pub const MAX_GROUP_CODE_LEN: usize = 8;
/// Length guard for the exhaustive `n!` recount.
pub const MAX_BRUTE_FORCE_LEN: usize = 10;

const ENGINE_MAX: usize = 16;
const NONE: usize = usize::MAX;

pub fn is_automorphism(code: &LinearCode, p: &Perm) -> Result<bool> {
    if code.length() != p.len() {
        return Err(invalid(format!(
            "permutation on {} points against a code of length {}",
            p.len(),
            code.length()
        )));
    }
    for g in code.generators() {
        if !code.residue(&p.apply(g)?).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Summary of `PAut(C)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PAutReport {
    pub order: u64,
    /// Strong generators in the order they were found; only the group they
    /// generate is meaningful.
    pub generators: Vec<Perm>,
    pub is_cyclic_of_order_2: bool,
    pub has_fpf_involution: bool,
    pub has_fixed_point_involution: bool,
}

fn check_paut_guard(code: &LinearCode) -> Result<()> {
    if code.length() > MAX_PAUT_LEN {
        return Err(too_large(format!(
            "exact automorphism groups are limited to n <= {MAX_PAUT_LEN}, got n = {}",
            code.length()
        )));
    }
    Ok(())
}

pub fn paut(code: &LinearCode) -> Result<PAutReport> {
    check_paut_guard(code)?;
    let search = AutSearch::new(code);
    let (order, generators) = search.group();
    let even = order % 2 == 0;
    let has_fpf_involution = even && search.find(&[2], |_| true).is_some();
    let has_fixed_point_involution = even
        && search
            .find(&[1, 2], |p| !p.is_identity() && !p.is_fixed_point_free())
            .is_some();
    Ok(PAutReport {
        order,
        generators,
        is_cyclic_of_order_2: order == 2,
        has_fpf_involution,
        has_fixed_point_involution,
    })
}

/// `|PAut(C)|` without the involution flags.
pub fn paut_order(code: &LinearCode) -> Result<u64> {
    check_paut_guard(code)?;
    Ok(AutSearch::new(code).group().0)
}

/// First automorphism (in lexicographic image order) whose cycles all have
/// lengths in `cycle_lengths` and which satisfies `accept`.
pub fn find_automorphism(
    code: &LinearCode,
    cycle_lengths: &[usize],
    accept: impl FnMut(&Perm) -> bool,
) -> Result<Option<Perm>> {
    check_paut_guard(code)?;
    Ok(AutSearch::new(code).find(cycle_lengths, accept))
}

/// A fixed-point-free automorphism of prime order, if any. Such an element
/// generates a nontrivial free subgroup, and every nontrivial free subgroup
/// contains one.
pub fn quasi_group_witness(code: &LinearCode) -> Result<Option<Perm>> {
    check_paut_guard(code)?;
    let n = code.length();
    let search = AutSearch::new(code);
    let order = search.group().0;
    for p in (2..=n).filter(|&p| is_prime(p) && n % p == 0) {
        if order % p as u64 != 0 {
            continue;
        }
        if let Some(w) = search.find(&[p], |_| true) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

pub fn is_quasi_group_code(code: &LinearCode) -> Result<bool> {
    Ok(quasi_group_witness(code)?.is_some())
}

/// A subgroup of `PAut(C)` acting regularly on the coordinates, if any.
pub fn regular_subgroup(code: &LinearCode) -> Result<Option<Vec<Perm>>> {
    let n = code.length();
    if n > MAX_GROUP_CODE_LEN {
        return Err(too_large(format!(
            "regular subgroup search is limited to n <= {MAX_GROUP_CODE_LEN}, got n = {n}"
        )));
    }
    if n == 0 {
        return Ok(None);
    }
    let (order, gens) = AutSearch::new(code).group();
    if order % n as u64 != 0 || !is_transitive(n, &gens) {
        return Ok(None);
    }
    let elements = group_elements(n, &gens, usize::MAX).expect("no cap");
    let mut buckets: Vec<Vec<Perm>> = vec![Vec::new(); n];
    for e in elements {
        if e.is_fixed_point_free() {
            buckets[e.image(0)].push(e);
        }
    }
    let start = vec![Perm::identity(n)];
    Ok(extend_semiregular(n, &start, &buckets))
}

pub fn is_group_code(code: &LinearCode) -> Result<bool> {
    Ok(regular_subgroup(code)?.is_some())
}

fn extend_semiregular(n: usize, group: &[Perm], buckets: &[Vec<Perm>]) -> Option<Vec<Perm>> {
    if group.len() == n {
        return Some(group.to_vec());
    }
    let mut covered = vec![false; n];
    for h in group {
        covered[h.image(0)] = true;
    }
    let target = (0..n).find(|&j| !covered[j])?;
    for g in &buckets[target] {
        let mut gens = group.to_vec();
        gens.push(g.clone());
        let Some(closure) = group_elements(n, &gens, n) else {
            continue;
        };
        let semiregular = closure
            .iter()
            .all(|h| h.is_identity() || h.is_fixed_point_free());
        if semiregular {
            if let Some(found) = extend_semiregular(n, &closure, buckets) {
                return Some(found);
            }
        }
    }
    None
}

fn is_transitive(n: usize, gens: &[Perm]) -> bool {
    orbit(0, gens, n).len() == n
}

fn orbit(point: usize, gens: &[Perm], n: usize) -> Vec<usize> {
    let mut seen = vec![false; n];
    seen[point] = true;
    let mut out = vec![point];
    let mut idx = 0;
    while idx < out.len() {
        let x = out[idx];
        idx += 1;
        for g in gens {
            let y = g.image(x);
            if !seen[y] {
                seen[y] = true;
                out.push(y);
            }
        }
    }
    out
}

/// All elements of `<gens>`, or `None` once more than `cap` are found.
pub fn group_elements(n: usize, gens: &[Perm], cap: usize) -> Option<Vec<Perm>> {
    let id = Perm::identity(n);
    let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.then(g);
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return None;
                }
                out.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Some(out)
}

/// Counts automorphisms by testing all `n!` permutations. Slow; used to
/// triage reported counterexamples.
pub fn brute_force_order(code: &LinearCode) -> Result<u64> {
    let n = code.length();
    if n > MAX_BRUTE_FORCE_LEN {
        return Err(too_large(format!(
            "brute-force recount is limited to n <= {MAX_BRUTE_FORCE_LEN}"
        )));
    }
    let rows = code.masks().expect("n <= 10");
    let member = membership_bitmap(code);
    let mut images: Vec<usize> = (0..n).collect();
    let mut count = 0u64;
    // Heap's algorithm
    let mut c = vec![0usize; n];
    let check = |images: &[usize]| {
        rows.iter().all(|&g| bitmap_has(&member, permute_mask(images, g)))
    };
    if check(&images) {
        count += 1;
    }
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                images.swap(0, i);
            } else {
                images.swap(c[i], i);
            }
            if check(&images) {
                count += 1;
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(count)
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

#[inline]
fn permute_mask(images: &[usize], mask: u64) -> u64 {
    let mut out = 0u64;
    let mut rest = mask;
    while rest != 0 {
        let i = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        out |= 1u64 << images[i];
    }
    out
}

fn membership_bitmap(code: &LinearCode) -> Vec<u64> {
    let n = code.length();
    let mut member = vec![0u64; (1usize << n).div_ceil(64)];
    for c in code.codewords().expect("k <= n <= engine limit") {
        let m = c.as_u64().unwrap() as usize;
        member[m / 64] |= 1 << (m % 64);
    }
    member
}

#[inline]
fn bitmap_has(member: &[u64], m: u64) -> bool {
    let m = m as usize;
    (member[m / 64] >> (m % 64)) & 1 == 1
}

/// Lowest-bit xor basis over at most [`ENGINE_MAX`] coordinates.
#[derive(Clone, Copy)]
struct XorBasis {
    slots: [u64; ENGINE_MAX],
    rank: usize,
}

impl XorBasis {
    fn new() -> Self {
        XorBasis {
            slots: [0; ENGINE_MAX],
            rank: 0,
        }
    }

    fn reduce(&self, mut x: u64) -> u64 {
        while x != 0 {
            let b = x.trailing_zeros() as usize;
            if self.slots[b] == 0 {
                break;
            }
            x ^= self.slots[b];
        }
        x
    }

    fn insert(&mut self, x: u64) {
        let r = self.reduce(x);
        if r != 0 {
            self.slots[r.trailing_zeros() as usize] = r;
            self.rank += 1;
        }
    }
}

/// Precomputed invariants of one code, shared by every search on it.
pub(crate) struct AutSearch {
    n: usize,
    rows: Vec<u64>,
    member: Vec<u64>,
    sig1: Vec<u32>,
    sig2: Vec<u32>,
}

struct Frame<'a> {
    allowed: u32,
    max_len: usize,
    check_shape: bool,
    accept: &'a mut dyn FnMut(&Perm) -> bool,
}

impl AutSearch {
    pub(crate) fn new(code: &LinearCode) -> Self {
        let n = code.length();
        assert!(n <= ENGINE_MAX, "search engine supports n <= {ENGINE_MAX}");
        let rows = code.masks().unwrap();
        let member = membership_bitmap(code);
        let mut single = vec![vec![0u32; n + 1]; n];
        let mut pair = vec![vec![0u32; n + 1]; n * n];
        for c in code.codewords().unwrap() {
            let m = c.as_u64().unwrap();
            let wt = m.count_ones() as usize;
            let ones: Vec<usize> = c.ones_iter().collect();
            for (x, &a) in ones.iter().enumerate() {
                single[a][wt] += 1;
                for &b in &ones[x + 1..] {
                    pair[a * n + b][wt] += 1;
                    pair[b * n + a][wt] += 1;
                }
            }
        }
        let mut ids: HashMap<Vec<u32>, u32> = HashMap::new();
        let mut intern = |v: Vec<u32>| {
            let next = ids.len() as u32;
            *ids.entry(v).or_insert(next)
        };
        let sig1 = single.into_iter().map(&mut intern).collect();
        let sig2 = pair.into_iter().map(&mut intern).collect();
        AutSearch {
            n,
            rows,
            member,
            sig1,
            sig2,
        }
    }

    fn is_aut(&self, images: &[usize]) -> bool {
        self.rows
            .iter()
            .all(|&g| bitmap_has(&self.member, permute_mask(images, g)))
    }

    /// Order and strong generators of the full group.
    pub(crate) fn group(&self) -> (u64, Vec<Perm>) {
        let n = self.n;
        let mut gens: Vec<Perm> = Vec::new();
        let mut order = 1u64;
        for level in (0..n).rev() {
            let mut orb = orbit(level, &gens, n);
            for target in level + 1..n {
                if orb.contains(&target) || self.sig1[target] != self.sig1[level] {
                    continue;
                }
                let mut img = [NONE; ENGINE_MAX];
                let mut pre = [NONE; ENGINE_MAX];
                for i in 0..level {
                    img[i] = i;
                    pre[i] = i;
                }
                let mut accept = |_: &Perm| true;
                let mut frame = Frame {
                    allowed: u32::MAX,
                    max_len: n,
                    check_shape: false,
                    accept: &mut accept,
                };
                if let Some(p) = self.assign(level, target, &mut img, &mut pre, &mut frame) {
                    gens.push(p);
                    orb = orbit(level, &gens, n);
                }
            }
            order *= orb.len() as u64;
        }
        (order, gens)
    }

    /// First automorphism in lexicographic order whose cycle lengths all lie
    /// in `cycle_lengths` and which passes `accept`.
    pub(crate) fn find(
        &self,
        cycle_lengths: &[usize],
        mut accept: impl FnMut(&Perm) -> bool,
    ) -> Option<Perm> {
        let allowed = cycle_lengths.iter().fold(0u32, |acc, &l| acc | (1 << l));
        let max_len = cycle_lengths.iter().copied().max().unwrap_or(0);
        if self.n == 0 {
            let id = Perm::identity(0);
            return accept(&id).then_some(id);
        }
        let mut frame = Frame {
            allowed,
            max_len,
            check_shape: true,
            accept: &mut accept,
        };
        let mut img = [NONE; ENGINE_MAX];
        let mut pre = [NONE; ENGINE_MAX];
        for target in 0..self.n {
            if let Some(p) = self.assign(0, target, &mut img, &mut pre, &mut frame) {
                return Some(p);
            }
        }
        None
    }

    /// Tries `point -> target` on top of the partial map for `0..point`,
    /// then extends depth-first.
    fn assign(
        &self,
        point: usize,
        target: usize,
        img: &mut [usize; ENGINE_MAX],
        pre: &mut [usize; ENGINE_MAX],
        frame: &mut Frame<'_>,
    ) -> Option<Perm> {
        if pre[target] != NONE || !self.compatible(point, target, img) {
            return None;
        }
        img[point] = target;
        pre[target] = point;
        let mut found = None;
        if (!frame.check_shape || self.shape_ok(point, img, pre, frame))
            && self.projection_ok(point, img)
        {
            if point + 1 == self.n {
                if self.is_aut(&img[..self.n]) {
                    let p = Perm::from_images_unchecked(img[..self.n].to_vec());
                    if (frame.accept)(&p) {
                        found = Some(p);
                    }
                }
            } else {
                for next in 0..self.n {
                    found = self.assign(point + 1, next, img, pre, frame);
                    if found.is_some() {
                        break;
                    }
                }
            }
        }
        img[point] = NONE;
        pre[target] = NONE;
        found
    }

    fn compatible(&self, point: usize, target: usize, img: &[usize; ENGINE_MAX]) -> bool {
        if self.sig1[point] != self.sig1[target] {
            return false;
        }
        let n = self.n;
        (0..point).all(|a| self.sig2[a * n + point] == self.sig2[img[a] * n + target])
    }

    fn shape_ok(
        &self,
        point: usize,
        img: &[usize; ENGINE_MAX],
        pre: &[usize; ENGINE_MAX],
        frame: &Frame<'_>,
    ) -> bool {
        let mut count = 1;
        let mut cur = img[point];
        loop {
            if cur == point {
                return frame.allowed >> count & 1 == 1;
            }
            count += 1;
            if img[cur] == NONE {
                break;
            }
            cur = img[cur];
        }
        let mut back = pre[point];
        while back != NONE {
            count += 1;
            back = pre[back];
        }
        count <= frame.max_len
    }

    /// The projection onto `0..=point` must map onto the projection onto
    /// the images of those coordinates.
    fn projection_ok(&self, point: usize, img: &[usize; ENGINE_MAX]) -> bool {
        let dom = if point + 1 >= 64 { u64::MAX } else { (1u64 << (point + 1)) - 1 };
        let mut codomain = 0u64;
        for &t in &img[..=point] {
            codomain |= 1 << t;
        }
        let mut source = XorBasis::new();
        let mut target = XorBasis::new();
        for &g in &self.rows {
            source.insert(g & dom);
            target.insert(g & codomain);
        }
        if source.rank != target.rank {
            return false;
        }
        self.rows
            .iter()
            .all(|&g| target.reduce(permute_mask(&img[..], g & dom)) == 0)
    }
}

/// Conjugates `report`'s generators into generators for `PAut(C^b)`.
pub fn transport_generators(gens: &[Perm], b: &Perm) -> Result<Vec<Perm>> {
    gens.iter().map(|g| g.conjugate(b)).collect()
}

/// Checks that every generator of `report` fixes `code` and that they
/// generate a group of `report.order` elements (when at most `cap`).
pub fn verify_report(code: &LinearCode, report: &PAutReport, cap: usize) -> Result<Option<bool>> {
    for g in &report.generators {
        if !is_automorphism(code, g)? {
            return Ok(Some(false));
        }
    }
    if report.order > cap as u64 {
        return Ok(None);
    }
    let elements = group_elements(code.length(), &report.generators, cap);
    Ok(elements.map(|e| e.len() as u64 == report.order))
}
