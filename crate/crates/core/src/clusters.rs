//! Marked permutations and clusters: overlap sets, general cluster
//! enumeration at small length, and the two specialized generators for the
//! permutations whose inverse is a cluster of the pattern `2134...(r+1)`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::perm::{for_each_perm, Perm, StatKind};
use crate::polyalg::BivarPoly;
use crate::stirling::cardinality;
use crate::{Error, Result};

/// Default bound on `n` for general marked-cluster enumeration.
pub const DEFAULT_CLUSTER_N_LIMIT: usize = 9;

/// Positions (1-based, within `1..m-1`) at which two copies of a pattern of
/// length `m` may overlap. The pattern is non-overlapping exactly when this
/// is `{m-1}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OverlapSet {
    pub sigma: Perm,
    pub positions: Vec<usize>,
}

impl OverlapSet {
    pub fn is_non_overlapping(&self) -> bool {
        self.positions == vec![self.sigma.n() - 1]
    }
}

/// `{ i in [m-1] : std(sigma_{i+1}..sigma_m) = std(sigma_1..sigma_{m-i}) }`.
/// `m - 1` is always a member.
pub fn overlap_set(sigma: &Perm) -> Result<OverlapSet> {
    let m = sigma.n();
    if m < 2 {
        return Err(Error::InvalidInput("overlap set needs a pattern of length >= 2".into()));
    }
    let letters: Vec<i64> = sigma.letters().iter().map(|&v| v as i64).collect();
    let positions = (1..m)
        .filter(|&i| {
            let suffix = Perm::standardize(&letters[i..]).unwrap();
            let prefix = Perm::standardize(&letters[..m - i]).unwrap();
            suffix == prefix
        })
        .collect();
    Ok(OverlapSet {
        sigma: sigma.clone(),
        positions,
    })
}

/// A permutation together with a set of marked occurrence positions forming
/// a cluster: the marks start at 1, end at `n - m + 1`, and consecutive
/// marks differ by at most `m - 1`, so the marked occurrences chain-overlap
/// and cover every position.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct MarkedCluster {
    pub perm: Perm,
    /// 1-based start positions, strictly increasing.
    pub marks: Vec<usize>,
}

/// Enumerate every cluster for `sigma` on permutations of length `n`. Scans
/// all of the symmetric group, so it is refused above `max_n`; this path is
/// needed for overlapping patterns, where mark sets are not forced.
pub fn marked_clusters_with_limit(
    sigma: &Perm,
    n: usize,
    max_n: usize,
) -> Result<Vec<MarkedCluster>> {
    let m = sigma.n();
    if m < 2 {
        return Err(Error::InvalidInput("cluster pattern must have length >= 2".into()));
    }
    if n > max_n {
        return Err(Error::ResourceLimit(format!(
            "cluster enumeration over S_{} exceeds the configured bound {}",
            n, max_n
        )));
    }
    let mut out = Vec::new();
    if n < m {
        return Ok(out);
    }
    let last = n - m + 1;
    for_each_perm(n, |w| {
        let pi = Perm::new(w.to_vec()).unwrap();
        let occ = pi.occurrence_starts(sigma);
        if occ.first() != Some(&1) || !occ.contains(&last) {
            return;
        }
        // walk every chain 1 -> ... -> last through occ with gaps <= m-1
        let mut chain = vec![0usize]; // indices into occ
        loop {
            let pos = occ[*chain.last().unwrap()];
            if pos == last {
                out.push(MarkedCluster {
                    perm: pi.clone(),
                    marks: chain.iter().map(|&i| occ[i]).collect(),
                });
            }
            // extend if possible: next index after the current tip whose
            // position is within m-1 (and not past `last`)
            let tip = *chain.last().unwrap();
            let next = (tip + 1..occ.len()).find(|&j| occ[j] - pos <= m - 1 && pos != last);
            if let Some(j) = next {
                chain.push(j);
                continue;
            }
            // backtrack: replace the tip by its next viable sibling
            loop {
                let tip = chain.pop().unwrap();
                if chain.is_empty() {
                    return;
                }
                let prev_pos = occ[*chain.last().unwrap()];
                let sib = (tip + 1..occ.len()).find(|&j| occ[j] - prev_pos <= m - 1);
                if let Some(j) = sib {
                    chain.push(j);
                    break;
                }
            }
        }
    });
    Ok(out)
}

pub fn marked_clusters(sigma: &Perm, n: usize) -> Result<Vec<MarkedCluster>> {
    marked_clusters_with_limit(sigma, n, DEFAULT_CLUSTER_N_LIMIT)
}

/// Cluster counts `counts[n][k]` = number of clusters of length `n` with `k`
/// marked occurrences, for `n <= nmax`.
pub fn cluster_counts(sigma: &Perm, nmax: usize, max_n: usize) -> Result<Vec<Vec<u64>>> {
    let mut table = vec![Vec::new(); nmax + 1];
    for n in sigma.n()..=nmax {
        for c in marked_clusters_with_limit(sigma, n, max_n)? {
            let k = c.marks.len();
            if table[n].len() <= k {
                table[n].resize(k + 1, 0);
            }
            table[n][k] += 1;
        }
    }
    Ok(table)
}

/// Generation strategy for inverse-cluster permutations.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GenMethod {
    /// Backtracking placement of the letters congruent to 2 mod r into an
    /// increasing skeleton of the remaining letters.
    Characterization,
    /// Repeated insertion of the next letter block, mirroring the recurrence
    /// proof.
    Insertion,
}

/// Joint statistic pair over inverse-cluster permutations, as `(t, y)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PeakPair {
    DesPk,
    DesLpk,
}

/// The permutations of length `rk + 1` whose inverse is a cluster of the
/// pattern `2 1 3 4 ... (r+1)`. Both methods produce the same set; order is
/// unspecified but deterministic per method.
pub fn inverse_cluster_perms_with_limit(
    r: usize,
    k: usize,
    method: GenMethod,
    limit: u64,
) -> Result<Vec<Perm>> {
    if r < 2 || k < 1 {
        return Err(Error::InvalidInput("inverse clusters need r >= 2 and k >= 1".into()));
    }
    let card = cardinality(r, k);
    if card.to_u64().map_or(true, |c| c > limit) {
        return Err(Error::ResourceLimit(format!(
            "enumerating {} inverse-cluster permutations exceeds the bound {}",
            card, limit
        )));
    }
    let perms = match method {
        GenMethod::Insertion => by_insertion(r, k),
        GenMethod::Characterization => by_characterization(r, k),
    };
    debug_assert_eq!(BigInt::from(perms.len()), card);
    Ok(perms)
}

pub fn inverse_cluster_perms(r: usize, k: usize, method: GenMethod) -> Result<Vec<Perm>> {
    inverse_cluster_perms_with_limit(r, k, method, crate::stirling::DEFAULT_CARDINALITY_LIMIT)
}

/// Start from `2 1 3 4 ... (r+1)` and repeatedly insert the letter `rj + 2`
/// in one of `rj + 1` places (anywhere but the very end), then append the
/// remaining letters of the next block in increasing order.
fn by_insertion(r: usize, k: usize) -> Vec<Perm> {
    let mut words: Vec<Vec<u32>> = vec![head_pattern_word(r + 1)];
    for j in 1..k {
        let new_letter = (r * j + 2) as u32;
        let tail: Vec<u32> = (r * j + 3..=r * (j + 1) + 1).map(|v| v as u32).collect();
        let mut next = Vec::with_capacity(words.len() * (r * j + 1));
        for w in &words {
            for gap in 0..w.len() {
                let mut nw = Vec::with_capacity(w.len() + r);
                nw.extend_from_slice(&w[..gap]);
                nw.push(new_letter);
                nw.extend_from_slice(&w[gap..]);
                nw.extend_from_slice(&tail);
                next.push(nw);
            }
        }
        words = next;
    }
    words.into_iter().map(|w| Perm::new(w).unwrap()).collect()
}

/// One-line word of the pattern `2 1 3 4 ... m`.
pub(crate) fn head_pattern_word(m: usize) -> Vec<u32> {
    let mut w: Vec<u32> = vec![2, 1];
    w.extend(3..=m as u32);
    w
}

/// Place the letters `2, r+2, ..., r(k-1)+2` one position at a time into a
/// skeleton of the remaining letters kept in increasing order; a skeleton
/// letter `ri + 1` may only be placed once `ri + 2` already appears.
fn by_characterization(r: usize, k: usize) -> Vec<Perm> {
    let n = r * k + 1;
    let special: Vec<u32> = (0..k).map(|i| (r * i + 2) as u32).collect();
    let skeleton: Vec<u32> = (1..=n as u32).filter(|v| !special.contains(v)).collect();
    let mut out = Vec::new();
    let mut word: Vec<u32> = Vec::with_capacity(n);
    let mut used = vec![false; k];
    place(r, n, &special, &skeleton, 0, &mut used, &mut word, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn place(
    r: usize,
    n: usize,
    special: &[u32],
    skeleton: &[u32],
    skel_next: usize,
    used: &mut Vec<bool>,
    word: &mut Vec<u32>,
    out: &mut Vec<Perm>,
) {
    if word.len() == n {
        out.push(Perm::new(word.clone()).unwrap());
        return;
    }
    // Option 1: the next skeleton letter, provided its paired larger letter
    // (one more, congruent to 2 mod r) is already present.
    if skel_next < skeleton.len() {
        let v = skeleton[skel_next];
        let needs = (v as usize) % r == 1 % r && (v as usize) < n;
        let ok = if needs {
            word.contains(&(v + 1))
        } else {
            true
        };
        if ok {
            word.push(v);
            place(r, n, special, skeleton, skel_next + 1, used, word, out);
            word.pop();
        }
    }
    // Option 2: any unplaced special letter.
    for (i, &v) in special.iter().enumerate() {
        if !used[i] {
            used[i] = true;
            word.push(v);
            place(r, n, special, skeleton, skel_next, used, word, out);
            word.pop();
            used[i] = false;
        }
    }
}

/// Joint `(des, pk)` or `(des, lpk)` distribution over the inverse-cluster
/// permutations, as a polynomial in `(t, y)`.
pub fn joint_distribution(r: usize, k: usize, pair: PeakPair) -> Result<BivarPoly> {
    let second = match pair {
        PeakPair::DesPk => StatKind::Pk,
        PeakPair::DesLpk => StatKind::Lpk,
    };
    let mut grid: Vec<Vec<u64>> = Vec::new();
    for pi in inverse_cluster_perms(r, k, GenMethod::Insertion)? {
        let i = pi.stat(StatKind::Des);
        let j = pi.stat(second);
        if grid.len() <= i {
            grid.resize(i + 1, Vec::new());
        }
        if grid[i].len() <= j {
            grid[i].resize(j + 1, 0);
        }
        grid[i][j] += 1;
    }
    Ok(BivarPoly::from_counts(&grid))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn p(s: &str) -> Perm {
        s.parse().unwrap()
    }

    #[test]
    fn overlap_sets() {
        assert_eq!(overlap_set(&p("2134")).unwrap().positions, vec![3]);
        assert!(overlap_set(&p("2134")).unwrap().is_non_overlapping());
        assert_eq!(overlap_set(&p("123")).unwrap().positions, vec![1, 2]);
        assert_eq!(overlap_set(&p("1243")).unwrap().positions, vec![3]);
        assert_eq!(overlap_set(&p("213")).unwrap().positions, vec![2]);
    }

    #[test]
    fn marked_cluster_examples() {
        let class = marked_clusters(&p("213"), 7).unwrap();
        assert!(class.contains(&MarkedCluster {
            perm: p("4351627"),
            marks: vec![1, 3, 5],
        }));
        // concatenations are excluded
        let c9 = marked_clusters(&p("123"), 9).unwrap();
        assert!(!c9.iter().any(|c| c.perm == p("618923574") && c.marks == vec![2, 5, 6]));
        // length parity is forced for a non-overlapping pattern of length 3
        assert!(marked_clusters(&p("213"), 4).unwrap().is_empty());
    }

    #[test]
    fn cluster_invariants_hold() {
        for n in 3..=7 {
            for c in marked_clusters(&p("123"), n).unwrap() {
                let m = 3;
                assert_eq!(c.marks.first(), Some(&1));
                assert_eq!(c.marks.last(), Some(&(n - m + 1)));
                assert!(c.marks.windows(2).all(|w| w[1] - w[0] <= m - 1));
                let occ = c.perm.occurrence_starts(&p("123"));
                assert!(c.marks.iter().all(|mk| occ.contains(mk)));
            }
        }
    }

    #[test]
    fn non_overlapping_clusters_have_forced_marks() {
        for n in 4..=7 {
            let clusters = marked_clusters(&p("213"), n).unwrap();
            if n % 2 == 0 {
                assert!(clusters.is_empty());
            } else {
                let k = (n - 1) / 2;
                let forced: Vec<usize> = (0..k).map(|j| 2 * j + 1).collect();
                for c in &clusters {
                    assert_eq!(c.marks, forced);
                }
            }
        }
    }

    #[test]
    fn inverse_cluster_generation_small() {
        let got: BTreeSet<Perm> = inverse_cluster_perms(2, 2, GenMethod::Insertion)
            .unwrap()
            .into_iter()
            .collect();
        let expect: BTreeSet<Perm> =
            ["21435", "24135", "42135"].iter().map(|s| p(s)).collect();
        assert_eq!(got, expect);
        assert!(inverse_cluster_perms(2, 3, GenMethod::Characterization)
            .unwrap()
            .contains(&p("4621357")));
        for r in 2..=4 {
            let only = inverse_cluster_perms(r, 1, GenMethod::Characterization).unwrap();
            assert_eq!(only, vec![Perm::new(head_pattern_word(r + 1)).unwrap()]);
        }
    }

    #[test]
    fn both_methods_agree() {
        for (r, k) in [(2, 1), (2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (4, 2)] {
            let a: BTreeSet<Perm> = inverse_cluster_perms(r, k, GenMethod::Insertion)
                .unwrap()
                .into_iter()
                .collect();
            let b: BTreeSet<Perm> = inverse_cluster_perms(r, k, GenMethod::Characterization)
                .unwrap()
                .into_iter()
                .collect();
            assert_eq!(a, b, "r={} k={}", r, k);
            assert_eq!(BigInt::from(a.len()), cardinality(r, k));
        }
    }

    #[test]
    fn inverses_are_clusters_with_forced_marks() {
        for (r, k) in [(2, 2), (2, 3)] {
            let sigma = Perm::new(head_pattern_word(r + 1)).unwrap();
            let n = r * k + 1;
            let clusters = marked_clusters(&sigma, n).unwrap();
            let underlying: BTreeSet<Perm> =
                clusters.iter().map(|c| c.perm.clone()).collect();
            let forced: Vec<usize> = (0..k).map(|j| r * j + 1).collect();
            for pi in inverse_cluster_perms(r, k, GenMethod::Insertion).unwrap() {
                assert!(underlying.contains(&pi.inverse()));
                let c = clusters.iter().find(|c| c.perm == pi.inverse()).unwrap();
                assert_eq!(c.marks, forced);
            }
        }
    }

    #[test]
    fn joint_distribution_examples() {
        let d = joint_distribution(2, 2, PeakPair::DesPk).unwrap();
        assert_eq!(d.format_vars("t", "y"), "ty+t^2+t^2y");
        let dl = joint_distribution(2, 2, PeakPair::DesLpk).unwrap();
        assert_eq!(dl.format_vars("t", "y"), "ty+t^2y+t^2y^2");
        let des_marginal = joint_distribution(2, 4, PeakPair::DesPk).unwrap().eval_second_one();
        assert_eq!(des_marginal.to_string(), "t+22t^2+58t^3+24t^4");
    }

    #[test]
    fn exactly_one_peakless_permutation() {
        for (r, k) in [(2, 3), (3, 2), (4, 2)] {
            let d = joint_distribution(r, k, PeakPair::DesPk).unwrap();
            // y^0 column must be a single t^k entry
            let col0 = d.row(k);
            assert_eq!(col0.coeff(0), BigInt::from(1), "r={} k={}", r, k);
            let peakless: BigInt = (0..=d.first_degree().unwrap())
                .map(|i| d.coeff(i, 0))
                .sum();
            assert_eq!(peakless, BigInt::from(1));
        }
    }

    #[test]
    fn resource_limits_enforced() {
        assert!(matches!(
            marked_clusters(&p("213"), 10),
            Err(Error::ResourceLimit(_))
        ));
        assert!(matches!(
            inverse_cluster_perms_with_limit(2, 12, GenMethod::Insertion, 100),
            Err(Error::ResourceLimit(_))
        ));
    }
}
