//! r-Stirling permutations: multiset words over `{1^r, ..., k^r}` in which
//! the letters between two equal letters are all larger. Provides validity
//! checking, exhaustive generation by block insertion, and the plateau
//! statistic family.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::polyalg::{BivarPoly, IntPoly};
use crate::{Error, Result};

/// Default bound on the number of words an enumeration may produce.
pub const DEFAULT_CARDINALITY_LIMIT: u64 = 10_000_000;

/// A validated r-Stirling permutation of order `k`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct StirlingPerm {
    word: Vec<u32>,
    r: usize,
    k: usize,
}

/// Plateau-family statistics (plus the descent variant that counts the final
/// position).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PlateauStat {
    /// Positions `i` with `w_i = w_{i+1}`.
    Plat,
    /// Plateaus whose letter has not occurred earlier.
    Lplat,
    /// Plateaus preceded by a strictly smaller letter.
    Ascplat,
    /// Ascent-plateaus, plus an initial plateau.
    Lascplat,
    /// Positions `i` with `w_i > w_{i+1}`, plus the final position `i = rk`.
    Des,
}

/// Which joint pair a bivariate distribution tracks, as `(t, y)` exponents.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PlateauPair {
    LplatAscplat,
    LplatLascplat,
}

/// `prod_{j=1}^{k-1} (r j + 1)`, the number of r-Stirling permutations of
/// order `k` (also the number of inverse-cluster permutations).
pub fn cardinality(r: usize, k: usize) -> BigInt {
    let mut prod = BigInt::from(1);
    for j in 1..k {
        prod *= BigInt::from(r * j + 1);
    }
    prod
}

/// Multiplicity-and-nesting validity check.
pub fn is_valid(word: &[u32], r: usize, k: usize) -> bool {
    if r == 0 || word.len() != r * k {
        return false;
    }
    let mut counts = vec![0usize; k];
    for &v in word {
        if v == 0 || v as usize > k {
            return false;
        }
        counts[v as usize - 1] += 1;
    }
    if counts.iter().any(|&c| c != r) {
        return false;
    }
    // nesting: between the first and last copy of a letter, everything is >= it
    for (i, &v) in word.iter().enumerate() {
        let last = word.iter().rposition(|&u| u == v).unwrap();
        if word[i..=last].iter().any(|&u| u < v) {
            return false;
        }
    }
    true
}

impl StirlingPerm {
    pub fn new(word: Vec<u32>, r: usize, k: usize) -> Result<Self> {
        if !is_valid(&word, r, k) {
            return Err(Error::InvalidInput(format!(
                "word is not an {}-Stirling permutation of order {}",
                r, k
            )));
        }
        Ok(StirlingPerm { word, r, k })
    }

    pub fn word(&self) -> &[u32] {
        &self.word
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn order(&self) -> usize {
        self.k
    }

    pub fn starts_with_plateau(&self) -> bool {
        self.word.len() >= 2 && self.word[0] == self.word[1]
    }

    pub fn stat(&self, kind: PlateauStat) -> usize {
        let w = &self.word;
        let n = w.len();
        match kind {
            PlateauStat::Plat => w.windows(2).filter(|p| p[0] == p[1]).count(),
            PlateauStat::Lplat => (1..n)
                .filter(|&i| w[i - 1] == w[i] && !w[..i - 1].contains(&w[i]))
                .count(),
            PlateauStat::Ascplat => (1..n.saturating_sub(1))
                .filter(|&i| w[i - 1] < w[i] && w[i] == w[i + 1])
                .count(),
            PlateauStat::Lascplat => {
                self.stat(PlateauStat::Ascplat) + usize::from(self.starts_with_plateau())
            }
            PlateauStat::Des => {
                w.windows(2).filter(|p| p[0] > p[1]).count() + usize::from(n >= 1)
            }
        }
    }
}

/// All r-Stirling permutations of order `k`, generated by inserting the
/// block `j^r` into every gap of each word of order `j - 1`. Each word is
/// produced exactly once (deleting the block of largest letters inverts the
/// construction). Refused when the output would exceed `limit` words.
pub fn enumerate_with_limit(r: usize, k: usize, limit: u64) -> Result<Vec<StirlingPerm>> {
    if r == 0 {
        return Err(Error::InvalidInput("multiplicity r must be at least 1".into()));
    }
    let card = cardinality(r, k);
    if card.to_u64().map_or(true, |c| c > limit) {
        return Err(Error::ResourceLimit(format!(
            "enumerating {} r-Stirling permutations exceeds the bound {}",
            card, limit
        )));
    }
    let mut words: Vec<Vec<u32>> = vec![Vec::new()];
    for j in 1..=k as u32 {
        let gap_count = (j as usize - 1) * r + 1;
        let mut next = Vec::with_capacity(words.len() * gap_count);
        for w in &words {
            for gap in 0..gap_count {
                let mut nw = Vec::with_capacity(w.len() + r);
                nw.extend_from_slice(&w[..gap]);
                nw.extend(std::iter::repeat(j).take(r));
                nw.extend_from_slice(&w[gap..]);
                next.push(nw);
            }
        }
        words = next;
    }
    Ok(words
        .into_iter()
        .map(|word| StirlingPerm { word, r, k })
        .collect())
}

pub fn enumerate(r: usize, k: usize) -> Result<Vec<StirlingPerm>> {
    enumerate_with_limit(r, k, DEFAULT_CARDINALITY_LIMIT)
}

/// Joint distribution over all r-Stirling permutations of order `k`, as a
/// polynomial in `(t, y)`.
pub fn joint_distribution(r: usize, k: usize, pair: PlateauPair) -> Result<BivarPoly> {
    let (first, second) = match pair {
        PlateauPair::LplatAscplat => (PlateauStat::Lplat, PlateauStat::Ascplat),
        PlateauPair::LplatLascplat => (PlateauStat::Lplat, PlateauStat::Lascplat),
    };
    let mut grid: Vec<Vec<u64>> = Vec::new();
    for rho in enumerate(r, k)? {
        bump(&mut grid, rho.stat(first), rho.stat(second));
    }
    Ok(BivarPoly::from_counts(&grid))
}

/// Univariate distribution of a single statistic.
pub fn stat_distribution(r: usize, k: usize, kind: PlateauStat) -> Result<IntPoly> {
    let mut counts: Vec<u64> = Vec::new();
    for rho in enumerate(r, k)? {
        let v = rho.stat(kind);
        if counts.len() <= v {
            counts.resize(v + 1, 0);
        }
        counts[v] += 1;
    }
    Ok(IntPoly::from_coeffs(counts.into_iter().map(BigInt::from).collect()))
}

/// The `(lplat, ascplat)` distribution split by whether the word starts
/// with a plateau: `(starting, not starting)`.
pub fn split_joint_distribution(r: usize, k: usize) -> Result<(BivarPoly, BivarPoly)> {
    let mut with: Vec<Vec<u64>> = Vec::new();
    let mut without: Vec<Vec<u64>> = Vec::new();
    for rho in enumerate(r, k)? {
        let grid = if rho.starts_with_plateau() { &mut with } else { &mut without };
        bump(grid, rho.stat(PlateauStat::Lplat), rho.stat(PlateauStat::Ascplat));
    }
    Ok((BivarPoly::from_counts(&with), BivarPoly::from_counts(&without)))
}

fn bump(grid: &mut Vec<Vec<u64>>, i: usize, j: usize) {
    if grid.len() <= i {
        grid.resize(i + 1, Vec::new());
    }
    if grid[i].len() <= j {
        grid[i].resize(j + 1, 0);
    }
    grid[i][j] += 1;
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn validity_examples() {
        assert!(is_valid(&[1, 1, 2, 2, 2, 3, 4, 4, 4, 3, 3, 1], 3, 4));
        assert!(!is_valid(&[1, 2, 3, 2, 4, 4, 4, 3, 3, 2, 1, 1], 3, 4));
        assert!(is_valid(&[1, 1, 1], 3, 1));
        assert!(!is_valid(&[1, 1], 3, 1));
    }

    #[test]
    fn enumerate_small_families() {
        let q22: BTreeSet<Vec<u32>> =
            enumerate(2, 2).unwrap().into_iter().map(|w| w.word).collect();
        let expect: BTreeSet<Vec<u32>> =
            [vec![2, 2, 1, 1], vec![1, 2, 2, 1], vec![1, 1, 2, 2]].into_iter().collect();
        assert_eq!(q22, expect);
        assert_eq!(enumerate(4, 1).unwrap().len(), 1);
        assert_eq!(enumerate(2, 3).unwrap().len(), 15);
        assert_eq!(enumerate(2, 0).unwrap().len(), 1);
    }

    #[test]
    fn enumeration_is_valid_and_duplicate_free() {
        for (r, k) in [(1, 4), (2, 4), (3, 3), (4, 2)] {
            let words = enumerate(r, k).unwrap();
            let set: BTreeSet<_> = words.iter().map(|w| w.word.clone()).collect();
            assert_eq!(BigInt::from(set.len()), cardinality(r, k));
            for w in &words {
                assert!(is_valid(w.word(), r, k));
            }
        }
    }

    #[test]
    fn statistic_examples() {
        let w = |v: &[u32], r, k| StirlingPerm::new(v.to_vec(), r, k).unwrap();
        assert_eq!(w(&[1, 1, 2, 2], 2, 2).stat(PlateauStat::Lplat), 2);
        assert_eq!(w(&[1, 2, 2, 1], 2, 2).stat(PlateauStat::Lplat), 1);
        assert_eq!(w(&[1, 1, 2, 2], 2, 2).stat(PlateauStat::Ascplat), 1);
        assert_eq!(w(&[1, 1, 1, 1], 4, 1).stat(PlateauStat::Plat), 3);
        assert_eq!(w(&[1, 1, 2, 2], 2, 2).stat(PlateauStat::Lascplat), 2);
        assert_eq!(w(&[2, 2, 1, 1], 2, 2).stat(PlateauStat::Des), 2);
    }

    #[test]
    fn distribution_examples() {
        let d = joint_distribution(2, 2, PlateauPair::LplatAscplat).unwrap();
        assert_eq!(d.format_vars("t", "y"), "ty+t^2+t^2y");
        let lp = stat_distribution(2, 3, PlateauStat::Lplat).unwrap();
        assert_eq!(lp.to_string(), "t+8t^2+6t^3");
        let des = stat_distribution(3, 2, PlateauStat::Des).unwrap();
        assert_eq!(des.to_string(), "t+3t^2");
    }

    #[test]
    fn des_and_lplat_equidistributed() {
        // r = 1 is excluded: with the final position always counted as a
        // descent, des >= 1 on nonempty ordinary permutations while lplat
        // is identically zero there.
        for r in 2..=4 {
            for k in 0..=4 {
                assert_eq!(
                    stat_distribution(r, k, PlateauStat::Des).unwrap(),
                    stat_distribution(r, k, PlateauStat::Lplat).unwrap(),
                    "r={} k={}",
                    r,
                    k
                );
            }
        }
    }

    #[test]
    fn plat_equals_lplat_for_ordinary_stirling() {
        for k in 0..=5 {
            assert_eq!(
                stat_distribution(2, k, PlateauStat::Plat).unwrap(),
                stat_distribution(2, k, PlateauStat::Lplat).unwrap()
            );
        }
    }

    #[test]
    fn plateau_chain_inequalities() {
        for rho in enumerate(3, 3).unwrap() {
            let a = rho.stat(PlateauStat::Ascplat);
            let l = rho.stat(PlateauStat::Lplat);
            let p = rho.stat(PlateauStat::Plat);
            assert!(a <= l && l <= p, "{:?}", rho.word());
        }
    }

    #[test]
    fn split_distributions_recombine() {
        for (r, k) in [(2, 3), (3, 2)] {
            let (with, without) = split_joint_distribution(r, k).unwrap();
            let full = joint_distribution(r, k, PlateauPair::LplatAscplat).unwrap();
            assert_eq!(with.add(&without), full);
        }
    }

    #[test]
    fn cardinality_bound_is_enforced() {
        assert!(matches!(
            enumerate_with_limit(2, 12, 1000),
            Err(Error::ResourceLimit(_))
        ));
    }
}
