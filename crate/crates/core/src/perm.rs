//! Permutations in one-line notation: standardization, symmetries, the six
//! statistics (descents, peaks, left peaks and their inverse versions),
//! consecutive-pattern occurrence counting, and brute-force distribution
//! oracles over the full symmetric group.

use std::fmt;
use std::str::FromStr;

use crate::polyalg::BivarPoly;
use crate::{Error, Result};

/// Default bound on `n` for brute-force scans over the symmetric group
/// (10! is a few million permutations).
pub const DEFAULT_BRUTE_LIMIT: usize = 10;

/// A permutation of `{1, ..., n}` in one-line notation. Letters are 1-based.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Perm {
    word: Vec<u32>,
}

/// The six permutation statistics.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum StatKind {
    Des,
    Pk,
    Lpk,
    Ides,
    Ipk,
    Ilpk,
}

impl StatKind {
    pub fn name(self) -> &'static str {
        match self {
            StatKind::Des => "des",
            StatKind::Pk => "pk",
            StatKind::Lpk => "lpk",
            StatKind::Ides => "ides",
            StatKind::Ipk => "ipk",
            StatKind::Ilpk => "ilpk",
        }
    }
}

impl Perm {
    /// Validate a one-line word: must be a rearrangement of `1..=n`.
    pub fn new(word: Vec<u32>) -> Result<Self> {
        let n = word.len();
        let mut seen = vec![false; n];
        for &v in &word {
            if v == 0 || v as usize > n || seen[v as usize - 1] {
                return Err(Error::InvalidInput(format!(
                    "word is not a permutation of 1..={}",
                    n
                )));
            }
            seen[v as usize - 1] = true;
        }
        Ok(Perm { word })
    }

    pub fn identity(n: usize) -> Self {
        Perm {
            word: (1..=n as u32).collect(),
        }
    }

    /// Order-isomorphic relabeling of a word of distinct integers onto
    /// `1..=n`.
    pub fn standardize(letters: &[i64]) -> Result<Self> {
        let n = letters.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| letters[i]);
        for w in order.windows(2) {
            if letters[w[0]] == letters[w[1]] {
                return Err(Error::InvalidInput(
                    "standardization requires pairwise distinct letters".into(),
                ));
            }
        }
        let mut word = vec![0u32; n];
        for (rank, &i) in order.iter().enumerate() {
            word[i] = rank as u32 + 1;
        }
        Ok(Perm { word })
    }

    pub fn n(&self) -> usize {
        self.word.len()
    }

    pub fn letters(&self) -> &[u32] {
        &self.word
    }

    pub fn inverse(&self) -> Perm {
        let mut word = vec![0u32; self.n()];
        for (i, &v) in self.word.iter().enumerate() {
            word[v as usize - 1] = i as u32 + 1;
        }
        Perm { word }
    }

    /// `(n+1-pi_n)(n+1-pi_{n-1})...(n+1-pi_1)`.
    pub fn reverse_complement(&self) -> Perm {
        let n = self.n() as u32;
        Perm {
            word: self.word.iter().rev().map(|&v| n + 1 - v).collect(),
        }
    }

    /// Evaluate one of the six statistics.
    pub fn stat(&self, kind: StatKind) -> usize {
        match kind {
            StatKind::Des => descents(&self.word),
            StatKind::Pk => peaks(&self.word),
            StatKind::Lpk => left_peaks(&self.word),
            StatKind::Ides => descents(&self.inverse().word),
            StatKind::Ipk => peaks(&self.inverse().word),
            StatKind::Ilpk => left_peaks(&self.inverse().word),
        }
    }

    /// Number of windows whose standardization equals `pattern`.
    pub fn count_occurrences(&self, pattern: &Perm) -> usize {
        self.occurrence_starts(pattern).len()
    }

    /// 1-based start positions of occurrences of `pattern`.
    pub fn occurrence_starts(&self, pattern: &Perm) -> Vec<usize> {
        let m = pattern.n();
        if m == 0 || m > self.n() {
            return Vec::new();
        }
        // positions of the values 1..m inside the pattern: the window
        // matches iff reading it at those positions gives an increasing
        // sequence.
        let value_pos: Vec<usize> = pattern.inverse().word.iter().map(|&p| p as usize - 1).collect();
        (0..=self.n() - m)
            .filter(|&i| {
                let w = &self.word[i..i + m];
                value_pos.windows(2).all(|vp| w[vp[0]] < w[vp[1]])
            })
            .map(|i| i + 1)
            .collect()
    }
}

fn descents(w: &[u32]) -> usize {
    w.windows(2).filter(|p| p[0] > p[1]).count()
}

fn peaks(w: &[u32]) -> usize {
    w.windows(3).filter(|p| p[0] < p[1] && p[1] > p[2]).count()
}

fn left_peaks(w: &[u32]) -> usize {
    peaks(w) + usize::from(w.len() >= 2 && w[0] > w[1])
}

impl fmt::Display for Perm {
    /// Compact digit string when every letter is a single digit, otherwise
    /// comma-separated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.iter().all(|&v| v <= 9) {
            for v in &self.word {
                write!(f, "{}", v)?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.word.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl FromStr for Perm {
    type Err = Error;

    /// Parse either a digit string (`2134`) or a comma-separated list
    /// (`2,1,3,4`).
    fn from_str(s: &str) -> Result<Self> {
        let parse = |tok: &str| -> Result<u32> {
            tok.parse()
                .map_err(|_| Error::InvalidInput(format!("bad letter {:?}", tok)))
        };
        let word = if s.contains(',') {
            s.split(',').map(|t| parse(t.trim())).collect::<Result<Vec<_>>>()?
        } else {
            s.trim()
                .chars()
                .map(|c| {
                    c.to_digit(10)
                        .ok_or_else(|| Error::InvalidInput(format!("bad letter {:?}", c)))
                })
                .collect::<Result<Vec<_>>>()?
        };
        Perm::new(word)
    }
}

/// Visit every permutation of `{1..n}` in lexicographic order.
pub fn for_each_perm(n: usize, mut f: impl FnMut(&[u32])) {
    let mut w: Vec<u32> = (1..=n as u32).collect();
    if n == 0 {
        f(&w);
        return;
    }
    loop {
        f(&w);
        if !next_permutation(&mut w) {
            break;
        }
    }
}

/// In-place lexicographic successor; false at the last permutation.
fn next_permutation(w: &mut [u32]) -> bool {
    if w.len() < 2 {
        return false;
    }
    let mut i = w.len() - 1;
    while i > 0 && w[i - 1] >= w[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = w.len() - 1;
    while w[j] <= w[i - 1] {
        j -= 1;
    }
    w.swap(i - 1, j);
    w[i..].reverse();
    true
}

/// Brute-force refined distribution over the symmetric group:
/// `sum over S_n of s^(occurrences of sigma) t^(stat + shift)`, returned as
/// a polynomial in `(s, t)`. The scan is refused above `max_n`.
pub fn brute_distribution(
    n: usize,
    sigma: &Perm,
    kind: StatKind,
    shift: usize,
    max_n: usize,
) -> Result<BivarPoly> {
    if n == 0 {
        return Err(Error::InvalidInput("brute distribution needs n >= 1".into()));
    }
    if n > max_n {
        return Err(Error::ResourceLimit(format!(
            "brute-force scan of S_{} exceeds the configured bound {}",
            n, max_n
        )));
    }
    let mut grid: Vec<Vec<u64>> = Vec::new();
    for_each_perm(n, |w| {
        let p = Perm { word: w.to_vec() };
        let occ = p.count_occurrences(sigma);
        let texp = p.stat(kind) + shift;
        if grid.len() <= occ {
            grid.resize(occ + 1, Vec::new());
        }
        if grid[occ].len() <= texp {
            grid[occ].resize(texp + 1, 0);
        }
        grid[occ][texp] += 1;
    });
    Ok(BivarPoly::from_counts(&grid))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn p(s: &str) -> Perm {
        s.parse().unwrap()
    }

    #[test]
    fn standardize_examples() {
        assert_eq!(Perm::standardize(&[5, 1, 6, 2, 9]).unwrap(), p("31425"));
        assert_eq!(Perm::standardize(&[1, 2, 3]).unwrap(), p("123"));
        assert_eq!(Perm::standardize(&[9, 7]).unwrap(), p("21"));
        assert!(Perm::standardize(&[3, 3]).is_err());
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(p("4351627").inverse(), p("4621357"));
        assert_eq!(Perm::identity(5).inverse(), Perm::identity(5));
        assert_eq!(p("231").inverse(), p("312"));
    }

    #[test]
    fn reverse_complement_examples() {
        assert_eq!(p("2134").reverse_complement(), p("1243"));
        assert_eq!(Perm::identity(6).reverse_complement(), Perm::identity(6));
        assert_eq!(p("4351627").reverse_complement(), p("1627354"));
    }

    #[test]
    fn statistics_on_worked_example() {
        let pi = p("4351627");
        assert_eq!(pi.stat(StatKind::Des), 3);
        assert_eq!(pi.stat(StatKind::Pk), 2);
        assert_eq!(pi.stat(StatKind::Lpk), 3);
        assert_eq!(pi.stat(StatKind::Ides), 2);
        assert_eq!(pi.stat(StatKind::Ipk), 1);
        assert_eq!(pi.stat(StatKind::Ilpk), 1);
        assert_eq!(Perm::identity(7).stat(StatKind::Des), 0);
        assert_eq!(Perm::identity(1).stat(StatKind::Lpk), 0);
    }

    #[test]
    fn occurrence_counting() {
        assert_eq!(p("162437598").count_occurrences(&p("213")), 2);
        assert_eq!(p("672489153").count_occurrences(&p("213")), 0);
        for n in 3..7 {
            assert_eq!(
                Perm::identity(n).count_occurrences(&p("123")),
                n - 2,
                "identity windows at n={}",
                n
            );
        }
        assert_eq!(p("4351627").occurrence_starts(&p("213")), vec![1, 3, 5]);
    }

    #[test]
    fn lexicographic_enumeration() {
        let mut seen = Vec::new();
        for_each_perm(3, |w| seen.push(w.to_vec()));
        assert_eq!(
            seen,
            vec![
                vec![1, 2, 3],
                vec![1, 3, 2],
                vec![2, 1, 3],
                vec![2, 3, 1],
                vec![3, 1, 2],
                vec![3, 2, 1],
            ]
        );
    }

    #[test]
    fn brute_distribution_small_cases() {
        // Avoiders of 213 at n=4 by ides (+1 shift), s = 0 row.
        let d = brute_distribution(4, &p("213"), StatKind::Ides, 1, DEFAULT_BRUTE_LIMIT).unwrap();
        assert_eq!(d.row(0).to_string(), "t+7t^2+7t^3+t^4");
        // Mass over all of S_4 must be 4!.
        assert_eq!(d.total(), BigInt::from(24));
        // Single permutation at n=1, no descents.
        let d1 = brute_distribution(1, &p("213"), StatKind::Des, 0, DEFAULT_BRUTE_LIMIT).unwrap();
        assert_eq!(d1, BivarPoly::one());
        // Avoiders of 2134 at n=5 by ipk (+1): 12t + 82t^2 + 16t^3.
        let d5 = brute_distribution(5, &p("2134"), StatKind::Ipk, 1, DEFAULT_BRUTE_LIMIT).unwrap();
        assert_eq!(d5.row(0).to_string(), "12t+82t^2+16t^3");
    }

    #[test]
    fn brute_distribution_refuses_large_n() {
        assert!(matches!(
            brute_distribution(11, &p("213"), StatKind::Des, 0, 10),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn inverse_stats_match_stats_of_inverse() {
        for n in 1..=6 {
            for_each_perm(n, |w| {
                let pi = Perm::new(w.to_vec()).unwrap();
                let inv = pi.inverse();
                assert_eq!(pi.stat(StatKind::Ides), inv.stat(StatKind::Des));
                assert_eq!(pi.stat(StatKind::Ipk), inv.stat(StatKind::Pk));
                assert_eq!(pi.stat(StatKind::Ilpk), inv.stat(StatKind::Lpk));
            });
        }
    }

    /// Right valleys: interior strict minima plus a final descent.
    fn right_valleys(w: &[u32]) -> usize {
        let n = w.len();
        let mut count = 0;
        for i in 1..n.saturating_sub(1) {
            if w[i - 1] > w[i] && w[i] < w[i + 1] {
                count += 1;
            }
        }
        if n >= 2 && w[n - 2] > w[n - 1] {
            count += 1;
        }
        count
    }

    #[test]
    fn left_peaks_equal_right_valleys() {
        for n in 1..=7 {
            for_each_perm(n, |w| {
                let pi = Perm::new(w.to_vec()).unwrap();
                assert_eq!(pi.stat(StatKind::Lpk), right_valleys(w));
            });
        }
    }

    #[test]
    fn reverse_complement_statistics() {
        for n in 1..=6 {
            for_each_perm(n, |w| {
                let pi = Perm::new(w.to_vec()).unwrap();
                let rc = pi.reverse_complement();
                assert_eq!(rc.stat(StatKind::Ides), pi.stat(StatKind::Ides));
                assert_eq!(rc.stat(StatKind::Lpk), pi.stat(StatKind::Lpk));
                assert_eq!(rc.stat(StatKind::Ilpk), pi.stat(StatKind::Ilpk));
                if n >= 2 && w[n - 2] < w[n - 1] {
                    assert_eq!(rc.stat(StatKind::Pk), pi.stat(StatKind::Lpk));
                }
                // rc commutes with inverse
                assert_eq!(rc.inverse(), pi.inverse().reverse_complement());
            });
        }
    }

    #[test]
    fn occurrences_respect_reverse_complement() {
        let sigma = p("213");
        let rc_sigma = sigma.reverse_complement();
        for n in 3..=6 {
            for_each_perm(n, |w| {
                let pi = Perm::new(w.to_vec()).unwrap();
                assert_eq!(
                    pi.count_occurrences(&sigma),
                    pi.reverse_complement().count_occurrences(&rc_sigma)
                );
            });
        }
    }

    #[test]
    fn parse_and_display_round_trip() {
        assert_eq!(p("2134").to_string(), "2134");
        assert_eq!(p("2,1,3,4"), p("2134"));
        assert!("2133".parse::<Perm>().is_err());
        assert!("0".parse::<Perm>().is_err());
    }
}
