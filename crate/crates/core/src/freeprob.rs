//! Mixed moments of a free family of standard semicircular elements.
//!
//! `τ(s_{i_1} ⋯ s_{i_d})` counts the non-crossing pairings of the positions
//! `1..d` that only pair positions carrying the same variable. Stars are
//! erased on the way in: each `s_i` is selfadjoint, so `x_i*` and `x_i`
//! evaluate identically. That is wrong for non-selfadjoint limits such as
//! circular elements, which this module does not model.

use alloc::vec;
use alloc::vec::Vec;

use crate::ncpoly::Polynomial;
use crate::{Error, Result, C64};

/// Largest `d` accepted by [`all_pairings`].
pub const MAX_ENUMERATION_DEGREE: usize = 20;

/// A perfect matching of `{1, …, d}`; pairs `(a, b)` with `a < b`, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pairing {
    pairs: Vec<(usize, usize)>,
}

impl Pairing {
    /// Normalizes orientation and order; fails unless every index of
    /// `1..=2·pairs.len()` appears exactly once.
    pub fn new(pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut pairs: Vec<(usize, usize)> = pairs
            .into_iter()
            .map(|(a, b)| if a < b { (a, b) } else { (b, a) })
            .collect();
        pairs.sort_unstable();
        let d = 2 * pairs.len();
        let mut seen = vec![false; d + 1];
        for &(a, b) in &pairs {
            for i in [a, b] {
                if i == 0 || i > d || seen[i] {
                    return Err(Error::MalformedPairing);
                }
                seen[i] = true;
            }
        }
        Ok(Self { pairs })
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn degree(&self) -> usize {
        2 * self.pairs.len()
    }

    /// `true` iff no two pairs `(a, b)`, `(c, e)` have `a < c < b < e`.
    pub fn is_noncrossing(&self) -> bool {
        for (i, &(_, b)) in self.pairs.iter().enumerate() {
            for &(c, e) in &self.pairs[i + 1..] {
                // pairs sorted by first index: a < c
                if c < b && b < e {
                    return false;
                }
            }
        }
        true
    }

    /// Every pair joins positions carrying the same letter of `word`.
    pub fn respects(&self, word: &[usize]) -> bool {
        word.len() == self.degree() && self.pairs.iter().all(|&(a, b)| word[a - 1] == word[b - 1])
    }
}

/// Checks that `pairs` is a valid pairing and tests it for crossings.
pub fn is_noncrossing(pairs: &[(usize, usize)]) -> Result<bool> {
    Ok(Pairing::new(pairs.iter().copied())?.is_noncrossing())
}

/// All `(d−1)!!` pairings of `{1, …, d}`; empty for odd `d`.
pub fn all_pairings(d: usize) -> Result<Vec<Pairing>> {
    if d > MAX_ENUMERATION_DEGREE {
        return Err(Error::InvalidParameter("pairing enumeration limited to d <= 20"));
    }
    let mut out = Vec::new();
    if d % 2 == 1 {
        return Ok(out);
    }
    let mut current = Vec::with_capacity(d / 2);
    let mut used = vec![false; d + 1];
    enumerate(d, &mut used, &mut current, &mut out);
    Ok(out)
}

fn enumerate(d: usize, used: &mut [bool], current: &mut Vec<(usize, usize)>, out: &mut Vec<Pairing>) {
    let Some(first) = (1..=d).find(|&i| !used[i]) else {
        out.push(Pairing { pairs: current.clone() });
        return;
    };
    used[first] = true;
    for second in first + 1..=d {
        if used[second] {
            continue;
        }
        used[second] = true;
        current.push((first, second));
        enumerate(d, used, current, out);
        current.pop();
        used[second] = false;
    }
    used[first] = false;
}

/// Variable indices of a word, stars erased.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IndexWord(Vec<usize>);

impl IndexWord {
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.contains(&0) {
            return Err(Error::InvalidParameter("variable indices are 1-based"));
        }
        Ok(Self(indices))
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }
}

/// `τ(s_{w_1} ⋯ s_{w_d})` as an exact count. The empty word gives 1.
///
/// Interval dynamic program over the recursion "position `i` pairs with
/// some later `j` of equal index; the inside and the outside of that chord
/// are independent". `O(d³)` time.
pub fn free_moment_word(w: &IndexWord) -> u128 {
    let s = w.indices();
    let d = s.len();
    if d % 2 == 1 {
        return 0;
    }
    // count[i][j] = number of valid pairings of s[i..j] (half-open)
    let mut count = vec![vec![0u128; d + 1]; d + 1];
    for i in 0..=d {
        count[i][i] = 1;
    }
    for len in (2..=d).step_by(2) {
        for i in 0..=d - len {
            let j = i + len;
            let mut total = 0u128;
            // s[i] pairs with s[k]; inside s[i+1..k] must have even length
            for k in (i + 1..j).step_by(2) {
                if s[k] == s[i] {
                    total += count[i + 1][k] * count[k + 1][j];
                }
            }
            count[i][j] = total;
        }
    }
    count[0][d]
}

/// `τ(P(s_1, …, s_m))` for a free standard semicircular family.
pub fn free_moment(p: &Polynomial) -> C64 {
    p.terms()
        .map(|(word, c)| {
            let w = IndexWord(word.var_indices());
            c * free_moment_word(&w) as f64
        })
        .sum()
}

/// Brute-force oracle: enumerate all pairings and keep the non-crossing
/// ones that respect the word.
pub fn free_moment_word_brute_force(w: &IndexWord) -> Result<u128> {
    let s = w.indices();
    Ok(all_pairings(s.len())?
        .into_iter()
        .filter(|p| p.is_noncrossing() && p.respects(s))
        .count() as u128)
}
