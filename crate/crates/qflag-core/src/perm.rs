//! Permutations of `S_n` in one-line notation, and their identification with
//! the type A Weyl group.
//!
//! The composition convention is `(w * v)(x) = w(v(x))`, so right
//! multiplication by the adjacent transposition `s_i` swaps the entries at
//! positions `i` and `i + 1` of the one-line word.

use crate::roots::{RootSystem, WeylGroup};
use crate::{Error, Result};

/// A permutation of `{1, ..., n}` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm(Vec<u8>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((1..=n as u8).collect())
    }

    /// The longest element `[n, n-1, ..., 1]`.
    pub fn longest(n: usize) -> Self {
        Perm((1..=n as u8).rev().collect())
    }

    pub fn from_one_line(values: Vec<u8>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v == 0 || v as usize > n || seen[v as usize] {
                return Err(Error::InvalidPermutation(format!(
                    "{values:?} is not a permutation of 1..={n}"
                )));
            }
            seen[v as usize] = true;
        }
        Ok(Perm(values))
    }

    /// Parses one-line notation like "231". Only single-digit entries are
    /// accepted, which covers every supported rank.
    pub fn parse(s: &str) -> Result<Self> {
        let values: Vec<u8> = s
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as u8)
                    .ok_or_else(|| Error::InvalidPermutation(format!("bad character in \"{s}\"")))
            })
            .collect::<Result<_>>()?;
        if values.is_empty() {
            return Err(Error::InvalidPermutation("empty input".into()));
        }
        Self::from_one_line(values)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// Image of `x` (1-based).
    pub fn apply(&self, x: usize) -> usize {
        self.0[x - 1] as usize
    }

    pub fn one_line(&self) -> &[u8] {
        &self.0
    }

    /// Number of inversions, the Coxeter length.
    pub fn length(&self) -> usize {
        let n = self.n();
        let mut count = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.0[i] > self.0[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// `true` iff `w(i) > w(i+1)` (1-based `i`), i.e. right multiplication by
    /// `s_i` shortens the permutation.
    pub fn descent(&self, i: usize) -> bool {
        self.0[i - 1] > self.0[i]
    }

    /// `w * s_i`: swaps the entries at positions `i`, `i+1` (1-based).
    pub fn multiply_adjacent(&self, i: usize) -> Perm {
        let mut v = self.0.clone();
        v.swap(i - 1, i);
        Perm(v)
    }

    /// A reduced word for `w` as 0-based generator indices.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut word = Vec::new();
        loop {
            let mut found = None;
            for i in 1..w.n() {
                if w.descent(i) {
                    found = Some(i);
                    break;
                }
            }
            match found {
                None => break,
                Some(i) => {
                    w = w.multiply_adjacent(i);
                    word.push(i - 1);
                }
            }
        }
        word.reverse();
        word
    }

    /// Product of adjacent transpositions, 0-based generator indices.
    pub fn from_word(n: usize, word: &[usize]) -> Result<Perm> {
        let mut w = Perm::identity(n);
        for &i in word {
            if i + 1 >= n {
                return Err(Error::IndexOutOfRange {
                    what: "simple reflection",
                    index: i,
                    max: n - 1,
                });
            }
            w = w.multiply_adjacent(i + 1);
        }
        Ok(w)
    }

    /// Lehmer code: `code_k = #{j > k : w(j) < w(k)}`.
    pub fn code(&self) -> Vec<u16> {
        let n = self.n();
        (0..n)
            .map(|k| (k + 1..n).filter(|&j| self.0[j] < self.0[k]).count() as u16)
            .collect()
    }

    /// All permutations of `S_n` in lexicographic one-line order.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut current = Perm::identity(n);
        loop {
            out.push(current.clone());
            if !current.next_lex() {
                break;
            }
        }
        out
    }

    fn next_lex(&mut self) -> bool {
        let v = &mut self.0;
        let n = v.len();
        if n < 2 {
            return false;
        }
        let mut i = n - 1;
        while i > 0 && v[i - 1] >= v[i] {
            i -= 1;
        }
        if i == 0 {
            return false;
        }
        let mut j = n - 1;
        while v[j] <= v[i - 1] {
            j -= 1;
        }
        v.swap(i - 1, j);
        v[i..].reverse();
        true
    }

    /// Index of this permutation in the Weyl group of the `A_{n-1}` root
    /// system.
    pub fn weyl_index(&self, rs: &RootSystem, wg: &WeylGroup) -> Result<usize> {
        wg.element_from_word(rs, &self.reduced_word())
    }

    /// Permutation of the Weyl group element `widx` (type A only).
    pub fn from_weyl(wg: &WeylGroup, widx: usize, n: usize) -> Result<Perm> {
        Perm::from_word(n, &wg.element(widx).word)
    }
}

impl std::fmt::Display for Perm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for v in &self.0 {
            write!(f, "{v}")?;
        }
        Ok(())
    }
}
