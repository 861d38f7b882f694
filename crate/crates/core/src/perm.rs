//! Permutations in one-line notation and a lexicographic indexing of `S_n`.

use std::fmt;

use serde::{Deserialize, Serialize};

/// A permutation of `[n]` in one-line notation: `w(i) = self.at(i)` for `i` in `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    /// Builds a permutation from one-line notation, returning `None` unless
    /// `values` is a bijection onto `[n]`.
    pub fn from_one_line(values: Vec<usize>) -> Option<Self> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v == 0 || v > n || seen[v] {
                return None;
            }
            seen[v] = true;
        }
        Some(Self(values))
    }

    pub fn identity(n: usize) -> Self {
        Self((1..=n).collect())
    }

    /// The longest element `n n-1 ... 1`.
    pub fn longest(n: usize) -> Self {
        Self((1..=n).rev().collect())
    }

    /// The transposition exchanging `i` and `j`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut p = Self::identity(n);
        p.0.swap(i - 1, j - 1);
        p
    }

    /// The cycle `(r r+1 ... n)`, sending `r -> r+1 -> ... -> n -> r`.
    pub fn cycle_to_end(n: usize, r: usize) -> Self {
        let values = (1..=n)
            .map(|i| {
                if i < r {
                    i
                } else if i == n {
                    r
                } else {
                    i + 1
                }
            })
            .collect();
        Self(values)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn at(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    pub fn one_line(&self) -> &[usize] {
        &self.0
    }

    /// `(self * other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Self) -> Self {
        Self(other.0.iter().map(|&i| self.0[i - 1]).collect())
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.n()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Self(inv)
    }

    /// `self * (i j)`: swaps the entries in positions `i` and `j`.
    pub fn swap_positions(&self, i: usize, j: usize) -> Self {
        let mut p = self.clone();
        p.0.swap(i - 1, j - 1);
        p
    }

    pub fn position_of(&self, value: usize) -> usize {
        self.0.iter().position(|&v| v == value).expect("value in range") + 1
    }

    /// Rank in the lexicographic order of one-line notations.
    pub fn lex_rank(&self) -> usize {
        let n = self.n();
        let mut rank = 0;
        for i in 0..n {
            let smaller_later = self.0[i + 1..].iter().filter(|&&v| v < self.0[i]).count();
            rank += smaller_later * factorial(n - 1 - i);
        }
        rank
    }

    pub fn from_lex_rank(n: usize, mut rank: usize) -> Self {
        let mut pool: Vec<usize> = (1..=n).collect();
        let mut values = Vec::with_capacity(n);
        for i in 0..n {
            let f = factorial(n - 1 - i);
            values.push(pool.remove(rank / f));
            rank %= f;
        }
        Self(values)
    }

    /// Drops the last entry; requires `w(n) = n`.
    pub fn restrict_fixing_last(&self) -> Option<Self> {
        (self.0.last() == Some(&self.n())).then(|| Self(self.0[..self.n() - 1].to_vec()))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.n() >= 10 { "," } else { "" };
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(sep))
    }
}

pub fn factorial(m: usize) -> usize {
    (1..=m).product()
}

/// All of `S_n` in lexicographic order; position in `elements` equals `lex_rank`.
#[derive(Debug, Clone)]
pub struct SymmetricGroup {
    n: usize,
    elements: Vec<Permutation>,
}

impl SymmetricGroup {
    pub fn new(n: usize) -> Self {
        let elements = (0..factorial(n)).map(|r| Permutation::from_lex_rank(n, r)).collect();
        Self { n, elements }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn get(&self, index: usize) -> &Permutation {
        &self.elements[index]
    }

    pub fn index_of(&self, w: &Permutation) -> usize {
        w.lex_rank()
    }
}
