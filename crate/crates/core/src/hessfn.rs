//! Hessenberg functions and their staircase diagrams.
//!
//! A Hessenberg function `h: [n] -> [n]` is stored 1-based in spirit: `h.get(j)`
//! takes `j` in `1..=n`. The diagram of `h` is the set of boxes `(i, j)` (row,
//! column) with `i <= h(j)`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HessError {
    #[error("empty Hessenberg function")]
    Empty,
    #[error("not monotone: h({j}) = {prev} > h({next_j}) = {next}", next_j = j + 1)]
    NotMonotone { j: usize, prev: usize, next: usize },
    #[error("below diagonal: h({j}) = {value} < {j}")]
    BelowDiagonal { j: usize, value: usize },
    #[error("out of range: h({j}) = {value} > n = {n}")]
    OutOfRange { j: usize, value: usize, n: usize },
    #[error("minor requires n >= 2")]
    SizeTooSmall,
    #[error("index {index} outside [1, {n}]")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("Hessenberg function is already connected")]
    AlreadyConnected,
    #[error("cannot parse {0:?} as a comma-separated integer list")]
    Parse(String),
}

/// A validated Hessenberg function.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct HessenbergFunction {
    values: Vec<usize>,
}

/// The pair `(a, b)` of a double-lollipop shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LollipopShape {
    pub a: usize,
    pub b: usize,
}

impl LollipopShape {
    /// Rebuilds the Hessenberg function of size `n` with this shape.
    pub fn to_function(self, n: usize) -> Result<HessenbergFunction, HessError> {
        let values = (1..=n)
            .map(|j| {
                if j <= self.a {
                    self.a + 1
                } else if j < self.b {
                    j + 1
                } else {
                    n
                }
            })
            .collect();
        HessenbergFunction::new(values)
    }
}

impl HessenbergFunction {
    pub fn new(values: Vec<usize>) -> Result<Self, HessError> {
        let n = values.len();
        if n == 0 {
            return Err(HessError::Empty);
        }
        if let Some(idx) = (1..n).find(|&i| values[i - 1] > values[i]) {
            return Err(HessError::NotMonotone { j: idx, prev: values[idx - 1], next: values[idx] });
        }
        for (idx, &v) in values.iter().enumerate() {
            let j = idx + 1;
            if v < j {
                return Err(HessError::BelowDiagonal { j, value: v });
            }
            if v > n {
                return Err(HessError::OutOfRange { j, value: v, n });
            }
        }
        Ok(Self { values })
    }

    /// The full flag case `(n, ..., n)`.
    pub fn full(n: usize) -> Self {
        Self { values: vec![n; n.max(1)] }
    }

    /// `(h1, n, ..., n)`.
    pub fn with_first(n: usize, h1: usize) -> Result<Self, HessError> {
        let mut values = vec![n; n];
        if let Some(first) = values.first_mut() {
            *first = h1;
        }
        Self::new(values)
    }

    /// `(2, n-1, ..., n-1, n, n)` for `n >= 4`.
    pub fn lollipop_p(n: usize) -> Result<Self, HessError> {
        if n < 4 {
            return Err(HessError::SizeTooSmall);
        }
        let mut values = vec![n - 1; n];
        values[0] = 2;
        values[n - 2] = n;
        values[n - 1] = n;
        Self::new(values)
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// `h(j)` for `j` in `1..=n`; `h(0)` is taken to be 1.
    pub fn get(&self, j: usize) -> usize {
        if j == 0 {
            1
        } else {
            self.values[j - 1]
        }
    }

    pub fn is_connected(&self) -> bool {
        (1..self.n()).all(|j| self.get(j) > j)
    }

    pub fn dimension(&self) -> usize {
        self.values.iter().enumerate().map(|(i, &v)| v - (i + 1)).sum()
    }

    /// Boxes `(row, column)` of the diagram, including the diagonal.
    pub fn boxes(&self) -> BTreeSet<(usize, usize)> {
        let mut set = BTreeSet::new();
        for j in 1..=self.n() {
            for i in 1..=self.get(j) {
                set.insert((i, j));
            }
        }
        set
    }

    /// Pairs `(i, j)` with `j < i <= h(j)`: the transpositions that give edges.
    pub fn edge_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs = Vec::new();
        for j in 1..=self.n() {
            for i in j + 1..=self.get(j) {
                pairs.push((i, j));
            }
        }
        pairs
    }

    /// The sets `⊥(h)` and `L(h)`, both subsets of `[n-1]`.
    pub fn bottom_and_ell_sets(&self) -> (BTreeSet<usize>, BTreeSet<usize>) {
        let mut bottom = BTreeSet::new();
        let mut ell = BTreeSet::new();
        for j in 1..self.n() {
            let (prev, cur) = (self.get(j - 1), self.get(j));
            if prev == j + 1 && cur == j + 1 {
                bottom.insert(j);
            }
            if prev == j && cur == j + 1 {
                ell.insert(j);
            }
        }
        (bottom, ell)
    }

    /// `min{ j : h(j) >= i }`.
    pub fn h_star(&self, i: usize) -> Result<usize, HessError> {
        if i == 0 || i > self.n() {
            return Err(HessError::IndexOutOfRange { index: i, n: self.n() });
        }
        Ok((1..=self.n()).find(|&j| self.get(j) >= i).expect("h(n) = n >= i"))
    }

    /// Removes row `j` and column `j` of the diagram.
    pub fn minor(&self, j: usize) -> Result<Self, HessError> {
        let n = self.n();
        if n < 2 {
            return Err(HessError::SizeTooSmall);
        }
        if j == 0 || j > n {
            return Err(HessError::IndexOutOfRange { index: j, n });
        }
        let values = (1..n)
            .map(|i| {
                if i < j {
                    let v = self.get(i);
                    if v < j {
                        v
                    } else {
                        v - 1
                    }
                } else {
                    self.get(i + 1) - 1
                }
            })
            .collect();
        Ok(Self::new(values).expect("minor of a Hessenberg function is Hessenberg"))
    }

    /// Reflects the diagram in the anti-diagonal.
    pub fn flip(&self) -> Self {
        let n = self.n();
        let boxes = self.boxes();
        let values = (1..=n)
            .map(|j| {
                (1..=n)
                    .filter(|&i| boxes.contains(&(n + 1 - j, n + 1 - i)))
                    .max()
                    .expect("diagonal box is always shaded")
            })
            .collect();
        Self::new(values).expect("flipped diagram is a Hessenberg diagram")
    }

    /// Canonical `(a, b)` when `h` is a double lollipop.
    pub fn lollipop_form(&self) -> Option<LollipopShape> {
        let n = self.n();
        let a = self.get(1).checked_sub(1)?;
        if a == 0 {
            return None;
        }
        let first_full = (1..=n).find(|&j| self.get(j) == n).expect("h(n) = n");
        let b = if first_full > a { first_full } else { a + 1 };
        if !(a < b && b <= n) {
            return None;
        }
        let shape = LollipopShape { a, b };
        match shape.to_function(n) {
            Ok(g) if &g == self => Some(shape),
            _ => None,
        }
    }

    /// Every function reachable by repeatedly taking the first or last minor,
    /// including `h` itself.
    pub fn end_minor_closure(&self) -> BTreeSet<Self> {
        let mut seen = BTreeSet::new();
        let mut stack = vec![self.clone()];
        while let Some(g) = stack.pop() {
            if !seen.insert(g.clone()) || g.n() < 2 {
                continue;
            }
            for j in [1, g.n()] {
                stack.push(g.minor(j).expect("n >= 2"));
            }
        }
        seen
    }

    /// Membership in one of the three excluded families:
    /// `(α, β, …, β)`, its flip, and `(2, γ-1, …, γ-1, γ, γ)` with `γ >= 5`.
    pub fn is_forbidden_pattern(&self) -> bool {
        let n = self.n();
        let v = &self.values;
        let first_family = (3..n).any(|alpha| v[0] == alpha && v[1..].iter().all(|&x| x == n));
        let second_family =
            (3..n).any(|alpha| v[..n - alpha].iter().all(|&x| x == n - 1) && v[n - alpha..].iter().all(|&x| x == n));
        let third_family =
            n >= 5 && v[0] == 2 && v[1..n - 2].iter().all(|&x| x == n - 1) && v[n - 2] == n && v[n - 1] == n;
        first_family || second_family || third_family
    }

    pub fn has_forbidden_minor(&self) -> bool {
        self.end_minor_closure().iter().any(Self::is_forbidden_pattern)
    }

    /// Splits at the smallest `k < n` with `h(k) = k`: returns the restriction to
    /// `[k]`, the shifted restriction to `[k+1, n]`, and the number of copies.
    pub fn decompose_disconnected(&self) -> Result<(Self, Self, u64), HessError> {
        let n = self.n();
        let k = (1..n).find(|&k| self.get(k) == k).ok_or(HessError::AlreadyConnected)?;
        let left = Self::new(self.values[..k].to_vec()).expect("restriction is Hessenberg");
        let right =
            Self::new(self.values[k..].iter().map(|&v| v - k).collect()).expect("shifted restriction is Hessenberg");
        Ok((left, right, binomial(n as u64, k as u64)))
    }
}

/// All Hessenberg functions of size `n`, lexicographically ordered.
pub fn enumerate(n: usize, connected_only: bool) -> Vec<HessenbergFunction> {
    fn extend(n: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let j = prefix.len() + 1;
        if j > n {
            out.push(prefix.clone());
            return;
        }
        let lo = prefix.last().copied().unwrap_or(1).max(j);
        for v in lo..=n {
            prefix.push(v);
            extend(n, prefix, out);
            prefix.pop();
        }
    }
    if n == 0 {
        return Vec::new();
    }
    let mut raw = Vec::new();
    extend(n, &mut Vec::with_capacity(n), &mut raw);
    raw.into_iter()
        .map(|values| HessenbergFunction { values })
        .filter(|h| !connected_only || h.is_connected())
        .collect()
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

impl fmt::Display for HessenbergFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for HessenbergFunction {
    type Err = HessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
        let values = trimmed
            .split(',')
            .map(|p| p.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| HessError::Parse(s.to_string()))?;
        Self::new(values)
    }
}

impl TryFrom<Vec<usize>> for HessenbergFunction {
    type Error = HessError;

    fn try_from(values: Vec<usize>) -> Result<Self, Self::Error> {
        Self::new(values)
    }
}

impl From<HessenbergFunction> for Vec<usize> {
    fn from(h: HessenbergFunction) -> Self {
        h.values
    }
}
