//! Sparse exact vectors and an incremental fully reduced echelon basis.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::rational::Rat;

/// A sparse vector: strictly increasing columns, no stored zeros.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, Rat)>,
}

impl SparseVec {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds from arbitrary pairs: sorts, merges duplicates, drops zeros.
    pub fn from_pairs<I: IntoIterator<Item = (usize, Rat)>>(pairs: I) -> Self {
        let mut acc: BTreeMap<usize, Rat> = BTreeMap::new();
        for (c, v) in pairs {
            let slot = acc.entry(c).or_insert_with(Rat::zero);
            *slot += &v;
        }
        Self { entries: acc.into_iter().filter(|(_, v)| !v.is_zero()).collect() }
    }

    pub fn from_dense(values: &[Rat]) -> Self {
        Self { entries: values.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(c, v)| (c, v.clone())).collect() }
    }

    pub fn unit(col: usize) -> Self {
        Self { entries: vec![(col, Rat::one())] }
    }

    pub fn entries(&self) -> &[(usize, Rat)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, col: usize) -> Rat {
        match self.entries.binary_search_by_key(&col, |(c, _)| *c) {
            Ok(i) => self.entries[i].1.clone(),
            Err(_) => Rat::zero(),
        }
    }

    pub fn leading(&self) -> Option<(usize, &Rat)> {
        self.entries.first().map(|(c, v)| (*c, v))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::new();
        }
        Self { entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect() }
    }

    /// `self + c * other`.
    pub fn axpy(&self, c: &Rat, other: &Self) -> Self {
        if c.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut i, mut j) = (0, 0);
        while i < self.entries.len() || j < other.entries.len() {
            let take_left =
                j >= other.entries.len() || (i < self.entries.len() && self.entries[i].0 < other.entries[j].0);
            let take_right =
                i >= self.entries.len() || (j < other.entries.len() && other.entries[j].0 < self.entries[i].0);
            if take_left {
                out.push(self.entries[i].clone());
                i += 1;
            } else if take_right {
                let (col, v) = &other.entries[j];
                out.push((*col, v * c));
                j += 1;
            } else {
                let col = self.entries[i].0;
                let v = &self.entries[i].1 + &(&other.entries[j].1 * c);
                if !v.is_zero() {
                    out.push((col, v));
                }
                i += 1;
                j += 1;
            }
        }
        Self { entries: out }
    }
}

/// Fully reduced row echelon basis of a growing subspace.
///
/// Each row has a unique pivot (its smallest column), normalized to 1, and no
/// row has a nonzero entry in another row's pivot column.
#[derive(Debug, Clone, Default)]
pub struct EchelonBasis {
    rows: BTreeMap<usize, SparseVec>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn rows(&self) -> impl Iterator<Item = &SparseVec> {
        self.rows.values()
    }

    /// Reduces `v` against the basis. Rows are fully reduced, so a single pass
    /// over the pivots met in the original support suffices.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let hits: Vec<(&SparseVec, &Rat)> =
            v.entries.iter().filter_map(|(c, x)| self.rows.get(c).map(|row| (row, x))).collect();
        if hits.is_empty() {
            return v.clone();
        }
        if hits.len() == 1 {
            let (row, x) = hits[0];
            return v.axpy(&-x, row);
        }
        let mut acc: HashMap<usize, Rat> = v.entries.iter().cloned().collect();
        for (row, x) in hits {
            let factor = -x;
            for (c, r) in &row.entries {
                let term = r * &factor;
                match acc.get_mut(c) {
                    Some(slot) => *slot += &term,
                    None => {
                        acc.insert(*c, term);
                    }
                }
            }
        }
        let mut entries: Vec<(usize, Rat)> = acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        entries.sort_unstable_by_key(|(c, _)| *c);
        SparseVec { entries }
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the spanned subspace; returns whether the rank grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let reduced = self.reduce(v);
        let Some((pivot, lead)) = reduced.leading() else {
            return false;
        };
        let row = reduced.scale(&lead.recip());
        let updates: Vec<(usize, Rat)> = self
            .rows
            .iter()
            .filter_map(|(p, r)| {
                let x = r.get(pivot);
                (!x.is_zero()).then_some((*p, x))
            })
            .collect();
        for (p, x) in updates {
            let r = self.rows.get_mut(&p).expect("row present");
            *r = r.axpy(&-&x, &row);
        }
        self.rows.insert(pivot, row);
        true
    }

    /// Basis of the solution space `{x : row . x = 0 for every row}` within
    /// columns `0..ncols`, one vector per free column.
    pub fn nullspace(&self, ncols: usize) -> Vec<SparseVec> {
        let mut columns: BTreeMap<usize, Vec<(usize, Rat)>> = BTreeMap::new();
        for (p, row) in &self.rows {
            for (c, x) in row.entries.iter().skip(1) {
                columns.entry(*c).or_default().push((*p, -x));
            }
        }
        (0..ncols)
            .filter(|c| !self.rows.contains_key(c))
            .map(|free| {
                let mut pairs = columns.remove(&free).unwrap_or_default();
                pairs.push((free, Rat::one()));
                SparseVec::from_pairs(pairs)
            })
            .collect()
    }
}

/// Dimension of the span of `vectors`.
pub fn rank<'a, I: IntoIterator<Item = &'a SparseVec>>(vectors: I) -> usize {
    let mut basis = EchelonBasis::new();
    for v in vectors {
        basis.insert(v);
    }
    basis.rank()
}

/// Default prime for the modular cross-check, `2^61 - 1`.
pub const MERSENNE_61: u64 = (1 << 61) - 1;

pub fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn powmod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse modulo a prime.
pub fn invmod(a: u64, p: u64) -> u64 {
    assert!(!a.is_multiple_of(p), "no inverse of zero");
    powmod(a, p - 2, p)
}

/// The same echelon engine over `Z/p`. Its rank never exceeds the rational
/// rank, and agrees with it unless `p` divides some minor.
#[derive(Debug, Clone)]
pub struct ModularEchelon {
    p: u64,
    rows: BTreeMap<usize, Vec<(usize, u64)>>,
}

impl ModularEchelon {
    pub fn new(p: u64) -> Self {
        Self { p, rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Reduced rows in pivot order.
    pub fn rows(&self) -> impl Iterator<Item = &[(usize, u64)]> {
        self.rows.values().map(|r| r.as_slice())
    }

    /// Inserts the reduction of `v`; `None` when some denominator vanishes mod `p`.
    pub fn insert_rational(&mut self, v: &SparseVec) -> Option<bool> {
        let mut residues = Vec::with_capacity(v.nnz());
        for (c, x) in v.entries() {
            let r = x.mod_prime(self.p)?;
            if r != 0 {
                residues.push((*c, r));
            }
        }
        Some(self.insert(residues))
    }

    pub fn insert(&mut self, v: Vec<(usize, u64)>) -> bool {
        let p = self.p;
        let mut acc: BTreeMap<usize, u64> =
            v.into_iter().filter(|(_, x)| x % p != 0).map(|(c, x)| (c, x % p)).collect();
        let hits: Vec<(usize, u64)> =
            acc.iter().filter(|(c, _)| self.rows.contains_key(c)).map(|(c, x)| (*c, *x)).collect();
        for (pivot, x) in hits {
            for (c, r) in &self.rows[&pivot] {
                let slot = acc.entry(*c).or_insert(0);
                *slot = (*slot + p - mulmod(*r, x, p)) % p;
            }
        }
        acc.retain(|_, x| *x != 0);
        let Some((&pivot, &lead)) = acc.iter().next() else {
            return false;
        };
        let inv = invmod(lead, p);
        let row: Vec<(usize, u64)> = acc.into_iter().map(|(c, x)| (c, mulmod(x, inv, p))).collect();
        for r in self.rows.values_mut() {
            if let Ok(i) = r.binary_search_by_key(&pivot, |(c, _)| *c) {
                let x = r[i].1;
                let mut merged: BTreeMap<usize, u64> = r.iter().copied().collect();
                for (c, y) in &row {
                    let slot = merged.entry(*c).or_insert(0);
                    *slot = (*slot + p - mulmod(*y, x, p)) % p;
                }
                *r = merged.into_iter().filter(|(_, y)| *y != 0).collect();
            }
        }
        self.rows.insert(pivot, row);
        true
    }
}
