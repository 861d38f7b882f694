//! Independent oracles used only by the tests.

#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use hessgkm::hessfn::HessenbergFunction;
use hessgkm::perm::Permutation;
use hessgkm::rational::Rat;

pub fn h(s: &str) -> HessenbergFunction {
    s.parse().expect("valid Hessenberg function")
}

/// Rank by fraction-free (Bareiss) elimination on a dense integer matrix.
pub fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..rows {
            for k in c + 1..cols {
                let v = &m[rank][c] * &m[r][k] - &m[r][c] * &m[rank][k];
                m[r][k] = v / &prev;
            }
            m[r][c] = BigInt::zero();
        }
        prev = m[rank][c].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Clears denominators row by row, then applies [`bareiss_rank`].
pub fn rational_rank(rows: &[Vec<Rat>]) -> usize {
    let ints = rows
        .iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(&x.denom()));
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();
    bareiss_rank(ints)
}

/// Components of `{w : w(r) = n}` under `w -> w(i,j)`, `j < i <= h(j)`, by
/// breadth-first search over permutations directly.
pub fn flood_fill_components(hh: &HessenbergFunction, r: usize) -> Vec<BTreeSet<Vec<usize>>> {
    let n = hh.n();
    let mut all: Vec<Vec<usize>> = Vec::new();
    permutations(n, &mut Vec::new(), &mut all);
    let members: BTreeSet<Vec<usize>> = all.into_iter().filter(|w| w[r - 1] == n).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for start in &members {
        if seen.contains(start) {
            continue;
        }
        let mut comp = BTreeSet::new();
        let mut queue = VecDeque::from([start.clone()]);
        seen.insert(start.clone());
        while let Some(w) = queue.pop_front() {
            for j in 1..=n {
                for i in j + 1..=hh.get(j) {
                    let mut v = w.clone();
                    v.swap(i - 1, j - 1);
                    if members.contains(&v) && seen.insert(v.clone()) {
                        queue.push_back(v);
                    }
                }
            }
            comp.insert(w);
        }
        out.push(comp);
    }
    out
}

pub fn permutations(n: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if prefix.len() == n {
        out.push(prefix.clone());
        return;
    }
    for v in 1..=n {
        if !prefix.contains(&v) {
            prefix.push(v);
            permutations(n, prefix, out);
            prefix.pop();
        }
    }
}

pub fn all_perms(n: usize) -> Vec<Permutation> {
    let mut raw = Vec::new();
    permutations(n, &mut Vec::new(), &mut raw);
    raw.into_iter().map(|v| Permutation::from_one_line(v).unwrap()).collect()
}

/// Eulerian numbers by counting descents.
pub fn descent_distribution(n: usize) -> Vec<u64> {
    let mut counts = vec![0u64; n.max(1)];
    for w in all_perms(n) {
        let d = (1..n).filter(|&i| w.at(i) > w.at(i + 1)).count();
        counts[d] += 1;
    }
    counts
}

/// Number of shaded boxes strictly below the diagonal, counted cell by cell.
pub fn box_count(hh: &HessenbergFunction) -> usize {
    let n = hh.n();
    (1..=n).map(|j| (1..=n).filter(|&i| i > j && i <= hh.get(j)).count()).sum()
}

pub fn catalan(n: u64) -> u64 {
    let mut c = 1u64;
    for k in 0..n {
        c = c * 2 * (2 * k + 1) / (k + 2);
    }
    c
}
