//! The labeled graph of a Hessenberg function and cochains on its vertices.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::hessfn::HessenbergFunction;
use crate::linalg::SparseVec;
use crate::perm::{factorial, Permutation};
use crate::polyring::{monomial_count, MultiPoly};
use crate::rational::Rat;

/// Largest `n` for which a full graph on `S_n` is built without an override.
pub const DEFAULT_MAX_GRAPH_N: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GkmError {
    #[error("graph on S_{n} exceeds the configured maximum n = {max}")]
    TooLarge { n: usize, max: usize },
    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },
}

/// An edge `{w, w(i,j)}` with `j < i`. `u` and `v` are lexicographic ranks in
/// `S_n`; `label = (a, b)` with `a < b` stands for `t_a - t_b` up to sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub positions: (usize, usize),
    pub label: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    n: usize,
    vertices: Vec<usize>,
    edges: Vec<Edge>,
}

impl LabeledGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Lexicographic ranks of the vertices, increasing.
    pub fn vertex_ranks(&self) -> &[usize] {
        &self.vertices
    }

    pub fn vertices(&self) -> Vec<Permutation> {
        self.vertices.iter().map(|&r| Permutation::from_lex_rank(self.n, r)).collect()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn degrees(&self) -> BTreeMap<usize, usize> {
        let mut deg: BTreeMap<usize, usize> = self.vertices.iter().map(|&v| (v, 0)).collect();
        for e in &self.edges {
            *deg.get_mut(&e.u).expect("endpoint") += 1;
            *deg.get_mut(&e.v).expect("endpoint") += 1;
        }
        deg
    }

    /// Induced subgraph on the vertices satisfying `keep`.
    pub fn induced<F: Fn(&Permutation) -> bool>(&self, keep: F) -> Self {
        let vertices: Vec<usize> =
            self.vertices.iter().copied().filter(|&r| keep(&Permutation::from_lex_rank(self.n, r))).collect();
        self.restrict(&vertices.iter().copied().collect())
    }

    fn restrict(&self, keep: &BTreeSet<usize>) -> Self {
        Self {
            n: self.n,
            vertices: keep.iter().copied().collect(),
            edges: self.edges.iter().filter(|e| keep.contains(&e.u) && keep.contains(&e.v)).copied().collect(),
        }
    }

    /// Connected components ordered by smallest vertex.
    pub fn components(&self) -> Vec<Self> {
        let index: BTreeMap<usize, usize> = self.vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut root = x;
            while parent[root] != root {
                root = parent[root];
            }
            let mut cur = x;
            while parent[cur] != root {
                let next = parent[cur];
                parent[cur] = root;
                cur = next;
            }
            root
        }
        for e in &self.edges {
            let (a, b) = (find(&mut parent, index[&e.u]), find(&mut parent, index[&e.v]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut groups: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
        for (i, &v) in self.vertices.iter().enumerate() {
            let root = find(&mut parent, i);
            groups.entry(root).or_default().insert(v);
        }
        groups.values().map(|keep| self.restrict(keep)).collect()
    }

    /// DOT text, vertices in lexicographic order, edge labels `t{a}-t{b}` with `a < b`.
    pub fn export_dot(&self) -> String {
        let mut out = String::from("graph gkm {\n");
        for &r in &self.vertices {
            let _ = writeln!(out, "  \"{}\";", Permutation::from_lex_rank(self.n, r));
        }
        for e in &self.edges {
            let _ = writeln!(
                out,
                "  \"{}\" -- \"{}\" [label=\"t{}-t{}\"];",
                Permutation::from_lex_rank(self.n, e.u),
                Permutation::from_lex_rank(self.n, e.v),
                e.label.0,
                e.label.1
            );
        }
        out.push_str("}\n");
        out
    }

    /// Adjacency as `{vertices, edges: [{u, v, label: [a, b]}]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let name = |r: usize| Permutation::from_lex_rank(self.n, r).to_string();
        serde_json::json!({
            "vertices": self.vertices.iter().map(|&r| name(r)).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|e| serde_json::json!({
                "u": name(e.u),
                "v": name(e.v),
                "label": [e.label.0, e.label.1],
            })).collect::<Vec<_>>(),
        })
    }
}

pub fn build_graph(h: &HessenbergFunction) -> Result<LabeledGraph, GkmError> {
    build_graph_with_limit(h, DEFAULT_MAX_GRAPH_N)
}

pub fn build_graph_with_limit(h: &HessenbergFunction, max_n: usize) -> Result<LabeledGraph, GkmError> {
    let n = h.n();
    if n > max_n {
        return Err(GkmError::TooLarge { n, max: max_n });
    }
    let pairs = h.edge_pairs();
    let mut edges: Vec<Edge> = (0..factorial(n))
        .into_par_iter()
        .flat_map_iter(|r| {
            let w = Permutation::from_lex_rank(n, r);
            pairs
                .iter()
                .filter_map(|&(i, j)| {
                    let v = w.swap_positions(i, j).lex_rank();
                    (r < v).then(|| {
                        let (a, b) = (w.at(i), w.at(j));
                        Edge { u: r, v, positions: (i, j), label: (a.min(b), a.max(b)) }
                    })
                })
                .collect::<Vec<_>>()
        })
        .collect();
    edges.sort();
    Ok(LabeledGraph { n, vertices: (0..factorial(n)).collect(), edges })
}

/// A map `S_n -> Q[t_1..t_n]` whose nonzero values are homogeneous of one degree.
/// Values are stored densely by lexicographic rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    n: usize,
    degree: u32,
    values: Vec<MultiPoly>,
}

impl Cochain {
    pub fn zero(n: usize, degree: u32) -> Self {
        Self { n, degree, values: vec![MultiPoly::zero(n); factorial(n)] }
    }

    /// Builds `w -> f(w)`; panics when a value is not homogeneous of `degree`.
    pub fn from_fn<F: Fn(&Permutation) -> MultiPoly + Sync>(n: usize, degree: u32, f: F) -> Self {
        let values: Vec<MultiPoly> =
            (0..factorial(n)).into_par_iter().map(|r| f(&Permutation::from_lex_rank(n, r))).collect();
        for (r, p) in values.iter().enumerate() {
            assert!(p.is_homogeneous_of(degree), "value at rank {r} is not of degree {degree}: {p}");
        }
        Self { n, degree, values }
    }

    /// The constant cochain with value `p`.
    pub fn constant(n: usize, p: &MultiPoly) -> Self {
        let degree = p.total_degree().unwrap_or(0);
        assert!(p.is_homogeneous_of(degree), "constant must be homogeneous");
        Self { n, degree, values: vec![p.clone(); factorial(n)] }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, &MultiPoly::one(n))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn values(&self) -> &[MultiPoly] {
        &self.values
    }

    pub fn at(&self, w: &Permutation) -> &MultiPoly {
        &self.values[w.lex_rank()]
    }

    pub fn at_rank(&self, r: usize) -> &MultiPoly {
        &self.values[r]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(MultiPoly::is_zero)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.values.len()).filter(|&r| !self.values[r].is_zero()).collect()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self { n: self.n, degree: self.degree, values: self.values.iter().map(|p| p.scale(c)).collect() }
    }

    /// Coordinates `rank * M + monomial_index`, `M` the number of degree-`d` monomials.
    pub fn to_sparse(&self) -> SparseVec {
        let m = monomial_count(self.n, self.degree);
        SparseVec::from_pairs(
            self.values
                .iter()
                .enumerate()
                .flat_map(|(r, p)| p.coordinates(self.degree).into_iter().map(move |(i, c)| (r * m + i, c))),
        )
    }

    pub fn from_sparse(n: usize, degree: u32, v: &SparseVec) -> Self {
        let m = monomial_count(n, degree);
        let mut terms: Vec<Vec<(Vec<u32>, Rat)>> = vec![Vec::new(); factorial(n)];
        for (col, c) in v.entries() {
            terms[col / m].push((crate::polyring::monomial_from_index(n, degree, col % m), c.clone()));
        }
        Self { n, degree, values: terms.into_iter().map(|t| MultiPoly::from_terms(n, t)).collect() }
    }

    /// Values at `t = point`, by lexicographic rank.
    pub fn evaluate(&self, point: &[Rat]) -> Vec<Rat> {
        self.values.iter().map(|p| p.eval(point)).collect()
    }

    fn check_size(&self, other: &Self) {
        assert_eq!(self.n, other.n, "cochain sizes differ");
    }
}

impl<'a> Add<&'a Cochain> for &'a Cochain {
    type Output = Cochain;

    fn add(self, rhs: &'a Cochain) -> Cochain {
        self.check_size(rhs);
        let values: Vec<MultiPoly> = self.values.iter().zip(&rhs.values).map(|(a, b)| a + b).collect();
        let degree = merged_degree(self, rhs);
        Cochain { n: self.n, degree, values }
    }
}

impl<'a> Sub<&'a Cochain> for &'a Cochain {
    type Output = Cochain;

    fn sub(self, rhs: &'a Cochain) -> Cochain {
        self.check_size(rhs);
        let values: Vec<MultiPoly> = self.values.iter().zip(&rhs.values).map(|(a, b)| a - b).collect();
        let degree = merged_degree(self, rhs);
        Cochain { n: self.n, degree, values }
    }
}

fn merged_degree(a: &Cochain, b: &Cochain) -> u32 {
    match (a.is_zero(), b.is_zero()) {
        (true, _) => b.degree,
        (_, true) => a.degree,
        _ => {
            assert_eq!(a.degree, b.degree, "adding cochains of different degrees");
            a.degree
        }
    }
}

impl<'a> Mul<&'a Cochain> for &'a Cochain {
    type Output = Cochain;

    #[allow(clippy::suspicious_arithmetic_impl)] // degrees add under multiplication
    fn mul(self, rhs: &'a Cochain) -> Cochain {
        self.check_size(rhs);
        let values: Vec<MultiPoly> = self.values.iter().zip(&rhs.values).map(|(a, b)| a * b).collect();
        Cochain { n: self.n, degree: self.degree + rhs.degree, values }
    }
}

impl Neg for &Cochain {
    type Output = Cochain;

    fn neg(self) -> Cochain {
        Cochain { n: self.n, degree: self.degree, values: self.values.iter().map(|p| -p).collect() }
    }
}

/// Checks that `f(w) - f(v)` vanishes under `t_a := t_b` on every edge.
pub fn is_gkm_class(graph: &LabeledGraph, f: &Cochain) -> bool {
    assert_eq!(graph.n, f.n, "graph and cochain sizes differ");
    graph.edges.par_iter().all(|e| {
        let diff = f.at_rank(e.u) - f.at_rank(e.v);
        diff.divisible_by_difference(e.label.0, e.label.1)
    })
}

/// The first edge on which `f` fails the divisibility condition.
pub fn first_gkm_violation(graph: &LabeledGraph, f: &Cochain) -> Option<Edge> {
    graph
        .edges
        .iter()
        .find(|e| !(f.at_rank(e.u) - f.at_rank(e.v)).divisible_by_difference(e.label.0, e.label.1))
        .copied()
}

/// `(sigma . f)(w) = sigma(f(sigma^{-1} w))`.
pub fn dot_action(sigma: &Permutation, f: &Cochain) -> Cochain {
    assert_eq!(sigma.n(), f.n, "permutation size");
    let inv = sigma.inverse();
    let values = (0..f.values.len())
        .into_par_iter()
        .map(|r| {
            let w = Permutation::from_lex_rank(f.n, r);
            f.at(&inv.compose(&w)).permute_vars(sigma)
        })
        .collect();
    Cochain { n: f.n, degree: f.degree, values }
}

/// `f^vee(w) = f(w w_0)`.
pub fn involution_vee(f: &Cochain) -> Cochain {
    let w0 = Permutation::longest(f.n);
    let values = (0..f.values.len()).map(|r| f.at(&Permutation::from_lex_rank(f.n, r).compose(&w0)).clone()).collect();
    Cochain { n: f.n, degree: f.degree, values }
}

/// Components of the subgraph induced on `{w : w(r) = n}`.
pub fn fixed_level_components(h: &HessenbergFunction, r: usize) -> Result<Vec<LabeledGraph>, GkmError> {
    let graph = build_graph(h)?;
    let n = h.n();
    Ok(graph.induced(|w| w.at(r) == n).components())
}

/// Checks that `w -> w c_r` maps `component` isomorphically, labels included,
/// onto a component of the graph of the minor `h^r` on `S_{n-1}`.
pub fn phi_r_check(h: &HessenbergFunction, r: usize, component: &LabeledGraph) -> Result<bool, GkmError> {
    let n = h.n();
    if component.n != n {
        return Err(GkmError::SizeMismatch { expected: n, found: component.n });
    }
    if n == 1 {
        // `S_0` is a single point with no edges.
        return Ok(component.vertices.len() == 1 && component.edges.is_empty());
    }
    let Ok(minor) = h.minor(r) else {
        return Ok(false);
    };
    let target = build_graph(&minor)?;
    let cycle = Permutation::cycle_to_end(n, r);
    let mut image: BTreeMap<usize, usize> = BTreeMap::new();
    for &rank in &component.vertices {
        let w = Permutation::from_lex_rank(n, rank);
        let Some(small) = w.compose(&cycle).restrict_fixing_last() else {
            return Ok(false);
        };
        image.insert(rank, small.lex_rank());
    }
    let image_set: BTreeSet<usize> = image.values().copied().collect();
    if image_set.len() != image.len() {
        return Ok(false);
    }
    let Some(matching) = target.components().into_iter().find(|c| c.vertices.first() == image_set.first()) else {
        return Ok(false);
    };
    if matching.vertices.iter().copied().collect::<BTreeSet<_>>() != image_set {
        return Ok(false);
    }
    let target_edges: BTreeSet<(usize, usize, (usize, usize))> =
        matching.edges.iter().map(|e| (e.u.min(e.v), e.u.max(e.v), e.label)).collect();
    let mapped: BTreeSet<(usize, usize, (usize, usize))> = component
        .edges
        .iter()
        .map(|e| {
            let (a, b) = (image[&e.u], image[&e.v]);
            (a.min(b), a.max(b), e.label)
        })
        .collect();
    Ok(mapped.len() == component.edges.len() && mapped == target_edges)
}
