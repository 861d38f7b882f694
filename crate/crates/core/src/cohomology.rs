//! Graded spans of products of degree-two classes, compared against the ranks
//! forced by freeness of equivariant cohomology.
//!
//! Two models are available.
//!
//! * `Full`: cochains with polynomial values, coordinates indexed by
//!   `(vertex, monomial)`. Degree `d` of equivariant cohomology has rank
//!   `sum_e b_e C(d-e+n-1, n-1)`.
//! * `Line`: every value is evaluated at the point `t = (1, 2, ..., n-1, 0)`,
//!   so a class of degree `d` becomes a vector in `Q^{n!}`. The image of the
//!   classes of degree `<= d` has dimension `b_0 + ... + b_d`: the localization
//!   matrix of a module basis has determinant a product of edge labels, which
//!   stays nonzero at a point with distinct coordinates. Modulo the image in
//!   degree `d-1`, the degree-`d` image is ordinary cohomology in degree `d`,
//!   so both the verdict and the first degree where generation fails agree
//!   with the full model.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classes::{build_class, membership_conditions, ClassSpec};
use crate::gkm::{build_graph_with_limit, is_gkm_class, Cochain, GkmError, DEFAULT_MAX_GRAPH_N};
use crate::hessfn::{binomial, HessenbergFunction};
use crate::linalg::{mulmod, EchelonBasis, ModularEchelon, SparseVec, MERSENNE_61};
use crate::perm::factorial;
use crate::polyring::{monomial_count, monomials_of_degree, Exponents, MultiPoly};
use crate::qseries::{poincare_direct, QPoly};
use crate::rational::Rat;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CohomError {
    #[error("h = {0} is not connected")]
    Disconnected(String),
    #[error("{what} needs {size}, above the configured limit {limit}")]
    TooLarge { what: String, size: usize, limit: usize },
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

impl From<GkmError> for CohomError {
    fn from(e: GkmError) -> Self {
        match e {
            GkmError::TooLarge { n, max } => {
                CohomError::TooLarge { what: format!("graph on S_{n}"), size: n, limit: max }
            }
            other => CohomError::InvariantViolation(other.to_string()),
        }
    }
}

/// Resource gates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Largest `n` for any graph.
    pub max_graph_n: usize,
    /// Largest number of unknowns in a kernel computation.
    pub max_kernel_unknowns: usize,
    /// Largest number of coordinates of a full-model cochain space.
    pub max_full_columns: usize,
    /// Largest `n` for which `subring_hilbert` runs.
    pub max_subring_n: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_graph_n: DEFAULT_MAX_GRAPH_N,
            max_kernel_unknowns: 60_000,
            max_full_columns: 60_000,
            max_subring_n: 5,
        }
    }
}

impl Limits {
    /// Effectively no limits.
    pub fn unbounded() -> Self {
        Self {
            max_graph_n: usize::MAX,
            max_kernel_unknowns: usize::MAX,
            max_full_columns: usize::MAX,
            max_subring_n: usize::MAX,
        }
    }

    fn gate(&self, what: &str, size: usize, limit: usize) -> Result<(), CohomError> {
        if size > limit {
            Err(CohomError::TooLarge { what: what.to_string(), size, limit })
        } else {
            Ok(())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum SpanModel {
    #[default]
    Line,
    Full,
    /// The line model over `F_p`, `p = 2^61 - 1`. Reaching the free-module
    /// rank mod `p` certifies it over `Q`; any shortfall is recomputed exactly.
    Modular,
}

impl fmt::Display for SpanModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpanModel::Line => "line",
            SpanModel::Full => "full",
            SpanModel::Modular => "modular",
        })
    }
}

impl std::str::FromStr for SpanModel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "line" => Ok(SpanModel::Line),
            "full" => Ok(SpanModel::Full),
            "modular" => Ok(SpanModel::Modular),
            _ => Err(format!("unknown model {s:?}; expected line, full or modular")),
        }
    }
}

/// A member of the degree-two spanning set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Generator {
    Class(ClassSpec),
    Constant(usize),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Class(c) => write!(f, "{c}"),
            Generator::Constant(i) => write!(f, "t:{i}"),
        }
    }
}

/// Generator specs: all `x_k`, `y_{j,k}` for `j` in the bottom set, `tau_A`
/// for `|A|` in the ell set (index `n-1` excluded from both), and constants.
pub fn degree2_generators(h: &HessenbergFunction) -> Result<Vec<Generator>, CohomError> {
    if !h.is_connected() {
        return Err(CohomError::Disconnected(h.to_string()));
    }
    let n = h.n();
    let (bottom, ell) = h.bottom_and_ell_sets();
    let mut out: Vec<Generator> = (1..=n).map(|k| Generator::Class(ClassSpec::X(k))).collect();
    for &j in bottom.iter().filter(|&&j| j != n - 1) {
        out.extend((1..=n).map(|k| Generator::Class(ClassSpec::Y(j, k))));
    }
    for &size in ell.iter().filter(|&&s| s != n - 1) {
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize == size {
                let a = (1..=n).filter(|&k| mask & (1 << (k - 1)) != 0).collect();
                out.push(Generator::Class(ClassSpec::Tau(a)));
            }
        }
    }
    out.extend((1..=n).map(Generator::Constant));
    Ok(out)
}

pub fn generator_cochain(n: usize, g: &Generator) -> Cochain {
    match g {
        Generator::Class(spec) => build_class(n, spec).expect("generator parameters in range"),
        Generator::Constant(i) => Cochain::constant(n, &MultiPoly::var(n, *i)),
    }
}

/// The spanning set of degree-two equivariant classes, each checked against
/// its membership condition.
pub fn degree2_spanning_set(h: &HessenbergFunction) -> Result<Vec<(Generator, Cochain)>, CohomError> {
    let n = h.n();
    let gens = degree2_generators(h)?;
    for g in &gens {
        if let Generator::Class(spec) = g {
            if !membership_conditions(h, spec) {
                return Err(CohomError::InvariantViolation(format!("{spec} fails its membership condition for {h}")));
            }
        }
    }
    Ok(gens
        .into_iter()
        .map(|g| {
            let c = generator_cochain(n, &g);
            (g, c)
        })
        .collect())
}

/// Checks every spanning-set member against the edge condition.
pub fn spanning_set_is_gkm(h: &HessenbergFunction, limits: &Limits) -> Result<bool, CohomError> {
    let graph = build_graph_with_limit(h, limits.max_graph_n)?;
    Ok(degree2_spanning_set(h)?.iter().all(|(_, c)| is_gkm_class(&graph, c)))
}

fn betti(h: &HessenbergFunction) -> Vec<usize> {
    let p = poincare_direct(h);
    (0..=h.dimension()).map(|k| usize::try_from(p.coeff(k)).expect("Betti number fits")).collect()
}

/// `sum_{e<=d} b_e C(d-e+n-1, n-1)`.
pub fn equivariant_rank_oracle(h: &HessenbergFunction, d: usize) -> usize {
    oracle_from_betti(&betti(h), h.n(), d)
}

fn oracle_from_betti(b: &[usize], n: usize, d: usize) -> usize {
    b.iter().enumerate().take(d + 1).map(|(e, &be)| be * binomial((d - e + n - 1) as u64, n as u64 - 1) as usize).sum()
}

/// `b_0 + ... + b_d`.
pub fn line_rank_oracle(h: &HessenbergFunction, d: usize) -> usize {
    betti(h).iter().take(d + 1).sum()
}

/// A basis of graph cohomology in one degree, as coordinate vectors.
#[derive(Debug, Clone)]
pub struct KernelBasis {
    pub n: usize,
    /// Number of polynomial variables used for values.
    pub variables: usize,
    pub degree: u32,
    pub vectors: Vec<SparseVec>,
}

impl KernelBasis {
    pub fn dimension(&self) -> usize {
        self.vectors.len()
    }

    /// The basis as cochains; only for the full variable set.
    pub fn cochains(&self) -> Vec<Cochain> {
        assert_eq!(self.variables, self.n, "cochains need all variables");
        self.vectors.iter().map(|v| Cochain::from_sparse(self.n, self.degree, v)).collect()
    }

    /// Values at `point`, one vector in `Q^{n!}` per basis element.
    pub fn evaluate(&self, point: &[Rat]) -> Vec<SparseVec> {
        assert_eq!(point.len(), self.variables, "evaluation point length");
        let m = monomial_count(self.variables, self.degree);
        let monomial_values: Vec<Rat> = monomials_of_degree(self.variables, self.degree)
            .iter()
            .map(|e| MultiPoly::from_terms(self.variables, [(e.clone(), Rat::one())]).eval(point))
            .collect();
        self.vectors
            .par_iter()
            .map(|v| SparseVec::from_pairs(v.entries().iter().map(|(col, c)| (col / m, c * &monomial_values[col % m]))))
            .collect()
    }
}

/// Graph cohomology of degree `d` as the solution space of the edge conditions.
pub fn equivariant_kernel_basis(h: &HessenbergFunction, d: u32, limits: &Limits) -> Result<KernelBasis, CohomError> {
    kernel_basis(h, d, h.n(), limits)
}

/// The same with `t_n = 0`: values in `Q[t_1..t_{n-1}]`. Since graph
/// cohomology is free over `Q[t_n]` this is the quotient by `t_n`.
pub fn reduced_kernel_basis(h: &HessenbergFunction, d: u32, limits: &Limits) -> Result<KernelBasis, CohomError> {
    kernel_basis(h, d, h.n() - 1, limits)
}

fn kernel_basis(h: &HessenbergFunction, d: u32, variables: usize, limits: &Limits) -> Result<KernelBasis, CohomError> {
    if !h.is_connected() {
        return Err(CohomError::Disconnected(h.to_string()));
    }
    let n = h.n();
    let m = monomial_count(variables, d);
    let unknowns = factorial(n) * m;
    limits.gate("kernel unknowns", unknowns, limits.max_kernel_unknowns)?;
    let graph = build_graph_with_limit(h, limits.max_graph_n)?;
    let monomials = monomials_of_degree(variables, d);
    // For each label, group monomials by their image under the substitution.
    let mut groups_by_label: BTreeMap<(usize, usize), Vec<Vec<usize>>> = BTreeMap::new();
    for e in graph.edges() {
        groups_by_label.entry(e.label).or_insert_with(|| {
            let (a, b) = e.label;
            let mut groups: BTreeMap<Exponents, Vec<usize>> = BTreeMap::new();
            for (i, mono) in monomials.iter().enumerate() {
                let image = if b <= variables {
                    let mut img = mono.clone();
                    img[b - 1] += img[a - 1];
                    img[a - 1] = 0;
                    Some(img)
                } else if mono[a - 1] == 0 {
                    Some(mono.clone())
                } else {
                    None
                };
                if let Some(img) = image {
                    groups.entry(img).or_default().push(i);
                }
            }
            groups.into_values().collect()
        });
    }
    let mut constraints = EchelonBasis::new();
    for e in graph.edges() {
        for group in &groups_by_label[&e.label] {
            let row = SparseVec::from_pairs(
                group.iter().flat_map(|&i| [(e.u * m + i, Rat::one()), (e.v * m + i, -Rat::one())]),
            );
            constraints.insert(&row);
        }
    }
    Ok(KernelBasis { n, variables, degree: d, vectors: constraints.nullspace(unknowns) })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeRow {
    pub d: usize,
    pub span: usize,
    pub oracle: usize,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedReport {
    pub h: String,
    pub dim: usize,
    pub model: SpanModel,
    pub degrees: Vec<DegreeRow>,
    pub generated_in_degree_2: bool,
    /// Polynomial degree `d` of the first rank deficit.
    pub first_failure: Option<usize>,
    /// The same in cohomological degree, `2d`.
    pub first_failure_cohomological: Option<usize>,
}

impl GradedReport {
    fn from_rows(h: &HessenbergFunction, model: SpanModel, degrees: Vec<DegreeRow>) -> Self {
        let dim = h.dimension();
        let first_failure = degrees.iter().find(|r| !r.ok).map(|r| r.d);
        let generated = degrees.iter().filter(|r| r.d <= dim).all(|r| r.ok);
        Self {
            h: h.to_string(),
            dim,
            model,
            degrees,
            generated_in_degree_2: generated,
            first_failure,
            first_failure_cohomological: first_failure.map(|d| 2 * d),
        }
    }
}

/// The evaluation point `(1, 2, ..., n-1, 0)` of the line model.
pub fn line_point(n: usize) -> Vec<Rat> {
    (1..=n).map(|i| Rat::from_int(if i == n { 0 } else { i as i64 })).collect()
}

fn pointwise(a: &SparseVec, b: &SparseVec) -> SparseVec {
    let (mut i, mut j) = (0, 0);
    let (x, y) = (a.entries(), b.entries());
    let mut out = Vec::new();
    while i < x.len() && j < y.len() {
        match x[i].0.cmp(&y[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push((x[i].0, &x[i].1 * &y[j].1));
                i += 1;
                j += 1;
            }
        }
    }
    SparseVec::from_pairs(out)
}

/// Spans of products in the line model, degrees `0..=d_max`, together with the
/// bases reached in each degree.
fn line_spans(
    h: &HessenbergFunction,
    d_max: usize,
    stop_at: impl Fn(usize) -> usize,
) -> Result<Vec<EchelonBasis>, CohomError> {
    let n = h.n();
    let point = line_point(n);
    let one = SparseVec::from_dense(&vec![Rat::one(); factorial(n)]);
    let mut gens = EchelonBasis::new();
    gens.insert(&one);
    let mut gen_vectors = Vec::new();
    for (g, c) in degree2_spanning_set(h)? {
        if matches!(g, Generator::Constant(_)) {
            continue;
        }
        let v = SparseVec::from_dense(&c.evaluate(&point));
        if gens.insert(&v) {
            gen_vectors.push(v);
        }
    }
    let mut bases = Vec::with_capacity(d_max + 1);
    let mut first = EchelonBasis::new();
    first.insert(&one);
    bases.push(first);
    for d in 1..=d_max {
        let target = stop_at(d);
        let prev: Vec<SparseVec> = bases[d - 1].rows().cloned().collect();
        let mut basis = bases[d - 1].clone();
        'outer: for g in &gen_vectors {
            if basis.rank() >= target {
                break;
            }
            let products: Vec<SparseVec> = prev.par_iter().map(|v| pointwise(g, v)).collect();
            for p in &products {
                basis.insert(p);
                if basis.rank() >= target {
                    break 'outer;
                }
            }
        }
        bases.push(basis);
    }
    Ok(bases)
}

fn pointwise_mod(a: &[(usize, u64)], b: &[(usize, u64)], p: u64) -> Vec<(usize, u64)> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push((a[i].0, mulmod(a[i].1, b[j].1, p)));
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Ranks of the line-model spans over `F_p`. Classes have integer values at
/// the line point, so reduction never divides by `p`.
fn line_span_ranks_modular(
    h: &HessenbergFunction,
    d_max: usize,
    stop_at: impl Fn(usize) -> usize,
) -> Result<Vec<usize>, CohomError> {
    let n = h.n();
    let p = MERSENNE_61;
    let point = line_point(n);
    let one: Vec<(usize, u64)> = (0..factorial(n)).map(|i| (i, 1)).collect();
    let mut gens = ModularEchelon::new(p);
    gens.insert(one.clone());
    let mut gen_vectors = Vec::new();
    for (g, c) in degree2_spanning_set(h)? {
        if matches!(g, Generator::Constant(_)) {
            continue;
        }
        let v = SparseVec::from_dense(&c.evaluate(&point));
        let residues: Vec<(usize, u64)> = v
            .entries()
            .iter()
            .map(|(i, x)| (*i, x.mod_prime(p).expect("integer values at the line point")))
            .filter(|(_, x)| *x != 0)
            .collect();
        if gens.insert(residues.clone()) {
            gen_vectors.push(residues);
        }
    }
    let mut first = ModularEchelon::new(p);
    first.insert(one);
    let mut ranks = vec![1];
    let mut previous = first;
    for d in 1..=d_max {
        let target = stop_at(d);
        let prev: Vec<Vec<(usize, u64)>> = previous.rows().map(|r| r.to_vec()).collect();
        let mut basis = previous.clone();
        'outer: for g in &gen_vectors {
            if basis.rank() >= target {
                break;
            }
            let products: Vec<Vec<(usize, u64)>> = prev.par_iter().map(|v| pointwise_mod(g, v, p)).collect();
            for v in products {
                basis.insert(v);
                if basis.rank() >= target {
                    break 'outer;
                }
            }
        }
        ranks.push(basis.rank());
        previous = basis;
    }
    Ok(ranks)
}

/// Spans of products in the full model: `B_0 = {1}` and `B_d` the span of
/// `g * v` for `g` in the spanning set and `v` in `B_{d-1}`.
pub fn product_span_ranks(h: &HessenbergFunction, d_max: usize, limits: &Limits) -> Result<Vec<usize>, CohomError> {
    Ok(full_spans(h, d_max, limits, |d| equivariant_rank_oracle(h, d))?.iter().map(|b| b.rank()).collect())
}

fn full_spans(
    h: &HessenbergFunction,
    d_max: usize,
    limits: &Limits,
    stop_at: impl Fn(usize) -> usize,
) -> Result<Vec<EchelonBasis>, CohomError> {
    let n = h.n();
    limits.gate("graph size", n, limits.max_graph_n)?;
    let columns = factorial(n) * monomial_count(n, d_max as u32);
    limits.gate("full-model columns", columns, limits.max_full_columns)?;
    let mut gens = EchelonBasis::new();
    let mut gen_cochains = Vec::new();
    for (_, c) in degree2_spanning_set(h)? {
        if gens.insert(&c.to_sparse()) {
            gen_cochains.push(c);
        }
    }
    let mut first = EchelonBasis::new();
    first.insert(&Cochain::one(n).to_sparse());
    let mut bases = vec![first];
    for d in 1..=d_max {
        let target = stop_at(d);
        let prev: Vec<Cochain> = bases[d - 1].rows().map(|v| Cochain::from_sparse(n, d as u32 - 1, v)).collect();
        let mut basis = EchelonBasis::new();
        'outer: for g in &gen_cochains {
            let products: Vec<SparseVec> = prev.par_iter().map(|v| (g * v).to_sparse()).collect();
            for p in &products {
                basis.insert(p);
                if basis.rank() >= target {
                    break 'outer;
                }
            }
        }
        bases.push(basis);
    }
    Ok(bases)
}

/// Decides whether ordinary cohomology is generated in degree two by comparing
/// product spans with the free-module ranks in every degree up to the complex
/// dimension, plus one degree beyond it as a consistency check.
pub fn is_degree2_generated(
    h: &HessenbergFunction,
    model: SpanModel,
    limits: &Limits,
) -> Result<GradedReport, CohomError> {
    if !h.is_connected() {
        return Err(CohomError::Disconnected(h.to_string()));
    }
    let dim = h.dimension();
    let rows = match model {
        SpanModel::Line => {
            limits.gate("graph size", h.n(), limits.max_graph_n)?;
            let bases = line_spans(h, dim + 1, |d| line_rank_oracle(h, d))?;
            bases
                .iter()
                .enumerate()
                .map(|(d, b)| {
                    let oracle = line_rank_oracle(h, d);
                    DegreeRow { d, span: b.rank(), oracle, ok: b.rank() == oracle }
                })
                .collect()
        }
        SpanModel::Modular => {
            limits.gate("graph size", h.n(), limits.max_graph_n)?;
            let mut ranks = line_span_ranks_modular(h, dim + 1, |d| line_rank_oracle(h, d))?;
            if ranks.iter().enumerate().any(|(d, &r)| r < line_rank_oracle(h, d)) {
                ranks = line_spans(h, dim + 1, |d| line_rank_oracle(h, d))?.iter().map(|b| b.rank()).collect();
            }
            ranks
                .into_iter()
                .enumerate()
                .map(|(d, span)| {
                    let oracle = line_rank_oracle(h, d);
                    DegreeRow { d, span, oracle, ok: span == oracle }
                })
                .collect()
        }
        SpanModel::Full => {
            let d_max = if factorial(h.n()) * monomial_count(h.n(), dim as u32 + 1) <= limits.max_full_columns {
                dim + 1
            } else {
                dim
            };
            let ranks = product_span_ranks(h, d_max, limits)?;
            ranks
                .into_iter()
                .enumerate()
                .map(|(d, span)| {
                    let oracle = equivariant_rank_oracle(h, d);
                    DegreeRow { d, span, oracle, ok: span == oracle }
                })
                .collect()
        }
    };
    Ok(GradedReport::from_rows(h, model, rows))
}

/// Hilbert series of the subring of ordinary cohomology generated in degree
/// two, computed in the line model.
///
/// The coefficient at `q^d` is `dim(S_d + M_{d-1}) - dim M_{d-1}`, where `S_d`
/// is the product span and `M_{d-1}` the image of all classes of degree
/// `< d`. Where generation holds in degree `d-1`, `M_{d-1} = S_{d-1}`;
/// otherwise `M_{d-1}` comes from graph-cohomology kernels with `t_n = 0`.
pub fn subring_hilbert(h: &HessenbergFunction, limits: &Limits) -> Result<QPoly, CohomError> {
    if !h.is_connected() {
        return Err(CohomError::Disconnected(h.to_string()));
    }
    let n = h.n();
    limits.gate("subring computation size", n, limits.max_subring_n)?;
    limits.gate("graph size", n, limits.max_graph_n)?;
    let dim = h.dimension();
    let b = betti(h);
    let oracle = |d: usize| b.iter().take(d + 1).sum::<usize>();
    let spans = line_spans(h, dim, oracle)?;
    let point = line_point(n);
    let mut kernel_image = EchelonBasis::new();
    let mut kernel_degree = 0usize;
    let mut coeffs = vec![1usize];
    for d in 1..=dim {
        let lower = if spans[d - 1].rank() == oracle(d - 1) {
            &spans[d - 1]
        } else {
            while kernel_degree < d {
                let kernel = reduced_kernel_basis(h, kernel_degree as u32, limits)?;
                for v in kernel.evaluate(&point[..n - 1]) {
                    kernel_image.insert(&v);
                }
                kernel_degree += 1;
            }
            if kernel_image.rank() != oracle(d - 1) {
                return Err(CohomError::InvariantViolation(format!(
                    "classes of degree < {d} span {} dimensions at the line point, expected {}",
                    kernel_image.rank(),
                    oracle(d - 1)
                )));
            }
            &kernel_image
        };
        let mut total = lower.clone();
        for row in spans[d].rows() {
            total.insert(row);
        }
        coeffs.push(total.rank() - lower.rank());
    }
    Ok(QPoly::from_coeffs(coeffs.into_iter().map(|c| c as u64)))
}

/// The same series in the full model: the coefficient at `q^d` is
/// `rank(P_d + I_d) - rank(I_d)` with `P_d` the product span and
/// `I_d = sum_i t_i K_{d-1}` for the kernel basis `K_{d-1}`.
pub fn subring_hilbert_full(h: &HessenbergFunction, limits: &Limits) -> Result<QPoly, CohomError> {
    if !h.is_connected() {
        return Err(CohomError::Disconnected(h.to_string()));
    }
    let n = h.n();
    let dim = h.dimension();
    let b = betti(h);
    let spans = full_spans(h, dim, limits, |d| oracle_from_betti(&b, n, d))?;
    let mut coeffs = vec![1usize];
    for (d, span) in spans.iter().enumerate().skip(1) {
        let kernel = equivariant_kernel_basis(h, d as u32 - 1, limits)?;
        let mut ideal = EchelonBasis::new();
        for k in kernel.cochains() {
            for i in 1..=n {
                let ti = Cochain::constant(n, &MultiPoly::var(n, i));
                ideal.insert(&(&ti * &k).to_sparse());
            }
        }
        let mut total = ideal.clone();
        for row in span.rows() {
            total.insert(row);
        }
        coeffs.push(total.rank() - ideal.rank());
    }
    Ok(QPoly::from_coeffs(coeffs.into_iter().map(|c| c as u64)))
}

/// Generators `f_{h(j),j} = sum_{k<=j} x_k prod_{l=j+1}^{h(j)} (x_k - x_l)`
/// of the ideal presenting the invariant subring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentationIdeal {
    pub generators: Vec<MultiPoly>,
}

impl PresentationIdeal {
    pub fn new(h: &HessenbergFunction) -> Self {
        let n = h.n();
        let x = |k: usize| MultiPoly::var(n, k);
        let generators = (1..=n)
            .map(|j| {
                (1..=j).fold(MultiPoly::zero(n), |acc, k| {
                    let product = (j + 1..=h.get(j)).fold(x(k), |p, l| &p * &MultiPoly::difference(n, k, l));
                    &acc + &product
                })
            })
            .collect();
        Self { generators }
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.generators.iter().map(|g| g.total_degree().unwrap_or(0)).collect()
    }
}

/// Hilbert series of `Q[x_1..x_n] / (f_{h(1),1}, ..., f_{h(n),n})` through
/// degree `d_max`.
pub fn invariant_quotient_hilbert(h: &HessenbergFunction, d_max: usize, limits: &Limits) -> Result<QPoly, CohomError> {
    if !h.is_connected() {
        return Err(CohomError::Disconnected(h.to_string()));
    }
    let n = h.n();
    limits.gate("quotient columns", monomial_count(n, d_max as u32), limits.max_kernel_unknowns)?;
    let ideal = PresentationIdeal::new(h);
    let degrees = ideal.degrees();
    let coeffs: Vec<u64> = (0..=d_max as u32)
        .into_par_iter()
        .map(|d| {
            let mut basis = EchelonBasis::new();
            for (f, &df) in ideal.generators.iter().zip(&degrees) {
                if df > d {
                    continue;
                }
                for m in monomials_of_degree(n, d - df) {
                    let shifted = &MultiPoly::from_terms(n, [(m, Rat::one())]) * f;
                    basis.insert(&SparseVec::from_pairs(shifted.coordinates(d)));
                }
            }
            (monomial_count(n, d) - basis.rank()) as u64
        })
        .collect();
    Ok(QPoly::from_coeffs(coeffs))
}
