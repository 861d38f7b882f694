//! Explicit degree-two classes `x_k`, `y_{j,k}`, `y*_{i,k}`, `tau_A`, `rho_k`
//! and the identities they satisfy.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::gkm::{dot_action, involution_vee, Cochain};
use crate::hessfn::HessenbergFunction;
use crate::perm::Permutation;
use crate::polyring::MultiPoly;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassSpec {
    X(usize),
    Y(usize, usize),
    YStar(usize, usize),
    Tau(BTreeSet<usize>),
    Rho(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassError {
    #[error("bad parameters for n = {n}: {spec}")]
    BadParameters { n: usize, spec: String },
    #[error("cannot parse class spec {0:?}")]
    Parse(String),
}

/// A violated identity and a vertex where it fails.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error, Serialize, Deserialize)]
#[error("identity `{identity}` fails at w = {witness}")]
pub struct ReportedFailure {
    pub identity: String,
    pub witness: String,
}

/// Identities checked and the number of pointwise comparisons made.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationReport {
    pub identities: Vec<String>,
    pub comparisons: usize,
}

impl ClassSpec {
    fn check(&self, n: usize) -> Result<(), ClassError> {
        let in_range = |k: usize| (1..=n).contains(&k);
        let ok = match self {
            ClassSpec::X(k) => in_range(*k),
            ClassSpec::Y(j, k) => (1..n).contains(j) && in_range(*k),
            ClassSpec::YStar(i, k) => (2..=n).contains(i) && in_range(*k),
            ClassSpec::Tau(a) => !a.is_empty() && a.len() < n && a.iter().all(|&k| in_range(k)),
            ClassSpec::Rho(k) => n >= 2 && in_range(*k),
        };
        if ok {
            Ok(())
        } else {
            Err(ClassError::BadParameters { n, spec: self.to_string() })
        }
    }
}

impl fmt::Display for ClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassSpec::X(k) => write!(f, "x:{k}"),
            ClassSpec::Y(j, k) => write!(f, "y:{j},{k}"),
            ClassSpec::YStar(i, k) => write!(f, "ystar:{i},{k}"),
            ClassSpec::Tau(a) => {
                let parts: Vec<String> = a.iter().map(|k| k.to_string()).collect();
                write!(f, "tau:{{{}}}", parts.join(","))
            }
            ClassSpec::Rho(k) => write!(f, "rho:{k}"),
        }
    }
}

impl FromStr for ClassSpec {
    type Err = ClassError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ClassError::Parse(s.to_string());
        let (kind, args) = s.trim().split_once(':').ok_or_else(err)?;
        let numbers = |text: &str| -> Result<Vec<usize>, ClassError> {
            text.split(',')
                .filter(|p| !p.trim().is_empty())
                .map(|p| p.trim().parse::<usize>().map_err(|_| err()))
                .collect()
        };
        let pair = |text: &str| -> Result<(usize, usize), ClassError> {
            match numbers(text)?.as_slice() {
                [a, b] => Ok((*a, *b)),
                _ => Err(err()),
            }
        };
        let single = |text: &str| -> Result<usize, ClassError> {
            match numbers(text)?.as_slice() {
                [a] => Ok(*a),
                _ => Err(err()),
            }
        };
        match kind.trim() {
            "x" => Ok(ClassSpec::X(single(args)?)),
            "y" => pair(args).map(|(j, k)| ClassSpec::Y(j, k)),
            "ystar" => pair(args).map(|(i, k)| ClassSpec::YStar(i, k)),
            "rho" => Ok(ClassSpec::Rho(single(args)?)),
            "tau" => {
                let inner = args.trim().strip_prefix('{').and_then(|a| a.strip_suffix('}')).ok_or_else(err)?;
                Ok(ClassSpec::Tau(numbers(inner)?.into_iter().collect()))
            }
            _ => Err(err()),
        }
    }
}

impl Serialize for ClassSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ClassSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        String::deserialize(deserializer)?.parse().map_err(serde::de::Error::custom)
    }
}

fn t(n: usize, i: usize) -> MultiPoly {
    MultiPoly::var(n, i)
}

pub fn build_class(n: usize, spec: &ClassSpec) -> Result<Cochain, ClassError> {
    spec.check(n)?;
    let zero = MultiPoly::zero(n);
    let cochain = match spec.clone() {
        ClassSpec::X(k) => Cochain::from_fn(n, 1, |w| t(n, w.at(k))),
        ClassSpec::Y(j, k) => Cochain::from_fn(n, 1, |w| {
            if w.one_line()[..j].contains(&k) {
                MultiPoly::difference(n, k, w.at(j + 1))
            } else {
                zero.clone()
            }
        }),
        ClassSpec::YStar(i, k) => Cochain::from_fn(n, 1, |w| {
            if w.one_line()[i - 1..].contains(&k) {
                MultiPoly::difference(n, k, w.at(i - 1))
            } else {
                zero.clone()
            }
        }),
        ClassSpec::Tau(a) => {
            let size = a.len();
            Cochain::from_fn(n, 1, |w| {
                if w.one_line()[..size].iter().all(|v| a.contains(v)) {
                    MultiPoly::difference(n, w.at(size), w.at(size + 1))
                } else {
                    zero.clone()
                }
            })
        }
        ClassSpec::Rho(k) => Cochain::from_fn(n, 1, |w| {
            if w.at(n) == k {
                MultiPoly::difference(n, w.at(n - 1), w.at(n))
            } else {
                zero.clone()
            }
        }),
    };
    Ok(cochain)
}

/// Side condition under which the class lies in degree-two equivariant
/// cohomology. For `rho_k` the condition is `h(n-2) <= n-1`, the mirror image
/// of `h(1) = 2`.
pub fn membership_conditions(h: &HessenbergFunction, spec: &ClassSpec) -> bool {
    let n = h.n();
    if spec.check(n).is_err() {
        return false;
    }
    let (bottom, ell) = h.bottom_and_ell_sets();
    match spec {
        ClassSpec::X(_) => true,
        ClassSpec::Y(j, _) => bottom.contains(j),
        ClassSpec::YStar(i, _) => h.h_star(*i).is_ok_and(|s| s + 1 == *i),
        ClassSpec::Tau(a) => ell.contains(&a.len()),
        ClassSpec::Rho(_) => h.get(n - 2) < n,
    }
}

fn class(n: usize, spec: ClassSpec) -> Cochain {
    build_class(n, &spec).expect("parameters in range")
}

fn tau_single(n: usize, k: usize) -> Cochain {
    class(n, ClassSpec::Tau([k].into_iter().collect()))
}

struct Checker {
    report: RelationReport,
}

impl Checker {
    fn new() -> Self {
        Self { report: RelationReport::default() }
    }

    fn equal(&mut self, name: String, lhs: &Cochain, rhs: &Cochain) -> Result<(), ReportedFailure> {
        let n = lhs.n();
        for (r, (a, b)) in lhs.values().iter().zip(rhs.values()).enumerate() {
            if a != b {
                return Err(ReportedFailure { identity: name, witness: Permutation::from_lex_rank(n, r).to_string() });
            }
        }
        self.report.comparisons += lhs.values().len();
        self.report.identities.push(name);
        Ok(())
    }

    fn zero(&mut self, name: String, value: &Cochain) -> Result<(), ReportedFailure> {
        let zero = Cochain::zero(value.n(), value.degree());
        self.equal(name, value, &zero)
    }
}

fn sum(n: usize, items: impl IntoIterator<Item = Cochain>) -> Cochain {
    items.into_iter().fold(Cochain::zero(n, 1), |acc, c| &acc + &c)
}

fn subsets_of_size(n: usize, size: usize) -> Vec<BTreeSet<usize>> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize == size {
            out.push((1..=n).filter(|&k| mask & (1 << (k - 1)) != 0).collect());
        }
    }
    out
}

/// Linear identities among the degree-two classes, checked as exact equalities
/// of cochains. All discrepancies with the ordinary-cohomology relations are
/// constants.
pub fn verify_linear_relations(h: &HessenbergFunction) -> Result<RelationReport, ReportedFailure> {
    let n = h.n();
    let mut check = Checker::new();
    let x = |k: usize| class(n, ClassSpec::X(k));
    let total_t = (1..=n).fold(MultiPoly::zero(n), |acc, i| &acc + &t(n, i));
    check.equal("sum_k x_k = t_1 + ... + t_n".into(), &sum(n, (1..=n).map(x)), &Cochain::constant(n, &total_t))?;
    for j in 1..n {
        let lhs = sum(n, (1..=n).map(|k| class(n, ClassSpec::Y(j, k))));
        let rhs = &sum(n, (1..=j).map(x)) - &x(j + 1).scale(&(j as i64).into());
        check.equal(format!("sum_k y_{{{j},k}} = x_1 + ... + x_{j} - {j} x_{}", j + 1), &lhs, &rhs)?;
        if n <= 12 {
            let lhs = sum(n, subsets_of_size(n, j).into_iter().map(|a| class(n, ClassSpec::Tau(a))));
            check.equal(format!("sum_{{|A|={j}}} tau_A = x_{j} - x_{}", j + 1), &lhs, &(&x(j) - &x(j + 1)))?;
        }
    }
    for i in 2..=n {
        let lhs = sum(n, (1..=n).map(|k| class(n, ClassSpec::YStar(i, k))));
        let rhs = &sum(n, (i..=n).map(x)) - &x(i - 1).scale(&((n - i + 1) as i64).into());
        check.equal(format!("sum_k y*_{{{i},k}} = x_{i} + ... + x_{n} - {} x_{}", n - i + 1, i - 1), &lhs, &rhs)?;
    }
    if n >= 3 {
        let rho = |k: usize| class(n, ClassSpec::Rho(k));
        let y = |k: usize| class(n, ClassSpec::Y(n - 2, k));
        check.equal("sum_k rho_k = x_{n-1} - x_n".into(), &sum(n, (1..=n).map(rho)), &(&x(n - 1) - &x(n)))?;
        for k in 1..=n {
            let rhs = &Cochain::constant(n, &t(n, k)) - &x(n - 1);
            check.equal(format!("y_{k} - rho_{k} = t_{k} - x_{{n-1}}"), &(&y(k) - &rho(k)), &rhs)?;
        }
        for k in 1..=n {
            for l in k + 1..=n {
                let lhs = &(&y(k) - &y(l)) - &(&rho(k) - &rho(l));
                let rhs = Cochain::constant(n, &MultiPoly::difference(n, k, l));
                check.equal(format!("(y_{k} - y_{l}) - (rho_{k} - rho_{l}) = t_{k} - t_{l}"), &lhs, &rhs)?;
            }
        }
    }
    Ok(check.report)
}

/// Product identities for `h = (2, n-1, ..., n-1, n, n)`, `tau_k = tau_{{k}}`.
pub fn verify_product_relations(n: usize) -> Result<RelationReport, ReportedFailure> {
    assert!(n >= 4, "need n >= 4");
    let h = HessenbergFunction::lollipop_p(n).expect("n >= 4");
    let graph = crate::gkm::build_graph(&h)
        .map_err(|e| ReportedFailure { identity: "graph construction".into(), witness: e.to_string() })?;
    let mut check = Checker::new();
    let x = |k: usize| class(n, ClassSpec::X(k));
    let taus: Vec<Cochain> = (1..=n).map(|k| tau_single(n, k)).collect();
    let rhos: Vec<Cochain> = (1..=n).map(|k| class(n, ClassSpec::Rho(k))).collect();
    for k in 1..=n {
        for (name, f) in [("tau", &taus[k - 1]), ("rho", &rhos[k - 1])] {
            if let Some(e) = crate::gkm::first_gkm_violation(&graph, f) {
                return Err(ReportedFailure {
                    identity: format!("{name}_{k} satisfies the edge condition"),
                    witness: Permutation::from_lex_rank(n, e.u).to_string(),
                });
            }
        }
    }
    let x12 = &x(1) - &x(2);
    let xlast = &x(n - 1) - &x(n);
    for k in 1..=n {
        for l in 1..=n {
            let (tt, rr) = (&taus[k - 1] * &taus[l - 1], &rhos[k - 1] * &rhos[l - 1]);
            if k == l {
                check.equal(format!("tau_{k}^2 = (x_1 - x_2) tau_{k}"), &tt, &(&x12 * &taus[k - 1]))?;
                check.equal(format!("rho_{k}^2 = (x_{{n-1}} - x_n) rho_{k}"), &rr, &(&xlast * &rhos[k - 1]))?;
                check.zero(format!("tau_{k} rho_{k} = 0"), &(&taus[k - 1] * &rhos[k - 1]))?;
            } else {
                check.zero(format!("tau_{k} tau_{l} = 0"), &tt)?;
                check.zero(format!("rho_{k} rho_{l} = 0"), &rr)?;
            }
        }
        let tk = Cochain::constant(n, &t(n, k));
        check.zero(format!("(x_1 - t_{k}) tau_{k} = 0"), &(&(&x(1) - &tk) * &taus[k - 1]))?;
        check.zero(format!("(x_n - t_{k}) rho_{k} = 0"), &(&(&x(n) - &tk) * &rhos[k - 1]))?;
        check.equal(format!("tau_{k}^vee = -rho_{k}"), &involution_vee(&taus[k - 1]), &-&rhos[k - 1])?;
    }
    for k in 1..=n {
        check.equal(format!("x_{k}^vee = x_{}", n - k + 1), &involution_vee(&x(k)), &x(n - k + 1))?;
    }
    Ok(check.report)
}

/// The image of a class under the dot action, predicted by its parameters.
pub fn dot_action_prediction(sigma: &Permutation, spec: &ClassSpec) -> ClassSpec {
    match spec {
        ClassSpec::X(k) => ClassSpec::X(*k),
        ClassSpec::Y(j, k) => ClassSpec::Y(*j, sigma.at(*k)),
        ClassSpec::YStar(i, k) => ClassSpec::YStar(*i, sigma.at(*k)),
        ClassSpec::Tau(a) => ClassSpec::Tau(a.iter().map(|&k| sigma.at(k)).collect()),
        ClassSpec::Rho(k) => ClassSpec::Rho(sigma.at(*k)),
    }
}

/// Checks `sigma . c = c'` with `c'` from [`dot_action_prediction`].
pub fn dot_action_matches(n: usize, sigma: &Permutation, spec: &ClassSpec) -> Result<bool, ClassError> {
    let lhs = dot_action(sigma, &build_class(n, spec)?);
    Ok(lhs == build_class(n, &dot_action_prediction(sigma, spec))?)
}

/// Every parameter choice for every kind of class at size `n`.
pub fn all_specs(n: usize) -> Vec<ClassSpec> {
    let mut out: Vec<ClassSpec> = (1..=n).map(ClassSpec::X).collect();
    for j in 1..n {
        out.extend((1..=n).map(|k| ClassSpec::Y(j, k)));
    }
    for i in 2..=n {
        out.extend((1..=n).map(|k| ClassSpec::YStar(i, k)));
    }
    for size in 1..n {
        out.extend(subsets_of_size(n, size).into_iter().map(ClassSpec::Tau));
    }
    if n >= 2 {
        out.extend((1..=n).map(ClassSpec::Rho));
    }
    out
}
