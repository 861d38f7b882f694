//! The checks run by `verify -n N`. Each check is gated by a size cap so the
//! default run stays quick; `--override-gate` lifts the caps.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use hessgkm::classes::{verify_linear_relations, verify_product_relations};
use hessgkm::cohomology::{
    degree2_spanning_set, equivariant_kernel_basis, equivariant_rank_oracle, invariant_quotient_hilbert,
    is_degree2_generated, spanning_set_is_gkm, subring_hilbert, Limits, SpanModel,
};
use hessgkm::gkm::{build_graph_with_limit, dot_action, fixed_level_components, is_gkm_class, phi_r_check};
use hessgkm::hessfn::{enumerate, HessenbergFunction};
use hessgkm::perm::SymmetricGroup;
use hessgkm::qseries::{
    hilb_invariants, lollipop_pn, poincare_direct, poincare_h1_closed, poincare_recursive, q_fact, q_int, q_n,
    subring_upper_bound, QPoly,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    /// `None` when the check does not apply at this size or is above its cap.
    pub passed: Option<bool>,
    pub detail: String,
    pub millis: u128,
}

type Outcome = Result<String, String>;

struct Runner {
    n: usize,
    ungated: bool,
    results: Vec<CheckResult>,
}

impl Runner {
    fn run(&mut self, name: &str, applies: bool, cap: usize, f: impl FnOnce() -> Outcome) {
        let start = Instant::now();
        let (passed, detail) = if !applies {
            (None, "not applicable at this size".to_string())
        } else if self.n > cap && !self.ungated {
            (None, format!("skipped above n = {cap}"))
        } else {
            match f() {
                Ok(detail) => (Some(true), detail),
                Err(detail) => (Some(false), detail),
            }
        };
        self.results.push(CheckResult { name: name.to_string(), passed, detail, millis: start.elapsed().as_millis() });
    }
}

fn connected(n: usize) -> Vec<HessenbergFunction> {
    enumerate(n, true)
}

fn ensure(cond: bool, failure: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(failure())
    }
}

pub fn verify_size(n: usize, limits: &Limits) -> Vec<CheckResult> {
    let ungated = limits.max_graph_n == usize::MAX;
    let mut r = Runner { n, ungated, results: Vec::new() };

    r.run("classification", n >= 2, 5, || {
        let mut generated = 0;
        for h in connected(n) {
            let report = is_degree2_generated(&h, SpanModel::Line, limits).map_err(|e| e.to_string())?;
            ensure(report.generated_in_degree_2 == h.lollipop_form().is_some(), || format!("{h}: verdict differs"))?;
            generated += usize::from(report.generated_in_degree_2);
        }
        Ok(format!("{} connected, {generated} generated in degree two", connected(n).len()))
    });

    r.run("poincare_methods", n >= 1, 6, || {
        let all = enumerate(n, false);
        for h in &all {
            let direct = poincare_direct(h);
            ensure(direct == poincare_recursive(h), || format!("{h}: direct and recursive differ"))?;
            ensure(direct.eval_at_one() == (1..=n as u64).product::<u64>().into(), || format!("{h}: value at 1"))?;
            ensure(direct.is_palindromic(), || format!("{h}: not palindromic"))?;
        }
        for h1 in 2..=n {
            let h = HessenbergFunction::with_first(n, h1).map_err(|e| e.to_string())?;
            ensure(poincare_direct(&h) == poincare_h1_closed(n, h1), || format!("{h}: closed form differs"))?;
        }
        Ok(format!("{} functions", all.len()))
    });

    r.run("lollipop_family_polynomial", (4..=8).contains(&n), 8, || {
        let pn = lollipop_pn(n);
        if n == 4 {
            ensure(pn == QPoly::from_coeffs([1u32, 11, 11, 1]), || format!("P_4 = {pn}"))?;
            let q4 = q_n(4);
            ensure(q4 == QPoly::from_coeffs([1u32, 11, 20, 12]), || format!("Q_4 = {q4}"))?;
        }
        ensure(pn.truncate(n - 2) == q_n(n).truncate(n - 2), || "P_n and Q_n differ below q^(n-2)".to_string())?;
        if n <= 7 {
            let h = HessenbergFunction::lollipop_p(n).map_err(|e| e.to_string())?;
            ensure(pn == poincare_direct(&h), || "recurrence differs from direct count".to_string())?;
        }
        Ok(format!("P_{n} = {pn}"))
    });

    r.run("deficit", n == 5, 5, || {
        let h = HessenbergFunction::lollipop_p(n).map_err(|e| e.to_string())?;
        let sub = subring_hilbert(&h, limits).map_err(|e| e.to_string())?;
        let bound = subring_upper_bound(n).coeff(2);
        let b4 = poincare_direct(&h).coeff(2);
        let c = sub.coeff(2);
        ensure(c <= bound, || format!("coefficient {c} above {bound}"))?;
        ensure(&b4 - &c >= 5.into(), || format!("deficit {} below 5", &b4 - &c))?;
        let report = is_degree2_generated(&h, SpanModel::Line, limits).map_err(|e| e.to_string())?;
        ensure(report.first_failure_cohomological == Some(4), || "first failure not in degree 4".to_string())?;
        Ok(format!("subring {sub}, b_4 = {b4}, coefficient {c} <= {bound}"))
    });

    r.run("linear_relations", n >= 2, 7, || {
        let mut identities = 0;
        for h in connected(n) {
            let report = verify_linear_relations(&h).map_err(|e| format!("{h}: {} at {}", e.identity, e.witness))?;
            identities += report.identities.len();
        }
        Ok(format!("{identities} identities"))
    });

    r.run("product_relations", n >= 4, 6, || {
        let report = verify_product_relations(n).map_err(|e| format!("{} at {}", e.identity, e.witness))?;
        Ok(format!("{} identities, {} comparisons", report.identities.len(), report.comparisons))
    });

    r.run("spanning_set_gkm", n >= 1, 5, || {
        for h in connected(n) {
            ensure(spanning_set_is_gkm(&h, limits).map_err(|e| e.to_string())?, || format!("{h}"))?;
        }
        Ok(format!("{} functions", connected(n).len()))
    });

    r.run("small_graphs", n == 3, 3, || {
        let g = build_graph_with_limit(&"2,3,3".parse().expect("valid"), 3).map_err(|e| e.to_string())?;
        ensure(g.num_edges() == 6 && g.degrees().values().all(|&d| d == 2) && g.components().len() == 1, || {
            "(2,3,3) is not a 6-cycle".to_string()
        })?;
        let g = build_graph_with_limit(&"3,3,3".parse().expect("valid"), 3).map_err(|e| e.to_string())?;
        ensure(g.num_edges() == 9 && g.degrees().values().all(|&d| d == 3), || "(3,3,3) is not 3-regular".to_string())?;
        Ok("6-cycle and 3-regular graph".to_string())
    });

    r.run("dot_action_closure", n >= 1, 4, || {
        let group = SymmetricGroup::new(n);
        for h in connected(n) {
            let graph = build_graph_with_limit(&h, limits.max_graph_n).map_err(|e| e.to_string())?;
            for (g, c) in degree2_spanning_set(&h).map_err(|e| e.to_string())? {
                for sigma in group.elements() {
                    ensure(is_gkm_class(&graph, &dot_action(sigma, &c)), || format!("{h}: {sigma} . {g}"))?;
                }
            }
        }
        Ok(format!("{} permutations", group.order()))
    });

    r.run("phi_isomorphism", n >= 1, 4, || {
        let mut count = 0;
        for h in connected(n) {
            for level in 1..=n {
                for comp in fixed_level_components(&h, level).map_err(|e| e.to_string())? {
                    ensure(phi_r_check(&h, level, &comp).map_err(|e| e.to_string())?, || format!("{h} r = {level}"))?;
                    count += 1;
                }
            }
        }
        Ok(format!("{count} components"))
    });

    r.run("kernel_ranks", n >= 1, 4, || {
        for h in connected(n) {
            for d in 0..=h.dimension() {
                let k = equivariant_kernel_basis(&h, d as u32, limits).map_err(|e| e.to_string())?;
                let oracle = equivariant_rank_oracle(&h, d);
                ensure(k.dimension() == oracle, || format!("{h} d = {d}: {} vs {oracle}", k.dimension()))?;
            }
        }
        Ok(format!("{} functions", connected(n).len()))
    });

    r.run("invariant_quotient", n >= 1, 5, || {
        for h in connected(n) {
            let q = invariant_quotient_hilbert(&h, h.dimension(), limits).map_err(|e| e.to_string())?;
            ensure(q == hilb_invariants(&h), || format!("{h}: {q}"))?;
        }
        if n >= 4 {
            let h = HessenbergFunction::lollipop_p(n).map_err(|e| e.to_string())?;
            let expected = &q_int(2).pow(2) * &q_fact(n - 2);
            ensure(hilb_invariants(&h) == expected, || format!("{h}: not (1+q)^2 [n-2]!"))?;
        }
        Ok(format!("{} functions", connected(n).len()))
    });

    r.run("combinatorial_closure", n >= 2, 8, || {
        for h in connected(n) {
            ensure(h.lollipop_form().is_some() != h.has_forbidden_minor(), || format!("{h}: minor test"))?;
        }
        for h in enumerate(n, false) {
            ensure(h.flip().flip() == h, || format!("{h}: flip is not an involution"))?;
            if n <= 7 {
                ensure(poincare_direct(&h.flip()) == poincare_direct(&h), || format!("{h}: flip changes Poincaré"))?;
            }
        }
        Ok(format!("{} functions", enumerate(n, false).len()))
    });

    r.results
}
