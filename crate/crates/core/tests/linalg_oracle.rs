mod common;

use common::rational_rank;
use hessgkm::linalg::{rank, EchelonBasis, ModularEchelon, SparseVec, MERSENNE_61};
use hessgkm::rational::Rat;
use proptest::prelude::*;

fn arb_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<Rat>>> {
    // Sparse small entries keep the rank interesting instead of always full.
    let entry = prop_oneof![
        6 => Just(Rat::from_int(0)),
        3 => (-4i64..=4, 1i64..=3).prop_map(|(p, q)| Rat::new(p, q)),
    ];
    prop::collection::vec(prop::collection::vec(entry, cols), rows)
}

fn sparse_rows(m: &[Vec<Rat>]) -> Vec<SparseVec> {
    m.iter().map(|r| SparseVec::from_dense(r)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_matches_bareiss(m in arb_matrix(20, 30)) {
        prop_assert_eq!(rank(&sparse_rows(&m)), rational_rank(&m));
    }

    #[test]
    fn modular_rank_matches_exact(m in arb_matrix(12, 16)) {
        let mut modular = ModularEchelon::new(MERSENNE_61);
        for row in sparse_rows(&m) {
            modular.insert_rational(&row);
        }
        prop_assert_eq!(modular.rank(), rational_rank(&m));
    }

    #[test]
    fn nullspace_is_annihilated(m in arb_matrix(8, 12)) {
        let mut basis = EchelonBasis::new();
        for row in sparse_rows(&m) {
            basis.insert(&row);
        }
        let null = basis.nullspace(12);
        prop_assert_eq!(null.len() + basis.rank(), 12);
        for v in &null {
            for row in &m {
                let dot = row.iter().enumerate().fold(Rat::from_int(0), |acc, (j, x)| acc + x * &v.get(j));
                prop_assert_eq!(dot, Rat::from_int(0));
            }
        }
    }

    #[test]
    fn reduce_respects_membership(m in arb_matrix(6, 10), coeffs in prop::collection::vec(-3i64..=3, 6)) {
        let rows = sparse_rows(&m);
        let mut basis = EchelonBasis::new();
        for row in &rows {
            basis.insert(row);
        }
        let combo = rows.iter().zip(&coeffs).fold(SparseVec::new(), |acc, (r, &c)| acc.axpy(&Rat::from_int(c), r));
        prop_assert!(basis.contains(&combo));
        prop_assert!(basis.reduce(&combo).is_zero());
    }
}
