mod common;

use common::{box_count, catalan, h};
use hessgkm::hessfn::{enumerate, HessError, HessenbergFunction, LollipopShape};
use proptest::prelude::*;

#[test]
fn flip_is_an_involution_up_to_six() {
    for n in 1..=6 {
        for hh in enumerate(n, false) {
            assert_eq!(hh.flip().flip(), hh, "{hh}");
        }
    }
}

#[test]
fn enumeration_counts_are_catalan() {
    for n in 1..=8 {
        assert_eq!(enumerate(n, false).len() as u64, catalan(n as u64), "n={n}");
    }
    let connected: Vec<String> = enumerate(4, true).iter().map(|x| x.to_string()).collect();
    assert_eq!(connected, ["2,3,4,4", "2,4,4,4", "3,3,4,4", "3,4,4,4", "4,4,4,4"]);
}

#[test]
fn minor_dimension_matches_box_count() {
    for n in 2..=6 {
        for hh in enumerate(n, false) {
            assert_eq!(hh.dimension(), box_count(&hh));
            for j in 1..=n {
                let minor = hh.minor(j).unwrap();
                let above = (1..j).filter(|&i| hh.get(i) >= j).count();
                assert_eq!(box_count(&minor), box_count(&hh) - (hh.get(j) - j) - above, "{hh} j={j}");
            }
        }
    }
}

#[test]
fn lollipop_iff_no_forbidden_minor_up_to_six() {
    // At n = 1 no shape with a < b exists; the classification starts at n = 2.
    for n in 2..=6 {
        for hh in enumerate(n, true) {
            assert_eq!(hh.lollipop_form().is_some(), !hh.has_forbidden_minor(), "{hh}");
        }
    }
}

#[test]
fn lollipop_shapes_reconstruct_their_source() {
    for n in 2..=7 {
        for hh in enumerate(n, true) {
            if let Some(shape) = hh.lollipop_form() {
                assert!(1 <= shape.a && shape.a < shape.b && shape.b <= n);
                assert_eq!(shape.to_function(n).unwrap(), hh);
            }
        }
    }
    let long = h("2,3,4,5,6,7,11,11,11,11,11");
    assert_eq!(long.lollipop_form(), Some(LollipopShape { a: 1, b: 7 }));
}

#[test]
fn decomposition_examples() {
    let (l, r, m) = h("2,2,3").decompose_disconnected().unwrap();
    assert_eq!((l.to_string(), r.to_string(), m), ("2,2".into(), "1".into(), 3));
    let (l, r, m) = h("1,2,3").decompose_disconnected().unwrap();
    assert_eq!((l.to_string(), r.to_string(), m), ("1".into(), "1,2".into(), 3));
    assert_eq!(h("2,3,3").decompose_disconnected(), Err(HessError::AlreadyConnected));
}

fn arb_hess(max_n: usize) -> impl Strategy<Value = HessenbergFunction> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(0usize..=n, n).prop_map(move |raw| {
            let mut values = Vec::with_capacity(n);
            let mut prev = 1;
            for (idx, r) in raw.into_iter().enumerate() {
                let lo = prev.max(idx + 1);
                let v = lo + r % (n - lo + 1);
                values.push(v);
                prev = v;
            }
            HessenbergFunction::new(values).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn minors_are_valid_and_flip_round_trips(hh in arb_hess(9)) {
        prop_assert_eq!(hh.flip().flip(), hh.clone());
        prop_assert_eq!(hh.flip().dimension(), hh.dimension());
        prop_assert_eq!(hh.flip().is_connected(), hh.is_connected());
        if hh.n() >= 2 {
            for j in 1..=hh.n() {
                let minor = hh.minor(j).unwrap();
                prop_assert!(HessenbergFunction::new(minor.values().to_vec()).is_ok());
            }
        }
        let text = hh.to_string();
        prop_assert_eq!(text.parse::<HessenbergFunction>().unwrap(), hh);
    }

    #[test]
    fn h_star_is_minimal(hh in arb_hess(9), i in 1usize..=9) {
        prop_assume!(i <= hh.n());
        let s = hh.h_star(i).unwrap();
        prop_assert!(hh.get(s) >= i);
        prop_assert!((1..s).all(|j| hh.get(j) < i));
    }
}
