use latmem::cvp::{cvp_decision, cvp_optimize, cvp_search, enumerability, NormSpec};
use latmem::exact::{int, rat, vec_sub, IntMatrix};
use latmem::lattice::LatticeBasis;
use latmem::oracle::oracle_cvp;
use latmem::{Integer, Rational};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn rational(bound: i64, den: i64) -> impl Strategy<Value = Rational> {
    (1i64..=den).prop_flat_map(move |d| (-bound * d..=bound * d).prop_map(move |n| rat(n, d)))
}

/// Full-rank n × r integer basis.
fn lattice(n: usize, r: usize) -> impl Strategy<Value = LatticeBasis> {
    prop::collection::vec(-4i64..=4, n * r).prop_filter_map("rank deficient", move |v| {
        let cols: Vec<Vec<Integer>> = v
            .chunks(n)
            .map(|c| c.iter().map(|&x| int(x)).collect())
            .collect();
        LatticeBasis::from_int(&IntMatrix::from_cols(&cols)).ok()
    })
}

fn norm(n: usize) -> impl Strategy<Value = NormSpec> {
    prop_oneof![
        (1u32..=3).prop_map(NormSpec::Lp),
        Just(NormSpec::Infinity),
        prop::collection::vec(1i64..=3, n).prop_map(move |b| {
            // scaled box plus the all-ones diagonal
            let mut rows: Vec<Vec<Integer>> = (0..n)
                .map(|i| (0..n).map(|j| int((i == j) as i64)).collect())
                .collect();
            let mut beta: Vec<Integer> = b.iter().map(|&x| int(x)).collect();
            rows.push(vec![Integer::one(); n]);
            beta.push(int(2));
            NormSpec::polyhedral(IntMatrix::from_rows(&rows), beta).unwrap()
        }),
    ]
}

fn instance() -> impl Strategy<Value = (LatticeBasis, Vec<Rational>, NormSpec)> {
    (1usize..=2)
        .prop_flat_map(|n| (1..=n).prop_map(move |r| (n, r)))
        .prop_flat_map(|(n, r)| {
            (
                lattice(n, r),
                prop::collection::vec(rational(5, 3), n),
                norm(n),
            )
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn search_matches_oracle((l, t, norm) in instance()) {
        let got = cvp_search(&l, &t, &norm).unwrap();
        let want = oracle_cvp(&l, &t, &norm).unwrap();
        prop_assert_eq!(&got.distance_pow, &want.distance_pow);
        prop_assert_eq!(&got.closest, &l.matrix().mul_vec(&latmem::exact::to_rat_vec(&got.coeffs)));
        prop_assert_eq!(norm.eval_pow(&vec_sub(&t, &got.closest)), got.distance_pow);
    }

    #[test]
    fn decision_thresholds_at_the_optimum((l, t, norm) in instance()) {
        let mu = cvp_optimize(&l, &t, &norm).unwrap();
        prop_assert_eq!(&mu, &oracle_cvp(&l, &t, &norm).unwrap().distance_pow);
        prop_assert!(cvp_decision(&l, &t, &norm, &mu).unwrap());
        if !mu.is_zero() {
            let below = &mu * rat(99, 100);
            prop_assert!(!cvp_decision(&l, &t, &norm, &below).unwrap());
        }
    }

    #[test]
    fn norms_are_enumerable(norm in (1usize..=3).prop_flat_map(norm), x in prop::collection::vec(-6i64..=6, 3)) {
        let n = match &norm {
            NormSpec::Polyhedral { h, .. } => h.cols(),
            _ => x.len(),
        };
        let x: Vec<Rational> = x[..n].iter().map(|&v| rat(v, 1)).collect();
        let e = enumerability(&norm);
        prop_assert_eq!(e.k, norm.power());
        let scaled = norm.eval_pow(&x) * Rational::from_integer(e.big_k);
        prop_assert!(scaled.is_integer());
    }
}

#[test]
fn l1_counterexample_is_solved_exactly() {
    let l = LatticeBasis::from_int(&IntMatrix::from_cols(&[vec![int(4), int(7)]])).unwrap();
    let r = cvp_search(&l, &[rat(0, 1), rat(5, 1)], &NormSpec::Lp(1)).unwrap();
    assert_eq!(r.coeffs, vec![int(0)]);
    assert_eq!(r.distance_pow, rat(5, 1));
}
