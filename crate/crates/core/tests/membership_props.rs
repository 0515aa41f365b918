mod common;

use common::{as_rat, box_points};
use latmem::exact::{int, rat, to_rat_vec, IntMatrix};
use latmem::geometry::{AffineSubspace, ConvexBody, Hyperplane, LpBody, Polytope};
use latmem::lattice::LatticeBasis;
use latmem::membership::{
    build_tau, lmp_solve_with, membership, MembershipConfig, MembershipInstance,
};
use latmem::oracle::oracle_lmp;
use latmem::{Error, Integer, RatMatrix, Rational};
use num_traits::Zero;
use proptest::prelude::*;

fn rational(bound: i64, den: i64) -> impl Strategy<Value = Rational> {
    (1i64..=den).prop_flat_map(move |d| (-bound * d..=bound * d).prop_map(move |n| rat(n, d)))
}

fn subspace(n: usize) -> impl Strategy<Value = AffineSubspace> {
    prop::collection::vec((prop::collection::vec(-3i64..=3, n), -4i64..=4), 0..n).prop_map(
        move |hs| {
            let planes: Vec<Hyperplane> = hs
                .into_iter()
                .filter(|(d, _)| d.iter().any(|&x| x != 0))
                .map(|(d, k)| Hyperplane::new(d.iter().map(|&x| int(x)).collect(), int(k)))
                .collect();
            AffineSubspace::new(planes)
        },
    )
}

fn lattice(n: usize) -> impl Strategy<Value = LatticeBasis> {
    prop::collection::vec(-3i64..=3, n * n).prop_filter_map("singular", move |v| {
        let rows: Vec<Vec<Integer>> = v
            .chunks(n)
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect();
        LatticeBasis::from_int(&IntMatrix::from_rows(&rows)).ok()
    })
}

fn body(n: usize) -> impl Strategy<Value = ConvexBody> {
    prop_oneof![
        (
            2u32..=4,
            prop::collection::vec(rational(4, 4), n),
            (1i64..=12, 1i64..=4)
        )
            .prop_map(|(p, t, (a, d))| { ConvexBody::Lp(LpBody::ball(p, t, &rat(a, d)).unwrap()) }),
        (
            prop::collection::vec(rational(4, 3), n),
            prop::collection::vec(rational(3, 3), n)
        )
            .prop_map(move |(c, w)| {
                // box around c with half-widths |w|
                let mut rows = Vec::new();
                let mut beta = Vec::new();
                for i in 0..n {
                    let mut e = vec![Rational::zero(); n];
                    e[i] = rat(1, 1);
                    rows.push(e.clone());
                    beta.push(&c[i] + w[i].clone().max(-w[i].clone()));
                    rows.push(e.iter().map(|x| -x).collect());
                    beta.push(-&c[i] + w[i].clone().max(-w[i].clone()));
                }
                ConvexBody::Polytope(
                    Polytope::from_rational(&RatMatrix::from_rows(&rows), &beta).unwrap(),
                )
            }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn tau_round_trips_integer_points(h in subspace(3)) {
        let n = 3;
        let tau = match build_tau(&h, n) {
            Ok(t) => t,
            Err(Error::DependentNormals) => return Ok(()),
            Err(Error::NoIntegerPointInSubspace) => {
                for z in box_points(n, 4) {
                    prop_assert!(!h.contains(&as_rat(&z)));
                }
                return Ok(());
            }
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        prop_assert_eq!(tau.m, n - h.len());
        prop_assert_eq!(tau.vbar.mul(&tau.vbar_inv), IntMatrix::identity(n));
        for z in box_points(n, 3) {
            let zr = as_rat(&z);
            let y = tau.apply(&zr);
            prop_assert!(y.iter().all(|c| c.is_integer()));
            prop_assert_eq!(h.contains(&zr), y[tau.m..].iter().all(Zero::is_zero));
            prop_assert_eq!(tau.invert(&y), zr);
        }
        // coordinate points pull back into H
        for y in box_points(tau.m, 2) {
            let mut full = to_rat_vec(&y);
            full.resize(n, Rational::zero());
            prop_assert!(h.contains(&tau.invert(&full)));
        }
    }

    #[test]
    fn membership_matches_enumeration(
        (b, h) in (1usize..=3).prop_flat_map(|n| (body(n), subspace(n)))
    ) {
        let n = b.dim();
        let cfg = MembershipConfig::default();
        let inst = MembershipInstance { body: b.clone(), subspace: h.clone() };
        let expect = box_points(n, 20)
            .into_iter()
            .any(|z| { let zr = as_rat(&z); b.contains(&zr) && h.contains(&zr) });
        match membership(&inst, &cfg) {
            Ok(got) => prop_assert_eq!(got, expect),
            Err(Error::DependentNormals) => prop_assert!(h.normal_matrix(n).to_rat().rank() < h.len()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }

    #[test]
    fn lmp_matches_oracle((b, l) in (1usize..=3).prop_flat_map(|n| (body(n), lattice(n)))) {
        let expect = oracle_lmp(&b, &l).unwrap();
        let cfg = MembershipConfig::default();
        prop_assert_eq!(lmp_solve_with(&b, &l, &cfg).unwrap().0, expect);
        let plain = MembershipConfig { no_replacement: true, ..cfg };
        prop_assert_eq!(lmp_solve_with(&b, &l, &plain).unwrap().0, expect);
    }
}

#[test]
fn dimension_limit_is_enforced() {
    let b = ConvexBody::Lp(LpBody::ball(2, vec![rat(0, 1); 3], &rat(1, 1)).unwrap());
    let l = LatticeBasis::from_int(&IntMatrix::identity(3)).unwrap();
    let cfg = MembershipConfig {
        max_dimension: 2,
        ..Default::default()
    };
    assert_eq!(
        lmp_solve_with(&b, &l, &cfg).map(|r| r.0),
        Err(Error::DimensionTooLarge(3, 2))
    );
}
