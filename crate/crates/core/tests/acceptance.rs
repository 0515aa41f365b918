//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::time::{Duration, Instant};

use latmem::cvp::{cvp_search, NormSpec};
use latmem::diophantine::{replace_hyperplane, Replacement};
use latmem::exact::{bit_length, dot, int, pow_int, rat, rat_int, to_rat_vec, vec_sub};
use latmem::flatness::{flatness_ellipsoid, flatness_lp, flatness_polytope, FlatnessOutcome};
use latmem::geometry::{
    lp_subgradient, AffineSubspace, ConvexBody, Ellipsoid, Hyperplane, LpBody, Polytope,
};
use latmem::lattice::LatticeBasis;
use latmem::membership::{lmp_solve_with, MembershipConfig};
use latmem::oracle::{
    integer_points, oracle_cvp, oracle_lmp, polytope_vertices, EnumerationBudget,
};
use latmem::rounding::{rho_impl, round_lp_body, round_polytope, RoundingResult};
use latmem::{Error, IntMatrix, IntVector, Integer, RatMatrix, RatVector, Rational};
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Report {
    failures: Vec<String>,
}

impl Report {
    fn check(&mut self, label: &str, errors: &[String], detail: String, elapsed: Duration) {
        let status = if errors.is_empty() { "PASS" } else { "FAIL" };
        println!("{status} {label}: {detail} ({:.1}s)", elapsed.as_secs_f64());
        for e in errors.iter().take(5) {
            println!("    {e}");
        }
        if !errors.is_empty() {
            self.failures.push(label.to_string());
        }
    }
}

fn small_rat(rng: &mut ChaCha8Rng, bound: i64, max_den: i64) -> Rational {
    let d = rng.gen_range(1..=max_den);
    rat(rng.gen_range(-bound * d..=bound * d), d)
}

fn int_vec(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> IntVector {
    (0..n).map(|_| int(rng.gen_range(-bound..=bound))).collect()
}

fn full_rank_cols(rng: &mut ChaCha8Rng, n: usize, r: usize, bound: i64) -> RatMatrix {
    loop {
        let cols: Vec<RatVector> = (0..r)
            .map(|_| to_rat_vec(&int_vec(rng, n, bound)))
            .collect();
        let b = RatMatrix::from_cols(&cols);
        if b.rank() == r {
            return b;
        }
    }
}

/// Two fixed symmetric polyhedral norms per dimension.
fn polytope_norm(which: usize, n: usize) -> NormSpec {
    let mut rows: Vec<IntVector> = Vec::new();
    let mut beta = Vec::new();
    for i in 0..n {
        let mut e = vec![Integer::zero(); n];
        e[i] = Integer::one();
        rows.push(e);
        beta.push(int(if which == 0 { 2 } else { 1 + i as i64 }));
    }
    if n > 1 {
        if which == 0 {
            rows.push(vec![Integer::one(); n]);
            beta.push(int(3));
        } else {
            for i in 0..n {
                let mut r = vec![Integer::zero(); n];
                r[i] = int(1);
                r[(i + 1) % n] = int(-2);
                rows.push(r);
                beta.push(int(3));
            }
        }
    }
    NormSpec::polyhedral(IntMatrix::from_rows(&rows), beta).expect("bounded norm ball")
}

fn criterion_1(rep: &mut Report) {
    let start = Instant::now();
    let mut errs = Vec::new();
    let l = LatticeBasis::new(RatMatrix::from_cols(&[vec![rat(4, 1), rat(7, 1)]])).unwrap();
    let t = vec![rat(0, 1), rat(5, 1)];
    let r = cvp_search(&l, &t, &NormSpec::Lp(1)).unwrap();
    if r.distance_pow != rat(5, 1) || r.coeffs != vec![int(0)] {
        errs.push(format!(
            "cvp_search gave {:?} at distance {}",
            r.coeffs, r.distance_pow
        ));
    }
    for (name, scale) in [
        ("orthogonal projection", rat(7, 13)),
        ("l1 projection", rat(5, 7)),
    ] {
        let tp = vec![&scale * rat(4, 1), &scale * rat(7, 1)];
        let o = oracle_cvp(&l, &tp, &NormSpec::Lp(1)).unwrap();
        if o.coeffs != vec![int(1)] {
            errs.push(format!("oracle at the {name} gave {:?}", o.coeffs));
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(1) {
        errs.push("slower than 1 s".into());
    }
    rep.check(
        "1 l1 projection counterexample",
        &errs,
        "exact".into(),
        elapsed,
    );
}

fn criterion_2(rep: &mut Report) {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut errs = Vec::new();
    let mut count = 0;
    let per_norm = 75;
    for norm_id in 0..7 {
        for _ in 0..per_norm {
            let n = rng.gen_range(1..=3);
            let r = rng.gen_range(1..=n);
            let b = full_rank_cols(&mut rng, n, r, 5);
            let l = LatticeBasis::new(b).unwrap();
            let t: RatVector = (0..n).map(|_| small_rat(&mut rng, 5, 3)).collect();
            let norm = match norm_id {
                0..=3 => NormSpec::Lp(norm_id as u32 + 1),
                4 => NormSpec::Infinity,
                k => polytope_norm(k - 5, n),
            };
            count += 1;
            let got = cvp_search(&l, &t, &norm);
            match (got, oracle_cvp(&l, &t, &norm)) {
                (Ok(a), Ok(o)) if a.distance_pow == o.distance_pow => {}
                (a, o) => errs.push(format!(
                    "{norm:?} B={:?} t={t:?}: {a:?} vs {o:?}",
                    l.matrix()
                )),
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(600) {
        errs.push("slower than 10 min".into());
    }
    let detail = format!(
        "{}/{count} instances agree with the oracle",
        count - errs.len()
    );
    rep.check("2 differential CVP", &errs, detail, elapsed);
}

fn random_polytope(rng: &mut ChaCha8Rng, n: usize) -> Polytope {
    let mut rows = Vec::new();
    let mut beta = Vec::new();
    // a random box keeps it bounded, extra rows cut it
    for i in 0..n {
        let lo = small_rat(rng, 4, 4);
        let hi = &lo + small_rat(rng, 4, 4).abs();
        let mut e = vec![Rational::zero(); n];
        e[i] = Rational::one();
        rows.push(e.clone());
        beta.push(hi);
        rows.push(e.iter().map(|x| -x).collect());
        beta.push(-lo);
    }
    for _ in 0..rng.gen_range(0..=3) {
        let a: RatVector = (0..n).map(|_| small_rat(rng, 8, 1)).collect();
        if a.iter().all(Zero::is_zero) {
            continue;
        }
        rows.push(a);
        beta.push(small_rat(rng, 8, 4));
    }
    Polytope::from_rational(&RatMatrix::from_rows(&rows), &beta).unwrap()
}

fn random_lp_body(rng: &mut ChaCha8Rng, m: usize) -> LpBody {
    let p = rng.gen_range(2..=4);
    let n = if rng.gen_bool(0.25) && m < 3 {
        m + 1
    } else {
        m
    };
    loop {
        let v_inv = RatMatrix::from_rows(
            &(0..n)
                .map(|_| (0..n).map(|_| small_rat(rng, 3, 2)).collect())
                .collect::<Vec<_>>(),
        );
        let t: RatVector = (0..n).map(|_| small_rat(rng, 4, 4)).collect();
        let alpha = rat(rng.gen_range(1..=16), rng.gen_range(1..=4));
        if let Ok(b) = LpBody::new(p, v_inv, t, &alpha, m) {
            return b;
        }
    }
}

/// Criterion 8 reuses the criterion 3 runs; its report is returned for
/// printing in order.
fn criteria_3_and_8(rep: &mut Report) -> (Vec<String>, String, Duration) {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut errs = Vec::new();
    let mut bit_errs = Vec::new();
    let mut count = 0;
    let mut max_ratio = 0.0f64;
    for i in 0..520 {
        let n = rng.gen_range(1..=3);
        let body = if i % 2 == 0 {
            ConvexBody::Polytope(random_polytope(&mut rng, n))
        } else {
            ConvexBody::Lp(random_lp_body(&mut rng, n))
        };
        let l = LatticeBasis::new(full_rank_cols(&mut rng, n, n, 3)).unwrap();
        count += 1;
        let with = lmp_solve_with(&body, &l, &MembershipConfig::default());
        let without = lmp_solve_with(
            &body,
            &l,
            &MembershipConfig {
                no_replacement: true,
                ..MembershipConfig::default()
            },
        );
        let oracle = oracle_lmp(&body, &l);
        match (&with, &without, &oracle) {
            (Ok((a, stats)), Ok((b, _)), Ok(o)) if a == o && b == o => {
                // bits ≤ (n+2)² + n·log₂N + 1  ⟺  2^{bits − (n+2)² − 1} ≤ Nⁿ
                let slack = stats.max_coeff_bits as i64 - ((n + 2) * (n + 2)) as i64 - 1;
                let n_pow = pow_int(&stats.big_n, n as u32);
                if slack > 0 && (Integer::one() << slack as usize) > n_pow {
                    bit_errs.push(format!(
                        "{body:?}: {} bits, N = {}",
                        stats.max_coeff_bits, stats.big_n
                    ));
                }
                let budget = ((n + 2) * (n + 2)) as f64 + bit_length(&n_pow) as f64 + 1.0;
                max_ratio = max_ratio.max(stats.max_coeff_bits as f64 / budget);
            }
            _ => errs.push(format!(
                "{body:?} L={:?}: {with:?} / {without:?} / {oracle:?}",
                l.matrix()
            )),
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(600) {
        errs.push("slower than 10 min".into());
    }
    let detail = format!(
        "{}/{count} instances agree with the oracle, with and without replacement",
        count - errs.len()
    );
    rep.check("3 differential LMP", &errs, detail, elapsed);
    let detail = format!(
        "worst max_coeff_bits is {:.0}% of the bound",
        100.0 * max_ratio
    );
    (bit_errs, detail, elapsed)
}

/// Integer points z with ‖z‖₁ ≤ r.
fn l1_ball(n: usize, r: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|z: Vec<i64>| {
                let used: i64 = z.iter().map(|x| x.abs()).sum();
                (-(r - used)..=(r - used)).map(move |x| {
                    let mut z = z.clone();
                    z.push(x);
                    z
                })
            })
            .collect();
    }
    out
}

fn criterion_4(rep: &mut Report) {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut errs = Vec::new();
    let mut count = 0;
    let mut infeasible = 0;
    while count < 220 {
        let n = rng.gen_range(1..=3);
        let big_n = rng.gen_range(2..=6i64);
        let h = AffineSubspace::new(
            (0..rng.gen_range(0..n))
                .filter_map(|_| {
                    let d = int_vec(&mut rng, n, 3);
                    (!d.iter().all(Zero::is_zero))
                        .then(|| Hyperplane::new(d, int(rng.gen_range(-3..=3))))
                })
                .collect(),
        );
        let mag = 10i64.pow(rng.gen_range(1..=6));
        let d = int_vec(&mut rng, n, mag);
        if d.iter().all(Zero::is_zero) {
            continue;
        }
        let ball = l1_ball(n, big_n - 1);
        let k = if rng.gen_bool(0.7) {
            let z = &ball[rng.gen_range(0..ball.len())];
            dot(&d, &z.iter().map(|&x| int(x)).collect::<Vec<_>>())
        } else {
            int(rng.gen_range(-mag..=mag))
        };
        let res = match replace_hyperplane(&h, &d, &k, &int(big_n)) {
            Err(Error::DependentNormals | Error::DependentInput) => continue,
            Err(e) => {
                errs.push(format!("unexpected error {e}"));
                continue;
            }
            Ok(r) => r,
        };
        count += 1;
        let bound = (Integer::one() << ((n + 2) * (n + 2))) * pow_int(&int(big_n), n as u32);
        let replaced = match &res {
            Replacement::Hyperplanes(hs) => {
                if hs.is_empty() {
                    errs.push("empty replacement".into());
                }
                for hp in hs {
                    if hp.d.iter().chain([&hp.k]).any(|c| c.abs() > bound) {
                        errs.push(format!("coefficient too large in {hp:?}"));
                    }
                }
                Some(hs)
            }
            Replacement::Infeasible => {
                infeasible += 1;
                None
            }
        };
        for z in &ball {
            let zr: RatVector = z.iter().map(|&x| rat(x, 1)).collect();
            if !h.contains(&zr) {
                continue;
            }
            let original = dot(&to_rat_vec(&d), &zr) == rat_int(&k);
            let small = replaced.is_some_and(|hs| hs.iter().all(|hp| hp.contains(&zr)));
            if original != small {
                errs.push(format!(
                    "H={h:?} d={d:?} k={k} N={big_n}: disagree at {z:?}"
                ));
                break;
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(120) {
        errs.push("slower than 2 min".into());
    }
    let detail = format!("{count} replacements verified by enumeration ({infeasible} infeasible)");
    rep.check(
        "4 replacement bounds and equivalence",
        &errs,
        detail,
        elapsed,
    );
}

fn random_ellipsoid(rng: &mut ChaCha8Rng, m: usize) -> Ellipsoid {
    loop {
        let q = RatMatrix::from_rows(
            &(0..m)
                .map(|_| (0..m).map(|_| small_rat(rng, 3, 2)).collect())
                .collect::<Vec<_>>(),
        );
        let d = q.mul(&q.transpose()).scale(&rat(1, rng.gen_range(1..=8)));
        let c = (0..m).map(|_| small_rat(rng, 4, 4)).collect();
        if let Ok(e) = Ellipsoid::new(d, c) {
            return e;
        }
    }
}

/// Brute force over the box c ± √D_ii.
fn ellipsoid_points(e: &Ellipsoid) -> Vec<IntVector> {
    let mut pts: Vec<IntVector> = vec![vec![]];
    for i in 0..e.dim() {
        let r = latmem::exact::sqrt_upper(&e.d[(i, i)], 8);
        let lo = latmem::exact::floor(&(&e.c[i] - &r)) - 1;
        let hi = latmem::exact::ceil(&(&e.c[i] + &r)) + 1;
        pts = pts
            .into_iter()
            .flat_map(|p| {
                num_iter(&lo, &hi).map(move |x| {
                    let mut p = p.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    pts.into_iter()
        .filter(|p| e.contains(&to_rat_vec(p)))
        .collect()
}

fn num_iter(lo: &Integer, hi: &Integer) -> impl Iterator<Item = Integer> {
    let hi = hi.clone();
    std::iter::successors(Some(lo.clone()), |x| Some(x + 1)).take_while(move |x| *x <= hi)
}

fn check_flatness(
    outcome: &FlatnessOutcome,
    points: &[IntVector],
    max_len: &Rational,
) -> Option<String> {
    match outcome {
        FlatnessOutcome::ContainsInteger if points.is_empty() => {
            Some("ContainsInteger but no integer point".into())
        }
        FlatnessOutcome::NoInteger if !points.is_empty() => {
            Some(format!("NoInteger but {:?} is inside", points[0]))
        }
        FlatnessOutcome::Direction { d, k_min, k_max } => {
            if d.iter().all(Zero::is_zero) {
                return Some("zero direction".into());
            }
            if rat_int(&(k_max - k_min)) > *max_len {
                return Some(format!("interval [{k_min}, {k_max}] too long"));
            }
            points
                .iter()
                .find(|z| {
                    let v = dot(d, z);
                    v < *k_min || v > *k_max
                })
                .map(|z| format!("{z:?} outside the slabs [{k_min}, {k_max}] along {d:?}"))
        }
        _ => None,
    }
}

fn criterion_5(rep: &mut Report) {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let budget = EnumerationBudget::default();
    let mut errs = Vec::new();
    let mut count = 0;
    let mut tally = [0usize; 3];
    for i in 0..330 {
        let m = rng.gen_range(1..=3);
        let mi = rat_int(&Integer::from(m));
        let err = match i % 3 {
            0 => {
                let e = random_ellipsoid(&mut rng, m);
                let out = flatness_ellipsoid(&e).unwrap();
                tally_outcome(&mut tally, &out);
                check_flatness(&out, &ellipsoid_points(&e), &mi).map(|s| format!("{e:?}: {s}"))
            }
            1 => {
                let p = random_polytope(&mut rng, m);
                let pts = integer_points(&ConvexBody::Polytope(p.clone()), &budget).unwrap();
                match flatness_polytope(&p) {
                    Ok(out) => {
                        tally_outcome(&mut tally, &out);
                        check_flatness(&out, &pts, &(rho_impl(m) * &mi))
                            .map(|s| format!("{p:?}: {s}"))
                    }
                    Err(e) => Some(format!("{p:?}: error {e}")),
                }
            }
            _ => {
                let b = random_lp_body(&mut rng, m);
                let pts = integer_points(&ConvexBody::Lp(b.clone()), &budget).unwrap();
                let out = flatness_lp(&b);
                tally_outcome(&mut tally, &out);
                check_flatness(&out, &pts, &(rho_impl(m) * &mi)).map(|s| format!("{b:?}: {s}"))
            }
        };
        count += 1;
        errs.extend(err);
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(300) {
        errs.push("slower than 5 min".into());
    }
    let detail = format!(
        "{count} bodies ({} contain, {} none, {} directions)",
        tally[0], tally[1], tally[2]
    );
    rep.check(
        "5 flatness soundness and completeness",
        &errs,
        detail,
        elapsed,
    );
}

fn tally_outcome(t: &mut [usize; 3], o: &FlatnessOutcome) {
    t[match o {
        FlatnessOutcome::ContainsInteger => 0,
        FlatnessOutcome::NoInteger => 1,
        FlatnessOutcome::Direction { .. } => 2,
    }] += 1;
}

/// E ⊆ P checked per constraint: ⟨a,c⟩ + √(aᵀDa) ≤ β, squared.
fn inner_ok(p: &Polytope, e: &Ellipsoid) -> bool {
    (0..p.num_constraints()).all(|i| {
        let a = to_rat_vec(&p.a.row(i));
        let gap = rat_int(&p.beta[i]) - dot(&a, &e.c);
        !gap.is_negative() && &gap * &gap >= dot(&a, &e.d.mul_vec(&a))
    })
}

fn criterion_6(rep: &mut Report) {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let budget = EnumerationBudget::default();
    let mut errs = Vec::new();
    let mut tally = [0usize; 4];
    for _ in 0..200 {
        let n = rng.gen_range(1..=3);
        let p = random_polytope(&mut rng, n);
        let verts = polytope_vertices(&p);
        match round_polytope(&p) {
            Ok(RoundingResult::Sandwich { inner, rho }) => {
                tally[0] += 1;
                if rho > rho_impl(n) {
                    errs.push(format!("{p:?}: rho {rho} above {}", rho_impl(n)));
                }
                if !inner_ok(&p, &inner) {
                    errs.push(format!("{p:?}: inner ellipsoid leaves the polytope"));
                }
                let outer = inner.scaled(&(&rho * &rho));
                if let Some(v) = verts.iter().find(|v| !outer.contains(v)) {
                    errs.push(format!("{p:?}: vertex {v:?} outside rho*E"));
                }
            }
            Ok(RoundingResult::Flat {
                outer,
                direction,
                val,
            }) => {
                tally[1] += 1;
                let dr = to_rat_vec(&direction);
                if dot(&dr, &outer.d.mul_vec(&dr)) != val || rat(4, 1) * &val >= Rational::one() {
                    errs.push(format!("{p:?}: flat direction is not thin"));
                }
                if let Some(v) = verts.iter().find(|v| !outer.contains(v)) {
                    errs.push(format!("{p:?}: vertex {v:?} outside the outer ellipsoid"));
                }
            }
            Ok(RoundingResult::NoIntegerPoint) => {
                tally[2] += 1;
                if !integer_points(&ConvexBody::Polytope(p.clone()), &budget)
                    .unwrap()
                    .is_empty()
                {
                    errs.push(format!("{p:?}: NoIntegerPoint but the oracle finds one"));
                }
            }
            Err(Error::Degenerate) => tally[3] += 1,
            Err(e) => errs.push(format!("{p:?}: error {e}")),
        }
    }
    let mut lp_tally = [0usize; 3];
    for _ in 0..200 {
        let m = rng.gen_range(1..=3);
        let b = random_lp_body(&mut rng, m);
        let pts = integer_points(&ConvexBody::Lp(b.clone()), &budget).unwrap();
        match round_lp_body(&b) {
            RoundingResult::NoIntegerPoint => {
                lp_tally[1] += 1;
                if !pts.is_empty() {
                    errs.push(format!("{b:?}: NoIntegerPoint but {:?} is inside", pts[0]));
                }
            }
            RoundingResult::Sandwich { inner, rho } => {
                lp_tally[0] += 1;
                if rho > rho_impl(m) || !b.contains(&inner.c) {
                    errs.push(format!("{b:?}: bad sandwich"));
                }
                let outer = inner.scaled(&(&rho * &rho));
                if let Some(z) = pts.iter().find(|z| !outer.contains(&to_rat_vec(z))) {
                    errs.push(format!("{b:?}: {z:?} outside rho*E"));
                }
            }
            RoundingResult::Flat { outer, .. } => {
                lp_tally[2] += 1;
                if let Some(z) = pts.iter().find(|z| !outer.contains(&to_rat_vec(z))) {
                    errs.push(format!("{b:?}: {z:?} outside the outer ellipsoid"));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(300) {
        errs.push("slower than 5 min".into());
    }
    let detail = format!(
        "polytopes {}/{}/{}/{} sandwich/flat/empty/degenerate, lp-bodies {}/{}/{} sandwich/empty/flat",
        tally[0], tally[1], tally[2], tally[3], lp_tally[0], lp_tally[1], lp_tally[2]
    );
    rep.check("6 Loewner-John sandwich", &errs, detail, elapsed);
}

fn criterion_7(rep: &mut Report) {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut errs = Vec::new();
    let mut count = 0;
    for p in 2..=4u32 {
        for _ in 0..1000 {
            let m = rng.gen_range(1..=3);
            let mut b = random_lp_body(&mut rng, m);
            if b.p != p {
                b = LpBody::new(p, b.v_inv.clone(), b.t.clone(), &b.alpha(), b.m).unwrap();
            }
            let y: RatVector = (0..m).map(|_| small_rat(&mut rng, 5, 6)).collect();
            let z: RatVector = (0..m).map(|_| small_rat(&mut rng, 5, 6)).collect();
            let g = lp_subgradient(&b, &y);
            count += 1;
            if b.potential(&z) < b.potential(&y) + dot(&g, &vec_sub(&z, &y)) {
                errs.push(format!("p={p} {b:?} y={y:?} z={z:?}"));
            }
            if p == 2 {
                // ∇F = 2α_d²·[V⁻ᵀV⁻¹((y,0) − t)]_{1..m}
                let mut u = y.clone();
                u.resize(b.n(), Rational::zero());
                let w = vec_sub(&u, &b.t);
                let q = b.v_inv.transpose().mul(&b.v_inv);
                let scale = rat(2, 1) * rat_int(&(&b.alpha_d * &b.alpha_d));
                let grad: RatVector = q.mul_vec(&w)[..m].iter().map(|x| x * &scale).collect();
                if grad != g {
                    errs.push(format!("{b:?} y={y:?}: gradient {g:?} vs {grad:?}"));
                }
            }
        }
    }
    let detail = format!("{count} pairs over p = 2, 3, 4");
    rep.check("7 subgradient inequality", &errs, detail, start.elapsed());
}

fn main() {
    // honour `cargo test -- --list` and filters without running the suite
    let args: Vec<String> = std::env::args().collect();
    if args.iter().any(|a| a == "--list") {
        println!("acceptance: test");
        return;
    }
    let mut rep = Report {
        failures: Vec::new(),
    };
    criterion_1(&mut rep);
    criterion_2(&mut rep);
    let (bit_errs, detail, elapsed) = criteria_3_and_8(&mut rep);
    criterion_4(&mut rep);
    criterion_5(&mut rep);
    criterion_6(&mut rep);
    criterion_7(&mut rep);
    rep.check("8 coefficient size control", &bit_errs, detail, elapsed);
    if !rep.failures.is_empty() {
        println!("failed: {}", rep.failures.join(", "));
        std::process::exit(1);
    }
}
