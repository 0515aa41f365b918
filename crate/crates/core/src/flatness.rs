//! Flatness directions for ellipsoids, polytopes and ℓp-bodies.

use num_traits::{One, Signed, Zero};

use crate::exact::{ceil, floor, rat, rat_int, IntVector, Integer, Rational};
use crate::geometry::{Ellipsoid, LpBody, Polytope};
use crate::lattice::{shortest_form_vector, GramForm};
use crate::rounding::{round_lp_raw, round_polytope_raw, slab_range, Outcome, RoundingConfig};
use crate::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FlatnessOutcome {
    ContainsInteger,
    /// Only produced for ℓp-bodies.
    NoInteger,
    /// Every integer point x of the body satisfies k_min ≤ ⟨d, x⟩ ≤ k_max.
    Direction {
        d: IntVector,
        k_min: Integer,
        k_max: Integer,
    },
}

impl FlatnessOutcome {
    fn empty(m: usize) -> Self {
        let mut d = vec![Integer::zero(); m];
        d[0] = Integer::one();
        FlatnessOutcome::Direction {
            d,
            k_min: Integer::one(),
            k_max: Integer::zero(),
        }
    }
}

fn direction(e: &Ellipsoid, d: IntVector, rho_sq: &Rational) -> FlatnessOutcome {
    let (k_min, k_max) = slab_range(e, &d, rho_sq);
    FlatnessOutcome::Direction { d, k_min, k_max }
}

/// Width test on E: contains an integer point when its lattice width is at
/// least m, otherwise a direction with the integer range of ⟨d, x⟩ over E.
pub fn flatness_ellipsoid(e: &Ellipsoid) -> Result<FlatnessOutcome> {
    let m = e.dim();
    let form = GramForm::new(e.d.clone())?;
    let (d, val) = shortest_form_vector(&form)?;
    if rat(4, 1) * &val >= rat_int(&Integer::from(m * m)) {
        return Ok(FlatnessOutcome::ContainsInteger);
    }
    Ok(direction(e, d, &Rational::one()))
}

/// Like `flatness_ellipsoid` on the inner ellipsoid of a sandwich, with the
/// slab widened to ρ⋆E.
fn from_sandwich(inner: &Ellipsoid, rho: &Rational) -> Result<FlatnessOutcome> {
    match flatness_ellipsoid(inner)? {
        FlatnessOutcome::Direction { d, .. } => Ok(direction(inner, d, &(rho * rho))),
        other => Ok(other),
    }
}

/// Nearest integer point to the center, as a witness candidate.
fn rounded(c: &[Rational]) -> Vec<Rational> {
    c.iter()
        .map(|x| rat_int(&floor(&(x + rat(1, 2)))))
        .collect()
}

fn outer_direction(outer: &Ellipsoid) -> Result<FlatnessOutcome> {
    let (d, _) = shortest_form_vector(&GramForm::new(outer.d.clone())?)?;
    Ok(direction(outer, d, &Rational::one()))
}

pub fn flatness_polytope(p: &Polytope) -> Result<FlatnessOutcome> {
    flatness_polytope_with(p, &RoundingConfig::default())
}

pub fn flatness_polytope_with(p: &Polytope, cfg: &RoundingConfig) -> Result<FlatnessOutcome> {
    let m = p.dim();
    if m == 1 {
        return Ok(interval_flatness(p));
    }
    match round_polytope_raw(p, cfg) {
        Outcome::Sandwich(inner, _) if p.contains(&rounded(&inner.c)) => {
            Ok(FlatnessOutcome::ContainsInteger)
        }
        Outcome::Sandwich(inner, rho) => from_sandwich(&inner, &rho),
        Outcome::Flat(outer, d, _) => Ok(direction(&outer, d, &Rational::one())),
        Outcome::Empty => Ok(FlatnessOutcome::empty(m)),
        Outcome::Floor(outer) => outer_direction(&outer),
    }
}

fn interval_flatness(p: &Polytope) -> FlatnessOutcome {
    let mut lo: Option<Rational> = None;
    let mut hi: Option<Rational> = None;
    for i in 0..p.num_constraints() {
        let a = rat_int(&p.a[(i, 0)]);
        let b = rat_int(&p.beta[i]);
        if a.is_zero() {
            if b.is_negative() {
                return FlatnessOutcome::empty(1);
            }
            continue;
        }
        let v = &b / &a;
        if a.is_positive() {
            hi = Some(hi.map_or(v.clone(), |h| h.min(v)));
        } else {
            lo = Some(lo.map_or(v.clone(), |l| l.max(v)));
        }
    }
    let (Some(lo), Some(hi)) = (lo, hi) else {
        panic!("unbounded one-dimensional polytope");
    };
    let (k_min, k_max) = (ceil(&lo), floor(&hi));
    if k_min <= k_max {
        FlatnessOutcome::ContainsInteger
    } else {
        FlatnessOutcome::Direction {
            d: vec![Integer::one()],
            k_min,
            k_max,
        }
    }
}

pub fn flatness_lp(body: &LpBody) -> FlatnessOutcome {
    flatness_lp_with(body, &RoundingConfig::default())
}

pub fn flatness_lp_with(body: &LpBody, cfg: &RoundingConfig) -> FlatnessOutcome {
    if body.m == 1 {
        return match lp_line_minimizer(body) {
            Some(_) => FlatnessOutcome::ContainsInteger,
            None => FlatnessOutcome::NoInteger,
        };
    }
    let res = match round_lp_raw(body, cfg) {
        Outcome::Sandwich(inner, _) if body.contains(&rounded(&inner.c)) => {
            Ok(FlatnessOutcome::ContainsInteger)
        }
        Outcome::Sandwich(inner, rho) => from_sandwich(&inner, &rho),
        Outcome::Flat(outer, d, _) => Ok(direction(&outer, d, &Rational::one())),
        Outcome::Empty | Outcome::Floor(_) => Ok(FlatnessOutcome::NoInteger),
    };
    res.expect("rounding yields positive definite ellipsoids")
}

/// Integer x with F(x) < 0 on a one-dimensional ℓp-body, if any. F is
/// convex, so the integer minimizer is found by bisection on F(x+1) − F(x).
pub(crate) fn lp_line_minimizer(body: &LpBody) -> Option<Integer> {
    debug_assert_eq!(body.m, 1);
    let f = |x: &Integer| body.potential(&[rat_int(x)]);
    let radius_sq = crate::geometry::lp_circumscribed_radius_sq(body).expect("nonsingular");
    let r = ceil(&crate::exact::sqrt_upper(&radius_sq, 4)) + 1;
    let c = floor(&body.t[0]);
    let mut lo = &c - &r;
    let mut hi = &c + &r;
    // smallest x in [lo, hi] with F(x+1) ≥ F(x)
    while lo < hi {
        let mid: Integer = (&lo + &hi) >> 1;
        if f(&(&mid + 1)) >= f(&mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    f(&lo).is_negative().then_some(lo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, IntMatrix, RatMatrix};

    #[test]
    fn large_ball_contains_integer() {
        let e = Ellipsoid::ball(vec![rat(0, 1); 2], rat(4, 1));
        assert_eq!(
            flatness_ellipsoid(&e).unwrap(),
            FlatnessOutcome::ContainsInteger
        );
    }

    #[test]
    fn small_ball_gives_empty_range() {
        let e = Ellipsoid::new(
            RatMatrix::identity(2).scale(&rat(1, 16)),
            vec![rat(1, 2), rat(1, 2)],
        )
        .unwrap();
        assert_eq!(
            flatness_ellipsoid(&e).unwrap(),
            FlatnessOutcome::Direction {
                d: vec![int(1), int(0)],
                k_min: int(1),
                k_max: int(0)
            }
        );
    }

    fn boxed(lo: [(i64, i64); 2], hi: [(i64, i64); 2]) -> Polytope {
        // rows ±e_i with rational bounds scaled to integers
        let a = RatMatrix::from_rows(&[
            vec![rat(1, 1), rat(0, 1)],
            vec![rat(-1, 1), rat(0, 1)],
            vec![rat(0, 1), rat(1, 1)],
            vec![rat(0, 1), rat(-1, 1)],
        ]);
        let beta = vec![
            rat(hi[0].0, hi[0].1),
            -rat(lo[0].0, lo[0].1),
            rat(hi[1].0, hi[1].1),
            -rat(lo[1].0, lo[1].1),
        ];
        Polytope::from_rational(&a, &beta).unwrap()
    }

    #[test]
    fn big_square_contains_integer() {
        let p = boxed([(0, 1), (0, 1)], [(10, 1), (10, 1)]);
        assert_eq!(
            flatness_polytope(&p).unwrap(),
            FlatnessOutcome::ContainsInteger
        );
    }

    #[test]
    fn thin_strip_direction_covers_points() {
        let p = boxed([(1, 4), (0, 1)], [(3, 4), (5, 1)]);
        match flatness_polytope(&p).unwrap() {
            FlatnessOutcome::Direction { d, k_min, k_max } => {
                assert!(d == vec![int(1), int(0)] || d == vec![int(-1), int(0)]);
                assert!(&k_max - &k_min <= int(24));
            }
            FlatnessOutcome::ContainsInteger => panic!("strip has no integer point"),
            FlatnessOutcome::NoInteger => panic!("polytopes never report NoInteger"),
        }
    }

    #[test]
    fn one_dimensional_polytope() {
        let p = Polytope::new(
            IntMatrix::from_rows(&[vec![int(4)], vec![int(-4)]]),
            vec![int(3), int(-1)],
        )
        .unwrap();
        assert_eq!(
            flatness_polytope(&p).unwrap(),
            FlatnessOutcome::Direction {
                d: vec![int(1)],
                k_min: int(1),
                k_max: int(0)
            }
        );
    }

    #[test]
    fn lp_examples() {
        let ball = LpBody::ball(2, vec![rat(0, 1); 2], &rat(2, 1)).unwrap();
        assert_eq!(flatness_lp(&ball), FlatnessOutcome::ContainsInteger);
        let tiny = LpBody::ball(4, vec![rat(1, 2); 2], &rat(1, 100)).unwrap();
        assert_eq!(flatness_lp(&tiny), FlatnessOutcome::NoInteger);
        // (0,0) is at ℓ₃ distance (1/4)^{1/3} ≈ 0.63 from the center
        let mid = LpBody::ball(3, vec![rat(1, 2); 2], &rat(3, 4)).unwrap();
        assert_eq!(flatness_lp(&mid), FlatnessOutcome::ContainsInteger);
        let small = LpBody::ball(3, vec![rat(1, 2); 2], &rat(1, 2)).unwrap();
        assert_ne!(flatness_lp(&small), FlatnessOutcome::ContainsInteger);
    }

    #[test]
    fn lp_line() {
        let b = LpBody::ball(2, vec![rat(7, 2)], &rat(1, 3)).unwrap();
        assert_eq!(flatness_lp(&b), FlatnessOutcome::NoInteger);
        let b = LpBody::ball(2, vec![rat(7, 2)], &rat(2, 3)).unwrap();
        assert_eq!(flatness_lp(&b), FlatnessOutcome::ContainsInteger);
    }
}
