//! Shallow-cut ellipsoid method producing approximate Löwner–John
//! ellipsoids for polytopes and ℓp-bodies.
//!
//! All updates are rational. A cut aᵀx ≤ b applied to E(D, c) uses the
//! quadric pencil (x−c)ᵀD⁻¹(x−c) + μ(aᵀx − b)(aᵀx − l) ≤ 1, where l is a
//! rational lower bound on min_E aᵀx; completing the square gives the next
//! ellipsoid without square roots. Entry growth is controlled by rounding
//! D and c to dyadic rationals and inflating by a certified factor.

use num_traits::{One, Signed, Zero};

use crate::exact::{
    ceil_add_sqrt, dot, floor, floor_add_sqrt, ldl, log2_ceil, pow_int, rat, rat_int, root_upper,
    sqrt_lower, sqrt_upper, vec_add, vec_scale, IntVector, Integer, RatMatrix, RatVector, Rational,
};
use crate::geometry::{
    ellipsoid_support, lp_circumscribed_center, lp_circumscribed_radius_sq, lp_integer_inradius,
    lp_subgradient, lp_volume_floor, Ellipsoid, LpBody, Polytope,
};
use crate::lattice::{shortest_form_vector, GramForm};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RoundingResult {
    /// E ⊆ body ⊆ ρ⋆E.
    Sandwich { inner: Ellipsoid, rho: Rational },
    /// The body has no integer point.
    NoIntegerPoint,
    /// The outer ellipsoid already has width below one along `direction`:
    /// at most one lattice hyperplane orthogonal to it meets the body.
    Flat {
        outer: Ellipsoid,
        direction: IntVector,
        val: Rational,
    },
}

#[derive(Clone, Debug, Default)]
pub struct RoundingConfig {
    /// Relative precision of the dyadic rounding; default 64·m.
    pub rounding_bits: Option<u32>,
}

impl RoundingConfig {
    fn bits(&self, m: usize) -> u32 {
        self.rounding_bits.unwrap_or(64 * m as u32)
    }
}

/// ⌈4m√m⌉, the implemented sandwich factor for ℓp-bodies.
pub fn rho_impl(m: usize) -> Rational {
    let sq = Integer::from(16 * m * m * m);
    let mut r = sq.sqrt();
    if &r * &r < sq {
        r += 1;
    }
    rat_int(&r)
}

/// Upper bound on √x with relative error about 2^{-rel}.
fn sqrt_upper_rel(x: &Rational, rel: u32) -> Rational {
    if x.is_zero() {
        return Rational::zero();
    }
    let l = log2_ceil(x);
    let bits = (rel as i64 + 1 - l.div_euclid(2)).max(0) as u32;
    sqrt_upper(x, bits)
}

fn sqrt_lower_rel(x: &Rational, rel: u32) -> Rational {
    if x.is_zero() {
        return Rational::zero();
    }
    let l = log2_ceil(x);
    let bits = (rel as i64 + 2 - l.div_euclid(2)).max(0) as u32;
    sqrt_lower(x, bits)
}

fn dyadic_round(x: &Rational, bits: u32) -> Rational {
    let scale = Integer::one() << bits;
    let two = rat(2, 1);
    let y = x * rat_int(&scale) * &two + Rational::one();
    Rational::new(floor(&(y / two)), scale)
}

/// Outcome of one cut.
enum Cut {
    Next(Ellipsoid),
    /// The halfspace misses E entirely.
    Empty,
}

/// E(D, c) ∩ {aᵀx ≤ b} ⊆ result.
fn shallow_cut(e: &Ellipsoid, a: &[Rational], b: &Rational) -> Cut {
    let m = e.dim();
    let da = e.d.mul_vec(a);
    let g = dot(a, &da);
    debug_assert!(g.is_positive());
    let u = dot(a, &e.c);
    let gap = &u - b;
    // s = (b − u)/√g < −1 means the cut removes everything
    if gap.is_positive() && &gap * &gap > g {
        return Cut::Empty;
    }
    let g_up = sqrt_upper_rel(&g, 40);
    if m == 1 {
        let a0 = &a[0];
        let lo = &e.c[0] - &g_up / a0.abs();
        let hi = &e.c[0] + &g_up / a0.abs();
        let bound = b / a0;
        let (lo, hi) = if a0.is_positive() {
            (lo, hi.min(bound))
        } else {
            (lo.max(bound), hi)
        };
        let half = (&hi - &lo) / rat(2, 1);
        let c = (&hi + &lo) / rat(2, 1);
        return Cut::Next(Ellipsoid {
            d: RatMatrix::new(1, 1, vec![&half * &half]),
            c: vec![c],
        });
    }
    // depth α = (u − b)/√g, rounded and clamped to the valid range
    let mr = rat_int(&Integer::from(m));
    let alpha_raw = &gap / &g_up;
    let alpha = dyadic_round(&alpha_raw, 32)
        .max(-(mr.clone() + Rational::one()).recip())
        .min(Rational::one() - (rat(4, 1) * &mr * &mr).recip());
    let one = Rational::one();
    let sigma = rat(2, 1) * (&one + &mr * &alpha) / ((&mr + &one) * (&one + &alpha));
    let mu = &sigma / (&one - &sigma) / &g;
    let a1 = gap;
    let a2 = g_up;
    let denom = &one + &mu * &g;
    let sum = &a1 + &a2;
    let rho_sq = &one - &mu * &a1 * &a2 + &mu * &mu * &sum * &sum * &g / (rat(4, 1) * &denom);
    assert!(rho_sq.is_positive(), "pencil ellipsoid must be nonempty");
    let shift = -(&mu * &sum / (rat(2, 1) * &denom));
    let c = vec_add(&e.c, &vec_scale(&da, &shift));
    let mut d = e.d.clone();
    let f = &mu / &denom;
    for i in 0..m {
        for j in 0..m {
            let v = &f * &da[i] * &da[j];
            d[(i, j)] -= v;
        }
    }
    Cut::Next(Ellipsoid {
        d: d.scale(&rho_sq),
        c,
    })
}

/// Replaces E by a dyadic ellipsoid containing it, with a certified inflation.
fn round_ellipsoid(e: &Ellipsoid, rel_bits: u32) -> Ellipsoid {
    let m = e.dim();
    let det = e.d.det();
    let trace: Rational = (0..m).map(|i| e.d[(i, i)].clone()).sum();
    // λ_min ≥ det / trace^{m−1}; entry error 2^{-q} must stay below η·λ_min/(4m)
    let lam_lower = &det / crate::exact::pow_rat(&trace, m as u32 - 1);
    let eta = Rational::new(Integer::one(), Integer::one() << rel_bits.min(60));
    let target = &eta * &lam_lower / rat_int(&Integer::from(4 * m));
    let q = (-log2_ceil(&target)).max(0) as u32 + 2;
    let mut dt = e.d.map(|x| dyadic_round(x, q));
    for i in 0..m {
        for j in 0..i {
            dt[(i, j)] = dt[(j, i)].clone();
        }
    }
    let ct: RatVector = e.c.iter().map(|x| dyadic_round(x, q)).collect();
    let one = Rational::one();
    let check = dt.scale(&(&one + &eta)).sub(&e.d);
    if ldl(&check).is_none() {
        return e.clone();
    }
    let diff: RatVector = e.c.iter().zip(&ct).map(|(a, b)| a - b).collect();
    let e_sq = dot(&diff, &dt.solve(&diff).expect("positive definite"));
    let root = sqrt_upper(&(&one + &eta), 40) + sqrt_upper(&e_sq, 40);
    let kappa = &root * &root;
    Ellipsoid {
        d: dt.scale(&kappa),
        c: ct,
    }
}

fn max_bits(e: &Ellipsoid) -> u64 {
    e.d.data()
        .iter()
        .chain(&e.c)
        .map(|x| x.numer().bits().max(x.denom().bits()))
        .max()
        .unwrap_or(0)
}

/// False when λ_min(D) ≥ det·(m−1)^{m−1}/tr^{m−1} already rules out a
/// direction with 4·dᵀDd < 1, which spares the SVP.
fn may_be_thin(e: &Ellipsoid, det: &Rational) -> bool {
    let m = e.dim() as u32;
    let trace: Rational = (0..e.dim()).map(|i| e.d[(i, i)].clone()).sum();
    let lhs = rat(4, 1) * det * rat_int(&pow_int(&Integer::from(m - 1), m - 1));
    lhs < crate::exact::pow_rat(&trace, m - 1)
}

/// Width test on the outer ellipsoid: Some((d, val)) when 4·dᵀDd < 1.
fn thin_direction(e: &Ellipsoid) -> Option<(IntVector, Rational)> {
    let form = GramForm::new(e.d.clone()).ok()?;
    let (d, val) = shortest_form_vector(&form).ok()?;
    (rat(4, 1) * &val < Rational::one()).then_some((d, val))
}

/// Integer range of ⟨d, x⟩ over ρ⋆E given ρ² (k_min, k_max).
pub(crate) fn slab_range(e: &Ellipsoid, d: &[Integer], rho_sq: &Rational) -> (Integer, Integer) {
    let (center, radicand) = ellipsoid_support(e, d);
    let r = radicand * rho_sq;
    (
        ceil_add_sqrt(&center, &r, -1).expect("nonnegative"),
        floor_add_sqrt(&center, &r, 1).expect("nonnegative"),
    )
}

/// Raw outcome of the rounding loop.
#[derive(Clone, Debug)]
pub(crate) enum Outcome {
    Sandwich(Ellipsoid, Rational),
    Flat(Ellipsoid, IntVector, Rational),
    /// Body is empty or carries no integer point.
    Empty,
    /// Volume floor undercut; holds the final outer ellipsoid.
    Floor(Ellipsoid),
}

enum Probe {
    Inside(Ellipsoid, Rational),
    Cut(RatVector, Rational),
    Empty,
}

trait Shape {
    fn initial(&self) -> Option<Ellipsoid>;
    fn probe(&self, e: &Ellipsoid) -> Probe;
    /// det(D) below this certifies Outcome::Floor.
    fn det_floor(&self) -> Rational;
    /// Whether a flat, lattice-free outer ellipsoid counts as empty.
    fn lattice_free_is_empty(&self) -> bool;
}

fn run(shape: &dyn Shape, m: usize, cfg: &RoundingConfig) -> Outcome {
    let Some(mut e) = shape.initial() else {
        return Outcome::Empty;
    };
    let floor_det = shape.det_floor();
    let bits = cfg.bits(m);
    let shrink = Rational::one() - rat_int(&Integer::from(8 * (m + 1) * (m + 1))).recip();
    let mut prev_det: Option<Rational> = None;
    for _ in 0..1_000_000 {
        let det = e.d.det();
        if let (true, Some(prev)) = (m > 1, &prev_det) {
            debug_assert!(det <= &shrink * prev, "volume must shrink");
        }
        if may_be_thin(&e, &det) {
            if let Some((d, val)) = thin_direction(&e) {
                let (lo, hi) = slab_range(&e, &d, &Rational::one());
                if lo > hi && shape.lattice_free_is_empty() {
                    return Outcome::Empty;
                }
                return Outcome::Flat(e, d, val);
            }
        }
        if det < floor_det {
            return Outcome::Floor(e);
        }
        let (a, b) = match shape.probe(&e) {
            Probe::Inside(inner, rho) => return Outcome::Sandwich(inner, rho),
            Probe::Empty => return Outcome::Empty,
            Probe::Cut(a, b) => (a, b),
        };
        let next = match shallow_cut(&e, &a, &b) {
            Cut::Empty => return Outcome::Empty,
            Cut::Next(n) => n,
        };
        let next = if max_bits(&next) > bits as u64 {
            round_ellipsoid(&next, bits)
        } else {
            next
        };
        prev_det = Some(det);
        e = next;
    }
    panic!("ellipsoid method failed to terminate");
}

struct PolyShape<'a> {
    p: &'a Polytope,
}

impl Shape for PolyShape<'_> {
    fn initial(&self) -> Option<Ellipsoid> {
        let n = self.p.dim() as u32;
        let r = self.p.size();
        let nn = Integer::from(n);
        // ball of radius √n·n^{n/2}·rⁿ
        let r_sq = &nn * pow_int(&nn, n) * pow_int(&r, 2 * n);
        Some(Ellipsoid::ball(
            vec![Rational::zero(); n as usize],
            rat_int(&r_sq),
        ))
    }

    fn probe(&self, e: &Ellipsoid) -> Probe {
        let m = e.dim();
        let beta = rat_int(&Integer::from(2 * m)).recip();
        let beta_sq = &beta * &beta;
        // most violated constraint by normalized slack s/√g
        let mut worst: Option<(usize, Rational, Rational)> = None;
        for i in 0..self.p.num_constraints() {
            let a: RatVector = self.p.a.row(i).iter().map(rat_int).collect();
            let s = self.p.slack(i, &e.c);
            let g = dot(&a, &e.d.mul_vec(&a));
            if g.is_zero() {
                if s.is_negative() {
                    return Probe::Empty;
                }
                continue;
            }
            if !s.is_negative() && &s * &s >= &beta_sq * &g {
                continue;
            }
            let deeper = match &worst {
                None => true,
                Some((_, s0, g0)) => normalized_lt(&s, &g, s0, g0),
            };
            if deeper {
                worst = Some((i, s, g));
            }
        }
        match worst {
            None => Probe::Inside(e.scaled(&beta_sq), beta.recip()),
            Some((i, _, _)) => Probe::Cut(
                self.p.a.row(i).iter().map(rat_int).collect(),
                rat_int(&self.p.beta[i]),
            ),
        }
    }

    fn det_floor(&self) -> Rational {
        // a full-dimensional polytope contains a simplex with vertices of
        // denominator ≤ Δ = m^{m/2} r^m, so vol ≥ 1/(m!·Δ^{m+1}); vol(E) ≤ 2^m √det
        let m = self.p.dim() as u32;
        let r = self.p.size();
        let delta_sq = pow_int(&Integer::from(m), m) * pow_int(&r, 2 * m);
        let fact: Integer = (1..=m).map(Integer::from).product();
        let denom = pow_int(&Integer::from(4), m) * &fact * &fact * pow_int(&delta_sq, m + 1);
        Rational::new(Integer::one(), denom)
    }

    fn lattice_free_is_empty(&self) -> bool {
        false
    }
}

/// s₁/√g₁ < s₂/√g₂ with g > 0.
fn normalized_lt(s1: &Rational, g1: &Rational, s2: &Rational, g2: &Rational) -> bool {
    match (s1.is_negative(), s2.is_negative()) {
        (true, false) => true,
        (false, true) => false,
        (false, false) => s1 * s1 * g2 < s2 * s2 * g1,
        (true, true) => s1 * s1 * g2 > s2 * s2 * g1,
    }
}

struct LpShape<'a> {
    body: &'a LpBody,
}

impl LpShape<'_> {
    /// Section of the Hölder ellipsoid ‖V⁻¹(y − t)‖₂² ≤ n^{1−2/p}α² at the
    /// trailing zero coordinates.
    fn holder_section(&self) -> Option<Ellipsoid> {
        let b = self.body;
        let n = b.n();
        let m = b.m;
        let alpha = b.alpha();
        let factor = if b.p == 2 {
            Rational::one()
        } else {
            let np = rat_int(&pow_int(&Integer::from(n), b.p - 2));
            root_upper(&np, b.p, 24)
        };
        let gram = b.v_inv.transpose().mul(&b.v_inv);
        let scale = (&factor * &alpha * &alpha).recip();
        let mm = RatMatrix::from_rows(
            &(0..m)
                .map(|i| (0..m).map(|j| &gram[(i, j)] * &scale).collect())
                .collect::<Vec<_>>(),
        );
        let t_m = b.t[..m].to_vec();
        let t_r: RatVector = b.t[m..].to_vec();
        let mut y0 = vec![Rational::zero(); m];
        let mut rho_sq = Rational::one();
        if m < n {
            let mr: RatVector = (0..m)
                .map(|i| {
                    (m..n)
                        .map(|j| &gram[(i, j)] * &scale * &t_r[j - m])
                        .sum::<Rational>()
                })
                .collect();
            let mut rr = Rational::zero();
            for i in m..n {
                for j in m..n {
                    rr += &gram[(i, j)] * &scale * &t_r[i - m] * &t_r[j - m];
                }
            }
            y0 = mm.solve(&mr).expect("positive definite");
            rho_sq = rho_sq - rr + dot(&y0, &mr);
        }
        if !rho_sq.is_positive() {
            return None;
        }
        let d = mm.inverse().expect("positive definite").scale(&rho_sq);
        Some(Ellipsoid {
            d,
            c: vec_add(&t_m, &y0),
        })
    }
}

impl Shape for LpShape<'_> {
    fn initial(&self) -> Option<Ellipsoid> {
        self.holder_section()
    }

    fn probe(&self, e: &Ellipsoid) -> Probe {
        let m = e.dim();
        let body = self.body;
        let rho = rho_impl(m);
        let beta = rat_int(&Integer::from(2 * m)).recip();
        let (l, piv) = ldl(&e.d).expect("positive definite");
        let need = rat_int(&Integer::from(4 * m * m * m)) / (&rho * &rho);
        let mut best: Option<(RatVector, Rational, Rational, Rational)> = None;
        let mut all_inside = true;
        for i in 0..m {
            let s = sqrt_lower_rel(&piv[i], 24);
            debug_assert!(&s * &s >= &need * &piv[i]);
            let axis: RatVector = (0..m).map(|r| &l[(r, i)] * &s * &beta).collect();
            for sign in [1i64, -1] {
                let q = vec_add(&e.c, &vec_scale(&axis, &rat(sign, 1)));
                if body.contains(&q) {
                    continue;
                }
                all_inside = false;
                let g = lp_subgradient(body, &q);
                if g.iter().all(Zero::is_zero) {
                    // q minimizes F on the slice, so the body is empty
                    return Probe::Empty;
                }
                let b = dot(&g, &q);
                let slack = &b - dot(&g, &e.c);
                let gg = dot(&g, &e.d.mul_vec(&g));
                let deeper = match &best {
                    None => true,
                    Some((_, _, s0, g0)) => normalized_lt(&slack, &gg, s0, g0),
                };
                if deeper {
                    best = Some((g, b, slack, gg));
                }
            }
        }
        if all_inside {
            let rho_sq = &rho * &rho;
            return Probe::Inside(e.scaled(&rho_sq.recip()), rho);
        }
        let (g, b, _, _) = best.expect("some probe is outside");
        Probe::Cut(g, b)
    }

    fn det_floor(&self) -> Rational {
        let r_in = lp_inradius(self.body);
        crate::exact::pow_rat(&r_in, 2 * self.body.m as u32)
    }

    fn lattice_free_is_empty(&self) -> bool {
        true
    }
}

/// Radius of a ball the body contains around any of its integer points.
pub(crate) fn lp_inradius(body: &LpBody) -> Rational {
    let s = rat_int(&body.size_bound().max(Integer::from(2)));
    let r_sq = lp_circumscribed_radius_sq(body).expect("nonsingular");
    let c = lp_circumscribed_center(body);
    let n = rat_int(&Integer::from(body.n()));
    let m = rat_int(&Integer::from(body.m));
    // R bounds ‖x‖₂ over the body: ball radius plus the norm of its center
    let r_ball = sqrt_upper(&r_sq, 8) + sqrt_upper(&dot(&c, &c), 8);
    let v_f = sqrt_upper(&body.v().frobenius_sq(), 8);
    let sqrt_n = sqrt_upper(&n, 8);
    let alpha = body.alpha();
    let r_sum = &alpha * &sqrt_n * &v_f + &m * &s;
    let r_prod = &alpha * &sqrt_n * &m * &v_f * &s;
    let r = r_ball.max(r_sum).max(r_prod);
    lp_volume_floor(body, &s, &r).min(lp_integer_inradius(body))
}

fn to_result(out: Outcome, empty_is_error: bool) -> Result<RoundingResult> {
    match out {
        Outcome::Sandwich(inner, rho) => Ok(RoundingResult::Sandwich { inner, rho }),
        Outcome::Flat(outer, direction, val) => Ok(RoundingResult::Flat {
            outer,
            direction,
            val,
        }),
        Outcome::Empty | Outcome::Floor(_) if empty_is_error => Err(Error::Degenerate),
        Outcome::Empty | Outcome::Floor(_) => Ok(RoundingResult::NoIntegerPoint),
    }
}

pub(crate) fn round_polytope_raw(p: &Polytope, cfg: &RoundingConfig) -> Outcome {
    if p.dim() == 1 {
        return interval_outcome(p);
    }
    run(&PolyShape { p }, p.dim(), cfg)
}

pub(crate) fn round_lp_raw(body: &LpBody, cfg: &RoundingConfig) -> Outcome {
    run(&LpShape { body }, body.m, cfg)
}

/// Exact sandwich of a one-dimensional polytope (ρ = 1).
fn interval_outcome(p: &Polytope) -> Outcome {
    let mut lo: Option<Rational> = None;
    let mut hi: Option<Rational> = None;
    for i in 0..p.num_constraints() {
        let a = rat_int(&p.a[(i, 0)]);
        let b = rat_int(&p.beta[i]);
        if a.is_zero() {
            if b.is_negative() {
                return Outcome::Empty;
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
    if lo >= hi {
        return if lo == hi {
            Outcome::Floor(Ellipsoid::ball(vec![lo], Rational::zero()))
        } else {
            Outcome::Empty
        };
    }
    let half = (&hi - &lo) / rat(2, 1);
    let c = (&hi + &lo) / rat(2, 1);
    Outcome::Sandwich(Ellipsoid::ball(vec![c], &half * &half), Rational::one())
}

/// Approximate Löwner–John ellipsoid of a full-dimensional polytope.
pub fn round_polytope(p: &Polytope) -> Result<RoundingResult> {
    round_polytope_with(p, &RoundingConfig::default())
}

pub fn round_polytope_with(p: &Polytope, cfg: &RoundingConfig) -> Result<RoundingResult> {
    to_result(round_polytope_raw(p, cfg), true)
}

/// Approximate Löwner–John ellipsoid of an ℓp-body, or a certificate that
/// it has no integer point.
pub fn round_lp_body(body: &LpBody) -> RoundingResult {
    round_lp_body_with(body, &RoundingConfig::default())
}

pub fn round_lp_body_with(body: &LpBody, cfg: &RoundingConfig) -> RoundingResult {
    to_result(round_lp_raw(body, cfg), false).expect("ℓp rounding never errors")
}
