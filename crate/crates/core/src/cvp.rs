//! Exact closest vector problem by reduction to lattice membership.
//!
//! Inputs are scaled to integers first, so that every lattice distance
//! raised to the k-th power lies on a known grid. Decision asks membership
//! in a norm ball; optimization binary searches the grid; search fixes the
//! parity of one coefficient at a time while doubling the lattice, until
//! plain rounding recovers the closest vector.

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::exact::{
    common_denominator, floor, log2_ceil, pow_int, pow_rat, rat, rat_int, root_upper, to_int_vec,
    to_rat_vec, IntMatrix, IntVector, Integer, RatMatrix, RatVector, Rational,
};
use crate::geometry::{ConvexBody, LpBody, Polytope};
use crate::lattice::LatticeBasis;
use crate::membership::{lmp_solve_with, MembershipConfig, Stats};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormSpec {
    /// ℓp for integer p ≥ 1.
    Lp(u32),
    Infinity,
    /// Gauge of {x : |⟨h_i, x⟩| ≤ β_i for all i}; rows of `h` are the h_i.
    Polyhedral {
        h: IntMatrix,
        beta: IntVector,
    },
}

impl NormSpec {
    pub fn polyhedral(h: IntMatrix, beta: IntVector) -> Result<Self> {
        if h.rows() != beta.len() || beta.iter().any(|b| !b.is_positive()) {
            return Err(Error::InvalidInput(
                "polyhedral norm needs one positive bound per row".into(),
            ));
        }
        if h.to_rat().rank() < h.cols() {
            return Err(Error::InvalidInput(
                "polyhedral norm ball is unbounded".into(),
            ));
        }
        Ok(NormSpec::Polyhedral { h, beta })
    }

    /// k with ‖x‖ᵏ rational for rational x.
    pub fn power(&self) -> u32 {
        match self {
            NormSpec::Lp(p) => *p,
            _ => 1,
        }
    }

    /// ‖x‖ᵏ, exactly.
    pub fn eval_pow(&self, x: &[Rational]) -> Rational {
        match self {
            NormSpec::Lp(p) => x.iter().map(|v| pow_rat(&v.abs(), *p)).sum(),
            NormSpec::Infinity => x.iter().map(|v| v.abs()).max().unwrap_or_default(),
            NormSpec::Polyhedral { h, beta } => (0..h.rows())
                .map(|i| {
                    let s: Rational = h.row(i).iter().zip(x).map(|(a, v)| rat_int(a) * v).sum();
                    s.abs() / rat_int(&beta[i])
                })
                .max()
                .unwrap_or_default(),
        }
    }

    fn check_dim(&self, n: usize) -> Result<()> {
        match self {
            NormSpec::Lp(0) => Err(Error::InvalidInput("ℓp needs p ≥ 1".into())),
            NormSpec::Polyhedral { h, .. } if h.cols() != n => {
                Err(Error::InvalidInput("norm dimension mismatch".into()))
            }
            _ => Ok(()),
        }
    }
}

/// K̃·‖x‖ᵏ ∈ ℕ₀ for integer x, with some K̃ ≤ K.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerableNorm {
    pub k: u32,
    pub big_k: Integer,
}

pub fn enumerability(norm: &NormSpec) -> EnumerableNorm {
    match norm {
        NormSpec::Lp(p) => EnumerableNorm {
            k: *p,
            big_k: Integer::one(),
        },
        NormSpec::Infinity => EnumerableNorm {
            k: 1,
            big_k: Integer::one(),
        },
        NormSpec::Polyhedral { beta, .. } => EnumerableNorm {
            k: 1,
            big_k: beta.iter().product(),
        },
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CvpResult {
    /// Coefficients of the closest vector in the given basis.
    pub coeffs: IntVector,
    pub closest: RatVector,
    /// ‖t − closest‖ᵏ.
    pub distance_pow: Rational,
}

/// Integer-scaled instance: B' = sB, t' = st.
struct Scaled {
    b: IntMatrix,
    t: IntVector,
    s: Integer,
    k: u32,
}

impl Scaled {
    fn new(l: &LatticeBasis, t: &[Rational], norm: &NormSpec) -> Result<Self> {
        let b = l.matrix();
        if t.len() != b.rows() {
            return Err(Error::InvalidInput("target dimension mismatch".into()));
        }
        norm.check_dim(b.rows())?;
        let s = common_denominator(b.data().iter().chain(t));
        let sr = rat_int(&s);
        Ok(Scaled {
            b: b.scale(&sr).to_int().expect("scaled to integers"),
            t: to_int_vec(&t.iter().map(|x| x * &sr).collect::<Vec<_>>()).expect("integral"),
            s,
            k: norm.power(),
        })
    }

    /// Distance powers in scaled units are multiples of this.
    fn grid(&self, norm: &NormSpec) -> Rational {
        Rational::new(Integer::one(), enumerability(norm).big_k)
    }

    fn unscale(&self, x: &Rational) -> Rational {
        x / rat_int(&pow_int(&self.s, self.k))
    }

    fn scale_pow(&self, x: &Rational) -> Rational {
        x * rat_int(&pow_int(&self.s, self.k))
    }
}

/// Coefficients of the orthogonal projection of x onto span(B).
fn coefficients(b: &IntMatrix, x: &[Integer]) -> RatVector {
    let br = b.to_rat();
    let bt = br.transpose();
    bt.mul(&br)
        .solve(&bt.mul_vec(&to_rat_vec(x)))
        .expect("basis has full column rank")
}

fn in_lattice(b: &IntMatrix, x: &[Integer]) -> Option<IntVector> {
    let y = coefficients(b, x);
    let yi = to_int_vec(&y)?;
    (b.mul_vec(&yi) == x).then_some(yi)
}

fn round_half_up(x: &Rational) -> Integer {
    floor(&(x + rat(1, 2)))
}

struct Session<'a> {
    norm: &'a NormSpec,
    cfg: &'a MembershipConfig,
    stats: Stats,
}

impl Session<'_> {
    fn absorb(&mut self, s: Stats) {
        self.stats.recursive_calls += s.recursive_calls;
        self.stats.flatness_calls += s.flatness_calls;
        self.stats.max_coeff_bits = self.stats.max_coeff_bits.max(s.max_coeff_bits);
        self.stats.big_n = self.stats.big_n.clone().max(s.big_n);
    }

    /// ∃u ∈ 𝓛(B): ‖t − u‖ᵏ ≤ r, with integer B and t.
    fn decide(&mut self, b: &IntMatrix, t: &[Integer], r: &Rational) -> Result<bool> {
        if r.is_negative() {
            return Ok(false);
        }
        if r.is_zero() {
            return Ok(in_lattice(b, t).is_some());
        }
        let n = t.len();
        let tr = to_rat_vec(t);
        let body = match self.norm {
            NormSpec::Lp(p) if *p >= 2 => {
                // integer distance powers ≤ r are exactly those < α^p ∈ (⌊r⌋, ⌊r⌋ + 1]
                let f = rat_int(&floor(r));
                let target = &f + rat(1, 2);
                let mut bits = 8;
                let alpha = loop {
                    let a = root_upper(&target, *p, bits);
                    if pow_rat(&a, *p) <= &f + Rational::one() {
                        break a;
                    }
                    bits *= 2;
                };
                ConvexBody::Lp(LpBody::ball(*p, tr, &alpha)?)
            }
            NormSpec::Lp(_) => {
                // ℓ₁: one row per sign pattern
                let mut rows = Vec::with_capacity(1 << n);
                let mut rhs = Vec::with_capacity(1 << n);
                for mask in 0..(1u64 << n) {
                    let row: RatVector = (0..n)
                        .map(|i| {
                            if mask >> i & 1 == 1 {
                                rat(-1, 1)
                            } else {
                                rat(1, 1)
                            }
                        })
                        .collect();
                    let shift: Rational = row.iter().zip(&tr).map(|(a, x)| a * x).sum();
                    rhs.push(r + shift);
                    rows.push(row);
                }
                ConvexBody::Polytope(Polytope::from_rational(&RatMatrix::from_rows(&rows), &rhs)?)
            }
            NormSpec::Infinity => {
                let mut rows = Vec::with_capacity(2 * n);
                let mut rhs = Vec::with_capacity(2 * n);
                for i in 0..n {
                    for sign in [1i64, -1] {
                        let mut row = vec![Rational::zero(); n];
                        row[i] = rat(sign, 1);
                        rhs.push(r + rat(sign, 1) * &tr[i]);
                        rows.push(row);
                    }
                }
                ConvexBody::Polytope(Polytope::from_rational(&RatMatrix::from_rows(&rows), &rhs)?)
            }
            NormSpec::Polyhedral { h, beta } => {
                let mut rows = Vec::with_capacity(2 * h.rows());
                let mut rhs = Vec::with_capacity(2 * h.rows());
                for i in 0..h.rows() {
                    let hi = to_rat_vec(&h.row(i));
                    let ht: Rational = hi.iter().zip(&tr).map(|(a, x)| a * x).sum();
                    for sign in [1i64, -1] {
                        let sg = rat(sign, 1);
                        rows.push(hi.iter().map(|a| a * &sg).collect::<RatVector>());
                        rhs.push(r * rat_int(&beta[i]) + &sg * &ht);
                    }
                }
                ConvexBody::Polytope(Polytope::from_rational(&RatMatrix::from_rows(&rows), &rhs)?)
            }
        };
        let lattice = LatticeBasis::from_int(b)?;
        let (answer, stats) = lmp_solve_with(&body, &lattice, self.cfg)?;
        self.absorb(stats);
        Ok(answer)
    }

    fn distance(&self, b: &IntMatrix, t: &[Integer], y: &[Integer]) -> Rational {
        let u = b.mul_vec(y);
        let diff: RatVector = t.iter().zip(&u).map(|(a, c)| rat_int(&(a - c))).collect();
        self.norm.eval_pow(&diff)
    }

    /// min ‖t − u‖ᵏ over 𝓛(B), by binary search on the grid.
    fn optimize(&mut self, b: &IntMatrix, t: &[Integer], grid: &Rational) -> Result<Rational> {
        let y: IntVector = coefficients(b, t).iter().map(round_half_up).collect();
        let upper = self.distance(b, t, &y);
        let mut hi = (&upper / grid).to_integer();
        debug_assert!(rat_int(&hi) * grid == upper);
        let mut lo = Integer::from(-1);
        while &hi - &lo > Integer::one() {
            let mid: Integer = (&lo + &hi).div_floor(&Integer::from(2));
            if self.decide(b, t, &(rat_int(&mid) * grid))? {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(rat_int(&hi) * grid)
    }

    /// Lower Hölder constant: ‖x‖₂ ≤ 2^{bits}‖x‖ for all x.
    fn inv_c_log2(&self, n: usize) -> i64 {
        let nn = rat_int(&Integer::from(n));
        match self.norm {
            NormSpec::Lp(1) => 0,
            NormSpec::Lp(_) | NormSpec::Infinity => (log2_ceil(&nn) + 1) / 2,
            NormSpec::Polyhedral { h, beta } => {
                let r = h
                    .max_abs()
                    .max(beta.iter().max().cloned().unwrap_or_default());
                let r = r.max(Integer::from(n));
                let nu = n as u32;
                let rp_sq = pow_int(&Integer::from(n), nu + 1) * pow_int(&r, 2 * nu);
                (log2_ceil(&rat_int(&rp_sq)) + 1) / 2
            }
        }
    }

    fn search(&mut self, sc: &Scaled) -> Result<(IntVector, Rational)> {
        let grid = sc.grid(self.norm);
        let b0 = &sc.b;
        let m = b0.cols();
        if let Some(y) = in_lattice(b0, &sc.t) {
            return Ok((y, Rational::zero()));
        }
        let mu = self.optimize(b0, &sc.t, &grid)?;
        let max_b = (0..m)
            .map(|j| self.norm.eval_pow(&to_rat_vec(&b0.col(j))))
            .max()
            .expect("nonempty basis");
        let log_b = (log2_ceil(&max_b) + sc.k as i64 - 1) / sc.k as i64;
        let log_m = log2_ceil(&rat_int(&Integer::from(m)));
        let i_max = (log_m + log_b + 2 + self.inv_c_log2(b0.rows())).max(1);
        let mut b = b0.clone();
        // coefficient (w.r.t. B₀) of the accumulated shift t₀ − t_i
        let mut shift = vec![Integer::zero(); m];
        let mut t = sc.t.clone();
        let mut round = 0;
        loop {
            round += 1;
            for j in 0..m {
                let mut doubled = b.clone();
                for r in 0..doubled.rows() {
                    doubled[(r, j)] *= 2;
                }
                if !self.decide(&doubled, &t, &mu)? {
                    // every closest vector uses an odd multiple of b_j
                    for r in 0..t.len() {
                        t[r] -= &b[(r, j)];
                    }
                    shift[j] += Integer::one() << (round - 1);
                }
                b = doubled;
            }
            if round as i64 >= i_max {
                let beta = coefficients(&b, &t);
                let y: IntVector = beta.iter().map(round_half_up).collect();
                if self.distance(&b, &t, &y) == mu {
                    let scale = Integer::one() << round;
                    let coeffs: IntVector =
                        y.iter().zip(&shift).map(|(a, s)| a * &scale + s).collect();
                    debug_assert_eq!(self.distance(b0, &sc.t, &coeffs), mu);
                    return Ok((coeffs, mu));
                }
            }
        }
    }
}

fn prepare<'a>(
    l: &LatticeBasis,
    t: &[Rational],
    norm: &'a NormSpec,
    cfg: &'a MembershipConfig,
) -> Result<(Scaled, Session<'a>)> {
    let sc = Scaled::new(l, t, norm)?;
    Ok((
        sc,
        Session {
            norm,
            cfg,
            stats: Stats::default(),
        },
    ))
}

/// Is some lattice vector within distance α of t, where r_pow = αᵏ?
pub fn cvp_decision(
    l: &LatticeBasis,
    t: &[Rational],
    norm: &NormSpec,
    r_pow: &Rational,
) -> Result<bool> {
    cvp_decision_with(l, t, norm, r_pow, &MembershipConfig::default()).map(|(a, _)| a)
}

pub fn cvp_decision_with(
    l: &LatticeBasis,
    t: &[Rational],
    norm: &NormSpec,
    r_pow: &Rational,
    cfg: &MembershipConfig,
) -> Result<(bool, Stats)> {
    let (sc, mut session) = prepare(l, t, norm, cfg)?;
    let r = sc.scale_pow(r_pow);
    let answer = session.decide(&sc.b, &sc.t, &r)?;
    Ok((answer, session.stats))
}

/// min over u ∈ L of ‖t − u‖ᵏ.
pub fn cvp_optimize(l: &LatticeBasis, t: &[Rational], norm: &NormSpec) -> Result<Rational> {
    let cfg = MembershipConfig::default();
    let (sc, mut session) = prepare(l, t, norm, &cfg)?;
    let grid = sc.grid(norm);
    let mu = session.optimize(&sc.b, &sc.t, &grid)?;
    Ok(sc.unscale(&mu))
}

pub fn cvp_search(l: &LatticeBasis, t: &[Rational], norm: &NormSpec) -> Result<CvpResult> {
    cvp_search_with(l, t, norm, &MembershipConfig::default()).map(|(r, _)| r)
}

pub fn cvp_search_with(
    l: &LatticeBasis,
    t: &[Rational],
    norm: &NormSpec,
    cfg: &MembershipConfig,
) -> Result<(CvpResult, Stats)> {
    let (sc, mut session) = prepare(l, t, norm, cfg)?;
    let (coeffs, mu) = session.search(&sc)?;
    let closest = l.matrix().mul_vec(&to_rat_vec(&coeffs));
    Ok((
        CvpResult {
            coeffs,
            closest,
            distance_pow: sc.unscale(&mu),
        },
        session.stats,
    ))
}
