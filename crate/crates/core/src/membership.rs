//! Recursive lattice membership: flatness directions split the body into
//! hyperplane slices, and each slice is rewritten with small coefficients
//! before recursing.

use num_traits::{One, Signed, Zero};

use crate::diophantine::{replace_hyperplane, Replacement};
use crate::exact::{
    ceil, hnf, integer_kernel, pow_int, rat_int, sqrt_upper, to_rat_vec, IntMatrix, IntVector,
    Integer, RatMatrix, RatVector, Rational,
};
use crate::flatness::{flatness_lp_with, flatness_polytope_with, FlatnessOutcome};
use crate::geometry::{AffineSubspace, ConvexBody, Hyperplane, LpBody, Polytope};
use crate::lattice::{integer_point_in_subspace, LatticeBasis};
use crate::rounding::RoundingConfig;
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct MembershipConfig {
    /// Recurse on the raw slice hyperplanes instead of their replacements.
    pub no_replacement: bool,
    /// Inputs of larger dimension are refused.
    pub max_dimension: usize,
    pub rounding_bits: Option<u32>,
}

impl Default for MembershipConfig {
    fn default() -> Self {
        MembershipConfig {
            no_replacement: false,
            max_dimension: 8,
            rounding_bits: None,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    pub recursive_calls: u64,
    pub flatness_calls: u64,
    /// Bit length of the largest coefficient of any hyperplane the
    /// recursion introduced.
    pub max_coeff_bits: u64,
    /// Radius parameter N of the replacement ball (‖z‖₁ ≤ N − 1).
    pub big_n: Integer,
}

#[derive(Clone, Debug)]
pub struct MembershipInstance {
    pub body: ConvexBody,
    pub subspace: AffineSubspace,
}

/// τ(x) = V̄(x − v), mapping ℤⁿ ∩ H onto ℤᵐ × {0}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauTransform {
    pub v: IntVector,
    pub vbar: IntMatrix,
    pub vbar_inv: IntMatrix,
    pub m: usize,
}

impl TauTransform {
    pub fn apply(&self, x: &[Rational]) -> RatVector {
        let diff: RatVector = x.iter().zip(&self.v).map(|(a, b)| a - rat_int(b)).collect();
        self.vbar.to_rat().mul_vec(&diff)
    }

    pub fn invert(&self, y: &[Rational]) -> RatVector {
        let x = self.vbar_inv.to_rat().mul_vec(y);
        x.iter().zip(&self.v).map(|(a, b)| a + rat_int(b)).collect()
    }

    /// Columns of V̄⁻¹ spanning the direction space of H.
    pub fn kernel(&self) -> IntMatrix {
        self.vbar_inv.col_range(0, self.m)
    }

    /// V̄ᵀ(d̃, 0).
    pub fn pull_back(&self, d: &[Integer]) -> IntVector {
        let mut full = d.to_vec();
        full.resize(self.vbar.rows(), Integer::zero());
        self.vbar.transpose().mul_vec(&full)
    }
}

pub fn build_tau(h: &AffineSubspace, n: usize) -> Result<TauTransform> {
    let v = integer_point_in_subspace(h, n)?.ok_or(Error::NoIntegerPointInSubspace)?;
    let m = n - h.len();
    if m == n {
        return Ok(TauTransform {
            v: vec![Integer::zero(); n],
            vbar: IntMatrix::identity(n),
            vbar_inv: IntMatrix::identity(n),
            m,
        });
    }
    let k = integer_kernel(&h.normal_matrix(n));
    debug_assert_eq!(k.cols(), m);
    if m == 0 {
        return Ok(TauTransform {
            v,
            vbar: IntMatrix::identity(n),
            vbar_inv: IntMatrix::identity(n),
            m,
        });
    }
    // Kᵀ·U = [I | 0] because the kernel lattice is saturated, so Uᵀ is τ's matrix
    let (hm, u) = hnf(&k.transpose());
    debug_assert!(hm.col_range(0, m) == IntMatrix::identity(m));
    let vbar = u.transpose();
    let vbar_inv = vbar
        .to_rat()
        .inverse()?
        .to_int()
        .expect("unimodular matrix has an integer inverse");
    Ok(TauTransform {
        v,
        vbar,
        vbar_inv,
        m,
    })
}

/// ‖z‖₁ ≤ N − 1 for every integer point of the body.
fn replacement_radius(body: &ConvexBody) -> Integer {
    match body {
        ConvexBody::Polytope(p) => {
            let n = p.dim() as u32;
            let sq = pow_int(&Integer::from(n), n + 3);
            let mut root = sq.sqrt();
            if &root * &root < sq {
                root += 1;
            }
            root * pow_int(&p.size(), n) + 1
        }
        ConvexBody::Lp(b) => {
            let n = Integer::from(b.m);
            let big = Integer::from(b.n());
            let v_f = sqrt_upper(&b.v().frobenius_sq(), 8);
            let r = rat_int(&b.size());
            let base: Integer =
                ceil(&(rat_int(&(Integer::from(2) * &n)) * &r * v_f.clone().max(Rational::one())))
                    + 1;
            // (x,0) = t + Vu with ‖u‖₂ ≤ √N‖u‖_p < √N·α
            let t1: Rational = b.t.iter().map(|x| x.abs()).sum();
            let bound = t1 + rat_int(&big) * b.alpha() * v_f;
            base.max(ceil(&bound) + 2)
        }
    }
}

struct Driver<'a> {
    body: &'a ConvexBody,
    n: usize,
    big_n: Integer,
    cfg: &'a MembershipConfig,
    rounding: RoundingConfig,
    stats: Stats,
}

impl Driver<'_> {
    fn contains_int(&self, x: &[Integer]) -> bool {
        self.body.contains(&to_rat_vec(x))
    }

    fn slice_body(&self, tau: &TauTransform) -> Result<Option<ConvexBody>> {
        match self.body {
            ConvexBody::Polytope(p) => {
                let k = tau.kernel();
                let a = p.a.mul(&k);
                let shift = p.a.mul_vec(&tau.v);
                let beta: IntVector = p.beta.iter().zip(shift).map(|(b, s)| b - s).collect();
                // rows vanishing on H are constant constraints
                let mut rows = Vec::new();
                let mut rhs = Vec::new();
                for i in 0..a.rows() {
                    let row = a.row(i);
                    if row.iter().all(Zero::is_zero) {
                        if beta[i].is_negative() {
                            return Ok(None);
                        }
                    } else {
                        rows.push(row);
                        rhs.push(beta[i].clone());
                    }
                }
                if rows.is_empty() {
                    panic!("slice of a bounded polytope must stay bounded");
                }
                Ok(Some(ConvexBody::Polytope(Polytope::new(
                    IntMatrix::from_rows(&rows),
                    rhs,
                )?)))
            }
            ConvexBody::Lp(b) => {
                let big = b.n();
                let t_mat = tau
                    .vbar_inv
                    .to_rat()
                    .block_diag(&RatMatrix::identity(big - self.n));
                let t_inv = tau
                    .vbar
                    .to_rat()
                    .block_diag(&RatMatrix::identity(big - self.n));
                let mut shifted = b.t.clone();
                for (s, v) in shifted.iter_mut().zip(&tau.v) {
                    *s -= rat_int(v);
                }
                let body = LpBody::new(
                    b.p,
                    b.v_inv.mul(&t_mat),
                    t_inv.mul_vec(&shifted),
                    &b.alpha(),
                    tau.m,
                )?;
                Ok(Some(ConvexBody::Lp(body)))
            }
        }
    }

    fn flatness(&mut self, body: &ConvexBody) -> Result<FlatnessOutcome> {
        self.stats.flatness_calls += 1;
        match body {
            ConvexBody::Polytope(p) => flatness_polytope_with(p, &self.rounding),
            ConvexBody::Lp(b) => Ok(flatness_lp_with(b, &self.rounding)),
        }
    }

    fn record(&mut self, planes: &[Hyperplane]) {
        for h in planes {
            for x in h.d.iter().chain(std::iter::once(&h.k)) {
                self.stats.max_coeff_bits = self.stats.max_coeff_bits.max(x.bits());
            }
        }
    }

    fn solve(&mut self, h: &AffineSubspace, depth: usize) -> Result<bool> {
        self.stats.recursive_calls += 1;
        if depth > self.n {
            return Err(Error::DepthExceeded);
        }
        let tau = match build_tau(h, self.n) {
            Ok(t) => t,
            Err(Error::NoIntegerPointInSubspace) => return Ok(false),
            Err(e) => return Err(e),
        };
        if tau.m == 0 {
            return Ok(self.contains_int(&tau.v));
        }
        let Some(slice) = self.slice_body(&tau)? else {
            return Ok(false);
        };
        let (d, k_min, k_max) = match self.flatness(&slice)? {
            FlatnessOutcome::ContainsInteger => return Ok(true),
            FlatnessOutcome::NoInteger => return Ok(false),
            FlatnessOutcome::Direction { d, k_min, k_max } => (d, k_min, k_max),
        };
        let d_m = tau.pull_back(&d);
        let offset: Integer = d_m.iter().zip(&tau.v).map(|(a, b)| a * b).sum();
        let mut k = k_min;
        while k <= k_max {
            let rhs = &k + &offset;
            k += 1;
            let planes = if self.cfg.no_replacement {
                vec![Hyperplane::new(d_m.clone(), rhs)]
            } else {
                match replace_hyperplane(h, &d_m, &rhs, &self.big_n)? {
                    Replacement::Hyperplanes(p) => p,
                    Replacement::Infeasible => continue,
                }
            };
            self.record(&planes);
            if self.solve(&h.with(planes), depth + 1)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

pub fn membership(inst: &MembershipInstance, cfg: &MembershipConfig) -> Result<bool> {
    membership_with_stats(inst, cfg).map(|(a, _)| a)
}

/// Decides whether body ∩ H contains an integer point.
pub fn membership_with_stats(
    inst: &MembershipInstance,
    cfg: &MembershipConfig,
) -> Result<(bool, Stats)> {
    let n = inst.body.dim();
    if n > cfg.max_dimension {
        return Err(Error::DimensionTooLarge(n, cfg.max_dimension));
    }
    for h in inst.subspace.hyperplanes() {
        if h.d.len() != n {
            return Err(Error::InvalidInput("hyperplane dimension mismatch".into()));
        }
    }
    let big_n = replacement_radius(&inst.body);
    let mut driver = Driver {
        body: &inst.body,
        n,
        big_n: big_n.clone(),
        cfg,
        rounding: RoundingConfig {
            rounding_bits: cfg.rounding_bits,
        },
        stats: Stats {
            big_n,
            ..Stats::default()
        },
    };
    let answer = driver.solve(&inst.subspace, 0)?;
    Ok((answer, driver.stats))
}

/// Pulls the body back along the lattice basis: y ↦ By.
pub fn pull_back_body(body: &ConvexBody, l: &LatticeBasis) -> Result<ConvexBody> {
    let b = l.matrix();
    if b.rows() != body.dim() {
        return Err(Error::InvalidInput(
            "lattice and body dimensions differ".into(),
        ));
    }
    let m = l.rank();
    match body {
        ConvexBody::Polytope(p) => {
            let ab = p.a.to_rat().mul(b);
            let beta: RatVector = p.beta.iter().map(rat_int).collect();
            Ok(ConvexBody::Polytope(Polytope::from_rational(&ab, &beta)?))
        }
        ConvexBody::Lp(body) => {
            // extend (B; 0) by unit vectors to a nonsingular B̂
            let big = body.n();
            let mut cols: Vec<RatVector> = b
                .col_vecs()
                .into_iter()
                .map(|mut c| {
                    c.resize(big, Rational::zero());
                    c
                })
                .collect();
            for i in 0..big {
                if cols.len() == big {
                    break;
                }
                let mut e = vec![Rational::zero(); big];
                e[i] = Rational::one();
                cols.push(e);
                if RatMatrix::from_cols(&cols).rank() < cols.len() {
                    cols.pop();
                }
            }
            let bhat = RatMatrix::from_cols(&cols);
            let t = bhat.solve(&body.t)?;
            Ok(ConvexBody::Lp(LpBody::new(
                body.p,
                body.v_inv.mul(&bhat),
                t,
                &body.alpha(),
                m,
            )?))
        }
    }
}

/// Decides whether the body contains a point of L.
pub fn lmp_solve(body: &ConvexBody, l: &LatticeBasis) -> Result<bool> {
    lmp_solve_with(body, l, &MembershipConfig::default()).map(|(a, _)| a)
}

pub fn lmp_solve_with(
    body: &ConvexBody,
    l: &LatticeBasis,
    cfg: &MembershipConfig,
) -> Result<(bool, Stats)> {
    let pulled = pull_back_body(body, l)?;
    membership_with_stats(
        &MembershipInstance {
            body: pulled,
            subspace: AffineSubspace::whole(),
        },
        cfg,
    )
}
