//! Convex sets: ellipsoids, polytopes, ℓp-bodies and affine subspaces, with
//! support computations, circumscribed balls, subgradients and volume bounds.

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::exact::{
    common_denominator, dot, ldl, pow_int, pow_rat, rat_int, size, sqrt_upper, to_rat_vec, vec_sub,
    IntMatrix, IntVector, Integer, RatMatrix, RatVector, Rational,
};
use crate::{Error, Result};

/// E(D, c) = {x : (x−c)ᵀD⁻¹(x−c) ≤ 1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ellipsoid {
    pub d: RatMatrix,
    pub c: RatVector,
}

impl Ellipsoid {
    pub fn new(d: RatMatrix, c: RatVector) -> Result<Self> {
        if !d.is_symmetric() || d.rows() != c.len() || ldl(&d).is_none() {
            return Err(Error::NotPositiveDefinite);
        }
        Ok(Ellipsoid { d, c })
    }

    pub fn ball(center: RatVector, radius_sq: Rational) -> Self {
        let n = center.len();
        Ellipsoid {
            d: RatMatrix::identity(n).scale(&radius_sq),
            c: center,
        }
    }

    pub fn dim(&self) -> usize {
        self.c.len()
    }

    /// r⋆E for r² = `r_sq`.
    pub fn scaled(&self, r_sq: &Rational) -> Self {
        Ellipsoid {
            d: self.d.scale(r_sq),
            c: self.c.clone(),
        }
    }

    /// (x−c)ᵀD⁻¹(x−c).
    pub fn gauge_sq(&self, x: &[Rational]) -> Rational {
        let y = vec_sub(x, &self.c);
        let z = self.d.solve(&y).expect("positive definite");
        dot(&y, &z)
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.gauge_sq(x) <= Rational::one()
    }
}

/// Center term ⟨d,c⟩ and radicand dᵀDd: the support interval of E along d is
/// ⟨d,c⟩ ± √(dᵀDd).
pub fn ellipsoid_support(e: &Ellipsoid, d: &[Integer]) -> (Rational, Rational) {
    let dr = to_rat_vec(d);
    let center = dot(&dr, &e.c);
    let radicand = dot(&dr, &e.d.mul_vec(&dr));
    (center, radicand)
}

/// {x : Ax ≤ β} with integer data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope {
    pub a: IntMatrix,
    pub beta: IntVector,
}

impl Polytope {
    pub fn new(a: IntMatrix, beta: IntVector) -> Result<Self> {
        if a.rows() != beta.len() || a.cols() == 0 {
            return Err(Error::InvalidInput("polytope shape mismatch".into()));
        }
        Ok(Polytope { a, beta })
    }

    /// Scales each rational constraint to integers.
    pub fn from_rational(a: &RatMatrix, beta: &[Rational]) -> Result<Self> {
        let mut rows = Vec::with_capacity(a.rows());
        let mut rhs = Vec::with_capacity(a.rows());
        for i in 0..a.rows() {
            let row = a.row(i);
            let den = common_denominator(row.iter().chain(std::iter::once(&beta[i])));
            let den = rat_int(&den);
            rows.push(row.iter().map(|x| (x * &den).to_integer()).collect());
            rhs.push((&beta[i] * &den).to_integer());
        }
        Polytope::new(IntMatrix::from_rows(&rows), rhs)
    }

    pub fn dim(&self) -> usize {
        self.a.cols()
    }

    pub fn num_constraints(&self) -> usize {
        self.a.rows()
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        (0..self.a.rows()).all(|i| self.slack(i, x) >= Rational::zero())
    }

    /// β_i − ⟨a_i, x⟩.
    pub fn slack(&self, i: usize, x: &[Rational]) -> Rational {
        let mut s = rat_int(&self.beta[i]);
        for (j, xj) in x.iter().enumerate() {
            let a = &self.a[(i, j)];
            if !a.is_zero() {
                s -= rat_int(a) * xj;
            }
        }
        s
    }

    /// max(n, s, |a_ij|, |β_i|).
    pub fn size(&self) -> Integer {
        let mut r = Integer::from(self.dim().max(self.num_constraints()));
        r = r.max(self.a.max_abs());
        for b in &self.beta {
            r = r.max(b.abs());
        }
        r
    }

    pub fn translate(&self, v: &[Integer]) -> Polytope {
        let shift = self.a.mul_vec(v);
        Polytope {
            a: self.a.clone(),
            beta: self.beta.iter().zip(shift).map(|(b, s)| b + s).collect(),
        }
    }
}

/// (t_box, h_inner_sq): every vertex lies in [−t_box, t_box]ⁿ, and for a
/// symmetric polytope the ball of squared radius h_inner_sq is inside.
pub fn polytope_bounds(p: &Polytope) -> (Integer, Rational) {
    let n = p.dim() as u32;
    let r = p.size();
    // ⌈n^{n/2} rⁿ⌉ = ⌈√(nⁿ r^{2n})⌉
    let sq = pow_int(&Integer::from(n), n) * pow_int(&r, 2 * n);
    let mut t = sq.sqrt();
    if &t * &t < sq {
        t += 1;
    }
    let h = (0..p.num_constraints())
        .filter_map(|i| {
            let row = p.a.row(i);
            let nsq: Integer = row.iter().map(|x| x * x).sum();
            (!nsq.is_zero()).then(|| Rational::new(&p.beta[i] * &p.beta[i], nsq))
        })
        .min()
        .unwrap_or_else(Rational::zero);
    (t, h)
}

/// B^{(p,V)}_{m,n}(t, α) = {x ∈ ℝᵐ : α_d^p ‖V⁻¹((x,0) − t)‖_p^p − α_n^p < 0}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpBody {
    pub p: u32,
    pub v_inv: RatMatrix,
    pub t: RatVector,
    pub alpha_n: Integer,
    pub alpha_d: Integer,
    pub m: usize,
}

impl LpBody {
    pub fn new(p: u32, v_inv: RatMatrix, t: RatVector, alpha: &Rational, m: usize) -> Result<Self> {
        let n = v_inv.rows();
        if p < 2 {
            return Err(Error::InvalidInput("ℓp-body needs p ≥ 2".into()));
        }
        if !v_inv.is_square() || t.len() != n || m == 0 || m > n {
            return Err(Error::InvalidInput("ℓp-body shape mismatch".into()));
        }
        if !alpha.is_positive() {
            return Err(Error::InvalidInput(
                "ℓp-body radius must be positive".into(),
            ));
        }
        if v_inv.det().is_zero() {
            return Err(Error::Singular);
        }
        Ok(LpBody {
            p,
            v_inv,
            t,
            alpha_n: alpha.numer().clone(),
            alpha_d: alpha.denom().clone(),
            m,
        })
    }

    /// Full-dimensional ball {x : ‖x − t‖_p < α}.
    pub fn ball(p: u32, t: RatVector, alpha: &Rational) -> Result<Self> {
        let n = t.len();
        LpBody::new(p, RatMatrix::identity(n), t, alpha, n)
    }

    pub fn n(&self) -> usize {
        self.v_inv.rows()
    }

    pub fn alpha(&self) -> Rational {
        Rational::new(self.alpha_n.clone(), self.alpha_d.clone())
    }

    /// V⁻¹((x,0) − t).
    pub fn inner(&self, x: &[Rational]) -> RatVector {
        assert_eq!(x.len(), self.m, "point dimension mismatch");
        let mut y = self.t.iter().map(|v| -v.clone()).collect::<RatVector>();
        for (yi, xi) in y.iter_mut().zip(x) {
            *yi += xi;
        }
        self.v_inv.mul_vec(&y)
    }

    /// F(x).
    pub fn potential(&self, x: &[Rational]) -> Rational {
        let u = self.inner(x);
        let s: Rational = u.iter().map(|ui| pow_rat(&ui.abs(), self.p)).sum();
        rat_int(&pow_int(&self.alpha_d, self.p)) * s - rat_int(&pow_int(&self.alpha_n, self.p))
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.potential(x).is_negative()
    }

    /// Largest size of any entry of V⁻¹, t, α_n, α_d.
    pub fn size_bound(&self) -> Integer {
        let mut s = self.alpha_n.abs().max(self.alpha_d.clone());
        for x in self.v_inv.data().iter().chain(&self.t) {
            s = s.max(size(x));
        }
        s
    }

    /// max(m, n, sizes of V⁻¹, t, α).
    pub fn size(&self) -> Integer {
        self.size_bound().max(Integer::from(self.n()))
    }

    pub fn v(&self) -> RatMatrix {
        self.v_inv.inverse().expect("nonsingular by construction")
    }
}

/// Subgradient of F at y: p·α_d^p·(first m coords of V⁻ᵀ ḡ) with
/// ḡ_i = sign(u_i)|u_i|^{p−1}, u = V⁻¹((y,0) − t).
pub fn lp_subgradient(body: &LpBody, y: &[Rational]) -> RatVector {
    let u = body.inner(y);
    let gbar: RatVector = u
        .iter()
        .map(|ui| {
            let mag = pow_rat(&ui.abs(), body.p - 1);
            if ui.is_negative() {
                -mag
            } else {
                mag
            }
        })
        .collect();
    let scale = rat_int(&(Integer::from(body.p) * pow_int(&body.alpha_d, body.p)));
    let full = body.v_inv.transpose().mul_vec(&gbar);
    full[..body.m].iter().map(|g| g * &scale).collect()
}

/// None if y is inside; otherwise a direction g with ⟨g,x⟩ < ⟨g,y⟩ on the body.
pub fn lp_separate(body: &LpBody, y: &[Rational]) -> Result<Option<RatVector>> {
    if body.contains(y) {
        return Ok(None);
    }
    let g = lp_subgradient(body, y);
    if g.iter().all(Zero::is_zero) {
        return Err(Error::ZeroSubgradientOutside);
    }
    Ok(Some(g))
}

/// Upper bound α²·n·‖V‖_F² on the squared radius of a Euclidean ball around
/// the projection of t containing the body.
pub fn lp_circumscribed_radius_sq(body: &LpBody) -> Result<Rational> {
    let v = body.v_inv.inverse()?;
    let a = body.alpha();
    Ok(&a * &a * rat_int(&Integer::from(body.n())) * v.frobenius_sq())
}

pub fn lp_circumscribed_center(body: &LpBody) -> RatVector {
    body.t[..body.m].to_vec()
}

/// (S^{2n²p} · m·(α_d n S² R)^{p+1})⁻¹.
pub fn lp_volume_floor(body: &LpBody, s: &Rational, r: &Rational) -> Rational {
    let n = body.n() as u32;
    let p = body.p;
    let m = rat_int(&Integer::from(body.m));
    let inner = rat_int(&body.alpha_d) * rat_int(&Integer::from(n)) * s * s * r;
    (pow_rat(s, 2 * n * n * p) * m * pow_rat(&inner, p + 1)).recip()
}

/// Integer K with K·F(x) ∈ ℤ for every integer x.
fn potential_denominator(body: &LpBody) -> Integer {
    let wt = body.v_inv.mul_vec(&body.t);
    let mut k = Integer::one();
    for i in 0..body.n() {
        let row = body.v_inv.row(i);
        let den = common_denominator(row[..body.m].iter().chain(std::iter::once(&wt[i])));
        k = k.lcm(&pow_int(&den, body.p));
    }
    k
}

/// Radius r ≤ 1 such that the body contains the ball B(x, r) around each of
/// its integer points x. Derived from K·F(x) ∈ ℤ and a subgradient bound on
/// the unit neighbourhood of the body.
pub fn lp_integer_inradius(body: &LpBody) -> Rational {
    let k = rat_int(&potential_denominator(body));
    let w_f = sqrt_upper(&body.v_inv.frobenius_sq(), 16);
    let sqrt_n = sqrt_upper(&rat_int(&Integer::from(body.n())), 16);
    let u = body.alpha() + &w_f;
    let grad = rat_int(&(Integer::from(body.p) * pow_int(&body.alpha_d, body.p)))
        * &w_f
        * sqrt_n
        * pow_rat(&u, body.p - 1);
    let two = rat_int(&Integer::from(2));
    let r = (two * k * grad).recip();
    r.min(Rational::one())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hyperplane {
    pub d: IntVector,
    pub k: Integer,
}

impl Hyperplane {
    pub fn new(d: IntVector, k: Integer) -> Self {
        assert!(d.iter().any(|x| !x.is_zero()), "zero normal");
        Hyperplane { d, k }
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        dot(&to_rat_vec(&self.d), x) == rat_int(&self.k)
    }
}

/// Intersection of hyperplanes; empty list means the whole space.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AffineSubspace {
    hyperplanes: Vec<Hyperplane>,
}

impl AffineSubspace {
    pub fn new(hyperplanes: Vec<Hyperplane>) -> Self {
        AffineSubspace { hyperplanes }
    }

    pub fn whole() -> Self {
        Self::default()
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn with(&self, extra: impl IntoIterator<Item = Hyperplane>) -> Self {
        let mut h = self.hyperplanes.clone();
        h.extend(extra);
        AffineSubspace { hyperplanes: h }
    }

    /// Normals as rows.
    pub fn normal_matrix(&self, n: usize) -> IntMatrix {
        if self.hyperplanes.is_empty() {
            return IntMatrix::zeros(0, n);
        }
        IntMatrix::from_rows(
            &self
                .hyperplanes
                .iter()
                .map(|h| h.d.clone())
                .collect::<Vec<_>>(),
        )
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.hyperplanes.iter().all(|h| h.contains(x))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConvexBody {
    Polytope(Polytope),
    Lp(LpBody),
}

impl ConvexBody {
    pub fn dim(&self) -> usize {
        match self {
            ConvexBody::Polytope(p) => p.dim(),
            ConvexBody::Lp(b) => b.m,
        }
    }

    /// Polytopes are closed, ℓp-bodies open.
    pub fn contains(&self, x: &[Rational]) -> bool {
        match self {
            ConvexBody::Polytope(p) => p.contains(x),
            ConvexBody::Lp(b) => b.contains(x),
        }
    }
}
