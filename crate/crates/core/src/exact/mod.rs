//! Exact arithmetic substrate: rationals, dense matrices, Hermite normal
//! form, integer kernels, square-root bracketing and LLL.

mod bignum;
mod hnf;
mod lll;
mod matrix;

pub use hnf::{hnf, integer_kernel};
pub use lll::{lll_gram, lll_reduce};
pub use matrix::{is_positive_definite, ldl, IntMatrix, Matrix, RatMatrix};

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

pub use bignum::{Integer, ParseNumberError, Rational};
pub type IntVector = Vec<Integer>;
pub type RatVector = Vec<Rational>;

pub fn int(x: i64) -> Integer {
    Integer::from(x)
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(Integer::from(n), Integer::from(d))
}

pub fn rat_int(x: &Integer) -> Rational {
    Rational::from_integer(x.clone())
}

pub fn to_rat_vec(v: &[Integer]) -> RatVector {
    v.iter().map(rat_int).collect()
}

/// Integer vector if all entries are integral.
pub fn to_int_vec(v: &[Rational]) -> Option<IntVector> {
    v.iter()
        .map(|x| x.is_integer().then(|| x.to_integer()))
        .collect()
}

/// size(p/q) = max(|p|, q).
pub fn size(x: &Rational) -> Integer {
    x.numer().abs().max(x.denom().clone())
}

pub fn size_int(x: &Integer) -> Integer {
    x.abs()
}

pub fn floor(x: &Rational) -> Integer {
    x.floor().to_integer()
}

pub fn ceil(x: &Rational) -> Integer {
    x.ceil().to_integer()
}

pub fn dot<T>(a: &[T], b: &[T]) -> T
where
    T: Zero + Clone,
    for<'a> &'a T: std::ops::Mul<&'a T, Output = T> + std::ops::Add<&'a T, Output = T>,
{
    assert_eq!(a.len(), b.len(), "dot product length mismatch");
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| &acc + &(x * y))
}

pub fn norm2_sq(v: &[Rational]) -> Rational {
    dot(v, v)
}

pub fn vec_sub(a: &[Rational], b: &[Rational]) -> RatVector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_add(a: &[Rational], b: &[Rational]) -> RatVector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_scale(a: &[Rational], s: &Rational) -> RatVector {
    a.iter().map(|x| x * s).collect()
}

/// Least common multiple of all denominators.
pub fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> Integer {
    xs.into_iter()
        .fold(Integer::one(), |acc, x| acc.lcm(&x.denom()))
}

/// Number of bits of |x|, zero for zero.
pub fn bit_length(x: &Integer) -> u64 {
    x.bits()
}

pub fn pow_rat(x: &Rational, e: u32) -> Rational {
    num_traits::pow(x.clone(), e as usize)
}

pub fn pow_int(x: &Integer, e: u32) -> Integer {
    num_traits::pow(x.clone(), e as usize)
}

/// ⌊√x⌋ for rational x ≥ 0.
fn isqrt_floor(x: &Rational) -> Integer {
    floor(x).sqrt()
}

/// ⌊c + sign·√r⌋, exactly.
pub fn floor_add_sqrt(c: &Rational, r: &Rational, sign: i8) -> Result<Integer> {
    if r.is_negative() {
        return Err(Error::NegativeRadicand);
    }
    let positive = sign >= 0;
    // k ≤ c ± √r
    let admissible = |k: &Integer| -> bool {
        let diff = rat_int(k) - c;
        if positive {
            !diff.is_positive() || &diff * &diff <= *r
        } else {
            let gap = -diff;
            !gap.is_negative() && &gap * &gap >= *r
        }
    };
    let s = isqrt_floor(r);
    let mut k = if positive {
        floor(c) + &s
    } else {
        floor(c) - &s - 1
    };
    while !admissible(&k) {
        k -= 1;
    }
    loop {
        let next = &k + 1;
        if admissible(&next) {
            k = next;
        } else {
            return Ok(k);
        }
    }
}

/// ⌈c + sign·√r⌉, exactly.
pub fn ceil_add_sqrt(c: &Rational, r: &Rational, sign: i8) -> Result<Integer> {
    Ok(-floor_add_sqrt(&-c, r, -sign)?)
}

/// Rational in [√r − 2^{-bits}, √r].
pub fn sqrt_lower(r: &Rational, bits: u32) -> Rational {
    assert!(!r.is_negative(), "square root of a negative number");
    let scale = Integer::one() << bits;
    let scaled = r * rat_int(&(&scale * &scale));
    Rational::new(isqrt_floor(&scaled), scale)
}

/// Rational in [√r, √r + 2^{-bits}].
pub fn sqrt_upper(r: &Rational, bits: u32) -> Rational {
    let lo = sqrt_lower(r, bits);
    if &lo * &lo == *r {
        lo
    } else {
        lo + Rational::new(Integer::one(), Integer::one() << bits)
    }
}

/// Rational upper bound on r^{1/p} within 2^{-bits}.
pub fn root_upper(r: &Rational, p: u32, bits: u32) -> Rational {
    assert!(!r.is_negative() && p >= 1);
    let scale = Integer::one() << bits;
    let target = r * rat_int(&pow_int(&scale, p));
    let t = ceil(&target);
    let mut k = t.nth_root(p);
    while rat_int(&pow_int(&k, p)) < target {
        k += 1;
    }
    Rational::new(k, scale)
}

/// Smallest integer L with 2^L ≥ x, for x > 0.
pub fn log2_ceil(x: &Rational) -> i64 {
    assert!(x.is_positive());
    let mut l = bit_length(&x.numer()) as i64 - bit_length(&x.denom()) as i64 + 1;
    let two_pow = |e: i64| -> Rational {
        if e >= 0 {
            rat_int(&(Integer::one() << e as u64))
        } else {
            Rational::new(Integer::one(), Integer::one() << (-e) as u64)
        }
    };
    while two_pow(l - 1) >= *x {
        l -= 1;
    }
    while two_pow(l) < *x {
        l += 1;
    }
    l
}

/// Parses `p/q` or `p`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: Integer = p.trim().parse().map_err(|_| bad())?;
            let q: Integer = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(rat_int(&s.parse().map_err(|_| bad())?)),
    }
}
