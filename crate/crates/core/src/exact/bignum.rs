//! Arbitrary-precision integers and rationals.
//!
//! Newtypes over malachite that speak the num-traits vocabulary (`Zero`,
//! `One`, `Signed`, `num_integer::Integer`, `Roots`, `ToPrimitive`) used
//! throughout the crate. Rationals are always reduced with a positive
//! denominator.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{
    Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Rem, RemAssign, Shl, ShlAssign, Shr,
    ShrAssign, Sub, SubAssign,
};
use std::str::FromStr;

use malachite_base::num::arithmetic::traits::{
    Abs, Ceiling, DivMod, DivRem, ExtendedGcd as _, Floor, FloorRoot, FloorSqrt, Gcd, Lcm, Parity,
    Reciprocal, Sign,
};
use malachite_base::num::basic::traits::{One as MOne, Zero as MZero};
use malachite_base::num::conversion::traits::RoundingFrom;
use malachite_base::num::logic::traits::SignificantBits;
use malachite_base::rounding_modes::RoundingMode;
use malachite_nz::integer::Integer as MInt;
use malachite_q::Rational as MRat;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Integer(MInt);

#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(MRat);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParseNumberError;

impl fmt::Display for ParseNumberError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("invalid number")
    }
}

impl std::error::Error for ParseNumberError {}

// ---------------------------------------------------------------- operators

macro_rules! binop {
    ($t:ident, $tr:ident, $m:ident, $atr:ident, $am:ident) => {
        impl $tr<$t> for $t {
            type Output = $t;
            #[inline]
            fn $m(self, o: $t) -> $t {
                $t(self.0.$m(o.0))
            }
        }
        impl $tr<&$t> for $t {
            type Output = $t;
            #[inline]
            fn $m(self, o: &$t) -> $t {
                $t(self.0.$m(&o.0))
            }
        }
        impl $tr<$t> for &$t {
            type Output = $t;
            #[inline]
            fn $m(self, o: $t) -> $t {
                $t((&self.0).$m(o.0))
            }
        }
        impl $tr<&$t> for &$t {
            type Output = $t;
            #[inline]
            fn $m(self, o: &$t) -> $t {
                $t((&self.0).$m(&o.0))
            }
        }
        impl $atr<$t> for $t {
            #[inline]
            fn $am(&mut self, o: $t) {
                self.0.$am(o.0)
            }
        }
        impl $atr<&$t> for $t {
            #[inline]
            fn $am(&mut self, o: &$t) {
                self.0.$am(&o.0)
            }
        }
    };
}

binop!(Integer, Add, add, AddAssign, add_assign);
binop!(Integer, Sub, sub, SubAssign, sub_assign);
binop!(Integer, Mul, mul, MulAssign, mul_assign);
binop!(Integer, Div, div, DivAssign, div_assign);
binop!(Integer, Rem, rem, RemAssign, rem_assign);
binop!(Rational, Add, add, AddAssign, add_assign);
binop!(Rational, Sub, sub, SubAssign, sub_assign);
binop!(Rational, Mul, mul, MulAssign, mul_assign);
binop!(Rational, Div, div, DivAssign, div_assign);

/// Truncated remainder x − trunc(x/y)·y, as for integers.
impl Rem<Rational> for Rational {
    type Output = Rational;
    fn rem(self, o: Rational) -> Rational {
        &self % &o
    }
}

impl Rem<&Rational> for &Rational {
    type Output = Rational;
    fn rem(self, o: &Rational) -> Rational {
        let q = (self / o).trunc();
        self - &(&q * o)
    }
}

macro_rules! neg {
    ($t:ident) => {
        impl Neg for $t {
            type Output = $t;
            #[inline]
            fn neg(self) -> $t {
                $t(-self.0)
            }
        }
        impl Neg for &$t {
            type Output = $t;
            #[inline]
            fn neg(self) -> $t {
                $t(-&self.0)
            }
        }
    };
}

neg!(Integer);
neg!(Rational);

/// Integer ⊕ primitive, by promotion.
macro_rules! prim_ops {
    ($($p:ty),*) => {$(
        impl From<$p> for Integer {
            #[inline]
            fn from(x: $p) -> Self {
                Integer(MInt::from(x))
            }
        }
        prim_op!($p, Add, add, AddAssign, add_assign);
        prim_op!($p, Sub, sub, SubAssign, sub_assign);
        prim_op!($p, Mul, mul, MulAssign, mul_assign);
        prim_op!($p, Div, div, DivAssign, div_assign);
        prim_op!($p, Rem, rem, RemAssign, rem_assign);
        impl Shl<$p> for Integer {
            type Output = Integer;
            #[inline]
            fn shl(self, s: $p) -> Integer {
                Integer(self.0 << s)
            }
        }
        impl Shl<$p> for &Integer {
            type Output = Integer;
            #[inline]
            fn shl(self, s: $p) -> Integer {
                Integer(&self.0 << s)
            }
        }
        impl Shr<$p> for Integer {
            type Output = Integer;
            #[inline]
            fn shr(self, s: $p) -> Integer {
                Integer(self.0 >> s)
            }
        }
        impl Shr<$p> for &Integer {
            type Output = Integer;
            #[inline]
            fn shr(self, s: $p) -> Integer {
                Integer(&self.0 >> s)
            }
        }
        impl ShlAssign<$p> for Integer {
            #[inline]
            fn shl_assign(&mut self, s: $p) {
                self.0 <<= s;
            }
        }
        impl ShrAssign<$p> for Integer {
            #[inline]
            fn shr_assign(&mut self, s: $p) {
                self.0 >>= s;
            }
        }
    )*};
}

macro_rules! prim_op {
    ($p:ty, $tr:ident, $m:ident, $atr:ident, $am:ident) => {
        impl $tr<$p> for Integer {
            type Output = Integer;
            #[inline]
            fn $m(self, o: $p) -> Integer {
                Integer(self.0.$m(MInt::from(o)))
            }
        }
        impl $tr<$p> for &Integer {
            type Output = Integer;
            #[inline]
            fn $m(self, o: $p) -> Integer {
                Integer((&self.0).$m(MInt::from(o)))
            }
        }
        impl $atr<$p> for Integer {
            #[inline]
            fn $am(&mut self, o: $p) {
                self.0.$am(MInt::from(o))
            }
        }
    };
}

prim_ops!(i8, i16, i32, i64, i128, isize, u8, u16, u32, u64, u128, usize);

/// Rational ⊕ Integer, by promotion.
macro_rules! mixed_op {
    ($tr:ident, $m:ident, $atr:ident, $am:ident) => {
        impl $tr<Integer> for Rational {
            type Output = Rational;
            fn $m(self, o: Integer) -> Rational {
                Rational(self.0.$m(MRat::from(o.0)))
            }
        }
        impl $tr<&Integer> for Rational {
            type Output = Rational;
            fn $m(self, o: &Integer) -> Rational {
                Rational(self.0.$m(MRat::from(&o.0)))
            }
        }
        impl $tr<Integer> for &Rational {
            type Output = Rational;
            fn $m(self, o: Integer) -> Rational {
                Rational((&self.0).$m(MRat::from(o.0)))
            }
        }
        impl $tr<&Integer> for &Rational {
            type Output = Rational;
            fn $m(self, o: &Integer) -> Rational {
                Rational((&self.0).$m(MRat::from(&o.0)))
            }
        }
        impl $atr<Integer> for Rational {
            fn $am(&mut self, o: Integer) {
                self.0.$am(MRat::from(o.0))
            }
        }
        impl $atr<&Integer> for Rational {
            fn $am(&mut self, o: &Integer) {
                self.0.$am(MRat::from(&o.0))
            }
        }
    };
}

mixed_op!(Add, add, AddAssign, add_assign);
mixed_op!(Sub, sub, SubAssign, sub_assign);
mixed_op!(Mul, mul, MulAssign, mul_assign);
mixed_op!(Div, div, DivAssign, div_assign);

macro_rules! folds {
    ($t:ident) => {
        impl Sum for $t {
            fn sum<I: Iterator<Item = $t>>(it: I) -> $t {
                it.fold($t::zero(), |a, b| a + b)
            }
        }
        impl<'a> Sum<&'a $t> for $t {
            fn sum<I: Iterator<Item = &'a $t>>(it: I) -> $t {
                it.fold($t::zero(), |a, b| a + b)
            }
        }
        impl Product for $t {
            fn product<I: Iterator<Item = $t>>(it: I) -> $t {
                it.fold($t::one(), |a, b| a * b)
            }
        }
        impl<'a> Product<&'a $t> for $t {
            fn product<I: Iterator<Item = &'a $t>>(it: I) -> $t {
                it.fold($t::one(), |a, b| a * b)
            }
        }
    };
}

folds!(Integer);
folds!(Rational);

// ------------------------------------------------------------------ Integer

impl Integer {
    /// Bit length of |x|; zero for zero.
    pub fn bits(&self) -> u64 {
        self.0.unsigned_abs_ref().significant_bits()
    }

    /// ⌊√x⌋.
    pub fn sqrt(&self) -> Integer {
        Integer((&self.0).floor_sqrt())
    }

    /// ⌊x^{1/n}⌋; negative x only for odd n.
    pub fn nth_root(&self, n: u32) -> Integer {
        Integer((&self.0).floor_root(u64::from(n)))
    }
}

impl fmt::Display for Integer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for Integer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl FromStr for Integer {
    type Err = ParseNumberError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.strip_prefix('+').unwrap_or(s);
        MInt::from_str(s).map(Integer).map_err(|_| ParseNumberError)
    }
}

impl Zero for Integer {
    fn zero() -> Self {
        Integer(MInt::ZERO)
    }
    fn is_zero(&self) -> bool {
        self.0 == MInt::ZERO
    }
}

impl One for Integer {
    fn one() -> Self {
        Integer(MInt::ONE)
    }
}

impl Num for Integer {
    type FromStrRadixErr = ParseNumberError;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, ParseNumberError> {
        if radix != 10 {
            return Err(ParseNumberError);
        }
        s.parse()
    }
}

impl Signed for Integer {
    fn abs(&self) -> Self {
        Integer((&self.0).abs())
    }
    fn abs_sub(&self, other: &Self) -> Self {
        if self <= other {
            Self::zero()
        } else {
            self - other
        }
    }
    fn signum(&self) -> Self {
        Integer::from(self.0.sign() as i8)
    }
    fn is_positive(&self) -> bool {
        self.0.sign() == Ordering::Greater
    }
    fn is_negative(&self) -> bool {
        self.0.sign() == Ordering::Less
    }
}

impl num_integer::Integer for Integer {
    fn div_floor(&self, other: &Self) -> Self {
        Integer((&self.0).div_mod(&other.0).0)
    }
    fn mod_floor(&self, other: &Self) -> Self {
        Integer((&self.0).div_mod(&other.0).1)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer(MInt::from(
            self.0.unsigned_abs_ref().gcd(other.0.unsigned_abs_ref()),
        ))
    }
    fn lcm(&self, other: &Self) -> Self {
        Integer(MInt::from(
            self.0.unsigned_abs_ref().lcm(other.0.unsigned_abs_ref()),
        ))
    }
    fn extended_gcd(&self, other: &Self) -> num_integer::ExtendedGcd<Self> {
        let (g, x, y) = (&self.0).extended_gcd(&other.0);
        num_integer::ExtendedGcd {
            gcd: Integer(MInt::from(g)),
            x: Integer(x),
            y: Integer(y),
        }
    }
    fn is_multiple_of(&self, other: &Self) -> bool {
        if other.is_zero() {
            return self.is_zero();
        }
        (self % other).is_zero()
    }
    fn is_even(&self) -> bool {
        (&self.0).even()
    }
    fn is_odd(&self) -> bool {
        (&self.0).odd()
    }
    fn div_rem(&self, other: &Self) -> (Self, Self) {
        let (q, r) = (&self.0).div_rem(&other.0);
        (Integer(q), Integer(r))
    }
}

impl num_integer::Roots for Integer {
    fn nth_root(&self, n: u32) -> Self {
        Integer::nth_root(self, n)
    }
    fn sqrt(&self) -> Self {
        Integer::sqrt(self)
    }
}

impl ToPrimitive for Integer {
    fn to_i64(&self) -> Option<i64> {
        i64::try_from(&self.0).ok()
    }
    fn to_u64(&self) -> Option<u64> {
        u64::try_from(&self.0).ok()
    }
    fn to_f64(&self) -> Option<f64> {
        Some(f64::rounding_from(&self.0, RoundingMode::Nearest).0)
    }
}

// ----------------------------------------------------------------- Rational

impl Rational {
    /// n/d in lowest terms; panics if d = 0.
    pub fn new(n: Integer, d: Integer) -> Self {
        assert!(!d.is_zero(), "zero denominator");
        Rational(MRat::from_integers(n.0, d.0))
    }

    pub fn from_integer(n: Integer) -> Self {
        Rational(MRat::from(n.0))
    }

    /// Signed numerator.
    pub fn numer(&self) -> Integer {
        let abs = MInt::from(self.0.numerator_ref());
        if self.0.sign() == Ordering::Less {
            Integer(-abs)
        } else {
            Integer(abs)
        }
    }

    /// Positive denominator.
    pub fn denom(&self) -> Integer {
        Integer(MInt::from(self.0.denominator_ref()))
    }

    pub fn is_integer(&self) -> bool {
        *self.0.denominator_ref() == 1u32
    }

    /// Truncation toward zero.
    pub fn to_integer(&self) -> Integer {
        Integer(MInt::rounding_from(&self.0, RoundingMode::Down).0)
    }

    pub fn floor(&self) -> Rational {
        Rational(MRat::from((&self.0).floor()))
    }

    pub fn ceil(&self) -> Rational {
        Rational(MRat::from((&self.0).ceiling()))
    }

    pub fn trunc(&self) -> Rational {
        Rational::from_integer(self.to_integer())
    }

    /// ⌊x⌋ as an integer.
    pub fn floor_int(&self) -> Integer {
        Integer((&self.0).floor())
    }

    /// ⌈x⌉ as an integer.
    pub fn ceil_int(&self) -> Integer {
        Integer((&self.0).ceiling())
    }

    /// 1/x; panics on zero.
    pub fn recip(&self) -> Rational {
        Rational((&self.0).reciprocal())
    }
}

impl From<Integer> for Rational {
    fn from(n: Integer) -> Self {
        Rational::from_integer(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = ParseNumberError;
    /// `p` or `p/q` with q ≠ 0.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.split_once('/') {
            Some((p, q)) => {
                let p: Integer = p.trim().parse()?;
                let q: Integer = q.trim().parse()?;
                if q.is_zero() {
                    return Err(ParseNumberError);
                }
                Ok(Rational::new(p, q))
            }
            None => Ok(Rational::from_integer(s.trim().parse()?)),
        }
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational(MRat::ZERO)
    }
    fn is_zero(&self) -> bool {
        self.0 == MRat::ZERO
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational(MRat::ONE)
    }
}

impl Num for Rational {
    type FromStrRadixErr = ParseNumberError;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, ParseNumberError> {
        if radix != 10 {
            return Err(ParseNumberError);
        }
        s.parse()
    }
}

impl Signed for Rational {
    fn abs(&self) -> Self {
        Rational((&self.0).abs())
    }
    fn abs_sub(&self, other: &Self) -> Self {
        if self <= other {
            Self::zero()
        } else {
            self - other
        }
    }
    fn signum(&self) -> Self {
        Rational::from_integer(Integer::from(self.0.sign() as i8))
    }
    fn is_positive(&self) -> bool {
        self.0.sign() == Ordering::Greater
    }
    fn is_negative(&self) -> bool {
        self.0.sign() == Ordering::Less
    }
}

impl ToPrimitive for Rational {
    fn to_i64(&self) -> Option<i64> {
        self.to_integer().to_i64()
    }
    fn to_u64(&self) -> Option<u64> {
        self.to_integer().to_u64()
    }
    fn to_f64(&self) -> Option<f64> {
        Some(f64::rounding_from(&self.0, RoundingMode::Nearest).0)
    }
}
