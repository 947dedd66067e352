//! Exact coefficient arithmetic.
//!
//! [`Scalar`] is an arbitrary-precision rational (the base field is ℚ, a field of
//! characteristic zero — everything in this crate is exact, there is no floating
//! point anywhere). [`SymScalar`] is a univariate polynomial in the algebra
//! parameter ξ with `Scalar` coefficients, used where multiplication identities
//! are genuinely polynomial in ξ.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::PaError;

/// An exact rational number `p/q` with `q > 0` and `gcd(|p|, q) = 1`.
///
/// The normalization invariants are maintained by the underlying
/// representation on every operation; zero is stored as `0/1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Scalar(BigRational);

impl Scalar {
    /// The rational `p/q`. Fails if `q = 0`.
    pub fn new(p: BigInt, q: BigInt) -> Result<Self, PaError> {
        if q.is_zero() {
            return Err(PaError::ZeroDenominator);
        }
        Ok(Scalar(BigRational::new(p, q)))
    }

    /// The integer `n` as a scalar.
    pub fn from_int(n: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(n)))
    }

    /// The integer `n` as a scalar.
    pub fn from_bigint(n: BigInt) -> Self {
        Scalar(BigRational::from_integer(n))
    }

    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// The value as an integer, when the denominator is 1.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.0.numer().clone())
    }

    pub fn abs(&self) -> Self {
        Scalar(self.0.abs())
    }

    /// Multiplicative inverse. Fails on zero.
    pub fn recip(&self) -> Result<Self, PaError> {
        if self.is_zero() {
            return Err(PaError::DivisionByZero);
        }
        Ok(Scalar(self.0.recip()))
    }

    /// The falling factorial `(x)_ℓ = x(x−1)⋯(x−ℓ+1)`, with `(x)_0 = 1`.
    ///
    /// For a nonnegative integer `m`, `(m)_ℓ = 0` whenever `ℓ > m`.
    pub fn falling_factorial(&self, ell: usize) -> Self {
        let mut acc = BigRational::one();
        for j in 0..ell {
            acc *= &self.0 - BigRational::from_integer(BigInt::from(j));
        }
        Scalar(acc)
    }

    /// `self^e` for a nonnegative exponent, with `x^0 = 1` (including `0^0 = 1`).
    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc *= self.clone();
        }
        acc
    }
}

/// `m!` as a big integer.
pub fn factorial(m: usize) -> BigInt {
    let mut acc = BigInt::one();
    for j in 2..=m {
        acc *= BigInt::from(j);
    }
    acc
}

/// The binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

/// The integer falling factorial `(n)_ℓ` for integer `n` (possibly negative).
pub fn falling_factorial_int(n: i64, ell: usize) -> BigInt {
    let mut acc = BigInt::one();
    for j in 0..ell {
        acc *= BigInt::from(n) - BigInt::from(j as i64);
    }
    acc
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar(self.0 $op rhs.0)
            }
        }
        impl<'a> $trait<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                Scalar(self.0 $op &rhs.0)
            }
        }
        impl<'a> $trait<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar(&self.0 $op rhs.0)
            }
        }
        impl<'a, 'b> $trait<&'b Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'b Scalar) -> Scalar {
                Scalar(&self.0 $op &rhs.0)
            }
        }
    };
}

forward_binop!(Add, add, +);
forward_binop!(Sub, sub, -);
forward_binop!(Mul, mul, *);

impl Div for Scalar {
    type Output = Scalar;
    /// Exact division; panics on a zero divisor (callers divide only by
    /// pivots/constants already known to be nonzero).
    fn div(self, rhs: Scalar) -> Scalar {
        assert!(!rhs.is_zero(), "scalar division by zero");
        Scalar(self.0 / rhs.0)
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &'a Scalar) -> Scalar {
        assert!(!rhs.is_zero(), "scalar division by zero");
        Scalar(&self.0 / &rhs.0)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl<'a> Neg for &'a Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        self.0 += rhs.0;
    }
}

impl SubAssign for Scalar {
    fn sub_assign(&mut self, rhs: Scalar) {
        self.0 -= rhs.0;
    }
}

impl MulAssign for Scalar {
    fn mul_assign(&mut self, rhs: Scalar) {
        self.0 *= rhs.0;
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigInt> for Scalar {
    fn from(n: BigInt) -> Self {
        Scalar::from_bigint(n)
    }
}

impl fmt::Display for Scalar {
    /// `"p/q"`, with the `/q` omitted when the denominator is 1.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Scalar {
    type Err = PaError;

    fn from_str(s: &str) -> Result<Self, PaError> {
        let s = s.trim();
        let bad = || PaError::BadScalar(s.to_string());
        match s.split_once('/') {
            None => {
                let p: BigInt = s.parse().map_err(|_| bad())?;
                Ok(Scalar::from_bigint(p))
            }
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().map_err(|_| bad())?;
                let q: BigInt = q.trim().parse().map_err(|_| bad())?;
                Scalar::new(p, q).map_err(|_| bad())
            }
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(DeError::custom)
    }
}

/// A polynomial in the indeterminate ξ over [`Scalar`], coefficients stored
/// lowest degree first with no trailing zero (the zero polynomial is the empty
/// coefficient list).
#[derive(Clone, PartialEq, Eq, Default)]
pub struct SymScalar {
    coeffs: Vec<Scalar>,
}

impl SymScalar {
    pub fn zero() -> Self {
        SymScalar { coeffs: vec![] }
    }

    pub fn one() -> Self {
        SymScalar::constant(Scalar::one())
    }

    /// The constant polynomial `c`.
    pub fn constant(c: Scalar) -> Self {
        SymScalar::from_coeffs(vec![c])
    }

    /// The indeterminate ξ itself.
    pub fn xi() -> Self {
        SymScalar::from_coeffs(vec![Scalar::zero(), Scalar::one()])
    }

    /// Builds a polynomial from coefficients (lowest degree first), trimming
    /// trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        SymScalar { coeffs }
    }

    /// Coefficients, lowest degree first (empty for the zero polynomial).
    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree of the polynomial; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Exact evaluation at `x` by Horner's rule.
    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// The falling factorial `(p)_ℓ = p(p−1)⋯(p−ℓ+1)` with `(p)_0 = 1`.
    pub fn falling_factorial(&self, ell: usize) -> Self {
        let mut acc = SymScalar::one();
        for j in 0..ell {
            let shifted = self.clone() - SymScalar::constant(Scalar::from_int(j as i64));
            acc = acc * shifted;
        }
        acc
    }

    /// `self^e` with `p^0 = 1`.
    pub fn pow(&self, e: usize) -> Self {
        let mut acc = SymScalar::one();
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }
}

impl Add for SymScalar {
    type Output = SymScalar;
    fn add(self, rhs: SymScalar) -> SymScalar {
        let (mut long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self.coeffs, rhs.coeffs)
        } else {
            (rhs.coeffs, self.coeffs)
        };
        for (i, c) in short.into_iter().enumerate() {
            long[i] += c;
        }
        SymScalar::from_coeffs(long)
    }
}

impl Sub for SymScalar {
    type Output = SymScalar;
    fn sub(self, rhs: SymScalar) -> SymScalar {
        self + (-rhs)
    }
}

impl Neg for SymScalar {
    type Output = SymScalar;
    fn neg(self) -> SymScalar {
        SymScalar {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for SymScalar {
    type Output = SymScalar;
    fn mul(self, rhs: SymScalar) -> SymScalar {
        if self.is_zero() || rhs.is_zero() {
            return SymScalar::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        SymScalar::from_coeffs(out)
    }
}

impl fmt::Display for SymScalar {
    /// Human form, e.g. `xi^2 - 3*xi + 1`; the zero polynomial prints `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c < &Scalar::zero() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c < &Scalar::zero() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match d {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if d == 1 {
                        write!(f, "xi")?;
                    } else {
                        write!(f, "xi^{d}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SymScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for SymScalar {
    /// Serialized as an array of scalar strings, lowest degree first.
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let strings: Vec<String> = self.coeffs.iter().map(Scalar::to_string).collect();
        strings.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SymScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let strings = Vec::<String>::deserialize(deserializer)?;
        let coeffs = strings
            .iter()
            .map(|s| s.parse::<Scalar>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(DeError::custom)?;
        Ok(SymScalar::from_coeffs(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: i64) -> Scalar {
        Scalar::from_int(v)
    }

    #[test]
    fn falling_factorial_values() {
        assert_eq!(s(3).falling_factorial(2), s(6));
        assert_eq!(s(3).falling_factorial(0), s(1));
        // (m)_ℓ = 0 when ℓ exceeds a nonnegative integer m
        assert_eq!(s(3).falling_factorial(4), s(0));
        assert_eq!(s(5).falling_factorial(5), s(120));
        let xi = SymScalar::xi();
        assert_eq!(
            xi.falling_factorial(2),
            SymScalar::from_coeffs(vec![s(0), s(-1), s(1)]) // ξ² − ξ
        );
    }

    #[test]
    fn eval_is_exact_and_homomorphic() {
        let p = SymScalar::xi().falling_factorial(2);
        assert_eq!(p.eval(&s(3)), s(6));
        assert_eq!(SymScalar::zero().eval(&s(17)), s(0));
        let q = SymScalar::xi() - SymScalar::constant(s(5));
        assert_eq!(q.eval(&s(5)), s(0));
        let prod = p.clone() * q.clone();
        for v in [-3i64, 0, 2, 11] {
            assert_eq!(prod.eval(&s(v)), p.eval(&s(v)) * q.eval(&s(v)));
        }
    }

    #[test]
    fn display_and_parse_round_trip() {
        for txt in ["-1/6", "2", "0", "355/113", "-7"] {
            let v: Scalar = txt.parse().unwrap();
            assert_eq!(v.to_string(), txt);
        }
        // non-canonical input normalizes
        let v: Scalar = "4/6".parse().unwrap();
        assert_eq!(v.to_string(), "2/3");
        let v: Scalar = "-4/-6".parse().unwrap();
        assert_eq!(v.to_string(), "2/3");
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("x".parse::<Scalar>().is_err());
    }

    #[test]
    fn field_axioms_spot_check() {
        // deterministic pseudo-random values with numerators/denominators up to 10^6
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..1000 {
            let draw = |r: u64| (r % 2_000_001) as i64 - 1_000_000;
            let nz = |r: u64| (r % 1_000_000) as i64 + 1;
            let a = Scalar::new(BigInt::from(draw(next())), BigInt::from(nz(next()))).unwrap();
            let b = Scalar::new(BigInt::from(draw(next())), BigInt::from(nz(next()))).unwrap();
            let c = Scalar::new(BigInt::from(draw(next())), BigInt::from(nz(next()))).unwrap();
            assert_eq!(&a * &(&b + &c), &a * &b + &a * &c);
            assert_eq!(&a + &b, &b + &a);
            assert_eq!(&a * &b, &b * &a);
            assert_eq!((&a + &b) + &c, &a + &(&b + &c));
            if !a.is_zero() {
                assert_eq!(&a * &a.recip().unwrap(), Scalar::one());
            }
        }
    }

    #[test]
    fn pow_zero_is_one() {
        assert_eq!(s(0).pow(0), s(1));
        assert_eq!(s(0).pow(3), s(0));
        assert_eq!(s(2).pow(10), s(1024));
    }

    #[test]
    fn sym_serde_round_trip() {
        let p = SymScalar::from_coeffs(vec![s(0), s(1), s(-3)]);
        let js = serde_json::to_string(&p).unwrap();
        assert_eq!(js, r#"["0","1","-3"]"#);
        let back: SymScalar = serde_json::from_str(&js).unwrap();
        assert_eq!(back, p);
    }
}
