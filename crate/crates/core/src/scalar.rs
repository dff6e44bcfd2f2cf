//! Exact Gaussian-rational arithmetic: the coefficient field Q(i).
//!
//! A [`Scalar`] is `re + im*i` with both parts arbitrary-precision rationals
//! kept in lowest terms with positive denominators, so equality is plain
//! structural equality and every operation is exact.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// An element of Q(i), always in canonical (reduced) form.
///
/// The derived lexicographic order on `(re, im)` is not a field order; it
/// exists so scalars can key ordered maps and sort deterministically.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Scalar {
    re: Rational,
    im: Rational,
}

impl Scalar {
    pub fn new(re: Rational, im: Rational) -> Self {
        Scalar { re, im }
    }

    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Scalar::new(Rational::zero(), Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::new(Rational::from_integer(BigInt::from(n)), Rational::zero())
    }

    /// Convenience constructor for small literals; panics on a zero
    /// denominator (use [`Scalar::from_str`] for untrusted input).
    pub fn rational(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar::new(
            Rational::new(BigInt::from(num), BigInt::from(den)),
            Rational::zero(),
        )
    }

    pub fn re(&self) -> &Rational {
        &self.re
    }

    pub fn im(&self) -> &Rational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    /// Multiplicative inverse; fails on zero.
    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // 1/(a+bi) = (a-bi)/(a^2+b^2); the norm is nonzero because squares of
        // rationals are nonnegative and not both parts vanish.
        let norm = &self.re * &self.re + &self.im * &self.im;
        Ok(Scalar::new(&self.re / &norm, -&self.im / &norm))
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        Ok(self * &rhs.inv()?)
    }

    /// Integer power with negative exponents allowed for nonzero bases.
    /// `pow(x, 0)` is 1 (empty product).
    pub fn pow(&self, n: i64) -> Result<Scalar> {
        if n < 0 {
            return self.inv()?.pow(-n);
        }
        let mut acc = Scalar::one();
        let mut base = self.clone();
        let mut e = n as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-&self.re, -&self.im)
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

fn render_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `[-]digits[/digits]`; the denominator, when present, is unsigned.
fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("invalid rational literal `{s}`"));
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let digits = num_str.strip_prefix('-').unwrap_or(num_str);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let num = BigInt::from_str(num_str).map_err(|_| bad())?;
    let den = match den_str {
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            BigInt::from_str(d).map_err(|_| bad())?
        }
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(Rational::new(num, den))
}

impl FromStr for Scalar {
    type Err = Error;

    /// Grammar (whitespace insignificant): `R`, `Ri`, `R+Ri`, `R-Ri` with
    /// `R ::= [-]digits[/digits]`.
    fn from_str(s: &str) -> Result<Scalar> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty scalar literal".into()));
        }
        let Some(body) = compact.strip_suffix('i') else {
            return Ok(Scalar::new(parse_rational(&compact)?, Rational::zero()));
        };
        // Split `re±im` at the sign separating the two parts; a sign at
        // position 0 belongs to the real part's own literal.
        let sep = body.char_indices().skip(1).find(|(_, c)| *c == '+' || *c == '-');
        match sep {
            Some((idx, sign)) => {
                let re = parse_rational(&body[..idx])?;
                let mag = parse_rational(&body[idx + 1..])?;
                let im = if sign == '-' { -mag } else { mag };
                Ok(Scalar::new(re, im))
            }
            None => Ok(Scalar::new(Rational::zero(), parse_rational(body)?)),
        }
    }
}

/// Parses `a,b` as a comma-separated pair of scalar literals.
pub fn parse_scalar_pair(s: &str) -> Result<(Scalar, Scalar)> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("expected a `re,im`-style pair in `{s}`")))?;
    Ok((a.parse()?, b.parse()?))
}

impl fmt::Display for Scalar {
    /// Canonical rendering; `parse(render(x)) == x` for every scalar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", render_rational(&self.re));
        }
        if self.re.is_zero() {
            return write!(f, "{}i", render_rational(&self.im));
        }
        let sign = if self.im.is_negative() { "-" } else { "+" };
        write!(
            f,
            "{}{}{}i",
            render_rational(&self.re),
            sign,
            render_rational(&self.im.abs())
        )
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    #[test]
    fn conjugate_product_is_the_norm() {
        let x = Scalar::new(Rational::new(1.into(), 2.into()), Rational::one());
        let y = Scalar::new(Rational::new(1.into(), 2.into()), -Rational::one());
        assert_eq!(&x * &y, Scalar::rational(5, 4));
    }

    #[test]
    fn zeroth_power_of_nonzero_is_one() {
        assert_eq!(s("3-2i").pow(0).unwrap(), Scalar::one());
    }

    #[test]
    fn negative_powers_invert() {
        // (2i)^-2 = -1/4
        assert_eq!(s("2i").pow(-2).unwrap(), Scalar::rational(-1, 4));
        let x = s("-2/3+5i");
        assert_eq!(&x.pow(-3).unwrap() * &x.pow(3).unwrap(), Scalar::one());
    }

    #[test]
    fn zero_has_no_inverse() {
        assert_eq!(Scalar::zero().inv(), Err(Error::DivisionByZero));
        assert!(Scalar::one().checked_div(&Scalar::zero()).is_err());
    }

    #[test]
    fn equality_is_canonical() {
        assert_eq!(Scalar::rational(2, 4), Scalar::rational(1, 2));
        assert_eq!(s("2/4"), s("1/2"));
        assert_eq!(s("-2/4-6/4i"), s("-1/2 - 3/2 i"));
    }

    #[test]
    fn parse_mixed_literal() {
        let x = s("-1+1/2i");
        assert_eq!(x.re(), &Rational::from_integer((-1).into()));
        assert_eq!(x.im(), &Rational::new(1.into(), 2.into()));
    }

    #[test]
    fn parse_rejects_zero_denominator() {
        assert!(matches!("1/0".parse::<Scalar>(), Err(Error::Parse(_))));
    }

    #[test]
    fn parse_rejects_garbage() {
        for text in ["", "i", "1+", "1+i", "+2", "1//2", "2x", "1.5", "--3"] {
            assert!(text.parse::<Scalar>().is_err(), "accepted `{text}`");
        }
    }

    #[test]
    fn rendering_is_canonical() {
        for (input, expect) in [
            ("0", "0"),
            ("5/4", "5/4"),
            ("-1 + 1/2 i", "-1+1/2i"),
            ("2-3i", "2-3i"),
            ("-2/3i", "-2/3i"),
            ("7", "7"),
            ("-7/3", "-7/3"),
        ] {
            assert_eq!(s(input).to_string(), expect);
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn scalars() -> impl Strategy<Value = Scalar> {
            (-20i64..=20, 1i64..=8, -20i64..=20, 1i64..=8).prop_map(|(a, b, c, d)| {
                Scalar::new(
                    Rational::new(a.into(), b.into()),
                    Rational::new(c.into(), d.into()),
                )
            })
        }

        proptest! {
            #[test]
            fn field_laws(a in scalars(), b in scalars(), c in scalars()) {
                prop_assert_eq!(&a + &b, &b + &a);
                prop_assert_eq!(&a * &b, &b * &a);
                prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                prop_assert_eq!(&a + &Scalar::zero(), a.clone());
                prop_assert_eq!(&a * &Scalar::one(), a.clone());
                prop_assert_eq!(&a - &a, Scalar::zero());
            }

            #[test]
            fn nonzero_elements_invert(a in scalars()) {
                prop_assume!(!a.is_zero());
                prop_assert_eq!(&a * &a.inv().unwrap(), Scalar::one());
            }

            #[test]
            fn parse_render_round_trip(a in scalars()) {
                prop_assert_eq!(a.to_string().parse::<Scalar>().unwrap(), a);
            }

            #[test]
            fn power_laws(a in scalars(), m in -4i64..=4, n in -4i64..=4) {
                prop_assume!(!a.is_zero());
                prop_assert_eq!(
                    a.pow(m + n).unwrap(),
                    &a.pow(m).unwrap() * &a.pow(n).unwrap()
                );
            }
        }
    }
}
