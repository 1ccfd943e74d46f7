//! Gaussian rationals: exact complex numbers with rational real and
//! imaginary parts.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::Error;

/// An element of Q(i). Both parts are kept in canonical `BigRational`
/// form (coprime, positive denominator), so structural equality is
/// exact equality.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GaussRat {
    re: BigRational,
    im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        GaussRat {
            re: BigRational::from_integer(BigInt::from(n)),
            im: BigRational::zero(),
        }
    }

    /// Exact fraction `num/den`. Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        GaussRat {
            re: BigRational::new(BigInt::from(num), BigInt::from(den)),
            im: BigRational::zero(),
        }
    }

    pub fn from_rational(re: BigRational) -> Self {
        GaussRat {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussRat {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    /// `i^k` for any integer `k` (k is taken mod 4).
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Self::one(),
            1 => Self::i(),
            2 => -Self::one(),
            _ => -Self::i(),
        }
    }

    /// `2^k` for any integer `k`, negative exponents giving fractions.
    pub fn pow2(k: i64) -> Self {
        let one = BigInt::one();
        if k >= 0 {
            Self::from_rational(BigRational::from_integer(one << (k as usize)))
        } else {
            Self::from_rational(BigRational::new(one.clone(), one << ((-k) as usize)))
        }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// True if the imaginary part is nonzero.
    pub fn has_imag(&self) -> bool {
        !self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRat {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// Squared modulus `re^2 + im^2` as a rational.
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Exact multiplicative inverse. Returns `Err(Error::SingularMatrix)`
    /// on zero (the one caller that can hit this is matrix inversion).
    pub fn inverse(&self) -> Result<Self, Error> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(GaussRat {
            re: &self.re / &n,
            im: -&self.im / &n,
        })
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    /// Multiplies by an integer in place.
    pub fn scale_int(&self, n: i64) -> Self {
        self * &Self::from_int(n)
    }

    /// Renders a plain rational as `p` or `p/q`; used by the canonical
    /// printer, which handles the imaginary part separately.
    fn fmt_rational(r: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if r.denom().is_one() {
            write!(f, "{}", r.numer())
        } else {
            write!(f, "{}/{}", r.numer(), r.denom())
        }
    }

    /// True when the canonical rendering needs no parentheses as a
    /// leading coefficient: a nonnegative integer.
    pub fn is_plain(&self) -> bool {
        self.im.is_zero() && self.re.denom().is_one() && !self.re.is_negative()
    }

    /// True for negative rationals (used to pull signs out when printing).
    pub fn is_negative_real(&self) -> bool {
        self.im.is_zero() && self.re.is_negative()
    }

    /// True when the number has both real and imaginary parts, so a
    /// printed sum needs parentheses around it.
    pub fn is_mixed(&self) -> bool {
        !self.re.is_zero() && !self.im.is_zero()
    }

    /// True when the leading printed sign would be a minus: negative
    /// real part, or purely imaginary with negative imaginary part.
    pub fn is_leading_negative(&self) -> bool {
        if self.re.is_zero() {
            self.im.is_negative()
        } else {
            self.re.is_negative()
        }
    }
}

impl fmt::Display for GaussRat {
    /// Canonical form: `p`, `p/q`, `i`, `-i`, `p/q*i`, `a+b*i`, `a-b*i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut wrote_re = false;
        if !self.re.is_zero() {
            Self::fmt_rational(&self.re, f)?;
            wrote_re = true;
        }
        if !self.im.is_zero() {
            let im = if wrote_re {
                if self.im.is_negative() {
                    write!(f, "-")?;
                } else {
                    write!(f, "+")?;
                }
                self.im.abs()
            } else {
                if self.im.is_negative() {
                    write!(f, "-")?;
                }
                self.im.abs()
            };
            if im.is_one() {
                write!(f, "i")?;
            } else {
                Self::fmt_rational(&im, f)?;
                write!(f, "*i")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FromStr for GaussRat {
    type Err = Error;

    /// Parses the canonical form produced by `Display`, e.g. `-1/4`,
    /// `1/2+3/4*i`, `i`, `-2*i`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty coefficient".into()));
        }
        // Split on the last top-level '+' or '-' that is not leading.
        let bytes = s.as_bytes();
        let mut split = None;
        for k in (1..bytes.len()).rev() {
            if (bytes[k] == b'+' || bytes[k] == b'-') && bytes[k - 1] != b'/' && bytes[k - 1] != b'+' && bytes[k - 1] != b'-' {
                split = Some(k);
                break;
            }
        }
        let (first, second) = match split {
            Some(k) => (&s[..k], Some(&s[k..])),
            None => (&s[..], None),
        };
        let parse_part = |part: &str| -> Result<(BigRational, bool), Error> {
            // Returns the value and whether it was an `i` part.
            let (neg, body) = match part.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, part.strip_prefix('+').unwrap_or(part)),
            };
            let (body, imag) = match body.strip_suffix("*i") {
                Some(rest) => (rest, true),
                None => match body.strip_suffix('i') {
                    Some("") => ("1", true),
                    Some(_) => return Err(Error::Parse(format!("bad coefficient `{part}`"))),
                    None => (body, false),
                },
            };
            let val: BigRational = if let Some((n, d)) = body.split_once('/') {
                let n: BigInt = n.parse().map_err(|_| Error::Parse(format!("bad numerator `{n}`")))?;
                let d: BigInt = d.parse().map_err(|_| Error::Parse(format!("bad denominator `{d}`")))?;
                if d.is_zero() {
                    return Err(Error::Parse("zero denominator".into()));
                }
                BigRational::new(n, d)
            } else {
                let n: BigInt = body
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad number `{body}`")))?;
                BigRational::from_integer(n)
            };
            Ok((if neg { -val } else { val }, imag))
        };
        let mut re = BigRational::zero();
        let mut im = BigRational::zero();
        for part in std::iter::once(first).chain(second) {
            let (val, imag) = parse_part(part)?;
            if imag {
                if !im.is_zero() {
                    return Err(Error::Parse(format!("repeated imaginary part in `{s}`")));
                }
                im = val;
            } else {
                if !re.is_zero() {
                    return Err(Error::Parse(format!("repeated real part in `{s}`")));
                }
                re = val;
            }
        }
        Ok(GaussRat { re, im })
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for GaussRat {
            type Output = GaussRat;
            fn $method(self, rhs: GaussRat) -> GaussRat {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&GaussRat> for GaussRat {
            type Output = GaussRat;
            fn $method(self, rhs: &GaussRat) -> GaussRat {
                (&self).$method(rhs)
            }
        }
        impl $trait<GaussRat> for &GaussRat {
            type Output = GaussRat;
            fn $method(self, rhs: GaussRat) -> GaussRat {
                self.$method(&rhs)
            }
        }
    };
}

impl Add<&GaussRat> for &GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: &GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}
forward_binop!(Add, add);

impl Sub<&GaussRat> for &GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: &GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}
forward_binop!(Sub, sub);

impl Mul<&GaussRat> for &GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: &GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}
forward_binop!(Mul, mul);

impl Div<&GaussRat> for &GaussRat {
    type Output = GaussRat;
    // exact division is multiplication by the exact inverse
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &GaussRat) -> GaussRat {
        self * &rhs.inverse().expect("division by zero")
    }
}
forward_binop!(Div, div);

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        -&self
    }
}

impl AddAssign<&GaussRat> for GaussRat {
    fn add_assign(&mut self, rhs: &GaussRat) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussRat> for GaussRat {
    fn sub_assign(&mut self, rhs: &GaussRat) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&GaussRat> for GaussRat {
    fn mul_assign(&mut self, rhs: &GaussRat) {
        *self = &*self * rhs;
    }
}

impl From<i64> for GaussRat {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_basics() {
        let a = GaussRat::ratio(1, 2) + GaussRat::i() * GaussRat::ratio(3, 4);
        let b = a.inverse().unwrap();
        assert!((&a * &b).is_one());
        assert_eq!(GaussRat::i().pow(2), -GaussRat::one());
        assert_eq!(GaussRat::i_pow(5), GaussRat::i());
        assert_eq!(GaussRat::i_pow(-5), GaussRat::i_pow(3));
        assert_eq!(GaussRat::pow2(-2), GaussRat::ratio(1, 4));
    }

    #[test]
    fn display_and_parse_round_trip() {
        let cases = [
            GaussRat::zero(),
            GaussRat::from_int(7),
            GaussRat::ratio(-1, 4),
            GaussRat::i(),
            -GaussRat::i(),
            GaussRat::ratio(1, 2) + GaussRat::i() * GaussRat::ratio(-3, 4),
            GaussRat::i() * GaussRat::from_int(2),
        ];
        for c in cases {
            let s = c.to_string();
            let back: GaussRat = s.parse().unwrap();
            assert_eq!(back, c, "round trip failed for {s}");
        }
        assert_eq!("1/2+3/4*i".parse::<GaussRat>().unwrap().to_string(), "1/2+3/4*i");
        assert!("1//2".parse::<GaussRat>().is_err());
    }
}
