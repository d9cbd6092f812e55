//! Double-precision complex numbers for the parameter plane and orbit points.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

/// A complex number with `f64` components.
///
/// `Complex::new` rejects non-finite components; arithmetic on already
/// constructed values may still overflow to infinity, which callers of the
/// iteration kernel tolerate (the escape check fires long before that for
/// orbits that matter).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Complex {
    pub re: f64,
    pub im: f64,
}

impl Complex {
    pub const ZERO: Complex = Complex { re: 0.0, im: 0.0 };

    /// Panics if either component is NaN or infinite.
    pub fn new(re: f64, im: f64) -> Self {
        assert!(
            re.is_finite() && im.is_finite(),
            "complex components must be finite, got ({re}, {im})"
        );
        Complex { re, im }
    }

    /// |z|², exact up to one rounding per operation.
    #[inline]
    pub fn norm_sqr(self) -> f64 {
        self.re * self.re + self.im * self.im
    }

    /// |z|, computed as sqrt(re² + im²).
    #[inline]
    pub fn modulus(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    #[inline]
    pub fn conj(self) -> Self {
        Complex {
            re: self.re,
            im: -self.im,
        }
    }

    pub fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

impl Add for Complex {
    type Output = Complex;
    fn add(self, rhs: Complex) -> Complex {
        Complex {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl Sub for Complex {
    type Output = Complex;
    fn sub(self, rhs: Complex) -> Complex {
        Complex {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl Neg for Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl fmt::Display for Complex {
    /// Renders as `RE,IM`, the same form the CLI accepts.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.re, self.im)
    }
}

/// Error returned when parsing a `RE,IM` pair fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseComplexError {
    input: String,
}

impl fmt::Display for ParseComplexError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "expected a finite complex number as RE,IM, got {:?}",
            self.input
        )
    }
}

impl std::error::Error for ParseComplexError {}

impl FromStr for Complex {
    type Err = ParseComplexError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseComplexError {
            input: s.to_owned(),
        };
        let (re, im) = s.split_once(',').ok_or_else(err)?;
        let re: f64 = re.trim().parse().map_err(|_| err())?;
        let im: f64 = im.trim().parse().map_err(|_| err())?;
        if !(re.is_finite() && im.is_finite()) {
            return Err(err());
        }
        Ok(Complex { re, im })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructor_accepts_finite() {
        let z = Complex::new(-1.5, 0.25);
        assert_eq!(z.re, -1.5);
        assert_eq!(z.im, 0.25);
    }

    #[test]
    #[should_panic(expected = "finite")]
    fn constructor_rejects_nan() {
        Complex::new(f64::NAN, 0.0);
    }

    #[test]
    #[should_panic(expected = "finite")]
    fn constructor_rejects_infinity() {
        Complex::new(0.0, f64::INFINITY);
    }

    #[test]
    fn modulus_and_norm() {
        let z = Complex::new(3.0, 4.0);
        assert_eq!(z.norm_sqr(), 25.0);
        assert_eq!(z.modulus(), 5.0);
    }

    #[test]
    fn parse_round_trip() {
        let z: Complex = "0.5,-1.25".parse().unwrap();
        assert_eq!(z, Complex::new(0.5, -1.25));
        assert_eq!(z.to_string().parse::<Complex>().unwrap(), z);
    }

    #[test]
    fn parse_rejects_junk() {
        assert!("1.0".parse::<Complex>().is_err());
        assert!("a,b".parse::<Complex>().is_err());
        assert!("inf,0".parse::<Complex>().is_err());
        assert!("1,nan".parse::<Complex>().is_err());
    }
}
