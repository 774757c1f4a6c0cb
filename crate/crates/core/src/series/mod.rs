//! Truncated formal power series with exact rational coefficients.
//!
//! A [`Series`] of order `N` stores the coefficients of `x^0..=x^N`; every
//! operation is exact through degree `N`. Binary operations on series of
//! different orders truncate to the smaller one.

mod sequences;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use sequences::{
    expand, expand_closed, expand_recurrence, fixpoint_residuals, solve_fixpoint, SeriesMethod,
    SeriesTag, SetTag,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("square root needs constant term 1, found {0}")]
    NonUnitConstantTerm(BigRational),
    #[error("series with zero constant term has no inverse")]
    NotInvertible,
    #[error("cannot divide by x^{power}: coefficient of x^{index} is {value}")]
    NonZeroLowCoefficient {
        power: usize,
        index: usize,
        value: BigRational,
    },
    #[error("coefficient of x^{index} is not an integer: {value}")]
    NonInteger { index: usize, value: BigRational },
    #[error("{0} has no closed form")]
    NoClosedForm(SeriesTag),
    #[error("{tag} has no {method} definition")]
    UnsupportedTag { tag: SeriesTag, method: SeriesMethod },
    #[error("fixpoint iteration for {tag} stopped gaining coefficients at round {round}")]
    NonConvergence { tag: SeriesTag, round: usize },
    #[error("unknown series tag `{0}`")]
    UnknownTag(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<BigRational>,
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl Series {
    pub fn zero(order: usize) -> Series {
        Series {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Series {
        Series::constant(rat(1), order)
    }

    pub fn constant(c: BigRational, order: usize) -> Series {
        let mut s = Series::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `x^k`, which is zero when `k > order`.
    pub fn x_pow(k: usize, order: usize) -> Series {
        let mut s = Series::zero(order);
        if k <= order {
            s.coeffs[k] = rat(1);
        }
        s
    }

    /// Polynomial with integer coefficients listed from degree 0.
    pub fn poly(coeffs: &[i64], order: usize) -> Series {
        let mut s = Series::zero(order);
        for (c, &v) in s.coeffs.iter_mut().zip(coeffs) {
            *c = rat(v);
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Series {
        assert!(!coeffs.is_empty(), "a series has at least one coefficient");
        Series { coeffs }
    }

    pub fn from_integers(values: &[BigInt]) -> Series {
        Series::from_coeffs(values.iter().cloned().map(BigRational::from_integer).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &BigRational {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Index of the first nonzero coefficient, `None` if all vanish.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Series {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, BigRational::zero());
        Series { coeffs }
    }

    pub fn scale(&self, c: &BigRational) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|v| v * c).collect(),
        }
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> Series {
        let mut s = Series::zero(self.order());
        for (i, c) in self.coeffs.iter().enumerate() {
            if i + k > self.order() {
                break;
            }
            s.coeffs[i + k] = c.clone();
        }
        s
    }

    /// Division by `x^m`. The first `m` coefficients must vanish; the result
    /// has order `N - m` since the top `m` coefficients are unknown.
    pub fn div_x_pow(&self, m: usize) -> Result<Series, SeriesError> {
        if let Some((index, value)) = self.coeffs.iter().take(m).enumerate().find(|(_, c)| !c.is_zero()) {
            return Err(SeriesError::NonZeroLowCoefficient {
                power: m,
                index,
                value: value.clone(),
            });
        }
        assert!(m <= self.order(), "dividing by x^{m} leaves no coefficients");
        Ok(Series {
            coeffs: self.coeffs[m..].to_vec(),
        })
    }

    pub fn inverse(&self) -> Result<Series, SeriesError> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(SeriesError::NotInvertible);
        }
        let inv0 = c0.recip();
        let n = self.order();
        let mut out = vec![BigRational::zero(); n + 1];
        out[0] = inv0.clone();
        for i in 1..=n {
            let mut acc = BigRational::zero();
            for k in 1..=i {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &out[i - k];
                }
            }
            out[i] = -acc * &inv0;
        }
        Ok(Series { coeffs: out })
    }

    pub fn div(&self, other: &Series) -> Result<Series, SeriesError> {
        Ok(self * &other.inverse()?)
    }

    /// `1 / (1 - self)`; `self` must have zero constant term.
    pub fn geometric(&self) -> Result<Series, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::NotInvertible);
        }
        (&Series::one(self.order()) - self).inverse()
    }

    /// Square root with constant term 1 by Newton iteration
    /// `y <- (y + u / y) / 2`, doubling the number of correct coefficients
    /// each round.
    pub fn sqrt(&self) -> Result<Series, SeriesError> {
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::NonUnitConstantTerm(self.coeffs[0].clone()));
        }
        let n = self.order();
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let mut y = Series::one(0);
        let mut known = 1;
        while known < n + 1 {
            known = (2 * known).min(n + 1);
            let y_ext = y.truncate(known - 1);
            let u = self.truncate(known - 1);
            y = (&y_ext + &u.div(&y_ext)?).scale(&half);
        }
        Ok(y.truncate(n))
    }

    pub fn pow(&self, e: u32) -> Series {
        let mut out = Series::one(self.order());
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Exact integer coefficients, or the first non-integer one.
    pub fn to_integers(&self) -> Result<Vec<BigInt>, SeriesError> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(index, c)| {
                if c.is_integer() {
                    Ok(c.to_integer())
                } else {
                    Err(SeriesError::NonInteger {
                        index,
                        value: c.clone(),
                    })
                }
            })
            .collect()
    }

    /// Integer coefficients that fit in `u64`; panics otherwise.
    pub fn to_u64s(&self) -> Result<Vec<u64>, SeriesError> {
        Ok(self
            .to_integers()?
            .into_iter()
            .map(|v| u64::try_from(v).expect("coefficient fits in u64"))
            .collect())
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            first = false;
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                _ if a.is_one() => {}
                _ => write!(f, "{a}*")?,
            }
            match i {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

impl Add for &Series {
    type Output = Series;

    fn add(self, rhs: &Series) -> Series {
        let n = self.order().min(rhs.order());
        Series {
            coeffs: (0..=n).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect(),
        }
    }
}

impl Sub for &Series {
    type Output = Series;

    fn sub(self, rhs: &Series) -> Series {
        let n = self.order().min(rhs.order());
        Series {
            coeffs: (0..=n).map(|i| &self.coeffs[i] - &rhs.coeffs[i]).collect(),
        }
    }
}

impl Neg for &Series {
    type Output = Series;

    fn neg(self) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Series {
    type Output = Series;

    fn mul(self, rhs: &Series) -> Series {
        let n = self.order().min(rhs.order());
        let mut coeffs = vec![BigRational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Series { coeffs }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &Series) -> Vec<i64> {
        s.to_integers()
            .unwrap()
            .into_iter()
            .map(|v| i64::try_from(v).unwrap())
            .collect()
    }

    /// Square root by the coefficient recurrence `2 y_n = u_n - sum y_k y_(n-k)`.
    fn sqrt_by_recurrence(u: &Series) -> Series {
        let n = u.order();
        let mut y = vec![BigRational::zero(); n + 1];
        y[0] = rat(1);
        for i in 1..=n {
            let mut acc = u.coeff(i).clone();
            for k in 1..i {
                acc -= &y[k] * &y[i - k];
            }
            y[i] = acc / rat(2);
        }
        Series::from_coeffs(y)
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(Series::one(5).sqrt().unwrap(), Series::one(5));
        let u = Series::poly(&[1, -2, -3], 6);
        assert_eq!(ints(&u.sqrt().unwrap())[..4], [1, -1, -2, -2]);
        let u = Series::poly(&[1, -4], 6);
        assert_eq!(ints(&u.sqrt().unwrap())[..4], [1, -2, -2, -4]);
        assert!(matches!(
            Series::poly(&[4, 1], 3).sqrt(),
            Err(SeriesError::NonUnitConstantTerm(_))
        ));
    }

    #[test]
    fn sqrt_agrees_with_recurrence() {
        for coeffs in [&[1, -4][..], &[1, -2, -3], &[1, -2, 1, -4], &[1, -2, -1, -2, 1], &[1, 3, 0, 7]] {
            let u = Series::poly(coeffs, 40);
            assert_eq!(u.sqrt().unwrap(), sqrt_by_recurrence(&u));
        }
    }

    #[test]
    fn inverse_and_division() {
        let s = Series::poly(&[1, -1, -1], 10);
        assert_eq!(ints(&s.inverse().unwrap()), [1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89]);
        assert_eq!(Series::poly(&[0, 1], 3).inverse(), Err(SeriesError::NotInvertible));
        let q = Series::poly(&[1, 2, 3], 8).div(&Series::poly(&[1, 2, 3], 8)).unwrap();
        assert_eq!(q, Series::one(8));
    }

    #[test]
    fn x_power_division_checked() {
        let s = Series::poly(&[0, 0, 3, 4], 5);
        assert_eq!(ints(&s.div_x_pow(2).unwrap()), [3, 4, 0, 0]);
        assert_eq!(
            Series::poly(&[0, 5], 4).div_x_pow(2),
            Err(SeriesError::NonZeroLowCoefficient {
                power: 2,
                index: 1,
                value: rat(5)
            })
        );
    }

    #[test]
    fn integrality_reported() {
        let s = Series::poly(&[1, 1], 2).scale(&BigRational::new(1.into(), 2.into()));
        assert!(matches!(s.to_integers(), Err(SeriesError::NonInteger { index: 0, .. })));
    }

    #[test]
    fn display() {
        assert_eq!(Series::poly(&[1, -2, 0, 3], 3).to_string(), "1 - 2*x + 3*x^3 + O(x^4)");
        assert_eq!(Series::zero(1).to_string(), "0 + O(x^2)");
    }
}
