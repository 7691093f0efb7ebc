//! Truncated power series `c_0 + c_1 t + ... + c_n t^n`.
//!
//! Coefficients come from any [`SeriesCoeff`] ring: field scalars here, and
//! symbolic polynomials in the multiplicative-sequence code.

use super::{ExactError, Field, Scalar};

/// The operations a truncated series needs from its coefficient ring.
///
/// `zero_like`/`one_like` produce constants in the same ring as `self`
/// (same field, same number of symbolic variables).
pub trait SeriesCoeff: Clone + PartialEq + std::fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn mul_int(&self, n: i64) -> Self;
    /// Exact division by a nonzero integer (nonzero in the ring too).
    fn div_int(&self, n: i64) -> Self;

    fn is_one(&self) -> bool {
        self.sub(&self.one_like()).is_zero()
    }
}

impl SeriesCoeff for Scalar {
    fn zero_like(&self) -> Self {
        self.field().zero()
    }
    fn one_like(&self) -> Self {
        self.field().one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn mul_int(&self, n: i64) -> Self {
        self * &self.field().from_i64(n)
    }
    fn div_int(&self, n: i64) -> Self {
        self / &self.field().from_i64(n)
    }
}

/// Series truncated at order `n`: all coefficients through `t^n` are exact.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncSeries<C> {
    coeffs: Vec<C>,
}

impl<C: SeriesCoeff> TruncSeries<C> {
    /// Takes `order + 1` coefficients, padding with zeros or truncating.
    pub fn new(mut coeffs: Vec<C>, order: usize, sample: &C) -> TruncSeries<C> {
        coeffs.resize(order + 1, sample.zero_like());
        TruncSeries { coeffs }
    }

    pub fn constant(c: C, order: usize) -> TruncSeries<C> {
        let z = c.zero_like();
        TruncSeries::new(vec![c], order, &z)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &C {
        &self.coeffs[i]
    }

    fn zero_c(&self) -> C {
        self.coeffs[0].zero_like()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.check_order(rhs);
        TruncSeries {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.check_order(rhs);
        TruncSeries {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.check_order(rhs);
        let n = self.order();
        let mut out = vec![self.zero_c(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(n + 1 - i).enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        TruncSeries { coeffs: out }
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = TruncSeries::constant(self.coeffs[0].one_like(), self.order());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse of a series with constant term one.
    pub fn inverse(&self) -> Result<Self, ExactError> {
        if !self.coeffs[0].is_one() {
            return Err(ExactError::ConstantTerm("inverse", 1));
        }
        let n = self.order();
        let mut out: Vec<C> = Vec::with_capacity(n + 1);
        out.push(self.coeffs[0].one_like());
        for m in 1..=n {
            let mut acc = self.zero_c();
            for i in 1..=m {
                acc = acc.add(&self.coeffs[i].mul(&out[m - i]));
            }
            out.push(acc.mul_int(-1));
        }
        Ok(TruncSeries { coeffs: out })
    }

    /// Logarithm of a series with constant term one, from `f L' = f'`.
    pub fn log(&self) -> Result<Self, ExactError> {
        if !self.coeffs[0].is_one() {
            return Err(ExactError::ConstantTerm("log", 1));
        }
        let n = self.order();
        let mut out = vec![self.zero_c(); n + 1];
        for m in 1..=n {
            let mut acc = self.coeffs[m].mul_int(m as i64);
            for i in 1..m {
                acc = acc.sub(&out[i].mul_int(i as i64).mul(&self.coeffs[m - i]));
            }
            out[m] = acc.div_int(m as i64);
        }
        Ok(TruncSeries { coeffs: out })
    }

    /// Exponential of a series with constant term zero, from `E' = g' E`.
    pub fn exp(&self) -> Result<Self, ExactError> {
        if !self.coeffs[0].is_zero() {
            return Err(ExactError::ConstantTerm("exp", 0));
        }
        let n = self.order();
        let mut out = vec![self.zero_c(); n + 1];
        out[0] = self.coeffs[0].one_like();
        for m in 1..=n {
            let mut acc = self.zero_c();
            for i in 1..=m {
                acc = acc.add(&self.coeffs[i].mul_int(i as i64).mul(&out[m - i]));
            }
            out[m] = acc.div_int(m as i64);
        }
        Ok(TruncSeries { coeffs: out })
    }

    fn check_order(&self, rhs: &Self) {
        assert_eq!(self.order(), rhs.order(), "series truncation orders differ");
    }
}

impl TruncSeries<Scalar> {
    pub fn from_i64s(field: Field, coeffs: &[i64], order: usize) -> Self {
        TruncSeries::new(
            coeffs.iter().map(|&c| field.from_i64(c)).collect(),
            order,
            &field.zero(),
        )
    }

    /// `(1 + t)^e` for any integer `e`, through the given order.
    pub fn one_plus_t_pow(field: Field, e: i64, order: usize) -> Self {
        // generalized binomial coefficients
        let mut coeffs = vec![field.one()];
        for i in 1..=order as i64 {
            let prev = coeffs.last().unwrap().clone();
            coeffs.push(&(&prev * &field.from_i64(e - i + 1)) / &field.from_i64(i));
        }
        TruncSeries::new(coeffs, order, &field.zero())
    }

    pub fn field(&self) -> Field {
        self.coeffs[0].field()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    #[test]
    fn inverse_of_one_plus_t() {
        let f = TruncSeries::from_i64s(Q, &[1, 1], 5);
        let inv = f.inverse().unwrap();
        assert_eq!(inv, TruncSeries::from_i64s(Q, &[1, -1, 1, -1, 1, -1], 5));
        assert_eq!(f.mul(&inv), TruncSeries::from_i64s(Q, &[1], 5));
    }

    #[test]
    fn inverse_of_geometric_series() {
        let f = TruncSeries::from_i64s(Q, &[1; 7], 6);
        assert_eq!(f.inverse().unwrap(), TruncSeries::from_i64s(Q, &[1, -1], 6));
        assert_eq!(
            TruncSeries::from_i64s(Q, &[1], 4).inverse().unwrap(),
            TruncSeries::from_i64s(Q, &[1], 4)
        );
    }

    #[test]
    fn log_and_exp() {
        let one = TruncSeries::from_i64s(Q, &[1], 4);
        assert_eq!(one.log().unwrap(), TruncSeries::from_i64s(Q, &[0], 4));
        let zero = TruncSeries::from_i64s(Q, &[0], 4);
        assert_eq!(zero.exp().unwrap(), one);
        let l = TruncSeries::from_i64s(Q, &[1, 1], 4).log().unwrap();
        let expect = TruncSeries::new(
            vec![
                Q.zero(),
                Q.one(),
                Q.from_ratio(-1, 2),
                Q.from_ratio(1, 3),
                Q.from_ratio(-1, 4),
            ],
            4,
            &Q.zero(),
        );
        assert_eq!(l, expect);
        assert_eq!(l.exp().unwrap(), TruncSeries::from_i64s(Q, &[1, 1], 4));
    }

    #[test]
    fn constant_term_preconditions() {
        let two = TruncSeries::from_i64s(Q, &[2, 1], 3);
        assert!(two.inverse().is_err());
        assert!(two.log().is_err());
        assert!(two.exp().is_err());
    }

    #[test]
    fn binomial_series() {
        let f = TruncSeries::one_plus_t_pow(Q, -2, 3);
        assert_eq!(f, TruncSeries::from_i64s(Q, &[1, -2, 3, -4], 3));
    }
}
