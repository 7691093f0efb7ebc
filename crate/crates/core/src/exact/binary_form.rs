//! Homogeneous polynomials in two variables `s, t`.

use std::fmt;

use super::{ExactError, Field, Poly, Scalar};

/// `coeffs[i]` multiplies `s^i t^(degree - i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryForm {
    field: Field,
    degree: usize,
    coeffs: Vec<Scalar>,
}

impl BinaryForm {
    pub fn new(degree: usize, coeffs: Vec<Scalar>) -> BinaryForm {
        assert_eq!(coeffs.len(), degree + 1, "binary form needs degree+1 coefficients");
        let field = coeffs[0].field();
        BinaryForm { field, degree, coeffs }
    }

    pub fn from_i64s(field: Field, coeffs: &[i64]) -> BinaryForm {
        BinaryForm::new(
            coeffs.len() - 1,
            coeffs.iter().map(|&c| field.from_i64(c)).collect(),
        )
    }

    pub fn zero(field: Field, degree: usize) -> BinaryForm {
        BinaryForm {
            field,
            degree,
            coeffs: vec![field.zero(); degree + 1],
        }
    }

    /// Homogenizes `p(s)` to the given degree. Panics if `p` is too large.
    pub fn homogenize(p: &Poly, degree: usize) -> BinaryForm {
        assert!(p.degree().is_none_or(|d| d <= degree));
        BinaryForm {
            field: p.field(),
            degree,
            coeffs: (0..=degree).map(|i| p.coeff(i)).collect(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    /// A nonzero form of degree zero.
    pub fn is_unit(&self) -> bool {
        self.degree == 0 && !self.is_zero()
    }

    /// Dehomogenization `f(s, 1)`.
    pub fn s_chart(&self) -> Poly {
        Poly::new(self.field, self.coeffs.clone())
    }

    /// Dehomogenization `f(1, t)`, as a polynomial in `t`.
    pub fn t_chart(&self) -> Poly {
        Poly::new(self.field, self.coeffs.iter().rev().cloned().collect())
    }

    /// Exponent of the largest power of `t` dividing the form.
    fn t_order(&self) -> usize {
        self.degree - self.s_chart().degree().unwrap_or(0)
    }

    pub fn mul(&self, rhs: &BinaryForm) -> BinaryForm {
        BinaryForm::homogenize(&self.s_chart().mul(&rhs.s_chart()), self.degree + rhs.degree)
    }

    pub fn eval(&self, s: &Scalar, t: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            acc = &acc + &(&(c * &s.pow(i as u64)) * &t.pow((self.degree - i) as u64));
        }
        acc
    }

    /// Exact quotient by `divisor`, if it divides.
    pub fn div_exact(&self, divisor: &BinaryForm) -> Option<BinaryForm> {
        if divisor.is_zero() || divisor.degree > self.degree {
            return None;
        }
        if self.is_zero() {
            return Some(BinaryForm::zero(self.field, self.degree - divisor.degree));
        }
        let (ts, td) = (self.t_order(), divisor.t_order());
        if td > ts {
            return None;
        }
        let q = self.s_chart().div_exact(&divisor.s_chart())?;
        Some(BinaryForm::homogenize(&q, self.degree - divisor.degree))
    }

    /// Greatest common divisor, normalized so that its highest nonzero `s`
    /// coefficient is one (monic in `s` whenever the `s^deg` term survives).
    ///
    /// The `s`-chart gcd captures every factor except powers of `t`, whose
    /// common multiplicity is read off the `t`-chart.
    pub fn gcd(&self, rhs: &BinaryForm) -> Result<BinaryForm, ExactError> {
        match (self.is_zero(), rhs.is_zero()) {
            (true, true) => return Err(ExactError::ZeroGcd),
            (true, false) => return Ok(rhs.normalized()),
            (false, true) => return Ok(self.normalized()),
            _ => {}
        }
        let g = self.s_chart().gcd(&rhs.s_chart());
        let t_pow = self.t_order().min(rhs.t_order());
        let deg = g.degree().unwrap_or(0) + t_pow;
        Ok(BinaryForm::homogenize(&g, deg).normalized())
    }

    fn normalized(&self) -> BinaryForm {
        match self.coeffs.iter().rev().find(|c| !c.is_zero()) {
            None => self.clone(),
            Some(l) => {
                let inv = l.inv().expect("nonzero");
                BinaryForm {
                    field: self.field,
                    degree: self.degree,
                    coeffs: self.coeffs.iter().map(|c| c * &inv).collect(),
                }
            }
        }
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let j = self.degree - i;
            let mono = match (i, j) {
                (0, 0) => String::new(),
                (0, _) => format!("t^{j}"),
                (_, 0) => format!("s^{i}"),
                _ => format!("s^{i}*t^{j}"),
            };
            terms.push(match (c.is_one(), mono.is_empty()) {
                (_, true) => c.to_string(),
                (true, false) => mono,
                (false, false) => format!("{c}*{mono}"),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    fn form(c: &[i64]) -> BinaryForm {
        BinaryForm::from_i64s(Q, c)
    }

    #[test]
    fn gcd_examples() {
        // s^2 and s*t
        assert_eq!(form(&[0, 0, 1]).gcd(&form(&[0, 1, 0])).unwrap(), form(&[0, 1]));
        // s+t and s-t
        assert_eq!(form(&[1, 1]).gcd(&form(&[-1, 1])).unwrap(), form(&[1]));
        // s^2 - t^2 = (s-t)(s+t) and s - t
        assert_eq!(form(&[-1, 0, 1]).gcd(&form(&[-1, 1])).unwrap(), form(&[-1, 1]));
    }

    #[test]
    fn gcd_keeps_common_powers_of_t() {
        // t^2 and s*t share t
        assert_eq!(form(&[1, 0, 0]).gcd(&form(&[0, 1, 0])).unwrap(), form(&[1, 0]));
        // t^3*(s+t) and t^2*s*(s+t) share t^2*(s+t)
        let a = form(&[1, 0, 0]).mul(&form(&[1, 1])).mul(&form(&[1, 0]));
        let b = form(&[1, 0, 0]).mul(&form(&[0, 1])).mul(&form(&[1, 1]));
        assert_eq!(a.gcd(&b).unwrap(), form(&[1, 0, 0]).mul(&form(&[1, 1])));
    }

    #[test]
    fn both_zero_is_an_error() {
        assert!(BinaryForm::zero(Q, 2).gcd(&BinaryForm::zero(Q, 1)).is_err());
    }
}
