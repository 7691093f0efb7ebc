use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::exact::{ExactError, Field, Scalar, SeriesCoeff, TruncSeries};

/// Polynomial in `c_1..c_n` with field coefficients. Terms are keyed by
/// exponent vectors in lexicographic order and zero terms are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    field: Field,
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl MPoly {
    pub fn zero(field: Field, nvars: usize) -> MPoly {
        MPoly {
            field,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Scalar, nvars: usize) -> MPoly {
        let mut p = MPoly::zero(c.field(), nvars);
        p.insert(vec![0; nvars], c);
        p
    }

    /// The variable `c_i`, `1 <= i <= nvars`.
    pub fn var(field: Field, nvars: usize, i: usize) -> MPoly {
        assert!((1..=nvars).contains(&i), "variable index out of range");
        let mut e = vec![0; nvars];
        e[i - 1] = 1;
        let mut p = MPoly::zero(field, nvars);
        p.insert(e, field.one());
        p
    }

    /// Builds from `(coefficient, exponents)` pairs.
    pub fn from_terms(field: Field, nvars: usize, terms: &[(i64, &[u32])]) -> MPoly {
        let mut p = MPoly::zero(field, nvars);
        for (c, e) in terms {
            let mut exps = e.to_vec();
            exps.resize(nvars, 0);
            p.insert(exps, field.from_i64(*c));
        }
        p
    }

    fn insert(&mut self, exps: Vec<u32>, c: Scalar) {
        let sum = match self.terms.remove(&exps) {
            Some(old) => &old + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(exps, sum);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Scalar)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    /// Coefficient of the monomial with the given exponents (padded).
    pub fn coeff(&self, exps: &[u32]) -> Scalar {
        let mut key = exps.to_vec();
        key.resize(self.nvars, 0);
        self.terms.get(&key).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Every term has weighted degree `m`, with `c_i` of weight `i`.
    pub fn is_weighted_homogeneous(&self, m: u32) -> bool {
        self.terms.keys().all(|e| {
            e.iter()
                .enumerate()
                .map(|(i, &a)| (i as u32 + 1) * a)
                .sum::<u32>()
                == m
        })
    }

    /// Coefficients as integers, `None` if any is not integral.
    pub fn integer_terms(&self) -> Option<Vec<(Vec<u32>, BigInt)>> {
        self.terms
            .iter()
            .map(|(e, c)| c.to_bigint().map(|n| (e.clone(), n)))
            .collect()
    }

    /// Evaluates at `c_i = values[i-1]`; missing values count as zero.
    /// Coefficients are mapped into the field of the values.
    pub fn eval(&self, values: &[Scalar], field: Field) -> Result<Scalar, ExactError> {
        let mut acc = field.zero();
        for (e, c) in &self.terms {
            let mut term = c.to_field(field)?;
            for (i, &a) in e.iter().enumerate() {
                if a > 0 {
                    let v = values.get(i).cloned().unwrap_or_else(|| field.zero());
                    term = &term * &v.pow(a as u64);
                }
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    fn combine(&self, rhs: &MPoly, sign: i64) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            let c = if sign < 0 { -c } else { c.clone() };
            out.insert(e.clone(), c);
        }
        out
    }
}

impl SeriesCoeff for MPoly {
    fn zero_like(&self) -> Self {
        MPoly::zero(self.field, self.nvars)
    }
    fn one_like(&self) -> Self {
        MPoly::constant(self.field.one(), self.nvars)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        self.combine(rhs, 1)
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.combine(rhs, -1)
    }
    fn mul(&self, rhs: &Self) -> Self {
        let mut out = self.zero_like();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.insert(e, c1 * c2);
            }
        }
        out
    }
    fn mul_int(&self, n: i64) -> Self {
        let k = self.field.from_i64(n);
        let mut out = self.zero_like();
        for (e, c) in &self.terms {
            out.insert(e.clone(), c * &k);
        }
        out
    }
    fn div_int(&self, n: i64) -> Self {
        let k = self.field.from_i64(n).inv().expect("division by zero in MPoly");
        let mut out = self.zero_like();
        for (e, c) in &self.terms {
            out.insert(e.clone(), c * &k);
        }
        out
    }
}

impl fmt::Display for MPoly {
    /// Terms from the lexicographically largest exponent down, e.g.
    /// `c1^2 - c2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &a)| a > 0)
                .map(|(i, &a)| match a {
                    1 => format!("c{}", i + 1),
                    _ => format!("c{}^{a}", i + 1),
                })
                .collect();
            let text = c.to_string();
            let (neg, mag) = match text.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, text),
            };
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let body = mono.join("*");
            match (mag == "1", body.is_empty()) {
                (_, true) => write!(f, "{mag}")?,
                (true, false) => write!(f, "{body}")?,
                (false, false) => write!(f, "{mag}*{body}")?,
            }
        }
        Ok(())
    }
}

/// A multiplicative sequence `K_0 = 1, K_1, ..., K_n` together with its
/// characteristic series.
#[derive(Clone, Debug, PartialEq)]
pub struct MultSeq {
    chi: TruncSeries<Scalar>,
    polys: Vec<MPoly>,
}

impl MultSeq {
    pub fn order(&self) -> usize {
        self.polys.len() - 1
    }

    pub fn char_series(&self) -> &TruncSeries<Scalar> {
        &self.chi
    }

    /// `K_m`, with `K_0 = 1`.
    pub fn poly(&self, m: usize) -> &MPoly {
        &self.polys[m]
    }

    /// `K_m(values)` in the field of the values.
    pub fn eval(&self, m: usize, values: &[Scalar], field: Field) -> Result<Scalar, ExactError> {
        self.polys[m].eval(values, field)
    }
}

/// Builds `K_1..K_n` from `chi` through the logarithm: with `lambda_m` the
/// coefficients of `log chi` and `p_m` the power sums written in the `c_i`,
/// `log K(f) = sum lambda_m p_m t^m`.
pub fn mult_seq_from_char_series(chi: &TruncSeries<Scalar>, n: usize) -> Result<MultSeq, ExactError> {
    let field = chi.field();
    let chi = TruncSeries::new(chi.coeffs().to_vec(), n, &field.zero());
    let lambda = chi.log()?;
    let nv = n.max(1);
    let generic: Vec<MPoly> = (0..=n)
        .map(|i| match i {
            0 => MPoly::constant(field.one(), nv),
            _ => MPoly::var(field, nv, i),
        })
        .collect();
    let zero = MPoly::zero(field, nv);
    let log_f = TruncSeries::new(generic, n, &zero).log()?;
    let mut log_k = vec![zero.clone(); n + 1];
    for m in 1..=n {
        // power sum p_m = (-1)^(m-1) m [t^m] log f
        let sign = if m % 2 == 1 { 1 } else { -1 };
        let p_m = log_f.coeff(m).mul_int(sign * m as i64);
        log_k[m] = p_m.mul(&MPoly::constant(lambda.coeff(m).clone(), nv));
    }
    let k = TruncSeries::new(log_k, n, &zero).exp()?;
    Ok(MultSeq {
        chi,
        polys: k.coeffs().to_vec(),
    })
}

/// `sum K_m(f_1, ..., f_m) t^m` through the order of `f` (capped by the
/// order of `K`).
pub fn mult_seq_apply(k: &MultSeq, f: &TruncSeries<Scalar>) -> Result<TruncSeries<Scalar>, ExactError> {
    if !f.coeff(0).is_one() {
        return Err(ExactError::ConstantTerm("multiplicative sequence", 1));
    }
    let field = f.field();
    let n = f.order().min(k.order());
    let values = &f.coeffs()[1..];
    let coeffs = (0..=n)
        .map(|m| k.eval(m, values, field))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TruncSeries::new(coeffs, n, &field.zero()))
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    fn h_seq(n: usize) -> MultSeq {
        mult_seq_from_char_series(&TruncSeries::one_plus_t_pow(Q, -1, n), n).unwrap()
    }

    #[test]
    fn identity_sequence() {
        let k = mult_seq_from_char_series(&TruncSeries::from_i64s(Q, &[1, 1], 4), 4).unwrap();
        for m in 1..=4 {
            assert_eq!(k.poly(m), &MPoly::var(Q, 4, m));
        }
    }

    #[test]
    fn inverse_sequence_polynomials() {
        let k = h_seq(3);
        assert_eq!(k.poly(1), &MPoly::from_terms(Q, 3, &[(-1, &[1])]));
        assert_eq!(k.poly(2), &MPoly::from_terms(Q, 3, &[(1, &[2]), (-1, &[0, 1])]));
        assert_eq!(
            k.poly(3),
            &MPoly::from_terms(Q, 3, &[(-1, &[3]), (2, &[1, 1]), (-1, &[0, 0, 1])])
        );
        assert_eq!(k.poly(2).to_string(), "c1^2 - c2");
        assert!(k.poly(3).is_weighted_homogeneous(3));
    }

    #[test]
    fn apply_inverse_sequence() {
        let k = h_seq(5);
        let f = TruncSeries::from_i64s(Q, &[1, 1], 5);
        assert_eq!(
            mult_seq_apply(&k, &f).unwrap(),
            TruncSeries::from_i64s(Q, &[1, -1, 1, -1, 1, -1], 5)
        );
        assert!(mult_seq_apply(&k, &TruncSeries::from_i64s(Q, &[2], 5)).is_err());
    }

    #[test]
    fn constant_term_checked() {
        assert!(mult_seq_from_char_series(&TruncSeries::from_i64s(Q, &[3, 1], 2), 2).is_err());
    }
}
