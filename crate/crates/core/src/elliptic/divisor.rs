use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;

use crate::exact::Field;

use super::{Curve, CurvePoint, EllipticError};

/// Finite formal sum of points with nonzero integer multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Divisor {
    terms: BTreeMap<CurvePoint, i64>,
}

impl Divisor {
    pub fn zero() -> Divisor {
        Divisor::default()
    }

    /// `n (P)`.
    pub fn point(p: CurvePoint, n: i64) -> Divisor {
        let mut d = Divisor::zero();
        d.add_term(p, n);
        d
    }

    pub fn infinity(n: i64) -> Divisor {
        Divisor::point(CurvePoint::Infinity, n)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (CurvePoint, i64)>) -> Divisor {
        let mut d = Divisor::zero();
        for (p, n) in terms {
            d.add_term(p, n);
        }
        d
    }

    pub fn add_term(&mut self, p: CurvePoint, n: i64) {
        let m = self.terms.get(&p).copied().unwrap_or(0) + n;
        if m == 0 {
            self.terms.remove(&p);
        } else {
            self.terms.insert(p, m);
        }
    }

    pub fn mult(&self, p: &CurvePoint) -> i64 {
        self.terms.get(p).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CurvePoint, i64)> {
        self.terms.iter().map(|(p, &n)| (p, n))
    }

    pub fn support(&self) -> impl Iterator<Item = &CurvePoint> {
        self.terms.keys()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn is_effective(&self) -> bool {
        self.terms.values().all(|&n| n > 0)
    }

    pub fn add(&self, rhs: &Divisor) -> Divisor {
        let mut out = self.clone();
        for (p, &n) in &rhs.terms {
            out.add_term(p.clone(), n);
        }
        out
    }

    pub fn sub(&self, rhs: &Divisor) -> Divisor {
        self.add(&rhs.scale(-1))
    }

    pub fn scale(&self, c: i64) -> Divisor {
        Divisor::from_terms(self.terms.iter().map(|(p, &n)| (p.clone(), c * n)))
    }

    /// Parses `"x,y:mult;O:mult"`; a missing `:mult` means 1 and the empty
    /// string is the zero divisor. Points are checked against the curve.
    pub fn parse(text: &str, curve: &Curve) -> Result<Divisor, EllipticError> {
        let field = curve.field();
        let mut d = Divisor::zero();
        for item in text.split(';').map(str::trim).filter(|s| !s.is_empty()) {
            let (pt, mult) = match item.rsplit_once(':') {
                // `Fp:`-style colons never occur inside a point
                Some((pt, m)) => (
                    pt.trim(),
                    m.trim()
                        .parse::<i64>()
                        .map_err(|_| EllipticError::Parse(format!("multiplicity in {item:?}")))?,
                ),
                None => (item, 1),
            };
            let p = parse_point(pt, field)?;
            curve.check(&p)?;
            d.add_term(p, mult);
        }
        Ok(d)
    }
}

fn parse_point(text: &str, field: Field) -> Result<CurvePoint, EllipticError> {
    if text == "O" {
        return Ok(CurvePoint::Infinity);
    }
    let (x, y) = text
        .split_once(',')
        .ok_or_else(|| EllipticError::Parse(format!("point {text:?}: expected x,y or O")))?;
    Ok(CurvePoint::Affine {
        x: field.parse_scalar(x.trim())?,
        y: field.parse_scalar(y.trim())?,
    })
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(|(p, n)| format!("{p}:{n}")).collect();
        write!(f, "{}", parts.join(";"))
    }
}

/// Group-law sum `sum n_i P_i` over the support.
pub fn sigma(curve: &Curve, d: &Divisor) -> Result<CurvePoint, EllipticError> {
    let mut acc = CurvePoint::Infinity;
    for (p, n) in d.terms() {
        acc = curve.add_unchecked(&acc, &curve.scalar_mul(n, p)?);
    }
    Ok(acc)
}

/// Equal degree and equal `sigma`.
pub fn lin_equiv(curve: &Curve, d1: &Divisor, d2: &Divisor) -> Result<bool, EllipticError> {
    Ok(d1.degree() == d2.degree() && sigma(curve, d1)? == sigma(curve, d2)?)
}

/// Effective divisor of the given degree with random affine points.
pub fn random_effective<R: Rng + ?Sized>(
    curve: &Curve,
    degree: usize,
    rng: &mut R,
) -> Result<Divisor, EllipticError> {
    let mut d = Divisor::zero();
    for _ in 0..degree {
        d.add_term(curve.random_point(rng)?, 1);
    }
    Ok(d)
}

/// Effective divisor of the given degree (at least 1) with `sigma` equal
/// to `target`: random points plus one point fixing the sum.
pub fn random_in_class<R: Rng + ?Sized>(
    curve: &Curve,
    degree: usize,
    target: &CurvePoint,
    rng: &mut R,
) -> Result<Divisor, EllipticError> {
    assert!(degree >= 1);
    let mut d = random_effective(curve, degree - 1, rng)?;
    let rest = curve.add_unchecked(target, &curve.neg(&sigma(curve, &d)?));
    d.add_term(rest, 1);
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e() -> Curve {
        Curve::from_i64(Field::Rational, 0, 1).unwrap()
    }

    #[test]
    fn sigma_examples() {
        let e = e();
        let d = Divisor::parse("0,1;0,-1", &e).unwrap();
        assert_eq!(sigma(&e, &d).unwrap(), CurvePoint::Infinity);
        assert_eq!(sigma(&e, &Divisor::infinity(3)).unwrap(), CurvePoint::Infinity);
        let p = e.point_i64(2, 3).unwrap();
        let d = Divisor::point(p.clone(), 2).sub(&Divisor::point(p.clone(), 1));
        assert_eq!(sigma(&e, &d).unwrap(), p);
    }

    #[test]
    fn equivalence_examples() {
        let e = e();
        let d = Divisor::parse("0,1:1;0,-1:1", &e).unwrap();
        assert!(lin_equiv(&e, &d, &Divisor::infinity(2)).unwrap());
        assert!(lin_equiv(&e, &d, &d).unwrap());
        assert!(!lin_equiv(&e, &Divisor::infinity(2), &Divisor::infinity(3)).unwrap());
    }

    #[test]
    fn parse_and_display() {
        let e = e();
        let d = Divisor::parse("0,1:2;O:-1", &e).unwrap();
        assert_eq!(d.degree(), 1);
        assert_eq!(d.mult(&CurvePoint::Infinity), -1);
        assert_eq!(Divisor::parse(&d.to_string(), &e).unwrap(), d);
        assert!(Divisor::parse("1,1:1", &e).is_err());
        assert!(Divisor::parse("0,1:x", &e).is_err());
        assert!(Divisor::parse("", &e).unwrap().is_zero());
    }
}
