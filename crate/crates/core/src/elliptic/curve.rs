use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::exact::{Field, Poly, Scalar};

use super::EllipticError;

/// `y^2 = x^3 + A x + B` over `Q` or `F_p` with `p > 3`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Curve {
    a: Scalar,
    b: Scalar,
    rhs: Poly,
}

impl Curve {
    pub fn new(a: Scalar, b: Scalar) -> Result<Curve, EllipticError> {
        let field = a.field();
        if let Field::Prime(p) = field {
            if p <= 3 {
                return Err(EllipticError::BadCharacteristic(p));
            }
        }
        let disc = {
            let four_a3 = &field.from_i64(4) * &a.pow(3);
            let b2 = &field.from_i64(27) * &b.pow(2);
            &field.from_i64(-16) * &(&four_a3 + &b2)
        };
        if disc.is_zero() {
            return Err(EllipticError::Singular);
        }
        let rhs = Poly::new(field, vec![b.clone(), a.clone(), field.zero(), field.one()]);
        Ok(Curve { a, b, rhs })
    }

    pub fn from_i64(field: Field, a: i64, b: i64) -> Result<Curve, EllipticError> {
        Curve::new(field.from_i64(a), field.from_i64(b))
    }

    pub fn field(&self) -> Field {
        self.a.field()
    }

    pub fn a(&self) -> &Scalar {
        &self.a
    }

    pub fn b(&self) -> &Scalar {
        &self.b
    }

    /// `x^3 + A x + B`.
    pub fn rhs(&self) -> &Poly {
        &self.rhs
    }

    pub fn contains(&self, p: &CurvePoint) -> bool {
        match p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine { x, y } => {
                x.field() == self.field() && y.field() == self.field() && y.pow(2) == self.rhs.eval(x)
            }
        }
    }

    /// Affine point with the given coordinates, checked.
    pub fn point(&self, x: Scalar, y: Scalar) -> Result<CurvePoint, EllipticError> {
        let p = CurvePoint::Affine { x, y };
        self.check(&p)?;
        Ok(p)
    }

    pub fn point_i64(&self, x: i64, y: i64) -> Result<CurvePoint, EllipticError> {
        let f = self.field();
        self.point(f.from_i64(x), f.from_i64(y))
    }

    pub(crate) fn check(&self, p: &CurvePoint) -> Result<(), EllipticError> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(EllipticError::NotOnCurve(p.to_string()))
        }
    }

    pub fn neg(&self, p: &CurvePoint) -> CurvePoint {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => CurvePoint::Affine { x: x.clone(), y: -y },
        }
    }

    /// Slope of the chord through `p, q` (tangent if equal), `None` when
    /// the line is vertical.
    pub fn slope(&self, p: &CurvePoint, q: &CurvePoint) -> Option<Scalar> {
        let (CurvePoint::Affine { x: x1, y: y1 }, CurvePoint::Affine { x: x2, y: y2 }) = (p, q) else {
            return None;
        };
        let f = self.field();
        if x1 != x2 {
            Some(&(y2 - y1) / &(x2 - x1))
        } else if y1 == y2 && !y1.is_zero() {
            let num = &(&f.from_i64(3) * &x1.pow(2)) + &self.a;
            Some(&num / &(&f.from_i64(2) * y1))
        } else {
            None
        }
    }

    pub fn add(&self, p: &CurvePoint, q: &CurvePoint) -> Result<CurvePoint, EllipticError> {
        self.check(p)?;
        self.check(q)?;
        Ok(self.add_unchecked(p, q))
    }

    pub(crate) fn add_unchecked(&self, p: &CurvePoint, q: &CurvePoint) -> CurvePoint {
        match (p, q) {
            (CurvePoint::Infinity, _) => q.clone(),
            (_, CurvePoint::Infinity) => p.clone(),
            (CurvePoint::Affine { x: x1, y: y1 }, CurvePoint::Affine { x: x2, .. }) => {
                match self.slope(p, q) {
                    None => CurvePoint::Infinity,
                    Some(l) => {
                        let x3 = &(&l.pow(2) - x1) - x2;
                        let y3 = &(&l * &(x1 - &x3)) - y1;
                        CurvePoint::Affine { x: x3, y: y3 }
                    }
                }
            }
        }
    }

    /// `n p` for any integer `n`, by double-and-add.
    pub fn scalar_mul(&self, n: i64, p: &CurvePoint) -> Result<CurvePoint, EllipticError> {
        self.check(p)?;
        let mut base = if n < 0 { self.neg(p) } else { p.clone() };
        let mut m = n.unsigned_abs();
        let mut acc = CurvePoint::Infinity;
        while m > 0 {
            if m & 1 == 1 {
                acc = self.add_unchecked(&acc, &base);
            }
            base = self.add_unchecked(&base, &base);
            m >>= 1;
        }
        Ok(acc)
    }

    /// Random affine point: random `x` until `x^3 + A x + B` is a square.
    /// Over `Q` only small integer abscissae are tried, so this can fail.
    pub fn random_point<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<CurvePoint, EllipticError> {
        let f = self.field();
        for _ in 0..2000 {
            let x = f.random(rng);
            if let Some(y) = self.rhs.eval(&x).sqrt() {
                let y = if rng.gen_bool(0.5) { -y } else { y };
                return Ok(CurvePoint::Affine { x, y });
            }
        }
        Err(EllipticError::NoPoints)
    }

    /// Affine points with integer abscissa in `lo..=hi`, both signs of `y`.
    pub fn points_with_small_x(&self, lo: i64, hi: i64) -> Vec<CurvePoint> {
        let f = self.field();
        let mut out = Vec::new();
        for xv in lo..=hi {
            let x = f.from_i64(xv);
            if let Some(y) = self.rhs.eval(&x).sqrt() {
                out.push(CurvePoint::Affine { x: x.clone(), y: y.clone() });
                if !y.is_zero() {
                    out.push(CurvePoint::Affine { x, y: -y });
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}@{}", self.a, self.b, self.field())
    }
}

impl FromStr for Curve {
    type Err = EllipticError;

    /// `"A,B@Q"` or `"A,B@Fp:p"`.
    fn from_str(s: &str) -> Result<Curve, EllipticError> {
        let bad = || EllipticError::Parse(format!("curve {s:?}: expected A,B@FIELD"));
        let (coeffs, field) = s.trim().split_once('@').ok_or_else(bad)?;
        let field: Field = field.trim().parse()?;
        let (a, b) = coeffs.split_once(',').ok_or_else(bad)?;
        Curve::new(field.parse_scalar(a.trim())?, field.parse_scalar(b.trim())?)
    }
}

/// A point of the curve: the point at infinity or an affine point.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CurvePoint {
    Infinity,
    Affine { x: Scalar, y: Scalar },
}

impl CurvePoint {
    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }

    pub fn coords(&self) -> Option<(&Scalar, &Scalar)> {
        match self {
            CurvePoint::Infinity => None,
            CurvePoint::Affine { x, y } => Some((x, y)),
        }
    }

    /// Affine with `y = 0`.
    pub fn is_two_torsion(&self) -> bool {
        matches!(self, CurvePoint::Affine { y, .. } if y.is_zero())
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::Infinity => write!(f, "O"),
            CurvePoint::Affine { x, y } => write!(f, "{x},{y}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e() -> Curve {
        Curve::from_i64(Field::Rational, 0, 1).unwrap()
    }

    #[test]
    fn group_law_examples() {
        let e = e();
        let p = e.point_i64(0, 1).unwrap();
        assert_eq!(e.add(&p, &p).unwrap(), e.point_i64(0, -1).unwrap());
        assert_eq!(e.add(&p, &CurvePoint::Infinity).unwrap(), p);
        assert_eq!(e.scalar_mul(3, &p).unwrap(), CurvePoint::Infinity);
        assert_eq!(e.scalar_mul(-1, &p).unwrap(), e.neg(&p));
        // (2,3) has order 6 on this curve
        let q = e.point_i64(2, 3).unwrap();
        assert_eq!(e.scalar_mul(6, &q).unwrap(), CurvePoint::Infinity);
        assert_ne!(e.scalar_mul(3, &q).unwrap(), CurvePoint::Infinity);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(Curve::from_i64(Field::Rational, 0, 0), Err(EllipticError::Singular)));
        assert!(e().point_i64(1, 1).is_err());
        assert!("1,2".parse::<Curve>().is_err());
    }

    #[test]
    fn text_round_trip() {
        for text in ["0,1@Q", "2,3@Fp:10007", "-1,1/2@Q"] {
            let c: Curve = text.parse().unwrap();
            assert_eq!(c.to_string(), text);
        }
    }

    #[test]
    fn sampled_points_lie_on_curve() {
        use rand::SeedableRng;
        let e = Curve::from_i64(Field::default_prime(), 2, 3).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            assert!(e.contains(&e.random_point(&mut rng).unwrap()));
        }
        assert!(self::e().points_with_small_x(-2, 3).contains(&self::e().point_i64(2, 3).unwrap()));
    }
}
