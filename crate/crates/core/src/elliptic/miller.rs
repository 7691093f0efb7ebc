use crate::exact::Poly;

use super::{sigma, Curve, CurvePoint, Divisor, EllipticError, FunctionFieldElement};

/// A function kept as a product of line factors with integer exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MillerFunction {
    curve: Curve,
    factors: Vec<(FunctionFieldElement, i64)>,
}

impl MillerFunction {
    pub fn factors(&self) -> &[(FunctionFieldElement, i64)] {
        &self.factors
    }

    /// The product in canonical form.
    pub fn expand(&self) -> FunctionFieldElement {
        let mut num = FunctionFieldElement::one(&self.curve);
        let mut den = FunctionFieldElement::one(&self.curve);
        for (f, e) in &self.factors {
            let p = f.pow(e.unsigned_abs() as usize);
            if *e > 0 {
                num = num.mul(&p);
            } else {
                den = den.mul(&p);
            }
        }
        num.div(&den).expect("line factors are nonzero")
    }

    fn push(&mut self, f: FunctionFieldElement, e: i64) {
        if f != FunctionFieldElement::one(&self.curve) {
            self.factors.push((f, e));
        }
    }
}

/// `x - x_P`.
fn vertical(curve: &Curve, p: &CurvePoint) -> FunctionFieldElement {
    let (x, _) = p.coords().expect("affine point");
    FunctionFieldElement::from_poly(curve, Poly::linear_root(x))
}

/// Line through `p` and `q` (tangent if equal), monic in `y`; vertical
/// lines are `x - x_P`.
fn line(curve: &Curve, p: &CurvePoint, q: &CurvePoint) -> FunctionFieldElement {
    let f = curve.field();
    match curve.slope(p, q) {
        None => vertical(curve, p),
        Some(l) => {
            let (x1, y1) = p.coords().expect("affine point");
            // y - y1 - l (x - x1)
            let a = Poly::new(f, vec![&(&l * x1) - y1, -&l]);
            FunctionFieldElement::new(curve, a, Poly::one(f), Poly::one(f)).expect("nonzero")
        }
    }
}

/// A function `g` with `div(g) = d`, for `d` of degree zero with
/// `sigma(d) = O`.
///
/// Each negative point is traded for its negative, using the vertical
/// line: `-(P) + (O) = (-P) - (O) - div(x - x_P)`. Points are then merged
/// pairwise by `(P) + (Q) - 2(O) = (P+Q) - (O) + div(l_{P,Q} / v_{P+Q})`.
pub fn miller_function(curve: &Curve, d: &Divisor) -> Result<MillerFunction, EllipticError> {
    for p in d.support() {
        curve.check(p)?;
    }
    if d.degree() != 0 || !sigma(curve, d)?.is_infinity() {
        return Err(EllipticError::NotPrincipal(d.to_string()));
    }
    let mut g = MillerFunction {
        curve: curve.clone(),
        factors: Vec::new(),
    };
    let mut points: Vec<CurvePoint> = Vec::new();
    for (p, n) in d.terms() {
        if p.is_infinity() {
            continue;
        }
        if n > 0 {
            points.extend(std::iter::repeat_n(p.clone(), n as usize));
        } else {
            points.extend(std::iter::repeat_n(curve.neg(p), (-n) as usize));
            g.push(vertical(curve, p), n);
        }
    }
    // balanced merging keeps the factor degrees small
    while points.len() > 1 {
        let mut next = Vec::with_capacity(points.len().div_ceil(2));
        let mut it = points.into_iter();
        while let Some(p) = it.next() {
            let Some(q) = it.next() else {
                next.push(p);
                break;
            };
            if p.is_infinity() {
                next.push(q);
                continue;
            }
            if q.is_infinity() {
                next.push(p);
                continue;
            }
            let s = curve.add_unchecked(&p, &q);
            g.push(line(curve, &p, &q), 1);
            if !s.is_infinity() {
                g.push(vertical(curve, &s), -1);
            }
            next.push(s);
        }
        points = next;
    }
    debug_assert!(points.first().is_none_or(CurvePoint::is_infinity));
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Field;

    fn e() -> Curve {
        Curve::from_i64(Field::Rational, 0, 1).unwrap()
    }

    #[test]
    fn small_examples() {
        let e = e();
        let d = Divisor::parse("0,1;0,-1;O:-2", &e).unwrap();
        assert_eq!(miller_function(&e, &d).unwrap().expand(), FunctionFieldElement::x(&e));
        let d = Divisor::parse("-1,0:2;O:-2", &e).unwrap();
        let x1 = FunctionFieldElement::x(&e).add(&FunctionFieldElement::one(&e));
        assert_eq!(miller_function(&e, &d).unwrap().expand(), x1);
        assert_eq!(miller_function(&e, &Divisor::zero()).unwrap().expand(), FunctionFieldElement::one(&e));
    }

    #[test]
    fn rejects_non_principal() {
        let e = e();
        let d = Divisor::parse("2,3;O:-1", &e).unwrap();
        assert!(matches!(miller_function(&e, &d), Err(EllipticError::NotPrincipal(_))));
        assert!(miller_function(&e, &Divisor::infinity(1)).is_err());
    }

    #[test]
    fn torsion_point_divisor() {
        // (2,3) has order 6
        let e = e();
        let p = e.point_i64(2, 3).unwrap();
        let d = Divisor::point(p, 6).sub(&Divisor::infinity(6));
        let g = miller_function(&e, &d).unwrap().expand();
        assert!(g.has_divisor(&d).unwrap());
        let neg = d.scale(-1);
        assert!(miller_function(&e, &neg).unwrap().expand().has_divisor(&neg).unwrap());
    }
}
