use crate::exact::Poly;

use super::{miller_function, sigma, Curve, CurvePoint, Divisor, EllipticError, FunctionFieldElement};

/// A basis of `L(D) = { f : div(f) + D >= 0 }`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RRBasis {
    pub divisor: Divisor,
    pub basis: Vec<FunctionFieldElement>,
}

impl RRBasis {
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }
}

/// The representative of the class of `d` used for bases: `deg(d) O` when
/// `sigma(d) = O`, else `(deg(d) - 1) O + (sigma(d))`.
pub fn canonical_representative(curve: &Curve, d: &Divisor) -> Result<Divisor, EllipticError> {
    let deg = d.degree();
    let p = sigma(curve, d)?;
    Ok(if p.is_infinity() {
        Divisor::infinity(deg)
    } else {
        Divisor::infinity(deg - 1).add(&Divisor::point(p, 1))
    })
}

/// `u_P = l / (x - x_P)` with `l = y + y_P - s (x - x_P)` a line through
/// `-P`; the first integer slope `s = 0, 1, ...` giving a simple pole at
/// `P` is used.
fn u_function(curve: &Curve, p: &CurvePoint) -> Result<FunctionFieldElement, EllipticError> {
    let f = curve.field();
    let (xp, yp) = p.coords().expect("affine point");
    let v = Poly::linear_root(xp);
    for s in 0..8 {
        let s = f.from_i64(s);
        // y + yp - s (x - xp)
        let a = Poly::new(f, vec![yp + &(&s * xp), -&s]);
        let l = FunctionFieldElement::new(curve, a, Poly::one(f), Poly::one(f))?;
        let u = l.div(&FunctionFieldElement::from_poly(curve, v.clone()))?;
        if u.order_at(p)? == -1 {
            return Ok(u);
        }
    }
    Err(EllipticError::Inconsistent(format!("no slope gives a simple pole at {p}")))
}

/// Basis of `L(d_can)` for the canonical representative.
fn canonical_basis(curve: &Curve, deg: i64, p: &CurvePoint) -> Result<Vec<FunctionFieldElement>, EllipticError> {
    if !p.is_infinity() && deg == 1 {
        return Ok(vec![FunctionFieldElement::one(curve)]);
    }
    let bound = if p.is_infinity() { deg } else { deg - 1 };
    let mut out = Vec::new();
    for w in 0..=bound {
        // pole order w: x^i with 2i = w or x^i y with 2i + 3 = w
        match (w % 2, w) {
            (0, _) => out.push(FunctionFieldElement::monomial(curve, (w / 2) as usize, 0)),
            (_, w) if w >= 3 => out.push(FunctionFieldElement::monomial(curve, ((w - 3) / 2) as usize, 1)),
            _ => {}
        }
    }
    if !p.is_infinity() {
        out.push(u_function(curve, p)?);
    }
    Ok(out)
}

/// Basis of `L(d)` with exactly `deg d` elements: a basis of the canonical
/// representative divided by a Miller function for the difference.
pub fn rr_basis(curve: &Curve, d: &Divisor) -> Result<RRBasis, EllipticError> {
    let deg = d.degree();
    if deg < 1 {
        return Err(EllipticError::DegreeTooSmall { need: 1, got: deg });
    }
    for p in d.support() {
        curve.check(p)?;
    }
    let can = canonical_representative(curve, d)?;
    let g = miller_function(curve, &d.sub(&can))?.expand();
    let p = sigma(curve, d)?;
    let basis = canonical_basis(curve, deg, &p)?
        .into_iter()
        .map(|b| b.div(&g))
        .collect::<Result<Vec<_>, _>>()?;
    debug_assert_eq!(basis.len() as i64, deg);
    Ok(RRBasis {
        divisor: d.clone(),
        basis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Field;

    fn e() -> Curve {
        Curve::from_i64(Field::Rational, 0, 1).unwrap()
    }

    #[test]
    fn bases_at_infinity() {
        let e = e();
        let x = FunctionFieldElement::x(&e);
        let one = FunctionFieldElement::one(&e);
        let y = FunctionFieldElement::y(&e);
        assert_eq!(rr_basis(&e, &Divisor::infinity(2)).unwrap().basis, vec![one.clone(), x.clone()]);
        assert_eq!(rr_basis(&e, &Divisor::infinity(3)).unwrap().basis, vec![one, x, y]);
        assert_eq!(rr_basis(&e, &Divisor::infinity(1)).unwrap().len(), 1);
    }

    #[test]
    fn basis_with_a_finite_point() {
        let e = e();
        let d = Divisor::parse("O:1;2,3:1", &e).unwrap();
        let b = rr_basis(&e, &d).unwrap();
        assert_eq!(b.len(), 2);
        assert_eq!(b.basis[0], FunctionFieldElement::one(&e));
        let u = &b.basis[1];
        assert_eq!(u.order_at(&e.point_i64(2, 3).unwrap()).unwrap(), -1);
        assert!(u.order_at(&CurvePoint::Infinity).unwrap() >= -1);
        assert!(u.satisfies_bound(&d).unwrap());
    }

    #[test]
    fn two_torsion_point() {
        let e = e();
        let d = Divisor::parse("O:2;-1,0:1", &e).unwrap();
        let b = rr_basis(&e, &d).unwrap();
        assert_eq!(b.len(), 3);
        for f in &b.basis {
            assert!(f.satisfies_bound(&d).unwrap());
        }
    }

    #[test]
    fn degree_checked() {
        assert!(matches!(
            rr_basis(&e(), &Divisor::zero()),
            Err(EllipticError::DegreeTooSmall { .. })
        ));
    }
}
