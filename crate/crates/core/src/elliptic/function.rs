use std::fmt;

use crate::exact::{ExactMatrix, Poly, Scalar, TruncSeries};

use super::{Curve, CurvePoint, Divisor, EllipticError};

/// `(a(x) + b(x) y) / c(x)` on a curve, kept with `c` monic and
/// `gcd(a, b, c) = 1`, so equal functions have equal representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FunctionFieldElement {
    curve: Curve,
    a: Poly,
    b: Poly,
    c: Poly,
}

impl FunctionFieldElement {
    pub fn new(curve: &Curve, a: Poly, b: Poly, c: Poly) -> Result<FunctionFieldElement, EllipticError> {
        if c.is_zero() {
            return Err(EllipticError::ZeroFunction);
        }
        Ok(FunctionFieldElement {
            curve: curve.clone(),
            a,
            b,
            c,
        }
        .canonical())
    }

    pub fn from_poly(curve: &Curve, a: Poly) -> FunctionFieldElement {
        let f = curve.field();
        FunctionFieldElement::new(curve, a, Poly::zero(f), Poly::one(f)).expect("nonzero denominator")
    }

    pub fn constant(curve: &Curve, c: Scalar) -> FunctionFieldElement {
        FunctionFieldElement::from_poly(curve, Poly::constant(c))
    }

    pub fn one(curve: &Curve) -> FunctionFieldElement {
        FunctionFieldElement::constant(curve, curve.field().one())
    }

    pub fn x(curve: &Curve) -> FunctionFieldElement {
        FunctionFieldElement::from_poly(curve, Poly::x(curve.field()))
    }

    pub fn y(curve: &Curve) -> FunctionFieldElement {
        let f = curve.field();
        FunctionFieldElement::new(curve, Poly::zero(f), Poly::one(f), Poly::one(f)).expect("nonzero")
    }

    /// `x^i y^j`.
    pub fn monomial(curve: &Curve, i: usize, j: usize) -> FunctionFieldElement {
        FunctionFieldElement::x(curve).pow(i).mul(&FunctionFieldElement::y(curve).pow(j))
    }

    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    /// `(a, b, c)` with value `(a + b y) / c`.
    pub fn parts(&self) -> (&Poly, &Poly, &Poly) {
        (&self.a, &self.b, &self.c)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn canonical(mut self) -> FunctionFieldElement {
        let f = self.curve.field();
        if self.is_zero() {
            self.c = Poly::one(f);
            return self;
        }
        let g = self.a.gcd(&self.b).gcd(&self.c);
        if !g.is_constant() {
            self.a = self.a.div_exact(&g).expect("gcd divides");
            self.b = self.b.div_exact(&g).expect("gcd divides");
            self.c = self.c.div_exact(&g).expect("gcd divides");
        }
        let lead = self.c.leading().expect("nonzero").inv().expect("nonzero");
        self.a = self.a.scale(&lead);
        self.b = self.b.scale(&lead);
        self.c = self.c.scale(&lead);
        self
    }

    fn check_curve(&self, rhs: &FunctionFieldElement) {
        assert_eq!(self.curve, rhs.curve, "functions on different curves");
    }

    pub fn add(&self, rhs: &FunctionFieldElement) -> FunctionFieldElement {
        self.check_curve(rhs);
        FunctionFieldElement {
            curve: self.curve.clone(),
            a: self.a.mul(&rhs.c).add(&rhs.a.mul(&self.c)),
            b: self.b.mul(&rhs.c).add(&rhs.b.mul(&self.c)),
            c: self.c.mul(&rhs.c),
        }
        .canonical()
    }

    pub fn neg(&self) -> FunctionFieldElement {
        FunctionFieldElement {
            a: self.a.neg(),
            b: self.b.neg(),
            ..self.clone()
        }
    }

    pub fn sub(&self, rhs: &FunctionFieldElement) -> FunctionFieldElement {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &FunctionFieldElement) -> FunctionFieldElement {
        self.check_curve(rhs);
        let f = self.curve.rhs();
        FunctionFieldElement {
            curve: self.curve.clone(),
            a: self.a.mul(&rhs.a).add(&self.b.mul(&rhs.b).mul(f)),
            b: self.a.mul(&rhs.b).add(&self.b.mul(&rhs.a)),
            c: self.c.mul(&rhs.c),
        }
        .canonical()
    }

    pub fn scale(&self, s: &Scalar) -> FunctionFieldElement {
        FunctionFieldElement {
            a: self.a.scale(s),
            b: self.b.scale(s),
            ..self.clone()
        }
        .canonical()
    }

    pub fn pow(&self, e: usize) -> FunctionFieldElement {
        (0..e).fold(FunctionFieldElement::one(&self.curve), |acc, _| acc.mul(self))
    }

    /// `a^2 - b^2 f`, the norm of the numerator `a + b y`.
    pub fn numerator_norm(&self) -> Poly {
        self.a.mul(&self.a).sub(&self.b.mul(&self.b).mul(self.curve.rhs()))
    }

    /// `1 / ((a + b y)/c) = c (a - b y) / (a^2 - b^2 f)`.
    pub fn inv(&self) -> Result<FunctionFieldElement, EllipticError> {
        if self.is_zero() {
            return Err(EllipticError::ZeroFunction);
        }
        FunctionFieldElement::new(&self.curve, self.c.mul(&self.a), self.c.mul(&self.b).neg(), self.numerator_norm())
    }

    pub fn div(&self, rhs: &FunctionFieldElement) -> Result<FunctionFieldElement, EllipticError> {
        Ok(self.mul(&rhs.inv()?))
    }

    /// Value at an affine point, `None` where the denominator vanishes.
    pub fn eval(&self, p: &CurvePoint) -> Option<Scalar> {
        let (x, y) = p.coords()?;
        let den = self.c.eval(x);
        if den.is_zero() {
            return None;
        }
        Some(&(&self.a.eval(x) + &(&self.b.eval(x) * y)) / &den)
    }

    /// Order and leading Laurent coefficient at `p`, in the local parameter
    /// `x - x_P` (ordinary points), `y` (2-torsion points) or `x/y` (at O).
    pub fn laurent_leading(&self, p: &CurvePoint) -> Result<(i64, Scalar), EllipticError> {
        if self.is_zero() {
            return Err(EllipticError::ZeroFunction);
        }
        self.curve.check(p)?;
        let (on, ln) = numerator_leading(&self.curve, &self.a, &self.b, p);
        let (od, ld) = numerator_leading(&self.curve, &self.c, &Poly::zero(self.curve.field()), p);
        Ok((on - od, &ln / &ld))
    }

    pub fn order_at(&self, p: &CurvePoint) -> Result<i64, EllipticError> {
        Ok(self.laurent_leading(p)?.0)
    }

    /// Degree of the affine pole divisor: the rank of multiplication by the
    /// numerator on `R / c R`, `R = F[x, y] / (y^2 - f)`.
    pub fn affine_pole_degree(&self) -> usize {
        multiplication_rank(&self.curve, &self.a, &self.b, &self.c)
    }

    /// Degree of the affine zero divisor, i.e. the pole degree of the
    /// inverse `c (a - b y) / (a^2 - b^2 f)`.
    pub fn affine_zero_degree(&self) -> usize {
        if self.is_zero() {
            return 0;
        }
        let n = self.numerator_norm();
        multiplication_rank(&self.curve, &self.c.mul(&self.a), &self.c.mul(&self.b).neg(), &n)
    }

    /// Exact test of `div(self) = d`: orders agree on the support of `d` and
    /// at O, and the affine zero and pole degrees equal those of `d`, so no
    /// other zeros or poles exist.
    pub fn has_divisor(&self, d: &Divisor) -> Result<bool, EllipticError> {
        if self.is_zero() {
            return Ok(false);
        }
        let mut points: Vec<&CurvePoint> = d.support().collect();
        if d.mult(&CurvePoint::Infinity) == 0 {
            points.push(&CurvePoint::Infinity);
        }
        for p in points {
            if self.order_at(p)? != d.mult(p) {
                return Ok(false);
            }
        }
        let (mut zeros, mut poles) = (0usize, 0usize);
        for (p, n) in d.terms() {
            if !p.is_infinity() {
                if n > 0 {
                    zeros += n as usize;
                } else {
                    poles += (-n) as usize;
                }
            }
        }
        Ok(self.affine_zero_degree() == zeros && self.affine_pole_degree() == poles)
    }

    /// Exact test of `div(self) + d >= 0`.
    pub fn satisfies_bound(&self, d: &Divisor) -> Result<bool, EllipticError> {
        if self.is_zero() {
            return Ok(true);
        }
        let mut allowed_poles = 0usize;
        let mut points: Vec<&CurvePoint> = d.support().collect();
        if d.mult(&CurvePoint::Infinity) == 0 {
            points.push(&CurvePoint::Infinity);
        }
        for p in points {
            let ord = self.order_at(p)?;
            let m = d.mult(p);
            if ord < -m {
                return Ok(false);
            }
            if !p.is_infinity() && ord < 0 {
                allowed_poles += (-ord) as usize;
            }
        }
        // poles on the support account for every affine pole
        Ok(self.affine_pole_degree() == allowed_poles)
    }
}

/// Order and leading coefficient of `a + b y` at `p` (nonzero numerator).
fn numerator_leading(curve: &Curve, a: &Poly, b: &Poly, p: &CurvePoint) -> (i64, Scalar) {
    match p {
        CurvePoint::Infinity => {
            // x ~ t^-2 and y ~ t^-3 with leading coefficient 1 in t = x/y
            let oa = a.degree().map(|d| 2 * d as i64);
            let ob = b.degree().map(|d| 2 * d as i64 + 3);
            match (oa, ob) {
                (Some(da), Some(db)) if da > db => (-da, a.leading().unwrap().clone()),
                (_, Some(db)) => (-db, b.leading().unwrap().clone()),
                (Some(da), None) => (-da, a.leading().unwrap().clone()),
                (None, None) => unreachable!("zero numerator"),
            }
        }
        CurvePoint::Affine { x, y } => {
            // order is at most the number of affine zeros, deg of the norm
            let norm = a.mul(a).sub(&b.mul(b).mul(curve.rhs()));
            let prec = norm.degree().unwrap_or(0) + 2;
            let (xs, ys) = local_expansion(curve, x, y, prec);
            let s = poly_at_series(a, &xs).add(&poly_at_series(b, &xs).mul(&ys));
            let ord = s
                .coeffs()
                .iter()
                .position(|c| !c.is_zero())
                .expect("expansion precision covers the order");
            (ord as i64, s.coeff(ord).clone())
        }
    }
}

/// Expansions of `x` and `y` in the local parameter at an affine point.
fn local_expansion(curve: &Curve, x0: &Scalar, y0: &Scalar, n: usize) -> (TruncSeries<Scalar>, TruncSeries<Scalar>) {
    let f = curve.field();
    let zero = f.zero();
    if !y0.is_zero() {
        // t = x - x0, y^2 = f(x0 + t) solved term by term
        let xs = TruncSeries::new(vec![x0.clone(), f.one()], n, &zero);
        let shifted = curve.rhs().taylor_shift(x0);
        let two_y0_inv = (&f.from_i64(2) * y0).inv().expect("y0 nonzero, char not 2");
        let mut ys = vec![y0.clone()];
        for m in 1..=n {
            let mut acc = shifted.coeff(m);
            for i in 1..m {
                acc = &acc - &(&ys[i] * &ys[m - i]);
            }
            ys.push(&acc * &two_y0_inv);
        }
        (xs, TruncSeries::new(ys, n, &zero))
    } else {
        // t = y, x = x0 + u with t^2 = f'(x0) u + 3 x0 u^2 + u^3
        let fp = curve.rhs().derivative().eval(x0);
        let fp_inv = fp.inv().expect("simple root of a nonsingular cubic");
        let t2 = TruncSeries::new(vec![zero.clone(), zero.clone(), f.one()], n, &zero);
        let three_x0 = TruncSeries::constant(&f.from_i64(3) * x0, n);
        let mut u = TruncSeries::constant(zero.clone(), n);
        // each pass fixes at least one more coefficient
        for _ in 0..=n {
            let u2 = u.mul(&u);
            let rhs = t2.sub(&three_x0.mul(&u2)).sub(&u2.mul(&u));
            u = rhs.mul(&TruncSeries::constant(fp_inv.clone(), n));
        }
        let xs = TruncSeries::constant(x0.clone(), n).add(&u);
        let ys = TruncSeries::new(vec![zero.clone(), f.one()], n, &zero);
        (xs, ys)
    }
}

fn poly_at_series(p: &Poly, s: &TruncSeries<Scalar>) -> TruncSeries<Scalar> {
    let n = s.order();
    let zero = p.field().zero();
    p.coeffs()
        .iter()
        .rev()
        .fold(TruncSeries::constant(zero, n), |acc, c| {
            acc.mul(s).add(&TruncSeries::constant(c.clone(), n))
        })
}

/// Rank of `r -> r (a + b y)` on `R / c R`, with basis `x^i, x^i y` for
/// `i < deg c`.
fn multiplication_rank(curve: &Curve, a: &Poly, b: &Poly, c: &Poly) -> usize {
    let m = c.degree().expect("nonzero modulus");
    if m == 0 {
        return 0;
    }
    let field = curve.field();
    let a = a.rem(c);
    let b = b.rem(c);
    let bf = b.mul(curve.rhs()).rem(c);
    let mut cols: Vec<Vec<Scalar>> = Vec::with_capacity(2 * m);
    for j in 0..2 {
        for i in 0..m {
            let xi = Poly::x(field).pow(i);
            // (x^i y^j)(a + b y)
            let (p, q) = if j == 0 {
                (xi.mul(&a), xi.mul(&b))
            } else {
                (xi.mul(&bf), xi.mul(&a))
            };
            let (p, q) = (p.rem(c), q.rem(c));
            cols.push((0..m).map(|k| p.coeff(k)).chain((0..m).map(|k| q.coeff(k))).collect());
        }
    }
    ExactMatrix::from_rows(field, 2 * m, cols).rank()
}

impl fmt::Display for FunctionFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = match (self.a.is_zero(), self.b.is_zero()) {
            (true, true) => "0".to_string(),
            (false, true) => format!("{}", self.a),
            (true, false) => format!("({})*y", self.b),
            (false, false) => format!("{} + ({})*y", self.a, self.b),
        };
        if self.c.is_constant() {
            write!(f, "{num}")
        } else {
            write!(f, "({num}) / ({})", self.c)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Field;

    fn e() -> Curve {
        Curve::from_i64(Field::Rational, 0, 1).unwrap()
    }

    #[test]
    fn arithmetic_and_canonical_form() {
        let e = e();
        let x = FunctionFieldElement::x(&e);
        let y = FunctionFieldElement::y(&e);
        // y^2 = x^3 + 1
        assert_eq!(y.mul(&y), x.pow(3).add(&FunctionFieldElement::one(&e)));
        let q = y.div(&x).unwrap();
        assert_eq!(q.mul(&x), y);
        let r = x.inv().unwrap().mul(&x);
        assert_eq!(r, FunctionFieldElement::one(&e));
        assert!(y.sub(&y).is_zero());
    }

    #[test]
    fn orders_at_infinity_and_points() {
        let e = e();
        let x = FunctionFieldElement::x(&e);
        let y = FunctionFieldElement::y(&e);
        let o = CurvePoint::Infinity;
        assert_eq!(x.order_at(&o).unwrap(), -2);
        assert_eq!(y.order_at(&o).unwrap(), -3);
        assert_eq!(x.div(&y).unwrap().laurent_leading(&o).unwrap(), (1, Field::Rational.one()));
        let p = e.point_i64(0, 1).unwrap();
        assert_eq!(x.order_at(&p).unwrap(), 1);
        let t = e.point_i64(-1, 0).unwrap();
        assert_eq!(y.order_at(&t).unwrap(), 1);
        let x1 = x.add(&FunctionFieldElement::one(&e));
        assert_eq!(x1.order_at(&t).unwrap(), 2);
        // y - 1 vanishes to order 3 at (0, 1): the tangent there is y = 1
        let y1 = y.sub(&FunctionFieldElement::one(&e));
        assert_eq!(y1.order_at(&p).unwrap(), 3);
    }

    #[test]
    fn exact_divisor_check() {
        let e = e();
        let x = FunctionFieldElement::x(&e);
        let d = Divisor::parse("0,1:1;0,-1:1;O:-2", &e).unwrap();
        assert!(x.has_divisor(&d).unwrap());
        let wrong = Divisor::parse("0,1:2;O:-2", &e).unwrap();
        assert!(!x.has_divisor(&wrong).unwrap());
        let inv = x.inv().unwrap();
        assert!(inv.has_divisor(&d.scale(-1)).unwrap());
        assert_eq!(inv.affine_pole_degree(), 2);
        assert_eq!(x.affine_zero_degree(), 2);
    }
}
