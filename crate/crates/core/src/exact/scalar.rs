//! Field descriptors and exact scalars.
//!
//! Two kinds of field are supported: the rationals, with arbitrary-precision
//! numerators and denominators, and prime fields `F_p` for a prime `p > 3`
//! small enough that products fit in 128-bit intermediates. A [`Scalar`]
//! carries its own field tag, so values from different fields never mix
//! silently: combining them is a programming error and panics.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use super::ExactError;

/// Default prime used for point-rich sampling.
pub const DEFAULT_PRIME: u64 = 10007;

/// Largest modulus accepted for prime fields.
pub const MAX_PRIME: u64 = (1 << 32) - 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// Prime field with a validated modulus.
    pub fn prime(p: u64) -> Result<Field, ExactError> {
        if p <= 3 || p > MAX_PRIME || !is_prime(p) {
            return Err(ExactError::BadModulus(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn default_prime() -> Field {
        Field::Prime(DEFAULT_PRIME)
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Prime {
                value: n.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    pub fn from_bigint(self, n: &BigInt) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(n.clone())),
            Field::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(p));
                Scalar::Prime {
                    value: r.to_u64().expect("residue fits"),
                    modulus: p,
                }
            }
        }
    }

    /// `num / den` in this field.
    ///
    /// Panics if `den` is zero in the field.
    pub fn from_ratio(self, num: i64, den: i64) -> Scalar {
        let d = self.from_i64(den);
        assert!(!d.is_zero(), "zero denominator in {self}");
        &self.from_i64(num) / &d
    }

    /// Uniform element of `F_p`, or a small integer in `[-9, 9]` over `Q`.
    pub fn random<R: Rng + ?Sized>(self, rng: &mut R) -> Scalar {
        match self {
            Field::Rational => self.from_i64(rng.gen_range(-9..=9)),
            Field::Prime(p) => Scalar::Prime {
                value: rng.gen_range(0..p),
                modulus: p,
            },
        }
    }

    pub fn random_nonzero<R: Rng + ?Sized>(self, rng: &mut R) -> Scalar {
        loop {
            let s = self.random(rng);
            if !s.is_zero() {
                return s;
            }
        }
    }

    /// Parses a scalar literal: an integer or `num/den`.
    pub fn parse_scalar(self, text: &str) -> Result<Scalar, ExactError> {
        let text = text.trim();
        let bad = || ExactError::Parse(format!("bad scalar literal {text:?}"));
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (text, "1"),
        };
        let num = BigInt::from_str(num).map_err(|_| bad())?;
        let den = BigInt::from_str(den).map_err(|_| bad())?;
        let den = self.from_bigint(&den);
        if den.is_zero() {
            return Err(bad());
        }
        Ok(&self.from_bigint(&num) / &den)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Field, ExactError> {
        let s = s.trim();
        if s == "Q" {
            return Ok(Field::Rational);
        }
        let p = s
            .strip_prefix("Fp:")
            .and_then(|p| p.parse::<u64>().ok())
            .ok_or_else(|| ExactError::Parse(format!("unknown field {s:?}")))?;
        Field::prime(p)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of [`Field::Rational`] or of a prime field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    /// Always in lowest terms with a positive denominator.
    Rational(BigRational),
    /// Residue in `[0, modulus)`.
    Prime { value: u64, modulus: u64 },
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("field mismatch: {} vs {}", a.field(), b.field())
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Prime { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Prime { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Prime { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Prime { value, modulus } => Scalar::Prime {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Maps a rational into another field; prime-field values only map to
    /// their own field.
    pub fn to_field(&self, target: Field) -> Result<Scalar, ExactError> {
        match (self, target) {
            (_, t) if t == self.field() => Ok(self.clone()),
            (Scalar::Rational(q), Field::Prime(_)) => {
                let den = target.from_bigint(q.denom());
                if den.is_zero() {
                    return Err(ExactError::NotRepresentable(self.to_string(), target));
                }
                Ok(&target.from_bigint(q.numer()) / &den)
            }
            _ => Err(ExactError::NotRepresentable(self.to_string(), target)),
        }
    }

    /// Integer value for rationals with denominator 1.
    pub fn to_bigint(&self) -> Option<BigInt> {
        match self {
            Scalar::Rational(q) if q.is_integer() => Some(q.to_integer()),
            _ => None,
        }
    }

    /// Square root in the field, if one exists there.
    pub fn sqrt(&self) -> Option<Scalar> {
        match self {
            Scalar::Rational(q) => {
                if q.is_negative() {
                    return None;
                }
                let n = q.numer().sqrt();
                let d = q.denom().sqrt();
                if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
                    Some(Scalar::Rational(BigRational::new(n, d)))
                } else {
                    None
                }
            }
            Scalar::Prime { value, modulus } => {
                tonelli_shanks(*value, *modulus).map(|r| Scalar::Prime {
                    value: r,
                    modulus: *modulus,
                })
            }
        }
    }

    /// JSON rendering: integers as numbers, everything else as strings.
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Scalar::Prime { value, .. } => serde_json::Value::from(*value),
            Scalar::Rational(q) => match q.to_integer().to_i64() {
                Some(n) if q.is_integer() => serde_json::Value::from(n),
                _ => serde_json::Value::from(self.to_string()),
            },
        }
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

fn tonelli_shanks(n: u64, p: u64) -> Option<u64> {
    let n = n % p;
    if n == 0 {
        return Some(0);
    }
    if pow_mod(n, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(n, (p + 1) / 4, p));
    }
    let mut q = p - 1;
    let mut s = 0;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(n, q, p);
    let mut r = pow_mod(n, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{q}"),
            Scalar::Prime { value, .. } => write!(f, "{value}"),
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Numeric order over `Q`, residue order over `F_p`. Only meaningful for
/// canonical storage (divisor supports, monomial maps).
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a.cmp(b),
            (Scalar::Prime { value: a, modulus: p }, Scalar::Prime { value: b, modulus: q }) => {
                p.cmp(q).then(a.cmp(b))
            }
            (Scalar::Rational(_), _) => Ordering::Less,
            (_, Scalar::Rational(_)) => Ordering::Greater,
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Prime { value: a, modulus: p }, Scalar::Prime { value: b, modulus: q })
                if p == q =>
            {
                let s = a + b;
                Scalar::Prime {
                    value: if s >= *p { s - p } else { s },
                    modulus: *p,
                }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Prime { value: a, modulus: p }, Scalar::Prime { value: b, modulus: q })
                if p == q =>
            {
                Scalar::Prime {
                    value: if a >= b { a - b } else { a + p - b },
                    modulus: *p,
                }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Prime { value: a, modulus: p }, Scalar::Prime { value: b, modulus: q })
                if p == q =>
            {
                Scalar::Prime {
                    value: mul_mod(*a, *b, *p),
                    modulus: *p,
                }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        let inv = rhs.inv().expect("division by zero scalar");
        self * &inv
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Prime { value, modulus } => Scalar::Prime {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rationals_are_reduced() {
        let q = Field::Rational.from_ratio(6, -4);
        assert_eq!(q.to_string(), "-3/2");
        assert_eq!(Field::Rational.parse_scalar("10/4").unwrap().to_string(), "5/2");
    }

    #[test]
    fn prime_residues_stay_in_range() {
        let f = Field::default_prime();
        let a = f.from_i64(-1);
        assert_eq!(a, f.from_i64(10006));
        assert!((&a + &f.one()).is_zero());
        assert_eq!((&f.from_i64(3) * &f.from_i64(3).inv().unwrap()), f.one());
    }

    #[test]
    fn rejects_bad_moduli() {
        assert!(Field::prime(3).is_err());
        assert!(Field::prime(10005).is_err());
        assert!("Fp:13".parse::<Field>().is_ok());
        assert!("R".parse::<Field>().is_err());
    }

    #[test]
    fn square_roots() {
        let f = Field::prime(10009).unwrap(); // 10009 = 1 mod 8 exercises the general branch
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let a = f.random(&mut rng);
            let sq = &a * &a;
            let r = sq.sqrt().unwrap();
            assert_eq!(&r * &r, sq);
        }
        assert_eq!(
            Field::Rational.parse_scalar("9/4").unwrap().sqrt(),
            Some(Field::Rational.from_ratio(3, 2))
        );
        assert_eq!(Field::Rational.from_i64(2).sqrt(), None);
    }

    #[test]
    fn rational_maps_into_prime_field() {
        let half = Field::Rational.from_ratio(1, 2);
        let f = Field::default_prime();
        let h = half.to_field(f).unwrap();
        assert_eq!(&h * &f.from_i64(2), f.one());
    }

    #[test]
    #[should_panic(expected = "field mismatch")]
    fn mixing_fields_panics() {
        let _ = &Field::Rational.one() + &Field::default_prime().one();
    }
}
