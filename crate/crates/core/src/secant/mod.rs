//! Secant slices of an elliptic normal curve through the matrix `Phi(p)`
//! of the multiplication `H0(N) x H0(N') -> H0(L)`.
//!
//! A point `p` of `P H0(L)^*` lies on the slice `Sec_{d,z}` exactly when
//! `Phi(p)` drops rank, and smoothness there is read off the Jacobian of
//! the maximal minors.

use itertools::Itertools;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::elliptic::{pairing_tensor, rr_basis, sigma, Curve, CurvePoint, Divisor, EllipticError, FunctionFieldElement};
use crate::exact::{ExactMatrix, Field, Scalar};
use crate::pencil::PairingTensor;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SecantError {
    #[error("invalid secant parameters: {0}")]
    BadParameters(String),
    #[error("the zero vector is not a projective point")]
    ZeroVector,
    #[error("point is not on the slice: rank {rank} exceeds {max}")]
    NotOnSlice { rank: usize, max: usize },
    #[error("Jacobian rank {rank} exceeds the codimension {codim}")]
    JacobianTooLarge { rank: usize, codim: usize },
    #[error("could not sample distinct curve points")]
    Exhausted,
    #[error(transparent)]
    Elliptic(#[from] EllipticError),
}

/// Homogeneous coordinates in the basis dual to the `H0(L)` basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AmbientPoint(pub Vec<Scalar>);

impl AmbientPoint {
    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }

    pub fn scale(&self, c: &Scalar) -> AmbientPoint {
        AmbientPoint(self.0.iter().map(|v| v * c).collect())
    }

    fn axpy(&self, c: &Scalar, other: &AmbientPoint) -> AmbientPoint {
        AmbientPoint(self.0.iter().zip(&other.0).map(|(a, b)| a + &(c * b)).collect())
    }
}

/// The data of a slice: `N = O(D_N)` of degree `d`, `N' = O(D_N')` of
/// degree `n - d`, `L = N + N'` and `z = sigma(D_N)`.
#[derive(Clone, Debug)]
pub struct SecantConfig {
    curve: Curve,
    n: usize,
    d: usize,
    z: CurvePoint,
    basis_l: Vec<FunctionFieldElement>,
    tensor: PairingTensor,
}

impl SecantConfig {
    pub fn new(curve: &Curve, dn: &Divisor, dnprime: &Divisor) -> Result<SecantConfig, SecantError> {
        let d = dn.degree();
        let n = d + dnprime.degree();
        if d < 2 || 2 * d >= n {
            return Err(SecantError::BadParameters(format!(
                "need 2 <= d and 2d < n, got d = {d}, n = {n}"
            )));
        }
        let tensor = pairing_tensor(curve, dn, dnprime)?;
        let basis_l = rr_basis(curve, &dn.add(dnprime))?.basis;
        Ok(SecantConfig {
            curve: curve.clone(),
            n: n as usize,
            d: d as usize,
            z: sigma(curve, dn)?,
            basis_l,
            tensor,
        })
    }

    /// `D_N' = (n - d) O`.
    pub fn with_standard_complement(curve: &Curve, n: usize, dn: &Divisor) -> Result<SecantConfig, SecantError> {
        let d = dn.degree();
        if d < 0 || n as i64 <= d {
            return Err(SecantError::BadParameters(format!("n = {n} must exceed deg D_N = {d}")));
        }
        SecantConfig::new(curve, dn, &Divisor::infinity(n as i64 - d))
    }

    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn dprime(&self) -> usize {
        self.n - self.d
    }

    pub fn z(&self) -> &CurvePoint {
        &self.z
    }

    pub fn tensor(&self) -> &PairingTensor {
        &self.tensor
    }

    /// `n - 2d + 1`.
    pub fn codim(&self) -> usize {
        self.n + 1 - 2 * self.d
    }

    fn field(&self) -> Field {
        self.curve.field()
    }
}

/// The evaluation functional at a curve point: leading Laurent
/// coefficients of the `H0(L)` basis at their common minimal order.
pub fn embed_point(cfg: &SecantConfig, zpt: &CurvePoint) -> Result<AmbientPoint, SecantError> {
    let leads = cfg
        .basis_l
        .iter()
        .map(|b| b.laurent_leading(zpt))
        .collect::<Result<Vec<_>, _>>()?;
    let min = leads.iter().map(|(o, _)| *o).min().expect("nonempty basis");
    Ok(AmbientPoint(
        leads
            .into_iter()
            .map(|(o, c)| if o == min { c } else { cfg.field().zero() })
            .collect(),
    ))
}

/// `Phi(p)[i][j] = sum_m T[i][j][m] p_m`, a `d x d'` matrix.
pub fn phi_at(cfg: &SecantConfig, p: &AmbientPoint) -> Result<ExactMatrix, SecantError> {
    if p.is_zero() {
        return Err(SecantError::ZeroVector);
    }
    let t = &cfg.tensor;
    let f = cfg.field();
    Ok(ExactMatrix::from_fn(f, cfg.d, cfg.dprime(), |i, j| {
        p.0.iter()
            .enumerate()
            .fold(f.zero(), |acc, (m, pm)| &acc + &(t.get(i, j, m) * pm))
    }))
}

/// A sampled point together with the curve points it was built from.
#[derive(Clone, Debug)]
pub struct SampledPoint {
    pub point: AmbientPoint,
    pub support: Vec<CurvePoint>,
}

fn distinct_points<R: Rng + ?Sized>(
    cfg: &SecantConfig,
    count: usize,
    avoid: &[CurvePoint],
    rng: &mut R,
) -> Result<Vec<CurvePoint>, SecantError> {
    let mut out: Vec<CurvePoint> = Vec::with_capacity(count);
    for _ in 0..100 * (count + 1) {
        if out.len() == count {
            break;
        }
        let p = cfg.curve.random_point(rng)?;
        if !out.contains(&p) && !avoid.contains(&p) {
            out.push(p);
        }
    }
    if out.len() < count {
        return Err(SecantError::Exhausted);
    }
    Ok(out)
}

/// `sum lambda_i embed_point(z_i)` with the given weights.
pub fn combine(cfg: &SecantConfig, points: &[CurvePoint], weights: &[Scalar]) -> Result<AmbientPoint, SecantError> {
    let mut acc = AmbientPoint(vec![cfg.field().zero(); cfg.n]);
    for (p, w) in points.iter().zip(weights) {
        acc = acc.axpy(w, &embed_point(cfg, p)?);
    }
    Ok(acc)
}

/// `d` distinct points with sum `z`, starting with `fixed`; the remaining
/// points are random and the last one closes the sum.
pub fn points_summing_to_z<R: Rng + ?Sized>(
    cfg: &SecantConfig,
    fixed: &[CurvePoint],
    rng: &mut R,
) -> Result<Vec<CurvePoint>, SecantError> {
    assert!(fixed.len() < cfg.d);
    for _ in 0..200 {
        let mut pts = fixed.to_vec();
        pts.extend(distinct_points(cfg, cfg.d - 1 - fixed.len(), fixed, rng)?);
        let sum = pts
            .iter()
            .fold(CurvePoint::Infinity, |acc, p| cfg.curve.add(&acc, p).expect("on curve"));
        let last = cfg.curve.add(&cfg.z, &cfg.curve.neg(&sum))?;
        if !pts.contains(&last) {
            pts.push(last);
            return Ok(pts);
        }
    }
    Err(SecantError::Exhausted)
}

/// Random point on `Sec_{d,z}`: a random combination of `d` distinct curve
/// points summing to `z`.
pub fn sample_slice_point<R: Rng + ?Sized>(cfg: &SecantConfig, rng: &mut R) -> Result<SampledPoint, SecantError> {
    let pts = points_summing_to_z(cfg, &[], rng)?;
    let weights: Vec<Scalar> = (0..pts.len()).map(|_| cfg.field().random_nonzero(rng)).collect();
    Ok(SampledPoint {
        point: combine(cfg, &pts, &weights)?,
        support: pts,
    })
}

/// The curve point `z0` viewed on the slice: a `d`-tuple through `z0` with
/// sum `z` is completed and all weight is put on `z0`.
pub fn slice_point_through<R: Rng + ?Sized>(
    cfg: &SecantConfig,
    z0: &CurvePoint,
    rng: &mut R,
) -> Result<SampledPoint, SecantError> {
    let pts = points_summing_to_z(cfg, std::slice::from_ref(z0), rng)?;
    let f = cfg.field();
    let weights: Vec<Scalar> = (0..pts.len()).map(|i| if i == 0 { f.one() } else { f.zero() }).collect();
    Ok(SampledPoint {
        point: combine(cfg, &pts, &weights)?,
        support: pts,
    })
}

/// A point on the secant line through two points of a slice tuple, so on
/// `Sec_2` inside `Sec_{d,z}`.
pub fn sample_secant_line_point<R: Rng + ?Sized>(cfg: &SecantConfig, rng: &mut R) -> Result<SampledPoint, SecantError> {
    let pts = points_summing_to_z(cfg, &[], rng)?;
    let f = cfg.field();
    let weights: Vec<Scalar> = (0..pts.len())
        .map(|i| if i < 2 { f.random_nonzero(rng) } else { f.zero() })
        .collect();
    Ok(SampledPoint {
        point: combine(cfg, &pts, &weights)?,
        support: pts[..2].to_vec(),
    })
}

/// Random point of `Sec_r`: a combination of `r` distinct curve points
/// with no condition on their sum.
pub fn sample_subsecant_point<R: Rng + ?Sized>(
    cfg: &SecantConfig,
    r: usize,
    rng: &mut R,
) -> Result<SampledPoint, SecantError> {
    if r == 0 {
        return Err(SecantError::BadParameters("r must be at least 1".into()));
    }
    let pts = distinct_points(cfg, r, &[], rng)?;
    let weights: Vec<Scalar> = (0..r).map(|_| cfg.field().random_nonzero(rng)).collect();
    Ok(SampledPoint {
        point: combine(cfg, &pts, &weights)?,
        support: pts,
    })
}

/// Rank of the Jacobian of all `d x d` minors of `Phi` at `p`, using
/// `d det / d p_m = sum_{i,j} cof_{ij} T[i][j][m]`.
pub fn jacobian_rank_at(cfg: &SecantConfig, p: &AmbientPoint) -> Result<usize, SecantError> {
    let phi = phi_at(cfg, p)?;
    let (d, dp, n) = (cfg.d, cfg.dprime(), cfg.n);
    let f = cfg.field();
    let rows_all: Vec<usize> = (0..d).collect();
    let mut jac_rows: Vec<Vec<Scalar>> = Vec::new();
    for cols in (0..dp).combinations(d) {
        let sub = phi.submatrix(&rows_all, &cols);
        let mut grad = vec![f.zero(); n];
        for i in 0..d {
            for (jj, &j) in cols.iter().enumerate() {
                let cof = cofactor(&sub, i, jj);
                if cof.is_zero() {
                    continue;
                }
                for (m, g) in grad.iter_mut().enumerate() {
                    let t = cfg.tensor.get(i, j, m);
                    if !t.is_zero() {
                        *g = &*g + &(&cof * t);
                    }
                }
            }
        }
        jac_rows.push(grad);
    }
    Ok(ExactMatrix::from_rows(f, n, jac_rows).rank())
}

fn cofactor(m: &ExactMatrix, i: usize, j: usize) -> Scalar {
    let rows: Vec<usize> = (0..m.rows()).filter(|&r| r != i).collect();
    let cols: Vec<usize> = (0..m.cols()).filter(|&c| c != j).collect();
    let minor = m.submatrix(&rows, &cols).determinant();
    if (i + j).is_multiple_of(2) {
        minor
    } else {
        -minor
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Smooth,
    Singular,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularityVerdict {
    pub n: usize,
    pub d: usize,
    pub membership_rank: usize,
    pub jacobian_rank: usize,
    pub codim: usize,
    pub verdict: Verdict,
}

/// Smooth iff the Jacobian rank reaches the codimension `n - 2d + 1`.
pub fn singularity_verdict(cfg: &SecantConfig, p: &AmbientPoint) -> Result<SingularityVerdict, SecantError> {
    let membership_rank = phi_at(cfg, p)?.rank();
    if membership_rank + 1 > cfg.d {
        return Err(SecantError::NotOnSlice {
            rank: membership_rank,
            max: cfg.d - 1,
        });
    }
    let jacobian_rank = jacobian_rank_at(cfg, p)?;
    let codim = cfg.codim();
    if jacobian_rank > codim {
        return Err(SecantError::JacobianTooLarge { rank: jacobian_rank, codim });
    }
    Ok(SingularityVerdict {
        n: cfg.n,
        d: cfg.d,
        membership_rank,
        jacobian_rank,
        codim,
        verdict: if jacobian_rank == codim { Verdict::Smooth } else { Verdict::Singular },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn config(n: usize, d: i64) -> SecantConfig {
        let e = Curve::from_i64(Field::default_prime(), 2, 3).unwrap();
        SecantConfig::with_standard_complement(&e, n, &Divisor::infinity(d)).unwrap()
    }

    #[test]
    fn parameters_checked() {
        let e = Curve::from_i64(Field::default_prime(), 2, 3).unwrap();
        assert!(SecantConfig::with_standard_complement(&e, 6, &Divisor::infinity(3)).is_err());
        assert!(SecantConfig::with_standard_complement(&e, 6, &Divisor::infinity(1)).is_err());
        assert_eq!(config(8, 3).codim(), 3);
    }

    #[test]
    fn curve_points_have_rank_one() {
        let cfg = config(8, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..10 {
            let z = cfg.curve().random_point(&mut rng).unwrap();
            let p = embed_point(&cfg, &z).unwrap();
            assert_eq!(p.coords().len(), 8);
            assert_eq!(phi_at(&cfg, &p).unwrap().rank(), 1);
        }
        let p = embed_point(&cfg, &CurvePoint::Infinity).unwrap();
        assert_eq!(phi_at(&cfg, &p).unwrap().rank(), 1);
    }

    #[test]
    fn dichotomy_examples() {
        let cfg = config(8, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let s = sample_slice_point(&cfg, &mut rng).unwrap();
        let v = singularity_verdict(&cfg, &s.point).unwrap();
        assert_eq!((v.membership_rank, v.verdict), (2, Verdict::Smooth));
        let z0 = cfg.curve().random_point(&mut rng).unwrap();
        let v = singularity_verdict(&cfg, &embed_point(&cfg, &z0).unwrap()).unwrap();
        assert_eq!(v.verdict, Verdict::Singular);
        let generic = AmbientPoint((0..8).map(|_| cfg.curve().field().random_nonzero(&mut rng)).collect());
        assert!(matches!(singularity_verdict(&cfg, &generic), Err(SecantError::NotOnSlice { .. })));
    }
}
