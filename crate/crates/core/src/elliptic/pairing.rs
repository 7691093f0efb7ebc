use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::exact::{ExactMatrix, Field, Poly, Scalar};
use crate::pencil::{hirzebruch_invariant, splitting_type, PairingTensor};

use super::{lin_equiv, rr_basis, Curve, CurvePoint, Divisor, EllipticError, FunctionFieldElement};

/// Coordinates of each `item` in the basis `targets`, by coefficient
/// matching over a common denominator. Fails if the targets are dependent
/// or some item is outside their span.
pub fn express_in_basis(
    targets: &[FunctionFieldElement],
    items: &[FunctionFieldElement],
) -> Result<Vec<Vec<Scalar>>, EllipticError> {
    let all: Vec<&FunctionFieldElement> = targets.iter().chain(items).collect();
    let field = all[0].curve().field();
    let common = all.iter().fold(Poly::one(field), |l, f| {
        let c = f.parts().2;
        l.mul(c).div_exact(&l.gcd(c)).expect("gcd divides")
    });
    let numerators: Vec<(Poly, Poly)> = all
        .iter()
        .map(|f| {
            let (a, b, c) = f.parts();
            let m = common.div_exact(c).expect("denominator divides lcm");
            (a.mul(&m), b.mul(&m))
        })
        .collect();
    let len = |p: &Poly| p.degree().map_or(0, |d| d + 1);
    let la = numerators.iter().map(|(a, _)| len(a)).max().unwrap_or(0);
    let lb = numerators.iter().map(|(_, b)| len(b)).max().unwrap_or(0);
    let n = targets.len();
    let m = ExactMatrix::from_fn(field, la + lb, all.len(), |r, col| {
        let (a, b) = &numerators[col];
        if r < la {
            a.coeff(r)
        } else {
            b.coeff(r - la)
        }
    });
    let (rref, pivots) = m.rref();
    if pivots.len() < n || pivots[..n] != (0..n).collect::<Vec<_>>()[..] {
        return Err(EllipticError::Inconsistent("target functions are dependent".into()));
    }
    if pivots.len() > n {
        return Err(EllipticError::Inconsistent(format!(
            "product {} is not in the span of the target basis",
            all[pivots[n]]
        )));
    }
    Ok((0..items.len())
        .map(|i| (0..n).map(|r| rref.get(r, n + i).clone()).collect())
        .collect())
}

/// Affine sample points where every given function is regular.
fn sample_points(curve: &Curve, funcs: &[&FunctionFieldElement], count: usize) -> Vec<CurvePoint> {
    let regular = |p: &CurvePoint| funcs.iter().all(|f| f.eval(p).is_some());
    match curve.field() {
        Field::Rational => curve
            .points_with_small_x(-40, 40)
            .into_iter()
            .filter(regular)
            .take(count)
            .collect(),
        Field::Prime(_) => {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            let mut out = Vec::new();
            for _ in 0..50 * count {
                if out.len() == count {
                    break;
                }
                if let Ok(p) = curve.random_point(&mut rng) {
                    if regular(&p) && !out.contains(&p) {
                        out.push(p);
                    }
                }
            }
            out
        }
    }
}

/// The multiplication `L(D_N) x L(D_M) -> L(D_N + D_M)` in the bases from
/// [`rr_basis`], as a tensor `T[i][w][j]`.
///
/// Coefficients come from exact matching; they are then confirmed by
/// evaluation at sample points (over `Q` only at the few points with small
/// integer abscissa that exist).
pub fn pairing_tensor(curve: &Curve, dn: &Divisor, dm: &Divisor) -> Result<PairingTensor, EllipticError> {
    if dn.degree() < 2 {
        return Err(EllipticError::DegreeTooSmall { need: 2, got: dn.degree() });
    }
    if dm.degree() < 1 {
        return Err(EllipticError::DegreeTooSmall { need: 1, got: dm.degree() });
    }
    let bn = rr_basis(curve, dn)?.basis;
    let bm = rr_basis(curve, dm)?.basis;
    let target = rr_basis(curve, &dn.add(dm))?.basis;
    let products: Vec<FunctionFieldElement> = bn
        .iter()
        .flat_map(|f| bm.iter().map(move |g| f.mul(g)))
        .collect();
    let coords = express_in_basis(&target, &products)?;
    let (d, k, dp) = (bn.len(), bm.len(), target.len());
    let t = PairingTensor::from_fn(curve.field(), (d, k, dp), |i, w, j| coords[i * k + w][j].clone());

    let funcs: Vec<&FunctionFieldElement> = bn.iter().chain(&bm).chain(&target).collect();
    for p in sample_points(curve, &funcs, dp + 1) {
        let tv: Vec<Scalar> = target.iter().map(|b| b.eval(&p).expect("regular")).collect();
        for (idx, prod) in products.iter().enumerate() {
            let lhs = prod.eval(&p).expect("regular");
            let rhs = coords[idx]
                .iter()
                .zip(&tv)
                .fold(curve.field().zero(), |acc, (c, v)| &acc + &(c * v));
            if lhs != rhs {
                return Err(EllipticError::Inconsistent(format!(
                    "product {idx} disagrees with its coordinates at {p}"
                )));
            }
        }
    }
    Ok(t)
}

/// The flattening has full column rank, i.e. the pairing is onto.
pub fn is_surjective(t: &PairingTensor) -> bool {
    t.image_rank() == t.dims().2
}

/// Onto iff `k >= 2`, except `d = k = 2` with isomorphic bundles.
pub fn whensurj_predict(d: usize, k: usize, same_class: bool) -> bool {
    k >= 2 && !(d == 2 && k == 2 && same_class)
}

/// Predicted and computed Hirzebruch invariant of the leaf completion for
/// `deg D = 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeafClassification {
    pub dprime: usize,
    pub k: usize,
    pub e_predicted: usize,
    pub e_computed: usize,
    pub splitting_type: Vec<usize>,
    pub surface: String,
    pub leaf_affine: bool,
    pub leaf_quasi_affine: bool,
    pub matches: bool,
}

/// `e_predicted` is 1 for odd `dprime`, else 2 or 0 according to whether
/// `D' ~ (k/2 + 1) D`; `e_computed` is read off the splitting type of the
/// pencil `L(D) x L(D' - D) -> L(D')`.
pub fn leaf_classify(curve: &Curve, d: &Divisor, dprime: &Divisor) -> Result<LeafClassification, EllipticError> {
    if d.degree() != 2 {
        return Err(EllipticError::Inconsistent(format!("deg D = {} must be 2", d.degree())));
    }
    if dprime.degree() < 3 {
        return Err(EllipticError::DegreeTooSmall { need: 3, got: dprime.degree() });
    }
    let dp = dprime.degree() as usize;
    let k = dp - 2;
    let e_predicted = if dp % 2 == 1 {
        1
    } else if lin_equiv(curve, dprime, &d.scale(k as i64 / 2 + 1))? {
        2
    } else {
        0
    };
    let pencil = pairing_tensor(curve, d, &dprime.sub(d))?.to_pencil()?;
    let st = splitting_type(&pencil)?;
    let e_computed = hirzebruch_invariant(&pencil)?;
    let affine = e_computed <= 1;
    Ok(LeafClassification {
        dprime: dp,
        k,
        e_predicted,
        e_computed,
        splitting_type: st.degrees().to_vec(),
        surface: format!("Sigma_{e_computed}"),
        leaf_affine: affine,
        leaf_quasi_affine: affine,
        matches: e_predicted == e_computed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pencil::is_one_generic_pencil;

    fn e() -> Curve {
        Curve::from_i64(Field::Rational, 0, 1).unwrap()
    }

    #[test]
    fn polynomial_placements() {
        let e = e();
        let t = pairing_tensor(&e, &Divisor::infinity(2), &Divisor::infinity(3)).unwrap();
        assert_eq!(t.dims(), (2, 3, 5));
        // bases {1, x}, {1, x, y}, {1, x, y, x^2, xy}; x * y = xy
        assert!(t.get(1, 2, 4).is_one());
        assert!(t.get(1, 1, 3).is_one());
        assert!(t.get(0, 2, 2).is_one());
        assert!(is_one_generic_pencil(&t.to_pencil().unwrap()).unwrap());
        assert!(is_surjective(&t));
    }

    #[test]
    fn surjectivity_cases() {
        let e = e();
        let n = Divisor::infinity(2);
        assert!(!is_surjective(&pairing_tensor(&e, &n, &Divisor::infinity(1)).unwrap()));
        assert!(!is_surjective(&pairing_tensor(&e, &n, &n).unwrap()));
        let m = Divisor::parse("O:1;2,3:1", &e).unwrap();
        assert!(is_surjective(&pairing_tensor(&e, &n, &m).unwrap()));
        assert!(!whensurj_predict(2, 1, false));
        assert!(!whensurj_predict(2, 2, true));
        assert!(whensurj_predict(2, 2, false));
    }

    #[test]
    fn leaf_examples() {
        let e = e();
        let d = Divisor::infinity(2);
        let r = leaf_classify(&e, &d, &Divisor::infinity(5)).unwrap();
        assert_eq!((r.e_predicted, r.e_computed, r.leaf_affine), (1, 1, true));
        let r = leaf_classify(&e, &d, &Divisor::infinity(4)).unwrap();
        assert_eq!((r.e_predicted, r.e_computed, r.leaf_quasi_affine), (2, 2, false));
        let dp = Divisor::parse("O:3;2,3:1", &e).unwrap();
        let r = leaf_classify(&e, &d, &dp).unwrap();
        assert_eq!((r.e_predicted, r.e_computed, r.leaf_affine), (0, 0, true));
        assert!(r.matches);
    }
}
