//! Pairings as tensors, pencils `s A + t B` of `dprime x k` matrices,
//! exact 1-genericity and splitting types over the projective line.

mod generators;
mod tensor;

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::exact::{BinaryForm, ExactError, ExactMatrix, Field, Poly, Scalar};

pub use generators::{block_diagonal, identity_pencil, pad, random_one_generic_pencil, sylvester_pencil, through_codim_one};
pub use tensor::{exists_one_generic, identity_pairing, is_one_generic_random, sylvester_pairing, PairingTensor};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PencilError {
    #[error("pencil is not 1-generic")]
    NotOneGeneric,
    #[error("pairing has dim V = {0}; a pencil needs dim V = 2")]
    NotPencil(usize),
    #[error("pencil matrices have shapes {0}x{1} and {2}x{3}")]
    ShapeMismatch(usize, usize, usize, usize),
    #[error("field {0} has too few elements to interpolate forms of degree {1}")]
    FieldTooSmall(Field, usize),
    #[error("splitting type needs exactly two summands, found {0}")]
    NotRankTwo(usize),
    #[error("inconsistent splitting data: {0}")]
    Inconsistent(String),
    #[error("trivial summands {summands} disagree with image codimension {codim}")]
    CrossCheck { summands: usize, codim: usize },
    #[error("bad pencil JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// `s A + t B` with `A, B` of size `dprime x k`; column `w` is the image
/// of the `w`-th basis vector of `W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearPencil {
    a: ExactMatrix,
    b: ExactMatrix,
}

impl LinearPencil {
    pub fn new(a: ExactMatrix, b: ExactMatrix) -> Result<LinearPencil, PencilError> {
        if a.rows() != b.rows() || a.cols() != b.cols() {
            return Err(PencilError::ShapeMismatch(a.rows(), a.cols(), b.rows(), b.cols()));
        }
        assert_eq!(a.field(), b.field(), "pencil matrices over different fields");
        Ok(LinearPencil { a, b })
    }

    pub fn field(&self) -> Field {
        self.a.field()
    }

    pub fn dprime(&self) -> usize {
        self.a.rows()
    }

    pub fn k(&self) -> usize {
        self.a.cols()
    }

    pub fn a(&self) -> &ExactMatrix {
        &self.a
    }

    pub fn b(&self) -> &ExactMatrix {
        &self.b
    }

    /// `s A + t B`.
    pub fn eval(&self, s: &Scalar, t: &Scalar) -> ExactMatrix {
        self.a.scale(s).add(&self.b.scale(t))
    }

    /// `(G A H, G B H)`.
    pub fn transform(&self, g: &ExactMatrix, h: &ExactMatrix) -> LinearPencil {
        LinearPencil {
            a: g.mul(&self.a).mul(h),
            b: g.mul(&self.b).mul(h),
        }
    }

    /// The pairing `C^2 x W -> V'` the pencil comes from.
    pub fn to_tensor(&self) -> PairingTensor {
        PairingTensor::from_fn(self.field(), (2, self.k(), self.dprime()), |i, w, j| {
            let m = if i == 0 { &self.a } else { &self.b };
            m.get(j, w).clone()
        })
    }

    /// `{"dprime":…, "k":…, "A":[[…]], "B":[[…]], "field":…}`
    pub fn to_json(&self) -> Value {
        let rows = |m: &ExactMatrix| -> Value {
            (0..m.rows())
                .map(|i| m.row(i).iter().map(Scalar::to_json).collect::<Vec<_>>())
                .collect::<Vec<_>>()
                .into()
        };
        json!({
            "dprime": self.dprime(),
            "k": self.k(),
            "A": rows(&self.a),
            "B": rows(&self.b),
            "field": self.field().to_string(),
        })
    }

    pub fn from_json(v: &Value) -> Result<LinearPencil, PencilError> {
        let bad = |m: &str| PencilError::Json(m.to_string());
        let field: Field = v["field"]
            .as_str()
            .ok_or_else(|| bad("missing field"))?
            .parse()?;
        let dprime = v["dprime"].as_u64().ok_or_else(|| bad("missing dprime"))? as usize;
        let k = v["k"].as_u64().ok_or_else(|| bad("missing k"))? as usize;
        let matrix = |key: &str| -> Result<ExactMatrix, PencilError> {
            let rows = v[key].as_array().ok_or_else(|| bad(key))?;
            if rows.len() != dprime {
                return Err(bad(&format!("{key} needs {dprime} rows")));
            }
            let mut out = Vec::with_capacity(dprime);
            for r in rows {
                let r = r.as_array().ok_or_else(|| bad(key))?;
                if r.len() != k {
                    return Err(bad(&format!("{key} rows need {k} entries")));
                }
                let entries = r
                    .iter()
                    .map(|e| match e {
                        Value::Number(n) => field.parse_scalar(&n.to_string()),
                        Value::String(s) => field.parse_scalar(s),
                        _ => Err(ExactError::Parse(e.to_string())),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                out.push(entries);
            }
            Ok(ExactMatrix::from_rows(field, k, out))
        };
        LinearPencil::new(matrix("A")?, matrix("B")?)
    }

    /// `k + 1` distinct sample values `0, 1, ..., k`.
    fn sample_points(&self) -> Result<Vec<Scalar>, PencilError> {
        let f = self.field();
        let k = self.k();
        if let Field::Prime(p) = f {
            if (p as usize) <= k {
                return Err(PencilError::FieldTooSmall(f, k));
            }
        }
        Ok((0..=k as i64).map(|i| f.from_i64(i)).collect())
    }
}

impl fmt::Display for LinearPencil {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s*\n{}t*\n{}", self.a, self.b)
    }
}

/// The `k x k` minor on `rows` as a binary form of degree `k`, recovered
/// from its values at `(s, 1)` for the sample points.
fn minor_form(evals: &[ExactMatrix], xs: &[Scalar], rows: &[usize], k: usize) -> BinaryForm {
    let cols: Vec<usize> = (0..k).collect();
    let ys: Vec<Scalar> = evals
        .iter()
        .map(|m| m.submatrix(rows, &cols).determinant())
        .collect();
    let field = xs[0].field();
    BinaryForm::homogenize(&Poly::interpolate(field, xs, &ys), k)
}

/// Full column rank of `s A + t B` at every point of the projective line,
/// decided by the gcd of all maximal minors.
pub fn is_one_generic_pencil(p: &LinearPencil) -> Result<bool, PencilError> {
    let k = p.k();
    if p.dprime() < k {
        return Ok(false);
    }
    if k == 0 {
        return Ok(true);
    }
    let xs = p.sample_points()?;
    let one = p.field().one();
    let evals: Vec<ExactMatrix> = xs.iter().map(|s| p.eval(s, &one)).collect();
    // a form of degree k vanishing at k + 1 points of the s-chart is zero,
    // so rank < k at every sample means rank < k everywhere
    if evals.iter().all(|m| m.rank() < k) {
        return Ok(false);
    }
    let mut g: Option<BinaryForm> = None;
    for rows in (0..p.dprime()).combinations(k) {
        let m = minor_form(&evals, &xs, &rows, k);
        if m.is_zero() {
            continue;
        }
        let next = match g {
            None => m.gcd(&m)?,
            Some(prev) => prev.gcd(&m)?,
        };
        if next.is_unit() {
            return Ok(true);
        }
        g = Some(next);
    }
    Ok(false)
}

/// Degrees `d_1 >= d_2 >= ...` of the line bundles in the splitting of the
/// quotient bundle over `P^1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SplittingType(Vec<usize>);

impl SplittingType {
    pub fn new(mut degrees: Vec<usize>) -> SplittingType {
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        SplittingType(degrees)
    }

    pub fn degrees(&self) -> &[usize] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn zeros(&self) -> usize {
        self.0.iter().filter(|&&d| d == 0).count()
    }

    /// `d_1 - d_2` for a rank-two type.
    pub fn hirzebruch_invariant(&self) -> Result<usize, PencilError> {
        match self.0.as_slice() {
            [d1, d2] => Ok(d1 - d2),
            other => Err(PencilError::NotRankTwo(other.len())),
        }
    }

    /// Multiset union.
    pub fn union(&self, other: &SplittingType) -> SplittingType {
        SplittingType::new(self.0.iter().chain(&other.0).copied().collect())
    }
}

impl fmt::Display for SplittingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0.iter().join(", "))
    }
}

/// Dimension of the space of degree-`e` vectors `v` with `N v = 0`, where
/// `N = (s A + t B)^T`.
pub fn syzygy_dimension(p: &LinearPencil, e: usize) -> usize {
    let (dp, k) = (p.dprime(), p.k());
    // rows (w, c): coefficient of s^c t^(e+1-c) in entry w of N v
    // cols (j, a): coefficient of s^a t^(e-a) in v_j
    let m = ExactMatrix::from_fn(p.field(), k * (e + 2), dp * (e + 1), |row, col| {
        let (w, c) = (row / (e + 2), row % (e + 2));
        let (j, a) = (col / (e + 1), col % (e + 1));
        if c == a + 1 {
            p.a.get(j, w).clone()
        } else if c == a {
            p.b.get(j, w).clone()
        } else {
            p.field().zero()
        }
    });
    m.cols() - m.rank()
}

/// Splitting type from syzygy dimensions: with `kappa(e)` the dimension
/// above, `#{i : d_i <= e} = kappa(e) - kappa(e - 1)`.
pub fn splitting_type(p: &LinearPencil) -> Result<SplittingType, PencilError> {
    if !is_one_generic_pencil(p)? {
        return Err(PencilError::NotOneGeneric);
    }
    let (dp, k) = (p.dprime(), p.k());
    let kappa: Vec<usize> = (0..=k).map(|e| syzygy_dimension(p, e)).collect();
    let mut at_most = Vec::with_capacity(k + 1);
    let mut prev = 0;
    for &kv in &kappa {
        at_most.push(kv.checked_sub(prev).ok_or_else(|| {
            PencilError::Inconsistent(format!("syzygy dimensions {kappa:?} decrease"))
        })?);
        prev = kv;
    }
    let mut degrees = Vec::new();
    let mut below = 0;
    for (e, &n) in at_most.iter().enumerate() {
        let here = n.checked_sub(below).ok_or_else(|| {
            PencilError::Inconsistent(format!("counts {at_most:?} are not monotone"))
        })?;
        degrees.extend(std::iter::repeat_n(e, here));
        below = n;
    }
    let st = SplittingType::new(degrees);
    if st.rank() != dp - k || st.total() != k {
        return Err(PencilError::Inconsistent(format!(
            "type {st} for dprime = {dp}, k = {k}"
        )));
    }
    Ok(st)
}

/// Number of zero summands, cross-checked against `dprime - rank [A | B]`.
pub fn trivial_summand_count(p: &LinearPencil) -> Result<usize, PencilError> {
    let summands = splitting_type(p)?.zeros();
    let codim = p.dprime() - p.a.hstack(&p.b).rank();
    if summands != codim {
        return Err(PencilError::CrossCheck { summands, codim });
    }
    Ok(summands)
}

/// `d_1 - d_2` for a pencil with `dprime - k = 2`.
pub fn hirzebruch_invariant(p: &LinearPencil) -> Result<usize, PencilError> {
    splitting_type(p)?.hirzebruch_invariant()
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    #[test]
    fn genericity_examples() {
        assert!(is_one_generic_pencil(&identity_pencil(Q, 2)).unwrap());
        assert!(is_one_generic_pencil(&sylvester_pencil(Q, 3)).unwrap());
        let p = identity_pencil(Q, 2);
        let same = LinearPencil::new(p.a().clone(), p.a().clone()).unwrap();
        assert!(!is_one_generic_pencil(&same).unwrap());
    }

    #[test]
    fn splitting_examples() {
        let st = |p: &LinearPencil| splitting_type(p).unwrap().degrees().to_vec();
        assert_eq!(st(&identity_pencil(Q, 2)), vec![1, 1]);
        assert_eq!(st(&through_codim_one(Q)), vec![2, 0]);
        for k in 1..5 {
            assert_eq!(st(&sylvester_pencil(Q, k)), vec![k]);
        }
        // dim W = 1, V into V' = C^3
        assert_eq!(st(&pad(&sylvester_pencil(Q, 1), 1)), vec![1, 0]);
    }

    #[test]
    fn trivial_summands_and_invariant() {
        assert_eq!(trivial_summand_count(&through_codim_one(Q)), Ok(1));
        assert_eq!(trivial_summand_count(&identity_pencil(Q, 2)), Ok(0));
        assert_eq!(hirzebruch_invariant(&identity_pencil(Q, 2)), Ok(0));
        assert_eq!(hirzebruch_invariant(&through_codim_one(Q)), Ok(2));
        assert_eq!(SplittingType::new(vec![3]).hirzebruch_invariant(), Err(PencilError::NotRankTwo(1)));
    }

    #[test]
    fn rejects_non_generic() {
        let p = identity_pencil(Q, 2);
        let same = LinearPencil::new(p.a().clone(), p.a().clone()).unwrap();
        assert_eq!(splitting_type(&same), Err(PencilError::NotOneGeneric));
    }

    #[test]
    fn json_round_trip() {
        for field in [Q, Field::default_prime()] {
            let p = through_codim_one(field);
            let v = p.to_json();
            assert_eq!(v["dprime"], 4);
            assert_eq!(v["k"], 2);
            assert_eq!(LinearPencil::from_json(&v).unwrap(), p);
        }
    }
}
