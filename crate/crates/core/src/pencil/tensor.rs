use rand::Rng;

use crate::exact::{ExactMatrix, Field, Scalar};

use super::{LinearPencil, PencilError};

/// Bilinear map `V x W -> V'` in coordinates:
/// `beta(v_i, w_w) = sum_j T[i][w][j] v'_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingTensor {
    field: Field,
    d: usize,
    k: usize,
    dprime: usize,
    data: Vec<Scalar>,
}

impl PairingTensor {
    pub fn zeros(field: Field, d: usize, k: usize, dprime: usize) -> PairingTensor {
        PairingTensor {
            field,
            d,
            k,
            dprime,
            data: vec![field.zero(); d * k * dprime],
        }
    }

    pub fn from_fn(
        field: Field,
        (d, k, dprime): (usize, usize, usize),
        mut f: impl FnMut(usize, usize, usize) -> Scalar,
    ) -> PairingTensor {
        let mut t = PairingTensor::zeros(field, d, k, dprime);
        for i in 0..d {
            for w in 0..k {
                for j in 0..dprime {
                    t.set(i, w, j, f(i, w, j));
                }
            }
        }
        t
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// `(d, k, dprime)`.
    pub fn dims(&self) -> (usize, usize, usize) {
        (self.d, self.k, self.dprime)
    }

    fn idx(&self, i: usize, w: usize, j: usize) -> usize {
        assert!(i < self.d && w < self.k && j < self.dprime, "tensor index out of range");
        (i * self.k + w) * self.dprime + j
    }

    pub fn get(&self, i: usize, w: usize, j: usize) -> &Scalar {
        &self.data[self.idx(i, w, j)]
    }

    pub fn set(&mut self, i: usize, w: usize, j: usize, v: Scalar) {
        let n = self.idx(i, w, j);
        self.data[n] = v;
    }

    /// The `(d k) x dprime` matrix with rows indexed by `(i, w)`.
    pub fn flattening(&self) -> ExactMatrix {
        ExactMatrix::from_fn(self.field, self.d * self.k, self.dprime, |r, j| {
            self.get(r / self.k, r % self.k, j).clone()
        })
    }

    /// Dimension of the span of the image.
    pub fn image_rank(&self) -> usize {
        self.flattening().rank()
    }

    /// `beta(v, -)` as a `dprime x k` matrix.
    pub fn left_map(&self, v: &[Scalar]) -> ExactMatrix {
        assert_eq!(v.len(), self.d);
        ExactMatrix::from_fn(self.field, self.dprime, self.k, |j, w| {
            v.iter()
                .enumerate()
                .fold(self.field.zero(), |acc, (i, c)| &acc + &(c * self.get(i, w, j)))
        })
    }

    /// `beta(-, w)` as a `dprime x d` matrix.
    pub fn right_map(&self, w: &[Scalar]) -> ExactMatrix {
        assert_eq!(w.len(), self.k);
        ExactMatrix::from_fn(self.field, self.dprime, self.d, |j, i| {
            w.iter()
                .enumerate()
                .fold(self.field.zero(), |acc, (ww, c)| &acc + &(c * self.get(i, ww, j)))
        })
    }

    /// The pencil `s beta(v_0, -) + t beta(v_1, -)`; needs `d = 2`.
    pub fn to_pencil(&self) -> Result<LinearPencil, PencilError> {
        if self.d != 2 {
            return Err(PencilError::NotPencil(self.d));
        }
        let e = |i: usize| -> Vec<Scalar> {
            (0..2).map(|c| if c == i { self.field.one() } else { self.field.zero() }).collect()
        };
        LinearPencil::new(self.left_map(&e(0)), self.left_map(&e(1)))
    }

    /// Same pairing with the roles of `V` and `W` exchanged.
    pub fn swapped(&self) -> PairingTensor {
        PairingTensor::from_fn(self.field, (self.k, self.d, self.dprime), |w, i, j| {
            self.get(i, w, j).clone()
        })
    }
}

/// `d + k <= dprime + 1`.
pub fn exists_one_generic(d: usize, k: usize, dprime: usize) -> bool {
    d + k <= dprime + 1
}

/// `V x W -> V (x) W`, with `v_i (x) w_w` sent to coordinate `i k + w`.
pub fn identity_pairing(field: Field, d: usize, k: usize) -> PairingTensor {
    PairingTensor::from_fn(field, (d, k, d * k), |i, w, j| {
        if j == i * k + w {
            field.one()
        } else {
            field.zero()
        }
    })
}

/// Multiplication `S^a x S^b -> S^(a+b)` of binary forms in monomial bases.
pub fn sylvester_pairing(field: Field, a: usize, b: usize) -> PairingTensor {
    PairingTensor::from_fn(field, (a + 1, b + 1, a + b + 1), |i, w, j| {
        if j == i + w {
            field.one()
        } else {
            field.zero()
        }
    })
}

/// Probes `beta(-, w)` and `beta(v, -)` for injectivity at coordinate
/// vectors and at `trials` random vectors on each side. A `false` is
/// certain; a `true` only means no degenerate direction was found.
pub fn is_one_generic_random<R: Rng + ?Sized>(t: &PairingTensor, trials: usize, rng: &mut R) -> bool {
    let f = t.field;
    let (d, k, _) = t.dims();
    let unit = |n: usize, i: usize| -> Vec<Scalar> {
        (0..n).map(|c| if c == i { f.one() } else { f.zero() }).collect()
    };
    let random = |n: usize, rng: &mut R| -> Vec<Scalar> {
        loop {
            let v: Vec<Scalar> = (0..n).map(|_| f.random(rng)).collect();
            if v.iter().any(|c| !c.is_zero()) {
                return v;
            }
        }
    };
    if (0..k).any(|w| t.right_map(&unit(k, w)).rank() < d) {
        return false;
    }
    if (0..d).any(|i| t.left_map(&unit(d, i)).rank() < k) {
        return false;
    }
    for _ in 0..trials {
        if t.right_map(&random(k, rng)).rank() < d {
            return false;
        }
        if t.left_map(&random(d, rng)).rank() < k {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const Q: Field = Field::Rational;

    #[test]
    fn existence_bound() {
        assert!(exists_one_generic(2, 2, 4));
        assert!(!exists_one_generic(2, 3, 3));
        assert!(exists_one_generic(5, 1, 5));
    }

    #[test]
    fn sylvester_small_cases() {
        let t = sylvester_pairing(Q, 0, 0);
        assert_eq!(t.dims(), (1, 1, 1));
        assert!(t.get(0, 0, 0).is_one());
        let t = sylvester_pairing(Q, 1, 1);
        assert_eq!(t.dims(), (2, 2, 3));
        // x*y and y*x both land on xy
        assert!(t.get(0, 1, 1).is_one() && t.get(1, 0, 1).is_one());
        assert!(t.get(1, 1, 2).is_one() && t.get(0, 0, 0).is_one());
        assert_eq!(t.image_rank(), 3);
    }

    #[test]
    fn random_probe() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let fp = Field::default_prime();
        assert!(is_one_generic_random(&identity_pairing(fp, 3, 2), 10, &mut rng));
        assert!(is_one_generic_random(&sylvester_pairing(fp, 2, 2), 10, &mut rng));
        let mut t = identity_pairing(fp, 3, 2);
        for i in 0..3 {
            for j in 0..6 {
                t.set(i, 0, j, fp.zero());
            }
        }
        assert!(!is_one_generic_random(&t, 10, &mut rng));
    }
}
