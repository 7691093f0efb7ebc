//! Pencils for worked examples and randomized checks.

use rand::Rng;

use crate::exact::{ExactMatrix, Field};

use super::{identity_pairing, is_one_generic_pencil, sylvester_pairing, LinearPencil, PencilError};

/// Pencil of the identity pairing `C^2 x C^k -> C^(2k)`.
pub fn identity_pencil(field: Field, k: usize) -> LinearPencil {
    identity_pairing(field, 2, k).to_pencil().expect("d = 2")
}

/// Pencil of `S^1 x S^(k-1) -> S^k`: `dprime = k + 1`, type `[k]`.
pub fn sylvester_pencil(field: Field, k: usize) -> LinearPencil {
    assert!(k >= 1);
    sylvester_pairing(field, 1, k - 1).to_pencil().expect("d = 2")
}

/// Appends `c` zero rows, i.e. enlarges `V'` by unused coordinates.
pub fn pad(p: &LinearPencil, c: usize) -> LinearPencil {
    let z = ExactMatrix::zeros(p.field(), c, p.k());
    LinearPencil::new(p.a().vstack(&z), p.b().vstack(&z)).expect("same shapes")
}

/// `C^2 x C^2 -> C^4` with image a 3-dimensional subspace.
pub fn through_codim_one(field: Field) -> LinearPencil {
    pad(&sylvester_pencil(field, 2), 1)
}

/// Direct sum of two pencils over the same `V`.
pub fn block_diagonal(p: &LinearPencil, q: &LinearPencil) -> LinearPencil {
    let f = p.field();
    let diag = |x: &ExactMatrix, y: &ExactMatrix| {
        ExactMatrix::from_fn(f, x.rows() + y.rows(), x.cols() + y.cols(), |i, j| {
            match (i < x.rows(), j < x.cols()) {
                (true, true) => x.get(i, j).clone(),
                (false, false) => y.get(i - x.rows(), j - x.cols()).clone(),
                _ => f.zero(),
            }
        })
    };
    LinearPencil::new(diag(p.a(), q.a()), diag(p.b(), q.b())).expect("same shapes")
}

/// Uniform random entries, rejecting samples that are not 1-generic.
/// Gives up after 200 attempts.
pub fn random_one_generic_pencil<R: Rng + ?Sized>(
    field: Field,
    k: usize,
    dprime: usize,
    rng: &mut R,
) -> Result<LinearPencil, PencilError> {
    for _ in 0..200 {
        let a = ExactMatrix::from_fn(field, dprime, k, |_, _| field.random(rng));
        let b = ExactMatrix::from_fn(field, dprime, k, |_, _| field.random(rng));
        let p = LinearPencil::new(a, b)?;
        if is_one_generic_pencil(&p)? {
            return Ok(p);
        }
    }
    Err(PencilError::NotOneGeneric)
}
