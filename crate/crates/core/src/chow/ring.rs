use serde::{Deserialize, Serialize};

use super::{BundleShape, ChowError};

/// Element of `Z[h, zeta] / (h^d, zeta^r + g_1 h zeta^(r-1) + ... + g_r h^r)`.
///
/// `coeffs[i][j]` is the coefficient of `h^i zeta^j` with `i < d`, `j < r`;
/// every stored value is fully reduced, so equal classes compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChowClass {
    d: usize,
    r: usize,
    chern: Vec<i64>,
    coeffs: Vec<Vec<i64>>,
}

impl ChowClass {
    /// Zero class in the ring with the given relation. `chern` is padded
    /// with zeros to length `r`; entries of degree `>= d` are dropped since
    /// they vanish on the base.
    pub fn zero(d: usize, r: usize, chern: &[i64]) -> ChowClass {
        assert!(d >= 1 && r >= 1, "degenerate Chow ring");
        let chern = (1..=r)
            .map(|i| if i < d { chern.get(i - 1).copied().unwrap_or(0) } else { 0 })
            .collect();
        ChowClass {
            d,
            r,
            chern,
            coeffs: vec![vec![0; r]; d],
        }
    }

    /// Ring of the projectivization of a bundle of the given shape.
    pub fn ring_of(shape: &BundleShape, chern: &[i64]) -> ChowClass {
        ChowClass::zero(shape.d, shape.r(), chern)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn chern(&self) -> &[i64] {
        &self.chern
    }

    pub fn coeffs(&self) -> &[Vec<i64>] {
        &self.coeffs
    }

    pub fn coeff(&self, h_pow: usize, zeta_pow: usize) -> i64 {
        self.coeffs[h_pow][zeta_pow]
    }

    fn empty_like(&self) -> ChowClass {
        ChowClass {
            coeffs: vec![vec![0; self.r]; self.d],
            ..self.clone()
        }
    }

    pub fn one(&self) -> ChowClass {
        self.monomial(0, 0)
    }

    /// `h^i zeta^j`, reduced.
    pub fn monomial(&self, h_pow: usize, zeta_pow: usize) -> ChowClass {
        let mut grid = vec![vec![0i64; zeta_pow.max(self.r - 1) + 1]; self.d];
        if h_pow < self.d {
            grid[h_pow][zeta_pow] = 1;
        }
        self.reduce(grid)
    }

    pub fn h(&self) -> ChowClass {
        self.monomial(1, 0)
    }

    pub fn zeta(&self) -> ChowClass {
        self.monomial(0, 1)
    }

    /// `a zeta + b h`.
    pub fn divisor(&self, zeta_coeff: i64, h_coeff: i64) -> ChowClass {
        self.zeta().scale(zeta_coeff).add(&self.h().scale(h_coeff))
    }

    pub fn add(&self, rhs: &ChowClass) -> ChowClass {
        self.check_ring(rhs);
        let mut out = self.clone();
        for (row, other) in out.coeffs.iter_mut().zip(&rhs.coeffs) {
            for (a, b) in row.iter_mut().zip(other) {
                *a += b;
            }
        }
        out
    }

    pub fn scale(&self, c: i64) -> ChowClass {
        let mut out = self.clone();
        out.coeffs.iter_mut().flatten().for_each(|a| *a *= c);
        out
    }

    pub fn mul(&self, rhs: &ChowClass) -> ChowClass {
        self.check_ring(rhs);
        let mut grid = vec![vec![0i64; 2 * self.r - 1]; self.d];
        for (i1, row1) in self.coeffs.iter().enumerate() {
            for (j1, &a) in row1.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                for (i2, row2) in rhs.coeffs.iter().enumerate().take(self.d - i1) {
                    for (j2, &b) in row2.iter().enumerate() {
                        grid[i1 + i2][j1 + j2] += a * b;
                    }
                }
            }
        }
        self.reduce(grid)
    }

    pub fn pow(&self, e: usize) -> ChowClass {
        (0..e).fold(self.one(), |acc, _| acc.mul(self))
    }

    /// Coefficient of the top cell `h^(d-1) zeta^(r-1)`: the degree of the
    /// top-dimensional part.
    pub fn degree(&self) -> i64 {
        self.coeffs[self.d - 1][self.r - 1]
    }

    /// Eliminates `zeta^j` for `j >= r` from the highest power down.
    fn reduce(&self, mut grid: Vec<Vec<i64>>) -> ChowClass {
        let width = grid.first().map_or(0, Vec::len);
        for j in (self.r..width).rev() {
            for i in 0..self.d {
                let c = grid[i][j];
                if c == 0 {
                    continue;
                }
                grid[i][j] = 0;
                for (l, g) in self.chern.iter().enumerate() {
                    let l = l + 1;
                    if i + l < self.d && *g != 0 {
                        grid[i + l][j - l] -= c * g;
                    }
                }
            }
        }
        let mut out = self.empty_like();
        for (i, row) in grid.into_iter().enumerate() {
            out.coeffs[i].copy_from_slice(&row[..self.r]);
        }
        out
    }

    fn check_ring(&self, rhs: &ChowClass) {
        assert!(
            self.d == rhs.d && self.r == rhs.r && self.chern == rhs.chern,
            "classes from different Chow rings"
        );
    }

    /// `{"d":…, "r":…, "chern":[…], "coeffs":[[…]]}`
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain integers serialize")
    }
}

/// Degree of `zeta^(r-1+s) h^(d-1-s)` on the projectivization of a bundle
/// with the given shape and Chern integers.
///
/// The monomial `zeta^(r-1+s)` is reduced modulo the Chern relation, its
/// `zeta^(r-1)` part is multiplied by `h^(d-1-s)` and the top-cell
/// coefficient is returned.
pub fn intersection_number(shape: &BundleShape, chern: &[i64], s: usize) -> Result<i64, ChowError> {
    if s >= shape.d {
        return Err(ChowError::PowerOutOfRange { s, d: shape.d });
    }
    let ring = ChowClass::ring_of(shape, chern);
    let r = shape.r();
    Ok(ring.monomial(0, r - 1 + s).mul(&ring.monomial(shape.d - 1 - s, 0)).degree())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projective_plane_bundle_relation() {
        // r = 2 over P^1 with c_1 = 3: zeta^2 = -3 h zeta
        let ring = ChowClass::zero(2, 2, &[3]);
        let z2 = ring.zeta().mul(&ring.zeta());
        assert_eq!(z2.coeff(1, 1), -3);
        assert_eq!(z2.coeff(0, 0), 0);
        assert_eq!(ring.h().mul(&ring.h()), ring.monomial(0, 0).scale(0));
    }

    #[test]
    fn generator_has_degree_one() {
        for d in 2..5 {
            for r in 1..5 {
                let ring = ChowClass::zero(d, r, &[5, -2, 7]);
                assert_eq!(ring.monomial(d - 1, r - 1).degree(), 1);
            }
        }
    }

    #[test]
    fn s_out_of_range() {
        let shape = BundleShape::new(2, 2, 4).unwrap();
        assert!(matches!(
            intersection_number(&shape, &[2], 2),
            Err(ChowError::PowerOutOfRange { .. })
        ));
    }

    #[test]
    fn json_layout() {
        let ring = ChowClass::zero(2, 2, &[2]);
        let v = ring.zeta().to_json();
        assert_eq!(v["d"], 2);
        assert_eq!(v["r"], 2);
        assert_eq!(v["chern"], serde_json::json!([2, 0]));
        assert_eq!(v["coeffs"], serde_json::json!([[0, 1], [0, 0]]));
    }
}
