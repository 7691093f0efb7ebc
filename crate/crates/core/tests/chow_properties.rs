use leafcalc::chow::{
    anticanonical_y, canonical_class, dual_chern, hirz_adjunction_genus, intersection_number,
    mult_seq_apply, mult_seq_from_char_series, total_chern_quotient, BundleShape, HirzClass,
};
use leafcalc::exact::{Field, TruncSeries};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// `(1 - u)^(-k)` by multiplying `k` geometric series, through `u^n`.
fn geometric_power(k: usize, n: usize) -> Vec<i64> {
    let mut acc = vec![0i64; n + 1];
    acc[0] = 1;
    for _ in 0..k {
        let mut next = vec![0i64; n + 1];
        for (i, a) in acc.iter().enumerate() {
            for slot in next.iter_mut().skip(i) {
                *slot += a;
            }
        }
        acc = next;
    }
    acc
}

/// Segre numbers: coefficients of `1 / (1 + g_1 u + g_2 u^2 + ...)`.
fn segre(gamma: &[i64], n: usize) -> Vec<i64> {
    let mut s = vec![1i64];
    for m in 1..=n {
        let v: i64 = (1..=m)
            .map(|i| gamma.get(i - 1).copied().unwrap_or(0) * s[m - i])
            .sum();
        s.push(-v);
    }
    s
}

fn binom(n: i64, k: i64) -> i64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn sweep() -> impl Iterator<Item = BundleShape> {
    (2..=6).flat_map(|d| {
        (1..=8).flat_map(move |k| {
            (d + k - 1..=d + k + 1).map(move |dp| BundleShape::new(d, k, dp).unwrap())
        })
    })
}

#[test]
fn chern_matches_geometric_expansion() {
    for shape in sweep() {
        let expect = geometric_power(shape.k, shape.d - 1);
        assert_eq!(total_chern_quotient(&shape), expect[1..].to_vec());
    }
}

#[test]
fn quotient_and_dual_intersection_numbers() {
    for shape in sweep() {
        let gamma = total_chern_quotient(&shape);
        let dual = dual_chern(&gamma);
        for s in 0..shape.d {
            let sign = if s % 2 == 0 { 1 } else { -1 };
            let b = binom(shape.k as i64, s as i64);
            assert_eq!(intersection_number(&shape, &gamma, s).unwrap(), sign * b, "{shape:?} s={s}");
            assert_eq!(intersection_number(&shape, &dual, s).unwrap(), b, "{shape:?} s={s}");
        }
    }
}

#[test]
fn residue_reduction_matches_inverse_sequence() {
    let n = 6;
    let h = mult_seq_from_char_series(&TruncSeries::one_plus_t_pow(Field::Rational, -1, n), n).unwrap();
    let q = Field::Rational;
    for shape in sweep() {
        let gamma = total_chern_quotient(&shape);
        for g in [gamma.clone(), dual_chern(&gamma)] {
            let values: Vec<_> = g.iter().map(|&c| q.from_i64(c)).collect();
            let oracle = segre(&g, shape.d - 1);
            for s in 0..shape.d {
                let residue = intersection_number(&shape, &g, s).unwrap();
                assert_eq!(residue, oracle[s]);
                assert_eq!(q.from_i64(residue), h.eval(s, &values[..s.min(values.len())], q).unwrap());
            }
        }
    }
}

#[test]
fn inverse_sequence_sends_geometric_power_to_binomial() {
    let q = Field::Rational;
    let n = 6;
    let h = mult_seq_from_char_series(&TruncSeries::one_plus_t_pow(q, -1, n), n).unwrap();
    for k in 1..6 {
        let f = TruncSeries::from_i64s(q, &geometric_power(k, n), n);
        let expect: Vec<i64> = (0..=n as i64).map(|i| binom(k as i64, i) * if i % 2 == 0 { 1 } else { -1 }).collect();
        assert_eq!(mult_seq_apply(&h, &f).unwrap(), TruncSeries::from_i64s(q, &expect, n));
        assert_eq!(mult_seq_apply(&h, &f).unwrap(), f.inverse().unwrap());
    }
}

#[test]
fn anticanonical_sweep() {
    for d in 2..=6 {
        for k in 1..=8 {
            let shape = BundleShape::critical(d, k).unwrap();
            let (a, b) = canonical_class(&shape).unwrap();
            let y = anticanonical_y(&shape).unwrap();
            assert_eq!((y.zeta + a, y.h + b), (0, 0));
            assert_eq!(y.check_value, d as i64);
        }
    }
}

#[test]
fn adjunction_on_anticanonical_curves() {
    for e in 0..=2 {
        assert_eq!(hirz_adjunction_genus(&HirzClass::new(e, 2, e as i64 + 2)), Ok(1));
    }
}

fn random_series(field: Field, n: usize, rng: &mut ChaCha8Rng) -> TruncSeries<leafcalc::Scalar> {
    let mut c = vec![field.one()];
    c.extend((0..n).map(|_| field.random(rng)));
    TruncSeries::new(c, n, &field.zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn sequences_are_multiplicative(seed in any::<u64>(), chi_coeffs in prop::collection::vec(-4i64..5, 5)) {
        let n = 5;
        let q = Field::Rational;
        let mut c = vec![1];
        c.extend(chi_coeffs);
        let k = mult_seq_from_char_series(&TruncSeries::from_i64s(q, &c, n), n).unwrap();
        let fp = Field::default_prime();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..100 {
            let f = random_series(fp, n, &mut rng);
            let g = random_series(fp, n, &mut rng);
            let lhs = mult_seq_apply(&k, &f.mul(&g)).unwrap();
            let rhs = mult_seq_apply(&k, &f).unwrap().mul(&mult_seq_apply(&k, &g).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn dual_rule_flips_sign_by_parity(d in 2usize..6, gamma in prop::collection::vec(-20i64..20, 0..6)) {
        let shape = BundleShape::new(d, 1, d + 2).unwrap();
        let dual = dual_chern(&gamma);
        for s in 0..d {
            let a = intersection_number(&shape, &gamma, s).unwrap();
            let b = intersection_number(&shape, &dual, s).unwrap();
            prop_assert_eq!(a, if s % 2 == 0 { b } else { -b });
        }
    }

    #[test]
    fn residue_matches_segre_for_arbitrary_chern(d in 2usize..7, k in 1usize..6, extra in 0usize..3,
                                                  gamma in prop::collection::vec(-9i64..10, 0..7)) {
        let shape = BundleShape::new(d, k, d + k - 1 + extra).unwrap();
        let oracle = segre(&gamma[..gamma.len().min(d - 1)], d - 1);
        for s in 0..d {
            prop_assert_eq!(intersection_number(&shape, &gamma, s).unwrap(), oracle[s]);
        }
    }
}
