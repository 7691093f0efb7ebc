//! Self-checking suites. Each check is a pure function of its own seed,
//! derived from the master seed and the check name, so reports are
//! reproducible and checks can run in parallel.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::chow::{
    anticanonical_y, canonical_class, dual_chern, hirz_adjunction_genus, hirz_canonical, hirz_intersect,
    intersection_number, mult_seq_apply, mult_seq_from_char_series, total_chern_quotient, BundleShape, HirzClass,
};
use crate::elliptic::{
    is_surjective, leaf_classify, lin_equiv, miller_function, pairing_tensor, random_effective, random_in_class,
    rr_basis, sigma, whensurj_predict, Curve, CurvePoint, Divisor,
};
use crate::exact::{Field, Scalar, TruncSeries};
use crate::pencil::{
    block_diagonal, identity_pencil, pad, random_one_generic_pencil, splitting_type, sylvester_pencil,
    through_codim_one, trivial_summand_count, LinearPencil,
};
use crate::secant::{
    embed_point, phi_at, sample_secant_line_point, sample_slice_point, sample_subsecant_point, singularity_verdict,
    slice_point_through, SecantConfig, Verdict,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Chow,
    Pencil,
    Elliptic,
    Secant,
    All,
}

impl Suite {
    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Chow => "chow",
            Suite::Pencil => "pencil",
            Suite::Elliptic => "elliptic",
            Suite::Secant => "secant",
            Suite::All => "all",
        })
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Suite, String> {
        match s {
            "chow" => Ok(Suite::Chow),
            "pencil" => Ok(Suite::Pencil),
            "elliptic" => Ok(Suite::Elliptic),
            "secant" => Ok(Suite::Secant),
            "all" => Ok(Suite::All),
            _ => Err(format!("unknown suite {s:?}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub seed: u64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<CheckReport>,
}

type CheckResult = Result<(), String>;
type CheckFn = fn(&mut ChaCha8Rng) -> CheckResult;

/// FNV-1a of the name, xored into the master seed.
pub fn check_seed(master: u64, name: &str) -> u64 {
    let h = name
        .bytes()
        .fold(0xcbf29ce484222325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100000001b3));
    master ^ h
}

fn checks() -> Vec<(Suite, &'static str, CheckFn)> {
    vec![
        (Suite::Chow, "chow.intersection_sweep", chow_intersections),
        (Suite::Chow, "chow.mult_seq_inverse", chow_mult_seq_inverse),
        (Suite::Chow, "chow.mult_seq_multiplicative", chow_multiplicative),
        (Suite::Chow, "chow.anticanonical", chow_anticanonical),
        (Suite::Chow, "chow.hirzebruch_lattice", chow_hirzebruch),
        (Suite::Pencil, "pencil.random_laws", pencil_random_laws),
        (Suite::Pencil, "pencil.worked_examples", pencil_examples),
        (Suite::Pencil, "pencil.block_additivity", pencil_blocks),
        (Suite::Elliptic, "elliptic.group_law", elliptic_group_law),
        (Suite::Elliptic, "elliptic.riemann_roch", elliptic_riemann_roch),
        (Suite::Elliptic, "elliptic.surjectivity", elliptic_surjectivity),
        (Suite::Elliptic, "elliptic.leaf_classification", elliptic_leaves),
        (Suite::Secant, "secant.membership", secant_membership),
        (Suite::Secant, "secant.singular_locus", secant_singular_locus),
    ]
}

/// Names of the checks a suite runs, in report order.
pub fn check_names(suite: Suite) -> Vec<&'static str> {
    checks()
        .into_iter()
        .filter(|(s, _, _)| suite.includes(*s))
        .map(|(_, n, _)| n)
        .collect()
}

pub fn run_suite(suite: Suite, master: u64) -> SuiteReport {
    let selected: Vec<_> = checks().into_iter().filter(|(s, _, _)| suite.includes(*s)).collect();
    let reports: Vec<CheckReport> = std::thread::scope(|scope| {
        let handles: Vec<_> = selected
            .iter()
            .map(|&(_, name, f)| {
                let seed = check_seed(master, name);
                scope.spawn(move || {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| f(&mut rng)))
                        .unwrap_or_else(|_| Err("check panicked".into()));
                    CheckReport {
                        name: name.to_string(),
                        seed,
                        passed: outcome.is_ok(),
                        detail: outcome.err(),
                    }
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("joined")).collect()
    });
    SuiteReport {
        suite: suite.to_string(),
        seed: master,
        passed: reports.iter().all(|r| r.passed),
        checks: reports,
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> CheckResult {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: fmt::Display>(e: E) -> String {
    e.to_string()
}

fn binom(n: i64, k: i64) -> i64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn chow_intersections(_: &mut ChaCha8Rng) -> CheckResult {
    for d in 2..=6 {
        for k in 1..=8 {
            let shape = BundleShape::critical(d, k).map_err(err)?;
            let gamma = total_chern_quotient(&shape);
            let dual = dual_chern(&gamma);
            for s in 0..d {
                let b = binom(k as i64, s as i64);
                let sign = if s % 2 == 0 { 1 } else { -1 };
                let got = (
                    intersection_number(&shape, &gamma, s).map_err(err)?,
                    intersection_number(&shape, &dual, s).map_err(err)?,
                );
                ensure(got == (sign * b, b), || format!("d={d} k={k} s={s}: {got:?}"))?;
            }
        }
    }
    Ok(())
}

fn random_series(field: Field, n: usize, rng: &mut ChaCha8Rng) -> TruncSeries<Scalar> {
    let mut c = vec![field.one()];
    c.extend((0..n).map(|_| field.random(rng)));
    TruncSeries::new(c, n, &field.zero())
}

fn chow_mult_seq_inverse(rng: &mut ChaCha8Rng) -> CheckResult {
    let fp = Field::default_prime();
    let n = 8;
    let h = mult_seq_from_char_series(&TruncSeries::one_plus_t_pow(Field::Rational, -1, n), n).map_err(err)?;
    for _ in 0..100 {
        let f = random_series(fp, n, rng);
        let got = mult_seq_apply(&h, &f).map_err(err)?;
        ensure(got == f.inverse().map_err(err)?, || format!("H(f) != 1/f for {f:?}"))?;
    }
    let q = Field::Rational;
    for d in 2..=6 {
        for k in 1..=8 {
            let shape = BundleShape::critical(d, k).map_err(err)?;
            let gamma = total_chern_quotient(&shape);
            let values: Vec<Scalar> = gamma.iter().map(|&c| q.from_i64(c)).collect();
            for s in 0..d {
                let hs = h.eval(s, &values[..s.min(values.len())], q).map_err(err)?;
                let residue = intersection_number(&shape, &gamma, s).map_err(err)?;
                ensure(hs == q.from_i64(residue), || format!("H_{s} at d={d} k={k} is {hs}"))?;
            }
        }
    }
    Ok(())
}

fn chow_multiplicative(rng: &mut ChaCha8Rng) -> CheckResult {
    let fp = Field::default_prime();
    let n = 6;
    let chi = random_series(fp, n, rng);
    let k = mult_seq_from_char_series(&chi, n).map_err(err)?;
    for _ in 0..100 {
        let f = random_series(fp, n, rng);
        let g = random_series(fp, n, rng);
        let lhs = mult_seq_apply(&k, &f.mul(&g)).map_err(err)?;
        let rhs = mult_seq_apply(&k, &f).map_err(err)?.mul(&mult_seq_apply(&k, &g).map_err(err)?);
        ensure(lhs == rhs, || "K(fg) != K(f) K(g)".into())?;
    }
    Ok(())
}

fn chow_anticanonical(_: &mut ChaCha8Rng) -> CheckResult {
    for d in 2..=6 {
        for k in 1..=8 {
            let shape = BundleShape::critical(d, k).map_err(err)?;
            let (a, b) = canonical_class(&shape).map_err(err)?;
            let y = anticanonical_y(&shape).map_err(err)?;
            ensure((y.zeta, y.h) == (-a, -b), || format!("Y != -K at d={d} k={k}"))?;
            ensure(y.check_value == d as i64, || format!("Y product {} at d={d} k={k}", y.check_value))?;
        }
    }
    Ok(())
}

fn chow_hirzebruch(_: &mut ChaCha8Rng) -> CheckResult {
    for e in 0..=2u32 {
        let (c0, f) = (HirzClass::section(e), HirzClass::fiber(e));
        let table = (
            hirz_intersect(&c0, &c0).map_err(err)?,
            hirz_intersect(&c0, &f).map_err(err)?,
            hirz_intersect(&f, &f).map_err(err)?,
        );
        ensure(table == (-(e as i64), 1, 0), || format!("pairing table {table:?} for e={e}"))?;
        ensure(hirz_canonical(e) == HirzClass::new(e, -2, -(2 + e as i64)), || format!("K for e={e}"))?;
        let g = hirz_adjunction_genus(&HirzClass::new(e, 2, e as i64 + 2)).map_err(err)?;
        ensure(g == 1, || format!("genus {g} for e={e}"))?;
    }
    Ok(())
}

fn splitting_laws(p: &LinearPencil) -> CheckResult {
    let st = splitting_type(p).map_err(err)?;
    let (dp, k) = (p.dprime(), p.k());
    ensure(st.rank() == dp - k && st.total() == k, || format!("type {:?} for d'={dp} k={k}", st.degrees()))?;
    let trivial = trivial_summand_count(p).map_err(err)?;
    ensure(trivial == dp - p.to_tensor().image_rank(), || format!("{trivial} trivial summands"))
}

fn pencil_random_laws(rng: &mut ChaCha8Rng) -> CheckResult {
    let f = Field::default_prime();
    for _ in 0..50 {
        let dp = rng.gen_range(3..=8);
        let k = rng.gen_range(1..dp - 1);
        let p = random_one_generic_pencil(f, k, dp, rng).map_err(err)?;
        splitting_laws(&p)?;
    }
    Ok(())
}

fn pencil_examples(_: &mut ChaCha8Rng) -> CheckResult {
    let f = Field::default_prime();
    let cases: Vec<(LinearPencil, Vec<usize>)> = vec![
        (identity_pencil(f, 2), vec![1, 1]),
        (through_codim_one(f), vec![2, 0]),
        (sylvester_pencil(f, 4), vec![4]),
        (pad(&sylvester_pencil(f, 1), 3), vec![1, 0, 0, 0]),
    ];
    for (p, expect) in cases {
        let st = splitting_type(&p).map_err(err)?;
        ensure(st.degrees() == expect, || format!("type {:?}, expected {expect:?}", st.degrees()))?;
    }
    Ok(())
}

fn pencil_blocks(rng: &mut ChaCha8Rng) -> CheckResult {
    let f = Field::default_prime();
    for _ in 0..10 {
        let p = random_one_generic_pencil(f, rng.gen_range(1..3), rng.gen_range(3..5), rng).map_err(err)?;
        let q = random_one_generic_pencil(f, rng.gen_range(1..3), rng.gen_range(3..5), rng).map_err(err)?;
        let joint = splitting_type(&block_diagonal(&p, &q)).map_err(err)?;
        let sum = splitting_type(&p).map_err(err)?.union(&splitting_type(&q).map_err(err)?);
        ensure(joint == sum, || format!("{:?} != {:?}", joint.degrees(), sum.degrees()))?;
    }
    Ok(())
}

/// A nonsingular `y^2 = x^3 + A x + B` over `F_10007` with random `A, B`.
pub fn random_curve<R: Rng + ?Sized>(rng: &mut R) -> Curve {
    let f = Field::default_prime();
    loop {
        if let Ok(c) = Curve::new(f.random(rng), f.random(rng)) {
            return c;
        }
    }
}

fn elliptic_group_law(rng: &mut ChaCha8Rng) -> CheckResult {
    let e = random_curve(rng);
    for _ in 0..20 {
        let p = e.random_point(rng).map_err(err)?;
        let q = e.random_point(rng).map_err(err)?;
        let r = e.random_point(rng).map_err(err)?;
        let lhs = e.add(&e.add(&p, &q).map_err(err)?, &r).map_err(err)?;
        let rhs = e.add(&p, &e.add(&q, &r).map_err(err)?).map_err(err)?;
        ensure(lhs == rhs && e.contains(&lhs), || format!("associativity fails at {p}, {q}, {r}"))?;
        ensure(e.add(&p, &e.neg(&p)).map_err(err)? == CurvePoint::Infinity, || "P - P != O".into())?;
    }
    Ok(())
}

fn elliptic_riemann_roch(rng: &mut ChaCha8Rng) -> CheckResult {
    let e = random_curve(rng);
    for i in 0..20 {
        let deg = 1 + i % 8;
        let mut d = random_effective(&e, deg - 1, rng).map_err(err)?;
        d.add_term(CurvePoint::Infinity, 1);
        let b = rr_basis(&e, &d).map_err(err)?;
        ensure(b.len() == deg, || format!("basis of size {} for {d}", b.len()))?;
        for f in &b.basis {
            ensure(f.satisfies_bound(&d).map_err(err)?, || format!("{f} exceeds {d}"))?;
        }
        let principal = d.sub(&Divisor::infinity(d.degree() - 1)).sub(&Divisor::point(sigma(&e, &d).map_err(err)?, 1));
        let g = miller_function(&e, &principal).map_err(err)?.expand();
        ensure(g.has_divisor(&principal).map_err(err)?, || format!("Miller function for {principal}"))?;
    }
    Ok(())
}

fn elliptic_surjectivity(rng: &mut ChaCha8Rng) -> CheckResult {
    let e = random_curve(rng);
    for d in 2..=4 {
        for k in 1..=3 {
            let dn = random_effective(&e, d, rng).map_err(err)?;
            let sn = sigma(&e, &dn).map_err(err)?;
            let shift = e.add(&sn, &e.random_point(rng).map_err(err)?).map_err(err)?;
            for target in [sn, shift] {
                let dm = random_in_class(&e, k, &target, rng).map_err(err)?;
                let same = lin_equiv(&e, &dn, &dm).map_err(err)?;
                let t = pairing_tensor(&e, &dn, &dm).map_err(err)?;
                ensure(is_surjective(&t) == whensurj_predict(d, k, same), || {
                    format!("surjectivity at d={d} k={k} same={same}")
                })?;
            }
        }
    }
    Ok(())
}

fn elliptic_leaves(rng: &mut ChaCha8Rng) -> CheckResult {
    let e = random_curve(rng);
    for i in 0..12 {
        let d = random_effective(&e, 2, rng).map_err(err)?;
        let dp_deg = 3 + i % 6;
        let dprime = if dp_deg % 2 == 0 && i % 12 < 6 {
            let target = e.scalar_mul(dp_deg as i64 / 2, &sigma(&e, &d).map_err(err)?).map_err(err)?;
            random_in_class(&e, dp_deg, &target, rng).map_err(err)?
        } else {
            random_effective(&e, dp_deg, rng).map_err(err)?
        };
        let r = leaf_classify(&e, &d, &dprime).map_err(err)?;
        ensure(r.matches, || format!("predicted {} computed {}", r.e_predicted, r.e_computed))?;
        ensure(r.e_computed % 2 == r.k % 2 && r.e_computed <= r.k.min(2), || format!("bounds for {r:?}"))?;
    }
    Ok(())
}

fn secant_config(rng: &mut ChaCha8Rng, n: usize, d: usize) -> Result<SecantConfig, String> {
    let e = random_curve(rng);
    let dn = random_effective(&e, d, rng).map_err(err)?;
    let dnp = random_effective(&e, n - d, rng).map_err(err)?;
    SecantConfig::new(&e, &dn, &dnp).map_err(err)
}

fn secant_membership(rng: &mut ChaCha8Rng) -> CheckResult {
    for (n, d) in [(7, 3), (8, 3), (9, 4)] {
        let cfg = secant_config(rng, n, d)?;
        for _ in 0..20 {
            let p = sample_slice_point(&cfg, rng).map_err(err)?;
            let rank = phi_at(&cfg, &p.point).map_err(err)?.rank();
            ensure(rank < d, || format!("slice point of rank {rank} at n={n} d={d}"))?;
            let q = sample_subsecant_point(&cfg, d - 2, rng).map_err(err)?;
            let rank = phi_at(&cfg, &q.point).map_err(err)?.rank();
            ensure(rank <= d - 2, || format!("Sec_{} point of rank {rank}", d - 2))?;
        }
    }
    Ok(())
}

fn secant_singular_locus(rng: &mut ChaCha8Rng) -> CheckResult {
    let cfg = secant_config(rng, 8, 3)?;
    for _ in 0..10 {
        let p = sample_slice_point(&cfg, rng).map_err(err)?;
        let v = singularity_verdict(&cfg, &p.point).map_err(err)?;
        ensure(v.verdict == Verdict::Smooth, || format!("generic slice point: {v:?}"))?;
        let q = sample_secant_line_point(&cfg, rng).map_err(err)?;
        let v = singularity_verdict(&cfg, &q.point).map_err(err)?;
        ensure(v.verdict == Verdict::Smooth, || format!("secant line point: {v:?}"))?;
        let z0 = cfg.curve().random_point(rng).map_err(err)?;
        let c = slice_point_through(&cfg, &z0, rng).map_err(err)?;
        ensure(c.point == embed_point(&cfg, &z0).map_err(err)?, || "curve point embedding".into())?;
        let v = singularity_verdict(&cfg, &c.point).map_err(err)?;
        ensure(v.membership_rank == 1 && v.verdict == Verdict::Singular, || format!("curve point: {v:?}"))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_depend_on_name() {
        assert_ne!(check_seed(0, "a"), check_seed(0, "b"));
        assert_eq!(check_seed(7, "a"), check_seed(7, "a"));
    }

    #[test]
    fn suites_parse_and_select() {
        assert_eq!("chow".parse::<Suite>(), Ok(Suite::Chow));
        assert!("nope".parse::<Suite>().is_err());
        assert_eq!(check_names(Suite::Chow).len(), 5);
        assert_eq!(check_names(Suite::All).len(), checks().len());
    }

    #[test]
    fn chow_suite_passes() {
        let r = run_suite(Suite::Chow, 1);
        assert!(r.passed, "{r:?}");
    }
}
