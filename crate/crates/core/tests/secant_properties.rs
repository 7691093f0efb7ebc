use leafcalc::elliptic::{random_effective, Curve, Divisor};
use leafcalc::exact::Field;
use leafcalc::secant::{
    embed_point, jacobian_rank_at, phi_at, sample_secant_line_point, sample_slice_point, sample_subsecant_point,
    singularity_verdict, slice_point_through, AmbientPoint, SecantConfig, Verdict,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn curve() -> Curve {
    Curve::from_i64(Field::default_prime(), 2, 3).unwrap()
}

fn config(n: usize, d: usize, rng: &mut ChaCha8Rng) -> SecantConfig {
    let e = curve();
    let dn = random_effective(&e, d, rng).unwrap();
    let dnp = random_effective(&e, n - d, rng).unwrap();
    SecantConfig::new(&e, &dn, &dnp).unwrap()
}

#[test]
fn membership_soundness() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (n, d) in [(7, 3), (8, 3), (9, 4)] {
        let cfg = config(n, d, &mut rng);
        for _ in 0..50 {
            let p = sample_slice_point(&cfg, &mut rng).unwrap();
            assert!(phi_at(&cfg, &p.point).unwrap().rank() < d);
        }
        for r in 1..=d - 2 {
            for _ in 0..10 {
                let p = sample_subsecant_point(&cfg, r, &mut rng).unwrap();
                assert!(phi_at(&cfg, &p.point).unwrap().rank() <= r);
            }
        }
    }
}

#[test]
fn generic_points_have_full_rank() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let cfg = config(8, 3, &mut rng);
    let f = cfg.curve().field();
    let full = (0..100)
        .filter(|_| {
            let p = AmbientPoint((0..8).map(|_| f.random(&mut rng)).collect());
            !p.is_zero() && phi_at(&cfg, &p).unwrap().rank() == 3
        })
        .count();
    assert!(full >= 99, "only {full} of 100 generic points have rank 3");
}

#[test]
fn singular_locus_dichotomy() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let cfg = config(8, 3, &mut rng);
    assert_eq!(cfg.codim(), 3);
    for _ in 0..20 {
        let p = sample_slice_point(&cfg, &mut rng).unwrap();
        let v = singularity_verdict(&cfg, &p.point).unwrap();
        assert_eq!((v.membership_rank, v.jacobian_rank, v.verdict), (2, 3, Verdict::Smooth));
    }
    for _ in 0..10 {
        let z0 = cfg.curve().random_point(&mut rng).unwrap();
        let p = slice_point_through(&cfg, &z0, &mut rng).unwrap();
        assert_eq!(p.point, embed_point(&cfg, &z0).unwrap());
        let v = singularity_verdict(&cfg, &p.point).unwrap();
        assert_eq!(v.membership_rank, 1);
        assert!(v.jacobian_rank < 3);
        assert_eq!(v.verdict, Verdict::Singular);
    }
    for _ in 0..10 {
        let p = sample_secant_line_point(&cfg, &mut rng).unwrap();
        let v = singularity_verdict(&cfg, &p.point).unwrap();
        assert_eq!(v.membership_rank, 2);
        assert_eq!(v.verdict, Verdict::Smooth);
    }
}

#[test]
fn standard_complement_matches_general_config() {
    let e = curve();
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let cfg = SecantConfig::with_standard_complement(&e, 9, &Divisor::infinity(4)).unwrap();
    for _ in 0..5 {
        let p = sample_slice_point(&cfg, &mut rng).unwrap();
        let v = singularity_verdict(&cfg, &p.point).unwrap();
        assert_eq!((v.membership_rank, v.verdict), (3, Verdict::Smooth));
        // Sec_2 is the singular locus for d = 4
        let q = sample_subsecant_point(&cfg, 2, &mut rng).unwrap();
        assert_eq!(singularity_verdict(&cfg, &q.point).unwrap().verdict, Verdict::Singular);
    }
}

#[test]
fn ranks_are_scale_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let cfg = config(8, 3, &mut rng);
    let f = cfg.curve().field();
    let p = sample_slice_point(&cfg, &mut rng).unwrap().point;
    let q = embed_point(&cfg, &cfg.curve().random_point(&mut rng).unwrap()).unwrap();
    for pt in [p, q] {
        let base = (phi_at(&cfg, &pt).unwrap().rank(), jacobian_rank_at(&cfg, &pt).unwrap());
        for _ in 0..5 {
            let c = f.random_nonzero(&mut rng);
            let s = pt.scale(&c);
            assert_eq!((phi_at(&cfg, &s).unwrap().rank(), jacobian_rank_at(&cfg, &s).unwrap()), base);
        }
    }
}
