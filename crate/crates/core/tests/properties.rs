mod common;

use kbundle::algebra::{PrimeField, Rationals, Ring};
use kbundle::bounds::tau_of;
use kbundle::bundle::{KernelBundle, SyzygyBundleSpec};
use kbundle::engine::GradedMap;
use kbundle::powers::exterior_power_matrix;
use kbundle::rational::{floor_i64, q};
use kbundle::stability::{hoppe_check, InitialDegree, Mode, StabilityReport};
use kbundle::{Engine, Limits};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;

fn family_bundle(seed: u64) -> (Vec<String>, KernelBundle<Rationals>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gens = monomial_family(&mut rng);
    let refs: Vec<&str> = gens.iter().map(String::as_str).collect();
    let b = syzygy(&refs, 0).to_bundle().unwrap();
    (gens, b)
}

fn run(b: &KernelBundle<Rationals>, engine: Engine, limits: &Limits) -> StabilityReport {
    hoppe_check(b, engine, Mode::StabilityEvidence, limits).unwrap()
}

fn shifted(d: InitialDegree, by: i64) -> InitialDegree {
    match d {
        InitialDegree::Exact(k) => InitialDegree::Exact(k + by),
        InitialDegree::Above(k) => InitialDegree::Above(k + by),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn twisting_shifts_every_record(seed in any::<u64>(), c in -3i64..=3) {
        let (_, b) = family_bundle(seed);
        let l = Limits::default();
        let r = run(&b, Engine::Linalg, &l);
        let t = run(&b.twist(c), Engine::Linalg, &l);
        prop_assert_eq!(r.verdict, t.verdict);
        prop_assert_eq!(r.stability, t.stability);
        prop_assert_eq!(r.per_power.len(), t.per_power.len());
        for (x, y) in r.per_power.iter().zip(&t.per_power) {
            let by = -(x.q as i64) * c;
            prop_assert_eq!(x.relation, y.relation);
            prop_assert_eq!(&x.threshold + q(by), y.threshold.clone());
            prop_assert_eq!(x.alpha.map(|a| shifted(a, by)), y.alpha);
        }
    }

    #[test]
    fn generator_order_is_irrelevant(seed in any::<u64>(), shuffle in any::<u64>()) {
        let (mut gens, b) = family_bundle(seed);
        gens.shuffle(&mut ChaCha8Rng::seed_from_u64(shuffle));
        let refs: Vec<&str> = gens.iter().map(String::as_str).collect();
        let p = syzygy(&refs, 0).to_bundle().unwrap();
        let l = Limits::default();
        let (r, s) = (run(&b, Engine::Linalg, &l), run(&p, Engine::Linalg, &l));
        prop_assert_eq!(r.verdict, s.verdict);
        prop_assert_eq!(r.stability, s.stability);
        prop_assert_eq!(r.per_power, s.per_power);
    }

    #[test]
    fn engines_agree_on_reports(seed in any::<u64>()) {
        let (_, b) = family_bundle(seed);
        let l = Limits::default();
        let (g, a) = (run(&b, Engine::Groebner, &l), run(&b, Engine::Linalg, &l));
        prop_assert_eq!(g.verdict, a.verdict);
        prop_assert_eq!(g.stability, a.stability);
        prop_assert_eq!(g.per_power, a.per_power);
        prop_assert_eq!(g.witness.map(|w| (w.q, w.degree)), a.witness.map(|w| (w.q, w.degree)));
    }

    #[test]
    fn parallel_report_equals_sequential(seed in any::<u64>()) {
        let (_, b) = family_bundle(seed);
        let par = run(&b, Engine::Linalg, &Limits::default());
        let seq = run(&b, Engine::Linalg, &Limits::sequential());
        prop_assert_eq!(par, seq);
    }

    #[test]
    fn witnesses_sit_below_the_threshold(seed in any::<u64>()) {
        let (_, b) = family_bundle(seed);
        let r = run(&b, Engine::Linalg, &Limits::default());
        if let Some(w) = r.witness {
            prop_assert!(w.verified);
            prop_assert!(q(w.degree) < -q(w.q as i64) * b.slope());
        }
    }

    #[test]
    fn invariants_under_twist_and_pullback(seed in any::<u64>(), c in -4i64..=4, k in 1u32..=3) {
        let (_, b) = family_bundle(seed);
        let t = b.twist(c);
        prop_assert_eq!(t.rank(), b.rank());
        prop_assert_eq!(t.c1(), b.c1() + b.rank() * c);
        prop_assert_eq!(t.slope(), b.slope() + q(c));
        let p = b.pullback_powers(k).unwrap();
        prop_assert_eq!(p.rank(), b.rank());
        prop_assert_eq!(p.c1(), b.c1() * k as i64);
        prop_assert_eq!(p.slope(), b.slope() * q(k as i64));
        prop_assert_eq!(b.pullback_powers(1).unwrap(), b);
    }

    #[test]
    fn closure_threshold_scales_and_ignores_order(mut degs in prop::collection::vec(1i64..=6, 2..=7), k in 1i64..=4) {
        let tau = tau_of(&degs);
        let scaled: Vec<i64> = degs.iter().map(|d| d * k).collect();
        prop_assert_eq!(tau_of(&scaled), &tau * q(k));
        degs.reverse();
        prop_assert_eq!(tau_of(&degs), tau);
    }

    #[test]
    fn prime_reduction_never_loses_sections(seed in any::<u64>(), p in prop::sample::select(vec![2u64, 3, 5, 7, 101])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ring = plane();
        let b = random_presentation(&mut rng, &ring, 4, 1);
        let red = b.reduce_mod(PrimeField::new(p).unwrap()).unwrap();
        let l = Limits::default();
        for qq in 1..=2usize {
            let (pq, pp) = (exterior_power_matrix(&b, qq).unwrap(), exterior_power_matrix(&red, qq).unwrap());
            let mq = GradedMap::new(&pq.matrix, pq.source_module(), pq.target_module());
            let mp = GradedMap::new(&pp.matrix, pp.source_module(), pp.target_module());
            let top = floor_i64(&(-q(qq as i64) * b.slope())) + 1;
            for t in mq.source_floor()..=top {
                let dq = mq.kernel_dim(t, Engine::Linalg, &l).unwrap();
                let dp = mp.kernel_dim(t, Engine::Linalg, &l).unwrap();
                prop_assert!(dq <= dp, "q={} t={}: ℚ {} > 𝔽_{} {}", qq, t, dq, p, dp);
            }
        }
    }

    #[test]
    fn random_forms_agree_across_engines(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ring = Ring::projective(Rationals, 2);
        let gens = (0..3).map(|_| random_form(&mut rng, &ring, 2, 4)).collect();
        let Ok(spec) = SyzygyBundleSpec::new(gens, 0) else { return Ok(()) };
        let b = spec.to_bundle().unwrap();
        if b.validate(true, &Limits::default()).is_err() {
            return Ok(());
        }
        let l = Limits::default();
        let (g, a) = (run(&b, Engine::Groebner, &l), run(&b, Engine::Linalg, &l));
        prop_assert_eq!(g.per_power, a.per_power);
    }
}
