use zlab_core::cache::ConstantsCache;
use zlab_core::fermat::{fermat_equivalence_check, fermat_solutions, Verdict};
use zlab_core::functionals::{functional_approximant, tau_for_height, FunctionalKind, FunctionalParam};
use zlab_core::ladders::{ladder_chain, partition_report, EULER_GAMMA};
use zlab_core::moments::second_moment_critical;
use zlab_core::{Lab, PrecisionConfig};

fn lab() -> Lab {
    Lab::new(PrecisionConfig::default()).unwrap()
}

#[test]
fn ladder_chain_telescopes() {
    let cfg = PrecisionConfig::default();
    let chain = ladder_chain(&cfg, 1000.0, 4).unwrap();
    let pts = chain.points();
    assert!(pts.windows(2).all(|w| w[1] > w[0]));
    let whole = second_moment_critical(&cfg, pts[0], pts[4]).unwrap().value;
    let pieces: f64 = chain.slice_integrals.iter().sum();
    assert!((whole - pieces).abs() <= 1e-9 * whole);
    for (r, &p) in chain.residuals.iter().zip(&pts) {
        assert!(r.abs() <= 1e-6 * p);
    }
    let expected: f64 = pts[..4].iter().map(|p| (1.0 - EULER_GAMMA) * p).sum();
    assert!((pieces - expected).abs() <= 1e-6 * expected);
    let rep = partition_report(&chain).unwrap();
    // slice integrals are proportional to their base points
    for (r, w) in rep.integral_ratios.iter().zip(pts.windows(2)) {
        assert!((r - w[1] / w[0]).abs() <= 1e-9 * r);
    }
}

#[test]
fn scaling_identity_at_low_height() {
    let lab = lab();
    let p = FunctionalParam::Sigma(1.0);
    for kind in [FunctionalKind::A, FunctionalKind::C] {
        for (x, tau) in [(1.3, 40.0), (2.5, 25.0)] {
            let lhs = functional_approximant(&lab, kind, x, &p, tau).unwrap().value;
            let rhs = functional_approximant(&lab, kind, 1.0, &p, x * tau).unwrap().value;
            assert!((lhs - x * rhs).abs() <= 1e-12 * lhs.abs(), "{kind}: {lhs} vs {}", x * rhs);
        }
    }
}

#[test]
fn fermat_witness_small_heights() {
    let lab = lab();
    let p = FunctionalParam::Sigma(1.0);
    let taus: Vec<f64> = [300.0, 600.0]
        .iter()
        .map(|&t| tau_for_height(&lab, FunctionalKind::A, 2.0, &p, t).unwrap())
        .collect();
    let w = fermat_equivalence_check(&lab, 1, 1, 1, 3, FunctionalKind::A, &p, &taus).unwrap();
    assert!(!w.is_one_exact);
    assert_eq!((w.numerator.as_str(), w.denominator.as_str()), ("2", "1"));
    assert_eq!(w.approximants.len(), 2);
    assert!((w.approximants[0].t - 300.0).abs() < 1e-9);
    assert_ne!(w.verdict, Verdict::Contradiction);
    assert!(fermat_equivalence_check(&lab, 3, 4, 5, 2, FunctionalKind::A, &p, &taus).is_err());
}

#[test]
fn no_fermat_solutions_in_the_box() {
    assert!(fermat_solutions(50, 12).is_empty());
}

#[test]
fn cbar_is_persisted_and_reloaded() {
    let dir = tempfile::tempdir().unwrap();
    let lab = lab().with_cache(ConstantsCache::open(dir.path()).unwrap());
    let est = lab.estimate_cbar(1, 400.0, 100.0).unwrap();
    assert!(est.cbar > 0.0);
    let reopened = ConstantsCache::open(dir.path()).unwrap();
    let entry = reopened.get(&est.cache_key()).unwrap();
    assert_eq!(entry.cbar, est.cbar);
    let fresh = Lab::new(PrecisionConfig::default()).unwrap().with_cache(reopened);
    let (key, e) = fresh.cached_cbar(1, 400.0, 100.0).unwrap();
    assert_eq!((key, e.cbar), (est.cache_key(), est.cbar));
}

#[test]
fn results_do_not_depend_on_thread_count() {
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| {
            let lab = lab();
            let a = functional_approximant(&lab, FunctionalKind::A, 1.0, &FunctionalParam::Sigma(1.0), 8.0).unwrap();
            let m = lab.s1_moment(1, 200.0, 260.0).unwrap();
            (a.value.to_bits(), m.value.to_bits())
        })
    };
    assert_eq!(run(1), run(3));
}
