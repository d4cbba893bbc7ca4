//! Checks against the frozen mpmath values in tests/oracle/oracle_values.txt.

use std::collections::HashMap;

use num_complex::Complex64;
use zlab_core::gram::{gram_point, gram_range};
use zlab_core::sums::{fourth_power_sum, titchmarsh_sum};
use zlab_core::zeta::{hardy_z, s1_of_t, s_of_t, theta, theta_deriv, zeta, zeta_real, ZeroTable};
use zlab_core::PrecisionConfig;

struct Oracle {
    scalars: HashMap<String, f64>,
    gram_z: Vec<(u64, f64, f64)>,
}

fn oracle() -> Oracle {
    let text = include_str!("oracle/oracle_values.txt");
    let mut scalars = HashMap::new();
    let mut gram_z = Vec::new();
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        if let Some(rest) = line.strip_prefix("gram_z ") {
            let f: Vec<&str> = rest.split_whitespace().collect();
            gram_z.push((f[0].parse().unwrap(), f[1].parse().unwrap(), f[2].parse().unwrap()));
        } else {
            let (k, v) = line.split_once(" = ").expect("key = value");
            scalars.insert(k.to_string(), v.parse().unwrap());
        }
    }
    Oracle { scalars, gram_z }
}

impl Oracle {
    fn get(&self, key: &str) -> f64 {
        self.scalars[key]
    }
}

fn cfg() -> PrecisionConfig {
    PrecisionConfig::default()
}

#[test]
fn theta_and_derivative() {
    let o = oracle();
    assert!((theta(100.0).unwrap() - o.get("theta_100")).abs() < 1e-12);
    assert!((theta_deriv(100.0).unwrap() - o.get("theta_deriv_100")).abs() < 1e-12);
}

#[test]
fn zeta_values() {
    let o = oracle();
    assert!((zeta_real(&cfg(), 0.5).unwrap() - o.get("zeta_half")).abs() < 1e-12);
    let z = zeta(&cfg(), Complex64::new(0.75, 1000.0)).unwrap();
    assert!((z.re - o.get("zeta_075_1000_re")).abs() < 1e-10);
    assert!((z.im - o.get("zeta_075_1000_im")).abs() < 1e-10);
    for t in [250, 1000, 5000, 20000] {
        let want = o.get(&format!("z_{t}"));
        assert!((hardy_z(&cfg(), t as f64).unwrap() - want).abs() < 1e-10, "t = {t}");
    }
}

#[test]
fn first_gram_points() {
    let o = oracle();
    assert!((gram_point(&cfg(), 1).unwrap().t - o.get("gram_1")).abs() < 1e-10);
    assert!((gram_point(&cfg(), 2).unwrap().t - o.get("gram_2")).abs() < 1e-10);
}

#[test]
fn z_at_random_gram_points() {
    let o = oracle();
    assert_eq!(o.gram_z.len(), 20);
    for &(nu, t, z) in &o.gram_z {
        let g = gram_point(&cfg(), nu).unwrap();
        assert!((g.t - t).abs() < 1e-9, "nu = {nu}: {} vs {t}", g.t);
        assert!((hardy_z(&cfg(), g.t).unwrap() - z).abs() < 1e-9, "nu = {nu}");
    }
}

#[test]
fn zero_counts() {
    let o = oracle();
    for t in [100, 1000, 10000] {
        let want = o.get(&format!("n_zeros_{t}")) as u64;
        assert_eq!(s_of_t(&cfg(), t as f64).unwrap().zero_count, want, "N({t})");
    }
    let table = ZeroTable::build(&cfg(), 1000.0).unwrap();
    assert_eq!(table.count(1000.0) as u64, o.get("n_zeros_1000") as u64);
    assert!((table.zeros()[0] - o.get("first_zero")).abs() < 1e-11);
}

#[test]
fn s1_values() {
    let o = oracle();
    assert!((s1_of_t(&cfg(), 100.0).unwrap() - o.get("s1_100")).abs() < 1e-9);
    assert!((s1_of_t(&cfg(), 1000.0).unwrap() - o.get("s1_1000")).abs() < 1e-8);
}

#[test]
fn gram_sums_on_1000_2000() {
    let o = oracle();
    let r = gram_range(&cfg(), 1000.0, 2000.0).unwrap();
    assert_eq!(r.points[0].nu, o.get("gram_first_nu_1000") as u64);
    assert_eq!(r.count(), o.get("gram_count_1000_2000") as usize);
    let pair = titchmarsh_sum(&cfg(), 1000.0, 2000.0).unwrap();
    let want = o.get("gram_pair_1000_2000");
    assert!((pair.value - want).abs() < 1e-9 * want, "{} vs {want}", pair.value);
    let fourth = fourth_power_sum(&cfg(), 1000.0, 2000.0).unwrap();
    let want = o.get("gram_fourth_1000_2000");
    assert!((fourth.value - want).abs() < 1e-9 * want, "{} vs {want}", fourth.value);
}
