mod common;

use common::dft::{centered_dft, max_abs_diff, plain_dft};
use hologen_core::image::ComplexField;
use hologen_core::propagation::{
    fft2, fftshift, ifftshift, Direction, Fft2, PropagationSpec, Propagator, ReplayUpdater,
};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_data(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect()
}

fn random_field(seed: u64, w: usize, h: usize) -> ComplexField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    ComplexField::new(w, h, random_data(&mut rng, w * h)).unwrap()
}

fn energy(d: &[Complex64]) -> f64 {
    d.iter().map(|z| z.norm_sqr()).sum()
}

#[test]
fn centered_fft_matches_direct_sum() {
    for (i, &(w, h)) in [(1, 1), (2, 3), (5, 4), (8, 8), (7, 9), (16, 12), (32, 32)].iter().enumerate() {
        let f = random_field(i as u64, w, h);
        let fast = fft2(&f, Direction::Forward).unwrap();
        let slow = centered_dft(f.data(), w, h);
        assert!(max_abs_diff(fast.data(), &slow) < 1e-12, "{w}x{h}");
    }
}

#[test]
fn uncentered_plan_matches_direct_sum() {
    let f = random_field(99, 12, 10);
    let mut d = f.data().to_vec();
    Fft2::new(12, 10).process(&mut d, Direction::Forward);
    assert!(max_abs_diff(&d, &plain_dft(f.data(), 12, 10)) < 1e-12);
}

#[test]
fn impulse_at_origin_is_flat() {
    let mut f = ComplexField::zeros(8, 6);
    f.set(0, 0, Complex64::new(1.0, 0.0));
    let s = fft2(&f, Direction::Forward).unwrap();
    let v = 1.0 / 48f64.sqrt();
    assert!(s.data().iter().all(|z| (z - Complex64::new(v, 0.0)).norm() < 1e-15));
}

#[test]
fn constant_field_concentrates_at_centre() {
    let f = ComplexField::filled(6, 5, Complex64::new(1.0, 0.0));
    let s = fft2(&f, Direction::Forward).unwrap();
    assert!((s.get(3, 2) - Complex64::new(30f64.sqrt(), 0.0)).norm() < 1e-12);
    let rest: f64 = s.data().iter().map(|z| z.norm_sqr()).sum::<f64>() - s.get(3, 2).norm_sqr();
    assert!(rest < 1e-20);
}

#[test]
fn parseval_at_256() {
    let f = random_field(7, 256, 256);
    let s = fft2(&f, Direction::Forward).unwrap();
    let (a, b) = (energy(f.data()), energy(s.data()));
    assert!(((a - b) / a).abs() < 1e-10);
}

#[test]
fn fresnel_round_trip_and_energy() {
    let spec = PropagationSpec::fresnel(633e-9, 0.2, 10e-6, 12e-6);
    let p = Propagator::new(&spec, 20, 14).unwrap();
    let f = random_field(3, 20, 14);
    let r = p.propagate(&f).unwrap();
    assert!(((energy(r.data()) - energy(f.data())) / energy(f.data())).abs() < 1e-12);
    assert!(max_abs_diff(p.backpropagate(&r).unwrap().data(), f.data()) < 1e-12);
}

#[test]
fn fresnel_equals_chirp_then_dft() {
    let (w, h) = (9, 6);
    let spec = PropagationSpec::fresnel(500e-9, 0.1, 8e-6, 8e-6);
    let f = random_field(4, w, h);
    let k = std::f64::consts::PI / (500e-9 * 0.1);
    let chirped: Vec<Complex64> = f
        .data()
        .iter()
        .enumerate()
        .map(|(i, z)| {
            let (m, n) = ((i / w) as f64, (i % w) as f64);
            let r2 = ((m - h as f64 / 2.0) * 8e-6).powi(2) + ((n - w as f64 / 2.0) * 8e-6).powi(2);
            z * Complex64::from_polar(1.0, k * r2)
        })
        .collect();
    let expect = centered_dft(&chirped, w, h);
    let got = Propagator::new(&spec, w, h).unwrap().propagate(&f).unwrap();
    assert!(max_abs_diff(got.data(), &expect) < 1e-12);
}

#[test]
fn incremental_updates_track_full_transform() {
    let (w, h) = (64, 64);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut holo = random_data(&mut rng, w * h);
    let plan = Fft2::new(w, h);
    let mut replay = holo.clone();
    plan.process(&mut replay, Direction::Forward);
    let upd = ReplayUpdater::new(w, h);
    for _ in 0..1000 {
        let (m, n) = (rng.gen_range(0..h), rng.gen_range(0..w));
        let new = Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU));
        let dh = new - holo[m * w + n];
        holo[m * w + n] = new;
        upd.apply(&mut replay, m, n, dh).unwrap();
    }
    let mut full = holo.clone();
    plan.process(&mut full, Direction::Forward);
    assert!(max_abs_diff(&replay, &full) < 1e-9);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn inverse_undoes_forward(w in 1usize..24, h in 1usize..24, seed in any::<u64>()) {
        let f = random_field(seed, w, h);
        let back = fft2(&fft2(&f, Direction::Forward).unwrap(), Direction::Inverse).unwrap();
        prop_assert!(max_abs_diff(back.data(), f.data()) < 1e-12);
    }

    #[test]
    fn parseval(w in 1usize..64, h in 1usize..64, seed in any::<u64>()) {
        let f = random_field(seed, w, h);
        let s = fft2(&f, Direction::Forward).unwrap();
        let (a, b) = (energy(f.data()), energy(s.data()));
        prop_assert!(((a - b) / a).abs() < 1e-10);
    }

    #[test]
    fn linearity(w in 1usize..16, h in 1usize..16, seed in any::<u64>(), re in -3.0f64..3.0, im in -3.0f64..3.0) {
        let a = random_field(seed, w, h);
        let b = random_field(seed.wrapping_add(1), w, h);
        let c = Complex64::new(re, im);
        let mix: Vec<Complex64> = a.data().iter().zip(b.data()).map(|(x, y)| c * x + y).collect();
        let lhs = fft2(&ComplexField::new(w, h, mix).unwrap(), Direction::Forward).unwrap();
        let fa = fft2(&a, Direction::Forward).unwrap();
        let fb = fft2(&b, Direction::Forward).unwrap();
        let rhs: Vec<Complex64> = fa.data().iter().zip(fb.data()).map(|(x, y)| c * x + y).collect();
        prop_assert!(max_abs_diff(lhs.data(), &rhs) < 1e-11);
    }

    #[test]
    fn shifts_are_inverse(w in 1usize..20, h in 1usize..20, seed in any::<u64>()) {
        let f = random_field(seed, w, h);
        prop_assert_eq!(ifftshift(&fftshift(&f)), f.clone());
        prop_assert_eq!(fftshift(&ifftshift(&f)), f);
    }
}
