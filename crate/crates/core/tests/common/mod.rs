#![allow(dead_code)]

use asymscat::{Complex64, Grid, SampledKernel};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Smooth complex nonlocal kernel: a random combination of `xᵖ yᵠ` terms,
/// `p, q ≤ 3`, under a Gaussian envelope, scaled to `sup |V| ≈ strength`.
pub fn smooth_kernel(rng: &mut ChaCha8Rng, n: usize, strength: f64) -> SampledKernel {
    let c: Vec<Complex64> = (0..16)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let width = rng.gen_range(0.4..0.9);
    let grid = Grid::uniform(1.0, n).unwrap();
    let raw = SampledKernel::nonlocal_from_fn(grid, |x, y| {
        let mut v = Complex64::new(0.0, 0.0);
        for p in 0..4 {
            for q in 0..4 {
                v += c[4 * p + q] * x.powi(p as i32) * y.powi(q as i32);
            }
        }
        v * (-(x * x + y * y) / (2.0 * width * width)).exp()
    });
    let scale = strength / raw.sup_norm();
    raw.scaled(Complex64::new(scale, 0.0))
}

/// Smooth complex local profile.
pub fn smooth_local(rng: &mut ChaCha8Rng, n: usize, strength: f64) -> SampledKernel {
    let c: Vec<Complex64> = (0..4)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let grid = Grid::uniform(1.0, n).unwrap();
    let raw = SampledKernel::local_from_fn(grid, |x| {
        (c[0] + c[1] * x + c[2] * x * x + c[3] * x * x * x) * (-2.0 * x * x).exp()
    });
    let scale = strength / raw.sup_norm();
    raw.scaled(Complex64::new(scale, 0.0))
}

/// Two-interface amplitudes `(T, R)` of the real well `V = v` on `[-1, 1]`.
pub fn square_well(k: f64, v: f64) -> (Complex64, Complex64) {
    let q = Complex64::new(k * k - 2.0 * v, 0.0).sqrt();
    let kc = Complex64::new(k, 0.0);
    let i = Complex64::i();
    let (c, s) = ((2.0 * q).cos(), (2.0 * q).sin());
    let den = c - i * (kc * kc + q * q) / (2.0 * kc * q) * s;
    let phase = (-2.0 * i * kc).exp();
    let t = phase / den;
    let r = i * (q * q - kc * kc) / (2.0 * kc * q) * s * phase / den;
    (t, r)
}
