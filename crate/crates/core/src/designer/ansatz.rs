//! Polynomial ansatz for the interior wavefunctions and kernel, and the
//! residuals of the equations it must satisfy.
//!
//! Inside `[-d, d]` both scattering states are quintics, `ψ = Σ c_n xⁿ`, and the
//! kernel is `V(x, y) = Σ v_ij xⁱ yʲ`. The stationary equation becomes a
//! polynomial identity, matched power by power; with moments
//! `M_j = ∫ yʲ ψ(y) dy` the coefficient of `x^p` is
//!
//! ```text
//! -½ (p+2)(p+1) c_{p+2} - (k²/2) c_p + Σ_j v_pj M_j = 0
//! ```
//!
//! bilinear in `(v, c)`. Continuity of `ψ, ψ'` with the exterior plane waves at
//! `±d` is linear in `c`, and the kernel must vanish on the edges `x = ±d`.

use num_complex::Complex64;

use super::Constraint;
use crate::solver::AmplitudeSet;

pub(crate) const DEGREE: usize = 5;
const NC: usize = DEGREE + 1;

/// Maps the real parameter vector onto wave and kernel coefficients.
#[derive(Debug, Clone)]
pub(crate) struct Layout {
    pub constraint: Constraint,
    /// Free `(i, j)` entries of the kernel.
    pub entries: Vec<(usize, usize)>,
}

impl Layout {
    pub fn new(constraint: Constraint) -> Self {
        let entries = match constraint {
            Constraint::None | Constraint::NonlocalPt => {
                (0..NC).flat_map(|i| (0..2).map(move |j| (i, j))).collect()
            }
            Constraint::SymmetryViii => (0..NC)
                .flat_map(|i| (i..NC).map(move |j| (i, j)))
                .filter(|&(i, j)| !(i >= 4 && j >= 4))
                .collect(),
        };
        Self { constraint, entries }
    }

    pub fn jmax(&self) -> usize {
        match self.constraint {
            Constraint::SymmetryViii => DEGREE,
            _ => 1,
        }
    }

    pub fn wave_len(&self) -> usize {
        4 * NC
    }

    pub fn kernel_len(&self) -> usize {
        match self.constraint {
            Constraint::NonlocalPt => self.entries.len(),
            _ => 2 * self.entries.len(),
        }
    }

    pub fn len(&self) -> usize {
        self.wave_len() + self.kernel_len()
    }

    pub fn waves(&self, z: &[f64]) -> ([Complex64; NC], [Complex64; NC]) {
        let left = std::array::from_fn(|n| Complex64::new(z[n], z[NC + n]));
        let right = std::array::from_fn(|n| Complex64::new(z[2 * NC + n], z[3 * NC + n]));
        (left, right)
    }

    /// Full `6 × 6` coefficient table, zero outside the layout.
    pub fn kernel(&self, z: &[f64]) -> [[Complex64; NC]; NC] {
        let p = &z[self.wave_len()..];
        let mut v = [[Complex64::new(0.0, 0.0); NC]; NC];
        let m = self.entries.len();
        for (e, &(i, j)) in self.entries.iter().enumerate() {
            match self.constraint {
                Constraint::None => v[i][j] = Complex64::new(p[e], p[m + e]),
                Constraint::SymmetryViii => {
                    let value = Complex64::new(p[e], p[m + e]);
                    v[i][j] = value;
                    v[j][i] = if (i + j) % 2 == 0 { value } else { -value };
                }
                Constraint::NonlocalPt => {
                    v[i][j] = if (i + j) % 2 == 0 {
                        Complex64::new(p[e], 0.0)
                    } else {
                        Complex64::new(0.0, p[e])
                    }
                }
            }
        }
        v
    }
}

pub(crate) struct Problem {
    pub layout: Layout,
    pub k: f64,
    pub d: f64,
    pub targets: AmplitudeSet,
}

/// Which blocks of equations to include.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Blocks {
    pub boundary: bool,
    pub interior: bool,
    pub edges: bool,
}

impl Blocks {
    pub const ALL: Blocks = Blocks {
        boundary: true,
        interior: true,
        edges: true,
    };
}

impl Problem {
    /// Real and imaginary parts of the selected residuals.
    pub fn residuals(&self, z: &[f64], blocks: Blocks) -> Vec<f64> {
        let mut out: Vec<Complex64> = Vec::with_capacity(40);
        let (cl, cr) = self.layout.waves(z);
        if blocks.boundary {
            self.boundary(&cl, &cr, &mut out);
        }
        if blocks.interior || blocks.edges {
            let v = self.layout.kernel(z);
            if blocks.interior {
                for c in [&cl, &cr] {
                    self.interior(&v, c, &mut out);
                }
            }
            if blocks.edges {
                for j in 0..=self.layout.jmax() {
                    for x in [-self.d, self.d] {
                        out.push((0..NC).map(|i| v[i][j] * x.powi(i as i32)).sum());
                    }
                }
            }
        }
        out.iter().flat_map(|z| [z.re, z.im]).collect()
    }

    fn boundary(&self, cl: &[Complex64; NC], cr: &[Complex64; NC], out: &mut Vec<Complex64>) {
        let (k, d) = (self.k, self.d);
        let ik = Complex64::new(0.0, k);
        let ep = Complex64::from_polar(1.0, k * d);
        let em = ep.conj();
        let t = &self.targets;
        out.push(poly(cl, -d) - (em + t.r_left * ep));
        out.push(dpoly(cl, -d) - ik * (em - t.r_left * ep));
        out.push(poly(cl, d) - t.t_left * ep);
        out.push(dpoly(cl, d) - ik * t.t_left * ep);
        out.push(poly(cr, -d) - t.t_right * ep);
        out.push(dpoly(cr, -d) + ik * t.t_right * ep);
        out.push(poly(cr, d) - (em + t.r_right * ep));
        out.push(dpoly(cr, d) - ik * (t.r_right * ep - em));
    }

    fn interior(&self, v: &[[Complex64; NC]; NC], c: &[Complex64; NC], out: &mut Vec<Complex64>) {
        let d = self.d;
        let moments: [Complex64; NC] = std::array::from_fn(|j| {
            (0..NC)
                .filter(|n| (j + n) % 2 == 0)
                .map(|n| c[n] * (2.0 * d.powi((j + n + 1) as i32) / (j + n + 1) as f64))
                .sum()
        });
        let half_k2 = 0.5 * self.k * self.k;
        for p in 0..NC {
            let kinetic = if p + 2 < NC {
                -0.5 * ((p + 2) * (p + 1)) as f64 * c[p + 2]
            } else {
                Complex64::new(0.0, 0.0)
            };
            let potential: Complex64 = (0..NC).map(|j| v[p][j] * moments[j]).sum();
            out.push(kinetic - half_k2 * c[p] + potential);
        }
    }
}

pub(crate) fn poly(c: &[Complex64], x: f64) -> Complex64 {
    c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * x + a)
}

fn dpoly(c: &[Complex64], x: f64) -> Complex64 {
    c.iter()
        .enumerate()
        .skip(1)
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, (n, &a)| acc * x + a * n as f64)
}
