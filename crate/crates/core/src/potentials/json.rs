//! JSON kernel files.
//!
//! ```text
//! { "type": "sampled",       "d": 1, "n": 3, "is_local": false, "values": [[re, im], ...] }
//! { "type": "polynomial",    "d": 1, "imax": 5, "jmax": 1, "coeffs": [[re, im], ...] }
//! { "type": "inverse_square","d": 1, "alpha": 0.0975, "epsilon": 0.0001 }
//! ```
//!
//! `values` and `coeffs` are row-major and expressed in units of
//! `V0 = ħ²/(2md³)`; `alpha` is in units of `ħ²/m`. A sampled kernel on a
//! sinh-graded grid carries an extra `"grid_scale"`. Floats are printed in
//! shortest round-trip form, so write → read is lossless.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{KernelError, PolynomialKernel, PotentialKernel, RegularizedInverseSquare, SampledKernel};
use crate::grid::{Grid, GridKind};
use crate::units::{from_v0, to_v0};

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
enum KernelFile {
    Sampled {
        d: f64,
        n: usize,
        is_local: bool,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        grid_scale: Option<f64>,
        values: Vec<[f64; 2]>,
    },
    Polynomial {
        d: f64,
        imax: usize,
        jmax: usize,
        coeffs: Vec<[f64; 2]>,
    },
    InverseSquare {
        d: f64,
        alpha: f64,
        epsilon: f64,
    },
}

fn encode(values: &[Complex64]) -> Vec<[f64; 2]> {
    values.iter().map(|v| [to_v0(v.re), to_v0(v.im)]).collect()
}

fn decode(values: &[[f64; 2]]) -> Vec<Complex64> {
    values
        .iter()
        .map(|[re, im]| Complex64::new(from_v0(*re), from_v0(*im)))
        .collect()
}

fn with_field(field: &'static str) -> impl Fn(KernelError) -> KernelError {
    move |e| match e {
        KernelError::Field { .. } => e,
        other => KernelError::Field {
            field,
            message: other.to_string(),
        },
    }
}

pub fn to_json(kernel: &PotentialKernel) -> String {
    let file = match kernel {
        PotentialKernel::Sampled(k) => KernelFile::Sampled {
            d: k.grid().half_width(),
            n: k.len(),
            is_local: k.is_local(),
            grid_scale: match k.grid().kind() {
                GridKind::Uniform => None,
                GridKind::Sinh { scale } => Some(scale),
            },
            values: encode(k.values()),
        },
        PotentialKernel::Polynomial(k) => KernelFile::Polynomial {
            d: k.half_width(),
            imax: k.imax(),
            jmax: k.jmax(),
            coeffs: encode(k.coeffs()),
        },
        PotentialKernel::InverseSquare(k) => KernelFile::InverseSquare {
            d: k.half_width(),
            alpha: k.alpha(),
            epsilon: k.epsilon(),
        },
    };
    serde_json::to_string_pretty(&file).expect("kernel files always serialize")
}

pub fn from_json(text: &str) -> Result<PotentialKernel, KernelError> {
    let file: KernelFile =
        serde_json::from_str(text).map_err(|e| KernelError::Json(e.to_string()))?;
    match file {
        KernelFile::Sampled {
            d,
            n,
            is_local,
            grid_scale,
            values,
        } => {
            let kind = match grid_scale {
                None => GridKind::Uniform,
                Some(scale) => GridKind::Sinh { scale },
            };
            let grid = Grid::new(d, n, kind).map_err(|e| with_field("n")(e.into()))?;
            let values = decode(&values);
            let kernel = if is_local {
                SampledKernel::local(grid, values)
            } else {
                SampledKernel::nonlocal(grid, values)
            }
            .map_err(with_field("values"))?;
            Ok(kernel.into())
        }
        KernelFile::Polynomial {
            d,
            imax,
            jmax,
            coeffs,
        } => Ok(PolynomialKernel::new(d, imax, jmax, decode(&coeffs))
            .map_err(with_field("coeffs"))?
            .into()),
        KernelFile::InverseSquare { d, alpha, epsilon } => {
            Ok(RegularizedInverseSquare::with_support(alpha, epsilon, d)
                .map_err(with_field("epsilon"))?
                .into())
        }
    }
}

pub fn read_kernel(path: &Path) -> Result<PotentialKernel, KernelError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| KernelError::Json(format!("{}: {e}", path.display())))?;
    from_json(&text)
}
