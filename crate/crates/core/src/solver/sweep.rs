use std::fmt::Write as _;

use super::{amplitudes_sampled, AmplitudeSet, SolverConfig, SolverError};
use crate::potentials::PotentialKernel;

pub const CSV_HEADER: &str = "k,abs2_Tl,abs2_Tr,abs2_Rl,abs2_Rr,re_Tl,im_Tl,re_Tr,im_Tr,re_Rl,im_Rl,re_Rr,im_Rr,error";

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub k: f64,
    /// A failed row keeps the solver's message; the sweep carries on.
    pub amplitudes: Result<AmplitudeSet, String>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SweepTable {
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    pub fn failures(&self) -> usize {
        self.rows.iter().filter(|r| r.amplitudes.is_err()).count()
    }

    /// CSV with one line per wavenumber in ascending order. Failed rows leave
    /// the numeric columns empty and fill `error`.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(64 * (self.rows.len() + 1));
        out.push_str(CSV_HEADER);
        out.push('\n');
        for row in &self.rows {
            write!(out, "{:.16e}", row.k).unwrap();
            match &row.amplitudes {
                Ok(a) => {
                    for c in a.coefficients() {
                        write!(out, ",{c:.16e}").unwrap();
                    }
                    for z in a.as_array() {
                        write!(out, ",{:.16e},{:.16e}", z.re, z.im).unwrap();
                    }
                    out.push_str(",\n");
                }
                Err(e) => {
                    out.push_str(&",".repeat(12));
                    // Commas and quotes inside the message would break the column.
                    writeln!(out, ",\"{}\"", e.replace('"', "'")).unwrap();
                }
            }
        }
        out
    }
}

/// Amplitudes on every wavenumber of `ks`, sorted ascending. The kernel is
/// tabulated once; each row is solved independently.
pub fn k_sweep(
    kernel: &PotentialKernel,
    ks: &[f64],
    config: &SolverConfig,
) -> Result<SweepTable, SolverError> {
    config.validate()?;
    let sampled = kernel.discretize(config.n_grid)?;
    let mut ks = ks.to_vec();
    ks.sort_by(f64::total_cmp);
    let rows = ks
        .into_iter()
        .map(|k| SweepRow {
            k,
            amplitudes: amplitudes_sampled(&sampled, k, config).map_err(|e| e.to_string()),
        })
        .collect();
    Ok(SweepTable { rows })
}
