use std::io::Write;
use std::path::Path;

use asymscat::born::{self, BornError};
use asymscat::designer::{self, Constraint, DesignError, DesignOptions, DeviceSpec, VerifyError};
use asymscat::potentials::{json as kernel_json, KernelError, PotentialKernel};
use asymscat::solver::{self, SolverConfig, SolverError};
use asymscat::symmetry::{self, DeviceCode, SymmetryCode};
use serde_json::json;

use crate::config::parse_range;
use crate::manifest::{RunManifest, SolverSettings};
use crate::output;
use crate::{Cli, CliError, Command};

impl From<KernelError> for CliError {
    fn from(e: KernelError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<SolverError> for CliError {
    fn from(e: SolverError) -> Self {
        match e {
            SolverError::Singular { .. } => CliError::Numerical(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<DesignError> for CliError {
    fn from(e: DesignError) -> Self {
        match e {
            DesignError::NoConvergence { .. } => CliError::Numerical(e.to_string()),
            DesignError::Verification { .. } => CliError::Verification(e.to_string()),
            DesignError::Solver(s) => s.into(),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::Solver(s) => s.into(),
            _ => CliError::Verification(e.to_string()),
        }
    }
}

impl From<BornError> for CliError {
    fn from(e: BornError) -> Self {
        match e {
            BornError::Bracket { .. } => CliError::Numerical(e.to_string()),
            BornError::Solver(s) => s.into(),
            _ => CliError::Input(e.to_string()),
        }
    }
}

/// Writes `bytes` to `path`, or to stdout when `path` is `None`.
fn emit(path: Option<&Path>, bytes: &[u8], manifest: &mut RunManifest) -> Result<(), CliError> {
    match path {
        Some(p) => {
            std::fs::write(p, bytes).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?;
            manifest.output(&p.display().to_string(), bytes);
        }
        None => {
            std::io::stdout()
                .write_all(bytes)
                .map_err(|e| CliError::Input(format!("stdout: {e}")))?;
            manifest.output("stdout", bytes);
        }
    }
    Ok(())
}

fn load(path: &Path, manifest: &mut RunManifest) -> Result<PotentialKernel, CliError> {
    manifest.input(path)?;
    Ok(kernel_json::read_kernel(path)?)
}

fn parse_device(text: &str) -> Result<DeviceCode, CliError> {
    let device = match text.to_ascii_lowercase().as_str() {
        "tra" => DeviceCode::OneWayMirror,
        "tr" => DeviceCode::OneWayBarrier,
        "ta" => DeviceCode::OneWayFilter,
        "trr" => DeviceCode::MirrorOneWayTransmitter,
        "ra" => DeviceCode::OneWayReflector,
        "trt" => DeviceCode::TransparentOneWayReflector,
        other => other.parse().map_err(|e: symmetry::ParseDeviceError| CliError::Input(e.to_string()))?,
    };
    Ok(device)
}

pub fn run(cli: Cli, args: Vec<String>) -> Result<(), CliError> {
    let name = match &cli.command {
        Command::Solve { .. } => "solve",
        Command::Sweep { .. } => "sweep",
        Command::Classify { .. } => "classify",
        Command::Design { .. } => "design",
        Command::BornDesign { .. } => "born-design",
        Command::Verify { .. } => "verify",
    };
    let mut manifest = RunManifest::new(name, args);
    match cli.command {
        Command::Solve { kernel, k, adjoint, out, solver } => {
            let (config, _) = solver.resolve(SolverConfig::default())?;
            manifest.solver = Some(SolverSettings::from(&config));
            let kernel = load(&kernel, &mut manifest)?;
            let amps = solver::scatter_all(&kernel, k, &config, adjoint)?;
            emit(out.as_deref(), output::pretty(&output::scattering(&amps)).as_bytes(), &mut manifest)?;
        }
        Command::Sweep { kernel, k_range, out, solver } => {
            let (config, _) = solver.resolve(SolverConfig::default())?;
            manifest.solver = Some(SolverSettings::from(&config));
            let kernel = load(&kernel, &mut manifest)?;
            let table = solver::k_sweep(&kernel, &parse_range(&k_range)?, &config)?;
            emit(out.as_deref(), table.to_csv().as_bytes(), &mut manifest)?;
        }
        Command::Classify { kernel, symmetry_tolerance, out } => {
            let kernel = load(&kernel, &mut manifest)?;
            let report = symmetry::check_symmetries(&kernel, symmetry_tolerance);
            emit(out.as_deref(), output::pretty(&output::classification(&report)).as_bytes(), &mut manifest)?;
        }
        Command::Design { device, k0, constraint, seed, out, result, sweep, sweep_out, solver } => {
            let (config, file_seed) = solver.resolve(DesignOptions::default().verify_config)?;
            let seed = seed.or(file_seed).unwrap_or(0);
            manifest.seed = Some(seed);
            manifest.solver = Some(SolverSettings::from(&config));
            let constraint: Constraint = constraint.parse()?;
            let spec = DeviceSpec::new(parse_device(&device)?)?
                .with_k0(k0)
                .with_constraint(constraint);
            let options = DesignOptions { seed, verify_config: config, ..DesignOptions::default() };
            let design = designer::design_device(&spec, &options)?;
            let table = designer::verify_design(&design, &parse_range(&sweep)?, &config, options.verify_tolerance)?;

            let kernel = PotentialKernel::Polynomial(design.kernel.clone());
            let mut kernel_text = kernel_json::to_json(&kernel);
            kernel_text.push('\n');
            emit(Some(&out), kernel_text.as_bytes(), &mut manifest)?;
            if let Some(path) = &sweep_out {
                emit(Some(path), table.to_csv().as_bytes(), &mut manifest)?;
            }
            let kernel_value: serde_json::Value =
                serde_json::from_str(&kernel_text).expect("kernel JSON re-parses");
            let summary = json!({
                "device": spec.device.map(|d| d.label()),
                "constraint": constraint.to_string(),
                "k0": spec.k0,
                "seed": seed,
                "targets": output::amplitudes(&spec.targets),
                "kernel": kernel_value,
                "wave_left": design.wave_left.iter().map(|&z| output::complex(z)).collect::<Vec<_>>(),
                "wave_right": design.wave_right.iter().map(|&z| output::complex(z)).collect::<Vec<_>>(),
                "verification": output::scattering(&design.verification),
                "residual": design.residual,
                "equation_residual": design.equation_residual,
                "converged_restarts": design.converged_restarts,
            });
            emit(result.as_deref(), output::pretty(&summary).as_bytes(), &mut manifest)?;
        }
        Command::BornDesign { alpha, epsilon, tune, kref, target, sweep, out, sweep_out, solver } => {
            let (config, _) = solver.resolve(born::reflector_config())?;
            manifest.solver = Some(SolverSettings::from(&config));
            let (alpha, tuned) = match (tune, alpha) {
                (true, _) => {
                    let t = born::tune_alpha(epsilon, kref, target, &config)?;
                    (t.alpha, Some(t))
                }
                (false, Some(a)) => (a, None),
                (false, None) => return Err(CliError::Input("either --alpha or --tune is required".into())),
            };
            let potential = born::design_broadband_reflector(alpha, epsilon)?;
            let mut text = kernel_json::to_json(&PotentialKernel::InverseSquare(potential));
            text.push('\n');
            emit(Some(&out), text.as_bytes(), &mut manifest)?;
            if let Some(range) = &sweep {
                let table = solver::k_sweep(&PotentialKernel::InverseSquare(potential), &parse_range(range)?, &config)?;
                emit(sweep_out.as_deref(), table.to_csv().as_bytes(), &mut manifest)?;
            }
            let born_ref = born::born_reflections(&potential, kref)?;
            let summary = json!({
                "alpha": alpha,
                "alpha_times_4pi": alpha * 4.0 * std::f64::consts::PI,
                "epsilon": epsilon,
                "window": potential.half_width(),
                "kref": kref,
                "tuned": tuned.as_ref().map(|t| json!({ "target": target, "abs2_r_left": t.abs2_r_left, "evaluations": t.trace.len() })),
                "born_at_kref": {
                    "r_left": output::complex(born_ref.r_left),
                    "r_right": output::complex(born_ref.r_right),
                    "abs2_t": born_ref.t_abs2,
                },
            });
            // The summary goes to stderr when the sweep already owns stdout.
            let summary = output::pretty(&summary);
            if sweep.is_some() && sweep_out.is_none() {
                eprint!("{summary}");
            } else {
                emit(None, summary.as_bytes(), &mut manifest)?;
            }
        }
        Command::Verify { kernel, k_range, claim, symmetry_tolerance, check_tolerance, out, solver } => {
            let (config, _) = solver.resolve(SolverConfig::default())?;
            manifest.solver = Some(SolverSettings::from(&config));
            let claims = claim
                .iter()
                .map(|c| c.parse::<SymmetryCode>().map_err(|e| CliError::Input(e.to_string())))
                .collect::<Result<Vec<_>, _>>()?;
            let kernel = load(&kernel, &mut manifest)?;
            let (report, failures) = verify(&kernel, &parse_range(&k_range)?, &claims, symmetry_tolerance, check_tolerance, &config)?;
            emit(out.as_deref(), output::pretty(&report).as_bytes(), &mut manifest)?;
            write_manifest(cli.manifest.as_deref(), &manifest)?;
            if !failures.is_empty() {
                return Err(CliError::Verification(failures.join("; ")));
            }
            return Ok(());
        }
    }
    write_manifest(cli.manifest.as_deref(), &manifest)
}

fn write_manifest(path: Option<&Path>, manifest: &RunManifest) -> Result<(), CliError> {
    if let Some(p) = path {
        let mut text = manifest.to_json();
        text.push('\n');
        std::fs::write(p, text).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?;
    }
    Ok(())
}

fn verify(
    kernel: &PotentialKernel,
    ks: &[f64],
    claims: &[SymmetryCode],
    symmetry_tolerance: f64,
    tolerance: f64,
    config: &SolverConfig,
) -> Result<(serde_json::Value, Vec<String>), CliError> {
    let report = symmetry::check_symmetries(kernel, symmetry_tolerance);
    let mut failures = Vec::new();
    for &c in claims {
        if !report.holds(c) {
            failures.push(format!("claimed symmetry {c} fails (residual {:e})", report.residual(c)));
        }
    }
    let relations = symmetry::predicted_amplitude_relations(&report);
    let sampled = kernel.discretize(config.n_grid)?;
    let mut rows = Vec::new();
    for &k in ks {
        let amps = match solver::scatter_sampled(&sampled, k, config, true) {
            Ok(a) => a,
            Err(e @ SolverError::Singular { .. }) => {
                failures.push(format!("k = {k}: {e}"));
                rows.push(json!({ "k": k, "error": e.to_string() }));
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        let unitarity = amps.unitarity_residuals().expect("adjoint was solved");
        for (i, r) in unitarity.iter().enumerate() {
            if *r > tolerance {
                failures.push(format!("k = {k}: unitarity relation {} defect {r:e}", i + 1));
            }
        }
        let checks: Vec<serde_json::Value> = relations
            .iter()
            .map(|rel| {
                let residual = rel.relation.residual(&amps).expect("hatted amplitudes present");
                let ok = residual <= tolerance;
                if !ok {
                    failures.push(format!("k = {k}: {rel} defect {residual:e}"));
                }
                json!({ "symmetry": rel.source.roman(), "relation": rel.relation.to_string(), "residual": residual, "ok": ok })
            })
            .collect();
        rows.push(json!({
            "k": k,
            "amplitudes": output::scattering(&amps),
            "relations": checks,
        }));
    }
    let value = json!({
        "classification": output::classification(&report),
        "claims": claims.iter().map(|c| json!({ "symmetry": c.roman(), "holds": report.holds(*c) })).collect::<Vec<_>>(),
        "check_tolerance": tolerance,
        "rows": rows,
        "passed": failures.is_empty(),
        "failures": failures,
    });
    Ok((value, failures))
}
