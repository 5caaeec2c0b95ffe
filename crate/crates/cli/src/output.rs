use asymscat::solver::{AmplitudeSet, ScatteringAmplitudes};
use asymscat::symmetry::{self, SymmetryCode, SymmetryReport};
use asymscat::Complex64;
use serde_json::{json, Map, Value};

pub fn complex(z: Complex64) -> Value {
    json!([z.re, z.im])
}

pub fn amplitudes(a: &AmplitudeSet) -> Value {
    let c = a.coefficients();
    json!({
        "t_left": complex(a.t_left),
        "t_right": complex(a.t_right),
        "r_left": complex(a.r_left),
        "r_right": complex(a.r_right),
        "abs2_t_left": c[0],
        "abs2_t_right": c[1],
        "abs2_r_left": c[2],
        "abs2_r_right": c[3],
    })
}

pub fn scattering(s: &ScatteringAmplitudes) -> Value {
    let mut out = Map::new();
    out.insert("k".into(), json!(s.k));
    out.insert("direct".into(), amplitudes(&s.direct));
    if let Some(h) = &s.hatted {
        out.insert("hatted".into(), amplitudes(h));
    }
    if let Some(r) = s.unitarity_residuals() {
        out.insert("unitarity_residuals".into(), json!(r));
    }
    Value::Object(out)
}

/// Residuals, verdicts, device classification and implied relations.
pub fn classification(report: &SymmetryReport) -> Value {
    let by_code = |f: &dyn Fn(SymmetryCode) -> Value| -> Map<String, Value> {
        SymmetryCode::ALL
            .into_iter()
            .map(|c| (c.roman().to_string(), f(c)))
            .collect()
    };
    let devices = symmetry::allowed_devices(report);
    let allowed: Map<String, Value> = devices
        .iter()
        .map(|d| (d.device.label().to_string(), json!(d.allowed())))
        .collect();
    let forbidden_by: Map<String, Value> = devices
        .iter()
        .map(|d| {
            let codes: Vec<&str> = d.forbidden_by.iter().map(|c| c.roman()).collect();
            (d.device.label().to_string(), json!(codes))
        })
        .collect();
    let relations: Vec<Value> = symmetry::predicted_amplitude_relations(report)
        .iter()
        .map(|r| json!({ "symmetry": r.source.roman(), "relation": r.relation.to_string() }))
        .collect();
    json!({
        "tolerance": report.tolerance,
        "residuals": by_code(&|c| json!(report.residual(c))),
        "verdicts": by_code(&|c| json!(report.holds(c))),
        "allowed_devices": allowed,
        "forbidden_by": forbidden_by,
        "predicted_relations": relations,
    })
}

pub fn pretty(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("json values serialize");
    s.push('\n');
    s
}
