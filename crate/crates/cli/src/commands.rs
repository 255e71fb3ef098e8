//! Command bodies. Each reads its inputs, runs the library and returns the
//! report; only input problems surface as [`InputError`].

use std::path::Path;

use heisenberg_ext::classification::{
    catalog_report, invariant_vector, refute_isomorphism, verify_certificate, CatalogChoices, Certificate,
};
use heisenberg_ext::extension::{g_inverse, g_mul, g_to_matrix, validate_params};
use heisenberg_ext::repr::checks::run_suite;
use heisenberg_ext::repr::{QuadConfig, SampleCheckConfig};
use heisenberg_ext::{DilationParams, Error, Exec, GroupElement, RealMatrix, Tolerances};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use crate::{InputError, Outcome};

fn read_json<T: DeserializeOwned>(path: &Path, what: &str) -> Result<T, InputError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError(format!("cannot read {what} file {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| InputError(format!("malformed {what} file {}: {e}", path.display())))
}

fn read_params(path: &Path) -> Result<DilationParams, InputError> {
    read_json(path, "params")
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("library types serialize to JSON")
}

fn failure(error: &Error) -> Outcome {
    Outcome {
        pass: false,
        report: json!({ "error": error.to_string() }),
    }
}

/// Parameters that fail validation, as a domain failure carrying the report.
fn require_valid(params: &DilationParams) -> Option<Outcome> {
    let validation = params.validation();
    (!validation.passed()).then(|| Outcome {
        pass: false,
        report: json!({ "error": "parameters fail validation", "validation": to_value(validation) }),
    })
}

pub fn validate(path: &Path) -> Result<Outcome, InputError> {
    let params = read_params(path)?;
    let report = validate_params(&params, &Tolerances::default());
    Ok(Outcome {
        pass: report.passed(),
        report: to_value(&report),
    })
}

pub fn invariants(path: &Path) -> Result<Outcome, InputError> {
    let params = read_params(path)?;
    if let Some(fail) = require_valid(&params) {
        return Ok(fail);
    }
    Ok(match invariant_vector(&params) {
        Ok(inv) => Outcome {
            pass: true,
            report: to_value(&inv),
        },
        Err(e) => failure(&e),
    })
}

pub fn classify(a: &Path, b: &Path, certificate: Option<&Path>, tol: Option<f64>) -> Result<Outcome, InputError> {
    let (pa, pb) = (read_params(a)?, read_params(b)?);
    let cert: Option<Certificate> = certificate.map(|p| read_json(p, "certificate")).transpose()?;
    if let Some(t) = tol {
        if !(t > 0.0) {
            return Err(InputError(format!("--tol must be positive, got {t}")));
        }
    }
    for p in [&pa, &pb] {
        if let Some(fail) = require_valid(p) {
            return Ok(fail);
        }
    }
    if let Some(cert) = cert {
        let tolerances = Tolerances {
            certificate: tol.unwrap_or(Tolerances::default().certificate),
            ..Tolerances::default()
        };
        return Ok(match verify_certificate(&pa, &pb, &cert, &tolerances) {
            Ok(r) if r.valid => Outcome {
                pass: true,
                report: json!({ "verdict": "certified", "defects": to_value(&r) }),
            },
            Ok(r) => Outcome {
                pass: false,
                report: json!({ "verdict": "invalid_certificate", "defects": to_value(&r) }),
            },
            Err(e) => Outcome {
                pass: false,
                report: json!({ "verdict": "invalid_certificate", "error": e.to_string() }),
            },
        });
    }
    Ok(match refute_isomorphism(&pa, &pb) {
        Ok(Some(witness)) => Outcome {
            pass: true,
            report: json!({ "verdict": "refuted", "witness": witness }),
        },
        Ok(None) => Outcome {
            pass: true,
            report: json!({ "verdict": "inconclusive" }),
        },
        Err(e) => failure(&e),
    })
}

pub fn catalog(choices: Option<&Path>) -> Result<Outcome, InputError> {
    let choices: CatalogChoices = match choices {
        Some(p) => read_json(p, "choices")?,
        None => CatalogChoices::default(),
    };
    let report = match catalog_report(&choices, Exec::Parallel) {
        Ok(r) => r,
        Err(e @ Error::InvalidParams(_)) => return Err(InputError(e.to_string())),
        Err(e) => return Ok(failure(&e)),
    };
    let inconclusive: Vec<[&str; 2]> = report
        .inconclusive_pairs()
        .into_iter()
        .map(|(i, j)| [report.labels[i].as_str(), report.labels[j].as_str()])
        .collect();
    Ok(Outcome {
        pass: inconclusive.is_empty(),
        report: json!({
            "labels": report.labels,
            "witnesses": report.witnesses,
            "inconclusive": inconclusive,
        }),
    })
}

/// Largest entrywise error relative to `max(|want|, 1)`.
fn rel_err(got: &RealMatrix, want: &RealMatrix) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..want.rows() {
        for j in 0..want.cols() {
            let w = want.get(i, j);
            worst = worst.max((got.get(i, j) - w).abs() / w.abs().max(1.0));
        }
    }
    worst
}

fn coord_err(got: &GroupElement, want: &GroupElement) -> f64 {
    got.coords()
        .iter()
        .zip(want.coords())
        .map(|(g, w)| (g - w).abs() / w.abs().max(1.0))
        .fold(0.0, f64::max)
}

pub fn fuzz(path: &Path, samples: usize, tol: f64, seed: u64) -> Result<Outcome, InputError> {
    let params = read_params(path)?;
    if samples == 0 || !(tol > 0.0) {
        return Err(InputError("--samples and --tol must be positive".into()));
    }
    if let Some(fail) = require_valid(&params) {
        return Ok(fail);
    }
    let n = params.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let triples: Vec<[GroupElement; 3]> = (0..samples)
        .map(|_| [0, 1, 2].map(|_| GroupElement::random(n, &mut rng)))
        .collect();
    let identity = GroupElement::identity(n);
    let errors = Exec::Parallel.map(&triples, |[a, b, c]| -> heisenberg_ext::Result<[f64; 3]> {
        let ab = g_mul(&params, a, b)?;
        let product = &g_to_matrix(&params, a)? * &g_to_matrix(&params, b)?;
        let matrix = rel_err(&g_to_matrix(&params, &ab)?, &product);
        let left = g_mul(&params, &ab, c)?;
        let right = g_mul(&params, a, &g_mul(&params, b, c)?)?;
        let assoc = coord_err(&left, &right);
        let inv = g_inverse(&params, a)?;
        let cancel = coord_err(&g_mul(&params, a, &inv)?, &identity).max(coord_err(&g_mul(&params, &inv, a)?, &identity));
        Ok([matrix, assoc, cancel])
    });
    let mut worst = [0.0f64; 3];
    let mut worst_at = [0usize; 3];
    for (i, e) in errors.into_iter().enumerate() {
        let e = match e {
            Ok(e) => e,
            Err(err) => return Ok(failure(&err)),
        };
        for k in 0..3 {
            if e[k] > worst[k] || e[k].is_nan() {
                worst[k] = e[k];
                worst_at[k] = i;
            }
        }
    }
    let names = ["matrix_product", "associativity", "inverse"];
    let checks: Vec<Value> = (0..3)
        .map(|k| {
            json!({
                "check": names[k],
                "maxError": worst[k],
                "tolerance": tol,
                "pass": worst[k] <= tol,
                "worstSample": to_value(&triples[worst_at[k]]),
            })
        })
        .collect();
    Ok(Outcome {
        pass: worst.iter().all(|&w| w <= tol),
        report: json!({ "params": to_value(&params), "samples": samples, "checks": checks }),
    })
}

pub fn repcheck(path: &Path, samples: usize, tol: Option<f64>, skip_norms: bool, seed: u64) -> Result<Outcome, InputError> {
    let params = read_params(path)?;
    let defaults = SampleCheckConfig::default();
    let cfg = SampleCheckConfig {
        points: samples,
        seed,
        tolerance: tol.unwrap_or(defaults.tolerance),
        ..defaults
    };
    cfg.validate().map_err(|e| InputError(e.to_string()))?;
    if let Some(fail) = require_valid(&params) {
        return Ok(fail);
    }
    let quad = QuadConfig::default();
    let quad = (!skip_norms).then_some(&quad);
    Ok(match run_suite(&params, &cfg, quad, Exec::Parallel) {
        Ok(records) => Outcome {
            pass: records.iter().all(|r| r.pass),
            report: json!({ "config": to_value(&cfg), "records": to_value(&records) }),
        },
        Err(e) => failure(&e),
    })
}
