use skidsim_core::stability::EnvelopeRow;
use skidsim_core::units::{kmh_to_mps, mps_to_kmh};
use skidsim_core::{stability_envelope, VStab};

use super::load_valid;
use crate::cli::VstabArgs;
use crate::output::{self, fmt_num};
use crate::CliError;

/// Slip angles from `from` to `to` inclusive, degrees.
fn slip_grid(from: f64, to: f64, step: f64) -> Result<Vec<f64>, CliError> {
    if !(step > 0.0 && step.is_finite() && from.is_finite() && to.is_finite() && to >= from) {
        return Err(CliError::Validation(format!(
            "invalid slip-angle range: from {from} to {to} step {step} deg"
        )));
    }
    let n = ((to - from) / step + 1e-9).floor() as usize + 1;
    if n > 100_000 {
        return Err(CliError::Validation(format!(
            "slip-angle range has too many points ({n})"
        )));
    }
    Ok((0..n).map(|i| from + i as f64 * step).collect())
}

fn row_text(delta_deg: f64, row: &EnvelopeRow) -> (String, String) {
    let mut flags = Vec::new();
    let v = match &row.outcome {
        Ok(VStab::Crossing {
            v_stab, multi_root, ..
        }) => {
            flags.push("crossing");
            if *multi_root {
                flags.push("multi_root");
            }
            fmt_num(mps_to_kmh(*v_stab))
        }
        Ok(VStab::StableThroughout { v_hi }) => {
            flags.push("stable_throughout");
            fmt_num(mps_to_kmh(*v_hi))
        }
        Ok(VStab::NotBracketed) => {
            flags.push("not_bracketed");
            "none".to_string()
        }
        Err(e) => {
            flags.push(if e.is_singular() { "singular" } else { "error" });
            "nan".to_string()
        }
    };
    if row.non_monotone {
        flags.push("non_monotone");
    }
    (
        format!("{},{},{}", fmt_num(delta_deg), v, flags.join("|")),
        v,
    )
}

pub fn run(args: VstabArgs) -> Result<(), CliError> {
    let setup = load_valid(&args.config)?;
    let mut env = setup.env;
    if let Some(phi) = args.phi {
        env.phi = phi;
        env.validate_with_bound(setup.phi_max)?;
    }
    if !(args.v_lo_kmh >= 0.0 && args.v_hi_kmh > args.v_lo_kmh && args.v_hi_kmh.is_finite()) {
        return Err(CliError::Validation(format!(
            "invalid speed bracket [{}, {}] km/h",
            args.v_lo_kmh, args.v_hi_kmh
        )));
    }
    let deltas_deg = slip_grid(args.delta_from, args.delta_to, args.delta_step)?;
    let deltas: Vec<f64> = deltas_deg.iter().map(|d| d.to_radians()).collect();
    let rows = stability_envelope(
        &setup.params,
        &env,
        args.omega,
        &deltas,
        args.gamma.to_radians(),
        (kmh_to_mps(args.v_lo_kmh), kmh_to_mps(args.v_hi_kmh)),
    );

    let mut csv = String::from("delta_deg,v_stab_kmh,flags\n");
    for (d, row) in deltas_deg.iter().zip(&rows) {
        csv.push_str(&row_text(*d, row).0);
        csv.push('\n');
    }
    let max = rows
        .iter()
        .filter_map(|r| r.outcome.as_ref().ok().and_then(VStab::v_stab))
        .fold(None, |m: Option<f64>, v| Some(m.map_or(v, |m| m.max(v))));
    let summary = match max {
        Some(v) => format!("max_v_stab_kmh={}", fmt_num(mps_to_kmh(v))),
        None => "max_v_stab_kmh=none".to_string(),
    };
    match &args.output {
        Some(path) => {
            output::write(path, &csv)?;
            println!("wrote {} rows to {}", rows.len(), path.display());
        }
        None => print!("{csv}"),
    }
    if let Some(e) = rows.iter().find_map(|r| r.outcome.as_ref().err()) {
        eprintln!("note: some rows failed: {e}");
    }
    println!("{summary}");
    Ok(())
}
