use skidsim_core::sweep::{Series, SweepRange};
use skidsim_core::{fig2_preset, run_sweep, Fig2Panel, SweepSpec, SweepVar};

use super::{apply_state, load_valid};
use crate::cli::{StateArgs, SweepArgs, VarArg};
use crate::config::Setup;
use crate::output;
use crate::CliError;

impl From<VarArg> for SweepVar {
    fn from(v: VarArg) -> Self {
        match v {
            VarArg::VX1 => SweepVar::VX1,
            VarArg::OmegaZ => SweepVar::OmegaZ,
            VarArg::Phi => SweepVar::Phi,
            VarArg::SX => SweepVar::SX,
            VarArg::Delta1 => SweepVar::Delta1,
        }
    }
}

fn preset_spec(name: &str, setup: &Setup, state: &StateArgs) -> Result<SweepSpec, CliError> {
    let panel = Fig2Panel::from_name(name).ok_or_else(|| {
        let known: Vec<_> = Fig2Panel::ALL.iter().map(|p| p.name()).collect();
        CliError::Validation(format!(
            "unknown preset `{name}`; expected one of {}",
            known.join(", ")
        ))
    })?;
    let fixes_state = state.v.is_some()
        || state.v_kmh.is_some()
        || state.omega.is_some()
        || state.delta.is_some()
        || state.gamma.is_some()
        || state.s_x.is_some();
    if fixes_state {
        return Err(CliError::Validation(
            "presets fix their own state; only `--phi` may be combined with `--preset`".into(),
        ));
    }
    let mut env = setup.env;
    if let Some(phi) = state.phi {
        env.phi = phi;
        env.validate_with_bound(setup.phi_max)?;
    }
    Ok(fig2_preset(panel, setup.params, env, setup.grip))
}

fn custom_spec(args: &SweepArgs, setup: &Setup) -> Result<SweepSpec, CliError> {
    let Some(x_var) = args.x_var.map(SweepVar::from) else {
        return Err(CliError::Validation(
            "either `--preset` or `--x-var` is required".into(),
        ));
    };
    let (lo, hi) = (args.x_lo.unwrap_or_default(), args.x_hi.unwrap_or_default());
    let series = match args.series_var.map(SweepVar::from) {
        Some(var) => Some(Series {
            var,
            values: args
                .series
                .iter()
                .map(|&v| output::from_boundary(var, v))
                .collect(),
        }),
        None if !args.series.is_empty() => {
            return Err(CliError::Validation(
                "`--series` needs `--series-var`".into(),
            ));
        }
        None => None,
    };
    let (base_state, env) = apply_state(setup, &args.state)?;
    let slip_swept =
        x_var == SweepVar::SX || series.as_ref().is_some_and(|s| s.var == SweepVar::SX);
    Ok(SweepSpec {
        name: "custom".into(),
        x_var,
        x_range: SweepRange {
            lo: output::from_boundary(x_var, lo),
            hi: output::from_boundary(x_var, hi),
            n: args.n,
        },
        series,
        base_state,
        params: setup.params,
        env,
        grip: if slip_swept {
            Some(setup.grip.unwrap_or_default())
        } else {
            None
        },
    })
}

pub fn run(args: SweepArgs) -> Result<(), CliError> {
    let setup = load_valid(&args.config)?;
    let spec = match &args.preset {
        Some(name) => preset_spec(name, &setup, &args.state)?,
        None => custom_spec(&args, &setup)?,
    };
    let table = run_sweep(&spec)?;

    let mut header = vec![output::axis_label(table.x_var).to_string()];
    match &table.series {
        Some(s) => header.extend(s.values.iter().map(|&v| output::series_label(s.var, v))),
        None => header.push("eps_z".into()),
    }
    let rows = table.x.iter().zip(&table.cells).map(|(&x, cells)| {
        let mut row = vec![output::to_boundary(table.x_var, x)];
        row.extend(cells.iter().map(|c| *c.as_ref().unwrap_or(&f64::NAN)));
        row
    });
    output::write(&args.output, &output::csv(&header, rows))?;

    let singular = table.singular_cells();
    if singular > 0 {
        eprintln!("note: {singular} singular cell(s) written as nan");
        if let Some(e) = table.cells.iter().flatten().find_map(|c| c.as_ref().err()) {
            eprintln!("note: first failure: {e}");
        }
    }
    println!(
        "wrote {} rows x {} columns to {}",
        table.x.len(),
        header.len(),
        args.output.display()
    );
    if args.plot {
        let script = output::write_plot_script(&args.output, &header)?;
        println!("wrote plot script {}", script.display());
    }
    Ok(())
}
