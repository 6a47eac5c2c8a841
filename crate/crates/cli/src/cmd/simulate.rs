use skidsim_core::sim::SimState;
use skidsim_core::{simulate, SimConfig, Termination};

use super::{apply_state, load_valid};
use crate::cli::SimulateArgs;
use crate::output;
use crate::CliError;

const HEADER: [&str; 11] = [
    "t_s",
    "omega_z_radps",
    "v_x1_mps",
    "psi_rad",
    "x_m",
    "y_m",
    "eps_z_radps2",
    "ay_body_mps2",
    "r_b_n",
    "r_z2_n",
    "damping",
];

pub fn run(args: SimulateArgs) -> Result<(), CliError> {
    let setup = load_valid(&args.config)?;
    let (state, env) = apply_state(&setup, &args.state)?;
    let config = SimConfig {
        dt: args.dt,
        t_end: args.t_end,
        stop_on_damped: !args.no_stop,
        record_every: args.record_every,
    };
    config.validate()?;
    let result = simulate(&state, &setup.params, &env, &config)?;

    let header: Vec<String> = HEADER.iter().map(|s| s.to_string()).collect();
    let rows = result.rows.iter().map(|r| {
        vec![
            r.t,
            r.omega_z,
            r.v_x1,
            r.psi,
            r.x,
            r.y,
            r.eps_z,
            r.ay_body,
            r.r_b,
            r.r_z2,
            if r.damping { 1.0 } else { 0.0 },
        ]
    });
    output::write(&args.output, &output::csv(&header, rows))?;
    println!(
        "wrote {} rows to {}",
        result.rows.len(),
        args.output.display()
    );

    let SimState {
        t,
        omega_z,
        v_x1,
        psi,
        x,
        y,
    } = result.final_state;
    let reason = match &result.termination {
        Termination::TimeEnd => "TimeEnd".to_string(),
        Termination::SkidDamped { t_cross } => {
            format!("SkidDamped t_cross={}", output::fmt_num(*t_cross))
        }
        Termination::Singular { t, error } => {
            format!("Singular t={} ({error})", output::fmt_num(*t))
        }
    };
    println!(
        "termination={reason} final: t={} omega_z={} v_x1={} psi={} x={} y={}",
        output::fmt_num(t),
        output::fmt_num(omega_z),
        output::fmt_num(v_x1),
        output::fmt_num(psi),
        output::fmt_num(x),
        output::fmt_num(y)
    );
    Ok(())
}
