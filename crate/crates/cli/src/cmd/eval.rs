use serde_json::json;
use skidsim_core::evaluate;
use skidsim_core::units::mps_to_kmh;

use super::{apply_state, load_valid};
use crate::cli::EvalArgs;
use crate::CliError;

pub fn run(args: EvalArgs) -> Result<(), CliError> {
    let setup = load_valid(&args.config)?;
    let (state, env) = apply_state(&setup, &args.state)?;
    let d = evaluate(&state, &setup.params, &env)?;

    if args.json {
        let report = json!({
            "state": {
                "v_x1": state.v_x1,
                "omega_z": state.omega_z,
                "delta_1": state.delta_1,
                "gamma_b": state.gamma_b,
                "s_x": state.s_x,
                "phi": env.phi,
            },
            "eps_z": d.eps_z,
            "damping": d.damping(),
            "load_valid": d.load_valid(),
            "theta_c": d.theta_c,
            "a_c_n": d.a_c_n,
            "a_c_t": d.a_c_t,
            "ax_body": d.ax_body,
            "ay_body": d.ay_body,
            "p_w_x1": d.p_w_x1,
            "p_w_y1": d.p_w_y1,
            "p_j": d.p_j,
            "r_z2": d.r_z2,
            "r_b": d.r_b,
            "r_delta1": d.r_delta1,
            "omega_factor": d.omega_factor,
            "denominator": d.denominator,
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("finite report serializes")
        );
        return Ok(());
    }

    let opt = |v: Option<f64>| v.map_or("undefined".to_string(), |v| format!("{v:.10e}"));
    println!(
        "state     V_X1 = {} m/s ({} km/h), omega_z = {} rad/s, delta_1 = {} deg, gamma_B = {} deg, phi = {}",
        state.v_x1,
        mps_to_kmh(state.v_x1),
        state.omega_z,
        state.delta_1.to_degrees(),
        state.gamma_b.to_degrees(),
        env.phi
    );
    println!(
        "eps_z     = {:.10e} rad/s^2 ({})",
        d.eps_z,
        if d.damping() { "damping" } else { "diverging" }
    );
    println!("Theta_C   = {} rad", opt(d.theta_c));
    println!("a_C^n     = {} m/s^2", opt(d.a_c_n));
    println!("a_C^t     = {} m/s^2", opt(d.a_c_t));
    println!("a_x       = {:.10e} m/s^2", d.ax_body);
    println!("a_y       = {:.10e} m/s^2", d.ay_body);
    println!("P_W,x1    = {:.10e} N", d.p_w_x1);
    println!("P_W,y1    = {:.10e} N", d.p_w_y1);
    println!("P_j       = {:.10e} N", d.p_j);
    println!("R_z2      = {:.10e} N", d.r_z2);
    println!("R_B       = {:.10e} N", d.r_b);
    println!("R_delta1  = {:.10e} N", d.r_delta1);
    println!("Omega     = {:.10e} m", d.omega_factor);
    println!("D         = {:.10e} m^2", d.denominator);
    if !d.load_valid() {
        eprintln!("warning: R_z2 < 0, the rear axle is unloaded and the state is outside the model's domain");
    }
    Ok(())
}
