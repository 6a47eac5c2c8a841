use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use skidsim_core::{
    fig2_preset, find_v_stab, run_sweep, simulate, yaw_accel_oracle, yaw_angular_acceleration,
    Environment, Fig2Panel, MotionState, SimConfig, SkidOnset, VehicleParams,
};

fn model(c: &mut Criterion) {
    let params = VehicleParams::baseline();
    let env = Environment::baseline();
    let state = MotionState::new(10.0, 0.1, 0.05);
    c.bench_function("yaw_angular_acceleration", |b| {
        b.iter(|| yaw_angular_acceleration(black_box(&state), &params, &env))
    });
    c.bench_function("yaw_accel_oracle", |b| {
        b.iter(|| yaw_accel_oracle(black_box(&state), &params, &env))
    });
}

fn studies(c: &mut Criterion) {
    let params = VehicleParams::baseline();
    let env = Environment::baseline();
    let spec = fig2_preset(Fig2Panel::A, params, env, None);
    c.bench_function("sweep_fig2a", |b| b.iter(|| run_sweep(black_box(&spec))));

    let onset = SkidOnset {
        omega_z: 0.1,
        delta_1: 0.05,
        gamma_b: 0.0,
    };
    c.bench_function("find_v_stab", |b| {
        b.iter(|| find_v_stab(&params, &env, black_box(onset), (0.1, 100.0)))
    });

    let cfg = SimConfig {
        dt: 1e-3,
        t_end: 1.0,
        stop_on_damped: false,
        record_every: 10,
    };
    let start = MotionState::new(10.0, 0.1, 0.05);
    let slow = env.with_phi(0.1);
    c.bench_function("simulate_1s", |b| {
        b.iter(|| simulate(black_box(&start), &params, &slow, &cfg))
    });
}

criterion_group!(benches, model, studies);
criterion_main!(benches);
