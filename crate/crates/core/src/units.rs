//! Boundary unit conversions. Everything inside the model is SI.

pub const KMH_PER_MPS: f64 = 3.6;

pub fn kmh_to_mps(v: f64) -> f64 {
    v / KMH_PER_MPS
}

pub fn mps_to_kmh(v: f64) -> f64 {
    v * KMH_PER_MPS
}
