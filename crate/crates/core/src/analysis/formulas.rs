//! Closed-form quantities: the critical mixing weight, the distance bounds
//! and the dimension scaling that reaches a target distance.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::params::validate_dims;
use crate::tensor::format_float;

fn pattern_count(n: usize) -> f64 {
    ((1u64 << (n - 1)) - 1) as f64
}

fn pow(base: usize, n: usize) -> f64 {
    (base as f64).powi(n as i32)
}

/// `q* = 1 / (1 + d_B^n / (N·(d_A − 1)))`.
pub fn q_star(n: usize, d_a: usize, d_b: usize) -> Result<f64> {
    validate_dims(n, d_a, d_b)?;
    let ratio = pow(d_b, n) / (pattern_count(n) * (d_a - 1) as f64);
    Ok(1.0 / (1.0 + ratio))
}

/// `‖ρ − ρ⁽⁰⁾‖₁ = 2q`.
pub fn lemma1_distance(q: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::Domain(format!("q = {q} outside [0, 1]")));
    }
    Ok(2.0 * q)
}

/// Lower bound `1 − 1/d_A^n` on the distance of `ρ⁽⁰⁾` from separable states.
pub fn rho0_sep_bound(n: usize, d_a: usize) -> Result<f64> {
    validate_dims(n, d_a, 2)?;
    Ok(1.0 - 1.0 / pow(d_a, n))
}

/// `1 − 1/d_A^n − q*`.
pub fn sep_distance_lower_bound(n: usize, d_a: usize, d_b: usize) -> Result<f64> {
    Ok(rho0_sep_bound(n, d_a)? - q_star(n, d_a, d_b)?)
}

/// `C(n) = 8N·2^(1/n)`.
pub fn c_n(n: usize) -> Result<f64> {
    validate_dims(n, 2, 2)?;
    Ok(8.0 * pattern_count(n) * 2f64.powf(1.0 / n as f64))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub d_a: usize,
    pub d_b: usize,
    pub q_star: f64,
    /// `‖ρ − ρ⁽⁰⁾‖₁` at `q = q*`.
    pub lemma1_distance: f64,
    pub rho0_sep_bound: f64,
    pub lemma3_bound: f64,
    pub c_n: f64,
}

pub fn bound_report(n: usize, d_a: usize, d_b: usize) -> Result<BoundReport> {
    let q = q_star(n, d_a, d_b)?;
    Ok(BoundReport {
        n,
        d_a,
        d_b,
        q_star: q,
        lemma1_distance: lemma1_distance(q)?,
        rho0_sep_bound: rho0_sep_bound(n, d_a)?,
        lemma3_bound: sep_distance_lower_bound(n, d_a, d_b)?,
        c_n: c_n(n)?,
    })
}

/// Dimensions reaching distance `1 − ε`, obtained by setting both
/// `1/d_A^n` and `q*` to `ε/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScalingRow {
    pub n: usize,
    pub epsilon: f64,
    /// Real-valued `d_A = (2/ε)^(1/n)`.
    pub da_ideal: f64,
    /// Real-valued `d_B = (d_B^n)^(1/n)` with
    /// `d_B^n = N·(2 − ε)/ε·((2/ε)^(1/n) − 1)`.
    pub db_ideal: f64,
    /// `d_A^n · d_B^n` at the ideal dimensions.
    pub d_ideal: f64,
    /// `4N·(2 − ε)/ε²·((2/ε)^(1/n) − 1)`, exactly twice `d_ideal`.
    pub d_closed_form: f64,
    /// `C(n)/ε^(2 + 1/n)`.
    pub d_bound: f64,
    pub da_int: usize,
    pub db_int: usize,
    /// `1 − 1/d_A^n − q*` evaluated at the integer dimensions.
    pub bound_at_int: f64,
}

pub fn dims_for_epsilon(n: usize, epsilon: f64) -> Result<ScalingRow> {
    validate_dims(n, 2, 2)?;
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::Domain(format!("epsilon = {epsilon} outside (0, 1)")));
    }
    let nf = n as f64;
    let big_n = pattern_count(n);
    let root = (2.0 / epsilon).powf(1.0 / nf);
    let da_pow = 2.0 / epsilon;
    let db_pow = big_n * (2.0 - epsilon) / epsilon * (root - 1.0);
    let da_ideal = root;
    let db_ideal = db_pow.powf(1.0 / nf);
    let d_ideal = da_pow * db_pow;
    let d_closed_form = 4.0 * big_n * (2.0 - epsilon) / (epsilon * epsilon) * (root - 1.0);
    let d_bound = c_n(n)? / epsilon.powf(2.0 + 1.0 / nf);
    let da_int = ceil_dim(da_ideal);
    let db_int = ceil_dim(db_ideal);
    Ok(ScalingRow {
        n,
        epsilon,
        da_ideal,
        db_ideal,
        d_ideal,
        d_closed_form,
        d_bound,
        da_int,
        db_int,
        bound_at_int: sep_distance_lower_bound(n, da_int, db_int)?,
    })
}

/// Smallest admissible integer dimension `>= x`; guards against roots such as
/// `4^(1/2)` landing a few ulps above an integer.
fn ceil_dim(x: f64) -> usize {
    let r = x.round();
    let c = if (x - r).abs() <= 1e-12 * r.max(1.0) { r } else { x.ceil() };
    (c as usize).max(2)
}

pub const SCALING_CSV_HEADER: &str = "n,epsilon,dA_ideal,dB_ideal,d_ideal,d_bound";

impl ScalingRow {
    pub fn csv_line(&self) -> String {
        let reals = [self.epsilon, self.da_ideal, self.db_ideal, self.d_ideal, self.d_bound];
        let mut line = self.n.to_string();
        for v in reals {
            line.push(',');
            line.push_str(&format_float(v));
        }
        line
    }
}
