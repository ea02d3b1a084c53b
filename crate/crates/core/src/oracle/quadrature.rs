//! Tanh-sinh quadrature on the open unit interval.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Integration variable handed to the integrand: `u` and `1 - u`, both to
/// full relative precision even where `u` rounds to 0 or 1.
#[derive(Debug, Clone, Copy)]
pub struct Node {
    pub u: f64,
    pub one_minus_u: f64,
}

const T_MAX: f64 = 4.5;
const MAX_LEVEL: u32 = 12;

fn logistic(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

/// Sum of `f` times the tanh-sinh weight at `t`, both sides of 0.
fn term<F: Fn(Node) -> f64>(f: &F, t: f64) -> Result<f64> {
    let s = 0.5 * PI * t.sinh();
    let node = Node {
        u: logistic(2.0 * s),
        one_minus_u: logistic(-2.0 * s),
    };
    let w = PI * t.cosh() * node.u * node.one_minus_u;
    if w == 0.0 {
        return Ok(0.0);
    }
    let v = f(node);
    if !v.is_finite() {
        return Err(Error::Numeric(format!("integrand is {v} at u = {:e}", node.u)));
    }
    Ok(w * v)
}

/// Integrates `f` over `(0, 1)`, halving the step until two successive
/// levels agree to `abs_tol + rel_tol |I|`.
pub fn integrate_unit<F: Fn(Node) -> f64>(f: F, abs_tol: f64, rel_tol: f64) -> Result<f64> {
    let mut h = 0.5;
    let mut sum = term(&f, 0.0)?;
    let mut k = 1;
    while k as f64 * h <= T_MAX {
        let t = k as f64 * h;
        sum += term(&f, t)? + term(&f, -t)?;
        k += 1;
    }
    let mut estimate = h * sum;
    for level in 1..=MAX_LEVEL {
        h *= 0.5;
        // New nodes are the odd multiples of the halved step.
        let mut k = 1;
        while k as f64 * h <= T_MAX {
            let t = k as f64 * h;
            sum += term(&f, t)? + term(&f, -t)?;
            k += 2;
        }
        let next = h * sum;
        let diff = (next - estimate).abs();
        if level >= 3 && diff <= abs_tol + rel_tol * next.abs() {
            return Ok(next);
        }
        estimate = next;
    }
    Err(Error::Numeric(format!(
        "tanh-sinh quadrature did not converge in {MAX_LEVEL} levels (last estimate {estimate:e})"
    )))
}
