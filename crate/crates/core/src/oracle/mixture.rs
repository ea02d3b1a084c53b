use std::f64::consts::{PI, SQRT_2};

use serde::{Deserialize, Serialize};
use statrs::function::erf::erfc;

use super::quadrature::{integrate_unit, Node};
use crate::error::{Error, Result};
use crate::stats::DensityCurve;

/// Law of the unit count in a Gaussian scale mixture.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "law")]
pub enum KLaw {
    Exponential { lambda: f64 },
    PointMass { k0: f64 },
}

/// `P(g) = ∫ w(K) N(g; 0, sigma^2 K^psi) dK`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MixtureSpec {
    pub k_law: KLaw,
    pub psi: f64,
    pub sigma: f64,
}

impl MixtureSpec {
    pub fn new(k_law: KLaw, psi: f64, sigma: f64) -> Result<Self> {
        let ok = match k_law {
            KLaw::Exponential { lambda } => lambda > 0.0 && lambda.is_finite(),
            KLaw::PointMass { k0 } => k0 > 0.0 && k0.is_finite(),
        };
        if !ok {
            return Err(Error::param(format!("unit-count law {k_law:?} needs a positive parameter")));
        }
        if !(sigma > 0.0 && sigma.is_finite()) || !psi.is_finite() {
            return Err(Error::param(format!("need finite psi and positive sigma, got psi={psi} sigma={sigma}")));
        }
        Ok(Self { k_law, psi, sigma })
    }

    pub fn exponential(lambda: f64, psi: f64, sigma: f64) -> Result<Self> {
        Self::new(KLaw::Exponential { lambda }, psi, sigma)
    }

    /// Standard deviation of the Gaussian component at unit count `k`.
    fn sd_at(&self, k: f64) -> f64 {
        self.sigma * k.powf(0.5 * self.psi)
    }
}

pub fn gaussian_pdf(g: f64, sd: f64) -> f64 {
    let z = g / sd;
    (-0.5 * z * z).exp() / (sd * (2.0 * PI).sqrt())
}

pub fn gaussian_cdf(g: f64, sd: f64) -> f64 {
    0.5 * erfc(-g / (sd * SQRT_2))
}

pub fn cauchy_cdf(x: f64) -> f64 {
    0.5 + x.atan() / PI
}

/// `K = -ln(u) / lambda`, accurate near both ends.
fn k_of(node: Node, lambda: f64) -> f64 {
    let e = if node.u < 0.5 { -node.u.ln() } else { -(-node.one_minus_u).ln_1p() };
    e / lambda
}

const ABS_TOL: f64 = 1e-13;
const REL_TOL: f64 = 1e-12;

/// Mixture density at one point by quadrature over `u = exp(-lambda K)`.
pub fn mixture_density_at(spec: &MixtureSpec, g: f64) -> Result<f64> {
    match spec.k_law {
        KLaw::PointMass { k0 } => Ok(gaussian_pdf(g, spec.sd_at(k0))),
        KLaw::Exponential { lambda } => integrate_unit(
            |n| {
                let k = k_of(n, lambda);
                if k == 0.0 || k.is_infinite() {
                    return 0.0;
                }
                let sd = spec.sd_at(k);
                if sd == 0.0 || sd.is_infinite() {
                    0.0
                } else {
                    gaussian_pdf(g, sd)
                }
            },
            ABS_TOL,
            REL_TOL,
        )
        .map_err(|e| Error::Numeric(format!("mixture density at g = {g}, {spec:?}: {e}"))),
    }
}

/// Mixture CDF at one point, same quadrature as the density.
pub fn mixture_cdf_numeric(spec: &MixtureSpec, g: f64) -> Result<f64> {
    match spec.k_law {
        KLaw::PointMass { k0 } => Ok(gaussian_cdf(g, spec.sd_at(k0))),
        KLaw::Exponential { .. } if g == 0.0 => Ok(0.5),
        KLaw::Exponential { lambda } => {
            // P(0 < X < |g|), folded by symmetry.
            let half = integrate_unit(
                |n| {
                    let x = g.abs() / (spec.sd_at(k_of(n, lambda)) * SQRT_2);
                    if x.is_infinite() {
                        0.5
                    } else {
                        0.5 * statrs::function::erf::erf(x)
                    }
                },
                ABS_TOL,
                REL_TOL,
            )
            .map_err(|e| Error::Numeric(format!("mixture cdf at g = {g}, {spec:?}: {e}")))?;
            Ok(0.5 + half.copysign(g))
        }
    }
}

/// Mixture density on a strictly increasing grid.
pub fn mixture_density_numeric(spec: &MixtureSpec, g_grid: &[f64]) -> Result<DensityCurve> {
    if g_grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::Shape("g grid must be strictly increasing".into()));
    }
    let dens = g_grid
        .iter()
        .map(|&g| mixture_density_at(spec, g))
        .collect::<Result<Vec<_>>>()?;
    DensityCurve::new(g_grid.iter().copied().zip(dens).collect())
}

/// Laplace law with scale `sigma / sqrt(2 lambda)`: the `psi = 1` mixture.
pub fn laplace_scale(lambda: f64, sigma: f64) -> f64 {
    sigma / (2.0 * lambda).sqrt()
}

pub fn laplace_density(g: f64, lambda: f64, sigma: f64) -> f64 {
    let b = laplace_scale(lambda, sigma);
    (-g.abs() / b).exp() / (2.0 * b)
}

pub fn laplace_cdf(g: f64, lambda: f64, sigma: f64) -> f64 {
    let b = laplace_scale(lambda, sigma);
    if g < 0.0 {
        0.5 * (g / b).exp()
    } else {
        1.0 - 0.5 * (-g / b).exp()
    }
}

/// `psi = -1` mixture: `lambda / (2 sqrt(2) sigma) (lambda + g^2 / (2 sigma^2))^(-3/2)`,
/// a Student t with two degrees of freedom.
pub fn student2_density(g: f64, lambda: f64, sigma: f64) -> f64 {
    lambda / (2.0 * SQRT_2 * sigma) * (lambda + g * g / (2.0 * sigma * sigma)).powf(-1.5)
}

pub fn student2_cdf(g: f64, lambda: f64, sigma: f64) -> f64 {
    0.5 + g / (2.0 * (2.0 * sigma * sigma * lambda + g * g).sqrt())
}
