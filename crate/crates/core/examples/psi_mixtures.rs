//! The psi family of Gaussian scale mixtures against its closed forms.

use granular_growth::models::{simulate_psi_mixture, PsiMixtureConfig};
use granular_growth::oracle::{gaussian_cdf, laplace_cdf, mixture_ks_distance, student2_cdf, MixtureSpec};
use granular_growth::stats::ks_distance;

fn main() -> granular_growth::Result<()> {
    for psi in [0.0, 1.0, -1.0, -2.0, 0.5] {
        let g = simulate_psi_mixture(&PsiMixtureConfig { psi, n_firms: 200_000, seed: 1, ..Default::default() })?.log_growths();
        let quad = mixture_ks_distance(&MixtureSpec::exponential(1.0, psi, 1.0)?, &g, 2001)?;
        let closed = match psi {
            0.0 => Some(("gaussian", ks_distance(&g, |x| gaussian_cdf(x, 1.0))?)),
            1.0 => Some(("laplace", ks_distance(&g, |x| laplace_cdf(x, 1.0, 1.0))?)),
            -1.0 => Some(("student-2", ks_distance(&g, |x| student2_cdf(x, 1.0, 1.0))?)),
            _ => None,
        };
        match closed {
            Some((name, d)) => println!("psi {psi:>4}: KS quadrature {quad:.4}, KS {name} {d:.4}"),
            None => println!("psi {psi:>4}: KS quadrature {quad:.4}"),
        }
    }
    Ok(())
}
