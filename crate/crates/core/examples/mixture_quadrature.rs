//! Mixture density by quadrature, printed next to the closed forms.

use granular_growth::oracle::{laplace_density, mixture_density_at, student2_density, MixtureSpec};

fn main() -> granular_growth::Result<()> {
    let (lambda, sigma) = (1.0, 1.0);
    let lap = MixtureSpec::exponential(lambda, 1.0, sigma)?;
    let st = MixtureSpec::exponential(lambda, -1.0, sigma)?;
    let heavy = MixtureSpec::exponential(lambda, -2.0, sigma)?;
    println!("{:>6} {:>12} {:>12} {:>12} {:>12} {:>12}", "g", "psi=1", "laplace", "psi=-1", "student", "psi=-2");
    for i in 0..=12 {
        let g = 0.5 * i as f64;
        println!(
            "{g:>6.2} {:>12.6e} {:>12.6e} {:>12.6e} {:>12.6e} {:>12.6e}",
            mixture_density_at(&lap, g)?,
            laplace_density(g, lambda, sigma),
            mixture_density_at(&st, g)?,
            student2_density(g, lambda, sigma),
            mixture_density_at(&heavy, g)?,
        );
    }
    Ok(())
}
