//! Growth exponents of one-parameter curves on the two walls.

use cartankit::families::{sp1m_an, su1n_an};
use cartankit::growth::{fit_growth, sample_curve, CurveSpec, GrowthBands};
use cartankit::sampling::{random_combination, seeded};
use cartankit::GroupContext;

fn main() -> cartankit::Result<()> {
    let ctx = GroupContext::complex(4);
    let mut rng = seeded(3);
    for s in [su1n_an(ctx), sp1m_an(ctx, 2)?] {
        let gen = random_combination(&s.basis, &mut rng).expect("nonempty basis");
        let curve = CurveSpec::new(gen)?;
        let fit = fit_growth(&curve, GrowthBands::default())?;
        println!("{}: kappa = {:.4} -> {:?}", s.name.as_deref().unwrap_or("?"), fit.kappa, fit.class);
        let data = sample_curve(&curve);
        let last = data.samples.last().expect("samples");
        println!("  at t = {}: log a11 = {:.3}, log a22 = {:.3}", last.t, last.log_a11, last.log_a22);
    }
    Ok(())
}
