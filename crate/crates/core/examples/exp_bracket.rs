//! Closed-form exponential and bracket against their matrix oracles.

use cartankit::sampling::{random_an, random_nilpotent, seeded};
use cartankit::scalars::max_abs;
use cartankit::{ANElement, GroupContext};

fn main() -> cartankit::Result<()> {
    let ctx = GroupContext::complex(5);
    let mut rng = seeded(1);
    let u = random_nilpotent(ctx, &mut rng);
    let closed = u.exp_closed()?;
    println!("exp: closed form vs series, max entry error {:.2e}", max_abs(&(&closed.entries - u.exp_series())));

    let a = random_an(ctx, &mut rng);
    let b = random_an(ctx, &mut rng);
    let (ma, mb) = (a.to_matrix(), b.to_matrix());
    let comm = ANElement::from_matrix(ctx, &(&ma * &mb - &mb * &ma), 1e-9)?;
    println!("bracket: closed form vs commutator, max error {:.2e}", a.bracket(&b).max_abs_diff(&comm));

    let c = a.conjugate_by_exp(&u)?;
    println!("t-part of a ({:.3}, {:.3}), of exp(-u) a exp(u) ({:.3}, {:.3})", a.t1, a.t2, c.t1, c.t2);
    Ok(())
}
