//! Cartan projection of a random group element and its invariances.

use cartankit::sampling::{random_group, random_k, seeded};
use cartankit::sunf::{mu, rho_norm, sup_norm, wall_distance};
use cartankit::GroupContext;

fn main() -> cartankit::Result<()> {
    let ctx = GroupContext::complex(4);
    let mut rng = seeded(7);
    let g = random_group(ctx, 1.5, &mut rng);
    let p = mu(&g)?;
    println!("mu(g)          = ({:.6}, {:.6})", p.a11, p.a22);
    let q = mu(&g.inverse())?;
    println!("mu(g^-1)       = ({:.6}, {:.6})", q.a11, q.a22);
    let k = random_k(ctx, &mut rng);
    let r = mu(&k.mul(&g))?;
    println!("mu(k g)        = ({:.6}, {:.6})", r.a11, r.a22);
    println!("||g||, ||rho(g)|| = {:.6}, {:.6}", sup_norm(&g.entries), rho_norm(&g.entries));
    println!("distance to L1, L2 = {:.4}, {:.4}", wall_distance(&p, 1)?, wall_distance(&p, 2)?);
    Ok(())
}
