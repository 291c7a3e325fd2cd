//! Named subalgebras: dimensions, closure, B-map checks and hb(B0) = sp1m.

use cartankit::families::{
    check_b_eigenfree, check_b_symplectic, dn_part, hb_subalgebra, hc_subalgebra, is_compatible,
    lie_closure_defect, sp1m_an, su1n_an, BMap,
};
use cartankit::GroupContext;

fn main() -> cartankit::Result<()> {
    for ctx in [GroupContext::real(4), GroupContext::complex(4)] {
        let b0 = BMap::b0(ctx)?;
        let specs = [su1n_an(ctx), sp1m_an(ctx, 2)?, hb_subalgebra(&b0)?, hc_subalgebra(ctx, 0.5)];
        for s in &specs {
            let rep = is_compatible(s);
            println!(
                "{} {:<10} dim {:>2}  closure defect {:.1e}  T = {:<9}  dim D_h = {}",
                ctx.field,
                s.name.as_deref().unwrap_or("?"),
                s.dim(),
                lie_closure_defect(s)?,
                rep.torus_kind,
                dn_part(s).dim()
            );
        }
        println!("  hb(B0) spans sp1m: {}", specs[1].same_span(&specs[2]));
        println!("  B0 symplectic {}, eigenvector-free {}", check_b_symplectic(&b0, 1e-9), check_b_eigenfree(&b0));
    }
    let twice = BMap::scalar(GroupContext::complex(4), 2.0);
    println!("2 Id over C: symplectic {}", check_b_symplectic(&twice, 1e-9));
    Ok(())
}
