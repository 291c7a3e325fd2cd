//! Curve search for Cartan-decomposition evidence.

use cartankit::families::{cartan_a, hb_subalgebra, hc_subalgebra, BMap};
use cartankit::growth::{cds_search, GrowthBands};
use cartankit::GroupContext;

fn main() -> cartankit::Result<()> {
    let r4 = GroupContext::real(4);
    let specs = [
        cartan_a(r4),
        hb_subalgebra(&BMap::rotation90(r4)?)?,
        hc_subalgebra(GroupContext::complex(4), 0.5),
    ];
    for s in &specs {
        let r = cds_search(s, 50, 0, GrowthBands::default());
        println!(
            "{:<8} tried {:>3}: linear {:>3}, quadratic {:>3} -> {:?}",
            s.name.as_deref().unwrap_or("?"),
            r.tried,
            r.linear,
            r.quadratic,
            r.verdict
        );
    }
    Ok(())
}
