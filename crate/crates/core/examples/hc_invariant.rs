//! The c + 1/c fingerprint of H_c, before and after a frame conjugation.

use cartankit::classifier::{conjugate_in_frame, hc_invariant, random_frame_unitary};
use cartankit::families::hc_subalgebra;
use cartankit::sampling::seeded;
use cartankit::GroupContext;

fn main() -> cartankit::Result<()> {
    let ctx = GroupContext::complex(4);
    let mut rng = seeded(9);
    for c in [0.1, 0.25, 0.5, 1.0] {
        let s = hc_subalgebra(ctx, c);
        let g = random_frame_unitary(ctx, 0.5, &mut rng);
        let t = conjugate_in_frame(&s, &g)?;
        println!(
            "c = {c:<5} c + 1/c = {:<8.4} invariant {:.10}  conjugated {:.10}",
            c + 1.0 / c,
            hc_invariant(&s)?,
            hc_invariant(&t)?
        );
    }
    Ok(())
}
