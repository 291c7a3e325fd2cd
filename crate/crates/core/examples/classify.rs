//! Condition reports and tessellation verdicts.

use cartankit::classifier::{check_bestnosquare, check_maxnolinear, tessellation_verdict, VerdictOptions};
use cartankit::families::{cartan_a, hb_subalgebra, hc_subalgebra, su1n_an, BMap};
use cartankit::GroupContext;

fn main() -> cartankit::Result<()> {
    let hb = hb_subalgebra(&BMap::rotation90(GroupContext::real(4))?)?;
    print!("{}", check_maxnolinear(&hb)?);
    let hc = hc_subalgebra(GroupContext::complex(4), 0.5);
    print!("{}", check_bestnosquare(&hc)?);

    let cases = [
        ("hb(rot90), R, n=4", hb),
        ("hc(0.5), C, n=4", hc),
        ("su1n, R, n=5", su1n_an(GroupContext::real(5))),
        ("a, R, n=4", cartan_a(GroupContext::real(4))),
    ];
    for (name, s) in &cases {
        println!("{name}: {}", tessellation_verdict(s, VerdictOptions::default()).verdict);
    }
    Ok(())
}
