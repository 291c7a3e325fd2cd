//! Round trip of specs and group elements through JSON.

use cartankit::families::sp1m_an;
use cartankit::io::{group_from_json, group_to_json, spec_from_json, spec_to_json};
use cartankit::sampling::{random_group, seeded};
use cartankit::GroupContext;

fn main() -> cartankit::Result<()> {
    let ctx = GroupContext::real(4);
    let s = sp1m_an(ctx, 2)?;
    let text = spec_to_json(&s);
    println!("{text}");
    println!("spec round trip equal: {}", spec_from_json(&text)? == s);
    let g = random_group(ctx, 0.5, &mut seeded(2));
    let back = group_from_json(&group_to_json(&g), 1e-9)?;
    println!("group round trip error: {:.1e}", (back.entries - g.entries).norm());
    Ok(())
}
