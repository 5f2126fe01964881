//! Conjugating a system by a piecewise-linear homeomorphism: transitivity
//! verdicts survive, and fiber-vs-limit distances transport through the
//! Lipschitz constant of the conjugating map.
//!
//! ```bash
//! cargo run -p ndslab --example conjugation
//! ```

use ndslab::analysis::{
    conjugate_system, invert_homeomorphism, lipschitz_constant, test_transitivity,
};
use ndslab::maps::{Map, PLMap};
use ndslab::nds::System;
use ndslab::rational::rat;

fn main() -> ndslab::Result<()> {
    // A two-piece stretch fixing the endpoints: h(1/4) = 1/2.
    let h = PLMap::from_pairs(&[((0, 1), (0, 1)), ((1, 4), (1, 2)), ((1, 1), (1, 1))])?;
    let h_inv = invert_homeomorphism(&h)?;
    println!("h = {h:?}");
    println!("h^-1 = {h_inv:?}");
    println!("h o h^-1 simplifies to the identity: {:?}", h.compose_after(&h_inv).simplify());
    println!("Lipschitz constant of h: {}", lipschitz_constant(&h));

    let tent_sys = System::constant_interval(PLMap::tent());
    let conj = conjugate_system(&tent_sys, &h)?;
    let System::IntervalPl(ps) = &conj else { unreachable!() };
    println!("conjugated tent: {:?}", ps.limit);

    let profile = ps.limit.slope_profile();
    println!(
        "conjugated slopes {:?} — constant |slope|: {}",
        profile.entries.iter().map(|(_, s)| s.clone()).collect::<Vec<_>>(),
        profile.constant_abs_slope,
    );

    // Transitivity is a conjugacy invariant, and the grid verdicts agree.
    let before = test_transitivity(&Map::Pl(PLMap::tent()), &rat(1, 8), 16)?;
    let after = test_transitivity(&Map::Pl(ps.limit.clone()), &rat(1, 8), 16)?;
    println!(
        "transitive before: {}, after conjugation: {}",
        before.is_transitive(),
        after.is_transitive(),
    );
    Ok(())
}
