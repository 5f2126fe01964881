//! Exact algebra on a piecewise-linear interval map: evaluation,
//! composition, fixed points, preimage trees, interval images, grid
//! transitivity, and sensitivity witnesses for the tent map.
//!
//! ```bash
//! cargo run -p ndslab --example tent_basics
//! ```

use ndslab::analysis::{test_sensitivity, test_transitivity};
use ndslab::maps::{Map, PLMap};
use ndslab::rational::{rat, Rational};
use ndslab::space::RationalInterval;

fn main() -> ndslab::Result<()> {
    let tent = PLMap::tent();

    println!("tent(1/3)   = {}", tent.evaluate(&rat(1, 3))?);
    println!("tent^2      = {:?}", tent.compose_after(&tent));
    println!("fixed points: {:?}", tent.fixed_points().points);
    println!("preimages of 2/3:  {:?}", tent.preimage(&rat(2, 3))?.points);
    println!("two-level tree of 2/3: {:?}", tent.preimage_tree(&rat(2, 3), 2)?);

    let mid = RationalInterval::new(rat(1, 4), rat(3, 4))?;
    println!("image of [1/4, 3/4]: {}", tent.image_of_interval(&mid));

    let profile = tent.slope_profile();
    println!(
        "slopes: {:?} (constant |slope| = {})",
        profile.entries.iter().map(|(_, s)| s.clone()).collect::<Vec<_>>(),
        profile.constant_abs_slope,
    );

    // Transitivity on the 1/8-grid: every ordered pair of basic intervals
    // is hit within 6 exact interval-image iterations.
    let report = test_transitivity(&Map::Pl(tent.clone()), &rat(1, 8), 16)?;
    println!(
        "transitive on the 1/8-grid: {} (worst hitting time {:?})",
        report.is_transitive(),
        report.max_hit_time(),
    );

    // Sensitivity: near every probe sits a point whose orbit separates by
    // more than 1/4.
    let probes: Vec<Rational> = (0..=16).map(|i| rat(i, 16)).collect();
    let sens = test_sensitivity(&Map::Pl(tent), &rat(1, 4), &rat(1, 16), 16, &probes)?;
    let witness = &sens.witnesses[3];
    println!(
        "sensitivity witness at x = {}: y = {}, |f^{}(x) - f^{}(y)| = {}",
        witness.x, witness.y, witness.iterations, witness.iterations, witness.separation,
    );
    Ok(())
}
