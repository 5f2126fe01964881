//! The bump-train family: a transitive piecewise-linear map with
//! infinitely many pieces whose modified variants `f_m` differ from it on
//! every index `m` — yet flipping a bump is invisible after two steps, so
//! the fiber powers never drift more than `1/2^(2m+1)` from the limit's
//! iterates and (CC*) holds.
//!
//! ```bash
//! cargo run -p ndslab --example bump_train
//! ```

use ndslab::analysis::{agreement_measure, test_transitivity};
use ndslab::conditions::{check_ccstar, SweepParams};
use ndslab::maps::{LazyPLMap, Map};
use ndslab::nds::System;
use ndslab::rational::rat;
use ndslab::space::RationalInterval;

fn main() -> ndslab::Result<()> {
    let f = LazyPLMap::bump_train();

    // Anchors and a few exact values. 13/32 is the midpoint of the first
    // left bump.
    for x in [rat(0, 1), rat(1, 4), rat(13, 32), rat(1, 2), rat(3, 4), rat(1, 1)] {
        println!("f({x}) = {}", f.evaluate(&x)?);
    }

    // Flipping bumps 2 and deeper changes the map by exactly 1/32 at the
    // bump-2 midpoint and nowhere more.
    let f2 = LazyPLMap::bump_train_modified(2)?;
    let mid = LazyPLMap::left_bump_mid(2);
    println!(
        "bump 2 flipped: |f - f_2| at its midpoint {} is {} (sup over the bump: {})",
        mid,
        (f.evaluate(&mid)? - f2.evaluate(&mid)?).abs(),
        LazyPLMap::bump_sup_distance(2),
    );

    // The flip washes out after one more step.
    println!(
        "second iterates at the midpoint: f^2 = {}, (f_2)^2 = {}",
        f.iterate(&mid, 2)?,
        f2.iterate(&mid, 2)?,
    );

    // The maps agree off the flipped bumps: total disagreement length is
    // the geometric sum 1/(3*4^m).
    for m in 1..=4usize {
        let fm = LazyPLMap::bump_train_modified(m)?;
        let a = agreement_measure(&Map::LazyPl(f), &Map::LazyPl(fm), &RationalInterval::unit())?;
        println!("agreement measure of f vs f_{m}: {a}");
    }

    // (CC*) holds for the whole family, with the closed form as
    // certificate, even though f_m != f for every m.
    let report = check_ccstar(
        &System::bump_train(),
        &rat(1, 64),
        &SweepParams { n_max: 8, k_max: 64, ..SweepParams::default() },
    )?;
    println!("(CC*) {:?} — {}", report.verdict, report.certificate.as_deref().unwrap());

    // Every piece has |slope| >= 2: the limit is transitive on the grid.
    let transitivity = test_transitivity(&Map::LazyPl(f), &rat(1, 16), 40)?;
    println!(
        "limit transitive on the 1/16-grid: {} (worst hitting time {:?})",
        transitivity.is_transitive(),
        transitivity.max_hit_time(),
    );
    Ok(())
}
