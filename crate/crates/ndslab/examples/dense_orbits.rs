//! Rational rotations along golden convergents converging to a (tagged)
//! irrational rotation: none of the fibers is transitive, yet the fiber
//! diagonal is dense — and the equivalence between window hitting, dense
//! diagonals, and transitivity of the limit checks out on both sides.
//!
//! ```bash
//! cargo run -p ndslab --example dense_orbits
//! ```

use ndslab::analysis::check_transitivity_equivalence;
use ndslab::conditions::{check_dostar, SweepParams};
use ndslab::nds::{circle_point, System};
use ndslab::rational::{rat, Rational};

fn main() -> ndslab::Result<()> {
    let golden = System::golden_rotations();
    let eps = rat(1, 20);
    let params = SweepParams { n_max: 64, k_max: 64, ..SweepParams::default() };

    let dostar = check_dostar(&golden, &circle_point(Rational::zero()), &eps, &params)?;
    let first_full = dostar.trace.iter().find(|(_, c)| c == &Rational::one());
    println!("(DO*) coverage trace (20-point net, eps = {eps}):");
    for (n, c) in dostar.trace.iter().filter(|(n, _)| n % 8 == 0 || *n == 1) {
        println!("  n = {n:3}: {c}");
    }
    println!("full coverage first reached at n = {:?}", first_full.map(|(n, _)| n));

    // Instance check of the equivalences under hypothesis (L): the golden
    // family answers all-true, the halving family all-false.
    for (name, sys, n_search) in
        [("golden", System::golden_rotations(), 64), ("halving", System::halving_rotations(), 32)]
    {
        let report = check_transitivity_equivalence(&sys, &eps, n_search, 16, &params)?;
        println!(
            "{name}: hitting = {:?}, dense diagonal = {:?}, limit transitive = {:?} \
             (consistent: {:?})",
            report.window_hitting.unwrap(),
            report.dense_diagonal.unwrap(),
            report.limit_transitive.unwrap(),
            report.consistent.unwrap(),
        );
    }
    Ok(())
}
