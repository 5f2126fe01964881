//! Eventual equality under (CC*): for a transitive constant-|slope| PL
//! limit, fiber maps that keep disagreeing with the limit must violate
//! (CC*) — the checker either finds the settling index `n0` or produces an
//! exact (CC*) violation witness. Failing to find either would be a
//! structural-law failure, which the report surfaces loudly.
//!
//! ```bash
//! cargo run -p ndslab --example eventual_equality
//! ```

use ndslab::analysis::check_eventual_equality;
use ndslab::conditions::{verify_ccstar_witness, SweepParams};
use ndslab::maps::PLMap;
use ndslab::nds::{add_bump, PerturbationRule, System};
use ndslab::rational::rat;
use ndslab::space::RationalInterval;

fn main() -> ndslab::Result<()> {
    let tent = PLMap::tent();
    let support = RationalInterval::new(rat(9, 64), rat(11, 64))?;
    let eps = rat(1, 8);
    let params = SweepParams { n_max: 32, k_max: 4096, ..SweepParams::default() };

    // A tail-constant family: three bumped maps, then the tent forever.
    let bumped = add_bump(&tent, &support, &rat(1, 32))?;
    let sys = System::interval_prefix(vec![bumped.clone(), bumped.clone(), bumped], tent.clone());
    let report = check_eventual_equality(&sys, &eps, &params)?;
    println!("tail-constant family: f_n = f from n0 = {:?}", report.minimal_n0.unwrap());

    // A persistent family: a bump of height 1/8 / 2^n at every index. The
    // family converges uniformly to the tent but never equals it, so a
    // (CC*) violation witness must exist — and is found and re-verified
    // exactly.
    let rule = PerturbationRule { support, amp: rat(1, 8) };
    let sys = System::interval_perturbed(tent, rule)?;
    let report = check_eventual_equality(&sys, &eps, &params)?;
    println!(
        "persistent family: settles = {}, structural-law failure = {}",
        report.minimal_n0.is_some(),
        report.theorem_check_failure,
    );
    let witness = report.ccstar_witness.expect("a violation witness must exist");
    println!(
        "(CC*) violation witness: fiber n = {}, iterate k = {}, x = {}, distance {} >= {eps}",
        witness.n.unwrap(),
        witness.k.unwrap(),
        witness.point.clone().unwrap(),
        witness.value,
    );
    assert!(verify_ccstar_witness(&sys, &witness, &eps)?);
    println!("witness re-verified by exact re-evaluation");
    Ok(())
}
