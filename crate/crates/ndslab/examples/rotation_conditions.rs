//! The halving-rotation family: fibers rotate by `1/2^n` and converge
//! uniformly to the identity. Along the diagonal the window compositions
//! and fiber powers stay at exactly computable distances from the
//! identity, making this the canonical family where (L), (L*), and (CC)
//! hold while (CC*), (DO), and (DO*) all fail.
//!
//! ```bash
//! cargo run -p ndslab --example rotation_conditions
//! ```

use ndslab::conditions::{check_cc, check_ccstar, check_dostar, check_l, check_lstar, SweepParams};
use ndslab::nds::{circle_point, System};
use ndslab::rational::{rat, Rational};

fn main() -> ndslab::Result<()> {
    let sys = System::halving_rotations();
    let params = SweepParams { n_max: 12, k_max: 4096, ..SweepParams::default() };

    let lstar = check_lstar(&sys, &params)?;
    println!("(L*) {:?} — certificate: {}", lstar.verdict, lstar.certificate.as_deref().unwrap());
    for (n, v) in lstar.trace.iter().take(6) {
        println!("  D((f_{n})^{n}, id) = {v}");
    }

    let l = check_l(&sys, &params)?;
    println!("(L)  {:?} — certificate: {}", l.verdict, l.certificate.as_deref().unwrap());
    for (n, v) in l.trace.iter().take(6) {
        println!("  D(f_{n}^{n}, id) = {v}");
    }

    let eps = rat(1, 8);
    let cc = check_cc(&sys, &eps, &SweepParams { k_max: 512, ..params.clone() })?;
    println!("(CC) at eps = {eps}: {:?} — {}", cc.verdict, cc.certificate.as_deref().unwrap());

    let ccstar = check_ccstar(&sys, &eps, &params)?;
    println!("(CC*) at eps = {eps}: {:?}", ccstar.verdict);
    for w in ccstar.witnesses.iter().take(4) {
        println!(
            "  fiber {}: (f_n)^{} is a half turn — distance {}",
            w.n.unwrap(),
            w.k.unwrap(),
            w.value,
        );
    }

    // The fiber diagonal (f_n)^n(0) = n/2^n never leaves one half circle,
    // so density fails with a concrete uncovered witness.
    let dostar = check_dostar(&sys, &circle_point(Rational::zero()), &eps, &params)?;
    println!(
        "(DO*) at eps = {eps}: {:?}, coverage {}, uncovered witness {}",
        dostar.verdict,
        dostar.trace.last().unwrap().1,
        dostar.witness.unwrap().point.unwrap(),
    );
    Ok(())
}
