//! Odometer truncations on truncated Cantor space: `f_n` adds 1 with carry
//! on the first `n` bits only, so every point is periodic with period
//! dividing `2^n` — yet the fiber iterates track the transitive full
//! odometer to within `1/(n+1)` forever.
//!
//! ```bash
//! cargo run -p ndslab --example adding_machine
//! ```

use ndslab::conditions::{check_ccstar, SweepParams};
use ndslab::maps::AddingMachineMap;
use ndslab::nds::{cantor_point, SequenceKind, System};
use ndslab::rational::rat;
use ndslab::space::{metric, CantorWord};

fn main() -> ndslab::Result<()> {
    // One full-width step: 111010 encodes 23 (least significant bit
    // first); adding 1 carries across the leading ones.
    let full = AddingMachineMap::full();
    let x = CantorWord::parse("111010")?;
    println!("{x} + 1 = {}", full.evaluate(&x)?.word);

    // Truncated to the first 3 bits, the word cycles with period 8.
    let f3 = AddingMachineMap::first_n(3)?;
    let mut orbit = x.clone();
    print!("(f_3)-orbit: {orbit}");
    for _ in 0..8 {
        orbit = f3.evaluate(&orbit)?.word;
        print!(" -> {orbit}");
    }
    println!();

    // Fiber vs full distances along a shared orbit stay within 1/(n+1).
    let sys = System::odometer(24)?;
    let base = cantor_point("101100110010110011001011")?;
    for n in [2usize, 4, 8] {
        let bound = rat(1, n as i64 + 1);
        let mut worst = rat(0, 1);
        let mut fiber = base.clone();
        let mut limit = base.clone();
        for _ in 0..512 {
            fiber = sys.step(n, &fiber)?.0;
            limit = sys.step_limit(&limit)?.0;
            let d = metric(&fiber, &limit)?;
            if d > worst {
                worst = d;
            }
        }
        println!("n = {n}: worst fiber-vs-limit distance over 512 steps = {worst} <= {bound}");
    }

    // The certificate behind (CC*): the first n bits agree structurally.
    let report = check_ccstar(
        &sys,
        &rat(1, 8),
        &SweepParams { n_max: 10, k_max: 64, ..SweepParams::default() },
    )?;
    println!("(CC*) {:?} — {}", report.verdict, report.certificate.as_deref().unwrap());

    // Diagonal orbits flag any step that would drop a carry past the
    // stored precision (none here).
    let record = sys.orbit(&base, 16, SequenceKind::DiagonalFiber)?;
    println!("diagonal fiber orbit computed; saturated entries: {:?}", record.saturated);
    Ok(())
}
