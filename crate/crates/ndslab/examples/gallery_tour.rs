//! Run every gallery entry and print a one-line digest per assertion —
//! the same self-verification the CLI exposes as `ndslab gallery run-all`.
//!
//! ```bash
//! cargo run -p ndslab --example gallery_tour --release
//! ```

use ndslab::gallery;

fn main() -> ndslab::Result<()> {
    for (id, title) in gallery::list() {
        println!("== {id}: {title}");
        let report = gallery::run(id, None)?;
        for a in &report.assertions {
            println!("  [{}] {}", if a.passed { "pass" } else { "FAIL" }, a.description);
        }
        for note in &report.notes {
            println!("  note: {note}");
        }
        assert!(report.all_passed(), "gallery entry {id} failed");
        println!();
    }
    println!("all gallery assertions hold");
    Ok(())
}
