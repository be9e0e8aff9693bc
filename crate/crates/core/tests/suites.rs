use std::time::Instant;

use cuntzlab_core::checks::{run_suite, Suite};

#[test]
fn every_suite_passes() {
    for s in Suite::ALL {
        let t = Instant::now();
        let r = run_suite(s, 2024).unwrap();
        eprintln!("{s}: {:.2?}", t.elapsed());
        for c in &r.checks {
            assert!(c.passed, "{s}: {} ({})", c.name, c.detail);
        }
    }
}
