//! Runs every postulate suite for one strategy and prints the tallies.
//!
//! `cargo run --release --example suites -- maxichoice 500 7`

use std::time::Instant;

use choice_revision::postulates::{run_suite, GeneratorConfig, Theorem};
use choice_revision::{Reasoner, StrategyKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let strategy: StrategyKind = args.next().unwrap_or_else(|| "full".into()).parse()?;
    let num = args.next().map(|s| s.parse()).transpose()?.unwrap_or(200);
    let seed = args.next().map(|s| s.parse()).transpose()?.unwrap_or(1);
    let config = GeneratorConfig {
        num,
        seed,
        strategy,
        ..GeneratorConfig::default()
    };
    let reasoner = Reasoner::default();
    if let Some(id) = args.next() {
        let theorem: Theorem = id.split('/').next().unwrap_or_default().parse()?;
        let name = id.split('/').nth(1);
        println!("{}", run_suite(&reasoner, theorem, &config, name)?.to_json());
        return Ok(());
    }
    for theorem in Theorem::ALL {
        let start = Instant::now();
        let summary = run_suite(&reasoner, theorem, &config, None)?;
        println!(
            "{theorem} {strategy}: holds {} violated {} inapplicable {} known {} ({:.2?})",
            summary.holds,
            summary.violated,
            summary.inapplicable,
            summary.known_discrepancies,
            start.elapsed()
        );
        for t in summary.postulates.iter().filter(|t| t.violated > 0) {
            let op = t.operator.map(|o| o.to_string()).unwrap_or_default();
            println!(
                "    {} [{op}] violated {} of {}",
                t.postulate, t.violated, summary.instances
            );
        }
    }
    Ok(())
}
