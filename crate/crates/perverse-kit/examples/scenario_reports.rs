//! Driving the scenario machinery programmatically: evaluate an inline
//! scenario, then sweep the bundled corpus and print the deterministic
//! aggregate hash.

use perverse_kit::scenario::{check_all, run_value};
use serde_json::json;
use std::path::Path;

fn main() {
    let inline = json!({
        "meta": {
            "name": "inline_blowdown",
            "description": "a contractible configuration, built in memory"
        },
        "kind": "grauert",
        "payload": { "curve_config": { "matrix": [[-2, 1], [1, -2]] } },
    });
    let outcome = run_value(&inline).unwrap();
    println!("inline scenario: {}", outcome.status());
    for check in &outcome.checks {
        println!("  [{}] {}", check.status, check.id);
    }
    println!("report: {:#}", outcome.report(0));

    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios");
    let aggregate = check_all(&dir, 4).unwrap();
    println!(
        "\nbundled corpus: {} scenario(s), all ok: {}",
        aggregate.entries.len(),
        aggregate.all_ok()
    );
    println!("aggregate hash: {}", aggregate.report()["content_hash"]);
}
