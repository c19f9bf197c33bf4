//! Intersection-form criteria for contracting curves on a surface:
//! negative definiteness for contractions to a point, and the quotient
//! form test for fibers of a family over a disk.

use perverse_kit::forms::{
    grauert_check, kodaira_cycle_config, zariski_check, CurveConfig, FiberCycle,
};
use perverse_kit::linalg::{rat, RationalMatrix};

fn main() {
    // A single curve of self-intersection -1 contracts.
    let blowdown = CurveConfig::new(RationalMatrix::from_i64_rows(&[&[-1]])).unwrap();
    let report = grauert_check(&blowdown);
    println!(
        "(-1)-curve: {} (signature {}, class map iso: {})",
        report.verdict, report.definiteness.signature, report.class_map_iso
    );

    // Two curves meeting once, both of self-intersection -2.
    let chain = CurveConfig::new(RationalMatrix::from_i64_rows(&[&[-2, 1], &[1, -2]])).unwrap();
    println!("A_2 chain: {}", grauert_check(&chain).verdict);

    // A fiber-like curve of self-intersection zero does not contract to a
    // point; its class map degenerates.
    let fiber = CurveConfig::new(RationalMatrix::from_i64_rows(&[&[0]])).unwrap();
    let report = grauert_check(&fiber);
    println!(
        "fiber-like curve: {} (class map iso: {})",
        report.verdict, report.class_map_iso
    );

    // The same curve is a perfectly good fiber of a family over a disk.
    println!();
    for n in 1..=6 {
        let cycle = FiberCycle::new(kodaira_cycle_config(n), vec![rat(1); n]).unwrap();
        let report = zariski_check(&cycle).unwrap();
        println!(
            "cycle fiber with {n} component(s): {}, class map rank {}, quotient signature {}",
            report.verdict, report.rank_cl, report.quotient_signature
        );
    }
}
