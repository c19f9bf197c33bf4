//! Two-operator primitive decompositions of bigraded modules, with the
//! orthogonality certificates for the twisted pairings.

use perverse_kit::lefschetz::eta_l_decomposition;
use perverse_kit::samples;

fn main() {
    for (name, package) in [
        ("tensor of two two-step strings", samples::sl2_toy_bigraded()),
        ("tensor of string-plus-singleton modules", samples::tensor_string_bigraded()),
    ] {
        println!("== {name} ==");
        let report = eta_l_decomposition(&package).unwrap();
        println!("  overall: {}", report.verdict);
        for ((i, j), primitive) in &report.primitives {
            println!("  primitive P({i},{j}): dimension {}", primitive.dim());
        }
        for s in &report.summands {
            println!(
                "  summand eta^{} l^{} P({},{}) in H^{}_{}: dim {}",
                s.eta_power, s.l_power, s.primitive.0, s.primitive.1, s.slot.0, s.slot.1, s.dim
            );
        }
        for (slot, r) in &report.slots {
            println!(
                "  slot H^{}_{}: dim {}, reconstructed {}, orthogonal {:?}, diagonal radicals {:?}",
                slot.0, slot.1, r.dim, r.reconstructed, r.orthogonal, r.diagonal_radicals
            );
        }
        println!();
    }
}
