//! Stalks of the intersection cohomology complex at an isolated threefold
//! double point, computed from the topology of its link: the circle
//! bundle over a product of two spheres with Euler class (1,1).

use perverse_kit::germ::{gysin_s1_bundle, ic_isolated, LinkCohomology};
use perverse_kit::samples;

fn main() {
    let (base_dims, euler_maps) = samples::quadric_link_base();
    let link_dims = gysin_s1_bundle(&base_dims, &euler_maps).unwrap();
    println!("link cohomology dimensions: {link_dims:?}");

    let link = LinkCohomology::new(3, link_dims).unwrap();
    let stalk = ic_isolated(&link);
    println!("intersection cohomology stalk at the point:");
    for (degree, dim) in stalk.cohomology_dims() {
        println!("  degree {degree}: rank {dim}");
    }
    println!("(one line in degree -1: the singularity admits a small resolution by a curve)");

    // For comparison: the cone over a genus-one curve in the surface case.
    let cone = LinkCohomology::new(2, vec![1, 2, 2, 1]).unwrap();
    println!("\ncone over a genus-one curve, stalk:");
    for (degree, dim) in ic_isolated(&cone).cohomology_dims() {
        println!("  degree {degree}: rank {dim}");
    }
}
