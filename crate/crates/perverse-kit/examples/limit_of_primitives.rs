//! Algebraic limits of one-parameter families of subspaces: kernels of a
//! pencil of operators, saturated at the parameter so that nothing
//! collapses when it reaches zero.

use perverse_kit::lefschetz::{limit_primitives, PackageOperator};
use perverse_kit::linalg::{subspace_limit, ParamMatrix, RationalMatrix};
use perverse_kit::samples;

fn main() {
    // A raw pencil whose kernel basis degenerates at zero: the row
    // [eps, 1, 2].
    let constant = RationalMatrix::from_i64_rows(&[&[0, 1, 2]]);
    let direction = RationalMatrix::from_i64_rows(&[&[1, 0, 0]]);
    let pencil = ParamMatrix::pencil(&constant, &direction).unwrap();
    let kernel = pencil.param_kernel();
    println!("generic kernel columns:");
    for col in &kernel {
        let rendered: Vec<String> = col.iter().map(|p| p.to_string()).collect();
        println!("  ({})", rendered.join(", "));
    }
    let limit = subspace_limit(&kernel).unwrap();
    println!("limit at parameter zero: dimension {}", limit.dim());
    println!("{}", limit.basis());

    // The same computation packaged: the limit of the pencil kernels on
    // the middle cohomology equals the kernel of the pullback operator.
    let g = samples::surface_limit_package();
    let limit = limit_primitives(&g, 2).unwrap();
    let (_, kernel_of_l, _) = g.operator(PackageOperator::L, 2).rank_kernel_image();
    println!(
        "\nsurface model: limit dim {}, kernel of the pullback dim {}, equal: {}",
        limit.dim(),
        kernel_of_l.dim(),
        limit.equals(&kernel_of_l)
    );

    // On the fourfold model the limit is a proper subspace of the kernel:
    // the orthogonal complement of the lifted divisor classes.
    let p = samples::fourfold_package();
    let limit = limit_primitives(p.graded(), 4).unwrap();
    let (_, kernel_of_l, _) = p
        .graded()
        .operator(PackageOperator::L, 4)
        .rank_kernel_image();
    println!(
        "fourfold model: limit dim {} inside a kernel of dim {}",
        limit.dim(),
        kernel_of_l.dim()
    );
}
