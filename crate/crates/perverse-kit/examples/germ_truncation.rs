//! Perverse truncation over a two-stratum germ, and the splitting
//! criteria for surface contractions.

use perverse_kit::forms::CurveConfig;
use perverse_kit::germ::{decompose_surface_germ, perverse_truncate_point_germ, SurfaceGerm};
use perverse_kit::linalg::RationalMatrix;
use perverse_kit::samples;

fn main() {
    // Threefold contraction of a divisor with three top classes: the
    // perverse window picks out exactly those classes one step below the
    // middle.
    let germ = samples::threefold_contraction_germ(3);
    for m in -2..=1 {
        let stalk = perverse_truncate_point_germ(&germ, m).unwrap();
        println!("perverse truncation at {m}: {stalk}");
    }

    println!();
    // Surface germs: splitting is governed by the intersection matrix.
    let cases = [
        ("blow-down of a (-1)-curve", RationalMatrix::from_i64_rows(&[&[-1]]), 0),
        ("cone over a genus-one curve", RationalMatrix::from_i64_rows(&[&[-1]]), 2),
        ("line times projective line", RationalMatrix::from_i64_rows(&[&[0]]), 0),
    ];
    for (name, matrix, b1) in cases {
        let report = decompose_surface_germ(&SurfaceGerm {
            config: CurveConfig::new(matrix).unwrap(),
            b1,
        });
        println!(
            "{name}: split {}, stalk (-2,-1) = ({}, {}), skyscraper rank {}",
            report.split, report.ic_stalk.0, report.ic_stalk.1, report.skyscraper_dim
        );
    }
}
