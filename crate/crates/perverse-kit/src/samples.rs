//! Worked model packages used by the examples, the bundled scenarios and
//! the test suites. All of them are direct sums of Lefschetz strings plus
//! decoupled divisor-class blocks, small enough to verify by hand.
//!
//! Naming: `b` entries are the string of powers of the pullback class,
//! `delta` entries the divisor classes killed by the pullback.

use crate::complexes::ChainComplex;
use crate::germ::GermDataset;
use crate::lefschetz::{BigradedPackage, GradedPackage, ResolutionPackage3, ResolutionPackage4};
use crate::linalg::RationalMatrix;
use std::collections::BTreeMap;

fn m(rows: &[&[i64]]) -> RationalMatrix {
    RationalMatrix::from_i64_rows(rows)
}

fn empty(rows: usize, cols: usize) -> RationalMatrix {
    RationalMatrix::zeros(rows, cols)
}

/// Product of two lines: middle cohomology of rank two, the ample class
/// the sum of the two rulings. Both operators coincide.
pub fn quadric_surface_package() -> GradedPackage {
    let eta = vec![m(&[&[1], &[1]]), empty(0, 0), m(&[&[1, 1]])];
    GradedPackage::new(
        2,
        vec![1, 0, 2, 0, 1],
        eta.clone(),
        eta,
        vec![
            m(&[&[1]]),
            empty(0, 0),
            m(&[&[0, 1], &[1, 0]]),
            empty(0, 0),
            m(&[&[1]]),
        ],
    )
    .expect("valid package")
}

/// Surface-like package whose pencil kernels collapse at the parameter's
/// zero, exercising the saturation step of the subspace limit: the
/// pullback operator on the middle degree is `[0 1 2]`, the ample one
/// `[1 0 0]`.
pub fn surface_limit_package() -> GradedPackage {
    GradedPackage::new(
        2,
        vec![1, 0, 3, 0, 1],
        vec![m(&[&[1], &[0], &[0]]), empty(0, 0), m(&[&[1, 0, 0]])],
        vec![m(&[&[0], &[1], &[0]]), empty(0, 0), m(&[&[0, 1, 2]])],
        vec![
            m(&[&[1]]),
            empty(0, 0),
            m(&[&[1, 0, 0], &[0, 1, 2], &[0, 2, 0]]),
            empty(0, 0),
            m(&[&[1]]),
        ],
    )
    .expect("valid package")
}

/// Threefold resolution with one exceptional divisor class `delta` of
/// self-triple-product `-2`, no odd cohomology. The ample class is
/// `b + delta`.
pub fn threefold_r1_package() -> ResolutionPackage3 {
    let g = GradedPackage::new(
        3,
        vec![1, 0, 2, 0, 2, 0, 1],
        vec![
            m(&[&[1], &[1]]),
            empty(0, 0),
            m(&[&[1, 0], &[0, 1]]),
            empty(0, 0),
            m(&[&[1, -2]]),
        ],
        vec![
            m(&[&[1], &[0]]),
            empty(0, 0),
            m(&[&[1, 0], &[0, 0]]),
            empty(0, 0),
            m(&[&[1, 0]]),
        ],
        vec![
            m(&[&[1]]),
            empty(0, 0),
            m(&[&[1, 0], &[0, -2]]),
            empty(0, 0),
            m(&[&[1, 0], &[0, -2]]),
            empty(0, 0),
            m(&[&[1]]),
        ],
    )
    .expect("valid package");
    ResolutionPackage3::new(
        g,
        m(&[&[0], &[1]]),
        m(&[&[0, -2]]),
        empty(0, 0),
        m(&[&[-2]]),
        empty(0, 0),
    )
    .expect("valid resolution package")
}

/// Threefold resolution whose divisor also carries odd homology of rank
/// two, sitting inside a four-dimensional middle cohomology with the
/// standard symplectic pairing.
pub fn threefold_h3_package() -> ResolutionPackage3 {
    let q3 = m(&[
        &[0, 0, 1, 0],
        &[0, 0, 0, 1],
        &[-1, 0, 0, 0],
        &[0, -1, 0, 0],
    ]);
    let g = GradedPackage::new(
        3,
        vec![1, 0, 2, 4, 2, 0, 1],
        vec![
            m(&[&[1], &[1]]),
            empty(4, 0),
            m(&[&[1, 0], &[0, 1]]),
            empty(0, 4),
            m(&[&[1, -2]]),
        ],
        vec![
            m(&[&[1], &[0]]),
            empty(4, 0),
            m(&[&[1, 0], &[0, 0]]),
            empty(0, 4),
            m(&[&[1, 0]]),
        ],
        vec![
            m(&[&[1]]),
            empty(0, 0),
            m(&[&[1, 0], &[0, -2]]),
            q3,
            m(&[&[1, 0], &[0, -2]]),
            empty(0, 0),
            m(&[&[1]]),
        ],
    )
    .expect("valid package");
    ResolutionPackage3::new(
        g,
        m(&[&[0], &[1]]),
        m(&[&[0, -2]]),
        m(&[&[1, 0], &[0, 0], &[0, 1], &[0, 0]]),
        m(&[&[-2]]),
        m(&[&[0, 1], &[-1, 0]]),
    )
    .expect("valid resolution package")
}

/// Small resolution: nothing is contracted to the point in even degrees,
/// both class maps empty.
pub fn threefold_small_resolution_package() -> ResolutionPackage3 {
    let ones = || {
        vec![
            m(&[&[1]]),
            empty(0, 0),
            m(&[&[1]]),
            empty(0, 0),
            m(&[&[1]]),
        ]
    };
    let g = GradedPackage::new(
        3,
        vec![1, 0, 1, 0, 1, 0, 1],
        ones(),
        ones(),
        vec![
            m(&[&[1]]),
            empty(0, 0),
            m(&[&[1]]),
            empty(0, 0),
            m(&[&[1]]),
            empty(0, 0),
            m(&[&[1]]),
        ],
    )
    .expect("valid package");
    ResolutionPackage3::new(
        g,
        empty(1, 0),
        empty(0, 1),
        empty(0, 0),
        empty(0, 0),
        empty(0, 0),
    )
    .expect("valid resolution package")
}

/// Two divisor classes, one of them invisible to the ample class: the
/// hyperplane-section form degenerates, so no decomposition certificate
/// exists.
pub fn threefold_degenerate_package() -> ResolutionPackage3 {
    let eta2 = m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 0]]);
    let l2 = m(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, 0]]);
    let q2 = m(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, -1]]);
    let g = GradedPackage::new(
        3,
        vec![1, 0, 3, 0, 3, 0, 1],
        vec![
            m(&[&[1], &[0], &[0]]),
            empty(0, 0),
            eta2,
            empty(0, 0),
            m(&[&[1, 0, 0]]),
        ],
        vec![
            m(&[&[1], &[0], &[0]]),
            empty(0, 0),
            l2,
            empty(0, 0),
            m(&[&[1, 0, 0]]),
        ],
        vec![
            m(&[&[1]]),
            empty(0, 0),
            q2.clone(),
            empty(0, 0),
            q2,
            empty(0, 0),
            m(&[&[1]]),
        ],
    )
    .expect("valid package");
    ResolutionPackage3::new(
        g,
        m(&[&[0, 0], &[1, 0], &[0, 1]]),
        m(&[&[0, -1, 0], &[0, 0, -1]]),
        empty(0, 0),
        m(&[&[-1, 0], &[0, 0]]),
        empty(0, 0),
    )
    .expect("valid resolution package")
}

/// Fourfold resolution with one divisor-class tower `delta, eta delta,
/// eta^2 delta` and one extra middle primitive class, so the kernel of the
/// pullback on the middle degree exceeds the Betti-number difference by
/// the divisor contribution.
pub fn fourfold_package() -> ResolutionPackage4 {
    let g = GradedPackage::new(
        4,
        vec![1, 0, 2, 0, 3, 0, 2, 0, 1],
        vec![
            m(&[&[1], &[0]]),
            empty(0, 0),
            m(&[&[1, 0], &[0, 1], &[0, 0]]),
            empty(0, 0),
            m(&[&[1, 0, 0], &[0, 1, 0]]),
            empty(0, 0),
            m(&[&[1, 0]]),
        ],
        vec![
            m(&[&[1], &[0]]),
            empty(0, 0),
            m(&[&[1, 0], &[0, 0], &[0, 0]]),
            empty(0, 0),
            m(&[&[1, 0, 0], &[0, 0, 0]]),
            empty(0, 0),
            m(&[&[1, 0]]),
        ],
        vec![
            m(&[&[1]]),
            empty(0, 0),
            m(&[&[1, 0], &[0, -1]]),
            empty(0, 0),
            m(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, 1]]),
            empty(0, 0),
            m(&[&[1, 0], &[0, -1]]),
            empty(0, 0),
            m(&[&[1]]),
        ],
    )
    .expect("valid package");
    ResolutionPackage4::new(
        g,
        m(&[&[0], &[1]]),
        empty(0, 0),
        empty(0, 0),
        m(&[&[0, -1]]),
        m(&[&[-1]]),
    )
    .expect("valid resolution package")
}

/// Fourfold with no exceptional divisor: the excess formula reduces to the
/// Betti-number difference.
pub fn fourfold_no_divisor_package() -> ResolutionPackage4 {
    let ones = || (0..7).map(|k| if k % 2 == 0 { m(&[&[1]]) } else { empty(0, 0) }).collect();
    let g = GradedPackage::new(
        4,
        vec![1, 0, 1, 0, 1, 0, 1, 0, 1],
        ones(),
        ones(),
        (0..9).map(|k| if k % 2 == 0 { m(&[&[1]]) } else { empty(0, 0) }).collect(),
    )
    .expect("valid package");
    ResolutionPackage4::new(g, empty(1, 0), empty(0, 0), empty(0, 0), empty(0, 1), empty(0, 0))
        .expect("valid resolution package")
}

/// Fourfold with the pullback operator identically zero: the excess
/// hypothesis fails and the comparison must report that rather than a
/// counterexample.
pub fn fourfold_l_zero_package() -> ResolutionPackage4 {
    let eta = || (0..7).map(|k| if k % 2 == 0 { m(&[&[1]]) } else { empty(0, 0) }).collect();
    let zeros = (0..7)
        .map(|k| if k % 2 == 0 { empty(1, 1) } else { empty(0, 0) })
        .collect();
    let g = GradedPackage::new(
        4,
        vec![1, 0, 1, 0, 1, 0, 1, 0, 1],
        eta(),
        zeros,
        (0..9).map(|k| if k % 2 == 0 { m(&[&[1]]) } else { empty(0, 0) }).collect(),
    )
    .expect("valid package");
    ResolutionPackage4::new(g, empty(1, 0), empty(0, 0), empty(0, 0), empty(0, 1), empty(0, 0))
        .expect("valid resolution package")
}

/// Tensor of two strings of length two, one for each operator: a single
/// joint primitive generating four one-dimensional summands.
pub fn sl2_toy_bigraded() -> BigradedPackage {
    let mut dims = BTreeMap::new();
    for slot in [(0i64, -1i64), (2, -1), (2, 1), (4, 1)] {
        dims.insert(slot, 1usize);
    }
    let mut eta = BTreeMap::new();
    eta.insert((0i64, -1i64), m(&[&[1]]));
    eta.insert((2, -1), m(&[&[1]]));
    let mut l = BTreeMap::new();
    l.insert((0i64, -1i64), m(&[&[1]]));
    l.insert((2, 1), m(&[&[1]]));
    let mut forms = BTreeMap::new();
    for slot in [(0i64, -1i64), (2, -1), (2, 1), (4, 1)] {
        forms.insert(slot, m(&[&[1]]));
    }
    BigradedPackage::new(2, dims, eta, l, forms).expect("valid bigraded package")
}

/// Tensor of two string-plus-singleton modules: four joint primitives and
/// a four-dimensional middle slot carrying four distinct summands, the
/// smallest genuinely crowded orthogonality test.
///
/// Basis orders: level rows by the first factor `x0, x1|y, x2`, columns by
/// the second `s0, s1|t, s2`.
pub fn tensor_string_bigraded() -> BigradedPackage {
    let mut dims = BTreeMap::new();
    for (slot, d) in [
        ((-2i64, -2i64), 1usize),
        ((0, -2), 2),
        ((2, -2), 1),
        ((0, 0), 2),
        ((2, 0), 4),
        ((4, 0), 2),
        ((2, 2), 1),
        ((4, 2), 2),
        ((6, 2), 1),
    ] {
        dims.insert(slot, d);
    }
    let mut eta = BTreeMap::new();
    eta.insert((-2i64, -2i64), m(&[&[1], &[0]]));
    eta.insert((0, -2), m(&[&[1, 0], &[0, 1], &[0, 0], &[0, 0]]));
    eta.insert((2, -2), m(&[&[1], &[0]]));
    eta.insert((0, 0), m(&[&[1, 0]]));
    eta.insert((2, 0), m(&[&[1, 0, 0, 0], &[0, 1, 0, 0]]));
    eta.insert((4, 0), m(&[&[1, 0]]));
    let mut l = BTreeMap::new();
    l.insert((-2i64, -2i64), m(&[&[1], &[0]]));
    l.insert((0, -2), m(&[&[1, 0]]));
    l.insert((0, 0), m(&[&[1, 0], &[0, 0], &[0, 1], &[0, 0]]));
    l.insert((2, 0), m(&[&[1, 0, 0, 0], &[0, 0, 1, 0]]));
    l.insert((2, 2), m(&[&[1], &[0]]));
    l.insert((4, 2), m(&[&[1, 0]]));
    let mut forms = BTreeMap::new();
    forms.insert((-2i64, -2i64), m(&[&[1]]));
    forms.insert((0, -2), m(&[&[-1, 0], &[0, 1]]));
    forms.insert((0, 0), m(&[&[-1, 0], &[0, 1]]));
    forms.insert(
        (2, 0),
        m(&[&[1, 0, 0, 0], &[0, -1, 0, 0], &[0, 0, -1, 0], &[0, 0, 0, 1]]),
    );
    BigradedPackage::new(2, dims, eta, l, forms).expect("valid bigraded package")
}

/// Bigraded shadow of the fourfold resolution model: the divisor class
/// sits two perverse levels down, its hyperplane lifts climb back up, and
/// the middle slot splits into exactly three summands: the lifted divisor
/// class, the extra middle primitive, and the image of the pullback
/// operator.
pub fn fourfold_bigraded() -> BigradedPackage {
    let mut dims = BTreeMap::new();
    for (slot, d) in [
        ((0i64, 0i64), 1usize),
        ((2, -2), 1),
        ((2, 0), 1),
        ((4, 0), 3),
        ((6, 0), 1),
        ((6, 2), 1),
        ((8, 0), 1),
    ] {
        dims.insert(slot, d);
    }
    let mut eta = BTreeMap::new();
    eta.insert((2i64, -2i64), m(&[&[0], &[1], &[0]]));
    eta.insert((4, 0), m(&[&[0, 1, 0]]));
    let mut l = BTreeMap::new();
    l.insert((0i64, 0i64), m(&[&[1]]));
    l.insert((2, 0), m(&[&[1], &[0], &[0]]));
    l.insert((4, 0), m(&[&[1, 0, 0]]));
    l.insert((6, 0), m(&[&[1]]));
    let mut forms = BTreeMap::new();
    forms.insert((0i64, 0i64), m(&[&[1]]));
    forms.insert((2, -2), m(&[&[-1]]));
    forms.insert((2, 0), m(&[&[1]]));
    forms.insert((4, 0), m(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, 1]]));
    BigradedPackage::new(4, dims, eta, l, forms).expect("valid bigraded package")
}

/// Base data of the product of two spheres with the (1,1) Euler class:
/// the circle bundle over it is the link of the simplest threefold double
/// point.
pub fn quadric_link_base() -> (Vec<usize>, Vec<RationalMatrix>) {
    (
        vec![1, 0, 2, 0, 1],
        vec![m(&[&[1], &[1]]), empty(0, 0), m(&[&[1, 1]])],
    )
}

/// Threefold contraction germ whose divisor contributes `r` classes in
/// its top and middle cohomology; `r = 0` is the isomorphism germ.
pub fn threefold_contraction_germ(r: usize) -> GermDataset {
    if r == 0 {
        let stalk = ChainComplex::with_zero_differentials(-3, vec![1]);
        let link = ChainComplex::with_zero_differentials(-3, vec![1, 0, 0, 0, 0, 1]);
        let attach = BTreeMap::from([(-3, RationalMatrix::identity(1))]);
        return GermDataset::new(3, stalk, link, attach).expect("valid germ");
    }
    let stalk = ChainComplex::with_zero_differentials(-3, vec![1, 0, r, 0, r]);
    let link = ChainComplex::with_zero_differentials(-3, vec![1, 0, 0, 0, 0, 0]);
    let attach = BTreeMap::from([(-3, RationalMatrix::identity(1))]);
    GermDataset::new(3, stalk, link, attach).expect("valid germ")
}
