use super::package::{GradedPackage, PackageOperator};
use super::LefschetzError;
use crate::linalg::{RationalMatrix, Subspace};
use crate::Verdict;
use std::collections::BTreeMap;

/// Cohomology package of a threefold resolution contracting a divisor to
/// an isolated point: the graded package of the total space, the class
/// and restriction maps of the divisor in the middle degrees, the
/// hyperplane-section intersection form on the divisor classes, and the
/// intersection pairing on the odd divisor homology.
#[derive(Debug, Clone)]
pub struct ResolutionPackage3 {
    g: GradedPackage,
    /// Classes of divisor components (and their degree-4 homology) in `H^2`.
    c4: RationalMatrix,
    /// Restriction `H^4 -> H^4(D)`.
    r4: RationalMatrix,
    /// Odd class map `H_3(D) -> H^3`.
    c3: RationalMatrix,
    /// Intersection form `eta . [D_i] . [D_j]` on the divisor classes.
    eta_cap: RationalMatrix,
    /// Intersection pairing on the image of the odd class map.
    h3_pairing: RationalMatrix,
}

impl ResolutionPackage3 {
    pub fn new(
        g: GradedPackage,
        c4: RationalMatrix,
        r4: RationalMatrix,
        c3: RationalMatrix,
        eta_cap: RationalMatrix,
        h3_pairing: RationalMatrix,
    ) -> Result<Self, LefschetzError> {
        let bad = |msg: String| Err(LefschetzError::InvariantViolated(msg));
        if g.n() != 3 {
            return bad("threefold package needs n = 3".into());
        }
        let r = c4.cols();
        let h3 = c3.cols();
        if c4.rows() != g.dim_at(2) {
            return bad("c4 must land in H^2".into());
        }
        if r4.rows() != r || r4.cols() != g.dim_at(4) {
            return bad("r4 must map H^4 onto the divisor classes".into());
        }
        if c3.rows() != g.dim_at(3) {
            return bad("c3 must land in H^3".into());
        }
        if eta_cap.rows() != r || eta_cap.cols() != r {
            return bad("eta_cap must be square on the divisor classes".into());
        }
        if h3_pairing.rows() != h3 || h3_pairing.cols() != h3 {
            return bad("h3_pairing must be square on H_3(D)".into());
        }
        // Divisor classes die under the pullback operator.
        if !g.operator(PackageOperator::L, 2).mul(&c4)?.is_zero() {
            return bad("L o c4 != 0: divisor classes must be L-primitive".into());
        }
        if c3.rank() != h3 {
            return bad("c3 must be injective".into());
        }
        // eta_cap must be the pairing of eta-lifted divisor classes.
        let lifted = g.operator(PackageOperator::Eta, 2).mul(&c4)?;
        let derived = lifted.transpose().mul(g.pairing(4))?.mul(&c4)?;
        if derived != eta_cap {
            return bad("eta_cap disagrees with the package pairing".into());
        }
        // h3_pairing must be the restriction of the odd duality pairing.
        let derived = c3.transpose().mul(g.pairing(3))?.mul(&c3)?;
        if derived != h3_pairing {
            return bad("h3_pairing disagrees with the package pairing".into());
        }
        // r4 must cut out the same kernel as pairing against the divisor
        // classes.
        let dual = c4.transpose().mul(g.pairing(2))?;
        let stacked = r4.vstack(&dual)?;
        if r4.rank() != dual.rank() || stacked.rank() != dual.rank() {
            return bad("r4 is not dual to the divisor classes".into());
        }
        Ok(ResolutionPackage3 {
            g,
            c4,
            r4,
            c3,
            eta_cap,
            h3_pairing,
        })
    }

    pub fn graded(&self) -> &GradedPackage {
        &self.g
    }

    pub fn c4(&self) -> &RationalMatrix {
        &self.c4
    }

    pub fn r4(&self) -> &RationalMatrix {
        &self.r4
    }

    pub fn c3(&self) -> &RationalMatrix {
        &self.c3
    }

    pub fn eta_cap(&self) -> &RationalMatrix {
        &self.eta_cap
    }

    pub fn h3_pairing(&self) -> &RationalMatrix {
        &self.h3_pairing
    }

    pub fn betti(&self, k: usize) -> usize {
        self.g.dim_at(k)
    }
}

/// Skyscraper and open-stratum summands of the pushforward, by perverse
/// degree.
#[derive(Debug, Clone)]
pub struct ThreefoldSummands {
    /// Perverse degree -1: divisor homology skyscraper.
    pub h4d_dim: usize,
    /// Perverse degree +1: divisor cohomology skyscraper.
    pub h4d_dual_dim: usize,
    /// Perverse degree 0 skyscraper part: odd divisor homology.
    pub h3d_dim: usize,
}

/// Perverse filtration data of a threefold resolution package.
#[derive(Debug, Clone)]
pub struct PerverseFiltration3 {
    /// The only nontrivial negative step: divisor classes inside `H^2`.
    pub h2_below: Subspace,
    /// The only nontrivial positive step: `ker(H^4 -> H^4(D))`.
    pub h4_at_zero: Subspace,
    /// Dimensions of the graded pieces, keyed by (degree, perverse level).
    pub graded_dims: BTreeMap<(usize, i64), usize>,
    /// Intersection cohomology dimensions in degrees 0..6.
    pub ih_dims: [usize; 7],
    /// Degeneration criterion: the hyperplane-section form on the divisor
    /// classes is nondegenerate.
    pub deligne: Verdict,
    pub summands: ThreefoldSummands,
}

/// Computes the perverse filtration, its graded dimensions, the
/// intersection cohomology table and the degeneration verdict.
pub fn perverse_filtration_3fold(
    p: &ResolutionPackage3,
) -> Result<PerverseFiltration3, LefschetzError> {
    let g = p.graded();
    let rank_c4 = p.c4().rank();
    let rank_c3 = p.c3().rank();
    let (_, ker_r4, _) = p.r4().rank_kernel_image();
    let h2_below = Subspace::span(g.dim_at(2), &p.c4().clone())?;
    let b: Vec<usize> = (0..=6).map(|k| g.dim_at(k)).collect();

    let mut graded_dims = BTreeMap::new();
    graded_dims.insert((2, -1), rank_c4);
    graded_dims.insert((2, 0), b[2] - rank_c4);
    graded_dims.insert((4, 0), ker_r4.dim());
    graded_dims.insert((4, 1), b[4] - ker_r4.dim());
    for k in [0usize, 1, 3, 5, 6] {
        graded_dims.insert((k, 0), b[k]);
    }

    let ih_dims = [
        b[0],
        b[1],
        b[2] - rank_c4,
        b[3] - rank_c3,
        b[4] - rank_c4,
        b[5],
        b[6],
    ];

    Ok(PerverseFiltration3 {
        h2_below,
        h4_at_zero: ker_r4,
        graded_dims,
        ih_dims,
        deligne: Verdict::from_bool(p.eta_cap().is_invertible()),
        summands: ThreefoldSummands {
            h4d_dim: p.c4().cols(),
            h4d_dual_dim: p.c4().cols(),
            h3d_dim: p.c3().cols(),
        },
    })
}

/// Cohomology package of a fourfold resolution with one exceptional
/// divisor contracted to a point.
#[derive(Debug, Clone)]
pub struct ResolutionPackage4 {
    g: GradedPackage,
    /// Classes of `H_6(D)` in `H^2`.
    c6: RationalMatrix,
    /// Classes of `H_5(D)` in `H^3`.
    c5: RationalMatrix,
    /// Restrictions in the dual degrees.
    r5: RationalMatrix,
    r6: RationalMatrix,
    /// Double hyperplane-section form on the divisor classes.
    eta2_cap: RationalMatrix,
}

impl ResolutionPackage4 {
    pub fn new(
        g: GradedPackage,
        c6: RationalMatrix,
        c5: RationalMatrix,
        r5: RationalMatrix,
        r6: RationalMatrix,
        eta2_cap: RationalMatrix,
    ) -> Result<Self, LefschetzError> {
        let bad = |msg: String| Err(LefschetzError::InvariantViolated(msg));
        if g.n() != 4 {
            return bad("fourfold package needs n = 4".into());
        }
        if c6.rows() != g.dim_at(2) || c5.rows() != g.dim_at(3) {
            return bad("class maps must land in H^2 and H^3".into());
        }
        if r6.rows() != c6.cols() || r6.cols() != g.dim_at(6) {
            return bad("r6 must map H^6 onto the divisor classes".into());
        }
        if r5.rows() != c5.cols() || r5.cols() != g.dim_at(5) {
            return bad("r5 must map H^5 onto the odd divisor classes".into());
        }
        if !g.operator(PackageOperator::L, 2).mul(&c6)?.is_zero() {
            return bad("L o c6 != 0: divisor classes must be L-primitive".into());
        }
        let eta2 = g
            .operator(PackageOperator::Eta, 4)
            .mul(&g.operator(PackageOperator::Eta, 2))?;
        let derived = eta2.mul(&c6)?.transpose().mul(g.pairing(6))?.mul(&c6)?;
        if derived != eta2_cap {
            return bad("eta2_cap disagrees with the package pairing".into());
        }
        Ok(ResolutionPackage4 {
            g,
            c6,
            c5,
            r5,
            r6,
            eta2_cap,
        })
    }

    pub fn graded(&self) -> &GradedPackage {
        &self.g
    }

    pub fn c6(&self) -> &RationalMatrix {
        &self.c6
    }

    pub fn c5(&self) -> &RationalMatrix {
        &self.c5
    }

    pub fn r5(&self) -> &RationalMatrix {
        &self.r5
    }

    pub fn r6(&self) -> &RationalMatrix {
        &self.r6
    }

    pub fn eta2_cap(&self) -> &RationalMatrix {
        &self.eta2_cap
    }
}

/// Two computations of the middle primitive excess for a fourfold.
#[derive(Debug, Clone)]
pub struct ExcessReport {
    /// Dimension of `ker(L: H^4 -> H^6)`.
    pub lhs: usize,
    /// `b_4 - b_2 + dim H_6(D)`.
    pub rhs: usize,
    pub equal: bool,
    /// Pass when equal; hypothesis-not-met when the intermediate
    /// isomorphism `L^2: H^2 / H_6(D) -> ker(H^6 -> H^6(D))` already
    /// fails, fail otherwise.
    pub verdict: Verdict,
    /// Sign report for the double hyperplane-section form on the divisor
    /// classes, expected negative definite for a genuine contraction.
    pub divisor_form_negative_definite: bool,
}

/// Compares the kernel of the pullback operator on the middle degree with
/// the excess formula.
pub fn excess_dimension_4fold(p: &ResolutionPackage4) -> Result<ExcessReport, LefschetzError> {
    let g = p.graded();
    let l_mid = g.operator(PackageOperator::L, 4);
    let lhs = g.dim_at(4) - l_mid.rank();
    let rhs = g.dim_at(4) + p.c6.cols() - g.dim_at(2);
    let equal = lhs == rhs;
    let divisor_form_negative_definite = p
        .eta2_cap
        .signature()
        .map(|s| s.is_negative_definite())
        .unwrap_or(false);

    // Hypothesis: L^2 identifies H^2 modulo the divisor classes with the
    // kernel of the restriction on H^6.
    let l2 = l_mid.mul(&g.operator(PackageOperator::L, 2))?;
    let lands_in_kernel = p.r6.mul(&l2)?.is_zero();
    let expected_rank = g.dim_at(2) - p.c6.rank();
    let ker_r6 = g.dim_at(6) - p.r6.rank();
    let hypothesis = lands_in_kernel && l2.rank() == expected_rank && expected_rank == ker_r6;

    let verdict = if equal {
        Verdict::Pass
    } else if !hypothesis {
        Verdict::HypothesisNotMet
    } else {
        Verdict::Fail
    };
    Ok(ExcessReport {
        lhs,
        rhs,
        equal,
        verdict,
        divisor_form_negative_definite,
    })
}

/// Graded refined intersection form blocks, keyed by a pair of perverse
/// levels.
#[derive(Debug, Clone)]
pub struct GradedFormBlocks {
    pub blocks: BTreeMap<(i64, i64), RationalMatrix>,
}

/// Diagonal blocks must be isomorphisms, off-diagonal blocks zero.
pub fn refined_form_graded_check(blocks: &GradedFormBlocks) -> BTreeMap<(i64, i64), Verdict> {
    blocks
        .blocks
        .iter()
        .map(|(&(a, b), m)| {
            let ok = if a == b {
                m.rows() == m.cols() && m.is_invertible()
            } else {
                m.is_zero()
            };
            ((a, b), Verdict::from_bool(ok))
        })
        .collect()
}

/// The graded refined-form blocks of a threefold package: the divisor
/// classes sit in level -1 paired by the hyperplane-section form, the odd
/// homology in level 0 paired by the intersection pairing, and the mixed
/// blocks vanish.
pub fn threefold_graded_blocks(p: &ResolutionPackage3) -> GradedFormBlocks {
    let r = p.c4().cols();
    let h3 = p.c3().cols();
    let mut blocks = BTreeMap::new();
    blocks.insert((-1, -1), p.eta_cap().clone());
    blocks.insert((0, 0), p.h3_pairing().clone());
    blocks.insert((-1, 0), RationalMatrix::zeros(r, h3));
    blocks.insert((0, -1), RationalMatrix::zeros(h3, r));
    GradedFormBlocks { blocks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    #[test]
    fn threefold_filtration_r1() {
        let p = samples::threefold_r1_package();
        let f = perverse_filtration_3fold(&p).unwrap();
        assert!(f.deligne.passed());
        assert_eq!(f.ih_dims, [1, 0, 1, 0, 1, 0, 1]);
        assert_eq!(f.h2_below.dim(), 1);
        assert_eq!(f.h4_at_zero.dim(), 1);
        assert_eq!(f.graded_dims[&(2, -1)], 1);
        assert_eq!(f.graded_dims[&(4, 1)], 1);
        assert_eq!(f.summands.h4d_dim, 1);
        assert_eq!(f.summands.h3d_dim, 0);
    }

    #[test]
    fn threefold_filtration_small_resolution() {
        let p = samples::threefold_small_resolution_package();
        let f = perverse_filtration_3fold(&p).unwrap();
        assert!(f.deligne.passed());
        let b: Vec<usize> = (0..=6).map(|k| p.betti(k)).collect();
        assert_eq!(f.ih_dims.to_vec(), b);
        assert_eq!(f.h2_below.dim(), 0);
    }

    #[test]
    fn threefold_filtration_h3() {
        let p = samples::threefold_h3_package();
        let f = perverse_filtration_3fold(&p).unwrap();
        assert!(f.deligne.passed());
        assert_eq!(f.ih_dims, [1, 0, 1, 2, 1, 0, 1]);
        assert_eq!(f.summands.h3d_dim, 2);
        // Duality of the table.
        for k in 0..=6 {
            assert_eq!(f.ih_dims[k], f.ih_dims[6 - k]);
        }
    }

    #[test]
    fn graded_dims_sum_to_betti() {
        let p = samples::threefold_h3_package();
        let f = perverse_filtration_3fold(&p).unwrap();
        for k in 0..=6usize {
            let total: usize = f
                .graded_dims
                .iter()
                .filter(|((deg, _), _)| *deg == k)
                .map(|(_, d)| d)
                .sum();
            assert_eq!(total, p.betti(k), "degree {k}");
        }
    }

    #[test]
    fn degenerate_divisor_form_fails_deligne() {
        let p = samples::threefold_degenerate_package();
        let f = perverse_filtration_3fold(&p).unwrap();
        assert_eq!(f.deligne, Verdict::Fail);
    }

    #[test]
    fn fourfold_excess_dimension() {
        let p = samples::fourfold_package();
        let r = excess_dimension_4fold(&p).unwrap();
        assert_eq!(r.lhs, 2);
        assert_eq!(r.rhs, 2);
        assert!(r.verdict.passed());
        assert!(r.divisor_form_negative_definite);
    }

    #[test]
    fn fourfold_excess_without_divisor() {
        let p = samples::fourfold_no_divisor_package();
        let r = excess_dimension_4fold(&p).unwrap();
        assert!(r.equal);
        assert_eq!(r.lhs, r.rhs);
    }

    #[test]
    fn fourfold_excess_fails_without_hypothesis() {
        let p = samples::fourfold_l_zero_package();
        let r = excess_dimension_4fold(&p).unwrap();
        assert!(!r.equal);
        assert_eq!(r.verdict, Verdict::HypothesisNotMet);
    }

    #[test]
    fn central_row_satisfies_hard_lefschetz() {
        use super::super::package::PackageOperator;
        // The quotient row H^0, H^1, H^2/classes, H^3, ker(restriction),
        // H^5, H^6 behaves like the cohomology of a projective variety
        // under the pullback operator.
        for p in [
            samples::threefold_r1_package(),
            samples::threefold_h3_package(),
        ] {
            let g = p.graded();
            let l0 = g.operator(PackageOperator::L, 0);
            let l2 = g.operator(PackageOperator::L, 2);
            let l4 = g.operator(PackageOperator::L, 4);
            let l3 = l4.mul(&l2).unwrap().mul(&l0).unwrap();
            assert!(l3.is_invertible(), "L^3 on the ends");

            // Complement representatives of the divisor classes in H^2.
            let image = p.c4().image();
            let n2 = g.dim_at(2);
            let (_, pivots) = image
                .hstack(&RationalMatrix::identity(n2))
                .unwrap()
                .rref();
            let chosen: Vec<usize> = pivots
                .iter()
                .filter(|&&q| q >= image.cols())
                .map(|&q| q - image.cols())
                .collect();
            let complement = RationalMatrix::identity(n2).select_columns(&chosen);
            let kernel = p.r4().kernel();
            let induced = kernel
                .solve(&l2.mul(&complement).unwrap())
                .expect("pullback image lies in the restriction kernel");
            assert!(induced.is_invertible(), "L on the central quotient row");
        }
    }

    #[test]
    fn graded_refined_blocks() {
        let p = samples::threefold_h3_package();
        let verdicts = refined_form_graded_check(&threefold_graded_blocks(&p));
        assert!(verdicts.values().all(Verdict::passed));

        let mut blocks = BTreeMap::new();
        blocks.insert((-1i64, -1i64), RationalMatrix::zeros(1, 1));
        let verdicts = refined_form_graded_check(&GradedFormBlocks { blocks });
        assert_eq!(verdicts[&(-1, -1)], Verdict::Fail);

        let mut blocks = BTreeMap::new();
        blocks.insert((0i64, 0i64), RationalMatrix::from_i64_rows(&[&[0, 1], &[-1, 0]]));
        let verdicts = refined_form_graded_check(&GradedFormBlocks { blocks });
        assert!(verdicts[&(0, 0)].passed());
    }
}
