//! Intersection-form criteria for contractions and fibrations: the
//! negative-definiteness test for exceptional curve configurations, the
//! fiber-cycle quotient test for families of curves over a disk, the
//! refined forms obtained by cutting with hyperplane sections, and the
//! stalk bookkeeping for the decomposition of a curve fibration germ.

use crate::linalg::{DefinitenessReport, LinalgError, RationalMatrix, Signature};
use crate::Verdict;
use num::Zero;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormsError {
    #[error("intersection matrix must be symmetric")]
    NotSymmetric,
    #[error("not a fiber cycle: m*a != 0")]
    NotFiberCycle,
    #[error("multiplicities must be positive")]
    NonPositiveMultiplicity,
    #[error("monodromy must be invertible")]
    SingularMonodromy,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Configuration of compact curves on a smooth surface germ: the symmetric
/// matrix of pairwise intersection numbers.
#[derive(Debug, Clone)]
pub struct CurveConfig {
    matrix: RationalMatrix,
}

impl CurveConfig {
    pub fn new(matrix: RationalMatrix) -> Result<Self, FormsError> {
        if !matrix.is_symmetric() {
            return Err(FormsError::NotSymmetric);
        }
        Ok(CurveConfig { matrix })
    }

    pub fn curves(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.matrix
    }
}

/// A curve configuration together with positive multiplicities forming a
/// cycle-theoretic fiber.
#[derive(Debug, Clone)]
pub struct FiberCycle {
    pub config: CurveConfig,
    pub multiplicities: Vec<crate::Rational>,
}

impl FiberCycle {
    pub fn new(
        config: CurveConfig,
        multiplicities: Vec<crate::Rational>,
    ) -> Result<Self, FormsError> {
        if multiplicities.len() != config.curves() {
            return Err(FormsError::Linalg(LinalgError::ShapeMismatch(format!(
                "{} multiplicities for {} curves",
                multiplicities.len(),
                config.curves()
            ))));
        }
        if multiplicities
            .iter()
            .any(|a| *a <= crate::Rational::zero())
        {
            return Err(FormsError::NonPositiveMultiplicity);
        }
        Ok(FiberCycle {
            config,
            multiplicities,
        })
    }
}

/// Contractibility check for a curve configuration.
#[derive(Debug, Clone)]
pub struct GrauertReport {
    pub verdict: Verdict,
    pub definiteness: DefinitenessReport,
    /// Whether the class map is an isomorphism, i.e. the matrix is
    /// invertible. Implied by a pass.
    pub class_map_iso: bool,
}

/// Pass iff the intersection form is negative definite; a nondegenerate
/// matrix is exactly an isomorphic class map on the germ.
pub fn grauert_check(config: &CurveConfig) -> GrauertReport {
    let definiteness = config
        .matrix()
        .definiteness()
        .expect("CurveConfig is symmetric");
    GrauertReport {
        verdict: Verdict::from_bool(definiteness.signature.is_negative_definite()),
        class_map_iso: definiteness.signature.is_nondegenerate(),
        definiteness,
    }
}

/// Fiber-cycle check for a one-dimensional family of curves.
#[derive(Debug, Clone)]
pub struct ZariskiReport {
    pub verdict: Verdict,
    pub rank_cl: usize,
    pub quotient_signature: Signature,
}

/// Verifies the cycle is in the radical (`m*a = 0`, hence the fiber has
/// self-intersection zero) and that the form induced on the quotient by
/// the fiber class is negative definite. On a pass the class map has rank
/// one less than the number of components.
pub fn zariski_check(fiber: &FiberCycle) -> Result<ZariskiReport, FormsError> {
    let m = fiber.config.matrix();
    let image = m.mul_vector(&fiber.multiplicities)?;
    if !image.iter().all(crate::Rational::is_zero) {
        return Err(FormsError::NotFiberCycle);
    }
    let quotient = m.quotient_form(&fiber.multiplicities)?;
    let report = quotient.definiteness()?;
    Ok(ZariskiReport {
        verdict: Verdict::from_bool(report.signature.is_negative_definite()),
        rank_cl: m.rank(),
        quotient_signature: report.signature,
    })
}

/// Inputs for a refined intersection form in a given range: the class map
/// into the cohomology of a transverse slice, the pairing there, and the
/// operator cutting with hyperplane sections of the fiber.
#[derive(Debug, Clone)]
pub struct RefinedFormInput {
    pub l: i64,
    pub k: i64,
    /// Class map from fiber homology in the lowered range to slice
    /// cohomology.
    pub classmap: RationalMatrix,
    /// Pairing on the slice; by shape it either evaluates slice cohomology
    /// against fiber homology or pairs slice cohomology with itself.
    pub pairing: RationalMatrix,
    /// Cutting with `k` hyperplane sections; the identity when `k = 0`.
    pub eta_cap: RationalMatrix,
}

/// Matrix of the refined form: the first argument is lowered by `eta_cap`
/// and pushed into the slice by `classmap`; the second is treated the same
/// way when the pairing lives on slice cohomology, and evaluated directly
/// when the pairing is against fiber homology.
pub fn refined_form(input: &RefinedFormInput) -> Result<RationalMatrix, FormsError> {
    let lowered = input.classmap.mul(&input.eta_cap)?;
    let left = lowered.transpose().mul(&input.pairing)?;
    let result = if input.pairing.cols() == input.eta_cap.cols() {
        left
    } else {
        left.mul(&lowered)?
    };
    if result.rows() != result.cols() {
        return Err(FormsError::Linalg(LinalgError::ShapeMismatch(format!(
            "refined form came out {}x{}",
            result.rows(),
            result.cols()
        ))));
    }
    Ok(result)
}

/// Germ of a surface fibered over a disk with one critical value: ranks of
/// the invariant-degree local systems, the monodromy on the first
/// cohomology of the nearby fiber, and the special fiber data.
#[derive(Debug, Clone)]
pub struct FibrationGerm {
    pub t0: usize,
    pub t2: usize,
    pub monodromy: RationalMatrix,
    pub special_fiber: FiberCycle,
    pub b1_special: usize,
}

impl FibrationGerm {
    pub fn new(
        t0: usize,
        t2: usize,
        monodromy: RationalMatrix,
        special_fiber: FiberCycle,
        b1_special: usize,
    ) -> Result<Self, FormsError> {
        if !monodromy.is_invertible() {
            return Err(FormsError::SingularMonodromy);
        }
        Ok(FibrationGerm {
            t0,
            t2,
            monodromy,
            special_fiber,
            b1_special,
        })
    }

    /// Connected-fibers default: degree-0 and degree-2 systems of rank one.
    pub fn connected(
        monodromy: RationalMatrix,
        special_fiber: FiberCycle,
        b1_special: usize,
    ) -> Result<Self, FormsError> {
        Self::new(1, 1, monodromy, special_fiber, b1_special)
    }
}

/// Stalk dimensions of the four direct summands of a curve-fibration germ
/// at the critical value, plus the conservation checks tying them to the
/// supplied special-fiber cohomology.
#[derive(Debug, Clone)]
pub struct FibrationReport {
    pub zariski: ZariskiReport,
    /// Degree -2 stalk: rank of the degree-0 local system.
    pub t0_stalk: usize,
    /// Degree -1 stalk: monodromy invariants of the nearby fiber, the
    /// local-invariant-cycle description of the special fiber's first
    /// cohomology.
    pub invariant_stalk: usize,
    /// Skyscraper summand: one less than the number of components.
    pub skyscraper_dim: usize,
    /// Degree 0 stalk of the degree-2 local system.
    pub t2_stalk: usize,
    /// Degree -1 conservation: invariants equal the special fiber's first
    /// Betti number.
    pub invariant_cycle_check: Verdict,
    /// Degree 0 conservation: skyscraper plus t2 account for the classes
    /// of the components.
    pub degree_zero_check: Verdict,
}

/// Splits the germ into its four summands and checks stalk conservation
/// degree by degree against the supplied special-fiber cohomology.
pub fn fibration_decompose(germ: &FibrationGerm) -> Result<FibrationReport, FormsError> {
    let zariski = zariski_check(&germ.special_fiber)?;
    let n = germ.monodromy.rows();
    let unipotent_part = germ
        .monodromy
        .sub(&RationalMatrix::identity(n))
        .expect("square");
    let invariant_stalk = unipotent_part.kernel().cols();
    let r = germ.special_fiber.config.curves();
    let skyscraper_dim = r.saturating_sub(1);
    Ok(FibrationReport {
        invariant_cycle_check: Verdict::from_bool(invariant_stalk == germ.b1_special),
        degree_zero_check: Verdict::from_bool(skyscraper_dim + germ.t2 == r),
        zariski,
        t0_stalk: germ.t0,
        invariant_stalk,
        skyscraper_dim,
        t2_stalk: germ.t2,
    })
}

/// Kodaira cycle configuration: `n` rational curves in a cycle, the
/// standard degenerate elliptic fibers. `n = 1` is the irreducible nodal
/// fiber with self-intersection zero.
pub fn kodaira_cycle_config(n: usize) -> CurveConfig {
    assert!(n >= 1);
    let mut m = RationalMatrix::zeros(n, n);
    if n == 1 {
        return CurveConfig::new(m).expect("symmetric");
    }
    for i in 0..n {
        m.set(i, i, crate::rat(-2));
    }
    if n == 2 {
        // Two components meeting at two points.
        m.set(0, 1, crate::rat(2));
        m.set(1, 0, crate::rat(2));
    } else {
        for i in 0..n {
            let j = (i + 1) % n;
            m.set(i, j, crate::rat(1));
            m.set(j, i, crate::rat(1));
        }
    }
    CurveConfig::new(m).expect("symmetric")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn config(rows: &[&[i64]]) -> CurveConfig {
        CurveConfig::new(RationalMatrix::from_i64_rows(rows)).unwrap()
    }

    fn ones(n: usize) -> Vec<crate::Rational> {
        vec![rat(1); n]
    }

    #[test]
    fn grauert_examples() {
        assert!(grauert_check(&config(&[&[-1]])).verdict.passed());
        let report = grauert_check(&config(&[&[-2, 1], &[1, -2]]));
        assert!(report.verdict.passed());
        assert!(report.class_map_iso);

        // A fiber-like curve: trivial self-intersection is not contractible.
        let report = grauert_check(&config(&[&[0]]));
        assert_eq!(report.verdict, Verdict::Fail);
        assert!(!report.class_map_iso);
    }

    #[test]
    fn zariski_examples() {
        let f = FiberCycle::new(config(&[&[0]]), ones(1)).unwrap();
        let r = zariski_check(&f).unwrap();
        assert!(r.verdict.passed());
        assert_eq!(r.rank_cl, 0);
        assert_eq!(r.quotient_signature.zero, 0);

        let f = FiberCycle::new(config(&[&[-2, 2], &[2, -2]]), ones(2)).unwrap();
        let r = zariski_check(&f).unwrap();
        assert!(r.verdict.passed());
        assert_eq!(r.rank_cl, 1);

        let f = FiberCycle::new(config(&[&[-2, 0], &[0, -2]]), ones(2)).unwrap();
        assert!(matches!(zariski_check(&f), Err(FormsError::NotFiberCycle)));
    }

    #[test]
    fn kodaira_cycles_pass_zariski() {
        for n in 1..=6 {
            let f = FiberCycle::new(kodaira_cycle_config(n), ones(n)).unwrap();
            let r = zariski_check(&f).unwrap();
            assert!(r.verdict.passed(), "I_{n} fails");
            assert_eq!(r.rank_cl, n - 1);
        }
    }

    #[test]
    fn refined_form_trivial_and_surface_cases() {
        let input = RefinedFormInput {
            l: 0,
            k: 0,
            classmap: RationalMatrix::identity(1),
            pairing: RationalMatrix::from_i64_rows(&[&[-1]]),
            eta_cap: RationalMatrix::identity(1),
        };
        assert_eq!(
            refined_form(&input).unwrap(),
            RationalMatrix::from_i64_rows(&[&[-1]])
        );

        // Surface specialization: identity auxiliary maps reproduce the
        // contraction matrix.
        let m = RationalMatrix::from_i64_rows(&[&[-2, 1], &[1, -2]]);
        let input = RefinedFormInput {
            l: 0,
            k: 0,
            classmap: RationalMatrix::identity(2),
            pairing: m.clone(),
            eta_cap: RationalMatrix::identity(2),
        };
        assert_eq!(refined_form(&input).unwrap(), m);
    }

    #[test]
    fn refined_form_threefold_divisor_case() {
        // Divisor homology in a threefold germ, cut down to curves by one
        // hyperplane section: the resulting form is the contraction-type
        // matrix of those curves on the slice, here a pair of
        // (-2)-curves meeting once.
        let slice_matrix = RationalMatrix::from_i64_rows(&[&[-2, 1], &[1, -2]]);
        let input = RefinedFormInput {
            l: 0,
            k: 1,
            // Class map of the slice curves, written against the
            // evaluation pairing.
            classmap: slice_matrix.clone(),
            pairing: RationalMatrix::identity(2),
            eta_cap: RationalMatrix::identity(2),
        };
        let form = refined_form(&input).unwrap();
        assert_eq!(form, slice_matrix);
        let config = CurveConfig::new(form).unwrap();
        assert!(grauert_check(&config).verdict.passed());
    }

    #[test]
    fn fibration_examples() {
        // Smooth fiber, genus one, no degeneration.
        let germ = FibrationGerm::new(
            1,
            1,
            RationalMatrix::identity(2),
            FiberCycle::new(config(&[&[0]]), ones(1)).unwrap(),
            2,
        )
        .unwrap();
        let r = fibration_decompose(&germ).unwrap();
        assert_eq!(r.skyscraper_dim, 0);
        assert_eq!(r.invariant_stalk, 2);
        assert!(r.invariant_cycle_check.passed());
        assert!(r.degree_zero_check.passed());

        // Nodal fiber: unipotent monodromy with one invariant.
        let germ = FibrationGerm::new(
            1,
            1,
            RationalMatrix::from_i64_rows(&[&[1, 1], &[0, 1]]),
            FiberCycle::new(config(&[&[0]]), ones(1)).unwrap(),
            1,
        )
        .unwrap();
        let r = fibration_decompose(&germ).unwrap();
        assert_eq!(r.skyscraper_dim, 0);
        assert_eq!(r.invariant_stalk, 1);
        assert!(r.invariant_cycle_check.passed());

        // Two-component degenerate fiber.
        let germ = FibrationGerm::new(
            1,
            1,
            RationalMatrix::from_i64_rows(&[&[1, 2], &[0, 1]]),
            FiberCycle::new(config(&[&[-2, 2], &[2, -2]]), ones(2)).unwrap(),
            1,
        )
        .unwrap();
        let r = fibration_decompose(&germ).unwrap();
        assert_eq!(r.skyscraper_dim, 1);
        assert_eq!(r.invariant_stalk, 1);
        assert!(r.invariant_cycle_check.passed());
        assert!(r.degree_zero_check.passed());
    }

    #[test]
    fn grauert_pass_implies_iso() {
        // Negative definite forces invertibility.
        for rows in [vec![vec![-1i64]], vec![vec![-2, 1], vec![1, -2]]] {
            let slices: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
            let report = grauert_check(&config(&slices));
            assert!(report.verdict.passed());
            assert!(report.class_map_iso);
        }
    }

    #[test]
    fn definiteness_matches_quotient_plus_radical() {
        let f = FiberCycle::new(kodaira_cycle_config(4), ones(4)).unwrap();
        let r = zariski_check(&f).unwrap();
        let full = f.config.matrix().definiteness().unwrap().signature;
        assert_eq!(full.negative, r.quotient_signature.negative);
        assert_eq!(full.zero, r.quotient_signature.zero + 1);
    }
}
