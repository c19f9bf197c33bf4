//! Two-stratum germs: an isolated point inside an open stratum. This
//! module computes link cohomology through the circle-bundle Gysin
//! sequence, builds intersection cohomology stalks from link data by
//! truncated pushforward, runs the perverse truncation recursion at the
//! point stratum, and decides the splitting criteria for surface
//! contractions.
//!
//! Conventions: a germ of complex dimension `n` carries the shifted
//! pushforward, so stalks live in degrees `-n..`; the stalk of the
//! pushforward to the punctured germ records the cohomology of the link.

use crate::complexes::{fiber, ChainComplex, ChainMap, Truncation};
use crate::forms::CurveConfig;
use crate::linalg::{LinalgError, RationalMatrix};
use crate::Verdict;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GermError {
    #[error("link dimensions must have length 2n with nonzero degree zero")]
    BadLinkData,
    #[error("euler maps do not match the base dimensions: {0}")]
    BadEulerMaps(String),
    #[error(
        "restriction to the open stratum is not perverse: the stalk or link has entries below degree -n"
    )]
    NotPerverseOnOpenPart,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Cohomology of the link of an isolated point on an `n`-dimensional
/// germ, one dimension per degree `0..2n-1`.
#[derive(Debug, Clone)]
pub struct LinkCohomology {
    n: usize,
    dims: Vec<usize>,
}

impl LinkCohomology {
    pub fn new(n: usize, dims: Vec<usize>) -> Result<Self, GermError> {
        if n == 0 || dims.len() != 2 * n || dims[0] == 0 {
            return Err(GermError::BadLinkData);
        }
        Ok(LinkCohomology { n, dims })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }
}

/// Total-space cohomology dimensions of a circle bundle via the Gysin
/// sequence: degree `k` of the total space is the cokernel of cup product
/// with the Euler class into degree `k` plus the kernel out of degree
/// `k - 1`.
///
/// `base_dims[i]` is the base's Betti number in degree `i`; `euler_maps[i]`
/// is cup product `H^i -> H^{i+2}` of the base (entries beyond the supplied
/// list are zero maps).
pub fn gysin_s1_bundle(
    base_dims: &[usize],
    euler_maps: &[RationalMatrix],
) -> Result<Vec<usize>, GermError> {
    let dim_at = |k: i64| -> usize {
        if k < 0 {
            0
        } else {
            base_dims.get(k as usize).copied().unwrap_or(0)
        }
    };
    let map_at = |k: i64| -> RationalMatrix {
        if k >= 0 {
            if let Some(m) = euler_maps.get(k as usize) {
                return m.clone();
            }
        }
        RationalMatrix::zeros(dim_at(k + 2), dim_at(k))
    };
    for (i, m) in euler_maps.iter().enumerate() {
        if m.cols() != dim_at(i as i64) || m.rows() != dim_at(i as i64 + 2) {
            return Err(GermError::BadEulerMaps(format!(
                "map at degree {} has shape {}x{}, expected {}x{}",
                i,
                m.rows(),
                m.cols(),
                dim_at(i as i64 + 2),
                dim_at(i as i64)
            )));
        }
    }
    let top = base_dims.len() as i64; // total space has real dimension top
    let mut out = Vec::with_capacity(top as usize + 1);
    for k in 0..=top {
        let coker = dim_at(k) - map_at(k - 2).rank();
        let ker = dim_at(k - 1) - map_at(k - 1).rank();
        out.push(coker + ker);
    }
    Ok(out)
}

/// Stalk at the point of the intersection cohomology complex of an
/// isolated singularity: the pushforward from the punctured germ holds the
/// link cohomology, and truncation keeps degrees up to `-1`. Degree `k`
/// of the stalk is the link's degree `k + n`, for `-n <= k <= -1`.
pub fn ic_isolated(link: &LinkCohomology) -> ChainComplex {
    let n = link.n as i64;
    let dims: Vec<usize> = (0..link.n).map(|l| link.dims[l]).collect();
    ChainComplex::with_zero_differentials(-n, dims)
}

/// Presentation of a proper map over an `n`-dimensional germ with one
/// point stratum: the stalk of the (shifted) pushforward at the point, the
/// stalk of its pushforward from the punctured germ, and the attaching map
/// between them.
#[derive(Debug, Clone)]
pub struct GermDataset {
    n: usize,
    attach: ChainMap,
}

impl GermDataset {
    pub fn new(
        n: usize,
        stalk: ChainComplex,
        link_complex: ChainComplex,
        attach_components: BTreeMap<i64, RationalMatrix>,
    ) -> Result<Self, GermError> {
        let attach = ChainMap::new(stalk, link_complex, attach_components)?;
        Ok(GermDataset { n, attach })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn stalk(&self) -> &ChainComplex {
        self.attach.source()
    }

    pub fn link_complex(&self) -> &ChainComplex {
        self.attach.target()
    }

    pub fn attach(&self) -> &ChainMap {
        &self.attach
    }

    /// The open-stratum restriction is a shifted local system in degree
    /// `-n`; its pushforward stalk then has no entries below `-n` either.
    fn check_open_part_perverse(&self) -> Result<(), GermError> {
        let n = self.n as i64;
        let stalk_ok = self.stalk().trimmed().is_zero() || self.stalk().trimmed().lo() >= -n;
        let link_ok =
            self.link_complex().trimmed().is_zero() || self.link_complex().trimmed().lo() >= -n;
        if stalk_ok && link_ok {
            Ok(())
        } else {
            Err(GermError::NotPerverseOnOpenPart)
        }
    }
}

/// Stalk of the perverse truncation at the point stratum, returned as its
/// strictification (zero differentials on the cohomology).
///
/// For cuts at or above the middle the open part survives untouched and
/// only the point-stratum truncation acts, so the result is the standard
/// truncation of the stalk. Below the middle the open part is killed
/// first, replacing the stalk by the fiber of the attaching map (the
/// costalk), and the point-stratum truncation acts on that.
pub fn perverse_truncate_point_germ(
    germ: &GermDataset,
    m: i64,
) -> Result<ChainComplex, GermError> {
    germ.check_open_part_perverse()?;
    let complex = if m >= 0 {
        germ.stalk().clone()
    } else {
        fiber(germ.attach())
    };
    Ok(complex.truncate(Truncation::AtMost(m)).strictified())
}

/// Outcome of the point-germ splitting criterion.
#[derive(Debug, Clone)]
pub struct SplittingReport {
    pub split: bool,
    /// On a split: the complex decomposes into the intersection cohomology
    /// complex of the open part and a skyscraper of this rank in degree 0.
    pub skyscraper_dim: usize,
}

/// A self-dual complex on the germ splits off its degree-zero stalk as a
/// skyscraper exactly when the natural map from that stalk to the
/// top pushforward of the open part vanishes.
pub fn splitting_criterion(h0_dim: usize, map_to_link: &RationalMatrix) -> SplittingReport {
    assert_eq!(
        map_to_link.cols(),
        h0_dim,
        "map must be defined on the degree-zero stalk"
    );
    SplittingReport {
        split: map_to_link.is_zero(),
        skyscraper_dim: h0_dim,
    }
}

/// Surface contraction germ: the curve configuration and the first Betti
/// number of the contracted divisor.
#[derive(Debug, Clone)]
pub struct SurfaceGerm {
    pub config: CurveConfig,
    pub b1: usize,
}

/// Decomposition report for a surface contraction germ.
#[derive(Debug, Clone)]
pub struct SurfaceGermReport {
    pub split: Verdict,
    /// Stalk dimensions of the intersection cohomology complex at the
    /// point, degrees `-2` and `-1`. The degree `-1` entry exceeds `b1`
    /// exactly by the corank of the intersection matrix.
    pub ic_stalk: (usize, usize),
    /// Rank of the skyscraper summand on a split: one class per curve.
    pub skyscraper_dim: usize,
    /// Vanishing degree `-1` stalk flags a rational homology manifold.
    pub rational_homology_manifold: bool,
}

/// The pushforward of a surface contraction splits into the intersection
/// cohomology complex and a degree-zero skyscraper exactly when the
/// intersection matrix is nondegenerate: the obstruction is the cokernel
/// of the class map, which on the germ is the matrix itself.
pub fn decompose_surface_germ(germ: &SurfaceGerm) -> SurfaceGermReport {
    let m = germ.config.matrix();
    let r = germ.config.curves();
    let rank = m.rank();
    let corank = r - rank;
    // The degree-zero stalk maps onto the cokernel of the class map; the
    // splitting criterion asks that map to vanish.
    let obstruction_rank = corank;
    let ic_minus1 = germ.b1 + corank;
    SurfaceGermReport {
        split: Verdict::from_bool(obstruction_rank == 0),
        ic_stalk: (1, ic_minus1),
        skyscraper_dim: r,
        rational_homology_manifold: ic_minus1 == 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    #[test]
    fn gysin_quadric_double_point_link() {
        // Circle bundle over a product of two spheres with Euler class
        // pairing both factors.
        let base = vec![1, 0, 2, 0, 1];
        let maps = vec![
            RationalMatrix::from_i64_rows(&[&[1], &[1]]),
            RationalMatrix::zeros(0, 0),
            RationalMatrix::from_i64_rows(&[&[1, 1]]),
        ];
        let dims = gysin_s1_bundle(&base, &maps).unwrap();
        assert_eq!(dims, vec![1, 0, 1, 1, 0, 1]);
    }

    #[test]
    fn gysin_trivial_bundle_is_product() {
        let base = vec![1, 0, 2, 0, 1];
        let dims = gysin_s1_bundle(&base, &[]).unwrap();
        assert_eq!(dims, vec![1, 1, 2, 2, 1, 1]);
    }

    #[test]
    fn gysin_torus_fundamental_class() {
        let base = vec![1, 2, 1];
        let maps = vec![RationalMatrix::identity(1)];
        let dims = gysin_s1_bundle(&base, &maps).unwrap();
        assert_eq!(dims, vec![1, 2, 2, 1]);
    }

    #[test]
    fn gysin_euler_char_vanishes() {
        let base = vec![1, 3, 4, 1];
        let dims = gysin_s1_bundle(&base, &[]).unwrap();
        let chi: i64 = dims
            .iter()
            .enumerate()
            .map(|(k, &d)| if k % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum();
        assert_eq!(chi, 0);
    }

    #[test]
    fn ic_stalk_examples() {
        // Threefold double point: link dimensions concentrate in 0,2,3,5.
        let link = LinkCohomology::new(3, vec![1, 0, 1, 1, 0, 1]).unwrap();
        let ic = ic_isolated(&link);
        assert_eq!(ic.cohomology_dims(), BTreeMap::from([(-3, 1), (-1, 1)]));

        // Smooth surface point: constant sheaf.
        let link = LinkCohomology::new(2, vec![1, 0, 0, 1]).unwrap();
        let ic = ic_isolated(&link);
        assert_eq!(ic.cohomology_dims(), BTreeMap::from([(-2, 1)]));

        // Cone over a curve of genus one.
        let link = LinkCohomology::new(2, vec![1, 2, 2, 1]).unwrap();
        let ic = ic_isolated(&link);
        assert_eq!(ic.cohomology_dims(), BTreeMap::from([(-2, 1), (-1, 2)]));
    }

    #[test]
    fn ic_stalk_vanishes_in_high_degrees() {
        let link = LinkCohomology::new(3, vec![1, 2, 3, 4, 5, 6]).unwrap();
        let ic = ic_isolated(&link);
        assert_eq!(ic.dim_at(0), 0);
        assert_eq!(ic.dim_at(-1), 3);
        assert_eq!(ic.dim_at(-3), 1);
    }

    /// Threefold contraction germ with divisor classes of rank `r`:
    /// stalk carries the divisor cohomology, the punctured pushforward the
    /// link, and the attaching map is an isomorphism in the bottom degree.
    fn threefold_divisor_germ(r: usize) -> GermDataset {
        let stalk = ChainComplex::with_zero_differentials(-3, vec![1, 0, r, 0, r]);
        let link = ChainComplex::with_zero_differentials(-3, vec![1, 0, 0, 0, 0, 0]);
        let mut attach = BTreeMap::new();
        attach.insert(-3, RationalMatrix::identity(1));
        GermDataset::new(3, stalk, link, attach).unwrap()
    }

    #[test]
    fn perverse_truncation_of_threefold_germ() {
        for r in [0usize, 1, 3] {
            let germ = if r == 0 {
                // Isomorphism germ: the fiber is a point.
                let stalk = ChainComplex::with_zero_differentials(-3, vec![1]);
                let link = ChainComplex::with_zero_differentials(-3, vec![1, 0, 0, 0, 0, 1]);
                let attach = BTreeMap::from([(-3, RationalMatrix::identity(1))]);
                GermDataset::new(3, stalk, link, attach).unwrap()
            } else {
                threefold_divisor_germ(r)
            };
            let below = perverse_truncate_point_germ(&germ, -1).unwrap();
            if r == 0 {
                assert!(below.is_zero());
            } else {
                assert_eq!(below.cohomology_dims(), BTreeMap::from([(-1, r)]));
            }
            let at_zero = perverse_truncate_point_germ(&germ, 0).unwrap();
            let standard = germ.stalk().truncate(Truncation::AtMost(0)).trimmed();
            assert_eq!(at_zero.cohomology_dims(), standard.cohomology_dims());
        }
    }

    #[test]
    fn perverse_truncation_of_small_resolution_germ() {
        // Curve fiber inside a threefold: no divisor classes survive.
        let stalk = ChainComplex::with_zero_differentials(-3, vec![1, 0, 1]);
        let link = ChainComplex::with_zero_differentials(-3, vec![1, 0, 1, 1, 0, 1]);
        let attach = BTreeMap::from([
            (-3, RationalMatrix::identity(1)),
            (-1, RationalMatrix::identity(1)),
        ]);
        let germ = GermDataset::new(3, stalk, link, attach).unwrap();
        let below = perverse_truncate_point_germ(&germ, -1).unwrap();
        assert!(below.is_zero());
    }

    #[test]
    fn perverse_truncation_monotone_and_saturating() {
        let germ = threefold_divisor_germ(2);
        let mut prev_total = 0usize;
        for m in -5..=3 {
            let t = perverse_truncate_point_germ(&germ, m).unwrap();
            let total: usize = t.cohomology_dims().values().sum();
            assert!(total >= prev_total, "dimensions drop at m = {m}");
            prev_total = total;
        }
        let full = perverse_truncate_point_germ(&germ, 3).unwrap();
        assert_eq!(
            full.cohomology_dims(),
            germ.stalk().trimmed().cohomology_dims()
        );
        assert!(perverse_truncate_point_germ(&germ, -5).unwrap().is_zero());
    }

    #[test]
    fn splitting_criterion_examples() {
        assert!(splitting_criterion(3, &RationalMatrix::zeros(1, 3)).split);
        assert!(splitting_criterion(0, &RationalMatrix::zeros(0, 0)).split);
        let nonzero = RationalMatrix::from_i64_rows(&[&[1]]);
        assert!(!splitting_criterion(1, &nonzero).split);
    }

    #[test]
    fn surface_germ_decomposition() {
        let germ = SurfaceGerm {
            config: CurveConfig::new(RationalMatrix::from_i64_rows(&[&[-1]])).unwrap(),
            b1: 0,
        };
        let report = decompose_surface_germ(&germ);
        assert!(report.split.passed());
        assert_eq!(report.ic_stalk, (1, 0));
        assert_eq!(report.skyscraper_dim, 1);
        assert!(report.rational_homology_manifold);

        // Cone over a genus-one curve.
        let germ = SurfaceGerm {
            config: CurveConfig::new(RationalMatrix::from_i64_rows(&[&[-1]])).unwrap(),
            b1: 2,
        };
        let report = decompose_surface_germ(&germ);
        assert!(report.split.passed());
        assert_eq!(report.ic_stalk, (1, 2));
        assert!(!report.rational_homology_manifold);

        // Product germ contracted along a fiber direction: no splitting.
        let germ = SurfaceGerm {
            config: CurveConfig::new(RationalMatrix::from_i64_rows(&[&[0]])).unwrap(),
            b1: 0,
        };
        let report = decompose_surface_germ(&germ);
        assert_eq!(report.split, Verdict::Fail);
        assert_eq!(report.ic_stalk, (1, 1));
    }

    #[test]
    fn surface_split_agrees_with_contraction_criteria() {
        use crate::forms::grauert_check;
        for mat in [
            RationalMatrix::from_i64_rows(&[&[-1]]),
            RationalMatrix::from_i64_rows(&[&[-2, 1], &[1, -2]]),
            RationalMatrix::from_i64_rows(&[&[0]]),
            RationalMatrix::from_i64_rows(&[&[-2, 2], &[2, -2]]),
        ] {
            let config = CurveConfig::new(mat).unwrap();
            let g = grauert_check(&config);
            let report = decompose_surface_germ(&SurfaceGerm {
                config: config.clone(),
                b1: 0,
            });
            assert_eq!(report.split.passed(), g.class_map_iso);
            // The splitting criterion fed the cokernel rank agrees.
            let corank = config.curves() - config.matrix().rank();
            let map = if corank == 0 {
                RationalMatrix::zeros(corank, config.curves())
            } else {
                let mut m = RationalMatrix::zeros(corank, config.curves());
                m.set(0, 0, rat(1));
                m
            };
            assert_eq!(
                splitting_criterion(config.curves(), &map).split,
                report.split.passed()
            );
        }
    }

    #[test]
    fn rejects_non_perverse_open_part() {
        let stalk = ChainComplex::with_zero_differentials(-5, vec![1]);
        let link = ChainComplex::with_zero_differentials(-3, vec![1]);
        let germ = GermDataset::new(3, stalk, link, BTreeMap::new()).unwrap();
        assert!(matches!(
            perverse_truncate_point_germ(&germ, 0),
            Err(GermError::NotPerverseOnOpenPart)
        ));
    }
}
