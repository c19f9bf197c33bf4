//! Rank-finite local systems on the complement of two crossing lines in
//! the plane, described by a pair of commuting monodromies. Cohomology is
//! group cohomology of the free abelian group on two generators, computed
//! by the two-step Koszul complex, and the stalk of the intersection
//! cohomology complex at the crossing point is computed twice: once from
//! the explicit subspace description and once through the exact triangle
//! over the punctured plane. The two routes agreeing is a standing test.

use crate::linalg::{LinalgError, RationalMatrix, Subspace};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocalSysError {
    #[error("monodromies must be square of equal size")]
    ShapeMismatch,
    #[error("monodromies must be invertible")]
    NotInvertible,
    #[error("monodromies must commute")]
    NotCommuting,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Local system on the complement of a normal crossing in the plane:
/// the two monodromies acting on the fiber.
#[derive(Debug, Clone)]
pub struct TorusLocalSystem {
    t1: RationalMatrix,
    t2: RationalMatrix,
}

impl TorusLocalSystem {
    pub fn new(t1: RationalMatrix, t2: RationalMatrix) -> Result<Self, LocalSysError> {
        if t1.rows() != t1.cols() || t2.rows() != t2.cols() || t1.rows() != t2.rows() {
            return Err(LocalSysError::ShapeMismatch);
        }
        if !t1.is_invertible() || !t2.is_invertible() {
            return Err(LocalSysError::NotInvertible);
        }
        let commutator = t1
            .mul(&t2)
            .expect("square")
            .sub(&t2.mul(&t1).expect("square"))
            .expect("square");
        if !commutator.is_zero() {
            return Err(LocalSysError::NotCommuting);
        }
        Ok(TorusLocalSystem { t1, t2 })
    }

    pub fn dim(&self) -> usize {
        self.t1.rows()
    }

    pub fn t1(&self) -> &RationalMatrix {
        &self.t1
    }

    pub fn t2(&self) -> &RationalMatrix {
        &self.t2
    }

    /// Logarithm-free variation operators `T_i - id`.
    pub fn n1(&self) -> RationalMatrix {
        self.t1
            .sub(&RationalMatrix::identity(self.dim()))
            .expect("square")
    }

    pub fn n2(&self) -> RationalMatrix {
        self.t2
            .sub(&RationalMatrix::identity(self.dim()))
            .expect("square")
    }

    pub fn swapped(&self) -> TorusLocalSystem {
        TorusLocalSystem {
            t1: self.t2.clone(),
            t2: self.t1.clone(),
        }
    }
}

/// Koszul cohomology of the fiber as a module over the rank-two free
/// abelian group, with representative bases.
#[derive(Debug, Clone)]
pub struct KoszulCohomology {
    pub h0: usize,
    pub h1: usize,
    pub h2: usize,
    /// Basis of the joint invariants.
    pub h0_basis: Subspace,
    /// Cocycle representatives in the middle term `V + V`.
    pub h1_reps: RationalMatrix,
}

/// Two-step Koszul complex `V -> V + V -> V` with maps
/// `v -> (N1 v, N2 v)` and `(v1, v2) -> N2 v1 - N1 v2`.
pub fn koszul_cohomology(ls: &TorusLocalSystem) -> KoszulCohomology {
    let (phi, psi) = koszul_maps(ls);
    let h0_basis = phi.kernel();
    let n = ls.dim();

    // Cocycles independent modulo the coboundaries.
    let cocycles = psi.kernel();
    let coboundaries = phi.image();
    let (_, pivots) = coboundaries
        .hstack(&cocycles)
        .expect("same ambient")
        .rref();
    let chosen: Vec<usize> = pivots
        .iter()
        .filter(|&&p| p >= coboundaries.cols())
        .map(|&p| p - coboundaries.cols())
        .collect();
    let h1_reps = cocycles.select_columns(&chosen);

    KoszulCohomology {
        h0: h0_basis.cols(),
        h1: h1_reps.cols(),
        h2: n - psi.rank(),
        h0_basis: Subspace::from_independent_columns(n, h0_basis).expect("kernel basis"),
        h1_reps,
    }
}

fn koszul_maps(ls: &TorusLocalSystem) -> (RationalMatrix, RationalMatrix) {
    let n1 = ls.n1();
    let n2 = ls.n2();
    let phi = n1.vstack(&n2).expect("same width");
    let psi = n2.hstack(&n1.scale(&crate::rat(-1))).expect("same height");
    (phi, psi)
}

/// Stalk dimensions of the intersection cohomology complex at the
/// crossing point, in degrees `-2` and `-1`.
///
/// Degree `-2` is the space of joint invariants. Degree `-1` is the
/// quotient of the pairs `(N1 v1, N2 v2)` with `N1 N2 (v1 - v2) = 0` by
/// the diagonal pairs `(N1 v, N2 v)`, computed as explicit subspaces of
/// `V + V`.
pub fn ic_stalk_normal_crossing(ls: &TorusLocalSystem) -> (usize, usize) {
    let n = ls.dim();
    let n1 = ls.n1();
    let n2 = ls.n2();
    let invariants = n1.vstack(&n2).expect("same width").kernel().cols();

    // Numerator: image of ker[N1 N2 | -N1 N2] under (v1, v2) -> (N1 v1, N2 v2).
    let n1n2 = n1.mul(&n2).expect("square");
    let constraint = n1n2
        .hstack(&n1n2.scale(&crate::rat(-1)))
        .expect("same height");
    let pairs = constraint.kernel();
    let block = block_diag(&n1, &n2);
    let numerator = Subspace::span(2 * n, &block.mul(&pairs).expect("shape")).expect("span");

    // Denominator: diagonal pairs.
    let diag = n1.vstack(&n2).expect("same width");
    let denominator = Subspace::span(2 * n, &diag).expect("span");

    (invariants, numerator.dim() - denominator.dim())
}

/// Independent computation of the same stalk through the exact triangle
/// over the punctured plane: the first cohomology of the extension by
/// zero is the kernel of the restriction of Koszul classes to the two
/// punctured axes, where the class `(v1, v2)` restricts to `v1` modulo the
/// image of `N1` (monodromy-invariant there because of the cocycle
/// condition) and symmetrically to `v2` modulo the image of `N2`.
pub fn ic_stalk_oracle(ls: &TorusLocalSystem) -> (usize, usize) {
    let n = ls.dim();
    let koszul = koszul_cohomology(ls);
    let q1 = cokernel_projection(&ls.n1());
    let q2 = cokernel_projection(&ls.n2());
    let top = koszul
        .h1_reps
        .select_rows(&(0..n).collect::<Vec<_>>());
    let bottom = koszul
        .h1_reps
        .select_rows(&(n..2 * n).collect::<Vec<_>>());
    let restricted = q1
        .mul(&top)
        .expect("shape")
        .vstack(&q2.mul(&bottom).expect("shape"))
        .expect("same width");
    (koszul.h0, koszul.h1 - restricted.rank())
}

/// Coordinates of the quotient by a matrix's column space: rows select a
/// complement of the image and project along it.
fn cokernel_projection(m: &RationalMatrix) -> RationalMatrix {
    let image = m.image();
    let n = m.rows();
    let (_, pivots) = image
        .hstack(&RationalMatrix::identity(n))
        .expect("same height")
        .rref();
    let chosen: Vec<usize> = pivots
        .iter()
        .filter(|&&p| p >= image.cols())
        .map(|&p| p - image.cols())
        .collect();
    // Basis [image | complement]; quotient coordinates are the complement
    // rows of the inverse.
    let complement = RationalMatrix::identity(n).select_columns(&chosen);
    let basis = image.hstack(&complement).expect("same height");
    let inv = basis.inverse().expect("completed basis");
    inv.select_rows(&(image.cols()..n).collect::<Vec<_>>())
}

fn block_diag(a: &RationalMatrix, b: &RationalMatrix) -> RationalMatrix {
    let mut out = RationalMatrix::zeros(a.rows() + b.rows(), a.cols() + b.cols());
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            out.set(r, c, a.get(r, c).clone());
        }
    }
    for r in 0..b.rows() {
        for c in 0..b.cols() {
            out.set(a.rows() + r, a.cols() + c, b.get(r, c).clone());
        }
    }
    out
}
