use super::matrix::RationalMatrix;
use super::rational::Rational;
use super::LinalgError;

/// Linear subspace of `Q^n`, stored as a matrix whose columns form a basis.
///
/// Equality of subspaces is mutual containment via rank computations, never
/// comparison of the stored bases.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    basis: RationalMatrix,
}

impl Subspace {
    /// Builds a subspace from columns that are already known to be
    /// independent; fails otherwise.
    pub fn from_independent_columns(
        ambient_dim: usize,
        basis: RationalMatrix,
    ) -> Result<Self, LinalgError> {
        if basis.rows() != ambient_dim {
            return Err(LinalgError::ShapeMismatch(format!(
                "basis has {} rows, ambient dimension is {}",
                basis.rows(),
                ambient_dim
            )));
        }
        if basis.rank() != basis.cols() {
            return Err(LinalgError::DependentColumns);
        }
        Ok(Subspace { ambient_dim, basis })
    }

    /// Span of arbitrary columns: keeps the pivot columns as basis.
    pub fn span(ambient_dim: usize, generators: &RationalMatrix) -> Result<Self, LinalgError> {
        if generators.rows() != ambient_dim {
            return Err(LinalgError::ShapeMismatch(format!(
                "generators have {} rows, ambient dimension is {}",
                generators.rows(),
                ambient_dim
            )));
        }
        Ok(Subspace {
            ambient_dim,
            basis: generators.image(),
        })
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: RationalMatrix::zeros(ambient_dim, 0),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: RationalMatrix::identity(ambient_dim),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &RationalMatrix {
        &self.basis
    }

    pub fn contains_vector(&self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.ambient_dim, "vector length mismatch");
        let col = RationalMatrix::column_vector(v.to_vec());
        self.basis.solve(&col).is_some()
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        assert_eq!(self.ambient_dim, other.ambient_dim, "ambient mismatch");
        self.basis.solve(&other.basis).is_some()
    }

    /// Mutual containment.
    pub fn equals(&self, other: &Subspace) -> bool {
        self.contains(other) && other.contains(self)
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim, "ambient mismatch");
        let gens = self.basis.hstack(&other.basis).expect("same ambient");
        Subspace::span(self.ambient_dim, &gens).expect("span of stack")
    }

    /// Intersection via the kernel of `[A | -B]`.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim, "ambient mismatch");
        let stacked = self
            .basis
            .hstack(&other.basis.scale(&super::rational::rat(-1)))
            .expect("same ambient");
        let ker = stacked.kernel();
        let coeffs = ker.select_rows(&(0..self.dim()).collect::<Vec<_>>());
        let gens = self.basis.mul(&coeffs).expect("shape");
        Subspace::span(self.ambient_dim, &gens).expect("span")
    }

    /// Vectors `y` with `pairing(w, y) = 0` for every `w` in this subspace.
    ///
    /// `pairing` maps this subspace's ambient space times `Q^m` to `Q`
    /// (shape `ambient_dim x m`); the complement lives in `Q^m`.
    pub fn orthogonal_complement(&self, pairing: &RationalMatrix) -> Result<Subspace, LinalgError> {
        if pairing.rows() != self.ambient_dim {
            return Err(LinalgError::ShapeMismatch(format!(
                "pairing has {} rows, ambient dimension is {}",
                pairing.rows(),
                self.ambient_dim
            )));
        }
        let constraints = self.basis.transpose().mul(pairing)?;
        let ker = constraints.kernel();
        Subspace::from_independent_columns(pairing.cols(), ker)
    }

    /// Preimage under a matrix: `{ x : m x in self }`.
    pub fn preimage(&self, m: &RationalMatrix) -> Result<Subspace, LinalgError> {
        if m.rows() != self.ambient_dim {
            return Err(LinalgError::ShapeMismatch(format!(
                "map lands in Q^{}, subspace ambient is {}",
                m.rows(),
                self.ambient_dim
            )));
        }
        // x with m x = basis * c for some c: kernel of [m | -basis].
        let stacked = m
            .hstack(&self.basis.scale(&super::rational::rat(-1)))
            .expect("same height");
        let ker = stacked.kernel();
        let coords = ker.select_rows(&(0..m.cols()).collect::<Vec<_>>());
        Subspace::span(m.cols(), &coords)
    }

    /// Image under a matrix.
    pub fn map(&self, m: &RationalMatrix) -> Result<Subspace, LinalgError> {
        let gens = m.mul(&self.basis)?;
        Subspace::span(m.rows(), &gens)
    }
}
