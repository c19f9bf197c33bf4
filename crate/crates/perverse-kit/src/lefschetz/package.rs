use super::LefschetzError;
use crate::linalg::{subspace_limit, ParamMatrix, RationalMatrix, Subspace};
use crate::rat;
use crate::Verdict;

/// Graded cohomology of a (virtual) projective variety of complex
/// dimension `n`: one space per degree `0..2n`, two commuting degree-two
/// operators, and the duality pairing degree by degree.
///
/// `eta` plays the role of an ample class on the total space, `l` the
/// pullback of an ample class from the base; nothing here assumes either
/// actually satisfies hard Lefschetz, that is what the checks are for.
#[derive(Debug, Clone)]
pub struct GradedPackage {
    n: usize,
    dims: Vec<usize>,
    eta: Vec<RationalMatrix>,
    l: Vec<RationalMatrix>,
    pairing: Vec<RationalMatrix>,
}

/// The two degree-two operators carried by a package.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PackageOperator {
    Eta,
    L,
}

impl PackageOperator {
    pub fn name(&self) -> &'static str {
        match self {
            PackageOperator::Eta => "eta",
            PackageOperator::L => "L",
        }
    }
}

impl GradedPackage {
    /// Validates shapes, commutation of the two operators, graded symmetry
    /// and nondegeneracy of the pairing, and self-adjointness of both
    /// operators under the pairing.
    pub fn new(
        n: usize,
        dims: Vec<usize>,
        eta: Vec<RationalMatrix>,
        l: Vec<RationalMatrix>,
        pairing: Vec<RationalMatrix>,
    ) -> Result<Self, LefschetzError> {
        let bad = |msg: String| Err(LefschetzError::InvariantViolated(msg));
        if dims.len() != 2 * n + 1 {
            return bad(format!("need {} graded pieces, got {}", 2 * n + 1, dims.len()));
        }
        let op_len = (2 * n).saturating_sub(1);
        if eta.len() != op_len || l.len() != op_len {
            return bad(format!("need {op_len} operator components per operator"));
        }
        if pairing.len() != 2 * n + 1 {
            return bad("need one pairing per degree".into());
        }
        let pkg = GradedPackage { n, dims, eta, l, pairing };
        for k in 0..op_len {
            for (name, op) in [("eta", &pkg.eta[k]), ("L", &pkg.l[k])] {
                if op.rows() != pkg.dims[k + 2] || op.cols() != pkg.dims[k] {
                    return bad(format!(
                        "{name} at degree {k} has shape {}x{}, expected {}x{}",
                        op.rows(),
                        op.cols(),
                        pkg.dims[k + 2],
                        pkg.dims[k]
                    ));
                }
            }
        }
        for k in 0..=2 * n {
            let q = &pkg.pairing[k];
            if q.rows() != pkg.dims[k] || q.cols() != pkg.dims[2 * n - k] {
                return bad(format!("pairing at degree {k} has the wrong shape"));
            }
            if !q.is_invertible() {
                return bad(format!("pairing at degree {k} is degenerate"));
            }
            // Graded symmetry of the cup product.
            let sign = if k % 2 == 0 { rat(1) } else { rat(-1) };
            if *q != pkg.pairing[2 * n - k].transpose().scale(&sign) {
                return bad(format!("pairing at degree {k} breaks graded symmetry"));
            }
        }
        for k in 0..op_len.saturating_sub(2) {
            let ab = pkg.eta[k + 2].mul(&pkg.l[k])?;
            let ba = pkg.l[k + 2].mul(&pkg.eta[k])?;
            if !ab.sub(&ba)?.is_zero() {
                return bad(format!("eta and L do not commute at degree {k}"));
            }
        }
        for k in 0..op_len {
            for (name, op) in [("eta", &pkg.eta), ("L", &pkg.l)] {
                let lhs = op[k].transpose().mul(&pkg.pairing[k + 2])?;
                let rhs = pkg.pairing[k].mul(&op[2 * n - k - 2])?;
                if !lhs.sub(&rhs)?.is_zero() {
                    return bad(format!("{name} is not self-adjoint at degree {k}"));
                }
            }
        }
        Ok(pkg)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_at(&self, k: usize) -> usize {
        self.dims.get(k).copied().unwrap_or(0)
    }

    /// Operator component `H^k -> H^{k+2}` (zero outside the window).
    pub fn operator(&self, op: PackageOperator, k: usize) -> RationalMatrix {
        let table = match op {
            PackageOperator::Eta => &self.eta,
            PackageOperator::L => &self.l,
        };
        table
            .get(k)
            .cloned()
            .unwrap_or_else(|| RationalMatrix::zeros(self.dim_at(k + 2), self.dim_at(k)))
    }

    /// `op^power: H^k -> H^{k+2*power}`.
    pub fn operator_power(&self, op: PackageOperator, k: usize, power: usize) -> RationalMatrix {
        let mut acc = RationalMatrix::identity(self.dim_at(k));
        for step in 0..power {
            acc = self.operator(op, k + 2 * step).mul(&acc).expect("shape");
        }
        acc
    }

    /// Duality pairing `H^k x H^{2n-k} -> Q`.
    pub fn pairing(&self, k: usize) -> &RationalMatrix {
        &self.pairing[k]
    }
}

/// Per-exponent verdicts of the hard Lefschetz check.
#[derive(Debug, Clone)]
pub struct HlVerdict {
    pub op: PackageOperator,
    pub verdicts: Vec<(usize, bool)>,
}

impl HlVerdict {
    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|&(_, ok)| ok)
    }
}

/// Checks `op^i: H^{n-i} -> H^{n+i}` for `i = 1..n`.
pub fn hard_lefschetz_check(g: &GradedPackage, op: PackageOperator) -> HlVerdict {
    let n = g.n();
    let verdicts = (1..=n)
        .map(|i| {
            let m = g.operator_power(op, n - i, i);
            (i, m.rows() == m.cols() && m.is_invertible())
        })
        .collect();
    HlVerdict { op, verdicts }
}

/// Primitive subspaces and the reconstruction certificate.
#[derive(Debug, Clone)]
pub struct PrimitiveDecomposition {
    /// `primitives[k]` is the kernel of `op^{n-k+1}` on `H^k`, `k = 0..n`.
    pub primitives: Vec<Subspace>,
    /// Per degree: the images of the primitives under the operator powers
    /// fill the space directly.
    pub reconstruction: Vec<(usize, bool)>,
    /// Summands of different primitive degrees pair to zero, and matching
    /// degrees pair nondegenerately.
    pub orthogonality: Verdict,
}

/// Splits every graded piece into operator images of primitive subspaces
/// and certifies the splitting by rank and by orthogonality under the
/// pairing. Requires the operator to satisfy hard Lefschetz.
pub fn primitive_decomposition(
    g: &GradedPackage,
    op: PackageOperator,
) -> Result<PrimitiveDecomposition, LefschetzError> {
    let hl = hard_lefschetz_check(g, op);
    if let Some(&(i, _)) = hl.verdicts.iter().find(|&&(_, ok)| !ok) {
        return Err(LefschetzError::HardLefschetzFails {
            op: op.name(),
            i: i as i64,
        });
    }
    let n = g.n();
    let primitives: Vec<Subspace> = (0..=n)
        .map(|k| {
            let power = g.operator_power(op, k, n - k + 1);
            let (_, kernel, _) = power.rank_kernel_image();
            kernel
        })
        .collect();

    let summand = |d: usize, j: usize| -> RationalMatrix {
        let prim_degree = d - 2 * j;
        g.operator_power(op, prim_degree, j)
            .mul(primitives[prim_degree].basis())
            .expect("shape")
    };
    let summand_range = |d: usize| -> Vec<usize> {
        let lo = d.saturating_sub(n);
        let hi = d / 2;
        (lo..=hi).filter(|j| d - 2 * j <= n).collect()
    };

    let mut reconstruction = Vec::new();
    for d in 0..=2 * n {
        let mut all = RationalMatrix::zeros(g.dim_at(d), 0);
        let mut total = 0usize;
        for j in summand_range(d) {
            let s = summand(d, j);
            total += s.cols();
            all = all.hstack(&s).expect("same ambient");
        }
        reconstruction.push((d, total == g.dim_at(d) && all.rank() == g.dim_at(d)));
    }

    let mut orthogonal = true;
    for d in 0..=n {
        let q = g.pairing(d);
        for a in summand_range(d) {
            for b in summand_range(2 * n - d) {
                let left = summand(d, a);
                let right = summand(2 * n - d, b);
                let block = left.transpose().mul(q)?.mul(&right)?;
                if d - 2 * a == 2 * n - d - 2 * b {
                    if block.rows() != block.cols() || !block.is_invertible() {
                        orthogonal = false;
                    }
                } else if !block.is_zero() {
                    orthogonal = false;
                }
            }
        }
    }

    Ok(PrimitiveDecomposition {
        primitives,
        reconstruction,
        orthogonality: Verdict::from_bool(orthogonal),
    })
}

/// Limit as the pencil parameter goes to zero of the kernels of
/// `l + eps*eta` on `H^k`, computed algebraically through the
/// one-parameter kernel and lattice saturation. Requires `eta` to satisfy
/// the hard Lefschetz isomorphism through degree `k`.
pub fn limit_primitives(g: &GradedPackage, k: usize) -> Result<Subspace, LefschetzError> {
    let n = g.n();
    let (low, i) = if k <= n { (k, n - k) } else { (2 * n - k, k - n) };
    let hl = g.operator_power(PackageOperator::Eta, low, i);
    if hl.rows() != hl.cols() || !hl.is_invertible() {
        return Err(LefschetzError::HardLefschetzFails {
            op: PackageOperator::Eta.name(),
            i: i as i64,
        });
    }
    let pencil = ParamMatrix::pencil(
        &g.operator(PackageOperator::L, k),
        &g.operator(PackageOperator::Eta, k),
    )?;
    let kernel = pencil.param_kernel();
    if kernel.is_empty() {
        return Ok(Subspace::zero(g.dim_at(k)));
    }
    Ok(subspace_limit(&kernel)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    fn p1_package() -> GradedPackage {
        // Projective line: dims (1, 0, 1), both operators the fundamental
        // class.
        let id = RationalMatrix::identity(1);
        GradedPackage::new(
            1,
            vec![1, 0, 1],
            vec![id.clone()],
            vec![id.clone()],
            vec![id.clone(), RationalMatrix::zeros(0, 0), id.clone()],
        )
        .unwrap()
    }

    #[test]
    fn p1_passes_hard_lefschetz() {
        let g = p1_package();
        assert!(hard_lefschetz_check(&g, PackageOperator::Eta).all_pass());
        let d = primitive_decomposition(&g, PackageOperator::Eta).unwrap();
        assert_eq!(d.primitives[0].dim(), 1);
        assert_eq!(d.primitives[1].dim(), 0);
        assert!(d.reconstruction.iter().all(|&(_, ok)| ok));
        assert!(d.orthogonality.passed());
    }

    #[test]
    fn zero_operator_fails_hard_lefschetz() {
        let zero = RationalMatrix::zeros(1, 1);
        let id = RationalMatrix::identity(1);
        let g = GradedPackage::new(
            1,
            vec![1, 0, 1],
            vec![zero],
            vec![RationalMatrix::zeros(1, 1)],
            vec![id.clone(), RationalMatrix::zeros(0, 0), id],
        )
        .unwrap();
        assert!(!hard_lefschetz_check(&g, PackageOperator::Eta).all_pass());
        assert!(matches!(
            primitive_decomposition(&g, PackageOperator::Eta),
            Err(LefschetzError::HardLefschetzFails { .. })
        ));
    }

    #[test]
    fn quadric_surface_middle_primitives() {
        let g = samples::quadric_surface_package();
        let d = primitive_decomposition(&g, PackageOperator::Eta).unwrap();
        // One primitive line in the middle besides the fundamental class.
        assert_eq!(d.primitives[2].dim(), 1);
        assert!(d.primitives[2].contains_vector(&[rat(1), rat(-1)]));
        assert!(d.reconstruction.iter().all(|&(_, ok)| ok));
        assert!(d.orthogonality.passed());
    }

    #[test]
    fn brute_force_primitives_match() {
        // Independent route: intersect kernels of all higher powers.
        let g = samples::quadric_surface_package();
        let d = primitive_decomposition(&g, PackageOperator::Eta).unwrap();
        for k in 0..=g.n() {
            let mut brute = Subspace::full(g.dim_at(k));
            for extra in (g.n() - k + 1)..=(2 * g.n()) {
                let power = g.operator_power(PackageOperator::Eta, k, extra);
                let (_, ker, _) = power.rank_kernel_image();
                brute = brute.intersect(&ker);
            }
            assert!(brute.equals(&d.primitives[k]), "degree {k}");
        }
    }

    #[test]
    fn surface_model_limit_is_kernel_of_l() {
        let g = samples::surface_limit_package();
        let limit = limit_primitives(&g, 2).unwrap();
        let (_, ker, _) = g.operator(PackageOperator::L, 2).rank_kernel_image();
        assert!(limit.equals(&ker));
        assert_eq!(limit.dim(), 2);
    }

    #[test]
    fn limit_with_l_zero_is_kernel_of_eta() {
        // L = 0: the pencil kernel is constant, the kernel of eta.
        let id = RationalMatrix::identity(1);
        let g = GradedPackage::new(
            1,
            vec![1, 0, 1],
            vec![id.clone()],
            vec![RationalMatrix::zeros(1, 1)],
            vec![id.clone(), RationalMatrix::zeros(0, 0), id],
        )
        .unwrap();
        let limit = limit_primitives(&g, 0).unwrap();
        assert_eq!(limit.dim(), 0);
    }
}
