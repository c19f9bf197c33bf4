use super::LefschetzError;
use crate::linalg::{RationalMatrix, Subspace};
use crate::Verdict;
use std::collections::BTreeMap;

/// Slot key: (cohomological degree, perverse level).
pub type Slot = (i64, i64);

/// Bigraded module with two commuting raising operators: `eta` raises both
/// gradings by two, `l` only the cohomological one. Forms, when supplied
/// for a slot, pair the slot with itself after the appropriate operator
/// twist and feed the orthogonality certificates.
#[derive(Debug, Clone)]
pub struct BigradedPackage {
    n: i64,
    dims: BTreeMap<Slot, usize>,
    eta: BTreeMap<Slot, RationalMatrix>,
    l: BTreeMap<Slot, RationalMatrix>,
    forms: BTreeMap<Slot, RationalMatrix>,
}

impl BigradedPackage {
    pub fn new(
        n: i64,
        dims: BTreeMap<Slot, usize>,
        eta: BTreeMap<Slot, RationalMatrix>,
        l: BTreeMap<Slot, RationalMatrix>,
        forms: BTreeMap<Slot, RationalMatrix>,
    ) -> Result<Self, LefschetzError> {
        let bad = |msg: String| Err(LefschetzError::InvariantViolated(msg));
        let dim = |slot: &Slot| dims.get(slot).copied().unwrap_or(0);
        for (&(deg, lev), m) in &eta {
            if m.cols() != dim(&(deg, lev)) || m.rows() != dim(&(deg + 2, lev + 2)) {
                return bad(format!("eta at slot ({deg},{lev}) has the wrong shape"));
            }
        }
        for (&(deg, lev), m) in &l {
            if m.cols() != dim(&(deg, lev)) || m.rows() != dim(&(deg + 2, lev)) {
                return bad(format!("l at slot ({deg},{lev}) has the wrong shape"));
            }
        }
        for (&(deg, lev), m) in &forms {
            if m.rows() != dim(&(deg, lev)) || m.cols() != dim(&(deg, lev)) {
                return bad(format!("form at slot ({deg},{lev}) must be square on the slot"));
            }
        }
        let pkg = BigradedPackage { n, dims, eta, l, forms };
        for &slot in pkg.dims.keys() {
            let ab = pkg
                .eta_at((slot.0 + 2, slot.1))
                .mul(&pkg.l_at(slot))
                .expect("shapes validated");
            let ba = pkg
                .l_at((slot.0 + 2, slot.1 + 2))
                .mul(&pkg.eta_at(slot))
                .expect("shapes validated");
            if !ab.sub(&ba).expect("same shape").is_zero() {
                return bad(format!("eta and l do not commute at slot {slot:?}"));
            }
        }
        Ok(pkg)
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn dims(&self) -> &BTreeMap<Slot, usize> {
        &self.dims
    }

    pub fn dim_at(&self, slot: Slot) -> usize {
        self.dims.get(&slot).copied().unwrap_or(0)
    }

    fn eta_at(&self, slot: Slot) -> RationalMatrix {
        self.eta.get(&slot).cloned().unwrap_or_else(|| {
            RationalMatrix::zeros(self.dim_at((slot.0 + 2, slot.1 + 2)), self.dim_at(slot))
        })
    }

    fn l_at(&self, slot: Slot) -> RationalMatrix {
        self.l
            .get(&slot)
            .cloned()
            .unwrap_or_else(|| RationalMatrix::zeros(self.dim_at((slot.0 + 2, slot.1)), self.dim_at(slot)))
    }

    /// `eta^p` from a slot.
    pub fn eta_power(&self, slot: Slot, p: usize) -> RationalMatrix {
        let mut acc = RationalMatrix::identity(self.dim_at(slot));
        let mut here = slot;
        for _ in 0..p {
            acc = self.eta_at(here).mul(&acc).expect("shape");
            here = (here.0 + 2, here.1 + 2);
        }
        acc
    }

    /// `l^p` from a slot.
    pub fn l_power(&self, slot: Slot, p: usize) -> RationalMatrix {
        let mut acc = RationalMatrix::identity(self.dim_at(slot));
        let mut here = slot;
        for _ in 0..p {
            acc = self.l_at(here).mul(&acc).expect("shape");
            here = (here.0 + 2, here.1);
        }
        acc
    }

    pub fn form_at(&self, slot: Slot) -> Option<&RationalMatrix> {
        self.forms.get(&slot)
    }

    /// Graded hard Lefschetz for both operators: `eta^i` between opposite
    /// perverse levels, `l^j` symmetric around the center `n + level`
    /// within each level. Every nonzero slot induces a condition, whether
    /// it is the source or the target of the expected isomorphism.
    pub fn graded_hl_check(&self) -> Vec<(String, bool)> {
        let mut out = Vec::new();
        let mut seen = std::collections::BTreeSet::new();
        for (&(deg, lev), &d) in &self.dims {
            if d == 0 {
                continue;
            }
            if lev != 0 {
                let i = lev.abs();
                let src = if lev < 0 { (deg, lev) } else { (deg - 2 * i, -i) };
                if seen.insert(("eta", src, i)) {
                    let m = self.eta_power(src, i as usize);
                    let ok = m.rows() == m.cols() && m.is_invertible();
                    out.push((format!("eta^{i} from ({},{})", src.0, src.1), ok));
                }
            }
            let center = self.n + lev;
            if deg != center {
                let j = (deg - center).abs();
                let src = if deg < center {
                    (deg, lev)
                } else {
                    (2 * center - deg, lev)
                };
                if seen.insert(("l", src, j)) {
                    let m = self.l_power(src, j as usize);
                    let ok = m.rows() == m.cols() && m.is_invertible();
                    out.push((format!("l^{j} from ({},{})", src.0, src.1), ok));
                }
            }
        }
        out
    }
}

/// One operator-image of a primitive subspace.
#[derive(Debug, Clone)]
pub struct SummandReport {
    /// Indices (i, j) of the generating primitive.
    pub primitive: (i64, i64),
    pub eta_power: usize,
    pub l_power: usize,
    pub slot: Slot,
    pub dim: usize,
}

/// Certificates for one slot of the decomposition.
#[derive(Debug, Clone)]
pub struct SlotReport {
    pub dim: usize,
    pub reconstructed: bool,
    /// Zero pairing between distinct summands; `None` when no form was
    /// supplied for the slot.
    pub orthogonal: Option<bool>,
    /// Radical dimensions of the diagonal blocks, one per summand; all
    /// zero on a healthy slot.
    pub diagonal_radicals: Vec<usize>,
}

/// Full report of the two-operator primitive decomposition.
#[derive(Debug, Clone)]
pub struct EtaLReport {
    pub verdict: Verdict,
    /// Primitive subspaces keyed by (i, j): the joint kernel of
    /// `eta^{i+1}` and `l^{j+1}` in cohomological degree `n - i - j`,
    /// perverse level `-i`.
    pub primitives: BTreeMap<(i64, i64), Subspace>,
    pub summands: Vec<SummandReport>,
    pub slots: BTreeMap<Slot, SlotReport>,
}

/// Decomposes every slot into operator images of the joint primitives,
/// checking reconstruction by rank and, where forms are supplied,
/// orthogonality of distinct summands and nondegeneracy of the diagonal
/// blocks. Requires the graded hard Lefschetz isomorphisms.
pub fn eta_l_decomposition(pkg: &BigradedPackage) -> Result<EtaLReport, LefschetzError> {
    let hl = pkg.graded_hl_check();
    if let Some((which, _)) = hl.iter().find(|(_, ok)| !ok) {
        return Err(LefschetzError::HardLefschetzFails {
            op: if which.starts_with("eta") { "eta" } else { "L" },
            i: -1,
        });
    }
    let n = pkg.n();

    // Joint primitives.
    let mut primitives: BTreeMap<(i64, i64), Subspace> = BTreeMap::new();
    for (&(deg, lev), &d) in pkg.dims() {
        if d == 0 || lev > 0 {
            continue;
        }
        let i = -lev;
        let j = n - i - deg;
        if j < 0 {
            continue;
        }
        let slot = (deg, lev);
        let eta_pow = pkg.eta_power(slot, (i + 1) as usize);
        let l_pow = pkg.l_power(slot, (j + 1) as usize);
        let (_, ker_eta, _) = eta_pow.rank_kernel_image();
        let (_, ker_l, _) = l_pow.rank_kernel_image();
        let joint = ker_eta.intersect(&ker_l);
        if joint.dim() > 0 {
            primitives.insert((i, j), joint);
        }
    }

    // Operator images of the primitives, grouped by slot.
    let mut summands = Vec::new();
    let mut per_slot: BTreeMap<Slot, Vec<(usize, RationalMatrix)>> = BTreeMap::new();
    for (&(i, j), prim) in &primitives {
        let base = (n - i - j, -i);
        for a in 0..=i {
            for b in 0..=j {
                let l_img = pkg
                    .l_power(base, b as usize)
                    .mul(prim.basis())
                    .expect("shape");
                let img = pkg
                    .eta_power((base.0 + 2 * b, base.1), a as usize)
                    .mul(&l_img)
                    .expect("shape");
                let slot = (base.0 + 2 * a + 2 * b, base.1 + 2 * a);
                let idx = summands.len();
                summands.push(SummandReport {
                    primitive: (i, j),
                    eta_power: a as usize,
                    l_power: b as usize,
                    slot,
                    dim: img.cols(),
                });
                per_slot.entry(slot).or_default().push((idx, img));
            }
        }
    }

    // Certificates per slot.
    let mut slots = BTreeMap::new();
    let mut all_ok = true;
    for (&slot, &d) in pkg.dims() {
        if d == 0 {
            continue;
        }
        let parts = per_slot.remove(&slot).unwrap_or_default();
        let mut stacked = RationalMatrix::zeros(d, 0);
        let mut total = 0usize;
        for (_, img) in &parts {
            total += img.cols();
            stacked = stacked.hstack(img).expect("same ambient");
        }
        let reconstructed = total == d && stacked.rank() == d;
        let mut orthogonal = None;
        let mut diagonal_radicals = Vec::new();
        if let Some(form) = pkg.form_at(slot) {
            let mut ortho = true;
            for (x, (_, u)) in parts.iter().enumerate() {
                for (y, (_, v)) in parts.iter().enumerate() {
                    let block = u.transpose().mul(form).expect("shape").mul(v).expect("shape");
                    if x == y {
                        diagonal_radicals.push(block.cols() - block.rank());
                    } else if !block.is_zero() {
                        ortho = false;
                    }
                }
            }
            orthogonal = Some(ortho);
        }
        let healthy = reconstructed
            && orthogonal.unwrap_or(true)
            && diagonal_radicals.iter().all(|&r| r == 0);
        all_ok &= healthy;
        slots.insert(
            slot,
            SlotReport {
                dim: d,
                reconstructed,
                orthogonal,
                diagonal_radicals,
            },
        );
    }

    Ok(EtaLReport {
        verdict: Verdict::from_bool(all_ok),
        primitives,
        summands,
        slots,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    #[test]
    fn trivial_one_slot_package() {
        // A single slot with both operators zero: the slot is its own
        // primitive.
        let mut dims = BTreeMap::new();
        dims.insert((0i64, 0i64), 3usize);
        let mut forms = BTreeMap::new();
        forms.insert((0i64, 0i64), RationalMatrix::identity(3));
        let pkg = BigradedPackage::new(0, dims, BTreeMap::new(), BTreeMap::new(), forms).unwrap();
        let report = eta_l_decomposition(&pkg).unwrap();
        assert!(report.verdict.passed());
        assert_eq!(report.primitives.len(), 1);
        assert_eq!(report.primitives[&(0, 0)].dim(), 3);
        assert_eq!(report.summands.len(), 1);
    }

    #[test]
    fn two_string_toy_module() {
        let pkg = samples::sl2_toy_bigraded();
        let report = eta_l_decomposition(&pkg).unwrap();
        assert!(report.verdict.passed());
        assert_eq!(report.primitives.len(), 1);
        assert_eq!(report.primitives[&(1, 1)].dim(), 1);
        assert_eq!(report.summands.len(), 4);
        assert!(report.summands.iter().all(|s| s.dim == 1));
        let total: usize = report.summands.iter().map(|s| s.dim).sum();
        assert_eq!(total, 4);
        for slot in report.slots.values() {
            assert!(slot.reconstructed);
            assert_eq!(slot.orthogonal, Some(true));
            assert!(slot.diagonal_radicals.iter().all(|&r| r == 0));
        }
    }

    #[test]
    fn tensor_of_sums_has_crowded_middle_slot() {
        let pkg = samples::tensor_string_bigraded();
        let report = eta_l_decomposition(&pkg).unwrap();
        assert!(report.verdict.passed());
        // Four primitives, one per (i, j) in {0,2}^2.
        assert_eq!(report.primitives.len(), 4);
        for (i, j) in [(0i64, 0i64), (0, 2), (2, 0), (2, 2)] {
            assert_eq!(report.primitives[&(i, j)].dim(), 1, "primitive ({i},{j})");
        }
        assert_eq!(report.summands.len(), 16);
        // The middle slot carries four distinct summands, genuinely
        // testing pairwise orthogonality.
        let middle = &report.slots[&(2, 0)];
        assert_eq!(middle.dim, 4);
        assert!(middle.reconstructed);
        assert_eq!(middle.orthogonal, Some(true));
        assert_eq!(middle.diagonal_radicals, vec![0, 0, 0, 0]);
    }

    #[test]
    fn fourfold_middle_slot_has_three_summands() {
        let report = eta_l_decomposition(&samples::fourfold_bigraded()).unwrap();
        assert!(report.verdict.passed());
        // The middle degree splits into the lifted divisor class, the
        // extra primitive and the pullback image.
        let middle: Vec<_> = report
            .summands
            .iter()
            .filter(|s| s.slot == (4, 0))
            .collect();
        assert_eq!(middle.len(), 3);
        assert!(middle.iter().all(|s| s.dim == 1));
        let slot = &report.slots[&(4, 0)];
        assert!(slot.reconstructed);
        assert_eq!(slot.orthogonal, Some(true));
        assert_eq!(slot.diagonal_radicals, vec![0, 0, 0]);
        // Primitive bookkeeping: the divisor class two levels down, the
        // middle primitive, and the degree-zero generator.
        assert_eq!(report.primitives[&(2, 0)].dim(), 1);
        assert_eq!(report.primitives[&(0, 0)].dim(), 1);
        assert_eq!(report.primitives[&(0, 4)].dim(), 1);
    }

    #[test]
    fn broken_hl_is_hypothesis_not_met() {
        // Two opposite levels with a zero eta between them.
        let mut dims = BTreeMap::new();
        dims.insert((0i64, -1i64), 1usize);
        dims.insert((2i64, 1i64), 1usize);
        let pkg =
            BigradedPackage::new(1, dims, BTreeMap::new(), BTreeMap::new(), BTreeMap::new())
                .unwrap();
        assert!(matches!(
            eta_l_decomposition(&pkg),
            Err(LefschetzError::HardLefschetzFails { .. })
        ));
    }
}
