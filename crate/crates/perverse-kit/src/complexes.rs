//! Bounded complexes of finite-dimensional rational spaces with the
//! functors used on germ stalks: cohomology with chosen representatives,
//! standard truncation, mapping cones and linear duality with regrading.
//!
//! Complexes are strict: actual differentials, not homotopy classes. A
//! complex is the zero spaces outside its stored degree window.

use crate::linalg::{rat, LinalgError, Rational, RationalMatrix};
use std::collections::BTreeMap;
use std::fmt;

/// Bounded cochain complex; `dims[i]` is the dimension in degree `lo + i`
/// and `diffs[i]` maps degree `lo + i` to degree `lo + i + 1`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    lo: i64,
    dims: Vec<usize>,
    diffs: Vec<RationalMatrix>,
}

/// Truncation modes: keep degrees at most / at least the cut.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Truncation {
    AtMost(i64),
    AtLeast(i64),
}

impl ChainComplex {
    /// Validates shapes and `d o d = 0`.
    pub fn new(lo: i64, dims: Vec<usize>, diffs: Vec<RationalMatrix>) -> Result<Self, LinalgError> {
        let expected = dims.len().saturating_sub(1);
        if diffs.len() != expected {
            return Err(LinalgError::ShapeMismatch(format!(
                "{} differentials for {} degrees",
                diffs.len(),
                dims.len()
            )));
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.rows() != dims[i + 1] || d.cols() != dims[i] {
                return Err(LinalgError::ShapeMismatch(format!(
                    "differential at degree {} has shape {}x{}, expected {}x{}",
                    lo + i as i64,
                    d.rows(),
                    d.cols(),
                    dims[i + 1],
                    dims[i]
                )));
            }
        }
        for i in 0..diffs.len().saturating_sub(1) {
            if !diffs[i + 1].mul(&diffs[i])?.is_zero() {
                return Err(LinalgError::ShapeMismatch(format!(
                    "d o d != 0 at degree {}",
                    lo + i as i64
                )));
            }
        }
        Ok(ChainComplex { lo, dims, diffs })
    }

    /// Complex with the given dimensions and zero differentials.
    pub fn with_zero_differentials(lo: i64, dims: Vec<usize>) -> Self {
        let diffs = (0..dims.len().saturating_sub(1))
            .map(|i| RationalMatrix::zeros(dims[i + 1], dims[i]))
            .collect();
        ChainComplex { lo, dims, diffs }
    }

    pub fn zero() -> Self {
        ChainComplex {
            lo: 0,
            dims: vec![],
            diffs: vec![],
        }
    }

    /// One space placed in a single degree.
    pub fn concentrated(degree: i64, dim: usize) -> Self {
        ChainComplex::with_zero_differentials(degree, vec![dim])
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.dims.len() as i64 - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_at(&self, k: i64) -> usize {
        if k < self.lo {
            return 0;
        }
        self.dims.get((k - self.lo) as usize).copied().unwrap_or(0)
    }

    /// Differential leaving degree `k` (a zero map outside the window).
    pub fn diff_at(&self, k: i64) -> RationalMatrix {
        let idx = k - self.lo;
        if idx >= 0 && (idx as usize) < self.diffs.len() {
            self.diffs[idx as usize].clone()
        } else {
            RationalMatrix::zeros(self.dim_at(k + 1), self.dim_at(k))
        }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// Quasi-isomorphic replacement with zero differentials: one space per
    /// degree of the cohomology. Over a field this loses nothing.
    pub fn strictified(&self) -> ChainComplex {
        let h = self.cohomology();
        ChainComplex::with_zero_differentials(
            self.lo,
            (0..self.dims.len())
                .map(|i| h.dim_at(self.lo + i as i64))
                .collect(),
        )
        .trimmed()
    }

    /// Drops zero-dimensional padding at both ends.
    pub fn trimmed(&self) -> ChainComplex {
        let Some(first) = self.dims.iter().position(|&d| d > 0) else {
            return ChainComplex::zero();
        };
        let last = self.dims.iter().rposition(|&d| d > 0).expect("nonempty");
        let dims = self.dims[first..=last].to_vec();
        let diffs = self.diffs[first..last].to_vec();
        ChainComplex {
            lo: self.lo + first as i64,
            dims,
            diffs,
        }
    }

    /// Shift `C[n]`: degree `k` of the result is degree `k + n` of the
    /// input; differentials pick up the sign `(-1)^n`.
    pub fn shift(&self, n: i64) -> ChainComplex {
        let sign = if n.rem_euclid(2) == 0 { rat(1) } else { rat(-1) };
        ChainComplex {
            lo: self.lo - n,
            dims: self.dims.clone(),
            diffs: self.diffs.iter().map(|d| d.scale(&sign)).collect(),
        }
    }

    /// Cohomology in every degree, with chosen cycle representatives.
    pub fn cohomology(&self) -> Cohomology {
        let mut reps = Vec::with_capacity(self.dims.len());
        for i in 0..self.dims.len() {
            let k = self.lo + i as i64;
            let cycles = self.diff_at(k).kernel();
            let boundaries = self.diff_at(k - 1).image();
            // Kernel columns independent modulo the boundaries.
            let (_, pivots) = boundaries.hstack(&cycles).expect("same ambient").rref();
            let chosen: Vec<usize> = pivots
                .iter()
                .filter(|&&p| p >= boundaries.cols())
                .map(|&p| p - boundaries.cols())
                .collect();
            reps.push(cycles.select_columns(&chosen));
        }
        Cohomology { lo: self.lo, reps }
    }

    pub fn cohomology_dims(&self) -> BTreeMap<i64, usize> {
        self.cohomology().dims()
    }

    /// Standard truncation. `AtMost(k)` keeps degrees below `k`, replaces
    /// degree `k` by the kernel of its differential and zeroes the rest;
    /// `AtLeast(k)` dually replaces degree `k` by the cokernel of the
    /// incoming differential.
    pub fn truncate(&self, mode: Truncation) -> ChainComplex {
        match mode {
            Truncation::AtMost(k) => {
                if self.dims.is_empty() || k >= self.hi() {
                    return self.clone();
                }
                if k < self.lo {
                    return ChainComplex::zero();
                }
                let cut = (k - self.lo) as usize;
                let kernel = self.diffs[cut].kernel();
                let mut dims = self.dims[..cut].to_vec();
                dims.push(kernel.cols());
                let mut diffs = self.diffs[..cut.saturating_sub(1)].to_vec();
                if cut > 0 {
                    // Rewrite d^{k-1} in kernel coordinates; its image lies
                    // in the kernel because d o d = 0.
                    let into = kernel
                        .solve(&self.diffs[cut - 1])
                        .expect("image of d lies in ker d");
                    diffs.push(into);
                }
                ChainComplex { lo: self.lo, dims, diffs }
            }
            Truncation::AtLeast(k) => {
                if self.dims.is_empty() || k <= self.lo {
                    return self.clone();
                }
                if k > self.hi() {
                    return ChainComplex::zero();
                }
                let cut = (k - self.lo) as usize;
                // Standard basis vectors completing the image to a basis
                // give cokernel representatives.
                let image = self.diffs[cut - 1].image();
                let n = self.dims[cut];
                let (_, pivots) = image
                    .hstack(&RationalMatrix::identity(n))
                    .expect("same ambient")
                    .rref();
                let chosen: Vec<usize> = pivots
                    .iter()
                    .filter(|&&p| p >= image.cols())
                    .map(|&p| p - image.cols())
                    .collect();
                let embed = RationalMatrix::identity(n).select_columns(&chosen);
                let mut dims = vec![chosen.len()];
                dims.extend_from_slice(&self.dims[cut + 1..]);
                let mut diffs = Vec::new();
                if cut < self.diffs.len() {
                    diffs.push(self.diffs[cut].mul(&embed).expect("shape"));
                    diffs.extend_from_slice(&self.diffs[cut + 1..]);
                }
                ChainComplex { lo: k, dims, diffs }
            }
        }
    }

    /// Linear dual against the ground field placed in degree `-2r`: the
    /// degree-`k` space is the dual of the degree `-k-2r` space and the
    /// differentials are transposes with the sign `(-1)^k`.
    pub fn dualize(&self, r: i64) -> ChainComplex {
        if self.dims.is_empty() {
            return ChainComplex::zero();
        }
        let lo = -self.hi() - 2 * r;
        let n = self.dims.len();
        let dims: Vec<usize> = (0..n).map(|i| self.dims[n - 1 - i]).collect();
        let mut diffs = Vec::with_capacity(n.saturating_sub(1));
        for i in 0..n.saturating_sub(1) {
            let k = lo + i as i64;
            // d'^k is the transpose of the differential into degree -k-2r.
            let sign = if k.rem_euclid(2) == 0 { rat(1) } else { rat(-1) };
            diffs.push(self.diff_at(-k - 2 * r - 1).transpose().scale(&sign));
        }
        ChainComplex { lo, dims, diffs }
    }
}

impl fmt::Display for ChainComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dims.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .dims
            .iter()
            .enumerate()
            .map(|(i, d)| format!("{}:{}", self.lo + i as i64, d))
            .collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// Cohomology of a complex with chosen cycle representatives per degree.
#[derive(Clone, Debug)]
pub struct Cohomology {
    lo: i64,
    reps: Vec<RationalMatrix>,
}

impl Cohomology {
    pub fn dim_at(&self, k: i64) -> usize {
        if k < self.lo {
            return 0;
        }
        self.reps
            .get((k - self.lo) as usize)
            .map_or(0, RationalMatrix::cols)
    }

    /// Representatives in degree `k`: columns are cycles spanning the
    /// cohomology.
    pub fn reps_at(&self, k: i64) -> Option<&RationalMatrix> {
        if k < self.lo {
            return None;
        }
        self.reps.get((k - self.lo) as usize)
    }

    /// Nonzero dimensions by degree.
    pub fn dims(&self) -> BTreeMap<i64, usize> {
        self.reps
            .iter()
            .enumerate()
            .filter(|(_, m)| m.cols() > 0)
            .map(|(i, m)| (self.lo + i as i64, m.cols()))
            .collect()
    }

    pub fn total_dim(&self) -> usize {
        self.reps.iter().map(RationalMatrix::cols).sum()
    }

    /// Coordinates of a cycle's class in the chosen representative basis;
    /// `None` when the vector is not a cycle of the complex at `k`.
    pub fn class_coordinates(
        &self,
        complex: &ChainComplex,
        k: i64,
        cycle: &[Rational],
    ) -> Option<Vec<Rational>> {
        if !complex
            .diff_at(k)
            .mul_vector(cycle)
            .ok()?
            .iter()
            .all(num::Zero::is_zero)
        {
            return None;
        }
        let reps = if self.dim_at(k) > 0 {
            self.reps_at(k).expect("degree in range").clone()
        } else {
            RationalMatrix::zeros(complex.dim_at(k), 0)
        };
        let boundaries = complex.diff_at(k - 1).image();
        let basis = reps.hstack(&boundaries).ok()?;
        let sol = basis.solve(&RationalMatrix::column_vector(cycle.to_vec()))?;
        Some((0..reps.cols()).map(|i| sol.get(i, 0).clone()).collect())
    }
}

/// Degreewise map of complexes commuting with the differentials.
#[derive(Clone, Debug)]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    comps: BTreeMap<i64, RationalMatrix>,
}

impl ChainMap {
    /// Validates component shapes and commutation with the differentials.
    /// Missing components are zero maps.
    pub fn new(
        source: ChainComplex,
        target: ChainComplex,
        comps: BTreeMap<i64, RationalMatrix>,
    ) -> Result<Self, LinalgError> {
        for (&k, m) in &comps {
            if m.rows() != target.dim_at(k) || m.cols() != source.dim_at(k) {
                return Err(LinalgError::ShapeMismatch(format!(
                    "component at degree {k} has shape {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    target.dim_at(k),
                    source.dim_at(k)
                )));
            }
        }
        let map = ChainMap { source, target, comps };
        let lo = map.source.lo().min(map.target.lo());
        let hi = map.source.hi().max(map.target.hi());
        for k in lo..hi {
            let lhs = map.target.diff_at(k).mul(&map.component(k))?;
            let rhs = map.component(k + 1).mul(&map.source.diff_at(k))?;
            if lhs.sub(&rhs)?.is_zero() {
                continue;
            }
            return Err(LinalgError::ShapeMismatch(format!(
                "map does not commute with differentials at degree {k}"
            )));
        }
        Ok(map)
    }

    pub fn identity(c: &ChainComplex) -> Self {
        let comps = (c.lo()..=c.hi())
            .map(|k| (k, RationalMatrix::identity(c.dim_at(k))))
            .collect();
        ChainMap {
            source: c.clone(),
            target: c.clone(),
            comps,
        }
    }

    pub fn zero(source: &ChainComplex, target: &ChainComplex) -> Self {
        ChainMap {
            source: source.clone(),
            target: target.clone(),
            comps: BTreeMap::new(),
        }
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    pub fn component(&self, k: i64) -> RationalMatrix {
        self.comps
            .get(&k)
            .cloned()
            .unwrap_or_else(|| RationalMatrix::zeros(self.target.dim_at(k), self.source.dim_at(k)))
    }

    /// Matrix of the induced map on cohomology in degree `k`, written in
    /// the representative bases chosen by `Cohomology`.
    pub fn induced_on_cohomology(
        &self,
        k: i64,
        source_cohomology: &Cohomology,
        target_cohomology: &Cohomology,
    ) -> RationalMatrix {
        let hs = source_cohomology.dim_at(k);
        let ht = target_cohomology.dim_at(k);
        let mut out = RationalMatrix::zeros(ht, hs);
        if hs == 0 {
            return out;
        }
        let reps = source_cohomology.reps_at(k).expect("source classes");
        let f = self.component(k);
        for j in 0..hs {
            let image = f.mul_vector(&reps.column(j)).expect("shape");
            let coords = target_cohomology
                .class_coordinates(&self.target, k, &image)
                .expect("image of a cycle is a cycle");
            for (i, c) in coords.iter().enumerate() {
                out.set(i, j, c.clone());
            }
        }
        out
    }
}

/// Mapping cone: degree `k` is `target^k + source^{k+1}` with differential
/// `[[d_B, f], [0, -d_A]]`.
pub fn cone(f: &ChainMap) -> ChainComplex {
    let a = f.source();
    let b = f.target();
    if a.is_zero() && b.is_zero() {
        return ChainComplex::zero();
    }
    let lo = b.lo().min(a.lo() - 1);
    let hi = b.hi().max(a.hi() - 1);
    let dims: Vec<usize> = (lo..=hi)
        .map(|k| b.dim_at(k) + a.dim_at(k + 1))
        .collect();
    let mut diffs = Vec::new();
    for k in lo..hi {
        let (bk, ak1) = (b.dim_at(k), a.dim_at(k + 1));
        let (bk1, ak2) = (b.dim_at(k + 1), a.dim_at(k + 2));
        let mut d = RationalMatrix::zeros(bk1 + ak2, bk + ak1);
        let db = b.diff_at(k);
        let fa = f.component(k + 1);
        let da = a.diff_at(k + 1);
        for r in 0..bk1 {
            for c in 0..bk {
                d.set(r, c, db.get(r, c).clone());
            }
            for c in 0..ak1 {
                d.set(r, bk + c, fa.get(r, c).clone());
            }
        }
        for r in 0..ak2 {
            for c in 0..ak1 {
                d.set(bk1 + r, bk + c, -da.get(r, c));
            }
        }
        diffs.push(d);
    }
    ChainComplex::new(lo, dims, diffs).expect("cone of a chain map is a complex")
}

/// Fiber of a map: the cone shifted one step right, sitting in the exact
/// triangle `fiber -> source -> target`.
pub fn fiber(f: &ChainMap) -> ChainComplex {
    cone(f).shift(-1)
}

/// Inclusion of the target into the cone.
pub fn cone_inclusion(f: &ChainMap) -> ChainMap {
    let c = cone(f);
    let b = f.target().clone();
    let comps = (b.lo()..=b.hi())
        .map(|k| {
            let mut m = RationalMatrix::zeros(c.dim_at(k), b.dim_at(k));
            for i in 0..b.dim_at(k) {
                m.set(i, i, rat(1));
            }
            (k, m)
        })
        .collect();
    ChainMap::new(b, c, comps).expect("inclusion commutes")
}

/// Projection of the cone onto the shifted source.
pub fn cone_projection(f: &ChainMap) -> ChainMap {
    let c = cone(f);
    let a1 = f.source().shift(1);
    let comps = (c.lo()..=c.hi())
        .map(|k| {
            let bk = f.target().dim_at(k);
            let ak1 = a1.dim_at(k);
            let mut m = RationalMatrix::zeros(ak1, c.dim_at(k));
            for i in 0..ak1 {
                m.set(i, bk + i, rat(1));
            }
            (k, m)
        })
        .collect();
    ChainMap::new(c, a1, comps).expect("projection commutes")
}
