use super::rational::{rat, Rational};
use super::subspace::Subspace;
use super::LinalgError;
use num::{One, Signed, Zero};
use std::fmt;

/// Dense matrix of exact rationals, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

/// Inertia of a symmetric bilinear form: counts of positive, negative and
/// zero entries after congruence diagonalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Signature {
    /// Nondegenerate forms have no radical.
    pub fn is_nondegenerate(&self) -> bool {
        self.zero == 0
    }

    /// True when every vector pairs negatively with itself. Vacuously true
    /// for the empty form; contraction checks rely on that convention.
    pub fn is_negative_definite(&self) -> bool {
        self.positive == 0 && self.zero == 0
    }

    pub fn swapped(&self) -> Signature {
        Signature {
            positive: self.negative,
            negative: self.positive,
            zero: self.zero,
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.positive, self.negative, self.zero)
    }
}

/// Verdict of the definiteness test. The empty form is classified as
/// negative definite (vacuous), matching its use in contraction criteria.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Definiteness {
    PositiveDefinite,
    NegativeDefinite,
    PositiveSemidefinite,
    NegativeSemidefinite,
    Indefinite,
    Degenerate,
}

impl fmt::Display for Definiteness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Definiteness::PositiveDefinite => "positive_definite",
            Definiteness::NegativeDefinite => "negative_definite",
            Definiteness::PositiveSemidefinite => "positive_semidefinite",
            Definiteness::NegativeSemidefinite => "negative_semidefinite",
            Definiteness::Indefinite => "indefinite",
            Definiteness::Degenerate => "degenerate",
        };
        f.write_str(s)
    }
}

/// Definiteness verdict together with the full signature.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DefinitenessReport {
    pub verdict: Definiteness,
    pub signature: Signature,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self, LinalgError> {
        if entries.len() != rows * cols {
            return Err(LinalgError::ShapeMismatch(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                entries.len()
            )));
        }
        Ok(RationalMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinalgError::ShapeMismatch("ragged rows".into()));
        }
        Ok(RationalMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Integer test-fixture constructor.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RationalMatrix {
            rows: r,
            cols: c,
            entries: rows.iter().flat_map(|row| row.iter().map(|&n| rat(n))).collect(),
        }
    }

    pub fn column_vector(entries: Vec<Rational>) -> Self {
        let rows = entries.len();
        RationalMatrix { rows, cols: 1, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        assert!(r < self.rows && c < self.cols, "index out of range");
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        self.entries[r * self.cols + c] = v;
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row(&self, r: usize) -> Vec<Rational> {
        (0..self.cols).map(|c| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Rational::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for r in 0..self.rows {
            for c in r + 1..self.cols {
                if self.get(r, c) != self.get(c, r) {
                    return false;
                }
            }
        }
        true
    }

    pub fn scale(&self, k: &Rational) -> Self {
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * k).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::ShapeMismatch(format!(
                "add {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LinalgError> {
        self.add(&other.scale(&rat(-1)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::ShapeMismatch(format!(
                "mul {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let v = out.get(r, c) + a * other.get(k, c);
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vector(&self, v: &[Rational]) -> Result<Vec<Rational>, LinalgError> {
        let m = self.mul(&RationalMatrix::column_vector(v.to_vec()))?;
        Ok(m.entries)
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.rows != other.rows {
            return Err(LinalgError::ShapeMismatch(format!(
                "hstack {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
            for c in 0..other.cols {
                out.set(r, self.cols + c, other.get(r, c).clone());
            }
        }
        Ok(out)
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.cols {
            return Err(LinalgError::ShapeMismatch(format!(
                "vstack {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(RationalMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut out = Self::zeros(self.rows, cols.len());
        for (j, &c) in cols.iter().enumerate() {
            for r in 0..self.rows {
                out.set(r, j, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut out = Self::zeros(rows.len(), self.cols);
        for (i, &r) in rows.iter().enumerate() {
            for c in 0..self.cols {
                out.set(i, c, self.get(r, c).clone());
            }
        }
        out
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).clone();
            for c in col..m.cols {
                let v = m.get(row, c) / &inv;
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r != row && !m.get(r, col).is_zero() {
                    let f = m.get(r, col).clone();
                    for c in col..m.cols {
                        let v = m.get(r, c) - &f * m.get(row, c);
                        m.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the kernel, one column per free variable of the RREF.
    pub fn kernel(&self) -> RationalMatrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = RationalMatrix::zeros(self.cols, free.len());
        for (j, &f) in free.iter().enumerate() {
            out.set(f, j, Rational::one());
            for (i, &p) in pivots.iter().enumerate() {
                out.set(p, j, -r.get(i, f));
            }
        }
        out
    }

    /// Basis of the column space: the pivot columns of the original matrix.
    pub fn image(&self) -> RationalMatrix {
        let (_, pivots) = self.rref();
        self.select_columns(&pivots)
    }

    /// Rank, kernel and image in one pass. Exact: `rank + dim ker = cols`.
    pub fn rank_kernel_image(&self) -> (usize, Subspace, Subspace) {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut ker = RationalMatrix::zeros(self.cols, free.len());
        for (j, &f) in free.iter().enumerate() {
            ker.set(f, j, Rational::one());
            for (i, &p) in pivots.iter().enumerate() {
                ker.set(p, j, -r.get(i, f));
            }
        }
        let im = self.select_columns(&pivots);
        (
            pivots.len(),
            Subspace::from_independent_columns(self.cols, ker).expect("kernel basis independent"),
            Subspace::from_independent_columns(self.rows, im).expect("pivot columns independent"),
        )
    }

    /// Solves `self * x = rhs` column by column; `None` when inconsistent.
    pub fn solve(&self, rhs: &RationalMatrix) -> Option<RationalMatrix> {
        if rhs.rows != self.rows {
            return None;
        }
        let (r, pivots) = self.hstack(rhs).ok()?.rref();
        // Any pivot beyond self's columns marks an inconsistent system.
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = RationalMatrix::zeros(self.cols, rhs.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for c in 0..rhs.cols {
                x.set(p, c, r.get(i, self.cols + c).clone());
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Result<RationalMatrix, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let (r, pivots) = self
            .hstack(&RationalMatrix::identity(self.rows))
            .expect("same height")
            .rref();
        // Every pivot must land in the original block.
        if pivots.len() != self.rows || pivots.iter().any(|&p| p >= self.cols) {
            return Err(LinalgError::Singular);
        }
        let cols: Vec<usize> = (self.cols..2 * self.cols).collect();
        Ok(r.select_columns(&cols))
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Signature of a symmetric form by congruence diagonalization.
    ///
    /// Walks the diagonal in order (this reproduces the leading-principal-
    /// minor test when no leading block is singular) and falls back to
    /// symmetric pivoting when it hits a zero diagonal entry.
    pub fn signature(&self) -> Result<Signature, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if !self.is_symmetric() {
            return Err(LinalgError::NotSymmetric);
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut sig = Signature {
            positive: 0,
            negative: 0,
            zero: 0,
        };
        for k in 0..n {
            if m.get(k, k).is_zero() {
                if let Some(i) = (k + 1..n).find(|&i| !m.get(i, i).is_zero()) {
                    m.swap_rows(k, i);
                    m.swap_cols(k, i);
                } else if let Some((i, j)) = first_nonzero_off_diagonal(&m, k) {
                    // Zero diagonal block: merge e_i += e_j, which puts
                    // 2*m[i][j] on the diagonal, then move it to position k.
                    m.add_row(i, j, &Rational::one());
                    m.add_col(i, j, &Rational::one());
                    m.swap_rows(k, i);
                    m.swap_cols(k, i);
                } else {
                    sig.zero += n - k;
                    break;
                }
            }
            let d = m.get(k, k).clone();
            if d.is_positive() {
                sig.positive += 1;
            } else {
                sig.negative += 1;
            }
            for r in k + 1..n {
                if !m.get(r, k).is_zero() {
                    let f = -(m.get(r, k) / &d);
                    m.add_row(r, k, &f);
                    m.add_col(r, k, &f);
                }
            }
        }
        Ok(sig)
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.entries.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    fn add_row(&mut self, dst: usize, src: usize, f: &Rational) {
        for c in 0..self.cols {
            let v = self.get(dst, c) + f * self.get(src, c);
            self.set(dst, c, v);
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, f: &Rational) {
        for r in 0..self.rows {
            let v = self.get(r, dst) + f * self.get(r, src);
            self.set(r, dst, v);
        }
    }

    /// Exact definiteness verdict for a symmetric matrix.
    pub fn definiteness(&self) -> Result<DefinitenessReport, LinalgError> {
        let signature = self.signature()?;
        let verdict = match (
            signature.positive > 0,
            signature.negative > 0,
            signature.zero > 0,
        ) {
            (true, true, _) => Definiteness::Indefinite,
            (true, false, false) => Definiteness::PositiveDefinite,
            (true, false, true) => Definiteness::PositiveSemidefinite,
            (false, true, false) => Definiteness::NegativeDefinite,
            (false, true, true) => Definiteness::NegativeSemidefinite,
            (false, false, true) => Definiteness::Degenerate,
            // Empty form: vacuously definite, see `Signature::is_negative_definite`.
            (false, false, false) => Definiteness::NegativeDefinite,
        };
        Ok(DefinitenessReport { verdict, signature })
    }

    /// Form induced on the quotient by the span of a radical vector `v`.
    ///
    /// The complement basis drops the first nonzero coordinate of `v`
    /// (Gaussian pivot order); since `m*v = 0` the restriction to that
    /// complement represents the quotient form.
    pub fn quotient_form(&self, v: &[Rational]) -> Result<RationalMatrix, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if !self.is_symmetric() {
            return Err(LinalgError::NotSymmetric);
        }
        if v.len() != self.cols {
            return Err(LinalgError::ShapeMismatch(format!(
                "radical vector has length {}, expected {}",
                v.len(),
                self.cols
            )));
        }
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return Err(LinalgError::ZeroVector);
        };
        if !self.mul_vector(v)?.iter().all(Rational::is_zero) {
            return Err(LinalgError::NotInRadical);
        }
        let keep: Vec<usize> = (0..self.cols).filter(|&c| c != pivot).collect();
        Ok(self.select_rows(&keep).select_columns(&keep))
    }
}

fn first_nonzero_off_diagonal(m: &RationalMatrix, from: usize) -> Option<(usize, usize)> {
    for i in from..m.rows() {
        for j in i + 1..m.cols() {
            if !m.get(i, j).is_zero() {
                return Some((i, j));
            }
        }
    }
    None
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "]")
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
