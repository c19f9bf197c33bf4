//! Matrices over the rational-function field in one formal parameter and
//! the algebraic limit of a family of subspaces as the parameter goes to
//! zero. The parameter stands in for 1/n in pencils of operators
//! `L + (1/n)*eta`; limits are taken by valuation bookkeeping, never
//! numerically.

use super::matrix::RationalMatrix;
use super::rational::Rational;
#[cfg(test)]
use super::rational::rat;
use super::subspace::Subspace;
use super::LinalgError;
use num::{BigInt, One, Signed, Zero};
use std::fmt;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

/// Cooperative cancellation for long eliminations. Clone freely; all clones
/// share the flag.
#[derive(Clone, Debug, Default)]
pub struct CancelToken {
    flag: Arc<AtomicBool>,
}

impl CancelToken {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cancel(&self) {
        self.flag.store(true, Ordering::Relaxed);
    }

    pub fn is_cancelled(&self) -> bool {
        self.flag.load(Ordering::Relaxed)
    }
}

/// Univariate polynomial in the parameter, dense by degree, trailing zeros
/// trimmed. The zero polynomial has an empty coefficient list.
#[derive(Clone, PartialEq, Eq)]
pub struct EpsPoly {
    coeffs: Vec<Rational>,
}

impl EpsPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        EpsPoly { coeffs }
    }

    pub fn zero() -> Self {
        EpsPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        EpsPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        EpsPoly::new(vec![c])
    }

    /// The parameter itself.
    pub fn eps() -> Self {
        EpsPoly::new(vec![Rational::zero(), Rational::one()])
    }

    /// `a + b*eps`.
    pub fn linear(a: Rational, b: Rational) -> Self {
        EpsPoly::new(vec![a, b])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Smallest exponent with nonzero coefficient; `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// Value at parameter zero.
    pub fn eval0(&self) -> Rational {
        self.coeff(0)
    }

    pub fn eval(&self, at: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * at + c;
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        EpsPoly::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        EpsPoly::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn neg(&self) -> Self {
        EpsPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return EpsPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        EpsPoly::new(coeffs)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        EpsPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Quotient by a divisor that divides exactly; `None` on any remainder.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(EpsPoly::zero());
        }
        let mut rem = self.coeffs.clone();
        let dd = divisor.coeffs.len() - 1;
        let lead = divisor.coeffs.last().expect("nonzero divisor");
        if rem.len() < divisor.coeffs.len() {
            return None;
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = rem[k].clone();
            if c.is_zero() {
                continue;
            }
            let q = c / lead;
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k - dd + j] -= &q * dc;
            }
            quot[k - dd] = q;
        }
        if rem.iter().all(Rational::is_zero) {
            Some(EpsPoly::new(quot))
        } else {
            None
        }
    }

    /// Shifts down by `eps^v`; requires valuation at least `v`.
    pub fn shift_down(&self, v: usize) -> Self {
        if v == 0 || self.is_zero() {
            return self.clone();
        }
        assert!(
            self.valuation().is_none_or(|val| val >= v),
            "valuation too small for shift"
        );
        EpsPoly::new(self.coeffs[v.min(self.coeffs.len())..].to_vec())
    }

    /// Monic gcd via Euclid; gcd(0,0) = 0.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        match a.coeffs.last() {
            Some(lead) => a.scale(&(Rational::one() / lead)),
            None => a,
        }
    }

    fn rem(&self, divisor: &Self) -> Self {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let dd = divisor.coeffs.len() - 1;
        let lead = divisor.coeffs.last().expect("nonzero divisor");
        let mut rem = self.coeffs.clone();
        while rem.len() > dd {
            let k = rem.len() - 1;
            let c = rem[k].clone();
            if !c.is_zero() {
                let q = &c / lead;
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[k - dd + j] -= &q * dc;
                }
            }
            rem.pop();
        }
        EpsPoly::new(rem)
    }

    /// Gcd of the rational coefficients: gcd of numerators over lcm of
    /// denominators, always nonnegative. Zero for the zero polynomial.
    pub fn content(&self) -> Rational {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in &self.coeffs {
            num = num::integer::gcd(num, c.numer().clone());
            den = num::integer::lcm(den, c.denom().clone());
        }
        Rational::new(num.abs(), den)
    }
}

impl fmt::Debug for EpsPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for EpsPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let minus_one = -Rational::one();
            match k {
                0 => write!(f, "{c}")?,
                1 if c.is_one() => write!(f, "e")?,
                1 if *c == minus_one => write!(f, "-e")?,
                1 => write!(f, "{c}*e")?,
                _ if c.is_one() => write!(f, "e^{k}")?,
                _ if *c == minus_one => write!(f, "-e^{k}")?,
                _ => write!(f, "{c}*e^{k}")?,
            }
        }
        Ok(())
    }
}

/// Ratio of polynomials in the parameter, stored reduced: numerator and
/// denominator coprime, denominator with unit content and positive leading
/// coefficient.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyFrac {
    num: EpsPoly,
    den: EpsPoly,
}

impl PolyFrac {
    pub fn new(num: EpsPoly, den: EpsPoly) -> Result<Self, LinalgError> {
        if den.is_zero() {
            return Err(LinalgError::ZeroPolynomialDivision);
        }
        let mut f = PolyFrac { num, den };
        f.reduce();
        Ok(f)
    }

    pub fn from_poly(p: EpsPoly) -> Self {
        PolyFrac {
            num: p,
            den: EpsPoly::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_poly(EpsPoly::zero())
    }

    pub fn num(&self) -> &EpsPoly {
        &self.num
    }

    pub fn den(&self) -> &EpsPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = EpsPoly::one();
            return;
        }
        let g = self.num.gcd(&self.den);
        if g.degree() > Some(0) {
            self.num = self.num.div_exact(&g).expect("gcd divides");
            self.den = self.den.div_exact(&g).expect("gcd divides");
        }
        // Normalize: denominator content 1, positive leading coefficient.
        let mut scale = self.den.content();
        if self
            .den
            .coeffs
            .last()
            .is_some_and(|lead| lead.is_negative())
        {
            scale = -scale;
        }
        let inv = Rational::one() / scale;
        self.num = self.num.scale(&inv);
        self.den = self.den.scale(&inv);
    }

    pub fn add(&self, other: &Self) -> Self {
        PolyFrac::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
        .expect("nonzero denominators")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        PolyFrac {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        PolyFrac::new(self.num.mul(&other.num), self.den.mul(&other.den))
            .expect("nonzero denominators")
    }

    pub fn div(&self, other: &Self) -> Result<Self, LinalgError> {
        if other.is_zero() {
            return Err(LinalgError::ZeroPolynomialDivision);
        }
        PolyFrac::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }
}

impl fmt::Debug for PolyFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// Dense matrix over the rational-function field.
#[derive(Clone, Debug)]
pub struct ParamMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<PolyFrac>,
}

impl ParamMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<PolyFrac>) -> Result<Self, LinalgError> {
        if entries.len() != rows * cols {
            return Err(LinalgError::ShapeMismatch(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                entries.len()
            )));
        }
        Ok(ParamMatrix { rows, cols, entries })
    }

    pub fn from_polys(rows: usize, cols: usize, entries: Vec<EpsPoly>) -> Result<Self, LinalgError> {
        Self::new(rows, cols, entries.into_iter().map(PolyFrac::from_poly).collect())
    }

    /// The pencil `a + eps*b`.
    pub fn pencil(a: &RationalMatrix, b: &RationalMatrix) -> Result<Self, LinalgError> {
        if a.rows() != b.rows() || a.cols() != b.cols() {
            return Err(LinalgError::ShapeMismatch(format!(
                "pencil of {}x{} with {}x{}",
                a.rows(),
                a.cols(),
                b.rows(),
                b.cols()
            )));
        }
        let mut entries = Vec::with_capacity(a.rows() * a.cols());
        for r in 0..a.rows() {
            for c in 0..a.cols() {
                entries.push(PolyFrac::from_poly(EpsPoly::linear(
                    a.get(r, c).clone(),
                    b.get(r, c).clone(),
                )));
            }
        }
        Self::new(a.rows(), a.cols(), entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &PolyFrac {
        &self.entries[r * self.cols + c]
    }

    /// Evaluation at parameter zero; fails if some denominator vanishes there.
    pub fn eval0(&self) -> Result<RationalMatrix, LinalgError> {
        let mut out = Vec::with_capacity(self.rows * self.cols);
        for e in &self.entries {
            let d0 = e.den().eval0();
            if d0.is_zero() {
                return Err(LinalgError::ZeroPolynomialDivision);
            }
            out.push(e.num().eval0() / d0);
        }
        RationalMatrix::new(self.rows, self.cols, out)
    }

    /// Kernel basis over the function field.
    ///
    /// Rows are first cleared of denominators, then a fraction-free
    /// (Bareiss) elimination runs on the polynomial matrix; back
    /// substitution divides only by pivot polynomials and each resulting
    /// column is cleared to polynomial entries with unit content, first
    /// nonzero coefficient positive.
    pub fn param_kernel(&self) -> Vec<Vec<EpsPoly>> {
        self.param_kernel_cancellable(&CancelToken::new())
            .expect("fresh token never cancelled")
    }

    /// As `param_kernel`, stopping early when `cancel` fires.
    pub fn param_kernel_cancellable(
        &self,
        cancel: &CancelToken,
    ) -> Result<Vec<Vec<EpsPoly>>, LinalgError> {
        // Clear denominators row by row; row scaling preserves the kernel.
        let mut m: Vec<Vec<EpsPoly>> = (0..self.rows)
            .map(|r| {
                let mut lcm = EpsPoly::one();
                for c in 0..self.cols {
                    let den = self.get(r, c).den();
                    let g = lcm.gcd(den);
                    lcm = lcm.mul(&den.div_exact(&g).expect("gcd divides"));
                }
                (0..self.cols)
                    .map(|c| {
                        let e = self.get(r, c);
                        let extra = lcm.div_exact(e.den()).expect("lcm of denominators");
                        e.num().mul(&extra)
                    })
                    .collect()
            })
            .collect();

        // Bareiss fraction-free forward elimination.
        let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
        let mut prev_pivot = EpsPoly::one();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            if cancel.is_cancelled() {
                return Err(LinalgError::Cancelled);
            }
            let Some(p) = (row..self.rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(row, p);
            let pivot = m[row][col].clone();
            for r in row + 1..self.rows {
                for c in col + 1..self.cols {
                    let t = pivot.mul(&m[r][c]).sub(&m[r][col].mul(&m[row][c]));
                    m[r][c] = t.div_exact(&prev_pivot).expect("Bareiss divisibility");
                }
                m[r][col] = EpsPoly::zero();
            }
            prev_pivot = pivot;
            pivots.push((row, col));
            row += 1;
        }

        // Back substitution over the function field, one kernel column per
        // free variable.
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_cols.contains(c)).collect();
        let mut kernel = Vec::with_capacity(free.len());
        for &f in &free {
            if cancel.is_cancelled() {
                return Err(LinalgError::Cancelled);
            }
            let mut x: Vec<PolyFrac> = (0..self.cols).map(|_| PolyFrac::zero()).collect();
            x[f] = PolyFrac::from_poly(EpsPoly::one());
            for &(pr, pc) in pivots.iter().rev() {
                let mut acc = PolyFrac::zero();
                for c in pc + 1..self.cols {
                    if !m[pr][c].is_zero() && !x[c].is_zero() {
                        acc = acc.add(&PolyFrac::from_poly(m[pr][c].clone()).mul(&x[c]));
                    }
                }
                x[pc] = acc
                    .neg()
                    .div(&PolyFrac::from_poly(m[pr][pc].clone()))
                    .expect("pivot nonzero");
            }
            kernel.push(clear_column(&x));
        }
        Ok(kernel)
    }
}

/// Scales a function-field column to polynomial entries with unit content
/// and positive first nonzero coefficient.
fn clear_column(col: &[PolyFrac]) -> Vec<EpsPoly> {
    let mut lcm = EpsPoly::one();
    for e in col {
        let g = lcm.gcd(e.den());
        lcm = lcm.mul(&e.den().div_exact(&g).expect("gcd divides"));
    }
    let mut polys: Vec<EpsPoly> = col
        .iter()
        .map(|e| {
            e.num()
                .mul(&lcm.div_exact(e.den()).expect("lcm of denominators"))
        })
        .collect();
    // Divide out the polynomial gcd of the entries, then the content.
    let mut g = EpsPoly::zero();
    for p in &polys {
        g = g.gcd(p);
    }
    if g.degree() > Some(0) {
        polys = polys
            .iter()
            .map(|p| p.div_exact(&g).expect("gcd divides"))
            .collect();
    }
    let mut content = Rational::zero();
    for p in &polys {
        let c = p.content();
        content = if content.is_zero() {
            c
        } else {
            gcd_rational(&content, &c)
        };
    }
    if !content.is_zero() {
        let lead_sign = polys
            .iter()
            .find_map(|p| p.valuation().map(|v| p.coeff(v)))
            .is_some_and(|c| c.is_negative());
        let mut scale = Rational::one() / content;
        if lead_sign {
            scale = -scale;
        }
        polys = polys.iter().map(|p| p.scale(&scale)).collect();
    }
    polys
}

fn gcd_rational(a: &Rational, b: &Rational) -> Rational {
    Rational::new(
        num::integer::gcd(a.numer().clone(), b.numer().clone()).abs(),
        num::integer::lcm(a.denom().clone(), b.denom().clone()),
    )
}

/// Limit as the parameter goes to zero of the family of subspaces spanned
/// by the given polynomial columns, which must be independent over the
/// function field.
///
/// The column lattice is saturated at the parameter: while evaluation at
/// zero drops rank, a rational dependency among the evaluated columns is
/// lifted to the polynomial combination, divided by its valuation, and
/// substituted for the last column it involves. Each step strictly lowers
/// the valuation of the lattice's maximal minors, so this terminates; at
/// the end the evaluations span a subspace of the generic dimension.
pub fn subspace_limit(columns: &[Vec<EpsPoly>]) -> Result<Subspace, LinalgError> {
    let Some(first) = columns.first() else {
        return Err(LinalgError::ShapeMismatch("no columns".into()));
    };
    let n = first.len();
    if columns.iter().any(|c| c.len() != n) {
        return Err(LinalgError::ShapeMismatch("ragged columns".into()));
    }
    let mut cols: Vec<Vec<EpsPoly>> = columns.iter().map(|c| normalize_column(c)).collect();
    if cols.iter().any(|c| c.iter().all(EpsPoly::is_zero)) {
        return Err(LinalgError::DependentColumns);
    }
    loop {
        let evals = eval0_matrix(&cols, n);
        let ker = evals.kernel();
        if ker.cols() == 0 {
            return Subspace::from_independent_columns(n, evals);
        }
        // Lift the first dependency and saturate.
        let dep = ker.column(0);
        let mut combo = vec![EpsPoly::zero(); n];
        for (j, c) in dep.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (combo_e, col_e) in combo.iter_mut().zip(&cols[j]) {
                *combo_e = combo_e.add(&col_e.scale(c));
            }
        }
        let v = combo
            .iter()
            .filter_map(EpsPoly::valuation)
            .min()
            .ok_or(LinalgError::DependentColumns)?;
        // A dependency of the evaluations lifts to a combination divisible
        // by the parameter; anything else means the columns were dependent.
        if v == 0 {
            return Err(LinalgError::DependentColumns);
        }
        let replaced: Vec<EpsPoly> = combo.iter().map(|p| p.shift_down(v)).collect();
        let target = dep
            .iter()
            .rposition(|c| !c.is_zero())
            .expect("nonzero kernel vector");
        cols[target] = normalize_column(&replaced);
    }
}

fn normalize_column(col: &[EpsPoly]) -> Vec<EpsPoly> {
    let v = col.iter().filter_map(EpsPoly::valuation).min().unwrap_or(0);
    col.iter().map(|p| p.shift_down(v)).collect()
}

fn eval0_matrix(cols: &[Vec<EpsPoly>], n: usize) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(n, cols.len());
    for (j, col) in cols.iter().enumerate() {
        for (i, p) in col.iter().enumerate() {
            m.set(i, j, p.eval0());
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e() -> EpsPoly {
        EpsPoly::eps()
    }

    fn c(n: i64) -> EpsPoly {
        EpsPoly::constant(rat(n))
    }

    #[test]
    fn poly_arithmetic() {
        let p = e().mul(&e()).add(&c(1)); // 1 + e^2
        assert_eq!(p.degree(), Some(2));
        assert_eq!(p.eval0(), rat(1));
        let q = p.mul(&p);
        assert_eq!(q.div_exact(&p), Some(p.clone()));
        assert_eq!(p.gcd(&q), p.scale(&Rational::one()));
        assert!(p.div_exact(&e()).is_none());
    }

    #[test]
    fn frac_reduction() {
        // (e^2 + e) / e reduces to e + 1 over the function field.
        let f = PolyFrac::new(e().mul(&e()).add(&e()), e()).unwrap();
        assert!(f.is_polynomial());
        assert_eq!(f.num(), &e().add(&c(1)));
    }

    #[test]
    fn kernel_of_nonzero_scalar_pencil() {
        let m = ParamMatrix::from_polys(1, 1, vec![e()]).unwrap();
        assert!(m.param_kernel().is_empty());
    }

    #[test]
    fn kernel_of_diagonal_pencil() {
        let m =
            ParamMatrix::from_polys(2, 2, vec![c(0), c(0), c(0), e()]).unwrap();
        let k = m.param_kernel();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], vec![c(1), c(0)]);
    }

    #[test]
    fn kernel_matches_hand_solution() {
        // [e  1; 0  0] has kernel spanned by (1, -e).
        let m = ParamMatrix::from_polys(2, 2, vec![e(), c(1), c(0), c(0)]).unwrap();
        let k = m.param_kernel();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], vec![c(1), e().neg()]);
    }

    #[test]
    fn limit_of_constant_family() {
        let cols = vec![vec![c(1), c(0)]];
        let s = subspace_limit(&cols).unwrap();
        assert_eq!(s.dim(), 1);
        assert!(s.contains_vector(&[rat(1), rat(0)]));
    }

    #[test]
    fn limit_evaluates_at_zero() {
        let cols = vec![vec![c(1), e()]];
        let s = subspace_limit(&cols).unwrap();
        assert_eq!(s.dim(), 1);
        assert!(s.contains_vector(&[rat(1), rat(0)]));
    }

    #[test]
    fn limit_saturates_collapsing_family() {
        // span{(1, e), (1, 2e)}: evaluations collapse to a line, the
        // difference (0, e) saturates to (0, 1).
        let cols = vec![vec![c(1), e()], vec![c(1), e().scale(&rat(2))]];
        let s = subspace_limit(&cols).unwrap();
        assert_eq!(s.dim(), 2);
        assert!(s.contains_vector(&[rat(1), rat(0)]));
        assert!(s.contains_vector(&[rat(0), rat(1)]));
    }

    #[test]
    fn pencil_kernel_limit_lands_in_kernel_at_zero() {
        // Pencil [e, 1, 2]: kernel columns collapse at zero; the limit must
        // be ker of the evaluation [0, 1, 2].
        let a = RationalMatrix::from_i64_rows(&[&[0, 1, 2]]);
        let b = RationalMatrix::from_i64_rows(&[&[1, 0, 0]]);
        let pencil = ParamMatrix::pencil(&a, &b).unwrap();
        let k = pencil.param_kernel();
        assert_eq!(k.len(), 2);
        let lim = subspace_limit(&k).unwrap();
        let (_, ker0, _) = a.rank_kernel_image();
        assert!(lim.equals(&ker0));
    }

    #[test]
    fn kernel_with_row_swap_and_back_substitution() {
        // [0 e e^2; 1 1 1]: one kernel line, found after a row swap.
        let m = ParamMatrix::from_polys(
            2,
            3,
            vec![c(0), e(), e().mul(&e()), c(1), c(1), c(1)],
        )
        .unwrap();
        let k = m.param_kernel();
        assert_eq!(k.len(), 1);
        // Verify membership exactly: both polynomial rows annihilate it.
        for r in 0..2 {
            let mut acc = EpsPoly::zero();
            for (col, x) in k[0].iter().enumerate() {
                acc = acc.add(&m.get(r, col).num().mul(x));
            }
            assert!(acc.is_zero(), "row {r} does not annihilate the kernel");
        }
        // Normalization: unit content, positive first coefficient.
        assert_eq!(k[0][0], c(1).sub(&e()));
    }

    #[test]
    fn limit_needs_two_saturation_rounds() {
        let cols = vec![
            vec![c(1), e(), c(0)],
            vec![c(1), e().scale(&rat(2)), c(0)],
            vec![c(1), e(), e().mul(&e())],
        ];
        let s = subspace_limit(&cols).unwrap();
        assert_eq!(s.dim(), 3);
    }

    #[test]
    fn limit_rejects_dependent_columns() {
        let cols = vec![vec![c(1), c(0)], vec![c(2), c(0)]];
        assert!(matches!(
            subspace_limit(&cols),
            Err(LinalgError::DependentColumns)
        ));
        let zero = vec![vec![EpsPoly::zero(), EpsPoly::zero()]];
        assert!(subspace_limit(&zero).is_err());
    }

    #[test]
    fn constant_direction_keeps_kernel_of_base() {
        // b = 0: the pencil kernel is the kernel of the base for every
        // parameter, so the limit is just that kernel.
        let a = RationalMatrix::from_i64_rows(&[&[1, 2, 3]]);
        let b = RationalMatrix::zeros(1, 3);
        let k = ParamMatrix::pencil(&a, &b).unwrap().param_kernel();
        let lim = subspace_limit(&k).unwrap();
        let (_, ker, _) = a.rank_kernel_image();
        assert!(lim.equals(&ker));
    }

    #[test]
    fn cancellation_stops_elimination() {
        let m = ParamMatrix::from_polys(2, 2, vec![e(), c(1), c(0), c(0)]).unwrap();
        let token = CancelToken::new();
        token.cancel();
        assert_eq!(
            m.param_kernel_cancellable(&token),
            Err(LinalgError::Cancelled)
        );
    }
}
