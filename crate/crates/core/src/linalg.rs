//! Exact rational linear algebra.
//!
//! Scalars are arbitrary-precision rationals ([`Rational`]); vectors and
//! linear forms are thin wrappers over coefficient lists.  Everything here
//! is pure and exact: no floating point, no rounding, no hidden state.
//! Chamber and ray coordinates on rank-8 inputs overflow 64-bit integers
//! once denominators are cleared, so big integers are load-bearing, not a
//! convenience.
//!
//! Wire format for scalars is `"p/q"` in lowest terms with positive
//! denominator, shortened to `"p"` when the denominator is 1.

use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use crate::error::Error;
use crate::Result;

pub type Rational = BigRational;
pub type Int = BigInt;

/// p/q as an exact rational. Panics on q = 0 (programmer error).
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn rat_int(p: i64) -> Rational {
    Rational::from(BigInt::from(p))
}

/// Canonical text form: lowest terms, positive denominator, `"p"` when
/// the denominator is 1.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"p"` or `"p/q"`. The result is normalized, so the composite
/// `format_rational(parse_rational(s))` is idempotent and bit-exact on
/// canonical input.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::BadRational(s.to_string());
    let (num_str, den_str) = match t.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (t, None),
    };
    let numer = BigInt::from_str(num_str).map_err(|_| bad())?;
    let denom = match den_str {
        Some(d) => BigInt::from_str(d).map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(numer, denom))
}

fn fmt_coeffs(f: &mut fmt::Formatter<'_>, coeffs: &[Rational]) -> fmt::Result {
    write!(f, "(")?;
    for (i, c) in coeffs.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{}", format_rational(c))?;
    }
    write!(f, ")")
}

/// Element of the parameter space (a column vector over Q).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vector(pub Vec<Rational>);

/// Covector: a linear functional given by its coefficient row.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearForm(pub Vec<Rational>);

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_coeffs(f, &self.0)
    }
}

impl fmt::Debug for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_coeffs(f, &self.0)
    }
}

impl Vector {
    pub fn zeros(dim: usize) -> Self {
        Vector(vec![Rational::zero(); dim])
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Vector(coords.iter().map(|&c| rat_int(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Vector) -> Result<Vector> {
        check_dim(self.dim(), other.dim())?;
        Ok(Vector(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }

    pub fn scale(&self, k: &Rational) -> Vector {
        Vector(self.0.iter().map(|a| a * k).collect())
    }

    pub fn neg(&self) -> Vector {
        Vector(self.0.iter().map(|a| -a).collect())
    }

    /// Integer coordinates, if every entry has denominator 1.
    pub fn to_integers(&self) -> Option<Vec<Int>> {
        self.0
            .iter()
            .map(|c| c.denom().is_one().then(|| c.numer().clone()))
            .collect()
    }
}

impl LinearForm {
    pub fn zeros(dim: usize) -> Self {
        LinearForm(vec![Rational::zero(); dim])
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        LinearForm(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Evaluates the form at a point (the pairing <form, v>).
    pub fn eval(&self, v: &Vector) -> Result<Rational> {
        check_dim(self.dim(), v.dim())?;
        let mut acc = Rational::zero();
        for (c, x) in self.0.iter().zip(&v.0) {
            if !c.is_zero() && !x.is_zero() {
                acc += c * x;
            }
        }
        Ok(acc)
    }

    pub fn add(&self, other: &LinearForm) -> Result<LinearForm> {
        check_dim(self.dim(), other.dim())?;
        Ok(LinearForm(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }

    pub fn sub(&self, other: &LinearForm) -> Result<LinearForm> {
        check_dim(self.dim(), other.dim())?;
        Ok(LinearForm(
            self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn neg(&self) -> LinearForm {
        LinearForm(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: &Rational) -> LinearForm {
        LinearForm(self.0.iter().map(|a| a * k).collect())
    }

    /// Primitive integer representative of the same covector direction.
    pub fn primitive(&self) -> Result<LinearForm> {
        Ok(LinearForm(primitive_slice(&self.0)?))
    }

    /// Primitive representative with canonical sign: the first nonzero
    /// coefficient is positive.  Collapses f and -f to one normal, which
    /// is what hyperplane deduplication needs.
    pub fn canonical_normal(&self) -> Result<LinearForm> {
        let prim = primitive_slice(&self.0)?;
        let flip = prim
            .iter()
            .find(|c| !c.is_zero())
            .map(|c| c.is_negative())
            .unwrap_or(false);
        Ok(LinearForm(if flip {
            prim.into_iter().map(|c| -c).collect()
        } else {
            prim
        }))
    }
}

fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}

/// Scales a nonzero rational vector to integer entries with gcd 1,
/// preserving direction (the sign of the first nonzero entry survives).
fn primitive_slice(coeffs: &[Rational]) -> Result<Vec<Rational>> {
    if coeffs.iter().all(Zero::is_zero) {
        return Err(Error::ZeroVector);
    }
    let mut lcm = BigInt::one();
    for c in coeffs {
        lcm = lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    let mut gcd = BigInt::zero();
    for v in &ints {
        gcd = gcd.gcd(v);
    }
    Ok(ints
        .into_iter()
        .map(|v| Rational::from(v / &gcd))
        .collect())
}

/// Primitive integer representative of a nonzero direction.
pub fn primitive(v: &Vector) -> Result<Vector> {
    Ok(Vector(primitive_slice(&v.0)?))
}

/// Row reduction to reduced echelon form over Q, in place.
/// Returns the pivot columns; zero rows are dropped.
pub fn rref(rows: &mut Vec<Vec<Rational>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(src) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, src);
        let inv = rows[r][col].recip();
        for c in rows[r].iter_mut() {
            *c *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let factor = rows[i][col].clone();
                for c in col..ncols {
                    let delta = &factor * &rows[r][c];
                    rows[i][c] -= delta;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Rank of a set of forms on a `dim`-dimensional space.
pub fn rank(forms: &[LinearForm], dim: usize) -> Result<usize> {
    for f in forms {
        check_dim(dim, f.dim())?;
    }
    let mut rows: Vec<Vec<Rational>> = forms.iter().map(|f| f.0.clone()).collect();
    Ok(rref(&mut rows).len())
}

/// Exact basis of the joint kernel of `forms` inside Q^dim.
/// Each basis vector is scaled to primitive integer coordinates.
/// Basis size is always `dim - rank(forms)`.
pub fn kernel_basis(forms: &[LinearForm], dim: usize) -> Result<Vec<Vector>> {
    for f in forms {
        check_dim(dim, f.dim())?;
    }
    let mut rows: Vec<Vec<Rational>> = forms.iter().map(|f| f.0.clone()).collect();
    let pivots = rref(&mut rows);
    let mut basis = Vec::with_capacity(dim - pivots.len());
    for free in 0..dim {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![Rational::zero(); dim];
        v[free] = Rational::one();
        for (row, &p) in rows.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        basis.push(primitive(&Vector(v)).expect("kernel basis vector is nonzero"));
    }
    Ok(basis)
}

/// Dense rational matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            fmt_coeffs(f, self.row(r))?;
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        for r in &rows {
            check_dim(ncols, r.len())?;
        }
        Ok(Matrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&c| rat_int(c)).collect())
                .collect(),
        )
        .expect("literal rows are rectangular")
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Rational {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vec(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn mul_vec(&self, v: &Vector) -> Result<Vector> {
        check_dim(self.cols, v.dim())?;
        let mut out = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let mut acc = Rational::zero();
            for (c, x) in self.row(r).iter().zip(&v.0) {
                if !c.is_zero() && !x.is_zero() {
                    acc += c * x;
                }
            }
            out.push(acc);
        }
        Ok(Vector(out))
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        check_dim(self.cols, other.rows)?;
        let mut out = Matrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let delta = a * other.at(k, c);
                    *out.at_mut(r, c) += delta;
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        check_dim(self.rows, other.rows)?;
        check_dim(self.cols, other.cols)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, k: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * k).collect(),
        }
    }

    pub fn column_rank(&self) -> usize {
        let mut rows = self.row_vec();
        rref(&mut rows).len()
    }
}

/// Reusable exact solver for `M x = b` with a fixed matrix `M`.
///
/// Precomputes an elimination operator E with E*M in reduced echelon
/// form, so each solve is one matrix-vector product plus back reads.
/// Free variables are set to zero; `solve` returns `None` when the
/// system is inconsistent.
pub struct LinearSolver {
    reduced: Matrix,
    elim: Matrix,
    pivots: Vec<usize>,
}

impl LinearSolver {
    pub fn new(m: &Matrix) -> Self {
        // Row-reduce [M | I]; the right block records the row operations.
        let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(m.rows);
        for r in 0..m.rows {
            let mut row = m.row(r).to_vec();
            for j in 0..m.rows {
                row.push(if j == r {
                    Rational::one()
                } else {
                    Rational::zero()
                });
            }
            rows.push(row);
        }
        let ncols = m.cols + m.rows;
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..m.cols {
            let Some(src) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
                continue;
            };
            rows.swap(r, src);
            let inv = rows[r][col].recip();
            for c in rows[r].iter_mut() {
                *c *= &inv;
            }
            for i in 0..rows.len() {
                if i != r && !rows[i][col].is_zero() {
                    let factor = rows[i][col].clone();
                    for c in 0..ncols {
                        let delta = &factor * &rows[r][c];
                        rows[i][c] -= delta;
                    }
                }
            }
            pivots.push(col);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        let reduced = Matrix {
            rows: rows.len(),
            cols: m.cols,
            data: rows.iter().flat_map(|row| row[..m.cols].to_vec()).collect(),
        };
        let elim = Matrix {
            rows: rows.len(),
            cols: m.rows,
            data: rows.iter().flat_map(|row| row[m.cols..].to_vec()).collect(),
        };
        LinearSolver {
            reduced,
            elim,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// One exact solution of M x = b, or None if inconsistent.
    pub fn solve(&self, b: &Vector) -> Result<Option<Vector>> {
        let eb = self.elim.mul_vec(b)?;
        // Rows past the rank must vanish for consistency.
        for r in self.pivots.len()..self.reduced.nrows() {
            if !eb.0[r].is_zero() {
                return Ok(None);
            }
        }
        let mut x = vec![Rational::zero(); self.reduced.ncols()];
        for (r, &p) in self.pivots.iter().enumerate() {
            // Reduced row r reads x_p + (free-column terms) = rhs; with
            // free variables pinned to zero, x_p is the rhs directly.
            x[p] = eb.0[r].clone();
        }
        Ok(Some(Vector(x)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(coords: &[i64]) -> Vector {
        Vector::from_ints(coords)
    }

    fn f(coeffs: &[i64]) -> LinearForm {
        LinearForm::from_ints(coeffs)
    }

    #[test]
    fn eval_is_the_dot_product() {
        let form = f(&[1, -1]);
        assert_eq!(form.eval(&v(&[3, 1])).unwrap(), rat_int(2));
        assert_eq!(form.eval(&v(&[1, 1])).unwrap(), rat_int(0));
        let half = LinearForm(vec![rat(1, 2), rat(1, 3)]);
        assert_eq!(half.eval(&v(&[2, 3])).unwrap(), rat_int(2));
    }

    #[test]
    fn eval_rejects_dimension_mismatch() {
        assert!(matches!(
            f(&[1, 2]).eval(&v(&[1, 2, 3])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn primitive_examples() {
        assert_eq!(primitive(&v(&[2, -4])).unwrap(), v(&[1, -2]));
        let w = Vector(vec![rat(1, 2), rat(1, 3)]);
        assert_eq!(primitive(&w).unwrap(), v(&[3, 2]));
        assert_eq!(primitive(&v(&[0, 5, 0])).unwrap(), v(&[0, 1, 0]));
        assert!(matches!(
            primitive(&v(&[0, 0])),
            Err(Error::ZeroVector)
        ));
    }

    #[test]
    fn canonical_normal_fixes_sign() {
        assert_eq!(
            f(&[-2, 4]).canonical_normal().unwrap(),
            f(&[1, -2])
        );
        assert_eq!(f(&[0, -3]).canonical_normal().unwrap(), f(&[0, 1]));
    }

    #[test]
    fn kernel_examples() {
        // No constraints: the whole plane.
        let basis = kernel_basis(&[], 2).unwrap();
        assert_eq!(basis, vec![v(&[1, 0]), v(&[0, 1])]);
        // One line.
        let basis = kernel_basis(&[f(&[1, -1])], 2).unwrap();
        assert_eq!(basis, vec![v(&[1, 1])]);
        // Full rank: trivial kernel.
        let basis = kernel_basis(&[f(&[1, 0]), f(&[0, 1])], 2).unwrap();
        assert!(basis.is_empty());
    }

    #[test]
    fn solver_solves_and_detects_inconsistency() {
        let m = Matrix::from_int_rows(&[&[1, 0], &[0, 1], &[1, 1]]);
        let s = LinearSolver::new(&m);
        assert_eq!(s.rank(), 2);
        let x = s.solve(&v(&[2, 3, 5])).unwrap().unwrap();
        assert_eq!(x, v(&[2, 3]));
        assert!(s.solve(&v(&[2, 3, 4])).unwrap().is_none());
    }

    #[test]
    fn rational_wire_format() {
        assert_eq!(format_rational(&rat(4, -6)), "-2/3");
        assert_eq!(format_rational(&rat(8, 4)), "2");
        assert_eq!(parse_rational("-2/3").unwrap(), rat(-2, 3));
        assert_eq!(parse_rational("7").unwrap(), rat_int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a/2").is_err());
        assert!(parse_rational("").is_err());
    }

    prop_compose! {
        fn arb_rat()(n in -9i64..=9, d in 1i64..=9) -> Rational {
            rat(n, d)
        }
    }

    prop_compose! {
        fn arb_vec(dim: usize)(coords in prop::collection::vec(arb_rat(), dim)) -> Vector {
            Vector(coords)
        }
    }

    prop_compose! {
        fn arb_form(dim: usize)(coeffs in prop::collection::vec(arb_rat(), dim)) -> LinearForm {
            LinearForm(coeffs)
        }
    }

    proptest! {
        #[test]
        fn eval_is_linear(form in arb_form(3), a in arb_vec(3), b in arb_vec(3), k in arb_rat()) {
            let lhs = form.eval(&a.scale(&k).add(&b).unwrap()).unwrap();
            let rhs = k * form.eval(&a).unwrap() + form.eval(&b).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn primitive_is_scale_invariant(a in arb_vec(4), k in arb_rat()) {
            prop_assume!(!a.is_zero());
            prop_assume!(k.is_positive());
            let p = primitive(&a).unwrap();
            prop_assert_eq!(primitive(&a.scale(&k)).unwrap(), p.clone());
            prop_assert_eq!(primitive(&p).unwrap(), p.clone());
            prop_assert_eq!(primitive(&a.neg()).unwrap(), p.neg());
        }

        #[test]
        fn kernel_count_and_membership(forms in prop::collection::vec(arb_form(4), 0..5)) {
            let basis = kernel_basis(&forms, 4).unwrap();
            let rk = rank(&forms, 4).unwrap();
            prop_assert_eq!(basis.len(), 4 - rk);
            for b in &basis {
                for form in &forms {
                    prop_assert!(form.eval(b).unwrap().is_zero());
                }
            }
        }
    }
}
