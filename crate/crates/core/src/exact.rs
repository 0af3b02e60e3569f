//! Exact integer and rational matrix arithmetic.
//!
//! Everything here works over `BigInt` / `BigRational` so that the
//! algebraic decision procedures (cospectrality, coherent algebras,
//! partial equivalence) never depend on floating-point tolerances.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

/// Dense matrix with arbitrary-precision integer entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl IMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IMat {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn ones(rows: usize, cols: usize) -> Self {
        IMat {
            rows,
            cols,
            data: vec![BigInt::one(); rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IMat { rows, cols, data }
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        IMat {
            rows,
            cols,
            data: entries.iter().map(|&x| BigInt::from(x)).collect(),
        }
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        IMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_symmetric(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                if self[(i, j)] != self[(j, i)] {
                    return false;
                }
            }
        }
        true
    }

    pub fn mul(&self, other: &IMat) -> IMat {
        assert_eq!(self.cols, other.rows);
        let mut out = IMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let t = a * b;
                        out[(i, j)] += t;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &IMat) -> IMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IMat::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] + &other[(i, j)])
    }

    pub fn sub(&self, other: &IMat) -> IMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IMat::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] - &other[(i, j)])
    }

    /// Schur (entrywise) product.
    pub fn schur(&self, other: &IMat) -> IMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IMat::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] * &other[(i, j)])
    }

    pub fn trace(&self) -> BigInt {
        assert!(self.is_square());
        (0..self.rows).map(|i| self[(i, i)].clone()).sum()
    }

    /// Trace inner product `tr(self^T other)`.
    pub fn inner(&self, other: &IMat) -> BigInt {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| a * b)
            .sum()
    }

    /// Row-major vectorization.
    pub fn vec_entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn max_abs(&self) -> BigInt {
        self.data
            .iter()
            .map(|x| x.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn to_f64(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_fn(self.rows, self.cols, |i, j| bigint_to_f64(&self[(i, j)]))
    }

    pub fn to_rational(&self) -> RMat {
        RMat::from_fn(self.rows, self.cols, |i, j| {
            BigRational::from_integer(self[(i, j)].clone())
        })
    }
}

impl std::ops::Index<(usize, usize)> for IMat {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

pub fn bigint_to_f64(x: &BigInt) -> f64 {
    use num::ToPrimitive;
    x.to_f64().expect("bigint out of f64 range")
}

pub fn rational_to_f64(x: &BigRational) -> f64 {
    use num::ToPrimitive;
    x.to_f64().expect("rational out of f64 range")
}

/// Dense matrix with rational entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigRational>,
}

impl RMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RMat {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigRational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> BigRational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RMat { rows, cols, data }
    }

    pub fn transpose(&self) -> Self {
        RMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_symmetric(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                if self[(i, j)] != self[(j, i)] {
                    return false;
                }
            }
        }
        true
    }

    pub fn mul(&self, other: &RMat) -> RMat {
        assert_eq!(self.cols, other.rows);
        let mut out = RMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let t = a * b;
                        out[(i, j)] += t;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &RMat) -> RMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RMat::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] + &other[(i, j)])
    }

    pub fn sub(&self, other: &RMat) -> RMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RMat::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] - &other[(i, j)])
    }

    pub fn scale(&self, c: &BigRational) -> RMat {
        RMat::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] * c)
    }

    pub fn schur(&self, other: &RMat) -> RMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RMat::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] * &other[(i, j)])
    }

    pub fn trace(&self) -> BigRational {
        assert_eq!(self.rows, self.cols);
        (0..self.rows).map(|i| self[(i, i)].clone()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn to_f64(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_fn(self.rows, self.cols, |i, j| rational_to_f64(&self[(i, j)]))
    }
}

impl std::ops::Index<(usize, usize)> for RMat {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.data[i * self.cols + j]
    }
}

/// Incremental row-reduced basis over the rationals.
///
/// Holds vectors in echelon form; `reduce` returns the residual of a
/// candidate after elimination against the current basis and
/// `insert` adds an independent vector.
#[derive(Debug, Clone, Default)]
pub struct RrefBasis {
    /// (pivot column, normalized row) sorted by pivot.
    rows: Vec<(usize, Vec<BigRational>)>,
}

impl RrefBasis {
    pub fn new() -> Self {
        RrefBasis { rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Eliminates `v` against the basis in place; returns the pivot column
    /// of the residual if the residual is nonzero.
    fn eliminate(&self, v: &mut [BigRational]) -> Option<usize> {
        for (piv, row) in &self.rows {
            if !v[*piv].is_zero() {
                let c = v[*piv].clone();
                for (x, r) in v.iter_mut().zip(row.iter()) {
                    if !r.is_zero() {
                        *x -= &c * r;
                    }
                }
            }
        }
        v.iter().position(|x| !x.is_zero())
    }

    /// True if `v` lies in the span of the basis.
    pub fn contains(&self, v: &[BigRational]) -> bool {
        let mut w = v.to_vec();
        self.eliminate(&mut w).is_none()
    }

    /// Inserts `v` if independent. Returns true if the dimension grew.
    pub fn insert(&mut self, v: &[BigRational]) -> bool {
        let mut w = v.to_vec();
        match self.eliminate(&mut w) {
            None => false,
            Some(piv) => {
                let c = w[piv].clone();
                for x in w.iter_mut() {
                    if !x.is_zero() {
                        *x /= &c;
                    }
                }
                // back-substitute into existing rows
                for (_, row) in self.rows.iter_mut() {
                    if !row[piv].is_zero() {
                        let f = row[piv].clone();
                        for (x, r) in row.iter_mut().zip(w.iter()) {
                            if !r.is_zero() {
                                *x -= &f * r;
                            }
                        }
                    }
                }
                self.rows.push((piv, w));
                self.rows.sort_by_key(|(p, _)| *p);
                true
            }
        }
    }

    /// Expresses `v` in terms of the inserted vectors is not supported here;
    /// the basis only answers membership/dimension queries.
    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _)| *p).collect()
    }
}

/// Characteristic polynomial `det(xI - A)` of an integer matrix, exact.
///
/// Faddeev–LeVerrier over the rationals; the result is asserted integral.
/// Coefficients are returned in descending degree order, leading 1 first.
pub fn char_poly_exact(a: &IMat) -> Vec<BigInt> {
    assert!(a.is_square());
    let n = a.rows;
    let ar = a.to_rational();
    let mut m = RMat::identity(n);
    let mut coeffs: Vec<BigRational> = vec![BigRational::one()];
    for k in 1..=n {
        let am = ar.mul(&m);
        let c = -am.trace() / BigRational::from_integer(BigInt::from(k));
        // M_k = A*M_{k-1} + c_k I
        m = am;
        for i in 0..n {
            m[(i, i)] += &c;
        }
        coeffs.push(c);
    }
    coeffs
        .into_iter()
        .map(|c| {
            assert!(c.is_integer(), "char poly coefficient not integral");
            c.to_integer()
        })
        .collect()
}

/// Monic minimal polynomial of an integer square matrix over Q.
///
/// Returned in descending order with leading coefficient 1 (rational
/// coefficients; integral for integer matrices by Gauss's lemma).
pub fn min_poly_exact(a: &IMat) -> Vec<BigRational> {
    assert!(a.is_square());
    let n = a.rows;
    let dim = n * n;
    // powers of A, vectorized, until dependence
    let mut powers: Vec<IMat> = vec![IMat::identity(n)];
    let mut basis = RrefBasis::new();
    loop {
        let p = powers.last().unwrap();
        let v: Vec<BigRational> = p
            .vec_entries()
            .iter()
            .map(|x| BigRational::from_integer(x.clone()))
            .collect();
        if !basis.insert(&v) {
            break;
        }
        assert!(basis.dim() <= dim + 1);
        powers.push(p.mul(a));
    }
    let d = basis.dim(); // degree of minimal polynomial
                         // Solve A^d = sum_{k<d} c_k A^k by Gaussian elimination.
    let mut aug: Vec<Vec<BigRational>> = Vec::new();
    for idx in 0..dim {
        let mut row: Vec<BigRational> = (0..d)
            .map(|k| BigRational::from_integer(powers[k].vec_entries()[idx].clone()))
            .collect();
        row.push(BigRational::from_integer(
            powers[d].vec_entries()[idx].clone(),
        ));
        aug.push(row);
    }
    let sol = solve_linear_system(&mut aug, d).expect("minimal polynomial system is consistent");
    // p(x) = x^d - sum c_k x^k
    let mut out = vec![BigRational::one()];
    for k in (0..d).rev() {
        out.push(-sol[k].clone());
    }
    out
}

/// Gaussian elimination for an overdetermined consistent system.
/// `aug` rows are `[a_0 .. a_{ncols-1} | b]`.
fn solve_linear_system(
    aug: &mut [Vec<BigRational>],
    ncols: usize,
) -> Option<Vec<BigRational>> {
    let nrows = aug.len();
    let mut pivot_row = 0usize;
    let mut pivot_cols = Vec::new();
    for col in 0..ncols {
        let mut sel = None;
        for r in pivot_row..nrows {
            if !aug[r][col].is_zero() {
                sel = Some(r);
                break;
            }
        }
        let Some(sel) = sel else { continue };
        aug.swap(pivot_row, sel);
        let inv = aug[pivot_row][col].clone();
        for x in aug[pivot_row].iter_mut() {
            if !x.is_zero() {
                *x /= &inv;
            }
        }
        for r in 0..nrows {
            if r != pivot_row && !aug[r][col].is_zero() {
                let f = aug[r][col].clone();
                let (head, tail) = if r < pivot_row {
                    let (a, b) = aug.split_at_mut(pivot_row);
                    (&mut a[r], &b[0])
                } else {
                    let (a, b) = aug.split_at_mut(r);
                    (&mut b[0], &a[pivot_row])
                };
                for (x, p) in head.iter_mut().zip(tail.iter()) {
                    if !p.is_zero() {
                        *x -= &f * p;
                    }
                }
            }
        }
        pivot_cols.push(col);
        pivot_row += 1;
        if pivot_row == nrows {
            break;
        }
    }
    // consistency
    for r in pivot_row..nrows {
        if !aug[r][ncols].is_zero() {
            return None;
        }
    }
    let mut sol = vec![BigRational::zero(); ncols];
    for (r, col) in pivot_cols.iter().enumerate() {
        sol[*col] = aug[r][ncols].clone();
    }
    Some(sol)
}

/// Evaluates a polynomial (descending coefficients) at an integer.
pub fn eval_poly_at_int(coeffs: &[BigRational], x: &BigInt) -> BigRational {
    let xr = BigRational::from_integer(x.clone());
    let mut acc = BigRational::zero();
    for c in coeffs {
        acc = acc * &xr + c;
    }
    acc
}

/// Integer roots (with multiplicity 1 in the minimal polynomial) of a monic
/// rational polynomial, if it splits completely over the integers.
///
/// Returns `Some(roots sorted descending)` iff deg == number of distinct
/// integer roots found by trial division of the constant term.
pub fn integer_roots_if_split(coeffs: &[BigRational]) -> Option<Vec<BigInt>> {
    let deg = coeffs.len() - 1;
    if deg == 0 {
        return Some(vec![]);
    }
    if coeffs.iter().any(|c| !c.is_integer()) {
        return None;
    }
    let constant = coeffs.last().unwrap().to_integer();
    let mut roots = Vec::new();
    if constant.is_zero() {
        roots.push(BigInt::zero());
    }
    let bound = {
        // Cauchy bound: 1 + max |c_i| for monic polys
        let m = coeffs
            .iter()
            .map(|c| c.to_integer().abs())
            .max()
            .unwrap_or_else(BigInt::zero);
        m + BigInt::one()
    };
    // minimal polynomials of symmetric matrices are squarefree, so each
    // integer root appears once; trial over divisors of the constant term
    let mut cand = BigInt::one();
    while cand <= bound {
        if !constant.is_zero() && (&constant % &cand).is_zero() || constant.is_zero() {
            for sign in [1i32, -1] {
                let r = if sign == 1 { cand.clone() } else { -cand.clone() };
                if eval_poly_at_int(coeffs, &r).is_zero() && !roots.contains(&r) {
                    roots.push(r);
                }
            }
        }
        cand += BigInt::one();
    }
    if roots.len() == deg {
        roots.sort();
        roots.reverse();
        Some(roots)
    } else {
        None
    }
}
