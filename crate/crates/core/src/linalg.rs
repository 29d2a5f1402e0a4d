//! Exact integer and rational linear algebra.
//!
//! Everything here works on small dense matrices (tens of rows at most) and
//! favours clarity over asymptotics. Matrices are values: every operation
//! returns a fresh matrix.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar, always stored in lowest terms with a positive denominator.
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Least common multiple of the denominators of `values` (1 for an empty slice).
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type IntMatrix = Matrix<BigInt>;
pub type RatMatrix = Matrix<Rat>;

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(r, c)])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (r, c): (usize, usize)) -> &T {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of bounds");
        &self.data[r * self.cols + c]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of bounds");
        &mut self.data[r * self.cols + c]
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn diagonal(entries: &[T]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    /// Builds a matrix from rows. Panics on ragged input.
    pub fn from_rows(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Matrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flat_map(|r| r.iter().cloned()).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let v = out[(r, c)].clone() + a.clone() * other[(k, c)].clone();
                    out[(r, c)] = v;
                }
            }
        }
        out
    }
}

impl<T> Matrix<T> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>>
    where
        T: Clone,
    {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + a, r * self.cols + b);
            }
        }
    }
}

impl IntMatrix {
    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let rows: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn to_rational(&self) -> RatMatrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().cloned().map(Rat::from_integer).collect(),
        }
    }

    /// row_a -= q * row_b
    fn row_axpy(&mut self, a: usize, b: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let v = &self[(a, c)] - q * &self[(b, c)];
            self[(a, c)] = v;
        }
    }

    /// col_a -= q * col_b
    fn col_axpy(&mut self, a: usize, b: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let v = &self[(r, a)] - q * &self[(r, b)];
            self[(r, a)] = v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -&self[(r, c)];
            self[(r, c)] = v;
        }
    }

    /// Determinant of a square integer matrix (computed over Q).
    pub fn det(&self) -> BigInt {
        let d = self.to_rational().det();
        debug_assert!(d.is_integer());
        d.to_integer()
    }
}

impl RatMatrix {
    /// Reduced row echelon form; returns the matrix and its pivot columns.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m[(row, col)].recip();
            for c in col..m.cols {
                let v = &m[(row, c)] * &inv;
                m[(row, c)] = v;
            }
            for r in 0..m.rows {
                if r == row || m[(r, col)].is_zero() {
                    continue;
                }
                let f = m[(r, col)].clone();
                for c in col..m.cols {
                    let v = &m[(r, c)] - &f * &m[(row, c)];
                    m[(r, c)] = v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.clone();
        let mut det = Rat::one();
        for col in 0..m.cols {
            let Some(p) = (col..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                return Rat::zero();
            };
            if p != col {
                m.swap_rows(p, col);
                det = -det;
            }
            let pivot = m[(col, col)].clone();
            det *= &pivot;
            for r in col + 1..m.rows {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let f = &m[(r, col)] / &pivot;
                for c in col..m.cols {
                    let v = &m[(r, c)] - &f * &m[(col, c)];
                    m[(r, c)] = v;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<RatMatrix> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut aug = RatMatrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, n + r)] = Rat::one();
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut inv = RatMatrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv[(r, c)] = red[(r, n + c)].clone();
            }
        }
        Some(inv)
    }

    /// Basis of the right null space {x : A x = 0}.
    pub fn nullspace(&self) -> Vec<Vec<Rat>> {
        let (red, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rat::zero(); self.cols];
                v[f] = Rat::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -red[(r, f)].clone();
                }
                v
            })
            .collect()
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(Rat::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }
}

/// Solves `A x = b` exactly. Returns `None` if the system is inconsistent.
///
/// Free variables are set to zero, so when `A` lacks full column rank the
/// returned solution is supported on the pivot columns only.
pub fn solve_rational(a: &RatMatrix, b: &[Rat]) -> Option<Vec<Rat>> {
    assert_eq!(a.rows(), b.len(), "right-hand side has the wrong length");
    let n = a.cols();
    let mut aug = RatMatrix::zeros(a.rows(), n + 1);
    for r in 0..a.rows() {
        for c in 0..n {
            aug[(r, c)] = a[(r, c)].clone();
        }
        aug[(r, n)] = b[r].clone();
    }
    let (red, pivots) = aug.rref();
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![Rat::zero(); n];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = red[(r, n)].clone();
    }
    Some(x)
}

/// Row-style Hermite normal form: returns `(H, U)` with `H = U·M`, `U`
/// unimodular, `H` in upper echelon form with positive pivots and every entry
/// above a pivot reduced into `[0, pivot)`.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut prow = 0;
    for col in 0..h.cols() {
        if prow == h.rows() {
            break;
        }
        loop {
            let best = (prow..h.rows())
                .filter(|&r| !h[(r, col)].is_zero())
                .min_by_key(|&r| h[(r, col)].abs());
            let Some(best) = best else { break };
            h.swap_rows(prow, best);
            u.swap_rows(prow, best);
            let mut done = true;
            for r in prow + 1..h.rows() {
                if h[(r, col)].is_zero() {
                    continue;
                }
                let q = h[(r, col)].div_floor(&h[(prow, col)]);
                h.row_axpy(r, prow, &q);
                u.row_axpy(r, prow, &q);
                if !h[(r, col)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(prow, col)].is_zero() {
            continue;
        }
        if h[(prow, col)].is_negative() {
            h.negate_row(prow);
            u.negate_row(prow);
        }
        for r in 0..prow {
            let q = h[(r, col)].div_floor(&h[(prow, col)]);
            h.row_axpy(r, prow, &q);
            u.row_axpy(r, prow, &q);
        }
        prow += 1;
    }
    (h, u)
}

/// Smith normal form: returns `(D, U, V)` with `D = U·M·V` diagonal,
/// nonnegative, `d_1 | d_2 | …`, and `U`, `V` unimodular.
pub fn smith_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let mut d = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut v = IntMatrix::identity(m.cols());
    let steps = m.rows().min(m.cols());
    for t in 0..steps {
        loop {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            let mut best: Option<(usize, usize)> = None;
            for r in t..d.rows() {
                for c in t..d.cols() {
                    if d[(r, c)].is_zero() {
                        continue;
                    }
                    if best.map_or(true, |(br, bc)| d[(r, c)].abs() < d[(br, bc)].abs()) {
                        best = Some((r, c));
                    }
                }
            }
            let Some((br, bc)) = best else { break };
            d.swap_rows(t, br);
            u.swap_rows(t, br);
            d.swap_cols(t, bc);
            v.swap_cols(t, bc);

            let mut clean = true;
            for r in t + 1..d.rows() {
                let q = d[(r, t)].div_floor(&d[(t, t)]);
                d.row_axpy(r, t, &q);
                u.row_axpy(r, t, &q);
                clean &= d[(r, t)].is_zero();
            }
            for c in t + 1..d.cols() {
                let q = d[(t, c)].div_floor(&d[(t, t)]);
                d.col_axpy(c, t, &q);
                v.col_axpy(c, t, &q);
                clean &= d[(t, c)].is_zero();
            }
            if !clean {
                continue;
            }
            // Enforce the divisibility chain.
            let pivot = d[(t, t)].clone();
            let offender = (t + 1..d.rows())
                .find(|&r| (t + 1..d.cols()).any(|c| !d[(r, c)].is_multiple_of(&pivot)));
            match offender {
                Some(r) => {
                    let minus_one = -BigInt::one();
                    d.row_axpy(t, r, &minus_one);
                    u.row_axpy(t, r, &minus_one);
                }
                None => break,
            }
        }
        if t < d.rows() && t < d.cols() && d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    (d, u, v)
}

/// Basis of `span_Q(vectors) ∩ Z^n`, returned in Hermite normal form.
pub fn saturation_basis(vectors: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let a = IntMatrix::from_rows(vectors);
    let (d, _u, v) = smith_normal_form(&a);
    let rank = (0..d.rows().min(d.cols()))
        .take_while(|&i| !d[(i, i)].is_zero())
        .count();
    if rank == 0 {
        return Vec::new();
    }
    // A = U⁻¹ D V⁻¹, so the first `rank` rows of V⁻¹ span the saturation.
    let vinv = v
        .to_rational()
        .inverse()
        .expect("unimodular matrix is invertible");
    let rows: Vec<Vec<BigInt>> = (0..rank)
        .map(|r| vinv.row(r).iter().map(|x| x.to_integer()).collect())
        .collect();
    let (h, _) = hermite_normal_form(&IntMatrix::from_rows(&rows));
    h.to_rows()
        .into_iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect()
}
