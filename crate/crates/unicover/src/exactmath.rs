//! Exact integer and rational linear algebra.
//!
//! Everything downstream (membership predicates, subdivisions, covers,
//! verification) is built on the operations here. All arithmetic is
//! arbitrary precision; there is no floating point anywhere in the crate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

pub type Int = BigInt;
pub type Rat = BigRational;

/// Shorthand for an integer constant.
pub fn int(v: i64) -> Int {
    Int::from(v)
}

/// Shorthand for a rational constant `p/q`.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(Int::from(p), Int::from(q))
}

pub fn rat_from_int(v: Int) -> Rat {
    Rat::from_integer(v)
}

/// Integer coordinate vector.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct IntVector(Vec<Int>);

impl IntVector {
    pub fn new(coords: Vec<Int>) -> Self {
        IntVector(coords)
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        IntVector(coords.iter().map(|&c| Int::from(c)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        IntVector(vec![Int::zero(); dim])
    }

    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut v = vec![Int::zero(); dim];
        v[axis] = Int::one();
        IntVector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Int] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &IntVector) -> IntVector {
        IntVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &IntVector) -> IntVector {
        IntVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> IntVector {
        IntVector(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, s: &Int) -> IntVector {
        IntVector(self.0.iter().map(|a| a * s).collect())
    }

    pub fn dot(&self, other: &IntVector) -> Int {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn coord_sum(&self) -> Int {
        self.0.iter().sum()
    }

    pub fn norm_sq(&self) -> Int {
        self.0.iter().map(|a| a * a).sum()
    }

    pub fn to_rat(&self) -> RatVector {
        RatVector(self.0.iter().map(|a| Rat::from_integer(a.clone())).collect())
    }
}

impl std::ops::Index<usize> for IntVector {
    type Output = Int;
    fn index(&self, i: usize) -> &Int {
        &self.0[i]
    }
}

impl std::fmt::Display for IntVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Rational coordinate vector. `num_rational` keeps every entry reduced
/// with a positive denominator, which pins the canonical form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct RatVector(Vec<Rat>);

impl RatVector {
    pub fn new(coords: Vec<Rat>) -> Self {
        RatVector(coords)
    }

    pub fn zero(dim: usize) -> Self {
        RatVector(vec![Rat::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rat] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &RatVector) -> RatVector {
        RatVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &RatVector) -> RatVector {
        RatVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: &Rat) -> RatVector {
        RatVector(self.0.iter().map(|a| a * s).collect())
    }

    pub fn dot(&self, other: &RatVector) -> Rat {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn coord_sum(&self) -> Rat {
        self.0.iter().sum()
    }

    pub fn norm_sq(&self) -> Rat {
        self.0.iter().map(|a| a * a).sum()
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }

    /// Exact conversion back to integers; `None` if any coordinate is fractional.
    pub fn to_int(&self) -> Option<IntVector> {
        if self.is_integral() {
            Some(IntVector(self.0.iter().map(|c| c.to_integer()).collect()))
        } else {
            None
        }
    }

    /// Smallest positive integer `q` with `q * self` integral.
    pub fn denominator_lcm(&self) -> Int {
        self.0
            .iter()
            .fold(Int::one(), |acc, c| acc.lcm(c.denom()))
    }
}

impl std::ops::Index<usize> for RatVector {
    type Output = Rat;
    fn index(&self, i: usize) -> &Rat {
        &self.0[i]
    }
}

impl From<IntVector> for RatVector {
    fn from(v: IntVector) -> RatVector {
        v.to_rat()
    }
}

impl std::fmt::Display for RatVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Dense integer matrix, row major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Int>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "matrix data length {} does not match {}x{}",
                data.len(),
                rows,
                cols
            )));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![Int::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            *m.entry_mut(i, i) = Int::one();
        }
        m
    }

    pub fn from_rows(rows: &[IntVector]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.dim());
        let mut data = Vec::with_capacity(r * c);
        for v in rows {
            data.extend(v.coords().iter().cloned());
        }
        IntMatrix { rows: r, cols: c, data }
    }

    pub fn from_columns(cols: &[IntVector]) -> Self {
        Self::from_rows(cols).transpose()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, r: usize, c: usize) -> &Int {
        &self.data[r * self.cols + c]
    }

    pub fn entry_mut(&mut self, r: usize, c: usize) -> &mut Int {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> IntVector {
        IntVector(self.data[r * self.cols..(r + 1) * self.cols].to_vec())
    }

    pub fn column(&self, c: usize) -> IntVector {
        IntVector((0..self.rows).map(|r| self.entry(r, c).clone()).collect())
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *t.entry_mut(c, r) = self.entry(r, c).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = Int::zero();
                for k in 0..self.cols {
                    acc += self.entry(r, k) * other.entry(k, c);
                }
                *out.entry_mut(r, c) = acc;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &IntVector) -> IntVector {
        assert_eq!(self.cols, v.dim(), "matrix-vector shape mismatch");
        IntVector(
            (0..self.rows)
                .map(|r| (0..self.cols).map(|c| self.entry(r, c) * &v[c]).sum())
                .collect(),
        )
    }

    pub fn mul_rat_vec(&self, v: &RatVector) -> RatVector {
        assert_eq!(self.cols, v.dim(), "matrix-vector shape mismatch");
        RatVector(
            (0..self.rows)
                .map(|r| {
                    (0..self.cols)
                        .map(|c| Rat::from_integer(self.entry(r, c).clone()) * &v[c])
                        .sum()
                })
                .collect(),
        )
    }

    pub fn to_rat(&self) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|e| Rat::from_integer(e.clone())).collect(),
        }
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
}

/// Determinant by fraction-free Bareiss elimination. Exact for any size.
pub fn integer_determinant(m: &IntMatrix) -> Result<Int> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "determinant requires a square matrix, got {}x{}",
            m.rows, m.cols
        )));
    }
    let n = m.rows;
    if n == 0 {
        return Ok(Int::one());
    }
    let mut a: Vec<Vec<Int>> = (0..n)
        .map(|r| (0..n).map(|c| m.entry(r, c).clone()).collect())
        .collect();
    let mut sign = 1i32;
    let mut prev = Int::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Ok(Int::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                a[i][j] = q;
            }
            a[i][k] = Int::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if sign < 0 { -det } else { det })
}

/// Adjugate matrix: `adj(m) * m = det(m) * I`. Computed from cofactors;
/// fine at the small dimensions this crate works in.
pub fn adjugate(m: &IntMatrix) -> Result<IntMatrix> {
    if !m.is_square() {
        return Err(Error::Dimension("adjugate requires a square matrix".into()));
    }
    let n = m.rows;
    if n == 0 {
        return Ok(IntMatrix::zero(0, 0));
    }
    let mut adj = IntMatrix::zero(n, n);
    for r in 0..n {
        for c in 0..n {
            let minor = minor_matrix(m, r, c);
            let cof = integer_determinant(&minor)?;
            let signed = if (r + c) % 2 == 0 { cof } else { -cof };
            // adj[c][r] = cofactor(r, c)
            *adj.entry_mut(c, r) = signed;
        }
    }
    Ok(adj)
}

fn minor_matrix(m: &IntMatrix, skip_r: usize, skip_c: usize) -> IntMatrix {
    let n = m.rows;
    let mut data = Vec::with_capacity((n - 1) * (n - 1));
    for r in 0..n {
        if r == skip_r {
            continue;
        }
        for c in 0..n {
            if c == skip_c {
                continue;
            }
            data.push(m.entry(r, c).clone());
        }
    }
    IntMatrix {
        rows: n - 1,
        cols: n - 1,
        data,
    }
}

/// Normal of the hyperplane through the origin spanned by `d-1` independent
/// vectors in dimension `d`, as the vector of signed maximal minors.
pub fn hyperplane_normal(spanning: &[IntVector]) -> Result<IntVector> {
    let d = spanning
        .first()
        .ok_or_else(|| Error::Dimension("hyperplane needs spanning vectors".into()))?
        .dim();
    if spanning.len() != d - 1 {
        return Err(Error::Dimension(format!(
            "hyperplane in dimension {} needs {} spanning vectors, got {}",
            d,
            d - 1,
            spanning.len()
        )));
    }
    let m = IntMatrix::from_rows(spanning);
    let mut coords = Vec::with_capacity(d);
    for c in 0..d {
        let mut data = Vec::with_capacity((d - 1) * (d - 1));
        for r in 0..d - 1 {
            for cc in 0..d {
                if cc != c {
                    data.push(m.entry(r, cc).clone());
                }
            }
        }
        let sub = IntMatrix {
            rows: d - 1,
            cols: d - 1,
            data,
        };
        let cof = integer_determinant(&sub)?;
        coords.push(if c % 2 == 0 { cof } else { -cof });
    }
    let n = IntVector(coords);
    if n.is_zero() {
        return Err(Error::Degenerate(
            "spanning vectors are linearly dependent".into(),
        ));
    }
    Ok(n)
}

/// Smith normal form `left * m * right = diag`, with `d_i | d_{i+1}`,
/// nonnegative diagonal and unimodular transforms.
#[derive(Clone, Debug)]
pub struct SmithNormalForm {
    pub diag: Vec<Int>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithNormalForm {
    let rows = m.rows;
    let cols = m.cols;
    let mut a = m.clone();
    let mut left = IntMatrix::identity(rows);
    let mut right = IntMatrix::identity(cols);

    let n = rows.min(cols);
    let mut t = 0;
    while t < n {
        // Find a nonzero pivot in the trailing submatrix, smallest magnitude first.
        let mut pivot: Option<(usize, usize)> = None;
        for r in t..rows {
            for c in t..cols {
                if !a.entry(r, c).is_zero() {
                    match &pivot {
                        Some((pr, pc)) if a.entry(*pr, *pc).abs() <= a.entry(r, c).abs() => {}
                        _ => pivot = Some((r, c)),
                    }
                }
            }
        }
        let Some((pr, pc)) = pivot else { break };
        swap_rows(&mut a, &mut left, t, pr);
        swap_cols(&mut a, &mut right, t, pc);

        'reduce: loop {
            // Clear column t below the pivot.
            for r in t + 1..rows {
                if a.entry(r, t).is_zero() {
                    continue;
                }
                let q = a.entry(r, t).div_floor(a.entry(t, t));
                row_sub_mul(&mut a, &mut left, r, t, &q);
                if !a.entry(r, t).is_zero() {
                    swap_rows(&mut a, &mut left, t, r);
                    continue 'reduce;
                }
            }
            // Clear row t right of the pivot.
            for c in t + 1..cols {
                if a.entry(t, c).is_zero() {
                    continue;
                }
                let q = a.entry(t, c).div_floor(a.entry(t, t));
                col_sub_mul(&mut a, &mut right, c, t, &q);
                if !a.entry(t, c).is_zero() {
                    swap_cols(&mut a, &mut right, t, c);
                    continue 'reduce;
                }
            }
            // Pivot must divide the rest of the submatrix.
            for r in t + 1..rows {
                for c in t + 1..cols {
                    if !a.entry(r, c).mod_floor(a.entry(t, t)).is_zero() {
                        row_add(&mut a, &mut left, t, r);
                        continue 'reduce;
                    }
                }
            }
            break;
        }
        if a.entry(t, t).is_negative() {
            negate_row(&mut a, &mut left, t);
        }
        t += 1;
    }

    let diag = (0..n).map(|i| a.entry(i, i).clone()).collect();
    SmithNormalForm { diag, left, right }
}

/// Hermite normal form by unimodular row operations: `u * m = h` with `h`
/// in row-echelon shape, positive pivots, and the entries above each pivot
/// reduced into `[0, pivot)`.
#[derive(Clone, Debug)]
pub struct HermiteNormalForm {
    pub h: IntMatrix,
    pub u: IntMatrix,
}

pub fn hermite_normal_form(m: &IntMatrix) -> HermiteNormalForm {
    let rows = m.rows;
    let cols = m.cols;
    let mut h = m.clone();
    let mut u = IntMatrix::identity(rows);

    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row == rows {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for r in pivot_row..rows {
                if !h.entry(r, col).is_zero() {
                    match best {
                        Some(b) if h.entry(b, col).abs() <= h.entry(r, col).abs() => {}
                        _ => best = Some(r),
                    }
                }
            }
            let Some(b) = best else { break };
            swap_rows(&mut h, &mut u, pivot_row, b);
            let mut all_zero = true;
            for r in pivot_row + 1..rows {
                if h.entry(r, col).is_zero() {
                    continue;
                }
                let q = h.entry(r, col).div_floor(h.entry(pivot_row, col));
                row_sub_mul(&mut h, &mut u, r, pivot_row, &q);
                if !h.entry(r, col).is_zero() {
                    all_zero = false;
                }
            }
            if all_zero {
                break;
            }
        }
        if h.entry(pivot_row, col).is_zero() {
            continue;
        }
        if h.entry(pivot_row, col).is_negative() {
            negate_row(&mut h, &mut u, pivot_row);
        }
        for r in 0..pivot_row {
            let q = h.entry(r, col).div_floor(h.entry(pivot_row, col));
            if !q.is_zero() {
                row_sub_mul(&mut h, &mut u, r, pivot_row, &q);
            }
        }
        pivot_row += 1;
    }

    HermiteNormalForm { h, u }
}

fn swap_rows(a: &mut IntMatrix, t: &mut IntMatrix, i: usize, j: usize) {
    if i == j {
        return;
    }
    for c in 0..a.cols {
        let tmp = a.entry(i, c).clone();
        *a.entry_mut(i, c) = a.entry(j, c).clone();
        *a.entry_mut(j, c) = tmp;
    }
    for c in 0..t.cols {
        let tmp = t.entry(i, c).clone();
        *t.entry_mut(i, c) = t.entry(j, c).clone();
        *t.entry_mut(j, c) = tmp;
    }
}

fn swap_cols(a: &mut IntMatrix, t: &mut IntMatrix, i: usize, j: usize) {
    if i == j {
        return;
    }
    for r in 0..a.rows {
        let tmp = a.entry(r, i).clone();
        *a.entry_mut(r, i) = a.entry(r, j).clone();
        *a.entry_mut(r, j) = tmp;
    }
    for r in 0..t.rows {
        let tmp = t.entry(r, i).clone();
        *t.entry_mut(r, i) = t.entry(r, j).clone();
        *t.entry_mut(r, j) = tmp;
    }
}

/// row_i -= q * row_j, applied to the matrix and its row transform.
fn row_sub_mul(a: &mut IntMatrix, t: &mut IntMatrix, i: usize, j: usize, q: &Int) {
    for c in 0..a.cols {
        let delta = q * a.entry(j, c);
        *a.entry_mut(i, c) -= delta;
    }
    for c in 0..t.cols {
        let delta = q * t.entry(j, c);
        *t.entry_mut(i, c) -= delta;
    }
}

/// row_i += row_j.
fn row_add(a: &mut IntMatrix, t: &mut IntMatrix, i: usize, j: usize) {
    let minus_one = -Int::one();
    row_sub_mul(a, t, i, j, &minus_one);
}

/// col_i -= q * col_j, applied to the matrix and its column transform.
fn col_sub_mul(a: &mut IntMatrix, t: &mut IntMatrix, i: usize, j: usize, q: &Int) {
    for r in 0..a.rows {
        let delta = q * a.entry(r, j);
        *a.entry_mut(r, i) -= delta;
    }
    for r in 0..t.rows {
        let delta = q * t.entry(r, j);
        *t.entry_mut(r, i) -= delta;
    }
}

fn negate_row(a: &mut IntMatrix, t: &mut IntMatrix, i: usize) {
    for c in 0..a.cols {
        let v = -a.entry(i, c).clone();
        *a.entry_mut(i, c) = v;
    }
    for c in 0..t.cols {
        let v = -t.entry(i, c).clone();
        *t.entry_mut(i, c) = v;
    }
}

/// Dense rational matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

/// Outcome of an exact linear solve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearSolution {
    /// The unique solution.
    Unique(RatVector),
    /// A particular solution of an underdetermined consistent system
    /// (free variables pinned to zero).
    NonUnique(RatVector),
    NoSolution,
}

impl LinearSolution {
    pub fn solution(&self) -> Option<&RatVector> {
        match self {
            LinearSolution::Unique(x) | LinearSolution::NonUnique(x) => Some(x),
            LinearSolution::NoSolution => None,
        }
    }

    pub fn unique(&self) -> Option<&RatVector> {
        match self {
            LinearSolution::Unique(x) => Some(x),
            _ => None,
        }
    }
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rat>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension("rational matrix data length mismatch".into()));
        }
        Ok(RatMatrix { rows, cols, data })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            *m.entry_mut(i, i) = Rat::one();
        }
        m
    }

    pub fn from_columns(cols: &[RatVector]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, |v| v.dim());
        let mut m = Self::zero(r, c);
        for (j, v) in cols.iter().enumerate() {
            for i in 0..r {
                *m.entry_mut(i, j) = v[i].clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn entry_mut(&mut self, r: usize, c: usize) -> &mut Rat {
        &mut self.data[r * self.cols + c]
    }

    pub fn mul_vec(&self, v: &RatVector) -> RatVector {
        assert_eq!(self.cols, v.dim(), "matrix-vector shape mismatch");
        RatVector(
            (0..self.rows)
                .map(|r| (0..self.cols).map(|c| self.entry(r, c) * &v[c]).sum())
                .collect(),
        )
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = RatMatrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = Rat::zero();
                for k in 0..self.cols {
                    acc += self.entry(r, k) * other.entry(k, c);
                }
                *out.entry_mut(r, c) = acc;
            }
        }
        out
    }

    /// Solve `self * x = b` by Gauss-Jordan elimination.
    pub fn solve(&self, b: &RatVector) -> LinearSolution {
        assert_eq!(self.rows, b.dim(), "right-hand side dimension mismatch");
        let rows = self.rows;
        let cols = self.cols;
        let mut aug: Vec<Vec<Rat>> = (0..rows)
            .map(|r| {
                let mut row: Vec<Rat> =
                    (0..cols).map(|c| self.entry(r, c).clone()).collect();
                row.push(b[r].clone());
                row
            })
            .collect();

        let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
        let mut rank = 0;
        for col in 0..cols {
            let Some(pr) = (rank..rows).find(|&r| !aug[r][col].is_zero()) else {
                continue;
            };
            aug.swap(rank, pr);
            let inv = aug[rank][col].clone();
            for c in col..=cols {
                let v = &aug[rank][c] / &inv;
                aug[rank][c] = v;
            }
            for r in 0..rows {
                if r != rank && !aug[r][col].is_zero() {
                    let f = aug[r][col].clone();
                    for c in col..=cols {
                        let v = &aug[r][c] - &f * &aug[rank][c];
                        aug[r][c] = v;
                    }
                }
            }
            pivot_of_col[col] = Some(rank);
            rank += 1;
        }
        for r in rank..rows {
            if !aug[r][cols].is_zero() {
                return LinearSolution::NoSolution;
            }
        }
        let mut x = vec![Rat::zero(); cols];
        for (col, pivot) in pivot_of_col.iter().enumerate() {
            if let Some(r) = pivot {
                x[col] = aug[*r][cols].clone();
            }
        }
        let x = RatVector(x);
        if rank == cols {
            LinearSolution::Unique(x)
        } else {
            LinearSolution::NonUnique(x)
        }
    }

    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<Rat>> = (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.entry(r, c).clone()).collect())
            .collect();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(pr) = (rank..self.rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(rank, pr);
            let inv = m[rank][col].clone();
            for c in col..self.cols {
                let v = &m[rank][c] / &inv;
                m[rank][c] = v;
            }
            for r in rank + 1..self.rows {
                if !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for c in col..self.cols {
                        let v = &m[r][c] - &f * &m[rank][c];
                        m[r][c] = v;
                    }
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }

    pub fn invert(&self) -> Option<RatMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug: Vec<Vec<Rat>> = (0..n)
            .map(|r| {
                let mut row: Vec<Rat> = (0..n).map(|c| self.entry(r, c).clone()).collect();
                for c in 0..n {
                    row.push(if r == c { Rat::one() } else { Rat::zero() });
                }
                row
            })
            .collect();
        for col in 0..n {
            let pr = (col..n).find(|&r| !aug[r][col].is_zero())?;
            aug.swap(col, pr);
            let inv = aug[col][col].clone();
            for c in 0..2 * n {
                let v = &aug[col][c] / &inv;
                aug[col][c] = v;
            }
            for r in 0..n {
                if r != col && !aug[r][col].is_zero() {
                    let f = aug[r][col].clone();
                    for c in 0..2 * n {
                        let v = &aug[r][c] - &f * &aug[col][c];
                        aug[r][c] = v;
                    }
                }
            }
        }
        let mut out = RatMatrix::zero(n, n);
        for r in 0..n {
            for c in 0..n {
                *out.entry_mut(r, c) = aug[r][n + c].clone();
            }
        }
        Some(out)
    }
}

/// Solve `a * x = b` exactly over the rationals.
pub fn solve_linear_rational(a: &IntMatrix, b: &RatVector) -> LinearSolution {
    a.to_rat().solve(b)
}

/// Divide out the gcd of the coordinates; the ray direction is preserved.
pub fn primitive_vector(v: &IntVector) -> Result<IntVector> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let mut g = Int::zero();
    for c in v.coords() {
        g = g.gcd(c);
    }
    Ok(IntVector(v.coords().iter().map(|c| c / &g).collect()))
}

/// Smallest integer `s >= 0` with `s*s >= value`; exact integer square root ceiling.
pub fn isqrt_ceil(value: &Int) -> Int {
    if value.is_negative() || value.is_zero() {
        return Int::zero();
    }
    let s = value.sqrt();
    if &(&s * &s) == value {
        s
    } else {
        s + 1
    }
}
