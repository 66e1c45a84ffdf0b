use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Index, IndexMut};

use super::laurent::{poly_gcd, Laurent, Point};
use super::rational::RationalScalar;
use num_rational::BigRational;

/// Dense matrix over Q(v), row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<RationalScalar>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![RationalScalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = RationalScalar::one();
        }
        m
    }

    pub fn diagonal(entries: Vec<RationalScalar>) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.into_iter().enumerate() {
            m[(i, i)] = e;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<RationalScalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        RatMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_columns(rows: usize, columns: &[Vec<RationalScalar>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn from_laurent_rows(rows: Vec<Vec<Laurent>>) -> Self {
        Self::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(RationalScalar::from).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[RationalScalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<RationalScalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &RationalScalar> {
        self.data.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = &self[(i, j)];
                    if i == j { x.is_one() } else { x.is_zero() }
                })
            })
    }

    pub fn mul(&self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = &out[(i, j)] + &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &[RationalScalar]) -> Vec<RationalScalar> {
        assert_eq!(self.cols, x.len(), "dimension mismatch in product");
        (0..self.rows)
            .map(|i| {
                let mut acc = RationalScalar::zero();
                for (a, b) in self.row(i).iter().zip(x) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, rhs: &RatMatrix) -> RatMatrix {
        self.zip(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &RatMatrix) -> RatMatrix {
        self.zip(rhs, |a, b| a - b)
    }

    fn zip(&self, rhs: &RatMatrix, f: impl Fn(&RationalScalar, &RationalScalar) -> RationalScalar) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "dimension mismatch");
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn scale(&self, c: &RationalScalar) -> RatMatrix {
        self.map(|x| x * c)
    }

    pub fn map(&self, f: impl Fn(&RationalScalar) -> RationalScalar) -> RatMatrix {
        RatMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn bar(&self) -> RatMatrix {
        self.map(RationalScalar::bar)
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> RatMatrix {
        let mut out = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out[(a, b)] = self[(i, j)].clone();
            }
        }
        out
    }

    /// Kronecker product with `self` as the outer factor.
    pub fn kron(&self, rhs: &RatMatrix) -> RatMatrix {
        let mut out = Self::zeros(self.rows * rhs.rows, self.cols * rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        out[(i * rhs.rows + k, j * rhs.cols + l)] = a * &rhs[(k, l)];
                    }
                }
            }
        }
        out
    }

    pub fn is_laurent(&self) -> bool {
        self.data.iter().all(RationalScalar::is_laurent)
    }

    /// Entrywise value at `v = +-1`; `None` if some entry has a pole there.
    pub fn specialize(&self, at: Point) -> Option<Vec<Vec<BigRational>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.specialize(at)).collect())
            .collect()
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = RationalScalar;
    fn index(&self, (i, j): (usize, usize)) -> &RationalScalar {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut RationalScalar {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", x)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Result of solving `A x = b` over Q(v).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    Unique(Vec<RationalScalar>),
    /// Consistent but not unique; `particular` sets all free variables to zero.
    Underdetermined { rank: usize, particular: Vec<RationalScalar> },
    Inconsistent { rank: usize },
}

impl SolveOutcome {
    pub fn unique(self) -> Option<Vec<RationalScalar>> {
        match self {
            SolveOutcome::Unique(x) => Some(x),
            _ => None,
        }
    }
}

fn lcm(a: &Laurent, b: &Laurent) -> Laurent {
    let g = poly_gcd(a, b);
    (a * b).div_exact(&g).expect("gcd divides product")
}

/// Fraction-free elimination state over Z[v, v^-1].
struct Eliminated {
    /// coefficient block followed by right-hand side columns
    a: Vec<Vec<Laurent>>,
    ncoef: usize,
    rank: usize,
    /// `col_perm[k]` is the original column sitting at position `k`
    col_perm: Vec<usize>,
    swaps: usize,
    row_scale: Vec<Laurent>,
}

/// Bareiss elimination on the augmented matrix `[A | B]`, pivoting only in the
/// coefficient block. Pivot: first nonzero entry in row-major order among the
/// remaining block.
fn bareiss(a: &RatMatrix, rhs: &[Vec<RationalScalar>]) -> Eliminated {
    let m = a.rows();
    let n = a.cols();
    let mut rows: Vec<Vec<Laurent>> = Vec::with_capacity(m);
    let mut row_scale = Vec::with_capacity(m);
    for i in 0..m {
        let entries: Vec<&RationalScalar> =
            a.row(i).iter().chain(rhs.iter().map(|col| &col[i])).collect();
        let mut l = Laurent::one();
        for x in &entries {
            if !x.is_laurent() {
                l = lcm(&l, x.denominator());
            }
        }
        let lr = RationalScalar::from(l.clone());
        rows.push(entries.iter().map(|x| (*x * &lr).to_laurent().expect("cleared denominators")).collect());
        row_scale.push(l);
    }
    let width = n + rhs.len();
    let mut col_perm: Vec<usize> = (0..n).collect();
    let mut prev = Laurent::one();
    let mut swaps = 0;
    let mut k = 0;
    while k < m.min(n) {
        let pivot = (k..m).find_map(|r| (k..n).find(|&c| !rows[r][c].is_zero()).map(|c| (r, c)));
        let Some((pr, pc)) = pivot else { break };
        if pr != k {
            rows.swap(pr, k);
            row_scale.swap(pr, k);
            swaps += 1;
        }
        if pc != k {
            for row in rows.iter_mut() {
                row.swap(pc, k);
            }
            col_perm.swap(pc, k);
            swaps += 1;
        }
        let (head, tail) = rows.split_at_mut(k + 1);
        let pivot_row = &head[k];
        let p = &pivot_row[k];
        for row in tail.iter_mut() {
            let lead = row[k].clone();
            for j in k + 1..width {
                let t = &(p * &row[j]) - &(&lead * &pivot_row[j]);
                row[j] = t.div_exact(&prev).expect("Bareiss division is exact");
            }
            row[k] = Laurent::zero();
        }
        prev = rows[k][k].clone();
        k += 1;
    }
    Eliminated { a: rows, ncoef: n, rank: k, col_perm, swaps, row_scale }
}

impl Eliminated {
    fn inconsistent(&self) -> bool {
        self.a[self.rank..].iter().any(|row| row[self.ncoef..].iter().any(|x| !x.is_zero()))
    }

    fn back_substitute(&self, rhs_col: usize) -> Vec<RationalScalar> {
        let n = self.ncoef;
        let mut x = vec![RationalScalar::zero(); n];
        for k in (0..self.rank).rev() {
            let row = &self.a[k];
            let mut acc = RationalScalar::from(row[n + rhs_col].clone());
            for j in k + 1..self.rank {
                if !row[j].is_zero() {
                    acc = &acc - &(&RationalScalar::from(row[j].clone()) * &x[j]);
                }
            }
            x[k] = &acc / &RationalScalar::from(row[k].clone());
        }
        let mut out = vec![RationalScalar::zero(); n];
        for (pos, orig) in self.col_perm.iter().enumerate() {
            out[*orig] = x[pos].clone();
        }
        out
    }
}

/// Solve `A x = b` exactly over Q(v).
pub fn ratfun_solve(a: &RatMatrix, b: &[RationalScalar]) -> SolveOutcome {
    assert_eq!(a.rows(), b.len(), "right-hand side length mismatch");
    let e = bareiss(a, &[b.to_vec()]);
    if e.inconsistent() {
        return SolveOutcome::Inconsistent { rank: e.rank };
    }
    let x = e.back_substitute(0);
    if e.rank == a.cols() {
        SolveOutcome::Unique(x)
    } else {
        SolveOutcome::Underdetermined { rank: e.rank, particular: x }
    }
}

/// Solve `A X = B` for a matrix right-hand side; `None` unless the solution is
/// unique.
pub fn solve_matrix(a: &RatMatrix, b: &RatMatrix) -> Option<RatMatrix> {
    assert_eq!(a.rows(), b.rows(), "right-hand side height mismatch");
    let cols: Vec<Vec<RationalScalar>> = (0..b.cols()).map(|j| b.column(j)).collect();
    let e = bareiss(a, &cols);
    if e.rank != a.cols() || e.inconsistent() {
        return None;
    }
    let sols: Vec<Vec<RationalScalar>> = (0..b.cols()).map(|j| e.back_substitute(j)).collect();
    Some(RatMatrix::from_columns(a.cols(), &sols))
}

pub fn rank(a: &RatMatrix) -> usize {
    bareiss(a, &[]).rank
}

pub fn inverse(a: &RatMatrix) -> Option<RatMatrix> {
    if a.rows() != a.cols() {
        return None;
    }
    solve_matrix(a, &RatMatrix::identity(a.rows()))
}

pub fn determinant(a: &RatMatrix) -> RationalScalar {
    assert_eq!(a.rows(), a.cols(), "determinant of a non-square matrix");
    let n = a.rows();
    if n == 0 {
        return RationalScalar::one();
    }
    let e = bareiss(a, &[]);
    if e.rank < n {
        return RationalScalar::zero();
    }
    let mut d = RationalScalar::from(e.a[n - 1][n - 1].clone());
    if e.swaps % 2 == 1 {
        d = -d;
    }
    let scale = e.row_scale.iter().fold(Laurent::one(), |acc, s| &acc * s);
    &d / &RationalScalar::from(scale)
}
