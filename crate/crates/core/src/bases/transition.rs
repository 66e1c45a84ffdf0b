use alloc::vec::Vec;

use num_rational::BigRational;

use super::BasisError;
use crate::exactalg::{inverse, Point, RatMatrix};
use crate::repmodule::ModuleVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Triangularity {
    Diagonal,
    /// nonzero entries only at `col >= row`
    Upper,
    /// nonzero entries only at `col <= row`
    Lower,
    Neither,
}

/// `A_r = sum_c T[r][c] B_c`, rows and columns in the basis order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionMatrix {
    pub entries: RatMatrix,
    /// crystal nodes labelling rows and columns, when known
    pub labels: Vec<usize>,
}

impl TransitionMatrix {
    pub fn dim(&self) -> usize {
        self.entries.rows()
    }

    pub fn with_labels(mut self, labels: Vec<usize>) -> Self {
        self.labels = labels;
        self
    }

    pub fn triangularity(&self) -> Triangularity {
        let n = self.dim();
        let (mut upper, mut lower) = (true, true);
        for r in 0..n {
            for c in 0..n {
                if self.entries[(r, c)].is_zero() {
                    continue;
                }
                if c > r {
                    lower = false;
                }
                if c < r {
                    upper = false;
                }
            }
        }
        match (upper, lower) {
            (true, true) => Triangularity::Diagonal,
            (true, false) => Triangularity::Upper,
            (false, true) => Triangularity::Lower,
            (false, false) => Triangularity::Neither,
        }
    }

    pub fn diagonal_is_one(&self) -> bool {
        (0..self.dim()).all(|k| self.entries[(k, k)].is_one())
    }

    pub fn is_unitriangular(&self) -> bool {
        self.triangularity() != Triangularity::Neither && self.diagonal_is_one()
    }

    pub fn is_identity(&self) -> bool {
        self.entries.is_identity()
    }

    /// Entries in `Z[v, v^-1]`.
    pub fn is_laurent(&self) -> bool {
        self.entries.is_laurent()
    }

    pub fn specialize(&self, at: Point) -> Option<Vec<Vec<BigRational>>> {
        self.entries.specialize(at)
    }

    /// Off-diagonal entries, for sign statistics.
    pub fn off_diagonal(&self) -> impl Iterator<Item = ((usize, usize), &crate::exactalg::RationalScalar)> {
        let n = self.dim();
        (0..n).flat_map(move |r| (0..n).map(move |c| (r, c))).filter(|(r, c)| r != c).map(|rc| (rc, &self.entries[rc]))
    }
}

pub fn transition_matrix(a: &[ModuleVector], b: &[ModuleVector]) -> Result<TransitionMatrix, BasisError> {
    let d = b.len();
    if a.len() != d {
        return Err(BasisError::NotInvertible);
    }
    if d == 0 {
        return Ok(TransitionMatrix { entries: RatMatrix::zeros(0, 0), labels: Vec::new() });
    }
    let bm = RatMatrix::from_columns(d, &b.iter().map(|x| x.coords.clone()).collect::<Vec<_>>());
    let am = RatMatrix::from_columns(d, &a.iter().map(|x| x.coords.clone()).collect::<Vec<_>>());
    let inv = inverse(&bm).ok_or(BasisError::NotInvertible)?;
    // column r of inv * am holds the coordinates of A_r
    Ok(TransitionMatrix { entries: inv.mul(&am).transpose(), labels: Vec::new() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{Laurent, RationalScalar};
    use crate::quiver::WeightVector;
    use alloc::vec;

    fn mv(c: Vec<RationalScalar>) -> ModuleVector {
        ModuleVector { nu: WeightVector(vec![1]), coords: c }
    }

    #[test]
    fn basics() {
        let one = RationalScalar::one;
        let zero = RationalScalar::zero;
        let v = RationalScalar::from(Laurent::v_pow(1));
        let b = vec![mv(vec![one(), zero()]), mv(vec![zero(), one()])];
        let t = transition_matrix(&b, &b).unwrap();
        assert!(t.is_identity());
        assert_eq!(t.triangularity(), Triangularity::Diagonal);
        // A_0 = B_0 + v B_1
        let a = vec![mv(vec![one(), v.clone()]), mv(vec![zero(), one()])];
        let t = transition_matrix(&a, &b).unwrap();
        assert_eq!(t.entries[(0, 1)], v);
        assert_eq!(t.triangularity(), Triangularity::Upper);
        assert!(t.is_unitriangular() && t.is_laurent());
        assert_eq!(transition_matrix(&a, &[b[0].clone(), b[0].clone()]), Err(BasisError::NotInvertible));
    }
}
