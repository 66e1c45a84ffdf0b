use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{ModuleError, TensorModule, WeightModule};
use crate::exactalg::{ratfun_solve, RatMatrix, RationalScalar, SolveOutcome};
use crate::quiver::WeightVector;

/// Which tensor factor the off-diagonal part of the quasi-R-matrix lowers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThetaDirection {
    /// `F`-type on the left factor, `E`-type on the right factor.
    LowerFirst,
    /// `E`-type on the left factor, `F`-type on the right factor.
    RaiseFirst,
}

/// The operator `Theta` intertwining `Delta` with the bar-conjugate coproduct
/// `(bar x bar) Delta (bar)`, one block per tensor weight space.
#[derive(Clone, Debug)]
pub struct QuasiR {
    pub direction: ThetaDirection,
    pub blocks: BTreeMap<WeightVector, RatMatrix>,
}

impl QuasiR {
    pub fn block(&self, mu: &WeightVector) -> Option<&RatMatrix> {
        self.blocks.get(mu)
    }

    /// `Theta * bar(Theta) = 1` on every block.
    pub fn is_unitary(&self) -> bool {
        self.blocks.values().all(|t| t.mul(&t.bar()).is_identity())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum QuasiRError {
    #[error("intertwining equations on block {mu} are not uniquely solvable (rank {rank} of {unknowns})")]
    NotUnique { mu: WeightVector, rank: usize, unknowns: usize },
    #[error("intertwining equations on block {mu} are inconsistent (rank {rank})")]
    Inconsistent { mu: WeightVector, rank: usize },
    #[error(transparent)]
    Module(#[from] ModuleError),
}

/// Solve for `Theta` block by block in increasing height, with `Theta` equal to
/// the identity on each diagonal factor block and supported on the blocks
/// allowed by `direction`.
pub fn quasi_r_matrix(t: &TensorModule, direction: ThetaDirection) -> Result<QuasiR, QuasiRError> {
    let n = t.rank();
    let mut blocks: BTreeMap<WeightVector, RatMatrix> = BTreeMap::new();
    for mu in t.weights() {
        let d = t.dim(&mu);
        let bl = t.blocks(&mu);
        // unknown entries: (row, col) of allowed off-diagonal factor blocks
        let mut unknowns: Vec<(usize, usize)> = Vec::new();
        let mut fixed = RatMatrix::identity(d);
        for src in bl {
            for dst in bl {
                let kappa = dst.nu2.minus(&src.nu2);
                if kappa.iter().all(|x| *x == 0) {
                    continue;
                }
                let allowed = match direction {
                    ThetaDirection::LowerFirst => kappa.is_nonnegative(),
                    ThetaDirection::RaiseFirst => kappa.iter().all(|x| *x <= 0),
                };
                if !allowed {
                    continue;
                }
                for r in dst.offset..dst.offset + dst.dim2 * dst.dim1 {
                    for c in src.offset..src.offset + src.dim2 * src.dim1 {
                        unknowns.push((r, c));
                    }
                }
            }
        }
        let slot: BTreeMap<(usize, usize), usize> = unknowns.iter().enumerate().map(|(k, rc)| (*rc, k)).collect();
        let mut rows: Vec<Vec<RationalScalar>> = Vec::new();
        let mut rhs: Vec<RationalScalar> = Vec::new();
        for i in 0..n {
            // Theta_mu X = bar(X) Theta_src for X: src -> mu, Theta_src known
            for (src, x) in [(mu.shifted(i, -1), true), (mu.shifted(i, 1), false)] {
                if !src.is_nonnegative() || src.height() > t.height_bound() {
                    continue;
                }
                let Some(theta_src) = blocks.get(&src) else { continue };
                let xm = if x { t.f_matrix(i, &src)? } else { t.e_matrix(i, &src)? };
                let known = xm.bar().mul(theta_src);
                for r in 0..d {
                    for c in 0..xm.cols() {
                        let mut row = alloc::vec![RationalScalar::zero(); unknowns.len()];
                        // the identity part of Theta_mu contributes X[r][c]
                        let mut constant = xm[(r, c)].clone();
                        for s in 0..d {
                            let xs = &xm[(s, c)];
                            if xs.is_zero() {
                                continue;
                            }
                            if let Some(&k) = slot.get(&(r, s)) {
                                row[k] = &row[k] + xs;
                            }
                        }
                        constant = &constant - &known[(r, c)];
                        if row.iter().all(RationalScalar::is_zero) {
                            if !constant.is_zero() {
                                return Err(QuasiRError::Inconsistent { mu: mu.clone(), rank: 0 });
                            }
                            continue;
                        }
                        rows.push(row);
                        rhs.push(-constant);
                    }
                }
            }
        }
        if !unknowns.is_empty() {
            if rows.is_empty() {
                return Err(QuasiRError::NotUnique { mu, rank: 0, unknowns: unknowns.len() });
            }
            match ratfun_solve(&RatMatrix::from_rows(rows), &rhs) {
                SolveOutcome::Unique(x) => {
                    for (k, (r, c)) in unknowns.iter().enumerate() {
                        fixed[(*r, *c)] = x[k].clone();
                    }
                }
                SolveOutcome::Underdetermined { rank, .. } => {
                    return Err(QuasiRError::NotUnique { mu, rank, unknowns: unknowns.len() })
                }
                SolveOutcome::Inconsistent { rank } => return Err(QuasiRError::Inconsistent { mu, rank }),
            }
        }
        blocks.insert(mu, fixed);
    }
    Ok(QuasiR { direction, blocks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Laurent;
    use crate::quiver::Quiver;
    use alloc::vec;

    #[test]
    fn sl2_square_of_fundamental() {
        let c = Quiver::linear(1).cartan();
        let t = TensorModule::new(&c, &[1], &[1], 2).unwrap();
        let theta = quasi_r_matrix(&t, ThetaDirection::LowerFirst).unwrap();
        assert!(theta.block(&WeightVector(vec![0])).unwrap().is_identity());
        let b = theta.block(&WeightVector(vec![1])).unwrap();
        // basis order (u0 (x) u1, u1 (x) u0); the correction maps the first to the second
        let corr = RationalScalar::from(&Laurent::v_pow(1) - &Laurent::v_pow(-1));
        assert_eq!(b[(1, 0)], corr);
        assert!(b[(0, 1)].is_zero() && b[(0, 0)].is_one() && b[(1, 1)].is_one());
        assert!(theta.is_unitary());
        assert!(matches!(quasi_r_matrix(&t, ThetaDirection::RaiseFirst), Err(QuasiRError::Inconsistent { .. })));
    }
}
