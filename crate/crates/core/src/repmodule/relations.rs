use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::{k_matrix, operator_matrix, word_matrix, Generator, ModuleError, WeightModule};
use crate::exactalg::{Laurent, RatMatrix, RationalScalar};
use crate::quiver::WeightVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RelationKind {
    /// `K_0 = 1`, `K_mu K_mu' = K_{mu + mu'}`
    KGroup,
    /// `K_j E_i = v^{a_ji} E_i K_j`
    KE,
    /// `K_j F_i = v^{-a_ji} F_i K_j`
    KF,
    /// `E_i F_j - F_j E_i = delta_ij (K_i - K_{-i}) / (v - v^-1)`
    Commutator,
    SerreE,
    SerreF,
    /// `F_i^{<i,lambda>+1} v_lambda = 0`
    Integrability,
}

impl RelationKind {
    pub const ALL: [RelationKind; 7] = [
        RelationKind::KGroup,
        RelationKind::KE,
        RelationKind::KF,
        RelationKind::Commutator,
        RelationKind::SerreE,
        RelationKind::SerreF,
        RelationKind::Integrability,
    ];

    pub fn label(self) -> &'static str {
        match self {
            RelationKind::KGroup => "(a) K group law",
            RelationKind::KE => "(b) K E commutation",
            RelationKind::KF => "(c) K F commutation",
            RelationKind::Commutator => "(d) [E, F]",
            RelationKind::SerreE => "(e) Serre for E",
            RelationKind::SerreF => "(f) Serre for F",
            RelationKind::Integrability => "integrability",
        }
    }
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationCheck {
    pub kind: RelationKind,
    /// source weight space
    pub nu: WeightVector,
    pub i: usize,
    pub j: usize,
    pub passed: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RelationReport {
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn count(&self, kind: RelationKind) -> usize {
        self.checks.iter().filter(|c| c.kind == kind).count()
    }
}

fn e(i: usize) -> Generator {
    Generator::E(i, 1)
}

fn f(i: usize) -> Generator {
    Generator::F(i, 1)
}

fn vpow(k: i64) -> RationalScalar {
    RationalScalar::from(Laurent::v_pow(k))
}

/// Serre sum `sum_{p+q=1-a_ij} (-1)^p X_i^{(p)} X_j X_i^{(q)}` on `nu`.
fn serre<M: WeightModule + ?Sized>(m: &M, raise: bool, i: usize, j: usize, nu: &WeightVector) -> Result<RatMatrix, ModuleError> {
    let n = 1 - m.cartan().get(i, j);
    let mk = |x: usize, r: u32| if raise { Generator::E(x, r) } else { Generator::F(x, r) };
    let mut acc: Option<RatMatrix> = None;
    for p in 0..=n {
        let q = n - p;
        let mut gens = Vec::new();
        if p > 0 {
            gens.push(mk(i, p as u32));
        }
        gens.push(mk(j, 1));
        if q > 0 {
            gens.push(mk(i, q as u32));
        }
        let mut t = word_matrix(m, &gens, nu)?;
        if p % 2 == 1 {
            t = t.scale(&RationalScalar::from(-1));
        }
        acc = Some(match acc {
            None => t,
            Some(a) => a.add(&t),
        });
    }
    Ok(acc.expect("at least one term"))
}

/// Exact checks of the defining relations on every weight space of height at
/// most `height` (clipped to the module's bound).
pub fn verify_relations<M: WeightModule + ?Sized>(m: &M, height: i64) -> Result<RelationReport, ModuleError> {
    let n = m.rank();
    let bound = height.min(m.height_bound());
    let c = m.cartan();
    let mut checks = Vec::new();
    let mut push = |kind, nu: &WeightVector, i, j, passed| checks.push(RelationCheck { kind, nu: nu.clone(), i, j, passed });
    let denom = RationalScalar::from(&Laurent::v_pow(1) - &Laurent::v_pow(-1)).recip()?;
    for nu in m.weights() {
        if nu.height() > bound || m.dim(&nu) == 0 {
            continue;
        }
        let can_raise_to = |x: &WeightVector| x.height() <= bound;
        let zero = WeightVector::zero(n);
        let id = RatMatrix::identity(m.dim(&nu));
        push(RelationKind::KGroup, &nu, 0, 0, k_matrix(m, &zero, &nu) == id);
        for i in 0..n {
            let ai = WeightVector::unit(n, i, 1);
            let prod = k_matrix(m, &ai, &nu).mul(&k_matrix(m, &WeightVector::unit(n, i, -1), &nu));
            push(RelationKind::KGroup, &nu, i, i, prod == id);
        }
        for i in 0..n {
            for j in 0..n {
                let kj = WeightVector::unit(n, j, 1);
                // (b)
                let ei = operator_matrix(m, &e(i), &nu)?;
                let lhs = k_matrix(m, &kj, &nu.shifted(i, -1)).mul(&ei);
                let rhs = ei.mul(&k_matrix(m, &kj, &nu)).scale(&vpow(c.get(j, i)));
                push(RelationKind::KE, &nu, j, i, lhs == rhs);
                // (c)
                if can_raise_to(&nu.shifted(i, 1)) {
                    let fi = operator_matrix(m, &f(i), &nu)?;
                    let lhs = k_matrix(m, &kj, &nu.shifted(i, 1)).mul(&fi);
                    let rhs = fi.mul(&k_matrix(m, &kj, &nu)).scale(&vpow(-c.get(j, i)));
                    push(RelationKind::KF, &nu, j, i, lhs == rhs);
                }
                // (d)
                if can_raise_to(&nu.shifted(j, 1)) {
                    let ef = word_matrix(m, &[e(i), f(j)], &nu)?;
                    let fe = word_matrix(m, &[f(j), e(i)], &nu)?;
                    let lhs = ef.sub(&fe);
                    let rhs = if i == j {
                        let ki = k_matrix(m, &WeightVector::unit(n, i, 1), &nu);
                        let kmi = k_matrix(m, &WeightVector::unit(n, i, -1), &nu);
                        ki.sub(&kmi).scale(&denom)
                    } else {
                        RatMatrix::zeros(lhs.rows(), lhs.cols())
                    };
                    push(RelationKind::Commutator, &nu, i, j, lhs == rhs);
                }
                if i == j {
                    continue;
                }
                let a = 1 - c.get(i, j);
                // (e): lands at nu - a i - j
                let down = nu.shifted(i, -a).shifted(j, -1);
                if down.is_nonnegative() {
                    push(RelationKind::SerreE, &nu, i, j, serre(m, true, i, j, &nu)?.is_zero());
                }
                // (f)
                let up = nu.shifted(i, a).shifted(j, 1);
                if can_raise_to(&up) {
                    push(RelationKind::SerreF, &nu, i, j, serre(m, false, i, j, &nu)?.is_zero());
                }
            }
        }
    }
    for i in 0..n {
        let r = m.highest_weight()[i] + 1;
        let target = WeightVector::unit(n, i, r);
        let verdict = if target.height() <= m.height_bound() {
            let gens = vec![f(i); r as usize];
            Some(word_matrix(m, &gens, &WeightVector::zero(n))?.is_zero())
        } else {
            m.integrability_beyond_bound(i)
        };
        if let Some(ok) = verdict {
            push(RelationKind::Integrability, &target, i, i, ok);
        }
    }
    Ok(RelationReport { checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Quiver;
    use crate::repmodule::{HighestWeightModule, TensorModule};

    #[test]
    fn sl2_and_a2() {
        let sl2 = Quiver::linear(1).cartan();
        let m = HighestWeightModule::new(&sl2, &[3], 6).unwrap();
        let r = verify_relations(&m, 6).unwrap();
        assert!(r.all_passed());
        assert_eq!(r.count(RelationKind::Integrability), 1);
        let a2 = HighestWeightModule::new(&Quiver::linear(2).cartan(), &[1, 1], 4).unwrap();
        let r = verify_relations(&a2, 4).unwrap();
        assert!(r.all_passed(), "{:?}", r.failures().collect::<Vec<_>>());
        assert!(r.count(RelationKind::SerreE) > 0 && r.count(RelationKind::SerreF) > 0);
    }

    #[test]
    fn trivial_module_is_killed() {
        let a2 = HighestWeightModule::new(&Quiver::linear(2).cartan(), &[0, 0], 3).unwrap();
        let r = verify_relations(&a2, 3).unwrap();
        assert!(r.all_passed());
        for i in 0..2 {
            assert!(operator_matrix(&a2, &f(i), &WeightVector::zero(2)).unwrap().is_zero());
        }
    }

    #[test]
    fn tensor_relations() {
        let kr = Quiver::multi_edge(2).cartan();
        let t = TensorModule::new(&kr, &[1, 0], &[0, 1], 3).unwrap();
        let r = verify_relations(&t, 3).unwrap();
        assert!(r.all_passed(), "{:?}", r.failures().collect::<Vec<_>>());
    }
}
