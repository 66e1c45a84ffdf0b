use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::fmt;

use num_bigint::BigInt;

use super::{monomial_basis, BasisError};
use crate::crystal::Crystal;
use crate::exactalg::{inverse, Laurent, Point, RatMatrix, RationalScalar};
use crate::quiver::{FramedQuiver, TwistKind, WeightVector};
use crate::repmodule::{
    apply_generator, operator_matrix, Generator, HighestWeightModule, ModuleVector, TensorModule, WeightModule,
};

/// Columns are the monomial vectors of each weight space, an `A`-basis of the
/// integral form.
pub fn monomial_a_basis(m: &HighestWeightModule, c: &Crystal) -> Result<BTreeMap<WeightVector, RatMatrix>, BasisError> {
    let mut out = BTreeMap::new();
    for nu in m.weights() {
        out.insert(nu.clone(), monomial_basis(m, c, &nu)?.matrix());
    }
    Ok(out)
}

/// Products of factor bases, block by block.
pub fn tensor_a_basis(
    t: &TensorModule,
    basis2: &BTreeMap<WeightVector, RatMatrix>,
    basis1: &BTreeMap<WeightVector, RatMatrix>,
) -> BTreeMap<WeightVector, RatMatrix> {
    let mut out = BTreeMap::new();
    for mu in t.weights() {
        let d = t.dim(&mu);
        let mut mat = RatMatrix::zeros(d, d);
        for blk in t.blocks(&mu) {
            let k = basis2[&blk.nu2].kron(&basis1[&blk.nu1]);
            for r in 0..k.rows() {
                for c in 0..k.cols() {
                    if !k[(r, c)].is_zero() {
                        mat[(blk.offset + r, blk.offset + c)] = k[(r, c)].clone();
                    }
                }
            }
        }
        out.insert(mu, mat);
    }
    out
}

fn twist_sign(framed: &FramedQuiver, g: &Generator, nu: &WeightVector) -> Result<i64, BasisError> {
    Ok(match g {
        Generator::F(i, r) => framed.sign_twist(*i, *r as i64, nu, TwistKind::PsiMinus)?,
        Generator::E(i, r) => framed.sign_twist(*i, *r as i64, nu, TwistKind::PsiPlus)?,
        Generator::K(_) => 1,
    })
}

/// The generator action scaled by its `psi`-twist sign at the source weight.
pub fn twisted_action<M: WeightModule + ?Sized>(m: &M, framed: &FramedQuiver, g: &Generator, x: &ModuleVector) -> Result<ModuleVector, BasisError> {
    let y = apply_generator(m, g, x)?;
    let s = twist_sign(framed, g, &x.nu)?;
    Ok(if s == 1 { y } else { y.scale(&RationalScalar::from(-1)) })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TwistedKind {
    /// `[e_i, f_j] = delta_ij h_i` with `h_i = <i, lambda - nu>`
    Commutator,
    SerreE,
    SerreF,
    /// `r! e_i^{(r)} = e_i^r`
    DividedE,
    /// `r! f_i^{(r)} = f_i^r`
    DividedF,
}

impl fmt::Display for TwistedKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TwistedKind::Commutator => "[e, f] = h",
            TwistedKind::SerreE => "Serre for e",
            TwistedKind::SerreF => "Serre for f",
            TwistedKind::DividedE => "divided powers of e",
            TwistedKind::DividedF => "divided powers of f",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedCheck {
    pub kind: TwistedKind,
    pub nu: WeightVector,
    pub i: usize,
    pub j: usize,
    pub passed: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TwistedReport {
    pub twisted: bool,
    pub checks: Vec<TwistedCheck>,
}

impl TwistedReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &TwistedCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn count(&self, kind: TwistedKind) -> usize {
        self.checks.iter().filter(|c| c.kind == kind).count()
    }
}

type OpKey = (bool, usize, u32, WeightVector);

/// Integer matrices of (twisted) divided powers at `v = -1` in an `A`-basis.
struct Specialized<'a, M: WeightModule + ?Sized> {
    m: &'a M,
    framed: &'a FramedQuiver,
    basis: &'a BTreeMap<WeightVector, RatMatrix>,
    twisted: bool,
    cache: RefCell<BTreeMap<OpKey, RatMatrix>>,
    inverses: RefCell<BTreeMap<WeightVector, RatMatrix>>,
}

fn constant(x: BigInt) -> RationalScalar {
    RationalScalar::from(Laurent::constant(x))
}

impl<M: WeightModule + ?Sized> Specialized<'_, M> {
    fn inv(&self, nu: &WeightVector) -> Result<RatMatrix, BasisError> {
        if let Some(x) = self.inverses.borrow().get(nu) {
            return Ok(x.clone());
        }
        let b = self.basis.get(nu).ok_or(BasisError::NotInvertible)?;
        let x = inverse(b).ok_or(BasisError::NotInvertible)?;
        self.inverses.borrow_mut().insert(nu.clone(), x.clone());
        Ok(x)
    }

    /// Operator from `nu`; the zero map when source or target is empty.
    fn op(&self, raise: bool, i: usize, r: u32, nu: &WeightVector) -> Result<RatMatrix, BasisError> {
        let g = if raise { Generator::E(i, r) } else { Generator::F(i, r) };
        let target = g.target(nu);
        if !nu.is_nonnegative() || !target.is_nonnegative() || r == 0 {
            let id = r == 0 && nu.is_nonnegative();
            let d = if nu.is_nonnegative() { self.m.dim(nu) } else { 0 };
            return Ok(if id { RatMatrix::identity(d) } else { RatMatrix::zeros(if target.is_nonnegative() { self.m.dim(&target) } else { 0 }, d) });
        }
        let key = (raise, i, r, nu.clone());
        if let Some(x) = self.cache.borrow().get(&key) {
            return Ok(x.clone());
        }
        let x = operator_matrix(self.m, &g, nu)?;
        let mut out = RatMatrix::zeros(x.rows(), x.cols());
        if x.rows() > 0 && x.cols() > 0 {
            let a = self.inv(&target)?.mul(&x).mul(&self.basis[nu]);
            let spec = a.specialize(Point::MinusOne).ok_or_else(|| BasisError::NotIntegral { nu: nu.clone() })?;
            let sign = if self.twisted { twist_sign(self.framed, &g, nu)? } else { 1 };
            for (rr, row) in spec.into_iter().enumerate() {
                for (cc, val) in row.into_iter().enumerate() {
                    if !val.is_integer() {
                        return Err(BasisError::NotIntegral { nu: nu.clone() });
                    }
                    if !num_traits::Zero::is_zero(&val) {
                        out[(rr, cc)] = constant(val.to_integer() * sign);
                    }
                }
            }
        }
        self.cache.borrow_mut().insert(key, out.clone());
        Ok(out)
    }
}

/// Classical relations at `v = -1` for the twisted (or, as a control, the
/// untwisted) operators, in the `A`-basis `basis`.
pub fn verify_twisted_relations<M: WeightModule + ?Sized>(
    m: &M,
    framed: &FramedQuiver,
    basis: &BTreeMap<WeightVector, RatMatrix>,
    twisted: bool,
) -> Result<TwistedReport, BasisError> {
    let sp = Specialized { m, framed, basis, twisted, cache: RefCell::new(BTreeMap::new()), inverses: RefCell::new(BTreeMap::new()) };
    let n = m.rank();
    let bound = m.height_bound();
    let cartan = m.cartan();
    let mut checks = Vec::new();
    for nu in m.weights() {
        let d = m.dim(&nu);
        if d == 0 {
            continue;
        }
        let fits = |x: &WeightVector| x.height() <= bound;
        for i in 0..n {
            for j in 0..n {
                if fits(&nu.shifted(j, 1)) {
                    let ef = sp.op(true, i, 1, &nu.shifted(j, 1))?.mul(&sp.op(false, j, 1, &nu)?);
                    let fe = sp.op(false, j, 1, &nu.shifted(i, -1))?.mul(&sp.op(true, i, 1, &nu)?);
                    let lhs = ef.sub(&fe);
                    let rhs = if i == j {
                        RatMatrix::identity(d).scale(&RationalScalar::from(m.pairing(i, &nu)))
                    } else {
                        RatMatrix::zeros(lhs.rows(), lhs.cols())
                    };
                    checks.push(TwistedCheck { kind: TwistedKind::Commutator, nu: nu.clone(), i, j, passed: lhs == rhs });
                }
                if i != j {
                    let a = 1 - cartan.get(i, j);
                    for raise in [false, true] {
                        let dir = if raise { -1 } else { 1 };
                        let end = nu.shifted(i, dir * a).shifted(j, dir);
                        if !end.is_nonnegative() || !fits(&end) {
                            continue;
                        }
                        let mut acc: Option<RatMatrix> = None;
                        for p in 0..=a {
                            let q = a - p;
                            let mid1 = nu.shifted(i, dir * q);
                            let mid2 = mid1.shifted(j, dir);
                            let t = sp.op(raise, i, p as u32, &mid2)?.mul(&sp.op(raise, j, 1, &mid1)?).mul(&sp.op(raise, i, q as u32, &nu)?);
                            let t = if p % 2 == 1 { t.scale(&RationalScalar::from(-1)) } else { t };
                            acc = Some(match acc {
                                None => t,
                                Some(x) => x.add(&t),
                            });
                        }
                        let kind = if raise { TwistedKind::SerreE } else { TwistedKind::SerreF };
                        checks.push(TwistedCheck { kind, nu: nu.clone(), i, j, passed: acc.expect("a >= 1").is_zero() });
                    }
                }
            }
            for raise in [false, true] {
                let dir = if raise { -1 } else { 1 };
                let mut power: Option<RatMatrix> = None;
                let mut fact = BigInt::from(1);
                for r in 2..=3u32 {
                    let end = nu.shifted(i, dir * r as i64);
                    if !end.is_nonnegative() || !fits(&end) {
                        break;
                    }
                    let prev = match power.take() {
                        Some(p) => p,
                        None => sp.op(raise, i, 1, &nu)?,
                    };
                    let power = power.insert(sp.op(raise, i, 1, &nu.shifted(i, dir * (r as i64 - 1)))?.mul(&prev));
                    fact *= r;
                    let div = sp.op(raise, i, r, &nu)?.scale(&constant(fact.clone()));
                    let kind = if raise { TwistedKind::DividedE } else { TwistedKind::DividedF };
                    checks.push(TwistedCheck { kind, nu: nu.clone(), i, j: i, passed: div == *power });
                }
            }
        }
    }
    Ok(TwistedReport { twisted, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystal::VertexOrder;
    use crate::quiver::Quiver;
    use alloc::vec;

    fn single(q: &Quiver, lambda: &[i64], h: i64, twisted: bool) -> TwistedReport {
        let m = HighestWeightModule::new(&q.cartan(), lambda, h).unwrap();
        let c = Crystal::enumerate(&m, VertexOrder::natural(q.len())).unwrap();
        let basis = monomial_a_basis(&m, &c).unwrap();
        let framed = FramedQuiver::new(q.clone(), WeightVector(lambda.to_vec()), None).unwrap();
        verify_twisted_relations(&m, &framed, &basis, twisted).unwrap()
    }

    #[test]
    fn sl2_and_a2() {
        let r = single(&Quiver::linear(1), &[2], 4, true);
        assert!(r.all_passed(), "{:?}", r.failures().collect::<Vec<_>>());
        let r = single(&Quiver::linear(2), &[1, 1], 4, true);
        assert!(r.all_passed(), "{:?}", r.failures().collect::<Vec<_>>());
        assert!(r.count(TwistedKind::SerreF) > 0 && r.count(TwistedKind::DividedF) > 0);
    }

    #[test]
    fn untwisted_control_fails() {
        let r = single(&Quiver::linear(1), &[2], 2, false);
        assert!(r.failures().any(|c| c.kind == TwistedKind::Commutator && c.nu == WeightVector(vec![0])));
    }

    #[test]
    fn tensor() {
        let q = Quiver::linear(2);
        let t = TensorModule::new(&q.cartan(), &[1, 0], &[0, 1], 4).unwrap();
        let c2 = Crystal::enumerate(t.first(), VertexOrder::natural(2)).unwrap();
        let c1 = Crystal::enumerate(t.second(), VertexOrder::natural(2)).unwrap();
        let b = tensor_a_basis(&t, &monomial_a_basis(t.first(), &c2).unwrap(), &monomial_a_basis(t.second(), &c1).unwrap());
        let framed = FramedQuiver::new(q, WeightVector(vec![0, 1]), Some(WeightVector(vec![1, 0]))).unwrap();
        let r = verify_twisted_relations(&t, &framed, &b, true).unwrap();
        assert!(r.all_passed(), "{:?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn twist_examples() {
        let q = Quiver::linear(1);
        let m = HighestWeightModule::new(&q.cartan(), &[2], 3).unwrap();
        let framed = FramedQuiver::new(q, WeightVector(vec![2]), None).unwrap();
        let top = ModuleVector::highest(&m);
        let fx = apply_generator(&m, &Generator::F(0, 1), &top).unwrap();
        // nu = 1: <i, (1, 2)> = 1 - 2 is odd
        let y = twisted_action(&m, &framed, &Generator::F(0, 1), &fx).unwrap();
        assert_eq!(y, apply_generator(&m, &Generator::F(0, 1), &fx).unwrap().scale(&RationalScalar::from(-1)));
        let z = twisted_action(&m, &framed, &Generator::F(0, 2), &top).unwrap();
        assert_eq!(z, apply_generator(&m, &Generator::F(0, 2), &top).unwrap());
        assert!(twisted_action(&m, &framed, &Generator::E(0, 1), &top).unwrap().is_zero());
    }
}
