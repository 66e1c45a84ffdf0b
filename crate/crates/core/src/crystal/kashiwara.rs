use alloc::vec::Vec;

use crate::exactalg::{qbinomial, RationalScalar};
use crate::repmodule::{apply_generator, Generator, ModuleError, ModuleVector, WeightModule};

/// Kashiwara operator type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KashiwaraOp {
    E,
    F,
}

/// `x = sum_n F_i^{(n)} u_n` with `E_i u_n = 0`; returns the nonzero `(n, u_n)`
/// in increasing `n`.
pub fn i_string_decompose<M: WeightModule + ?Sized>(
    m: &M,
    x: &ModuleVector,
    i: usize,
) -> Result<Vec<(u32, ModuleVector)>, ModuleError> {
    let mut cur = x.clone();
    let mut parts = Vec::new();
    let top = x.nu[i].max(0) as u32;
    for n in (0..=top).rev() {
        if cur.is_zero() {
            break;
        }
        let y = if n == 0 { cur.clone() } else { apply_generator(m, &Generator::E(i, n), &cur)? };
        if y.is_zero() {
            continue;
        }
        // E^{(n)} F^{(n)} u = [h choose n] u for u highest of weight h
        let h = m.pairing(i, &y.nu);
        let b = qbinomial(h, n);
        if b.is_zero() {
            return Err(ModuleError::Internal(alloc::format!("string component at {} has weight {} below its length {}", y.nu, h, n)));
        }
        let u = y.scale(&RationalScalar::from(b).recip()?);
        let back = if n == 0 { u.clone() } else { apply_generator(m, &Generator::F(i, n), &u)? };
        cur = cur.sub(&back);
        parts.push((n, u));
    }
    if !cur.is_zero() {
        return Err(ModuleError::Internal(alloc::format!("string decomposition at {} left a remainder", x.nu)));
    }
    parts.reverse();
    Ok(parts)
}

/// `f~ x = sum F^{(n+1)} u_n`, `e~ x = sum F^{(n-1)} u_n`; `None` for zero.
pub fn kashiwara<M: WeightModule + ?Sized>(
    m: &M,
    op: KashiwaraOp,
    i: usize,
    x: &ModuleVector,
) -> Result<Option<ModuleVector>, ModuleError> {
    let target = x.nu.shifted(i, if op == KashiwaraOp::F { 1 } else { -1 });
    if !target.is_nonnegative() {
        return Ok(None);
    }
    m.check_in_bound(&target)?;
    let mut acc = ModuleVector::zero(target.clone(), m.dim(&target));
    for (n, u) in i_string_decompose(m, x, i)? {
        let r = match op {
            KashiwaraOp::F => n + 1,
            KashiwaraOp::E if n == 0 => continue,
            KashiwaraOp::E => n - 1,
        };
        let t = if r == 0 { u } else { apply_generator(m, &Generator::F(i, r), &u)? };
        acc = acc.add(&t);
    }
    Ok(if acc.is_zero() { None } else { Some(acc) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{Quiver, WeightVector};
    use crate::repmodule::{HighestWeightModule, LoweringWord};
    use alloc::vec;

    #[test]
    fn sl2_strings() {
        let m = HighestWeightModule::new(&Quiver::linear(1).cartan(), &[2], 3).unwrap();
        let top = ModuleVector::highest(&m);
        let d = i_string_decompose(&m, &top, 0).unwrap();
        assert_eq!(d, vec![(0, top.clone())]);
        let f = m.word_vector(&LoweringWord(vec![0])).unwrap();
        assert_eq!(i_string_decompose(&m, &f, 0).unwrap(), vec![(1, top.clone())]);
        let f1 = kashiwara(&m, KashiwaraOp::F, 0, &top).unwrap().unwrap();
        assert_eq!(f1, f);
        let f2 = kashiwara(&m, KashiwaraOp::F, 0, &f1).unwrap().unwrap();
        assert_eq!(f2, apply_generator(&m, &Generator::F(0, 2), &top).unwrap());
        assert_eq!(kashiwara(&m, KashiwaraOp::F, 0, &f2).unwrap(), None);
        assert_eq!(kashiwara(&m, KashiwaraOp::E, 0, &top).unwrap(), None);
    }

    #[test]
    fn a2_two_term_decomposition() {
        let m = HighestWeightModule::new(&Quiver::linear(2).cartan(), &[1, 1], 3).unwrap();
        let x = m.word_vector(&LoweringWord(vec![0, 1])).unwrap();
        let parts = i_string_decompose(&m, &x, 1).unwrap();
        assert_eq!(parts.len(), 2);
        let mut sum = ModuleVector::zero(WeightVector(vec![1, 1]), 2);
        for (n, u) in &parts {
            let fu = if *n == 0 { u.clone() } else { apply_generator(&m, &Generator::F(1, *n), u).unwrap() };
            assert!(apply_generator(&m, &Generator::E(1, 1), u).unwrap().is_zero());
            sum = sum.add(&fu);
        }
        assert_eq!(sum, x);
    }
}
