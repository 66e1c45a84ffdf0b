use alloc::collections::BTreeMap;

use super::word::{lower_raise_commute, LoweringWord};
use crate::exactalg::Laurent;
use crate::quiver::{CartanMatrix, WeightVector};

/// Contravariant form on the Verma module: `<v, v> = 1` and `F_i` adjoint to
/// `E_i`. Values are memoized per word pair.
#[derive(Clone, Debug)]
pub struct ContravariantForm {
    cartan: CartanMatrix,
    lambda: WeightVector,
    memo: BTreeMap<(LoweringWord, LoweringWord), Laurent>,
}

impl ContravariantForm {
    pub fn new(cartan: CartanMatrix, lambda: WeightVector) -> Self {
        ContravariantForm { cartan, lambda, memo: BTreeMap::new() }
    }

    pub fn pair(&mut self, x: &LoweringWord, y: &LoweringWord) -> Laurent {
        let n = self.cartan.len();
        if x.len() != y.len() || x.content(n) != y.content(n) {
            return Laurent::zero();
        }
        self.pair_same_content(x, y)
    }

    fn pair_same_content(&mut self, x: &LoweringWord, y: &LoweringWord) -> Laurent {
        if x.is_empty() {
            return Laurent::one();
        }
        let key = if x <= y { (x.clone(), y.clone()) } else { (y.clone(), x.clone()) };
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        // <F_i x', y> = <x', E_i y>
        let (x, y) = (&key.0, &key.1);
        let i = x.0[0];
        let rest = LoweringWord(x.0[1..].to_vec());
        let mut acc = Laurent::zero();
        for (w, c) in lower_raise_commute(&self.cartan, i, y, &self.lambda) {
            let p = self.pair_same_content(&rest, &w);
            if !p.is_zero() {
                acc += &(&c * &p);
            }
        }
        self.memo.insert(key, acc.clone());
        acc
    }
}

/// One-shot evaluation of the contravariant form.
pub fn contravariant_pair(cartan: &CartanMatrix, lambda: &[i64], x: &LoweringWord, y: &LoweringWord) -> Laurent {
    ContravariantForm::new(cartan.clone(), WeightVector(lambda.to_vec())).pair(x, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::qint;
    use crate::quiver::Quiver;
    use alloc::vec;

    #[test]
    fn sl2_pairings() {
        let c = Quiver::linear(1).cartan();
        let f = LoweringWord(vec![0]);
        let ff = LoweringWord(vec![0, 0]);
        assert_eq!(contravariant_pair(&c, &[2], &f, &f), qint(2));
        assert_eq!(contravariant_pair(&c, &[2], &ff, &ff), &qint(2) * &qint(2));
        assert_eq!(contravariant_pair(&c, &[2], &f, &ff), Laurent::zero());
        assert_eq!(contravariant_pair(&c, &[1], &ff, &ff), Laurent::zero());
    }

    #[test]
    fn symmetric_on_a2() {
        let c = Quiver::linear(2).cartan();
        let mut form = ContravariantForm::new(c, WeightVector(vec![1, 1]));
        let a = LoweringWord(vec![0, 1]);
        let b = LoweringWord(vec![1, 0]);
        assert_eq!(form.pair(&a, &b), form.pair(&b, &a));
        assert_eq!(form.pair(&a, &a), qint(2));
        assert_eq!(form.pair(&a, &b), Laurent::one());
    }
}
