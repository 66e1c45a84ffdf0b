use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::exactalg::{qint, Laurent};
use crate::quiver::{CartanMatrix, WeightVector};

/// `F_{w_1} F_{w_2} ... F_{w_k} v_lambda`; the first letter is applied last.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LoweringWord(pub Vec<usize>);

impl LoweringWord {
    pub fn empty() -> Self {
        LoweringWord(Vec::new())
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn content(&self, n: usize) -> WeightVector {
        let mut c = WeightVector::zero(n);
        for &i in &self.0 {
            c.0[i] += 1;
        }
        c
    }

    /// `F_i` applied to this word.
    pub fn prepend(&self, i: usize) -> Self {
        let mut w = Vec::with_capacity(self.0.len() + 1);
        w.push(i);
        w.extend_from_slice(&self.0);
        LoweringWord(w)
    }

    fn without(&self, p: usize) -> Self {
        let mut w = self.0.clone();
        w.remove(p);
        LoweringWord(w)
    }
}

impl fmt::Display for LoweringWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "F{}", i + 1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for LoweringWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self)
    }
}

/// All words with the given letter multiset, in lexicographic order.
pub fn words_of_content(nu: &[i64]) -> Vec<LoweringWord> {
    fn go(rest: &mut [i64], prefix: &mut Vec<usize>, out: &mut Vec<LoweringWord>) {
        if rest.iter().all(|x| *x == 0) {
            out.push(LoweringWord(prefix.clone()));
            return;
        }
        for i in 0..rest.len() {
            if rest[i] > 0 {
                rest[i] -= 1;
                prefix.push(i);
                go(rest, prefix, out);
                prefix.pop();
                rest[i] += 1;
            }
        }
    }
    let mut out = Vec::new();
    if nu.iter().any(|x| *x < 0) {
        return out;
    }
    go(&mut nu.to_vec(), &mut Vec::new(), &mut out);
    out
}

/// `E_i F_w v_lambda` as a combination of shorter words: removing the letter at
/// position `p` (where `w_p = i`) contributes `[<i, lambda> - sum_{q > p} a_{i, w_q}]`.
pub fn lower_raise_commute(
    cartan: &CartanMatrix,
    i: usize,
    word: &LoweringWord,
    lambda: &[i64],
) -> Vec<(LoweringWord, Laurent)> {
    let mut acc: BTreeMap<LoweringWord, Laurent> = BTreeMap::new();
    let mut h = lambda[i];
    // walk from the innermost letter outwards, tracking the weight seen by position p
    for p in (0..word.len()).rev() {
        let letter = word.0[p];
        if letter == i {
            let c = qint(h);
            if !c.is_zero() {
                let slot = acc.entry(word.without(p)).or_default();
                *slot += &c;
            }
        }
        h -= cartan.get(i, letter);
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Quiver;
    use alloc::vec;

    #[test]
    fn words_are_lexicographic() {
        let w = words_of_content(&[1, 2]);
        let letters: Vec<Vec<usize>> = w.into_iter().map(|x| x.0).collect();
        assert_eq!(letters, vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]);
        assert_eq!(words_of_content(&[0, 0]), vec![LoweringWord::empty()]);
    }

    #[test]
    fn commuting_e_past_words() {
        let c = Quiver::linear(1).cartan();
        let f = LoweringWord(vec![0]);
        assert_eq!(lower_raise_commute(&c, 0, &f, &[2]), vec![(LoweringWord::empty(), qint(2))]);
        assert!(lower_raise_commute(&c, 0, &LoweringWord::empty(), &[2]).is_empty());
        let ff = LoweringWord(vec![0, 0]);
        assert_eq!(lower_raise_commute(&c, 0, &ff, &[2]), vec![(f, qint(2))]);
    }
}
