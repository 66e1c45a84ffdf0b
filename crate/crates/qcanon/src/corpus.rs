//! Seeded random corpora and the standard module corpus.

use qcanon_core::quiver::{FramedQuiver, Quiver, WeightVector};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random acyclic quiver on `1..=max_vertices` vertices: arrows follow a
/// random linear order, some edges doubled.
pub fn random_acyclic_quiver<R: Rng>(rng: &mut R, max_vertices: usize) -> Quiver {
    let n = rng.gen_range(1..=max_vertices);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut arrows = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(0.4) {
                let mult = if rng.gen_bool(0.15) { 2 } else { 1 };
                arrows.extend(std::iter::repeat_n((perm[a], perm[b]), mult));
            }
        }
    }
    let names: Vec<String> = (1..=n).map(|k| k.to_string()).collect();
    Quiver::new(names, arrows).expect("arrows follow a linear order")
}

/// One sign-identity sample: a framed quiver, a vertex, a multiplicity and a
/// dimension vector.
#[derive(Clone, Debug)]
pub struct SignCase {
    pub framed: FramedQuiver,
    pub i: usize,
    pub r: i64,
    pub nu: WeightVector,
}

pub fn random_sign_case<R: Rng>(rng: &mut R) -> SignCase {
    let q = random_acyclic_quiver(rng, 5);
    let n = q.len();
    let vec5 = |rng: &mut R| WeightVector((0..n).map(|_| rng.gen_range(0..=5)).collect());
    let framing1 = vec5(rng);
    let framing2 = if rng.gen_bool(0.5) { Some(vec5(rng)) } else { None };
    let nu = vec5(rng);
    let i = rng.gen_range(0..n);
    let r = rng.gen_range(1..=5);
    let framed = FramedQuiver::new(q, framing1, framing2).expect("nonnegative framings");
    SignCase { framed, i, r, nu }
}

/// A module or tensor product of the standard corpus.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub family: &'static str,
    pub quiver: Quiver,
    /// the right tensor factor, or the module itself
    pub lambda: Vec<i64>,
    /// the left tensor factor
    pub lambda2: Option<Vec<i64>>,
    pub height: i64,
}

impl CorpusEntry {
    pub fn label(&self) -> String {
        match &self.lambda2 {
            None => format!("{} L{}", self.family, WeightVector(self.lambda.clone())),
            Some(l2) => format!("{} L{} (x) L{}", self.family, WeightVector(l2.clone()), WeightVector(self.lambda.clone())),
        }
    }
}

fn a1xa1() -> Quiver {
    Quiver::new(vec!["1", "2"], vec![]).expect("two isolated vertices")
}

fn grid(n: usize, max: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|p| (0..=max).map(move |x| [p.clone(), vec![x]].concat())).collect();
    }
    out
}

/// sl2 with `lambda <= 4`, A2 and A1 x A1 with `<i, lambda> <= 2`, the
/// Kronecker quiver with `<i, lambda> <= 1`, plus tensor products of small
/// factors in each family. Heights are capped at `max_height`.
pub fn standard(max_height: i64) -> Vec<CorpusEntry> {
    let families: [(&'static str, Quiver, i64); 4] =
        [("sl2", Quiver::linear(1), 4), ("A2", Quiver::linear(2), 2), ("A1xA1", a1xa1(), 2), ("Kronecker", Quiver::multi_edge(2), 1)];
    let mut out = Vec::new();
    for (family, q, max) in &families {
        for lambda in grid(q.len(), *max) {
            out.push(CorpusEntry { family, quiver: q.clone(), lambda, lambda2: None, height: max_height });
        }
    }
    let tensors: [(&'static str, Quiver, Vec<Vec<i64>>); 4] = [
        ("sl2", Quiver::linear(1), vec![vec![1], vec![2], vec![3], vec![4]]),
        ("A2", Quiver::linear(2), vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![2, 0]]),
        ("A1xA1", a1xa1(), vec![vec![1, 0], vec![1, 1]]),
        ("Kronecker", Quiver::multi_edge(2), vec![vec![1, 0], vec![0, 1]]),
    ];
    for (family, q, factors) in tensors {
        for l2 in &factors {
            for l1 in &factors {
                out.push(CorpusEntry { family, quiver: q.clone(), lambda: l1.clone(), lambda2: Some(l2.clone()), height: max_height });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_quivers_are_reproducible() {
        let a: Vec<Quiver> = (0..20).map({
            let mut r = rng(7);
            move |_| random_acyclic_quiver(&mut r, 6)
        }).collect();
        let mut r = rng(7);
        for q in &a {
            assert_eq!(*q, random_acyclic_quiver(&mut r, 6));
            assert!((1..=6).contains(&q.len()));
        }
    }

    #[test]
    fn corpus_shape() {
        let c = standard(6);
        assert_eq!(c.iter().filter(|e| e.family == "sl2" && e.lambda2.is_none()).count(), 5);
        assert_eq!(c.iter().filter(|e| e.family == "A2" && e.lambda2.is_none()).count(), 9);
        assert_eq!(c.iter().filter(|e| e.family == "Kronecker" && e.lambda2.is_none()).count(), 4);
        assert!(c.iter().all(|e| e.height <= 6));
    }
}
