use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use super::{kashiwara, local_span, unit_position, Crystal, CrystalError, Edge, KashiwaraOp, Lattice, Place};
use crate::quiver::WeightVector;
use crate::repmodule::{ModuleVector, TensorModule, WeightModule};

/// Result of a crystal operator on a pair `(b2, b1)` of `B(lambda2) x B(lambda1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PairEdge {
    To(usize, usize),
    Null,
    Beyond,
}

/// Signature rule on `(b2, b1)` for the lattice at `v = infinity`: `f~_i` acts on
/// `b1` when `phi_i(b1) > eps_i(b2)`, `e~_i` acts on `b1` when
/// `phi_i(b1) >= eps_i(b2)`, otherwise on `b2`.
pub fn tensor_crystal_op(left: &Crystal, right: &Crystal, op: KashiwaraOp, i: usize, (b2, b1): (usize, usize)) -> PairEdge {
    let on_left = match op {
        KashiwaraOp::F => right.phi(i, b1) <= left.eps(i, b2) as i64,
        KashiwaraOp::E => right.phi(i, b1) < left.eps(i, b2) as i64,
    };
    let step = |c: &Crystal, b: usize| match op {
        KashiwaraOp::F => c.f(i, b),
        KashiwaraOp::E => c.e(i, b).map_or(Edge::Null, Edge::To),
    };
    match (on_left, if on_left { step(left, b2) } else { step(right, b1) }) {
        (_, Edge::Null) => PairEdge::Null,
        (_, Edge::Beyond) => PairEdge::Beyond,
        (true, Edge::To(x)) => PairEdge::To(x, b1),
        (false, Edge::To(x)) => PairEdge::To(b2, x),
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TensorCheck {
    pub checked: usize,
    pub mismatches: Vec<String>,
}

impl TensorCheck {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

struct PairSpace {
    pairs: Vec<(usize, usize)>,
    reps: Vec<ModuleVector>,
    lattice: Lattice,
}

/// Compare `tensor_crystal_op` with the Kashiwara operators of the tensor
/// module acting on pure tensors of representatives, reduced in the lattice
/// spanned by those pure tensors at `place`.
pub fn check_tensor_crystal(t: &TensorModule, left: &Crystal, right: &Crystal, place: Place) -> Result<TensorCheck, CrystalError> {
    let bound = t.height_bound();
    let mut spaces: BTreeMap<WeightVector, PairSpace> = BTreeMap::new();
    for mu in t.weights() {
        let mut pairs = Vec::new();
        let mut reps = Vec::new();
        for blk in t.blocks(&mu) {
            for &b2 in left.nodes_at(&blk.nu2) {
                for &b1 in right.nodes_at(&blk.nu1) {
                    pairs.push((b2, b1));
                    reps.push(t.pure_tensor(&left.node(b2).vector_rep, &right.node(b1).vector_rep)?);
                }
            }
        }
        if pairs.is_empty() {
            continue;
        }
        if pairs.len() != t.dim(&mu) {
            return Err(CrystalError::NotCrystal(alloc::format!("{} pairs for a space of dimension {} at {}", pairs.len(), t.dim(&mu), mu)));
        }
        let basis: Vec<_> = reps.iter().map(|x| x.coords.clone()).collect();
        if local_span(&basis, place).len() != basis.len() {
            return Err(CrystalError::NotCrystal(alloc::format!("pure tensors at {} are dependent", mu)));
        }
        let lattice = Lattice::from_basis(basis).expect("independent");
        spaces.insert(mu, PairSpace { pairs, reps, lattice });
    }
    let mut report = TensorCheck::default();
    for (mu, sp) in &spaces {
        for (k, &pair) in sp.pairs.iter().enumerate() {
            for i in 0..t.rank() {
                for op in [KashiwaraOp::F, KashiwaraOp::E] {
                    let target = mu.shifted(i, if op == KashiwaraOp::F { 1 } else { -1 });
                    if !target.is_nonnegative() || target.height() > bound {
                        continue;
                    }
                    let module = match kashiwara(t, op, i, &sp.reps[k])? {
                        None => None,
                        Some(z) => {
                            let tsp = &spaces[&target];
                            match tsp.lattice.reduce(&z.coords, place) {
                                None => {
                                    report.mismatches.push(alloc::format!("{:?}_{} of {:?} at {} leaves the lattice", op, i + 1, pair, mu));
                                    continue;
                                }
                                Some(r) if r.iter().all(num_traits::Zero::is_zero) => None,
                                Some(r) => match unit_position(&r) {
                                    Some(p) => Some(tsp.pairs[p]),
                                    None => {
                                        report.mismatches.push(alloc::format!("{:?}_{} of {:?} at {} is not a pair mod the lattice", op, i + 1, pair, mu));
                                        continue;
                                    }
                                },
                            }
                        }
                    };
                    let rule = match tensor_crystal_op(left, right, op, i, pair) {
                        PairEdge::To(a, b) => Some((a, b)),
                        PairEdge::Null => None,
                        PairEdge::Beyond => continue,
                    };
                    report.checked += 1;
                    if module != rule {
                        report.mismatches.push(alloc::format!("{:?}_{} of {:?} at {}: module {:?}, rule {:?}", op, i + 1, pair, mu, module, rule));
                    }
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystal::VertexOrder;
    use crate::quiver::Quiver;

    fn run(q: &Quiver, l2: &[i64], l1: &[i64], h: i64, place: Place) -> TensorCheck {
        let c = q.cartan();
        let t = TensorModule::new(&c, l2, l1, h).unwrap();
        let left = Crystal::enumerate(t.first(), VertexOrder::natural(q.len())).unwrap();
        let right = Crystal::enumerate(t.second(), VertexOrder::natural(q.len())).unwrap();
        check_tensor_crystal(&t, &left, &right, place).unwrap()
    }

    #[test]
    fn agrees_with_module_at_infinity() {
        let r = run(&Quiver::linear(1), &[1], &[1], 2, Place::Infinity);
        assert!(r.passed(), "{:?}", r.mismatches);
        assert_eq!(r.checked, 6);
        let r = run(&Quiver::linear(2), &[1, 0], &[1, 0], 4, Place::Infinity);
        assert!(r.passed(), "{:?}", r.mismatches);
        let r = run(&Quiver::linear(2), &[1, 0], &[0, 1], 4, Place::Infinity);
        assert!(r.passed(), "{:?}", r.mismatches);
        let r = run(&Quiver::linear(1), &[2], &[1], 3, Place::Infinity);
        assert!(r.passed(), "{:?}", r.mismatches);
    }

    #[test]
    fn pure_tensors_at_zero_are_not_stable() {
        let r = run(&Quiver::linear(1), &[1], &[1], 2, Place::Zero);
        assert!(!r.passed());
    }

    #[test]
    fn sl2_principal_string() {
        let c = Quiver::linear(1).cartan();
        let t = TensorModule::new(&c, &[1], &[1], 2).unwrap();
        let b = Crystal::enumerate(t.first(), VertexOrder::natural(1)).unwrap();
        assert_eq!(tensor_crystal_op(&b, &b, KashiwaraOp::E, 0, (0, 0)), PairEdge::Null);
        let mut p = (0, 0);
        let mut steps = 0;
        while let PairEdge::To(x, y) = tensor_crystal_op(&b, &b, KashiwaraOp::F, 0, p) {
            p = (x, y);
            steps += 1;
        }
        // the string through the highest pair has 3 nodes
        assert_eq!(steps + 1, 3);
        assert_eq!(p, (1, 1));
    }
}
