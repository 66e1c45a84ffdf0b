//! Crystal bases of truncated highest-weight modules, realized on the
//! lattice spanned at `v = 0` by `f~`-word images of the highest vector.

mod kashiwara;
mod lattice;
mod order;
mod tensor;

pub use kashiwara::{i_string_decompose, kashiwara, KashiwaraOp};
pub use lattice::{local_span, unit_position, Lattice, Place};
pub use order::{format_string, string_order_compare, CrystalString, StringOrdering, VertexOrder};
pub use tensor::{check_tensor_crystal, tensor_crystal_op, PairEdge, TensorCheck};

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use num_rational::BigRational;

use crate::quiver::{CartanMatrix, WeightVector};
use crate::repmodule::{HighestWeightModule, ModuleError, ModuleVector, WeightModule};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CrystalError {
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error("f~ images at {nu} span a lattice of rank {rank}, expected {dim}")]
    LatticeRank { nu: WeightVector, rank: usize, dim: usize },
    #[error("f~ images at {nu} give {count} classes mod v, expected {dim}")]
    ClassCount { nu: WeightVector, count: usize, dim: usize },
    #[error("crystal axiom failure: {0}")]
    NotCrystal(String),
    #[error("vertex order has length {got}, expected {expected}")]
    OrderLength { expected: usize, got: usize },
}

/// Result of applying a crystal operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Edge {
    To(usize),
    Null,
    /// the target weight is beyond the height bound
    Beyond,
}

impl Edge {
    pub fn node(self) -> Option<usize> {
        match self {
            Edge::To(b) => Some(b),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CrystalNode {
    pub id: usize,
    pub nu: WeightVector,
    /// position among the nodes of weight `nu` (lattice coordinate)
    pub local: usize,
    /// the string replayed as an `f~`-word from the highest vector
    pub vector_rep: ModuleVector,
    pub eps: Vec<u32>,
    pub phi: Vec<i64>,
    pub string: CrystalString,
}

/// The crystal `B(lambda)` up to a height bound, frozen after enumeration.
#[derive(Clone, Debug)]
pub struct Crystal {
    cartan: CartanMatrix,
    lambda: WeightVector,
    height: i64,
    order: VertexOrder,
    nodes: Vec<CrystalNode>,
    by_weight: BTreeMap<WeightVector, Vec<usize>>,
    lattices: BTreeMap<WeightVector, Lattice>,
    f_edges: Vec<Vec<Edge>>,
    e_edges: Vec<Vec<Option<usize>>>,
}

struct Candidate {
    from: usize,
    i: usize,
    vec: Option<ModuleVector>,
}

impl Crystal {
    /// Breadth-first closure of the highest node under all `f~_i`.
    pub fn enumerate(m: &HighestWeightModule, order: VertexOrder) -> Result<Self, CrystalError> {
        let n = m.rank();
        if order.len() != n {
            return Err(CrystalError::OrderLength { expected: n, got: order.len() });
        }
        let bound = m.height_bound();
        let mut nodes: Vec<ModuleVector> = Vec::new();
        let mut node_nu: Vec<WeightVector> = Vec::new();
        let mut by_weight: BTreeMap<WeightVector, Vec<usize>> = BTreeMap::new();
        let mut lattices: BTreeMap<WeightVector, Lattice> = BTreeMap::new();
        let mut f_edges: Vec<Vec<Edge>> = Vec::new();

        let top = ModuleVector::highest(m);
        let zero = WeightVector::zero(n);
        lattices.insert(zero.clone(), Lattice::from_basis(alloc::vec![top.coords.clone()]).expect("rank one"));
        by_weight.insert(zero.clone(), alloc::vec![0]);
        nodes.push(top);
        node_nu.push(zero);
        f_edges.push(alloc::vec![Edge::Beyond; n]);

        for nu in m.weights() {
            let dim = m.dim(&nu);
            if nu.height() == 0 || dim == 0 {
                continue;
            }
            let mut cands: Vec<Candidate> = Vec::new();
            for i in 0..n {
                if nu[i] == 0 {
                    continue;
                }
                let Some(prev) = by_weight.get(&nu.shifted(i, -1)) else { continue };
                for &p in prev {
                    let vec = kashiwara(m, KashiwaraOp::F, i, &nodes[p])?;
                    cands.push(Candidate { from: p, i, vec });
                }
            }
            let gens: Vec<_> = cands.iter().filter_map(|c| c.vec.as_ref().map(|v| v.coords.clone())).collect();
            let span = local_span(&gens, Place::Zero);
            if span.len() != dim {
                return Err(CrystalError::LatticeRank { nu, rank: span.len(), dim });
            }
            let hermite = Lattice::from_basis(span).ok_or_else(|| CrystalError::LatticeRank { nu: nu.clone(), rank: 0, dim })?;
            // classes mod v, in candidate order
            let mut classes: Vec<(Vec<BigRational>, usize)> = Vec::new();
            for (k, c) in cands.iter().enumerate() {
                let Some(x) = &c.vec else { continue };
                let img = hermite.reduce(&x.coords, Place::Zero).ok_or_else(|| CrystalError::NotCrystal(alloc::format!("f~ image at {} leaves the lattice", nu)))?;
                if img.iter().all(num_traits::Zero::is_zero) || classes.iter().any(|(y, _)| *y == img) {
                    continue;
                }
                classes.push((img, k));
            }
            if classes.len() != dim {
                return Err(CrystalError::ClassCount { nu, count: classes.len(), dim });
            }
            let reps: Vec<Vec<_>> = classes.iter().map(|(_, k)| cands[*k].vec.as_ref().unwrap().coords.clone()).collect();
            let lat = Lattice::from_basis(reps).ok_or_else(|| CrystalError::NotCrystal(alloc::format!("classes at {} are dependent", nu)))?;
            let first = nodes.len();
            for (_, k) in &classes {
                nodes.push(cands[*k].vec.clone().unwrap());
                node_nu.push(nu.clone());
                f_edges.push(alloc::vec![Edge::Beyond; n]);
            }
            for c in &cands {
                let edge = match &c.vec {
                    None => Edge::Null,
                    Some(x) => {
                        let img = lat.reduce(&x.coords, Place::Zero).expect("same lattice");
                        if img.iter().all(num_traits::Zero::is_zero) {
                            Edge::Null
                        } else {
                            let pos = unit_position(&img).ok_or_else(|| CrystalError::NotCrystal(alloc::format!("f~_{} image at {} is not a basis element mod v", c.i + 1, nu)))?;
                            Edge::To(first + pos)
                        }
                    }
                };
                f_edges[c.from][c.i] = edge;
            }
            by_weight.insert(nu.clone(), (first..nodes.len()).collect());
            lattices.insert(nu, lat);
        }
        // f~ into zero weight spaces within the bound
        for (b, nu) in node_nu.iter().enumerate() {
            for i in 0..n {
                let up = nu.shifted(i, 1);
                if up.height() <= bound && !by_weight.contains_key(&up) {
                    f_edges[b][i] = Edge::Null;
                }
            }
        }

        let mut e_edges: Vec<Vec<Option<usize>>> = alloc::vec![alloc::vec![None; n]; nodes.len()];
        for (b, row) in f_edges.iter().enumerate() {
            for (i, e) in row.iter().enumerate() {
                if let Edge::To(t) = *e {
                    if e_edges[t][i].is_some() {
                        return Err(CrystalError::NotCrystal(alloc::format!("two f~_{} edges into one node", i + 1)));
                    }
                    e_edges[t][i] = Some(b);
                }
            }
        }
        let mut crystal = Crystal {
            cartan: m.cartan().clone(),
            lambda: m.highest_weight().clone(),
            height: bound,
            order,
            nodes: Vec::new(),
            by_weight,
            lattices,
            f_edges,
            e_edges,
        };
        for (b, nu) in node_nu.into_iter().enumerate() {
            let eps: Vec<u32> = (0..n).map(|i| crystal.count_e(i, b)).collect();
            let phi = (0..n).map(|i| eps[i] as i64 + m.pairing(i, &nu)).collect();
            let local = crystal.by_weight[&nu].iter().position(|&x| x == b).expect("listed");
            crystal.nodes.push(CrystalNode { id: b, nu, local, vector_rep: nodes[b].clone(), eps, phi, string: Vec::new() });
        }
        for b in 0..crystal.nodes.len() {
            let s = crystal.compute_string(b)?;
            crystal.nodes[b].string = s;
        }
        crystal.replay_reps(m)?;
        Ok(crystal)
    }

    fn count_e(&self, i: usize, mut b: usize) -> u32 {
        let mut k = 0;
        while let Some(p) = self.e_edges[b][i] {
            b = p;
            k += 1;
        }
        k
    }

    fn compute_string(&self, mut b: usize) -> Result<CrystalString, CrystalError> {
        let mut s = Vec::new();
        while b != 0 {
            let node = &self.nodes[b];
            let Some(&i) = self.order.vertices().iter().find(|&&i| node.eps[i] > 0) else {
                return Err(CrystalError::NotCrystal(alloc::format!("node {} at {} is not reachable by e~", b, node.nu)));
            };
            let a = node.eps[i];
            s.push((i, a));
            for _ in 0..a {
                b = self.e_edges[b][i].expect("counted");
            }
        }
        Ok(s)
    }

    /// Replace each representative by the exact replay of its string, checking
    /// that the replay reduces to the same node.
    fn replay_reps(&mut self, m: &HighestWeightModule) -> Result<(), CrystalError> {
        let weights: Vec<WeightVector> = self.by_weight.keys().cloned().collect();
        for nu in weights {
            let ids = self.by_weight[&nu].clone();
            let mut reps = Vec::new();
            for &b in &ids {
                let x = self.replay(m, &self.nodes[b].string)?.ok_or_else(|| CrystalError::NotCrystal(alloc::format!("string of node {} replays to zero", b)))?;
                let img = self.lattices[&nu].reduce(&x.coords, Place::Zero);
                if img.as_deref().and_then(unit_position) != Some(self.nodes[b].local) {
                    return Err(CrystalError::NotCrystal(alloc::format!("string of node {} replays to another class", b)));
                }
                reps.push(x);
            }
            let lat = Lattice::from_basis(reps.iter().map(|x| x.coords.clone()).collect()).expect("unitriangular change of basis");
            self.lattices.insert(nu, lat);
            for (b, x) in ids.into_iter().zip(reps) {
                self.nodes[b].vector_rep = x;
            }
        }
        Ok(())
    }

    /// `f~`-word of a string applied to the highest vector, innermost pair first.
    pub fn replay<M: WeightModule + ?Sized>(&self, m: &M, s: &[(usize, u32)]) -> Result<Option<ModuleVector>, CrystalError> {
        let mut x = ModuleVector::highest(m);
        for &(i, a) in s.iter().rev() {
            for _ in 0..a {
                match kashiwara(m, KashiwaraOp::F, i, &x)? {
                    Some(y) => x = y,
                    None => return Ok(None),
                }
            }
        }
        Ok(Some(x))
    }

    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    pub fn lambda(&self) -> &WeightVector {
        &self.lambda
    }

    pub fn height_bound(&self) -> i64 {
        self.height
    }

    pub fn order(&self) -> &VertexOrder {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[CrystalNode] {
        &self.nodes
    }

    pub fn node(&self, b: usize) -> &CrystalNode {
        &self.nodes[b]
    }

    pub fn highest(&self) -> usize {
        0
    }

    pub fn weights(&self) -> impl Iterator<Item = &WeightVector> {
        self.by_weight.keys()
    }

    pub fn nodes_at(&self, nu: &WeightVector) -> &[usize] {
        self.by_weight.get(nu).map_or(&[], Vec::as_slice)
    }

    pub fn lattice(&self, nu: &WeightVector) -> Option<&Lattice> {
        self.lattices.get(nu)
    }

    pub fn f(&self, i: usize, b: usize) -> Edge {
        self.f_edges[b][i]
    }

    pub fn e(&self, i: usize, b: usize) -> Option<usize> {
        self.e_edges[b][i]
    }

    pub fn eps(&self, i: usize, b: usize) -> u32 {
        self.nodes[b].eps[i]
    }

    pub fn phi(&self, i: usize, b: usize) -> i64 {
        self.nodes[b].phi[i]
    }

    pub fn string(&self, b: usize) -> &[(usize, u32)] {
        &self.nodes[b].string
    }

    /// Nodes of weight `nu` sorted increasingly by the string order (a total
    /// order within one weight).
    pub fn sorted_by_string(&self, nu: &WeightVector) -> Vec<usize> {
        let mut ids = self.nodes_at(nu).to_vec();
        ids.sort_by(|&a, &b| match string_order_compare(self.string(a), self.string(b), &self.order) {
            StringOrdering::Less => core::cmp::Ordering::Less,
            StringOrdering::Greater => core::cmp::Ordering::Greater,
            _ => core::cmp::Ordering::Equal,
        });
        ids
    }

    /// Node whose string equals `s`.
    pub fn find_string(&self, s: &[(usize, u32)]) -> Option<usize> {
        self.nodes.iter().position(|x| x.string == s)
    }

    /// Image of `x` in `L / vL` at its weight, as coordinates over the nodes.
    pub fn reduce(&self, x: &ModuleVector) -> Option<Vec<BigRational>> {
        self.lattices.get(&x.nu)?.reduce(&x.coords, Place::Zero)
    }

    /// Follow the `f~`-word of `s` from the highest node; `None` when it dies
    /// (or runs beyond the height bound).
    pub fn restrict_string(&self, s: &[(usize, u32)]) -> Option<usize> {
        let mut b = 0;
        for &(i, a) in s.iter().rev() {
            if i >= self.cartan.len() {
                return None;
            }
            for _ in 0..a {
                b = self.f(i, b).node()?;
            }
        }
        Some(b)
    }

    /// Lowest node within the bound along the principal direction: the unique
    /// node of maximal height when there is one.
    pub fn lowest(&self) -> Option<usize> {
        let max = self.nodes.iter().map(|x| x.nu.height()).max()?;
        let mut top = self.nodes.iter().filter(|x| x.nu.height() == max);
        let first = top.next()?;
        top.next().is_none().then_some(first.id)
    }

    /// Crystal-level axioms: inverse edges, `eps` shifts and weight steps.
    pub fn check_axioms(&self) -> Result<(), CrystalError> {
        for b in 0..self.len() {
            for i in 0..self.cartan.len() {
                if let Edge::To(t) = self.f(i, b) {
                    if self.e(i, t) != Some(b) {
                        return Err(CrystalError::NotCrystal(alloc::format!("e~_{} f~_{} differs from identity on node {}", i + 1, i + 1, b)));
                    }
                    if self.eps(i, t) != self.eps(i, b) + 1 || self.nodes[t].nu != self.nodes[b].nu.shifted(i, 1) {
                        return Err(CrystalError::NotCrystal(alloc::format!("eps or weight step failure at node {}", b)));
                    }
                }
                if let Some(s) = self.e(i, b) {
                    if self.f(i, s) != Edge::To(b) {
                        return Err(CrystalError::NotCrystal(alloc::format!("f~ e~ differs from identity on node {}", b)));
                    }
                }
                if self.nodes[b].phi[i] < 0 {
                    return Err(CrystalError::NotCrystal(alloc::format!("negative phi at node {}", b)));
                }
            }
        }
        Ok(())
    }

    /// Module-level check that `e~` inverts `f~` on representatives and that
    /// `e~` of a node without an `e`-edge vanishes mod `vL`.
    pub fn check_module_operators(&self, m: &HighestWeightModule) -> Result<(), CrystalError> {
        for node in &self.nodes {
            for i in 0..self.cartan.len() {
                let img = kashiwara(m, KashiwaraOp::E, i, &node.vector_rep)?;
                let red = match &img {
                    None => None,
                    Some(y) => {
                        let r = self.reduce(y).ok_or_else(|| CrystalError::NotCrystal(alloc::format!("e~ image of node {} leaves the lattice", node.id)))?;
                        if r.iter().all(num_traits::Zero::is_zero) {
                            None
                        } else {
                            let pos = unit_position(&r).ok_or_else(|| CrystalError::NotCrystal(alloc::format!("e~ image of node {} is not a basis element", node.id)))?;
                            Some(self.nodes_at(&y.nu)[pos])
                        }
                    }
                };
                if red != self.e(i, node.id) {
                    return Err(CrystalError::NotCrystal(alloc::format!("module e~_{} disagrees with the graph at node {}", i + 1, node.id)));
                }
            }
        }
        Ok(())
    }
}

/// Build `B(lambda')` tall enough for `s` and replay `s` in it.
pub fn crystal_restriction(
    cartan: &CartanMatrix,
    s: &[(usize, u32)],
    lambda_prime: &[i64],
    order: VertexOrder,
) -> Result<(Crystal, Option<usize>), CrystalError> {
    let h: i64 = s.iter().map(|(_, a)| *a as i64).sum();
    let m = HighestWeightModule::new(cartan, lambda_prime, h)?;
    let c = Crystal::enumerate(&m, order)?;
    let b = c.restrict_string(s);
    Ok((c, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Quiver;
    use alloc::vec;

    fn build(q: &Quiver, lambda: &[i64], h: i64) -> (HighestWeightModule, Crystal) {
        let m = HighestWeightModule::new(&q.cartan(), lambda, h).unwrap();
        let c = Crystal::enumerate(&m, VertexOrder::natural(q.len())).unwrap();
        (m, c)
    }

    fn full_checks(m: &HighestWeightModule, c: &Crystal) {
        c.check_axioms().unwrap();
        c.check_module_operators(m).unwrap();
        for nu in m.weights() {
            assert_eq!(c.nodes_at(&nu).len(), m.dim(&nu), "count at {}", nu);
        }
        for node in c.nodes() {
            let x = c.replay(m, &node.string).unwrap().unwrap();
            assert_eq!(x, node.vector_rep);
            let mut total = WeightVector::zero(m.rank());
            for (i, a) in &node.string {
                total = total.shifted(*i, *a as i64);
            }
            assert_eq!(total, node.nu);
        }
        // the string order is total on each weight
        for nu in c.weights() {
            let ids = c.nodes_at(nu);
            for &a in ids {
                for &b in ids {
                    let o = string_order_compare(c.string(a), c.string(b), c.order());
                    assert_eq!(o == StringOrdering::Equal, a == b);
                    assert_ne!(o, StringOrdering::Incomparable);
                }
            }
        }
    }

    #[test]
    fn sl2() {
        let (m, c) = build(&Quiver::linear(1), &[2], 4);
        assert_eq!(c.len(), 3);
        full_checks(&m, &c);
        let low = c.lowest().unwrap();
        assert_eq!(c.string(low), &[(0, 2)]);
        assert!(c.string(0).is_empty());
        assert_eq!(c.f(0, low), Edge::Null);
        assert_eq!(c.e(0, 0), None);
        let (_, c0) = build(&Quiver::linear(1), &[0], 2);
        assert_eq!(c0.len(), 1);
    }

    #[test]
    fn a2_fundamental() {
        let (m, c) = build(&Quiver::linear(2), &[1, 0], 3);
        assert_eq!(c.len(), 3);
        full_checks(&m, &c);
        let low = c.lowest().unwrap();
        assert_eq!(c.string(low), &[(1, 1), (0, 1)]);
        assert_eq!(c.eps(0, low), 0);
        assert_eq!(c.eps(1, low), 1);
    }

    #[test]
    fn larger_modules() {
        let (m, c) = build(&Quiver::linear(2), &[1, 1], 4);
        assert_eq!(c.len(), 8);
        full_checks(&m, &c);
        let (m, c) = build(&Quiver::linear(2), &[2, 1], 5);
        full_checks(&m, &c);
        let (m, c) = build(&Quiver::linear(3), &[1, 0, 1], 4);
        full_checks(&m, &c);
        let (m, c) = build(&Quiver::multi_edge(2), &[1, 1], 4);
        full_checks(&m, &c);
        let m = HighestWeightModule::new(&Quiver::linear(2).cartan(), &[1, 1], 4).unwrap();
        let rev = Crystal::enumerate(&m, VertexOrder::new(vec![1, 0]).unwrap()).unwrap();
        full_checks(&m, &rev);
    }

    #[test]
    fn restriction() {
        let sl2 = Quiver::linear(1).cartan();
        let (_, b) = crystal_restriction(&sl2, &[(0, 2)], &[1], VertexOrder::natural(1)).unwrap();
        assert_eq!(b, None);
        let (c, b) = crystal_restriction(&sl2, &[(0, 1)], &[1], VertexOrder::natural(1)).unwrap();
        assert_eq!(b, c.lowest());
        let (_, b) = crystal_restriction(&sl2, &[], &[3], VertexOrder::natural(1)).unwrap();
        assert_eq!(b, Some(0));
    }
}
