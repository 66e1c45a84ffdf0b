use alloc::string::String;
use alloc::vec::Vec;

use super::{BasisError, MonomialBasis};
use crate::crystal::{unit_position, Crystal};
use crate::exactalg::{inverse, Laurent, RatMatrix, RationalScalar};
use crate::quiver::WeightVector;
use crate::repmodule::ModuleVector;

/// Canonical vectors of one weight space, in the order of the monomial basis.
#[derive(Clone, Debug)]
pub struct CanonicalBasis {
    pub nu: WeightVector,
    pub nodes: Vec<usize>,
    pub vectors: Vec<ModuleVector>,
    /// nodes in the order their vectors were computed
    pub processing: Vec<usize>,
    /// `G(b) = sign * m_b + ...`; the sign absorbed into the monomial
    pub signs: Vec<i64>,
}

enum Attempt {
    Done(ModuleVector, i64),
    Defer(String),
}

/// `G(b)` for every node of weight `nu`: the bar-invariant vector congruent
/// to the node mod `vL`, obtained from `m_b` by subtracting bar-invariant
/// multiples of canonical vectors already found.
///
/// Nodes are tried from the largest in the string order down; a node whose
/// expansion needs a canonical vector not yet computed is deferred.
pub fn canonical_basis(c: &Crystal, mono: &MonomialBasis) -> Result<CanonicalBasis, BasisError> {
    let nu = &mono.nu;
    let d = mono.nodes.len();
    let lattice = c.lattice(nu);
    let bound = 2 * d as i64 + nu.height();
    let mut found: Vec<Option<(ModuleVector, i64)>> = alloc::vec![None; d];
    let mut processing = Vec::new();
    let local = |b: usize| c.node(b).local;
    // lattice basis in monomial order
    let reps: Vec<ModuleVector> = mono.nodes.iter().map(|&b| c.node(b).vector_rep.clone()).collect();
    let mut pending: Vec<usize> = (0..d).rev().collect();
    while !pending.is_empty() {
        let mut progress = None;
        let mut last_reason = String::new();
        for (slot, &k) in pending.iter().enumerate() {
            let cols: Vec<Vec<RationalScalar>> =
                (0..d).map(|j| found[j].as_ref().map_or(&reps[j], |g| &g.0).coords.clone()).collect();
            let inv = inverse(&RatMatrix::from_columns(d, &cols)).ok_or(BasisError::NotInvertible)?;
            match attempt(&inv, &found, k, &mono.vectors[k], bound)? {
                Attempt::Done(g, sign) => {
                    progress = Some((slot, k, g, sign));
                    break;
                }
                Attempt::Defer(r) => last_reason = r,
            }
        }
        let Some((slot, k, g, sign)) = progress else {
            return Err(BasisError::NonConvergence {
                lambda: c.lambda().clone(),
                nu: nu.clone(),
                node: mono.nodes[pending[0]],
                reason: last_reason,
            });
        };
        pending.remove(slot);
        processing.push(mono.nodes[k]);
        found[k] = Some((g, sign));
    }
    let mut vectors = Vec::with_capacity(d);
    let mut signs = Vec::with_capacity(d);
    for (k, f) in found.into_iter().enumerate() {
        let (g, sign) = f.expect("all processed");
        let b = mono.nodes[k];
        if !g.coords.iter().all(RationalScalar::is_bar_invariant) {
            return Err(BasisError::Check { node: b, reason: "not bar-invariant".into() });
        }
        let red = lattice.and_then(|l| l.reduce(&g.coords, crate::crystal::Place::Zero));
        if red.as_deref().and_then(unit_position) != Some(local(b)) {
            return Err(BasisError::Check { node: b, reason: "not congruent to its node mod vL".into() });
        }
        vectors.push(g);
        signs.push(sign);
    }
    Ok(CanonicalBasis { nu: nu.clone(), nodes: mono.nodes.clone(), vectors, processing, signs })
}

/// Coordinates of `m_k` over `{G(j) done} u {x_j pending}` decide whether
/// `G(k)` can be finished now.
fn attempt(
    inv: &RatMatrix,
    found: &[Option<(ModuleVector, i64)>],
    k: usize,
    mk: &ModuleVector,
    bound: i64,
) -> Result<Attempt, BasisError> {
    let w = inv.mul_vec(&mk.coords);
    for (j, wj) in w.iter().enumerate() {
        if let Some(v) = wj.valuation() {
            if -v > bound {
                return Ok(Attempt::Defer(alloc::format!("pole of order {} beyond the degree bound {}", -v, bound)));
            }
        }
        if found[j].is_none() && j != k && wj.valuation().is_some_and(|v| v <= 0) {
            return Ok(Attempt::Defer(alloc::format!("needs the canonical vector at position {}", j)));
        }
    }
    // the coefficient on x_k must be a unit congruent to +-1
    let wk = &w[k];
    let sign = match wk.eval_at_zero() {
        Some(x) if x == num_rational::BigRational::from_integer(1.into()) => 1,
        Some(x) if x == num_rational::BigRational::from_integer((-1).into()) => -1,
        _ => return Ok(Attempt::Defer(alloc::format!("coefficient on its own node is {}", wk))),
    };
    let s = RationalScalar::from(sign);
    let mut g = mk.scale(&s);
    for (j, wj) in w.iter().enumerate() {
        let Some((gj, _)) = &found[j] else { continue };
        let p: Laurent = (&s * wj).nonpositive_series_part()?.symmetric_correction();
        if !p.is_zero() {
            g = g.sub(&gj.scale(&RationalScalar::from(p)));
        }
    }
    Ok(Attempt::Done(g, sign))
}

#[cfg(test)]
mod tests {
    use super::super::{monomial_basis, transition_matrix, Triangularity};
    use super::*;
    use crate::crystal::VertexOrder;
    use crate::quiver::Quiver;
    use crate::repmodule::{HighestWeightModule, WeightModule};
    use alloc::vec;

    fn all(q: &Quiver, lambda: &[i64], h: i64) -> Vec<(MonomialBasis, CanonicalBasis)> {
        let m = HighestWeightModule::new(&q.cartan(), lambda, h).unwrap();
        let c = Crystal::enumerate(&m, VertexOrder::natural(q.len())).unwrap();
        m.weights()
            .into_iter()
            .filter(|nu| m.dim(nu) > 0)
            .map(|nu| {
                let mb = monomial_basis(&m, &c, &nu).unwrap();
                let cb = canonical_basis(&c, &mb).unwrap();
                (mb, cb)
            })
            .collect()
    }

    #[test]
    fn sl2_canonical_is_monomial() {
        for (mb, cb) in all(&Quiver::linear(1), &[3], 4) {
            assert_eq!(mb.vectors, cb.vectors);
        }
    }

    #[test]
    fn a2_rho_zero_weight() {
        let spaces = all(&Quiver::linear(2), &[1, 1], 4);
        let (mb, cb) = spaces.iter().find(|(mb, _)| mb.nu == WeightVector(vec![1, 1])).unwrap();
        assert_eq!(cb.vectors.len(), 2);
        let t = transition_matrix(&cb.vectors, &mb.vectors).unwrap();
        assert!(t.is_laurent());
        assert_eq!(cb.vectors[0].nu, mb.nu);
    }

    #[test]
    fn unitriangular_against_monomials() {
        for (q, l, h) in [(Quiver::linear(2), vec![2, 1], 5), (Quiver::linear(3), vec![1, 0, 1], 4), (Quiver::multi_edge(2), vec![1, 1], 5)] {
            for (mb, cb) in all(&q, &l, h) {
                let t = transition_matrix(&cb.vectors, &mb.vectors).unwrap();
                assert!(t.is_unitriangular() && t.is_laurent(), "{:?} at {}", l, mb.nu);
                assert!(matches!(t.triangularity(), Triangularity::Upper | Triangularity::Diagonal));
                assert!(cb.signs.iter().all(|s| *s == 1));
            }
        }
    }

    #[test]
    fn reversed_vertex_order() {
        let m = HighestWeightModule::new(&Quiver::linear(2).cartan(), &[2, 1], 5).unwrap();
        let c = Crystal::enumerate(&m, VertexOrder::new(vec![1, 0]).unwrap()).unwrap();
        for nu in m.weights().into_iter().filter(|nu| m.dim(nu) > 0) {
            let mb = monomial_basis(&m, &c, &nu).unwrap();
            let cb = canonical_basis(&c, &mb).unwrap();
            assert!(transition_matrix(&cb.vectors, &mb.vectors).unwrap().is_unitriangular());
        }
    }
}
