//! Monomial and canonical bases of weight spaces, transition matrices,
//! `psi`-twisted specializations at `v = -1`, and the tensor shadow of `Delta`.

mod canonical;
mod transition;
mod twisted;

pub use canonical::{canonical_basis, CanonicalBasis};
pub use transition::{transition_matrix, Triangularity, TransitionMatrix};
pub use twisted::{
    monomial_a_basis, tensor_a_basis, twisted_action, verify_twisted_relations, TwistedCheck, TwistedKind, TwistedReport,
};

use alloc::string::String;
use alloc::vec::Vec;

use crate::crystal::{Crystal, CrystalError};
use crate::exactalg::{determinant, ExactError, RatMatrix, RationalScalar};
use crate::quiver::{QuiverError, WeightVector};
use crate::repmodule::{apply_generator, Generator, HighestWeightModule, LoweringWord, ModuleError, ModuleVector, TensorModule, WeightModule};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum BasisError {
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Crystal(#[from] CrystalError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("monomial vectors at {nu} are linearly dependent")]
    Singular { nu: WeightVector },
    #[error("canonical basis of L({lambda}) at {nu} did not converge for node {node}: {reason}")]
    NonConvergence { lambda: WeightVector, nu: WeightVector, node: usize, reason: String },
    #[error("canonical vector for node {node} fails its check: {reason}")]
    Check { node: usize, reason: String },
    #[error("basis matrix is not invertible")]
    NotInvertible,
    #[error("operator matrix at {nu} is not integral in the chosen basis")]
    NotIntegral { nu: WeightVector },
}

/// `F_{i_1}^{(a_1)} ... F_{i_l}^{(a_l)} v_lambda` for the string
/// `((i_1, a_1), ..., (i_l, a_l))`, innermost pair applied first.
pub fn monomial_vector<M: WeightModule + ?Sized>(m: &M, s: &[(usize, u32)]) -> Result<ModuleVector, ModuleError> {
    let mut x = ModuleVector::highest(m);
    for &(i, a) in s.iter().rev() {
        x = apply_generator(m, &Generator::F(i, a), &x)?;
    }
    Ok(x)
}

/// Monomial vectors of one weight space, nodes sorted increasingly by the
/// string order.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    pub nu: WeightVector,
    pub nodes: Vec<usize>,
    pub vectors: Vec<ModuleVector>,
    /// nonsingularity certificate
    pub determinant: RationalScalar,
}

impl MonomialBasis {
    /// Coordinate matrix with one column per monomial.
    pub fn matrix(&self) -> RatMatrix {
        let cols: Vec<_> = self.vectors.iter().map(|x| x.coords.clone()).collect();
        RatMatrix::from_columns(self.nodes.len(), &cols)
    }
}

pub fn monomial_basis(m: &HighestWeightModule, c: &Crystal, nu: &WeightVector) -> Result<MonomialBasis, BasisError> {
    let nodes = c.sorted_by_string(nu);
    if nodes.len() != m.dim(nu) {
        return Err(CrystalError::ClassCount { nu: nu.clone(), count: nodes.len(), dim: m.dim(nu) }.into());
    }
    let vectors = nodes.iter().map(|&b| monomial_vector(m, c.string(b))).collect::<Result<Vec<_>, _>>()?;
    let mut mb = MonomialBasis { nu: nu.clone(), nodes, vectors, determinant: RationalScalar::one() };
    if !mb.nodes.is_empty() {
        mb.determinant = determinant(&mb.matrix());
        if mb.determinant.is_zero() {
            return Err(BasisError::Singular { nu: nu.clone() });
        }
    }
    Ok(mb)
}

/// `Delta(F_{word1})` applied to `(F_{word2} v_{lambda2}) (x) v_{lambda1}`.
pub fn tensor_monomial_shadow(t: &TensorModule, word1: &LoweringWord, word2: &LoweringWord) -> Result<ModuleVector, ModuleError> {
    let x2 = t.first().word_vector(word2)?;
    let x1 = ModuleVector::highest(t.second());
    let mut x = t.pure_tensor(&x2, &x1)?;
    for &i in word1.letters().iter().rev() {
        x = apply_generator(t, &Generator::F(i, 1), &x)?;
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystal::VertexOrder;
    use crate::exactalg::Laurent;
    use crate::quiver::Quiver;
    use alloc::vec;

    #[test]
    fn monomial_examples() {
        let m = HighestWeightModule::new(&Quiver::linear(1).cartan(), &[2], 3).unwrap();
        let c = Crystal::enumerate(&m, VertexOrder::natural(1)).unwrap();
        let low = c.lowest().unwrap();
        let top = ModuleVector::highest(&m);
        assert_eq!(monomial_vector(&m, c.string(low)).unwrap(), apply_generator(&m, &Generator::F(0, 2), &top).unwrap());
        assert_eq!(monomial_vector(&m, &[]).unwrap(), top);
        for nu in m.weights() {
            assert_eq!(monomial_basis(&m, &c, &nu).unwrap().vectors.len(), m.dim(&nu));
        }
        let a2 = HighestWeightModule::new(&Quiver::linear(2).cartan(), &[1, 0], 3).unwrap();
        let c = Crystal::enumerate(&a2, VertexOrder::natural(2)).unwrap();
        let low = c.lowest().unwrap();
        let x = monomial_vector(&a2, c.string(low)).unwrap();
        assert_eq!(x, a2.word_vector(&LoweringWord(vec![1, 0])).unwrap());
        assert!(!x.is_zero());
        let rho = HighestWeightModule::new(&Quiver::linear(2).cartan(), &[1, 1], 4).unwrap();
        let c = Crystal::enumerate(&rho, VertexOrder::natural(2)).unwrap();
        let mb = monomial_basis(&rho, &c, &WeightVector(vec![1, 1])).unwrap();
        assert_eq!(mb.vectors.len(), 2);
        assert!(!mb.determinant.is_zero());
        let empty = monomial_basis(&rho, &c, &WeightVector(vec![3, 0])).unwrap();
        assert!(empty.nodes.is_empty());
    }

    #[test]
    fn shadow() {
        let t = TensorModule::new(&Quiver::linear(1).cartan(), &[1], &[1], 2).unwrap();
        let e = LoweringWord(vec![]);
        let f = LoweringWord(vec![0]);
        let x = tensor_monomial_shadow(&t, &e, &f).unwrap();
        let fx = t.first().word_vector(&f).unwrap();
        assert_eq!(x, t.pure_tensor(&fx, &ModuleVector::highest(t.second())).unwrap());
        let top = t.pure_tensor(&ModuleVector::highest(t.first()), &ModuleVector::highest(t.second())).unwrap();
        assert_eq!(tensor_monomial_shadow(&t, &e, &e).unwrap(), top);
        // Delta(F) = F (x) K_{-1} + 1 (x) F: (F v) (x) v scaled by v^-1, plus v (x) F v
        let y = tensor_monomial_shadow(&t, &f, &e).unwrap();
        let a = t.pure_tensor(&fx, &ModuleVector::highest(t.second())).unwrap();
        let b = t.pure_tensor(&ModuleVector::highest(t.first()), &t.second().word_vector(&f).unwrap()).unwrap();
        let vinv = RationalScalar::from(Laurent::v_pow(-1));
        assert_eq!(y, a.scale(&vinv).add(&b));
    }
}
