//! Exact weight modules: irreducible highest-weight modules realized on
//! lowering words modulo the radical of the contravariant form, and their
//! tensor products.

mod form;
mod highest;
mod quasi_r;
mod relations;
mod tensor;
mod word;

use alloc::borrow::Cow;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

pub use form::{contravariant_pair, ContravariantForm};
pub use highest::{HighestWeightModule, WeightSpace};
pub use quasi_r::{quasi_r_matrix, QuasiR, QuasiRError, ThetaDirection};
pub use relations::{verify_relations, RelationCheck, RelationKind, RelationReport};
pub use tensor::{TensorBlock, TensorModule};
pub use word::{lower_raise_commute, words_of_content, LoweringWord};

use crate::exactalg::{qfactorial, ExactError, Laurent, RatMatrix, RationalScalar};
use crate::quiver::{CartanMatrix, WeightVector};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ModuleError {
    #[error("weight {nu} lies beyond the height bound {height}")]
    HeightExceeded { nu: WeightVector, height: i64 },
    #[error("weight mismatch: expected {expected}, got {got}")]
    WeightMismatch { expected: WeightVector, got: WeightVector },
    #[error("highest weight is not dominant")]
    NotDominant,
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

/// A module graded by lowering weights `nu >= 0` (weight `lambda - nu`),
/// with explicit matrices for `E_i` and `F_i` between weight spaces.
///
/// Weights with a negative entry are zero spaces; weights of height beyond
/// the bound are not available.
pub trait WeightModule {
    fn cartan(&self) -> &CartanMatrix;

    /// Pairings `<i, lambda>` of the highest weight.
    fn highest_weight(&self) -> &WeightVector;

    fn height_bound(&self) -> i64;

    fn dim(&self, nu: &WeightVector) -> usize;

    /// `F_i` from `nu` to `nu + alpha_i`; columns are images of basis vectors.
    fn f_matrix(&self, i: usize, nu: &WeightVector) -> Result<Cow<'_, RatMatrix>, ModuleError>;

    /// `E_i` from `nu` to `nu - alpha_i`.
    fn e_matrix(&self, i: usize, nu: &WeightVector) -> Result<Cow<'_, RatMatrix>, ModuleError>;

    fn rank(&self) -> usize {
        self.cartan().len()
    }

    /// Whether `F_i^{<i,lambda>+1} v_lambda = 0` when that weight lies beyond
    /// the bound; `None` if the module cannot decide it.
    fn integrability_beyond_bound(&self, _i: usize) -> Option<bool> {
        None
    }

    /// All lowering weights within the bound, by height, then with larger
    /// leading entries first.
    fn weights(&self) -> Vec<WeightVector> {
        weights_up_to(self.rank(), self.height_bound())
    }

    fn check_in_bound(&self, nu: &WeightVector) -> Result<(), ModuleError> {
        if nu.height() > self.height_bound() {
            return Err(ModuleError::HeightExceeded { nu: nu.clone(), height: self.height_bound() });
        }
        Ok(())
    }

    /// `<i, lambda - nu>`.
    fn pairing(&self, i: usize, nu: &WeightVector) -> i64 {
        self.cartan().weight_pairings(self.highest_weight(), nu)[i]
    }
}

/// Nonnegative integer vectors of length `n` and height at most `h`.
pub fn weights_up_to(n: usize, h: i64) -> Vec<WeightVector> {
    let mut out = Vec::new();
    for total in 0..=h.max(-1) {
        compositions(n, total, &mut Vec::new(), &mut out);
    }
    out
}

fn compositions(n: usize, total: i64, prefix: &mut Vec<i64>, out: &mut Vec<WeightVector>) {
    if prefix.len() + 1 == n {
        prefix.push(total);
        out.push(WeightVector(prefix.clone()));
        prefix.pop();
        return;
    }
    if n == 0 {
        return;
    }
    for k in (0..=total).rev() {
        prefix.push(k);
        compositions(n, total - k, prefix, out);
        prefix.pop();
    }
}

/// Generators of the quantized enveloping algebra acting on weight modules.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    /// `E_i^{(r)}`
    E(usize, u32),
    /// `F_i^{(r)}`
    F(usize, u32),
    /// `K_mu`, `mu` in the root lattice
    K(WeightVector),
}

impl Generator {
    /// Lowering weight reached from `nu`.
    pub fn target(&self, nu: &WeightVector) -> WeightVector {
        match self {
            Generator::E(i, r) => nu.shifted(*i, -(*r as i64)),
            Generator::F(i, r) => nu.shifted(*i, *r as i64),
            Generator::K(_) => nu.clone(),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::E(i, 1) => write!(f, "E{}", i + 1),
            Generator::F(i, 1) => write!(f, "F{}", i + 1),
            Generator::E(i, r) => write!(f, "E{}^({})", i + 1, r),
            Generator::F(i, r) => write!(f, "F{}^({})", i + 1, r),
            Generator::K(mu) => write!(f, "K{}", mu),
        }
    }
}

/// `K_mu` on the space `nu`: the scalar `v^{<mu, lambda - nu>}`.
pub fn k_matrix<M: WeightModule + ?Sized>(m: &M, mu: &[i64], nu: &WeightVector) -> RatMatrix {
    let p = m.cartan().weight_pairings(m.highest_weight(), nu);
    let e: i64 = mu.iter().zip(p.iter()).map(|(a, b)| a * b).sum();
    let d = m.dim(nu);
    RatMatrix::diagonal(vec![RationalScalar::from(Laurent::v_pow(e)); d])
}

/// Matrix of a generator from the space `nu` to its target space.
pub fn operator_matrix<M: WeightModule + ?Sized>(m: &M, g: &Generator, nu: &WeightVector) -> Result<RatMatrix, ModuleError> {
    match g {
        Generator::K(mu) => {
            if mu.len() != m.rank() {
                return Err(ModuleError::LengthMismatch { expected: m.rank(), got: mu.len() });
            }
            Ok(k_matrix(m, mu, nu))
        }
        Generator::E(i, r) | Generator::F(i, r) => {
            let raise = matches!(g, Generator::E(..));
            let mut cur = nu.clone();
            let mut acc = RatMatrix::identity(m.dim(nu));
            for _ in 0..*r {
                let step = if raise { m.e_matrix(*i, &cur)? } else { m.f_matrix(*i, &cur)? };
                acc = step.mul(&acc);
                cur = cur.shifted(*i, if raise { -1 } else { 1 });
            }
            if *r > 1 {
                let f = RationalScalar::from(qfactorial(*r)).recip()?;
                acc = acc.scale(&f);
            }
            Ok(acc)
        }
    }
}

/// Matrix of a product of generators (rightmost acts first) starting at `nu`.
pub fn word_matrix<M: WeightModule + ?Sized>(m: &M, gens: &[Generator], nu: &WeightVector) -> Result<RatMatrix, ModuleError> {
    let mut cur = nu.clone();
    let mut acc = RatMatrix::identity(m.dim(nu));
    for g in gens.iter().rev() {
        acc = operator_matrix(m, g, &cur)?.mul(&acc);
        cur = g.target(&cur);
    }
    Ok(acc)
}

/// An element of a single weight space, in the module's basis of that space.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModuleVector {
    pub nu: WeightVector,
    pub coords: Vec<RationalScalar>,
}

impl ModuleVector {
    pub fn zero(nu: WeightVector, dim: usize) -> Self {
        ModuleVector { nu, coords: vec![RationalScalar::zero(); dim] }
    }

    pub fn basis(nu: WeightVector, dim: usize, k: usize) -> Self {
        let mut v = Self::zero(nu, dim);
        v.coords[k] = RationalScalar::one();
        v
    }

    /// The highest weight vector.
    pub fn highest<M: WeightModule + ?Sized>(m: &M) -> Self {
        Self::basis(WeightVector::zero(m.rank()), 1, 0)
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(RationalScalar::is_zero)
    }

    fn same_space(&self, o: &ModuleVector) {
        assert!(self.nu == o.nu && self.dim() == o.dim(), "vectors live in different weight spaces");
    }

    pub fn add(&self, o: &ModuleVector) -> ModuleVector {
        self.same_space(o);
        ModuleVector { nu: self.nu.clone(), coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &ModuleVector) -> ModuleVector {
        self.same_space(o);
        ModuleVector { nu: self.nu.clone(), coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, c: &RationalScalar) -> ModuleVector {
        ModuleVector { nu: self.nu.clone(), coords: self.coords.iter().map(|a| a * c).collect() }
    }

    /// Coordinatewise bar; on a single module with its word basis this is the
    /// bar involution of the module.
    pub fn bar_coords(&self) -> ModuleVector {
        ModuleVector { nu: self.nu.clone(), coords: self.coords.iter().map(RationalScalar::bar).collect() }
    }

    pub fn is_laurent(&self) -> bool {
        self.coords.iter().all(RationalScalar::is_laurent)
    }
}

impl fmt::Debug for ModuleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModuleVector{} [", self.nu)?;
        for (k, c) in self.coords.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, "]")
    }
}

pub fn apply_generator<M: WeightModule + ?Sized>(m: &M, g: &Generator, x: &ModuleVector) -> Result<ModuleVector, ModuleError> {
    let d = m.dim(&x.nu);
    if d != x.dim() {
        return Err(ModuleError::LengthMismatch { expected: d, got: x.dim() });
    }
    let mat = operator_matrix(m, g, &x.nu)?;
    Ok(ModuleVector { nu: g.target(&x.nu), coords: mat.mul_vec(&x.coords) })
}

/// Apply a product of generators, rightmost first.
pub fn apply_word<M: WeightModule + ?Sized>(m: &M, gens: &[Generator], x: &ModuleVector) -> Result<ModuleVector, ModuleError> {
    let mut cur = x.clone();
    for g in gens.iter().rev() {
        cur = apply_generator(m, g, &cur)?;
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_are_graded() {
        let w = weights_up_to(2, 2);
        let v: Vec<Vec<i64>> = w.into_iter().map(|x| x.0).collect();
        assert_eq!(v, vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![2, 0], vec![1, 1], vec![0, 2]]);
    }
}
