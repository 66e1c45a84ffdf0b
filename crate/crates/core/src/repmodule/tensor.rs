use alloc::borrow::Cow;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::highest::HighestWeightModule;
use super::{weights_up_to, ModuleError, ModuleVector, WeightModule};
use crate::exactalg::{Laurent, RatMatrix, RationalScalar};
use crate::quiver::{CartanMatrix, WeightVector};

/// The part of a tensor weight space coming from factor weights `(nu2, nu1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorBlock {
    pub nu2: WeightVector,
    pub nu1: WeightVector,
    pub offset: usize,
    pub dim2: usize,
    pub dim1: usize,
}

impl TensorBlock {
    pub fn index(&self, b2: usize, b1: usize) -> usize {
        self.offset + b2 * self.dim1 + b1
    }
}

#[derive(Clone, Debug, Default)]
struct TensorSpace {
    blocks: Vec<TensorBlock>,
    dim: usize,
}

impl TensorSpace {
    fn block(&self, nu2: &WeightVector) -> Option<&TensorBlock> {
        self.blocks.iter().find(|b| &b.nu2 == nu2)
    }
}

/// `L(lambda2) (x) L(lambda1)` with
/// `Delta(E_i) = E_i (x) 1 + K_i (x) E_i` and `Delta(F_i) = F_i (x) K_{-i} + 1 (x) F_i`.
/// Basis: pairs `(b2, b1)` of factor basis vectors, grouped by `(nu2, nu1)`.
#[derive(Clone, Debug)]
pub struct TensorModule {
    first: HighestWeightModule,
    second: HighestWeightModule,
    lambda: WeightVector,
    height: i64,
    spaces: BTreeMap<WeightVector, TensorSpace>,
    f_mats: BTreeMap<(usize, WeightVector), RatMatrix>,
    e_mats: BTreeMap<(usize, WeightVector), RatMatrix>,
}

fn vpow(e: i64) -> RationalScalar {
    RationalScalar::from(Laurent::v_pow(e))
}

impl TensorModule {
    /// `first` is `L(lambda2)` (the left factor), `second` is `L(lambda1)`.
    pub fn new(cartan: &CartanMatrix, lambda2: &[i64], lambda1: &[i64], height: i64) -> Result<Self, ModuleError> {
        let first = HighestWeightModule::new(cartan, lambda2, height)?;
        let second = HighestWeightModule::new(cartan, lambda1, height)?;
        Self::from_factors(first, second, height)
    }

    pub fn from_factors(first: HighestWeightModule, second: HighestWeightModule, height: i64) -> Result<Self, ModuleError> {
        let n = first.rank();
        let height = height.min(first.height_bound()).min(second.height_bound());
        let lambda = first.highest_weight().plus(second.highest_weight());
        let mut spaces = BTreeMap::new();
        let all = weights_up_to(n, height);
        for mu in &all {
            let mut sp = TensorSpace::default();
            for nu2 in &all {
                let nu1 = mu.minus(nu2);
                if !nu1.is_nonnegative() {
                    continue;
                }
                let (dim2, dim1) = (first.dim(nu2), second.dim(&nu1));
                if dim2 * dim1 == 0 {
                    continue;
                }
                sp.blocks.push(TensorBlock { nu2: nu2.clone(), nu1, offset: sp.dim, dim2, dim1 });
                sp.dim += dim2 * dim1;
            }
            spaces.insert(mu.clone(), sp);
        }
        let mut t = TensorModule { first, second, lambda, height, spaces, f_mats: BTreeMap::new(), e_mats: BTreeMap::new() };
        for mu in &all {
            for i in 0..n {
                if mu.height() < height {
                    let m = t.build_f(i, mu)?;
                    t.f_mats.insert((i, mu.clone()), m);
                }
                if mu[i] > 0 {
                    let m = t.build_e(i, mu)?;
                    t.e_mats.insert((i, mu.clone()), m);
                }
            }
        }
        Ok(t)
    }

    fn build_f(&self, i: usize, mu: &WeightVector) -> Result<RatMatrix, ModuleError> {
        let src = &self.spaces[mu];
        let tgt = &self.spaces[&mu.shifted(i, 1)];
        let mut m = RatMatrix::zeros(tgt.dim, src.dim);
        for blk in &src.blocks {
            // F (x) K_{-i}
            let k = vpow(-self.second.pairing(i, &blk.nu1));
            let f2 = self.first.f_matrix(i, &blk.nu2)?;
            if let Some(tb) = tgt.block(&blk.nu2.shifted(i, 1)) {
                for b2 in 0..blk.dim2 {
                    for r2 in 0..tb.dim2 {
                        let c = &f2[(r2, b2)];
                        if c.is_zero() {
                            continue;
                        }
                        let c = c * &k;
                        for b1 in 0..blk.dim1 {
                            m[(tb.index(r2, b1), blk.index(b2, b1))] = &m[(tb.index(r2, b1), blk.index(b2, b1))] + &c;
                        }
                    }
                }
            }
            // 1 (x) F
            let f1 = self.second.f_matrix(i, &blk.nu1)?;
            if let Some(tb) = tgt.block(&blk.nu2) {
                for b1 in 0..blk.dim1 {
                    for r1 in 0..tb.dim1 {
                        let c = &f1[(r1, b1)];
                        if c.is_zero() {
                            continue;
                        }
                        for b2 in 0..blk.dim2 {
                            m[(tb.index(b2, r1), blk.index(b2, b1))] = &m[(tb.index(b2, r1), blk.index(b2, b1))] + c;
                        }
                    }
                }
            }
        }
        Ok(m)
    }

    fn build_e(&self, i: usize, mu: &WeightVector) -> Result<RatMatrix, ModuleError> {
        let src = &self.spaces[mu];
        let tgt = &self.spaces[&mu.shifted(i, -1)];
        let mut m = RatMatrix::zeros(tgt.dim, src.dim);
        for blk in &src.blocks {
            // E (x) 1
            if blk.nu2[i] > 0 {
                let e2 = self.first.e_matrix(i, &blk.nu2)?;
                if let Some(tb) = tgt.block(&blk.nu2.shifted(i, -1)) {
                    for b2 in 0..blk.dim2 {
                        for r2 in 0..tb.dim2 {
                            let c = &e2[(r2, b2)];
                            if c.is_zero() {
                                continue;
                            }
                            for b1 in 0..blk.dim1 {
                                m[(tb.index(r2, b1), blk.index(b2, b1))] = &m[(tb.index(r2, b1), blk.index(b2, b1))] + c;
                            }
                        }
                    }
                }
            }
            // K_i (x) E
            if blk.nu1[i] > 0 {
                let k = vpow(self.first.pairing(i, &blk.nu2));
                let e1 = self.second.e_matrix(i, &blk.nu1)?;
                if let Some(tb) = tgt.block(&blk.nu2) {
                    for b1 in 0..blk.dim1 {
                        for r1 in 0..tb.dim1 {
                            let c = &e1[(r1, b1)];
                            if c.is_zero() {
                                continue;
                            }
                            let c = c * &k;
                            for b2 in 0..blk.dim2 {
                                m[(tb.index(b2, r1), blk.index(b2, b1))] = &m[(tb.index(b2, r1), blk.index(b2, b1))] + &c;
                            }
                        }
                    }
                }
            }
        }
        Ok(m)
    }

    /// `L(lambda2)`, the left factor.
    pub fn first(&self) -> &HighestWeightModule {
        &self.first
    }

    /// `L(lambda1)`, the right factor.
    pub fn second(&self) -> &HighestWeightModule {
        &self.second
    }

    pub fn blocks(&self, mu: &WeightVector) -> &[TensorBlock] {
        self.spaces.get(mu).map_or(&[], |s| s.blocks.as_slice())
    }

    /// Index of the pair `(b2 at nu2, b1 at nu1)` in the space `nu2 + nu1`.
    pub fn pair_index(&self, nu2: &WeightVector, b2: usize, nu1: &WeightVector, b1: usize) -> Option<usize> {
        let mu = nu2.plus(nu1);
        let blk = self.spaces.get(&mu)?.block(nu2)?;
        (b2 < blk.dim2 && b1 < blk.dim1).then(|| blk.index(b2, b1))
    }

    /// `x2 (x) x1` for factor vectors.
    pub fn pure_tensor(&self, x2: &ModuleVector, x1: &ModuleVector) -> Result<ModuleVector, ModuleError> {
        let mu = x2.nu.plus(&x1.nu);
        self.check_in_bound(&mu)?;
        let mut out = ModuleVector::zero(mu.clone(), self.dim(&mu));
        if let Some(blk) = self.spaces[&mu].block(&x2.nu) {
            for (b2, c2) in x2.coords.iter().enumerate() {
                for (b1, c1) in x1.coords.iter().enumerate() {
                    out.coords[blk.index(b2, b1)] = c2 * c1;
                }
            }
        }
        Ok(out)
    }

    /// Factor vectors `(x2, x1)` of each nonzero block component of `x`:
    /// the pairs of coordinate matrices, one per block.
    pub fn components(&self, x: &ModuleVector) -> Vec<(&TensorBlock, RatMatrix)> {
        self.blocks(&x.nu)
            .iter()
            .filter_map(|blk| {
                let mut m = RatMatrix::zeros(blk.dim2, blk.dim1);
                let mut nonzero = false;
                for b2 in 0..blk.dim2 {
                    for b1 in 0..blk.dim1 {
                        let c = &x.coords[blk.index(b2, b1)];
                        if !c.is_zero() {
                            nonzero = true;
                            m[(b2, b1)] = c.clone();
                        }
                    }
                }
                nonzero.then_some((blk, m))
            })
            .collect()
    }
}

impl WeightModule for TensorModule {
    fn cartan(&self) -> &CartanMatrix {
        self.first.cartan()
    }

    fn highest_weight(&self) -> &WeightVector {
        &self.lambda
    }

    fn height_bound(&self) -> i64 {
        self.height
    }

    fn dim(&self, nu: &WeightVector) -> usize {
        self.spaces.get(nu).map_or(0, |s| s.dim)
    }

    fn f_matrix(&self, i: usize, nu: &WeightVector) -> Result<Cow<'_, RatMatrix>, ModuleError> {
        let up = nu.shifted(i, 1);
        self.check_in_bound(&up)?;
        match self.f_mats.get(&(i, nu.clone())) {
            Some(m) => Ok(Cow::Borrowed(m)),
            None => Ok(Cow::Owned(RatMatrix::zeros(self.dim(&up), self.dim(nu)))),
        }
    }

    fn e_matrix(&self, i: usize, nu: &WeightVector) -> Result<Cow<'_, RatMatrix>, ModuleError> {
        self.check_in_bound(nu)?;
        match self.e_mats.get(&(i, nu.clone())) {
            Some(m) => Ok(Cow::Borrowed(m)),
            None => Ok(Cow::Owned(RatMatrix::zeros(self.dim(&nu.shifted(i, -1)), self.dim(nu)))),
        }
    }
}
