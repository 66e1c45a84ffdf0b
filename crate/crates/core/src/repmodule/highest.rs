use alloc::borrow::Cow;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::form::ContravariantForm;
use super::word::{lower_raise_commute, words_of_content, LoweringWord};
use super::{weights_up_to, ModuleError, ModuleVector, WeightModule};
use crate::exactalg::{determinant, inverse, rank, RatMatrix, RationalScalar};
use crate::quiver::{CartanMatrix, WeightVector};

/// The weight space `L(lambda)_{lambda - nu}` presented by words of content `nu`.
#[derive(Clone, Debug)]
pub struct WeightSpace {
    nu: WeightVector,
    words: Vec<LoweringWord>,
    index: BTreeMap<LoweringWord, usize>,
    /// positions in `words` of the chosen basis
    basis: Vec<usize>,
    word_gram: RatMatrix,
    /// coordinates of every word in the chosen basis
    word_coords: Vec<Vec<RationalScalar>>,
}

impl WeightSpace {
    fn build(form: &mut ContravariantForm, nu: WeightVector, maybe_nonzero: bool) -> Result<Self, ModuleError> {
        let words = words_of_content(&nu);
        let index = words.iter().cloned().enumerate().map(|(k, w)| (w, k)).collect();
        let n = words.len();
        let mut word_gram = RatMatrix::zeros(n, n);
        if !maybe_nonzero {
            // every word is F_i applied to a radical vector
            return Ok(WeightSpace { nu, words, index, basis: Vec::new(), word_gram, word_coords: alloc::vec![Vec::new(); n] });
        }
        for a in 0..n {
            for b in a..n {
                let p = RationalScalar::from(form.pair(&words[a], &words[b]));
                word_gram[(a, b)] = p.clone();
                word_gram[(b, a)] = p;
            }
        }
        let total = rank(&word_gram);
        // The form is positive definite on the real points v > 0, so every
        // principal minor of an independent family is nonzero and greedy
        // extension by principal minors reaches the full rank.
        let mut basis: Vec<usize> = Vec::new();
        for w in 0..n {
            if basis.len() == total {
                break;
            }
            let mut trial = basis.clone();
            trial.push(w);
            if !determinant(&word_gram.submatrix(&trial, &trial)).is_zero() {
                basis = trial;
            }
        }
        if basis.len() != total {
            return Err(ModuleError::Internal(alloc::format!("greedy basis at {} stopped at {} of rank {}", nu, basis.len(), total)));
        }
        let gb = word_gram.submatrix(&basis, &basis);
        let inv = inverse(&gb).ok_or_else(|| ModuleError::Internal(alloc::format!("singular basis Gram at {}", nu)))?;
        let all: Vec<usize> = (0..n).collect();
        let coords = inv.mul(&word_gram.submatrix(&basis, &all));
        let word_coords = (0..n).map(|w| coords.column(w)).collect();
        Ok(WeightSpace { nu, words, index, basis, word_gram, word_coords })
    }

    pub fn nu(&self) -> &WeightVector {
        &self.nu
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn words(&self) -> &[LoweringWord] {
        &self.words
    }

    pub fn basis_words(&self) -> Vec<&LoweringWord> {
        self.basis.iter().map(|&k| &self.words[k]).collect()
    }

    /// Gram matrix of the chosen basis.
    pub fn gram(&self) -> RatMatrix {
        self.word_gram.submatrix(&self.basis, &self.basis)
    }

    /// Gram matrix of all words of this content.
    pub fn word_gram(&self) -> &RatMatrix {
        &self.word_gram
    }

    /// Coordinates of `F_word v_lambda`.
    pub fn coords_of(&self, w: &LoweringWord) -> Option<&[RationalScalar]> {
        self.index.get(w).map(|&k| self.word_coords[k].as_slice())
    }
}

/// `L(lambda)` truncated at a height bound, built eagerly and immutable.
#[derive(Clone, Debug)]
pub struct HighestWeightModule {
    cartan: CartanMatrix,
    lambda: WeightVector,
    height: i64,
    spaces: BTreeMap<WeightVector, WeightSpace>,
    f_mats: BTreeMap<(usize, WeightVector), RatMatrix>,
    e_mats: BTreeMap<(usize, WeightVector), RatMatrix>,
    form: ContravariantForm,
}

impl HighestWeightModule {
    pub fn new(cartan: &CartanMatrix, lambda: &[i64], height: i64) -> Result<Self, ModuleError> {
        let n = cartan.len();
        if lambda.len() != n {
            return Err(ModuleError::LengthMismatch { expected: n, got: lambda.len() });
        }
        if lambda.iter().any(|x| *x < 0) {
            return Err(ModuleError::NotDominant);
        }
        let lambda = WeightVector(lambda.to_vec());
        let mut form = ContravariantForm::new(cartan.clone(), lambda.clone());
        let mut spaces: BTreeMap<WeightVector, WeightSpace> = BTreeMap::new();
        for nu in weights_up_to(n, height) {
            let nonzero = nu.height() == 0
                || (0..n).any(|i| nu[i] > 0 && spaces.get(&nu.shifted(i, -1)).is_some_and(|s| s.dim() > 0));
            let space = WeightSpace::build(&mut form, nu.clone(), nonzero)?;
            spaces.insert(nu, space);
        }
        let mut f_mats = BTreeMap::new();
        let mut e_mats = BTreeMap::new();
        for (nu, space) in &spaces {
            for i in 0..n {
                let up = nu.shifted(i, 1);
                if let Some(target) = spaces.get(&up) {
                    let cols: Vec<Vec<RationalScalar>> = space
                        .basis_words()
                        .into_iter()
                        .map(|w| target.coords_of(&w.prepend(i)).expect("word of target content").to_vec())
                        .collect();
                    f_mats.insert((i, nu.clone()), RatMatrix::from_columns(target.dim(), &cols));
                }
                if nu[i] > 0 {
                    let target = &spaces[&nu.shifted(i, -1)];
                    let mut m = RatMatrix::zeros(target.dim(), space.dim());
                    for (col, w) in space.basis_words().into_iter().enumerate() {
                        for (w2, c) in lower_raise_commute(cartan, i, w, &lambda) {
                            let coords = target.coords_of(&w2).expect("word of target content");
                            let c = RationalScalar::from(c);
                            for (row, x) in coords.iter().enumerate() {
                                if !x.is_zero() {
                                    m[(row, col)] = &m[(row, col)] + &(&c * x);
                                }
                            }
                        }
                    }
                    e_mats.insert((i, nu.clone()), m);
                }
            }
        }
        Ok(HighestWeightModule { cartan: cartan.clone(), lambda, height, spaces, f_mats, e_mats, form })
    }

    pub fn space(&self, nu: &WeightVector) -> Option<&WeightSpace> {
        self.spaces.get(nu)
    }

    /// Coordinates of `F_word v_lambda`, or an error beyond the height bound.
    pub fn word_vector(&self, w: &LoweringWord) -> Result<ModuleVector, ModuleError> {
        let nu = w.content(self.rank());
        self.check_in_bound(&nu)?;
        let coords = self.spaces[&nu].coords_of(w).expect("word of its own content").to_vec();
        Ok(ModuleVector { nu, coords })
    }

    /// Whether `F_i^{<i,lambda>+1} v_lambda` vanishes, decided by the form so it
    /// works beyond the height bound.
    pub fn integrability_holds(&self, i: usize) -> bool {
        let w = LoweringWord(alloc::vec![i; self.lambda[i] as usize + 1]);
        self.form.clone().pair(&w, &w).is_zero()
    }
}

fn zero_map(rows: usize, cols: usize) -> Cow<'static, RatMatrix> {
    Cow::Owned(RatMatrix::zeros(rows, cols))
}

impl WeightModule for HighestWeightModule {
    fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    fn highest_weight(&self) -> &WeightVector {
        &self.lambda
    }

    fn height_bound(&self) -> i64 {
        self.height
    }

    fn dim(&self, nu: &WeightVector) -> usize {
        self.spaces.get(nu).map_or(0, WeightSpace::dim)
    }

    fn integrability_beyond_bound(&self, i: usize) -> Option<bool> {
        Some(self.integrability_holds(i))
    }

    fn f_matrix(&self, i: usize, nu: &WeightVector) -> Result<Cow<'_, RatMatrix>, ModuleError> {
        let up = nu.shifted(i, 1);
        self.check_in_bound(&up)?;
        match self.f_mats.get(&(i, nu.clone())) {
            Some(m) => Ok(Cow::Borrowed(m)),
            None => Ok(zero_map(self.dim(&up), self.dim(nu))),
        }
    }

    fn e_matrix(&self, i: usize, nu: &WeightVector) -> Result<Cow<'_, RatMatrix>, ModuleError> {
        self.check_in_bound(nu)?;
        match self.e_mats.get(&(i, nu.clone())) {
            Some(m) => Ok(Cow::Borrowed(m)),
            None => Ok(zero_map(self.dim(&nu.shifted(i, -1)), self.dim(nu))),
        }
    }
}
