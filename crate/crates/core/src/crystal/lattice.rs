use alloc::vec::Vec;

use num_rational::BigRational;

use crate::exactalg::{inverse, RatMatrix, RationalScalar};

/// Where a lattice lives: the local ring at `v = 0` or at `v = infinity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Place {
    Zero,
    Infinity,
}

impl Place {
    fn eval(self, c: &RationalScalar) -> Option<BigRational> {
        match self {
            Place::Zero => c.eval_at_zero(),
            Place::Infinity => c.bar().eval_at_zero(),
        }
    }

    fn valuation(self, c: &RationalScalar) -> Option<i64> {
        match self {
            Place::Zero => c.valuation(),
            Place::Infinity => c.bar().valuation(),
        }
    }
}

/// Echelon basis of the span of `gens` over the local ring at `place`.
/// Row operations only use factors regular at `place`, so the returned rows
/// span the same lattice.
pub fn local_span(gens: &[Vec<RationalScalar>], place: Place) -> Vec<Vec<RationalScalar>> {
    let mut rows: Vec<Vec<RationalScalar>> = gens.iter().filter(|g| g.iter().any(|c| !c.is_zero())).cloned().collect();
    let cols = rows.first().map_or(0, Vec::len);
    let mut p = 0;
    for c in 0..cols {
        if p == rows.len() {
            break;
        }
        let best = (p..rows.len())
            .filter_map(|r| place.valuation(&rows[r][c]).map(|k| (k, r)))
            .min();
        let Some((_, r)) = best else { continue };
        rows.swap(p, r);
        let inv = rows[p][c].recip().expect("nonzero pivot");
        for r in p + 1..rows.len() {
            if rows[r][c].is_zero() {
                continue;
            }
            let factor = &rows[r][c] * &inv;
            let (head, tail) = rows.split_at_mut(r);
            for (x, y) in tail[0].iter_mut().zip(&head[p]) {
                if !y.is_zero() {
                    *x = &*x - &(&factor * y);
                }
            }
        }
        p += 1;
    }
    rows.truncate(p);
    rows
}

/// A full-rank lattice in a weight space, given by a basis.
#[derive(Clone, Debug)]
pub struct Lattice {
    basis: Vec<Vec<RationalScalar>>,
    inv: RatMatrix,
}

impl Lattice {
    /// `None` unless `basis` is a basis of the ambient space.
    pub fn from_basis(basis: Vec<Vec<RationalScalar>>) -> Option<Self> {
        let d = basis.len();
        if basis.iter().any(|b| b.len() != d) {
            return None;
        }
        let inv = inverse(&RatMatrix::from_columns(d, &basis))?;
        Some(Lattice { basis, inv })
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<RationalScalar>] {
        &self.basis
    }

    pub fn coords(&self, z: &[RationalScalar]) -> Vec<RationalScalar> {
        self.inv.mul_vec(z)
    }

    /// Image of `z` in `lattice / (uniformizer) lattice`, or `None` if `z` is
    /// not in the lattice.
    pub fn reduce(&self, z: &[RationalScalar], place: Place) -> Option<Vec<BigRational>> {
        self.coords(z).iter().map(|c| place.eval(c)).collect()
    }
}

/// Position of the single `1` in a unit vector.
pub fn unit_position(x: &[BigRational]) -> Option<usize> {
    use num_traits::{One, Zero};
    let mut pos = None;
    for (k, c) in x.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if !c.is_one() || pos.is_some() {
            return None;
        }
        pos = Some(k);
    }
    pos
}
