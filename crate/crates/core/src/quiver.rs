//! Quivers with a fixed vertex order, framings, Euler forms, sign twists and
//! mutation of orientations.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Deref, DerefMut};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum QuiverError {
    #[error("loop at vertex {0}")]
    Loop(String),
    #[error("directed cycle {}", .0.join(" -> "))]
    Cycle(Vec<String>),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("duplicate vertex {0:?}")]
    DuplicateVertex(String),
    #[error("vertex {0} is neither a source nor a sink")]
    NotSourceOrSink(String),
    #[error("step {step}: vertex {vertex} is not a source of the current orientation")]
    InvalidStep { step: usize, vertex: String },
    #[error("expected a vector of length {expected}, got {got}")]
    IndexMismatch { expected: usize, got: usize },
    #[error("weight is not dominant: pairing with {vertex} is {value}")]
    NotDominant { vertex: String, value: i64 },
    #[error("framing at {vertex} is negative")]
    NegativeFraming { vertex: String },
}

/// Integer vector indexed by a vertex set.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeightVector(pub Vec<i64>);

impl WeightVector {
    pub fn zero(n: usize) -> Self {
        WeightVector(vec![0; n])
    }

    /// The simple root `alpha_i` (unit vector at `i`) scaled by `r`.
    pub fn unit(n: usize, i: usize, r: i64) -> Self {
        let mut w = Self::zero(n);
        w.0[i] = r;
        w
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|x| *x >= 0)
    }

    pub fn plus(&self, other: &[i64]) -> Self {
        assert_eq!(self.len(), other.len(), "weight length mismatch");
        WeightVector(self.0.iter().zip(other).map(|(a, b)| a + b).collect())
    }

    pub fn minus(&self, other: &[i64]) -> Self {
        assert_eq!(self.len(), other.len(), "weight length mismatch");
        WeightVector(self.0.iter().zip(other).map(|(a, b)| a - b).collect())
    }

    /// Add `r` copies of the unit vector at `i`.
    pub fn shifted(&self, i: usize, r: i64) -> Self {
        let mut w = self.clone();
        w.0[i] += r;
        w
    }
}

impl Deref for WeightVector {
    type Target = [i64];
    fn deref(&self) -> &[i64] {
        &self.0
    }
}

impl DerefMut for WeightVector {
    fn deref_mut(&mut self) -> &mut [i64] {
        &mut self.0
    }
}

impl From<Vec<i64>> for WeightVector {
    fn from(v: Vec<i64>) -> Self {
        WeightVector(v)
    }
}

impl From<&[i64]> for WeightVector {
    fn from(v: &[i64]) -> Self {
        WeightVector(v.to_vec())
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", x)?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// A quiver without loops whose orientation is acyclic. Vertex indices follow
/// the fixed total order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    names: Vec<String>,
    arrows: Vec<(usize, usize)>,
}

impl Quiver {
    pub fn new<S: Into<String>>(vertices: Vec<S>, arrows: Vec<(usize, usize)>) -> Result<Self, QuiverError> {
        let names: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut seen = BTreeSet::new();
        for n in &names {
            if !seen.insert(n.clone()) {
                return Err(QuiverError::DuplicateVertex(n.clone()));
            }
        }
        for &(s, t) in &arrows {
            for x in [s, t] {
                if x >= names.len() {
                    return Err(QuiverError::UnknownVertex(alloc::format!("#{x}")));
                }
            }
            if s == t {
                return Err(QuiverError::Loop(names[s].clone()));
            }
        }
        let q = Quiver { names, arrows };
        if let Some(cycle) = q.find_cycle() {
            return Err(QuiverError::Cycle(cycle.into_iter().map(|i| q.names[i].clone()).collect()));
        }
        Ok(q)
    }

    /// Build from vertex names and edges given by name.
    pub fn from_named(vertices: &[&str], edges: &[(&str, &str)]) -> Result<Self, QuiverError> {
        let idx = |n: &str| {
            vertices
                .iter()
                .position(|v| *v == n)
                .ok_or_else(|| QuiverError::UnknownVertex(String::from(n)))
        };
        let arrows = edges
            .iter()
            .map(|(s, t)| Ok((idx(s)?, idx(t)?)))
            .collect::<Result<Vec<_>, QuiverError>>()?;
        Quiver::new(vertices.to_vec(), arrows)
    }

    /// Linear quiver `1 -> 2 -> ... -> n`.
    pub fn linear(n: usize) -> Self {
        let names: Vec<String> = (1..=n).map(|k| alloc::format!("{k}")).collect();
        Quiver::new(names, (1..n).map(|k| (k - 1, k)).collect()).unwrap()
    }

    /// Two vertices joined by `m` parallel arrows `1 -> 2`.
    pub fn multi_edge(m: usize) -> Self {
        Quiver::new(vec!["1", "2"], vec![(0, 1); m]).unwrap()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize, QuiverError> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| QuiverError::UnknownVertex(String::from(name)))
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    fn find_cycle(&self) -> Option<Vec<usize>> {
        // 0 = unvisited, 1 = on stack, 2 = done
        let n = self.len();
        let mut state = vec![0u8; n];
        let mut stack: Vec<usize> = Vec::new();
        fn visit(q: &Quiver, x: usize, state: &mut [u8], stack: &mut Vec<usize>) -> Option<Vec<usize>> {
            state[x] = 1;
            stack.push(x);
            for &(s, t) in &q.arrows {
                if s != x {
                    continue;
                }
                if state[t] == 1 {
                    let pos = stack.iter().position(|y| *y == t).unwrap();
                    let mut cyc = stack[pos..].to_vec();
                    cyc.push(t);
                    return Some(cyc);
                }
                if state[t] == 0 {
                    if let Some(c) = visit(q, t, state, stack) {
                        return Some(c);
                    }
                }
            }
            stack.pop();
            state[x] = 2;
            None
        }
        (0..n).find_map(|x| if state[x] == 0 { visit(self, x, &mut state, &mut stack) } else { None })
    }

    /// Number of arrows in either direction between `i` and `j`.
    pub fn edge_count(&self, i: usize, j: usize) -> usize {
        self.arrows
            .iter()
            .filter(|&&(s, t)| (s == i && t == j) || (s == j && t == i))
            .count()
    }

    pub fn cartan(&self) -> CartanMatrix {
        let n = self.len();
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = if i == j { 2 } else { -(self.edge_count(i, j) as i64) };
            }
        }
        CartanMatrix { entries: a }
    }

    fn check_len(&self, v: &[i64]) -> Result<(), QuiverError> {
        if v.len() != self.len() {
            return Err(QuiverError::IndexMismatch { expected: self.len(), got: v.len() });
        }
        Ok(())
    }

    /// `sum_i a_i b_i - sum_{h in Omega} a_{source} b_{target}`.
    pub fn euler_form(&self, a: &[i64], b: &[i64]) -> Result<i64, QuiverError> {
        self.check_len(a)?;
        self.check_len(b)?;
        let diag: i64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
        let off: i64 = self.arrows.iter().map(|&(s, t)| a[s] * b[t]).sum();
        Ok(diag - off)
    }

    pub fn opposite(&self) -> Quiver {
        Quiver { names: self.names.clone(), arrows: self.arrows.iter().map(|&(s, t)| (t, s)).collect() }
    }

    pub fn is_source(&self, i: usize) -> bool {
        self.arrows.iter().all(|&(_, t)| t != i)
    }

    pub fn is_sink(&self, i: usize) -> bool {
        self.arrows.iter().all(|&(s, _)| s != i)
    }

    /// Reverse all arrows at a source or sink.
    pub fn mutate(&self, i: usize) -> Result<Quiver, QuiverError> {
        if !self.is_source(i) && !self.is_sink(i) {
            return Err(QuiverError::NotSourceOrSink(self.names[i].clone()));
        }
        let arrows = self
            .arrows
            .iter()
            .map(|&(s, t)| if s == i || t == i { (t, s) } else { (s, t) })
            .collect();
        Ok(Quiver { names: self.names.clone(), arrows })
    }

    /// Length of the longest path from each vertex to `target`, `None` if
    /// there is no such path.
    fn longest_paths_to(&self, target: usize) -> Vec<Option<usize>> {
        let n = self.len();
        let mut best: Vec<Option<usize>> = vec![None; n];
        best[target] = Some(0);
        // acyclic: n - 1 relaxation rounds suffice
        for _ in 0..n {
            let mut changed = false;
            for &(s, t) in &self.arrows {
                if let Some(d) = best[t] {
                    if best[s].is_none_or(|b| b < d + 1) {
                        best[s] = Some(d + 1);
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        best
    }

    /// Mutations at sources turning `i` into a source: repeatedly mutate, in
    /// vertex order, at every vertex starting a longest path ending at `i`.
    pub fn source_mutation_sequence(&self, i: usize) -> Vec<usize> {
        let mut q = self.clone();
        let mut seq = Vec::new();
        loop {
            let lp = q.longest_paths_to(i);
            let m = lp.iter().flatten().copied().max().unwrap_or(0);
            if m == 0 {
                return seq;
            }
            let starts: Vec<usize> = (0..q.len()).filter(|&x| lp[x] == Some(m)).collect();
            for x in starts {
                debug_assert!(q.is_source(x));
                q = q.mutate(x).expect("start of a longest path is a source");
                seq.push(x);
            }
        }
    }

    /// Replays a sequence of source mutations, returning the final quiver and
    /// the vertex weights of the composed one-parameter scaling (each step at
    /// `k` scales the space at `k` by `t^-1`).
    pub fn contracting_cocharacter(&self, seq: &[usize]) -> Result<(Quiver, WeightVector), QuiverError> {
        let mut q = self.clone();
        let mut c = WeightVector::zero(self.len());
        for (step, &k) in seq.iter().enumerate() {
            if k >= q.len() || !q.is_source(k) {
                let vertex = q.names.get(k).cloned().unwrap_or_else(|| alloc::format!("#{k}"));
                return Err(QuiverError::InvalidStep { step, vertex });
            }
            q = q.mutate(k)?;
            c.0[k] -= 1;
        }
        Ok((q, c))
    }

    /// Weight `c[target] - c[source]` on each arrow of this orientation.
    pub fn arrow_weights(&self, c: &[i64]) -> Vec<i64> {
        self.arrows.iter().map(|&(s, t)| c[t] - c[s]).collect()
    }

    /// `(C nu)_i`: the pairing of the simple coroot `i` with `nu` in the root lattice.
    pub fn cartan_pairing(&self, nu: &[i64]) -> WeightVector {
        self.cartan().apply(nu)
    }
}

/// Symmetric generalized Cartan matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanMatrix {
    entries: Vec<Vec<i64>>,
}

impl CartanMatrix {
    pub fn new(entries: Vec<Vec<i64>>) -> Self {
        CartanMatrix { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn apply(&self, nu: &[i64]) -> WeightVector {
        WeightVector(self.entries.iter().map(|row| row.iter().zip(nu).map(|(a, b)| a * b).sum()).collect())
    }

    /// `<i, lambda - nu>` for all `i`, with `lambda` given by its pairings.
    pub fn weight_pairings(&self, lambda: &[i64], nu: &[i64]) -> WeightVector {
        WeightVector(lambda.to_vec()).minus(&self.apply(nu))
    }
}

/// Pairings `<i, lambda>` of a dominant weight, which is the framing.
pub fn framing_from_weight(q: &Quiver, lambda: &[i64]) -> Result<WeightVector, QuiverError> {
    q.check_len(lambda)?;
    for (i, &x) in lambda.iter().enumerate() {
        if x < 0 {
            return Err(QuiverError::NotDominant { vertex: q.names[i].clone(), value: x });
        }
    }
    Ok(WeightVector(lambda.to_vec()))
}

/// A quiver framed once (`i -> i1`) or twice (`i -> i1`, `i -> i2`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FramedQuiver {
    base: Quiver,
    framing1: WeightVector,
    framing2: Option<WeightVector>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TwistKind {
    PsiMinus,
    PsiPlus,
    NakajimaF,
    NakajimaE,
}

impl TwistKind {
    pub const ALL: [TwistKind; 4] = [TwistKind::PsiMinus, TwistKind::PsiPlus, TwistKind::NakajimaF, TwistKind::NakajimaE];
}

impl FramedQuiver {
    pub fn new(base: Quiver, framing1: WeightVector, framing2: Option<WeightVector>) -> Result<Self, QuiverError> {
        for w in core::iter::once(&framing1).chain(framing2.as_ref()) {
            base.check_len(w)?;
            if let Some(i) = w.iter().position(|x| *x < 0) {
                return Err(QuiverError::NegativeFraming { vertex: base.names[i].clone() });
            }
        }
        Ok(FramedQuiver { base, framing1, framing2 })
    }

    pub fn base(&self) -> &Quiver {
        &self.base
    }

    pub fn framing1(&self) -> &WeightVector {
        &self.framing1
    }

    pub fn framing2(&self) -> Option<&WeightVector> {
        self.framing2.as_ref()
    }

    pub fn level(&self) -> usize {
        if self.framing2.is_some() { 2 } else { 1 }
    }

    /// Sum of the framings, identified with a vector over the base vertices.
    pub fn total_framing(&self) -> WeightVector {
        match &self.framing2 {
            Some(w2) => self.framing1.plus(w2),
            None => self.framing1.clone(),
        }
    }

    /// The framed quiver as an ordinary quiver on `I, I1 (, I2)`.
    pub fn full_quiver(&self) -> Quiver {
        let n = self.base.len();
        let mut names = self.base.names.clone();
        let mut arrows = self.base.arrows.clone();
        for level in 1..=self.level() {
            for i in 0..n {
                names.push(alloc::format!("{}^{}", self.base.names[i], level));
                arrows.push((i, level * n + i));
            }
        }
        Quiver { names, arrows }
    }

    /// `nu` on the base vertices followed by the framings.
    pub fn extended(&self, nu: &[i64]) -> WeightVector {
        let mut v = nu.to_vec();
        v.extend_from_slice(&self.framing1);
        if let Some(w2) = &self.framing2 {
            v.extend_from_slice(w2);
        }
        WeightVector(v)
    }

    /// Euler form of the framed quiver on vectors over the full vertex set.
    pub fn euler_form(&self, a: &[i64], b: &[i64]) -> Result<i64, QuiverError> {
        self.full_quiver().euler_form(a, b)
    }

    /// The sign attached to the `r`-th divided power at vertex `i` acting on
    /// the weight space indexed by `nu`.
    pub fn sign_twist(&self, i: usize, r: i64, nu: &[i64], kind: TwistKind) -> Result<i64, QuiverError> {
        self.base.check_len(nu)?;
        let n = self.base.len();
        let exponent = match kind {
            TwistKind::PsiMinus | TwistKind::PsiPlus => {
                let full = self.full_quiver();
                let q = if kind == TwistKind::PsiMinus { full } else { full.opposite() };
                let left = WeightVector::unit(q.len(), i, r);
                q.euler_form(&left, &self.extended(nu))?
            }
            TwistKind::NakajimaF => {
                // <i, omega - C_Omega nu> with C_Omega = Id - A_Omega
                let out: i64 = self.base.arrows.iter().filter(|a| a.0 == i).map(|a| nu[a.1]).sum();
                r * (self.total_framing()[i] - (nu[i] - out))
            }
            TwistKind::NakajimaE => {
                let inc: i64 = self.base.arrows.iter().filter(|a| a.1 == i).map(|a| nu[a.0]).sum();
                r * (nu[i] - inc)
            }
        };
        debug_assert!(i < n);
        Ok(if exponent.rem_euclid(2) == 0 { 1 } else { -1 })
    }
}
