//! Verification suites over one configured module (and tensor product) plus
//! the seeded random corpora.

use std::cell::OnceCell;
use std::collections::BTreeMap;

use qcanon_core::bases::{
    canonical_basis, monomial_a_basis, monomial_basis, tensor_a_basis, transition_matrix, verify_twisted_relations, CanonicalBasis,
    MonomialBasis, TransitionMatrix, Triangularity,
};
use qcanon_core::crystal::{check_tensor_crystal, format_string, Crystal, Place, VertexOrder};
use qcanon_core::exactalg::Point;
use qcanon_core::quiver::{framing_from_weight, FramedQuiver, Quiver, TwistKind, WeightVector};
use qcanon_core::repmodule::{verify_relations, HighestWeightModule, RelationKind, TensorModule, WeightModule};
use serde::Serialize;
use serde_json::{json, Value};

use crate::corpus;

/// Failure lists in reports are cut to this many entries.
const MAX_LISTED: usize = 50;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Relations,
    Twisted,
    Signs,
    Mutation,
    Crystal,
    Bases,
}

impl Suite {
    pub const ALL: [Suite; 6] = [Suite::Relations, Suite::Twisted, Suite::Signs, Suite::Mutation, Suite::Crystal, Suite::Bases];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Relations => "relations",
            Suite::Twisted => "twisted",
            Suite::Signs => "signs",
            Suite::Mutation => "mutation",
            Suite::Crystal => "crystal",
            Suite::Bases => "bases",
        }
    }

    /// Whether the suite needs a configured module.
    pub fn needs_module(self) -> bool {
        !matches!(self, Suite::Signs | Suite::Mutation)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub passed: bool,
    pub checks: usize,
    pub failure_count: usize,
    pub failures: Vec<String>,
    pub details: Value,
}

#[derive(Default)]
struct Tally {
    checks: usize,
    failures: Vec<String>,
    failure_count: usize,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.fail(what());
        }
    }

    fn fail(&mut self, msg: String) {
        self.failure_count += 1;
        if self.failures.len() < MAX_LISTED {
            self.failures.push(msg);
        }
    }

    fn finish(self, suite: Suite, details: Value) -> SuiteReport {
        SuiteReport { suite, passed: self.failure_count == 0, checks: self.checks, failure_count: self.failure_count, failures: self.failures, details }
    }
}

/// One module `L(lambda)` and optionally `L(lambda2) (x) L(lambda)`, with
/// crystals built on first use.
pub struct Engine {
    pub quiver: Quiver,
    pub lambda: Vec<i64>,
    pub lambda2: Option<Vec<i64>>,
    pub height: i64,
    pub order: VertexOrder,
    module: OnceCell<Result<HighestWeightModule, String>>,
    crystal: OnceCell<Result<Crystal, String>>,
    tensor: OnceCell<Result<TensorModule, String>>,
    tensor_crystals: OnceCell<Result<(Crystal, Crystal), String>>,
}

impl Engine {
    pub fn new(quiver: Quiver, lambda: Vec<i64>, lambda2: Option<Vec<i64>>, height: i64, order: VertexOrder) -> Self {
        Engine {
            quiver,
            lambda,
            lambda2,
            height,
            order,
            module: OnceCell::new(),
            crystal: OnceCell::new(),
            tensor: OnceCell::new(),
            tensor_crystals: OnceCell::new(),
        }
    }

    pub fn module(&self) -> Result<&HighestWeightModule, String> {
        self.module
            .get_or_init(|| HighestWeightModule::new(&self.quiver.cartan(), &self.lambda, self.height).map_err(|e| e.to_string()))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn crystal(&self) -> Result<&Crystal, String> {
        let m = self.module()?;
        self.crystal
            .get_or_init(|| Crystal::enumerate(m, self.order.clone()).map_err(|e| e.to_string()))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn tensor(&self) -> Option<Result<&TensorModule, String>> {
        let l2 = self.lambda2.as_ref()?;
        Some(
            self.tensor
                .get_or_init(|| TensorModule::new(&self.quiver.cartan(), l2, &self.lambda, self.height).map_err(|e| e.to_string()))
                .as_ref()
                .map_err(Clone::clone),
        )
    }

    /// Crystals of the left and right tensor factors.
    pub fn tensor_crystals(&self) -> Option<Result<(&Crystal, &Crystal), String>> {
        let t = match self.tensor()? {
            Ok(t) => t,
            Err(e) => return Some(Err(e)),
        };
        let r = self.tensor_crystals.get_or_init(|| {
            let c2 = Crystal::enumerate(t.first(), self.order.clone()).map_err(|e| e.to_string())?;
            let c1 = Crystal::enumerate(t.second(), self.order.clone()).map_err(|e| e.to_string())?;
            Ok((c2, c1))
        });
        Some(r.as_ref().map(|(a, b)| (a, b)).map_err(Clone::clone))
    }
}

/// Everything the bases suite and the tables compute for one weight space.
#[derive(Clone, Debug)]
pub struct WeightBases {
    pub nu: WeightVector,
    pub monomial: MonomialBasis,
    pub canonical: CanonicalBasis,
    /// canonical in terms of monomial
    pub transition: TransitionMatrix,
}

impl WeightBases {
    /// `(nonzero, positive, negative)` off-diagonal entries at `v = -1`.
    pub fn signs_at_minus_one(&self) -> Option<(usize, usize, usize)> {
        let spec = self.transition.specialize(Point::MinusOne)?;
        let mut out = (0, 0, 0);
        for ((r, c), _) in self.transition.off_diagonal() {
            let x = &spec[r][c];
            if *x.numer() != 0.into() {
                out.0 += 1;
                if *x.numer() > 0.into() {
                    out.1 += 1;
                } else {
                    out.2 += 1;
                }
            }
        }
        Some(out)
    }
}

pub fn compute_bases(m: &HighestWeightModule, c: &Crystal) -> Result<Vec<WeightBases>, String> {
    let mut out = Vec::new();
    for nu in m.weights() {
        if m.dim(&nu) == 0 {
            continue;
        }
        let monomial = monomial_basis(m, c, &nu).map_err(|e| e.to_string())?;
        let canonical = canonical_basis(c, &monomial).map_err(|e| e.to_string())?;
        let transition = transition_matrix(&canonical.vectors, &monomial.vectors).map_err(|e| e.to_string())?.with_labels(monomial.nodes.clone());
        out.push(WeightBases { nu, monomial, canonical, transition });
    }
    Ok(out)
}

fn relation_counts(report: &qcanon_core::repmodule::RelationReport) -> Value {
    let mut counts = serde_json::Map::new();
    for k in RelationKind::ALL {
        counts.insert(k.label().to_string(), json!(report.count(k)));
    }
    Value::Object(counts)
}

pub fn relations(e: &Engine) -> SuiteReport {
    let mut t = Tally::default();
    let mut details = serde_json::Map::new();
    match e.module().and_then(|m| verify_relations(m, e.height).map_err(|x| x.to_string())) {
        Ok(r) => {
            for c in &r.checks {
                t.check(c.passed, || format!("L: {} at nu={} i={} j={}", c.kind, c.nu, c.i + 1, c.j + 1));
            }
            details.insert("module".into(), relation_counts(&r));
        }
        Err(msg) => t.fail(format!("L: {msg}")),
    }
    if let Some(tm) = e.tensor() {
        match tm.and_then(|tm| verify_relations(tm, e.height).map_err(|x| x.to_string())) {
            Ok(r) => {
                for c in &r.checks {
                    t.check(c.passed, || format!("tensor: {} at nu={} i={} j={}", c.kind, c.nu, c.i + 1, c.j + 1));
                }
                details.insert("tensor".into(), relation_counts(&r));
            }
            Err(msg) => t.fail(format!("tensor: {msg}")),
        }
    }
    t.finish(Suite::Relations, Value::Object(details))
}

pub fn twisted(e: &Engine) -> SuiteReport {
    let mut t = Tally::default();
    let mut details = serde_json::Map::new();
    let single = || -> Result<_, String> {
        let m = e.module()?;
        let c = e.crystal()?;
        let basis = monomial_a_basis(m, c).map_err(|x| x.to_string())?;
        let framing = framing_from_weight(&e.quiver, &e.lambda).map_err(|x| x.to_string())?;
        let framed = FramedQuiver::new(e.quiver.clone(), framing, None).map_err(|x| x.to_string())?;
        verify_twisted_relations(m, &framed, &basis, true).map_err(|x| x.to_string())
    };
    match single() {
        Ok(r) => {
            for c in &r.checks {
                t.check(c.passed, || format!("L: {:?} at nu={} i={} j={}", c.kind, c.nu, c.i + 1, c.j + 1));
            }
            details.insert("module_checks".into(), json!(r.checks.len()));
        }
        Err(msg) => t.fail(format!("L: {msg}")),
    }
    if let Some(l2) = &e.lambda2 {
        let tensor = || -> Result<_, String> {
            let tm = e.tensor().expect("lambda2 set")?;
            let (c2, c1) = e.tensor_crystals().expect("lambda2 set")?;
            let b2 = monomial_a_basis(tm.first(), c2).map_err(|x| x.to_string())?;
            let b1 = monomial_a_basis(tm.second(), c1).map_err(|x| x.to_string())?;
            let basis = tensor_a_basis(tm, &b2, &b1);
            let w1 = framing_from_weight(&e.quiver, &e.lambda).map_err(|x| x.to_string())?;
            let w2 = framing_from_weight(&e.quiver, l2).map_err(|x| x.to_string())?;
            let framed = FramedQuiver::new(e.quiver.clone(), w1, Some(w2)).map_err(|x| x.to_string())?;
            verify_twisted_relations(tm, &framed, &basis, true).map_err(|x| x.to_string())
        };
        match tensor() {
            Ok(r) => {
                for c in &r.checks {
                    t.check(c.passed, || format!("tensor: {:?} at nu={} i={} j={}", c.kind, c.nu, c.i + 1, c.j + 1));
                }
                details.insert("tensor_checks".into(), json!(r.checks.len()));
            }
            Err(msg) => t.fail(format!("tensor: {msg}")),
        }
    }
    t.finish(Suite::Twisted, Value::Object(details))
}

/// `psi- = nakajima_f` and `psi+ = nakajima_e` on `cases` seeded samples.
pub fn signs(seed: u64, cases: usize) -> SuiteReport {
    let mut t = Tally::default();
    let mut rng = corpus::rng(seed);
    let mut odd = 0;
    for k in 0..cases {
        let c = corpus::random_sign_case(&mut rng);
        let s = |kind| c.framed.sign_twist(c.i, c.r, &c.nu, kind);
        match (s(TwistKind::PsiMinus), s(TwistKind::NakajimaF), s(TwistKind::PsiPlus), s(TwistKind::NakajimaE)) {
            (Ok(pm), Ok(nf), Ok(pp), Ok(ne)) => {
                odd += usize::from(pm < 0) + usize::from(pp < 0);
                t.check(pm == nf, || format!("case {k}: psi- = {pm}, nakajima f = {nf}"));
                t.check(pp == ne, || format!("case {k}: psi+ = {pp}, nakajima e = {ne}"));
            }
            _ => t.fail(format!("case {k}: sign evaluation failed")),
        }
    }
    t.finish(Suite::Signs, json!({ "seed": seed, "cases": cases, "negative_signs": odd }))
}

/// Replays `source_mutation_sequence` towards every vertex and checks the
/// contracting cocharacter's arrow weights.
fn mutation_checks(q: &Quiver, label: &str, t: &mut Tally) -> usize {
    let mut steps = 0;
    for i in 0..q.len() {
        let seq = q.source_mutation_sequence(i);
        steps += seq.len();
        let mut cur = q.clone();
        let mut legal = true;
        for &k in &seq {
            if !cur.is_source(k) {
                legal = false;
                break;
            }
            cur = cur.mutate(k).expect("sources can be mutated");
        }
        t.check(legal, || format!("{label}: sequence towards {} mutates at a non-source", q.name(i)));
        t.check(legal && cur.is_source(i), || format!("{label}: vertex {} is not a source after its sequence", q.name(i)));
        match q.contracting_cocharacter(&seq) {
            Ok((fin, c)) => {
                t.check(fin == cur, || format!("{label}: cocharacter replay ends elsewhere"));
                for ((k, &(s, tg)), w) in q.arrows().iter().enumerate().zip(q.arrow_weights(&c)) {
                    let reversed = fin.arrows()[k] == (tg, s);
                    let want = i64::from(reversed);
                    t.check(w == want, || {
                        format!("{label}, target {}: arrow {}->{} has weight {w}, expected {want}", q.name(i), q.name(s), q.name(tg))
                    });
                }
            }
            Err(x) => t.fail(format!("{label}: {x}")),
        }
    }
    steps
}

pub fn mutation(quiver: Option<&Quiver>, seed: u64, cases: usize) -> SuiteReport {
    let mut t = Tally::default();
    let mut rng = corpus::rng(seed);
    let mut steps = 0;
    for k in 0..cases {
        let q = corpus::random_acyclic_quiver(&mut rng, 6);
        steps += mutation_checks(&q, &format!("random quiver {k}"), &mut t);
    }
    let mut details = json!({ "seed": seed, "cases": cases, "random_steps": steps });
    if let Some(q) = quiver {
        let seqs: BTreeMap<String, Vec<String>> = (0..q.len())
            .map(|i| (q.name(i).to_string(), q.source_mutation_sequence(i).into_iter().map(|k| q.name(k).to_string()).collect()))
            .collect();
        mutation_checks(q, "configured quiver", &mut t);
        details["sequences"] = json!(seqs);
    }
    t.finish(Suite::Mutation, details)
}

pub fn crystal(e: &Engine) -> SuiteReport {
    let mut t = Tally::default();
    let mut details = serde_json::Map::new();
    match (e.module(), e.crystal()) {
        (Ok(m), Ok(c)) => {
            for r in [c.check_axioms(), c.check_module_operators(m)] {
                t.check(r.is_ok(), || r.unwrap_err().to_string());
            }
            for nu in m.weights() {
                let (d, n) = (m.dim(&nu), c.nodes_at(&nu).len());
                t.check(d == n, || format!("nu={nu}: dimension {d} but {n} nodes"));
            }
            for node in c.nodes() {
                let ok = matches!(c.replay(m, &node.string), Ok(Some(ref x)) if *x == node.vector_rep);
                t.check(ok, || format!("string {} does not replay to its node", format_string(&node.string)));
            }
            details.insert("nodes".into(), json!(c.len()));
        }
        (Err(x), _) | (_, Err(x)) => t.fail(x),
    }
    if let Some(pair) = e.tensor_crystals() {
        match pair.and_then(|(c2, c1)| check_tensor_crystal(e.tensor().expect("lambda2 set")?, c2, c1, Place::Infinity).map_err(|x| x.to_string())) {
            Ok(r) => {
                t.checks += r.checked;
                for m in r.mismatches {
                    t.fail(format!("tensor rule: {m}"));
                }
                details.insert("tensor_rule_checks".into(), json!(r.checked));
            }
            Err(x) => t.fail(format!("tensor: {x}")),
        }
    }
    t.finish(Suite::Crystal, Value::Object(details))
}

pub fn bases(e: &Engine) -> SuiteReport {
    let mut t = Tally::default();
    let mut spaces = Vec::new();
    let all = e.module().and_then(|m| Ok((m, e.crystal()?))).and_then(|(m, c)| Ok((c, compute_bases(m, c)?)));
    match all {
        Ok((c, list)) => {
            let sl2 = e.quiver.len() == 1;
            for wb in &list {
                let tr = &wb.transition;
                let nu = &wb.nu;
                t.check(!wb.monomial.determinant.is_zero(), || format!("nu={nu}: monomials are singular"));
                t.check(tr.is_unitriangular(), || format!("nu={nu}: transition is not unitriangular ({:?})", tr.triangularity()));
                t.check(tr.is_laurent(), || format!("nu={nu}: transition has denominators"));
                if sl2 {
                    t.check(tr.is_identity(), || format!("nu={nu}: sl2 transition is not the identity"));
                }
                let signs = wb.signs_at_minus_one();
                spaces.push(json!({
                    "nu": nu.to_string(),
                    "dim": tr.dim(),
                    "triangularity": match tr.triangularity() {
                        Triangularity::Diagonal => "diagonal",
                        Triangularity::Upper => "upper",
                        Triangularity::Lower => "lower",
                        Triangularity::Neither => "neither",
                    },
                    "processing": wb.canonical.processing.iter().map(|&b| format_string(c.string(b))).collect::<Vec<_>>(),
                    "absorbed_signs": wb.canonical.signs,
                    "off_diagonal_at_minus_one": signs.map(|(n, p, q)| json!({ "nonzero": n, "positive": p, "negative": q })),
                }));
            }
        }
        Err(x) => t.fail(x),
    }
    t.finish(Suite::Bases, json!({ "weight_spaces": spaces }))
}
