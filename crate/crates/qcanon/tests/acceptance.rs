//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the libtest
//! harness so the lines are always printed.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::{One, Zero};
use qcanon::corpus::{self, CorpusEntry};
use qcanon::suites::{self, compute_bases, Engine, SuiteReport, WeightBases};
use qcanon_core::bases::tensor_monomial_shadow;
use qcanon_core::crystal::{check_tensor_crystal, Crystal, Place, VertexOrder};
use qcanon_core::exactalg::{Laurent, RationalScalar};
use qcanon_core::quiver::{FramedQuiver, Quiver, TwistKind, WeightVector};
use qcanon_core::repmodule::{
    quasi_r_matrix, words_of_content, HighestWeightModule, LoweringWord, ModuleVector, ThetaDirection, WeightModule,
};

const MAX_HEIGHT: i64 = 6;
const SEED: u64 = 0;

struct Line {
    id: u32,
    title: &'static str,
    stretch: bool,
    passed: bool,
    note: String,
    elapsed: Duration,
}

struct Ctx {
    entries: Vec<(CorpusEntry, Engine)>,
    bases: Vec<Option<Result<Vec<WeightBases>, String>>>,
}

impl Ctx {
    fn new() -> Self {
        let entries: Vec<_> = corpus::standard(MAX_HEIGHT)
            .into_iter()
            .map(|c| {
                let order = VertexOrder::natural(c.quiver.len());
                let e = Engine::new(c.quiver.clone(), c.lambda.clone(), c.lambda2.clone(), c.height, order);
                (c, e)
            })
            .collect();
        let bases = entries.iter().map(|_| None).collect();
        Ctx { entries, bases }
    }

    fn modules(&self) -> impl Iterator<Item = (usize, &CorpusEntry, &Engine)> {
        self.entries.iter().enumerate().filter(|(_, (c, _))| c.lambda2.is_none()).map(|(k, (c, e))| (k, c, e))
    }

    fn tensors(&self) -> impl Iterator<Item = (&CorpusEntry, &Engine)> {
        self.entries.iter().filter(|(c, _)| c.lambda2.is_some()).map(|(c, e)| (c, e))
    }

    fn bases(&mut self, k: usize) -> Result<&Vec<WeightBases>, String> {
        if self.bases[k].is_none() {
            let e = &self.entries[k].1;
            let r = e.module().and_then(|m| compute_bases(m, e.crystal()?));
            self.bases[k] = Some(r);
        }
        self.bases[k].as_ref().expect("filled").as_ref().map_err(Clone::clone)
    }
}

/// Folds suite reports into a verdict and a note.
fn fold(reports: impl Iterator<Item = (String, SuiteReport)>) -> (bool, String) {
    let mut checks = 0;
    let mut bad = Vec::new();
    for (label, r) in reports {
        checks += r.checks;
        if !r.passed {
            bad.push(format!("{label}: {}", r.failures.first().cloned().unwrap_or_default()));
        }
    }
    if bad.is_empty() {
        (true, format!("{checks} checks"))
    } else {
        (false, format!("{} failing entries, first: {}", bad.len(), bad[0]))
    }
}

fn within(passed: bool, note: String, elapsed: Duration, limit: Duration) -> (bool, String) {
    if passed && elapsed > limit {
        (false, format!("{note}; took {:.1}s, limit {}s", elapsed.as_secs_f64(), limit.as_secs()))
    } else {
        (passed, note)
    }
}

fn c1_relations(ctx: &mut Ctx) -> (bool, String) {
    fold(ctx.entries.iter().map(|(c, e)| (c.label(), suites::relations(e))))
}

fn c2_twisted(ctx: &mut Ctx) -> (bool, String) {
    let (ok, note) = fold(ctx.entries.iter().map(|(c, e)| (c.label(), suites::twisted(e))));
    // the sl2 relation [e, f] = h needs the twist: the plain operators fail it on L(2)
    let m = HighestWeightModule::new(&Quiver::linear(1).cartan(), &[2], 2).unwrap();
    let c = Crystal::enumerate(&m, VertexOrder::natural(1)).unwrap();
    let basis = qcanon_core::bases::monomial_a_basis(&m, &c).unwrap();
    let framed = FramedQuiver::new(Quiver::linear(1), WeightVector(vec![2]), None).unwrap();
    let control = qcanon_core::bases::verify_twisted_relations(&m, &framed, &basis, false).unwrap();
    if control.all_passed() {
        return (false, "untwisted control unexpectedly passes on sl2 L(2)".into());
    }
    (ok, note + ", untwisted control fails as expected")
}

fn c3_signs(_: &mut Ctx) -> (bool, String) {
    let r = suites::signs(SEED, 1000);
    // hand-evaluated case: A1 framed with omega = 2, nu = 1, r = 1. The
    // framed Euler form gives 1 - 2 = -1 and <i, omega - C nu> = 2 - 1 = 1,
    // both odd.
    let fq = FramedQuiver::new(Quiver::linear(1), WeightVector(vec![2]), None).unwrap();
    let pm = fq.sign_twist(0, 1, &[1], TwistKind::PsiMinus).unwrap();
    let nf = fq.sign_twist(0, 1, &[1], TwistKind::NakajimaF).unwrap();
    let ok = r.passed && r.checks == 2000 && pm == -1 && nf == -1;
    (ok, format!("{} sign comparisons, seed {SEED}; hand case psi- = {pm}, f-sign = {nf}", r.checks))
}

fn c4_dimensions(ctx: &mut Ctx) -> (bool, String) {
    let mut spaces = 0;
    for (_, c, e) in ctx.modules() {
        let (m, cr) = match (e.module(), e.crystal()) {
            (Ok(m), Ok(cr)) => (m, cr),
            (Err(x), _) | (_, Err(x)) => return (false, format!("{}: {x}", c.label())),
        };
        for nu in m.weights() {
            spaces += 1;
            if m.dim(&nu) != cr.nodes_at(&nu).len() {
                return (false, format!("{} at {nu}: dim {} vs {} nodes", c.label(), m.dim(&nu), cr.nodes_at(&nu).len()));
            }
            if c.family == "sl2" {
                let want = usize::from(nu[0] <= c.lambda[0]);
                if m.dim(&nu) != want {
                    return (false, format!("{} at {nu}: multiplicity {}", c.label(), m.dim(&nu)));
                }
            }
        }
    }
    for (c, e) in ctx.tensors() {
        let Some(Ok(t)) = e.tensor() else { return (false, format!("{}: tensor module", c.label())) };
        let Some(Ok((c2, c1))) = e.tensor_crystals() else { return (false, format!("{}: factor crystals", c.label())) };
        for mu in t.weights() {
            spaces += 1;
            let pairs: usize = t.blocks(&mu).iter().map(|b| c2.nodes_at(&b.nu2).len() * c1.nodes_at(&b.nu1).len()).sum();
            if pairs != t.dim(&mu) {
                return (false, format!("{} at {mu}: dim {} vs {pairs} pairs", c.label(), t.dim(&mu)));
            }
        }
    }
    let t = qcanon_core::repmodule::TensorModule::new(&Quiver::linear(1).cartan(), &[1], &[1], 2).unwrap();
    let zero = t.dim(&WeightVector(vec![1]));
    (zero == 2, format!("{spaces} weight spaces; sl2 L(1) (x) L(1) zero weight dim {zero}"))
}

fn c5_monomials(ctx: &mut Ctx) -> (bool, String) {
    let ks: Vec<usize> = ctx.modules().map(|(k, _, _)| k).collect();
    let mut spaces = 0;
    for k in ks {
        let label = ctx.entries[k].0.label();
        match ctx.bases(k) {
            Ok(list) => {
                for wb in list {
                    spaces += 1;
                    if wb.monomial.determinant.is_zero() {
                        return (false, format!("{label} at {}: singular", wb.nu));
                    }
                }
            }
            Err(x) => return (false, format!("{label}: {x}")),
        }
    }
    (true, format!("{spaces} nonzero weight spaces with nonzero determinant"))
}

fn c6_triangularity(ctx: &mut Ctx) -> (bool, String) {
    let ks: Vec<usize> = ctx.modules().map(|(k, _, _)| k).collect();
    let (mut spaces, mut nontrivial) = (0, 0);
    for k in ks {
        let (label, sl2) = (ctx.entries[k].0.label(), ctx.entries[k].0.family == "sl2");
        let list = match ctx.bases(k) {
            Ok(l) => l,
            Err(x) => return (false, format!("{label}: {x}")),
        };
        for wb in list {
            let t = &wb.transition;
            spaces += 1;
            nontrivial += usize::from(!t.is_identity());
            if !(t.is_unitriangular() && t.is_laurent()) {
                return (false, format!("{label} at {}: {:?}, laurent {}", wb.nu, t.triangularity(), t.is_laurent()));
            }
            if sl2 && !t.is_identity() {
                return (false, format!("{label} at {}: sl2 transition is not the identity", wb.nu));
            }
        }
    }
    (true, format!("{spaces} transition matrices, {nontrivial} not the identity"))
}

/// `1` for `k = 0`, else `v^k + v^-k`.
fn bar_symmetric(k: i64) -> RationalScalar {
    if k == 0 {
        RationalScalar::one()
    } else {
        RationalScalar::from(&Laurent::v_pow(k) + &Laurent::v_pow(-k))
    }
}

/// Exact Gaussian elimination; `Some(x)` iff the system has exactly one
/// solution.
fn unique_solution(mut rows: Vec<Vec<BigRational>>, mut rhs: Vec<BigRational>, unknowns: usize) -> Option<Vec<BigRational>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..unknowns {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(r, p);
        rhs.swap(r, p);
        let inv = BigRational::one() / rows[r][col].clone();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        rhs[r] = &rhs[r] * &inv;
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                let pivot_row = rows[r].clone();
                for (x, p) in rows[i].iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&f * p);
                }
                let d = &f * &rhs[r];
                rhs[i] = &rhs[i] - &d;
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rhs[r..].iter().any(|x| !x.is_zero()) || pivots.len() < unknowns {
        return None;
    }
    let mut x = vec![BigRational::zero(); unknowns];
    for (k, &col) in pivots.iter().enumerate() {
        x[col] = rhs[k].clone();
    }
    Some(x)
}

/// Searches `sum_c a_c(v) m_c` with `a_c = sum_{k<=D} alpha_ck (v^k + v^-k)`:
/// every such vector is bar-invariant, and requiring lattice coordinates in
/// `1_b + v Q[[v]]` pins it down.
fn oracle_vector(cr: &Crystal, wb: &WeightBases, b: usize, degree: i64) -> Result<ModuleVector, String> {
    let lattice = cr.lattice(&wb.nu).ok_or("no lattice")?;
    let d = wb.monomial.vectors.len();
    let funcs: Vec<RationalScalar> = (0..=degree).map(bar_symmetric).collect();
    // lattice coordinates of phi_k m_c, unknown index c * (D + 1) + k
    let mut columns: Vec<Vec<RationalScalar>> = Vec::new();
    for m in &wb.monomial.vectors {
        let lc = lattice.coords(&m.coords);
        for f in &funcs {
            columns.push(lc.iter().map(|x| f * x).collect());
        }
    }
    let lo = columns.iter().flatten().filter_map(RationalScalar::valuation).min().unwrap_or(0).min(0);
    let target = cr.node(b).local;
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for j in 0..d {
        let series: Vec<Vec<BigRational>> = columns.iter().map(|col| col[j].series_coeffs(lo, 0)).collect();
        for (s, deg) in (lo..=0).enumerate() {
            rows.push(series.iter().map(|c| c[s].clone()).collect());
            rhs.push(if deg == 0 && j == target { BigRational::one() } else { BigRational::zero() });
        }
    }
    let alpha = unique_solution(rows, rhs, columns.len()).ok_or("no unique bar-invariant solution in the degree bound")?;
    let mut x = ModuleVector::zero(wb.nu.clone(), d);
    for (c, m) in wb.monomial.vectors.iter().enumerate() {
        for (k, f) in funcs.iter().enumerate() {
            let a = &alpha[c * funcs.len() + k];
            if !a.is_zero() {
                let q = RationalScalar::new(Laurent::constant(a.numer().clone()), Laurent::constant(a.denom().clone())).unwrap();
                let coeff = f * &q;
                x = x.add(&m.scale(&coeff));
            }
        }
    }
    Ok(x)
}

fn c7_canonical_oracle(ctx: &mut Ctx) -> (bool, String) {
    let ks: Vec<usize> = ctx.modules().filter(|(_, c, _)| c.family == "A2").map(|(k, _, _)| k).collect();
    let (mut compared, mut nontrivial) = (0, 0);
    for k in ks {
        let label = ctx.entries[k].0.label();
        let list = match ctx.bases(k) {
            Ok(l) => l.clone(),
            Err(x) => return (false, format!("{label}: {x}")),
        };
        let cr = ctx.entries[k].1.crystal().expect("bases computed");
        for wb in list.iter().filter(|wb| wb.nu[0] <= 2 && wb.nu[1] <= 2) {
            for (pos, &b) in wb.canonical.nodes.iter().enumerate() {
                let x = match oracle_vector(cr, wb, b, 3) {
                    Ok(x) => x,
                    Err(msg) => return (false, format!("{label} at {}: {msg}", wb.nu)),
                };
                if x != wb.canonical.vectors[pos] {
                    return (false, format!("{label} at {}: canonical vector of node {b} differs from the search", wb.nu));
                }
                compared += 1;
                nontrivial += usize::from(x != wb.monomial.vectors[pos]);
            }
        }
    }
    (compared > 0 && nontrivial > 0, format!("{compared} canonical vectors matched, {nontrivial} differ from their monomial"))
}

fn c8_mutation(_: &mut Ctx) -> (bool, String) {
    let r = suites::mutation(None, SEED, 100);
    let a3 = Quiver::linear(3);
    let seq = a3.source_mutation_sequence(2);
    let (_, c) = a3.contracting_cocharacter(&seq).unwrap();
    let hand = seq == vec![0, 1] && c == WeightVector(vec![-1, -1, 0]) && a3.arrow_weights(&c) == vec![0, 1];
    (r.passed && hand, format!("{} checks on 100 orientations, seed {SEED}; A3 towards 3: sequence {:?}, c = {c}", r.checks, seq.iter().map(|k| k + 1).collect::<Vec<_>>()))
}

fn c9_crystal(ctx: &mut Ctx) -> (bool, String) {
    let (ok, note) = fold(ctx.entries.iter().map(|(c, e)| (c.label(), suites::crystal(e))));
    if !ok {
        return (ok, note);
    }
    // tensor rule against the module on the sl2 and A2 tensor corpora, explicitly
    let mut pairs = 0;
    for (c, e) in ctx.tensors().filter(|(c, _)| c.family == "sl2" || c.family == "A2") {
        let t = e.tensor().unwrap().unwrap();
        let (c2, c1) = e.tensor_crystals().unwrap().unwrap();
        match check_tensor_crystal(t, c2, c1, Place::Infinity) {
            Ok(r) if r.passed() => pairs += r.checked,
            Ok(r) => return (false, format!("{}: {}", c.label(), r.mismatches[0])),
            Err(x) => return (false, format!("{}: {x}", c.label())),
        }
    }
    // A2 fundamental: path 1 then 2
    let m = HighestWeightModule::new(&Quiver::linear(2).cartan(), &[1, 0], 3).unwrap();
    let cr = Crystal::enumerate(&m, VertexOrder::natural(2)).unwrap();
    let low = cr.lowest().unwrap();
    let path = cr.len() == 3 && cr.string(low) == [(1, 1), (0, 1)];
    (path, format!("{note}; {pairs} tensor operator checks on sl2 and A2"))
}

fn c10_shadow(ctx: &mut Ctx) -> (bool, String) {
    let mut words = 0;
    for (c, e) in ctx.tensors() {
        let t = e.tensor().unwrap().unwrap();
        let top2 = ModuleVector::highest(t.second());
        let empty = LoweringWord::empty();
        for nu in t.first().weights().into_iter().filter(|nu| nu.height() <= 4.min(t.height_bound())) {
            for w in words_of_content(&nu) {
                let x = tensor_monomial_shadow(t, &empty, &w).unwrap();
                let y = t.pure_tensor(&t.first().word_vector(&w).unwrap(), &top2).unwrap();
                if x != y {
                    return (false, format!("{} word {w}", c.label()));
                }
                words += 1;
            }
        }
        // one-letter first word: Delta(F_i) on the top pair is v^-<i, lambda1> F v (x) v + v (x) F v
        let top1 = ModuleVector::highest(t.first());
        for i in 0..t.rank() {
            let f = LoweringWord(vec![i]);
            let x = tensor_monomial_shadow(t, &f, &empty).unwrap();
            let scale = RationalScalar::from(Laurent::v_pow(-c.lambda[i]));
            let a = t.pure_tensor(&t.first().word_vector(&f).unwrap(), &top2).unwrap().scale(&scale);
            let b = t.pure_tensor(&top1, &t.second().word_vector(&f).unwrap()).unwrap();
            if x != a.add(&b) {
                return (false, format!("{}: Delta(F_{}) on the top pair", c.label(), i + 1));
            }
        }
    }
    (true, format!("{words} words of height <= 4"))
}

fn c11_quasi_r(_: &mut Ctx) -> (bool, String) {
    let t = qcanon_core::repmodule::TensorModule::new(&Quiver::linear(1).cartan(), &[1], &[1], 2).unwrap();
    match quasi_r_matrix(&t, ThetaDirection::LowerFirst) {
        Ok(theta) => {
            let id0 = theta.block(&WeightVector(vec![0])).is_some_and(|b| b.is_identity());
            let unitary = theta.is_unitary();
            (id0 && unitary, format!("unique solve, Theta_0 = Id: {id0}, Theta Theta-bar = Id: {unitary}"))
        }
        Err(x) => (false, format!("downgraded: {x}")),
    }
}

type Criterion = fn(&mut Ctx) -> (bool, String);

fn main() -> ExitCode {
    let list: [(u32, &str, bool, Option<u64>, Criterion); 11] = [
        (1, "relations on the corpus", false, Some(120), c1_relations),
        (2, "psi-twisted relations at v = -1", false, Some(60), c2_twisted),
        (3, "sign-twist identities", false, Some(1), c3_signs),
        (4, "dimension cross-oracle", false, Some(60), c4_dimensions),
        (5, "monomial bases", false, None, c5_monomials),
        (6, "unitriangular transition", false, None, c6_triangularity),
        (7, "canonical basis against the bar-invariant search", false, Some(120), c7_canonical_oracle),
        (8, "mutation to a source", false, None, c8_mutation),
        (9, "crystal mechanics and tensor rule", false, None, c9_crystal),
        (10, "Delta shadow on pure tensors", false, None, c10_shadow),
        (11, "quasi-R block on sl2 L(1) (x) L(1)", true, None, c11_quasi_r),
    ];
    let mut ctx = Ctx::new();
    let mut lines = Vec::new();
    for (id, title, stretch, limit, f) in list {
        let start = Instant::now();
        let (passed, note) = f(&mut ctx);
        let elapsed = start.elapsed();
        let (passed, note) = match limit {
            Some(s) => within(passed, note, elapsed, Duration::from_secs(s)),
            None => (passed, note),
        };
        let line = Line { id, title, stretch, passed, note, elapsed };
        println!(
            "criterion {:>2} {} {:<50} {} ({:.2}s) {}",
            line.id,
            if line.stretch { "[stretch]" } else { "[primary]" },
            line.title,
            if line.passed { "PASS" } else { "FAIL" },
            line.elapsed.as_secs_f64(),
            line.note
        );
        lines.push(line);
    }
    let failed = lines.iter().filter(|l| !l.passed && !l.stretch).count();
    println!("acceptance: {} of {} passed", lines.iter().filter(|l| l.passed).count(), lines.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
