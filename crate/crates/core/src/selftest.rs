//! Property suites over an algebra: functor laws for `K, Q, S, C`, the
//! layer-length identities, and the Igusa–Todorov inequalities on short exact
//! sequences `0 → A → B → B/A → 0`. Results are tallied per named check.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::BoundAlgebra;
use crate::bounds::{evaluate_bounds, truncated_findim};
use crate::decomp::Decomposition;
use crate::error::{Error, Result};
use crate::hom::syzygy;
use crate::homology::{Caps, PdStatus, Session, SimpleClassification};
use crate::igusa_todorov::{phi, psi, psi_of_decomposition, PhiParams};
use crate::layers::Layers;
use crate::linalg::PrimeField;
use crate::random::{monomial_algebra, random_module, random_projective, random_submodule, AlgebraShape};
use crate::rep::{ModuleMap, Representation};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    /// The first few failure descriptions.
    pub failures: Vec<String>,
}

impl Tally {
    pub fn total(&self) -> usize {
        self.passed + self.failed + self.skipped
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub checks: BTreeMap<String, Tally>,
    pub algebras: usize,
    pub modules: usize,
    pub sequences: usize,
}

const KEPT_FAILURES: usize = 5;

impl SuiteReport {
    fn tally(&mut self, name: &str) -> &mut Tally {
        self.checks.entry(name.to_string()).or_default()
    }

    pub fn pass(&mut self, name: &str) {
        self.tally(name).passed += 1;
    }

    pub fn skip(&mut self, name: &str) {
        self.tally(name).skipped += 1;
    }

    pub fn fail(&mut self, name: &str, detail: String) {
        let t = self.tally(name);
        t.failed += 1;
        if t.failures.len() < KEPT_FAILURES {
            t.failures.push(detail);
        }
    }

    pub fn check(&mut self, name: &str, ok: bool, detail: impl FnOnce() -> String) {
        if ok {
            self.pass(name)
        } else {
            self.fail(name, detail())
        }
    }

    /// Combined tally of the checks whose name starts with `prefix`.
    pub fn group(&self, prefix: &str) -> Tally {
        let mut out = Tally::default();
        for (name, t) in self.checks.range(prefix.to_string()..) {
            if !name.starts_with(prefix) {
                break;
            }
            out.passed += t.passed;
            out.failed += t.failed;
            out.skipped += t.skipped;
            out.failures.extend(t.failures.iter().map(|f| format!("{name}: {f}")));
        }
        out
    }

    pub fn failed(&self) -> usize {
        self.checks.values().map(|t| t.failed).sum()
    }

    pub fn merge(&mut self, other: SuiteReport) {
        for (name, t) in other.checks {
            let mine = self.tally(&name);
            mine.passed += t.passed;
            mine.failed += t.failed;
            mine.skipped += t.skipped;
            for f in t.failures {
                if mine.failures.len() < KEPT_FAILURES {
                    mine.failures.push(f);
                }
            }
        }
        self.algebras += other.algebras;
        self.modules += other.modules;
        self.sequences += other.sequences;
    }
}

/// Per-algebra data shared by the checks.
pub struct Context {
    pub session: Session,
    pub classification: SimpleClassification,
    pub layers: Layers,
    pub opposite: BoundAlgebra,
    pub ll_algebra: usize,
    pub params: PhiParams,
}

impl Context {
    pub fn new(alg: &BoundAlgebra, seed: u64, caps: Caps, params: PhiParams) -> Result<Self> {
        let mut session = Session::new(alg, seed, caps);
        let classification = session.classify_simples()?;
        let layers = Layers::new(&classification);
        let ll_algebra = layers.ll_inf(&Representation::regular(alg));
        Ok(Context { opposite: alg.opposite()?, session, classification, layers, ll_algebra, params })
    }

    pub fn algebra(&self) -> &BoundAlgebra {
        self.session.algebra()
    }

    fn alpha(&self) -> usize {
        self.classification.alpha
    }

    fn pd(&mut self, m: &Representation) -> Result<PdStatus> {
        self.session.pd(m)
    }

    /// `Ω^n` of a decomposition, class by class; `None` once the syzygies
    /// outgrow the dimension cap.
    fn syzygy_classes(&mut self, d: &Decomposition, n: usize) -> Result<Option<Decomposition>> {
        let mut d = d.clone();
        for _ in 0..n {
            let size: usize = d.parts.iter().map(|&(id, k)| k * self.session.registry.module(id).total_dim()).sum();
            if size > self.session.caps.max_total_dim {
                return Ok(None);
            }
            d = self.session.syzygy_power_of(&d, 1)?;
        }
        Ok(Some(d))
    }

    /// Non-projective part of `Ω^n M`, as a multiset of classes.
    fn stable_syzygy(&mut self, m: &Representation, n: usize) -> Result<Option<Decomposition>> {
        let d = self.session.register(m)?;
        Ok(self.syzygy_classes(&d, n)?.map(|d| self.session.registry.non_projective(&d)))
    }

    fn psi_of(&mut self, d: Option<&Decomposition>) -> Result<Option<usize>> {
        let Some(d) = d else { return Ok(None) };
        match psi_of_decomposition(&mut self.session, d, self.params) {
            Ok(r) if r.phi.stable => Ok(Some(r.psi)),
            Ok(_) | Err(Error::RaiseCaps(_) | Error::NoPlateau { .. }) => Ok(None),
            Err(e) => Err(e),
        }
    }

    fn psi(&mut self, m: &Representation) -> Result<Option<usize>> {
        match psi(&mut self.session, m, self.params) {
            Ok(r) if r.phi.stable => Ok(Some(r.psi)),
            Ok(_) | Err(Error::RaiseCaps(_) | Error::NoPlateau { .. }) => Ok(None),
            Err(e) => Err(e),
        }
    }
}

fn in_add_infinite(l: &Layers, dims: &[usize]) -> bool {
    dims.iter().enumerate().all(|(v, &d)| d == 0 || l.is_infinite_vertex(v))
}

fn same_finiteness(a: &PdStatus, b: &PdStatus) -> Option<bool> {
    if a.is_unknown() || b.is_unknown() {
        None
    } else {
        Some(a.is_finite() == b.is_finite())
    }
}

fn record_opt(report: &mut SuiteReport, name: &str, ok: Option<bool>, detail: impl FnOnce() -> String) {
    match ok {
        Some(ok) => report.check(name, ok, detail),
        None => report.skip(name),
    }
}

/// Functor laws for `K, Q, S, C` on one module.
pub fn check_functors<R: Rng>(
    ctx: &mut Context,
    m: &Representation,
    rng: &mut R,
    report: &mut SuiteReport,
) -> Result<()> {
    let l = ctx.layers.clone();
    let dims = || format!("dims {:?}", m.dims());
    let (k, _) = l.k(m);
    let (q, _) = l.q(m);
    let (s, _) = l.s(m);
    let (c, _) = l.c(m);

    report.check("functor.q_idempotent", l.q(&q).0.dims() == q.dims(), dims);
    report.check("functor.k_idempotent", l.k(&k).0.dims() == k.dims(), dims);
    report.check("functor.kq_zero", l.k(&q).0.is_zero(), dims);
    report.check("functor.qk_zero", l.q(&k).0.is_zero(), dims);
    report.check("functor.s_idempotent", l.s(&s).0.dims() == s.dims(), dims);
    report.check("functor.c_idempotent", l.c(&c).0.dims() == c.dims(), dims);
    report.check("functor.cs_zero", l.c(&s).0.is_zero(), dims);
    report.check("functor.sc_zero", l.s(&c).0.is_zero(), dims);

    let filtered = l.is_finitely_filtered(m);
    report.check("functor.q_zero_iff_filtered", q.is_zero() == filtered, dims);
    report.check("functor.s_zero_iff_filtered", s.is_zero() == filtered, dims);
    if in_add_infinite(&l, &m.socle_dims()) {
        report.check("functor.q_fixes_infinite_socle", q.dims() == m.dims(), dims);
    }
    if in_add_infinite(&l, &m.top_dims()) {
        report.check("functor.s_fixes_infinite_top", s.dims() == m.dims(), dims);
    }
    if !filtered {
        report.check("functor.q_socle_infinite", in_add_infinite(&l, &q.socle_dims()), dims);
        report.check("functor.s_top_infinite", in_add_infinite(&l, &s.top_dims()), dims);
    }

    let pm = ctx.pd(m)?;
    let pq = ctx.pd(&q)?;
    let ps = ctx.pd(&s)?;
    record_opt(report, "functor.q_preserves_pd_finiteness", same_finiteness(&pm, &pq), dims);
    record_opt(report, "functor.s_preserves_pd_finiteness", same_finiteness(&pm, &ps), dims);
    let alpha = ctx.alpha();
    for (name, other) in [("functor.q_pd_bound", &pq), ("functor.s_pd_bound", &ps)] {
        let ok = match (&pm, other) {
            (PdStatus::Finite(a), PdStatus::Finite(b)) => Some(*a <= alpha.max(*b)),
            (PdStatus::Unknown(_), _) | (_, PdStatus::Unknown(_)) => None,
            _ => Some(true),
        };
        record_opt(report, name, ok, dims);
    }
    let om = ctx.stable_syzygy(m, alpha + 1)?;
    let oq = ctx.stable_syzygy(&q, alpha + 1)?;
    record_opt(report, "functor.q_stable_syzygy", om.as_ref().zip(oq.as_ref()).map(|(a, b)| a == b), || {
        format!("{} {om:?} vs {oq:?}", dims())
    });
    let om = ctx.stable_syzygy(m, alpha)?;
    let os = ctx.stable_syzygy(&s, alpha)?;
    record_opt(report, "functor.s_stable_syzygy", om.as_ref().zip(os.as_ref()).map(|(a, b)| a == b), || {
        format!("{} {om:?} vs {os:?}", dims())
    });

    // monomorphisms and epimorphisms
    let gens = rng.gen_range(1..=2);
    let u = random_submodule(rng, m, gens);
    let (sub, incl) = m.submodule(&u);
    let (quo, proj) = m.quotient(&u);
    report.check("functor.q_preserves_mono", l.q_map(&incl, &sub, m).is_injective(), dims);
    report.check("functor.s_preserves_mono", l.s_map(&incl, &sub, m).is_injective(), dims);
    report.check("functor.q_preserves_epi", l.q_map(&proj, m, &quo).is_surjective(), dims);
    report.check("functor.s_preserves_epi", l.s_map(&proj, m, &quo).is_surjective(), dims);
    for (f, src, dst) in [(&incl, &sub, m), (&proj, m, &quo)] {
        let ok = is_natural_square(&l, f, src, dst);
        report.check("functor.naturality", ok, dims);
    }

    // K(M) is the largest finitely filtered submodule; S(M) the smallest
    // submodule with finitely filtered quotient
    if l.is_finitely_filtered(&sub) {
        report.check("functor.k_maximal", l.k_sub(m).contains(&u), dims);
    }
    if l.is_finitely_filtered(&quo) {
        report.check("functor.s_minimal", u.contains(&l.s_sub(m)), dims);
    }
    Ok(())
}

/// `Q(f)∘π_M = π_N∘f` and `ι_N∘S(f) = f∘ι_M`.
fn is_natural_square(l: &Layers, f: &ModuleMap, m: &Representation, n: &Representation) -> bool {
    let (_, pm) = l.q(m);
    let (_, pn) = l.q(n);
    let (_, im) = l.s(m);
    let (_, in_) = l.s(n);
    l.q_map(f, m, n).compose(&pm) == pn.compose(f) && in_.compose(&l.s_map(f, m, n)) == f.compose(&im)
}

/// Layer-length identities on one module.
pub fn check_layers<R: Rng>(
    ctx: &mut Context,
    m: &Representation,
    rng: &mut R,
    report: &mut SuiteReport,
) -> Result<()> {
    let l = ctx.layers.clone();
    let dims = || format!("dims {:?}", m.dims());
    let ll = l.ll_inf(m);
    let ll_dual = l.ll_inf_dual(m);
    report.check("layers.top_equals_socle_length", ll == ll_dual, || format!("{} {ll} vs {ll_dual}", dims()));

    let dm = m.dual();
    let ll_of_dual = l.ll_inf(&dm);
    report.check(
        "layers.duality",
        dm.satisfies_relations(&ctx.opposite) && ll_of_dual == ll_dual,
        || format!("{} {ll_of_dual} vs {ll_dual}", dims()),
    );

    match l.r_inf(m) {
        Ok(r) => {
            let lr = l.l_inf_rad(m);
            report.check("layers.radical_count_identity", ll + r == lr, || format!("{} {ll}+{r} vs {lr}", dims()));
        }
        Err(e) => report.fail("layers.radical_count_identity", format!("{} {e}", dims())),
    }
    report.check("layers.bounded_by_loewy", ll <= l.l_inf_rad(m) && l.l_inf_rad(m) <= m.loewy_length(), dims);
    report.check("layers.bounded_by_algebra", ll <= ctx.ll_algebra, dims);

    if ll > 0 {
        let z = l.zeta(m)?;
        report.check("layers.zeta_increasing", z.windows(2).all(|w| w[0] < w[1]), dims);
        let chain = l.f_chain(m);
        let series = m.radical_series();
        let layers = m.radical_layers();
        let ok = z.iter().enumerate().all(|(i, &zi)| {
            i <= zi && l.s_within(m, &series[zi]).contains(&chain[i]) && l.layer_is_infinite(&layers[zi])
        });
        report.check("layers.zeta_clauses", ok, dims);
        let phi = l.phi(m)?;
        let s_m = l.s_sub(m);
        let ok = (0..=phi).all(|j| l.s_within(m, &series[j]) == s_m)
            && (0..phi).all(|i| !l.layer_is_infinite(&layers[i]));
        report.check("layers.phi_clauses", ok, dims);
    }

    // monotonicity
    let gens = rng.gen_range(1..=2);
    let u = random_submodule(rng, m, gens);
    let (sub, _) = m.submodule(&u);
    let (quo, _) = m.quotient(&u);
    report.check("layers.mono_monotone", l.ll_inf(&sub) <= ll, dims);
    report.check("layers.epi_monotone", l.ll_inf(&quo) <= ll, dims);
    let other = random_module(rng, ctx.algebra(), 6);
    let sum = m.direct_sum(&other);
    report.check("layers.sum_is_max", l.ll_inf(&sum) == ll.max(l.ll_inf(&other)), dims);
    report.check("layers.s_preserves_length", l.ll_inf(&l.s(m).0) == ll, dims);
    if ll > 0 && in_add_infinite(&l, &m.top_dims()) {
        let rad = m.submodule(&m.radical()).0;
        report.check("layers.radical_drops_one", l.ll_inf(&rad) + 1 == ll, dims);
    }
    if ll > 0 && in_add_infinite(&l, &m.socle_dims()) {
        let top = m.quotient(&m.socle()).0;
        report.check("layers.socle_quotient_drops_one", l.ll_inf(&top) + 1 == ll, dims);
    }
    if ll == 1 {
        let q = l.q(m).0;
        let inf = l.infinite_vertices();
        let ok = inf.iter().all(|&v| q.socle_dims()[v] == m.factor_count(&[v]))
            && in_add_infinite(&l, &q.socle_dims());
        report.check("layers.length_one_socle", ok, dims);
        let pd = ctx.pd(m)?;
        record_opt(report, "layers.length_one_infinite_pd", (!pd.is_unknown()).then(|| pd.is_infinite()), dims);
    }
    if !l.infinite_vertices().is_empty() {
        let s = l.s(m).0;
        let om = syzygy(ctx.algebra(), &s);
        report.check("layers.syzygy_of_s_drops", l.ll_inf(&om) < ctx.ll_algebra, dims);
    }
    Ok(())
}

/// Igusa–Todorov inequalities for `0 → A → B → C → 0` with `A` a random
/// submodule of `B`. Unknown Ψ or pd values count as skips.
pub fn check_sequence<R: Rng>(
    ctx: &mut Context,
    b: &Representation,
    rng: &mut R,
    report: &mut SuiteReport,
) -> Result<()> {
    let alg = ctx.algebra().clone();
    let gens = rng.gen_range(1..=2);
    let u = random_submodule(rng, b, gens);
    let a = b.submodule(&u).0;
    let c = b.quotient(&u).0;
    let dims = || format!("dims {:?} -> {:?} -> {:?}", a.dims(), b.dims(), c.dims());
    let pb = ctx.pd(b)?;
    let pc = ctx.pd(&c)?;
    let psi_b = ctx.psi(b)?;

    let ok = match (&pb, psi_b) {
        (PdStatus::Unknown(_), _) | (_, None) => None,
        (PdStatus::Finite(n), Some(p)) => Some(*n == p),
        (PdStatus::Infinite(_), Some(p)) => {
            let d = ctx.session.register(b)?;
            Some(d.count() != 1 || p == 0)
        }
    };
    record_opt(report, "it.finite_pd_and_indecomposable", ok, dims);

    let psi_bb = ctx.psi(&b.direct_sum(b))?;
    record_opt(report, "it.additive_closure", psi_b.zip(psi_bb).map(|(x, y)| x == y), dims);

    let psi_ab = ctx.psi(&a.direct_sum(b))?;
    let psi_a = ctx.psi(&a)?;
    record_opt(report, "it.monotone", psi_a.zip(psi_ab).map(|(x, y)| x <= y), dims);

    let p = random_projective(rng, &alg);
    let psi_bp = ctx.psi(&b.direct_sum(&p))?;
    record_opt(report, "it.projective_invariant", psi_b.zip(psi_bp).map(|(x, y)| x == y), dims);

    let ok = match pc {
        PdStatus::Finite(n) => psi_ab.map(|x| n <= x + 1),
        PdStatus::Infinite(_) => Some(true),
        PdStatus::Unknown(_) => None,
    };
    record_opt(report, "it.cokernel_bound", ok, dims);

    let ok = match pb {
        PdStatus::Finite(n) => {
            let da = ctx.session.register(&a)?;
            let dc = ctx.session.register(&c)?;
            let oa = ctx.syzygy_classes(&da, 1)?;
            let oc = ctx.syzygy_classes(&dc, 2)?;
            let x = oa.zip(oc).map(|(x, y)| x.union(&y));
            ctx.psi_of(x.as_ref())?.map(|p| n <= 2 + p)
        }
        PdStatus::Infinite(_) => Some(true),
        PdStatus::Unknown(_) => None,
    };
    record_opt(report, "it.middle_term_bound", ok, dims);

    let db = ctx.session.register(b)?;
    let ob = ctx.syzygy_classes(&db, 1)?;
    let psi_omega = ctx.psi_of(ob.as_ref())?;
    record_opt(report, "it.syzygy_step", psi_b.zip(psi_omega).map(|(x, y)| x <= 1 + y), dims);

    match phi(&mut ctx.session, b, ctx.params) {
        Ok(r) => report.check("it.ranks_non_increasing", r.ranks.windows(2).all(|w| w[0] >= w[1]), dims),
        Err(Error::RaiseCaps(_) | Error::NoPlateau { .. }) => report.skip("it.ranks_non_increasing"),
        Err(e) => return Err(e),
    }
    Ok(())
}

/// The bound for `fin.dim Λ` against the largest finite pd among modules of
/// dimension `≤ max_dim` (only when `ℓℓ^∞(Λ) ≤ 3`).
pub fn check_truncated_findim(
    ctx: &mut Context,
    max_dim: usize,
    max_cocycles: u64,
    report: &mut SuiteReport,
) -> Result<()> {
    let bounds = evaluate_bounds(&mut ctx.session, ctx.params)?;
    if bounds.ll_inf_algebra > 3 {
        return Ok(());
    }
    let Some(bound) = bounds.bound_main else {
        report.skip("findim.truncated_oracle");
        return Ok(());
    };
    match truncated_findim(&mut ctx.session, max_dim, max_cocycles) {
        Ok(t) => report.check("findim.truncated_oracle", t.max_finite_pd <= bound, || {
            format!("max finite pd {} > bound {bound}", t.max_finite_pd)
        }),
        Err(Error::Uncertified(msg)) => report.fail("findim.truncated_oracle", msg),
        Err(e) => return Err(e),
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub algebras: usize,
    pub modules_per_algebra: usize,
    pub sequences_per_algebra: usize,
    pub max_module_dim: usize,
    /// `0` disables the truncated `fin.dim` comparison.
    pub oracle_dim: usize,
    pub max_cocycles: u64,
    pub caps: Caps,
    pub params: PhiParams,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            algebras: 20,
            modules_per_algebra: 10,
            sequences_per_algebra: 10,
            max_module_dim: 10,
            oracle_dim: 5,
            max_cocycles: 1 << 16,
            caps: Caps::default(),
            params: PhiParams::default(),
        }
    }
}

/// All property checks on one algebra.
pub fn check_algebra(alg: &BoundAlgebra, cfg: &SuiteConfig, seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport { algebras: 1, ..SuiteReport::default() };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ctx = match Context::new(alg, seed, cfg.caps, cfg.params) {
        Ok(c) => c,
        Err(Error::RaiseCaps(_)) => {
            report.skip("suite.classification");
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    for _ in 0..cfg.modules_per_algebra {
        let m = random_module(&mut rng, alg, cfg.max_module_dim);
        check_functors(&mut ctx, &m, &mut rng, &mut report)?;
        check_layers(&mut ctx, &m, &mut rng, &mut report)?;
        report.modules += 1;
    }
    for _ in 0..cfg.sequences_per_algebra {
        let b = random_module(&mut rng, alg, cfg.max_module_dim);
        check_sequence(&mut ctx, &b, &mut rng, &mut report)?;
        report.sequences += 1;
    }
    if cfg.oracle_dim > 0 {
        check_truncated_findim(&mut ctx, cfg.oracle_dim, cfg.max_cocycles, &mut report)?;
    }
    Ok(report)
}

/// Random admissible monomial algebras over GF(2) (≤ 4 vertices, ≤ 6 arrows,
/// ≤ 2 parallel arrows, dim ≤ 24), each run through [`check_algebra`].
/// The parallel-arrow cap keeps wild algebras such as four loops out of the
/// truncated enumeration, which would otherwise take minutes per algebra.
pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut report = SuiteReport::default();
    let shape = AlgebraShape { max_dim: 24, max_parallel: 2, ..AlgebraShape::default() };
    for i in 0..cfg.algebras {
        let alg = monomial_algebra(&mut rng, PrimeField::gf2(), shape);
        report.merge(check_algebra(&alg, cfg, cfg.seed.wrapping_mul(1000).wrapping_add(i as u64))?);
    }
    Ok(report)
}
