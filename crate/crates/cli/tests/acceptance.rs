//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::Instant;

use findim_cli::commands::{self, RunConfig};
use findim_cli::spec::{load, Loaded};
use findim_core::bounds::evaluate_bounds;
use findim_core::homology::{syzygy_power, Caps, Session};
use findim_core::igusa_todorov::{psi, PhiParams};
use findim_core::layers::Layers;
use findim_core::rep::Representation;
use findim_core::selftest::{run_suite, SuiteConfig, SuiteReport};

const EXAMPLE: &str = include_str!("../examples/five_vertex.alg");

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

struct Golden {
    loaded: Loaded,
    session: Session,
    layers: Layers,
}

impl Golden {
    fn new(p: u32) -> Result<Self, String> {
        let loaded = load(&EXAMPLE.replace("field 2", &format!("field {p}"))).map_err(err)?;
        let mut session = Session::new(&loaded.algebra, 0, Caps::default());
        let layers = Layers::new(&session.classify_simples().map_err(err)?);
        Ok(Golden { loaded, session, layers })
    }

    fn projective(&self, v: usize) -> Representation {
        Representation::projective(&self.loaded.algebra, v)
    }

    fn simple(&self, v: usize) -> Representation {
        Representation::simple(&self.loaded.algebra, v)
    }
}

fn infinite_simples(g: &mut Golden) -> Outcome {
    let c = g.session.classify_simples().map_err(err)?;
    ensure(c.infinite == [0, 3], || format!("𝒮^∞ vertices {:?}", c.infinite))?;
    ensure(c.alpha == 2, || format!("α = {}", c.alpha))?;
    Ok(format!("𝒮^∞ = {{S(1), S(4)}}, α = {}", c.alpha))
}

fn projective_layer_lengths(g: &mut Golden) -> Outcome {
    let lens: Vec<usize> = (0..5).map(|v| g.layers.ll_inf(&g.projective(v))).collect();
    let whole = g.layers.ll_inf(&Representation::regular(&g.loaded.algebra));
    ensure(lens == [3, 2, 2, 2, 3] && whole == 3, || format!("ℓℓ^∞(P) = {lens:?}, ℓℓ^∞(Λ) = {whole}"))?;
    Ok(format!("ℓℓ^∞(P(1..5)) = {lens:?}, ℓℓ^∞(Λ) = {whole}"))
}

fn first_projective_lengths(g: &mut Golden) -> Outcome {
    let p1 = g.projective(0);
    let (rad, soc, dual) = (g.layers.l_inf_rad(&p1), g.layers.l_inf_soc(&p1), g.layers.ll_inf_dual(&p1));
    let r = g.layers.r_inf(&p1).map_err(err)?;
    let ll = g.layers.ll_inf(&p1);
    ensure((rad, soc, dual, r) == (5, 4, 3, 2), || format!("ℓ^∞ {rad}, ℓ_∞ {soc}, ℓℓ_∞ {dual}, r^∞ {r}"))?;
    ensure(ll + r == rad, || format!("{ll} + {r} ≠ {rad}"))?;
    Ok(format!("ℓ^∞ = {rad}, ℓ_∞ = {soc}, ℓℓ_∞ = {dual}, r^∞ = {r}"))
}

fn first_projective_filtration(g: &mut Golden) -> Outcome {
    let p1 = g.projective(0);
    let chain = g.layers.f_chain(&p1);
    ensure(chain.len() == 4, || format!("F-chain of length {}", chain.len()))?;
    let fs = p1.submodule(&chain[1]).0;
    let d = g.session.register(&fs).map_err(err)?;
    let mut sizes: Vec<usize> = d
        .parts
        .iter()
        .flat_map(|&(id, k)| std::iter::repeat(g.session.registry.module(id).total_dim()).take(k))
        .collect();
    sizes.sort();
    ensure(sizes == [2, 4], || format!("FS(P(1)) summand dims {sizes:?}"))?;
    let f2 = p1.submodule(&chain[2]).0;
    let s1 = g.simple(0);
    ensure(g.session.registry.is_isomorphic(&f2, &s1.power(3)).map_err(err)?, || "F²S(P(1)) ≇ S(1)³".into())?;
    ensure(chain[3].is_zero(), || "F³S(P(1)) ≠ 0".into())?;
    let qg = g.layers.qg_chain(&p1);
    ensure(qg.len() > 2, || "QG chain too short".into())?;
    ensure(g.session.registry.is_isomorphic(&qg[2], &s1).map_err(err)?, || "QG²(P(1)) ≇ S(1)".into())?;
    Ok("FS(P(1)) = 2 ⊕ 4, F²S ≅ S(1)³, F³S = 0, QG²(P(1)) ≅ S(1)".into())
}

fn radical_of_third(g: &mut Golden) -> Outcome {
    let p3 = g.projective(2);
    let rad = p3.submodule(&p3.radical()).0;
    let iso = g.session.registry.is_isomorphic(&rad, &g.projective(3)).map_err(err)?;
    ensure(iso, || "rad P(3) ≇ P(4)".into())?;
    Ok("P(4) ≅ rad P(3)".into())
}

fn psi_of_sigma_syzygies(g: &mut Golden) -> Outcome {
    let alg = g.loaded.algebra.clone();
    let sigma = g.simple(0).direct_sum(&g.simple(3));
    let m = syzygy_power(&alg, &sigma, 3).direct_sum(&syzygy_power(&alg, &sigma, 4));
    let r = psi(&mut g.session, &m, PhiParams::default()).map_err(err)?;
    ensure(r.phi.stable && r.psi == 0, || format!("Ψ = {} (stable: {})", r.psi, r.phi.stable))?;
    let d = g.session.register(&m).map_err(err)?;
    let np = g.session.registry.non_projective(&d);
    let ids: Vec<_> = np.ids().collect();
    let s1 = g.simple(0);
    let t = g.loaded.modules["T"].clone();
    let mut has_s1 = false;
    let mut has_t = false;
    for id in ids {
        let x = g.session.registry.module(id).clone();
        has_s1 |= g.session.registry.is_isomorphic(&x, &s1).map_err(err)?;
        if x.total_dim() == 2 && x.top_dims() == [1, 0, 0, 0, 0] && x.socle_dims() == [1, 0, 0, 0, 0] {
            has_t |= g.session.registry.is_isomorphic(&x, &t).map_err(err)?;
        }
    }
    ensure(has_s1 && has_t, || format!("S(1) present: {has_s1}, T present: {has_t}"))?;
    Ok(format!("Ψ = {}, summands include S(1) and T", r.psi))
}

fn main_bound(g: &mut Golden) -> Outcome {
    let b = evaluate_bounds(&mut g.session, PhiParams::default()).map_err(err)?;
    ensure(b.bound_main == Some(5), || format!("bound {:?}", b.bound_main))?;
    let cfg = RunConfig { seed: 0, caps: Caps::default(), window: 8 };
    let out = commands::bounds(&mut g.session, &g.loaded, &cfg).map_err(err)?;
    ensure(out.text.contains("fin.dim Λ ≤ 5"), || out.text.clone())?;
    Ok("fin.dim Λ ≤ 5".into())
}

type Criterion = fn(&mut Golden) -> Outcome;

const GOLDEN: [Criterion; 7] = [
    infinite_simples,
    projective_layer_lengths,
    first_projective_lengths,
    first_projective_filtration,
    radical_of_third,
    psi_of_sigma_syzygies,
    main_bound,
];

fn guarded<T>(f: impl FnOnce() -> Result<T, String>) -> Result<T, String> {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(r) => r,
        Err(p) => Err(p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into())),
    }
}

fn golden_over(p: u32) -> Vec<Outcome> {
    let mut g = match guarded(|| Golden::new(p)) {
        Ok(g) => g,
        Err(e) => return vec![Err(e); GOLDEN.len()],
    };
    GOLDEN.iter().map(|c| guarded(|| c(&mut g))).collect()
}

fn suite_group(r: &SuiteReport, prefixes: &[&str], min_passed: usize) -> Outcome {
    let mut passed = 0;
    let mut skipped = 0;
    let mut failed = 0;
    let mut failures = Vec::new();
    for p in prefixes {
        let t = r.group(p);
        passed += t.passed;
        skipped += t.skipped;
        failed += t.failed;
        failures.extend(t.failures);
    }
    ensure(failed == 0, || format!("{failed} failed: {}", failures.join("; ")))?;
    ensure(passed >= min_passed, || format!("only {passed} checks passed"))?;
    Ok(format!("{passed} passed, {skipped} skipped, 0 failed"))
}

fn determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_findim");
    let file = format!("{}/examples/five_vertex.alg", env!("CARGO_MANIFEST_DIR"));
    let run = || {
        Command::new(bin).args(["--format", "json", "--seed", "7", "report", &file]).output().map_err(err)
    };
    let (a, b) = (run()?, run()?);
    ensure(a.status.code() == Some(0), || format!("exit {:?}: {}", a.status.code(), String::from_utf8_lossy(&a.stderr)))?;
    ensure(a.stdout == b.stdout, || "outputs differ".into())?;
    ensure(!a.stdout.is_empty(), || "empty output".into())?;
    Ok(format!("two runs, {} identical bytes", a.stdout.len()))
}

fn main() {
    let start = Instant::now();
    let mut results: Vec<(usize, &str, Outcome)> = Vec::new();

    let gf2 = golden_over(2);
    let names = [
        "infinite simples and α",
        "ℓℓ^∞ of projectives and Λ",
        "lengths of P(1)",
        "F/S/QG chain of P(1)",
        "P(4) ≅ rad P(3)",
        "Ψ of Ω³Σ ⊕ Ω⁴Σ",
        "main fin.dim bound",
    ];
    for (i, r) in gf2.iter().enumerate() {
        results.push((i + 1, names[i], r.clone()));
    }

    let cfg = SuiteConfig::default();
    let suite = guarded(|| run_suite(&cfg).map_err(err));
    let suite_line = |f: &dyn Fn(&SuiteReport) -> Outcome| match &suite {
        Ok(r) => f(r),
        Err(e) => Err(e.clone()),
    };
    results.push((
        8,
        "functor laws and clauses",
        suite_line(&|r| {
            ensure(r.algebras >= 20 && r.modules >= 200, || format!("{} algebras, {} modules", r.algebras, r.modules))?;
            suite_group(r, &["functor."], r.modules).map(|s| format!("{} algebras, {} modules: {s}", r.algebras, r.modules))
        }),
    ));
    results.push((
        9,
        "ℓℓ^∞ = ℓℓ_∞ and duality",
        suite_line(&|r| suite_group(r, &["layers.top_equals_socle_length", "layers.duality"], 2 * r.modules)),
    ));
    results.push((10, "ℓℓ^∞ + r^∞ = ℓ^∞", suite_line(&|r| suite_group(r, &["layers.radical_count_identity"], 1))));
    results.push((
        11,
        "Igusa–Todorov axioms",
        suite_line(&|r| {
            ensure(r.sequences >= 200, || format!("{} sequences", r.sequences))?;
            let t = r.group("it.");
            let rate = t.skipped as f64 / t.total().max(1) as f64;
            let s = suite_group(r, &["it."], 1)?;
            ensure(rate < 0.10, || format!("skip rate {:.1}%", 100.0 * rate))?;
            Ok(format!("{} sequences: {s}, skip rate {:.1}%", r.sequences, 100.0 * rate))
        }),
    ));
    results.push((
        12,
        "truncated fin.dim oracle",
        suite_line(&|r| {
            let t = r.group("findim.truncated_oracle");
            ensure(t.skipped == 0, || format!("{} skipped", t.skipped))?;
            suite_group(r, &["findim.truncated_oracle"], 1).map(|s| format!("{s} (algebras with ℓℓ^∞(Λ) ≤ 3)"))
        }),
    ));
    results.push((13, "byte-identical reports", guarded(determinism)));

    let gf3 = golden_over(3);
    let gf5 = golden_over(5);
    let cross = (|| {
        for (i, ((a, b), c)) in gf2.iter().zip(&gf3).zip(&gf5).enumerate() {
            match (a, b, c) {
                (Ok(x), Ok(y), Ok(z)) if x == y && y == z => {}
                _ => return Err(format!("criterion {}: GF(2) {a:?}, GF(3) {b:?}, GF(5) {c:?}", i + 1)),
            }
        }
        Ok("criteria 1–7 identical over GF(2), GF(3), GF(5)".to_string())
    })();
    results.push((14, "cross-characteristic", cross));

    let mut failed = 0;
    for (n, name, r) in &results {
        match r {
            Ok(detail) => println!("criterion {n:>2} PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {n:>2} FAIL  {name}: {detail}");
            }
        }
    }
    println!("{} passed, {failed} failed in {:.1?}", results.len() - failed, start.elapsed());
    if failed > 0 {
        std::process::exit(1);
    }
}
