//! Command implementations. Each returns a JSON-serializable value plus a
//! text rendering and whether any Unknown was produced.

use std::fmt::Write;

use anyhow::{Context as _, Result};
use findim_core::bounds::evaluate_bounds;
use findim_core::error::Error as CoreError;
use findim_core::homology::{syzygy_power, Caps, PdStatus, Session};
use findim_core::igusa_todorov::{psi, PhiParams};
use findim_core::layers::Layers;
use findim_core::rep::Representation;
use findim_core::selftest::{check_algebra, SuiteConfig, SuiteReport};
use serde::{Deserialize, Serialize};

use crate::expr::{parse_module, parse_modules};
use crate::report::{
    render_summands, summands, AlgebraInfo, Bounds, LayerRow, Pd, PsiRow, Report, Settings, SimpleRow, Summand,
    Value, SCHEMA,
};
use crate::spec::Loaded;

/// Output of one command.
pub struct Outcome {
    pub json: serde_json::Value,
    pub text: String,
    pub unknown: bool,
    /// Failed property checks (selftest only).
    pub failed: bool,
}

impl Outcome {
    fn new<T: Serialize>(value: &T, text: String, unknown: bool) -> Result<Self> {
        Ok(Outcome { json: serde_json::to_value(value)?, text, unknown, failed: false })
    }
}

/// Run settings after merging file config and flags.
#[derive(Clone, Copy, Debug)]
pub struct RunConfig {
    pub seed: u64,
    pub caps: Caps,
    pub window: usize,
}

impl RunConfig {
    /// The step cap also bounds the Φ orbit.
    pub fn params(&self) -> PhiParams {
        PhiParams { window: self.window, cap: self.caps.max_steps }
    }

    fn settings(&self) -> Settings {
        Settings {
            seed: self.seed,
            max_steps: self.caps.max_steps,
            max_total_dim: self.caps.max_total_dim,
            window: self.window,
        }
    }
}

fn vertex_names(loaded: &Loaded) -> Vec<String> {
    loaded.algebra.quiver().vertices().to_vec()
}

/// Layers from the simple classification, or `None` when some simple's pd
/// is unresolved under the caps.
fn layers(session: &mut Session) -> Result<Option<(Layers, findim_core::homology::SimpleClassification)>> {
    match session.classify_simples() {
        Ok(c) => Ok(Some((Layers::new(&c), c))),
        Err(CoreError::RaiseCaps(_)) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn layer_row(layers: &Layers, name: String, m: &Representation) -> Result<LayerRow> {
    let p = layers.profile(m)?;
    Ok(LayerRow {
        module: name,
        dims: m.dims().to_vec(),
        ll_inf: p.ll_inf_top,
        ll_inf_socle: p.ll_inf_soc,
        l_inf_radical: p.l_inf_rad,
        l_inf_socle: p.l_inf_soc,
        r_inf: p.r_inf,
        zeta: p.zeta,
        phi: p.phi_first,
    })
}

fn psi_row(session: &mut Session, modules: &[String], m: &Representation, params: PhiParams) -> Result<PsiRow> {
    let dims = m.dims().to_vec();
    match psi(session, m, params) {
        Ok(r) => {
            let (phi, psi) = if r.phi.stable {
                (Value::Known { value: r.phi.phi }, Value::Known { value: r.psi })
            } else {
                let explored = r.phi.ranks.len();
                (Value::Unknown { explored }, Value::Unknown { explored })
            };
            Ok(PsiRow {
                modules: modules.to_vec(),
                dims,
                phi,
                psi,
                ranks: r.phi.ranks,
                verified_window: r.phi.verified_window,
            })
        }
        Err(e @ (CoreError::RaiseCaps(_) | CoreError::NoPlateau { .. })) => {
            let (explored, ranks) = match e {
                CoreError::RaiseCaps(d) => (d, Vec::new()),
                CoreError::NoPlateau { ranks, .. } => (ranks.len(), ranks),
                _ => unreachable!(),
            };
            Ok(PsiRow {
                modules: modules.to_vec(),
                dims,
                phi: Value::Unknown { explored },
                psi: Value::Unknown { explored },
                ranks,
                verified_window: 0,
            })
        }
        Err(e) => Err(e.into()),
    }
}

pub fn report(session: &mut Session, loaded: &Loaded, cfg: &RunConfig, psi_modules: &[String]) -> Result<Outcome> {
    let alg = loaded.algebra.clone();
    let names = vertex_names(loaded);
    let mut simples = Vec::new();
    for (v, name) in names.iter().enumerate() {
        let st = session.pd(&Representation::simple(&alg, v))?;
        simples.push(SimpleRow { vertex: name.clone(), pd: Pd::from_status(session, &st) });
    }
    let mut unknown = simples.iter().any(|s| s.pd.is_unknown());

    let mut r = Report {
        schema: SCHEMA,
        algebra: AlgebraInfo {
            field: alg.field().modulus(),
            vertices: names.clone(),
            arrows: alg.quiver().arrow_count(),
            relations: alg.relations().len(),
            dim: alg.dim(),
        },
        settings: cfg.settings(),
        simples,
        alpha: Value::Unknown { explored: 0 },
        infinite_simples: None,
        projectives: None,
        ll_inf_algebra: None,
        psi: Vec::new(),
        bounds: None,
        unknowns_present: false,
    };
    if !psi_modules.is_empty() {
        let m = parse_modules(loaded, psi_modules)?;
        let row = psi_row(session, psi_modules, &m, cfg.params())?;
        unknown |= row.psi.is_unknown();
        r.psi.push(row);
    }
    if let Some((layers, class)) = layers(session)? {
        r.alpha = Value::Known { value: class.alpha };
        r.infinite_simples = Some(class.infinite.iter().map(|&v| names[v].clone()).collect());
        let mut rows = Vec::new();
        for (v, name) in names.iter().enumerate() {
            rows.push(layer_row(&layers, format!("P({name})"), &Representation::projective(&alg, v))?);
        }
        r.projectives = Some(rows);
        r.ll_inf_algebra = Some(layers.ll_inf(&Representation::regular(&alg)));
        let b = Bounds::from_report(&evaluate_bounds(session, cfg.params())?, &names);
        unknown |= b.has_unknown();
        r.bounds = Some(b);
    } else {
        let explored = r.simples.iter().filter_map(|s| match s.pd {
            Pd::Unknown { explored } => Some(explored),
            _ => None,
        });
        r.alpha = Value::Unknown { explored: explored.min().unwrap_or(0) };
        unknown = true;
    }
    r.unknowns_present = unknown;
    let text = r.render_text();
    Outcome::new(&r, text, unknown)
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PdOutput {
    pub schema: u32,
    pub module: String,
    pub dims: Vec<usize>,
    pub pd: Pd,
}

pub fn pd(session: &mut Session, loaded: &Loaded, module: &str) -> Result<Outcome> {
    let m = parse_module(loaded, module)?;
    let st = session.pd(&m)?;
    let out = PdOutput { schema: SCHEMA, module: module.to_string(), dims: m.dims().to_vec(), pd: Pd::from_status(session, &st) };
    let text = format!("pd {} = {}\n", module, match &st {
        PdStatus::Finite(n) => format!("Finite({n})"),
        PdStatus::Infinite(c) => format!("Infinite (syzygy cycle of length {})", c.len()),
        PdStatus::Unknown(e) => format!("Unknown (explored {e} steps)"),
    });
    Outcome::new(&out, text, st.is_unknown())
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SyzygyOutput {
    pub schema: u32,
    pub module: String,
    pub power: usize,
    pub dims: Vec<usize>,
    pub summands: Vec<Summand>,
    /// Row-major matrices of the arrows, in declaration order.
    pub maps: Vec<(String, Vec<Vec<u32>>)>,
}

pub fn syzygy(session: &mut Session, loaded: &Loaded, module: &str, power: usize) -> Result<Outcome> {
    let m = parse_module(loaded, module)?;
    let alg = &loaded.algebra;
    let mut cur = m;
    for k in 0..power {
        if cur.total_dim() > session.caps.max_total_dim {
            anyhow::bail!(
                "Ω^{k} already has dimension {} > {}; raise --caps",
                cur.total_dim(),
                session.caps.max_total_dim
            );
        }
        cur = syzygy_power(alg, &cur, 1);
    }
    let d = session.register(&cur).context("decomposing the syzygy")?;
    let parts = summands(session, &d);
    let maps: Vec<(String, Vec<Vec<u32>>)> = alg
        .quiver()
        .arrows()
        .iter()
        .zip(cur.maps())
        .map(|(a, mat)| (a.name.clone(), (0..mat.rows()).map(|i| mat.row(i).to_vec()).collect()))
        .collect();
    let mut text = String::new();
    let _ = writeln!(text, "Ω^{power}({module}): dims {:?}", cur.dims());
    let _ = writeln!(text, "summands:");
    render_summands(&mut text, &parts);
    let _ = writeln!(text, "module Omega{power}");
    let dims: Vec<String> = cur.dims().iter().map(usize::to_string).collect();
    let _ = writeln!(text, "  dims {}", dims.join(" "));
    for (name, rows) in &maps {
        if rows.iter().any(|r| r.iter().any(|&x| x != 0)) {
            let rs: Vec<String> =
                rows.iter().map(|r| r.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")).collect();
            let _ = writeln!(text, "  {name} = {}", rs.join("; "));
        }
    }
    let out = SyzygyOutput { schema: SCHEMA, module: module.to_string(), power, dims: cur.dims().to_vec(), summands: parts, maps };
    Outcome::new(&out, text, false)
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct LayerOutput {
    pub schema: u32,
    pub infinite_simples: Vec<String>,
    pub layers: LayerRow,
}

pub fn layerlength(session: &mut Session, loaded: &Loaded, module: &str) -> Result<Outcome> {
    let m = parse_module(loaded, module)?;
    let Some((layers, class)) = layers(session)? else {
        return unresolved_simples(session, loaded);
    };
    let row = layer_row(&layers, module.to_string(), &m)?;
    let names = vertex_names(loaded);
    let mut text = String::new();
    row.render_text(&mut text);
    let out = LayerOutput {
        schema: SCHEMA,
        infinite_simples: class.infinite.iter().map(|&v| names[v].clone()).collect(),
        layers: row,
    };
    Outcome::new(&out, text, false)
}

/// When the infinite simples cannot be determined, only their pd table is
/// reported.
fn unresolved_simples(session: &mut Session, loaded: &Loaded) -> Result<Outcome> {
    let alg = loaded.algebra.clone();
    let mut rows = Vec::new();
    let mut text = String::from("the simples of infinite projective dimension are undetermined:\n");
    for (v, name) in vertex_names(loaded).into_iter().enumerate() {
        let st = session.pd(&Representation::simple(&alg, v))?;
        let pd = Pd::from_status(session, &st);
        let _ = writeln!(text, "  pd S({name}) = {st:?}");
        rows.push(SimpleRow { vertex: name, pd });
    }
    #[derive(Serialize)]
    struct Unresolved {
        schema: u32,
        simples: Vec<SimpleRow>,
    }
    Outcome::new(&Unresolved { schema: SCHEMA, simples: rows }, text, true)
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PsiOutput {
    pub schema: u32,
    pub psi: PsiRow,
}

pub fn psi_cmd(session: &mut Session, loaded: &Loaded, modules: &[String], cfg: &RunConfig) -> Result<Outcome> {
    let m = parse_modules(loaded, modules)?;
    let row = psi_row(session, modules, &m, cfg.params())?;
    let mut text = String::new();
    row.render_text(&mut text);
    let unknown = row.psi.is_unknown();
    Outcome::new(&PsiOutput { schema: SCHEMA, psi: row }, text, unknown)
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct BoundsOutput {
    pub schema: u32,
    pub bounds: Bounds,
}

pub fn bounds(session: &mut Session, loaded: &Loaded, cfg: &RunConfig) -> Result<Outcome> {
    if layers(session)?.is_none() {
        return unresolved_simples(session, loaded);
    }
    let b = Bounds::from_report(&evaluate_bounds(session, cfg.params())?, &vertex_names(loaded));
    let mut text = String::new();
    let _ = writeln!(text, "α = {}", b.alpha);
    let inf: Vec<String> = b.infinite_simples.iter().map(|v| format!("S({v})")).collect();
    let _ = writeln!(text, "𝒮^∞ = {{{}}}", inf.join(", "));
    b.render_text(&mut text);
    let unknown = b.has_unknown();
    Outcome::new(&BoundsOutput { schema: SCHEMA, bounds: b }, text, unknown)
}

#[derive(Debug, Serialize)]
pub struct SelftestOutput {
    pub schema: u32,
    pub config: SuiteConfig,
    pub report: SuiteReport,
    pub skip_rate: f64,
}

pub fn selftest(loaded: &Loaded, suite: SuiteConfig) -> Result<Outcome> {
    let report = check_algebra(&loaded.algebra, &suite, suite.seed)?;
    let all = report.group("");
    let skip_rate = if all.total() == 0 { 0.0 } else { all.skipped as f64 / all.total() as f64 };
    let mut text = String::new();
    let _ = writeln!(text, "{} modules, {} sequences", report.modules, report.sequences);
    for (name, t) in &report.checks {
        let status = if t.failed > 0 { "FAIL" } else { "ok" };
        let _ = writeln!(text, "{status:>4} {name}: {} passed, {} failed, {} skipped", t.passed, t.failed, t.skipped);
        for f in &t.failures {
            let _ = writeln!(text, "       {f}");
        }
    }
    let _ = writeln!(text, "skip rate {:.1}%", 100.0 * skip_rate);
    let failed = report.failed() > 0;
    let mut out = Outcome::new(&SelftestOutput { schema: SCHEMA, config: suite, report, skip_rate }, text, false)?;
    out.failed = failed;
    Ok(out)
}
