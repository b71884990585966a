//! JSON (schema 1) and text renderings of computed invariants.
//!
//! Unknown quantities are never rendered as numbers: they serialize as
//! `{"status":"unknown","explored":n}`.

use std::fmt::Write;

use findim_core::bounds::{Applicable, BoundReport, PsiTerm};
use findim_core::decomp::Decomposition;
use findim_core::homology::{PdStatus, Session};
use serde::{Deserialize, Serialize};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Pd {
    Finite { value: usize },
    /// Dimension vectors of a cycle of indecomposables in the syzygy graph.
    Infinite { cycle: Vec<Vec<usize>> },
    Unknown { explored: usize },
}

impl Pd {
    pub fn from_status(session: &Session, s: &PdStatus) -> Pd {
        match s {
            PdStatus::Finite(n) => Pd::Finite { value: *n },
            PdStatus::Infinite(c) => {
                Pd::Infinite { cycle: c.iter().map(|&id| session.registry.module(id).dims().to_vec()).collect() }
            }
            PdStatus::Unknown(e) => Pd::Unknown { explored: *e },
        }
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Pd::Unknown { .. })
    }

    fn text(&self) -> String {
        match self {
            Pd::Finite { value } => format!("Finite({value})"),
            Pd::Infinite { cycle } => format!("Infinite (syzygy cycle of length {})", cycle.len()),
            Pd::Unknown { explored } => format!("Unknown (explored {explored} steps)"),
        }
    }
}

/// A number, or an explicit unknown.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Value {
    Known { value: usize },
    Unknown { explored: usize },
}

impl Value {
    pub fn is_unknown(&self) -> bool {
        matches!(self, Value::Unknown { .. })
    }

    fn from_psi(t: &PsiTerm) -> Value {
        match t.value {
            Some(v) if t.stable => Value::Known { value: v },
            _ => Value::Unknown { explored: t.explored },
        }
    }

    fn text(&self) -> String {
        match self {
            Value::Known { value } => value.to_string(),
            Value::Unknown { explored } => format!("unknown (explored {explored} steps)"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraInfo {
    pub field: u32,
    pub vertices: Vec<String>,
    pub arrows: usize,
    pub relations: usize,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Settings {
    pub seed: u64,
    pub max_steps: usize,
    pub max_total_dim: usize,
    pub window: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleRow {
    pub vertex: String,
    pub pd: Pd,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerRow {
    pub module: String,
    pub dims: Vec<usize>,
    /// `ℓℓ^∞`, from the radical side.
    pub ll_inf: usize,
    /// `ℓℓ_∞`, from the socle side.
    pub ll_inf_socle: usize,
    /// `ℓ^∞`: infinite radical layers.
    pub l_inf_radical: usize,
    /// `ℓ_∞`: infinite socle layers.
    pub l_inf_socle: usize,
    pub r_inf: usize,
    pub zeta: Vec<usize>,
    pub phi: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsiRow {
    pub modules: Vec<String>,
    pub dims: Vec<usize>,
    pub phi: Value,
    pub psi: Value,
    pub ranks: Vec<usize>,
    pub verified_window: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub alpha: usize,
    pub infinite_simples: Vec<String>,
    pub ll_inf_algebra: usize,
    pub beta: Option<usize>,
    /// `Ψ(Ω^{α+1}Σ)`
    pub psi_first: Value,
    /// `Ψ(Ω^{α+1}Σ ⊕ Ω^{α+2}Σ)`
    pub psi_second: Value,
    /// Bound on `Ψdim ℒ^∞_1`; `null` when there are no infinite simples.
    pub psi_dim_l1: Option<Value>,
    /// Bound on `fin.dim ℒ^∞_2`.
    pub findim_l2: Option<Value>,
    /// Bound on `fin.dim Λ`; `null` when `ℓℓ^∞(Λ) > 3`.
    pub findim: Option<Value>,
    pub findim_exact: Option<usize>,
    pub applicable: Applicable,
}

impl Bounds {
    pub fn from_report(r: &BoundReport, names: &[String]) -> Bounds {
        let psi_first = Value::from_psi(&r.psi_term1);
        let psi_second = Value::from_psi(&r.psi_term2);
        let has_inf = !r.infinite_simples.is_empty();
        let bound = |v: Option<usize>, psi: &Value| match (v, psi) {
            (Some(x), Value::Known { .. }) => Some(Value::Known { value: x }),
            (_, Value::Unknown { explored }) => Some(Value::Unknown { explored: *explored }),
            (None, _) => None,
        };
        let findim = match r.applicable {
            Applicable::ReductionOnly => None,
            Applicable::NoInfiniteSimples => r.findim_exact.map(|v| Value::Known { value: v }),
            Applicable::LayerLengthAtMostThree => bound(r.bound_main, &psi_second),
        };
        Bounds {
            alpha: r.alpha,
            infinite_simples: r.infinite_simples.iter().map(|&v| names[v].clone()).collect(),
            ll_inf_algebra: r.ll_inf_algebra,
            beta: r.beta,
            psi_dim_l1: if has_inf { bound(r.bound_l1, &psi_first) } else { None },
            findim_l2: if has_inf { bound(r.bound_l2, &psi_second) } else { None },
            psi_first,
            psi_second,
            findim,
            findim_exact: r.findim_exact,
            applicable: r.applicable,
        }
    }

    pub fn has_unknown(&self) -> bool {
        self.psi_first.is_unknown()
            || self.psi_second.is_unknown()
            || [&self.psi_dim_l1, &self.findim_l2, &self.findim].iter().any(|v| v.as_ref().is_some_and(Value::is_unknown))
    }

    pub fn render_text(&self, out: &mut String) {
        let _ = writeln!(out, "bounds:");
        let _ = writeln!(out, "  ℓℓ^∞(Λ) = {}", self.ll_inf_algebra);
        if let Some(b) = self.beta {
            let _ = writeln!(out, "  β = {b}");
        }
        if !self.infinite_simples.is_empty() {
            let _ = writeln!(out, "  Ψ(Ω^{{α+1}}Σ) = {}", self.psi_first.text());
            let _ = writeln!(out, "  Ψ(Ω^{{α+1}}Σ ⊕ Ω^{{α+2}}Σ) = {}", self.psi_second.text());
        }
        if let Some(v) = &self.psi_dim_l1 {
            let _ = writeln!(out, "  Ψdim ℒ^∞_1 ≤ {}", v.text());
        }
        if let Some(v) = &self.findim_l2 {
            let _ = writeln!(out, "  fin.dim ℒ^∞_2 ≤ {}", v.text());
        }
        match (&self.findim, self.applicable) {
            (Some(v), Applicable::NoInfiniteSimples) => {
                let _ = writeln!(out, "  fin.dim Λ = gl.dim Λ = {}", v.text());
            }
            (Some(v), _) => {
                let _ = writeln!(out, "  fin.dim Λ ≤ {}", v.text());
            }
            (None, _) => {
                let _ = writeln!(
                    out,
                    "  ℓℓ^∞(Λ) > 3: only fin.dim Λ ≤ max{{α, 1 + fin.dim ℒ^∞_β}} applies"
                );
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub algebra: AlgebraInfo,
    pub settings: Settings,
    pub simples: Vec<SimpleRow>,
    /// `pd 𝒮^{<∞}`; unknown if some simple is unresolved.
    pub alpha: Value,
    pub infinite_simples: Option<Vec<String>>,
    pub projectives: Option<Vec<LayerRow>>,
    pub ll_inf_algebra: Option<usize>,
    pub psi: Vec<PsiRow>,
    pub bounds: Option<Bounds>,
    pub unknowns_present: bool,
}

fn list(xs: &[usize]) -> String {
    let parts: Vec<String> = xs.iter().map(usize::to_string).collect();
    format!("({})", parts.join(","))
}

impl LayerRow {
    pub fn render_text(&self, out: &mut String) {
        let _ = writeln!(out, "{} (dims {}):", self.module, list(&self.dims));
        let _ = writeln!(out, "  ℓℓ^∞ = {}", self.ll_inf);
        let _ = writeln!(out, "  ℓℓ_∞ = {}", self.ll_inf_socle);
        let _ = writeln!(out, "  ℓ^∞ = {}", self.l_inf_radical);
        let _ = writeln!(out, "  ℓ_∞ = {}", self.l_inf_socle);
        let _ = writeln!(out, "  r^∞ = {}", self.r_inf);
        let _ = writeln!(out, "  ζ = {}", list(&self.zeta));
        match self.phi {
            Some(p) => {
                let _ = writeln!(out, "  φ = {p}");
            }
            None => {
                let _ = writeln!(out, "  φ undefined (finitely filtered)");
            }
        }
    }
}

impl PsiRow {
    pub fn render_text(&self, out: &mut String) {
        let _ = writeln!(out, "{} (dims {}):", self.modules.join(" ⊕ "), list(&self.dims));
        let _ = writeln!(out, "  Φ = {}", self.phi.text());
        let _ = writeln!(out, "  Ψ = {}", self.psi.text());
        let _ = writeln!(out, "  rank Ω^k = {}", list(&self.ranks));
    }
}

impl Report {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let a = &self.algebra;
        let _ = writeln!(
            out,
            "algebra: GF({}), {} vertices, {} arrows, {} relations, dimension {}",
            a.field,
            a.vertices.len(),
            a.arrows,
            a.relations,
            a.dim
        );
        let s = &self.settings;
        let _ = writeln!(
            out,
            "settings: seed {}, caps {} steps / {} total dim, window {}",
            s.seed, s.max_steps, s.max_total_dim, s.window
        );
        let _ = writeln!(out, "simples:");
        for r in &self.simples {
            let _ = writeln!(out, "  pd S({}) = {}", r.vertex, r.pd.text());
        }
        let _ = writeln!(out, "α = {}", self.alpha.text());
        if let Some(inf) = &self.infinite_simples {
            let names: Vec<String> = inf.iter().map(|v| format!("S({v})")).collect();
            let _ = writeln!(out, "𝒮^∞ = {{{}}}", names.join(", "));
        }
        if let Some(rows) = &self.projectives {
            let _ = writeln!(out, "projectives:");
            let _ = writeln!(out, "  {:<8} {:>5} {:>5} {:>5} {:>5} {:>5}", "", "ℓℓ^∞", "ℓℓ_∞", "ℓ^∞", "ℓ_∞", "r^∞");
            for r in rows {
                let _ = writeln!(
                    out,
                    "  {:<8} {:>5} {:>5} {:>5} {:>5} {:>5}",
                    r.module, r.ll_inf, r.ll_inf_socle, r.l_inf_radical, r.l_inf_socle, r.r_inf
                );
            }
        }
        if let Some(ll) = self.ll_inf_algebra {
            let _ = writeln!(out, "ℓℓ^∞(Λ) = {ll}");
        }
        for p in &self.psi {
            p.render_text(&mut out);
        }
        if let Some(b) = &self.bounds {
            b.render_text(&mut out);
        }
        if self.unknowns_present {
            let _ = writeln!(out, "note: some values are unknown; raise --caps or --window");
        }
        out
    }
}

/// A summand line for syzygy output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summand {
    pub dims: Vec<usize>,
    pub top: Vec<usize>,
    pub socle: Vec<usize>,
    pub multiplicity: usize,
    pub projective: bool,
}

pub fn summands(session: &Session, d: &Decomposition) -> Vec<Summand> {
    d.parts
        .iter()
        .map(|&(id, k)| {
            let m = session.registry.module(id);
            Summand {
                dims: m.dims().to_vec(),
                top: m.top_dims(),
                socle: m.socle_dims(),
                multiplicity: k,
                projective: session.registry.is_projective(id),
            }
        })
        .collect()
}

pub fn render_summands(out: &mut String, parts: &[Summand]) {
    for s in parts {
        let _ = writeln!(
            out,
            "  {} x dims {} top {} socle {}{}",
            s.multiplicity,
            list(&s.dims),
            list(&s.top),
            list(&s.socle),
            if s.projective { " (projective)" } else { "" }
        );
    }
}
