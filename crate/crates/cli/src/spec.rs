//! The `.alg` algebra description format.
//!
//! ```text
//! # comments run to end of line
//! field 2
//! vertices 1 2 3
//! arrows
//!   a: 1 -> 2
//!   b: 2 -> 3
//! relations
//!   a*b
//! module M
//!   dims 1 1 0
//!   a = 1
//! config
//!   seed 0
//!   window 8
//!   max_steps 64
//!   max_total_dim 4096
//! ```
//!
//! Section headers start in column 1, their entries are indented. Paths are
//! written left to right, `a*b` meaning "first `a`, then `b`". Relations
//! follow `relation := ["-"] term (("+"|"-") term)*`, `term := [int "*"] path`,
//! `path := name ("*" name)*`. Module matrices are row-major with rows
//! separated by `;`; arrows not listed act by zero.

use std::collections::BTreeMap;

use findim_core::algebra::{BoundAlgebra, DEFAULT_MAX_LEN};
use findim_core::linalg::{Matrix, PrimeField};
use findim_core::quiver::{LinComb, Path, Quiver};
use findim_core::rep::Representation;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpecError {
    #[error("{line}:{col}: syntax error: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("{line}:{col}: {msg}")]
    Semantic { line: usize, col: usize, msg: String },
    #[error("{0}")]
    Algebra(#[from] findim_core::error::Error),
}

type Result<T> = std::result::Result<T, SpecError>;

/// A parsed, validated term `coeff * path`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: i64,
    pub arrows: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowDecl {
    pub name: String,
    pub source: String,
    pub target: String,
    /// Positions of source and target, for error reporting.
    at: [(usize, usize); 2],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleDecl {
    pub name: String,
    pub dims: Vec<usize>,
    /// Arrow name to row-major rows.
    pub maps: BTreeMap<String, Vec<Vec<i64>>>,
    line: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Config {
    pub seed: Option<u64>,
    pub window: Option<usize>,
    pub max_steps: Option<usize>,
    pub max_total_dim: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSpec {
    pub field: u32,
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowDecl>,
    pub relations: Vec<Vec<Term>>,
    pub modules: Vec<ModuleDecl>,
    pub config: Config,
}

/// An algebra built from a spec, with its named modules.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub spec: AlgebraSpec,
    pub algebra: BoundAlgebra,
    pub modules: BTreeMap<String, Representation>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    None,
    Arrows,
    Relations,
    Module,
    Config,
}

struct Cursor<'a> {
    line: usize,
    text: &'a str,
}

impl<'a> Cursor<'a> {
    fn col_of(&self, s: &str) -> usize {
        s.as_ptr() as usize - self.text.as_ptr() as usize + 1
    }

    fn syntax(&self, at: &str, msg: impl Into<String>) -> SpecError {
        SpecError::Syntax { line: self.line, col: self.col_of(at), msg: msg.into() }
    }

    fn semantic(&self, at: &str, msg: impl Into<String>) -> SpecError {
        SpecError::Semantic { line: self.line, col: self.col_of(at), msg: msg.into() }
    }

    /// Whitespace-separated words with their slices into the line.
    fn words(&self, s: &'a str) -> Vec<&'a str> {
        s.split_whitespace().collect()
    }
}

fn is_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

fn parse_num<T: std::str::FromStr>(c: &Cursor, w: &str, what: &str) -> Result<T> {
    w.parse().map_err(|_| c.syntax(w, format!("expected {what}, found `{w}`")))
}

pub fn parse_spec(text: &str) -> Result<AlgebraSpec> {
    let mut field = None;
    let mut vertices: Option<Vec<String>> = None;
    let mut arrows = Vec::new();
    let mut relations = Vec::new();
    let mut modules: Vec<ModuleDecl> = Vec::new();
    let mut config = Config::default();
    let mut section = Section::None;
    let mut last_line = 1;

    for (idx, raw) in text.lines().enumerate() {
        let cur = Cursor { line: idx + 1, text: raw };
        last_line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let indented = content.starts_with(' ') || content.starts_with('\t');
        let body = content.trim_start();
        let body = body.trim_end();
        if !indented {
            let words = cur.words(body);
            let key = words[0];
            section = Section::None;
            match key {
                "field" => {
                    if words.len() != 2 {
                        return Err(cur.syntax(key, "expected `field <prime>`"));
                    }
                    field = Some(parse_num::<u32>(&cur, words[1], "a prime")?);
                }
                "vertices" => {
                    if words.len() < 2 {
                        return Err(cur.syntax(key, "expected at least one vertex"));
                    }
                    let mut vs: Vec<String> = Vec::new();
                    for w in &words[1..] {
                        if !is_name(w) {
                            return Err(cur.syntax(w, format!("invalid vertex name `{w}`")));
                        }
                        if vs.iter().any(|v| v == w) {
                            return Err(cur.semantic(w, format!("duplicate vertex `{w}`")));
                        }
                        vs.push(w.to_string());
                    }
                    vertices = Some(vs);
                }
                "arrows" | "relations" | "config" => {
                    if words.len() != 1 {
                        return Err(cur.syntax(words[1], format!("unexpected text after `{key}`")));
                    }
                    section = match key {
                        "arrows" => Section::Arrows,
                        "relations" => Section::Relations,
                        _ => Section::Config,
                    };
                }
                "module" => {
                    if words.len() != 2 || !is_name(words[1]) {
                        return Err(cur.syntax(key, "expected `module <name>`"));
                    }
                    let name = words[1];
                    if matches!(name, "S" | "P") || modules.iter().any(|m| m.name == name) {
                        return Err(cur.semantic(name, format!("module name `{name}` is reserved or taken")));
                    }
                    modules.push(ModuleDecl { name: name.to_string(), dims: Vec::new(), maps: BTreeMap::new(), line: cur.line });
                    section = Section::Module;
                }
                _ => return Err(cur.syntax(key, format!("unknown key `{key}`"))),
            }
            continue;
        }
        match section {
            Section::None => return Err(cur.syntax(body, "indented line outside a section")),
            Section::Arrows => arrows.push(parse_arrow(&cur, body)?),
            Section::Relations => relations.push((cur.line, parse_relation(&cur, body)?)),
            Section::Config => parse_config(&cur, body, &mut config)?,
            Section::Module => parse_module_line(&cur, body, modules.last_mut().expect("module section"))?,
        }
    }

    let at_end = |msg: &str| SpecError::Semantic { line: last_line, col: 1, msg: msg.into() };
    let field = field.ok_or_else(|| at_end("missing `field`"))?;
    let vertices = vertices.ok_or_else(|| at_end("missing `vertices`"))?;
    let spec_relations = relations.iter().map(|(_, r)| r.iter().map(|(_, t)| t.clone()).collect()).collect();
    let spec = AlgebraSpec { field, vertices, arrows, relations: spec_relations, modules, config };
    validate(&spec, &relations)?;
    Ok(spec)
}

fn parse_arrow(cur: &Cursor, body: &str) -> Result<ArrowDecl> {
    let (name, rest) = body.split_once(':').ok_or_else(|| cur.syntax(body, "expected `name: source -> target`"))?;
    let name = name.trim();
    if !is_name(name) {
        return Err(cur.syntax(body, format!("invalid arrow name `{name}`")));
    }
    let (s, t) = rest.split_once("->").ok_or_else(|| cur.syntax(rest, "expected `->`"))?;
    let (s, t) = (s.trim(), t.trim());
    for v in [s, t] {
        if !is_name(v) {
            let at = if v.is_empty() { rest } else { v };
            return Err(cur.syntax(at, format!("invalid vertex `{v}`")));
        }
    }
    let at = [(cur.line, cur.col_of(s)), (cur.line, cur.col_of(t))];
    Ok(ArrowDecl { name: name.to_string(), source: s.to_string(), target: t.to_string(), at })
}

/// `relation := ["-"] term (("+"|"-") term)*`
fn parse_relation(cur: &Cursor, body: &str) -> Result<Vec<(usize, Term)>> {
    let mut terms = Vec::new();
    let mut sign = 1i64;
    let mut rest = body;
    if let Some(r) = body.strip_prefix('-') {
        sign = -1;
        rest = r;
    } else if let Some(r) = body.strip_prefix('+') {
        rest = r;
    }
    loop {
        let end = rest.find(['+', '-']).unwrap_or(rest.len());
        let chunk = &rest[..end];
        terms.push((cur.col_of(chunk.trim_start()), parse_term(cur, chunk, sign)?));
        if end == rest.len() {
            break;
        }
        sign = if rest.as_bytes()[end] == b'+' { 1 } else { -1 };
        rest = &rest[end + 1..];
    }
    Ok(terms)
}

/// `term := [int "*"] path`, `path := name ("*" name)*`
fn parse_term(cur: &Cursor, chunk: &str, sign: i64) -> Result<Term> {
    let trimmed = chunk.trim();
    if trimmed.is_empty() {
        return Err(cur.syntax(chunk, "empty term"));
    }
    let factors: Vec<&str> = chunk.split('*').collect();
    let mut coeff = sign;
    let mut arrows = Vec::new();
    for (k, f) in factors.iter().enumerate() {
        let w = f.trim();
        if w.is_empty() {
            return Err(cur.syntax(f, "empty factor"));
        }
        let w = &f[f.find(w).unwrap_or(0)..][..w.len()];
        if k == 0 && w.chars().all(|c| c.is_ascii_digit()) {
            coeff *= parse_num::<i64>(cur, w, "a coefficient")?;
            continue;
        }
        if !is_name(w) || w.chars().all(|c| c.is_ascii_digit()) {
            return Err(cur.syntax(w, format!("expected an arrow name, found `{w}`")));
        }
        arrows.push(w.to_string());
    }
    if arrows.is_empty() {
        return Err(cur.syntax(chunk, "term has no path"));
    }
    Ok(Term { coeff, arrows })
}

fn parse_config(cur: &Cursor, body: &str, cfg: &mut Config) -> Result<()> {
    let words = cur.words(body);
    if words.len() != 2 {
        return Err(cur.syntax(words[0], "expected `key value`"));
    }
    let (k, v) = (words[0], words[1]);
    match k {
        "seed" => cfg.seed = Some(parse_num(cur, v, "an integer")?),
        "window" => cfg.window = Some(parse_num(cur, v, "an integer")?),
        "max_steps" => cfg.max_steps = Some(parse_num(cur, v, "an integer")?),
        "max_total_dim" => cfg.max_total_dim = Some(parse_num(cur, v, "an integer")?),
        _ => return Err(cur.syntax(k, format!("unknown config key `{k}`"))),
    }
    Ok(())
}

fn parse_module_line(cur: &Cursor, body: &str, m: &mut ModuleDecl) -> Result<()> {
    if let Some(rest) = body.strip_prefix("dims").filter(|r| r.is_empty() || r.starts_with(char::is_whitespace)) {
        if !m.dims.is_empty() {
            return Err(cur.semantic(body, "`dims` given twice"));
        }
        for w in cur.words(rest) {
            m.dims.push(parse_num(cur, w, "a dimension")?);
        }
        return Ok(());
    }
    let (name, rhs) = body.split_once('=').ok_or_else(|| cur.syntax(body, "expected `dims …` or `arrow = rows`"))?;
    let name = name.trim();
    if !is_name(name) {
        return Err(cur.syntax(body, format!("invalid arrow name `{name}`")));
    }
    if m.maps.contains_key(name) {
        return Err(cur.semantic(body, format!("matrix for `{name}` given twice")));
    }
    let mut rows = Vec::new();
    for row in rhs.split(';') {
        let mut r = Vec::new();
        for w in cur.words(row) {
            r.push(parse_num::<i64>(cur, w, "an integer entry")?);
        }
        rows.push(r);
    }
    if rows.len() == 1 && rows[0].is_empty() {
        rows.clear();
    }
    m.maps.insert(name.to_string(), rows);
    Ok(())
}

fn validate(spec: &AlgebraSpec, relations: &[(usize, Vec<(usize, Term)>)]) -> Result<()> {
    let sem = |(line, col): (usize, usize), msg: String| SpecError::Semantic { line, col, msg };
    for a in &spec.arrows {
        for (v, at) in [&a.source, &a.target].into_iter().zip(a.at) {
            if !spec.vertices.contains(v) {
                return Err(sem(at, format!("arrow `{}` uses undeclared vertex `{v}`", a.name)));
            }
        }
    }
    for (k, a) in spec.arrows.iter().enumerate() {
        if spec.arrows[..k].iter().any(|b| b.name == a.name) {
            return Err(sem((a.at[0].0, 1), format!("duplicate arrow `{}`", a.name)));
        }
    }
    let q = spec.quiver()?;
    for (line, terms) in relations {
        let mut ends = None;
        for (col, t) in terms {
            let at = (*line, *col);
            if t.arrows.len() < 2 {
                return Err(sem(at, format!("relation term `{}` has length < 2", t.arrows.join("*"))));
            }
            let names: Vec<&str> = t.arrows.iter().map(String::as_str).collect();
            let p = q.path(&names).map_err(|e| sem(at, e.to_string()))?;
            match ends {
                None => ends = Some((p.source, p.target)),
                Some(e) if e != (p.source, p.target) => {
                    return Err(sem(at, "relation paths are not parallel".into()));
                }
                _ => {}
            }
        }
    }
    Ok(())
}

impl AlgebraSpec {
    fn quiver(&self) -> std::result::Result<Quiver, findim_core::error::Error> {
        let arrows: Vec<(&str, &str, &str)> =
            self.arrows.iter().map(|a| (a.name.as_str(), a.source.as_str(), a.target.as_str())).collect();
        let verts: Vec<&str> = self.vertices.iter().map(String::as_str).collect();
        Quiver::new(&verts, &arrows)
    }

    /// Canonical text of the algebra part (no modules, no config), used as a
    /// cache key.
    pub fn canonical(&self) -> String {
        let mut s = format!("field {}\nvertices {}\narrows\n", self.field, self.vertices.join(" "));
        for a in &self.arrows {
            s += &format!("  {}: {} -> {}\n", a.name, a.source, a.target);
        }
        s += "relations\n";
        for r in &self.relations {
            let terms: Vec<String> = r.iter().map(|t| format!("{}*{}", t.coeff, t.arrows.join("*"))).collect();
            s += &format!("  {}\n", terms.join(" + "));
        }
        s
    }

    pub fn build(&self) -> Result<Loaded> {
        let field = PrimeField::new(self.field)?;
        let q = self.quiver()?;
        let mut rels = Vec::new();
        for r in &self.relations {
            let mut terms: Vec<(u32, Path)> = Vec::new();
            for t in r {
                let names: Vec<&str> = t.arrows.iter().map(String::as_str).collect();
                terms.push((field.reduce(t.coeff), q.path(&names)?));
            }
            rels.push(LinComb::from_terms(field, terms));
        }
        let algebra = BoundAlgebra::build(field, q, rels, DEFAULT_MAX_LEN)?;
        let mut modules = BTreeMap::new();
        for m in &self.modules {
            modules.insert(m.name.clone(), self.build_module(&algebra, m)?);
        }
        Ok(Loaded { spec: self.clone(), algebra, modules })
    }

    fn build_module(&self, alg: &BoundAlgebra, m: &ModuleDecl) -> Result<Representation> {
        let sem = |msg: String| SpecError::Semantic { line: m.line, col: 1, msg: format!("module {}: {msg}", m.name) };
        let q = alg.quiver();
        if m.dims.len() != q.vertex_count() {
            return Err(sem(format!("expected {} dimensions, found {}", q.vertex_count(), m.dims.len())));
        }
        for name in m.maps.keys() {
            if q.arrow_index(name).is_none() {
                return Err(sem(format!("unknown arrow `{name}`")));
            }
        }
        let mut maps = Vec::new();
        for a in q.arrows() {
            let (r, c) = (m.dims[a.target], m.dims[a.source]);
            let mat = match m.maps.get(&a.name) {
                None => Matrix::zeros(alg.field(), r, c),
                Some(rows) => {
                    if rows.len() != r || rows.iter().any(|row| row.len() != c) {
                        return Err(sem(format!("arrow `{}` needs a {r}x{c} matrix", a.name)));
                    }
                    Matrix::from_rows(alg.field(), rows, c)?
                }
            };
            maps.push(mat);
        }
        Representation::new(alg, m.dims.clone(), maps).map_err(|e| sem(e.to_string()))
    }
}

/// Parses and builds in one step.
pub fn load(text: &str) -> Result<Loaded> {
    parse_spec(text)?.build()
}
