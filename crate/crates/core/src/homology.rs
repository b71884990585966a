//! Projective dimension through the syzygy graph on indecomposable classes.
//!
//! A class `X` has an edge to every non-projective summand of `ΩX`. Once the
//! set of classes reachable from `X` stops growing, `pd X` is finite iff no
//! cycle is reachable, and then equals the longest path length plus one.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::algebra::BoundAlgebra;
use crate::decomp::{ClassId, Decomposition, IsoRegistry};
use crate::error::{Error, Result};
use crate::hom::syzygy;
use crate::rep::Representation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Caps {
    pub max_steps: usize,
    pub max_total_dim: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_steps: 64, max_total_dim: 4096 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PdStatus {
    Finite(usize),
    /// A cycle of classes in the syzygy graph reachable from the module.
    Infinite(Vec<ClassId>),
    /// Caps were hit; carries the explored depth.
    Unknown(usize),
}

impl PdStatus {
    pub fn finite(&self) -> Option<usize> {
        match self {
            PdStatus::Finite(n) => Some(*n),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, PdStatus::Finite(_))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, PdStatus::Infinite(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, PdStatus::Unknown(_))
    }

    /// Status of a direct sum.
    pub fn combine(self, other: PdStatus) -> PdStatus {
        use PdStatus::*;
        match (self, other) {
            (Infinite(w), _) | (_, Infinite(w)) => Infinite(w),
            (Unknown(a), Unknown(b)) => Unknown(a.min(b)),
            (Unknown(a), _) | (_, Unknown(a)) => Unknown(a),
            (Finite(a), Finite(b)) => Finite(a.max(b)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleClassification {
    /// Vertices whose simple has infinite projective dimension.
    pub infinite: Vec<usize>,
    pub finite: Vec<usize>,
    /// Largest projective dimension among the finite ones (0 if none).
    pub alpha: usize,
    pub pds: Vec<PdStatus>,
}

impl SimpleClassification {
    pub fn is_infinite(&self, v: usize) -> bool {
        self.infinite.contains(&v)
    }

    /// `Σ`: the direct sum of the simples of infinite projective dimension.
    pub fn sigma(&self, alg: &BoundAlgebra) -> Representation {
        let parts: Vec<Representation> =
            self.infinite.iter().map(|&v| Representation::simple(alg, v)).collect();
        Representation::direct_sum_of(alg, &parts)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SyzygyGraph {
    pub nodes: Vec<ClassId>,
    pub edges: Vec<(ClassId, ClassId)>,
}

impl SyzygyGraph {
    pub fn has_edge(&self, a: ClassId, b: ClassId) -> bool {
        self.edges.contains(&(a, b))
    }
}

/// Registry plus projective-dimension facts for one algebra.
#[derive(Clone, Debug)]
pub struct Session {
    pub registry: IsoRegistry,
    pub caps: Caps,
    pd_memo: HashMap<ClassId, PdStatus>,
    classification: Option<SimpleClassification>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mark {
    Active,
    Done,
}

impl Session {
    pub fn new(alg: &BoundAlgebra, seed: u64, caps: Caps) -> Self {
        Session {
            registry: IsoRegistry::new(alg, seed),
            caps,
            pd_memo: HashMap::new(),
            classification: None,
        }
    }

    /// A session reusing an existing (e.g. restored) registry.
    pub fn with_registry(registry: IsoRegistry, caps: Caps) -> Self {
        Session { registry, caps, pd_memo: HashMap::new(), classification: None }
    }

    pub fn algebra(&self) -> &BoundAlgebra {
        self.registry.algebra()
    }

    pub fn register(&mut self, m: &Representation) -> Result<Decomposition> {
        self.registry.register(m)
    }

    pub fn class_pd(&mut self, id: ClassId) -> Result<PdStatus> {
        if self.registry.is_projective(id) {
            return Ok(PdStatus::Finite(0));
        }
        if let Some(s) = self.pd_memo.get(&id) {
            return Ok(s.clone());
        }
        // breadth-first closure of the reachable classes
        let mut depth: HashMap<ClassId, usize> = HashMap::from([(id, 0)]);
        let mut edges: HashMap<ClassId, Vec<ClassId>> = HashMap::new();
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            if x != id && self.pd_memo.contains_key(&x) {
                continue;
            }
            let d = depth[&x];
            if d >= self.caps.max_steps
                || self.registry.module(x).total_dim() > self.caps.max_total_dim
            {
                return Ok(PdStatus::Unknown(d));
            }
            let om = self.registry.syzygy_of(x)?;
            let children: Vec<ClassId> =
                om.ids().filter(|&c| !self.registry.is_projective(c)).collect();
            for &c in &children {
                depth.entry(c).or_insert_with(|| {
                    queue.push_back(c);
                    d + 1
                });
            }
            edges.insert(x, children);
        }
        let mut marks = HashMap::new();
        let mut stack = Vec::new();
        Ok(self.evaluate(id, &edges, &mut marks, &mut stack))
    }

    fn evaluate(
        &mut self,
        x: ClassId,
        edges: &HashMap<ClassId, Vec<ClassId>>,
        marks: &mut HashMap<ClassId, Mark>,
        stack: &mut Vec<ClassId>,
    ) -> PdStatus {
        if let Some(s) = self.pd_memo.get(&x) {
            return s.clone();
        }
        marks.insert(x, Mark::Active);
        stack.push(x);
        let mut result = PdStatus::Finite(1);
        for &c in &edges[&x] {
            let s = match marks.get(&c) {
                Some(Mark::Active) => {
                    let pos = stack.iter().position(|&y| y == c).unwrap();
                    PdStatus::Infinite(stack[pos..].to_vec())
                }
                _ => match self.evaluate(c, edges, marks, stack) {
                    PdStatus::Finite(n) => PdStatus::Finite(n + 1),
                    other => other,
                },
            };
            result = result.combine(s);
            if result.is_infinite() {
                break;
            }
        }
        stack.pop();
        marks.insert(x, Mark::Done);
        self.pd_memo.insert(x, result.clone());
        result
    }

    pub fn pd_of_decomposition(&mut self, d: &Decomposition) -> Result<PdStatus> {
        let mut status = PdStatus::Finite(0);
        for id in d.ids().collect::<Vec<_>>() {
            status = status.combine(self.class_pd(id)?);
        }
        Ok(status)
    }

    pub fn pd(&mut self, m: &Representation) -> Result<PdStatus> {
        let d = self.register(m)?;
        self.pd_of_decomposition(&d)
    }

    pub fn classify_simples(&mut self) -> Result<SimpleClassification> {
        if let Some(c) = &self.classification {
            return Ok(c.clone());
        }
        let n = self.algebra().vertex_count();
        let mut c = SimpleClassification { infinite: vec![], finite: vec![], alpha: 0, pds: vec![] };
        for v in 0..n {
            let s = Representation::simple(self.algebra(), v);
            let st = self.pd(&s)?;
            match &st {
                PdStatus::Finite(k) => {
                    c.finite.push(v);
                    c.alpha = c.alpha.max(*k);
                }
                PdStatus::Infinite(_) => c.infinite.push(v),
                PdStatus::Unknown(d) => return Err(Error::RaiseCaps(*d)),
            }
            c.pds.push(st);
        }
        self.classification = Some(c.clone());
        Ok(c)
    }

    /// Classes reachable from `roots` along syzygy edges (within caps).
    pub fn syzygy_graph(&mut self, roots: &[ClassId]) -> Result<SyzygyGraph> {
        let mut g = SyzygyGraph::default();
        let mut queue: VecDeque<ClassId> =
            roots.iter().copied().filter(|&r| !self.registry.is_projective(r)).collect();
        let mut seen: Vec<ClassId> = queue.iter().copied().collect();
        while let Some(x) = queue.pop_front() {
            if g.nodes.len() >= self.caps.max_steps * 16 {
                break;
            }
            g.nodes.push(x);
            if self.registry.module(x).total_dim() > self.caps.max_total_dim {
                continue;
            }
            for c in self.registry.syzygy_of(x)?.ids().collect::<Vec<_>>() {
                if self.registry.is_projective(c) {
                    continue;
                }
                g.edges.push((x, c));
                if !seen.contains(&c) {
                    seen.push(c);
                    queue.push_back(c);
                }
            }
        }
        Ok(g)
    }

    /// `Ω^n` of a decomposition, summandwise.
    pub fn syzygy_power_of(&mut self, d: &Decomposition, n: usize) -> Result<Decomposition> {
        let mut cur = d.clone();
        for _ in 0..n {
            cur = self.registry.syzygy_of_decomposition(&cur)?;
        }
        Ok(cur)
    }
}

/// `Ω^n M` as a module (the minimal syzygy iterated).
pub fn syzygy_power(alg: &BoundAlgebra, m: &Representation, n: usize) -> Representation {
    let mut cur = m.clone();
    for _ in 0..n {
        if cur.is_zero() {
            break;
        }
        cur = syzygy(alg, &cur);
    }
    cur
}
