//! Quivers, paths and linear combinations of paths.
//!
//! A path is written left to right: `[a, b]` traverses `a` first, then `b`.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::PrimeField;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    #[serde(skip)]
    out_arrows: Vec<Vec<usize>>,
    #[serde(skip)]
    in_arrows: Vec<Vec<usize>>,
}

impl Quiver {
    /// Arrows are `(name, source label, target label)`.
    pub fn new<S: AsRef<str>>(vertices: &[S], arrows: &[(S, S, S)]) -> Result<Self> {
        let vertices: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let mut index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.as_str(), i).is_some() {
                return Err(Error::InvalidQuiver(format!("duplicate vertex {v}")));
            }
        }
        let mut names = HashMap::new();
        let mut out = Vec::new();
        for (name, s, t) in arrows {
            let name = name.as_ref().to_string();
            let lookup = |x: &str| {
                index.get(x).copied().ok_or_else(|| Error::UnknownVertex(x.to_string()))
            };
            let (s, t) = (lookup(s.as_ref())?, lookup(t.as_ref())?);
            if names.insert(name.clone(), out.len()).is_some() || index.contains_key(name.as_str())
            {
                return Err(Error::InvalidQuiver(format!("duplicate label {name}")));
            }
            out.push(Arrow { name, source: s, target: t });
        }
        Ok(Self::from_parts(vertices, out))
    }

    fn from_parts(vertices: Vec<String>, arrows: Vec<Arrow>) -> Self {
        let n = vertices.len();
        let mut out_arrows = vec![Vec::new(); n];
        let mut in_arrows = vec![Vec::new(); n];
        for (k, a) in arrows.iter().enumerate() {
            out_arrows[a.source].push(k);
            in_arrows[a.target].push(k);
        }
        Quiver { vertices, arrows, out_arrows, in_arrows }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, k: usize) -> &Arrow {
        &self.arrows[k]
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn arrows_from(&self, v: usize) -> &[usize] {
        &self.out_arrows[v]
    }

    pub fn arrows_into(&self, v: usize) -> &[usize] {
        &self.in_arrows[v]
    }

    /// Same vertices, every arrow reversed.
    pub fn opposite(&self) -> Quiver {
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow { name: a.name.clone(), source: a.target, target: a.source })
            .collect();
        Self::from_parts(self.vertices.clone(), arrows)
    }

    /// Builds a path from arrow names, checking composability.
    pub fn path(&self, names: &[&str]) -> Result<Path> {
        let mut arrows = Vec::with_capacity(names.len());
        for n in names {
            arrows.push(
                self.arrow_index(n)
                    .ok_or_else(|| Error::InvalidRelation(format!("unknown arrow {n}")))?,
            );
        }
        Path::from_arrows(self, arrows)
    }

    pub fn display_path(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            format!("e{}", self.vertices[p.source])
        } else {
            p.arrows.iter().map(|&a| self.arrows[a].name.as_str()).collect::<Vec<_>>().join("*")
        }
    }
}

/// A path in a quiver. Trivial paths have no arrows and `source == target`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path { source: v, target: v, arrows: vec![] }
    }

    pub fn from_arrows(q: &Quiver, arrows: Vec<usize>) -> Result<Self> {
        let Some(&first) = arrows.first() else {
            return Err(Error::InvalidRelation("empty arrow sequence".into()));
        };
        for w in arrows.windows(2) {
            if q.arrows[w[0]].target != q.arrows[w[1]].source {
                return Err(Error::InvalidRelation(format!(
                    "{} and {} do not compose",
                    q.arrows[w[0]].name, q.arrows[w[1]].name
                )));
            }
        }
        let target = q.arrows[*arrows.last().unwrap()].target;
        Ok(Path { source: q.arrows[first].source, target, arrows })
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self` followed by `other`; `None` if they do not meet.
    pub fn concat(&self, other: &Path) -> Option<Path> {
        if self.target != other.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path { source: self.source, target: other.target, arrows })
    }

    pub fn reversed(&self) -> Path {
        let mut arrows = self.arrows.clone();
        arrows.reverse();
        Path { source: self.target, target: self.source, arrows }
    }
}

impl fmt::Debug for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.arrows.is_empty() {
            write!(f, "e{}", self.source)
        } else {
            write!(f, "{:?}", self.arrows)
        }
    }
}

/// Length first, then lexicographic in arrow declaration order.
impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arrows
            .len()
            .cmp(&other.arrows.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.source.cmp(&other.source))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A finite linear combination of paths with GF(p) coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LinComb {
    terms: BTreeMap<Path, u32>,
}

impl LinComb {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_path(p: Path) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(p, 1);
        LinComb { terms }
    }

    pub fn from_terms(f: PrimeField, terms: impl IntoIterator<Item = (u32, Path)>) -> Self {
        let mut out = LinComb::zero();
        for (c, p) in terms {
            out.add_term(f, p, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Path, u32)> {
        self.terms.iter().map(|(p, &c)| (p, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Largest term under the path order.
    pub fn tip(&self) -> Option<(&Path, u32)> {
        self.terms.iter().next_back().map(|(p, &c)| (p, c))
    }

    pub fn coeff(&self, p: &Path) -> u32 {
        self.terms.get(p).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, f: PrimeField, p: Path, c: u32) {
        let c = c % f.modulus();
        if c == 0 {
            return;
        }
        match self.terms.entry(p) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = f.add(*o.get(), c);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, f: PrimeField, other: &LinComb, c: u32) {
        for (p, &d) in &other.terms {
            self.add_term(f, p.clone(), f.mul(c, d));
        }
    }

    pub fn scale(&self, f: PrimeField, c: u32) -> LinComb {
        let mut out = LinComb::zero();
        out.add_scaled(f, self, c);
        out
    }

    pub fn pop_tip(&mut self) -> Option<(Path, u32)> {
        self.terms.pop_last()
    }

    /// `left * self * right`, dropping terms that do not compose.
    pub fn sandwich(&self, left: &Path, right: &Path) -> LinComb {
        let mut terms = BTreeMap::new();
        for (p, &c) in &self.terms {
            if let Some(q) = left.concat(p).and_then(|q| q.concat(right)) {
                terms.insert(q, c);
            }
        }
        LinComb { terms }
    }

    /// Drops terms of length `>= n`.
    pub fn truncated(&self, n: usize) -> LinComb {
        LinComb {
            terms: self
                .terms
                .iter()
                .filter(|(p, _)| p.len() < n)
                .map(|(p, &c)| (p.clone(), c))
                .collect(),
        }
    }

    pub fn reversed(&self) -> LinComb {
        LinComb { terms: self.terms.iter().map(|(p, &c)| (p.reversed(), c)).collect() }
    }

    /// Common endpoints if all terms are parallel.
    pub fn endpoints(&self) -> Option<(usize, usize)> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let ends = (first.source, first.target);
        it.all(|p| (p.source, p.target) == ends).then_some(ends)
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms
            .iter()
            .rev()
            .map(|(p, &c)| {
                if c == 1 {
                    q.display_path(p)
                } else {
                    format!("{c}*{}", q.display_path(p))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_length_then_lex() {
        let q = Quiver::new(&["1"], &[("x", "1", "1"), ("y", "1", "1")]).unwrap();
        let xy = q.path(&["x", "y"]).unwrap();
        let yx = q.path(&["y", "x"]).unwrap();
        let yyy = q.path(&["y", "y", "y"]).unwrap();
        assert!(xy < yx && yx < yyy);
        assert!(Path::trivial(0) < q.path(&["x"]).unwrap());
    }

    #[test]
    fn rejects_non_composable() {
        let q = Quiver::new(&["1", "2"], &[("a", "1", "2")]).unwrap();
        assert!(q.path(&["a", "a"]).is_err());
        assert!(Quiver::new(&["1", "1"], &[] as &[(&str, &str, &str)]).is_err());
        assert!(Quiver::new(&["1"], &[("a", "1", "3")]).is_err());
    }

    #[test]
    fn cancellation_removes_terms() {
        let f = PrimeField::gf2();
        let q = Quiver::new(&["1"], &[("x", "1", "1")]).unwrap();
        let mut c = LinComb::from_path(q.path(&["x", "x"]).unwrap());
        c.add_term(f, q.path(&["x", "x"]).unwrap(), 1);
        assert!(c.is_zero());
    }
}
