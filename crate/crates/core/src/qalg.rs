//! Bound quiver algebras `kQ/(I + J^N)` with an explicit path basis and
//! multiplication table.
//!
//! Paths compose right to left: the word `b*a` means "first `a`, then `b`".
//! Internally a [`PathWord`] stores its arrows in traversal order.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{axpy, zero_vec, Field, Scalar, Vector};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    /// Arrows are `(label, source label, target label)`.
    pub fn new<S: AsRef<str>>(vertices: &[S], arrows: &[(S, S, S)]) -> Result<Self> {
        let vertices: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let mut q = Quiver { vertices, arrows: vec![] };
        for (i, v) in q.vertices.iter().enumerate() {
            if q.vertices[..i].contains(v) {
                return Err(Error::InvalidQuiver(format!("duplicate vertex `{v}`")));
            }
        }
        for (label, s, t) in arrows {
            let label = label.as_ref().to_string();
            if q.arrows.iter().any(|a| a.label == label) || q.vertices.contains(&label) {
                return Err(Error::InvalidQuiver(format!("duplicate label `{label}`")));
            }
            let source = q.vertex(s.as_ref())?;
            let target = q.vertex(t.as_ref())?;
            q.arrows.push(Arrow { label, source, target });
        }
        Ok(q)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex(&self, label: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v == label)
            .ok_or_else(|| Error::InvalidQuiver(format!("unknown vertex `{label}`")))
    }

    pub fn arrow(&self, label: &str) -> Result<usize> {
        self.arrows
            .iter()
            .position(|a| a.label == label)
            .ok_or_else(|| Error::InvalidQuiver(format!("unknown arrow `{label}`")))
    }

    pub fn reversed(&self) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow { label: a.label.clone(), source: a.target, target: a.source })
                .collect(),
        }
    }

    pub fn is_acyclic(&self) -> bool {
        self.longest_path().is_some()
    }

    /// Length of the longest path, or `None` when there is an oriented cycle.
    pub fn longest_path(&self) -> Option<usize> {
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut order = Vec::new();
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        while let Some(v) = stack.pop() {
            order.push(v);
            for a in self.arrows.iter().filter(|a| a.source == v) {
                indeg[a.target] -= 1;
                if indeg[a.target] == 0 {
                    stack.push(a.target);
                }
            }
        }
        if order.len() < n {
            return None;
        }
        let mut best = vec![0usize; n];
        for &v in &order {
            for a in self.arrows.iter().filter(|a| a.source == v) {
                best[a.target] = best[a.target].max(best[v] + 1);
            }
        }
        Some(best.into_iter().max().unwrap_or(0))
    }

    /// Arrow counts `counts[i][j]` = number of arrows `i -> j`.
    pub fn arrow_counts(&self) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut c = vec![vec![0; n]; n];
        for a in &self.arrows {
            c[a.source][a.target] += 1;
        }
        c
    }

    /// Parse a path written right to left, e.g. `b*a`, or a trivial path `e_<vertex>`.
    pub fn parse_path(&self, text: &str) -> Result<PathWord> {
        let text = text.trim();
        if let Some(v) = text.strip_prefix("e_") {
            if let Ok(v) = self.vertex(v) {
                return Ok(PathWord::trivial(v));
            }
        }
        let mut labels: Vec<&str> = text.split('*').map(str::trim).collect();
        labels.reverse();
        let mut arrows = Vec::new();
        for l in labels {
            arrows.push(self.arrow(l)?);
        }
        PathWord::from_arrows(self, arrows)
    }
}

/// A path, stored as its source vertex and arrows in traversal order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PathWord {
    source: usize,
    arrows: Vec<usize>,
}

impl PathWord {
    pub fn trivial(v: usize) -> Self {
        PathWord { source: v, arrows: vec![] }
    }

    /// Arrows in traversal order (first arrow first).
    pub fn from_arrows(q: &Quiver, arrows: Vec<usize>) -> Result<Self> {
        let Some(&first) = arrows.first() else {
            return Err(Error::InvalidRelation("empty arrow word".into()));
        };
        for w in arrows.windows(2) {
            if q.arrows[w[0]].target != q.arrows[w[1]].source {
                return Err(Error::InvalidRelation(format!(
                    "arrows `{}` and `{}` do not compose",
                    q.arrows[w[0]].label, q.arrows[w[1]].label
                )));
            }
        }
        Ok(PathWord { source: q.arrows[first].source, arrows })
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self, q: &Quiver) -> usize {
        self.arrows.last().map_or(self.source, |&a| q.arrows[a].target)
    }

    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    /// `self` followed by `next`, i.e. the product `next * self`.
    pub fn then(&self, q: &Quiver, next: &PathWord) -> Option<PathWord> {
        if self.target(q) != next.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&next.arrows);
        Some(PathWord { source: self.source, arrows })
    }

    pub fn then_arrow(&self, q: &Quiver, a: usize) -> Option<PathWord> {
        if self.target(q) != q.arrows[a].source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.push(a);
        Some(PathWord { source: self.source, arrows })
    }

    pub fn reversed(&self, q: &Quiver) -> PathWord {
        let target = self.target(q);
        PathWord { source: target, arrows: self.arrows.iter().rev().copied().collect() }
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            format!("e_{}", q.vertices[self.source])
        } else {
            self.arrows.iter().rev().map(|&a| q.arrows[a].label.as_str()).collect::<Vec<_>>().join("*")
        }
    }

    fn key_cmp(&self, other: &Self) -> Ordering {
        (self.arrows.len(), &self.arrows, self.source).cmp(&(other.arrows.len(), &other.arrows, other.source))
    }
}

impl PartialOrd for PathWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PathWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key_cmp(other)
    }
}

/// A linear combination of parallel paths of length at least two.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RelationElement {
    terms: Vec<(Scalar, PathWord)>,
}

impl RelationElement {
    pub fn new(q: &Quiver, terms: Vec<(Scalar, PathWord)>) -> Result<Self> {
        let mut merged: BTreeMap<PathWord, Scalar> = BTreeMap::new();
        for (c, p) in terms {
            let e = merged.entry(p).or_insert_with(|| c.field().zero());
            *e = &*e + &c;
        }
        let terms: Vec<(Scalar, PathWord)> =
            merged.into_iter().filter(|(_, c)| !c.is_zero()).map(|(p, c)| (c, p)).collect();
        if terms.is_empty() {
            return Err(Error::InvalidRelation("relation is zero".into()));
        }
        let (s, t) = (terms[0].1.source(), terms[0].1.target(q));
        for (_, p) in &terms {
            if p.source() != s || p.target(q) != t {
                return Err(Error::InvalidRelation(format!(
                    "paths in a relation must be parallel (`{}`)",
                    p.display(q)
                )));
            }
            if p.len() < 2 {
                return Err(Error::InvalidRelation(format!(
                    "relation contains the path `{}` of length < 2",
                    p.display(q)
                )));
            }
        }
        Ok(RelationElement { terms })
    }

    /// Parse `b*a - a*c*b`, `2*x*y + 1/2 z*w`, ...
    pub fn parse(q: &Quiver, field: Field, text: &str) -> Result<Self> {
        let mut terms = Vec::new();
        let mut rest = text.trim();
        let mut sign = 1i64;
        if let Some(r) = rest.strip_prefix('-') {
            sign = -1;
            rest = r;
        } else if let Some(r) = rest.strip_prefix('+') {
            rest = r;
        }
        loop {
            let cut = rest.find(['+', '-']).unwrap_or(rest.len());
            let chunk = rest[..cut].trim();
            if chunk.is_empty() {
                return Err(Error::InvalidRelation(format!("empty term in `{text}`")));
            }
            terms.push(parse_term(q, field, chunk, sign)?);
            if cut == rest.len() {
                break;
            }
            sign = if rest.as_bytes()[cut] == b'-' { -1 } else { 1 };
            rest = &rest[cut + 1..];
        }
        RelationElement::new(q, terms)
    }

    pub fn terms(&self) -> &[(Scalar, PathWord)] {
        &self.terms
    }

    pub fn source(&self) -> usize {
        self.terms[0].1.source()
    }

    pub fn target(&self, q: &Quiver) -> usize {
        self.terms[0].1.target(q)
    }

    pub fn reversed(&self, q: &Quiver) -> RelationElement {
        let rq = q.reversed();
        let terms = self.terms.iter().map(|(c, p)| (c.clone(), p.reversed(q))).collect();
        RelationElement::new(&rq, terms).expect("reversal keeps relations valid")
    }

    pub fn display(&self, q: &Quiver) -> String {
        let mut out = String::new();
        for (i, (c, p)) in self.terms.iter().enumerate() {
            let (neg, mag) = match c {
                Scalar::Rat(r) if r < &num_rational::BigRational::from_integer(0.into()) => (true, Scalar::Rat(-r)),
                _ => (false, c.clone()),
            };
            if i > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            if !mag.is_one() {
                out.push_str(&format!("{mag}*"));
            }
            out.push_str(&p.display(q));
        }
        out
    }
}

fn parse_term(q: &Quiver, field: Field, chunk: &str, sign: i64) -> Result<(Scalar, PathWord)> {
    let mut coeff = field.int(sign);
    let mut parts: Vec<&str> = chunk.split('*').map(str::trim).collect();
    // A leading numeric factor, possibly juxtaposed as `2 a*b`.
    let first = parts[0];
    let (num_text, path_head) = match first.split_once(char::is_whitespace) {
        Some((n, rest)) if looks_numeric(n) => (Some(n), Some(rest.trim())),
        _ if looks_numeric(first) => (Some(first), None),
        _ => (None, Some(first)),
    };
    if let Some(n) = num_text {
        coeff = &coeff * &parse_scalar(field, n)?;
        match path_head {
            Some(h) => parts[0] = h,
            None => {
                parts.remove(0);
            }
        }
    }
    if parts.is_empty() {
        return Err(Error::InvalidRelation(format!("term `{chunk}` has no path")));
    }
    let path = q.parse_path(&parts.join("*"))?;
    Ok((coeff, path))
}

fn looks_numeric(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_digit() || c == '/')
}

/// Parse an integer or `p/q` rational literal (optionally signed).
pub fn parse_scalar(field: Field, s: &str) -> Result<Scalar> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a, b),
        None => (s, "1"),
    };
    let num: BigInt = num.trim().parse().map_err(|_| Error::Parse(format!("bad number `{s}`")))?;
    let den: BigInt = den.trim().parse().map_err(|_| Error::Parse(format!("bad number `{s}`")))?;
    field.ratio(&num, &den)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    Cyclic,
    Linear,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NakayamaSpec {
    pub orientation: Orientation,
    pub sequence: Vec<usize>,
}

impl NakayamaSpec {
    pub fn cyclic(sequence: &[usize]) -> Self {
        NakayamaSpec { orientation: Orientation::Cyclic, sequence: sequence.to_vec() }
    }

    pub fn linear(sequence: &[usize]) -> Self {
        NakayamaSpec { orientation: Orientation::Linear, sequence: sequence.to_vec() }
    }

    pub fn validate(&self) -> Result<()> {
        let c = &self.sequence;
        let n = c.len();
        let bad = |m: String| Err(Error::InvalidAdmissibleSequence(m));
        if n == 0 {
            return bad("empty sequence".into());
        }
        match self.orientation {
            Orientation::Cyclic => {
                for i in 0..n {
                    let next = c[(i + 1) % n];
                    if c[i] < 2 {
                        return bad(format!("c_{} = {} < 2 on a cyclic quiver", i + 1, c[i]));
                    }
                    if next + 1 < c[i] {
                        return bad(format!("c_{} < c_{} - 1", (i + 1) % n + 1, i + 1));
                    }
                }
            }
            Orientation::Linear => {
                if c[n - 1] != 1 {
                    return bad("the last entry must be 1".into());
                }
                for i in 0..n - 1 {
                    if c[i] < 2 {
                        return bad(format!("c_{} = {} < 2 at a non-sink vertex", i + 1, c[i]));
                    }
                    if c[i + 1] + 1 < c[i] {
                        return bad(format!("c_{} < c_{} - 1", i + 2, i + 1));
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum NilpotencyVerdict {
    Stable,
    Unstable { dim_at_bound: usize, dim_at_next: usize },
}

type Sparse = BTreeMap<usize, Scalar>;

/// A finite-dimensional bound quiver algebra with an explicit path basis.
#[derive(Clone, Debug)]
pub struct Algebra {
    quiver: Quiver,
    relations: Vec<RelationElement>,
    nilpotency: usize,
    field: Field,
    basis: Vec<PathWord>,
    index: HashMap<PathWord, usize>,
    /// `table[i][j]` = `b_i * b_j` as a sparse coefficient list.
    table: Vec<Vec<Vec<(usize, Scalar)>>>,
    nakayama: Option<NakayamaSpec>,
    opposite: OnceLock<Arc<Algebra>>,
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.nilpotency == other.nilpotency
            && self.quiver == other.quiver
            && self.relations == other.relations
            && self.basis == other.basis
            && self.table == other.table
    }
}

impl Eq for Algebra {}

impl Algebra {
    /// `kQ/(I + J^N)` where `I` is generated by `relations`.
    pub fn build(quiver: Quiver, relations: Vec<RelationElement>, nilpotency: usize, field: Field) -> Result<Self> {
        if nilpotency < 2 {
            return Err(Error::InvalidRelation("nilpotency bound must be at least 2".into()));
        }
        for r in &relations {
            for (c, p) in r.terms() {
                if c.field() != field {
                    return Err(Error::InvalidField("relation coefficient from another field".into()));
                }
                if p.arrows().iter().any(|&a| a >= quiver.arrows.len()) || p.source() >= quiver.num_vertices() {
                    return Err(Error::InvalidQuiver("relation refers to a missing arrow".into()));
                }
            }
        }
        let paths = enumerate_paths(&quiver, nilpotency);
        let pindex: HashMap<&PathWord, usize> = paths.iter().enumerate().map(|(i, p)| (p, i)).collect();

        // Ideal (I + J^N)/J^N: relations closed under multiplication by arrows on both sides.
        let mut echelon: HashMap<usize, Sparse> = HashMap::new();
        let mut queue: Vec<Sparse> = Vec::new();
        for r in &relations {
            let mut v = Sparse::new();
            for (c, p) in r.terms() {
                if let Some(&i) = pindex.get(p) {
                    v.insert(i, c.clone());
                }
            }
            queue.push(v);
        }
        while let Some(v) = queue.pop() {
            let Some(row) = insert_echelon(&mut echelon, v) else { continue };
            for a in 0..quiver.arrows.len() {
                let arrow = PathWord { source: quiver.arrows[a].source, arrows: vec![a] };
                for left in [true, false] {
                    let mut w = Sparse::new();
                    for (&i, c) in &row {
                        let prod = if left { paths[i].then_arrow(&quiver, a) } else { arrow.then(&quiver, &paths[i]) };
                        if let Some(p) = prod {
                            if let Some(&j) = pindex.get(&p) {
                                w.insert(j, c.clone());
                            }
                        }
                    }
                    if !w.is_empty() {
                        queue.push(w);
                    }
                }
            }
        }

        let basis: Vec<PathWord> =
            paths.iter().enumerate().filter(|(i, _)| !echelon.contains_key(i)).map(|(_, p)| p.clone()).collect();
        let index: HashMap<PathWord, usize> = basis.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let normal_form = |p: &PathWord| -> Vec<(usize, Scalar)> {
            let Some(&i) = pindex.get(p) else { return vec![] };
            let mut v = Sparse::new();
            v.insert(i, field.one());
            let mut out = Vec::new();
            while let Some((k, c)) = v.pop_last() {
                if let Some(row) = echelon.get(&k) {
                    for (&j, x) in row.range(..k) {
                        sparse_axpy(&mut v, j, &-(&c * x));
                    }
                } else {
                    out.push((index[&paths[k]], c));
                }
            }
            out.sort_by_key(|(i, _)| *i);
            out
        };
        let d = basis.len();
        let mut table = vec![vec![Vec::new(); d]; d];
        for (i, bi) in basis.iter().enumerate() {
            for (j, bj) in basis.iter().enumerate() {
                if let Some(p) = bj.then(&quiver, bi) {
                    table[i][j] = normal_form(&p);
                }
            }
        }
        Ok(Algebra {
            quiver,
            relations,
            nilpotency,
            field,
            basis,
            index,
            table,
            nakayama: None,
            opposite: OnceLock::new(),
        })
    }

    /// The Nakayama algebra with the given admissible sequence.
    pub fn nakayama(spec: &NakayamaSpec, field: Field) -> Result<Self> {
        spec.validate()?;
        let n = spec.sequence.len();
        let vertices: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let mut arrows = Vec::new();
        for i in 0..n {
            let j = match spec.orientation {
                Orientation::Cyclic => (i + 1) % n,
                Orientation::Linear if i + 1 < n => i + 1,
                Orientation::Linear => continue,
            };
            arrows.push((format!("a{}", i + 1), vertices[i].clone(), vertices[j].clone()));
        }
        let quiver = Quiver::new(&vertices, &arrows)?;
        let mut relations = Vec::new();
        for (i, &c) in spec.sequence.iter().enumerate() {
            let steps: Vec<usize> = (0..c).map(|k| (i + k) % n).collect();
            if spec.orientation == Orientation::Linear && i + c > n - 1 {
                continue;
            }
            let word = PathWord::from_arrows(&quiver, steps)?;
            relations.push(RelationElement::new(&quiver, vec![(field.one(), word)])?);
        }
        let bound = spec.sequence.iter().max().copied().unwrap_or(1) + 1;
        let mut alg = Algebra::build(quiver, relations, bound.max(2), field)?;
        alg.nakayama = Some(spec.clone());
        Ok(alg)
    }

    /// `kQ[eps]`: one loop per vertex, squaring to zero and commuting with every arrow.
    pub fn dual_numbers(path_algebra: &Algebra) -> Result<Self> {
        let q = &path_algebra.quiver;
        if !path_algebra.relations.is_empty() {
            return Err(Error::NotHereditaryPathAlgebra("input has relations".into()));
        }
        let longest = q.longest_path().ok_or_else(|| Error::NotHereditaryPathAlgebra("quiver has a cycle".into()))?;
        let mut arrows: Vec<(String, String, String)> = q
            .arrows
            .iter()
            .map(|a| (a.label.clone(), q.vertices[a.source].clone(), q.vertices[a.target].clone()))
            .collect();
        for v in &q.vertices {
            arrows.push((format!("eps{v}"), v.clone(), v.clone()));
        }
        let nq = Quiver::new(&q.vertices, &arrows)?;
        let field = path_algebra.field;
        let eps = |v: usize| q.arrows.len() + v;
        let mut relations = Vec::new();
        for v in 0..q.num_vertices() {
            let w = PathWord::from_arrows(&nq, vec![eps(v), eps(v)])?;
            relations.push(RelationElement::new(&nq, vec![(field.one(), w)])?);
        }
        for (ai, a) in q.arrows.iter().enumerate() {
            // eps_j * a - a * eps_i
            let lhs = PathWord::from_arrows(&nq, vec![ai, eps(a.target)])?;
            let rhs = PathWord::from_arrows(&nq, vec![eps(a.source), ai])?;
            relations.push(RelationElement::new(&nq, vec![(field.one(), lhs), (field.int(-1), rhs)])?);
        }
        Algebra::build(nq, relations, longest + 3, field)
    }

    /// The path algebra of `Q` truncated above its longest path (no relations).
    pub fn path_algebra(quiver: Quiver, field: Field) -> Result<Self> {
        let longest = quiver
            .longest_path()
            .ok_or_else(|| Error::NotHereditaryPathAlgebra("quiver has a cycle".into()))?;
        Algebra::build(quiver, vec![], longest + 2, field)
    }

    /// Same basis with every path reversed and the multiplication transposed.
    pub fn opposite(&self) -> Arc<Algebra> {
        self.opposite
            .get_or_init(|| {
                let quiver = self.quiver.reversed();
                let relations = self.relations.iter().map(|r| r.reversed(&self.quiver)).collect();
                let basis: Vec<PathWord> = self.basis.iter().map(|p| p.reversed(&self.quiver)).collect();
                let index = basis.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
                let d = basis.len();
                let table = (0..d).map(|i| (0..d).map(|j| self.table[j][i].clone()).collect()).collect();
                Arc::new(Algebra {
                    quiver,
                    relations,
                    nilpotency: self.nilpotency,
                    field: self.field,
                    basis,
                    index,
                    table,
                    nakayama: None,
                    opposite: OnceLock::new(),
                })
            })
            .clone()
    }

    /// Rebuild at `N + 1` and compare: a stable verdict means the truncation changed nothing.
    pub fn certify_nilpotency_independence(&self) -> Result<NilpotencyVerdict> {
        let next = Algebra::build(self.quiver.clone(), self.relations.clone(), self.nilpotency + 1, self.field)?;
        if next.basis == self.basis && next.table == self.table {
            Ok(NilpotencyVerdict::Stable)
        } else {
            Ok(NilpotencyVerdict::Unstable { dim_at_bound: self.dim(), dim_at_next: next.dim() })
        }
    }

    pub fn with_nilpotency(&self, n: usize) -> Result<Algebra> {
        Algebra::build(self.quiver.clone(), self.relations.clone(), n, self.field)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[RelationElement] {
        &self.relations
    }

    pub fn nilpotency(&self) -> usize {
        self.nilpotency
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.quiver.num_vertices()
    }

    pub fn basis(&self) -> &[PathWord] {
        &self.basis
    }

    pub fn nakayama_spec(&self) -> Option<&NakayamaSpec> {
        self.nakayama.as_ref()
    }

    pub fn basis_index(&self, p: &PathWord) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn trivial_index(&self, v: usize) -> usize {
        self.index[&PathWord::trivial(v)]
    }

    pub fn arrow_basis_index(&self, a: usize) -> usize {
        let arrow = &self.quiver.arrows[a];
        self.index[&PathWord { source: arrow.source, arrows: vec![a] }]
    }

    pub fn product_of_basis(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.table[i][j]
    }

    /// Basis indices of paths from `source` to `target`.
    pub fn basis_between(&self, source: usize, target: usize) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| self.basis[i].source() == source && self.basis[i].target(&self.quiver) == target)
            .collect()
    }

    pub fn basis_from(&self, source: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.basis[i].source() == source).collect()
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let mut out = zero_vec(self.field, self.dim());
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in &self.table[i][j] {
                    axpy(&mut out[*k], &ab, c);
                }
            }
        }
        out
    }

    pub fn one(&self) -> Vector {
        let mut v = zero_vec(self.field, self.dim());
        for i in 0..self.num_vertices() {
            v[self.trivial_index(i)] = self.field.one();
        }
        v
    }

    /// The element represented by a path (zero if it is killed).
    pub fn path_element(&self, p: &PathWord) -> Vector {
        let mut v = zero_vec(self.field, self.dim());
        v[self.trivial_index(p.source())] = self.field.one();
        for &a in p.arrows() {
            let mut e = zero_vec(self.field, self.dim());
            e[self.arrow_basis_index(a)] = self.field.one();
            v = self.mul(&e, &v);
        }
        v
    }

    pub fn relation_element(&self, r: &RelationElement) -> Vector {
        let mut v = zero_vec(self.field, self.dim());
        for (c, p) in r.terms() {
            let e = self.path_element(p);
            for (x, y) in v.iter_mut().zip(&e) {
                axpy(x, c, y);
            }
        }
        v
    }

    /// Exhaustive associativity check on basis triples.
    pub fn is_associative(&self) -> bool {
        let d = self.dim();
        let f = self.field;
        let unit = |i: usize| {
            let mut v = zero_vec(f, d);
            v[i] = f.one();
            v
        };
        for i in 0..d {
            for j in 0..d {
                let ij = self.mul(&unit(i), &unit(j));
                for k in 0..d {
                    if self.mul(&ij, &unit(k)) != self.mul(&unit(i), &self.mul(&unit(j), &unit(k))) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_unital(&self) -> bool {
        let one = self.one();
        (0..self.dim()).all(|i| {
            let e = crate::linalg::unit_vec(self.field, self.dim(), i);
            self.mul(&one, &e) == e && self.mul(&e, &one) == e
        })
    }

    pub fn describe(&self) -> String {
        let q = &self.quiver;
        let mut s = format!("field {}\nvertices {}\n", self.field, q.vertices.join(" "));
        for a in &q.arrows {
            s.push_str(&format!("arrow {}: {} -> {}\n", a.label, q.vertices[a.source], q.vertices[a.target]));
        }
        for r in &self.relations {
            s.push_str(&format!("relation {}\n", r.display(q)));
        }
        s.push_str(&format!("nilpotency {}\ndimension {}\n", self.nilpotency, self.dim()));
        s
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

fn enumerate_paths(q: &Quiver, bound: usize) -> Vec<PathWord> {
    let mut all: Vec<PathWord> = (0..q.num_vertices()).map(PathWord::trivial).collect();
    let mut frontier = all.clone();
    for _ in 1..bound {
        let mut next = Vec::new();
        for p in &frontier {
            let t = p.target(q);
            for (a, arrow) in q.arrows.iter().enumerate() {
                if arrow.source == t {
                    let mut arrows = p.arrows.clone();
                    arrows.push(a);
                    next.push(PathWord { source: p.source, arrows });
                }
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    all.sort();
    all
}

fn sparse_axpy(v: &mut Sparse, k: usize, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    match v.get_mut(&k) {
        Some(x) => {
            *x = &*x + c;
            if x.is_zero() {
                v.remove(&k);
            }
        }
        None => {
            v.insert(k, c.clone());
        }
    }
}

/// Reduce `v` against the echelon by leading terms; insert and return it if it survives.
fn insert_echelon(echelon: &mut HashMap<usize, Sparse>, mut v: Sparse) -> Option<Sparse> {
    v.retain(|_, c| !c.is_zero());
    loop {
        let (&k, c) = v.last_key_value()?;
        let Some(row) = echelon.get(&k) else { break };
        let c = c.clone();
        for (&j, x) in row {
            sparse_axpy(&mut v, j, &-(&c * x));
        }
    }
    let (&k, lead) = v.last_key_value()?;
    let inv = lead.inv().unwrap();
    let row: Sparse = v.into_iter().map(|(j, x)| (j, &x * &inv)).collect();
    echelon.insert(k, row.clone());
    Some(row)
}
