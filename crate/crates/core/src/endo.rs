//! Endomorphism algebras `Γ = End_A(M)^op`, their Gabriel quivers and presentations,
//! and the functors `Hom_A(M, -)` and `M ⊗_Γ -`.
//!
//! Conventions: the summands `M_0, .., M_{r-1}` of `M` are the vertices of `Γ`.
//! A map `M_s -> M_t` lies in `e_s Γ e_t`, so it contributes to arrows `t -> s`.
//! The product in `Γ` is `x · y = y ∘ x`, and a path with arrows `a_1, .., a_k`
//! (traversal order) evaluates to `y_{a_1} ∘ .. ∘ y_{a_k}`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::homol::{proj_dimension, projective_cover, Resolution, SyzygyCertificate};
use crate::linalg::{independent_subset, Field, Matrix, QuotientSpace, Scalar, SubspaceCoords, Vector};
use crate::modcat::{
    cokernel, decompose_grouped, direct_sum, endo_radical, hom_space, DirectSum, HomSpace, Module, ModuleMap, Named,
};
use crate::qalg::{Algebra, PathWord, Quiver, RelationElement};

/// A finite-dimensional algebra given by structure constants.
#[derive(Clone, Debug, PartialEq)]
pub struct StructAlgebra {
    pub field: Field,
    /// `table[i][j]` = coordinates of `b_i · b_j`.
    pub table: Vec<Vec<Vector>>,
    pub one: Vector,
}

impl StructAlgebra {
    pub fn from_algebra(alg: &Algebra) -> Self {
        let f = alg.field();
        let d = alg.dim();
        let table = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        let mut v = crate::linalg::zero_vec(f, d);
                        for (k, c) in alg.product_of_basis(i, j) {
                            v[*k] = c.clone();
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        StructAlgebra { field: f, table, one: alg.one() }
    }

    pub fn dim(&self) -> usize {
        self.one.len()
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let mut out = crate::linalg::zero_vec(self.field, self.dim());
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in self.table[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] = &out[k] + &(&ab * c);
                    }
                }
            }
        }
        out
    }

    /// Matrix of left multiplication by basis element `i`.
    pub fn left_mult(&self, i: usize) -> Matrix {
        Matrix::from_columns(self.field, self.dim(), &self.table[i])
    }

    pub fn is_associative(&self) -> bool {
        let d = self.dim();
        let unit = |i| crate::linalg::unit_vec(self.field, d, i);
        (0..d).all(|i| {
            (0..d).all(|j| {
                (0..d).all(|k| {
                    let l = self.mul(&self.table[i][j], &unit(k));
                    let r = self.mul(&unit(i), &self.table[j][k]);
                    l == r
                })
            })
        })
    }

    pub fn is_unital(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| {
            let e = crate::linalg::unit_vec(self.field, d, i);
            self.mul(&self.one, &e) == e && self.mul(&e, &self.one) == e
        })
    }

    /// Jacobson radical via the trace form of the regular representation.
    pub fn radical(&self) -> Result<Vec<Vector>> {
        let d = self.dim();
        if let Field::Prime(p) = self.field {
            if (p as usize) <= 2 * d {
                return Err(Error::UnsupportedCharacteristic(format!("radical needs p > {}", 2 * d)));
            }
        }
        let ls: Vec<Matrix> = (0..d).map(|i| self.left_mult(i)).collect();
        let mut gram = Matrix::zeros(self.field, d, d);
        for i in 0..d {
            for j in i..d {
                let p = ls[i].mul(&ls[j]);
                let mut t = self.field.zero();
                for k in 0..d {
                    t = &t + p.get(k, k);
                }
                gram.set(i, j, t.clone());
                gram.set(j, i, t);
            }
        }
        Ok(gram.kernel_basis())
    }
}

/// `Γ = End_A(M)^op` for a basic `M`, with its automatic presentation.
#[derive(Clone, Debug)]
pub struct EndoAlgebra {
    pub summands: Vec<Named>,
    pub sum: DirectSum,
    /// `blocks[s][t] = Hom(M_s, M_t)`.
    blocks: Vec<Vec<HomSpace>>,
    /// `rad_pow[k][s][t]`: coordinates spanning `rad^{k+1}` inside `blocks[s][t]`.
    rad_pow: Vec<Vec<Vec<Vec<Vector>>>>,
    pub loewy_length: usize,
    pub quiver: Quiver,
    /// Arrow `α: u -> v` of the Gabriel quiver is the map `M_v -> M_u`.
    pub arrow_maps: Vec<ModuleMap>,
    pub presentation: Arc<Algebra>,
    /// Presentation basis path `u -> v` evaluated as a map `M_v -> M_u`.
    pub basis_maps: Vec<ModuleMap>,
    /// True when `M` had repeated summands that were collapsed.
    pub basicized: bool,
}

fn label_of(i: usize) -> String {
    format!("x{i}")
}

impl EndoAlgebra {
    /// Decompose `M`, keep one summand per isomorphism class, and build `Γ`.
    pub fn new(m: &Module) -> Result<Self> {
        let groups = decompose_grouped(m)?;
        let basicized = groups.iter().any(|g| g.1 > 1);
        let named = groups
            .into_iter()
            .enumerate()
            .map(|(i, (module, _))| Named { name: format!("M{i}"), module })
            .collect();
        let mut e = EndoAlgebra::from_summands(named)?;
        e.basicized = basicized;
        Ok(e)
    }

    /// Build from pairwise non-isomorphic indecomposable summands.
    pub fn from_summands(summands: Vec<Named>) -> Result<Self> {
        if summands.is_empty() {
            return Err(Error::InvalidModule("no summands".into()));
        }
        let modules: Vec<Module> = summands.iter().map(|n| n.module.clone()).collect();
        for i in 0..modules.len() {
            for j in 0..i {
                if crate::modcat::is_isomorphic(&modules[i], &modules[j])?.is_yes() {
                    return Err(Error::NotBasic(format!(
                        "summands `{}` and `{}` are isomorphic",
                        summands[j].name, summands[i].name
                    )));
                }
            }
        }
        let sum = direct_sum(&modules)?;
        let f = sum.module.field();
        let r = modules.len();
        let blocks: Vec<Vec<HomSpace>> = (0..r)
            .map(|s| (0..r).map(|t| hom_space(&modules[s], &modules[t])).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        // rad Γ, blockwise
        let mut rad: Vec<Vec<Vec<Vector>>> = vec![vec![vec![]; r]; r];
        for s in 0..r {
            for t in 0..r {
                let d = blocks[s][t].dim();
                if s == t {
                    let rd = endo_radical(&modules[s], &blocks[s][s])?;
                    if d - rd.len() != 1 {
                        return Err(Error::NotBasic(format!(
                            "summand `{}` has End/rad of dimension {}",
                            summands[s].name,
                            d - rd.len()
                        )));
                    }
                    rad[s][t] = rd;
                } else {
                    rad[s][t] = (0..d).map(|i| crate::linalg::unit_vec(f, d, i)).collect();
                }
            }
        }
        let mut e = EndoAlgebra {
            summands,
            sum,
            blocks,
            rad_pow: vec![rad],
            loewy_length: 0,
            quiver: Quiver::new::<&str>(&[], &[])?,
            arrow_maps: vec![],
            presentation: Arc::new(Algebra::path_algebra(Quiver::new(&["v"], &[])?, f)?),
            basis_maps: vec![],
            basicized: false,
        };
        // rad^{k+1} = rad^k · rad
        loop {
            let last = e.rad_pow.last().unwrap();
            if last.iter().all(|row| row.iter().all(Vec::is_empty)) {
                break;
            }
            let next = e.block_products(last, &e.rad_pow[0]);
            e.rad_pow.push(next);
        }
        // rad_pow holds rad^1..rad^L with rad^L = 0
        e.loewy_length = e.rad_pow.len();
        e.build_quiver()?;
        e.build_presentation()?;
        Ok(e)
    }

    pub fn num_vertices(&self) -> usize {
        self.summands.len()
    }

    pub fn field(&self) -> Field {
        self.sum.module.field()
    }

    pub fn module(&self) -> &Module {
        &self.sum.module
    }

    pub fn summand(&self, t: usize) -> &Module {
        &self.summands[t].module
    }

    pub fn block(&self, s: usize, t: usize) -> &HomSpace {
        &self.blocks[s][t]
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().flatten().map(HomSpace::dim).sum()
    }

    /// Span of `y ∘ x` with `x ∈ a[s][u]`, `y ∈ b[u][t]`.
    fn block_products(&self, a: &[Vec<Vec<Vector>>], b: &[Vec<Vec<Vector>>]) -> Vec<Vec<Vec<Vector>>> {
        let r = self.num_vertices();
        let f = self.field();
        let mut out = vec![vec![vec![]; r]; r];
        for s in 0..r {
            for t in 0..r {
                let mut vs = Vec::new();
                for u in 0..r {
                    for x in &a[s][u] {
                        let xm = self.blocks[s][u].combine(x);
                        for y in &b[u][t] {
                            let ym = self.blocks[u][t].combine(y);
                            vs.push(self.blocks[s][t].coords(&xm.then(&ym)).expect("composition is a homomorphism"));
                        }
                    }
                }
                let keep = independent_subset(f, self.blocks[s][t].dim(), &vs);
                out[s][t] = keep.into_iter().map(|k| vs[k].clone()).collect();
            }
        }
        out
    }

    fn rad_block(&self, k: usize, s: usize, t: usize) -> &[Vector] {
        if k == 0 {
            unreachable!("rad^0 is not stored")
        }
        self.rad_pow.get(k - 1).map(|p| p[s][t].as_slice()).unwrap_or(&[])
    }

    fn build_quiver(&mut self) -> Result<()> {
        let r = self.num_vertices();
        let f = self.field();
        let names: Vec<String> = self.summands.iter().map(|n| n.name.clone()).collect();
        let mut arrows = Vec::new();
        let mut maps = Vec::new();
        for t in 0..r {
            for s in 0..r {
                let d = self.blocks[s][t].dim();
                let r1 = self.rad_block(1, s, t).to_vec();
                let r2 = self.rad_block(2, s, t).to_vec();
                let mut span = r2.clone();
                for v in r1 {
                    let mut trial = span.clone();
                    trial.push(v.clone());
                    if crate::linalg::span_rank(f, d, &trial) > crate::linalg::span_rank(f, d, &span) {
                        span = trial;
                        let label = label_of(arrows.len());
                        arrows.push((label, names[t].clone(), names[s].clone()));
                        maps.push(self.blocks[s][t].combine(&v));
                    }
                }
            }
        }
        let vs: Vec<&str> = names.iter().map(String::as_str).collect();
        let arrs: Vec<(&str, &str, &str)> = arrows.iter().map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str())).collect();
        self.quiver = Quiver::new(&vs, &arrs)?;
        self.arrow_maps = maps;
        Ok(())
    }

    /// Evaluate a path of the Gabriel quiver.
    pub fn eval_path(&self, p: &PathWord) -> ModuleMap {
        let mut cur = self.summand(p.source()).identity();
        for &a in p.arrows() {
            cur = self.arrow_maps[a].then(&cur);
        }
        cur
    }

    /// Coordinates in `blocks[s][t]`.
    fn block_coords(&self, s: usize, t: usize, m: &ModuleMap) -> Vector {
        self.blocks[s][t].coords(m).expect("map between summands is a homomorphism")
    }

    fn build_presentation(&mut self) -> Result<()> {
        let q = self.quiver.clone();
        let f = self.field();
        let l = self.loewy_length;
        let mut by_pair: BTreeMap<(usize, usize), Vec<PathWord>> = BTreeMap::new();
        let mut frontier: Vec<PathWord> = (0..q.num_vertices()).map(PathWord::trivial).collect();
        for len in 1..l {
            let mut next = Vec::new();
            for p in &frontier {
                for a in 0..q.arrows().len() {
                    if let Some(np) = p.then_arrow(&q, a) {
                        if len >= 2 {
                            by_pair.entry((np.source(), np.target(&q))).or_default().push(np.clone());
                        }
                        next.push(np);
                    }
                }
            }
            frontier = next;
        }
        let mut relations = Vec::new();
        for ((u, v), paths) in &by_pair {
            let cols: Vec<Vector> = paths.iter().map(|p| self.block_coords(*v, *u, &self.eval_path(p))).collect();
            let m = Matrix::from_columns(f, self.blocks[*v][*u].dim(), &cols);
            for k in m.kernel_basis() {
                let terms = k.iter().zip(paths).filter(|(c, _)| !c.is_zero()).map(|(c, p)| (c.clone(), p.clone())).collect();
                relations.push(RelationElement::new(&q, terms)?);
            }
        }
        let alg = Algebra::build(q, relations, l.max(2), f)?;
        if alg.dim() != self.dim() {
            return Err(Error::InvalidRelation(format!(
                "automatic presentation has dimension {} but End has dimension {}",
                alg.dim(),
                self.dim()
            )));
        }
        self.basis_maps = alg.basis().iter().map(|p| self.eval_path(p)).collect();
        self.presentation = Arc::new(alg);
        Ok(())
    }

    /// Structure constants of `Γ` in the block basis (`x · y = y ∘ x`).
    pub fn structure(&self) -> StructAlgebra {
        let r = self.num_vertices();
        let f = self.field();
        let mut index = Vec::new();
        let mut offset = vec![vec![0; r]; r];
        for s in 0..r {
            for t in 0..r {
                offset[s][t] = index.len();
                for k in 0..self.blocks[s][t].dim() {
                    index.push((s, t, k));
                }
            }
        }
        let d = index.len();
        let table = index
            .iter()
            .map(|&(s, t, k)| {
                index
                    .iter()
                    .map(|&(s2, t2, k2)| {
                        let mut out = crate::linalg::zero_vec(f, d);
                        if s2 == t {
                            let x = &self.blocks[s][t].basis[k];
                            let y = &self.blocks[s2][t2].basis[k2];
                            let c = self.block_coords(s, t2, &x.then(y));
                            for (i, v) in c.into_iter().enumerate() {
                                out[offset[s][t2] + i] = v;
                            }
                        }
                        out
                    })
                    .collect()
            })
            .collect();
        let mut one = crate::linalg::zero_vec(f, d);
        for s in 0..r {
            let c = self.block_coords(s, s, &self.summand(s).identity());
            for (i, v) in c.into_iter().enumerate() {
                one[offset[s][s] + i] = v;
            }
        }
        StructAlgebra { field: f, table, one }
    }

    fn global_offsets(&self) -> Vec<Vec<usize>> {
        let r = self.num_vertices();
        let mut off = vec![vec![0; r]; r];
        let mut acc = 0;
        for s in 0..r {
            for t in 0..r {
                off[s][t] = acc;
                acc += self.blocks[s][t].dim();
            }
        }
        off
    }

    /// Global coordinates of a map `M_s -> M_t`.
    fn global_coords(&self, s: usize, t: usize, m: &ModuleMap, off: &[Vec<usize>]) -> Vector {
        let mut out = crate::linalg::zero_vec(self.field(), self.dim());
        for (i, v) in self.block_coords(s, t, m).into_iter().enumerate() {
            out[off[s][t] + i] = v;
        }
        out
    }
}

/// The Gabriel quiver of a bound quiver algebra, read off from `End_A(A)^op`.
pub fn gabriel_quiver(alg: &Arc<Algebra>) -> Result<Quiver> {
    let names = alg.quiver().vertices().to_vec();
    let summands = (0..alg.num_vertices())
        .map(|v| Ok(Named { name: names[v].clone(), module: Module::projective(alg.clone(), v)? }))
        .collect::<Result<Vec<_>>>()?;
    Ok(EndoAlgebra::from_summands(summands)?.quiver)
}

#[derive(Clone, Debug)]
pub struct PresentationClaim {
    pub quiver: Quiver,
    pub relations: Vec<RelationElement>,
    pub nilpotency: usize,
}

impl PresentationClaim {
    pub fn parse(quiver: Quiver, field: Field, relations: &[&str], nilpotency: usize) -> Result<Self> {
        let relations = relations.iter().map(|r| RelationElement::parse(&quiver, field, r)).collect::<Result<_>>()?;
        Ok(PresentationClaim { quiver, relations, nilpotency })
    }
}

/// An explicit algebra map from the claimed presentation onto `Γ`.
#[derive(Clone, Debug)]
pub struct PresentationWitness {
    /// Claim vertex `v` goes to summand `vertex_map[v]`.
    pub vertex_map: Vec<usize>,
    pub arrow_images: Vec<ModuleMap>,
}

#[derive(Clone, Debug)]
pub enum PresentationVerdict {
    Verified(PresentationWitness),
    RefutedQuiver(String),
    RefutedDimension { claimed: usize, actual: usize },
    Inconclusive(String),
}

impl PresentationVerdict {
    pub fn is_verified(&self) -> bool {
        matches!(self, PresentationVerdict::Verified(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            PresentationVerdict::Verified(_) => "verified",
            PresentationVerdict::RefutedQuiver(_) => "refuted: quiver",
            PresentationVerdict::RefutedDimension { .. } => "refuted: dimension",
            PresentationVerdict::Inconclusive(_) => "inconclusive",
        }
    }
}

/// Vertex bijections `claim -> gabriel` preserving arrow counts.
pub fn quiver_bijections(claim: &Quiver, actual: &Quiver) -> Vec<Vec<usize>> {
    let n = claim.num_vertices();
    if n != actual.num_vertices() || claim.arrows().len() != actual.arrows().len() {
        return vec![];
    }
    let cc = claim.arrow_counts();
    let ac = actual.arrow_counts();
    let mut out = Vec::new();
    let mut perm = Vec::new();
    let mut used = vec![false; n];
    fn rec(
        k: usize,
        n: usize,
        cc: &[Vec<usize>],
        ac: &[Vec<usize>],
        perm: &mut Vec<usize>,
        used: &mut [bool],
        out: &mut Vec<Vec<usize>>,
    ) {
        if k == n {
            out.push(perm.clone());
            return;
        }
        for c in 0..n {
            if used[c] {
                continue;
            }
            perm.push(c);
            let ok = (0..=k).all(|i| cc[i][k] == ac[perm[i]][c] && cc[k][i] == ac[c][perm[i]]);
            if ok {
                used[c] = true;
                rec(k + 1, n, cc, ac, perm, used, out);
                used[c] = false;
            }
            perm.pop();
        }
    }
    rec(0, n, &cc, &ac, &mut perm, &mut used, &mut out);
    out
}

const SEARCH_LIMIT: usize = 20_000;

struct Search<'a> {
    endo: &'a EndoAlgebra,
    claim: &'a PresentationClaim,
    pi: Vec<usize>,
    /// Gabriel arrow used for each claim arrow.
    gab: Vec<usize>,
}

impl Search<'_> {
    /// Block `(s, t)` holding the image of claim arrow `a` (a map `M_s -> M_t`).
    fn arrow_block(&self, a: usize) -> (usize, usize) {
        let arr = &self.claim.quiver.arrows()[a];
        (self.pi[arr.target], self.pi[arr.source])
    }

    fn images(&self, lambda: &[Scalar], corr: &[Vector]) -> Vec<ModuleMap> {
        (0..self.claim.quiver.arrows().len())
            .map(|a| {
                let (s, t) = self.arrow_block(a);
                let base = self.endo.arrow_maps[self.gab[a]].scale(&lambda[a]);
                let r2 = self.endo.rad_block(2, s, t);
                let mut m = base;
                for (c, v) in corr[a].iter().zip(r2) {
                    if !c.is_zero() {
                        m = m.add(&self.endo.blocks[s][t].combine(v).scale(c));
                    }
                }
                m
            })
            .collect()
    }

    fn eval(&self, p: &PathWord, imgs: &[ModuleMap], replace: Option<(usize, &ModuleMap)>) -> ModuleMap {
        let mut cur = self.endo.summand(self.pi[p.source()]).identity();
        for (i, &a) in p.arrows().iter().enumerate() {
            let y = match replace {
                Some((pos, m)) if pos == i => m,
                _ => &imgs[a],
            };
            cur = y.then(&cur);
        }
        cur
    }

    fn relation_value(&self, r: &RelationElement, imgs: &[ModuleMap]) -> Vector {
        let q = &self.claim.quiver;
        let (s, t) = (self.pi[r.target(q)], self.pi[r.source()]);
        let mut acc = crate::linalg::zero_vec(self.endo.field(), self.endo.blocks[s][t].dim());
        for (c, p) in r.terms() {
            let v = self.endo.block_coords(s, t, &self.eval(p, imgs, None));
            acc = crate::linalg::vec_add(&acc, &crate::linalg::vec_scale(c, &v));
        }
        acc
    }

    fn residual(&self, imgs: &[ModuleMap]) -> Vector {
        self.claim.relations.iter().flat_map(|r| self.relation_value(r, imgs)).collect()
    }

    fn jacobian(&self, imgs: &[ModuleMap], unknowns: &[(usize, usize)]) -> Matrix {
        let f = self.endo.field();
        let q = &self.claim.quiver;
        let mut cols = Vec::new();
        for &(a, k) in unknowns {
            let (s, t) = self.arrow_block(a);
            let dir = self.endo.blocks[s][t].combine(&self.endo.rad_block(2, s, t)[k]);
            let mut col = Vec::new();
            for r in &self.claim.relations {
                let (rs, rt) = (self.pi[r.target(q)], self.pi[r.source()]);
                let mut acc = crate::linalg::zero_vec(f, self.endo.blocks[rs][rt].dim());
                for (c, p) in r.terms() {
                    for (pos, &b) in p.arrows().iter().enumerate() {
                        if b == a {
                            let v = self.endo.block_coords(rs, rt, &self.eval(p, imgs, Some((pos, &dir))));
                            acc = crate::linalg::vec_add(&acc, &crate::linalg::vec_scale(c, &v));
                        }
                    }
                }
                col.extend(acc);
            }
            cols.push(col);
        }
        let rows = self.claim.relations.iter().map(|r| {
            let (rs, rt) = (self.pi[r.target(q)], self.pi[r.source()]);
            self.endo.blocks[rs][rt].dim()
        });
        Matrix::from_columns(f, rows.sum(), &cols)
    }

    /// Newton iteration on the rad² corrections; exact because the correction filtration is nilpotent.
    fn newton(&self, lambda: &[Scalar]) -> Option<Vec<ModuleMap>> {
        let f = self.endo.field();
        let na = self.claim.quiver.arrows().len();
        let mut corr: Vec<Vector> = (0..na)
            .map(|a| {
                let (s, t) = self.arrow_block(a);
                crate::linalg::zero_vec(f, self.endo.rad_block(2, s, t).len())
            })
            .collect();
        let unknowns: Vec<(usize, usize)> =
            (0..na).flat_map(|a| (0..corr[a].len()).map(move |k| (a, k))).collect();
        for _ in 0..=self.endo.loewy_length + 1 {
            let imgs = self.images(lambda, &corr);
            let res = self.residual(&imgs);
            if crate::linalg::is_zero_vec(&res) {
                return Some(imgs);
            }
            if unknowns.is_empty() {
                return None;
            }
            let j = self.jacobian(&imgs, &unknowns);
            let rhs: Vector = res.iter().map(|x| -x.clone()).collect();
            let delta = j.solve(&rhs).ok()??;
            for (&(a, k), d) in unknowns.iter().zip(delta) {
                corr[a][k] = &corr[a][k] + &d;
            }
        }
        None
    }

    /// Scalars suggested by two-term relations.
    fn ratio_candidates(&self, tree: &[bool]) -> Vec<Vec<Scalar>> {
        let f = self.endo.field();
        let na = self.claim.quiver.arrows().len();
        let ones = vec![f.one(); na];
        let zero_corr: Vec<Vector> = (0..na)
            .map(|a| {
                let (s, t) = self.arrow_block(a);
                crate::linalg::zero_vec(f, self.endo.rad_block(2, s, t).len())
            })
            .collect();
        let imgs = self.images(&ones, &zero_corr);
        let q = &self.claim.quiver;
        let mut out = vec![Vec::new(); na];
        for r in &self.claim.relations {
            let [(c1, p1), (c2, p2)] = r.terms() else { continue };
            let (s, t) = (self.pi[r.target(q)], self.pi[r.source()]);
            let d = self.endo.blocks[s][t].dim();
            let e1 = self.endo.block_coords(s, t, &self.eval(p1, &imgs, None));
            let e2 = self.endo.block_coords(s, t, &self.eval(p2, &imgs, None));
            let m = p1.len().min(p2.len());
            let higher = self.endo.rad_block(m + 1, s, t).to_vec();
            let qs = QuotientSpace::new(f, d, &higher);
            for (ex, ey) in [(e1.clone(), e2.clone()), (qs.projection.mul_vec(&e1), qs.projection.mul_vec(&e2))] {
                let Some(mu) = ratio(&ex, &ey) else { continue };
                if mu.is_zero() {
                    continue;
                }
                for a in 0..na {
                    if tree[a] {
                        continue;
                    }
                    let in1 = p1.arrows().iter().filter(|&&x| x == a).count();
                    let in2 = p2.arrows().iter().filter(|&&x| x == a).count();
                    let cand = match (in1, in2) {
                        (1, 0) => -(c2 * &(c1 * &mu).inv().unwrap()),
                        (0, 1) => -(&(c1 * &mu) * &c2.inv().unwrap()),
                        _ => continue,
                    };
                    if !cand.is_zero() && !out[a].contains(&cand) {
                        out[a].push(cand);
                    }
                }
            }
        }
        out
    }
}

/// `x = μ y` for a scalar `μ`, with `y` nonzero.
fn ratio(x: &[Scalar], y: &[Scalar]) -> Option<Scalar> {
    let k = y.iter().position(|v| !v.is_zero())?;
    let mu = &x[k] * &y[k].inv()?;
    x.iter().zip(y).all(|(a, b)| *a == &mu * b).then_some(mu)
}

/// Undirected spanning forest of a quiver, as a mask over arrows.
fn spanning_tree(q: &Quiver) -> Vec<bool> {
    let n = q.num_vertices();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    q.arrows()
        .iter()
        .map(|a| {
            let (ra, rb) = (find(&mut parent, a.source), find(&mut parent, a.target));
            if ra != rb {
                parent[ra] = rb;
                true
            } else {
                false
            }
        })
        .collect()
}

/// Assignments of Gabriel arrows to claim arrows, per vertex pair, by permutation.
fn arrow_assignments(claim: &Quiver, actual: &Quiver, pi: &[usize]) -> Vec<Vec<usize>> {
    let mut groups: BTreeMap<(usize, usize), (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for (i, a) in claim.arrows().iter().enumerate() {
        groups.entry((pi[a.source], pi[a.target])).or_default().0.push(i);
    }
    for (i, a) in actual.arrows().iter().enumerate() {
        groups.entry((a.source, a.target)).or_default().1.push(i);
    }
    let mut out: Vec<Vec<usize>> = vec![vec![usize::MAX; claim.arrows().len()]];
    for (cs, gs) in groups.values() {
        let perms = permutations(gs);
        let mut next = Vec::new();
        for partial in &out {
            for p in &perms {
                let mut v = partial.clone();
                for (c, g) in cs.iter().zip(p) {
                    v[*c] = *g;
                }
                next.push(v);
                if next.len() > SEARCH_LIMIT {
                    break;
                }
            }
        }
        out = next;
    }
    out
}

fn permutations(xs: &[usize]) -> Vec<Vec<usize>> {
    if xs.len() <= 1 {
        return vec![xs.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..xs.len() {
        let mut rest = xs.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Check a claimed presentation of `Γ` by searching for an explicit isomorphism.
pub fn verify_presentation(endo: &EndoAlgebra, claim: &PresentationClaim) -> Result<PresentationVerdict> {
    let f = endo.field();
    let bijections = quiver_bijections(&claim.quiver, &endo.quiver);
    if bijections.is_empty() {
        return Ok(PresentationVerdict::RefutedQuiver(format!(
            "no vertex bijection matches arrow counts (claim {:?}, computed {:?})",
            claim.quiver.arrow_counts(),
            endo.quiver.arrow_counts()
        )));
    }
    let c = Algebra::build(claim.quiver.clone(), claim.relations.clone(), claim.nilpotency, f)?;
    if c.dim() != endo.dim() {
        return Ok(PresentationVerdict::RefutedDimension { claimed: c.dim(), actual: endo.dim() });
    }
    let tree = spanning_tree(&claim.quiver);
    let base: Vec<Scalar> = [(1, 1), (-1, 1), (2, 1), (-2, 1), (1, 2), (-1, 2)]
        .iter()
        .map(|&(n, d)| f.ratio(&n.into(), &d.into()).expect("small constants"))
        .collect();
    let mut attempts = 0usize;
    for pi in &bijections {
        for gab in arrow_assignments(&claim.quiver, &endo.quiver, pi) {
            let search = Search { endo, claim, pi: pi.clone(), gab };
            let ratios = search.ratio_candidates(&tree);
            let options: Vec<Vec<Scalar>> = (0..claim.quiver.arrows().len())
                .map(|a| {
                    if tree[a] {
                        vec![f.one()]
                    } else {
                        let mut o = ratios[a].clone();
                        for b in &base {
                            if !o.contains(b) {
                                o.push(b.clone());
                            }
                        }
                        o
                    }
                })
                .collect();
            let mut idx = vec![0usize; options.len()];
            loop {
                attempts += 1;
                if attempts > SEARCH_LIMIT {
                    return Ok(PresentationVerdict::Inconclusive("search limit reached".into()));
                }
                let lambda: Vec<Scalar> = idx.iter().zip(&options).map(|(&i, o)| o[i].clone()).collect();
                if let Some(imgs) = search.newton(&lambda) {
                    let w = PresentationWitness { vertex_map: pi.clone(), arrow_images: imgs };
                    if check_witness(endo, claim, &c, &w)? {
                        return Ok(PresentationVerdict::Verified(w));
                    }
                }
                // odometer
                let mut k = 0;
                loop {
                    if k == idx.len() {
                        break;
                    }
                    idx[k] += 1;
                    if idx[k] < options[k].len() {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
                if k == idx.len() {
                    break;
                }
            }
        }
    }
    Ok(PresentationVerdict::Inconclusive("no arrow assignment satisfied the relations".into()))
}

/// Exact recheck: relations vanish, `J^N` vanishes, and the map is onto with equal dimensions.
fn check_witness(endo: &EndoAlgebra, claim: &PresentationClaim, c: &Algebra, w: &PresentationWitness) -> Result<bool> {
    let q = &claim.quiver;
    let eval = |p: &PathWord| {
        let mut cur = endo.summand(w.vertex_map[p.source()]).identity();
        for &a in p.arrows() {
            cur = w.arrow_images[a].then(&cur);
        }
        cur
    };
    for (a, arr) in q.arrows().iter().enumerate() {
        let img = &w.arrow_images[a];
        if img.source() != endo.summand(w.vertex_map[arr.target]) || img.target() != endo.summand(w.vertex_map[arr.source]) {
            return Ok(false);
        }
    }
    for r in &claim.relations {
        for (s, t) in [(w.vertex_map[r.target(q)], w.vertex_map[r.source()])] {
            let mut acc = ModuleMap::zero(endo.summand(s), endo.summand(t));
            for (k, p) in r.terms() {
                acc = acc.add(&eval(p).scale(k));
            }
            if !acc.is_zero() {
                return Ok(false);
            }
        }
    }
    if claim.nilpotency < endo.loewy_length {
        let mut frontier: Vec<PathWord> = (0..q.num_vertices()).map(PathWord::trivial).collect();
        for _ in 0..claim.nilpotency {
            frontier = frontier.iter().flat_map(|p| (0..q.arrows().len()).filter_map(|a| p.then_arrow(q, a))).collect();
        }
        if frontier.iter().any(|p| !eval(p).is_zero()) {
            return Ok(false);
        }
    }
    let off = endo.global_offsets();
    let images: Vec<Vector> = c
        .basis()
        .iter()
        .map(|p| endo.global_coords(w.vertex_map[p.target(q)], w.vertex_map[p.source()], &eval(p), &off))
        .collect();
    Ok(c.dim() == endo.dim() && crate::linalg::span_rank(endo.field(), endo.dim(), &images) == endo.dim())
}

/// `Hom_A(M, X)` as a module over the presentation of `Γ`; vertex `t` carries `Hom(M_t, X)`.
#[derive(Clone, Debug)]
pub struct HomFunctorImage {
    pub module: Module,
    pub homs: Vec<HomSpace>,
}

pub fn hom_functor(endo: &EndoAlgebra, x: &Module) -> Result<HomFunctorImage> {
    let g = endo.presentation.clone();
    let f = endo.field();
    let homs: Vec<HomSpace> =
        (0..endo.num_vertices()).map(|t| hom_space(endo.summand(t), x)).collect::<Result<_>>()?;
    let dims: Vec<usize> = homs.iter().map(HomSpace::dim).collect();
    let maps = g
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, arr)| {
            let y = &endo.arrow_maps[a];
            let cols: Vec<Vector> =
                homs[arr.source].basis.iter().map(|h| homs[arr.target].coords(&y.then(h)).expect("f∘y is a homomorphism")).collect();
            Matrix::from_columns(f, dims[arr.target], &cols)
        })
        .collect();
    Ok(HomFunctorImage { module: Module::from_parts(g, dims, maps)?, homs })
}

/// `Hom_A(M, f)`: postcomposition with `f`.
pub fn hom_functor_on_maps(endo: &EndoAlgebra, src: &HomFunctorImage, tgt: &HomFunctorImage, f: &ModuleMap) -> Result<ModuleMap> {
    let k = endo.field();
    let comps = (0..endo.num_vertices())
        .map(|t| {
            let cols: Vec<Vector> =
                src.homs[t].basis.iter().map(|h| tgt.homs[t].coords(&h.then(f)).expect("composite is a homomorphism")).collect();
            Matrix::from_columns(k, tgt.homs[t].dim(), &cols)
        })
        .collect();
    ModuleMap::new(&src.module, &tgt.module, comps)
}

/// The `A`-map `M_s -> M_t` corresponding to a `Γ`-map `P_s -> P_t`.
fn projective_map_to_a(endo: &EndoAlgebra, s: usize, t: usize, phi: &ModuleMap) -> ModuleMap {
    let g = &endo.presentation;
    let f = endo.field();
    let src_basis = g.basis_between(s, s);
    let triv = g.trivial_index(s);
    let pos = src_basis.iter().position(|&b| b == triv).expect("trivial path at s");
    let gen = crate::linalg::unit_vec(f, src_basis.len(), pos);
    let val = phi.comp(s).mul_vec(&gen);
    let mut acc = ModuleMap::zero(endo.summand(s), endo.summand(t));
    for (c, &b) in val.iter().zip(&g.basis_between(t, s)) {
        if !c.is_zero() {
            acc = acc.add(&endo.basis_maps[b].scale(c));
        }
    }
    acc
}

/// `M ⊗_Γ Y` from a minimal projective presentation of `Y`.
pub fn tensor_functor(endo: &EndoAlgebra, y: &Module) -> Result<Module> {
    let a_alg = endo.module().algebra().clone();
    if y.is_zero() {
        return Ok(Module::zero(a_alg));
    }
    let mut res = Resolution::new(y);
    res.extend_to(2)?;
    let p0 = &res.covers[0];
    let p1 = &res.covers[1];
    let d = p1.epi.then(&res.inclusions[0]);
    let sum0 = a_side_sum(endo, &p0.vertices)?;
    if p1.vertices.is_empty() {
        return Ok(sum0.module);
    }
    let sum1 = a_side_sum(endo, &p1.vertices)?;
    let mut map = ModuleMap::zero(&sum1.module, &sum0.module);
    for (l, &sv) in p1.vertices.iter().enumerate() {
        for (k, &tv) in p0.vertices.iter().enumerate() {
            let block = p1.sum.inclusions[l].then(&d).then(&p0.sum.projections[k]);
            let a_map = projective_map_to_a(endo, sv, tv, &block);
            map = map.add(&sum1.projections[l].then(&a_map).then(&sum0.inclusions[k]));
        }
    }
    Ok(cokernel(&map).0)
}

fn a_side_sum(endo: &EndoAlgebra, vertices: &[usize]) -> Result<DirectSum> {
    let parts: Vec<Module> = vertices.iter().map(|&v| endo.summand(v).clone()).collect();
    direct_sum(&parts)
}

/// Vertices of `Γ` whose simple module is killed by `M ⊗_Γ -`.
pub fn kernel_category_simples(endo: &EndoAlgebra) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for t in 0..endo.num_vertices() {
        let s = Module::simple(endo.presentation.clone(), t)?;
        if tensor_functor(endo, &s)?.is_zero() {
            out.push(t);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct PartialResolutionVerdict {
    pub status: PartialResolutionStatus,
    pub certificates: Vec<(usize, SyzygyCertificate)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PartialResolutionStatus {
    Yes,
    No,
    Inconclusive,
}

/// Every simple in the kernel category has certified finite projective dimension.
pub fn is_partial_resolution(endo: &EndoAlgebra, cap: usize) -> Result<PartialResolutionVerdict> {
    let mut certificates = Vec::new();
    let mut status = PartialResolutionStatus::Yes;
    for t in kernel_category_simples(endo)? {
        let c = proj_dimension(&Module::simple(endo.presentation.clone(), t)?, cap)?;
        if c.is_periodic() {
            status = PartialResolutionStatus::No;
        } else if !c.is_finite() && status == PartialResolutionStatus::Yes {
            status = PartialResolutionStatus::Inconclusive;
        }
        certificates.push((t, c));
    }
    Ok(PartialResolutionVerdict { status, certificates })
}

/// `M` as a right `Γ`-module, i.e. a left module over the opposite of the presentation.
pub fn right_module_structure(endo: &EndoAlgebra) -> Result<Module> {
    let op = endo.presentation.opposite();
    let dims: Vec<usize> = (0..endo.num_vertices()).map(|t| endo.summand(t).total_dim()).collect();
    let maps = endo.arrow_maps.iter().map(ModuleMap::total_matrix).collect();
    Module::new(op, dims, maps)
}

/// `M = ⊕ summands`, with summand names, for building `Γ` in a fixed vertex order.
pub fn named(list: &[(&str, Module)]) -> Vec<Named> {
    list.iter().map(|(n, m)| Named { name: (*n).to_string(), module: m.clone() }).collect()
}

/// Coordinates helper for tests and reports.
pub fn contains_map(h: &HomSpace, m: &ModuleMap) -> bool {
    let f = m.source().field();
    let flat = m.flatten();
    let cols: Vec<Vector> = h.basis.iter().map(ModuleMap::flatten).collect();
    SubspaceCoords::new(f, flat.len(), &cols).contains(&flat)
}

/// Reflect that `Hom_A(M, -)` sends `add M` to projectives.
pub fn hom_functor_is_projective(endo: &EndoAlgebra, x: &Module) -> Result<bool> {
    let h = hom_functor(endo, x)?;
    Ok(projective_cover(&h.module)?.epi.is_isomorphism())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homol::DEFAULT_CAP;
    use crate::modcat::{hom_dim, is_isomorphic, nakayama_indecomposable};
    use crate::qalg::NakayamaSpec;

    const Q: Field = Field::Rationals;

    fn nak566() -> Arc<Algebra> {
        Arc::new(Algebra::nakayama(&NakayamaSpec::cyclic(&[5, 6, 6]), Q).unwrap())
    }

    fn example_endo() -> EndoAlgebra {
        let n = nak566();
        let p = |v| Module::projective(n.clone(), v).unwrap();
        let x = nakayama_indecomposable(n.clone(), 1, 3).unwrap();
        EndoAlgebra::from_summands(named(&[("1", p(0)), ("2", p(1)), ("3", p(2)), ("2'", x)])).unwrap()
    }

    #[test]
    fn struct_radicals() {
        let n = nak566();
        let s = StructAlgebra::from_algebra(&n);
        assert!(s.is_associative() && s.is_unital());
        assert_eq!(s.radical().unwrap().len(), 14);
        let q = Quiver::new(&["1"], &[]).unwrap();
        let k = Algebra::path_algebra(q, Q).unwrap();
        let de = Algebra::dual_numbers(&k).unwrap();
        assert_eq!(StructAlgebra::from_algebra(&de).radical().unwrap().len(), 1);
        assert!(StructAlgebra::from_algebra(&k).radical().unwrap().is_empty());
    }

    #[test]
    fn regular_module_round_trip() {
        let n = nak566();
        let q = gabriel_quiver(&n).unwrap();
        assert_eq!(q.arrow_counts(), n.quiver().arrow_counts());
        let reg = Module::regular(n.clone()).unwrap();
        let e = EndoAlgebra::new(&reg).unwrap();
        assert_eq!(e.dim(), 17);
        assert!(e.structure().is_associative());
        let claim = PresentationClaim { quiver: n.quiver().clone(), relations: n.relations().to_vec(), nilpotency: n.nilpotency() };
        assert!(verify_presentation(&e, &claim).unwrap().is_verified());
    }

    #[test]
    fn example_gamma_quiver_and_dimension() {
        let e = example_endo();
        let mut expected = 17;
        let n = nak566();
        let x = nakayama_indecomposable(n.clone(), 1, 3).unwrap();
        let a = Module::regular(n).unwrap();
        expected += hom_dim(&a, &x).unwrap() + hom_dim(&x, &a).unwrap() + hom_dim(&x, &x).unwrap();
        assert_eq!(e.dim(), expected);
        let claim = Quiver::new(
            &["1", "2", "3", "2'"],
            &[("alpha", "1", "2"), ("beta", "2", "3"), ("gamma", "3", "1"), ("a", "2", "2'"), ("b", "2'", "2")],
        )
        .unwrap();
        assert!(!quiver_bijections(&claim, &e.quiver).is_empty());
    }

    #[test]
    fn functors() {
        let e = example_endo();
        let n = e.module().algebra().clone();
        let m = e.module().clone();
        let hm = hom_functor(&e, &m).unwrap();
        assert_eq!(hm.module.total_dim(), e.dim());
        let reg = Module::regular(e.presentation.clone()).unwrap();
        assert!(is_isomorphic(&hm.module, &reg).unwrap().is_yes());
        for v in 0..3 {
            let s = Module::simple(n.clone(), v).unwrap();
            let h = hom_functor(&e, &s).unwrap();
            let back = tensor_functor(&e, &h.module).unwrap();
            assert!(is_isomorphic(&back, &s).unwrap().is_yes());
        }
        assert_eq!(kernel_category_simples(&e).unwrap(), vec![3]);
        let pr = is_partial_resolution(&e, DEFAULT_CAP).unwrap();
        assert_eq!(pr.status, PartialResolutionStatus::Yes);
        let mr = right_module_structure(&e).unwrap();
        assert_eq!(proj_dimension(&mr, DEFAULT_CAP).unwrap().finite_value(), Some(0));
    }

    fn example_claim(relations: &[&str]) -> PresentationClaim {
        let q = Quiver::new(
            &["1", "2", "3", "2'"],
            &[("alpha", "1", "2"), ("beta", "2", "3"), ("gamma", "3", "1"), ("a", "2", "2'"), ("b", "2'", "2")],
        )
        .unwrap();
        PresentationClaim::parse(q, Q, relations, 12).unwrap()
    }

    #[test]
    fn example_presentation_verified() {
        let e = example_endo();
        let v = verify_presentation(&e, &example_claim(&["a*b", "beta*b*a*alpha", "b*a - alpha*gamma*beta"])).unwrap();
        assert!(v.is_verified(), "{}", v.label());
        let wrong = verify_presentation(&e, &example_claim(&["a*b", "b*a - alpha*gamma*beta"])).unwrap();
        assert!(!wrong.is_verified());
    }
}
