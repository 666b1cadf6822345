//! Finite-dimensional modules as quiver representations.
//!
//! A [`Module`] stores one vector space dimension per vertex and one matrix per
//! arrow (`dims[target] x dims[source]`). Hom spaces are computed as the exact
//! solution space of the intertwining equations.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{field_roots, Field, Matrix, QuotientSpace, Scalar, SubspaceCoords, Vector};
use crate::qalg::{Algebra, PathWord};

#[derive(Clone, Debug)]
pub struct Module {
    alg: Arc<Algebra>,
    dims: Vec<usize>,
    maps: Arc<Vec<Matrix>>,
}

impl PartialEq for Module {
    fn eq(&self, other: &Self) -> bool {
        self.dims == other.dims && self.maps == other.maps && same_algebra(&self.alg, &other.alg)
    }
}

fn same_algebra(a: &Arc<Algebra>, b: &Arc<Algebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Module {
    /// Validated constructor: shapes, relations and nilpotency are all checked.
    pub fn new(alg: Arc<Algebra>, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        let m = Module::from_parts(alg, dims, maps)?;
        m.check_relations()?;
        Ok(m)
    }

    /// Shape-checked constructor for representations known to satisfy the relations.
    pub(crate) fn from_parts(alg: Arc<Algebra>, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        let q = alg.quiver();
        if dims.len() != q.num_vertices() {
            return Err(Error::InvalidModule(format!(
                "{} vertex dimensions given, quiver has {} vertices",
                dims.len(),
                q.num_vertices()
            )));
        }
        if maps.len() != q.arrows().len() {
            return Err(Error::InvalidModule(format!(
                "{} arrow matrices given, quiver has {} arrows",
                maps.len(),
                q.arrows().len()
            )));
        }
        for (a, m) in q.arrows().iter().zip(&maps) {
            if m.rows() != dims[a.target] || m.cols() != dims[a.source] {
                return Err(Error::InvalidModule(format!(
                    "matrix for `{}` is {}x{}, expected {}x{}",
                    a.label,
                    m.rows(),
                    m.cols(),
                    dims[a.target],
                    dims[a.source]
                )));
            }
        }
        Ok(Module { alg, dims, maps: Arc::new(maps) })
    }

    pub fn check_relations(&self) -> Result<()> {
        let q = self.alg.quiver();
        for r in self.alg.relations() {
            let (s, t) = (r.source(), r.target(q));
            let mut acc = Matrix::zeros(self.field(), self.dims[t], self.dims[s]);
            for (c, p) in r.terms() {
                acc = acc.add(&self.path_matrix(p).scale(c));
            }
            if !acc.is_zero() {
                return Err(Error::InvalidModule(format!("relation `{}` does not vanish", r.display(q))));
            }
        }
        if self.total_dim() > 0 && radical_power_dims(self, self.alg.nilpotency()).iter().any(|&d| d > 0) {
            return Err(Error::InvalidModule("paths beyond the nilpotency bound act nontrivially".into()));
        }
        Ok(())
    }

    pub fn zero(alg: Arc<Algebra>) -> Self {
        let f = alg.field();
        let n = alg.num_vertices();
        let maps = alg.quiver().arrows().iter().map(|_| Matrix::zeros(f, 0, 0)).collect();
        Module { alg, dims: vec![0; n], maps: Arc::new(maps) }
    }

    pub fn simple(alg: Arc<Algebra>, v: usize) -> Result<Self> {
        check_vertex(&alg, v)?;
        let f = alg.field();
        let mut dims = vec![0; alg.num_vertices()];
        dims[v] = 1;
        let maps = alg.quiver().arrows().iter().map(|a| Matrix::zeros(f, dims[a.target], dims[a.source])).collect();
        Module::from_parts(alg, dims, maps)
    }

    /// `A e_v`, with basis the basis paths starting at `v`.
    pub fn projective(alg: Arc<Algebra>, v: usize) -> Result<Self> {
        check_vertex(&alg, v)?;
        let f = alg.field();
        let n = alg.num_vertices();
        let per_vertex: Vec<Vec<usize>> = (0..n).map(|j| alg.basis_between(v, j)).collect();
        let dims: Vec<usize> = per_vertex.iter().map(Vec::len).collect();
        let mut maps = Vec::new();
        for (ai, a) in alg.quiver().arrows().iter().enumerate() {
            let mut m = Matrix::zeros(f, dims[a.target], dims[a.source]);
            let ab = alg.arrow_basis_index(ai);
            for (col, &p) in per_vertex[a.source].iter().enumerate() {
                for (k, c) in alg.product_of_basis(ab, p) {
                    let row = per_vertex[a.target].iter().position(|x| x == k).expect("product stays in P_v");
                    m.set(row, col, c.clone());
                }
            }
            maps.push(m);
        }
        Module::from_parts(alg, dims, maps)
    }

    /// `D(e_v A)`, the injective envelope of the simple at `v`.
    pub fn injective(alg: Arc<Algebra>, v: usize) -> Result<Self> {
        let op = alg.opposite();
        let p = Module::projective(op, v)?;
        Ok(p.dual_over(alg))
    }

    /// The regular left module `A = ⊕ P_v`.
    pub fn regular(alg: Arc<Algebra>) -> Result<Self> {
        let ps: Vec<Module> = (0..alg.num_vertices()).map(|v| Module::projective(alg.clone(), v)).collect::<Result<_>>()?;
        Ok(direct_sum(&ps)?.module)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn field(&self) -> Field {
        self.alg.field()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn arrow_map(&self, a: usize) -> &Matrix {
        &self.maps[a]
    }

    pub fn arrow_maps(&self) -> &[Matrix] {
        &self.maps
    }

    /// Offsets of each vertex space inside the total space.
    pub fn offsets(&self) -> Vec<usize> {
        let mut off = Vec::with_capacity(self.dims.len());
        let mut acc = 0;
        for &d in &self.dims {
            off.push(acc);
            acc += d;
        }
        off
    }

    /// The action of a path, from the space at its source to the space at its target.
    pub fn path_matrix(&self, p: &PathWord) -> Matrix {
        let mut m = Matrix::identity(self.field(), self.dims[p.source()]);
        for &a in p.arrows() {
            m = self.maps[a].mul(&m);
        }
        m
    }

    /// The action of an algebra element on the total space.
    pub fn element_matrix(&self, x: &[Scalar]) -> Matrix {
        let f = self.field();
        let n = self.total_dim();
        let off = self.offsets();
        let q = self.alg.quiver();
        let mut out = Matrix::zeros(f, n, n);
        for (i, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = &self.alg.basis()[i];
            let (s, t) = (p.source(), p.target(q));
            let pm = self.path_matrix(p);
            for r in 0..pm.rows() {
                for k in 0..pm.cols() {
                    let v = out.get(off[t] + r, off[s] + k) + &(c * pm.get(r, k));
                    out.set(off[t] + r, off[s] + k, v);
                }
            }
        }
        out
    }

    /// Linear dual, a module over the opposite algebra.
    pub fn dual(&self) -> Module {
        self.dual_over(self.alg.opposite())
    }

    fn dual_over(&self, target_alg: Arc<Algebra>) -> Module {
        let maps = self.maps.iter().map(Matrix::transpose).collect();
        Module { alg: target_alg, dims: self.dims.clone(), maps: Arc::new(maps) }
    }

    /// Reinterpret over a structurally equal algebra.
    pub fn over(&self, alg: Arc<Algebra>) -> Result<Module> {
        if !same_algebra(&self.alg, &alg) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(Module { alg, dims: self.dims.clone(), maps: self.maps.clone() })
    }

    pub fn identity(&self) -> ModuleMap {
        let comps = self.dims.iter().map(|&d| Matrix::identity(self.field(), d)).collect();
        ModuleMap { source: self.clone(), target: self.clone(), comps }
    }

    /// `rad^l X`, as a subspace basis per vertex.
    pub fn radical_power(&self, l: usize) -> Vec<Vec<Vector>> {
        let f = self.field();
        let mut cur: Vec<Vec<Vector>> =
            self.dims.iter().map(|&d| (0..d).map(|i| crate::linalg::unit_vec(f, d, i)).collect()).collect();
        for _ in 0..l {
            cur = self.arrow_images(&cur);
        }
        cur
    }

    fn arrow_images(&self, sub: &[Vec<Vector>]) -> Vec<Vec<Vector>> {
        let f = self.field();
        let mut next: Vec<Vec<Vector>> = vec![Vec::new(); self.dims.len()];
        for (ai, a) in self.alg.quiver().arrows().iter().enumerate() {
            for v in &sub[a.source] {
                next[a.target].push(self.maps[ai].mul_vec(v));
            }
        }
        next.into_iter()
            .enumerate()
            .map(|(j, vs)| {
                let keep = crate::linalg::independent_subset(f, self.dims[j], &vs);
                keep.into_iter().map(|k| vs[k].clone()).collect()
            })
            .collect()
    }

    /// `X / rad X` dimension per vertex.
    pub fn top_dims(&self) -> Vec<usize> {
        let rad = self.radical_power(1);
        self.dims.iter().zip(&rad).map(|(d, r)| d - r.len()).collect()
    }

    pub fn socle_dims(&self) -> Vec<usize> {
        // vectors killed by every arrow
        let f = self.field();
        (0..self.dims.len())
            .map(|v| {
                let outs: Vec<&Matrix> = self
                    .alg
                    .quiver()
                    .arrows()
                    .iter()
                    .enumerate()
                    .filter(|(_, a)| a.source == v)
                    .map(|(i, _)| &self.maps[i])
                    .collect();
                if outs.is_empty() {
                    return self.dims[v];
                }
                let stacked: Vec<Matrix> = outs.into_iter().cloned().collect();
                let grid: Vec<Vec<Matrix>> = stacked.into_iter().map(|m| vec![m]).collect();
                let m = Matrix::block(f, &grid);
                m.kernel_basis().len()
            })
            .collect()
    }

    /// Submodule with the given per-vertex subspace bases (must be arrow-stable).
    pub fn submodule(&self, bases: Vec<Vec<Vector>>) -> (Module, ModuleMap) {
        let f = self.field();
        let coords: Vec<SubspaceCoords> =
            bases.iter().enumerate().map(|(v, b)| SubspaceCoords::new(f, self.dims[v], b)).collect();
        let dims: Vec<usize> = bases.iter().map(Vec::len).collect();
        let mut maps = Vec::new();
        for (ai, a) in self.alg.quiver().arrows().iter().enumerate() {
            let cols: Vec<Vector> = bases[a.source]
                .iter()
                .map(|b| coords[a.target].coords(&self.maps[ai].mul_vec(b)).expect("subspace is arrow-stable"))
                .collect();
            maps.push(Matrix::from_columns(f, dims[a.target], &cols));
        }
        let sub = Module { alg: self.alg.clone(), dims, maps: Arc::new(maps) };
        let comps = bases.iter().enumerate().map(|(v, b)| Matrix::from_columns(f, self.dims[v], b)).collect();
        let incl = ModuleMap { source: sub.clone(), target: self.clone(), comps };
        (sub, incl)
    }

    /// Quotient by an arrow-stable family of subspaces.
    pub fn quotient(&self, bases: &[Vec<Vector>]) -> (Module, ModuleMap) {
        let f = self.field();
        let qs: Vec<QuotientSpace> = bases.iter().enumerate().map(|(v, b)| QuotientSpace::new(f, self.dims[v], b)).collect();
        let dims: Vec<usize> = qs.iter().map(QuotientSpace::dim).collect();
        let maps = self
            .alg
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, a)| qs[a.target].projection.mul(&self.maps[ai]).mul(&qs[a.source].section))
            .collect();
        let quo = Module { alg: self.alg.clone(), dims, maps: Arc::new(maps) };
        let comps = qs.iter().map(|q| q.projection.clone()).collect();
        let proj = ModuleMap { source: self.clone(), target: quo.clone(), comps };
        (quo, proj)
    }

    /// `X / rad^l X`.
    pub fn radical_quotient(&self, l: usize) -> Module {
        self.quotient(&self.radical_power(l)).0
    }

    pub fn is_projective_vertex(&self, v: usize) -> bool {
        Module::projective(self.alg.clone(), v).is_ok_and(|p| p == *self)
    }
}

fn check_vertex(alg: &Algebra, v: usize) -> Result<()> {
    if v >= alg.num_vertices() {
        return Err(Error::OutOfRange(format!("vertex {v}")));
    }
    Ok(())
}

fn radical_power_dims(m: &Module, l: usize) -> Vec<usize> {
    m.radical_power(l).iter().map(Vec::len).collect()
}

/// A morphism of representations: one matrix per vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleMap {
    source: Module,
    target: Module,
    comps: Vec<Matrix>,
}

impl ModuleMap {
    /// Checked constructor: shapes and commutation with every arrow.
    pub fn new(source: &Module, target: &Module, comps: Vec<Matrix>) -> Result<Self> {
        if !same_algebra(&source.alg, &target.alg) {
            return Err(Error::AlgebraMismatch);
        }
        if comps.len() != source.dims.len() {
            return Err(Error::InvalidModule("wrong number of components".into()));
        }
        for (v, c) in comps.iter().enumerate() {
            if c.rows() != target.dims[v] || c.cols() != source.dims[v] {
                return Err(Error::InvalidModule(format!("component at vertex {v} has the wrong shape")));
            }
        }
        let map = ModuleMap { source: source.clone(), target: target.clone(), comps };
        if !map.commutes() {
            return Err(Error::InvalidModule("map does not commute with the arrow actions".into()));
        }
        Ok(map)
    }

    pub(crate) fn from_parts(source: Module, target: Module, comps: Vec<Matrix>) -> Self {
        ModuleMap { source, target, comps }
    }

    pub fn zero(source: &Module, target: &Module) -> Self {
        let f = source.field();
        let comps = (0..source.dims.len()).map(|v| Matrix::zeros(f, target.dims[v], source.dims[v])).collect();
        ModuleMap { source: source.clone(), target: target.clone(), comps }
    }

    pub fn commutes(&self) -> bool {
        self.source.alg.quiver().arrows().iter().enumerate().all(|(ai, a)| {
            self.target.maps[ai].mul(&self.comps[a.source]) == self.comps[a.target].mul(&self.source.maps[ai])
        })
    }

    pub fn source(&self) -> &Module {
        &self.source
    }

    pub fn target(&self) -> &Module {
        &self.target
    }

    pub fn comps(&self) -> &[Matrix] {
        &self.comps
    }

    pub fn comp(&self, v: usize) -> &Matrix {
        &self.comps[v]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ModuleMap) -> ModuleMap {
        let comps = self.comps.iter().zip(&other.comps).map(|(f, g)| g.mul(f)).collect();
        ModuleMap { source: self.source.clone(), target: other.target.clone(), comps }
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        let comps = self.comps.iter().zip(&other.comps).map(|(f, g)| f.add(g)).collect();
        ModuleMap { source: self.source.clone(), target: self.target.clone(), comps }
    }

    pub fn sub(&self, other: &ModuleMap) -> ModuleMap {
        let comps = self.comps.iter().zip(&other.comps).map(|(f, g)| f.sub(g)).collect();
        ModuleMap { source: self.source.clone(), target: self.target.clone(), comps }
    }

    pub fn scale(&self, c: &Scalar) -> ModuleMap {
        let comps = self.comps.iter().map(|f| f.scale(c)).collect();
        ModuleMap { source: self.source.clone(), target: self.target.clone(), comps }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Matrix::is_zero)
    }

    pub fn is_injective(&self) -> bool {
        self.comps.iter().all(|c| c.rank() == c.cols())
    }

    pub fn is_surjective(&self) -> bool {
        self.comps.iter().all(|c| c.rank() == c.rows())
    }

    pub fn is_isomorphism(&self) -> bool {
        self.comps.iter().all(Matrix::is_invertible)
    }

    pub fn inverse(&self) -> Option<ModuleMap> {
        let comps = self.comps.iter().map(Matrix::inverse).collect::<Option<Vec<_>>>()?;
        Some(ModuleMap { source: self.target.clone(), target: self.source.clone(), comps })
    }

    /// All components, row-major, concatenated vertex by vertex.
    pub fn flatten(&self) -> Vector {
        self.comps.iter().flat_map(|c| c.data().iter().cloned()).collect()
    }

    /// The map on total spaces.
    pub fn total_matrix(&self) -> Matrix {
        Matrix::block_diag(self.source.field(), &self.comps)
    }

    /// Apply to a vector living at vertex `v`.
    pub fn apply(&self, v: usize, x: &[Scalar]) -> Vector {
        self.comps[v].mul_vec(x)
    }

    /// Sum of traces of the components.
    pub fn trace(&self) -> Scalar {
        let f = self.source.field();
        let mut t = f.zero();
        for c in &self.comps {
            for i in 0..c.rows() {
                t = &t + c.get(i, i);
            }
        }
        t
    }
}

fn check_same(x: &Module, y: &Module) -> Result<()> {
    if same_algebra(&x.alg, &y.alg) {
        Ok(())
    } else {
        Err(Error::AlgebraMismatch)
    }
}

/// A basis of `Hom(X, Y)` with a coordinate helper.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub source: Module,
    pub target: Module,
    pub basis: Vec<ModuleMap>,
    coords: SubspaceCoords,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a map in this basis (`None` if it is not a homomorphism).
    pub fn coords(&self, f: &ModuleMap) -> Option<Vector> {
        self.coords.coords(&f.flatten())
    }

    pub fn combine(&self, coeffs: &[Scalar]) -> ModuleMap {
        let mut acc = ModuleMap::zero(&self.source, &self.target);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if !c.is_zero() {
                acc = acc.add(&b.scale(c));
            }
        }
        acc
    }
}

/// Exact basis of the space of module maps `X -> Y`.
pub fn hom_space(x: &Module, y: &Module) -> Result<HomSpace> {
    check_same(x, y)?;
    let f = x.field();
    let n = x.dims.len();
    let mut off = vec![0usize; n + 1];
    for v in 0..n {
        off[v + 1] = off[v] + y.dims[v] * x.dims[v];
    }
    let unknowns = off[n];
    let mut rows: Vec<Vector> = Vec::new();
    for (ai, a) in x.alg.quiver().arrows().iter().enumerate() {
        let (i, j) = (a.source, a.target);
        let (xa, ya) = (&x.maps[ai], &y.maps[ai]);
        // (Y_a f_i - f_j X_a)[r][c] = 0
        for r in 0..y.dims[j] {
            for c in 0..x.dims[i] {
                let mut row = crate::linalg::zero_vec(f, unknowns);
                for k in 0..y.dims[i] {
                    let yv = ya.get(r, k);
                    if !yv.is_zero() {
                        let idx = off[i] + k * x.dims[i] + c;
                        row[idx] = &row[idx] + yv;
                    }
                }
                for k in 0..x.dims[j] {
                    let xv = xa.get(k, c);
                    if !xv.is_zero() {
                        let idx = off[j] + r * x.dims[j] + k;
                        row[idx] = &row[idx] - xv;
                    }
                }
                if row.iter().any(|e| !e.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let kernel = if rows.is_empty() {
        (0..unknowns).map(|i| crate::linalg::unit_vec(f, unknowns, i)).collect()
    } else {
        Matrix::from_rows(f, rows, unknowns).kernel_basis()
    };
    let basis = kernel
        .iter()
        .map(|v| {
            let comps = (0..n).map(|w| Matrix::from_flat(f, y.dims[w], x.dims[w], v[off[w]..off[w + 1]].to_vec())).collect();
            ModuleMap { source: x.clone(), target: y.clone(), comps }
        })
        .collect();
    let coords = SubspaceCoords::new(f, unknowns, &kernel);
    Ok(HomSpace { source: x.clone(), target: y.clone(), basis, coords })
}

pub fn hom_dim(x: &Module, y: &Module) -> Result<usize> {
    Ok(hom_space(x, y)?.dim())
}

/// Kernel with its inclusion.
pub fn kernel(f: &ModuleMap) -> (Module, ModuleMap) {
    let bases = f.comps.iter().map(Matrix::kernel_basis).collect();
    f.source.submodule(bases)
}

/// Image with its inclusion into the target.
pub fn image(f: &ModuleMap) -> (Module, ModuleMap) {
    let bases = f.comps.iter().map(Matrix::column_space).collect();
    f.target.submodule(bases)
}

/// Cokernel with its projection.
pub fn cokernel(f: &ModuleMap) -> (Module, ModuleMap) {
    let bases: Vec<Vec<Vector>> = f.comps.iter().map(Matrix::column_space).collect();
    f.target.quotient(&bases)
}

/// A direct sum together with its structure maps.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: Module,
    pub inclusions: Vec<ModuleMap>,
    pub projections: Vec<ModuleMap>,
}

pub fn direct_sum(parts: &[Module]) -> Result<DirectSum> {
    let Some(first) = parts.first() else {
        return Err(Error::InvalidModule("empty direct sum".into()));
    };
    for p in parts {
        check_same(first, p)?;
    }
    let alg = first.alg.clone();
    let f = alg.field();
    let n = alg.num_vertices();
    let dims: Vec<usize> = (0..n).map(|v| parts.iter().map(|p| p.dims[v]).sum()).collect();
    let maps: Vec<Matrix> = (0..alg.quiver().arrows().len())
        .map(|a| Matrix::block_diag(f, &parts.iter().map(|p| p.maps[a].clone()).collect::<Vec<_>>()))
        .collect();
    let module = Module { alg: alg.clone(), dims: dims.clone(), maps: Arc::new(maps) };
    let mut inclusions = Vec::new();
    let mut projections = Vec::new();
    let mut offs = vec![0usize; n];
    for p in parts {
        let mut inc = Vec::new();
        let mut pro = Vec::new();
        for v in 0..n {
            let mut i = Matrix::zeros(f, dims[v], p.dims[v]);
            let mut q = Matrix::zeros(f, p.dims[v], dims[v]);
            for k in 0..p.dims[v] {
                i.set(offs[v] + k, k, f.one());
                q.set(k, offs[v] + k, f.one());
            }
            inc.push(i);
            pro.push(q);
            offs[v] += p.dims[v];
        }
        inclusions.push(ModuleMap { source: p.clone(), target: module.clone(), comps: inc });
        projections.push(ModuleMap { source: module.clone(), target: p.clone(), comps: pro });
    }
    Ok(DirectSum { module, inclusions, projections })
}

/// Map `⊕ X_k -> ⊕ Y_l` assembled from blocks `blocks[l][k]: X_k -> Y_l`.
pub fn block_map(src: &DirectSum, tgt: &DirectSum, blocks: &[Vec<ModuleMap>]) -> ModuleMap {
    let mut acc = ModuleMap::zero(&src.module, &tgt.module);
    for (l, row) in blocks.iter().enumerate() {
        for (k, b) in row.iter().enumerate() {
            acc = acc.add(&src.projections[k].then(b).then(&tgt.inclusions[l]));
        }
    }
    acc
}

#[derive(Clone, Debug)]
pub enum IsoVerdict {
    Isomorphic(ModuleMap),
    NotIsomorphic(String),
    Unknown,
}

impl IsoVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, IsoVerdict::Isomorphic(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, IsoVerdict::NotIsomorphic(_))
    }
}

const RANDOM_TRIALS: usize = 8;
const SEED: u64 = 0x5eed_cafe;

fn random_combination(h: &HomSpace, rng: &mut ChaCha8Rng) -> ModuleMap {
    let f = h.source.field();
    let coeffs: Vec<Scalar> = (0..h.dim()).map(|_| f.int(rng.gen_range(-3..=3))).collect();
    h.combine(&coeffs)
}

/// Decide `X ≅ Y`. A positive answer always carries an invertible witness.
pub fn is_isomorphic(x: &Module, y: &Module) -> Result<IsoVerdict> {
    check_same(x, y)?;
    if x.dims != y.dims {
        return Ok(IsoVerdict::NotIsomorphic("dimension vectors differ".into()));
    }
    if x.is_zero() {
        return Ok(IsoVerdict::Isomorphic(x.identity()));
    }
    if x == y {
        return Ok(IsoVerdict::Isomorphic(x.identity()));
    }
    let hxy = hom_space(x, y)?;
    let hyx = hom_space(y, x)?;
    let exx = hom_space(x, x)?;
    if hxy.dim() != exx.dim() || hyx.dim() != exx.dim() || hom_dim(y, y)? != exx.dim() {
        return Ok(IsoVerdict::NotIsomorphic("Hom dimensions differ".into()));
    }
    for b in &hxy.basis {
        if b.is_isomorphism() {
            return Ok(IsoVerdict::Isomorphic(b.clone()));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..RANDOM_TRIALS {
        let g = random_combination(&hxy, &mut rng);
        if g.is_isomorphism() {
            return Ok(IsoVerdict::Isomorphic(g));
        }
    }
    // Local endomorphism ring: X ≅ Y iff some g∘f is invertible.
    let rad = endo_radical(x, &exx)?;
    if exx.dim() - rad.len() == 1 {
        for f in &hxy.basis {
            for g in &hyx.basis {
                if f.then(g).is_isomorphism() {
                    return Ok(IsoVerdict::Isomorphic(f.clone()));
                }
            }
        }
        return Ok(IsoVerdict::NotIsomorphic("no composite Y->X->Y... is invertible on a local module".into()));
    }
    // Krull-Schmidt: compare indecomposable summands.
    let (dx, dy) = match (decompose(x), decompose(y)) {
        (Ok(a), Ok(b)) => (a, b),
        _ => return Ok(IsoVerdict::Unknown),
    };
    if dx.len() != dy.len() {
        return Ok(IsoVerdict::NotIsomorphic("different numbers of indecomposable summands".into()));
    }
    let mut used = vec![false; dy.len()];
    let mut pieces: Vec<(usize, usize, ModuleMap)> = Vec::new();
    for (i, sx) in dx.iter().enumerate() {
        let mut found = false;
        for (j, sy) in dy.iter().enumerate() {
            if used[j] {
                continue;
            }
            match is_isomorphic(&sx.module, &sy.module)? {
                IsoVerdict::Isomorphic(w) => {
                    used[j] = true;
                    pieces.push((i, j, w));
                    found = true;
                    break;
                }
                IsoVerdict::Unknown => return Ok(IsoVerdict::Unknown),
                IsoVerdict::NotIsomorphic(_) => {}
            }
        }
        if !found {
            return Ok(IsoVerdict::NotIsomorphic("indecomposable summands differ".into()));
        }
    }
    let mut w = ModuleMap::zero(x, y);
    for (i, j, iso) in pieces {
        w = w.add(&dx[i].projection.then(&iso).then(&dy[j].inclusion));
    }
    if w.is_isomorphism() {
        Ok(IsoVerdict::Isomorphic(w))
    } else {
        Ok(IsoVerdict::Unknown)
    }
}

/// Radical of `End(X)` as coefficient vectors in the basis of `end`.
///
/// Uses the trace form of the faithful action on `X`, valid in characteristic
/// zero and in characteristic `p > dim X`.
pub fn endo_radical(x: &Module, end: &HomSpace) -> Result<Vec<Vector>> {
    let f = x.field();
    if let Field::Prime(p) = f {
        if p as usize <= x.total_dim() {
            return Err(Error::UnsupportedCharacteristic(format!(
                "trace-form radical needs p > {} (module dimension)",
                x.total_dim()
            )));
        }
    }
    let d = end.dim();
    if d == 0 {
        return Ok(vec![]);
    }
    let mut gram = Matrix::zeros(f, d, d);
    for k in 0..d {
        for l in k..d {
            let t = end.basis[k].then(&end.basis[l]).trace();
            gram.set(k, l, t.clone());
            gram.set(l, k, t);
        }
    }
    Ok(gram.kernel_basis())
}

/// One indecomposable summand with its split inclusion and projection.
#[derive(Clone, Debug)]
pub struct Summand {
    pub module: Module,
    pub inclusion: ModuleMap,
    pub projection: ModuleMap,
}

/// Split `X` into indecomposables by Fitting decompositions of endomorphisms.
///
/// The returned maps satisfy `projection_i ∘ inclusion_j = δ_ij` and
/// `Σ inclusion_i ∘ projection_i = id`.
pub fn decompose(x: &Module) -> Result<Vec<Summand>> {
    if x.is_zero() {
        return Ok(vec![]);
    }
    let end = hom_space(x, x)?;
    let rad = endo_radical(x, &end)?;
    if end.dim() - rad.len() == 1 {
        return Ok(vec![Summand { module: x.clone(), inclusion: x.identity(), projection: x.identity() }]);
    }
    let Some((k, i)) = find_fitting_split(x, &end)? else {
        return Err(Error::FieldTooSmall(format!(
            "End/rad has dimension {} but no splitting endomorphism has eigenvalues in {}; try a field extension or a prime field",
            end.dim() - rad.len(),
            x.field()
        )));
    };
    let mut out = Vec::new();
    for part in [k, i] {
        for s in decompose(&part.module)? {
            out.push(Summand {
                inclusion: s.inclusion.then(&part.inclusion),
                projection: part.projection.then(&s.projection),
                module: s.module,
            });
        }
    }
    Ok(out)
}

fn find_fitting_split(x: &Module, end: &HomSpace) -> Result<Option<(Summand, Summand)>> {
    let f = x.field();
    let mut candidates: Vec<ModuleMap> = end.basis.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0x1234);
    for _ in 0..2 * RANDOM_TRIALS {
        candidates.push(random_combination(end, &mut rng));
    }
    for phi in candidates {
        let mut eigen: Vec<Scalar> = Vec::new();
        for c in phi.comps() {
            if c.rows() == 0 {
                continue;
            }
            for r in field_roots(f, &c.charpoly()) {
                if !eigen.contains(&r) {
                    eigen.push(r);
                }
            }
        }
        for lambda in eigen {
            let psi = phi.sub(&x.identity().scale(&lambda));
            if let Some(split) = fitting_split(x, &psi) {
                return Ok(Some(split));
            }
        }
    }
    Ok(None)
}

/// `X = ker ψ^n ⊕ im ψ^n` when both parts are nonzero.
fn fitting_split(x: &Module, psi: &ModuleMap) -> Option<(Summand, Summand)> {
    let n = x.total_dim();
    let comps: Vec<Matrix> = psi.comps.iter().map(|c| c.pow(n)).collect();
    let power = ModuleMap { source: x.clone(), target: x.clone(), comps };
    if power.is_zero() || power.is_isomorphism() {
        return None;
    }
    let (km, kinc) = kernel(&power);
    let (im, iinc) = image(&power);
    let f = x.field();
    let mut kp = Vec::new();
    let mut ip = Vec::new();
    for v in 0..x.dims.len() {
        let b = Matrix::block(f, &[vec![kinc.comps[v].clone(), iinc.comps[v].clone()]]);
        let inv = if b.rows() == 0 { b.clone() } else { b.inverse()? };
        let kd = km.dims[v];
        kp.push(inv.submatrix(0..kd, 0..inv.cols()));
        ip.push(inv.submatrix(kd..inv.rows(), 0..inv.cols()));
    }
    let kproj = ModuleMap { source: x.clone(), target: km.clone(), comps: kp };
    let iproj = ModuleMap { source: x.clone(), target: im.clone(), comps: ip };
    Some((
        Summand { module: km, inclusion: kinc, projection: kproj },
        Summand { module: im, inclusion: iinc, projection: iproj },
    ))
}

/// Indecomposable summands grouped up to isomorphism, with multiplicities.
pub fn decompose_grouped(x: &Module) -> Result<Vec<(Module, usize)>> {
    let mut groups: Vec<(Module, usize)> = Vec::new();
    'outer: for s in decompose(x)? {
        for g in groups.iter_mut() {
            if is_isomorphic(&g.0, &s.module)?.is_yes() {
                g.1 += 1;
                continue 'outer;
            }
        }
        groups.push((s.module, 1));
    }
    Ok(groups)
}

/// Whether `X` has a local endomorphism ring with residue field `k`.
pub fn is_indecomposable(x: &Module) -> Result<bool> {
    if x.is_zero() {
        return Ok(false);
    }
    let end = hom_space(x, x)?;
    let rad = endo_radical(x, &end)?;
    if end.dim() - rad.len() == 1 {
        return Ok(true);
    }
    Ok(decompose(x)?.len() == 1)
}

/// Lengths of the indecomposable projectives when the algebra is Nakayama
/// (every vertex has at most one incoming and one outgoing arrow).
pub fn nakayama_lengths(alg: &Algebra) -> Result<Vec<usize>> {
    let q = alg.quiver();
    let n = q.num_vertices();
    let mut outdeg = vec![0; n];
    let mut indeg = vec![0; n];
    for a in q.arrows() {
        outdeg[a.source] += 1;
        indeg[a.target] += 1;
    }
    if outdeg.iter().chain(&indeg).any(|&d| d > 1) {
        return Err(Error::NotNakayama);
    }
    Ok((0..n).map(|v| alg.basis_from(v).len()).collect())
}

/// The uniserial module with top `S_v` and length `l`: `P_v / rad^l P_v`.
pub fn nakayama_indecomposable(alg: Arc<Algebra>, v: usize, l: usize) -> Result<Module> {
    let lens = nakayama_lengths(&alg)?;
    if v >= lens.len() {
        return Err(Error::OutOfRange(format!("vertex {v}")));
    }
    if l == 0 || l > lens[v] {
        return Err(Error::OutOfRange(format!("length {l} not in 1..={}", lens[v])));
    }
    Ok(Module::projective(alg, v)?.radical_quotient(l))
}

/// A labelled module, used for corpora and reports.
#[derive(Clone, Debug)]
pub struct Named {
    pub name: String,
    pub module: Module,
}

/// Every indecomposable module of a Nakayama algebra, as `S_v^[l]`.
pub fn enumerate_indecomposables(alg: Arc<Algebra>) -> Result<Vec<Named>> {
    let lens = nakayama_lengths(&alg)?;
    let q = alg.quiver().clone();
    let mut out = Vec::new();
    for (v, &c) in lens.iter().enumerate() {
        for l in 1..=c {
            out.push(Named {
                name: format!("S{}^[{}]", q.vertices()[v], l),
                module: nakayama_indecomposable(alg.clone(), v, l)?,
            });
        }
    }
    Ok(out)
}

/// Interval modules of a type-A quiver (a path graph with any orientation).
pub fn interval_modules(alg: Arc<Algebra>) -> Result<Vec<Named>> {
    let q = alg.quiver().clone();
    let n = q.num_vertices();
    // Order vertices along the underlying path.
    let mut deg = vec![0; n];
    for a in q.arrows() {
        deg[a.source] += 1;
        deg[a.target] += 1;
    }
    if q.arrows().len() + 1 != n || deg.iter().any(|&d| d > 2) {
        return Err(Error::InvalidQuiver("not a type-A quiver".into()));
    }
    let start = (0..n).find(|&v| deg[v] <= 1).unwrap_or(0);
    let mut order = vec![start];
    while order.len() < n {
        let last = *order.last().unwrap();
        let next = q
            .arrows()
            .iter()
            .filter_map(|a| match (a.source == last, a.target == last) {
                (true, _) => Some(a.target),
                (_, true) => Some(a.source),
                _ => None,
            })
            .find(|w| !order.contains(w))
            .ok_or_else(|| Error::InvalidQuiver("not connected".into()))?;
        order.push(next);
    }
    let f = alg.field();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            let support: Vec<usize> = order[i..=j].to_vec();
            let dims: Vec<usize> = (0..n).map(|v| usize::from(support.contains(&v))).collect();
            let maps = q
                .arrows()
                .iter()
                .map(|a| {
                    let mut m = Matrix::zeros(f, dims[a.target], dims[a.source]);
                    if dims[a.target] == 1 && dims[a.source] == 1 {
                        m.set(0, 0, f.one());
                    }
                    m
                })
                .collect();
            let name = format!("[{}..{}]", q.vertices()[order[i]], q.vertices()[order[j]]);
            out.push(Named { name, module: Module::new(alg.clone(), dims, maps)? });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct ModuleSummary {
    pub dims: Vec<usize>,
    pub total: usize,
}

impl From<&Module> for ModuleSummary {
    fn from(m: &Module) -> Self {
        ModuleSummary { dims: m.dims.clone(), total: m.total_dim() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qalg::{NakayamaSpec, Quiver};

    const Q: Field = Field::Rationals;

    fn a2() -> Arc<Algebra> {
        let q = Quiver::new(&["1", "2"], &[("a", "1", "2")]).unwrap();
        Arc::new(Algebra::build(q, vec![], 3, Q).unwrap())
    }

    fn nak566() -> Arc<Algebra> {
        Arc::new(Algebra::nakayama(&NakayamaSpec::cyclic(&[5, 6, 6]), Q).unwrap())
    }

    #[test]
    fn projective_dimension_vectors() {
        let a = a2();
        assert_eq!(Module::projective(a.clone(), 0).unwrap().dims(), &[1, 1]);
        assert_eq!(Module::projective(a.clone(), 1).unwrap().dims(), &[0, 1]);
        let n = nak566();
        let totals: Vec<usize> = (0..3).map(|v| Module::projective(n.clone(), v).unwrap().total_dim()).collect();
        assert_eq!(totals, vec![5, 6, 6]);
        assert_eq!(Module::simple(n, 2).unwrap().total_dim(), 1);
    }

    #[test]
    fn small_hom_dimensions() {
        let a = a2();
        let s1 = Module::simple(a.clone(), 0).unwrap();
        let s2 = Module::simple(a.clone(), 1).unwrap();
        let p1 = Module::projective(a.clone(), 0).unwrap();
        assert_eq!(hom_dim(&s1, &s2).unwrap(), 0);
        assert_eq!(hom_dim(&p1, &s2).unwrap(), 0);
        assert_eq!(hom_dim(&p1, &s1).unwrap(), 1);
    }

    #[test]
    fn relation_violation_is_rejected() {
        let n = Arc::new(Algebra::nakayama(&NakayamaSpec::cyclic(&[2, 2]), Q).unwrap());
        let one = Matrix::identity(Q, 1);
        assert!(Module::new(n.clone(), vec![1, 1], vec![one.clone(), one.clone()]).is_err());
        let zero = Matrix::zeros(Q, 1, 1);
        assert!(Module::new(n, vec![1, 1], vec![one, zero]).is_ok());
    }

    #[test]
    fn kernel_and_cokernel_of_p2_into_p1() {
        let a = a2();
        let p1 = Module::projective(a.clone(), 0).unwrap();
        let p2 = Module::projective(a.clone(), 1).unwrap();
        let h = hom_space(&p2, &p1).unwrap();
        assert_eq!(h.dim(), 1);
        let f = &h.basis[0];
        assert!(kernel(f).0.is_zero());
        let (c, _) = cokernel(f);
        assert_eq!(c.dims(), &[1, 0]);
        assert!(is_isomorphic(&c, &Module::simple(a, 0).unwrap()).unwrap().is_yes());
        assert!(kernel(&p1.identity()).0.is_zero());
        let z = Module::zero(p1.algebra().clone());
        assert_eq!(cokernel(&ModuleMap::zero(&z, &p1)).0, p1);
    }

    #[test]
    fn duality() {
        let n = nak566();
        let p = Module::projective(n.clone(), 1).unwrap();
        let d = p.dual();
        assert_eq!(d.total_dim(), 6);
        assert_eq!(d.dual(), p);
        let i = Module::injective(n.opposite(), 1).unwrap();
        assert!(is_isomorphic(&i, &d).unwrap().is_yes());
        let s = Module::simple(n.clone(), 0).unwrap();
        assert_eq!(s.dual(), Module::simple(n.opposite(), 0).unwrap());
    }

    #[test]
    fn isomorphism_examples() {
        let a = a2();
        let s1 = Module::simple(a.clone(), 0).unwrap();
        let s2 = Module::simple(a.clone(), 1).unwrap();
        assert!(is_isomorphic(&s1, &s1).unwrap().is_yes());
        assert!(is_isomorphic(&s1, &s2).unwrap().is_no());
        let p1 = Module::projective(a.clone(), 0).unwrap();
        let p2 = Module::projective(a.clone(), 1).unwrap();
        let x = direct_sum(&[p1.clone(), p2.clone()]).unwrap().module;
        let y = direct_sum(&[p2, p1]).unwrap().module;
        match is_isomorphic(&x, &y).unwrap() {
            IsoVerdict::Isomorphic(w) => assert!(w.is_isomorphism() && w.commutes()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn decomposition_of_regular_nakayama() {
        let n = nak566();
        let a = Module::regular(n.clone()).unwrap();
        let parts = decompose(&a).unwrap();
        assert_eq!(parts.len(), 3);
        let mut totals: Vec<usize> = parts.iter().map(|s| s.module.total_dim()).collect();
        totals.sort();
        assert_eq!(totals, vec![5, 6, 6]);
        let mut id = ModuleMap::zero(&a, &a);
        for s in &parts {
            id = id.add(&s.projection.then(&s.inclusion));
        }
        assert_eq!(id, a.identity());
        let p1 = Module::projective(n, 0).unwrap();
        let pp = direct_sum(&[p1.clone(), p1.clone()]).unwrap().module;
        let g = decompose_grouped(&pp).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g[0].1, 2);
    }

    #[test]
    fn nakayama_uniserials() {
        let n = nak566();
        let m = nakayama_indecomposable(n.clone(), 1, 3).unwrap();
        assert_eq!(m.dims(), &[1, 1, 1]);
        assert_eq!(m.top_dims(), vec![0, 1, 0]);
        assert_eq!(nakayama_indecomposable(n.clone(), 0, 1).unwrap(), Module::simple(n.clone(), 0).unwrap());
        assert_eq!(nakayama_indecomposable(n.clone(), 2, 6).unwrap().total_dim(), 6);
        assert!(nakayama_indecomposable(n.clone(), 0, 6).is_err());
        assert_eq!(enumerate_indecomposables(n).unwrap().len(), 17);
        let n44 = Arc::new(Algebra::nakayama(&NakayamaSpec::cyclic(&[4, 4]), Q).unwrap());
        assert_eq!(enumerate_indecomposables(n44).unwrap().len(), 8);
        let k = Arc::new(Algebra::nakayama(&NakayamaSpec::linear(&[1]), Q).unwrap());
        assert_eq!(enumerate_indecomposables(k).unwrap().len(), 1);
    }

    #[test]
    fn yoneda_on_nakayama_corpus() {
        let n = nak566();
        for x in enumerate_indecomposables(n.clone()).unwrap() {
            for v in 0..3 {
                let p = Module::projective(n.clone(), v).unwrap();
                assert_eq!(hom_dim(&p, &x.module).unwrap(), x.module.dims()[v], "{}", x.name);
            }
        }
    }
}
