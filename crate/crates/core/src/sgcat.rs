//! A finite model of the singularity category: stable Homs, Homs stabilized along
//! syzygies, zero and isomorphism tests, the translation, orbits and perpendicular classes.
//!
//! `Hom(q X, q Y[d])` is the colimit of `Hom_st(Ω^{n+d} X, Ω^n Y)` along the maps
//! induced by `Ω`. It is only evaluated once both arguments carry a syzygy
//! periodicity certificate, which makes the colimit a finite rank computation.

use std::sync::Arc;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gproj::{a_dual, is_projective};
use crate::homol::{map_from_projective, proj_dimension_from, projective_cover, PdKind, Resolution, SyzygyCertificate};
use crate::linalg::{independent_subset, Matrix, QuotientSpace, Vector};
use crate::modcat::{decompose, hom_space, is_isomorphic, HomSpace, Module, ModuleMap, Named};
use crate::qalg::Algebra;

/// `q(X)[shift]`.
#[derive(Clone, Debug)]
pub struct SgObject {
    pub label: String,
    pub module: Module,
    pub shift: i64,
}

impl SgObject {
    pub fn new(label: impl Into<String>, module: Module) -> Self {
        SgObject { label: label.into(), module, shift: 0 }
    }

    pub fn shifted(&self, by: i64) -> Self {
        SgObject { label: self.label.clone(), module: self.module.clone(), shift: self.shift + by }
    }
}

impl From<&Named> for SgObject {
    fn from(n: &Named) -> Self {
        SgObject::new(n.name.clone(), n.module.clone())
    }
}

/// `Hom(X, Y)` modulo maps factoring through a projective.
#[derive(Clone, Debug)]
pub struct StableHom {
    pub hom: HomSpace,
    quotient: QuotientSpace,
}

impl StableHom {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    /// Class of a homomorphism in the stable quotient.
    pub fn class_of(&self, f: &ModuleMap) -> Vector {
        self.quotient.projection.mul_vec(&self.hom.coords(f).expect("argument is a homomorphism"))
    }

    /// Representatives of a basis of the stable quotient.
    pub fn representatives(&self) -> Vec<ModuleMap> {
        self.quotient.section.columns().iter().map(|c| self.hom.combine(c)).collect()
    }
}

fn stable_hom_with_cover(x: &Module, y: &Module, cover: &ModuleMap) -> Result<StableHom> {
    let hom = hom_space(x, y)?;
    let through = hom_space(x, cover.source())?;
    let factoring: Vec<Vector> =
        through.basis.iter().map(|g| hom.coords(&g.then(cover)).expect("π∘g is a homomorphism")).collect();
    let quotient = QuotientSpace::new(x.field(), hom.dim(), &factoring);
    Ok(StableHom { hom, quotient })
}

/// Stable Hom, computed with the projective cover of the target.
pub fn stable_hom(x: &Module, y: &Module) -> Result<StableHom> {
    let cover = projective_cover(y)?;
    stable_hom_with_cover(x, y, &cover.epi)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StabStatus {
    Stabilized,
    Inconclusive,
}

#[derive(Clone, Debug)]
pub struct StabHomResult {
    pub status: StabStatus,
    pub dim: usize,
    /// Level `n` of the realization `Ω^{n+d} X -> Ω^n Y`.
    pub level: i64,
    pub relative_shift: i64,
    pub basis: Vec<ModuleMap>,
}

impl StabHomResult {
    fn zero(d: i64) -> Self {
        StabHomResult { status: StabStatus::Stabilized, dim: 0, level: 0, relative_shift: d, basis: vec![] }
    }

    fn inconclusive(d: i64) -> Self {
        StabHomResult { status: StabStatus::Inconclusive, dim: 0, level: 0, relative_shift: d, basis: vec![] }
    }

    pub fn is_stabilized(&self) -> bool {
        self.status == StabStatus::Stabilized
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Ternary {
    Yes,
    No,
    Inconclusive,
}

struct Entry {
    module: Module,
    res: Resolution,
    cert: SyzygyCertificate,
}

/// Caches resolutions and periodicity certificates of the modules it has seen.
pub struct SgContext {
    alg: Arc<Algebra>,
    cap: usize,
    entries: Vec<Entry>,
}

impl SgContext {
    pub fn new(alg: Arc<Algebra>, cap: usize) -> Self {
        SgContext { alg, cap: cap.max(1), entries: Vec::new() }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    fn entry(&mut self, m: &Module) -> Result<usize> {
        if let Some(i) = self.entries.iter().position(|e| &e.module == m) {
            return Ok(i);
        }
        if !crate::qalg::Algebra::eq(m.algebra(), &self.alg) {
            return Err(Error::AlgebraMismatch);
        }
        let mut res = Resolution::new(m);
        let cert = proj_dimension_from(&mut res, self.cap)?;
        self.entries.push(Entry { module: m.clone(), res, cert });
        Ok(self.entries.len() - 1)
    }

    pub fn certificate(&mut self, m: &Module) -> Result<SyzygyCertificate> {
        let i = self.entry(m)?;
        Ok(self.entries[i].cert.clone())
    }

    fn syz(&mut self, i: usize, n: usize) -> Result<Module> {
        Ok(self.entries[i].res.syzygy(n)?.clone())
    }

    pub fn syzygy(&mut self, m: &Module, n: usize) -> Result<Module> {
        let i = self.entry(m)?;
        self.syz(i, n)
    }

    /// `f: Ω^a X -> Ω^b Y` induces `Ω^{a+1} X -> Ω^{b+1} Y`.
    fn omega_map(&mut self, ix: usize, a: usize, iy: usize, b: usize, f: &ModuleMap) -> Result<ModuleMap> {
        self.entries[ix].res.extend_to(a + 1)?;
        self.entries[iy].res.extend_to(b + 1)?;
        let cx = self.entries[ix].res.covers[a].clone();
        let inc_x = self.entries[ix].res.inclusions[a].clone();
        let cy = self.entries[iy].res.covers[b].clone();
        let inc_y = self.entries[iy].res.inclusions[b].clone();
        let py = cy.projective().clone();
        let mut lift = ModuleMap::zero(cx.projective(), &py);
        for (k, (&v, g)) in cx.vertices.iter().zip(&cx.generators).enumerate() {
            let w = f.apply(v, g);
            let x = cy.epi.comp(v).solve(&w)?.expect("projective cover is onto");
            lift = lift.add(&cx.sum.projections[k].then(&map_from_projective(v, &py, &x)?));
        }
        let h = inc_x.then(&lift);
        let comps = (0..h.comps().len())
            .map(|v| inc_y.comp(v).solve_many(h.comp(v)).map(|s| s.expect("lift restricts to syzygies")))
            .collect::<Result<Vec<_>>>()?;
        Ok(ModuleMap::from_parts(inc_x.source().clone(), inc_y.source().clone(), comps))
    }

    fn stable_at(&mut self, ix: usize, a: usize, iy: usize, b: usize) -> Result<StableHom> {
        self.entries[iy].res.extend_to(b + 1)?;
        let x = self.syz(ix, a)?;
        let y = self.syz(iy, b)?;
        let cover = self.entries[iy].res.covers[b].epi.clone();
        stable_hom_with_cover(&x, &y, &cover)
    }

    pub fn sg_is_zero(&mut self, m: &Module) -> Result<Ternary> {
        let i = self.entry(m)?;
        Ok(match self.entries[i].cert.kind {
            PdKind::Finite { .. } => Ternary::Yes,
            PdKind::Periodic { .. } => Ternary::No,
            PdKind::Inconclusive { .. } => Ternary::Inconclusive,
        })
    }

    /// `Hom_{D_sg}(x, y)` as a stabilized colimit.
    pub fn stabilized_hom(&mut self, x: &SgObject, y: &SgObject) -> Result<StabHomResult> {
        let d = y.shift - x.shift;
        let ix = self.entry(&x.module)?;
        let iy = self.entry(&y.module)?;
        let (ox, px) = match &self.entries[ix].cert.kind {
            PdKind::Finite { .. } => return Ok(StabHomResult::zero(d)),
            PdKind::Periodic { onset, period, .. } => (*onset as i64, *period as i64),
            PdKind::Inconclusive { .. } => return Ok(StabHomResult::inconclusive(d)),
        };
        let (oy, py) = match &self.entries[iy].cert.kind {
            PdKind::Finite { .. } => return Ok(StabHomResult::zero(d)),
            PdKind::Periodic { onset, period, .. } => (*onset as i64, *period as i64),
            PdKind::Inconclusive { .. } => return Ok(StabHomResult::inconclusive(d)),
        };
        let n0 = [oy, ox - d, -d, 0].into_iter().max().unwrap();
        let period = px.lcm(&py);
        let level = |n: i64| ((n + d) as usize, n as usize);
        let (a0, b0) = level(n0);
        let v0 = self.stable_at(ix, a0, iy, b0)?;
        let mut current = v0.representatives();
        if current.is_empty() {
            return Ok(StabHomResult { status: StabStatus::Stabilized, dim: 0, level: n0, relative_shift: d, basis: vec![] });
        }
        let mut prev_rank = current.len();
        let mut n = n0;
        let f = x.module.field();
        for _ in 0..=current.len() + 1 {
            for _ in 0..period {
                let (a, b) = level(n);
                current = current.iter().map(|m| self.omega_map(ix, a, iy, b, m)).collect::<Result<_>>()?;
                n += 1;
            }
            let (a, b) = level(n);
            let vs = self.stable_at(ix, a, iy, b)?;
            let classes: Vec<Vector> = current.iter().map(|m| vs.class_of(m)).collect();
            let keep = independent_subset(f, vs.dim(), &classes);
            if keep.len() == prev_rank {
                let basis = keep.into_iter().map(|k| current[k].clone()).collect();
                return Ok(StabHomResult { status: StabStatus::Stabilized, dim: prev_rank, level: n, relative_shift: d, basis });
            }
            prev_rank = keep.len();
        }
        Ok(StabHomResult::inconclusive(d))
    }

    pub fn stabilized_dim(&mut self, x: &SgObject, y: &SgObject) -> Result<Option<usize>> {
        let r = self.stabilized_hom(x, y)?;
        Ok(r.is_stabilized().then_some(r.dim))
    }

    /// Non-projective part of a module, as its list of indecomposable summands.
    fn non_projective_part(m: &Module) -> Result<Vec<Module>> {
        let mut out = Vec::new();
        for s in decompose(m)? {
            if !is_projective(&s.module)? {
                out.push(s.module);
            }
        }
        Ok(out)
    }

    fn same_up_to_projectives(u: &Module, v: &Module) -> Result<Option<bool>> {
        let a = Self::non_projective_part(u)?;
        let b = Self::non_projective_part(v)?;
        if a.len() != b.len() {
            return Ok(Some(false));
        }
        let mut used = vec![false; b.len()];
        for x in &a {
            let mut hit = false;
            for (j, y) in b.iter().enumerate() {
                if used[j] {
                    continue;
                }
                match is_isomorphic(x, y)? {
                    crate::modcat::IsoVerdict::Isomorphic(_) => {
                        used[j] = true;
                        hit = true;
                        break;
                    }
                    crate::modcat::IsoVerdict::Unknown => return Ok(None),
                    crate::modcat::IsoVerdict::NotIsomorphic(_) => {}
                }
            }
            if !hit {
                return Ok(Some(false));
            }
        }
        Ok(Some(true))
    }

    /// A shift-matched pair of syzygies with isomorphic non-projective parts, if any.
    fn syzygy_match(&mut self, x: &SgObject, y: &SgObject) -> Result<Option<(usize, usize)>> {
        let ix = self.entry(&x.module)?;
        let iy = self.entry(&y.module)?;
        let (PdKind::Periodic { onset: ox, period: px, .. }, PdKind::Periodic { onset: oy, period: py, .. }) =
            (self.entries[ix].cert.kind.clone(), self.entries[iy].cert.kind.clone())
        else {
            return Ok(None);
        };
        // q(X)[s] ≅ q(Ω^k X)[s+k]; match s + kx = t + ky.
        let diff = y.shift - x.shift;
        let start = (ox as i64).max(oy as i64 + diff).max(diff).max(0);
        for kx in start..start + px.lcm(&py) as i64 {
            let ky = kx - diff;
            let u = self.syz(ix, kx as usize)?;
            let v = self.syz(iy, ky as usize)?;
            if u.dims().iter().sum::<usize>() > 0 && Self::same_up_to_projectives(&u, &v)? == Some(true) {
                return Ok(Some((kx as usize, ky as usize)));
            }
        }
        Ok(None)
    }

    /// Decide `x ≅ y` in the singularity category.
    pub fn sg_is_isomorphic(&mut self, x: &SgObject, y: &SgObject) -> Result<Ternary> {
        let zx = self.sg_is_zero(&x.module)?;
        let zy = self.sg_is_zero(&y.module)?;
        match (zx, zy) {
            (Ternary::Yes, Ternary::Yes) => return Ok(Ternary::Yes),
            (Ternary::Yes, Ternary::No) | (Ternary::No, Ternary::Yes) => return Ok(Ternary::No),
            (Ternary::No, Ternary::No) => {}
            _ => return Ok(Ternary::Inconclusive),
        }
        if self.syzygy_match(x, y)?.is_some() {
            return Ok(Ternary::Yes);
        }
        let dims = [
            self.stabilized_dim(x, x)?,
            self.stabilized_dim(y, y)?,
            self.stabilized_dim(x, y)?,
            self.stabilized_dim(y, x)?,
        ];
        if dims.iter().any(Option::is_none) {
            return Ok(Ternary::Inconclusive);
        }
        let d: Vec<usize> = dims.iter().map(|v| v.unwrap()).collect();
        if d[2] == 0 || d.iter().any(|&v| v != d[0]) {
            return Ok(Ternary::No);
        }
        Ok(Ternary::Inconclusive)
    }

    /// Representatives are compared against probes to separate what the direct test leaves open.
    fn probe_separates(&mut self, x: &SgObject, y: &SgObject, probes: &[SgObject]) -> Result<bool> {
        for z in probes {
            for k in -1..=1 {
                let zk = z.shifted(k);
                let a = (self.stabilized_dim(&zk, x)?, self.stabilized_dim(&zk, y)?);
                let b = (self.stabilized_dim(x, &zk)?, self.stabilized_dim(y, &zk)?);
                if matches!(a, (Some(p), Some(q)) if p != q) || matches!(b, (Some(p), Some(q)) if p != q) {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    /// Group the nonzero objects among `candidates` into isomorphism classes.
    pub fn classify(&mut self, candidates: &[SgObject]) -> Result<Classification> {
        let mut zero = Vec::new();
        let mut classes: Vec<Vec<SgObject>> = Vec::new();
        let mut unresolved = Vec::new();
        for c in candidates {
            match self.sg_is_zero(&c.module)? {
                Ternary::Yes => {
                    zero.push(c.clone());
                    continue;
                }
                Ternary::Inconclusive => {
                    unresolved.push(c.label.clone());
                    continue;
                }
                Ternary::No => {}
            }
            let mut placed = false;
            for cl in classes.iter_mut() {
                let rep = cl[0].clone();
                match self.sg_is_isomorphic(&rep, c)? {
                    Ternary::Yes => {
                        cl.push(c.clone());
                        placed = true;
                        break;
                    }
                    Ternary::No => {}
                    Ternary::Inconclusive => {
                        if !self.probe_separates(&rep, c, candidates)? {
                            unresolved.push(format!("{} vs {}", rep.label, c.label));
                        }
                    }
                }
            }
            if !placed {
                classes.push(vec![c.clone()]);
            }
        }
        Ok(Classification { zero, classes, unresolved })
    }

    /// For each class, the class of its translate (`None` if it leaves the list).
    pub fn sigma_permutation(&mut self, reps: &[SgObject]) -> Result<Vec<Option<usize>>> {
        let mut out = Vec::new();
        for r in reps {
            let t = r.shifted(1);
            let mut hit = None;
            for (j, s) in reps.iter().enumerate() {
                if self.sg_is_isomorphic(&t, s)? == Ternary::Yes {
                    hit = Some(j);
                    break;
                }
            }
            out.push(hit);
        }
        Ok(out)
    }

    /// Classes among `reps` lying in the translation orbit of some summand of `m`.
    pub fn thick_orbit(&mut self, m: &Module, reps: &[SgObject]) -> Result<Vec<usize>> {
        let sigma = self.sigma_permutation(reps)?;
        let mut out = Vec::new();
        for s in decompose(m)? {
            if self.sg_is_zero(&s.module)? != Ternary::No {
                continue;
            }
            let so = SgObject::new("summand", s.module);
            let Some(start) = self.class_index(&so, reps)? else { continue };
            let mut c = start;
            loop {
                if !out.contains(&c) {
                    out.push(c);
                }
                match sigma[c] {
                    Some(n) if n != start => c = n,
                    _ => break,
                }
            }
        }
        out.sort();
        Ok(out)
    }

    fn class_index(&mut self, x: &SgObject, reps: &[SgObject]) -> Result<Option<usize>> {
        for (j, r) in reps.iter().enumerate() {
            if self.sg_is_isomorphic(x, r)? == Ternary::Yes {
                return Ok(Some(j));
            }
        }
        Ok(None)
    }

    /// Translation period of `q(U)`: least `p >= 1` with `q(U)[p] ≅ q(U)`.
    pub fn sigma_period(&mut self, u: &SgObject) -> Result<Option<usize>> {
        for p in 1..=2 * self.cap {
            match self.sg_is_isomorphic(&u.shifted(p as i64), u)? {
                Ternary::Yes => return Ok(Some(p)),
                Ternary::No => {}
                Ternary::Inconclusive => return Ok(None),
            }
        }
        Ok(None)
    }

    /// Classes `X` with `Hom(q(M)[k], X) = 0` over a full translation period of each summand.
    pub fn perp(&mut self, m: &Module, reps: &[SgObject]) -> Result<PerpResult> {
        let mut probes = Vec::new();
        for s in decompose(m)? {
            match self.sg_is_zero(&s.module)? {
                Ternary::Yes => continue,
                Ternary::Inconclusive => return Ok(PerpResult { members: vec![], inconclusive: true }),
                Ternary::No => {}
            }
            let u = SgObject::new("summand", s.module);
            let Some(p) = self.sigma_period(&u)? else {
                return Ok(PerpResult { members: vec![], inconclusive: true });
            };
            probes.push((u, p));
        }
        let mut members = Vec::new();
        let mut inconclusive = false;
        'cand: for (j, x) in reps.iter().enumerate() {
            for (u, p) in &probes {
                for k in 0..*p as i64 {
                    match self.stabilized_dim(&u.shifted(k), x)? {
                        Some(0) => {}
                        Some(_) => continue 'cand,
                        None => {
                            inconclusive = true;
                            continue 'cand;
                        }
                    }
                }
            }
            members.push(j);
        }
        Ok(PerpResult { members, inconclusive })
    }

    /// The translate realized as a cosyzygy `(Ω_{op}(X*))*`, meaningful for GP `X`.
    pub fn cosyzygy(&self, x: &Module) -> Result<Module> {
        let xd = a_dual(x)?.module;
        let (om, _, _) = crate::homol::syzygy(&xd)?;
        a_dual(&om)?.module.over(self.alg.clone())
    }

    /// Check that a family of classes forms a semisimple triangulated category with `t`
    /// objects whose translation permutes them with the cycle type of `sigma`.
    pub fn semisimple_pattern_check(&mut self, reps: &[SgObject], t: usize, sigma: &[usize]) -> Result<PatternReport> {
        let mut report = PatternReport::default();
        report.count_ok = reps.len() == t && sigma.len() == t;
        let mut ok = report.count_ok;
        for (i, x) in reps.iter().enumerate() {
            for (j, y) in reps.iter().enumerate() {
                let d = self.stabilized_dim(x, y)?;
                let want = usize::from(i == j);
                if d != Some(want) {
                    ok = false;
                    report.failures.push(format!("Hom({}, {}) = {:?}, expected {}", x.label, y.label, d, want));
                }
            }
        }
        let perm = self.sigma_permutation(reps)?;
        report.sigma = perm.clone();
        let computed: Option<Vec<usize>> = perm.iter().copied().collect();
        match computed {
            Some(p) if cycle_type(&p) == cycle_type(sigma) => {
                let order = perm_order(&p);
                for (i, x) in reps.iter().enumerate() {
                    for (j, y) in reps.iter().enumerate() {
                        for n in 1..=order as i64 {
                            // Hom(X_i, X_j[n]) = 1 iff Σ^n X_j ≅ X_i
                            let mut img = j;
                            for _ in 0..n {
                                img = p[img];
                            }
                            let want = usize::from(img == i);
                            let d = self.stabilized_dim(x, &y.shifted(n))?;
                            if d != Some(want) {
                                ok = false;
                                report.failures.push(format!("Hom({}, {}[{n}]) = {:?}, expected {want}", x.label, y.label, d));
                            }
                        }
                    }
                }
            }
            _ => {
                ok = false;
                report.failures.push(format!("translation acts as {perm:?}, expected cycle type of {sigma:?}"));
            }
        }
        report.pass = ok;
        Ok(report)
    }
}

fn cycle_type(p: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for i in 0..p.len() {
        if seen[i] {
            continue;
        }
        let mut len = 0;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = p[j];
            len += 1;
        }
        out.push(len);
    }
    out.sort();
    out
}

fn perm_order(p: &[usize]) -> usize {
    cycle_type(p).into_iter().fold(1, |acc, c| acc.lcm(&c))
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub zero: Vec<SgObject>,
    pub classes: Vec<Vec<SgObject>>,
    /// Pairs that could not be separated or identified.
    pub unresolved: Vec<String>,
}

impl Classification {
    pub fn representatives(&self) -> Vec<SgObject> {
        self.classes.iter().map(|c| c[0].clone()).collect()
    }

    pub fn is_certified(&self) -> bool {
        self.unresolved.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct PerpResult {
    pub members: Vec<usize>,
    pub inconclusive: bool,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct PatternReport {
    pub pass: bool,
    pub count_ok: bool,
    pub sigma: Vec<Option<usize>>,
    pub failures: Vec<String>,
}

/// Recover the stable Hom between the stabilized realization and the plain one.
pub fn stable_dims_table(ctx: &mut SgContext, reps: &[SgObject]) -> Result<Vec<Vec<Option<usize>>>> {
    reps.iter().map(|x| reps.iter().map(|y| ctx.stabilized_dim(x, y)).collect()).collect()
}

/// Realization matrix helper used by reports: class coordinates of a list of maps.
pub fn class_matrix(sh: &StableHom, maps: &[ModuleMap]) -> Matrix {
    let cols: Vec<Vector> = maps.iter().map(|m| sh.class_of(m)).collect();
    Matrix::from_columns(sh.hom.source.field(), sh.dim(), &cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homol::DEFAULT_CAP;
    use crate::linalg::Field;
    use crate::modcat::{enumerate_indecomposables, nakayama_indecomposable};
    use crate::qalg::NakayamaSpec;

    const Q: Field = Field::Rationals;

    fn nak(seq: &[usize]) -> Arc<Algebra> {
        Arc::new(Algebra::nakayama(&NakayamaSpec::cyclic(seq), Q).unwrap())
    }

    #[test]
    fn stable_homs() {
        let n = nak(&[5, 6, 6]);
        let x = nakayama_indecomposable(n.clone(), 1, 3).unwrap();
        assert_eq!(stable_hom(&x, &x).unwrap().dim(), 1);
        let p = Module::projective(n.clone(), 0).unwrap();
        assert_eq!(stable_hom(&p, &x).unwrap().dim(), 0);
    }

    #[test]
    fn stabilized_examples() {
        let n = nak(&[5, 6, 6]);
        let mut ctx = SgContext::new(n.clone(), DEFAULT_CAP);
        let x = SgObject::new("X", nakayama_indecomposable(n.clone(), 1, 3).unwrap());
        let r = ctx.stabilized_hom(&x, &x).unwrap();
        assert!(r.is_stabilized());
        assert_eq!(r.dim, 1);
        let p = SgObject::new("P", Module::projective(n.clone(), 0).unwrap());
        assert_eq!(ctx.stabilized_dim(&p, &x).unwrap(), Some(0));
        assert_eq!(ctx.sg_is_zero(&p.module).unwrap(), Ternary::Yes);
        assert_eq!(ctx.sg_is_zero(&x.module).unwrap(), Ternary::No);
        assert_eq!(ctx.stabilized_dim(&x.shifted(1), &x.shifted(1)).unwrap(), Some(1));
    }

    #[test]
    fn classification_566() {
        let n = nak(&[5, 6, 6]);
        let mut ctx = SgContext::new(n.clone(), DEFAULT_CAP);
        let objs: Vec<SgObject> = enumerate_indecomposables(n)
            .unwrap()
            .iter()
            .filter(|m| !is_projective(&m.module).unwrap())
            .map(SgObject::from)
            .collect();
        assert_eq!(objs.len(), 14);
        let c = ctx.classify(&objs).unwrap();
        assert!(c.is_certified(), "{:?}", c.unresolved);
        assert_eq!(c.classes.len(), 6);
    }

    #[test]
    fn perp_of_example() {
        let n = nak(&[5, 6, 6]);
        let mut ctx = SgContext::new(n.clone(), DEFAULT_CAP);
        let objs: Vec<SgObject> = enumerate_indecomposables(n.clone()).unwrap().iter().map(SgObject::from).collect();
        let reps = ctx.classify(&objs).unwrap().representatives();
        let x = nakayama_indecomposable(n.clone(), 1, 3).unwrap();
        let m = crate::modcat::direct_sum(&[Module::regular(n).unwrap(), x]).unwrap().module;
        let perp = ctx.perp(&m, &reps).unwrap();
        assert!(!perp.inconclusive);
        let members: Vec<SgObject> = perp.members.iter().map(|&i| reps[i].clone()).collect();
        assert_eq!(members.len(), 2);
        let report = ctx.semisimple_pattern_check(&members, 2, &[1, 0]).unwrap();
        assert!(report.pass, "{:?}", report.failures);
        let orbit = ctx.thick_orbit(&m, &reps).unwrap();
        assert!(!orbit.is_empty());
    }
}
