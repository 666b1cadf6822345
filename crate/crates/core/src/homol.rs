//! Projective covers, syzygies, minimal resolutions, Ext and homological dimensions.

use std::sync::Arc;

use crate::error::Result;
use crate::linalg::{Matrix, QuotientSpace, SubspaceCoords, Vector};
use crate::modcat::{
    direct_sum, hom_space, is_isomorphic, kernel, DirectSum, IsoVerdict, Module, ModuleMap,
};
use crate::qalg::Algebra;

pub const DEFAULT_CAP: usize = 64;

/// `P = ⊕ P_{v_k}` mapping onto `X`, sending the idempotent of the k-th summand to `generators[k]`.
#[derive(Clone, Debug)]
pub struct ProjectiveCover {
    pub vertices: Vec<usize>,
    pub generators: Vec<Vector>,
    pub sum: DirectSum,
    pub epi: ModuleMap,
}

impl ProjectiveCover {
    pub fn projective(&self) -> &Module {
        &self.sum.module
    }
}

/// `⊕ P_v` over the listed vertices (the zero module when empty).
pub fn projective_sum(alg: &Arc<Algebra>, vertices: &[usize]) -> Result<DirectSum> {
    if vertices.is_empty() {
        return Ok(DirectSum { module: Module::zero(alg.clone()), inclusions: vec![], projections: vec![] });
    }
    let parts: Vec<Module> = vertices.iter().map(|&v| Module::projective(alg.clone(), v)).collect::<Result<_>>()?;
    direct_sum(&parts)
}

/// The map `P_v -> X` with `e_v ↦ g`, for `g` in the space of `X` at `v`.
pub fn map_from_projective(v: usize, x: &Module, g: &[crate::linalg::Scalar]) -> Result<ModuleMap> {
    let alg = x.algebra();
    let p = Module::projective(alg.clone(), v)?;
    let f = x.field();
    let comps = (0..alg.num_vertices())
        .map(|j| {
            let cols: Vec<Vector> =
                alg.basis_between(v, j).iter().map(|&b| x.path_matrix(&alg.basis()[b]).mul_vec(g)).collect();
            Matrix::from_columns(f, x.dims()[j], &cols)
        })
        .collect();
    Ok(ModuleMap::from_parts(p, x.clone(), comps))
}

/// Minimal projective cover, with generators lifting a basis of the top.
pub fn projective_cover(x: &Module) -> Result<ProjectiveCover> {
    let alg = x.algebra().clone();
    let f = x.field();
    let rad = x.radical_power(1);
    let mut vertices = Vec::new();
    let mut generators = Vec::new();
    for (v, r) in rad.iter().enumerate() {
        let q = QuotientSpace::new(f, x.dims()[v], r);
        for g in q.section.columns() {
            vertices.push(v);
            generators.push(g);
        }
    }
    let sum = projective_sum(&alg, &vertices)?;
    let mut epi = ModuleMap::zero(&sum.module, x);
    for (k, (&v, g)) in vertices.iter().zip(&generators).enumerate() {
        let m = map_from_projective(v, x, g)?;
        epi = epi.add(&sum.projections[k].then(&m));
    }
    Ok(ProjectiveCover { vertices, generators, sum, epi })
}

/// `Ω X` with its inclusion into the projective cover.
pub fn syzygy(x: &Module) -> Result<(Module, ModuleMap, ProjectiveCover)> {
    let cover = projective_cover(x)?;
    let (k, inc) = kernel(&cover.epi);
    Ok((k, inc, cover))
}

/// A minimal projective resolution, extended on demand.
///
/// `syzygies[0] = X`, `covers[k]: P_k ↠ Ω^k X`, `inclusions[k]: Ω^{k+1} X ↪ P_k`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub syzygies: Vec<Module>,
    pub covers: Vec<ProjectiveCover>,
    pub inclusions: Vec<ModuleMap>,
}

impl Resolution {
    pub fn new(x: &Module) -> Self {
        Resolution { syzygies: vec![x.clone()], covers: vec![], inclusions: vec![] }
    }

    pub fn target(&self) -> &Module {
        &self.syzygies[0]
    }

    /// Make sure `Ω^n X` is available.
    pub fn extend_to(&mut self, n: usize) -> Result<()> {
        while self.syzygies.len() <= n {
            let last = self.syzygies.last().unwrap();
            let (k, inc, cover) = syzygy(last)?;
            self.covers.push(cover);
            self.inclusions.push(inc);
            self.syzygies.push(k);
        }
        Ok(())
    }

    pub fn syzygy(&mut self, n: usize) -> Result<&Module> {
        self.extend_to(n)?;
        Ok(&self.syzygies[n])
    }

    /// Projective term `P_n`.
    pub fn term(&mut self, n: usize) -> Result<&Module> {
        self.extend_to(n + 1)?;
        Ok(self.covers[n].projective())
    }

    /// `d_n: P_n -> P_{n-1}` for `n >= 1`.
    pub fn differential(&mut self, n: usize) -> Result<ModuleMap> {
        assert!(n >= 1, "differentials start in degree 1");
        self.extend_to(n + 1)?;
        Ok(self.covers[n].epi.then(&self.inclusions[n - 1]))
    }

    /// Every differential maps into the radical of its target.
    pub fn is_minimal(&mut self, upto: usize) -> Result<bool> {
        for n in 1..=upto {
            let d = self.differential(n)?;
            let rad = d.target().radical_power(1);
            let f = d.source().field();
            for (v, r) in rad.iter().enumerate() {
                let sub = SubspaceCoords::new(f, d.target().dims()[v], r);
                if !d.comp(v).columns().iter().all(|c| sub.contains(c)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// A basis of `Ext^i(X, Y)` as classes of maps `Ω^i X -> Y` (for `i >= 1`).
#[derive(Clone, Debug)]
pub struct ExtGroup {
    pub degree: usize,
    pub dim: usize,
    pub cocycles: Vec<ModuleMap>,
}

pub fn ext(i: usize, x: &Module, y: &Module) -> Result<ExtGroup> {
    let mut res = Resolution::new(x);
    ext_from(&mut res, i, y)
}

/// `Ext^i(X, Y)` reusing a resolution of `X`.
pub fn ext_from(res: &mut Resolution, i: usize, y: &Module) -> Result<ExtGroup> {
    if i == 0 {
        let h = hom_space(res.target(), y)?;
        return Ok(ExtGroup { degree: 0, dim: h.dim(), cocycles: h.basis });
    }
    res.extend_to(i)?;
    let omega = &res.syzygies[i];
    let h = hom_space(omega, y)?;
    if h.dim() == 0 {
        return Ok(ExtGroup { degree: i, dim: 0, cocycles: vec![] });
    }
    let inc = &res.inclusions[i - 1];
    let from_p = hom_space(inc.target(), y)?;
    let restricted: Vec<Vector> =
        from_p.basis.iter().map(|b| h.coords(&inc.then(b)).expect("restriction is a homomorphism")).collect();
    let f = y.field();
    let q = QuotientSpace::new(f, h.dim(), &restricted);
    let cocycles = q.section.columns().iter().map(|c| h.combine(c)).collect();
    Ok(ExtGroup { degree: i, dim: q.dim(), cocycles })
}

pub fn ext_dim(i: usize, x: &Module, y: &Module) -> Result<usize> {
    Ok(ext(i, x, y)?.dim)
}

#[derive(Clone, Debug)]
pub enum PdKind {
    Finite { pd: usize },
    /// `Ω^onset X ≅ Ω^{onset+period} X ≠ 0`, with the witness isomorphism.
    Periodic { onset: usize, period: usize, witness: ModuleMap },
    Inconclusive { cap: usize },
}

#[derive(Clone, Debug)]
pub struct SyzygyCertificate {
    pub module: Module,
    pub kind: PdKind,
}

impl SyzygyCertificate {
    pub fn is_finite(&self) -> bool {
        matches!(self.kind, PdKind::Finite { .. })
    }

    pub fn is_periodic(&self) -> bool {
        matches!(self.kind, PdKind::Periodic { .. })
    }

    pub fn finite_value(&self) -> Option<usize> {
        match self.kind {
            PdKind::Finite { pd } => Some(pd),
            _ => None,
        }
    }

    /// Recheck the certificate from scratch.
    pub fn verify(&self) -> Result<bool> {
        let mut res = Resolution::new(&self.module);
        match &self.kind {
            PdKind::Finite { pd } => {
                if self.module.is_zero() {
                    return Ok(true);
                }
                let before = res.syzygy(*pd)?.is_zero();
                let after = res.syzygy(pd + 1)?.is_zero();
                Ok(!before && after)
            }
            PdKind::Periodic { onset, period, witness } => {
                let a = res.syzygy(*onset)?.clone();
                let b = res.syzygy(onset + period)?.clone();
                Ok(!a.is_zero()
                    && witness.source() == &a
                    && witness.target() == &b
                    && witness.commutes()
                    && witness.is_isomorphism())
            }
            PdKind::Inconclusive { .. } => Ok(false),
        }
    }
}

impl std::fmt::Display for SyzygyCertificate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.kind {
            PdKind::Finite { pd } => write!(f, "{pd}"),
            PdKind::Periodic { onset, period, .. } => write!(f, "infinite (Ω^{onset} ≅ Ω^{}, period {period})", onset + period),
            PdKind::Inconclusive { cap } => write!(f, "inconclusive (cap {cap})"),
        }
    }
}

/// Projective dimension with a certificate, from a shared resolution.
pub fn proj_dimension_from(res: &mut Resolution, cap: usize) -> Result<SyzygyCertificate> {
    let cap = cap.max(1);
    let module = res.target().clone();
    if module.is_zero() {
        return Ok(SyzygyCertificate { module, kind: PdKind::Finite { pd: 0 } });
    }
    for m in 1..=cap {
        let om = res.syzygy(m)?.clone();
        if om.is_zero() {
            return Ok(SyzygyCertificate { module, kind: PdKind::Finite { pd: m - 1 } });
        }
        for k in 0..m {
            let ok = &res.syzygies[k];
            if ok.dims() != om.dims() {
                continue;
            }
            if let IsoVerdict::Isomorphic(w) = is_isomorphic(ok, &om)? {
                return Ok(SyzygyCertificate { module, kind: PdKind::Periodic { onset: k, period: m - k, witness: w } });
            }
        }
    }
    Ok(SyzygyCertificate { module, kind: PdKind::Inconclusive { cap } })
}

pub fn proj_dimension(x: &Module, cap: usize) -> Result<SyzygyCertificate> {
    proj_dimension_from(&mut Resolution::new(x), cap)
}

/// Injective dimension, computed as the projective dimension of the dual over the opposite algebra.
pub fn inj_dimension(x: &Module, cap: usize) -> Result<SyzygyCertificate> {
    proj_dimension(&x.dual(), cap)
}

#[derive(Clone, Debug)]
pub enum GlobalDimension {
    Finite(usize),
    Infinite { vertex: usize, certificate: SyzygyCertificate },
    Inconclusive { vertex: usize },
}

/// Supremum of the projective dimensions of the simples.
pub fn global_dimension(alg: &Arc<Algebra>, cap: usize) -> Result<GlobalDimension> {
    let mut best = 0;
    let mut pending = None;
    for v in 0..alg.num_vertices() {
        let c = proj_dimension(&Module::simple(alg.clone(), v)?, cap)?;
        match c.kind {
            PdKind::Finite { pd } => best = best.max(pd),
            PdKind::Periodic { .. } => return Ok(GlobalDimension::Infinite { vertex: v, certificate: c }),
            PdKind::Inconclusive { .. } => pending = pending.or(Some(v)),
        }
    }
    Ok(match pending {
        Some(vertex) => GlobalDimension::Inconclusive { vertex },
        None => GlobalDimension::Finite(best),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Field;
    use crate::modcat::{enumerate_indecomposables, hom_dim, nakayama_indecomposable};
    use crate::qalg::{NakayamaSpec, Quiver};

    const Q: Field = Field::Rationals;

    fn a2() -> Arc<Algebra> {
        let q = Quiver::new(&["1", "2"], &[("a", "1", "2")]).unwrap();
        Arc::new(Algebra::build(q, vec![], 3, Q).unwrap())
    }

    fn nak(seq: &[usize]) -> Arc<Algebra> {
        Arc::new(Algebra::nakayama(&NakayamaSpec::cyclic(seq), Q).unwrap())
    }

    #[test]
    fn covers() {
        let a = a2();
        let p1 = Module::projective(a.clone(), 0).unwrap();
        let c = projective_cover(&p1).unwrap();
        assert_eq!(c.vertices, vec![0]);
        assert!(c.epi.is_isomorphism());
        let s1 = Module::simple(a.clone(), 0).unwrap();
        let c = projective_cover(&s1).unwrap();
        assert_eq!(c.projective(), &p1);
        assert!(c.epi.is_surjective() && c.epi.commutes());
        let n = nak(&[5, 6, 6]);
        let x = nakayama_indecomposable(n.clone(), 1, 3).unwrap();
        assert_eq!(projective_cover(&x).unwrap().vertices, vec![1]);
    }

    #[test]
    fn syzygies() {
        let a = a2();
        let (k, _, _) = syzygy(&Module::simple(a.clone(), 0).unwrap()).unwrap();
        assert!(is_isomorphic(&k, &Module::simple(a.clone(), 1).unwrap()).unwrap().is_yes());
        assert!(syzygy(&Module::projective(a, 0).unwrap()).unwrap().0.is_zero());
        let n = nak(&[5, 6, 6]);
        let x = nakayama_indecomposable(n.clone(), 1, 3).unwrap();
        let (k, _, _) = syzygy(&x).unwrap();
        assert!(is_isomorphic(&k, &x).unwrap().is_yes());
    }

    #[test]
    fn ext_examples() {
        let a = a2();
        let s1 = Module::simple(a.clone(), 0).unwrap();
        let s2 = Module::simple(a.clone(), 1).unwrap();
        assert_eq!(ext_dim(1, &s1, &s2).unwrap(), 1);
        assert_eq!(ext_dim(1, &s1, &s1).unwrap(), 0);
        assert_eq!(ext_dim(0, &s1, &s1).unwrap(), 1);
        let p = Module::projective(a, 0).unwrap();
        assert_eq!(ext_dim(1, &p, &s2).unwrap(), 0);
    }

    #[test]
    fn dimension_certificates() {
        let a = a2();
        let c = proj_dimension(&Module::simple(a.clone(), 0).unwrap(), DEFAULT_CAP).unwrap();
        assert_eq!(c.finite_value(), Some(1));
        assert!(c.verify().unwrap());
        assert_eq!(proj_dimension(&Module::projective(a.clone(), 1).unwrap(), 4).unwrap().finite_value(), Some(0));
        assert!(matches!(global_dimension(&a, DEFAULT_CAP).unwrap(), GlobalDimension::Finite(1)));
        let n = nak(&[5, 6, 6]);
        let x = nakayama_indecomposable(n.clone(), 1, 3).unwrap();
        let c = proj_dimension(&x, DEFAULT_CAP).unwrap();
        assert!(c.is_periodic());
        assert!(c.verify().unwrap());
        assert!(matches!(global_dimension(&n, DEFAULT_CAP).unwrap(), GlobalDimension::Infinite { .. }));
        let n44 = nak(&[4, 4]);
        let reg = Module::regular(n44).unwrap();
        assert_eq!(inj_dimension(&reg, DEFAULT_CAP).unwrap().finite_value(), Some(0));
    }

    #[test]
    fn resolution_is_minimal_and_exact() {
        let n = nak(&[5, 6, 6]);
        for x in enumerate_indecomposables(n).unwrap() {
            let mut r = Resolution::new(&x.module);
            assert!(r.is_minimal(3).unwrap());
            for k in 1..=3 {
                let d1 = r.differential(k).unwrap();
                let d2 = r.differential(k + 1).unwrap();
                assert!(d2.then(&d1).is_zero());
            }
            // dimension shift: Ext^2(X,Y) = Ext^1(ΩX,Y)
            let s = Module::simple(x.module.algebra().clone(), 0).unwrap();
            let om = r.syzygy(1).unwrap().clone();
            assert_eq!(ext_from(&mut r, 2, &s).unwrap().dim, ext_dim(1, &om, &s).unwrap());
            assert_eq!(ext_from(&mut r, 0, &s).unwrap().dim, hom_dim(&x.module, &s).unwrap());
        }
    }
}
