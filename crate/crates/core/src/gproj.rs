//! A-duals, reflexivity, Gorenstein-projective detection and thickness of `add M`.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::homol::{proj_dimension_from, projective_cover, ext_from, PdKind, Resolution, SyzygyCertificate};
use crate::linalg::{Matrix, Vector};
use crate::modcat::{
    cokernel, decompose, enumerate_indecomposables, hom_space, is_isomorphic, kernel, HomSpace, Module, ModuleMap,
    Named,
};
use crate::qalg::Algebra;

/// `X* = Hom_A(X, A)` as a left module over `A^op`; the basis at vertex `i` is `homs[i]`, a basis of `Hom(X, P_i)`.
#[derive(Clone, Debug)]
pub struct ADual {
    pub module: Module,
    pub homs: Vec<HomSpace>,
}

/// Right multiplication by arrow `a: i -> j`, as a map `P_j -> P_i`.
pub fn right_multiplication(alg: &Arc<Algebra>, a: usize) -> Result<ModuleMap> {
    let arrow = &alg.quiver().arrows()[a];
    let (i, j) = (arrow.source, arrow.target);
    let pj = Module::projective(alg.clone(), j)?;
    let pi = Module::projective(alg.clone(), i)?;
    let f = alg.field();
    let ab = alg.arrow_basis_index(a);
    let comps = (0..alg.num_vertices())
        .map(|t| {
            let rows = alg.basis_between(i, t);
            let cols = alg.basis_between(j, t);
            let mut m = Matrix::zeros(f, rows.len(), cols.len());
            for (c, &p) in cols.iter().enumerate() {
                for (k, s) in alg.product_of_basis(p, ab) {
                    let r = rows.iter().position(|x| x == k).expect("p·a starts at i");
                    m.set(r, c, s.clone());
                }
            }
            m
        })
        .collect();
    Ok(ModuleMap::from_parts(pj, pi, comps))
}

pub fn a_dual(x: &Module) -> Result<ADual> {
    let alg = x.algebra().clone();
    let op = alg.opposite();
    let f = x.field();
    let homs: Vec<HomSpace> = (0..alg.num_vertices())
        .map(|i| hom_space(x, &Module::projective(alg.clone(), i)?))
        .collect::<Result<_>>()?;
    let dims: Vec<usize> = homs.iter().map(HomSpace::dim).collect();
    let mut maps = Vec::new();
    for (a, arrow) in alg.quiver().arrows().iter().enumerate() {
        let (i, j) = (arrow.source, arrow.target);
        let rho = right_multiplication(&alg, a)?;
        let cols: Vec<Vector> = homs[j]
            .basis
            .iter()
            .map(|g| homs[i].coords(&g.then(&rho)).expect("ρ∘f is a homomorphism"))
            .collect();
        maps.push(Matrix::from_columns(f, dims[i], &cols));
    }
    let module = Module::from_parts(op, dims, maps)?;
    Ok(ADual { module, homs })
}

/// The evaluation map `X -> X**`, with `X**` re-homed over the algebra of `X`.
pub fn evaluation_map(x: &Module) -> Result<ModuleMap> {
    let alg = x.algebra().clone();
    let op = alg.opposite();
    let f = x.field();
    let xd = a_dual(x)?;
    let xdd = a_dual(&xd.module)?;
    let target = xdd.module.over(alg.clone())?;
    let n = alg.num_vertices();
    let mut comps = Vec::new();
    for v in 0..n {
        let pop = Module::projective(op.clone(), v)?;
        let mut cols = Vec::new();
        for k in 0..x.dims()[v] {
            let e = crate::linalg::unit_vec(f, x.dims()[v], k);
            let phi_comps: Vec<Matrix> = (0..n)
                .map(|i| {
                    let a_idx = alg.basis_between(i, v);
                    let op_idx = op.basis_between(v, i);
                    let columns: Vec<Vector> = xd.homs[i]
                        .basis
                        .iter()
                        .map(|g| {
                            let val = g.comp(v).mul_vec(&e);
                            let mut out = crate::linalg::zero_vec(f, op_idx.len());
                            for (pos, b) in a_idx.iter().enumerate() {
                                let r = op_idx.iter().position(|x| x == b).expect("op basis matches");
                                out[r] = val[pos].clone();
                            }
                            out
                        })
                        .collect();
                    Matrix::from_columns(f, op_idx.len(), &columns)
                })
                .collect();
            let phi = ModuleMap::from_parts(xd.module.clone(), pop.clone(), phi_comps);
            let c = xdd.homs[v]
                .coords(&phi)
                .ok_or_else(|| Error::InvalidModule("evaluation is not a homomorphism".into()))?;
            cols.push(c);
        }
        comps.push(Matrix::from_columns(f, target.dims()[v], &cols));
    }
    ModuleMap::new(x, &target, comps)
}

#[derive(Clone, Debug)]
pub struct Reflexivity {
    pub reflexive: bool,
    pub witness: ModuleMap,
}

pub fn is_reflexive(x: &Module) -> Result<Reflexivity> {
    let witness = evaluation_map(x)?;
    Ok(Reflexivity { reflexive: witness.is_isomorphism(), witness })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GpStatus {
    GorensteinProjective,
    NotGp,
    Inconclusive,
}

/// Outcome of the Ext-vanishing check on one side.
#[derive(Clone, Debug)]
pub struct ExtVanishing {
    pub certificate: SyzygyCertificate,
    /// Degrees `1..=checked_upto` were computed.
    pub checked_upto: usize,
    pub first_nonzero: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct GpVerdict {
    pub module: Module,
    pub status: GpStatus,
    pub reflexive: bool,
    pub left: Option<ExtVanishing>,
    pub right: Option<ExtVanishing>,
    pub reason: String,
}

/// Certified `Ext^i(X, A) = 0` for all `i >= 1`, using syzygy periodicity.
fn ext_vanishing(x: &Module, cap: usize) -> Result<(ExtVanishing, Option<bool>)> {
    let reg = Module::regular(x.algebra().clone())?;
    let mut res = Resolution::new(x);
    let certificate = proj_dimension_from(&mut res, cap)?;
    let (upto, decisive) = match &certificate.kind {
        PdKind::Finite { pd } => (*pd, true),
        PdKind::Periodic { onset, period, .. } => (onset + period, true),
        PdKind::Inconclusive { .. } => (cap.min(8), false),
    };
    for i in 1..=upto {
        if ext_from(&mut res, i, &reg)?.dim > 0 {
            return Ok((ExtVanishing { certificate, checked_upto: i, first_nonzero: Some(i) }, Some(false)));
        }
    }
    let out = ExtVanishing { certificate, checked_upto: upto, first_nonzero: None };
    Ok((out, decisive.then_some(true)))
}

pub fn is_gorenstein_projective(x: &Module, cap: usize) -> Result<GpVerdict> {
    let refl = is_reflexive(x)?;
    let mut v = GpVerdict {
        module: x.clone(),
        status: GpStatus::NotGp,
        reflexive: refl.reflexive,
        left: None,
        right: None,
        reason: String::new(),
    };
    if !refl.reflexive {
        v.reason = "evaluation map X -> X** is not invertible".into();
        return Ok(v);
    }
    let (left, lok) = ext_vanishing(x, cap)?;
    let lnz = left.first_nonzero;
    v.left = Some(left);
    if lok == Some(false) {
        v.reason = format!("Ext^{}(X, A) != 0", lnz.unwrap_or(0));
        return Ok(v);
    }
    let dual = a_dual(x)?.module;
    let (right, rok) = ext_vanishing(&dual, cap)?;
    let rnz = right.first_nonzero;
    v.right = Some(right);
    if rok == Some(false) {
        v.reason = format!("Ext^{}(X*, A) != 0 over the opposite algebra", rnz.unwrap_or(0));
        return Ok(v);
    }
    if lok == Some(true) && rok == Some(true) {
        v.status = GpStatus::GorensteinProjective;
        v.reason = "reflexive with certified Ext vanishing on both sides".into();
    } else {
        v.status = GpStatus::Inconclusive;
        v.reason = "syzygy periodicity not reached within the cap".into();
    }
    Ok(v)
}

pub fn is_projective(x: &Module) -> Result<bool> {
    Ok(projective_cover(x)?.epi.is_isomorphism())
}

#[derive(Clone, Debug, Default)]
pub struct GpClassification {
    pub projective: Vec<Named>,
    pub non_projective_gp: Vec<Named>,
    pub not_gp: Vec<Named>,
    pub inconclusive: Vec<Named>,
}

impl GpClassification {
    pub fn total(&self) -> usize {
        self.projective.len() + self.non_projective_gp.len() + self.not_gp.len() + self.inconclusive.len()
    }
}

/// Run the GP test over every indecomposable of a Nakayama algebra.
pub fn enumerate_gp_nakayama(alg: Arc<Algebra>, cap: usize) -> Result<GpClassification> {
    let mut out = GpClassification::default();
    for m in enumerate_indecomposables(alg)? {
        match is_gorenstein_projective(&m.module, cap)?.status {
            GpStatus::GorensteinProjective => {
                if is_projective(&m.module)? {
                    out.projective.push(m);
                } else {
                    out.non_projective_gp.push(m);
                }
            }
            GpStatus::NotGp => out.not_gp.push(m),
            GpStatus::Inconclusive => out.inconclusive.push(m),
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub enum ThickVerdict {
    Thick,
    Violation(String),
}

impl ThickVerdict {
    pub fn is_thick(&self) -> bool {
        matches!(self, ThickVerdict::Thick)
    }
}

fn member_of(list: &[Module], x: &Module) -> Result<bool> {
    for u in list {
        if is_isomorphic(u, x)?.is_yes() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Every indecomposable summand of `x` lies in `list` up to isomorphism.
fn in_add(list: &[Module], x: &Module) -> Result<bool> {
    for s in decompose(x)? {
        if !member_of(list, &s.module)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn candidate_maps(h: &HomSpace, rng: &mut ChaCha8Rng) -> Vec<ModuleMap> {
    let f = h.source.field();
    let mut out = h.basis.clone();
    if h.dim() > 1 {
        for _ in 0..4 {
            let coeffs: Vec<_> = (0..h.dim()).map(|_| f.int(rng.gen_range(-3..=3))).collect();
            out.push(h.combine(&coeffs));
        }
    }
    out
}

/// Check that `add M` contains the projectives and is closed under cokernels of
/// monomorphisms and kernels of epimorphisms between its indecomposables,
/// whenever the third term is GP according to `context`.
pub fn is_thick_add_m(m: &Module, context: &[Module]) -> Result<ThickVerdict> {
    let alg = m.algebra().clone();
    let mut summands: Vec<Module> = Vec::new();
    for s in decompose(m)? {
        if !member_of(&summands, &s.module)? {
            summands.push(s.module);
        }
    }
    for v in 0..alg.num_vertices() {
        if !member_of(&summands, &Module::projective(alg.clone(), v)?)? {
            return Ok(ThickVerdict::Violation(format!(
                "projective at vertex {} is not in add M",
                alg.quiver().vertices()[v]
            )));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x7417);
    for (i, u) in summands.iter().enumerate() {
        for (j, w) in summands.iter().enumerate() {
            let h = hom_space(u, w)?;
            for f in candidate_maps(&h, &mut rng) {
                if f.is_zero() {
                    continue;
                }
                if f.is_injective() && !f.is_surjective() {
                    let (c, _) = cokernel(&f);
                    if in_add(context, &c)? && !in_add(&summands, &c)? {
                        return Ok(ThickVerdict::Violation(format!(
                            "cokernel of a monomorphism from summand {i} to summand {j} (dims {:?}) is GP but not in add M",
                            c.dims()
                        )));
                    }
                }
                if f.is_surjective() && !f.is_injective() {
                    let (k, _) = kernel(&f);
                    if in_add(context, &k)? && !in_add(&summands, &k)? {
                        return Ok(ThickVerdict::Violation(format!(
                            "kernel of an epimorphism from summand {i} to summand {j} (dims {:?}) is GP but not in add M",
                            k.dims()
                        )));
                    }
                }
            }
        }
    }
    Ok(ThickVerdict::Thick)
}

/// Counts of the CM-finiteness report for a Nakayama algebra.
#[derive(Clone, Debug, Serialize)]
pub struct CmReport {
    pub indecomposables: usize,
    pub projective: usize,
    pub non_projective_gp: Vec<String>,
    pub not_gp: usize,
    pub inconclusive: Vec<String>,
}

impl From<&GpClassification> for CmReport {
    fn from(c: &GpClassification) -> Self {
        CmReport {
            indecomposables: c.total(),
            projective: c.projective.len(),
            non_projective_gp: c.non_projective_gp.iter().map(|n| n.name.clone()).collect(),
            not_gp: c.not_gp.len(),
            inconclusive: c.inconclusive.iter().map(|n| n.name.clone()).collect(),
        }
    }
}
