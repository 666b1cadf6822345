//! Modules over `A = kQ[ε]` for an acyclic quiver `Q`: the cohomology functor,
//! the construction `η`, the Hom/Ext formula for `η`, exceptional modules and
//! Schofield perpendicular categories.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::homol::{ext_dim, syzygy};
use crate::linalg::{Matrix, Vector};
use crate::modcat::{hom_dim, hom_space, image, is_indecomposable, kernel, Module, ModuleMap, Named};
use crate::qalg::Algebra;
use crate::sgcat::stable_hom;

/// `kQ` together with `kQ[ε]`. Arrow `i` of `Q` keeps index `i`; the loop at `v` is arrow `|Q_1| + v`.
#[derive(Clone, Debug)]
pub struct DualPair {
    pub base: Arc<Algebra>,
    pub dual: Arc<Algebra>,
}

impl DualPair {
    pub fn new(base: Arc<Algebra>) -> Result<Self> {
        let dual = Arc::new(Algebra::dual_numbers(&base)?);
        Ok(DualPair { base, dual })
    }

    fn eps_index(&self, v: usize) -> usize {
        self.base.quiver().arrows().len() + v
    }

    /// Build an `A`-module from a `kQ`-module and a square-zero endomorphism `ε`.
    pub fn lift(&self, x: &Module, eps: &ModuleMap) -> Result<Module> {
        let mut maps: Vec<Matrix> = x.arrow_maps().to_vec();
        maps.extend(eps.comps().iter().cloned());
        Module::new(self.dual.clone(), x.dims().to_vec(), maps)
    }

    /// The underlying `kQ`-module of an `A`-module and the action of `ε` on it.
    pub fn restrict(&self, y: &Module) -> Result<(Module, ModuleMap)> {
        let na = self.base.quiver().arrows().len();
        let x = Module::new(self.base.clone(), y.dims().to_vec(), y.arrow_maps()[..na].to_vec())?;
        let comps = (0..self.base.num_vertices()).map(|v| y.arrow_map(self.eps_index(v)).clone()).collect();
        let eps = ModuleMap::new(&x, &x, comps)?;
        if !eps.then(&eps).is_zero() {
            return Err(Error::InvalidModule("ε does not square to zero".into()));
        }
        Ok((x, eps))
    }
}

/// `H(Y) = Ker ε / Im ε`.
pub fn cohomology_h(pair: &DualPair, y: &Module) -> Result<Module> {
    let (x, eps) = pair.restrict(y)?;
    let (k, kinc) = kernel(&eps);
    let (_, iinc) = image(&eps);
    let bases: Vec<Vec<Vector>> = (0..x.dims().len())
        .map(|v| {
            let sol = kinc.comp(v).solve_many(iinc.comp(v)).ok().flatten().expect("Im ε ⊆ Ker ε");
            sol.columns()
        })
        .collect();
    Ok(k.quotient(&bases).0)
}

/// `η(X) = P^{-1} ⊕ P^0` with `ε` acting by the differential of the minimal resolution.
pub fn eta(pair: &DualPair, x: &Module) -> Result<Module> {
    let (p1, d, cover) = syzygy(x)?;
    let p0 = cover.projective().clone();
    let base = &pair.base;
    let f = x.field();
    let n = base.num_vertices();
    let dims: Vec<usize> = (0..n).map(|v| p1.dims()[v] + p0.dims()[v]).collect();
    let mut maps = Vec::new();
    for a in 0..base.quiver().arrows().len() {
        maps.push(Matrix::block_diag(f, &[p1.arrow_map(a).clone(), p0.arrow_map(a).clone()]));
    }
    for v in 0..n {
        let (r1, r0) = (p1.dims()[v], p0.dims()[v]);
        let grid = vec![
            vec![Matrix::zeros(f, r1, r1), Matrix::zeros(f, r1, r0)],
            vec![d.comp(v).clone(), Matrix::zeros(f, r0, r0)],
        ];
        maps.push(Matrix::block(f, &grid));
    }
    Module::new(pair.dual.clone(), dims, maps)
}

#[derive(Clone, Debug, Serialize)]
pub struct Equ1Check {
    pub stable_hom: usize,
    pub hom: usize,
    pub ext1: usize,
    pub holds: bool,
}

/// `dim Hom_st(η X, η X') = dim Hom(X, X') + dim Ext^1(X, X')`.
pub fn verify_equ1(pair: &DualPair, x: &Module, x2: &Module) -> Result<Equ1Check> {
    let lhs = stable_hom(&eta(pair, x)?, &eta(pair, x2)?)?.dim();
    let hom = hom_dim(x, x2)?;
    let ext1 = ext_dim(1, x, x2)?;
    Ok(Equ1Check { stable_hom: lhs, hom, ext1, holds: lhs == hom + ext1 })
}

pub fn is_exceptional(e: &Module) -> Result<bool> {
    Ok(is_indecomposable(e)? && ext_dim(1, e, e)? == 0)
}

#[derive(Clone, Debug, Serialize)]
pub struct SchofieldReport {
    pub members: Vec<String>,
    pub simple_objects: Vec<String>,
    pub expected_simples: usize,
    pub pass: bool,
}

/// Filter `corpus` by `Hom(E, X) = 0 = Ext^1(E, X)` and count the simple objects of the result.
pub fn schofield_perp(e: &Module, corpus: &[Named]) -> Result<SchofieldReport> {
    let n = e.algebra().num_vertices();
    let mut members: Vec<&Named> = Vec::new();
    for x in corpus {
        if hom_dim(e, &x.module)? == 0 && ext_dim(1, e, &x.module)? == 0 {
            members.push(x);
        }
    }
    let mut simples = Vec::new();
    for x in &members {
        if hom_dim(&x.module, &x.module)? != 1 {
            continue;
        }
        let mut has_sub = false;
        for u in &members {
            if u.module == x.module {
                continue;
            }
            for f in hom_space(&u.module, &x.module)?.basis {
                if f.is_injective() && !f.is_surjective() {
                    has_sub = true;
                }
            }
        }
        if !has_sub {
            simples.push(x.name.clone());
        }
    }
    let expected = n.saturating_sub(1);
    Ok(SchofieldReport {
        members: members.iter().map(|m| m.name.clone()).collect(),
        pass: simples.len() == expected,
        simple_objects: simples,
        expected_simples: expected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gproj::{is_gorenstein_projective, GpStatus};
    use crate::homol::DEFAULT_CAP;
    use crate::linalg::Field;
    use crate::modcat::{direct_sum, interval_modules, is_isomorphic};
    use crate::qalg::Quiver;

    fn a2() -> DualPair {
        let q = Quiver::new(&["1", "2"], &[("alpha", "1", "2")]).unwrap();
        DualPair::new(Arc::new(Algebra::path_algebra(q, Field::Rationals).unwrap())).unwrap()
    }

    #[test]
    fn eta_and_cohomology() {
        let p = a2();
        let s1 = Module::simple(p.base.clone(), 0).unwrap();
        let e = eta(&p, &s1).unwrap();
        assert_eq!(e.dims(), &[1, 2]);
        assert!(is_isomorphic(&cohomology_h(&p, &e).unwrap(), &s1).unwrap().is_yes());
        for x in interval_modules(p.base.clone()).unwrap() {
            let h = cohomology_h(&p, &eta(&p, &x.module).unwrap()).unwrap();
            assert!(is_isomorphic(&h, &x.module).unwrap().is_yes(), "{}", x.name);
        }
        let free = Module::projective(p.dual.clone(), 0).unwrap();
        assert!(cohomology_h(&p, &free).unwrap().is_zero());
        let e = eta(&p, &s1).unwrap();
        assert!(is_indecomposable(&e).unwrap());
        assert_eq!(is_gorenstein_projective(&e, DEFAULT_CAP).unwrap().status, GpStatus::GorensteinProjective);
        let sum = direct_sum(&[s1.clone(), Module::simple(p.base.clone(), 1).unwrap()]).unwrap().module;
        let lhs = eta(&p, &sum).unwrap();
        let rhs = direct_sum(&[eta(&p, &s1).unwrap(), eta(&p, &Module::simple(p.base.clone(), 1).unwrap()).unwrap()]).unwrap().module;
        assert!(is_isomorphic(&lhs, &rhs).unwrap().is_yes());
    }

    #[test]
    fn formula_on_all_pairs() {
        let p = a2();
        let corpus = interval_modules(p.base.clone()).unwrap();
        assert_eq!(corpus.len(), 3);
        for x in &corpus {
            for y in &corpus {
                let c = verify_equ1(&p, &x.module, &y.module).unwrap();
                assert!(c.holds, "{} {} {:?}", x.name, y.name, c);
            }
        }
    }

    #[test]
    fn exceptional_and_perp() {
        let p = a2();
        let s1 = Module::simple(p.base.clone(), 0).unwrap();
        assert!(is_exceptional(&s1).unwrap());
        let ss = direct_sum(&[s1.clone(), s1.clone()]).unwrap().module;
        assert!(!is_exceptional(&ss).unwrap());
        let corpus = interval_modules(p.base.clone()).unwrap();
        let r = schofield_perp(&s1, &corpus).unwrap();
        assert_eq!(r.members.len(), 1);
        assert!(r.pass);
        let p1 = Module::projective(p.base.clone(), 0).unwrap();
        let member = corpus.iter().find(|c| c.name == r.members[0]).unwrap();
        assert!(is_isomorphic(&member.module, &p1).unwrap().is_yes());
        let r = schofield_perp(&p1, &corpus).unwrap();
        assert_eq!(r.members.len(), 1);
        assert!(r.pass);
    }

    #[test]
    fn final_example() {
        use crate::endo::{named, verify_presentation, EndoAlgebra, PresentationClaim, is_partial_resolution, PartialResolutionStatus, kernel_category_simples};
        use crate::sgcat::{SgContext, SgObject, Ternary};
        let p = a2();
        let s1 = Module::simple(p.base.clone(), 0).unwrap();
        let e = eta(&p, &s1).unwrap();
        let p1 = Module::projective(p.dual.clone(), 0).unwrap();
        let p2 = Module::projective(p.dual.clone(), 1).unwrap();
        let g = EndoAlgebra::from_summands(named(&[("1", p1), ("2", p2), ("3", e.clone())])).unwrap();
        assert_eq!(g.quiver.arrows().len(), 4);
        let q = Quiver::new(&["1", "2", "3"], &[("alpha", "1", "2"), ("delta", "2", "1"), ("beta", "2", "3"), ("gamma", "3", "2")]).unwrap();
        let claim = PresentationClaim::parse(q, Field::Rationals, &["beta*alpha", "alpha*delta - gamma*beta"], 8).unwrap();
        let v = verify_presentation(&g, &claim).unwrap();
        assert!(v.is_verified(), "{}", v.label());
        assert_eq!(kernel_category_simples(&g).unwrap(), vec![2]);
        assert_eq!(is_partial_resolution(&g, DEFAULT_CAP).unwrap().status, PartialResolutionStatus::Yes);
        let mut ctx = SgContext::new(p.dual.clone(), DEFAULT_CAP);
        let cands: Vec<SgObject> = interval_modules(p.base.clone()).unwrap().iter().map(|x| SgObject::new(x.name.clone(), eta(&p, &x.module).unwrap())).collect();
        let cl = ctx.classify(&cands).unwrap();
        assert!(cl.is_certified());
        let reps = cl.representatives();
        let m = direct_sum(&[Module::regular(p.dual.clone()).unwrap(), e.clone()]).unwrap().module;
        let perp = ctx.perp(&m, &reps).unwrap();
        let members: Vec<SgObject> = perp.members.iter().map(|&i| reps[i].clone()).collect();
        assert_eq!(members.len(), 1);
        assert!(ctx.semisimple_pattern_check(&members, 1, &[0]).unwrap().pass);
        let x = SgObject::new("eta", e);
        assert_eq!(ctx.sg_is_isomorphic(&x.shifted(1), &x).unwrap(), Ternary::Yes);
    }
}
