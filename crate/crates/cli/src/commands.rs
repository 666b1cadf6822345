use std::path::Path;

use quiverkit::dualnum::{eta, schofield_perp, verify_equ1, DualPair};
use quiverkit::endo::{
    is_partial_resolution, kernel_category_simples, right_module_structure, verify_presentation, EndoAlgebra,
    PresentationClaim, PresentationVerdict,
};
use quiverkit::format::{module_to_text, parse_algebra_file, AlgebraFile};
use quiverkit::gproj::{enumerate_gp_nakayama, is_gorenstein_projective, CmReport, GpStatus};
use quiverkit::homol::{ext_dim, global_dimension, proj_dimension, GlobalDimension};
use quiverkit::endo::StructAlgebra;
use quiverkit::modcat::{
    decompose, direct_sum, enumerate_indecomposables, hom_dim, interval_modules, nakayama_indecomposable, Module,
    Named,
};
use quiverkit::qalg::NilpotencyVerdict;
use quiverkit::scenario::{run_scenario, Status};
use quiverkit::sgcat::{stable_hom, SgContext, SgObject, StabStatus};
use quiverkit::{Error, Field, Result};
use serde_json::{json, Value};

pub struct Outcome {
    pub status: Status,
    pub text: String,
    pub json: Value,
}

impl Outcome {
    fn pass(text: String, json: Value) -> Self {
        Outcome { status: Status::Pass, text, json }
    }

    fn with(status: Status, text: String, json: Value) -> Self {
        Outcome { status, text, json }
    }
}

pub struct Ctx {
    pub field: Option<Field>,
    pub cap: usize,
}

impl Ctx {
    pub fn load(&self, path: &Path) -> Result<AlgebraFile> {
        parse_algebra_file(path, self.field)
    }
}

pub fn parse_field(s: &str) -> Result<Field> {
    let t = s.trim();
    if t.eq_ignore_ascii_case("q") {
        return Ok(Field::Rationals);
    }
    let digits = t.trim_start_matches(['F', 'f']).trim();
    let p: u64 = digits.parse().map_err(|_| Error::Parse(format!("bad field `{s}`; use Q or F<p>")))?;
    Field::prime(p)
}

/// `X`, `A`, `P<v>`, `S<v>`, `I<v>`, `S<v>^[l]`, or `+`-joined sums of these.
pub fn resolve(file: &AlgebraFile, spec: &str) -> Result<Module> {
    let alg = &file.algebra;
    let q = alg.quiver();
    let mut parts = Vec::new();
    for part in spec.split('+').map(str::trim) {
        if let Ok(m) = file.module(part) {
            parts.push(m.clone());
            continue;
        }
        if part == "A" {
            parts.push(Module::regular(alg.clone())?);
            continue;
        }
        if let Some(rest) = part.strip_prefix('S') {
            if let Some((v, l)) = rest.split_once("^[") {
                let l: usize = l
                    .strip_suffix(']')
                    .and_then(|x| x.parse().ok())
                    .ok_or_else(|| Error::Parse(format!("bad uniserial name `{part}`")))?;
                parts.push(nakayama_indecomposable(alg.clone(), q.vertex(v)?, l)?);
                continue;
            }
        }
        let mut chars = part.chars();
        let kind = chars.next();
        let v = q.vertex(chars.as_str()).map_err(|_| Error::Parse(format!("unknown module `{part}`")))?;
        parts.push(match kind {
            Some('P') => Module::projective(alg.clone(), v)?,
            Some('S') => Module::simple(alg.clone(), v)?,
            Some('I') => Module::injective(alg.clone(), v)?,
            _ => return Err(Error::Parse(format!("unknown module `{part}`"))),
        });
    }
    if parts.len() == 1 {
        return Ok(parts.pop().unwrap());
    }
    Ok(direct_sum(&parts)?.module)
}

/// Nakayama indecomposables when available, otherwise the modules declared in the file.
fn corpus(file: &AlgebraFile) -> Vec<Named> {
    enumerate_indecomposables(file.algebra.clone()).unwrap_or_else(|_| file.modules.clone())
}

fn hereditary_corpus(file: &AlgebraFile) -> Vec<Named> {
    interval_modules(file.algebra.clone()).unwrap_or_else(|_| file.modules.clone())
}

pub fn alg_info(ctx: &Ctx, path: &Path) -> Result<Outcome> {
    let f = ctx.load(path)?;
    let a = &f.algebra;
    let q = a.quiver();
    let nil = a.certify_nilpotency_independence()?;
    let gd = global_dimension(a, ctx.cap)?;
    let gd_text = match &gd {
        GlobalDimension::Finite(d) => d.to_string(),
        GlobalDimension::Infinite { vertex, .. } => format!("infinite (simple at {})", q.vertices()[*vertex]),
        GlobalDimension::Inconclusive { vertex } => format!("inconclusive (simple at {})", q.vertices()[*vertex]),
    };
    let proj: Vec<usize> = (0..a.num_vertices()).map(|v| a.basis_from(v).len()).collect();
    let rels: Vec<String> = a.relations().iter().map(|r| r.display(q)).collect();
    let text = format!(
        "field {}\nvertices {}\narrows {}\nrelations {}\nnilpotency {} ({})\ndim {}\nprojective dims {:?}\nglobal dimension {}\n",
        a.field(),
        q.num_vertices(),
        q.arrows().len(),
        rels.len(),
        a.nilpotency(),
        if nil == NilpotencyVerdict::Stable { "stable" } else { "unstable" },
        a.dim(),
        proj,
        gd_text
    );
    let status = if matches!(gd, GlobalDimension::Inconclusive { .. }) { Status::Inconclusive } else { Status::Pass };
    Ok(Outcome::with(
        status,
        text,
        json!({
            "field": a.field().to_string(),
            "vertices": q.vertices(),
            "arrows": q.arrows().iter().map(|x| json!([x.label, q.vertices()[x.source], q.vertices()[x.target]])).collect::<Vec<_>>(),
            "relations": rels,
            "nilpotency": a.nilpotency(),
            "nilpotency_stable": nil == NilpotencyVerdict::Stable,
            "dim": a.dim(),
            "projective_dims": proj,
            "global_dimension": gd_text,
        }),
    ))
}

pub fn alg_basis(ctx: &Ctx, path: &Path) -> Result<Outcome> {
    let f = ctx.load(path)?;
    let q = f.algebra.quiver();
    let words: Vec<String> = f.algebra.basis().iter().map(|p| p.display(q)).collect();
    let text = words.iter().enumerate().map(|(i, w)| format!("{i:>4}  {w}\n")).collect();
    Ok(Outcome::pass(text, json!({ "basis": words })))
}

pub fn alg_check(ctx: &Ctx, path: &Path) -> Result<Outcome> {
    let f = ctx.load(path)?;
    let s = StructAlgebra::from_algebra(&f.algebra);
    let assoc = s.is_associative();
    let unital = s.is_unital();
    let nil = f.algebra.certify_nilpotency_independence()? == NilpotencyVerdict::Stable;
    let ok = assoc && unital && nil;
    let text = format!("associative {assoc}\nunital {unital}\nnilpotency bound stable {nil}\n");
    let status = if ok { Status::Pass } else { Status::Fail };
    Ok(Outcome::with(status, text, json!({ "associative": assoc, "unital": unital, "nilpotency_stable": nil })))
}

pub fn mod_hom(ctx: &Ctx, path: &Path, x: &str, y: &str) -> Result<Outcome> {
    let f = ctx.load(path)?;
    let d = hom_dim(&resolve(&f, x)?, &resolve(&f, y)?)?;
    Ok(Outcome::pass(format!("{d}\n"), json!({ "hom_dim": d })))
}

pub fn mod_ext(ctx: &Ctx, path: &Path, i: usize, x: &str, y: &str) -> Result<Outcome> {
    let f = ctx.load(path)?;
    let d = ext_dim(i, &resolve(&f, x)?, &resolve(&f, y)?)?;
    Ok(Outcome::pass(format!("{d}\n"), json!({ "degree": i, "ext_dim": d })))
}

pub fn mod_pd(ctx: &Ctx, path: &Path, x: &str) -> Result<Outcome> {
    let f = ctx.load(path)?;
    let c = proj_dimension(&resolve(&f, x)?, ctx.cap)?;
    let status = if c.is_finite() || c.is_periodic() { Status::Pass } else { Status::Inconclusive };
    Ok(Outcome::with(status, format!("{c}\n"), json!({ "pd": c.finite_value(), "certificate": c.to_string() })))
}

pub fn mod_decompose(ctx: &Ctx, path: &Path, x: &str) -> Result<Outcome> {
    let f = ctx.load(path)?;
    let parts = decompose(&resolve(&f, x)?)?;
    let mut dims: Vec<Vec<usize>> = parts.iter().map(|s| s.module.dims().to_vec()).collect();
    dims.sort();
    let text = dims.iter().map(|d| format!("{d:?}\n")).collect();
    Ok(Outcome::pass(text, json!({ "summands": dims })))
}

fn gp_word(s: GpStatus) -> &'static str {
    match s {
        GpStatus::GorensteinProjective => "gorenstein projective",
        GpStatus::NotGp => "not gorenstein projective",
        GpStatus::Inconclusive => "inconclusive",
    }
}

pub fn gp_test(ctx: &Ctx, path: &Path, x: &str) -> Result<Outcome> {
    let f = ctx.load(path)?;
    let v = is_gorenstein_projective(&resolve(&f, x)?, ctx.cap)?;
    let status = if v.status == GpStatus::Inconclusive { Status::Inconclusive } else { Status::Pass };
    Ok(Outcome::with(
        status,
        format!("{} ({})\n", gp_word(v.status), v.reason),
        json!({ "status": v.status, "reflexive": v.reflexive, "reason": v.reason }),
    ))
}

pub fn gp_list(ctx: &Ctx, path: &Path) -> Result<Outcome> {
    let f = ctx.load(path)?;
    let c = enumerate_gp_nakayama(f.algebra.clone(), ctx.cap)?;
    let r = CmReport::from(&c);
    let text = format!(
        "indecomposables {}\nprojective {}\nnon-projective GP {:?}\nnot GP {}\ninconclusive {:?}\n",
        r.indecomposables, r.projective, r.non_projective_gp, r.not_gp, r.inconclusive
    );
    let status = if r.inconclusive.is_empty() { Status::Pass } else { Status::Inconclusive };
    Ok(Outcome::with(status, text, serde_json::to_value(&r).expect("serializable")))
}

fn quiver_json(e: &EndoAlgebra) -> Value {
    let q = &e.quiver;
    json!({
        "vertices": e.summands.iter().map(|s| json!({ "name": s.name, "dims": s.module.dims() })).collect::<Vec<_>>(),
        "arrows": q.arrows().iter().map(|a| json!([a.label, q.vertices()[a.source], q.vertices()[a.target]])).collect::<Vec<_>>(),
    })
}

fn quiver_text(e: &EndoAlgebra) -> String {
    let q = &e.quiver;
    let mut s = String::new();
    for n in &e.summands {
        s += &format!("vertex {} dims {:?}\n", n.name, n.module.dims());
    }
    for a in q.arrows() {
        s += &format!("arrow {} {} {}\n", a.label, q.vertices()[a.source], q.vertices()[a.target]);
    }
    s
}

pub fn endo_quiver(ctx: &Ctx, path: &Path, m: &str) -> Result<Outcome> {
    let f = ctx.load(path)?;
    let e = EndoAlgebra::new(&resolve(&f, m)?)?;
    Ok(Outcome::pass(quiver_text(&e), quiver_json(&e)))
}

pub fn endo_present(ctx: &Ctx, path: &Path, m: &str) -> Result<Outcome> {
    let f = ctx.load(path)?;
    let e = EndoAlgebra::new(&resolve(&f, m)?)?;
    let p = &e.presentation;
    let rels: Vec<String> = p.relations().iter().map(|r| r.display(p.quiver())).collect();
    let mut text = quiver_text(&e);
    text += &format!("dim {}\nloewy length {}\n", e.dim(), e.loewy_length);
    for r in &rels {
        text += &format!("relation {r}\n");
    }
    let ks: Vec<String> = kernel_category_simples(&e)?.into_iter().map(|t| e.summands[t].name.clone()).collect();
    let pr = is_partial_resolution(&e, ctx.cap)?;
    let mr = proj_dimension(&right_module_structure(&e)?, ctx.cap)?;
    text += &format!("simples killed by M ⊗ - {ks:?}\npd of M over Γ {mr}\npartial resolution {:?}\n", pr.status);
    let mut j = quiver_json(&e);
    j["dim"] = json!(e.dim());
    j["loewy_length"] = json!(e.loewy_length);
    j["relations"] = json!(rels);
    j["kernel_simples"] = json!(ks);
    j["partial_resolution"] = json!(pr.status);
    j["right_module_pd"] = json!(mr.finite_value());
    Ok(Outcome::pass(text, j))
}

pub fn endo_verify(ctx: &Ctx, path: &Path, m: &str, claim_path: &Path) -> Result<Outcome> {
    let f = ctx.load(path)?;
    let e = EndoAlgebra::new(&resolve(&f, m)?)?;
    let c = ctx.load(claim_path)?;
    let claim = PresentationClaim {
        quiver: c.algebra.quiver().clone(),
        relations: c.algebra.relations().to_vec(),
        nilpotency: c.algebra.nilpotency(),
    };
    let v = verify_presentation(&e, &claim)?;
    let status = match &v {
        PresentationVerdict::Verified(_) => Status::Pass,
        PresentationVerdict::Inconclusive(_) => Status::Inconclusive,
        _ => Status::Fail,
    };
    let mut text = format!("{}\n", v.label());
    if let PresentationVerdict::RefutedDimension { claimed, actual } = &v {
        text += &format!("claimed dim {claimed}, actual dim {actual}\n");
    }
    Ok(Outcome::with(status, text, json!({ "verdict": v.label(), "gamma_dim": e.dim() })))
}

pub fn sg_stablehom(ctx: &Ctx, path: &Path, x: &str, y: &str) -> Result<Outcome> {
    let f = ctx.load(path)?;
    let d = stable_hom(&resolve(&f, x)?, &resolve(&f, y)?)?.dim();
    Ok(Outcome::pass(format!("{d}\n"), json!({ "stable_hom_dim": d })))
}

pub fn sg_stabhom(ctx: &Ctx, path: &Path, x: &str, y: &str, shift: i64) -> Result<Outcome> {
    let f = ctx.load(path)?;
    let mut sg = SgContext::new(f.algebra.clone(), ctx.cap);
    let xo = SgObject::new(x, resolve(&f, x)?);
    let yo = SgObject::new(y, resolve(&f, y)?).shifted(shift);
    let r = sg.stabilized_hom(&xo, &yo)?;
    let status = if r.status == StabStatus::Stabilized { Status::Pass } else { Status::Inconclusive };
    let text = match r.status {
        StabStatus::Stabilized => format!("{} (realized at level {})\n", r.dim, r.level),
        StabStatus::Inconclusive => format!("inconclusive within cap {}\n", ctx.cap),
    };
    Ok(Outcome::with(status, text, json!({ "status": r.status, "dim": r.dim, "level": r.level, "shift": shift })))
}

pub fn sg_classify(ctx: &Ctx, path: &Path) -> Result<Outcome> {
    let f = ctx.load(path)?;
    let mut sg = SgContext::new(f.algebra.clone(), ctx.cap);
    let objs: Vec<SgObject> = corpus(&f).iter().map(SgObject::from).collect();
    let c = sg.classify(&objs)?;
    let zero: Vec<String> = c.zero.iter().map(|o| o.label.clone()).collect();
    let classes: Vec<Vec<String>> = c.classes.iter().map(|cl| cl.iter().map(|o| o.label.clone()).collect()).collect();
    let mut text = format!("zero {zero:?}\nclasses {}\n", classes.len());
    for cl in &classes {
        text += &format!("  {cl:?}\n");
    }
    for u in &c.unresolved {
        text += &format!("unresolved {u}\n");
    }
    let status = if c.is_certified() { Status::Pass } else { Status::Inconclusive };
    Ok(Outcome::with(status, text, json!({ "zero": zero, "classes": classes, "unresolved": c.unresolved })))
}

pub fn sg_perp(ctx: &Ctx, path: &Path, m: &str) -> Result<Outcome> {
    let f = ctx.load(path)?;
    let mut sg = SgContext::new(f.algebra.clone(), ctx.cap);
    let objs: Vec<SgObject> = corpus(&f).iter().map(SgObject::from).collect();
    let reps = sg.classify(&objs)?.representatives();
    let p = sg.perp(&resolve(&f, m)?, &reps)?;
    let members: Vec<SgObject> = p.members.iter().map(|&i| reps[i].clone()).collect();
    let labels: Vec<String> = members.iter().map(|o| o.label.clone()).collect();
    let sigma = sg.sigma_permutation(&members)?;
    let text = format!("members {labels:?}\nsigma {sigma:?}\n");
    let status = if p.inconclusive { Status::Inconclusive } else { Status::Pass };
    Ok(Outcome::with(status, text, json!({ "members": labels, "sigma": sigma, "inconclusive": p.inconclusive })))
}

fn dual_pair(f: &AlgebraFile) -> Result<DualPair> {
    DualPair::new(f.algebra.clone())
}

pub fn dual_eta(ctx: &Ctx, path: &Path, x: &str) -> Result<Outcome> {
    let f = ctx.load(path)?;
    let pair = dual_pair(&f)?;
    let e = eta(&pair, &resolve(&f, x)?)?;
    let text = module_to_text(&format!("eta_{x}"), &e);
    Ok(Outcome::pass(text.clone(), json!({ "dims": e.dims(), "module": text })))
}

pub fn dual_equ1(ctx: &Ctx, path: &Path) -> Result<Outcome> {
    let f = ctx.load(path)?;
    let pair = dual_pair(&f)?;
    let c = hereditary_corpus(&f);
    let mut rows = Vec::new();
    let mut text = String::new();
    let mut ok = true;
    for x in &c {
        for y in &c {
            let r = verify_equ1(&pair, &x.module, &y.module)?;
            ok &= r.holds;
            text += &format!(
                "{} {} stable {} = hom {} + ext1 {} {}\n",
                x.name,
                y.name,
                r.stable_hom,
                r.hom,
                r.ext1,
                if r.holds { "ok" } else { "FAILS" }
            );
            rows.push(json!({ "x": x.name, "y": y.name, "check": r }));
        }
    }
    Ok(Outcome::with(if ok { Status::Pass } else { Status::Fail }, text, json!({ "pairs": rows })))
}

pub fn dual_perp(ctx: &Ctx, path: &Path, e: &str) -> Result<Outcome> {
    let f = ctx.load(path)?;
    let r = schofield_perp(&resolve(&f, e)?, &hereditary_corpus(&f))?;
    let text = format!(
        "members {:?}\nsimple objects {:?}\nexpected {}\n",
        r.members, r.simple_objects, r.expected_simples
    );
    let status = if r.pass { Status::Pass } else { Status::Fail };
    Ok(Outcome::with(status, text, serde_json::to_value(&r).expect("serializable")))
}

pub fn verify(ctx: &Ctx, id: &str) -> Result<Outcome> {
    let r = run_scenario(id, ctx.field.unwrap_or(Field::Rationals), ctx.cap)?;
    let json: Value = serde_json::from_str(&r.to_json()).expect("report is valid JSON");
    Ok(Outcome::with(r.status, r.to_table(), json))
}
