//! Line-oriented text format for algebras and modules.
//!
//! ```text
//! field Q                 # or: field F 7
//! quiver
//!   vertex 1
//!   vertex 2
//!   arrow a 1 2
//! relations
//!   # one relation per line, e.g. b*a - a*c*b
//! nilpotency 4
//! module X
//!   dim 1 1
//!   dim 2 1
//!   map a 1
//! ```
//!
//! `nakayama cyclic 5 6 6` (or `linear`) may replace the quiver and relations blocks.
//! Map entries are row-major with `dim(target)` rows and `dim(source)` columns;
//! omitted maps are zero.

use std::path::Path;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix};
use crate::modcat::{Module, Named};
use crate::qalg::{parse_scalar, Algebra, NakayamaSpec, Quiver, RelationElement};

#[derive(Clone, Debug)]
pub struct AlgebraFile {
    pub algebra: Arc<Algebra>,
    pub modules: Vec<Named>,
}

impl AlgebraFile {
    pub fn module(&self, name: &str) -> Result<&Module> {
        self.modules
            .iter()
            .find(|m| m.name == name)
            .map(|m| &m.module)
            .ok_or_else(|| Error::Parse(format!("no module named `{name}`")))
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Section {
    Top,
    Quiver,
    Relations,
    Module,
}

struct ModuleDraft {
    name: String,
    line: usize,
    dims: Vec<(usize, String, usize)>,
    maps: Vec<(usize, String, Vec<String>)>,
}

fn syntax(line: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { line, msg: msg.into() }
}

fn at_line(line: usize, e: Error) -> Error {
    match e {
        Error::Syntax { .. } => e,
        other => syntax(line, other.to_string()),
    }
}

fn parse_usize(line: usize, s: &str) -> Result<usize> {
    s.parse().map_err(|_| syntax(line, format!("expected a non-negative integer, got `{s}`")))
}

pub fn parse_algebra_file(path: impl AsRef<Path>, field_override: Option<Field>) -> Result<AlgebraFile> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_algebra_text(&text, field_override)
}

pub fn parse_algebra_text(text: &str, field_override: Option<Field>) -> Result<AlgebraFile> {
    let mut field: Option<Field> = None;
    let mut vertices: Vec<(usize, String)> = Vec::new();
    let mut arrows: Vec<(usize, String, String, String)> = Vec::new();
    let mut relations: Vec<(usize, String)> = Vec::new();
    let mut nilpotency: Option<(usize, usize)> = None;
    let mut nakayama: Option<(usize, NakayamaSpec)> = None;
    let mut modules: Vec<ModuleDraft> = Vec::new();
    let mut section = Section::Top;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let ln = idx + 1;
        last_line = ln;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[0] {
            "field" => {
                section = Section::Top;
                field = Some(match toks.as_slice() {
                    ["field", "Q"] => Field::Rationals,
                    ["field", "F", p] => {
                        let p: u64 = p.parse().map_err(|_| syntax(ln, format!("bad characteristic `{p}`")))?;
                        Field::prime(p).map_err(|e| at_line(ln, e))?
                    }
                    _ => return Err(syntax(ln, "expected `field Q` or `field F <p>`")),
                });
            }
            "quiver" if toks.len() == 1 => section = Section::Quiver,
            "relations" if toks.len() == 1 => section = Section::Relations,
            "nilpotency" => {
                section = Section::Top;
                if toks.len() != 2 {
                    return Err(syntax(ln, "expected `nilpotency <N>`"));
                }
                let n = parse_usize(ln, toks[1])?;
                if n == 0 {
                    return Err(syntax(ln, "nilpotency bound must be positive"));
                }
                nilpotency = Some((ln, n));
            }
            "nakayama" => {
                section = Section::Top;
                if toks.len() < 3 {
                    return Err(syntax(ln, "expected `nakayama cyclic|linear <c_1> ... <c_n>`"));
                }
                let seq = toks[2..].iter().map(|t| parse_usize(ln, t)).collect::<Result<Vec<_>>>()?;
                let spec = match toks[1] {
                    "cyclic" => NakayamaSpec::cyclic(&seq),
                    "linear" => NakayamaSpec::linear(&seq),
                    o => return Err(syntax(ln, format!("unknown orientation `{o}`"))),
                };
                nakayama = Some((ln, spec));
            }
            "module" => {
                if toks.len() != 2 {
                    return Err(syntax(ln, "expected `module <name>`"));
                }
                if modules.iter().any(|m| m.name == toks[1]) {
                    return Err(syntax(ln, format!("duplicate module `{}`", toks[1])));
                }
                section = Section::Module;
                modules.push(ModuleDraft { name: toks[1].to_string(), line: ln, dims: vec![], maps: vec![] });
            }
            _ => match section {
                Section::Quiver => match toks.as_slice() {
                    ["vertex", v] => vertices.push((ln, v.to_string())),
                    ["arrow", a, s, t] => arrows.push((ln, a.to_string(), s.to_string(), t.to_string())),
                    _ => return Err(syntax(ln, "expected `vertex <name>` or `arrow <name> <src> <tgt>`")),
                },
                Section::Relations => relations.push((ln, line.to_string())),
                Section::Module => {
                    let m = modules.last_mut().expect("module section has a draft");
                    match toks.as_slice() {
                        ["dim", v, n] => m.dims.push((ln, v.to_string(), parse_usize(ln, n)?)),
                        ["map", a, rest @ ..] => m.maps.push((ln, a.to_string(), rest.iter().map(|s| s.to_string()).collect())),
                        _ => return Err(syntax(ln, "expected `dim <vertex> <n>` or `map <arrow> <entries>`")),
                    }
                }
                Section::Top => return Err(syntax(ln, format!("unexpected `{}`", toks[0]))),
            },
        }
    }

    let field = field_override.or(field).unwrap_or(Field::Rationals);
    let algebra = if let Some((ln, spec)) = nakayama {
        if !vertices.is_empty() || !arrows.is_empty() || !relations.is_empty() {
            return Err(syntax(ln, "`nakayama` cannot be combined with a quiver or relations block"));
        }
        Algebra::nakayama(&spec, field).map_err(|e| at_line(ln, e))?
    } else {
        if vertices.is_empty() {
            return Err(syntax(last_line.max(1), "no vertices declared"));
        }
        for (i, (ln, v)) in vertices.iter().enumerate() {
            if vertices[..i].iter().any(|(_, w)| w == v) {
                return Err(syntax(*ln, format!("duplicate vertex `{v}`")));
            }
        }
        for (i, (ln, a, s, t)) in arrows.iter().enumerate() {
            if arrows[..i].iter().any(|(_, b, _, _)| b == a) {
                return Err(syntax(*ln, format!("duplicate arrow `{a}`")));
            }
            for end in [s, t] {
                if !vertices.iter().any(|(_, v)| v == end) {
                    return Err(syntax(*ln, format!("unknown vertex `{end}`")));
                }
            }
        }
        let vs: Vec<String> = vertices.iter().map(|(_, v)| v.clone()).collect();
        let arr: Vec<(String, String, String)> = arrows.iter().map(|(_, a, s, t)| (a.clone(), s.clone(), t.clone())).collect();
        let quiver = Quiver::new(&vs, &arr).map_err(|e| at_line(vertices[0].0, e))?;
        let mut rels = Vec::new();
        for (ln, r) in &relations {
            rels.push(RelationElement::parse(&quiver, field, r).map_err(|e| at_line(*ln, e))?);
        }
        let (nl, n) = match nilpotency {
            Some(x) => x,
            None => match quiver.longest_path() {
                Some(l) => (last_line, (l + 1).max(2)),
                None => return Err(syntax(last_line.max(1), "`nilpotency <N>` is required when the quiver has oriented cycles")),
            },
        };
        Algebra::build(quiver, rels, n, field).map_err(|e| at_line(nl, e))?
    };
    let algebra = Arc::new(algebra);

    let mut out = Vec::new();
    for draft in modules {
        out.push(Named { name: draft.name.clone(), module: build_module(&algebra, &draft)? });
    }
    Ok(AlgebraFile { algebra, modules: out })
}

fn build_module(alg: &Arc<Algebra>, d: &ModuleDraft) -> Result<Module> {
    let q = alg.quiver();
    let f = alg.field();
    let mut dims = vec![0usize; alg.num_vertices()];
    for (ln, v, n) in &d.dims {
        let i = q.vertex(v).map_err(|_| syntax(*ln, format!("unknown vertex `{v}`")))?;
        dims[i] = *n;
    }
    let mut maps: Vec<Matrix> = q.arrows().iter().map(|a| Matrix::zeros(f, dims[a.target], dims[a.source])).collect();
    let mut seen = vec![false; maps.len()];
    for (ln, a, entries) in &d.maps {
        let i = q.arrow(a).map_err(|_| syntax(*ln, format!("unknown arrow `{a}`")))?;
        if seen[i] {
            return Err(syntax(*ln, format!("map for `{a}` given twice")));
        }
        seen[i] = true;
        let (r, c) = (maps[i].rows(), maps[i].cols());
        if entries.len() != r * c {
            return Err(syntax(*ln, format!("map `{a}` needs {} entries ({r}x{c}), got {}", r * c, entries.len())));
        }
        let data = entries.iter().map(|s| parse_scalar(f, s).map_err(|e| at_line(*ln, e))).collect::<Result<Vec<_>>>()?;
        maps[i] = Matrix::from_flat(f, r, c, data);
    }
    Module::new(alg.clone(), dims, maps).map_err(|e| at_line(d.line, e))
}

/// Render a module as a `module` block that this parser reads back.
pub fn module_to_text(name: &str, m: &Module) -> String {
    let q = m.algebra().quiver();
    let mut s = format!("module {name}\n");
    for (v, d) in m.dims().iter().enumerate() {
        if *d > 0 {
            s += &format!("  dim {} {d}\n", q.vertices()[v]);
        }
    }
    for (i, a) in q.arrows().iter().enumerate() {
        let mat = m.arrow_map(i);
        if mat.is_zero() {
            continue;
        }
        let entries: Vec<String> = mat.data().iter().map(|x| x.to_string()).collect();
        s += &format!("  map {} {}\n", a.label, entries.join(" "));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_without_relations() {
        let f = parse_algebra_text("quiver\n vertex 1\n vertex 2\n arrow a 1 2\n", None).unwrap();
        assert_eq!(f.algebra.dim(), 3);
    }

    #[test]
    fn unknown_arrow_in_relation_has_line() {
        let text = "field Q\nquiver\n vertex 1\n arrow x 1 1\nrelations\n x*y\nnilpotency 3\n";
        match parse_algebra_text(text, None) {
            Err(Error::Syntax { line, .. }) => assert_eq!(line, 6),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn non_prime_rejected() {
        match parse_algebra_text("field F 6\nquiver\n vertex 1\n", None) {
            Err(Error::Syntax { line, .. }) => assert_eq!(line, 1),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn module_block() {
        let text = "quiver\n vertex 1\n vertex 2\n arrow a 1 2\nmodule P1\n dim 1 1\n dim 2 1\n map a 1\nmodule Bad\n dim 1 1\n map a 1 2\n";
        match parse_algebra_text(text, None) {
            Err(Error::Syntax { line, .. }) => assert_eq!(line, 11),
            other => panic!("{other:?}"),
        }
        let f = parse_algebra_text(&text[..text.find("module Bad").unwrap()], None).unwrap();
        assert_eq!(f.module("P1").unwrap().dims(), &[1, 1]);
        let back = format!("quiver\n vertex 1\n vertex 2\n arrow a 1 2\n{}", module_to_text("Y", f.module("P1").unwrap()));
        let g = parse_algebra_text(&back, None).unwrap();
        assert_eq!(g.module("Y").unwrap().arrow_maps(), f.module("P1").unwrap().arrow_maps());
    }
}
