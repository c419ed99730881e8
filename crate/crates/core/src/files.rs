//! Structured text documents for presentations, structure maps, coactions and
//! product tables, plus a name resolver over the compiled-in catalog and an
//! optional document directory.
//!
//! A document is line oriented; its first keyword names the kind. Sections
//! (`relations`, `delta`, `counit`, ...) run until a bare `end`. Every writer
//! prints canonical forms and every parser accepts exactly that output, so
//! write -> parse -> write is bit-exact.

use crate::coaction::{
    format_two_leg, gen_translation, translate_word, CoactionError, CoactionMap,
    MultiplicationTable,
};
use crate::hopf::{HopfError, Mode, StructureMap, AXIOMS};
use crate::ncalg::{GenId, NcError, Presentation, PresRef};
use crate::presentations::{builtin, Builtin};
use crate::scalar::{Scalar, Symbol};
use crate::tensor::Tensor;
use crate::text::{parse_ncpoly, parse_scalar, parse_tensor, ParseError};
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::Arc;

#[derive(Debug, thiserror::Error)]
pub enum FileError {
    #[error("line {0}: {1}")]
    Syntax(usize, String),
    #[error("unknown catalog or file name `{0}`")]
    UnknownName(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Nc(#[from] NcError),
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error(transparent)]
    Coaction(#[from] CoactionError),
}

#[derive(Clone, Debug)]
pub enum Document {
    Presentation(PresRef),
    Structure(Arc<StructureMap>),
    Coaction(CoactionMap),
    Table(MultiplicationTable),
}

// ---------------------------------------------------------------------------
// writers

fn push_presentation_body(out: &mut String, p: &Presentation) {
    if !p.params.is_empty() {
        let names: Vec<&str> = p.params.iter().map(|s| s.name.as_str()).collect();
        out.push_str(&format!("params {}\n", names.join(" ")));
    }
    let gens: Vec<String> = p
        .generators
        .iter()
        .zip(&p.weights)
        .map(|(n, w)| format!("{n}:{w}"))
        .collect();
    out.push_str(&format!("generators {}\n", gens.join(" ")));
    if !p.central.is_empty() {
        let names: Vec<&str> = p.central.iter().map(|g| p.gen_name(*g)).collect();
        out.push_str(&format!("central {}\n", names.join(" ")));
    }
    out.push_str("relations\n");
    for (l, r) in &p.relations {
        out.push_str(&format!("  {} = {}\n", p.format_poly(l), p.format_poly(r)));
    }
    out.push_str("end\n");
}

pub fn write_presentation(p: &Presentation) -> String {
    let mut out = format!("presentation {}\n", p.name);
    push_presentation_body(&mut out, p);
    out
}

pub fn write_structure(sm: &StructureMap) -> String {
    let p = &sm.pres;
    let mut out = format!("structure {}\n", sm.name);
    out.push_str(match sm.mode {
        Mode::Plain => "mode plain\n",
        Mode::Braided => "mode braided\n",
    });
    out.push_str(&format!("presentation {}\n", p.name));
    push_presentation_body(&mut out, p);
    out.push_str("delta\n");
    for g in p.gen_ids() {
        out.push_str(&format!(
            "  {} = {}\n",
            p.gen_name(g),
            sm.delta[g as usize].format(p)
        ));
    }
    out.push_str("end\ncounit\n");
    for g in p.gen_ids() {
        out.push_str(&format!("  {} = {}\n", p.gen_name(g), sm.counit[g as usize]));
    }
    out.push_str("end\nantipode\n");
    for g in p.gen_ids() {
        out.push_str(&format!(
            "  {} = {}\n",
            p.gen_name(g),
            p.format_poly(&sm.antipode[g as usize])
        ));
    }
    out.push_str("end\n");
    if let Some(star) = &sm.star {
        out.push_str("star\n");
        for g in p.gen_ids() {
            out.push_str(&format!(
                "  {} = {}\n",
                p.gen_name(g),
                p.format_poly(&star[g as usize])
            ));
        }
        out.push_str("end\n");
    }
    if let Some(braiding) = &sm.braiding {
        out.push_str("braiding\n");
        for ((g, h), t) in braiding {
            out.push_str(&format!(
                "  {},{} = {}\n",
                p.gen_name(*g),
                p.gen_name(*h),
                t.format(p)
            ));
        }
        out.push_str("end\n");
    }
    if !sm.inapplicable_axioms.is_empty() {
        out.push_str(&format!(
            "inapplicable {}\n",
            sm.inapplicable_axioms.join(" ")
        ));
    }
    out
}

pub fn write_coaction(c: &CoactionMap) -> String {
    let mut out = format!("coaction {}\n", c.name);
    out.push_str(&format!("coacted {}\n", c.coacted.name));
    out.push_str(&format!("coacting {}\n", c.coacting.name));
    out.push_str("table\n");
    for g in c.coacted.gen_ids() {
        out.push_str(&format!(
            "  {} = {}\n",
            c.coacted.gen_name(g),
            format_two_leg(&c.table[g as usize], &c.coacted, &c.coacting)
        ));
    }
    out.push_str("end\n");
    out
}

pub fn write_table(t: &MultiplicationTable) -> String {
    let mut out = format!("product_table {}\n", t.name);
    out.push_str(&format!("host {}\n", t.host.name));
    out.push_str(&format!("target {}\n", t.target.name));
    out.push_str("table\n");
    for ((g, h), p) in &t.table {
        out.push_str(&format!(
            "  {},{} = {}\n",
            t.target.gen_name(*g),
            t.target.gen_name(*h),
            t.host.format_poly(p)
        ));
    }
    out.push_str("end\n");
    out
}

pub fn write_document(d: &Document) -> String {
    match d {
        Document::Presentation(p) => write_presentation(p),
        Document::Structure(sm) => write_structure(sm),
        Document::Coaction(c) => write_coaction(c),
        Document::Table(t) => write_table(t),
    }
}

// ---------------------------------------------------------------------------
// name resolution

/// Resolves presentation names for documents that reference other algebras:
/// the compiled-in catalog, the two-parameter algebra specialized at r = q,
/// then `<name>.alg` files in an optional directory.
#[derive(Clone, Debug, Default)]
pub struct Resolver {
    pub dir: Option<PathBuf>,
}

impl Resolver {
    pub fn new() -> Resolver {
        Resolver { dir: None }
    }

    pub fn with_dir(dir: impl Into<PathBuf>) -> Resolver {
        Resolver {
            dir: Some(dir.into()),
        }
    }

    pub fn presentation(&self, name: &str) -> Result<PresRef, FileError> {
        if let Some(b) = Builtin::from_name(name) {
            return Ok(builtin(b)?);
        }
        if name == "tqr_at_r_eq_q" {
            let tqr = builtin(Builtin::TQR)?;
            let mut rq = BTreeMap::new();
            rq.insert(Symbol::r(), Scalar::var(Symbol::q()));
            return Ok(Arc::new(tqr.specialize(name, &rq)?));
        }
        if let Some(dir) = &self.dir {
            let path = dir.join(format!("{name}.alg"));
            if path.is_file() {
                return parse_presentation(&std::fs::read_to_string(path)?);
            }
        }
        Err(FileError::UnknownName(name.into()))
    }
}

// ---------------------------------------------------------------------------
// parsers

struct Lines<'a> {
    // (1-based line number, trimmed nonempty line)
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Lines<'a> {
        let lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        Lines { lines, pos: 0 }
    }

    fn peek(&self) -> Option<(usize, &'a str)> {
        self.lines.get(self.pos).copied()
    }

    fn next(&mut self) -> Result<(usize, &'a str), FileError> {
        let out = self
            .peek()
            .ok_or_else(|| FileError::Syntax(self.lines.last().map_or(0, |(n, _)| *n), "unexpected end of document".into()))?;
        self.pos += 1;
        Ok(out)
    }

    /// Next line split as `keyword rest`; `rest` may be empty.
    fn keyword(&mut self) -> Result<(usize, &'a str, &'a str), FileError> {
        let (n, l) = self.next()?;
        match l.split_once(char::is_whitespace) {
            Some((k, rest)) => Ok((n, k, rest.trim())),
            None => Ok((n, l, "")),
        }
    }

    fn expect(&mut self, keyword: &str) -> Result<(usize, &'a str), FileError> {
        let (n, k, rest) = self.keyword()?;
        if k == keyword {
            Ok((n, rest))
        } else {
            Err(FileError::Syntax(n, format!("expected `{keyword}`, found `{k}`")))
        }
    }

    /// Body lines of a section, up to and excluding a bare `end`.
    fn section_body(&mut self) -> Result<Vec<(usize, &'a str)>, FileError> {
        let mut out = Vec::new();
        loop {
            let (n, l) = self.next()?;
            if l == "end" {
                return Ok(out);
            }
            out.push((n, l));
        }
    }
}

fn syntax(n: usize, e: ParseError) -> FileError {
    FileError::Syntax(n, e.to_string())
}

/// Split a table line `key = value`; the expression grammar never contains
/// `=`, so the first occurrence is the separator.
fn key_value(n: usize, l: &str) -> Result<(String, String), FileError> {
    let (k, v) = l
        .split_once('=')
        .ok_or_else(|| FileError::Syntax(n, format!("expected `key = value`, found `{l}`")))?;
    Ok((k.trim().to_string(), v.trim().to_string()))
}

/// Presentation body after the `presentation <name>` header; `name` is the
/// value from that header.
fn parse_presentation_body(name: &str, lines: &mut Lines) -> Result<PresRef, FileError> {
    let mut params: Vec<Symbol> = Vec::new();
    if let Some((_, l)) = lines.peek() {
        if l.starts_with("params") {
            let (_, rest) = lines.expect("params")?;
            params = rest.split_whitespace().map(Symbol::named).collect();
        }
    }
    let (gn, gens_line) = lines.expect("generators")?;
    let mut gens: Vec<(String, u32)> = Vec::new();
    for item in gens_line.split_whitespace() {
        let (g, w) = item
            .split_once(':')
            .ok_or_else(|| FileError::Syntax(gn, format!("expected `name:weight`, found `{item}`")))?;
        let w: u32 = w
            .parse()
            .map_err(|_| FileError::Syntax(gn, format!("bad weight `{w}`")))?;
        gens.push((g.to_string(), w));
    }
    let scratch = Presentation {
        name: name.into(),
        generators: gens.iter().map(|(g, _)| g.clone()).collect(),
        weights: gens.iter().map(|(_, w)| *w).collect(),
        params: params.clone(),
        relations: vec![],
        central: vec![],
        rules: vec![],
        completion_added: vec![],
    };
    let mut central: Vec<GenId> = Vec::new();
    if let Some((_, l)) = lines.peek() {
        if l.starts_with("central") {
            let (cn, rest) = lines.expect("central")?;
            for g in rest.split_whitespace() {
                central.push(
                    scratch
                        .gen_id(g)
                        .ok_or_else(|| FileError::Syntax(cn, format!("unknown generator `{g}`")))?,
                );
            }
        }
    }
    lines.expect("relations")?;
    let mut relations = Vec::new();
    for (n, l) in lines.section_body()? {
        let (lhs, rhs) = key_value(n, l)?;
        relations.push((
            parse_ncpoly(&lhs, &scratch).map_err(|e| syntax(n, e))?,
            parse_ncpoly(&rhs, &scratch).map_err(|e| syntax(n, e))?,
        ));
    }
    let gen_refs: Vec<(&str, u32)> = gens.iter().map(|(g, w)| (g.as_str(), *w)).collect();
    Ok(Arc::new(Presentation::build(
        name, &gen_refs, &params, relations, &central,
    )?))
}

pub fn parse_presentation(text: &str) -> Result<PresRef, FileError> {
    let mut lines = Lines::new(text);
    let (_, name) = lines.expect("presentation")?;
    let p = parse_presentation_body(name, &mut lines)?;
    if let Some((n, l)) = lines.peek() {
        return Err(FileError::Syntax(n, format!("trailing input `{l}`")));
    }
    Ok(p)
}

/// A per-generator section (`name = value`), returned in generator order.
fn gen_section<T>(
    lines: &mut Lines,
    p: &Presentation,
    mut parse: impl FnMut(usize, &str) -> Result<T, FileError>,
) -> Result<Vec<T>, FileError> {
    let mut by_gen: BTreeMap<GenId, T> = BTreeMap::new();
    let mut last = 0;
    for (n, l) in lines.section_body()? {
        last = n;
        let (k, v) = key_value(n, l)?;
        let g = p
            .gen_id(&k)
            .ok_or_else(|| FileError::Syntax(n, format!("unknown generator `{k}`")))?;
        by_gen.insert(g, parse(n, &v)?);
    }
    if by_gen.len() != p.num_generators() {
        return Err(FileError::Syntax(last, "section must list every generator".into()));
    }
    Ok(by_gen.into_values().collect())
}

fn parse_two_leg(n: usize, s: &str, p: &Presentation) -> Result<Tensor, FileError> {
    if s == "0" {
        return Ok(Tensor::zero(2));
    }
    Ok(Tensor::from_terms(
        2,
        parse_tensor(s, p, 2).map_err(|e| syntax(n, e))?,
    ))
}

pub fn parse_structure(text: &str) -> Result<Arc<StructureMap>, FileError> {
    let mut lines = Lines::new(text);
    let (_, name) = lines.expect("structure")?;
    let (mn, mode) = lines.expect("mode")?;
    let mode = match mode {
        "plain" => Mode::Plain,
        "braided" => Mode::Braided,
        other => return Err(FileError::Syntax(mn, format!("unknown mode `{other}`"))),
    };
    let (_, pname) = lines.expect("presentation")?;
    let pres = parse_presentation_body(pname, &mut lines)?;

    lines.expect("delta")?;
    let delta = gen_section(&mut lines, &pres, |n, v| parse_two_leg(n, v, &pres))?;
    lines.expect("counit")?;
    let counit = gen_section(&mut lines, &pres, |n, v| {
        parse_scalar(v).map_err(|e| syntax(n, e))
    })?;
    lines.expect("antipode")?;
    let antipode = gen_section(&mut lines, &pres, |n, v| {
        parse_ncpoly(v, &pres).map_err(|e| syntax(n, e))
    })?;

    let mut star = None;
    if let Some((_, l)) = lines.peek() {
        if l == "star" {
            lines.next()?;
            star = Some(gen_section(&mut lines, &pres, |n, v| {
                parse_ncpoly(v, &pres).map_err(|e| syntax(n, e))
            })?);
        }
    }
    let mut braiding = None;
    if let Some((_, l)) = lines.peek() {
        if l == "braiding" {
            lines.next()?;
            let mut m: BTreeMap<(GenId, GenId), Tensor> = BTreeMap::new();
            for (n, l) in lines.section_body()? {
                let (k, v) = key_value(n, l)?;
                let (g, h) = k
                    .split_once(',')
                    .ok_or_else(|| FileError::Syntax(n, format!("expected `g,h`, found `{k}`")))?;
                let lookup = |s: &str| {
                    pres.gen_id(s.trim())
                        .ok_or_else(|| FileError::Syntax(n, format!("unknown generator `{s}`")))
                };
                m.insert((lookup(g)?, lookup(h)?), parse_two_leg(n, &v, &pres)?);
            }
            braiding = Some(m);
        }
    }
    let mut inapplicable = Vec::new();
    if let Some((_, l)) = lines.peek() {
        if l.starts_with("inapplicable") {
            let (n, rest) = lines.expect("inapplicable")?;
            for a in rest.split_whitespace() {
                let known = AXIOMS
                    .iter()
                    .copied()
                    .find(|x| *x == a)
                    .ok_or_else(|| FileError::Syntax(n, format!("unknown axiom `{a}`")))?;
                inapplicable.push(known);
            }
        }
    }
    if let Some((n, l)) = lines.peek() {
        return Err(FileError::Syntax(n, format!("trailing input `{l}`")));
    }
    let sm = StructureMap {
        name: name.into(),
        pres,
        mode,
        delta,
        counit,
        antipode,
        star,
        braiding,
        inapplicable_axioms: inapplicable,
    };
    sm.validate()?;
    Ok(Arc::new(sm))
}

pub fn parse_coaction(text: &str, resolver: &Resolver) -> Result<CoactionMap, FileError> {
    let mut lines = Lines::new(text);
    let (_, name) = lines.expect("coaction")?;
    let (_, coacted_name) = lines.expect("coacted")?;
    let (_, coacting_name) = lines.expect("coacting")?;
    let coacted = resolver.presentation(coacted_name)?;
    let coacting = resolver.presentation(coacting_name)?;
    // both legs parse over the coacting alphabet; leg 0 translates by name
    let to_coacted = gen_translation(&coacting, &coacted)?;
    lines.expect("table")?;
    let table = gen_section(&mut lines, &coacted, |n, v| {
        let raw = parse_two_leg(n, v, &coacting)?;
        let mut t = Tensor::zero(2);
        for (ws, c) in raw.terms() {
            t.add_term(c.clone(), vec![translate_word(&ws[0], &to_coacted), ws[1].clone()]);
        }
        Ok(t)
    })?;
    if let Some((n, l)) = lines.peek() {
        return Err(FileError::Syntax(n, format!("trailing input `{l}`")));
    }
    Ok(CoactionMap::new(name, coacted, coacting, table)?)
}

pub fn parse_table(text: &str, resolver: &Resolver) -> Result<MultiplicationTable, FileError> {
    let mut lines = Lines::new(text);
    let (_, name) = lines.expect("product_table")?;
    let (_, host_name) = lines.expect("host")?;
    let (_, target_name) = lines.expect("target")?;
    let host = resolver.presentation(host_name)?;
    let target = resolver.presentation(target_name)?;
    lines.expect("table")?;
    let mut table = BTreeMap::new();
    for (n, l) in lines.section_body()? {
        let (k, v) = key_value(n, l)?;
        let (g, h) = k
            .split_once(',')
            .ok_or_else(|| FileError::Syntax(n, format!("expected `g,h`, found `{k}`")))?;
        let lookup = |s: &str| {
            target
                .gen_id(s.trim())
                .ok_or_else(|| FileError::Syntax(n, format!("unknown generator `{s}`")))
        };
        table.insert(
            (lookup(g)?, lookup(h)?),
            parse_ncpoly(&v, &host).map_err(|e| syntax(n, e))?,
        );
    }
    if let Some((n, l)) = lines.peek() {
        return Err(FileError::Syntax(n, format!("trailing input `{l}`")));
    }
    Ok(MultiplicationTable {
        name: name.into(),
        host,
        target,
        table,
    })
}

pub fn parse_document(text: &str, resolver: &Resolver) -> Result<Document, FileError> {
    let mut probe = Lines::new(text);
    let (n, kind, _) = probe.keyword()?;
    match kind {
        "presentation" => Ok(Document::Presentation(parse_presentation(text)?)),
        "structure" => Ok(Document::Structure(parse_structure(text)?)),
        "coaction" => Ok(Document::Coaction(parse_coaction(text, resolver)?)),
        "product_table" => Ok(Document::Table(parse_table(text, resolver)?)),
        other => Err(FileError::Syntax(n, format!("unknown document kind `{other}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coaction::{coaction, multiplication_table, COACTIONS, TABLES};
    use crate::ncalg::{NCPoly, Word};
    use crate::structures::{structure, STRUCTURES};

    #[test]
    fn presentation_round_trips_bit_exact() {
        for b in Builtin::all() {
            let p = builtin(b).unwrap();
            let s1 = write_presentation(&p);
            let re = parse_presentation(&s1).unwrap();
            assert_eq!(s1, write_presentation(&re), "{}", p.name);
            // the rebuilt rule system reduces like the original
            for w in p.basis_words(3) {
                let x = NCPoly::from_word(Word(vec![0, 1]).concat(&w));
                assert_eq!(
                    p.normal_form(&x).unwrap(),
                    re.normal_form(&x).unwrap(),
                    "{}",
                    p.name
                );
            }
        }
    }

    #[test]
    fn structure_round_trips_bit_exact() {
        for name in STRUCTURES {
            let sm = structure(name).unwrap();
            let s1 = write_structure(&sm);
            let re = parse_structure(&s1).unwrap();
            assert_eq!(s1, write_structure(&re), "{name}");
            assert_eq!(sm.delta, re.delta, "{name}");
            assert_eq!(sm.counit, re.counit, "{name}");
            assert_eq!(sm.antipode, re.antipode, "{name}");
            assert_eq!(sm.star, re.star, "{name}");
            assert_eq!(sm.braiding, re.braiding, "{name}");
            assert_eq!(sm.inapplicable_axioms, re.inapplicable_axioms, "{name}");
        }
    }

    #[test]
    fn coaction_round_trips_bit_exact() {
        let r = Resolver::new();
        for name in COACTIONS {
            let c = coaction(name).unwrap();
            let s1 = write_coaction(&c);
            let re = parse_coaction(&s1, &r).unwrap();
            assert_eq!(s1, write_coaction(&re), "{name}");
            assert_eq!(c.table, re.table, "{name}");
        }
    }

    #[test]
    fn table_round_trips_bit_exact() {
        let r = Resolver::new();
        for name in TABLES {
            let t = multiplication_table(name).unwrap();
            let s1 = write_table(&t);
            let re = parse_table(&s1, &r).unwrap();
            assert_eq!(s1, write_table(&re), "{name}");
            assert_eq!(t.table, re.table, "{name}");
        }
    }

    #[test]
    fn document_kind_detection() {
        let r = Resolver::new();
        let p = builtin(Builtin::AR).unwrap();
        match parse_document(&write_presentation(&p), &r).unwrap() {
            Document::Presentation(re) => assert_eq!(re.name, "ar"),
            other => panic!("wrong kind: {other:?}"),
        }
        let sm = structure("br_sol1_abcd").unwrap();
        match parse_document(&write_structure(&sm), &r).unwrap() {
            Document::Structure(re) => assert_eq!(re.name, "br_sol1_abcd"),
            other => panic!("wrong kind: {other:?}"),
        }
        assert!(matches!(
            parse_document("garbage here", &r),
            Err(FileError::Syntax(1, _))
        ));
    }

    #[test]
    fn resolver_handles_specialized_host() {
        let r = Resolver::new();
        let p = r.presentation("tqr_at_r_eq_q").unwrap();
        assert_eq!(p.params, vec![Symbol::q()]);
        assert!(matches!(
            r.presentation("nonsense"),
            Err(FileError::UnknownName(_))
        ));
    }

    #[test]
    fn resolver_reads_directory_files() {
        let dir = tempfile::tempdir().unwrap();
        let p = builtin(Builtin::TQR).unwrap();
        std::fs::write(dir.path().join("myalg.alg"), write_presentation(&p)).unwrap();
        let r = Resolver::with_dir(dir.path());
        let re = r.presentation("myalg").unwrap();
        assert_eq!(write_presentation(&re), write_presentation(&p));
    }

    /// The files shipped under presentations/ stay in sync with the
    /// compiled-in catalog.
    #[test]
    fn shipped_presentation_files_match_catalog() {
        let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../presentations");
        for b in Builtin::all() {
            let p = builtin(b).unwrap();
            let path = dir.join(format!("{}.alg", p.name));
            let on_disk = std::fs::read_to_string(&path)
                .unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            assert_eq!(on_disk, write_presentation(&p), "{}", p.name);
        }
    }
}
