//! The `catdoc` text format.
//!
//! ```text
//! catdoc 1 fibration
//!
//! category X
//!   object A
//!   arrow idA : A -> A
//!   identity A = idA
//!   compose f g = h        # "f then g" is h
//! end
//!
//! functor pi : X -> B
//!   object A = *
//!   arrow f = b
//! end
//! ```
//!
//! Kinds are `category`, `functor`, `fibration` and `indexed`. An indexed
//! document has one `category` block (the base), a `fibre <object>` block
//! with a category body for every base object, and a `reindex <arrow>` block
//! with a functor body for every base arrow, mapping the fibre over the
//! arrow's target to the fibre over its source.
//!
//! Composition entries are diagrammatic. Unit-law entries are implied and
//! are not printed. Lines starting with `#` and blank lines are ignored;
//! names are any whitespace-free tokens.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::category::{
    validate_category, validate_functor, ArrId, CategoryBuilder, FinCategory, FunctorData, ObjId, ValidationReport,
};
use crate::error::{Error, Result};
use crate::fibration::FibSetup;
use crate::indexed::IndexedCat;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctorDoc {
    pub name: String,
    pub dom_name: String,
    pub dom: FinCategory,
    pub cod_name: String,
    pub cod: FinCategory,
    pub functor: FunctorData,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Category {
        name: String,
        category: FinCategory,
    },
    Functor(FunctorDoc),
    /// A functor read as the projection of a fibration (total -> base).
    Fibration(FunctorDoc),
    Indexed {
        base_name: String,
        indexed: IndexedCat,
    },
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Category { .. } => "category",
            Document::Functor(_) => "functor",
            Document::Fibration(_) => "fibration",
            Document::Indexed { .. } => "indexed",
        }
    }

    pub fn from_fibration(total_name: &str, base_name: &str, proj_name: &str, s: &FibSetup) -> Document {
        Document::Fibration(FunctorDoc {
            name: proj_name.to_string(),
            dom_name: total_name.to_string(),
            dom: s.total().clone(),
            cod_name: base_name.to_string(),
            cod: s.base().clone(),
            functor: s.proj().clone(),
        })
    }

    /// The fibration setup of a `fibration` document.
    pub fn to_fib_setup(&self) -> Result<FibSetup> {
        match self {
            Document::Fibration(d) => FibSetup::new(d.dom.clone(), d.cod.clone(), d.functor.clone()),
            other => Err(Error::Precondition(format!(
                "expected a fibration document, found {}",
                other.kind()
            ))),
        }
    }

    /// Every law violated by the document's content.
    pub fn validate(&self) -> ValidationReport {
        match self {
            Document::Category { category, .. } => validate_category(category),
            Document::Functor(d) | Document::Fibration(d) => {
                let mut r = ValidationReport::default();
                r.extend_nested(&d.dom_name, validate_category(&d.dom));
                if d.cod_name != d.dom_name {
                    r.extend_nested(&d.cod_name, validate_category(&d.cod));
                }
                if r.is_empty() {
                    r.extend_nested(&d.name, validate_functor(&d.dom, &d.cod, &d.functor));
                }
                r
            }
            Document::Indexed { indexed, .. } => indexed.validate(),
        }
    }
}

#[derive(Clone, Debug)]
struct Tok {
    text: String,
    line: usize,
    col: usize,
}

impl Tok {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: self.col,
            message: message.into(),
        }
    }
}

fn tokenize(line: &str, lineno: usize) -> Vec<Tok> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    let chars: Vec<char> = line.chars().collect();
    for (i, &c) in chars.iter().enumerate() {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Tok {
                    text: chars[s..i].iter().collect(),
                    line: lineno,
                    col: s + 1,
                });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Tok {
            text: chars[s..].iter().collect(),
            line: lineno,
            col: s + 1,
        });
    }
    out
}

struct Lines {
    lines: Vec<Vec<Tok>>,
    pos: usize,
    last_line: usize,
}

impl Lines {
    fn new(text: &str) -> Self {
        let mut lines = Vec::new();
        let mut last_line = 0;
        for (i, raw) in text.lines().enumerate() {
            last_line = i + 1;
            let trimmed = raw.trim_start();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            lines.push(tokenize(raw, i + 1));
        }
        Lines {
            lines,
            pos: 0,
            last_line,
        }
    }

    fn next(&mut self) -> Option<Vec<Tok>> {
        let l = self.lines.get(self.pos).cloned();
        self.pos += 1;
        l
    }

    fn eof_err(&self, message: &str) -> Error {
        Error::Parse {
            line: self.last_line + 1,
            column: 1,
            message: message.to_string(),
        }
    }
}

fn expect_shape<'a>(toks: &'a [Tok], pattern: &[Option<&str>], what: &str) -> Result<Vec<&'a Tok>> {
    if toks.len() != pattern.len() {
        let at = toks.get(pattern.len()).or(toks.last()).expect("non-empty line");
        return Err(at.err(format!(
            "malformed {what} line: expected {} tokens, found {}",
            pattern.len(),
            toks.len()
        )));
    }
    let mut names = Vec::new();
    for (t, p) in toks.iter().zip(pattern) {
        match p {
            Some(lit) if t.text != *lit => {
                return Err(t.err(format!("expected '{lit}' in {what} line, found '{}'", t.text)))
            }
            Some(_) => {}
            None => names.push(t),
        }
    }
    Ok(names)
}

fn parse_category_body(lines: &mut Lines) -> Result<FinCategory> {
    let mut b = CategoryBuilder::new();
    let mut objs: HashMap<String, ObjId> = HashMap::new();
    let mut arrs: HashMap<String, ArrId> = HashMap::new();
    let mut arr_ends: Vec<(ObjId, ObjId)> = Vec::new();
    let mut seen_identity: HashMap<ObjId, ()> = HashMap::new();
    let obj = |objs: &HashMap<String, ObjId>, t: &Tok| {
        objs.get(&t.text)
            .copied()
            .ok_or_else(|| t.err(format!("unknown object '{}'", t.text)))
    };
    let arr = |arrs: &HashMap<String, ArrId>, t: &Tok| {
        arrs.get(&t.text)
            .copied()
            .ok_or_else(|| t.err(format!("unknown arrow '{}'", t.text)))
    };
    loop {
        let toks = lines
            .next()
            .ok_or_else(|| lines.eof_err("unterminated category block"))?;
        match toks[0].text.as_str() {
            "end" => {
                expect_shape(&toks, &[Some("end")], "end")?;
                for (name, &o) in &objs {
                    if !seen_identity.contains_key(&o) {
                        return Err(toks[0].err(format!("object '{name}' has no identity")));
                    }
                }
                b.fill_unit_composites();
                return b.build().map_err(|e| toks[0].err(e.to_string()));
            }
            "object" => {
                let n = expect_shape(&toks, &[Some("object"), None], "object")?;
                if objs.contains_key(&n[0].text) {
                    return Err(n[0].err(format!("duplicate object '{}'", n[0].text)));
                }
                objs.insert(n[0].text.clone(), b.object(n[0].text.clone()));
            }
            "arrow" => {
                let n = expect_shape(
                    &toks,
                    &[Some("arrow"), None, Some(":"), None, Some("->"), None],
                    "arrow",
                )?;
                if arrs.contains_key(&n[0].text) {
                    return Err(n[0].err(format!("duplicate arrow '{}'", n[0].text)));
                }
                let (s, t) = (obj(&objs, n[1])?, obj(&objs, n[2])?);
                arrs.insert(n[0].text.clone(), b.arrow(n[0].text.clone(), s, t));
                arr_ends.push((s, t));
            }
            "identity" => {
                let n = expect_shape(&toks, &[Some("identity"), None, Some("="), None], "identity")?;
                let (o, a) = (obj(&objs, n[0])?, arr(&arrs, n[1])?);
                if arr_ends[a.0] != (o, o) {
                    return Err(n[1].err(format!(
                        "identity '{}' is not an endo-arrow of '{}'",
                        n[1].text, n[0].text
                    )));
                }
                if seen_identity.insert(o, ()).is_some() {
                    return Err(n[0].err(format!("second identity for '{}'", n[0].text)));
                }
                b.set_identity(o, a);
            }
            "compose" => {
                let n = expect_shape(&toks, &[Some("compose"), None, None, Some("="), None], "compose")?;
                let (f, g, h) = (arr(&arrs, n[0])?, arr(&arrs, n[1])?, arr(&arrs, n[2])?);
                if arr_ends[f.0].1 != arr_ends[g.0].0 {
                    return Err(n[1].err(format!("arrows '{}' and '{}' are not composable", n[0].text, n[1].text)));
                }
                b.compose(f, g, h);
            }
            other => return Err(toks[0].err(format!("unknown directive '{other}' in category block"))),
        }
    }
}

struct RawFunctor {
    objects: Vec<(Tok, Tok)>,
    arrows: Vec<(Tok, Tok)>,
    end: Tok,
}

fn parse_functor_body(lines: &mut Lines) -> Result<RawFunctor> {
    let mut raw = RawFunctor {
        objects: Vec::new(),
        arrows: Vec::new(),
        end: Tok {
            text: String::new(),
            line: 0,
            col: 0,
        },
    };
    loop {
        let toks = lines
            .next()
            .ok_or_else(|| lines.eof_err("unterminated functor block"))?;
        match toks[0].text.as_str() {
            "end" => {
                expect_shape(&toks, &[Some("end")], "end")?;
                raw.end = toks[0].clone();
                return Ok(raw);
            }
            "object" => {
                let n = expect_shape(&toks, &[Some("object"), None, Some("="), None], "object map")?;
                raw.objects.push((n[0].clone(), n[1].clone()));
            }
            "arrow" => {
                let n = expect_shape(&toks, &[Some("arrow"), None, Some("="), None], "arrow map")?;
                raw.arrows.push((n[0].clone(), n[1].clone()));
            }
            other => return Err(toks[0].err(format!("unknown directive '{other}' in functor block"))),
        }
    }
}

fn resolve_functor(raw: &RawFunctor, dom: &FinCategory, cod: &FinCategory) -> Result<FunctorData> {
    let mut obj_map = vec![None; dom.num_objects()];
    let mut arr_map = vec![None; dom.num_arrows()];
    for (l, r) in &raw.objects {
        let a = dom
            .object_by_name(&l.text)
            .ok_or_else(|| l.err(format!("unknown object '{}'", l.text)))?;
        let b = cod
            .object_by_name(&r.text)
            .ok_or_else(|| r.err(format!("unknown object '{}'", r.text)))?;
        if obj_map[a.0].replace(b).is_some() {
            return Err(l.err(format!("object '{}' mapped twice", l.text)));
        }
    }
    for (l, r) in &raw.arrows {
        let f = dom
            .arrow_by_name(&l.text)
            .ok_or_else(|| l.err(format!("unknown arrow '{}'", l.text)))?;
        let g = cod
            .arrow_by_name(&r.text)
            .ok_or_else(|| r.err(format!("unknown arrow '{}'", r.text)))?;
        if arr_map[f.0].replace(g).is_some() {
            return Err(l.err(format!("arrow '{}' mapped twice", l.text)));
        }
    }
    let obj_map = obj_map
        .into_iter()
        .enumerate()
        .map(|(i, o)| {
            o.ok_or_else(|| {
                raw.end
                    .err(format!("object '{}' is not mapped", dom.object_name(ObjId(i))))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let arr_map = arr_map
        .into_iter()
        .enumerate()
        .map(|(i, a)| {
            a.ok_or_else(|| {
                raw.end
                    .err(format!("arrow '{}' is not mapped", dom.arrow_name(ArrId(i))))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FunctorData { obj_map, arr_map })
}

pub fn parse(text: &str) -> Result<Document> {
    let mut lines = Lines::new(text);
    let header = lines.next().ok_or_else(|| lines.eof_err("empty document"))?;
    let h = expect_shape(&header, &[Some("catdoc"), None, None], "header")?;
    if h[0].text != FORMAT_VERSION.to_string() {
        return Err(h[0].err(format!("unsupported format version '{}'", h[0].text)));
    }
    let kind = h[1].clone();
    let mut categories: Vec<(Tok, FinCategory)> = Vec::new();
    let mut functors: Vec<(Tok, Tok, Tok, RawFunctor)> = Vec::new();
    let mut fibres: Vec<(Tok, FinCategory)> = Vec::new();
    let mut reindex: Vec<(Tok, RawFunctor)> = Vec::new();
    while let Some(toks) = lines.next() {
        match toks[0].text.as_str() {
            "category" => {
                let n = expect_shape(&toks, &[Some("category"), None], "category")?;
                let name = n[0].clone();
                if categories.iter().any(|(t, _)| t.text == name.text) {
                    return Err(name.err(format!("duplicate category '{}'", name.text)));
                }
                categories.push((name, parse_category_body(&mut lines)?));
            }
            "functor" => {
                let n = expect_shape(
                    &toks,
                    &[Some("functor"), None, Some(":"), None, Some("->"), None],
                    "functor",
                )?;
                let raw = parse_functor_body(&mut lines)?;
                functors.push((n[0].clone(), n[1].clone(), n[2].clone(), raw));
            }
            "fibre" => {
                let n = expect_shape(&toks, &[Some("fibre"), None], "fibre")?;
                fibres.push((n[0].clone(), parse_category_body(&mut lines)?));
            }
            "reindex" => {
                let n = expect_shape(&toks, &[Some("reindex"), None], "reindex")?;
                let raw = parse_functor_body(&mut lines)?;
                reindex.push((n[0].clone(), raw));
            }
            other => return Err(toks[0].err(format!("unknown block '{other}'"))),
        }
    }
    let eof = |m: &str| lines.eof_err(m);
    let find_cat = |t: &Tok| {
        categories
            .iter()
            .find(|(n, _)| n.text == t.text)
            .map(|(_, c)| c.clone())
            .ok_or_else(|| t.err(format!("unknown category '{}'", t.text)))
    };
    match kind.text.as_str() {
        "category" => {
            if categories.len() != 1 || !functors.is_empty() || !fibres.is_empty() || !reindex.is_empty() {
                return Err(kind.err("a category document holds exactly one category block"));
            }
            let (name, category) = categories.pop().expect("one category");
            Ok(Document::Category {
                name: name.text,
                category,
            })
        }
        "functor" | "fibration" => {
            if functors.len() != 1 || !fibres.is_empty() || !reindex.is_empty() {
                return Err(kind.err(format!("a {} document holds exactly one functor block", kind.text)));
            }
            let (name, dom_tok, cod_tok, raw) = functors.pop().expect("one functor");
            let dom = find_cat(&dom_tok)?;
            let cod = find_cat(&cod_tok)?;
            let expected = if dom_tok.text == cod_tok.text { 1 } else { 2 };
            if categories.len() != expected {
                return Err(kind.err("document has category blocks the functor does not use"));
            }
            let functor = resolve_functor(&raw, &dom, &cod)?;
            let doc = FunctorDoc {
                name: name.text,
                dom_name: dom_tok.text,
                dom,
                cod_name: cod_tok.text,
                cod,
                functor,
            };
            Ok(if kind.text == "functor" {
                Document::Functor(doc)
            } else {
                Document::Fibration(doc)
            })
        }
        "indexed" => {
            if categories.len() != 1 || !functors.is_empty() {
                return Err(kind.err("an indexed document holds one base category block and no functor blocks"));
            }
            let (base_tok, base) = categories.pop().expect("one category");
            let mut fib_slots: Vec<Option<FinCategory>> = vec![None; base.num_objects()];
            for (t, c) in fibres {
                let a = base
                    .object_by_name(&t.text)
                    .ok_or_else(|| t.err(format!("unknown base object '{}'", t.text)))?;
                if fib_slots[a.0].replace(c).is_some() {
                    return Err(t.err(format!("second fibre over '{}'", t.text)));
                }
            }
            let fibres = fib_slots
                .into_iter()
                .enumerate()
                .map(|(i, c)| c.ok_or_else(|| eof(&format!("no fibre over '{}'", base.object_name(ObjId(i))))))
                .collect::<Result<Vec<_>>>()?;
            let mut re_slots: Vec<Option<FunctorData>> = vec![None; base.num_arrows()];
            for (t, raw) in &reindex {
                let alpha = base
                    .arrow_by_name(&t.text)
                    .ok_or_else(|| t.err(format!("unknown base arrow '{}'", t.text)))?;
                let dom = &fibres[base.tgt(alpha).0];
                let cod = &fibres[base.src(alpha).0];
                let f = resolve_functor(raw, dom, cod)?;
                if re_slots[alpha.0].replace(f).is_some() {
                    return Err(t.err(format!("second reindexing along '{}'", t.text)));
                }
            }
            let reindex = re_slots
                .into_iter()
                .enumerate()
                .map(|(i, f)| f.ok_or_else(|| eof(&format!("no reindexing along '{}'", base.arrow_name(ArrId(i))))))
                .collect::<Result<Vec<_>>>()?;
            Ok(Document::Indexed {
                base_name: base_tok.text,
                indexed: IndexedCat { base, fibres, reindex },
            })
        }
        other => Err(kind.err(format!("unknown document kind '{other}'"))),
    }
}

fn write_category_body(out: &mut String, c: &FinCategory) {
    for a in c.objects() {
        let _ = writeln!(out, "  object {}", c.object_name(a));
    }
    for f in c.arrows() {
        let _ = writeln!(
            out,
            "  arrow {} : {} -> {}",
            c.arrow_name(f),
            c.object_name(c.src(f)),
            c.object_name(c.tgt(f))
        );
    }
    for a in c.objects() {
        let _ = writeln!(out, "  identity {} = {}", c.object_name(a), c.arrow_name(c.identity(a)));
    }
    for f in c.arrows() {
        for g in c.arrows() {
            let Some(h) = c.compose(f, g) else { continue };
            let implied = (c.is_identity(f) && h == g) || (c.is_identity(g) && h == f);
            if !implied {
                let _ = writeln!(
                    out,
                    "  compose {} {} = {}",
                    c.arrow_name(f),
                    c.arrow_name(g),
                    c.arrow_name(h)
                );
            }
        }
    }
    out.push_str("end\n");
}

fn write_functor_body(out: &mut String, dom: &FinCategory, cod: &FinCategory, f: &FunctorData) {
    for a in dom.objects() {
        let _ = writeln!(out, "  object {} = {}", dom.object_name(a), cod.object_name(f.obj(a)));
    }
    for x in dom.arrows() {
        let _ = writeln!(out, "  arrow {} = {}", dom.arrow_name(x), cod.arrow_name(f.arr(x)));
    }
    out.push_str("end\n");
}

/// Canonical text: ids in order, fixed field order, one blank line between blocks.
pub fn print(doc: &Document) -> String {
    let mut out = format!("catdoc {FORMAT_VERSION} {}\n", doc.kind());
    match doc {
        Document::Category { name, category } => {
            let _ = writeln!(out, "\ncategory {name}");
            write_category_body(&mut out, category);
        }
        Document::Functor(d) | Document::Fibration(d) => {
            let _ = writeln!(out, "\ncategory {}", d.dom_name);
            write_category_body(&mut out, &d.dom);
            if d.cod_name != d.dom_name {
                let _ = writeln!(out, "\ncategory {}", d.cod_name);
                write_category_body(&mut out, &d.cod);
            }
            let _ = writeln!(out, "\nfunctor {} : {} -> {}", d.name, d.dom_name, d.cod_name);
            write_functor_body(&mut out, &d.dom, &d.cod, &d.functor);
        }
        Document::Indexed { base_name, indexed } => {
            let base = &indexed.base;
            let _ = writeln!(out, "\ncategory {base_name}");
            write_category_body(&mut out, base);
            for a in base.objects() {
                let _ = writeln!(out, "\nfibre {}", base.object_name(a));
                write_category_body(&mut out, &indexed.fibres[a.0]);
            }
            for alpha in base.arrows() {
                let _ = writeln!(out, "\nreindex {}", base.arrow_name(alpha));
                write_functor_body(
                    &mut out,
                    &indexed.fibres[base.tgt(alpha).0],
                    &indexed.fibres[base.src(alpha).0],
                    &indexed.reindex[alpha.0],
                );
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;

    const TERMINAL: &str = "catdoc 1 category\n\ncategory One\n  object *\n  arrow 1 : * -> *\n  identity * = 1\nend\n";

    #[test]
    fn terminal_document() {
        let doc = parse(TERMINAL).unwrap();
        let Document::Category { category, .. } = &doc else {
            panic!("kind")
        };
        assert_eq!((category.num_objects(), category.num_arrows()), (1, 1));
        assert_eq!(print(&doc), TERMINAL);
    }

    #[test]
    fn unknown_arrow_in_compose_names_the_id() {
        let text =
            "catdoc 1 category\ncategory C\n  object A\n  arrow a : A -> A\n  identity A = a\n  compose a b = a\nend\n";
        match parse(text) {
            Err(Error::Parse { line, column, message }) => {
                assert_eq!((line, column), (6, 13));
                assert!(message.contains("'b'"), "{message}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn non_composable_entry_is_rejected() {
        let text = "catdoc 1 category\ncategory C\n  object A\n  object B\n  arrow a : A -> A\n  arrow b : B -> B\n  identity A = a\n  identity B = b\n  compose a b = a\nend\n";
        assert!(matches!(parse(text), Err(Error::Parse { line: 9, .. })));
    }

    #[test]
    fn unknown_directive_rejected() {
        let text = "catdoc 1 category\ncategory C\n  object A\n  colour A = red\nend\n";
        assert!(matches!(parse(text), Err(Error::Parse { line: 4, column: 3, .. })));
    }

    #[test]
    fn sign_fibration_round_trip() {
        let s = gen::sign_fibration();
        let doc = Document::from_fibration("S3", "Z2", "sign", &s);
        let text = print(&doc);
        let back = parse(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(print(&back), text);
        assert!(back.to_fib_setup().unwrap().is_fibration());
    }

    #[test]
    fn indexed_round_trip() {
        let f = gen::gen_indexed(&gen::IndexedSpec::IntervalReindex).unwrap();
        let doc = Document::Indexed {
            base_name: "I".into(),
            indexed: f,
        };
        let text = print(&doc);
        assert_eq!(parse(&text).unwrap(), doc);
    }

    #[test]
    fn opposite_reparses() {
        let c = FinCategory::chain(3).opposite();
        let doc = Document::Category {
            name: "Cop".into(),
            category: c,
        };
        assert_eq!(parse(&print(&doc)).unwrap(), doc);
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let text = format!("# a comment\n\n{TERMINAL}\n# trailing\n");
        assert!(parse(&text).is_ok());
    }
}
