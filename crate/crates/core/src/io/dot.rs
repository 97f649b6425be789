//! Graphviz export. Objects are grouped into one cluster per base object;
//! vertical arrows are dashed blue, cartesian (non-vertical) arrows bold,
//! and all other arrows thin gray.

use std::fmt::Write as _;

use crate::fibration::FibSetup;

#[derive(Clone, Debug)]
pub struct DotOptions {
    pub graph_name: String,
    pub skip_identities: bool,
}

impl Default for DotOptions {
    fn default() -> Self {
        DotOptions {
            graph_name: "fibration".into(),
            skip_identities: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeKind {
    Vertical,
    Cartesian,
    Other,
}

pub fn edge_kind(s: &FibSetup, f: crate::category::ArrId) -> EdgeKind {
    if s.vertical(f) {
        EdgeKind::Vertical
    } else if s.cartesian(f) {
        EdgeKind::Cartesian
    } else {
        EdgeKind::Other
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn export_dot(s: &FibSetup, opts: &DotOptions) -> String {
    let total = s.total();
    let base = s.base();
    let mut out = String::new();
    let _ = writeln!(out, "digraph {} {{", quote(&opts.graph_name));
    out.push_str("  rankdir=LR;\n  node [shape=box, fontname=\"Helvetica\"];\n");
    for a in base.objects() {
        let _ = writeln!(out, "  subgraph cluster_{} {{", a.0);
        let _ = writeln!(out, "    label={};", quote(base.object_name(a)));
        out.push_str("    style=rounded;\n");
        for &x in s.objects_over(a) {
            let _ = writeln!(out, "    n{} [label={}];", x.0, quote(total.object_name(x)));
        }
        out.push_str("  }\n");
    }
    for f in total.arrows() {
        if opts.skip_identities && total.is_identity(f) {
            continue;
        }
        let style = match edge_kind(s, f) {
            EdgeKind::Vertical => "style=dashed, color=blue",
            EdgeKind::Cartesian => "style=bold, color=black",
            EdgeKind::Other => "style=solid, color=gray50",
        };
        let _ = writeln!(
            out,
            "  n{} -> n{} [label={}, {style}];",
            total.src(f).0,
            total.tgt(f).0,
            quote(total.arrow_name(f))
        );
    }
    out.push_str("}\n");
    out
}
