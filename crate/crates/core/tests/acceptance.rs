//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use dualfib::category::{validate_category, validate_functor, ArrId};
use dualfib::dual::{
    compose_comorphisms, compose_spans_via, enumerate_comorphisms, enumerate_spans, Comorphism, DualFib, VhSpan,
};
use dualfib::fibration::cartesian_by_definition;
use dualfib::gen::{self, fibration_families, indexed_families, GroupTable};
use dualfib::indexed::check_dual_agreement;
use dualfib::io::{parse, print};
use dualfib::{double_dual_iso, FibSetup};

type Check = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Check + 'a>);

/// Families plus the Grothendieck fibrations of the indexed corpus.
fn corpus() -> Vec<(String, FibSetup)> {
    let mut out = fibration_families();
    for (name, f) in indexed_families() {
        out.push((format!("groth({name})"), f.grothendieck().expect("grothendieck").fib));
    }
    out
}

fn small(s: &FibSetup) -> bool {
    s.total().num_arrows() <= 30
}

fn c1_cartesian_oracle(corpus: &[(String, FibSetup)]) -> Check {
    let mut checked = 0;
    for (name, s) in corpus {
        for h in s.total().arrows() {
            if s.cartesian(h) != cartesian_by_definition(s.total(), s.base(), s.proj(), h) {
                return Err(format!(
                    "{name}: cached cartesianness of {h} disagrees with the definition"
                ));
            }
        }
        let d = DualFib::build(s).map_err(|e| format!("{name}: {e}"))?;
        let x = d.fib();
        for g in x.total().arrows() {
            let by_def = cartesian_by_definition(x.total(), x.base(), x.proj(), g);
            let (cached, unit_rep) = d.cartesian_char(s, g).map_err(|e| e.to_string())?;
            if by_def != unit_rep || cached != by_def {
                return Err(format!(
                    "{name}: comorphism {g}: definition {by_def}, (1,h) form {unit_rep}"
                ));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} comorphisms over {} fibrations agree", corpus.len()))
}

fn c2_cartesian_cancellation(corpus: &[(String, FibSetup)]) -> Check {
    let mut instances = 0;
    for (name, s) in corpus {
        let t = s.total();
        for (k1, h) in t.composable_pairs() {
            let k = t.compose(k1, h).expect("composable");
            if s.cartesian(k) && s.cartesian(h) {
                instances += 1;
                if !s.cartesian(k1) {
                    return Err(format!("{name}: {k} = {k1}.{h} with {k}, {h} cartesian but {k1} not"));
                }
            }
        }
    }
    Ok(format!("{instances} instances, 0 counterexamples"))
}

fn c3_dual_is_fibration(corpus: &[(String, FibSetup)]) -> Check {
    for (name, s) in corpus {
        let d = DualFib::build(s).map_err(|e| format!("{name}: {e}"))?;
        let x = d.fib();
        let r = validate_category(x.total());
        if !r.is_empty() {
            return Err(format!("{name}: X* is not a category:\n{r}"));
        }
        let r = validate_functor(x.total(), x.base(), x.proj());
        if !r.is_empty() {
            return Err(format!("{name}: X* -> B is not a functor:\n{r}"));
        }
        if let Err(m) = x.check_fibration() {
            return Err(format!("{name}: X* is not a fibration: {m:?}"));
        }
    }
    if corpus.len() < 10 {
        return Err(format!("only {} families", corpus.len()));
    }
    Ok(format!("{} families", corpus.len()))
}

fn c4_fibre_duality(corpus: &[(String, FibSetup)]) -> Check {
    let mut fibres = 0;
    for (name, s) in corpus {
        let d = DualFib::build(s).map_err(|e| format!("{name}: {e}"))?;
        for a in s.base().objects() {
            let fd = d.fibre_duality_iso(s, a).map_err(|e| format!("{name} over {a}: {e}"))?;
            let (n1, n2) = (fd.dual_fibre.category.num_arrows(), fd.fibre.category.num_arrows());
            if n1 != n2 {
                return Err(format!("{name} over {a}: {n1} dual fibre arrows vs {n2}"));
            }
            fibres += 1;
        }
    }
    Ok(format!("{fibres} fibres"))
}

fn c5_double_dual(corpus: &[(String, FibSetup)]) -> Check {
    let mut exhaustive = 0;
    for (name, s) in corpus {
        // double_dual_iso compares y over all vh factorizations of every arrow
        double_dual_iso(s).map_err(|e| format!("{name}: {e}"))?;
        if small(s) {
            exhaustive += 1;
        }
    }
    Ok(format!("{} fibrations, {exhaustive} with <= 30 arrows", corpus.len()))
}

fn c6_group_example() -> Check {
    let s = gen::sign_fibration();
    let g = GroupTable::symmetric(3);
    let sign = gen::sign_hom(3);
    let n = g.order();
    // brute force: pairs (v, h) in S3 x S3 with sign(v) = 0; any h is cartesian
    let spans: Vec<(usize, usize)> = (0..n)
        .flat_map(|v| (0..n).map(move |h| (v, h)))
        .filter(|&(v, _)| sign[v] == 0)
        .collect();
    // classes under (v, h) ~ (i v, i h) for i in A3
    let brute_classes: BTreeSet<BTreeSet<(usize, usize)>> = spans
        .iter()
        .map(|&(v, h)| {
            (0..n)
                .filter(|&i| sign[i] == 0)
                .map(|i| (g.mul(i, v), g.mul(i, h)))
                .collect()
        })
        .collect();
    let lib_spans = enumerate_spans(&s);
    let classes = enumerate_comorphisms(&s).map_err(|e| e.to_string())?;
    if spans.len() != 18 || lib_spans.len() != 18 || brute_classes.len() != 6 || classes.len() != 6 {
        return Err(format!(
            "spans {} / {}, classes {} / {}",
            spans.len(),
            lib_spans.len(),
            brute_classes.len(),
            classes.len()
        ));
    }
    let d = DualFib::build(&s).map_err(|e| e.to_string())?;
    let j = |c: &Comorphism| -> Result<usize, String> {
        let vals: BTreeSet<usize> = c.members.iter().map(|m| g.mul(g.inverse(m.v.0), m.h.0)).collect();
        match vals.len() {
            1 => Ok(*vals.iter().next().unwrap()),
            _ => Err("J is not constant on a class".into()),
        }
    };
    let jmap: Vec<usize> = d.classes().iter().map(j).collect::<Result<_, _>>()?;
    if jmap.iter().collect::<BTreeSet<_>>().len() != n {
        return Err("J is not a bijection".into());
    }
    let x = d.fib().total();
    for (c1, c2) in x.composable_pairs() {
        let c = x.compose(c1, c2).unwrap();
        if jmap[c.0] != g.mul(jmap[c1.0], jmap[c2.0]) {
            return Err(format!("J does not preserve the composite of {c1} and {c2}"));
        }
    }
    for c in x.arrows() {
        if sign[jmap[c.0]] != d.fib().proj().arr(c).0 {
            return Err(format!("J does not commute with the projection at {c}"));
        }
    }
    // K' = dual fibre, i(v) = {(v, 1)} reverses products
    let k: Vec<usize> = (0..n).filter(|&v| sign[v] == 0).collect();
    let i = |v: usize| d.vertical_class(ArrId(v)).expect("vertical");
    for &v1 in &k {
        if jmap[i(v1).0] != g.inverse(v1) {
            return Err(format!("J(i({v1})) is not the inverse of {v1}"));
        }
        for &v2 in &k {
            if x.compose(i(v1), i(v2)) != Some(i(g.mul(v2, v1))) {
                return Err(format!("i({v1}).i({v2}) != i({v2}.{v1})"));
            }
        }
    }
    let fd = d
        .fibre_duality_iso(&s, s.base().objects().next().unwrap())
        .map_err(|e| e.to_string())?;
    Ok(format!(
        "18 spans, 6 classes, J iso over Z2, K' ({} elements) anti-isomorphic to K",
        fd.dual_fibre.category.num_arrows()
    ))
}

fn c7_agreement() -> Check {
    let fams = indexed_families();
    let mut non_identity = false;
    let mut group_action = false;
    for (name, f) in &fams {
        check_dual_agreement(f).map_err(|e| format!("{name}: {e}"))?;
        let b = &f.base;
        let nontrivial = b.arrows().any(|a| {
            let r = &f.reindex[a.0];
            !b.is_identity(a)
                && (r.obj_map.iter().enumerate().any(|(x, y)| x != y.0)
                    || r.arr_map.iter().enumerate().any(|(x, y)| x != y.0))
        });
        non_identity |= nontrivial;
        group_action |= nontrivial && b.num_objects() == 1 && b.arrows().all(|a| b.inverse(a).is_some());
    }
    if !non_identity || !group_action {
        return Err("corpus lacks a non-identity reindexing or a group action".into());
    }
    Ok(format!("{} indexed categories", fams.len()))
}

fn c8_well_defined(corpus: &[(String, FibSetup)]) -> Check {
    let mut checks = 0usize;
    let mut instances = 0;
    for (name, s) in corpus.iter().filter(|(_, s)| small(s)) {
        instances += 1;
        let classes = enumerate_comorphisms(s).map_err(|e| e.to_string())?;
        for c1 in &classes {
            for c2 in classes.iter().filter(|c| c.src == c1.tgt) {
                let expected = compose_comorphisms(s, c1, c2).map_err(|e| e.to_string())?;
                for &a in &c1.members {
                    for &b in &c2.members {
                        let lifts = s
                            .cartesian_lifts(s.proj().arr(a.h), b.apex(s))
                            .map_err(|e| e.to_string())?;
                        for k in lifts {
                            let span = compose_spans_via(s, a, b, k).map_err(|e| format!("{name}: {e}"))?;
                            if !expected.contains(&span) {
                                return Err(format!("{name}: composite via ({a:?}, {b:?}, {k}) leaves the class"));
                            }
                            checks += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(format!(
        "{checks} representative/lift choices over {instances} fibrations"
    ))
}

fn c9_factx(corpus: &[(String, FibSetup)]) -> Check {
    let mut n = 0;
    for (name, s) in corpus {
        let d = DualFib::build(s).map_err(|e| e.to_string())?;
        let x = d.fib().total();
        for (g, c) in d.classes().iter().enumerate() {
            for m in &c.members {
                let v = d.vertical_class(m.v).ok_or("v not vertical")?;
                let h = d
                    .class_of_span(VhSpan {
                        v: s.total().identity(m.apex(s)),
                        h: m.h,
                    })
                    .ok_or("(1,h) is not a span")?;
                if x.compose(v, h) != Some(ArrId(g)) {
                    return Err(format!("{name}: {{(v,1)}}.{{(1,h)}} != class {g}"));
                }
                n += 1;
            }
        }
    }
    Ok(format!("{n} representatives"))
}

fn c10_cli() -> Check {
    let bin = env!("CARGO_BIN_EXE_dualfib");
    let gallery = Path::new(env!("CARGO_MANIFEST_DIR")).join("gallery");
    let tmp = std::env::temp_dir().join(format!("dualfib-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&tmp).map_err(|e| e.to_string())?;
    let mut files: Vec<PathBuf> = std::fs::read_dir(&gallery)
        .map_err(|e| e.to_string())?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "cat"))
        .collect();
    files.sort();
    let mut negatives: Vec<PathBuf> = std::fs::read_dir(gallery.join("negative"))
        .map_err(|e| e.to_string())?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .collect();
    negatives.sort();
    let run = |args: &[&Path]| -> Result<i32, String> {
        let out = Command::new(bin).args(args).output().map_err(|e| e.to_string())?;
        Ok(out.status.code().unwrap_or(-1))
    };
    for f in files.iter().chain(&negatives) {
        let text = std::fs::read_to_string(f).map_err(|e| e.to_string())?;
        let doc = parse(&text).map_err(|e| format!("{}: {e}", f.display()))?;
        if print(&doc) != text {
            return Err(format!("{}: round trip is not byte-identical", f.display()));
        }
    }
    for f in &files {
        let d1 = tmp.join("d1.cat");
        let d2 = tmp.join("d2.cat");
        for (input, output) in [(f.as_path(), &d1), (&d1, &d2)] {
            let code = run(&[Path::new("dualize"), input, Path::new("-o"), output])?;
            if code != 0 {
                return Err(format!("dualize {} exited {code}", input.display()));
            }
        }
        let code = run(&[Path::new("iso-check"), f, &d2])?;
        if code != 0 {
            return Err(format!("iso-check {} X** exited {code}", f.display()));
        }
    }
    let _ = std::fs::remove_dir_all(&tmp);
    Ok(format!(
        "{} gallery files, {} round trips",
        files.len(),
        files.len() + negatives.len()
    ))
}

fn main() {
    let start = Instant::now();
    let corpus = corpus();
    let criteria: Vec<Criterion> = vec![
        (
            "1 cartesian = (1,h) representative in X*",
            Box::new(|| c1_cartesian_oracle(&corpus)),
        ),
        ("2 cartesian cancellation", Box::new(|| c2_cartesian_cancellation(&corpus))),
        (
            "3 X* is a category, functor and fibration",
            Box::new(|| c3_dual_is_fibration(&corpus)),
        ),
        (
            "4 fibre(X*, A) ~ fibre(X, A)^op",
            Box::new(|| c4_fibre_duality(&corpus)),
        ),
        ("5 y: X -> X** is an iso over B", Box::new(|| c5_double_dual(&corpus))),
        ("6 sign S3 -> Z2 example", Box::new(c6_group_example)),
        ("7 Grothendieck agreement", Box::new(c7_agreement)),
        (
            "8 comorphism composition is well defined",
            Box::new(|| c8_well_defined(&corpus)),
        ),
        ("9 {(v,1)}.{(1,h)} factorization", Box::new(|| c9_factx(&corpus))),
        ("10 CLI double dualize + round trip", Box::new(c10_cli)),
    ];
    let mut failed = 0;
    for (name, check) in &criteria {
        match check() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    println!(
        "{} of {} criteria passed in {:.1?}",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
