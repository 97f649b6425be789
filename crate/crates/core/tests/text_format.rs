use std::path::Path;

use dualfib::gen::{self, indexed_families};
use dualfib::io::{gallery, negative_gallery, parse, print, Document};
use dualfib::{Error, FinCategory};

fn gallery_dir() -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("gallery")
}

#[test]
fn gallery_files_match_the_generators() {
    for (file, doc) in gallery() {
        let text = std::fs::read_to_string(gallery_dir().join(&file)).unwrap();
        assert_eq!(
            text,
            print(&doc),
            "{file} is stale; run `cargo run --example write_gallery`"
        );
        assert_eq!(parse(&text).unwrap(), doc, "{file}");
    }
    for (file, doc) in negative_gallery() {
        let text = std::fs::read_to_string(gallery_dir().join("negative").join(&file)).unwrap();
        assert_eq!(text, print(&doc), "{file}");
    }
}

#[test]
fn sign_gallery_file_is_a_fibration() {
    let text = std::fs::read_to_string(gallery_dir().join("sign-s3.cat")).unwrap();
    let s = parse(&text).unwrap().to_fib_setup().unwrap();
    assert!(s.is_fibration());
    assert_eq!(s.total().num_arrows(), 6);
}

#[test]
fn terminal_category_document() {
    let doc = parse("catdoc 1 category\ncategory T\n  object *\n  arrow 1 : * -> *\n  identity * = 1\nend\n").unwrap();
    let Document::Category { category, .. } = &doc else {
        panic!("wrong kind")
    };
    assert_eq!((category.num_objects(), category.num_arrows()), (1, 1));
    assert_eq!(print(&doc).lines().count(), 7);
}

#[test]
fn unknown_arrow_in_compose_names_it_with_position() {
    let text =
        "catdoc 1 category\ncategory T\n  object *\n  arrow 1 : * -> *\n  identity * = 1\n  compose 1 g = 1\nend\n";
    match parse(text) {
        Err(Error::Parse { line, column, message }) => {
            assert_eq!(line, 6);
            assert_eq!(column, 13);
            assert!(message.contains("'g'"), "{message}");
        }
        other => panic!("expected a parse error, got {other:?}"),
    }
}

#[test]
fn unknown_directives_and_versions_are_rejected() {
    assert!(parse("catdoc 2 category\n").is_err());
    assert!(parse("catdoc 1 category\ncategory T\n  object *\n  colour * red\nend\n").is_err());
    assert!(parse("catdoc 1 sheaf\n").is_err());
    assert!(parse("").is_err());
}

#[test]
fn comments_and_blank_lines_are_ignored() {
    let plain = print(&Document::Category {
        name: "C".into(),
        category: FinCategory::chain(2),
    });
    let commented: String = plain
        .lines()
        .flat_map(|l| [l.to_string(), "  # note".into(), String::new()])
        .collect::<Vec<_>>()
        .join("\n");
    assert_eq!(parse(&commented).unwrap(), parse(&plain).unwrap());
}

#[test]
fn opposites_reparse() {
    for c in [
        FinCategory::chain(3),
        gen::GroupTable::symmetric(3).to_category(),
        gen::Shape::Idempotent.category(),
    ] {
        let doc = Document::Category {
            name: "Cop".into(),
            category: c.opposite(),
        };
        let text = print(&doc);
        assert_eq!(parse(&text).unwrap(), doc);
    }
}

#[test]
fn indexed_and_grothendieck_documents_round_trip() {
    for (name, f) in indexed_families() {
        let doc = Document::Indexed {
            base_name: "B".into(),
            indexed: f.clone(),
        };
        let text = print(&doc);
        assert_eq!(parse(&text).unwrap(), doc, "{name}");
        assert_eq!(print(&parse(&text).unwrap()), text, "{name}");
        let g = f.grothendieck().unwrap();
        let gdoc = Document::from_fibration("G", "B", "p", &g.fib);
        let gtext = print(&gdoc);
        assert_eq!(print(&parse(&gtext).unwrap()), gtext, "{name}");
    }
}
