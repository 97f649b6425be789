//! The example documents shipped in `gallery/`, built from the generators.

use crate::category::FinCategory;
use crate::gen::{self, GroupTable, IndexedSpec, NonFibrationSpec, Shape};
use crate::io::text::Document;

fn fib(file: &str, total: &str, base: &str, s: &crate::FibSetup) -> (String, Document) {
    (file.to_string(), Document::from_fibration(total, base, "p", s))
}

fn indexed(file: &str, base: &str, spec: IndexedSpec) -> (String, Document) {
    let f = gen::gen_indexed(&spec).expect("generated indexed category");
    (
        file.to_string(),
        Document::Indexed {
            base_name: base.to_string(),
            indexed: f,
        },
    )
}

/// Fibrations and indexed categories, keyed by file name.
pub fn gallery() -> Vec<(String, Document)> {
    let interval = Shape::Interval.category();
    vec![
        fib(
            "terminal.cat",
            "X",
            "B",
            &gen::identity_fibration(FinCategory::terminal()),
        ),
        fib(
            "identity-chain3.cat",
            "X",
            "B",
            &gen::identity_fibration(FinCategory::chain(3)),
        ),
        fib("sign-s3.cat", "S3", "Z2", &gen::sign_fibration()),
        fib(
            "z4-mod-2.cat",
            "Z4",
            "Z2",
            &gen::gen_group_hom(&GroupTable::cyclic(4), &GroupTable::cyclic(2), &[0, 1, 0, 1]).expect("hom"),
        ),
        fib(
            "interval-x-idempotent.cat",
            "X",
            "B",
            &gen::gen_product(&interval, &Shape::Idempotent.category()),
        ),
        fib(
            "z2-x-chain2.cat",
            "X",
            "B",
            &gen::gen_product(&Shape::Cyclic(2).category(), &Shape::Chain(2).category()),
        ),
        indexed("z2-action.cat", "Z2", IndexedSpec::GroupAction { order: 2 }),
        indexed("interval-reindex.cat", "I", IndexedSpec::IntervalReindex),
        indexed(
            "chains.cat",
            "C3",
            IndexedSpec::Chains {
                base_len: 3,
                max_fibre_len: 2,
                seed: 7,
            },
        ),
    ]
}

/// Functors that are not fibrations.
pub fn negative_gallery() -> Vec<(String, Document)> {
    [
        (
            "z2-into-z4.cat",
            "Z2",
            "Z4",
            NonFibrationSpec::NonSurjectiveHom { order: 2 },
        ),
        ("missing-arrow.cat", "X", "I", NonFibrationSpec::MissingArrow),
        ("no-cartesian-lift.cat", "X", "I", NonFibrationSpec::NoCartesianLift),
    ]
    .into_iter()
    .map(|(file, t, b, spec)| {
        let (s, _) = gen::gen_non_fibration(&spec).expect("generated non-fibration");
        fib(file, t, b, &s)
    })
    .collect()
}
