//! Built-in arrangements every scenario and cross-check runs against.

use pil_core::{QArrangement, Q};

use crate::pencil::{build_pencil_arrangement, PencilConfig};
use crate::HarnessError;

fn qs(ns: &[i64]) -> Vec<Q> {
    ns.iter().map(|&n| Q::from_integer(n.into())).collect()
}

/// The arrangement file the prop1 scenario parses: six forms in four
/// variables, y1, y2, y3, y1-y4, y2-y4, y3-y4.
pub const SIX_FORM_FILE: &str = "\
# six forms in four variables
dim 4
form 1 0 0 0
form 0 1 0 0
form 0 0 1 0
form 1 0 0 -1
form 0 1 0 -1
form 0 0 1 -1
";

/// The six-form rank-4 arrangement (graphic, unimodular), built directly.
pub fn six_form_rank4() -> QArrangement {
    QArrangement::new(
        4,
        vec![
            qs(&[1, 0, 0, 0]),
            qs(&[0, 1, 0, 0]),
            qs(&[0, 0, 1, 0]),
            qs(&[1, 0, 0, -1]),
            qs(&[0, 1, 0, -1]),
            qs(&[0, 0, 1, -1]),
        ],
    )
    .expect("fixed corpus arrangement is valid")
}

/// Three generic lines in the plane (the rank-2 uniform matroid on three
/// elements).
pub fn u23() -> QArrangement {
    QArrangement::new(2, vec![qs(&[1, 0]), qs(&[0, 1]), qs(&[1, 1])])
        .expect("fixed corpus arrangement is valid")
}

/// The named corpus the lemma suite runs over: the two fixed arrangements
/// plus the pencil pairs at m = 2 and m = 3.
pub fn lemma_corpus(seed: u64) -> Result<Vec<(String, QArrangement)>, HarnessError> {
    let mut corpus = vec![
        ("six-form".to_string(), six_form_rank4()),
        ("u23".to_string(), u23()),
    ];
    for m in [2usize, 3] {
        let coplanar = build_pencil_arrangement(&PencilConfig::coplanar(m, seed))?;
        let generic = build_pencil_arrangement(&PencilConfig::generic(m, seed))?;
        corpus.push((format!("pencil-coplanar-m{m}"), coplanar));
        corpus.push((format!("pencil-generic-m{m}"), generic));
    }
    Ok(corpus)
}
