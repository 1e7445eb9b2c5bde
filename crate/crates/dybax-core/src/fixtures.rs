//! Built-in worked examples.
//!
//! Two instances cover everything the crate does:
//!
//! * the six-element left quasigroup paired with `S3`, with a
//!   three-point action module and an inner family of conjugations
//!   (the richest case: non-associative, non-abelian, genuinely
//!   parameter-dependent boundary maps);
//! * the cyclic group `Z3` paired with itself by the identity, a
//!   one-point module, and the identity family (the degenerate case:
//!   the braiding is the flip and the boundary map is the identity).
//!
//! The same data is available both as live structures and as documents,
//! so the command line can run without any input files.

use std::collections::BTreeMap;

use crate::document::{Document, FamilySpec, GroupSpec, ModuleSpec, QuasigroupSpec};
use crate::finite_algebra::{build_named_group, validate_left_quasigroup};
use crate::module_theory::{module_from_action, Family, ModuleX};
use crate::reflection::family_inner;
use crate::yang_baxter::Structure;

const SIX_LABELS: [&str; 6] = ["e", "l1", "l2", "l3", "l4", "l5"];

const SIX_TABLE: [[usize; 6]; 6] = [
    [0, 1, 2, 3, 4, 5],
    [1, 5, 3, 4, 2, 0],
    [2, 3, 5, 1, 0, 4],
    [3, 4, 0, 2, 5, 1],
    [4, 0, 1, 5, 3, 2],
    [5, 2, 4, 0, 1, 3],
];

/// Pairing of the six-element quasigroup with `S3`, as indices into the
/// lexicographic image-word order `123, 132, 213, 231, 312, 321`.
const SIX_PI: [usize; 6] = [0, 3, 4, 2, 5, 1];

const SIX_X_LABELS: [&str; 3] = ["x1", "x2", "x3"];

/// The three-point action of the quasigroup: row per element, as
/// permutations of `x1, x2, x3`.
const SIX_ACTION: [[usize; 3]; 6] = [
    [0, 1, 2],
    [1, 0, 2],
    [2, 1, 0],
    [0, 2, 1],
    [1, 2, 0],
    [2, 0, 1],
];

/// The anchor map fixing the shift on the three-point carrier.
const SIX_ANCHORS: [usize; 3] = [2, 4, 3];

/// Conjugators of the inner family, as `S3` indices: `312`, `321`, `213`.
const SIX_CONJUGATORS: [usize; 3] = [4, 5, 2];

/// The six-element quasigroup paired with `S3`.
pub fn structure_six() -> Structure {
    let labels = SIX_LABELS.map(String::from).to_vec();
    let lq = validate_left_quasigroup(labels, SIX_TABLE.concat()).unwrap();
    let group = build_named_group("S3").unwrap();
    Structure::new(lq, group, SIX_PI.to_vec()).unwrap()
}

/// The cyclic group `Z3` paired with itself by the identity.
pub fn structure_z3() -> Structure {
    let group = build_named_group("Z3").unwrap();
    let labels = group.labels().to_vec();
    let lq = validate_left_quasigroup(labels, group.table().to_vec()).unwrap();
    Structure::new(lq, group, vec![0, 1, 2]).unwrap()
}

/// The three-point action module over [`structure_six`].
pub fn module_action_six(s: &Structure) -> ModuleX {
    module_from_action(
        s,
        SIX_X_LABELS.map(String::from).to_vec(),
        SIX_ACTION.concat(),
        SIX_ANCHORS.to_vec(),
    )
    .unwrap()
}

/// The inner family of conjugations over [`structure_six`].
pub fn family_inner_six(s: &Structure) -> Family {
    family_inner(s, &conjugators_six(s))
}

/// The conjugators of [`family_inner_six`], as group indices.
pub fn conjugators_six(_s: &Structure) -> Vec<usize> {
    SIX_CONJUGATORS.to_vec()
}

/// Names of the built-in documents.
pub fn fixture_names() -> [&'static str; 3] {
    ["example-5.3", "example-8.9", "zn-flip"]
}

/// A built-in document by name, or `None` for anything else.
pub fn document(name: &str) -> Option<Document> {
    match name {
        "example-5.3" => Some(document_six(name, false)),
        "example-8.9" => Some(document_six(name, true)),
        "zn-flip" => Some(document_z3(name)),
        _ => None,
    }
}

fn document_six(name: &str, with_family: bool) -> Document {
    let labels: Vec<String> = SIX_LABELS.map(String::from).to_vec();
    let table = SIX_TABLE
        .iter()
        .map(|row| row.iter().map(|&v| labels[v].clone()).collect())
        .collect();
    let g = build_named_group("S3").unwrap();
    let pi: BTreeMap<String, String> = SIX_LABELS
        .iter()
        .zip(SIX_PI)
        .map(|(&l, v)| (l.to_string(), g.label(v).to_string()))
        .collect();
    let x_labels: Vec<String> = SIX_X_LABELS.map(String::from).to_vec();
    let action = SIX_ACTION
        .iter()
        .map(|row| row.iter().map(|&v| x_labels[v].clone()).collect())
        .collect();
    let anchors = SIX_ANCHORS.iter().map(|&v| labels[v].clone()).collect();
    // cycle notation here, exercising the alias on every compile
    let conjugators = ["(132)", "(13)", "(12)"].map(String::from).to_vec();
    Document {
        name: name.into(),
        quasigroup: QuasigroupSpec {
            labels,
            table,
            unit: "e".into(),
        },
        group: GroupSpec::Named("S3".into()),
        pi,
        module: ModuleSpec::Action {
            labels: x_labels,
            table: action,
            anchors,
        },
        family: with_family.then_some(FamilySpec::Inner { conjugators }),
        checks: None,
        overrides: vec![],
    }
}

fn document_z3(name: &str) -> Document {
    let labels: Vec<String> = ["0", "1", "2"].map(String::from).to_vec();
    let table = (0..3)
        .map(|a| (0..3).map(|b| labels[(a + b) % 3].clone()).collect())
        .collect();
    let pi = labels.iter().map(|l| (l.clone(), l.clone())).collect();
    Document {
        name: name.into(),
        quasigroup: QuasigroupSpec {
            labels,
            table,
            unit: "0".into(),
        },
        group: GroupSpec::Named("Z3".into()),
        pi,
        module: ModuleSpec::OnePoint {
            label: "pt".into(),
            anchor: "0".into(),
        },
        family: Some(FamilySpec::Identity),
        checks: None,
        overrides: vec![],
    }
}
