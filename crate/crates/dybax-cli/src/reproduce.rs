//! Recomputing the published values of the built-in examples.

use serde::Serialize;

use dybax_core::document::compile;
use dybax_core::fixtures;
use dybax_core::reflection::k_from_family;
use dybax_core::yang_baxter::build_sigma;
use dybax_core::{Error, Result};

#[derive(Debug, Clone, Serialize)]
pub struct Comparison {
    pub what: String,
    pub got: String,
    pub want: String,
    pub ok: bool,
}

fn cmp(what: impl Into<String>, got: impl Into<String>, want: impl Into<String>) -> Comparison {
    let (got, want) = (got.into(), want.into());
    Comparison {
        what: what.into(),
        ok: got == want,
        got,
        want,
    }
}

/// Published shift table of the three-point module, derived in print from
/// the action table and the anchor map: rows follow e, l1..l5, columns
/// x1..x3.
const SHIFT_TABLE: [[&str; 3]; 6] = [
    ["l2", "l4", "l3"],
    ["l4", "l2", "l3"],
    ["l3", "l4", "l2"],
    ["l2", "l3", "l4"],
    ["l4", "l3", "l2"],
    ["l3", "l2", "l4"],
];

pub fn run(name: &str) -> Result<Vec<Comparison>> {
    let doc = fixtures::document(name).ok_or_else(|| {
        Error::Invalid(format!(
            "unknown fixture `{name}` (expected example-5.3, example-8.9, or zn-flip)"
        ))
    })?;
    let c = compile(&doc)?;
    let s = &c.structure;
    let mut out = Vec::new();
    match name {
        "example-5.3" => {
            let l = |i: usize| s.label(i).to_string();
            out.push(cmp("l2 l2", l(s.mul(2, 2)), "l5"));
            out.push(cmp("l2 l3", l(s.mul(2, 3)), "l1"));
            out.push(cmp("l3 l2", l(s.mul(3, 2)), "e"));
            let left = s.mul(s.mul(1, 2), 3);
            let right = s.mul(1, s.mul(2, 3));
            out.push(cmp("(l1 l2) l3", l(left), "l2"));
            out.push(cmp("l1 (l2 l3)", l(right), "l5"));
            out.push(cmp(
                "(l1 l2) l3 differs from l1 (l2 l3)",
                (left != right).to_string(),
                "true",
            ));
            for lam in 0..6 {
                for x in 0..3 {
                    out.push(cmp(
                        format!("shift {} . {}", s.label(lam), c.module.label(x)),
                        l(c.module.obj.dot(lam, x)),
                        SHIFT_TABLE[lam][x],
                    ));
                }
            }
        }
        "example-8.9" => {
            let fam = c.family.as_ref().expect("fixture ships with its family");
            let k = k_from_family(s, &c.module, fam);
            let show = |(a, x): (usize, usize)| {
                format!("({}, {})", s.label(a), c.module.label(x))
            };
            out.push(cmp("k(l1)(l2, x2)", show(k.at(1, 2, 1)), "(l2, x2)"));
            out.push(cmp("k(l3)(l2, x2)", show(k.at(3, 2, 1)), "(l5, x1)"));
        }
        "zn-flip" => {
            let sig = build_sigma(s);
            let n = s.n();
            let mut flip_breaks = 0usize;
            for lam in 0..n {
                for a in 0..n {
                    for b in 0..n {
                        if sig.at(lam, a, b) != (b, a) {
                            flip_breaks += 1;
                            out.push(cmp(
                                format!("sigma({})({}, {})", s.label(lam), s.label(a), s.label(b)),
                                format!(
                                    "({}, {})",
                                    s.label(sig.at(lam, a, b).0),
                                    s.label(sig.at(lam, a, b).1)
                                ),
                                format!("({}, {})", s.label(b), s.label(a)),
                            ));
                        }
                    }
                }
            }
            out.push(cmp(
                "braiding is the flip",
                format!("{} deviations", flip_breaks),
                "0 deviations",
            ));
            let fam = c.family.as_ref().expect("fixture ships with its family");
            let k = k_from_family(s, &c.module, fam);
            let mut k_breaks = 0usize;
            for lam in 0..n {
                for a in 0..n {
                    for x in 0..c.module.size() {
                        if k.at(lam, a, x) != (a, x) {
                            k_breaks += 1;
                            out.push(cmp(
                                format!(
                                    "k({})({}, {})",
                                    s.label(lam),
                                    s.label(a),
                                    c.module.label(x)
                                ),
                                format!(
                                    "({}, {})",
                                    s.label(k.at(lam, a, x).0),
                                    c.module.label(k.at(lam, a, x).1)
                                ),
                                format!("({}, {})", s.label(a), c.module.label(x)),
                            ));
                        }
                    }
                }
            }
            out.push(cmp(
                "identity-family boundary map is the identity",
                format!("{} deviations", k_breaks),
                "0 deviations",
            ));
        }
        _ => unreachable!("fixture names are matched above"),
    }
    Ok(out)
}
