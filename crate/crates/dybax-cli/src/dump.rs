//! Table dumps for `build`: deterministic, label-based, re-parseable.
//!
//! The text form is line oriented:
//!
//! ```text
//! dump example-8.9 k
//! table k
//! lambda e
//! e x1 -> e x1
//! ...
//! ```
//!
//! Blocks are sorted by parameter label and rows by argument labels, so
//! two dumps of the same document diff cleanly. [`parse_text`] inverts
//! [`render_text`] exactly; the JSON form round-trips through serde.

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use dybax_core::quiver::{fiber_product, lift_solution, phi_maps, q_object, Quiver};
use dybax_core::{Error, Result};

use crate::instance::Instance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum What {
    /// The braiding, one row per (a, b).
    Sigma,
    /// The boundary map, one row per (a, x); needs a family.
    K,
    /// The braiding and boundary maps lifted to composable arrow pairs.
    Lifts,
    /// The arrows of the embedded quivers over L and over the module.
    Quiver,
}

impl What {
    pub fn name(self) -> &'static str {
        match self {
            What::Sigma => "sigma",
            What::K => "k",
            What::Lifts => "lifts",
            What::Quiver => "quiver",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dump {
    pub name: String,
    pub what: String,
    pub tables: Vec<TableDump>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableDump {
    pub table: String,
    pub blocks: Vec<Block>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub lambda: String,
    pub rows: Vec<Row>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub args: Vec<String>,
    pub value: Vec<String>,
}

pub fn build(inst: &Instance, what: What) -> Result<Dump> {
    let tables = match what {
        What::Sigma => vec![sigma_table(inst)],
        What::K => vec![k_table(inst)?],
        What::Lifts => lift_tables(inst),
        What::Quiver => quiver_tables(inst),
    };
    Ok(Dump {
        name: inst.name.clone(),
        what: what.name().into(),
        tables: tables.into_iter().map(sorted).collect(),
    })
}

fn sorted(mut t: TableDump) -> TableDump {
    for b in &mut t.blocks {
        b.rows.sort_by(|x, y| x.args.cmp(&y.args));
    }
    t.blocks.sort_by(|x, y| x.lambda.cmp(&y.lambda));
    t
}

fn sigma_table(inst: &Instance) -> TableDump {
    let s = &inst.s;
    let n = s.n();
    let blocks = (0..n)
        .map(|lam| {
            let mut rows = Vec::with_capacity(n * n);
            for a in 0..n {
                for b in 0..n {
                    let (xi, eta) = inst.sigma.at(lam, a, b);
                    rows.push(Row {
                        args: vec![s.label(a).into(), s.label(b).into()],
                        value: vec![s.label(xi).into(), s.label(eta).into()],
                    });
                }
            }
            Block {
                lambda: s.label(lam).into(),
                rows,
            }
        })
        .collect();
    TableDump {
        table: "sigma".into(),
        blocks,
    }
}

fn k_table(inst: &Instance) -> Result<TableDump> {
    let k = inst.k.as_ref().ok_or_else(|| {
        Error::Invalid(
            "the document provides no family, so there is no boundary map to build".into(),
        )
    })?;
    let s = &inst.s;
    let m = &inst.module;
    let (n, nx) = (s.n(), m.size());
    let blocks = (0..n)
        .map(|lam| {
            let mut rows = Vec::with_capacity(n * nx);
            for a in 0..n {
                for x in 0..nx {
                    let (a2, x2) = k.at(lam, a, x);
                    rows.push(Row {
                        args: vec![s.label(a).into(), m.label(x).into()],
                        value: vec![s.label(a2).into(), m.label(x2).into()],
                    });
                }
            }
            Block {
                lambda: s.label(lam).into(),
                rows,
            }
        })
        .collect();
    Ok(TableDump {
        table: "k".into(),
        blocks,
    })
}

/// One block per source parameter; each row maps a composable arrow pair
/// to its image pair under the lifted map.
fn morphism_table(name: &str, q1: &Quiver, q2: &Quiver, map: &[usize], pairs: &[(usize, usize)], h_labels: &[String]) -> TableDump {
    let mut blocks: Vec<Block> = h_labels
        .iter()
        .map(|l| Block {
            lambda: l.clone(),
            rows: Vec::new(),
        })
        .collect();
    for (p, &(i, j)) in pairs.iter().enumerate() {
        let (i2, j2) = pairs[map[p]];
        blocks[q1.src[i]].rows.push(Row {
            args: vec![q1.labels[i].clone(), q2.labels[j].clone()],
            value: vec![q1.labels[i2].clone(), q2.labels[j2].clone()],
        });
    }
    TableDump {
        table: name.into(),
        blocks,
    }
}

fn lift_tables(inst: &Instance) -> Vec<TableDump> {
    let s = &inst.s;
    let h_labels: Vec<String> = s.lq().labels().to_vec();
    let l_obj = s.l_object();
    let ql = q_object(&l_obj, &h_labels, &h_labels);
    let fp_ll = fiber_product(&ql, &ql).expect("same parameter set");
    let phi_ll = phi_maps(&l_obj, &l_obj, &fp_ll);
    let sig_lift = lift_solution(&fp_ll, &phi_ll, &inst.sigma.to_morphism());
    let mut out = vec![morphism_table(
        "sigma-lift",
        &ql,
        &ql,
        &sig_lift.map,
        &fp_ll.pairs,
        &h_labels,
    )];
    if let Some(k) = &inst.k {
        let m = &inst.module;
        let qx = q_object(&m.obj, &h_labels, &m.labels);
        let fp_lx = fiber_product(&ql, &qx).expect("same parameter set");
        let phi_lx = phi_maps(&l_obj, &m.obj, &fp_lx);
        let k_lift = lift_solution(&fp_lx, &phi_lx, &k.to_morphism());
        out.push(morphism_table(
            "k-lift",
            &ql,
            &qx,
            &k_lift.map,
            &fp_lx.pairs,
            &h_labels,
        ));
    }
    out
}

/// The raw quivers: block per source, row per arrow, value its target.
fn quiver_tables(inst: &Instance) -> Vec<TableDump> {
    let s = &inst.s;
    let h_labels: Vec<String> = s.lq().labels().to_vec();
    let arrows = |name: &str, q: &Quiver, fiber_labels: &[String]| {
        let mut blocks: Vec<Block> = h_labels
            .iter()
            .map(|l| Block {
                lambda: l.clone(),
                rows: Vec::new(),
            })
            .collect();
        for i in 0..q.len() {
            blocks[q.src[i]].rows.push(Row {
                args: vec![fiber_labels[i % fiber_labels.len()].clone()],
                value: vec![h_labels[q.tgt[i]].clone()],
            });
        }
        TableDump {
            table: name.into(),
            blocks,
        }
    };
    let l_obj = s.l_object();
    let ql = q_object(&l_obj, &h_labels, &h_labels);
    let m = &inst.module;
    let qx = q_object(&m.obj, &h_labels, &m.labels);
    vec![
        arrows("quiver-L", &ql, &h_labels),
        arrows("quiver-X", &qx, &m.labels),
    ]
}

pub fn render_text(d: &Dump) -> String {
    let mut out = format!("dump {} {}\n", d.name, d.what);
    for t in &d.tables {
        out.push_str(&format!("table {}\n", t.table));
        for b in &t.blocks {
            out.push_str(&format!("lambda {}\n", b.lambda));
            for r in &b.rows {
                out.push_str(&format!("{} -> {}\n", r.args.join(" "), r.value.join(" ")));
            }
        }
    }
    out.pop();
    out
}

pub fn parse_text(text: &str) -> Result<Dump> {
    let bad = |line: &str| Error::Invalid(format!("cannot parse dump line `{line}`"));
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| bad(""))?;
    // The document name may contain spaces; the table kind never does.
    let (name, what) = header
        .strip_prefix("dump ")
        .and_then(|rest| rest.rsplit_once(' '))
        .ok_or_else(|| bad(header))?;
    let mut dump = Dump {
        name: name.into(),
        what: what.into(),
        tables: Vec::new(),
    };
    for line in lines {
        if let Some(t) = line.strip_prefix("table ") {
            dump.tables.push(TableDump {
                table: t.into(),
                blocks: Vec::new(),
            });
        } else if let Some(l) = line.strip_prefix("lambda ") {
            let t = dump.tables.last_mut().ok_or_else(|| bad(line))?;
            t.blocks.push(Block {
                lambda: l.into(),
                rows: Vec::new(),
            });
        } else if let Some((args, value)) = line.split_once(" -> ") {
            let b = dump
                .tables
                .last_mut()
                .and_then(|t| t.blocks.last_mut())
                .ok_or_else(|| bad(line))?;
            b.rows.push(Row {
                args: args.split_whitespace().map(String::from).collect(),
                value: value.split_whitespace().map(String::from).collect(),
            });
        } else if !line.trim().is_empty() {
            return Err(bad(line));
        }
    }
    Ok(dump)
}

#[cfg(test)]
mod tests {
    use super::*;
    use dybax_core::fixtures;

    fn instance(name: &str) -> Instance {
        let doc = fixtures::document(name).expect("built-in fixture");
        crate::instance::prepare(&doc).expect("fixtures compile")
    }

    #[test]
    fn every_dump_round_trips_through_the_text_form() {
        let inst = instance("example-8.9");
        for what in [What::Sigma, What::K, What::Lifts, What::Quiver] {
            let d = build(&inst, what).expect("fixture has a family");
            let parsed = parse_text(&render_text(&d)).expect("own output parses");
            assert_eq!(parsed, d, "{} dump changed across the text form", what.name());
            let json = serde_json::to_string(&d).unwrap();
            let from_json: Dump = serde_json::from_str(&json).unwrap();
            assert_eq!(from_json, d);
        }
    }

    #[test]
    fn dump_rows_are_sorted_and_labeled() {
        let inst = instance("example-8.9");
        let d = build(&inst, What::Sigma).expect("sigma always builds");
        let blocks = &d.tables[0].blocks;
        let lambdas: Vec<&str> = blocks.iter().map(|b| b.lambda.as_str()).collect();
        assert_eq!(lambdas, ["e", "l1", "l2", "l3", "l4", "l5"]);
        for b in blocks {
            assert_eq!(b.rows.len(), 36);
            let mut args: Vec<&Vec<String>> = b.rows.iter().map(|r| &r.args).collect();
            assert!(args.windows(2).all(|w| w[0] <= w[1]));
            args.dedup();
            assert_eq!(args.len(), 36);
        }
        // A frozen row: the braiding at parameter e sends (l1, l2) to (l5, l5).
        let row = blocks[0]
            .rows
            .iter()
            .find(|r| r.args == ["l1", "l2"])
            .unwrap();
        assert_eq!(row.value, ["l5", "l5"]);
    }

    #[test]
    fn dumping_k_without_a_family_is_an_error() {
        let mut doc = fixtures::document("example-8.9").unwrap();
        doc.family = None;
        let inst = crate::instance::prepare(&doc).unwrap();
        assert!(build(&inst, What::K).is_err());
        assert!(build(&inst, What::Sigma).is_ok());
    }
}
