//! The JSON input format.
//!
//! A document names a left quasigroup, the group it is paired with, the
//! pairing itself, one module, and optionally a family of group
//! endomorphisms. Tables are arrays of arrays of label strings, so files
//! stay readable and diffs stay reviewable. Symmetric-group elements may
//! be written either as image words (`"231"`) or in cycle notation
//! (`"(123)"`); output always uses image words.
//!
//! A document may also carry `overrides`: single-entry edits applied to
//! the derived tables after pristine construction. They exist to plant
//! deliberate defects and confirm that the checkers catch them.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finite_algebra::{build_named_group, group_from_table, validate_left_quasigroup};
use crate::module_theory::{
    module_from_action, module_left_regular, module_map_ll, module_one_point, validate_family,
    Family, MapLlChoice, ModuleX,
};
use crate::reflection::{family_identity, family_inner, family_inverse, family_trivial};
use crate::yang_baxter::{Structure, TwistTable};

/// Top-level document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub name: String,
    pub quasigroup: QuasigroupSpec,
    pub group: GroupSpec,
    /// Pairing with the group: one group element per quasigroup label.
    pub pi: BTreeMap<String, String>,
    pub module: ModuleSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilySpec>,
    /// Check groups to run when `verify` is not given an explicit list.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checks: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub overrides: Vec<OverrideSpec>,
}

/// The left quasigroup: labels, row-major table, declared unit.
///
/// The unit is redundant (it is recoverable from the table) but declaring
/// it catches transposed tables early, so the compiler cross-checks it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuasigroupSpec {
    pub labels: Vec<String>,
    pub table: Vec<Vec<String>>,
    pub unit: String,
}

/// The paired group: either a stock name like `"S3"` / `"Z6"`, or an
/// explicit multiplication table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Named(String),
    Table {
        labels: Vec<String>,
        table: Vec<Vec<String>>,
    },
}

/// Which module the document puts on the other side of the braiding.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ModuleSpec {
    /// The quasigroup acting on itself.
    LeftRegular,
    /// A single point; `anchor` fixes where the point sits under the
    /// shift.
    OnePoint {
        #[serde(default = "default_point_label")]
        label: String,
        anchor: String,
    },
    /// The carrier of all maps `L -> L`, with the free map chosen either
    /// as evaluation at a point or as a constant.
    MapLl {
        #[serde(default, rename = "eval-at", skip_serializing_if = "Option::is_none")]
        eval_at: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        constant: Option<String>,
    },
    /// A genuine action of the quasigroup on a finite carrier, plus the
    /// anchor map fixing the shift. Rows of `table` follow the quasigroup
    /// label order; `anchors` assigns a quasigroup element to each carrier
    /// label.
    Action {
        labels: Vec<String>,
        table: Vec<Vec<String>>,
        anchors: Vec<String>,
    },
}

fn default_point_label() -> String {
    "pt".into()
}

/// A family of group endomorphisms, one per carrier element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FamilySpec {
    /// Every member collapses to the group unit.
    Trivial,
    /// Every member is the identity.
    Identity,
    /// Every member is inversion (needs an abelian group).
    Inverse,
    /// Member at `x` is conjugation by `conjugators[x]`.
    Inner { conjugators: Vec<String> },
    /// Arbitrary image tables, validated to be endomorphisms. Row `x`
    /// lists images of the group elements in label order.
    Explicit { maps: Vec<Vec<String>> },
}

/// A single-entry edit to a derived table.
///
/// `table` names what to edit: `"sigma"` takes args `[a, b]` and value
/// `[xi, eta]`; `"k"` takes args `[a, x]` and value `[a', x']`; `"mx"`
/// takes args `[a, x]` and value `[x']`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OverrideSpec {
    pub table: String,
    pub lambda: String,
    pub args: Vec<String>,
    pub value: Vec<String>,
}

/// Parses a document from JSON text.
pub fn parse_document(text: &str) -> Result<Document> {
    serde_json::from_str(text)
        .map_err(|e| Error::Invalid(format!("document does not match the schema: {e}")))
}

/// Serializes a document back to pretty JSON.
pub fn document_to_json(doc: &Document) -> String {
    serde_json::to_string_pretty(doc).expect("documents always serialize")
}

/// A document compiled to live tables. Overrides are carried along
/// unapplied, because they target tables (`sigma`, `k`) that the caller
/// builds on demand; see [`apply_overrides`].
#[derive(Debug, Clone)]
pub struct Compiled {
    pub name: String,
    pub structure: Structure,
    pub module: ModuleX,
    pub family: Option<Family>,
    pub checks: Option<Vec<String>>,
    pub overrides: Vec<OverrideSpec>,
}

/// Labels appear verbatim in dump rows and witness output, so they must
/// be non-empty and free of whitespace to keep those formats parseable.
fn check_labels(kind: &str, labels: &[String]) -> Result<()> {
    for l in labels {
        if l.is_empty() || l.chars().any(char::is_whitespace) {
            return Err(Error::Invalid(format!(
                "{kind} label `{l}` must be non-empty and contain no whitespace"
            )));
        }
    }
    Ok(())
}

/// Resolves every label and assembles the structure, module, and family.
pub fn compile(doc: &Document) -> Result<Compiled> {
    check_labels("quasigroup", &doc.quasigroup.labels)?;
    if let GroupSpec::Table { labels, .. } = &doc.group {
        check_labels("group", labels)?;
    }
    match &doc.module {
        ModuleSpec::OnePoint { label, .. } => {
            check_labels("module", std::slice::from_ref(label))?
        }
        ModuleSpec::Action { labels, .. } => check_labels("module", labels)?,
        _ => {}
    }
    let n = doc.quasigroup.labels.len();
    let table = resolve_rows(
        &doc.quasigroup.labels,
        &doc.quasigroup.table,
        n,
        n,
        "quasigroup",
    )?;
    let lq = validate_left_quasigroup(doc.quasigroup.labels.clone(), table)?;
    let declared = lq.index(&doc.quasigroup.unit).ok_or_else(|| {
        Error::Invalid(format!(
            "declared unit `{}` is not a quasigroup label",
            doc.quasigroup.unit
        ))
    })?;
    if declared != lq.unit() {
        return Err(Error::Invalid(format!(
            "declared unit `{}` but the table's unit is `{}`",
            doc.quasigroup.unit,
            lq.label(lq.unit())
        )));
    }

    let group = match &doc.group {
        GroupSpec::Named(name) => build_named_group(name)?,
        GroupSpec::Table { labels, table } => {
            let k = labels.len();
            let flat = resolve_rows(labels, table, k, k, "group")?;
            group_from_table(labels.clone(), flat)?
        }
    };

    for key in doc.pi.keys() {
        if lq.index(key).is_none() {
            return Err(Error::Invalid(format!(
                "pairing names an unknown element `{key}`"
            )));
        }
    }
    let mut pi = Vec::with_capacity(n);
    for l in lq.labels() {
        let target = doc
            .pi
            .get(l)
            .ok_or_else(|| Error::Invalid(format!("pairing does not cover `{l}`")))?;
        pi.push(group.resolve(target)?);
    }

    let structure = Structure::new(lq, group, pi)?;
    let module = build_module(&structure, &doc.module)?;
    let family = match &doc.family {
        None => None,
        Some(spec) => Some(build_family(&structure, &module, spec)?),
    };
    Ok(Compiled {
        name: doc.name.clone(),
        structure,
        module,
        family,
        checks: doc.checks.clone(),
        overrides: doc.overrides.clone(),
    })
}

fn build_module(s: &Structure, spec: &ModuleSpec) -> Result<ModuleX> {
    match spec {
        ModuleSpec::LeftRegular => Ok(module_left_regular(s)),
        ModuleSpec::OnePoint { label, anchor } => {
            Ok(module_one_point(s, label, element(s, anchor)?))
        }
        ModuleSpec::MapLl { eval_at, constant } => {
            let choice = match (eval_at, constant) {
                (Some(l), None) => MapLlChoice::EvalAt(element(s, l)?),
                (None, Some(l)) => MapLlChoice::Constant(element(s, l)?),
                _ => {
                    return Err(Error::Invalid(
                        "map-ll needs exactly one of `eval-at` and `constant`".into(),
                    ))
                }
            };
            module_map_ll(s, choice)
        }
        ModuleSpec::Action {
            labels,
            table,
            anchors,
        } => {
            let nx = labels.len();
            let action = resolve_rows(labels, table, s.n(), nx, "action")?;
            if anchors.len() != nx {
                return Err(Error::Invalid(format!(
                    "action module needs {nx} anchors, got {}",
                    anchors.len()
                )));
            }
            let f = anchors
                .iter()
                .map(|l| element(s, l))
                .collect::<Result<Vec<_>>>()?;
            module_from_action(s, labels.clone(), action, f)
        }
    }
}

fn build_family(s: &Structure, m: &ModuleX, spec: &FamilySpec) -> Result<Family> {
    let nx = m.size();
    match spec {
        FamilySpec::Trivial => Ok(family_trivial(s, nx)),
        FamilySpec::Identity => Ok(family_identity(s, nx)),
        FamilySpec::Inverse => family_inverse(s, nx),
        FamilySpec::Inner { conjugators } => {
            if conjugators.len() != nx {
                return Err(Error::Invalid(format!(
                    "inner family needs {nx} conjugators, got {}",
                    conjugators.len()
                )));
            }
            let cs = conjugators
                .iter()
                .map(|c| s.group().resolve(c))
                .collect::<Result<Vec<_>>>()?;
            Ok(family_inner(s, &cs))
        }
        FamilySpec::Explicit { maps } => {
            let g = s.group();
            let order = g.order();
            if maps.len() != nx {
                return Err(Error::Invalid(format!(
                    "explicit family needs {nx} maps, got {}",
                    maps.len()
                )));
            }
            let mut rows = Vec::with_capacity(nx);
            for row in maps {
                if row.len() != order {
                    return Err(Error::Invalid(format!(
                        "every explicit family map needs {order} images"
                    )));
                }
                rows.push(
                    row.iter()
                        .map(|l| g.resolve(l))
                        .collect::<Result<Vec<_>>>()?,
                );
            }
            let fam = Family { maps: rows };
            validate_family(s, &m.labels, &fam)?;
            Ok(fam)
        }
    }
}

/// Applies the document's single-entry edits.
///
/// Edits land after every table is built pristine, so an edited `mx`
/// entry does not leak into `k` or the lifts; each corruption is caught
/// exactly by the checks that scan the table it names.
pub fn apply_overrides(
    s: &Structure,
    overrides: &[OverrideSpec],
    module: &mut ModuleX,
    sigma: &mut TwistTable,
    mut k: Option<&mut TwistTable>,
) -> Result<()> {
    for ov in overrides {
        let lam = element(s, &ov.lambda)?;
        match ov.table.as_str() {
            "sigma" => {
                let [a, b] = pair(&ov.args, "sigma override args")?;
                let [l, r] = pair(&ov.value, "sigma override value")?;
                let (a, b) = (element(s, a)?, element(s, b)?);
                let (l, r) = (element(s, l)?, element(s, r)?);
                sigma.set(lam, a, b, l, r);
            }
            "k" => {
                let Some(k) = k.as_deref_mut() else {
                    return Err(Error::Invalid(
                        "cannot override `k`: the document has no family".into(),
                    ));
                };
                let [a, x] = pair(&ov.args, "k override args")?;
                let [a2, x2] = pair(&ov.value, "k override value")?;
                let (a, x) = (element(s, a)?, carrier(module, x)?);
                let (a2, x2) = (element(s, a2)?, carrier(module, x2)?);
                k.set(lam, a, x, a2, x2);
            }
            "mx" => {
                let [a, x] = pair(&ov.args, "mx override args")?;
                let v = single(&ov.value, "mx override value")?;
                let (a, x) = (element(s, a)?, carrier(module, x)?);
                let v = carrier(module, v)?;
                module.set_mx(lam, a, x, v);
            }
            other => {
                return Err(Error::Invalid(format!(
                    "unknown override table `{other}` (expected sigma, k, or mx)"
                )));
            }
        }
    }
    Ok(())
}

fn element(s: &Structure, label: &str) -> Result<usize> {
    s.lq()
        .index(label)
        .ok_or_else(|| Error::Invalid(format!("unknown element `{label}`")))
}

fn carrier(m: &ModuleX, label: &str) -> Result<usize> {
    m.index(label)
        .ok_or_else(|| Error::Invalid(format!("unknown carrier label `{label}`")))
}

fn pair<'a>(xs: &'a [String], what: &str) -> Result<[&'a str; 2]> {
    if let [a, b] = xs {
        Ok([a, b])
    } else {
        Err(Error::Invalid(format!("{what} must have two entries")))
    }
}

fn single<'a>(xs: &'a [String], what: &str) -> Result<&'a str> {
    if let [v] = xs {
        Ok(v)
    } else {
        Err(Error::Invalid(format!("{what} must have one entry")))
    }
}

fn resolve_rows(
    cells: &[String],
    rows: &[Vec<String>],
    nrows: usize,
    ncols: usize,
    what: &str,
) -> Result<Vec<usize>> {
    if rows.len() != nrows {
        return Err(Error::Invalid(format!(
            "{what} table must have {nrows} rows, got {}",
            rows.len()
        )));
    }
    let mut flat = Vec::with_capacity(nrows * ncols);
    for row in rows {
        if row.len() != ncols {
            return Err(Error::Invalid(format!(
                "every {what} row must have {ncols} entries, got {}",
                row.len()
            )));
        }
        for cell in row {
            flat.push(
                cells
                    .iter()
                    .position(|l| l == cell)
                    .ok_or_else(|| Error::Invalid(format!("unknown {what} label `{cell}`")))?,
            );
        }
    }
    Ok(flat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::yang_baxter::build_sigma;

    #[test]
    fn built_in_documents_round_trip_through_json() {
        for name in ["example-5.3", "example-8.9", "zn-flip"] {
            let doc = fixtures::document(name).unwrap();
            let text = document_to_json(&doc);
            let back = parse_document(&text).unwrap();
            assert_eq!(doc, back, "{name} changed across a JSON round trip");
        }
    }

    #[test]
    fn compiling_the_worked_example_matches_the_direct_constructors() {
        let doc = fixtures::document("example-8.9").unwrap();
        let c = compile(&doc).unwrap();
        let s = fixtures::structure_six();
        assert_eq!(c.structure.lq().table(), s.lq().table());
        assert_eq!(c.structure.group().labels(), s.group().labels());
        let m = fixtures::module_action_six(&s);
        assert_eq!(c.module.mx, m.mx);
        assert_eq!(c.module.obj.act, m.obj.act);
        let fam = fixtures::family_inner_six(&s);
        assert_eq!(c.family.as_ref().unwrap().maps, fam.maps);
    }

    #[test]
    fn cycle_notation_and_image_words_name_the_same_element() {
        let doc = fixtures::document("example-8.9").unwrap();
        let c = compile(&doc).unwrap();
        let g = c.structure.group();
        assert_eq!(g.resolve("(12)").unwrap(), g.resolve("213").unwrap());
        assert_eq!(g.resolve("(123)").unwrap(), g.resolve("231").unwrap());
        assert!(g.resolve("(17)").is_err());
    }

    #[test]
    fn schema_violations_are_reported_as_such() {
        assert!(matches!(
            parse_document("{\"name\": 3}"),
            Err(Error::Invalid(_))
        ));
        // an unknown field is a schema violation, not silent noise
        let mut doc = fixtures::document("zn-flip").unwrap();
        doc.name = "probe".into();
        let mut v: serde_json::Value = serde_json::from_str(&document_to_json(&doc)).unwrap();
        v["surprise"] = serde_json::json!(true);
        assert!(parse_document(&v.to_string()).is_err());
    }

    #[test]
    fn compile_rejects_broken_documents() {
        let base = fixtures::document("example-5.3").unwrap();

        let mut bad_row = base.clone();
        bad_row.quasigroup.table[1][1] = "l1".into();
        assert_eq!(
            compile(&bad_row).unwrap_err(),
            Error::RowNotPermutation("l1".into())
        );

        let mut bad_cell = base.clone();
        bad_cell.quasigroup.table[0][0] = "mystery".into();
        assert!(matches!(
            compile(&bad_cell).unwrap_err(),
            Error::Invalid(_)
        ));

        let mut bad_unit = base.clone();
        bad_unit.quasigroup.unit = "l1".into();
        assert!(matches!(
            compile(&bad_unit).unwrap_err(),
            Error::Invalid(_)
        ));

        let mut missing_pi = base.clone();
        missing_pi.pi.remove("l3");
        assert!(matches!(
            compile(&missing_pi).unwrap_err(),
            Error::Invalid(_)
        ));

        // a three-element quasigroup against a six-element group
        let mut short = fixtures::document("zn-flip").unwrap();
        short.group = GroupSpec::Named("S3".into());
        short.pi = [("0", "123"), ("1", "132"), ("2", "213")]
            .into_iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        assert_eq!(compile(&short).unwrap_err(), Error::MismatchedH);
    }

    #[test]
    fn map_ll_choice_must_be_unambiguous() {
        let mut doc = fixtures::document("zn-flip").unwrap();
        doc.module = ModuleSpec::MapLl {
            eval_at: None,
            constant: None,
        };
        assert!(matches!(compile(&doc).unwrap_err(), Error::Invalid(_)));
        doc.module = ModuleSpec::MapLl {
            eval_at: Some("0".into()),
            constant: Some("1".into()),
        };
        assert!(matches!(compile(&doc).unwrap_err(), Error::Invalid(_)));
        doc.module = ModuleSpec::MapLl {
            eval_at: Some("0".into()),
            constant: None,
        };
        assert!(compile(&doc).is_ok());
    }

    #[test]
    fn explicit_families_are_validated() {
        let mut doc = fixtures::document("zn-flip").unwrap();
        // constant-at-1 is not an endomorphism of Z3
        doc.family = Some(FamilySpec::Explicit {
            maps: vec![vec!["1".into(), "1".into(), "1".into()]],
        });
        assert_eq!(
            compile(&doc).unwrap_err(),
            Error::NotAHomomorphism("pt".into())
        );
        doc.family = Some(FamilySpec::Explicit {
            maps: vec![vec!["0".into(), "2".into(), "1".into()]],
        });
        assert!(compile(&doc).is_ok());
    }

    #[test]
    fn overrides_edit_exactly_the_named_entry() {
        let doc = fixtures::document("example-8.9").unwrap();
        let c = compile(&doc).unwrap();
        let s = &c.structure;
        let mut module = c.module.clone();
        let mut sigma = build_sigma(s);
        let pristine = sigma.clone();
        let ov = OverrideSpec {
            table: "sigma".into(),
            lambda: "e".into(),
            args: vec!["l1".into(), "l2".into()],
            value: vec!["e".into(), "e".into()],
        };
        apply_overrides(s, &[ov], &mut module, &mut sigma, None).unwrap();
        let edited: Vec<usize> = (0..pristine.left.len())
            .filter(|&i| {
                (sigma.left[i], sigma.right[i]) != (pristine.left[i], pristine.right[i])
            })
            .collect();
        assert_eq!(edited.len(), 1);
        assert_eq!(sigma.at(0, 1, 2), (0, 0));
        assert_eq!(module.mx, c.module.mx);
    }

    #[test]
    fn k_override_without_a_family_is_rejected() {
        let doc = fixtures::document("example-5.3").unwrap();
        let c = compile(&doc).unwrap();
        let mut module = c.module.clone();
        let mut sigma = build_sigma(&c.structure);
        let ov = OverrideSpec {
            table: "k".into(),
            lambda: "e".into(),
            args: vec!["l1".into(), "x1".into()],
            value: vec!["l1".into(), "x1".into()],
        };
        let r = apply_overrides(&c.structure, &[ov], &mut module, &mut sigma, None);
        assert!(matches!(r.unwrap_err(), Error::Invalid(_)));

        let ov = OverrideSpec {
            table: "spectral".into(),
            lambda: "e".into(),
            args: vec![],
            value: vec![],
        };
        let r = apply_overrides(&c.structure, &[ov], &mut module, &mut sigma, None);
        assert!(matches!(r.unwrap_err(), Error::Invalid(_)));
    }
}
