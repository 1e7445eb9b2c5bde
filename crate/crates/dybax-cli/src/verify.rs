//! Check groups for `verify`.

use dybax_core::module_theory::{
    check_left_module, check_lift_compat, check_twisted_monoid, correspondence_chain,
    lift_actions, twisted_monoid,
};
use dybax_core::reflection::{
    analyze_brace, check_boundary_relations, check_k_constant, check_reflection_equation,
};
use dybax_core::quiver::check_quiver_equations;
use dybax_core::yang_baxter::{
    check_braid_relation, check_braided_monoid, check_sigma_inverse, sigma_inverse,
};
use dybax_core::{CheckReport, Error, Result};

use crate::instance::Instance;

pub const GROUPS: [&str; 7] = [
    "braid",
    "monoid",
    "module",
    "boundary",
    "reflection",
    "brace",
    "quiver",
];

const NO_FAMILY: &str = "no boundary map: the document provides no family";

/// Expands the requested list (or the document's default, or `all`) and
/// runs each group once, in the canonical order for `all` and in the
/// given order otherwise.
pub fn run_checks(inst: &Instance, requested: &[String]) -> Result<Vec<CheckReport>> {
    let list: Vec<String> = if requested.is_empty() {
        inst.checks.clone().unwrap_or_else(|| vec!["all".into()])
    } else {
        requested.to_vec()
    };
    let mut groups: Vec<&str> = Vec::new();
    for g in &list {
        if g == "all" {
            groups.extend(GROUPS);
        } else {
            groups.push(g);
        }
    }
    let mut out = Vec::new();
    let mut seen = Vec::new();
    for g in groups {
        if !seen.contains(&g) {
            seen.push(g);
            out.extend(run_group(inst, g)?);
        }
    }
    Ok(out)
}

fn run_group(inst: &Instance, group: &str) -> Result<Vec<CheckReport>> {
    let s = &inst.s;
    let m = &inst.module;
    Ok(match group {
        "braid" => vec![
            check_braid_relation(s, &inst.sigma),
            check_sigma_inverse(s, &inst.sigma, &sigma_inverse(s)),
        ],
        "monoid" => {
            let mut v = check_braided_monoid(s, &inst.sigma, &inst.monoid);
            v.extend(check_twisted_monoid(s, &twisted_monoid(s)));
            v
        }
        "module" => {
            let mut v = check_left_module(s, m);
            let (triv, braided) = lift_actions(s, m);
            v.extend(check_left_module(s, &triv));
            v.extend(check_left_module(s, &braided));
            v.push(check_lift_compat(s, m, &triv));
            v.push(check_lift_compat(s, m, &braided));
            if let Some(fam) = &inst.family {
                v.extend(correspondence_chain(s, m, fam).0);
            }
            v
        }
        "boundary" => match &inst.k {
            Some(k) => {
                let mut v = check_boundary_relations(s, m, &inst.sigma, &inst.monoid, k);
                v.extend(check_k_constant(s, m, k, inst.family.as_ref()).reports);
                v
            }
            None => vec![CheckReport::skip("boundary-relations", NO_FAMILY)],
        },
        "reflection" => match &inst.k {
            Some(k) => vec![check_reflection_equation(s, m, &inst.sigma, k)],
            None => vec![CheckReport::skip("reflection-equation", NO_FAMILY)],
        },
        "brace" => analyze_brace(s, &inst.sigma).reports,
        "quiver" => check_quiver_equations(s, m, &inst.sigma, inst.k.as_ref()),
        other => {
            return Err(Error::Invalid(format!(
                "unknown check group `{other}` (expected braid, monoid, module, boundary, \
                 reflection, brace, quiver, or all)"
            )))
        }
    })
}
