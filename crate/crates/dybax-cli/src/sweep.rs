//! The family sweep for `enumerate`.
//!
//! Families are points of the Cartesian product of the endomorphism
//! monoid of the group over the module carrier, walked in lexicographic
//! order with the first carrier slot most significant. For each family
//! the boundary map is built and the reflection equation checked; how
//! often the boundary map turns out parameter independent is recorded as
//! a census, not asserted.

use rayon::prelude::*;
use serde::Serialize;

use dybax_core::finite_algebra::{enumerate_endomorphisms, ENDOMORPHISM_ORDER_CAP};
use dybax_core::module_theory::Family;
use dybax_core::reflection::{check_reflection_equation, k_from_family};
use dybax_core::yang_baxter::TwistTable;
use dybax_core::{Result, Witness};

use crate::instance::Instance;

/// Include per-family records in the summary only up to this many; past
/// that, the summary keeps counts and failures.
const ROSTER_CAP: u64 = 1000;

#[derive(Debug, Clone, Serialize)]
pub struct FamilyOutcome {
    pub index: u64,
    /// Image tables of the members, as element labels.
    pub maps: Vec<Vec<String>>,
    pub reflection_passed: bool,
    pub lambda_constant: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Failure {
    pub index: u64,
    pub witness: Witness,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepSummary {
    /// Size of the full product.
    pub total: u64,
    /// How many families were actually checked.
    pub checked: u64,
    pub passed: u64,
    pub failed: u64,
    /// Families whose boundary map is the same at every parameter.
    pub lambda_constant: u64,
    /// True when the product exceeded the limit and results are partial.
    pub capped: bool,
    pub limit: u64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<Failure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub families: Option<Vec<FamilyOutcome>>,
}

pub fn families(inst: &Instance, limit: u64) -> Result<SweepSummary> {
    let g = inst.s.group();
    let endos = enumerate_endomorphisms(g, ENDOMORPHISM_ORDER_CAP)?;
    let nx = inst.module.size();
    let total = (endos.len() as u64)
        .checked_pow(nx as u32)
        .unwrap_or(u64::MAX);
    let checked = total.min(limit);

    let results: Vec<(bool, bool, Option<Witness>)> = (0..checked)
        .into_par_iter()
        .map(|i| {
            let fam = family_at(&endos, nx, i);
            let k = k_from_family(&inst.s, &inst.module, &fam);
            let re = check_reflection_equation(&inst.s, &inst.module, &inst.sigma, &k);
            let constant = is_parameter_constant(&k);
            (re.passed, constant, re.witness)
        })
        .collect();

    let passed = results.iter().filter(|r| r.0).count() as u64;
    let lambda_constant = results.iter().filter(|r| r.1).count() as u64;
    let failures = results
        .iter()
        .enumerate()
        .filter_map(|(i, r)| {
            r.2.clone().map(|witness| Failure {
                index: i as u64,
                witness,
            })
        })
        .collect();
    let families = (checked <= ROSTER_CAP).then(|| {
        results
            .iter()
            .enumerate()
            .map(|(i, r)| FamilyOutcome {
                index: i as u64,
                maps: family_at(&endos, nx, i as u64)
                    .maps
                    .iter()
                    .map(|row| row.iter().map(|&v| g.label(v).to_string()).collect())
                    .collect(),
                reflection_passed: r.0,
                lambda_constant: r.1,
            })
            .collect()
    });
    Ok(SweepSummary {
        total,
        checked,
        passed,
        failed: checked - passed,
        lambda_constant,
        capped: total > limit,
        limit,
        failures,
        families,
    })
}

fn family_at(endos: &[Vec<usize>], nx: usize, i: u64) -> Family {
    let e = endos.len() as u64;
    let mut maps = Vec::with_capacity(nx);
    let mut rem = i;
    let mut place = e.pow(nx as u32 - 1);
    for _ in 0..nx {
        maps.push(endos[(rem / place) as usize].clone());
        rem %= place;
        place = (place / e).max(1);
    }
    Family { maps }
}

fn is_parameter_constant(k: &TwistTable) -> bool {
    let slice = k.n * k.w;
    (1..k.n).all(|lam| {
        (0..slice).all(|i| {
            k.left[lam * slice + i] == k.left[i] && k.right[lam * slice + i] == k.right[i]
        })
    })
}
