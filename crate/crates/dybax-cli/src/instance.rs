//! Loading a document into live tables.

use std::path::Path;

use dybax_core::document::{apply_overrides, compile, parse_document, Document};
use dybax_core::module_theory::{Family, ModuleX};
use dybax_core::reflection::k_from_family;
use dybax_core::yang_baxter::{build_monoid, build_sigma, MonoidTable, Structure, TwistTable};
use dybax_core::{Error, Result};

/// A compiled document with every derived table built, and any overrides
/// already applied.
pub struct Instance {
    pub name: String,
    pub s: Structure,
    pub module: ModuleX,
    pub family: Option<Family>,
    pub sigma: TwistTable,
    pub monoid: MonoidTable,
    /// Boundary map, present exactly when the document has a family.
    pub k: Option<TwistTable>,
    /// Default check groups from the document, if it names any.
    pub checks: Option<Vec<String>>,
}

pub fn load(path: &Path) -> Result<Instance> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
    let doc = parse_document(&text)?;
    prepare(&doc)
}

/// Builds every table pristine, then applies the document's overrides.
/// Overrides land only on the table they name, so a planted defect is
/// caught by the checks that read that table.
pub fn prepare(doc: &Document) -> Result<Instance> {
    let c = compile(doc)?;
    let mut module = c.module;
    let mut sigma = build_sigma(&c.structure);
    let monoid = build_monoid(&c.structure);
    let mut k = c
        .family
        .as_ref()
        .map(|f| k_from_family(&c.structure, &module, f));
    apply_overrides(&c.structure, &c.overrides, &mut module, &mut sigma, k.as_mut())?;
    Ok(Instance {
        name: c.name,
        s: c.structure,
        module,
        family: c.family,
        sigma,
        monoid,
        k,
        checks: c.checks,
    })
}
