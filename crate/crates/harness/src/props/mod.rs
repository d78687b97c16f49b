//! The property registry.

use std::sync::Arc;

use knsub_core::Verdict;

use crate::context::ModuleData;
use crate::property::{Context, Property, PropertyCase};

mod closure;
mod constructions;
mod lattice;
mod symbolic;

/// Every registered property, in report order.
pub fn registry() -> Vec<&'static Property> {
    closure::PROPERTIES
        .iter()
        .chain(lattice::PROPERTIES)
        .chain(constructions::PROPERTIES)
        .chain(symbolic::PROPERTIES)
        .collect()
}

pub fn find(name: &str) -> Option<&'static Property> {
    registry().into_iter().find(|p| p.name == name)
}

pub(crate) fn describe_witness(d: &ModuleData, v: &Verdict) -> String {
    v.witness.as_ref().map(|w| w.describe(d.module())).unwrap_or_else(|| "none".into())
}

/// One case per module, proper submodule and `(k,n)` cell accepted by `keep`.
pub(crate) fn per_cell(
    p: &Property,
    ctx: &Context,
    modules: &[Arc<ModuleData>],
    keep: impl Fn(u32, u32) -> bool,
    make: impl Fn(&Property, &Arc<ModuleData>, usize, u32, u32, String) -> PropertyCase,
) -> Vec<PropertyCase> {
    let kmax = ctx.bounds.kmax;
    let mut out = Vec::new();
    for d in modules {
        for &i in d.proper() {
            for k in 1..=kmax {
                for n in 1..=kmax {
                    if keep(k, n) {
                        out.push(make(p, d, i, k, n, format!("{}, k={k}, n={n}", d.label(i))));
                    }
                }
            }
        }
    }
    out
}
