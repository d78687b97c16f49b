//! Statements about families of submodules: intersections, products, radicals.

use std::ops::RangeInclusive;
use std::sync::Arc;

use knsub_core::constructions::{are_comaximal, m_radical, presentation_power, presentation_product, rad_module};
use knsub_core::module::{intersect, sum};
use knsub_core::Submodule;

use super::describe_witness;
use crate::context::ModuleData;
use crate::error::Result;
use crate::property::{unless, Context, Property, PropertyCase, Tier};

pub static PROPERTIES: &[Property] = &[
    Property {
        name: "T-t2",
        tier: Tier::Verified,
        statement: "an intersection of semiprime submodules is (k,n)-closed for all k and all n ≥ 2",
        vacuity_note: None,
        generate: semiprime_intersections,
    },
    Property {
        name: "T-t2-n1",
        tier: Tier::Scrutiny,
        statement: "an intersection of semiprime submodules is (k,1)-closed for all k",
        vacuity_note: None,
        generate: semiprime_intersections_n1,
    },
    Property {
        name: "T-rad",
        tier: Tier::Verified,
        statement: "M-rad(N) and Rad(M) are (k,n)-closed for all k and all n ≥ 2",
        vacuity_note: None,
        generate: radicals,
    },
    Property {
        name: "T-rad-n1",
        tier: Tier::Scrutiny,
        statement: "M-rad(N) and Rad(M) are (k,1)-closed for all k",
        vacuity_note: None,
        generate: radicals_n1,
    },
    Property {
        name: "T-l3",
        tier: Tier::Verified,
        statement: "multiplication module, pairwise comaximal N_i: N1N2 = N1 ∩ N2, (N1 ∩ N2) + N3 = M, N1N2N3 = N1 ∩ N2 ∩ N3",
        vacuity_note: None,
        generate: comaximal_products,
    },
    Property {
        name: "T-tf2",
        tier: Tier::Verified,
        statement: "multiplication module, pairwise comaximal semiprime N_i: N1...Nt is (k,n)-closed for all k and all n ≥ 2",
        vacuity_note: None,
        generate: semiprime_products,
    },
    Property {
        name: "T-tf2-n1",
        tier: Tier::Scrutiny,
        statement: "multiplication module, pairwise comaximal semiprime N_i: N1...Nt is (k,1)-closed for all k",
        vacuity_note: None,
        generate: semiprime_products_n1,
    },
    Property {
        name: "T-tf2-power",
        tier: Tier::Scrutiny,
        statement: "multiplication module, N semiprime: N^n is (k,n)-closed for all k",
        vacuity_note: None,
        generate: semiprime_powers,
    },
    Property {
        name: "T-chain",
        tier: Tier::Verified,
        statement: "the intersection of a chain of (k,n)-closed submodules is (k,n)-closed",
        vacuity_note: None,
        generate: chains,
    },
    Property {
        name: "T-int1",
        tier: Tier::Scrutiny,
        statement: "N1 semi-n1, N2 semi-n2 ⇒ N1 ∩ N2 semi-(n+1) with n = max(n1,n2)",
        vacuity_note: None,
        generate: intersection_pairs,
    },
    Property {
        name: "T-int2",
        tier: Tier::Scrutiny,
        statement: "N1..Nt semi-n ⇒ N1 ∩ ... ∩ Nt semi-(n+t)",
        vacuity_note: None,
        generate: intersection_families,
    },
    Property {
        name: "T-int3",
        tier: Tier::Scrutiny,
        statement: "N1, N2, N3 semi-n_j ⇒ N1 ∩ N2 ∩ N3 semi-(n+2) with n = max n_j",
        vacuity_note: None,
        generate: intersection_triples,
    },
    Property {
        name: "T-divint",
        tier: Tier::Verified,
        statement: "over a field, M cyclic, N_j (k_j,n_j)-closed ⇒ ∩N_j (k,n+1)-closed for k ≤ min k_j, n ≥ min(k, max n_j)",
        vacuity_note: Some("prime fields have only the zero proper submodule in a cyclic module"),
        generate: field_intersections,
    },
    Property {
        name: "T-tsec",
        tier: Tier::Verified,
        statement: "N secondary, K semi-n-absorbing, N ∩ K ≠ 0 ⇒ N ∩ K secondary",
        vacuity_note: None,
        generate: secondary_meets,
    },
    Property {
        name: "T-csec",
        tier: Tier::Scrutiny,
        statement: "K ⊆ N proper, N secondary and semi-n-absorbing ⇒ K semi-n-absorbing",
        vacuity_note: None,
        generate: secondary_below,
    },
];

/// First `(k,n)` with `k ≤ kmax` and `n` in `ns` at which `N` fails, as a witness string.
fn first_failure(d: &ModuleData, s: &Submodule, ns: RangeInclusive<u32>) -> Result<Option<String>> {
    let j = d.locate(s)?;
    for k in 1..=d.kmax() {
        for n in ns.clone() {
            let v = d.verdict(j, k, n)?;
            if !v.holds {
                return Ok(Some(format!("{} fails ({k},{n}): {}", s.describe(), describe_witness(d, &v))));
            }
        }
    }
    Ok(None)
}

fn intersect_family(d: &ModuleData, family: &[usize]) -> Result<Submodule> {
    let mut acc = Submodule::whole(d.module());
    for &i in family {
        acc = intersect(&acc, d.sub(i))?;
    }
    Ok(acc)
}

fn family_label(d: &ModuleData, family: &[usize]) -> String {
    let parts: Vec<String> = family.iter().map(|&i| d.sub(i).describe()).collect();
    format!("{} in {}", parts.join(", "), d.module().describe())
}

fn semiprime_indices(d: &ModuleData) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for &i in d.proper() {
        if d.semiprime(i)?.holds {
            out.push(i);
        }
    }
    Ok(out)
}

/// Pairs `i < j` drawn from `items`.
fn pairs(items: &[usize]) -> Vec<[usize; 2]> {
    let mut out = Vec::new();
    for (a, &i) in items.iter().enumerate() {
        for &j in &items[a + 1..] {
            out.push([i, j]);
        }
    }
    out
}

fn triples(items: &[usize]) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for (a, &i) in items.iter().enumerate() {
        for (b, &j) in items.iter().enumerate().skip(a + 1) {
            for &l in &items[b + 1..] {
                out.push([i, j, l]);
            }
        }
    }
    out
}

fn intersections_of(p: &Property, ctx: &Context, ns: RangeInclusive<u32>) -> Result<Vec<PropertyCase>> {
    let mut out = Vec::new();
    for d in &ctx.modules {
        let family = semiprime_indices(d)?;
        let mut families: Vec<Vec<usize>> = family.iter().map(|&i| vec![i]).collect();
        families.extend(pairs(&family).into_iter().map(Vec::from));
        if family.len() > 2 {
            families.push(family.clone());
        }
        for f in families {
            let d = d.clone();
            let ns = ns.clone();
            out.push(PropertyCase::always(p, family_label(&d, &f), move || {
                first_failure(&d, &intersect_family(&d, &f)?, ns.clone())
            }));
        }
    }
    Ok(out)
}

fn semiprime_intersections(p: &Property, ctx: &Context) -> Result<Vec<PropertyCase>> {
    intersections_of(p, ctx, 2..=ctx.bounds.kmax)
}

fn semiprime_intersections_n1(p: &Property, ctx: &Context) -> Result<Vec<PropertyCase>> {
    intersections_of(p, ctx, 1..=1)
}

fn radicals_of(p: &Property, ctx: &Context, ns: RangeInclusive<u32>) -> Result<Vec<PropertyCase>> {
    let mut out = Vec::new();
    for d in &ctx.modules {
        let cap = d.bounds().module_cap;
        for &i in d.proper() {
            let (d1, d2) = (d.clone(), d.clone());
            let ns = ns.clone();
            out.push(PropertyCase::new(
                p,
                format!("M-rad of {}", d.label(i)),
                move || Ok(m_radical(d1.sub(i), cap)?.is_proper()),
                move || first_failure(&d2, &m_radical(d2.sub(i), cap)?, ns.clone()),
            ));
        }
        let (d1, d2) = (d.clone(), d.clone());
        let ns = ns.clone();
        out.push(PropertyCase::new(
            p,
            format!("Rad({})", d.module().describe()),
            move || Ok(rad_module(d1.module(), cap)?.is_proper()),
            move || first_failure(&d2, &rad_module(d2.module(), cap)?, ns.clone()),
        ));
    }
    Ok(out)
}

fn radicals(p: &Property, ctx: &Context) -> Result<Vec<PropertyCase>> {
    radicals_of(p, ctx, 2..=ctx.bounds.kmax)
}

fn radicals_n1(p: &Property, ctx: &Context) -> Result<Vec<PropertyCase>> {
    radicals_of(p, ctx, 1..=1)
}

fn multiplication_modules(ctx: &Context) -> Result<Vec<Arc<ModuleData>>> {
    let mut out = Vec::new();
    for d in &ctx.modules {
        if d.is_multiplication()? {
            out.push(d.clone());
        }
    }
    Ok(out)
}

fn pairwise_comaximal(d: &ModuleData, family: &[usize]) -> Result<bool> {
    for [i, j] in pairs(family) {
        if !are_comaximal(d.sub(i), d.sub(j))? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn product_of(d: &ModuleData, family: &[usize]) -> Result<Submodule> {
    let mut acc = Submodule::whole(d.module());
    for &i in family {
        acc = presentation_product(&acc, d.sub(i))?;
    }
    Ok(acc)
}

fn comaximal_products(p: &Property, ctx: &Context) -> Result<Vec<PropertyCase>> {
    let mut out = Vec::new();
    for d in multiplication_modules(ctx)? {
        let proper = d.proper().to_vec();
        for f in pairs(&proper) {
            let (d1, d2) = (d.clone(), d.clone());
            out.push(PropertyCase::new(
                p,
                family_label(&d, &f),
                move || pairwise_comaximal(&d1, &f),
                move || {
                    let (prod, meet) = (product_of(&d2, &f)?, intersect_family(&d2, &f)?);
                    Ok(unless(prod == meet, || format!("N1N2={}, N1∩N2={}", prod.describe(), meet.describe())))
                },
            ));
        }
        for f in triples(&proper) {
            let (d1, d2) = (d.clone(), d.clone());
            out.push(PropertyCase::new(
                p,
                family_label(&d, &f),
                move || pairwise_comaximal(&d1, &f),
                move || {
                    let head = intersect_family(&d2, &f[..2])?;
                    if sum(&head, d2.sub(f[2]))?.is_proper() {
                        return Ok(Some(format!("(N1∩N2)+N3 proper, N1∩N2={}", head.describe())));
                    }
                    let (prod, meet) = (product_of(&d2, &f)?, intersect_family(&d2, &f)?);
                    Ok(unless(prod == meet, || format!("N1N2N3={}, ∩={}", prod.describe(), meet.describe())))
                },
            ));
        }
    }
    Ok(out)
}

fn products_of(p: &Property, ctx: &Context, ns: RangeInclusive<u32>) -> Result<Vec<PropertyCase>> {
    let mut out = Vec::new();
    for d in multiplication_modules(ctx)? {
        let family = semiprime_indices(&d)?;
        let mut families: Vec<Vec<usize>> = family.iter().map(|&i| vec![i]).collect();
        families.extend(pairs(&family).into_iter().map(Vec::from));
        families.extend(triples(&family).into_iter().map(Vec::from));
        for f in families {
            let (d1, d2) = (d.clone(), d.clone());
            let (ns, f1) = (ns.clone(), f.clone());
            out.push(PropertyCase::new(
                p,
                family_label(&d, &f),
                move || pairwise_comaximal(&d1, &f1),
                move || first_failure(&d2, &product_of(&d2, &f)?, ns.clone()),
            ));
        }
    }
    Ok(out)
}

fn semiprime_products(p: &Property, ctx: &Context) -> Result<Vec<PropertyCase>> {
    products_of(p, ctx, 2..=ctx.bounds.kmax)
}

fn semiprime_products_n1(p: &Property, ctx: &Context) -> Result<Vec<PropertyCase>> {
    products_of(p, ctx, 1..=1)
}

fn semiprime_powers(p: &Property, ctx: &Context) -> Result<Vec<PropertyCase>> {
    let mut out = Vec::new();
    for d in multiplication_modules(ctx)? {
        for i in semiprime_indices(&d)? {
            for n in 1..=ctx.bounds.kmax {
                let (d1, d2) = (d.clone(), d.clone());
                out.push(PropertyCase::new(
                    p,
                    format!("{}, n={n}", d.label(i)),
                    move || Ok(presentation_power(d1.sub(i), n)?.is_proper()),
                    move || first_failure(&d2, &presentation_power(d2.sub(i), n)?, n..=n),
                ));
            }
        }
    }
    Ok(out)
}

fn chains(p: &Property, ctx: &Context) -> Result<Vec<PropertyCase>> {
    let mut out = Vec::new();
    for d in &ctx.modules {
        let proper = d.proper().to_vec();
        for [i, j] in pairs(&proper) {
            let (a, b) = (d.sub(i), d.sub(j));
            if !(a.is_subset_of(b) || b.is_subset_of(a)) {
                continue;
            }
            for k in 1..=ctx.bounds.kmax {
                for n in 1..=ctx.bounds.kmax {
                    let (d1, d2) = (d.clone(), d.clone());
                    out.push(PropertyCase::new(
                        p,
                        format!("{}, k={k}, n={n}", family_label(d, &[i, j])),
                        move || Ok(d1.holds(i, k, n)? && d1.holds(j, k, n)?),
                        move || {
                            let meet = intersect_family(&d2, &[i, j])?;
                            let v = d2.verdict(d2.locate(&meet)?, k, n)?;
                            Ok(unless(v.holds, || describe_witness(&d2, &v)))
                        },
                    ));
                }
            }
        }
    }
    Ok(out)
}

/// Least `n` with `N` semi-n-absorbing, within `kmax`.
fn semi_level(d: &ModuleData, i: usize) -> Result<Option<u32>> {
    for n in 1..=d.kmax() {
        if d.semi(i, n)? {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// Semi-`target`-absorbing check on a submodule that may leave the grid.
fn semi_failure(d: &ModuleData, s: &Submodule, target: u32) -> Result<Option<String>> {
    let j = d.locate(s)?;
    let v = d.verdict(j, target, target)?;
    Ok(unless(v.holds, || format!("{} not semi-{target}: {}", s.describe(), describe_witness(d, &v))))
}

fn intersection_pairs(p: &Property, ctx: &Context) -> Result<Vec<PropertyCase>> {
    let mut out = Vec::new();
    for d in &ctx.modules {
        let proper = d.proper().to_vec();
        for f in pairs(&proper) {
            let (d1, d2) = (d.clone(), d.clone());
            out.push(PropertyCase::new(
                p,
                family_label(d, &f),
                move || Ok(semi_level(&d1, f[0])?.is_some() && semi_level(&d1, f[1])?.is_some()),
                move || {
                    let n = semi_level(&d2, f[0])?.max(semi_level(&d2, f[1])?).unwrap_or(1);
                    semi_failure(&d2, &intersect_family(&d2, &f)?, n + 1)
                },
            ));
        }
    }
    Ok(out)
}

fn intersection_families(p: &Property, ctx: &Context) -> Result<Vec<PropertyCase>> {
    let mut out = Vec::new();
    for d in &ctx.modules {
        let proper = d.proper().to_vec();
        let mut families: Vec<Vec<usize>> = pairs(&proper).into_iter().map(Vec::from).collect();
        families.extend(triples(&proper).into_iter().map(Vec::from));
        for f in families {
            for n in 1..=ctx.bounds.kmax {
                let (d1, d2) = (d.clone(), d.clone());
                let (f1, f2) = (f.clone(), f.clone());
                out.push(PropertyCase::new(
                    p,
                    format!("{}, n={n}", family_label(d, &f)),
                    move || {
                        for &i in &f1 {
                            if !d1.semi(i, n)? {
                                return Ok(false);
                            }
                        }
                        Ok(true)
                    },
                    move || semi_failure(&d2, &intersect_family(&d2, &f2)?, n + f2.len() as u32),
                ));
            }
        }
    }
    Ok(out)
}

fn intersection_triples(p: &Property, ctx: &Context) -> Result<Vec<PropertyCase>> {
    let mut out = Vec::new();
    for d in &ctx.modules {
        let proper = d.proper().to_vec();
        for f in triples(&proper) {
            let (d1, d2) = (d.clone(), d.clone());
            out.push(PropertyCase::new(
                p,
                family_label(d, &f),
                move || {
                    for &i in &f {
                        if semi_level(&d1, i)?.is_none() {
                            return Ok(false);
                        }
                    }
                    Ok(true)
                },
                move || {
                    let mut n = 1;
                    for &i in &f {
                        n = n.max(semi_level(&d2, i)?.unwrap_or(1));
                    }
                    semi_failure(&d2, &intersect_family(&d2, &f)?, n + 2)
                },
            ));
        }
    }
    Ok(out)
}

fn field_intersections(p: &Property, ctx: &Context) -> Result<Vec<PropertyCase>> {
    let kmax = ctx.bounds.kmax;
    let mut out = Vec::new();
    for d in ctx.fields.iter().filter(|d| d.module().generators().len() == 1) {
        let proper = d.proper().to_vec();
        let mut families: Vec<Vec<usize>> = proper.iter().map(|&i| vec![i]).collect();
        families.extend(pairs(&proper).into_iter().map(Vec::from));
        for f in families {
            // Every member is taken as (k_j, n_j)-closed with the same k_j and n_j.
            for kj in 1..=kmax {
                for nj in 1..=kmax {
                    let (d1, d2) = (d.clone(), d.clone());
                    let (f1, f2) = (f.clone(), f.clone());
                    out.push(PropertyCase::new(
                        p,
                        format!("{}, k_j={kj}, n_j={nj}", family_label(d, &f)),
                        move || {
                            for &i in &f1 {
                                if !d1.holds(i, kj, nj)? {
                                    return Ok(false);
                                }
                            }
                            Ok(true)
                        },
                        move || {
                            let meet = intersect_family(&d2, &f2)?;
                            let j = d2.locate(&meet)?;
                            for k in 1..=kj {
                                for n in k.min(nj)..=kmax {
                                    let v = d2.verdict(j, k, n + 1)?;
                                    if !v.holds {
                                        return Ok(Some(format!("({k},{}) fails: {}", n + 1, describe_witness(&d2, &v))));
                                    }
                                }
                            }
                            Ok(None)
                        },
                    ));
                }
            }
        }
    }
    Ok(out)
}

fn secondary_meets(p: &Property, ctx: &Context) -> Result<Vec<PropertyCase>> {
    let mut out = Vec::new();
    for d in &ctx.modules {
        for a in 0..d.lattice().len() {
            if d.sub(a).is_zero() {
                continue;
            }
            for &b in d.proper() {
                for n in 1..=ctx.bounds.kmax {
                    let (d1, d2) = (d.clone(), d.clone());
                    out.push(PropertyCase::new(
                        p,
                        format!("N={}, K={} in {}, n={n}", d.sub(a).describe(), d.sub(b).describe(), d.module().describe()),
                        move || {
                            let secondary = d1.secondary(a)?.is_some_and(|v| v.holds);
                            Ok(secondary && d1.semi(b, n)? && !intersect(d1.sub(a), d1.sub(b))?.is_zero())
                        },
                        move || {
                            let meet = intersect(d2.sub(a), d2.sub(b))?;
                            let v = d2.secondary(d2.locate(&meet)?)?.expect("nonzero intersection");
                            Ok(unless(v.holds, || format!("N∩K={} not secondary: {}", meet.describe(), describe_witness(&d2, &v))))
                        },
                    ));
                }
            }
        }
    }
    Ok(out)
}

fn secondary_below(p: &Property, ctx: &Context) -> Result<Vec<PropertyCase>> {
    let mut out = Vec::new();
    for d in &ctx.modules {
        for &a in d.proper() {
            for &b in d.proper() {
                if a == b || !d.sub(b).is_subset_of(d.sub(a)) {
                    continue;
                }
                for n in 1..=ctx.bounds.kmax {
                    let (d1, d2) = (d.clone(), d.clone());
                    out.push(PropertyCase::new(
                        p,
                        format!("N={}, K={} in {}, n={n}", d.sub(a).describe(), d.sub(b).describe(), d.module().describe()),
                        move || Ok(d1.secondary(a)?.is_some_and(|v| v.holds) && d1.semi(a, n)?),
                        move || {
                            let v = d2.verdict(b, n, n)?;
                            Ok(unless(v.holds, || describe_witness(&d2, &v)))
                        },
                    ));
                }
            }
        }
    }
    Ok(out)
}
