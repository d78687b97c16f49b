//! Statements about localizations, homomorphisms, quotients and direct sums.

use std::sync::Arc;

use knsub_core::constructions::{direct_sum, hom_image, hom_preimage, localize, quotient, LocalizedModule};
use knsub_core::module::{enumerate_submodules, intersect, make_hom};
use knsub_core::predicates::{is_kn_closed, is_strongly_kn_closed};
use knsub_core::ring::{mult_closure, MultiplicativeSet};
use knsub_core::{build_module, FiniteModule, ModuleHom, Submodule, Verdict};

use crate::context::ModuleData;
use crate::error::Result;
use crate::property::{unless, Context, Property, PropertyCase, Tier};

pub static PROPERTIES: &[Property] = &[
    Property {
        name: "T-s1",
        tier: Tier::Verified,
        statement: "S ∩ (N:M) = ∅ and N (k,n)-closed ⇒ S^-1 N (k,n)-closed in S^-1 M",
        vacuity_note: None,
        generate: localization,
    },
    Property {
        name: "T-sloc",
        tier: Tier::Scrutiny,
        statement: "S ∩ (N:M) = ∅, 2 ∈ S, N strongly (k,2)-closed ⇒ S^-1 N strongly (k,2)-closed (both readings of 2 ∈ S)",
        vacuity_note: None,
        generate: strong_localization,
    },
    Property {
        name: "T-sloc-proof",
        tier: Tier::Scrutiny,
        statement: "2 ∈ S ⇒ 2 is not a unit of S^-1 R",
        vacuity_note: None,
        generate: two_in_s,
    },
    Property {
        name: "T-NP",
        tier: Tier::Verified,
        statement: "P prime, N ⊆ P: N (k,n)-closed ⇒ N_P (k,n)-closed",
        vacuity_note: None,
        generate: local_forward,
    },
    Property {
        name: "T-NP-conv",
        tier: Tier::Scrutiny,
        statement: "P prime, N ⊆ P: N_P (k,n)-closed ⇒ N (k,n)-closed",
        vacuity_note: None,
        generate: local_converse,
    },
    Property {
        name: "T-hom1",
        tier: Tier::Verified,
        statement: "f: M → M', N' (k,n)-closed ⇒ f^-1(N') (k,n)-closed when proper",
        vacuity_note: None,
        generate: preimages,
    },
    Property {
        name: "T-hom2",
        tier: Tier::Verified,
        statement: "f onto, Ker f ⊆ N, N (k,n)-closed ⇒ f(N) (k,n)-closed",
        vacuity_note: None,
        generate: images,
    },
    Property {
        name: "T-cor-sub",
        tier: Tier::Verified,
        statement: "K ⊆ M, N (k,n)-closed in M ⇒ N ∩ K (k,n)-closed in K when proper",
        vacuity_note: None,
        generate: restriction,
    },
    Property {
        name: "T-cor-quot",
        tier: Tier::Verified,
        statement: "K ⊆ N: N/K (k,n)-closed in M/K iff N (k,n)-closed in M",
        vacuity_note: None,
        generate: quotients,
    },
    Property {
        name: "T-ds1",
        tier: Tier::Verified,
        statement: "N1 (k,n)-closed in M1 iff N1 ⊕ M2 (k,n)-closed in M1 ⊕ M2",
        vacuity_note: None,
        generate: left_summand,
    },
    Property {
        name: "T-ds2",
        tier: Tier::Verified,
        statement: "N2 (k,n)-closed in M2 iff M1 ⊕ N2 (k,n)-closed in M1 ⊕ M2",
        vacuity_note: None,
        generate: right_summand,
    },
    Property {
        name: "T-ds3",
        tier: Tier::Verified,
        statement: "N1 and N2 (k,n-1)-closed ⇒ N1 ⊕ N2 (k,n)-closed",
        vacuity_note: None,
        generate: both_summands,
    },
];

fn witness_text(module: &FiniteModule, v: &Verdict) -> String {
    v.witness.as_ref().map(|w| w.describe(module)).unwrap_or_else(|| "none".into())
}

/// Every grid cell where `hyp` holds must satisfy `concl`; the first failure is reported.
fn cellwise(
    kmax: u32,
    target: &Submodule,
    hyp: impl Fn(u32, u32) -> Result<bool>,
) -> Result<Option<String>> {
    for k in 1..=kmax {
        for n in 1..=kmax {
            if hyp(k, n)? {
                let v = is_kn_closed(target, k, n)?;
                if !v.holds {
                    return Ok(Some(format!(
                        "{} fails ({k},{n}): {}",
                        target.describe(),
                        witness_text(target.module(), &v)
                    )));
                }
            }
        }
    }
    Ok(None)
}

fn any_cell(kmax: u32, hyp: impl Fn(u32, u32) -> Result<bool>) -> Result<bool> {
    for k in 1..=kmax {
        for n in 1..=kmax {
            if hyp(k, n)? {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Multiplicative sets generated by one element and avoiding zero, without repeats.
fn multiplicative_sets(module: &FiniteModule) -> Vec<MultiplicativeSet> {
    let ring = module.ring();
    let mut out: Vec<MultiplicativeSet> = Vec::new();
    for s in ring.elements().skip(1) {
        let set = mult_closure(&ring, &[s]);
        if !set.contains_zero() && !out.contains(&set) {
            out.push(set);
        }
    }
    out
}

struct Local {
    data: Arc<ModuleData>,
    index: usize,
    loc: Arc<LocalizedModule>,
    image: Submodule,
}

/// `(N, S)` pairs with `S ∩ (N:M) = ∅` and `S^-1 N` proper.
fn local_pairs(ctx: &Context) -> Result<Vec<Local>> {
    let mut out = Vec::new();
    for d in &ctx.modules {
        if d.module().orders().is_none() {
            continue;
        }
        for set in multiplicative_sets(d.module()) {
            let loc = Arc::new(localize(d.module(), &set)?);
            for &i in d.proper() {
                if set.meets(&d.residual(i)) {
                    continue;
                }
                let image = loc.localize_submodule(d.sub(i))?;
                if image.is_proper() {
                    out.push(Local { data: d.clone(), index: i, loc: loc.clone(), image });
                }
            }
        }
    }
    Ok(out)
}

fn local_label(l: &Local) -> String {
    format!("{}, S={}", l.data.label(l.index), l.loc.set())
}

fn localization(p: &Property, ctx: &Context) -> Result<Vec<PropertyCase>> {
    let kmax = ctx.bounds.kmax;
    Ok(local_pairs(ctx)?
        .into_iter()
        .map(|l| {
            let label = local_label(&l);
            let l = Arc::new(l);
            let l2 = l.clone();
            PropertyCase::new(
                p,
                label,
                move || any_cell(kmax, |k, n| l.data.holds(l.index, k, n)),
                move || cellwise(kmax, &l2.image, |k, n| l2.data.holds(l2.index, k, n)),
            )
        })
        .collect())
}

fn strong_localization(p: &Property, ctx: &Context) -> Result<Vec<PropertyCase>> {
    let kmax = ctx.bounds.kmax;
    let mut out = Vec::new();
    for l in local_pairs(ctx)? {
        let reading = if l.loc.set().contains(2) { "2 ∈ S" } else { "2 ∉ S" };
        let label = format!("{}, {reading}", local_label(&l));
        let l = Arc::new(l);
        let l2 = l.clone();
        out.push(PropertyCase::new(
            p,
            label,
            move || any_cell(kmax, |k, n| Ok(n == 2 && l.data.strongly(l.index, k, 2)?)),
            move || {
                for k in 1..=kmax {
                    if l2.data.strongly(l2.index, k, 2)? {
                        let v = is_strongly_kn_closed(&l2.image, k, 2)?;
                        if !v.holds {
                            return Ok(Some(format!(
                                "S^-1 N={} not strongly ({k},2)-closed: {}",
                                l2.image.describe(),
                                witness_text(l2.image.module(), &v)
                            )));
                        }
                    }
                }
                Ok(None)
            },
        ));
    }
    Ok(out)
}

fn two_in_s(p: &Property, ctx: &Context) -> Result<Vec<PropertyCase>> {
    let mut out = Vec::new();
    for d in &ctx.modules {
        if d.module().orders().is_none() {
            continue;
        }
        for set in multiplicative_sets(d.module()) {
            let loc = localize(d.module(), &set)?;
            let label = format!("{}, S={set}", d.module().describe());
            let has_two = set.contains(2);
            out.push(PropertyCase::new(
                p,
                label,
                move || Ok(has_two),
                move || {
                    let ring = loc.ring();
                    let two = ring.reduce(2);
                    Ok(unless(!ring.is_unit(two), || format!("2 is a unit of S^-1 R = Z_{}", ring.modulus())))
                },
            ));
        }
    }
    Ok(out)
}

/// `(N, P)` with `P` a prime submodule containing `N`, localized at the complement of `(P:M)`.
fn prime_localizations(ctx: &Context) -> Result<Vec<(Local, String)>> {
    let mut out = Vec::new();
    for d in &ctx.modules {
        if d.module().orders().is_none() {
            continue;
        }
        for &q in d.proper() {
            if !d.is_prime(q)? {
                continue;
            }
            let set = MultiplicativeSet::prime_complement(&d.residual(q))?;
            let loc = Arc::new(localize(d.module(), &set)?);
            for &i in d.proper() {
                if !d.sub(i).is_subset_of(d.sub(q)) {
                    continue;
                }
                let image = loc.localize_submodule(d.sub(i))?;
                let label = format!("{}, P={}", d.label(i), d.sub(q).describe());
                if image.is_proper() {
                    out.push((Local { data: d.clone(), index: i, loc: loc.clone(), image }, label));
                }
            }
        }
    }
    Ok(out)
}

fn local_forward(p: &Property, ctx: &Context) -> Result<Vec<PropertyCase>> {
    let kmax = ctx.bounds.kmax;
    Ok(prime_localizations(ctx)?
        .into_iter()
        .map(|(l, label)| {
            let l = Arc::new(l);
            let l2 = l.clone();
            PropertyCase::new(
                p,
                label,
                move || any_cell(kmax, |k, n| l.data.holds(l.index, k, n)),
                move || cellwise(kmax, &l2.image, |k, n| l2.data.holds(l2.index, k, n)),
            )
        })
        .collect())
}

fn local_converse(p: &Property, ctx: &Context) -> Result<Vec<PropertyCase>> {
    let kmax = ctx.bounds.kmax;
    Ok(prime_localizations(ctx)?
        .into_iter()
        .map(|(l, label)| {
            let l = Arc::new(l);
            let l2 = l.clone();
            PropertyCase::new(
                p,
                label,
                move || any_cell(kmax, |k, n| Ok(is_kn_closed(&l.image, k, n)?.holds)),
                move || {
                    let base = l2.data.sub(l2.index);
                    cellwise(kmax, base, |k, n| Ok(is_kn_closed(&l2.image, k, n)?.holds))
                },
            )
        })
        .collect())
}

/// Homomorphisms out of `M`: quotient maps and multiplication by each scalar.
fn maps_from(d: &ModuleData) -> Result<Vec<(String, ModuleHom)>> {
    let module = d.module();
    let mut out = Vec::new();
    for k in d.lattice() {
        if !k.is_zero() && k.is_proper() {
            let (_, pi) = quotient(module, k)?;
            out.push((format!("M → M/{}", k.describe()), pi));
        }
    }
    for r in module.ring().elements().skip(2) {
        let images: Vec<_> = module.generators().iter().map(|&g| module.scale(r, g)).collect();
        out.push((format!("{r}·"), make_hom(module, module, &images)?));
    }
    Ok(out)
}

fn preimages(p: &Property, ctx: &Context) -> Result<Vec<PropertyCase>> {
    let kmax = ctx.bounds.kmax;
    let cap = ctx.bounds.module_cap;
    let mut out = Vec::new();
    for d in &ctx.modules {
        let mut maps = maps_from(d)?;
        for k in d.lattice() {
            if !k.is_zero() && k.is_proper() {
                let (sub, iota) = FiniteModule::from_submodule(k);
                out.extend(preimage_cases(p, kmax, &[(format!("{} ↪ M", sub.describe()), iota)], cap)?);
            }
        }
        maps.retain(|(_, f)| f.source().size() > 0);
        out.extend(preimage_cases(p, kmax, &maps, cap)?);
    }
    Ok(out)
}

fn preimage_cases(p: &Property, kmax: u32, maps: &[(String, ModuleHom)], cap: usize) -> Result<Vec<PropertyCase>> {
    let mut out = Vec::new();
    for (name, f) in maps {
        for target in enumerate_submodules(f.target(), cap)? {
            if !target.is_proper() {
                continue;
            }
            let pre = hom_preimage(f, &target)?;
            if !pre.is_proper() {
                continue;
            }
            let label = format!("{name}, N'={} in {}", target.describe(), f.target().describe());
            let (t1, t2) = (target.clone(), target);
            out.push(PropertyCase::new(
                p,
                label,
                move || any_cell(kmax, |k, n| Ok(is_kn_closed(&t1, k, n)?.holds)),
                move || cellwise(kmax, &pre, |k, n| Ok(is_kn_closed(&t2, k, n)?.holds)),
            ));
        }
    }
    Ok(out)
}

fn images(p: &Property, ctx: &Context) -> Result<Vec<PropertyCase>> {
    let kmax = ctx.bounds.kmax;
    let mut out = Vec::new();
    for d in &ctx.modules {
        for (name, f) in maps_from(d)? {
            if !f.is_surjective() {
                continue;
            }
            let kernel = f.kernel();
            for &i in d.proper() {
                if !kernel.is_subset_of(d.sub(i)) {
                    continue;
                }
                let image = hom_image(&f, d.sub(i))?;
                let (d1, d2) = (d.clone(), d.clone());
                out.push(PropertyCase::new(
                    p,
                    format!("{name}, {}", d.label(i)),
                    move || any_cell(kmax, |k, n| d1.holds(i, k, n)),
                    move || cellwise(kmax, &image, |k, n| d2.holds(i, k, n)),
                ));
            }
        }
    }
    Ok(out)
}

fn restriction(p: &Property, ctx: &Context) -> Result<Vec<PropertyCase>> {
    let kmax = ctx.bounds.kmax;
    let mut out = Vec::new();
    for d in &ctx.modules {
        for k in d.lattice() {
            if k.is_zero() || !k.is_proper() {
                continue;
            }
            let (_, iota) = FiniteModule::from_submodule(k);
            for &i in d.proper() {
                let inside = hom_preimage(&iota, d.sub(i))?;
                if !inside.is_proper() {
                    continue;
                }
                debug_assert_eq!(inside.len(), intersect(d.sub(i), k)?.len());
                let (d1, d2) = (d.clone(), d.clone());
                out.push(PropertyCase::new(
                    p,
                    format!("{}, K={}", d.label(i), k.describe()),
                    move || any_cell(kmax, |k, n| d1.holds(i, k, n)),
                    move || cellwise(kmax, &inside, |k, n| d2.holds(i, k, n)),
                ));
            }
        }
    }
    Ok(out)
}

fn quotients(p: &Property, ctx: &Context) -> Result<Vec<PropertyCase>> {
    let kmax = ctx.bounds.kmax;
    let mut out = Vec::new();
    for d in &ctx.modules {
        for k in d.lattice() {
            if k.is_zero() || !k.is_proper() {
                continue;
            }
            let (_, pi) = quotient(d.module(), k)?;
            for &i in d.proper() {
                if !k.is_subset_of(d.sub(i)) {
                    continue;
                }
                let image = hom_image(&pi, d.sub(i))?;
                let d = d.clone();
                out.push(PropertyCase::always(p, format!("{}, K={}", d.label(i), k.describe()), move || {
                    for kk in 1..=kmax {
                        for n in 1..=kmax {
                            let (up, down) = (d.verdict(i, kk, n)?, is_kn_closed(&image, kk, n)?);
                            if up.holds != down.holds {
                                return Ok(Some(format!(
                                    "({kk},{n}): N {} ({}), N/K {} ({})",
                                    up.holds,
                                    witness_text(d.module(), &up),
                                    down.holds,
                                    witness_text(image.module(), &down)
                                )));
                            }
                        }
                    }
                    Ok(None)
                }));
            }
        }
    }
    Ok(out)
}

/// Summands `M1, M2` for every catalog module presented with two cyclic factors.
fn summand_pairs(ctx: &Context) -> Result<Vec<(Arc<FiniteModule>, Arc<FiniteModule>)>> {
    let mut out = Vec::new();
    for d in &ctx.modules {
        if let Some(&[a, b]) = d.module().orders() {
            let ring = d.module().ring();
            out.push((build_module(ring, &[a])?, build_module(ring, &[b])?));
        }
    }
    Ok(out)
}

fn proper_subs(module: &Arc<FiniteModule>, cap: usize) -> Result<Vec<Submodule>> {
    Ok(enumerate_submodules(module, cap)?.into_iter().filter(Submodule::is_proper).collect())
}

fn summand_cases(p: &Property, ctx: &Context, left: bool) -> Result<Vec<PropertyCase>> {
    let kmax = ctx.bounds.kmax;
    let cap = ctx.bounds.module_cap;
    let mut out = Vec::new();
    for (m1, m2) in summand_pairs(ctx)? {
        let ds = Arc::new(direct_sum(&m1, &m2)?);
        let side = if left { &m1 } else { &m2 };
        for n_sub in proper_subs(side, cap)? {
            let lifted = if left { ds.lift_left(&n_sub)? } else { ds.lift_right(&n_sub)? };
            let label = format!("N={} in {}, inside {}", n_sub.describe(), side.describe(), ds.module().describe());
            out.push(PropertyCase::always(p, label, move || {
                for k in 1..=kmax {
                    for n in 1..=kmax {
                        let (small, big) = (is_kn_closed(&n_sub, k, n)?, is_kn_closed(&lifted, k, n)?);
                        if small.holds != big.holds {
                            return Ok(Some(format!(
                                "({k},{n}): summand {} ({}), lifted {} ({})",
                                small.holds,
                                witness_text(n_sub.module(), &small),
                                big.holds,
                                witness_text(lifted.module(), &big)
                            )));
                        }
                    }
                }
                Ok(None)
            }));
        }
    }
    Ok(out)
}

fn left_summand(p: &Property, ctx: &Context) -> Result<Vec<PropertyCase>> {
    summand_cases(p, ctx, true)
}

fn right_summand(p: &Property, ctx: &Context) -> Result<Vec<PropertyCase>> {
    summand_cases(p, ctx, false)
}

fn both_summands(p: &Property, ctx: &Context) -> Result<Vec<PropertyCase>> {
    let kmax = ctx.bounds.kmax;
    let cap = ctx.bounds.module_cap;
    let mut out = Vec::new();
    for (m1, m2) in summand_pairs(ctx)? {
        let ds = direct_sum(&m1, &m2)?;
        for n1 in proper_subs(&m1, cap)? {
            for n2 in proper_subs(&m2, cap)? {
                let both = ds.lift_both(&n1, &n2)?;
                let label = format!("N1={}, N2={} in {}", n1.describe(), n2.describe(), ds.module().describe());
                let (a1, a2, b1, b2) = (n1.clone(), n2.clone(), n1.clone(), n2);
                out.push(PropertyCase::new(
                    p,
                    label,
                    move || {
                        any_cell(kmax, |k, n| {
                            Ok(n >= 2 && is_kn_closed(&a1, k, n - 1)?.holds && is_kn_closed(&a2, k, n - 1)?.holds)
                        })
                    },
                    move || {
                        cellwise(kmax, &both, |k, n| {
                            Ok(n >= 2 && is_kn_closed(&b1, k, n - 1)?.holds && is_kn_closed(&b2, k, n - 1)?.holds)
                        })
                    },
                ));
            }
        }
    }
    Ok(out)
}
