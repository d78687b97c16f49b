//! Statements about a single submodule and its residual ideals.

use knsub_core::module::{residual_element, residual_module};
use knsub_core::predicates::{colon_test, is_kn_closed_over_submodules, is_strongly_kn_closed_over_submodules};
use knsub_core::ring::{is_kn_closed_ideal, is_semi_n_absorbing_ideal};

use super::{describe_witness, per_cell};
use crate::error::Result;
use crate::property::{unless, Context, Property, PropertyCase, Tier};

pub static PROPERTIES: &[Property] = &[
    Property {
        name: "T-l1",
        tier: Tier::Verified,
        statement: "(k,n)-closed iff r^k L ⊆ N forces r^(n-1) L ⊆ N or r^n ∈ (N:M) for every submodule L",
        vacuity_note: None,
        generate: element_vs_submodule_form,
    },
    Property {
        name: "T-t0",
        tier: Tier::Verified,
        statement: "N (k,n)-closed ⇒ (N:M) is a (k,n)-closed ideal",
        vacuity_note: None,
        generate: residual_inherits,
    },
    Property {
        name: "T-tsm1",
        tier: Tier::Verified,
        statement: "N (k,n)-closed ⇒ (N:x) is a (k,n)-closed ideal for every x ∉ N",
        vacuity_note: None,
        generate: element_residuals_inherit,
    },
    Property {
        name: "T-tsm2",
        tier: Tier::Verified,
        statement: "(N:x) (k,n)-closed for every x ∉ N ⇒ N is (k,n+1)-closed",
        vacuity_note: None,
        generate: element_residuals_lift,
    },
    Property {
        name: "T-lsm",
        tier: Tier::Verified,
        statement: "k > n: (N:m_i) (k,n)-closed for all generators ⇒ (N:M) (k,n)-closed; for cyclic M = Rm, (N:m) closed iff (N:M) closed",
        vacuity_note: None,
        generate: generator_residuals,
    },
    Property {
        name: "T-c2",
        tier: Tier::Verified,
        statement: "over a field, M = Rm: (N:m) (k,n)-closed ⇒ N (k,n+1)-closed; (N:m) semi-n-absorbing ⇒ N semi-(n+1)-absorbing",
        vacuity_note: Some("prime fields have only the zero proper submodule in a cyclic module"),
        generate: field_lift,
    },
    Property {
        name: "T-prop-colon",
        tier: Tier::Verified,
        statement: "k ≥ n-1: N (k,n)-closed iff (N:r^k x) = (N:r^(n-1) x) or r^n ∈ (N:M) for all r, x",
        vacuity_note: None,
        generate: colon_equivalence,
    },
    Property {
        name: "T-prop-colon-full",
        tier: Tier::Scrutiny,
        statement: "N (k,n)-closed iff (N:r^k x) = (N:r^(n-1) x) or r^n ∈ (N:M), for every k and n",
        vacuity_note: None,
        generate: colon_equivalence_full,
    },
    Property {
        name: "T-t1-1",
        tier: Tier::Verified,
        statement: "N semiprime ⇒ N (k,n)-closed for all k and all n ≥ 2",
        vacuity_note: None,
        generate: semiprime_closed,
    },
    Property {
        name: "T-t1-1-n1",
        tier: Tier::Scrutiny,
        statement: "N semiprime ⇒ N (k,1)-closed for all k",
        vacuity_note: None,
        generate: semiprime_closed_n1,
    },
    Property {
        name: "T-t1-2",
        tier: Tier::Verified,
        statement: "N n-absorbing ⇒ N semi-n-absorbing",
        vacuity_note: None,
        generate: absorbing_semi,
    },
    Property {
        name: "T-t1-3",
        tier: Tier::Verified,
        statement: "N n-absorbing ⇒ N (k,n)-closed for every k",
        vacuity_note: None,
        generate: absorbing_closed,
    },
    Property {
        name: "T-t1-4",
        tier: Tier::Verified,
        statement: "N (k,n)-closed ⇒ N (k',n')-closed for k' ≤ k, n' ≥ n",
        vacuity_note: None,
        generate: monotone,
    },
    Property {
        name: "T-t1-5",
        tier: Tier::Verified,
        statement: "N semi-n-absorbing ⇒ N semi-n'-absorbing for n' ≥ n",
        vacuity_note: None,
        generate: semi_monotone,
    },
    Property {
        name: "T-t1-6",
        tier: Tier::Verified,
        statement: "N quasi-prime ⇒ N (k,n)-closed for k ≥ n ≥ 2",
        vacuity_note: None,
        generate: quasi_prime_closed,
    },
    Property {
        name: "T-ti",
        tier: Tier::Verified,
        statement: "N semi-n-absorbing ⇒ N (k,n)-closed for every k",
        vacuity_note: None,
        generate: semi_all_k,
    },
    Property {
        name: "T-ciff",
        tier: Tier::Verified,
        statement: "k > n: N (k,n)-closed iff N semi-n-absorbing",
        vacuity_note: None,
        generate: collapse,
    },
    Property {
        name: "T-l2",
        tier: Tier::Verified,
        statement: "strongly (k,n)-closed: the element form I^k x ⊆ N agrees with the submodule form I^k L ⊆ N",
        vacuity_note: None,
        generate: strong_forms,
    },
    Property {
        name: "T-pid",
        tier: Tier::Verified,
        statement: "over a principal ideal ring, strongly (k,n)-closed iff (k,n)-closed",
        vacuity_note: None,
        generate: strong_equals_plain,
    },
    Property {
        name: "T-resmod",
        tier: Tier::Verified,
        statement: "N (k,n)-closed ⇒ (N:_M I) (k,n)-closed for every ideal I with (N:_M I) proper",
        vacuity_note: None,
        generate: module_residual_closed,
    },
    Property {
        name: "T-resmod2",
        tier: Tier::Scrutiny,
        statement: "N strongly (k,n)-closed ⇒ (N:_M I^k) = (N:_M I^(n-1)) for every ideal I",
        vacuity_note: None,
        generate: module_residual_powers,
    },
    Property {
        name: "T-NL",
        tier: Tier::Verified,
        statement: "strongly (k,n)-closed iff the strong condition holds for submodules L ⊇ N",
        vacuity_note: None,
        generate: strong_supersets,
    },
    Property {
        name: "T-st1",
        tier: Tier::Verified,
        statement: "N (k,2)-closed and I^k M ⊆ N ⇒ 2 I^2 ⊆ (N:M)",
        vacuity_note: None,
        generate: two_squared,
    },
    Property {
        name: "T-st2",
        tier: Tier::Verified,
        statement: "2 a unit and N (k,2)-closed ⇒ N strongly (k,2)-closed",
        vacuity_note: None,
        generate: two_unit_strong,
    },
];

fn ideal_witness(x: Option<u64>) -> String {
    format!("x={}", x.map_or("?".into(), |x| x.to_string()))
}

fn element_vs_submodule_form(p: &Property, ctx: &Context) -> Result<Vec<PropertyCase>> {
    Ok(per_cell(p, ctx, &ctx.modules, |_, _| true, |p, d, i, k, n, label| {
        let d = d.clone();
        PropertyCase::always(p, label, move || {
            let element = d.verdict(i, k, n)?;
            let submodule = is_kn_closed_over_submodules(d.sub(i), k, n, d.lattice())?;
            Ok(unless(element.holds == submodule.holds, || {
                format!("element form {} ({}), submodule form {}", element.holds, describe_witness(&d, &element), submodule.holds)
            }))
        })
    }))
}

fn residual_inherits(p: &Property, ctx: &Context) -> Result<Vec<PropertyCase>> {
    Ok(per_cell(p, ctx, &ctx.modules, |_, _| true, |p, d, i, k, n, label| {
        let (d1, d2) = (d.clone(), d.clone());
        PropertyCase::new(
            p,
            label,
            move || d1.holds(i, k, n),
            move || {
                let ideal = d2.residual(i);
                let v = is_kn_closed_ideal(&ideal, k, n)?;
                Ok(unless(v.holds, || format!("(N:M)={ideal}, {}", ideal_witness(v.witness))))
            },
        )
    }))
}

/// First `x ∉ N` whose residual `(N:x)` is not a (k,n)-closed ideal.
fn bad_element_residual(d: &crate::context::ModuleData, i: usize, k: u32, n: u32) -> Result<Option<String>> {
    let n_sub = d.sub(i);
    for x in d.module().elements().filter(|&x| !n_sub.contains(x)) {
        let ideal = residual_element(n_sub, x);
        let v = is_kn_closed_ideal(&ideal, k, n)?;
        if !v.holds {
            return Ok(Some(format!("m={}, (N:m)={ideal}, {}", d.format_element(x), ideal_witness(v.witness))));
        }
    }
    Ok(None)
}

fn element_residuals_inherit(p: &Property, ctx: &Context) -> Result<Vec<PropertyCase>> {
    Ok(per_cell(p, ctx, &ctx.modules, |_, _| true, |p, d, i, k, n, label| {
        let (d1, d2) = (d.clone(), d.clone());
        PropertyCase::new(p, label, move || d1.holds(i, k, n), move || bad_element_residual(&d2, i, k, n))
    }))
}

fn element_residuals_lift(p: &Property, ctx: &Context) -> Result<Vec<PropertyCase>> {
    Ok(per_cell(p, ctx, &ctx.modules, |_, _| true, |p, d, i, k, n, label| {
        let (d1, d2) = (d.clone(), d.clone());
        PropertyCase::new(
            p,
            label,
            move || Ok(bad_element_residual(&d1, i, k, n)?.is_none()),
            move || {
                let v = d2.verdict(i, k, n + 1)?;
                Ok(unless(v.holds, || format!("(k,n+1) fails: {}", describe_witness(&d2, &v))))
            },
        )
    }))
}

fn generator_residuals(p: &Property, ctx: &Context) -> Result<Vec<PropertyCase>> {
    Ok(per_cell(p, ctx, &ctx.modules, |k, n| k > n, |p, d, i, k, n, label| {
        let (d1, d2) = (d.clone(), d.clone());
        let gens_closed = move |d: &crate::context::ModuleData| -> Result<bool> {
            // A generator inside N has (N:m_i) = R, which is not a closed ideal.
            for &g in d.module().generators() {
                let colon = residual_element(d.sub(i), g);
                if !colon.is_proper() || !is_kn_closed_ideal(&colon, k, n)?.holds {
                    return Ok(false);
                }
            }
            Ok(true)
        };
        PropertyCase::new(
            p,
            label,
            move || Ok(d1.module().generators().len() == 1 || gens_closed(&d1)?),
            move || {
                let whole = is_kn_closed_ideal(&d2.residual(i), k, n)?.holds;
                let gens = gens_closed(&d2)?;
                let ok = if d2.module().generators().len() == 1 { whole == gens } else { whole };
                Ok(unless(ok, || format!("generator residuals closed: {gens}, (N:M) closed: {whole}")))
            },
        )
    }))
}

fn field_lift(p: &Property, ctx: &Context) -> Result<Vec<PropertyCase>> {
    let cyclic: Vec<_> = ctx.fields.iter().filter(|d| d.module().generators().len() == 1).cloned().collect();
    let mut out = per_cell(p, ctx, &cyclic, |_, _| true, |p, d, i, k, n, label| {
        let (d1, d2) = (d.clone(), d.clone());
        PropertyCase::new(
            p,
            label,
            move || {
                let g = d1.module().generators()[0];
                Ok(is_kn_closed_ideal(&residual_element(d1.sub(i), g), k, n)?.holds)
            },
            move || {
                let v = d2.verdict(i, k, n + 1)?;
                Ok(unless(v.holds, || describe_witness(&d2, &v)))
            },
        )
    });
    for d in &cyclic {
        for &i in d.proper() {
            for n in 1..=ctx.bounds.kmax {
                let (d1, d2) = (d.clone(), d.clone());
                out.push(PropertyCase::new(
                    p,
                    format!("{}, semi-n form, n={n}", d.label(i)),
                    move || {
                        let g = d1.module().generators()[0];
                        Ok(is_semi_n_absorbing_ideal(&residual_element(d1.sub(i), g), n)?.holds)
                    },
                    move || {
                        let v = d2.verdict(i, n + 1, n + 1)?;
                        Ok(unless(v.holds, || describe_witness(&d2, &v)))
                    },
                ));
            }
        }
    }
    Ok(out)
}

fn colon_case(p: &Property, d: &std::sync::Arc<crate::context::ModuleData>, i: usize, k: u32, n: u32, label: String) -> PropertyCase {
    let d = d.clone();
    PropertyCase::always(p, label, move || {
        let closed = d.verdict(i, k, n)?;
        let colon = colon_test(d.sub(i), k, n)?;
        Ok(unless(closed.holds == colon.holds, || {
            format!(
                "closed: {} ({}), colon form: {} ({})",
                closed.holds,
                describe_witness(&d, &closed),
                colon.holds,
                describe_witness(&d, &colon)
            )
        }))
    })
}

fn colon_equivalence(p: &Property, ctx: &Context) -> Result<Vec<PropertyCase>> {
    Ok(per_cell(p, ctx, &ctx.modules, |k, n| k + 1 >= n, colon_case))
}

fn colon_equivalence_full(p: &Property, ctx: &Context) -> Result<Vec<PropertyCase>> {
    Ok(per_cell(p, ctx, &ctx.modules, |_, _| true, colon_case))
}

fn implied_by_semiprime(p: &Property, ctx: &Context, keep: fn(u32, u32) -> bool) -> Vec<PropertyCase> {
    per_cell(p, ctx, &ctx.modules, keep, |p, d, i, k, n, label| {
        let (d1, d2) = (d.clone(), d.clone());
        PropertyCase::new(
            p,
            label,
            move || Ok(d1.semiprime(i)?.holds),
            move || {
                let v = d2.verdict(i, k, n)?;
                Ok(unless(v.holds, || describe_witness(&d2, &v)))
            },
        )
    })
}

fn semiprime_closed(p: &Property, ctx: &Context) -> Result<Vec<PropertyCase>> {
    Ok(implied_by_semiprime(p, ctx, |_, n| n >= 2))
}

fn semiprime_closed_n1(p: &Property, ctx: &Context) -> Result<Vec<PropertyCase>> {
    Ok(implied_by_semiprime(p, ctx, |_, n| n == 1))
}

fn absorbing_semi(p: &Property, ctx: &Context) -> Result<Vec<PropertyCase>> {
    let cap = ctx.bounds.nabs_max.min(ctx.bounds.kmax);
    Ok(per_cell(p, ctx, &ctx.modules, move |k, n| k == n && n <= cap, |p, d, i, _, n, _| {
        let (d1, d2) = (d.clone(), d.clone());
        PropertyCase::new(
            p,
            format!("{}, n={n}", d.label(i)),
            move || Ok(d1.absorbing(i, n)?.holds),
            move || {
                let v = d2.verdict(i, n, n)?;
                Ok(unless(v.holds, || describe_witness(&d2, &v)))
            },
        )
    }))
}

fn absorbing_closed(p: &Property, ctx: &Context) -> Result<Vec<PropertyCase>> {
    let cap = ctx.bounds.nabs_max;
    Ok(per_cell(p, ctx, &ctx.modules, move |_, n| n <= cap, |p, d, i, k, n, label| {
        let (d1, d2) = (d.clone(), d.clone());
        PropertyCase::new(
            p,
            label,
            move || Ok(d1.absorbing(i, n)?.holds),
            move || {
                let v = d2.verdict(i, k, n)?;
                Ok(unless(v.holds, || describe_witness(&d2, &v)))
            },
        )
    }))
}

fn monotone(p: &Property, ctx: &Context) -> Result<Vec<PropertyCase>> {
    let kmax = ctx.bounds.kmax;
    Ok(per_cell(p, ctx, &ctx.modules, |_, _| true, move |p, d, i, k, n, label| {
        let (d1, d2) = (d.clone(), d.clone());
        PropertyCase::new(
            p,
            label,
            move || d1.holds(i, k, n),
            move || {
                for k2 in 1..=k {
                    for n2 in n..=kmax {
                        let v = d2.verdict(i, k2, n2)?;
                        if !v.holds {
                            return Ok(Some(format!("({k2},{n2}) fails: {}", describe_witness(&d2, &v))));
                        }
                    }
                }
                Ok(None)
            },
        )
    }))
}

fn semi_monotone(p: &Property, ctx: &Context) -> Result<Vec<PropertyCase>> {
    let kmax = ctx.bounds.kmax;
    Ok(per_cell(p, ctx, &ctx.modules, |k, n| k == n, move |p, d, i, _, n, _| {
        let (d1, d2) = (d.clone(), d.clone());
        PropertyCase::new(
            p,
            format!("{}, n={n}", d.label(i)),
            move || d1.semi(i, n),
            move || {
                for n2 in n..=kmax {
                    let v = d2.verdict(i, n2, n2)?;
                    if !v.holds {
                        return Ok(Some(format!("semi-{n2} fails: {}", describe_witness(&d2, &v))));
                    }
                }
                Ok(None)
            },
        )
    }))
}

fn quasi_prime_closed(p: &Property, ctx: &Context) -> Result<Vec<PropertyCase>> {
    Ok(per_cell(p, ctx, &ctx.modules, |k, n| k >= n && n >= 2, |p, d, i, k, n, label| {
        let (d1, d2) = (d.clone(), d.clone());
        PropertyCase::new(
            p,
            label,
            move || Ok(d1.quasi_prime(i)?.holds),
            move || {
                let v = d2.verdict(i, k, n)?;
                Ok(unless(v.holds, || describe_witness(&d2, &v)))
            },
        )
    }))
}

fn semi_all_k(p: &Property, ctx: &Context) -> Result<Vec<PropertyCase>> {
    Ok(per_cell(p, ctx, &ctx.modules, |_, _| true, |p, d, i, k, n, label| {
        let (d1, d2) = (d.clone(), d.clone());
        PropertyCase::new(
            p,
            label,
            move || d1.semi(i, n),
            move || {
                let v = d2.verdict(i, k, n)?;
                Ok(unless(v.holds, || describe_witness(&d2, &v)))
            },
        )
    }))
}

fn collapse(p: &Property, ctx: &Context) -> Result<Vec<PropertyCase>> {
    Ok(per_cell(p, ctx, &ctx.modules, |k, n| k > n, |p, d, i, k, n, label| {
        let d = d.clone();
        PropertyCase::always(p, label, move || {
            let (kn, nn) = (d.verdict(i, k, n)?, d.verdict(i, n, n)?);
            Ok(unless(kn.holds == nn.holds, || {
                format!("(k,n): {} ({}), (n,n): {} ({})", kn.holds, describe_witness(&d, &kn), nn.holds, describe_witness(&d, &nn))
            }))
        })
    }))
}

fn strong_forms(p: &Property, ctx: &Context) -> Result<Vec<PropertyCase>> {
    Ok(per_cell(p, ctx, &ctx.modules, |_, _| true, |p, d, i, k, n, label| {
        let d = d.clone();
        PropertyCase::always(p, label, move || {
            let element = d.strongly(i, k, n)?;
            let submodule = is_strongly_kn_closed_over_submodules(d.sub(i), k, n, d.lattice(), false)?;
            Ok(unless(element == submodule.holds, || {
                format!("element form {element}, submodule form {} ({})", submodule.holds, describe_witness(&d, &submodule))
            }))
        })
    }))
}

fn strong_equals_plain(p: &Property, ctx: &Context) -> Result<Vec<PropertyCase>> {
    Ok(per_cell(p, ctx, &ctx.modules, |_, _| true, |p, d, i, k, n, label| {
        let d = d.clone();
        PropertyCase::always(p, label, move || {
            let (strong, plain) = (d.strongly(i, k, n)?, d.verdict(i, k, n)?);
            Ok(unless(strong == plain.holds, || {
                format!("strongly: {strong}, plain: {} ({})", plain.holds, describe_witness(&d, &plain))
            }))
        })
    }))
}

fn module_residual_closed(p: &Property, ctx: &Context) -> Result<Vec<PropertyCase>> {
    Ok(per_cell(p, ctx, &ctx.modules, |_, _| true, |p, d, i, k, n, label| {
        let (d1, d2) = (d.clone(), d.clone());
        PropertyCase::new(
            p,
            label,
            move || d1.holds(i, k, n),
            move || {
                for ideal in d2.module().ring().ideals() {
                    let colon = residual_module(d2.sub(i), &ideal)?;
                    if !colon.is_proper() {
                        continue;
                    }
                    let j = d2.locate(&colon)?;
                    let v = d2.verdict(j, k, n)?;
                    if !v.holds {
                        return Ok(Some(format!(
                            "I={ideal}, (N:_M I)={}, {}",
                            colon.describe(),
                            describe_witness(&d2, &v)
                        )));
                    }
                }
                Ok(None)
            },
        )
    }))
}

fn module_residual_powers(p: &Property, ctx: &Context) -> Result<Vec<PropertyCase>> {
    Ok(per_cell(p, ctx, &ctx.modules, |_, _| true, |p, d, i, k, n, label| {
        let (d1, d2) = (d.clone(), d.clone());
        PropertyCase::new(
            p,
            label,
            move || d1.strongly(i, k, n),
            move || {
                for ideal in d2.module().ring().ideals() {
                    let high = residual_module(d2.sub(i), &ideal.power(k))?;
                    let low = residual_module(d2.sub(i), &ideal.power(n - 1))?;
                    if high != low {
                        return Ok(Some(format!(
                            "I={ideal}: (N:_M I^k)={}, (N:_M I^(n-1))={}",
                            high.describe(),
                            low.describe()
                        )));
                    }
                }
                Ok(None)
            },
        )
    }))
}

fn strong_supersets(p: &Property, ctx: &Context) -> Result<Vec<PropertyCase>> {
    Ok(per_cell(p, ctx, &ctx.modules, |_, _| true, |p, d, i, k, n, label| {
        let d = d.clone();
        PropertyCase::always(p, label, move || {
            let element = d.strongly(i, k, n)?;
            let supersets = is_strongly_kn_closed_over_submodules(d.sub(i), k, n, d.lattice(), true)?;
            Ok(unless(element == supersets.holds, || {
                format!("strongly: {element}, over L ⊇ N: {} ({})", supersets.holds, describe_witness(&d, &supersets))
            }))
        })
    }))
}

fn two_squared(p: &Property, ctx: &Context) -> Result<Vec<PropertyCase>> {
    Ok(per_cell(p, ctx, &ctx.modules, |_, n| n == 2, |p, d, i, k, _, _| {
        let (d1, d2) = (d.clone(), d.clone());
        PropertyCase::new(
            p,
            format!("{}, k={k}", d.label(i)),
            move || d1.holds(i, k, 2),
            move || {
                let ring = d2.module().ring();
                let colon = d2.residual(i);
                for ideal in ring.ideals() {
                    let g = ideal.generator();
                    if colon.contains(ring.pow(g, k)) && !colon.contains(ring.mul(2 % ring.modulus(), ring.pow(g, 2))) {
                        return Ok(Some(format!("I={ideal}: I^k M ⊆ N but 2I^2 ⊄ (N:M)={colon}")));
                    }
                }
                Ok(None)
            },
        )
    }))
}

fn two_unit_strong(p: &Property, ctx: &Context) -> Result<Vec<PropertyCase>> {
    Ok(per_cell(p, ctx, &ctx.modules, |_, n| n == 2, |p, d, i, k, _, _| {
        let (d1, d2) = (d.clone(), d.clone());
        PropertyCase::new(
            p,
            format!("{}, k={k}", d.label(i)),
            move || {
                let ring = d1.module().ring();
                Ok(ring.is_unit(2 % ring.modulus()) && d1.holds(i, k, 2)?)
            },
            move || Ok(unless(d2.strongly(i, k, 2)?, || "not strongly (k,2)-closed".into())),
        )
    }))
}
