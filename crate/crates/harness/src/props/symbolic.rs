//! Statements about submodules `cZ` of the `Z`-module `Z`, and the worked examples.

use knsub_core::predicates::{is_kn_closed, is_quasi_prime};
use knsub_core::symbolic::{
    factorization_condition, pt_condition, tkn_condition, zint_ideal_is_kn_closed, zint_is_kn_closed,
    zint_is_n_absorbing, zint_is_semi_n_absorbing, ZIntVerdict,
};
use knsub_core::{reduce_integer_scalars, Submodule};

use crate::error::Result;
use crate::property::{unless, Context, Property, PropertyCase, Tier};

pub static PROPERTIES: &[Property] = &[
    Property {
        name: "T-tkn",
        tier: Tier::Verified,
        statement: "p^t Z (k,n)-closed with n ≤ k ⇒ the decomposition conditions on t hold",
        vacuity_note: None,
        generate: prime_power_conditions,
    },
    Property {
        name: "T-cor-semi-n",
        tier: Tier::Scrutiny,
        statement: "p^t Z semi-n-absorbing ⇒ t = na + r with a ≥ 0 and 1 ≤ r < n",
        vacuity_note: None,
        generate: semi_n_literal,
    },
    Property {
        name: "T-cor-semi-2",
        tier: Tier::Verified,
        statement: "p^t Z semi-2-absorbing ⇒ t ∈ {1,2}",
        vacuity_note: None,
        generate: semi_two,
    },
    Property {
        name: "T-pid-fact",
        tier: Tier::Verified,
        statement: "cZ (k,n)-closed with 1 ≤ n ≤ k ⇒ every exponent of c satisfies the case for k",
        vacuity_note: None,
        generate: factorization,
    },
    Property {
        name: "T-Pt",
        tier: Tier::Verified,
        statement: "p^t Z (k,n)-closed with 1 ≤ n ≤ k ⇒ t ≤ n, or t = ka + r = na + d, or t = ka + r = n(a+1)",
        vacuity_note: None,
        generate: prime_power_cases,
    },
    Property {
        name: "E-e1",
        tier: Tier::Scrutiny,
        statement: "8Z is a (2,1)-closed ideal; 8Z is not a (2,2)-closed submodule",
        vacuity_note: None,
        generate: example_eight,
    },
    Property {
        name: "E-e",
        tier: Tier::Scrutiny,
        statement: "12Z is semi-2-absorbing and 4Z is not",
        vacuity_note: None,
        generate: example_four_twelve,
    },
    Property {
        name: "E-30",
        tier: Tier::Verified,
        statement: "30Z is semi-2-absorbing and (3,2)-closed but not 2-absorbing, witness 2·3·5",
        vacuity_note: None,
        generate: example_thirty,
    },
    Property {
        name: "E-pn",
        tier: Tier::Verified,
        statement: "{0} ⊆ Z_(p^n): (n,n)-closed, not (n,n-1)-closed, not quasi-prime, not semi-(n-1)-absorbing",
        vacuity_note: None,
        generate: example_prime_power_zero,
    },
    Property {
        name: "E-int",
        tier: Tier::Verified,
        statement: "p^n q^n Z is not semi-n-absorbing, witness r = p, m = q^n",
        vacuity_note: None,
        generate: example_intersection,
    },
];

const PRIMES: [u64; 3] = [2, 3, 5];
const TMAX: u32 = 12;

fn witness_of(v: &ZIntVerdict) -> String {
    match &v.witness {
        Some(w) => format!("{w:?}"),
        None => "none".into(),
    }
}

/// Cases over `p^t` for the given primes, `t ≤ TMAX` and `1 ≤ n ≤ k ≤ kmax`.
fn prime_power_cells(
    p: &Property,
    ctx: &Context,
    primes: &[u64],
    holds: fn(u32, u32, u32) -> bool,
    condition: &'static str,
) -> Vec<PropertyCase> {
    if !ctx.symbolic {
        return Vec::new();
    }
    let kmax = ctx.bounds.kmax;
    let mut out = Vec::new();
    for &q in primes {
        for t in 1..=TMAX {
            let c = q.pow(t);
            for k in 1..=kmax {
                for n in 1..=k {
                    out.push(PropertyCase::new(
                        p,
                        format!("{c}Z (p={q}, t={t}), k={k}, n={n}"),
                        move || Ok(zint_is_kn_closed(c, k, n)?.holds),
                        move || Ok(unless(holds(t, k, n), || format!("{condition} fails for t={t}"))),
                    ));
                }
            }
        }
    }
    out
}

fn prime_power_conditions(p: &Property, ctx: &Context) -> Result<Vec<PropertyCase>> {
    Ok(prime_power_cells(p, ctx, &PRIMES[..2], tkn_condition, "decomposition condition"))
}

fn prime_power_cases(p: &Property, ctx: &Context) -> Result<Vec<PropertyCase>> {
    Ok(prime_power_cells(p, ctx, &PRIMES, pt_condition, "three-case condition"))
}

/// `t = na + r` with `a ≥ 0`, `1 ≤ r < n`.
fn literal_semi_condition(t: u32, n: u32) -> bool {
    (0..=t / n).any(|a| {
        let r = t - n * a;
        r >= 1 && r < n
    })
}

fn semi_cells(p: &Property, ctx: &Context, ns: &[u32], holds: fn(u32, u32) -> bool) -> Vec<PropertyCase> {
    if !ctx.symbolic {
        return Vec::new();
    }
    let mut out = Vec::new();
    for &q in &PRIMES[..2] {
        for t in 1..=TMAX {
            let c = q.pow(t);
            for &n in ns {
                out.push(PropertyCase::new(
                    p,
                    format!("{c}Z (p={q}, t={t}), n={n}"),
                    move || Ok(zint_is_semi_n_absorbing(c, n)?.holds),
                    move || Ok(unless(holds(t, n), || format!("t={t} violates the condition for n={n}"))),
                ));
            }
        }
    }
    out
}

fn semi_n_literal(p: &Property, ctx: &Context) -> Result<Vec<PropertyCase>> {
    let ns: Vec<u32> = (1..=ctx.bounds.kmax).collect();
    Ok(semi_cells(p, ctx, &ns, literal_semi_condition))
}

fn semi_two(p: &Property, ctx: &Context) -> Result<Vec<PropertyCase>> {
    let mut out = semi_cells(p, ctx, &[2], |t, _| t <= 2);
    if ctx.symbolic {
        out.push(PropertyCase::always(p, "8Z is not semi-2-absorbing", || {
            let v = zint_is_semi_n_absorbing(8, 2)?;
            Ok(unless(!v.holds, || "8Z is semi-2-absorbing".into()))
        }));
    }
    Ok(out)
}

fn factorization(p: &Property, ctx: &Context) -> Result<Vec<PropertyCase>> {
    if !ctx.symbolic {
        return Ok(Vec::new());
    }
    let kmax = ctx.bounds.kmax;
    let mut out = Vec::new();
    for c in 2..=300u64 {
        for k in 1..=kmax {
            for n in 1..=k {
                out.push(PropertyCase::new(
                    p,
                    format!("{c}Z, k={k}, n={n}"),
                    move || Ok(zint_is_kn_closed(c, k, n)?.holds),
                    move || Ok(unless(factorization_condition(c, k, n)?, || "exponent condition fails".into())),
                ));
            }
        }
    }
    Ok(out)
}

fn claims(
    p: &Property,
    ctx: &Context,
    list: Vec<Claim>,
) -> Vec<PropertyCase> {
    if !ctx.symbolic {
        return Vec::new();
    }
    list.into_iter().map(|(label, check)| PropertyCase::always(p, label, check)).collect()
}

type Claim = (String, Box<dyn Fn() -> Result<Option<String>> + Send + Sync>);

fn claim(label: &str, check: impl Fn() -> Result<Option<String>> + Send + Sync + 'static) -> Claim {
    (label.to_string(), Box::new(check))
}

fn example_eight(p: &Property, ctx: &Context) -> Result<Vec<PropertyCase>> {
    Ok(claims(
        p,
        ctx,
        vec![
            claim("8Z is a (2,1)-closed ideal", || {
                let v = zint_ideal_is_kn_closed(8, 2, 1)?;
                Ok(unless(v.holds, || format!("x={}", witness_of(&v))))
            }),
            claim("8Z is not a (2,2)-closed submodule", || {
                let v = zint_is_kn_closed(8, 2, 2)?;
                Ok(unless(!v.holds, || "8Z is (2,2)-closed".into()))
            }),
        ],
    ))
}

fn example_four_twelve(p: &Property, ctx: &Context) -> Result<Vec<PropertyCase>> {
    Ok(claims(
        p,
        ctx,
        vec![
            claim("12Z is semi-2-absorbing", || {
                let v = zint_is_semi_n_absorbing(12, 2)?;
                Ok(unless(v.holds, || format!("(r,m)={}", witness_of(&v))))
            }),
            claim("4Z is not semi-2-absorbing", || {
                let v = zint_is_semi_n_absorbing(4, 2)?;
                Ok(unless(!v.holds, || "4Z is semi-2-absorbing".into()))
            }),
        ],
    ))
}

fn example_thirty(p: &Property, ctx: &Context) -> Result<Vec<PropertyCase>> {
    Ok(claims(
        p,
        ctx,
        vec![
            claim("30Z is semi-2-absorbing", || {
                let v = zint_is_semi_n_absorbing(30, 2)?;
                Ok(unless(v.holds, || format!("(r,m)={}", witness_of(&v))))
            }),
            claim("30Z is (3,2)-closed", || {
                let v = zint_is_kn_closed(30, 3, 2)?;
                Ok(unless(v.holds, || format!("(r,m)={}", witness_of(&v))))
            }),
            claim("30Z is not 2-absorbing, witness 2·3·5", || {
                let v = zint_is_n_absorbing(30, 2)?;
                Ok(unless(v.witness.as_deref() == Some(&[2, 3, 5][..]), || {
                    format!("holds={}, witness {}", v.holds, witness_of(&v))
                }))
            }),
        ],
    ))
}

fn example_prime_power_zero(p: &Property, ctx: &Context) -> Result<Vec<PropertyCase>> {
    let mut list = Vec::new();
    for (q, n) in [(2u64, 2u32), (2, 3), (3, 2)] {
        let c = q.pow(n);
        let zero = move || -> Result<Submodule> { Ok(Submodule::zero(&reduce_integer_scalars(&[c])?)) };
        list.push(claim(&format!("{{0}} ⊆ Z_{c} is ({n},{n})-closed"), move || {
            let v = is_kn_closed(&zero()?, n, n)?;
            Ok(unless(v.holds, || "fails".into()))
        }));
        list.push(claim(&format!("{{0}} ⊆ Z_{c} is not ({n},{})-closed", n - 1), move || {
            Ok(unless(!is_kn_closed(&zero()?, n, n - 1)?.holds, || "holds".into()))
        }));
        list.push(claim(&format!("{{0}} ⊆ Z_{c} is not quasi-prime"), move || {
            Ok(unless(!is_quasi_prime(&zero()?)?.holds, || "holds".into()))
        }));
        list.push(claim(&format!("{{0}} ⊆ Z_{c} is not semi-{}-absorbing", n - 1), move || {
            Ok(unless(!is_kn_closed(&zero()?, n - 1, n - 1)?.holds, || "holds".into()))
        }));
    }
    Ok(claims(p, ctx, list))
}

fn example_intersection(p: &Property, ctx: &Context) -> Result<Vec<PropertyCase>> {
    let mut list = Vec::new();
    for (a, b, n) in [(2u64, 3u64, 2u32), (2, 3, 3), (2, 5, 2), (3, 5, 2)] {
        let c = a.pow(n) * b.pow(n);
        let expected = vec![a, b.pow(n)];
        list.push(claim(&format!("{c}Z = {a}^{n}Z ∩ {b}^{n}Z, n={n}"), move || {
            let v = zint_is_semi_n_absorbing(c, n)?;
            Ok(unless(!v.holds && v.witness.as_ref() == Some(&expected), || {
                format!("holds={}, witness {}", v.holds, witness_of(&v))
            }))
        }));
    }
    Ok(claims(p, ctx, list))
}
