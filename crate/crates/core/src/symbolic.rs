//! Submodules `cZ` of the `Z`-module `Z`, decided on valuation vectors.
//!
//! Membership of an integer in `cZ` depends only on its valuations at the
//! primes of `c`. Every test below compares a sum of the form
//! `j·v_p(r) + v_p(m)` (with `j ≥ 1`, or `m` absent) against `t_p`, and a
//! valuation above `t_p` compares exactly like `t_p` itself. So it suffices
//! to let `r` and `m` range over the divisors of `c`, which is what the
//! engine does; each divisor is the least positive integer with its capped
//! valuation vector.

use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::ring::{factorize, FactoredNat};

/// `cZ ⊆ Z` for `c ≥ 2`, with its divisors precomputed as valuation vectors.
#[derive(Clone, Debug)]
pub struct CyclicZSubmodule {
    c: FactoredNat,
    exponents: Vec<u32>,
    divisors: Vec<(u64, Vec<u32>)>,
}

/// Verdict of a symbolic predicate. Witness integers follow the predicate:
/// `(r, m)` for closedness, `(x)` for ideals, `(a_1, …, a_n, m)` for n-absorbing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZIntVerdict {
    pub holds: bool,
    pub witness: Option<Vec<u64>>,
}

impl ZIntVerdict {
    fn from_search(found: Option<Vec<u64>>) -> Self {
        ZIntVerdict { holds: found.is_none(), witness: found }
    }
}

fn check_exponent(name: &'static str, value: u32) -> Result<()> {
    if value == 0 {
        Err(AlgebraError::BadParameter { name, value })
    } else {
        Ok(())
    }
}

impl CyclicZSubmodule {
    pub fn new(c: u64) -> Result<Self> {
        if c < 2 {
            return Err(AlgebraError::BadGenerator(c));
        }
        let c = factorize(c);
        let primes: Vec<u64> = c.primes().collect();
        let exponents: Vec<u32> = primes.iter().map(|&p| c.exponent(p)).collect();
        let divisors = c
            .divisors()
            .into_iter()
            .map(|d| {
                let v = primes.iter().map(|&p| factorize(d).exponent(p)).collect();
                (d, v)
            })
            .collect();
        Ok(CyclicZSubmodule { c, exponents, divisors })
    }

    pub fn generator(&self) -> u64 {
        self.c.value()
    }

    pub fn factored(&self) -> &FactoredNat {
        &self.c
    }

    /// Exponents `t_p`, in increasing order of `p`.
    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    /// Integer `x` with capped valuations `vx` lies in `cZ`.
    fn member(&self, vx: &[u32]) -> bool {
        vx.iter().zip(&self.exponents).all(|(v, t)| v >= t)
    }

    /// `r^j m ∈ cZ` on valuation vectors; `m = None` means `m = 1`.
    fn power_times_in(&self, vr: &[u32], j: u32, vm: Option<&[u32]>) -> bool {
        self.exponents.iter().enumerate().all(|(i, &t)| j * vr[i] + vm.map_or(0, |vm| vm[i]) >= t)
    }

    pub fn contains(&self, x: u64) -> bool {
        x.is_multiple_of(self.c.value())
    }
}

/// `r^k m ∈ cZ ⇒ r^n ∈ cZ or r^{n−1} m ∈ cZ` for all integers; witness `(r, m)`
/// is the least such pair among divisors of `c` in lexicographic order.
pub fn zint_is_kn_closed(c: u64, k: u32, n: u32) -> Result<ZIntVerdict> {
    check_exponent("k", k)?;
    check_exponent("n", n)?;
    let cz = CyclicZSubmodule::new(c)?;
    for (r, vr) in &cz.divisors {
        if cz.power_times_in(vr, n, None) {
            continue;
        }
        for (m, vm) in &cz.divisors {
            if cz.power_times_in(vr, k, Some(vm)) && !cz.power_times_in(vr, n - 1, Some(vm)) {
                return Ok(ZIntVerdict::from_search(Some(vec![*r, *m])));
            }
        }
    }
    Ok(ZIntVerdict::from_search(None))
}

/// The (n,n)-closed case.
pub fn zint_is_semi_n_absorbing(c: u64, n: u32) -> Result<ZIntVerdict> {
    zint_is_kn_closed(c, n, n)
}

fn next_multiset(idx: &mut [usize], bound: usize) -> bool {
    for i in (0..idx.len()).rev() {
        if idx[i] + 1 < bound {
            idx[i] += 1;
            let v = idx[i];
            idx[i + 1..].iter_mut().for_each(|x| *x = v);
            return true;
        }
    }
    false
}

/// `a_1⋯a_n m ∈ cZ ⇒ a_1⋯a_n ∈ cZ` or some `a_1⋯â_i⋯a_n m ∈ cZ`.
/// Witness `(a_1, …, a_n, m)` with `a_1 ≤ … ≤ a_n`, least in scan order.
pub fn zint_is_n_absorbing(c: u64, n: u32) -> Result<ZIntVerdict> {
    check_exponent("n", n)?;
    let cz = CyclicZSubmodule::new(c)?;
    let len = cz.exponents.len();
    let sum_of = |idx: &[usize], skip: Option<usize>| -> Vec<u32> {
        let mut total = vec![0u32; len];
        for (pos, &i) in idx.iter().enumerate() {
            if Some(pos) != skip {
                total.iter_mut().zip(&cz.divisors[i].1).for_each(|(t, v)| *t += v);
            }
        }
        total
    };
    let plus = |a: &[u32], b: &[u32]| -> Vec<u32> { a.iter().zip(b).map(|(x, y)| x + y).collect() };
    let mut idx = vec![0usize; n as usize];
    loop {
        let full = sum_of(&idx, None);
        if !cz.member(&full) {
            for (m, vm) in &cz.divisors {
                if !cz.member(&plus(&full, vm)) {
                    continue;
                }
                let escapes = (0..idx.len()).any(|skip| cz.member(&plus(&sum_of(&idx, Some(skip)), vm)));
                if !escapes {
                    let mut witness: Vec<u64> = idx.iter().map(|&i| cz.divisors[i].0).collect();
                    witness.push(*m);
                    return Ok(ZIntVerdict::from_search(Some(witness)));
                }
            }
        }
        if !next_multiset(&mut idx, cz.divisors.len()) {
            return Ok(ZIntVerdict::from_search(None));
        }
    }
}

/// Closed form for the ideal `cZ`: `x^k ∈ cZ ⇒ x^n ∈ cZ` iff `n·⌈t_p/k⌉ ≥ t_p` for every `p | c`.
pub fn ideal_closed_form(c: u64, k: u32, n: u32) -> Result<bool> {
    check_exponent("k", k)?;
    check_exponent("n", n)?;
    let cz = CyclicZSubmodule::new(c)?;
    Ok(cz.exponents.iter().all(|&t| n * t.div_ceil(k) >= t))
}

/// `cZ` as a `(k,n)`-closed ideal of `Z`, with the least violating divisor `x`.
/// The search and the closed form are computed independently and must agree.
pub fn zint_ideal_is_kn_closed(c: u64, k: u32, n: u32) -> Result<ZIntVerdict> {
    let closed = ideal_closed_form(c, k, n)?;
    let cz = CyclicZSubmodule::new(c)?;
    let found = cz
        .divisors
        .iter()
        .find(|(_, vx)| cz.power_times_in(vx, k, None) && !cz.power_times_in(vx, n, None))
        .map(|(x, _)| vec![*x]);
    if closed != found.is_none() {
        return Err(AlgebraError::InvariantViolation(format!(
            "closed form and valuation search disagree on ({c}) at k={k}, n={n}"
        )));
    }
    Ok(ZIntVerdict::from_search(found))
}

/// Decomposition conditions on the exponent `t` of `(N:M) = p^t R`, read literally.
///
/// Part one: `t = ka + r` with `a ≥ 0`, `1 ≤ r ≤ n`, `a·(k mod n) + r ≤ n`, and
/// `a ≠ 0 ⇒ k = n + c` with `1 ≤ c ≤ n − 1`. Part two: if `k = bn + c` with
/// `b ≥ 2` then `t ≤ n`; if `k = n + c` with `0 ≤ c ≤ n − 1` then `t` lies in
/// [`membership_set_contains`]. Both parts must hold.
pub fn tkn_condition(t: u32, k: u32, n: u32) -> bool {
    if t == 0 || k == 0 || n == 0 {
        return false;
    }
    let shift_ok = k > n && k - n < n;
    let part_one = (0..=t / k).any(|a| {
        let rest = t - k * a;
        (1..=n).contains(&rest) && a * (k % n) + rest <= n && (a == 0 || shift_ok)
    });
    part_one && exponent_condition(t, k, n)
}

/// `t ∈ ∪_{h=1..n} {kv + h : v ∈ Z, 0 ≤ v·c ≤ n − h}` for `k = n + c`.
pub fn membership_set_contains(t: u32, k: u32, n: u32) -> bool {
    let c = i64::from(k) - i64::from(n);
    (1..=n).any(|h| {
        let diff = i64::from(t) - i64::from(h);
        if diff % i64::from(k) != 0 {
            return false;
        }
        let v = diff / i64::from(k);
        0 <= v * c && v * c <= i64::from(n - h)
    })
}

/// The per-exponent clause shared by the prime-power and factorization
/// statements; outside `n ≤ k` neither case applies and nothing is required.
fn exponent_condition(t: u32, k: u32, n: u32) -> bool {
    if k >= 2 * n {
        (1..=n).contains(&t)
    } else if k >= n {
        membership_set_contains(t, k, n)
    } else {
        true
    }
}

/// The three alternatives for `N = P^t` with `1 ≤ n ≤ k`.
pub fn pt_condition(t: u32, k: u32, n: u32) -> bool {
    if (1..=n).contains(&t) {
        return true;
    }
    let in_range = |x: u32| (1..n).contains(&x);
    (1..=t / k).any(|a| {
        let r = t - k * a;
        let second = t >= n * a && in_range(r) && in_range(t - n * a);
        let third = in_range(r) && t == n * (a + 1);
        second || third
    })
}

/// Conditions on the exponents of `c` for `cZ` being `(k,n)`-closed with
/// `1 ≤ n ≤ k`: every `t_j` satisfies the case for `k`, and if `c` is a prime
/// power its exponent satisfies [`pt_condition`].
pub fn factorization_condition(c: u64, k: u32, n: u32) -> Result<bool> {
    check_exponent("n", n)?;
    if k < n {
        return Err(AlgebraError::BadParameter { name: "k", value: k });
    }
    let cz = CyclicZSubmodule::new(c)?;
    let per_exponent = cz.exponents.iter().all(|&t| exponent_condition(t, k, n));
    let prime_power = match cz.exponents.as_slice() {
        [t] => pt_condition(*t, k, n),
        _ => true,
    };
    Ok(per_exponent && prime_power)
}

/// Whether `(r, m)` really violates `(k,n)`-closedness of `cZ`, by integer arithmetic.
pub fn replays_zint_violation(c: u64, k: u32, n: u32, r: u64, m: u64) -> bool {
    let in_cz = |j: u32, factor: u64| -> bool {
        let mut acc = factor % c;
        for _ in 0..j {
            acc = (acc as u128 * (r % c) as u128 % c as u128) as u64;
        }
        acc == 0
    };
    in_cz(k, m) && !in_cz(n, 1) && !in_cz(n - 1, m)
}
