//! Submodule predicates: (k,n)-closed, semi n-absorbing and their relatives.
//!
//! Every predicate is an exhaustive scan over scalars `0..m` and elements of
//! the ambient module, requires a proper submodule, and reports the least
//! violating data in scan order. Powers use `x^0 = 1`, so `n = 1` reads
//! `r^k x ∈ N ⇒ r ∈ (N:M) or x ∈ N`.

use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::module::{residual_element, residual_ring, Elem, Submodule};
use crate::verdict::{Verdict, Witness};

/// Default bound on `n` for the n-absorbing scan (multisets of size `n`).
pub const DEFAULT_ABSORBING_CAP: u32 = 3;

fn positive(name: &'static str, value: u32) -> Result<()> {
    if value == 0 {
        Err(AlgebraError::BadParameter { name, value })
    } else {
        Ok(())
    }
}

fn proper(n: &Submodule) -> Result<()> {
    if n.is_proper() {
        Ok(())
    } else {
        Err(AlgebraError::NotProper)
    }
}

/// `r^k x ∈ N ⇒ r^n ∈ (N:M) or r^(n-1) x ∈ N` for all `r ∈ R`, `x ∈ M`.
pub fn is_kn_closed(n_sub: &Submodule, k: u32, n: u32) -> Result<Verdict> {
    proper(n_sub)?;
    positive("k", k)?;
    positive("n", n)?;
    let module = n_sub.module();
    let ring = module.ring();
    let colon = residual_ring(n_sub);
    for r in ring.elements() {
        if colon.contains(ring.pow(r, n)) {
            continue;
        }
        let (rk, rn1) = (ring.pow(r, k), ring.pow(r, n - 1));
        let bad = module
            .elements()
            .find(|&x| n_sub.contains(module.scale(rk, x)) && !n_sub.contains(module.scale(rn1, x)));
        if let Some(x) = bad {
            return Ok(Verdict::fails(Witness::Scalar { r, x }));
        }
    }
    Ok(Verdict::holds())
}

/// The (n,n)-closed case.
pub fn is_semi_n_absorbing(n_sub: &Submodule, n: u32) -> Result<Verdict> {
    is_kn_closed(n_sub, n, n)
}

/// `r^2 x ∈ N ⇒ r x ∈ N`.
pub fn is_semiprime(n_sub: &Submodule) -> Result<Verdict> {
    proper(n_sub)?;
    let module = n_sub.module();
    let ring = module.ring();
    for r in ring.elements() {
        let r2 = ring.mul(r, r);
        let bad = module
            .elements()
            .find(|&x| n_sub.contains(module.scale(r2, x)) && !n_sub.contains(module.scale(r, x)));
        if let Some(x) = bad {
            return Ok(Verdict::fails(Witness::Scalar { r, x }));
        }
    }
    Ok(Verdict::holds())
}

/// `abx ∈ N ⇒ ax ∈ N or bx ∈ N`, over unordered pairs `a ≤ b`.
pub fn is_quasi_prime(n_sub: &Submodule) -> Result<Verdict> {
    proper(n_sub)?;
    let module = n_sub.module();
    let ring = module.ring();
    for a in ring.elements() {
        for b in a..ring.modulus() {
            let ab = ring.mul(a, b);
            let bad = module.elements().find(|&x| {
                n_sub.contains(module.scale(ab, x))
                    && !n_sub.contains(module.scale(a, x))
                    && !n_sub.contains(module.scale(b, x))
            });
            if let Some(x) = bad {
                return Ok(Verdict::fails(Witness::Pair { a, b, x }));
            }
        }
    }
    Ok(Verdict::holds())
}

/// Next nondecreasing tuple over `0..m`, in lexicographic order.
fn next_multiset(tuple: &mut [u64], m: u64) -> bool {
    let mut i = tuple.len();
    while i > 0 {
        i -= 1;
        if tuple[i] + 1 < m {
            let v = tuple[i] + 1;
            for t in &mut tuple[i..] {
                *t = v;
            }
            return true;
        }
    }
    false
}

/// `a_1⋯a_n x ∈ N ⇒ a_1⋯a_n ∈ (N:M)` or some product omitting one `a_i`
/// sends `x` into `N`. Scalars range over multisets.
pub fn is_n_absorbing(n_sub: &Submodule, n: u32, cap: u32) -> Result<Verdict> {
    proper(n_sub)?;
    positive("n", n)?;
    if n > cap {
        return Err(AlgebraError::AbsorbingCap { n, cap });
    }
    let module = n_sub.module();
    let ring = module.ring();
    let colon = residual_ring(n_sub);
    let mut tuple = vec![0u64; n as usize];
    loop {
        let product = tuple.iter().fold(1 % ring.modulus(), |acc, &a| ring.mul(acc, a));
        if !colon.contains(product) {
            let partials: Vec<u64> = (0..tuple.len())
                .map(|skip| {
                    tuple
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != skip)
                        .fold(1 % ring.modulus(), |acc, (_, &a)| ring.mul(acc, a))
                })
                .collect();
            let bad = module.elements().find(|&x| {
                n_sub.contains(module.scale(product, x))
                    && partials.iter().all(|&p| !n_sub.contains(module.scale(p, x)))
            });
            if let Some(x) = bad {
                return Ok(Verdict::fails(Witness::Factors { factors: tuple, x }));
            }
        }
        if !next_multiset(&mut tuple, ring.modulus()) {
            break;
        }
    }
    Ok(Verdict::holds())
}

/// Ideal form: for every ideal `I = (d)` and `x ∈ M`,
/// `I^k x ⊆ N ⇒ I^n ⊆ (N:M) or I^(n-1) x ⊆ N`, with `I^0 = R`.
pub fn is_strongly_kn_closed(n_sub: &Submodule, k: u32, n: u32) -> Result<Verdict> {
    proper(n_sub)?;
    positive("k", k)?;
    positive("n", n)?;
    let module = n_sub.module();
    let ring = module.ring();
    let colon = residual_ring(n_sub);
    for ideal in ring.ideals() {
        if ideal.power(n).is_subset_of(&colon) {
            continue;
        }
        let dk = ideal.power(k).generator();
        let dn1 = ideal.power(n - 1).generator();
        let bad = module
            .elements()
            .find(|&x| n_sub.contains(module.scale(dk, x)) && !n_sub.contains(module.scale(dn1, x)));
        if let Some(x) = bad {
            return Ok(Verdict::fails(Witness::Ideal { generator: ideal.generator(), x }));
        }
    }
    Ok(Verdict::holds())
}

pub fn is_strongly_semi_n_absorbing(n_sub: &Submodule, n: u32) -> Result<Verdict> {
    is_strongly_kn_closed(n_sub, n, n)
}

/// `(N : r^k x) = (N : r^(n-1) x)` or `r^n ∈ (N:M)`, for all `r`, `x`.
pub fn colon_test(n_sub: &Submodule, k: u32, n: u32) -> Result<Verdict> {
    proper(n_sub)?;
    positive("k", k)?;
    positive("n", n)?;
    let module = n_sub.module();
    let ring = module.ring();
    let colon = residual_ring(n_sub);
    let residuals: Vec<u64> = module.elements().map(|y| residual_element(n_sub, y).generator()).collect();
    for r in ring.elements() {
        if colon.contains(ring.pow(r, n)) {
            continue;
        }
        let (rk, rn1) = (ring.pow(r, k), ring.pow(r, n - 1));
        let bad = module
            .elements()
            .find(|&x| residuals[module.scale(rk, x)] != residuals[module.scale(rn1, x)]);
        if let Some(x) = bad {
            return Ok(Verdict::fails(Witness::Scalar { r, x }));
        }
    }
    Ok(Verdict::holds())
}

/// Submodule form of (k,n)-closedness: `r^k L ⊆ N ⇒ r^(n-1) L ⊆ N or r^n ∈ (N:M)`
/// for every `L` in `lattice`. The witness names `r` and an element of `L`
/// escaping `N` under `r^(n-1)`.
pub fn is_kn_closed_over_submodules(n_sub: &Submodule, k: u32, n: u32, lattice: &[Submodule]) -> Result<Verdict> {
    proper(n_sub)?;
    positive("k", k)?;
    positive("n", n)?;
    let module = n_sub.module();
    let ring = module.ring();
    let colon = residual_ring(n_sub);
    for r in ring.elements() {
        if colon.contains(ring.pow(r, n)) {
            continue;
        }
        let (rk, rn1) = (ring.pow(r, k), ring.pow(r, n - 1));
        for l in lattice {
            l.same_module(n_sub)?;
            if l.generators().iter().all(|&g| n_sub.contains(module.scale(rk, g))) {
                if let Some(&x) = l.generators().iter().find(|&&g| !n_sub.contains(module.scale(rn1, g))) {
                    return Ok(Verdict::fails(Witness::Scalar { r, x }));
                }
            }
        }
    }
    Ok(Verdict::holds())
}

/// Strong (k,n)-closedness quantified over ideals and the submodules in
/// `lattice`: `I^k L ⊆ N ⇒ I^n ⊆ (N:M) or I^(n-1) L ⊆ N`. With
/// `supersets_only`, only submodules `L ⊇ N` are tried.
pub fn is_strongly_kn_closed_over_submodules(
    n_sub: &Submodule,
    k: u32,
    n: u32,
    lattice: &[Submodule],
    supersets_only: bool,
) -> Result<Verdict> {
    proper(n_sub)?;
    positive("k", k)?;
    positive("n", n)?;
    let module = n_sub.module();
    let colon = residual_ring(n_sub);
    for ideal in module.ring().ideals() {
        if ideal.power(n).is_subset_of(&colon) {
            continue;
        }
        let dk = ideal.power(k).generator();
        let dn1 = ideal.power(n - 1).generator();
        for l in lattice {
            l.same_module(n_sub)?;
            if supersets_only && !n_sub.is_subset_of(l) {
                continue;
            }
            if l.generators().iter().all(|&g| n_sub.contains(module.scale(dk, g))) {
                if let Some(&x) = l.generators().iter().find(|&&g| !n_sub.contains(module.scale(dn1, g))) {
                    return Ok(Verdict::fails(Witness::Ideal { generator: ideal.generator(), x }));
                }
            }
        }
    }
    Ok(Verdict::holds())
}

/// `is_kn_closed` over the grid `(k,n) ∈ [1,kmax]²`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureSpectrum {
    kmax: u32,
    cells: Vec<Verdict>,
}

impl ClosureSpectrum {
    pub fn kmax(&self) -> u32 {
        self.kmax
    }

    fn index(&self, k: u32, n: u32) -> usize {
        assert!((1..=self.kmax).contains(&k) && (1..=self.kmax).contains(&n), "({k},{n}) outside grid");
        ((k - 1) * self.kmax + (n - 1)) as usize
    }

    pub fn verdict(&self, k: u32, n: u32) -> &Verdict {
        &self.cells[self.index(k, n)]
    }

    pub fn holds(&self, k: u32, n: u32) -> bool {
        self.cells[self.index(k, n)].holds
    }

    /// Row-major `1`/`0` string, rows indexed by `k`.
    pub fn fingerprint(&self) -> String {
        self.cells.iter().map(|v| if v.holds { '1' } else { '0' }).collect()
    }

    /// Rows of booleans, `grid[k-1][n-1]`.
    pub fn grid(&self) -> Vec<Vec<bool>> {
        self.cells.chunks(self.kmax as usize).map(|row| row.iter().map(|v| v.holds).collect()).collect()
    }

    /// First cell breaking monotonicity in `(k, n)`, as `((k,n), (k',n'))`.
    pub fn monotonicity_violation(&self) -> Option<((u32, u32), (u32, u32))> {
        let kmax = self.kmax;
        for k in 1..=kmax {
            for n in 1..=kmax {
                if !self.holds(k, n) {
                    continue;
                }
                for k2 in 1..=k {
                    for n2 in n..=kmax {
                        if !self.holds(k2, n2) {
                            return Some(((k, n), (k2, n2)));
                        }
                    }
                }
            }
        }
        None
    }

    /// First `k > n` with `holds(k,n) != holds(n,n)`.
    pub fn collapse_violation(&self) -> Option<(u32, u32)> {
        (1..=self.kmax)
            .flat_map(|k| (1..k).map(move |n| (k, n)))
            .find(|&(k, n)| self.holds(k, n) != self.holds(n, n))
    }
}

/// Closure spectrum of `N`; the grid is checked for monotonicity and the
/// `k > n` collapse before being returned.
pub fn spectrum(n_sub: &Submodule, kmax: u32) -> Result<ClosureSpectrum> {
    positive("kmax", kmax)?;
    proper(n_sub)?;
    let mut cells = Vec::with_capacity((kmax * kmax) as usize);
    for k in 1..=kmax {
        for n in 1..=kmax {
            cells.push(is_kn_closed(n_sub, k, n)?);
        }
    }
    let spec = ClosureSpectrum { kmax, cells };
    if let Some((a, b)) = spec.monotonicity_violation() {
        return Err(AlgebraError::InvariantViolation(format!("({},{}) holds but ({},{}) fails", a.0, a.1, b.0, b.1)));
    }
    if let Some((k, n)) = spec.collapse_violation() {
        return Err(AlgebraError::InvariantViolation(format!("({k},{n}) differs from ({n},{n})")));
    }
    Ok(spec)
}

/// Replay a `(r, x)` witness of `is_kn_closed` against the definition.
pub fn replays_kn_violation(n_sub: &Submodule, k: u32, n: u32, r: u64, x: Elem) -> bool {
    let module = n_sub.module();
    let ring = module.ring();
    n_sub.contains(module.scale(ring.pow(r, k), x))
        && !residual_ring(n_sub).contains(ring.pow(r, n))
        && !n_sub.contains(module.scale(ring.pow(r, n - 1), x))
}
