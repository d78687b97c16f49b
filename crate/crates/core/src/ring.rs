//! Arithmetic of the coefficient ring `Z/mZ` and its ideals.
//!
//! Every ideal of `Z/mZ` is `dZ/mZ` for a unique positive divisor `d` of `m`,
//! so ideals are stored by that divisor. The zero ideal is `(m)`, the whole
//! ring is `(1)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{AlgebraError, Result};

/// A positive integer together with its prime factorization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactoredNat {
    value: u64,
    factors: BTreeMap<u64, u32>,
}

impl FactoredNat {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn factors(&self) -> &BTreeMap<u64, u32> {
        &self.factors
    }

    pub fn exponent(&self, p: u64) -> u32 {
        self.factors.get(&p).copied().unwrap_or(0)
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.keys().copied()
    }

    /// Product of the distinct primes.
    pub fn radical(&self) -> u64 {
        self.factors.keys().product()
    }

    pub fn is_prime(&self) -> bool {
        self.factors.len() == 1 && self.factors.values().all(|&e| e == 1)
    }

    /// `Some((p, t))` when the value is a prime power `p^t` with `t >= 1`.
    pub fn as_prime_power(&self) -> Option<(u64, u32)> {
        if self.factors.len() == 1 {
            self.factors.iter().next().map(|(&p, &t)| (p, t))
        } else {
            None
        }
    }

    /// All positive divisors in increasing order.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for (&p, &e) in &self.factors {
            let current = divs.clone();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                divs.extend(current.iter().map(|d| d * pk));
            }
        }
        divs.sort_unstable();
        divs
    }

    /// Rebuild from an explicit prime-exponent map; zero exponents are dropped.
    pub fn from_factors(factors: BTreeMap<u64, u32>) -> Self {
        let factors: BTreeMap<u64, u32> = factors.into_iter().filter(|&(_, e)| e > 0).collect();
        let value = factors.iter().map(|(&p, &e)| p.pow(e)).product();
        FactoredNat { value, factors }
    }
}

impl fmt::Display for FactoredNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect();
        write!(f, "{}", parts.join("·"))
    }
}

/// Prime factorization by trial division. `factorize(1)` is the empty product.
pub fn factorize(n: u64) -> FactoredNat {
    assert!(n >= 1, "factorize needs n >= 1");
    let mut factors = BTreeMap::new();
    let mut rest = n;
    let mut p = 2u64;
    while p.saturating_mul(p) <= rest {
        while rest.is_multiple_of(p) {
            *factors.entry(p).or_insert(0) += 1;
            rest /= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        *factors.entry(rest).or_insert(0) += 1;
    }
    FactoredNat { value: n, factors }
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n).is_prime()
}

/// `base^exp mod modulus`, with `x^0 = 1` (reduced, so `1 mod 1 = 0`).
pub fn pow_mod(base: u64, exp: u32, modulus: u64) -> u64 {
    let m = modulus as u128;
    let mut result = 1u128 % m;
    let mut b = base as u128 % m;
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result = result * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    result as u64
}

/// The ring `Z/mZ`, `m >= 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ZModRing {
    modulus: u64,
}

impl ZModRing {
    pub fn new(modulus: u64) -> Result<Self> {
        if modulus < 2 {
            return Err(AlgebraError::InvalidModulus(modulus));
        }
        Ok(ZModRing { modulus })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn elements(&self) -> std::ops::Range<u64> {
        0..self.modulus
    }

    pub fn reduce(&self, x: u64) -> u64 {
        x % self.modulus
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.modulus as u128) as u64
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.modulus as u128) as u64
    }

    pub fn pow(&self, a: u64, e: u32) -> u64 {
        pow_mod(a, e, self.modulus)
    }

    pub fn is_unit(&self, a: u64) -> bool {
        a.gcd(&self.modulus) == 1
    }

    /// Every ideal, ordered by increasing generator (whole ring first, zero ideal last).
    pub fn ideals(&self) -> Vec<RingIdeal> {
        factorize(self.modulus)
            .divisors()
            .into_iter()
            .map(|d| RingIdeal { modulus: self.modulus, gen: d })
            .collect()
    }

    pub fn whole(&self) -> RingIdeal {
        RingIdeal { modulus: self.modulus, gen: 1 }
    }

    pub fn zero_ideal(&self) -> RingIdeal {
        RingIdeal { modulus: self.modulus, gen: self.modulus }
    }
}

impl fmt::Display for ZModRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z_{}", self.modulus)
    }
}

/// Residues coprime to the modulus.
pub fn units(ring: &ZModRing) -> BTreeSet<u64> {
    ring.elements().filter(|&a| ring.is_unit(a)).collect()
}

/// The ideal `dZ/mZ` of `Z/mZ`, stored by its canonical generator `d | m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RingIdeal {
    modulus: u64,
    gen: u64,
}

impl RingIdeal {
    pub fn new(ring: &ZModRing, gen: u64) -> Result<Self> {
        if gen == 0 || !ring.modulus.is_multiple_of(gen) {
            return Err(AlgebraError::NotDivisor { value: gen, modulus: ring.modulus });
        }
        Ok(RingIdeal { modulus: ring.modulus, gen })
    }

    /// The principal ideal generated by a residue; `(0)` canonicalizes to `(m)`.
    pub fn principal(ring: &ZModRing, r: u64) -> Self {
        let gen = ring.reduce(r).gcd(&ring.modulus);
        RingIdeal { modulus: ring.modulus, gen: if gen == 0 { ring.modulus } else { gen } }
    }

    pub fn ring(&self) -> ZModRing {
        ZModRing { modulus: self.modulus }
    }

    pub fn generator(&self) -> u64 {
        self.gen
    }

    pub fn contains(&self, x: u64) -> bool {
        (x % self.modulus).is_multiple_of(self.gen)
    }

    pub fn is_proper(&self) -> bool {
        self.gen != 1
    }

    pub fn is_zero(&self) -> bool {
        self.gen == self.modulus
    }

    pub fn is_subset_of(&self, other: &RingIdeal) -> bool {
        self.gen.is_multiple_of(other.gen)
    }

    pub fn product(&self, other: &RingIdeal) -> RingIdeal {
        let g = ((self.gen as u128 * other.gen as u128) % self.modulus as u128) as u64;
        RingIdeal::principal(&self.ring(), g)
    }

    /// `I^j`, with `I^0` the whole ring.
    pub fn power(&self, j: u32) -> RingIdeal {
        RingIdeal::principal(&self.ring(), pow_mod(self.gen, j, self.modulus))
    }

    pub fn intersection(&self, other: &RingIdeal) -> RingIdeal {
        RingIdeal { modulus: self.modulus, gen: self.gen.lcm(&other.gen) }
    }

    pub fn sum(&self, other: &RingIdeal) -> RingIdeal {
        RingIdeal { modulus: self.modulus, gen: self.gen.gcd(&other.gen) }
    }
}

impl fmt::Display for RingIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.gen)
    }
}

pub fn ideal_radical(ideal: &RingIdeal) -> RingIdeal {
    RingIdeal { modulus: ideal.modulus, gen: factorize(ideal.gen).radical() }
}

/// Outcome of an ideal-level predicate; `witness` is the violating scalar.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IdealVerdict {
    pub holds: bool,
    pub witness: Option<u64>,
}

fn check_exponent(name: &'static str, value: u32) -> Result<()> {
    if value == 0 {
        Err(AlgebraError::BadParameter { name, value })
    } else {
        Ok(())
    }
}

/// `x^k ∈ I ⇒ x^n ∈ I` for every residue `x`. The witness is the least violating `x`.
pub fn is_kn_closed_ideal(ideal: &RingIdeal, k: u32, n: u32) -> Result<IdealVerdict> {
    check_exponent("k", k)?;
    check_exponent("n", n)?;
    if !ideal.is_proper() {
        return Err(AlgebraError::IdealNotProper);
    }
    let ring = ideal.ring();
    let witness = ring
        .elements()
        .find(|&x| ideal.contains(ring.pow(x, k)) && !ideal.contains(ring.pow(x, n)));
    Ok(IdealVerdict { holds: witness.is_none(), witness })
}

/// `x^(n+1) ∈ I ⇒ x^n ∈ I`.
pub fn is_semi_n_absorbing_ideal(ideal: &RingIdeal, n: u32) -> Result<IdealVerdict> {
    is_kn_closed_ideal(ideal, n + 1, n)
}

pub fn is_prime_ideal(ideal: &RingIdeal) -> Result<bool> {
    if !ideal.is_proper() {
        return Err(AlgebraError::IdealNotProper);
    }
    Ok(is_prime(ideal.gen))
}

/// A multiplicatively closed subset of `Z/mZ` containing 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MultiplicativeSet {
    ring: ZModRing,
    elements: BTreeSet<u64>,
}

impl MultiplicativeSet {
    pub fn ring(&self) -> ZModRing {
        self.ring
    }

    pub fn elements(&self) -> &BTreeSet<u64> {
        &self.elements
    }

    pub fn contains(&self, x: u64) -> bool {
        self.elements.contains(&self.ring.reduce(x))
    }

    pub fn contains_zero(&self) -> bool {
        self.elements.contains(&0)
    }

    pub fn meets(&self, ideal: &RingIdeal) -> bool {
        self.elements.iter().any(|&s| ideal.contains(s))
    }

    /// The complement of a prime ideal `(q)`.
    pub fn prime_complement(ideal: &RingIdeal) -> Result<Self> {
        if !is_prime_ideal(ideal)? {
            return Err(AlgebraError::Parse {
                input: ideal.to_string(),
                reason: "not a prime ideal".into(),
            });
        }
        let ring = ideal.ring();
        Ok(MultiplicativeSet {
            ring,
            elements: ring.elements().filter(|&x| !ideal.contains(x)).collect(),
        })
    }
}

impl fmt::Display for MultiplicativeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.elements.iter().map(u64::to_string).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

/// Smallest multiplicatively closed set containing `seeds ∪ {1}`.
pub fn mult_closure(ring: &ZModRing, seeds: &[u64]) -> MultiplicativeSet {
    let mut elements: BTreeSet<u64> = BTreeSet::new();
    elements.insert(ring.reduce(1));
    let seeds: Vec<u64> = seeds.iter().map(|&s| ring.reduce(s)).collect();
    let mut frontier: Vec<u64> = elements.iter().copied().collect();
    while let Some(x) = frontier.pop() {
        for &s in &seeds {
            let y = ring.mul(x, s);
            if elements.insert(y) {
                frontier.push(y);
            }
        }
    }
    MultiplicativeSet { ring: *ring, elements }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: u64) -> ZModRing {
        ZModRing::new(m).unwrap()
    }

    #[test]
    fn factorize_examples() {
        assert!(factorize(1).factors().is_empty());
        assert_eq!(factorize(12).factors(), &BTreeMap::from([(2, 2), (3, 1)]));
        assert_eq!(factorize(30).factors(), &BTreeMap::from([(2, 1), (3, 1), (5, 1)]));
        assert_eq!(factorize(97).factors(), &BTreeMap::from([(97, 1)]));
    }

    #[test]
    fn divisors_are_sorted_and_complete() {
        assert_eq!(factorize(12).divisors(), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(factorize(1).divisors(), vec![1]);
        for n in 1..200u64 {
            let brute: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
            assert_eq!(factorize(n).divisors(), brute);
        }
    }

    #[test]
    fn units_examples() {
        assert_eq!(units(&z(2)), BTreeSet::from([1]));
        assert_eq!(units(&z(12)), BTreeSet::from([1, 5, 7, 11]));
        assert_eq!(units(&z(7)), (1..7).collect());
    }

    #[test]
    fn units_form_a_group() {
        for m in 2..40 {
            let ring = z(m);
            let us = units(&ring);
            for &a in &us {
                assert!(us.iter().any(|&b| ring.mul(a, b) == 1));
                for &b in &us {
                    assert!(us.contains(&ring.mul(a, b)));
                }
            }
        }
    }

    #[test]
    fn radical_examples() {
        let r = z(12);
        assert_eq!(ideal_radical(&RingIdeal::new(&r, 4).unwrap()).generator(), 2);
        assert_eq!(ideal_radical(&r.whole()).generator(), 1);
        assert_eq!(ideal_radical(&r.zero_ideal()).generator(), 6);
    }

    #[test]
    fn radical_matches_nilpotent_scan() {
        for m in 2..60 {
            let ring = z(m);
            for ideal in ring.ideals() {
                let rad = ideal_radical(&ideal);
                for x in ring.elements() {
                    let in_scan = (1..=8).any(|k| ideal.contains(ring.pow(x, k)));
                    assert_eq!(rad.contains(x), in_scan, "m={m} I={ideal} x={x}");
                }
                assert_eq!(ideal_radical(&rad), rad);
                assert!(ideal.is_subset_of(&rad));
            }
        }
    }

    #[test]
    fn kn_closed_ideal_examples() {
        let r12 = z(12);
        let i2 = RingIdeal::new(&r12, 2).unwrap();
        let i4 = RingIdeal::new(&r12, 4).unwrap();
        assert!(is_kn_closed_ideal(&i2, 2, 1).unwrap().holds);
        assert_eq!(
            is_kn_closed_ideal(&i4, 2, 1).unwrap(),
            IdealVerdict { holds: false, witness: Some(2) }
        );
        assert_eq!(is_kn_closed_ideal(&r12.whole(), 2, 1), Err(AlgebraError::IdealNotProper));
        assert!(is_kn_closed_ideal(&i4, 0, 1).is_err());
    }

    #[test]
    fn semi_n_absorbing_ideal_examples() {
        assert!(is_semi_n_absorbing_ideal(&RingIdeal::new(&z(12), 6).unwrap(), 1).unwrap().holds);
        assert!(!is_semi_n_absorbing_ideal(&RingIdeal::new(&z(8), 4).unwrap(), 1).unwrap().holds);
        assert!(is_semi_n_absorbing_ideal(&RingIdeal::new(&z(16), 8).unwrap(), 3).unwrap().holds);
    }

    #[test]
    fn prime_ideal_examples() {
        let r = z(12);
        assert!(is_prime_ideal(&RingIdeal::new(&r, 3).unwrap()).unwrap());
        assert!(!is_prime_ideal(&RingIdeal::new(&r, 4).unwrap()).unwrap());
        assert!(!is_prime_ideal(&RingIdeal::new(&r, 6).unwrap()).unwrap());
    }

    #[test]
    fn mult_closure_examples() {
        let r = z(12);
        assert_eq!(mult_closure(&r, &[3]).elements(), &BTreeSet::from([1, 3, 9]));
        assert_eq!(mult_closure(&r, &[1]).elements(), &BTreeSet::from([1]));
        assert_eq!(mult_closure(&r, &[2]).elements(), &BTreeSet::from([1, 2, 4, 8]));
        assert!(mult_closure(&r, &[6]).contains_zero());
    }

    #[test]
    fn kn_closed_ideal_reflexive_and_monotone() {
        for m in 2..50 {
            let ring = z(m);
            for ideal in ring.ideals().into_iter().filter(RingIdeal::is_proper) {
                for k in 1..=4 {
                    assert!(is_kn_closed_ideal(&ideal, k, k).unwrap().holds);
                    for n in 1..=4 {
                        if !is_kn_closed_ideal(&ideal, k, n).unwrap().holds {
                            continue;
                        }
                        for k2 in 1..=k {
                            for n2 in n..=4 {
                                assert!(is_kn_closed_ideal(&ideal, k2, n2).unwrap().holds);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn principal_ideal_canonicalizes() {
        let r = z(12);
        assert_eq!(RingIdeal::principal(&r, 0).generator(), 12);
        assert_eq!(RingIdeal::principal(&r, 8).generator(), 4);
        assert_eq!(RingIdeal::principal(&r, 5).generator(), 1);
        assert!(RingIdeal::new(&r, 5).is_err());
    }
}
