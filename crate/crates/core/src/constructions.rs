//! Module-building and submodule-transforming constructions.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::module::{
    build_module, enumerate_submodules, intersect, is_maximal_submodule, is_prime_submodule, residual_ring, span, sum,
    Elem, FiniteModule, ModuleHom, Submodule,
};
use crate::ring::{factorize, MultiplicativeSet, RingIdeal, ZModRing};
use crate::verdict::{Verdict, Witness};

fn owned_by(module: &Arc<FiniteModule>, n: &Submodule) -> Result<()> {
    if Arc::ptr_eq(module, n.module()) {
        Ok(())
    } else {
        Err(AlgebraError::ModuleMismatch)
    }
}

/// `M/K` on cosets, each labelled by its least element; also returns the projection.
pub fn quotient(module: &Arc<FiniteModule>, kernel: &Submodule) -> Result<(Arc<FiniteModule>, ModuleHom)> {
    owned_by(module, kernel)?;
    let mut coset_of = vec![u32::MAX; module.size()];
    let mut reps = Vec::new();
    for x in module.elements() {
        if coset_of[x] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(x as u32);
        for &k in kernel.elements() {
            coset_of[module.add(x, k)] = id;
        }
    }
    let origin = format!("({})/{}", module.describe(), kernel.describe());
    let map: Vec<Elem> = coset_of.iter().map(|&c| c as Elem).collect();
    let q = Arc::new(FiniteModule::quotient_tables(module.clone(), coset_of, reps, origin));
    let projection = ModuleHom::from_map(module.clone(), q.clone(), map);
    Ok((q, projection))
}

/// `M1 ⊕ M2` for coordinate modules over the same ring, with its embeddings.
#[derive(Clone, Debug)]
pub struct DirectSum {
    module: Arc<FiniteModule>,
    left: Arc<FiniteModule>,
    right: Arc<FiniteModule>,
}

pub fn direct_sum(left: &Arc<FiniteModule>, right: &Arc<FiniteModule>) -> Result<DirectSum> {
    if left.ring() != right.ring() {
        return Err(AlgebraError::RingMismatch(left.ring().modulus(), right.ring().modulus()));
    }
    let (Some(a), Some(b)) = (left.orders(), right.orders()) else {
        return Err(AlgebraError::NeedsCoordinates);
    };
    let orders: Vec<u64> = a.iter().chain(b).copied().collect();
    let module = build_module(left.ring(), &orders)?;
    Ok(DirectSum { module, left: left.clone(), right: right.clone() })
}

impl DirectSum {
    pub fn module(&self) -> &Arc<FiniteModule> {
        &self.module
    }

    pub fn left(&self) -> &Arc<FiniteModule> {
        &self.left
    }

    pub fn right(&self) -> &Arc<FiniteModule> {
        &self.right
    }

    pub fn pair(&self, x: Elem, y: Elem) -> Elem {
        x * self.right.size() + y
    }

    pub fn embed_left(&self, x: Elem) -> Elem {
        self.pair(x, 0)
    }

    pub fn embed_right(&self, y: Elem) -> Elem {
        self.pair(0, y)
    }

    /// `N1 ⊕ N2`.
    pub fn lift_both(&self, n1: &Submodule, n2: &Submodule) -> Result<Submodule> {
        owned_by(&self.left, n1)?;
        owned_by(&self.right, n2)?;
        let gens: Vec<Elem> = n1
            .generators()
            .iter()
            .map(|&x| self.embed_left(x))
            .chain(n2.generators().iter().map(|&y| self.embed_right(y)))
            .collect();
        span(&self.module, &gens)
    }

    /// `N1 ⊕ M2`.
    pub fn lift_left(&self, n1: &Submodule) -> Result<Submodule> {
        self.lift_both(n1, &Submodule::whole(&self.right))
    }

    /// `M1 ⊕ N2`.
    pub fn lift_right(&self, n2: &Submodule) -> Result<Submodule> {
        self.lift_both(&Submodule::whole(&self.left), n2)
    }
}

/// `I M`.
pub fn ideal_times_module(ideal: &RingIdeal, module: &Arc<FiniteModule>) -> Result<Submodule> {
    if ideal.ring() != module.ring() {
        return Err(AlgebraError::RingMismatch(ideal.ring().modulus(), module.ring().modulus()));
    }
    let gens: Vec<Elem> = module.generators().iter().map(|&g| module.scale(ideal.generator(), g)).collect();
    span(module, &gens)
}

/// Every submodule has the form `(N:M) M`.
pub fn is_multiplication(module: &Arc<FiniteModule>, cap: usize) -> Result<bool> {
    for n in enumerate_submodules(module, cap)? {
        if ideal_times_module(&residual_ring(&n), module)? != n {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `NK = (N:M)(K:M) M`. Only meaningful on multiplication modules; callers
/// that have not already established that should use [`product`].
pub fn presentation_product(n: &Submodule, k: &Submodule) -> Result<Submodule> {
    n.same_module(k)?;
    ideal_times_module(&residual_ring(n).product(&residual_ring(k)), n.module())
}

/// `NK` on a multiplication module.
pub fn product(n: &Submodule, k: &Submodule, cap: usize) -> Result<Submodule> {
    if !is_multiplication(n.module(), cap)? {
        return Err(AlgebraError::NotMultiplication);
    }
    presentation_product(n, k)
}

/// `N^j = (N:M)^j M`, with `N^0 = M`.
pub fn presentation_power(n: &Submodule, j: u32) -> Result<Submodule> {
    ideal_times_module(&residual_ring(n).power(j), n.module())
}

pub fn are_comaximal(n: &Submodule, k: &Submodule) -> Result<bool> {
    Ok(!sum(n, k)?.is_proper())
}

fn intersect_all(module: &Arc<FiniteModule>, family: impl IntoIterator<Item = Submodule>) -> Result<Submodule> {
    let mut acc = Submodule::whole(module);
    for s in family {
        acc = intersect(&acc, &s)?;
    }
    Ok(acc)
}

/// Intersection of the prime submodules containing `N`; `M` when there are none.
pub fn m_radical(n: &Submodule, cap: usize) -> Result<Submodule> {
    if !n.is_proper() {
        return Err(AlgebraError::NotProper);
    }
    let module = n.module();
    let mut primes = Vec::new();
    for p in enumerate_submodules(module, cap)? {
        if p.is_proper() && n.is_subset_of(&p) && is_prime_submodule(&p)?.holds {
            primes.push(p);
        }
    }
    intersect_all(module, primes)
}

/// Intersection of the maximal submodules.
pub fn rad_module(module: &Arc<FiniteModule>, cap: usize) -> Result<Submodule> {
    let mut maximal = Vec::new();
    for p in enumerate_submodules(module, cap)? {
        if p.is_proper() && is_maximal_submodule(&p)? {
            maximal.push(p);
        }
    }
    intersect_all(module, maximal)
}

/// Every homothety `r: N → N` is surjective or nilpotent. The witness is the
/// least `r` whose image chain stabilizes strictly between `0` and `N`.
pub fn is_secondary(n: &Submodule) -> Result<Verdict> {
    if n.is_zero() {
        return Err(AlgebraError::ZeroSubmodule);
    }
    for r in n.module().ring().elements() {
        let image = n.scaled(r);
        if image == *n {
            continue;
        }
        let mut current = image;
        loop {
            let next = current.scaled(r);
            if next == current {
                break;
            }
            current = next;
        }
        if !current.is_zero() {
            return Ok(Verdict::fails(Witness::Homothety { r }));
        }
    }
    Ok(Verdict::holds())
}

/// `S^{-1}M` for a coordinate module over `Z_m`.
///
/// Inverting `s` kills the `p`-primary part of `M` for every prime `p | s`
/// and acts invertibly on the rest, so `S^{-1}Z_m = Z_{m'}` with those
/// primes stripped from `m`, and each `Z_d` factor becomes `Z_{d'}`.
#[derive(Clone, Debug)]
pub struct LocalizedModule {
    base: Arc<FiniteModule>,
    set: MultiplicativeSet,
    module: Arc<FiniteModule>,
    map: Vec<Elem>,
}

fn strip_primes(value: u64, primes: &BTreeSet<u64>) -> u64 {
    let mut v = value;
    for &p in primes {
        while v.is_multiple_of(p) {
            v /= p;
        }
    }
    v
}

pub fn localize(module: &Arc<FiniteModule>, set: &MultiplicativeSet) -> Result<LocalizedModule> {
    if set.contains_zero() {
        return Err(AlgebraError::ZeroInMultiplicativeSet);
    }
    if set.ring() != module.ring() {
        return Err(AlgebraError::RingMismatch(set.ring().modulus(), module.ring().modulus()));
    }
    let orders = module.orders().ok_or(AlgebraError::NeedsCoordinates)?;
    let m = module.ring().modulus();
    let inverted: BTreeSet<u64> =
        factorize(m).primes().filter(|&p| set.elements().iter().any(|&s| s % p == 0)).collect();
    let ring = ZModRing::new(strip_primes(m, &inverted))?;
    let kept: Vec<(usize, u64)> = orders
        .iter()
        .enumerate()
        .map(|(i, &d)| (i, strip_primes(d, &inverted)))
        .filter(|&(_, d)| d > 1)
        .collect();
    let new_orders: Vec<u64> = kept.iter().map(|&(_, d)| d).collect();
    let map = module
        .elements()
        .map(|x| {
            let coords = module.coords(x);
            kept.iter()
                .zip(&new_orders)
                .fold(0, |idx, (&(i, d), &order)| idx * order as usize + (coords[i] % d) as usize)
        })
        .collect();
    let origin = format!("localization of {} at {}", module.describe(), set);
    let localized = Arc::new(FiniteModule::coordinate(ring, &new_orders)?.with_origin(origin));
    Ok(LocalizedModule { base: module.clone(), set: set.clone(), module: localized, map })
}

impl LocalizedModule {
    pub fn base(&self) -> &Arc<FiniteModule> {
        &self.base
    }

    pub fn set(&self) -> &MultiplicativeSet {
        &self.set
    }

    pub fn ring(&self) -> ZModRing {
        self.module.ring()
    }

    pub fn module(&self) -> &Arc<FiniteModule> {
        &self.module
    }

    /// Canonical map `x ↦ x/1`.
    pub fn apply(&self, x: Elem) -> Elem {
        self.map[x]
    }

    /// `S^{-1}N`, the image of `N`.
    pub fn localize_submodule(&self, n: &Submodule) -> Result<Submodule> {
        owned_by(&self.base, n)?;
        let gens: Vec<Elem> = n.generators().iter().map(|&g| self.map[g]).collect();
        span(&self.module, &gens)
    }
}

pub fn hom_image(f: &ModuleHom, n: &Submodule) -> Result<Submodule> {
    owned_by(f.source(), n)?;
    let gens: Vec<Elem> = n.generators().iter().map(|&g| f.apply(g)).collect();
    span(f.target(), &gens)
}

pub fn hom_preimage(f: &ModuleHom, n: &Submodule) -> Result<Submodule> {
    owned_by(f.target(), n)?;
    let members: Vec<Elem> = f.source().elements().filter(|&x| n.contains(f.apply(x))).collect();
    span(f.source(), &members)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::{make_hom, DEFAULT_MODULE_CAP};
    use crate::ring::mult_closure;

    fn z(m: u64) -> ZModRing {
        ZModRing::new(m).unwrap()
    }

    fn cyclic(m: u64) -> Arc<FiniteModule> {
        build_module(z(m), &[m]).unwrap()
    }

    fn sub(module: &Arc<FiniteModule>, gens: &str) -> Submodule {
        span(module, &module.parse_generators(gens).unwrap()).unwrap()
    }

    #[test]
    fn quotient_examples() {
        let m12 = cyclic(12);
        let (q, proj) = quotient(&m12, &sub(&m12, "4")).unwrap();
        assert_eq!(q.size(), 4);
        assert_eq!(q.format_element(proj.apply(5)), "[1]");
        assert_eq!(proj.kernel(), sub(&m12, "4"));
        assert!(proj.is_surjective());
        let (q0, _) = quotient(&m12, &Submodule::zero(&m12)).unwrap();
        assert_eq!(q0.size(), 12);
        let (qm, _) = quotient(&m12, &Submodule::whole(&m12)).unwrap();
        assert!(qm.is_zero_module());
    }

    #[test]
    fn quotient_projection_is_a_hom() {
        let m = build_module(z(8), &[8, 2]).unwrap();
        for k in enumerate_submodules(&m, DEFAULT_MODULE_CAP).unwrap() {
            let (q, proj) = quotient(&m, &k).unwrap();
            assert_eq!(q.size() * k.len(), m.size());
            let images: Vec<Elem> = m.generators().iter().map(|&g| proj.apply(g)).collect();
            let rebuilt = make_hom(&m, &q, &images).unwrap();
            assert!(m.elements().all(|x| rebuilt.apply(x) == proj.apply(x)));
        }
    }

    #[test]
    fn direct_sum_examples() {
        let r = z(36);
        let a = build_module(r, &[4]).unwrap();
        let b = build_module(r, &[9]).unwrap();
        let ds = direct_sum(&a, &b).unwrap();
        assert_eq!(ds.module().size(), 36);
        let zero_plus = ds.lift_left(&Submodule::zero(&a)).unwrap();
        assert_eq!(zero_plus.len(), 9);
        assert!(zero_plus.elements().iter().all(|&e| e < 9));
        let both = ds.lift_both(&sub(&a, "2"), &sub(&b, "3")).unwrap();
        assert_eq!(both.len(), 6);
        assert!(direct_sum(&a, &cyclic(4)).is_err());
    }

    #[test]
    fn multiplication_examples() {
        assert!(is_multiplication(&cyclic(12), DEFAULT_MODULE_CAP).unwrap());
        assert!(!is_multiplication(&build_module(z(2), &[2, 2]).unwrap(), DEFAULT_MODULE_CAP).unwrap());
        assert!(is_multiplication(&build_module(z(8), &[4]).unwrap(), DEFAULT_MODULE_CAP).unwrap());
    }

    #[test]
    fn product_examples() {
        let m12 = cyclic(12);
        assert_eq!(product(&sub(&m12, "2"), &sub(&m12, "3"), DEFAULT_MODULE_CAP).unwrap(), sub(&m12, "6"));
        let n = sub(&m12, "4");
        assert_eq!(product(&n, &Submodule::whole(&m12), DEFAULT_MODULE_CAP).unwrap(), n);
        let m8 = cyclic(8);
        assert_eq!(presentation_power(&sub(&m8, "2"), 2).unwrap(), sub(&m8, "4"));
        let klein = build_module(z(2), &[2, 2]).unwrap();
        let k = sub(&klein, "1,0");
        assert_eq!(product(&k, &k, DEFAULT_MODULE_CAP).unwrap_err(), AlgebraError::NotMultiplication);
    }

    #[test]
    fn comaximal_examples() {
        let m12 = cyclic(12);
        assert!(are_comaximal(&sub(&m12, "4"), &sub(&m12, "3")).unwrap());
        assert!(!are_comaximal(&sub(&m12, "2"), &sub(&m12, "6")).unwrap());
        assert!(are_comaximal(&sub(&m12, "6"), &Submodule::whole(&m12)).unwrap());
    }

    #[test]
    fn radical_examples() {
        let m12 = cyclic(12);
        assert_eq!(m_radical(&sub(&m12, "4"), DEFAULT_MODULE_CAP).unwrap(), sub(&m12, "2"));
        assert_eq!(m_radical(&sub(&m12, "3"), DEFAULT_MODULE_CAP).unwrap(), sub(&m12, "3"));
        assert_eq!(m_radical(&Submodule::zero(&m12), DEFAULT_MODULE_CAP).unwrap(), sub(&m12, "6"));
        assert_eq!(rad_module(&m12, DEFAULT_MODULE_CAP).unwrap(), sub(&m12, "6"));
        let m7 = cyclic(7);
        assert!(rad_module(&m7, DEFAULT_MODULE_CAP).unwrap().is_zero());
        let m8 = cyclic(8);
        assert_eq!(rad_module(&m8, DEFAULT_MODULE_CAP).unwrap(), sub(&m8, "2"));
    }

    #[test]
    fn secondary_examples() {
        let m8 = cyclic(8);
        assert!(is_secondary(&sub(&m8, "4")).unwrap().holds);
        let m6 = cyclic(6);
        assert_eq!(is_secondary(&Submodule::whole(&m6)).unwrap(), Verdict::fails(Witness::Homothety { r: 2 }));
        assert!(is_secondary(&Submodule::whole(&cyclic(5))).unwrap().holds);
        assert_eq!(is_secondary(&Submodule::zero(&m6)), Err(AlgebraError::ZeroSubmodule));
    }

    #[test]
    fn localization_examples() {
        let m12 = cyclic(12);
        let s3 = mult_closure(&z(12), &[3]);
        let loc = localize(&m12, &s3).unwrap();
        assert_eq!((loc.ring().modulus(), loc.module().size()), (4, 4));
        assert!(loc.localize_submodule(&sub(&m12, "4")).unwrap().is_zero());
        let id = localize(&m12, &mult_closure(&z(12), &[1])).unwrap();
        assert_eq!(id.module().size(), 12);
        assert!(m12.elements().all(|x| id.apply(x) == x));
        let s2 = mult_closure(&z(12), &[2]);
        let loc2 = localize(&m12, &s2).unwrap();
        assert_eq!(loc2.module().size(), 3);
        assert!(loc2.localize_submodule(&sub(&m12, "3")).unwrap().is_zero());
        let bad = mult_closure(&z(12), &[6]);
        assert_eq!(localize(&m12, &bad).unwrap_err(), AlgebraError::ZeroInMultiplicativeSet);
    }

    #[test]
    fn localization_map_is_scalar_compatible() {
        let m = build_module(z(36), &[36, 6]).unwrap();
        for seed in [2u64, 3, 5, 4, 9] {
            let s = mult_closure(&z(36), &[seed]);
            let loc = localize(&m, &s).unwrap();
            let target = loc.module();
            for x in m.elements().step_by(7) {
                for y in m.elements().step_by(5) {
                    assert_eq!(loc.apply(m.add(x, y)), target.add(loc.apply(x), loc.apply(y)));
                }
                for r in 0..36 {
                    assert_eq!(loc.apply(m.scale(r, x)), target.scale(r, loc.apply(x)));
                }
            }
        }
    }

    #[test]
    fn hom_image_and_preimage_examples() {
        let m12 = cyclic(12);
        let times4 = make_hom(&m12, &m12, &[4]).unwrap();
        assert_eq!(hom_preimage(&times4, &Submodule::zero(&m12)).unwrap(), sub(&m12, "3"));
        let id = ModuleHom::identity(&m12);
        assert_eq!(hom_image(&id, &sub(&m12, "4")).unwrap(), sub(&m12, "4"));
        let z4 = build_module(z(4), &[4]).unwrap();
        let z2 = build_module(z(4), &[2]).unwrap();
        let reduction = make_hom(&z4, &z2, &[1]).unwrap();
        assert!(hom_image(&reduction, &sub(&z4, "2")).unwrap().is_zero());
    }
}
