//! Finite modules over `Z/mZ`, their submodules and homomorphisms.
//!
//! Elements are dense indices `0..size`, with `0` always the zero element.
//! Coordinate modules `Z_{d_1} × … × Z_{d_r}` index elements in mixed radix
//! with the first coordinate most significant, so index order is the
//! lexicographic order on coordinate tuples. Quotients and submodules viewed
//! as modules are table-backed: they carry lookup tables into a base module
//! instead of being re-coordinatized.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use num_integer::Integer;

use crate::error::{AlgebraError, Result};
use crate::ring::{RingIdeal, ZModRing};
use crate::verdict::{Verdict, Witness};

pub type Elem = usize;

/// Default bound on `|M|` for exhaustive submodule enumeration.
pub const DEFAULT_MODULE_CAP: usize = 4096;

const ABSENT: u32 = u32::MAX;

enum Repr {
    Coordinate { orders: Vec<u64>, strides: Vec<usize> },
    Quotient { base: Arc<FiniteModule>, coset_of: Vec<u32>, reps: Vec<u32> },
    Embedded { base: Arc<FiniteModule>, elements: Vec<u32>, index_of: Vec<u32> },
}

pub struct FiniteModule {
    ring: ZModRing,
    repr: Repr,
    size: usize,
    generators: Vec<Elem>,
    origin: Option<String>,
}

impl fmt::Debug for FiniteModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteModule({})", self.describe())
    }
}

impl fmt::Display for FiniteModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

/// Coordinate module `Z_{d_1} × … × Z_{d_r}` over `ring`; an empty list is the zero module.
pub fn build_module(ring: ZModRing, orders: &[u64]) -> Result<Arc<FiniteModule>> {
    FiniteModule::coordinate(ring, orders).map(Arc::new)
}

/// Coordinate module carrying a display name, e.g. `Z_4×Z_2 over Z_4`.
pub fn build_named_module(ring: ZModRing, orders: &[u64], origin: impl Into<String>) -> Result<Arc<FiniteModule>> {
    FiniteModule::coordinate(ring, orders).map(|m| Arc::new(m.with_origin(origin)))
}

/// Realize a finite `Z`-module `Z_{d_1} × … × Z_{d_r}` over `Z_e`, `e = lcm(d_i)`.
///
/// The action of an integer on a module of exponent `e` factors through
/// `Z_e`, and every predicate here depends on scalars only through their
/// residues modulo divisors of `e`, so the finite model decides them exactly.
pub fn reduce_integer_scalars(orders: &[u64]) -> Result<Arc<FiniteModule>> {
    if orders.is_empty() {
        return Err(AlgebraError::Parse { input: String::new(), reason: "no cyclic orders".into() });
    }
    if let Some(&d) = orders.iter().find(|&&d| d < 2) {
        return Err(AlgebraError::OrderTooSmall(d));
    }
    let e = orders.iter().fold(1u64, |acc, d| acc.lcm(d));
    let mut module = FiniteModule::coordinate(ZModRing::new(e)?, orders)?;
    let parts: Vec<String> = orders.iter().map(|d| format!("Z_{d}")).collect();
    module.origin = Some(format!("Z-module {}", parts.join("×")));
    Ok(Arc::new(module))
}

impl FiniteModule {
    pub(crate) fn coordinate(ring: ZModRing, orders: &[u64]) -> Result<Self> {
        for &d in orders {
            if d < 2 {
                return Err(AlgebraError::OrderTooSmall(d));
            }
            if !ring.modulus().is_multiple_of(d) {
                return Err(AlgebraError::OrderNotDivisor { order: d, modulus: ring.modulus() });
            }
        }
        let mut strides = vec![0usize; orders.len()];
        let mut size = 1usize;
        for i in (0..orders.len()).rev() {
            strides[i] = size;
            size = size.checked_mul(orders[i] as usize).ok_or(AlgebraError::CapExceeded {
                size: usize::MAX,
                cap: DEFAULT_MODULE_CAP,
            })?;
        }
        let generators = strides.clone();
        Ok(FiniteModule {
            ring,
            repr: Repr::Coordinate { orders: orders.to_vec(), strides },
            size,
            generators,
            origin: None,
        })
    }

    /// Table-backed quotient by the coset partition `coset_of`; `reps` lists
    /// the least representative of each coset in increasing order.
    pub(crate) fn quotient_tables(
        base: Arc<FiniteModule>,
        coset_of: Vec<u32>,
        reps: Vec<u32>,
        origin: String,
    ) -> Self {
        let mut generators: Vec<Elem> = base
            .generators
            .iter()
            .map(|&g| coset_of[g] as Elem)
            .filter(|&c| c != 0)
            .collect();
        generators.dedup();
        FiniteModule {
            ring: base.ring,
            size: reps.len(),
            repr: Repr::Quotient { base, coset_of, reps },
            generators,
            origin: Some(origin),
        }
    }

    /// Submodule `sub` as a module in its own right; returns it with the inclusion map.
    pub fn from_submodule(sub: &Submodule) -> (Arc<FiniteModule>, ModuleHom) {
        let base = sub.module.clone();
        let elements: Vec<u32> = sub.elements.iter().map(|&e| e as u32).collect();
        let mut index_of = vec![ABSENT; base.size];
        for (i, &e) in elements.iter().enumerate() {
            index_of[e as usize] = i as u32;
        }
        let generators = sub.generators.iter().map(|&g| index_of[g] as Elem).collect();
        let origin = format!("{} inside {}", sub.describe(), base.describe());
        let module = Arc::new(FiniteModule {
            ring: base.ring,
            size: elements.len(),
            repr: Repr::Embedded { base: base.clone(), elements, index_of },
            generators,
            origin: Some(origin),
        });
        let map = (0..module.size).map(|i| module.lift(i)).collect();
        let inclusion = ModuleHom { source: module.clone(), target: base, map };
        (module, inclusion)
    }

    pub fn with_origin(mut self, origin: impl Into<String>) -> Self {
        self.origin = Some(origin.into());
        self
    }

    pub fn ring(&self) -> ZModRing {
        self.ring
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_zero_module(&self) -> bool {
        self.size == 1
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.size
    }

    pub fn zero(&self) -> Elem {
        0
    }

    /// A generating set: unit vectors for coordinate modules, images of the
    /// base generators otherwise.
    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn origin(&self) -> Option<&str> {
        self.origin.as_deref()
    }

    /// Cyclic orders of a coordinate module.
    pub fn orders(&self) -> Option<&[u64]> {
        match &self.repr {
            Repr::Coordinate { orders, .. } => Some(orders),
            _ => None,
        }
    }

    pub fn describe(&self) -> String {
        if let Some(origin) = &self.origin {
            return origin.clone();
        }
        match &self.repr {
            Repr::Coordinate { orders, .. } if orders.is_empty() => format!("0 over {}", self.ring),
            Repr::Coordinate { orders, .. } => {
                let parts: Vec<String> = orders.iter().map(|d| format!("Z_{d}")).collect();
                format!("{} over {}", parts.join("×"), self.ring)
            }
            Repr::Quotient { base, .. } => format!("quotient of {}", base.describe()),
            Repr::Embedded { base, .. } => format!("submodule of {}", base.describe()),
        }
    }

    fn lift(&self, x: Elem) -> Elem {
        match &self.repr {
            Repr::Coordinate { .. } => x,
            Repr::Quotient { reps, .. } => reps[x] as Elem,
            Repr::Embedded { elements, .. } => elements[x] as Elem,
        }
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.repr {
            Repr::Coordinate { orders, strides } => {
                let mut out = 0;
                for (&d, &s) in orders.iter().zip(strides) {
                    let d = d as usize;
                    out += (((a / s) % d + (b / s) % d) % d) * s;
                }
                out
            }
            Repr::Quotient { base, coset_of, reps } => {
                coset_of[base.add(reps[a] as Elem, reps[b] as Elem)] as Elem
            }
            Repr::Embedded { base, elements, index_of } => {
                index_of[base.add(elements[a] as Elem, elements[b] as Elem)] as Elem
            }
        }
    }

    pub fn neg(&self, a: Elem) -> Elem {
        match &self.repr {
            Repr::Coordinate { orders, strides } => {
                let mut out = 0;
                for (&d, &s) in orders.iter().zip(strides) {
                    let d = d as usize;
                    out += ((d - (a / s) % d) % d) * s;
                }
                out
            }
            Repr::Quotient { base, coset_of, reps } => coset_of[base.neg(reps[a] as Elem)] as Elem,
            Repr::Embedded { base, elements, index_of } => {
                index_of[base.neg(elements[a] as Elem)] as Elem
            }
        }
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    /// `r · a` for a scalar residue `r` (any integer; reduced modulo the ring).
    pub fn scale(&self, r: u64, a: Elem) -> Elem {
        let r = self.ring.reduce(r);
        match &self.repr {
            Repr::Coordinate { orders, strides } => {
                let mut out = 0;
                for (&d, &s) in orders.iter().zip(strides) {
                    let digit = ((a / s) as u64) % d;
                    out += ((r % d * digit) % d) as usize * s;
                }
                out
            }
            Repr::Quotient { base, coset_of, reps } => {
                coset_of[base.scale(r, reps[a] as Elem)] as Elem
            }
            Repr::Embedded { base, elements, index_of } => {
                index_of[base.scale(r, elements[a] as Elem)] as Elem
            }
        }
    }

    /// Coordinates of the element, or of its representative in the underlying coordinate module.
    pub fn coords(&self, x: Elem) -> Vec<u64> {
        match &self.repr {
            Repr::Coordinate { orders, strides } => orders
                .iter()
                .zip(strides)
                .map(|(&d, &s)| ((x / s) as u64) % d)
                .collect(),
            Repr::Quotient { base, reps, .. } => base.coords(reps[x] as Elem),
            Repr::Embedded { base, elements, .. } => base.coords(elements[x] as Elem),
        }
    }

    /// Canonical text form: comma-separated coordinates; quotient classes in brackets.
    pub fn format_element(&self, x: Elem) -> String {
        match &self.repr {
            Repr::Coordinate { orders, .. } if orders.is_empty() => "0".to_string(),
            Repr::Coordinate { .. } => {
                let cs: Vec<String> = self.coords(x).iter().map(u64::to_string).collect();
                cs.join(",")
            }
            Repr::Quotient { base, reps, .. } => format!("[{}]", base.format_element(reps[x] as Elem)),
            Repr::Embedded { base, elements, .. } => base.format_element(elements[x] as Elem),
        }
    }

    /// Parse `"a,b,…"`. Quotient classes accept any base representative.
    pub fn parse_element(&self, text: &str) -> Result<Elem> {
        let bad = |reason: &str| AlgebraError::Parse { input: text.to_string(), reason: reason.into() };
        match &self.repr {
            Repr::Coordinate { orders, strides } => {
                let text = text.trim();
                if orders.is_empty() {
                    return if text.is_empty() || text == "0" { Ok(0) } else { Err(bad("zero module")) };
                }
                let parts: Vec<&str> = text.split(',').map(str::trim).collect();
                if parts.len() != orders.len() {
                    return Err(bad(&format!("expected {} coordinates", orders.len())));
                }
                let mut idx = 0;
                for ((part, &d), &s) in parts.iter().zip(orders).zip(strides) {
                    let v: u64 = part.parse().map_err(|_| bad("not an integer"))?;
                    if v >= d {
                        return Err(bad(&format!("coordinate {v} out of range for Z_{d}")));
                    }
                    idx += v as usize * s;
                }
                Ok(idx)
            }
            Repr::Quotient { base, coset_of, .. } => {
                let t = text.trim().trim_start_matches('[').trim_end_matches(']');
                Ok(coset_of[base.parse_element(t)?] as Elem)
            }
            Repr::Embedded { base, index_of, .. } => {
                let i = index_of[base.parse_element(text)?];
                if i == ABSENT {
                    Err(bad("not in the submodule"))
                } else {
                    Ok(i as Elem)
                }
            }
        }
    }

    /// Parse a generator list `"a,b;c,d"`; the empty string is the empty list.
    pub fn parse_generators(&self, text: &str) -> Result<Vec<Elem>> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Vec::new());
        }
        text.split(';').map(|g| self.parse_element(g)).collect()
    }

    /// Additive order of an element.
    pub fn order_of(&self, x: Elem) -> u64 {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = self.add(y, x);
            k += 1;
        }
        k
    }
}

/// A submodule with its full element set.
#[derive(Clone)]
pub struct Submodule {
    module: Arc<FiniteModule>,
    generators: Vec<Elem>,
    members: FixedBitSet,
    elements: Vec<Elem>,
}

impl fmt::Debug for Submodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Submodule({} in {})", self.describe(), self.module.describe())
    }
}

impl PartialEq for Submodule {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.module, &other.module) && self.members == other.members
    }
}

impl Eq for Submodule {}

/// Grow `members` to the subgroup generated by it and `g`.
fn adjoin(module: &FiniteModule, members: &mut FixedBitSet, elements: &mut Vec<Elem>, g: Elem) -> bool {
    if members.contains(g) {
        return false;
    }
    let old = elements.clone();
    let mut shift = g;
    while !members.contains(shift) {
        for &h in &old {
            let y = module.add(shift, h);
            members.insert(y);
            elements.push(y);
        }
        shift = module.add(shift, g);
    }
    true
}

impl Submodule {
    fn zero_of(module: &Arc<FiniteModule>) -> Self {
        let mut members = FixedBitSet::with_capacity(module.size);
        members.insert(0);
        Submodule { module: module.clone(), generators: Vec::new(), members, elements: vec![0] }
    }

    /// Submodule generated by `candidates`, with a greedily trimmed generator list.
    fn generated_by(module: &Arc<FiniteModule>, candidates: impl IntoIterator<Item = Elem>) -> Self {
        let mut sub = Submodule::zero_of(module);
        for g in candidates {
            if adjoin(module, &mut sub.members, &mut sub.elements, g) {
                sub.generators.push(g);
            }
        }
        sub.elements.sort_unstable();
        sub.trim_generators();
        sub
    }

    fn trim_generators(&mut self) {
        let mut i = 0;
        while i < self.generators.len() && self.generators.len() > 1 {
            let rest: Vec<Elem> = self
                .generators
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &g)| g)
                .collect();
            let mut members = FixedBitSet::with_capacity(self.module.size);
            members.insert(0);
            let mut elements = vec![0];
            for &g in &rest {
                adjoin(&self.module, &mut members, &mut elements, g);
            }
            if elements.len() == self.elements.len() {
                self.generators = rest;
            } else {
                i += 1;
            }
        }
    }

    pub fn module(&self) -> &Arc<FiniteModule> {
        &self.module
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    /// Elements in increasing index order.
    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn members(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.members.contains(x)
    }

    pub fn is_proper(&self) -> bool {
        self.elements.len() < self.module.size
    }

    pub fn is_zero(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_subset_of(&self, other: &Submodule) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn same_module(&self, other: &Submodule) -> Result<()> {
        if Arc::ptr_eq(&self.module, &other.module) {
            Ok(())
        } else {
            Err(AlgebraError::ModuleMismatch)
        }
    }

    /// Generator list in CLI syntax, e.g. `<2,0; 0,1>`.
    pub fn describe(&self) -> String {
        if self.generators.is_empty() {
            return "<0>".to_string();
        }
        let gs: Vec<String> = self.generators.iter().map(|&g| self.module.format_element(g)).collect();
        format!("<{}>", gs.join("; "))
    }

    pub fn whole(module: &Arc<FiniteModule>) -> Self {
        Submodule::generated_by(module, module.generators().to_vec())
    }

    pub fn zero(module: &Arc<FiniteModule>) -> Self {
        Submodule::zero_of(module)
    }

    /// `r · N`.
    pub fn scaled(&self, r: u64) -> Submodule {
        Submodule::generated_by(&self.module, self.generators.iter().map(|&g| self.module.scale(r, g)))
    }
}

/// Additive closure of `gens ∪ {0}`.
pub fn span(module: &Arc<FiniteModule>, gens: &[Elem]) -> Result<Submodule> {
    if let Some(&g) = gens.iter().find(|&&g| g >= module.size) {
        return Err(AlgebraError::ForeignElement(g));
    }
    Ok(Submodule::generated_by(module, gens.iter().copied()))
}

pub fn intersect(n: &Submodule, k: &Submodule) -> Result<Submodule> {
    n.same_module(k)?;
    let common = n.elements.iter().copied().filter(|&x| k.contains(x));
    Ok(Submodule::generated_by(&n.module, common))
}

pub fn sum(n: &Submodule, k: &Submodule) -> Result<Submodule> {
    n.same_module(k)?;
    Ok(Submodule::generated_by(&n.module, n.generators.iter().chain(&k.generators).copied()))
}

/// `(N :_R M) = {r : rM ⊆ N}`, scanned against a generating set of `M`.
pub fn residual_ring(n: &Submodule) -> RingIdeal {
    let module = &n.module;
    let ring = module.ring();
    let gen = (1..ring.modulus())
        .find(|&r| module.generators().iter().all(|&g| n.contains(module.scale(r, g))))
        .unwrap_or(ring.modulus());
    RingIdeal::new(&ring, gen).expect("least positive element of an ideal divides the modulus")
}

/// `(N :_R x) = {r : rx ∈ N}`.
pub fn residual_element(n: &Submodule, x: Elem) -> RingIdeal {
    let module = &n.module;
    let ring = module.ring();
    let gen = (1..ring.modulus()).find(|&r| n.contains(module.scale(r, x))).unwrap_or(ring.modulus());
    RingIdeal::new(&ring, gen).expect("least positive element of an ideal divides the modulus")
}

/// `(N :_M I) = {x : Ix ⊆ N}`; testing the generator of `I` suffices.
pub fn residual_module(n: &Submodule, ideal: &RingIdeal) -> Result<Submodule> {
    let module = &n.module;
    if ideal.ring() != module.ring() {
        return Err(AlgebraError::RingMismatch(ideal.ring().modulus(), module.ring().modulus()));
    }
    let d = ideal.generator();
    let members = module.elements().filter(|&x| n.contains(module.scale(d, x)));
    Ok(Submodule::generated_by(module, members))
}

/// Every submodule of `M`, sorted by size and then by element set.
///
/// Breadth-first growth from `{0}`: each known submodule is extended by one
/// outside element and closed; duplicates are dropped by element set.
pub fn enumerate_submodules(module: &Arc<FiniteModule>, cap: usize) -> Result<Vec<Submodule>> {
    if module.size > cap {
        return Err(AlgebraError::CapExceeded { size: module.size, cap });
    }
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    let mut found: Vec<Submodule> = Vec::new();
    let mut queue: VecDeque<usize> = VecDeque::new();
    let zero = Submodule::zero_of(module);
    seen.insert(zero.members.clone());
    found.push(zero);
    queue.push_back(0);
    while let Some(i) = queue.pop_front() {
        let current = found[i].clone();
        let mut covered = current.members.clone();
        for x in module.elements() {
            if covered.contains(x) {
                continue;
            }
            let mut members = current.members.clone();
            let mut elements = current.elements.clone();
            adjoin(module, &mut members, &mut elements, x);
            // y generates the same extension when its class has the same order modulo N
            let rel = order_modulo(module, &current.members, x);
            for &y in &elements {
                if !covered.contains(y) && order_modulo(module, &current.members, y) == rel {
                    covered.insert(y);
                }
            }
            if seen.insert(members.clone()) {
                elements.sort_unstable();
                let mut sub = Submodule {
                    module: module.clone(),
                    generators: current.generators.iter().copied().chain([x]).collect(),
                    members,
                    elements,
                };
                sub.trim_generators();
                found.push(sub);
                queue.push_back(found.len() - 1);
            }
        }
    }
    found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.elements.cmp(&b.elements)));
    Ok(found)
}

fn order_modulo(module: &FiniteModule, members: &FixedBitSet, x: Elem) -> u64 {
    let mut k = 1;
    let mut y = x;
    while !members.contains(y) {
        y = module.add(y, x);
        k += 1;
    }
    k
}

/// No submodule lies strictly between `N` and `M`.
pub fn is_maximal_submodule(n: &Submodule) -> Result<bool> {
    if !n.is_proper() {
        return Err(AlgebraError::NotProper);
    }
    let module = &n.module;
    Ok(module.elements().filter(|&x| !n.contains(x)).all(|x| {
        let mut members = n.members.clone();
        let mut elements = n.elements.clone();
        adjoin(module, &mut members, &mut elements, x);
        elements.len() == module.size
    }))
}

/// `rx ∈ N ⇒ x ∈ N or r ∈ (N :_R M)`, scanned over all `(r, x)`.
pub fn is_prime_submodule(n: &Submodule) -> Result<Verdict> {
    if !n.is_proper() {
        return Err(AlgebraError::NotProper);
    }
    let module = &n.module;
    let colon = residual_ring(n);
    for r in module.ring().elements() {
        if colon.contains(r) {
            continue;
        }
        if let Some(x) = module.elements().find(|&x| !n.contains(x) && n.contains(module.scale(r, x))) {
            return Ok(Verdict::fails(Witness::Scalar { r, x }));
        }
    }
    Ok(Verdict::holds())
}

/// A module homomorphism realized as a total element map.
#[derive(Clone)]
pub struct ModuleHom {
    source: Arc<FiniteModule>,
    target: Arc<FiniteModule>,
    map: Vec<Elem>,
}

impl fmt::Debug for ModuleHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModuleHom({} -> {})", self.source.describe(), self.target.describe())
    }
}

/// Extend `images` (one per element of `source.generators()`) additively and
/// verify that the result is a well-defined `R`-linear map.
pub fn make_hom(source: &Arc<FiniteModule>, target: &Arc<FiniteModule>, images: &[Elem]) -> Result<ModuleHom> {
    if source.ring() != target.ring() {
        return Err(AlgebraError::RingMismatch(source.ring().modulus(), target.ring().modulus()));
    }
    let gens = source.generators();
    if images.len() != gens.len() {
        return Err(AlgebraError::NotAHomomorphism);
    }
    if let Some(&y) = images.iter().find(|&&y| y >= target.size) {
        return Err(AlgebraError::ForeignElement(y));
    }
    let mut map = vec![usize::MAX; source.size];
    map[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (&g, &img) in gens.iter().zip(images) {
            let y = source.add(x, g);
            let fy = target.add(map[x], img);
            if map[y] == usize::MAX {
                map[y] = fy;
                queue.push_back(y);
            } else if map[y] != fy {
                return Err(AlgebraError::NotAHomomorphism);
            }
        }
    }
    if map.contains(&usize::MAX) {
        return Err(AlgebraError::NotAHomomorphism);
    }
    let hom = ModuleHom { source: source.clone(), target: target.clone(), map };
    for r in source.ring().elements() {
        for x in source.elements() {
            if hom.apply(source.scale(r, x)) != target.scale(r, hom.apply(x)) {
                return Err(AlgebraError::NotAHomomorphism);
            }
        }
    }
    Ok(hom)
}

impl ModuleHom {
    pub(crate) fn from_map(source: Arc<FiniteModule>, target: Arc<FiniteModule>, map: Vec<Elem>) -> Self {
        ModuleHom { source, target, map }
    }

    pub fn identity(module: &Arc<FiniteModule>) -> Self {
        ModuleHom { source: module.clone(), target: module.clone(), map: module.elements().collect() }
    }

    pub fn source(&self) -> &Arc<FiniteModule> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteModule> {
        &self.target
    }

    pub fn apply(&self, x: Elem) -> Elem {
        self.map[x]
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = FixedBitSet::with_capacity(self.target.size);
        for &y in &self.map {
            hit.insert(y);
        }
        hit.count_ones(..) == self.target.size
    }

    pub fn kernel(&self) -> Submodule {
        let zeros = self.source.elements().filter(|&x| self.map[x] == 0);
        Submodule::generated_by(&self.source, zeros)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

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
    fn build_module_examples() {
        assert_eq!(build_module(z(12), &[12]).unwrap().size(), 12);
        assert_eq!(build_module(z(4), &[4, 2]).unwrap().size(), 8);
        assert_eq!(
            build_module(z(12), &[8]).unwrap_err(),
            AlgebraError::OrderNotDivisor { order: 8, modulus: 12 }
        );
        assert_eq!(build_module(z(12), &[1]).unwrap_err(), AlgebraError::OrderTooSmall(1));
        assert_eq!(build_module(z(5), &[]).unwrap().size(), 1);
    }

    #[test]
    fn reduce_integer_scalars_examples() {
        let m = reduce_integer_scalars(&[8]).unwrap();
        assert_eq!((m.ring().modulus(), m.size()), (8, 8));
        let m = reduce_integer_scalars(&[4, 2]).unwrap();
        assert_eq!((m.ring().modulus(), m.size()), (4, 8));
        assert_eq!(reduce_integer_scalars(&[9, 3]).unwrap().ring().modulus(), 9);
    }

    #[test]
    fn element_syntax_round_trips() {
        let m = build_module(z(4), &[4, 2]).unwrap();
        for x in m.elements() {
            assert_eq!(m.parse_element(&m.format_element(x)).unwrap(), x);
        }
        assert_eq!(m.format_element(m.parse_element("3,1").unwrap()), "3,1");
        assert!(m.parse_element("4,0").is_err());
        assert!(m.parse_element("1").is_err());
        assert_eq!(m.parse_generators("").unwrap(), Vec::<Elem>::new());
        assert_eq!(m.parse_generators("2,0;0,1").unwrap().len(), 2);
    }

    #[test]
    fn span_examples() {
        let m12 = cyclic(12);
        let elems: Vec<String> = sub(&m12, "4").elements().iter().map(|&x| m12.format_element(x)).collect();
        assert_eq!(elems, ["0", "4", "8"]);
        assert_eq!(sub(&m12, "").elements(), &[0]);
        let m = build_module(z(4), &[4, 2]).unwrap();
        let elems: Vec<String> = sub(&m, "2,0").elements().iter().map(|&x| m.format_element(x)).collect();
        assert_eq!(elems, ["0,0", "2,0"]);
        assert_eq!(span(&m12, &[12]).unwrap_err(), AlgebraError::ForeignElement(12));
    }

    #[test]
    fn span_is_idempotent() {
        let m = build_module(z(8), &[8, 2]).unwrap();
        for n in enumerate_submodules(&m, DEFAULT_MODULE_CAP).unwrap() {
            assert_eq!(span(&m, n.elements()).unwrap(), n);
            assert_eq!(span(&m, n.generators()).unwrap(), n);
        }
    }

    #[test]
    fn residual_ring_examples() {
        let m6 = cyclic(6);
        assert_eq!(residual_ring(&Submodule::zero(&m6)).generator(), 6);
        let m = build_module(z(4), &[4, 2]).unwrap();
        assert_eq!(residual_ring(&sub(&m, "2,0")).generator(), 2);
        assert_eq!(residual_ring(&Submodule::whole(&m)).generator(), 1);
    }

    #[test]
    fn residual_ring_matches_full_scan() {
        for module in [cyclic(12), build_module(z(8), &[8, 2]).unwrap(), build_module(z(9), &[9, 3]).unwrap()] {
            for n in enumerate_submodules(&module, DEFAULT_MODULE_CAP).unwrap() {
                let colon = residual_ring(&n);
                for r in module.ring().elements() {
                    let full = module.elements().all(|x| n.contains(module.scale(r, x)));
                    assert_eq!(colon.contains(r), full);
                }
                for x in module.elements() {
                    assert!(colon.is_subset_of(&residual_element(&n, x)));
                }
            }
        }
    }

    #[test]
    fn residual_element_examples() {
        let m12 = cyclic(12);
        assert_eq!(residual_element(&sub(&m12, "4"), 2).generator(), 2);
        assert_eq!(residual_element(&sub(&m12, "4"), 4).generator(), 1);
        let m8 = cyclic(8);
        assert_eq!(residual_element(&Submodule::zero(&m8), 4).generator(), 2);
    }

    #[test]
    fn residual_module_examples() {
        let m12 = cyclic(12);
        let n = sub(&m12, "4");
        let two = RingIdeal::new(&z(12), 2).unwrap();
        assert_eq!(residual_module(&n, &two).unwrap(), sub(&m12, "2"));
        assert_eq!(residual_module(&n, &z(12).whole()).unwrap(), n);
        assert_eq!(residual_module(&n, &z(12).zero_ideal()).unwrap(), Submodule::whole(&m12));
        let other = RingIdeal::new(&z(6), 2).unwrap();
        assert!(residual_module(&n, &other).is_err());
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(enumerate_submodules(&cyclic(4), DEFAULT_MODULE_CAP).unwrap().len(), 3);
        let klein = build_module(z(2), &[2, 2]).unwrap();
        assert_eq!(enumerate_submodules(&klein, DEFAULT_MODULE_CAP).unwrap().len(), 5);
        let zero = build_module(z(3), &[]).unwrap();
        assert_eq!(enumerate_submodules(&zero, DEFAULT_MODULE_CAP).unwrap().len(), 1);
        assert!(matches!(
            enumerate_submodules(&cyclic(12), 10),
            Err(AlgebraError::CapExceeded { size: 12, cap: 10 })
        ));
    }

    /// Brute force: every subset closed under addition.
    fn count_subgroups_brute(module: &FiniteModule) -> usize {
        let n = module.size();
        assert!(n <= 16);
        (0u32..(1 << n))
            .filter(|mask| mask & 1 == 1)
            .filter(|mask| {
                (0..n).all(|a| {
                    mask & (1 << a) == 0
                        || (0..n).all(|b| mask & (1 << b) == 0 || mask & (1 << module.add(a, b)) != 0)
                })
            })
            .count()
    }

    #[test]
    fn enumeration_count_matches_subset_oracle() {
        for (m, orders) in [(12u64, vec![12u64]), (16, vec![16]), (4, vec![4, 2]), (2, vec![2, 2, 2]), (4, vec![4, 4]), (6, vec![6, 2])] {
            let module = build_module(z(m), &orders).unwrap();
            let subs = enumerate_submodules(&module, DEFAULT_MODULE_CAP).unwrap();
            let keys: HashSet<Vec<Elem>> = subs.iter().map(|s| s.elements().to_vec()).collect();
            assert_eq!(keys.len(), subs.len());
            assert_eq!(subs.len(), count_subgroups_brute(&module), "orders {orders:?}");
        }
    }

    #[test]
    fn enumeration_count_matches_divisor_count_on_cyclic() {
        for m in 2..=60u64 {
            let count = enumerate_submodules(&cyclic(m), DEFAULT_MODULE_CAP).unwrap().len();
            assert_eq!(count, (1..=m).filter(|d| m % d == 0).count());
        }
    }

    #[test]
    fn lattice_examples() {
        let m12 = cyclic(12);
        assert_eq!(intersect(&sub(&m12, "2"), &sub(&m12, "3")).unwrap(), sub(&m12, "6"));
        assert_eq!(sum(&sub(&m12, "4"), &sub(&m12, "6")).unwrap(), sub(&m12, "2"));
        let n = sub(&m12, "4");
        assert_eq!(intersect(&n, &Submodule::whole(&m12)).unwrap(), n);
        assert!(n.is_proper() && n.contains(8) && !n.contains(2));
        let other = cyclic(12);
        assert_eq!(intersect(&n, &Submodule::zero(&other)).unwrap_err(), AlgebraError::ModuleMismatch);
    }

    #[test]
    fn maximal_examples() {
        let m12 = cyclic(12);
        assert!(is_maximal_submodule(&sub(&m12, "2")).unwrap());
        assert!(!is_maximal_submodule(&sub(&m12, "4")).unwrap());
        assert!(is_maximal_submodule(&Submodule::zero(&cyclic(7))).unwrap());
        assert_eq!(is_maximal_submodule(&Submodule::whole(&m12)), Err(AlgebraError::NotProper));
    }

    #[test]
    fn prime_submodule_examples() {
        let m12 = cyclic(12);
        assert!(is_prime_submodule(&sub(&m12, "2")).unwrap().holds);
        assert_eq!(
            is_prime_submodule(&sub(&m12, "4")).unwrap(),
            Verdict::fails(Witness::Scalar { r: 2, x: 2 })
        );
        assert!(is_prime_submodule(&Submodule::zero(&cyclic(5))).unwrap().holds);
    }

    #[test]
    fn hom_examples() {
        let m12 = cyclic(12);
        let id = make_hom(&m12, &m12, &[1]).unwrap();
        assert!(m12.elements().all(|x| id.apply(x) == x));
        let times4 = make_hom(&m12, &m12, &[4]).unwrap();
        assert!(m12.elements().all(|x| times4.apply(x) == (4 * x) % 12));
        let z4 = build_module(z(4), &[4]).unwrap();
        let z2 = build_module(z(4), &[2]).unwrap();
        let reduction = make_hom(&z4, &z2, &[1]).unwrap();
        assert_eq!(reduction.apply(3), 1);
        assert!(reduction.is_surjective());
        assert_eq!(make_hom(&z2, &z4, &[1]).unwrap_err(), AlgebraError::NotAHomomorphism);
        assert!(make_hom(&m12, &z4, &[1]).is_err());
    }

    #[test]
    fn submodule_as_module_inclusion() {
        let m12 = cyclic(12);
        let n = sub(&m12, "3");
        let (inner, inclusion) = FiniteModule::from_submodule(&n);
        assert_eq!(inner.size(), 4);
        assert!(inner.elements().all(|x| n.contains(inclusion.apply(x))));
        assert_eq!(inner.format_element(1), "3");
        assert_eq!(inclusion.kernel().len(), 1);
    }
}
