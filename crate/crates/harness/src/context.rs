//! Per-module caches shared by every property instance over that module.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use knsub_core::constructions::{is_multiplication, is_secondary};
use knsub_core::module::{enumerate_submodules, is_prime_submodule, residual_ring};
use knsub_core::predicates::{is_kn_closed, is_n_absorbing, is_quasi_prime, is_semiprime, is_strongly_kn_closed};
use knsub_core::{AlgebraError, Elem, FiniteModule, RingIdeal, Submodule, Verdict};
use serde::Serialize;

use crate::error::Result;

/// Exploration bounds for a suite run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteBounds {
    pub kmax: u32,
    pub nabs_max: u32,
    pub module_cap: usize,
}

impl Default for SuiteBounds {
    fn default() -> Self {
        SuiteBounds { kmax: 4, nabs_max: 3, module_cap: knsub_core::module::DEFAULT_MODULE_CAP }
    }
}

type Cached<T> = OnceLock<std::result::Result<T, AlgebraError>>;

fn cached<T: Clone>(cell: &Cached<T>, f: impl FnOnce() -> std::result::Result<T, AlgebraError>) -> Result<T> {
    Ok(cell.get_or_init(f).clone()?)
}

struct SubCache {
    cells: Cached<Vec<Verdict>>,
    strong: Cached<Vec<bool>>,
    semiprime: Cached<Verdict>,
    quasi: Cached<Verdict>,
    absorbing: Cached<Vec<Verdict>>,
    secondary: Cached<Option<Verdict>>,
    prime: Cached<bool>,
}

impl SubCache {
    fn new() -> Self {
        SubCache {
            cells: OnceLock::new(),
            strong: OnceLock::new(),
            semiprime: OnceLock::new(),
            quasi: OnceLock::new(),
            absorbing: OnceLock::new(),
            secondary: OnceLock::new(),
            prime: OnceLock::new(),
        }
    }
}

/// A module with its full submodule lattice and lazily computed predicate
/// values for each lattice member.
pub struct ModuleData {
    module: Arc<FiniteModule>,
    lattice: Vec<Submodule>,
    index: HashMap<Vec<Elem>, usize>,
    proper: Vec<usize>,
    bounds: SuiteBounds,
    caches: Vec<SubCache>,
    multiplication: Cached<bool>,
}

impl ModuleData {
    pub fn new(module: Arc<FiniteModule>, bounds: SuiteBounds) -> Result<Arc<Self>> {
        let lattice = enumerate_submodules(&module, bounds.module_cap)?;
        let index = lattice.iter().enumerate().map(|(i, s)| (s.elements().to_vec(), i)).collect();
        let proper = (0..lattice.len()).filter(|&i| lattice[i].is_proper()).collect();
        let caches = lattice.iter().map(|_| SubCache::new()).collect();
        Ok(Arc::new(ModuleData { module, lattice, index, proper, bounds, caches, multiplication: OnceLock::new() }))
    }

    pub fn module(&self) -> &Arc<FiniteModule> {
        &self.module
    }

    pub fn lattice(&self) -> &[Submodule] {
        &self.lattice
    }

    pub fn sub(&self, i: usize) -> &Submodule {
        &self.lattice[i]
    }

    /// Indices of proper submodules, in enumeration order.
    pub fn proper(&self) -> &[usize] {
        &self.proper
    }

    pub fn bounds(&self) -> SuiteBounds {
        self.bounds
    }

    pub fn kmax(&self) -> u32 {
        self.bounds.kmax
    }

    pub fn index_of(&self, s: &Submodule) -> Option<usize> {
        self.index.get(s.elements()).copied()
    }

    /// Lattice index of `s`, which must be a submodule of this module.
    pub fn locate(&self, s: &Submodule) -> Result<usize> {
        self.index_of(s).ok_or(AlgebraError::ModuleMismatch.into())
    }

    pub fn label(&self, i: usize) -> String {
        format!("N={} in {}", self.lattice[i].describe(), self.module.describe())
    }

    pub fn format_element(&self, x: Elem) -> String {
        self.module.format_element(x)
    }

    fn grid(&self, i: usize) -> Result<Vec<Verdict>> {
        let kmax = self.bounds.kmax;
        cached(&self.caches[i].cells, || {
            let mut cells = Vec::with_capacity((kmax * kmax) as usize);
            for k in 1..=kmax {
                for n in 1..=kmax {
                    cells.push(is_kn_closed(&self.lattice[i], k, n)?);
                }
            }
            Ok(cells)
        })
    }

    /// `is_kn_closed` for lattice member `i`; cached inside the `kmax` grid.
    pub fn verdict(&self, i: usize, k: u32, n: u32) -> Result<Verdict> {
        let kmax = self.bounds.kmax;
        if k <= kmax && n <= kmax {
            Ok(self.grid(i)?[((k - 1) * kmax + (n - 1)) as usize].clone())
        } else {
            Ok(is_kn_closed(&self.lattice[i], k, n)?)
        }
    }

    pub fn holds(&self, i: usize, k: u32, n: u32) -> Result<bool> {
        Ok(self.verdict(i, k, n)?.holds)
    }

    pub fn semi(&self, i: usize, n: u32) -> Result<bool> {
        self.holds(i, n, n)
    }

    pub fn strongly(&self, i: usize, k: u32, n: u32) -> Result<bool> {
        let kmax = self.bounds.kmax;
        if k > kmax || n > kmax {
            return Ok(is_strongly_kn_closed(&self.lattice[i], k, n)?.holds);
        }
        let grid = cached(&self.caches[i].strong, || {
            let mut cells = Vec::with_capacity((kmax * kmax) as usize);
            for k in 1..=kmax {
                for n in 1..=kmax {
                    cells.push(is_strongly_kn_closed(&self.lattice[i], k, n)?.holds);
                }
            }
            Ok(cells)
        })?;
        Ok(grid[((k - 1) * kmax + (n - 1)) as usize])
    }

    pub fn semiprime(&self, i: usize) -> Result<Verdict> {
        cached(&self.caches[i].semiprime, || is_semiprime(&self.lattice[i]))
    }

    pub fn quasi_prime(&self, i: usize) -> Result<Verdict> {
        cached(&self.caches[i].quasi, || is_quasi_prime(&self.lattice[i]))
    }

    /// `n`-absorbing for `1 ≤ n ≤ nabs_max`.
    pub fn absorbing(&self, i: usize, n: u32) -> Result<Verdict> {
        let cap = self.bounds.nabs_max;
        let all = cached(&self.caches[i].absorbing, || {
            (1..=cap).map(|a| is_n_absorbing(&self.lattice[i], a, cap)).collect()
        })?;
        all.get(n as usize - 1).cloned().ok_or(AlgebraError::AbsorbingCap { n, cap }.into())
    }

    /// `None` for the zero submodule, where secondariness is undefined.
    pub fn secondary(&self, i: usize) -> Result<Option<Verdict>> {
        cached(&self.caches[i].secondary, || {
            if self.lattice[i].is_zero() {
                Ok(None)
            } else {
                is_secondary(&self.lattice[i]).map(Some)
            }
        })
    }

    pub fn is_prime(&self, i: usize) -> Result<bool> {
        cached(&self.caches[i].prime, || Ok(is_prime_submodule(&self.lattice[i])?.holds))
    }

    pub fn residual(&self, i: usize) -> RingIdeal {
        residual_ring(&self.lattice[i])
    }

    pub fn is_multiplication(&self) -> Result<bool> {
        cached(&self.multiplication, || is_multiplication(&self.module, self.bounds.module_cap))
    }
}
