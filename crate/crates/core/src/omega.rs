//! Towers of actions.
//!
//! For a word `(γ⁽¹⁾, …, γ⁽ᵏ⁾)` of operations `γ: X² → X`, `(x, z) ↦ γ_x(z)`,
//!
//! ```text
//! Ω_0(x)                 = x
//! Ω_i(γ⁽ⁱ⁾…γ⁽¹⁾, x, z…)  = γ⁽ⁱ⁾_{Ω_{i-1}(γ⁽ⁱ⁻¹⁾…γ⁽¹⁾, x, z_1…z_{i-1})}(z_i)
//! ```
//!
//! Words are stored first-applied first: `word[0] = γ⁽¹⁾`.
//!
//! A solution is k-permutational over an alphabet when every height-k tower is
//! independent of its base `x`, and k-reductive when every height-k tower over
//! `{σ, τ}` equals the height-(k-1) tower obtained by dropping `x` and using
//! `z_1` as the new base.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm;
use crate::report::{Check, CheckReport};
use crate::solution::{invert, FiniteSolution};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OmegaSymbol {
    Sigma,
    SigmaInv,
    Tau,
    TauInv,
    SigmaHat,
    SigmaHatInv,
    TauHat,
    TauHatInv,
}

impl OmegaSymbol {
    pub const ALL: [OmegaSymbol; 8] = [
        OmegaSymbol::Sigma,
        OmegaSymbol::SigmaInv,
        OmegaSymbol::Tau,
        OmegaSymbol::TauInv,
        OmegaSymbol::SigmaHat,
        OmegaSymbol::SigmaHatInv,
        OmegaSymbol::TauHat,
        OmegaSymbol::TauHatInv,
    ];

    /// `{σ, τ}`
    pub const BASIC: [OmegaSymbol; 2] = [OmegaSymbol::Sigma, OmegaSymbol::Tau];

    /// `{σ, σ⁻¹, τ, τ⁻¹}`
    pub const WITH_INVERSES: [OmegaSymbol; 4] = [
        OmegaSymbol::Sigma,
        OmegaSymbol::SigmaInv,
        OmegaSymbol::Tau,
        OmegaSymbol::TauInv,
    ];

    /// `{σ⁻¹, σ̂⁻¹}`
    pub const REGULAR: [OmegaSymbol; 2] = [OmegaSymbol::SigmaInv, OmegaSymbol::SigmaHatInv];

    pub fn inverse(self) -> OmegaSymbol {
        use OmegaSymbol::*;
        match self {
            Sigma => SigmaInv,
            SigmaInv => Sigma,
            Tau => TauInv,
            TauInv => Tau,
            SigmaHat => SigmaHatInv,
            SigmaHatInv => SigmaHat,
            TauHat => TauHatInv,
            TauHatInv => TauHat,
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for OmegaSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use OmegaSymbol::*;
        let s = match self {
            Sigma => "σ",
            SigmaInv => "σ⁻¹",
            Tau => "τ",
            TauInv => "τ⁻¹",
            SigmaHat => "σ̂",
            SigmaHatInv => "σ̂⁻¹",
            TauHat => "τ̂",
            TauHatInv => "τ̂⁻¹",
        };
        f.write_str(s)
    }
}

pub type OmegaWord = Vec<OmegaSymbol>;

/// Every operation table a solution supports, each stored as `table[x*n + y] = γ_x(y)`.
#[derive(Debug, Clone)]
pub struct Operations {
    n: usize,
    tables: [Option<Vec<u8>>; 8],
}

fn invert_rows(n: usize, flat: &[u8]) -> Option<Vec<u8>> {
    let mut out = Vec::with_capacity(n * n);
    for row in flat.chunks(n) {
        if !perm::is_permutation(row) {
            return None;
        }
        out.extend(perm::inverse(row));
    }
    Some(out)
}

impl Operations {
    pub fn new(sol: &FiniteSolution) -> Self {
        use OmegaSymbol::*;
        let n = sol.n();
        let mut tables: [Option<Vec<u8>>; 8] = Default::default();
        tables[Sigma.index()] = Some(sol.sigma_flat().to_vec());
        tables[Tau.index()] = Some(sol.tau_flat().to_vec());
        tables[SigmaInv.index()] = invert_rows(n, sol.sigma_flat());
        tables[TauInv.index()] = invert_rows(n, sol.tau_flat());
        if let Ok(inv) = invert(sol) {
            tables[SigmaHatInv.index()] = invert_rows(n, inv.sigma_flat());
            tables[TauHatInv.index()] = invert_rows(n, inv.tau_flat());
            tables[SigmaHat.index()] = Some(inv.sigma_flat().to_vec());
            tables[TauHat.index()] = Some(inv.tau_flat().to_vec());
        }
        Operations { n, tables }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has(&self, s: OmegaSymbol) -> bool {
        self.tables[s.index()].is_some()
    }

    pub fn available(&self) -> Vec<OmegaSymbol> {
        OmegaSymbol::ALL.into_iter().filter(|&s| self.has(s)).collect()
    }

    pub fn table(&self, s: OmegaSymbol) -> Result<&[u8]> {
        self.tables[s.index()]
            .as_deref()
            .ok_or(Error::SymbolUnavailable(s))
    }

    fn require(&self, alphabet: &[OmegaSymbol]) -> Result<Vec<&[u8]>> {
        alphabet.iter().map(|&s| self.table(s)).collect()
    }

    /// γ_x(y)
    pub fn apply(&self, s: OmegaSymbol, x: usize, y: usize) -> Result<usize> {
        Ok(self.table(s)?[x * self.n + y] as usize)
    }

    /// Left-to-right evaluation of `Ω_k(word, x, zs)`.
    pub fn eval(&self, word: &[OmegaSymbol], x: usize, zs: &[usize]) -> Result<usize> {
        assert_eq!(word.len(), zs.len(), "word length must match argument count");
        let mut v = x;
        for (&s, &z) in word.iter().zip(zs) {
            v = self.apply(s, v, z)?;
        }
        Ok(v)
    }

    /// The same value, computed by unfolding the outermost symbol first.
    fn eval_recursive(&self, word: &[OmegaSymbol], x: usize, zs: &[usize]) -> Result<usize> {
        match word.len() {
            0 => Ok(x),
            i => {
                let inner = self.eval_recursive(&word[..i - 1], x, &zs[..i - 1])?;
                self.apply(word[i - 1], inner, zs[i - 1])
            }
        }
    }
}

pub fn omega_eval(sol: &FiniteSolution, word: &[OmegaSymbol], x: usize, zs: &[usize]) -> Result<usize> {
    Operations::new(sol).eval(word, x, zs)
}

/// Decides between exhaustive evaluation and seeded sampling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Budget {
    /// Exhaustive when the instance space has at most this many points.
    pub exhaustive_limit: u64,
    /// Sampled instances otherwise.
    pub trials: u64,
    pub seed: u64,
}

pub const DEFAULT_SEED: u64 = 0x5e_ed0f_0e9a;

impl Default for Budget {
    fn default() -> Self {
        Budget {
            exhaustive_limit: 10_000_000,
            trials: 100_000,
            seed: DEFAULT_SEED,
        }
    }
}

impl Budget {
    pub fn with_seed(seed: u64) -> Self {
        Budget {
            seed,
            ..Budget::default()
        }
    }
}

fn space_size(radices: &[usize]) -> u64 {
    radices
        .iter()
        .try_fold(1u64, |acc, &r| acc.checked_mul(r as u64))
        .unwrap_or(u64::MAX)
}

/// Points of a mixed-radix space: all of them in lexicographic order when small
/// enough, otherwise `budget.trials` seeded random points.
fn for_each_point(radices: &[usize], budget: &Budget, mut f: impl FnMut(&[usize])) -> bool {
    let size = space_size(radices);
    if radices.contains(&0) {
        return true;
    }
    if size <= budget.exhaustive_limit {
        let mut cur = vec![0usize; radices.len()];
        for _ in 0..size {
            f(&cur);
            for pos in (0..radices.len()).rev() {
                cur[pos] += 1;
                if cur[pos] < radices[pos] {
                    break;
                }
                cur[pos] = 0;
            }
        }
        true
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
        let mut cur = vec![0usize; radices.len()];
        for _ in 0..budget.trials {
            for (c, &r) in cur.iter_mut().zip(radices) {
                *c = rng.gen_range(0..r);
            }
            f(&cur);
        }
        false
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OmegaWitness {
    pub word: OmegaWord,
    pub x: usize,
    /// Second base for independence failures; absent for reductivity failures.
    pub y: Option<usize>,
    pub zs: Vec<usize>,
    /// Values of the two sides that differ.
    pub values: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OmegaVerdict {
    pub holds: bool,
    pub witness: Option<OmegaWitness>,
    /// False when the verdict rests on sampling; a sampled `holds` is not a proof.
    pub exhaustive: bool,
}

/// Word-major search shared by both deciders.
///
/// Each state is a vector of tower values, one entry per tracked base, together
/// with the lexicographically first argument tuple producing it. Vectors whose
/// entries are all equal stay equal under every extension and are dropped.
struct TowerSearch<'a> {
    n: usize,
    alphabet: &'a [OmegaSymbol],
    tables: Vec<&'a [u8]>,
    k: usize,
    /// Track a trailing reference entry that becomes `z_1` on the first step.
    reference: bool,
}

enum Leaf {
    /// Index of the first adjacent pair of bases with different values.
    Split(usize),
    /// Index of the first base disagreeing with the reference (last) entry.
    Reference(usize),
}

impl<'a> TowerSearch<'a> {
    fn run(
        &self,
        word: &mut Vec<usize>,
        states: Vec<(Vec<u8>, Vec<usize>)>,
        leaf: &dyn Fn(&[u8]) -> Option<Leaf>,
    ) -> Option<(Vec<usize>, Vec<u8>, Vec<usize>, Leaf)> {
        if states.is_empty() {
            return None;
        }
        if word.len() == self.k {
            for (vals, zs) in &states {
                if let Some(l) = leaf(vals) {
                    return Some((word.clone(), vals.clone(), zs.clone(), l));
                }
            }
            return None;
        }
        for (si, table) in self.tables.iter().enumerate() {
            let mut next: Vec<(Vec<u8>, Vec<usize>)> = Vec::new();
            let mut seen = std::collections::HashSet::new();
            for (vals, zs) in &states {
                for z in 0..self.n {
                    let nv: Vec<u8> = if word.is_empty() && self.reference {
                        let mut v: Vec<u8> =
                            vals[..self.n].iter().map(|&b| table[b as usize * self.n + z]).collect();
                        v.push(z as u8);
                        v
                    } else {
                        vals.iter().map(|&b| table[b as usize * self.n + z]).collect()
                    };
                    if nv.iter().all(|&e| e == nv[0]) {
                        continue;
                    }
                    if seen.insert(nv.clone()) {
                        let mut nz = zs.clone();
                        nz.push(z);
                        next.push((nv, nz));
                    }
                }
            }
            word.push(si);
            let found = self.run(word, next, leaf);
            word.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }

    fn word(&self, idx: &[usize]) -> OmegaWord {
        idx.iter().map(|&i| self.alphabet[i]).collect()
    }
}

/// k-permutational over `alphabet`: `Ω_k(w, x, zs)` is independent of `x`.
///
/// Witness: the first failing word in lexicographic order (alphabet order),
/// its first failing argument tuple, and the first adjacent bases `x, x+1`
/// with different values.
pub fn is_k_permutational_with(
    ops: &Operations,
    k: usize,
    alphabet: &[OmegaSymbol],
    budget: &Budget,
) -> Result<OmegaVerdict> {
    let n = ops.n();
    let tables = ops.require(alphabet)?;
    if n == 1 {
        return Ok(OmegaVerdict { holds: true, witness: None, exhaustive: true });
    }
    if k == 0 {
        return Ok(OmegaVerdict {
            holds: false,
            witness: Some(OmegaWitness { word: vec![], x: 0, y: Some(1), zs: vec![], values: (0, 1) }),
            exhaustive: true,
        });
    }
    let space = space_size(&[alphabet.len().pow(k as u32), n.pow(k as u32 + 2)]);
    if space <= budget.exhaustive_limit {
        let search = TowerSearch { n, alphabet, tables, k, reference: false };
        let start = vec![((0..n as u8).collect::<Vec<u8>>(), Vec::new())];
        let leaf = |vals: &[u8]| (0..vals.len() - 1).find(|&i| vals[i] != vals[i + 1]).map(Leaf::Split);
        let found = search.run(&mut Vec::new(), start, &leaf);
        let witness = found.map(|(w, vals, zs, l)| {
            let Leaf::Split(i) = l else { unreachable!() };
            OmegaWitness {
                word: search.word(&w),
                x: i,
                y: Some(i + 1),
                zs,
                values: (vals[i] as usize, vals[i + 1] as usize),
            }
        });
        return Ok(OmegaVerdict { holds: witness.is_none(), witness, exhaustive: true });
    }
    let mut radices = vec![alphabet.len(); k];
    radices.extend([n, n]);
    radices.extend(std::iter::repeat_n(n, k));
    let mut witness = None;
    for_each_point(&radices, budget, |p| {
        if witness.is_some() {
            return;
        }
        let word: OmegaWord = p[..k].iter().map(|&i| alphabet[i]).collect();
        let (x, y) = (p[k], p[k + 1]);
        let zs = &p[k + 2..];
        let vx = ops.eval(&word, x, zs).expect("alphabet checked");
        let vy = ops.eval(&word, y, zs).expect("alphabet checked");
        if vx != vy {
            witness = Some(OmegaWitness { word, x, y: Some(y), zs: zs.to_vec(), values: (vx, vy) });
        }
    });
    Ok(OmegaVerdict { holds: witness.is_none(), witness, exhaustive: false })
}

pub fn is_k_permutational(sol: &FiniteSolution, k: usize, alphabet: &[OmegaSymbol]) -> Result<OmegaVerdict> {
    is_k_permutational_with(&Operations::new(sol), k, alphabet, &Budget::default())
}

/// k-reductive (k ≥ 1): `Ω_k(w, x, z_1…z_k) = Ω_{k-1}(w[1..], z_1, z_2…z_k)` over `{σ, τ}`.
pub fn is_k_reductive_with(ops: &Operations, k: usize, budget: &Budget) -> Result<OmegaVerdict> {
    if k == 0 {
        return Err(Error::ReductiveOrderZero);
    }
    let n = ops.n();
    let alphabet = &OmegaSymbol::BASIC[..];
    let tables = ops.require(alphabet)?;
    let space = space_size(&[2usize.pow(k as u32), n.pow(k as u32 + 1)]);
    if space <= budget.exhaustive_limit {
        let search = TowerSearch { n, alphabet, tables, k, reference: true };
        let mut init: Vec<u8> = (0..n as u8).collect();
        // placeholder reference entry, replaced by z_1 on the first step
        init.push(0);
        let start = vec![(init, Vec::new())];
        let leaf = |vals: &[u8]| {
            let r = vals[vals.len() - 1];
            (0..vals.len() - 1).find(|&i| vals[i] != r).map(Leaf::Reference)
        };
        let found = search.run(&mut Vec::new(), start, &leaf);
        let witness = found.map(|(w, vals, zs, l)| {
            let Leaf::Reference(i) = l else { unreachable!() };
            OmegaWitness {
                word: search.word(&w),
                x: i,
                y: None,
                zs,
                values: (vals[i] as usize, vals[n] as usize),
            }
        });
        return Ok(OmegaVerdict { holds: witness.is_none(), witness, exhaustive: true });
    }
    let mut radices = vec![2; k];
    radices.push(n);
    radices.extend(std::iter::repeat_n(n, k));
    let mut witness = None;
    for_each_point(&radices, budget, |p| {
        if witness.is_some() {
            return;
        }
        let word: OmegaWord = p[..k].iter().map(|&i| alphabet[i]).collect();
        let x = p[k];
        let zs = &p[k + 1..];
        let lhs = ops.eval(&word, x, zs).expect("basic symbols");
        let rhs = ops.eval(&word[1..], zs[0], &zs[1..]).expect("basic symbols");
        if lhs != rhs {
            witness = Some(OmegaWitness { word, x, y: None, zs: zs.to_vec(), values: (lhs, rhs) });
        }
    });
    Ok(OmegaVerdict { holds: witness.is_none(), witness, exhaustive: false })
}

pub fn is_k_reductive(sol: &FiniteSolution, k: usize) -> Result<OmegaVerdict> {
    is_k_reductive_with(&Operations::new(sol), k, &Budget::default())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarReport {
    pub holds: bool,
    pub sigma_holds: bool,
    pub tau_holds: bool,
    /// `y_x` with `σ_{y_x}(x) = x`, smallest such, per element.
    pub sigma_fixers: Vec<Option<usize>>,
    /// `z_x` with `τ_{z_x}(x) = x`, smallest such, per element.
    pub tau_fixers: Vec<Option<usize>>,
}

/// Every element is fixed by some σ-translation and by some τ-translation.
pub fn check_star_conditions(sol: &FiniteSolution) -> StarReport {
    let n = sol.n();
    let sigma_fixers: Vec<Option<usize>> = (0..n).map(|x| (0..n).find(|&y| sol.sigma(y, x) == x)).collect();
    let tau_fixers: Vec<Option<usize>> = (0..n).map(|x| (0..n).find(|&z| sol.tau(z, x) == x)).collect();
    let sigma_holds = sigma_fixers.iter().all(Option::is_some);
    let tau_holds = tau_fixers.iter().all(Option::is_some);
    StarReport {
        holds: sigma_holds && tau_holds,
        sigma_holds,
        tau_holds,
        sigma_fixers,
        tau_fixers,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosedForm {
    /// `x ↦ Ω_j(σ,…,σ, x, x,…,x)`
    pub u_inverse: Vec<usize>,
    /// `x ↦ Ω_j(τ,…,τ, x, x,…,x)` when right non-degenerate.
    pub t_inverse: Option<Vec<usize>>,
    /// Composition of each table with `U` (resp. `T`) on both sides.
    pub checks: CheckReport,
}

fn constant_tower(ops: &Operations, s: OmegaSymbol, height: usize) -> Vec<usize> {
    let word = vec![s; height];
    (0..ops.n())
        .map(|x| ops.eval(&word, x, &vec![x; height]).expect("available symbol"))
        .collect()
}

fn inverse_checks(name: &str, diag: &[usize], candidate: &[usize]) -> Vec<Check> {
    let mut left = Check::new(format!("{name}∘{name}^-1 = id"));
    let mut right = Check::new(format!("{name}^-1∘{name} = id"));
    for x in 0..diag.len() {
        left.record(diag[candidate[x]] == x, || vec![x]);
        right.record(candidate[diag[x]] == x, || vec![x]);
    }
    vec![left, right]
}

/// `U⁻¹` as a constant-σ tower: height `k` for k-permutational solutions,
/// height `k-1` for k-reductive ones.
pub fn closed_form_u_inverse(sol: &FiniteSolution, k: usize, reductive: bool) -> Result<ClosedForm> {
    if let Some(row) = (0..sol.n()).find(|&x| !perm::is_permutation(sol.sigma_row(x))) {
        return Err(Error::NotLeftNondegenerate { row });
    }
    let ops = Operations::new(sol);
    let budget = Budget::default();
    let height = if reductive {
        if !is_k_reductive_with(&ops, k, &budget)?.holds {
            return Err(Error::NotKReductive { k });
        }
        k - 1
    } else {
        if !is_k_permutational_with(&ops, k, &OmegaSymbol::BASIC, &budget)?.holds {
            return Err(Error::NotKPermutational { k });
        }
        k
    };
    let diag = crate::diagonals::diagonal_maps(sol);
    let u_inverse = constant_tower(&ops, OmegaSymbol::Sigma, height);
    let mut checks = CheckReport::default();
    for c in inverse_checks("U", diag.u.as_ref().expect("left non-degenerate"), &u_inverse) {
        checks.push(c);
    }
    let t_inverse = diag.t.as_ref().map(|t| {
        let cand = constant_tower(&ops, OmegaSymbol::Tau, height);
        for c in inverse_checks("T", t, &cand) {
            checks.push(c);
        }
        cand
    });
    Ok(ClosedForm { u_inverse, t_inverse, checks })
}

/// Rewriting identities for towers, checked over every available symbol and
/// heights `1..=max_m`.
///
/// * peel first step: `Ω_m(w, x, zs) = Ω_{m-1}(w[1..], Ω_1(w[0], x, z_1), zs[1..])`
/// * split at any height: `Ω_m(w, x, zs) = Ω_{m-s}(w[s..], Ω_s(w[..s], x, zs[..s]), zs[s..])`
/// * inverse diagonal returns the base: `Ω_m(γ…γ, x, γ⁻¹_x(x)…γ⁻¹_x(x)) = x`
/// * inverse first argument drops a level: `Ω_m(γ·w', x, γ⁻¹_x(z_1), z_2…) = Ω_{m-1}(w', z_1, z_2…)`
/// * permutational tower forgets its base: on k-permutational solutions over `{σ, τ}`,
///   `Ω_{k+1}(w, x, zs) = Ω_k(w[1..], y, zs[1..])`
pub fn check_omega_identities(sol: &FiniteSolution, max_m: usize, budget: &Budget) -> CheckReport {
    let ops = Operations::new(sol);
    let n = ops.n();
    let gamma = ops.available();
    let g = gamma.len();
    let mut report = CheckReport::default();

    let mut eq1 = Check::new("peel first step");
    let mut eq4 = Check::new("split at any height");
    for m in 1..=max_m {
        let mut radices = vec![g; m];
        radices.push(n);
        radices.extend(std::iter::repeat_n(n, m));
        for_each_point(&radices, budget, |p| {
            let word: OmegaWord = p[..m].iter().map(|&i| gamma[i]).collect();
            let x = p[m];
            let zs = &p[m + 1..];
            let lhs = ops.eval(&word, x, zs).unwrap();
            let first = ops.eval_recursive(&word[..1], x, &zs[..1]).unwrap();
            let rhs = ops.eval_recursive(&word[1..], first, &zs[1..]).unwrap();
            eq1.record(lhs == rhs, || p.to_vec());
            for s in 0..m {
                let inner = ops.eval_recursive(&word[..s], x, &zs[..s]).unwrap();
                let rhs = ops.eval_recursive(&word[s..], inner, &zs[s..]).unwrap();
                eq4.record(lhs == rhs, || [p.to_vec(), vec![s]].concat());
            }
        });
    }
    report.push(eq1);
    report.push(eq4);

    let invertible: Vec<OmegaSymbol> = gamma.iter().copied().filter(|s| ops.has(s.inverse())).collect();
    let mut short1 = Check::new("inverse diagonal returns the base");
    for &s in &invertible {
        for m in 1..=max_m {
            for x in 0..n {
                let z = ops.apply(s.inverse(), x, x).unwrap();
                let v = ops.eval(&vec![s; m], x, &vec![z; m]).unwrap();
                short1.record(v == x, || vec![s as usize, m, x]);
            }
        }
    }
    report.push(short1);

    let mut short2 = Check::new("inverse first argument drops a level");
    for (si, &s) in invertible.iter().enumerate() {
        for m in 1..=max_m {
            let mut radices = vec![g; m - 1];
            radices.push(n);
            radices.extend(std::iter::repeat_n(n, m));
            for_each_point(&radices, budget, |p| {
                let rest: OmegaWord = p[..m - 1].iter().map(|&i| gamma[i]).collect();
                let x = p[m - 1];
                let zs = &p[m..];
                let mut word = vec![s];
                word.extend(&rest);
                let mut args = zs.to_vec();
                args[0] = ops.apply(s.inverse(), x, zs[0]).unwrap();
                let lhs = ops.eval(&word, x, &args).unwrap();
                let rhs = ops.eval(&rest, zs[0], &zs[1..]).unwrap();
                short2.record(lhs == rhs, || [vec![si], p.to_vec()].concat());
            });
        }
    }
    report.push(short2);

    let mut short3 = Check::new("permutational tower forgets its base");
    for k in 0..max_m {
        let verdict = is_k_permutational_with(&ops, k, &OmegaSymbol::BASIC, budget).unwrap();
        if !(verdict.holds && verdict.exhaustive) {
            continue;
        }
        let mut radices = vec![2; k + 1];
        radices.extend([n, n]);
        radices.extend(std::iter::repeat_n(n, k + 1));
        for_each_point(&radices, budget, |p| {
            let word: OmegaWord = p[..k + 1].iter().map(|&i| OmegaSymbol::BASIC[i]).collect();
            let (x, y) = (p[k + 1], p[k + 2]);
            let zs = &p[k + 3..];
            let lhs = ops.eval(&word, x, zs).unwrap();
            let rhs = ops.eval(&word[1..], y, &zs[1..]).unwrap();
            short3.record(lhs == rhs, || [vec![k], p.to_vec()].concat());
        });
    }
    report.push(short3);
    report
}

/// On a k-reductive solution with inverse operations available:
/// `Ω_k(γ⁽¹⁾⁻¹·w', x, z_1…z_k) = Ω_{k-1}(w', z_1…z_k)` for `γ⁽ⁱ⁾ ∈ {σ, τ}`.
pub fn check_reductive_inverse_identity(ops: &Operations, k: usize, budget: &Budget) -> Result<Check> {
    if k == 0 {
        return Err(Error::ReductiveOrderZero);
    }
    let n = ops.n();
    ops.require(&OmegaSymbol::WITH_INVERSES)?;
    let mut check = Check::new("reductive inverse shortening");
    let mut radices = vec![2; k];
    radices.push(n);
    radices.extend(std::iter::repeat_n(n, k));
    for_each_point(&radices, budget, |p| {
        let mut word: OmegaWord = p[..k].iter().map(|&i| OmegaSymbol::BASIC[i]).collect();
        word[0] = word[0].inverse();
        let x = p[k];
        let zs = &p[k + 1..];
        let lhs = ops.eval(&word, x, zs).unwrap();
        let rhs = ops.eval(&word[1..], zs[0], &zs[1..]).unwrap();
        check.record(lhs == rhs, || p.to_vec());
    });
    Ok(check)
}
