//! Retract relations, quotient solutions and multipermutation levels.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::omega::{OmegaSymbol, Operations};
use crate::perm;
use crate::report::{Check, CheckReport};
use crate::solution::{invert, FiniteSolution, Tables};

/// An equivalence relation on `0..n`, each element mapped to the minimum of its block.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Partition {
    pub n: usize,
    pub block_of: Vec<usize>,
}

impl Partition {
    /// Elements with equal keys share a block.
    pub fn from_key<K: PartialEq>(n: usize, key: impl Fn(usize) -> K) -> Self {
        let keys: Vec<K> = (0..n).map(key).collect();
        let block_of = (0..n)
            .map(|x| (0..=x).find(|&y| keys[y] == keys[x]).expect("x matches itself"))
            .collect();
        Partition { n, block_of }
    }

    pub fn discrete(n: usize) -> Self {
        Partition { n, block_of: (0..n).collect() }
    }

    pub fn same(&self, x: usize, y: usize) -> bool {
        self.block_of[x] == self.block_of[y]
    }

    /// Block representatives in increasing order.
    pub fn representatives(&self) -> Vec<usize> {
        (0..self.n).filter(|&x| self.block_of[x] == x).collect()
    }

    pub fn num_blocks(&self) -> usize {
        self.representatives().len()
    }

    pub fn is_discrete(&self) -> bool {
        self.num_blocks() == self.n
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        self.representatives()
            .into_iter()
            .map(|r| (0..self.n).filter(|&x| self.block_of[x] == r).collect())
            .collect()
    }

    /// Position of each element's block among the sorted representatives.
    pub fn block_index(&self) -> Vec<usize> {
        let reps = self.representatives();
        self.block_of
            .iter()
            .map(|b| reps.binary_search(b).expect("representative"))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RetractKind {
    /// `σ_x = σ_y` and `τ_x = τ_y`
    Forward,
    /// `σ̂_x = σ̂_y` and `τ̂_x = τ̂_y`
    Inverse,
    /// `x·z = y·z` and `x:z = y:z` for all `z`
    Colon,
}

pub fn retract_relation(sol: &FiniteSolution, kind: RetractKind) -> Result<Partition> {
    let n = sol.n();
    match kind {
        RetractKind::Forward => Ok(Partition::from_key(n, |x| (sol.sigma_row(x), sol.tau_row(x)))),
        RetractKind::Inverse => {
            let inv = invert(sol)?;
            Ok(Partition::from_key(n, |x| {
                (inv.sigma_row(x).to_vec(), inv.tau_row(x).to_vec())
            }))
        }
        RetractKind::Colon => {
            if let Some(row) = (0..n).find(|&x| !perm::is_permutation(sol.sigma_row(x))) {
                return Err(Error::NotLeftNondegenerate { row });
            }
            let sigma_inv: Vec<Vec<u8>> = (0..n).map(|z| perm::inverse(sol.sigma_row(z))).collect();
            Ok(Partition::from_key(n, |x| {
                let colon: Vec<usize> = (0..n).map(|z| sol.tau(sigma_inv[z][x] as usize, z)).collect();
                (sol.sigma_row(x), colon)
            }))
        }
    }
}

/// Lexicographically first `(x₁, x₂, y₁, y₂)` with `x₁ ~ x₂`, `y₁ ~ y₂` but
/// `γ_{x₁}(y₁) ≁ γ_{x₂}(y₂)`, or `None` when `p` is compatible with `γ`.
pub fn check_compatibility(sol: &FiniteSolution, p: &Partition, op: OmegaSymbol) -> Result<Option<[usize; 4]>> {
    let ops = Operations::new(sol);
    compatibility_with(&ops, p, op)
}

fn compatibility_with(ops: &Operations, p: &Partition, op: OmegaSymbol) -> Result<Option<[usize; 4]>> {
    let n = ops.n();
    let table = ops.table(op)?;
    for x1 in 0..n {
        for x2 in (0..n).filter(|&x2| p.same(x1, x2)) {
            for y1 in 0..n {
                for y2 in (0..n).filter(|&y2| p.same(y1, y2)) {
                    if !p.same(table[x1 * n + y1] as usize, table[x2 * n + y2] as usize) {
                        return Ok(Some([x1, x2, y1, y2]));
                    }
                }
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RetractResult {
    pub quotient: FiniteSolution,
    /// Carrier element to quotient element.
    pub projection: Vec<usize>,
}

/// Quotient of `sol` by a partition compatible with σ and τ, blocks re-indexed
/// by increasing representative.
pub fn quotient(sol: &FiniteSolution, p: &Partition) -> Result<RetractResult> {
    let ops = Operations::new(sol);
    for op in OmegaSymbol::BASIC {
        if let Some(witness) = compatibility_with(&ops, p, op)? {
            return Err(Error::CompatibilityError { op, witness });
        }
    }
    let reps = p.representatives();
    let projection = p.block_index();
    let m = reps.len();
    let mut sigma = Vec::with_capacity(m * m);
    let mut tau = Vec::with_capacity(m * m);
    for &a in &reps {
        for &b in &reps {
            sigma.push(projection[sol.sigma(a, b)] as u8);
            tau.push(projection[sol.tau(a, b)] as u8);
        }
    }
    let quotient = FiniteSolution::new(Tables::from_flat(m, sigma, tau)?)?;
    Ok(RetractResult { quotient, projection })
}

/// `Ret(X)`, the quotient by the forward relation.
pub fn retract(sol: &FiniteSolution) -> Result<RetractResult> {
    quotient(sol, &retract_relation(sol, RetractKind::Forward)?)
}

pub fn is_irretractable(sol: &FiniteSolution) -> bool {
    Partition::from_key(sol.n(), |x| (sol.sigma_row(x), sol.tau_row(x))).is_discrete()
}

/// `Ret⁰(X), Ret¹(X), …` up to and including the first irretractable iterate.
pub fn retract_chain(sol: &FiniteSolution) -> Result<Vec<FiniteSolution>> {
    let mut chain = vec![sol.clone()];
    loop {
        let cur = chain.last().expect("non-empty");
        if is_irretractable(cur) {
            return Ok(chain);
        }
        let next = retract(cur)?.quotient;
        chain.push(next);
    }
}

fn require_nondegenerate(sol: &FiniteSolution) -> Result<()> {
    if sol.is_nondegenerate() {
        Ok(())
    } else {
        Err(Error::NotNondegenerate)
    }
}

/// Least `k` with `|Ret^k(X)| = 1`.
pub fn mpl(sol: &FiniteSolution) -> Result<usize> {
    require_nondegenerate(sol)?;
    let chain = retract_chain(sol)?;
    let last = chain.last().expect("non-empty");
    if last.n() == 1 {
        Ok(chain.len() - 1)
    } else {
        Err(Error::NotMultipermutation { steps: chain.len() - 1, size: last.n() })
    }
}

/// Least `k` with `Ret^k(X)` trivial (every row the identity).
pub fn mpl_prime(sol: &FiniteSolution) -> Result<usize> {
    require_nondegenerate(sol)?;
    let chain = retract_chain(sol)?;
    chain
        .iter()
        .position(|s| s.is_trivial())
        .ok_or_else(|| Error::NotApplicable { size: chain.last().expect("non-empty").n() })
}

fn partition_check(name: &str, a: &Partition, b: &Partition) -> Check {
    let mut c = Check::new(name);
    for x in 0..a.n {
        for y in x + 1..a.n {
            c.record(a.same(x, y) == b.same(x, y), || vec![x, y]);
        }
    }
    c
}

/// Forward, colon and inverse relations of a non-degenerate solution agree.
pub fn check_relation_coincidence(sol: &FiniteSolution) -> Result<CheckReport> {
    require_nondegenerate(sol)?;
    let forward = retract_relation(sol, RetractKind::Forward)?;
    let colon = retract_relation(sol, RetractKind::Colon)?;
    let inverse = retract_relation(sol, RetractKind::Inverse)?;
    let mut report = CheckReport::default();
    report.push(partition_check("~ = ~:", &forward, &colon));
    report.push(partition_check("~ = ~hat", &forward, &inverse));
    Ok(report)
}

/// `Ret(X)` and `Ret(X⁻¹)` are mutually inverse once their block carriers are
/// identified, and `mpl(X) = mpl(X⁻¹)`.
pub fn check_retract_duality(sol: &FiniteSolution) -> Result<CheckReport> {
    require_nondegenerate(sol)?;
    let inv = invert(sol)?;
    let a = retract(sol)?;
    let b = retract(&inv)?;
    let mut report = CheckReport::default();

    // block i of Ret(X) corresponds to block phi[i] of Ret(X⁻¹)
    let m = a.quotient.n();
    let mut phi: Vec<Option<usize>> = vec![None; m];
    let mut carrier = Check::new("block carriers identified");
    for x in 0..sol.n() {
        let (i, j) = (a.projection[x], b.projection[x]);
        let ok = match phi[i] {
            None => {
                phi[i] = Some(j);
                true
            }
            Some(prev) => prev == j,
        };
        carrier.record(ok, || vec![x]);
    }
    let phi: Vec<u8> = phi.into_iter().map(|v| v.unwrap_or(0) as u8).collect();
    carrier.record(m == b.quotient.n() && perm::is_permutation(&phi), Vec::new);
    let identified = carrier.holds();
    report.push(carrier);

    let mut mutual = Check::new("Ret(X) and Ret(X^-1) mutually inverse");
    if identified {
        let ret_inv = invert(&a.quotient)?;
        mutual.record(ret_inv.relabel(&phi).tables() == b.quotient.tables(), Vec::new);
    } else {
        mutual.record(false, Vec::new);
    }
    report.push(mutual);

    let mut levels = Check::new("mpl(X) = mpl(X^-1)");
    let (la, lb) = (mpl(sol), mpl(&inv));
    levels.record(la == lb, || vec![la.clone().unwrap_or(usize::MAX), lb.clone().unwrap_or(usize::MAX)]);
    report.push(levels);
    Ok(report)
}

/// On a regular solution the colon relation is compatible with σ, σ⁻¹, σ̂,
/// σ̂⁻¹, τ and τ̂.
pub fn check_colon_compatibility(sol: &FiniteSolution) -> Result<CheckReport> {
    if !sol.is_left_nondegenerate() {
        let row = (0..sol.n()).find(|&x| !perm::is_permutation(sol.sigma_row(x))).unwrap_or(0);
        return Err(Error::NotLeftNondegenerate { row });
    }
    invert(sol)?;
    let p = retract_relation(sol, RetractKind::Colon)?;
    let ops = Operations::new(sol);
    let mut report = CheckReport::default();
    use OmegaSymbol::*;
    for op in [Sigma, SigmaInv, SigmaHat, SigmaHatInv, Tau, TauHat] {
        let mut c = Check::new(format!("~: compatible with {op}"));
        if ops.has(op) {
            let w = compatibility_with(&ops, &p, op)?;
            c.record(w.is_none(), || w.unwrap().to_vec());
        }
        report.push(c);
    }
    Ok(report)
}
