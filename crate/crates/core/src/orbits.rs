//! Orbits of the group generated by all `σ_x` and `τ_x`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::omega::{is_k_permutational_with, is_k_reductive_with, Budget, OmegaSymbol, Operations};
use crate::report::{Check, CheckReport};
use crate::retract::Partition;
use crate::solution::{FiniteSolution, Tables};

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Keeps the smaller root so every root is its block minimum.
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubOrbit {
    /// Parent elements of this orbit in increasing order; index `i` of the
    /// restriction corresponds to `elements[i]`.
    pub elements: Vec<usize>,
    pub restriction: FiniteSolution,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitDecomposition {
    pub partition: Partition,
    pub suborbits: Vec<SubOrbit>,
}

fn orbit_partition(sol: &Tables) -> Partition {
    let n = sol.n();
    let mut uf = UnionFind::new(n);
    // For bijections an edge and its reverse give the same components, so the
    // inverse maps need no separate pass.
    for y in 0..n {
        for x in 0..n {
            uf.union(x, sol.sigma(y, x));
            uf.union(x, sol.tau(y, x));
        }
    }
    let block_of = (0..n).map(|x| uf.find(x)).collect();
    Partition { n, block_of }
}

/// Restriction of `sol` to a subset closed under every σ- and τ-row.
pub fn restrict(sol: &FiniteSolution, elements: &[usize]) -> Result<FiniteSolution> {
    let m = elements.len();
    let mut index = vec![usize::MAX; sol.n()];
    for (i, &e) in elements.iter().enumerate() {
        index[e] = i;
    }
    let mut sigma = Vec::with_capacity(m * m);
    let mut tau = Vec::with_capacity(m * m);
    for &a in elements {
        for &b in elements {
            let (s, t) = (index[sol.sigma(a, b)], index[sol.tau(a, b)]);
            if s == usize::MAX || t == usize::MAX {
                return Err(Error::InvalidSubset { element: if s == usize::MAX { sol.sigma(a, b) } else { sol.tau(a, b) } });
            }
            sigma.push(s as u8);
            tau.push(t as u8);
        }
    }
    FiniteSolution::new(Tables::from_flat(m, sigma, tau)?)
}

pub fn orbit_decomposition(sol: &FiniteSolution) -> Result<OrbitDecomposition> {
    if !sol.is_nondegenerate() {
        return Err(Error::NotNondegenerate);
    }
    let partition = orbit_partition(sol);
    let suborbits = partition
        .blocks()
        .into_iter()
        .map(|elements| {
            let restriction = restrict(sol, &elements)?;
            Ok(SubOrbit { elements, restriction })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(OrbitDecomposition { partition, suborbits })
}

pub fn is_decomposable(sol: &FiniteSolution) -> Result<bool> {
    if !sol.is_nondegenerate() {
        return Err(Error::NotNondegenerate);
    }
    Ok(sol.n() > 1 && orbit_partition(sol).num_blocks() > 1)
}

/// Every orbit restriction of a k-reductive solution is (k-1)-permutational.
pub fn check_orbit_theorem(sol: &FiniteSolution, k: usize) -> Result<CheckReport> {
    check_orbit_theorem_with(sol, k, &Budget::default())
}

pub fn check_orbit_theorem_with(sol: &FiniteSolution, k: usize, budget: &Budget) -> Result<CheckReport> {
    let decomposition = orbit_decomposition(sol)?;
    if !is_k_reductive_with(&Operations::new(sol), k, budget)?.holds {
        return Err(Error::NotKReductive { k });
    }
    let mut check = Check::new(format!("orbits are {}-permutational", k - 1));
    for (i, orbit) in decomposition.suborbits.iter().enumerate() {
        let ops = Operations::new(&orbit.restriction);
        let v = is_k_permutational_with(&ops, k - 1, &OmegaSymbol::BASIC, budget)?;
        check.record(v.holds, || vec![i]);
    }
    let mut report = CheckReport::default();
    report.push(check);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projection_has_singleton_orbits() {
        let s = FiniteSolution::projection(2).unwrap();
        let d = orbit_decomposition(&s).unwrap();
        assert_eq!(d.partition.blocks(), vec![vec![0], vec![1]]);
        assert!(d.suborbits.iter().all(|o| o.restriction == FiniteSolution::singleton()));
        assert!(is_decomposable(&s).unwrap());
        assert!(check_orbit_theorem(&s, 1).unwrap().all_hold());
    }

    #[test]
    fn lyubashenko_cycle_is_transitive() {
        let s = FiniteSolution::lyubashenko(&[1, 2, 0], &[1, 2, 0]).unwrap();
        let d = orbit_decomposition(&s).unwrap();
        assert_eq!(d.partition.num_blocks(), 1);
        assert_eq!(d.suborbits[0].restriction, s);
        assert!(!is_decomposable(&s).unwrap());
        assert_eq!(check_orbit_theorem(&s, 1), Err(Error::NotKReductive { k: 1 }));
        assert!(check_orbit_theorem(&s, 2).unwrap().all_hold());
    }

    #[test]
    fn disjoint_union_splits() {
        let one = FiniteSolution::singleton();
        let u = FiniteSolution::disjoint_union(&one, &one).unwrap();
        assert_eq!(orbit_decomposition(&u).unwrap().partition.num_blocks(), 2);
    }

    #[test]
    fn restriction_reindexes_in_parent_order() {
        let a = FiniteSolution::lyubashenko(&[1, 0], &[1, 0]).unwrap();
        let u = FiniteSolution::disjoint_union(&FiniteSolution::singleton(), &a).unwrap();
        let d = orbit_decomposition(&u).unwrap();
        assert_eq!(d.suborbits[1].elements, vec![1, 2]);
        assert_eq!(d.suborbits[1].restriction, a);
    }

    #[test]
    fn singleton_is_indecomposable() {
        assert!(!is_decomposable(&FiniteSolution::singleton()).unwrap());
    }
}
