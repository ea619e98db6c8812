//! The finite-solution data model.
//!
//! A solution on the carrier `{0, …, n-1}` is stored as two dense `n×n`
//! tables, both indexed acting-subscript first:
//!
//! * `sigma[x][y] = σ_x(y)`
//! * `tau[y][x]   = τ_y(x)`
//!
//! so that `r(x, y) = (σ_x(y), τ_y(x))` and "row is a permutation" is the
//! non-degeneracy test on either side.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Deref;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::perm;
use crate::report::{Check, CheckReport};

/// Largest carrier accepted by the exhaustive relabeling routines.
pub const CANONICAL_LIMIT: usize = 8;

/// A pair of well-formed `n×n` tables, not yet known to satisfy the braid relation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tables {
    n: usize,
    sigma: Vec<u8>,
    tau: Vec<u8>,
}

impl Tables {
    pub fn from_flat(n: usize, sigma: Vec<u8>, tau: Vec<u8>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyCarrier);
        }
        if n > u8::MAX as usize {
            return Err(Error::SizeTooLarge {
                n,
                limit: u8::MAX as usize,
            });
        }
        for (name, table) in [("sigma", &sigma), ("tau", &tau)] {
            if table.len() != n * n {
                return Err(Error::ShapeMismatch {
                    table: name,
                    expected: n,
                });
            }
            if let Some(pos) = table.iter().position(|&v| v as usize >= n) {
                return Err(Error::MalformedTable {
                    table: name,
                    n,
                    row: pos / n,
                    col: pos % n,
                    value: table[pos] as usize,
                });
            }
        }
        Ok(Tables { n, sigma, tau })
    }

    pub fn from_rows(sigma: &[Vec<usize>], tau: &[Vec<usize>]) -> Result<Self> {
        let n = sigma.len();
        let sigma = flatten("sigma", n, sigma)?;
        let tau = flatten("tau", n, tau)?;
        Tables::from_flat(n, sigma, tau)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// σ_x(y)
    #[inline]
    pub fn sigma(&self, x: usize, y: usize) -> usize {
        self.sigma[x * self.n + y] as usize
    }

    /// τ_y(x)
    #[inline]
    pub fn tau(&self, y: usize, x: usize) -> usize {
        self.tau[y * self.n + x] as usize
    }

    #[inline]
    pub fn r(&self, x: usize, y: usize) -> (usize, usize) {
        (self.sigma(x, y), self.tau(y, x))
    }

    pub fn sigma_row(&self, x: usize) -> &[u8] {
        &self.sigma[x * self.n..(x + 1) * self.n]
    }

    pub fn tau_row(&self, y: usize) -> &[u8] {
        &self.tau[y * self.n..(y + 1) * self.n]
    }

    pub fn sigma_flat(&self) -> &[u8] {
        &self.sigma
    }

    pub fn tau_flat(&self) -> &[u8] {
        &self.tau
    }

    pub fn sigma_rows(&self) -> Vec<Vec<usize>> {
        rows(self.n, &self.sigma)
    }

    pub fn tau_rows(&self) -> Vec<Vec<usize>> {
        rows(self.n, &self.tau)
    }

    pub fn is_left_nondegenerate(&self) -> bool {
        (0..self.n).all(|x| perm::is_permutation(self.sigma_row(x)))
    }

    pub fn is_right_nondegenerate(&self) -> bool {
        (0..self.n).all(|y| perm::is_permutation(self.tau_row(y)))
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.is_left_nondegenerate() && self.is_right_nondegenerate()
    }

    pub fn is_bijective(&self) -> bool {
        self.r_collision().is_none()
    }

    pub fn is_involutive(&self) -> bool {
        (0..self.n).all(|x| {
            (0..self.n).all(|y| {
                let (u, v) = self.r(x, y);
                self.r(u, v) == (x, y)
            })
        })
    }

    pub fn is_square_free(&self) -> bool {
        (0..self.n).all(|x| self.r(x, x) == (x, x))
    }

    /// All σ- and τ-rows are the identity (a projection solution).
    pub fn is_trivial(&self) -> bool {
        (0..self.n).all(|x| perm::is_identity(self.sigma_row(x)) && perm::is_identity(self.tau_row(x)))
    }

    /// σ_y σ_x = σ_{σ_y(x)} σ_y and τ_y τ_x = τ_{τ_y(x)} τ_y for all x, y.
    pub fn is_distributive(&self) -> bool {
        let n = self.n;
        for x in 0..n {
            for y in 0..n {
                let sy_x = self.sigma(y, x);
                let ty_x = self.tau(y, x);
                for z in 0..n {
                    if self.sigma(y, self.sigma(x, z)) != self.sigma(sy_x, self.sigma(y, z)) {
                        return false;
                    }
                    if self.tau(y, self.tau(x, z)) != self.tau(ty_x, self.tau(y, z)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// First pair of distinct inputs (in lexicographic order of the earlier one)
    /// that `r` sends to the same image.
    pub fn r_collision(&self) -> Option<((usize, usize), (usize, usize), (usize, usize))> {
        let n = self.n;
        let mut seen: Vec<Option<(usize, usize)>> = vec![None; n * n];
        let mut best: Option<((usize, usize), (usize, usize), (usize, usize))> = None;
        for x in 0..n {
            for y in 0..n {
                let (u, v) = self.r(x, y);
                match seen[u * n + v] {
                    None => seen[u * n + v] = Some((x, y)),
                    Some(first) => {
                        let cand = (first, (x, y), (u, v));
                        if best.is_none_or(|b| (cand.0, cand.1) < (b.0, b.1)) {
                            best = Some(cand);
                        }
                    }
                }
            }
        }
        best
    }

    /// Relabel along the bijection `pi`: the result satisfies
    /// `σ'_{π(x)}(π(y)) = π(σ_x(y))` and likewise for τ.
    pub fn relabel(&self, pi: &[u8]) -> Tables {
        let n = self.n;
        let mut sigma = vec![0u8; n * n];
        let mut tau = vec![0u8; n * n];
        for x in 0..n {
            let px = pi[x] as usize;
            for y in 0..n {
                let py = pi[y] as usize;
                sigma[px * n + py] = pi[self.sigma(x, y)];
                tau[px * n + py] = pi[self.tau(x, y)];
            }
        }
        Tables { n, sigma, tau }
    }
}

fn flatten(name: &'static str, n: usize, table: &[Vec<usize>]) -> Result<Vec<u8>> {
    if table.len() != n {
        return Err(Error::ShapeMismatch { table: name, expected: n });
    }
    let mut out = Vec::with_capacity(n * n);
    for (row, entries) in table.iter().enumerate() {
        if entries.len() != n {
            return Err(Error::ShapeMismatch { table: name, expected: n });
        }
        for (col, &value) in entries.iter().enumerate() {
            if value >= n {
                return Err(Error::MalformedTable {
                    table: name,
                    n,
                    row,
                    col,
                    value,
                });
            }
            out.push(value as u8);
        }
    }
    Ok(out)
}

fn rows(n: usize, flat: &[u8]) -> Vec<Vec<usize>> {
    flat.chunks(n)
        .map(|r| r.iter().map(|&v| v as usize).collect())
        .collect()
}

impl fmt::Debug for Tables {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Tables")
            .field("n", &self.n)
            .field("sigma", &self.sigma_rows())
            .field("tau", &self.tau_rows())
            .finish()
    }
}

impl Serialize for Tables {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Tables", 3)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("sigma", &self.sigma_rows())?;
        s.serialize_field("tau", &self.tau_rows())?;
        s.end()
    }
}

/// Tables known to satisfy the braid relation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct FiniteSolution(Tables);

impl Deref for FiniteSolution {
    type Target = Tables;

    fn deref(&self) -> &Tables {
        &self.0
    }
}

impl fmt::Debug for FiniteSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FiniteSolution {
    pub fn new(tables: Tables) -> Result<Self> {
        let violations = validate_braid(&tables);
        match violations.first() {
            None => Ok(FiniteSolution(tables)),
            Some(&first) => Err(Error::BraidViolation {
                count: violations.len(),
                first,
            }),
        }
    }

    pub fn from_rows(sigma: &[Vec<usize>], tau: &[Vec<usize>]) -> Result<Self> {
        FiniteSolution::new(Tables::from_rows(sigma, tau)?)
    }

    /// Wrap tables the caller has already checked.
    pub(crate) fn trusted(tables: Tables) -> Self {
        debug_assert!(validate_braid(&tables).is_empty());
        FiniteSolution(tables)
    }

    pub fn tables(&self) -> &Tables {
        &self.0
    }

    pub fn into_tables(self) -> Tables {
        self.0
    }

    pub fn singleton() -> Self {
        FiniteSolution(Tables {
            n: 1,
            sigma: vec![0],
            tau: vec![0],
        })
    }

    /// σ_x = τ_x = id for every x.
    pub fn projection(n: usize) -> Result<Self> {
        let id = perm::identity(n);
        let flat: Vec<u8> = id.iter().cycle().take(n * n).copied().collect();
        Ok(FiniteSolution(Tables::from_flat(n, flat.clone(), flat)?))
    }

    /// Constant families σ_x = f, τ_y = g. Braid-valid exactly when `f` and `g` commute
    /// (for bijections); validated like any other table pair.
    pub fn lyubashenko(f: &[usize], g: &[usize]) -> Result<Self> {
        let n = f.len();
        let sigma: Vec<Vec<usize>> = vec![f.to_vec(); n];
        let tau: Vec<Vec<usize>> = vec![g.to_vec(); n];
        FiniteSolution::from_rows(&sigma, &tau)
    }

    /// Disjoint union of two solutions; cross pairs are swapped, `r(x, y) = (y, x)`.
    pub fn disjoint_union(a: &FiniteSolution, b: &FiniteSolution) -> Result<Self> {
        let (na, nb) = (a.n(), b.n());
        let n = na + nb;
        let mut sigma = vec![0u8; n * n];
        let mut tau = vec![0u8; n * n];
        for x in 0..n {
            for y in 0..n {
                let (sv, tv) = match (x < na, y < na) {
                    (true, true) => (a.sigma(x, y), a.tau(x, y)),
                    (false, false) => (b.sigma(x - na, y - na) + na, b.tau(x - na, y - na) + na),
                    _ => (y, y),
                };
                sigma[x * n + y] = sv as u8;
                tau[x * n + y] = tv as u8;
            }
        }
        FiniteSolution::new(Tables::from_flat(n, sigma, tau)?)
    }

    pub fn relabel(&self, pi: &[u8]) -> FiniteSolution {
        FiniteSolution(self.0.relabel(pi))
    }
}

/// Left side `(r×id)(id×r)(r×id)` of the braid relation, applied right to left.
fn braid_lhs(t: &Tables, x: usize, y: usize, z: usize) -> [usize; 3] {
    // r12
    let (a, b) = t.r(x, y);
    // r23
    let (b, c) = t.r(b, z);
    // r12
    let (a, b) = t.r(a, b);
    [a, b, c]
}

/// Right side `(id×r)(r×id)(id×r)`.
fn braid_rhs(t: &Tables, x: usize, y: usize, z: usize) -> [usize; 3] {
    let (b, c) = t.r(y, z);
    let (a, b) = t.r(x, b);
    let (b, c) = t.r(b, c);
    [a, b, c]
}

/// The three component identities on one triple:
///
/// * σ_x σ_y = σ_{σ_x(y)} σ_{τ_y(x)}
/// * τ_{σ_{τ_y(x)}(z)} σ_x(y) = σ_{τ_{σ_y(z)}(x)} τ_z(y)
/// * τ_z τ_y = τ_{τ_z(y)} τ_{σ_y(z)}
pub fn component_identities(t: &Tables, x: usize, y: usize, z: usize) -> [bool; 3] {
    let first = t.sigma(x, t.sigma(y, z)) == t.sigma(t.sigma(x, y), t.sigma(t.tau(y, x), z));
    let second = t.tau(t.sigma(t.tau(y, x), z), t.sigma(x, y))
        == t.sigma(t.tau(t.sigma(y, z), x), t.tau(z, y));
    let third = t.tau(z, t.tau(y, x)) == t.tau(t.tau(z, y), t.tau(t.sigma(y, z), x));
    [first, second, third]
}

/// Every triple on which the braid relation fails, in lexicographic order.
///
/// Each triple is evaluated twice, by composing `r` directly and through the
/// three component identities; the two routes must agree.
pub fn validate_braid(t: &Tables) -> Vec<[usize; 3]> {
    let n = t.n;
    let mut out = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let direct = braid_lhs(t, x, y, z) == braid_rhs(t, x, y, z);
                let by_components = component_identities(t, x, y, z).iter().all(|&b| b);
                assert_eq!(
                    direct, by_components,
                    "braid evaluation routes disagree on ({x}, {y}, {z})"
                );
                if !direct {
                    out.push([x, y, z]);
                }
            }
        }
    }
    out
}

pub fn validate_braid_rows(sigma: &[Vec<usize>], tau: &[Vec<usize>]) -> Result<Vec<[usize; 3]>> {
    Ok(validate_braid(&Tables::from_rows(sigma, tau)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    Braid,
    LeftNondegenerate,
    RightNondegenerate,
    Nondegenerate,
    Bijective,
    Involutive,
    SquareFree,
}

impl Property {
    /// Replay a witness against the tables; true when it exhibits the violation.
    ///
    /// Witness shapes: braid `[x,y,z]`; left `[x,y1,y2]`; right `[y,x1,x2]`;
    /// nondegenerate `[side,row,a,b]` with side 0 = σ, 1 = τ; bijective
    /// `[x1,y1,x2,y2]`; involutive `[x,y]`; square-free `[x]`.
    pub fn replay(self, t: &Tables, w: &[usize]) -> bool {
        let elements = if self == Property::Nondegenerate { w.get(1..).unwrap_or(&[]) } else { w };
        if elements.iter().any(|&e| e >= t.n()) {
            return false;
        }
        match (self, w) {
            (Property::Braid, &[x, y, z]) => braid_lhs(t, x, y, z) != braid_rhs(t, x, y, z),
            (Property::LeftNondegenerate, &[x, a, b]) => a != b && t.sigma(x, a) == t.sigma(x, b),
            (Property::RightNondegenerate, &[y, a, b]) => a != b && t.tau(y, a) == t.tau(y, b),
            (Property::Nondegenerate, &[0, row, a, b]) => {
                Property::LeftNondegenerate.replay(t, &[row, a, b])
            }
            (Property::Nondegenerate, &[1, row, a, b]) => {
                Property::RightNondegenerate.replay(t, &[row, a, b])
            }
            (Property::Bijective, &[x1, y1, x2, y2]) => {
                (x1, y1) != (x2, y2) && t.r(x1, y1) == t.r(x2, y2)
            }
            (Property::Involutive, &[x, y]) => {
                let (u, v) = t.r(x, y);
                t.r(u, v) != (x, y)
            }
            (Property::SquareFree, &[x]) => t.r(x, x) != (x, x),
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub braid_ok: bool,
    pub left_nondegenerate: bool,
    pub right_nondegenerate: bool,
    pub nondegenerate: bool,
    pub bijective: bool,
    pub involutive: bool,
    pub square_free: bool,
    /// One counterexample per false flag.
    pub witnesses: BTreeMap<Property, Vec<usize>>,
}

impl PropertyReport {
    pub fn flag(&self, p: Property) -> bool {
        match p {
            Property::Braid => self.braid_ok,
            Property::LeftNondegenerate => self.left_nondegenerate,
            Property::RightNondegenerate => self.right_nondegenerate,
            Property::Nondegenerate => self.nondegenerate,
            Property::Bijective => self.bijective,
            Property::Involutive => self.involutive,
            Property::SquareFree => self.square_free,
        }
    }
}

/// Evaluate every elementary property by its definition.
pub fn properties(t: &Tables) -> PropertyReport {
    let n = t.n();
    let mut witnesses = BTreeMap::new();

    if let Some(&[x, y, z]) = validate_braid(t).first() {
        witnesses.insert(Property::Braid, vec![x, y, z]);
    }
    let left = (0..n).find_map(|x| perm::first_collision(t.sigma_row(x)).map(|(a, b)| vec![x, a, b]));
    let right = (0..n).find_map(|y| perm::first_collision(t.tau_row(y)).map(|(a, b)| vec![y, a, b]));
    if let Some(w) = &left {
        witnesses.insert(Property::LeftNondegenerate, w.clone());
        witnesses.insert(Property::Nondegenerate, [vec![0], w.clone()].concat());
    } else if let Some(w) = &right {
        witnesses.insert(Property::Nondegenerate, [vec![1], w.clone()].concat());
    }
    if let Some(w) = &right {
        witnesses.insert(Property::RightNondegenerate, w.clone());
    }
    if let Some(((x1, y1), (x2, y2), _)) = t.r_collision() {
        witnesses.insert(Property::Bijective, vec![x1, y1, x2, y2]);
    }
    let non_involutive = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .find(|&(x, y)| {
            let (u, v) = t.r(x, y);
            t.r(u, v) != (x, y)
        });
    if let Some((x, y)) = non_involutive {
        witnesses.insert(Property::Involutive, vec![x, y]);
    }
    if let Some(x) = (0..n).find(|&x| t.r(x, x) != (x, x)) {
        witnesses.insert(Property::SquareFree, vec![x]);
    }

    let holds = |p| !witnesses.contains_key(&p);
    PropertyReport {
        braid_ok: holds(Property::Braid),
        left_nondegenerate: holds(Property::LeftNondegenerate),
        right_nondegenerate: holds(Property::RightNondegenerate),
        nondegenerate: holds(Property::Nondegenerate),
        bijective: holds(Property::Bijective),
        involutive: holds(Property::Involutive),
        square_free: holds(Property::SquareFree),
        witnesses,
    }
}

/// The inverse solution `(σ̂, τ̂)` with `r⁻¹(u, v) = (σ̂_u(v), τ̂_v(u))`.
pub fn invert(sol: &FiniteSolution) -> Result<FiniteSolution> {
    if let Some((first, second, image)) = sol.r_collision() {
        return Err(Error::NotBijective { first, second, image });
    }
    let n = sol.n();
    let mut sigma = vec![0u8; n * n];
    let mut tau = vec![0u8; n * n];
    for x in 0..n {
        for y in 0..n {
            let (u, v) = sol.r(x, y);
            sigma[u * n + v] = x as u8;
            tau[v * n + u] = y as u8;
        }
    }
    let inv = FiniteSolution::trusted(Tables::from_flat(n, sigma, tau)?);
    debug_assert!(inverse_identities(sol, &inv).all_hold());
    Ok(inv)
}

/// The four identities linking a bijective solution with its inverse, plus
/// `σ̂_x⁻¹(y) = τ_{σ_y⁻¹(x)}(y)` when the solution is left non-degenerate.
pub fn inverse_identities(sol: &Tables, inv: &Tables) -> CheckReport {
    let n = sol.n();
    let mut rr1 = Check::new("rr1: sigma_{sigmahat_x(y)} tauhat_y(x) = x");
    let mut rr2 = Check::new("rr2: tau_{tauhat_y(x)} sigmahat_x(y) = y");
    let mut rr3 = Check::new("rr3: sigmahat_{sigma_x(y)} tau_y(x) = x");
    let mut rr4 = Check::new("rr4: tauhat_{tau_y(x)} sigma_x(y) = y");
    for x in 0..n {
        for y in 0..n {
            rr1.record(sol.sigma(inv.sigma(x, y), inv.tau(y, x)) == x, || vec![x, y]);
            rr2.record(sol.tau(inv.tau(y, x), inv.sigma(x, y)) == y, || vec![x, y]);
            rr3.record(inv.sigma(sol.sigma(x, y), sol.tau(y, x)) == x, || vec![x, y]);
            rr4.record(inv.tau(sol.tau(y, x), sol.sigma(x, y)) == y, || vec![x, y]);
        }
    }
    let mut report = CheckReport::default();
    report.push(rr1);
    report.push(rr2);
    report.push(rr3);
    report.push(rr4);
    if sol.is_left_nondegenerate() {
        let sigma_inv: Vec<Vec<u8>> = (0..n).map(|y| perm::inverse(sol.sigma_row(y))).collect();
        let mut lemma = Check::new("sigmahat_x^-1(y) = tau_{sigma_y^-1(x)}(y)");
        for x in 0..n {
            for y in 0..n {
                let pre = sol.tau(sigma_inv[y][x] as usize, y);
                lemma.record(inv.sigma(x, pre) == y, || vec![x, y]);
            }
        }
        report.push(lemma);
    }
    report
}

/// A relabeling `π` with `π(σ_x(y)) = σ'_{π(x)}(π(y))` and `π(τ_y(x)) = τ'_{π(y)}(π(x))`.
pub fn is_isomorphic(a: &Tables, b: &Tables) -> Result<Option<Vec<usize>>> {
    if a.n() != b.n() {
        return Err(Error::SizeMismatch {
            left: a.n(),
            right: b.n(),
        });
    }
    let n = a.n();
    if n > CANONICAL_LIMIT {
        return Err(Error::SizeTooLarge {
            n,
            limit: CANONICAL_LIMIT,
        });
    }
    let mut pi = perm::identity(n);
    loop {
        if maps_onto(a, b, &pi) {
            return Ok(Some(pi.iter().map(|&v| v as usize).collect()));
        }
        if !perm::next_permutation(&mut pi) {
            return Ok(None);
        }
    }
}

fn maps_onto(a: &Tables, b: &Tables, pi: &[u8]) -> bool {
    let n = a.n();
    (0..n).all(|x| {
        let px = pi[x] as usize;
        (0..n).all(|y| {
            let py = pi[y] as usize;
            pi[a.sigma(x, y)] as usize == b.sigma(px, py) && pi[a.tau(x, y)] as usize == b.tau(px, py)
        })
    })
}

/// Lexicographically least `(sigma, tau)` over all relabelings.
pub fn canonical_form(sol: &FiniteSolution) -> Result<FiniteSolution> {
    let n = sol.n();
    if n > CANONICAL_LIMIT {
        return Err(Error::SizeTooLarge {
            n,
            limit: CANONICAL_LIMIT,
        });
    }
    let mut pi = perm::identity(n);
    let mut best = sol.tables().clone();
    while perm::next_permutation(&mut pi) {
        let cand = sol.tables().relabel(&pi);
        if cand < best {
            best = cand;
        }
    }
    Ok(FiniteSolution(best))
}
