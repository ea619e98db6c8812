//! Exhaustive enumeration of solutions on small carriers.
//!
//! The search assigns every σ-row first, pruning with the σ-only consequences
//! of `σ_x σ_y = σ_{σ_x(y)} σ_{τ_y(x)}`, then fills τ cell by cell. Each τ cell
//! `τ_y(x)` is restricted up front to the values `w` with
//! `σ_{σ_x(y)} σ_w = σ_x σ_y`, and every remaining braid component whose table
//! lookups are all assigned is checked after each assignment.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm;
use crate::solution::{canonical_form, FiniteSolution, Tables};

/// Largest carrier accepted without non-degeneracy.
pub const UNRESTRICTED_LIMIT: usize = 4;
/// Largest carrier accepted when both sides are non-degenerate.
pub const NONDEGENERATE_LIMIT: usize = 5;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct EnumFilter {
    pub left_nd: bool,
    pub right_nd: bool,
    pub bijective: bool,
    pub involutive: bool,
    pub square_free: bool,
    pub up_to_iso: bool,
}

impl EnumFilter {
    pub fn all() -> Self {
        EnumFilter::default()
    }

    pub fn nd() -> Self {
        EnumFilter { left_nd: true, right_nd: true, ..EnumFilter::default() }
    }

    pub fn left_nd() -> Self {
        EnumFilter { left_nd: true, ..EnumFilter::default() }
    }

    pub fn is_nd(&self) -> bool {
        self.left_nd && self.right_nd
    }

    pub fn matches(&self, t: &Tables) -> bool {
        (!self.left_nd || t.is_left_nondegenerate())
            && (!self.right_nd || t.is_right_nondegenerate())
            && (!self.bijective || t.is_bijective())
            && (!self.involutive || t.is_involutive())
            && (!self.square_free || t.is_square_free())
    }

    /// Same predicates, counted over raw tables.
    pub fn raw(&self) -> Self {
        EnumFilter { up_to_iso: false, ..*self }
    }

    /// `lnd`, `rnd`, `nd`, `bij`, `inv`, `sqf` joined by `+`; `all` for no predicate.
    /// Isomorphism reduction is not part of the signature.
    pub fn signature(&self) -> String {
        let mut parts = Vec::new();
        match (self.left_nd, self.right_nd) {
            (true, true) => parts.push("nd"),
            (true, false) => parts.push("lnd"),
            (false, true) => parts.push("rnd"),
            _ => {}
        }
        for (flag, name) in [(self.bijective, "bij"), (self.involutive, "inv"), (self.square_free, "sqf")] {
            if flag {
                parts.push(name);
            }
        }
        if parts.is_empty() {
            "all".to_string()
        } else {
            parts.join("+")
        }
    }
}

impl fmt::Display for EnumFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.signature())
    }
}

impl FromStr for EnumFilter {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let mut out = EnumFilter::default();
        if s == "all" {
            return Ok(out);
        }
        for token in s.split('+') {
            match token {
                "lnd" => out.left_nd = true,
                "rnd" => out.right_nd = true,
                "nd" => {
                    out.left_nd = true;
                    out.right_nd = true;
                }
                "bij" => out.bijective = true,
                "inv" => out.involutive = true,
                "sqf" => out.square_free = true,
                other => return Err(format!("unknown filter token `{other}`")),
            }
        }
        Ok(out)
    }
}

pub fn check_size(n: usize, filter: &EnumFilter) -> Result<()> {
    if n == 0 {
        return Err(Error::EmptyCarrier);
    }
    let limit = if filter.is_nd() { NONDEGENERATE_LIMIT } else { UNRESTRICTED_LIMIT };
    if n > limit {
        return Err(Error::SizeTooLarge { n, limit });
    }
    Ok(())
}

const UNSET: u8 = u8::MAX;

struct Search<'a> {
    n: usize,
    filter: &'a EnumFilter,
    rows: &'a [Vec<u8>],
    /// `compose[i][j]` = rows[i] ∘ rows[j]
    compose: Vec<Vec<u8>>,
    /// index of `rows[i]⁻¹ ∘ target`-style lookups: row content → row index
    row_index: std::collections::HashMap<Vec<u8>, usize>,
}

impl<'a> Search<'a> {
    fn new(n: usize, filter: &'a EnumFilter, rows: &'a [Vec<u8>]) -> Self {
        let compose = if rows.len() <= 256 {
            let mut c = Vec::with_capacity(rows.len() * rows.len());
            for a in rows {
                for b in rows {
                    c.push(perm::compose(a, b));
                }
            }
            c
        } else {
            Vec::new()
        };
        let row_index = rows.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
        Search { n, filter, rows, compose, row_index }
    }

    fn composed(&self, a: usize, b: usize) -> std::borrow::Cow<'_, [u8]> {
        if self.compose.is_empty() {
            std::borrow::Cow::Owned(perm::compose(&self.rows[a], &self.rows[b]))
        } else {
            std::borrow::Cow::Borrowed(&self.compose[a * self.rows.len() + b])
        }
    }

    /// The candidate row `ρ` with `σ_a ∘ ρ = target` when `σ_a` is a
    /// permutation (`Some(None)` if no candidate fits); `None` when `σ_a` is
    /// not a permutation and only the image condition is checked.
    fn right_factor(&self, a: usize, target: &[u8]) -> Option<Option<usize>> {
        let sa = &self.rows[a];
        if perm::is_permutation(sa) {
            let rho = perm::compose(&perm::inverse(sa), target);
            Some(self.row_index.get(&rho).copied())
        } else {
            None
        }
    }

    fn in_image(&self, a: usize, target: &[u8]) -> bool {
        let mut image = [false; 256];
        for &v in self.rows[a].iter() {
            image[v as usize] = true;
        }
        target.iter().all(|&v| image[v as usize])
    }

    /// σ-only pruning once rows `0..m` are assigned (`m = chosen.len()`).
    ///
    /// Each pair `x, y < m` with `a = σ_x(y) < m` needs a row `σ_w` with
    /// `σ_a σ_w = σ_x σ_y`. When `σ_a` is a permutation that row is unique;
    /// the distinct such rows missing from the assigned ones must fit into the
    /// `n - m` open slots. With right non-degeneracy `x ↦ τ_y(x)` is injective,
    /// so for each `y` the required rows, counted with multiplicity, must fit
    /// into the assigned rows plus the open slots.
    fn sigma_consistent(&self, chosen: &[usize]) -> bool {
        let m = chosen.len();
        let n = self.n;
        let open = n - m;
        let last = m - 1;
        let srow = |x: usize| &self.rows[chosen[x]];
        if self.filter.square_free && srow(last)[last] as usize != last {
            return false;
        }
        let assigned_count = |row: usize| chosen.iter().filter(|&&c| c == row).count();
        let mut missing: Vec<usize> = Vec::new();
        for y in 0..m {
            let mut needed: Vec<usize> = Vec::new();
            for x in 0..m {
                let a = srow(x)[y] as usize;
                if a >= m {
                    continue;
                }
                let target = self.composed(chosen[x], chosen[y]);
                match self.right_factor(chosen[a], &target) {
                    Some(None) => return false,
                    Some(Some(row)) => {
                        if !chosen.contains(&row) && !missing.contains(&row) {
                            missing.push(row);
                            if missing.len() > open {
                                return false;
                            }
                        }
                        needed.push(row);
                    }
                    None => {
                        let found = (0..m).any(|w| *self.composed(chosen[a], chosen[w]) == *target);
                        if !found && (open == 0 || !self.in_image(chosen[a], &target)) {
                            return false;
                        }
                    }
                }
            }
            if self.filter.right_nd {
                needed.sort_unstable();
                let mut extra = 0;
                for group in needed.chunk_by(|p, q| p == q) {
                    extra += group.len().saturating_sub(assigned_count(group[0]));
                }
                if extra > open {
                    return false;
                }
            }
        }
        true
    }

    fn sigma_tables(&self, chosen: &mut Vec<usize>, out: &mut Vec<Vec<u8>>) {
        if chosen.len() == self.n {
            out.push(chosen.iter().flat_map(|&i| self.rows[i].iter().copied()).collect());
            return;
        }
        for i in 0..self.rows.len() {
            chosen.push(i);
            if self.sigma_consistent(chosen) {
                self.sigma_tables(chosen, out);
            }
            chosen.pop();
        }
    }
}

/// τ-stage state for one complete σ table.
struct TauSearch<'a> {
    n: usize,
    filter: &'a EnumFilter,
    sigma: &'a [u8],
    /// `domain[y*n + x]`: admissible values of `τ_y(x)`, ascending
    domain: Vec<Vec<u8>>,
    tau: Vec<u8>,
    /// used values per τ-row, for right non-degeneracy
    used: Vec<u32>,
}

impl<'a> TauSearch<'a> {
    fn new(n: usize, filter: &'a EnumFilter, sigma: &'a [u8]) -> Option<Self> {
        let s = |x: usize, y: usize| sigma[x * n + y] as usize;
        let mut domain = Vec::with_capacity(n * n);
        for y in 0..n {
            for x in 0..n {
                let a = s(x, y);
                let d: Vec<u8> = (0..n)
                    .filter(|&w| (0..n).all(|z| s(a, s(w, z)) == s(x, s(y, z))))
                    .filter(|&w| !filter.square_free || x != y || w == x)
                    .filter(|&w| !filter.involutive || s(a, w) == x)
                    .map(|w| w as u8)
                    .collect();
                if d.is_empty() {
                    return None;
                }
                domain.push(d);
            }
        }
        Some(TauSearch { n, filter, sigma, domain, tau: vec![UNSET; n * n], used: vec![0; n] })
    }

    fn s(&self, x: usize, y: usize) -> usize {
        self.sigma[x * self.n + y] as usize
    }

    fn t(&self, y: usize, x: usize) -> Option<usize> {
        match self.tau[y * self.n + x] {
            UNSET => None,
            v => Some(v as usize),
        }
    }

    /// False when some fully-determined instance of the remaining components fails.
    fn consistent(&self) -> bool {
        let n = self.n;
        for x in 0..n {
            for y in 0..n {
                let txy = self.t(y, x);
                for z in 0..n {
                    // τ_{σ_{τ_y(x)}(z)}(σ_x(y)) = σ_{τ_{σ_y(z)}(x)}(τ_z(y))
                    if let Some(a) = txy {
                        let lhs = self.t(self.s(a, z), self.s(x, y));
                        let e = self.t(self.s(y, z), x);
                        let f = self.t(z, y);
                        if let (Some(l), Some(e), Some(f)) = (lhs, e, f) {
                            if l != self.s(e, f) {
                                return false;
                            }
                        }
                        // τ_z(τ_y(x)) = τ_{τ_z(y)}(τ_{σ_y(z)}(x))
                        let lhs = self.t(z, a);
                        let g = self.t(z, y);
                        let i = self.t(self.s(y, z), x);
                        if let (Some(l), Some(g), Some(i)) = (lhs, g, i) {
                            if self.t(g, i).is_some_and(|r| r != l) {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    fn fill(&mut self, cell: usize, out: &mut Vec<Tables>) {
        let n = self.n;
        if cell == n * n {
            let t = Tables::from_flat(n, self.sigma.to_vec(), self.tau.clone()).expect("in range");
            if self.filter.matches(&t) {
                debug_assert!(crate::solution::validate_braid(&t).is_empty());
                out.push(t);
            }
            return;
        }
        let y = cell / n;
        for i in 0..self.domain[cell].len() {
            let w = self.domain[cell][i];
            if self.filter.right_nd && self.used[y] & (1 << w) != 0 {
                continue;
            }
            self.tau[cell] = w;
            self.used[y] |= 1 << w;
            if self.consistent() {
                self.fill(cell + 1, out);
            }
            self.used[y] &= !(1 << w);
        }
        self.tau[cell] = UNSET;
    }
}

fn candidate_rows(n: usize, permutations: bool) -> Vec<Vec<u8>> {
    if permutations {
        perm::all_permutations(n)
    } else {
        perm::all_functions(n)
    }
}

pub(crate) fn default_workers() -> usize {
    std::thread::available_parallelism().map(|p| p.get()).unwrap_or(1)
}

/// Runs `job(i)` for `i in 0..jobs` on up to `workers` threads and returns the
/// results in job order.
pub(crate) fn run_ordered<T: Send>(jobs: usize, workers: usize, job: impl Fn(usize) -> T + Sync) -> Vec<T> {
    let workers = workers.clamp(1, jobs.max(1));
    let slots: Vec<Mutex<Option<T>>> = (0..jobs).map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= jobs {
                    break;
                }
                let r = job(i);
                *slots[i].lock().expect("no poisoned slot") = Some(r);
            });
        }
    });
    slots
        .into_iter()
        .map(|m| m.into_inner().expect("no poisoned slot").expect("every job ran"))
        .collect()
}

/// Raw tables in lexicographic `(sigma, tau)` order, ignoring `up_to_iso`.
fn enumerate_raw(n: usize, filter: &EnumFilter, workers: usize) -> Result<Vec<Tables>> {
    check_size(n, filter)?;
    let rows = candidate_rows(n, filter.left_nd);
    let search = Search::new(n, filter, &rows);
    let per_first_row = run_ordered(rows.len(), workers, |first| {
        let mut sigmas = Vec::new();
        let mut chosen = vec![first];
        if search.sigma_consistent(&chosen) {
            search.sigma_tables(&mut chosen, &mut sigmas);
        }
        let mut out = Vec::new();
        for sigma in &sigmas {
            if let Some(mut ts) = TauSearch::new(n, filter, sigma) {
                ts.fill(0, &mut out);
            }
        }
        out
    });
    Ok(per_first_row.into_iter().flatten().collect())
}

/// Every solution on `{0, …, n-1}` passing `filter`, in lexicographic
/// `(sigma, tau)` order; with `up_to_iso`, one canonical representative per
/// isomorphism class in canonical order.
pub fn enumerate(n: usize, filter: &EnumFilter) -> Result<Vec<FiniteSolution>> {
    enumerate_with_workers(n, filter, default_workers())
}

pub fn enumerate_with_workers(n: usize, filter: &EnumFilter, workers: usize) -> Result<Vec<FiniteSolution>> {
    let raw = enumerate_raw(n, filter, workers)?;
    let sols = raw.into_iter().map(FiniteSolution::trusted);
    if filter.up_to_iso {
        let classes: BTreeSet<Tables> = sols
            .map(|s| canonical_form(&s).map(FiniteSolution::into_tables))
            .collect::<Result<_>>()?;
        Ok(classes.into_iter().map(FiniteSolution::trusted).collect())
    } else {
        Ok(sols.collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct CensusRecord {
    pub n: usize,
    pub filter: String,
    pub raw: usize,
    pub iso: usize,
}

impl fmt::Display for CensusRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} filter={} raw={} iso={}", self.n, self.filter, self.raw, self.iso)
    }
}

/// Number of isomorphism classes among `sols`.
pub fn count_classes<'a>(sols: impl IntoIterator<Item = &'a Tables>) -> Result<usize> {
    let mut classes = BTreeSet::new();
    for t in sols {
        let s = FiniteSolution::trusted(t.clone());
        classes.insert(canonical_form(&s)?.into_tables());
    }
    Ok(classes.len())
}

pub fn census(n: usize, filter: &EnumFilter) -> Result<CensusRecord> {
    census_with_workers(n, filter, default_workers())
}

pub fn census_with_workers(n: usize, filter: &EnumFilter, workers: usize) -> Result<CensusRecord> {
    let raw = enumerate_raw(n, &filter.raw(), workers)?;
    Ok(CensusRecord { n, filter: filter.signature(), raw: raw.len(), iso: count_classes(&raw)? })
}

pub const CENSUS_HEADER: &str = "# ybe census format 1";

/// Regression counts checked into the repository.
pub const FROZEN_CENSUS: &str = include_str!("../data/census.txt");

/// The (n, filter) cells recorded in the frozen census.
pub fn census_cells() -> Vec<(usize, EnumFilter)> {
    let small = ["all", "lnd", "rnd", "nd", "bij", "inv", "sqf", "nd+inv", "nd+sqf", "lnd+bij"];
    let mut cells = Vec::new();
    for n in 1..=3 {
        for s in small {
            cells.push((n, s.parse().expect("known signature")));
        }
    }
    for s in ["nd", "nd+inv", "nd+sqf"] {
        cells.push((4, s.parse().expect("known signature")));
    }
    cells
}

pub fn format_census(records: &[CensusRecord]) -> String {
    let mut sorted = records.to_vec();
    sorted.sort();
    let mut out = String::from(CENSUS_HEADER);
    out.push('\n');
    for r in sorted {
        out.push_str(&r.to_string());
        out.push('\n');
    }
    out
}

pub fn parse_census(text: &str) -> std::result::Result<Vec<CensusRecord>, String> {
    let mut lines = text.lines();
    if lines.next() != Some(CENSUS_HEADER) {
        return Err(format!("missing header `{CENSUS_HEADER}`"));
    }
    let mut out = Vec::new();
    for (i, line) in lines.enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut rec = CensusRecord { n: 0, filter: String::new(), raw: 0, iso: 0 };
        let mut seen = 0;
        for field in line.split_whitespace() {
            let (key, value) = field.split_once('=').ok_or_else(|| format!("line {}: bad field `{field}`", i + 2))?;
            let num = || value.parse::<usize>().map_err(|e| format!("line {}: {e}", i + 2));
            match key {
                "n" => rec.n = num()?,
                "filter" => {
                    let f: EnumFilter = value.parse().map_err(|e| format!("line {}: {e}", i + 2))?;
                    rec.filter = f.signature();
                }
                "raw" => rec.raw = num()?,
                "iso" => rec.iso = num()?,
                _ => return Err(format!("line {}: unknown key `{key}`", i + 2)),
            }
            seen += 1;
        }
        if seen != 4 {
            return Err(format!("line {}: expected 4 fields", i + 2));
        }
        out.push(rec);
    }
    Ok(out)
}

pub fn frozen_census() -> Vec<CensusRecord> {
    parse_census(FROZEN_CENSUS).expect("checked-in census parses")
}

pub fn frozen_record(n: usize, filter: &EnumFilter) -> Option<CensusRecord> {
    let sig = filter.signature();
    frozen_census().into_iter().find(|r| r.n == n && r.filter == sig)
}

/// Unpruned reference enumeration used to generate and cross-check counts.
pub mod oracle {
    use super::*;

    /// Direct check of `r₁₂ r₂₃ r₁₂ = r₂₃ r₁₂ r₂₃` on every triple.
    pub fn satisfies_braid(n: usize, sigma: &[u8], tau: &[u8]) -> bool {
        let r = |x: usize, y: usize| (sigma[x * n + y] as usize, tau[y * n + x] as usize);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (a, b) = r(x, y);
                    let (b, c) = r(b, z);
                    let (a, b) = r(a, b);
                    let (q, w) = r(y, z);
                    let (p, q) = r(x, q);
                    let (q, w) = r(q, w);
                    if (a, b, c) != (p, q, w) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn tables_from_rows(rows: &[Vec<u8>], idx: &[usize]) -> Vec<u8> {
        idx.iter().flat_map(|&i| rows[i].iter().copied()).collect()
    }

    fn odometer(len: usize, radix: usize) -> impl Iterator<Item = Vec<usize>> {
        let total = radix.pow(len as u32);
        let mut cur = vec![0usize; len];
        (0..total).map(move |k| {
            if k > 0 {
                for pos in (0..len).rev() {
                    cur[pos] += 1;
                    if cur[pos] < radix {
                        break;
                    }
                    cur[pos] = 0;
                }
            }
            cur.clone()
        })
    }

    /// Every pair of row tables (permutation rows on the requested sides,
    /// arbitrary maps elsewhere) checked against the braid relation, in
    /// lexicographic order.
    pub fn full_scan(n: usize, left_perm: bool, right_perm: bool, workers: usize) -> Vec<Tables> {
        let srows = candidate_rows(n, left_perm);
        let trows = candidate_rows(n, right_perm);
        let sigmas: Vec<Vec<u8>> = odometer(n, srows.len()).map(|i| tables_from_rows(&srows, &i)).collect();
        let per_sigma = run_ordered(sigmas.len(), workers, |si| {
            let sigma = &sigmas[si];
            let mut out = Vec::new();
            for idx in odometer(n, trows.len()) {
                let tau = tables_from_rows(&trows, &idx);
                if satisfies_braid(n, sigma, &tau) {
                    out.push(Tables::from_flat(n, sigma.clone(), tau).expect("in range"));
                }
            }
            out
        });
        per_sigma.into_iter().flatten().collect()
    }

    /// Non-degenerate solutions without scanning all τ tables: for each σ table
    /// of permutations, τ-rows are restricted to permutations whose entries
    /// satisfy the first braid component `σ_x σ_y = σ_{σ_x(y)} σ_{τ_y(x)}`
    /// pointwise, and every surviving pair is checked against the full braid
    /// relation.
    pub fn nondegenerate_scan(n: usize, workers: usize) -> Vec<Tables> {
        let perms = perm::all_permutations(n);
        let sigmas: Vec<Vec<u8>> = odometer(n, perms.len()).map(|i| tables_from_rows(&perms, &i)).collect();
        let per_sigma = run_ordered(sigmas.len(), workers, |si| {
            let sigma = &sigmas[si];
            let s = |x: usize, y: usize| sigma[x * n + y] as usize;
            let allowed = |y: usize, x: usize, w: usize| {
                let a = s(x, y);
                (0..n).all(|z| s(x, s(y, z)) == s(a, s(w, z)))
            };
            let row_choices: Vec<Vec<&Vec<u8>>> = (0..n)
                .map(|y| perms.iter().filter(|p| (0..n).all(|x| allowed(y, x, p[x] as usize))).collect())
                .collect();
            let mut out = Vec::new();
            if row_choices.iter().any(Vec::is_empty) {
                return out;
            }
            let mut idx = vec![0usize; n];
            loop {
                let tau: Vec<u8> = (0..n).flat_map(|y| row_choices[y][idx[y]].iter().copied()).collect();
                if satisfies_braid(n, sigma, &tau) {
                    out.push(Tables::from_flat(n, sigma.clone(), tau).expect("in range"));
                }
                let mut pos = n;
                loop {
                    if pos == 0 {
                        return out;
                    }
                    pos -= 1;
                    idx[pos] += 1;
                    if idx[pos] < row_choices[pos].len() {
                        break;
                    }
                    idx[pos] = 0;
                }
            }
        });
        per_sigma.into_iter().flatten().collect()
    }

    /// Reference population for one census cell, in lexicographic order.
    pub fn population(n: usize, filter: &EnumFilter, workers: usize) -> Vec<Tables> {
        let base = if n >= 4 {
            assert!(filter.is_nd(), "the reference scan covers n >= 4 only for non-degenerate cells");
            nondegenerate_scan(n, workers)
        } else {
            full_scan(n, filter.left_nd, filter.right_nd, workers)
        };
        base.into_iter().filter(|t| filter.matches(t)).collect()
    }

    /// Every frozen cell, each population scanned once per carrier size.
    pub fn census_all(workers: usize) -> Result<Vec<CensusRecord>> {
        let cells = census_cells();
        let mut out = Vec::new();
        let mut sizes: Vec<usize> = cells.iter().map(|c| c.0).collect();
        sizes.dedup();
        for n in sizes {
            let base = if n >= 4 { nondegenerate_scan(n, workers) } else { full_scan(n, false, false, workers) };
            for (_, f) in cells.iter().filter(|c| c.0 == n) {
                let pop: Vec<Tables> = base.iter().filter(|t| f.matches(t)).cloned().collect();
                out.push(CensusRecord { n, filter: f.signature(), raw: pop.len(), iso: count_classes(&pop)? });
            }
        }
        out.sort();
        Ok(out)
    }

    pub fn census(n: usize, filter: &EnumFilter, workers: usize) -> Result<CensusRecord> {
        let pop = population(n, filter, workers);
        Ok(CensusRecord { n, filter: filter.signature(), raw: pop.len(), iso: count_classes(&pop)? })
    }
}
