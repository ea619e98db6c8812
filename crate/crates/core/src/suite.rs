//! Verification of every checkable statement over complete small populations.
//!
//! The full suite covers every solution with `n ≤ 3`; with `n_max ≥ 4` a
//! reduced set of statements also runs over the non-degenerate solutions of
//! size 4. Statements are reported by name, with up to
//! [`MAX_STORED_COUNTEREXAMPLES`] counterexamples kept verbatim each.
//! Questions without an expected answer are reported as observations.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

use crate::diagonals::{check_diagonal_identities, check_diagonal_theorems};
use crate::error::{Error, Result};
use crate::omega::{
    check_omega_identities, check_reductive_inverse_identity, check_star_conditions, closed_form_u_inverse,
    is_k_permutational_with, is_k_reductive_with, Budget, OmegaSymbol, Operations,
};
use crate::orbits::{check_orbit_theorem_with, is_decomposable, orbit_decomposition};
use crate::qcycle;
use crate::report::CheckReport;
use crate::retract::{
    self, check_colon_compatibility, check_relation_coincidence, check_retract_duality, mpl, mpl_prime,
    retract_chain, RetractKind,
};
use crate::search::{self, census_cells, default_workers, run_ordered, CensusRecord, EnumFilter};
use crate::solution::{invert, inverse_identities, validate_braid, FiniteSolution, Tables};

pub const MAX_STORED_COUNTEREXAMPLES: usize = 10;

/// Largest `k` examined for permutational/reductive statements.
pub const K_MAX: usize = 3;

pub mod names {
    pub const BRAID: &str = "core: enumerated tables satisfy the braid relation";
    pub const INVERSE: &str = "core: inverse solution satisfies rr1-rr4 and inverts back";
    pub const BIJECTIVE: &str = "core: non-degenerate solutions are bijective";
    pub const DIAG_IDENTITIES: &str = "diagonals: pointwise identities";
    pub const DIAG_THEOREMS: &str = "diagonals: U, T bijective with inverses That, Uhat; UT = TU; square-free iff U = T = id; fixed points";
    pub const RET_QUOTIENT: &str = "retract: Ret exists and is non-degenerate";
    pub const RET_COINCIDE: &str = "retract: ~, ~: and ~hat coincide";
    pub const RET_DUALITY: &str = "retract: Ret(X) and Ret(X^-1) mutually inverse with equal mpl";
    pub const RET_COLON: &str = "retract: ~: compatible with sigma, sigma^-1, sigmahat, sigmahat^-1, tau, tauhat";
    pub const RET_REDUCTIVE: &str = "retract: k-reductive iff Ret is (k-1)-reductive";
    pub const RET_LEVELS: &str = "retract: mpl' <= mpl <= mpl' + 1";
    pub const MULTIEQ: &str = "omega: mpl <= k iff k-permutational over {s,t} iff over {s,s^-1,t,t^-1}";
    pub const MULTIEQ_REGULAR: &str = "omega: regular: mpl <= k iff k-permutational over {s^-1,shat^-1}";
    pub const RED_PERM: &str = "omega: k-reductive implies k-permutational";
    pub const PERM_RED: &str = "omega: k-permutational implies (k+1)-reductive";
    pub const SQF_RED: &str = "omega: square-free of mpl k is k-reductive";
    pub const STAR: &str = "omega: star conditions give k-permutational iff k-reductive";
    pub const DISTRIBUTIVE: &str = "omega: distributive, k >= 2: k-permutational iff k-reductive";
    pub const REDPRIM: &str = "omega: k-reductive implies Ret^(k-1) trivial";
    pub const MPL_PRIME: &str = "omega: k-reductive and not (k-1)-reductive implies mpl' = k-1";
    pub const KRED2: &str = "omega: inverse-symbol identity on k-reductive solutions";
    pub const CLOSED_FORM: &str = "omega: closed forms of U^-1 and T^-1";
    /// Prefix of the rewriting identities, one entry per identity.
    pub const IDENTITY_PREFIX: &str = "omega: identity ";
    pub const ORB_CLOSED: &str = "orbits: blocks closed and restrictions are solutions";
    pub const ORB_THEOREM: &str = "orbits: orbits of k-reductive solutions are (k-1)-permutational";
    pub const SQF_DEC: &str = "orbits: square-free multipermutation solutions are decomposable";
    pub const KRED_DEC: &str = "orbits: k-reductive solutions of mpl k are decomposable";
    pub const STAR_DEC: &str = "orbits: multipermutation solutions with star conditions are decomposable";
    /// Prefix of the q-cycle correspondence checks, one entry per check.
    pub const QCYCLE_PREFIX: &str = "qcycle: ";

    pub const OBS_INVERSE_RELATION: &str = "~ and ~hat differ on a bijective solution";
    pub const OBS_COLON_QUOTIENT: &str = "~: quotient of a regular q-cycle set has a non-bijective colon row";
    pub const OBS_COLON_INCOMPATIBLE: &str = "~: of a regular q-cycle set is not compatible with its operations";
    pub const OBS_REGULAR_NOT_ND: &str = "regular solution that is not right non-degenerate";
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub solution: Tables,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremEntry {
    pub name: String,
    /// Solutions on which the statement was evaluated.
    pub checked: usize,
    pub failures: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl TheoremEntry {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Observation {
    pub name: String,
    pub examined: usize,
    pub found: usize,
    pub examples: Vec<Tables>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub n_max: usize,
    /// Solutions examined per carrier size.
    pub population: BTreeMap<usize, usize>,
    pub theorems: Vec<TheoremEntry>,
    pub observations: Vec<Observation>,
    pub census: Vec<CensusRecord>,
    pub elapsed_ms: u128,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.theorems.iter().all(TheoremEntry::passed)
    }

    pub fn theorem(&self, name: &str) -> Option<&TheoremEntry> {
        self.theorems.iter().find(|t| t.name == name)
    }

    pub fn observation(&self, name: &str) -> Option<&Observation> {
        self.observations.iter().find(|o| o.name == name)
    }
}

/// Per-solution results, merged in enumeration order.
#[derive(Default)]
struct Tally {
    theorems: BTreeMap<String, TheoremEntry>,
    observations: BTreeMap<String, Observation>,
}

impl Tally {
    fn claim(&mut self, name: &str, ok: bool, sol: &Tables, detail: impl FnOnce() -> String) {
        let entry = self.theorems.entry(name.to_string()).or_insert_with(|| TheoremEntry {
            name: name.to_string(),
            checked: 0,
            failures: 0,
            counterexamples: Vec::new(),
        });
        entry.checked += 1;
        if !ok {
            entry.failures += 1;
            if entry.counterexamples.len() < MAX_STORED_COUNTEREXAMPLES {
                entry.counterexamples.push(Counterexample { solution: sol.clone(), detail: detail() });
            }
        }
    }

    fn report(&mut self, prefix: &str, report: &CheckReport, sol: &Tables) {
        for check in &report.checks {
            self.claim(&format!("{prefix}{}", check.name), check.holds(), sol, || {
                format!("witnesses {:?}", check.witnesses)
            });
        }
    }

    /// Folds a fallible check report into a single statement.
    fn outcome(&mut self, name: &str, r: Result<CheckReport>, sol: &Tables) {
        match r {
            Ok(report) => {
                let failing: Vec<String> = report
                    .failing()
                    .map(|c| format!("{}: {:?}", c.name, c.witnesses))
                    .collect();
                self.claim(name, failing.is_empty(), sol, || failing.join("; "));
            }
            Err(e) => self.claim(name, false, sol, || format!("error: {e}")),
        }
    }

    fn observe(&mut self, name: &str, found: bool, sol: &Tables) {
        let obs = self.observations.entry(name.to_string()).or_insert_with(|| Observation {
            name: name.to_string(),
            examined: 0,
            found: 0,
            examples: Vec::new(),
        });
        obs.examined += 1;
        if found {
            obs.found += 1;
            if obs.examples.len() < MAX_STORED_COUNTEREXAMPLES {
                obs.examples.push(sol.clone());
            }
        }
    }

    fn merge(&mut self, other: Tally) {
        for (name, e) in other.theorems {
            let entry = self.theorems.entry(name).or_insert_with(|| TheoremEntry {
                name: e.name.clone(),
                checked: 0,
                failures: 0,
                counterexamples: Vec::new(),
            });
            entry.checked += e.checked;
            entry.failures += e.failures;
            let room = MAX_STORED_COUNTEREXAMPLES - entry.counterexamples.len();
            entry.counterexamples.extend(e.counterexamples.into_iter().take(room));
        }
        for (name, o) in other.observations {
            let entry = self.observations.entry(name).or_insert_with(|| Observation {
                name: o.name.clone(),
                examined: 0,
                found: 0,
                examples: Vec::new(),
            });
            entry.examined += o.examined;
            entry.found += o.found;
            let room = MAX_STORED_COUNTEREXAMPLES - entry.examples.len();
            entry.examples.extend(o.examples.into_iter().take(room));
        }
    }
}

fn check_core(sol: &FiniteSolution, t: &mut Tally) {
    let tables = sol.tables();
    let violations = validate_braid(sol);
    t.claim(names::BRAID, violations.is_empty(), tables, || format!("violations {:?}", &violations[..violations.len().min(5)]));
    if sol.is_nondegenerate() {
        let collision = sol.r_collision();
        t.claim(names::BIJECTIVE, collision.is_none(), tables, || format!("collision {collision:?}"));
    }
    if sol.is_bijective() {
        let ok = match invert(sol) {
            Ok(inv) => {
                inverse_identities(sol, &inv).all_hold()
                    && invert(&inv).map(|back| back == *sol).unwrap_or(false)
            }
            Err(_) => false,
        };
        t.claim(names::INVERSE, ok, tables, String::new);
        if sol.is_left_nondegenerate() && !sol.is_right_nondegenerate() {
            t.observe(names::OBS_REGULAR_NOT_ND, true, tables);
        } else if sol.is_left_nondegenerate() {
            t.observe(names::OBS_REGULAR_NOT_ND, false, tables);
        }
    }
}

fn check_structure(sol: &FiniteSolution, t: &mut Tally) {
    let tables = sol.tables();
    if sol.is_left_nondegenerate() {
        match qcycle::check_correspondence(sol) {
            Ok(r) => t.report(names::QCYCLE_PREFIX, &r, tables),
            Err(e) => t.claim(&format!("{}correspondence", names::QCYCLE_PREFIX), false, tables, || e.to_string()),
        }
        if sol.is_bijective() {
            t.outcome(names::RET_COLON, check_colon_compatibility(sol), tables);
            if let Ok(q) = qcycle::from_solution(sol) {
                match qcycle::colon_quotient(&q) {
                    Some(quot) => {
                        t.observe(names::OBS_COLON_INCOMPATIBLE, false, tables);
                        t.observe(names::OBS_COLON_QUOTIENT, !qcycle::is_regular(&quot), tables);
                    }
                    None => t.observe(names::OBS_COLON_INCOMPATIBLE, true, tables),
                }
            }
        }
    }
    if sol.is_bijective() {
        let fwd = retract::retract_relation(sol, RetractKind::Forward);
        let inv = retract::retract_relation(sol, RetractKind::Inverse);
        if let (Ok(a), Ok(b)) = (fwd, inv) {
            t.observe(names::OBS_INVERSE_RELATION, a != b, tables);
        }
    }
    if !sol.is_nondegenerate() {
        return;
    }
    t.outcome(names::DIAG_IDENTITIES, check_diagonal_identities(sol), tables);
    t.outcome(names::DIAG_THEOREMS, check_diagonal_theorems(sol), tables);
    let ret = retract::retract(sol);
    let ok = ret.as_ref().map(|r| r.quotient.is_nondegenerate()).unwrap_or(false);
    t.claim(names::RET_QUOTIENT, ok, tables, || format!("{:?}", ret.as_ref().err()));
    t.outcome(names::RET_COINCIDE, check_relation_coincidence(sol), tables);
    t.outcome(names::RET_DUALITY, check_retract_duality(sol), tables);
}

/// Permutational and reductive verdicts computed once per solution.
struct Towers {
    /// over `{σ, τ}`, `k = 0..=K_MAX+1`
    perm: Vec<bool>,
    /// `k = 1..=K_MAX+1`, index `k`; index 0 unused
    red: Vec<bool>,
}

impl Towers {
    fn new(ops: &Operations, budget: &Budget) -> Result<Self> {
        let perm = (0..=K_MAX + 1)
            .map(|k| is_k_permutational_with(ops, k, &OmegaSymbol::BASIC, budget).map(|v| v.holds))
            .collect::<Result<Vec<_>>>()?;
        let mut red = vec![false];
        for k in 1..=K_MAX + 1 {
            red.push(is_k_reductive_with(ops, k, budget)?.holds);
        }
        Ok(Towers { perm, red })
    }
}

fn check_towers(sol: &FiniteSolution, budget: &Budget, t: &mut Tally) -> Result<()> {
    let tables = sol.tables();
    let ops = Operations::new(sol);
    let towers = Towers::new(&ops, budget)?;

    let identities = check_omega_identities(sol, K_MAX, budget);
    t.report(names::IDENTITY_PREFIX, &identities, tables);

    for k in 1..=K_MAX {
        t.claim(names::RED_PERM, !towers.red[k] || towers.perm[k], tables, || format!("k={k}"));
    }
    for k in 0..=K_MAX {
        t.claim(names::PERM_RED, !towers.perm[k] || towers.red[k + 1], tables, || format!("k={k}"));
    }

    if sol.is_left_nondegenerate() {
        if let Some(k) = (0..=K_MAX).find(|&k| towers.perm[k]) {
            t.outcome(names::CLOSED_FORM, closed_form_u_inverse(sol, k, false).map(|c| c.checks), tables);
        }
        if let Some(k) = (1..=K_MAX).find(|&k| towers.red[k]) {
            t.outcome(names::CLOSED_FORM, closed_form_u_inverse(sol, k, true).map(|c| c.checks), tables);
        }
    }

    if !sol.is_nondegenerate() {
        return Ok(());
    }
    let level = mpl(sol);
    let level_prime = mpl_prime(sol);
    let chain = retract_chain(sol)?;
    let ret_iter = |j: usize| &chain[j.min(chain.len() - 1)];

    let with_inverses: Vec<bool> = (0..=K_MAX)
        .map(|k| is_k_permutational_with(&ops, k, &OmegaSymbol::WITH_INVERSES, budget).map(|v| v.holds))
        .collect::<Result<_>>()?;
    for k in 0..=K_MAX {
        let le = level.as_ref().map(|&m| m <= k).unwrap_or(false);
        t.claim(names::MULTIEQ, le == towers.perm[k] && towers.perm[k] == with_inverses[k], tables, || {
            format!("k={k} mpl={level:?} basic={} inverses={}", towers.perm[k], with_inverses[k])
        });
    }
    if sol.is_bijective() {
        for k in 0..=K_MAX {
            let le = level.as_ref().map(|&m| m <= k).unwrap_or(false);
            let v = is_k_permutational_with(&ops, k, &OmegaSymbol::REGULAR, budget).map(|v| v.holds);
            t.claim(names::MULTIEQ_REGULAR, v.as_ref() == Ok(&le), tables, || format!("k={k} mpl={level:?} got {v:?}"));
        }
    }

    if let Ok(m) = &level {
        let ok = level_prime.as_ref().map(|&p| p <= *m && *m <= p + 1).unwrap_or(false);
        t.claim(names::RET_LEVELS, ok, tables, || format!("mpl={m} mpl'={level_prime:?}"));
    }

    let ret = ret_iter(1);
    let ret_ops = Operations::new(ret);
    for k in 2..=K_MAX {
        let r = is_k_reductive_with(&ret_ops, k - 1, budget)?.holds;
        t.claim(names::RET_REDUCTIVE, towers.red[k] == r, tables, || format!("k={k} X:{} Ret:{r}", towers.red[k]));
    }

    if sol.is_square_free() {
        if let Ok(m) = &level {
            let k = (*m).max(1);
            if k <= K_MAX + 1 {
                t.claim(names::SQF_RED, towers.red[k], tables, || format!("mpl={m}"));
            }
        }
    }
    let star = check_star_conditions(sol);
    if star.holds {
        for k in 1..=K_MAX {
            t.claim(names::STAR, towers.perm[k] == towers.red[k], tables, || format!("k={k}"));
        }
    }
    if sol.is_distributive() {
        for k in 2..=K_MAX {
            t.claim(names::DISTRIBUTIVE, towers.perm[k] == towers.red[k], tables, || format!("k={k}"));
        }
    }
    for k in 1..=K_MAX {
        if !towers.red[k] {
            continue;
        }
        t.claim(names::REDPRIM, ret_iter(k - 1).is_trivial(), tables, || format!("k={k}"));
        if k == 1 || !towers.red[k - 1] {
            t.claim(names::MPL_PRIME, level_prime == Ok(k - 1), tables, || format!("k={k} mpl'={level_prime:?}"));
        }
        match check_reductive_inverse_identity(&ops, k, budget) {
            Ok(c) => t.claim(names::KRED2, c.holds(), tables, || format!("k={k} {:?}", c.witnesses)),
            Err(e) => t.claim(names::KRED2, false, tables, || e.to_string()),
        }
        t.outcome(names::ORB_THEOREM, check_orbit_theorem_with(sol, k, budget), tables);
    }

    let orbits = orbit_decomposition(sol);
    let ok = orbits.as_ref().map(|d| {
        d.suborbits.iter().all(|o| o.elements.iter().all(|&e| {
            (0..sol.n()).all(|y| o.elements.contains(&sol.sigma(y, e)) && o.elements.contains(&sol.tau(y, e)))
        }))
    });
    t.claim(names::ORB_CLOSED, ok == Ok(true), tables, || format!("{ok:?}"));
    let decomposable = is_decomposable(sol)?;
    if let Ok(m) = &level {
        if sol.n() > 1 && sol.is_square_free() {
            t.claim(names::SQF_DEC, decomposable, tables, || format!("mpl={m}"));
        }
        if *m >= 1 && *m <= K_MAX + 1 && towers.red[*m] {
            t.claim(names::KRED_DEC, decomposable, tables, || format!("mpl={m}"));
        }
        if sol.n() > 1 && star.holds {
            t.claim(names::STAR_DEC, decomposable, tables, || format!("mpl={m}"));
        }
    }
    Ok(())
}

fn check_full(sol: &FiniteSolution, budget: &Budget) -> Tally {
    let mut t = Tally::default();
    check_core(sol, &mut t);
    check_structure(sol, &mut t);
    if let Err(e) = check_towers(sol, budget, &mut t) {
        t.claim("omega: evaluation", false, sol.tables(), || e.to_string());
    }
    t
}

fn check_reduced(sol: &FiniteSolution) -> Tally {
    let mut t = Tally::default();
    check_core(sol, &mut t);
    check_structure(sol, &mut t);
    t
}

fn run_population(sols: &[FiniteSolution], workers: usize, f: impl Fn(&FiniteSolution) -> Tally + Sync) -> Tally {
    const CHUNK: usize = 32;
    let chunks = sols.len().div_ceil(CHUNK);
    let parts = run_ordered(chunks, workers, |c| {
        let mut t = Tally::default();
        for s in &sols[c * CHUNK..((c + 1) * CHUNK).min(sols.len())] {
            t.merge(f(s));
        }
        t
    });
    let mut total = Tally::default();
    for p in parts {
        total.merge(p);
    }
    total
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteConfig {
    pub n_max: usize,
    pub budget: Budget,
    pub workers: usize,
}

impl SuiteConfig {
    pub fn new(n_max: usize) -> Self {
        SuiteConfig { n_max, budget: Budget::default(), workers: default_workers() }
    }
}

/// Full statements for `n ≤ min(n_max, 3)`; the reduced set over
/// non-degenerate solutions of size 4 when `n_max ≥ 4`.
pub fn theorem_suite(n_max: usize) -> Result<SuiteReport> {
    theorem_suite_with(&SuiteConfig::new(n_max))
}

pub fn theorem_suite_with(cfg: &SuiteConfig) -> Result<SuiteReport> {
    if cfg.n_max > 4 {
        return Err(Error::SizeTooLarge { n: cfg.n_max, limit: 4 });
    }
    let start = Instant::now();
    let mut tally = Tally::default();
    let mut population = BTreeMap::new();
    for n in 1..=cfg.n_max.min(3) {
        let sols = search::enumerate_with_workers(n, &EnumFilter::all(), cfg.workers)?;
        population.insert(n, sols.len());
        let budget = cfg.budget;
        tally.merge(run_population(&sols, cfg.workers, |s| check_full(s, &budget)));
    }
    if cfg.n_max >= 4 {
        let sols = search::enumerate_with_workers(4, &EnumFilter::nd(), cfg.workers)?;
        population.insert(4, sols.len());
        tally.merge(run_population(&sols, cfg.workers, check_reduced));
    }
    let mut census = Vec::new();
    for (n, f) in census_cells() {
        if n <= cfg.n_max {
            census.push(search::census_with_workers(n, &f, cfg.workers)?);
        }
    }
    Ok(SuiteReport {
        n_max: cfg.n_max,
        population,
        theorems: tally.theorems.into_values().collect(),
        observations: tally.observations.into_values().collect(),
        census,
        elapsed_ms: start.elapsed().as_millis(),
    })
}
