//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::path::Path;
use std::time::Instant;

use ybe::omega::OmegaSymbol;
use ybe::qcycle::{self, QCycleSet};
use ybe::retract::{self, RetractKind};
use ybe::search::{self, oracle, EnumFilter};
use ybe::solution::properties;
use ybe::suite::{names, SuiteReport};
use ybe::{Error, FiniteSolution, Tables};
use ybe_cli::SolutionDocument;

type Verdict = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

/// Named suite entries must exist, be non-vacuous and have no failures.
fn entries(report: &SuiteReport, wanted: &[&str]) -> Verdict {
    let mut checked = 0;
    for name in wanted {
        let t = report.theorem(name).ok_or_else(|| format!("missing entry `{name}`"))?;
        ensure(t.checked > 0, format!("`{name}` checked nothing"))?;
        ensure(t.passed(), format!("`{name}`: {} failure(s), first {:?}", t.failures, t.counterexamples.first()))?;
        checked += t.checked;
    }
    Ok(format!("{} statement(s), {checked} instance(s)", wanted.len()))
}

fn prefixed(report: &SuiteReport, prefix: &str) -> Vec<String> {
    report.theorems.iter().filter(|t| t.name.starts_with(prefix)).map(|t| t.name.clone()).collect()
}

fn population(n: usize, filter: &EnumFilter) -> Vec<FiniteSolution> {
    search::enumerate(n, filter).expect("within limits")
}

fn nd_populations() -> Vec<FiniteSolution> {
    let mut all: Vec<FiniteSolution> = (1..=3).flat_map(|n| population(n, &EnumFilter::all())).filter(|s| s.is_nondegenerate()).collect();
    all.extend(population(4, &EnumFilter::nd()));
    all
}

fn exm1() -> Verdict {
    let start = Instant::now();
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/exm1.json");
    let doc = SolutionDocument::load(&path).map_err(|e| e.to_string())?;
    let sol = doc.to_solution().map_err(|e| e.to_string())?;
    let p = properties(&sol);
    ensure(p.braid_ok, "not braid-valid")?;
    ensure(p.left_nondegenerate && !p.right_nondegenerate && !p.bijective, "property flags differ")?;
    let rel = retract::retract_relation(&sol, RetractKind::Forward).map_err(|e| e.to_string())?;
    let blocks: Vec<Vec<String>> = rel.blocks().iter().map(|b| b.iter().map(|&x| doc.label(x)).collect()).collect();
    ensure(blocks == [vec!["a", "b"], vec!["c"]], format!("blocks {blocks:?}"))?;
    let w = retract::check_compatibility(&sol, &rel, OmegaSymbol::Tau).map_err(|e| e.to_string())?;
    let [x1, x2, y1, y2] = w.ok_or("no tau witness")?;
    let (u, v) = (sol.tau(x1, y1), sol.tau(x2, y2));
    ensure(
        [x1, x2, y1, y2] == [0, 0, 0, 1] && doc.label(u) == "b" && doc.label(v) == "c" && !rel.same(u, v),
        format!("witness {:?} gives {} and {}", [x1, x2, y1, y2], doc.label(u), doc.label(v)),
    )?;
    match retract::retract(&sol) {
        Err(Error::CompatibilityError { op: OmegaSymbol::Tau, .. }) => {}
        other => return Err(format!("retract gave {other:?}")),
    }
    let elapsed = start.elapsed();
    ensure(elapsed.as_secs_f64() < 1.0, format!("took {elapsed:?}"))?;
    Ok(format!("tau_a(a) = b, tau_a(b) = c, b and c unrelated; {:.1} ms", elapsed.as_secs_f64() * 1e3))
}

fn bijective(report: &SuiteReport, nd: &[FiniteSolution]) -> Verdict {
    for s in nd {
        let mut seen = vec![false; s.n() * s.n()];
        for x in 0..s.n() {
            for y in 0..s.n() {
                let (u, v) = (s.sigma(x, y), s.tau(y, x));
                ensure(!std::mem::replace(&mut seen[u * s.n() + v], true), format!("r not injective on {s:?}"))?;
            }
        }
    }
    let summary = entries(report, &[names::BIJECTIVE])?;
    Ok(format!("{} non-degenerate solutions rescanned; {summary}", nd.len()))
}

fn inverse_row(row: &[u8]) -> Vec<usize> {
    let mut out = vec![0; row.len()];
    for (i, &v) in row.iter().enumerate() {
        out[v as usize] = i;
    }
    out
}

fn diagonals(report: &SuiteReport, nd: &[FiniteSolution]) -> Verdict {
    for s in nd {
        let n = s.n();
        let u: Vec<usize> = (0..n).map(|x| inverse_row(s.sigma_row(x))[x]).collect();
        let t: Vec<usize> = (0..n).map(|x| inverse_row(s.tau_row(x))[x]).collect();
        let t_hat: Vec<usize> = (0..n).map(|x| s.sigma(t[x], x)).collect();
        let u_hat: Vec<usize> = (0..n).map(|x| s.tau(u[x], x)).collect();
        let is_perm = |m: &[usize]| {
            let mut v = m.to_vec();
            v.sort();
            v.into_iter().eq(0..n)
        };
        let id = |f: &dyn Fn(usize) -> usize| (0..n).all(|x| f(x) == x);
        let ok = is_perm(&u)
            && is_perm(&t)
            && id(&|x| u[t_hat[x]])
            && id(&|x| t_hat[u[x]])
            && id(&|x| t[u_hat[x]])
            && id(&|x| u_hat[t[x]])
            && (0..n).all(|x| u[t[x]] == t[u[x]])
            && s.is_square_free() == (id(&|x| u[x]) && id(&|x| t[x]))
            && (0..n).all(|x| s.r(t[x], x) == (t[x], x)) == (0..n).all(|x| s.r(x, u[x]) == (x, u[x]));
        ensure(ok, format!("diagonal identities fail on {s:?}"))?;
    }
    let summary = entries(report, &[names::DIAG_IDENTITIES, names::DIAG_THEOREMS])?;
    Ok(format!("{} solutions recomputed; {summary}", nd.len()))
}

fn integrity() -> Verdict {
    let tables = |v: Vec<FiniteSolution>| v.into_iter().map(FiniteSolution::into_tables).collect::<Vec<Tables>>();
    let sorted = |mut v: Vec<Tables>| {
        v.sort();
        v
    };
    let n2 = tables(population(2, &EnumFilter::all()));
    ensure(n2 == sorted(oracle::full_scan(2, false, false, 1)), "n=2 unrestricted differs from the oracle")?;
    let n3 = tables(population(3, &EnumFilter::left_nd()));
    ensure(n3 == sorted(oracle::full_scan(3, true, false, 2)), "n=3 left-nd differs from the oracle")?;
    let frozen = search::frozen_census();
    for workers in [1, 2, 4] {
        for (n, f) in search::census_cells() {
            let got = search::census_with_workers(n, &f, workers).map_err(|e| e.to_string())?;
            ensure(frozen.contains(&got), format!("workers={workers}: {got} not in the checked-in census"))?;
        }
    }
    Ok(format!("{} + {} solutions match the oracle; {} census cells at 1, 2, 4 workers", n2.len(), n3.len(), frozen.len()))
}

fn qcycles(report: &SuiteReport) -> Verdict {
    let mut wanted = prefixed(report, names::QCYCLE_PREFIX);
    wanted.sort();
    ensure(!wanted.is_empty(), "no q-cycle entries")?;
    let refs: Vec<&str> = wanted.iter().map(String::as_str).collect();
    let summary = entries(report, &refs)?;
    let q = QCycleSet::from_rows(&vec![vec![0, 1, 2]; 3], &vec![vec![0; 3]; 3]).map_err(|e| e.to_string())?;
    ensure(qcycle::validate_qcycle(&q).is_empty(), "constant-colon example is not a q-cycle set")?;
    let d = qcycle::qcycle_diagonals(&q);
    ensure(d.u == [0, 1, 2] && d.u_hat == [0, 0, 0] && d.commute(), format!("U = {:?}, Uhat = {:?}", d.u, d.u_hat))?;
    let lnd: usize = (1..=3).map(|n| population(n, &EnumFilter::left_nd()).len()).sum();
    let checked = report.theorem(&format!("{}to_solution(from_solution(X)) = X", names::QCYCLE_PREFIX)).map_or(0, |t| t.checked);
    ensure(checked >= lnd, format!("round trip checked on {checked} < {lnd} left non-degenerate solutions"))?;
    Ok(format!("{summary}; U = id, Uhat = 0 on the constant-colon set"))
}

fn identities(report: &SuiteReport) -> Verdict {
    let wanted = prefixed(report, names::IDENTITY_PREFIX);
    for id in ["peel first step", "split at any height", "inverse diagonal returns the base", "inverse first argument drops a level", "permutational tower forgets its base"] {
        ensure(wanted.iter().any(|w| w.ends_with(id)), format!("no entry for {id}"))?;
    }
    let refs: Vec<&str> = wanted.iter().map(String::as_str).collect();
    entries(report, &refs)
}

fn main() {
    let start = Instant::now();
    let mut results: Vec<(usize, &str, Verdict)> = vec![(1, "exm1 fixture", exm1())];

    let report = ybe::suite::theorem_suite(4).expect("suite runs");
    let nd = nd_populations();
    let expected_population: Vec<usize> = (1..=3)
        .map(|n| search::frozen_record(n, &EnumFilter::all()).unwrap().raw)
        .chain([search::frozen_record(4, &EnumFilter::nd()).unwrap().raw])
        .collect();
    let population_ok = report.population.values().copied().collect::<Vec<_>>() == expected_population;

    let mut with_population = |c: usize, name: &'static str, v: Verdict| {
        let v = if population_ok { v } else { Err(format!("population {:?} is incomplete", report.population)) };
        results.push((c, name, v));
    };
    with_population(2, "non-degenerate implies bijective", bijective(&report, &nd));
    with_population(3, "diagonal maps", diagonals(&report, &nd));
    with_population(4, "retract theory", entries(&report, &[names::RET_COINCIDE, names::RET_DUALITY]));
    with_population(5, "multipermutation equivalences", entries(&report, &[names::MULTIEQ, names::MULTIEQ_REGULAR]));
    with_population(
        6,
        "reductivity chain",
        entries(
            &report,
            &[
                names::RED_PERM,
                names::PERM_RED,
                names::SQF_RED,
                names::STAR,
                names::DISTRIBUTIVE,
                names::REDPRIM,
                names::MPL_PRIME,
                names::RET_LEVELS,
            ],
        ),
    );
    with_population(7, "orbits and decomposability", entries(&report, &[names::ORB_THEOREM, names::SQF_DEC, names::KRED_DEC]));
    with_population(8, "q-cycle correspondence", qcycles(&report));
    with_population(9, "tower identities", identities(&report));
    results.push((10, "enumeration integrity", integrity()));

    let mut failed = 0;
    for (c, name, v) in &results {
        match v {
            Ok(detail) => println!("PASS criterion {c:>2} {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {c:>2} {name}: {why}");
            }
        }
    }
    println!("{} of {} criteria passed in {:.1} s", results.len() - failed, results.len(), start.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
