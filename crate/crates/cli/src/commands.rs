use std::fs;
use std::path::Path;

use serde_json::{json, Value};
use ybe::diagonals::{check_diagonal_identities, check_diagonal_theorems, diagonal_maps};
use ybe::omega::{self, Budget, OmegaSymbol, OmegaVerdict, Operations};
use ybe::qcycle::{self, QCycleSet};
use ybe::retract::{self, Partition, RetractKind};
use ybe::search::{self, EnumFilter};
use ybe::solution::{properties, validate_braid, Property};
use ybe::suite::{self, SuiteConfig};
use ybe::{CheckReport, FiniteSolution, Tables};

use crate::document::SolutionDocument;
use crate::error::{CliError, CliResult, EXIT_FAILURE, EXIT_OK};
use crate::{AnalyzeArgs, EnumerateArgs, Outcome};

/// Violations listed in text output; the JSON report carries all of them.
const SHOWN_VIOLATIONS: usize = 20;

fn workers(requested: Option<usize>) -> usize {
    requested
        .filter(|&w| w > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

fn budget(seed: Option<u64>) -> Budget {
    seed.map_or_else(Budget::default, Budget::with_seed)
}

fn property_lines(doc: &SolutionDocument, t: &Tables) -> (Vec<String>, Value) {
    let report = properties(t);
    let mut lines = Vec::new();
    let mut flags = serde_json::Map::new();
    for (p, name) in [
        (Property::LeftNondegenerate, "left_nondegenerate"),
        (Property::RightNondegenerate, "right_nondegenerate"),
        (Property::Nondegenerate, "nondegenerate"),
        (Property::Bijective, "bijective"),
        (Property::Involutive, "involutive"),
        (Property::SquareFree, "square_free"),
    ] {
        let holds = report.flag(p);
        let mut line = format!("{name}: {holds}");
        if let Some(w) = report.witnesses.get(&p) {
            let shown = if p == Property::Nondegenerate { &w[1..] } else { &w[..] };
            line.push_str(&format!("  witness {}", doc.labelled(shown)));
        }
        lines.push(line);
        flags.insert(name.to_string(), json!(holds));
    }
    let value = json!({ "flags": flags, "witnesses": report.witnesses });
    (lines, value)
}

pub fn validate(path: &Path) -> CliResult<Outcome> {
    let doc = SolutionDocument::load(path)?;
    let mut lines = Vec::new();
    let mut out = serde_json::Map::new();
    out.insert("n".into(), json!(doc.n));
    if doc.is_qcycle() {
        let q = doc.to_qcycle()?;
        let violations = qcycle::validate_qcycle(&q);
        out.insert("kind".into(), json!("qcycle"));
        out.insert("qcycle_violations".into(), json!(violations));
        if !violations.is_empty() {
            lines.push(format!("q-cycle axioms: {} violation(s)", violations.len()));
            for v in violations.iter().take(SHOWN_VIOLATIONS) {
                if v[0] == 0 {
                    lines.push(format!("  dot row {} is not a bijection: {}", doc.label(v[1]), doc.labelled(&v[2..])));
                } else {
                    lines.push(format!("  axiom {} fails at {}", v[0], doc.labelled(&v[1..])));
                }
            }
            return Ok(Outcome { code: EXIT_FAILURE, text: lines.join("\n"), json: Value::Object(out) });
        }
        lines.push("q-cycle axioms: hold".into());
        lines.push(format!("regular: {}", qcycle::is_regular(&q)));
        out.insert("regular".into(), json!(qcycle::is_regular(&q)));
    } else {
        out.insert("kind".into(), json!("solution"));
    }
    let t = doc.tables()?;
    let violations = validate_braid(&t);
    out.insert("braid_ok".into(), json!(violations.is_empty()));
    out.insert("braid_violations".into(), json!(violations));
    if !violations.is_empty() {
        lines.push(format!("braid relation: fails on {} triple(s)", violations.len()));
        for v in violations.iter().take(SHOWN_VIOLATIONS) {
            lines.push(format!("  {}", doc.labelled(v)));
        }
        return Ok(Outcome { code: EXIT_FAILURE, text: lines.join("\n"), json: Value::Object(out) });
    }
    lines.push("braid relation: holds".into());
    let (plines, pvalue) = property_lines(&doc, &t);
    lines.extend(plines);
    out.insert("properties".into(), pvalue);
    Ok(Outcome { code: EXIT_OK, text: lines.join("\n"), json: Value::Object(out) })
}

struct Section {
    name: &'static str,
    lines: Vec<String>,
    value: Value,
    /// True when a statement that must hold was found to fail.
    failed: bool,
    /// Error raised after part of the section was produced.
    error: Option<CliError>,
}

impl Section {
    fn new(name: &'static str) -> Self {
        Section { name, lines: Vec::new(), value: json!({}), failed: false, error: None }
    }
}

fn checks_section(section: &mut Section, report: &CheckReport) {
    for c in &report.checks {
        let status = if c.holds() { "holds" } else { "FAILS" };
        section.lines.push(format!("{}: {status} ({} checked)", c.name, c.checked));
        if let Some(w) = c.witnesses.first() {
            section.lines.push(format!("  first witness {w:?}"));
        }
    }
    section.failed |= !report.all_hold();
}

fn map_line(doc: &SolutionDocument, name: &str, map: &Option<Vec<usize>>) -> String {
    match map {
        Some(m) => {
            let shown: Vec<String> = m.iter().map(|&v| doc.label(v)).collect();
            let perm = if ybe::perm::is_permutation(&m.iter().map(|&v| v as u8).collect::<Vec<_>>()) {
                ""
            } else {
                "  (not a permutation)"
            };
            format!("{name} = [{}]{perm}", shown.join(", "))
        }
        None => format!("{name}: undefined"),
    }
}

fn diag_section(doc: &SolutionDocument, sol: &FiniteSolution) -> CliResult<Section> {
    let mut s = Section::new("diag");
    let d = diagonal_maps(sol);
    for (name, map) in [("U", &d.u), ("T", &d.t), ("Uhat", &d.u_hat), ("That", &d.t_hat)] {
        s.lines.push(map_line(doc, name, map));
    }
    let constant_u = d.u.as_ref().is_some_and(|u| u.iter().all(|&v| v == u[0]));
    if constant_u && sol.n() > 1 {
        s.lines.push("U is constant".into());
    }
    let mut value = json!({ "maps": d, "u_constant": constant_u });
    if sol.is_nondegenerate() {
        let mut report = check_diagonal_identities(sol)?;
        report.extend(check_diagonal_theorems(sol)?);
        checks_section(&mut s, &report);
        value["checks"] = json!(report);
    }
    s.value = value;
    Ok(s)
}

fn blocks_line(doc: &SolutionDocument, name: &str, p: &Partition) -> String {
    let blocks: Vec<String> = p
        .blocks()
        .iter()
        .map(|b| format!("{{{}}}", b.iter().map(|&x| doc.label(x)).collect::<Vec<_>>().join(",")))
        .collect();
    format!("{name} blocks: {}", blocks.join(" "))
}

fn retract_section(doc: &SolutionDocument, sol: &FiniteSolution) -> CliResult<Section> {
    let mut s = Section::new("retract");
    let p = retract::retract_relation(sol, RetractKind::Forward)?;
    s.lines.push(blocks_line(doc, "~", &p));
    let mut value = json!({ "blocks": p.blocks() });
    for (kind, name, key) in [(RetractKind::Inverse, "~hat", "inverse_blocks"), (RetractKind::Colon, "~:", "colon_blocks")] {
        if let Ok(q) = retract::retract_relation(sol, kind) {
            s.lines.push(blocks_line(doc, name, &q));
            value[key] = json!(q.blocks());
        }
    }
    let mut compat = serde_json::Map::new();
    for op in OmegaSymbol::BASIC {
        let w = retract::check_compatibility(sol, &p, op)?;
        match w {
            None => s.lines.push(format!("~ compatible with {op}")),
            Some([x1, x2, y1, y2]) => {
                let table = Operations::new(sol);
                let (a, b) = (table.apply(op, x1, y1)?, table.apply(op, x2, y2)?);
                s.lines.push(format!(
                    "~ not compatible with {op}: {x1} ~ {x2}, {y1} ~ {y2} but {op}_{x1}({y1}) = {a} and {op}_{x2}({y2}) = {b} are not related",
                    x1 = doc.label(x1),
                    x2 = doc.label(x2),
                    y1 = doc.label(y1),
                    y2 = doc.label(y2),
                    a = doc.label(a),
                    b = doc.label(b),
                ));
            }
        }
        compat.insert(op.to_string(), json!(w));
    }
    value["compatibility"] = Value::Object(compat);
    s.value = value;
    match retract::retract(sol) {
        Ok(ret) => {
            s.lines.push(format!("Ret has {} element(s)", ret.quotient.n()));
            s.value["quotient"] = json!(ret.quotient);
            s.value["projection"] = json!(ret.projection);
        }
        Err(e) => s.error = Some(e.into()),
    }
    Ok(s)
}

fn mpl_section(sol: &FiniteSolution) -> CliResult<Section> {
    let mut s = Section::new("mpl");
    if !sol.is_nondegenerate() {
        return Err(ybe::Error::NotNondegenerate.into());
    }
    let sizes: Vec<usize> = retract::retract_chain(sol)?.iter().map(|c| c.n()).collect();
    s.lines.push(format!("retraction sizes: {sizes:?}"));
    s.value = json!({ "chain_sizes": sizes });
    match retract::mpl(sol) {
        Ok(level) => {
            s.lines.push(format!("mpl = {level}"));
            s.value["mpl"] = json!(level);
        }
        Err(e) => s.error = Some(e.into()),
    }
    match retract::mpl_prime(sol) {
        Ok(prime) => {
            s.lines.push(format!("mpl' = {prime}"));
            s.value["mpl_prime"] = json!(prime);
        }
        Err(e) => {
            s.error.get_or_insert(e.into());
        }
    }
    Ok(s)
}

fn witness_line(doc: &SolutionDocument, v: &OmegaVerdict) -> Option<String> {
    let w = v.witness.as_ref()?;
    let word: String = w.word.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(",");
    let base = match w.y {
        Some(y) => format!("bases {} and {}", doc.label(w.x), doc.label(y)),
        None => format!("base {}", doc.label(w.x)),
    };
    Some(format!(
        "  witness word ({word}), {base}, arguments {} give {} and {}",
        doc.labelled(&w.zs),
        doc.label(w.values.0),
        doc.label(w.values.1)
    ))
}

fn tower_section(
    doc: &SolutionDocument,
    sol: &FiniteSolution,
    name: &'static str,
    max_k: usize,
    budget: &Budget,
) -> CliResult<Section> {
    let mut s = Section::new(name);
    let ops = Operations::new(sol);
    let reductive = name == "kred";
    let adjective = if reductive { "reductive" } else { "permutational" };
    let mut rows = Vec::new();
    let mut least = None;
    for k in 1..=max_k {
        let v = if reductive {
            omega::is_k_reductive_with(&ops, k, budget)?
        } else {
            omega::is_k_permutational_with(&ops, k, &OmegaSymbol::BASIC, budget)?
        };
        let how = if v.exhaustive { "exhaustive" } else { "sampled" };
        s.lines.push(format!("{k}-{adjective}: {} ({how})", v.holds));
        s.lines.extend(witness_line(doc, &v));
        if v.holds && least.is_none() {
            least = Some(k);
        }
        rows.push(json!({ "k": k, "verdict": v }));
    }
    match least {
        Some(k) => s.lines.push(format!("least k <= {max_k}: {k}")),
        None => s.lines.push(format!("not k-{adjective} for k <= {max_k}")),
    }
    s.value = json!({ "max_k": max_k, "least": least, "verdicts": rows });
    Ok(s)
}

fn qcycle_lines(doc: &SolutionDocument, s: &mut Section, q: &QCycleSet) {
    let violations = qcycle::validate_qcycle(q);
    let d = qcycle::qcycle_diagonals(q);
    s.lines.push(format!("axioms: {}", if violations.is_empty() { "hold" } else { "FAIL" }));
    s.lines.push(format!("regular: {}", qcycle::is_regular(q)));
    s.lines.push(map_line(doc, "U(x) = x.x", &Some(d.u.clone())));
    s.lines.push(map_line(doc, "Uhat(x) = x:x", &Some(d.u_hat.clone())));
    s.lines.push(format!("U and Uhat commute: {}", d.commute()));
    s.failed |= !violations.is_empty() || !d.commute();
    s.value = json!({
        "dot": q.dot_rows(),
        "colon": q.colon_rows(),
        "violations": violations,
        "regular": qcycle::is_regular(q),
        "diagonals": d,
    });
}

fn qcycle_section(doc: &SolutionDocument, sol: &FiniteSolution) -> CliResult<Section> {
    let mut s = Section::new("qcycle");
    let q = doc.to_qcycle()?;
    qcycle_lines(doc, &mut s, &q);
    let report = qcycle::check_correspondence(sol)?;
    checks_section(&mut s, &report);
    s.value["correspondence"] = json!(report);
    Ok(s)
}

fn orbits_section(doc: &SolutionDocument, sol: &FiniteSolution) -> CliResult<Section> {
    let mut s = Section::new("orbits");
    let d = ybe::orbits::orbit_decomposition(sol)?;
    let decomposable = ybe::orbits::is_decomposable(sol)?;
    s.lines.push(blocks_line(doc, "orbit", &d.partition));
    s.lines.push(format!("decomposable: {decomposable}"));
    s.value = json!({ "orbits": d.partition.blocks(), "decomposable": decomposable, "suborbits": d.suborbits });
    Ok(s)
}

fn star_section(doc: &SolutionDocument, sol: &FiniteSolution) -> Section {
    let mut s = Section::new("star");
    let r = omega::check_star_conditions(sol);
    s.lines.push(format!("sigma condition: {}", r.sigma_holds));
    s.lines.push(format!("tau condition: {}", r.tau_holds));
    for (name, fixers) in [("sigma", &r.sigma_fixers), ("tau", &r.tau_fixers)] {
        if let Some(x) = fixers.iter().position(Option::is_none) {
            s.lines.push(format!("  no {name}-translation fixes {}", doc.label(x)));
        }
    }
    s.value = json!(r);
    s
}

fn identities_section(sol: &FiniteSolution, max_k: usize, budget: &Budget) -> Section {
    let mut s = Section::new("identities");
    let report = omega::check_omega_identities(sol, max_k.max(1), budget);
    checks_section(&mut s, &report);
    s.value = json!(report);
    s
}

pub fn analyze(args: &AnalyzeArgs) -> CliResult<Outcome> {
    let doc = SolutionDocument::load(&args.path)?;
    let sol = doc.to_solution()?;
    let budget = budget(args.seed);
    let want = |flag: bool| flag || args.all;

    let mut lines = vec![format!("n = {}", sol.n())];
    let (plines, pvalue) = property_lines(&doc, &sol);
    lines.extend(plines);
    let mut sections = serde_json::Map::new();
    sections.insert("properties".into(), pvalue);

    type Runner<'a> = Box<dyn Fn() -> CliResult<Section> + 'a>;
    let runners: Vec<(bool, &str, Runner)> = vec![
        (want(args.diag), "diag", Box::new(|| diag_section(&doc, &sol))),
        (want(args.retract), "retract", Box::new(|| retract_section(&doc, &sol))),
        (want(args.mpl), "mpl", Box::new(|| mpl_section(&sol))),
        (want(args.kperm), "kperm", Box::new(|| tower_section(&doc, &sol, "kperm", args.max_k, &budget))),
        (want(args.kred), "kred", Box::new(|| tower_section(&doc, &sol, "kred", args.max_k, &budget))),
        (want(args.qcycle), "qcycle", Box::new(|| qcycle_section(&doc, &sol))),
        (want(args.orbits), "orbits", Box::new(|| orbits_section(&doc, &sol))),
        (want(args.star), "star", Box::new(|| Ok(star_section(&doc, &sol)))),
        (want(args.identities), "identities", Box::new(|| Ok(identities_section(&sol, args.max_k, &budget)))),
    ];

    let mut code = EXIT_OK;
    for (enabled, name, runner) in runners {
        if !enabled {
            continue;
        }
        lines.push(String::new());
        lines.push(format!("[{name}]"));
        let (section, error) = match runner() {
            Ok(mut section) => {
                let error = section.error.take();
                (Some(section), error)
            }
            Err(e) => (None, Some(e)),
        };
        let mut value = json!({});
        if let Some(section) = section {
            debug_assert_eq!(section.name, name);
            lines.extend(section.lines);
            if section.failed && code == EXIT_OK {
                code = EXIT_FAILURE;
            }
            value = section.value;
        }
        if let Some(e) = error {
            let status = e.exit_code();
            // With --all an unmet precondition only skips the section.
            let skipped = args.all && status != EXIT_FAILURE;
            lines.push(format!("{}: {e}", if skipped { "skipped" } else { "error" }));
            if !args.all && code == EXIT_OK {
                code = status;
            }
            value["error"] = json!({ "name": e.name(), "message": e.to_string(), "skipped": skipped });
        }
        sections.insert(name.into(), value);
    }
    let value = json!({ "n": sol.n(), "sections": sections });
    Ok(Outcome { code, text: lines.join("\n"), json: value })
}

fn filter_of(args: &EnumerateArgs) -> EnumFilter {
    EnumFilter {
        left_nd: args.nd || args.left_nd,
        right_nd: args.nd || args.right_nd,
        bijective: args.bijective,
        involutive: args.involutive,
        square_free: args.square_free,
        up_to_iso: args.iso,
    }
}

pub fn enumerate(args: &EnumerateArgs) -> CliResult<Outcome> {
    let filter = filter_of(args);
    search::check_size(args.n, &filter)?;
    let w = workers(args.workers);
    let mut lines = Vec::new();
    let mut value = json!({ "n": args.n, "filter": filter.signature(), "iso": args.iso });
    let mut code = EXIT_OK;

    let sols = search::enumerate_with_workers(args.n, &filter, w)?;
    lines.push(format!("n={} filter={}{}: {} solution(s)", args.n, filter, if args.iso { " up to isomorphism" } else { "" }, sols.len()));
    value["count"] = json!(sols.len());

    if let Some(dir) = &args.out {
        fs::create_dir_all(dir).map_err(|e| CliError::Io(dir.display().to_string(), e.to_string()))?;
        let width = sols.len().to_string().len().max(4);
        for (i, s) in sols.iter().enumerate() {
            let path = dir.join(format!("solution-{i:0width$}.json"));
            fs::write(&path, SolutionDocument::solution(s, None).emit())
                .map_err(|e| CliError::Io(path.display().to_string(), e.to_string()))?;
        }
        lines.push(format!("wrote {} file(s) to {}", sols.len(), dir.display()));
        value["out"] = json!(dir.display().to_string());
    }

    if args.census || args.check_frozen {
        let record = search::census_with_workers(args.n, &filter, w)?;
        lines.push(format!("census {record}"));
        value["census"] = json!(record);
        if args.check_frozen {
            match search::frozen_record(args.n, &filter) {
                Some(frozen) if frozen == record => {
                    lines.push("matches the checked-in census".into());
                    value["frozen"] = json!("match");
                }
                Some(frozen) => {
                    lines.push(format!("MISMATCH: checked-in census has {frozen}"));
                    value["frozen"] = json!("mismatch");
                    code = EXIT_FAILURE;
                }
                None => {
                    let e = CliError::FrozenMismatch(format!("no checked-in record for n={} filter={filter}", args.n));
                    lines.push(format!("error: {e}"));
                    value["frozen"] = json!("missing");
                    code = e.exit_code();
                }
            }
        }
    }
    Ok(Outcome { code, text: lines.join("\n"), json: value })
}

pub fn suite(n_max: usize, seed: Option<u64>, requested_workers: Option<usize>) -> CliResult<Outcome> {
    let cfg = SuiteConfig { n_max, budget: budget(seed), workers: workers(requested_workers) };
    let report = suite::theorem_suite_with(&cfg)?;
    let mut lines = Vec::new();
    let sizes: Vec<String> = report.population.iter().map(|(n, c)| format!("n={n}: {c}")).collect();
    lines.push(format!("population {}", sizes.join(", ")));
    for t in &report.theorems {
        let status = if t.passed() { "PASS" } else { "FAIL" };
        lines.push(format!("{status} {} ({} checked, {} failure(s))", t.name, t.checked, t.failures));
        for c in &t.counterexamples {
            lines.push(format!("  {:?}: {}", c.solution, c.detail));
        }
    }
    for o in &report.observations {
        lines.push(format!("observation: {} ({} of {} examined)", o.name, o.found, o.examined));
    }
    for r in &report.census {
        lines.push(format!("census {r}"));
    }
    lines.push(format!("elapsed {} ms", report.elapsed_ms));
    let code = if report.passed() { EXIT_OK } else { EXIT_FAILURE };
    lines.push(if code == EXIT_OK { "all theorem checks passed".into() } else { "counterexamples found".into() });
    Ok(Outcome { code, text: lines.join("\n"), json: json!(report) })
}

pub fn census_oracle(out: Option<&Path>, requested_workers: Option<usize>) -> CliResult<Outcome> {
    let records = search::oracle::census_all(workers(requested_workers))?;
    let text = search::format_census(&records);
    if let Some(path) = out {
        fs::write(path, &text).map_err(|e| CliError::Io(path.display().to_string(), e.to_string()))?;
    }
    let code = if records == search::frozen_census() { EXIT_OK } else { EXIT_FAILURE };
    Ok(Outcome { code, text: text.trim_end().to_string(), json: json!(records) })
}
