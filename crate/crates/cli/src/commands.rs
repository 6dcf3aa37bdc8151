use std::fs;
use std::path::{Path, PathBuf};

use defset_core::*;

use crate::report::*;

fn read_grid(path: &Path) -> Result<(PartialColoring, String), CliError> {
    let bytes = fs::read(path).map_err(|source| CliError::Io {
        path: path.into(),
        source,
    })?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| {
        CliError::Parse(ParseError::Syntax {
            line: 1,
            message: "file is not UTF-8".into(),
        })
    })?;
    Ok((parse_grid(&text)?, digest(&bytes)))
}

fn write_grid(path: &Path, pc: &PartialColoring) -> Result<(), CliError> {
    fs::write(path, pc.to_string()).map_err(|source| CliError::Io {
        path: path.into(),
        source,
    })
}

fn shape(report: &mut CommandReport, pc: &PartialColoring) {
    report.n = Some(pc.order());
    report.k = Some(pc.num_colors());
    report.empty = Some(pc.empty_count());
}

/// Input digest for commands that take parameters rather than a file.
pub fn params_digest(words: &[&str]) -> String {
    digest(words.join(" ").as_bytes())
}

pub fn construct(
    kind: &str,
    n: Option<usize>,
    out: Option<&Path>,
) -> Result<CommandReport, CliError> {
    let kind: ConstructionKind = kind
        .parse()
        .map_err(|e: ConstructionError| CliError::Usage(e.to_string()))?;
    let n = n.unwrap_or(kind.smallest_order());
    let pc = ConstructionSpec::new(kind, n)
        .and_then(|s| s.build())
        .map_err(|e| CliError::Usage(e.to_string()))?;

    let mut r = CommandReport::new(
        "construct",
        params_digest(&["construct", kind.name(), &n.to_string()]),
    );
    r.kind = Some(kind.name().into());
    shape(&mut r, &pc);
    let summary = format!(
        "{kind}: n={n} k={} empty={} colored={}",
        pc.num_colors(),
        pc.empty_count(),
        pc.colored_count()
    );
    match out {
        Some(path) => {
            write_grid(path, &pc)?;
            r.output = Some(path.into());
            r.line(format!("{summary} -> {}", path.display()));
        }
        None => {
            // Keep stdout a valid grid file; the summary is for humans.
            eprintln!("{summary}");
            r.text.push_str(&pc.to_string());
        }
    }
    r.witnesses = Some(vec![pc.to_string()]);
    Ok(r)
}

pub fn verify(
    path: &Path,
    cap: usize,
    budget: Option<u64>,
    out: Option<&Path>,
) -> Result<CommandReport, CliError> {
    if cap < 2 {
        return Err(CliError::Usage("--cap must be at least 2".into()));
    }
    let (pc, input) = read_grid(path)?;
    let mut r = CommandReport::new("verify", input);
    shape(&mut r, &pc);
    let opts = SolveOptions {
        cap,
        node_budget: budget,
    };
    let rep = count_extensions_with(&pc, &opts).map_err(|e| CliError::Budget(e.to_string()))?;

    r.verdict = Some(rep.verdict);
    r.nodes = Some(rep.nodes_explored);
    r.completions_found = Some(rep.completions.len());
    r.line(format!("verdict: {}", rep.verdict));
    r.line(format!("nodes: {}", rep.nodes_explored));
    if cap > 2 {
        r.line(format!(
            "completions found: {} (cap {cap})",
            rep.completions.len()
        ));
    }
    r.witnesses = Some(rep.completions.iter().map(|g| g.to_string()).collect());

    if let Some(done) = rep.completion() {
        match out {
            Some(p) => {
                write_grid(p, done)?;
                r.output = Some(p.into());
                r.line(format!("completion -> {}", p.display()));
            }
            None => r.text.push_str(&done.to_string()),
        }
    } else {
        for g in &rep.completions {
            r.line("");
            r.text.push_str(&g.to_string());
        }
    }
    r.exit_code = if rep.verdict == Verdict::Unique {
        EXIT_OK
    } else {
        EXIT_ASSERTION
    };
    Ok(r)
}

pub fn detect(path: &Path) -> Result<CommandReport, CliError> {
    let (pc, input) = read_grid(path)?;
    let mut r = CommandReport::new("detect", input);
    shape(&mut r, &pc);
    let found = detect_all(&pc);
    if found.is_empty() {
        r.line("none");
    }
    for w in &found {
        r.line(describe_witness(w));
    }
    // The hole bound only speaks about k = 2n - 2.
    if let Ok(ok) = check_uncolored_bound(&pc) {
        r.uncolored_bound_ok = Some(ok);
        r.line(format!(
            "uncolored bound: {} empty, at most {} allowed: {}",
            pc.empty_count(),
            8 * pc.order() / 5,
            if ok { "ok" } else { "exceeded" }
        ));
    }
    r.exit_code = if found.is_empty() {
        EXIT_OK
    } else {
        EXIT_ASSERTION
    };
    r.patterns = Some(found);
    Ok(r)
}

pub fn propagate(path: &Path, out: Option<&Path>) -> Result<CommandReport, CliError> {
    let (pc, input) = read_grid(path)?;
    let mut r = CommandReport::new("propagate", input);
    shape(&mut r, &pc);
    let (after, trace) = propagate_singletons(&pc);
    r.text.push_str(&trace.to_string());
    match out {
        Some(p) => {
            write_grid(p, &after)?;
            r.output = Some(p.into());
        }
        None => r.text.push_str(&after.to_string()),
    }
    r.empty = Some(after.empty_count());
    r.witnesses = Some(vec![after.to_string()]);
    r.trace = Some(trace);
    Ok(r)
}

pub struct SearchArgs {
    pub n: usize,
    pub k: usize,
    pub budget: f64,
    pub threads: Option<usize>,
    pub no_symmetry: bool,
    pub no_prune: bool,
    pub out: Option<PathBuf>,
}

pub fn search(args: &SearchArgs) -> Result<CommandReport, CliError> {
    let (n, k) = (args.n, args.k);
    if args.threads == Some(0) {
        return Err(CliError::Usage("--threads must be positive".into()));
    }
    let opts = SearchOptions {
        symmetry: !args.no_symmetry,
        prune: !args.no_prune,
        work_budget: args.budget,
        threads: args.threads,
    };
    let res = defining_number(n, k, &opts)?;

    let mut r = CommandReport::new(
        "search",
        params_digest(&["search", &n.to_string(), &k.to_string()]),
    );
    r.n = Some(n);
    r.k = Some(k);
    r.d = Some(res.d_value);
    r.known = res.known_value;
    r.novel = Some(res.known_value.is_none());
    // Subset counts depend on thread scheduling; squares do not.
    r.nodes = Some(res.squares_examined);
    r.witnesses = Some(vec![res.witness.to_string()]);

    let file = match &args.out {
        Some(p) => {
            write_grid(p, &res.witness)?;
            r.output = Some(p.clone());
            p.display().to_string()
        }
        None => "-".into(),
    };
    r.line(format!("{n} {k} {} {file}", res.d_value));
    match res.known_value {
        Some(v) => r.line(format!("# closed form: {v}")),
        None => r.line("# novel: no closed form known for these parameters; computed value"),
    }
    r.line(format!("# squares examined: {}", res.squares_examined));
    if args.out.is_none() {
        r.text.push_str(&res.witness.to_string());
    }
    Ok(r)
}
