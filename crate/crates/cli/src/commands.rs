use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, SystemTime, UNIX_EPOCH};

use anyhow::{bail, Context, Result};
use serde::Serialize;
use serde_json::{json, Map, Value};

use hyperturan_core::constructions::{build_meeting_family, ConstructionSpec, ConstructionVariant};
use hyperturan_core::exact::{max_edges_avoiding, saturation_fraction, SearchBudget};
use hyperturan_core::extract::{extract_with_trace, Outcome};
use hyperturan_core::formulas::{
    family_turan, kmw_bound, linear_path_turan, r_copies_turan, CycleVariant, Evaluation, FormulaParams,
};
use hyperturan_core::patterns::contains_disjoint_family;
use hyperturan_core::verify::{run_criterion, Grid, VerifyReport, CRITERIA};
use hyperturan_core::{edgelist, FamilySpec, KHypergraph, PatternKind, Vertex};

use crate::cli::{
    CheckArgs, ConstructArgs, ConstructVariant, CycleChoice, ExtractArgs, Format, FormulaArgs, FormulaVariant,
    GridChoice, OutputArgs, SearchArgs, VerifyArgs,
};

/// Comma-separated values and inclusive ranges `a-b` or `a..=b`.
pub fn parse_list(text: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let range = item.split_once("..=").or_else(|| item.split_once('-'));
        match range {
            Some((a, b)) => {
                let a: usize = a.trim().parse().with_context(|| format!("bad range start in `{item}`"))?;
                let b: usize = b.trim().parse().with_context(|| format!("bad range end in `{item}`"))?;
                if a > b {
                    bail!("empty range `{item}`");
                }
                out.extend(a..=b);
            }
            None => out.push(item.parse().with_context(|| format!("bad number `{item}`"))?),
        }
    }
    if out.is_empty() {
        bail!("empty list `{text}`");
    }
    Ok(out)
}

/// A length tuple such as `3,4` or `3+4`.
pub fn parse_lengths(text: &str) -> Result<Vec<usize>> {
    let out = text
        .split([',', '+'])
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<usize>().with_context(|| format!("bad length `{s}`")))
        .collect::<Result<Vec<_>>>()?;
    if out.is_empty() {
        bail!("no lengths in `{text}`");
    }
    Ok(out)
}

fn parse_vertices(text: &str) -> Result<Vec<Vertex>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<Vertex>().with_context(|| format!("bad vertex `{s}`")))
        .collect()
}

fn read_hypergraph(path: &Path) -> Result<KHypergraph> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    edgelist::parse(&text).with_context(|| format!("{}", path.display()))
}

fn emit(out: &OutputArgs, text: &str) -> Result<()> {
    match &out.out {
        Some(path) => fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

/// JSON document with the schema version and, unless reproducible, a
/// generation timestamp.
fn envelope(command: &str, reproducible: bool, body: Value) -> Value {
    let mut map = Map::new();
    map.insert("schema".into(), json!(1));
    map.insert("command".into(), json!(command));
    if !reproducible {
        let secs = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        map.insert("generated_unix".into(), json!(secs));
    }
    if let Value::Object(fields) = body {
        map.extend(fields);
    }
    Value::Object(map)
}

fn to_json(value: &Value) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn join(values: &[usize]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

#[derive(Debug, Serialize)]
struct FormulaRow {
    n: usize,
    k: usize,
    lengths: String,
    variant: &'static str,
    t: Option<usize>,
    /// `I` (minimal) or `J` (linear and path) when it applies.
    correction: String,
    value: String,
    within_hypothesis: bool,
}

impl FormulaRow {
    fn new(n: usize, k: usize, lengths: &[usize], variant: &'static str, e: Evaluation) -> Self {
        FormulaRow {
            n,
            k,
            lengths: join(lengths),
            variant,
            t: Some(e.t),
            correction: e.extra.to_string(),
            value: e.value.to_string(),
            within_hypothesis: e.within_hypothesis,
        }
    }
}

pub fn formula(args: &FormulaArgs) -> Result<ExitCode> {
    let ns = parse_list(&args.n)?;
    let ks = parse_list(&args.k)?;
    let tuples: Vec<Vec<usize>> = args.lengths.iter().map(|l| parse_lengths(l)).collect::<Result<_>>()?;
    if args.variant != FormulaVariant::Kmw && tuples.is_empty() {
        bail!("--lengths is required for the {:?} variant", args.variant);
    }
    let mut rows = Vec::new();
    for &n in &ns {
        for &k in &ks {
            match args.variant {
                FormulaVariant::Kmw => rows.push(FormulaRow {
                    n,
                    k,
                    lengths: String::new(),
                    variant: "kmw",
                    t: None,
                    correction: String::new(),
                    value: kmw_bound(n, k).to_string(),
                    within_hypothesis: k >= 3,
                }),
                FormulaVariant::Path => {
                    for lengths in &tuples {
                        let &[l] = lengths.as_slice() else {
                            bail!("the path variant takes one length per tuple, got `{}`", join(lengths));
                        };
                        rows.push(FormulaRow::new(n, k, lengths, "path", linear_path_turan(n, k, l)?));
                    }
                }
                FormulaVariant::Minimal | FormulaVariant::Linear => {
                    let (variant, name) = if args.variant == FormulaVariant::Minimal {
                        (CycleVariant::Minimal, "minimal")
                    } else {
                        (CycleVariant::Linear, "linear")
                    };
                    for lengths in &tuples {
                        let (shown, e) = match args.copies {
                            Some(r) => {
                                let &[l] = lengths.as_slice() else {
                                    bail!("--copies takes a single length, got `{}`", join(lengths));
                                };
                                (vec![l; r], r_copies_turan(n, k, l, r, variant)?)
                            }
                            None => {
                                let params = FormulaParams::new(n, k, lengths.clone(), variant)?;
                                (lengths.clone(), family_turan(&params))
                            }
                        };
                        rows.push(FormulaRow::new(n, k, &shown, name, e));
                    }
                }
            }
        }
    }
    let text = match args.output.format {
        Format::Json => to_json(&envelope("formula", args.output.reproducible, json!({ "rows": rows })))?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in &rows {
                w.serialize(r)?;
            }
            String::from_utf8(w.into_inner()?)?
        }
        Format::Text => {
            let mut table = vec![["n", "k", "lengths", "variant", "t", "I/J", "value", "valid"].map(String::from).to_vec()];
            for r in &rows {
                table.push(vec![
                    r.n.to_string(),
                    r.k.to_string(),
                    r.lengths.clone(),
                    r.variant.to_string(),
                    r.t.map(|t| t.to_string()).unwrap_or_default(),
                    r.correction.clone(),
                    r.value.clone(),
                    if r.within_hypothesis { "yes" } else { "no" }.to_string(),
                ]);
            }
            render_table(&table)
        }
    };
    emit(&args.output, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn render_table(rows: &[Vec<String>]) -> String {
    let cols = rows[0].len();
    let widths: Vec<usize> = (0..cols).map(|c| rows.iter().map(|r| r[c].len()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for r in rows {
        let cells: Vec<String> = r.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

pub fn construct(args: &ConstructArgs) -> Result<ExitCode> {
    let set = args.set.as_deref().map(parse_vertices).transpose()?;
    let graph = match args.variant {
        ConstructVariant::Meeting => {
            let Some(set) = set else { bail!("the meeting variant needs --set") };
            build_meeting_family(args.n, args.k, &set)?
        }
        variant => {
            let Some(lengths) = &args.lengths else { bail!("--lengths is required") };
            let variant = match variant {
                ConstructVariant::Minimal => ConstructionVariant::Minimal,
                ConstructVariant::Linear => ConstructionVariant::Linear,
                _ => ConstructionVariant::Path,
            };
            let mut spec = ConstructionSpec::new(args.n, args.k, &parse_lengths(lengths)?, variant);
            spec.s = set;
            spec.extra = args.extra.as_deref().map(parse_vertices).transpose()?;
            spec.build()?
        }
    };
    let text = edgelist::write(&graph);
    match &args.out {
        Some(path) => fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    log::info!("wrote {} edges", graph.edge_count());
    Ok(ExitCode::SUCCESS)
}

pub fn check(args: &CheckArgs) -> Result<ExitCode> {
    let h = read_hypergraph(&args.input)?;
    let spec = FamilySpec::parse(&args.spec, h.k())?;
    let found = contains_disjoint_family(&h, &spec)?;
    let text = match args.output.format {
        Format::Json => to_json(&envelope(
            "check",
            args.output.reproducible,
            json!({
                "spec": spec.to_string(),
                "n": h.n(),
                "k": h.k(),
                "edges": h.edge_count(),
                "found": found.is_some(),
                "witnesses": found,
            }),
        ))?,
        Format::Csv | Format::Text => match &found {
            None => "absent\n".to_string(),
            Some(ws) => {
                let mut s = String::from("found\n");
                for w in ws {
                    let edges: Vec<String> = w.edges.iter().map(|e| e.to_string()).collect();
                    s.push_str(&format!("{}:{} {}", w.kind.short_name(), w.length, edges.join(" ")));
                    if !w.connectors.is_empty() {
                        s.push_str(&format!(" connectors {:?}", w.connectors));
                    }
                    s.push('\n');
                }
                s
            }
        },
    };
    emit(&args.output, &text)?;
    Ok(ExitCode::SUCCESS)
}

pub fn extract(args: &ExtractArgs) -> Result<ExitCode> {
    let h = read_hypergraph(&args.input)?;
    let lengths = parse_lengths(&args.lengths)?;
    let variant = match args.variant {
        CycleChoice::Minimal => CycleVariant::Minimal,
        CycleChoice::Linear => CycleVariant::Linear,
    };
    let (result, mut trace) = extract_with_trace(&h, &lengths, variant);
    if args.output.reproducible {
        trace.strip_timings();
    }
    let ok = result.is_ok();
    let text = match args.output.format {
        Format::Json => {
            let (witnesses, error) = match &result {
                Ok(ws) => (json!(ws), Value::Null),
                Err(e) => (Value::Null, json!(e)),
            };
            to_json(&envelope(
                "extract",
                args.output.reproducible,
                json!({
                    "variant": variant,
                    "lengths": lengths,
                    "success": ok,
                    "witnesses": witnesses,
                    "error": error,
                    "trace": trace,
                }),
            ))?
        }
        Format::Csv | Format::Text => {
            let mut s = String::new();
            for l in &trace.levels {
                let outcome = match l.outcome {
                    Outcome::ProofPath => "proof path",
                    Outcome::CycleFallback => "cycle fallback",
                    Outcome::FullFallback => "full fallback",
                    Outcome::Failed => "failed",
                };
                s.push_str(&format!(
                    "level {} lengths {}: {}, |C| = {}, |T| = {}, |X| = {}, |Y| = {}, U = {:?}, |R_U| = {}",
                    l.depth,
                    join(&l.lengths),
                    outcome,
                    l.cycle_vertices.len(),
                    l.terminal_edges,
                    l.x_size,
                    l.y_size,
                    l.terminal_set,
                    l.r_u_size
                ));
                if let Some(f) = &l.failure {
                    s.push_str(&format!(", stopped at {}", f.stage));
                }
                s.push('\n');
            }
            match &result {
                Ok(ws) => {
                    for w in ws {
                        let edges: Vec<String> = w.edges.iter().map(|e| e.to_string()).collect();
                        s.push_str(&format!("{}-cycle {}\n", w.length, edges.join(" ")));
                    }
                }
                Err(e) => s.push_str(&format!("{e}\n")),
            }
            s
        }
    };
    emit(&args.output, &text)?;
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

pub fn search(args: &SearchArgs) -> Result<ExitCode> {
    if args.max_seconds.is_nan() || args.max_seconds <= 0.0 || args.max_nodes == 0 {
        bail!("--max-nodes and --max-seconds must be positive");
    }
    let spec = FamilySpec::parse(&args.spec, args.k)?;
    let budget = SearchBudget {
        max_nodes: args.max_nodes,
        max_time: Duration::from_secs_f64(args.max_seconds),
        symmetry: !args.no_symmetry,
    };
    let result = max_edges_avoiding(args.n, args.k, &spec, budget)?;
    let saturation = if args.saturation_samples > 0 {
        Some(saturation_fraction(&result.witness, &spec, args.saturation_samples, args.seed)?)
    } else {
        None
    };
    // the closed form, when the family is all minimal or all linear cycles
    let kinds: Vec<PatternKind> = spec.components.iter().map(|c| c.kind).collect();
    let variant = if kinds.iter().all(|&k| k == PatternKind::MinimalCycle) {
        Some(CycleVariant::Minimal)
    } else if kinds.iter().all(|&k| k == PatternKind::LinearCycle) {
        Some(CycleVariant::Linear)
    } else {
        None
    };
    let formula = variant.and_then(|v| {
        let lengths = spec.components.iter().map(|c| c.length).collect();
        FormulaParams::new(args.n, args.k, lengths, v).ok().map(|p| family_turan(&p).value)
    });
    let finding = formula.as_ref().map(|f| {
        let found = num_bigint::BigUint::from(result.max_edges);
        if !result.exhaustive {
            "lower bound only"
        } else if &found > f {
            "above formula"
        } else if &found < f {
            "below formula"
        } else {
            "equals formula"
        }
    });
    let text = match args.output.format {
        Format::Json => to_json(&envelope(
            "search",
            args.output.reproducible,
            json!({
                "n": args.n,
                "k": args.k,
                "spec": spec.to_string(),
                "max_edges": result.max_edges,
                "exhaustive": result.exhaustive,
                "nodes": result.nodes,
                "witness": result.witness.edges(),
                "formula": formula.as_ref().map(|f| f.to_string()),
                "comparison": finding,
                "saturation_fraction": saturation,
                "seed": args.seed,
            }),
        ))?,
        Format::Csv | Format::Text => {
            let mut s = format!(
                "max edges {} ({}) after {} nodes\n",
                result.max_edges,
                if result.exhaustive { "exhaustive" } else { "budget exhausted, lower bound" },
                result.nodes
            );
            if let (Some(f), Some(c)) = (&formula, finding) {
                s.push_str(&format!("formula {f}: {c}\n"));
            }
            if let Some(x) = saturation {
                s.push_str(&format!("saturation fraction {x:.4}\n"));
            }
            s.push_str(&edgelist::write(&result.witness));
            s
        }
    };
    emit(&args.output, &text)?;
    Ok(ExitCode::SUCCESS)
}

pub fn verify(args: &VerifyArgs) -> Result<ExitCode> {
    let grid = match args.grid {
        GridChoice::Small => Grid::Small,
        GridChoice::Full => Grid::Full,
    };
    let ids: Vec<u8> = match &args.criteria {
        Some(list) => parse_list(list)?
            .into_iter()
            .map(|i| match u8::try_from(i) {
                Ok(id) if CRITERIA.iter().any(|c| c.0 == id) => Ok(id),
                _ => bail!("unknown criterion {i}"),
            })
            .collect::<Result<_>>()?,
        None => CRITERIA.iter().map(|c| c.0).collect(),
    };
    let criteria: Vec<_> = ids.iter().map(|&id| run_criterion(id, grid, args.seed)).collect();
    let mut report = VerifyReport {
        grid,
        seed: args.seed,
        passed: criteria.iter().all(|c| c.passed),
        criteria,
    };
    if args.output.reproducible {
        report.strip_timings();
    }
    let text = match args.output.format {
        Format::Json => to_json(&envelope("verify", args.output.reproducible, serde_json::to_value(&report)?))?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["id", "name", "passed", "checks", "failures", "summary"])?;
            for c in &report.criteria {
                w.write_record([
                    c.id.to_string(),
                    c.name.clone(),
                    c.passed.to_string(),
                    c.checks.to_string(),
                    c.failures.to_string(),
                    c.summary.clone(),
                ])?;
            }
            String::from_utf8(w.into_inner()?)?
        }
        Format::Text => {
            let mut s = String::new();
            for c in &report.criteria {
                s.push_str(&format!(
                    "criterion {:>2} {}: {} ({})",
                    c.id,
                    c.name,
                    if c.passed { "PASS" } else { "FAIL" },
                    c.summary
                ));
                if let Some(ms) = c.elapsed_ms {
                    s.push_str(&format!(" [{ms} ms]"));
                }
                s.push('\n');
                for f in &c.failure_samples {
                    s.push_str(&format!("    {f}\n"));
                }
            }
            s.push_str(if report.passed { "all criteria passed\n" } else { "some criteria failed\n" });
            s
        }
    };
    emit(&args.output, &text)?;
    Ok(if report.passed { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}
