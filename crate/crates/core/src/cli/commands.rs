use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::json;

use super::manifest::Sink;
use super::{
    Cli, CliError, Command, ExperimentArgs, Format, GraphArgs, RunManifest, UsageContext,
    SCHEDULE_ENV,
};
use crate::chimera::{chimera_graph, find_native_embeddings, verify_embedding, EmbeddingMap};
use crate::error::Error;
use crate::experiment::{
    embedding_average, mimic_sweep, sweep, sweep_embeddings, uniform_grid, verdicts,
    write_curves_csv, Method, MimicConfig, MimicRun, ObservableCurve, SweepConfig,
};
use crate::graph::{are_isomorphic, catalog, parse_graph, Graph};
use crate::poly::{
    classical_spectrum_auto, co_ising, compose_rooted, find_co_rooted_trees, rooted_spectrum,
    vertex_identify, IsingPolynomial, RootedGraph, MAX_TREE_SEARCH,
};
use crate::quantum::{default_schedule, load_schedule, Observable, StochasticParams};

type CliResult<T = ()> = Result<T, CliError>;

pub(super) fn dispatch(cli: &Cli, stdout: &mut dyn Write) -> CliResult<RunManifest> {
    let mut sink = Sink::new(cli, stdout)?;
    let seed = cli.global.seed;
    let format = cli.global.format;
    match &cli.command {
        Command::Spectrum { graph, compare } => {
            spectrum(&mut sink, graph, compare.as_deref(), seed, format)?
        }
        Command::Check { first, second } => check(&mut sink, first, second, seed, format)?,
        Command::Compose {
            first,
            second,
            root1,
            root2,
        } => compose(&mut sink, (first, *root1), (second, *root2), seed, format)?,
        Command::SearchTrees { max_n } => search_trees(&mut sink, *max_n, format)?,
        Command::Sweep { graph, experiment } => {
            run_sweep(&mut sink, graph, experiment, seed, format)?
        }
        Command::Discriminate { graph, experiment } => {
            discriminate(&mut sink, graph, experiment, seed, format)?
        }
        Command::Mimic { graph, experiment } => mimic(&mut sink, graph, experiment, seed, format)?,
        Command::Embed { graph, m, k } => embed(&mut sink, graph, *m, *k, seed, format)?,
        Command::Catalog { name } => list_catalog(&mut sink, name.as_deref(), seed, format)?,
    }
    sink.finish(cli)
}

struct Named {
    name: String,
    graph: Graph,
}

fn read_input(sink: &mut Sink, path: &Path) -> CliResult<String> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Usage(Error::io(path, e)))?;
    sink.input(path.display().to_string(), text.as_bytes());
    Ok(text)
}

fn load_file(sink: &mut Sink, path: &Path) -> CliResult<Named> {
    let text = read_input(sink, path)?;
    let graph = parse_graph(&text)
        .map_err(|e| CliError::Usage(Error::invalid(format!("{}: {e}", path.display()))))?;
    let name = path.file_stem().map_or_else(
        || path.display().to_string(),
        |s| s.to_string_lossy().into_owned(),
    );
    Ok(Named { name, graph })
}

fn load_catalog(sink: &mut Sink, name: &str, seed: u64) -> CliResult<Named> {
    let graph = catalog::resolve(name, seed).usage()?;
    sink.input(format!("catalog:{name}"), graph.to_edge_list().as_bytes());
    Ok(Named {
        name: name.to_string(),
        graph,
    })
}

/// A catalog name, or else a graph file.
fn load_ref(sink: &mut Sink, reference: &str, seed: u64) -> CliResult<Named> {
    let path = Path::new(reference);
    if path.exists() {
        return load_file(sink, path);
    }
    let looks_like_path = reference.contains(['/', '\\', '.']);
    match load_catalog(sink, reference, seed) {
        Err(_) if looks_like_path => load_file(sink, path),
        other => other,
    }
}

fn load_graphs(sink: &mut Sink, args: &GraphArgs, seed: u64) -> CliResult<Vec<Named>> {
    let mut out = Vec::new();
    for name in &args.catalog {
        out.push(load_catalog(sink, name.trim(), seed)?);
    }
    for path in &args.files {
        out.push(load_file(sink, path)?);
    }
    if out.is_empty() {
        return Err(CliError::Usage(Error::invalid(
            "no graphs given; pass graph files or --catalog",
        )));
    }
    Ok(out)
}

fn load_one(sink: &mut Sink, args: &GraphArgs, seed: u64) -> CliResult<Named> {
    let mut gs = load_graphs(sink, args, seed)?;
    if gs.len() != 1 {
        return Err(CliError::Usage(Error::invalid(format!(
            "expected one graph, got {}",
            gs.len()
        ))));
    }
    Ok(gs.remove(0))
}

fn polynomial_csv(p: &IsingPolynomial) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["e", "m", "count"]).map_err(Error::from)?;
    for (&(e, m), c) in p.terms() {
        w.write_record([e.to_string(), m.to_string(), c.to_string()])
            .map_err(Error::from)?;
    }
    finish_csv(w)
}

fn finish_csv(w: csv::Writer<Vec<u8>>) -> CliResult<String> {
    let bytes = w
        .into_inner()
        .map_err(|e| Error::Csv(e.into_error().into()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn render_polynomial(p: &IsingPolynomial, format: Format) -> CliResult<(String, &'static str)> {
    Ok(match format {
        Format::Json => (p.to_json() + "\n", "json"),
        Format::Csv => (polynomial_csv(p)?, "csv"),
    })
}

fn spectrum(
    sink: &mut Sink,
    args: &GraphArgs,
    compare: Option<&str>,
    seed: u64,
    format: Option<Format>,
) -> CliResult {
    let g = load_one(sink, args, seed)?;
    let other = compare.map(|c| load_ref(sink, c, seed)).transpose()?;
    if sink.is_dry_run() {
        return Ok(());
    }
    let format = format.unwrap_or(Format::Json);
    let p = classical_spectrum_auto(&g.graph)?;
    let (text, ext) = render_polynomial(&p, format)?;
    sink.emit(
        &format!("{}_spectrum.{ext}", g.name),
        &text,
        other.is_none(),
    )?;
    if let Some(h) = other {
        let q = classical_spectrum_auto(&h.graph)?;
        let (text, ext) = render_polynomial(&q, format)?;
        sink.emit(&format!("{}_spectrum.{ext}", h.name), &text, false)?;
        sink.say(&format!("CO-ISING: {}", p == q))?;
    }
    Ok(())
}

fn check(
    sink: &mut Sink,
    first: &str,
    second: &str,
    seed: u64,
    format: Option<Format>,
) -> CliResult {
    let a = load_ref(sink, first, seed)?;
    let b = load_ref(sink, second, seed)?;
    if sink.is_dry_run() {
        return Ok(());
    }
    let co = co_ising(&a.graph, &b.graph)?;
    let iso = are_isomorphic(&a.graph, &b.graph);
    let (text, ext) = match format {
        Some(Format::Json) => {
            let v = json!({"first": a.name, "second": b.name, "co_ising": co, "isomorphic": iso});
            (
                serde_json::to_string_pretty(&v).map_err(Error::from)? + "\n",
                "json",
            )
        }
        Some(Format::Csv) => (
            format!(
                "first,second,co_ising,isomorphic\n{},{},{co},{iso}\n",
                a.name, b.name
            ),
            "csv",
        ),
        None => (format!("CO-ISING: {co}\nISOMORPHIC: {iso}\n"), "txt"),
    };
    sink.emit(&format!("check.{ext}"), &text, true)
}

fn rooted(g: Named, root: usize) -> CliResult<RootedGraph> {
    if root == 0 {
        return Err(CliError::Usage(Error::invalid("roots are 1-based")));
    }
    RootedGraph::new(g.graph, root - 1).usage()
}

fn compose(
    sink: &mut Sink,
    (first, root1): (&str, usize),
    (second, root2): (&str, usize),
    seed: u64,
    format: Option<Format>,
) -> CliResult {
    let a = rooted(load_ref(sink, first, seed)?, root1)?;
    let b = rooted(load_ref(sink, second, seed)?, root2)?;
    if sink.is_dry_run() {
        return Ok(());
    }
    let p = compose_rooted(&rooted_spectrum(&a)?, &rooted_spectrum(&b)?);
    let glued = vertex_identify(&a, &b);
    let (text, ext) = match format.unwrap_or(Format::Json) {
        Format::Json => {
            let v = json!({
                "graph": glued.graph.to_document(),
                "root": glued.root + 1,
                "polynomial": p.to_json_value(),
            });
            (
                serde_json::to_string_pretty(&v).map_err(Error::from)? + "\n",
                "json",
            )
        }
        Format::Csv => (polynomial_csv(&p)?, "csv"),
    };
    sink.emit("composite.txt", &glued.graph.to_edge_list(), false)?;
    sink.emit(&format!("compose.{ext}"), &text, true)
}

fn search_trees(sink: &mut Sink, max_n: usize, format: Option<Format>) -> CliResult {
    if max_n > MAX_TREE_SEARCH {
        return Err(CliError::Usage(Error::invalid(format!(
            "--max-n is limited to {MAX_TREE_SEARCH}"
        ))));
    }
    if sink.is_dry_run() {
        return Ok(());
    }
    let pairs = find_co_rooted_trees(max_n)?;
    let text = match format.unwrap_or(Format::Json) {
        Format::Json => {
            let side =
                |rg: &RootedGraph| json!({"graph": rg.graph.to_document(), "root": rg.root + 1});
            let v: Vec<_> = pairs
                .iter()
                .map(|(a, b)| json!({"first": side(a), "second": side(b)}))
                .collect();
            serde_json::to_string_pretty(&v).map_err(Error::from)? + "\n"
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["pair", "member", "n", "root", "edges"])
                .map_err(Error::from)?;
            for (k, (a, b)) in pairs.iter().enumerate() {
                for (member, rg) in [(1, a), (2, b)] {
                    w.write_record([
                        (k + 1).to_string(),
                        member.to_string(),
                        rg.graph.n().to_string(),
                        (rg.root + 1).to_string(),
                        rg.graph.to_listing(),
                    ])
                    .map_err(Error::from)?;
                }
            }
            finish_csv(w)?
        }
    };
    let ext = if format == Some(Format::Csv) {
        "csv"
    } else {
        "json"
    };
    sink.emit(&format!("tree_pairs.{ext}"), &text, true)
}

/// Uniform point count, or explicit comma-separated values.
fn parse_grid(text: &str) -> crate::error::Result<Vec<f64>> {
    if let Ok(points) = text.trim().parse::<usize>() {
        return uniform_grid(points);
    }
    text.split(',')
        .map(|v| {
            v.trim()
                .parse::<f64>()
                .map_err(|_| Error::invalid(format!("grid value `{v}` is not a number")))
        })
        .collect()
}

fn sweep_config(
    sink: &mut Sink,
    x: &ExperimentArgs,
    method: Method,
    seed: u64,
) -> CliResult<SweepConfig> {
    let s_grid = parse_grid(&x.grid).usage()?;
    let schedule_path = x
        .schedule
        .clone()
        .or_else(|| std::env::var_os(SCHEDULE_ENV).map(PathBuf::from));
    let schedule = match schedule_path {
        Some(p) => {
            let text = read_input(sink, &p)?;
            load_schedule(&text)
                .map_err(|e| CliError::Usage(Error::invalid(format!("{}: {e}", p.display()))))?
        }
        None => default_schedule(),
    };
    if x.probes == 0 || x.krylov == 0 {
        return Err(CliError::Usage(Error::invalid(
            "--probes and --krylov must be positive",
        )));
    }
    let cfg = SweepConfig {
        s_grid,
        beta: x.beta.unwrap_or(schedule.beta),
        schedule,
        method,
        seed,
        stochastic: StochasticParams {
            num_probes: x.probes,
            krylov_dim: x.krylov,
            ..StochasticParams::default()
        },
        mimic: MimicConfig {
            num_gauges: x.gauges,
            anneals_per_gauge: x.anneals,
            bootstrap_resamples: x.resamples,
            ..MimicConfig::default()
        },
    };
    cfg.validate().usage()?;
    Ok(cfg)
}

fn method_of(x: &ExperimentArgs) -> CliResult<Method> {
    x.method.as_deref().unwrap_or("dense").parse().usage()
}

/// Embeddings per graph, in graph order, or `None` without `--embeddings`
/// and in dry runs of a search.
fn embeddings_for(
    sink: &mut Sink,
    x: &ExperimentArgs,
    graphs: &[Named],
    seed: u64,
) -> CliResult<Option<Vec<Vec<EmbeddingMap>>>> {
    let Some(arg) = &x.embeddings else {
        return Ok(None);
    };
    if let Ok(k) = arg.trim().parse::<usize>() {
        if k == 0 {
            return Err(CliError::Usage(Error::invalid(
                "--embeddings needs a positive count",
            )));
        }
        let topo = chimera_graph(x.m).usage()?;
        if sink.is_dry_run() {
            return Ok(None);
        }
        return graphs
            .iter()
            .map(|g| search(g, &topo, k, seed))
            .collect::<CliResult<_>>()
            .map(Some);
    }
    let dir = Path::new(arg);
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| CliError::Usage(Error::io(dir, e)))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| {
            p.extension().is_some_and(|e| e == "json")
                && p.file_name()
                    .is_some_and(|f| f.to_string_lossy().contains("_embedding_"))
        })
        .collect();
    files.sort();
    let mut by_graph: BTreeMap<String, Vec<EmbeddingMap>> = BTreeMap::new();
    for path in &files {
        let text = read_input(sink, path)?;
        let e = EmbeddingMap::from_json(&text)
            .map_err(|err| CliError::Usage(Error::invalid(format!("{}: {err}", path.display()))))?;
        by_graph.entry(e.graph.clone()).or_default().push(e);
    }
    let mut out = Vec::new();
    for g in graphs {
        let list = by_graph.remove(&g.name).unwrap_or_default();
        if list.is_empty() {
            return Err(CliError::Usage(Error::invalid(format!(
                "no embeddings for {} in {}",
                g.name,
                dir.display()
            ))));
        }
        for e in &list {
            let topo = chimera_graph(e.chimera_m).usage()?;
            if !verify_embedding(&g.graph, &topo, e) {
                return Err(CliError::Usage(Error::invalid(format!(
                    "an embedding in {} is not a native embedding of {}",
                    dir.display(),
                    g.name
                ))));
            }
        }
        out.push(list);
    }
    Ok(Some(out))
}

/// Up to `k` embeddings, plus the failure to report when fewer were found.
fn search_partial(
    g: &Named,
    topo: &crate::chimera::ChimeraTopology,
    k: usize,
    seed: u64,
) -> (Vec<EmbeddingMap>, Option<CliError>) {
    let found = find_native_embeddings(&g.graph, &g.name, topo, k, seed);
    let shortfall = (found.embeddings.len() < k).then(|| {
        let why = if found.budget_exhausted {
            "the search budget ran out"
        } else {
            "no more exist"
        };
        CliError::Failure(Error::ResourceLimit(format!(
            "found {} of {k} embeddings of {} into C_{}: {why}",
            found.embeddings.len(),
            g.name,
            topo.m()
        )))
    });
    (found.embeddings, shortfall)
}

fn search(
    g: &Named,
    topo: &crate::chimera::ChimeraTopology,
    k: usize,
    seed: u64,
) -> CliResult<Vec<EmbeddingMap>> {
    match search_partial(g, topo, k, seed) {
        (found, None) => Ok(found),
        (_, Some(e)) => Err(e),
    }
}

fn render_curves(curves: &[ObservableCurve], format: Format) -> CliResult<(String, &'static str)> {
    Ok(match format {
        Format::Csv => {
            let mut buf = Vec::new();
            write_curves_csv(curves, &mut buf)?;
            (String::from_utf8(buf).expect("csv output is utf-8"), "csv")
        }
        Format::Json => (
            serde_json::to_string_pretty(curves).map_err(Error::from)? + "\n",
            "json",
        ),
    })
}

/// Curves for each graph (averaged over embeddings when given) and every
/// curve computed along the way, for output.
fn curve_sets(
    graphs: &[Named],
    cfg: &SweepConfig,
    embeddings: Option<&[Vec<EmbeddingMap>]>,
) -> CliResult<(Vec<Vec<ObservableCurve>>, Vec<ObservableCurve>)> {
    let mut sets = Vec::new();
    let mut all = Vec::new();
    for (k, g) in graphs.iter().enumerate() {
        let set = match embeddings {
            Some(e) => {
                let per = sweep_embeddings(&g.graph, &g.name, cfg, &e[k])?;
                all.extend(per.iter().flatten().cloned());
                embedding_average(&per)?
            }
            None => sweep(&g.graph, &g.name, cfg)?,
        };
        all.extend(set.iter().cloned());
        sets.push(set);
    }
    Ok((sets, all))
}

fn prepare(
    sink: &mut Sink,
    graph: &GraphArgs,
    x: &ExperimentArgs,
    method: Method,
    seed: u64,
) -> CliResult<(Vec<Named>, SweepConfig)> {
    let graphs = load_graphs(sink, graph, seed)?;
    let cfg = sweep_config(sink, x, method, seed)?;
    for g in &graphs {
        cfg.check_size(g.graph.n()).usage()?;
    }
    Ok((graphs, cfg))
}

fn run_sweep(
    sink: &mut Sink,
    graph: &GraphArgs,
    x: &ExperimentArgs,
    seed: u64,
    format: Option<Format>,
) -> CliResult {
    let (graphs, cfg) = prepare(sink, graph, x, method_of(x)?, seed)?;
    let embeddings = embeddings_for(sink, x, &graphs, seed)?;
    if sink.is_dry_run() {
        return Ok(());
    }
    let (_, all) = curve_sets(&graphs, &cfg, embeddings.as_deref())?;
    let (text, ext) = render_curves(&all, format.unwrap_or(Format::Csv))?;
    sink.emit(&format!("curves.{ext}"), &text, true)
}

fn discriminate(
    sink: &mut Sink,
    graph: &GraphArgs,
    x: &ExperimentArgs,
    seed: u64,
    format: Option<Format>,
) -> CliResult {
    let (graphs, cfg) = prepare(sink, graph, x, method_of(x)?, seed)?;
    if graphs.len() < 2 {
        return Err(CliError::Usage(Error::invalid(
            "discrimination needs at least two graphs",
        )));
    }
    let embeddings = embeddings_for(sink, x, &graphs, seed)?;
    if sink.is_dry_run() {
        return Ok(());
    }
    let (sets, all) = curve_sets(&graphs, &cfg, embeddings.as_deref())?;
    let v = verdicts(&sets)?;
    let (text, ext) = render_curves(&all, format.unwrap_or(Format::Csv))?;
    sink.emit(&format!("curves.{ext}"), &text, false)?;
    let verdict_json = serde_json::to_string_pretty(&v).map_err(Error::from)? + "\n";
    sink.emit("verdicts.json", &verdict_json, true)
}

fn gauge_rows(name: &str, runs: &[MimicRun], w: &mut csv::Writer<Vec<u8>>) -> CliResult {
    for run in runs {
        for row in &run.rows {
            let signs: String = row
                .signs
                .iter()
                .map(|&s| if s < 0 { '-' } else { '+' })
                .collect();
            let mut record = vec![
                name.to_string(),
                run.s_p.to_string(),
                row.gauge.to_string(),
                signs,
            ];
            record.extend(Observable::ALL.map(|o| row.observables.get(o).to_string()));
            w.write_record(&record).map_err(Error::from)?;
        }
    }
    Ok(())
}

fn mimic(
    sink: &mut Sink,
    graph: &GraphArgs,
    x: &ExperimentArgs,
    seed: u64,
    format: Option<Format>,
) -> CliResult {
    if x.method.as_deref().is_some_and(|m| m != "sampled") {
        return Err(CliError::Usage(Error::invalid(
            "mimic always uses the sampled method",
        )));
    }
    if x.embeddings.is_some() {
        return Err(CliError::Usage(Error::invalid(
            "mimic does not take --embeddings; use sweep --method sampled",
        )));
    }
    let (graphs, cfg) = prepare(sink, graph, x, Method::Sampled, seed)?;
    if sink.is_dry_run() {
        return Ok(());
    }
    let mut curves = Vec::new();
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["graph", "s_p", "gauge", "signs"];
    header.extend(Observable::ALL.map(Observable::name));
    w.write_record(&header).map_err(Error::from)?;
    for g in &graphs {
        let (c, runs) = mimic_sweep(&g.graph, &g.name, &cfg)?;
        gauge_rows(&g.name, &runs, &mut w)?;
        curves.extend(c);
    }
    sink.emit("gauges.csv", &finish_csv(w)?, false)?;
    let (text, ext) = render_curves(&curves, format.unwrap_or(Format::Csv))?;
    sink.emit(&format!("curves.{ext}"), &text, true)
}

fn embed(
    sink: &mut Sink,
    graph: &GraphArgs,
    m: usize,
    k: usize,
    seed: u64,
    format: Option<Format>,
) -> CliResult {
    let graphs = load_graphs(sink, graph, seed)?;
    if k == 0 {
        return Err(CliError::Usage(Error::invalid("--k must be positive")));
    }
    let topo = chimera_graph(m).usage()?;
    if sink.is_dry_run() {
        return Ok(());
    }
    let mut all = Vec::new();
    let mut shortfall = None;
    for g in &graphs {
        let (found, missing) = search_partial(g, &topo, k, seed);
        if let Some(e) = missing {
            shortfall.get_or_insert(e);
        }
        for (j, e) in found.iter().enumerate() {
            sink.emit(
                &format!("{}_embedding_{}.json", g.name, j + 1),
                &(e.to_json() + "\n"),
                false,
            )?;
        }
        all.extend(found);
    }
    let (text, ext) = match format.unwrap_or(Format::Json) {
        Format::Json => (
            serde_json::to_string_pretty(&all).map_err(Error::from)? + "\n",
            "json",
        ),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["graph", "embedding", "vertex", "qubit"])
                .map_err(Error::from)?;
            let mut index: BTreeMap<&str, usize> = BTreeMap::new();
            for e in &all {
                let j = index.entry(&e.graph).or_insert(0);
                *j += 1;
                for (v, q) in e.assignment.iter().enumerate() {
                    w.write_record([
                        e.graph.clone(),
                        j.to_string(),
                        (v + 1).to_string(),
                        q.to_string(),
                    ])
                    .map_err(Error::from)?;
                }
            }
            (finish_csv(w)?, "csv")
        }
    };
    sink.emit(&format!("embeddings.{ext}"), &text, true)?;
    match shortfall {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

fn list_catalog(
    sink: &mut Sink,
    name: Option<&str>,
    seed: u64,
    format: Option<Format>,
) -> CliResult {
    if let Some(name) = name {
        let g = load_catalog(sink, name, seed)?;
        let (text, ext) = match format {
            Some(Format::Json) => (g.graph.to_json() + "\n", "json"),
            _ => (g.graph.to_edge_list(), "txt"),
        };
        return sink.emit(&format!("{name}.{ext}"), &text, true);
    }
    let tuple_of = |name: &str| {
        catalog::TUPLES
            .iter()
            .position(|t| t.contains(&name))
            .map_or(0, |k| k + 1)
    };
    let rows: Vec<(String, usize, usize, usize)> = catalog::names()
        .into_iter()
        .map(|n| {
            let g = catalog::get(n)?;
            Ok((n.to_string(), g.n(), g.num_edges(), tuple_of(n)))
        })
        .collect::<crate::error::Result<_>>()?;
    let text = match format.unwrap_or(Format::Csv) {
        Format::Json => {
            let v: Vec<_> = rows
                .iter()
                .map(|(name, n, e, t)| json!({"name": name, "n": n, "edges": e, "tuple": t}))
                .collect();
            serde_json::to_string_pretty(&v).map_err(Error::from)? + "\n"
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["name", "n", "edges", "tuple"])
                .map_err(Error::from)?;
            for (name, n, e, t) in &rows {
                w.write_record([name.clone(), n.to_string(), e.to_string(), t.to_string()])
                    .map_err(Error::from)?;
            }
            finish_csv(w)?
        }
    };
    let ext = if format == Some(Format::Json) {
        "json"
    } else {
        "csv"
    };
    sink.emit(&format!("catalog.{ext}"), &text, true)
}
