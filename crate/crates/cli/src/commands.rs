use std::collections::BTreeSet;
use std::io::Read;
use std::ops::RangeInclusive;
use std::path::Path;

use serde_json::{json, Value};

use spectrex_core::bounds::{chvatal_hanson_report, erdos_stone_estimate, intersection_report, turan_report, BoundReport};
use spectrex_core::invariants::{chromatic_number, ExcessSource};
use spectrex_core::named;
use spectrex_core::search::{
    construct_candidates, lower_bound_edges, measure_excess, search_extremal, verify_edge_theorem,
    verify_spectral_theorem, CatalogKind, ExtremalCatalog, SearchCheckpoint, SearchControl, SearchOptions,
    SearchOutcome,
};
use spectrex_core::spectral::{perron_formula_check, quotient_rho, spectral_radius, QuotientSpec};
use spectrex_core::{graph6, Error, PartSizes, ProblemSpec, Result};

use crate::output::{emit, report, table, write_text};
use crate::{
    cache, BoundsKind, Command, ConstructArgs, EngineArgs, FamilyArgs, QuotientArgs, QuotientCommand, SearchArgs,
    SearchKind, SpectralArgs, Status, VerifyArgs, VerifyKind,
};

pub fn run(command: Command) -> Result<Status> {
    match command {
        Command::Construct(a) => construct(a),
        Command::Search { kind } => match kind {
            SearchKind::Edge(a) => search(a, CatalogKind::Edge),
            SearchKind::Spectral(a) => search(a, CatalogKind::Spectral),
        },
        Command::Verify { kind } => match kind {
            VerifyKind::Edge(a) => verify(a, CatalogKind::Edge),
            VerifyKind::Spectral(a) => verify(a, CatalogKind::Spectral),
        },
        Command::Spectral(a) => match a.quotient {
            Some(QuotientCommand::Quotient(q)) => quotient(q),
            None => spectral(a),
        },
        Command::Bounds { which } => bounds(which),
    }
}

pub fn parse_range(s: &str) -> Result<RangeInclusive<usize>> {
    let bad = || Error::Input(format!("expected n or a..b, got '{s}'"));
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    let range = match s.split_once("..") {
        Some((a, b)) => num(a)?..=num(b.strip_prefix('=').unwrap_or(b))?,
        None => {
            let n = num(s)?;
            n..=n
        }
    };
    if range.is_empty() {
        return Err(bad());
    }
    Ok(range)
}

fn options(engine: &EngineArgs) -> SearchOptions {
    SearchOptions {
        order_cap: engine.order_cap,
        split_depth: engine.split_depth,
        parallel: true,
        tol: engine.tol,
    }
}

/// Builds the problem; `theorem` demands χ(F) >= 3.
fn problem(args: &FamilyArgs, engine: &EngineArgs, theorem: bool) -> Result<ProblemSpec> {
    let f = named::resolve(&args.f)?;
    let mut spec = if theorem {
        let chi = chromatic_number(&f)?;
        if chi < 3 {
            return Err(Error::Input(format!(
                "{} has chromatic number {chi}; the extremal theorems need χ(F) >= 3, so it is accepted only by `search`",
                args.f
            )));
        }
        ProblemSpec::new(f, args.k)?
    } else {
        ProblemSpec::for_search(f, args.k)?
    };
    if let Some(r) = args.r {
        if r != spec.r() {
            if !args.force_r {
                return Err(Error::Input(format!(
                    "r must equal χ(F) - 1 = {}; pass --force-r to override",
                    spec.r()
                )));
            }
            eprintln!("warning: overriding r = {} with r = {r}", spec.r());
            spec = spec.with_r_override(r)?;
        }
    }
    if let Some(a) = args.a {
        spec = spec.with_excess(a, ExcessSource::Asserted);
    } else if let Some(range) = &args.measure_a {
        let m = measure_excess(&spec, parse_range(range)?, &options(engine))?;
        eprintln!(
            "measured a = {} from {}",
            m.a,
            m.values
                .iter()
                .map(|(n, a)| format!("a({n})={a}"))
                .collect::<Vec<_>>()
                .join(" ")
        );
        spec = spec.with_excess(m.a, ExcessSource::Measured);
    }
    Ok(spec)
}

fn construct(args: ConstructArgs) -> Result<Status> {
    let spec = problem(&args.family, &args.engine, true)?;
    let graphs = construct_candidates(args.n, &spec, &options(&args.engine))?;
    let lower = lower_bound_edges(args.n, &spec).ok();
    let rows: Vec<Vec<String>> = graphs
        .iter()
        .map(|g| vec![graph6::encode(g), g.n().to_string(), g.edge_count().to_string()])
        .collect();
    table(&["graph6", "n", "edges"], &rows);
    if let Some(lb) = lower {
        eprintln!("lower-bound formula: {lb} edges");
    }
    if args.plain {
        let text: String = graphs.iter().map(|g| graph6::encode(g) + "\n").collect();
        write_text(&text, args.output.as_deref())?;
        return Ok(Status::Ok);
    }
    let payload = json!({
        "n": args.n,
        "family": spec.descriptor(),
        "graphs": graphs.iter().map(|g| json!({
            "graph6": graph6::encode(g),
            "n": g.n(),
            "edges": g.edge_count(),
        })).collect::<Vec<_>>(),
        "lower_bound_edges": lower,
    });
    emit(&report("construct", &payload)?, args.output.as_deref())?;
    Ok(Status::Ok)
}

fn summarize_catalog(cat: &ExtremalCatalog) {
    eprintln!(
        "{} search, n = {}, F = {}, k = {}: value {} over {} class(es); {} nodes, {} pruned, {} ms",
        cat.kind.as_str(),
        cat.n,
        cat.family.f_graph6,
        cat.family.k,
        serde_json::to_string(&cat.value).unwrap_or_default(),
        cat.graphs.len(),
        cat.stats.nodes_visited,
        cat.stats.pruned,
        cat.stats.wall_time_ms
    );
    for g in &cat.graphs {
        eprintln!("  {g}");
    }
    if cat.ambiguous {
        eprintln!("warning: spectral radii of the listed classes could not be separated");
    }
}

fn search(args: SearchArgs, kind: CatalogKind) -> Result<Status> {
    let spec = problem(&args.family, &args.engine, false)?;
    let opts = options(&args.engine);
    let fresh = args.resume.is_none() && args.checkpoint.is_none();
    if fresh && !args.no_cache {
        if let Some(cat) = cache::lookup(kind, &spec, args.n, opts.tol) {
            eprintln!("(from cache)");
            summarize_catalog(&cat);
            write_text(&(cat.to_json() + "\n"), args.output.as_deref())?;
            return Ok(Status::Ok);
        }
    }
    let control = SearchControl {
        resume: args.resume.as_deref().map(SearchCheckpoint::read).transpose()?,
        stop_after_tasks: args.stop_after,
        checkpoint_path: args.checkpoint.clone(),
    };
    match search_extremal(args.n, &spec, kind, &opts, control)? {
        SearchOutcome::Complete(cat) => {
            summarize_catalog(&cat);
            if !args.no_cache {
                cache::store(&cat, &spec, opts.tol);
            }
            write_text(&(cat.to_json() + "\n"), args.output.as_deref())?;
        }
        SearchOutcome::Interrupted(cp) => {
            let path = args.checkpoint.expect("clap requires --checkpoint with --stop-after");
            cp.write(&path)?;
            eprintln!(
                "stopped after {} task(s); resume with --resume {}",
                cp.completed_roots.len(),
                path.display()
            );
            let payload = json!({
                "interrupted": true,
                "completed_tasks": cp.completed_roots.len(),
                "checkpoint": path.display().to_string(),
            });
            emit(&report("search", &payload)?, args.output.as_deref())?;
        }
    }
    Ok(Status::Ok)
}

fn verify(args: VerifyArgs, kind: CatalogKind) -> Result<Status> {
    let spec = problem(&args.family, &args.engine, true)?;
    let ns = parse_range(&args.n)?;
    let opts = options(&args.engine);
    let mut csv_rows: Vec<Vec<String>> = vec![];
    let (payload, status, header): (Value, Status, Vec<&str>) = match kind {
        CatalogKind::Edge => {
            let rep = verify_edge_theorem(ns.clone(), &spec, &opts)?;
            for r in &rep.rows {
                csv_rows.push(vec![
                    r.n.to_string(),
                    r.ex.to_string(),
                    r.lower_bound.map(|b| b.to_string()).unwrap_or_default(),
                    r.extremal.len().to_string(),
                    r.verdict.as_str().to_string(),
                ]);
            }
            table(&["n", "ex", "formula", "classes", "verdict"], &csv_rows);
            match rep.equal_from {
                Some(n) => eprintln!("EQUAL holds from n = {n} through the tested range"),
                None => eprintln!("EQUAL does not hold at the top of the tested range"),
            }
            let status = if rep.has_violation() {
                eprintln!("violation: Turán's theorem fails at a tested order");
                Status::Internal
            } else {
                Status::Ok
            };
            let mut v = serde_json::to_value(&rep)?;
            v["kind"] = json!("edge");
            (v, status, vec!["n", "ex", "lower_bound", "classes", "verdict"])
        }
        CatalogKind::Spectral => {
            let rep = verify_spectral_theorem(ns.clone(), &spec, &opts)?;
            for r in &rep.rows {
                csv_rows.push(vec![
                    r.n.to_string(),
                    format!("{:.12}", r.rho),
                    r.contained.to_string(),
                    r.gap.map(|g| format!("{g:.3e}")).unwrap_or_default(),
                    r.gap_certified.to_string(),
                    r.spectral.len().to_string(),
                ]);
            }
            table(&["n", "rho", "contained", "gap", "certified", "classes"], &csv_rows);
            let mut v = serde_json::to_value(&rep)?;
            v["kind"] = json!("spectral");
            (v, Status::Ok, vec!["n", "rho", "contained", "gap", "gap_certified", "classes"])
        }
    };
    let mut payload = payload;
    payload["family"] = serde_json::to_value(spec.descriptor())?;
    payload["n_range"] = json!([ns.start(), ns.end()]);
    if let Some(path) = &args.csv {
        write_csv(path, &header, &csv_rows)?;
    }
    emit(&report("verify", &payload)?, args.output.as_deref())?;
    Ok(status)
}

fn write_csv(path: &Path, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    let io = |e: csv::Error| Error::Io(std::io::Error::other(e));
    let mut w = csv::Writer::from_path(path).map_err(io)?;
    w.write_record(header).map_err(io)?;
    for row in rows {
        w.write_record(row).map_err(io)?;
    }
    w.flush()?;
    Ok(())
}

fn read_input(arg: &str) -> Result<String> {
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(arg.to_string())
    }
}

fn spectral(args: SpectralArgs) -> Result<Status> {
    let text = args
        .graph6
        .as_deref()
        .ok_or_else(|| Error::Input("give --graph6 <string|-> or the quotient subcommand".into()))?;
    let text = read_input(text)?;
    let line = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("").trim();
    let g = graph6::decode(line)?;
    let res = spectral_radius(&g, args.tol)?;
    eprintln!(
        "n = {}, e = {}: rho = {:.12} ± {:.1e} ({} iterations)",
        g.n(),
        g.edge_count(),
        res.rho,
        res.residual,
        res.iterations
    );
    let mut payload = json!({
        "graph6": graph6::encode(&g),
        "n": g.n(),
        "edges": g.edge_count(),
        "rho": res.rho,
        "residual": res.residual,
        "lower": res.lower(),
        "upper": res.upper(),
        "iterations": res.iterations,
        "empty": res.empty,
    });
    if args.vector {
        payload["vector"] = json!(res.vector);
    }
    emit(&report("spectral", &payload)?, args.output.as_deref())?;
    Ok(Status::Ok)
}

fn quotient(args: QuotientArgs) -> Result<Status> {
    let spec = QuotientSpec::new(PartSizes::new(args.sizes.clone())?, args.clique);
    let q = quotient_rho(&spec, args.tol)?;
    let deviation = match perron_formula_check(&spec, args.tol) {
        Ok(d) => Some(d),
        Err(Error::NotApplicable(_)) => None,
        Err(e) => return Err(e),
    };
    eprintln!("rho = {:.12} ± {:.1e}", q.rho, q.residual);
    let mut payload = json!({
        "sizes": args.sizes,
        "clique": args.clique,
        "rho": q.rho,
        "residual": q.residual,
        "part_values": q.part_values,
        "iterations": q.iterations,
        "perron_formula_deviation": deviation,
    });
    if let Some(d) = deviation {
        eprintln!("max |y_i - (rho+1)/(rho+n_i)| = {d:.1e}");
    }
    if args.expand {
        let direct = spectral_radius(&spec.expand(), args.tol)?;
        eprintln!("expanded graph: rho = {:.12}", direct.rho);
        payload["expanded_rho"] = json!(direct.rho);
        payload["expanded_residual"] = json!(direct.residual);
    }
    emit(&report("spectral-quotient", &payload)?, args.output.as_deref())?;
    Ok(Status::Ok)
}

fn bounds(which: BoundsKind) -> Result<Status> {
    let (rep, output): (BoundReport, _) = match which {
        BoundsKind::ChvatalHanson {
            nu,
            delta,
            oracle,
            output,
        } => (chvatal_hanson_report(nu, delta, oracle)?, output),
        BoundsKind::Turan { n, r, output } => (turan_report(n, r)?, output),
        BoundsKind::Intersection { sets, output } => {
            let text = if sets == "-" {
                read_input("-")?
            } else {
                std::fs::read_to_string(&sets)?
            };
            let lists: Vec<Vec<i64>> = serde_json::from_str(&text)
                .map_err(|e| Error::Input(format!("sets must be a JSON list of integer lists: {e}")))?;
            let sets: Vec<BTreeSet<i64>> = lists.into_iter().map(|l| l.into_iter().collect()).collect();
            (intersection_report(&sets)?, output)
        }
        BoundsKind::ErdosStone { f, n, output } => {
            let g = named::resolve(&f)?;
            let estimate = erdos_stone_estimate(n, &g)?;
            let rep = BoundReport {
                name: "erdos-stone".into(),
                inputs: [("F".to_string(), json!(graph6::encode(&g))), ("n".to_string(), json!(n))].into(),
                bound_value: json!(estimate),
                witness_value: None,
                satisfied: true,
                details: [("estimate_only".to_string(), json!(true))].into(),
            };
            (rep, output)
        }
    };
    eprintln!(
        "{}: bound {} witness {} satisfied {}",
        rep.name,
        rep.bound_value,
        rep.witness_value.as_ref().map_or("-".to_string(), Value::to_string),
        rep.satisfied
    );
    emit(&report("bounds", &rep)?, output.as_deref())?;
    Ok(if rep.satisfied { Status::Ok } else { Status::Internal })
}

#[cfg(test)]
mod tests {
    use super::parse_range;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("3..9").unwrap(), 3..=9);
        assert_eq!(parse_range("3..=9").unwrap(), 3..=9);
        assert_eq!(parse_range("6").unwrap(), 6..=6);
        assert!(parse_range("9..3").is_err());
        assert!(parse_range("x").is_err());
    }
}
