use serde_json::{json, Value};

use skelsig_core::genvec::{search, verify, GeneratingVector, Witness};
use skelsig_core::groups::{bundled_catalog, load_catalog, Catalog, GroupSpec, DEFAULT_ELEMENT_CAP};
use skelsig_core::plane::{corner_formula, gap, missing_points};
use skelsig_core::rh::{order_bound, rh_admissible, rh_genus, rh_holds};
use skelsig_core::skeleton::{
    figure_dataset, realizable_set_in, sporadic_analysis, verify_gap, Bounds, FigureOptions,
    GapConclusion,
};
use skelsig_core::{OrbifoldSignature, SearchVerdict, SkeletalSignature};

use crate::cli::*;
use crate::output::*;
use crate::svg;

pub fn run(cli: &Cli) -> CliResult<Report> {
    let g = &cli.global;
    match &cli.command {
        Command::Rh(a) => rh(g, a),
        Command::Gaps(a) => gaps(g, a),
        Command::VerifyGap(a) => verify_gap_cmd(g, a),
        Command::Missing(a) => missing(g, a),
        Command::Kspace(a) => kspace(g, a),
        Command::Sporadic(a) => sporadic(g, a),
        Command::Genvec(a) => genvec(g, a),
        Command::Plot(a) => plot(g, a),
        Command::Catalog(a) => catalog_cmd(g, a),
    }
}

fn config(command: &str, g: &Global, args: &impl serde::Serialize, format: Format) -> Value {
    json!({
        "command": command,
        "args": args,
        "catalog": g.catalog.as_ref().map_or("bundled".to_string(), |p| p.display().to_string()),
        "budget": g.budget,
        "threads": g.threads,
        "format": format_name(format),
    })
}

fn load(g: &Global) -> CliResult<Catalog> {
    match &g.catalog {
        Some(dir) => load_catalog(dir).map_err(|e| CliError(format!("catalog {}: {e}", dir.display()))),
        None => Ok(bundled_catalog()),
    }
}

fn only_json(command: &str, g: &Global) -> CliResult<Format> {
    match g.format.unwrap_or(Format::Json) {
        Format::Json => Ok(Format::Json),
        f => Err(unsupported(command, f)),
    }
}

fn json_or_csv(command: &str, g: &Global) -> CliResult<Format> {
    match g.format.unwrap_or(Format::Json) {
        Format::Svg => Err(unsupported(command, Format::Svg)),
        f => Ok(f),
    }
}

fn parse_signature(text: &str) -> CliResult<OrbifoldSignature> {
    text.parse::<OrbifoldSignature>().map_err(|e| {
        CliError(format!(
            "invalid signature {text:?}: {e}\n  {text}\n  {caret:>width$}",
            caret = "^",
            width = e.position + 1
        ))
    })
}

fn verdict_code<T>(v: &SearchVerdict<T>) -> u8 {
    match v {
        SearchVerdict::Exists(_) => 0,
        SearchVerdict::NotExists => 1,
        SearchVerdict::Unknown => 3,
    }
}

fn rh(g: &Global, a: &RhArgs) -> CliResult<Report> {
    let format = only_json("rh", g)?;
    let cfg = config("rh", g, a, format);
    if let Some(text) = &a.sig {
        let sig = parse_signature(text)?;
        let order = a.order.ok_or_else(|| CliError("rh --sig needs --order".into()))?;
        if order == 0 {
            return Err(CliError("--order must be positive".into()));
        }
        let genus = rh_genus(order, &sig);
        let result = json!({
            "signature": sig.to_string(),
            "order": order,
            "skeleton": sig.skeleton(),
            "genus": fraction(genus),
            "integral": genus.is_integer(),
            "holds": a.sigma.map(|s| rh_holds(s, order, &sig)),
        });
        return Ok(Report::new(json_document(&cfg, result), 0));
    }
    match (a.sigma, a.h, a.r) {
        (Some(sigma), Some(h), Some(r)) => {
            let skel = SkeletalSignature::new(h, r);
            let verdict = rh_admissible(sigma, skel)?;
            let result = json!({
                "sigma": sigma,
                "skeleton": skel,
                "orderBound": order_bound(sigma, skel)?,
                "admissible": verdict,
            });
            Ok(Report::new(json_document(&cfg, result), verdict_code(&verdict)))
        }
        _ => Err(CliError("rh needs --order with --sig, or --sigma with --h and --r".into())),
    }
}

fn gaps(g: &Global, a: &GapsArgs) -> CliResult<Report> {
    let format = json_or_csv("gaps", g)?;
    let cfg = config("gaps", g, a, format);
    let mut regions = Vec::new();
    let mut rows = Vec::new();
    for &n in &a.n {
        let region = gap(a.sigma, n)?;
        let lattice = region.integer_points();
        for p in &lattice.raw {
            rows.push(format!("{n},{},{},{}", p.h, p.r, lattice.exception.contains(p)));
        }
        regions.push(json!({
            "N": n,
            "span": region.span,
            "upperOrder": region.upper_order(),
            "boundaryLower": region.boundary_lower,
            "boundaryUpper": region.boundary_upper,
            "corner": point(&region.corner),
            "cornerMatchesFormula": corner_formula(a.sigma, n, region.span) == region.corner,
            "exceptionLine": region.exception_line,
            "lattice": lattice,
        }));
    }
    let text = match format {
        Format::Csv => csv_document(&cfg, "N,h,r,on_exception_line", rows),
        _ => json_document(&cfg, json!({ "sigma": a.sigma, "gaps": regions })),
    };
    Ok(Report::new(text, 0))
}

fn verify_gap_cmd(g: &Global, a: &VerifyGapArgs) -> CliResult<Report> {
    let format = json_or_csv("verify-gap", g)?;
    let cfg = config("verify-gap", g, a, format);
    let catalog = load(g)?;
    let rep = verify_gap(a.sigma, a.n, &catalog, g.budget)?;
    let code = match rep.conclusion {
        GapConclusion::Verified => 0,
        GapConclusion::Refuted => 1,
        GapConclusion::Partial => 3,
    };
    let text = match format {
        Format::Csv => csv_document(
            &cfg,
            "h,r,on_exception_line,rh,realizability",
            rep.integer_points.iter().map(|p| {
                let realizability = p.realizability().map_or("", |v| v.label());
                format!("{},{},{},{},{realizability}", p.skeleton.h, p.skeleton.r, p.on_exception_line, p.rh.label())
            }),
        ),
        _ => {
            let exceptions: Vec<_> = rep
                .exception_points()
                .map(|p| {
                    json!({
                        "skeleton": p.skeleton,
                        "realizability": p.realizability().map(|v| v.label()),
                        "reasons": p.analysis.as_ref().map(|a| a.reasons()),
                    })
                })
                .collect();
            json_document(
                &cfg,
                json!({
                    "conclusion": rep.conclusion,
                    "pointCount": rep.integer_points.len(),
                    "exceptions": exceptions,
                    "report": rep,
                }),
            )
        }
    };
    Ok(Report::new(text, code))
}

fn missing(g: &Global, a: &MissingArgs) -> CliResult<Report> {
    let format = json_or_csv("missing", g)?;
    let cfg = config("missing", g, a, format);
    let points = missing_points(a.sigma, a.h)?;
    let region = gap(a.sigma, 4)?;
    let mut rows = Vec::new();
    let mut entries = Vec::new();
    for p in &points {
        let rh = rh_admissible(a.sigma, *p)?;
        let on_line = region.exception_line.is_some_and(|l| l.contains(&(*p).into()));
        rows.push(format!("{},{},{},{}", p.h, p.r, on_line, rh.label()));
        entries.push(json!({ "skeleton": p, "onExceptionLine": on_line, "rh": rh }));
    }
    let code = if points.is_empty() { 1 } else { 0 };
    let text = match format {
        Format::Csv => csv_document(&cfg, "h,r,on_exception_line,rh", rows),
        _ => json_document(&cfg, json!({ "sigma": a.sigma, "h": a.h, "points": entries })),
    };
    Ok(Report::new(text, code))
}

fn kspace(g: &Global, a: &KspaceArgs) -> CliResult<Report> {
    let format = json_or_csv("kspace", g)?;
    let cfg = config("kspace", g, a, format);
    let catalog = load(g)?;
    let d = Bounds::default_for(a.sigma);
    let bounds = Bounds {
        h_max: a.h_max.unwrap_or(d.h_max),
        r_max: a.r_max.unwrap_or(d.r_max),
    };
    let k = realizable_set_in(a.sigma, bounds, &catalog, a.max_order, g.budget)?;
    let code = if k.scope.unknown.is_empty() { 0 } else { 3 };
    let text = match format {
        Format::Csv => {
            let rows = k.admissible.skeletons().map(|p| {
                let status = if k.is_realized(p) {
                    "realized"
                } else if k.excluded.contains(&p) {
                    "excluded"
                } else {
                    "admissible"
                };
                format!("{},{},{status}", p.h, p.r)
            });
            csv_document(&cfg, "h,r,status", rows)
        }
        _ => json_document(
            &cfg,
            json!({
                "summary": {
                    "admissible": k.admissible.len(),
                    "realized": k.realized.len(),
                    "excluded": k.excluded.len(),
                    "undecided": k.scope.undecided.len(),
                    "admissibleNotRealized": k.gap_count(),
                    "exact": k.scope.exact,
                },
                "kspace": k,
            }),
        ),
    };
    Ok(Report::new(text, code))
}

fn sporadic(g: &Global, a: &SporadicArgs) -> CliResult<Report> {
    let format = only_json("sporadic", g)?;
    let cfg = config("sporadic", g, a, format);
    let catalog = load(g)?;
    let rep = sporadic_analysis(a.h, &a.primes, &a.witness_n, &catalog, g.budget)?;
    let witnesses_ok = rep.witnesses.iter().all(|w| w.verified);
    let code = match (&rep.verdict, witnesses_ok) {
        (_, false) | (SearchVerdict::Exists(_), _) => 1,
        (SearchVerdict::Unknown, _) => 3,
        (SearchVerdict::NotExists, true) => 0,
    };
    let genera: Vec<_> = rep.witnesses.iter().map(|w| w.sigma).collect();
    let text = json_document(
        &cfg,
        json!({
            "nonexistence": rep.verdict.label(),
            "witnessGenera": genera,
            "report": rep,
        }),
    );
    Ok(Report::new(text, code))
}

fn parse_vector(text: &str, order: usize) -> CliResult<GeneratingVector> {
    let (pairs_text, elliptic_text) = text.split_once(';').unwrap_or((text, ""));
    let parse_list = |s: &str| -> CliResult<Vec<usize>> {
        s.split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| {
                let x: usize = t.parse().map_err(|_| CliError(format!("bad element index {t:?} in vector")))?;
                if x >= order {
                    return Err(CliError(format!("element index {x} out of range for order {order}")));
                }
                Ok(x)
            })
            .collect()
    };
    let flat = parse_list(pairs_text)?;
    if flat.len() % 2 != 0 {
        return Err(CliError("vector needs an even number of entries before ';'".into()));
    }
    let pairs = flat.chunks(2).map(|c| (c[0], c[1])).collect();
    Ok(GeneratingVector::new(pairs, parse_list(elliptic_text)?))
}

fn genvec(g: &Global, a: &GenvecArgs) -> CliResult<Report> {
    let format = only_json("genvec", g)?;
    let cfg = config("genvec", g, a, format);
    let spec: GroupSpec = a.group.parse()?;
    let group = spec.build(g.catalog.as_deref(), DEFAULT_ELEMENT_CAP)?;
    let sig = parse_signature(&a.sig)?;
    let genus = rh_genus(group.order() as u64, &sig);
    if let Some(text) = &a.vector {
        let v = parse_vector(text, group.order())?;
        let check = verify(&group, &v, &sig)?;
        let code = if check.is_valid() { 0 } else { 1 };
        let result = json!({
            "group": group.name(),
            "order": group.order(),
            "signature": sig.to_string(),
            "genus": fraction(genus),
            "vector": v,
            "valid": check.is_valid(),
            "verification": check,
        });
        return Ok(Report::new(json_document(&cfg, result), code));
    }
    let out = search(&group, &sig, g.budget);
    let code = verdict_code(&out.verdict);
    let verdict = out.verdict.map(|v| Witness::new(&group, sig.clone(), v));
    let result = json!({
        "group": group.name(),
        "order": group.order(),
        "signature": sig.to_string(),
        "genus": fraction(genus),
        "steps": out.steps,
        "search": verdict,
    });
    Ok(Report::new(json_document(&cfg, result), code))
}

fn plot(g: &Global, a: &PlotArgs) -> CliResult<Report> {
    let format = g.format.unwrap_or(Format::Svg);
    let cfg = config("plot", g, a, format);
    let catalog = load(g)?;
    let options = FigureOptions {
        realized: a.realized,
        max_order: a.max_order,
        budget: g.budget,
        ..FigureOptions::default()
    };
    let data = figure_dataset(a.sigma, &catalog, &options)?;
    let table = || {
        csv_document(
            &cfg,
            "h,r,status",
            data.points.iter().map(|p| format!("{},{},{}", p.h, p.r, p.status)),
        )
    };
    if let Some(path) = &a.csv {
        write_text(Some(path), &table())?;
    }
    let text = match format {
        Format::Svg => svg::render(&data, &cfg),
        Format::Csv => table(),
        Format::Json => json_document(&cfg, serde_json::to_value(&data)?),
    };
    Ok(Report::new(text, 0))
}

fn catalog_cmd(g: &Global, a: &CatalogArgs) -> CliResult<Report> {
    let format = json_or_csv("catalog", g)?;
    let cfg = config("catalog", g, a, format);
    let catalog = load(g)?;
    let complete = catalog.complete_orders();
    let selected: Vec<_> = catalog
        .iter()
        .filter(|(e, _)| a.order.is_none_or(|o| e.order == o))
        .collect();
    let code = if selected.is_empty() { 1 } else { 0 };
    let text = match format {
        Format::Csv => csv_document(
            &cfg,
            "order,label,spec,complete,abelian",
            selected.iter().map(|(e, t)| {
                format!("{},{},\"{}\",{},{}", e.order, e.label, e.spec, complete.contains(&e.order), t.is_abelian())
            }),
        ),
        _ => {
            let groups: Vec<_> = selected
                .iter()
                .map(|(e, t)| {
                    json!({
                        "order": e.order,
                        "label": e.label,
                        "spec": e.spec,
                        "complete": complete.contains(&e.order),
                        "abelian": t.is_abelian(),
                        "elementOrders": t.order_statistics(),
                    })
                })
                .collect();
            json_document(
                &cfg,
                json!({
                    "groups": groups,
                    "completeOrders": complete,
                    "fingerprintCollisions": catalog.fingerprint_collisions(),
                }),
            )
        }
    };
    Ok(Report::new(text, code))
}
