use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::{Read, Write};

use rayon::ThreadPool;
use serde_json::{json, Value};
use slither_core::asymptotics::{clt_check, constants};
use slither_core::codec::{
    read_capacity_edges, read_path_edges, read_root_and_pset, slither_decode, slither_encode, RootClass,
};
use slither_core::enumeration::{
    exact_dice_distribution, exact_rooted_distribution, full_binary_table, independence_table, Parameter,
};
use slither_core::games::{
    binary_lr_trial, card_trial, dice_trial, full_binary_trial, plane_trial, run_trials, sample_family, Deck,
    RandomSource,
};
use slither_core::io::{code_to_text, parse_code, parse_tree, tree_to_json, tree_to_text};
use slither_core::tree::{
    classify, independence_number, matching_certificate, matching_number, max_capacity_edges,
    path_cover_decomposition, path_cover_number, PositionMap,
};
use slither_core::{DistributionTable, RootedTree, SlitherCode, TrialHistogram, Variant};

use crate::verify::run_checks;
use crate::{Cli, CliError, Command, Format, Game, Input, TableFamily};

pub(crate) fn execute(
    cli: &Cli,
    pool: &ThreadPool,
    stdin: &mut dyn Read,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, CliError> {
    let format = cli.format;
    let allows_csv = matches!(cli.command, Command::Simulate { .. } | Command::Enumerate { .. });
    if format == Format::Csv && !allows_csv {
        return Err(CliError::Invalid("--format csv is only available for simulate and enumerate".into()));
    }
    match &cli.command {
        Command::Encode { variant, aux, input } => {
            let tree = parse_tree(&read_input(input, &[], stdin)?)?;
            let (code, auxiliary) = slither_encode(&tree, *variant);
            match format {
                Format::Json => emit_json(
                    out,
                    &json!({
                        "n": code.n(),
                        "variant": code.variant().to_string(),
                        "symbols": code.symbols(),
                        "auxiliary": auxiliary.0,
                    }),
                )?,
                _ => {
                    out.write_all(code_to_text(&code).as_bytes())?;
                    if *aux {
                        writeln!(out, "{}", join(&auxiliary.0))?;
                    }
                }
            }
        }
        Command::Decode { variant, n, code, input } => {
            let code = read_code(input, code, *variant, *n, stdin)?;
            let tree = slither_decode(&code);
            match format {
                Format::Json => emit_json(out, &tree_to_json(&tree))?,
                _ => out.write_all(tree_to_text(&tree).as_bytes())?,
            }
        }
        Command::Params { b, input } => {
            let tree = parse_tree(&read_input(input, &[], stdin)?)?;
            let report = params(&tree, *b)?;
            match format {
                Format::Json => emit_json(out, &report)?,
                _ => out.write_all(params_text(&report).as_bytes())?,
            }
        }
        Command::Read { variant, n, code, input } => {
            let code = read_code(input, code, *variant, *n, stdin)?;
            let report = reading(&code)?;
            match format {
                Format::Json => emit_json(out, &report)?,
                _ => out.write_all(flat_text(&report).as_bytes())?,
            }
        }
        Command::Sample { family, n, seed, count } => {
            let seed = resolve_seed(*seed, err)?;
            let trees = (0..*count as u64)
                .map(|i| sample_family(*family, *n, &mut RandomSource::for_trial(seed, i)))
                .collect::<Result<Vec<_>, _>>()?;
            match format {
                Format::Json => emit_json(out, &Value::Array(trees.iter().map(tree_to_json).collect()))?,
                _ => {
                    let texts: Vec<String> = trees.iter().map(tree_to_text).collect();
                    out.write_all(texts.join("\n").as_bytes())?;
                }
            }
        }
        Command::Simulate { game, n, trials, seed, deck } => {
            if *trials == 0 {
                return Err(CliError::Invalid("--trials must be at least 1".into()));
            }
            let seed = resolve_seed(*seed, err)?;
            let h = pool.install(|| simulate(*game, *n, deck.as_deref(), *trials, seed))?;
            emit_histogram(out, format, &h)?;
        }
        Command::Enumerate { n, family, parameter, variant, budget } => {
            let table = pool.install(|| enumerate(*n, *family, *parameter, *variant, *budget))?;
            emit_table(out, format, &table)?;
        }
        Command::Constants => {
            let k = constants::<f64>().map_err(|e| CliError::Internal(e.to_string()))?;
            let entries: BTreeMap<&str, String> =
                k.entries().into_iter().map(|(name, v)| (name, format!("{v:.15}"))).collect();
            match format {
                Format::Json => emit_json(out, &json!(entries))?,
                _ => {
                    for (name, v) in k.entries() {
                        writeln!(out, "{name} {v:.15}")?;
                    }
                }
            }
        }
        Command::Clt { n, trials, seed } => {
            if *n < 1 || *trials < 2 {
                return Err(CliError::Invalid("clt needs n >= 1 and at least 2 trials".into()));
            }
            let seed = resolve_seed(*seed, err)?;
            let report = pool.install(|| clt_check(*n, *trials, seed));
            let value = serde_json::to_value(&report).map_err(|e| CliError::Internal(e.to_string()))?;
            match format {
                Format::Json => emit_json(out, &value)?,
                _ => out.write_all(flat_text(&value).as_bytes())?,
            }
        }
        Command::Verify { level } => {
            let results = pool.install(|| run_checks(*level));
            let failed = results.iter().filter(|r| !r.passed).count();
            match format {
                Format::Json => emit_json(
                    out,
                    &json!({
                        "level": format!("{level:?}").to_lowercase(),
                        "passed": results.len() - failed,
                        "failed": failed,
                        "checks": results.iter().map(|r| json!({"name": r.name, "passed": r.passed, "detail": r.detail})).collect::<Vec<_>>(),
                    }),
                )?,
                _ => {
                    for r in &results {
                        writeln!(out, "{} {}: {}", if r.passed { "PASS" } else { "FAIL" }, r.name, r.detail)?;
                    }
                    writeln!(out, "{} passed, {} failed", results.len() - failed, failed)?;
                }
            }
            return Ok(if failed == 0 { 0 } else { 1 });
        }
    }
    Ok(0)
}

fn read_input(input: &Input, args: &[String], stdin: &mut dyn Read) -> Result<String, CliError> {
    match (&input.input, args.is_empty()) {
        (Some(_), false) => Err(CliError::Invalid("give the input either inline or with --input, not both".into())),
        (Some(path), true) => Ok(std::fs::read_to_string(path)?),
        (None, false) => Ok(args.join(" ")),
        (None, true) => {
            let mut s = String::new();
            stdin.read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn read_code(
    input: &Input,
    args: &[String],
    variant: Variant,
    n: Option<usize>,
    stdin: &mut dyn Read,
) -> Result<SlitherCode, CliError> {
    Ok(parse_code(&read_input(input, args, stdin)?, Some(variant), n)?)
}

fn resolve_seed(seed: Option<u64>, err: &mut dyn Write) -> Result<u64, CliError> {
    Ok(match seed {
        Some(s) => s,
        None => {
            let s = rand::random::<u64>();
            writeln!(err, "seed: {s}")?;
            s
        }
    })
}

fn emit_json(out: &mut dyn Write, value: &Value) -> Result<(), CliError> {
    let s = serde_json::to_string_pretty(value).map_err(|e| CliError::Internal(e.to_string()))?;
    writeln!(out, "{s}")?;
    Ok(())
}

fn join(values: &[usize]) -> String {
    values.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn labels(map: &PositionMap, n: usize) -> BTreeMap<String, String> {
    (1..=n).map(|v| (v.to_string(), map.label(v))).collect()
}

fn params(tree: &RootedTree, b: Option<usize>) -> Result<Value, CliError> {
    let n = tree.n();
    let mut classes = BTreeMap::new();
    classes.insert("normal".to_string(), labels(&classify(tree, Variant::Normal), n));
    classes.insert("comply".to_string(), labels(&classify(tree, Variant::Comply), n));
    let mut report = json!({
        "n": n,
        "root": tree.root(),
        "independence": independence_number(tree),
        "matching": matching_number(tree),
        "path_edges": max_capacity_edges(tree, 2)?,
        "path_cover": path_cover_number(tree),
        "matching_edges": matching_certificate(tree).edges,
        "paths": path_cover_decomposition(tree),
    });
    if let Some(b) = b {
        let variant = Variant::with_capacity(b)?;
        report["b"] = json!(b);
        report["capacity_edges"] = json!(max_capacity_edges(tree, b)?);
        classes.insert(variant.to_string(), labels(&classify(tree, variant), n));
    }
    report["classification"] = json!(classes);
    Ok(report)
}

fn params_text(report: &Value) -> String {
    let mut s = String::new();
    for key in ["n", "root", "independence", "matching", "path_edges", "path_cover", "b", "capacity_edges"] {
        if let Some(v) = report.get(key) {
            writeln!(s, "{key} {v}").unwrap();
        }
    }
    let edges: Vec<String> = report["matching_edges"]
        .as_array()
        .into_iter()
        .flatten()
        .map(|e| format!("{}-{}", e[0], e[1]))
        .collect();
    writeln!(s, "matching_edges {}", edges.join(" ")).unwrap();
    let paths: Vec<String> = report["paths"]
        .as_array()
        .into_iter()
        .flatten()
        .map(|p| p.as_array().into_iter().flatten().map(Value::to_string).collect::<Vec<_>>().join("-"))
        .collect();
    writeln!(s, "paths {}", paths.join(" ")).unwrap();
    if let Some(classes) = report["classification"].as_object() {
        for (variant, map) in classes {
            let mut cells: Vec<(usize, String)> = map
                .as_object()
                .into_iter()
                .flatten()
                .map(|(v, l)| (v.parse().unwrap_or(0), l.as_str().unwrap_or("").to_string()))
                .collect();
            cells.sort();
            let line: Vec<String> = cells.iter().map(|(v, l)| format!("{v}:{l}")).collect();
            writeln!(s, "class {variant} {}", line.join(" ")).unwrap();
        }
    }
    s
}

fn reading(code: &SlitherCode) -> Result<Value, CliError> {
    Ok(match code.variant() {
        Variant::Normal => {
            let r = read_root_and_pset(code)?;
            json!({
                "variant": "normal",
                "alpha": r.alpha,
                "beta": r.beta,
                "matching": r.matching,
                "root": r.root,
                "root_class": match r.root_class { RootClass::P => "P", RootClass::N => "N" },
                "p_set": r.p_set,
            })
        }
        Variant::Comply => {
            let (beta, edges) = read_path_edges(code)?;
            json!({
                "variant": "comply",
                "beta": beta,
                "path_edges": edges,
                "path_cover": code.n() - edges,
            })
        }
        v @ Variant::Capacity(_) => {
            let b = v.capacity();
            let (beta, edges) = read_capacity_edges(code, b)?;
            json!({ "variant": v.to_string(), "b": b, "beta": beta, "capacity_edges": edges })
        }
    })
}

/// `key value` lines for a flat JSON object; arrays print space-separated.
fn flat_text(value: &Value) -> String {
    let mut s = String::new();
    for (k, v) in value.as_object().into_iter().flatten() {
        let shown = match v {
            Value::Array(items) => items.iter().map(Value::to_string).collect::<Vec<_>>().join(" "),
            Value::String(t) => t.clone(),
            other => other.to_string(),
        };
        writeln!(s, "{k} {shown}").unwrap();
    }
    s
}

fn simulate(game: Game, n: Option<usize>, deck: Option<&[usize]>, trials: u64, seed: u64) -> Result<TrialHistogram, CliError> {
    if deck.is_some() && game != Game::Cards {
        return Err(CliError::Invalid("--deck only applies to --game cards".into()));
    }
    let need_n = || n.filter(|&n| n >= 1).ok_or_else(|| CliError::Invalid("--n must be given and positive".into()));
    Ok(match game {
        Game::Dice => {
            let n = need_n()?;
            run_trials(n, "alpha", |r| dice_trial(n, r), trials, seed)
        }
        Game::Cards => {
            let deck = Deck::new(
                deck.ok_or_else(|| CliError::Invalid("--game cards needs --deck d1,..,dn".into()))?.to_vec(),
            )?;
            if let Some(n) = n.filter(|&n| n != deck.n()) {
                return Err(CliError::Invalid(format!("--n {n} disagrees with a deck of {} labels", deck.n())));
            }
            run_trials(deck.n(), "alpha", |r| card_trial(&deck, r), trials, seed)
        }
        Game::FullBinary => {
            let n = need_n()?;
            if n % 2 == 0 || n < 3 {
                return Err(CliError::Invalid(format!("full binary trees need odd n >= 3, got {n}")));
            }
            let m = n / 2;
            run_trials(n, "alpha", |r| full_binary_trial(m, r), trials, seed)
        }
        Game::BinaryLr => {
            let n = need_n()?;
            run_trials(n, "alpha", |r| binary_lr_trial(n, r), trials, seed)
        }
        Game::Plane => {
            let n = need_n()?;
            run_trials(n, "alpha", |r| plane_trial(n, r), trials, seed)
        }
    })
}

fn emit_histogram(out: &mut dyn Write, format: Format, h: &TrialHistogram) -> Result<(), CliError> {
    let t = h.trials as f64;
    match format {
        Format::Json => emit_json(out, &serde_json::to_value(h).map_err(|e| CliError::Internal(e.to_string()))?)?,
        Format::Csv => {
            writeln!(out, "value,count,frequency")?;
            for (v, c) in &h.counts {
                writeln!(out, "{v},{c},{}", *c as f64 / t)?;
            }
        }
        Format::Text => {
            writeln!(out, "# n {} trials {} seed {} mean {:.6}", h.n, h.trials, h.seed, h.mean())?;
            for (v, c) in &h.counts {
                writeln!(out, "{v} {c}")?;
            }
        }
    }
    Ok(())
}

fn enumerate(
    n: usize,
    family: TableFamily,
    parameter: Parameter,
    variant: Option<Variant>,
    budget: u64,
) -> Result<DistributionTable, CliError> {
    if n == 0 {
        return Err(CliError::Invalid("--n must be positive".into()));
    }
    let independence_only = |what: &str| {
        if parameter == Parameter::Independence {
            Ok(())
        } else {
            Err(CliError::Invalid(format!("the {what} table only covers independence; use --family rooted")))
        }
    };
    Ok(match family {
        TableFamily::Unrooted => {
            independence_only("unrooted")?;
            independence_table(n)?
        }
        TableFamily::Dice => {
            independence_only("dice")?;
            exact_dice_distribution(n, budget)?
        }
        TableFamily::FullBinary => {
            independence_only("full-binary")?;
            if n.is_multiple_of(2) || n < 3 {
                return Err(CliError::Invalid(format!("full binary trees need odd n >= 3, got {n}")));
            }
            full_binary_table(n / 2)?
        }
        TableFamily::Rooted => {
            let variant = match variant {
                Some(v) => v,
                None => match parameter {
                    Parameter::PathEdges | Parameter::PathCover => Variant::Comply,
                    Parameter::CapacityEdges(b) => Variant::with_capacity(b)?,
                    _ => Variant::Normal,
                },
            };
            exact_rooted_distribution(n, parameter, variant, budget)?
        }
    })
}

fn emit_table(out: &mut dyn Write, format: Format, table: &DistributionTable) -> Result<(), CliError> {
    match format {
        Format::Json => emit_json(out, &table.to_json())?,
        Format::Csv => {
            writeln!(out, "value,count,probability")?;
            let probs = table.probabilities();
            for (v, c) in &table.counts {
                writeln!(out, "{v},{c},{}", probs[v])?;
            }
        }
        Format::Text => {
            for (v, c) in &table.counts {
                writeln!(out, "{v} {c}")?;
            }
        }
    }
    Ok(())
}
