use std::fs;
use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::json;

use helly_core::colorful::{nonintersecting_hypergraph, write_sweep_csv, SweepRow};
use helly_core::generators::{
    gen_construction_colorful, gen_example_monochromatic, gen_random_classes,
    predicted_colorful_count, predicted_mono_count,
};
use helly_core::hypergraph::{
    greedy_maximal_matching, independence_number_exact, matching_number_exact,
    EXACT_MAX_VERTICES,
};
use helly_core::scalar::{self, to_ratio_string};
use helly_core::{
    count_intersecting_colorful, count_intersecting_monochromatic, extract_intersecting_subfamily,
    max_intersecting_subfamily_exact, verify_theorem, ColorClasses, ConstructionSpec, ConvexSet,
    Instance, Scalar, SetModel, VerifyOptions,
};

use crate::exit::{CliResult, Code, Failure};
use crate::{AnalyzeArgs, GenerateArgs, Kind, OracleArgs, SweepArgs, VerifyArgs};

fn parse_beta(text: &str) -> CliResult<Scalar> {
    scalar::parse(text).map_err(|e| Failure::usage(format!("--beta: {e}")))
}

fn parse_list<T: std::str::FromStr>(flag: &str, text: &str) -> CliResult<Vec<T>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Failure::usage(format!("{flag}: cannot parse {t:?}")))
        })
        .collect()
}

fn parse_seeds(text: &str) -> CliResult<Vec<u64>> {
    match text.split_once("..") {
        Some((a, b)) => {
            let bad = || Failure::usage(format!("--seeds: bad range {text:?}"));
            let a: u64 = a.trim().parse().map_err(|_| bad())?;
            let b: u64 = b.trim().parse().map_err(|_| bad())?;
            Ok((a..b).collect())
        }
        None => parse_list("--seeds", text),
    }
}

fn parse_model(text: &str) -> CliResult<SetModel> {
    text.parse()
        .map_err(|e: helly_core::Error| Failure::usage(e.to_string()))
}

fn read_instance(path: &Path) -> CliResult<Instance> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::new(Code::Io, format!("{}: {e}", path.display())))?;
    Instance::parse(&text).map_err(|e| {
        let f = Failure::from(e);
        Failure::new(f.code, format!("{}: {}", path.display(), f.message))
    })
}

fn emit_json<T: Serialize>(value: &T, out: Option<&Path>) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    match out {
        Some(p) => fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn colored_classes(instance: &Instance) -> CliResult<ColorClasses> {
    if !instance.is_colorful() {
        return Err(Failure::new(
            Code::Parse,
            "instance has no `class` sections; verify needs d + 1 color classes",
        ));
    }
    Ok(instance.to_color_classes()?)
}

pub fn generate(args: &GenerateArgs, invocation: &[String]) -> CliResult<Code> {
    let d = args.dim;
    if d == 0 {
        return Err(Failure::usage("--dim must be positive"));
    }
    let beta = match (args.kind, &args.beta) {
        (Kind::Random, _) => None,
        (_, Some(b)) => Some(parse_beta(b)?),
        (_, None) => return Err(Failure::usage("--beta is required for mono and colorful")),
    };
    let mut config = vec![
        format!("kind={:?}", args.kind).to_lowercase(),
        format!("dim={d}"),
        format!("n={}", args.n),
        format!("seed={}", args.seed),
    ];

    let (instance, predicted) = match args.kind {
        Kind::Mono => {
            let beta = beta.clone().expect("checked above");
            config.push(format!("beta={}", to_ratio_string(&beta)));
            let spec = ConstructionSpec::new(d, args.n, beta.clone(), args.seed);
            let family = gen_example_monochromatic(&spec)?;
            let predicted = predicted_mono_count(args.n, &beta, d)?;
            (Instance::monochromatic(d, &family), Some(predicted))
        }
        Kind::Colorful => {
            let beta = beta.clone().expect("checked above");
            config.push(format!("beta={}", to_ratio_string(&beta)));
            let spec = ConstructionSpec::new(d, args.n, beta.clone(), args.seed);
            let classes = gen_construction_colorful(&spec)?;
            let predicted = predicted_colorful_count(args.n, &beta, d)?;
            (Instance::colorful(&classes), Some(predicted))
        }
        Kind::Random => {
            let model = parse_model(&args.model)?;
            let sizes = match &args.sizes {
                Some(s) => parse_list("--sizes", s)?,
                None => vec![args.n; d + 1],
            };
            config.push(format!("model={}", model.name()));
            config.push(format!(
                "sizes={}",
                sizes.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
            ));
            let classes = gen_random_classes(d, &sizes, model, args.seed)?;
            (Instance::colorful(&classes), None)
        }
    };

    let mut text = format!("# helly generate {}\n", config.join(" "));
    text.push_str(&instance.to_text());
    fs::write(&args.out, text)?;

    let sidecar_path = args.sidecar.clone().unwrap_or_else(|| {
        let mut p = args.out.clone().into_os_string();
        p.push(".json");
        p.into()
    });
    let sizes: Vec<usize> = instance.classes.iter().map(Vec::len).collect();
    let sidecar = json!({
        "invocation": invocation,
        "config": config,
        "kind": format!("{:?}", args.kind).to_lowercase(),
        "d": d,
        "n": args.n,
        "beta": beta.as_ref().map(to_ratio_string),
        "seed": args.seed,
        "class_sizes": sizes,
        "whole_space_members": instance.family().iter().filter(|s| s.is_whole_space()).count(),
        "predicted_intersecting_count": predicted.map(|p| p.to_string()),
    });
    emit_json(&sidecar, Some(&sidecar_path))?;
    Ok(Code::Ok)
}

#[derive(Serialize)]
struct ClassAnalysis {
    size: usize,
    nonintersecting_tuples: usize,
    greedy_matching: Vec<Vec<usize>>,
    matching_number: Option<usize>,
    independence_number: Option<usize>,
    max_intersecting: Option<helly_core::SubfamilyResult>,
}

fn analyze_class(
    index: usize,
    family: &[ConvexSet],
    d: usize,
    max_exact_n: usize,
) -> CliResult<ClassAnalysis> {
    let h = nonintersecting_hypergraph(family, d + 1)?;
    let m = greedy_maximal_matching(&h);
    let exact_graph = h.n() <= EXACT_MAX_VERTICES;
    let max_intersecting = if family.len() <= max_exact_n {
        let mut r = max_intersecting_subfamily_exact(family, max_exact_n)?;
        r.class_index = index;
        Some(r)
    } else {
        None
    };
    Ok(ClassAnalysis {
        size: family.len(),
        nonintersecting_tuples: h.edges().len(),
        greedy_matching: m.edges().to_vec(),
        matching_number: exact_graph.then(|| matching_number_exact(&h)).transpose()?,
        independence_number: exact_graph.then(|| independence_number_exact(&h)).transpose()?,
        max_intersecting,
    })
}

pub fn analyze(args: &AnalyzeArgs, invocation: &[String]) -> CliResult<Code> {
    let instance = read_instance(&args.input)?;
    let d = instance.dim;
    let report = if instance.is_colorful() {
        let classes = instance.to_color_classes()?;
        let profile = count_intersecting_colorful(&classes)?;
        let extraction = extract_intersecting_subfamily(&classes)?;
        let per_class = classes
            .classes()
            .iter()
            .enumerate()
            .map(|(i, c)| analyze_class(i, c, d, args.max_exact_n))
            .collect::<CliResult<Vec<_>>>()?;
        json!({
            "invocation": invocation,
            "dim": d,
            "colorful": true,
            "profile": profile,
            "classes": per_class,
            "extraction": extraction,
        })
    } else {
        let family = instance.family();
        let profile = count_intersecting_monochromatic(&family, d)?;
        json!({
            "invocation": invocation,
            "dim": d,
            "colorful": false,
            "profile": profile,
            "family": analyze_class(0, &family, d, args.max_exact_n)?,
        })
    };
    emit_json(&report, args.out.as_deref())?;
    Ok(Code::Ok)
}

pub fn verify(args: &VerifyArgs, invocation: &[String]) -> CliResult<Code> {
    let instance = read_instance(&args.input)?;
    let classes = colored_classes(&instance)?;
    if args.require_exact {
        if let Some(n) = classes.sizes().into_iter().find(|&n| n > args.max_exact_n) {
            return Err(helly_core::Error::ScaleLimit {
                what: "color class for exact maximization",
                size: n,
                limit: args.max_exact_n,
            }
            .into());
        }
    }
    let options = VerifyOptions {
        max_exact_n: args.max_exact_n,
        ..VerifyOptions::default()
    };
    let mut report = verify_theorem(&classes, &options)?;
    report.invocation = invocation.to_vec();
    emit_json(&report, args.out.as_deref())?;
    if report.scale_limited {
        eprintln!("note: classes above --max-exact-n; beta_observed comes from extraction");
    }
    Ok(if report.passed() { Code::Ok } else { Code::Verdict })
}

pub fn sweep(args: &SweepArgs, invocation: &[String]) -> CliResult<Code> {
    let d = args.dim;
    if d == 0 {
        return Err(Failure::usage("--dim must be positive"));
    }
    let options = VerifyOptions {
        max_exact_n: args.max_exact_n,
        ..VerifyOptions::default()
    };
    let mut rows = Vec::new();
    match (&args.beta, &args.seeds) {
        (Some(grid), None) => {
            let betas = grid
                .split(',')
                .filter(|t| !t.trim().is_empty())
                .map(parse_beta)
                .collect::<CliResult<Vec<_>>>()?;
            if betas.is_empty() {
                return Err(Failure::usage("--beta grid is empty"));
            }
            for beta in betas {
                let spec = ConstructionSpec::new(d, args.n, beta.clone(), args.seed);
                let classes = gen_construction_colorful(&spec)?;
                let report = verify_theorem(&classes, &options)?;
                let param = format!("beta={}", to_ratio_string(&beta));
                rows.push(SweepRow::from_report("construction", &param, &report));
            }
        }
        (None, Some(grid)) => {
            let seeds = parse_seeds(grid)?;
            if seeds.is_empty() {
                return Err(Failure::usage("--seeds grid is empty"));
            }
            let model = parse_model(&args.model)?;
            for seed in seeds {
                let classes = gen_random_classes(d, &vec![args.n; d + 1], model, seed)?;
                let report = verify_theorem(&classes, &options)?;
                let param = format!("seed={seed}");
                rows.push(SweepRow::from_report(model.name(), &param, &report));
            }
        }
        _ => return Err(Failure::usage("give exactly one of --beta or --seeds")),
    }

    let comments = vec![format!("invocation: {}", invocation.join(" "))];
    let mut buf = Vec::new();
    write_sweep_csv(&mut buf, &comments, &rows)?;
    match &args.out {
        Some(p) => fs::write(p, buf)?,
        None => std::io::stdout().write_all(&buf)?,
    }
    let all_hold = rows.iter().all(|r| r.lower_bound_holds);
    Ok(if all_hold { Code::Ok } else { Code::Verdict })
}

pub fn oracle_check(args: &OracleArgs) -> CliResult<Code> {
    if !(1..=3).contains(&args.dim) {
        return Err(Failure::usage("--dim must be 1, 2 or 3"));
    }
    let summary = helly_core::geometry::differential_check(args.dim, args.count, args.seed)?;
    println!("{}/{} agree", summary.agree, summary.total);
    if let Some((seed, system)) = &summary.first_disagreement {
        let set = ConvexSet::new(args.dim, system.clone())?;
        let dump = Instance::monochromatic(args.dim, &[set]).to_text();
        eprintln!("first disagreement (case seed {seed}):\n{dump}");
        return Ok(Code::Verdict);
    }
    Ok(Code::Ok)
}
