use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use nctap::certificate::{certify, verify as verify_cert, DualCertificate};
use nctap::generators::{
    gen_chained, gen_ckkk_tap, gen_fig3_gap, gen_random_tap, gen_star_cycle, gen_tight_path, gen_triangle_tap,
    scale_graph, scale_tap, CostRange, RandomParams,
};
use nctap::inflation::inflate as inflate_graph;
use nctap::io::{digest, parse_instance, serialize_instance, Instance};
use nctap::oracle::ip::{solve_ip_2ec, solve_ip_ncss, solve_ip_tap, solve_ip_tap_2ec};
use nctap::oracle::lp::{full_graph_model, full_tap_model, solve_cut_lp, solve_ncss_lp, solve_tap_lp};
use nctap::oracle::model::LpModel;
use nctap::rational::{frac, parse};
use nctap::{CostedGraph, Error, NcssInstance, Rational, Result};
use num_traits::Signed;

use crate::report::{CertSummary, Report};
use crate::{GenerateArgs, Model};

pub struct Options {
    pub json: bool,
    pub seed: u64,
    pub scale: Option<String>,
}

impl Options {
    fn factor(&self) -> Result<Option<Rational>> {
        let Some(text) = &self.scale else { return Ok(None) };
        match parse(text) {
            Some(r) if !r.is_negative() => Ok(Some(r)),
            _ => Err(Error::BadParams(format!("--scale expects a nonnegative p/q, got `{text}`"))),
        }
    }

    fn apply(&self, instance: Instance) -> Result<Instance> {
        Ok(match (self.factor()?, instance) {
            (None, inst) => inst,
            (Some(f), Instance::Tap(t)) => Instance::Tap(scale_tap(&t, &f)),
            (Some(f), Instance::Ncss(g)) => Instance::Ncss(NcssInstance::from_graph(scale_graph(g.graph(), &f))?),
        })
    }
}

fn load(opts: &Options, path: &Path) -> Result<Instance> {
    opts.apply(parse_instance(&fs::read(path)?)?)
}

fn emit(opts: &Options, report: &mut Report) {
    report.fill_ratios();
    print!("{}", report.render(opts.json));
}

fn base_report(command: &str, instance: &Instance) -> Report {
    let (kind, nodes) = match instance {
        Instance::Tap(t) => ("tap", t.n),
        Instance::Ncss(g) => ("ncss", g.n),
    };
    Report {
        command: command.into(),
        instance_digest: digest(instance),
        kind: kind.into(),
        nodes,
        lambda: instance.as_tap().and_then(|t| t.lambda().ok()),
        ..Report::default()
    }
}

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn need<T>(value: Option<T>, flag: &str, family: &str) -> Result<T> {
    value.ok_or_else(|| Error::BadParams(format!("family {family} needs --{flag}")))
}

fn eps_arg(args: &GenerateArgs) -> Result<Rational> {
    match &args.eps {
        None => Ok(frac(1, 100)),
        Some(s) => parse(s).ok_or_else(|| Error::BadParams(format!("--eps expects p/q, got `{s}`"))),
    }
}

pub fn generate(opts: &Options, args: &GenerateArgs) -> Result<()> {
    let family = args.family.as_str();
    let tap = match family {
        "tight-path" => gen_tight_path(need(args.lambda, "lambda", family)?, &eps_arg(args)?)?,
        "chained" => gen_chained(
            need(args.lambda, "lambda", family)?,
            need(args.k, "k", family)?,
            &eps_arg(args)?,
        )?,
        "star-cycle" => gen_star_cycle(need(args.n, "n", family)?)?,
        "fig3-gap" => gen_fig3_gap(),
        "ckkk" => gen_ckkk_tap(),
        "triangle" => gen_triangle_tap(),
        "random" => gen_random_tap(&RandomParams {
            n: need(args.n, "n", family)?,
            max_lambda: args.max_lambda.unwrap_or(3),
            density: args.density,
            costs: CostRange {
                lo: args.cost_lo,
                hi: args.cost_hi,
                denom: args.cost_denom,
            },
            seed: opts.seed,
        })?,
        other => return Err(Error::UnknownFamily(other.to_string())),
    };
    let instance = opts.apply(Instance::Tap(tap))?;
    let bytes = serialize_instance(&instance);
    let mut report = base_report("generate", &instance);
    match &args.out {
        Some(path) => {
            fs::write(path, &bytes)?;
            report.output = Some(path.display().to_string());
            emit(opts, &mut report);
        }
        None => {
            // the instance goes to stdout, so the digest goes to stderr
            print!("{}", String::from_utf8_lossy(&bytes));
            eprintln!("digest {}", report.instance_digest);
        }
    }
    Ok(())
}

fn tap_only<'a>(instance: &'a Instance, command: &str) -> Result<&'a nctap::TapInstance> {
    instance
        .as_tap()
        .ok_or_else(|| Error::BadParams(format!("{command} needs a tap instance")))
}

pub fn solve(opts: &Options, path: &Path, cert_out: Option<&Path>) -> Result<()> {
    let instance = load(opts, path)?;
    let tap = tap_only(&instance, "solve")?;
    let mut report = base_report("solve", &instance);
    let start = Instant::now();
    let (cert, verified) = certify(tap)?;
    report.timings_ms.insert("greedy_and_certificate".into(), elapsed_ms(start));
    report.greedy_cost = Some(cert.greedy_cost.clone());
    report.picked = Some(cert.picked.clone());
    report.certificate = Some(CertSummary {
        feasible: true,
        harmonic: Some(verified.report.harmonic.clone()),
        lower_bound: Some(verified.report.lower_bound.clone()),
    });
    if let Some(out) = cert_out {
        let mut text = serde_json::to_string_pretty(&cert).expect("certificate serializes");
        text.push('\n');
        fs::write(out, text)?;
        report.output = Some(out.display().to_string());
    }
    emit(opts, &mut report);
    Ok(())
}

pub fn verify(opts: &Options, instance_path: &Path, cert_path: &Path) -> Result<()> {
    let instance = load(opts, instance_path)?;
    let tap = tap_only(&instance, "verify")?;
    let cert: DualCertificate = serde_json::from_slice(&fs::read(cert_path)?).map_err(|e| Error::Schema {
        context: format!("{} line {} column {}", cert_path.display(), e.line(), e.column()),
        reason: e.to_string(),
    })?;
    let start = Instant::now();
    let verified = verify_cert(tap, &cert)?;
    let mut report = base_report("verify", &instance);
    report.timings_ms.insert("verify".into(), elapsed_ms(start));
    report.greedy_cost = Some(cert.greedy_cost.clone());
    report.certificate = Some(CertSummary {
        feasible: true,
        harmonic: Some(verified.report.harmonic),
        lower_bound: Some(verified.report.lower_bound),
    });
    emit(opts, &mut report);
    Ok(())
}

pub fn exact(opts: &Options, path: &Path, lp: bool, ip: bool, model: Model) -> Result<()> {
    let instance = load(opts, path)?;
    let (lp, ip) = if lp || ip { (lp, ip) } else { (true, true) };
    let mut report = base_report("exact", &instance);
    report.model = Some(model_name(model).into());
    if lp {
        let start = Instant::now();
        let sol = match (&instance, model) {
            (Instance::Tap(t), Model::Partition) => solve_tap_lp(t)?.solution,
            (Instance::Tap(t), Model::Cut) => solve_cut_lp(&t.to_graph())?.solution,
            (Instance::Ncss(g), Model::Partition) => solve_ncss_lp(g)?.solution,
            (Instance::Ncss(g), Model::Cut) => solve_cut_lp(g.graph())?.solution,
        };
        report.timings_ms.insert("lp".into(), elapsed_ms(start));
        report.lp_opt = Some(sol.objective);
        report.lp_rounds = Some(sol.rounds);
    }
    if ip {
        let start = Instant::now();
        let sol = match (&instance, model) {
            (Instance::Tap(t), Model::Partition) => solve_ip_tap(t)?,
            (Instance::Tap(t), Model::Cut) => solve_ip_tap_2ec(t)?,
            (Instance::Ncss(g), Model::Partition) => solve_ip_ncss(g)?,
            (Instance::Ncss(g), Model::Cut) => solve_ip_2ec(g.graph())?,
        };
        report.timings_ms.insert("ip".into(), elapsed_ms(start));
        report.ip_opt = Some(sol.cost);
        report.ip_solution = Some(sol.chosen);
    }
    emit(opts, &mut report);
    Ok(())
}

fn model_name(model: Model) -> &'static str {
    match model {
        Model::Partition => "partition",
        Model::Cut => "cut",
    }
}

fn graph_of(instance: &Instance) -> CostedGraph {
    match instance {
        Instance::Tap(t) => t.to_graph(),
        Instance::Ncss(g) => g.graph().clone(),
    }
}

fn default_map_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    out.with_file_name(format!("{stem}.map.json"))
}

pub fn inflate(opts: &Options, path: &Path, out: &Path, map_out: Option<&Path>) -> Result<()> {
    let instance = load(opts, path)?;
    let start = Instant::now();
    let (big, map) = inflate_graph(&graph_of(&instance))?;
    let elapsed = elapsed_ms(start);
    let inflated = Instance::Ncss(big);
    fs::write(out, serialize_instance(&inflated))?;
    let map_path = map_out.map(Path::to_path_buf).unwrap_or_else(|| default_map_path(out));
    let mut text = serde_json::to_string_pretty(&map).expect("map serializes");
    text.push('\n');
    fs::write(&map_path, text)?;

    let mut report = base_report("inflate", &inflated);
    report.timings_ms.insert("inflate".into(), elapsed);
    report.output = Some(format!("{} and {}", out.display(), map_path.display()));
    emit(opts, &mut report);
    Ok(())
}

pub fn ratio(opts: &Options, path: &Path) -> Result<()> {
    let instance = load(opts, path)?;
    let graph = graph_of(&instance);
    let mut report = base_report("ratio", &instance);
    report.model = Some("cut".into());

    let start = Instant::now();
    report.lp_opt = Some(solve_cut_lp(&graph)?.solution.objective);
    report.timings_ms.insert("lp".into(), elapsed_ms(start));
    let start = Instant::now();
    report.ip_opt = Some(match &instance {
        Instance::Tap(t) => solve_ip_tap_2ec(t)?.cost,
        Instance::Ncss(_) => solve_ip_2ec(&graph)?.cost,
    });
    report.timings_ms.insert("ip".into(), elapsed_ms(start));

    let start = Instant::now();
    let (big, _) = inflate_graph(&graph)?;
    let wrapped = Instance::Ncss(big);
    let mut inner = base_report("ratio", &wrapped);
    let Instance::Ncss(big) = &wrapped else { unreachable!() };
    inner.model = Some("partition".into());
    inner.timings_ms.insert("inflate".into(), elapsed_ms(start));
    let start = Instant::now();
    inner.lp_opt = Some(solve_ncss_lp(big)?.solution.objective);
    inner.timings_ms.insert("lp".into(), elapsed_ms(start));
    let start = Instant::now();
    inner.ip_opt = Some(solve_ip_ncss(big)?.cost);
    inner.timings_ms.insert("ip".into(), elapsed_ms(start));
    report.inflated = Some(Box::new(inner));

    report.fill_ratios();
    let outer = report.ratios.ip_over_lp.clone();
    let inner = report.inflated.as_ref().and_then(|r| r.ratios.ip_over_lp.clone());
    report.ratios_equal = Some(outer.is_some() && outer == inner);
    emit(opts, &mut report);
    Ok(())
}

fn export_model(instance: &Instance, model: Model, full: bool) -> Result<LpModel> {
    Ok(match (instance, model, full) {
        (Instance::Tap(t), Model::Partition, false) => solve_tap_lp(t)?.model,
        (Instance::Tap(t), Model::Partition, true) => full_tap_model(t)?,
        (Instance::Ncss(g), Model::Partition, false) => solve_ncss_lp(g)?.model,
        (Instance::Ncss(g), Model::Partition, true) => full_graph_model(g.graph(), true)?,
        (inst, Model::Cut, false) => solve_cut_lp(&graph_of(inst))?.model,
        (inst, Model::Cut, true) => full_graph_model(&graph_of(inst), false)?,
    })
}

pub fn lp_export(opts: &Options, path: &Path, model: Model, full: bool, out: Option<&Path>) -> Result<()> {
    let instance = load(opts, path)?;
    let text = export_model(&instance, model, full)?.to_lp_format();
    match out {
        None => print!("{text}"),
        Some(out) => {
            fs::write(out, &text)?;
            let mut report = base_report("lp-export", &instance);
            report.model = Some(model_name(model).into());
            report.output = Some(out.display().to_string());
            emit(opts, &mut report);
        }
    }
    Ok(())
}
