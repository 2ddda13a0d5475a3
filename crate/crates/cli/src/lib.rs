//! Command-line front end for `mgnet`: regions, validation, load ledgers,
//! closed forms, parameter sweeps and figure datasets.

pub mod figures;
pub mod table;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use mgnet::association::{check_d, subnet_tau};
use mgnet::loads::{finite_prelogs, per_subnet_prelogs, thresholds, Thresholds};
use mgnet::rational::QJson;
use mgnet::regions::RegionRecord;
use mgnet::topology::{build_hex, build_hex_torus, build_sectored_hex, build_sectored_torus, build_wyner};
use mgnet::{
    assign, closed_form, message_ledger, parse_q, qi, validate, ClosedForm, MgError, Model, Network, SchemeKind, Q,
};

use figures::{figure, Figure, FigureId};
use table::{dec, exact, figure_csv, polyline_csv, Table};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Model(#[from] MgError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    /// 2 for bad input, 1 for failures inside the tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Model(MgError::Unvalidated(_) | MgError::Mismatch(_)) => 1,
            CliError::Model(_) => 2,
            CliError::Io(_) | CliError::Internal(_) => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "mgnet", version, about = "Mixed-delay cooperation: MG regions, loads and figure data")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Achievable MG region for given cooperation prelogs.
    Region(RegionArgs),
    /// Build a network, associate it and run the structural checks.
    Validate(NetArgs),
    /// Count cooperation messages and compare with the closed form.
    Loads(NetArgs),
    /// Asymptotic MG pair and prelogs of one or all schemes.
    ClosedForm(ClosedFormArgs),
    /// Plot data for one of fig5a, fig5b, fig8, fig10.
    Figure(FigureArgs),
    /// Thresholds over a range of D, or regions over a prelog grid.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Wyner,
    Hex,
    Sectorized,
}

impl From<ModelArg> for Model {
    fn from(m: ModelArg) -> Model {
        match m {
            ModelArg::Wyner => Model::WynerLinear,
            ModelArg::Hex => Model::Hexagonal,
            ModelArg::Sectorized => Model::SectorizedHexagonal,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_rational(s: &str) -> std::result::Result<Q, String> {
    parse_q(s).map_err(|e| e.to_string())
}

fn parse_scheme(s: &str) -> std::result::Result<SchemeKind, String> {
    SchemeKind::parse(s).map_err(|e| e.to_string())
}

#[derive(Debug, Args)]
pub struct RegionArgs {
    #[arg(long, value_enum)]
    pub model: ModelArg,
    #[arg(long = "D")]
    pub d: u32,
    #[arg(long = "L", default_value_t = 1)]
    pub l: u32,
    #[arg(long, value_parser = parse_rational)]
    pub mu_tx: Q,
    #[arg(long, value_parser = parse_rational)]
    pub mu_rx: Q,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct NetArgs {
    #[arg(long, value_enum)]
    pub model: ModelArg,
    #[arg(long = "D")]
    pub d: u32,
    #[arg(long = "L", default_value_t = 1)]
    pub l: u32,
    #[arg(long, value_parser = parse_scheme, default_value = "both-rx")]
    pub scheme: SchemeKind,
    /// Number of cells in the Wyner model.
    #[arg(long = "K")]
    pub k: Option<usize>,
    /// Hex-distance radius of a finite hexagonal network.
    #[arg(long)]
    pub radius: Option<u32>,
    /// `MxM` whole subnets on a torus.
    #[arg(long)]
    pub tiling: Option<String>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct ClosedFormArgs {
    #[arg(long, value_enum)]
    pub model: ModelArg,
    #[arg(long = "D")]
    pub d: u32,
    #[arg(long = "L", default_value_t = 1)]
    pub l: u32,
    /// Omit for every scheme the model supports at this D.
    #[arg(long, value_parser = parse_scheme)]
    pub scheme: Option<SchemeKind>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    pub which: FigureId,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub model: ModelArg,
    #[arg(long = "L", default_value_t = 1)]
    pub l: u32,
    /// Single value or inclusive range `a..b`.
    #[arg(long = "D")]
    pub d: String,
    #[arg(long, default_value_t = 2)]
    pub step: u32,
    /// Prelog range `a..b`; with `--mu-rx`, sweeps regions instead of thresholds.
    #[arg(long)]
    pub mu_tx: Option<String>,
    #[arg(long)]
    pub mu_rx: Option<String>,
    #[arg(long, value_parser = parse_rational, default_value = "1/2")]
    pub mu_step: Q,
    #[command(flatten)]
    pub output: Output,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn qjson(v: Q) -> Value {
    serde_json::to_value(QJson::from(v)).expect("rational json")
}

fn to_json<T: serde::Serialize>(v: &T) -> CliResult<Value> {
    serde_json::to_value(v).map_err(|e| CliError::Internal(e.to_string()))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value");
    s.push('\n');
    s
}

/// `a..b` (inclusive) or a single value.
fn parse_range<T, F>(text: &str, parse: F) -> CliResult<(T, T)>
where
    T: Copy + PartialOrd,
    F: Fn(&str) -> Option<T>,
{
    let bad = || usage(format!("cannot parse range `{text}`"));
    let (lo, hi) = match text.split_once("..") {
        Some((a, b)) => (parse(a.trim()).ok_or_else(bad)?, parse(b.trim()).ok_or_else(bad)?),
        None => {
            let v = parse(text.trim()).ok_or_else(bad)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(usage(format!("empty range `{text}`")));
    }
    Ok((lo, hi))
}

fn parse_tiling(text: &str) -> CliResult<u32> {
    let bad = || usage(format!("--tiling expects MxM with equal positive sides, got `{text}`"));
    let (a, b) = text.split_once(['x', 'X']).ok_or_else(bad)?;
    let (a, b): (u32, u32) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
    if a != b || a == 0 {
        return Err(bad());
    }
    Ok(a)
}

pub fn build_network(args: &NetArgs) -> CliResult<Network> {
    let model: Model = args.model.into();
    check_d(model, args.scheme, args.d)?;
    match model {
        Model::WynerLinear => {
            if args.radius.is_some() || args.tiling.is_some() {
                return Err(usage("--radius and --tiling apply to the hexagonal models; use --K"));
            }
            let k = args.k.ok_or_else(|| usage("--K is required for the wyner model"))?;
            Ok(build_wyner(k, args.l)?)
        }
        _ => {
            if args.k.is_some() {
                return Err(usage("--K applies to the wyner model; use --radius or --tiling"));
            }
            let sectored = model == Model::SectorizedHexagonal;
            match (args.radius, &args.tiling) {
                (Some(r), None) if sectored => Ok(build_sectored_hex(r, args.l)?),
                (Some(r), None) => Ok(build_hex(r, args.l)?),
                (None, Some(t)) => {
                    let m = parse_tiling(t)?;
                    let tau = subnet_tau(model, args.scheme, args.d).max(1);
                    if sectored {
                        Ok(build_sectored_torus(tau, m, args.l)?)
                    } else {
                        Ok(build_hex_torus(tau, m, args.l)?)
                    }
                }
                _ => Err(usage("give exactly one of --radius or --tiling")),
            }
        }
    }
}

fn head(model: Model, scheme: SchemeKind, d: u32, l: u32) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("model".into(), json!(model.name()));
    m.insert("scheme".into(), json!(scheme.name()));
    m.insert("D".into(), json!(d));
    m.insert("L".into(), json!(l));
    m
}

/// Flat `key,value,exact` rows for object-shaped results.
fn kv_csv(rows: &[(String, String, String)]) -> String {
    let mut t = Table::new(&["key", "value", "exact"]);
    for (k, v, e) in rows {
        t.push(vec![k.clone(), v.clone(), e.clone()]);
    }
    t.render()
}

fn q_row(key: &str, v: Q) -> (String, String, String) {
    (key.into(), dec(&v), exact(&v))
}

fn plain_row(key: &str, v: impl ToString) -> (String, String, String) {
    (key.into(), v.to_string(), String::new())
}

pub fn cmd_region(a: &RegionArgs) -> CliResult<String> {
    let rec = RegionRecord::compute(a.model.into(), a.d, a.l, a.mu_tx, a.mu_rx)?;
    Ok(match a.output.format.unwrap_or(Format::Json) {
        Format::Json => pretty(&to_json(&rec)?),
        Format::Csv => polyline_csv(&rec.region().polyline()),
    })
}

pub fn cmd_validate(a: &NetArgs) -> CliResult<String> {
    let net = build_network(a)?;
    let assoc = assign(&net, a.d, a.scheme)?;
    let (subnets, report) = validate(&net, &assoc)?;
    let mastered = subnets.iter().filter(|s| s.master.is_some()).count();
    Ok(match a.output.format.unwrap_or(Format::Json) {
        Format::Json => {
            let mut m = head(net.model, a.scheme, a.d, a.l);
            m.insert("nodes".into(), json!(net.len()));
            m.insert("subnets".into(), json!(subnets.len()));
            m.insert("subnets_with_master".into(), json!(mastered));
            m.insert("pass".into(), json!(report.ok()));
            m.insert("report".into(), to_json(&report)?);
            pretty(&Value::Object(m))
        }
        Format::Csv => kv_csv(&[
            plain_row("nodes", net.len()),
            plain_row("subnets", subnets.len()),
            plain_row("subnets_with_master", mastered),
            plain_row("fast_independent", report.fast_independent),
            plain_row("subnets_disjoint", report.subnets_disjoint),
            plain_row("master_reachable", report.master_reachable),
            plain_row("hop_budget", report.hop_budget),
            plain_row("violations", report.violations.len()),
            plain_row("relaxed", report.relaxed.len()),
        ]),
    })
}

pub fn cmd_loads(a: &NetArgs) -> CliResult<String> {
    let net = build_network(a)?;
    let assoc = assign(&net, a.d, a.scheme)?;
    let (subnets, report) = validate(&net, &assoc)?;
    if !report.ok() {
        let first = report.violations.first().map(|v| v.reason.clone()).unwrap_or_default();
        return Err(usage(format!(
            "association fails validation ({} violations; first: {first})",
            report.violations.len()
        )));
    }
    let ledger = message_ledger(&net, &assoc, &subnets)?;
    let finite = finite_prelogs(&ledger, &net)?;
    let per_subnet = if ledger.subnets > 0 { per_subnet_prelogs(&ledger, net.model, a.d, a.l)? } else { finite };
    let cf = closed_form(net.model, a.scheme, a.d, a.l)?;
    let exact_match = per_subnet == (cf.mu_tx, cf.mu_rx);
    Ok(match a.output.format.unwrap_or(Format::Json) {
        Format::Json => {
            let mut m = head(net.model, a.scheme, a.d, a.l);
            m.insert("ledger".into(), to_json(&ledger)?);
            m.insert("finite".into(), json!({"mu_tx": qjson(finite.0), "mu_rx": qjson(finite.1)}));
            m.insert("per_subnet".into(), json!({"mu_tx": qjson(per_subnet.0), "mu_rx": qjson(per_subnet.1)}));
            m.insert("closed_form".into(), to_json(&cf)?);
            m.insert("mu_tx".into(), qjson(per_subnet.0));
            m.insert("mu_rx".into(), qjson(per_subnet.1));
            m.insert("exact_match".into(), json!(exact_match));
            pretty(&Value::Object(m))
        }
        Format::Csv => {
            let (tx, rx) = ledger.totals();
            kv_csv(&[
                plain_row("subnets", ledger.subnets),
                plain_row("precancel_msgs", ledger.precancel_msgs),
                plain_row("fast_share_msgs", ledger.fast_share_msgs),
                plain_row("fanin_msgs", ledger.fanin_msgs),
                plain_row("fanout_msgs", ledger.fanout_msgs),
                plain_row("q_dedup", ledger.q_dedup),
                plain_row("master_share_dedup", ledger.master_share_dedup),
                plain_row("tx_total", tx),
                plain_row("rx_total", rx),
                q_row("finite_mu_tx", finite.0),
                q_row("finite_mu_rx", finite.1),
                q_row("mu_tx", per_subnet.0),
                q_row("mu_rx", per_subnet.1),
                q_row("closed_form_mu_tx", cf.mu_tx),
                q_row("closed_form_mu_rx", cf.mu_rx),
                plain_row("exact_match", exact_match),
            ])
        }
    })
}

fn closed_form_table(forms: &[ClosedForm]) -> String {
    let mut t = Table::new(&[
        "model",
        "scheme",
        "D",
        "L",
        "s_f",
        "s_s",
        "mu_tx",
        "mu_rx",
        "s_f_exact",
        "s_s_exact",
        "mu_tx_exact",
        "mu_rx_exact",
    ]);
    for c in forms {
        let vals = [c.s_f, c.s_s, c.mu_tx, c.mu_rx];
        let mut row = vec![c.model.name().into(), c.scheme.name().into(), c.d.to_string(), c.l.to_string()];
        row.extend(vals.iter().map(dec));
        row.extend(vals.iter().map(exact));
        t.push(row);
    }
    t.render()
}

pub fn cmd_closed_form(a: &ClosedFormArgs) -> CliResult<String> {
    let model: Model = a.model.into();
    let forms: Vec<ClosedForm> = match a.scheme {
        Some(s) => vec![closed_form(model, s, a.d, a.l)?],
        None => {
            let all: Vec<ClosedForm> =
                SchemeKind::ALL.iter().filter_map(|&s| closed_form(model, s, a.d, a.l).ok()).collect();
            if all.len() == 1 {
                // only no-coop survived; report why the cooperative schemes did not
                closed_form(model, SchemeKind::SlowOnlyCompRx, a.d, a.l)?;
            }
            all
        }
    };
    Ok(match a.output.format.unwrap_or(Format::Json) {
        Format::Json => pretty(&to_json(&forms)?),
        Format::Csv => closed_form_table(&forms),
    })
}

pub fn figure_json(f: &Figure) -> CliResult<Value> {
    let curves: Vec<Value> = f
        .curves
        .iter()
        .map(|c| {
            Ok(json!({
                "id": c.id,
                "color": c.color,
                "mu_tx": c.mu_tx.map(qjson),
                "mu_rx": c.mu_rx.map(qjson),
                "points": to_json(&c.points)?,
            }))
        })
        .collect::<CliResult<_>>()?;
    Ok(json!({"figure": f.figure.name(), "model": f.model.name(), "D": f.d, "L": f.l, "curves": curves}))
}

pub fn cmd_figure(a: &FigureArgs) -> CliResult<String> {
    let f = figure(a.which)?;
    Ok(match a.output.format.unwrap_or(Format::Csv) {
        Format::Json => pretty(&figure_json(&f)?),
        Format::Csv => figure_csv(&f),
    })
}

fn threshold_cells(t: &Thresholds) -> Vec<Option<Q>> {
    vec![
        Some(t.s_max),
        Some(t.s_f_both),
        Some(t.s_s_both),
        Some(t.s_no_coop),
        Some(t.tx_r),
        Some(t.rx_r),
        t.tx_t,
        t.rx_t,
        Some(t.mu_s),
    ]
}

const THRESHOLD_COLUMNS: [&str; 9] =
    ["s_max", "s_f_both", "s_s_both", "s_no_coop", "tx_r", "rx_r", "tx_t", "rx_t", "mu_s"];

fn q_grid(lo: Q, hi: Q, step: Q) -> Vec<Q> {
    let mut out = Vec::new();
    let mut v = lo;
    while v <= hi {
        out.push(v);
        v += step;
    }
    out
}

pub fn cmd_sweep(a: &SweepArgs) -> CliResult<String> {
    let model: Model = a.model.into();
    let (lo, hi) = parse_range(&a.d, |s| s.parse::<u32>().ok())?;
    if a.step == 0 {
        return Err(usage("--step must be positive"));
    }
    let ds: Vec<u32> =
        (lo..=hi).step_by(a.step as usize).filter(|&d| check_d(model, SchemeKind::BothCompRx, d).is_ok()).collect();
    if ds.is_empty() {
        // surface the precondition that rules out every D in the range
        check_d(model, SchemeKind::BothCompRx, lo)?;
        return Err(usage(format!("no valid D in `{}`", a.d)));
    }
    let format = a.output.format.unwrap_or(Format::Json);
    match (&a.mu_tx, &a.mu_rx) {
        (None, None) => {
            let rows: Vec<(u32, Vec<Option<Q>>)> =
                ds.iter().map(|&d| Ok((d, threshold_cells(&thresholds(model, d, a.l)?)))).collect::<CliResult<_>>()?;
            Ok(match format {
                Format::Json => {
                    let list: Vec<Value> = rows
                        .iter()
                        .map(|(d, cells)| {
                            let mut m = serde_json::Map::new();
                            m.insert("D".into(), json!(d));
                            for (name, v) in THRESHOLD_COLUMNS.iter().zip(cells) {
                                m.insert((*name).into(), v.map(qjson).unwrap_or(Value::Null));
                            }
                            Value::Object(m)
                        })
                        .collect();
                    pretty(&json!({"model": model.name(), "L": a.l, "rows": list}))
                }
                Format::Csv => {
                    let mut headers = vec!["model", "L", "D"];
                    headers.extend(THRESHOLD_COLUMNS);
                    let exact_names: Vec<String> = THRESHOLD_COLUMNS.iter().map(|c| format!("{c}_exact")).collect();
                    headers.extend(exact_names.iter().map(String::as_str));
                    let mut t = Table::new(&headers);
                    for (d, cells) in &rows {
                        let mut row = vec![model.name().to_string(), a.l.to_string(), d.to_string()];
                        row.extend(cells.iter().map(|v| v.as_ref().map(dec).unwrap_or_default()));
                        row.extend(cells.iter().map(|v| v.as_ref().map(exact).unwrap_or_default()));
                        t.push(row);
                    }
                    t.render()
                }
            })
        }
        (Some(tx), Some(rx)) => {
            if a.mu_step <= qi(0) {
                return Err(usage("--mu-step must be positive"));
            }
            let (tx_lo, tx_hi) = parse_range(tx, |s| parse_q(s).ok())?;
            let (rx_lo, rx_hi) = parse_range(rx, |s| parse_q(s).ok())?;
            let mut records = Vec::new();
            for &d in &ds {
                for t in q_grid(tx_lo, tx_hi, a.mu_step) {
                    for r in q_grid(rx_lo, rx_hi, a.mu_step) {
                        records.push(RegionRecord::compute(model, d, a.l, t, r)?);
                    }
                }
            }
            Ok(match format {
                Format::Json => pretty(&to_json(&records)?),
                Format::Csv => {
                    let mut t = Table::new(&[
                        "model",
                        "D",
                        "L",
                        "mu_tx",
                        "mu_rx",
                        "vertices",
                        "max_sum",
                        "max_sum_exact",
                        "polyline_exact",
                    ]);
                    for rec in &records {
                        let region = rec.region();
                        let line: Vec<String> =
                            region.polyline().iter().map(|p| format!("{}:{}", exact(&p.s_f), exact(&p.s_s))).collect();
                        let sum = region.max_sum();
                        t.push(vec![
                            model.name().into(),
                            rec.d.to_string(),
                            rec.l.to_string(),
                            exact(&rec.mu_tx),
                            exact(&rec.mu_rx),
                            rec.vertices.len().to_string(),
                            dec(&sum),
                            exact(&sum),
                            line.join(";"),
                        ]);
                    }
                    t.render()
                }
            })
        }
        _ => Err(usage("give both --mu-tx and --mu-rx for a region sweep")),
    }
}

/// Runs a parsed command and returns the text it would write.
pub fn execute(cli: &Cli) -> CliResult<String> {
    match &cli.command {
        Command::Region(a) => cmd_region(a),
        Command::Validate(a) => cmd_validate(a),
        Command::Loads(a) => cmd_loads(a),
        Command::ClosedForm(a) => cmd_closed_form(a),
        Command::Figure(a) => cmd_figure(a),
        Command::Sweep(a) => cmd_sweep(a),
    }
}

fn output_of(cli: &Cli) -> &Output {
    match &cli.command {
        Command::Region(a) => &a.output,
        Command::Validate(a) | Command::Loads(a) => &a.output,
        Command::ClosedForm(a) => &a.output,
        Command::Figure(a) => &a.output,
        Command::Sweep(a) => &a.output,
    }
}

pub fn run(cli: &Cli) -> CliResult<()> {
    let text = execute(cli)?;
    match &output_of(cli).out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}
