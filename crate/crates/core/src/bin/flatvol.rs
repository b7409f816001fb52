use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use flatvol::cache::{self, LoadStatus};
use flatvol::charts::{mv_ratio, mv_table_entry_with};
use flatvol::piecewise::{an_polynomial, piece_to_json, SignDomain};
use flatvol::recursion::Engine;
use flatvol::suites::{self, Suite};
use flatvol::tables::{rows_for, TableRow};
use flatvol::{minimal_denominator, weights_from_signature, Error, PiValue, Rational, Signature, WeightVector};

#[derive(Parser)]
#[command(name = "flatvol", version, about = "Exact intersection numbers and volumes of flat sphere strata")]
struct Cli {
    /// JSON memo file, loaded before and saved after the command
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Report memo hits on stderr
    #[arg(long, short, global = true)]
    verbose: bool,
    /// Add decimal renderings next to exact values
    #[arg(long, global = true)]
    approx: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Input {
    /// Weights "mu_1,...,mu_n"
    #[arg(long, conflicts_with = "signature")]
    weights: Option<String>,
    /// Signature "k_1,...,k_n:d"
    #[arg(long)]
    signature: Option<String>,
    /// The signature lists -k_i, as in the table labels
    #[arg(long)]
    neg_orders: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// A_n, J_n and the minimal denominator
    An(Input),
    /// Volumes; ratio and table volume need a signature with one reflex point
    Volume(Input),
    /// Reproduce a reference table (n = 4 or 5)
    Table {
        #[arg(long)]
        appendix_b: bool,
        #[arg(long, value_parser = clap::value_parser!(u8).range(4..=5))]
        n: u8,
        #[arg(long, conflicts_with = "json")]
        csv: bool,
        #[arg(long)]
        json: bool,
        /// Compare with the embedded expected values; exit 2 on mismatch
        #[arg(long)]
        diff: bool,
        /// With --diff, compare column 3 only
        #[arg(long, requires = "diff")]
        col3_only: bool,
    },
    /// Polynomial piece of A_n on the sign domain of a generic sample
    Piecewise {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        json: bool,
    },
    /// Run a property suite
    Check {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Recursion terms at mu as JSON
    Explain(Input),
}

enum Fail {
    Validation(String),
    Mismatch(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Validation(e.to_string())
    }
}

impl From<io::Error> for Fail {
    fn from(e: io::Error) -> Self {
        Fail::Validation(format!("i/o: {e}"))
    }
}

type Out = Result<(), Fail>;

struct Ctx {
    engine: Engine,
    approx: bool,
}

impl Ctx {
    fn rational(&self, name: &str, x: &Rational) -> String {
        match (self.approx, x.to_f64()) {
            (true, Some(f)) => format!("{name} = {x}  (~ {f:.12e})"),
            _ => format!("{name} = {x}"),
        }
    }

    fn pi_value(&self, name: &str, x: &PiValue) -> String {
        if self.approx {
            format!("{name} = {x}  (~ {:.12e})", x.approx())
        } else {
            format!("{name} = {x}")
        }
    }
}

fn resolve(input: &Input) -> Result<(WeightVector, Option<Signature>), Fail> {
    match (&input.weights, &input.signature) {
        (Some(w), None) => {
            if input.neg_orders {
                return Err(Fail::Validation("--neg-orders applies to --signature only".into()));
            }
            Ok((WeightVector::parse(w)?, None))
        }
        (None, Some(s)) => {
            let k = Signature::parse(s, input.neg_orders)?;
            Ok((weights_from_signature(&k), Some(k)))
        }
        _ => Err(Fail::Validation("give exactly one of --weights or --signature".into())),
    }
}

fn cmd_an(ctx: &Ctx, input: &Input, out: &mut impl Write) -> Out {
    let (mu, _) = resolve(input)?;
    writeln!(out, "{}", ctx.rational("A_n", &ctx.engine.a_n(&mu)))?;
    writeln!(out, "{}", ctx.rational("J_n", &ctx.engine.j_n(&mu)))?;
    writeln!(out, "e = {}", minimal_denominator(&mu))?;
    Ok(())
}

fn cmd_volume(ctx: &Ctx, input: &Input, out: &mut impl Write) -> Out {
    let (mu, kappa) = resolve(input)?;
    writeln!(out, "{}", ctx.pi_value("vol1", &ctx.engine.vol1(&mu)))?;
    if let Some(k) = kappa {
        match mv_ratio(&k) {
            Ok(r) => {
                writeln!(out, "{}", ctx.rational("ratio", &r))?;
                writeln!(out, "{}", ctx.pi_value("mv_volume", &mv_table_entry_with(&ctx.engine, &k)?))?;
            }
            Err(e @ (Error::UnsupportedChart(_) | Error::UnsupportedLevel(_))) => {
                writeln!(out, "ratio = unsupported ({e})")?;
                writeln!(out, "mv_volume = unsupported")?;
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(())
}

struct Computed {
    row: TableRow,
    col3: Rational,
    ratio: Option<Rational>,
    mv: Option<PiValue>,
}

fn compute_rows(ctx: &Ctx, n: usize) -> Result<Vec<Computed>, Fail> {
    rows_for(n)
        .into_iter()
        .map(|row| {
            let k = row.signature();
            let col3 = ctx.engine.a_n(&weights_from_signature(&k));
            let (ratio, mv) = if row.reflex_count() <= 1 {
                (Some(mv_ratio(&k)?), Some(mv_table_entry_with(&ctx.engine, &k)?))
            } else {
                (None, None)
            };
            Ok(Computed { row, col3, ratio, mv })
        })
        .collect()
}

fn or_unsupported<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map_or_else(|| "unsupported".to_string(), |v| v.to_string())
}

fn cmd_table(ctx: &Ctx, n: usize, csv: bool, as_json: bool, diff: bool, col3_only: bool, out: &mut impl Write) -> Out {
    let rows = compute_rows(ctx, n)?;
    if csv {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["d", "kappa", "col3", "ratio", "mv_volume"];
        if ctx.approx {
            header.extend(["col3_approx", "ratio_approx", "mv_volume_approx"]);
        }
        w.write_record(&header).map_err(|e| Fail::Validation(e.to_string()))?;
        for c in &rows {
            let mut rec =
                vec![c.row.d.to_string(), c.row.label.clone(), c.col3.to_string(), or_unsupported(&c.ratio), or_unsupported(&c.mv)];
            if ctx.approx {
                rec.push(c.col3.to_f64().unwrap_or(f64::NAN).to_string());
                rec.push(c.ratio.as_ref().and_then(|r| r.to_f64()).map_or("unsupported".into(), |f| f.to_string()));
                rec.push(c.mv.as_ref().map_or("unsupported".into(), |m| m.approx().to_string()));
            }
            w.write_record(&rec).map_err(|e| Fail::Validation(e.to_string()))?;
        }
        out.write_all(&w.into_inner().map_err(|e| Fail::Validation(e.to_string()))?)?;
    } else if as_json {
        let v: Vec<Value> = rows
            .iter()
            .map(|c| {
                let mut o = json!({
                    "table": c.row.table,
                    "d": c.row.d,
                    "kappa": c.row.label,
                    "col3": c.col3.to_string(),
                    "ratio": or_unsupported(&c.ratio),
                    "mv_volume": or_unsupported(&c.mv),
                });
                if ctx.approx {
                    o["mv_volume_approx"] = c.mv.as_ref().map_or(Value::Null, |m| json!(m.approx()));
                }
                o
            })
            .collect();
        writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json"))?;
    } else {
        for c in &rows {
            writeln!(
                out,
                "d={:<2} {:<18} {:>10} {:>10} {}",
                c.row.d,
                c.row.label,
                c.col3,
                or_unsupported(&c.ratio),
                or_unsupported(&c.mv)
            )?;
        }
    }
    if !diff {
        return Ok(());
    }
    let mut errs = Vec::new();
    let (mut col3_ok, mut chart_ok, mut chart_total) = (0, 0, 0);
    for c in &rows {
        if c.col3 == c.row.col3_value() {
            col3_ok += 1;
        } else {
            errs.push(format!("d={} {}: col3 {} expected {}", c.row.d, c.row.label, c.col3, c.row.col3));
        }
        if col3_only {
            continue;
        }
        if let (Some(r), Some(m)) = (&c.ratio, &c.mv) {
            chart_total += 1;
            if *r == c.row.ratio_value() && *m == c.row.mv_value() {
                chart_ok += 1;
            } else {
                errs.push(format!(
                    "d={} {}: ratio {} mv {} expected {} {}",
                    c.row.d, c.row.label, r, m, c.row.ratio, c.row.mv_volume
                ));
            }
        }
    }
    let mut e = io::stderr();
    writeln!(e, "col3: {col3_ok}/{} match", rows.len())?;
    if !col3_only {
        writeln!(e, "ratio and volume: {chart_ok}/{chart_total} single-polygon rows match")?;
    }
    if errs.is_empty() {
        Ok(())
    } else {
        Err(Fail::Mismatch(errs.join("\n")))
    }
}

fn cmd_piecewise(input: &Input, as_json: bool, out: &mut impl Write) -> Out {
    let (mu, _) = resolve(input)?;
    let dom = SignDomain::new(mu)?;
    let p = an_polynomial(&dom);
    if as_json {
        writeln!(out, "{}", serde_json::to_string_pretty(&piece_to_json(&dom, &p)).expect("json"))?;
    } else {
        for (part, s) in &dom.signs {
            writeln!(out, "{} {}", s.symbol(), part.label())?;
        }
        writeln!(out, "A_n = {p}")?;
    }
    Ok(())
}

fn cmd_check(suite: &str, max_n: Option<usize>, seed: u64, out: &mut impl Write) -> Out {
    let s: Suite = suite.parse()?;
    let rep = suites::run(s, max_n, seed)?;
    write!(out, "{rep}")?;
    if rep.passed() {
        Ok(())
    } else {
        Err(Fail::Mismatch(format!("suite {suite} failed")))
    }
}

fn cmd_explain(ctx: &Ctx, input: &Input, out: &mut impl Write) -> Out {
    let (mu, _) = resolve(input)?;
    let terms: Vec<Value> = ctx
        .engine
        .terms(&mu)
        .iter()
        .map(|t| {
            json!({
                "partition": t.record.to_json(),
                "coefficient": t.coefficient.to_string(),
                "sub_values": t.sub_values.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "contribution": t.contribution().to_string(),
            })
        })
        .collect();
    let v = json!({
        "weights": mu.to_string(),
        "n": mu.n(),
        "a_n": ctx.engine.a_n(&mu).to_string(),
        "terms": terms,
    });
    writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json"))?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let ctx = Ctx { engine: Engine::new(), approx: cli.approx };
    let uses_cache = matches!(cli.cmd, Cmd::An(_) | Cmd::Volume(_) | Cmd::Table { .. });
    if let (Some(path), true) = (&cli.cache, uses_cache) {
        if let LoadStatus::Corrupt(msg) = cache::load(&ctx.engine, path) {
            eprintln!("warning: ignoring cache {}: {msg}", path.display());
        }
    }
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let res = match &cli.cmd {
        Cmd::An(i) => cmd_an(&ctx, i, &mut out),
        Cmd::Volume(i) => cmd_volume(&ctx, i, &mut out),
        Cmd::Table { appendix_b: _, n, csv, json, diff, col3_only } => {
            cmd_table(&ctx, *n as usize, *csv, *json, *diff, *col3_only, &mut out)
        }
        Cmd::Piecewise { input, json } => cmd_piecewise(input, *json, &mut out),
        Cmd::Check { suite, max_n, seed } => cmd_check(suite, *max_n, *seed, &mut out),
        Cmd::Explain(i) => cmd_explain(&ctx, i, &mut out),
    };
    let _ = out.flush();
    if cli.verbose {
        eprintln!("cache hits: {}", ctx.engine.memo_hits());
    }
    if let (Some(path), true, false) = (&cli.cache, uses_cache, matches!(res, Err(Fail::Validation(_)))) {
        if let Err(e) = cache::save(&ctx.engine, path) {
            eprintln!("warning: could not write cache {}: {e}", path.display());
        }
    }
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail::Validation(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Fail::Mismatch(m)) => {
            eprintln!("{m}");
            ExitCode::from(2)
        }
    }
}
