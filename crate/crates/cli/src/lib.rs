//! Command-line front end. [`run`] parses arguments, dispatches to the
//! library, and maps outcomes to exit codes: 0 on success, 1 when a checked
//! inequality fails, 2 on usage or input errors.

use std::ffi::OsString;
use std::fs::File;
use std::io::Write;
use std::path::PathBuf;

use capset::asymptotics::{
    appendix_bound_check, check_growth, crq, minimize_crq, q3_closed_form, DEFAULT_TOL,
};
use capset::coeff_oracle::{extract_coeff, CoeffOracleQuery};
use capset::coeffs::max_degree;
use capset::ffld::is_progression_free;
use capset::polyspace::{combinatorial_bound_check, dim_v, proposition2_check, random_progression_free};
use capset::search::{find_valid_triples, max_progression_free, read_cards, DEFAULT_NODE_BUDGET};
use capset::{coeff_row, eg_bound, Error, PointSet, ProgressionSpec, RationalDegree};
use clap::{Parser, Subcommand};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

pub const EXIT_OK: u8 = 0;
pub const EXIT_VIOLATION: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "capset", version, about = "Progression-free set bounds over finite fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Field size (prime for lab and search)
    #[arg(long, global = true)]
    pub q: Option<u32>,
    /// Dimension
    #[arg(long, global = true)]
    pub n: Option<u32>,
    /// Degree bound as an exact rational "num/den"
    #[arg(long, global = true)]
    pub d: Option<RationalDegree>,
    /// Override for the rate parameter r in (0, 1)
    #[arg(long, global = true)]
    pub r: Option<f64>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 10)]
    pub trials: usize,
    #[arg(long, global = true, default_value_t = DEFAULT_NODE_BUDGET)]
    pub budget: u64,
    #[arg(long, global = true, conflicts_with = "csv")]
    pub json: bool,
    #[arg(long, global = true)]
    pub csv: bool,
    /// Card attributes are 1..=3 instead of 0..=2
    #[arg(long, global = true)]
    pub one_based: bool,
    #[arg(long, global = true)]
    pub cards: Option<PathBuf>,
    /// Point set CSV (header "p=<p>,n=<n>")
    #[arg(long, global = true)]
    pub points: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Progression-free bound 3 m_{(q-1)n/3} with the m table
    Bound,
    /// Coefficients of (1 + x + ... + x^(q-1))^n
    Coeffs,
    /// Minimize the rate C(r, q)
    Rate,
    /// Check m_{(q-1)k/3} <= C^k for k = 0..=n
    Growth,
    /// Rank experiments on random progression-free sets
    Lab,
    /// Root-of-unity extraction against the exact row
    Oracle,
    /// Exhaustive search for a largest progression-free set
    Search,
    /// Valid triples in a collection of cards
    Setgame,
    /// Run the full reproduction table
    Repro,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Csv,
}

struct Ctx<'a> {
    cli: &'a Cli,
    format: Format,
    out: &'a mut dyn Write,
}

type Outcome = Result<bool, Error>;

/// Parses `args` (including the program name) and runs one subcommand.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if err.use_stderr() {
                eprint!("{}", err.render())
            } else {
                let _ = write!(out, "{}", err.render());
            };
            return code;
        }
    };
    let format = if cli.json {
        Format::Json
    } else if cli.csv {
        Format::Csv
    } else {
        Format::Text
    };
    let mut ctx = Ctx { cli: &cli, format, out };
    let result = match cli.command {
        Command::Bound => bound(&mut ctx),
        Command::Coeffs => coeffs(&mut ctx),
        Command::Rate => rate(&mut ctx),
        Command::Growth => growth(&mut ctx),
        Command::Lab => lab(&mut ctx),
        Command::Oracle => oracle(&mut ctx),
        Command::Search => search(&mut ctx),
        Command::Setgame => setgame(&mut ctx),
        Command::Repro => repro(&mut ctx),
    };
    match result {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_VIOLATION,
        Err(Error::Violation(msg)) | Err(Error::Numerical(msg)) => {
            eprintln!("assertion failed: {msg}");
            EXIT_VIOLATION
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Io(e.to_string())
}

impl Ctx<'_> {
    fn q(&self) -> Result<u32, Error> {
        self.cli.q.ok_or_else(|| Error::Parse("missing --q".into()))
    }

    fn n(&self) -> Result<u32, Error> {
        self.cli.n.ok_or_else(|| Error::Parse("missing --n".into()))
    }

    fn line(&mut self, s: impl AsRef<str>) -> Result<(), Error> {
        writeln!(self.out, "{}", s.as_ref()).map_err(io)
    }

    fn json<S: Serialize>(&mut self, value: &S) -> Result<(), Error> {
        let text = serde_json::to_string(value).map_err(|e| Error::Io(e.to_string()))?;
        self.line(text)
    }
}

fn bound(ctx: &mut Ctx) -> Outcome {
    let (q, n) = (ctx.q()?, ctx.n()?);
    let bound = eg_bound(q, n)?;
    let row = coeff_row(q, n)?;
    let d = RationalDegree::third_of_max(q, n);
    let m = row.m_value(d)?;
    match ctx.format {
        Format::Json => ctx.json(&json!({
            "q": q,
            "n": n,
            "m": m.to_string(),
            "bound": bound.to_string(),
        }))?,
        Format::Csv => {
            ctx.line("q,n,m,bound")?;
            ctx.line(format!("{q},{n},{m},{bound}"))?;
        }
        Format::Text => {
            ctx.line("d\tm_d")?;
            for (j, md) in row.cumulative().iter().enumerate() {
                ctx.line(format!("{j}\t{md}"))?;
            }
            ctx.line(format!("m_{{{d}}} = {m}"))?;
            ctx.line(format!("bound 3 m = {bound}"))?;
        }
    }
    Ok(true)
}

fn coeffs(ctx: &mut Ctx) -> Outcome {
    let (q, n) = (ctx.q()?, ctx.n()?);
    let row = coeff_row(q, n)?;
    let values: Vec<String> = row.values().iter().map(BigUint::to_string).collect();
    match ctx.format {
        Format::Json => ctx.json(&json!({ "q": q, "n": n, "coefficients": values }))?,
        Format::Csv => {
            ctx.line("j,c")?;
            for (j, c) in values.iter().enumerate() {
                ctx.line(format!("{j},{c}"))?;
            }
        }
        Format::Text => ctx.line(values.join(" "))?,
    }
    Ok(true)
}

fn rate(ctx: &mut Ctx) -> Outcome {
    let q = ctx.q()?;
    let report = match ctx.cli.r {
        Some(r) => {
            let c = crq(r, q)?;
            json!({ "q": q, "r": r, "c": c, "appendix_b": c * c / (1.0 - r), "below_q": c < q as f64 })
        }
        None => {
            let rep = minimize_crq::<f64>(q, DEFAULT_TOL)?;
            let mut v = serde_json::to_value(rep).map_err(|e| Error::Io(e.to_string()))?;
            if q == 3 {
                let (r, c) = q3_closed_form::<f64>();
                v["closed_form"] = json!({ "r": r, "c": c });
            }
            v
        }
    };
    match ctx.format {
        Format::Json => ctx.json(&report)?,
        Format::Csv | Format::Text => {
            let obj = report.as_object().expect("object");
            for (k, v) in obj {
                ctx.line(format!("{k} = {v}"))?;
            }
        }
    }
    Ok(report.get("below_q").and_then(|b| b.as_bool()).unwrap_or(true))
}

fn pick_r(ctx: &Ctx, q: u32) -> Result<f64, Error> {
    match ctx.cli.r {
        Some(r) => Ok(r),
        None => Ok(minimize_crq::<f64>(q, DEFAULT_TOL)?.r_star),
    }
}

fn growth(ctx: &mut Ctx) -> Outcome {
    let (q, n_max) = (ctx.q()?, ctx.n()?);
    let r = pick_r(ctx, q)?;
    let rows = (0..=n_max)
        .map(|n| check_growth(q, n, r))
        .collect::<Result<Vec<_>, _>>()?;
    let appendix = (0..=n_max / 3)
        .map(|big_n| appendix_bound_check(q, big_n, r))
        .collect::<Result<Vec<_>, _>>()?;
    let ok = rows.iter().all(|g| g.holds) && appendix.iter().all(|a| a.holds());
    match ctx.format {
        Format::Json => ctx.json(&json!({ "q": q, "r": r, "rows": rows, "appendix": appendix, "holds": ok }))?,
        Format::Csv => {
            ctx.line("q,n,lhs,rhs,holds")?;
            for g in &rows {
                ctx.line(format!("{},{},{},{:e},{}", g.q, g.n, g.lhs, g.rhs, g.holds))?;
            }
        }
        Format::Text => {
            ctx.line(format!("q = {q}, r = {r}"))?;
            for g in &rows {
                ctx.line(format!("n={:<3} m={:<20} C^n={:<14.6e} {}", g.n, g.lhs, g.rhs, ok_str(g.holds)))?;
            }
            if let Some(last) = appendix.last() {
                ctx.line(format!("B = {:.6}", last.b_const))?;
            }
        }
    }
    Ok(ok)
}

fn ok_str(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "VIOLATED"
    }
}

fn lab(ctx: &mut Ctx) -> Outcome {
    let q = ctx.q()?;
    let spec = ProgressionSpec::arithmetic(q)?;
    let sets: Vec<PointSet> = match &ctx.cli.points {
        Some(path) => vec![PointSet::read_csv(File::open(path).map_err(io)?)?],
        None => {
            let n = ctx.n()? as usize;
            let total = (q as usize).pow(n as u32);
            let mut rng = ChaCha8Rng::seed_from_u64(ctx.cli.seed);
            (0..ctx.cli.trials)
                .map(|_| {
                    let target = rng.gen_range(1..=total.max(1));
                    random_progression_free(n, &spec, target, &mut rng)
                })
                .collect::<Result<_, _>>()?
        }
    };
    let mut ok = true;
    let mut records = Vec::new();
    for a in &sets {
        let n = a.n() as u32;
        let d = ctx
            .cli
            .d
            .unwrap_or_else(|| RationalDegree::new(2 * max_degree(q, n) as i64, 3).expect("positive denominator"));
        let pf = is_progression_free(a, &spec)?;
        let sandwich = dim_v(a, d, &spec)?;
        let prop = proposition2_check(a, d, &spec)?;
        let clamped = RationalDegree::from(d.ratio().min(num_rational::Ratio::from_integer(max_degree(q, n) as i64)));
        let comb = combinatorial_bound_check(q, n, clamped)?;
        // the upper half of the sandwich and the support bound need a progression-free set
        let lower_ok = sandwich.lower.max(0) as u64 <= sandwich.dim_v;
        ok &= lower_ok && comb.holds && (!pf || (sandwich.holds && prop.holds));
        records.push(json!({
            "size": a.len(),
            "progression_free": pf,
            "subspace": sandwich,
            "proposition": prop,
            "combinatorial": comb,
        }));
    }
    match ctx.format {
        Format::Json => ctx.json(&json!({ "q": q, "seed": ctx.cli.seed, "trials": records, "holds": ok }))?,
        Format::Csv => {
            ctx.line("q,n,d,dim_S,dim_V,lower,upper,holds")?;
            for r in &records {
                let s = &r["subspace"];
                ctx.line(format!(
                    "{},{},{},{},{},{},{},{}",
                    s["q"], s["n"], s["d"].as_str().unwrap_or(""), s["dim_S"], s["dim_V"], s["lower"], s["upper"], s["holds"]
                ))?;
            }
        }
        Format::Text => {
            for r in &records {
                let (s, p) = (&r["subspace"], &r["proposition"]);
                ctx.line(format!(
                    "|A|={} d={} dim_S={} dim_V={} in [{}, {}] {} | support {} <= {} {}",
                    r["size"],
                    s["d"].as_str().unwrap_or(""),
                    s["dim_S"],
                    s["dim_V"],
                    s["lower"],
                    s["upper"],
                    ok_str(s["holds"] == true),
                    p["count"],
                    p["bound"],
                    ok_str(p["holds"] == true)
                ))?;
            }
        }
    }
    Ok(ok)
}

fn oracle(ctx: &mut Ctx) -> Outcome {
    let (q, n) = (ctx.q()?, ctx.n()?);
    let r = ctx.cli.r.unwrap_or(0.6);
    let row = coeff_row(q, n)?;
    let f: Vec<f64> = row
        .values()
        .iter()
        .map(|c| c.to_string().parse::<f64>().expect("decimal"))
        .collect();
    let mut rows = Vec::new();
    let mut ok = true;
    for (i, &exact) in f.iter().enumerate() {
        let got = extract_coeff(&CoeffOracleQuery::new(f.clone(), i, f.len(), r)?)?;
        let rel = (got - exact).abs() / exact;
        ok &= rel <= 1e-5;
        rows.push((i, row.values()[i].to_string(), got, rel));
    }
    match ctx.format {
        Format::Json => {
            let items: Vec<_> = rows
                .iter()
                .map(|(i, e, g, rel)| json!({ "j": i, "exact": e, "extracted": g, "rel_err": rel }))
                .collect();
            ctx.json(&json!({ "q": q, "n": n, "r": r, "rows": items, "holds": ok }))?
        }
        Format::Csv | Format::Text => {
            ctx.line("j,exact,extracted,rel_err")?;
            for (i, e, g, rel) in &rows {
                ctx.line(format!("{i},{e},{g},{rel:e}"))?;
            }
        }
    }
    Ok(ok)
}

fn search(ctx: &mut Ctx) -> Outcome {
    let (q, n) = (ctx.q()?, ctx.n()?);
    let spec = ProgressionSpec::arithmetic(q)?;
    let res = max_progression_free(q, n as usize, &spec, ctx.cli.budget)?;
    let bound = if n > 0 { Some(eg_bound(q, n)?) } else { None };
    let ok = !res.exhaustive || bound.as_ref().map_or(true, |b| BigUint::from(res.max_size) <= *b);
    match ctx.format {
        Format::Csv => {
            let text = res.witness.to_csv_string();
            write!(ctx.out, "{text}").map_err(io)?;
        }
        Format::Json => {
            let mut v = serde_json::to_value(&res).map_err(|e| Error::Io(e.to_string()))?;
            v["bound"] = json!(bound.map(|b| b.to_string()));
            ctx.json(&v)?
        }
        Format::Text => {
            ctx.line(format!(
                "max size {} ({}; {} nodes); bound {}",
                res.max_size,
                if res.exhaustive { "exhaustive" } else { "budget exhausted" },
                res.nodes_explored,
                bound.map_or("n/a".into(), |b| b.to_string())
            ))?;
            for p in res.witness.points() {
                ctx.line(p.to_string())?;
            }
        }
    }
    Ok(ok)
}

fn setgame(ctx: &mut Ctx) -> Outcome {
    let path = ctx
        .cli
        .cards
        .clone()
        .ok_or_else(|| Error::Parse("missing --cards".into()))?;
    let cards = read_cards(File::open(path).map_err(io)?, ctx.cli.one_based)?;
    let triples = find_valid_triples(&cards)?;
    match ctx.format {
        Format::Json => ctx.json(&json!({ "cards": cards.len(), "triples": triples }))?,
        Format::Csv => {
            ctx.line("i,j,k")?;
            for [i, j, k] in &triples {
                ctx.line(format!("{i},{j},{k}"))?;
            }
        }
        Format::Text => {
            if triples.is_empty() {
                ctx.line("no valid triples")?;
            } else {
                for [i, j, k] in &triples {
                    ctx.line(format!("valid triple: {i} {j} {k}"))?;
                }
            }
        }
    }
    Ok(true)
}

fn repro(ctx: &mut Ctx) -> Outcome {
    let outcomes = capset::repro::run_all(ctx.cli.seed);
    let ok = outcomes.iter().all(|o| o.passed);
    match ctx.format {
        Format::Json => {
            let rows: Vec<_> = outcomes
                .iter()
                .map(|o| {
                    json!({
                        "id": o.id,
                        "name": o.name,
                        "passed": o.passed,
                        "seconds": o.elapsed.as_secs_f64(),
                        "limit_seconds": o.limit.as_secs(),
                        "detail": o.detail,
                    })
                })
                .collect();
            ctx.json(&json!({ "criteria": rows, "passed": ok }))?
        }
        Format::Csv | Format::Text => {
            for o in &outcomes {
                ctx.line(o.to_string())?;
            }
        }
    }
    Ok(ok)
}
