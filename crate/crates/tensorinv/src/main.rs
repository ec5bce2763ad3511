use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use tensorinv::ct::ct_exact;
use tensorinv::hyperoct::{self, Model};
use tensorinv::pipeline::{self, Against, Computed, MethodId, Series};
use tensorinv::{oracle, EllRational, SeriesOrder, VarTable};

#[derive(Parser)]
#[command(
    name = "tensorinv",
    version,
    about = "Hilbert series of SL(2) tensor invariants by constant-term extraction"
)]
struct Cli {
    /// Worker threads (0 uses every core).
    #[arg(long, global = true, env = "TENSORINV_THREADS", default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesArg {
    Gseries,
    Wseries,
}

impl From<SeriesArg> for Series {
    fn from(s: SeriesArg) -> Series {
        match s {
            SeriesArg::Gseries => Series::G,
            SeriesArg::Wseries => Series::W,
        }
    }
}

#[derive(Args)]
struct SeriesOpts {
    /// Number of tensor factors.
    #[arg(short)]
    k: usize,
    /// direct, divdiff, orbit, orbit-divdiff, sprime or oracle:D.
    #[arg(short, long)]
    method: Option<MethodId>,
    /// Print the result in q with q^2 replaced by q.
    #[arg(long)]
    sqrt: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Print the numerator over a chosen denominator, given as exponents `j` or `j^m`
    /// of `(1 - q^j)^m`, such as `2^4,3,4^6,5,6^5`.
    #[arg(long, value_parser = parse_den)]
    over: Option<DenSpec>,
}

/// Denominator exponents `(j, m)` for `(1 - q^j)^m`.
#[derive(Clone)]
struct DenSpec(Vec<(i32, u32)>);

fn parse_den(s: &str) -> Result<DenSpec, String> {
    s.split(',')
        .map(|part| {
            let (j, m) = part.trim().split_once('^').unwrap_or((part.trim(), "1"));
            match (j.parse::<i32>(), m.parse::<u32>()) {
                (Ok(j), Ok(m)) if j > 0 => Ok((j, m)),
                _ => Err(format!("bad denominator factor `{part}`")),
            }
        })
        .collect::<Result<_, _>>()
        .map(DenSpec)
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute G_k(q).
    Gseries(SeriesOpts),
    /// Compute W_k(q).
    Wseries(SeriesOpts),
    /// Constant term of an expression in one variable.
    Ct {
        /// File holding the expression.
        #[arg(short)]
        input: PathBuf,
        /// Variable to eliminate.
        #[arg(short)]
        var: String,
        /// Variable order, lowest first, such as `q<t<a1<a2`.
        #[arg(long)]
        order: String,
    },
    /// Brute-force coefficient table.
    Oracle {
        #[arg(short)]
        k: usize,
        #[arg(long)]
        dmax: usize,
        /// Count invariants instead of Kronecker multiplicities.
        #[arg(long)]
        sdd: bool,
    },
    /// Orbits of supports under the hyperoctahedral group.
    Orbits {
        #[arg(short)]
        k: usize,
        #[arg(long, value_parser = parse_model)]
        model: Model,
        /// Compute which orbits contribute.
        #[arg(long)]
        contributing: bool,
        /// Census file, resumed when it exists.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Orbits per checkpoint batch.
        #[arg(long, default_value_t = 64)]
        batch: usize,
    },
    /// Check a computation against the reference, the oracle or another method.
    Verify {
        #[arg(value_enum)]
        series: SeriesArg,
        #[arg(short)]
        k: usize,
        #[arg(short, long)]
        method: MethodId,
        /// reference, oracle:D or a method name.
        #[arg(long, default_value = "reference")]
        against: Against,
    },
    /// Minimal solutions grouped into orbits.
    Minimal {
        #[arg(short)]
        k: usize,
        #[arg(long)]
        dmax: usize,
    },
}

fn parse_model(s: &str) -> Result<Model, String> {
    s.parse().map_err(|e: tensorinv::Error| e.to_string())
}

fn series_cmd(series: Series, o: &SeriesOpts) -> tensorinv::Result<()> {
    let method = o
        .method
        .unwrap_or_else(|| MethodId::default_for(series, o.k));
    match pipeline::compute(series, o.k, method)? {
        Computed::Table(t) => match o.format {
            Format::Text => {
                for (d, c) in t.iter().enumerate() {
                    println!("d={d}: {c}");
                }
            }
            Format::Json => {
                let rows: Vec<String> = t.iter().map(|c| c.to_string()).collect();
                println!(
                    "{}",
                    json!({"series": series, "k": o.k, "method": method.to_string(), "table": rows})
                );
            }
        },
        Computed::Rational(f) if o.over.is_some() => {
            let den: &[(i32, u32)] = o.over.as_ref().map_or(&[], |d| &d.0);
            let num = pipeline::numerator_over(&f, den, o.sqrt)?;
            let num: Vec<String> = num.iter().map(|c| c.to_string()).collect();
            match o.format {
                Format::Text => {
                    for (e, c) in num.iter().enumerate() {
                        println!("q^{e}: {c}");
                    }
                }
                Format::Json => println!(
                    "{}",
                    json!({"series": series, "k": o.k, "method": method.to_string(), "sqrt": o.sqrt, "numerator": num, "denominator": den})
                ),
            }
        }
        Computed::Rational(f) => {
            let p = pipeline::present(&f, o.sqrt)?;
            match o.format {
                Format::Text => println!("{}", p.text),
                Format::Json => println!(
                    "{}",
                    json!({"series": series, "k": o.k, "method": method.to_string(), "result": p})
                ),
            }
        }
    }
    Ok(())
}

fn run(cli: Cli) -> tensorinv::Result<bool> {
    match cli.cmd {
        Cmd::Gseries(o) => series_cmd(Series::G, &o)?,
        Cmd::Wseries(o) => series_cmd(Series::W, &o)?,
        Cmd::Ct { input, var, order } => {
            let table = VarTable::from_order(&order)?;
            let v = table.id(&var).ok_or_else(|| {
                tensorinv::Error::Parse(format!("variable `{var}` is not in the order"))
            })?;
            let text = std::fs::read_to_string(&input)?;
            let f = EllRational::parse(&text, &table)?;
            let g = ct_exact(&f, v, &SeriesOrder::standard())?;
            println!("{}", g.render(&table));
        }
        Cmd::Oracle { k, dmax, sdd } => {
            for (d, c) in oracle::oracle_table(k, dmax, sdd)?.iter().enumerate() {
                println!("d={d}: {c}");
            }
        }
        Cmd::Orbits {
            k,
            model,
            contributing,
            out,
            batch,
        } => {
            let records = match (&out, contributing) {
                (Some(path), true) => {
                    hyperoct::census_with_checkpoint(k, model, true, path, batch)?
                }
                _ => {
                    let mut r = hyperoct::enumerate_orbits(k, model)?;
                    if contributing {
                        hyperoct::fill_orbits(&mut r, true, false)?;
                    }
                    if let Some(path) = &out {
                        let mut file = std::fs::File::create(path)?;
                        hyperoct::write_census(&mut file, &r)?;
                    }
                    r
                }
            };
            let c = hyperoct::census(k, model, &records);
            println!("model {model} k {k}: {} orbits", c.orbits);
            if contributing {
                println!(
                    "contributing {} with sizes {:?}",
                    c.contributing, c.contributing_sizes
                );
            }
        }
        Cmd::Verify {
            series,
            k,
            method,
            against,
        } => {
            let rep = pipeline::verify(series.into(), k, method, against)?;
            println!("{} {}", if rep.pass { "PASS" } else { "FAIL" }, rep.detail);
            return Ok(rep.pass);
        }
        Cmd::Minimal { k, dmax } => {
            let m = oracle::find_minimal(k, dmax)?;
            println!(
                "{} minimal solutions in {} orbits",
                m.solutions.len(),
                m.orbits.len()
            );
            for (rep, size) in &m.orbits {
                let rep: Vec<String> = rep.iter().map(|c| c.to_string()).collect();
                println!("[{}] x{size}", rep.join(" "));
            }
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    if cli.threads > 0 {
        // Only fails when a pool already exists, which cannot happen this early.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global();
    }
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                tensorinv::Error::Unsupported(_)
                | tensorinv::Error::Parse(_)
                | tensorinv::Error::Io(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
