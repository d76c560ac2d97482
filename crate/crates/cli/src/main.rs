use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use schubert_core::diagram::{render_barcode, DiagramError, ProductRequest};
use schubert_core::json::integer_to_json;
use schubert_core::perm::{covers, PermError, Permutation};
use schubert_core::persistence::{
    interval_decomposition, reduce_to_cell, PersistenceError, PresentationMatrix,
};
use schubert_core::schubert::{
    lr_coefficient, monk_product, product, schubert_poly, Mode, SchubertError,
};
use schubert_core::verify::{self, Level};

/// Schubert calculus on persistence diagrams, in exact arithmetic.
///
/// Permutations are given in one-line notation ("2 3 1" or "2,3,1"); when a
/// command takes several, separate them with a literal `--`.
#[derive(Parser)]
#[command(name = "schubert", version)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// The Schubert polynomial of a permutation.
    Poly {
        #[arg(required = true, allow_hyphen_values = true, trailing_var_arg = true)]
        perm: Vec<String>,
    },
    /// σ_u · σ_v in the Schubert basis: `product U -- V (--n N | --stable)`.
    Product {
        #[command(flatten)]
        mode: ModeArgs,
        #[arg(required = true, allow_hyphen_values = true, trailing_var_arg = true)]
        perms: Vec<String>,
    },
    /// σ_w · σ_{r_i} by Monk's rule: `monk W --i I (--n N | --stable)`.
    Monk {
        #[arg(long)]
        i: Option<usize>,
        #[command(flatten)]
        mode: ModeArgs,
        #[arg(required = true, allow_hyphen_values = true, trailing_var_arg = true)]
        perm: Vec<String>,
    },
    /// The coefficient of σ_u in σ_w · σ_v: `lr W -- V -- U (--n N | --stable)`.
    Lr {
        #[command(flatten)]
        mode: ModeArgs,
        #[arg(required = true, allow_hyphen_values = true, trailing_var_arg = true)]
        perms: Vec<String>,
    },
    /// Cover relations of the Bruhat order on S_n.
    Hasse {
        #[arg(long)]
        n: usize,
    },
    /// Reduce a presentation matrix to its Schubert cell.
    Reduce {
        #[arg(long)]
        input: PathBuf,
    },
    /// Multiply two diagram classes read from a JSON file.
    DiagramProduct {
        #[arg(long)]
        input: PathBuf,
    },
    /// Run the built-in invariant suites.
    Verify {
        #[arg(long, value_enum, default_value_t = LevelArg::Quick)]
        level: LevelArg,
        #[arg(long, default_value_t = 20_240_601)]
        seed: u64,
    },
}

#[derive(clap::Args)]
struct ModeArgs {
    /// Work in the cohomology of the flag variety of C^N.
    #[arg(long)]
    n: Option<usize>,
    /// Work stably, over all n at once.
    #[arg(long)]
    stable: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Quick,
    Full,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Display) -> Self {
        Self {
            code: 2,
            message: message.to_string(),
        }
    }
}

impl From<PermError> for Failure {
    fn from(e: PermError) -> Self {
        let code = match e {
            PermError::DegreeTooLarge { .. } => 4,
            _ => 2,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<SchubertError> for Failure {
    fn from(e: SchubertError) -> Self {
        match e {
            SchubertError::Perm(p) => p.into(),
            SchubertError::InvalidSimpleIndex { .. } | SchubertError::VariableOutOfRange { .. } => {
                Self {
                    code: 4,
                    message: e.to_string(),
                }
            }
            SchubertError::Json(_) => Self::usage(e),
            _ => Self {
                code: 1,
                message: e.to_string(),
            },
        }
    }
}

impl From<PersistenceError> for Failure {
    fn from(e: PersistenceError) -> Self {
        match e {
            PersistenceError::Json(_) => Self::usage(e),
            _ => Self {
                code: 3,
                message: e.to_string(),
            },
        }
    }
}

impl From<DiagramError> for Failure {
    fn from(e: DiagramError) -> Self {
        match e {
            DiagramError::Perm(p) => p.into(),
            DiagramError::Schubert(s) => s.into(),
            DiagramError::Json(_) => Self::usage(e),
            _ => Self {
                code: 4,
                message: e.to_string(),
            },
        }
    }
}

/// Positional tokens after the first permutation: groups split on `--`,
/// plus any flags that clap left in the tail.
#[derive(Default)]
struct Tail {
    groups: Vec<Vec<String>>,
    n: Option<usize>,
    i: Option<usize>,
    stable: bool,
    json: bool,
}

fn parse_tail(raw: &[String]) -> Result<Tail, Failure> {
    let mut tail = Tail {
        groups: vec![Vec::new()],
        ..Tail::default()
    };
    let mut tokens = raw.iter();
    while let Some(tok) = tokens.next() {
        let (flag, inline) = match tok.split_once('=') {
            Some((f, v)) if f.starts_with("--") => (f, Some(v.to_string())),
            _ => (tok.as_str(), None),
        };
        let mut value = |name: &str| -> Result<usize, Failure> {
            let v = inline
                .clone()
                .or_else(|| tokens.next().cloned())
                .ok_or_else(|| Failure::usage(format!("{name} needs a value")))?;
            v.parse().map_err(|_| {
                Failure::usage(format!("{name} expects a nonnegative integer, got {v:?}"))
            })
        };
        match flag {
            "--" => tail.groups.push(Vec::new()),
            "--n" => tail.n = Some(value("--n")?),
            "--i" => tail.i = Some(value("--i")?),
            "--stable" => tail.stable = true,
            "--json" => tail.json = true,
            f if f.starts_with("--") => return Err(Failure::usage(format!("unknown flag {f}"))),
            _ => tail.groups.last_mut().expect("nonempty").push(tok.clone()),
        }
    }
    Ok(tail)
}

fn perms_from(tail: &Tail, count: usize) -> Result<Vec<Permutation>, Failure> {
    if tail.groups.len() != count || tail.groups.iter().any(Vec::is_empty) {
        return Err(Failure::usage(format!(
            "expected {count} permutation(s) separated by --, got {}",
            tail.groups.iter().filter(|g| !g.is_empty()).count()
        )));
    }
    tail.groups
        .iter()
        .map(|g| g.join(" ").parse::<Permutation>().map_err(Failure::from))
        .collect()
}

fn mode_from(args: &ModeArgs, tail: &Tail) -> Result<Mode, Failure> {
    let n = args.n.or(tail.n);
    match (n, args.stable || tail.stable) {
        (Some(_), true) => Err(Failure::usage("--n and --stable are mutually exclusive")),
        (Some(0), false) => Err(Failure::usage("--n must be positive")),
        (Some(n), false) => Ok(Mode::Finite(n)),
        (None, true) => Ok(Mode::Stable),
        (None, false) => Err(Failure::usage("specify --n N or --stable")),
    }
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::usage(format!("invalid JSON in {}: {e}", path.display())))
}

enum Output {
    Text(String),
    Json(Value),
}

fn run(cli: Cli) -> Result<(Output, u8), Failure> {
    let mut json_out = cli.json;
    let out = |json: bool, text: String, value: Value| {
        if json {
            Output::Json(value)
        } else {
            Output::Text(text)
        }
    };
    let result = match &cli.command {
        Command::Poly { perm } => {
            let tail = parse_tail(perm)?;
            json_out |= tail.json;
            let w = perms_from(&tail, 1)?.remove(0);
            let f = schubert_poly(&w);
            out(json_out, f.render(), f.to_json())
        }
        Command::Product { mode, perms } => {
            let tail = parse_tail(perms)?;
            json_out |= tail.json;
            let ps = perms_from(&tail, 2)?;
            let sum = product(&ps[0], &ps[1], mode_from(mode, &tail)?)?;
            out(json_out, sum.to_string(), sum.to_json())
        }
        Command::Monk { i, mode, perm } => {
            let tail = parse_tail(perm)?;
            json_out |= tail.json;
            let w = perms_from(&tail, 1)?.remove(0);
            let i = i
                .or(tail.i)
                .ok_or_else(|| Failure::usage("monk needs --i I"))?;
            let sum = monk_product(&w, i, mode_from(mode, &tail)?)?;
            out(json_out, sum.to_string(), sum.to_json())
        }
        Command::Lr { mode, perms } => {
            let tail = parse_tail(perms)?;
            json_out |= tail.json;
            let ps = perms_from(&tail, 3)?;
            let c = lr_coefficient(&ps[0], &ps[1], &ps[2], mode_from(mode, &tail)?)?;
            out(json_out, c.to_string(), integer_to_json(&c))
        }
        Command::Hasse { n } => {
            if *n == 0 {
                return Err(Failure::usage("--n must be positive"));
            }
            let edges = covers(*n);
            let line = |w: &Permutation| {
                w.one_line_in(*n)
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            let text = edges
                .iter()
                .map(|(u, w)| format!("{} -> {}", line(u), line(w)))
                .collect::<Vec<_>>();
            let value = json!({
                "n": n,
                "edges": edges
                    .iter()
                    .map(|(u, w)| json!({"from": u.one_line_in(*n), "to": w.one_line_in(*n)}))
                    .collect::<Vec<_>>(),
            });
            out(json_out, text.join("\n"), value)
        }
        Command::Reduce { input } => {
            let a = PresentationMatrix::from_json(&read_json(input)?)?;
            let cell = reduce_to_cell(&a)?;
            let bars = interval_decomposition(&a)?;
            let n = a.size();
            let mut text = vec![format!(
                "w = {}",
                cell.perm
                    .one_line_in(n)
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(" ")
            )];
            text.push("canonical:".into());
            for row in cell.canonical.entries().row_vecs() {
                let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
                text.push(format!("  [{}]", cells.join(", ")));
            }
            text.push("bars:".into());
            text.extend(bars.bars().iter().map(|(b, d)| format!("  [{b},{d})")));
            let value = json!({
                "perm": cell.perm.one_line_in(n),
                "canonical": cell.canonical.to_json(),
                "bars": bars.bars().iter().map(|(b, d)| json!([b, d])).collect::<Vec<_>>(),
            });
            out(json_out, text.join("\n"), value)
        }
        Command::DiagramProduct { input } => {
            let request = ProductRequest::from_json(&read_json(input)?)?;
            let sum = request.evaluate()?;
            out(json_out, render_barcode(&sum), sum.to_json())
        }
        Command::Verify { level, seed } => {
            let level = match level {
                LevelArg::Quick => Level::Quick,
                LevelArg::Full => Level::Full,
            };
            let results = verify::run(level, *seed);
            let failed = results.iter().filter(|r| !r.passed).count();
            let mut text: Vec<String> = results.iter().map(ToString::to_string).collect();
            text.push(format!(
                "{} checks, {failed} failed (seed {seed})",
                results.len()
            ));
            let value = json!({
                "seed": seed,
                "passed": failed == 0,
                "checks": results
                    .iter()
                    .map(|r| json!({"name": r.name, "passed": r.passed, "detail": r.detail, "millis": r.millis as u64}))
                    .collect::<Vec<_>>(),
            });
            let code = if failed == 0 { 0 } else { 1 };
            return Ok((out(json_out, text.join("\n"), value), code));
        }
    };
    Ok((result, 0))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok((output, code)) => {
            match output {
                Output::Text(t) => println!("{t}"),
                Output::Json(v) => println!(
                    "{}",
                    serde_json::to_string_pretty(&v).expect("serializable")
                ),
            }
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
