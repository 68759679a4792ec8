use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::claims::{run_claim, Claim, ClaimParams, ClaimReport};
use crate::ehrhart::{
    certify_with_cap, count_table, ehrhart_equivalent, scan_open_problem, CountTable, EhrhartError,
    EquivalenceReport, ScanEntry, DEFAULT_DEN_CAP,
};
use crate::markov::tree;
use crate::spec::{parse_triangle, AnyTriangle};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION_FAILED: i32 = 1;
pub const EXIT_INVALID_INPUT: i32 = 2;
pub const EXIT_BUDGET_EXCEEDED: i32 = 3;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Exact Ehrhart counting and period certification for Markov triangles.
#[derive(Parser, Debug)]
#[command(name = "markov-ehrhart", version)]
pub struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub output: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the first generations of the Markov tree.
    Tree {
        #[arg(long)]
        generations: usize,
    },
    /// Show the exact vertices, denominator and barycentre of a triangle.
    Triangle {
        #[arg(long)]
        spec: String,
    },
    /// Lattice-point counts of the dilates t = 0..=t-max.
    Count {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        t_max: u64,
    },
    /// Certify the minimal period and the quasipolynomial of a rational triangle.
    Certify {
        #[arg(long)]
        spec: String,
        /// Largest denominator to certify.
        #[arg(long, default_value_t = DEFAULT_DEN_CAP)]
        cap: u64,
    },
    /// Run the checks behind one structural claim.
    VerifyTheorem {
        /// One of the claim names listed by `--help`, or `all`.
        #[arg(value_parser = claim_names())]
        claim: String,
        /// Markov numbers to use for the limit claims (repeatable).
        #[arg(long)]
        a: Vec<u64>,
        #[arg(long)]
        t_max: Option<u64>,
        /// Number of random trials or walks.
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
    },
    /// Compare the counts of two triangles for t = 0..=t-max.
    Equiv {
        #[arg(long)]
        spec_a: String,
        #[arg(long)]
        spec_b: String,
        #[arg(long)]
        t_max: u64,
    },
    /// Certify every triangle of the two-parameter family over a grid of (b, c).
    Scan {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        q: i64,
        #[arg(long)]
        b_max: u64,
        #[arg(long)]
        c_max: u64,
        /// Largest denominator to certify; larger ones are reported as skipped.
        #[arg(long, short = 't', alias = "budget", default_value_t = DEFAULT_DEN_CAP)]
        cap: u64,
    },
}

fn claim_names() -> clap::builder::PossibleValuesParser {
    let mut names: Vec<&'static str> = Claim::ALL.iter().map(|c| c.name()).collect();
    names.push("all");
    clap::builder::PossibleValuesParser::new(names)
}

/// What a command produced: a report to print and the exit status.
struct Outcome {
    text: String,
    code: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome {
            text,
            code: EXIT_OK,
        }
    }
}

fn render_json(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialise") + "\n"
}

fn invalid(msg: impl std::fmt::Display) -> Outcome {
    Outcome {
        text: format!("error: {msg}\n"),
        code: EXIT_INVALID_INPUT,
    }
}

fn load(spec: &str) -> Result<AnyTriangle, Outcome> {
    parse_triangle(spec).map_err(invalid)
}

/// Parses `args` (including the program name), runs the command and writes
/// the report to `out`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID_INPUT
            } else {
                EXIT_OK
            };
            let _ = write!(out, "{}", e.render());
            return code;
        }
    };
    let outcome = execute(&cli).unwrap_or_else(|o| o);
    let _ = out.write_all(outcome.text.as_bytes());
    if !outcome.text.is_empty() && !outcome.text.ends_with('\n') {
        let _ = out.write_all(b"\n");
    }
    outcome.code
}

fn execute(cli: &Cli) -> Result<Outcome, Outcome> {
    let fmt = cli.output;
    Ok(match &cli.command {
        Command::Tree { generations } => tree_cmd(*generations, fmt),
        Command::Triangle { spec } => {
            let t = load(spec)?;
            match fmt {
                Format::Json => Outcome::ok(render_json(&t.describe())),
                Format::Csv => Outcome::ok(triangle_csv(&t.describe())),
                Format::Text => Outcome::ok(triangle_text(&t)),
            }
        }
        Command::Count { spec, t_max } => {
            let t = load(spec)?;
            let table = match &t {
                AnyTriangle::Rational(r) => count_table(r, *t_max),
                AnyTriangle::Quadratic(q) => count_table(q, *t_max),
            };
            Outcome::ok(count_report(&table, fmt))
        }
        Command::Certify { spec, cap } => {
            let t = load(spec)?;
            let r = t
                .as_rational()
                .ok_or_else(|| invalid("certification needs a rational triangle"))?;
            certify_cmd(r, *cap, fmt)
        }
        Command::VerifyTheorem {
            claim,
            a,
            t_max,
            trials,
            seed,
        } => {
            let params = ClaimParams {
                a_values: a.clone(),
                t_max: *t_max,
                trials: *trials,
                seed: *seed,
            };
            let claims: Vec<Claim> = match Claim::from_name(claim) {
                Some(c) => vec![c],
                None => Claim::ALL.to_vec(),
            };
            let reports: Vec<ClaimReport> = claims.iter().map(|&c| run_claim(c, &params)).collect();
            claims_report(&reports, fmt)
        }
        Command::Equiv {
            spec_a,
            spec_b,
            t_max,
        } => {
            let (a, b) = (load(spec_a)?, load(spec_b)?);
            let r = equiv(&a, &b, *t_max);
            let code = if r.equivalent {
                EXIT_OK
            } else {
                EXIT_VERIFICATION_FAILED
            };
            let text = match fmt {
                Format::Json => render_json(&r.to_json()),
                Format::Csv => format!(
                    "t_max,equivalent,first_divergence\n{},{},{}\n",
                    r.t_max,
                    r.equivalent,
                    r.divergence
                        .as_ref()
                        .map(|d| d.t.to_string())
                        .unwrap_or_default()
                ),
                Format::Text => match &r.divergence {
                    None => format!("equivalent: counts agree for t <= {}\n", r.t_max),
                    Some(d) => format!(
                        "not equivalent: at t = {} the counts are {} and {}\n",
                        d.t, d.left, d.right
                    ),
                },
            };
            Outcome { text, code }
        }
        Command::Scan {
            a,
            q,
            b_max,
            c_max,
            cap,
        } => {
            if *a == 0 || *b_max == 0 || *c_max == 0 {
                return Err(invalid("a, b-max and c-max must be positive"));
            }
            let entries = scan_open_problem(*a, *q, *b_max, *c_max, *cap).map_err(invalid)?;
            scan_report(&entries, fmt)
        }
    })
}

fn tree_cmd(generations: usize, fmt: Format) -> Outcome {
    let nodes = tree(generations);
    let text = match fmt {
        Format::Json => render_json(&serde_json::to_value(&nodes).expect("serialisable")),
        Format::Csv => {
            let mut s = String::from("index,generation,x,m,y,parent\n");
            for (i, n) in nodes.iter().enumerate() {
                let [x, m, y] = n.triple.entries();
                let parent = n.parent.map(|p| p.to_string()).unwrap_or_default();
                s += &format!("{i},{},{x},{m},{y},{parent}\n", n.generation);
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for n in &nodes {
                s += &format!("{}{}\n", "  ".repeat(n.generation - 1), n.triple);
            }
            s
        }
    };
    Outcome::ok(text)
}

fn triangle_text(t: &AnyTriangle) -> String {
    let d = t.describe();
    let field = |k: &str| match &d[k] {
        Value::Null => "none".to_string(),
        Value::Object(o) => format!(
            "({}, {})",
            o["x"].as_str().unwrap_or_default(),
            o["y"].as_str().unwrap_or_default()
        ),
        v => v
            .as_str()
            .map(str::to_string)
            .unwrap_or_else(|| v.to_string()),
    };
    format!(
        "vertices: {t}\ndenominator: {}\nbarycentre: {}\narea: {}\n",
        field("denominator"),
        field("barycentre"),
        field("area")
    )
}

fn triangle_csv(d: &Value) -> String {
    let mut s = String::from("vertex,label,x,y\n");
    if let Some(vs) = d["vertices"].as_array() {
        for (i, v) in vs.iter().enumerate() {
            let label = match &v["label"] {
                Value::Null => String::new(),
                l => l
                    .as_str()
                    .map(str::to_string)
                    .unwrap_or_else(|| l.to_string()),
            };
            s += &format!(
                "{i},{label},{},{}\n",
                v["x"].as_str().unwrap_or_default(),
                v["y"].as_str().unwrap_or_default()
            );
        }
    }
    s
}

fn count_report(table: &CountTable, fmt: Format) -> String {
    match fmt {
        Format::Json => render_json(&table.to_json()),
        Format::Csv | Format::Text => table.to_csv(),
    }
}

fn certify_cmd(
    t: &crate::geometry::Triangle<crate::arith::Rational>,
    cap: u64,
    fmt: Format,
) -> Outcome {
    match certify_with_cap(t, cap) {
        Ok(c) => Outcome::ok(match fmt {
            Format::Json => render_json(&c.to_json()),
            Format::Csv => {
                let mut s = String::from("class,c2,c1,c0\n");
                for (k, [c2, c1, c0]) in c.quasi.coeffs.iter().enumerate() {
                    s += &format!("{k},{c2},{c1},{c0}\n");
                }
                s
            }
            Format::Text => format!(
                "denominator: {}\nperiod: {} (certified from {} samples)\nquasipolynomial:\n{}",
                c.denominator,
                c.period,
                c.samples,
                c.quasi.to_text()
            ),
        }),
        Err(EhrhartError::BudgetExceeded { den, cap }) => Outcome {
            text: match fmt {
                Format::Json => render_json(&json!({
                    "status": "budget exceeded",
                    "denominator": den.to_string(),
                    "cap": cap,
                })),
                _ => format!("budget exceeded: denominator {den} is above the cap {cap}\n"),
            },
            code: EXIT_BUDGET_EXCEEDED,
        },
        Err(e) => Outcome {
            text: format!("error: {e}\n"),
            code: EXIT_VERIFICATION_FAILED,
        },
    }
}

fn equiv(a: &AnyTriangle, b: &AnyTriangle, t_max: u64) -> EquivalenceReport {
    use AnyTriangle::{Quadratic as Q, Rational as R};
    match (a, b) {
        (R(x), R(y)) => ehrhart_equivalent(x, y, t_max),
        (R(x), Q(y)) => ehrhart_equivalent(x, y, t_max),
        (Q(x), R(y)) => ehrhart_equivalent(x, y, t_max),
        (Q(x), Q(y)) => ehrhart_equivalent(x, y, t_max),
    }
}

fn claims_report(reports: &[ClaimReport], fmt: Format) -> Outcome {
    let passed = reports.iter().all(ClaimReport::passed);
    let text = match fmt {
        Format::Json => {
            if let [single] = reports {
                render_json(&single.to_json())
            } else {
                render_json(&Value::Array(
                    reports.iter().map(ClaimReport::to_json).collect(),
                ))
            }
        }
        Format::Csv => {
            let mut s = String::from("claim,check,passed,detail\n");
            for r in reports {
                for c in &r.checks {
                    s += &format!(
                        "{},\"{}\",{},\"{}\"\n",
                        r.claim.name(),
                        c.name.replace('"', "'"),
                        c.passed,
                        c.detail.replace('"', "'")
                    );
                }
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for r in reports {
                s += &format!(
                    "{}: {} ({})\n  {}\n",
                    r.claim.name(),
                    if r.passed() { "PASS" } else { "FAIL" },
                    r.status,
                    r.claim.statement()
                );
                for c in &r.checks {
                    s += &format!(
                        "  [{}] {}: {}\n",
                        if c.passed { "ok" } else { "FAIL" },
                        c.name,
                        c.detail
                    );
                }
            }
            s
        }
    };
    Outcome {
        text,
        code: if passed {
            EXIT_OK
        } else {
            EXIT_VERIFICATION_FAILED
        },
    }
}

fn scan_report(entries: &[ScanEntry], fmt: Format) -> Outcome {
    let skipped = entries.iter().any(|e| e.budget_exceeded);
    let text = match fmt {
        Format::Json => render_json(&Value::Array(
            entries.iter().map(ScanEntry::to_json).collect(),
        )),
        Format::Csv => {
            let mut s =
                String::from("b,c,denominator,period,pseudo_integral,markov,budget_exceeded\n");
            for e in entries {
                s += &format!(
                    "{},{},{},{},{},{},{}\n",
                    e.b,
                    e.c,
                    e.denominator
                        .as_ref()
                        .map(|d| d.to_string())
                        .unwrap_or_default(),
                    e.period.map(|p| p.to_string()).unwrap_or_default(),
                    e.pseudo_integral,
                    e.markov,
                    e.budget_exceeded
                );
            }
            s
        }
        Format::Text => {
            let hits: Vec<&ScanEntry> = entries.iter().filter(|e| e.pseudo_integral).collect();
            let mut s = format!(
                "{} triangles scanned, {} pseudo-integral, {} above the cap\n",
                entries.len(),
                hits.len(),
                entries.iter().filter(|e| e.budget_exceeded).count()
            );
            for e in hits {
                s += &format!(
                    "  b = {}, c = {}: pseudo-integral, {}\n",
                    e.b,
                    e.c,
                    if e.markov { "Markov" } else { "not Markov" }
                );
            }
            s
        }
    };
    Outcome {
        text,
        code: if skipped {
            EXIT_BUDGET_EXCEEDED
        } else {
            EXIT_OK
        },
    }
}
