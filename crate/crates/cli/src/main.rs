//! Command-line front end for the quintuple mutation-orbit toolkit.
//!
//! Every number on the wire is an exact decimal string (rationals as
//! `p/q`); words over the generators use `a`/`A`/`b`/`B`, applied leftmost
//! first. Output is byte-deterministic for a given command and inputs.
//!
//! Exit codes: 0 success (and `decide` membership), 1 non-member or failed
//! selftest, 2 malformed input or domain error.

use std::io::Read;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use num_traits::{Signed, ToPrimitive};
use serde_json::{json, Value};

use quintorb_core::conic::{
    enumerate_conic, h0_elements, least_pell4, matthews_fundamentals, ConicForm,
};
use quintorb_core::decision::{criterion, witness, Witness};
use quintorb_core::exchange::ExchangeMatrix;
use quintorb_core::markov::{descend_to_root, enumerate_tree};
use quintorb_core::oracle::{brute_force_conic_box, brute_force_quintuples, SearchBox};
use quintorb_core::quintuple::orbit_bfs;
use quintorb_core::selftest::run_selftest;
use quintorb_core::{phi, ExchangeMatrixZ, Int, Quintuple, QuintupleQ, QuintupleZ, Rat, TripleZ};

#[derive(Parser)]
#[command(
    name = "quintorb",
    about = "Exact mutation-orbit toolkit: quintuple dynamics, Markov-like triples, Pell/conic solvers, and orbit membership witnesses",
    after_help = "Numbers are exact decimal strings; rationals as p/q. Words use a/A/b/B, leftmost first.\nSet RAYON_NUM_THREADS to bound the oracle worker count.",
    version
)]
struct Cli {
    /// Emit JSON instead of plain text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Mutate an exchange matrix in one direction
    Mutate {
        /// Mutation direction, 1-based
        #[arg(long)]
        k: usize,
        /// Matrix as JSON rows of decimal strings; path or "-" for stdin
        /// (defaults to the built-in 5x4 seed matrix)
        #[arg(long)]
        matrix: Option<String>,
    },
    /// Evaluate the conserved quantity T on a quintuple
    Invariant { values: Vec<String> },
    /// Map a quintuple to its conserved triple (C0, C1, C2)
    Phi { values: Vec<String> },
    /// Positive solutions of the triple equation xyz - x^2 - y^2 - z^2 - 7 = 0
    #[command(subcommand)]
    Triples(TriplesCmd),
    /// Least positive solution of X^2 - D*Y^2 = 4
    Pell {
        #[arg(long)]
        d: String,
    },
    /// Integer points on A*U^2 + B*U*V + C*V^2 = E via automorph powers
    Conic {
        #[command(flatten)]
        form: FormArgs,
        /// Inclusive automorph power range
        #[arg(long, num_args = 2, value_names = ["N1", "N2"], allow_negative_numbers = true, required_unless_present = "fundamentals")]
        range: Vec<i64>,
        /// Print the fundamental solutions instead of the orbit
        #[arg(long)]
        fundamentals: bool,
    },
    /// Solutions of the fiber hyperbola divisible by epsilon, by matrix powers
    H0 {
        #[arg(long)]
        epsilon: String,
        #[arg(long, num_args = 2, value_names = ["N1", "N2"], allow_negative_numbers = true, required = true)]
        range: Vec<i64>,
    },
    /// Decide orbit membership of a positive integer quintuple
    Decide {
        #[arg(long)]
        epsilon: String,
        values: Vec<String>,
    },
    /// Produce a replayable membership witness for a quintuple
    Witness {
        #[arg(long)]
        epsilon: String,
        values: Vec<String>,
    },
    /// Search the orbit of (eps,..,eps) below a component bound
    Orbit {
        #[arg(long)]
        epsilon: String,
        #[arg(long)]
        bound: String,
    },
    /// Brute-force ground-truth searches
    #[command(subcommand)]
    Oracle(OracleCmd),
    /// Run the deterministic invariant suite
    Selftest,
}

#[derive(Subcommand)]
enum TriplesCmd {
    /// All solutions with coordinates up to a bound, in canonical order
    Enumerate {
        #[arg(long)]
        bound: String,
    },
    /// A tilde word replaying the solution from (3,4,4)
    Witness { x: String, y: String, z: String },
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Exhaustive T = 0 search over a box of quintuples
    Quintuples {
        #[arg(long)]
        epsilon: String,
        #[arg(long)]
        bound: String,
    },
    /// Exhaustive conic search over |U|, |V| <= bound
    Conic {
        #[command(flatten)]
        form: FormArgs,
        #[arg(long)]
        bound: String,
    },
}

#[derive(Args)]
struct FormArgs {
    #[arg(long, allow_negative_numbers = true)]
    a: String,
    #[arg(long, allow_negative_numbers = true)]
    b: String,
    #[arg(long, allow_negative_numbers = true)]
    c: String,
    #[arg(long, allow_negative_numbers = true)]
    e: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<ExitCode> {
    match &cli.command {
        Command::Mutate { k, matrix } => {
            let m = match matrix {
                None => ExchangeMatrixZ::standard(),
                Some(path) => ExchangeMatrix::from_json(&read_input(path)?)?,
            };
            let mutated = m.mutate(*k)?;
            if cli.json {
                println!("{}", mutated.to_json());
            } else {
                println!("{mutated}");
            }
        }
        Command::Invariant { values } => {
            let p = parse_rational_quintuple(values)?;
            let t = p.invariant_t();
            emit_scalar(cli.json, &t.to_string());
        }
        Command::Phi { values } => {
            let p = parse_rational_quintuple(values)?;
            let t = phi(&p);
            emit_row(
                cli.json,
                &[t.x.to_string(), t.y.to_string(), t.z.to_string()],
            );
        }
        Command::Triples(TriplesCmd::Enumerate { bound }) => {
            let bound = parse_int(bound)?;
            // brute force is quadratic in the bound; machine integers are
            // exact up to 10^6 here (largest intermediate is (xy)^2)
            let rows: Vec<Vec<String>> = match bound.to_i128().filter(|b| *b <= 1_000_000) {
                Some(b) => enumerate_tree(&b)
                    .into_iter()
                    .map(|t| vec![t.x.to_string(), t.y.to_string(), t.z.to_string()])
                    .collect(),
                None => enumerate_tree(&bound)
                    .into_iter()
                    .map(|t| vec![t.x.to_string(), t.y.to_string(), t.z.to_string()])
                    .collect(),
            };
            emit_rows(cli.json, &rows);
        }
        Command::Triples(TriplesCmd::Witness { x, y, z }) => {
            let t = TripleZ::new(parse_int(x)?, parse_int(y)?, parse_int(z)?);
            let word = descend_to_root(&t)?;
            // tilde words carry a "~" prefix on the wire to keep them
            // distinct from quintuple words
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "word": format!("~{word}"),
                        "target": [t.x.to_string(), t.y.to_string(), t.z.to_string()],
                    })
                );
            } else {
                println!("~{word}");
            }
        }
        Command::Pell { d } => {
            let sol = least_pell4(&parse_int(d)?)?;
            emit_row(cli.json, &[sol.x.to_string(), sol.y.to_string()]);
        }
        Command::Conic {
            form,
            range,
            fundamentals,
        } => {
            let f = parse_form(form)?;
            let rows: Vec<Vec<String>> = if *fundamentals {
                matthews_fundamentals(&f)?
                    .into_iter()
                    .map(|(u, v)| vec![u.to_string(), v.to_string()])
                    .collect()
            } else {
                let (lo, hi) = (range[0], range[1]);
                enumerate_conic(&f, lo, hi)?
                    .into_iter()
                    .map(|(u, v)| vec![u.to_string(), v.to_string()])
                    .collect()
            };
            emit_rows(cli.json, &rows);
        }
        Command::H0 { epsilon, range } => {
            let eps = parse_int(epsilon)?;
            let rows: Vec<Vec<String>> = h0_elements(&eps, range[0], range[1])?
                .into_iter()
                .map(|el| vec![el.x.to_string(), el.y.to_string()])
                .collect();
            emit_rows(cli.json, &rows);
        }
        Command::Decide { epsilon, values } => {
            let eps = parse_int(epsilon)?;
            let p = parse_integer_quintuple(values)?;
            let decision = criterion(&p, &eps)?;
            let cert = if decision.member {
                Some(witness(&p, &eps)?)
            } else {
                None
            };
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "member": decision.member,
                        "clauses": {
                            "t_zero": decision.clauses.t_zero,
                            "phi_integral": decision.clauses.phi_integral,
                            "divisible": decision.clauses.divisible,
                        },
                        "witness": cert.as_ref().map(witness_json),
                    })
                );
            } else {
                println!(
                    "{}",
                    if decision.member {
                        "member"
                    } else {
                        "non-member"
                    }
                );
                println!("clauses: {}", decision.clauses);
                if let Some(w) = &cert {
                    println!("witness word: {}", w.word);
                    println!("witness n: {}", w.n);
                }
            }
            if !decision.member {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Witness { epsilon, values } => {
            let eps = parse_int(epsilon)?;
            let p = parse_integer_quintuple(values)?;
            match witness(&p, &eps) {
                Ok(w) => {
                    assert_eq!(w.replay(), p, "witness replay mismatch");
                    if cli.json {
                        println!("{}", Value::Object(witness_json(&w)));
                    } else {
                        println!("word: {}", w.word);
                        println!("n: {}", w.n);
                    }
                }
                Err(quintorb_core::decision::DecisionError::NotMember(clauses)) => {
                    eprintln!("non-member: {clauses}");
                    return Ok(ExitCode::from(1));
                }
                Err(e) => return Err(e.into()),
            }
        }
        Command::Orbit { epsilon, bound } => {
            let orbit = orbit_bfs(&parse_int(epsilon)?, &parse_int(bound)?);
            let rows: Vec<Vec<String>> = orbit.into_iter().map(|p| quintuple_row(&p)).collect();
            emit_rows(cli.json, &rows);
        }
        Command::Oracle(OracleCmd::Quintuples { epsilon, bound }) => {
            let epsilon = parse_int(epsilon)?;
            let bound = parse_int(bound)?;
            // the search is cubic in the bound; i128 keeps every
            // intermediate exact up to bound 10^5 (terms scale as bound^6)
            let small = (bound.to_i128().filter(|b| *b <= 100_000))
                .zip(epsilon.to_i128());
            let rows: Vec<Vec<String>> = match small {
                Some((b, e)) => brute_force_quintuples(&SearchBox::cube(b, e))
                    .into_iter()
                    .map(|p| p.to_array().iter().map(ToString::to_string).collect())
                    .collect(),
                None => brute_force_quintuples(&SearchBox::cube(bound, epsilon))
                    .into_iter()
                    .map(|p| quintuple_row(&p))
                    .collect(),
            };
            emit_rows(cli.json, &rows);
        }
        Command::Oracle(OracleCmd::Conic { form, bound }) => {
            let (a, b, c, e) = (
                parse_int(&form.a)?,
                parse_int(&form.b)?,
                parse_int(&form.c)?,
                parse_int(&form.e)?,
            );
            let bound = parse_int(bound)?;
            // i128 is exact when coefficients and bound stay below 10^6
            let small = [&a, &b, &c, &e, &bound]
                .iter()
                .map(|v| v.to_i128().filter(|x| x.abs() <= 1_000_000))
                .collect::<Option<Vec<i128>>>();
            let rows: Vec<Vec<String>> = match small.as_deref() {
                Some([a, b, c, e, bound]) => brute_force_conic_box(a, b, c, e, bound)
                    .into_iter()
                    .map(|(u, v)| vec![u.to_string(), v.to_string()])
                    .collect(),
                _ => brute_force_conic_box(&a, &b, &c, &e, &bound)
                    .into_iter()
                    .map(|(u, v)| vec![u.to_string(), v.to_string()])
                    .collect(),
            };
            emit_rows(cli.json, &rows);
        }
        Command::Selftest => {
            let checks = run_selftest();
            let failed = checks.iter().filter(|c| !c.pass).count();
            if cli.json {
                let rows: Vec<Value> = checks
                    .iter()
                    .map(|c| json!({"name": c.name, "pass": c.pass}))
                    .collect();
                println!("{}", json!({"checks": rows, "failed": failed}));
            } else {
                for c in &checks {
                    println!("{} {}", if c.pass { "ok  " } else { "FAIL" }, c.name);
                }
                println!("{} checks, {} failed", checks.len(), failed);
            }
            if failed > 0 {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn witness_json(w: &Witness<Int>) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("word".into(), Value::String(w.word.to_string()));
    m.insert("n".into(), Value::String(w.n.to_string()));
    m.insert("epsilon".into(), Value::String(w.epsilon.to_string()));
    m
}

fn read_input(path: &str) -> anyhow::Result<String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    } else {
        Ok(std::fs::read_to_string(path)?)
    }
}

fn parse_int(text: &str) -> anyhow::Result<Int> {
    Int::from_str(text).map_err(|e| anyhow::anyhow!("bad integer {text:?}: {e}"))
}

fn parse_rat(text: &str) -> anyhow::Result<Rat> {
    Rat::from_str(text).map_err(|e| anyhow::anyhow!("bad rational {text:?}: {e}"))
}

fn parse_rational_quintuple(values: &[String]) -> anyhow::Result<QuintupleQ> {
    if values.len() != 5 {
        anyhow::bail!("expected 5 values, got {}", values.len());
    }
    let mut parsed = values.iter().map(|v| parse_rat(v));
    let p = Quintuple::new(
        parsed.next().unwrap()?,
        parsed.next().unwrap()?,
        parsed.next().unwrap()?,
        parsed.next().unwrap()?,
        parsed.next().unwrap()?,
    );
    if !p.is_positive() {
        anyhow::bail!("quintuple entries must be strictly positive");
    }
    Ok(p)
}

fn parse_integer_quintuple(values: &[String]) -> anyhow::Result<QuintupleZ> {
    if values.len() != 5 {
        anyhow::bail!("expected 5 values, got {}", values.len());
    }
    let mut parsed = values.iter().map(|v| parse_int(v));
    let p = Quintuple::new(
        parsed.next().unwrap()?,
        parsed.next().unwrap()?,
        parsed.next().unwrap()?,
        parsed.next().unwrap()?,
        parsed.next().unwrap()?,
    );
    if !p.to_array().iter().all(Signed::is_positive) {
        anyhow::bail!("quintuple entries must be strictly positive integers");
    }
    Ok(p)
}

fn parse_form(form: &FormArgs) -> anyhow::Result<ConicForm<Int>> {
    Ok(ConicForm::new(
        parse_int(&form.a)?,
        parse_int(&form.b)?,
        parse_int(&form.c)?,
        parse_int(&form.e)?,
    )?)
}

fn quintuple_row(p: &QuintupleZ) -> Vec<String> {
    p.to_array().iter().map(ToString::to_string).collect()
}

fn emit_scalar(as_json: bool, value: &str) {
    if as_json {
        println!("{}", Value::String(value.to_string()));
    } else {
        println!("{value}");
    }
}

fn emit_row(as_json: bool, row: &[String]) {
    if as_json {
        let cells: Vec<Value> = row.iter().map(|v| Value::String(v.clone())).collect();
        println!("{}", Value::Array(cells));
    } else {
        println!("{}", row.join(" "));
    }
}

fn emit_rows(as_json: bool, rows: &[Vec<String>]) {
    if as_json {
        let arr: Vec<Value> = rows
            .iter()
            .map(|row| Value::Array(row.iter().map(|v| Value::String(v.clone())).collect()))
            .collect();
        println!("{}", Value::Array(arr));
    } else {
        for row in rows {
            println!("{}", row.join(" "));
        }
    }
}
