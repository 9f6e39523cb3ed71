//! Command-line front end: convolution tables, avoider censuses, bijection
//! transcripts, distribution tables, samplers, and the verification battery.
//!
//! Exit codes: 0 success, 1 verification or domain failure, 2 usage error.

use std::fs::File;
use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ascentlab::bijections::{
    krattenthaler_from_path, krattenthaler_to_path, lemma32_check, phi_inverse, phi_max_position,
    Lemma32Case,
};
use ascentlab::catalan::{catalan_convolution, convolution_by_definition_capped, convolution_table_recursive};
use ascentlab::distributions::{
    monte_carlo_first_ascent, rational_to_f64, PmfSpec, Population,
};
use ascentlab::oracle::{census, CensusMethod};
use ascentlab::verify::run_all;
use ascentlab::{Error, LatticePath, Permutation};

#[derive(Parser)]
#[command(name = "ascentlab", version, about = "Exact counts, bijections, and first-ascent distributions of 123-avoiding permutations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write to a file instead of standard output.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the triangular table of first-ascent counts A(n, k).
    Table {
        #[arg(long)]
        n_max: u64,
        /// Cross-check every cell against the closed form and (within its
        /// cap) the definitional composition sum.
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Count avoiders of [n] by first ascent and by position of n.
    Census {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Method::Bruteforce)]
        method: Method,
        /// Assert equality with the Catalan convolutions.
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Transcribe the bijections for one permutation or path.
    Bijection {
        /// Permutation in one-line notation (digits, or space/comma separated).
        #[arg(long, conflicts_with = "path")]
        perm: Option<String>,
        /// X/Y step word of a Dyck path.
        #[arg(long)]
        path: Option<String>,
        /// Also apply the max-relocation map phi.
        #[arg(long)]
        phi: bool,
        /// Also apply the inverse of phi.
        #[arg(long)]
        phi_inverse: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Tabulate a first-ascent distribution.
    Dist {
        #[arg(long, value_enum)]
        law: Law,
        /// Permutation length for the finite laws.
        #[arg(long)]
        n: Option<u64>,
        /// Largest k to tabulate.
        #[arg(long)]
        kmax: Option<u64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Monte Carlo sampling of first-ascent positions.
    Sample {
        #[arg(long, value_enum)]
        population: PopulationArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        trials: u64,
        /// 64-bit seed; defaults to $ASCENTLAB_SEED, then 0.
        #[arg(long)]
        seed: Option<u64>,
        /// Worker threads; sharding is fixed, so results do not depend on this.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the full cross-verification battery.
    VerifyAll {
        /// Reduced sweep sizes; finishes in a few seconds.
        #[arg(long)]
        quick: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Bruteforce,
    Grow,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Law {
    UniformPerm,
    Avoider,
    LimitX,
    LimitW,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PopulationArg {
    AllPerms,
    Avoiders,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::OutOfRange(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn emit(output: &OutputArgs, text: String) -> ascentlab::Result<()> {
    match &output.out {
        Some(path) => {
            let mut f = File::create(path)?;
            f.write_all(text.as_bytes())?;
            Ok(())
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> ascentlab::Result<()> {
    match cli.command {
        Command::Table { n_max, verify, output } => cmd_table(n_max, verify, &output),
        Command::Census { n, method, verify, output } => cmd_census(n, method, verify, &output),
        Command::Bijection { perm, path, phi, phi_inverse, output } => {
            cmd_bijection(perm.as_deref(), path.as_deref(), phi, phi_inverse, &output)
        }
        Command::Dist { law, n, kmax, output } => cmd_dist(law, n, kmax, &output),
        Command::Sample { population, n, trials, seed, jobs, output } => {
            cmd_sample(population, n, trials, seed, jobs, &output)
        }
        Command::VerifyAll { quick } => cmd_verify_all(quick),
    }
}

fn cmd_table(n_max: u64, verify: bool, output: &OutputArgs) -> ascentlab::Result<()> {
    let table = convolution_table_recursive(n_max)?;
    if verify {
        let mut checked = 0u64;
        for n in 1..=n_max {
            for k in 1..=n {
                let closed = catalan_convolution(n, k)?;
                if table.get(n, k) != closed {
                    return Err(Error::Verify(format!(
                        "cell (n={n}, k={k}): recurrence {} != closed form {closed}",
                        table.get(n, k)
                    )));
                }
                if n <= ascentlab::catalan::DEFINITION_SUM_CAP {
                    let def = convolution_by_definition_capped(n, k, ascentlab::catalan::DEFINITION_SUM_CAP)?;
                    if def != closed {
                        return Err(Error::Verify(format!(
                            "cell (n={n}, k={k}): definition sum {def} != closed form {closed}"
                        )));
                    }
                }
                checked += 1;
            }
        }
        eprintln!("verified {checked} cells, 0 mismatches");
    }
    let text = match output.format {
        Format::Csv => {
            let mut buf = Vec::new();
            table.to_csv(&mut buf)?;
            String::from_utf8(buf).unwrap()
        }
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&table.to_json()).unwrap()),
        Format::Text => {
            let mut s = String::new();
            for n in 1..=n_max {
                let row: Vec<String> = table.row(n).iter().map(|c| c.to_string()).collect();
                s.push_str(&format!("n={n:>3}: {}\n", row.join(" ")));
            }
            s
        }
    };
    emit(output, text)
}

fn cmd_census(n: usize, method: Method, verify: bool, output: &OutputArgs) -> ascentlab::Result<()> {
    let method = match method {
        Method::Bruteforce => CensusMethod::BruteForce,
        Method::Grow => CensusMethod::Grow,
    };
    let c = census(n, method)?;
    if verify {
        for k in 1..=n {
            let conv = catalan_convolution(n as u64, k as u64)?;
            if c.first_ascent_count(k) != conv {
                return Err(Error::Verify(format!(
                    "first-ascent count at k={k} is {}, expected {conv}",
                    c.first_ascent_count(k)
                )));
            }
            if c.max_position_count(k) != conv {
                return Err(Error::Verify(format!(
                    "max-position count at k={k} is {}, expected {conv}",
                    c.max_position_count(k)
                )));
            }
        }
        eprintln!("verified {n} columns against the convolution formula");
    }
    let text = match output.format {
        Format::Csv => {
            let mut buf = Vec::new();
            c.to_csv(&mut buf)?;
            String::from_utf8(buf).unwrap()
        }
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&c.to_json()).unwrap()),
        Format::Text => {
            let mut s = format!("avoiders of [{n}]: {}\n", c.total);
            s.push_str("  k  first_ascent  max_position\n");
            for k in 1..=n {
                s.push_str(&format!(
                    "{k:>3}  {:>12}  {:>12}\n",
                    c.first_ascent_count(k),
                    c.max_position_count(k)
                ));
            }
            s
        }
    };
    emit(output, text)
}

fn cmd_bijection(
    perm: Option<&str>,
    path: Option<&str>,
    phi: bool,
    phi_inv: bool,
    output: &OutputArgs,
) -> ascentlab::Result<()> {
    let p: Permutation = match (perm, path) {
        (Some(word), None) => word.parse()?,
        (None, Some(steps)) => {
            let path: LatticePath = steps.parse()?;
            krattenthaler_from_path(&path)?
        }
        _ => {
            return Err(Error::OutOfRange(
                "exactly one of --perm or --path is required".into(),
            ))
        }
    };
    let image = krattenthaler_to_path(&p)?;
    let d = p.right_to_left_maxima();
    let lemma = if p.first_ascent_position() < p.len() {
        Some(lemma32_check(&p)?)
    } else {
        None
    };
    let phi_image = if phi { Some(phi_max_position(&p)?) } else { None };
    let phi_preimage = if phi_inv { Some(phi_inverse(&p)?) } else { None };

    let text = match output.format {
        Format::Json => {
            let mut obj = serde_json::json!({
                "permutation": p.to_string(),
                "path": image.to_string(),
                "first_ascent": p.first_ascent_position(),
                "max_position": p.position_of_max(),
                "rlm": {
                    "maxima": d.maxima.iter().map(|&(pos, v)| serde_json::json!({"position": pos, "value": v})).collect::<Vec<_>>(),
                    "words": d.words.iter().map(|w| w.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")).collect::<Vec<_>>(),
                },
            });
            if let Some(r) = &lemma {
                obj["lemma_mu"] = serde_json::json!({
                    "position": r.mu_position,
                    "value": r.mu_value,
                    "case": match r.case {
                        Lemma32Case::MuEqualsN => "mu_equals_n",
                        Lemma32Case::MuIsPredecessorMinusOne => "mu_is_predecessor_minus_one",
                    },
                });
            }
            if let Some(q) = &phi_image {
                obj["phi"] = serde_json::json!(q.to_string());
            }
            if let Some(q) = &phi_preimage {
                obj["phi_inverse"] = serde_json::json!(q.to_string());
            }
            format!("{}\n", serde_json::to_string_pretty(&obj).unwrap())
        }
        _ => {
            let mut s = String::new();
            s.push_str(&format!("permutation:  {p}\n"));
            s.push_str(&format!("path:         {image}\n"));
            s.push_str(&format!("first ascent: {}\n", p.first_ascent_position()));
            s.push_str(&format!("max position: {}\n", p.position_of_max()));
            let maxima: Vec<String> = d.maxima.iter().map(|&(_, v)| v.to_string()).collect();
            let words: Vec<String> = d
                .words
                .iter()
                .map(|w| {
                    if w.is_empty() {
                        "(empty)".to_string()
                    } else {
                        w.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
                    }
                })
                .collect();
            s.push_str(&format!("RLM maxima:   {}\n", maxima.join(", ")));
            s.push_str(&format!("RLM words:    {}\n", words.join(", ")));
            if let Some(r) = &lemma {
                let case = match r.case {
                    Lemma32Case::MuEqualsN => "mu equals n",
                    Lemma32Case::MuIsPredecessorMinusOne => "mu is one less than the maximum to its left",
                };
                s.push_str(&format!("mu:           {} at position {} ({case})\n", r.mu_value, r.mu_position));
            }
            if let Some(q) = &phi_image {
                s.push_str(&format!("phi:          {q}\n"));
            }
            if let Some(q) = &phi_preimage {
                s.push_str(&format!("phi inverse:  {q}\n"));
            }
            s
        }
    };
    emit(output, text)
}

fn cmd_dist(law: Law, n: Option<u64>, kmax: Option<u64>, output: &OutputArgs) -> ascentlab::Result<()> {
    let spec = match law {
        Law::UniformPerm => {
            let n = n.ok_or_else(|| Error::OutOfRange("--n is required for --law uniform-perm".into()))?;
            PmfSpec::UniformPerm { n }
        }
        Law::Avoider => {
            let n = n.ok_or_else(|| Error::OutOfRange("--n is required for --law avoider".into()))?;
            PmfSpec::Avoider { n }
        }
        Law::LimitX => PmfSpec::LimitX,
        Law::LimitW => PmfSpec::LimitW,
    };
    let k_max = kmax.unwrap_or_else(|| spec.default_k_max());
    let rows: Vec<(u64, String, f64)> = (1..=k_max)
        .map(|k| {
            let p = spec.pmf(k)?;
            Ok((k, p.to_string(), rational_to_f64(&p)))
        })
        .collect::<ascentlab::Result<_>>()?;

    let text = match output.format {
        Format::Csv => {
            let mut s = String::from("k,pmf,pmf_decimal\n");
            for (k, exact, dec) in &rows {
                s.push_str(&format!("{k},{exact},{dec:.17}\n"));
            }
            s
        }
        Format::Json => {
            let table: Vec<serde_json::Value> = rows
                .iter()
                .map(|(k, exact, dec)| serde_json::json!({"k": k, "pmf": exact, "pmf_decimal": dec}))
                .collect();
            let obj = serde_json::json!({
                "law": spec.name(),
                "support": spec.support(),
                "mean": spec.mean(),
                "table": table,
            });
            format!("{}\n", serde_json::to_string_pretty(&obj).unwrap())
        }
        Format::Text => {
            let mut s = format!("law {} on {}  (mean {:.6})\n", spec.name(), spec.support(), spec.mean());
            for (k, exact, dec) in &rows {
                s.push_str(&format!("{k:>4}  {exact:>24}  {dec:.12}\n"));
            }
            s
        }
    };
    emit(output, text)
}

fn cmd_sample(
    population: PopulationArg,
    n: usize,
    trials: u64,
    seed: Option<u64>,
    jobs: usize,
    output: &OutputArgs,
) -> ascentlab::Result<()> {
    let seed = seed
        .or_else(|| std::env::var("ASCENTLAB_SEED").ok().and_then(|s| s.parse().ok()))
        .unwrap_or(0);
    let population = match population {
        PopulationArg::AllPerms => Population::AllPerms,
        PopulationArg::Avoiders => Population::Avoiders,
    };
    let stats = monte_carlo_first_ascent(n, trials, population, seed, jobs.max(1))?;
    let text = format!("{}\n", serde_json::to_string_pretty(&stats.to_json()).unwrap());
    emit(output, text)
}

fn cmd_verify_all(quick: bool) -> ascentlab::Result<()> {
    let started = std::time::Instant::now();
    let results = run_all(quick);
    let mut failures = 0;
    for r in &results {
        let status = if r.passed { "PASS" } else { "FAIL" };
        println!("{status}  {:<42} {}", r.name, r.detail);
        if !r.passed {
            failures += 1;
        }
    }
    println!(
        "{}/{} checks passed in {:.1?}",
        results.len() - failures,
        results.len(),
        started.elapsed()
    );
    if failures > 0 {
        Err(Error::Verify(format!("{failures} check(s) failed")))
    } else {
        Ok(())
    }
}
