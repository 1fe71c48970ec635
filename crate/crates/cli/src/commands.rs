use std::fmt::{self, Write as _};
use std::io::Write as _;
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use incrank_core::combinatorics::binomial;
use incrank_core::inclusion::{dense_bytes, dump_matrix, streaming_rank_stats};
use incrank_core::wilson::{rank_table, render_table, PairRule, TableFormat, TableSpec};
use incrank_core::{
    build_inclusion_matrix_with_budget, check_psi_on_polytabloid, elimination_rank,
    filtration_audit, normalize_params, wilson_rank, Error, FieldSpec, FiltrationReport,
    InclusionParams, MemoryBudget, PsiVerdict, RankBreakdown, TwoRowTableau,
};
use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{
    Cli, Command, Method, ReportFormat, TableFormatArg, Triple, EXIT_MISMATCH, EXIT_RESOURCE,
    EXIT_USAGE,
};

pub const DEFAULT_SEED: u64 = 0x5eed_0001;

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Resource(String),
    /// A check failed before a document could be produced.
    Mismatch(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Resource(_) => EXIT_RESOURCE,
            Failure::Mismatch(_) => EXIT_MISMATCH,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(msg) => write!(f, "usage error: {msg}\nsee `incrank --help`"),
            Failure::Resource(msg) => write!(f, "resource error: {msg}"),
            Failure::Mismatch(msg) => write!(f, "verification failed: {msg}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::MemoryBudget { .. } => Failure::Resource(format!(
                "{e}; raise --memory-budget, or for `rank` use --method formula or --streaming (prime p)"
            )),
            Error::Invariant(_) => Failure::Mismatch(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

struct Outcome {
    doc: String,
    mismatch: bool,
}

fn field(p: u64) -> Result<FieldSpec, Failure> {
    Ok(FieldSpec::new(p)?)
}

impl Triple {
    fn params(&self) -> Result<InclusionParams, Failure> {
        Ok(InclusionParams::new(
            self.m,
            self.i,
            self.n,
            field(self.p)?,
        )?)
    }
}

pub fn run(cli: &Cli) -> Result<ExitCode, Failure> {
    let budget = cli.global.memory_budget;
    let outcome = match &cli.command {
        Command::Rank {
            triple,
            method,
            verbose,
            streaming,
        } => rank(triple.params()?, *method, *verbose, *streaming, budget)?,
        Command::Verify {
            max_m,
            primes,
            tableaux,
            seed,
            inject_fault,
        } => verify(*max_m, primes, *tableaux, *seed, *inject_fault, budget)?,
        Command::Table {
            p,
            min_m,
            max_m,
            format,
            all_pairs,
            no_oracle,
        } => {
            let spec = TableSpec {
                field: field(*p)?,
                m_min: *min_m,
                m_max: *max_m,
                pairs: if *all_pairs {
                    PairRule::All
                } else {
                    PairRule::Normalized
                },
                oracle: !no_oracle,
                budget,
            };
            table(&spec, *format)?
        }
        Command::Filtration { triple, format } => filtration(triple.params()?, *format, budget)?,
        Command::Dump { triple } => Outcome {
            doc: dump_matrix(&build_inclusion_matrix_with_budget(
                &triple.params()?,
                budget,
            )?),
            mismatch: false,
        },
        Command::Bench {
            p,
            i,
            n,
            min_m,
            max_m,
        } => bench(field(*p)?, *i, *n, *min_m, *max_m, budget)?,
    };
    emit(cli.global.out.as_deref(), &outcome.doc)?;
    Ok(if outcome.mismatch {
        ExitCode::from(EXIT_MISMATCH)
    } else {
        ExitCode::SUCCESS
    })
}

fn emit(out: Option<&Path>, doc: &str) -> Result<(), Failure> {
    let written = match out {
        Some(path) => std::fs::write(path, doc),
        None => std::io::stdout().lock().write_all(doc.as_bytes()),
    };
    written.map_err(|e| Failure::Resource(format!("cannot write output: {e}")))
}

fn eliminate(
    params: &InclusionParams,
    streaming: bool,
    budget: MemoryBudget,
) -> Result<usize, Failure> {
    if streaming {
        if params.p() == 0 {
            return Err(Failure::Usage(
                "--streaming needs a prime characteristic".into(),
            ));
        }
        Ok(streaming_rank_stats(params, budget)?.rank)
    } else {
        Ok(build_inclusion_matrix_with_budget(params, budget)?.rank())
    }
}

fn write_breakdown(out: &mut String, b: &RankBreakdown) {
    let norm = b.normalized.params;
    let _ = writeln!(out, "params: {}", b.raw);
    let _ = writeln!(
        out,
        "normalized: m={} n={} i={}{}",
        norm.m,
        norm.n,
        norm.i,
        if b.normalized.transposed {
            " (transposed)"
        } else {
            ""
        }
    );
    for t in &b.terms {
        let c = binomial(u64::from(norm.n - t.j), i64::from(norm.i - t.j));
        let _ = writeln!(
            out,
            "  j={} C(n-j,i-j)={} {} term={}",
            t.j,
            c,
            if t.included { "included" } else { "excluded" },
            t.value
        );
    }
}

fn rank(
    params: InclusionParams,
    method: Method,
    verbose: bool,
    streaming: bool,
    budget: MemoryBudget,
) -> Result<Outcome, Failure> {
    let mut doc = String::new();
    let formula = match method {
        Method::Eliminate => None,
        _ => Some(wilson_rank(params)?),
    };
    if let (true, Some(b)) = (verbose, &formula) {
        write_breakdown(&mut doc, b);
    }
    let oracle = match method {
        Method::Formula => None,
        _ => Some(eliminate(&params, streaming, budget)?),
    };
    let mut mismatch = false;
    let line = match (&formula, oracle) {
        (Some(f), None) => format!("formula={}", f.total),
        (None, Some(o)) => format!("oracle={o}"),
        (Some(f), Some(o)) => {
            mismatch = f.total != BigUint::from(o);
            let verdict = if mismatch { "MISMATCH" } else { "MATCH" };
            format!("formula={} oracle={o} {verdict}", f.total)
        }
        (None, None) => unreachable!("every method computes something"),
    };
    doc.push_str(&line);
    doc.push('\n');
    Ok(Outcome { doc, mismatch })
}

fn flip_first_term(mut b: RankBreakdown) -> RankBreakdown {
    b.terms[0].included = !b.terms[0].included;
    b.total = b.sum_included();
    b
}

fn random_tableau(rng: &mut ChaCha8Rng) -> TwoRowTableau {
    let m = rng.gen_range(1..=8u32);
    let mut perm: Vec<u32> = (1..=m).collect();
    perm.shuffle(rng);
    let (first, second) = perm.split_at(rng.gen_range(0..=m as usize));
    TwoRowTableau::new(first.to_vec(), second.to_vec())
        .expect("a permutation splits into a tableau")
}

fn verify(
    max_m: u32,
    primes: &[u64],
    tableaux: u32,
    seed: u64,
    inject_fault: bool,
    budget: MemoryBudget,
) -> Result<Outcome, Failure> {
    if max_m < 1 {
        return Err(Failure::Usage("--max-m must be at least 1".into()));
    }
    let fields = primes
        .iter()
        .map(|&p| field(p))
        .collect::<Result<Vec<_>, _>>()?;
    let mut doc = String::new();
    let (mut cases, mut mismatches) = (0u64, 0u64);
    for &f in &fields {
        for m in 0..=max_m {
            for n in 0..=m {
                for i in 0..=n {
                    let params = InclusionParams::new(m, i, n, f)?;
                    let mut formula = wilson_rank(params)?;
                    if inject_fault {
                        formula = flip_first_term(formula);
                    }
                    let oracle = elimination_rank(&params, budget)?;
                    cases += 1;
                    if formula.total != BigUint::from(oracle) {
                        mismatches += 1;
                        let _ = writeln!(
                            doc,
                            "MISMATCH {params} formula={} oracle={oracle}",
                            formula.total
                        );
                    }
                }
            }
        }
    }
    let _ = writeln!(doc, "{cases} cases, {mismatches} mismatches");

    let mut failures = 0u64;
    if tableaux > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut checks = 0u64;
        for _ in 0..tableaux {
            let t = random_tableau(&mut rng);
            for &f in &fields {
                for j in 0..=t.columns() {
                    for k in 0..=j {
                        checks += 1;
                        if let PsiVerdict::Fail {
                            tabloid,
                            expected,
                            actual,
                        } = check_psi_on_polytabloid(&t, j, k, f)?
                        {
                            failures += 1;
                            let _ = writeln!(
                                doc,
                                "PSI-FAIL t={t} j={j} k={k} {f} at {tabloid}: expected {expected}, got {actual}"
                            );
                        }
                    }
                }
            }
        }
        let _ = writeln!(
            doc,
            "{tableaux} tableaux (seed {seed}), {checks} psi checks, {failures} failures"
        );
    }
    Ok(Outcome {
        doc,
        mismatch: mismatches + failures > 0,
    })
}

fn table(spec: &TableSpec, format: TableFormatArg) -> Result<Outcome, Failure> {
    let rows = rank_table(spec)?;
    let format = match format {
        TableFormatArg::Csv => TableFormat::Csv,
        TableFormatArg::Json => TableFormat::Json,
        TableFormatArg::Md => TableFormat::Markdown,
    };
    Ok(Outcome {
        doc: render_table(&rows, format),
        mismatch: rows.iter().any(|r| r.matches() == Some(false)),
    })
}

fn filtration_text(report: &FiltrationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{}{}",
        report.params,
        if report.transposed {
            " (transposed)"
        } else {
            ""
        }
    );
    let _ = writeln!(out, "j dim_P dim_L predicted_L included");
    for l in &report.layers {
        let _ = writeln!(
            out,
            "{} {} {} {} {}",
            l.j, l.dim_p, l.dim_l, l.predicted_l, l.included
        );
    }
    let verdict = if report.matches { "MATCH" } else { "MISMATCH" };
    let _ = writeln!(
        out,
        "total={} formula_total={} {verdict}",
        report.total, report.formula_total
    );
    out
}

fn filtration(
    params: InclusionParams,
    format: ReportFormat,
    budget: MemoryBudget,
) -> Result<Outcome, Failure> {
    let norm = normalize_params(params)?.params;
    let needed = dense_bytes(&norm);
    if needed > budget.bytes() {
        return Err(Error::MemoryBudget {
            needed,
            budget: budget.bytes(),
        }
        .into());
    }
    let report = filtration_audit(&params)?;
    let doc = match format {
        ReportFormat::Json => report.to_json() + "\n",
        ReportFormat::Text => filtration_text(&report),
    };
    Ok(Outcome {
        doc,
        mismatch: !report.matches,
    })
}

const BENCH_HEADER: &str =
    "m,n,i,p,formula_rank,dense_rank,dense_ms,dense_bytes,streaming_rank,streaming_ms,streaming_bytes,match";

fn bench(
    f: FieldSpec,
    i: u32,
    n: u32,
    min_m: u32,
    max_m: u32,
    budget: MemoryBudget,
) -> Result<Outcome, Failure> {
    let mut doc = String::from(BENCH_HEADER);
    doc.push('\n');
    let mut mismatch = false;
    for m in min_m..=max_m {
        let params = InclusionParams::new(m, i, n, f)?;
        let formula = wilson_rank(params)?.total;
        let mut ok = true;

        let dense_needed = dense_bytes(&params);
        let dense = if dense_needed > budget.bytes() {
            format!("skipped(dense),,{dense_needed}")
        } else {
            let start = Instant::now();
            let r = build_inclusion_matrix_with_budget(&params, budget)?.rank();
            let ms = start.elapsed().as_secs_f64() * 1e3;
            ok &= formula == BigUint::from(r);
            format!("{r},{ms:.3},{dense_needed}")
        };

        let streaming = if f.is_rational() {
            "skipped(streaming),,".to_string()
        } else {
            let start = Instant::now();
            match streaming_rank_stats(&params, budget) {
                Ok(stats) => {
                    let ms = start.elapsed().as_secs_f64() * 1e3;
                    ok &= formula == BigUint::from(stats.rank);
                    format!("{},{ms:.3},{}", stats.rank, stats.basis_bytes)
                }
                Err(Error::MemoryBudget { needed, .. }) => format!("skipped(streaming),,{needed}"),
                Err(e) => return Err(e.into()),
            }
        };
        mismatch |= !ok;
        let _ = writeln!(
            doc,
            "{m},{n},{i},{},{formula},{dense},{streaming},{ok}",
            f.characteristic()
        );
    }
    Ok(Outcome { doc, mismatch })
}
