//! `epiattr`: command-line front end for episturmian towers and string
//! attractors.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use epiattr_core::report::DEFAULT_SWEEP_ORACLE_LEN;
use epiattr_core::*;

mod fail;

use fail::Fail;

#[derive(Debug, Parser)]
#[command(
    name = "epiattr",
    version,
    about = "Palindromic closure towers and string attractors"
)]
struct Cli {
    /// Emit JSON instead of plain text.
    #[arg(long, global = true)]
    json: bool,

    #[command(flatten)]
    limits: LimitArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct LimitArgs {
    /// Longest prefix of u(Δ) any command may build.
    #[arg(long, global = true, env = "EPIATTR_MAX_PREFIX_LEN", default_value_t = tower::DEFAULT_MAX_PREFIX_LEN)]
    max_prefix_len: usize,

    /// Highest tower level any command may build.
    #[arg(long, global = true, env = "EPIATTR_MAX_LEVELS", default_value_t = tower::DEFAULT_MAX_LEVELS)]
    max_levels: usize,

    /// Longest word the exhaustive oracle accepts.
    #[arg(long, global = true, env = "EPIATTR_ORACLE_MAX_LEN", default_value_t = oracle::DEFAULT_MAX_LEN)]
    oracle_max_len: usize,

    /// Verifier calls allowed per exhaustive search.
    #[arg(long, global = true, env = "EPIATTR_ORACLE_BUDGET", default_value_t = oracle::DEFAULT_BUDGET)]
    budget: u64,
}

impl LimitArgs {
    fn caps(&self) -> Caps {
        Caps {
            max_prefix_len: self.max_prefix_len,
            max_levels: self.max_levels,
        }
    }

    fn oracle(&self) -> OracleLimits {
        OracleLimits {
            max_len: self.oracle_max_len,
            budget: self.budget,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Shortest palindrome with prefix `word letter`.
    Closure { word: Word, letter: Letter },
    /// Per-level lengths, consumed letters, case tags and m-maps.
    Tower {
        #[arg(long)]
        directive: DirectiveSpec,
        #[arg(long)]
        levels: usize,
        /// Warn when letters do not first appear in the order 0, 1, 2, ...
        #[arg(long)]
        normalize_check: bool,
    },
    /// Prefix of u(Δ) of the given length.
    Prefix {
        #[arg(long)]
        directive: DirectiveSpec,
        #[arg(long)]
        length: usize,
    },
    /// Attractor of the palindromic prefix w_n.
    AttractorPrefix {
        #[arg(long)]
        directive: DirectiveSpec,
        #[arg(long)]
        level: usize,
    },
    /// Attractor of a factor of u(Δ), given literally or as a span.
    AttractorFactor {
        #[arg(long)]
        directive: DirectiveSpec,
        #[arg(long, conflicts_with_all = ["start", "len"], required_unless_present = "start")]
        word: Option<Word>,
        #[arg(long, requires = "len")]
        start: Option<usize>,
        #[arg(long, requires = "start")]
        len: Option<usize>,
        /// Highest level searched for the factor (defaults to the level cap).
        #[arg(long)]
        max_level: Option<usize>,
    },
    /// Check whether positions form an attractor of a word.
    Verify {
        word: Word,
        /// Comma-separated positions, e.g. `1,3`.
        #[arg(value_parser = parse_positions, allow_hyphen_values = true)]
        positions: Positions,
    },
    /// Minimum attractor by exhaustive search.
    Minimal {
        word: Word,
        #[arg(long)]
        max_size: Option<usize>,
    },
    /// Attractor profile s(n) for n = 1..=upto.
    Profile {
        #[arg(long)]
        directive: DirectiveSpec,
        #[arg(long)]
        upto: usize,
        /// Compare with the exhaustive minimum for n <= M.
        #[arg(long, value_name = "M")]
        check_oracle: Option<usize>,
    },
    /// Factor construction over every distinct factor of w_n.
    Sweep {
        #[arg(long)]
        directive: DirectiveSpec,
        #[arg(long)]
        level: usize,
        /// Longest factor processed.
        #[arg(long)]
        max_len: usize,
        /// Longest factor sent to the exhaustive oracle.
        #[arg(long, default_value_t = DEFAULT_SWEEP_ORACLE_LEN)]
        oracle_len: usize,
    },
}

#[derive(Debug, Clone)]
struct Positions(Vec<usize>);

fn parse_positions(s: &str) -> Result<Positions, String> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            p.parse::<usize>()
                .map_err(|e| format!("bad position {p:?}: {e}"))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(Positions)
}

/// Result of a command: the exit code once output has been written.
type Run = Result<u8, Fail>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(fail) => {
            eprintln!("error: {}", fail.message);
            ExitCode::from(fail.code)
        }
    }
}

fn run(cli: &Cli) -> Run {
    let caps = cli.limits.caps();
    let limits = cli.limits.oracle();
    let json = cli.json;
    match &cli.command {
        Command::Closure { word, letter } => closure(word, *letter, json),
        Command::Tower {
            directive,
            levels,
            normalize_check,
        } => tower(directive, *levels, *normalize_check, &caps, json),
        Command::Prefix { directive, length } => prefix(directive, *length, &caps, json),
        Command::AttractorPrefix { directive, level } => {
            attractor_prefix(directive, *level, &caps, json)
        }
        Command::AttractorFactor {
            directive,
            word,
            start,
            len,
            max_level,
        } => {
            let target = match (word, start, len) {
                (Some(w), _, _) => FactorTarget::Word(w.clone()),
                (None, Some(start), Some(len)) => FactorTarget::Span {
                    start: *start,
                    len: *len,
                },
                _ => return Err(Fail::usage("give --word or both --start and --len")),
            };
            attractor_factor(
                directive,
                &target,
                max_level.unwrap_or(caps.max_levels),
                &caps,
                json,
            )
        }
        Command::Verify { word, positions } => verify(word, &positions.0, json),
        Command::Minimal { word, max_size } => {
            minimal(word, max_size.unwrap_or(word.len()), &limits, json)
        }
        Command::Profile {
            directive,
            upto,
            check_oracle,
        } => profile_cmd(directive, *upto, *check_oracle, &caps, &limits, json),
        Command::Sweep {
            directive,
            level,
            max_len,
            oracle_len,
        } => {
            let opts = SweepOptions {
                oracle_max_len: *oracle_len,
                caps,
                limits,
                ..SweepOptions::new(*level, *max_len)
            };
            sweep_cmd(directive, &opts, json)
        }
    }
}

fn print_json<T: Serialize>(value: &T) -> Result<(), Fail> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Fail::internal(e.to_string()))?;
    println!("{text}");
    Ok(())
}

fn closure(word: &Word, letter: Letter, json: bool) -> Run {
    let result = palindromic_closure(word, letter);
    if json {
        #[derive(Serialize)]
        struct Out<'a> {
            word: &'a Word,
            letter: Letter,
            closure: &'a Word,
        }
        print_json(&Out {
            word,
            letter,
            closure: &result,
        })?;
    } else {
        println!("{result}");
    }
    Ok(0)
}

fn tower(
    spec: &DirectiveSpec,
    levels: usize,
    normalize_check: bool,
    caps: &Caps,
    json: bool,
) -> Run {
    if normalize_check && !spec.is_normalized() {
        let order: Vec<String> = spec.alphabet().iter().map(|a| a.to_string()).collect();
        eprintln!(
            "warning: letters of {spec} first appear in the order {}, not in canonical order",
            order.join(",")
        );
    }
    let t = build_tower(spec, Stop::Levels(levels), caps)?;
    if json {
        #[derive(Serialize)]
        struct Level<'a> {
            level: usize,
            #[serde(flatten)]
            record: &'a LevelRecord,
        }
        #[derive(Serialize)]
        struct Out<'a> {
            directive: String,
            levels: Vec<Level<'a>>,
        }
        print_json(&Out {
            directive: spec.to_string(),
            levels: t
                .levels()
                .iter()
                .enumerate()
                .map(|(level, record)| Level { level, record })
                .collect(),
        })?;
    } else {
        println!("level\tlength\tletter\tcase\tm-map");
        for (n, r) in t.levels().iter().enumerate() {
            let m: Vec<String> = r.m_map.iter().map(|(a, m)| format!("{a}:{m}")).collect();
            println!(
                "{n}\t{}\t{}\t{}\t{{{}}}",
                r.length,
                r.consumed.map_or("-".to_string(), |a| a.to_string()),
                r.case.map_or("-", case_name),
                m.join(",")
            );
        }
    }
    Ok(0)
}

fn case_name(c: ClosureCase) -> &'static str {
    match c {
        ClosureCase::Append => "append",
        ClosureCase::NewLetter => "new-letter",
        ClosureCase::Interior => "interior",
    }
}

fn prefix(spec: &DirectiveSpec, length: usize, caps: &Caps, json: bool) -> Run {
    let p = sequence_prefix(spec, length, caps)?;
    if json {
        #[derive(Serialize)]
        struct Out<'a> {
            directive: String,
            length: usize,
            prefix: &'a Word,
        }
        print_json(&Out {
            directive: spec.to_string(),
            length,
            prefix: &p,
        })?;
    } else {
        println!("{p}");
    }
    Ok(0)
}

fn print_row(row: &AttractorRow) {
    let positions: Vec<String> = row.positions.iter().map(usize::to_string).collect();
    println!("{}", row.word.mark(&row.positions));
    println!("positions: {}", positions.join(","));
    println!("provenance: {}", kebab(&row.provenance));
    println!("status: {}", kebab(&row.status));
    if let Some(w) = &row.witness {
        println!("witness: {w}");
    }
    if let Some(level) = row.level {
        println!("level: {level}");
    }
    if let Some(start) = row.occurrence_start {
        println!("occurrence start: {start}");
    }
    if let Some(case) = row.case {
        println!("case: {case}");
    }
}

/// Serialized name of a unit enum variant.
fn kebab<T: Serialize>(value: &T) -> String {
    serde_json::to_value(value)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

fn row_code(row: &AttractorRow) -> u8 {
    match row.status {
        StatusTag::Failed => 1,
        _ => 0,
    }
}

fn attractor_prefix(spec: &DirectiveSpec, level: usize, caps: &Caps, json: bool) -> Run {
    let t = build_tower(spec, Stop::Levels(level), caps)?;
    let word = t.level_word(level).expect("level was built");
    let a = prefix_attractor(&t, level)?.verify(&word)?;
    let row = AttractorRow {
        level: Some(level),
        occurrence_start: Some(0),
        ..AttractorRow::from_attractor(&word, &a)
    };
    if json {
        print_json(&row)?;
    } else {
        print_row(&row);
    }
    Ok(row_code(&row))
}

fn attractor_factor(
    spec: &DirectiveSpec,
    target: &FactorTarget,
    level_cap: usize,
    caps: &Caps,
    json: bool,
) -> Run {
    let mut t = Tower::new(spec.clone());
    let fa = factor_attractor_in(&mut t, target, level_cap, caps)?;
    let row = AttractorRow::from_factor(&fa);
    if json {
        #[derive(Serialize)]
        struct Out<'a> {
            #[serde(flatten)]
            row: &'a AttractorRow,
            context: Option<FactorContext>,
        }
        print_json(&Out {
            row: &row,
            context: fa.context,
        })?;
    } else {
        print_row(&row);
        if let Some(c) = fa.context {
            println!("frame: i = {}, j = {}, reversed = {}", c.i, c.j, c.reversed);
        }
    }
    Ok(row_code(&row))
}

fn verify(word: &Word, positions: &[usize], json: bool) -> Run {
    let outcome = is_attractor(word, positions)?;
    let mut a = Attractor::new(positions.to_vec(), word.len(), Provenance::Input);
    a.status = Status::from_outcome(&outcome);
    let row = AttractorRow::from_attractor(word, &a);
    let occurrences = match &outcome {
        VerifyOutcome::Pass => Vec::new(),
        VerifyOutcome::Fail { occurrences, .. } => occurrences.clone(),
    };
    if json {
        #[derive(Serialize)]
        struct Out<'a> {
            #[serde(flatten)]
            row: &'a AttractorRow,
            occurrences: Vec<Occurrence>,
        }
        print_json(&Out {
            row: &row,
            occurrences,
        })?;
    } else {
        print_row(&row);
        if !occurrences.is_empty() {
            let starts: Vec<String> = occurrences.iter().map(|o| o.start.to_string()).collect();
            println!("witness occurrences start at: {}", starts.join(","));
        }
    }
    Ok(row_code(&row))
}

fn minimal(word: &Word, max_size: usize, limits: &OracleLimits, json: bool) -> Run {
    let Some(found) = minimal_attractor(word, max_size, limits)? else {
        if json {
            print_json(
                &serde_json::json!({ "word": word, "max_size": max_size, "positions": null }),
            )?;
        } else {
            println!("no attractor of size at most {max_size}");
        }
        return Ok(1);
    };
    let mut a = Attractor::new(found.positions.clone(), word.len(), Provenance::Oracle);
    a.status = Status::Verified;
    let row = AttractorRow::from_attractor(word, &a);
    if json {
        #[derive(Serialize)]
        struct Out<'a> {
            #[serde(flatten)]
            row: &'a AttractorRow,
            size: usize,
            verifier_calls: u64,
        }
        print_json(&Out {
            row: &row,
            size: found.size,
            verifier_calls: found.verifier_calls,
        })?;
    } else {
        print_row(&row);
        println!("size: {}", found.size);
        println!("verifier calls: {}", found.verifier_calls);
    }
    Ok(0)
}

fn profile_cmd(
    spec: &DirectiveSpec,
    upto: usize,
    check: Option<usize>,
    caps: &Caps,
    limits: &OracleLimits,
    json: bool,
) -> Run {
    let table = profile(spec, upto, caps)?;
    let oracle = match check {
        None => None,
        Some(m) => match profile_oracle_check(spec, m, caps, limits) {
            Ok(c) => Some(c),
            Err(ProfileError::Disagreement(c)) => Some(c),
            Err(e) => return Err(e.into()),
        },
    };
    let disagreement = oracle
        .as_ref()
        .and_then(|c| c.first_disagreement())
        .copied();
    if json {
        #[derive(Serialize)]
        struct Out<'a> {
            directive: String,
            entries: &'a [profile::ProfileEntry],
            constant_from: Option<usize>,
            oracle_check: Option<&'a ProfileCheck>,
        }
        print_json(&Out {
            directive: spec.to_string(),
            entries: &table.entries,
            constant_from: table.constant_from(),
            oracle_check: oracle.as_ref(),
        })?;
    } else {
        println!("n\ts(n)");
        for e in &table.entries {
            println!("{}\t{}", e.n, e.s);
        }
        if let Some(c) = &oracle {
            match disagreement {
                None => println!("# exhaustive minimum agrees for n <= {}", c.rows.len()),
                Some(r) => println!(
                    "# exhaustive minimum {} differs at n = {} (formula {})",
                    r.oracle, r.n, r.formula
                ),
            }
        }
    }
    Ok(if disagreement.is_some() { 1 } else { 0 })
}

fn sweep_cmd(spec: &DirectiveSpec, opts: &SweepOptions, json: bool) -> Run {
    let report = sweep(spec, opts)?;
    let s = &report.summary;
    if json {
        print_json(&report)?;
    } else {
        println!("factor\tstatus\twitness\tcase\toracle-size-d");
        for r in &report.rows {
            println!(
                "{}\t{}\t{}\t{}\t{}",
                r.row.word.mark(&r.row.positions),
                kebab(&r.row.status),
                r.row.witness.as_ref().map_or("-", Word::as_str),
                r.row.case.map_or("-".to_string(), |c| c.to_string()),
                r.oracle_size_d
                    .map_or("-", |b| if b { "yes" } else { "no" })
            );
        }
        println!(
            "# {} w_{}: {} factors, {} verified, {} failed, pass rate {:.4}, oracle confirmed {}/{}",
            s.directive, s.level, s.factors, s.verified, s.failed, s.pass_rate, s.oracle_confirmed, s.oracle_checked
        );
    }
    let oracle_refuted = report.rows.iter().any(|r| r.oracle_size_d == Some(false));
    Ok(if s.failed > 0 || oracle_refuted { 1 } else { 0 })
}
