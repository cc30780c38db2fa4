use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use hdel_core::adversary::{chain_duel, gadget_duel_with_advice, AdviceRule, ChainConfig, ChainKind, ReinsertionMode};
use hdel_core::harness::generate::{advice_for, random_instance, AdviceSource};
use hdel_core::harness::instance::Instance;
use hdel_core::harness::report::{render_reports, Format, ReportRow};
use hdel_core::harness::sweep::{sweep, SweepConfig};
use hdel_core::harness::{verify_and_record, Verification};
use hdel_core::online::{run_strategy, Strategy};
use hdel_core::pattern::{classify_pattern, PatternGraph};
use hdel_core::{parse_rational, Rational};

#[derive(Parser)]
#[command(name = "hdel", version, about = "Online H-node-deletion with one-bit advice: duels, replays, sweeps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Twin and connectivity traits of a pattern (all builtins when omitted).
    Classify {
        #[arg(long)]
        pattern: Option<String>,
    },
    /// Write a seeded random instance.
    Gen {
        #[arg(long)]
        pattern: String,
        /// Number of vertices.
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        edge_prob: f64,
        /// `correct` or `corrupt:<zeros|ones|shift|flip:q>[@seed]`.
        #[arg(long, default_value = "correct")]
        advice: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Play the reinsertion adversary live against a strategy.
    Duel {
        #[arg(long)]
        pattern: String,
        #[command(flatten)]
        strategy: StrategyArgs,
        /// `true-twin` or `false-twin`; picked from the pattern when omitted.
        #[arg(long)]
        mode: Option<String>,
        /// `disjoint`, `shared` or `join`; a single gadget when omitted.
        #[arg(long)]
        chain: Option<String>,
        #[arg(long, default_value_t = 1)]
        m: usize,
        /// Reveal budget per gadget.
        #[arg(long, default_value_t = 1000)]
        budget: usize,
        /// `classwise` or `none`.
        #[arg(long, default_value = "classwise")]
        advice: String,
        /// Replay file for the final graph and tape.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "csv")]
        format: String,
    },
    /// Replay an instance file against a strategy.
    Run {
        instance: PathBuf,
        #[command(flatten)]
        strategy: StrategyArgs,
        /// Replace the file's advice: `correct` or `corrupt:...`.
        #[arg(long)]
        advice: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "csv")]
        format: String,
    },
    /// Consistency/robustness sweep over a grid of p.
    Sweep {
        #[arg(long)]
        pattern: String,
        /// Comma-separated, e.g. `0,1/4,1/2,3/4`.
        #[arg(long, default_value = "0,1/4,1/2,3/4")]
        p: String,
        #[arg(long)]
        mode: Option<String>,
        #[arg(long)]
        chain: Option<String>,
        #[arg(long, default_value_t = 20)]
        m: usize,
        #[arg(long, default_value_t = 1000)]
        budget: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Sweep table; per-run rows go to `<out>.runs.<ext>`, failing traces to `<out>.fail-<i>.hdel`.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "csv")]
        format: String,
    },
    /// Run ALG_p on an instance and check the competitive bound.
    Verify {
        instance: PathBuf,
        #[arg(long, default_value = "1/2")]
        p: String,
        #[arg(long)]
        advice: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "csv")]
        format: String,
    },
}

#[derive(Args)]
struct StrategyArgs {
    /// `algp`, `naive`, `alg1` or `greedy`.
    #[arg(long, default_value = "algp")]
    strategy: String,
    /// Trust parameter of ALG_p as `num/den` or a decimal.
    #[arg(long)]
    p: Option<String>,
}

impl StrategyArgs {
    fn resolve(&self) -> Result<Strategy> {
        let p = self.p.as_deref().map(parse_rational).transpose().map_err(anyhow::Error::msg)?;
        Ok(Strategy::parse(&self.strategy, p)?)
    }
}

fn pattern(spec: &str) -> Result<PatternGraph> {
    PatternGraph::parse(spec).with_context(|| format!("pattern `{spec}`"))
}

fn format(s: &str) -> Result<Format> {
    s.parse().map_err(anyhow::Error::msg)
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_instance(path: &Path) -> Result<Instance> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Instance::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn readvise(inst: Instance, advice: Option<&str>) -> Result<Instance> {
    let Some(advice) = advice else {
        return Ok(inst);
    };
    let source: AdviceSource = advice.parse().map_err(anyhow::Error::msg)?;
    if source == AdviceSource::Classwise {
        bail!("classwise advice only exists for duels");
    }
    let g = inst.to_graph()?;
    let tape = advice_for(&g, &inst.pattern, &source);
    Ok(inst.with_advice(tape))
}

fn mode_for(h: &PatternGraph, mode: Option<&str>) -> Result<ReinsertionMode> {
    match mode {
        Some(m) => m.parse().map_err(anyhow::Error::msg),
        None => ReinsertionMode::for_pattern(h)
            .with_context(|| format!("{h} has both true and false twins; no reinsertion mode applies")),
    }
}

fn classify(spec: Option<&str>) -> Result<bool> {
    let names: Vec<String> = match spec {
        Some(s) => vec![s.to_string()],
        None => ["K2", "K3", "K4", "K5", "K6", "C4", "C5", "C6", "P2", "P3", "P4", "P5", "P6", "S3"]
            .map(String::from)
            .to_vec(),
    };
    println!("pattern,k,true_twins,false_twins,two_connected,path");
    for name in names {
        let h = pattern(&name)?;
        let t = classify_pattern(&h);
        let spec = h.spec_string();
        println!(
            "{},{},{},{},{},{}",
            if spec.contains(',') { format!("\"{spec}\"") } else { spec },
            h.k(),
            t.has_true_twin_pair,
            t.has_false_twin_pair,
            t.is_two_connected,
            t.is_path
        );
    }
    Ok(true)
}

fn report_verdict(verdict: &Verification) -> bool {
    match verdict {
        Verification::Fail { check, .. } => {
            eprintln!("bound violated: deletions exceed {}", check.limit);
            false
        }
        _ => true,
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Classify { pattern } => classify(pattern.as_deref()),

        Command::Gen { pattern: spec, n, edge_prob, advice, seed, out } => {
            let h = pattern(&spec)?;
            if !(0.0..=1.0).contains(&edge_prob) {
                bail!("edge probability {edge_prob} outside [0,1]");
            }
            let source: AdviceSource = advice.parse().map_err(anyhow::Error::msg)?;
            let inst = random_instance(&h, n, edge_prob, &source, seed);
            emit(out.as_deref(), &inst.emit())?;
            Ok(true)
        }

        Command::Duel { pattern: spec, strategy, mode, chain, m, budget, advice, out, format: fmt } => {
            let h = pattern(&spec)?;
            let strategy = strategy.resolve()?;
            let mode = mode_for(&h, mode.as_deref())?;
            let rule = match advice.as_str() {
                "classwise" => AdviceRule::Class1GetsOne,
                "none" => AdviceRule::None,
                other => bail!("duel advice must be `classwise` or `none`, got `{other}`"),
            };
            let policy = strategy.policy()?;
            let (mut report, instance, unbounded) = match chain {
                None if m == 1 => {
                    let d = gadget_duel_with_advice(&h, mode, policy, budget, rule)?;
                    (d.report, d.instance, d.gadget.unbounded)
                }
                chain => {
                    let kind: ChainKind = chain.as_deref().unwrap_or("disjoint").parse().map_err(anyhow::Error::msg)?;
                    let c = chain_duel(&h, ChainConfig { m, kind, advice_rule: rule }, mode, policy, budget)?;
                    (c.report, c.instance, c.unbounded)
                }
            };
            if unbounded {
                eprintln!("a gadget exhausted its reveal budget of {budget}");
            }
            if let Some(path) = &out {
                emit(Some(path), &instance.emit())?;
            }
            let verdict = verify_and_record(&mut report, Some(&instance));
            let row = ReportRow::new(format!("duel/{strategy}"), &report, m, &verdict);
            print!("{}", render_reports(&[row], format(&fmt)?));
            Ok(report_verdict(&verdict))
        }

        Command::Run { instance, strategy, advice, out, format: fmt } => {
            let inst = readvise(read_instance(&instance)?, advice.as_deref())?;
            let strategy = strategy.resolve()?;
            let mut report = run_strategy(&inst, strategy)?;
            let verdict = verify_and_record(&mut report, Some(&inst));
            let row = ReportRow::new(format!("run/{strategy}"), &report, 0, &verdict);
            emit(out.as_deref(), &render_reports(&[row], format(&fmt)?))?;
            Ok(report_verdict(&verdict))
        }

        Command::Verify { instance, p, advice, out, format: fmt } => {
            let inst = readvise(read_instance(&instance)?, advice.as_deref())?;
            let p = parse_rational(&p).map_err(anyhow::Error::msg)?;
            let mut report = run_strategy(&inst, Strategy::algp(p)?)?;
            let verdict = verify_and_record(&mut report, Some(&inst));
            let row = ReportRow::new(format!("verify/{}", instance.display()), &report, 0, &verdict);
            emit(out.as_deref(), &render_reports(&[row], format(&fmt)?))?;
            Ok(report_verdict(&verdict))
        }

        Command::Sweep { pattern: spec, p, mode, chain, m, budget, seed, out, format: fmt } => {
            let h = pattern(&spec)?;
            let ps =
                p.split(',').map(parse_rational).collect::<Result<Vec<Rational>, _>>().map_err(anyhow::Error::msg)?;
            for &q in &ps {
                Strategy::algp(q)?;
            }
            let mut cfg =
                SweepConfig::for_pattern(h.clone(), ps).with_context(|| format!("{h} admits no reinsertion mode"))?;
            if mode.is_some() {
                cfg.mode = mode_for(&h, mode.as_deref())?;
            }
            if let Some(c) = chain {
                cfg.chain = c.parse().map_err(anyhow::Error::msg)?;
            }
            cfg.m = m;
            cfg.budget = budget;
            cfg.seed = seed;
            let fmt = format(&fmt)?;
            let result = sweep(&cfg);
            emit(out.as_deref(), &result.render(fmt))?;
            if let Some(path) = &out {
                let ext = if fmt == Format::Csv { "csv" } else { "jsonl" };
                let runs = path.with_extension(format!("runs.{ext}"));
                emit(Some(&runs), &render_reports(&result.report_rows(), fmt))?;
                for (i, failed) in result.failures().enumerate() {
                    let replay = path.with_extension(format!("fail-{i}.hdel"));
                    emit(Some(&replay), &failed.trace.emit())?;
                    eprintln!("{} failed its bound; replay written to {}", failed.run_id, replay.display());
                }
            }
            for row in result.rows.iter().filter(|r| r.error.is_some()) {
                eprintln!("p = {}: {}", row.p, row.error.as_deref().unwrap_or_default());
            }
            Ok(result.all_pass())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
