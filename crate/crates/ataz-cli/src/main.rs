//! `ataz`: emptiness of one-clock alternating timed automata with clock
//! deactivation, MTL satisfiability, entailment checks and timed
//! model checking, all zone-based.
//!
//! Exit codes for decision verbs: 0 empty / entails / accepted-run printed,
//! 1 non-empty / not-entails / rejected, 2 inconclusive (node budget), 3
//! input error.

use ataz_core::config::accepting_run;
use ataz_core::parse::{parse_ata, parse_mtl, parse_timed_word, print_ata};
use ataz_core::rat::fmt_rat;
use ataz_core::translate::{translate, ClosureLoc};
use ataz_core::{Mtl, OneAta};
use ataz_zones::dump::{dump_node, parse_node_dump, LocSpace};
use ataz_zones::entail::node_entails_witness;
use ataz_zones::explore::{explore, graph_dot, ExploreConfig, Pruning, SearchOrder, Verdict};
use ataz_zones::hardness::{gen_hardness_instance, hardness_loc_name, parse_dimacs};
use ataz_zones::product::{model_check, parse_ta, product_graph_dot};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "ataz", version, about)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PruneArg {
    Full,
    Bounded,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OrderArg {
    Bfs,
    Dfs,
}

#[derive(Parser, Debug)]
struct ExploreArgs {
    /// Entailment check used to prune fresh nodes.
    #[arg(long, value_enum, default_value_t = PruneArg::Full)]
    prune: PruneArg,
    /// Node budget; mandatory semantics only with --prune none (default
    /// 100000 there).
    #[arg(long)]
    max_nodes: Option<usize>,
    /// Search order.
    #[arg(long, value_enum, default_value_t = OrderArg::Bfs)]
    order: OrderArg,
    /// Worker threads for successor computation.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Write the explored zone graph in DOT format.
    #[arg(long)]
    dot: Option<PathBuf>,
    /// Machine-readable output.
    #[arg(long)]
    json: bool,
}

impl ExploreArgs {
    fn config(&self) -> ExploreConfig {
        let pruning = match self.prune {
            PruneArg::Full => Pruning::Full,
            PruneArg::Bounded => Pruning::Bounded,
            PruneArg::None => Pruning::None,
        };
        let max_nodes = match (pruning, self.max_nodes) {
            (Pruning::None, None) => Some(100_000),
            (_, m) => m,
        };
        let mut cfg = ExploreConfig::new(pruning, max_nodes);
        cfg.order = match self.order {
            OrderArg::Bfs => SearchOrder::BreadthFirst,
            OrderArg::Dfs => SearchOrder::DepthFirst,
        };
        cfg.jobs = self.jobs.max(1);
        cfg
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Translate an MTL formula into an equivalent automaton.
    Translate {
        #[arg(long)]
        mtl: String,
        /// Extra alphabet letters, comma separated.
        #[arg(long)]
        letters: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Decide satisfiability of an MTL formula.
    Sat {
        #[arg(long)]
        mtl: String,
        #[arg(long)]
        letters: Option<String>,
        #[command(flatten)]
        explore: ExploreArgs,
    },
    /// Decide emptiness of an automaton.
    Empty {
        #[arg(long)]
        ata: PathBuf,
        #[command(flatten)]
        explore: ExploreArgs,
    },
    /// Run an automaton on a timed word and print the run.
    Simulate {
        #[arg(long)]
        ata: PathBuf,
        #[arg(long)]
        word: String,
        #[arg(long)]
        json: bool,
    },
    /// Check entailment between two zone dumps.
    Entail {
        #[arg(long)]
        z: PathBuf,
        #[arg(long)]
        zprime: PathBuf,
        #[arg(long = "M")]
        m: u32,
        #[arg(long)]
        json: bool,
    },
    /// Generate a non-entailment instance from a monotone 3-CNF.
    GenHard {
        #[arg(long)]
        cnf: PathBuf,
        #[arg(long)]
        z: PathBuf,
        #[arg(long)]
        zprime: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Model-check a timed automaton against a specification automaton or
    /// MTL formula.
    Modelcheck {
        #[arg(long)]
        ta: PathBuf,
        #[arg(long)]
        spec: Option<PathBuf>,
        #[arg(long)]
        mtl: Option<String>,
        #[arg(long)]
        letters: Option<String>,
        #[command(flatten)]
        explore: ExploreArgs,
    },
    /// Report the width bound of a one-sided MTL formula.
    WidthBound {
        #[arg(long)]
        mtl: String,
        #[arg(long)]
        json: bool,
    },
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(3)
}

fn parse_letters(letters: &Option<String>) -> Vec<String> {
    letters
        .as_deref()
        .unwrap_or("")
        .split([',', ' '])
        .filter(|s| !s.is_empty())
        .map(|s| s.to_string())
        .collect()
}

fn read(path: &PathBuf) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_mtl(text: &str) -> Result<Mtl, String> {
    parse_mtl(text).map_err(|e| format!("in formula: {e}"))
}

fn load_ata(path: &PathBuf) -> Result<OneAta, String> {
    parse_ata(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn verdict_text(v: &Verdict) -> &'static str {
    match v {
        Verdict::Empty => "EMPTY",
        Verdict::NonEmpty { .. } => "NON-EMPTY",
        Verdict::Inconclusive(_) => "INCONCLUSIVE",
    }
}

fn report_verdict(
    verdict: &Verdict,
    nodes: usize,
    pruned: usize,
    json: bool,
) -> ExitCode {
    if json {
        let mut obj = json!({
            "verdict": match verdict {
                Verdict::Empty => "empty",
                Verdict::NonEmpty { .. } => "non-empty",
                Verdict::Inconclusive(_) => "inconclusive",
            },
            "nodes": nodes,
            "pruned": pruned,
        });
        if let Verdict::NonEmpty { witness, .. } = verdict {
            obj["witness"] = json!(witness.to_string());
        }
        if let Verdict::Inconclusive(reason) = verdict {
            obj["reason"] = json!(reason);
        }
        println!("{obj}");
    } else {
        println!("{}", verdict_text(verdict));
        match verdict {
            Verdict::NonEmpty { witness, .. } => println!("witness: {witness}"),
            Verdict::Inconclusive(reason) => println!("reason: {reason}"),
            Verdict::Empty => {}
        }
        println!("nodes: {nodes}  pruned: {pruned}");
    }
    ExitCode::from(verdict.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Translate { mtl, letters, json } => {
            let f = match load_mtl(&mtl) {
                Ok(f) => f,
                Err(e) => return fail(e),
            };
            let t = translate(&f, &parse_letters(&letters));
            let text = print_ata(&t.ata);
            let legend: Vec<(String, String)> = t
                .location_of
                .iter()
                .map(|(c, id)| {
                    let what = match c {
                        ClosureLoc::Init => "initial marker".to_string(),
                        ClosureLoc::Formula(g) => g.to_string(),
                        ClosureLoc::NextMarker(i, g) => format!("committed X{i} {g}"),
                    };
                    (t.ata.loc_name(*id).to_string(), what)
                })
                .collect();
            if json {
                println!(
                    "{}",
                    json!({
                        "ata": text,
                        "locations": legend.iter().map(|(k, v)| json!({"location": k, "stands_for": v})).collect::<Vec<_>>(),
                        "width_bound": t.width_bound,
                    })
                );
            } else {
                for (k, v) in &legend {
                    println!("# {k} = {v}");
                }
                print!("{text}");
            }
            ExitCode::SUCCESS
        }
        Cmd::Sat {
            mtl,
            letters,
            explore: args,
        } => {
            let f = match load_mtl(&mtl) {
                Ok(f) => f,
                Err(e) => return fail(e),
            };
            let t = translate(&f, &parse_letters(&letters));
            let cfg = if args.prune == PruneArg::Full && f.is_one_sided() {
                let mut c = args.config();
                c.pruning = Pruning::Bounded;
                c
            } else {
                args.config()
            };
            let out = explore(&t.ata, &cfg);
            if let Some(path) = &args.dot {
                if let Err(e) = std::fs::write(path, graph_dot(&out.graph, &t.ata)) {
                    return fail(e);
                }
            }
            report_verdict(&out.verdict, out.graph.nodes.len(), out.graph.pruned, args.json)
        }
        Cmd::Empty { ata, explore: args } => {
            let a = match load_ata(&ata) {
                Ok(a) => a,
                Err(e) => return fail(e),
            };
            let out = explore(&a, &args.config());
            if let Some(path) = &args.dot {
                if let Err(e) = std::fs::write(path, graph_dot(&out.graph, &a)) {
                    return fail(e);
                }
            }
            report_verdict(&out.verdict, out.graph.nodes.len(), out.graph.pruned, args.json)
        }
        Cmd::Simulate { ata, word, json } => {
            let a = match load_ata(&ata) {
                Ok(a) => a,
                Err(e) => return fail(e),
            };
            let w = match parse_timed_word(&word) {
                Ok(w) => w,
                Err(e) => return fail(e),
            };
            let run = match accepting_run(&a, &w) {
                Ok(r) => r,
                Err(e) => return fail(e),
            };
            match run {
                Some(configs) => {
                    let printed: Vec<String> =
                        configs.iter().map(|c| c.display(&a)).collect();
                    if json {
                        println!(
                            "{}",
                            json!({"accepted": true, "run": printed, "word": w.to_string()})
                        );
                    } else {
                        println!("ACCEPTED");
                        let mut line = printed[0].clone();
                        for (i, cfg) in printed.iter().enumerate().skip(1) {
                            let arrow = if i % 2 == 1 {
                                format!(" --{}--> ", fmt_rat(w.steps[i / 2].0))
                            } else {
                                format!(" --{}--> ", w.steps[i / 2 - 1].1)
                            };
                            line.push_str(&arrow);
                            line.push_str(cfg);
                        }
                        println!("{line}");
                    }
                    ExitCode::SUCCESS
                }
                None => {
                    if json {
                        println!("{}", json!({"accepted": false, "word": w.to_string()}));
                    } else {
                        println!("REJECTED");
                    }
                    ExitCode::from(1)
                }
            }
        }
        Cmd::Entail { z, zprime, m, json } => {
            let mut space = LocSpace::new();
            let (ztext, zptext) = match (read(&z), read(&zprime)) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(e), _) | (_, Err(e)) => return fail(e),
            };
            let n1 = match parse_node_dump(&ztext, &mut space) {
                Ok(n) => n,
                Err(e) => return fail(format!("{}: {e}", z.display())),
            };
            let n2 = match parse_node_dump(&zptext, &mut space) {
                Ok(n) => n,
                Err(e) => return fail(format!("{}: {e}", zprime.display())),
            };
            match node_entails_witness(&n1, &n2, m) {
                None => {
                    if json {
                        println!("{}", json!({"entails": true}));
                    } else {
                        println!("ENTAILS");
                    }
                    ExitCode::SUCCESS
                }
                Some(witness) => {
                    let vars: Vec<String> = n2
                        .zone
                        .as_ref()
                        .map(|zz| {
                            zz.vars()
                                .iter()
                                .zip(&witness)
                                .map(|(v, r)| {
                                    format!("{}.{} = {}", space.name(v.loc), v.index, fmt_rat(*r))
                                })
                                .collect()
                        })
                        .unwrap_or_default();
                    if json {
                        println!("{}", json!({"entails": false, "witness": vars}));
                    } else {
                        println!("NOT-ENTAILS");
                        for v in vars {
                            println!("witness: {v}");
                        }
                    }
                    ExitCode::from(1)
                }
            }
        }
        Cmd::GenHard { cnf, z, zprime, json } => {
            let text = match read(&cnf) {
                Ok(t) => t,
                Err(e) => return fail(e),
            };
            let f = match parse_dimacs(&text) {
                Ok(f) => f,
                Err(e) => return fail(format!("{}: {e}", cnf.display())),
            };
            let inst = gen_hardness_instance(&f);
            let zd = dump_nodes_with(&inst.z);
            let zpd = dump_nodes_with(&inst.z_prime);
            if let Err(e) = std::fs::write(&z, zd).and_then(|_| std::fs::write(&zprime, zpd)) {
                return fail(e);
            }
            if json {
                println!(
                    "{}",
                    json!({"m": inst.m_const, "clauses": inst.formula.clauses.len(), "z": z.display().to_string(), "zprime": zprime.display().to_string()})
                );
            } else {
                println!("M {}", inst.m_const);
            }
            ExitCode::SUCCESS
        }
        Cmd::Modelcheck {
            ta,
            spec,
            mtl,
            letters,
            explore: args,
        } => {
            let automaton = match read(&ta).and_then(|t| {
                parse_ta(&t).map_err(|e| format!("{}: {e}", ta.display()))
            }) {
                Ok(t) => t,
                Err(e) => return fail(e),
            };
            let specification = match (&spec, &mtl) {
                (Some(path), None) => match load_ata(path) {
                    Ok(a) => a,
                    Err(e) => return fail(e),
                },
                (None, Some(formula)) => {
                    let f = match load_mtl(formula) {
                        Ok(f) => f,
                        Err(e) => return fail(e),
                    };
                    let mut extra = parse_letters(&letters);
                    extra.extend(automaton.alphabet().iter().cloned());
                    translate(&f, &extra).ata
                }
                _ => return fail("provide exactly one of --spec and --mtl"),
            };
            let out = match model_check(&automaton, &specification, &args.config()) {
                Ok(o) => o,
                Err(e) => return fail(e),
            };
            if let Some(path) = &args.dot {
                let dot = product_graph_dot(&out.graph, &automaton, &specification);
                if let Err(e) = std::fs::write(path, dot) {
                    return fail(e);
                }
            }
            report_verdict(&out.verdict, out.graph.nodes.len(), out.graph.pruned, args.json)
        }
        Cmd::WidthBound { mtl, json } => {
            let f = match load_mtl(&mtl) {
                Ok(f) => f,
                Err(e) => return fail(e),
            };
            let bound = f.width_bound().ok();
            if json {
                println!(
                    "{}",
                    json!({"one_sided": f.is_one_sided(), "width_bound": bound})
                );
            } else {
                match bound {
                    Some(k) => println!("width-bound: {k}"),
                    None => println!("width-bound: unbounded (the formula is not one-sided)"),
                }
            }
            ExitCode::SUCCESS
        }
    }
}

fn dump_nodes_with(node: &ataz_zones::Node) -> String {
    dump_node(node, &hardness_loc_name)
}
