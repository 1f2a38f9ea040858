//! Zone-graph exploration deciding language emptiness, with entailment
//! pruning for termination and constructive witness extraction.

use crate::dbm::Dbm;
use crate::dump::dump_node_of;
use crate::entail::{node_entails, node_entails_bounded};
use crate::node::{enumerate_targets, successor, successor_traced, AtaVar, Node, Target};
use ataz_core::config::accepts;
use ataz_core::rat::{rat_int, Rat};
use ataz_core::translate::{translate, TranslationResult};
use ataz_core::{LetterId, Mtl, OneAta, TimedWord};
use num_traits::Zero;
use rayon::prelude::*;
use std::collections::{HashMap, VecDeque};
use std::fmt::Debug;
use std::hash::Hash;

/// Which entailment check prunes freshly computed nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pruning {
    /// Full entailment over all location-preserving injections.
    Full,
    /// Identity-mapping entailment; only compares equal variable sets.
    Bounded,
    /// No pruning; exact duplicates are still merged. Needs a node budget.
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchOrder {
    BreadthFirst,
    DepthFirst,
}

#[derive(Debug, Clone)]
pub struct ExploreConfig {
    pub pruning: Pruning,
    pub max_nodes: Option<usize>,
    pub order: SearchOrder,
    pub jobs: usize,
    /// Emptiness checking stops at the first accepting node; turn this off
    /// to build the whole (pruned) graph, e.g. for structural inspection.
    pub stop_on_accepting: bool,
}

impl ExploreConfig {
    pub fn new(pruning: Pruning, max_nodes: Option<usize>) -> Self {
        let cfg = ExploreConfig {
            pruning,
            max_nodes,
            order: SearchOrder::BreadthFirst,
            jobs: 1,
            stop_on_accepting: true,
        };
        cfg.validate();
        cfg
    }

    pub fn validate(&self) {
        assert!(
            self.pruning != Pruning::None || self.max_nodes.is_some(),
            "exploration without pruning needs a node budget"
        );
    }
}

impl Default for ExploreConfig {
    fn default() -> Self {
        ExploreConfig::new(Pruning::Full, None)
    }
}

/// Outcome of an emptiness check.
#[derive(Debug, Clone)]
pub enum Verdict {
    /// Some word is accepted; `path` indexes the graph's nodes from the
    /// initial node to an accepting one.
    NonEmpty { witness: TimedWord, path: Vec<usize> },
    Empty,
    Inconclusive(String),
}

impl Verdict {
    pub fn exit_code(&self) -> i32 {
        match self {
            Verdict::Empty => 0,
            Verdict::NonEmpty { .. } => 1,
            Verdict::Inconclusive(_) => 2,
        }
    }
}

#[derive(Debug, Clone)]
pub struct GraphEdge<L> {
    pub from: usize,
    pub label: L,
    pub to: usize,
}

#[derive(Debug, Clone)]
pub struct Graph<N, L> {
    pub nodes: Vec<N>,
    pub edges: Vec<GraphEdge<L>>,
    /// Number of freshly computed nodes discarded by entailment pruning.
    pub pruned: usize,
}

/// A symbolic transition system explored by the generic engine.
pub trait ZgSystem {
    type N: Clone + Eq + Hash + Send + Sync;
    type Label: Clone + Send + Sync;

    fn initial(&self) -> Self::N;
    fn successors(&self, n: &Self::N) -> Vec<(Self::Label, Self::N)>;
    fn accepting(&self, n: &Self::N) -> bool;
    /// Is `a` entailed by `b` under the configured check? Pruned nodes are
    /// the entailed (larger) side.
    fn entails(&self, a: &Self::N, b: &Self::N, pruning: Pruning) -> bool;
    /// Concrete delays for an accepting path of labelled steps.
    fn witness(&self, steps: &[(usize, Self::Label)], nodes: &[Self::N]) -> TimedWord;
}

pub struct RunOutcome<S: ZgSystem> {
    pub verdict: Verdict,
    pub graph: Graph<S::N, S::Label>,
}

/// Deterministic breadth- or depth-first exploration with entailment
/// pruning. With more than one job, successor computation is parallelized
/// per frontier batch; insertion order, and so the verdict, stays that of
/// the sequential run.
pub fn run_system<S: ZgSystem + Sync>(sys: &S, cfg: &ExploreConfig) -> RunOutcome<S> {
    cfg.validate();
    let mut nodes: Vec<S::N> = Vec::new();
    let mut edges: Vec<GraphEdge<S::Label>> = Vec::new();
    let mut index: HashMap<S::N, usize> = HashMap::new();
    let mut parent: Vec<Option<(usize, S::Label)>> = Vec::new();
    let mut pruned = 0usize;

    let init = sys.initial();
    nodes.push(init.clone());
    index.insert(init.clone(), 0);
    parent.push(None);

    let trace_path = |parent: &[Option<(usize, S::Label)>], mut at: usize| {
        let mut steps: Vec<(usize, S::Label)> = Vec::new();
        let mut path = vec![at];
        while let Some((p, l)) = &parent[at] {
            steps.push((*p, l.clone()));
            path.push(*p);
            at = *p;
        }
        steps.reverse();
        path.reverse();
        (steps, path)
    };

    let mut found: Option<(TimedWord, Vec<usize>)> = None;
    if sys.accepting(&init) {
        let witness = sys.witness(&[], &nodes);
        if cfg.stop_on_accepting {
            return RunOutcome {
                verdict: Verdict::NonEmpty {
                    witness,
                    path: vec![0],
                },
                graph: Graph {
                    nodes,
                    edges,
                    pruned,
                },
            };
        }
        found = Some((witness, vec![0]));
    }

    let mut queue: VecDeque<usize> = VecDeque::new();
    queue.push_back(0);
    while !queue.is_empty() {
        // batch: the whole frontier for BFS, a single node for DFS
        let batch: Vec<usize> = match cfg.order {
            SearchOrder::BreadthFirst => queue.drain(..).collect(),
            SearchOrder::DepthFirst => vec![queue.pop_back().unwrap()],
        };
        let computed: Vec<(usize, Vec<(S::Label, S::N)>)> = if cfg.jobs > 1 {
            batch
                .par_iter()
                .map(|&i| (i, sys.successors(&nodes[i])))
                .collect()
        } else {
            batch
                .iter()
                .map(|&i| (i, sys.successors(&nodes[i])))
                .collect()
        };
        for (from, succs) in computed {
            for (label, n) in succs {
                if let Some(&j) = index.get(&n) {
                    edges.push(GraphEdge {
                        from,
                        label,
                        to: j,
                    });
                    continue;
                }
                if cfg.pruning != Pruning::None
                    && nodes.iter().any(|r| sys.entails(r, &n, cfg.pruning))
                {
                    pruned += 1;
                    continue;
                }
                if let Some(budget) = cfg.max_nodes {
                    if nodes.len() >= budget {
                        return RunOutcome {
                            verdict: Verdict::Inconclusive(format!(
                                "node budget of {budget} exhausted"
                            )),
                            graph: Graph {
                                nodes,
                                edges,
                                pruned,
                            },
                        };
                    }
                }
                let j = nodes.len();
                nodes.push(n.clone());
                index.insert(n.clone(), j);
                parent.push(Some((from, label.clone())));
                edges.push(GraphEdge {
                    from,
                    label,
                    to: j,
                });
                if sys.accepting(&n) {
                    let (steps, path) = trace_path(&parent, j);
                    let witness = sys.witness(&steps, &nodes);
                    if cfg.stop_on_accepting {
                        return RunOutcome {
                            verdict: Verdict::NonEmpty { witness, path },
                            graph: Graph {
                                nodes,
                                edges,
                                pruned,
                            },
                        };
                    }
                    if found.is_none() {
                        found = Some((witness, path));
                    }
                }
                queue.push_back(j);
            }
        }
    }
    let verdict = match found {
        Some((witness, path)) => Verdict::NonEmpty { witness, path },
        None => Verdict::Empty,
    };
    RunOutcome {
        verdict,
        graph: Graph {
            nodes,
            edges,
            pruned,
        },
    }
}

/// The 1-ATA zone graph as a system for the generic engine.
pub struct AtaSystem<'a> {
    pub ata: &'a OneAta,
    pub max_const: u32,
}

/// Edge label: letter plus the index of the chosen target.
pub type AtaLabel = (LetterId, usize);

impl ZgSystem for AtaSystem<'_> {
    type N = Node;
    type Label = AtaLabel;

    fn initial(&self) -> Node {
        Node::initial(self.ata)
    }

    fn successors(&self, n: &Node) -> Vec<(AtaLabel, Node)> {
        let mut out = Vec::new();
        for a in self.ata.letters() {
            for (ti, t) in enumerate_targets(n, a, self.ata).iter().enumerate() {
                if let Some(next) = successor(n, a, t, self.ata) {
                    out.push(((a, ti), next));
                }
            }
        }
        out
    }

    fn accepting(&self, n: &Node) -> bool {
        n.is_accepting(self.ata)
    }

    fn entails(&self, a: &Node, b: &Node, pruning: Pruning) -> bool {
        match pruning {
            Pruning::Full => node_entails(a, b, self.max_const),
            Pruning::Bounded => node_entails_bounded(a, b, self.max_const),
            Pruning::None => false,
        }
    }

    fn witness(&self, steps: &[(usize, AtaLabel)], nodes: &[Node]) -> TimedWord {
        let path: Vec<(Node, LetterId, Target)> = steps
            .iter()
            .map(|(from, (letter, ti))| {
                let n = nodes[*from].clone();
                let t = enumerate_targets(&n, *letter, self.ata)
                    .into_iter()
                    .nth(*ti)
                    .expect("stored target index must be valid");
                (n, *letter, t)
            })
            .collect();
        extract_witness(self.ata, &path)
    }
}

/// Result of exploring a 1-ATA.
pub struct ExploreOutcome {
    pub verdict: Verdict,
    pub graph: Graph<Node, AtaLabel>,
}

/// Decides emptiness of `ata` by exploring its zone graph. Every `NonEmpty`
/// verdict carries a witness word that has been replayed on the explicit
/// semantics.
pub fn explore(ata: &OneAta, cfg: &ExploreConfig) -> ExploreOutcome {
    let sys = AtaSystem {
        ata,
        max_const: ata.max_constant(),
    };
    let out = run_system(&sys, cfg);
    if let Verdict::NonEmpty { witness, .. } = &out.verdict {
        assert!(
            accepts(ata, witness).unwrap_or(false),
            "witness failed replay on the explicit semantics: {witness}"
        );
    }
    ExploreOutcome {
        verdict: out.verdict,
        graph: out.graph,
    }
}

/// MTL satisfiability through translation. One-sided formulas default to the
/// bounded (quadratic) entailment check; everything else uses the full one.
pub fn mtl_sat(
    f: &Mtl,
    extra_letters: &[String],
    cfg: Option<ExploreConfig>,
) -> (ExploreOutcome, TranslationResult) {
    let t = translate(f, extra_letters);
    let cfg = cfg.unwrap_or_else(|| {
        if f.is_one_sided() {
            ExploreConfig::new(Pruning::Bounded, None)
        } else {
            ExploreConfig::new(Pruning::Full, None)
        }
    });
    let out = explore(&t.ata, &cfg);
    (out, t)
}

/// Backward propagation through one symbolic step: given a valuation of the
/// successor's variables, recovers a pre-elapse valuation of the source's
/// variables and a delay consistent with the source zone.
pub fn propagate_step<V: Ord + Clone + Debug>(
    prev_zone: Option<&Dbm<V>>,
    guarded: Option<&Dbm<V>>,
    copies: &[(V, V)],
    next_vals: &[(V, Rat)],
) -> (Vec<(V, Rat)>, Rat) {
    let Some(guarded) = guarded else {
        return (Vec::new(), Rat::zero());
    };
    let prev_zone = prev_zone.expect("a guarded zone implies source variables");
    let pins: Vec<(V, Rat)> = copies
        .iter()
        .filter_map(|(new, old)| {
            next_vals
                .iter()
                .find(|(v, _)| v == new)
                .map(|(_, r)| (old.clone(), *r))
        })
        .collect();
    let elapsed_vals = guarded
        .sample_with_pins(&pins)
        .expect("successor valuations must project back through the guards");
    // Feasible delays d with (elapsed - d) inside the source zone. Uniform
    // shifts keep differences, so only the per-variable bounds matter.
    let mut lo = Rat::zero();
    let mut lo_strict = false;
    let mut hi: Option<(Rat, bool)> = None;
    for (k, v) in guarded.vars().iter().enumerate() {
        let xv = elapsed_vals[k];
        let i = prev_zone.idx(v).expect("source variable");
        let ub = prev_zone.get(i, 0);
        if !ub.is_inf() {
            let cand = xv - rat_int(ub.value());
            if cand > lo || (cand == lo && ub.is_strict() && !lo_strict) {
                lo = cand;
                lo_strict = ub.is_strict();
            }
        }
        let lb = prev_zone.get(0, i);
        if !lb.is_inf() {
            let cand = xv + rat_int(lb.value());
            let tighter = match hi {
                None => true,
                Some((h, hs)) => cand < h || (cand == h && lb.is_strict() && !hs),
            };
            if tighter {
                hi = Some((cand, lb.is_strict()));
            }
        }
    }
    let d = if lo < Rat::zero() || (lo == Rat::zero() && !lo_strict) {
        Rat::zero()
    } else if !lo_strict {
        lo
    } else {
        match hi {
            Some((h, _)) => (lo + h) / rat_int(2),
            None => lo + rat_int(1),
        }
    };
    debug_assert!(d >= Rat::zero());
    let prev_vals: Vec<(V, Rat)> = guarded
        .vars()
        .iter()
        .cloned()
        .zip(elapsed_vals.iter().map(|x| *x - d))
        .collect();
    debug_assert!(prev_zone.admits_valuation(&prev_vals.iter().map(|(_, r)| *r).collect::<Vec<_>>()));
    (prev_vals, d)
}

/// Concrete delays for an accepting zone-graph path, by backward constraint
/// propagation through the stored step zones. The result always replays on
/// the explicit semantics.
pub fn extract_witness(ata: &OneAta, path: &[(Node, LetterId, Target)]) -> TimedWord {
    let mut traces = Vec::with_capacity(path.len());
    for (n, a, t) in path {
        let (next, trace) =
            successor_traced(n, *a, t, ata).expect("path steps must have successors");
        traces.push((n.clone(), *a, trace, next));
    }
    // final valuation
    let mut next_vals: Vec<(AtaVar, Rat)> = match traces.last() {
        None => Vec::new(),
        Some((_, _, _, last)) => match &last.zone {
            None => Vec::new(),
            Some(z) => z.vars().iter().copied().zip(z.sample()).collect(),
        },
    };
    let mut delays: Vec<Rat> = Vec::new();
    for (prev, _, trace, _) in traces.iter().rev() {
        let (prev_vals, d) = propagate_step(
            prev.zone.as_ref(),
            trace.guarded.as_ref(),
            &trace.copies,
            &next_vals,
        );
        delays.push(d);
        next_vals = prev_vals;
    }
    delays.reverse();
    TimedWord::new(
        delays
            .into_iter()
            .zip(path.iter())
            .map(|(d, (_, a, _))| (d, ata.letter_name(*a).to_string()))
            .collect(),
    )
}

/// DOT rendering of an explored zone graph; nodes are labelled with their
/// dump, edges with `letter / target-index`.
pub fn graph_dot(graph: &Graph<Node, AtaLabel>, ata: &OneAta) -> String {
    let mut out = String::from("digraph zones {\n  node [shape=box];\n");
    for (i, n) in graph.nodes.iter().enumerate() {
        let label = dump_node_of(n, ata).replace('\n', "\\l").replace('"', "'");
        let shape = if n.is_accepting(ata) {
            ", peripheries=2"
        } else {
            ""
        };
        out.push_str(&format!("  n{i} [label=\"{label}\"{shape}];\n"));
    }
    for e in &graph.edges {
        out.push_str(&format!(
            "  n{} -> n{} [label=\"{} / {}\"];\n",
            e.from,
            e.to,
            ata.letter_name(e.label.0),
            e.label.1
        ));
    }
    out.push_str("}\n");
    out
}
