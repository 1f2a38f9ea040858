//! Model checking a timed automaton against a 1-ATA specification through a
//! compound zone graph: one control location of the automaton, one zone over
//! its clocks together with the specification's variables, and the inactive
//! set. Automaton clocks are never renamed; resets pin them back to zero in
//! place.

use crate::bound::Bound;
use crate::dbm::Dbm;
use crate::entail::zone_entails_with_pins;
use crate::explore::{propagate_step, run_system, ExploreConfig, Graph, Pruning, Verdict, ZgSystem};
use crate::node::AtaVar;
use ataz_core::config::accepts;
use ataz_core::interval::Interval;
use ataz_core::parse::{SyntaxError, Tokens};
use ataz_core::rat::Rat;
use ataz_core::{LetterId, LocId, OneAta, TimedWord};
use num_traits::Zero;
use std::collections::BTreeSet;
use thiserror::Error;

/// A classical timed automaton with per-clock interval guards.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TimedAutomaton {
    pub name: String,
    locations: Vec<String>,
    clocks: Vec<String>,
    alphabet: Vec<String>,
    initial: usize,
    accepting: BTreeSet<usize>,
    edges: Vec<TaEdge>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaEdge {
    pub src: usize,
    pub letter: usize,
    pub guard: Vec<(usize, Interval)>,
    pub resets: BTreeSet<usize>,
    pub dst: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProductError {
    #[error("the automaton and the specification must share their alphabet: {0}")]
    AlphabetMismatch(String),
}

impl TimedAutomaton {
    pub fn locations(&self) -> &[String] {
        &self.locations
    }

    pub fn clocks(&self) -> &[String] {
        &self.clocks
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_accepting(&self, loc: usize) -> bool {
        self.accepting.contains(&loc)
    }

    pub fn edges(&self) -> &[TaEdge] {
        &self.edges
    }

    /// Largest guard constant.
    pub fn max_constant(&self) -> u32 {
        self.edges
            .iter()
            .flat_map(|e| e.guard.iter())
            .map(|(_, g)| g.max_finite_constant())
            .max()
            .unwrap_or(0)
    }

    /// Explicit-semantics acceptance of a timed word, by edge enumeration.
    pub fn accepts_word(&self, w: &TimedWord) -> bool {
        fn go(
            ta: &TimedAutomaton,
            loc: usize,
            vals: &[Rat],
            w: &TimedWord,
            i: usize,
        ) -> bool {
            if i == w.len() {
                return ta.is_accepting(loc);
            }
            let (d, ref letter) = w.steps[i];
            let Some(letter_idx) = ta.alphabet.iter().position(|a| a == letter) else {
                return false;
            };
            let elapsed: Vec<Rat> = vals.iter().map(|v| *v + d).collect();
            for e in &ta.edges {
                if e.src != loc || e.letter != letter_idx {
                    continue;
                }
                if !e
                    .guard
                    .iter()
                    .all(|(c, g)| g.contains(elapsed[*c]))
                {
                    continue;
                }
                let mut next = elapsed.clone();
                for c in &e.resets {
                    next[*c] = Rat::zero();
                }
                if go(ta, e.dst, &next, w, i + 1) {
                    return true;
                }
            }
            false
        }
        go(
            self,
            self.initial,
            &vec![Rat::zero(); self.clocks.len()],
            w,
            0,
        )
    }
}

/// A variable of the compound zone: an automaton clock or a specification
/// variable. Clocks order first so dumps stay readable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PVar {
    Clock(u32),
    Ata(AtaVar),
}

/// A node of the compound zone graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CompoundNode {
    pub loc: usize,
    pub zone: Dbm<PVar>,
    pub inactive: BTreeSet<LocId>,
}

impl CompoundNode {
    pub fn initial(ta: &TimedAutomaton, ata: &OneAta) -> CompoundNode {
        let mut vars: Vec<PVar> = (0..ta.clocks.len() as u32).map(PVar::Clock).collect();
        vars.push(PVar::Ata(AtaVar::new(ata.initial(), 1)));
        let mut zone = Dbm::universe(vars.clone());
        for v in &vars {
            let i = zone.idx(v).unwrap();
            assert!(zone.constrain(i, 0, Bound::weak(0)));
        }
        CompoundNode {
            loc: ta.initial(),
            zone,
            inactive: BTreeSet::new(),
        }
    }

    pub fn ata_vars(&self) -> Vec<AtaVar> {
        self.zone
            .vars()
            .iter()
            .filter_map(|v| match v {
                PVar::Ata(a) => Some(*a),
                PVar::Clock(_) => None,
            })
            .collect()
    }

    pub fn is_accepting(&self, ta: &TimedAutomaton, ata: &OneAta) -> bool {
        ta.is_accepting(self.loc)
            && self
                .ata_vars()
                .iter()
                .map(|v| v.loc)
                .chain(self.inactive.iter().copied())
                .all(|q| ata.is_accepting_loc(q))
    }
}

/// One clause choice per specification variable, actives first then inactive
/// markers, exactly as in the plain zone graph.
pub fn compound_targets(
    n: &CompoundNode,
    a: LetterId,
    ata: &OneAta,
) -> Vec<Vec<(AtaVar, usize)>> {
    let mut vars: Vec<AtaVar> = n.ata_vars();
    vars.extend(n.inactive.iter().map(|q| AtaVar::new(*q, 0)));
    let mut per_var: Vec<Vec<usize>> = Vec::with_capacity(vars.len());
    for v in &vars {
        let Some(clauses) = ata.clauses(v.loc, a) else {
            return Vec::new();
        };
        let choices: Vec<usize> = clauses
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_false)
            .map(|(i, _)| i)
            .collect();
        if choices.is_empty() {
            return Vec::new();
        }
        per_var.push(choices);
    }
    let mut out = Vec::new();
    let mut pick = vec![0usize; vars.len()];
    loop {
        out.push(
            vars.iter()
                .enumerate()
                .map(|(i, v)| (*v, per_var[i][pick[i]]))
                .collect(),
        );
        let mut i = 0;
        loop {
            if i == vars.len() {
                return out;
            }
            pick[i] += 1;
            if pick[i] < per_var[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
    }
}

pub struct CompoundTrace {
    pub guarded: Dbm<PVar>,
    pub copies: Vec<(PVar, PVar)>,
}

/// Shared time elapse, edge guard plus specification guards, then the reset
/// phase: specification variables move to freshly allocated names while
/// clocks stay in place (reset clocks are pinned back to zero).
pub fn product_successor(
    n: &CompoundNode,
    a: LetterId,
    edge: &TaEdge,
    target: &[(AtaVar, usize)],
    ta: &TimedAutomaton,
    ata: &OneAta,
) -> Option<(CompoundNode, CompoundTrace)> {
    debug_assert_eq!(edge.src, n.loc);
    let mut z = n.zone.clone();
    z.up();
    // edge guard on clocks
    for (c, g) in &edge.guard {
        let v = PVar::Clock(*c as u32);
        if !z.constrain_lower(&v, g.lo() as i64, !g.lo_closed()) {
            return None;
        }
        if let Some(hi) = g.hi() {
            if !z.constrain_upper(&v, Bound::new(hi as i64, !g.hi_closed())) {
                return None;
            }
        }
    }
    // specification guards on active variables
    let resolved: Vec<(AtaVar, &ataz_core::formula::Clause)> = target
        .iter()
        .map(|(v, k)| (*v, &ata.clauses(v.loc, a).expect("defined delta")[*k]))
        .collect();
    for (v, clause) in &resolved {
        if v.index == 0 {
            continue;
        }
        if clause.guard_unsat {
            return None;
        }
        if let Some(g) = &clause.guard {
            let pv = PVar::Ata(*v);
            if !z.constrain_lower(&pv, g.lo() as i64, !g.lo_closed()) {
                return None;
            }
            if let Some(hi) = g.hi() {
                if !z.constrain_upper(&pv, Bound::new(hi as i64, !g.hi_closed())) {
                    return None;
                }
            }
        }
    }
    // reset phase
    let reset_locs: BTreeSet<LocId> = resolved
        .iter()
        .flat_map(|(_, c)| c.reset.iter().copied())
        .collect();
    let mut used: std::collections::BTreeMap<LocId, BTreeSet<u32>> = Default::default();
    for q in &reset_locs {
        used.entry(*q).or_default().insert(1);
    }
    let mut new_vars: Vec<(PVar, Option<PVar>)> = Vec::new();
    let mut copies: Vec<(PVar, PVar)> = Vec::new();
    for c in 0..ta.clocks.len() {
        let v = PVar::Clock(c as u32);
        if edge.resets.contains(&c) {
            new_vars.push((v, None));
        } else {
            new_vars.push((v, Some(v)));
            copies.push((v, v));
        }
    }
    let mut inactive: BTreeSet<LocId> = BTreeSet::new();
    for (v, clause) in &resolved {
        for q in &clause.now {
            if v.index == 0 {
                inactive.insert(*q);
            } else {
                let slots = used.entry(*q).or_default();
                let mut idx = 1;
                while slots.contains(&idx) {
                    idx += 1;
                }
                slots.insert(idx);
                let nv = PVar::Ata(AtaVar::new(*q, idx));
                new_vars.push((nv, Some(PVar::Ata(*v))));
                copies.push((nv, PVar::Ata(*v)));
            }
        }
        for q in &clause.deactivate {
            inactive.insert(*q);
        }
    }
    for q in &reset_locs {
        new_vars.push((PVar::Ata(AtaVar::new(*q, 1)), None));
    }
    let zone = z.rebuild(&new_vars);
    Some((
        CompoundNode {
            loc: edge.dst,
            zone,
            inactive,
        },
        CompoundTrace { guarded: z, copies },
    ))
}

/// Extended entailment: equal control locations, nested inactive sets, and
/// zone entailment through injections that are the identity on clocks.
pub fn compound_entails(n1: &CompoundNode, n2: &CompoundNode, m: u32) -> bool {
    if n1.loc != n2.loc || !n1.inactive.is_subset(&n2.inactive) {
        return false;
    }
    let class = |v: &PVar| -> u64 {
        match v {
            PVar::Clock(c) => (1u64 << 32) + *c as u64,
            PVar::Ata(a) => a.loc.index() as u64,
        }
    };
    let pinned = |v: &PVar| matches!(v, PVar::Clock(_));
    zone_entails_with_pins(&n1.zone, &n2.zone, &class, &pinned, m)
}

/// Edge label in the compound graph: letter, automaton edge index, target
/// index.
pub type ProductLabel = (LetterId, usize, usize);

pub struct ProductSystem<'a> {
    pub ta: &'a TimedAutomaton,
    pub ata: &'a OneAta,
    pub max_const: u32,
}

impl ZgSystem for ProductSystem<'_> {
    type N = CompoundNode;
    type Label = ProductLabel;

    fn initial(&self) -> CompoundNode {
        CompoundNode::initial(self.ta, self.ata)
    }

    fn successors(&self, n: &CompoundNode) -> Vec<(ProductLabel, CompoundNode)> {
        let mut out = Vec::new();
        for a in self.ata.letters() {
            let letter_idx = self
                .ta
                .alphabet
                .iter()
                .position(|x| x == self.ata.letter_name(a))
                .expect("alphabets checked at model_check");
            let targets = compound_targets(n, a, self.ata);
            for (ei, edge) in self.ta.edges.iter().enumerate() {
                if edge.src != n.loc || edge.letter != letter_idx {
                    continue;
                }
                for (ti, t) in targets.iter().enumerate() {
                    if let Some((next, _)) =
                        product_successor(n, a, edge, t, self.ta, self.ata)
                    {
                        out.push(((a, ei, ti), next));
                    }
                }
            }
        }
        out
    }

    fn accepting(&self, n: &CompoundNode) -> bool {
        n.is_accepting(self.ta, self.ata)
    }

    fn entails(&self, a: &CompoundNode, b: &CompoundNode, pruning: Pruning) -> bool {
        match pruning {
            Pruning::Full | Pruning::Bounded => compound_entails(a, b, self.max_const),
            Pruning::None => false,
        }
    }

    fn witness(&self, steps: &[(usize, ProductLabel)], nodes: &[CompoundNode]) -> TimedWord {
        let mut traces = Vec::new();
        for (from, (a, ei, ti)) in steps {
            let n = &nodes[*from];
            let t = compound_targets(n, *a, self.ata)
                .into_iter()
                .nth(*ti)
                .expect("stored target");
            let (next, trace) =
                product_successor(n, *a, &self.ta.edges[*ei], &t, self.ta, self.ata)
                    .expect("stored path step");
            traces.push((n.clone(), *a, trace, next));
        }
        let mut next_vals: Vec<(PVar, Rat)> = match traces.last() {
            None => Vec::new(),
            Some((_, _, _, last)) => last
                .zone
                .vars()
                .iter()
                .copied()
                .zip(last.zone.sample())
                .collect(),
        };
        let mut delays: Vec<Rat> = Vec::new();
        for (prev, _, trace, _) in traces.iter().rev() {
            let (prev_vals, d) = propagate_step(
                Some(&prev.zone),
                Some(&trace.guarded),
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
                .zip(steps.iter())
                .map(|(d, (_, (a, _, _)))| (d, self.ata.letter_name(*a).to_string()))
                .collect(),
        )
    }
}

pub struct ProductOutcome {
    pub verdict: Verdict,
    pub graph: Graph<CompoundNode, ProductLabel>,
}

/// Explores the compound zone graph. `NonEmpty` means some timed word is
/// accepted jointly by the automaton and the specification; witnesses are
/// replayed on both explicit semantics.
pub fn model_check(
    ta: &TimedAutomaton,
    ata: &OneAta,
    cfg: &ExploreConfig,
) -> Result<ProductOutcome, ProductError> {
    let ta_letters: BTreeSet<&String> = ta.alphabet.iter().collect();
    let ata_letters: BTreeSet<String> =
        ata.letters().map(|a| ata.letter_name(a).to_string()).collect();
    let ata_letters_ref: BTreeSet<&String> = ata_letters.iter().collect();
    if ta_letters != ata_letters_ref {
        return Err(ProductError::AlphabetMismatch(format!(
            "{:?} vs {:?}",
            ta.alphabet, ata_letters
        )));
    }
    let sys = ProductSystem {
        ta,
        ata,
        max_const: ta.max_constant().max(ata.max_constant()),
    };
    let out = run_system(&sys, cfg);
    if let Verdict::NonEmpty { witness, .. } = &out.verdict {
        assert!(
            ta.accepts_word(witness) && accepts(ata, witness).unwrap_or(false),
            "product witness failed replay: {witness}"
        );
    }
    Ok(ProductOutcome {
        verdict: out.verdict,
        graph: out.graph,
    })
}

/// Dump-format rendering of a compound node; clocks print under their own
/// names, specification variables as `loc.index`.
pub fn compound_dump(n: &CompoundNode, ta: &TimedAutomaton, ata: &OneAta) -> String {
    let name = |v: &PVar| -> String {
        match v {
            PVar::Clock(c) => ta.clocks[*c as usize].clone(),
            PVar::Ata(a) => format!("{}.{}", ata.loc_name(a.loc), a.index),
        }
    };
    let z = &n.zone;
    let label = |i: usize| -> String {
        match z.var_at(i) {
            None => "0".to_string(),
            Some(v) => name(v),
        }
    };
    let mut lines: Vec<String> = Vec::new();
    for i in 0..z.dim() {
        for j in 0..z.dim() {
            if i == j {
                continue;
            }
            let b = z.get(i, j);
            if b.is_inf() {
                continue;
            }
            let rel = if b.is_strict() { "<" } else { "<=" };
            lines.push(format!("{} - {} {} {}", label(i), label(j), rel, b.value()));
        }
    }
    lines.sort();
    let inact: Vec<String> = n
        .inactive
        .iter()
        .map(|q| format!("{}.0", ata.loc_name(*q)))
        .collect();
    format!(
        "loc: {}\n{}\ninactive: {{{}}}\n",
        ta.locations[n.loc],
        lines.join("\n"),
        inact.join(", ")
    )
}

/// DOT rendering of an explored compound zone graph.
pub fn product_graph_dot(
    graph: &Graph<CompoundNode, ProductLabel>,
    ta: &TimedAutomaton,
    ata: &OneAta,
) -> String {
    let mut out = String::from("digraph product {\n  node [shape=box];\n");
    for (i, n) in graph.nodes.iter().enumerate() {
        let label = compound_dump(n, ta, ata)
            .replace('\n', "\\l")
            .replace('"', "'");
        let shape = if n.is_accepting(ta, ata) {
            ", peripheries=2"
        } else {
            ""
        };
        out.push_str(&format!("  n{i} [label=\"{label}\"{shape}];\n"));
    }
    for e in &graph.edges {
        out.push_str(&format!(
            "  n{} -> n{} [label=\"{} / {} / {}\"];\n",
            e.from,
            e.to,
            ata.letter_name(e.label.0),
            e.label.1,
            e.label.2
        ));
    }
    out.push_str("}\n");
    out
}

/// Parses the timed-automaton format:
///
/// ```text
/// ta NAME;
/// clocks y1 y2;
/// alphabet a b;
/// init p0;
/// accepting p1;
/// p0 -a-> p1 [y1 in [1,2], y2 in [0,3)] {reset y1};
/// ```
pub fn parse_ta(input: &str) -> Result<TimedAutomaton, SyntaxError> {
    let mut t = Tokens::lex(input)?;
    t.expect_ident("ta")?;
    let name = t.name()?;
    t.expect_punct(';')?;
    t.expect_ident("clocks")?;
    let mut clocks = Vec::new();
    while !t.accept_punct(';') {
        clocks.push(t.name()?);
    }
    t.expect_ident("alphabet")?;
    let mut alphabet: Vec<String> = Vec::new();
    while !t.accept_punct(';') {
        alphabet.push(t.name()?);
    }
    if alphabet.is_empty() {
        return Err(SyntaxError::Validation("alphabet must not be empty".into()));
    }
    t.expect_ident("init")?;
    let init_name = t.name()?;
    t.expect_punct(';')?;
    t.expect_ident("accepting")?;
    let mut accepting_names = Vec::new();
    while !t.accept_punct(';') {
        accepting_names.push(t.name()?);
    }
    let mut locations: Vec<String> = vec![init_name.clone()];
    let intern = |locations: &mut Vec<String>, n: &str| -> usize {
        if let Some(i) = locations.iter().position(|l| l == n) {
            i
        } else {
            locations.push(n.to_string());
            locations.len() - 1
        }
    };
    for a in &accepting_names {
        intern(&mut locations, a);
    }
    let mut edges = Vec::new();
    while !t.at_end() {
        let src = t.name()?;
        let src = intern(&mut locations, &src);
        t.expect_punct('-')?;
        let letter_name = t.name()?;
        let (ll, lc) = t.here();
        let letter = alphabet
            .iter()
            .position(|a| *a == letter_name)
            .ok_or_else(|| SyntaxError::at(ll, lc, format!("unknown letter `{letter_name}`")))?;
        t.expect_punct('-')?;
        t.expect_punct('>')?;
        let dst = t.name()?;
        let dst = intern(&mut locations, &dst);
        let mut guard = Vec::new();
        if t.accept_punct('[') {
            loop {
                let (cl, cc) = t.here();
                let clock_name = t.name()?;
                let clock = clocks
                    .iter()
                    .position(|c| *c == clock_name)
                    .ok_or_else(|| {
                        SyntaxError::at(cl, cc, format!("unknown clock `{clock_name}`"))
                    })?;
                t.expect_ident("in")?;
                let iv = t.interval()?;
                guard.push((clock, iv));
                if t.accept_punct(']') {
                    break;
                }
                t.expect_punct(',')?;
            }
        }
        let mut resets = BTreeSet::new();
        if t.accept_punct('{') {
            t.expect_ident("reset")?;
            loop {
                if t.accept_punct('}') {
                    break;
                }
                let (cl, cc) = t.here();
                let clock_name = t.name()?;
                let clock = clocks
                    .iter()
                    .position(|c| *c == clock_name)
                    .ok_or_else(|| {
                        SyntaxError::at(cl, cc, format!("unknown clock `{clock_name}`"))
                    })?;
                resets.insert(clock);
            }
        }
        t.expect_punct(';')?;
        edges.push(TaEdge {
            src,
            letter,
            guard,
            resets,
            dst,
        });
    }
    let initial = 0;
    let accepting = accepting_names
        .iter()
        .map(|a| locations.iter().position(|l| l == a).unwrap())
        .collect();
    Ok(TimedAutomaton {
        name,
        locations,
        clocks,
        alphabet,
        initial,
        accepting,
        edges,
    })
}

/// Canonical text for a timed automaton; parses back to an equal value.
pub fn print_ta(ta: &TimedAutomaton) -> String {
    let mut out = format!("ta {};\n", ta.name);
    out.push_str("clocks");
    for c in &ta.clocks {
        out.push_str(&format!(" {c}"));
    }
    out.push_str(";\nalphabet");
    for a in &ta.alphabet {
        out.push_str(&format!(" {a}"));
    }
    out.push_str(&format!(";\ninit {};\naccepting", ta.locations[ta.initial]));
    for l in &ta.accepting {
        out.push_str(&format!(" {}", ta.locations[*l]));
    }
    out.push_str(";\n");
    for e in &ta.edges {
        out.push_str(&format!(
            "{} -{}-> {}",
            ta.locations[e.src], ta.alphabet[e.letter], ta.locations[e.dst]
        ));
        if !e.guard.is_empty() {
            let parts: Vec<String> = e
                .guard
                .iter()
                .map(|(c, g)| format!("{} in {}", ta.clocks[*c], g))
                .collect();
            out.push_str(&format!(" [{}]", parts.join(", ")));
        }
        if !e.resets.is_empty() {
            let parts: Vec<String> = e.resets.iter().map(|c| ta.clocks[*c].clone()).collect();
            out.push_str(&format!(" {{reset {}}}", parts.join(" ")));
        }
        out.push_str(";\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use ataz_core::parse::{parse_ata, parse_timed_word};

    const A1_SRC: &str = "\
ata A1;
alphabet a;
init q0;
accepting q0 q1;
q0 -a-> q0 & x.q1;
q1 -a-> ((1,inf) & q1) | ([0,1) & q1) | ([1,1] & q2);
q2 -a-> q2;
";

    const TRIVIAL_TA: &str = "\
ta Any;
clocks ;
alphabet a;
init p0;
accepting p0;
p0 -a-> p0;
";

    const SPACED_TA: &str = "\
ta Spaced;
clocks y;
alphabet a;
init p0;
accepting p2;
p0 -a-> p1 {reset y};
p1 -a-> p2 [y in [1,1]] {reset y};
p2 -a-> p2 [y in [1,1]] {reset y};
";

    #[test]
    fn ta_round_trip() {
        let ta = parse_ta(SPACED_TA).unwrap();
        assert_eq!(ta.clocks().len(), 1);
        assert_eq!(ta.edges().len(), 3);
        assert_eq!(ta.max_constant(), 1);
        let printed = print_ta(&ta);
        assert_eq!(parse_ta(&printed).unwrap(), ta);
    }

    #[test]
    fn explicit_word_acceptance() {
        let ta = parse_ta(SPACED_TA).unwrap();
        assert!(ta.accepts_word(&parse_timed_word("(0.5,a)(1,a)").unwrap()));
        assert!(!ta.accepts_word(&parse_timed_word("(0.5,a)(0.9,a)").unwrap()));
        assert!(!ta.accepts_word(&parse_timed_word("(0.5,a)").unwrap()));
    }

    #[test]
    fn trivial_product_matches_plain_exploration() {
        let ta = parse_ta(TRIVIAL_TA).unwrap();
        let ata = parse_ata(A1_SRC).unwrap();
        let out = model_check(&ta, &ata, &ExploreConfig::default()).unwrap();
        assert!(matches!(out.verdict, Verdict::NonEmpty { .. }));
    }

    #[test]
    fn empty_accepting_set_is_empty() {
        let ta = parse_ta(
            "\
ta None;
clocks ;
alphabet a;
init p0;
accepting ;
p0 -a-> p0;
",
        )
        .unwrap();
        let ata = parse_ata(A1_SRC).unwrap();
        let out = model_check(&ta, &ata, &ExploreConfig::default()).unwrap();
        assert!(matches!(out.verdict, Verdict::Empty));
    }

    #[test]
    fn conflicting_timing_is_empty() {
        // the automaton forces two a's exactly one apart, the specification
        // forbids it
        let ta = parse_ta(SPACED_TA).unwrap();
        let ata = parse_ata(A1_SRC).unwrap();
        let out = model_check(&ta, &ata, &ExploreConfig::default()).unwrap();
        assert!(matches!(out.verdict, Verdict::Empty));
    }

    #[test]
    fn alphabet_mismatch_rejected() {
        let ta = parse_ta(
            "\
ta T;
clocks ;
alphabet a b;
init p0;
accepting p0;
p0 -a-> p0;
",
        )
        .unwrap();
        let ata = parse_ata(A1_SRC).unwrap();
        assert!(model_check(&ta, &ata, &ExploreConfig::default()).is_err());
    }

    #[test]
    fn compound_entailment_is_reflexive_and_loc_sensitive() {
        let ta = parse_ta(SPACED_TA).unwrap();
        let ata = parse_ata(A1_SRC).unwrap();
        let n = CompoundNode::initial(&ta, &ata);
        assert!(compound_entails(&n, &n, 1));
        let mut other = n.clone();
        other.loc = 1;
        assert!(!compound_entails(&n, &other, 1));
    }

    #[test]
    fn unconstrained_clocks_defer_to_the_specification_part() {
        // same control location, a free clock on both sides, and the chained
        // specification zones: two variables entailed by three at constant 3
        let q = LocId::new(0);
        let var = |i: u32| PVar::Ata(AtaVar::new(q, i));
        let chain = |n: u32| {
            let mut vars: Vec<PVar> = vec![PVar::Clock(0)];
            vars.extend((1..=n).map(var));
            let mut z = Dbm::universe(vars);
            let bound = if n == 2 { 2 } else { 3 };
            for i in 1..=n {
                for j in (i + 1)..=n {
                    let (a, b) = (z.idx(&var(i)).unwrap(), z.idx(&var(j)).unwrap());
                    assert!(z.constrain(b, a, Bound::weak(0)));
                    assert!(z.constrain(a, b, Bound::weak(bound)));
                }
            }
            CompoundNode {
                loc: 0,
                zone: z,
                inactive: BTreeSet::new(),
            }
        };
        let n1 = chain(2);
        let n2 = chain(3);
        assert!(compound_entails(&n1, &n2, 3));
        assert!(!compound_entails(&n2, &n1, 3));
    }
}
