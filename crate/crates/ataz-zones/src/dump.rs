//! The textual zone dump format, the golden-test contract for nodes:
//! one line per canonical constraint `y - x REL k` with `REL` in `{<, <=}`,
//! variables printed `loc.index` and the reference variable printed `0`,
//! lines sorted lexicographically, then `inactive: {loc.0, …}`. The node
//! denoting only the empty configuration prints as `EMPTYNODE`.

use crate::bound::Bound;
use crate::dbm::Dbm;
use crate::node::{AtaVar, Node};
use ataz_core::parse::{SyntaxError, Tok, Tokens};
use ataz_core::{LocId, OneAta};
use std::collections::BTreeSet;

/// A standalone location namespace for nodes read from dump files, where no
/// automaton provides the names.
#[derive(Debug, Clone, Default)]
pub struct LocSpace {
    names: Vec<String>,
}

impl LocSpace {
    pub fn new() -> Self {
        LocSpace::default()
    }

    pub fn intern(&mut self, name: &str) -> LocId {
        if let Some(i) = self.names.iter().position(|n| n == name) {
            return LocId::new(i as u32);
        }
        self.names.push(name.to_string());
        LocId::new((self.names.len() - 1) as u32)
    }

    pub fn name(&self, q: LocId) -> &str {
        &self.names[q.index()]
    }
}

fn var_name(v: &AtaVar, name_of: &dyn Fn(LocId) -> String) -> String {
    format!("{}.{}", name_of(v.loc), v.index)
}

/// Renders a node in the dump format.
pub fn dump_node(node: &Node, name_of: &dyn Fn(LocId) -> String) -> String {
    if node.zone.is_none() && node.inactive.is_empty() {
        return "EMPTYNODE\n".to_string();
    }
    let mut lines: Vec<String> = Vec::new();
    if let Some(z) = &node.zone {
        let label = |i: usize| -> String {
            match z.var_at(i) {
                None => "0".to_string(),
                Some(v) => var_name(v, name_of),
            }
        };
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
    }
    lines.sort();
    let inact: Vec<String> = node
        .inactive
        .iter()
        .map(|q| format!("{}.0", name_of(*q)))
        .collect();
    lines.push(format!("inactive: {{{}}}", inact.join(", ")));
    lines.join("\n") + "\n"
}

/// Renders a node using an automaton's location names.
pub fn dump_node_of(node: &Node, ata: &OneAta) -> String {
    dump_node(node, &|q| ata.loc_name(q).to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum DumpVar {
    Zero,
    Var(AtaVar),
}

fn parse_dump_var(t: &mut Tokens, space: &mut LocSpace) -> Result<DumpVar, SyntaxError> {
    match t.peek() {
        Some(Tok::Num(_)) => {
            let (l, c) = t.here();
            let n = t.natural()?;
            if n != 0 {
                return Err(SyntaxError::at(l, c, "only `0` can stand alone"));
            }
            Ok(DumpVar::Zero)
        }
        Some(Tok::Ident(_)) => {
            let name = t.ident()?;
            t.expect_punct('.')?;
            let idx = t.natural()?;
            Ok(DumpVar::Var(AtaVar::new(space.intern(&name), idx)))
        }
        _ => Err(t.error("expected a variable or `0`")),
    }
}

/// Parses a node dump. All locations are interned into `space`, so two files
/// parsed with the same space share location identities.
pub fn parse_node_dump(text: &str, space: &mut LocSpace) -> Result<Node, SyntaxError> {
    let mut constraints: Vec<(DumpVar, DumpVar, Bound)> = Vec::new();
    let mut inactive: BTreeSet<LocId> = BTreeSet::new();
    let mut saw_emptynode = false;
    let mut saw_inactive = false;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if line == "EMPTYNODE" {
            saw_emptynode = true;
            continue;
        }
        let mut t = Tokens::lex(line).map_err(|e| reline(e, lineno + 1))?;
        if t.accept_ident("inactive") {
            t.expect_punct(':').map_err(|e| reline(e, lineno + 1))?;
            t.expect_punct('{').map_err(|e| reline(e, lineno + 1))?;
            saw_inactive = true;
            loop {
                if t.accept_punct('}') {
                    break;
                }
                let name = t.ident().map_err(|e| reline(e, lineno + 1))?;
                t.expect_punct('.').map_err(|e| reline(e, lineno + 1))?;
                let idx = t.natural().map_err(|e| reline(e, lineno + 1))?;
                if idx != 0 {
                    return Err(SyntaxError::at(lineno + 1, 1, "inactive variables use index 0"));
                }
                inactive.insert(space.intern(&name));
                t.accept_punct(',');
            }
            t.expect_end().map_err(|e| reline(e, lineno + 1))?;
            continue;
        }
        let lhs = parse_dump_var(&mut t, space).map_err(|e| reline(e, lineno + 1))?;
        t.expect_punct('-').map_err(|e| reline(e, lineno + 1))?;
        let rhs = parse_dump_var(&mut t, space).map_err(|e| reline(e, lineno + 1))?;
        t.expect_punct('<').map_err(|e| reline(e, lineno + 1))?;
        let strict = !t.accept_punct('=');
        let k = t.integer().map_err(|e| reline(e, lineno + 1))?;
        t.expect_end().map_err(|e| reline(e, lineno + 1))?;
        constraints.push((lhs, rhs, Bound::new(k, strict)));
    }
    if saw_emptynode {
        if !constraints.is_empty() || saw_inactive {
            return Err(SyntaxError::Validation(
                "EMPTYNODE cannot be combined with other lines".into(),
            ));
        }
        return Ok(Node::empty_configuration());
    }
    let mut vars: BTreeSet<AtaVar> = BTreeSet::new();
    for (a, b, _) in &constraints {
        for v in [a, b] {
            if let DumpVar::Var(v) = v {
                if v.index == 0 {
                    return Err(SyntaxError::Validation(format!(
                        "zone variables use indices >= 1, got index 0 on a constraint",
                    )));
                }
                vars.insert(*v);
            }
        }
    }
    let zone = if vars.is_empty() {
        None
    } else {
        let mut z = Dbm::universe(vars.into_iter().collect());
        for (a, b, bound) in constraints {
            let ia = match a {
                DumpVar::Zero => 0,
                DumpVar::Var(v) => z.idx(&v).unwrap(),
            };
            let ib = match b {
                DumpVar::Zero => 0,
                DumpVar::Var(v) => z.idx(&v).unwrap(),
            };
            if !z.constrain(ia, ib, bound) {
                return Err(SyntaxError::Validation("the zone is empty".into()));
            }
        }
        Some(z)
    };
    Ok(Node { zone, inactive })
}

fn reline(e: SyntaxError, line: usize) -> SyntaxError {
    match e {
        SyntaxError::At { col, msg, .. } => SyntaxError::At { line, col, msg },
        other => other,
    }
}
