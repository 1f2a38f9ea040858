//! Non-entailment instances from monotone 3-SAT.
//!
//! For a monotone 3-CNF (clauses all-positive or all-negative, positives
//! first), builds a pair of zones over two locations `qx`, `qy` whose
//! entailment fails exactly when the formula is satisfiable. Truth values are
//! encoded by differences `y - x`: `[0,1]` is false, `(1,2]` is true. The
//! target zone pins one `(x, y)` pair per literal plus two dummy clauses; the
//! source zone encodes "pick one clause of each polarity and falsify it",
//! with a span constraint that rules out picking both dummies.

use crate::bound::Bound;
use crate::dbm::Dbm;
use crate::node::{AtaVar, Node};
use ataz_core::parse::SyntaxError;
use ataz_core::LocId;
use std::collections::BTreeSet;
use thiserror::Error;

/// A clause of three literals over variables `0..n_vars`, all of one
/// polarity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneClause {
    pub positive: bool,
    pub vars: [u32; 3],
}

/// A monotone 3-CNF with positive clauses first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneCnf {
    pub n_vars: u32,
    pub clauses: Vec<MonotoneClause>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CnfError {
    #[error("clause {0} mixes polarities; the construction needs monotone clauses")]
    NotMonotone(usize),
    #[error("positive clauses must precede negative ones (clause {0})")]
    NotOrdered(usize),
    #[error("clause {0} uses variable {1} but only {2} are declared")]
    BadVariable(usize, u32, u32),
    #[error("the formula has no clauses")]
    Empty,
}

impl MonotoneCnf {
    pub fn new(n_vars: u32, clauses: Vec<MonotoneClause>) -> Result<Self, CnfError> {
        if clauses.is_empty() {
            return Err(CnfError::Empty);
        }
        let mut seen_negative = false;
        for (i, c) in clauses.iter().enumerate() {
            if c.positive && seen_negative {
                return Err(CnfError::NotOrdered(i + 1));
            }
            seen_negative |= !c.positive;
            for v in c.vars {
                if v >= n_vars {
                    return Err(CnfError::BadVariable(i + 1, v + 1, n_vars));
                }
            }
        }
        Ok(MonotoneCnf { n_vars, clauses })
    }

    pub fn num_positive(&self) -> usize {
        self.clauses.iter().filter(|c| c.positive).count()
    }

    /// Brute-force satisfiability over all assignments.
    pub fn satisfiable(&self) -> bool {
        let n = self.n_vars;
        (0u32..(1 << n)).any(|assign| {
            self.clauses.iter().all(|c| {
                c.vars
                    .iter()
                    .any(|v| ((assign >> v) & 1 == 1) == c.positive)
            })
        })
    }
}

/// The generated instance: source node, target node and the region constant.
#[derive(Debug, Clone)]
pub struct HardnessInstance {
    pub z: Node,
    pub z_prime: Node,
    pub m_const: u32,
    pub formula: MonotoneCnf,
}

fn qx() -> LocId {
    LocId::new(0)
}

fn qy() -> LocId {
    LocId::new(1)
}

/// Names for the two locations of a hardness instance, for dumps.
pub fn hardness_loc_name(q: LocId) -> String {
    if q == qx() {
        "qx".to_string()
    } else {
        "qy".to_string()
    }
}

/// Builds the zone pair for a monotone formula. Entailment of `z` by
/// `z_prime` at `m_const` fails exactly when the formula is satisfiable.
pub fn gen_hardness_instance(f: &MonotoneCnf) -> HardnessInstance {
    let m = f.clauses.len() as i64;
    let k = f.num_positive() as i64;
    let m_const = (14 * (m + 2)) as u32;

    // Source zone: twelve variables x+_j, y+_j, x-_j, y-_j for j = 1..3.
    // qx variables get indices 1..3 (positive) and 4..6 (negative); same for
    // qy.
    let px = |j: i64| AtaVar::new(qx(), j as u32);
    let py = |j: i64| AtaVar::new(qy(), j as u32);
    let nx = |j: i64| AtaVar::new(qx(), (3 + j) as u32);
    let ny = |j: i64| AtaVar::new(qy(), (3 + j) as u32);
    let mut vars: Vec<AtaVar> = Vec::new();
    for j in 1..=3 {
        vars.extend([px(j), py(j), nx(j), ny(j)]);
    }
    let mut z = Dbm::universe(vars);
    let diff =
        |z: &mut Dbm<AtaVar>, hi: AtaVar, lo: AtaVar, low: Bound, up: Bound| {
            let (i, j) = (z.idx(&hi).unwrap(), z.idx(&lo).unwrap());
            assert!(z.constrain(i, j, up), "source zone emptied");
            assert!(z.constrain(j, i, low), "source zone emptied");
        };
    for j in 1..=3 {
        // positive literals false: 0 <= y+ - x+ <= 1
        diff(&mut z, py(j), px(j), Bound::weak(0), Bound::weak(1));
        // negative literals true: 1 < y- - x- <= 2
        diff(&mut z, ny(j), nx(j), Bound::strict(-1), Bound::weak(2));
    }
    for j in 1..=2 {
        // stay within one clause: 1 <= x_{j+1} - y_j <= 5
        diff(&mut z, px(j + 1), py(j), Bound::weak(-1), Bound::weak(5));
        diff(&mut z, nx(j + 1), ny(j), Bound::weak(-1), Bound::weak(5));
    }
    {
        // polarity split around 14(k+1) - 2
        let split = 14 * (k + 1) - 2;
        let i = z.idx(&py(3)).unwrap();
        assert!(z.constrain(i, 0, Bound::strict(split)));
        let i = z.idx(&nx(1)).unwrap();
        assert!(z.constrain(0, i, Bound::strict(-split)));
        // span bound forbidding the two dummies together
        let (i, j) = (z.idx(&ny(3)).unwrap(), z.idx(&px(1)).unwrap());
        assert!(z.constrain(i, j, Bound::strict(14 * (m + 2) - 6)));
    }

    // Target zone: per-literal pairs x^i_j, y^i_j plus dummy clauses
    // px_j/py_j (false) and nx_j/ny_j (true). qx indices: literal (i,j) ->
    // 3(i-1)+j, dummies after the literals.
    let lit_x = |i: i64, j: i64| AtaVar::new(qx(), (3 * (i - 1) + j) as u32);
    let lit_y = |i: i64, j: i64| AtaVar::new(qy(), (3 * (i - 1) + j) as u32);
    let dpx = |j: i64| AtaVar::new(qx(), (3 * m + j) as u32);
    let dpy = |j: i64| AtaVar::new(qy(), (3 * m + j) as u32);
    let dnx = |j: i64| AtaVar::new(qx(), (3 * m + 3 + j) as u32);
    let dny = |j: i64| AtaVar::new(qy(), (3 * m + 3 + j) as u32);
    let mut tvars: Vec<AtaVar> = Vec::new();
    for i in 1..=m {
        for j in 1..=3 {
            tvars.extend([lit_x(i, j), lit_y(i, j)]);
        }
    }
    for j in 1..=3 {
        tvars.extend([dpx(j), dpy(j), dnx(j), dny(j)]);
    }
    let mut zp = Dbm::universe(tvars);
    let pin = |zp: &mut Dbm<AtaVar>, v: AtaVar, val: i64| {
        let i = zp.idx(&v).unwrap();
        assert!(zp.constrain(i, 0, Bound::weak(val)), "target zone emptied");
        assert!(zp.constrain(0, i, Bound::weak(-val)), "target zone emptied");
    };
    for j in 1..=3 {
        pin(&mut zp, dpx(j), 3 * (j - 1));
        pin(&mut zp, dpy(j), 3 * (j - 1));
        pin(&mut zp, dnx(j), 14 * (m + 1) + 3 * (j - 1));
        pin(&mut zp, dny(j), 14 * (m + 1) + 3 * (j - 1) + 2);
    }
    for i in 1..=m {
        for j in 1..=3 {
            let base = 14 * i + 3 * (j - 1);
            for v in [lit_x(i, j), lit_y(i, j)] {
                let vi = zp.idx(&v).unwrap();
                assert!(zp.constrain(vi, 0, Bound::weak(base + 2)));
                assert!(zp.constrain(0, vi, Bound::weak(-base)));
            }
            let (yi, xi) = (zp.idx(&lit_y(i, j)).unwrap(), zp.idx(&lit_x(i, j)).unwrap());
            assert!(zp.constrain(xi, yi, Bound::weak(0)));
        }
    }
    // same formula variable, same encoded value
    for (i1, c1) in f.clauses.iter().enumerate() {
        for (j1, v1) in c1.vars.iter().enumerate() {
            for (i2, c2) in f.clauses.iter().enumerate() {
                for (j2, v2) in c2.vars.iter().enumerate() {
                    if v1 != v2 || (i2, j2) <= (i1, j1) {
                        continue;
                    }
                    let (a, b) = ((i1 as i64 + 1, j1 as i64 + 1), (i2 as i64 + 1, j2 as i64 + 1));
                    let delta = 14 * (b.0 - a.0) + 3 * (b.1 - a.1);
                    for (va, vb) in [
                        (lit_x(a.0, a.1), lit_x(b.0, b.1)),
                        (lit_y(a.0, a.1), lit_y(b.0, b.1)),
                    ] {
                        let (ia, ib) = (zp.idx(&va).unwrap(), zp.idx(&vb).unwrap());
                        assert!(zp.constrain(ib, ia, Bound::weak(delta)));
                        assert!(zp.constrain(ia, ib, Bound::weak(-delta)));
                    }
                }
            }
        }
    }

    HardnessInstance {
        z: Node {
            zone: Some(z),
            inactive: BTreeSet::new(),
        },
        z_prime: Node {
            zone: Some(zp),
            inactive: BTreeSet::new(),
        },
        m_const,
        formula: f.clone(),
    }
}

/// Parses a DIMACS-like monotone CNF: `c` comment lines, a `p cnf VARS
/// CLAUSES` header, then clauses of three literals terminated by `0`.
pub fn parse_dimacs(input: &str) -> Result<MonotoneCnf, SyntaxError> {
    let mut n_vars: Option<u32> = None;
    let mut clauses = Vec::new();
    for (lineno, raw) in input.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('p') {
            let parts: Vec<&str> = rest.split_whitespace().collect();
            if parts.len() != 3 || parts[0] != "cnf" {
                return Err(SyntaxError::at(lineno + 1, 1, "expected `p cnf VARS CLAUSES`"));
            }
            n_vars = Some(parts[1].parse().map_err(|_| {
                SyntaxError::at(lineno + 1, 1, "bad variable count")
            })?);
            continue;
        }
        let lits: Vec<i64> = line
            .split_whitespace()
            .map(|w| {
                w.parse::<i64>()
                    .map_err(|_| SyntaxError::at(lineno + 1, 1, format!("bad literal `{w}`")))
            })
            .collect::<Result<_, _>>()?;
        let Some((&0, lits)) = lits.split_last() else {
            return Err(SyntaxError::at(lineno + 1, 1, "clause must end with 0"));
        };
        if lits.len() != 3 {
            return Err(SyntaxError::at(
                lineno + 1,
                1,
                "clauses must have exactly three literals",
            ));
        }
        if lits.iter().any(|&l| l == 0) {
            return Err(SyntaxError::at(lineno + 1, 1, "literal 0 inside a clause"));
        }
        let positive = lits[0] > 0;
        if lits.iter().any(|&l| (l > 0) != positive) {
            return Err(SyntaxError::Validation(
                CnfError::NotMonotone(clauses.len() + 1).to_string(),
            ));
        }
        clauses.push(MonotoneClause {
            positive,
            vars: [
                (lits[0].unsigned_abs() - 1) as u32,
                (lits[1].unsigned_abs() - 1) as u32,
                (lits[2].unsigned_abs() - 1) as u32,
            ],
        });
    }
    let n_vars = n_vars.ok_or_else(|| SyntaxError::Validation("missing `p cnf` header".into()))?;
    // positives first, stable
    clauses.sort_by_key(|c| !c.positive);
    MonotoneCnf::new(n_vars, clauses).map_err(|e| SyntaxError::Validation(e.to_string()))
}
