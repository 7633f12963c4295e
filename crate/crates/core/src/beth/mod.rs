//! Fallible Beth models presented by finite automata, with propositional forcing.
//!
//! A model is a finite graph in which every state has at least one successor. It presents the
//! infinite tree of finite paths from the root; a tree node behaves like the state it ends in,
//! so forcing can be computed per state. "Every path meets `S`" is the least fixpoint of
//! `X = S ∪ {s : every successor of s is in X}`.

mod format;
mod search;

pub use search::{countermodel_search, ipc_axioms, random_model};

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::lang::PropFormula;
use crate::text::ParseError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BethError {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("state {state} does not force {formula}")]
    NotForced { state: String, formula: String },
    #[error("{0} is not a disjunction")]
    NotADisjunction(String),
    #[error("no state named `{0}`")]
    UnknownState(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BethState {
    pub name: String,
    pub atoms: BTreeSet<u32>,
    pub fallible: bool,
    pub successors: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RegularBethModel {
    pub states: Vec<BethState>,
    pub root: usize,
}

impl RegularBethModel {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn state_index(&self, name: &str) -> Result<usize, BethError> {
        self.states
            .iter()
            .position(|s| s.name == name)
            .ok_or_else(|| BethError::UnknownState(name.to_string()))
    }

    /// Every atom that occurs at some state.
    pub fn atoms_in_play(&self) -> BTreeSet<u32> {
        self.states.iter().flat_map(|s| s.atoms.iter().copied()).collect()
    }

    /// States from which every infinite path eventually meets `target`.
    pub fn inevitable(&self, target: &[bool]) -> Vec<bool> {
        let mut x = target.to_vec();
        loop {
            let mut changed = false;
            for (i, s) in self.states.iter().enumerate() {
                if !x[i] && !s.successors.is_empty() && s.successors.iter().all(|&j| x[j]) {
                    x[i] = true;
                    changed = true;
                }
            }
            if !changed {
                return x;
            }
        }
    }

    /// States reachable from `from`, including itself.
    pub fn reachable(&self, from: usize) -> Vec<bool> {
        let mut seen = vec![false; self.len()];
        let mut stack = vec![from];
        seen[from] = true;
        while let Some(s) = stack.pop() {
            for &t in &self.states[s].successors {
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        seen
    }

    /// The excluded-middle countermodel: `s0` (no atoms) has successors `s1` and itself, `s1`
    /// forces `p0` and loops.
    pub fn excluded_middle_model() -> Self {
        RegularBethModel {
            states: vec![
                BethState {
                    name: "s0".into(),
                    atoms: BTreeSet::new(),
                    fallible: false,
                    successors: vec![1, 0],
                },
                BethState {
                    name: "s1".into(),
                    atoms: [0].into(),
                    fallible: false,
                    successors: vec![1],
                },
            ],
            root: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NoSuccessors { state: usize },
    BadSuccessor { state: usize, successor: usize },
    BadRoot,
    /// A fallible state with a non-fallible successor.
    FallibleNotUpwardClosed { state: usize, successor: usize },
    /// Every path from the state meets a fallible state, but it is not fallible itself.
    FallibilityNotBarClosed { state: usize },
    AtomNotMonotone { state: usize, successor: usize, atom: u32 },
    FallibleMissingAtom { state: usize, atom: u32 },
    /// Every path from the state meets the atom, but the state lacks it.
    AtomNotBarClosed { state: usize, atom: u32 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoSuccessors { state } => write!(f, "state #{state} has no successors"),
            Violation::BadSuccessor { state, successor } => {
                write!(f, "state #{state} lists missing successor #{successor}")
            }
            Violation::BadRoot => write!(f, "the root is not a state"),
            Violation::FallibleNotUpwardClosed { state, successor } => {
                write!(f, "state #{state} is fallible but its successor #{successor} is not")
            }
            Violation::FallibilityNotBarClosed { state } => {
                write!(f, "every path from state #{state} meets a fallible state, but it is not fallible")
            }
            Violation::AtomNotMonotone { state, successor, atom } => {
                write!(f, "p{atom} holds at state #{state} but not at its successor #{successor}")
            }
            Violation::FallibleMissingAtom { state, atom } => {
                write!(f, "fallible state #{state} lacks p{atom}")
            }
            Violation::AtomNotBarClosed { state, atom } => {
                write!(f, "every path from state #{state} meets p{atom}, but the state lacks it")
            }
        }
    }
}

/// Checks the model conditions; an empty result means the model is valid.
pub fn validate_model(m: &RegularBethModel) -> Vec<Violation> {
    let mut out = Vec::new();
    let n = m.len();
    if m.root >= n {
        out.push(Violation::BadRoot);
    }
    for (i, s) in m.states.iter().enumerate() {
        if s.successors.is_empty() {
            out.push(Violation::NoSuccessors { state: i });
        }
        for &j in &s.successors {
            if j >= n {
                out.push(Violation::BadSuccessor { state: i, successor: j });
            }
        }
    }
    if !out.is_empty() {
        return out;
    }
    let fallible: Vec<bool> = m.states.iter().map(|s| s.fallible).collect();
    for (i, s) in m.states.iter().enumerate() {
        for &j in &s.successors {
            if s.fallible && !fallible[j] {
                out.push(Violation::FallibleNotUpwardClosed { state: i, successor: j });
            }
            for &a in s.atoms.difference(&m.states[j].atoms) {
                out.push(Violation::AtomNotMonotone { state: i, successor: j, atom: a });
            }
        }
    }
    for (i, hit) in m.inevitable(&fallible).into_iter().enumerate() {
        if hit && !fallible[i] {
            out.push(Violation::FallibilityNotBarClosed { state: i });
        }
    }
    let play = m.atoms_in_play();
    for (i, s) in m.states.iter().enumerate() {
        if s.fallible {
            for &a in play.difference(&s.atoms) {
                out.push(Violation::FallibleMissingAtom { state: i, atom: a });
            }
        }
    }
    for &a in &play {
        let holds: Vec<bool> = m.states.iter().map(|s| s.atoms.contains(&a)).collect();
        for (i, hit) in m.inevitable(&holds).into_iter().enumerate() {
            if hit && !holds[i] {
                out.push(Violation::AtomNotBarClosed { state: i, atom: a });
            }
        }
    }
    out
}

/// Forcing of every subformula of a formula at every state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForcingTable {
    root: usize,
    order: Vec<PropFormula>,
    rows: HashMap<PropFormula, Vec<bool>>,
}

impl ForcingTable {
    pub fn forces(&self, state: usize, f: &PropFormula) -> Option<bool> {
        self.rows.get(f).and_then(|r| r.get(state).copied())
    }

    pub fn root_forces(&self, f: &PropFormula) -> Option<bool> {
        self.forces(self.root, f)
    }

    pub fn row(&self, f: &PropFormula) -> Option<&[bool]> {
        self.rows.get(f).map(|r| r.as_slice())
    }

    /// Subformulas in the order they were computed, children first.
    pub fn subformulas(&self) -> &[PropFormula] {
        &self.order
    }
}

/// Computes forcing bottom-up over the subformulas of `a`.
///
/// - `⊥` is forced exactly at fallible states, and atoms also hold there;
/// - `A ∨ B`: every path meets a state forcing `A` or `B`;
/// - `A → B`: every state reachable (including the state itself) that forces `A` forces `B`.
pub fn force(m: &RegularBethModel, a: &PropFormula) -> ForcingTable {
    let n = m.len();
    let reach: Vec<Vec<bool>> = (0..n).map(|s| m.reachable(s)).collect();
    let mut rows: HashMap<PropFormula, Vec<bool>> = HashMap::new();
    let order = a.subformulas();
    for f in &order {
        let row: Vec<bool> = match f {
            PropFormula::Bot => m.states.iter().map(|s| s.fallible).collect(),
            PropFormula::Atom(p) => m.states.iter().map(|s| s.fallible || s.atoms.contains(p)).collect(),
            PropFormula::And(x, y) => {
                let (x, y) = (&rows[x.as_ref()], &rows[y.as_ref()]);
                (0..n).map(|i| x[i] && y[i]).collect()
            }
            PropFormula::Or(x, y) => {
                let (x, y) = (&rows[x.as_ref()], &rows[y.as_ref()]);
                let either: Vec<bool> = (0..n).map(|i| x[i] || y[i]).collect();
                m.inevitable(&either)
            }
            PropFormula::Imp(x, y) => {
                let (x, y) = (&rows[x.as_ref()], &rows[y.as_ref()]);
                (0..n)
                    .map(|i| (0..n).all(|w| !reach[i][w] || !x[w] || y[w]))
                    .collect()
            }
        };
        rows.insert(f.clone(), row);
    }
    ForcingTable { root: m.root, order, rows }
}

pub fn check_valid_on(m: &RegularBethModel, a: &PropFormula) -> bool {
    force(m, a).root_forces(a).unwrap_or(false)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// The frontier of a bar for a disjunction: states where one disjunct is first forced along
/// each path, with the disjunct chosen there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bar {
    pub frontier: Vec<(usize, Side)>,
}

/// Extracts a bar for `goal = A ∨ B` at `state`. Exploration stops at any state forcing `A`
/// (preferred) or `B`; other states are expanded through all successors.
pub fn bar_witness(m: &RegularBethModel, state: usize, goal: &PropFormula) -> Result<Bar, BethError> {
    let PropFormula::Or(left, right) = goal else {
        return Err(BethError::NotADisjunction(goal.to_string()));
    };
    let table = force(m, goal);
    if table.forces(state, goal) != Some(true) {
        return Err(BethError::NotForced {
            state: m.states[state].name.clone(),
            formula: goal.to_string(),
        });
    }
    let (l, r) = (table.row(left).expect("subformula"), table.row(right).expect("subformula"));
    let mut seen = vec![false; m.len()];
    let mut queue = std::collections::VecDeque::from([state]);
    seen[state] = true;
    let mut frontier = Vec::new();
    while let Some(s) = queue.pop_front() {
        if l[s] {
            frontier.push((s, Side::Left));
        } else if r[s] {
            frontier.push((s, Side::Right));
        } else {
            for &t in &m.states[s].successors {
                if !seen[t] {
                    seen[t] = true;
                    queue.push_back(t);
                }
            }
        }
    }
    frontier.sort_by_key(|&(s, _)| s);
    Ok(Bar { frontier })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PropFormula {
        s.parse().unwrap()
    }

    fn single(atoms: &[u32], fallible: bool) -> RegularBethModel {
        RegularBethModel {
            states: vec![BethState {
                name: "s".into(),
                atoms: atoms.iter().copied().collect(),
                fallible,
                successors: vec![0],
            }],
            root: 0,
        }
    }

    #[test]
    fn single_state_is_valid() {
        assert!(validate_model(&single(&[0], false)).is_empty());
    }

    #[test]
    fn fallibility_must_be_bar_closed() {
        // s0 → s1 (fallible) and s0 → s2 → s1: every path from s0 meets s1.
        let mut m = RegularBethModel::excluded_middle_model();
        m.states[0].successors = vec![1, 2];
        m.states[1].fallible = true;
        m.states[1].atoms = [0].into();
        m.states.push(BethState {
            name: "s2".into(),
            atoms: BTreeSet::new(),
            fallible: false,
            successors: vec![1],
        });
        let v = validate_model(&m);
        assert!(v.contains(&Violation::FallibilityNotBarClosed { state: 0 }), "{v:?}");
    }

    #[test]
    fn atoms_must_be_bar_closed() {
        let mut m = RegularBethModel::excluded_middle_model();
        m.states[0].successors = vec![1];
        assert_eq!(validate_model(&m), vec![Violation::AtomNotBarClosed { state: 0, atom: 0 }]);
    }

    #[test]
    fn excluded_middle_fails() {
        let m = RegularBethModel::excluded_middle_model();
        assert!(validate_model(&m).is_empty());
        let em = p("p0 \\/ (p0 -> bot)");
        let t = force(&m, &em);
        assert_eq!(t.forces(0, &em), Some(false));
        assert_eq!(t.forces(0, &p("p0")), Some(false));
        assert_eq!(t.forces(0, &p("p0 -> bot")), Some(false));
        assert_eq!(t.forces(1, &p("p0")), Some(true));
        assert_eq!(t.forces(1, &em), Some(true));
        assert!(!check_valid_on(&m, &p("~~p0 -> p0")));
        assert!(check_valid_on(&m, &p("~~(p0 \\/ ~p0)")));
    }

    #[test]
    fn fallible_states_force_everything() {
        let m = single(&[], true);
        for f in ["bot", "p3", "p0 \\/ ~p0", "~~p1 -> p1"] {
            assert!(check_valid_on(&m, &p(f)), "{f}");
        }
    }

    #[test]
    fn bars() {
        let m = RegularBethModel::excluded_middle_model();
        let b = bar_witness(&m, 1, &p("p0 \\/ p1")).unwrap();
        assert_eq!(b.frontier, vec![(1, Side::Left)]);
        assert!(matches!(
            bar_witness(&m, 0, &p("p0 \\/ ~p0")),
            Err(BethError::NotForced { .. })
        ));
        assert!(matches!(bar_witness(&m, 0, &p("p0")), Err(BethError::NotADisjunction(_))));
        // Two-branch model: s0 → a, b with p0 at a and p1 at b.
        let text = "state s0 atoms= fallible=0 succ=a,b\n\
                    state a atoms=p0 fallible=0 succ=a\n\
                    state b atoms=p1 fallible=0 succ=b\n\
                    root s0\n";
        let m: RegularBethModel = text.parse().unwrap();
        let b = bar_witness(&m, 0, &p("p0 \\/ p1")).unwrap();
        assert_eq!(b.frontier, vec![(1, Side::Left), (2, Side::Right)]);
    }
}
