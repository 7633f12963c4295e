use std::collections::{BTreeSet, HashSet};

use rand::Rng;

use super::{check_valid_on, validate_model, BethState, RegularBethModel};
use crate::lang::PropFormula;

fn state_name(i: usize) -> String {
    format!("s{i}")
}

/// Nonempty subsets of `0..n` with at most `k` members, smaller first, then lexicographic.
fn successor_choices(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (1u32..(1 << n))
        .map(|mask| (0..n).filter(|&i| mask & (1 << i) != 0).collect::<Vec<_>>())
        .filter(|v| v.len() <= k)
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// A relabeling-invariant key: the least encoding over permutations fixing the root.
fn canonical_key(m: &RegularBethModel) -> Vec<u64> {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<u64>> = None;
    // Heap's algorithm over the non-root states (root is state 0 in search models).
    fn encode(m: &RegularBethModel, perm: &[usize]) -> Vec<u64> {
        let n = m.len();
        let mut inv = vec![0; n];
        for (new, &old) in perm.iter().enumerate() {
            inv[old] = new;
        }
        let mut out = Vec::new();
        for &old in perm {
            let s = &m.states[old];
            let mut succ: Vec<usize> = s.successors.iter().map(|&j| inv[j]).collect();
            succ.sort_unstable();
            let mask: u64 = succ.iter().map(|&j| 1u64 << j).sum();
            let atoms: u64 = s.atoms.iter().map(|&a| 1u64 << a.min(63)).sum();
            out.extend([mask, atoms, u64::from(s.fallible)]);
        }
        out
    }
    fn permute(m: &RegularBethModel, perm: &mut Vec<usize>, k: usize, best: &mut Option<Vec<u64>>) {
        if k == perm.len() {
            let e = encode(m, perm);
            if best.as_ref().is_none_or(|b| e < *b) {
                *best = Some(e);
            }
            return;
        }
        for i in k..perm.len() {
            perm.swap(k, i);
            permute(m, perm, k + 1, best);
            perm.swap(k, i);
        }
    }
    permute(m, &mut perm, 1.min(n), &mut best);
    best.unwrap_or_default()
}

/// Searches validated models for one whose root does not force `a`, in order of state count,
/// then branching bound, then successor, atom and fallibility assignments. Only models in
/// which every state is reachable from the root are tried, one per isomorphism class.
pub fn countermodel_search(a: &PropFormula, max_states: usize, max_branching: usize) -> Option<RegularBethModel> {
    let atoms: Vec<u32> = a.atoms().into_iter().collect();
    let atom_sets: Vec<BTreeSet<u32>> = (0u32..(1 << atoms.len()))
        .map(|mask| {
            atoms
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &p)| p)
                .collect()
        })
        .collect();
    let mut seen = HashSet::new();
    for n in 1..=max_states.min(6) {
        for k in 1..=max_branching.min(n) {
            let choices = successor_choices(n, k);
            let mut succ_idx = vec![0usize; n];
            loop {
                let graph: Vec<Vec<usize>> = succ_idx.iter().map(|&i| choices[i].clone()).collect();
                // Branching exactly k somewhere, so each k adds only new graphs.
                if graph.iter().any(|g| g.len() == k) && all_reachable(&graph) {
                    if let Some(m) = try_labelings(a, &graph, &atom_sets, &mut seen) {
                        return Some(m);
                    }
                }
                if !odometer(&mut succ_idx, choices.len()) {
                    break;
                }
            }
        }
    }
    None
}

fn odometer(idx: &mut [usize], base: usize) -> bool {
    for i in (0..idx.len()).rev() {
        idx[i] += 1;
        if idx[i] < base {
            return true;
        }
        idx[i] = 0;
    }
    false
}

fn all_reachable(graph: &[Vec<usize>]) -> bool {
    let mut seen = vec![false; graph.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(s) = stack.pop() {
        for &t in &graph[s] {
            if !seen[t] {
                seen[t] = true;
                stack.push(t);
            }
        }
    }
    seen.into_iter().all(|b| b)
}

fn try_labelings(
    a: &PropFormula,
    graph: &[Vec<usize>],
    atom_sets: &[BTreeSet<u32>],
    seen: &mut HashSet<Vec<u64>>,
) -> Option<RegularBethModel> {
    let n = graph.len();
    let mut atom_idx = vec![0usize; n];
    loop {
        for fmask in 0u32..(1 << n) {
            let m = RegularBethModel {
                states: (0..n)
                    .map(|i| BethState {
                        name: state_name(i),
                        atoms: atom_sets[atom_idx[i]].clone(),
                        fallible: fmask & (1 << i) != 0,
                        successors: graph[i].clone(),
                    })
                    .collect(),
                root: 0,
            };
            if m.states[0].fallible || !validate_model(&m).is_empty() {
                continue;
            }
            if !seen.insert(canonical_key(&m)) {
                continue;
            }
            if !check_valid_on(&m, a) {
                return Some(m);
            }
        }
        if !odometer(&mut atom_idx, atom_sets.len()) {
            return None;
        }
    }
}

/// A random valid model with at most `max_states` states over atoms `p0..p{atom_count-1}`.
/// A random graph and labeling is repaired into validity by closing fallibility upward and
/// under bars, pushing atoms to successors, filling fallible states and closing atoms under bars.
pub fn random_model<R: Rng + ?Sized>(rng: &mut R, max_states: usize, atom_count: u32) -> RegularBethModel {
    let n = rng.gen_range(1..=max_states.max(1));
    let mut states: Vec<BethState> = (0..n)
        .map(|i| {
            let k = rng.gen_range(1..=n.min(3));
            let mut succ: Vec<usize> = (0..k).map(|_| rng.gen_range(0..n)).collect();
            succ.sort_unstable();
            succ.dedup();
            BethState {
                name: state_name(i),
                atoms: (0..atom_count).filter(|_| rng.gen_ratio(1, 4)).collect(),
                fallible: i != 0 && rng.gen_ratio(1, 6),
                successors: succ,
            }
        })
        .collect();
    let mut m = RegularBethModel { states: std::mem::take(&mut states), root: 0 };
    loop {
        let mut changed = false;
        let fallible: Vec<bool> = m.states.iter().map(|s| s.fallible).collect();
        for (i, hit) in m.inevitable(&fallible).into_iter().enumerate() {
            if hit && !m.states[i].fallible {
                m.states[i].fallible = true;
                changed = true;
            }
        }
        for i in 0..n {
            if m.states[i].fallible {
                for j in m.states[i].successors.clone() {
                    if !m.states[j].fallible {
                        m.states[j].fallible = true;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let all: BTreeSet<u32> = (0..atom_count).collect();
    loop {
        let mut changed = false;
        for i in 0..n {
            if m.states[i].fallible && m.states[i].atoms != all {
                m.states[i].atoms = all.clone();
                changed = true;
            }
            for j in m.states[i].successors.clone() {
                let add: Vec<u32> = m.states[i].atoms.difference(&m.states[j].atoms).copied().collect();
                if !add.is_empty() {
                    m.states[j].atoms.extend(add);
                    changed = true;
                }
            }
        }
        for a in 0..atom_count {
            let holds: Vec<bool> = m.states.iter().map(|s| s.atoms.contains(&a)).collect();
            for (i, hit) in m.inevitable(&holds).into_iter().enumerate() {
                if hit && m.states[i].atoms.insert(a) {
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    debug_assert!(validate_model(&m).is_empty());
    m
}

/// Instances of a Hilbert-style axiomatization of intuitionistic propositional logic.
pub fn ipc_axioms(a: &PropFormula, b: &PropFormula, c: &PropFormula) -> Vec<PropFormula> {
    use PropFormula as P;
    let (a, b, c) = (a.clone(), b.clone(), c.clone());
    vec![
        P::imp(a.clone(), P::imp(b.clone(), a.clone())),
        P::imp(
            P::imp(a.clone(), P::imp(b.clone(), c.clone())),
            P::imp(P::imp(a.clone(), b.clone()), P::imp(a.clone(), c.clone())),
        ),
        P::imp(P::and(a.clone(), b.clone()), a.clone()),
        P::imp(P::and(a.clone(), b.clone()), b.clone()),
        P::imp(a.clone(), P::imp(b.clone(), P::and(a.clone(), b.clone()))),
        P::imp(a.clone(), P::or(a.clone(), b.clone())),
        P::imp(b.clone(), P::or(a.clone(), b.clone())),
        P::imp(
            P::imp(a.clone(), c.clone()),
            P::imp(P::imp(b.clone(), c.clone()), P::imp(P::or(a.clone(), b.clone()), c.clone())),
        ),
        P::imp(P::Bot, a),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::beth::force;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str) -> PropFormula {
        s.parse().unwrap()
    }

    #[test]
    fn search_finds_excluded_middle_model() {
        let m = countermodel_search(&p("p0 \\/ ~p0"), 2, 2).unwrap();
        assert_eq!(m.len(), 2);
        assert!(m.states[0].atoms.is_empty() && m.states[1].atoms == [0].into());
        assert_eq!(m.states[0].successors, vec![0, 1]);
        assert_eq!(m.states[1].successors, vec![1]);
        assert!(countermodel_search(&p("~~p0 -> p0"), 2, 2).is_some());
        assert!(countermodel_search(&p("p0 -> p0"), 3, 2).is_none());
        assert!(countermodel_search(&p("(p0 -> p1) \\/ (p1 -> p0)"), 3, 3).is_some());
    }

    #[test]
    fn random_models_are_valid_and_force_axioms() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let axioms = ipc_axioms(&p("p0"), &p("p1 \\/ p2"), &p("~p0"));
        for _ in 0..30 {
            let m = random_model(&mut rng, 6, 3);
            assert!(validate_model(&m).is_empty(), "{m}");
            for ax in &axioms {
                let t = force(&m, ax);
                assert!(t.row(ax).unwrap().iter().all(|&b| b), "{ax} on\n{m}");
            }
        }
    }
}
