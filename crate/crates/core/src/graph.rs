//! SCC machinery and language-level decision procedures.

use crate::dpa::{Dpa, StateId};
use crate::error::{AutError, Result};
use crate::rank::Rank;

/// Classification of a maximal strongly connected component.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SccClass {
    /// All ranks even: any run trapped here is accepted.
    Accepting,
    /// All ranks odd.
    Rejecting,
    Mixed,
}

/// MSCC decomposition of the reachable part of an automaton.
///
/// A singleton is an MSCC only if it carries a self-loop; reachable states
/// outside every MSCC are transient. Unreachable states are excluded from the
/// decomposition entirely.
#[derive(Clone, Debug)]
pub struct SccInfo {
    /// MSCC membership per state; `None` for transient or unreachable states.
    pub component_of: Vec<Option<usize>>,
    pub components: Vec<Vec<StateId>>,
    pub class_of: Vec<SccClass>,
    /// Terminal means only components of the same classification are
    /// reachable from it.
    pub terminal: Vec<bool>,
    pub reachable: Vec<bool>,
}

impl SccInfo {
    pub fn is_transient(&self, q: StateId) -> bool {
        self.reachable[q] && self.component_of[q].is_none()
    }
}

/// Tarjan's algorithm over a subgraph selected by `keep`, with successors
/// given by `succs`. Returns components in reverse topological order.
fn tarjan(n: usize, keep: &[bool], succs: impl Fn(usize) -> Vec<usize>) -> Vec<Vec<usize>> {
    struct St<'a, F: Fn(usize) -> Vec<usize>> {
        index: usize,
        indices: Vec<Option<usize>>,
        low: Vec<usize>,
        on_stack: Vec<bool>,
        stack: Vec<usize>,
        sccs: Vec<Vec<usize>>,
        keep: &'a [bool],
        succs: F,
    }
    // Iterative strongconnect to avoid recursion depth issues.
    fn connect<F: Fn(usize) -> Vec<usize>>(st: &mut St<F>, root: usize) {
        let mut call_stack: Vec<(usize, Vec<usize>, usize)> = vec![(root, (st.succs)(root), 0)];
        st.indices[root] = Some(st.index);
        st.low[root] = st.index;
        st.index += 1;
        st.stack.push(root);
        st.on_stack[root] = true;
        while let Some((v, succ, mut i)) = call_stack.pop() {
            let mut descended = false;
            while i < succ.len() {
                let w = succ[i];
                i += 1;
                if !st.keep[w] {
                    continue;
                }
                if st.indices[w].is_none() {
                    st.indices[w] = Some(st.index);
                    st.low[w] = st.index;
                    st.index += 1;
                    st.stack.push(w);
                    st.on_stack[w] = true;
                    call_stack.push((v, succ, i));
                    call_stack.push((w, (st.succs)(w), 0));
                    descended = true;
                    break;
                } else if st.on_stack[w] {
                    st.low[v] = st.low[v].min(st.indices[w].unwrap());
                }
            }
            if descended {
                continue;
            }
            if st.low[v] == st.indices[v].unwrap() {
                let mut comp = Vec::new();
                loop {
                    let w = st.stack.pop().unwrap();
                    st.on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                st.sccs.push(comp);
            }
            if let Some(&mut (p, _, _)) = call_stack.last_mut() {
                st.low[p] = st.low[p].min(st.low[v]);
            }
        }
    }
    let mut st = St {
        index: 0,
        indices: vec![None; n],
        low: vec![0; n],
        on_stack: vec![false; n],
        stack: Vec::new(),
        sccs: Vec::new(),
        keep,
        succs,
    };
    for v in 0..n {
        if keep[v] && st.indices[v].is_none() {
            connect(&mut st, v);
        }
    }
    st.sccs
}

fn has_cycle(aut: &Dpa, comp: &[StateId]) -> bool {
    if comp.len() > 1 {
        return true;
    }
    let q = comp[0];
    (0..aut.alphabet.len()).any(|s| aut.step(q, s) == q)
}

/// MSCC decomposition with accepting/rejecting/mixed classification and
/// terminal flags, over the reachable part only.
pub fn sccs(aut: &Dpa) -> SccInfo {
    sccs_from(aut, aut.initial)
}

pub fn sccs_from(aut: &Dpa, from: StateId) -> SccInfo {
    let reachable = aut.reachable_from(from);
    let n = aut.states();
    let raw = tarjan(n, &reachable, |q| {
        (0..aut.alphabet.len()).map(|s| aut.step(q, s)).collect()
    });
    let mut component_of = vec![None; n];
    let mut components = Vec::new();
    for comp in raw {
        if has_cycle(aut, &comp) {
            let id = components.len();
            for &q in &comp {
                component_of[q] = Some(id);
            }
            components.push(comp);
        }
    }
    let class_of: Vec<SccClass> = components
        .iter()
        .map(|comp| {
            let evens = comp
                .iter()
                .filter(|&&q| aut.kappa[q].parity_even() == Some(true))
                .count();
            if evens == comp.len() {
                SccClass::Accepting
            } else if evens == 0 {
                SccClass::Rejecting
            } else {
                SccClass::Mixed
            }
        })
        .collect();
    // Terminal flags: from each component, every reachable component shares
    // its classification.
    let mut terminal = vec![true; components.len()];
    for (id, comp) in components.iter().enumerate() {
        let mut seen = vec![false; n];
        let mut stack: Vec<StateId> = comp.clone();
        for &q in comp {
            seen[q] = true;
        }
        'outer: while let Some(q) = stack.pop() {
            for s in 0..aut.alphabet.len() {
                let t = aut.step(q, s);
                if seen[t] {
                    continue;
                }
                seen[t] = true;
                if let Some(other) = component_of[t] {
                    if class_of[other] != class_of[id] || class_of[id] == SccClass::Mixed {
                        terminal[id] = false;
                        break 'outer;
                    }
                }
                stack.push(t);
            }
        }
        if class_of[id] == SccClass::Mixed {
            terminal[id] = false;
        }
    }
    SccInfo {
        component_of,
        components,
        class_of,
        terminal,
        reachable,
    }
}

/// True iff some cycle reachable from `q` has a minimal rank failing `even`.
/// Used for both emptiness and universality: a state is universal iff no
/// reachable cycle has odd minimum, and empty iff none has even minimum.
fn has_cycle_with_min_parity(aut: &Dpa, q: StateId, even: bool) -> bool {
    let reach = aut.reachable_from(q);
    let n = aut.states();
    let mut ranks: Vec<Rank> = (0..n).filter(|&i| reach[i]).map(|i| aut.kappa[i]).collect();
    ranks.sort();
    ranks.dedup();
    for d in ranks {
        if d.parity_even() != Some(even) {
            continue;
        }
        let keep: Vec<bool> = (0..n).map(|i| reach[i] && aut.kappa[i] >= d).collect();
        let comps = tarjan(n, &keep, |v| {
            (0..aut.alphabet.len())
                .map(|s| aut.step(v, s))
                .filter(|&t| keep[t])
                .collect()
        });
        for comp in comps {
            if has_cycle(aut, &comp) && comp.iter().any(|&v| aut.kappa[v] == d) {
                return true;
            }
        }
    }
    false
}

/// Every infinite continuation from `q` is accepted.
pub fn is_universal_from(aut: &Dpa, q: StateId) -> bool {
    !has_cycle_with_min_parity(aut, q, false)
}

/// Every infinite continuation from `q` is rejected.
pub fn is_empty_from(aut: &Dpa, q: StateId) -> bool {
    !has_cycle_with_min_parity(aut, q, true)
}

/// Complement by shifting every rank up by one.
pub fn complement(aut: &Dpa) -> Dpa {
    let kappa = aut
        .kappa
        .iter()
        .map(|&r| match r {
            Rank::NegTwo => Rank::NegOne,
            Rank::NegOne => Rank::Fin(0),
            Rank::Fin(n) => Rank::Fin(n + 1),
            Rank::Infinite => Rank::Infinite,
        })
        .collect();
    Dpa {
        kappa,
        ..aut.clone()
    }
}

/// Non-emptiness of the intersection of two parity conditions on the product
/// graph: it is non-empty iff there are even ranks `d1`, `d2` and an SCC of
/// the subgraph `{κ1 ≥ d1 ∧ κ2 ≥ d2}` reachable from the start pair that
/// contains a state realizing `d1` on the first track and one realizing `d2`
/// on the second.
fn product_nonempty(a1: &Dpa, q1: StateId, a2: &Dpa, q2: StateId) -> Result<bool> {
    if a1.alphabet != a2.alphabet {
        return Err(AutError::AlphabetMismatch);
    }
    let n1 = a1.states();
    let n2 = a2.states();
    let idx = |x: StateId, y: StateId| x * n2 + y;
    let n = n1 * n2;
    // Reachable product pairs.
    let mut reach = vec![false; n];
    let mut stack = vec![(q1, q2)];
    reach[idx(q1, q2)] = true;
    while let Some((x, y)) = stack.pop() {
        for s in 0..a1.alphabet.len() {
            let (nx, ny) = (a1.step(x, s), a2.step(y, s));
            if !reach[idx(nx, ny)] {
                reach[idx(nx, ny)] = true;
                stack.push((nx, ny));
            }
        }
    }
    let evens = |aut: &Dpa| {
        let mut v: Vec<Rank> = aut
            .kappa
            .iter()
            .copied()
            .filter(|r| r.parity_even() == Some(true))
            .collect();
        v.sort();
        v.dedup();
        v
    };
    for d1 in evens(a1) {
        for d2 in evens(a2).iter().copied() {
            let keep: Vec<bool> = (0..n)
                .map(|i| reach[i] && a1.kappa[i / n2] >= d1 && a2.kappa[i % n2] >= d2)
                .collect();
            let comps = tarjan(n, &keep, |i| {
                let (x, y) = (i / n2, i % n2);
                (0..a1.alphabet.len())
                    .map(|s| idx(a1.step(x, s), a2.step(y, s)))
                    .filter(|&j| keep[j])
                    .collect()
            });
            for comp in comps {
                let cyclic = comp.len() > 1
                    || (0..a1.alphabet.len()).any(|s| {
                        let (x, y) = (comp[0] / n2, comp[0] % n2);
                        idx(a1.step(x, s), a2.step(y, s)) == comp[0]
                    });
                if cyclic
                    && comp.iter().any(|&i| a1.kappa[i / n2] == d1)
                    && comp.iter().any(|&i| a2.kappa[i % n2] == d2)
                {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

/// Language equality of two pointed automata, decided through emptiness of
/// both difference products.
pub fn lang_equiv(a1: &Dpa, q1: StateId, a2: &Dpa, q2: StateId) -> Result<bool> {
    Ok(!product_nonempty(a1, q1, &complement(a2), q2)?
        && !product_nonempty(a2, q2, &complement(a1), q1)?)
}
