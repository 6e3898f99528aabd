//! Deterministic parity automata and runs.

use crate::error::{AutError, Result};
use crate::rank::Rank;
use crate::words::{canonicalize, Alphabet, FiniteWord, LassoWord, SymId};

/// Dense index of a state.
pub type StateId = usize;

/// A deterministic parity automaton with state-based ranks.
///
/// `delta` is total: `delta[q][s]` is the successor of `q` on symbol id `s`.
/// Plain input automata carry only finite ranks; derived automata (the vigor
/// construction) may rank doomed or universal classes `-1`/`-2`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Dpa {
    pub alphabet: Alphabet,
    pub initial: StateId,
    pub delta: Vec<Vec<StateId>>,
    pub kappa: Vec<Rank>,
}

/// The run of an automaton on a lasso word, split at the entry point of the
/// final configuration cycle.
///
/// `prefix_states[i]` is the state after consuming `i` letters (so
/// `prefix_states[0]` is the initial state and the vector has `loop_entry + 1`
/// entries). `loop_states` lists the states after `loop_entry + 1, …,
/// loop_entry + M` letters; the last one equals `prefix_states[loop_entry]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RunTrace {
    pub prefix_states: Vec<StateId>,
    pub loop_entry: usize,
    pub loop_states: Vec<StateId>,
    /// Canonicalized representation the trace was computed on.
    pub spoke: Vec<SymId>,
    pub period: Vec<SymId>,
}

impl RunTrace {
    /// Letters read around the final cycle, starting right after `loop_entry`.
    pub fn cycle_word(&self) -> Vec<SymId> {
        let t = self.loop_entry;
        let m = self.loop_states.len();
        (0..m).map(|i| self.letter_at(t + i)).collect()
    }

    /// Letter consumed at position `pos` (0-based) of the canonicalized word.
    pub fn letter_at(&self, pos: usize) -> SymId {
        if pos < self.spoke.len() {
            self.spoke[pos]
        } else {
            self.period[(pos - self.spoke.len()) % self.period.len()]
        }
    }

    /// State after consuming `n` letters.
    pub fn state_after(&self, n: usize) -> StateId {
        if n <= self.loop_entry {
            self.prefix_states[n]
        } else {
            self.loop_states[(n - self.loop_entry - 1) % self.loop_states.len()]
        }
    }
}

impl Dpa {
    pub fn states(&self) -> usize {
        self.kappa.len()
    }

    pub fn step(&self, q: StateId, s: SymId) -> StateId {
        self.delta[q][s]
    }

    pub fn run_ids(&self, from: StateId, word: &[SymId]) -> StateId {
        word.iter().fold(from, |q, &s| self.step(q, s))
    }

    /// State reached from the initial state on a finite word.
    pub fn run_state(&self, word: &FiniteWord) -> Result<StateId> {
        Ok(self.run_ids(self.initial, &self.alphabet.word_ids(word)?))
    }

    pub fn lasso_ids(&self, w: &LassoWord) -> Result<(Vec<SymId>, Vec<SymId>)> {
        Ok((
            self.alphabet.word_ids(&w.spoke)?,
            self.alphabet.word_ids(&w.period)?,
        ))
    }

    /// Simulates the automaton on a lasso word.
    ///
    /// The representation is canonicalized first so the result only depends
    /// on the denoted infinite word. The loop entry is the earliest position
    /// from which the run follows the final (state, phase) configuration
    /// cycle.
    pub fn run_lasso(&self, w: &LassoWord) -> Result<RunTrace> {
        let (u, v) = self.lasso_ids(w)?;
        Ok(self.run_lasso_ids(&u, &v))
    }

    pub fn run_lasso_ids(&self, spoke: &[SymId], period: &[SymId]) -> RunTrace {
        assert!(!period.is_empty(), "lasso period must be non-empty");
        let (u, v) = canonicalize(spoke, period);
        let m = v.len();
        // States after each consumed letter, far enough to close the cycle.
        let mut states = vec![self.initial];
        let mut q = self.initial;
        for &s in &u {
            q = self.step(q, s);
            states.push(q);
        }
        // Track first occurrence of each (state, phase) configuration in the
        // periodic part.
        let mut seen = vec![vec![usize::MAX; m]; self.states()];
        let mut pos = u.len();
        let (entry, cycle_end) = loop {
            let phase = (pos - u.len()) % m;
            let q = states[pos];
            if seen[q][phase] != usize::MAX {
                break (seen[q][phase], pos);
            }
            seen[q][phase] = pos;
            let next = self.step(q, v[phase]);
            states.push(next);
            pos += 1;
        };
        RunTrace {
            prefix_states: states[..=entry].to_vec(),
            loop_entry: entry,
            loop_states: states[entry + 1..=cycle_end].to_vec(),
            spoke: u,
            period: v,
        }
    }

    /// Parity acceptance: the minimal rank on the final cycle is even.
    pub fn accepts(&self, w: &LassoWord) -> Result<bool> {
        let trace = self.run_lasso(w)?;
        Ok(self.accepts_trace(&trace))
    }

    pub fn accepts_ids(&self, spoke: &[SymId], period: &[SymId]) -> bool {
        self.accepts_trace(&self.run_lasso_ids(spoke, period))
    }

    fn accepts_trace(&self, trace: &RunTrace) -> bool {
        let min = trace
            .loop_states
            .iter()
            .map(|&q| self.kappa[q])
            .min()
            .expect("non-empty loop");
        min.parity_even().expect("automata never carry infinite ranks")
    }

    /// States reachable from `from`.
    pub fn reachable_from(&self, from: StateId) -> Vec<bool> {
        let mut seen = vec![false; self.states()];
        let mut stack = vec![from];
        seen[from] = true;
        while let Some(q) = stack.pop() {
            for s in 0..self.alphabet.len() {
                let t = self.step(q, s);
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        seen
    }

    pub fn reachable(&self) -> Vec<bool> {
        self.reachable_from(self.initial)
    }

    /// Same automaton with a different initial state.
    pub fn with_initial(&self, q: StateId) -> Dpa {
        Dpa {
            initial: q,
            ..self.clone()
        }
    }

    /// Shortlex-least word (in declared alphabet order) reaching each state;
    /// unreachable states get `None`.
    pub fn shortlex_words(&self, from: StateId) -> Vec<Option<Vec<SymId>>> {
        let mut words: Vec<Option<Vec<SymId>>> = vec![None; self.states()];
        words[from] = Some(Vec::new());
        let mut queue = std::collections::VecDeque::from([from]);
        while let Some(q) = queue.pop_front() {
            for s in 0..self.alphabet.len() {
                let t = self.step(q, s);
                if words[t].is_none() {
                    let mut w = words[q].clone().unwrap();
                    w.push(s);
                    words[t] = Some(w);
                    queue.push_back(t);
                }
            }
        }
        words
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.states();
        if self.initial >= n {
            return Err(AutError::BadHeader {
                line: 0,
                msg: format!("initial state {} out of range", self.initial),
            });
        }
        if self.delta.len() != n {
            return Err(AutError::BadHeader {
                line: 0,
                msg: "delta size mismatch".into(),
            });
        }
        for (q, row) in self.delta.iter().enumerate() {
            if row.len() != self.alphabet.len() {
                return Err(AutError::MissingEdge {
                    state: q,
                    symbol: "?".into(),
                });
            }
            for &t in row {
                if t >= n {
                    return Err(AutError::BadHeader {
                        line: 0,
                        msg: format!("edge target {t} out of range"),
                    });
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn run_state_on_fig2_automata() {
        let p1 = fixtures::l_inf_a();
        let w = |t: &str| p1.alphabet.word_from_ids(&p1.alphabet.parse_word(t).unwrap());
        // Reading "ab" from P_1 lands in the rank-1 state.
        let q = p1.run_state(&w("ab")).unwrap();
        assert_eq!(p1.kappa[q], Rank::Fin(1));
        assert_eq!(p1.run_state(&w("")).unwrap(), p1.initial);

        let p3 = fixtures::l_a_seq();
        let q = p3
            .run_state(&p3.alphabet.word_from_ids(&p3.alphabet.parse_word("aaa").unwrap()))
            .unwrap();
        assert_eq!(p3.kappa[q], Rank::Fin(0));
    }

    #[test]
    fn run_lasso_loop_entry() {
        // On P_1 the run of b(ba)^ω is ultimately (q1 q0)-periodic only
        // after two letters.
        let p1 = fixtures::l_inf_a();
        let w = LassoWord::parse(&p1.alphabet, "b;ba").unwrap();
        let trace = p1.run_lasso(&w).unwrap();
        assert_eq!(trace.loop_entry, 2);
        assert_eq!(trace.loop_states.len(), 2);

        // bb(ab)^ω canonicalizes to b(ba)^ω and yields the same trace.
        let w2 = LassoWord::parse(&p1.alphabet, "bb;ab").unwrap();
        assert_eq!(p1.run_lasso(&w2).unwrap(), trace);
        assert_eq!(p1.alphabet.render_ids(&trace.cycle_word()), "ab");

        let uni = fixtures::universal_ab();
        let w = LassoWord::parse(&uni.alphabet, ";a").unwrap();
        let t = uni.run_lasso(&w).unwrap();
        assert_eq!(t.loop_entry, 0);
        assert_eq!(t.loop_states.len(), 1);
    }

    #[test]
    fn acceptance_examples() {
        let p1 = fixtures::l_inf_a();
        let acc = |t: &str| p1.accepts(&LassoWord::parse(&p1.alphabet, t).unwrap()).unwrap();
        assert!(acc(";ab"));
        assert!(!acc(";b"));

        let p2 = fixtures::l_g_a();
        assert!(p2.accepts(&LassoWord::parse(&p2.alphabet, ";a").unwrap()).unwrap());
        assert!(!p2.accepts(&LassoWord::parse(&p2.alphabet, "b;a").unwrap()).unwrap());
    }

    #[test]
    fn acceptance_is_representation_invariant() {
        let p1 = fixtures::l_inf_a();
        for (u, v) in [("bb", "ab"), ("", "ab"), ("a", "b")] {
            let base = LassoWord::parse(&p1.alphabet, &format!("{u};{v}")).unwrap();
            let uv = LassoWord::parse(&p1.alphabet, &format!("{u}{v};{v}")).unwrap();
            let vv = LassoWord::parse(&p1.alphabet, &format!("{u};{v}{v}")).unwrap();
            let a = p1.accepts(&base).unwrap();
            assert_eq!(a, p1.accepts(&uv).unwrap());
            assert_eq!(a, p1.accepts(&vv).unwrap());
        }
    }
}
