//! Natural ranks of infixes and words over a rank-minimized DPA.

use crate::dpa::{Dpa, StateId};
use crate::error::Result;
use crate::graph::{is_empty_from, is_universal_from};
use crate::minimize::{congruence_classes, minimize_ranks, CongruenceClasses};
use crate::rank::Rank;
use crate::words::{FiniteWord, LassoWord, SymId};
use std::cell::RefCell;
use std::collections::HashMap;

/// Per-class witness entry: a state `s` of the spoke's congruence class, the
/// state reached from `s` over the infix read so far, and the minimal rank
/// visited on that read (including `s` itself).
pub(crate) type Entry = (StateId, StateId, u32);

/// Analysis context over one automaton: the rank-minimized DPA, its
/// congruence classes, per-state universality/emptiness flags and memo
/// tables for the rank oracles.
pub struct Analyzer {
    pub aut: Dpa,
    pub classes: CongruenceClasses,
    universal: Vec<bool>,
    empty: Vec<bool>,
    rank_memo: RefCell<HashMap<(StateId, Vec<SymId>), Rank>>,
    return_memo: RefCell<HashMap<(StateId, StateId, StateId, u32, bool), bool>>,
    pub(crate) futures_memo: RefCell<HashMap<Vec<u64>, bool>>,
}

impl Analyzer {
    /// Minimizes the ranks of `input` and prepares the analysis context.
    pub fn new(input: &Dpa) -> Result<Analyzer> {
        let aut = minimize_ranks(input)?;
        let classes = congruence_classes(&aut)?;
        let universal = (0..aut.states()).map(|q| is_universal_from(&aut, q)).collect();
        let empty = (0..aut.states()).map(|q| is_empty_from(&aut, q)).collect();
        Ok(Analyzer {
            aut,
            classes,
            universal,
            empty,
            rank_memo: RefCell::new(HashMap::new()),
            return_memo: RefCell::new(HashMap::new()),
            futures_memo: RefCell::new(HashMap::new()),
        })
    }

    pub fn is_universal_state(&self, q: StateId) -> bool {
        self.universal[q]
    }

    pub fn is_empty_state(&self, q: StateId) -> bool {
        self.empty[q]
    }

    pub fn max_rank(&self) -> u32 {
        self.aut
            .kappa
            .iter()
            .filter_map(|r| match r {
                Rank::Fin(n) => Some(*n),
                _ => None,
            })
            .max()
            .unwrap_or(0)
    }

    /// Is there a word `r` leading `x` to `s` such that the same `r` read
    /// from `y` also ends in `s` while never visiting a rank below `floor`?
    /// The `x` track is unconstrained: it is read exactly once. When
    /// `nonempty` is set the empty word does not count (the period `v·r`
    /// must be a non-empty word overall).
    fn return_reachable(&self, x: StateId, y: StateId, s: StateId, floor: u32, nonempty: bool) -> bool {
        let key = (x, y, s, floor, nonempty);
        if let Some(&v) = self.return_memo.borrow().get(&key) {
            return v;
        }
        let ok = |q: StateId| self.aut.kappa[q] >= Rank::Fin(floor);
        let result = (|| {
            if !ok(y) {
                return false;
            }
            let n = self.aut.states();
            let mut seen = vec![false; n * n];
            let mut queue = std::collections::VecDeque::new();
            if nonempty {
                // Seed with the one-step successors so the empty word is
                // not accepted, but a genuine return to the start pair is.
                for sym in 0..self.aut.alphabet.len() {
                    let (na, nb) = (self.aut.step(x, sym), self.aut.step(y, sym));
                    if ok(nb) && !seen[na * n + nb] {
                        seen[na * n + nb] = true;
                        queue.push_back((na, nb));
                    }
                }
            } else {
                seen[x * n + y] = true;
                queue.push_back((x, y));
            }
            while let Some((a, b)) = queue.pop_front() {
                if a == s && b == s {
                    return true;
                }
                for sym in 0..self.aut.alphabet.len() {
                    let (na, nb) = (self.aut.step(a, sym), self.aut.step(b, sym));
                    if ok(nb) && !seen[na * n + nb] {
                        seen[na * n + nb] = true;
                        queue.push_back((na, nb));
                    }
                }
            }
            false
        })();
        self.return_memo.borrow_mut().insert(key, result);
        result
    }

    /// Builds the witness entries for a spoke state: one per member of its
    /// congruence class, advanced over `infix`.
    pub(crate) fn entries_for(&self, spoke_state: StateId, infix: &[SymId]) -> Vec<Entry> {
        let class = self.classes.class_of[spoke_state].expect("reachable spoke state");
        self.classes.members[class]
            .iter()
            .map(|&s| {
                let mut cur = s;
                let mut min = match self.aut.kappa[s] {
                    Rank::Fin(n) => n,
                    _ => 0,
                };
                for &sym in infix {
                    cur = self.aut.step(cur, sym);
                    if let Rank::Fin(n) = self.aut.kappa[cur] {
                        min = min.min(n);
                    }
                }
                (s, cur, min)
            })
            .collect()
    }

    /// Advances witness entries by one letter.
    pub(crate) fn step_entries(&self, entries: &[Entry], sym: SymId) -> Vec<Entry> {
        entries
            .iter()
            .map(|&(s, cur, min)| {
                let next = self.aut.step(cur, sym);
                let m = match self.aut.kappa[next] {
                    Rank::Fin(n) => min.min(n),
                    _ => min,
                };
                (s, next, m)
            })
            .collect()
    }

    /// The infix rank determined by the current end state `x` and witness
    /// entries: the maximal `d` such that some class state `s` admits a
    /// period through `s` whose `v`-part (already summarized in the entry)
    /// and return path stay at rank `d` or above.
    pub(crate) fn value_of(&self, x: StateId, entries: &[Entry]) -> Rank {
        self.value_of_inner(x, entries, false)
    }

    fn value_of_inner(&self, x: StateId, entries: &[Entry], empty_infix: bool) -> Rank {
        if self.universal[x] {
            return Rank::NegTwo;
        }
        if self.empty[x] {
            return Rank::NegOne;
        }
        let mut best: Option<u32> = None;
        for &(s, cur, m) in entries {
            // Candidates run from the read's minimum downward; once a level
            // succeeds, lower levels only relax the constraint, so the first
            // hit is this witness's maximum. Levels at or below an already
            // found value cannot improve the overall maximum unless none was
            // found yet.
            let floor = best.map_or(0, |b| b as i64 + 1);
            let mut d = m as i64;
            while d >= floor {
                if self.return_reachable(x, cur, s, d as u32, empty_infix) {
                    best = Some(d as u32);
                    break;
                }
                d -= 1;
            }
        }
        match best {
            Some(d) => Rank::Fin(d),
            None => Rank::Infinite,
        }
    }

    /// Infix rank with the spoke given by a state. Follows the sentinel
    /// priority of the definition: universal end states yield `-2`, doomed
    /// end states `-1`, then the maximal achievable period rank, and `∞`
    /// when no period returns to the spoke's congruence class.
    pub fn infix_rank_states(&self, spoke_state: StateId, infix: &[SymId]) -> Rank {
        let key = (spoke_state, infix.to_vec());
        if let Some(&r) = self.rank_memo.borrow().get(&key) {
            return r;
        }
        let x = self.aut.run_ids(spoke_state, infix);
        let result = if self.universal[x] {
            Rank::NegTwo
        } else if self.empty[x] {
            Rank::NegOne
        } else {
            let entries = self.entries_for(spoke_state, infix);
            self.value_of_inner(x, &entries, infix.is_empty())
        };
        self.rank_memo.borrow_mut().insert(key, result);
        result
    }

    /// `Ω^infix(u, v)` for words over the automaton's alphabet.
    pub fn infix_rank(&self, spoke: &FiniteWord, infix: &FiniteWord) -> Result<Rank> {
        let u = self.aut.alphabet.word_ids(spoke)?;
        let v = self.aut.alphabet.word_ids(infix)?;
        let q_u = self.aut.run_ids(self.aut.initial, &u);
        Ok(self.infix_rank_states(q_u, &v))
    }

    /// `Ω^word(w)`: `-2`/`-1` if some prefix reaches a universal/doomed
    /// state, otherwise the minimal rank on the final cycle of the run.
    pub fn word_rank(&self, w: &LassoWord) -> Result<Rank> {
        let (u, v) = self.aut.lasso_ids(w)?;
        Ok(self.word_rank_ids(&u, &v))
    }

    pub fn word_rank_ids(&self, spoke: &[SymId], period: &[SymId]) -> Rank {
        let trace = self.aut.run_lasso_ids(spoke, period);
        let visited = trace.prefix_states.iter().chain(trace.loop_states.iter());
        let mut saw_universal = false;
        let mut saw_empty = false;
        for &q in visited {
            saw_universal |= self.universal[q];
            saw_empty |= self.empty[q];
        }
        if saw_universal {
            return Rank::NegTwo;
        }
        if saw_empty {
            return Rank::NegOne;
        }
        trace
            .loop_states
            .iter()
            .map(|&q| self.aut.kappa[q])
            .min()
            .expect("non-empty loop")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn word(an: &Analyzer, t: &str) -> FiniteWord {
        an.aut.alphabet.word_from_ids(&an.aut.alphabet.parse_word(t).unwrap())
    }

    fn infix(an: &Analyzer, u: &str, v: &str) -> Rank {
        an.infix_rank(&word(an, u), &word(an, v)).unwrap()
    }

    fn wr(an: &Analyzer, t: &str) -> Rank {
        an.word_rank(&LassoWord::parse(&an.aut.alphabet, t).unwrap()).unwrap()
    }

    #[test]
    fn infix_ranks_of_l_a_seq() {
        let an = Analyzer::new(&fixtures::l_a_seq()).unwrap();
        assert_eq!(infix(&an, "", "b"), Rank::Fin(3));
        assert_eq!(infix(&an, "", "a"), Rank::Fin(2));
        assert_eq!(infix(&an, "", "aa"), Rank::Fin(1));
        assert_eq!(infix(&an, "", "aaa"), Rank::Fin(0));
        // Values computed in the influential-index walkthrough.
        assert_eq!(infix(&an, "ab", ""), Rank::Fin(3));
        assert_eq!(infix(&an, "ab", "b"), Rank::Fin(3));
        assert_eq!(infix(&an, "a", "b"), Rank::Fin(3));
        assert_eq!(infix(&an, "a", "bb"), Rank::Fin(3));
        assert_eq!(infix(&an, "", "ab"), Rank::Fin(2));
        assert_eq!(infix(&an, "", "abb"), Rank::Fin(2));
        assert_eq!(infix(&an, "abba", ""), Rank::Fin(3));
        assert_eq!(infix(&an, "abba", "a"), Rank::Fin(2));
    }

    #[test]
    fn sentinel_cases() {
        let an = Analyzer::new(&fixtures::l_g_a()).unwrap();
        assert_eq!(infix(&an, "", "b"), Rank::NegOne);

        let an = Analyzer::new(&fixtures::l_avoid_debts()).unwrap();
        assert_eq!(infix(&an, "", "a"), Rank::NegTwo);
        // No continuation of b returns to the class of ε.
        assert_eq!(infix(&an, "", "b"), Rank::Infinite);
    }

    #[test]
    fn word_rank_tables() {
        let an = Analyzer::new(&fixtures::l_inf_a()).unwrap();
        assert_eq!(wr(&an, ";b"), Rank::Fin(1));
        assert_eq!(wr(&an, "aa;b"), Rank::Fin(1));
        assert_eq!(wr(&an, ";a"), Rank::Fin(0));
        assert_eq!(wr(&an, ";ab"), Rank::Fin(0));

        let an = Analyzer::new(&fixtures::l_g_a()).unwrap();
        assert_eq!(wr(&an, ";a"), Rank::Fin(0));
        assert_eq!(wr(&an, "b;a"), Rank::NegOne);
        assert_eq!(wr(&an, ";ab"), Rank::NegOne);
        assert_eq!(wr(&an, ";b"), Rank::NegOne);

        let an = Analyzer::new(&fixtures::l_a_seq()).unwrap();
        assert_eq!(wr(&an, ";b"), Rank::Fin(3));
        assert_eq!(wr(&an, ";ab"), Rank::Fin(2));
        assert_eq!(wr(&an, ";aab"), Rank::Fin(1));
        assert_eq!(wr(&an, ";a"), Rank::Fin(0));
        assert_eq!(wr(&an, ";aaab"), Rank::Fin(0));
    }

    #[test]
    fn mod2_infix_table() {
        let an = Analyzer::new(&fixtures::l_mod2()).unwrap();
        assert_eq!(infix(&an, "", "b"), Rank::Fin(2));
        assert_eq!(infix(&an, "a", "c"), Rank::Fin(2));
        assert_eq!(infix(&an, "", "c"), Rank::Fin(1));
        assert_eq!(infix(&an, "a", "b"), Rank::Fin(1));
        assert_eq!(infix(&an, "", "a"), Rank::Fin(0));
        assert_eq!(infix(&an, "a", "ca"), Rank::Fin(0));
    }

    #[test]
    fn word_rank_is_representation_invariant() {
        let an = Analyzer::new(&fixtures::l_inf_ab()).unwrap();
        for (u, v) in [("", "ab"), ("b", "ba"), ("aa", "bb"), ("", "b")] {
            let base = wr(&an, &format!("{u};{v}"));
            assert_eq!(base, wr(&an, &format!("{u}{v};{v}")));
            assert_eq!(base, wr(&an, &format!("{u};{v}{v}")));
        }
    }
}
