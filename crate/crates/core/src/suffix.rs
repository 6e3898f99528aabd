//! Influential indices, dominant suffixes, reset points and letter ranks.
//!
//! Positions are 1-based as in the rank shorthand `ρ(j, k) =
//! Ω^infix(w[..j), w[j..k])`; index 0 is clamped to 1, so `ρ(0, 0)` is the
//! rank of the empty infix after the empty spoke (the gray `k = 0` table
//! entry).

use crate::dpa::StateId;
use crate::error::{AutError, Result};
use crate::infix::{Analyzer, Entry};
use crate::rank::Rank;
use crate::words::{FiniteWord, LassoWord, SymId};

/// Rank oracle over a fixed ambient word, anchored at a state: the spoke of
/// `ρ(j, k)` is the anchor's context extended by `word[..j)`.
pub struct RankOracle<'a> {
    pub an: &'a Analyzer,
    word: Vec<SymId>,
    /// `states[j]` is the state after `j` letters from the anchor.
    states: Vec<StateId>,
}

impl<'a> RankOracle<'a> {
    pub fn new_plain(an: &'a Analyzer, word: Vec<SymId>) -> Self {
        Self::new_anchored(an, an.aut.initial, word)
    }

    pub fn new_anchored(an: &'a Analyzer, anchor: StateId, word: Vec<SymId>) -> Self {
        let mut states = Vec::with_capacity(word.len() + 1);
        states.push(anchor);
        let mut q = anchor;
        for &s in &word {
            q = an.aut.step(q, s);
            states.push(q);
        }
        RankOracle { an, word, states }
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn word(&self) -> &[SymId] {
        &self.word
    }

    pub fn push(&mut self, sym: SymId) {
        let q = self.an.aut.step(*self.states.last().unwrap(), sym);
        self.word.push(sym);
        self.states.push(q);
    }

    pub fn truncate(&mut self, len: usize) {
        self.word.truncate(len);
        self.states.truncate(len + 1);
    }

    fn spoke_state(&self, j: usize) -> StateId {
        self.states[j.max(1) - 1]
    }

    pub(crate) fn spoke_state_public(&self, j: usize) -> StateId {
        self.spoke_state(j)
    }

    /// `ρ(j, k)`: rank of the infix `word[j..k]` after the spoke `word[..j)`.
    /// Valid for `0 ≤ j ≤ k + 1`; `j = k + 1` denotes the empty infix.
    pub fn rho(&self, j: usize, k: usize) -> Rank {
        let j0 = j.max(1);
        debug_assert!(j0 <= k + 1 && k <= self.word.len());
        self.an
            .infix_rank_states(self.spoke_state(j), &self.word[j0 - 1..k])
    }
}

/// Def. of an influential index: position `k` strictly decreases the rank of
/// some suffix starting in `[i..k]` down to the rank of the full window.
pub fn is_influential(o: &RankOracle, i: usize, k: usize) -> bool {
    if i >= k {
        return false;
    }
    let target = o.rho(i, k);
    (i.max(1)..=k).any(|j| o.rho(j, k) < o.rho(j, k - 1) && o.rho(j, k) == target)
}

/// Start of the predominant suffix of `word[i..k]`.
pub fn predominant_index(o: &RankOracle, i: usize, k: usize) -> usize {
    let lo = i.max(1);
    if k == 0 {
        return 0;
    }
    if is_influential(o, i, k) {
        // Shortest suffix with the rank of the whole window.
        let target = o.rho(i, k);
        (lo..=k).rev().find(|&j| o.rho(j, k) == target).unwrap_or(lo)
    } else {
        // Longest suffix with the rank of the last letter alone.
        let target = o.rho(k, k);
        (lo..=k).find(|&l| o.rho(l, k) == target).unwrap_or(k)
    }
}

/// Start of the dominant suffix of `word[i..k]`. In the influential case it
/// coincides with the predominant index; otherwise the predominant suffix is
/// shortened as far as the rank future (over all continuations) stays the
/// same.
pub fn dominant_index(o: &RankOracle, i: usize, k: usize) -> usize {
    if k == 0 {
        return 0;
    }
    if is_influential(o, i, k) {
        return predominant_index(o, i, k);
    }
    let l = predominant_index(o, i, k);
    let target = o.rho(l, k);
    for j in (l + 1..=k).rev() {
        if o.rho(j, k) == target && futures_equal(o, j, l, k) {
            return j;
        }
    }
    l
}

/// Decides `Ω^infix(w[..j), w[j..k]·v) == Ω^infix(w[..l), w[l..k]·v)` for all
/// continuations `v` by exploring the finite configuration space of (shared
/// end state, per-side witness entries).
fn futures_equal(o: &RankOracle, j: usize, l: usize, k: usize) -> bool {
    let an = o.an;
    let side = |start: usize| an.entries_for(o.spoke_state(start), &o.word()[start.max(1) - 1..k]);
    let x = o.states[k];
    explore_futures(an, x, side(j), side(l))
}

fn config_key(x: StateId, a: &[Entry], b: &[Entry]) -> Vec<u64> {
    let mut key = Vec::with_capacity(1 + 3 * (a.len() + b.len()));
    key.push(x as u64);
    for &(s, cur, m) in a.iter().chain(b.iter()) {
        key.push(s as u64);
        key.push(cur as u64);
        key.push(m as u64);
    }
    key
}

pub(crate) fn explore_futures(
    an: &Analyzer,
    x0: StateId,
    a0: Vec<Entry>,
    b0: Vec<Entry>,
) -> bool {
    let start_key = config_key(x0, &a0, &b0);
    if let Some(&v) = an.futures_memo.borrow().get(&start_key) {
        return v;
    }
    let nsyms = an.aut.alphabet.len();
    let mut seen = std::collections::HashSet::new();
    let mut closure: Vec<Vec<u64>> = Vec::new();
    let mut queue = std::collections::VecDeque::from([(x0, a0, b0)]);
    seen.insert(start_key.clone());
    let mut ok = true;
    'bfs: while let Some((x, a, b)) = queue.pop_front() {
        if an.value_of(x, &a) != an.value_of(x, &b) {
            ok = false;
            break 'bfs;
        }
        closure.push(config_key(x, &a, &b));
        // Universal and doomed end states are absorbing: both sides stay at
        // the same sentinel forever.
        if an.is_universal_state(x) || an.is_empty_state(x) {
            continue;
        }
        for sym in 0..nsyms {
            let nx = an.aut.step(x, sym);
            let na = an.step_entries(&a, sym);
            let nb = an.step_entries(&b, sym);
            let key = config_key(nx, &na, &nb);
            if let Some(&v) = an.futures_memo.borrow().get(&key) {
                if v {
                    continue;
                }
                ok = false;
                break 'bfs;
            }
            if seen.insert(key) {
                queue.push_back((nx, na, nb));
            }
        }
    }
    let mut memo = an.futures_memo.borrow_mut();
    if ok {
        // Every configuration in the closure has an all-equal closure itself.
        for key in closure {
            memo.insert(key, true);
        }
        memo.insert(start_key, true);
    } else {
        memo.insert(start_key, false);
    }
    ok
}

/// Reset points `r_w(1), …, r_w(|w|)` via the incremental recursion
/// `r_w(k) = dom-ind(w, r_w(k-1), k)`.
pub fn reset_points(o: &RankOracle) -> Vec<usize> {
    let mut out = Vec::with_capacity(o.len());
    let mut prev = 0usize;
    for k in 1..=o.len() {
        let r = dominant_index(o, prev, k);
        out.push(r);
        prev = r;
    }
    out
}

/// `Ω^letter(w, k)`: rank of the dominant suffix ending at `k`; `k = 0`
/// yields `ρ(0, 0)`.
pub fn letter_rank(o: &RankOracle, k: usize) -> Rank {
    if k == 0 {
        return o.rho(0, 0);
    }
    let resets = reset_points(o);
    o.rho(resets[k - 1], k)
}

/// Per-position analysis record.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LetterAnalysis {
    pub index: usize,
    pub letter: crate::words::Symbol,
    pub influential: bool,
    /// Start of the predominant suffix of the whole prefix (`i = 0`), as in
    /// the paper's tables.
    pub predom_index: usize,
    pub reset_point: usize,
    pub dom_suffix: FiniteWord,
    pub letter_rank: Rank,
}

/// Analysis of all positions of a finite word with the plain oracle.
pub fn analyze_word(an: &Analyzer, w: &FiniteWord) -> Result<Vec<LetterAnalysis>> {
    let ids = an.aut.alphabet.word_ids(w)?;
    let o = RankOracle::new_plain(an, ids);
    Ok(analyze_oracle(&o, o.len()))
}

fn analyze_oracle(o: &RankOracle, upto: usize) -> Vec<LetterAnalysis> {
    let mut out = Vec::with_capacity(upto);
    let mut prev = 0usize;
    for k in 1..=upto {
        let influential = is_influential(o, prev, k);
        let r = dominant_index(o, prev, k);
        let entry = LetterAnalysis {
            index: k,
            letter: o.an.aut.alphabet.symbol(o.word()[k - 1]).clone(),
            influential,
            predom_index: predominant_index(o, 0, k),
            reset_point: r,
            dom_suffix: o.an.aut.alphabet.word_from_ids(&o.word()[r - 1..k]),
            letter_rank: o.rho(r, k),
        };
        out.push(entry);
        prev = r;
    }
    out
}

/// Letter analysis of a lasso word: exact entries for a finite unrolling,
/// plus the eventually-periodic structure of the rank stream.
#[derive(Clone, Debug)]
pub struct LassoLetterAnalysis {
    /// Rank before the first position (`ρ(0,0)`, the gray table entry).
    pub gray_rank: Rank,
    pub entries: Vec<LetterAnalysis>,
    /// 1-based position where the periodic part of the stream starts.
    pub loop_start: usize,
    pub loop_len: usize,
    /// Minimal rank occurring infinitely often in the letter-rank stream.
    pub min_inf: Rank,
}

/// Analyzes a lasso word with the plain oracle until the analysis
/// configuration cycles, computing at least `min_positions` entries.
///
/// Two cycle detectors run side by side. The exact one keys on (run
/// configuration, distance back to the reset point) and covers every word
/// whose dominant suffixes stay bounded. Some words keep extending their
/// dominant suffix forever (the reset point sticks); for those the stream is
/// keyed on the semantic profile of the stuck reset — the current end state
/// and the class-witness entries evolved from the reset point — which lives
/// in a finite space. The second detector extrapolates from a repetition of
/// that profile; the rank-correspondence suite independently cross-checks
/// the extrapolated streams against the learned automaton route.
pub fn analyze_lasso(
    an: &Analyzer,
    w: &LassoWord,
    min_positions: usize,
) -> Result<LassoLetterAnalysis> {
    let (spoke, period) = an.aut.lasso_ids(w)?;
    analyze_lasso_ids(an, &spoke, &period, min_positions)
}

pub fn analyze_lasso_ids(
    an: &Analyzer,
    spoke: &[SymId],
    period: &[SymId],
    min_positions: usize,
) -> Result<LassoLetterAnalysis> {
    let trace = an.aut.run_lasso_ids(spoke, period);
    let (u, v) = (trace.spoke.clone(), trace.period.clone());
    let run_entry = trace.loop_entry;
    let run_period = trace.loop_states.len();

    let cap = u.len()
        + v.len() * ((an.aut.states() + 2) * (an.max_rank() as usize + 3) * 8 + 32)
        + min_positions;
    let mut o = RankOracle::new_plain(an, Vec::new());
    let gray_rank = o.rho(0, 0);
    let mut entries = Vec::new();
    let mut prev = 0usize;
    let mut seen: std::collections::HashMap<(usize, usize), usize> = std::collections::HashMap::new();
    // Stuck-reset tracking for the profile detector.
    let mut stuck_since = 0usize;
    let mut profile: Option<(StateId, Vec<crate::infix::Entry>)> = None;
    let mut seen_profiles: std::collections::HashMap<Vec<u64>, usize> =
        std::collections::HashMap::new();
    let mut cycle: Option<(usize, usize)> = None;

    let mut k = 0usize;
    while k < cap {
        k += 1;
        let sym = trace.letter_at(k - 1);
        o.push(sym);
        let influential = is_influential(&o, prev, k);
        let r = dominant_index(&o, prev, k);
        entries.push(LetterAnalysis {
            index: k,
            letter: an.aut.alphabet.symbol(o.word()[k - 1]).clone(),
            influential,
            predom_index: predominant_index(&o, 0, k),
            reset_point: r,
            dom_suffix: an.aut.alphabet.word_from_ids(&o.word()[r - 1..k]),
            letter_rank: o.rho(r, k),
        });
        // Exact detector.
        if cycle.is_none() && k >= run_entry && r >= run_entry + 1 {
            let key = ((k - run_entry) % run_period, k - r);
            if let Some(&k1) = seen.get(&key) {
                cycle = Some((k1, k));
            } else {
                seen.insert(key, k);
            }
        }
        // Profile detector for stuck resets.
        if cycle.is_none() {
            if r == prev && prev != 0 {
                if let Some((x, ents)) = profile.take() {
                    let nx = an.aut.step(x, sym);
                    profile = Some((nx, an.step_entries(&ents, sym)));
                }
            } else {
                stuck_since = k;
                profile = None;
            }
            if profile.is_none() {
                let spoke_state = o_spoke_state(&o, r);
                let ents = an.entries_for(spoke_state, &o.word()[r - 1..k]);
                profile = Some((an.aut.run_ids(spoke_state, &o.word()[r - 1..k]), ents));
            }
            if k >= u.len() && stuck_since <= k.saturating_sub(v.len()) {
                let (x, ents) = profile.as_ref().unwrap();
                let mut key: Vec<u64> = vec![r as u64, ((k - u.len()) % v.len()) as u64, *x as u64];
                for &(s, cur, m) in ents {
                    key.extend([s as u64, cur as u64, m as u64]);
                }
                if let Some(&k1) = seen_profiles.get(&key) {
                    if k1 >= stuck_since {
                        cycle = Some((k1, k));
                    }
                } else {
                    seen_profiles.insert(key, k);
                }
            }
        }
        prev = r;
        if let Some((k1, k2)) = cycle {
            if k >= min_positions && k >= k2 {
                let min_inf = entries[k1..k2]
                    .iter()
                    .map(|e| e.letter_rank)
                    .min()
                    .expect("non-empty cycle");
                return Ok(LassoLetterAnalysis {
                    gray_rank,
                    entries,
                    loop_start: k1 + 1,
                    loop_len: k2 - k1,
                    min_inf,
                });
            }
        }
    }
    Err(AutError::AnalysisCap(cap))
}

fn o_spoke_state(o: &RankOracle, r: usize) -> StateId {
    o.spoke_state_public(r)
}

/// First `n` positions of the lasso's letter analysis.
pub fn letter_table(an: &Analyzer, w: &LassoWord, n: usize) -> Result<Vec<LetterAnalysis>> {
    let mut full = analyze_lasso(an, w, n)?;
    full.entries.truncate(n);
    Ok(full.entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn oracle_for<'a>(an: &'a Analyzer, w: &str) -> RankOracle<'a> {
        RankOracle::new_plain(an, an.aut.alphabet.parse_word(w).unwrap())
    }

    #[test]
    fn influential_example() {
        let an = Analyzer::new(&fixtures::l_a_seq()).unwrap();
        let o = oracle_for(&an, "abbaaaaabbba");
        assert!(!is_influential(&o, 1, 3));
        assert!(is_influential(&o, 1, 5));
        // An index whose letter changes no suffix rank is never influential.
        assert!(!is_influential(&o, 1, 2));
    }

    #[test]
    fn table_one_field_for_field() {
        let an = Analyzer::new(&fixtures::l_a_seq()).unwrap();
        let w = an.aut.alphabet.word_from_ids(&an.aut.alphabet.parse_word("abbaaaaab").unwrap());
        let rows = analyze_word(&an, &w).unwrap();
        let flags: Vec<bool> = rows.iter().map(|r| r.influential).collect();
        assert_eq!(flags, vec![true, false, false, true, true, true, true, true, false]);
        let resets: Vec<usize> = rows.iter().map(|r| r.reset_point).collect();
        assert_eq!(resets, vec![1, 2, 3, 4, 4, 4, 5, 6, 9]);
        let predoms: Vec<String> = rows
            .iter()
            .map(|r| {
                let j = r.predom_index;
                an.aut.alphabet.render_ids(
                    &an.aut.alphabet.parse_word("abbaaaaab").unwrap()[j - 1..r.index],
                )
            })
            .collect();
        assert_eq!(predoms, vec!["a", "b", "bb", "a", "aa", "aaa", "aaa", "aaa", "b"]);
        let doms: Vec<String> = rows
            .iter()
            .map(|r| an.aut.alphabet.render_ids(&an.aut.alphabet.word_ids(&r.dom_suffix).unwrap()))
            .collect();
        assert_eq!(doms, vec!["a", "b", "b", "a", "aa", "aaa", "aaa", "aaa", "b"]);
        let ranks: Vec<Rank> = rows.iter().map(|r| r.letter_rank).collect();
        let fin: Vec<Rank> = [2, 3, 3, 2, 1, 0, 0, 0, 3].iter().map(|&n| Rank::Fin(n)).collect();
        assert_eq!(ranks, fin);

        let o = oracle_for(&an, "");
        assert_eq!(o.rho(0, 0), Rank::Fin(3));
    }

    #[test]
    fn table_two_field_for_field() {
        let an = Analyzer::new(&fixtures::l_inf_ab()).unwrap();
        let raw = "bbaababbb";
        let w = an.aut.alphabet.word_from_ids(&an.aut.alphabet.parse_word(raw).unwrap());
        let rows = analyze_word(&an, &w).unwrap();
        let flags: Vec<bool> = rows.iter().map(|r| r.influential).collect();
        assert_eq!(flags, vec![false, false, true, false, true, true, true, false, false]);
        let resets: Vec<usize> = rows.iter().map(|r| r.reset_point).collect();
        assert_eq!(resets, vec![1, 2, 2, 4, 4, 5, 6, 8, 9]);
        let predoms: Vec<String> = rows
            .iter()
            .map(|r| {
                an.aut
                    .alphabet
                    .render_ids(&an.aut.alphabet.parse_word(raw).unwrap()[r.predom_index - 1..r.index])
            })
            .collect();
        assert_eq!(predoms, vec!["b", "bb", "ba", "aa", "ab", "ba", "ab", "bb", "bbb"]);
        let doms: Vec<String> = rows
            .iter()
            .map(|r| an.aut.alphabet.render_ids(&an.aut.alphabet.word_ids(&r.dom_suffix).unwrap()))
            .collect();
        assert_eq!(doms, vec!["b", "b", "ba", "a", "ab", "ba", "ab", "b", "b"]);
        let ranks: Vec<Rank> = rows.iter().map(|r| r.letter_rank).collect();
        let fin: Vec<Rank> = [1, 1, 0, 1, 0, 0, 0, 1, 1].iter().map(|&n| Rank::Fin(n)).collect();
        assert_eq!(ranks, fin);

        let o = oracle_for(&an, "");
        assert_eq!(o.rho(0, 0), Rank::Fin(1));
    }

    #[test]
    fn reset_points_of_empty_word() {
        let an = Analyzer::new(&fixtures::l_a_seq()).unwrap();
        let o = oracle_for(&an, "");
        assert!(reset_points(&o).is_empty());
    }

    #[test]
    fn letter_table_of_a_omega() {
        let an = Analyzer::new(&fixtures::l_a_seq()).unwrap();
        let w = LassoWord::parse(&an.aut.alphabet, ";a").unwrap();
        let rows = letter_table(&an, &w, 5).unwrap();
        let ranks: Vec<Rank> = rows.iter().map(|r| r.letter_rank).collect();
        let fin: Vec<Rank> = [2, 1, 0, 0, 0].iter().map(|&n| Rank::Fin(n)).collect();
        assert_eq!(ranks, fin);

        let single = letter_table(&an, &LassoWord::parse(&an.aut.alphabet, ";b").unwrap(), 1).unwrap();
        assert_eq!(single[0].reset_point, 1);
    }

    #[test]
    fn min_inf_matches_word_rank() {
        let an = Analyzer::new(&fixtures::l_inf_ab()).unwrap();
        for t in [";ab", ";aabb", ";b", "ba;ab"] {
            let w = LassoWord::parse(&an.aut.alphabet, t).unwrap();
            let full = analyze_lasso(&an, &w, 1).unwrap();
            assert_eq!(full.min_inf, an.word_rank(&w).unwrap(), "word {t}");
        }
    }
}
