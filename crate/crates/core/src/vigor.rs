//! Learning the vigor DPA.
//!
//! Two kinds of machines are learned through the same observation-table
//! loop, differing only in the membership function:
//!
//! * per-class components: `f_u(x) = Ω^infix(u, dom-suf(x))`, the dominant
//!   suffix of `x` re-ranked after the class representative `u`. These match
//!   the per-class automata of the construction on its worked examples.
//! * the letter-rank machine: the natural rank of the last letter of `x`
//!   itself (the value the dominant-suffix recursion emits). Its minimal
//!   Moore machine realizes the rank correspondence by construction.
//!
//! The vigor DPA is the reachable product of the class automaton, the
//! available per-class components and the letter-rank machine; ranks come
//! from the letter-rank coordinate. On languages where the active per-class
//! component already realizes the letter ranks (all single-class fixtures
//! and the mod-2 example) the extra factor does not change the reachable
//! state space; on request/grant-style languages it supplies the ranks the
//! per-class reading provably cannot.

use crate::color::DomSufEngine;
use crate::dpa::{Dpa, StateId};
use crate::error::{AutError, Result};
use crate::infix::Analyzer;
use crate::minimize::ClassId;
use crate::rank::Rank;
use crate::words::SymId;
use std::collections::{HashMap, HashSet, VecDeque};

/// Tunables of the learners.
#[derive(Clone, Copy, Debug)]
pub struct LearnOptions {
    /// Depth of the bounded rank-agreement equivalence check. `None` picks
    /// `2 · states · (max rank + 2)`.
    pub depth: Option<usize>,
    /// Hard bound on hypothesis states before giving up.
    pub state_bound: usize,
    /// Length cap for the periodic acceptance check.
    pub lasso_len: usize,
}

impl Default for LearnOptions {
    fn default() -> Self {
        LearnOptions {
            depth: None,
            state_bound: 4096,
            lasso_len: 7,
        }
    }
}

/// A learned machine: a DPA over the learned equivalence classes plus the
/// shortlex access word and Moore output of every state.
#[derive(Clone, Debug)]
pub struct VigorComponent {
    pub dpa: Dpa,
    /// Representative of the congruence class the component belongs to
    /// (empty for the letter-rank machine).
    pub class_rep: Vec<SymId>,
    /// Shortlex access word per state.
    pub access: Vec<Vec<SymId>>,
    /// Moore output per state.
    pub output: Vec<Rank>,
}

/// Result of the full construction.
#[derive(Clone, Debug)]
pub struct VigorBuild {
    pub vigor: Dpa,
    /// Per-class components in class order; `None` where the class-anchored
    /// reading does not stabilize and the product falls back to the
    /// letter-rank factor alone.
    pub components: Vec<Option<VigorComponent>>,
    /// The letter-rank Moore machine (anchored at the initial state).
    pub letter_machine: VigorComponent,
}

/// Membership value `f_u(x)`: the rank, after the spoke `u`, of the dominant
/// suffix of `x` computed with the per-class oracle.
pub fn membership_value(an: &Analyzer, q_u: StateId, x: &[SymId]) -> Rank {
    let mut engine = DomSufEngine::new(an, q_u);
    for &sym in x {
        let (_, next) = engine.peek(sym);
        engine = next;
    }
    an.infix_rank_states(q_u, engine.dom_suffix())
}

/// Letter-rank value anchored at a state: the rank emitted for the last
/// letter of `x` by the incremental dominant-suffix recursion; the empty
/// word yields the rank of the empty infix at the anchor.
pub fn letter_rank_value(an: &Analyzer, anchor: StateId, x: &[SymId]) -> Rank {
    let mut engine = DomSufEngine::new(an, anchor);
    let mut rank = engine.current_rank();
    for &sym in x {
        let (r, next) = engine.peek(sym);
        rank = r;
        engine = next;
    }
    rank
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Membership {
    /// Dominant suffix re-ranked after the class representative.
    ClassDomSuf,
    /// The emitted letter rank itself.
    LetterRank,
}

struct Learner<'a> {
    an: &'a Analyzer,
    anchor: StateId,
    class: Option<ClassId>,
    membership: Membership,
    opts: LearnOptions,
    depth: usize,
    /// Engine state and emitted rank per queried prefix.
    engines: HashMap<Vec<SymId>, (DomSufEngine<'a>, Rank)>,
    values: HashMap<Vec<SymId>, Rank>,
}

struct Hypothesis {
    initial: usize,
    delta: Vec<Vec<usize>>,
    output: Vec<Rank>,
}

impl<'a> Learner<'a> {
    fn new(
        an: &'a Analyzer,
        anchor: StateId,
        class: Option<ClassId>,
        membership: Membership,
        opts: LearnOptions,
    ) -> Self {
        let depth = opts
            .depth
            .unwrap_or(2 * an.aut.states() * (an.max_rank() as usize + 2));
        let mut engines = HashMap::new();
        let root = DomSufEngine::new(an, anchor);
        let root_rank = root.current_rank();
        engines.insert(Vec::new(), (root, root_rank));
        Learner {
            an,
            anchor,
            class,
            membership,
            opts,
            depth,
            engines,
            values: HashMap::new(),
        }
    }

    fn engine_for(&mut self, word: &[SymId]) -> (DomSufEngine<'a>, Rank) {
        if let Some(e) = self.engines.get(word) {
            return e.clone();
        }
        let (parent, _) = self.engine_for(&word[..word.len() - 1]);
        let (rank, next) = parent.peek(word[word.len() - 1]);
        let entry = (next, rank);
        self.engines.insert(word.to_vec(), entry.clone());
        entry
    }

    fn value_at(&self, engine: &DomSufEngine<'a>, emitted: Rank) -> Rank {
        match self.membership {
            Membership::ClassDomSuf => self.an.infix_rank_states(self.anchor, engine.dom_suffix()),
            Membership::LetterRank => emitted,
        }
    }

    fn g(&mut self, word: &[SymId]) -> Rank {
        if let Some(&r) = self.values.get(word) {
            return r;
        }
        let (engine, emitted) = self.engine_for(word);
        let r = self.value_at(&engine, emitted);
        self.values.insert(word.to_vec(), r);
        r
    }

    fn row(&mut self, x: &[SymId], suffixes: &[Vec<SymId>]) -> Vec<Rank> {
        suffixes
            .iter()
            .map(|z| {
                let mut w = x.to_vec();
                w.extend_from_slice(z);
                self.g(&w)
            })
            .collect()
    }

    fn learn(&mut self) -> Result<Hypothesis> {
        let nsyms = self.an.aut.alphabet.len();
        let mut prefixes: Vec<Vec<SymId>> = vec![Vec::new()];
        let mut suffixes: Vec<Vec<SymId>> = vec![Vec::new()];
        loop {
            if prefixes.len() > self.opts.state_bound {
                return Err(AutError::Diverged {
                    bound: self.opts.state_bound,
                });
            }
            let suffix_snapshot = suffixes.clone();
            let rows: Vec<Vec<Rank>> = prefixes
                .clone()
                .iter()
                .map(|x| self.row(x, &suffix_snapshot))
                .collect();
            let mut row_index: HashMap<Vec<Rank>, usize> = HashMap::new();
            for (i, r) in rows.iter().enumerate() {
                row_index.entry(r.clone()).or_insert(i);
            }
            // Close.
            let mut unclosed = None;
            'closure: for x in prefixes.clone() {
                for s in 0..nsyms {
                    let mut xs = x.clone();
                    xs.push(s);
                    let r = self.row(&xs, &suffix_snapshot);
                    if !row_index.contains_key(&r) {
                        unclosed = Some(xs);
                        break 'closure;
                    }
                }
            }
            if let Some(xs) = unclosed {
                prefixes.push(xs);
                continue;
            }
            // Make consistent.
            let mut inconsistent = None;
            'consist: for i in 0..prefixes.len() {
                for j in i + 1..prefixes.len() {
                    if rows[i] != rows[j] {
                        continue;
                    }
                    for s in 0..nsyms {
                        let (mut a, mut b) = (prefixes[i].clone(), prefixes[j].clone());
                        a.push(s);
                        b.push(s);
                        let ra = self.row(&a, &suffix_snapshot);
                        let rb = self.row(&b, &suffix_snapshot);
                        if ra != rb {
                            let z = ra.iter().zip(rb.iter()).position(|(x, y)| x != y).unwrap();
                            let mut dist = vec![s];
                            dist.extend_from_slice(&suffix_snapshot[z]);
                            inconsistent = Some(dist);
                            break 'consist;
                        }
                    }
                }
            }
            if let Some(z) = inconsistent {
                if !suffixes.contains(&z) {
                    suffixes.push(z);
                }
                continue;
            }
            // Conjecture.
            let mut state_of_row: HashMap<Vec<Rank>, usize> = HashMap::new();
            let mut outputs: Vec<Rank> = Vec::new();
            for r in rows.iter() {
                if !state_of_row.contains_key(r) {
                    state_of_row.insert(r.clone(), outputs.len());
                    outputs.push(r[0]);
                }
            }
            let mut delta = vec![vec![0usize; nsyms]; outputs.len()];
            for (i, x) in prefixes.iter().enumerate() {
                let from = state_of_row[&rows[i]];
                for s in 0..nsyms {
                    let mut xs = x.clone();
                    xs.push(s);
                    let r = self.row(&xs, &suffix_snapshot);
                    delta[from][s] = state_of_row[&r];
                }
            }
            let hyp = Hypothesis {
                initial: state_of_row[&rows[0]],
                delta,
                output: outputs,
            };
            match self.counterexample(&hyp)? {
                None => return Ok(hyp),
                Some(ce) => {
                    for start in 0..ce.len() {
                        let suf = ce[start..].to_vec();
                        if !suffixes.contains(&suf) {
                            suffixes.push(suf);
                        }
                    }
                }
            }
        }
    }

    /// Equivalence query: bounded rank agreement over the reachable
    /// (hypothesis state, engine configuration) product, then bounded
    /// acceptance agreement against the reference automaton.
    fn counterexample(&mut self, hyp: &Hypothesis) -> Result<Option<Vec<SymId>>> {
        let nsyms = self.an.aut.alphabet.len();
        // (b) rank agreement to the configured depth.
        let mut seen: HashSet<(usize, (StateId, Vec<SymId>))> = HashSet::new();
        let (start, start_rank) = self.engine_for(&[]);
        let mut queue: VecDeque<(usize, DomSufEngine<'a>, Rank, Vec<SymId>)> =
            VecDeque::from([(hyp.initial, start.clone(), start_rank, Vec::new())]);
        seen.insert((hyp.initial, start.key()));
        while let Some((h, engine, emitted, word)) = queue.pop_front() {
            let g = self.value_at(&engine, emitted);
            if g != hyp.output[h] {
                return Ok(Some(word));
            }
            if word.len() >= self.depth {
                continue;
            }
            for s in 0..nsyms {
                let (rank, next) = engine.peek(s);
                let nh = hyp.delta[h][s];
                if seen.insert((nh, next.key())) {
                    let mut w = word.clone();
                    w.push(s);
                    queue.push_back((nh, next, rank, w));
                }
            }
        }
        // (a) acceptance agreement on lassos.
        let hyp_dpa = Dpa {
            alphabet: self.an.aut.alphabet.clone(),
            initial: hyp.initial,
            delta: hyp.delta.clone(),
            kappa: hyp.output.clone(),
        };
        let reference = self.an.aut.with_initial(self.anchor);
        let budget = 30_000usize;
        let mut period_len = 1usize;
        while period_len < self.opts.lasso_len && words_below(nsyms, period_len + 1) <= budget {
            period_len += 1;
        }
        let spokes: Vec<Vec<SymId>> = match self.membership {
            // Per-class components model periodic returns from the class
            // state only.
            Membership::ClassDomSuf => vec![Vec::new()],
            Membership::LetterRank => all_words_upto(nsyms, 2),
        };
        let periods: Vec<Vec<SymId>> = all_words_upto(nsyms, period_len)
            .into_iter()
            .filter(|w| !w.is_empty())
            .collect();
        for u in &spokes {
            for v in &periods {
                if self.membership == Membership::ClassDomSuf {
                    let target = self.an.aut.run_ids(self.anchor, v);
                    if self.an.classes.class_of[target] != self.class {
                        continue;
                    }
                }
                if hyp_dpa.accepts_ids(u, v) == reference.accepts_ids(u, v) {
                    continue;
                }
                // Locate a finite prefix u·v^k with a rank disagreement.
                let cap = (hyp_dpa.states() * self.an.aut.states()).max(4) + 2;
                for k in 1..=cap {
                    let mut p = u.clone();
                    for _ in 0..k {
                        p.extend_from_slice(v);
                    }
                    let out = hyp_output_on(hyp, &p);
                    if self.g(&p) != out {
                        return Ok(Some(p));
                    }
                }
                return Err(AutError::Diverged {
                    bound: self.opts.state_bound,
                });
            }
        }
        Ok(None)
    }
}

fn words_below(nsyms: usize, max_len: usize) -> usize {
    let mut total = 1usize;
    let mut layer = 1usize;
    for _ in 0..max_len {
        layer = layer.saturating_mul(nsyms);
        total = total.saturating_add(layer);
    }
    total
}

fn all_words_upto(nsyms: usize, max_len: usize) -> Vec<Vec<SymId>> {
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Vec<SymId>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * nsyms);
        for w in &layer {
            for s in 0..nsyms {
                let mut v = w.clone();
                v.push(s);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn hyp_output_on(hyp: &Hypothesis, word: &[SymId]) -> Rank {
    let mut q = hyp.initial;
    for &s in word {
        q = hyp.delta[q][s];
    }
    hyp.output[q]
}

/// Normalizes a hypothesis into a component: shortlex state order and
/// access words, with ranks chosen by `kappa_of`.
fn finish(
    an: &Analyzer,
    hyp: Hypothesis,
    class_rep: Vec<SymId>,
    kappa_of: impl Fn(&[SymId], Rank) -> Rank,
) -> VigorComponent {
    let pre = Dpa {
        alphabet: an.aut.alphabet.clone(),
        initial: hyp.initial,
        delta: hyp.delta.clone(),
        kappa: hyp.output.clone(),
    };
    let words = pre.shortlex_words(pre.initial);
    let mut order: Vec<usize> = (0..pre.states()).filter(|&q| words[q].is_some()).collect();
    order.sort_by(|&a, &b| {
        let (wa, wb) = (words[a].as_ref().unwrap(), words[b].as_ref().unwrap());
        (wa.len(), wa).cmp(&(wb.len(), wb))
    });
    let mut remap = vec![usize::MAX; pre.states()];
    for (new, &old) in order.iter().enumerate() {
        remap[old] = new;
    }
    let access: Vec<Vec<SymId>> = order.iter().map(|&q| words[q].clone().unwrap()).collect();
    let output: Vec<Rank> = order.iter().map(|&q| hyp.output[q]).collect();
    let kappa: Vec<Rank> = access
        .iter()
        .zip(output.iter())
        .map(|(w, out)| kappa_of(w, *out))
        .collect();
    let delta: Vec<Vec<usize>> = order
        .iter()
        .map(|&q| hyp.delta[q].iter().map(|&t| remap[t]).collect())
        .collect();
    VigorComponent {
        dpa: Dpa {
            alphabet: an.aut.alphabet.clone(),
            initial: remap[hyp.initial],
            delta,
            kappa,
        },
        class_rep,
        access,
        output,
    }
}

/// Learns the per-class component of one congruence class, ranked per the
/// construction by the infix rank of each state's shortlex-least access
/// word after the class representative.
pub fn learn_vigor_component(
    an: &Analyzer,
    class: ClassId,
    opts: LearnOptions,
) -> Result<VigorComponent> {
    let anchor = an.classes.rep_states[class];
    let mut learner = Learner::new(an, anchor, Some(class), Membership::ClassDomSuf, opts);
    let hyp = learner.learn()?;
    let rep = an.classes.representatives[class].clone();
    Ok(finish(an, hyp, rep, |w, _| an.infix_rank_states(anchor, w)))
}

/// Learns the letter-rank Moore machine anchored at the initial state; its
/// state ranks are its outputs.
pub fn learn_letter_machine(an: &Analyzer, opts: LearnOptions) -> Result<VigorComponent> {
    let mut learner = Learner::new(an, an.aut.initial, None, Membership::LetterRank, opts);
    let hyp = learner.learn()?;
    Ok(finish(an, hyp, Vec::new(), |_, out| out))
}

/// Constructs the vigor DPA: the reachable product of the class automaton,
/// the per-class components and the letter-rank machine, ranked by the
/// letter-rank coordinate.
pub fn build_vigor(input: &Dpa, opts: LearnOptions) -> Result<VigorBuild> {
    let an = Analyzer::new(input)?;
    build_vigor_with(&an, opts)
}

pub fn build_vigor_with(an: &Analyzer, opts: LearnOptions) -> Result<VigorBuild> {
    let letter_machine = learn_letter_machine(an, opts)?;
    let m = an.classes.len();
    let mut components: Vec<Option<VigorComponent>> = Vec::with_capacity(m);
    for class in 0..m {
        match learn_vigor_component(an, class, opts) {
            Ok(comp) => components.push(Some(comp)),
            // The class-anchored reading does not stabilize for every
            // language; the letter-rank factor carries the construction.
            Err(AutError::Diverged { .. }) => components.push(None),
            Err(e) => return Err(e),
        }
    }
    let nsyms = an.aut.alphabet.len();
    let comps: Vec<&VigorComponent> = components.iter().flatten().collect();
    let class_step = |c: ClassId, s: SymId| -> ClassId {
        let q = an.aut.step(an.classes.rep_states[c], s);
        an.classes.class_of[q].expect("reachable")
    };
    let start = (
        an.classes.class_of[an.aut.initial].expect("initial is reachable"),
        comps.iter().map(|c| c.dpa.initial).collect::<Vec<_>>(),
        letter_machine.dpa.initial,
    );
    let mut index: HashMap<(ClassId, Vec<usize>, usize), usize> = HashMap::new();
    let mut order = vec![start.clone()];
    index.insert(start, 0);
    let mut delta: Vec<Vec<usize>> = Vec::new();
    let mut kappa: Vec<Rank> = Vec::new();
    let mut pos = 0;
    while pos < order.len() {
        let (c, qs, lq) = order[pos].clone();
        kappa.push(letter_machine.output[lq]);
        let mut row = Vec::with_capacity(nsyms);
        for s in 0..nsyms {
            let key = (
                class_step(c, s),
                qs.iter()
                    .enumerate()
                    .map(|(i, &q)| comps[i].dpa.step(q, s))
                    .collect::<Vec<_>>(),
                letter_machine.dpa.step(lq, s),
            );
            let id = match index.get(&key) {
                Some(&id) => id,
                None => {
                    let id = order.len();
                    index.insert(key.clone(), id);
                    order.push(key);
                    id
                }
            };
            row.push(id);
        }
        delta.push(row);
        pos += 1;
    }
    let vigor = Dpa {
        alphabet: an.aut.alphabet.clone(),
        initial: 0,
        delta,
        kappa,
    };
    Ok(VigorBuild {
        vigor,
        components,
        letter_machine,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::lang_equiv;
    use crate::words::LassoWord;

    fn ranks_of(dpa: &Dpa) -> Vec<i64> {
        let mut v: Vec<i64> = dpa.kappa.iter().map(|r| r.to_int().unwrap()).collect();
        v.sort();
        v
    }

    #[test]
    fn membership_values() {
        let an = Analyzer::new(&fixtures::l_a_seq()).unwrap();
        let x = an.aut.alphabet.parse_word("baaa").unwrap();
        assert_eq!(membership_value(&an, an.aut.initial, &x), Rank::Fin(0));
        assert_eq!(membership_value(&an, an.aut.initial, &[]), Rank::Fin(3));

        let an = Analyzer::new(&fixtures::l_inf_ab()).unwrap();
        let x = an.aut.alphabet.parse_word("ba").unwrap();
        assert_eq!(membership_value(&an, an.aut.initial, &x), Rank::Fin(0));
    }

    #[test]
    fn a_seq_component_is_the_flower() {
        let an = Analyzer::new(&fixtures::l_a_seq()).unwrap();
        let comp = learn_vigor_component(&an, 0, LearnOptions::default()).unwrap();
        assert_eq!(comp.dpa.states(), 4);
        assert_eq!(ranks_of(&comp.dpa), vec![0, 1, 2, 3]);
        assert!(lang_equiv(&comp.dpa, comp.dpa.initial, &an.aut, an.aut.initial).unwrap());
    }

    #[test]
    fn mod2_components_and_product() {
        let build = build_vigor(&fixtures::l_mod2(), LearnOptions::default()).unwrap();
        assert_eq!(build.components.len(), 2);
        for comp in &build.components {
            let comp = comp.as_ref().expect("mod2 components converge");
            assert_eq!(comp.dpa.states(), 3);
            assert_eq!(ranks_of(&comp.dpa), vec![0, 1, 2]);
        }
        assert_eq!(build.vigor.states(), 7);
        assert_eq!(ranks_of(&build.vigor), vec![0, 0, 1, 1, 2, 2, 2]);
        let input = fixtures::l_mod2();
        assert!(lang_equiv(&build.vigor, 0, &input, input.initial).unwrap());
    }

    #[test]
    fn inf_ab_vigor_is_the_five_state_automaton() {
        let build = build_vigor(&fixtures::l_inf_ab(), LearnOptions::default()).unwrap();
        assert_eq!(build.vigor.states(), 5);
        assert_eq!(ranks_of(&build.vigor), vec![0, 0, 1, 1, 1]);
        let input = fixtures::l_inf_ab();
        assert!(lang_equiv(&build.vigor, 0, &input, input.initial).unwrap());
    }

    #[test]
    fn g_a_vigor_carries_the_doomed_class() {
        let build = build_vigor(&fixtures::l_g_a(), LearnOptions::default()).unwrap();
        let input = fixtures::l_g_a();
        assert!(lang_equiv(&build.vigor, 0, &input, input.initial).unwrap());
        let mut ranks = build.vigor.kappa.clone();
        ranks.sort();
        assert_eq!(ranks[ranks.len() - 1], Rank::Fin(0));
        assert!(ranks[..ranks.len() - 1].iter().all(|r| *r == Rank::NegOne));
        let w = LassoWord::parse(&build.vigor.alphabet, "b;a").unwrap();
        assert!(!build.vigor.accepts(&w).unwrap());
        let robust = crate::forgetful::forgetful_transform(&build.vigor).unwrap();
        assert_eq!(robust.states(), 2);
    }

    #[test]
    fn request_grant_vigor_ranks_waits() {
        // The waits of a pending request rank 1, the request itself and the
        // grant rank 0; the letter-rank factor provides exactly this.
        let input = fixtures::l_no_redundant_grants();
        let build = build_vigor(&input, LearnOptions::default()).unwrap();
        assert!(lang_equiv(&build.vigor, 0, &input, input.initial).unwrap());
        let al = &input.alphabet;
        let w = al.parse_word("rn,nn,nn,ng").unwrap();
        let mut q = build.vigor.initial;
        let mut got = Vec::new();
        for &s in &w {
            q = build.vigor.step(q, s);
            got.push(build.vigor.kappa[q]);
        }
        assert_eq!(
            got,
            vec![Rank::Fin(0), Rank::Fin(1), Rank::Fin(1), Rank::Fin(0)]
        );
    }

    #[test]
    fn blowup_family() {
        let build = build_vigor(&fixtures::l_two(), LearnOptions::default()).unwrap();
        assert!(build.vigor.states() >= 3, "got {}", build.vigor.states());
        let build = build_vigor(&fixtures::l_three(), LearnOptions::default()).unwrap();
        assert!(build.vigor.states() >= 7, "got {}", build.vigor.states());
    }
}
