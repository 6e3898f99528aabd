//! Forgetful parity automata: the robustness DPA construction.

use crate::color::{theta, Color};
use crate::dpa::{Dpa, StateId};
use crate::error::{AutError, Result};
use crate::graph::{is_empty_from, is_universal_from};
use crate::rank::Rank;
use crate::words::{canonicalize, Alphabet, LassoWord, SymId};

/// A forgetful parity automaton: ranks may be `-1`/`-2`, and a state with an
/// ε-edge has no symbol edges. A run is accepting if the first negative rank
/// it meets is `-2`, or if it never meets one and its minimal infinitely
/// recurring rank is even.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ForgetfulDpa {
    pub alphabet: Alphabet,
    pub initial: StateId,
    pub delta: Vec<Vec<Option<StateId>>>,
    pub eps: Vec<Option<StateId>>,
    pub kappa: Vec<Rank>,
}

/// One step of a colored run.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ColoredStep {
    /// Target of the symbol edge, before the ε-move resolves.
    pub raw_target: StateId,
    /// State after the ε-move (equals `raw_target` for non-sentinels).
    pub effective: StateId,
    pub color: Color,
    /// Rank observed for the letter: the raw target's rank, so sentinel
    /// crossings report `-2`/`-1` at the moment of crossing.
    pub rank: Rank,
}

/// A colored run over a lasso word, with its effective-state cycle.
#[derive(Clone, Debug)]
pub struct ColoredRun {
    pub steps: Vec<ColoredStep>,
    pub loop_entry: usize,
    pub loop_len: usize,
    /// Canonicalized representation the run was computed on.
    pub spoke: Vec<SymId>,
    pub period: Vec<SymId>,
}

impl ColoredRun {
    pub fn step_at(&self, pos: usize) -> &ColoredStep {
        if pos < self.steps.len() {
            &self.steps[pos]
        } else {
            let off = (pos - self.loop_entry) % self.loop_len;
            &self.steps[self.loop_entry + off]
        }
    }

    pub fn colors(&self, n: usize) -> Vec<Color> {
        (0..n).map(|i| self.step_at(i).color).collect()
    }

    pub fn ranks(&self, n: usize) -> Vec<Rank> {
        (0..n).map(|i| self.step_at(i).rank).collect()
    }

    pub fn cycle_word(&self) -> Vec<SymId> {
        (self.loop_entry..self.loop_entry + self.loop_len)
            .map(|pos| {
                if pos < self.spoke.len() {
                    self.spoke[pos]
                } else {
                    self.period[(pos - self.spoke.len()) % self.period.len()]
                }
            })
            .collect()
    }
}

impl ForgetfulDpa {
    pub fn states(&self) -> usize {
        self.kappa.len()
    }

    pub fn is_sentinel(&self, q: StateId) -> bool {
        self.eps[q].is_some()
    }

    /// θ-color of the symbol edge `(q, sym)`.
    pub fn edge_color(&self, q: StateId, sym: SymId) -> Color {
        let t = self.delta[q][sym].expect("colored edges exist");
        theta(self.kappa[q], self.kappa[t]).expect("automaton ranks are never infinite")
    }

    /// Structural invariants of the forgetful acceptance condition.
    pub fn validate(&self) -> Result<()> {
        let n = self.states();
        let fail = |msg: String| Err(AutError::InvalidForgetful(msg));
        if self.initial >= n {
            return fail("initial state out of range".into());
        }
        for q in 0..n {
            match self.eps[q] {
                Some(t) => {
                    if t >= n {
                        return fail(format!("eps target of {q} out of range"));
                    }
                    if self.delta[q].iter().any(|e| e.is_some()) {
                        return fail(format!("state {q} has both eps and symbol edges"));
                    }
                    if !self.kappa[q].is_negative() {
                        return fail(format!("eps state {q} must carry a sentinel rank"));
                    }
                    // The ε-return restores the spawning state, which feeds
                    // this sentinel through some symbol edge.
                    let spawner = t;
                    if !self.delta[spawner].iter().any(|e| *e == Some(q)) {
                        return fail(format!("eps edge of {q} does not return to its spawner"));
                    }
                }
                None => {
                    let total = self.delta[q].iter().all(|e| e.is_some());
                    if !total {
                        return fail(format!("non-sentinel state {q} is not total"));
                    }
                    // Negative-ranked states without an ε-edge only occur in
                    // the degenerate whole-language case, where the initial
                    // state itself is universal or doomed.
                    if self.kappa[q].is_negative() && q != self.initial {
                        return fail(format!("negative rank on non-sentinel state {q}"));
                    }
                }
            }
        }
        Ok(())
    }

    fn step_colored(&self, q: StateId, sym: SymId) -> ColoredStep {
        let raw = self.delta[q][sym].expect("effective states are total");
        let effective = self.eps[raw].unwrap_or(raw);
        ColoredStep {
            raw_target: raw,
            effective,
            color: theta(self.kappa[q], self.kappa[raw]).expect("no infinite ranks"),
            rank: self.kappa[raw],
        }
    }

    /// Runs the automaton on a lasso word: ε-moves resolve immediately after
    /// the letter that entered the sentinel, so every letter consumes exactly
    /// one colored symbol edge.
    pub fn run_colored(&self, w: &LassoWord) -> Result<ColoredRun> {
        let u = self.alphabet.word_ids(&w.spoke)?;
        let v = self.alphabet.word_ids(&w.period)?;
        Ok(self.run_colored_ids(&u, &v))
    }

    pub fn run_colored_ids(&self, spoke: &[SymId], period: &[SymId]) -> ColoredRun {
        let (u, v) = canonicalize(spoke, period);
        let m = v.len();
        let mut steps = Vec::new();
        let mut q = self.initial;
        for &s in &u {
            let st = self.step_colored(q, s);
            q = st.effective;
            steps.push(st);
        }
        let mut seen = vec![vec![usize::MAX; m]; self.states()];
        let mut pos = u.len();
        let (entry, end) = loop {
            let phase = (pos - u.len()) % m;
            if seen[q][phase] != usize::MAX {
                break (seen[q][phase], pos);
            }
            seen[q][phase] = pos;
            let st = self.step_colored(q, v[phase]);
            q = st.effective;
            steps.push(st);
            pos += 1;
        };
        steps.truncate(end);
        ColoredRun {
            steps,
            loop_entry: entry,
            loop_len: end - entry,
            spoke: u,
            period: v,
        }
    }

    /// Forgetful acceptance: clause (*) if a sentinel rank is ever observed
    /// (counting the initial state), clause (**) otherwise.
    pub fn accepts(&self, w: &LassoWord) -> Result<bool> {
        let u = self.alphabet.word_ids(&w.spoke)?;
        let v = self.alphabet.word_ids(&w.period)?;
        Ok(self.accepts_ids(&u, &v))
    }

    pub fn accepts_ids(&self, spoke: &[SymId], period: &[SymId]) -> bool {
        if self.kappa[self.initial].is_negative() {
            return self.kappa[self.initial] == Rank::NegTwo;
        }
        let run = self.run_colored_ids(spoke, period);
        for st in &run.steps {
            if st.rank.is_negative() {
                return st.rank == Rank::NegTwo;
            }
        }
        let min = run.steps[run.loop_entry..]
            .iter()
            .map(|st| st.rank)
            .min()
            .expect("non-empty loop");
        min.parity_even().expect("no infinite ranks")
    }
}

/// Builds the robustness automaton from a vigor DPA: universal states are
/// cut over to dedicated `-2` sentinels and doomed states to `-1` sentinels,
/// each with an ε-edge back to its spawning state.
pub fn forgetful_transform(vigor: &Dpa) -> Result<ForgetfulDpa> {
    let n = vigor.states();
    let reachable = vigor.reachable();
    let universal: Vec<bool> = (0..n).map(|q| is_universal_from(vigor, q)).collect();
    let empty: Vec<bool> = (0..n).map(|q| is_empty_from(vigor, q)).collect();
    for q in 0..n {
        if !reachable[q] {
            continue;
        }
        if vigor.kappa[q] == Rank::NegTwo && !universal[q] {
            return Err(AutError::InvalidForgetful(format!(
                "state {q} is ranked -2 but not universal"
            )));
        }
        if vigor.kappa[q] == Rank::NegOne && !empty[q] {
            return Err(AutError::InvalidForgetful(format!(
                "state {q} is ranked -1 but not doomed"
            )));
        }
    }
    let removed: Vec<bool> = (0..n).map(|q| universal[q] || empty[q]).collect();
    let nsyms = vigor.alphabet.len();

    if removed[vigor.initial] {
        // Degenerate whole-language case: the language from the start is
        // universal or empty. Keep one core state plus its sentinel.
        let rank = if universal[vigor.initial] {
            Rank::NegTwo
        } else {
            Rank::NegOne
        };
        let aut = ForgetfulDpa {
            alphabet: vigor.alphabet.clone(),
            initial: 0,
            delta: vec![vec![Some(1); nsyms], vec![None; nsyms]],
            eps: vec![None, Some(0)],
            kappa: vec![rank, rank],
        };
        aut.validate()?;
        return Ok(aut);
    }

    let mut remap = vec![usize::MAX; n];
    let mut kappa = Vec::new();
    for q in 0..n {
        if reachable[q] && !removed[q] {
            remap[q] = kappa.len();
            kappa.push(vigor.kappa[q]);
            if !vigor.kappa[q].is_fin() {
                return Err(AutError::InvalidForgetful(format!(
                    "surviving state {q} carries rank {}",
                    vigor.kappa[q]
                )));
            }
        }
    }
    let survivors = kappa.len();
    let mut delta: Vec<Vec<Option<StateId>>> = vec![vec![None; nsyms]; survivors];
    let mut eps: Vec<Option<StateId>> = vec![None; survivors];
    // Dedicated sentinel per (spawning state, polarity).
    let mut sentinel: Vec<[Option<StateId>; 2]> = vec![[None; 2]; survivors];
    for q in 0..n {
        if !reachable[q] || removed[q] {
            continue;
        }
        let nq = remap[q];
        for s in 0..nsyms {
            let t = vigor.step(q, s);
            if !removed[t] {
                delta[nq][s] = Some(remap[t]);
                continue;
            }
            let which = if universal[t] { 0 } else { 1 };
            let sid = match sentinel[nq][which] {
                Some(sid) => sid,
                None => {
                    let sid = kappa.len();
                    kappa.push(if which == 0 { Rank::NegTwo } else { Rank::NegOne });
                    delta.push(vec![None; nsyms]);
                    eps.push(Some(nq));
                    sentinel[nq][which] = Some(sid);
                    sid
                }
            };
            delta[nq][s] = Some(sid);
        }
    }
    let aut = ForgetfulDpa {
        alphabet: vigor.alphabet.clone(),
        initial: remap[vigor.initial],
        delta,
        eps,
        kappa,
    };
    aut.validate()?;
    Ok(aut)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    /// L_Ga's vigor DPA, written by hand: a live rank-0 state and a doomed
    /// rank-1 sink (ranked finitely, the transform cuts it semantically).
    fn g_a_vigorish() -> Dpa {
        fixtures::l_g_a()
    }

    #[test]
    fn transform_of_g_a() {
        let f = forgetful_transform(&g_a_vigorish()).unwrap();
        assert_eq!(f.states(), 2);
        assert_eq!(f.kappa[f.initial], Rank::Fin(0));
        let b = f.alphabet.id_of("b").unwrap();
        let a = f.alphabet.id_of("a").unwrap();
        assert_eq!(f.edge_color(f.initial, a), Color::Green);
        assert_eq!(f.edge_color(f.initial, b), Color::Black);
        let sentinel = f.delta[f.initial][b].unwrap();
        assert_eq!(f.kappa[sentinel], Rank::NegOne);
        assert_eq!(f.eps[sentinel], Some(f.initial));
    }

    #[test]
    fn transform_keeps_structures_without_terminal_components() {
        let f = forgetful_transform(&fixtures::l_inf_a()).unwrap();
        assert_eq!(f.states(), 2);
        assert!(f.eps.iter().all(|e| e.is_none()));
    }

    #[test]
    fn degenerate_universal_language() {
        let f = forgetful_transform(&fixtures::universal_ab()).unwrap();
        let w = LassoWord::parse(&f.alphabet, "ab;ba").unwrap();
        assert!(f.accepts(&w).unwrap());
        let run = f.run_colored(&w).unwrap();
        assert!(run.colors(4).iter().all(|&c| c == Color::White));
    }

    #[test]
    fn colored_run_of_b_a_omega() {
        let f = forgetful_transform(&g_a_vigorish()).unwrap();
        let w = LassoWord::parse(&f.alphabet, "b;a").unwrap();
        let run = f.run_colored(&w).unwrap();
        assert_eq!(
            run.colors(4),
            vec![Color::Black, Color::Green, Color::Green, Color::Green]
        );
        assert!(!f.accepts(&w).unwrap());
        assert!(f.accepts(&LassoWord::parse(&f.alphabet, ";a").unwrap()).unwrap());
    }

    #[test]
    fn serialization_round_trip() {
        let f = forgetful_transform(&g_a_vigorish()).unwrap();
        let text = crate::format::serialize_forgetful(&f);
        let re = crate::format::parse_forgetful(&text).unwrap();
        assert_eq!(re, f);
        let dot = crate::format::export_dot_forgetful(&f);
        assert!(dot.contains("color=green"));
        assert!(dot.contains("color=black"));
        assert!(dot.contains("style=dashed"));
    }
}
