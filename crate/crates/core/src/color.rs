//! Letter colors, forgetful word versions, and infix scores.

use crate::dpa::StateId;
use crate::error::{AutError, Result};
use crate::infix::Analyzer;
use crate::rank::Rank;
use crate::rational::Ratio;
use crate::suffix::{dominant_index, RankOracle};
use crate::words::{FiniteWord, LassoWord, SymId};

/// The five letter colors.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Color {
    White,
    Green,
    Yellow,
    Red,
    Black,
}

impl std::fmt::Display for Color {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Color::White => "white",
            Color::Green => "green",
            Color::Yellow => "yellow",
            Color::Red => "red",
            Color::Black => "black",
        };
        write!(f, "{s}")
    }
}

/// The θ color function on a rank step `d → d'`. Sentinel targets win, then
/// rank increases are yellow, and otherwise the parity of `d'` decides.
pub fn theta(d: Rank, d_next: Rank) -> Result<Color> {
    if d == Rank::Infinite || d_next == Rank::Infinite {
        return Err(AutError::InfiniteRank);
    }
    Ok(match d_next {
        Rank::NegTwo => Color::White,
        Rank::NegOne => Color::Black,
        _ if d < d_next => Color::Yellow,
        _ if d_next.parity_even() == Some(true) => Color::Green,
        _ => Color::Red,
    })
}

/// Color counts of an infix.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct ColorCounts {
    pub white: usize,
    pub green: usize,
    pub yellow: usize,
    pub red: usize,
    pub black: usize,
}

impl ColorCounts {
    pub fn of(colors: &[Color]) -> ColorCounts {
        let mut c = ColorCounts::default();
        for col in colors {
            match col {
                Color::White => c.white += 1,
                Color::Green => c.green += 1,
                Color::Yellow => c.yellow += 1,
                Color::Red => c.red += 1,
                Color::Black => c.black += 1,
            }
        }
        c
    }

    pub fn total(&self) -> usize {
        self.white + self.green + self.yellow + self.red + self.black
    }
}

/// Score of an infix: `(w - b, g - r)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Score {
    pub wb: i64,
    pub gr: i64,
}

/// Averaged score with exact rational components.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct AvgScore {
    pub wb: Ratio,
    pub gr: Ratio,
}

impl AvgScore {
    pub const ZERO: AvgScore = AvgScore {
        wb: Ratio::ZERO,
        gr: Ratio::ZERO,
    };
}

impl std::fmt::Display for AvgScore {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.wb, self.gr)
    }
}

/// Counts, score and averaged score of a non-empty color sequence.
pub fn score(colors: &[Color]) -> Result<(ColorCounts, Score, AvgScore)> {
    if colors.is_empty() {
        return Err(AutError::EmptyInfix);
    }
    let counts = ColorCounts::of(colors);
    let score = Score {
        wb: counts.white as i64 - counts.black as i64,
        gr: counts.green as i64 - counts.red as i64,
    };
    let len = colors.len() as i64;
    let avg = AvgScore {
        wb: Ratio::new(score.wb, len),
        gr: Ratio::new(score.gr, len),
    };
    Ok((counts, score, avg))
}

/// Incremental dominant-suffix engine over a growing word, anchored at a
/// state. Exploits the idempotence corollary: the dominant suffix of `x·σ`
/// equals the dominant suffix of `D·σ` where `D` is the dominant suffix of
/// `x`, computed in the true left context.
#[derive(Clone)]
pub struct DomSufEngine<'a> {
    an: &'a Analyzer,
    /// State after the elided prefix (everything before the dominant suffix).
    before: StateId,
    dom: Vec<SymId>,
}

impl<'a> DomSufEngine<'a> {
    pub fn new(an: &'a Analyzer, anchor: StateId) -> Self {
        DomSufEngine {
            an,
            before: anchor,
            dom: Vec::new(),
        }
    }

    /// Key identifying the engine's analysis state.
    pub fn key(&self) -> (StateId, Vec<SymId>) {
        (self.before, self.dom.clone())
    }

    pub fn dom_suffix(&self) -> &[SymId] {
        &self.dom
    }

    /// Letter rank the next symbol would get, together with the successor
    /// engine state.
    pub fn peek(&self, sym: SymId) -> (Rank, DomSufEngine<'a>) {
        let mut word = self.dom.clone();
        word.push(sym);
        let o = RankOracle::new_anchored(self.an, self.before, word.clone());
        let k = word.len();
        // The start of the current dominant suffix is the previous reset
        // point, so the incremental step computes one dominant index wrt it.
        let r = dominant_index(&o, 1, k);
        let rank = o.rho(r, k);
        let next = DomSufEngine {
            an: self.an,
            before: self.an.aut.run_ids(self.before, &word[..r - 1]),
            dom: word[r - 1..].to_vec(),
        };
        (rank, next)
    }

    /// Rank of the current word's last letter (`ρ(0,0)` for the empty word).
    pub fn current_rank(&self) -> Rank {
        let o = RankOracle::new_anchored(self.an, self.before, self.dom.clone());
        if self.dom.is_empty() {
            o.rho(0, 0)
        } else {
            o.rho(1, self.dom.len())
        }
    }
}

/// Forgetful version of a finite word: letters whose appended letter rank is
/// negative are dropped.
pub fn forgetful_prefix(an: &Analyzer, prefix: &FiniteWord) -> Result<FiniteWord> {
    let ids = an.aut.alphabet.word_ids(prefix)?;
    let mut engine = DomSufEngine::new(an, an.aut.initial);
    let mut kept = Vec::new();
    for &sym in &ids {
        let (rank, next) = engine.peek(sym);
        if rank >= Rank::Fin(0) {
            kept.push(sym);
            engine = next;
        }
    }
    Ok(an.aut.alphabet.word_from_ids(&kept))
}

/// Streaming semantic colorizer: maintains the forgetful prefix (through the
/// dominant-suffix engine) and the rank of its last kept letter.
pub struct ColorStream<'a> {
    engine: DomSufEngine<'a>,
    current: Rank,
}

impl<'a> ColorStream<'a> {
    pub fn new(an: &'a Analyzer) -> Self {
        let engine = DomSufEngine::new(an, an.aut.initial);
        let current = engine.current_rank();
        ColorStream { engine, current }
    }

    pub fn key(&self) -> (StateId, Vec<SymId>, Rank) {
        let (s, d) = self.engine.key();
        (s, d, self.current)
    }

    /// Consumes one letter, returning its color and judged rank.
    pub fn step(&mut self, sym: SymId) -> Result<(Color, Rank)> {
        let (rank, next) = self.engine.peek(sym);
        let color = theta(self.current, rank)?;
        if rank >= Rank::Fin(0) {
            self.engine = next;
            self.current = rank;
        }
        Ok((color, rank))
    }
}

/// Semantic colors of the first `n` positions of a lasso word. This is the
/// direct path used as the oracle against the robustness DPA's edge colors.
pub fn letter_colors(an: &Analyzer, w: &LassoWord, n: usize) -> Result<Vec<Color>> {
    let (u, v) = an.aut.lasso_ids(w)?;
    let mut stream = ColorStream::new(an);
    let mut out = Vec::with_capacity(n);
    for pos in 0..n {
        let sym = if pos < u.len() {
            u[pos]
        } else {
            v[(pos - u.len()) % v.len()]
        };
        out.push(stream.step(sym)?.0);
    }
    Ok(out)
}

/// The eventually-periodic tail of a lasso word's color stream.
pub struct SteadyColors {
    /// Positions `1..=cycle_end` of the stream.
    pub prefix: Vec<Color>,
    /// First position (1-based) of the steady cycle.
    pub cycle_start: usize,
    /// Cycle length in letters (a multiple of the primitive period length).
    pub cycle_len: usize,
    /// Canonical spoke and primitive period the stream was computed on.
    pub spoke_len: usize,
    pub period_len: usize,
}

impl SteadyColors {
    pub fn color_at(&self, pos1: usize) -> Color {
        if pos1 <= self.prefix.len() {
            self.prefix[pos1 - 1]
        } else {
            let off = (pos1 - self.cycle_start) % self.cycle_len;
            self.prefix[self.cycle_start - 1 + off]
        }
    }

    /// Colors of one period occurrence taken fully inside the steady cycle,
    /// aligned to a period boundary.
    pub fn one_period(&self) -> Vec<Color> {
        let mut p = self.cycle_start.max(self.spoke_len + 1);
        while (p - self.spoke_len - 1) % self.period_len != 0 {
            p += 1;
        }
        (p..p + self.period_len).map(|i| self.color_at(i)).collect()
    }

    /// Exact per-letter average over the steady cycle; invariant under the
    /// lasso representation.
    pub fn cycle_average(&self) -> AvgScore {
        let cyc: Vec<Color> = (self.cycle_start..self.cycle_start + self.cycle_len)
            .map(|i| self.color_at(i))
            .collect();
        score(&cyc).expect("cycle is non-empty").2
    }
}

/// Computes the color stream of a lasso word until its configuration cycles.
///
/// As in the lasso letter analysis, an exact detector on the full engine
/// state is paired with a profile detector for words whose dominant suffix
/// grows forever: the profile keys on the engine's elided-prefix state, the
/// end state, the class-witness entries over the dominant suffix and the
/// current rank, all of which live in finite spaces.
pub fn steady_colors(an: &Analyzer, w: &LassoWord) -> Result<SteadyColors> {
    let (u, v) = an.aut.lasso_ids(w)?;
    steady_colors_ids(an, &u, &v)
}

pub fn steady_colors_ids(an: &Analyzer, spoke: &[SymId], period: &[SymId]) -> Result<SteadyColors> {
    let (u, v) = crate::words::canonicalize(spoke, period);
    let cap = u.len() + v.len() * ((an.aut.states() + 2) * (an.max_rank() as usize + 3) * 8 + 32);
    let mut stream = ColorStream::new(an);
    let mut prefix = Vec::new();
    let mut seen: std::collections::HashMap<((StateId, Vec<SymId>, Rank), usize), usize> =
        std::collections::HashMap::new();
    let mut seen_profiles: std::collections::HashMap<Vec<u64>, usize> =
        std::collections::HashMap::new();
    let mut stuck_since = 0usize;
    let mut last: Option<(StateId, usize)> = None;
    let mut pos = 0usize;
    loop {
        if pos >= u.len() {
            let phase = (pos - u.len()) % v.len();
            let key = (stream.key(), phase);
            if let Some(&start) = seen.get(&key) {
                return Ok(SteadyColors {
                    prefix,
                    cycle_start: start + 1,
                    cycle_len: pos - start,
                    spoke_len: u.len(),
                    period_len: v.len(),
                });
            }
            seen.insert(key, pos);
            // Profile detector.
            let (before, dom, cur) = stream.key();
            match last {
                Some((b, len)) if b == before && dom.len() == len + 1 => {}
                _ => stuck_since = pos,
            }
            last = Some((before, dom.len()));
            if stuck_since + v.len() <= pos {
                let entries = an.entries_for(before, &dom);
                let end = an.aut.run_ids(before, &dom);
                let mut pkey: Vec<u64> = vec![
                    phase as u64,
                    before as u64,
                    end as u64,
                    cur.to_int().unwrap_or(i64::MAX) as u64,
                ];
                for (s, c, m) in entries {
                    pkey.extend([s as u64, c as u64, m as u64]);
                }
                if let Some(&start) = seen_profiles.get(&pkey) {
                    if start >= stuck_since {
                        return Ok(SteadyColors {
                            prefix,
                            cycle_start: start + 1,
                            cycle_len: pos - start,
                            spoke_len: u.len(),
                            period_len: v.len(),
                        });
                    }
                } else {
                    seen_profiles.insert(pkey, pos);
                }
            }
        }
        if pos >= cap {
            return Err(AutError::AnalysisCap(cap));
        }
        let sym = if pos < u.len() {
            u[pos]
        } else {
            v[(pos - u.len()) % v.len()]
        };
        prefix.push(stream.step(sym)?.0);
        pos += 1;
    }
}

/// Colors of one steady period of a lasso word via the direct semantic path.
pub fn steady_period_colors(an: &Analyzer, w: &LassoWord) -> Result<Vec<Color>> {
    Ok(steady_colors(an, w)?.one_period())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn word(an: &Analyzer, t: &str) -> FiniteWord {
        an.aut.alphabet.word_from_ids(&an.aut.alphabet.parse_word(t).unwrap())
    }

    #[test]
    fn theta_table() {
        assert_eq!(theta(Rank::Fin(1), Rank::Fin(0)).unwrap(), Color::Green);
        assert_eq!(theta(Rank::Fin(0), Rank::NegOne).unwrap(), Color::Black);
        assert_eq!(theta(Rank::Fin(0), Rank::Fin(1)).unwrap(), Color::Yellow);
        assert_eq!(theta(Rank::Fin(1), Rank::Fin(1)).unwrap(), Color::Red);
        assert_eq!(theta(Rank::Fin(0), Rank::NegTwo).unwrap(), Color::White);
        assert_eq!(theta(Rank::NegTwo, Rank::NegTwo).unwrap(), Color::White);
        assert!(theta(Rank::Infinite, Rank::Fin(0)).is_err());
    }

    #[test]
    fn forgetful_versions() {
        let an = Analyzer::new(&fixtures::l_g_a()).unwrap();
        let fg = forgetful_prefix(&an, &word(&an, "baaa")).unwrap();
        assert_eq!(fg, word(&an, "aaa"));
        let fg = forgetful_prefix(&an, &word(&an, "bbbbb")).unwrap();
        assert!(fg.is_empty());

        let an = Analyzer::new(&fixtures::l_inf_a()).unwrap();
        for t in ["bbab", "aab", "bbbb"] {
            assert_eq!(forgetful_prefix(&an, &word(&an, t)).unwrap(), word(&an, t));
        }
    }

    #[test]
    fn colors_of_b_a_omega() {
        let an = Analyzer::new(&fixtures::l_g_a()).unwrap();
        let w = LassoWord::parse(&an.aut.alphabet, "b;a").unwrap();
        let colors = letter_colors(&an, &w, 4).unwrap();
        assert_eq!(colors, vec![Color::Black, Color::Green, Color::Green, Color::Green]);
    }

    #[test]
    fn colors_of_inf_ab_words() {
        let an = Analyzer::new(&fixtures::l_inf_ab()).unwrap();
        let w = LassoWord::parse(&an.aut.alphabet, ";ab").unwrap();
        assert_eq!(
            letter_colors(&an, &w, 5).unwrap(),
            vec![Color::Red, Color::Green, Color::Green, Color::Green, Color::Green]
        );
        let w = LassoWord::parse(&an.aut.alphabet, ";aabb").unwrap();
        assert_eq!(
            letter_colors(&an, &w, 6).unwrap(),
            vec![Color::Red, Color::Red, Color::Green, Color::Yellow, Color::Green, Color::Yellow]
        );
    }

    #[test]
    fn steady_period_examples() {
        let an = Analyzer::new(&fixtures::l_inf_a()).unwrap();
        // aa(b)^ω: positionally the first b is yellow, in the limit the
        // period is all red.
        let w = LassoWord::parse(&an.aut.alphabet, "aa;b").unwrap();
        assert_eq!(steady_period_colors(&an, &w).unwrap(), vec![Color::Red]);
        let (_, _, avg) = score(&steady_period_colors(&an, &w).unwrap()).unwrap();
        assert_eq!(avg, AvgScore { wb: Ratio::ZERO, gr: Ratio::from_int(-1) });

        let w = LassoWord::parse(&an.aut.alphabet, "bb;ab").unwrap();
        let steady = steady_colors(&an, &w).unwrap();
        assert_eq!(steady.cycle_average(), AvgScore { wb: Ratio::ZERO, gr: Ratio::new(1, 2) });

        let an = Analyzer::new(&fixtures::universal_ab()).unwrap();
        let w = LassoWord::parse(&an.aut.alphabet, ";ab").unwrap();
        assert_eq!(steady_period_colors(&an, &w).unwrap(), vec![Color::White, Color::White]);
    }

    #[test]
    fn score_examples() {
        let (_, s, avg) = score(&[Color::Green, Color::Yellow]).unwrap();
        assert_eq!(s, Score { wb: 0, gr: 1 });
        assert_eq!(avg, AvgScore { wb: Ratio::ZERO, gr: Ratio::new(1, 2) });
        let (_, _, avg) = score(&[Color::Red, Color::Red]).unwrap();
        assert_eq!(avg, AvgScore { wb: Ratio::ZERO, gr: Ratio::from_int(-1) });
        let (_, _, avg) = score(&[Color::White]).unwrap();
        assert_eq!(avg, AvgScore { wb: Ratio::from_int(1), gr: Ratio::ZERO });
        assert_eq!(score(&[]), Err(AutError::EmptyInfix));
    }
}
