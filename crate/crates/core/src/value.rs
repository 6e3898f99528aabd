//! Robustness decompositions, values and the preference relation.

use crate::color::{score, steady_colors_ids, AvgScore, ColorStream};
use crate::dpa::Dpa;
use crate::error::{AutError, Result};
use crate::forgetful::{forgetful_transform, ForgetfulDpa};
use crate::infix::Analyzer;
use crate::rational::Ratio;
use crate::vigor::{build_vigor_with, LearnOptions, VigorBuild};
use crate::words::{canonicalize, LassoWord, SymId};
use std::cmp::Ordering;

/// How a lasso word is split into spoke and period before valuation.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DecompMode {
    /// Use the representation exactly as given.
    AsGiven,
    /// The shortest decomposition whose infix rank equals the word rank.
    Shortest,
    /// Split at the first state of the final loop of the robustness DPA run.
    LoopEntry,
}

impl std::str::FromStr for DecompMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "as-given" => Ok(DecompMode::AsGiven),
            "shortest" => Ok(DecompMode::Shortest),
            "loop-entry" => Ok(DecompMode::LoopEntry),
            other => Err(format!("unknown decomposition mode `{other}`")),
        }
    }
}

/// A concrete spoke/period split of a lasso word.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Decomposition {
    pub spoke: Vec<SymId>,
    pub period: Vec<SymId>,
    pub mode: DecompMode,
}

/// The robustness value: acceptance bit, period value and length-weighted
/// spoke excess, ordered lexicographically over the flattened five-tuple.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RobustnessValue {
    /// `+1` for accepted words, `-1` for rejected ones.
    pub acceptance: i8,
    pub period_value: AvgScore,
    pub spoke_value: (Ratio, Ratio),
}

impl RobustnessValue {
    pub fn flatten(&self) -> [Ratio; 5] {
        [
            Ratio::from_int(self.acceptance as i64),
            self.period_value.wb,
            self.period_value.gr,
            self.spoke_value.0,
            self.spoke_value.1,
        ]
    }

    /// The zero element of the value domain.
    pub fn zero_flat() -> [Ratio; 5] {
        [Ratio::ZERO; 5]
    }
}

impl PartialOrd for RobustnessValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RobustnessValue {
    fn cmp(&self, other: &Self) -> Ordering {
        self.flatten().cmp(&other.flatten())
    }
}

impl std::fmt::Display for RobustnessValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "accept={} period={} spoke=({},{})",
            self.acceptance, self.period_value, self.spoke_value.0, self.spoke_value.1
        )
    }
}

/// Satisfaction bar: the value clears the zero element exactly on accepted
/// words.
pub fn satisfies_bar(value: &RobustnessValue) -> bool {
    value.flatten() >= RobustnessValue::zero_flat()
}

/// The full pipeline over one input automaton: minimized analyzer, vigor DPA
/// and robustness DPA.
pub struct RobustnessMachine {
    pub input: Dpa,
    pub analyzer: Analyzer,
    pub build: VigorBuild,
    pub robust: ForgetfulDpa,
}

impl RobustnessMachine {
    pub fn new(input: &Dpa) -> Result<RobustnessMachine> {
        Self::with_options(input, LearnOptions::default())
    }

    pub fn with_options(input: &Dpa, opts: LearnOptions) -> Result<RobustnessMachine> {
        let analyzer = Analyzer::new(input)?;
        let build = build_vigor_with(&analyzer, opts)?;
        let robust = forgetful_transform(&build.vigor)?;
        Ok(RobustnessMachine {
            input: input.clone(),
            analyzer,
            build,
            robust,
        })
    }

    pub fn vigor(&self) -> &Dpa {
        &self.build.vigor
    }

    fn lasso_ids(&self, w: &LassoWord) -> Result<(Vec<SymId>, Vec<SymId>)> {
        self.input.lasso_ids(w)
    }

    /// Splits `w` according to the mode.
    pub fn decompose(&self, w: &LassoWord, mode: DecompMode) -> Result<Decomposition> {
        let (u, v) = self.lasso_ids(w)?;
        self.decompose_ids(&u, &v, mode)
    }

    pub fn decompose_ids(
        &self,
        spoke: &[SymId],
        period: &[SymId],
        mode: DecompMode,
    ) -> Result<Decomposition> {
        match mode {
            DecompMode::AsGiven => Ok(Decomposition {
                spoke: spoke.to_vec(),
                period: period.to_vec(),
                mode,
            }),
            DecompMode::LoopEntry => {
                let run = self.robust.run_colored_ids(spoke, period);
                let mut u: Vec<SymId> = Vec::with_capacity(run.loop_entry);
                for pos in 0..run.loop_entry {
                    u.push(if pos < run.spoke.len() {
                        run.spoke[pos]
                    } else {
                        run.period[(pos - run.spoke.len()) % run.period.len()]
                    });
                }
                Ok(Decomposition {
                    spoke: u,
                    period: run.cycle_word(),
                    mode,
                })
            }
            DecompMode::Shortest => {
                let (u0, v0) = canonicalize(spoke, period);
                let wr = self.analyzer.word_rank_ids(&u0, &v0);
                // The loop-entry decomposition satisfies the rank condition,
                // bounding the search.
                let run = self.robust.run_colored_ids(&u0, &v0);
                let bound = run.loop_entry + run.loop_len;
                let base = u0.len() + v0.len();
                for total in base..=bound.max(base) {
                    for t in 0..=total.saturating_sub(base) {
                        let rest = total - u0.len() - t;
                        if rest == 0 || rest % v0.len() != 0 {
                            continue;
                        }
                        let reps = rest / v0.len();
                        let mut cand_u = u0.clone();
                        for i in 0..t {
                            cand_u.push(v0[i % v0.len()]);
                        }
                        let shift = t % v0.len();
                        let mut rot = v0[shift..].to_vec();
                        rot.extend_from_slice(&v0[..shift]);
                        let mut cand_v = Vec::with_capacity(rest);
                        for _ in 0..reps {
                            cand_v.extend_from_slice(&rot);
                        }
                        let q_u = self.analyzer.aut.run_ids(self.analyzer.aut.initial, &cand_u);
                        if self.analyzer.infix_rank_states(q_u, &cand_v) == wr {
                            return Ok(Decomposition {
                                spoke: cand_u,
                                period: cand_v,
                                mode,
                            });
                        }
                    }
                }
                Err(AutError::AnalysisCap(bound))
            }
        }
    }

    /// Robustness value of a lasso word under the chosen decomposition mode.
    pub fn robustness_value(&self, w: &LassoWord, mode: DecompMode) -> Result<RobustnessValue> {
        let (u, v) = self.lasso_ids(w)?;
        self.robustness_value_ids(&u, &v, mode)
    }

    pub fn robustness_value_ids(
        &self,
        spoke: &[SymId],
        period: &[SymId],
        mode: DecompMode,
    ) -> Result<RobustnessValue> {
        let dcmp = self.decompose_ids(spoke, period, mode)?;
        let acceptance: i8 = if self.robust.accepts_ids(spoke, period) {
            1
        } else {
            -1
        };
        // Period value: steady-state per-letter average over the color
        // stream's limit cycle; invariant under the representation.
        let steady = steady_colors_ids(&self.analyzer, spoke, period)?;
        let period_value = steady.cycle_average();
        // Spoke value: positional colors of the decomposition's spoke.
        let k = dcmp.spoke.len();
        let spoke_value = if k == 0 {
            (Ratio::ZERO, Ratio::ZERO)
        } else {
            let mut stream = ColorStream::new(&self.analyzer);
            let mut colors = Vec::with_capacity(k);
            for &sym in &dcmp.spoke {
                colors.push(stream.step(sym)?.0);
            }
            let (_, _, tau_u) = score(&colors)?;
            let kq = Ratio::from_int(k as i64);
            (
                kq * (tau_u.wb - period_value.wb),
                kq * (tau_u.gr - period_value.gr),
            )
        };
        Ok(RobustnessValue {
            acceptance,
            period_value,
            spoke_value,
        })
    }

    /// Lexicographic comparison of two words' robustness values.
    pub fn compare(
        &self,
        w1: &LassoWord,
        w2: &LassoWord,
        mode: DecompMode,
    ) -> Result<(Ordering, RobustnessValue, RobustnessValue)> {
        let v1 = self.robustness_value(w1, mode)?;
        let v2 = self.robustness_value(w2, mode)?;
        Ok((v1.cmp(&v2), v1, v2))
    }
}
