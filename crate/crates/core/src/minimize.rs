//! Rank minimization, right-congruence classes and the Wagner diagnostic.

use crate::dpa::{Dpa, StateId};
use crate::error::Result;
use crate::graph::{lang_equiv, sccs};
use crate::rank::Rank;
use crate::words::SymId;

/// Lowers every state rank to the minimal value that keeps the language,
/// sweeping to a fixpoint. Unreachable states keep their stored rank.
///
/// Per-state lowering with an equivalence check after each candidate; at the
/// sizes this crate targets the product check is cheap and the sweep
/// converges in a couple of passes. Idempotent by construction.
pub fn minimize_ranks(aut: &Dpa) -> Result<Dpa> {
    let reachable = aut.reachable();
    let mut cur = aut.clone();
    loop {
        let mut changed = false;
        for q in 0..cur.states() {
            if !reachable[q] {
                continue;
            }
            let Rank::Fin(orig) = cur.kappa[q] else {
                continue;
            };
            for lower in 0..orig {
                let mut cand = cur.clone();
                cand.kappa[q] = Rank::Fin(lower);
                if lang_equiv(&cand, cand.initial, aut, aut.initial)? {
                    cur = cand;
                    changed = true;
                    break;
                }
            }
        }
        if !changed {
            return Ok(cur);
        }
    }
}

/// Identifier of a right-congruence class.
pub type ClassId = usize;

/// Partition of the reachable states by language equality, with the
/// shortlex-least word reaching each class as its representative.
#[derive(Clone, Debug)]
pub struct CongruenceClasses {
    pub class_of: Vec<Option<ClassId>>,
    pub representatives: Vec<Vec<SymId>>,
    /// One member state per class: the state reached by the representative.
    pub rep_states: Vec<StateId>,
    /// All reachable states of each class.
    pub members: Vec<Vec<StateId>>,
}

impl CongruenceClasses {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Computes the right-congruence classes of the reachable states.
pub fn congruence_classes(aut: &Dpa) -> Result<CongruenceClasses> {
    let words = aut.shortlex_words(aut.initial);
    // Reachable states ordered by their shortlex access word, so the first
    // state of each class is reached by the class representative.
    let mut order: Vec<StateId> = (0..aut.states()).filter(|&q| words[q].is_some()).collect();
    order.sort_by(|&a, &b| {
        let (wa, wb) = (words[a].as_ref().unwrap(), words[b].as_ref().unwrap());
        (wa.len(), wa).cmp(&(wb.len(), wb))
    });

    let mut class_of: Vec<Option<ClassId>> = vec![None; aut.states()];
    let mut representatives = Vec::new();
    let mut rep_states = Vec::new();
    let mut members: Vec<Vec<StateId>> = Vec::new();
    for &q in &order {
        let mut found = None;
        for (id, &rep) in rep_states.iter().enumerate() {
            if lang_equiv(aut, q, aut, rep)? {
                found = Some(id);
                break;
            }
        }
        match found {
            Some(id) => {
                class_of[q] = Some(id);
                members[id].push(q);
            }
            None => {
                let id = rep_states.len();
                class_of[q] = Some(id);
                rep_states.push(q);
                representatives.push(words[q].clone().unwrap());
                members.push(vec![q]);
            }
        }
    }
    Ok(CongruenceClasses {
        class_of,
        representatives,
        rep_states,
        members,
    })
}

/// Polarity of the inclusion-measure diagnostic.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Polarity {
    Plus,
    Minus,
    PlusMinus,
}

/// Wagner inclusion measure diagnostic derived from the rank span of the
/// minimized automaton.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct WagnerClass {
    pub chain_length: usize,
    pub polarity: Polarity,
}

impl std::fmt::Display for WagnerClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let sign = match self.polarity {
            Polarity::Plus => "+",
            Polarity::Minus => "-",
            Polarity::PlusMinus => "+-",
        };
        write!(f, "DM{sign}{}", self.chain_length)
    }
}

/// Computes the inclusion-measure diagnostic. Alternating SCC inclusion
/// chains live inside a single MSCC, so after rank minimization the chain
/// length is the largest number of distinct ranks realized within one MSCC;
/// the innermost SCC of a maximal chain is a cycle through that MSCC's
/// highest rank, whose parity decides the polarity.
pub fn wagner_class(aut: &Dpa) -> Result<WagnerClass> {
    let min = minimize_ranks(aut)?;
    let info = sccs(&min);
    let mut best = 0usize;
    let mut plus = false;
    let mut minus = false;
    for comp in &info.components {
        let mut ranks: Vec<Rank> = comp.iter().map(|&q| min.kappa[q]).collect();
        ranks.sort();
        ranks.dedup();
        let len = ranks.len();
        let innermost_even = ranks.last().unwrap().parity_even() == Some(true);
        if len > best {
            best = len;
            plus = innermost_even;
            minus = !innermost_even;
        } else if len == best {
            plus |= innermost_even;
            minus |= !innermost_even;
        }
    }
    let polarity = match (plus, minus) {
        (true, true) => Polarity::PlusMinus,
        (true, false) => Polarity::Plus,
        _ => Polarity::Minus,
    };
    Ok(WagnerClass {
        chain_length: best,
        polarity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::format::parse_dpa;

    #[test]
    fn flower_is_already_minimal() {
        let p3 = fixtures::l_a_seq();
        assert_eq!(minimize_ranks(&p3).unwrap(), p3);
    }

    #[test]
    fn accepting_loop_drops_to_zero() {
        let aut = parse_dpa(
            "dpa v1\nalphabet a\nstates 1\ninitial 0\nrank 0 2\nedge 0 a 0\n",
        )
        .unwrap();
        assert_eq!(minimize_ranks(&aut).unwrap().kappa, vec![Rank::Fin(0)]);
    }

    #[test]
    fn uniformly_shifted_p1_comes_back_down() {
        let mut shifted = fixtures::l_inf_a();
        shifted.kappa = shifted
            .kappa
            .iter()
            .map(|r| match r {
                Rank::Fin(n) => Rank::Fin(n + 2),
                r => *r,
            })
            .collect();
        let min = minimize_ranks(&shifted).unwrap();
        assert!(lang_equiv(&min, min.initial, &shifted, shifted.initial).unwrap());
        assert_eq!(min.kappa, fixtures::l_inf_a().kappa);
        // Idempotence.
        assert_eq!(minimize_ranks(&min).unwrap(), min);
    }

    #[test]
    fn congruence_class_counts() {
        assert_eq!(congruence_classes(&fixtures::l_mod2()).unwrap().len(), 2);
        assert_eq!(congruence_classes(&fixtures::l_a_seq()).unwrap().len(), 1);
        let cc = congruence_classes(&fixtures::l_g_a()).unwrap();
        assert_eq!(cc.len(), 2);
        assert_eq!(cc.representatives[0], Vec::<usize>::new());
    }

    #[test]
    fn wagner_examples() {
        let w = wagner_class(&fixtures::l_inf_a()).unwrap();
        assert_eq!((w.chain_length, w.polarity), (2, Polarity::Minus));
        assert_eq!(w.to_string(), "DM-2");
        let w = wagner_class(&fixtures::l_g_a()).unwrap();
        assert_eq!((w.chain_length, w.polarity), (1, Polarity::PlusMinus));
        let w = wagner_class(&fixtures::l_a_seq()).unwrap();
        assert_eq!((w.chain_length, w.polarity), (4, Polarity::Minus));
    }
}
