//! Robustness machinery for ω-regular languages given as deterministic
//! parity automata: natural ranks of words, infixes and letters; letter
//! colors; the vigor and robustness automata; and robustness values with
//! their preference relation — together with an independent brute-force
//! harness that cross-validates every construction.

pub mod color;
pub mod dpa;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod forgetful;
pub mod graph;
pub mod harness;
pub mod infix;
pub mod minimize;
pub mod rank;
pub mod rational;
pub mod suffix;
pub mod value;
pub mod vigor;
pub mod words;

pub use color::{score, theta, AvgScore, Color, ColorCounts, Score};
pub use dpa::{Dpa, RunTrace, StateId};
pub use error::{AutError, Result};
pub use forgetful::{forgetful_transform, ColoredRun, ForgetfulDpa};
pub use format::{export_dot, export_dot_forgetful, parse_dpa, parse_forgetful, serialize_dpa,
                 serialize_forgetful};
pub use graph::{complement, is_empty_from, is_universal_from, lang_equiv, sccs, SccClass, SccInfo};
pub use harness::{run_suite, run_suite_fixture, Bounds, SuiteReport};
pub use infix::Analyzer;
pub use minimize::{congruence_classes, minimize_ranks, wagner_class, CongruenceClasses, Polarity,
                   WagnerClass};
pub use rank::Rank;
pub use rational::Ratio;
pub use suffix::{analyze_lasso, analyze_word, letter_table, LassoLetterAnalysis, LetterAnalysis};
pub use value::{satisfies_bar, DecompMode, Decomposition, RobustnessMachine, RobustnessValue};
pub use vigor::{build_vigor, learn_vigor_component, membership_value, LearnOptions, VigorBuild,
                VigorComponent};
pub use words::{Alphabet, FiniteWord, LassoWord, Symbol};
