//! Reference automata used across tests, the oracle harness and benchmarks.
//!
//! Every fixture is a plain input DPA given in the `dpa v1` text format.

use crate::dpa::Dpa;
use crate::format::parse_dpa;

/// Infinitely many `a`s.
pub const L_INF_A_TEXT: &str = "\
dpa v1
# P_1: infinitely many a's
alphabet a b
states 2
initial 0
rank 0 0
rank 1 1
edge 0 a 0
edge 0 b 1
edge 1 a 0
edge 1 b 1
";

/// Globally `a`.
pub const L_G_A_TEXT: &str = "\
dpa v1
# P_2: always a (plain version, the sink is ranked 1)
alphabet a b
states 2
initial 0
rank 0 0
rank 1 1
edge 0 a 0
edge 0 b 1
edge 1 a 1
edge 1 b 1
";

/// Infinitely many `a`s, and infinitely many `aaa`s if infinitely many `aa`s.
pub const L_A_SEQ_TEXT: &str = "\
dpa v1
# P_3: the four-petal flower
alphabet a b
states 4
initial 0
rank 0 3
rank 1 2
rank 2 1
rank 3 0
edge 0 a 1
edge 0 b 0
edge 1 a 2
edge 1 b 0
edge 2 a 3
edge 2 b 0
edge 3 a 3
edge 3 b 0
";

/// The infix `ab` occurs infinitely often.
pub const L_INF_AB_TEXT: &str = "\
dpa v1
alphabet a b
states 3
initial 0
rank 0 0
rank 1 1
rank 2 1
edge 0 a 1
edge 0 b 2
edge 1 a 1
edge 1 b 0
edge 2 a 0
edge 2 b 2
";

/// `∞a ∨ (|w|_a even ∧ ¬∞c) ∨ (|w|_a odd ∧ ¬∞b)`.
pub const L_MOD2_TEXT: &str = "\
dpa v1
# states track (parity of #a, last relevant letter)
alphabet a b c
states 6
initial 0
rank 0 2
rank 1 1
rank 2 0
rank 3 0
rank 4 1
rank 5 2
edge 0 a 3
edge 0 b 0
edge 0 c 1
edge 1 a 3
edge 1 b 0
edge 1 c 1
edge 2 a 3
edge 2 b 0
edge 2 c 1
edge 3 a 2
edge 3 b 4
edge 3 c 5
edge 4 a 2
edge 4 b 4
edge 4 c 5
edge 5 a 2
edge 5 b 4
edge 5 c 5
";

/// Every request is eventually granted and no grant is redundant.
/// Tokens: first letter r/n is the request bit, second g/n the grant bit.
pub const L_NO_REDUNDANT_GRANTS_TEXT: &str = "\
dpa v1
alphabet rg rn ng nn
states 3
initial 0
rank 0 0
rank 1 1
rank 2 1
edge 0 rg 2
edge 0 rn 1
edge 0 ng 2
edge 0 nn 0
edge 1 rg 1
edge 1 rn 1
edge 1 ng 0
edge 1 nn 1
edge 2 rg 2
edge 2 rn 2
edge 2 ng 2
edge 2 nn 2
";

/// Safe/danger/recover mode discipline.
pub const L_SAFE_DANGER_RECOVER_TEXT: &str = "\
dpa v1
alphabet s d r
states 4
initial 0
rank 0 0
rank 1 1
rank 2 1
rank 3 1
edge 0 s 0
edge 0 d 2
edge 0 r 3
edge 1 s 0
edge 1 d 3
edge 1 r 1
edge 2 s 3
edge 2 d 2
edge 2 r 1
edge 3 s 3
edge 3 d 3
edge 3 r 3
";

/// `aΣ^ω ∨ bc^ω`: an `a` settles everything, a `b` creates a standing debt.
pub const L_AVOID_DEBTS_TEXT: &str = "\
dpa v1
alphabet a b c
states 4
initial 0
rank 0 1
rank 1 0
rank 2 0
rank 3 1
edge 0 a 1
edge 0 b 2
edge 0 c 3
edge 1 a 1
edge 1 b 1
edge 1 c 1
edge 2 a 3
edge 2 b 3
edge 2 c 2
edge 3 a 3
edge 3 b 3
edge 3 c 3
";

/// Both letters occur infinitely often (round-robin waiter).
pub const L_TWO_TEXT: &str = "\
dpa v1
alphabet a b
states 3
initial 0
rank 0 1
rank 1 1
rank 2 0
edge 0 a 1
edge 0 b 0
edge 1 a 1
edge 1 b 2
edge 2 a 1
edge 2 b 0
";

/// All three letters occur infinitely often.
pub const L_THREE_TEXT: &str = "\
dpa v1
alphabet a b c
states 4
initial 0
rank 0 1
rank 1 1
rank 2 1
rank 3 0
edge 0 a 1
edge 0 b 0
edge 0 c 0
edge 1 a 1
edge 1 b 2
edge 1 c 1
edge 2 a 2
edge 2 b 2
edge 2 c 3
edge 3 a 1
edge 3 b 0
edge 3 c 0
";

/// `G(a → Fb)` over `{a, b, c}`: response-time ordering fixture.
pub const L_RESPONSE_TEXT: &str = "\
dpa v1
alphabet a b c
states 2
initial 0
rank 0 0
rank 1 1
edge 0 a 1
edge 0 b 0
edge 0 c 0
edge 1 a 1
edge 1 b 0
edge 1 c 1
";

macro_rules! fixture {
    ($(#[$doc:meta])* $name:ident, $text:ident) => {
        $(#[$doc])*
        pub fn $name() -> Dpa {
            parse_dpa($text).expect("fixture text is valid")
        }
    };
}

fixture!(l_inf_a, L_INF_A_TEXT);
fixture!(l_g_a, L_G_A_TEXT);
fixture!(l_a_seq, L_A_SEQ_TEXT);
fixture!(l_inf_ab, L_INF_AB_TEXT);
fixture!(l_mod2, L_MOD2_TEXT);
fixture!(l_no_redundant_grants, L_NO_REDUNDANT_GRANTS_TEXT);
fixture!(l_safe_danger_recover, L_SAFE_DANGER_RECOVER_TEXT);
fixture!(l_avoid_debts, L_AVOID_DEBTS_TEXT);
fixture!(l_two, L_TWO_TEXT);
fixture!(l_three, L_THREE_TEXT);
fixture!(l_response, L_RESPONSE_TEXT);

/// One accepting state with self-loops on `a` and `b`.
pub fn universal_ab() -> Dpa {
    parse_dpa("dpa v1\nalphabet a b\nstates 1\ninitial 0\nrank 0 0\nedge 0 a 0\nedge 0 b 0\n")
        .unwrap()
}

/// The reference fixtures of the property universe, in a fixed order.
pub fn universe() -> Vec<(&'static str, Dpa)> {
    vec![
        ("l_inf_a", l_inf_a()),
        ("l_g_a", l_g_a()),
        ("l_a_seq", l_a_seq()),
        ("l_inf_ab", l_inf_ab()),
        ("l_mod2", l_mod2()),
        ("l_no_redundant_grants", l_no_redundant_grants()),
        ("l_safe_danger_recover", l_safe_danger_recover()),
        ("l_avoid_debts", l_avoid_debts()),
        ("l_two", l_two()),
        ("l_three", l_three()),
        ("l_response", l_response()),
    ]
}
