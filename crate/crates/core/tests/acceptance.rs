//! Acceptance suite: one test per criterion, each printing a pass line.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use omega_robust::harness::{canonical_lassos, PropStatus};
use omega_robust::suffix::analyze_word;
use omega_robust::*;
use std::time::Instant;

fn pass(n: usize, what: &str) {
    println!("[PASS] criterion {n:2}: {what}");
}

fn analyzer(aut: &Dpa) -> Analyzer {
    Analyzer::new(aut).unwrap()
}

fn lasso(aut: &Dpa, t: &str) -> LassoWord {
    LassoWord::parse(&aut.alphabet, t).unwrap()
}

fn word(aut: &Dpa, t: &str) -> FiniteWord {
    aut.alphabet.word_from_ids(&aut.alphabet.parse_word(t).unwrap())
}

#[test]
fn criterion_01_word_rank_tables() {
    let start = Instant::now();
    let inf_a = fixtures::l_inf_a();
    let an = analyzer(&inf_a);
    for (w, r) in [(";b", 1), ("aa;b", 1), (";a", 0), (";ab", 0)] {
        assert_eq!(an.word_rank(&lasso(&inf_a, w)).unwrap(), Rank::from_int(r).unwrap(), "{w}");
    }
    let g_a = fixtures::l_g_a();
    let an = analyzer(&g_a);
    for (w, r) in [(";a", 0), ("b;a", -1), (";ab", -1), (";b", -1)] {
        assert_eq!(an.word_rank(&lasso(&g_a, w)).unwrap(), Rank::from_int(r).unwrap(), "{w}");
    }
    let a_seq = fixtures::l_a_seq();
    let an = analyzer(&a_seq);
    for (w, r) in [(";b", 3), (";ab", 2), (";aab", 1), (";a", 0), (";aaab", 0)] {
        assert_eq!(an.word_rank(&lasso(&a_seq, w)).unwrap(), Rank::from_int(r).unwrap(), "{w}");
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    pass(1, &format!("all 12 word-rank table rows exact ({elapsed:?})"));
}

#[test]
fn criterion_02_a_seq_infix_ranks() {
    let aut = fixtures::l_a_seq();
    let an = analyzer(&aut);
    let empty = FiniteWord::empty();
    for (v, r) in [("b", 3), ("a", 2), ("aa", 1), ("aaa", 0)] {
        assert_eq!(an.infix_rank(&empty, &word(&aut, v)).unwrap(), Rank::Fin(r), "{v}");
    }
    pass(2, "infix ranks of b, a, aa, aaa exact");
}

#[test]
fn criterion_03_mod2_infix_table() {
    let aut = fixtures::l_mod2();
    let an = analyzer(&aut);
    // One representative (u, v) per case row of the table.
    let cases = [
        ("", "b", 2),  // even spoke, period of b's
        ("a", "c", 2), // odd spoke, period of c's
        ("", "c", 1),  // even spoke, b/c period containing c
        ("a", "b", 1), // odd spoke, b/c period containing b
        ("", "a", 0),  // even spoke, period containing a
        ("a", "ca", 0), // odd spoke, period containing a
    ];
    for (u, v, r) in cases {
        assert_eq!(
            an.infix_rank(&word(&aut, u), &word(&aut, v)).unwrap(),
            Rank::Fin(r),
            "({u}, {v})"
        );
    }
    pass(3, "all six case rows of the mod-2 infix table exact");
}

#[test]
fn criterion_04_letter_tables() {
    let a_seq = fixtures::l_a_seq();
    let an = analyzer(&a_seq);
    let raw = "abbaaaaab";
    let rows = analyze_word(&an, &word(&a_seq, raw)).unwrap();
    let gray = an.infix_rank(&FiniteWord::empty(), &FiniteWord::empty()).unwrap();
    assert_eq!(gray, Rank::Fin(3));
    let infl: Vec<bool> = rows.iter().map(|r| r.influential).collect();
    assert_eq!(infl, [true, false, false, true, true, true, true, true, false]);
    let resets: Vec<usize> = rows.iter().map(|r| r.reset_point).collect();
    assert_eq!(resets, [1, 2, 3, 4, 4, 4, 5, 6, 9]);
    let ids = a_seq.alphabet.parse_word(raw).unwrap();
    let predoms: Vec<String> = rows
        .iter()
        .map(|r| a_seq.alphabet.render_ids(&ids[r.predom_index - 1..r.index]))
        .collect();
    assert_eq!(predoms, ["a", "b", "bb", "a", "aa", "aaa", "aaa", "aaa", "b"]);
    let doms: Vec<String> = rows
        .iter()
        .map(|r| a_seq.alphabet.render_ids(&a_seq.alphabet.word_ids(&r.dom_suffix).unwrap()))
        .collect();
    assert_eq!(doms, ["a", "b", "b", "a", "aa", "aaa", "aaa", "aaa", "b"]);
    let ranks: Vec<Rank> = rows.iter().map(|r| r.letter_rank).collect();
    let expect: Vec<Rank> = [2, 3, 3, 2, 1, 0, 0, 0, 3].iter().map(|&n| Rank::Fin(n)).collect();
    assert_eq!(ranks, expect);

    let inf_ab = fixtures::l_inf_ab();
    let an = analyzer(&inf_ab);
    let raw = "bbaababbb";
    let rows = analyze_word(&an, &word(&inf_ab, raw)).unwrap();
    let gray = an.infix_rank(&FiniteWord::empty(), &FiniteWord::empty()).unwrap();
    assert_eq!(gray, Rank::Fin(1));
    let infl: Vec<bool> = rows.iter().map(|r| r.influential).collect();
    assert_eq!(infl, [false, false, true, false, true, true, true, false, false]);
    let resets: Vec<usize> = rows.iter().map(|r| r.reset_point).collect();
    assert_eq!(resets, [1, 2, 2, 4, 4, 5, 6, 8, 9]);
    let ids = inf_ab.alphabet.parse_word(raw).unwrap();
    let predoms: Vec<String> = rows
        .iter()
        .map(|r| inf_ab.alphabet.render_ids(&ids[r.predom_index - 1..r.index]))
        .collect();
    assert_eq!(predoms, ["b", "bb", "ba", "aa", "ab", "ba", "ab", "bb", "bbb"]);
    let doms: Vec<String> = rows
        .iter()
        .map(|r| inf_ab.alphabet.render_ids(&inf_ab.alphabet.word_ids(&r.dom_suffix).unwrap()))
        .collect();
    assert_eq!(doms, ["b", "b", "ba", "a", "ab", "ba", "ab", "b", "b"]);
    let ranks: Vec<Rank> = rows.iter().map(|r| r.letter_rank).collect();
    let expect: Vec<Rank> = [1, 1, 0, 1, 0, 0, 0, 1, 1].iter().map(|&n| Rank::Fin(n)).collect();
    assert_eq!(ranks, expect);

    pass(4, "both letter tables reproduced field-for-field with gray entries 3 and 1");
}

#[test]
fn criterion_05_influential_example() {
    let aut = fixtures::l_a_seq();
    let an = analyzer(&aut);
    let o = omega_robust::suffix::RankOracle::new_plain(
        &an,
        aut.alphabet.parse_word("abbaaaaabbba").unwrap(),
    );
    assert!(!omega_robust::suffix::is_influential(&o, 1, 3));
    assert!(omega_robust::suffix::is_influential(&o, 1, 5));
    pass(5, "k=3 not influential, k=5 influential wrt i=1");
}

#[test]
fn criterion_06_robustness_values() {
    let aut = fixtures::l_inf_a();
    let machine = RobustnessMachine::new(&aut).unwrap();
    let rat = |n: i64, d: i64| Ratio::new(n, d);
    let cases = [
        ("bb;ab", 1, (0, 1), (1, 2), (0, 1), (-3, 1)),
        ("bbbbb;ab", 1, (0, 1), (1, 2), (0, 1), (-15, 2)),
        ("aa;ab", 1, (0, 1), (1, 2), (0, 1), (1, 1)),
        ("aaaaa;ab", 1, (0, 1), (1, 2), (0, 1), (5, 2)),
        ("aa;b", -1, (0, 1), (-1, 1), (0, 1), (4, 1)),
        ("aaaaa;b", -1, (0, 1), (-1, 1), (0, 1), (10, 1)),
    ];
    for (w, acc, pwb, pgr, swb, sgr) in cases {
        let v = machine
            .robustness_value(&lasso(&aut, w), DecompMode::AsGiven)
            .unwrap();
        assert_eq!(v.acceptance, acc, "{w}");
        assert_eq!(v.period_value.wb, rat(pwb.0, pwb.1), "{w}");
        assert_eq!(v.period_value.gr, rat(pgr.0, pgr.1), "{w}");
        assert_eq!(v.spoke_value.0, rat(swb.0, swb.1), "{w}");
        assert_eq!(v.spoke_value.1, rat(sgr.0, sgr.1), "{w}");
    }
    pass(6, "all six worked-example value tuples exact under --dcmp as-given");
}

#[test]
fn criterion_07_vigor_constructions() {
    let input = fixtures::l_mod2();
    let build = build_vigor(&input, LearnOptions::default()).unwrap();
    assert_eq!(build.vigor.states(), 7);
    let mut ranks: Vec<i64> = build.vigor.kappa.iter().map(|r| r.to_int().unwrap()).collect();
    ranks.sort();
    assert_eq!(ranks, [0, 0, 1, 1, 2, 2, 2]);
    assert!(lang_equiv(&build.vigor, 0, &input, input.initial).unwrap());
    assert_eq!(build.components.len(), 2);
    for comp in &build.components {
        let comp = comp.as_ref().expect("components converge on mod-2");
        assert_eq!(comp.dpa.states(), 3);
        let mut r: Vec<i64> = comp.dpa.kappa.iter().map(|r| r.to_int().unwrap()).collect();
        r.sort();
        assert_eq!(r, [0, 1, 2]);
    }

    let input = fixtures::l_inf_ab();
    let build = build_vigor(&input, LearnOptions::default()).unwrap();
    assert_eq!(build.vigor.states(), 5);
    let mut ranks: Vec<i64> = build.vigor.kappa.iter().map(|r| r.to_int().unwrap()).collect();
    ranks.sort();
    assert_eq!(ranks, [0, 0, 1, 1, 1]);
    assert!(lang_equiv(&build.vigor, 0, &input, input.initial).unwrap());

    pass(7, "mod-2 product (7 states) and components (3+3, ranks {2,1,0}); 5-state machine for the infix-ab language; all language-equivalent to their inputs");
}

#[test]
fn criterion_08_robustness_dpa_for_inf_ab() {
    let input = fixtures::l_inf_ab();
    let machine = RobustnessMachine::new(&input).unwrap();
    let an = &machine.analyzer;

    let w = lasso(&input, ";ab");
    let table = letter_table(an, &w, 6).unwrap();
    let ranks: Vec<Rank> = table.iter().map(|r| r.letter_rank).collect();
    let expect: Vec<Rank> = [1, 0, 0, 0, 0, 0].iter().map(|&n| Rank::Fin(n)).collect();
    assert_eq!(ranks, expect);
    let colors = machine.robust.run_colored(&w).unwrap().colors(5);
    assert_eq!(colors, vec![Color::Red, Color::Green, Color::Green, Color::Green, Color::Green]);

    let w = lasso(&input, ";aabb");
    let table = letter_table(an, &w, 10).unwrap();
    let ranks: Vec<Rank> = table.iter().map(|r| r.letter_rank).collect();
    let expect: Vec<Rank> = [1, 1, 0, 1, 0, 1, 0, 1, 0, 1]
        .iter()
        .map(|&n| Rank::Fin(n))
        .collect();
    assert_eq!(ranks, expect);
    let colors = machine.robust.run_colored(&w).unwrap().colors(10);
    let expect = vec![
        Color::Red,
        Color::Red,
        Color::Green,
        Color::Yellow,
        Color::Green,
        Color::Yellow,
        Color::Green,
        Color::Yellow,
        Color::Green,
        Color::Yellow,
    ];
    assert_eq!(colors, expect);

    pass(8, "letter ranks 1,(0)^ω and 1,1,(0,1)^ω; colors red,(green)^ω and red,red,(green,yellow)^ω");
}

#[test]
fn criterion_09_property_suite() {
    let start = Instant::now();
    let universe = fixtures::universe();
    let named: Vec<(&str, Dpa)> = universe.iter().map(|(n, d)| (*n, d.clone())).collect();
    let report = run_suite(&named, Bounds::default()).unwrap();
    let elapsed = start.elapsed();
    println!("{}", report.text_summary());
    assert!(report.failures().is_empty(), "suite failures:\n{}", report.text_summary());
    assert!(elapsed.as_secs_f64() < 300.0, "took {elapsed:?}");
    let passes = report
        .outcomes
        .iter()
        .filter(|o| o.status == PropStatus::Pass)
        .count();
    let skips = report
        .outcomes
        .iter()
        .filter(|o| o.status == PropStatus::Skip)
        .count();
    pass(
        9,
        &format!(
            "property suite: {passes} properties pass, 0 fail, {skips} skipped as undefined ({elapsed:?})"
        ),
    );
}

#[test]
fn criterion_10_blowup_fixture() {
    let input = fixtures::l_three();
    let build = build_vigor(&input, LearnOptions::default()).unwrap();
    assert!(
        build.vigor.states() >= 7,
        "expected >= 7 states, got {}",
        build.vigor.states()
    );
    assert!(lang_equiv(&build.vigor, 0, &input, input.initial).unwrap());
    pass(
        10,
        &format!(
            "vigor DPA of the three-letter recurrence language has {} >= 7 states",
            build.vigor.states()
        ),
    );
}

#[test]
fn criterion_11_documented_decomposition_divergence() {
    let input = fixtures::l_inf_a();
    let machine = RobustnessMachine::new(&input).unwrap();
    let w = lasso(&input, "bb;ab");
    let shortest = machine.decompose(&w, DecompMode::Shortest).unwrap();
    let al = &input.alphabet;
    assert_eq!(al.render_ids(&shortest.spoke), "b");
    assert_eq!(al.render_ids(&shortest.period), "ba");
    assert_eq!(shortest.spoke.len() + shortest.period.len(), 3);
    let q = machine.analyzer.aut.run_ids(machine.analyzer.aut.initial, &shortest.spoke);
    assert_eq!(
        machine.analyzer.infix_rank_states(q, &shortest.period),
        Rank::Fin(0)
    );
    // Exhaustive check that no decomposition of total length < 3 satisfies
    // the rank condition, and that the loop-entry split differs.
    let wr = machine.analyzer.word_rank(&w).unwrap();
    assert_eq!(wr, Rank::Fin(0));
    for (u, v) in canonical_lassos(2, Bounds { max_spoke: 2, max_period: 2 }) {
        if u.len() + v.len() < 3 {
            // Same denoted word?
            let same = {
                let mut a = u.clone();
                for i in 0..8 {
                    a.push(v[i % v.len()]);
                }
                let mut b = al.parse_word("bb").unwrap();
                let ab = al.parse_word("ab").unwrap();
                for i in 0..8 {
                    b.push(ab[i % 2]);
                }
                a[..6] == b[..6]
            };
            if same {
                let q = machine.analyzer.aut.run_ids(machine.analyzer.aut.initial, &u);
                assert_ne!(machine.analyzer.infix_rank_states(q, &v), wr);
            }
        }
    }
    let loop_entry = machine.decompose(&w, DecompMode::LoopEntry).unwrap();
    assert_eq!(al.render_ids(&loop_entry.spoke), "bb");
    assert_eq!(al.render_ids(&loop_entry.period), "ab");
    assert_ne!(
        (shortest.spoke.clone(), shortest.period.clone()),
        (loop_entry.spoke.clone(), loop_entry.period.clone())
    );
    pass(11, "shortest split of bb(ab)^ω is (b,ba) with |uv|=3 and rank 0, diverging from the worked example's (bb,ab)");
}
