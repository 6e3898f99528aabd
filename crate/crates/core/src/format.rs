//! The `dpa v1` text format and DOT export.
//!
//! ```text
//! dpa v1
//! alphabet a b
//! states 2
//! initial 0
//! rank 0 0
//! rank 1 1
//! edge 0 a 0
//! edge 0 b 1
//! edge 1 a 0
//! edge 1 b 1
//! ```
//!
//! Lines starting with `#` are comments. Plain input automata require
//! non-negative ranks and a total edge relation; forgetful output may use the
//! ranks `-1`/`-2` and `eps` edges.

use crate::color::Color;
use crate::dpa::{Dpa, StateId};
use crate::error::{AutError, Result};
use crate::forgetful::ForgetfulDpa;
use crate::rank::Rank;
use crate::words::Alphabet;

struct RawAut {
    alphabet: Alphabet,
    states: usize,
    initial: StateId,
    ranks: Vec<Option<Rank>>,
    edges: Vec<Vec<Option<StateId>>>,
    eps: Vec<Option<StateId>>,
}

fn parse_raw(text: &str, allow_forgetful: bool) -> Result<RawAut> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let bad = |line: usize, msg: &str| AutError::BadHeader {
        line,
        msg: msg.to_string(),
    };

    let (line, header) = lines.next().ok_or_else(|| bad(0, "empty document"))?;
    if header != "dpa v1" {
        return Err(bad(line, "expected `dpa v1`"));
    }

    let mut alphabet = None;
    let mut states = None;
    let mut initial = None;
    let mut ranks: Vec<Option<Rank>> = Vec::new();
    let mut edges: Vec<Vec<Option<StateId>>> = Vec::new();
    let mut eps: Vec<Option<StateId>> = Vec::new();

    for (ln, l) in lines {
        let mut parts = l.split_whitespace();
        let key = parts.next().unwrap();
        let rest: Vec<&str> = parts.collect();
        match key {
            "alphabet" => {
                if rest.is_empty() {
                    return Err(bad(ln, "alphabet needs at least one symbol"));
                }
                alphabet = Some(Alphabet::from_tokens(&rest)?);
            }
            "states" => {
                let n: usize = rest
                    .first()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| bad(ln, "states needs a count"))?;
                states = Some(n);
                ranks = vec![None; n];
                let syms = alphabet
                    .as_ref()
                    .ok_or_else(|| bad(ln, "alphabet must precede states"))?
                    .len();
                edges = vec![vec![None; syms]; n];
                eps = vec![None; n];
            }
            "initial" => {
                initial = Some(
                    rest.first()
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(|| bad(ln, "initial needs a state id"))?,
                );
            }
            "rank" => {
                let id: usize = rest
                    .first()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| bad(ln, "rank needs `rank <id> <int>`"))?;
                let val: i64 = rest
                    .get(1)
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| bad(ln, "rank needs an integer value"))?;
                if id >= ranks.len() {
                    return Err(bad(ln, "rank state id out of range"));
                }
                let rank = Rank::from_int(val).ok_or(AutError::BadRank {
                    state: id,
                    msg: format!("value {val} below -2"),
                })?;
                if !allow_forgetful && rank.is_negative() {
                    return Err(AutError::BadRank {
                        state: id,
                        msg: format!("plain input requires non-negative ranks, got {val}"),
                    });
                }
                ranks[id] = Some(rank);
            }
            "edge" => {
                let src: usize = rest
                    .first()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| bad(ln, "edge needs `edge <src> <tok|eps> <dst>`"))?;
                let tok = *rest.get(1).ok_or_else(|| bad(ln, "edge needs a symbol"))?;
                let dst: usize = rest
                    .get(2)
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| bad(ln, "edge needs a target id"))?;
                if src >= edges.len() || dst >= edges.len() {
                    return Err(bad(ln, "edge state id out of range"));
                }
                if tok == "eps" {
                    if !allow_forgetful {
                        return Err(bad(ln, "eps edges are only valid in forgetful output"));
                    }
                    if eps[src].is_some() {
                        return Err(AutError::DuplicateEdge {
                            state: src,
                            symbol: "eps".into(),
                        });
                    }
                    eps[src] = Some(dst);
                } else {
                    let al = alphabet.as_ref().ok_or_else(|| bad(ln, "alphabet must precede edges"))?;
                    let sym = al
                        .id_of(tok)
                        .ok_or_else(|| AutError::UnknownSymbol(tok.to_string()))?;
                    if edges[src][sym].is_some() {
                        return Err(AutError::DuplicateEdge {
                            state: src,
                            symbol: tok.to_string(),
                        });
                    }
                    edges[src][sym] = Some(dst);
                }
            }
            _ => return Err(bad(ln, &format!("unknown directive `{key}`"))),
        }
    }

    let alphabet = alphabet.ok_or_else(|| bad(0, "missing alphabet"))?;
    let states = states.ok_or_else(|| bad(0, "missing states"))?;
    if states == 0 {
        return Err(bad(0, "automaton needs at least one state"));
    }
    let initial = initial.ok_or_else(|| bad(0, "missing initial"))?;
    if initial >= states {
        return Err(bad(0, "initial state out of range"));
    }
    for (id, r) in ranks.iter().enumerate() {
        if r.is_none() {
            return Err(AutError::BadRank {
                state: id,
                msg: "missing rank line".into(),
            });
        }
    }
    Ok(RawAut {
        alphabet,
        states,
        initial,
        ranks,
        edges,
        eps,
    })
}

/// Parses a plain input DPA, verifying rank non-negativity and totality of
/// the transition function.
pub fn parse_dpa(text: &str) -> Result<Dpa> {
    let raw = parse_raw(text, false)?;
    let mut delta = Vec::with_capacity(raw.states);
    for (q, row) in raw.edges.iter().enumerate() {
        let mut out = Vec::with_capacity(row.len());
        for (s, tgt) in row.iter().enumerate() {
            match tgt {
                Some(t) => out.push(*t),
                None => {
                    return Err(AutError::MissingEdge {
                        state: q,
                        symbol: raw.alphabet.symbol(s).token().to_string(),
                    })
                }
            }
        }
        delta.push(out);
    }
    let dpa = Dpa {
        alphabet: raw.alphabet,
        initial: raw.initial,
        delta,
        kappa: raw.ranks.into_iter().map(|r| r.unwrap()).collect(),
    };
    dpa.validate()?;
    Ok(dpa)
}

/// Parses forgetful output (negative ranks and `eps` edges allowed) and
/// re-validates the structural invariants of forgetful automata.
pub fn parse_forgetful(text: &str) -> Result<ForgetfulDpa> {
    let raw = parse_raw(text, true)?;
    let aut = ForgetfulDpa {
        alphabet: raw.alphabet,
        initial: raw.initial,
        delta: raw.edges,
        eps: raw.eps,
        kappa: raw.ranks.into_iter().map(|r| r.unwrap()).collect(),
    };
    aut.validate()?;
    Ok(aut)
}

/// Canonical `dpa v1` serialization; `parse(serialize(x))` is structurally
/// identical to `x`.
pub fn serialize_dpa(aut: &Dpa) -> String {
    let mut out = String::from("dpa v1\n");
    out.push_str(&format!(
        "alphabet {}\n",
        aut.alphabet
            .symbols()
            .iter()
            .map(|s| s.token())
            .collect::<Vec<_>>()
            .join(" ")
    ));
    out.push_str(&format!("states {}\n", aut.states()));
    out.push_str(&format!("initial {}\n", aut.initial));
    for (q, r) in aut.kappa.iter().enumerate() {
        out.push_str(&format!("rank {q} {}\n", r.to_int().unwrap()));
    }
    for (q, row) in aut.delta.iter().enumerate() {
        for (s, t) in row.iter().enumerate() {
            out.push_str(&format!("edge {q} {} {t}\n", aut.alphabet.symbol(s).token()));
        }
    }
    out
}

pub fn serialize_forgetful(aut: &ForgetfulDpa) -> String {
    let mut out = String::from("dpa v1\n");
    out.push_str(&format!(
        "alphabet {}\n",
        aut.alphabet
            .symbols()
            .iter()
            .map(|s| s.token())
            .collect::<Vec<_>>()
            .join(" ")
    ));
    out.push_str(&format!("states {}\n", aut.states()));
    out.push_str(&format!("initial {}\n", aut.initial));
    for (q, r) in aut.kappa.iter().enumerate() {
        out.push_str(&format!("rank {q} {}\n", r.to_int().unwrap()));
    }
    for (q, row) in aut.delta.iter().enumerate() {
        for (s, t) in row.iter().enumerate() {
            if let Some(t) = t {
                out.push_str(&format!("edge {q} {} {t}\n", aut.alphabet.symbol(s).token()));
            }
        }
    }
    for (q, t) in aut.eps.iter().enumerate() {
        if let Some(t) = t {
            out.push_str(&format!("edge {q} eps {t}\n"));
        }
    }
    out
}

fn dot_color(c: Color) -> &'static str {
    match c {
        Color::White => "gray", // white would be invisible on white canvases
        Color::Green => "green",
        Color::Yellow => "yellow",
        Color::Red => "red",
        Color::Black => "black",
    }
}

/// DOT export of a plain DPA. Nodes are labeled `q<id>/<rank>`; no color
/// attributes are emitted.
pub fn export_dot(aut: &Dpa) -> String {
    let mut out = String::from("digraph dpa {\n  rankdir=LR;\n");
    out.push_str(&format!("  init [shape=point]; init -> {};\n", aut.initial));
    for q in 0..aut.states() {
        out.push_str(&format!(
            "  {q} [shape=circle, label=\"q{q}/{}\"];\n",
            aut.kappa[q]
        ));
    }
    for (q, row) in aut.delta.iter().enumerate() {
        for (s, t) in row.iter().enumerate() {
            out.push_str(&format!(
                "  {q} -> {t} [label=\"{}\"];\n",
                aut.alphabet.symbol(s).token()
            ));
        }
    }
    out.push_str("}\n");
    out
}

/// DOT export of a forgetful automaton with θ-colored edges; ε edges are
/// dashed and carry no color.
pub fn export_dot_forgetful(aut: &ForgetfulDpa) -> String {
    let mut out = String::from("digraph dpa {\n  rankdir=LR;\n");
    out.push_str(&format!("  init [shape=point]; init -> {};\n", aut.initial));
    for q in 0..aut.states() {
        out.push_str(&format!(
            "  {q} [shape=circle, label=\"q{q}/{}\"];\n",
            aut.kappa[q]
        ));
    }
    for (q, row) in aut.delta.iter().enumerate() {
        for (s, t) in row.iter().enumerate() {
            if let Some(t) = t {
                let color = dot_color(aut.edge_color(q, s));
                out.push_str(&format!(
                    "  {q} -> {t} [label=\"{}\", color={color}];\n",
                    aut.alphabet.symbol(s).token()
                ));
            }
        }
    }
    for (q, t) in aut.eps.iter().enumerate() {
        if let Some(t) = t {
            out.push_str(&format!("  {q} -> {t} [label=\"eps\", style=dashed];\n"));
        }
    }
    out.push_str("}\n");
    out
}
