use omega_robust::*;
use omega_robust::color::DomSufEngine;
use std::collections::HashMap;

fn main() {
    let input = fixtures::l_no_redundant_grants();
    let an = Analyzer::new(&input).unwrap();
    let al = an.aut.alphabet.clone();
    let n = al.len();
    let mut zs: Vec<Vec<usize>> = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..4 {
        let mut next = vec![];
        for w in &layer { for s in 0..n { let mut v = w.clone(); v.push(s); next.push(v); } }
        zs.extend(next.clone());
        layer = next;
    }
    let g_of = |e: &DomSufEngine| an.infix_rank_states(an.aut.initial, e.dom_suffix());
    let mut frontier: Vec<(Vec<usize>, DomSufEngine)> = vec![(vec![], DomSufEngine::new(&an, an.aut.initial))];
    let mut keys = std::collections::HashSet::new();
    keys.insert(frontier[0].1.key());
    let mut rows: HashMap<Vec<Rank>, Vec<usize>> = HashMap::new();
    for depth in 0..7 {
        for (w, e) in &frontier {
            let sig: Vec<Rank> = zs.iter().map(|z| {
                let mut cur = e.clone();
                for &s in z { let (_, nx) = cur.peek(s); cur = nx; }
                g_of(&cur)
            }).collect();
            rows.entry(sig).or_insert_with(|| w.clone());
        }
        println!("depth {depth}: rows={} keys={}", rows.len(), keys.len());
        let mut next = vec![];
        for (w, e) in &frontier {
            for s in 0..n {
                let (_, nx) = e.peek(s);
                if keys.insert(nx.key()) {
                    let mut v = w.clone(); v.push(s);
                    next.push((v, nx));
                }
            }
        }
        frontier = next;
    }
    let mut accs: Vec<_> = rows.values().cloned().collect();
    accs.sort_by_key(|w| (w.len(), w.clone()));
    for w in accs.iter().take(40) {
        let mut e = DomSufEngine::new(&an, an.aut.initial);
        for &s in w { let (_, nx) = e.peek(s); e = nx; }
        println!("  row-rep {:14} dom={:20} g={}", al.render_ids(w), al.render_ids(e.dom_suffix()), g_of(&e));
    }
}
