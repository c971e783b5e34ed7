use std::collections::{BTreeSet, HashMap};

use super::matching::Matching;

/// Every matching obtained from `a` by turning two side-by-side arcs into nested ones.
pub fn horizontal_merges(a: &Matching) -> Vec<Matching> {
    let arcs = a.all_arcs();
    let mut out = BTreeSet::new();
    for &(p, q) in &arcs {
        for &(r, s) in &arcs {
            if q >= r {
                continue;
            }
            let mut partner = a.partners().to_vec();
            partner[p] = s as u8;
            partner[s] = p as u8;
            partner[q] = r as u8;
            partner[r] = q as u8;
            if let Ok(b) = Matching::from_partner(a.triple(), partner) {
                out.insert(b);
            }
        }
    }
    out.into_iter().collect()
}

/// `a -> b`: `b` is one horizontal merging away from `a`.
pub fn arrow_relation(a: &Matching, b: &Matching) -> bool {
    a.triple() == b.triple() && horizontal_merges(a).iter().any(|m| m == b)
}

/// Linear extension of the arrow order. Returns indices into `items`; among available
/// elements the one with the smallest index goes first.
pub fn linear_extension(items: &[Matching]) -> Vec<usize> {
    let index: HashMap<&Matching, usize> = items.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut succ = vec![Vec::new(); items.len()];
    let mut indeg = vec![0usize; items.len()];
    for (i, a) in items.iter().enumerate() {
        for b in horizontal_merges(a) {
            if let Some(&j) = index.get(&b) {
                succ[i].push(j);
                indeg[j] += 1;
            }
        }
    }
    let mut ready: BTreeSet<usize> = (0..items.len()).filter(|&i| indeg[i] == 0).collect();
    let mut order = Vec::with_capacity(items.len());
    while let Some(i) = ready.pop_first() {
        order.push(i);
        for &j in &succ[i] {
            indeg[j] -= 1;
            if indeg[j] == 0 {
                ready.insert(j);
            }
        }
    }
    assert_eq!(order.len(), items.len(), "arrow relation has a cycle");
    order
}
