//! Exact isomorphism testing for small general graphs: iterated neighbor
//! color refinement plus backtracking over color-compatible assignments.
//! Rooted trees have the faster canonical-code path in `rooted`.

use super::Graph;
use std::collections::HashMap;

/// Stable colors after iterated refinement by neighbor-color multisets.
fn refine(g: &Graph) -> Vec<u64> {
    let n = g.order();
    let mut colors: Vec<u64> = (0..n).map(|v| g.degree(v) as u64).collect();
    loop {
        let mut sigs: Vec<(u64, Vec<u64>)> = (0..n)
            .map(|v| {
                let mut ns: Vec<u64> = g.neighbors(v).map(|w| colors[w]).collect();
                ns.sort_unstable();
                (colors[v], ns)
            })
            .collect();
        let mut sorted = sigs.clone();
        sorted.sort();
        sorted.dedup();
        let index: HashMap<&(u64, Vec<u64>), u64> = sorted
            .iter()
            .enumerate()
            .map(|(i, s)| (s, i as u64))
            .collect();
        let next: Vec<u64> = sigs.drain(..).map(|s| index[&s]).collect();
        if next == colors {
            return colors;
        }
        colors = next;
    }
}

/// An isomorphism-invariant bucket key: refined color histogram plus the
/// color-pair edge profile.
pub fn invariant_key(g: &Graph) -> Vec<u64> {
    let colors = refine(g);
    let mut hist: Vec<u64> = colors.clone();
    hist.sort_unstable();
    let mut pairs: Vec<u64> = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            let (a, b) = (colors[u].min(colors[v]), colors[u].max(colors[v]));
            a << 32 | b
        })
        .collect();
    pairs.sort_unstable();
    let mut key = vec![g.order() as u64, g.size() as u64];
    key.extend(hist);
    key.push(u64::MAX);
    key.extend(pairs);
    key
}

/// Exact isomorphism test.
pub fn isomorphic(g: &Graph, h: &Graph) -> bool {
    if g.order() != h.order() || g.size() != h.size() {
        return false;
    }
    let n = g.order();
    if n == 0 {
        return true;
    }
    let cg = refine(g);
    let ch = refine(h);
    let mut sg = cg.clone();
    let mut sh = ch.clone();
    sg.sort_unstable();
    sh.sort_unstable();
    if sg != sh {
        return false;
    }
    // assign g-vertices in order of rarest color first
    let mut order: Vec<usize> = (0..n).collect();
    let mut freq: HashMap<u64, usize> = HashMap::new();
    for &c in &cg {
        *freq.entry(c).or_default() += 1;
    }
    order.sort_by_key(|&v| (freq[&cg[v]], cg[v], v));

    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn extend(
        g: &Graph,
        h: &Graph,
        cg: &[u64],
        ch: &[u64],
        order: &[usize],
        pos: usize,
        image: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let u = order[pos];
        for w in 0..h.order() {
            if used[w] || ch[w] != cg[u] {
                continue;
            }
            let ok = order[..pos]
                .iter()
                .all(|&p| g.adjacent(u, p) == h.adjacent(w, image[p]));
            if ok {
                image[u] = w;
                used[w] = true;
                if extend(g, h, cg, ch, order, pos + 1, image, used) {
                    return true;
                }
                used[w] = false;
                image[u] = usize::MAX;
            }
        }
        false
    }

    extend(g, h, &cg, &ch, &order, 0, &mut image, &mut used)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k3_and_p3_differ() {
        assert!(!isomorphic(&Graph::cycle(3), &Graph::path(3)));
    }

    #[test]
    fn relabelings_are_isomorphic() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)]).unwrap();
        let h = g.relabel(&[3, 1, 4, 0, 2]);
        assert!(isomorphic(&g, &h));
        assert_eq!(invariant_key(&g), invariant_key(&h));
    }

    #[test]
    fn regular_pair_c6_vs_2k3 () {
        let c6 = Graph::cycle(6);
        let two_k3 = Graph::cycle(3).union(&Graph::cycle(3)).unwrap();
        assert!(!isomorphic(&c6, &two_k3));
    }
}
