//! Exhaustive enumeration of small connected graphs up to isomorphism,
//! used as a test corpus.

use crate::graph::Graph;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    permute(&mut items, 0, &mut out);
    out
}

fn permute(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == items.len() {
        out.push(items.clone());
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, out);
        items.swap(k, i);
    }
}

fn edge_index(n: usize) -> Vec<Vec<usize>> {
    let mut idx = vec![vec![0usize; n]; n];
    let mut next = 0;
    for i in 0..n {
        for j in i + 1..n {
            idx[i][j] = next;
            idx[j][i] = next;
            next += 1;
        }
    }
    idx
}

fn is_connected(n: usize, adj: &[u32]) -> bool {
    let mut seen = 1u32;
    let mut frontier = 1u32;
    while frontier != 0 {
        let u = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let fresh = adj[u] & !seen;
        seen |= fresh;
        frontier |= fresh;
    }
    seen.count_ones() as usize == n
}

/// All connected graphs on exactly `n` labeled-canonical vertices, one
/// representative per isomorphism class. Only practical for n <= 7.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    assert!(
        (2..=7).contains(&n),
        "enumeration supported for 2 <= n <= 7"
    );
    let bits = n * (n - 1) / 2;
    let idx = edge_index(n);
    let perms = permutations(n);
    // per permutation: where each edge bit moves
    let tables: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| {
            let mut t = vec![0usize; bits];
            for i in 0..n {
                for j in i + 1..n {
                    t[idx[i][j]] = idx[p[i]][p[j]];
                }
            }
            t
        })
        .collect();

    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();

    let mut out = Vec::new();
    'mask: for mask in 1u32..(1u32 << bits) {
        let mut adj = vec![0u32; n];
        for (b, &(i, j)) in pairs.iter().enumerate() {
            if mask >> b & 1 == 1 {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
        }
        if !is_connected(n, &adj) {
            continue;
        }
        // canonical form: lexicographically minimal over all relabelings
        for t in &tables[1..] {
            let mut image = 0u32;
            let mut rest = mask;
            while rest != 0 {
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                image |= 1 << t[b];
            }
            if image < mask {
                continue 'mask;
            }
        }
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(b, _)| mask >> b & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        out.push(Graph::from_edges(n, &edges).unwrap());
    }
    out
}

/// All connected graphs with between 2 and `max_n` vertices, one per
/// isomorphism class.
pub fn connected_graphs_up_to(max_n: usize) -> Vec<Graph> {
    (2..=max_n).flat_map(connected_graphs).collect()
}
