//! Independent oracles for the integration tests. Nothing here uses the
//! library's planarity test, drawing type or search.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

pub type Edge = (usize, usize);

/// Planarity by biconnected decomposition and face embedding
/// (Demoucron, Malgrange and Pertuiset) on each block.
pub fn is_planar(n: usize, edges: &[Edge]) -> bool {
    if n >= 3 && edges.len() > 3 * n - 6 {
        return false;
    }
    blocks(n, edges).iter().all(|b| block_planar(b))
}

fn blocks(n: usize, edges: &[Edge]) -> Vec<Vec<Edge>> {
    let mut adj = vec![Vec::new(); n];
    for (i, &(a, b)) in edges.iter().enumerate() {
        adj[a].push((b, i));
        adj[b].push((a, i));
    }
    struct St<'a> {
        adj: &'a [Vec<(usize, usize)>],
        edges: &'a [Edge],
        disc: Vec<usize>,
        low: Vec<usize>,
        timer: usize,
        stack: Vec<usize>,
        out: Vec<Vec<Edge>>,
    }
    fn dfs(s: &mut St, u: usize, parent_edge: usize) {
        s.disc[u] = s.timer;
        s.low[u] = s.timer;
        s.timer += 1;
        for k in 0..s.adj[u].len() {
            let (w, e) = s.adj[u][k];
            if e == parent_edge {
                continue;
            }
            if s.disc[w] == usize::MAX {
                s.stack.push(e);
                dfs(s, w, e);
                s.low[u] = s.low[u].min(s.low[w]);
                if s.low[w] >= s.disc[u] {
                    let mut block = Vec::new();
                    while let Some(x) = s.stack.pop() {
                        block.push(s.edges[x]);
                        if x == e {
                            break;
                        }
                    }
                    s.out.push(block);
                }
            } else if s.disc[w] < s.disc[u] {
                s.stack.push(e);
                s.low[u] = s.low[u].min(s.disc[w]);
            }
        }
    }
    let mut s = St {
        adj: &adj,
        edges,
        disc: vec![usize::MAX; n],
        low: vec![0; n],
        timer: 0,
        stack: Vec::new(),
        out: Vec::new(),
    };
    for v in 0..n {
        if s.disc[v] == usize::MAX {
            dfs(&mut s, v, usize::MAX);
        }
    }
    s.out
}

fn block_planar(es: &[Edge]) -> bool {
    if es.len() < 3 {
        return true;
    }
    let vs: Vec<usize> = es.iter().flat_map(|&(a, b)| [a, b]).collect::<BTreeSet<_>>().into_iter().collect();
    let nv = vs.len();
    if es.len() > 3 * nv - 6 {
        return false;
    }
    let id = |x: usize| vs.binary_search(&x).unwrap();
    let mut adj = vec![Vec::new(); nv];
    for &(a, b) in es {
        adj[id(a)].push(id(b));
        adj[id(b)].push(id(a));
    }
    let key = |a: usize, b: usize| (a.min(b), a.max(b));
    let cycle = find_cycle(&adj);
    let mut in_h = vec![false; nv];
    let mut h_edges = HashSet::new();
    for (i, &x) in cycle.iter().enumerate() {
        in_h[x] = true;
        h_edges.insert(key(x, cycle[(i + 1) % cycle.len()]));
    }
    let mut faces = vec![cycle.clone(), cycle];
    while h_edges.len() < es.len() {
        let frags = fragments(&adj, &in_h, &h_edges);
        let mut best: Option<(usize, usize)> = None;
        for (k, (att, _)) in frags.iter().enumerate() {
            let ok: Vec<usize> = (0..faces.len()).filter(|&f| att.iter().all(|a| faces[f].contains(a))).collect();
            match ok.len() {
                0 => return false,
                1 => {
                    best = Some((k, ok[0]));
                    break;
                }
                _ => {
                    if best.is_none() {
                        best = Some((k, ok[0]));
                    }
                }
            }
        }
        let (k, f) = best.expect("a fragment remains");
        let path = &frags[k].1;
        let face = faces.swap_remove(f);
        let (a, b) = (path[0], *path.last().unwrap());
        let ia = face.iter().position(|&x| x == a).unwrap();
        let ib = face.iter().position(|&x| x == b).unwrap();
        let walk = |from: usize, to: usize| {
            let mut w = vec![face[from]];
            let mut i = from;
            while i != to {
                i = (i + 1) % face.len();
                w.push(face[i]);
            }
            w
        };
        let inner = &path[1..path.len() - 1];
        let mut f1 = walk(ia, ib);
        f1.extend(inner.iter().rev());
        let mut f2 = walk(ib, ia);
        f2.extend(inner.iter());
        faces.push(f1);
        faces.push(f2);
        for w in path.windows(2) {
            h_edges.insert(key(w[0], w[1]));
        }
        for &x in path {
            in_h[x] = true;
        }
    }
    true
}

fn find_cycle(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![usize::MAX; n];
    let mut stack = vec![(0usize, 0usize)];
    depth[0] = 0;
    while let Some((u, k)) = stack.pop() {
        if k < adj[u].len() {
            stack.push((u, k + 1));
            let w = adj[u][k];
            if depth[w] == usize::MAX {
                depth[w] = depth[u] + 1;
                parent[w] = u;
                stack.push((w, 0));
            } else if w != parent[u] && depth[w] < depth[u] {
                let mut c = vec![u];
                let mut x = u;
                while x != w {
                    x = parent[x];
                    c.push(x);
                }
                return c;
            }
        }
    }
    unreachable!("a block with three or more edges has a cycle")
}

/// Fragments of the block relative to the embedded part: attachment set
/// and one path between two distinct attachments.
fn fragments(adj: &[Vec<usize>], in_h: &[bool], h_edges: &HashSet<Edge>) -> Vec<(Vec<usize>, Vec<usize>)> {
    let n = adj.len();
    let key = |a: usize, b: usize| (a.min(b), a.max(b));
    let mut out = Vec::new();
    for a in 0..n {
        for &b in &adj[a] {
            if a < b && in_h[a] && in_h[b] && !h_edges.contains(&key(a, b)) {
                out.push((vec![a, b], vec![a, b]));
            }
        }
    }
    let mut comp = vec![usize::MAX; n];
    for s in 0..n {
        if in_h[s] || comp[s] != usize::MAX {
            continue;
        }
        let c = out.len();
        let mut members = vec![s];
        comp[s] = c;
        let mut q = VecDeque::from([s]);
        let mut att = BTreeSet::new();
        while let Some(x) = q.pop_front() {
            for &y in &adj[x] {
                if in_h[y] {
                    att.insert(y);
                } else if comp[y] == usize::MAX {
                    comp[y] = c;
                    members.push(y);
                    q.push_back(y);
                }
            }
        }
        let att: Vec<usize> = att.into_iter().collect();
        let a = att[0];
        let start = *adj[a].iter().find(|&&y| comp[y] == c).unwrap();
        let mut prev = vec![usize::MAX; n];
        prev[start] = start;
        let mut q = VecDeque::from([start]);
        let mut end = None;
        'bfs: while let Some(x) = q.pop_front() {
            for &y in &adj[x] {
                if in_h[y] && y != a {
                    end = Some((x, y));
                    break 'bfs;
                }
            }
            for &y in &adj[x] {
                if !in_h[y] && comp[y] == c && prev[y] == usize::MAX {
                    prev[y] = x;
                    q.push_back(y);
                }
            }
        }
        let (mut x, b) = end.expect("blocks give every fragment two attachments");
        let mut path = vec![b];
        loop {
            path.push(x);
            if x == start {
                break;
            }
            x = prev[x];
        }
        path.push(a);
        path.reverse();
        out.push((att, path));
    }
    out
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Graph on which a planar embedding exists iff the crossings `pairs`, met
/// in the given orders along each edge, can be drawn with every crossing a
/// proper crossing: each crossing node is surrounded by a 4-cycle rim.
fn pinned_planarization(n: usize, edges: &[Edge], pairs: &[Edge], orders: &[Vec<usize>]) -> (usize, Vec<Edge>) {
    let c = pairs.len();
    let mut nodes = n + c;
    // node sequence along each edge
    let seqs: Vec<Vec<usize>> = edges
        .iter()
        .enumerate()
        .map(|(e, &(a, b))| {
            let mut s = vec![a];
            s.extend(orders[e].iter().map(|&x| n + x));
            s.push(b);
            s
        })
        .collect();
    let mut out = Vec::new();
    // spoke[x] = [prev on first edge, prev on second, next on first, next on second]
    let mut spoke = vec![[usize::MAX; 4]; c];
    for (e, s) in seqs.iter().enumerate() {
        let mut chain = vec![s[0]];
        for i in 1..s.len() {
            for (end, side) in [(s[i - 1], 2usize), (s[i], 0usize)] {
                if end >= n {
                    let x = end - n;
                    let slot = side + usize::from(pairs[x].1 == e);
                    let sub = nodes;
                    nodes += 1;
                    spoke[x][slot] = sub;
                    chain.push(sub);
                }
            }
            chain.push(s[i]);
        }
        for w in chain.windows(2) {
            out.push((w[0], w[1]));
        }
    }
    for r in &spoke {
        for i in 0..4 {
            out.push((r[i], r[(i + 1) % 4]));
        }
    }
    (nodes, out)
}

/// Every way of ordering the crossings along each edge.
fn for_each_order(m: usize, pairs: &[Edge], f: &mut dyn FnMut(&[Vec<usize>]) -> bool) -> bool {
    let mut on = vec![Vec::new(); m];
    for (x, &(e, g)) in pairs.iter().enumerate() {
        on[e].push(x);
        on[g].push(x);
    }
    let choices: Vec<Vec<Vec<usize>>> = on.iter().map(|l| permutations(l)).collect();
    let mut idx = vec![0; m];
    loop {
        let orders: Vec<Vec<usize>> = (0..m).map(|e| choices[e][idx[e]].clone()).collect();
        if f(&orders) {
            return true;
        }
        let mut i = 0;
        while i < m {
            idx[i] += 1;
            if idx[i] < choices[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
        if i == m {
            return false;
        }
    }
}

/// Whether the edge pairs in `pairs` (non-adjacent, distinct) are exactly
/// the crossing pairs of some simple drawing.
pub fn realizable(n: usize, edges: &[Edge], pairs: &[Edge]) -> bool {
    for_each_order(edges.len(), pairs, &mut |orders| {
        let (nn, es) = pinned_planarization(n, edges, pairs, orders);
        is_planar(nn, &es)
    })
}

/// Non-adjacent edge pairs `(e, f)`, `e < f`.
pub fn independent_pairs(edges: &[Edge]) -> Vec<Edge> {
    let mut out = Vec::new();
    for e in 0..edges.len() {
        for f in e + 1..edges.len() {
            let (a, b) = edges[e];
            let (c, d) = edges[f];
            if a != c && a != d && b != c && b != d {
                out.push((e, f));
            }
        }
    }
    out
}

fn subsets(items: &[Edge], size: usize, start: usize, cur: &mut Vec<Edge>, f: &mut dyn FnMut(&[Edge]) -> bool) -> bool {
    if cur.len() == size {
        return f(cur);
    }
    for i in start..items.len() {
        cur.push(items[i]);
        if subsets(items, size, i + 1, cur, f) {
            return true;
        }
        cur.pop();
    }
    false
}

/// Fewest crossings of a simple drawing in which every crossing pair has a
/// side crossed at most `k` times, searching up to `max` crossings.
pub fn min_k_crossings(n: usize, edges: &[Edge], k: usize, max: usize) -> Option<usize> {
    let pairs = independent_pairs(edges);
    for c in 0..=max.min(pairs.len()) {
        let found = subsets(&pairs, c, 0, &mut Vec::new(), &mut |sel| {
            let mut cr = vec![0; edges.len()];
            for &(e, f) in sel {
                cr[e] += 1;
                cr[f] += 1;
            }
            sel.iter().all(|&(e, f)| cr[e] <= k || cr[f] <= k) && realizable(n, edges, sel)
        });
        if found {
            return Some(c);
        }
    }
    None
}

pub fn complete_edges(n: usize) -> Vec<Edge> {
    let mut es = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            es.push((a, b));
        }
    }
    es
}

fn all_perms(n: usize) -> Vec<Vec<usize>> {
    permutations(&(0..n).collect::<Vec<_>>())
}

/// Number of crossing-pair sets of simple drawings of `K_n` up to vertex
/// relabeling. Every `K_{n-1}` restriction of a candidate must itself be
/// realizable, which prunes the search.
pub fn weak_classes_of_complete(n: usize) -> usize {
    let edges = complete_edges(n);
    let idx = |a: usize, b: usize| edges.iter().position(|&e| e == (a.min(b), a.max(b))).unwrap();
    let sets = realizable_sets_of_complete(n);
    let perms = all_perms(n);
    let canon = |sel: &[Edge]| {
        perms
            .iter()
            .map(|p| {
                let mut v: Vec<Edge> = sel
                    .iter()
                    .map(|&(e, f)| {
                        let (a, b) = edges[e];
                        let (c, d) = edges[f];
                        let (x, y) = (idx(p[a], p[b]), idx(p[c], p[d]));
                        (x.min(y), x.max(y))
                    })
                    .collect();
                v.sort_unstable();
                v
            })
            .min()
            .unwrap()
    };
    sets.iter().map(|s| canon(s)).collect::<BTreeSet<_>>().len()
}

fn realizable_sets_of_complete(n: usize) -> Vec<Vec<Edge>> {
    let edges = complete_edges(n);
    let pairs = independent_pairs(&edges);
    let smaller: Option<HashSet<Vec<Edge>>> = (n > 4).then(|| {
        let sub = complete_edges(n - 1);
        realizable_sets_of_complete(n - 1)
            .into_iter()
            .map(|s| {
                let mut v: Vec<Edge> = s.iter().map(|&(e, f)| (sub[e], sub[f])).map(|(x, y)| pack(x, y)).collect();
                v.sort_unstable();
                v
            })
            .collect()
    });
    let mut out = Vec::new();
    let total = 1u64 << pairs.len();
    for mask in 0..total {
        let sel: Vec<Edge> = (0..pairs.len()).filter(|&i| mask >> i & 1 == 1).map(|i| pairs[i]).collect();
        if let Some(sm) = &smaller {
            // restriction to every vertex-deleted subgraph, renumbered
            let ok = (0..n).all(|drop| {
                let r = |x: usize| if x > drop { x - 1 } else { x };
                let mut v: Vec<Edge> = sel
                    .iter()
                    .filter(|&&(e, f)| {
                        let (a, b) = edges[e];
                        let (c, d) = edges[f];
                        ![a, b, c, d].contains(&drop)
                    })
                    .map(|&(e, f)| {
                        let (a, b) = edges[e];
                        let (c, d) = edges[f];
                        pack((r(a), r(b)), (r(c), r(d)))
                    })
                    .collect();
                v.sort_unstable();
                sm.contains(&v)
            });
            if !ok {
                continue;
            }
        }
        if realizable(n, &edges, &sel) {
            out.push(sel);
        }
    }
    out
}

/// A crossing pair as two vertex pairs, order-independent.
fn pack(x: Edge, y: Edge) -> Edge {
    let a = x.0 * 16 + x.1;
    let b = y.0 * 16 + y.1;
    (a.min(b), a.max(b))
}

/// Connected graphs on `n` vertices, one per isomorphism class.
pub fn connected_graphs(n: usize) -> Vec<Vec<Edge>> {
    let all = complete_edges(n);
    let perms = all_perms(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1 << all.len()) {
        let es: Vec<Edge> = (0..all.len()).filter(|&i| mask >> i & 1 == 1).map(|i| all[i]).collect();
        if !connected(n, &es) {
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| {
                let mut v: Vec<Edge> = es.iter().map(|&(a, b)| (p[a].min(p[b]), p[a].max(p[b]))).collect();
                v.sort_unstable();
                v
            })
            .min()
            .unwrap();
        if seen.insert(canon) {
            out.push(es);
        }
    }
    out
}

pub fn connected(n: usize, edges: &[Edge]) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for &(a, b) in edges {
            for (p, q) in [(a, b), (b, a)] {
                if p == x && !seen[q] {
                    seen[q] = true;
                    stack.push(q);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}
