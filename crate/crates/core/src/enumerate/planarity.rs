//! Planarity testing with a combinatorial embedding.
//!
//! Each biconnected block is embedded by the path-addition method of
//! Demoucron, Malgrange and Pertuiset; block rotations are concatenated at
//! cut vertices. Quadratic, which is plenty for planarizations of small
//! graphs.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

/// A rotation system: for every vertex, its incident edge ids in
/// counter-clockwise order.
pub type Rotation = Vec<Vec<usize>>;

/// Embeds a loopless multigraph in the sphere, or returns `None` if it is
/// not planar. Parallel edges are drawn next to each other.
pub fn planar_embedding(n: usize, edges: &[(usize, usize)]) -> Option<Rotation> {
    assert!(edges.iter().all(|&(a, b)| a != b && a < n && b < n), "loopless graph on 0..n");
    // one representative per vertex pair
    let mut rep: HashMap<(usize, usize), usize> = HashMap::new();
    let mut parallel: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut simple = Vec::new();
    for (i, &(a, b)) in edges.iter().enumerate() {
        let key = (a.min(b), a.max(b));
        match rep.get(&key) {
            Some(&r) => parallel.entry(r).or_default().push(i),
            None => {
                rep.insert(key, i);
                simple.push(i);
            }
        }
    }
    if simple.len() > 3 * n.max(3) - 6 {
        return None;
    }
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for &i in &simple {
        let (a, b) = edges[i];
        adj[a].push((b, i));
        adj[b].push((a, i));
    }
    let mut rot: Rotation = vec![Vec::new(); n];
    for block in blocks(n, &adj) {
        let r = embed_block(edges, &block)?;
        for (v, list) in r {
            rot[v].extend(list);
        }
    }
    for (r, ps) in parallel {
        let (a, b) = edges[r];
        for (v, before) in [(a, false), (b, true)] {
            let pos = rot[v].iter().position(|&x| x == r).expect("representative embedded");
            for (k, &p) in ps.iter().enumerate() {
                if before {
                    rot[v].insert(pos, p);
                } else {
                    rot[v].insert(pos + 1 + k, p);
                }
            }
        }
    }
    Some(rot)
}

pub fn is_planar(n: usize, edges: &[(usize, usize)]) -> bool {
    planar_embedding(n, edges).is_some()
}

/// Edge ids of the biconnected blocks (bridges are blocks of one edge).
fn blocks(n: usize, adj: &[Vec<(usize, usize)>]) -> Vec<Vec<usize>> {
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut out = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        // (vertex, parent edge, next adjacency index)
        let mut dfs = vec![(root, usize::MAX, 0usize)];
        while let Some(&mut (v, pe, ref mut idx)) = dfs.last_mut() {
            if *idx < adj[v].len() {
                let (w, e) = adj[v][*idx];
                *idx += 1;
                if e == pe {
                    continue;
                }
                if disc[w] == usize::MAX {
                    stack.push(e);
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    dfs.push((w, e, 0));
                } else if disc[w] < disc[v] {
                    stack.push(e);
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                dfs.pop();
                if let Some(&(u, _, _)) = dfs.last() {
                    low[u] = low[u].min(low[v]);
                    if low[v] >= disc[u] {
                        let mut block = Vec::new();
                        while let Some(e) = stack.pop() {
                            block.push(e);
                            if e == pe {
                                break;
                            }
                        }
                        out.push(block);
                    }
                }
            }
        }
    }
    out
}

/// Embeds one biconnected block; faces are kept as vertex cycles with the
/// face on the right of every step.
fn embed_block(edges: &[(usize, usize)], block: &[usize]) -> Option<Vec<(usize, Vec<usize>)>> {
    if block.len() == 1 {
        let (a, b) = edges[block[0]];
        return Some(vec![(a, vec![block[0]]), (b, vec![block[0]])]);
    }
    let verts: BTreeSet<usize> = block.iter().flat_map(|&e| [edges[e].0, edges[e].1]).collect();
    let mut adj: BTreeMap<usize, Vec<(usize, usize)>> = verts.iter().map(|&v| (v, Vec::new())).collect();
    let mut edge_of: HashMap<(usize, usize), usize> = HashMap::new();
    for &e in block {
        let (a, b) = edges[e];
        adj.get_mut(&a).unwrap().push((b, e));
        adj.get_mut(&b).unwrap().push((a, e));
        edge_of.insert((a, b), e);
        edge_of.insert((b, a), e);
    }
    let mut in_h: BTreeSet<usize> = BTreeSet::new();
    let mut h_edges: BTreeSet<usize> = BTreeSet::new();
    let cycle = find_cycle(&adj)?;
    for i in 0..cycle.len() {
        in_h.insert(cycle[i]);
        h_edges.insert(edge_of[&(cycle[i], cycle[(i + 1) % cycle.len()])]);
    }
    let mut rev = cycle.clone();
    rev.reverse();
    let mut faces: Vec<Vec<usize>> = vec![cycle, rev];
    while h_edges.len() < block.len() {
        let frags = fragments(&adj, &in_h, &h_edges);
        let mut choice: Option<(usize, usize)> = None;
        for (i, f) in frags.iter().enumerate() {
            let ok: Vec<usize> = (0..faces.len())
                .filter(|&j| f.attachments.iter().all(|a| faces[j].contains(a)))
                .collect();
            match ok.len() {
                0 => return None,
                1 => {
                    choice = Some((i, ok[0]));
                    break;
                }
                _ => {
                    if choice.is_none() {
                        choice = Some((i, ok[0]));
                    }
                }
            }
        }
        let (fi, face) = choice.expect("some fragment remains");
        let path = frag_path(&adj, &in_h, &frags[fi]);
        for w in path.windows(2) {
            h_edges.insert(edge_of[&(w[0], w[1])]);
        }
        in_h.extend(path.iter().copied());
        let (f1, f2) = split_face(&faces[face], &path);
        faces[face] = f1;
        faces.push(f2);
    }
    // next around v: arriving from u, the face continues to w
    let mut succ: HashMap<(usize, usize), usize> = HashMap::new();
    for f in &faces {
        let k = f.len();
        for i in 0..k {
            let (u, v, w) = (f[i], f[(i + 1) % k], f[(i + 2) % k]);
            succ.insert((v, edge_of[&(v, u)]), edge_of[&(v, w)]);
        }
    }
    let mut out = Vec::new();
    for (&v, nb) in &adj {
        let start = nb[0].1;
        let mut list = vec![start];
        let mut e = succ[&(v, start)];
        while e != start {
            list.push(e);
            e = succ[&(v, e)];
        }
        if list.len() != nb.len() {
            return None;
        }
        out.push((v, list));
    }
    Some(out)
}

/// A cycle through the first edge: the edge plus a shortest path avoiding it.
fn find_cycle(adj: &BTreeMap<usize, Vec<(usize, usize)>>) -> Option<Vec<usize>> {
    let (&a, nb) = adj.iter().next()?;
    let &(b, skip) = nb.first()?;
    let mut parent: HashMap<usize, usize> = HashMap::from([(a, a)]);
    let mut queue = VecDeque::from([a]);
    while let Some(v) = queue.pop_front() {
        for &(w, e) in &adj[&v] {
            if e == skip || parent.contains_key(&w) {
                continue;
            }
            parent.insert(w, v);
            if w == b {
                let mut cyc = vec![b];
                let mut x = b;
                while x != a {
                    x = parent[&x];
                    cyc.push(x);
                }
                return Some(cyc);
            }
            queue.push_back(w);
        }
    }
    None
}

struct Fragment {
    /// Edge not in `H` joining two vertices of `H`, or `None`.
    chord: Option<(usize, usize)>,
    /// Interior vertices (outside `H`).
    inner: BTreeSet<usize>,
    attachments: BTreeSet<usize>,
}

fn fragments(adj: &BTreeMap<usize, Vec<(usize, usize)>>, in_h: &BTreeSet<usize>, h_edges: &BTreeSet<usize>) -> Vec<Fragment> {
    let mut out = Vec::new();
    for &v in in_h {
        for &(w, e) in &adj[&v] {
            if v < w && in_h.contains(&w) && !h_edges.contains(&e) {
                out.push(Fragment { chord: Some((v, w)), inner: BTreeSet::new(), attachments: [v, w].into() });
            }
        }
    }
    let mut seen: BTreeSet<usize> = BTreeSet::new();
    for &s in adj.keys() {
        if in_h.contains(&s) || seen.contains(&s) {
            continue;
        }
        let mut inner = BTreeSet::from([s]);
        let mut attachments = BTreeSet::new();
        let mut queue = VecDeque::from([s]);
        seen.insert(s);
        while let Some(v) = queue.pop_front() {
            for &(w, _) in &adj[&v] {
                if in_h.contains(&w) {
                    attachments.insert(w);
                } else if seen.insert(w) {
                    inner.insert(w);
                    queue.push_back(w);
                }
            }
        }
        out.push(Fragment { chord: None, inner, attachments });
    }
    out
}

/// A path through the fragment between two distinct attachments.
fn frag_path(adj: &BTreeMap<usize, Vec<(usize, usize)>>, in_h: &BTreeSet<usize>, f: &Fragment) -> Vec<usize> {
    if let Some((a, b)) = f.chord {
        return vec![a, b];
    }
    let a = *f.attachments.iter().next().expect("attachment");
    let mut parent: HashMap<usize, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    for &(w, _) in &adj[&a] {
        if f.inner.contains(&w) && !parent.contains_key(&w) {
            parent.insert(w, a);
            queue.push_back(w);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &(w, _) in &adj[&v] {
            if w != a && in_h.contains(&w) {
                let mut path = vec![w, v];
                let mut x = v;
                while parent[&x] != a {
                    x = parent[&x];
                    path.push(x);
                }
                path.push(a);
                path.reverse();
                return path;
            }
            if f.inner.contains(&w) && !parent.contains_key(&w) {
                parent.insert(w, v);
                queue.push_back(w);
            }
        }
    }
    unreachable!("a fragment of a biconnected block has two attachments")
}

fn split_face(face: &[usize], path: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let k = face.len();
    let a = path[0];
    let b = *path.last().unwrap();
    let ia = face.iter().position(|&x| x == a).unwrap();
    let ib = face.iter().position(|&x| x == b).unwrap();
    let arc = |from: usize, to: usize| -> Vec<usize> {
        let mut out = vec![face[from]];
        let mut i = from;
        while i != to {
            i = (i + 1) % k;
            out.push(face[i]);
        }
        out
    };
    let inner = &path[1..path.len() - 1];
    // a .. b along the face, then back to a along the path
    let mut f1 = arc(ia, ib);
    f1.extend(inner.iter().rev());
    // b .. a along the face, then back to b along the path
    let mut f2 = arc(ib, ia);
    f2.extend(inner.iter());
    (f1, f2)
}
