//! Reading a partition back from a drawing of the reduction graph.
//!
//! The skeleton gadgets (`s-a`, `a-b`, `b-c`, `c-t`) cut the sphere into
//! regions. Regions are computed on the planarization by merging the two
//! faces beside every segment of a non-skeleton edge. Small regions lie inside
//! one gadget; the `n` large ones are the faces between consecutive paths,
//! and each `u_j` belongs to exactly one of them.

use std::collections::BTreeSet;

use super::ReductionArtifact;
use crate::drawing::Drawing;
use crate::error::{Error, Result};
use crate::partition::Partition;

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, x: usize) -> usize {
        let mut x = x;
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        self.0[a] = b;
    }
}

/// The partition whose triplet `i` holds the values of the `u_j` drawn in
/// the face between paths `i` and `i + 1`.
///
/// Requires every gadget edge to be crossed by edges of its own gadget only.
pub fn extract_partition(art: &ReductionArtifact, d: &Drawing) -> Result<Partition> {
    if d.graph() != &art.graph {
        return Err(Error::InvalidArgument("drawing is not a drawing of the artifact's graph".into()));
    }
    let owner = art.gadget_of_edge();
    for c in d.crossings() {
        let [e, f] = c.pair;
        if (owner[e].is_some() || owner[f].is_some()) && owner[e] != owner[f] {
            let k = owner[e].or(owner[f]).unwrap();
            let role = art.gadgets[k].role.map_or_else(|| format!("#{k}"), |r| r.to_string());
            return Err(Error::GadgetCrossedExternally(format!(
                "gadget {role}: {} crosses {}",
                d.edge_name(e),
                d.edge_name(f)
            )));
        }
    }
    let path_of_edge: Vec<Option<usize>> =
        owner.iter().map(|o| o.and_then(|k| art.gadgets[k].role.and_then(|r| r.skeleton_path()))).collect();
    let map = d.plane_map();
    let (faces, face_of) = map.faces();
    let mut dsu = Dsu((0..faces.len()).collect());
    for x in (0..map.dart_count()).step_by(2) {
        if map.alive[x] && path_of_edge[map.edge[x]].is_none() {
            dsu.union(face_of[x], face_of[x + 1]);
        }
    }
    let mut gadgets_of: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); faces.len()];
    for (f, darts) in faces.iter().enumerate() {
        let r = dsu.find(f);
        for &x in darts {
            if path_of_edge[map.edge[x]].is_some() {
                gadgets_of[r].insert(owner[map.edge[x]].unwrap());
            }
        }
    }
    let n = art.instance.n;
    let big: Vec<usize> = (0..faces.len()).filter(|&r| dsu.0[r] == r && gadgets_of[r].len() >= 2).collect();
    let shape = |m: String| Error::SkeletonShape(m);
    if big.len() != n {
        return Err(shape(format!("{} regions between paths, expected {n}", big.len())));
    }
    // paths touched by each large region, all four gadgets of each
    let mut region_paths = Vec::with_capacity(n);
    for &r in &big {
        let paths: BTreeSet<usize> =
            gadgets_of[r].iter().map(|&k| art.gadgets[k].role.and_then(|x| x.skeleton_path()).unwrap()).collect();
        if gadgets_of[r].len() != 4 * paths.len() || paths.len() != n.min(2) {
            return Err(shape(format!("a region touches paths {paths:?} incompletely")));
        }
        region_paths.push(paths);
    }
    let mut face_index = vec![usize::MAX; big.len()];
    let mut taken = vec![false; n];
    for i in 0..n {
        let want: BTreeSet<usize> = [i + 1, (i + 1) % n + 1].into_iter().collect();
        let k = (0..big.len())
            .find(|&k| !taken[k] && region_paths[k] == want)
            .ok_or_else(|| shape(format!("no region between paths {} and {}", i + 1, (i + 1) % n + 1)))?;
        taken[k] = true;
        face_index[k] = i;
    }
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (j, &u) in art.wiring.u.iter().enumerate() {
        let x = map.first[u];
        let r = dsu.find(face_of[x]);
        let k = big.iter().position(|&b| b == r).ok_or_else(|| {
            Error::AmbiguousPlacement(format!("{} is not inside a face between two paths", art.graph.name(u)))
        })?;
        groups[face_index[k]].push(j);
    }
    let mut triplets = Vec::with_capacity(n);
    for (i, g) in groups.iter().enumerate() {
        if g.len() != 3 {
            return Err(Error::InvalidPartition(format!("face {} holds {} of the u-vertices", i + 1, g.len())));
        }
        triplets.push([g[0], g[1], g[2]]);
    }
    let p = Partition { triplets };
    p.check(&art.instance)?;
    Ok(p)
}
