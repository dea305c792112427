use super::geometry::{from_polylines, Point};
use super::*;
use crate::graph::complete_graph;

fn straight(g: Graph, pos: &[Point]) -> Drawing {
    let m = g.edge_count();
    from_polylines(g, pos, &vec![Vec::new(); m]).unwrap()
}

fn planar_k4() -> Drawing {
    straight(complete_graph(4).unwrap(), &[(0.0, 0.0), (4.0, 0.0), (2.0, 4.0), (2.0, 1.0)])
}

fn crossed_k4() -> Drawing {
    straight(complete_graph(4).unwrap(), &[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)])
}

pub(crate) fn one_crossing_k5() -> Drawing {
    straight(
        complete_graph(5).unwrap(),
        &[(0.0, 0.0), (4.0, 0.0), (2.0, 4.0), (1.5, 1.0), (2.5, 1.0)],
    )
}

fn cycle(n: usize) -> Drawing {
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let edges = (0..n).map(|i| (i, (i + 1) % n)).collect();
    let pos: Vec<Point> = (0..n)
        .map(|i| {
            let a = i as f64 * std::f64::consts::TAU / n as f64;
            (a.cos(), a.sin())
        })
        .collect();
    straight(Graph::new(names, edges).unwrap(), &pos)
}

#[test]
fn planar_k4_is_valid_with_four_faces() {
    let d = planar_k4();
    assert!(d.is_valid());
    assert_eq!(d.crossing_count(), 0);
    assert_eq!(d.faces().len(), 4);
    assert!(d.is_simple());
    assert!(d.is_k_planar(0));
    assert!(d.is_min_k_planar(0));
}

#[test]
fn cycle_has_two_faces() {
    assert_eq!(cycle(5).faces().len(), 2);
}

#[test]
fn one_crossing_k5_obeys_euler() {
    let d = one_crossing_k5();
    assert!(d.is_valid());
    assert_eq!(d.crossing_count(), 1);
    let v = 5 + 1;
    let e = 10 + 2;
    assert_eq!(d.faces().len() as i64, 2 - v + e);
    assert!(d.is_simple());
    assert!(d.is_k_planar(1) && !d.is_k_planar(0));
    let crossed: Vec<usize> = (0..10).filter(|&e| d.crossings_of_edge(e).unwrap() == 1).collect();
    assert_eq!(crossed.len(), 2);
    assert!(d.crossings_of_edge(10).is_err());
}

#[test]
fn non_alternating_crossing_is_a_touching() {
    let d = crossed_k4();
    let nv = 4;
    let mut rotation = d.rotation().to_vec();
    let r = &mut rotation[nv];
    r.swap(1, 2);
    let bad = Drawing::from_parts_unchecked(d.graph().clone(), d.crossings().to_vec(), d.edge_paths().to_vec(), rotation);
    let report = bad.validate();
    assert!(report.has_touching());
    assert!(report.issues.iter().any(|i| i.to_string().contains("touching, not crossing")));
    assert!(Drawing::from_parts(bad.graph().clone(), bad.crossings().to_vec(), bad.edge_paths().to_vec(), bad.rotation().to_vec()).is_err());
}

#[test]
fn malformed_paths_are_reported() {
    let d = crossed_k4();
    let mut paths = d.edge_paths().to_vec();
    paths[0].reverse();
    let bad = Drawing::from_parts_unchecked(d.graph().clone(), d.crossings().to_vec(), paths, d.rotation().to_vec());
    assert!(matches!(bad.validate().issues[0], DrawingIssue::MalformedPath { .. }));
}

#[test]
fn double_crossing_is_not_simple() {
    let g = Graph::new(vec!["0", "1", "2", "3"], vec![(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
    let pos = [(0.0, 0.0), (4.0, 0.0), (4.0, 2.0), (0.0, 2.0)];
    let mut bends = vec![Vec::new(); 4];
    bends[0] = vec![(1.0, 3.0), (3.0, 3.0)];
    let d = from_polylines(g, &pos, &bends).unwrap();
    assert_eq!(d.crossing_count(), 2);
    assert_eq!(d.crossing_pairs(), vec![(0, 2), (0, 2)]);
    assert!(!d.is_simple());
}

#[test]
fn adjacent_crossing_is_not_simple() {
    let g = complete_graph(3).unwrap();
    let pos = [(0.0, 0.0), (4.0, 0.0), (2.0, 3.0)];
    let mut bends = vec![Vec::new(); 3];
    bends[0] = vec![(3.0, 2.0), (5.0, 1.0)];
    let d = from_polylines(g, &pos, &bends).unwrap();
    assert_eq!(d.crossing_count(), 1);
    assert!(d.is_valid());
    assert!(!d.is_simple());
}

#[test]
fn min_k_on_configurations() {
    // edges 0 and 1 both carry two crossings and cross each other
    let pairs = [(0, 1), (0, 2), (1, 3)];
    assert!(!config_is_min_k(4, &pairs, 1));
    assert!(config_is_min_k(4, &pairs, 2));
    assert!(config_is_min_k(4, &[], 0));
}

#[test]
fn induced_subdrawings() {
    let d = one_crossing_k5();
    let same = d.induced_subdrawing(&[true; 5]);
    assert_eq!(labeled_key(&same), labeled_key(&d));
    let k4 = d.induced_subdrawing(&[true, true, true, false, true]);
    assert!(k4.is_valid() && k4.is_simple());
    assert_eq!(k4.graph().edge_count(), 6);
    assert_eq!(k4.crossing_count(), 0);
    let scatter = d.induced_subdrawing(&[true, false, false, false, false]);
    assert_eq!(scatter.graph().edge_count(), 0);
}

#[test]
fn delete_edge_drops_its_crossings() {
    let d = crossed_k4();
    let crossed = (0..6).find(|&e| d.crossings_of_edge(e).unwrap() == 1).unwrap();
    let r = d.delete_edge(crossed);
    assert!(r.is_valid());
    assert_eq!(r.crossing_count(), 0);
    assert_eq!(r.graph().edge_count(), 5);
}

#[test]
fn keys_and_isomorphism() {
    let p = planar_k4();
    let c = crossed_k4();
    for mode in [KeyMode::Iso, KeyMode::WeakIso] {
        assert_ne!(canonical_key(&p, mode).unwrap(), canonical_key(&c, mode).unwrap());
        assert_eq!(canonical_key(&c, mode).unwrap(), canonical_key(&c.reflect(), mode).unwrap());
    }
    assert!(isomorphic(&c, &c.reflect()));
    assert!(isomorphic(&c, &c.relabel(&[2, 0, 3, 1])));
    assert!(weakly_isomorphic(&c, &c.reflect(), false).unwrap());
    assert!(!weakly_isomorphic(&p, &c, true).unwrap());
    // same names, other diagonals crossing
    let c2 = straight(complete_graph(4).unwrap(), &[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 1.0)]);
    assert!(!weakly_isomorphic(&c, &c2, false).unwrap());
    assert!(weakly_isomorphic(&c, &c2, true).unwrap());
}

#[test]
fn weak_iso_rejects_non_simple() {
    let g = complete_graph(3).unwrap();
    let mut bends = vec![Vec::new(); 3];
    bends[0] = vec![(3.0, 2.0), (5.0, 1.0)];
    let d = from_polylines(g, &[(0.0, 0.0), (4.0, 0.0), (2.0, 3.0)], &bends).unwrap();
    assert!(matches!(weakly_isomorphic(&d, &d, true), Err(Error::NotSimple)));
    assert!(canonical_key(&d, KeyMode::WeakIso).is_err());
}

#[test]
fn json_round_trip() {
    let d = one_crossing_k5();
    let v = d.to_json();
    assert_eq!(v["crossings"][0]["id"], "x#0");
    assert!(v["rotation"]["x#0"].as_array().unwrap()[0].as_str().unwrap().contains(':'));
    let back = Drawing::from_json(&v).unwrap();
    assert_eq!(back, d);

    // cyclic rotation of one node's list gives an equivalent drawing
    let mut w = v.clone();
    let r = w["rotation"]["0"].as_array_mut().unwrap();
    r.rotate_left(1);
    let shifted = Drawing::from_json(&w).unwrap();
    assert!(shifted.is_valid());
    assert_eq!(labeled_key(&shifted), labeled_key(&d));
}

#[test]
fn json_rejects_unknown_nodes() {
    let mut v = planar_k4().to_json();
    v["edge_paths"]["0"] = serde_json::json!(["0", "nowhere", "1"]);
    assert!(Drawing::from_json(&v).is_err());
}

mod props {
    use super::*;
    use proptest::prelude::*;

    fn random_drawing() -> impl Strategy<Value = Drawing> {
        (3usize..7).prop_flat_map(|n| {
            proptest::collection::vec((0i32..40, 0i32..40), n).prop_filter_map("degenerate layout", move |pts| {
                let pos: Vec<Point> = pts.iter().map(|&(x, y)| (x as f64 + 0.013 * y as f64, y as f64 + 0.007 * x as f64)).collect();
                let g = complete_graph(n).unwrap();
                from_polylines(g, &pos, &vec![Vec::new(); n * (n - 1) / 2]).ok()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn handshake(d in random_drawing()) {
            let total: usize = d.edge_crossing_counts().iter().sum();
            prop_assert_eq!(total, 2 * d.crossing_count());
        }

        #[test]
        fn monotonicity(d in random_drawing(), k in 0usize..4) {
            if d.is_min_k_planar(k) {
                prop_assert!(d.is_min_k_planar(k + 1));
            }
            if d.is_k_planar(k) {
                prop_assert!(d.is_min_k_planar(k));
            }
        }

        #[test]
        fn euler_and_simplicity(d in random_drawing()) {
            let v = d.graph().vertex_count() + d.crossing_count();
            let e = d.graph().edge_count() + 2 * d.crossing_count();
            prop_assert_eq!(d.faces().len() + v, 2 + e);
            prop_assert!(d.is_simple());
            prop_assert!(d.reflect().is_simple());
        }

        #[test]
        fn iso_implies_weak_iso(d in random_drawing(), shift in 0usize..6) {
            let n = d.graph().vertex_count();
            let perm: Vec<usize> = (0..n).map(|v| (v + shift) % n).collect();
            let other = d.relabel(&perm).reflect();
            prop_assert!(isomorphic(&d, &other));
            prop_assert!(weakly_isomorphic(&d, &other, true).unwrap());
            prop_assert_eq!(canonical_key(&d, KeyMode::Iso).unwrap(), canonical_key(&other, KeyMode::Iso).unwrap());
        }

        #[test]
        fn crossing_removal_keeps_min_k(d in random_drawing(), k in 0usize..3, drop in 0usize..64) {
            let pairs = d.crossing_pairs();
            if d.is_min_k_planar(k) && !pairs.is_empty() {
                let mut fewer = pairs.clone();
                fewer.remove(drop % pairs.len());
                prop_assert!(config_is_min_k(d.graph().edge_count(), &fewer, k));
            }
        }

        #[test]
        fn json_round_trips(d in random_drawing()) {
            prop_assert_eq!(Drawing::from_json(&d.to_json()).unwrap(), d);
        }
    }
}
