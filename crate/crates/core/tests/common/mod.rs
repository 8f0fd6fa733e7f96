//! Brute-force enumeration of combinatorial types, shared by the test
//! targets.

use std::collections::BTreeSet;

use tropcount::moduli::{BoundedEdge, CombinatorialType, EndLabeling, UnboundedEnd, VertexMarker};
use tropcount::{LatticeVector, Problem};

/// Edges of the labeled tree with Prüfer sequence `seq` on `n` vertices.
fn prufer_tree(seq: &[usize], n: usize) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::new();
    for &s in seq {
        let leaf = (0..n).find(|&i| degree[i] == 1).unwrap();
        edges.push((leaf, s));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&i| degree[i] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// Every tuple in `0..base` of the given length.
fn tuples(len: usize, base: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..base).map(move |i| {
                    let mut t = t.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    out
}

pub fn brute_force(p: &Problem, labeling: EndLabeling) -> BTreeSet<String> {
    let n = p.n();
    let m = 2 * n - 1;
    let delta = p.degree.entries();
    let trees: Vec<Vec<(usize, usize)>> =
        if m == 1 { vec![vec![]] } else { tuples(m - 2, m).iter().map(|s| prufer_tree(s, m)).collect() };
    let mut found = BTreeSet::new();
    for tree in &trees {
        for placement in tuples(delta.len(), m) {
            let mut valency = vec![0usize; m];
            for &(a, b) in tree {
                valency[a] += 1;
                valency[b] += 1;
            }
            for &x in &placement {
                valency[x] += 1;
            }
            let wanted = |x: usize| if x < n { p.profile.valency(x) } else { 3 };
            if (0..m).any(|x| valency[x] != wanted(x)) {
                continue;
            }
            // Weight of edge (a, b) seen from a: minus the sum of the ends on
            // a's side.
            let mut edges = Vec::new();
            let mut ok = true;
            for (idx, &(a, b)) in tree.iter().enumerate() {
                let side = component(tree, idx, a, m);
                let w: LatticeVector = placement.iter().zip(delta).filter(|(x, _)| side[**x]).map(|(_, d)| *d).sum();
                let weight = -w;
                if weight.is_zero() {
                    ok = false;
                    break;
                }
                edges.push(BoundedEdge { from: a, to: b, weight });
            }
            if !ok {
                continue;
            }
            let mut vertices: Vec<VertexMarker> = (0..n).map(VertexMarker::Pointed).collect();
            vertices.extend(std::iter::repeat_n(VertexMarker::Unpointed, n - 1));
            let ends = placement
                .iter()
                .enumerate()
                .map(|(i, &x)| UnboundedEnd { vertex: x, degree_index: i, direction: delta[i] })
                .collect();
            let t = CombinatorialType { vertices, edges, ends };
            found.insert(t.canonical_form(labeling));
        }
    }
    found
}

/// Vertices on `a`'s side once edge `skip` is removed.
fn component(tree: &[(usize, usize)], skip: usize, a: usize, m: usize) -> Vec<bool> {
    let mut seen = vec![false; m];
    seen[a] = true;
    let mut stack = vec![a];
    while let Some(x) = stack.pop() {
        for (i, &(p, q)) in tree.iter().enumerate() {
            if i == skip {
                continue;
            }
            let other = if p == x { q } else if q == x { p } else { continue };
            if !seen[other] {
                seen[other] = true;
                stack.push(other);
            }
        }
    }
    seen
}

pub fn v(x: i64, y: i64) -> LatticeVector {
    LatticeVector::new(x, y)
}

/// Small problems (`n + r <= 7`) covering the descendant cases.
pub fn instances() -> Vec<Problem> {
    let sq = [v(1, 0), v(0, 1), v(-1, 0), v(0, -1)];
    vec![
        Problem::new(&[v(1, 0), v(-1, 0)], &[0]).unwrap(),
        Problem::new(&[v(1, 0), v(0, 1), v(-1, -1)], &[1]).unwrap(),
        Problem::new(&sq, &[2]).unwrap(),
        Problem::new(&[v(1, 0), v(0, 1), v(-1, -1)], &[0, 0]).unwrap(),
        Problem::new(&[v(2, 1), v(-1, 1), v(-1, -2)], &[0, 0]).unwrap(),
        Problem::new(&sq, &[1, 0]).unwrap(),
        Problem::new(&sq, &[0, 1]).unwrap(),
        Problem::new(&[v(1, 0), v(1, 0), v(-1, -1), v(-1, 1)], &[1, 0]).unwrap(),
        Problem::new(&[v(2, 1), v(-1, 1), v(-1, -2), v(1, 0), v(-1, 0)], &[1, 1]).unwrap(),
        Problem::new(&[v(1, 1), v(0, 1), v(-1, -2), v(1, 0), v(-1, 0)], &[2, 0]).unwrap(),
        Problem::new(&[v(1, 0), v(0, 1), v(-1, 0), v(0, -1), v(1, 1), v(-1, -1)], &[4]).unwrap(),
        Problem::new(&sq, &[0, 0, 0]).unwrap(),
        Problem::new(&[v(1, 0), v(1, 0), v(-1, 0), v(-1, 0)], &[0, 0, 0]).unwrap(),
        Problem::new(&[v(1, 0), v(0, 1), v(-1, 1), v(0, -2)], &[0, 0, 0]).unwrap(),
    ]
}
