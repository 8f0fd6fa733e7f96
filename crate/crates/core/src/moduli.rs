//! Combinatorial types of genus-zero tropical curves with marked points.
//!
//! A type is a tree whose internal vertices are either *pointed* (carrying the
//! contracted marked end `i`, valency `k_i + 2`) or unpointed trivalent. The
//! non-contracted ends carry the vectors of the degree. Bounded-edge weights are
//! forced by balancing: the weight leaving a vertex along an edge is the sum of
//! the end vectors on the far side.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::lattice::{Degree, DescendantProfile, LatticeVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexMarker {
    /// Carries the marked point with this (0-based) index.
    Pointed(usize),
    Unpointed,
}

/// Whether ends with equal vectors are distinguished.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EndLabeling {
    Labeled,
    #[default]
    UpToRelabeling,
}

/// A bounded edge; `weight` is the outgoing vector at `from`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoundedEdge {
    pub from: usize,
    pub to: usize,
    pub weight: LatticeVector,
}

/// A non-contracted end. `degree_index` is the position of its vector in the
/// degree's entry list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UnboundedEnd {
    pub vertex: usize,
    pub degree_index: usize,
    pub direction: LatticeVector,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CombinatorialType {
    pub vertices: Vec<VertexMarker>,
    pub edges: Vec<BoundedEdge>,
    pub ends: Vec<UnboundedEnd>,
}

impl CombinatorialType {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Vertex carrying marked point `i`.
    pub fn pointed_vertex(&self, i: usize) -> Option<usize> {
        self.vertices.iter().position(|m| *m == VertexMarker::Pointed(i))
    }

    pub fn marked_count(&self) -> usize {
        self.vertices.iter().filter(|m| matches!(m, VertexMarker::Pointed(_))).count()
    }

    /// Outgoing vectors at `v` (bounded edges and ends; the contracted marked
    /// end is not listed).
    pub fn outgoing(&self, v: usize) -> Vec<LatticeVector> {
        let mut out = Vec::new();
        for e in &self.edges {
            if e.from == v {
                out.push(e.weight);
            } else if e.to == v {
                out.push(-e.weight);
            }
        }
        out.extend(self.ends.iter().filter(|e| e.vertex == v).map(|e| e.direction));
        out
    }

    pub fn valency(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.from == v || e.to == v).count()
            + self.ends.iter().filter(|e| e.vertex == v).count()
    }

    pub fn unpointed_trivalent_count(&self) -> usize {
        (0..self.vertex_count())
            .filter(|&v| self.vertices[v] == VertexMarker::Unpointed && self.valency(v) == 3)
            .count()
    }

    /// Neighbours of every vertex along bounded edges, with the edge index.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertex_count()];
        for (i, e) in self.edges.iter().enumerate() {
            adj[e.from].push((e.to, i));
            adj[e.to].push((e.from, i));
        }
        adj
    }

    /// Connected and acyclic.
    pub fn is_tree(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 || self.edges.len() + 1 != n {
            return false;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(w, _) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Checks every structural invariant against the problem data.
    pub fn check(&self, degree: &Degree, profile: &DescendantProfile) -> Result<(), String> {
        if !self.is_tree() {
            return Err("underlying graph is not a tree".into());
        }
        let n = profile.n();
        let mut seen_points = vec![false; n];
        for (v, m) in self.vertices.iter().enumerate() {
            let val = self.valency(v);
            match *m {
                VertexMarker::Pointed(i) => {
                    if i >= n || std::mem::replace(&mut seen_points[i], true) {
                        return Err(format!("marked point {i} is out of range or repeated"));
                    }
                    if val != profile.valency(i) {
                        return Err(format!("vertex {v} carries point {i} but has valency {val}"));
                    }
                }
                VertexMarker::Unpointed if val != 3 => {
                    return Err(format!("unpointed vertex {v} has valency {val}"));
                }
                VertexMarker::Unpointed => {}
            }
            let sum: LatticeVector = self.outgoing(v).iter().sum();
            if !sum.is_zero() {
                return Err(format!("vertex {v} is not balanced (sum {sum})"));
            }
        }
        if seen_points.iter().any(|s| !s) {
            return Err("some marked point is missing".into());
        }
        if let Some(e) = self.edges.iter().find(|e| e.weight.is_zero()) {
            return Err(format!("bounded edge {}-{} has zero weight", e.from, e.to));
        }
        let mut used = vec![false; degree.len()];
        for end in &self.ends {
            let entry = degree.entries().get(end.degree_index).ok_or("end label out of range")?;
            if *entry != end.direction || std::mem::replace(&mut used[end.degree_index], true) {
                return Err(format!("end label {} is misused", end.degree_index));
            }
        }
        if used.iter().any(|u| !u) {
            return Err("some degree entry has no end".into());
        }
        Ok(())
    }

    /// Dimension of the cone of this type: its number of bounded edges.
    pub fn cone_dimension(&self) -> usize {
        self.edges.len()
    }

    /// Removing the pointed vertices must leave components that each contain
    /// exactly one unbounded end.
    pub fn audit_tree_decomposition(&self) -> bool {
        let n = self.vertex_count();
        let pointed = |v: usize| matches!(self.vertices[v], VertexMarker::Pointed(_));
        // An edge joining two pointed vertices is a component without ends.
        if self.edges.iter().any(|e| pointed(e.from) && pointed(e.to)) {
            return false;
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut v: usize) -> usize {
            while parent[v] != v {
                parent[v] = parent[parent[v]];
                v = parent[v];
            }
            v
        }
        for e in &self.edges {
            if !pointed(e.from) && !pointed(e.to) {
                let (a, b) = (find(&mut parent, e.from), find(&mut parent, e.to));
                parent[a] = b;
            }
        }
        let mut ends_per_component: BTreeMap<usize, usize> = BTreeMap::new();
        for v in (0..n).filter(|&v| !pointed(v)) {
            let root = find(&mut parent, v);
            ends_per_component.entry(root).or_insert(0);
        }
        for end in self.ends.iter().filter(|e| !pointed(e.vertex)) {
            *ends_per_component.entry(find(&mut parent, end.vertex)).or_insert(0) += 1;
        }
        ends_per_component.values().all(|&c| c == 1)
    }

    /// String that identifies the type up to isomorphism. Marked points are
    /// always distinguished; ends are distinguished by label under
    /// [`EndLabeling::Labeled`] and by vector otherwise.
    pub fn canonical_form(&self, labeling: EndLabeling) -> String {
        let root = self.pointed_vertex(0).unwrap_or(0);
        let adj = self.adjacency();
        self.encode(root, usize::MAX, &adj, &|end: &UnboundedEnd| match labeling {
            EndLabeling::Labeled => format!("#{}", end.degree_index),
            EndLabeling::UpToRelabeling => format!("{}:{}", end.direction.x, end.direction.y),
        })
    }

    fn encode(
        &self,
        v: usize,
        parent: usize,
        adj: &[Vec<(usize, usize)>],
        end_code: &dyn Fn(&UnboundedEnd) -> String,
    ) -> String {
        let mut ends: Vec<String> = self.ends.iter().filter(|e| e.vertex == v).map(end_code).collect();
        ends.sort();
        let mut children: Vec<String> = adj[v]
            .iter()
            .filter(|&&(w, _)| w != parent)
            .map(|&(w, _)| self.encode(w, v, adj, end_code))
            .collect();
        children.sort();
        let marker = match self.vertices[v] {
            VertexMarker::Pointed(i) => format!("P{i}"),
            VertexMarker::Unpointed => "U".to_string(),
        };
        format!("{marker}[{}]({})", ends.join(","), children.join(","))
    }

    /// Recomputes all bounded-edge weights from the ends. Returns `None` if
    /// some edge would get weight zero.
    pub fn rebalanced(&self) -> Option<CombinatorialType> {
        let n = self.vertex_count();
        let adj = self.adjacency();
        let mut end_sum = vec![LatticeVector::ZERO; n];
        for end in &self.ends {
            end_sum[end.vertex] += end.direction;
        }
        // Post-order from vertex 0.
        let mut order = Vec::with_capacity(n);
        let mut parent = vec![usize::MAX; n];
        let mut stack = vec![0usize];
        let mut seen = vec![false; n];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            order.push(v);
            for &(w, _) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = v;
                    stack.push(w);
                }
            }
        }
        let mut subtree = end_sum;
        for &v in order.iter().rev() {
            if parent[v] != usize::MAX {
                let s = subtree[v];
                subtree[parent[v]] += s;
            }
        }
        let mut edges = Vec::with_capacity(self.edges.len());
        for e in &self.edges {
            let (p, c) = if parent[e.to] == e.from { (e.from, e.to) } else { (e.to, e.from) };
            let w = subtree[c];
            if w.is_zero() {
                return None;
            }
            edges.push(BoundedEdge { from: p, to: c, weight: w });
        }
        Some(CombinatorialType { vertices: self.vertices.clone(), edges, ends: self.ends.clone() })
    }
}

impl fmt::Display for CombinatorialType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (v, m) in self.vertices.iter().enumerate() {
            match m {
                VertexMarker::Pointed(i) => write!(f, "v{v}[p{}]", i + 1)?,
                VertexMarker::Unpointed => write!(f, "v{v}")?,
            }
            let ends: Vec<String> = self.ends.iter().filter(|e| e.vertex == v).map(|e| e.direction.to_string()).collect();
            if !ends.is_empty() {
                write!(f, " ends {}", ends.join(" "))?;
            }
            f.write_str("; ")?;
        }
        let edges: Vec<String> = self.edges.iter().map(|e| format!("v{}-v{} {}", e.from, e.to, e.weight)).collect();
        write!(f, "edges {}", edges.join(", "))
    }
}

/// All distinct end labelings of a type: labels of equal vectors are
/// permuted, and permutations among ends at one vertex are identified.
pub fn labelings(t: &CombinatorialType, degree: &Degree) -> Vec<CombinatorialType> {
    // Group the ends by vector, then assign the labels of that vector to the
    // ends as a multiset assignment over vertices.
    let mut by_vector: BTreeMap<LatticeVector, Vec<usize>> = BTreeMap::new();
    for (i, v) in degree.entries().iter().enumerate() {
        by_vector.entry(*v).or_default().push(i);
    }
    let mut results = vec![t.clone()];
    for (vector, labels) in by_vector {
        let mut vertices: Vec<usize> = t.ends.iter().filter(|e| e.direction == vector).map(|e| e.vertex).collect();
        vertices.sort();
        let mut groups: Vec<(usize, usize)> = Vec::new();
        for v in vertices {
            match groups.last_mut() {
                Some((last, c)) if *last == v => *c += 1,
                _ => groups.push((v, 1)),
            }
        }
        let mut assignments: Vec<Vec<(usize, usize)>> = Vec::new(); // (label, vertex)
        distribute_labels(&labels, &groups, &mut Vec::new(), &mut assignments);
        let mut next = Vec::new();
        for base in &results {
            for assignment in &assignments {
                let mut t2 = base.clone();
                // Slots at the same vertex are interchangeable, so any pairing
                // of slots with (label, vertex) pairs of that vertex works.
                let mut pool: Vec<(usize, usize)> = assignment.clone();
                for end in t2.ends.iter_mut().filter(|e| e.direction == vector) {
                    let pos = pool.iter().position(|&(_, v)| v == end.vertex).expect("slot for vertex");
                    end.degree_index = pool.swap_remove(pos).0;
                }
                next.push(t2);
            }
        }
        results = next;
    }
    results
}

/// Chooses for every group `(vertex, size)` a set of `size` labels.
fn distribute_labels(
    labels: &[usize],
    groups: &[(usize, usize)],
    current: &mut Vec<(usize, usize)>,
    out: &mut Vec<Vec<(usize, usize)>>,
) {
    let Some((&(vertex, size), rest)) = groups.split_first() else {
        out.push(current.clone());
        return;
    };
    for chosen in subsets(labels.len(), size) {
        let picked: Vec<usize> = chosen.iter().map(|&i| labels[i]).collect();
        let remaining: Vec<usize> =
            labels.iter().enumerate().filter(|(i, _)| !chosen.contains(i)).map(|(_, &l)| l).collect();
        let len = current.len();
        current.extend(picked.into_iter().map(|l| (l, vertex)));
        distribute_labels(&remaining, rest, current, out);
        current.truncate(len);
    }
}

/// All `k`-element subsets of `0..n`, as sorted index lists.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Visits each distinct arrangement of a multiset given as counts.
fn for_each_multiset_permutation(counts: &mut [usize], current: &mut Vec<usize>, len: usize, visit: &mut dyn FnMut(&[usize])) {
    if current.len() == len {
        visit(current);
        return;
    }
    for v in 0..counts.len() {
        if counts[v] > 0 {
            counts[v] -= 1;
            current.push(v);
            for_each_multiset_permutation(counts, current, len, visit);
            current.pop();
            counts[v] += 1;
        }
    }
}

/// Decodes a Prüfer sequence into tree edges on `0..m`.
fn prufer_edges(seq: &[usize], m: usize) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; m];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(m - 1);
    for &s in seq {
        let leaf = (0..m).find(|&v| degree[v] == 1).expect("a leaf exists");
        edges.push((leaf, s));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..m).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// Bounded edges and the number of ends at every vertex.
type Shape = (Vec<(usize, usize)>, Vec<usize>);

/// Every combinatorial type for the problem. The search is exhaustive over
/// tree shapes, so it is meant for small instances.
pub fn enumerate_types(degree: &Degree, profile: &DescendantProfile, labeling: EndLabeling) -> Vec<CombinatorialType> {
    let n = profile.n();
    let r = degree.len();
    if n == 0 || n + r != 2 * n + 1 + profile.total() {
        return Vec::new();
    }
    let m = 2 * n - 1;
    let mut vertices: Vec<VertexMarker> = (0..n).map(VertexMarker::Pointed).collect();
    vertices.extend(std::iter::repeat_n(VertexMarker::Unpointed, n - 1));
    let valency: Vec<usize> = (0..m).map(|v| if v < n { profile.valency(v) } else { 3 }).collect();

    // Tree shapes: bounded edges plus the number of ends at every vertex.
    let mut shapes: Vec<Shape> = Vec::new();
    let mut shape_keys = HashSet::new();
    let mut push_shape = |edges: Vec<(usize, usize)>, tree_degree: &[usize]| {
        let ends: Vec<usize> = (0..m).map(|v| valency[v] - tree_degree[v]).collect();
        let skeleton = CombinatorialType {
            vertices: vertices.clone(),
            edges: edges.iter().map(|&(a, b)| BoundedEdge { from: a, to: b, weight: LatticeVector::ZERO }).collect(),
            ends: ends
                .iter()
                .enumerate()
                .flat_map(|(v, &c)| {
                    std::iter::repeat_n(UnboundedEnd { vertex: v, degree_index: 0, direction: LatticeVector::ZERO }, c)
                })
                .collect(),
        };
        if shape_keys.insert(skeleton.canonical_form(EndLabeling::UpToRelabeling)) {
            shapes.push((edges, ends));
        }
    };
    if m == 1 {
        if valency[0] == r {
            push_shape(Vec::new(), &[0]);
        }
    } else {
        let mut tree_degree = vec![0usize; m];
        each_tree_degree(&valency, 2 * (m - 1), 0, &mut tree_degree, &mut |td| {
            let mut counts: Vec<usize> = td.iter().map(|&d| d - 1).collect();
            for_each_multiset_permutation(&mut counts, &mut Vec::new(), m - 2, &mut |seq| {
                push_shape(prufer_edges(seq, m), td);
            });
        });
    }

    let distinct = degree.distinct();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (edges, ends_at) in shapes {
        let mut emit = |ends: Vec<UnboundedEnd>| {
            let t = CombinatorialType {
                vertices: vertices.clone(),
                edges: edges.iter().map(|&(a, b)| BoundedEdge { from: a, to: b, weight: LatticeVector::ZERO }).collect(),
                ends,
            };
            if let Some(t) = t.rebalanced() {
                if seen.insert(t.canonical_form(labeling)) {
                    out.push(t);
                }
            }
        };
        match labeling {
            EndLabeling::UpToRelabeling => {
                let mut remaining: Vec<usize> = distinct.iter().map(|&(_, c)| c).collect();
                distribute_vectors(&ends_at, 0, &mut remaining, &mut Vec::new(), &mut |assign| {
                    emit(label_ends(assign, degree, &distinct));
                });
            }
            EndLabeling::Labeled => {
                let groups: Vec<(usize, usize)> =
                    ends_at.iter().enumerate().filter(|(_, &c)| c > 0).map(|(v, &c)| (v, c)).collect();
                let labels: Vec<usize> = (0..r).collect();
                let mut assignments = Vec::new();
                distribute_labels(&labels, &groups, &mut Vec::new(), &mut assignments);
                for assignment in assignments {
                    emit(
                        assignment
                            .into_iter()
                            .map(|(label, vertex)| UnboundedEnd {
                                vertex,
                                degree_index: label,
                                direction: degree.entries()[label],
                            })
                            .collect(),
                    );
                }
            }
        }
    }
    out
}

fn each_tree_degree(valency: &[usize], remaining: usize, v: usize, current: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    if v == valency.len() {
        if remaining == 0 {
            visit(current);
        }
        return;
    }
    let left = valency.len() - v - 1;
    for d in 1..=valency[v].min(remaining) {
        // Every later vertex needs at least one edge.
        if remaining - d < left {
            break;
        }
        current[v] = d;
        each_tree_degree(valency, remaining - d, v + 1, current, visit);
    }
}

/// Assigns to each vertex `v` a sub-multiset (counts per distinct vector) of size `ends_at[v]`.
fn distribute_vectors(
    ends_at: &[usize],
    v: usize,
    remaining: &mut Vec<usize>,
    current: &mut Vec<Vec<usize>>,
    visit: &mut dyn FnMut(&[Vec<usize>]),
) {
    if v == ends_at.len() {
        visit(current);
        return;
    }
    let mut pick = vec![0usize; remaining.len()];
    fn choose(
        i: usize,
        need: usize,
        pick: &mut Vec<usize>,
        remaining: &[usize],
        out: &mut Vec<Vec<usize>>,
    ) {
        if i == pick.len() {
            if need == 0 {
                out.push(pick.clone());
            }
            return;
        }
        for c in 0..=remaining[i].min(need) {
            pick[i] = c;
            choose(i + 1, need - c, pick, remaining, out);
        }
        pick[i] = 0;
    }
    let mut options = Vec::new();
    choose(0, ends_at[v], &mut pick, remaining, &mut options);
    for option in options {
        for (r, c) in remaining.iter_mut().zip(&option) {
            *r -= c;
        }
        current.push(option.clone());
        distribute_vectors(ends_at, v + 1, remaining, current, visit);
        current.pop();
        for (r, c) in remaining.iter_mut().zip(&option) {
            *r += c;
        }
    }
}

/// Turns per-vertex vector counts into ends, giving equal vectors their
/// labels in increasing order.
fn label_ends(assign: &[Vec<usize>], degree: &Degree, distinct: &[(LatticeVector, usize)]) -> Vec<UnboundedEnd> {
    let mut pools: Vec<Vec<usize>> = distinct
        .iter()
        .map(|(vec, _)| degree.entries().iter().enumerate().filter(|(_, e)| *e == vec).map(|(i, _)| i).rev().collect())
        .collect();
    let mut ends = Vec::new();
    for (vertex, counts) in assign.iter().enumerate() {
        for (d, &c) in counts.iter().enumerate() {
            for _ in 0..c {
                ends.push(UnboundedEnd { vertex, degree_index: pools[d].pop().expect("label"), direction: distinct[d].0 });
            }
        }
    }
    ends
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Problem;

    fn v(x: i64, y: i64) -> LatticeVector {
        LatticeVector::new(x, y)
    }

    pub(crate) fn example_problem() -> Problem {
        Problem::new(&[v(-1, 0), v(-1, 0), v(0, -1), v(1, 0), v(1, 0), v(0, 1)], &[0, 1, 0, 0]).unwrap()
    }

    fn line_problem() -> Problem {
        Problem::new(&[v(1, 0), v(0, 1), v(-1, -1)], &[0, 0]).unwrap()
    }

    #[test]
    fn prufer_round_trip_shape() {
        let edges = prufer_edges(&[3, 3, 3], 5);
        assert_eq!(edges.len(), 4);
        assert!(edges.iter().all(|&(a, b)| a == 3 || b == 3));
    }

    #[test]
    fn single_pair_has_one_type() {
        let p = Problem::new(&[v(1, 0), v(-1, 0)], &[0]).unwrap();
        let types = enumerate_types(&p.degree, &p.profile, EndLabeling::UpToRelabeling);
        assert_eq!(types.len(), 1);
        assert_eq!(types[0].cone_dimension(), 0);
        assert!(types[0].audit_tree_decomposition());
    }

    #[test]
    fn line_types() {
        let p = line_problem();
        let types = enumerate_types(&p.degree, &p.profile, EndLabeling::UpToRelabeling);
        for t in &types {
            t.check(&p.degree, &p.profile).unwrap();
            assert_eq!(t.cone_dimension(), 2);
            assert_eq!(t.unpointed_trivalent_count(), 1);
        }
        // Both marked points on legs of the star, in 3·2 ways; or adjacent to
        // each other with the trivalent vertex hanging off one of them.
        let star = types.iter().filter(|t| t.audit_tree_decomposition()).count();
        assert_eq!(star, 6);
        assert_eq!(types.len(), 12);
    }

    #[test]
    fn example_contains_the_figure_type() {
        let p = example_problem();
        let types = enumerate_types(&p.degree, &p.profile, EndLabeling::UpToRelabeling);
        assert!(!types.is_empty());
        for t in &types {
            t.check(&p.degree, &p.profile).unwrap();
            assert_eq!(t.cone_dimension(), 6);
            assert_eq!(t.unpointed_trivalent_count(), 3);
        }
        assert!(types.iter().any(|t| t.audit_tree_decomposition()));
    }

    #[test]
    fn labeled_mode_refines() {
        let p = example_problem();
        let unlabeled = enumerate_types(&p.degree, &p.profile, EndLabeling::UpToRelabeling);
        let labeled = enumerate_types(&p.degree, &p.profile, EndLabeling::Labeled);
        assert!(labeled.len() > unlabeled.len());
        let expanded: usize = unlabeled.iter().map(|t| labelings(t, &p.degree).len()).sum();
        assert_eq!(expanded, labeled.len());
        let forms: HashSet<String> = unlabeled
            .iter()
            .flat_map(|t| labelings(t, &p.degree))
            .map(|t| t.canonical_form(EndLabeling::Labeled))
            .collect();
        let direct: HashSet<String> = labeled.iter().map(|t| t.canonical_form(EndLabeling::Labeled)).collect();
        assert_eq!(forms, direct);
    }

    #[test]
    fn audit_negative_control() {
        // Two ends on one unpointed vertex between two pointed vertices.
        let t = CombinatorialType {
            vertices: vec![VertexMarker::Pointed(0), VertexMarker::Unpointed, VertexMarker::Pointed(1)],
            edges: vec![
                BoundedEdge { from: 0, to: 1, weight: v(1, 0) },
                BoundedEdge { from: 1, to: 2, weight: v(0, 1) },
            ],
            ends: vec![
                UnboundedEnd { vertex: 0, degree_index: 0, direction: v(-1, 0) },
                UnboundedEnd { vertex: 2, degree_index: 1, direction: v(0, -1) },
            ],
        };
        assert!(!t.audit_tree_decomposition());
    }

    #[test]
    fn json_round_trip() {
        let p = example_problem();
        for t in enumerate_types(&p.degree, &p.profile, EndLabeling::UpToRelabeling).into_iter().take(20) {
            let s = serde_json::to_string(&t).unwrap();
            let back: CombinatorialType = serde_json::from_str(&s).unwrap();
            assert_eq!(back, t);
        }
    }
}
