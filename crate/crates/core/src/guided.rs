//! Direct search for the curves through a fixed point configuration.
//!
//! Removing the pointed vertices of a curve through generic points leaves
//! trees of unpointed trivalent vertices with exactly one unbounded end each.
//! Root the curve at the first marked point. Every such tree is entered by
//! one edge from its parent pointed vertex `P`; following that edge towards
//! the tree's end, it absorbs one *fixed ray* after another. A fixed ray
//! leaves a hanging part of the curve that contains marked points only below
//! it, so its position is forced by those points: it is either the edge up
//! from a pointed vertex, or the meeting of two fixed rays. Fixed rays are
//! memoized by (points, ends) below them, parent rays are traced as chains.
//! Type enumeration is avoided entirely, which makes larger degrees
//! tractable.

use std::collections::HashMap;
use std::rc::Rc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::lattice::{wedge, Degree, DescendantProfile, LatticeVector};
use crate::moduli::{BoundedEdge, CombinatorialType, UnboundedEnd, VertexMarker};
use crate::solver::{ParametrizedTropicalCurve, PointConfiguration, RationalPoint};

/// A coincidence that generic points would avoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonGeneric(pub String);

/// Multiset of ends as counts per distinct degree vector.
type Ends = Vec<u8>;

/// An exact point with a floating-point shadow for quick rejection tests.
#[derive(Clone)]
struct Located {
    exact: RationalPoint,
    approx: (f64, f64),
}

impl Located {
    fn new(exact: RationalPoint) -> Self {
        let approx = (exact.x.to_f64().unwrap_or(f64::NAN), exact.y.to_f64().unwrap_or(f64::NAN));
        Located { exact, approx }
    }
}

/// A ray whose position is forced by the marked points below it.
enum Fixed {
    /// The edge leaving pointed vertex `point` towards its parent.
    Pointed { point: usize, dir: LatticeVector, below: Rc<SubSet> },
    /// Two fixed rays meeting at `at`.
    Join { at: Located, dir: LatticeVector, left: Rc<Fixed>, right: Rc<Fixed> },
}

impl Fixed {
    fn origin<'p>(&'p self, points: &'p [Located]) -> &'p Located {
        match self {
            Fixed::Pointed { point, .. } => &points[*point],
            Fixed::Join { at, .. } => at,
        }
    }

    fn dir(&self) -> LatticeVector {
        match self {
            Fixed::Pointed { dir, .. } | Fixed::Join { dir, .. } => *dir,
        }
    }
}

enum BranchAlt {
    End(usize),
    /// The parent ray absorbs the fixed rays in order, meeting each at the
    /// recorded point, and finally leaves as the end `end`.
    Chain { end: usize, merges: Vec<(Located, Rc<Fixed>)> },
}

type BranchSet = Vec<BranchAlt>;
/// Ways to complete a pointed vertex: each entry picks one branch set per
/// branch, and any choice of alternatives within them is valid.
type SubSet = Vec<Vec<Rc<BranchSet>>>;
/// Fixed rays keyed by the ends they carry.
type FixedEntries = Vec<(Ends, Rc<Vec<Rc<Fixed>>>)>;
type BranchOption = (Ends, Rc<BranchSet>);

/// One fully chosen part of a curve, before conversion.
enum Concrete {
    End(usize),
    Chain { end: usize, merges: Vec<(RationalPoint, ConcreteFixed)> },
}

enum ConcreteFixed {
    Pointed { point: usize, branches: Vec<Concrete> },
    Join { at: RationalPoint, left: Box<ConcreteFixed>, right: Box<ConcreteFixed> },
}

struct Search {
    points: Vec<Located>,
    k: Vec<usize>,
    vectors: Vec<LatticeVector>,
    branch_memo: HashMap<(usize, u32, Ends), Rc<BranchSet>>,
    sub_memo: HashMap<(usize, u32, Ends), Rc<SubSet>>,
    fixed_memo: HashMap<(u32, Ends), Rc<Vec<Rc<Fixed>>>>,
    /// Non-empty fixed-ray lists per point mask, over all end multisets.
    fixed_index: HashMap<u32, Rc<FixedEntries>>,
    all_ends: Ends,
}

/// Finds every curve of the given degree through `points`, up to relabeling
/// of equal ends. Ends receive the labels of their vector in increasing order.
pub fn curves_through_points(
    degree: &Degree,
    profile: &DescendantProfile,
    points: &PointConfiguration,
) -> Result<Vec<ParametrizedTropicalCurve>, NonGeneric> {
    let n = profile.n();
    assert_eq!(points.len(), n, "one point per marked point");
    assert!(n <= 32, "at most 32 marked points");
    let distinct = degree.distinct();
    let all_ends: Ends = distinct.iter().map(|&(_, c)| u8::try_from(c).expect("multiplicity fits u8")).collect();
    let mut search = Search {
        points: points.points.iter().cloned().map(Located::new).collect(),
        k: profile.exponents().iter().map(|&k| k as usize).collect(),
        vectors: distinct.iter().map(|&(v, _)| v).collect(),
        branch_memo: HashMap::new(),
        sub_memo: HashMap::new(),
        fixed_memo: HashMap::new(),
        fixed_index: HashMap::new(),
        all_ends,
    };
    let others: u32 = ((1u64 << n) - 2) as u32;
    let root = search.branches_at(0, others, &search.all_ends.clone(), search.k[0] + 2)?;

    let mut curves = Vec::new();
    for alt in root.iter() {
        for branches in expand_alt(alt) {
            curves.push(build_curve(&branches, degree, &search.vectors, &points.points, n));
        }
    }
    Ok(curves)
}

fn size(ends: &[u8]) -> usize {
    ends.iter().map(|&c| c as usize).sum()
}

fn bits(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| mask & (1 << i) != 0)
}

/// Non-empty sub-masks of `mask` in increasing order.
fn submasks(mask: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut sub = mask;
    while sub > 0 {
        out.push(sub);
        sub = (sub - 1) & mask;
    }
    out.reverse();
    out
}

fn minus(a: &[u8], b: &[u8]) -> Ends {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

impl Search {
    fn sum(&self, ends: &[u8]) -> LatticeVector {
        ends.iter().zip(&self.vectors).map(|(&c, &v)| (c as i64) * v).sum()
    }

    /// Ends below a pointed vertex together with the points `mask`: every
    /// pointed vertex adds `k + 1` branches and removes one.
    fn hanging_size(&self, mask: u32) -> usize {
        bits(mask).map(|i| 1 + self.k[i]).sum()
    }

    /// Completions of a branch leaving pointed vertex `p` that contains the
    /// points `a` and the ends `s`.
    fn branch(&mut self, p: usize, a: u32, s: &Ends) -> Result<Rc<BranchSet>, NonGeneric> {
        let key = (p, a, s.clone());
        if let Some(hit) = self.branch_memo.get(&key) {
            return Ok(hit.clone());
        }
        let mut out = Vec::new();
        if a == 0 {
            if size(s) == 1 {
                out.push(BranchAlt::End(s.iter().position(|&c| c == 1).expect("one end")));
            }
        } else if size(s) == 1 + self.hanging_size(a) {
            let dir = self.sum(s);
            if !dir.is_zero() {
                for d in 0..s.len() {
                    if s[d] == 0 {
                        continue;
                    }
                    let mut rest = s.clone();
                    rest[d] -= 1;
                    let start = self.points[p].clone();
                    self.chain(d, &start, dir, a, &rest, &mut Vec::new(), &mut out)?;
                }
            }
        }
        let result = Rc::new(out);
        self.branch_memo.insert(key, result.clone());
        Ok(result)
    }

    /// Follows a parent ray from `at` in direction `dir`, absorbing fixed
    /// rays that carry all of the points `a` and ends `s`.
    #[allow(clippy::too_many_arguments)]
    fn chain(
        &mut self,
        end: usize,
        at: &Located,
        dir: LatticeVector,
        a: u32,
        s: &Ends,
        merges: &mut Vec<(Located, Rc<Fixed>)>,
        out: &mut BranchSet,
    ) -> Result<(), NonGeneric> {
        if a == 0 {
            if size(s) == 0 {
                out.push(BranchAlt::Chain { end, merges: merges.clone() });
            }
            return Ok(());
        }
        for a1 in submasks(a) {
            let entries = self.fixed_entries(a1)?;
            for (s1, fixed) in entries.iter() {
                if s1.iter().zip(s).any(|(x, y)| x > y) {
                    continue;
                }
                let rest = minus(s, s1);
                for f in fixed.iter() {
                    let next_dir = dir + f.dir();
                    if next_dir.is_zero() {
                        continue;
                    }
                    if let Some(meet_at) = meet(at, dir, f.origin(&self.points), f.dir())? {
                        merges.push((meet_at.clone(), f.clone()));
                        self.chain(end, &meet_at, next_dir, a & !a1, &rest, merges, out)?;
                        merges.pop();
                    }
                }
            }
        }
        Ok(())
    }

    /// Fixed rays leaving a hanging part with the points `a` and ends `s`.
    fn fixed(&mut self, a: u32, s: &Ends) -> Result<Rc<Vec<Rc<Fixed>>>, NonGeneric> {
        let key = (a, s.clone());
        if let Some(hit) = self.fixed_memo.get(&key) {
            return Ok(hit.clone());
        }
        let mut out = Vec::new();
        let dir = -self.sum(s);
        if !dir.is_zero() && size(s) == self.hanging_size(a) {
            for q in bits(a) {
                let below = self.sub(q, a & !(1 << q), s)?;
                if !below.is_empty() {
                    out.push(Rc::new(Fixed::Pointed { point: q, dir, below }));
                }
            }
            let low = a & a.wrapping_neg();
            for a1 in submasks(a) {
                if a1 & low == 0 || a1 == a {
                    continue;
                }
                let a2 = a & !a1;
                for s1 in sub_multisets(s, self.hanging_size(a1)) {
                    let left = self.fixed(a1, &s1)?;
                    if left.is_empty() {
                        continue;
                    }
                    let right = self.fixed(a2, &minus(s, &s1))?;
                    for l in left.iter() {
                        for r in right.iter() {
                            if let Some(at) = meet(l.origin(&self.points), l.dir(), r.origin(&self.points), r.dir())? {
                                out.push(Rc::new(Fixed::Join { at, dir, left: l.clone(), right: r.clone() }));
                            }
                        }
                    }
                }
            }
        }
        let result = Rc::new(out);
        self.fixed_memo.insert(key, result.clone());
        Ok(result)
    }

    fn fixed_entries(&mut self, a: u32) -> Result<Rc<FixedEntries>, NonGeneric> {
        if let Some(hit) = self.fixed_index.get(&a) {
            return Ok(hit.clone());
        }
        let mut out = Vec::new();
        for s in sub_multisets(&self.all_ends.clone(), self.hanging_size(a)) {
            let list = self.fixed(a, &s)?;
            if !list.is_empty() {
                out.push((s, list));
            }
        }
        let out = Rc::new(out);
        self.fixed_index.insert(a, out.clone());
        Ok(out)
    }

    fn sub(&mut self, q: usize, a: u32, s: &Ends) -> Result<Rc<SubSet>, NonGeneric> {
        let key = (q, a, s.clone());
        if let Some(hit) = self.sub_memo.get(&key) {
            return Ok(hit.clone());
        }
        let result = self.branches_at(q, a, s, self.k[q] + 1)?;
        self.sub_memo.insert(key, result.clone());
        Ok(result)
    }

    /// Splits the points `a` and ends `s` into `count` branches at `p`.
    fn branches_at(&mut self, p: usize, a: u32, s: &Ends, count: usize) -> Result<Rc<SubSet>, NonGeneric> {
        let mut out: SubSet = Vec::new();
        let mut options: HashMap<u32, Rc<Vec<BranchOption>>> = HashMap::new();
        'partition: for blocks in set_partitions(a) {
            if blocks.len() > count {
                continue;
            }
            let loose = count - blocks.len();
            let sizes: usize = blocks.iter().map(|&b| 1 + self.hanging_size(b)).sum();
            if sizes + loose != size(s) {
                continue;
            }
            let mut per_block = Vec::with_capacity(blocks.len());
            for &b in &blocks {
                let opts = match options.get(&b) {
                    Some(o) => o.clone(),
                    None => {
                        let mut o = Vec::new();
                        for ends in sub_multisets(s, 1 + self.hanging_size(b)) {
                            let set = self.branch(p, b, &ends)?;
                            if !set.is_empty() {
                                o.push((ends, set));
                            }
                        }
                        let o = Rc::new(o);
                        options.insert(b, o.clone());
                        o
                    }
                };
                if opts.is_empty() {
                    continue 'partition;
                }
                per_block.push(opts);
            }
            for (combo, loose_ends) in combine_with_rest(&per_block, s) {
                let mut branch_sets: Vec<Rc<BranchSet>> = combo.iter().map(|o| o.1.clone()).collect();
                for (d, &c) in loose_ends.iter().enumerate() {
                    for _ in 0..c {
                        branch_sets.push(Rc::new(vec![BranchAlt::End(d)]));
                    }
                }
                out.push(branch_sets);
            }
        }
        Ok(Rc::new(out))
    }
}

/// One option per block with ends inside `total`, plus what is left over.
fn combine_with_rest<'o, T>(per_block: &'o [Rc<Vec<(Ends, T)>>], total: &Ends) -> Vec<(Vec<&'o (Ends, T)>, Ends)> {
    fn go<'o, T>(
        per_block: &'o [Rc<Vec<(Ends, T)>>],
        i: usize,
        remaining: &mut Ends,
        chosen: &mut Vec<&'o (Ends, T)>,
        out: &mut Vec<(Vec<&'o (Ends, T)>, Ends)>,
    ) {
        if i == per_block.len() {
            out.push((chosen.clone(), remaining.clone()));
            return;
        }
        for o in per_block[i].iter() {
            let e = &o.0;
            if e.iter().zip(remaining.iter()).any(|(a, b)| a > b) {
                continue;
            }
            for (r, c) in remaining.iter_mut().zip(e) {
                *r -= c;
            }
            chosen.push(o);
            go(per_block, i + 1, remaining, chosen, out);
            chosen.pop();
            for (r, c) in remaining.iter_mut().zip(e) {
                *r += c;
            }
        }
    }
    let mut out = Vec::new();
    go(per_block, 0, &mut total.clone(), &mut Vec::new(), &mut out);
    out
}

/// Sub-multisets of `s` with `k` elements.
fn sub_multisets(s: &[u8], k: usize) -> Vec<Ends> {
    fn go(s: &[u8], i: usize, need: usize, pick: &mut Ends, out: &mut Vec<Ends>) {
        if i == s.len() {
            if need == 0 {
                out.push(pick.clone());
            }
            return;
        }
        for c in 0..=(s[i] as usize).min(need) {
            pick[i] = c as u8;
            go(s, i + 1, need - c, pick, out);
        }
        pick[i] = 0;
    }
    let mut out = Vec::new();
    go(s, 0, k, &mut vec![0; s.len()], &mut out);
    out
}

/// Set partitions of the bits of `mask`, each block as a sub-mask.
fn set_partitions(mask: u32) -> Vec<Vec<u32>> {
    fn go(elems: &[usize], i: usize, blocks: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == elems.len() {
            out.push(blocks.clone());
            return;
        }
        let bit = 1u32 << elems[i];
        for b in 0..blocks.len() {
            blocks[b] |= bit;
            go(elems, i + 1, blocks, out);
            blocks[b] &= !bit;
        }
        blocks.push(bit);
        go(elems, i + 1, blocks, out);
        blocks.pop();
    }
    let elems: Vec<usize> = bits(mask).collect();
    let mut out = Vec::new();
    go(&elems, 0, &mut Vec::new(), &mut out);
    out
}

/// Where two rays `p1 + t·d1`, `p2 + s·d2` (t, s > 0) meet.
/// Where two rays `p1 + t·d1`, `p2 + s·d2` (t, s > 0) meet.
fn meet(p1: &Located, d1: LatticeVector, p2: &Located, d2: LatticeVector) -> Result<Option<Located>, NonGeneric> {
    let det = wedge(d1, d2);
    // Floating-point pre-check: reject only when a parameter is clearly negative.
    let (ax, ay) = (p2.approx.0 - p1.approx.0, p2.approx.1 - p1.approx.1);
    if det != 0 && ax.is_finite() && ay.is_finite() {
        let wedge_f = |d: LatticeVector| ax * d.y as f64 - ay * d.x as f64;
        let scale = (ax.abs() + ay.abs() + 1.0) * ((d1.x.abs() + d1.y.abs() + d2.x.abs() + d2.y.abs()) as f64 + 1.0);
        let tol = 1e-9 * scale;
        let sign = if det > 0 { 1.0 } else { -1.0 };
        if sign * wedge_f(d2) < -tol || sign * wedge_f(d1) < -tol {
            return Ok(None);
        }
    }
    let p1 = &p1.exact;
    let p2 = &p2.exact;
    let to_q = |v: i64| BigRational::from_integer(BigInt::from(v));
    let dx = &p2.x - &p1.x;
    let dy = &p2.y - &p1.y;
    // Δ ∧ d for Δ = p2 - p1.
    let delta_wedge = |d: LatticeVector| &dx * to_q(d.y) - &dy * to_q(d.x);
    if det == 0 {
        if delta_wedge(d1).is_zero() {
            return Err(NonGeneric(format!("collinear parallel rays from {p1} and {p2}")));
        }
        return Ok(None);
    }
    let det = BigRational::from_integer(BigInt::from(det));
    let t = delta_wedge(d2) / &det;
    let s = delta_wedge(d1) / &det;
    if t.is_zero() || s.is_zero() {
        return Err(NonGeneric(format!("rays from {p1} and {p2} meet at an endpoint")));
    }
    if t.is_positive() && s.is_positive() {
        Ok(Some(Located::new(p1.offset(&t, d1))))
    } else {
        Ok(None)
    }
}

fn expand_subset(set: &SubSet) -> Vec<Vec<Concrete>> {
    set.iter().flat_map(|alt| expand_alt(alt)).collect()
}

/// Cartesian product of per-slot options.
fn product<T>(slots: Vec<Vec<T>>, duplicate: impl Fn(&T) -> T) -> Vec<Vec<T>> {
    let mut acc: Vec<Vec<T>> = vec![Vec::new()];
    for options in slots {
        let mut next = Vec::with_capacity(acc.len() * options.len());
        for prefix in &acc {
            for o in &options {
                let mut v: Vec<T> = prefix.iter().map(&duplicate).collect();
                v.push(duplicate(o));
                next.push(v);
            }
        }
        acc = next;
    }
    acc
}

/// All concrete branch lists for one choice of branch sets.
fn expand_alt(branch_sets: &[Rc<BranchSet>]) -> Vec<Vec<Concrete>> {
    product(
        branch_sets.iter().map(|set| set.iter().flat_map(expand_branch).collect()).collect(),
        Concrete::duplicate,
    )
}

fn expand_branch(alt: &BranchAlt) -> Vec<Concrete> {
    match alt {
        BranchAlt::End(d) => vec![Concrete::End(*d)],
        BranchAlt::Chain { end, merges } => {
            let slots: Vec<Vec<(RationalPoint, ConcreteFixed)>> = merges
                .iter()
                .map(|(at, f)| expand_fixed(f).into_iter().map(|c| (at.exact.clone(), c)).collect())
                .collect();
            product(slots, |(at, c)| (at.clone(), c.duplicate()))
                .into_iter()
                .map(|merges| Concrete::Chain { end: *end, merges })
                .collect()
        }
    }
}

fn expand_fixed(f: &Fixed) -> Vec<ConcreteFixed> {
    match f {
        Fixed::Pointed { point, below, .. } => expand_subset(below)
            .into_iter()
            .map(|branches| ConcreteFixed::Pointed { point: *point, branches })
            .collect(),
        Fixed::Join { at, left, right, .. } => {
            let (ls, rs) = (expand_fixed(left), expand_fixed(right));
            let mut out = Vec::with_capacity(ls.len() * rs.len());
            for l in &ls {
                for r in &rs {
                    out.push(ConcreteFixed::Join {
                        at: at.exact.clone(),
                        left: Box::new(l.duplicate()),
                        right: Box::new(r.duplicate()),
                    });
                }
            }
            out
        }
    }
}

impl Concrete {
    fn duplicate(&self) -> Concrete {
        match self {
            Concrete::End(d) => Concrete::End(*d),
            Concrete::Chain { end, merges } => Concrete::Chain {
                end: *end,
                merges: merges.iter().map(|(at, f)| (at.clone(), f.duplicate())).collect(),
            },
        }
    }
}

impl ConcreteFixed {
    fn duplicate(&self) -> ConcreteFixed {
        match self {
            ConcreteFixed::Pointed { point, branches } => ConcreteFixed::Pointed {
                point: *point,
                branches: branches.iter().map(Concrete::duplicate).collect(),
            },
            ConcreteFixed::Join { at, left, right } => ConcreteFixed::Join {
                at: at.clone(),
                left: Box::new(left.duplicate()),
                right: Box::new(right.duplicate()),
            },
        }
    }
}

/// Collects vertices, positions and edges; edge weights are filled in
/// afterwards by rebalancing.
struct Builder<'a> {
    vertices: Vec<VertexMarker>,
    positions: Vec<RationalPoint>,
    edges: Vec<BoundedEdge>,
    ends: Vec<(usize, LatticeVector)>,
    vectors: &'a [LatticeVector],
}

impl Builder<'_> {
    fn unpointed(&mut self, at: &RationalPoint) -> usize {
        self.vertices.push(VertexMarker::Unpointed);
        self.positions.push(at.clone());
        self.vertices.len() - 1
    }

    fn edge(&mut self, from: usize, to: usize) {
        self.edges.push(BoundedEdge { from, to, weight: LatticeVector::ZERO });
    }

    fn add_branches(&mut self, p: usize, branches: &[Concrete]) {
        for b in branches {
            match b {
                Concrete::End(d) => self.ends.push((p, self.vectors[*d])),
                Concrete::Chain { end, merges } => {
                    let mut prev = p;
                    for (at, f) in merges {
                        let u = self.unpointed(at);
                        self.edge(prev, u);
                        let v = self.add_fixed(f);
                        self.edge(v, u);
                        prev = u;
                    }
                    self.ends.push((prev, self.vectors[*end]));
                }
            }
        }
    }

    /// Adds a fixed ray's part of the curve and returns its top vertex.
    fn add_fixed(&mut self, f: &ConcreteFixed) -> usize {
        match f {
            ConcreteFixed::Pointed { point, branches } => {
                self.add_branches(*point, branches);
                *point
            }
            ConcreteFixed::Join { at, left, right } => {
                let u = self.unpointed(at);
                for side in [left, right] {
                    let v = self.add_fixed(side);
                    self.edge(v, u);
                }
                u
            }
        }
    }
}

fn build_curve(
    branches: &[Concrete],
    degree: &Degree,
    vectors: &[LatticeVector],
    points: &[RationalPoint],
    n: usize,
) -> ParametrizedTropicalCurve {
    let mut b = Builder {
        vertices: (0..n).map(VertexMarker::Pointed).collect(),
        positions: points.to_vec(),
        edges: Vec::new(),
        ends: Vec::new(),
        vectors,
    };
    b.add_branches(0, branches);
    let mut pools: HashMap<LatticeVector, Vec<usize>> = HashMap::new();
    for (i, v) in degree.entries().iter().enumerate().rev() {
        pools.entry(*v).or_default().push(i);
    }
    let ends = b
        .ends
        .iter()
        .map(|&(vertex, direction)| UnboundedEnd {
            vertex,
            degree_index: pools.get_mut(&direction).and_then(Vec::pop).expect("end vector belongs to the degree"),
            direction,
        })
        .collect();
    let t = CombinatorialType { vertices: b.vertices, edges: b.edges, ends }
        .rebalanced()
        .expect("weights of a realized curve are non-zero");
    let lengths = t
        .edges
        .iter()
        .map(|e| {
            let (a, c) = (&b.positions[e.from], &b.positions[e.to]);
            if e.weight.x != 0 {
                (&c.x - &a.x) / BigRational::from_integer(BigInt::from(e.weight.x))
            } else {
                (&c.y - &a.y) / BigRational::from_integer(BigInt::from(e.weight.y))
            }
        })
        .collect();
    ParametrizedTropicalCurve { combinatorial_type: t, positions: b.positions, lengths }
}
