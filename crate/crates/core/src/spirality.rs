//! The spirality homomorphism of an almost-fiber component, computed exactly.
//!
//! Every directed traversal of a curve carries the ratio `ξ = h/h'` of the
//! covering degrees on its two sides; the weight of a directed closed walk
//! is the product of these ratios, and the walk weights define a
//! multiplicative homomorphism from the first homology of the component
//! into the positive rationals. The homomorphism is trivial exactly when
//! the surface subgroup is separable, so triviality is decided here with
//! arbitrary-precision rationals, never floats.
//!
//! For trivial spirality, a vertex potential `φ` realizes every ratio as a
//! coboundary `ξ = φ(head)/φ(tail)`, and the uniform bound `Λ` on partial
//! products along directed closed walks is exactly `max φ / min φ`. An
//! independent enumeration over walks (dynamic programming on walk length
//! and endpoints) serves as the testing oracle for that bound.

use crate::model::{AFComponent, Curve, SurfaceGraph};
use crate::rational::Rational;
use num_traits::One;
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

/// Traversal direction of a curve: `Forward` runs from `piece_a` to
/// `piece_b` and carries `h_a / h_b`; `Reverse` the reciprocal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Orientation {
    Forward,
    Reverse,
}

impl Orientation {
    pub fn flipped(self) -> Orientation {
        match self {
            Orientation::Forward => Orientation::Reverse,
            Orientation::Reverse => Orientation::Forward,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Orientation::Forward => "fwd",
            Orientation::Reverse => "rev",
        }
    }
}

/// One directed step of a cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleEdge {
    pub curve: String,
    pub orientation: Orientation,
}

/// A directed closed walk in the surface dual graph, as a sequence of
/// directed curve traversals. Repeated edges and vertices are allowed;
/// partial-product maxima live on walks, not just simple cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedCycle {
    pub edges: Vec<CycleEdge>,
}

/// Validation errors for user-supplied cycles.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CycleError {
    #[error("cycle must contain at least one edge")]
    Empty,
    #[error("unknown curve {0:?}")]
    UnknownCurve(String),
    #[error("edge {0} ends at piece {1:?} but edge {2} starts at piece {3:?}")]
    NotIncident(usize, String, usize, String),
    #[error("walk is not closed: starts at {start:?}, ends at {end:?}")]
    NotClosed { start: String, end: String },
}

/// Tail and head pieces of a directed curve traversal.
fn endpoints(curve: &Curve, orientation: Orientation) -> (&str, &str) {
    match orientation {
        Orientation::Forward => (&curve.piece_a, &curve.piece_b),
        Orientation::Reverse => (&curve.piece_b, &curve.piece_a),
    }
}

/// Ratio carried by a directed curve traversal: `h_a/h_b` forward,
/// `h_b/h_a` in reverse. Degrees must be positive (validated inputs).
pub fn xi(curve: &Curve, orientation: Orientation) -> Rational {
    assert!(
        curve.h_a > 0 && curve.h_b > 0,
        "curve {:?} has a non-positive covering degree",
        curve.id
    );
    match orientation {
        Orientation::Forward => Rational::new(curve.h_a.into(), curve.h_b.into()),
        Orientation::Reverse => Rational::new(curve.h_b.into(), curve.h_a.into()),
    }
}

impl DirectedCycle {
    pub fn new(edges: Vec<CycleEdge>) -> DirectedCycle {
        DirectedCycle { edges }
    }

    /// Checks the walk is nonempty, uses known curves, is incident
    /// head-to-tail, and closes up.
    pub fn validate(&self, surface: &SurfaceGraph) -> Result<(), CycleError> {
        if self.edges.is_empty() {
            return Err(CycleError::Empty);
        }
        let resolve = |e: &CycleEdge| {
            surface
                .curve(&e.curve)
                .ok_or_else(|| CycleError::UnknownCurve(e.curve.clone()))
        };
        let first = resolve(&self.edges[0])?;
        let start = endpoints(first, self.edges[0].orientation).0.to_string();
        let mut at = endpoints(first, self.edges[0].orientation).1.to_string();
        for (i, e) in self.edges.iter().enumerate().skip(1) {
            let curve = resolve(e)?;
            let (tail, head) = endpoints(curve, e.orientation);
            if tail != at {
                return Err(CycleError::NotIncident(i - 1, at, i, tail.to_string()));
            }
            at = head.to_string();
        }
        if at != start {
            return Err(CycleError::NotClosed { start, end: at });
        }
        Ok(())
    }

    /// The same walk traversed backwards; its weight is the reciprocal.
    pub fn reversed(&self) -> DirectedCycle {
        DirectedCycle {
            edges: self
                .edges
                .iter()
                .rev()
                .map(|e| CycleEdge {
                    curve: e.curve.clone(),
                    orientation: e.orientation.flipped(),
                })
                .collect(),
        }
    }

    /// Piece visited before each edge; index 0 is the basepoint.
    fn vertex_sequence<'a>(&self, surface: &'a SurfaceGraph) -> Vec<&'a str> {
        let mut seq = Vec::with_capacity(self.edges.len());
        for e in &self.edges {
            let curve = surface.curve(&e.curve).expect("validated cycle");
            seq.push(endpoints(curve, e.orientation).0);
        }
        seq
    }
}

impl fmt::Display for DirectedCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}:{}", e.curve, e.orientation.as_str())?;
        }
        Ok(())
    }
}

impl FromStr for DirectedCycle {
    type Err = String;

    /// Parses `curve[:fwd|rev],...`; the orientation defaults to `fwd`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut edges = Vec::new();
        for part in s.split(',') {
            let part = part.trim();
            if part.is_empty() {
                return Err("empty cycle step".into());
            }
            let (curve, orientation) = match part.split_once(':') {
                None => (part, Orientation::Forward),
                Some((c, "fwd")) => (c, Orientation::Forward),
                Some((c, "rev")) => (c, Orientation::Reverse),
                Some((_, other)) => {
                    return Err(format!("orientation must be fwd or rev, got {other:?}"))
                }
            };
            edges.push(CycleEdge {
                curve: curve.to_string(),
                orientation,
            });
        }
        Ok(DirectedCycle { edges })
    }
}

/// Exact weight of a directed closed walk: the product of the ratios of
/// its directed edges. Expects a walk that validates in `surface`.
pub fn weight(surface: &SurfaceGraph, cycle: &DirectedCycle) -> Rational {
    cycle
        .edges
        .iter()
        .map(|e| {
            let curve = surface
                .curve(&e.curve)
                .unwrap_or_else(|| panic!("unknown curve {:?} in cycle", e.curve));
            xi(curve, e.orientation)
        })
        .product()
}

/// Errors from operations that require particular spirality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum SpiralityError {
    #[error("spirality is nontrivial on this component")]
    NonTrivialSpirality,
    #[error("spirality is trivial: no supercritical cycle exists")]
    NoSupercriticalCycle,
    #[error("component contains no geometrically infinite piece")]
    NoGeometricallyInfinitePiece,
}

/// The spirality homomorphism evaluated on a fundamental cycle basis.
#[derive(Debug, Clone)]
pub struct SpiralityHom {
    pub component: AFComponent,
    /// One `(cycle, weight)` pair per non-tree curve, in sorted curve order.
    pub basis: Vec<(DirectedCycle, Rational)>,
    /// True iff every basis weight is 1; equivalently, every closed walk
    /// has weight 1. Equals the separability verdict for the subgroup.
    pub trivial: bool,
}

impl SpiralityHom {
    pub fn is_trivial(&self) -> bool {
        self.trivial
    }
}

/// Multiplicative vertex potential realizing trivial spirality: for every
/// directed curve of the component, `ξ = φ(head)/φ(tail)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Potential {
    pub phi: BTreeMap<String, Rational>,
    /// Smallest piece id; `φ(root) = 1`.
    pub root: String,
}

#[derive(Clone, Copy)]
struct DirEdge {
    curve_idx: usize,
    orientation: Orientation,
    from: usize,
    to: usize,
}

/// Indexed view of one component with both orientations of every curve.
struct ComponentGraph<'a> {
    vertices: Vec<&'a str>,
    curves: Vec<&'a Curve>,
    edges: Vec<DirEdge>,
    out: Vec<Vec<usize>>,
}

impl<'a> ComponentGraph<'a> {
    fn new(surface: &'a SurfaceGraph, component: &'a AFComponent) -> ComponentGraph<'a> {
        let vertices: Vec<&str> = component.pieces.iter().map(String::as_str).collect();
        let index: BTreeMap<&str, usize> =
            vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let curves: Vec<&Curve> = component
            .curves
            .iter()
            .map(|id| surface.curve(id).expect("component curve exists"))
            .collect();
        let mut edges = Vec::with_capacity(curves.len() * 2);
        let mut out = vec![Vec::new(); vertices.len()];
        // curves come from a BTreeSet, so edges are in sorted curve order
        for (ci, curve) in curves.iter().enumerate() {
            let a = index[curve.piece_a.as_str()];
            let b = index[curve.piece_b.as_str()];
            for (orientation, from, to) in
                [(Orientation::Forward, a, b), (Orientation::Reverse, b, a)]
            {
                out[from].push(edges.len());
                edges.push(DirEdge {
                    curve_idx: ci,
                    orientation,
                    from,
                    to,
                });
            }
        }
        ComponentGraph {
            vertices,
            curves,
            edges,
            out,
        }
    }

    fn xi_of(&self, e: &DirEdge) -> Rational {
        xi(self.curves[e.curve_idx], e.orientation)
    }

    fn cycle_edge(&self, e: &DirEdge) -> CycleEdge {
        CycleEdge {
            curve: self.curves[e.curve_idx].id.clone(),
            orientation: e.orientation,
        }
    }

    /// Breadth-first spanning tree from the smallest piece id, scanning
    /// curves in sorted id order. Returns the parent edge of each vertex
    /// (directed parent → child) and the set of tree curve indices.
    fn spanning_tree(&self) -> (Vec<Option<usize>>, Vec<usize>, BTreeSet<usize>) {
        let n = self.vertices.len();
        let mut parent_edge: Vec<Option<usize>> = vec![None; n];
        let mut depth = vec![0usize; n];
        let mut tree_curves = BTreeSet::new();
        let mut visited = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        visited[0] = true;
        while let Some(u) = queue.pop_front() {
            for &ei in &self.out[u] {
                let e = self.edges[ei];
                if !visited[e.to] {
                    visited[e.to] = true;
                    parent_edge[e.to] = Some(ei);
                    depth[e.to] = depth[u] + 1;
                    tree_curves.insert(e.curve_idx);
                    queue.push_back(e.to);
                }
            }
        }
        assert!(
            visited.iter().all(|&v| v),
            "almost-fiber component must be connected"
        );
        (parent_edge, depth, tree_curves)
    }

    /// Directed tree path from `x` to `y` as cycle edges.
    fn tree_path(
        &self,
        parent_edge: &[Option<usize>],
        depth: &[usize],
        x: usize,
        y: usize,
    ) -> Vec<CycleEdge> {
        let mut up = Vec::new(); // x towards the root, traversed child → parent
        let mut down = Vec::new(); // y towards the root, recorded parent → child
        let (mut a, mut b) = (x, y);
        while depth[a] > depth[b] {
            let e = self.edges[parent_edge[a].expect("non-root has parent")];
            let mut step = self.cycle_edge(&e);
            step.orientation = step.orientation.flipped();
            up.push(step);
            a = e.from;
        }
        while depth[b] > depth[a] {
            let e = self.edges[parent_edge[b].expect("non-root has parent")];
            down.push(self.cycle_edge(&e));
            b = e.from;
        }
        while a != b {
            let ea = self.edges[parent_edge[a].expect("non-root has parent")];
            let mut step = self.cycle_edge(&ea);
            step.orientation = step.orientation.flipped();
            up.push(step);
            a = ea.from;
            let eb = self.edges[parent_edge[b].expect("non-root has parent")];
            down.push(self.cycle_edge(&eb));
            b = eb.from;
        }
        up.extend(down.into_iter().rev());
        up
    }

    /// All-pairs unweighted shortest walk lengths over directed edges.
    fn distances(&self) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut dist = vec![vec![usize::MAX; n]; n];
        for start in 0..n {
            let d = &mut dist[start];
            d[start] = 0;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &ei in &self.out[u] {
                    let e = self.edges[ei];
                    if d[e.to] == usize::MAX {
                        d[e.to] = d[u] + 1;
                        queue.push_back(e.to);
                    }
                }
            }
        }
        dist
    }
}

/// Fundamental cycle basis of a connected component.
///
/// The spanning tree is breadth-first from the smallest piece id with
/// curves scanned in sorted id order, so the basis is deterministic. Each
/// non-tree curve defines one basis cycle: a loop curve is its own cycle
/// traversed forward; otherwise the cycle follows the tree from `piece_a`
/// to `piece_b` and closes up traversing the curve in reverse.
pub fn cycle_basis(surface: &SurfaceGraph, component: &AFComponent) -> Vec<DirectedCycle> {
    let g = ComponentGraph::new(surface, component);
    if g.vertices.is_empty() {
        return Vec::new();
    }
    let (parent_edge, depth, tree_curves) = g.spanning_tree();
    let index: BTreeMap<&str, usize> = g
        .vertices
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i))
        .collect();
    let mut basis = Vec::new();
    for (ci, curve) in g.curves.iter().enumerate() {
        if tree_curves.contains(&ci) {
            continue;
        }
        if curve.piece_a == curve.piece_b {
            basis.push(DirectedCycle::new(vec![CycleEdge {
                curve: curve.id.clone(),
                orientation: Orientation::Forward,
            }]));
        } else {
            let a = index[curve.piece_a.as_str()];
            let b = index[curve.piece_b.as_str()];
            let mut edges = g.tree_path(&parent_edge, &depth, a, b);
            edges.push(CycleEdge {
                curve: curve.id.clone(),
                orientation: Orientation::Reverse,
            });
            basis.push(DirectedCycle::new(edges));
        }
    }
    basis
}

/// Evaluates the spirality homomorphism on the fundamental cycle basis.
pub fn spirality(surface: &SurfaceGraph, component: &AFComponent) -> SpiralityHom {
    let basis: Vec<(DirectedCycle, Rational)> = cycle_basis(surface, component)
        .into_iter()
        .map(|cycle| {
            let w = weight(surface, &cycle);
            (cycle, w)
        })
        .collect();
    let trivial = basis.iter().all(|(_, w)| w.is_one());
    SpiralityHom {
        component: component.clone(),
        basis,
        trivial,
    }
}

/// Governor of the component: the maximum ratio over all directed curves
/// (both orientations). At least 1, with equality iff every ratio is 1.
pub fn governor(surface: &SurfaceGraph, component: &AFComponent) -> Rational {
    let mut best = Rational::one();
    for id in &component.curves {
        let curve = surface.curve(id).expect("component curve exists");
        for orientation in [Orientation::Forward, Orientation::Reverse] {
            let r = xi(curve, orientation);
            if r > best {
                best = r;
            }
        }
    }
    best
}

/// Constructs the vertex potential witnessing trivial spirality:
/// `φ(root) = 1` at the smallest piece id, propagated along the spanning
/// tree by `φ(head) = φ(tail)·ξ`.
pub fn vertex_potential(
    surface: &SurfaceGraph,
    component: &AFComponent,
) -> Result<Potential, SpiralityError> {
    let g = ComponentGraph::new(surface, component);
    let n = g.vertices.len();
    let (parent_edge, _, _) = g.spanning_tree();
    let mut phi: Vec<Option<Rational>> = vec![None; n];
    phi[0] = Some(Rational::one());
    // parent pointers always lead to the root, so resolve iteratively
    for v in 0..n {
        let mut stack = Vec::new();
        let mut u = v;
        while phi[u].is_none() {
            stack.push(u);
            u = g.edges[parent_edge[u].expect("non-root has parent")].from;
        }
        while let Some(w) = stack.pop() {
            let e = g.edges[parent_edge[w].expect("non-root has parent")];
            let parent_phi = phi[e.from].clone().expect("parent resolved");
            phi[w] = Some(parent_phi * g.xi_of(&e));
        }
    }
    let phi: Vec<Rational> = phi.into_iter().map(Option::unwrap).collect();
    // consistency on every directed edge is exactly triviality
    for e in &g.edges {
        if g.xi_of(e) != &phi[e.to] / &phi[e.from] {
            return Err(SpiralityError::NonTrivialSpirality);
        }
    }
    Ok(Potential {
        phi: g
            .vertices
            .iter()
            .zip(phi)
            .map(|(&v, p)| (v.to_string(), p))
            .collect(),
        root: g.vertices[0].to_string(),
    })
}

/// Uniform bound on partial products of ratios along directed closed
/// walks, for a component with trivial spirality: `max φ / min φ`.
///
/// Every partial product telescopes to `φ(end)/φ(start)`, so the bound is
/// attained by a walk through the extremal pieces.
pub fn lambda_bound(
    surface: &SurfaceGraph,
    component: &AFComponent,
) -> Result<Rational, SpiralityError> {
    let potential = vertex_potential(surface, component)?;
    let max = potential.phi.values().max().expect("nonempty component");
    let min = potential.phi.values().min().expect("nonempty component");
    Ok(max / min)
}

/// Maximum partial product over all directed closed walks of length at
/// most `max_len`, by exhaustive dynamic programming over walks.
///
/// A contiguous sub-run of a closed walk is a walk `x → y`, and it sits
/// inside some closed walk of length `≤ max_len` exactly when its length
/// plus the shortest return distance `y → x` fits the budget. The empty
/// sub-run contributes 1. Independent of the potential route used by
/// [`lambda_bound`], which it serves as an oracle for.
pub fn lambda_by_enumeration(
    surface: &SurfaceGraph,
    component: &AFComponent,
    max_len: usize,
) -> Rational {
    let g = ComponentGraph::new(surface, component);
    let n = g.vertices.len();
    let mut best = Rational::one();
    if n == 0 || max_len == 0 {
        return best;
    }
    let dist = g.distances();
    // max_weight[x][y]: maximum weight among walks x → y with exactly t edges
    let mut max_weight: Vec<Vec<Option<Rational>>> = vec![vec![None; n]; n];
    for (x, row) in max_weight.iter_mut().enumerate() {
        row[x] = Some(Rational::one());
    }
    for t in 1..=max_len {
        let mut next: Vec<Vec<Option<Rational>>> = vec![vec![None; n]; n];
        for e in &g.edges {
            let r = g.xi_of(e);
            for x in 0..n {
                if let Some(w) = &max_weight[x][e.from] {
                    let cand = w * &r;
                    let slot = &mut next[x][e.to];
                    if slot.as_ref().is_none_or(|cur| cand > *cur) {
                        *slot = Some(cand);
                    }
                }
            }
        }
        for (x, row) in next.iter().enumerate() {
            for (y, w) in row.iter().enumerate() {
                if let Some(w) = w {
                    if dist[y][x] != usize::MAX && t + dist[y][x] <= max_len && *w > best {
                        best = w.clone();
                    }
                }
            }
        }
        max_weight = next;
    }
    best
}

/// Finds a directed closed walk of weight `> 1` through a geometrically
/// infinite piece of the component.
///
/// The basis cycle with the most extreme weight is chosen (ties broken by
/// smallest defining curve id) and inverted if its weight is below 1. If
/// the cycle misses every geometrically infinite piece, a back-tracking
/// detour out to the nearest one and straight back is spliced in; the
/// detour's ratios cancel, so the weight is unchanged.
pub fn supercritical_cycle_through_gi(
    surface: &SurfaceGraph,
    component: &AFComponent,
) -> Result<DirectedCycle, SpiralityError> {
    let hom = spirality(surface, component);
    if hom.trivial {
        return Err(SpiralityError::NoSupercriticalCycle);
    }
    if !component.contains_geometrically_infinite(surface) {
        return Err(SpiralityError::NoGeometricallyInfinitePiece);
    }

    // strongest witness: maximize max(w, 1/w); first in basis order wins ties
    let mut chosen: Option<(&DirectedCycle, &Rational, Rational)> = None;
    for (cycle, w) in &hom.basis {
        if w.is_one() {
            continue;
        }
        let strength = if *w > Rational::one() {
            w.clone()
        } else {
            w.recip()
        };
        if chosen.as_ref().is_none_or(|(_, _, s)| strength > *s) {
            chosen = Some((cycle, w, strength));
        }
    }
    let (cycle, w, _) = chosen.expect("nontrivial spirality has a basis witness");
    let cycle = if *w < Rational::one() {
        cycle.reversed()
    } else {
        cycle.clone()
    };

    let is_gi = |piece: &str| {
        surface
            .piece(piece)
            .is_some_and(|p| p.kind == crate::model::PieceKind::GeometricallyInfinite)
    };
    let vertices = cycle.vertex_sequence(surface);
    if vertices.iter().any(|v| is_gi(v)) {
        return Ok(cycle);
    }

    // breadth-first from the cycle's vertices to the nearest geometrically
    // infinite piece; sources and adjacency in sorted order for determinism
    let g = ComponentGraph::new(surface, component);
    let index: BTreeMap<&str, usize> = g
        .vertices
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i))
        .collect();
    let sources: BTreeSet<usize> = vertices.iter().map(|v| index[v]).collect();
    let mut back: Vec<Option<usize>> = vec![None; g.vertices.len()];
    let mut seen: Vec<bool> = vec![false; g.vertices.len()];
    let mut queue: VecDeque<usize> = sources.iter().copied().collect();
    for &s in &sources {
        seen[s] = true;
    }
    let mut target = None;
    'bfs: while let Some(u) = queue.pop_front() {
        if is_gi(g.vertices[u]) {
            target = Some(u);
            break 'bfs;
        }
        for &ei in &g.out[u] {
            let e = g.edges[ei];
            if !seen[e.to] {
                seen[e.to] = true;
                back[e.to] = Some(ei);
                queue.push_back(e.to);
            }
        }
    }
    let target = target.expect("component contains a geometrically infinite piece");

    // unwind the detour path source → target
    let mut detour = Vec::new();
    let mut at = target;
    while let Some(ei) = back[at] {
        let e = g.edges[ei];
        detour.push(g.cycle_edge(&e));
        at = e.from;
    }
    detour.reverse();
    let splice_vertex = g.vertices[at];

    // splice detour · detour⁻¹ at the first visit of the splice vertex
    let position = vertices
        .iter()
        .position(|&v| v == splice_vertex)
        .expect("detour starts on the cycle");
    let mut edges = cycle.edges[..position].to_vec();
    edges.extend(detour.iter().cloned());
    edges.extend(detour.into_iter().rev().map(|mut e| {
        e.orientation = e.orientation.flipped();
        e
    }));
    edges.extend(cycle.edges[position..].iter().cloned());
    Ok(DirectedCycle::new(edges))
}
