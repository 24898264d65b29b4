//! Oracles and generators for the acceptance suite.
//!
//! Everything here is deliberately independent of the library's own
//! computation paths: the closed-walk oracle multiplies edge ratios along
//! walks with no potential or basis argument, and the superadditive
//! closure oracle is a direct big-integer dynamic program.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, VecDeque};
use surfdist::rational::{ratio, Rational};
use surfdist::{
    AFComponent, Block, Curve, Document, Geometry, JsjTorus, ManifoldGraph, Orientation, Piece,
    PieceKind, SurfaceGraph,
};

/// Directed edges of a component: (tail, head, ratio), both orientations
/// of every curve, vertices indexed by sorted piece id.
pub fn directed_edges(
    surface: &SurfaceGraph,
    component: &AFComponent,
) -> (Vec<String>, Vec<(usize, usize, Rational)>) {
    let vertices: Vec<String> = component.pieces.iter().cloned().collect();
    let index: BTreeMap<&str, usize> = vertices
        .iter()
        .enumerate()
        .map(|(i, v)| (v.as_str(), i))
        .collect();
    let mut edges = Vec::new();
    for id in &component.curves {
        let curve = surface.curve(id).expect("component curve");
        let a = index[curve.piece_a.as_str()];
        let b = index[curve.piece_b.as_str()];
        edges.push((a, b, Rational::new(curve.h_a.into(), curve.h_b.into())));
        edges.push((b, a, Rational::new(curve.h_b.into(), curve.h_a.into())));
    }
    (vertices, edges)
}

/// Maximum weight over every directed closed walk of length `1..=max_len`
/// in the component; 1 when there are none. All closed walks have weight 1
/// iff this maximum is 1 (the reverse walk inverts the weight).
pub fn max_closed_walk_weight(
    surface: &SurfaceGraph,
    component: &AFComponent,
    max_len: usize,
) -> Rational {
    let (vertices, edges) = directed_edges(surface, component);
    let n = vertices.len();
    let mut best = Rational::one();
    // weights[x][y]: max weight among walks x -> y with exactly t edges
    let mut weights: Vec<Vec<Option<Rational>>> = vec![vec![None; n]; n];
    for (x, row) in weights.iter_mut().enumerate() {
        row[x] = Some(Rational::one());
    }
    for _t in 1..=max_len {
        let mut next: Vec<Vec<Option<Rational>>> = vec![vec![None; n]; n];
        for (from, to, r) in &edges {
            for x in 0..n {
                if let Some(w) = &weights[x][*from] {
                    let cand = w * r;
                    if next[x][*to].as_ref().is_none_or(|cur| cand > *cur) {
                        next[x][*to] = Some(cand);
                    }
                }
            }
        }
        for (v, row) in next.iter().enumerate() {
            if let Some(w) = &row[v] {
                if *w > best {
                    best = w.clone();
                }
            }
        }
        weights = next;
    }
    best
}

/// A closed walk's ratio sequence: wander `out_steps`, then return by a
/// shortest path. Empty when the component has no curves.
pub fn closed_walk_ratios(
    surface: &SurfaceGraph,
    component: &AFComponent,
    rng: &mut ChaCha8Rng,
    out_steps: usize,
) -> Vec<Rational> {
    let (vertices, edges) = directed_edges(surface, component);
    let n = vertices.len();
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, (from, _, _)) in edges.iter().enumerate() {
        out[*from].push(i);
    }
    let start = rng.gen_range(0..n);
    if out[start].is_empty() {
        return Vec::new();
    }
    let mut ratios = Vec::new();
    let mut at = start;
    for _ in 0..out_steps {
        let ei = out[at][rng.gen_range(0..out[at].len())];
        let (_, to, r) = &edges[ei];
        ratios.push(r.clone());
        at = *to;
    }
    // shortest path back to the start
    let mut prev: Vec<Option<usize>> = vec![None; n];
    let mut seen = vec![false; n];
    seen[at] = true;
    let mut queue = VecDeque::from([at]);
    while let Some(u) = queue.pop_front() {
        if u == start {
            break;
        }
        for &ei in &out[u] {
            let (_, to, _) = &edges[ei];
            if !seen[*to] {
                seen[*to] = true;
                prev[*to] = Some(ei);
                queue.push_back(*to);
            }
        }
    }
    let mut back = Vec::new();
    let mut v = start;
    while v != at {
        let ei = prev[v].expect("component is connected");
        back.push(edges[ei].2.clone());
        v = edges[ei].0;
    }
    back.reverse();
    ratios.extend(back);
    ratios
}

/// Random valid document: each piece on its own block, one torus per
/// curve. `trivial` derives the degree pairs from a random potential so
/// the whole surface has trivial spirality.
pub fn random_document(
    rng: &mut ChaCha8Rng,
    max_pieces: usize,
    max_curves: usize,
    connected: bool,
    trivial: bool,
) -> Document {
    let n = rng.gen_range(1..=max_pieces);
    let kinds = [
        PieceKind::Horizontal,
        PieceKind::Vertical,
        PieceKind::GeometricallyFinite,
        PieceKind::GeometricallyInfinite,
    ];
    let mut blocks = Vec::new();
    let mut pieces = Vec::new();
    for i in 0..n {
        let kind = if trivial || connected {
            // almost-fiber kinds only, so components stay informative
            if rng.gen_bool(0.3) {
                PieceKind::GeometricallyInfinite
            } else {
                PieceKind::Horizontal
            }
        } else {
            kinds[rng.gen_range(0..kinds.len())]
        };
        blocks.push(Block {
            id: format!("b{i}"),
            geometry: kind.required_geometry(),
        });
        pieces.push(Piece {
            id: format!("p{i}"),
            block: format!("b{i}"),
            kind,
        });
    }
    let mut endpoints: Vec<(usize, usize)> = Vec::new();
    if connected {
        for i in 1..n {
            endpoints.push((rng.gen_range(0..i), i));
        }
    }
    let extra = rng.gen_range(0..=max_curves.saturating_sub(endpoints.len()));
    for _ in 0..extra {
        endpoints.push((rng.gen_range(0..n), rng.gen_range(0..n)));
    }
    let phi: Vec<Rational> = (0..n)
        .map(|_| ratio(rng.gen_range(1..=6), rng.gen_range(1..=6)))
        .collect();
    let mut tori = Vec::new();
    let mut curves = Vec::new();
    for (ci, (a, b)) in endpoints.iter().enumerate() {
        tori.push(JsjTorus {
            id: format!("t{ci}"),
            block_a: format!("b{a}"),
            block_b: format!("b{b}"),
        });
        let (h_a, h_b) = if trivial {
            let r = &phi[*b] / &phi[*a];
            (
                u64::try_from(r.numer().clone()).unwrap(),
                u64::try_from(r.denom().clone()).unwrap(),
            )
        } else {
            (rng.gen_range(1..=6), rng.gen_range(1..=6))
        };
        curves.push(Curve {
            id: format!("c{ci}"),
            piece_a: format!("p{a}"),
            piece_b: format!("p{b}"),
            torus: format!("t{ci}"),
            h_a,
            h_b,
        });
    }
    let mut doc = Document {
        version: 1,
        manifold: ManifoldGraph { blocks, tori },
        surface: SurfaceGraph { pieces, curves },
        trace_defaults: None,
    };
    doc.canonicalize();
    assert!(
        surfdist::validate(&doc.manifold, &doc.surface).is_valid(),
        "generated document must be valid"
    );
    doc
}

/// Exact superadditive closure by dynamic programming:
/// `f̄(n) = max(f(n), max_a f̄(a) + f̄(n−a))`.
pub fn superadditive_closure_dp(f: &dyn Fn(u32) -> BigUint, up_to: u32) -> Vec<BigUint> {
    let mut bar = vec![BigUint::from(0u32); up_to as usize + 1];
    for n in 1..=up_to {
        let mut best = f(n);
        for a in 1..n {
            let cand = &bar[a as usize] + &bar[(n - a) as usize];
            if cand > best {
                best = cand;
            }
        }
        bar[n as usize] = best;
    }
    bar
}

/// Least-squares line fit: returns (slope, intercept, r_squared).
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len() as f64;
    let mean_x = xs.iter().sum::<f64>() / n;
    let mean_y = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mean_x).powi(2)).sum();
    let sxy: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (x - mean_x) * (y - mean_y))
        .sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let ss_res: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - (slope * x + intercept)).powi(2))
        .sum();
    let ss_tot: f64 = ys.iter().map(|y| (y - mean_y).powi(2)).sum();
    (slope, intercept, 1.0 - ss_res / ss_tot)
}

/// One Seifert block manifold with a self torus, hosting tiny documents.
pub fn document_from_json(text: &str) -> Document {
    surfdist::parse_input(text).expect("hand-built document parses")
}

#[allow(dead_code)]
pub fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

#[allow(dead_code)]
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().expect("fits f64")
}

#[allow(dead_code)]
pub fn geometry_name(g: Geometry) -> &'static str {
    match g {
        Geometry::Seifert => "seifert",
        Geometry::Hyperbolic => "hyperbolic",
    }
}

#[allow(dead_code)]
pub fn orient_ratio(curve: &Curve, orientation: Orientation) -> Rational {
    surfdist::xi(curve, orientation)
}
