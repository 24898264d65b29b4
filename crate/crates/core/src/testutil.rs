//! Shared fixtures for unit tests: a two-block manifold scaffold where any
//! curve placement is legal, and seeded random surface generators.
#![cfg(test)]

use crate::model::{
    validate, AFComponent, Block, Curve, Geometry, JsjTorus, ManifoldGraph, Piece, PieceKind,
    SurfaceGraph,
};
use crate::rational::{ratio, Rational};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

/// One Seifert and one hyperbolic block, self-gluing tori on each plus a
/// joining torus, so pieces of every kind can be wired up freely.
pub(crate) fn scaffold_manifold() -> ManifoldGraph {
    ManifoldGraph {
        blocks: vec![
            Block {
                id: "bh".into(),
                geometry: Geometry::Hyperbolic,
            },
            Block {
                id: "bs".into(),
                geometry: Geometry::Seifert,
            },
        ],
        tori: vec![
            JsjTorus {
                id: "th".into(),
                block_a: "bh".into(),
                block_b: "bh".into(),
            },
            JsjTorus {
                id: "tm".into(),
                block_a: "bs".into(),
                block_b: "bh".into(),
            },
            JsjTorus {
                id: "ts".into(),
                block_a: "bs".into(),
                block_b: "bs".into(),
            },
        ],
    }
}

/// Piece on the scaffold block matching its kind.
pub(crate) fn piece(id: &str, kind: PieceKind) -> Piece {
    let block = match kind.required_geometry() {
        Geometry::Seifert => "bs",
        Geometry::Hyperbolic => "bh",
    };
    Piece {
        id: id.into(),
        block: block.into(),
        kind,
    }
}

/// Curve through the scaffold torus joining the blocks of its endpoints.
pub(crate) fn curve(
    surface: &SurfaceGraph,
    id: &str,
    a: &str,
    b: &str,
    h_a: u64,
    h_b: u64,
) -> Curve {
    let block = |p: &str| surface.piece(p).unwrap().block.clone();
    let torus = match (block(a).as_str(), block(b).as_str()) {
        ("bs", "bs") => "ts",
        ("bh", "bh") => "th",
        _ => "tm",
    };
    Curve {
        id: id.into(),
        piece_a: a.into(),
        piece_b: b.into(),
        torus: torus.into(),
        h_a,
        h_b,
    }
}

/// Surface over the scaffold manifold; panics unless it validates.
pub(crate) fn build(pieces: Vec<Piece>, curve_specs: &[(&str, &str, &str, u64, u64)]) -> SurfaceGraph {
    let mut surface = SurfaceGraph {
        pieces,
        curves: vec![],
    };
    surface.curves = curve_specs
        .iter()
        .map(|(id, a, b, ha, hb)| curve(&surface, id, a, b, *ha, *hb))
        .collect();
    assert!(
        validate(&scaffold_manifold(), &surface).is_valid(),
        "test fixture must validate"
    );
    surface
}

/// The unique almost-fiber component of the surface.
pub(crate) fn single_component(surface: &SurfaceGraph) -> AFComponent {
    let mut components = crate::model::almost_fiber(surface);
    assert_eq!(components.len(), 1);
    components.remove(0)
}

/// Connected random almost-fiber surface (horizontal and geometrically
/// infinite pieces only) with degrees in `1..=6`.
pub(crate) fn random_af_surface(
    rng: &mut ChaCha8Rng,
    max_pieces: usize,
    max_curves: usize,
) -> SurfaceGraph {
    let n = rng.gen_range(1..=max_pieces);
    let pieces: Vec<Piece> = (0..n)
        .map(|i| {
            let kind = if rng.gen_bool(0.3) {
                PieceKind::GeometricallyInfinite
            } else {
                PieceKind::Horizontal
            };
            piece(&format!("p{i}"), kind)
        })
        .collect();
    let mut surface = SurfaceGraph {
        pieces,
        curves: vec![],
    };
    let mut specs: Vec<(String, String, u64, u64)> = Vec::new();
    // random spanning tree keeps each instance connected
    for i in 1..n {
        let j = rng.gen_range(0..i);
        specs.push((
            format!("p{j}"),
            format!("p{i}"),
            rng.gen_range(1..=6),
            rng.gen_range(1..=6),
        ));
    }
    let extra = rng.gen_range(0..=max_curves.saturating_sub(specs.len()));
    for _ in 0..extra {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        specs.push((
            format!("p{a}"),
            format!("p{b}"),
            rng.gen_range(1..=6),
            rng.gen_range(1..=6),
        ));
    }
    surface.curves = specs
        .iter()
        .enumerate()
        .map(|(i, (a, b, ha, hb))| curve(&surface, &format!("c{i}"), a, b, *ha, *hb))
        .collect();
    surface
}

/// Random connected surface with trivial spirality: degree pairs derived
/// from a random vertex potential.
pub(crate) fn random_trivial_surface(
    rng: &mut ChaCha8Rng,
    max_pieces: usize,
    max_curves: usize,
) -> SurfaceGraph {
    let mut surface = random_af_surface(rng, max_pieces, max_curves);
    let phi: BTreeMap<String, Rational> = surface
        .pieces
        .iter()
        .map(|p| {
            (
                p.id.clone(),
                ratio(rng.gen_range(1..=6), rng.gen_range(1..=6)),
            )
        })
        .collect();
    for c in &mut surface.curves {
        let r = &phi[&c.piece_b] / &phi[&c.piece_a];
        c.h_a = u64::try_from(r.numer().clone()).unwrap();
        c.h_b = u64::try_from(r.denom().clone()).unwrap();
    }
    surface
}
