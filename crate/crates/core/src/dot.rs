//! DOT export of the surface dual graph.
//!
//! Piece nodes are labeled `id / kind / block`; curve edges are labeled
//! with their degree pair `h_a:h_b` and carry the curve id as an `id`
//! attribute so parallel edges stay distinguishable. Almost-fiber pieces
//! are grouped into one cluster per component. Output is deterministic.

use crate::document::Document;
use crate::model::almost_fiber;
use std::collections::BTreeSet;
use std::fmt::Write as _;

fn quote(s: &str) -> String {
    format!(
        "\"{}\"",
        s.replace('\\', "\\\\").replace('"', "\\\"").replace('\n', "\\n")
    )
}

/// Renders the surface dual graph as a DOT multigraph.
pub fn export_dot(doc: &Document) -> String {
    let mut out = String::from("graph surface {\n");
    let components = almost_fiber(&doc.surface);
    let clustered: BTreeSet<&str> = components
        .iter()
        .flat_map(|c| c.pieces.iter().map(String::as_str))
        .collect();

    let node_line = |piece: &crate::model::Piece| {
        format!(
            "{} [label={}];",
            quote(&piece.id),
            quote(&format!("{}\n{}\n{}", piece.id, piece.kind, piece.block))
        )
    };

    for (i, component) in components.iter().enumerate() {
        let _ = writeln!(out, "  subgraph cluster_{i} {{");
        let _ = writeln!(out, "    label={};", quote(&format!("almost-fiber component {}", i + 1)));
        for id in &component.pieces {
            let piece = doc.surface.piece(id).expect("component piece exists");
            let _ = writeln!(out, "    {}", node_line(piece));
        }
        out.push_str("  }\n");
    }
    let mut rest: Vec<&crate::model::Piece> = doc
        .surface
        .pieces
        .iter()
        .filter(|p| !clustered.contains(p.id.as_str()))
        .collect();
    rest.sort_by(|a, b| a.id.cmp(&b.id));
    for piece in rest {
        let _ = writeln!(out, "  {}", node_line(piece));
    }

    let mut curves: Vec<&crate::model::Curve> = doc.surface.curves.iter().collect();
    curves.sort_by(|a, b| a.id.cmp(&b.id));
    for curve in curves {
        let _ = writeln!(
            out,
            "  {} -- {} [label={}, id={}];",
            quote(&curve.piece_a),
            quote(&curve.piece_b),
            quote(&format!("{}:{}", curve.h_a, curve.h_b)),
            quote(&curve.id)
        );
    }
    out.push_str("}\n");
    out
}
