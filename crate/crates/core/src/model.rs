//! Combinatorial data model: the block graph of a non-geometric 3-manifold
//! and the dual graph of a clean surface mapped into it.
//!
//! A manifold is described by its JSJ blocks (Seifert fibered or hyperbolic)
//! and the tori joining them; a surface by its pieces (one per block visit)
//! and the boundary curves joining pieces across tori. Both graphs are
//! multigraphs: parallel tori/curves and self-gluings are legal and show up
//! as parallel edges and loops.
//!
//! Validation reports every invariant violation as data rather than failing
//! on the first problem. The almost-fiber part is the sub-multigraph induced
//! by the horizontal and geometrically infinite pieces.

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Geometry of a JSJ block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Geometry {
    Seifert,
    Hyperbolic,
}

impl fmt::Display for Geometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Geometry::Seifert => "seifert",
            Geometry::Hyperbolic => "hyperbolic",
        })
    }
}

/// Type of a surface piece. Horizontal and vertical pieces live in Seifert
/// blocks, geometrically finite/infinite pieces in hyperbolic blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PieceKind {
    Horizontal,
    Vertical,
    GeometricallyFinite,
    GeometricallyInfinite,
}

impl PieceKind {
    /// Pieces contributing to the almost-fiber part.
    pub fn is_almost_fiber(self) -> bool {
        matches!(self, PieceKind::Horizontal | PieceKind::GeometricallyInfinite)
    }

    /// Geometry the containing block must have.
    pub fn required_geometry(self) -> Geometry {
        match self {
            PieceKind::Horizontal | PieceKind::Vertical => Geometry::Seifert,
            PieceKind::GeometricallyFinite | PieceKind::GeometricallyInfinite => {
                Geometry::Hyperbolic
            }
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            PieceKind::Horizontal => "horizontal",
            PieceKind::Vertical => "vertical",
            PieceKind::GeometricallyFinite => "geometrically_finite",
            PieceKind::GeometricallyInfinite => "geometrically_infinite",
        }
    }
}

impl fmt::Display for PieceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Block {
    pub id: String,
    pub geometry: Geometry,
}

/// A JSJ torus joining two blocks. `block_a == block_b` models a
/// self-gluing and is a loop in the block graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JsjTorus {
    pub id: String,
    pub block_a: String,
    pub block_b: String,
}

/// Block graph of the manifold. All Seifert blocks are taken to be
/// nonelementary; elementary ones are not representable in this model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifoldGraph {
    pub blocks: Vec<Block>,
    pub tori: Vec<JsjTorus>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Piece {
    pub id: String,
    pub block: String,
    pub kind: PieceKind,
}

/// A boundary curve where two pieces meet across a JSJ torus.
///
/// `h_a` and `h_b` are the covering degrees of the two sides; the directed
/// edge from `piece_a` to `piece_b` carries the ratio `h_a / h_b` and the
/// reverse traversal its reciprocal. `piece_a == piece_b` is a loop.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Curve {
    pub id: String,
    pub piece_a: String,
    pub piece_b: String,
    pub torus: String,
    pub h_a: u64,
    pub h_b: u64,
}

/// Dual graph of the surface decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceGraph {
    pub pieces: Vec<Piece>,
    pub curves: Vec<Curve>,
}

impl ManifoldGraph {
    pub fn block(&self, id: &str) -> Option<&Block> {
        self.blocks.iter().find(|b| b.id == id)
    }

    pub fn torus(&self, id: &str) -> Option<&JsjTorus> {
        self.tori.iter().find(|t| t.id == id)
    }
}

impl SurfaceGraph {
    pub fn piece(&self, id: &str) -> Option<&Piece> {
        self.pieces.iter().find(|p| p.id == id)
    }

    pub fn curve(&self, id: &str) -> Option<&Curve> {
        self.curves.iter().find(|c| c.id == id)
    }
}

/// One invariant violation, with a machine-readable code and the id of the
/// offending entity. Violations are data: collecting them never fails.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Violation {
    /// The same id is declared more than once within an entity family.
    DuplicateId { entity: &'static str, id: String },
    /// A reference to an entity that does not exist.
    DanglingReference {
        entity: &'static str,
        id: String,
        field: &'static str,
        target: String,
    },
    /// Piece kind incompatible with the geometry of its block.
    GeometryMismatch { piece: String },
    /// Covering degree that is not a positive integer.
    NonPositiveDegree { curve: String },
    /// The curve's torus does not join the blocks of its two pieces.
    TorusMismatch { curve: String },
}

impl Violation {
    pub fn code(&self) -> &'static str {
        match self {
            Violation::DuplicateId { .. } => "duplicate_id",
            Violation::DanglingReference { .. } => "dangling_reference",
            Violation::GeometryMismatch { .. } => "geometry_mismatch",
            Violation::NonPositiveDegree { .. } => "non_positive_degree",
            Violation::TorusMismatch { .. } => "torus_mismatch",
        }
    }

    /// Id of the offending entity.
    pub fn offender(&self) -> &str {
        match self {
            Violation::DuplicateId { id, .. } => id,
            Violation::DanglingReference { id, .. } => id,
            Violation::GeometryMismatch { piece } => piece,
            Violation::NonPositiveDegree { curve } => curve,
            Violation::TorusMismatch { curve } => curve,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateId { entity, id } => {
                write!(f, "duplicate {entity} id {id:?}")
            }
            Violation::DanglingReference {
                entity,
                id,
                field,
                target,
            } => write!(f, "{entity} {id:?}: field {field} references unknown id {target:?}"),
            Violation::GeometryMismatch { piece } => write!(
                f,
                "piece {piece:?}: kind is incompatible with the geometry of its block"
            ),
            Violation::NonPositiveDegree { curve } => {
                write!(f, "curve {curve:?}: covering degrees must be >= 1")
            }
            Violation::TorusMismatch { curve } => write!(
                f,
                "curve {curve:?}: torus does not join the blocks of its pieces"
            ),
        }
    }
}

/// Result of [`validate`]; empty means the pair of graphs is valid.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            writeln!(f, "valid")
        } else {
            for v in &self.violations {
                writeln!(f, "{} {}: {}", v.code(), v.offender(), v)?;
            }
            Ok(())
        }
    }
}

fn duplicate_ids<'a, I: Iterator<Item = &'a str>>(
    ids: I,
    entity: &'static str,
    out: &mut Vec<Violation>,
) {
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for id in ids {
        *counts.entry(id).or_default() += 1;
    }
    for (id, n) in counts {
        for _ in 1..n {
            out.push(Violation::DuplicateId {
                entity,
                id: id.to_string(),
            });
        }
    }
}

/// Checks every invariant of the pair of graphs and reports each violation.
///
/// The report is a sorted multiset: permuting the input lists yields the
/// same report. Checks that need resolved references (geometry typing,
/// torus matching) are skipped for entities whose references dangle, so a
/// single bad id does not cascade.
pub fn validate(manifold: &ManifoldGraph, surface: &SurfaceGraph) -> ValidationReport {
    let mut out = Vec::new();

    duplicate_ids(manifold.blocks.iter().map(|b| b.id.as_str()), "block", &mut out);
    duplicate_ids(manifold.tori.iter().map(|t| t.id.as_str()), "torus", &mut out);
    duplicate_ids(surface.pieces.iter().map(|p| p.id.as_str()), "piece", &mut out);
    duplicate_ids(surface.curves.iter().map(|c| c.id.as_str()), "curve", &mut out);

    let blocks: BTreeMap<&str, &Block> =
        manifold.blocks.iter().map(|b| (b.id.as_str(), b)).collect();
    let tori: BTreeMap<&str, &JsjTorus> =
        manifold.tori.iter().map(|t| (t.id.as_str(), t)).collect();
    let pieces: BTreeMap<&str, &Piece> =
        surface.pieces.iter().map(|p| (p.id.as_str(), p)).collect();

    for torus in &manifold.tori {
        for (field, target) in [("block_a", &torus.block_a), ("block_b", &torus.block_b)] {
            if !blocks.contains_key(target.as_str()) {
                out.push(Violation::DanglingReference {
                    entity: "torus",
                    id: torus.id.clone(),
                    field,
                    target: target.clone(),
                });
            }
        }
    }

    for piece in &surface.pieces {
        match blocks.get(piece.block.as_str()) {
            None => out.push(Violation::DanglingReference {
                entity: "piece",
                id: piece.id.clone(),
                field: "block",
                target: piece.block.clone(),
            }),
            Some(block) => {
                if block.geometry != piece.kind.required_geometry() {
                    out.push(Violation::GeometryMismatch {
                        piece: piece.id.clone(),
                    });
                }
            }
        }
    }

    for curve in &surface.curves {
        if curve.h_a == 0 || curve.h_b == 0 {
            out.push(Violation::NonPositiveDegree {
                curve: curve.id.clone(),
            });
        }
        let mut resolved = true;
        for (field, target) in [("piece_a", &curve.piece_a), ("piece_b", &curve.piece_b)] {
            if !pieces.contains_key(target.as_str()) {
                resolved = false;
                out.push(Violation::DanglingReference {
                    entity: "curve",
                    id: curve.id.clone(),
                    field,
                    target: target.clone(),
                });
            }
        }
        if !tori.contains_key(curve.torus.as_str()) {
            resolved = false;
            out.push(Violation::DanglingReference {
                entity: "curve",
                id: curve.id.clone(),
                field: "torus",
                target: curve.torus.clone(),
            });
        }
        if resolved {
            let torus = tori[curve.torus.as_str()];
            let block_a = &pieces[curve.piece_a.as_str()].block;
            let block_b = &pieces[curve.piece_b.as_str()].block;
            let mut joined = [torus.block_a.as_str(), torus.block_b.as_str()];
            let mut sides = [block_a.as_str(), block_b.as_str()];
            joined.sort_unstable();
            sides.sort_unstable();
            if joined != sides {
                out.push(Violation::TorusMismatch {
                    curve: curve.id.clone(),
                });
            }
        }
    }

    out.sort();
    ValidationReport { violations: out }
}

/// A connected component of the almost-fiber part: the sub-multigraph
/// induced by horizontal and geometrically infinite pieces. Curves belong
/// to the component when both endpoints do.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AFComponent {
    pub pieces: BTreeSet<String>,
    pub curves: BTreeSet<String>,
}

impl AFComponent {
    /// Smallest piece id, used to order components deterministically.
    pub fn min_piece_id(&self) -> &str {
        self.pieces
            .iter()
            .next()
            .expect("almost-fiber component is nonempty")
    }

    pub fn piece_count(&self) -> usize {
        self.pieces.len()
    }

    pub fn contains_geometrically_infinite(&self, surface: &SurfaceGraph) -> bool {
        self.pieces.iter().any(|id| {
            surface
                .piece(id)
                .is_some_and(|p| p.kind == PieceKind::GeometricallyInfinite)
        })
    }
}

/// Splits the almost-fiber part into connected components, sorted by
/// smallest piece id. Expects `validate` to have passed; curves with
/// unresolved endpoints are ignored.
pub fn almost_fiber(surface: &SurfaceGraph) -> Vec<AFComponent> {
    let af_pieces: BTreeSet<&str> = surface
        .pieces
        .iter()
        .filter(|p| p.kind.is_almost_fiber())
        .map(|p| p.id.as_str())
        .collect();

    // adjacency among almost-fiber pieces only
    let mut adjacency: BTreeMap<&str, Vec<&str>> =
        af_pieces.iter().map(|&p| (p, Vec::new())).collect();
    for curve in &surface.curves {
        let (a, b) = (curve.piece_a.as_str(), curve.piece_b.as_str());
        if af_pieces.contains(a) && af_pieces.contains(b) {
            adjacency.get_mut(a).unwrap().push(b);
            adjacency.get_mut(b).unwrap().push(a);
        }
    }

    let mut seen: BTreeSet<&str> = BTreeSet::new();
    let mut components = Vec::new();
    for &start in &af_pieces {
        if seen.contains(start) {
            continue;
        }
        let mut member: BTreeSet<String> = BTreeSet::new();
        let mut queue = vec![start];
        seen.insert(start);
        while let Some(p) = queue.pop() {
            member.insert(p.to_string());
            for &next in &adjacency[p] {
                if seen.insert(next) {
                    queue.push(next);
                }
            }
        }
        let curves = surface
            .curves
            .iter()
            .filter(|c| member.contains(&c.piece_a) && member.contains(&c.piece_b))
            .map(|c| c.id.clone())
            .collect();
        components.push(AFComponent {
            pieces: member,
            curves,
        });
    }
    // BTreeSet iteration already walks starts in sorted order, so the
    // components come out sorted by their smallest piece id.
    components
}
