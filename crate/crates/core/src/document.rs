//! The on-disk document format and its parser.
//!
//! A document is a single UTF-8 JSON object holding the manifold block
//! graph, the surface dual graph, and optional trace defaults. Parsing is
//! strict: unknown fields, bad enum strings, duplicate ids and dangling
//! references are all reported with a location. Serialization is
//! canonical (entities sorted by id), so `parse ∘ serialize` is the
//! identity on valid documents.

use crate::model::{ManifoldGraph, SurfaceGraph};
use crate::rational::{opt_rational_string, rational_string, Rational};
use crate::witness::{Crossing, TraceConfig, WitnessError};
use num_traits::One;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

pub const DOCUMENT_VERSION: u32 = 1;

/// Scalar trace parameters a document may carry as defaults for the
/// tracer; crossings always come from a separate trace config.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceDefaults {
    #[serde(default, with = "opt_rational_string", skip_serializing_if = "Option::is_none")]
    pub l_prime: Option<Rational>,
    #[serde(default, with = "opt_rational_string", skip_serializing_if = "Option::is_none")]
    pub rho: Option<Rational>,
    #[serde(default, with = "opt_rational_string", skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<Rational>,
    #[serde(default, with = "opt_rational_string", skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Rational>,
}

/// A parsed input document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub version: u32,
    pub manifold: ManifoldGraph,
    pub surface: SurfaceGraph,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace_defaults: Option<TraceDefaults>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    UnknownField,
    DuplicateId,
    DanglingReference,
    BadEnumValue,
}

impl ParseErrorKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ParseErrorKind::Syntax => "syntax_error",
            ParseErrorKind::UnknownField => "unknown_field",
            ParseErrorKind::DuplicateId => "duplicate_id",
            ParseErrorKind::DanglingReference => "dangling_reference",
            ParseErrorKind::BadEnumValue => "bad_enum_value",
        }
    }
}

/// One parse problem with its location: `line L column C` for JSON-level
/// errors, a field path for referential ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseIssue {
    pub kind: ParseErrorKind,
    pub location: String,
    pub message: String,
}

impl fmt::Display for ParseIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}: {}", self.kind.as_str(), self.location, self.message)
    }
}

/// Parse failure carrying every issue found.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseFailure {
    pub issues: Vec<ParseIssue>,
}

impl fmt::Display for ParseFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for issue in &self.issues {
            writeln!(f, "{issue}")?;
        }
        Ok(())
    }
}

fn classify_serde_error(err: &serde_json::Error) -> ParseErrorKind {
    if err.classify() != serde_json::error::Category::Data {
        return ParseErrorKind::Syntax;
    }
    let msg = err.to_string();
    if msg.contains("unknown field") {
        ParseErrorKind::UnknownField
    } else if msg.contains("unknown variant") || msg.contains("invalid value") {
        ParseErrorKind::BadEnumValue
    } else {
        ParseErrorKind::Syntax
    }
}

fn serde_issue(err: &serde_json::Error) -> ParseIssue {
    ParseIssue {
        kind: classify_serde_error(err),
        location: format!("line {} column {}", err.line(), err.column()),
        message: err.to_string(),
    }
}

/// Parses and canonicalizes a document, reporting every structural and
/// referential problem.
pub fn parse_input(text: &str) -> Result<Document, ParseFailure> {
    let mut doc: Document = serde_json::from_str(text).map_err(|e| ParseFailure {
        issues: vec![serde_issue(&e)],
    })?;
    let issues = doc.reference_issues();
    if !issues.is_empty() {
        return Err(ParseFailure { issues });
    }
    doc.canonicalize();
    Ok(doc)
}

impl Document {
    /// Sorts every entity list by id; serialization of a canonical
    /// document is byte-stable.
    pub fn canonicalize(&mut self) {
        self.manifold.blocks.sort_by(|a, b| a.id.cmp(&b.id));
        self.manifold.tori.sort_by(|a, b| a.id.cmp(&b.id));
        self.surface.pieces.sort_by(|a, b| a.id.cmp(&b.id));
        self.surface.curves.sort_by(|a, b| a.id.cmp(&b.id));
    }

    /// Canonical pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut doc = self.clone();
        doc.canonicalize();
        let mut out = serde_json::to_string_pretty(&doc).expect("document serializes");
        out.push('\n');
        out
    }

    /// Version, duplicate-id and dangling-reference issues, with field
    /// paths as locations.
    pub fn reference_issues(&self) -> Vec<ParseIssue> {
        let mut issues = Vec::new();
        if self.version != DOCUMENT_VERSION {
            issues.push(ParseIssue {
                kind: ParseErrorKind::BadEnumValue,
                location: "version".into(),
                message: format!(
                    "unsupported document version {}, expected {DOCUMENT_VERSION}",
                    self.version
                ),
            });
        }

        let mut duplicates = |ids: Vec<(&str, String)>| {
            let mut seen: BTreeSet<&str> = BTreeSet::new();
            for (id, location) in &ids {
                if !seen.insert(id) {
                    issues.push(ParseIssue {
                        kind: ParseErrorKind::DuplicateId,
                        location: location.clone(),
                        message: format!("id {id:?} is declared more than once"),
                    });
                }
            }
        };
        duplicates(
            self.manifold
                .blocks
                .iter()
                .enumerate()
                .map(|(i, b)| (b.id.as_str(), format!("manifold.blocks[{i}].id")))
                .collect(),
        );
        duplicates(
            self.manifold
                .tori
                .iter()
                .enumerate()
                .map(|(i, t)| (t.id.as_str(), format!("manifold.tori[{i}].id")))
                .collect(),
        );
        duplicates(
            self.surface
                .pieces
                .iter()
                .enumerate()
                .map(|(i, p)| (p.id.as_str(), format!("surface.pieces[{i}].id")))
                .collect(),
        );
        duplicates(
            self.surface
                .curves
                .iter()
                .enumerate()
                .map(|(i, c)| (c.id.as_str(), format!("surface.curves[{i}].id")))
                .collect(),
        );

        let blocks: BTreeSet<&str> = self.manifold.blocks.iter().map(|b| b.id.as_str()).collect();
        let tori: BTreeSet<&str> = self.manifold.tori.iter().map(|t| t.id.as_str()).collect();
        let pieces: BTreeSet<&str> = self.surface.pieces.iter().map(|p| p.id.as_str()).collect();
        let mut dangling = |location: String, target: &str, family: &BTreeSet<&str>| {
            if !family.contains(target) {
                issues.push(ParseIssue {
                    kind: ParseErrorKind::DanglingReference,
                    location,
                    message: format!("reference to unknown id {target:?}"),
                });
            }
        };
        for (i, t) in self.manifold.tori.iter().enumerate() {
            dangling(format!("manifold.tori[{i}].block_a"), &t.block_a, &blocks);
            dangling(format!("manifold.tori[{i}].block_b"), &t.block_b, &blocks);
        }
        for (i, p) in self.surface.pieces.iter().enumerate() {
            dangling(format!("surface.pieces[{i}].block"), &p.block, &blocks);
        }
        for (i, c) in self.surface.curves.iter().enumerate() {
            dangling(format!("surface.curves[{i}].piece_a"), &c.piece_a, &pieces);
            dangling(format!("surface.curves[{i}].piece_b"), &c.piece_b, &pieces);
            dangling(format!("surface.curves[{i}].torus"), &c.torus, &tori);
        }
        issues
    }
}

fn default_rational_one() -> Rational {
    Rational::one()
}

/// One crossing as written in a trace config file. Slope lengths and the
/// step default to 1.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrossingSpec {
    #[serde(with = "rational_string")]
    pub xi: Rational,
    #[serde(default = "default_rational_one", with = "rational_string")]
    pub lambda_in: Rational,
    #[serde(default = "default_rational_one", with = "rational_string")]
    pub lambda_out: Rational,
    #[serde(default = "default_rational_one", with = "rational_string")]
    pub step: Rational,
}

/// Trace config file: crossings plus optional scalar overrides.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceConfigFile {
    pub crossings: Vec<CrossingSpec>,
    #[serde(default, with = "opt_rational_string", skip_serializing_if = "Option::is_none")]
    pub l_prime: Option<Rational>,
    #[serde(default, with = "opt_rational_string", skip_serializing_if = "Option::is_none")]
    pub rho: Option<Rational>,
    #[serde(default, with = "opt_rational_string", skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<Rational>,
    #[serde(default, with = "opt_rational_string", skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Rational>,
}

/// Parses a trace config file and resolves defaults: file values win over
/// document defaults, which win over 1. A missing governor is computed as
/// the maximal crossing ratio over both orientations.
pub fn parse_trace_config(
    text: &str,
    defaults: Option<&TraceDefaults>,
) -> Result<TraceConfig, ParseFailure> {
    let file: TraceConfigFile = serde_json::from_str(text).map_err(|e| ParseFailure {
        issues: vec![serde_issue(&e)],
    })?;
    Ok(resolve_trace_config(&file, defaults))
}

/// Applies the default resolution order to a parsed trace config file.
pub fn resolve_trace_config(file: &TraceConfigFile, defaults: Option<&TraceDefaults>) -> TraceConfig {
    let pick = |from_file: &Option<Rational>, from_doc: fn(&TraceDefaults) -> &Option<Rational>| {
        from_file
            .clone()
            .or_else(|| defaults.and_then(|d| from_doc(d).clone()))
    };
    let crossings: Vec<Crossing> = file
        .crossings
        .iter()
        .map(|c| Crossing {
            xi: c.xi.clone(),
            lambda_in: c.lambda_in.clone(),
            lambda_out: c.lambda_out.clone(),
            step: c.step.clone(),
        })
        .collect();
    let computed_governor = crossings
        .iter()
        .flat_map(|c| [c.xi.clone(), c.xi.recip()])
        .max()
        .unwrap_or_else(Rational::one);
    TraceConfig {
        crossings,
        l_prime: pick(&file.l_prime, |d| &d.l_prime).unwrap_or_else(Rational::one),
        rho: pick(&file.rho, |d| &d.rho).unwrap_or_else(Rational::one),
        lambda_cap: pick(&file.lambda, |d| &d.lambda),
        governor: pick(&file.epsilon, |d| &d.epsilon).unwrap_or(computed_governor),
    }
}

/// Convenience wrapper mapping trace config errors onto parse-style
/// issues for uniform CLI reporting.
pub fn trace_config_issue(err: &WitnessError) -> ParseIssue {
    ParseIssue {
        kind: ParseErrorKind::Syntax,
        location: "trace config".into(),
        message: err.to_string(),
    }
}
