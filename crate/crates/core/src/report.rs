//! Full analysis of a document and deterministic rendering.
//!
//! `analyze` runs validation, almost-fiber extraction, per-component
//! spirality (governor, Λ, witness cycles) and the surface classification,
//! and packs everything into one serializable report. Rendering is a pure
//! function of the document bytes: text output carries a human-readable
//! section followed by a machine-readable key-value block.

use crate::classifier::{classify_component, ClassificationReport};
use crate::document::Document;
use crate::growth::GrowthClass;
use crate::model::{almost_fiber, validate};
use crate::spirality::{governor, lambda_bound, spirality, supercritical_cycle_through_gi};
use serde::Serialize;
use std::fmt::Write as _;

#[derive(Debug, Clone, Serialize)]
pub struct ViolationSummary {
    pub code: String,
    pub id: String,
    pub message: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct BasisCycleSummary {
    pub cycle: String,
    pub weight: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComponentSummary {
    pub pieces: Vec<String>,
    pub curves: Vec<String>,
    pub has_geometrically_infinite: bool,
    pub piece_count: usize,
    pub separable: bool,
    pub distortion: GrowthClass,
    pub governor: String,
    /// Partial-product bound Λ; present exactly when spirality is trivial.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<String>,
    pub basis: Vec<BasisCycleSummary>,
    /// A weight > 1 closed walk through a geometrically infinite piece,
    /// when one exists.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub supercritical_cycle: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassificationSummary {
    pub components: Vec<ComponentSummary>,
    pub surface_separable: bool,
    pub overall: GrowthClass,
    pub lower: GrowthClass,
    pub upper: GrowthClass,
}

/// Everything the `report` command emits.
#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub valid: bool,
    pub violations: Vec<ViolationSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<ClassificationSummary>,
}

/// Validates and, when valid, classifies the document's surface.
pub fn analyze(doc: &Document) -> AnalysisReport {
    let validation = validate(&doc.manifold, &doc.surface);
    if !validation.is_valid() {
        return AnalysisReport {
            valid: false,
            violations: validation
                .violations
                .iter()
                .map(|v| ViolationSummary {
                    code: v.code().to_string(),
                    id: v.offender().to_string(),
                    message: v.to_string(),
                })
                .collect(),
            classification: None,
        };
    }

    let mut components = Vec::new();
    let mut verdicts = Vec::new();
    for component in almost_fiber(&doc.surface) {
        let verdict = classify_component(&doc.surface, &component);
        let hom = spirality(&doc.surface, &component);
        let lambda = lambda_bound(&doc.surface, &component)
            .ok()
            .map(|l| l.to_string());
        let supercritical = supercritical_cycle_through_gi(&doc.surface, &component)
            .ok()
            .map(|c| c.to_string());
        components.push(ComponentSummary {
            pieces: component.pieces.iter().cloned().collect(),
            curves: component.curves.iter().cloned().collect(),
            has_geometrically_infinite: verdict.has_gi,
            piece_count: verdict.piece_count,
            separable: verdict.separable,
            distortion: verdict.distortion,
            governor: governor(&doc.surface, &component).to_string(),
            lambda,
            basis: hom
                .basis
                .iter()
                .map(|(cycle, weight)| BasisCycleSummary {
                    cycle: cycle.to_string(),
                    weight: weight.to_string(),
                })
                .collect(),
            supercritical_cycle: supercritical,
        });
        verdicts.push(verdict);
    }
    let surface_separable = verdicts.iter().all(|v| v.separable);
    let overall = GrowthClass::join_all(verdicts.iter().map(|v| v.distortion));
    let report = ClassificationReport {
        components: verdicts,
        surface_separable,
        overall,
        lower: overall,
        upper: overall.superadditive_closure(),
    };
    AnalysisReport {
        valid: true,
        violations: Vec::new(),
        classification: Some(ClassificationSummary {
            components,
            surface_separable: report.surface_separable,
            overall: report.overall,
            lower: report.lower,
            upper: report.upper,
        }),
    }
}

/// Human-readable rendering followed by a `[values]` key-value block.
pub fn render_text(report: &AnalysisReport) -> String {
    let mut out = String::new();
    if !report.valid {
        out.push_str("validation: failed\n");
        for v in &report.violations {
            let _ = writeln!(out, "  {} {}: {}", v.code, v.id, v.message);
        }
        out.push_str("\n[values]\n");
        out.push_str("valid false\n");
        let _ = writeln!(out, "violations {}", report.violations.len());
        return out;
    }
    let c = report.classification.as_ref().expect("valid report");
    out.push_str("validation: ok\n");
    let _ = writeln!(out, "almost-fiber components: {}", c.components.len());
    for (i, comp) in c.components.iter().enumerate() {
        let _ = writeln!(out, "\ncomponent {}", i + 1);
        let _ = writeln!(out, "  pieces: {}", comp.pieces.join(", "));
        if comp.curves.is_empty() {
            out.push_str("  curves: none\n");
        } else {
            let _ = writeln!(out, "  curves: {}", comp.curves.join(", "));
        }
        let _ = writeln!(
            out,
            "  geometrically infinite piece: {}",
            if comp.has_geometrically_infinite { "yes" } else { "no" }
        );
        let _ = writeln!(
            out,
            "  separable: {} (spirality {})",
            if comp.separable { "yes" } else { "no" },
            if comp.separable { "trivial" } else { "nontrivial" }
        );
        let _ = writeln!(out, "  distortion: {}", comp.distortion);
        let _ = writeln!(out, "  governor: {}", comp.governor);
        if let Some(lambda) = &comp.lambda {
            let _ = writeln!(out, "  lambda: {lambda}");
        }
        for basis in &comp.basis {
            let _ = writeln!(out, "  basis cycle: {}  weight {}", basis.cycle, basis.weight);
        }
        if let Some(cycle) = &comp.supercritical_cycle {
            let _ = writeln!(out, "  supercritical cycle: {cycle}");
        }
    }
    out.push_str("\nsummary\n");
    let _ = writeln!(
        out,
        "  surface separable: {}",
        if c.surface_separable { "yes" } else { "no" }
    );
    let _ = writeln!(out, "  distortion: {}", c.overall);

    out.push_str("\n[values]\n");
    out.push_str("valid true\n");
    let _ = writeln!(out, "components {}", c.components.len());
    let _ = writeln!(out, "surface_separable {}", c.surface_separable);
    let _ = writeln!(out, "overall {}", c.overall);
    let _ = writeln!(out, "lower {}", c.lower);
    let _ = writeln!(out, "upper {}", c.upper);
    for (i, comp) in c.components.iter().enumerate() {
        let key = format!("component.{}", i + 1);
        let _ = writeln!(out, "{key}.pieces {}", comp.pieces.join(","));
        let _ = writeln!(out, "{key}.separable {}", comp.separable);
        let _ = writeln!(out, "{key}.distortion {}", comp.distortion);
        let _ = writeln!(out, "{key}.governor {}", comp.governor);
        if let Some(lambda) = &comp.lambda {
            let _ = writeln!(out, "{key}.lambda {lambda}");
        }
    }
    out
}

/// Pretty-printed JSON rendering with a trailing newline.
pub fn render_json(report: &AnalysisReport) -> String {
    let mut out = serde_json::to_string_pretty(report).expect("report serializes");
    out.push('\n');
    out
}
