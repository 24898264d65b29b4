//! Distortion classification of a clean surface from its combinatorial data.
//!
//! Each almost-fiber component is classified on its own by the decision
//! table below; the surface class is the join of the component classes,
//! and an empty almost-fiber part is linear. The lower and upper bounds of
//! the sandwich (the join and its superadditive closure) coincide on the
//! four classes, so every report pins a single class.
//!
//! Separability is decided per component (trivial spirality); the
//! whole-surface conjunction is reported alongside so either reading of
//! the mixed quadratic/exponential case can be applied downstream.

use crate::growth::GrowthClass;
use crate::model::{almost_fiber, validate, AFComponent, ManifoldGraph, SurfaceGraph, ValidationReport};
use crate::spirality::spirality;

/// Classification of one almost-fiber component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentVerdict {
    pub component: AFComponent,
    pub has_gi: bool,
    pub piece_count: usize,
    /// Trivial spirality, equivalently separability of the component's
    /// subgroup.
    pub separable: bool,
    pub distortion: GrowthClass,
}

/// Whole-surface classification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    /// Component verdicts ordered by smallest piece id.
    pub components: Vec<ComponentVerdict>,
    /// All components separable.
    pub surface_separable: bool,
    /// Join of the component classes; `Linear` when there are none.
    pub overall: GrowthClass,
    pub lower: GrowthClass,
    pub upper: GrowthClass,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error("input graphs are invalid:\n{0}")]
    InvalidInput(ValidationReport),
}

/// Classifies one almost-fiber component:
///
/// | component                                   | distortion         |
/// |---------------------------------------------|--------------------|
/// | geometrically infinite piece, nontrivial    | double exponential |
/// | geometrically infinite piece, trivial       | exponential        |
/// | ≥ 2 horizontal pieces, nontrivial           | exponential        |
/// | ≥ 2 horizontal pieces, trivial              | quadratic          |
/// | single horizontal piece                     | linear             |
///
/// A single geometrically infinite piece falls under the second row: a
/// one-vertex component without loops has trivial spirality.
pub fn classify_component(surface: &SurfaceGraph, component: &AFComponent) -> ComponentVerdict {
    let has_gi = component.contains_geometrically_infinite(surface);
    let piece_count = component.piece_count();
    let separable = spirality(surface, component).trivial;
    let distortion = match (has_gi, piece_count, separable) {
        (true, _, false) => GrowthClass::DoubleExponential,
        (true, _, true) => GrowthClass::Exponential,
        (false, 2.., false) => GrowthClass::Exponential,
        (false, 2.., true) => GrowthClass::Quadratic,
        (false, _, _) => GrowthClass::Linear,
    };
    ComponentVerdict {
        component: component.clone(),
        has_gi,
        piece_count,
        separable,
        distortion,
    }
}

/// Validates the input pair and classifies every almost-fiber component.
pub fn classify_surface(
    manifold: &ManifoldGraph,
    surface: &SurfaceGraph,
) -> Result<ClassificationReport, ClassifyError> {
    let report = validate(manifold, surface);
    if !report.is_valid() {
        return Err(ClassifyError::InvalidInput(report));
    }
    let components: Vec<ComponentVerdict> = almost_fiber(surface)
        .iter()
        .map(|c| classify_component(surface, c))
        .collect();
    let surface_separable = components.iter().all(|v| v.separable);
    let overall = GrowthClass::join_all(components.iter().map(|v| v.distortion));
    Ok(ClassificationReport {
        components,
        surface_separable,
        overall,
        lower: overall,
        upper: overall.superadditive_closure(),
    })
}
