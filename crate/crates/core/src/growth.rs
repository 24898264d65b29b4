//! Symbolic algebra of the four distortion growth classes.
//!
//! Distortion of a surface subgroup in a non-geometric 3-manifold group is
//! always linear, quadratic, exponential or double exponential, so the
//! classifier only ever needs a four-element totally ordered algebra:
//! domination, equivalence, join, and superadditive closure (which fixes
//! each class, letting the lower/upper sandwich collapse to one class).
//!
//! Numeric representatives (`n`, `n²`, `eⁿ`, `e^{eⁿ}`) back the symbolic
//! claims with desk-scale sanity checks; values beyond the `f64` range are
//! handled in log-domain tower form.

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

/// One of the four possible distortion classes, totally ordered by
/// domination: `Linear ≺ Quadratic ≺ Exponential ≺ DoubleExponential`.
///
/// The zero function (empty almost-fiber part) is represented as `Linear`;
/// there is no fifth tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GrowthClass {
    Linear,
    Quadratic,
    Exponential,
    DoubleExponential,
}

impl GrowthClass {
    pub const ALL: [GrowthClass; 4] = [
        GrowthClass::Linear,
        GrowthClass::Quadratic,
        GrowthClass::Exponential,
        GrowthClass::DoubleExponential,
    ];

    /// True iff `self ⪯ other`: some constants `(A, B, C, D, E)` give
    /// `f(n) ≤ A·g(Bn + C) + Dn + E` for representatives `f` of `self`
    /// and `g` of `other`. On these four classes this is the total order.
    pub fn dominated_by(self, other: GrowthClass) -> bool {
        self <= other
    }

    /// Mutual domination; on this class set it coincides with equality.
    pub fn equivalent(self, other: GrowthClass) -> bool {
        self == other
    }

    /// Least upper bound in the domination order.
    pub fn join(self, other: GrowthClass) -> GrowthClass {
        self.max(other)
    }

    /// Join over any number of classes. The empty join is `Linear`,
    /// the convention for an empty almost-fiber part.
    pub fn join_all<I: IntoIterator<Item = GrowthClass>>(classes: I) -> GrowthClass {
        classes
            .into_iter()
            .fold(GrowthClass::Linear, GrowthClass::join)
    }

    /// Superadditive closure. Each of the four classes has a superadditive
    /// representative, so the closure is equivalent to the class itself;
    /// this is what makes the lower/upper distortion sandwich collapse.
    pub fn superadditive_closure(self) -> GrowthClass {
        self
    }

    /// Numeric representative at `n ≥ 1`: `n`, `n²`, `eⁿ` or `e^{eⁿ}`.
    ///
    /// Exponential towers are returned unevaluated as a [`Magnitude`], so
    /// the double-exponential representative is exact in structure even
    /// when the value would overflow `f64`.
    pub fn representative(self, n: u32) -> Magnitude {
        let x = f64::from(n);
        match self {
            GrowthClass::Linear => Magnitude::plain(x),
            GrowthClass::Quadratic => Magnitude::plain(x * x),
            GrowthClass::Exponential => Magnitude::tower(1, x),
            GrowthClass::DoubleExponential => Magnitude::tower(2, x),
        }
    }

    /// Constants `(A, B, C, D, E)` witnessing `self ⪯ other`, or `None`
    /// when domination fails. For these representatives the plain identity
    /// constants suffice on every dominated pair.
    pub fn domination_constants(self, other: GrowthClass) -> Option<DominationConstants> {
        if self.dominated_by(other) {
            Some(DominationConstants {
                a: 1,
                b: 1,
                c: 0,
                d: 0,
                e: 0,
            })
        } else {
            None
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            GrowthClass::Linear => "linear",
            GrowthClass::Quadratic => "quadratic",
            GrowthClass::Exponential => "exponential",
            GrowthClass::DoubleExponential => "double_exponential",
        }
    }
}

impl fmt::Display for GrowthClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Constant tuple realizing a domination inequality
/// `f(n) ≤ a·g(b·n + c) + d·n + e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DominationConstants {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
    pub e: u32,
}

impl DominationConstants {
    /// Evaluates the inequality at one point, in log-domain where needed.
    pub fn holds_at(&self, f: GrowthClass, g: GrowthClass, n: u32) -> bool {
        let lhs = f.representative(n);
        let rhs = g
            .representative(self.b * n + self.c)
            .affine(f64::from(self.a), f64::from(self.d) * f64::from(n) + f64::from(self.e));
        lhs <= rhs
    }
}

/// Threshold above which `exp` overflows `f64`.
const MAX_EXP_INPUT: f64 = 709.782712893384;

/// A positive magnitude in exponential-tower form: `height` applications
/// of `exp` to `value`. `Magnitude { height: 0, value: x }` is just `x`.
///
/// Comparison first lowers each tower as far as `f64` allows, then compares
/// `(height, value)` lexicographically; a tower that cannot be lowered
/// exceeds `f64::MAX`, so greater height always means a greater value.
#[derive(Debug, Clone, Copy)]
pub struct Magnitude {
    height: u8,
    value: f64,
}

impl Magnitude {
    pub fn plain(value: f64) -> Magnitude {
        Magnitude { height: 0, value }
    }

    pub fn tower(height: u8, value: f64) -> Magnitude {
        Magnitude { height, value }
    }

    /// The `(k, x)` pair meaning `exp` applied `k` times to `x`, as stored.
    pub fn as_tower(self) -> (u8, f64) {
        (self.height, self.value)
    }

    /// Plain `f64` value when the magnitude fits the native range.
    pub fn to_f64(self) -> Option<f64> {
        let n = self.normalized();
        (n.height == 0).then_some(n.value)
    }

    fn normalized(mut self) -> Magnitude {
        while self.height > 0 && self.value <= MAX_EXP_INPUT {
            self.value = self.value.exp();
            self.height -= 1;
        }
        self
    }

    /// Approximately `a·self + b` (`a ≥ 1`, `b ≥ 0`), staying in log-domain
    /// when the magnitude exceeds the native range. At height ≥ 2 the affine
    /// correction is below one `f64` ulp of the inner exponent and is
    /// dropped.
    pub fn affine(self, a: f64, b: f64) -> Magnitude {
        let m = self.normalized();
        match m.height {
            0 => Magnitude::plain(a * m.value + b),
            1 => {
                // ln(a·e^v + b) = v + ln(a + b·e^(-v)); v > 709 so the
                // second summand is ln(a) up to f64 rounding.
                let v = m.value;
                Magnitude::tower(1, v + (a + b * (-v).exp()).ln())
            }
            _ => m,
        }
    }
}

impl PartialEq for Magnitude {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_total(other) == Ordering::Equal
    }
}

impl PartialOrd for Magnitude {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_total(other))
    }
}

impl Magnitude {
    fn cmp_total(&self, other: &Self) -> Ordering {
        let a = self.normalized();
        let b = other.normalized();
        a.height
            .cmp(&b.height)
            .then(a.value.partial_cmp(&b.value).unwrap_or(Ordering::Equal))
    }
}

impl fmt::Display for Magnitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.height {
            0 => write!(f, "{}", self.value),
            k => write!(f, "exp^{k}({})", self.value),
        }
    }
}
