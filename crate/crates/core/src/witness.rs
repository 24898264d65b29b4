//! Witness sequences and crossing-recurrence traces.
//!
//! `build_witness` constructs the integer sequence driving the
//! double-exponential lower bound: given the periodic ratios `ξ_j` read off
//! a directed cycle, it produces the minimal integers with `t_j/ξ_j ∈ ℕ`
//! and `0 ≤ t_j/ξ_j − t_{j−1} ≤ A`, together with explicit constants `A`
//! and `D` making the growth certificates checkable. `verify_witness`
//! re-checks every certificate with exact arithmetic.
//!
//! `trace_bounds` iterates the block-crossing recurrences at equality (the
//! worst-case envelope): crossing a block scales the previous bound and
//! adds `L′·step`, crossing a JSJ plane multiplies by `ξ_j` and the slope
//! length ratio. It emits the geometric-series bound driven by the
//! governor `ε`, the uniform bound `Λ·L′·n` available under trivial
//! spirality, and a log-domain summary of `Σ e^{a_j+b_j}`.

use crate::rational::{ln_bigint, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WitnessError {
    #[error("period must contain at least one ratio")]
    EmptyPeriod,
    #[error("period ratio {0} is not positive")]
    NonPositiveRatio(String),
    #[error("inconsistent trace config: {0}")]
    InconsistentConfig(String),
}

/// Periodic sequence of positive ratios `ξ_1..ξ_m`, extended by
/// `ξ_{j+m} = ξ_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XiPeriod {
    ratios: Vec<Rational>,
}

impl XiPeriod {
    pub fn new(ratios: Vec<Rational>) -> Result<XiPeriod, WitnessError> {
        if ratios.is_empty() {
            return Err(WitnessError::EmptyPeriod);
        }
        if let Some(bad) = ratios.iter().find(|r| !r.is_positive()) {
            return Err(WitnessError::NonPositiveRatio(bad.to_string()));
        }
        Ok(XiPeriod { ratios })
    }

    pub fn len(&self) -> usize {
        self.ratios.len()
    }

    pub fn is_empty(&self) -> bool {
        false // constructor guarantees at least one ratio
    }

    pub fn ratios(&self) -> &[Rational] {
        &self.ratios
    }

    /// `ξ_j` for `j ≥ 1`, periodically extended.
    pub fn ratio_at(&self, j: usize) -> &Rational {
        assert!(j >= 1, "ratios are indexed from 1");
        &self.ratios[(j - 1) % self.ratios.len()]
    }

    /// Weight of one full period, `w = ∏ ξ_j`.
    pub fn weight(&self) -> Rational {
        self.ratios.iter().product()
    }
}

/// A built witness sequence with the constants of its certificates.
#[derive(Debug, Clone, PartialEq)]
pub struct WitnessSequence {
    pub period: XiPeriod,
    pub mu: Rational,
    /// `t_0..t_n`, all nonnegative integers.
    pub t: Vec<BigInt>,
    /// Step bound: `0 ≤ t_j/ξ_j − t_{j−1} ≤ A`, with `A = max_j q_j`.
    pub a_bound: BigInt,
    /// Log-growth bound: `ln t_n ≤ D·n + D` for every produced index.
    pub d_bound: f64,
    /// Weight of one period.
    pub w: Rational,
}

/// Builds the minimal witness sequence for the given period.
///
/// `t_0 = ⌈μ⌉`, and for `j ≥ 1` with `ξ_j = p_j/q_j` in lowest terms,
/// `t_j = p_j·⌈t_{j−1}/q_j⌉`: the least multiple of `p_j` whose quotient
/// `t_j/ξ_j` is an integer at least `t_{j−1}`. Hence `A = max_j q_j`.
///
/// `D` is computed, not assumed: with `ε = max_j ξ_j`, the recurrence gives
/// `t_n ≤ εⁿ(t_0 + Aε/(ε−1))` when `ε > 1` and `t_n ≤ t_0 + nA` otherwise,
/// so `D = max(ln ε, ln(t_0 + Aε/(ε−1)), 1)` resp. `ln(t_0 + A) + 1`.
pub fn build_witness(period: &XiPeriod, mu: &Rational, steps: usize) -> WitnessSequence {
    assert!(mu.is_positive(), "mu must be positive");
    let t0 = mu.ceil().to_integer();
    let mut t = Vec::with_capacity(steps + 1);
    t.push(t0.clone());
    for j in 1..=steps {
        let xi = period.ratio_at(j);
        let (p, q) = (xi.numer(), xi.denom());
        let prev = &t[j - 1];
        t.push(p * prev.div_ceil(q));
    }
    let a_bound = period
        .ratios()
        .iter()
        .map(|r| r.denom().clone())
        .max()
        .expect("period is nonempty");
    let epsilon = period
        .ratios()
        .iter()
        .max()
        .expect("period is nonempty")
        .clone();
    let one = Rational::one();
    let t0_rat = Rational::from_integer(t0);
    let a_rat = Rational::from_integer(a_bound.clone());
    let d_bound = if epsilon > one {
        let offset = &t0_rat + &a_rat * &epsilon / (&epsilon - &one);
        let ln_eps = ln_rational(&epsilon);
        ln_eps.max(ln_rational(&offset)).max(1.0)
    } else {
        ln_rational(&(&t0_rat + &a_rat)) + 1.0
    };
    WitnessSequence {
        period: period.clone(),
        mu: mu.clone(),
        t,
        a_bound,
        d_bound,
        w: period.weight(),
    }
}

fn ln_rational(r: &Rational) -> f64 {
    ln_bigint(r.numer()) - ln_bigint(r.denom())
}

/// Outcome of the four exact certificate checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WitnessVerification {
    /// Every `t_j/ξ_j` is an integer (`j ≥ 1`).
    pub quotients_integral: bool,
    /// `0 ≤ t_j/ξ_j − t_{j−1} ≤ A` for every `j ≥ 1`.
    pub steps_in_range: bool,
    /// `t_{jm} ≥ t_0·wʲ` for every full period.
    pub lower_growth: bool,
    /// `ln t_n ≤ D·n + D` for every produced index.
    pub log_upper_bound: bool,
}

impl WitnessVerification {
    pub fn all_passed(&self) -> bool {
        self.quotients_integral && self.steps_in_range && self.lower_growth && self.log_upper_bound
    }
}

/// Re-checks every certificate of a witness sequence with exact
/// arithmetic (the log bound is checked in `f64` on exact logarithms).
/// Failures are report entries, never errors.
pub fn verify_witness(ws: &WitnessSequence) -> WitnessVerification {
    let mut quotients_integral = true;
    let mut steps_in_range = true;
    let a_rat = Rational::from_integer(ws.a_bound.clone());
    for j in 1..ws.t.len() {
        let xi = ws.period.ratio_at(j);
        let (p, q) = (xi.numer(), xi.denom());
        if !((&ws.t[j] * q) % p).is_zero() {
            quotients_integral = false;
        }
        let quotient = Rational::new(&ws.t[j] * q, p.clone());
        let diff = quotient - Rational::from_integer(ws.t[j - 1].clone());
        if diff < Rational::zero() || diff > a_rat {
            steps_in_range = false;
        }
    }

    let mut lower_growth = true;
    let m = ws.period.len();
    let t0 = Rational::from_integer(ws.t[0].clone());
    let mut w_pow = Rational::one();
    let mut j = m;
    while j < ws.t.len() {
        w_pow *= &ws.w;
        if Rational::from_integer(ws.t[j].clone()) < &t0 * &w_pow {
            lower_growth = false;
        }
        j += m;
    }

    let mut log_upper_bound = true;
    for (n, tn) in ws.t.iter().enumerate() {
        if tn.is_positive() {
            if ln_bigint(tn) > ws.d_bound * n as f64 + ws.d_bound {
                log_upper_bound = false;
            }
        } else {
            // nonpositive entries are already a certificate failure
            log_upper_bound = false;
        }
    }

    WitnessVerification {
        quotients_integral,
        steps_in_range,
        lower_growth,
        log_upper_bound,
    }
}

/// One block-and-plane crossing of the trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crossing {
    /// Ratio `ξ_j` carried by the plane crossing.
    pub xi: Rational,
    /// Lift length of the incoming degeneracy slope (`λ←_j`).
    pub lambda_in: Rational,
    /// Lift length of the outgoing degeneracy slope (`λ→_j`).
    pub lambda_out: Rational,
    /// Distance travelled inside the block, `d(y_j, y_{j−1})`.
    pub step: Rational,
}

/// Configuration of the crossing-recurrence tracer. The geometric
/// constants are user configuration; any positive values exercise the
/// algebra, with 1 the conventional default.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceConfig {
    pub crossings: Vec<Crossing>,
    /// Block-crossing constant `L′`.
    pub l_prime: Rational,
    /// Lower bound `ρ` on the distance between distinct JSJ planes.
    pub rho: Rational,
    /// Uniform partial-product bound `Λ`; required for the
    /// trivial-spirality claim.
    pub lambda_cap: Option<Rational>,
    /// Governor `ε`: must dominate every crossing ratio in both
    /// orientations.
    pub governor: Rational,
}

impl TraceConfig {
    /// Total block distance `n = Σ steps`.
    pub fn total_distance(&self) -> Rational {
        self.crossings.iter().map(|c| c.step.clone()).sum()
    }

    pub fn validate(&self) -> Result<(), WitnessError> {
        let positive = |name: &str, r: &Rational| {
            if r.is_positive() {
                Ok(())
            } else {
                Err(WitnessError::InconsistentConfig(format!(
                    "{name} must be positive, got {r}"
                )))
            }
        };
        positive("L'", &self.l_prime)?;
        positive("rho", &self.rho)?;
        positive("epsilon", &self.governor)?;
        if let Some(l) = &self.lambda_cap {
            positive("Lambda", l)?;
        }
        for (i, c) in self.crossings.iter().enumerate() {
            positive(&format!("crossing {} xi", i + 1), &c.xi)?;
            positive(&format!("crossing {} lambda_in", i + 1), &c.lambda_in)?;
            positive(&format!("crossing {} lambda_out", i + 1), &c.lambda_out)?;
            positive(&format!("crossing {} step", i + 1), &c.step)?;
            for r in [&c.xi, &c.xi.recip()] {
                if r > &self.governor {
                    return Err(WitnessError::InconsistentConfig(format!(
                        "epsilon {} is smaller than crossing ratio {}",
                        self.governor, r
                    )));
                }
            }
        }
        let k = Rational::from_integer(BigInt::from(self.crossings.len()));
        if &k * &self.rho > self.total_distance() {
            return Err(WitnessError::InconsistentConfig(format!(
                "{} crossings cannot fit in total distance {} with plane separation rho = {}",
                self.crossings.len(),
                self.total_distance(),
                self.rho
            )));
        }
        Ok(())
    }
}

/// Exact trace of the crossing recurrences, plus the claimed envelopes.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceReport {
    /// `a_j`: bound on `d(y_j, x_j)` before crossing plane `j`.
    pub a: Vec<Rational>,
    /// `b_j`: bound on `d(y_j, z_j)` after crossing plane `j`.
    pub b: Vec<Rational>,
    /// Geometric-series envelope `L′·n·Σ_{i≤j} εⁱ`.
    pub claim2: Vec<Rational>,
    /// Uniform envelope `Λ·L′·n`, when `Λ` was supplied.
    pub claim3: Option<Rational>,
    /// `ln Σ_j e^{a_j+b_j}`, evaluated stably in log-domain;
    /// `-∞` for an empty trace.
    pub log_sum: f64,
}

impl TraceReport {
    /// `b_j ≤ claim2_j` for every crossing.
    pub fn claim2_holds(&self) -> bool {
        self.b.iter().zip(&self.claim2).all(|(b, c)| b <= c)
    }

    /// `b_j ≤ Λ·L′·n` for every crossing, when `Λ` was supplied.
    pub fn claim3_holds(&self) -> Option<bool> {
        self.claim3
            .as_ref()
            .map(|cap| self.b.iter().all(|b| b <= cap))
    }
}

/// Iterates the crossing recurrences at equality:
/// `a_j = (λ←_j/λ→_{j−1})·b_{j−1} + L′·step_j` (first term absent at
/// `j = 1`) and `b_j = ξ_j·(λ→_j/λ←_j)·a_j`.
pub fn trace_bounds(cfg: &TraceConfig) -> Result<TraceReport, WitnessError> {
    cfg.validate()?;
    let n = cfg.total_distance();
    let mut a = Vec::with_capacity(cfg.crossings.len());
    let mut b: Vec<Rational> = Vec::with_capacity(cfg.crossings.len());
    let mut claim2 = Vec::with_capacity(cfg.crossings.len());
    let mut eps_sum = Rational::zero();
    let mut eps_pow = Rational::one();
    for (i, crossing) in cfg.crossings.iter().enumerate() {
        let carried = match b.last() {
            None => Rational::zero(),
            Some(prev) => &crossing.lambda_in / &cfg.crossings[i - 1].lambda_out * prev,
        };
        let a_j = carried + &cfg.l_prime * &crossing.step;
        let b_j = &crossing.xi * (&crossing.lambda_out / &crossing.lambda_in) * &a_j;
        eps_pow *= &cfg.governor;
        eps_sum += &eps_pow;
        claim2.push(&cfg.l_prime * &n * &eps_sum);
        a.push(a_j);
        b.push(b_j);
    }
    let claim3 = cfg
        .lambda_cap
        .as_ref()
        .map(|cap| cap * &cfg.l_prime * &n);
    let exponents: Vec<f64> = a
        .iter()
        .zip(&b)
        .map(|(a_j, b_j)| (a_j + b_j).to_f64().unwrap_or(f64::INFINITY))
        .collect();
    Ok(TraceReport {
        a,
        b,
        claim2,
        claim3,
        log_sum: log_sum_exp(&exponents),
    })
}

/// `ln Σ eˣ` over the slice, stable against overflow. Empty input gives
/// `-∞`, the additive identity in log-domain.
pub fn log_sum_exp(xs: &[f64]) -> f64 {
    let max = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    if max.is_infinite() {
        return max;
    }
    max + xs.iter().map(|x| (x - max).exp()).sum::<f64>().ln()
}
