//! Constructors for the states and POVM elements used throughout the tests,
//! each bundling a truncated matrix with optional closed-form handles
//! (Husimi Q, counting statistics, P-function classification) used for
//! cross-validation and report labeling.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::fock::{
    coherent_vector, FockOperator, FockSpace, FockVector, OperatorKind, PhasePoint, TOL_TRUNC,
};
use crate::numerics::{ln_factorial, poisson_pmf};

/// State and measurement families named in the catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Family {
    Coherent,
    NumberState,
    Thermal,
    PhotonAddedThermal,
    CatEven,
    CatOdd,
    SqueezedVacuum,
    Mixture,
    VacuumNumberMixture,
    ThermalNumberMixture,
    PovmNumber,
    PovmProjector,
    PovmCoherent,
    ContaminatedOnePhoton,
}

/// Closed-form Husimi Q functions, with their known maxima.
#[derive(Debug, Clone)]
pub enum QClosedForm {
    /// Q of a thermal state: exp(-|a|^2/(n+1)) / (pi (n+1)).
    Thermal { n_tc: f64 },
    /// Q of the squeezed vacuum parameterized by its X standard deviation.
    Squeezed { delta_x: f64 },
    /// scale * e^{-|a|^2} |a|^{2n} / (pi n!): number projector scaled by `scale`.
    NumberProjector { n: usize, scale: f64 },
    /// scale * e^{-|b - a|^2} / pi: coherent projector scaled by `scale`.
    CoherentProjector { alpha: PhasePoint, scale: f64 },
}

impl QClosedForm {
    pub fn eval(&self, point: PhasePoint) -> f64 {
        use std::f64::consts::PI;
        match self {
            QClosedForm::Thermal { n_tc } => {
                (-point.modulus_sq() / (n_tc + 1.0)).exp() / (PI * (n_tc + 1.0))
            }
            QClosedForm::Squeezed { delta_x } => {
                let dx2 = 4.0 * delta_x * delta_x;
                let denom = 1.0 + dx2;
                let (x, y) = (point.re, point.im);
                4.0 * delta_x / (PI * denom) * (-(2.0 * x * x + 2.0 * dx2 * y * y) / denom).exp()
            }
            QClosedForm::NumberProjector { n, scale } => {
                let s = point.modulus_sq();
                if s == 0.0 {
                    return if *n == 0 { scale / PI } else { 0.0 };
                }
                let ln_q = -s + *n as f64 * s.ln() - ln_factorial(*n as u64);
                scale * ln_q.exp() / PI
            }
            QClosedForm::CoherentProjector { alpha, scale } => {
                let d2 = (point.re - alpha.re).powi(2) + (point.im - alpha.im).powi(2);
                scale * (-d2).exp() / PI
            }
        }
    }

    /// Known global maximum (value, argmax).
    pub fn max(&self) -> (f64, PhasePoint) {
        use std::f64::consts::PI;
        match self {
            QClosedForm::Thermal { n_tc } => (1.0 / (PI * (n_tc + 1.0)), PhasePoint::origin()),
            QClosedForm::Squeezed { delta_x } => {
                let dx2 = 4.0 * delta_x * delta_x;
                (4.0 * delta_x / (PI * (1.0 + dx2)), PhasePoint::origin())
            }
            QClosedForm::NumberProjector { n, scale } => {
                let nf = *n as f64;
                let ln_max = if *n == 0 {
                    0.0
                } else {
                    -nf + nf * nf.ln() - ln_factorial(*n as u64)
                };
                (scale * ln_max.exp() / PI, PhasePoint::new(nf.sqrt(), 0.0))
            }
            QClosedForm::CoherentProjector { alpha, scale } => (scale / PI, *alpha),
        }
    }

    /// Closed-form marginal tilde-Q(x) = int Q(x, y) dy, where available.
    pub fn marginal(&self) -> Option<MarginalGaussian> {
        use std::f64::consts::PI;
        match self {
            QClosedForm::Thermal { n_tc } => Some(MarginalGaussian {
                peak: 1.0 / (PI * (n_tc + 1.0)).sqrt(),
                center: 0.0,
                width_sq: n_tc + 1.0,
            }),
            QClosedForm::Squeezed { delta_x } => {
                let denom = 1.0 + 4.0 * delta_x * delta_x;
                Some(MarginalGaussian {
                    peak: (2.0 / (PI * denom)).sqrt(),
                    center: 0.0,
                    width_sq: denom / 2.0,
                })
            }
            QClosedForm::CoherentProjector { alpha, scale } => Some(MarginalGaussian {
                peak: scale / PI.sqrt(),
                center: alpha.re,
                width_sq: 1.0,
            }),
            QClosedForm::NumberProjector { .. } => None,
        }
    }
}

/// A Gaussian marginal peak * exp(-(x - center)^2 / width_sq).
#[derive(Debug, Clone, Copy)]
pub struct MarginalGaussian {
    pub peak: f64,
    pub center: f64,
    pub width_sq: f64,
}

impl MarginalGaussian {
    pub fn eval(&self, x: f64) -> f64 {
        self.peak * (-(x - self.center).powi(2) / self.width_sq).exp()
    }
}

/// Closed-form photon-number distributions.
#[derive(Debug, Clone)]
pub enum NumberStatsForm {
    Poisson { mean: f64 },
    NumberState { n: usize },
    Thermal { n_tc: f64 },
    PhotonAddedThermal { n_tc: f64 },
    EvenCat { alpha_sq: f64 },
    VacuumNumberMixture { p: f64, n: usize },
    ThermalNumberMixture { p: f64, n_tc: f64, n_0: usize },
    Mixture(Vec<(f64, NumberStatsForm)>),
}

impl NumberStatsForm {
    pub fn pmf(&self, n: usize) -> f64 {
        match self {
            NumberStatsForm::Poisson { mean } => poisson_pmf(n as u64, *mean),
            NumberStatsForm::NumberState { n: n0 } => {
                if n == *n0 {
                    1.0
                } else {
                    0.0
                }
            }
            NumberStatsForm::Thermal { n_tc } => {
                let xi = n_tc / (n_tc + 1.0);
                (1.0 - xi) * xi.powi(n as i32)
            }
            NumberStatsForm::PhotonAddedThermal { n_tc } => {
                if n == 0 {
                    return 0.0;
                }
                let xi = n_tc / (n_tc + 1.0);
                (1.0 - xi).powi(2) * xi.powi(n as i32 - 1) * n as f64
            }
            NumberStatsForm::EvenCat { alpha_sq } => {
                if n % 2 == 1 {
                    return 0.0;
                }
                if *alpha_sq == 0.0 {
                    return if n == 0 { 1.0 } else { 0.0 };
                }
                let ln_p =
                    n as f64 * alpha_sq.ln() - ln_factorial(n as u64) - alpha_sq.cosh().ln();
                ln_p.exp()
            }
            NumberStatsForm::VacuumNumberMixture { p, n: n0 } => {
                let mut value = 0.0;
                if n == 0 {
                    value += 1.0 - p;
                }
                if n == *n0 {
                    value += p;
                }
                value
            }
            NumberStatsForm::ThermalNumberMixture { p, n_tc, n_0 } => {
                let thermal = NumberStatsForm::Thermal { n_tc: *n_tc }.pmf(n);
                let spike = if n == *n_0 { 1.0 } else { 0.0 };
                p * thermal + (1.0 - p) * spike
            }
            NumberStatsForm::Mixture(parts) => {
                parts.iter().map(|(w, form)| w * form.pmf(n)).sum()
            }
        }
    }
}

/// Closed-form quadrature densities (theta = 0).
#[derive(Debug, Clone)]
pub enum QuadratureStatsForm {
    /// Gaussian with mean `center` and standard deviation `delta_x`.
    Gaussian { center: f64, delta_x: f64 },
    /// Even cat with purely imaginary amplitude: modulated Gaussian.
    EvenCatImaginary { alpha_abs: f64 },
}

impl QuadratureStatsForm {
    pub fn density(&self, x: f64) -> f64 {
        match self {
            QuadratureStatsForm::Gaussian { center, delta_x } => {
                let z = (x - center) / delta_x;
                (-0.5 * z * z).exp() / ((2.0 * std::f64::consts::PI).sqrt() * delta_x)
            }
            QuadratureStatsForm::EvenCatImaginary { alpha_abs } => {
                let s = alpha_abs * alpha_abs;
                let n_plus_sq = s.exp() / (4.0 * s.cosh());
                4.0 * n_plus_sq
                    * (2.0 / std::f64::consts::PI).sqrt()
                    * (2.0 * alpha_abs * x).cos().powi(2)
                    * (-2.0 * x * x).exp()
            }
        }
    }

    /// The Gaussian parameters (center, delta_x), if the density is Gaussian.
    pub fn as_gaussian(&self) -> Option<(f64, f64)> {
        match self {
            QuadratureStatsForm::Gaussian { center, delta_x } => Some((*center, *delta_x)),
            QuadratureStatsForm::EvenCatImaginary { .. } => None,
        }
    }
}

/// Closed-form P representatives for regular (function-valued) cases.
#[derive(Debug, Clone)]
pub enum PClosedForm {
    Thermal { n_tc: f64 },
    PhotonAddedThermal { n_tc: f64 },
    Mixture(Vec<(f64, PClosedForm)>),
}

impl PClosedForm {
    pub fn eval(&self, point: PhasePoint) -> f64 {
        use std::f64::consts::PI;
        let s = point.modulus_sq();
        match self {
            PClosedForm::Thermal { n_tc } => (-s / n_tc).exp() / (PI * n_tc),
            PClosedForm::PhotonAddedThermal { n_tc } => {
                ((n_tc + 1.0) * s - n_tc) * (-s / n_tc).exp() / (PI * n_tc.powi(3))
            }
            PClosedForm::Mixture(parts) => parts.iter().map(|(w, f)| w * f.eval(point)).sum(),
        }
    }
}

/// Symbolic classification of the P representative.
#[derive(Debug, Clone)]
pub enum PClassification {
    /// Ordinary nonnegative function: classical.
    RegularNonnegative(PClosedForm),
    /// Ordinary function taking negative values: nonclassical.
    RegularNegative(PClosedForm),
    /// No function-valued P exists (delta measures and worse).
    Singular,
}

impl PClassification {
    pub fn tag(&self) -> &'static str {
        match self {
            PClassification::RegularNonnegative(_) => "regular_nonnegative",
            PClassification::RegularNegative(_) => "regular_negative",
            PClassification::Singular => "singular",
        }
    }

    pub fn closed_form(&self) -> Option<&PClosedForm> {
        match self {
            PClassification::RegularNonnegative(f) | PClassification::RegularNegative(f) => {
                Some(f)
            }
            PClassification::Singular => None,
        }
    }
}

/// Optional closed-form handles used for cross-validation and labeling.
#[derive(Debug, Clone, Default)]
pub struct AnalyticHandles {
    pub q_closed_form: Option<QClosedForm>,
    pub number_statistics: Option<NumberStatsForm>,
    pub quadrature_statistics: Option<QuadratureStatsForm>,
    pub p_classification: Option<PClassification>,
}

/// A catalog state or POVM element: matrix form plus analytic metadata.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub operator: FockOperator,
    pub label: Family,
    pub params: BTreeMap<&'static str, f64>,
    pub analytic: AnalyticHandles,
}

impl CatalogEntry {
    pub fn space(&self) -> FockSpace {
        self.operator.space
    }
}

/// A continuous-outcome quadrature effect |x><x| at theta = 0. Pairings with
/// states produce probability densities; the reduced trace is 1/pi.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct QuadratureEffect {
    pub x: f64,
}

/// A measurement handed to the bound tests: either a trace-class element or
/// the density-type quadrature effect.
#[derive(Debug, Clone)]
pub enum Measurement {
    Element(CatalogEntry),
    Quadrature(QuadratureEffect),
}

fn params(pairs: &[(&'static str, f64)]) -> BTreeMap<&'static str, f64> {
    pairs.iter().copied().collect()
}

/// Coherent state |alpha><alpha| as a measured state.
pub fn coherent_state(alpha: PhasePoint) -> Result<CatalogEntry> {
    let space = FockSpace::for_coherent(alpha, TOL_TRUNC);
    let v = coherent_vector(alpha, space)?;
    let operator = FockOperator::from_vector(&v, OperatorKind::State)?;
    Ok(CatalogEntry {
        operator,
        label: Family::Coherent,
        params: params(&[("alpha_re", alpha.re), ("alpha_im", alpha.im)]),
        analytic: AnalyticHandles {
            q_closed_form: Some(QClosedForm::CoherentProjector { alpha, scale: 1.0 }),
            number_statistics: Some(NumberStatsForm::Poisson {
                mean: alpha.modulus_sq(),
            }),
            quadrature_statistics: Some(QuadratureStatsForm::Gaussian {
                center: alpha.re,
                delta_x: 0.5,
            }),
            p_classification: Some(PClassification::Singular),
        },
    })
}

/// Number state |n><n|.
pub fn number_state(n: usize) -> Result<CatalogEntry> {
    let space = FockSpace::new(n + 3);
    let operator = FockOperator::from_vector(&FockVector::number(space, n), OperatorKind::State)?;
    Ok(CatalogEntry {
        operator,
        label: Family::NumberState,
        params: params(&[("n", n as f64)]),
        analytic: AnalyticHandles {
            q_closed_form: Some(QClosedForm::NumberProjector { n, scale: 1.0 }),
            number_statistics: Some(NumberStatsForm::NumberState { n }),
            quadrature_statistics: None,
            p_classification: Some(PClassification::Singular),
        },
    })
}

fn thermal_xi(n_tc: f64) -> f64 {
    n_tc / (n_tc + 1.0)
}

/// Smallest dimension at which both the probability tail and the
/// first-moment tail of a diagonal distribution drop below the truncation
/// budget, so reported occupations stay exact to the same order.
fn dim_for_pmf(pmf: impl Fn(usize) -> f64, mean: f64, budget: f64) -> usize {
    let mut cum0 = 0.0;
    let mut cum1 = 0.0;
    for n in 0..100_000 {
        let p = pmf(n);
        cum0 += p;
        cum1 += n as f64 * p;
        if 1.0 - cum0 <= budget && mean - cum1 <= budget {
            return (n + 1).max(2);
        }
    }
    100_000
}

/// Thermal-chaotic state of mean occupation `n_tc`.
pub fn thermal_state(n_tc: f64) -> Result<CatalogEntry> {
    if n_tc < 0.0 || !n_tc.is_finite() {
        return Err(Error::Domain(format!(
            "thermal n_tc must be >= 0, got {n_tc}"
        )));
    }
    let xi = thermal_xi(n_tc);
    let stats = NumberStatsForm::Thermal { n_tc };
    let dim = if xi == 0.0 {
        2
    } else {
        dim_for_pmf(|n| stats.pmf(n), n_tc, TOL_TRUNC)
    };
    let space = FockSpace::new(dim);
    let matrix = DMatrix::from_fn(dim, dim, |i, j| {
        if i == j {
            C64::new(stats.pmf(i), 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let loss = xi.powi(dim as i32);
    let operator = FockOperator::state(space, matrix, loss)?;
    let p_classification = if n_tc > 0.0 {
        PClassification::RegularNonnegative(PClosedForm::Thermal { n_tc })
    } else {
        // the vacuum limit is a delta measure at the origin
        PClassification::Singular
    };
    Ok(CatalogEntry {
        operator,
        label: Family::Thermal,
        params: params(&[("n_tc", n_tc), ("xi", xi)]),
        analytic: AnalyticHandles {
            q_closed_form: Some(QClosedForm::Thermal { n_tc }),
            number_statistics: Some(stats),
            quadrature_statistics: Some(QuadratureStatsForm::Gaussian {
                center: 0.0,
                delta_x: (0.25 * (1.0 + 2.0 * n_tc)).sqrt(),
            }),
            p_classification: Some(p_classification),
        },
    })
}

/// Single-photon-added thermal state.
pub fn photon_added_thermal(n_tc: f64) -> Result<CatalogEntry> {
    if n_tc < 0.0 || !n_tc.is_finite() {
        return Err(Error::Domain(format!(
            "photon-added thermal n_tc must be >= 0, got {n_tc}"
        )));
    }
    let stats = NumberStatsForm::PhotonAddedThermal { n_tc };
    let dim = dim_for_pmf(|n| stats.pmf(n), 2.0 * n_tc + 1.0, TOL_TRUNC).max(3);
    let space = FockSpace::new(dim);
    let matrix = DMatrix::from_fn(dim, dim, |i, j| {
        if i == j {
            C64::new(stats.pmf(i), 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let loss = 1.0 - (0..dim).map(|n| stats.pmf(n)).sum::<f64>();
    let operator = FockOperator::state(space, matrix, loss.max(0.0))?;
    let p_classification = if n_tc > 0.0 {
        PClassification::RegularNegative(PClosedForm::PhotonAddedThermal { n_tc })
    } else {
        PClassification::Singular
    };
    Ok(CatalogEntry {
        operator,
        label: Family::PhotonAddedThermal,
        params: params(&[("n_tc", n_tc), ("xi", thermal_xi(n_tc))]),
        analytic: AnalyticHandles {
            q_closed_form: None,
            number_statistics: Some(stats),
            quadrature_statistics: None,
            p_classification: Some(p_classification),
        },
    })
}

/// Cat-state parity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// Normalized superposition N (|alpha> +/- |-alpha>).
pub fn cat_state(alpha: PhasePoint, parity: Parity) -> Result<CatalogEntry> {
    let s = alpha.modulus_sq();
    if parity == Parity::Odd && s == 0.0 {
        return Err(Error::DegenerateState(
            "odd cat state at alpha = 0 has zero norm".into(),
        ));
    }
    let space = FockSpace::for_coherent(alpha, TOL_TRUNC * 1e-2);
    let base = coherent_vector(alpha, space)?;
    let norm_const = match parity {
        Parity::Even => (s / 2.0).exp() / (2.0 * s.cosh().sqrt()),
        Parity::Odd => (s / 2.0).exp() / (2.0 * s.sinh().sqrt()),
    };
    let mut amplitudes = base.amplitudes.clone();
    for n in 0..space.dim() {
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let combined = match parity {
            Parity::Even => 1.0 + sign,
            Parity::Odd => 1.0 - sign,
        };
        amplitudes[n] *= C64::new(norm_const * combined, 0.0);
    }
    let norm_sq: f64 = amplitudes.iter().map(|c| c.norm_sqr()).sum();
    let loss = (1.0 - norm_sq).max(0.0);
    if loss > TOL_TRUNC {
        return Err(Error::Truncation {
            loss,
            budget: TOL_TRUNC,
        });
    }
    let v = FockVector::new(space, amplitudes, loss);
    let operator = FockOperator::from_vector(&v, OperatorKind::State)?;
    let (label, handles) = match parity {
        Parity::Even => {
            let quad = if alpha.re == 0.0 && alpha.im != 0.0 {
                Some(QuadratureStatsForm::EvenCatImaginary {
                    alpha_abs: alpha.im.abs(),
                })
            } else {
                None
            };
            (
                Family::CatEven,
                AnalyticHandles {
                    q_closed_form: None,
                    number_statistics: Some(NumberStatsForm::EvenCat { alpha_sq: s }),
                    quadrature_statistics: quad,
                    p_classification: Some(PClassification::Singular),
                },
            )
        }
        Parity::Odd => (
            Family::CatOdd,
            AnalyticHandles {
                p_classification: Some(PClassification::Singular),
                ..Default::default()
            },
        ),
    };
    Ok(CatalogEntry {
        operator,
        label,
        params: params(&[
            ("alpha_re", alpha.re),
            ("alpha_im", alpha.im),
            ("alpha_abs", alpha.modulus()),
        ]),
        analytic: handles,
    })
}

/// Squeezed vacuum parameterized by its X-quadrature standard deviation.
///
/// The matrix is the standard even-photon expansion with squeeze parameter
/// r = -ln(2 delta_x); its contract is agreement with the closed-form Q.
pub fn squeezed_vacuum(delta_x: f64) -> Result<CatalogEntry> {
    if delta_x <= 0.0 || !delta_x.is_finite() {
        return Err(Error::Domain(format!(
            "squeezed vacuum needs delta_x > 0, got {delta_x}"
        )));
    }
    let r = -(2.0 * delta_x).ln();
    let tanh_r = r.tanh();
    // c_{2m+2} = c_{2m} (-tanh r) sqrt((2m+1)(2m+2)) / (2(m+1))
    let mut coeffs = vec![1.0 / r.cosh().sqrt()];
    let mut norm_sq = coeffs[0] * coeffs[0];
    let mut m = 0usize;
    while 1.0 - norm_sq > TOL_TRUNC && m < 5000 {
        let prev = coeffs[m];
        let mf = m as f64;
        let next =
            prev * (-tanh_r) * ((2.0 * mf + 1.0) * (2.0 * mf + 2.0)).sqrt() / (2.0 * (mf + 1.0));
        coeffs.push(next);
        norm_sq += next * next;
        m += 1;
    }
    let dim = (2 * coeffs.len()).max(2);
    let space = FockSpace::new(dim);
    let mut amplitudes = nalgebra::DVector::zeros(dim);
    for (m, &c) in coeffs.iter().enumerate() {
        amplitudes[2 * m] = C64::new(c, 0.0);
    }
    let loss = (1.0 - norm_sq).max(0.0);
    let v = FockVector::new(space, amplitudes, loss);
    let operator = FockOperator::from_vector(&v, OperatorKind::State)?;
    Ok(CatalogEntry {
        operator,
        label: Family::SqueezedVacuum,
        params: params(&[("delta_x", delta_x), ("r", r)]),
        analytic: AnalyticHandles {
            q_closed_form: Some(QClosedForm::Squeezed { delta_x }),
            number_statistics: None,
            quadrature_statistics: Some(QuadratureStatsForm::Gaussian {
                center: 0.0,
                delta_x,
            }),
            p_classification: Some(PClassification::Singular),
        },
    })
}

/// Convex combination of catalog states.
pub fn mixture(components: &[(f64, CatalogEntry)]) -> Result<CatalogEntry> {
    if components.is_empty() {
        return Err(Error::Weight("mixture needs at least one component".into()));
    }
    let total: f64 = components.iter().map(|(w, _)| w).sum();
    if components.iter().any(|(w, _)| *w < 0.0) || (total - 1.0).abs() > 1e-12 {
        return Err(Error::Weight(format!(
            "weights must be nonnegative and sum to 1, got sum {total}"
        )));
    }
    let dim = components
        .iter()
        .map(|(_, e)| e.operator.dim())
        .max()
        .unwrap();
    let space = FockSpace::new(dim);
    let mut matrix = DMatrix::<C64>::zeros(dim, dim);
    let mut loss = 0.0;
    for (w, entry) in components {
        let embedded = entry.operator.embed(space);
        matrix += embedded.matrix * C64::new(*w, 0.0);
        loss += w * entry.operator.truncation_loss;
    }
    let operator = FockOperator::state(space, matrix, loss)?;

    let p_classification = combine_p(components);
    let number_statistics = components
        .iter()
        .map(|(w, e)| e.analytic.number_statistics.clone().map(|f| (*w, f)))
        .collect::<Option<Vec<_>>>()
        .map(NumberStatsForm::Mixture);
    Ok(CatalogEntry {
        operator,
        label: Family::Mixture,
        params: BTreeMap::new(),
        analytic: AnalyticHandles {
            q_closed_form: None,
            number_statistics,
            quadrature_statistics: None,
            p_classification,
        },
    })
}

/// Mixture P classification: singular dominates, then negative, then
/// nonnegative with the convex-combined closed form.
fn combine_p(components: &[(f64, CatalogEntry)]) -> Option<PClassification> {
    let mut forms = Vec::new();
    let mut any_negative = false;
    for (w, entry) in components {
        match entry.analytic.p_classification.as_ref()? {
            PClassification::Singular => return Some(PClassification::Singular),
            PClassification::RegularNegative(f) => {
                any_negative = true;
                forms.push((*w, f.clone()));
            }
            PClassification::RegularNonnegative(f) => forms.push((*w, f.clone())),
        }
    }
    let combined = PClosedForm::Mixture(forms);
    Some(if any_negative {
        PClassification::RegularNegative(combined)
    } else {
        PClassification::RegularNonnegative(combined)
    })
}

/// (1 - p)|0><0| + p |N><N|.
pub fn vacuum_number_mixture(p: f64, n: usize) -> Result<CatalogEntry> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Weight(format!("p must lie in [0, 1], got {p}")));
    }
    let mut entry = mixture(&[(1.0 - p, number_state(0)?), (p, number_state(n)?)])?;
    entry.label = Family::VacuumNumberMixture;
    entry.params = params(&[("p", p), ("N", n as f64)]);
    entry.analytic.number_statistics = Some(NumberStatsForm::VacuumNumberMixture { p, n });
    Ok(entry)
}

/// p rho_thermal + (1 - p)|n_0><n_0|.
pub fn thermal_number_mixture(p: f64, n_tc: f64, n_0: usize) -> Result<CatalogEntry> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Weight(format!("p must lie in [0, 1], got {p}")));
    }
    let mut entry = mixture(&[(p, thermal_state(n_tc)?), (1.0 - p, number_state(n_0)?)])?;
    entry.label = Family::ThermalNumberMixture;
    entry.params = params(&[("p", p), ("n_tc", n_tc), ("n_0", n_0 as f64)]);
    entry.analytic.number_statistics = Some(NumberStatsForm::ThermalNumberMixture { p, n_tc, n_0 });
    Ok(entry)
}

/// Ideal photon-counting element Delta_n = |n><n| with unit trace.
pub fn povm_number(n: usize) -> Result<CatalogEntry> {
    let space = FockSpace::new(n + 3);
    let operator =
        FockOperator::from_vector(&FockVector::number(space, n), OperatorKind::PovmElement)?;
    Ok(CatalogEntry {
        operator,
        label: Family::PovmNumber,
        params: params(&[("n", n as f64)]),
        analytic: AnalyticHandles {
            q_closed_form: Some(QClosedForm::NumberProjector { n, scale: 1.0 }),
            p_classification: Some(PClassification::Singular),
            ..Default::default()
        },
    })
}

/// Projector onto an arbitrary pure state, as a POVM element.
pub fn povm_projector(state_vector: &FockVector) -> Result<CatalogEntry> {
    let operator = FockOperator::from_vector(state_vector, OperatorKind::PovmElement)?;
    Ok(CatalogEntry {
        operator,
        label: Family::PovmProjector,
        params: BTreeMap::new(),
        analytic: AnalyticHandles::default(),
    })
}

/// Heterodyne-style element Delta_alpha = |alpha><alpha| / pi with trace 1/pi.
pub fn povm_coherent(alpha: PhasePoint) -> Result<CatalogEntry> {
    let space = FockSpace::for_coherent(alpha, TOL_TRUNC);
    let v = coherent_vector(alpha, space)?;
    let matrix = v.projector() / C64::new(std::f64::consts::PI, 0.0);
    let operator = FockOperator::povm_element(space, matrix)?;
    Ok(CatalogEntry {
        operator,
        label: Family::PovmCoherent,
        params: params(&[("alpha_re", alpha.re), ("alpha_im", alpha.im)]),
        analytic: AnalyticHandles {
            q_closed_form: Some(QClosedForm::CoherentProjector {
                alpha,
                scale: 1.0 / std::f64::consts::PI,
            }),
            p_classification: Some(PClassification::Singular),
            ..Default::default()
        },
    })
}

/// One-photon detector contaminated by vacuum and two-photon responses:
/// q|0><0| + p|1><1| + q|2><2|, trace p + 2q.
pub fn contaminated_one_photon(p: f64, q: f64) -> Result<CatalogEntry> {
    // Element validity is the eigenvalue bound 0 <= {p, q} <= 1; complementary
    // outcomes absorb the rest of the identity.
    if !(0.0..=1.0).contains(&p) || !(0.0..=1.0).contains(&q) {
        return Err(Error::Domain(format!(
            "contaminated detector needs p, q in [0, 1], got p={p}, q={q}"
        )));
    }
    let space = FockSpace::new(4);
    let mut matrix = DMatrix::<C64>::zeros(4, 4);
    matrix[(0, 0)] = C64::new(q, 0.0);
    matrix[(1, 1)] = C64::new(p, 0.0);
    matrix[(2, 2)] = C64::new(q, 0.0);
    let operator = FockOperator::povm_element(space, matrix)?;
    Ok(CatalogEntry {
        operator,
        label: Family::ContaminatedOnePhoton,
        params: params(&[("p", p), ("q", q)]),
        analytic: AnalyticHandles::default(),
    })
}

/// The quadrature effect |x><x| at theta = 0 (density semantics).
pub fn povm_quadrature(x: f64) -> QuadratureEffect {
    assert!(x.is_finite());
    QuadratureEffect { x }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::expectation;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn thermal_zero_is_vacuum() {
        let entry = thermal_state(0.0).unwrap();
        assert_relative_eq!(entry.operator.matrix[(0, 0)].re, 1.0, epsilon = 1e-14);
        assert_relative_eq!(entry.operator.trace(), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn thermal_xi_relation() {
        let entry = thermal_state(9.0).unwrap();
        assert_relative_eq!(entry.params["xi"], 0.9, epsilon = 1e-14);
    }

    #[test]
    fn thermal_mean_occupation_matches_diagonal_sum_oracle() {
        for &n_tc in &[0.5, 2.0, 9.0] {
            let entry = thermal_state(n_tc).unwrap();
            let diag = entry.operator.diagonal();
            let mean: f64 = diag.iter().enumerate().map(|(n, p)| n as f64 * p).sum();
            assert_abs_diff_eq!(mean, n_tc, epsilon = 1e-9);
        }
    }

    #[test]
    fn thermal_trace_deficit_is_geometric_tail() {
        let entry = thermal_state(2.0).unwrap();
        let xi = entry.params["xi"];
        let d = entry.operator.dim() as i32;
        assert_relative_eq!(1.0 - entry.operator.trace(), xi.powi(d), max_relative = 1e-6);
        assert_relative_eq!(entry.operator.truncation_loss, xi.powi(d), max_relative = 1e-6);
    }

    #[test]
    fn photon_added_thermal_limits() {
        // n_tc = 0 leaves only the one-photon component
        let entry = photon_added_thermal(0.0).unwrap();
        assert_relative_eq!(entry.operator.matrix[(1, 1)].re, 1.0, epsilon = 1e-14);
        // p_1 = 1/(n_tc + 1)^2
        let entry = photon_added_thermal(0.5).unwrap();
        assert_relative_eq!(entry.operator.matrix[(1, 1)].re, 1.0 / 2.25, epsilon = 1e-12);
        assert_relative_eq!(entry.operator.matrix[(1, 1)].re, 0.4444, epsilon = 1e-4);
        assert_abs_diff_eq!(entry.operator.trace(), 1.0, epsilon = 1e-9);
    }

    #[test]
    fn even_cat_number_parity_and_mean() {
        let alpha = PhasePoint::new(1.3, 0.0);
        let entry = cat_state(alpha, Parity::Even).unwrap();
        let diag = entry.operator.diagonal();
        for (n, p) in diag.iter().enumerate() {
            if n % 2 == 1 {
                assert_abs_diff_eq!(*p, 0.0, epsilon = 1e-300);
            }
        }
        let s = alpha.modulus_sq();
        let mean: f64 = diag.iter().enumerate().map(|(n, p)| n as f64 * p).sum();
        assert_relative_eq!(mean, s * s.tanh(), epsilon = 1e-9);
    }

    #[test]
    fn even_cat_alpha_zero_is_vacuum() {
        let entry = cat_state(PhasePoint::origin(), Parity::Even).unwrap();
        assert_relative_eq!(entry.operator.matrix[(0, 0)].re, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn odd_cat_alpha_zero_degenerate() {
        assert!(matches!(
            cat_state(PhasePoint::origin(), Parity::Odd),
            Err(Error::DegenerateState(_))
        ));
    }

    #[test]
    fn odd_cat_small_alpha_is_normalized() {
        let entry = cat_state(PhasePoint::new(0.3, 0.0), Parity::Odd).unwrap();
        assert_abs_diff_eq!(entry.operator.trace(), 1.0, epsilon = 1e-10);
        // odd parity: vacuum component empty
        assert_abs_diff_eq!(entry.operator.matrix[(0, 0)].re, 0.0, epsilon = 1e-300);
    }

    #[test]
    fn squeezed_half_is_vacuum() {
        let entry = squeezed_vacuum(0.5).unwrap();
        assert_relative_eq!(entry.operator.matrix[(0, 0)].re, 1.0, epsilon = 1e-12);
        assert_relative_eq!(entry.params["r"], 0.0, epsilon = 1e-15);
    }

    #[test]
    fn squeezed_quadrature_peak_density() {
        let entry = squeezed_vacuum(0.1).unwrap();
        let form = entry.analytic.quadrature_statistics.as_ref().unwrap();
        assert_relative_eq!(form.density(0.0), 3.989, epsilon = 1e-3);
    }

    #[test]
    fn mixture_weight_validation() {
        let a = number_state(0).unwrap();
        let b = number_state(1).unwrap();
        assert!(matches!(
            mixture(&[(0.7, a.clone()), (0.7, b.clone())]),
            Err(Error::Weight(_))
        ));
        assert!(matches!(
            mixture(&[(-0.1, a), (1.1, b)]),
            Err(Error::Weight(_))
        ));
    }

    #[test]
    fn thermal_number_mixture_p_one_is_thermal() {
        let entry = thermal_number_mixture(1.0, 2.0, 1).unwrap();
        let thermal = thermal_state(2.0).unwrap();
        let embedded = thermal.operator.embed(entry.operator.space);
        for i in 0..entry.operator.dim() {
            assert_abs_diff_eq!(
                entry.operator.matrix[(i, i)].re,
                embedded.matrix[(i, i)].re,
                epsilon = 1e-13
            );
        }
    }

    #[test]
    fn reference_mixture_single_photon_probability() {
        let entry = thermal_number_mixture(0.5, 9.0, 1).unwrap();
        assert_relative_eq!(entry.operator.matrix[(1, 1)].re, 0.545, epsilon = 1e-9);
    }

    #[test]
    fn vacuum_number_mixture_mandel_closed_form() {
        // Q_M = N(1-p) - 1 from the diagonal-moment oracle
        for &(p, n) in &[(0.3, 1usize), (0.2, 4), (0.9, 6)] {
            let entry = vacuum_number_mixture(p, n).unwrap();
            let diag = entry.operator.diagonal();
            let mean: f64 = diag.iter().enumerate().map(|(k, w)| k as f64 * w).sum();
            let second: f64 = diag
                .iter()
                .enumerate()
                .map(|(k, w)| (k * k) as f64 * w)
                .sum();
            let q_mandel = (second - mean * mean) / mean - 1.0;
            assert_relative_eq!(q_mandel, n as f64 * (1.0 - p) - 1.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn povm_number_trace_one() {
        let entry = povm_number(1).unwrap();
        assert_relative_eq!(entry.operator.trace(), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn contaminated_detector_trace() {
        let entry = contaminated_one_photon(1.0, 0.1).unwrap();
        assert_relative_eq!(entry.operator.trace(), 1.2, epsilon = 1e-14);
        assert!(contaminated_one_photon(0.9, 1.2).is_err());
        assert!(contaminated_one_photon(-0.1, 0.2).is_err());
    }

    #[test]
    fn povm_coherent_trace_and_vacuum_pairing() {
        let entry = povm_coherent(PhasePoint::origin()).unwrap();
        assert_relative_eq!(
            entry.operator.trace(),
            1.0 / std::f64::consts::PI,
            epsilon = 1e-12
        );
        let vacuum = number_state(0).unwrap();
        let space = FockSpace::new(8);
        let p = expectation(
            &entry.operator.embed(space),
            &vacuum.operator.embed(space),
        )
        .unwrap();
        assert_relative_eq!(p, 1.0 / std::f64::consts::PI, epsilon = 1e-12);
    }

    #[test]
    fn p_classification_tags() {
        assert_eq!(
            thermal_state(1.0)
                .unwrap()
                .analytic
                .p_classification
                .unwrap()
                .tag(),
            "regular_nonnegative"
        );
        assert_eq!(
            photon_added_thermal(1.0)
                .unwrap()
                .analytic
                .p_classification
                .unwrap()
                .tag(),
            "regular_negative"
        );
        assert_eq!(
            cat_state(PhasePoint::new(1.0, 0.0), Parity::Even)
                .unwrap()
                .analytic
                .p_classification
                .unwrap()
                .tag(),
            "singular"
        );
        let mix = thermal_number_mixture(0.5, 9.0, 1).unwrap();
        assert_eq!(mix.analytic.p_classification.unwrap().tag(), "singular");
        // thermal + thermal stays regular nonnegative
        let mm = mixture(&[
            (0.4, thermal_state(1.0).unwrap()),
            (0.6, thermal_state(2.0).unwrap()),
        ])
        .unwrap();
        assert_eq!(
            mm.analytic.p_classification.unwrap().tag(),
            "regular_nonnegative"
        );
    }

    #[test]
    fn even_cat_stats_form_matches_matrix() {
        let alpha = PhasePoint::new(0.0, 1.7);
        let entry = cat_state(alpha, Parity::Even).unwrap();
        let form = entry.analytic.number_statistics.as_ref().unwrap();
        let diag = entry.operator.diagonal();
        for (n, d) in diag.iter().enumerate().take(20) {
            assert_abs_diff_eq!(*d, form.pmf(n), epsilon = 1e-10);
        }
    }
}
