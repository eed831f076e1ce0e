//! Quadrature rules: Gauss-Hermite and Gauss-Legendre via Golub-Welsch, a
//! (7,15) Gauss-Kronrod adaptive integrator, and a plain trapezoid rule.

use std::cell::RefCell;
use std::collections::HashMap;

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Nodes and weights from the symmetric tridiagonal Jacobi matrix of an
/// orthogonal-polynomial recurrence (Golub-Welsch). `offdiag[k]` couples
/// rows k and k+1; `moment0` is the integral of the weight function.
fn golub_welsch(offdiag: &[f64], moment0: f64) -> (Vec<f64>, Vec<f64>) {
    let n = offdiag.len() + 1;
    let jacobi = DMatrix::<f64>::from_fn(n, n, |i, j| {
        if i.abs_diff(j) == 1 {
            offdiag[i.min(j)]
        } else {
            0.0
        }
    });
    let eig = jacobi.symmetric_eigen();
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let node = eig.eigenvalues[i];
            let first = eig.eigenvectors[(0, i)];
            (node, moment0 * first * first)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    pairs.into_iter().unzip()
}

thread_local! {
    static HERMITE_CACHE: RefCell<HashMap<usize, (Vec<f64>, Vec<f64>)>> = RefCell::new(HashMap::new());
    static LEGENDRE_CACHE: RefCell<HashMap<usize, (Vec<f64>, Vec<f64>)>> = RefCell::new(HashMap::new());
}

/// Gauss-Hermite rule: integrates exp(-x^2) * p(x) over the real line exactly
/// for polynomials p of degree <= 2n - 1.
pub fn gauss_hermite(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    HERMITE_CACHE.with(|cache| {
        cache
            .borrow_mut()
            .entry(n)
            .or_insert_with(|| {
                let offdiag: Vec<f64> = (1..n).map(|k| (k as f64 / 2.0).sqrt()).collect();
                golub_welsch(&offdiag, std::f64::consts::PI.sqrt())
            })
            .clone()
    })
}

/// Gauss-Legendre rule on [-1, 1]: exact for polynomials of degree <= 2n - 1.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    LEGENDRE_CACHE.with(|cache| {
        cache
            .borrow_mut()
            .entry(n)
            .or_insert_with(|| {
                let offdiag: Vec<f64> = (1..n)
                    .map(|k| {
                        let k = k as f64;
                        k / (4.0 * k * k - 1.0).sqrt()
                    })
                    .collect();
                golub_welsch(&offdiag, 2.0)
            })
            .clone()
    })
}

/// Trapezoid rule over an explicit (not necessarily uniform) grid of samples.
pub fn trapezoid(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len());
    xs.windows(2)
        .zip(ys.windows(2))
        .map(|(x, y)| 0.5 * (x[1] - x[0]) * (y[0] + y[1]))
        .sum()
}

// 15-point Kronrod nodes on [-1, 1] (positive half) and the matching weights,
// with the embedded 7-point Gauss weights on the odd-index nodes.
const XGK: [f64; 8] = [
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
];
const WG: [f64; 4] = [
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
];

/// One (7,15) Gauss-Kronrod panel: returns (kronrod estimate, error estimate).
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut kronrod = 0.0;
    let mut gauss = 0.0;
    for (i, (&x, &wk)) in XGK.iter().zip(WGK.iter()).enumerate() {
        let (f_lo, f_hi) = if x == 0.0 {
            let v = f(center);
            (v, 0.0)
        } else {
            (f(center - half * x), f(center + half * x))
        };
        let pair = f_lo + f_hi;
        kronrod += wk * pair;
        if i % 2 == 1 {
            gauss += WG[i / 2] * pair;
        }
    }
    kronrod *= half;
    gauss *= half;
    (kronrod, (kronrod - gauss).abs())
}

/// Adaptive Gauss-Kronrod integration of `f` over [a, b] to absolute
/// tolerance `tol`, by recursive interval bisection.
pub fn adaptive_quadrature<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> Result<f64> {
    fn recurse<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> Result<f64> {
        let (estimate, err) = gk15(f, a, b);
        if err <= tol || (b - a).abs() < 1e-14 {
            return Ok(estimate);
        }
        if depth >= 60 {
            return Err(Error::Quadrature(format!(
                "adaptive bisection stalled on [{a}, {b}] with error {err:.3e}"
            )));
        }
        let mid = 0.5 * (a + b);
        Ok(recurse(f, a, mid, tol / 2.0, depth + 1)? + recurse(f, mid, b, tol / 2.0, depth + 1)?)
    }
    recurse(f, a, b, tol, 0)
}
