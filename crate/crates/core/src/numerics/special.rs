//! Log-space combinatorics and small special-function helpers.

/// ln(n!) via the log-gamma function, safe far beyond the n ~ 170 overflow of n!.
pub fn ln_factorial(n: u64) -> f64 {
    statrs::function::gamma::ln_gamma(n as f64 + 1.0)
}

/// log of the Poisson weight e^{-mean} mean^n / n!.
///
/// `mean = 0` is handled exactly: log 1 for n = 0, -inf otherwise.
pub fn log_poisson(n: u64, mean: f64) -> f64 {
    if mean == 0.0 {
        return if n == 0 { 0.0 } else { f64::NEG_INFINITY };
    }
    n as f64 * mean.ln() - mean - ln_factorial(n)
}

/// Poisson probability mass e^{-mean} mean^n / n!.
pub fn poisson_pmf(n: u64, mean: f64) -> f64 {
    log_poisson(n, mean).exp()
}

/// Error function.
pub fn erf(x: f64) -> f64 {
    statrs::function::erf::erf(x)
}

/// Round to `digits` significant decimal digits. Idempotent, so values that
/// round-trip through a serializer stay byte-identical.
pub fn round_sig(x: f64, digits: i32) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let magnitude = x.abs().log10().floor() as i32;
    let shift = digits - 1 - magnitude;
    // Scale by a power of ten, round, scale back. Stay in f64 throughout.
    let factor = 10f64.powi(shift);
    let rounded = (x * factor).round() / factor;
    if rounded == 0.0 {
        0.0
    } else {
        rounded
    }
}
