//! Derivative-free 1-D maximization and boolean bisection on bounded domains.

/// Golden-section maximization of `f` on [a, b].
///
/// Returns (argmax, max). Converges to the enclosed local maximum; callers
/// bracket the global one with a coarse grid first.
pub fn golden_section_max<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, xtol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let (mut lo, mut hi) = (a, b);
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > xtol {
        if f1 > f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    let mid = 0.5 * (lo + hi);
    let fm = f(mid);
    // Keep the best point actually evaluated.
    let mut best = (mid, fm);
    if f1 > best.1 {
        best = (x1, f1);
    }
    if f2 > best.1 {
        best = (x2, f2);
    }
    best
}

/// Bisection for the boundary of a boolean predicate on [lo, hi], assuming
/// `pred(lo) != pred(hi)`. Returns the abscissa where the predicate flips,
/// located to within `xtol`.
pub fn bisect_boundary<F: Fn(f64) -> bool>(pred: F, mut lo: f64, mut hi: f64, xtol: f64) -> f64 {
    let at_lo = pred(lo);
    debug_assert!(at_lo != pred(hi), "predicate must differ at the endpoints");
    while hi - lo > xtol {
        let mid = 0.5 * (lo + hi);
        if pred(mid) == at_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
