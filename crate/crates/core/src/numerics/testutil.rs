//! Shared helpers for gradient checks. Lives in the library (not test-only)
//! so the diagnostics command can run the same checks as the tests.

/// Central finite difference of `f` around 0 with half-width `h`:
/// (f(h) - f(-h)) / 2h.
pub fn central_diff(h: f64, mut f: impl FnMut(f64) -> f64) -> f64 {
    (f(h) - f(-h)) / (2.0 * h)
}

/// Relative error with an absolute floor so near-zero pairs compare sanely.
pub fn max_rel_err(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs()).max(1e-8);
    (a - b).abs() / scale
}
