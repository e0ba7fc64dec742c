//! Scalar special functions of the polarized-vacuum response.
//!
//! The central object is the Uehling multiplier
//!
//! ```text
//! U(r) = (r²/4π) ∫₀¹ (z² - z⁴/3) / (1 + r²(1-z²)/4) dz
//!      = (12-5r²)/(9πr²) + √(4+r²)(r²-2)/(3πr³) · 2 asinh(r/2)
//! ```
//!
//! together with its cutoff-regularized counterpart U_Λ(r) = B_Λ - B_Λ(r),
//! where B_Λ(k) is given by two quadratures over z ∈ [0, Z_Λ(k)] and
//! B_Λ = B_Λ(0) diverges like (2/3π) log Λ.
//!
//! The cutoff Λ is carried in log-domain so that cutoffs of the order
//! exp(3π/2α) stay representable; above `HUGE_LOG_LAMBDA` the asymptotic
//! branches are used.

use crate::quad::{QuadError, Quadrature};
use std::f64::consts::PI;
use std::sync::OnceLock;
use thiserror::Error;

/// Below this radius U and U' switch to the Taylor series of the integral
/// form. The explicit closed form loses ~ε·20/r⁴ relative accuracy to
/// cancellation, so 0.1 keeps the closed-form branch at ≤ 2e-11 relative
/// error while the series needs only a handful of terms.
pub const SMALL_R_THRESHOLD: f64 = 0.1;

/// Above this value of ln Λ the asymptotic branches replace quadrature:
/// B_Λ → (2/3π)lnΛ - 5/9π + 2ln2/3π with O(1/Λ²) error, and
/// U_Λ(r) → U(r) with |U_Λ - U| ≤ (258/π)·r/(2E(Λ)) error.
pub const HUGE_LOG_LAMBDA: f64 = 30.0;

#[derive(Debug, Clone, Error)]
pub enum SpecialError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error(transparent)]
    Quadrature(#[from] QuadError),
    #[error("root bracketing failed: {0}")]
    Bracketing(String),
}

/// E(r) = √(1+r²), the free relativistic dispersion at momentum r (m = 1).
#[inline]
pub fn energy(r: f64) -> f64 {
    (1.0 + r * r).sqrt()
}

/// E(x) + x evaluated without cancellation for either sign of x.
#[inline]
pub(crate) fn energy_plus(x: f64) -> f64 {
    if x >= 0.0 {
        energy(x) + x
    } else {
        1.0 / (energy(-x) - x)
    }
}

/// Series coefficients c_m = m!·2^m·(2m+4)/(2m+5)!! of the expansion
/// U(r) = (r²/4π) Σ_m c_m (-r²/4)^m; c_0 = 4/15, and
/// c_{m+1}/c_m = (m+1)(2m+6)/((m+2)(2m+7)).
fn uehling_series(r: f64) -> (f64, f64) {
    let x = -r * r / 4.0;
    let mut c = 4.0 / 15.0;
    let mut xn = 1.0; // x^m
    let mut s = 0.0; // Σ c_m x^m
    let mut t = 0.0; // Σ c_m m x^{m-1}
    for m in 0..60u32 {
        let term = c * xn;
        s += term;
        if m > 0 {
            t += c * (m as f64) * xn / x;
        }
        if term.abs() < 1e-18 * s.abs() {
            break;
        }
        let mf = m as f64;
        c *= (mf + 1.0) * (2.0 * mf + 6.0) / ((mf + 2.0) * (2.0 * mf + 7.0));
        xn *= x;
    }
    (s, t)
}

/// The Uehling multiplier U(r) ≥ 0, non-decreasing, U(0) = 0.
///
/// Small-r Taylor branch below [`SMALL_R_THRESHOLD`], explicit closed form
/// otherwise; agrees with [`uehling_multiplier_quadrature`] to better than
/// 1e-10 relative on [1e-2, 1e4].
pub fn uehling_multiplier(r: f64) -> f64 {
    debug_assert!(r >= 0.0);
    if r < SMALL_R_THRESHOLD {
        let (s, _) = uehling_series(r);
        return r * r / (4.0 * PI) * s;
    }
    let r2 = r * r;
    let s = (4.0 + r2).sqrt();
    (12.0 - 5.0 * r2) / (9.0 * PI * r2)
        + s * (r2 - 2.0) / (3.0 * PI * r2 * r) * 2.0 * (0.5 * r).asinh()
}

/// U(r) by adaptive quadrature of the integral representation; the
/// cross-validation oracle for the closed form.
pub fn uehling_multiplier_quadrature(r: f64) -> f64 {
    if r == 0.0 {
        return 0.0;
    }
    let q = Quadrature::with_tolerances(1e-15, 1e-13);
    let r2 = r * r;
    let integral = q
        .integrate(
            |z| {
                let z2 = z * z;
                (z2 - z2 * z2 / 3.0) / (1.0 + r2 * (1.0 - z2) / 4.0)
            },
            0.0,
            1.0,
        )
        .expect("Uehling integrand is smooth on [0,1]");
    r2 / (4.0 * PI) * integral.value
}

/// U'(r) > 0 for r > 0, with U'(0) = 0.
///
/// Exact derivative of the closed form (series below [`SMALL_R_THRESHOLD`]):
/// U'(r) = (2r²-12)/(3πr³) + 16 asinh(r/2)/(πr⁴√(4+r²)).
pub fn uehling_derivative(r: f64) -> f64 {
    debug_assert!(r >= 0.0);
    if r < SMALL_R_THRESHOLD {
        let (s, t) = uehling_series(r);
        return r / (2.0 * PI) * s - r * r * r / (8.0 * PI) * t;
    }
    let r2 = r * r;
    let s = (4.0 + r2).sqrt();
    (2.0 * r2 - 12.0) / (3.0 * PI * r2 * r) + 16.0 * (0.5 * r).asinh() / (PI * r2 * r2 * s)
}

/// U'(r) by differentiating the integral representation under the integral
/// sign; the cross-validation oracle for [`uehling_derivative`].
pub fn uehling_derivative_quadrature(r: f64) -> f64 {
    if r == 0.0 {
        return 0.0;
    }
    let q = Quadrature::with_tolerances(1e-15, 1e-13);
    let r2 = r * r;
    let num = |z: f64| {
        let z2 = z * z;
        z2 - z2 * z2 / 3.0
    };
    let den = |z: f64| 1.0 + r2 * (1.0 - z * z) / 4.0;
    let i1 = q
        .integrate(|z| num(z) / den(z), 0.0, 1.0)
        .expect("smooth integrand")
        .value;
    let i2 = q
        .integrate(
            |z| {
                let d = den(z);
                num(z) * (1.0 - z * z) / (d * d)
            },
            0.0,
            1.0,
        )
        .expect("smooth integrand")
        .value;
    r / (2.0 * PI) * i1 - r * r2 / (8.0 * PI) * i2
}

/// Φ(r) = U'(r) / (1 + U(r)); Φ(0) = 0, Φ > 0 on (0, ∞), vanishing at ∞.
pub fn phi(r: f64) -> f64 {
    uehling_derivative(r) / (1.0 + uehling_multiplier(r))
}

/// The two crossing radii T₋ < T₊ at a common level Φ₀ below the maximum
/// of Φ, with Φ increasing on (0, T₋) and decreasing on (T₊, ∞).
#[derive(Debug, Clone, Copy)]
pub struct PhiLandscape {
    pub t_minus: f64,
    pub t_plus: f64,
    pub phi0: f64,
}

/// Bisection for a sign change of `f` on [lo, hi].
pub(crate) fn bisect<F: Fn(f64) -> f64>(
    f: F,
    mut lo: f64,
    mut hi: f64,
    tol: f64,
    context: &str,
) -> Result<f64, SpecialError> {
    let mut flo = f(lo);
    let fhi = f(hi);
    if !flo.is_finite() || !fhi.is_finite() {
        return Err(SpecialError::Domain(format!(
            "{context}: non-finite bracket values ({flo}, {fhi})"
        )));
    }
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(SpecialError::Bracketing(format!(
            "{context}: no sign change on [{lo}, {hi}] (f = {flo}, {fhi})"
        )));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= tol || mid <= lo || mid >= hi {
            return Ok(mid);
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Locate the maximizer region of Φ and a level Φ₀ = 0.9·max Φ attained at
/// one radius on each side of the maximum.
pub fn phi_landscape() -> Result<PhiLandscape, SpecialError> {
    // Coarse log-spaced scan to bracket the maximum.
    let n = 160;
    let (lo, hi) = (1e-3f64, 1e3f64);
    let mut best = (lo, phi(lo));
    for i in 0..=n {
        let r = lo * (hi / lo).powf(i as f64 / n as f64);
        let v = phi(r);
        if !v.is_finite() {
            return Err(SpecialError::Domain(format!("Φ({r}) is not finite")));
        }
        if v > best.1 {
            best = (r, v);
        }
    }
    // Golden-section refinement around the best sample.
    let golden = 0.5 * (5.0f64.sqrt() - 1.0);
    let (mut a, mut b) = (best.0 / 3.0, best.0 * 3.0);
    let mut c = b - golden * (b - a);
    let mut d = a + golden * (b - a);
    let (mut fc, mut fd) = (phi(c), phi(d));
    for _ in 0..120 {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - golden * (b - a);
            fc = phi(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + golden * (b - a);
            fd = phi(d);
        }
        if (b - a).abs() < 1e-12 * b.abs() {
            break;
        }
    }
    let r_max = 0.5 * (a + b);
    let phi_max = phi(r_max);
    if !phi_max.is_finite() || phi_max <= 0.0 {
        return Err(SpecialError::Domain(format!(
            "Φ maximum at {r_max} is {phi_max}"
        )));
    }
    let phi0 = 0.9 * phi_max;
    let t_minus = bisect(|r| phi(r) - phi0, 1e-9, r_max, 1e-13, "phi_landscape T-")?;
    // Expand to the right until Φ drops below the level.
    let mut right = 2.0 * r_max;
    while phi(right) >= phi0 {
        right *= 2.0;
        if right > 1e12 {
            return Err(SpecialError::Bracketing(
                "phi_landscape: Φ never drops below Φ₀ on the right".into(),
            ));
        }
    }
    let t_plus = bisect(|r| phi(r) - phi0, r_max, right, 1e-11, "phi_landscape T+")?;
    Ok(PhiLandscape {
        t_minus,
        t_plus,
        phi0,
    })
}

fn landscape_cached() -> &'static PhiLandscape {
    static CACHE: OnceLock<PhiLandscape> = OnceLock::new();
    CACHE.get_or_init(|| phi_landscape().expect("Φ landscape is well-defined"))
}

/// Ultraviolet cutoff in log-domain together with its derived scalar B_Λ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutoffParams {
    /// ln Λ in units of the electron mass; ≥ 0 (Λ ≥ 1).
    pub log_lambda: f64,
    /// Cached B_Λ = B_Λ(0).
    pub b_lambda: f64,
}

impl CutoffParams {
    pub fn from_log_lambda(log_lambda: f64) -> Result<Self, SpecialError> {
        if !(log_lambda >= 0.0) || !log_lambda.is_finite() {
            return Err(SpecialError::Domain(format!(
                "cutoff requires ln Λ ≥ 0, got {log_lambda}"
            )));
        }
        Ok(CutoffParams {
            log_lambda,
            b_lambda: b_lambda0(log_lambda),
        })
    }

    pub fn from_lambda(lambda: f64) -> Result<Self, SpecialError> {
        if !(lambda >= 1.0) {
            return Err(SpecialError::Domain(format!(
                "cutoff requires Λ ≥ 1, got {lambda}"
            )));
        }
        Self::from_log_lambda(lambda.ln())
    }

    /// Λ itself; +∞ once ln Λ exceeds the f64 exponent range.
    pub fn lambda(&self) -> f64 {
        self.log_lambda.exp()
    }

    /// True when r > 2Λ, compared in log-domain.
    pub fn above_support(&self, r: f64) -> bool {
        r > 0.0 && (0.5 * r).ln() > self.log_lambda
    }
}

/// Z_Λ(r) = (E(Λ) - E(Λ-r))/r evaluated through the cancellation-free form
/// (2Λ - r)/(E(Λ) + E(Λ-r)); requires 0 < r ≤ 2Λ.
pub fn z_lambda(r: f64, cutoff: &CutoffParams) -> Result<f64, SpecialError> {
    let lambda = cutoff.lambda();
    if !(r > 0.0) {
        return Err(SpecialError::Domain(format!("Z_Λ requires r > 0, got {r}")));
    }
    if cutoff.above_support(r) {
        return Err(SpecialError::Domain(format!(
            "Z_Λ requires r ≤ 2Λ, got r = {r}, ln Λ = {}",
            cutoff.log_lambda
        )));
    }
    if !lambda.is_finite() {
        return Err(SpecialError::Domain(format!(
            "Z_Λ needs a representable Λ; ln Λ = {} overflows",
            cutoff.log_lambda
        )));
    }
    Ok((2.0 * lambda - r) / (energy(lambda) + energy(lambda - r)))
}

/// Splitting point for the z → 1 - e^{-u} endpoint substitution.
const Z_SPLIT: f64 = 0.9;

/// ∫₀^Z n(z)/(1-z²) · extra(z) dz with the 1/(1-z) growth tamed by the
/// substitution z = 1 - e^{-u} on [Z_SPLIT, Z]. `one_minus_z_end` is 1 - Z
/// computed without cancellation by the caller.
fn integrate_with_endpoint_sub<N, X>(
    q: &Quadrature,
    n: N,
    extra: X,
    z_end: f64,
    one_minus_z_end: f64,
) -> Result<f64, QuadError>
where
    N: Fn(f64) -> f64,
    X: Fn(f64) -> f64,
{
    let plain = |z: f64| n(z) / ((1.0 - z * z) * extra(z));
    if z_end <= Z_SPLIT {
        return Ok(q.integrate(plain, 0.0, z_end)?.value);
    }
    let head = q.integrate(plain, 0.0, Z_SPLIT)?.value;
    // u-domain: integrand e^{-u} cancels the 1/(1-z) factor exactly.
    let u_lo = -(1.0 - Z_SPLIT).ln();
    let u_hi = -one_minus_z_end.ln();
    let tail = q
        .integrate(
            |u| {
                let one_minus_z = (-u).exp();
                let z = 1.0 - one_minus_z;
                n(z) / ((1.0 + z) * extra(z))
            },
            u_lo,
            u_hi,
        )?
        .value;
    Ok(head + tail)
}

/// B_Λ = (1/π) ∫₀^{Λ/E(Λ)} (z² - z⁴/3)/(1 - z²) dz, taking ln Λ.
///
/// Above [`HUGE_LOG_LAMBDA`] the asymptotic value
/// (2/3π) ln Λ - 5/9π + 2 ln 2/3π is returned (O(1/Λ²) error).
pub fn b_lambda0(log_lambda: f64) -> f64 {
    assert!(
        log_lambda >= 0.0,
        "B_Λ requires ln Λ ≥ 0, got {log_lambda}"
    );
    if log_lambda > HUGE_LOG_LAMBDA {
        return (2.0 / 3.0 * log_lambda - 5.0 / 9.0 + 2.0 / 3.0 * std::f64::consts::LN_2) / PI;
    }
    let lambda = log_lambda.exp();
    let e = energy(lambda);
    let z_end = lambda / e;
    let one_minus_z = 1.0 / (e * (e + lambda));
    let q = Quadrature::default();
    let n = |z: f64| {
        let z2 = z * z;
        z2 - z2 * z2 / 3.0
    };
    let value = integrate_with_endpoint_sub(&q, n, |_| 1.0, z_end, one_minus_z)
        .expect("B_Λ integrand converges");
    value / PI
}

/// B_Λ(k): both integrals of the cutoff response multiplier at external
/// momentum k, for 0 ≤ k ≤ 2Λ.
pub fn b_lambda_k(k: f64, cutoff: &CutoffParams) -> Result<f64, SpecialError> {
    if !(k >= 0.0) {
        return Err(SpecialError::Domain(format!(
            "B_Λ(k) requires k ≥ 0, got {k}"
        )));
    }
    if cutoff.above_support(k) {
        return Err(SpecialError::Domain(format!(
            "B_Λ(k) requires k ≤ 2Λ, got k = {k}, ln Λ = {}",
            cutoff.log_lambda
        )));
    }
    let lambda = cutoff.lambda();
    if !lambda.is_finite() {
        return Err(SpecialError::Domain(format!(
            "B_Λ(k) needs a representable Λ; ln Λ = {} overflows",
            cutoff.log_lambda
        )));
    }
    let e = energy(lambda);
    let (z_end, one_minus_z) = if k == 0.0 {
        (lambda / e, 1.0 / (e * (e + lambda)))
    } else {
        let z = z_lambda(k, cutoff)?;
        // 1 - Z_Λ(k) = [ (E(Λ)-Λ) + (E(Λ-k)-(Λ-k)) ] / (E(Λ) + E(Λ-k)),
        // with E(x) - x = 1/(E(x)+x) evaluated stably for either sign.
        let denom = energy(lambda) + energy(lambda - k);
        let omz = (1.0 / energy_plus(lambda) + 1.0 / energy_plus(lambda - k)) / denom;
        (z, omz)
    };
    let n = |z: f64| {
        let z2 = z * z;
        z2 - z2 * z2 / 3.0
    };
    let q = Quadrature::default();
    let k2 = k * k;
    let first = integrate_with_endpoint_sub(
        &q,
        n,
        |z| 1.0 + k2 * (1.0 - z * z) / 4.0,
        z_end,
        one_minus_z,
    )
    .map_err(SpecialError::from)?
        / PI;
    if k == 0.0 {
        return Ok(first);
    }
    let second = q
        .integrate(
            |z| {
                let z2 = z * z;
                (z - z * z2 / 3.0) / (e - k * z / 2.0)
            },
            0.0,
            z_end,
        )
        .map_err(SpecialError::from)?
        .value
        * k
        / (2.0 * PI);
    Ok(first + second)
}

/// U_Λ(r) = B_Λ - B_Λ(r) for 0 ≤ r ≤ 2Λ and 0 beyond the support.
///
/// For ln Λ > [`HUGE_LOG_LAMBDA`] the limit U(r) is returned, with error
/// bounded by (258/π)·r/(2E(Λ)).
pub fn cutoff_multiplier(r: f64, cutoff: &CutoffParams) -> Result<f64, SpecialError> {
    if !(r >= 0.0) {
        return Err(SpecialError::Domain(format!(
            "U_Λ requires r ≥ 0, got {r}"
        )));
    }
    if cutoff.above_support(r) {
        return Ok(0.0);
    }
    if cutoff.log_lambda > HUGE_LOG_LAMBDA {
        return Ok(uehling_multiplier(r));
    }
    if r == 0.0 {
        return Ok(0.0);
    }
    Ok(cutoff.b_lambda - b_lambda_k(r, cutoff)?)
}

/// The crossing radius τ_n of Φ(τ) = Φ(nτ) in (0, T₋) and the product bound
/// J_n = (1 + U(nτ_n)) / (1 + U(τ_n))ⁿ.
#[derive(Debug, Clone, Copy)]
pub struct JnConstant {
    pub tau_n: f64,
    pub j_n: f64,
}

/// Solve Φ(τ) = Φ(nτ) for τ ∈ (0, T₋) by bisection and evaluate J_n.
///
/// For small n the crossing can degenerate (nτ never clears the maximum of
/// Φ); that case is reported as a bracketing error.
pub fn jn_constant(n: u64) -> Result<JnConstant, SpecialError> {
    if n < 2 {
        return Err(SpecialError::Domain(format!("J_n requires n ≥ 2, got {n}")));
    }
    let landscape = landscape_cached();
    let nf = n as f64;
    let g = |tau: f64| phi(tau) - phi(nf * tau);
    let hi = landscape.t_minus * (1.0 - 1e-12);
    let tau = bisect(g, 1e-12, hi, 1e-12, "jn_constant crossing")?;
    let u_big = uehling_multiplier(nf * tau);
    let u_small = uehling_multiplier(tau);
    let j = (u_big.ln_1p() - nf * u_small.ln_1p()).exp();
    Ok(JnConstant { tau_n: tau, j_n: j })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn energy_values() {
        assert_eq!(energy(0.0), 1.0);
        assert_relative_eq!(energy(1.0), std::f64::consts::SQRT_2, max_relative = 1e-15);
        // E(2Λ) at Λ = 10 is √401.
        assert_relative_eq!(energy(20.0), 401.0f64.sqrt(), max_relative = 1e-15);
        assert!(energy(5.0) > energy(4.0));
    }

    #[test]
    fn uehling_at_zero_and_one() {
        assert_eq!(uehling_multiplier(0.0), 0.0);
        // Oracle: adaptive quadrature of the integral form.
        let oracle = uehling_multiplier_quadrature(1.0);
        assert!((oracle - 0.01924).abs() < 1e-4);
        assert_relative_eq!(uehling_multiplier(1.0), oracle, max_relative = 1e-11);
    }

    #[test]
    fn uehling_small_r_asymptote() {
        let r = 1e-3;
        let ratio = uehling_multiplier(r) / (r * r / (15.0 * PI));
        assert!((ratio - 1.0).abs() < 1e-4, "ratio = {ratio}");
    }

    #[test]
    fn uehling_closed_vs_integral_sweep() {
        for i in 0..=120 {
            let r = 1e-2 * 1e6f64.powf(i as f64 / 120.0);
            let a = uehling_multiplier(r);
            let b = uehling_multiplier_quadrature(r);
            assert_relative_eq!(a, b, max_relative = 1e-10);
        }
    }

    #[test]
    fn uehling_non_decreasing() {
        let mut prev = 0.0;
        for i in 0..200 {
            let r = 1e-3 * 1e9f64.powf(i as f64 / 199.0);
            let u = uehling_multiplier(r);
            assert!(u >= prev, "U not monotone at r = {r}");
            prev = u;
        }
    }

    #[test]
    fn derivative_matches_finite_differences() {
        // Central difference of the multiplier, step 1e-5 relative.
        for &r in &[1e-2, 0.05, 0.3, 1.0, 7.0, 100.0, 1e3] {
            let h = 1e-5 * r.max(1.0);
            let fd = (uehling_multiplier(r + h) - uehling_multiplier(r - h)) / (2.0 * h);
            assert_relative_eq!(uehling_derivative(r), fd, max_relative = 1e-6);
        }
    }

    #[test]
    fn derivative_closed_vs_under_integral() {
        for i in 0..=60 {
            let r = 1e-2 * 1e5f64.powf(i as f64 / 60.0);
            assert_relative_eq!(
                uehling_derivative(r),
                uehling_derivative_quadrature(r),
                max_relative = 1e-10
            );
        }
    }

    #[test]
    fn derivative_large_r_asymptote() {
        let r = 1e6;
        let ratio = uehling_derivative(r) * 3.0 * PI * r / 2.0;
        assert!((ratio - 1.0).abs() < 0.01, "ratio = {ratio}");
        assert_eq!(uehling_derivative(0.0), 0.0);
    }

    #[test]
    fn phi_limits() {
        assert_eq!(phi(0.0), 0.0);
        let r = 1e-4;
        let ratio = phi(r) / (2.0 * r / (15.0 * PI));
        assert!((ratio - 1.0).abs() < 1e-3, "small-r ratio = {ratio}");
        // The 1/(r log r) envelope has O(1/log r) corrections; ±10% needs
        // r ≳ 1e16 (at r = 1e5 the product is ≈ 0.75).
        let r = 1e16;
        let tail = phi(r) * r * r.ln();
        assert!((0.9..=1.1).contains(&tail), "tail product = {tail}");
    }

    #[test]
    fn landscape_shape() {
        let l = phi_landscape().unwrap();
        assert!(0.0 < l.t_minus && l.t_minus < l.t_plus);
        assert!(phi(l.t_minus / 2.0) < l.phi0);
        assert!(phi(2.0 * l.t_plus) < l.phi0);
        assert!((phi(l.t_minus) - phi(l.t_plus)).abs() < 1e-9);
    }

    #[test]
    fn z_lambda_examples() {
        let c = CutoffParams::from_lambda(10.0).unwrap();
        assert_eq!(z_lambda(20.0, &c).unwrap(), 0.0);
        // r → 0⁺ limit is Λ/E(Λ).
        let z = z_lambda(1e-12, &c).unwrap();
        assert_relative_eq!(z, 10.0 / energy(10.0), max_relative = 1e-12);
        assert_relative_eq!(
            z_lambda(10.0, &c).unwrap(),
            10.0 / (energy(10.0) + 1.0),
            max_relative = 1e-14
        );
        assert!(z_lambda(0.0, &c).is_err());
        assert!(z_lambda(20.1, &c).is_err());
        // 0 < Z ≤ Λ/E(Λ) on the domain.
        for i in 1..40 {
            let r = 20.0 * i as f64 / 40.0;
            let z = z_lambda(r, &c).unwrap();
            assert!(z > 0.0 && z <= 10.0 / energy(10.0) && z < 1.0);
        }
    }

    /// Elementary antiderivative of (z²-z⁴/3)/(1-z²):
    /// z³/9 - 2z/3 + (1/3) ln((1+z)/(1-z)); independent oracle for B_Λ.
    fn b_lambda0_oracle(lambda: f64) -> f64 {
        let e = energy(lambda);
        let z = lambda / e;
        let one_minus_z = 1.0 / (e * (e + lambda));
        (z * z * z / 9.0 - 2.0 * z / 3.0 + ((1.0 + z).ln() - one_minus_z.ln()) / 3.0) / PI
    }

    #[test]
    fn b_lambda0_against_antiderivative() {
        for &lambda in &[1.0, 3.0, 10.0, 100.0, 1e4, 1e10] {
            assert_relative_eq!(
                b_lambda0(lambda.ln()),
                b_lambda0_oracle(lambda),
                max_relative = 1e-10
            );
        }
        // Frozen regression value at Λ = 1, from the antiderivative oracle.
        assert_relative_eq!(b_lambda0(0.0), 0.049482903101204954, max_relative = 1e-10);
        assert!(b_lambda0(10.0f64.ln()) < b_lambda0(100.0f64.ln()));
    }

    #[test]
    fn b_lambda0_asymptotic_branch() {
        let log_lambda = 1e4f64.ln();
        let asym = (2.0 / 3.0 * log_lambda - 5.0 / 9.0 + 2.0 * std::f64::consts::LN_2 / 3.0) / PI;
        assert!((b_lambda0(log_lambda) - asym).abs() < 1e-6);
        // The huge branch continues the quadrature branch smoothly.
        let seam = HUGE_LOG_LAMBDA;
        assert!((b_lambda0(seam - 1e-9) - b_lambda0(seam + 1e-9)).abs() < 1e-9);
    }

    #[test]
    fn b_lambda_k_endpoints() {
        let c = CutoffParams::from_lambda(10.0).unwrap();
        assert!((b_lambda_k(0.0, &c).unwrap() - c.b_lambda).abs() < 1e-9);
        assert_eq!(b_lambda_k(20.0, &c).unwrap(), 0.0);
    }

    #[test]
    fn cutoff_multiplier_bounds() {
        let c = CutoffParams::from_lambda(50.0).unwrap();
        assert_eq!(cutoff_multiplier(0.0, &c).unwrap(), 0.0);
        assert_relative_eq!(
            cutoff_multiplier(100.0, &c).unwrap(),
            c.b_lambda,
            max_relative = 1e-9
        );
        assert_eq!(cutoff_multiplier(100.1, &c).unwrap(), 0.0);
        // κ₁ = 258/π convergence bound at r = 1.
        let gap = (cutoff_multiplier(1.0, &c).unwrap() - uehling_multiplier(1.0)).abs();
        assert!(gap <= 258.0 / PI / (2.0 * energy(50.0)));
        for i in 0..=50 {
            let r = 100.0 * i as f64 / 50.0;
            let u = cutoff_multiplier(r, &c).unwrap();
            assert!(u >= -1e-12 && u <= c.b_lambda + 1e-12);
        }
    }

    #[test]
    fn cutoff_multiplier_huge_branch_is_limit() {
        let c = CutoffParams::from_log_lambda(40.0).unwrap();
        assert_eq!(
            cutoff_multiplier(3.0, &c).unwrap(),
            uehling_multiplier(3.0)
        );
    }

    #[test]
    fn jn_direct_maximization_cross_check() {
        // Oracle: coarse grid + golden-section refinement of
        // g(τ) = (1+U(nτ))/(1+U(τ))^n over τ.
        let n = 100u64;
        let nf = n as f64;
        let g = |tau: f64| {
            (uehling_multiplier(nf * tau).ln_1p() - nf * uehling_multiplier(tau).ln_1p()).exp()
        };
        let mut best = (0.0, 0.0);
        for i in 1..4000 {
            let tau = 1e-4 * (1e4f64).powf(i as f64 / 4000.0);
            let v = g(tau);
            if v > best.1 {
                best = (tau, v);
            }
        }
        let golden = 0.5 * (5.0f64.sqrt() - 1.0);
        let (mut a, mut b) = (best.0 / 2.0, best.0 * 2.0);
        for _ in 0..200 {
            let c = b - golden * (b - a);
            let d = a + golden * (b - a);
            if g(c) > g(d) {
                b = d;
            } else {
                a = c;
            }
        }
        let oracle = g(0.5 * (a + b));
        let jn = jn_constant(n).unwrap();
        assert_relative_eq!(jn.j_n, oracle, max_relative = 1e-6);
    }

    #[test]
    fn jn_structure_at_large_n() {
        let l = phi_landscape().unwrap();
        let jn = jn_constant(1_000_000).unwrap();
        assert!(jn.tau_n > 0.0 && jn.tau_n < l.t_minus);
        assert!(1e6 * jn.tau_n > l.t_plus);
        assert!((phi(jn.tau_n) - phi(1e6 * jn.tau_n)).abs() < 1e-10);
    }

    #[test]
    fn uehling_sandwich_bound() {
        // (2/15π)(1+log E) ≤ 1+U ≤ 1+(2/3π) log E over a wide sweep.
        for i in 0..=1000 {
            let r = 1e-3 * 1e9f64.powf(i as f64 / 1000.0);
            let u = uehling_multiplier(r);
            let le = energy(r).ln();
            assert!(2.0 / (15.0 * PI) * (1.0 + le) <= 1.0 + u + 1e-15);
            assert!(1.0 + u <= 1.0 + 2.0 / (3.0 * PI) * le + 1e-15);
        }
    }
}
