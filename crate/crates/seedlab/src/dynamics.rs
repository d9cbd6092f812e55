//! The quadratic iteration kernel: one orbit step, the escape bound, and the
//! per-point membership verdict everything else is built on.

use crate::complex::Complex;

/// One application of the iterator: z ← z² + q.
///
/// Components are computed as (re² − im² + q.re, 2·re·im + q.im). No finiteness
/// check: an orbit that has already escaped may overflow, which is harmless
/// because callers test the escape radius before every step.
#[inline]
pub fn quad_step(z: Complex, q: Complex) -> Complex {
    Complex {
        re: z.re * z.re - z.im * z.im + q.re,
        im: 2.0 * z.re * z.im + q.im,
    }
}

/// The critical point of z ↦ z² + q, the origin. Seed paths are specified
/// relative to this point.
#[inline]
pub fn critical_point() -> Complex {
    Complex::ZERO
}

/// Escape bound for the orbit of any seed under z ↦ z² + q.
///
/// Returns max(2, |q|). Once |z| exceeds this, |z²+q| ≥ |z|·(|z|−1) > |z|, so
/// the orbit grows without bound. A fixed radius of 2 would be wrong for
/// |q| > 2 combined with a large seed.
#[inline]
pub fn escape_radius(q: Complex) -> f64 {
    q.modulus().max(2.0)
}

/// Verdict for one orbit: did it leave the escape radius, and after how many
/// applications of the iterator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitResult {
    pub escaped: bool,
    /// Applications of the iterator performed before the verdict. A seed that
    /// already sits outside the escape radius reports 0.
    pub iterations: u32,
    /// |z| at verdict time.
    pub final_modulus: f64,
}

/// Iterates z ↦ z² + q from `z0`, testing the escape radius before each step.
///
/// If the radius is never exceeded within `max_iter` applications the orbit is
/// treated as bounded (`escaped == false`, `iterations == max_iter`), which
/// over-approximates the true bounded set.
pub fn classify_orbit(z0: Complex, q: Complex, max_iter: u32) -> OrbitResult {
    assert!(max_iter >= 1, "max_iter must be at least 1");
    let radius = escape_radius(q);
    let threshold = radius * radius;
    let mut z = z0;
    let mut applied = 0u32;
    loop {
        if z.norm_sqr() > threshold {
            return OrbitResult {
                escaped: true,
                iterations: applied,
                final_modulus: z.modulus(),
            };
        }
        if applied == max_iter {
            return OrbitResult {
                escaped: false,
                iterations: max_iter,
                final_modulus: z.modulus(),
            };
        }
        z = quad_step(z, q);
        applied += 1;
    }
}

/// Canonical representative of a seed under the z₀ ↦ −z₀ symmetry.
///
/// The first iterate z₀² + q is identical for a seed and its negation, so the
/// two run the same experiment. Everywhere a seed is recorded next to results
/// (field metadata, connectivity records, CSV rows) the representative with
/// re > 0 — or, on the imaginary axis, im ≤ 0 — is stored, so that equal
/// experiments compare equal byte for byte. Negative zeros are scrubbed.
pub fn canonical_seed(z0: Complex) -> Complex {
    let re = scrub_zero(z0.re);
    let im = scrub_zero(z0.im);
    if re < 0.0 || (re == 0.0 && im > 0.0) {
        Complex {
            re: scrub_zero(-re),
            im: scrub_zero(-im),
        }
    } else {
        Complex { re, im }
    }
}

#[inline]
fn scrub_zero(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x
    }
}
