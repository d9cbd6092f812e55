//! Generalized Mandelbrot sets for arbitrary seeds.
//!
//! The classic set charts which parameters q keep the orbit of the critical
//! point bounded under z ↦ z² + q. This crate renders the same chart for any
//! seed z₀, measures how raster-scale connectivity degrades as the seed moves
//! away from the critical point, and drives whole seed-path sweeps that emit
//! one frame and one connectivity record per step.
//!
//! Modules, bottom up:
//!
//! - [`complex`]: the number type.
//! - [`dynamics`]: orbit step, escape bound, membership verdict.
//! - [`raster`]: pixel grid ↔ plane mapping and parallel field rendering.
//! - [`connectivity`]: component labeling and the disconnectivity metric.
//! - [`sweep`]: seed-path journeys, presets, split detection, trend stats.
//! - [`pgm`] / [`report`]: byte-exact graymap and CSV serialization.

pub mod complex;
pub mod connectivity;
pub mod dynamics;
pub mod pgm;
pub mod raster;
pub mod report;
pub mod stats;
pub mod sweep;

pub use complex::Complex;
pub use connectivity::{
    component_stats, disconnectivity_rate, label_components, ComponentStats, Connectivity,
    ConnectivityMetrics, ConnectivityRecord, LabelField, PlaneRect,
};
pub use dynamics::{canonical_seed, classify_orbit, critical_point, escape_radius, quad_step,
    OrbitResult};
pub use raster::{
    default_viewport, pixel_to_plane, render, render_sequential, EscapeField, RenderError,
    Viewport, ViewportError,
};
pub use sweep::{
    detect_split, find_preset, journey_presets, run_sweep, trend_statistic, JourneyPreset,
    SeedPath, SeedPathError, SweepError, SweepReport, TrendError, TrendStatistic,
};
