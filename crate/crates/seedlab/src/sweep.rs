//! Seed-path journeys: render one frame per seed step, label it, collect the
//! connectivity records, and detect the qualitative events along the way.

use std::io;

use thiserror::Error;

use crate::complex::Complex;
use crate::connectivity::{label_components, Connectivity, ConnectivityRecord};
use crate::raster::{default_viewport, render, EscapeField, RenderError, Viewport};
use crate::stats::spearman_rho;

/// Linear seed segment, endpoints included.
#[derive(Debug, Clone, PartialEq)]
pub struct SeedPath {
    start: Complex,
    end: Complex,
    steps: usize,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SeedPathError {
    #[error("a path needs at least 2 steps, got {steps}")]
    TooFewSteps { steps: usize },
}

impl SeedPath {
    pub fn new(start: Complex, end: Complex, steps: usize) -> Result<Self, SeedPathError> {
        if steps < 2 {
            return Err(SeedPathError::TooFewSteps { steps });
        }
        Ok(SeedPath { start, end, steps })
    }

    pub fn start(&self) -> Complex {
        self.start
    }

    pub fn end(&self) -> Complex {
        self.end
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    /// Seed of step k: start + (k/(steps−1))·(end − start), with the
    /// endpoints returned exactly.
    pub fn seed_at(&self, step: usize) -> Complex {
        assert!(step < self.steps, "step {step} beyond {} steps", self.steps);
        if step == 0 {
            return self.start;
        }
        if step == self.steps - 1 {
            return self.end;
        }
        let t = step as f64 / (self.steps - 1) as f64;
        Complex {
            re: self.start.re + t * (self.end.re - self.start.re),
            im: self.start.im + t * (self.end.im - self.start.im),
        }
    }
}

/// Ordered per-step connectivity records for one journey.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub path: SeedPath,
    pub viewport: Viewport,
    pub max_iter: u32,
    pub connectivity: Connectivity,
    pub records: Vec<ConnectivityRecord>,
}

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("rendering step {step} failed")]
    Render {
        step: usize,
        #[source]
        source: RenderError,
    },
    #[error("frame sink failed at step {step}")]
    Sink {
        step: usize,
        #[source]
        source: io::Error,
    },
}

/// Per-step consumer of rendered fields, e.g. a frame writer.
pub type FrameSink<'a> = dyn FnMut(usize, &EscapeField) -> io::Result<()> + 'a;

/// Renders one frame per path step, labels it, and collects the records in
/// step order. A sink, when given, is invoked sequentially in step order; a
/// sink failure aborts the sweep and no partial report is returned.
pub fn run_sweep(
    path: &SeedPath,
    viewport: &Viewport,
    max_iter: u32,
    connectivity: Connectivity,
    mut frame_sink: Option<&mut FrameSink<'_>>,
) -> Result<SweepReport, SweepError> {
    let mut records = Vec::with_capacity(path.steps());
    for step in 0..path.steps() {
        let field = render(path.seed_at(step), viewport, max_iter)
            .map_err(|source| SweepError::Render { step, source })?;
        let labels = label_components(field.mask(), field.cols(), field.rows(), connectivity);
        records.push(ConnectivityRecord::new(field.seed(), &labels));
        if let Some(sink) = frame_sink.as_mut() {
            sink(step, &field).map_err(|source| SweepError::Sink { step, source })?;
        }
    }
    Ok(SweepReport {
        path: path.clone(),
        viewport: viewport.clone(),
        max_iter,
        connectivity,
        records,
    })
}

/// A named, ready-to-run journey.
#[derive(Debug, Clone)]
pub struct JourneyPreset {
    pub name: &'static str,
    pub summary: &'static str,
    pub path: SeedPath,
    pub viewport: Viewport,
    pub max_iter: u32,
}

/// The two bundled journeys. Both move the seed away from the critical point
/// in 0.05 steps over a fixed window, one along the imaginary axis and one
/// along the real axis.
pub fn journey_presets() -> Vec<JourneyPreset> {
    let viewport = default_viewport();
    vec![
        JourneyPreset {
            name: "imaginary",
            summary: "seed runs 0 -> 0-1.6i in 33 steps",
            path: SeedPath::new(Complex::ZERO, Complex::new(0.0, -1.6), 33)
                .expect("preset path is valid"),
            viewport: viewport.clone(),
            max_iter: 256,
        },
        JourneyPreset {
            name: "real",
            summary: "seed runs 0 -> 1.6 in 33 steps",
            path: SeedPath::new(Complex::ZERO, Complex::new(1.6, 0.0), 33)
                .expect("preset path is valid"),
            viewport,
            max_iter: 256,
        },
    ]
}

/// Looks a preset up by name.
pub fn find_preset(name: &str) -> Option<JourneyPreset> {
    journey_presets().into_iter().find(|p| p.name == name)
}

/// First step whose component count reaches `count_threshold` while the
/// largest component holds less than 95% of the member pixels.
///
/// Both conditions are required: peripheral pixel dust raises the component
/// count almost immediately, but only a genuine split of the main body pulls
/// the largest fraction down.
pub fn detect_split(report: &SweepReport, count_threshold: usize) -> Option<usize> {
    assert!(count_threshold >= 2, "a split needs at least two components");
    report
        .records
        .iter()
        .position(|r| r.component_count >= count_threshold && r.largest_fraction < 0.95)
}

/// Trend of the disconnectivity curve over a report.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrendStatistic {
    /// Spearman rank correlation between step index and disconnectivity over
    /// the non-empty records.
    pub spearman_rho: f64,
    pub first_value: f64,
    pub last_value: f64,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TrendError {
    #[error("trend needs at least 3 non-empty records, found {found}")]
    InsufficientData { found: usize },
}

/// Quantifies monotone growth of the disconnectivity curve without asserting
/// strict monotonicity. Empty frames are excluded: their disconnectivity is a
/// vacuous 0 and would read as reconnection.
pub fn trend_statistic(report: &SweepReport) -> Result<TrendStatistic, TrendError> {
    let points: Vec<(f64, f64)> = report
        .records
        .iter()
        .enumerate()
        .filter(|(_, r)| !r.empty)
        .map(|(step, r)| (step as f64, r.disconnectivity))
        .collect();
    if points.len() < 3 {
        return Err(TrendError::InsufficientData {
            found: points.len(),
        });
    }
    let xs: Vec<f64> = points.iter().map(|p| p.0).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1).collect();
    Ok(TrendStatistic {
        spearman_rho: spearman_rho(&xs, &ys),
        first_value: ys[0],
        last_value: *ys.last().unwrap(),
    })
}
