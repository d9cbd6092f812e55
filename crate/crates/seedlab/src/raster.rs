//! Maps a pixel grid onto a rectangle of the parameter plane and evaluates the
//! membership oracle at every pixel.
//!
//! With the `parallel` feature (on by default) rows are filled by rayon; the
//! sequential fallback fills them in order. Both paths run the identical
//! per-pixel computation, so the output is bit-identical regardless of the
//! degree of parallelism.

use crate::complex::Complex;
use crate::dynamics::{canonical_seed, classify_orbit};
#[cfg(feature = "parallel")]
use rayon::prelude::*;
use thiserror::Error;

/// Mapping between a pixel grid and a rectangle of the parameter plane.
///
/// Pixel (0,0) is top-left; increasing row index decreases the imaginary
/// coordinate, so written images match the usual orientation (cardioid cusp to
/// the right, positive imaginary axis up).
#[derive(Debug, Clone, PartialEq)]
pub struct Viewport {
    center: Complex,
    width: f64,
    height: f64,
    cols: usize,
    rows: usize,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ViewportError {
    #[error("viewport extents must be finite and positive, got {width} x {height}")]
    BadExtent { width: f64, height: f64 },
    #[error("viewport grid needs at least one pixel per side, got {cols} x {rows}")]
    EmptyGrid { cols: usize, rows: usize },
}

impl Viewport {
    pub fn new(
        center: Complex,
        width: f64,
        height: f64,
        cols: usize,
        rows: usize,
    ) -> Result<Self, ViewportError> {
        if !(width.is_finite() && height.is_finite() && width > 0.0 && height > 0.0) {
            return Err(ViewportError::BadExtent { width, height });
        }
        if cols == 0 || rows == 0 {
            return Err(ViewportError::EmptyGrid { cols, rows });
        }
        Ok(Viewport {
            center,
            width,
            height,
            cols,
            rows,
        })
    }

    pub fn center(&self) -> Complex {
        self.center
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    pub fn height(&self) -> f64 {
        self.height
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Plane-unit extent of one pixel along the real axis.
    pub fn pixel_width(&self) -> f64 {
        self.width / self.cols as f64
    }

    /// Plane-unit extent of one pixel along the imaginary axis.
    pub fn pixel_height(&self) -> f64 {
        self.height / self.rows as f64
    }

    #[inline]
    fn plane_re(&self, col: usize) -> f64 {
        self.center.re - self.width / 2.0 + (col as f64 + 0.5) * self.pixel_width()
    }

    #[inline]
    fn plane_im(&self, row: usize) -> f64 {
        self.center.im + self.height / 2.0 - (row as f64 + 0.5) * self.pixel_height()
    }
}

/// The window used by the CLI defaults and the journey presets: centered a
/// little left of the origin so the classic set and its sweep deformations fit
/// with margin.
pub fn default_viewport() -> Viewport {
    Viewport::new(Complex::new(-0.25, 0.0), 3.2, 3.2, 512, 512)
        .expect("default viewport parameters are valid")
}

/// Parameter-plane coordinate of the CENTER of pixel (col, row).
pub fn pixel_to_plane(viewport: &Viewport, col: usize, row: usize) -> Complex {
    assert!(
        col < viewport.cols && row < viewport.rows,
        "pixel ({col},{row}) outside {}x{} grid",
        viewport.cols,
        viewport.rows
    );
    Complex {
        re: viewport.plane_re(col),
        im: viewport.plane_im(row),
    }
}

/// Per-pixel escape iteration counts and membership mask for one seed.
#[derive(Debug, Clone, PartialEq)]
pub struct EscapeField {
    viewport: Viewport,
    seed: Complex,
    max_iter: u32,
    iterations: Vec<u32>,
    mask: Vec<bool>,
}

impl EscapeField {
    pub fn viewport(&self) -> &Viewport {
        &self.viewport
    }

    /// Canonical representative of the rendered seed (see
    /// [`canonical_seed`](crate::dynamics::canonical_seed)); a seed and its
    /// negation produce equal fields, metadata included.
    pub fn seed(&self) -> Complex {
        self.seed
    }

    pub fn max_iter(&self) -> u32 {
        self.max_iter
    }

    /// Row-major iteration counts, one per pixel.
    pub fn iterations(&self) -> &[u32] {
        &self.iterations
    }

    /// Row-major membership mask; true = orbit never exceeded the escape
    /// radius within `max_iter` applications.
    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn cols(&self) -> usize {
        self.viewport.cols
    }

    pub fn rows(&self) -> usize {
        self.viewport.rows
    }

    pub fn member(&self, col: usize, row: usize) -> bool {
        self.mask[row * self.viewport.cols + col]
    }

    pub fn iteration_count(&self, col: usize, row: usize) -> u32 {
        self.iterations[row * self.viewport.cols + col]
    }

    pub fn member_count(&self) -> usize {
        self.mask.iter().filter(|&&m| m).count()
    }
}

#[derive(Debug, Error)]
pub enum RenderError {
    #[error("cannot allocate a {cols} x {rows} field")]
    GridTooLarge { cols: usize, rows: usize },
}

fn alloc_grid<T: Clone + Default>(len: usize, cols: usize, rows: usize) -> Result<Vec<T>, RenderError> {
    let mut v = Vec::new();
    v.try_reserve_exact(len)
        .map_err(|_| RenderError::GridTooLarge { cols, rows })?;
    v.resize(len, T::default());
    Ok(v)
}

fn fill_row(
    seed: Complex,
    viewport: &Viewport,
    max_iter: u32,
    row: usize,
    iter_row: &mut [u32],
    mask_row: &mut [bool],
) {
    let im = viewport.plane_im(row);
    for (col, (it, member)) in iter_row.iter_mut().zip(mask_row.iter_mut()).enumerate() {
        let q = Complex {
            re: viewport.plane_re(col),
            im,
        };
        let verdict = classify_orbit(seed, q, max_iter);
        *it = verdict.iterations;
        *member = !verdict.escaped;
    }
}

/// Evaluates the membership oracle at the center of every pixel.
///
/// Internally parallel over rows when the `parallel` feature is enabled. On
/// grids too large for memory this fails up front; a partial field is never
/// returned.
pub fn render(seed: Complex, viewport: &Viewport, max_iter: u32) -> Result<EscapeField, RenderError> {
    let seed = canonical_seed(seed);
    let (mut iterations, mut mask) = prepare(viewport, max_iter)?;

    #[cfg(feature = "parallel")]
    iterations
        .par_chunks_mut(viewport.cols)
        .zip(mask.par_chunks_mut(viewport.cols))
        .enumerate()
        .for_each(|(row, (iter_row, mask_row))| {
            fill_row(seed, viewport, max_iter, row, iter_row, mask_row);
        });

    #[cfg(not(feature = "parallel"))]
    fill_all(seed, viewport, max_iter, &mut iterations, &mut mask);

    Ok(assemble(seed, viewport, max_iter, iterations, mask))
}

/// Single-threaded render, always available. Bit-identical to [`render`].
pub fn render_sequential(
    seed: Complex,
    viewport: &Viewport,
    max_iter: u32,
) -> Result<EscapeField, RenderError> {
    let seed = canonical_seed(seed);
    let (mut iterations, mut mask) = prepare(viewport, max_iter)?;
    fill_all(seed, viewport, max_iter, &mut iterations, &mut mask);
    Ok(assemble(seed, viewport, max_iter, iterations, mask))
}

fn prepare(viewport: &Viewport, max_iter: u32) -> Result<(Vec<u32>, Vec<bool>), RenderError> {
    assert!(max_iter >= 1, "max_iter must be at least 1");
    let total = viewport
        .cols
        .checked_mul(viewport.rows)
        .ok_or(RenderError::GridTooLarge {
            cols: viewport.cols,
            rows: viewport.rows,
        })?;
    let iterations = alloc_grid::<u32>(total, viewport.cols, viewport.rows)?;
    let mask = alloc_grid::<bool>(total, viewport.cols, viewport.rows)?;
    Ok((iterations, mask))
}

fn fill_all(
    seed: Complex,
    viewport: &Viewport,
    max_iter: u32,
    iterations: &mut [u32],
    mask: &mut [bool],
) {
    for (row, (iter_row, mask_row)) in iterations
        .chunks_mut(viewport.cols)
        .zip(mask.chunks_mut(viewport.cols))
        .enumerate()
    {
        fill_row(seed, viewport, max_iter, row, iter_row, mask_row);
    }
}

fn assemble(
    seed: Complex,
    viewport: &Viewport,
    max_iter: u32,
    iterations: Vec<u32>,
    mask: Vec<bool>,
) -> EscapeField {
    EscapeField {
        viewport: viewport.clone(),
        seed,
        max_iter,
        iterations,
        mask,
    }
}
