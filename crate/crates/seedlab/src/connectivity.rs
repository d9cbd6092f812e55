//! Connected-component labeling of membership masks and the disconnectivity
//! metric derived from the labeled components.

use std::fmt;
use std::str::FromStr;

use crate::complex::Complex;
use crate::dynamics::canonical_seed;
use crate::raster::{pixel_to_plane, Viewport};

/// Pixel adjacency: edge neighbors only, or edges plus diagonals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Connectivity {
    Four,
    Eight,
}

impl fmt::Display for Connectivity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Connectivity::Four => write!(f, "4"),
            Connectivity::Eight => write!(f, "8"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseConnectivityError(String);

impl fmt::Display for ParseConnectivityError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "connectivity must be 4 or 8, got {:?}", self.0)
    }
}

impl std::error::Error for ParseConnectivityError {}

impl FromStr for Connectivity {
    type Err = ParseConnectivityError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "4" => Ok(Connectivity::Four),
            "8" => Ok(Connectivity::Eight),
            other => Err(ParseConnectivityError(other.to_owned())),
        }
    }
}

/// Per-pixel component labels. 0 marks non-members; member pixels carry dense
/// ids 1..=K assigned in row-major first-encounter order.
#[derive(Debug, Clone, PartialEq)]
pub struct LabelField {
    labels: Vec<u32>,
    cols: usize,
    rows: usize,
    component_sizes: Vec<usize>,
    connectivity: Connectivity,
}

impl LabelField {
    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn label_at(&self, col: usize, row: usize) -> u32 {
        self.labels[row * self.cols + col]
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn connectivity(&self) -> Connectivity {
        self.connectivity
    }

    pub fn component_count(&self) -> usize {
        self.component_sizes.len()
    }

    /// Pixel count of each component, indexed by id − 1.
    pub fn component_sizes(&self) -> &[usize] {
        &self.component_sizes
    }

    pub fn size_of(&self, id: u32) -> usize {
        self.component_sizes[(id - 1) as usize]
    }

    pub fn member_pixels(&self) -> usize {
        self.component_sizes.iter().sum()
    }

    /// Drops components smaller than `min_size` into the background and
    /// re-densifies the remaining ids, preserving their order. Single-pixel
    /// members near the boundary are iteration-cap artifacts; this filter is
    /// off by default everywhere and reported metrics never apply it.
    pub fn filter_min_size(&self, min_size: usize) -> LabelField {
        let mut remap = vec![0u32; self.component_sizes.len() + 1];
        let mut sizes = Vec::new();
        for (idx, &size) in self.component_sizes.iter().enumerate() {
            if size >= min_size {
                sizes.push(size);
                remap[idx + 1] = sizes.len() as u32;
            }
        }
        let labels = self.labels.iter().map(|&l| remap[l as usize]).collect();
        LabelField {
            labels,
            cols: self.cols,
            rows: self.rows,
            component_sizes: sizes,
            connectivity: self.connectivity,
        }
    }
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new() -> Self {
        // slot 0 is the background and never unioned
        UnionFind { parent: vec![0] }
    }

    fn make_set(&mut self) -> u32 {
        let id = self.parent.len() as u32;
        self.parent.push(id);
        id
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let grandparent = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = grandparent;
            x = grandparent;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            // attach the larger root under the smaller so roots stay the
            // earliest provisional label of their component
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi as usize] = lo;
        }
    }
}

/// Two-pass union-find labeling of a row-major boolean mask.
///
/// Ids are dense 1..=K in first-encounter (row-major) order, so the labeling
/// is deterministic.
pub fn label_components(
    mask: &[bool],
    cols: usize,
    rows: usize,
    connectivity: Connectivity,
) -> LabelField {
    assert!(cols > 0 && rows > 0, "mask grid must be non-empty");
    assert_eq!(mask.len(), cols * rows, "mask length must match grid");

    let mut provisional = vec![0u32; mask.len()];
    let mut forest = UnionFind::new();
    let mut neighbors = [0u32; 4];

    for row in 0..rows {
        for col in 0..cols {
            let idx = row * cols + col;
            if !mask[idx] {
                continue;
            }
            let mut found = 0;
            if col > 0 && mask[idx - 1] {
                neighbors[found] = provisional[idx - 1];
                found += 1;
            }
            if row > 0 {
                let above = idx - cols;
                if mask[above] {
                    neighbors[found] = provisional[above];
                    found += 1;
                }
                if connectivity == Connectivity::Eight {
                    if col > 0 && mask[above - 1] {
                        neighbors[found] = provisional[above - 1];
                        found += 1;
                    }
                    if col + 1 < cols && mask[above + 1] {
                        neighbors[found] = provisional[above + 1];
                        found += 1;
                    }
                }
            }
            if found == 0 {
                provisional[idx] = forest.make_set();
            } else {
                let smallest = *neighbors[..found].iter().min().unwrap();
                provisional[idx] = smallest;
                for &n in &neighbors[..found] {
                    forest.union(smallest, n);
                }
            }
        }
    }

    let mut dense = vec![0u32; forest.parent.len()];
    let mut labels = vec![0u32; mask.len()];
    let mut sizes: Vec<usize> = Vec::new();
    for idx in 0..mask.len() {
        if !mask[idx] {
            continue;
        }
        let root = forest.find(provisional[idx]);
        let id = if dense[root as usize] == 0 {
            sizes.push(0);
            dense[root as usize] = sizes.len() as u32;
            sizes.len() as u32
        } else {
            dense[root as usize]
        };
        labels[idx] = id;
        sizes[(id - 1) as usize] += 1;
    }

    LabelField {
        labels,
        cols,
        rows,
        component_sizes: sizes,
        connectivity,
    }
}

/// Scale-normalized fragmentation metrics of a labeled field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConnectivityMetrics {
    pub component_count: usize,
    pub member_pixels: usize,
    /// Largest component's share of the member pixels; 1 for an empty mask.
    pub largest_fraction: f64,
    /// 1 − largest_fraction: zero exactly when the raster set is connected
    /// (or empty, which the `empty` flag calls out separately).
    pub disconnectivity: f64,
    pub empty: bool,
}

/// Computes the disconnectivity rate of a labeled mask.
///
/// An empty mask is vacuously connected: disconnectivity 0 with the `empty`
/// flag set, so downstream plots can break the curve instead of reading the
/// tail of a journey as reconnection.
pub fn disconnectivity_rate(labels: &LabelField) -> ConnectivityMetrics {
    let member_pixels = labels.member_pixels();
    if member_pixels == 0 {
        return ConnectivityMetrics {
            component_count: 0,
            member_pixels: 0,
            largest_fraction: 1.0,
            disconnectivity: 0.0,
            empty: true,
        };
    }
    let largest = *labels.component_sizes().iter().max().unwrap();
    let largest_fraction = largest as f64 / member_pixels as f64;
    ConnectivityMetrics {
        component_count: labels.component_count(),
        member_pixels,
        largest_fraction,
        disconnectivity: 1.0 - largest_fraction,
        empty: false,
    }
}

/// One seed's connectivity measurement, as reported in CSV rows.
///
/// The stored seed is the canonical representative under the z₀ ↦ −z₀
/// symmetry, so sweeps that differ only by seed sign produce equal records.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConnectivityRecord {
    pub seed: Complex,
    pub component_count: usize,
    pub member_pixels: usize,
    pub largest_fraction: f64,
    pub disconnectivity: f64,
    pub empty: bool,
}

impl ConnectivityRecord {
    pub fn new(seed: Complex, labels: &LabelField) -> Self {
        let m = disconnectivity_rate(labels);
        ConnectivityRecord {
            seed: canonical_seed(seed),
            component_count: m.component_count,
            member_pixels: m.member_pixels,
            largest_fraction: m.largest_fraction,
            disconnectivity: m.disconnectivity,
            empty: m.empty,
        }
    }
}

/// Plane-unit axis-aligned rectangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneRect {
    pub min_re: f64,
    pub max_re: f64,
    pub min_im: f64,
    pub max_im: f64,
}

/// Geometry of one labeled component.
#[derive(Debug, Clone, PartialEq)]
pub struct ComponentStats {
    pub id: u32,
    pub size_pixels: usize,
    /// size × pixel area, in plane units.
    pub area_plane_units: f64,
    /// Mean of the member pixel centers.
    pub centroid: Complex,
    /// Tight bound over the member pixels' plane-unit extents.
    pub bbox: PlaneRect,
}

/// Per-component pixel counts, areas, centroids, and bounding boxes, sorted by
/// size descending with ties broken by smaller id.
pub fn component_stats(labels: &LabelField, viewport: &Viewport) -> Vec<ComponentStats> {
    assert_eq!(labels.cols(), viewport.cols(), "grid width mismatch");
    assert_eq!(labels.rows(), viewport.rows(), "grid height mismatch");

    struct Accum {
        count: usize,
        sum_re: f64,
        sum_im: f64,
        bbox: PlaneRect,
    }

    let half_w = viewport.pixel_width() / 2.0;
    let half_h = viewport.pixel_height() / 2.0;
    let mut accum: Vec<Option<Accum>> = (0..labels.component_count()).map(|_| None).collect();

    for row in 0..labels.rows() {
        for col in 0..labels.cols() {
            let id = labels.label_at(col, row);
            if id == 0 {
                continue;
            }
            let center = pixel_to_plane(viewport, col, row);
            let slot = &mut accum[(id - 1) as usize];
            match slot {
                Some(a) => {
                    a.count += 1;
                    a.sum_re += center.re;
                    a.sum_im += center.im;
                    a.bbox.min_re = a.bbox.min_re.min(center.re - half_w);
                    a.bbox.max_re = a.bbox.max_re.max(center.re + half_w);
                    a.bbox.min_im = a.bbox.min_im.min(center.im - half_h);
                    a.bbox.max_im = a.bbox.max_im.max(center.im + half_h);
                }
                None => {
                    *slot = Some(Accum {
                        count: 1,
                        sum_re: center.re,
                        sum_im: center.im,
                        bbox: PlaneRect {
                            min_re: center.re - half_w,
                            max_re: center.re + half_w,
                            min_im: center.im - half_h,
                            max_im: center.im + half_h,
                        },
                    });
                }
            }
        }
    }

    let pixel_area = viewport.pixel_width() * viewport.pixel_height();
    let mut stats: Vec<ComponentStats> = accum
        .into_iter()
        .enumerate()
        .map(|(idx, a)| {
            let a = a.expect("every dense id labels at least one pixel");
            ComponentStats {
                id: idx as u32 + 1,
                size_pixels: a.count,
                area_plane_units: a.count as f64 * pixel_area,
                centroid: Complex::new(a.sum_re / a.count as f64, a.sum_im / a.count as f64),
                bbox: a.bbox,
            }
        })
        .collect();
    stats.sort_by(|a, b| b.size_pixels.cmp(&a.size_pixels).then(a.id.cmp(&b.id)));
    stats
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn grid(rows: &[&[u8]]) -> (Vec<bool>, usize, usize) {
        let r = rows.len();
        let c = rows[0].len();
        let mask = rows
            .iter()
            .flat_map(|row| row.iter().map(|&v| v != 0))
            .collect();
        (mask, c, r)
    }

    #[test]
    fn all_false_mask_has_no_components() {
        let labels = label_components(&[false; 6], 3, 2, Connectivity::Eight);
        assert_eq!(labels.component_count(), 0);
        assert!(labels.labels().iter().all(|&l| l == 0));
    }

    #[test]
    fn single_pixel_is_one_component() {
        let labels = label_components(&[false, true, false, false], 2, 2, Connectivity::Four);
        assert_eq!(labels.component_count(), 1);
        assert_eq!(labels.component_sizes(), &[1]);
    }

    #[test]
    fn diagonal_pixels_split_under_four_join_under_eight() {
        let (mask, c, r) = grid(&[&[1, 0], &[0, 1]]);
        assert_eq!(
            label_components(&mask, c, r, Connectivity::Four).component_count(),
            2
        );
        assert_eq!(
            label_components(&mask, c, r, Connectivity::Eight).component_count(),
            1
        );
    }

    #[test]
    fn ids_follow_first_encounter_order() {
        let (mask, c, r) = grid(&[
            &[1, 0, 1, 1],
            &[0, 1, 1, 0],
            &[0, 0, 0, 0],
            &[0, 0, 0, 1],
        ]);
        let labels = label_components(&mask, c, r, Connectivity::Four);
        assert_eq!(
            labels.labels(),
            &[
                1, 0, 2, 2, //
                0, 2, 2, 0, //
                0, 0, 0, 0, //
                0, 0, 0, 3,
            ]
        );
        assert_eq!(labels.component_sizes(), &[1, 4, 1]);
    }

    #[test]
    fn u_shape_merges_into_one_component() {
        // the two arms meet only at the bottom; the second pass must fuse
        // their provisional labels
        let (mask, c, r) = grid(&[&[1, 0, 1], &[1, 0, 1], &[1, 1, 1]]);
        let labels = label_components(&mask, c, r, Connectivity::Four);
        assert_eq!(labels.component_count(), 1);
        assert_eq!(labels.component_sizes(), &[7]);
    }

    #[test]
    fn disconnectivity_of_three_one_split() {
        let (mask, c, r) = grid(&[&[1, 1, 1, 0, 1]]);
        let labels = label_components(&mask, c, r, Connectivity::Eight);
        let m = disconnectivity_rate(&labels);
        assert_eq!(m.component_count, 2);
        assert_eq!(m.member_pixels, 4);
        assert_eq!(m.largest_fraction, 0.75);
        assert_eq!(m.disconnectivity, 0.25);
        assert!(!m.empty);
    }

    #[test]
    fn single_component_has_zero_disconnectivity() {
        let (mask, c, r) = grid(&[&[1, 1], &[1, 1]]);
        let m = disconnectivity_rate(&label_components(&mask, c, r, Connectivity::Four));
        assert_eq!(m.largest_fraction, 1.0);
        assert_eq!(m.disconnectivity, 0.0);
    }

    #[test]
    fn empty_mask_is_flagged_not_reconnected() {
        let m = disconnectivity_rate(&label_components(&[false; 4], 2, 2, Connectivity::Four));
        assert!(m.empty);
        assert_eq!(m.component_count, 0);
        assert_eq!(m.disconnectivity, 0.0);
        assert_eq!(m.largest_fraction, 1.0);
    }

    #[test]
    fn filter_drops_small_components_and_redensifies() {
        let (mask, c, r) = grid(&[&[1, 1, 1, 0, 1]]);
        let labels = label_components(&mask, c, r, Connectivity::Four);
        let filtered = labels.filter_min_size(2);
        assert_eq!(filtered.component_count(), 1);
        assert_eq!(filtered.component_sizes(), &[3]);
        assert_eq!(filtered.labels(), &[1, 1, 1, 0, 0]);
        // default-off: filtering with 1 is the identity
        assert_eq!(labels.filter_min_size(1), labels);
    }

    #[test]
    fn stats_of_single_pixel_in_coarse_window() {
        let viewport = Viewport::new(Complex::ZERO, 4.0, 4.0, 2, 2).unwrap();
        let labels = label_components(&[true, false, false, false], 2, 2, Connectivity::Eight);
        let stats = component_stats(&labels, &viewport);
        assert_eq!(stats.len(), 1);
        assert_eq!(stats[0].size_pixels, 1);
        assert_eq!(stats[0].area_plane_units, 4.0);
        assert_eq!(stats[0].centroid, Complex::new(-1.0, 1.0));
        assert_eq!(
            stats[0].bbox,
            PlaneRect {
                min_re: -2.0,
                max_re: 0.0,
                min_im: 0.0,
                max_im: 2.0
            }
        );
    }

    #[test]
    fn stats_of_empty_labels_is_empty() {
        let viewport = Viewport::new(Complex::ZERO, 1.0, 1.0, 2, 2).unwrap();
        let labels = label_components(&[false; 4], 2, 2, Connectivity::Eight);
        assert!(component_stats(&labels, &viewport).is_empty());
    }

    #[test]
    fn equal_components_tie_break_by_id() {
        let viewport = Viewport::new(Complex::ZERO, 4.0, 4.0, 4, 1).unwrap();
        let (mask, c, r) = grid(&[&[1, 0, 0, 1]]);
        let labels = label_components(&mask, c, r, Connectivity::Four);
        let stats = component_stats(&labels, &viewport);
        assert_eq!(stats.len(), 2);
        assert_eq!(stats[0].id, 1);
        assert_eq!(stats[1].id, 2);
    }

    // Brute-force flood fill, the independent route the labeling is checked
    // against.
    fn flood_fill_components(
        mask: &[bool],
        cols: usize,
        rows: usize,
        connectivity: Connectivity,
    ) -> Vec<usize> {
        let mut seen = vec![false; mask.len()];
        let mut sizes = Vec::new();
        let offsets: &[(isize, isize)] = match connectivity {
            Connectivity::Four => &[(-1, 0), (1, 0), (0, -1), (0, 1)],
            Connectivity::Eight => &[
                (-1, -1),
                (-1, 0),
                (-1, 1),
                (0, -1),
                (0, 1),
                (1, -1),
                (1, 0),
                (1, 1),
            ],
        };
        for start in 0..mask.len() {
            if !mask[start] || seen[start] {
                continue;
            }
            let mut stack = vec![start];
            seen[start] = true;
            let mut size = 0;
            while let Some(idx) = stack.pop() {
                size += 1;
                let (row, col) = ((idx / cols) as isize, (idx % cols) as isize);
                for &(dr, dc) in offsets {
                    let (nr, nc) = (row + dr, col + dc);
                    if nr < 0 || nc < 0 || nr >= rows as isize || nc >= cols as isize {
                        continue;
                    }
                    let n = nr as usize * cols + nc as usize;
                    if mask[n] && !seen[n] {
                        seen[n] = true;
                        stack.push(n);
                    }
                }
            }
            sizes.push(size);
        }
        sizes
    }

    fn arb_mask() -> impl Strategy<Value = (Vec<bool>, usize, usize)> {
        (1usize..=16, 1usize..=16).prop_flat_map(|(cols, rows)| {
            proptest::collection::vec(any::<bool>(), cols * rows)
                .prop_map(move |mask| (mask, cols, rows))
        })
    }

    proptest! {
        #[test]
        fn mask_is_reconstructible_from_labels((mask, cols, rows) in arb_mask(),
                                               eight in any::<bool>()) {
            let kind = if eight { Connectivity::Eight } else { Connectivity::Four };
            let labels = label_components(&mask, cols, rows, kind);
            let rebuilt: Vec<bool> = labels.labels().iter().map(|&l| l > 0).collect();
            prop_assert_eq!(rebuilt, mask);
        }

        #[test]
        fn labeling_matches_flood_fill((mask, cols, rows) in arb_mask(),
                                       eight in any::<bool>()) {
            let kind = if eight { Connectivity::Eight } else { Connectivity::Four };
            let labels = label_components(&mask, cols, rows, kind);
            let oracle = flood_fill_components(&mask, cols, rows, kind);
            prop_assert_eq!(labels.component_count(), oracle.len());
            let mut got: Vec<usize> = labels.component_sizes().to_vec();
            let mut want = oracle;
            got.sort_unstable();
            want.sort_unstable();
            prop_assert_eq!(got, want);
        }

        #[test]
        fn adjacent_members_share_labels((mask, cols, rows) in arb_mask(),
                                         eight in any::<bool>()) {
            let kind = if eight { Connectivity::Eight } else { Connectivity::Four };
            let labels = label_components(&mask, cols, rows, kind);
            for row in 0..rows {
                for col in 0..cols {
                    let here = labels.label_at(col, row);
                    if here == 0 {
                        continue;
                    }
                    let diag = kind == Connectivity::Eight;
                    let check = |c: usize, r: usize| {
                        let there = labels.label_at(c, r);
                        if there != 0 {
                            assert_eq!(here, there, "adjacent members split at ({col},{row})");
                        }
                    };
                    if col + 1 < cols { check(col + 1, row); }
                    if row + 1 < rows { check(col, row + 1); }
                    if diag && col + 1 < cols && row + 1 < rows { check(col + 1, row + 1); }
                    if diag && col > 0 && row + 1 < rows { check(col - 1, row + 1); }
                }
            }
        }

        #[test]
        fn eight_never_fragments_more_than_four((mask, cols, rows) in arb_mask()) {
            let four = label_components(&mask, cols, rows, Connectivity::Four);
            let eight = label_components(&mask, cols, rows, Connectivity::Eight);
            prop_assert!(eight.component_count() <= four.component_count());
        }

        #[test]
        fn disconnectivity_stays_in_unit_interval((mask, cols, rows) in arb_mask(),
                                                  eight in any::<bool>()) {
            let kind = if eight { Connectivity::Eight } else { Connectivity::Four };
            let m = disconnectivity_rate(&label_components(&mask, cols, rows, kind));
            prop_assert!((0.0..=1.0).contains(&m.disconnectivity));
            prop_assert_eq!(m.disconnectivity == 0.0, m.component_count <= 1);
            prop_assert_eq!(m.component_count == 0, m.empty);
            prop_assert_eq!(m.member_pixels == 0, m.empty);
        }
    }
}
