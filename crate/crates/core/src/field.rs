//! In-memory light fields.
//!
//! A [`LightField`] is a `grid_rows x grid_cols` grid of 8-bit RGB [`View`]s
//! stored row-major by grid position. Codec and renderer work on [`Planar`],
//! three real-valued planes indexed `(k, l, y, x)` with `x` fastest, so every
//! view is a contiguous raster and the grid row `k` pairs with the vertical
//! pixel axis.

use crate::error::{Error, Result};
use crate::scalar::{to_u8, Real};

/// One sub-aperture image: 8-bit RGB, row-major, channel-interleaved.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct View {
    width: usize,
    height: usize,
    samples: Vec<u8>,
}

impl View {
    pub fn new(width: usize, height: usize, samples: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::Shape(format!("view must be non-empty, got {width}x{height}")));
        }
        if samples.len() != width * height * 3 {
            return Err(Error::Shape(format!(
                "{width}x{height} view needs {} samples, got {}",
                width * height * 3,
                samples.len()
            )));
        }
        Ok(View { width, height, samples })
    }

    /// A view filled with a single colour.
    pub fn filled(width: usize, height: usize, rgb: [u8; 3]) -> Result<Self> {
        let samples = rgb.iter().copied().cycle().take(width * height * 3).collect();
        View::new(width, height, samples)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn samples(&self) -> &[u8] {
        &self.samples
    }

    pub fn pixel(&self, x: usize, y: usize) -> [u8; 3] {
        let i = (y * self.width + x) * 3;
        [self.samples[i], self.samples[i + 1], self.samples[i + 2]]
    }

    pub fn into_samples(self) -> Vec<u8> {
        self.samples
    }
}

/// A 4D light field `L(k, l, m, n)` with per-dataset disparity metadata.
#[derive(Clone, Debug, PartialEq)]
pub struct LightField {
    grid_rows: usize,
    grid_cols: usize,
    views: Vec<View>,
    disparity_min: f64,
    disparity_max: f64,
}

impl LightField {
    pub fn new(
        grid_rows: usize,
        grid_cols: usize,
        views: Vec<View>,
        disparity_min: f64,
        disparity_max: f64,
    ) -> Result<Self> {
        if grid_rows == 0 || grid_cols == 0 {
            return Err(Error::Shape(format!("empty grid {grid_rows}x{grid_cols}")));
        }
        if views.len() != grid_rows * grid_cols {
            return Err(Error::Shape(format!(
                "{grid_rows}x{grid_cols} grid needs {} views, got {}",
                grid_rows * grid_cols,
                views.len()
            )));
        }
        let (w, h) = (views[0].width, views[0].height);
        if let Some(i) = views.iter().position(|v| v.width != w || v.height != h) {
            return Err(Error::Load {
                row: i / grid_cols,
                col: i % grid_cols,
                reason: format!(
                    "view is {}x{}, expected {w}x{h}",
                    views[i].width, views[i].height
                ),
            });
        }
        if !(disparity_min <= disparity_max) {
            return Err(Error::Param(format!(
                "disparity range {disparity_min}..{disparity_max} is empty"
            )));
        }
        Ok(LightField { grid_rows, grid_cols, views, disparity_min, disparity_max })
    }

    pub fn grid_rows(&self) -> usize {
        self.grid_rows
    }

    pub fn grid_cols(&self) -> usize {
        self.grid_cols
    }

    pub fn width(&self) -> usize {
        self.views[0].width
    }

    pub fn height(&self) -> usize {
        self.views[0].height
    }

    pub fn views(&self) -> &[View] {
        &self.views
    }

    pub fn view(&self, row: usize, col: usize) -> &View {
        &self.views[row * self.grid_cols + col]
    }

    pub fn disparity_min(&self) -> f64 {
        self.disparity_min
    }

    pub fn disparity_max(&self) -> f64 {
        self.disparity_max
    }

    /// Same grid and view size, ignoring samples and metadata.
    pub fn same_geometry(&self, other: &LightField) -> bool {
        self.grid_rows == other.grid_rows
            && self.grid_cols == other.grid_cols
            && self.width() == other.width()
            && self.height() == other.height()
    }

    /// Total pixel count `K * L * width * height`.
    pub fn pixel_count(&self) -> usize {
        self.views.len() * self.width() * self.height()
    }

    pub fn to_planar<T: Real>(&self) -> Planar<T> {
        let dims = Dims {
            grid_rows: self.grid_rows,
            grid_cols: self.grid_cols,
            height: self.height(),
            width: self.width(),
        };
        let mut planes: [Vec<T>; 3] = std::array::from_fn(|_| Vec::with_capacity(dims.len()));
        for view in &self.views {
            for px in view.samples.chunks_exact(3) {
                for (plane, &s) in planes.iter_mut().zip(px) {
                    plane.push(T::of(f64::from(s)));
                }
            }
        }
        Planar { dims, planes, disparity: (self.disparity_min, self.disparity_max) }
    }

    pub fn from_planar<T: Real>(pf: &Planar<T>) -> Result<Self> {
        let d = pf.dims;
        let view_len = d.height * d.width;
        let mut views = Vec::with_capacity(d.views());
        for v in 0..d.views() {
            let mut samples = Vec::with_capacity(view_len * 3);
            for i in v * view_len..(v + 1) * view_len {
                for plane in &pf.planes {
                    let s = plane[i];
                    let byte = to_u8(s).ok_or_else(|| {
                        Error::Numeric(format!(
                            "non-finite sample {:?} in view ({}, {})",
                            s,
                            v / d.grid_cols,
                            v % d.grid_cols
                        ))
                    })?;
                    samples.push(byte);
                }
            }
            views.push(View { width: d.width, height: d.height, samples });
        }
        LightField::new(d.grid_rows, d.grid_cols, views, pf.disparity.0, pf.disparity.1)
    }
}

/// Extent of a planar field: `grid_rows x grid_cols x height x width`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Dims {
    pub grid_rows: usize,
    pub grid_cols: usize,
    pub height: usize,
    pub width: usize,
}

impl Dims {
    pub fn views(&self) -> usize {
        self.grid_rows * self.grid_cols
    }

    pub fn len(&self) -> usize {
        self.views() * self.height * self.width
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, k: usize, l: usize, y: usize, x: usize) -> usize {
        ((k * self.grid_cols + l) * self.height + y) * self.width + x
    }
}

/// Three real-valued channel planes over a light field, index order `(k, l, y, x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Planar<T> {
    dims: Dims,
    planes: [Vec<T>; 3],
    disparity: (f64, f64),
}

impl<T: Real> Planar<T> {
    pub fn new(dims: Dims, planes: [Vec<T>; 3]) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::Shape(format!("empty planar dims {dims:?}")));
        }
        if let Some(p) = planes.iter().find(|p| p.len() != dims.len()) {
            return Err(Error::Shape(format!(
                "plane has {} samples, dims {dims:?} need {}",
                p.len(),
                dims.len()
            )));
        }
        Ok(Planar { dims, planes, disparity: (0.0, 0.0) })
    }

    pub fn from_fn(dims: Dims, mut f: impl FnMut(usize, usize, usize, usize, usize) -> T) -> Self {
        let planes = std::array::from_fn(|c| {
            let mut plane = Vec::with_capacity(dims.len());
            for k in 0..dims.grid_rows {
                for l in 0..dims.grid_cols {
                    for y in 0..dims.height {
                        for x in 0..dims.width {
                            plane.push(f(c, k, l, y, x));
                        }
                    }
                }
            }
            plane
        });
        Planar { dims, planes, disparity: (0.0, 0.0) }
    }

    pub fn with_disparity(mut self, min: f64, max: f64) -> Self {
        self.disparity = (min, max);
        self
    }

    pub fn dims(&self) -> Dims {
        self.dims
    }

    pub fn disparity(&self) -> (f64, f64) {
        self.disparity
    }

    pub fn plane(&self, c: usize) -> &[T] {
        &self.planes[c]
    }

    pub fn plane_mut(&mut self, c: usize) -> &mut [T] {
        &mut self.planes[c]
    }

    pub fn planes(&self) -> &[Vec<T>; 3] {
        &self.planes
    }

    pub fn into_planes(self) -> [Vec<T>; 3] {
        self.planes
    }

    pub fn get(&self, c: usize, k: usize, l: usize, y: usize, x: usize) -> T {
        self.planes[c][self.dims.index(k, l, y, x)]
    }

    /// Applies `f` to every sample of every plane.
    pub fn map(&self, f: impl Fn(T) -> T) -> Self {
        Planar {
            dims: self.dims,
            planes: std::array::from_fn(|c| self.planes[c].iter().map(|&v| f(v)).collect()),
            disparity: self.disparity,
        }
    }

    /// Converts to another scalar type.
    pub fn cast<U: Real>(&self) -> Planar<U> {
        Planar {
            dims: self.dims,
            planes: std::array::from_fn(|c| {
                self.planes[c].iter().map(|&v| U::of(v.as_f64())).collect()
            }),
            disparity: self.disparity,
        }
    }
}
