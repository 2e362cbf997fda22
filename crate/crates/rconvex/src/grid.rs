use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Point;

/// Relative tolerance for the square-cell requirement.
const SQUARE_CELL_RTOL: f64 = 1e-12;

/// Geometry of a regular grid with square cells.
///
/// Nodes sit at `(x0 + ix*h, y0 + iy*h)` for `ix in 0..nx`, `iy in 0..ny`,
/// so the bounding-box corners are themselves grid nodes and
/// `h = width/(nx-1) = height/(ny-1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub x0: f64,
    pub y0: f64,
    pub nx: usize,
    pub ny: usize,
    pub h: f64,
}

impl GridSpec {
    pub fn new(min: Point, max: Point, nx: usize, ny: usize) -> Result<Self> {
        if nx < 2 || ny < 2 {
            return Err(Error::BadParameter(format!("grid needs nx,ny >= 2, got {nx}x{ny}")));
        }
        if !(max.x > min.x && max.y > min.y) {
            return Err(Error::BadParameter("grid bbox must have positive extent".into()));
        }
        let hx = (max.x - min.x) / (nx - 1) as f64;
        let hy = (max.y - min.y) / (ny - 1) as f64;
        let scale = hx.abs().max(hy.abs());
        if (hx - hy).abs() > SQUARE_CELL_RTOL * scale {
            return Err(Error::BadParameter(format!(
                "cells not square: hx={hx:.17e}, hy={hy:.17e}"
            )));
        }
        Ok(GridSpec { x0: min.x, y0: min.y, nx, ny, h: hx })
    }

    /// Square grid over `[min, max]` with `n` nodes per side; the bbox must
    /// itself be square for the cells to be square.
    pub fn square(min: Point, max: Point, n: usize) -> Result<Self> {
        Self::new(min, max, n, n)
    }

    pub fn x(&self, ix: usize) -> f64 {
        self.x0 + ix as f64 * self.h
    }

    pub fn y(&self, iy: usize) -> f64 {
        self.y0 + iy as f64 * self.h
    }

    pub fn point(&self, ix: usize, iy: usize) -> Point {
        Point::new(self.x(ix), self.y(iy))
    }

    pub fn x_max(&self) -> f64 {
        self.x(self.nx - 1)
    }

    pub fn y_max(&self) -> f64 {
        self.y(self.ny - 1)
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn idx(&self, ix: usize, iy: usize) -> usize {
        debug_assert!(ix < self.nx && iy < self.ny);
        iy * self.nx + ix
    }

    /// Grid node nearest to `p`, clamped into the grid.
    pub fn nearest_node(&self, p: Point) -> (usize, usize) {
        let fx = ((p.x - self.x0) / self.h).round();
        let fy = ((p.y - self.y0) / self.h).round();
        let ix = fx.clamp(0.0, (self.nx - 1) as f64) as usize;
        let iy = fy.clamp(0.0, (self.ny - 1) as f64) as usize;
        (ix, iy)
    }

    /// Lower-left node of the cell containing `p`, clamped so that the cell
    /// `(ix..ix+1, iy..iy+1)` exists.
    pub fn cell_floor(&self, p: Point) -> (usize, usize) {
        let fx = ((p.x - self.x0) / self.h).floor();
        let fy = ((p.y - self.y0) / self.h).floor();
        let ix = fx.clamp(0.0, (self.nx - 2) as f64) as usize;
        let iy = fy.clamp(0.0, (self.ny - 2) as f64) as usize;
        (ix, iy)
    }

    pub fn contains(&self, p: Point) -> bool {
        p.x >= self.x0 && p.x <= self.x_max() && p.y >= self.y0 && p.y <= self.y_max()
    }

    /// Smallest distance from the rectangle `[lo, hi]` to the grid boundary.
    /// Negative when the rectangle pokes outside the grid.
    pub fn margin_around(&self, lo: Point, hi: Point) -> f64 {
        let m1 = lo.x - self.x0;
        let m2 = self.x_max() - hi.x;
        let m3 = lo.y - self.y0;
        let m4 = self.y_max() - hi.y;
        m1.min(m2).min(m3).min(m4)
    }

    /// Checks `margin_around >= required`.
    pub fn require_margin(&self, lo: Point, hi: Point, required: f64) -> Result<()> {
        let actual = self.margin_around(lo, hi);
        if actual < required {
            return Err(Error::InsufficientMargin { required, actual });
        }
        Ok(())
    }
}

/// Values sampled on the nodes of a [`GridSpec`], row-major in y.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridField<T> {
    pub spec: GridSpec,
    pub values: Vec<T>,
}

pub type ScalarField = GridField<f64>;
pub type MaskField = GridField<bool>;

impl<T: Clone> GridField<T> {
    pub fn fill(spec: GridSpec, value: T) -> Self {
        GridField { values: vec![value; spec.len()], spec }
    }

    pub fn from_fn(spec: GridSpec, mut f: impl FnMut(Point) -> T) -> Self {
        let mut values = Vec::with_capacity(spec.len());
        for iy in 0..spec.ny {
            for ix in 0..spec.nx {
                values.push(f(spec.point(ix, iy)));
            }
        }
        GridField { spec, values }
    }

    pub fn get(&self, ix: usize, iy: usize) -> &T {
        &self.values[self.spec.idx(ix, iy)]
    }

    pub fn set(&mut self, ix: usize, iy: usize, v: T) {
        let i = self.spec.idx(ix, iy);
        self.values[i] = v;
    }

    pub fn map<U>(&self, mut f: impl FnMut(&T) -> U) -> GridField<U> {
        GridField { spec: self.spec, values: self.values.iter().map(|v| f(v)).collect() }
    }

    /// Iterate `(ix, iy, point, value)` over all nodes.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, Point, &T)> + '_ {
        let spec = self.spec;
        self.values.iter().enumerate().map(move |(i, v)| {
            let ix = i % spec.nx;
            let iy = i / spec.nx;
            (ix, iy, spec.point(ix, iy), v)
        })
    }
}

impl MaskField {
    pub fn count_true(&self) -> usize {
        self.values.iter().filter(|&&b| b).count()
    }

    /// Tight bbox over true nodes, or None when the mask is empty.
    pub fn true_bbox(&self) -> Option<(Point, Point)> {
        let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        let mut any = false;
        for (_, _, p, &b) in self.iter() {
            if b {
                any = true;
                lo.x = lo.x.min(p.x);
                lo.y = lo.y.min(p.y);
                hi.x = hi.x.max(p.x);
                hi.y = hi.y.max(p.y);
            }
        }
        any.then_some((lo, hi))
    }
}
