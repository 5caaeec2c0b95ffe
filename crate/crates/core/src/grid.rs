//! Quadrature grids on `[-d, d]`.
//!
//! A grid is the image of a uniform parameter grid `s ∈ [-1, 1]` under a
//! smooth, odd map `x = X(s)`. Weights are trapezoid weights in `s` times the
//! Jacobian `X'(s)`, so halving the resolution (dropping every other node)
//! reproduces exactly the grid one level coarser. The solver relies on that to
//! Richardson-extrapolate.

use thiserror::Error;

type Map = Box<dyn Fn(f64) -> f64>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GridError {
    #[error("grid needs at least 3 points, got {0}")]
    TooFewPoints(usize),
    #[error("grid half-width must be positive and finite, got {0}")]
    BadHalfWidth(f64),
    #[error("sinh grid scale must be positive and finite, got {0}")]
    BadScale(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GridKind {
    /// `x = d·s`.
    Uniform,
    /// `x = scale·sinh(a·s)` with `a = asinh(d/scale)`; spacing near the
    /// origin is about `scale·a·h`, growing geometrically towards `±d`.
    Sinh { scale: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    half_width: f64,
    kind: GridKind,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl Grid {
    pub fn uniform(half_width: f64, n: usize) -> Result<Self, GridError> {
        Self::new(half_width, n, GridKind::Uniform)
    }

    pub fn sinh(half_width: f64, n: usize, scale: f64) -> Result<Self, GridError> {
        Self::new(half_width, n, GridKind::Sinh { scale })
    }

    pub fn new(half_width: f64, n: usize, kind: GridKind) -> Result<Self, GridError> {
        if n < 3 {
            return Err(GridError::TooFewPoints(n));
        }
        if !(half_width.is_finite() && half_width > 0.0) {
            return Err(GridError::BadHalfWidth(half_width));
        }
        if let GridKind::Sinh { scale } = kind {
            if !(scale.is_finite() && scale > 0.0) {
                return Err(GridError::BadScale(scale));
            }
        }

        let h = 2.0 / (n - 1) as f64;
        let (map, jacobian): (Map, Map) = match kind {
            GridKind::Uniform => (
                Box::new(move |s| half_width * s),
                Box::new(move |_| half_width),
            ),
            GridKind::Sinh { scale } => {
                let a = (half_width / scale).asinh();
                (
                    Box::new(move |s: f64| scale * (a * s).sinh()),
                    Box::new(move |s: f64| scale * a * (a * s).cosh()),
                )
            }
        };

        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        // Fill the left half and mirror, so the grid is exactly symmetric.
        for i in 0..n.div_ceil(2) {
            let s = (2 * i) as f64 / (n - 1) as f64 - 1.0;
            let x = if i == 0 { -half_width } else { map(s) };
            let w = h * jacobian(s);
            nodes[i] = x;
            nodes[n - 1 - i] = -x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        weights[0] *= 0.5;
        weights[n - 1] *= 0.5;

        Ok(Self {
            half_width,
            kind,
            nodes,
            weights,
        })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn kind(&self) -> GridKind {
        self.kind
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn is_uniform(&self) -> bool {
        matches!(self.kind, GridKind::Uniform)
    }

    /// Smallest distance between neighbouring nodes.
    pub fn min_spacing(&self) -> f64 {
        self.nodes
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(f64::INFINITY, f64::min)
    }

    /// The grid made of every other node, if the node count allows it.
    pub fn coarsen(&self) -> Option<Grid> {
        let n = self.len();
        if n.is_multiple_of(2) || n < 5 {
            return None;
        }
        Grid::new(self.half_width, n.div_ceil(2), self.kind).ok()
    }

    /// Index of the node mirrored through the origin.
    pub fn mirror(&self, i: usize) -> usize {
        self.len() - 1 - i
    }
}
