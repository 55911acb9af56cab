//! Axis-aligned box arithmetic, the relative box-coefficient encoding, and
//! the nearby-object Gaussian likelihood.
//!
//! Everything here is a pure function of immutable values; callers may invoke
//! any of it concurrently.

use thiserror::Error;

/// Errors raised by box construction and likelihood evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("box size must be positive: w={w}, h={h}")]
    NonPositiveSize { w: f64, h: f64 },
    #[error("box fields must be finite: x={x}, y={y}, w={w}, h={h}")]
    NonFinite { x: f64, y: f64, w: f64, h: f64 },
    #[error("sigma must be positive and finite, got {0}")]
    InvalidSigma(f64),
}

/// Axis-aligned rectangle in pixel units, stored as top-left corner plus size.
///
/// Construction rejects non-finite fields and non-positive sizes, so every
/// formula downstream is total. Coordinates may be negative or exceed any
/// image bounds; clipping is the concern of generators and IO, not geometry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BBox {
    x: f64,
    y: f64,
    w: f64,
    h: f64,
}

impl BBox {
    /// Builds a box from its top-left corner `(x, y)` and size `(w, h)`.
    pub fn new(x: f64, y: f64, w: f64, h: f64) -> Result<Self, GeometryError> {
        if !(x.is_finite() && y.is_finite() && w.is_finite() && h.is_finite()) {
            return Err(GeometryError::NonFinite { x, y, w, h });
        }
        if w <= 0.0 || h <= 0.0 {
            return Err(GeometryError::NonPositiveSize { w, h });
        }
        Ok(Self { x, y, w, h })
    }

    /// Builds a box from its center `(cx, cy)` and size `(w, h)`.
    pub fn from_center(cx: f64, cy: f64, w: f64, h: f64) -> Result<Self, GeometryError> {
        Self::new(cx - w / 2.0, cy - h / 2.0, w, h)
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn w(&self) -> f64 {
        self.w
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    /// Right edge, `x + w`.
    pub fn x2(&self) -> f64 {
        self.x + self.w
    }

    /// Bottom edge, `y + h`.
    pub fn y2(&self) -> f64 {
        self.y + self.h
    }

    pub fn cx(&self) -> f64 {
        self.x + self.w / 2.0
    }

    pub fn cy(&self) -> f64 {
        self.y + self.h / 2.0
    }

    /// `w * h`; positive by construction.
    pub fn area(&self) -> f64 {
        self.w * self.h
    }

    /// Intersection area with `other`, clamped so it never exceeds either
    /// box's own area even under floating-point rounding.
    pub fn intersection(&self, other: &BBox) -> f64 {
        let iw = (self.x2().min(other.x2()) - self.x.max(other.x)).clamp(0.0, self.w.min(other.w));
        if iw <= 0.0 {
            return 0.0;
        }
        let ih = (self.y2().min(other.y2()) - self.y.max(other.y)).clamp(0.0, self.h.min(other.h));
        if ih <= 0.0 {
            return 0.0;
        }
        iw * ih
    }

    /// Intersection over union. Symmetric, 0 for disjoint boxes, 1 for
    /// identical boxes.
    pub fn iou(&self, other: &BBox) -> f64 {
        let inter = self.intersection(other);
        if inter <= 0.0 {
            return 0.0;
        }
        // The max() guards keep union >= max(area, area) under rounding so
        // that iou <= iof holds exactly.
        let union = (self.area() + other.area() - inter)
            .max(self.area())
            .max(other.area());
        inter / union
    }

    /// Intersection over the area of `self` (the foreground box). Not
    /// symmetric; 1 when `self` lies entirely inside `other`.
    pub fn iof(&self, other: &BBox) -> f64 {
        self.intersection(other) / self.area()
    }
}

/// Relative box coefficients: center offset in units of the reference size,
/// plus log size ratios.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RelCoeffs {
    pub dx: f64,
    pub dy: f64,
    pub dw: f64,
    pub dh: f64,
}

impl RelCoeffs {
    pub fn new(dx: f64, dy: f64, dw: f64, dh: f64) -> Self {
        Self { dx, dy, dw, dh }
    }

    /// Squared Euclidean distance to `other` over the 4 coefficients.
    pub fn distance_sq(&self, other: &RelCoeffs) -> f64 {
        let dx = self.dx - other.dx;
        let dy = self.dy - other.dy;
        let dw = self.dw - other.dw;
        let dh = self.dh - other.dh;
        dx * dx + dy * dy + dw * dw + dh * dh
    }
}

/// Encodes `target` relative to `reference`:
/// `((cx_t - cx_r)/w_r, (cy_t - cy_r)/h_r, ln(w_t/w_r), ln(h_t/h_r))`.
///
/// Centers are used for the offset terms; box sizes are positive by
/// construction so the log terms are always finite.
pub fn encode_relative(target: &BBox, reference: &BBox) -> RelCoeffs {
    RelCoeffs {
        dx: (target.cx() - reference.cx()) / reference.w(),
        dy: (target.cy() - reference.cy()) / reference.h(),
        dw: (target.w() / reference.w()).ln(),
        dh: (target.h() / reference.h()).ln(),
    }
}

/// Inverse of [`encode_relative`]: reconstructs the encoded box from its
/// coefficients and the reference box.
pub fn decode_relative(coeffs: &RelCoeffs, reference: &BBox) -> Result<BBox, GeometryError> {
    let w = reference.w() * coeffs.dw.exp();
    let h = reference.h() * coeffs.dh.exp();
    let cx = reference.cx() + coeffs.dx * reference.w();
    let cy = reference.cy() + coeffs.dy * reference.h();
    BBox::from_center(cx, cy, w, h)
}

/// Likelihood of `rel` under an isotropic Gaussian centered at `mean` with a
/// single scalar spread `sigma` shared across all four coefficients:
/// `exp(-||rel - mean||^2 / (2 sigma^2))`.
///
/// Equals 1 exactly at the mean and decays strictly with distance.
pub fn gaussian_likelihood(
    rel: &RelCoeffs,
    mean: &RelCoeffs,
    sigma: f64,
) -> Result<f64, GeometryError> {
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(GeometryError::InvalidSigma(sigma));
    }
    Ok(gaussian_likelihood_raw(rel, mean, sigma))
}

/// Unchecked kernel shared with the suppression hot loop; `sigma` must have
/// been validated as positive and finite.
pub(crate) fn gaussian_likelihood_raw(rel: &RelCoeffs, mean: &RelCoeffs, sigma: f64) -> f64 {
    (-rel.distance_sq(mean) / (2.0 * sigma * sigma)).exp()
}
