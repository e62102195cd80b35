//! Points of the upper half-plane, elements of PSL(2, ℤ) and the hyperbolic
//! distance.

use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point `x + iy` of the upper half-plane, `y > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    x: f64,
    y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !(y > 0.0) || !y.is_finite() || !x.is_finite() {
            return Err(Error::InvalidPoint(y));
        }
        Ok(Self { x, y })
    }

    /// The point `i`.
    pub const I: Point = Point { x: 0.0, y: 1.0 };

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }

    /// Frobenius norm squared of the affine map `(√y, x/√y; 0, 1/√y)` that
    /// sends `i` to this point. Also the same quantity for its inverse.
    pub(crate) fn frame_norm_sqr(&self) -> f64 {
        self.y + (self.x * self.x + 1.0) / self.y
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// An element of PSL(2, ℤ), stored as its canonical representative:
/// `c > 0`, or `c = 0` and `d > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupElement {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
}

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement { a: 1, b: 0, c: 0, d: 1 };
    /// `z ↦ -1/z`
    pub const S: GroupElement = GroupElement { a: 0, b: -1, c: 1, d: 0 };
    /// `z ↦ z + 1`
    pub const T: GroupElement = GroupElement { a: 1, b: 1, c: 0, d: 1 };

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        let det = a as i128 * d as i128 - b as i128 * c as i128;
        if det != 1 {
            return Err(Error::NotUnimodular { a, b, c, d });
        }
        Self { a, b, c, d }.normalized()
    }

    /// Flips the overall sign if needed so that `c > 0` or `c = 0, d > 0`.
    pub fn normalized(self) -> Result<Self> {
        if self.c < 0 || (self.c == 0 && self.d < 0) {
            let neg = |v: i64| v.checked_neg().ok_or(Error::IntegerOverflow("negating a matrix entry"));
            Ok(Self { a: neg(self.a)?, b: neg(self.b)?, c: neg(self.c)?, d: neg(self.d)? })
        } else {
            Ok(self)
        }
    }

    pub fn entries(&self) -> (i64, i64, i64, i64) {
        (self.a, self.b, self.c, self.d)
    }

    pub fn inverse(&self) -> Result<Self> {
        Self { a: self.d, b: -self.b, c: -self.c, d: self.a }.normalized()
    }

    pub fn checked_mul(&self, rhs: &GroupElement) -> Result<Self> {
        let dot = |p: i64, q: i64, r: i64, s: i64| -> Result<i64> {
            p.checked_mul(q)
                .and_then(|u| r.checked_mul(s).and_then(|v| u.checked_add(v)))
                .ok_or(Error::IntegerOverflow("multiplying group elements"))
        };
        Self {
            a: dot(self.a, rhs.a, self.b, rhs.c)?,
            b: dot(self.a, rhs.b, self.b, rhs.d)?,
            c: dot(self.c, rhs.a, self.d, rhs.c)?,
            d: dot(self.c, rhs.b, self.d, rhs.d)?,
        }
        .normalized()
    }

    /// Squared Frobenius norm `a² + b² + c² + d²`, which equals
    /// `2 cosh d(i, γi)`.
    pub fn frobenius_sqr(&self) -> i128 {
        [self.a, self.b, self.c, self.d].iter().map(|&v| v as i128 * v as i128).sum()
    }
}

impl Mul for GroupElement {
    type Output = GroupElement;

    /// Panics on overflow; use [`GroupElement::checked_mul`] for fallible products.
    fn mul(self, rhs: GroupElement) -> GroupElement {
        self.checked_mul(&rhs).expect("group element product overflowed i64")
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {}; {} {})", self.a, self.b, self.c, self.d)
    }
}

/// `g·z = (az + b)/(cz + d)`.
pub fn mobius_apply(g: &GroupElement, z: &Point) -> Point {
    let (a, b, c, d) = (g.a as f64, g.b as f64, g.c as f64, g.d as f64);
    let re = c * z.x + d;
    let im = c * z.y;
    let denom = re * re + im * im;
    let x = ((a * z.x + b) * re + a * c * z.y * z.y) / denom;
    Point { x, y: z.y / denom }
}

/// `u(z, w) = |z - w|² / (4 Im z Im w)`, so that `cosh d(z, w) = 1 + 2u`.
pub fn point_pair_u(z: &Point, w: &Point) -> f64 {
    let dx = z.x - w.x;
    let dy = z.y - w.y;
    (dx * dx + dy * dy) / (4.0 * z.y * w.y)
}

/// Below this `u` the distance is taken from `arcosh(1 + 2u) ≈ 2√u`.
const SMALL_U: f64 = 1e-14;

pub fn distance_from_u(u: f64) -> f64 {
    if u < SMALL_U {
        2.0 * u.sqrt()
    } else {
        (1.0 + 2.0 * u).acosh()
    }
}

/// Hyperbolic distance `arcosh(1 + 2u(z, w))`.
pub fn distance(z: &Point, w: &Point) -> f64 {
    distance_from_u(point_pair_u(z, w))
}
