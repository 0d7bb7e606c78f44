//! Double-precision quaternions `w + xi + yj + zk`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::tolerance;

/// A point of `H`, stored by components.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

/// `q = x0 + y0 * unit` with `y0 >= 0` and `unit` a unit imaginary quaternion.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SliceCoordinates {
    pub x0: f64,
    pub y0: f64,
    pub unit: Quaternion,
}

impl SliceCoordinates {
    pub fn reconstruct(&self) -> Quaternion {
        Quaternion::real(self.x0) + self.unit * self.y0
    }
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quaternion { w, x, y, z }
    }

    pub const fn real(w: f64) -> Self {
        Quaternion::new(w, 0.0, 0.0, 0.0)
    }

    pub fn from_array(c: [f64; 4]) -> Self {
        Quaternion::new(c[0], c[1], c[2], c[3])
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    pub fn conj(self) -> Self {
        Quaternion::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    /// Euclidean norm, computed without intermediate overflow.
    pub fn norm(self) -> f64 {
        self.w.hypot(self.x).hypot(self.y.hypot(self.z))
    }

    pub fn re(self) -> f64 {
        self.w
    }

    /// Imaginary part as a quaternion with zero scalar part.
    pub fn im(self) -> Self {
        Quaternion::new(0.0, self.x, self.y, self.z)
    }

    pub fn is_finite(self) -> bool {
        self.w.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn is_real(self, tol: f64) -> bool {
        self.im().norm() <= tol
    }

    /// `conj(q) / |q|^2`.
    pub fn inverse(self) -> Result<Self> {
        if !(self.norm() > tolerance::ZERO) {
            return Err(Error::ZeroDivision(self.norm()));
        }
        let n2 = self.norm_sqr();
        let inv = self.conj() / n2;
        if inv.is_finite() {
            Ok(inv)
        } else {
            // |q|^2 underflowed while |q| did not: rescale first.
            let s = self.norm();
            let inv = (self / s).conj() / s;
            if inv.is_finite() {
                Ok(inv)
            } else {
                Err(Error::ZeroDivision(s))
            }
        }
    }

    pub fn dot(self, other: Quaternion) -> f64 {
        self.w * other.w + self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// `self^n` by repeated squaring; all powers of `q` lie in the slice of `q`.
    pub fn powi(self, n: u32) -> Self {
        let mut result = Quaternion::ONE;
        let mut base = self;
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base;
            }
            base = base * base;
            e >>= 1;
        }
        result
    }

    /// Writes `q = x0 + y0 I`. Real points get the canonical unit `I = i`.
    pub fn slice_decompose(self) -> SliceCoordinates {
        let im = self.im();
        let y0 = im.norm();
        let unit = if y0 > 0.0 { im / y0 } else { Quaternion::I };
        SliceCoordinates { x0: self.w, y0, unit }
    }

    pub fn distance(self, other: Quaternion) -> f64 {
        (self - other).norm()
    }

    /// Componentwise closeness with a mixed absolute/relative tolerance.
    pub fn approx_eq(self, other: Quaternion, tol: f64) -> bool {
        let scale = 1.0_f64.max(self.norm()).max(other.norm());
        self.distance(other) <= tol * scale
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, o: Quaternion) {
        *self = *self + o;
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl SubAssign for Quaternion {
    fn sub_assign(&mut self, o: Quaternion) {
        *self = *self - o;
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
}

/// Hamilton product.
impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, o: Quaternion) -> Quaternion {
        Quaternion::new(
            self.w * o.w - self.x * o.x - self.y * o.y - self.z * o.z,
            self.w * o.x + self.x * o.w + self.y * o.z - self.z * o.y,
            self.w * o.y - self.x * o.z + self.y * o.w + self.z * o.x,
            self.w * o.z + self.x * o.y - self.y * o.x + self.z * o.w,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    fn mul(self, s: f64) -> Quaternion {
        Quaternion::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    fn mul(self, q: Quaternion) -> Quaternion {
        q * self
    }
}

impl Div<f64> for Quaternion {
    type Output = Quaternion;
    fn div(self, s: f64) -> Quaternion {
        Quaternion::new(self.w / s, self.x / s, self.y / s, self.z / s)
    }
}

impl From<f64> for Quaternion {
    fn from(w: f64) -> Self {
        Quaternion::real(w)
    }
}

impl fmt::Display for Quaternion {
    /// `w+xi+yj+zk` with zero terms omitted and unit coefficients elided.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (value, unit) in [(self.w, ""), (self.x, "i"), (self.y, "j"), (self.z, "k")] {
            if value == 0.0 {
                continue;
            }
            let magnitude = value.abs();
            if value < 0.0 {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            if unit.is_empty() || magnitude != 1.0 {
                out.push_str(&format!("{magnitude}"));
            }
            out.push_str(unit);
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

impl FromStr for Quaternion {
    type Err = Error;

    /// Accepts `w+xi+yj+zk` with any subset of terms, or JSON `[w,x,y,z]`.
    fn from_str(s: &str) -> Result<Self> {
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(Error::Parse("empty quaternion literal".into()));
        }
        if text.starts_with('[') {
            let parts: Vec<f64> = serde_json::from_str(&text)
                .map_err(|e| Error::Parse(format!("quaternion array {s:?}: {e}")))?;
            let arr: [f64; 4] = parts
                .try_into()
                .map_err(|_| Error::Parse(format!("quaternion array {s:?} must have 4 entries")))?;
            return finite_or_parse_error(Quaternion::from_array(arr), s);
        }

        let bytes = text.as_bytes();
        let mut pos = 0;
        let mut acc = Quaternion::ZERO;
        while pos < bytes.len() {
            let mut sign = 1.0;
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                if bytes[pos] == b'-' {
                    sign = -1.0;
                }
                pos += 1;
            } else if pos > 0 {
                return Err(Error::Parse(format!("expected '+' or '-' in {s:?}")));
            }
            let start = pos;
            while pos < bytes.len() {
                let c = bytes[pos];
                let exponent_sign = (c == b'+' || c == b'-')
                    && pos > start
                    && matches!(bytes[pos - 1], b'e' | b'E');
                if c.is_ascii_digit() || c == b'.' || c == b'e' || c == b'E' || exponent_sign {
                    pos += 1;
                } else {
                    break;
                }
            }
            let magnitude = if pos > start {
                text[start..pos]
                    .parse::<f64>()
                    .map_err(|e| Error::Parse(format!("number {:?}: {e}", &text[start..pos])))?
            } else {
                1.0
            };
            let unit = match bytes.get(pos) {
                Some(b'i') => Some(Quaternion::I),
                Some(b'j') => Some(Quaternion::J),
                Some(b'k') => Some(Quaternion::K),
                _ => None,
            };
            match unit {
                Some(u) => {
                    pos += 1;
                    acc += u * (sign * magnitude);
                }
                None if pos > start => acc += Quaternion::real(sign * magnitude),
                None => return Err(Error::Parse(format!("dangling sign in {s:?}"))),
            }
        }
        finite_or_parse_error(acc, s)
    }
}

fn finite_or_parse_error(q: Quaternion, src: &str) -> Result<Quaternion> {
    if q.is_finite() {
        Ok(q)
    } else {
        Err(Error::Parse(format!("non-finite quaternion {src:?}")))
    }
}

impl Serialize for Quaternion {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        // + 0.0 folds negative zeros so output is stable
        self.to_array().map(|c| c + 0.0).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Quaternion {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let arr = <[f64; 4]>::deserialize(deserializer)?;
        Ok(Quaternion::from_array(arr))
    }
}
