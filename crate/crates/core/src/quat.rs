//! Quaternions, their identification with SU(2), the projective distance and
//! the Hopf map used for plots.
//!
//! A quaternion `w + x i + y j + z k` is identified with the SU(2) matrix
//!
//! ```text
//! [[ w + i x,  y + i z ],
//!  [-y + i z,  w - i x ]]
//! ```
//!
//! so that quaternion multiplication is exactly matrix multiplication.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::Error;

/// Tolerance on `|norm - 1|` accepted by [`UnitQuaternion::try_new`].
pub const UNIT_TOL: f64 = 1e-12;

/// Tolerance used for deduplication of points on S3.
pub const DEDUP_TOL: f64 = 1e-9;

/// `|beta|` below which the Hopf image is the point at infinity.
pub const HOPF_INF_TOL: f64 = 1e-14;

/// Maximum deviation accepted when reading a complex 2x2 matrix as SU(2).
pub const SU2_FORM_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quaternion { w, x, y, z }
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
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Euclidean inner product in R4.
    pub fn dot(self, o: Quaternion) -> f64 {
        self.w * o.w + self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn scale(self, s: f64) -> Self {
        Quaternion::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }

    pub fn max_abs_diff(self, o: Quaternion) -> f64 {
        (self - o)
            .to_array()
            .iter()
            .fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// The pair `(c1, c2)` with `q = c1 + c2 j`.
    pub fn complex_pair(self) -> (Complex64, Complex64) {
        (
            Complex64::new(self.w, self.x),
            Complex64::new(self.y, self.z),
        )
    }

    pub fn from_complex_pair(c1: Complex64, c2: Complex64) -> Self {
        Quaternion::new(c1.re, c1.im, c2.re, c2.im)
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
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
    #[inline]
    fn mul(self, q: Quaternion) -> Quaternion {
        let p = self;
        Quaternion::new(
            p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
            p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
            p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
            p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w,
        )
    }
}

/// Product through the pair-of-complex-numbers rule
/// `(c1, c2)(d1, d2) = (c1 d1 - c2 conj(d2), c1 d2 + c2 conj(d1))`.
pub fn quat_mul_complex_rule(p: Quaternion, q: Quaternion) -> Quaternion {
    let (c1, c2) = p.complex_pair();
    let (d1, d2) = q.complex_pair();
    Quaternion::from_complex_pair(c1 * d1 - c2 * d2.conj(), c1 * d2 + c2 * d1.conj())
}

/// A point of S3, i.e. an SU(2) element.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct UnitQuaternion(Quaternion);

impl UnitQuaternion {
    pub const IDENTITY: UnitQuaternion = UnitQuaternion(Quaternion::ONE);

    /// Accepts `q` if its norm is within [`UNIT_TOL`] of one.
    pub fn try_new(q: Quaternion) -> Result<Self, Error> {
        let n = q.norm();
        if (n - 1.0).abs() > UNIT_TOL {
            return Err(Error::NotUnit(n));
        }
        Ok(UnitQuaternion(q))
    }

    /// Normalizes `q`. Panics on the zero quaternion.
    pub fn normalize(q: Quaternion) -> Self {
        let n = q.norm();
        assert!(n > 0.0, "cannot normalize the zero quaternion");
        UnitQuaternion(q.scale(1.0 / n))
    }

    pub fn new_normalize(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self::normalize(Quaternion::new(w, x, y, z))
    }

    /// Wraps `q` without checking the norm.
    pub const fn new_unchecked(q: Quaternion) -> Self {
        UnitQuaternion(q)
    }

    pub fn quat(self) -> Quaternion {
        self.0
    }

    pub fn w(self) -> f64 {
        self.0.w
    }
    pub fn x(self) -> f64 {
        self.0.x
    }
    pub fn y(self) -> f64 {
        self.0.y
    }
    pub fn z(self) -> f64 {
        self.0.z
    }

    pub fn to_array(self) -> [f64; 4] {
        self.0.to_array()
    }

    /// Conjugate, which is also the inverse.
    pub fn conj(self) -> Self {
        UnitQuaternion(self.0.conj())
    }

    pub fn inverse(self) -> Self {
        self.conj()
    }

    pub fn dot(self, o: UnitQuaternion) -> f64 {
        self.0.dot(o.0)
    }

    pub fn renormalize(self) -> Self {
        Self::normalize(self.0)
    }

    /// Projective chordal distance `sqrt(2 - 2 |<p, q>|)`.
    pub fn distance(self, o: UnitQuaternion) -> f64 {
        distance(self, o)
    }

    /// Plain Euclidean distance in R4 (no sign identification).
    pub fn chord(self, o: UnitQuaternion) -> f64 {
        (self.0 - o.0).norm()
    }

    /// Sign representative: the first component exceeding [`DEDUP_TOL`] in
    /// absolute value is made positive.
    pub fn canonical(self) -> Self {
        if canonical_sign(self.0) < 0.0 {
            -self
        } else {
            self
        }
    }

    pub fn is_canonical(self) -> bool {
        canonical_sign(self.0) > 0.0
    }

    /// Quantized key of the canonical representative, used for hashing and
    /// for stable sort orders.
    pub fn canonical_key(self) -> [i64; 4] {
        quantize(self.canonical().to_array())
    }

    /// Quantized key of the raw components.
    pub fn key(self) -> [i64; 4] {
        quantize(self.to_array())
    }

    pub fn to_su2(self) -> Su2Matrix {
        su2_from_quat(self)
    }
}

fn canonical_sign(q: Quaternion) -> f64 {
    for c in q.to_array() {
        if c.abs() > DEDUP_TOL {
            return c.signum();
        }
    }
    1.0
}

fn quantize(c: [f64; 4]) -> [i64; 4] {
    c.map(|v| (v / DEDUP_TOL).round() as i64)
}

impl Neg for UnitQuaternion {
    type Output = UnitQuaternion;
    fn neg(self) -> UnitQuaternion {
        UnitQuaternion(-self.0)
    }
}

impl Mul for UnitQuaternion {
    type Output = UnitQuaternion;
    #[inline]
    fn mul(self, o: UnitQuaternion) -> UnitQuaternion {
        UnitQuaternion(self.0 * o.0)
    }
}

impl fmt::Display for UnitQuaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = self.0;
        write!(f, "({:.9}, {:.9}, {:.9}, {:.9})", q.w, q.x, q.y, q.z)
    }
}

pub fn quat_mul(p: Quaternion, q: Quaternion) -> Quaternion {
    p * q
}

/// Projective chordal distance between two SU(2) elements: `±1` phases are
/// identified, so `distance(q, -q) == 0`.
pub fn distance(p: UnitQuaternion, q: UnitQuaternion) -> f64 {
    // sqrt(2 - 2|<p,q>|), evaluated as the shorter chord to q or -q so that
    // small distances keep full relative precision.
    let (a, b) = (p.0, q.0);
    if a.dot(b) >= 0.0 {
        (a - b).norm()
    } else {
        (a + b).norm()
    }
}

/// SU(2) matrix `a 1 + b i + c j + d k` in the basis
/// `i = diag(i, -i)`, `j = [[0, 1], [-1, 0]]`, `k = [[0, i], [i, 0]]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Su2Matrix {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Su2Matrix {
    pub const IDENTITY: Su2Matrix = Su2Matrix {
        a: 1.0,
        b: 0.0,
        c: 0.0,
        d: 0.0,
    };

    pub fn entries(&self) -> [[Complex64; 2]; 2] {
        [
            [
                Complex64::new(self.a, self.b),
                Complex64::new(self.c, self.d),
            ],
            [
                Complex64::new(-self.c, self.d),
                Complex64::new(self.a, -self.b),
            ],
        ]
    }

    /// Entry with 1-based row and column.
    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries()[row - 1][col - 1]
    }

    pub fn determinant(&self) -> f64 {
        self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d
    }

    /// Reads a complex matrix, rejecting anything farther than
    /// [`SU2_FORM_TOL`] from the SU(2) form.
    pub fn from_entries(m: [[Complex64; 2]; 2]) -> Result<Self, Error> {
        let a = 0.5 * (m[0][0].re + m[1][1].re);
        let b = 0.5 * (m[0][0].im - m[1][1].im);
        let c = 0.5 * (m[0][1].re - m[1][0].re);
        let d = 0.5 * (m[0][1].im + m[1][0].im);
        let s = Su2Matrix { a, b, c, d };
        let back = s.entries();
        let mut dev = 0.0f64;
        for r in 0..2 {
            for col in 0..2 {
                dev = dev.max((back[r][col] - m[r][col]).norm());
            }
        }
        dev = dev.max((s.determinant() - 1.0).abs());
        if dev > SU2_FORM_TOL {
            return Err(Error::NotSu2(dev));
        }
        Ok(s)
    }

    /// Complex matrix product, computed entrywise.
    pub fn matmul(&self, o: &Su2Matrix) -> [[Complex64; 2]; 2] {
        complex_matmul(&self.entries(), &o.entries())
    }

    pub fn to_quat(self) -> UnitQuaternion {
        UnitQuaternion(Quaternion::new(self.a, self.b, self.c, self.d))
    }

    /// Largest entry magnitude of `self - other` as complex matrices.
    pub fn max_entry_diff(&self, other: &[[Complex64; 2]; 2]) -> f64 {
        max_entry_diff(&self.entries(), other)
    }
}

pub fn complex_matmul(a: &[[Complex64; 2]; 2], b: &[[Complex64; 2]; 2]) -> [[Complex64; 2]; 2] {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for (r, row) in out.iter_mut().enumerate() {
        for (c, cell) in row.iter_mut().enumerate() {
            *cell = a[r][0] * b[0][c] + a[r][1] * b[1][c];
        }
    }
    out
}

pub fn max_entry_diff(a: &[[Complex64; 2]; 2], b: &[[Complex64; 2]; 2]) -> f64 {
    let mut m = 0.0f64;
    for r in 0..2 {
        for c in 0..2 {
            m = m.max((a[r][c] - b[r][c]).norm());
        }
    }
    m
}

pub fn su2_from_quat(q: UnitQuaternion) -> Su2Matrix {
    let q = q.quat();
    Su2Matrix {
        a: q.w,
        b: q.x,
        c: q.y,
        d: q.z,
    }
}

/// Inverse of [`su2_from_quat`], going through the complex entries.
pub fn quat_from_su2(m: [[Complex64; 2]; 2]) -> Result<UnitQuaternion, Error> {
    Su2Matrix::from_entries(m).map(Su2Matrix::to_quat)
}

/// Uniform sample on S3: a normalized standard Gaussian 4-vector.
pub fn uniform_unit<R: rand::Rng + ?Sized>(rng: &mut R) -> UnitQuaternion {
    use rand_distr::{Distribution, StandardNormal};
    loop {
        let v: [f64; 4] = std::array::from_fn(|_| StandardNormal.sample(rng));
        let n = Quaternion::from_array(v).norm();
        if n > 1e-6 {
            return UnitQuaternion::new_normalize(v[0], v[1], v[2], v[3]);
        }
    }
}

/// Image of a point under the Hopf map.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum HopfPoint {
    Finite(Complex64),
    Infinity,
}

impl HopfPoint {
    /// Inverse stereographic image on S2.
    pub fn sphere(&self) -> [f64; 3] {
        match *self {
            HopfPoint::Infinity => [0.0, 0.0, 1.0],
            HopfPoint::Finite(c) => {
                let r2 = c.norm_sqr();
                let den = 1.0 + r2;
                [2.0 * c.re / den, 2.0 * c.im / den, (r2 - 1.0) / den]
            }
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, HopfPoint::Infinity)
    }
}

/// `C = alpha / beta` with `alpha = w + i x`, `beta = y + i z`.
pub fn hopf_map(q: UnitQuaternion) -> HopfPoint {
    let (alpha, beta) = q.quat().complex_pair();
    if beta.norm() <= HOPF_INF_TOL {
        HopfPoint::Infinity
    } else {
        HopfPoint::Finite(alpha / beta)
    }
}

/// Counts distinct base points on S2 using a greedy clustering at `tol`.
pub fn distinct_hopf_points(points: &[HopfPoint], tol: f64) -> (usize, usize) {
    let mut reps: Vec<[f64; 3]> = Vec::new();
    let mut inf = 0;
    for p in points {
        if p.is_infinite() {
            inf += 1;
        }
        let s = p.sphere();
        let seen = reps.iter().any(|r| {
            let d2: f64 = (0..3).map(|i| (r[i] - s[i]).powi(2)).sum();
            d2.sqrt() <= tol
        });
        if !seen {
            reps.push(s);
        }
    }
    (reps.len(), inf)
}
