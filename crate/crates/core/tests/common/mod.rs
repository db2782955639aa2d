//! Reference implementations used to check the library from the outside.
//! Nothing here calls into the code under test.

#![allow(dead_code)]

use std::collections::HashMap;
use std::f64::consts::PI;

use num_complex::Complex64 as C;

pub type M2 = [[C; 2]; 2];

pub fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

pub fn mul(a: &M2, b: &M2) -> M2 {
    let mut out = [[c(0.0, 0.0); 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub fn neg(a: &M2) -> M2 {
    a.map(|r| r.map(|x| -x))
}

pub fn identity() -> M2 {
    [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]]
}

pub fn dagger(a: &M2) -> M2 {
    [
        [a[0][0].conj(), a[1][0].conj()],
        [a[0][1].conj(), a[1][1].conj()],
    ]
}

pub fn max_entry(a: &M2, b: &M2) -> f64 {
    let mut m: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            m = m.max((a[i][j] - b[i][j]).norm());
        }
    }
    m
}

fn frob(a: &M2, b: &M2) -> f64 {
    let mut s = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            s += (a[i][j] - b[i][j]).norm_sqr();
        }
    }
    s.sqrt()
}

/// Distance between two SU(2) matrices up to sign, scaled to agree with
/// the chordal distance of the corresponding unit quaternions.
pub fn dist(a: &M2, b: &M2) -> f64 {
    frob(a, b).min(frob(a, &neg(b))) / 2f64.sqrt()
}

/// Fibonacci braid generators from the F and R matrices, scaled into SU(2).
pub fn generators() -> (M2, M2) {
    let tau = (5f64.sqrt() - 1.0) / 2.0;
    let e = |t: f64| C::from_polar(1.0, t);
    let phase = e(PI / 10.0);
    let r = [
        [e(-4.0 * PI / 5.0) * phase, c(0.0, 0.0)],
        [c(0.0, 0.0), e(3.0 * PI / 5.0) * phase],
    ];
    let f = [
        [c(tau, 0.0), c(tau.sqrt(), 0.0)],
        [c(tau.sqrt(), 0.0), c(-tau, 0.0)],
    ];
    (r, mul(&mul(&f, &r), &f))
}

/// Value of a braid word given as whitespace separated `1, -1, 2, -2`.
/// Each further letter multiplies on the left.
pub fn eval(word: &str) -> M2 {
    let (s1, s2) = generators();
    let mut m = identity();
    for tok in word.split_whitespace() {
        let l = match tok {
            "1" => s1,
            "-1" => dagger(&s1),
            "2" => s2,
            "-2" => dagger(&s2),
            other => panic!("bad letter {other}"),
        };
        m = mul(&l, &m);
    }
    m
}

pub fn power(a: &M2, n: usize) -> M2 {
    (0..n).fold(identity(), |m, _| mul(&m, a))
}

/// `w + xi + yj + zk` as `[[w + ix, y + iz], [-y + iz, w - ix]]`.
pub fn from_quat(q: [f64; 4]) -> M2 {
    let [w, x, y, z] = q;
    [[c(w, x), c(y, z)], [c(-y, z), c(w, -x)]]
}

pub fn qmul(a: [f64; 4], b: [f64; 4]) -> [f64; 4] {
    let [a0, a1, a2, a3] = a;
    let [b0, b1, b2, b3] = b;
    [
        a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
        a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
        a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
        a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
    ]
}

pub fn qconj(a: [f64; 4]) -> [f64; 4] {
    [a[0], -a[1], -a[2], -a[3]]
}

pub fn qdot(a: [f64; 4], b: [f64; 4]) -> f64 {
    a.iter().zip(&b).map(|(x, y)| x * y).sum()
}

pub fn qnormalize(a: [f64; 4]) -> [f64; 4] {
    let n = qdot(a, a).sqrt();
    a.map(|x| x / n)
}

/// Points counted once, merging points within `tol`; `new` also merges
/// antipodes, `signed` keeps them apart.
pub struct Distinct {
    tol: f64,
    projective: bool,
    cells: HashMap<[i64; 4], Vec<[f64; 4]>>,
    pub count: usize,
}

impl Distinct {
    pub fn new(tol: f64) -> Self {
        Distinct {
            tol,
            projective: true,
            cells: HashMap::new(),
            count: 0,
        }
    }

    pub fn signed(tol: f64) -> Self {
        Distinct {
            projective: false,
            ..Distinct::new(tol)
        }
    }

    fn key(&self, p: [f64; 4]) -> [i64; 4] {
        p.map(|x| (x / self.tol).floor() as i64)
    }

    fn seen(&self, p: [f64; 4]) -> bool {
        let k = self.key(p);
        for d in 0..81 {
            let off = [d % 3, d / 3 % 3, d / 9 % 3, d / 27].map(|o| o as i64 - 1);
            let kk = [k[0] + off[0], k[1] + off[1], k[2] + off[2], k[3] + off[3]];
            if let Some(v) = self.cells.get(&kk) {
                if v.iter()
                    .any(|q| q.iter().zip(&p).all(|(a, b)| (a - b).abs() <= self.tol))
                {
                    return true;
                }
            }
        }
        false
    }

    /// Returns whether `p` was new.
    pub fn insert(&mut self, p: [f64; 4]) -> bool {
        if self.seen(p) || (self.projective && self.seen(p.map(|x| -x))) {
            return false;
        }
        let k = self.key(p);
        self.cells.entry(k).or_default().push(p);
        self.count += 1;
        true
    }
}

/// Closure of two unit quaternions under multiplication, as a list.
pub fn closure(gens: &[[f64; 4]], cap: usize) -> Vec<[f64; 4]> {
    let mut out = vec![[1.0, 0.0, 0.0, 0.0]];
    let mut seen = HashMap::new();
    let key = |p: [f64; 4]| p.map(|x| (x * 1e6).round() as i64);
    seen.insert(key(out[0]), ());
    let mut i = 0;
    while i < out.len() && out.len() <= cap {
        for g in gens {
            let p = qmul(out[i], *g);
            if seen.insert(key(p), ()).is_none() {
                out.push(p);
            }
        }
        i += 1;
    }
    out
}

pub fn binary_icosahedral() -> Vec<[f64; 4]> {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let s = qnormalize([1.0, 1.0, 1.0, 1.0]);
    let t = qnormalize([phi, 1.0 / phi, 1.0, 0.0]);
    closure(&[s, t], 200)
}

/// Hopf image `alpha / beta` on the Riemann sphere, `None` at infinity.
pub fn hopf_sphere(q: [f64; 4]) -> ([f64; 3], bool) {
    let alpha = c(q[0], q[1]);
    let beta = c(q[2], q[3]);
    if beta.norm() <= 1e-14 {
        return ([0.0, 0.0, 1.0], true);
    }
    let z = alpha / beta;
    let d = 1.0 + z.norm_sqr();
    (
        [2.0 * z.re / d, 2.0 * z.im / d, (z.norm_sqr() - 1.0) / d],
        false,
    )
}

/// Greedy clustering on S2.
pub fn count_sphere_clusters(points: &[[f64; 3]], tol: f64) -> usize {
    let mut reps: Vec<[f64; 3]> = Vec::new();
    for p in points {
        if !reps.iter().any(|r| {
            ((r[0] - p[0]).powi(2) + (r[1] - p[1]).powi(2) + (r[2] - p[2]).powi(2)).sqrt() <= tol
        }) {
            reps.push(*p);
        }
    }
    reps.len()
}
