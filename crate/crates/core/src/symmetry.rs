//! The {3,3,5} polytope built on the binary icosahedral group, its full
//! symmetry group G of order 14400, the orthoscheme fundamental domain, and
//! reduction of arbitrary points into it.
//!
//! G acts on S3 by `q -> l q r` (direct) and `q -> l conj(q) r` (indirect),
//! with `l, r` in Y and `(l, r) ~ (-l, -r)`.

use std::collections::HashSet;

use nalgebra::Matrix4;

use crate::braid::PHI;
use crate::group::{FiniteQuatGroup, GroupName};
use crate::pointset::PointSet;
use crate::quat::{Quaternion, UnitQuaternion, DEDUP_TOL};

/// Orthoscheme membership tolerance on barycentric weights.
pub const MEMBERSHIP_TOL: f64 = 1e-10;

/// Inner product between edge neighbours of the {3,3,5}.
pub const EDGE_DOT: f64 = PHI / 2.0;

pub const DIRECT_OPS: usize = 7200;
pub const G_ORDER: usize = 14400;

/// One element of G. `l` and `r` index the elements of Y; `l` always has
/// canonical sign so that each element of G has one representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SymmetryOp {
    pub l: u8,
    pub r: u8,
    pub conjugate: bool,
}

/// Vertex, edge, face and cell incidences of the {3,3,5}, using Y indices.
#[derive(Clone, Debug)]
pub struct Polytope335 {
    pub edges: Vec<[u32; 2]>,
    pub faces: Vec<[u32; 3]>,
    pub cells: Vec<[u32; 4]>,
    pub neighbors: Vec<Vec<u32>>,
}

impl Polytope335 {
    /// Edges are pairs with inner product within 1e-9 of phi/2; faces and
    /// cells are the 3- and 4-cliques of the edge graph.
    pub fn from_group(y: &FiniteQuatGroup) -> Self {
        let n = y.len();
        let mut adj = vec![vec![false; n]; n];
        let mut neighbors = vec![Vec::new(); n];
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if (y.get(a).dot(y.get(b)) - EDGE_DOT).abs() <= DEDUP_TOL {
                    adj[a][b] = true;
                    adj[b][a] = true;
                    neighbors[a].push(b as u32);
                    neighbors[b].push(a as u32);
                    edges.push([a as u32, b as u32]);
                }
            }
        }
        let mut faces = Vec::new();
        let mut cells = Vec::new();
        for &[a, b] in &edges {
            for c in b as usize + 1..n {
                if adj[a as usize][c] && adj[b as usize][c] {
                    faces.push([a, b, c as u32]);
                    let (ra, rb, rc) = (&adj[a as usize], &adj[b as usize], &adj[c]);
                    for d in c + 1..n {
                        if ra[d] && rb[d] && rc[d] {
                            cells.push([a, b, c as u32, d as u32]);
                        }
                    }
                }
            }
        }
        for nb in &mut neighbors {
            nb.sort_unstable();
        }
        faces.sort_unstable();
        cells.sort_unstable();
        Polytope335 {
            edges,
            faces,
            cells,
            neighbors,
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        let v = self.neighbors.len() as i64;
        v - self.edges.len() as i64 + self.faces.len() as i64 - self.cells.len() as i64
    }

    /// The first cell in lexicographic order that contains vertex 0 (the
    /// identity), as `[0, n1, n2, n3]`.
    pub fn reference_cell(&self) -> [u32; 4] {
        *self
            .cells
            .iter()
            .find(|c| c[0] == 0)
            .expect("identity lies in a cell")
    }
}

/// The spherical tetrahedron V, E, F, C: a cell vertex, the midpoint of an
/// edge through it, the centre of a face through that edge, and the cell
/// centre, each normalized onto S3.
#[derive(Clone, Debug)]
pub struct Orthoscheme {
    pub v: UnitQuaternion,
    pub e: UnitQuaternion,
    pub f: UnitQuaternion,
    pub c: UnitQuaternion,
    inv_basis: Matrix4<f64>,
    /// Inward normals of the three facets through V, in the imaginary
    /// 3-space (V is the identity, so these facets contain the real axis).
    cone_normals: [[f64; 3]; 3],
}

impl Orthoscheme {
    pub fn from_cell(y: &FiniteQuatGroup, cell: [u32; 4]) -> Self {
        let p = |i: usize| y.get(cell[i] as usize).quat();
        let v = UnitQuaternion::normalize(p(0));
        let e = UnitQuaternion::normalize(p(0) + p(1));
        let f = UnitQuaternion::normalize(p(0) + p(1) + p(2));
        let c = UnitQuaternion::normalize(p(0) + p(1) + p(2) + p(3));
        let cols = [v, e, f, c].map(|q| q.to_array());
        let basis = Matrix4::from_fn(|r, k| cols[k][r]);
        let inv_basis = basis
            .try_inverse()
            .expect("orthoscheme vertices are independent");
        let im = |q: UnitQuaternion| [q.x(), q.y(), q.z()];
        let (ei, fi, ci) = (im(e), im(f), im(c));
        let facet = |a: [f64; 3], b: [f64; 3], toward: [f64; 3]| {
            let n = cross(a, b);
            if dot3(n, toward) < 0.0 {
                n.map(|x| -x)
            } else {
                n
            }
        };
        let cone_normals = [facet(ei, fi, ci), facet(ei, ci, fi), facet(fi, ci, ei)].map(|n| {
            let len = dot3(n, n).sqrt();
            n.map(|x| x / len)
        });
        Orthoscheme {
            v,
            e,
            f,
            c,
            inv_basis,
            cone_normals,
        }
    }

    pub fn vertices(&self) -> [UnitQuaternion; 4] {
        [self.v, self.e, self.f, self.c]
    }

    /// Weights of `q` on the four vertices.
    pub fn barycentric(&self, q: UnitQuaternion) -> [f64; 4] {
        let a = q.to_array();
        let mut out = [0.0; 4];
        for (r, o) in out.iter_mut().enumerate() {
            *o = (0..4).map(|k| self.inv_basis[(r, k)] * a[k]).sum();
        }
        out
    }

    /// Closed membership with tolerance [`MEMBERSHIP_TOL`].
    pub fn contains(&self, q: UnitQuaternion) -> bool {
        self.barycentric(q).iter().all(|&l| l >= -MEMBERSHIP_TOL)
    }

    pub fn contains_strictly(&self, q: UnitQuaternion, margin: f64) -> bool {
        self.barycentric(q).iter().all(|&l| l > margin)
    }

    /// Normalized centroid of the four vertices, a generic interior point.
    pub fn centroid(&self) -> UnitQuaternion {
        UnitQuaternion::normalize(self.v.quat() + self.e.quat() + self.f.quat() + self.c.quat())
    }
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Rotation of the imaginary part under `q -> u q conj(u)`, as a 3x3 matrix.
fn rotation_matrix(u: Quaternion) -> [[f64; 3]; 3] {
    let basis = [Quaternion::I, Quaternion::J, Quaternion::K];
    let mut m = [[0.0; 3]; 3];
    for (col, b) in basis.iter().enumerate() {
        let img = u * *b * u.conj();
        m[0][col] = img.x;
        m[1][col] = img.y;
        m[2][col] = img.z;
    }
    m
}

/// Stabilizer element of the identity vertex, with the orthoscheme cone
/// normals pulled back through it.
#[derive(Clone, Debug)]
struct VertexStabilizer {
    op: SymmetryOp,
    pulled: [[f64; 3]; 3],
}

/// The group G together with the orthoscheme it tiles S3 with.
#[derive(Clone, Debug)]
pub struct SymmetryGroup {
    y: FiniteQuatGroup,
    polytope: Polytope335,
    orthoscheme: Orthoscheme,
    canonical_l: Vec<u8>,
    l_position: Vec<i16>,
    stabilizer: Vec<VertexStabilizer>,
}

impl SymmetryGroup {
    /// Builds G over `y`, which must be a binary icosahedral group.
    pub fn new(y: FiniteQuatGroup) -> Self {
        assert_eq!(y.name, GroupName::Y);
        assert_eq!(y.len(), 120);
        let polytope = Polytope335::from_group(&y);
        let orthoscheme = Orthoscheme::from_cell(&y, polytope.reference_cell());
        let mut canonical_l = Vec::new();
        let mut l_position = vec![-1i16; y.len()];
        for (i, e) in y.elements().iter().enumerate() {
            if e.is_canonical() {
                l_position[i] = canonical_l.len() as i16;
                canonical_l.push(i as u8);
            }
        }
        assert_eq!(canonical_l.len(), 60);
        let mut g = SymmetryGroup {
            y,
            polytope,
            orthoscheme,
            canonical_l,
            l_position,
            stabilizer: Vec::new(),
        };
        g.stabilizer = g.build_stabilizer();
        g
    }

    pub fn standard() -> Self {
        SymmetryGroup::new(FiniteQuatGroup::standard(GroupName::Y).expect("Y closes"))
    }

    fn build_stabilizer(&self) -> Vec<VertexStabilizer> {
        let mut out = Vec::new();
        for conjugate in [false, true] {
            for &u in &self.canonical_l {
                let op = self.canonicalize(u as usize, self.y.inv(u as usize), conjugate);
                let rot = rotation_matrix(self.y.get(u as usize).quat());
                let sgn = if conjugate { -1.0 } else { 1.0 };
                // n . (s R v) = (s R^T n) . v
                let pulled = self.orthoscheme.cone_normals.map(|n| {
                    let mut p = [0.0; 3];
                    for (j, pj) in p.iter_mut().enumerate() {
                        *pj = sgn * (0..3).map(|i| rot[i][j] * n[i]).sum::<f64>();
                    }
                    p
                });
                out.push(VertexStabilizer { op, pulled });
            }
        }
        out.sort_by_key(|s| self.op_index(s.op));
        out
    }

    pub fn y(&self) -> &FiniteQuatGroup {
        &self.y
    }

    pub fn polytope(&self) -> &Polytope335 {
        &self.polytope
    }

    pub fn orthoscheme(&self) -> &Orthoscheme {
        &self.orthoscheme
    }

    pub fn identity(&self) -> SymmetryOp {
        SymmetryOp {
            l: 0,
            r: 0,
            conjugate: false,
        }
    }

    /// Representative of `(l, r, conjugate)` with canonical-sign `l`.
    pub fn canonicalize(&self, l: usize, r: usize, conjugate: bool) -> SymmetryOp {
        if self.l_position[l] >= 0 {
            SymmetryOp {
                l: l as u8,
                r: r as u8,
                conjugate,
            }
        } else {
            SymmetryOp {
                l: self.y.neg(l) as u8,
                r: self.y.neg(r) as u8,
                conjugate,
            }
        }
    }

    /// Position of `op` in the canonical enumeration: direct ops first, then
    /// by `l` among canonical-sign elements, then by `r`.
    pub fn op_index(&self, op: SymmetryOp) -> usize {
        let lp = self.l_position[op.l as usize];
        debug_assert!(lp >= 0);
        (op.conjugate as usize) * DIRECT_OPS + lp as usize * 120 + op.r as usize
    }

    pub fn op_at(&self, index: usize) -> SymmetryOp {
        let conjugate = index >= DIRECT_OPS;
        let rest = index % DIRECT_OPS;
        SymmetryOp {
            l: self.canonical_l[rest / 120],
            r: (rest % 120) as u8,
            conjugate,
        }
    }

    /// All 14400 elements in canonical order.
    pub fn ops(&self) -> impl Iterator<Item = SymmetryOp> + '_ {
        (0..G_ORDER).map(|i| self.op_at(i))
    }

    pub fn apply(&self, op: SymmetryOp, q: UnitQuaternion) -> UnitQuaternion {
        let l = self.y.get(op.l as usize);
        let r = self.y.get(op.r as usize);
        let q = if op.conjugate { q.conj() } else { q };
        l * q * r
    }

    pub fn inverse(&self, op: SymmetryOp) -> SymmetryOp {
        if op.conjugate {
            // q = l conj(q0) r  =>  q0 = r conj(q) l
            self.canonicalize(op.r as usize, op.l as usize, true)
        } else {
            self.canonicalize(self.y.inv(op.l as usize), self.y.inv(op.r as usize), false)
        }
    }

    /// `a` after `b`.
    pub fn compose(&self, a: SymmetryOp, b: SymmetryOp) -> SymmetryOp {
        let y = &self.y;
        let (l1, r1, l2, r2) = (a.l as usize, a.r as usize, b.l as usize, b.r as usize);
        if !a.conjugate {
            self.canonicalize(y.mul(l1, l2), y.mul(r2, r1), b.conjugate)
        } else {
            // l1 conj(l2 x r2) r1 = (l1 conj(r2)) conj(x) (conj(l2) r1)
            self.canonicalize(y.mul(l1, y.inv(r2)), y.mul(y.inv(l2), r1), !b.conjugate)
        }
    }

    /// Image of `q` under every element of G, deduplicated on S3.
    pub fn orbit(&self, q: UnitQuaternion) -> Vec<UnitQuaternion> {
        let mut set = PointSet::new(DEDUP_TOL);
        let mut out = Vec::new();
        for op in self.ops() {
            let p = self.apply(op, q);
            if set.insert(p.to_array()).1 {
                out.push(p);
            }
        }
        out
    }

    /// Finds `(op, q0)` with `q0` in the orthoscheme and `apply(op, q0) = q`.
    ///
    /// First `q` is moved into the Voronoi region of the identity vertex by
    /// the nearest element of Y, then the 120 elements of G fixing that
    /// vertex are tried in canonical order.
    pub fn reduce(&self, q: UnitQuaternion) -> (SymmetryOp, UnitQuaternion) {
        let elems = self.y.elements();
        let mut best = 0usize;
        let mut best_dot = f64::NEG_INFINITY;
        for (i, e) in elems.iter().enumerate() {
            let d = q.dot(*e);
            if d > best_dot {
                best_dot = d;
                best = i;
            }
        }
        let yinv = self.y.inv(best);
        let q1 = q * elems[yinv];
        let v = [q1.x(), q1.y(), q1.z()];
        let chosen = self
            .stabilizer
            .iter()
            .find(|s| s.pulled.iter().all(|n| dot3(*n, v) >= -MEMBERSHIP_TOL))
            .unwrap_or_else(|| {
                // Rounding pushed v just outside every cone; take the op with
                // the least violation.
                self.stabilizer
                    .iter()
                    .max_by(|a, b| {
                        let va = a
                            .pulled
                            .iter()
                            .map(|n| dot3(*n, v))
                            .fold(f64::INFINITY, f64::min);
                        let vb = b
                            .pulled
                            .iter()
                            .map(|n| dot3(*n, v))
                            .fold(f64::INFINITY, f64::min);
                        va.total_cmp(&vb)
                    })
                    .expect("stabilizer is non-empty")
            });
        // q0 = k(q * y^-1): compose k with right multiplication by y^-1.
        let right = SymmetryOp {
            l: 0,
            r: yinv as u8,
            conjugate: false,
        };
        let forward = self.compose(chosen.op, right);
        let q0 = self.apply(forward, q);
        (self.inverse(forward), q0)
    }

    /// Reference reduction: scans all 14400 ops in canonical order and
    /// returns the first whose inverse lands `q` in the orthoscheme.
    pub fn reduce_exhaustive(&self, q: UnitQuaternion) -> (SymmetryOp, UnitQuaternion) {
        let mut best: Option<(f64, SymmetryOp, UnitQuaternion)> = None;
        for op in self.ops() {
            let q0 = self.apply(self.inverse(op), q);
            let lam = self.orthoscheme.barycentric(q0);
            let worst = lam.iter().copied().fold(f64::INFINITY, f64::min);
            if worst >= -MEMBERSHIP_TOL {
                return (op, q0);
            }
            if best.as_ref().is_none_or(|b| worst > b.0) {
                best = Some((worst, op, q0));
            }
        }
        let (_, op, q0) = best.expect("G is non-empty");
        (op, q0)
    }
}

/// Checks a finite list of ops for pairwise distinct action on a test point;
/// used to confirm the Z2 quotient.
pub fn distinct_actions(g: &SymmetryGroup, probe: UnitQuaternion) -> usize {
    let mut seen = HashSet::new();
    for op in g.ops() {
        seen.insert(g.apply(op, probe).key());
    }
    seen.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_unit(rng: &mut ChaCha8Rng) -> UnitQuaternion {
        loop {
            let v: [f64; 4] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
            let n2: f64 = v.iter().map(|x| x * x).sum();
            if n2 > 1e-2 && n2 < 1.0 {
                return UnitQuaternion::new_normalize(v[0], v[1], v[2], v[3]);
            }
        }
    }

    #[test]
    fn polytope_counts() {
        let g = SymmetryGroup::standard();
        let p = g.polytope();
        assert_eq!(p.neighbors.len(), 120);
        assert_eq!(p.edges.len(), 720);
        assert_eq!(p.faces.len(), 1200);
        assert_eq!(p.cells.len(), 600);
        assert_eq!(p.euler_characteristic(), 0);
        assert!(p.neighbors.iter().all(|n| n.len() == 12));
    }

    #[test]
    fn edge_dot_is_nearest_neighbour_shell() {
        let g = SymmetryGroup::standard();
        let y = g.y();
        let max = (1..y.len() - 1)
            .map(|i| y.get(0).dot(y.get(i)))
            .fold(f64::MIN, f64::max);
        assert!((max - 0.809017).abs() < 1e-6);
        assert!((max - EDGE_DOT).abs() < 1e-15);
    }

    #[test]
    fn reference_cell_is_a_clique_at_identity() {
        let g = SymmetryGroup::standard();
        let cell = g.polytope().reference_cell();
        assert_eq!(cell[0], 0);
        for a in 0..4 {
            for b in a + 1..4 {
                let d = g.y().get(cell[a] as usize).dot(g.y().get(cell[b] as usize));
                assert!((d - EDGE_DOT).abs() < 1e-12);
            }
        }
        let o = g.orthoscheme();
        assert_eq!(o.v, UnitQuaternion::IDENTITY);
        assert!(g.y().index_of(o.v).is_some());
        // strictly ordered inner products with V
        let (de, df, dc) = (o.v.dot(o.e), o.v.dot(o.f), o.v.dot(o.c));
        assert!(1.0 > de && de > df && df > dc);
    }

    #[test]
    fn group_order_and_quotient() {
        let g = SymmetryGroup::standard();
        assert_eq!(g.ops().filter(|o| !o.conjugate).count(), 7200);
        assert_eq!(g.ops().count(), 14400);
        let probe = g.orthoscheme().centroid();
        assert_eq!(distinct_actions(&g, probe), 14400);
        let id = g.identity();
        assert_eq!(g.apply(id, probe), probe);
        for i in [0usize, 77, 7199, 7200, 9001, 14399] {
            assert_eq!(g.op_index(g.op_at(i)), i);
        }
    }

    #[test]
    fn inverse_and_compose_agree_with_action() {
        let g = SymmetryGroup::standard();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let q = random_unit(&mut rng);
        for _ in 0..200 {
            let a = g.op_at(rng.random_range(0..G_ORDER));
            let b = g.op_at(rng.random_range(0..G_ORDER));
            let ab = g.apply(g.compose(a, b), q);
            let direct = g.apply(a, g.apply(b, q));
            assert!(ab.quat().max_abs_diff(direct.quat()) < 1e-12);
            let back = g.apply(g.inverse(a), g.apply(a, q));
            assert!(back.quat().max_abs_diff(q.quat()) < 1e-12);
        }
    }

    #[test]
    fn apply_is_an_isometry() {
        let g = SymmetryGroup::standard();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let (p, q) = (random_unit(&mut rng), random_unit(&mut rng));
            let op = g.op_at(rng.random_range(0..G_ORDER));
            let d0 = p.chord(q);
            let d1 = g.apply(op, p).chord(g.apply(op, q));
            assert!((d0 - d1).abs() < 1e-12);
        }
        // l = r^-1 fixes the identity
        let r = 17usize;
        let op = g.canonicalize(g.y().inv(r), r, false);
        assert!(
            g.apply(op, UnitQuaternion::IDENTITY)
                .quat()
                .max_abs_diff(Quaternion::ONE)
                < 1e-15
        );
    }

    #[test]
    fn orbit_sizes() {
        let g = SymmetryGroup::standard();
        let o = g.orthoscheme();
        let third = UnitQuaternion::normalize(
            o.v.quat().scale(2.0) + {
                // the neighbour whose midpoint with V is E
                let n1 = g.polytope().reference_cell()[1] as usize;
                g.y().get(n1).quat()
            },
        );
        assert_eq!(g.orbit(o.v).len(), 120);
        assert_eq!(g.orbit(o.c).len(), 600);
        assert_eq!(g.orbit(o.e).len(), 720);
        assert_eq!(g.orbit(third).len(), 1440);
        assert_eq!(g.orbit(o.centroid()).len(), 14400);
    }

    #[test]
    fn reduce_vertex_is_identity() {
        let g = SymmetryGroup::standard();
        let (op, q0) = g.reduce(UnitQuaternion::IDENTITY);
        assert_eq!(op, g.identity());
        assert_eq!(q0, UnitQuaternion::IDENTITY);
        let (op, q0) = g.reduce_exhaustive(UnitQuaternion::IDENTITY);
        assert_eq!(op, g.identity());
        assert_eq!(q0, UnitQuaternion::IDENTITY);
    }

    #[test]
    fn reduce_round_trip_and_invariance() {
        let g = SymmetryGroup::standard();
        let o = g.orthoscheme();
        let m = o.centroid();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let op = g.op_at(rng.random_range(0..G_ORDER));
            let (back_op, q0) = g.reduce(g.apply(op, m));
            assert!(q0.quat().max_abs_diff(m.quat()) < 1e-12);
            assert!(
                g.apply(back_op, q0)
                    .quat()
                    .max_abs_diff(g.apply(op, m).quat())
                    < 1e-12
            );
        }
        for _ in 0..50 {
            let q = random_unit(&mut rng);
            let (op, q0) = g.reduce(q);
            assert!(o.contains(q0));
            assert!(g.apply(op, q0).quat().max_abs_diff(q.quat()) < 1e-12);
        }
    }

    #[test]
    fn all_images_of_a_generic_point_reduce_together() {
        let g = SymmetryGroup::standard();
        let m = g.orthoscheme().centroid();
        for p in g.orbit(m) {
            let (_, q0) = g.reduce(p);
            assert!(q0.quat().max_abs_diff(m.quat()) < 1e-12);
        }
    }
}
