//! Geodesic hyperdomes: iterated subdivisions of the {3,3,5} on S3 whose
//! vertices (the P meshes) and per-flag points (the Q meshes) are unions of
//! G-orbits, each point labelled with a braid.

use std::collections::HashMap;
use std::sync::OnceLock;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::anyon::DRESSING_WIDTH;
use crate::atlas::Atlas;
use crate::braid::{BraidWord, PHI};
use crate::error::{Error, Result};
use crate::group::{FiniteQuatGroup, GroupName};
use crate::index::NeighborIndex;
use crate::navigator::{Dictionary, Navigator};
use crate::pointset::PointSet;
use crate::quat::{distance, uniform_unit, Quaternion, UnitQuaternion, DEDUP_TOL};
use crate::symmetry::SymmetryOp;

/// Core length of the dictionary used to label seeds.
pub const SEED_CORE_LEN: usize = 12;
/// Core length tried for seeds the first dictionary cannot label.
pub const SEED_FALLBACK_LEN: usize = 14;
/// Largest accepted distance from a seed to its labelled point.
pub const SEED_BUDGET: f64 = 5e-3;
pub const MAX_P_LEVEL: usize = 2;
pub const MAX_Q_LEVEL: usize = 1;

/// Vertex, edge, face and cell counts of one subdivision level.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MeshLevelCombinatorics {
    pub v: u64,
    pub e: u64,
    pub f: u64,
    pub c: u64,
}

impl MeshLevelCombinatorics {
    pub const LEVEL0: MeshLevelCombinatorics = MeshLevelCombinatorics {
        v: 120,
        e: 720,
        f: 1200,
        c: 600,
    };

    pub fn euler(&self) -> i64 {
        self.v as i64 - self.e as i64 + self.f as i64 - self.c as i64
    }

    /// Each cell splits into 20; new vertices are the old ones, one per
    /// cell and two per edge.
    pub fn next(&self) -> Self {
        let v = self.v + self.c + 2 * self.e;
        let c = 20 * self.c;
        let f = 2 * c;
        MeshLevelCombinatorics {
            v,
            e: v + f - c,
            f,
            c,
        }
    }

    /// Points of the Q mesh at this level: one per flag of every cell.
    pub fn q_count(&self) -> u64 {
        24 * self.c
    }
}

pub fn combinatorics(level: usize) -> MeshLevelCombinatorics {
    (0..level).fold(MeshLevelCombinatorics::LEVEL0, |c, _| c.next())
}

/// The frequency-3 geodesic dome on S2 and its orbit sizes under the
/// icosahedral reflection group.
#[derive(Clone, Debug)]
pub struct Dome2d {
    pub points: Vec<[f64; 3]>,
    pub orbit_sizes: [usize; 3],
}

fn normalize3(v: [f64; 3]) -> [f64; 3] {
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    v.map(|x| x / n)
}

fn slerp3(a: [f64; 3], b: [f64; 3], t: f64) -> [f64; 3] {
    let cos = (a[0] * b[0] + a[1] * b[1] + a[2] * b[2]).clamp(-1.0, 1.0);
    let th = cos.acos();
    let (wa, wb) = (((1.0 - t) * th).sin() / th.sin(), (t * th).sin() / th.sin());
    std::array::from_fn(|i| wa * a[i] + wb * b[i])
}

/// Seeds a vertex, a face centre and an edge point one third of the way
/// along, and propagates them by the 120 rotations and rotoreflections
/// coming from Y.
pub fn dome2d() -> Dome2d {
    let y = FiniteQuatGroup::standard(GroupName::Y).expect("Y closes");
    let vertex = normalize3([1.0, PHI, 0.0]);
    let face = normalize3([1.0, 1.0, 1.0]);
    let third = slerp3(vertex, normalize3([0.0, 1.0, PHI]), 1.0 / 3.0);
    let mut set = PointSet::new(DEDUP_TOL);
    let mut points = Vec::new();
    let mut orbit_sizes = [0; 3];
    for (k, seed) in [vertex, face, third].into_iter().enumerate() {
        let before = points.len();
        let v = Quaternion::new(0.0, seed[0], seed[1], seed[2]);
        for q in y.elements().iter().filter(|q| q.is_canonical()) {
            let r = q.quat() * v * q.quat().conj();
            for s in [1.0, -1.0] {
                let p = [s * r.x, s * r.y, s * r.z];
                if set.insert([p[0], p[1], p[2], 0.0]).1 {
                    points.push(p);
                }
            }
        }
        orbit_sizes[k] = points.len() - before;
    }
    Dome2d {
        points,
        orbit_sizes,
    }
}

/// Point `t` of the way along the great arc from `a` to `b`.
pub fn slerp(a: UnitQuaternion, b: UnitQuaternion, t: f64) -> UnitQuaternion {
    let th = a.dot(b).clamp(-1.0, 1.0).acos();
    let (wa, wb) = (((1.0 - t) * th).sin() / th.sin(), (t * th).sin() / th.sin());
    UnitQuaternion::normalize(a.quat().scale(wa) + b.quat().scale(wb))
}

fn sorted<const N: usize>(mut a: [u32; N]) -> [u32; N] {
    a.sort_unstable();
    a
}

/// A tetrahedral decomposition of S3 with vertices on the sphere.
#[derive(Clone, Debug)]
pub struct CellComplex {
    pub level: usize,
    pub points: Vec<UnitQuaternion>,
    pub edges: Vec<[u32; 2]>,
    pub faces: Vec<[u32; 3]>,
    pub cells: Vec<[u32; 4]>,
}

impl CellComplex {
    /// The {3,3,5} on the elements of `y`.
    pub fn level0(y: &FiniteQuatGroup) -> Self {
        let p = crate::symmetry::Polytope335::from_group(y);
        CellComplex {
            level: 0,
            points: y.elements().to_vec(),
            edges: p.edges,
            faces: p.faces,
            cells: p.cells,
        }
    }

    pub fn at_level(y: &FiniteQuatGroup, level: usize) -> Self {
        (0..level).fold(Self::level0(y), |c, _| c.refine())
    }

    pub fn combinatorics(&self) -> MeshLevelCombinatorics {
        MeshLevelCombinatorics {
            v: self.points.len() as u64,
            e: self.edges.len() as u64,
            f: self.faces.len() as u64,
            c: self.cells.len() as u64,
        }
    }

    /// Splits every cell into 20 while respecting all symmetries of the
    /// complex. New vertices are the cell centres and the two points at one
    /// third of each edge. Each cell keeps four corner tetrahedra and four
    /// cones from its centre over the cut triangles; the rest of the two
    /// cells on either side of a face is the double pyramid from both
    /// centres over the face's hexagon of third points, cut into six
    /// tetrahedra around the axis joining the centres.
    pub fn refine(&self) -> CellComplex {
        let nv = self.points.len() as u32;
        let edge_id: HashMap<[u32; 2], u32> = self
            .edges
            .iter()
            .enumerate()
            .map(|(i, e)| (*e, i as u32))
            .collect();
        let third = |x: u32, y: u32| -> u32 {
            let e = edge_id[&sorted([x, y])];
            nv + 2 * e + u32::from(x > y)
        };
        let centre0 = nv + 2 * self.edges.len() as u32;

        let mut points = self.points.clone();
        for &[a, b] in &self.edges {
            let (pa, pb) = (self.points[a as usize], self.points[b as usize]);
            points.push(slerp(pa, pb, 1.0 / 3.0));
            points.push(slerp(pb, pa, 1.0 / 3.0));
        }
        for c in &self.cells {
            let s = c
                .iter()
                .fold(Quaternion::new(0.0, 0.0, 0.0, 0.0), |acc, &i| {
                    acc + self.points[i as usize].quat()
                });
            points.push(UnitQuaternion::normalize(s));
        }

        let mut cells = Vec::with_capacity(self.cells.len() * 20);
        for (ci, c) in self.cells.iter().enumerate() {
            let m = centre0 + ci as u32;
            for k in 0..4 {
                let x = c[k];
                let others: Vec<u32> = (0..4).filter(|&j| j != k).map(|j| third(x, c[j])).collect();
                cells.push(sorted([x, others[0], others[1], others[2]]));
                cells.push(sorted([m, others[0], others[1], others[2]]));
            }
        }
        let mut face_cells: HashMap<[u32; 3], Vec<u32>> = HashMap::new();
        for (ci, c) in self.cells.iter().enumerate() {
            for skip in 0..4 {
                let f: Vec<u32> = (0..4).filter(|&j| j != skip).map(|j| c[j]).collect();
                face_cells
                    .entry(sorted([f[0], f[1], f[2]]))
                    .or_default()
                    .push(ci as u32);
            }
        }
        for f in &self.faces {
            let owners = &face_cells[f];
            assert_eq!(owners.len(), 2, "every face bounds two cells");
            let (mx, my) = (centre0 + owners[0], centre0 + owners[1]);
            let [a, b, c] = *f;
            let hex = [
                third(a, b),
                third(b, a),
                third(b, c),
                third(c, b),
                third(c, a),
                third(a, c),
            ];
            for i in 0..6 {
                cells.push(sorted([mx, my, hex[i], hex[(i + 1) % 6]]));
            }
        }
        cells.sort_unstable();

        let mut faces: Vec<[u32; 3]> = Vec::with_capacity(cells.len() * 2);
        let mut edges: Vec<[u32; 2]> = Vec::with_capacity(cells.len() * 2);
        for c in &cells {
            for skip in 0..4 {
                let f: Vec<u32> = (0..4).filter(|&j| j != skip).map(|j| c[j]).collect();
                faces.push([f[0], f[1], f[2]]);
            }
            for i in 0..4 {
                for j in i + 1..4 {
                    edges.push([c[i], c[j]]);
                }
            }
        }
        faces.par_sort_unstable();
        faces.dedup();
        edges.par_sort_unstable();
        edges.dedup();
        CellComplex {
            level: self.level + 1,
            points,
            edges,
            faces,
            cells,
        }
    }

    /// Normalized centroid of each of the 24 flag tetrahedra of every cell:
    /// a vertex, the midpoint of an edge through it, the centroid of a face
    /// through that edge and the cell centroid, each pushed to S3.
    pub fn flag_points(&self) -> Vec<UnitQuaternion> {
        let p = |i: u32| self.points[i as usize].quat();
        let norm = UnitQuaternion::normalize;
        self.cells
            .par_iter()
            .flat_map_iter(|c| {
                let cell = norm(p(c[0]) + p(c[1]) + p(c[2]) + p(c[3]));
                let mut out = Vec::with_capacity(24);
                for &v in c {
                    for &u in c.iter().filter(|&&u| u != v) {
                        let edge = norm(p(v) + p(u));
                        for &w in c.iter().filter(|&&w| w != v && w != u) {
                            let face = norm(p(v) + p(u) + p(w));
                            out.push(norm(p(v) + edge.quat() + face.quat() + cell.quat()));
                        }
                    }
                }
                out
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MeshKind {
    P,
    Q,
}

impl MeshKind {
    pub fn letter(self) -> char {
        match self {
            MeshKind::P => 'P',
            MeshKind::Q => 'Q',
        }
    }
}

/// Orbit representative inside O with the braid labelling it.
#[derive(Clone, Debug)]
pub struct Seed {
    pub point: UnitQuaternion,
    pub braid: BraidWord,
    /// Length of the dictionary core inside `braid`.
    pub core_len: usize,
    /// `distance(evaluate(braid), point)`.
    pub err: f64,
}

#[derive(Clone, Debug)]
pub struct MeshPoint {
    pub point: UnitQuaternion,
    pub braid: BraidWord,
    /// `distance(evaluate(braid), point)`.
    pub err: f64,
    pub seed: u32,
    /// `apply(op, seed point) = point`.
    pub op: SymmetryOp,
}

#[derive(Clone, Debug)]
pub struct Mesh {
    pub kind: MeshKind,
    pub level: usize,
    pub seeds: Vec<Seed>,
    pub points: Vec<MeshPoint>,
}

impl Mesh {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn max_err(&self) -> f64 {
        self.points.iter().map(|p| p.err).fold(0.0, f64::max)
    }

    pub fn max_seed_err(&self) -> f64 {
        self.seeds.iter().map(|s| s.err).fold(0.0, f64::max)
    }

    pub fn positions(&self) -> Vec<UnitQuaternion> {
        self.points.iter().map(|p| p.point).collect()
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.kind.letter(), self.level)
    }
}

/// Labels orbit representatives by compiling them against a dictionary of
/// all cores up to a fixed length, matched modulo G. Seeds missing the
/// budget are retried once against a longer dictionary, built on first use.
#[derive(Debug)]
pub struct SeedSearch<'a> {
    atlas: &'a Atlas,
    nav: Navigator<'a>,
    fallback_len: usize,
    fallback: OnceLock<Navigator<'a>>,
}

fn seed_navigator(atlas: &Atlas, core_len: usize) -> Result<Navigator<'_>> {
    let dict = Dictionary::build(&atlas.group, core_len)?;
    let mut nav = Navigator::new(atlas, Some(dict), Vec::new())?;
    nav.set_dressing_width(DRESSING_WIDTH);
    Ok(nav)
}

impl<'a> SeedSearch<'a> {
    pub fn new(atlas: &'a Atlas) -> Result<Self> {
        Self::with_core_len(atlas, SEED_CORE_LEN, SEED_FALLBACK_LEN)
    }

    pub fn with_core_len(atlas: &'a Atlas, core_len: usize, fallback_len: usize) -> Result<Self> {
        Ok(SeedSearch {
            atlas,
            nav: seed_navigator(atlas, core_len)?,
            fallback_len,
            fallback: OnceLock::new(),
        })
    }

    pub fn navigator(&self) -> &Navigator<'a> {
        &self.nav
    }

    pub fn dictionary(&self) -> &Dictionary {
        self.nav.dictionary().expect("seed search has a dictionary")
    }

    pub fn label(&self, index: usize, point: UnitQuaternion) -> Result<Seed> {
        let mut r = self.nav.compile(point, SEED_BUDGET)?;
        if !r.met && self.fallback_len > self.dictionary().max_core_len {
            if self.fallback.get().is_none() {
                let _ = self
                    .fallback
                    .set(seed_navigator(self.atlas, self.fallback_len)?);
            }
            let nav = self.fallback.get().expect("fallback just built");
            let r2 = nav.compile(point, SEED_BUDGET)?;
            if r2.err < r.err {
                r = r2;
            }
        }
        if !r.met {
            return Err(Error::SeedBudget {
                index,
                err: r.err,
                budget: SEED_BUDGET,
            });
        }
        Ok(Seed {
            point,
            braid: r.word,
            core_len: r.core_len,
            err: r.err,
        })
    }
}

/// Geometric points of a mesh before any labelling.
pub fn mesh_positions(
    y: &FiniteQuatGroup,
    kind: MeshKind,
    level: usize,
) -> Result<Vec<UnitQuaternion>> {
    match kind {
        MeshKind::P if level <= MAX_P_LEVEL => Ok(CellComplex::at_level(y, level).points),
        MeshKind::Q if level <= MAX_Q_LEVEL => Ok(CellComplex::at_level(y, level).flag_points()),
        _ => Err(Error::MeshLevel {
            kind: kind.letter(),
            level,
        }),
    }
}

/// Builds the mesh: reduces every geometric point to find the orbit
/// representatives, labels each with a core, regenerates all points as
/// images of the representatives (first op in canonical order wins),
/// checks the regenerated set against the geometry, and attaches braids.
pub fn build_mesh(
    atlas: &Atlas,
    search: &SeedSearch,
    kind: MeshKind,
    level: usize,
) -> Result<Mesh> {
    let g = &atlas.group;
    let geometric = mesh_positions(atlas.y(), kind, level)?;

    let reduced: Vec<UnitQuaternion> = geometric.par_iter().map(|&p| g.reduce(p).1).collect();
    let mut reps = PointSet::new(DEDUP_TOL);
    let mut seed_points = Vec::new();
    for q in reduced {
        if reps.insert(q.to_array()).1 {
            seed_points.push(q);
        }
    }
    seed_points.sort_by_key(|q| q.key());

    let mut all = PointSet::new(DEDUP_TOL);
    let mut placed: Vec<(UnitQuaternion, u32, SymmetryOp)> = Vec::new();
    for (si, s) in seed_points.iter().enumerate() {
        for op in g.ops() {
            let p = g.apply(op, *s);
            if all.insert(p.to_array()).1 {
                placed.push((p, si as u32, op));
            }
        }
    }
    if placed.len() != geometric.len() {
        return Err(Error::MeshCheck(format!(
            "{} orbit points regenerated, {} geometric points",
            placed.len(),
            geometric.len()
        )));
    }
    if let Some(p) = geometric.iter().find(|p| all.find(&p.to_array()).is_none()) {
        return Err(Error::MeshCheck(format!(
            "geometric point {p} is not in any seed orbit"
        )));
    }

    let seeds: Vec<Seed> = seed_points
        .iter()
        .enumerate()
        .map(|(i, &s)| search.label(i, s))
        .collect::<Result<_>>()?;

    let mut points: Vec<MeshPoint> = placed
        .into_par_iter()
        .map(|(point, si, op)| {
            let seed = &seeds[si as usize];
            let braid = atlas.braid_for_op(op, &seed.braid);
            let err = distance(braid.evaluate_quat(), point);
            MeshPoint {
                point,
                braid,
                err,
                seed: si,
                op,
            }
        })
        .collect();
    points.par_sort_by_key(|p| (p.point.canonical_key(), p.point.key()));
    Ok(Mesh {
        kind,
        level,
        seeds,
        points,
    })
}

pub fn build_p(atlas: &Atlas, search: &SeedSearch, level: usize) -> Result<Mesh> {
    build_mesh(atlas, search, MeshKind::P, level)
}

pub fn build_q(atlas: &Atlas, search: &SeedSearch, level: usize) -> Result<Mesh> {
    build_mesh(atlas, search, MeshKind::Q, level)
}

/// Monte-Carlo estimate, with a fixed seed, of the largest projective
/// distance from a point of S3 to the nearest of `points`.
pub fn covering_radius(points: &[UnitQuaternion], samples: usize, seed: u64) -> f64 {
    if points.is_empty() {
        return f64::INFINITY;
    }
    // Half the mean spacing of the projective points.
    let spacing = (std::f64::consts::PI.powi(2) / points.len() as f64).cbrt();
    let index = NeighborIndex::new(points, (spacing / 2.0).clamp(1e-3, 0.5));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let queries: Vec<UnitQuaternion> = (0..samples).map(|_| uniform_unit(&mut rng)).collect();
    queries
        .par_iter()
        .map(|&q| index.nearest(q).map(|x| x.1).unwrap_or(f64::INFINITY))
        .reduce(|| 0.0, f64::max)
}
