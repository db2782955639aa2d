//! Search for a 20-tetrahedron subdivision of one tetrahedral cell using
//! its corners, the two third points of every edge and the centre, with
//! every face split into 3 corner triangles plus a 4-triangle hexagon fan.
//!
//! All geometry is exact: points are integer barycentric coordinates scaled
//! by 12, so the cell has determinant 1728.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};

pub const TEMPLATE_TETS: usize = 20;
pub const CELL_DET: i64 = 1728;

type P3 = [i64; 3];

fn sub(a: P3, b: P3) -> P3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross(a: P3, b: P3) -> P3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot(a: P3, b: P3) -> i64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn orient(a: P3, b: P3, c: P3, d: P3) -> i64 {
    dot(cross(sub(b, a), sub(c, a)), sub(d, a))
}

/// The 17 local vertices: corners 0..4, third points 4..16 with
/// `third(i, j)` nearer corner `i`, and the centre 16.
pub fn local_vertices() -> Vec<P3> {
    let corner = |i: usize| -> P3 {
        match i {
            0 => [0, 0, 0],
            1 => [12, 0, 0],
            2 => [0, 12, 0],
            _ => [0, 0, 12],
        }
    };
    let mut v: Vec<P3> = (0..4).map(corner).collect();
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                let (a, b) = (corner(i), corner(j));
                v.push(std::array::from_fn(|k| (2 * a[k] + b[k]) / 3));
            }
        }
    }
    v.push([3, 3, 3]);
    v
}

pub const CENTRE: u8 = 16;

pub fn third(i: usize, j: usize) -> u8 {
    debug_assert!(i != j && i < 4 && j < 4);
    (4 + 3 * i + if j < i { j } else { j - 1 }) as u8
}

/// Barycentric coordinates (times 12).
fn bary(p: P3) -> [i64; 4] {
    [12 - p[0] - p[1] - p[2], p[0], p[1], p[2]]
}

/// Hexagon of third points on the face opposite `k`, in cyclic order.
pub fn hexagon(k: usize) -> [u8; 6] {
    let o: Vec<usize> = (0..4).filter(|&i| i != k).collect();
    let (a, b, c) = (o[0], o[1], o[2]);
    [
        third(a, b),
        third(b, a),
        third(b, c),
        third(c, b),
        third(c, a),
        third(a, c),
    ]
}

/// The 7 triangles of the face opposite `k` with the fan anchored at
/// hexagon position `anchor`.
pub fn face_triangles(k: usize, anchor: usize) -> Vec<[u8; 3]> {
    let o: Vec<usize> = (0..4).filter(|&i| i != k).collect();
    let mut out = Vec::with_capacity(7);
    for &x in &o {
        let ys: Vec<usize> = o.iter().copied().filter(|&y| y != x).collect();
        out.push(sorted3([x as u8, third(x, ys[0]), third(x, ys[1])]));
    }
    let h = hexagon(k);
    for i in 1..5 {
        out.push(sorted3([
            h[anchor],
            h[(anchor + i) % 6],
            h[(anchor + i + 1) % 6],
        ]));
    }
    out
}

fn sorted3(mut a: [u8; 3]) -> [u8; 3] {
    a.sort_unstable();
    a
}

fn sorted4(mut a: [u8; 4]) -> [u8; 4] {
    a.sort_unstable();
    a
}

fn tet_faces(t: [u8; 4]) -> [([u8; 3], u8); 4] {
    [
        ([t[1], t[2], t[3]], t[0]),
        ([t[0], t[2], t[3]], t[1]),
        ([t[0], t[1], t[3]], t[2]),
        ([t[0], t[1], t[2]], t[3]),
    ]
}

/// Whether the interiors of two tetrahedra meet, by exact separating-axis
/// tests over face normals and edge-pair cross products.
fn interiors_meet(a: &[P3; 4], b: &[P3; 4]) -> bool {
    let edges = |t: &[P3; 4]| -> Vec<P3> {
        let mut e = Vec::with_capacity(6);
        for i in 0..4 {
            for j in i + 1..4 {
                e.push(sub(t[j], t[i]));
            }
        }
        e
    };
    let normals = |t: &[P3; 4]| -> Vec<P3> {
        (0..4)
            .map(|s| {
                let f: Vec<P3> = (0..4).filter(|&i| i != s).map(|i| t[i]).collect();
                cross(sub(f[1], f[0]), sub(f[2], f[0]))
            })
            .collect()
    };
    let mut axes = normals(a);
    axes.extend(normals(b));
    for ea in edges(a) {
        for eb in edges(b) {
            axes.push(cross(ea, eb));
        }
    }
    for ax in axes {
        if ax == [0, 0, 0] {
            continue;
        }
        let pa: Vec<i64> = a.iter().map(|p| dot(*p, ax)).collect();
        let pb: Vec<i64> = b.iter().map(|p| dot(*p, ax)).collect();
        let (amin, amax) = (*pa.iter().min().unwrap(), *pa.iter().max().unwrap());
        let (bmin, bmax) = (*pb.iter().min().unwrap(), *pb.iter().max().unwrap());
        if amax <= bmin || bmax <= amin {
            return false;
        }
    }
    true
}

#[derive(Clone, Debug)]
pub struct CellTemplate {
    pub vertices: Vec<P3>,
    /// Fan anchor (hexagon position) of the face opposite each corner.
    pub anchors: [usize; 4],
    pub tets: Vec<[u8; 4]>,
}

/// Counts checked on a template.
#[derive(Clone, Debug, PartialEq)]
pub struct TemplateReport {
    pub tets: usize,
    pub volume_residual: f64,
    pub triangles_per_face: [usize; 4],
    pub interior_faces: usize,
    pub interior_edges: usize,
    pub uses_centre: bool,
    /// Every interior face is shared by exactly two tets and every boundary
    /// triangle by one.
    pub face_to_face: bool,
}

impl TemplateReport {
    pub fn ok(&self) -> bool {
        self.tets == TEMPLATE_TETS
            && self.volume_residual <= 1e-9
            && self.triangles_per_face == [7; 4]
            && self.interior_faces == 26
            && self.interior_edges == 8
            && self.uses_centre
            && self.face_to_face
    }
}

impl CellTemplate {
    pub fn boundary_triangles(&self) -> BTreeSet<[u8; 3]> {
        (0..4)
            .flat_map(|k| face_triangles(k, self.anchors[k]))
            .collect()
    }

    /// Recomputes every property from the tetrahedra alone.
    pub fn validate(&self) -> TemplateReport {
        let v = &self.vertices;
        let vol: i64 = self
            .tets
            .iter()
            .map(|t| {
                orient(
                    v[t[0] as usize],
                    v[t[1] as usize],
                    v[t[2] as usize],
                    v[t[3] as usize],
                )
                .abs()
            })
            .sum();
        let mut face_use: BTreeMap<[u8; 3], usize> = BTreeMap::new();
        let mut edges: BTreeSet<[u8; 2]> = BTreeSet::new();
        for t in &self.tets {
            for (f, _) in tet_faces(*t) {
                *face_use.entry(f).or_default() += 1;
            }
            for i in 0..4 {
                for j in i + 1..4 {
                    edges.insert([t[i], t[j]]);
                }
            }
        }
        let boundary = self.boundary_triangles();
        let on_boundary =
            |f: &[u8; 3]| (0..4).any(|k| f.iter().all(|&i| bary(v[i as usize])[k] == 0));
        let mut triangles_per_face = [0; 4];
        for f in face_use.keys() {
            for (k, n) in triangles_per_face.iter_mut().enumerate() {
                if f.iter().all(|&i| bary(v[i as usize])[k] == 0) {
                    *n += 1;
                }
            }
        }
        let face_to_face = face_use.iter().all(|(f, &n)| {
            if on_boundary(f) {
                n == 1 && boundary.contains(f)
            } else {
                n == 2
            }
        }) && boundary.iter().all(|f| face_use.get(f) == Some(&1));
        let boundary_edges: BTreeSet<[u8; 2]> = boundary
            .iter()
            .flat_map(|f| [[f[0], f[1]], [f[0], f[2]], [f[1], f[2]]])
            .collect();
        TemplateReport {
            tets: self.tets.len(),
            volume_residual: (vol - CELL_DET).abs() as f64 / CELL_DET as f64,
            triangles_per_face,
            interior_faces: face_use.keys().filter(|f| !on_boundary(f)).count(),
            interior_edges: edges.difference(&boundary_edges).count(),
            uses_centre: self.tets.iter().any(|t| t.contains(&CENTRE)),
            face_to_face,
        }
    }
}

struct Search<'a> {
    v: &'a [P3],
    candidates: &'a [[u8; 4]],
    cand_index: &'a BTreeMap<[u8; 4], usize>,
    overlap: &'a [Vec<u64>],
    placed: Vec<usize>,
    open: BTreeMap<[u8; 3], i64>,
    nodes: usize,
    node_limit: usize,
}

impl Search<'_> {
    fn clashes(&self, c: usize) -> bool {
        self.placed
            .iter()
            .any(|&p| self.overlap[c][p / 64] >> (p % 64) & 1 == 1)
    }

    fn run(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return false;
        }
        let Some((&face, &side)) = self.open.iter().next() else {
            return self.placed.len() == TEMPLATE_TETS
                && self
                    .placed
                    .iter()
                    .any(|&c| self.candidates[c].contains(&CENTRE));
        };
        if self.placed.len() >= TEMPLATE_TETS {
            return false;
        }
        let p = |i: u8| self.v[i as usize];
        for apex in 0..self.v.len() as u8 {
            if face.contains(&apex) {
                continue;
            }
            if orient(p(face[0]), p(face[1]), p(face[2]), p(apex)).signum() != side {
                continue;
            }
            let tet = sorted4([face[0], face[1], face[2], apex]);
            let Some(&c) = self.cand_index.get(&tet) else {
                continue;
            };
            if self.clashes(c) {
                continue;
            }
            let mut added = Vec::new();
            let mut removed = Vec::new();
            for (f, opp) in tet_faces(tet) {
                if let Some(s) = self.open.remove(&f) {
                    removed.push((f, s));
                } else {
                    let o = orient(p(f[0]), p(f[1]), p(f[2]), p(opp));
                    self.open.insert(f, -o.signum());
                    added.push(f);
                }
            }
            self.placed.push(c);
            if self.run() {
                return true;
            }
            self.placed.pop();
            for f in added {
                self.open.remove(&f);
            }
            for (f, s) in removed {
                self.open.insert(f, s);
            }
        }
        false
    }
}

/// First valid template in the order: fan anchors lexicographically over
/// the four faces, then depth-first filling from the smallest open face
/// with apexes by increasing id.
pub fn derive_cell_template() -> Result<CellTemplate> {
    derive_with_limit(usize::MAX)
}

pub fn derive_with_limit(node_limit: usize) -> Result<CellTemplate> {
    let v = local_vertices();
    let n = v.len() as u8;
    let inside = [3i64, 3, 3];
    // Empty, non-degenerate tetrahedra.
    let mut base: Vec<[u8; 4]> = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let t = [a, b, c, d];
                    let pts = t.map(|i| v[i as usize]);
                    let vol = orient(pts[0], pts[1], pts[2], pts[3]);
                    if vol == 0 {
                        continue;
                    }
                    let empty = (0..n).filter(|i| !t.contains(i)).all(|i| {
                        let q = v[i as usize];
                        let s = tet_faces([0, 1, 2, 3])
                            .iter()
                            .map(|(f, o)| {
                                let f = f.map(|k| pts[k as usize]);
                                let want = orient(f[0], f[1], f[2], pts[*o as usize]).signum();
                                orient(f[0], f[1], f[2], q).signum() * want
                            })
                            .collect::<Vec<_>>();
                        s.iter().any(|&x| x < 0)
                    });
                    if empty {
                        base.push(t);
                    }
                }
            }
        }
    }
    let pts = |t: &[u8; 4]| t.map(|i| v[i as usize]);
    let words = base.len().div_ceil(64);
    let mut overlap_all = vec![vec![0u64; words]; base.len()];
    for i in 0..base.len() {
        for j in i + 1..base.len() {
            if interiors_meet(&pts(&base[i]), &pts(&base[j])) {
                overlap_all[i][j / 64] |= 1 << (j % 64);
                overlap_all[j][i / 64] |= 1 << (i % 64);
            }
        }
    }
    let in_plane = |ids: &[u8]| (0..4).any(|k| ids.iter().all(|&i| bary(v[i as usize])[k] == 0));

    let mut total_nodes = 0usize;
    for code in 0..6usize.pow(4) {
        let anchors = [code / 216 % 6, code / 36 % 6, code / 6 % 6, code % 6];
        let boundary: BTreeSet<[u8; 3]> =
            (0..4).flat_map(|k| face_triangles(k, anchors[k])).collect();
        let boundary_edges: BTreeSet<[u8; 2]> = boundary
            .iter()
            .flat_map(|f| [[f[0], f[1]], [f[0], f[2]], [f[1], f[2]]])
            .collect();
        // Keep tetrahedra whose boundary-lying faces and edges belong to this
        // boundary triangulation; the rest could never be completed.
        let keep: Vec<usize> = (0..base.len())
            .filter(|&i| {
                let t = base[i];
                let faces_ok = tet_faces(t)
                    .iter()
                    .all(|(f, _)| !in_plane(f) || boundary.contains(f));
                let edges_ok = (0..4).all(|a| {
                    (a + 1..4).all(|b| {
                        let e = [t[a], t[b]];
                        !in_plane(&e) || boundary_edges.contains(&e)
                    })
                });
                faces_ok && edges_ok
            })
            .collect();
        let candidates: Vec<[u8; 4]> = keep.iter().map(|&i| base[i]).collect();
        let cand_index: BTreeMap<[u8; 4], usize> = candidates
            .iter()
            .enumerate()
            .map(|(i, t)| (*t, i))
            .collect();
        let w = candidates.len().div_ceil(64);
        let overlap: Vec<Vec<u64>> = keep
            .iter()
            .map(|&i| {
                let mut row = vec![0u64; w];
                for (cj, &j) in keep.iter().enumerate() {
                    if overlap_all[i][j / 64] >> (j % 64) & 1 == 1 {
                        row[cj / 64] |= 1 << (cj % 64);
                    }
                }
                row
            })
            .collect();
        let mut open = BTreeMap::new();
        for f in &boundary {
            let o = orient(v[f[0] as usize], v[f[1] as usize], v[f[2] as usize], inside);
            open.insert(*f, o.signum());
        }
        let mut s = Search {
            v: &v,
            candidates: &candidates,
            cand_index: &cand_index,
            overlap: &overlap,
            placed: Vec::new(),
            open,
            nodes: 0,
            node_limit: node_limit.saturating_sub(total_nodes),
        };
        if s.run() {
            let mut tets: Vec<[u8; 4]> = s.placed.iter().map(|&c| candidates[c]).collect();
            tets.sort_unstable();
            return Ok(CellTemplate {
                vertices: v,
                anchors,
                tets,
            });
        }
        total_nodes += s.nodes;
        if total_nodes >= node_limit {
            return Err(Error::Template(format!("node limit {node_limit} reached")));
        }
    }
    Err(Error::Template(
        "no 20-tetrahedron subdivision with hexagon-fan faces uses the centre".into(),
    ))
}

/// Interior faces and edges implied for a whole level by per-cell counts:
/// returns `(faces, edges)` of the refined complex.
pub fn global_bookkeeping(e: u64, f: u64, c: u64) -> (u64, u64) {
    (c * 26 + f * 7, 3 * e + 6 * f + 8 * c)
}
