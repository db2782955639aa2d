//! Word enumeration, the orthoscheme dictionary and gate compilation.
//!
//! Every braid word is reduced into the orthoscheme O. A target is reduced
//! the same way, matched against nearby dictionary points, and carried back
//! by the symmetry that reduced it, realized as Y~ words on either side.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::atlas::Atlas;
use crate::braid::{BraidLetter, BraidWord, PackedWord};
use crate::error::{Error, Result};
use crate::index::NeighborIndex;
use crate::quat::{distance, uniform_unit, Su2Matrix, UnitQuaternion};
use crate::symmetry::{SymmetryGroup, SymmetryOp};

/// Longest enumeration accepted (about 2.9e7 words at 16).
pub const MAX_ENUM_LEN: usize = 16;
/// Dictionary points closer than this are merged, keeping the shorter core.
pub const DICT_DEDUP_TOL: f64 = 1e-6;
/// Default grid cell of the navigator index.
pub const DEFAULT_CELL: f64 = 5e-3;
/// Dressing words tried per side unless changed.
pub const DEFAULT_DRESSING_WIDTH: usize = 16;
const TIE_TOL: f64 = 1e-14;

/// Number of freely reduced words of length `1..=max_len`.
pub fn word_count(max_len: usize) -> usize {
    (1..=max_len).map(|l| 4 * 3usize.pow(l as u32 - 1)).sum()
}

fn letter_quats() -> [UnitQuaternion; 4] {
    BraidLetter::ALL.map(|l| l.quat())
}

fn dfs<F: FnMut(&[BraidLetter], UnitQuaternion)>(
    prefix: &mut Vec<BraidLetter>,
    q: UnitQuaternion,
    max_len: usize,
    lq: &[UnitQuaternion; 4],
    visit: &mut F,
) {
    visit(prefix, q);
    if prefix.len() == max_len {
        return;
    }
    for (k, l) in BraidLetter::ALL.into_iter().enumerate() {
        if prefix.last().is_some_and(|p| p.inverse() == l) {
            continue;
        }
        prefix.push(l);
        dfs(prefix, lq[k] * q, max_len, lq, visit);
        prefix.pop();
    }
}

/// The 4 one-letter words, then the 12 reduced two-letter prefixes each
/// followed by all their extensions depth-first.
fn chunks(max_len: usize) -> Vec<Vec<BraidLetter>> {
    let mut out = vec![Vec::new()];
    if max_len >= 2 {
        for a in BraidLetter::ALL {
            for b in BraidLetter::ALL {
                if a.inverse() != b {
                    out.push(vec![a, b]);
                }
            }
        }
    }
    out
}

fn run_chunk<F: FnMut(&[BraidLetter], UnitQuaternion)>(
    prefix: &[BraidLetter],
    max_len: usize,
    lq: &[UnitQuaternion; 4],
    visit: &mut F,
) {
    if prefix.is_empty() {
        if max_len >= 1 {
            for (k, l) in BraidLetter::ALL.into_iter().enumerate() {
                visit(&[l], lq[k]);
            }
        }
        return;
    }
    let q = prefix
        .iter()
        .fold(UnitQuaternion::IDENTITY, |acc, l| l.quat() * acc);
    let mut buf = prefix.to_vec();
    dfs(&mut buf, q, max_len, lq, visit);
}

/// Visits every freely reduced word of length `1..=max_len` once, with its
/// value, in a fixed order.
pub fn enumerate_words<F: FnMut(&[BraidLetter], UnitQuaternion)>(
    max_len: usize,
    mut visit: F,
) -> Result<()> {
    if max_len > MAX_ENUM_LEN {
        return Err(Error::EnumerationBudget(max_len));
    }
    let lq = letter_quats();
    for prefix in chunks(max_len) {
        run_chunk(&prefix, max_len, &lq, &mut visit);
    }
    Ok(())
}

/// Parallel form of [`enumerate_words`]: one accumulator per chunk, returned
/// in chunk order so the concatenated output does not depend on scheduling.
pub fn enumerate_chunks<T, I, F>(max_len: usize, init: I, visit: F) -> Result<Vec<T>>
where
    T: Send,
    I: Fn() -> T + Sync,
    F: Fn(&mut T, &[BraidLetter], UnitQuaternion) + Sync,
{
    if max_len > MAX_ENUM_LEN {
        return Err(Error::EnumerationBudget(max_len));
    }
    let lq = letter_quats();
    Ok(chunks(max_len)
        .par_iter()
        .map(|prefix| {
            let mut acc = init();
            run_chunk(prefix, max_len, &lq, &mut |w, q| visit(&mut acc, w, q));
            acc
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DictEntry {
    /// Reduced point in O.
    pub q0: UnitQuaternion,
    pub word: PackedWord,
    /// `apply(op, q0)` is the value of `word`.
    pub op: SymmetryOp,
}

/// Reduced images of all short braid words.
#[derive(Clone, Debug)]
pub struct Dictionary {
    pub max_core_len: usize,
    /// Words enumerated, including the empty word.
    pub enumerated: usize,
    entries: Vec<DictEntry>,
}

impl Dictionary {
    /// Reduces the empty word and every freely reduced word up to
    /// `max_core_len`, then merges points within 1e-6 in (length, letters)
    /// order so that the shorter core survives.
    pub fn build(group: &SymmetryGroup, max_core_len: usize) -> Result<Self> {
        let chunks = enumerate_chunks(max_core_len, Vec::new, |acc: &mut Vec<DictEntry>, w, q| {
            let (op, q0) = group.reduce(q);
            acc.push(DictEntry {
                q0,
                word: PackedWord::pack(w),
                op,
            });
        })?;
        let (op, q0) = group.reduce(UnitQuaternion::IDENTITY);
        let mut all = vec![DictEntry {
            q0,
            word: PackedWord::pack(&[]),
            op,
        }];
        for c in chunks {
            all.extend(c);
        }
        all.par_sort_by_key(|e| e.word.order_key());
        let enumerated = all.len();
        let points: Vec<UnitQuaternion> = all.iter().map(|e| e.q0).collect();
        let keep = dedup_in_order(&points, DICT_DEDUP_TOL);
        drop(points);
        let entries = all
            .into_iter()
            .zip(keep)
            .filter_map(|(e, k)| k.then_some(e))
            .collect();
        Ok(Dictionary {
            max_core_len,
            enumerated,
            entries,
        })
    }

    pub fn from_entries(max_core_len: usize, enumerated: usize, entries: Vec<DictEntry>) -> Self {
        Dictionary {
            max_core_len,
            enumerated,
            entries,
        }
    }

    pub fn entries(&self) -> &[DictEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries merged away by deduplication.
    pub fn dedup_loss(&self) -> usize {
        self.enumerated - self.entries.len()
    }

    pub fn points(&self) -> Vec<UnitQuaternion> {
        self.entries.iter().map(|e| e.q0).collect()
    }

    /// Monte-Carlo covering radius of O: uniform samples on S3 are reduced
    /// and matched to the nearest stored point.
    pub fn covering_radius(&self, group: &SymmetryGroup, samples: usize, seed: u64) -> f64 {
        let pts = self.points();
        let index = NeighborIndex::new(&pts, 2e-2);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let queries: Vec<UnitQuaternion> = (0..samples).map(|_| uniform_unit(&mut rng)).collect();
        queries
            .par_iter()
            .map(|&q| {
                let (_, q0) = group.reduce(q);
                index.nearest(q0).map(|x| x.1).unwrap_or(f64::INFINITY)
            })
            .reduce(|| 0.0, f64::max)
    }
}

/// Greedy deduplication: point `i` is kept unless an earlier kept point lies
/// within `tol` (Euclidean). Uses a sorted grid so memory stays linear.
pub fn dedup_in_order(points: &[UnitQuaternion], tol: f64) -> Vec<bool> {
    let cell = 4.0 * tol;
    let key = |p: &[f64; 4]| p.map(|x| (x / cell).floor() as i32);
    let mut sorted: Vec<([i32; 4], u32)> = points
        .iter()
        .enumerate()
        .map(|(i, p)| (key(&p.to_array()), i as u32))
        .collect();
    sorted.par_sort_unstable();
    let mut keep = vec![false; points.len()];
    for (i, p) in points.iter().enumerate() {
        let a = p.to_array();
        let base = key(&a);
        let side: [i32; 4] = std::array::from_fn(|d| {
            let frac = a[d] - base[d] as f64 * cell;
            if frac < tol {
                -1
            } else if frac > cell - tol {
                1
            } else {
                0
            }
        });
        let mut dup = false;
        'cells: for mask in 0..16u32 {
            let mut k = base;
            for d in 0..4 {
                if mask & (1 << d) != 0 {
                    if side[d] == 0 {
                        continue 'cells;
                    }
                    k[d] += side[d];
                }
            }
            let lo = sorted.partition_point(|x| x.0 < k);
            for &(kk, j) in &sorted[lo..] {
                if kk != k {
                    break;
                }
                if keep[j as usize] && p.chord(points[j as usize]) <= tol {
                    dup = true;
                    break 'cells;
                }
            }
        }
        keep[i] = !dup;
    }
    keep
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    /// A mesh braid, used as is.
    Mesh,
    /// A dictionary core, used as is.
    Dictionary,
    /// A core dressed with Y~ words on one or both sides.
    Hybrid,
}

impl std::fmt::Display for Source {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Source::Mesh => "mesh",
            Source::Dictionary => "dictionary",
            Source::Hybrid => "hybrid",
        })
    }
}

#[derive(Clone, Debug)]
pub struct CompileResult {
    pub word: BraidWord,
    pub achieved: Su2Matrix,
    /// `distance(evaluate(word), target)`, computed from the final word.
    pub err: f64,
    pub core_len: usize,
    pub total_len: usize,
    pub source: Source,
    /// Whether `err <= eps`.
    pub met: bool,
}

#[derive(Clone, Debug)]
struct MeshCore {
    q0: UnitQuaternion,
    op: SymmetryOp,
    word: BraidWord,
}

/// Read-only compilation engine over a dictionary and/or a list of mesh
/// braids.
#[derive(Clone, Debug)]
pub struct Navigator<'a> {
    atlas: &'a Atlas,
    dict: Option<Dictionary>,
    mesh: Vec<MeshCore>,
    index: NeighborIndex,
    width: usize,
}

impl<'a> Navigator<'a> {
    pub fn new(
        atlas: &'a Atlas,
        dict: Option<Dictionary>,
        mesh_words: Vec<BraidWord>,
    ) -> Result<Self> {
        Self::with_cell(atlas, dict, mesh_words, DEFAULT_CELL)
    }

    pub fn with_cell(
        atlas: &'a Atlas,
        dict: Option<Dictionary>,
        mesh_words: Vec<BraidWord>,
        cell: f64,
    ) -> Result<Self> {
        if dict.as_ref().is_none_or(|d| d.is_empty()) && mesh_words.is_empty() {
            return Err(Error::NoResource);
        }
        let mesh: Vec<MeshCore> = mesh_words
            .into_par_iter()
            .map(|word| {
                let (op, q0) = atlas.group.reduce(word.evaluate_quat());
                MeshCore { q0, op, word }
            })
            .collect();
        let mut pts = dict.as_ref().map(|d| d.points()).unwrap_or_default();
        pts.extend(mesh.iter().map(|m| m.q0));
        let index = NeighborIndex::new(&pts, cell);
        Ok(Navigator {
            atlas,
            dict,
            mesh,
            index,
            width: DEFAULT_DRESSING_WIDTH,
        })
    }

    pub fn atlas(&self) -> &Atlas {
        self.atlas
    }

    pub fn dictionary(&self) -> Option<&Dictionary> {
        self.dict.as_ref()
    }

    fn dict_len(&self) -> usize {
        self.dict.as_ref().map_or(0, |d| d.len())
    }

    fn core(&self, id: usize) -> (UnitQuaternion, SymmetryOp, bool) {
        let n = self.dict_len();
        if id < n {
            let e = &self.dict.as_ref().unwrap().entries[id];
            (e.q0, e.op, false)
        } else {
            let m = &self.mesh[id - n];
            (m.q0, m.op, true)
        }
    }

    fn core_word(&self, id: usize) -> BraidWord {
        let n = self.dict_len();
        if id < n {
            self.dict.as_ref().unwrap().entries[id].word.unpack()
        } else {
            self.mesh[id - n].word.clone()
        }
    }

    fn core_len(&self, id: usize) -> usize {
        let n = self.dict_len();
        if id < n {
            self.dict.as_ref().unwrap().entries[id].word.len()
        } else {
            self.mesh[id - n].word.len()
        }
    }

    /// Dressing words tried per side; 1 uses the Y~ table alone.
    pub fn set_dressing_width(&mut self, width: usize) {
        self.width = width.max(1);
    }

    /// Best braid for `target` among all stored cores carried by the
    /// symmetries of G, dressed on each side by any of the stand-in words
    /// for the symmetry's multipliers. Every core image lying within
    /// `nearest + 4 max(Y~ err)` of the reduced target is tried, which finds
    /// the optimum since dressing moves a point by at most `2 max(Y~ err)`.
    pub fn compile(&self, target: UnitQuaternion, eps: f64) -> Result<CompileResult> {
        let a = self.atlas;
        let g = &a.group;
        let ytilde = &a.ytilde;
        let (gt, qt) = g.reduce(target);
        let (_, d0) = self.index.nearest(qt).ok_or(Error::NoResource)?;
        let window = d0 + 4.0 * ytilde.max_err() + 1e-12;
        let width = self.width;
        // Symmetries moving qt by at most twice the window; every image of a
        // core inside the window comes from one of them.
        let near: Vec<SymmetryOp> = g
            .ops()
            .filter(|&h| distance(g.apply(h, qt), qt) <= 2.0 * window)
            .collect();
        // (err, total length, core id, op, left choice, right choice)
        let mut best: Option<(f64, usize, u32, SymmetryOp, usize, usize)> = None;
        for (id, _) in self.index.within(qt, window) {
            let (q0, op_e, _) = self.core(id as usize);
            let value = g.apply(op_e, q0);
            let clen = self.core_len(id as usize);
            let back = g.inverse(op_e);
            for &h in &near {
                if distance(g.apply(h, q0), qt) > window {
                    continue;
                }
                let base = g.compose(gt, g.compose(h, back));
                for op in [base, a.flip_signs(base)] {
                    let c = if op.conjugate { value.conj() } else { value };
                    let left = &ytilde.dressing(op.l as usize)
                        [..width.min(ytilde.dressing(op.l as usize).len())];
                    let right = &ytilde.dressing(op.r as usize)
                        [..width.min(ytilde.dressing(op.r as usize).len())];
                    for (li, l) in left.iter().enumerate() {
                        let lc = l.achieved * c;
                        for (ri, r) in right.iter().enumerate() {
                            let err = distance(lc * r.achieved, target);
                            let len = l.word.len() + r.word.len() + clen;
                            // errors within rounding count as ties, broken by length
                            let better = match &best {
                                None => true,
                                Some(b) => {
                                    err < b.0 - TIE_TOL
                                        || (err <= b.0 + TIE_TOL && (len, id) < (b.1, b.2))
                                }
                            };
                            if better {
                                best = Some((err, len, id, op, li, ri));
                            }
                        }
                    }
                }
            }
        }
        let (_, _, id, op, li, ri) = best.ok_or(Error::NoResource)?;
        let core = self.core_word(id as usize);
        let (_, _, from_mesh) = self.core(id as usize);
        let word = ytilde.braid_for_op_with(op, &core, li, ri);
        let achieved = word.evaluate_quat();
        let err = distance(achieved, target);
        let dressed = !(ytilde.dressing(op.l as usize)[li].word.is_empty()
            && ytilde.dressing(op.r as usize)[ri].word.is_empty());
        let source = match (dressed, from_mesh) {
            (true, _) => Source::Hybrid,
            (false, true) => Source::Mesh,
            (false, false) => Source::Dictionary,
        };
        Ok(CompileResult {
            core_len: core.len(),
            total_len: word.len(),
            achieved: achieved.to_su2(),
            word,
            err,
            source,
            met: err <= eps,
        })
    }
}

/// Closest image of any candidate under G, found by comparing reduced
/// representatives. Returns `(op, candidate index, distance)` with
/// `apply(op, candidates[i])` the nearest image.
pub fn best_in_orbit(
    group: &SymmetryGroup,
    target: UnitQuaternion,
    candidates: &[UnitQuaternion],
) -> Option<(SymmetryOp, usize, f64)> {
    let (gt, qt) = group.reduce(target);
    let mut best: Option<(SymmetryOp, usize, f64)> = None;
    for (i, c) in candidates.iter().enumerate() {
        let (gc, qc) = group.reduce(*c);
        let d = distance(qt, qc);
        if best.as_ref().is_none_or(|b| d < b.2) {
            best = Some((group.compose(gt, group.inverse(gc)), i, d));
        }
    }
    best
}

/// Reference for [`best_in_orbit`]: scans all 14400 images of every
/// candidate.
pub fn best_in_orbit_scan(
    group: &SymmetryGroup,
    target: UnitQuaternion,
    candidates: &[UnitQuaternion],
) -> Option<(SymmetryOp, usize, f64)> {
    let mut best: Option<(SymmetryOp, usize, f64)> = None;
    for (i, c) in candidates.iter().enumerate() {
        for op in group.ops() {
            let d = distance(target, group.apply(op, *c));
            if best.as_ref().is_none_or(|b| d < b.2) {
                best = Some((op, i, d));
            }
        }
    }
    best
}
