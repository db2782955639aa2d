//! Pseudo-generators and the braid-realized approximation of Y.
//!
//! The braid words `s~` and `t~` satisfy `s~^3 = t~^5 = -1` exactly, while
//! `(s~ t~)^2 = -1` holds only to about 3e-3. Words in them therefore land
//! close to a binary icosahedral group, though not the one generated by the
//! textbook `s` and `t`: the closest copy is a rigid rotation of it, found
//! here by aligning the rotation axes.

use std::fmt;

use nalgebra::{Matrix3, Rotation3, Vector3};
use rayon::prelude::*;

use crate::braid::{evaluate_letters, BraidLetter, BraidWord, TAU};
use crate::error::{Error, Result};
use crate::group::{FiniteQuatGroup, GroupName};
use crate::quat::{Su2Matrix, UnitQuaternion};
use crate::symmetry::SymmetryOp;

/// Tolerance for `w^n = -1`.
pub const RELATION_TOL: f64 = 1e-12;
/// Largest accepted error of a Y~ word.
pub const YTILDE_BUDGET: f64 = 5e-3;
/// Pseudo-letter length of the Y~ search.
pub const YTILDE_MAX_LEN: usize = 8;

pub const S_TILDE_WORD: &str = "2 2 -1 -1 -1 2 2 -1 2 1";
pub const T_TILDE_WORD: &str = "1 2 2 -1 -1 2 -1 2 -1 2";

#[derive(Clone, Debug)]
pub struct PseudoGenerator {
    pub word: BraidWord,
    pub matrix: Su2Matrix,
    /// `n` with `matrix^n = -1`.
    pub order: usize,
    /// Max entry of `matrix^n + 1`.
    pub defect: f64,
}

impl PseudoGenerator {
    pub fn new(word: BraidWord, order: usize) -> Self {
        let q = word.evaluate_quat();
        let defect = power_defect(q, order);
        PseudoGenerator {
            word,
            matrix: q.to_su2(),
            order,
            defect,
        }
    }

    pub fn quat(&self) -> UnitQuaternion {
        self.matrix.to_quat()
    }
}

fn power(q: UnitQuaternion, n: usize) -> UnitQuaternion {
    (0..n).fold(UnitQuaternion::IDENTITY, |acc, _| acc * q)
}

/// Max entry of `q^n + 1` as an SU(2) matrix.
pub fn power_defect(q: UnitQuaternion, n: usize) -> f64 {
    let p = power(q, n).to_su2();
    let minus = (-UnitQuaternion::IDENTITY).to_su2();
    p.max_entry_diff(&minus.entries())
}

/// The pair used throughout the library.
#[derive(Clone, Debug)]
pub struct PseudoPair {
    pub s: PseudoGenerator,
    pub t: PseudoGenerator,
}

impl PseudoPair {
    pub fn new(s: BraidWord, t: BraidWord) -> Self {
        PseudoPair {
            s: PseudoGenerator::new(s, 3),
            t: PseudoGenerator::new(t, 5),
        }
    }

    /// `s~ = s2^2 s1^-3 s2^2 s1^-1 s2 s1`, `t~ = s1 s2^2 s1^-2 s2 s1^-1 s2 s1^-1 s2`.
    pub fn reference() -> Self {
        PseudoPair::new(
            S_TILDE_WORD.parse().expect("valid word"),
            T_TILDE_WORD.parse().expect("valid word"),
        )
    }

    /// `(s~ t~)^2` as a quaternion.
    pub fn product_squared(&self) -> UnitQuaternion {
        let st = self.s.quat() * self.t.quat();
        st * st
    }

    /// Distance of `(s~ t~)^2` from `-1`, equal to `2 |Re(s~ t~)|`.
    pub fn residual(&self) -> f64 {
        pair_residual(self.s.quat(), self.t.quat())
    }
}

pub fn pair_residual(s: UnitQuaternion, t: UnitQuaternion) -> f64 {
    2.0 * (s * t).w().abs()
}

/// All freely reduced words of length `1..=max_len` with their values.
pub fn freely_reduced_words(max_len: usize) -> Vec<(Vec<BraidLetter>, UnitQuaternion)> {
    let mut out = Vec::new();
    let mut frontier = vec![(Vec::new(), UnitQuaternion::IDENTITY)];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(frontier.len() * 3);
        for (w, q) in &frontier {
            for l in BraidLetter::ALL {
                if w.last().is_some_and(|&p: &BraidLetter| p.inverse() == l) {
                    continue;
                }
                let mut nw = w.clone();
                nw.push(l);
                next.push((nw, l.quat() * *q));
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Outcome of the brute-force search.
#[derive(Clone, Debug)]
pub struct PseudoSearch {
    pub max_len: usize,
    pub s_candidates: usize,
    pub t_candidates: usize,
    pub residual: f64,
    /// Every pair attaining `residual` (within 1e-12), ordered by total
    /// length and then letter by letter.
    pub optimal: Vec<(BraidWord, BraidWord)>,
}

impl PseudoSearch {
    pub fn contains(&self, s: &BraidWord, t: &BraidWord) -> bool {
        self.optimal.iter().any(|(a, b)| a == s && b == t)
    }
}

/// Searches freely reduced words up to `max_len` for `s~` (cube `-1`) and
/// `t~` (fifth power `-1`, not itself `-1`) and ranks pairs by the defect of
/// `(s~ t~)^2 = -1`.
pub fn search_pseudo_generators(max_len: usize) -> Result<PseudoSearch> {
    let words = freely_reduced_words(max_len);
    let minus_one = -UnitQuaternion::IDENTITY;
    let mut ss = Vec::new();
    let mut ts = Vec::new();
    for (w, q) in &words {
        if power_defect(*q, 3) <= RELATION_TOL {
            ss.push((w, *q));
        }
        if power_defect(*q, 5) <= RELATION_TOL
            && q.quat().max_abs_diff(minus_one.quat()) > RELATION_TOL
        {
            ts.push((w, *q));
        }
    }
    if ss.is_empty() || ts.is_empty() {
        return Err(Error::NoPseudoGenerator { max_len });
    }
    let best = ss
        .par_iter()
        .map(|(_, s)| {
            ts.iter()
                .map(|(_, t)| pair_residual(*s, *t))
                .fold(f64::INFINITY, f64::min)
        })
        .reduce(|| f64::INFINITY, f64::min);
    let mut optimal: Vec<(BraidWord, BraidWord)> = ss
        .par_iter()
        .flat_map_iter(|(sw, s)| {
            ts.iter()
                .filter(move |(_, t)| pair_residual(*s, *t) <= best + RELATION_TOL)
                .map(move |(tw, _)| {
                    (
                        BraidWord::from_letters((*sw).clone()),
                        BraidWord::from_letters((*tw).clone()),
                    )
                })
        })
        .collect();
    let key = |w: &BraidWord| w.letters().iter().map(|l| l.code()).collect::<Vec<_>>();
    optimal.sort_by_key(|(s, t)| (s.len() + t.len(), key(s), key(t)));
    Ok(PseudoSearch {
        max_len,
        s_candidates: ss.len(),
        t_candidates: ts.len(),
        residual: best,
        optimal,
    })
}

/// Best pair of the search, first in the documented order.
pub fn find_pseudo_generators(max_len: usize) -> Result<PseudoPair> {
    let search = search_pseudo_generators(max_len)?;
    let (s, t) = search.optimal[0].clone();
    Ok(PseudoPair::new(s, t))
}

fn unit_axis(q: UnitQuaternion) -> Vector3<f64> {
    Vector3::new(q.x(), q.y(), q.z()).normalize()
}

/// The binary icosahedral group rotated so that two of its elements sit
/// as close as possible to `s~` and `t~`.
#[derive(Clone, Debug)]
pub struct AlignedIcosians {
    pub group: FiniteQuatGroup,
    /// Rotation taking the standard group to `group` by `q -> g q g^-1`.
    pub rotation: UnitQuaternion,
    pub s_distance: f64,
    pub t_distance: f64,
}

/// Picks `a, b` in the standard group with the same real parts as `s~, t~`,
/// `(ab)^2 = -1`, and axis angle closest to that of `s~, t~`; then solves the
/// weighted orthogonal Procrustes problem for the rotation carrying the axes
/// of `a, b` onto those of `s~, t~`.
pub fn align_icosians(pair: &PseudoPair) -> AlignedIcosians {
    let std = FiniteQuatGroup::standard(GroupName::Y).expect("Y closes");
    let (s, t) = (pair.s.quat(), pair.t.quat());
    let (us, ut) = (unit_axis(s), unit_axis(t));
    let target = us.dot(&ut);
    let mut best: Option<(f64, UnitQuaternion, UnitQuaternion)> = None;
    for &a in std.elements() {
        if (a.w() - s.w()).abs() > 1e-9 {
            continue;
        }
        for &b in std.elements() {
            if (b.w() - t.w()).abs() > 1e-9 || (a * b).w().abs() > 1e-9 {
                continue;
            }
            let diff = (unit_axis(a).dot(&unit_axis(b)) - target).abs();
            if best.as_ref().is_none_or(|x| diff < x.0) {
                best = Some((diff, a, b));
            }
        }
    }
    let (_, a, b) = best.expect("Y has elements of every pseudo-generator type");
    let (wa, wb) = (1.0 - s.w() * s.w(), 1.0 - t.w() * t.w());
    let m: Matrix3<f64> = us * unit_axis(a).transpose() * wa + ut * unit_axis(b).transpose() * wb;
    let svd = m.svd(true, true);
    let (u, vt) = (svd.u.expect("u"), svd.v_t.expect("v_t"));
    let d = (u * vt).determinant().signum();
    let r = u * Matrix3::from_diagonal(&Vector3::new(1.0, 1.0, d)) * vt;
    let nq = nalgebra::UnitQuaternion::from_rotation_matrix(&Rotation3::from_matrix_unchecked(r));
    let c = nq.into_inner().coords;
    let g = UnitQuaternion::new_normalize(c[3], c[0], c[1], c[2]);
    let rotate = |q: UnitQuaternion| (g * q * g.conj()).renormalize();
    let elements: Vec<_> = std.elements().iter().map(|&q| rotate(q)).collect();
    let (ra, rb) = (rotate(a), rotate(b));
    let group = FiniteQuatGroup::from_elements(GroupName::Y, (ra, rb), elements);
    AlignedIcosians {
        group,
        rotation: g,
        s_distance: ra.distance(s),
        t_distance: rb.distance(t),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PseudoLetter {
    S,
    SInv,
    T,
    TInv,
}

impl PseudoLetter {
    pub const ALL: [PseudoLetter; 4] = [
        PseudoLetter::S,
        PseudoLetter::SInv,
        PseudoLetter::T,
        PseudoLetter::TInv,
    ];

    pub fn inverse(self) -> Self {
        match self {
            PseudoLetter::S => PseudoLetter::SInv,
            PseudoLetter::SInv => PseudoLetter::S,
            PseudoLetter::T => PseudoLetter::TInv,
            PseudoLetter::TInv => PseudoLetter::T,
        }
    }
}

impl fmt::Display for PseudoLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PseudoLetter::S => "s",
            PseudoLetter::SInv => "S",
            PseudoLetter::T => "t",
            PseudoLetter::TInv => "T",
        })
    }
}

#[derive(Clone, Debug)]
pub struct YTildeEntry {
    /// Element of the aligned group.
    pub target: UnitQuaternion,
    pub pseudo: Vec<PseudoLetter>,
    pub word: BraidWord,
    pub achieved: UnitQuaternion,
    /// Projective distance from `achieved` to `target`.
    pub err: f64,
}

impl YTildeEntry {
    pub fn pseudo_text(&self) -> String {
        self.pseudo.iter().map(|l| l.to_string()).collect()
    }
}

/// One braid word for each of the 120 elements, indexed like the group.
#[derive(Clone, Debug)]
pub struct YTilde {
    entries: Vec<YTildeEntry>,
    dressing: Vec<Vec<Dressing>>,
}

/// A braid word standing in for an element of Y when dressing a core.
#[derive(Clone, Debug)]
pub struct Dressing {
    pub word: BraidWord,
    pub achieved: UnitQuaternion,
    pub err: f64,
}

/// Most words kept per element in the dressing set.
pub const DRESSING_WIDTH: usize = 64;

impl YTilde {
    /// Breadth-first search over freely reduced words in `s~^±1, t~^±1` up to
    /// length 8, then greedy one-to-one assignment by increasing error. Signed
    /// (not projective) proximity decides the match so that `y` and `-y`
    /// receive different words.
    pub fn build(pair: &PseudoPair, group: &FiniteQuatGroup) -> Result<YTilde> {
        let letter_words = [
            pair.s.word.clone(),
            pair.s.word.invert(),
            pair.t.word.clone(),
            pair.t.word.invert(),
        ];
        let letter_quats = letter_words.clone().map(|w| w.evaluate_quat());
        let mut words: Vec<(Vec<PseudoLetter>, UnitQuaternion)> =
            vec![(Vec::new(), UnitQuaternion::IDENTITY)];
        let mut start = 0;
        for _ in 0..YTILDE_MAX_LEN {
            let end = words.len();
            for i in start..end {
                for (k, l) in PseudoLetter::ALL.into_iter().enumerate() {
                    let (w, q) = &words[i];
                    if w.last().is_some_and(|p| p.inverse() == l) {
                        continue;
                    }
                    let mut nw = w.clone();
                    nw.push(l);
                    let nq = letter_quats[k] * *q;
                    words.push((nw, nq));
                }
            }
            start = end;
        }

        const KEEP: usize = 8;
        let mut proposals: Vec<(f64, usize, usize)> = Vec::new();
        for (yi, y) in group.elements().iter().enumerate() {
            let mut near: Vec<(f64, usize)> = Vec::with_capacity(KEEP + 1);
            for (wi, (_, q)) in words.iter().enumerate() {
                let d = y.chord(*q);
                if near.len() < KEEP || d < near[near.len() - 1].0 {
                    let pos = near.partition_point(|x| x.0 <= d);
                    near.insert(pos, (d, wi));
                    near.truncate(KEEP);
                }
            }
            proposals.extend(near.into_iter().map(|(d, wi)| (d, yi, wi)));
        }
        proposals.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
        let mut assigned: Vec<Option<usize>> = vec![None; group.len()];
        let mut used = std::collections::HashSet::new();
        for (_, yi, wi) in proposals {
            if assigned[yi].is_none() && !used.contains(&wi) {
                assigned[yi] = Some(wi);
                used.insert(wi);
            }
        }

        let mut entries = Vec::with_capacity(group.len());
        for (yi, slot) in assigned.iter().enumerate() {
            let target = group.get(yi);
            let best = slot
                .map(|wi| target.distance(words[wi].1))
                .unwrap_or(f64::INFINITY);
            let Some(wi) = slot.filter(|_| best <= YTILDE_BUDGET) else {
                return Err(Error::YTildeUnmatched {
                    index: yi,
                    element: target.to_string(),
                    best,
                    budget: YTILDE_BUDGET,
                });
            };
            let pseudo = words[wi].0.clone();
            let mut word = BraidWord::empty();
            for l in &pseudo {
                word.extend_from(
                    &letter_words[PseudoLetter::ALL.iter().position(|x| x == l).unwrap()],
                );
            }
            // Recompute from the expanded word rather than trusting the search.
            let achieved = word.evaluate_quat();
            let err = target.distance(achieved);
            entries.push(YTildeEntry {
                target,
                pseudo,
                word,
                achieved,
                err,
            });
        }
        let max_err = entries.iter().map(|e| e.err).fold(0.0, f64::max);
        let expand = |pseudo: &[PseudoLetter]| {
            let mut word = BraidWord::empty();
            for l in pseudo {
                word.extend_from(
                    &letter_words[PseudoLetter::ALL.iter().position(|x| x == l).unwrap()],
                );
            }
            word
        };
        // Further words per element, no worse than the worst table entry, so
        // every error bound stated for the table holds for them too.
        let dressing = entries
            .iter()
            .enumerate()
            .map(|(yi, e)| {
                let mut near: Vec<(f64, usize)> = words
                    .iter()
                    .enumerate()
                    .filter(|(wi, (_, q))| {
                        Some(*wi) != assigned[yi] && e.target.chord(*q) <= max_err
                    })
                    .map(|(wi, (_, q))| (e.target.chord(*q), wi))
                    .collect();
                near.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
                let mut out = vec![Dressing {
                    word: e.word.clone(),
                    achieved: e.achieved,
                    err: e.err,
                }];
                for (_, wi) in near.into_iter().take(DRESSING_WIDTH - 1) {
                    let word = expand(&words[wi].0);
                    let achieved = word.evaluate_quat();
                    let err = e.target.distance(achieved);
                    if err <= max_err {
                        out.push(Dressing {
                            word,
                            achieved,
                            err,
                        });
                    }
                }
                out
            })
            .collect();
        Ok(YTilde { entries, dressing })
    }

    pub fn entries(&self) -> &[YTildeEntry] {
        &self.entries
    }

    pub fn entry(&self, i: usize) -> &YTildeEntry {
        &self.entries[i]
    }

    pub fn word(&self, i: usize) -> &BraidWord {
        &self.entries[i].word
    }

    pub fn max_err(&self) -> f64 {
        self.entries.iter().map(|e| e.err).fold(0.0, f64::max)
    }

    pub fn mean_err(&self) -> f64 {
        self.entries.iter().map(|e| e.err).sum::<f64>() / self.entries.len() as f64
    }

    pub fn max_pseudo_len(&self) -> usize {
        self.entries
            .iter()
            .map(|e| e.pseudo.len())
            .max()
            .unwrap_or(0)
    }

    pub fn max_word_len(&self) -> usize {
        self.entries.iter().map(|e| e.word.len()).max().unwrap_or(0)
    }

    /// Words for element `i`; the first is the table word.
    pub fn dressing(&self, i: usize) -> &[Dressing] {
        &self.dressing[i]
    }

    /// [`YTilde::braid_for_op`] with the `li`-th and `ri`-th dressing words.
    pub fn braid_for_op_with(
        &self,
        op: SymmetryOp,
        core: &BraidWord,
        li: usize,
        ri: usize,
    ) -> BraidWord {
        let mut out = self.dressing[op.r as usize][ri].word.clone();
        if op.conjugate {
            out.extend_from(&core.invert());
        } else {
            out.extend_from(core);
        }
        out.extend_from(&self.dressing[op.l as usize][li].word);
        out
    }

    /// Braid for `apply(op, core)`: `word(r) core' word(l)`, which evaluates
    /// to `l core' r`, with `core'` the inverse of `core` for indirect ops.
    pub fn braid_for_op(&self, op: SymmetryOp, core: &BraidWord) -> BraidWord {
        let mut out = self.word(op.r as usize).clone();
        if op.conjugate {
            out.extend_from(&core.invert());
        } else {
            out.extend_from(core);
        }
        out.extend_from(self.word(op.l as usize));
        out
    }
}

/// Quaternion of a letter sequence, for callers holding raw letters.
pub fn letters_quat(letters: &[BraidLetter]) -> UnitQuaternion {
    evaluate_letters(letters)
}

/// `-tau/2`, the real part of `t~`.
pub fn t_real_part() -> f64 {
    -TAU / 2.0
}
