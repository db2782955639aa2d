//! Plain CSV files with a one-line header.
//!
//! ```text
//! mesh <P|Q> <level> <count>     rows: w,x,y,z,braid,err
//! dict <max core length> <count> rows: w,x,y,z,braid,err  (reduced point, core)
//! group <T|O|Y> <count>          rows: w,x,y,z
//! ytilde <count>                 rows: w,x,y,z,braid,err  (element of Y, stand-in)
//! ```
//!
//! Reals are written with 17 significant digits so files read back bit-exact.
//! Hopf files hold `Re,Im` rows followed by `inf <count>`.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::anyon::YTilde;
use crate::braid::{BraidWord, PackedWord};
use crate::error::{Error, Result};
use crate::group::{FiniteQuatGroup, GroupName};
use crate::hyperdome::{Mesh, MeshKind};
use crate::navigator::{word_count, DictEntry, Dictionary};
use crate::quat::{distance, hopf_map, HopfPoint, Quaternion, UnitQuaternion};
use crate::symmetry::SymmetryGroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableKind {
    Mesh { kind: MeshKind, level: usize },
    Dict { max_core_len: usize },
    Group { name: GroupName },
    YTilde,
}

impl TableKind {
    fn has_braids(self) -> bool {
        !matches!(self, TableKind::Group { .. })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub q: UnitQuaternion,
    pub braid: Option<BraidWord>,
    pub err: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub kind: TableKind,
    pub rows: Vec<Row>,
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn row(q: UnitQuaternion, braid: BraidWord, err: f64) -> Row {
    Row {
        q,
        braid: Some(braid),
        err: Some(err),
    }
}

impl Table {
    pub fn from_mesh(mesh: &Mesh) -> Self {
        Table {
            kind: TableKind::Mesh {
                kind: mesh.kind,
                level: mesh.level,
            },
            rows: mesh
                .points
                .iter()
                .map(|p| row(p.point, p.braid.clone(), p.err))
                .collect(),
        }
    }

    /// Rows hold each entry's reduced point and core; `err` is how far
    /// the symmetry carries the point from the core's value.
    pub fn from_dictionary(dict: &Dictionary, group: &SymmetryGroup) -> Self {
        Table {
            kind: TableKind::Dict {
                max_core_len: dict.max_core_len,
            },
            rows: dict
                .entries()
                .iter()
                .map(|e| {
                    let w = e.word.unpack();
                    let err = distance(group.apply(e.op, e.q0), w.evaluate_quat());
                    row(e.q0, w, err)
                })
                .collect(),
        }
    }

    pub fn from_group(name: GroupName, group: &FiniteQuatGroup) -> Self {
        Table {
            kind: TableKind::Group { name },
            rows: group
                .elements()
                .iter()
                .map(|&q| Row {
                    q,
                    braid: None,
                    err: None,
                })
                .collect(),
        }
    }

    pub fn from_ytilde(ytilde: &YTilde) -> Self {
        Table {
            kind: TableKind::YTilde,
            rows: ytilde
                .entries()
                .iter()
                .map(|e| row(e.target, e.word.clone(), e.err))
                .collect(),
        }
    }

    fn header(&self) -> String {
        let n = self.rows.len();
        match self.kind {
            TableKind::Mesh { kind, level } => format!("mesh {} {level} {n}", kind.letter()),
            TableKind::Dict { max_core_len } => format!("dict {max_core_len} {n}"),
            TableKind::Group { name } => format!("group {name:?} {n}"),
            TableKind::YTilde => format!("ytilde {n}"),
        }
    }

    pub fn write<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "{}", self.header())?;
        let mut line = String::new();
        for r in &self.rows {
            line.clear();
            let [a, b, c, d] = r.q.to_array();
            write!(line, "{a:.16e},{b:.16e},{c:.16e},{d:.16e}").unwrap();
            if self.kind.has_braids() {
                let braid = r.braid.as_ref().map(|b| b.to_text()).unwrap_or_default();
                write!(line, ",{braid},{:.16e}", r.err.unwrap_or(0.0)).unwrap();
            }
            writeln!(w, "{line}")?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        self.write(BufWriter::new(File::create(path)?))
    }

    pub fn read<R: BufRead>(r: R) -> Result<Self> {
        let mut lines = r.lines();
        let header = lines.next().ok_or_else(|| parse_err(1, "empty file"))??;
        let t: Vec<&str> = header.split_whitespace().collect();
        let num = |s: &str| -> Result<usize> {
            s.parse()
                .map_err(|_| parse_err(1, format!("expected a count, found {s:?}")))
        };
        let (kind, count) = match t.as_slice() {
            ["mesh", k, level, n] => {
                let kind = match *k {
                    "P" => MeshKind::P,
                    "Q" => MeshKind::Q,
                    _ => return Err(parse_err(1, format!("unknown mesh kind {k:?}"))),
                };
                (
                    TableKind::Mesh {
                        kind,
                        level: num(level)?,
                    },
                    num(n)?,
                )
            }
            ["dict", l, n] => (
                TableKind::Dict {
                    max_core_len: num(l)?,
                },
                num(n)?,
            ),
            ["group", g, n] => (
                TableKind::Group {
                    name: g
                        .parse()
                        .map_err(|_| parse_err(1, format!("unknown group {g:?}")))?,
                },
                num(n)?,
            ),
            ["ytilde", n] => (TableKind::YTilde, num(n)?),
            _ => return Err(parse_err(1, format!("unrecognized header {header:?}"))),
        };
        let cols = if kind.has_braids() { 6 } else { 4 };
        let mut rows = Vec::with_capacity(count);
        for (i, line) in lines.enumerate() {
            let ln = i + 2;
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != cols {
                return Err(parse_err(
                    ln,
                    format!("expected {cols} fields, found {}", f.len()),
                ));
            }
            let real = |s: &str| -> Result<f64> {
                s.trim()
                    .parse()
                    .map_err(|_| parse_err(ln, format!("bad number {s:?}")))
            };
            let q = Quaternion::new(real(f[0])?, real(f[1])?, real(f[2])?, real(f[3])?);
            let q = UnitQuaternion::try_new(q).map_err(|e| parse_err(ln, e.to_string()))?;
            let (braid, err) = if cols == 6 {
                let braid: BraidWord = f[4]
                    .trim()
                    .parse()
                    .map_err(|e: Error| parse_err(ln, e.to_string()))?;
                (Some(braid), Some(real(f[5])?))
            } else {
                (None, None)
            };
            rows.push(Row { q, braid, err });
        }
        if rows.len() != count {
            return Err(parse_err(
                1,
                format!("header announces {count} rows, file has {}", rows.len()),
            ));
        }
        Ok(Table { kind, rows })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::read(BufReader::new(File::open(path)?))
    }

    pub fn points(&self) -> Vec<UnitQuaternion> {
        self.rows.iter().map(|r| r.q).collect()
    }

    pub fn words(&self) -> Vec<BraidWord> {
        self.rows.iter().filter_map(|r| r.braid.clone()).collect()
    }

    pub fn max_err(&self) -> f64 {
        self.rows.iter().filter_map(|r| r.err).fold(0.0, f64::max)
    }

    /// Largest gap between a stored error and `distance(evaluate(braid), q)`.
    /// Dictionary rows are skipped since their error is a reduction residual.
    pub fn err_mismatch(&self) -> f64 {
        if matches!(self.kind, TableKind::Dict { .. }) {
            return 0.0;
        }
        self.rows
            .iter()
            .filter_map(|r| {
                let b = r.braid.as_ref()?;
                Some((distance(b.evaluate_quat(), r.q) - r.err?).abs())
            })
            .fold(0.0, f64::max)
    }

    /// Rebuilds a dictionary, re-reducing every core and checking the
    /// stored reduced point.
    pub fn to_dictionary(&self, group: &SymmetryGroup) -> Result<Dictionary> {
        let TableKind::Dict { max_core_len } = self.kind else {
            return Err(parse_err(1, "not a dictionary file"));
        };
        let mut entries = Vec::with_capacity(self.rows.len());
        for (i, r) in self.rows.iter().enumerate() {
            let word = r.braid.as_ref().expect("dictionary rows carry braids");
            let (op, q0) = group.reduce(word.evaluate_quat());
            if distance(q0, r.q) > 1e-12 {
                return Err(parse_err(
                    i + 2,
                    format!("core {word} reduces to {q0}, file says {}", r.q),
                ));
            }
            entries.push(DictEntry {
                q0,
                word: PackedWord::pack(word.letters()),
                op,
            });
        }
        Ok(Dictionary::from_entries(
            max_core_len,
            word_count(max_core_len) + 1,
            entries,
        ))
    }
}

/// `Re,Im` rows for finite points in input order, then `inf <count>`.
pub fn write_hopf_csv<W: Write>(mut w: W, points: &[UnitQuaternion]) -> Result<()> {
    let mut inf = 0;
    for &q in points {
        match hopf_map(q) {
            HopfPoint::Finite(c) => writeln!(w, "{:.16e},{:.16e}", c.re, c.im)?,
            HopfPoint::Infinity => inf += 1,
        }
    }
    writeln!(w, "inf {inf}")?;
    w.flush()?;
    Ok(())
}

/// Scatter plot of the finite Hopf points with `|C| <= radius`.
pub fn write_hopf_svg<W: Write>(mut w: W, points: &[UnitQuaternion], radius: f64) -> Result<()> {
    const SIZE: f64 = 600.0;
    let scale = SIZE / (2.0 * radius);
    writeln!(
        w,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">"
    )?;
    writeln!(w, "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>")?;
    writeln!(
        w,
        "<circle cx=\"{h}\" cy=\"{h}\" r=\"{scale:.3}\" fill=\"none\" stroke=\"#bbb\"/>",
        h = SIZE / 2.0
    )?;
    let mut inf = 0;
    let mut clipped = 0;
    for &q in points {
        match hopf_map(q) {
            HopfPoint::Finite(c) if c.norm() <= radius => {
                let x = (c.re + radius) * scale;
                let y = (radius - c.im) * scale;
                writeln!(
                    w,
                    "<circle cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"1.5\" fill=\"black\"/>"
                )?;
            }
            HopfPoint::Finite(_) => clipped += 1,
            HopfPoint::Infinity => inf += 1,
        }
    }
    writeln!(
        w,
        "<text x=\"8\" y=\"20\" font-family=\"monospace\" font-size=\"12\">{} points, {inf} at infinity, {clipped} outside |C| &lt;= {radius}</text>",
        points.len()
    )?;
    writeln!(w, "</svg>")?;
    w.flush()?;
    Ok(())
}
