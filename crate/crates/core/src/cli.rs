//! Pieces of the command-line front end that are worth testing on their
//! own: target parsing, the relation suite, resource loading and file
//! generation.

use std::path::PathBuf;
use std::str::FromStr;

use num_complex::Complex64;

use crate::anyon::PseudoPair;
use crate::atlas::Atlas;
use crate::braid::{sigma, BraidWord};
use crate::error::{Error, Result};
use crate::group::{FiniteQuatGroup, GroupName};
use crate::hyperdome::{build_mesh, MeshKind, SeedSearch};
use crate::io::{Table, TableKind};
use crate::navigator::{Dictionary, Navigator};
use crate::quat::{max_entry_diff, Quaternion, Su2Matrix, UnitQuaternion};

/// A gate to compile.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TargetSpec(pub UnitQuaternion);

impl FromStr for TargetSpec {
    type Err = Error;

    /// `id`, `ix`, `iy`, `iz` (i times a Pauli matrix), four reals
    /// `w x y z` of a unit quaternion, or eight reals giving the complex
    /// entries of a 2x2 matrix row by row as real/imaginary pairs.
    fn from_str(s: &str) -> Result<Self> {
        let q = match s.trim() {
            "id" => UnitQuaternion::IDENTITY,
            "iz" => UnitQuaternion::new_unchecked(Quaternion::I),
            "iy" => UnitQuaternion::new_unchecked(Quaternion::J),
            "ix" => UnitQuaternion::new_unchecked(Quaternion::K),
            other => {
                let nums: Vec<f64> = other
                    .split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|t| !t.is_empty())
                    .map(|t| {
                        t.parse()
                            .map_err(|_| Error::Target(format!("{t:?} is not a number")))
                    })
                    .collect::<Result<_>>()?;
                match nums.len() {
                    4 => {
                        UnitQuaternion::try_new(Quaternion::new(nums[0], nums[1], nums[2], nums[3]))
                            .map_err(|e| Error::Target(e.to_string()))?
                    }
                    8 => {
                        let c = |i: usize| Complex64::new(nums[2 * i], nums[2 * i + 1]);
                        Su2Matrix::from_entries([[c(0), c(1)], [c(2), c(3)]])
                            .map_err(|e| Error::Target(e.to_string()))?
                            .to_quat()
                    }
                    n => {
                        return Err(Error::Target(format!(
                            "expected id, ix, iy, iz, 4 reals or 8 reals; got {n} numbers"
                        )))
                    }
                }
            }
        };
        Ok(TargetSpec(q))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub value: f64,
    pub pass: bool,
    pub rule: String,
}

impl std::fmt::Display for Check {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let tag = if self.pass { "PASS" } else { "FAIL" };
        write!(
            f,
            "{tag} {:<28} {:.4e}  ({})",
            self.name, self.value, self.rule
        )
    }
}

fn at_most(name: &'static str, value: f64, tol: f64) -> Check {
    Check {
        name,
        value,
        pass: value <= tol,
        rule: format!("<= {tol:e}"),
    }
}

/// Relations the generators, groups and pseudo-generators must satisfy.
pub fn verify_suite() -> Vec<Check> {
    let mut out = Vec::new();
    let (s1, s2) = (sigma(1, true), sigma(2, true));
    let lhs = Su2Matrix::from_entries(s1.matmul(&s2)).unwrap();
    let rhs = Su2Matrix::from_entries(s2.matmul(&s1)).unwrap();
    let braid = max_entry_diff(&lhs.matmul(&s1), &rhs.matmul(&s2));
    out.push(at_most("braid relation", braid, 1e-12));
    let minus = (-UnitQuaternion::IDENTITY).to_su2().entries();
    for (name, s) in [("sigma1^10 = -1", s1), ("sigma2^10 = -1", s2)] {
        let mut m = Su2Matrix::IDENTITY;
        for _ in 0..10 {
            m = Su2Matrix::from_entries(m.matmul(&s)).unwrap();
        }
        out.push(at_most(name, m.max_entry_diff(&minus), 1e-12));
    }
    for (name, g) in [
        ("presentation T", GroupName::T),
        ("presentation O", GroupName::O),
        ("presentation Y", GroupName::Y),
    ] {
        match FiniteQuatGroup::standard(g) {
            Ok(grp) => {
                let mut c = at_most(name, grp.presentation_residual(), 1e-12);
                c.pass &= grp.len() == g.order();
                c.rule = format!("<= 1e-12, order {} (found {})", g.order(), grp.len());
                out.push(c);
            }
            Err(e) => out.push(Check {
                name,
                value: f64::NAN,
                pass: false,
                rule: e.to_string(),
            }),
        }
    }
    let pair = PseudoPair::reference();
    out.push(at_most("s~^3 = -1", pair.s.defect, 1e-12));
    out.push(at_most("t~^5 = -1", pair.t.defect, 1e-12));
    let dev = pair.product_squared().to_su2().max_entry_diff(&minus);
    let one_digit = format!("{dev:.0e}");
    out.push(Check {
        name: "(s~t~)^2 + 1 max entry",
        value: dev,
        pass: one_digit == "3e-3",
        rule: "3e-3 to one significant figure".into(),
    });
    out
}

/// Something to compile against.
#[derive(Clone, Debug, PartialEq)]
pub enum Resource {
    /// The 120 stand-in words.
    YTilde,
    /// A dictionary built on the fly with this core length.
    Dict(usize),
    /// A mesh built on the fly.
    Mesh(MeshKind, usize),
    /// A dictionary, mesh or Y~ file.
    File(PathBuf),
}

fn parse_mesh_name(s: &str) -> Option<(MeshKind, usize)> {
    let kind = match s.chars().next()? {
        'P' => MeshKind::P,
        'Q' => MeshKind::Q,
        _ => return None,
    };
    Some((kind, s[1..].parse().ok()?))
}

impl FromStr for Resource {
    type Err = Error;

    /// `ytilde`, `dict:L` (or `dictL`), `mesh:P1` (or `P1`), or a path.
    fn from_str(s: &str) -> Result<Self> {
        if s == "ytilde" {
            return Ok(Resource::YTilde);
        }
        if let Some(l) = s.strip_prefix("dict:").or_else(|| s.strip_prefix("dict")) {
            if let Ok(l) = l.parse() {
                return Ok(Resource::Dict(l));
            }
        }
        if let Some((k, l)) = parse_mesh_name(s.strip_prefix("mesh:").unwrap_or(s)) {
            return Ok(Resource::Mesh(k, l));
        }
        Ok(Resource::File(PathBuf::from(s)))
    }
}

/// Collects the resources into a navigator. At most one dictionary may be
/// given; all braid-carrying tables contribute their words as cores.
pub fn build_navigator<'a>(atlas: &'a Atlas, resources: &[Resource]) -> Result<Navigator<'a>> {
    let mut dict: Option<Dictionary> = None;
    let mut words: Vec<BraidWord> = Vec::new();
    let mut search: Option<SeedSearch<'a>> = None;
    let set_dict = |d: Dictionary, dict: &mut Option<Dictionary>| {
        if dict.is_some() {
            return Err(Error::Target("at most one dictionary can be used".into()));
        }
        *dict = Some(d);
        Ok(())
    };
    for r in resources {
        match r {
            Resource::YTilde => words.extend(atlas.ytilde.entries().iter().map(|e| e.word.clone())),
            Resource::Dict(l) => set_dict(Dictionary::build(&atlas.group, *l)?, &mut dict)?,
            Resource::Mesh(k, l) => {
                if search.is_none() {
                    search = Some(SeedSearch::new(atlas)?);
                }
                let mesh = build_mesh(atlas, search.as_ref().unwrap(), *k, *l)?;
                words.extend(mesh.points.into_iter().map(|p| p.braid));
            }
            Resource::File(p) => {
                let t = Table::load(p)?;
                match t.kind {
                    TableKind::Dict { .. } => set_dict(t.to_dictionary(&atlas.group)?, &mut dict)?,
                    TableKind::Group { .. } => {
                        return Err(Error::Parse {
                            line: 1,
                            msg: format!("{} holds no braids", p.display()),
                        })
                    }
                    _ => words.extend(t.words()),
                }
            }
        }
    }
    Navigator::new(atlas, dict, words)
}

/// What `gen` writes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GenWhat {
    Group(GroupName),
    YTilde,
    Mesh(MeshKind, usize),
    Dict(usize),
}

impl FromStr for GenWhat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            Error::Target(format!(
                "unknown item {s:?}: expected group:T|O|Y, ytilde, mesh:P0..P2|Q0..Q1 or dict:L"
            ))
        };
        match s.split_once(':') {
            None if s == "ytilde" => Ok(GenWhat::YTilde),
            Some(("group", g)) => Ok(GenWhat::Group(g.parse().map_err(|_| bad())?)),
            Some(("mesh", m)) => parse_mesh_name(m)
                .map(|(k, l)| GenWhat::Mesh(k, l))
                .ok_or_else(bad),
            Some(("dict", l)) => Ok(GenWhat::Dict(l.parse().map_err(|_| bad())?)),
            _ => Err(bad()),
        }
    }
}

/// Builds the table for `what`. Group files hold the groups generated by
/// the standard quaternion generators.
pub fn generate(atlas: &Atlas, what: GenWhat) -> Result<Table> {
    Ok(match what {
        GenWhat::Group(name) => Table::from_group(name, &FiniteQuatGroup::standard(name)?),
        GenWhat::YTilde => Table::from_ytilde(&atlas.ytilde),
        GenWhat::Mesh(kind, level) => {
            let search = SeedSearch::new(atlas)?;
            Table::from_mesh(&build_mesh(atlas, &search, kind, level)?)
        }
        GenWhat::Dict(l) => {
            Table::from_dictionary(&Dictionary::build(&atlas.group, l)?, &atlas.group)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn targets() {
        assert_eq!(
            "id".parse::<TargetSpec>().unwrap().0,
            UnitQuaternion::IDENTITY
        );
        let ix = "ix".parse::<TargetSpec>().unwrap().0.to_su2();
        let i = Complex64::new(0.0, 1.0);
        let z = Complex64::new(0.0, 0.0);
        assert!(ix.max_entry_diff(&[[z, i], [i, z]]) < 1e-15);
        let q = "0 0 1 0".parse::<TargetSpec>().unwrap().0;
        assert_eq!(q, "iy".parse::<TargetSpec>().unwrap().0);
        let m = "0,0 0,1 0,1 0,0".parse::<TargetSpec>().unwrap().0;
        assert!(m.distance("ix".parse::<TargetSpec>().unwrap().0) < 1e-15);
        for bad in ["", "1 2 3", "1 1 0 0", "foo", "1 0 0 0 0 0 2 0"] {
            assert!(
                matches!(bad.parse::<TargetSpec>(), Err(Error::Target(_))),
                "{bad}"
            );
        }
    }

    #[test]
    fn resources_and_items() {
        assert_eq!("ytilde".parse::<Resource>().unwrap(), Resource::YTilde);
        assert_eq!("dict14".parse::<Resource>().unwrap(), Resource::Dict(14));
        assert_eq!("dict:7".parse::<Resource>().unwrap(), Resource::Dict(7));
        assert_eq!(
            "mesh:Q1".parse::<Resource>().unwrap(),
            Resource::Mesh(MeshKind::Q, 1)
        );
        assert_eq!(
            "out/p1.csv".parse::<Resource>().unwrap(),
            Resource::File("out/p1.csv".into())
        );
        assert_eq!(
            "group:O".parse::<GenWhat>().unwrap(),
            GenWhat::Group(GroupName::O)
        );
        assert_eq!(
            "mesh:P2".parse::<GenWhat>().unwrap(),
            GenWhat::Mesh(MeshKind::P, 2)
        );
        assert!("mesh:X1".parse::<GenWhat>().is_err());
    }

    #[test]
    fn suite_passes() {
        for c in verify_suite() {
            assert!(c.pass, "{c}");
        }
    }
}
