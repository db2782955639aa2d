//! Binary polyhedral groups as finite sets of unit quaternions.

use std::cmp::Reverse;
use std::collections::VecDeque;

use crate::braid::{PHI, TAU};
use crate::error::Error;
use crate::pointset::PointSet;
use crate::quat::{UnitQuaternion, DEDUP_TOL};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupName {
    /// Binary tetrahedral, order 24.
    T,
    /// Binary octahedral, order 48.
    O,
    /// Binary icosahedral, order 120.
    Y,
}

impl GroupName {
    /// Order of `t` in the presentation `s^3 = t^n = (st)^2 = -1`.
    pub fn t_order(self) -> usize {
        match self {
            GroupName::T => 3,
            GroupName::O => 4,
            GroupName::Y => 5,
        }
    }

    pub fn order(self) -> usize {
        match self {
            GroupName::T => 24,
            GroupName::O => 48,
            GroupName::Y => 120,
        }
    }

    pub fn generators(self) -> (UnitQuaternion, UnitQuaternion) {
        let s = UnitQuaternion::new_normalize(1.0, 1.0, 1.0, 1.0);
        let t = match self {
            GroupName::T => UnitQuaternion::new_normalize(1.0, 1.0, 1.0, -1.0),
            GroupName::O => UnitQuaternion::new_normalize(1.0, 1.0, 0.0, 0.0),
            GroupName::Y => UnitQuaternion::new_normalize(PHI, TAU, 1.0, 0.0),
        };
        (s, t)
    }
}

impl std::str::FromStr for GroupName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "T" => Ok(GroupName::T),
            "O" => Ok(GroupName::O),
            "Y" => Ok(GroupName::Y),
            other => Err(Error::Parse {
                line: 0,
                msg: format!("unknown group {other:?}"),
            }),
        }
    }
}

/// Breadth-first closure of `generators` under right multiplication, with
/// deduplication at 1e-9. Fails once more than `cap` elements appear.
pub fn closure(generators: &[UnitQuaternion], cap: usize) -> Result<Vec<UnitQuaternion>, Error> {
    let mut set = PointSet::new(DEDUP_TOL);
    let mut elements = vec![UnitQuaternion::IDENTITY];
    set.insert(UnitQuaternion::IDENTITY.to_array());
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in generators {
            let p = (elements[i] * *g).renormalize();
            if set.insert(p.to_array()).1 {
                elements.push(p);
                if elements.len() > cap {
                    return Err(Error::NotFinite { cap });
                }
                queue.push_back(elements.len() - 1);
            }
        }
    }
    Ok(elements)
}

/// Sorts descending on quantized raw components: the identity comes first
/// and `-1` last.
pub fn sort_canonical(elements: &mut [UnitQuaternion]) {
    elements.sort_by_key(|q| Reverse(q.key()));
}

/// A finite subgroup of SU(2) with a multiplication table.
#[derive(Clone, Debug)]
pub struct FiniteQuatGroup {
    pub name: GroupName,
    pub generators: (UnitQuaternion, UnitQuaternion),
    elements: Vec<UnitQuaternion>,
    lookup: PointSet,
    mul: Vec<u16>,
    inv: Vec<u16>,
    neg: Vec<u16>,
}

impl FiniteQuatGroup {
    /// Closure of the standard generators of `name`.
    pub fn standard(name: GroupName) -> Result<Self, Error> {
        Self::from_generators(name, name.generators())
    }

    pub fn from_generators(
        name: GroupName,
        generators: (UnitQuaternion, UnitQuaternion),
    ) -> Result<Self, Error> {
        let elements = closure(&[generators.0, generators.1], 4 * name.order())?;
        Ok(Self::from_elements(name, generators, elements))
    }

    /// Builds the tables for an element list already known to be a group.
    pub fn from_elements(
        name: GroupName,
        generators: (UnitQuaternion, UnitQuaternion),
        mut elements: Vec<UnitQuaternion>,
    ) -> Self {
        sort_canonical(&mut elements);
        let mut lookup = PointSet::new(DEDUP_TOL);
        for e in &elements {
            lookup.insert(e.to_array());
        }
        let n = elements.len();
        let find = |q: UnitQuaternion| -> u16 {
            lookup.find(&q.to_array()).expect("product left the group") as u16
        };
        let mut mul = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[a * n + b] = find(elements[a] * elements[b]);
            }
        }
        let inv = elements.iter().map(|e| find(e.conj())).collect();
        let neg = elements.iter().map(|e| find(-*e)).collect();
        FiniteQuatGroup {
            name,
            generators,
            elements,
            lookup,
            mul,
            inv,
            neg,
        }
    }

    pub fn elements(&self) -> &[UnitQuaternion] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn get(&self, i: usize) -> UnitQuaternion {
        self.elements[i]
    }

    pub fn index_of(&self, q: UnitQuaternion) -> Option<usize> {
        self.lookup.find(&q.to_array()).map(|i| i as usize)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.elements.len() + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    /// Largest residual among `s^3 + 1`, `t^n + 1` and `(st)^2 + 1`.
    pub fn presentation_residual(&self) -> f64 {
        presentation_residual(self.generators.0, self.generators.1, self.name.t_order())
    }
}

pub fn presentation_residual(s: UnitQuaternion, t: UnitQuaternion, n: usize) -> f64 {
    let minus = -UnitQuaternion::IDENTITY;
    let pow = |q: UnitQuaternion, k: usize| (0..k).fold(UnitQuaternion::IDENTITY, |acc, _| acc * q);
    let st = s * t;
    [pow(s, 3), pow(t, n), pow(st, 2)]
        .iter()
        .map(|p| p.quat().max_abs_diff(minus.quat()))
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_orders() {
        for name in [GroupName::T, GroupName::O, GroupName::Y] {
            let g = FiniteQuatGroup::standard(name).unwrap();
            assert_eq!(g.len(), name.order());
            assert!(g.presentation_residual() < 1e-12, "{name:?}");
            assert_eq!(g.get(0), UnitQuaternion::IDENTITY);
            assert_eq!(g.get(g.len() - 1), -UnitQuaternion::IDENTITY);
        }
    }

    #[test]
    fn closure_cap_rejects_infinite_sets() {
        let s = UnitQuaternion::new_normalize(1.0, 0.3, 0.0, 0.0);
        assert!(matches!(
            closure(&[s], 50),
            Err(Error::NotFinite { cap: 50 })
        ));
    }

    #[test]
    fn tables_are_consistent() {
        let g = FiniteQuatGroup::standard(GroupName::Y).unwrap();
        for a in 0..g.len() {
            assert_eq!(g.mul(a, g.inv(a)), 0);
            assert_eq!(g.neg(g.neg(a)), a);
            for b in [3, 17, 64] {
                let p = g.get(a) * g.get(b);
                assert!(p.quat().max_abs_diff(g.get(g.mul(a, b)).quat()) < 1e-12);
            }
        }
    }

    #[test]
    fn tetrahedral_is_inside_icosahedral() {
        let y = FiniteQuatGroup::standard(GroupName::Y).unwrap();
        let t = FiniteQuatGroup::standard(GroupName::T).unwrap();
        assert!(t.elements().iter().all(|e| y.index_of(*e).is_some()));
    }
}
