//! Tolerance-based deduplication of points in R4.

use std::collections::HashMap;

/// Insert-or-find set of 4-vectors where two points closer than `tol`
/// (Euclidean) are the same point. Keys are quantized at `cell`; only the
/// neighbouring cells of coordinates lying within `tol` of a cell boundary
/// are probed, so a lookup costs one or two hash probes in practice.
#[derive(Clone, Debug)]
pub struct PointSet {
    cell: f64,
    tol: f64,
    map: HashMap<[i64; 4], Vec<u32>>,
    points: Vec<[f64; 4]>,
}

impl PointSet {
    pub fn new(tol: f64) -> Self {
        PointSet::with_cell(tol, tol * 10.0)
    }

    pub fn with_cell(tol: f64, cell: f64) -> Self {
        assert!(cell > 2.0 * tol);
        PointSet {
            cell,
            tol,
            map: HashMap::new(),
            points: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[[f64; 4]] {
        &self.points
    }

    fn base(&self, p: &[f64; 4]) -> ([i64; 4], [i8; 4]) {
        let mut key = [0i64; 4];
        let mut side = [0i8; 4];
        for i in 0..4 {
            let s = p[i] / self.cell;
            let f = s.floor();
            key[i] = f as i64;
            let frac = (s - f) * self.cell;
            side[i] = if frac < self.tol {
                -1
            } else if frac > self.cell - self.tol {
                1
            } else {
                0
            };
        }
        (key, side)
    }

    pub fn find(&self, p: &[f64; 4]) -> Option<u32> {
        let (key, side) = self.base(p);
        let mut found = None;
        for_each_neighbor(key, side, |k| {
            if found.is_some() {
                return;
            }
            if let Some(ids) = self.map.get(&k) {
                for &id in ids {
                    let q = &self.points[id as usize];
                    let d2: f64 = (0..4).map(|i| (p[i] - q[i]).powi(2)).sum();
                    if d2 <= self.tol * self.tol {
                        found = Some(id);
                        return;
                    }
                }
            }
        });
        found
    }

    /// Returns the id of the stored point equal to `p`, inserting it first if
    /// necessary; the flag tells whether it was new.
    pub fn insert(&mut self, p: [f64; 4]) -> (u32, bool) {
        if let Some(id) = self.find(&p) {
            return (id, false);
        }
        let id = self.points.len() as u32;
        let (key, _) = self.base(&p);
        self.map.entry(key).or_default().push(id);
        self.points.push(p);
        (id, true)
    }
}

fn for_each_neighbor(key: [i64; 4], side: [i8; 4], mut f: impl FnMut([i64; 4])) {
    let opts: Vec<Vec<i64>> = (0..4)
        .map(|i| {
            if side[i] == 0 {
                vec![key[i]]
            } else {
                vec![key[i], key[i] + side[i] as i64]
            }
        })
        .collect();
    for &a in &opts[0] {
        for &b in &opts[1] {
            for &c in &opts[2] {
                for &d in &opts[3] {
                    f([a, b, c, d]);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merges_across_cell_boundaries() {
        let mut s = PointSet::new(1e-9);
        let (a, new_a) = s.insert([1e-8 - 1e-12, 0.5, 0.0, 0.0]);
        let (b, new_b) = s.insert([1e-8 + 1e-12, 0.5, 0.0, 0.0]);
        assert!(new_a && !new_b);
        assert_eq!(a, b);
        let (c, new_c) = s.insert([1e-8 + 5e-9, 0.5, 0.0, 0.0]);
        assert!(new_c);
        assert_ne!(a, c);
        assert_eq!(s.len(), 2);
    }
}
