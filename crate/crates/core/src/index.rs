//! Grid index for nearest-neighbour queries on S3 under the projective
//! distance `min(|p - q|, |p + q|)`.

use std::collections::HashMap;

use crate::quat::{distance, UnitQuaternion};

/// Points are stored with canonical sign and bucketed on a 4D grid of side
/// `cell`. Queries scan the grid boxes around both `q` and `-q`.
#[derive(Clone, Debug)]
pub struct NeighborIndex {
    cell: f64,
    points: Vec<UnitQuaternion>,
    order: Vec<u32>,
    cells: HashMap<[i32; 4], (u32, u32)>,
}

fn cell_key(p: &[f64; 4], cell: f64) -> [i32; 4] {
    p.map(|x| (x / cell).floor() as i32)
}

impl NeighborIndex {
    pub fn new(points: &[UnitQuaternion], cell: f64) -> Self {
        assert!(cell > 0.0);
        let points: Vec<UnitQuaternion> = points.iter().map(|p| p.canonical()).collect();
        let keys: Vec<[i32; 4]> = points
            .iter()
            .map(|p| cell_key(&p.to_array(), cell))
            .collect();
        let mut order: Vec<u32> = (0..points.len() as u32).collect();
        order.sort_by_key(|&i| (keys[i as usize], i));
        let mut cells = HashMap::new();
        let mut start = 0usize;
        while start < order.len() {
            let k = keys[order[start] as usize];
            let mut end = start + 1;
            while end < order.len() && keys[order[end] as usize] == k {
                end += 1;
            }
            cells.insert(k, (start as u32, end as u32));
            start = end;
        }
        NeighborIndex {
            cell,
            points,
            order,
            cells,
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn cell(&self) -> f64 {
        self.cell
    }

    fn scan_box(&self, c: [f64; 4], r: f64, out: &mut Vec<u32>) {
        let lo = c.map(|x| ((x - r) / self.cell).floor() as i32);
        let hi = c.map(|x| ((x + r) / self.cell).floor() as i32);
        let boxes: i64 = (0..4).map(|i| (hi[i] - lo[i] + 1) as i64).product();
        let mut take = |range: (u32, u32)| {
            out.extend_from_slice(&self.order[range.0 as usize..range.1 as usize]);
        };
        if boxes > self.cells.len() as i64 {
            for (k, &range) in &self.cells {
                if (0..4).all(|i| k[i] >= lo[i] && k[i] <= hi[i]) {
                    take(range);
                }
            }
            return;
        }
        for a in lo[0]..=hi[0] {
            for b in lo[1]..=hi[1] {
                for cc in lo[2]..=hi[2] {
                    for d in lo[3]..=hi[3] {
                        if let Some(&range) = self.cells.get(&[a, b, cc, d]) {
                            take(range);
                        }
                    }
                }
            }
        }
    }

    /// Ids of a superset of the points within projective distance `r` of `q`,
    /// sorted and without repeats.
    pub fn query(&self, q: UnitQuaternion, r: f64) -> Vec<u32> {
        let mut out = Vec::new();
        let c = q.canonical().to_array();
        self.scan_box(c, r, &mut out);
        self.scan_box(c.map(|x| -x), r, &mut out);
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Ids within projective distance `r` of `q`, exactly.
    pub fn within(&self, q: UnitQuaternion, r: f64) -> Vec<(u32, f64)> {
        self.query(q, r)
            .into_iter()
            .map(|i| (i, distance(q, self.points[i as usize])))
            .filter(|&(_, d)| d <= r)
            .collect()
    }

    /// Nearest point; ties go to the lowest id.
    pub fn nearest(&self, q: UnitQuaternion) -> Option<(u32, f64)> {
        if self.points.is_empty() {
            return None;
        }
        let mut r = self.cell;
        loop {
            let best = self
                .query(q, r)
                .into_iter()
                .map(|i| (i, distance(q, self.points[i as usize])))
                .min_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
            if let Some((i, d)) = best {
                if d <= r {
                    return Some((i, d));
                }
            }
            if r > 2.0 {
                return nearest_linear(&self.points, q);
            }
            r *= 2.0;
        }
    }
}

/// Reference nearest neighbour by full scan; ties go to the lowest id.
pub fn nearest_linear(points: &[UnitQuaternion], q: UnitQuaternion) -> Option<(u32, f64)> {
    points
        .iter()
        .enumerate()
        .map(|(i, p)| (i as u32, distance(q, *p)))
        .min_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)))
}
