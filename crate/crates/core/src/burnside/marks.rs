use serde::Serialize;

use crate::group::GroupRef;
use crate::gset::{product, GSet};
use crate::matrix::Matrix;

/// `marks[i][j] = |(G/H_i)^{H_j}|`, rows and columns in class order.
pub fn table_of_marks(g: &GroupRef) -> Matrix {
    let k = g.class_count();
    let rows = (0..k)
        .map(|i| {
            let x = GSet::orbit(g, i);
            (0..k)
                .map(|j| x.fixed_points(g.rep(j)).len() as i64)
                .collect()
        })
        .collect::<Vec<Vec<i64>>>();
    Matrix::from_i64_rows(&rows, k)
}

/// Structure constants of the Burnside ring on the orbit basis:
/// `[G/H_i] [G/H_j] = sum_k table[i][j][k] [G/H_k]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BurnsideRing {
    pub table: Vec<Vec<Vec<i64>>>,
}

impl BurnsideRing {
    pub fn rank(&self) -> usize {
        self.table.len()
    }

    pub fn multiply(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let k = self.rank();
        let mut out = vec![0; k];
        for i in 0..k {
            for j in 0..k {
                let c = a[i] * b[j];
                if c != 0 {
                    for (o, t) in out.iter_mut().zip(&self.table[i][j]) {
                        *o += c * t;
                    }
                }
            }
        }
        out
    }
}

pub fn burnside_ring(g: &GroupRef) -> BurnsideRing {
    let k = g.class_count();
    let table = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    let p = product(&GSet::orbit(g, i), &GSet::orbit(g, j)).expect("same group");
                    let mut v = vec![0; k];
                    for (c, m) in p.set.orbit_type() {
                        v[c] = m as i64;
                    }
                    v
                })
                .collect()
        })
        .collect();
    BurnsideRing { table }
}
