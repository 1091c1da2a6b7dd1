//! Exact integer linear algebra: Hermite/echelon forms, Smith diagonalization,
//! integer kernels, solving `A x = b` over `Z`, and lattices in `Z^n`.

use crate::int::Int;
use crate::matrix::Matrix;

/// Result of a row reduction `U * A = H` with `U` unimodular.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub h: Matrix,
    pub u: Option<Matrix>,
    /// Pivot column of each nonzero row of `h`; the nonzero rows come first.
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Row-reduces `a` to Hermite normal form (positive pivots, entries above each
/// pivot reduced into `[0, pivot)`). With `track`, also returns `U` with `U a = H`.
pub fn row_echelon(a: &Matrix, track: bool) -> Echelon {
    let (m, n) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut u = track.then(|| Matrix::identity(m));
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        // Euclid down the column until a single nonzero entry remains at or below r.
        loop {
            let mut best: Option<usize> = None;
            for i in r..m {
                let v = &h[(i, c)];
                if !v.is_zero() && best.is_none_or(|b| v.abs() < h[(b, c)].abs()) {
                    best = Some(i);
                }
            }
            let Some(p) = best else { break };
            h.swap_rows(p, r);
            if let Some(u) = u.as_mut() {
                u.swap_rows(p, r);
            }
            let mut clean = true;
            for i in r + 1..m {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let q = h[(i, c)].div_floor(&h[(r, c)]);
                let nq = -q;
                h.add_row_multiple(i, r, &nq);
                if let Some(u) = u.as_mut() {
                    u.add_row_multiple(i, r, &nq);
                }
                if !h[(i, c)].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
            if let Some(u) = u.as_mut() {
                u.negate_row(r);
            }
        }
        for i in 0..r {
            if h[(i, c)].is_zero() {
                continue;
            }
            let q = h[(i, c)].div_floor(&h[(r, c)]);
            let nq = -q;
            h.add_row_multiple(i, r, &nq);
            if let Some(u) = u.as_mut() {
                u.add_row_multiple(i, r, &nq);
            }
        }
        pivots.push(c);
        r += 1;
    }
    Echelon { h, u, pivots }
}

/// Basis (as columns) of the integer kernel `{x : a x = 0}`.
pub fn kernel(a: &Matrix) -> Matrix {
    let n = a.cols();
    if a.rows() == 0 {
        return Matrix::identity(n);
    }
    let e = row_echelon(&a.transpose(), true);
    let rank = e.rank();
    let u = e.u.expect("tracked");
    let rows: Vec<Vec<Int>> = (rank..n).map(|i| u.row(i).to_vec()).collect();
    if rows.is_empty() {
        return Matrix::zeros(n, 0);
    }
    // Reduce the basis to Hermite form to keep entries small.
    let basis = hermite_basis(&Matrix::from_rows(rows, n));
    basis.transpose()
}

/// Solves `a x = b` over the integers; `None` when no integer solution exists.
pub fn solve(a: &Matrix, b: &[Int]) -> Option<Vec<Int>> {
    assert_eq!(a.rows(), b.len(), "solve: dimension mismatch");
    let n = a.cols();
    if a.rows() == 0 {
        return Some(vec![Int::ZERO; n]);
    }
    // U a^T = H, so a U^T = H^T is column-echelon.
    let e = row_echelon(&a.transpose(), true);
    let u = e.u.as_ref().expect("tracked");
    let h = &e.h;
    let mut y = vec![Int::ZERO; n];
    for (k, &p) in e.pivots.iter().enumerate() {
        let mut rhs = b[p].clone();
        for (kk, yk) in y.iter().enumerate().take(k) {
            let coef = &h[(kk, p)];
            if !coef.is_zero() && !yk.is_zero() {
                rhs -= coef * yk;
            }
        }
        let piv = &h[(k, p)];
        if !piv.divides(&rhs) {
            return None;
        }
        y[k] = rhs.div_exact(piv);
    }
    // Verify all rows (non-pivot rows must already agree).
    let ht = h.transpose();
    if ht.mul_vec(&y) != b {
        return None;
    }
    Some(u.transpose().mul_vec(&y))
}

/// Hermite basis (nonzero rows) of the row space of `gens`.
pub fn hermite_basis(gens: &Matrix) -> Matrix {
    let e = row_echelon(gens, false);
    let r = e.rank();
    e.h.submatrix(0..r, 0..gens.cols())
}

#[derive(Clone, Debug)]
struct ColTracker {
    q: Matrix,
    q_inv: Matrix,
}

impl ColTracker {
    fn swap(&mut self, a: usize, b: usize) {
        self.q.swap_cols(a, b);
        self.q_inv.swap_rows(a, b);
    }
    /// col[dst] += k col[src]
    fn add(&mut self, dst: usize, src: usize, k: &Int) {
        self.q.add_col_multiple(dst, src, k);
        self.q_inv.add_row_multiple(src, dst, &-k);
    }
    fn negate(&mut self, c: usize) {
        self.q.negate_col(c);
        self.q_inv.negate_row(c);
    }
    /// c1' = a c1 + b c2, c2' = c c1 + d c2 with ad - bc = 1.
    fn combine(&mut self, c1: usize, c2: usize, a: &Int, b: &Int, c: &Int, d: &Int) {
        self.q.combine_cols(c1, c2, a, b, c, d);
        // E has E[c1][c1]=a, E[c2][c1]=b, E[c1][c2]=c, E[c2][c2]=d; its inverse
        // acts on rows of Q^{-1}: r1' = d r1 - c r2, r2' = -b r1 + a r2.
        let (nb, nc) = (-b, -c);
        self.q_inv.combine_rows(c1, c2, d, &nc, &nb, a);
    }
}

/// Smith diagonalization `P a Q = D` with column transforms tracked.
#[derive(Clone, Debug)]
pub struct Smith {
    /// Diagonal of `D`, length `min(rows, cols)`; nonzero entries form a
    /// divisibility chain followed by zeros.
    pub diagonal: Vec<Int>,
    pub q: Matrix,
    pub q_inv: Matrix,
}

pub fn smith(a: &Matrix) -> Smith {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut t = ColTracker {
        q: Matrix::identity(n),
        q_inv: Matrix::identity(n),
    };
    let k = m.min(n);
    let mut s = 0;
    while s < k {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        let mut best: Option<(usize, usize)> = None;
        for i in s..m {
            for j in s..n {
                let v = &d[(i, j)];
                if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < d[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap_rows(s, pi);
        d.swap_cols(s, pj);
        t.swap(s, pj);
        loop {
            // Clear column s below the pivot with unimodular row combinations.
            for i in s + 1..m {
                if d[(i, s)].is_zero() {
                    continue;
                }
                let a0 = d[(s, s)].clone();
                let b0 = d[(i, s)].clone();
                if a0.divides(&b0) {
                    let q = -b0.div_exact(&a0);
                    d.add_row_multiple(i, s, &q);
                } else {
                    let (g, x, y) = a0.ext_gcd(&b0);
                    let (ag, bg) = (a0.div_exact(&g), b0.div_exact(&g));
                    let nbg = -&bg;
                    d.combine_rows(s, i, &x, &y, &nbg, &ag);
                }
            }
            // Clear row s right of the pivot with column combinations.
            let mut row_dirty = false;
            for j in s + 1..n {
                if d[(s, j)].is_zero() {
                    continue;
                }
                let a0 = d[(s, s)].clone();
                let b0 = d[(s, j)].clone();
                if a0.divides(&b0) {
                    let q = -b0.div_exact(&a0);
                    d.add_col_multiple(j, s, &q);
                    t.add(j, s, &q);
                } else {
                    let (g, x, y) = a0.ext_gcd(&b0);
                    let (ag, bg) = (a0.div_exact(&g), b0.div_exact(&g));
                    let nbg = -&bg;
                    d.combine_cols(s, j, &x, &y, &nbg, &ag);
                    t.combine(s, j, &x, &y, &nbg, &ag);
                    row_dirty = true;
                }
            }
            let col_clean = (s + 1..m).all(|i| d[(i, s)].is_zero());
            if !row_dirty && col_clean {
                // Enforce divisibility of the trailing block by the pivot.
                let piv = d[(s, s)].clone();
                let mut bad = None;
                'outer: for i in s + 1..m {
                    for j in s + 1..n {
                        if !piv.divides(&d[(i, j)]) {
                            bad = Some(i);
                            break 'outer;
                        }
                    }
                }
                match bad {
                    Some(i) => d.add_row_multiple(s, i, &Int::ONE),
                    None => break,
                }
            }
        }
        if d[(s, s)].is_negative() {
            d.negate_col(s);
            t.negate(s);
        }
        s += 1;
    }
    Smith {
        diagonal: (0..k).map(|i| d[(i, i)].clone()).collect(),
        q: t.q,
        q_inv: t.q_inv,
    }
}

/// A sublattice of `Z^n`, stored as a Hermite row basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    dim: usize,
    basis: Matrix,
}

impl Lattice {
    pub fn zero(dim: usize) -> Lattice {
        Lattice {
            dim,
            basis: Matrix::zeros(0, dim),
        }
    }

    pub fn full(dim: usize) -> Lattice {
        Lattice {
            dim,
            basis: Matrix::identity(dim),
        }
    }

    /// Lattice spanned by the rows of `gens`.
    pub fn from_rows(gens: &Matrix) -> Lattice {
        Lattice {
            dim: gens.cols(),
            basis: hermite_basis(gens),
        }
    }

    /// Lattice spanned by the columns of `gens`.
    pub fn from_columns(gens: &Matrix) -> Lattice {
        Lattice::from_rows(&gens.transpose())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    /// Basis vectors as rows.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Coefficients of `v` in the basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[Int]) -> Option<Vec<Int>> {
        assert_eq!(v.len(), self.dim);
        if v.iter().all(Int::is_zero) {
            return Some(vec![Int::ZERO; self.rank()]);
        }
        // The Hermite basis is in echelon form: peel pivots off directly.
        let mut rest = v.to_vec();
        let mut coords = vec![Int::ZERO; self.rank()];
        for (k, c) in coords.iter_mut().enumerate() {
            let row = self.basis.row(k);
            let p = row
                .iter()
                .position(|x| !x.is_zero())
                .expect("nonzero basis row");
            if rest[..p].iter().any(|x| !x.is_zero()) {
                return None;
            }
            if rest[p].is_zero() {
                continue;
            }
            if !row[p].divides(&rest[p]) {
                return None;
            }
            let q = rest[p].div_exact(&row[p]);
            for (r, b) in rest.iter_mut().zip(row) {
                if !b.is_zero() {
                    *r -= &q * b;
                }
            }
            *c = q;
        }
        rest.iter().all(Int::is_zero).then_some(coords)
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        assert_eq!(self.dim, other.dim);
        Lattice::from_rows(&self.basis.vstack(&other.basis))
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        (0..other.rank()).all(|i| self.contains(other.basis.row(i)))
    }

    pub fn intersection(&self, other: &Lattice) -> Lattice {
        assert_eq!(self.dim, other.dim);
        if self.rank() == 0 || other.rank() == 0 {
            return Lattice::zero(self.dim);
        }
        // a B1 = b B2  <=>  (a, b) in ker [B1^T | -B2^T].
        let lhs = self
            .basis
            .transpose()
            .hstack(&other.basis.transpose().neg());
        let ker = kernel(&lhs);
        let r1 = self.rank();
        let coeffs = ker.submatrix(0..r1, 0..ker.cols());
        Lattice::from_columns(&(&self.basis.transpose() * &coeffs))
    }

    /// Image under `f` (an `m x dim` matrix).
    pub fn image(&self, f: &Matrix) -> Lattice {
        assert_eq!(f.cols(), self.dim);
        Lattice::from_columns(&(f * &self.basis.transpose()))
    }

    /// `{x in Z^n : f x in self}` for `f: Z^n -> Z^dim`.
    pub fn preimage(&self, f: &Matrix) -> Lattice {
        assert_eq!(f.rows(), self.dim);
        let n = f.cols();
        let lhs = f.hstack(&self.basis.transpose().neg());
        let ker = kernel(&lhs);
        Lattice::from_columns(&ker.submatrix(0..n, 0..ker.cols()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[Vec<i64>], cols: usize) -> Matrix {
        Matrix::from_i64_rows(rows, cols)
    }

    #[test]
    fn smith_of_known_matrix() {
        let a = m(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]], 3);
        let s = smith(&a);
        let d: Vec<i64> = s.diagonal.iter().map(|v| v.to_i64().unwrap()).collect();
        assert_eq!(d, vec![2, 6, 12]);
        assert!((&s.q * &s.q_inv).is_identity());
    }

    #[test]
    fn kernel_and_solve() {
        let a = m(&[vec![1, 2, 3], vec![2, 4, 6]], 3);
        let k = kernel(&a);
        assert_eq!(k.cols(), 2);
        assert!((&a * &k).is_zero());
        let b = vec![Int::from(5), Int::from(10)];
        let x = solve(&a, &b).unwrap();
        assert_eq!(a.mul_vec(&x), b);
        assert!(solve(&m(&[vec![2, 4]], 2), &[Int::from(3)]).is_none());
    }

    #[test]
    fn lattice_intersection() {
        let l1 = Lattice::from_rows(&m(&[vec![2, 0], vec![0, 1]], 2));
        let l2 = Lattice::from_rows(&m(&[vec![3, 0], vec![0, 2]], 2));
        let i = l1.intersection(&l2);
        assert_eq!(i, Lattice::from_rows(&m(&[vec![6, 0], vec![0, 2]], 2)));
        assert!(l1.contains(&[Int::from(4), Int::from(7)]));
        assert!(!l1.contains(&[Int::from(3), Int::from(7)]));
    }

    fn small_matrix() -> impl Strategy<Value = Matrix> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-6i64..7, r * c).prop_map(move |v| {
                Matrix::from_rows(
                    v.chunks(c)
                        .map(|ch| ch.iter().map(|&x| Int::from(x)).collect())
                        .collect(),
                    c,
                )
            })
        })
    }

    proptest! {
        #[test]
        fn smith_is_a_diagonalization(a in small_matrix()) {
            let s = smith(&a);
            prop_assert!((&s.q * &s.q_inv).is_identity());
            // Column transform leaves a row-equivalent diagonal matrix: check via lattices.
            let aq = &a * &s.q;
            let mut diag = Matrix::zeros(s.diagonal.len(), a.cols());
            for (i, d) in s.diagonal.iter().enumerate() {
                diag[(i, i)] = d.clone();
            }
            prop_assert_eq!(Lattice::from_rows(&aq), Lattice::from_rows(&diag));
            let nz: Vec<&Int> = s.diagonal.iter().filter(|d| !d.is_zero()).collect();
            for w in nz.windows(2) {
                prop_assert!(w[0].divides(w[1]));
            }
            let zeros_tail = s.diagonal.iter().skip_while(|d| !d.is_zero()).all(Int::is_zero);
            prop_assert!(zeros_tail);
        }

        #[test]
        fn kernel_is_annihilated(a in small_matrix()) {
            let k = kernel(&a);
            prop_assert!((&a * &k).is_zero());
            let e = row_echelon(&a, false);
            prop_assert_eq!(k.cols(), a.cols() - e.rank());
        }

        #[test]
        fn echelon_transform(a in small_matrix()) {
            let e = row_echelon(&a, true);
            prop_assert_eq!(&(e.u.as_ref().unwrap() * &a), &e.h);
        }
    }
}
