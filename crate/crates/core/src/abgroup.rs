//! Finitely presented abelian groups.
//!
//! A group is `Z^n / (row space of the relation matrix)`. Every group can be
//! brought to its *diagonal* presentation `Z/d_1 + ... + Z/d_k + Z^r` with
//! `1 < d_1 | d_2 | ... | d_k`, together with explicit coordinate-change
//! matrices in both directions. Mackey-functor levels are always kept in
//! diagonal form, which makes element normal forms and equality trivial.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::int::Int;
use crate::linalg::{self, Lattice};
use crate::matrix::Matrix;

/// `Z^generators / rowspace(relations)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinPresAbGroup {
    generators: usize,
    relations: Matrix,
    /// `Some` when the presentation is diagonal: torsion orders then `0` for free summands.
    invariants: Option<Vec<Int>>,
}

impl FinPresAbGroup {
    pub fn zero() -> FinPresAbGroup {
        FinPresAbGroup::from_invariants(Vec::new()).expect("empty invariant list")
    }

    pub fn free(rank: usize) -> FinPresAbGroup {
        FinPresAbGroup::from_invariants(vec![Int::ZERO; rank]).expect("free invariants")
    }

    pub fn cyclic(order: i64) -> FinPresAbGroup {
        FinPresAbGroup::from_invariants(vec![Int::from(order)]).expect("cyclic invariants")
    }

    /// Diagonal group from its invariant factors: every entry is `0` (a free
    /// summand) or at least `2`; nonzero entries form a divisibility chain and
    /// precede the zeros.
    pub fn from_invariants(invariants: Vec<Int>) -> Result<FinPresAbGroup> {
        validate_invariants(&invariants)?;
        let n = invariants.len();
        let rows: Vec<Vec<Int>> = invariants
            .iter()
            .enumerate()
            .filter(|(_, d)| !d.is_zero())
            .map(|(i, d)| {
                let mut r = vec![Int::ZERO; n];
                r[i] = d.clone();
                r
            })
            .collect();
        Ok(FinPresAbGroup {
            generators: n,
            relations: Matrix::from_rows(rows, n),
            invariants: Some(invariants),
        })
    }

    /// Diagonal group `Z/o_1 + ... + Z/o_k` with each order `0` (free) or at
    /// least `2`, in any order. Invariant factors are computed on demand.
    pub fn diagonal(orders: Vec<Int>) -> Result<FinPresAbGroup> {
        if let Some(d) = orders.iter().find(|d| !d.is_zero() && d < &&Int::from(2)) {
            return Err(Error::Invalid(format!(
                "cyclic order {d} must be 0 or at least 2"
            )));
        }
        let n = orders.len();
        let rows: Vec<Vec<Int>> = orders
            .iter()
            .enumerate()
            .filter(|(_, d)| !d.is_zero())
            .map(|(i, d)| {
                let mut r = vec![Int::ZERO; n];
                r[i] = d.clone();
                r
            })
            .collect();
        Ok(FinPresAbGroup {
            generators: n,
            relations: Matrix::from_rows(rows, n),
            invariants: Some(orders),
        })
    }

    /// Whether the presentation is diagonal with orders forming an invariant-factor chain.
    pub fn is_canonical(&self) -> bool {
        self.invariants
            .as_deref()
            .is_some_and(|inv| validate_invariants(inv).is_ok())
    }

    /// General presentation; relations are rows of length `generators`.
    pub fn presented(generators: usize, relations: Matrix) -> Result<FinPresAbGroup> {
        if relations.cols() != generators {
            return Err(Error::Dimension(format!(
                "relation matrix has {} columns for {} generators",
                relations.cols(),
                generators
            )));
        }
        Ok(FinPresAbGroup {
            generators,
            relations,
            invariants: None,
        })
    }

    pub fn generator_count(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &Matrix {
        &self.relations
    }

    pub fn is_diagonal(&self) -> bool {
        self.invariants.is_some()
    }

    /// Invariant factors of the group (computed if the presentation is not diagonal).
    pub fn invariant_factors(&self) -> Vec<Int> {
        match &self.invariants {
            Some(inv) if self.is_canonical() => inv.clone(),
            _ => self.canonical().group.invariant_factors(),
        }
    }

    /// Orders of the diagonal generators (`0` = infinite). Panics if not diagonal.
    /// These are the invariant factors only when [`Self::is_canonical`] holds.
    pub fn orders(&self) -> &[Int] {
        self.invariants
            .as_deref()
            .expect("orders() requires a diagonal presentation")
    }

    pub fn is_zero_group(&self) -> bool {
        self.invariant_factors().is_empty()
    }

    pub fn free_rank(&self) -> usize {
        self.invariant_factors()
            .iter()
            .filter(|d| d.is_zero())
            .count()
    }

    pub fn torsion(&self) -> Vec<Int> {
        self.invariant_factors()
            .into_iter()
            .filter(|d| !d.is_zero())
            .collect()
    }

    /// `Some(|A|)` for finite groups.
    pub fn order(&self) -> Option<Int> {
        let inv = self.invariant_factors();
        if inv.iter().any(Int::is_zero) {
            return None;
        }
        Some(inv.iter().fold(Int::ONE, |a, b| &a * b))
    }

    pub fn relation_lattice(&self) -> Lattice {
        Lattice::from_rows(&self.relations)
    }

    /// Normal form of an element given in generator coordinates. For diagonal
    /// presentations this reduces each torsion coordinate into `[0, d)`.
    pub fn normalize(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(v.len(), self.generators, "element length mismatch");
        match &self.invariants {
            Some(inv) => v
                .iter()
                .zip(inv)
                .map(|(x, d)| {
                    if d.is_zero() {
                        x.clone()
                    } else {
                        x.mod_floor(d)
                    }
                })
                .collect(),
            None => {
                let c = self.canonical();
                c.from_canon.mul_vec(&c.to_canonical(v))
            }
        }
    }

    pub fn is_zero_element(&self, v: &[Int]) -> bool {
        match &self.invariants {
            Some(_) => self.normalize(v).iter().all(Int::is_zero),
            None => self.relation_lattice().contains(v),
        }
    }

    pub fn elements_equal(&self, a: &[Int], b: &[Int]) -> bool {
        let d: Vec<Int> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        self.is_zero_element(&d)
    }

    /// Reduces each row of a matrix with values in this (diagonal) group.
    pub fn normalize_matrix(&self, m: &Matrix) -> Matrix {
        assert_eq!(m.rows(), self.generators, "matrix target mismatch");
        let inv = self.orders();
        let mut out = m.clone();
        for (i, d) in inv.iter().enumerate() {
            if d.is_zero() {
                continue;
            }
            for v in out.row_mut(i) {
                *v = v.mod_floor(d);
            }
        }
        out
    }

    /// Whether `f` (rows = our generators) defines a homomorphism `source -> self`.
    pub fn accepts_map_from(&self, source: &FinPresAbGroup, f: &Matrix) -> bool {
        if f.rows() != self.generators || f.cols() != source.generators {
            return false;
        }
        let rel = &source.relations;
        (0..rel.rows()).all(|i| self.is_zero_element(&f.mul_vec(rel.row(i))))
    }

    /// Two maps into this group agree (entrywise modulo relations).
    pub fn maps_equal(&self, f: &Matrix, g: &Matrix) -> bool {
        if (f.rows(), f.cols()) != (g.rows(), g.cols()) {
            return false;
        }
        (0..f.cols()).all(|j| self.elements_equal(&f.column(j), &g.column(j)))
    }

    /// Diagonal form with explicit coordinate changes.
    pub fn canonical(&self) -> Canonical {
        if let Some(inv) = self.invariants.as_ref().filter(|_| self.is_canonical()) {
            return Canonical {
                group: self.clone(),
                to_canon: Matrix::identity(inv.len()),
                from_canon: Matrix::identity(inv.len()),
            };
        }
        canonical_quotient(self.generators, &self.relations)
    }

    /// Some `x` with `f x = b` in this group, for `f: Z^k -> Z^generators`.
    pub fn solve(&self, f: &Matrix, b: &[Int]) -> Option<Vec<Int>> {
        let k = f.cols();
        let a = f.hstack(&self.relations.transpose());
        linalg::solve(&a, b).map(|mut x| {
            x.truncate(k);
            x
        })
    }

    /// Kernel of `f: source -> self` as a lattice in `Z^source.generators`
    /// (contains the source relations).
    pub fn kernel_lattice(&self, f: &Matrix) -> Lattice {
        self.relation_lattice().preimage(f)
    }

    pub fn is_surjective_map(&self, f: &Matrix) -> bool {
        (0..self.generators).all(|j| {
            let mut e = vec![Int::ZERO; self.generators];
            e[j] = Int::ONE;
            self.solve(f, &e).is_some()
        })
    }

    pub fn is_injective_map(&self, source: &FinPresAbGroup, f: &Matrix) -> bool {
        source
            .relation_lattice()
            .contains_lattice(&self.kernel_lattice(f))
    }

    /// Inverse of an isomorphism `f: source -> self`, or `None`.
    pub fn inverse_map(&self, source: &FinPresAbGroup, f: &Matrix) -> Option<Matrix> {
        let n = self.generators;
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![Int::ZERO; n];
            e[j] = Int::ONE;
            cols.push(self.solve(f, &e)?);
        }
        let g = Matrix::from_columns(&cols, source.generators);
        let back = &g * f;
        if !source.maps_equal(&back, &Matrix::identity(source.generators)) {
            return None;
        }
        Some(if source.is_diagonal() {
            source.normalize_matrix(&g)
        } else {
            g
        })
    }

    pub fn direct_sum(&self, other: &FinPresAbGroup) -> FinPresAbGroup {
        if let (Some(a), Some(b)) = (&self.invariants, &other.invariants) {
            let mut o = a.clone();
            o.extend(b.iter().cloned());
            return FinPresAbGroup::diagonal(o).expect("orders are valid");
        }
        let rel = self.relations.direct_sum(&other.relations);
        FinPresAbGroup::presented(self.generators + other.generators, rel).expect("shapes agree")
    }

    /// Tensor product by presentation: generators are pairs, relations are
    /// the bilinear images of both relation sets.
    pub fn tensor(&self, other: &FinPresAbGroup) -> FinPresAbGroup {
        let (n, m) = (self.generators, other.generators);
        let mut rows = Vec::new();
        for r in 0..self.relations.rows() {
            for j in 0..m {
                let mut v = vec![Int::ZERO; n * m];
                for i in 0..n {
                    v[i * m + j] = self.relations[(r, i)].clone();
                }
                rows.push(v);
            }
        }
        for r in 0..other.relations.rows() {
            for i in 0..n {
                let mut v = vec![Int::ZERO; n * m];
                for j in 0..m {
                    v[i * m + j] = other.relations[(r, j)].clone();
                }
                rows.push(v);
            }
        }
        FinPresAbGroup::presented(n * m, Matrix::from_rows(rows, n * m)).expect("tensor shape")
    }

    /// `Z/d_1 + ... + Z^r` description.
    pub fn describe(&self) -> String {
        let inv = self.invariant_factors();
        if inv.is_empty() {
            return "0".to_string();
        }
        let mut parts: Vec<String> = inv
            .iter()
            .filter(|d| !d.is_zero())
            .map(|d| format!("Z/{d}"))
            .collect();
        let free = inv.iter().filter(|d| d.is_zero()).count();
        match free {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.join(" + ")
    }
}

impl fmt::Debug for FinPresAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinPresAbGroup({})", self.describe())
    }
}

impl fmt::Display for FinPresAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

fn validate_invariants(inv: &[Int]) -> Result<()> {
    let mut seen_free = false;
    let mut prev: Option<&Int> = None;
    for d in inv {
        if d.is_zero() {
            seen_free = true;
            continue;
        }
        if seen_free {
            return Err(Error::Invalid(
                "torsion invariant factor after a free summand".into(),
            ));
        }
        if d < &Int::from(2) {
            return Err(Error::Invalid(format!(
                "invariant factor {d} must be 0 or at least 2"
            )));
        }
        if let Some(p) = prev {
            if !p.divides(d) {
                return Err(Error::Invalid(format!(
                    "invariant factors {p} and {d} do not form a divisibility chain"
                )));
            }
        }
        prev = Some(d);
    }
    Ok(())
}

/// A group in diagonal form plus coordinate changes from/to some ambient
/// presentation `Z^n / L`.
#[derive(Clone, Debug)]
pub struct Canonical {
    pub group: FinPresAbGroup,
    /// `c x n`: ambient generator coordinates to canonical coordinates.
    pub to_canon: Matrix,
    /// `n x c`: canonical generators as ambient vectors.
    pub from_canon: Matrix,
}

impl Canonical {
    pub fn to_canonical(&self, v: &[Int]) -> Vec<Int> {
        self.group.normalize(&self.to_canon.mul_vec(v))
    }
}

/// Canonical form of `Z^n / rowspace(relations)`.
pub fn canonical_quotient(n: usize, relations: &Matrix) -> Canonical {
    assert_eq!(relations.cols(), n);
    if relations.rows() == 0 || relations.is_zero() {
        return Canonical {
            group: FinPresAbGroup::free(n),
            to_canon: Matrix::identity(n),
            from_canon: Matrix::identity(n),
        };
    }
    // Trim to a Hermite basis first: keeps the Smith step square-ish.
    let rel = linalg::hermite_basis(relations);
    let s = linalg::smith(&rel);
    let mut keep = Vec::new();
    let mut invariants = Vec::new();
    for i in 0..n {
        let d = s.diagonal.get(i).cloned().unwrap_or(Int::ZERO);
        if !d.is_one() {
            keep.push(i);
            invariants.push(d);
        }
    }
    // Torsion coordinates precede free ones already (Smith puts zeros last).
    let group = FinPresAbGroup::from_invariants(invariants).expect("smith output is a chain");
    let to_canon = group.normalize_matrix(&s.q.select_columns(&keep).transpose());
    let from_canon = s.q_inv.select_rows(&keep).transpose();
    Canonical {
        group,
        to_canon,
        from_canon,
    }
}

/// `numerator / denominator` for lattices `denominator ⊆ numerator ⊆ Z^n`.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub numerator: Lattice,
    pub denominator: Lattice,
    /// Canonical form with respect to the numerator's basis coordinates.
    pub canonical: Canonical,
}

impl Subquotient {
    pub fn new(numerator: Lattice, denominator: Lattice) -> Result<Subquotient> {
        if !numerator.contains_lattice(&denominator) {
            return Err(Error::Invalid(
                "subquotient denominator is not contained in the numerator".into(),
            ));
        }
        let k = numerator.rank();
        let mut rows = Vec::with_capacity(denominator.rank());
        for i in 0..denominator.rank() {
            rows.push(
                numerator
                    .coordinates(denominator.basis().row(i))
                    .expect("containment checked"),
            );
        }
        let rel = Matrix::from_rows(rows, k);
        let canonical = canonical_quotient(k, &rel);
        Ok(Subquotient {
            numerator,
            denominator,
            canonical,
        })
    }

    pub fn group(&self) -> &FinPresAbGroup {
        &self.canonical.group
    }

    /// Canonical coordinates of an ambient vector lying in the numerator.
    pub fn project(&self, v: &[Int]) -> Option<Vec<Int>> {
        let c = self.numerator.coordinates(v)?;
        Some(self.canonical.to_canonical(&c))
    }

    /// Ambient representative of each canonical generator (as columns).
    pub fn lift_matrix(&self) -> Matrix {
        &self.numerator.basis().transpose() * &self.canonical.from_canon
    }
}

/// Sparse presentation, reduced by unit-pivot elimination before a dense
/// Smith step. Used for the large coend presentations of box products.
#[derive(Clone, Debug, Default)]
pub struct SparsePresentation {
    generators: usize,
    relations: Vec<Vec<(usize, Int)>>,
}

/// Result of reducing a [`SparsePresentation`].
#[derive(Clone, Debug)]
pub struct Reduced {
    pub group: FinPresAbGroup,
    /// `c x n`: each original generator in canonical coordinates.
    pub to_canon: Matrix,
    /// Each canonical generator as a sparse combination of original generators.
    pub from_canon: Vec<Vec<(usize, Int)>>,
}

impl Reduced {
    pub fn project(&self, v: &[(usize, Int)]) -> Vec<Int> {
        let mut out = vec![Int::ZERO; self.group.generator_count()];
        for (g, c) in v {
            for (k, o) in out.iter_mut().enumerate() {
                let t = &self.to_canon[(k, *g)];
                if !t.is_zero() {
                    *o += t * c;
                }
            }
        }
        self.group.normalize(&out)
    }
}

impl SparsePresentation {
    pub fn new(generators: usize) -> SparsePresentation {
        SparsePresentation {
            generators,
            relations: Vec::new(),
        }
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relation_count(&self) -> usize {
        self.relations.len()
    }

    pub fn relations(&self) -> &[Vec<(usize, Int)>] {
        &self.relations
    }

    /// Adds a relation given as `(generator, coefficient)` terms; duplicates are merged.
    pub fn add_relation(&mut self, terms: impl IntoIterator<Item = (usize, Int)>) {
        let mut acc: BTreeMap<usize, Int> = BTreeMap::new();
        for (g, c) in terms {
            assert!(
                g < self.generators,
                "relation mentions generator {g} out of range"
            );
            if c.is_zero() {
                continue;
            }
            let e = acc.entry(g).or_insert(Int::ZERO);
            *e += c;
        }
        let row: Vec<(usize, Int)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if !row.is_empty() {
            self.relations.push(row);
        }
    }

    pub fn reduce(&self) -> Reduced {
        let n = self.generators;
        let mut rows: Vec<Option<BTreeMap<usize, Int>>> = self
            .relations
            .iter()
            .map(|r| Some(r.iter().cloned().collect()))
            .collect();
        let mut occurs: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (ri, r) in rows.iter().enumerate() {
            for &g in r.as_ref().unwrap().keys() {
                occurs[g].push(ri);
            }
        }
        let mut alive = vec![true; n];
        // Elimination record: generator = combination of generators alive at the time.
        let mut elim: Vec<(usize, Vec<(usize, Int)>)> = Vec::new();
        let mut heap: BinaryHeap<Reverse<(usize, usize)>> = rows
            .iter()
            .enumerate()
            .map(|(i, r)| Reverse((r.as_ref().unwrap().len(), i)))
            .collect();
        while let Some(Reverse((len, ri))) = heap.pop() {
            let Some(row) = rows[ri].as_ref() else {
                continue;
            };
            if row.len() != len {
                heap.push(Reverse((row.len(), ri)));
                continue;
            }
            // Unit entry whose column is least used.
            let pivot = row
                .iter()
                .filter(|(_, c)| c.is_unit())
                .map(|(&g, _)| g)
                .min_by_key(|&g| occurs[g].len());
            let Some(pg) = pivot else { continue };
            let row = rows[ri].take().unwrap();
            let u = row[&pg].clone();
            // u*pg + sum a_j g_j = 0  =>  pg = -u * sum a_j g_j
            let expr: Vec<(usize, Int)> = row
                .iter()
                .filter(|(&g, _)| g != pg)
                .map(|(&g, a)| (g, -(&u * a)))
                .collect();
            let users = std::mem::take(&mut occurs[pg]);
            for &other in &users {
                if other == ri {
                    continue;
                }
                let Some(orow) = rows[other].as_mut() else {
                    continue;
                };
                let Some(b) = orow.remove(&pg) else { continue };
                for (g, e) in &expr {
                    let add = &b * e;
                    let entry = orow.entry(*g).or_insert(Int::ZERO);
                    let was_zero = entry.is_zero();
                    *entry += add;
                    if entry.is_zero() {
                        orow.remove(g);
                    } else if was_zero {
                        occurs[*g].push(other);
                    }
                }
                if orow.is_empty() {
                    rows[other] = None;
                } else {
                    heap.push(Reverse((orow.len(), other)));
                }
            }
            for (g, _) in &expr {
                occurs[*g].retain(|&r| r != ri);
            }
            alive[pg] = false;
            elim.push((pg, expr));
        }
        let survivors: Vec<usize> = (0..n).filter(|&g| alive[g]).collect();
        let mut index = HashMap::new();
        for (i, &g) in survivors.iter().enumerate() {
            index.insert(g, i);
        }
        let s = survivors.len();
        let dense_rows: Vec<Vec<Int>> = rows
            .iter()
            .flatten()
            .map(|r| {
                let mut v = vec![Int::ZERO; s];
                for (g, c) in r {
                    v[index[g]] = c.clone();
                }
                v
            })
            .collect();
        let dense = canonical_quotient(s, &Matrix::from_rows(dense_rows, s));
        let c = dense.group.generator_count();
        // Canonical coordinates of every original generator.
        let mut coords: Vec<Option<Vec<Int>>> = vec![None; n];
        for (i, &g) in survivors.iter().enumerate() {
            coords[g] = Some(dense.to_canon.column(i));
        }
        for (g, expr) in elim.iter().rev() {
            let mut v = vec![Int::ZERO; c];
            for (h, a) in expr {
                let hv = coords[*h].as_ref().expect("eliminated in order");
                for (o, x) in v.iter_mut().zip(hv) {
                    if !x.is_zero() {
                        *o += a * x;
                    }
                }
            }
            coords[*g] = Some(v);
        }
        let mut to_canon = Matrix::zeros(c, n);
        for (g, v) in coords.into_iter().enumerate() {
            let v = dense.group.normalize(&v.expect("every generator resolved"));
            for (k, x) in v.into_iter().enumerate() {
                to_canon[(k, g)] = x;
            }
        }
        let from_canon = (0..c)
            .map(|k| {
                survivors
                    .iter()
                    .enumerate()
                    .filter_map(|(i, &g)| {
                        let x = &dense.from_canon[(i, k)];
                        (!x.is_zero()).then(|| (g, x.clone()))
                    })
                    .collect()
            })
            .collect();
        Reduced {
            group: dense.group,
            to_canon,
            from_canon,
        }
    }
}

/// Wire form of a diagonal group: its invariant factor list.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(transparent)]
pub struct InvariantFactors(pub Vec<Int>);
