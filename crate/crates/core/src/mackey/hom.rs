use crate::abgroup::{FinPresAbGroup, Subquotient};
use crate::error::{Error, Result};
use crate::int::Int;
use crate::linalg::{self, Lattice};
use crate::matrix::Matrix;

use super::constructions::RepresentableInfo;
use super::morphism::MackeyMorphism;
use super::{generating_orbit_maps, MackeyFunctor, MapKind};

/// `Hom(M, N)` as `S / Z`, where `S` is the lattice of level-matrix tuples
/// defining natural transformations and `Z` the tuples that are zero maps.
#[derive(Clone, Debug)]
pub struct HomGroup {
    source: MackeyFunctor,
    target: MackeyFunctor,
    /// Offset of each level's block in the flattened unknown vector.
    offsets: Vec<usize>,
    quotient: Subquotient,
}

impl HomGroup {
    pub fn group(&self) -> &FinPresAbGroup {
        self.quotient.group()
    }

    pub fn source(&self) -> &MackeyFunctor {
        &self.source
    }

    pub fn target(&self) -> &MackeyFunctor {
        &self.target
    }

    fn unflatten(&self, v: &[Int]) -> Vec<Matrix> {
        (0..self.source.levels().len())
            .map(|c| {
                let (r, k) = (self.target.rank(c), self.source.rank(c));
                let rows = (0..r)
                    .map(|i| v[self.offsets[c] + i * k..self.offsets[c] + (i + 1) * k].to_vec())
                    .collect();
                Matrix::from_rows(rows, k)
            })
            .collect()
    }

    fn flatten(&self, f: &MackeyMorphism) -> Vec<Int> {
        let mut v = Vec::with_capacity(*self.offsets.last().unwrap());
        for m in f.levels() {
            for i in 0..m.rows() {
                v.extend(m.row(i).iter().cloned());
            }
        }
        v
    }

    /// The morphism with the given canonical coordinates.
    pub fn morphism(&self, coords: &[Int]) -> MackeyMorphism {
        let lift = self.quotient.lift_matrix();
        let v = lift.mul_vec(coords);
        MackeyMorphism::unchecked(&self.source, &self.target, self.unflatten(&v)).expect("shapes")
    }

    /// Canonical coordinates of a morphism `source -> target`.
    pub fn coordinates(&self, f: &MackeyMorphism) -> Result<Vec<Int>> {
        if *f.source() != self.source || *f.target() != self.target {
            return Err(Error::FootMismatch(
                "morphism is not in this hom group".into(),
            ));
        }
        self.quotient.project(&self.flatten(f)).ok_or_else(|| {
            Error::NotEquivariant("level maps do not define a natural transformation".into())
        })
    }

    /// One morphism per canonical generator.
    pub fn generators(&self) -> Vec<MackeyMorphism> {
        let n = self.group().generator_count();
        (0..n)
            .map(|i| {
                let mut e = vec![Int::ZERO; n];
                e[i] = Int::ONE;
                self.morphism(&e)
            })
            .collect()
    }
}

/// Unknown integer matrices (blocks) subject to congruences; the solution
/// space modulo the tuples that vanish in the targets.
pub(crate) struct BlockSystem {
    offsets: Vec<usize>,
    shapes: Vec<(usize, usize)>,
    rows: Vec<Vec<Int>>,
    moduli: Vec<Int>,
}

impl BlockSystem {
    pub(crate) fn new(shapes: Vec<(usize, usize)>) -> BlockSystem {
        let mut offsets = vec![0];
        for (r, c) in &shapes {
            offsets.push(offsets.last().unwrap() + r * c);
        }
        BlockSystem {
            offsets,
            shapes,
            rows: Vec::new(),
            moduli: Vec::new(),
        }
    }

    fn unknowns(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    fn var(&self, b: usize, i: usize, j: usize) -> usize {
        self.offsets[b] + i * self.shapes[b].1 + j
    }

    /// Block `b` must be a homomorphism `source -> target`.
    pub(crate) fn homomorphism(
        &mut self,
        b: usize,
        source: &FinPresAbGroup,
        target: &FinPresAbGroup,
    ) {
        let n = self.unknowns();
        for (j, d) in source.orders().iter().enumerate() {
            if d.is_zero() {
                continue;
            }
            for (i, e) in target.orders().iter().enumerate() {
                let mut r = vec![Int::ZERO; n];
                r[self.var(b, i, j)] = d.clone();
                self.rows.push(r);
                self.moduli.push(e.clone());
            }
        }
    }

    /// `f_b . left = right . f_a` in `target` (the target of block `b`).
    pub(crate) fn commute(
        &mut self,
        b: usize,
        left: &Matrix,
        a: usize,
        right: &Matrix,
        target: &FinPresAbGroup,
    ) {
        let n = self.unknowns();
        for i in 0..self.shapes[b].0 {
            for j in 0..self.shapes[a].1 {
                let mut r = vec![Int::ZERO; n];
                for l in 0..self.shapes[b].1 {
                    let x = &left[(l, j)];
                    if !x.is_zero() {
                        let v = self.var(b, i, l);
                        r[v] += x;
                    }
                }
                for l in 0..self.shapes[a].0 {
                    let x = &right[(i, l)];
                    if !x.is_zero() {
                        let v = self.var(a, l, j);
                        r[v] -= x;
                    }
                }
                if r.iter().any(|x| !x.is_zero()) {
                    self.rows.push(r);
                    self.moduli.push(target.orders()[i].clone());
                }
            }
        }
    }

    /// Solutions modulo zero maps; `targets[b]` is the codomain of block `b`.
    pub(crate) fn solve(self, targets: &[&FinPresAbGroup]) -> Result<Subquotient> {
        let n = self.unknowns();
        let solutions = if self.rows.is_empty() {
            Lattice::full(n)
        } else {
            let big = Matrix::from_rows(self.rows, n).hstack(&Matrix::diagonal(&self.moduli).neg());
            let ker = linalg::kernel(&big);
            Lattice::from_columns(&ker.submatrix(0..n, 0..ker.cols()))
        };
        let mut zero_rows = Vec::new();
        for (b, t) in targets.iter().enumerate() {
            for (i, e) in t.orders().iter().enumerate() {
                if e.is_zero() {
                    continue;
                }
                for j in 0..self.shapes[b].1 {
                    let mut r = vec![Int::ZERO; n];
                    r[self.offsets[b] + i * self.shapes[b].1 + j] = e.clone();
                    zero_rows.push(r);
                }
            }
        }
        let zeros = Lattice::from_rows(&Matrix::from_rows(zero_rows, n));
        Subquotient::new(solutions, zeros)
    }
}

/// Natural transformations `M -> N`: unknown level matrices subject to
/// homomorphism and commutation congruences, solved over the integers.
pub fn hom_mackey(m: &MackeyFunctor, n: &MackeyFunctor) -> Result<HomGroup> {
    if *m.group() != *n.group() {
        return Err(Error::GroupMismatch(
            "hom between functors of different groups".into(),
        ));
    }
    let g = m.group();
    let k = g.class_count();
    let mut sys = BlockSystem::new((0..k).map(|c| (n.rank(c), m.rank(c))).collect());
    for c in 0..k {
        sys.homomorphism(c, m.level(c), n.level(c));
    }
    for om in generating_orbit_maps(g) {
        for kind in [MapKind::Res, MapKind::Tr] {
            let (a, b) = match kind {
                MapKind::Res => (om.to, om.from),
                MapKind::Tr => (om.from, om.to),
            };
            sys.commute(b, m.map(kind, om), a, n.map(kind, om), n.level(b));
        }
    }
    let offsets = sys.offsets.clone();
    let targets: Vec<&FinPresAbGroup> = n.levels().iter().collect();
    let quotient = sys.solve(&targets)?;
    Ok(HomGroup {
        source: m.clone(),
        target: n.clone(),
        offsets,
        quotient,
    })
}

/// `N(X) -> Hom(A_X, N)`: an element `n` goes to `s -> N(s) n`.
pub fn yoneda(
    rep: &RepresentableInfo,
    n: &MackeyFunctor,
    element: &[Int],
) -> Result<MackeyMorphism> {
    let x = &rep.gset;
    if element.len() != n.value(x).generator_count() {
        return Err(Error::Dimension(
            "element length does not match N(X)".into(),
        ));
    }
    let g = n.group();
    let mut maps = Vec::with_capacity(g.class_count());
    for c in 0..g.class_count() {
        let orbit = crate::gset::GSet::orbit(g, c);
        let cols: Vec<Vec<Int>> = rep.bases[c]
            .iter()
            .map(|code| {
                let e = crate::burnside::BurnsideElement::basis_element(x, &orbit, *code);
                Ok(n.eval_span(&e)?.mul_vec(element))
            })
            .collect::<Result<_>>()?;
        maps.push(Matrix::from_columns(&cols, n.rank(c)));
    }
    MackeyMorphism::unchecked(&rep.functor, n, maps)
}

/// `Hom(A_X, N) -> N(X)`: evaluate at the identity of `X`, one orbit block at a time.
pub fn yoneda_inverse(rep: &RepresentableInfo, f: &MackeyMorphism) -> Vec<Int> {
    let mut out = Vec::new();
    for i in 0..rep.gset.orbits().len() {
        let (c, idx) = rep.orbit_projection(i);
        out.extend(f.level(c).column(idx));
    }
    f.target().value(&rep.gset).normalize(&out)
}
