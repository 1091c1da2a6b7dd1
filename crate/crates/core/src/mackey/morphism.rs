use std::collections::HashMap;

use crate::abgroup::{FinPresAbGroup, Subquotient};
use crate::error::{Error, Result};
use crate::gset::GSet;
use crate::int::Int;
use crate::linalg::Lattice;
use crate::matrix::Matrix;

use super::{all_orbit_maps, MackeyFunctor, MapKind};

/// A natural transformation, one matrix per subgroup class
/// (`maps[c]: source(c) -> target(c)`).
#[derive(Clone, Debug)]
pub struct MackeyMorphism {
    source: MackeyFunctor,
    target: MackeyFunctor,
    maps: Vec<Matrix>,
}

impl MackeyMorphism {
    /// Checks shapes, that each level map is a homomorphism, and
    /// commutation with every restriction and transfer.
    pub fn new(
        source: &MackeyFunctor,
        target: &MackeyFunctor,
        maps: Vec<Matrix>,
    ) -> Result<MackeyMorphism> {
        let f = MackeyMorphism::unchecked(source, target, maps)?;
        f.check()?;
        Ok(f)
    }

    /// Shape checks and normalization only.
    pub fn unchecked(
        source: &MackeyFunctor,
        target: &MackeyFunctor,
        maps: Vec<Matrix>,
    ) -> Result<MackeyMorphism> {
        if *source.group() != *target.group() {
            return Err(Error::GroupMismatch(
                "morphism between functors of different groups".into(),
            ));
        }
        if maps.len() != source.levels().len() {
            return Err(Error::Dimension(format!(
                "{} level maps for {} classes",
                maps.len(),
                source.levels().len()
            )));
        }
        let mut out = Vec::with_capacity(maps.len());
        for (c, m) in maps.into_iter().enumerate() {
            if (m.rows(), m.cols()) != (target.rank(c), source.rank(c)) {
                return Err(Error::Dimension(format!(
                    "level {} map is {}x{}, expected {}x{}",
                    source.group().class_label(c),
                    m.rows(),
                    m.cols(),
                    target.rank(c),
                    source.rank(c)
                )));
            }
            out.push(target.level(c).normalize_matrix(&m));
        }
        Ok(MackeyMorphism {
            source: source.clone(),
            target: target.clone(),
            maps: out,
        })
    }

    fn check(&self) -> Result<()> {
        let g = self.source.group();
        for (c, m) in self.maps.iter().enumerate() {
            if !self
                .target
                .level(c)
                .accepts_map_from(self.source.level(c), m)
            {
                return Err(Error::Invalid(format!(
                    "level {} map is not a homomorphism",
                    g.class_label(c)
                )));
            }
        }
        for om in all_orbit_maps(g) {
            for kind in [MapKind::Res, MapKind::Tr] {
                let (a, b) = match kind {
                    MapKind::Res => (om.to, om.from),
                    MapKind::Tr => (om.from, om.to),
                };
                let lhs = &self.maps[b] * self.source.map(kind, om);
                let rhs = self.target.map(kind, om) * &self.maps[a];
                if !self.target.level(b).maps_equal(&lhs, &rhs) {
                    return Err(Error::NotEquivariant(format!(
                        "morphism does not commute with {} along G/{} -> G/{} (element {})",
                        if kind == MapKind::Res {
                            "restriction"
                        } else {
                            "transfer"
                        },
                        g.class_label(om.from),
                        g.class_label(om.to),
                        om.elem
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn identity(m: &MackeyFunctor) -> MackeyMorphism {
        let maps = (0..m.levels().len())
            .map(|c| Matrix::identity(m.rank(c)))
            .collect();
        MackeyMorphism {
            source: m.clone(),
            target: m.clone(),
            maps,
        }
    }

    pub fn zero(source: &MackeyFunctor, target: &MackeyFunctor) -> Result<MackeyMorphism> {
        let maps = (0..source.levels().len())
            .map(|c| Matrix::zeros(target.rank(c), source.rank(c)))
            .collect();
        MackeyMorphism::unchecked(source, target, maps)
    }

    pub fn source(&self) -> &MackeyFunctor {
        &self.source
    }

    pub fn target(&self) -> &MackeyFunctor {
        &self.target
    }

    pub fn level(&self, class: usize) -> &Matrix {
        &self.maps[class]
    }

    pub fn levels(&self) -> &[Matrix] {
        &self.maps
    }

    /// The map `source(X) -> target(X)`.
    pub fn at(&self, x: &GSet) -> Matrix {
        let blocks: Vec<Matrix> = x
            .orbits()
            .iter()
            .map(|o| self.maps[o.class].clone())
            .collect();
        Matrix::block_diagonal(&blocks)
    }

    /// `second . first`.
    pub fn then(first: &MackeyMorphism, second: &MackeyMorphism) -> Result<MackeyMorphism> {
        if first.target != second.source {
            return Err(Error::FootMismatch(
                "composable morphisms need matching functors".into(),
            ));
        }
        let maps = first
            .maps
            .iter()
            .zip(&second.maps)
            .map(|(a, b)| b * a)
            .collect();
        MackeyMorphism::unchecked(&first.source, &second.target, maps)
    }

    pub fn add(&self, other: &MackeyMorphism) -> Result<MackeyMorphism> {
        self.same_shape(other)?;
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(a, b)| a.add(b))
            .collect();
        MackeyMorphism::unchecked(&self.source, &self.target, maps)
    }

    pub fn sub(&self, other: &MackeyMorphism) -> Result<MackeyMorphism> {
        self.same_shape(other)?;
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(a, b)| a.sub(b))
            .collect();
        MackeyMorphism::unchecked(&self.source, &self.target, maps)
    }

    pub fn scale(&self, k: &Int) -> MackeyMorphism {
        let maps = self.maps.iter().map(|a| a.scale(k)).collect();
        MackeyMorphism::unchecked(&self.source, &self.target, maps).expect("same shape")
    }

    fn same_shape(&self, other: &MackeyMorphism) -> Result<()> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::FootMismatch(
                "morphisms have different source or target".into(),
            ));
        }
        Ok(())
    }

    /// Equality as maps (levelwise, modulo relations of the target).
    pub fn equals(&self, other: &MackeyMorphism) -> bool {
        self.source == other.source
            && self.target == other.target
            && self
                .maps
                .iter()
                .zip(&other.maps)
                .enumerate()
                .all(|(c, (a, b))| self.target.level(c).maps_equal(a, b))
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().enumerate().all(|(c, a)| {
            self.target
                .level(c)
                .maps_equal(a, &Matrix::zeros(a.rows(), a.cols()))
        })
    }

    pub fn is_levelwise_surjective(&self) -> bool {
        self.maps
            .iter()
            .enumerate()
            .all(|(c, a)| self.target.level(c).is_surjective_map(a))
    }

    pub fn is_levelwise_injective(&self) -> bool {
        self.maps.iter().enumerate().all(|(c, a)| {
            self.target
                .level(c)
                .is_injective_map(self.source.level(c), a)
        })
    }

    /// Two-sided inverse, verified.
    pub fn inverse(&self) -> Result<MackeyMorphism> {
        let g = self.source.group();
        let mut maps = Vec::with_capacity(self.maps.len());
        for (c, a) in self.maps.iter().enumerate() {
            let inv = self
                .target
                .level(c)
                .inverse_map(self.source.level(c), a)
                .ok_or_else(|| {
                    Error::NotInvertible(format!("level {} map is not bijective", g.class_label(c)))
                })?;
            maps.push(inv);
        }
        MackeyMorphism::unchecked(&self.target, &self.source, maps)
    }

    pub fn is_iso(&self) -> bool {
        self.inverse().is_ok()
    }
}

/// Builds the functor on levelwise subquotients of `m` closed under all
/// structure maps, plus the lift matrices (canonical coords -> `m` coords).
pub(crate) fn induced_functor(m: &MackeyFunctor, subs: &[Subquotient]) -> MackeyFunctor {
    let g = m.group();
    let lifts: Vec<Matrix> = subs.iter().map(Subquotient::lift_matrix).collect();
    let project = |c: usize, mat: &Matrix| -> Matrix {
        let cols: Vec<Vec<Int>> = (0..mat.cols())
            .map(|j| {
                subs[c]
                    .project(&mat.column(j))
                    .expect("subquotient is closed under structure maps")
            })
            .collect();
        Matrix::from_columns(&cols, subs[c].group().generator_count())
    };
    let mut res = HashMap::new();
    let mut tr = HashMap::new();
    for om in all_orbit_maps(g) {
        res.insert(om, project(om.from, &(m.res(om) * &lifts[om.to])));
        tr.insert(om, project(om.to, &(m.tr(om) * &lifts[om.from])));
    }
    let levels = subs.iter().map(|s| s.group().clone()).collect();
    MackeyFunctor::from_complete(g, levels, res, tr)
}

fn project_columns(sub: &Subquotient, mat: &Matrix) -> Matrix {
    let cols: Vec<Vec<Int>> = (0..mat.cols())
        .map(|j| {
            sub.project(&mat.column(j))
                .expect("vector lies in the numerator")
        })
        .collect();
    Matrix::from_columns(&cols, sub.group().generator_count())
}

#[derive(Clone, Debug)]
pub struct Kernel {
    pub functor: MackeyFunctor,
    pub inclusion: MackeyMorphism,
}

#[derive(Clone, Debug)]
pub struct Cokernel {
    pub functor: MackeyFunctor,
    pub projection: MackeyMorphism,
}

#[derive(Clone, Debug)]
pub struct Image {
    pub functor: MackeyFunctor,
    /// `source -> image`.
    pub coimage: MackeyMorphism,
    /// `image -> target`.
    pub inclusion: MackeyMorphism,
}

#[derive(Clone, Debug)]
pub struct DirectSum {
    pub functor: MackeyFunctor,
    pub inclusions: [MackeyMorphism; 2],
    pub projections: [MackeyMorphism; 2],
}

fn relation_lattice(m: &MackeyFunctor, c: usize) -> Lattice {
    m.level(c).relation_lattice()
}

pub fn kernel(f: &MackeyMorphism) -> Kernel {
    let (m, n) = (f.source(), f.target());
    let subs: Vec<Subquotient> = (0..m.levels().len())
        .map(|c| {
            let num = n.level(c).kernel_lattice(f.level(c));
            Subquotient::new(num, relation_lattice(m, c)).expect("relations lie in the kernel")
        })
        .collect();
    let functor = induced_functor(m, &subs);
    let maps = subs.iter().map(Subquotient::lift_matrix).collect();
    let inclusion = MackeyMorphism::unchecked(&functor, m, maps).expect("shapes");
    Kernel { functor, inclusion }
}

pub fn cokernel(f: &MackeyMorphism) -> Cokernel {
    let n = f.target();
    let subs: Vec<Subquotient> = (0..n.levels().len())
        .map(|c| {
            let den = relation_lattice(n, c).sum(&Lattice::from_columns(f.level(c)));
            Subquotient::new(Lattice::full(n.rank(c)), den)
                .expect("full lattice contains everything")
        })
        .collect();
    let functor = induced_functor(n, &subs);
    let maps = subs
        .iter()
        .enumerate()
        .map(|(c, s)| project_columns(s, &Matrix::identity(n.rank(c))))
        .collect();
    let projection = MackeyMorphism::unchecked(n, &functor, maps).expect("shapes");
    Cokernel {
        functor,
        projection,
    }
}

pub fn image(f: &MackeyMorphism) -> Image {
    let n = f.target();
    let subs: Vec<Subquotient> = (0..n.levels().len())
        .map(|c| {
            let rel = relation_lattice(n, c);
            let num = rel.sum(&Lattice::from_columns(f.level(c)));
            Subquotient::new(num, rel).expect("relations lie in the image lattice")
        })
        .collect();
    let functor = induced_functor(n, &subs);
    let incl = subs.iter().map(Subquotient::lift_matrix).collect();
    let inclusion = MackeyMorphism::unchecked(&functor, n, incl).expect("shapes");
    let co = subs
        .iter()
        .enumerate()
        .map(|(c, s)| project_columns(s, f.level(c)))
        .collect();
    let coimage = MackeyMorphism::unchecked(f.source(), &functor, co).expect("shapes");
    Image {
        functor,
        coimage,
        inclusion,
    }
}

pub fn direct_sum(m: &MackeyFunctor, n: &MackeyFunctor) -> Result<DirectSum> {
    if *m.group() != *n.group() {
        return Err(Error::GroupMismatch(
            "direct sum of functors over different groups".into(),
        ));
    }
    let g = m.group();
    let levels: Vec<FinPresAbGroup> = m
        .levels()
        .iter()
        .zip(n.levels())
        .map(|(a, b)| a.direct_sum(b))
        .collect();
    let mut res = HashMap::new();
    let mut tr = HashMap::new();
    for om in all_orbit_maps(g) {
        res.insert(om, m.res(om).direct_sum(n.res(om)));
        tr.insert(om, m.tr(om).direct_sum(n.tr(om)));
    }
    let functor = MackeyFunctor::from_complete(g, levels, res, tr);
    let k = m.levels().len();
    let block = |rows: usize, cols: usize, r0: usize, c0: usize, size: usize| {
        let mut x = Matrix::zeros(rows, cols);
        x.set_block(r0, c0, &Matrix::identity(size));
        x
    };
    let (mut i1, mut i2, mut p1, mut p2) = (vec![], vec![], vec![], vec![]);
    for c in 0..k {
        let (a, b) = (m.rank(c), n.rank(c));
        i1.push(block(a + b, a, 0, 0, a));
        i2.push(block(a + b, b, a, 0, b));
        p1.push(block(a, a + b, 0, 0, a));
        p2.push(block(b, a + b, 0, a, b));
    }
    Ok(DirectSum {
        inclusions: [
            MackeyMorphism::unchecked(m, &functor, i1)?,
            MackeyMorphism::unchecked(n, &functor, i2)?,
        ],
        projections: [
            MackeyMorphism::unchecked(&functor, m, p1)?,
            MackeyMorphism::unchecked(&functor, n, p2)?,
        ],
        functor,
    })
}

/// Direct sum of a list of functors (the zero functor for an empty list).
pub fn direct_sum_many(g: &crate::group::GroupRef, parts: &[MackeyFunctor]) -> MackeyFunctor {
    let mut acc = MackeyFunctor::zero(g);
    for p in parts {
        acc = direct_sum(&acc, p).expect("same group").functor;
    }
    acc
}
