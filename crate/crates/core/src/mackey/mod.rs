//! Mackey functors for a finite group, stored as one abelian group per
//! subgroup class together with restriction and transfer along every map of
//! orbits `G/A -> G/B` between class representatives.

mod constructions;
mod hom;
mod morphism;

pub use constructions::{
    borel_adjoint, borel_restrict, burnside_functor, equivariant_maps, fixed_point_counit,
    fixed_point_mackey, representable, EquivariantMaps, RepresentableInfo, Representation,
};
pub use hom::{hom_mackey, yoneda, yoneda_inverse, HomGroup};
pub(crate) use morphism::induced_functor;
pub use morphism::{
    cokernel, direct_sum, direct_sum_many, image, kernel, Cokernel, DirectSum, Image, Kernel,
    MackeyMorphism,
};

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::abgroup::FinPresAbGroup;
use crate::burnside::{compose_codes, hom_basis, BurnsideElement, SpanCode};
use crate::error::{Error, Result};
use crate::group::{Elem, GroupRef};
use crate::gset::{GMap, GSet};
use crate::int::Int;
use crate::matrix::Matrix;

/// The map `G/A -> G/B`, `xA -> x a B`, between class representatives.
/// `elem` is the least element of the coset `aB`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct OrbitMap {
    pub from: usize,
    pub to: usize,
    pub elem: Elem,
}

impl OrbitMap {
    pub fn new(g: &GroupRef, from: usize, to: usize, a: Elem) -> Result<OrbitMap> {
        let conj = g.conjugate(g.inv(a), g.rep(from));
        if !conj.is_subset(g.rep(to)) {
            return Err(Error::Invalid(format!(
                "no orbit map G/{} -> G/{} through element {a}",
                g.class_label(from),
                g.class_label(to)
            )));
        }
        Ok(OrbitMap::normalized(g, from, to, a))
    }

    fn normalized(g: &GroupRef, from: usize, to: usize, a: Elem) -> OrbitMap {
        let cos = g.cosets(to);
        OrbitMap {
            from,
            to,
            elem: cos.reps[cos.coset_of[a]],
        }
    }

    pub fn identity(class: usize) -> OrbitMap {
        OrbitMap {
            from: class,
            to: class,
            elem: 0,
        }
    }

    /// `second . first`.
    pub fn then(g: &GroupRef, first: OrbitMap, second: OrbitMap) -> OrbitMap {
        debug_assert_eq!(first.to, second.from);
        OrbitMap::normalized(g, first.from, second.to, g.mul(first.elem, second.elem))
    }

    pub fn is_iso(&self) -> bool {
        self.from == self.to
    }

    /// Inverse of an automorphism of `G/A`.
    pub fn inverse(&self, g: &GroupRef) -> OrbitMap {
        debug_assert!(self.is_iso());
        OrbitMap::normalized(g, self.to, self.from, g.inv(self.elem))
    }

    pub fn to_gmap(&self, g: &GroupRef) -> GMap {
        let src = GSet::orbit(g, self.from);
        let dst = GSet::orbit(g, self.to);
        let cf = g.cosets(self.from);
        let ct = g.cosets(self.to);
        let map = cf
            .reps
            .iter()
            .map(|&r| ct.coset_of[g.mul(r, self.elem)])
            .collect();
        GMap::new_unchecked(src, dst, map)
    }
}

/// Every orbit map between class representatives, sorted.
pub fn all_orbit_maps(g: &GroupRef) -> Vec<OrbitMap> {
    let mut out = Vec::new();
    for a in 0..g.class_count() {
        for b in 0..g.class_count() {
            out.extend(orbit_maps_between(g, a, b));
        }
    }
    out
}

pub fn orbit_maps_between(g: &GroupRef, from: usize, to: usize) -> Vec<OrbitMap> {
    g.cosets(to)
        .reps
        .iter()
        .filter_map(|&a| OrbitMap::new(g, from, to, a).ok())
        .collect()
}

/// A small generating set: all maps between classes where the source is a
/// maximal subconjugate of the target, plus all automorphisms of each orbit.
pub fn generating_orbit_maps(g: &GroupRef) -> Vec<OrbitMap> {
    let k = g.class_count();
    let sub = |a: usize, b: usize| !orbit_maps_between(g, a, b).is_empty();
    let mut out = Vec::new();
    for a in 0..k {
        for b in 0..k {
            let covering =
                a != b && sub(a, b) && !(0..k).any(|c| c != a && c != b && sub(a, c) && sub(c, b));
            if covering || a == b {
                out.extend(
                    orbit_maps_between(g, a, b)
                        .into_iter()
                        .filter(|m| !(a == b && m.elem == 0)),
                );
            }
        }
    }
    out
}

pub(crate) struct Inner {
    pub(crate) group: GroupRef,
    pub(crate) levels: Vec<FinPresAbGroup>,
    /// `res[m]`: `M(G/to) -> M(G/from)`.
    pub(crate) res: HashMap<OrbitMap, Matrix>,
    /// `tr[m]`: `M(G/from) -> M(G/to)`.
    pub(crate) tr: HashMap<OrbitMap, Matrix>,
}

/// A Mackey functor. Cheap to clone.
#[derive(Clone)]
pub struct MackeyFunctor(pub(crate) Arc<Inner>);

impl fmt::Debug for MackeyFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = &self.0.group;
        let mut m = f.debug_map();
        for (c, l) in self.0.levels.iter().enumerate() {
            m.entry(&g.class_label(c), &l.describe());
        }
        m.finish()
    }
}

impl PartialEq for MackeyFunctor {
    /// Equality of presentations (same levels, same structure matrices).
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (*self.0.group == *other.0.group
                && self.0.levels == other.0.levels
                && self.0.res == other.0.res
                && self.0.tr == other.0.tr)
    }
}

/// Which structure map a generating entry describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MapKind {
    Res,
    Tr,
}

impl MackeyFunctor {
    /// Builds from levels and structure maps along any generating set of orbit
    /// maps, closes under composition, then validates every composite of
    /// transitive spans between orbits.
    pub fn from_generators(
        group: &GroupRef,
        levels: Vec<FinPresAbGroup>,
        entries: Vec<(MapKind, OrbitMap, Matrix)>,
    ) -> Result<MackeyFunctor> {
        let m = MackeyFunctor::close(group, levels, entries)?;
        m.validate()?;
        Ok(m)
    }

    /// Closes generating data without running the span validation.
    pub fn close(
        group: &GroupRef,
        levels: Vec<FinPresAbGroup>,
        entries: Vec<(MapKind, OrbitMap, Matrix)>,
    ) -> Result<MackeyFunctor> {
        let g = group;
        if levels.len() != g.class_count() {
            return Err(Error::Dimension(format!(
                "{} levels given, {} subgroup classes",
                levels.len(),
                g.class_count()
            )));
        }
        if levels.iter().any(|l| !l.is_diagonal()) {
            return Err(Error::Invalid(
                "levels must be given in diagonal form".into(),
            ));
        }
        let mut closer = Closer {
            g,
            levels: &levels,
            res: HashMap::new(),
            tr: HashMap::new(),
            queue: VecDeque::new(),
        };
        for c in 0..g.class_count() {
            let n = levels[c].generator_count();
            closer.add(MapKind::Res, OrbitMap::identity(c), Matrix::identity(n))?;
            closer.add(MapKind::Tr, OrbitMap::identity(c), Matrix::identity(n))?;
        }
        for (kind, m, mat) in entries {
            let (r, c) = closer.shape(kind, m);
            if (mat.rows(), mat.cols()) != (r, c) {
                return Err(Error::Dimension(format!(
                    "{kind:?} along {m:?} should be {r}x{c}, got {}x{}",
                    mat.rows(),
                    mat.cols()
                )));
            }
            closer.add(kind, m, mat)?;
        }
        closer.run()?;
        let Closer { res, tr, .. } = closer;
        for m in all_orbit_maps(g) {
            if !res.contains_key(&m) || !tr.contains_key(&m) {
                return Err(Error::Invalid(format!(
                    "structure maps along G/{} -> G/{} (element {}) are not determined by the data",
                    g.class_label(m.from),
                    g.class_label(m.to),
                    m.elem
                )));
            }
        }
        Ok(MackeyFunctor(Arc::new(Inner {
            group: g.clone(),
            levels,
            res,
            tr,
        })))
    }

    /// Complete data for every orbit map, trusted.
    pub(crate) fn from_complete(
        group: &GroupRef,
        levels: Vec<FinPresAbGroup>,
        res: HashMap<OrbitMap, Matrix>,
        tr: HashMap<OrbitMap, Matrix>,
    ) -> MackeyFunctor {
        let res = res
            .into_iter()
            .map(|(m, x)| (m, levels[m.from].normalize_matrix(&x)))
            .collect();
        let tr = tr
            .into_iter()
            .map(|(m, x)| (m, levels[m.to].normalize_matrix(&x)))
            .collect();
        MackeyFunctor(Arc::new(Inner {
            group: group.clone(),
            levels,
            res,
            tr,
        }))
    }

    pub fn zero(group: &GroupRef) -> MackeyFunctor {
        let levels = vec![FinPresAbGroup::zero(); group.class_count()];
        let maps: HashMap<OrbitMap, Matrix> = all_orbit_maps(group)
            .into_iter()
            .map(|m| (m, Matrix::zeros(0, 0)))
            .collect();
        MackeyFunctor::from_complete(group, levels, maps.clone(), maps)
    }

    pub fn group(&self) -> &GroupRef {
        &self.0.group
    }

    pub fn level(&self, class: usize) -> &FinPresAbGroup {
        &self.0.levels[class]
    }

    pub fn levels(&self) -> &[FinPresAbGroup] {
        &self.0.levels
    }

    pub fn rank(&self, class: usize) -> usize {
        self.0.levels[class].generator_count()
    }

    pub fn res(&self, m: OrbitMap) -> &Matrix {
        &self.0.res[&m]
    }

    pub fn tr(&self, m: OrbitMap) -> &Matrix {
        &self.0.tr[&m]
    }

    pub fn map(&self, kind: MapKind, m: OrbitMap) -> &Matrix {
        match kind {
            MapKind::Res => self.res(m),
            MapKind::Tr => self.tr(m),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.levels.iter().all(|l| l.is_zero_group())
    }

    /// Level invariant factors in class order.
    pub fn invariant_factors(&self) -> Vec<Vec<Int>> {
        self.0
            .levels
            .iter()
            .map(|l| l.invariant_factors())
            .collect()
    }

    /// `tr_{pi(L,B,b)} res_{pi(L,A,a)}` for a transitive span `G/A <- G/L -> G/B`.
    pub fn eval_code(&self, from: usize, to: usize, code: SpanCode) -> Matrix {
        let g = &self.0.group;
        let a = g.cosets(from).reps[code.x];
        let b = g.cosets(to).reps[code.y];
        let left = OrbitMap::normalized(g, code.class, from, a);
        let right = OrbitMap::normalized(g, code.class, to, b);
        self.0.levels[to].normalize_matrix(&(self.tr(right) * self.res(left)))
    }

    /// `M(X)`: the direct sum of the levels of the orbits of `X`, in orbit order.
    pub fn value(&self, x: &GSet) -> FinPresAbGroup {
        let mut orders = Vec::new();
        for o in x.orbits() {
            orders.extend(self.0.levels[o.class].orders().iter().cloned());
        }
        FinPresAbGroup::diagonal(orders).expect("level orders are valid")
    }

    /// Offsets of each orbit's block in `M(X)`.
    pub fn offsets(&self, x: &GSet) -> Vec<usize> {
        let mut off = Vec::with_capacity(x.orbits().len() + 1);
        let mut acc = 0;
        for o in x.orbits() {
            off.push(acc);
            acc += self.rank(o.class);
        }
        off.push(acc);
        off
    }

    /// The matrix `M(X) -> M(Y)` of a Burnside element.
    pub fn eval_span(&self, e: &BurnsideElement) -> Result<Matrix> {
        let (x, y) = (e.source(), e.target());
        if x.group() != &self.0.group {
            return Err(Error::GroupMismatch(
                "span and functor use different groups".into(),
            ));
        }
        let g = &self.0.group;
        let (ox, oy) = (self.offsets(x), self.offsets(y));
        let mut out = Matrix::zeros(*oy.last().unwrap(), *ox.last().unwrap());
        for (code, k) in e.terms() {
            let (i, kx) = x.locate(code.x);
            let (j, ky) = y.locate(code.y);
            let (ca, cb) = (x.orbits()[i].class, y.orbits()[j].class);
            let left = OrbitMap::normalized(g, code.class, ca, g.cosets(ca).reps[kx]);
            let right = OrbitMap::normalized(g, code.class, cb, g.cosets(cb).reps[ky]);
            let block = (self.tr(right) * self.res(left)).scale(k);
            out.add_block(oy[j], ox[i], &block);
        }
        Ok(self.value(y).normalize_matrix(&out))
    }

    /// `M(f)` for the covariant span of a G-map.
    pub fn transfer_along(&self, f: &GMap) -> Result<Matrix> {
        self.eval_span(&BurnsideElement::from_map(f))
    }

    /// `M(f)` for the contravariant span of a G-map.
    pub fn restrict_along(&self, f: &GMap) -> Result<Matrix> {
        self.eval_span(&BurnsideElement::from_map_op(f))
    }

    /// The G-action on `M(G/e)`: `g . m = res_{pi(e,e,g)}(m)`.
    pub fn action_at_free_orbit(&self, g: Elem) -> &Matrix {
        self.res(OrbitMap::normalized(&self.0.group, 0, 0, g))
    }

    /// Checks that every structure matrix is a homomorphism and that
    /// `eval(s2 . s1) = eval(s2) eval(s1)` for every pair of transitive spans
    /// between orbits.
    pub fn validate(&self) -> Result<()> {
        let g = &self.0.group;
        for (m, x) in &self.0.res {
            if !self.0.levels[m.from].accepts_map_from(&self.0.levels[m.to], x) {
                return Err(Error::Invalid(format!(
                    "restriction along {m:?} is not a homomorphism"
                )));
            }
        }
        for (m, x) in &self.0.tr {
            if !self.0.levels[m.to].accepts_map_from(&self.0.levels[m.from], x) {
                return Err(Error::Invalid(format!(
                    "transfer along {m:?} is not a homomorphism"
                )));
            }
        }
        let k = g.class_count();
        let orbits: Vec<GSet> = (0..k).map(|c| GSet::orbit(g, c)).collect();
        let mut bases: Vec<Vec<Vec<SpanCode>>> = Vec::with_capacity(k);
        let mut evals: Vec<Vec<Vec<Matrix>>> = Vec::with_capacity(k);
        let mut index: Vec<Vec<HashMap<SpanCode, usize>>> = Vec::with_capacity(k);
        for a in 0..k {
            let mut brow = Vec::with_capacity(k);
            let mut erow = Vec::with_capacity(k);
            let mut irow = Vec::with_capacity(k);
            for b in 0..k {
                let basis = hom_basis(&orbits[a], &orbits[b])?;
                erow.push(basis.iter().map(|c| self.eval_code(a, b, *c)).collect());
                irow.push(basis.iter().enumerate().map(|(i, c)| (*c, i)).collect());
                brow.push(basis);
            }
            bases.push(brow);
            evals.push(erow);
            index.push(irow);
        }
        for a in 0..k {
            for b in 0..k {
                for c in 0..k {
                    for (i1, s1) in bases[a][b].iter().enumerate() {
                        for (i2, s2) in bases[b][c].iter().enumerate() {
                            let lhs = &evals[b][c][i2] * &evals[a][b][i1];
                            let mut rhs = Matrix::zeros(self.rank(c), self.rank(a));
                            for s in compose_codes(&orbits[a], &orbits[b], &orbits[c], *s1, *s2) {
                                rhs = rhs.add(&evals[a][c][index[a][c][&s]]);
                            }
                            if !self.0.levels[c].maps_equal(&lhs, &rhs) {
                                return Err(Error::Functoriality(format!(
                                    "spans {} then {} over G/{} -> G/{} -> G/{}",
                                    describe_code(g, s1),
                                    describe_code(g, s2),
                                    g.class_label(a),
                                    g.class_label(b),
                                    g.class_label(c)
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

fn describe_code(g: &GroupRef, c: &SpanCode) -> String {
    format!("[G/{} -> ({}, {})]", g.class_label(c.class), c.x, c.y)
}

struct Closer<'a> {
    g: &'a GroupRef,
    levels: &'a [FinPresAbGroup],
    res: HashMap<OrbitMap, Matrix>,
    tr: HashMap<OrbitMap, Matrix>,
    queue: VecDeque<(MapKind, OrbitMap)>,
}

impl Closer<'_> {
    fn shape(&self, kind: MapKind, m: OrbitMap) -> (usize, usize) {
        let (a, b) = (
            self.levels[m.from].generator_count(),
            self.levels[m.to].generator_count(),
        );
        match kind {
            MapKind::Res => (a, b),
            MapKind::Tr => (b, a),
        }
    }

    fn add(&mut self, kind: MapKind, m: OrbitMap, mat: Matrix) -> Result<()> {
        let target = match kind {
            MapKind::Res => &self.levels[m.from],
            MapKind::Tr => &self.levels[m.to],
        };
        let mat = target.normalize_matrix(&mat);
        let store = match kind {
            MapKind::Res => &mut self.res,
            MapKind::Tr => &mut self.tr,
        };
        if let Some(old) = store.get(&m) {
            if !target.maps_equal(old, &mat) {
                return Err(Error::Functoriality(format!(
                    "two different {} along G/{} -> G/{} (element {})",
                    if kind == MapKind::Res {
                        "restrictions"
                    } else {
                        "transfers"
                    },
                    self.g.class_label(m.from),
                    self.g.class_label(m.to),
                    m.elem
                )));
            }
            return Ok(());
        }
        store.insert(m, mat.clone());
        self.queue.push_back((kind, m));
        if m.is_iso() {
            let other = match kind {
                MapKind::Res => MapKind::Tr,
                MapKind::Tr => MapKind::Res,
            };
            self.add(other, m.inverse(self.g), mat)?;
        }
        Ok(())
    }

    fn run(&mut self) -> Result<()> {
        while let Some((kind, m)) = self.queue.pop_front() {
            let known: Vec<OrbitMap> = match kind {
                MapKind::Res => self.res.keys().copied().collect(),
                MapKind::Tr => self.tr.keys().copied().collect(),
            };
            for n in known {
                for (first, second) in [(m, n), (n, m)] {
                    if first.to != second.from {
                        continue;
                    }
                    let comp = OrbitMap::then(self.g, first, second);
                    let mat = match kind {
                        MapKind::Tr => &self.tr[&second] * &self.tr[&first],
                        MapKind::Res => &self.res[&first] * &self.res[&second],
                    };
                    self.add(kind, comp, mat)?;
                }
            }
        }
        Ok(())
    }
}
