use std::collections::HashMap;

use crate::abgroup::{FinPresAbGroup, Subquotient};
use crate::burnside::{compose, hom_basis, BurnsideElement, SpanCode};
use crate::error::{Error, Result};
use crate::group::{Elem, ElemSet, GroupRef};
use crate::gset::GSet;
use crate::int::Int;
use crate::linalg::Lattice;
use crate::matrix::Matrix;

use super::morphism::{induced_functor, MackeyMorphism};
use super::{all_orbit_maps, generating_orbit_maps, MackeyFunctor, MapKind};

/// The representable functor `A_X = A(X, -)` with its level bases.
#[derive(Clone, Debug)]
pub struct RepresentableInfo {
    pub functor: MackeyFunctor,
    pub gset: GSet,
    /// `bases[c]` is `hom_basis(X, G/H_c)`.
    pub bases: Vec<Vec<SpanCode>>,
}

impl RepresentableInfo {
    /// Coordinates of a Burnside element `X -> G/H_c` in level `c`.
    pub fn coordinates(&self, class: usize, e: &BurnsideElement) -> Result<Vec<Int>> {
        e.to_vector(&self.bases[class])
    }

    /// Level `c` coordinates of the span `X <- O_i = O_i ~ G/H_c` projecting onto
    /// the `i`-th orbit of `X` (the `i`-th block of the identity of `X`).
    pub fn orbit_projection(&self, orbit: usize) -> (usize, usize) {
        let g = self.functor.group();
        let o = &self.gset.orbits()[orbit];
        let target = GSet::orbit(g, o.class);
        let code = crate::burnside::canonical_code(&self.gset, &target, g.rep(o.class), o.base, 0);
        let idx = self.bases[o.class]
            .iter()
            .position(|c| *c == code)
            .expect("orbit projection is a basis span");
        (o.class, idx)
    }
}

/// `A_X`: level `G/H` is free on `hom_basis(X, G/H)`, structure maps by
/// postcomposition.
pub fn representable(x: &GSet) -> Result<RepresentableInfo> {
    let g = x.group().clone();
    let k = g.class_count();
    let orbits: Vec<GSet> = (0..k).map(|c| GSet::orbit(&g, c)).collect();
    let bases: Vec<Vec<SpanCode>> = orbits
        .iter()
        .map(|o| hom_basis(x, o))
        .collect::<Result<_>>()?;
    let levels = bases
        .iter()
        .map(|b| FinPresAbGroup::free(b.len()))
        .collect::<Vec<_>>();
    let mut entries = Vec::new();
    for om in generating_orbit_maps(&g) {
        let f = om.to_gmap(&g);
        for (kind, span) in [
            (MapKind::Tr, BurnsideElement::from_map(&f)),
            (MapKind::Res, BurnsideElement::from_map_op(&f)),
        ] {
            let (a, b) = match kind {
                MapKind::Tr => (om.from, om.to),
                MapKind::Res => (om.to, om.from),
            };
            let mut cols = Vec::with_capacity(bases[a].len());
            for code in &bases[a] {
                let e = BurnsideElement::basis_element(x, &orbits[a], *code);
                cols.push(compose(&span, &e)?.to_vector(&bases[b])?);
            }
            entries.push((kind, om, Matrix::from_columns(&cols, bases[b].len())));
        }
    }
    let functor = MackeyFunctor::close(&g, levels, entries)?;
    Ok(RepresentableInfo {
        functor,
        gset: x.clone(),
        bases,
    })
}

/// The Burnside functor `A_pt`.
pub fn burnside_functor(g: &GroupRef) -> MackeyFunctor {
    representable(&GSet::point(g))
        .expect("point is a G-set")
        .functor
}

/// A finitely generated abelian group (diagonal presentation) with a
/// G-action given by one matrix per group element.
#[derive(Clone, Debug)]
pub struct Representation {
    group: GroupRef,
    module: FinPresAbGroup,
    action: Vec<Matrix>,
}

impl Representation {
    pub fn new(
        group: &GroupRef,
        module: FinPresAbGroup,
        action: Vec<Matrix>,
    ) -> Result<Representation> {
        if !module.is_diagonal() {
            return Err(Error::Invalid(
                "representation module must be diagonal".into(),
            ));
        }
        let n = module.generator_count();
        if action.len() != group.order() {
            return Err(Error::Dimension(format!(
                "{} action matrices for a group of order {}",
                action.len(),
                group.order()
            )));
        }
        let mut norm = Vec::with_capacity(action.len());
        for (g, a) in action.iter().enumerate() {
            if (a.rows(), a.cols()) != (n, n) {
                return Err(Error::Dimension(format!(
                    "action matrix of element {g} is not {n}x{n}"
                )));
            }
            if !module.accepts_map_from(&module, a) {
                return Err(Error::Invalid(format!(
                    "element {g} does not act by a homomorphism"
                )));
            }
            norm.push(module.normalize_matrix(a));
        }
        if !module.maps_equal(&norm[0], &Matrix::identity(n)) {
            return Err(Error::Invalid(
                "identity element does not act trivially".into(),
            ));
        }
        for a in group.elements() {
            for b in group.elements() {
                let ab = &norm[a] * &norm[b];
                if !module.maps_equal(&ab, &norm[group.mul(a, b)]) {
                    return Err(Error::Invalid(format!(
                        "action is not multiplicative at elements ({a}, {b})"
                    )));
                }
            }
        }
        Ok(Representation {
            group: group.clone(),
            module,
            action: norm,
        })
    }

    pub fn trivial(group: &GroupRef, module: FinPresAbGroup) -> Result<Representation> {
        let n = module.generator_count();
        Representation::new(group, module, vec![Matrix::identity(n); group.order()])
    }

    /// Permutation module `Z[X]` (or `(Z/m)[X]` when `modulus > 0`).
    pub fn permutation(x: &GSet, modulus: i64) -> Result<Representation> {
        let g = x.group();
        let n = x.size();
        let module = if modulus == 0 {
            FinPresAbGroup::free(n)
        } else {
            FinPresAbGroup::diagonal(vec![Int::from(modulus); n])?
        };
        let action = g
            .elements()
            .map(|e| {
                let mut m = Matrix::zeros(n, n);
                for p in 0..n {
                    m[(x.act(e, p), p)] = Int::ONE;
                }
                m
            })
            .collect();
        Representation::new(g, module, action)
    }

    /// `Z` (or `Z/m`) where `g` acts by the sign of a homomorphism `G -> {+-1}`
    /// given by its kernel, an index-2 subgroup.
    pub fn sign(group: &GroupRef, kernel: ElemSet, modulus: i64) -> Result<Representation> {
        if kernel.len() * 2 != group.order() || !group.is_subgroup(kernel) {
            return Err(Error::NotASubgroup(
                "sign kernel must be an index-2 subgroup".into(),
            ));
        }
        let module = if modulus == 0 {
            FinPresAbGroup::free(1)
        } else {
            FinPresAbGroup::diagonal(vec![Int::from(modulus)])?
        };
        let action = group
            .elements()
            .map(|e| Matrix::from_i64_rows(&[vec![if kernel.contains(e) { 1 } else { -1 }]], 1))
            .collect();
        Representation::new(group, module, action)
    }

    pub fn group(&self) -> &GroupRef {
        &self.group
    }

    pub fn module(&self) -> &FinPresAbGroup {
        &self.module
    }

    pub fn action(&self, g: Elem) -> &Matrix {
        &self.action[g]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.action
    }

    /// `V^H` as a subquotient of the ambient coordinates.
    pub fn invariants(&self, h: ElemSet) -> Subquotient {
        let n = self.module.generator_count();
        let rel = self.module.relation_lattice();
        let mut num = Lattice::full(n);
        for e in h.iter() {
            let d = self.action[e].sub(&Matrix::identity(n));
            num = num.intersection(&rel.preimage(&d));
        }
        Subquotient::new(num, rel).expect("relations are invariant")
    }

    /// Whether `f: M(G/e) -> V` commutes with the actions (`M(G/e)` acted on
    /// through restriction along the automorphisms of the free orbit).
    pub fn is_equivariant_from(&self, m: &MackeyFunctor, f: &Matrix) -> bool {
        self.group.elements().all(|e| {
            let lhs = f * m.action_at_free_orbit(e);
            let rhs = &self.action[e] * f;
            self.module.maps_equal(&lhs, &rhs)
        })
    }
}

/// The fixed-point functor of a representation: level `G/H` is `V^H`,
/// restriction along `xA -> xaB` is `w -> a.w`, transfer sums translates.
pub fn fixed_point_mackey(v: &Representation) -> Result<MackeyFunctor> {
    let g = v.group.clone();
    let module_functor = ambient_functor(&g, v);
    let subs: Vec<Subquotient> = (0..g.class_count())
        .map(|c| v.invariants(g.rep(c)))
        .collect();
    Ok(induced_functor(&module_functor, &subs))
}

/// Pseudo-functor on the ambient module (every level `V`); only its values on
/// the invariant sublattices are meaningful, which `induced_functor` extracts.
fn ambient_functor(g: &GroupRef, v: &Representation) -> MackeyFunctor {
    let k = g.class_count();
    let n = v.module.generator_count();
    let mut res = HashMap::new();
    let mut tr = HashMap::new();
    for om in all_orbit_maps(g) {
        res.insert(om, v.action[om.elem].clone());
        // x ranges over B a^{-1}; one term per coset xA.
        let from = g.rep(om.from);
        let b = g.rep(om.to);
        let ainv = g.inv(om.elem);
        let mut seen = ElemSet::EMPTY;
        let mut sum = Matrix::zeros(n, n);
        for y in b.iter() {
            let x = g.mul(y, ainv);
            if seen.contains(x) {
                continue;
            }
            for h in from.iter() {
                seen.insert(g.mul(x, h));
            }
            sum = sum.add(&v.action[x]);
        }
        tr.insert(om, sum);
    }
    let levels = vec![v.module.clone(); k];
    MackeyFunctor::from_complete(g, levels, res, tr)
}

/// `FP(V)(G/e) -> V`, an isomorphism of G-modules.
pub fn fixed_point_counit(v: &Representation) -> Matrix {
    v.invariants(ElemSet::singleton(0)).lift_matrix()
}

/// G-module maps `M(G/e) -> V`, with `M(G/e)` acted on through the free orbit.
#[derive(Clone, Debug)]
pub struct EquivariantMaps {
    quotient: Subquotient,
    shape: (usize, usize),
}

impl EquivariantMaps {
    pub fn group(&self) -> &FinPresAbGroup {
        self.quotient.group()
    }

    pub fn map(&self, coords: &[Int]) -> Matrix {
        let v = self.quotient.lift_matrix().mul_vec(coords);
        let (r, c) = self.shape;
        Matrix::from_rows((0..r).map(|i| v[i * c..(i + 1) * c].to_vec()).collect(), c)
    }

    pub fn coordinates(&self, f: &Matrix) -> Option<Vec<Int>> {
        let flat: Vec<Int> = (0..f.rows()).flat_map(|i| f.row(i).to_vec()).collect();
        self.quotient.project(&flat)
    }

    pub fn generators(&self) -> Vec<Matrix> {
        let n = self.group().generator_count();
        (0..n)
            .map(|i| {
                let mut e = vec![Int::ZERO; n];
                e[i] = Int::ONE;
                self.map(&e)
            })
            .collect()
    }
}

pub fn equivariant_maps(m: &MackeyFunctor, v: &Representation) -> Result<EquivariantMaps> {
    if m.group() != v.group() {
        return Err(Error::GroupMismatch(
            "functor and representation use different groups".into(),
        ));
    }
    let src = m.level(0);
    let shape = (v.module.generator_count(), src.generator_count());
    let mut sys = super::hom::BlockSystem::new(vec![shape]);
    sys.homomorphism(0, src, &v.module);
    for e in v.group.elements() {
        sys.commute(0, m.action_at_free_orbit(e), 0, &v.action[e], &v.module);
    }
    Ok(EquivariantMaps {
        quotient: sys.solve(&[&v.module])?,
        shape,
    })
}

/// The morphism `M -> FP(V)` adjoint to a G-module map `phi: M(G/e) -> V`:
/// at `G/H` it is `m -> phi(res^H_e m)`, landing in `V^H`.
pub fn borel_adjoint(
    m: &MackeyFunctor,
    v: &Representation,
    fp: &MackeyFunctor,
    phi: &Matrix,
) -> Result<MackeyMorphism> {
    let g = m.group();
    let mut maps = Vec::with_capacity(g.class_count());
    for c in 0..g.class_count() {
        let sub = v.invariants(g.rep(c));
        let down = phi
            * m.res(super::OrbitMap {
                from: 0,
                to: c,
                elem: 0,
            });
        let cols: Vec<Vec<Int>> = (0..down.cols())
            .map(|j| {
                sub.project(&down.column(j)).ok_or_else(|| {
                    Error::NotEquivariant("map does not land in fixed points".into())
                })
            })
            .collect::<Result<_>>()?;
        maps.push(Matrix::from_columns(&cols, sub.group().generator_count()));
    }
    MackeyMorphism::new(m, fp, maps)
}

/// `f -> f_e` followed by `FP(V)(G/e) ~ V`.
pub fn borel_restrict(f: &MackeyMorphism, v: &Representation) -> Matrix {
    v.module
        .normalize_matrix(&(&fixed_point_counit(v) * f.level(0)))
}
