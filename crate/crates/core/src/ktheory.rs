//! K_0 of finite G-sets over a base, as a Green functor, and its comparison
//! with the Burnside Green functor.
//!
//! Transitive G-sets over `X` are enumerated directly: one per orbit of
//! `N_G(H)` on the fixed points `X^H`, for each subgroup class `H`. Nothing
//! here goes through span codes except the final comparison.

use std::collections::BTreeMap;

use crate::abgroup::FinPresAbGroup;
use crate::burnside::{hom_basis, BurnsideElement};
use crate::convolution::{burnside_green, green_from_levelwise, GreenFunctor, MultTable};
use crate::error::{Error, Result};
use crate::gset::{pullback, GMap, GSet};
use crate::int::Int;
use crate::mackey::{generating_orbit_maps, MackeyFunctor, MackeyMorphism, MapKind};
use crate::matrix::Matrix;

/// A transitive G-set over `X`: `G/H_class -> X`, `gH -> g . point`,
/// with `point` the least element of its `N(H)`-orbit in `X^H`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SliceClass {
    pub class: usize,
    pub point: usize,
}

/// The free abelian group on transitive G-sets over `X`.
#[derive(Clone, Debug)]
pub struct SliceK0 {
    pub base: GSet,
    pub basis: Vec<SliceClass>,
    index: BTreeMap<SliceClass, usize>,
}

impl SliceK0 {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn group(&self) -> FinPresAbGroup {
        FinPresAbGroup::free(self.rank())
    }

    /// The class of `G/H_class -> X` sending `eH` to `y` (`y` fixed by `H`).
    pub fn classify(&self, class: usize, y: usize) -> SliceClass {
        let g = self.base.group();
        let n = g.class(class).normalizer;
        let point = n
            .iter()
            .map(|t| self.base.act(t, y))
            .min()
            .expect("normalizer is nonempty");
        SliceClass { class, point }
    }

    /// Coordinates of an arbitrary G-set over `X`.
    pub fn decompose(&self, f: &GMap) -> Result<Vec<Int>> {
        if f.target != self.base {
            return Err(Error::FootMismatch("G-set is not over the base".into()));
        }
        let mut v = vec![Int::ZERO; self.rank()];
        for o in f.source.orbits() {
            let c = self.classify(o.class, f.map[o.base]);
            v[self.index[&c]] += Int::ONE;
        }
        Ok(v)
    }

    /// `G/H -> X` for a basis element.
    pub fn realize(&self, c: SliceClass) -> GMap {
        let g = self.base.group();
        let orbit = GSet::orbit(g, c.class);
        let map = g
            .cosets(c.class)
            .reps
            .iter()
            .map(|&r| self.base.act(r, c.point))
            .collect();
        GMap::new(orbit, self.base.clone(), map).expect("equivariant by construction")
    }
}

pub fn k0_of_slice(x: &GSet) -> SliceK0 {
    let g = x.group().clone();
    let mut basis = Vec::new();
    for class in 0..g.class_count() {
        let h = g.rep(class);
        let n = g.class(class).normalizer;
        let fixed = x.fixed_points(h);
        for &y in &fixed {
            if n.iter().all(|t| x.act(t, y) >= y) {
                basis.push(SliceClass { class, point: y });
            }
        }
    }
    let index = basis.iter().enumerate().map(|(i, c)| (*c, i)).collect();
    SliceK0 {
        base: x.clone(),
        basis,
        index,
    }
}

fn slices(g: &crate::group::GroupRef) -> Vec<SliceK0> {
    (0..g.class_count())
        .map(|c| k0_of_slice(&GSet::orbit(g, c)))
        .collect()
}

/// Transfers by postcomposition, restrictions by pullback.
pub fn k0_mackey(g: &crate::group::GroupRef) -> Result<MackeyFunctor> {
    let s = slices(g);
    let mut entries = Vec::new();
    for om in generating_orbit_maps(g) {
        let f = om.to_gmap(g);
        let (a, b) = (&s[om.from], &s[om.to]);
        let tr = a
            .basis
            .iter()
            .map(|&c| b.decompose(&f.after(&a.realize(c))?))
            .collect::<Result<Vec<_>>>()?;
        let res = b
            .basis
            .iter()
            .map(|&c| {
                let p = pullback(&b.realize(c), &f)?;
                a.decompose(&p.right)
            })
            .collect::<Result<Vec<_>>>()?;
        entries.push((MapKind::Tr, om, Matrix::from_columns(&tr, b.rank())));
        entries.push((MapKind::Res, om, Matrix::from_columns(&res, a.rank())));
    }
    let levels = s.iter().map(SliceK0::group).collect();
    let m = MackeyFunctor::close(g, levels, entries)?;
    m.validate()?;
    Ok(m)
}

/// Products by fibre product over the base; unit the identity of the base.
pub fn k0_green(g: &crate::group::GroupRef) -> Result<GreenFunctor> {
    let m = k0_mackey(g)?;
    let s = slices(g);
    let mut tables = Vec::new();
    let mut units = Vec::new();
    for sl in &s {
        let realized: Vec<GMap> = sl.basis.iter().map(|&c| sl.realize(c)).collect();
        let mut table: MultTable = Vec::with_capacity(sl.rank());
        for u in &realized {
            let mut row = Vec::with_capacity(sl.rank());
            for v in &realized {
                let p = pullback(u, v)?;
                row.push(sl.decompose(&u.after(&p.left)?)?);
            }
            table.push(row);
        }
        tables.push(table);
        units.push(sl.decompose(&GMap::identity(&sl.base))?);
    }
    green_from_levelwise(&m, tables, units)
}

/// An explicit Green isomorphism from K_0 to the Burnside Green functor.
#[derive(Clone, Debug)]
pub struct BpqWitness {
    pub k0: GreenFunctor,
    pub burnside: GreenFunctor,
    pub iso: MackeyMorphism,
}

/// Builds both Green functors and checks that sending `U -> G/H` to the span
/// `pt <- U -> G/H` is an isomorphism of Mackey functors preserving products
/// and units.
pub fn bpq_verify(g: &crate::group::GroupRef) -> Result<BpqWitness> {
    let k0 = k0_green(g)?;
    let burnside = burnside_green(g)?;
    let pt = GSet::point(g);
    let s = slices(g);
    let mut maps = Vec::with_capacity(s.len());
    for (c, sl) in s.iter().enumerate() {
        let basis = hom_basis(&pt, &sl.base)?;
        let cols = sl
            .basis
            .iter()
            .map(|&b| {
                let u = sl.realize(b);
                BurnsideElement::from_span(&GMap::to_point(&u.source), &u)?.to_vector(&basis)
            })
            .collect::<Result<Vec<_>>>()?;
        let m = Matrix::from_columns(&cols, basis.len());
        let permutation = m.rows() == m.cols()
            && (0..m.cols()).all(|j| {
                let col = m.column(j);
                col.iter().filter(|x| x.is_one()).count() == 1
                    && col.iter().all(|x| x.is_zero() || x.is_one())
            });
        if !permutation {
            return Err(Error::axiom(
                "bpq basis matching",
                format!("level {}", g.class_label(c)),
            ));
        }
        maps.push(m);
    }
    let iso = MackeyMorphism::new(k0.functor(), burnside.functor(), maps)
        .map_err(|e| Error::axiom("bpq naturality", e.to_string()))?;
    if !iso.is_iso() {
        return Err(Error::axiom(
            "bpq invertibility",
            "level map is not invertible",
        ));
    }
    for c in 0..s.len() {
        let phi = iso.level(c);
        let r = k0.functor().rank(c);
        if phi.mul_vec(k0.unit(c)) != burnside.unit(c) {
            return Err(Error::axiom(
                "bpq unit",
                format!("level {}", g.class_label(c)),
            ));
        }
        for i in 0..r {
            for j in 0..r {
                let (x, y) = (phi.column(i), phi.column(j));
                let lhs = phi.mul_vec(&k0.table(c)[i][j]);
                if lhs != burnside.mul(c, &x, &y) {
                    return Err(Error::axiom(
                        "bpq multiplication",
                        format!("level {}, basis pair ({i}, {j})", g.class_label(c)),
                    ));
                }
            }
        }
    }
    Ok(BpqWitness { k0, burnside, iso })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::burnside::burnside_ring;
    use crate::group::FiniteGroup;

    #[test]
    fn slice_ranks() {
        let t = FiniteGroup::named("trivial").unwrap();
        assert_eq!(k0_of_slice(&GSet::point(&t)).rank(), 1);
        let c2 = FiniteGroup::named("C2").unwrap();
        assert_eq!(k0_of_slice(&GSet::point(&c2)).rank(), 2);
        assert_eq!(k0_of_slice(&GSet::orbit(&c2, 0)).rank(), 1);
    }

    #[test]
    fn k0_of_c2() {
        let g = FiniteGroup::named("C2").unwrap();
        let m = k0_mackey(&g).unwrap();
        assert_eq!((m.rank(0), m.rank(1)), (1, 2));
        let up = crate::mackey::OrbitMap::new(&g, 0, 1, 0).unwrap();
        let top = k0_of_slice(&GSet::point(&g));
        let free = top.basis.iter().position(|c| c.class == 0).unwrap();
        let fixed = top.basis.iter().position(|c| c.class == 1).unwrap();
        assert_eq!(m.tr(up).column(0), unit(2, free));
        assert_eq!(m.res(up)[(0, fixed)], Int::ONE);
        assert_eq!(m.res(up)[(0, free)], Int::from(2));
        // The top-level ring is the Burnside ring.
        let r = k0_green(&g).unwrap();
        let ring = burnside_ring(&g);
        for (i, a) in top.basis.iter().enumerate() {
            for (j, b) in top.basis.iter().enumerate() {
                for (k, c) in top.basis.iter().enumerate() {
                    assert_eq!(
                        r.table(1)[i][j][k],
                        Int::from(ring.table[a.class][b.class][c.class])
                    );
                }
            }
        }
    }

    fn unit(n: usize, i: usize) -> Vec<Int> {
        (0..n)
            .map(|j| if j == i { Int::ONE } else { Int::ZERO })
            .collect()
    }

    #[test]
    fn bpq_on_small_groups() {
        for name in ["trivial", "C2", "C3", "S3"] {
            let g = FiniteGroup::named(name).unwrap();
            let w = bpq_verify(&g).unwrap();
            if name == "trivial" {
                assert_eq!(w.iso.level(0), &Matrix::identity(1));
            }
        }
    }
}
