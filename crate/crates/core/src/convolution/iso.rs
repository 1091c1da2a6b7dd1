//! Maps between box products and the standard isomorphisms.

use std::collections::HashMap;

use crate::abgroup::FinPresAbGroup;
use crate::burnside::{compose, hom_basis, realize, tensor, BurnsideElement, SpanCode};
use crate::error::{Error, Result};
use crate::gset::{product, pullback, GMap, GSet};
use crate::int::Int;
use crate::mackey::{
    burnside_functor, generating_orbit_maps, MackeyFunctor, MackeyMorphism, MapKind,
    RepresentableInfo,
};
use crate::matrix::Matrix;

use super::BoxProduct;

fn unit(n: usize, i: usize) -> Vec<Int> {
    let mut v = vec![Int::ZERO; n];
    v[i] = Int::ONE;
    v
}

fn check(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::FootMismatch(what.into()))
    }
}

/// `f box g: M box N -> M' box N'`.
pub fn box_map(
    f: &MackeyMorphism,
    g: &MackeyMorphism,
    source: &BoxProduct,
    target: &BoxProduct,
) -> Result<MackeyMorphism> {
    check(
        f.source() == source.left()
            && g.source() == source.right()
            && f.target() == target.left()
            && g.target() == target.right(),
        "box_map: morphisms do not match the box products",
    )?;
    source.descend(target.functor(), |j, k, l, code, i, jj| {
        Ok(target.pair_code(j, k, l, code, &f.level(k).column(i), &g.level(l).column(jj)))
    })
}

/// Relabels `pt x G/L` (or `G/L x pt`) as the orbit `G/L`.
fn orbit_as(o: &GSet, p: &GSet) -> GMap {
    GMap::new(o.clone(), p.clone(), (0..o.size()).collect()).expect("same labelling")
}

/// `A_pt box M -> M`, `[phi; a, m] -> M(phi . (a x id)) m`.
pub fn box_unit_iso(b: &BoxProduct) -> Result<MackeyMorphism> {
    let g = b.functor().group().clone();
    check(
        *b.left() == burnside_functor(&g),
        "box_unit_iso: left factor is not A_pt",
    )?;
    let o = b.orbits();
    let pt = GSet::point(&g);
    let m = b.right();
    let mut cache: HashMap<(usize, usize, usize, SpanCode, usize), Matrix> = HashMap::new();
    b.descend(m, |j, k, l, code, i, jj| {
        let key = (j, k, l, code, i);
        if !cache.contains_key(&key) {
            let a =
                BurnsideElement::basis_element(&pt, &o.orbit[k], hom_basis(&pt, &o.orbit[k])?[i]);
            let pl = product(&pt, &o.orbit[l])?;
            let lifted = tensor(&a, &BurnsideElement::identity(&o.orbit[l]))?;
            let phi = BurnsideElement::basis_element(&o.prod[k][l].set, &o.orbit[j], code);
            let s = compose(
                &compose(&phi, &lifted)?,
                &BurnsideElement::from_map(&orbit_as(&o.orbit[l], &pl.set)),
            )?;
            cache.insert(key, m.eval_span(&s)?);
        }
        Ok(cache[&key].column(jj))
    })
}

/// `M box N -> N box M`, `[phi; m, n] -> [phi . swap; n, m]`.
pub fn box_comm_iso(source: &BoxProduct, target: &BoxProduct) -> Result<MackeyMorphism> {
    check(
        source.left() == target.right() && source.right() == target.left(),
        "box_comm_iso: factors are not swapped",
    )?;
    let o = source.orbits();
    let mut cache: HashMap<(usize, usize, usize, SpanCode), BurnsideElement> = HashMap::new();
    source.descend(target.functor(), |j, k, l, code, i, jj| {
        let key = (j, k, l, code);
        if !cache.contains_key(&key) {
            let (pkl, plk) = (&o.prod[k][l], &o.prod[l][k]);
            let swap = GMap::new(
                plk.set.clone(),
                pkl.set.clone(),
                (0..plk.set.size())
                    .map(|p| {
                        let (y, x) = plk.split(p);
                        pkl.pair(x, y)
                    })
                    .collect(),
            )?;
            let phi = BurnsideElement::basis_element(&pkl.set, &o.orbit[j], code);
            cache.insert(key, compose(&phi, &BurnsideElement::from_map(&swap))?);
        }
        let (m, n) = (source.left(), source.right());
        target.pair_span(
            j,
            l,
            k,
            &cache[&key],
            &unit(n.rank(l), jj),
            &unit(m.rank(k), i),
        )
    })
}

/// `(M box N) box P -> M box (N box P)`.
///
/// `mn` and `np` are the inner products used to build `source` and `target`.
pub fn box_assoc_iso(
    mn: &BoxProduct,
    np: &BoxProduct,
    source: &BoxProduct,
    target: &BoxProduct,
) -> Result<MackeyMorphism> {
    check(
        source.left() == mn.functor()
            && target.right() == np.functor()
            && source.right() == np.right()
            && target.left() == mn.left()
            && mn.right() == np.left(),
        "box_assoc_iso: inner products do not match",
    )?;
    let o = source.orbits();
    let g = o.group.clone();
    let (m, n, p) = (mn.left(), mn.right(), np.right());
    // Value of a ternary span code at basis vectors, as a vector of the target.
    let ternary = |j: usize,
                   k1: usize,
                   l1: usize,
                   l: usize,
                   chi: &BurnsideElement,
                   a: usize,
                   b: usize,
                   c: usize|
     -> Result<Vec<Int>> {
        let outer = product(&o.prod[k1][l1].set, &o.orbit[l])?;
        let mut acc = vec![Int::ZERO; target.functor().rank(j)];
        for (code, coef) in chi.terms() {
            let (x12, z) = outer.split(code.x);
            let (x1, y1) = o.prod[k1][l1].split(x12);
            let cl = code.class;
            let leg = |to: usize, pt: usize| {
                crate::mackey::OrbitMap::new(&g, cl, to, g.cosets(to).reps[pt])
            };
            let (la, lb, ld, lc) = (leg(k1, x1)?, leg(l1, y1)?, leg(l, z)?, leg(j, code.y)?);
            let mv = m.res(la).column(a);
            let nv = n.res(lb).column(b);
            let pv = p.res(ld).column(c);
            let inner = np.diagonal_pair(cl, &nv, &pv);
            let at_c = target.diagonal_pair(cl, &mv, &inner);
            let moved = target.functor().tr(lc).mul_vec(&at_c);
            for (x, y) in acc.iter_mut().zip(moved) {
                *x += coef * &y;
            }
        }
        Ok(target.functor().level(j).normalize(&acc))
    };
    let mut chis: HashMap<(usize, usize, usize, usize, SpanCode, SpanCode), BurnsideElement> =
        HashMap::new();
    source.descend(target.functor(), |j, k, l, code, i, jj| {
        let combo = &mn.0.levels[k].reduced.from_canon[i];
        let mut acc = vec![Int::ZERO; target.functor().rank(j)];
        for (gi, c) in combo {
            let (k1, l1, q, a, b) = super::decode(&mn.0.levels[k], m, n, *gi);
            let psi_code = mn.0.levels[k].bases[k1][l1][q];
            let key = (j, k, l, k1, code, psi_code);
            if !chis.contains_key(&key) {
                let psi =
                    BurnsideElement::basis_element(&o.prod[k1][l1].set, &o.orbit[k], psi_code);
                let phi = BurnsideElement::basis_element(&o.prod[k][l].set, &o.orbit[j], code);
                let chi = compose(
                    &phi,
                    &tensor(&psi, &BurnsideElement::identity(&o.orbit[l]))?,
                )?;
                chis.insert(key, chi);
            }
            let v = ternary(j, k1, l1, l, &chis[&key], a, b, jj)?;
            for (x, y) in acc.iter_mut().zip(v) {
                *x += c * &y;
            }
        }
        Ok(target.functor().level(j).normalize(&acc))
    })
}

/// `F(A_X, M)`: the functor `G/H -> M(X x G/H)`.
pub fn internal_hom_rep(x: &GSet, m: &MackeyFunctor) -> Result<MackeyFunctor> {
    let g = m.group().clone();
    check(x.group() == &g, "internal_hom_rep: group mismatch")?;
    let k = g.class_count();
    let prods: Vec<_> = (0..k)
        .map(|c| product(x, &GSet::orbit(&g, c)))
        .collect::<Result<_>>()?;
    let levels: Vec<FinPresAbGroup> = prods.iter().map(|p| m.value(&p.set)).collect();
    let mut entries = Vec::new();
    for om in generating_orbit_maps(&g) {
        let f = om.to_gmap(&g);
        let (pa, pb) = (&prods[om.from], &prods[om.to]);
        let lifted = GMap::new(
            pa.set.clone(),
            pb.set.clone(),
            (0..pa.set.size())
                .map(|q| {
                    let (u, v) = pa.split(q);
                    pb.pair(u, f.apply(v))
                })
                .collect(),
        )?;
        entries.push((
            MapKind::Tr,
            om,
            m.eval_span(&BurnsideElement::from_map(&lifted))?,
        ));
        entries.push((
            MapKind::Res,
            om,
            m.eval_span(&BurnsideElement::from_map_op(&lifted))?,
        ));
    }
    MackeyFunctor::close(&g, levels, entries)
}

/// `M box A_X -> F(A_X, M)`: `[phi; m, s]` goes to `M(Psi) m` for the span
/// `G/K <- P -> X x G/J` with `P` the pullback of the middles of `phi` and `s`.
pub fn box_free_eval_iso(
    b: &BoxProduct,
    rep: &RepresentableInfo,
    target: &MackeyFunctor,
) -> Result<MackeyMorphism> {
    check(
        b.right() == &rep.functor,
        "box_free_eval_iso: right factor is not A_X",
    )?;
    let o = b.orbits();
    let g = o.group.clone();
    let x = &rep.gset;
    let m = b.left();
    let mut cache: HashMap<(usize, usize, usize, SpanCode, usize), Matrix> = HashMap::new();
    b.descend(target, |j, k, l, code, i, jj| {
        let key = (j, k, l, code, jj);
        if !cache.contains_key(&key) {
            let (la, lb, lc) = o.legs(k, l, j, code);
            let (ga, gb, gc) = (la.to_gmap(&g), lb.to_gmap(&g), lc.to_gmap(&g));
            let (_, s_left, s_right) = realize(x, &o.orbit[l], rep.bases[l][jj]);
            let pb = pullback(&gb, &s_right)?;
            let xj = product(x, &o.orbit[j])?;
            let left = ga.after(&pb.left)?;
            let right = GMap::new(
                pb.set.clone(),
                xj.set.clone(),
                pb.pairs
                    .iter()
                    .map(|&(c, w)| xj.pair(s_left.apply(w), gc.apply(c)))
                    .collect(),
            )?;
            cache.insert(
                key,
                m.eval_span(&BurnsideElement::from_span(&left, &right)?)?,
            );
        }
        Ok(cache[&key].column(i))
    })
}

/// `A_X box A_Y -> A_{X x Y}`, `[phi; s, t] -> phi . (s x t)`.
pub fn representable_monoidal_iso(
    b: &BoxProduct,
    rx: &RepresentableInfo,
    ry: &RepresentableInfo,
    rxy: &RepresentableInfo,
) -> Result<MackeyMorphism> {
    check(
        b.left() == &rx.functor
            && b.right() == &ry.functor
            && product(&rx.gset, &ry.gset)?.set == rxy.gset,
        "representable_monoidal_iso: factors do not match",
    )?;
    let o = b.orbits();
    b.descend(&rxy.functor, |j, k, l, code, i, jj| {
        let s = BurnsideElement::basis_element(&rx.gset, &o.orbit[k], rx.bases[k][i]);
        let t = BurnsideElement::basis_element(&ry.gset, &o.orbit[l], ry.bases[l][jj]);
        let phi = BurnsideElement::basis_element(&o.prod[k][l].set, &o.orbit[j], code);
        rxy.coordinates(j, &compose(&phi, &tensor(&s, &t)?)?)
    })
}

/// `M(G/e) (x) N(G/e) -> (M box N)(G/e)` with its checks.
#[derive(Clone, Debug)]
pub struct FreeOrbitTensor {
    /// The tensor product in canonical form.
    pub tensor: FinPresAbGroup,
    /// Canonical tensor coordinates to `(M box N)(G/e)` coordinates.
    pub map: Matrix,
    pub bijective: bool,
    /// Commutes with the diagonal action of every group element.
    pub equivariant: bool,
}

/// `m (x) n -> [Delta; m, n]` at the free orbit.
pub fn free_orbit_tensor_iso(b: &BoxProduct) -> FreeOrbitTensor {
    let g = b.functor().group().clone();
    let e = g.trivial_class();
    let (m, n) = (b.left(), b.right());
    let (me, ne) = (m.level(e), n.level(e));
    let raw = me.tensor(ne);
    let can = raw.canonical();
    let (rm, rn) = (me.generator_count(), ne.generator_count());
    let raw_cols: Vec<Vec<Int>> = (0..rm * rn)
        .map(|t| b.diagonal_pair(e, &unit(rm, t / rn.max(1)), &unit(rn, t % rn.max(1))))
        .collect();
    let target = b.functor().level(e);
    let raw_map = Matrix::from_columns(&raw_cols, target.generator_count());
    let map = target.normalize_matrix(&(&raw_map * &can.from_canon));
    let bijective = target.is_surjective_map(&map) && target.is_injective_map(&can.group, &map);
    let mut equivariant = true;
    for x in g.elements() {
        let act = crate::mackey::OrbitMap::new(&g, e, e, x).expect("free orbit automorphism");
        let (am, an) = (m.res(act), n.res(act));
        // Diagonal action on raw tensor generators, then to canonical coordinates.
        let cols: Vec<Vec<Int>> = (0..can.group.generator_count())
            .map(|c| {
                let v = can.from_canon.column(c);
                let mut w = vec![Int::ZERO; rm * rn];
                for (t, coef) in v.iter().enumerate() {
                    if coef.is_zero() {
                        continue;
                    }
                    let (a, bb) = (am.column(t / rn), an.column(t % rn));
                    for (p, ca) in a.iter().enumerate() {
                        for (q, cb) in bb.iter().enumerate() {
                            w[p * rn + q] += &(coef * ca) * cb;
                        }
                    }
                }
                can.to_canonical(&w)
            })
            .collect();
        let act_t = Matrix::from_columns(&cols, can.group.generator_count());
        let lhs = &map * &act_t;
        let rhs = b.functor().res(act) * &map;
        if !target.maps_equal(&lhs, &rhs) {
            equivariant = false;
        }
    }
    FreeOrbitTensor {
        tensor: can.group,
        map,
        bijective,
        equivariant,
    }
}
