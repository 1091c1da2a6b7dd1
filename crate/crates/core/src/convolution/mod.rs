//! The box product of Mackey functors, Green functors and their modules.
//!
//! `(M box N)(G/J)` is presented by generators `[phi; m_i, n_j]` for
//! `phi` a transitive span `G/K x G/L -> G/J` and generators `m_i` of
//! `M(G/K)`, `n_j` of `N(G/L)`, modulo torsion and the coend relations along
//! restrictions and transfers between orbits. Values at other G-sets are
//! additive over orbits.

mod green;
mod iso;

pub use green::{
    burnside_green, fixed_point_green, green_from_levelwise, green_from_mult, GreenFunctor,
    GreenModule, MultTable,
};
pub use iso::{
    box_assoc_iso, box_comm_iso, box_free_eval_iso, box_map, box_unit_iso, free_orbit_tensor_iso,
    internal_hom_rep, representable_monoidal_iso, FreeOrbitTensor,
};

use std::collections::HashMap;
use std::sync::Arc;

use crate::abgroup::{Reduced, SparsePresentation};
use crate::burnside::{canonical_code, compose, hom_basis, tensor, BurnsideElement, SpanCode};
use crate::error::{Error, Result};
use crate::group::GroupRef;
use crate::gset::{product, GSet, Product};
use crate::int::Int;
use crate::mackey::{generating_orbit_maps, MackeyFunctor, MackeyMorphism, MapKind, OrbitMap};
use crate::matrix::Matrix;

/// Orbits `G/H` and products `G/K x G/L`, shared by box computations.
pub(crate) struct Orbits {
    pub(crate) group: GroupRef,
    pub(crate) orbit: Vec<GSet>,
    pub(crate) prod: Vec<Vec<Product>>,
}

impl Orbits {
    pub(crate) fn new(g: &GroupRef) -> Orbits {
        let k = g.class_count();
        let orbit: Vec<GSet> = (0..k).map(|c| GSet::orbit(g, c)).collect();
        let prod = (0..k)
            .map(|a| {
                (0..k)
                    .map(|b| product(&orbit[a], &orbit[b]).expect("same group"))
                    .collect()
            })
            .collect();
        Orbits {
            group: g.clone(),
            orbit,
            prod,
        }
    }

    /// Legs of a transitive span code `G/K x G/L -> G/J` as orbit maps from its middle.
    pub(crate) fn legs(
        &self,
        k: usize,
        l: usize,
        j: usize,
        code: SpanCode,
    ) -> (OrbitMap, OrbitMap, OrbitMap) {
        let g = &self.group;
        let (x1, x2) = self.prod[k][l].split(code.x);
        let om = |to: usize, pt: usize| {
            OrbitMap::new(g, code.class, to, g.cosets(to).reps[pt]).expect("leg of a span")
        };
        (om(k, x1), om(l, x2), om(j, code.y))
    }

    /// The diagonal span `G/C x G/C <- G/C -> G/C`.
    pub(crate) fn diagonal_code(&self, c: usize) -> SpanCode {
        let p = &self.prod[c][c];
        canonical_code(&p.set, &self.orbit[c], self.group.rep(c), p.pair(0, 0), 0)
    }
}

pub(crate) struct BoxLevel {
    /// `bases[k][l]` is `hom_basis(G/K x G/L, G/J)`.
    pub(crate) bases: Vec<Vec<Vec<SpanCode>>>,
    code_index: Vec<Vec<HashMap<SpanCode, usize>>>,
    offsets: Vec<Vec<usize>>,
    pub(crate) total: usize,
    presentation: SparsePresentation,
    pub(crate) reduced: Reduced,
}

struct BoxInner {
    orbits: Orbits,
    left: MackeyFunctor,
    right: MackeyFunctor,
    levels: Vec<BoxLevel>,
    functor: MackeyFunctor,
}

/// `M box N` with its presentation; cheap to clone.
#[derive(Clone)]
pub struct BoxProduct(Arc<BoxInner>);

impl std::fmt::Debug for BoxProduct {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BoxProduct({:?})", self.0.functor)
    }
}

impl BoxProduct {
    pub fn functor(&self) -> &MackeyFunctor {
        &self.0.functor
    }

    pub fn left(&self) -> &MackeyFunctor {
        &self.0.left
    }

    pub fn right(&self) -> &MackeyFunctor {
        &self.0.right
    }

    pub(crate) fn orbits(&self) -> &Orbits {
        &self.0.orbits
    }

    /// Number of coend generators at level `j` before reduction.
    pub fn raw_generators(&self, j: usize) -> usize {
        self.0.levels[j].total
    }

    pub fn raw_relations(&self, j: usize) -> usize {
        self.0.levels[j].presentation.relation_count()
    }

    fn gen_index(&self, j: usize, k: usize, l: usize, phi: usize, i: usize, jj: usize) -> usize {
        let lv = &self.0.levels[j];
        lv.offsets[k][l] + (phi * self.0.left.rank(k) + i) * self.0.right.rank(l) + jj
    }

    /// Sparse vector of `[phi; m, n]` over the raw generators.
    fn raw_pair(
        &self,
        j: usize,
        k: usize,
        l: usize,
        phi: &[(usize, Int)],
        m: &[Int],
        n: &[Int],
    ) -> Vec<(usize, Int)> {
        let mut out = Vec::new();
        for (p, c) in phi {
            for (i, a) in m.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let ca = c * a;
                for (jj, b) in n.iter().enumerate() {
                    if !b.is_zero() {
                        out.push((self.gen_index(j, k, l, *p, i, jj), &ca * b));
                    }
                }
            }
        }
        out
    }

    /// `[phi; m, n]` in `(M box N)(G/J)`, for `phi` in `A(G/K x G/L, G/J)`
    /// given in the basis `hom_basis(G/K x G/L, G/J)`.
    pub fn pair(
        &self,
        j: usize,
        k: usize,
        l: usize,
        phi: &[Int],
        m: &[Int],
        n: &[Int],
    ) -> Vec<Int> {
        let sparse: Vec<(usize, Int)> = phi
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(p, c)| (p, c.clone()))
            .collect();
        self.0.levels[j]
            .reduced
            .project(&self.raw_pair(j, k, l, &sparse, m, n))
    }

    /// `[code; m, n]` for a single basis code.
    pub fn pair_code(
        &self,
        j: usize,
        k: usize,
        l: usize,
        code: SpanCode,
        m: &[Int],
        n: &[Int],
    ) -> Vec<Int> {
        let p = self.0.levels[j].code_index[k][l][&code];
        self.0.levels[j]
            .reduced
            .project(&self.raw_pair(j, k, l, &[(p, Int::ONE)], m, n))
    }

    /// `[phi; m, n]` for a Burnside element `phi: G/K x G/L -> G/J`.
    pub fn pair_span(
        &self,
        j: usize,
        k: usize,
        l: usize,
        phi: &BurnsideElement,
        m: &[Int],
        n: &[Int],
    ) -> Result<Vec<Int>> {
        let v = phi.to_vector(&self.0.levels[j].bases[k][l])?;
        Ok(self.pair(j, k, l, &v, m, n))
    }

    /// The internal product `M(G/C) x N(G/C) -> (M box N)(G/C)` (diagonal span).
    pub fn diagonal_pair(&self, c: usize, m: &[Int], n: &[Int]) -> Vec<Int> {
        let code = self.0.orbits.diagonal_code(c);
        self.pair_code(c, c, c, code, m, n)
    }

    /// The diagonal pairing at a G-set, orbit by orbit.
    pub fn diagonal_pair_on(&self, y: &GSet, m: &[Int], n: &[Int]) -> Vec<Int> {
        let (om, on) = (self.0.left.offsets(y), self.0.right.offsets(y));
        let mut out = Vec::new();
        for (i, o) in y.orbits().iter().enumerate() {
            out.extend(self.diagonal_pair(o.class, &m[om[i]..om[i + 1]], &n[on[i]..on[i + 1]]));
        }
        out
    }

    /// Builds a morphism out of the box product from images of the raw
    /// generators (`image(j, k, l, code, i, jj)` in `target(G/J)`), checking
    /// that every coend relation maps to zero.
    pub fn descend<F>(&self, target: &MackeyFunctor, mut image: F) -> Result<MackeyMorphism>
    where
        F: FnMut(usize, usize, usize, SpanCode, usize, usize) -> Result<Vec<Int>>,
    {
        let g = &self.0.orbits.group;
        let (m, n) = (&self.0.left, &self.0.right);
        let mut maps = Vec::with_capacity(self.0.levels.len());
        for (j, lv) in self.0.levels.iter().enumerate() {
            let tl = target.level(j);
            let mut cols: Vec<Vec<Int>> = vec![Vec::new(); lv.total];
            for k in 0..lv.bases.len() {
                for l in 0..lv.bases.len() {
                    for (p, code) in lv.bases[k][l].iter().enumerate() {
                        for i in 0..m.rank(k) {
                            for jj in 0..n.rank(l) {
                                let idx = self.gen_index(j, k, l, p, i, jj);
                                let v = image(j, k, l, *code, i, jj)?;
                                if v.len() != tl.generator_count() {
                                    return Err(Error::Dimension(
                                        "generator image has the wrong length".into(),
                                    ));
                                }
                                cols[idx] = v;
                            }
                        }
                    }
                }
            }
            for rel in lv.presentation.relations() {
                let mut acc = vec![Int::ZERO; tl.generator_count()];
                for (gi, c) in rel.iter() {
                    for (a, x) in acc.iter_mut().zip(&cols[*gi]) {
                        *a += c * x;
                    }
                }
                if !tl.is_zero_element(&acc) {
                    return Err(Error::Axiom {
                        axiom: "coend relation".into(),
                        cell: format!("a relation at level {} is not killed", g.class_label(j)),
                    });
                }
            }
            let mat = Matrix::from_columns(
                &lv.reduced
                    .from_canon
                    .iter()
                    .map(|combo| {
                        let mut acc = vec![Int::ZERO; tl.generator_count()];
                        for (gi, c) in combo {
                            for (a, x) in acc.iter_mut().zip(&cols[*gi]) {
                                *a += c * x;
                            }
                        }
                        acc
                    })
                    .collect::<Vec<_>>(),
                tl.generator_count(),
            );
            maps.push(mat);
        }
        MackeyMorphism::new(&self.0.functor, target, maps)
    }
}

/// Coend presentation of `M box N` and its reduction.
pub fn box_product(m: &MackeyFunctor, n: &MackeyFunctor) -> Result<BoxProduct> {
    if m.group() != n.group() {
        return Err(Error::GroupMismatch(
            "box product of functors over different groups".into(),
        ));
    }
    let g = m.group().clone();
    let k = g.class_count();
    let orbits = Orbits::new(&g);
    let gens = generating_orbit_maps(&g);

    let mut bases: Vec<Vec<Vec<Vec<SpanCode>>>> = Vec::with_capacity(k);
    for j in 0..k {
        let mut per = Vec::with_capacity(k);
        for a in 0..k {
            let mut row = Vec::with_capacity(k);
            for b in 0..k {
                row.push(hom_basis(&orbits.prod[a][b].set, &orbits.orbit[j])?);
            }
            per.push(row);
        }
        bases.push(per);
    }

    // phi . (alpha x id) and phi . (id x alpha) in basis coordinates, cached.
    let mut left_cache: HashMap<(MapKind, OrbitMap, usize, usize), Vec<Vec<Int>>> = HashMap::new();
    let mut right_cache: HashMap<(MapKind, OrbitMap, usize, usize), Vec<Vec<Int>>> = HashMap::new();
    let span_of = |kind: MapKind, om: OrbitMap| {
        let f = om.to_gmap(&g);
        match kind {
            MapKind::Tr => BurnsideElement::from_map(&f),
            MapKind::Res => BurnsideElement::from_map_op(&f),
        }
    };
    // Source and target classes of the span along `om` of the given kind.
    let ends = |kind: MapKind, om: OrbitMap| match kind {
        MapKind::Tr => (om.from, om.to),
        MapKind::Res => (om.to, om.from),
    };

    let mut levels = Vec::with_capacity(k);
    for j in 0..k {
        let mut offsets = vec![vec![0; k]; k];
        let mut total = 0;
        for a in 0..k {
            for b in 0..k {
                offsets[a][b] = total;
                total += bases[j][a][b].len() * m.rank(a) * n.rank(b);
            }
        }
        let code_index = bases[j]
            .iter()
            .map(|row| {
                row.iter()
                    .map(|bs| bs.iter().enumerate().map(|(i, c)| (*c, i)).collect())
                    .collect()
            })
            .collect();
        let idx = |a: usize, b: usize, p: usize, i: usize, jj: usize| {
            offsets[a][b] + (p * m.rank(a) + i) * n.rank(b) + jj
        };
        let mut pres = SparsePresentation::new(total);
        // Torsion.
        for a in 0..k {
            for b in 0..k {
                for p in 0..bases[j][a][b].len() {
                    for (i, d) in m.level(a).orders().iter().enumerate() {
                        for (jj, e) in n.level(b).orders().iter().enumerate() {
                            let gi = idx(a, b, p, i, jj);
                            if !d.is_zero() {
                                pres.add_relation([(gi, d.clone())]);
                            }
                            if !e.is_zero() {
                                pres.add_relation([(gi, e.clone())]);
                            }
                        }
                    }
                }
            }
        }
        for &om in &gens {
            for kind in [MapKind::Tr, MapKind::Res] {
                let (src, dst) = ends(kind, om);
                let alpha = span_of(kind, om);
                // Left slot: alpha: G/src -> G/dst acting on M.
                let mmat = m.map(kind, om);
                for b in 0..k {
                    let key = (kind, om, b, j);
                    if !left_cache.contains_key(&key) {
                        let lifted = tensor(&alpha, &BurnsideElement::identity(&orbits.orbit[b]))?;
                        let rows = bases[j][dst][b]
                            .iter()
                            .map(|code| {
                                let phi = BurnsideElement::basis_element(
                                    &orbits.prod[dst][b].set,
                                    &orbits.orbit[j],
                                    *code,
                                );
                                compose(&phi, &lifted)?.to_vector(&bases[j][src][b])
                            })
                            .collect::<Result<Vec<_>>>()?;
                        left_cache.insert(key, rows);
                    }
                    let pulled = &left_cache[&key];
                    for (p, comp) in pulled.iter().enumerate() {
                        for i in 0..m.rank(src) {
                            for jj in 0..n.rank(b) {
                                let mut terms = Vec::new();
                                for (q, c) in comp.iter().enumerate() {
                                    if !c.is_zero() {
                                        terms.push((idx(src, b, q, i, jj), c.clone()));
                                    }
                                }
                                for i2 in 0..m.rank(dst) {
                                    let c = &mmat[(i2, i)];
                                    if !c.is_zero() {
                                        terms.push((idx(dst, b, p, i2, jj), -c.clone()));
                                    }
                                }
                                pres.add_relation(terms);
                            }
                        }
                    }
                }
                // Right slot: alpha acting on N.
                let nmat = n.map(kind, om);
                for a in 0..k {
                    let key = (kind, om, a, j);
                    if !right_cache.contains_key(&key) {
                        let lifted = tensor(&BurnsideElement::identity(&orbits.orbit[a]), &alpha)?;
                        let rows = bases[j][a][dst]
                            .iter()
                            .map(|code| {
                                let phi = BurnsideElement::basis_element(
                                    &orbits.prod[a][dst].set,
                                    &orbits.orbit[j],
                                    *code,
                                );
                                compose(&phi, &lifted)?.to_vector(&bases[j][a][src])
                            })
                            .collect::<Result<Vec<_>>>()?;
                        right_cache.insert(key, rows);
                    }
                    let pulled = &right_cache[&key];
                    for (p, comp) in pulled.iter().enumerate() {
                        for i in 0..m.rank(a) {
                            for jj in 0..n.rank(src) {
                                let mut terms = Vec::new();
                                for (q, c) in comp.iter().enumerate() {
                                    if !c.is_zero() {
                                        terms.push((idx(a, src, q, i, jj), c.clone()));
                                    }
                                }
                                for j2 in 0..n.rank(dst) {
                                    let c = &nmat[(j2, jj)];
                                    if !c.is_zero() {
                                        terms.push((idx(a, dst, p, i, j2), -c.clone()));
                                    }
                                }
                                pres.add_relation(terms);
                            }
                        }
                    }
                }
            }
        }
        let reduced = pres.reduce();
        levels.push(BoxLevel {
            bases: bases[j].clone(),
            code_index,
            offsets,
            total,
            presentation: pres,
            reduced,
        });
    }

    // Structure maps: postcomposition in the span slot.
    let mut entries = Vec::new();
    for &om in &gens {
        for kind in [MapKind::Tr, MapKind::Res] {
            let (src, dst) = ends(kind, om);
            let psi = span_of(kind, om);
            let (ls, ld) = (&levels[src], &levels[dst]);
            let mut cols = Vec::with_capacity(ls.reduced.from_canon.len());
            // Image of each raw generator of level src, as a sparse raw vector in level dst.
            let mut cache: HashMap<(usize, usize, usize), Vec<Int>> = HashMap::new();
            for combo in &ls.reduced.from_canon {
                let mut raw: Vec<(usize, Int)> = Vec::new();
                for (gi, c) in combo {
                    let (a, b, p, i, jj) = decode(ls, m, n, *gi);
                    let v = match cache.get(&(a, b, p)) {
                        Some(v) => v.clone(),
                        None => {
                            let phi = BurnsideElement::basis_element(
                                &orbits.prod[a][b].set,
                                &orbits.orbit[src],
                                ls.bases[a][b][p],
                            );
                            let v = compose(&psi, &phi)?.to_vector(&ld.bases[a][b])?;
                            cache.insert((a, b, p), v.clone());
                            v
                        }
                    };
                    for (q, x) in v.iter().enumerate() {
                        if !x.is_zero() {
                            let t = ld.offsets[a][b] + (q * m.rank(a) + i) * n.rank(b) + jj;
                            raw.push((t, c * x));
                        }
                    }
                }
                cols.push(ld.reduced.project(&raw));
            }
            entries.push((
                kind,
                om,
                Matrix::from_columns(&cols, ld.reduced.group.generator_count()),
            ));
        }
    }
    let lv_groups = levels.iter().map(|l| l.reduced.group.clone()).collect();
    let functor = MackeyFunctor::close(&g, lv_groups, entries)?;
    Ok(BoxProduct(Arc::new(BoxInner {
        orbits,
        left: m.clone(),
        right: n.clone(),
        levels,
        functor,
    })))
}

/// `(k, l, phi, i, j)` of a raw generator index.
fn decode(
    lv: &BoxLevel,
    m: &MackeyFunctor,
    n: &MackeyFunctor,
    gi: usize,
) -> (usize, usize, usize, usize, usize) {
    let k = lv.offsets.len();
    for a in 0..k {
        for b in 0..k {
            let start = lv.offsets[a][b];
            let size = lv.bases[a][b].len() * m.rank(a) * n.rank(b);
            if gi >= start && gi < start + size {
                let r = gi - start;
                let jj = r % n.rank(b);
                let r = r / n.rank(b);
                return (a, b, r / m.rank(a), r % m.rank(a), jj);
            }
        }
    }
    unreachable!("generator index out of range")
}

#[cfg(test)]
mod tests;
