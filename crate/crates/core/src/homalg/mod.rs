//! Modules over Green functors: free modules, relative box products,
//! projective resolutions, Tor and spectral sequences of filtered complexes.
//!
//! A free module `R^X` is modelled by `R(X x -)`, and `M box_R R^X` by
//! `M(X x -)`. A module map `R^Y -> R^X` is an element `rho` of `R(X x Y)`;
//! tensored with `M` it acts by `m -> tr(res(rho) . res(m))` over `X x Y x -`.

mod complex;

pub use complex::{
    abutment_iso, associated_graded, compare_pages, e_infinity, ss_page, ss_pages, Filtration,
    Homology, MackeyChainComplex, SpectralSequencePage,
};

use crate::abgroup::Subquotient;
use crate::convolution::{
    box_product, internal_hom_rep, BoxProduct, GreenFunctor, GreenModule, MultTable,
};
use crate::error::{Error, Result};
use crate::gset::{product, GMap, GSet};
use crate::int::Int;
use crate::linalg::Lattice;
use crate::mackey::{direct_sum_many, induced_functor, kernel, MackeyFunctor, MackeyMorphism};
use crate::matrix::Matrix;

fn unit(n: usize, i: usize) -> Vec<Int> {
    let mut v = vec![Int::ZERO; n];
    v[i] = Int::ONE;
    v
}

/// `r . m` on values at a G-set, orbit by orbit.
pub fn act_on(m: &GreenModule, y: &GSet, r: &[Int], x: &[Int]) -> Vec<Int> {
    let ro = m.ring().functor().offsets(y);
    let mo = m.underlying().offsets(y);
    let mut out = Vec::with_capacity(x.len());
    for (i, o) in y.orbits().iter().enumerate() {
        out.extend(m.act(o.class, &r[ro[i]..ro[i + 1]], &x[mo[i]..mo[i + 1]]));
    }
    out
}

/// The unit of `R(Y)`.
pub fn ring_unit_on(r: &GreenFunctor, y: &GSet) -> Vec<Int> {
    y.orbits()
        .iter()
        .flat_map(|o| r.unit(o.class).to_vec())
        .collect()
}

/// `M(X x -)` as a module: `r . m = res(r) . m` on `X x G/H`.
pub fn shifted(m: &GreenModule, x: &GSet) -> Result<GreenModule> {
    let ring = m.ring();
    let g = ring.group().clone();
    let f = internal_hom_rep(x, m.underlying())?;
    let mut tables = Vec::with_capacity(g.class_count());
    for c in 0..g.class_count() {
        let p = product(x, &GSet::orbit(&g, c))?;
        let res = ring.functor().restrict_along(&p.right)?;
        let n = f.rank(c);
        let table: MultTable = (0..ring.functor().rank(c))
            .map(|i| {
                (0..n)
                    .map(|j| act_on(m, &p.set, &res.column(i), &unit(n, j)))
                    .collect()
            })
            .collect();
        tables.push(table);
    }
    GreenModule::from_levelwise(ring, &f, tables)
}

/// Direct sum of modules over one ring.
pub fn module_direct_sum(ring: &GreenFunctor, parts: &[GreenModule]) -> Result<GreenModule> {
    let g = ring.group().clone();
    let under: Vec<MackeyFunctor> = parts.iter().map(|p| p.underlying().clone()).collect();
    let sum = direct_sum_many(&g, &under);
    let mut tables = Vec::with_capacity(g.class_count());
    for c in 0..g.class_count() {
        let n = sum.rank(c);
        let nr = ring.functor().rank(c);
        let mut table: MultTable = vec![vec![vec![Int::ZERO; n]; n]; nr];
        let mut off = 0;
        for p in parts {
            let t = p.action_table(c);
            let k = p.underlying().rank(c);
            for i in 0..nr {
                for j in 0..k {
                    for (l, x) in t[i][j].iter().enumerate() {
                        table[i][off + j][off + l] = x.clone();
                    }
                }
            }
            off += k;
        }
        tables.push(table);
    }
    GreenModule::from_levelwise(ring, &sum, tables)
}

/// `R^{X_1} + ... + R^{X_n}`, each summand `R(X_i x -)`.
#[derive(Clone, Debug)]
pub struct FreeModule {
    ring: GreenFunctor,
    basis: Vec<GSet>,
    module: GreenModule,
}

impl FreeModule {
    pub fn ring(&self) -> &GreenFunctor {
        &self.ring
    }

    pub fn basis(&self) -> &[GSet] {
        &self.basis
    }

    pub fn module(&self) -> &GreenModule {
        &self.module
    }

    pub fn functor(&self) -> &MackeyFunctor {
        self.module.underlying()
    }

    /// Offset of summand `a`'s block at level `c`.
    fn block_offset(&self, a: usize, c: usize) -> usize {
        let g = self.ring.group();
        self.basis[..a]
            .iter()
            .map(|x| {
                self.ring
                    .functor()
                    .value(&product(x, &GSet::orbit(g, c)).expect("same group").set)
                    .generator_count()
            })
            .sum()
    }

    /// The R-linear map `R^X -> N` sending the generator of summand `a` to `elements[a]` in `N(X_a)`.
    pub fn morphism_to(
        &self,
        target: &GreenModule,
        elements: &[Vec<Int>],
    ) -> Result<MackeyMorphism> {
        if target.ring() != &self.ring {
            return Err(Error::FootMismatch("module over a different ring".into()));
        }
        if elements.len() != self.basis.len() {
            return Err(Error::Dimension("one element per free generator".into()));
        }
        let g = self.ring.group().clone();
        let n = target.underlying();
        let mut maps = Vec::with_capacity(g.class_count());
        for c in 0..g.class_count() {
            let mut blocks: Vec<Vec<Int>> = Vec::new();
            for (x, e) in self.basis.iter().zip(elements) {
                if e.len() != n.value(x).generator_count() {
                    return Err(Error::Dimension("element has the wrong length".into()));
                }
                let p = product(x, &GSet::orbit(&g, c))?;
                let pulled = n.restrict_along(&p.left)?.mul_vec(e);
                let push = n.transfer_along(&p.right)?;
                let size = self.ring.functor().value(&p.set).generator_count();
                for j in 0..size {
                    let acted = act_on(target, &p.set, &unit(size, j), &pulled);
                    blocks.push(push.mul_vec(&acted));
                }
            }
            maps.push(
                n.level(c)
                    .normalize_matrix(&Matrix::from_columns(&blocks, n.rank(c))),
            );
        }
        MackeyMorphism::new(self.functor(), n, maps)
    }

    /// The generator of summand `a` as an element of `R^X(X_a)`.
    pub fn generator(&self, a: usize) -> Result<Vec<Int>> {
        let g = self.ring.group().clone();
        let x = &self.basis[a];
        let r = self.ring.functor();
        let xx = product(x, x)?;
        let diag = GMap::new(
            x.clone(),
            xx.set.clone(),
            (0..x.size()).map(|i| xx.pair(i, i)).collect(),
        )?;
        let delta = r
            .transfer_along(&diag)?
            .mul_vec(&ring_unit_on(&self.ring, x));
        let mut out = Vec::new();
        for o in x.orbits() {
            // Block of orbit o: R^X(G/d) with G/d -> X the inclusion of o.
            let orbit = GSet::orbit(&g, o.class);
            let reps = &g.cosets(o.class).reps;
            let incl: Vec<usize> = reps.iter().map(|&t| x.act(t, o.base)).collect();
            let total = self.functor().rank(o.class);
            let mut v = vec![Int::ZERO; total];
            let p = product(x, &orbit)?;
            let lift = GMap::new(
                p.set.clone(),
                xx.set.clone(),
                (0..p.set.size())
                    .map(|q| {
                        let (u, w) = p.split(q);
                        xx.pair(u, incl[w])
                    })
                    .collect(),
            )?;
            let part = r.restrict_along(&lift)?.mul_vec(&delta);
            let off = self.block_offset(a, o.class);
            v[off..off + part.len()].clone_from_slice(&part);
            out.extend(v);
        }
        Ok(self.functor().value(x).normalize(&out))
    }

    /// `f(generator a)` in `N(X_a)`: inverse of [`FreeModule::morphism_to`].
    pub fn element_of(&self, f: &MackeyMorphism, a: usize) -> Result<Vec<Int>> {
        let x = &self.basis[a];
        let v = f.at(x).mul_vec(&self.generator(a)?);
        Ok(f.target().value(x).normalize(&v))
    }
}

/// `R^X`.
pub fn free_module(ring: &GreenFunctor, x: &GSet) -> Result<FreeModule> {
    free_module_on(ring, vec![x.clone()])
}

/// `R^{X_1} + ... + R^{X_n}`.
pub fn free_module_on(ring: &GreenFunctor, basis: Vec<GSet>) -> Result<FreeModule> {
    let regular = GreenModule::regular(ring);
    let parts = basis
        .iter()
        .map(|x| shifted(&regular, x))
        .collect::<Result<Vec<_>>>()?;
    let module = module_direct_sum(ring, &parts)?;
    Ok(FreeModule {
        ring: ring.clone(),
        basis,
        module,
    })
}

/// A free module on orbits with a map to a target module.
#[derive(Clone, Debug)]
pub struct Cover {
    pub free: FreeModule,
    /// Orbit class of each free generator.
    pub classes: Vec<usize>,
    /// Image of each free generator, in the target level of its class.
    pub elements: Vec<Vec<Int>>,
    pub map: MackeyMorphism,
}

/// Order in which a cover visits levels and candidate generators.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CoverOrder {
    /// Top class first, generators in index order.
    #[default]
    TopFirst,
    /// Trivial class first, generators in reverse index order.
    BottomFirst,
}

/// Greedy cover of the submodule of `ambient` generated by `candidates[c]`
/// (vectors of `ambient(G/H_c)`): a new free generator whenever a candidate
/// is not yet generated.
fn greedy_cover(
    ambient: &GreenModule,
    candidates: &[Vec<Vec<Int>>],
    order: CoverOrder,
) -> Result<Cover> {
    let ring = ambient.ring();
    let g = ring.group().clone();
    let k = g.class_count();
    let n = ambient.underlying();
    let mut generated: Vec<Lattice> = (0..k).map(|c| n.level(c).relation_lattice()).collect();
    let mut classes = Vec::new();
    let mut elements = Vec::new();
    let visit: Vec<(usize, &Vec<Int>)> = match order {
        CoverOrder::TopFirst => (0..k)
            .rev()
            .flat_map(|c| candidates[c].iter().map(move |v| (c, v)))
            .collect(),
        CoverOrder::BottomFirst => (0..k)
            .flat_map(|c| candidates[c].iter().rev().map(move |v| (c, v)))
            .collect(),
    };
    let mut images: Vec<Vec<Lattice>> = Vec::new();
    for (c, v) in visit {
        if generated[c].contains(v) {
            continue;
        }
        let single = free_module(ring, &GSet::orbit(&g, c))?;
        let f = single.morphism_to(ambient, std::slice::from_ref(v))?;
        let img: Vec<Lattice> = (0..k).map(|t| Lattice::from_columns(f.level(t))).collect();
        for (lat, i) in generated.iter_mut().zip(&img) {
            *lat = lat.sum(i);
        }
        classes.push(c);
        elements.push(v.clone());
        images.push(img);
    }
    // Drop generators that the later choices made redundant, latest first.
    let mut keep = vec![true; classes.len()];
    for i in (0..classes.len()).rev() {
        let c = classes[i];
        let mut others = n.level(c).relation_lattice();
        for (j, img) in images.iter().enumerate() {
            if j != i && keep[j] {
                others = others.sum(&img[c]);
            }
        }
        if others.contains(&elements[i]) {
            keep[i] = false;
        }
    }
    let classes: Vec<usize> = classes
        .iter()
        .zip(&keep)
        .filter(|(_, &k)| k)
        .map(|(&c, _)| c)
        .collect();
    let elements: Vec<Vec<Int>> = elements
        .into_iter()
        .zip(&keep)
        .filter(|(_, &k)| k)
        .map(|(e, _)| e)
        .collect();
    let free = free_module_on(ring, classes.iter().map(|&c| GSet::orbit(&g, c)).collect())?;
    let map = free.morphism_to(ambient, &elements)?;
    Ok(Cover {
        free,
        classes,
        elements,
        map,
    })
}

/// A surjection from a free module on orbits, one generator per level
/// generator of `m` not already generated.
pub fn cover(m: &GreenModule) -> Result<Cover> {
    cover_ordered(m, CoverOrder::TopFirst)
}

pub fn cover_ordered(m: &GreenModule, order: CoverOrder) -> Result<Cover> {
    let k = m.ring().group().class_count();
    let candidates: Vec<Vec<Vec<Int>>> = (0..k)
        .map(|c| {
            let r = m.underlying().rank(c);
            (0..r).map(|i| unit(r, i)).collect()
        })
        .collect();
    greedy_cover(m, &candidates, order)
}

/// `P_len -> ... -> P_0 -> N` with every `P_n` free on orbits.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub target: GreenModule,
    pub free: Vec<FreeModule>,
    /// Orbit classes of the generators of each `P_n`.
    pub classes: Vec<Vec<usize>>,
    pub augmentation: MackeyMorphism,
    /// Images of the generators of `P_0` in the target.
    pub augmentation_elements: Vec<Vec<Int>>,
    /// `differentials[n - 1]: P_n -> P_{n-1}`.
    pub differentials: Vec<MackeyMorphism>,
    /// Images of the generators of `P_n` in `P_{n-1}` (index `n - 1`).
    pub elements: Vec<Vec<Vec<Int>>>,
}

impl Resolution {
    pub fn length(&self) -> usize {
        self.free
            .iter()
            .rposition(|p| !p.basis.is_empty())
            .unwrap_or(0)
    }

    /// `P_n` as a chain complex in degrees `0..=len` (augmentation dropped).
    pub fn complex(&self) -> Result<MackeyChainComplex> {
        MackeyChainComplex::new(
            0,
            self.free.iter().map(|p| p.functor().clone()).collect(),
            self.differentials.clone(),
        )
    }
}

/// A free resolution of `n` with `length + 1` free modules `P_0..P_length`.
pub fn resolution(n: &GreenModule, length: usize) -> Result<Resolution> {
    resolution_ordered(n, length, CoverOrder::TopFirst)
}

pub fn resolution_ordered(n: &GreenModule, length: usize, order: CoverOrder) -> Result<Resolution> {
    let first = cover_ordered(n, order)?;
    let mut free = vec![first.free.clone()];
    let mut classes = vec![first.classes.clone()];
    let mut differentials = Vec::new();
    let mut elements = Vec::new();
    let mut last = first.map.clone();
    for _ in 0..length {
        let prev = free.last().unwrap().clone();
        let ker = kernel(&last);
        let k = ker.functor.levels().len();
        let candidates: Vec<Vec<Vec<Int>>> = (0..k)
            .map(|c| {
                let inc = ker.inclusion.level(c);
                (0..inc.cols()).map(|j| inc.column(j)).collect()
            })
            .collect();
        let next = greedy_cover(prev.module(), &candidates, order)?;
        free.push(next.free.clone());
        classes.push(next.classes.clone());
        differentials.push(next.map.clone());
        elements.push(next.elements.clone());
        last = next.map;
    }
    Ok(Resolution {
        target: n.clone(),
        free,
        classes,
        augmentation: first.map,
        augmentation_elements: first.elements,
        differentials,
        elements,
    })
}

/// `M box_R rho: M(B x -) -> M(A x -)` for orbit sums, with `rho[b]` the image
/// of generator `b` in the level `B_b` of `R(A_1 x -) + ... `.
pub fn induced_free_map(
    m: &GreenModule,
    source: &[usize],
    target: &[usize],
    rho: &[Vec<Int>],
) -> Result<(MackeyFunctor, MackeyFunctor, MackeyMorphism)> {
    let ring = m.ring();
    let g = ring.group().clone();
    let r = ring.functor();
    let mm = m.underlying();
    let orbit = |c: usize| GSet::orbit(&g, c);
    let shifted_sum = |classes: &[usize]| -> Result<MackeyFunctor> {
        let parts = classes
            .iter()
            .map(|&c| internal_hom_rep(&orbit(c), mm))
            .collect::<Result<Vec<_>>>()?;
        Ok(direct_sum_many(&g, &parts))
    };
    let (src, tgt) = (shifted_sum(source)?, shifted_sum(target)?);
    let mut maps = Vec::with_capacity(g.class_count());
    for t in 0..g.class_count() {
        let ot = orbit(t);
        let mut mat = Matrix::zeros(tgt.rank(t), src.rank(t));
        let mut col0 = 0;
        for (bi, &b) in source.iter().enumerate() {
            let bt = product(&orbit(b), &ot)?;
            let width = mm.value(&bt.set).generator_count();
            let mut row0 = 0;
            let mut roff = 0;
            for &a in target {
                let ab = product(&orbit(a), &orbit(b))?;
                let at = product(&orbit(a), &ot)?;
                let height = mm.value(&at.set).generator_count();
                let rsize = r.value(&ab.set).generator_count();
                let rho_ab = &rho[bi][roff..roff + rsize];
                roff += rsize;
                if rho_ab.iter().any(|x| !x.is_zero()) {
                    let w = product(&ab.set, &ot)?;
                    let to_ab = w.left.clone();
                    let map = |f: &dyn Fn(usize, usize, usize) -> usize,
                               target_set: &GSet|
                     -> Result<GMap> {
                        GMap::new(
                            w.set.clone(),
                            target_set.clone(),
                            (0..w.set.size())
                                .map(|q| {
                                    let (x, z) = w.split(q);
                                    let (u, v) = ab.split(x);
                                    f(u, v, z)
                                })
                                .collect(),
                        )
                    };
                    let to_bt = map(&|_, v, z| bt.pair(v, z), &bt.set)?;
                    let to_at = map(&|u, _, z| at.pair(u, z), &at.set)?;
                    let rho_w = r.restrict_along(&to_ab)?.mul_vec(rho_ab);
                    let res_m = mm.restrict_along(&to_bt)?;
                    let tr_m = mm.transfer_along(&to_at)?;
                    for j in 0..width {
                        let acted = act_on(m, &w.set, &rho_w, &res_m.column(j));
                        let col = tr_m.mul_vec(&acted);
                        for (i, x) in col.into_iter().enumerate() {
                            mat[(row0 + i, col0 + j)] = x;
                        }
                    }
                }
                row0 += height;
            }
            col0 += width;
        }
        maps.push(tgt.level(t).normalize_matrix(&mat));
    }
    let f = MackeyMorphism::new(&src, &tgt, maps)?;
    Ok((src, tgt, f))
}

/// `M box_R P_.` for a resolution `P_.`.
pub fn tensor_resolution(m: &GreenModule, res: &Resolution) -> Result<MackeyChainComplex> {
    if m.ring() != res.target.ring() {
        return Err(Error::FootMismatch(
            "module and resolution over different rings".into(),
        ));
    }
    let g = m.ring().group().clone();
    let mut objects = Vec::new();
    let mut diffs = Vec::new();
    if res.differentials.is_empty() {
        let parts = res.classes[0]
            .iter()
            .map(|&c| internal_hom_rep(&GSet::orbit(&g, c), m.underlying()))
            .collect::<Result<Vec<_>>>()?;
        objects.push(direct_sum_many(&g, &parts));
    }
    for n in 1..res.free.len() {
        let (src, tgt, d) = induced_free_map(
            m,
            &res.classes[n],
            &res.classes[n - 1],
            &res.elements[n - 1],
        )?;
        if n == 1 {
            objects.push(tgt);
        }
        objects.push(src);
        diffs.push(d);
    }
    MackeyChainComplex::new(0, objects, diffs)
}

/// `Tor_p^R(M, N)` for `p = 0..=p_max`, with the complex it is computed from.
#[derive(Clone, Debug)]
pub struct Tor {
    pub resolution: Resolution,
    pub complex: MackeyChainComplex,
    pub groups: Vec<Homology>,
}

impl Tor {
    pub fn functor(&self, p: usize) -> &MackeyFunctor {
        &self.groups[p].functor
    }
}

pub fn tor(m: &GreenModule, n: &GreenModule, p_max: usize) -> Result<Tor> {
    if m.ring() != n.ring() {
        return Err(Error::FootMismatch("modules over different rings".into()));
    }
    let resolution = resolution(n, p_max + 1)?;
    let complex = tensor_resolution(m, &resolution)?;
    let groups = (0..=p_max as i64).map(|p| complex.homology(p)).collect();
    Ok(Tor {
        resolution,
        complex,
        groups,
    })
}

/// `M box_R N`: the quotient of `M box N` by the subfunctor generated by
/// `[r.m, n] - [m, r.n]` at every level.
#[derive(Clone, Debug)]
pub struct RelBox {
    pub product: BoxProduct,
    pub functor: MackeyFunctor,
    /// `M box N -> M box_R N`.
    pub projection: MackeyMorphism,
    subs: Vec<Subquotient>,
}

pub fn rel_box(m: &GreenModule, n: &GreenModule) -> Result<RelBox> {
    if m.ring() != n.ring() {
        return Err(Error::FootMismatch("modules over different rings".into()));
    }
    let ring = m.ring();
    let g = ring.group().clone();
    let k = g.class_count();
    let b = box_product(m.underlying(), n.underlying())?;
    let f = b.functor();
    let mut seeds: Vec<Vec<Vec<Int>>> = vec![Vec::new(); k];
    for c in 0..k {
        let (nr, nm, nn) = (
            ring.functor().rank(c),
            m.underlying().rank(c),
            n.underlying().rank(c),
        );
        for i in 0..nr {
            let r = unit(nr, i);
            for a in 0..nm {
                for bb in 0..nn {
                    let (x, y) = (unit(nm, a), unit(nn, bb));
                    let lhs = b.diagonal_pair(c, &m.act(c, &r, &x), &y);
                    let rhs = b.diagonal_pair(c, &x, &n.act(c, &r, &y));
                    let d: Vec<Int> = lhs.iter().zip(&rhs).map(|(p, q)| p - q).collect();
                    if !f.level(c).is_zero_element(&d) {
                        seeds[c].push(d);
                    }
                }
            }
        }
    }
    let sub = generated_subfunctor(f, &seeds);
    let subs: Vec<Subquotient> = (0..k)
        .map(|c| Subquotient::new(Lattice::full(f.rank(c)), sub[c].clone()))
        .collect::<Result<_>>()?;
    let functor = induced_functor(f, &subs);
    let maps = (0..k)
        .map(|c| {
            let cols: Vec<Vec<Int>> = (0..f.rank(c))
                .map(|j| subs[c].project(&unit(f.rank(c), j)).expect("full"))
                .collect();
            Matrix::from_columns(&cols, functor.rank(c))
        })
        .collect();
    let projection = MackeyMorphism::new(f, &functor, maps)?;
    Ok(RelBox {
        product: b,
        functor,
        projection,
        subs,
    })
}

/// `f box_R g: M box_R N -> M' box_R N'` for module maps `f`, `g`.
pub fn rel_box_map(
    f: &MackeyMorphism,
    g: &MackeyMorphism,
    source: &RelBox,
    target: &RelBox,
) -> Result<MackeyMorphism> {
    let on_box = crate::convolution::box_map(f, g, &source.product, &target.product)?;
    let maps = (0..source.subs.len())
        .map(|c| {
            let m = &(target.projection.level(c) * on_box.level(c)) * &source.subs[c].lift_matrix();
            target.functor.level(c).normalize_matrix(&m)
        })
        .collect();
    MackeyMorphism::new(&source.functor, &target.functor, maps)
}

/// Levelwise lattices (containing the relations) of the smallest subfunctor
/// containing the given elements.
pub fn generated_subfunctor(f: &MackeyFunctor, seeds: &[Vec<Vec<Int>>]) -> Vec<Lattice> {
    let g = f.group();
    let k = g.class_count();
    let mut out: Vec<Lattice> = (0..k).map(|c| f.level(c).relation_lattice()).collect();
    for c in 0..k {
        if seeds[c].is_empty() {
            continue;
        }
        let gens = Matrix::from_columns(&seeds[c], f.rank(c));
        for (j, lat) in out.iter_mut().enumerate() {
            let basis = crate::burnside::hom_basis(&GSet::orbit(g, c), &GSet::orbit(g, j))
                .expect("same group");
            for code in basis {
                let img = &f.eval_code(c, j, code) * &gens;
                *lat = lat.sum(&Lattice::from_columns(&img));
            }
        }
    }
    out
}

/// The comparison `Tor_0^R(M, N) -> M box_R N`: on the summand
/// `M(G/C x -)` of degree 0 whose generator maps to `n` in `N(G/C)`,
/// `m -> tr_pr [m, res_pr n]`.
pub fn tor0_comparison(m: &GreenModule, t: &Tor, rb: &RelBox) -> Result<MackeyMorphism> {
    let g = m.ring().group().clone();
    let b = &rb.product;
    let n = t.resolution.target.underlying();
    let mut maps = Vec::with_capacity(g.class_count());
    for tl in 0..g.class_count() {
        let ot = GSet::orbit(&g, tl);
        let mut cols = Vec::new();
        for (&c, elem) in t.resolution.classes[0]
            .iter()
            .zip(&t.resolution.augmentation_elements)
        {
            let p = product(&GSet::orbit(&g, c), &ot)?;
            let pulled = n.restrict_along(&p.left)?.mul_vec(elem);
            let push = b.functor().transfer_along(&p.right)?;
            let width = m.underlying().value(&p.set).generator_count();
            for j in 0..width {
                let paired = b.diagonal_pair_on(&p.set, &unit(width, j), &pulled);
                cols.push(rb.projection.level(tl).mul_vec(&push.mul_vec(&paired)));
            }
        }
        maps.push(
            rb.functor
                .level(tl)
                .normalize_matrix(&Matrix::from_columns(&cols, rb.functor.rank(tl))),
        );
    }
    let c0 = t.complex.object(0).expect("degree 0");
    let on_chains = MackeyMorphism::new(c0, &rb.functor, maps)?;
    if let Some(d1) = t.complex.differential(1) {
        if !MackeyMorphism::then(d1, &on_chains)?.is_zero() {
            return Err(Error::axiom("Tor_0 comparison", "does not kill boundaries"));
        }
    }
    let h = &t.groups[0];
    let levels = (0..g.class_count())
        .map(|tl| {
            rb.functor
                .level(tl)
                .normalize_matrix(&(on_chains.level(tl) * &h.subs[tl].lift_matrix()))
        })
        .collect();
    MackeyMorphism::new(&h.functor, &rb.functor, levels)
}

/// A chain map `P -> P'` over the identity of the common target, as images
/// of the free generators of each `P_n` in `P'_n`.
pub fn compare_resolutions(a: &Resolution, b: &Resolution) -> Result<Vec<Vec<Vec<Int>>>> {
    if a.target.underlying() != b.target.underlying() {
        return Err(Error::FootMismatch(
            "resolutions of different modules".into(),
        ));
    }
    let len = a.free.len().min(b.free.len());
    let n = a.target.underlying();
    let lift = |f: &MackeyMorphism, c: usize, v: &[Int]| -> Result<Vec<Int>> {
        f.target()
            .level(c)
            .solve(f.level(c), v)
            .ok_or_else(|| Error::Invalid("element does not lift along the cover".into()))
    };
    let mut out: Vec<Vec<Vec<Int>>> = Vec::with_capacity(len);
    let first = a.classes[0]
        .iter()
        .zip(&a.augmentation_elements)
        .map(|(&c, e)| lift(&b.augmentation, c, &n.level(c).normalize(e)))
        .collect::<Result<Vec<_>>>()?;
    out.push(first);
    for k in 1..len {
        let prev = a.free[k - 1].morphism_to(b.free[k - 1].module(), &out[k - 1])?;
        let images = a.classes[k]
            .iter()
            .zip(&a.elements[k - 1])
            .map(|(&c, e)| lift(&b.differentials[k - 1], c, &prev.level(c).mul_vec(e)))
            .collect::<Result<Vec<_>>>()?;
        out.push(images);
    }
    Ok(out)
}

/// The maps `Tor_p(M, N) -> Tor_p(M, N)` between two computations, induced by
/// [`compare_resolutions`].
pub fn compare_tor(m: &GreenModule, a: &Tor, b: &Tor) -> Result<Vec<MackeyMorphism>> {
    let chain = compare_resolutions(&a.resolution, &b.resolution)?;
    (0..a.groups.len().min(b.groups.len()))
        .map(|p| {
            let (_, _, f) = induced_free_map(
                m,
                &a.resolution.classes[p],
                &b.resolution.classes[p],
                &chain[p],
            )?;
            a.groups[p].map_to(&b.groups[p], f.levels())
        })
        .collect()
}
