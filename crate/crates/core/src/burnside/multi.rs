//! Multi-spans `(x_1, ..., x_n) <- W -> z` and the composition of the
//! Burnside multicategory.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{ElemSet, GroupRef};
use crate::gset::{coproduct, product_many, pullback, GMap, GSet};
use crate::int::Int;
use crate::linalg::{kernel, Lattice};
use crate::matrix::Matrix;

use super::{hom_basis, BurnsideElement};

/// Transitive component of a G-set over `prod sets`: the class of the
/// stabilizer and the least point of its normalizer orbit.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct TupleCode {
    pub class: usize,
    pub point: Vec<usize>,
}

fn act_tuple(sets: &[GSet], g: usize, p: &[usize]) -> Vec<usize> {
    sets.iter().zip(p).map(|(s, &x)| s.act(g, x)).collect()
}

pub(crate) fn canonical_tuple(sets: &[GSet], stab: ElemSet, point: &[usize]) -> TupleCode {
    let g = sets[0].group();
    let (class, t) = g.classify(stab).expect("stabilizer is a subgroup");
    let start = act_tuple(sets, t, point);
    let best = g
        .class(class)
        .normalizer
        .iter()
        .map(|n| act_tuple(sets, n, &start))
        .min()
        .unwrap_or(start);
    TupleCode { class, point: best }
}

/// Transitive G-sets over `prod sets`, as sorted codes.
pub(crate) fn tuple_basis(sets: &[GSet]) -> Vec<TupleCode> {
    let g = sets[0].group();
    let mut out = Vec::new();
    for c in 0..g.class_count() {
        let rep = g.rep(c);
        let fixed: Vec<Vec<usize>> = sets.iter().map(|s| s.fixed_points(rep)).collect();
        let mut seen = HashSet::new();
        let mut idx = vec![0usize; sets.len()];
        if fixed.iter().any(|f| f.is_empty()) {
            continue;
        }
        'outer: loop {
            let p: Vec<usize> = idx.iter().zip(&fixed).map(|(&i, f)| f[i]).collect();
            let code = canonical_tuple(sets, rep, &p);
            if seen.insert(code.point.clone()) {
                out.push(code);
            }
            let mut k = sets.len();
            loop {
                if k == 0 {
                    break 'outer;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < fixed[k].len() {
                    break;
                }
                idx[k] = 0;
            }
        }
    }
    out.sort();
    out
}

/// Middle `G/L` of a code with its legs as point maps.
fn realize_tuple(sets: &[GSet], code: &TupleCode) -> (GSet, Vec<Vec<usize>>) {
    let g = sets[0].group();
    let reps = &g.cosets(code.class).reps;
    let legs = sets
        .iter()
        .zip(&code.point)
        .map(|(s, &x)| reps.iter().map(|&r| s.act(r, x)).collect())
        .collect();
    (GSet::orbit(g, code.class), legs)
}

/// An integer combination of multi-span codes from `feet` to `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiElement {
    pub feet: Vec<GSet>,
    pub target: GSet,
    pub terms: BTreeMap<TupleCode, Int>,
}

impl MultiElement {
    pub fn zero(feet: &[GSet], target: &GSet) -> MultiElement {
        MultiElement {
            feet: feet.to_vec(),
            target: target.clone(),
            terms: BTreeMap::new(),
        }
    }

    fn sets(&self) -> Vec<GSet> {
        let mut v = self.feet.clone();
        v.push(self.target.clone());
        v
    }

    fn add_term(&mut self, c: TupleCode, k: Int) {
        if k.is_zero() {
            return;
        }
        let e = self.terms.entry(c.clone()).or_insert(Int::ZERO);
        *e += k;
        if e.is_zero() {
            self.terms.remove(&c);
        }
    }

    pub fn basis_element(feet: &[GSet], target: &GSet, code: TupleCode) -> MultiElement {
        let mut m = MultiElement::zero(feet, target);
        m.add_term(code, Int::ONE);
        m
    }

    /// A one-foot multi-span from an ordinary span.
    pub fn from_span(s: &BurnsideElement) -> MultiElement {
        let mut m = MultiElement::zero(&[s.source().clone()], s.target());
        for (c, k) in s.terms() {
            m.add_term(
                TupleCode {
                    class: c.class,
                    point: vec![c.x, c.y],
                },
                k.clone(),
            );
        }
        m
    }

    pub fn identity(x: &GSet) -> MultiElement {
        MultiElement::from_span(&BurnsideElement::identity(x))
    }

    pub fn to_vector(&self, basis: &[TupleCode]) -> Result<Vec<Int>> {
        let index: HashMap<&TupleCode, usize> =
            basis.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let mut v = vec![Int::ZERO; basis.len()];
        for (c, k) in &self.terms {
            let i = index
                .get(c)
                .ok_or_else(|| Error::Invalid(format!("code {c:?} not in basis")))?;
            v[*i] = k.clone();
        }
        Ok(v)
    }
}

/// Basis of multi-spans from `feet` to `z`.
pub fn multi_basis(feet: &[GSet], z: &GSet) -> Result<Vec<TupleCode>> {
    if feet.is_empty() {
        return Err(Error::Invalid(
            "a multi-span needs at least one foot".into(),
        ));
    }
    for f in feet {
        f.same_group(z)?;
    }
    let mut sets = feet.to_vec();
    sets.push(z.clone());
    Ok(tuple_basis(&sets))
}

/// Canonical form of the multi-span with the given middle and legs.
pub fn multi_canonicalize(legs: &[GMap], to_z: &GMap) -> Result<MultiElement> {
    let middle = &to_z.source;
    for l in legs {
        if l.source != *middle {
            return Err(Error::FootMismatch("legs have different sources".into()));
        }
    }
    let feet: Vec<GSet> = legs.iter().map(|l| l.target.clone()).collect();
    let mut sets = feet.clone();
    sets.push(to_z.target.clone());
    let g = middle.group();
    for l in legs.iter().chain([to_z]) {
        for e in g.elements() {
            for u in 0..middle.size() {
                if l.map[middle.act(e, u)] != l.target.act(e, l.map[u]) {
                    return Err(Error::NotEquivariant("multi-span leg".into()));
                }
            }
        }
    }
    let mut out = MultiElement::zero(&feet, &to_z.target);
    for o in middle.orbits() {
        let p: Vec<usize> = legs.iter().chain([to_z]).map(|l| l.map[o.base]).collect();
        out.add_term(canonical_tuple(&sets, g.rep(o.class), &p), Int::ONE);
    }
    Ok(out)
}

fn mixed_radix(sizes: &[usize], digits: impl Iterator<Item = usize>) -> usize {
    sizes.iter().zip(digits).fold(0, |acc, (&n, d)| acc * n + d)
}

/// Composite of `phi: (y_1..y_I) -> z` with `psi_i: x_{J_i} -> y_i`; the feet
/// of the result are the feet of the `psi_i` in order.
pub fn multi_compose(phi: &MultiElement, psis: &[MultiElement]) -> Result<MultiElement> {
    if phi.feet.len() != psis.len() {
        return Err(Error::Dimension(
            "one inner multi-span per foot is required".into(),
        ));
    }
    for (y, p) in phi.feet.iter().zip(psis) {
        if *y != p.target {
            return Err(Error::FootMismatch(
                "inner target differs from outer foot".into(),
            ));
        }
    }
    let g: GroupRef = phi.target.group().clone();
    let new_feet: Vec<GSet> = psis.iter().flat_map(|p| p.feet.iter().cloned()).collect();
    let mut out_sets = new_feet.clone();
    out_sets.push(phi.target.clone());
    let mut out = MultiElement::zero(&new_feet, &phi.target);
    let (yprod, _) = product_many(&phi.feet, &g)?;
    let ysizes: Vec<usize> = phi.feet.iter().map(|y| y.size()).collect();
    let phi_sets = phi.sets();
    let psi_sets: Vec<Vec<GSet>> = psis.iter().map(|p| p.sets()).collect();
    let psi_terms: Vec<Vec<(&TupleCode, &Int)>> =
        psis.iter().map(|p| p.terms.iter().collect()).collect();
    if psi_terms.iter().any(|t| t.is_empty()) {
        return Ok(out);
    }
    for (cphi, kphi) in &phi.terms {
        let (wset, wlegs) = realize_tuple(&phi_sets, cphi);
        let w_to_y = GMap::new_unchecked(
            wset.clone(),
            yprod.clone(),
            (0..wset.size())
                .map(|w| mixed_radix(&ysizes, wlegs[..ysizes.len()].iter().map(|l| l[w])))
                .collect(),
        );
        let mut choice = vec![0usize; psis.len()];
        loop {
            let mut k = kphi.clone();
            let mut middles = Vec::new();
            let mut legs = Vec::new();
            for (i, &c) in choice.iter().enumerate() {
                let (code, coeff) = psi_terms[i][c];
                k = &k * coeff;
                let (m, l) = realize_tuple(&psi_sets[i], code);
                middles.push(m);
                legs.push(l);
            }
            let (vset, vproj) = product_many(&middles, &g)?;
            let v_to_y = GMap::new_unchecked(
                vset.clone(),
                yprod.clone(),
                (0..vset.size())
                    .map(|v| {
                        mixed_radix(
                            &ysizes,
                            legs.iter()
                                .zip(&vproj)
                                .map(|(l, pr)| l.last().unwrap()[pr.map[v]]),
                        )
                    })
                    .collect(),
            );
            let pb = pullback(&w_to_y, &v_to_y)?;
            for o in pb.set.orbits() {
                let (w, v) = pb.pairs[o.base];
                let mut point = Vec::with_capacity(out_sets.len());
                for (l, pr) in legs.iter().zip(&vproj) {
                    let inner = pr.map[v];
                    for leg in &l[..l.len() - 1] {
                        point.push(leg[inner]);
                    }
                }
                point.push(wlegs.last().unwrap()[w]);
                out.add_term(
                    canonical_tuple(&out_sets, g.rep(o.class), &point),
                    k.clone(),
                );
            }
            // next choice
            let mut i = psis.len();
            let mut advanced = false;
            while i > 0 {
                i -= 1;
                choice[i] += 1;
                if choice[i] < psi_terms[i].len() {
                    advanced = true;
                    break;
                }
                choice[i] = 0;
            }
            if !advanced {
                break;
            }
        }
    }
    Ok(out)
}

/// Outcome of the coend test for one grouping.
#[derive(Clone, Debug, Serialize)]
pub struct PromonoidalReport {
    pub feet: Vec<usize>,
    pub target: usize,
    pub grouping: Vec<Vec<usize>>,
    pub generators: usize,
    pub relations: usize,
    pub target_rank: usize,
    pub well_defined: bool,
    pub surjective: bool,
    pub injective: bool,
}

impl PromonoidalReport {
    pub fn passed(&self) -> bool {
        self.well_defined && self.surjective && self.injective
    }
}

/// Checks that composition induces an isomorphism
/// `coend_{y_1..y_I} Z[Mult(y; z)] ⊗ ⊗_i Z[Mult(x_{J_i}; y_i)] -> Z[Mult(x_{J_1}, ..., x_{J_I}; z)]`,
/// with `y_i` running over orbits and relations from transitive spans between orbits.
/// `feet` and `target` are class indices; `grouping` lists the nonempty blocks `J_i`.
pub fn promonoidal_check(
    g: &GroupRef,
    feet: &[usize],
    target: usize,
    grouping: &[Vec<usize>],
) -> Result<PromonoidalReport> {
    let mut covered: Vec<usize> = grouping.iter().flatten().copied().collect();
    covered.sort();
    if covered != (0..feet.len()).collect::<Vec<_>>() || grouping.iter().any(|b| b.is_empty()) {
        return Err(Error::Invalid(
            "grouping must partition the feet into nonempty blocks".into(),
        ));
    }
    let orbits: Vec<GSet> = (0..g.class_count()).map(|c| GSet::orbit(g, c)).collect();
    let z = &orbits[target];
    let nblocks = grouping.len();
    let block_feet: Vec<Vec<GSet>> = grouping
        .iter()
        .map(|b| b.iter().map(|&i| orbits[feet[i]].clone()).collect())
        .collect();
    // psi_basis[i][o]: basis of Mult(x_{J_i}; O_o)
    let psi_basis: Vec<Vec<Vec<TupleCode>>> = block_feet
        .iter()
        .map(|bf| {
            orbits
                .iter()
                .map(|o| multi_basis(bf, o))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let all_feet: Vec<GSet> = block_feet.iter().flatten().cloned().collect();
    let target_basis = multi_basis(&all_feet, z)?;

    type Key = (Vec<usize>, TupleCode, Vec<TupleCode>);
    let mut index: HashMap<Key, usize> = HashMap::new();
    let mut keys: Vec<Key> = Vec::new();
    let k = orbits.len();
    let tuples: Vec<Vec<usize>> = (0..k.pow(nblocks as u32))
        .map(|mut n| {
            let mut t = vec![0; nblocks];
            for i in (0..nblocks).rev() {
                t[i] = n % k;
                n /= k;
            }
            t
        })
        .collect();
    let phi_basis: HashMap<Vec<usize>, Vec<TupleCode>> = tuples
        .iter()
        .map(|t| {
            let ys: Vec<GSet> = t.iter().map(|&o| orbits[o].clone()).collect();
            Ok((t.clone(), multi_basis(&ys, z)?))
        })
        .collect::<Result<_>>()?;
    for t in &tuples {
        for phi in &phi_basis[t] {
            for_each_choice(t, &psi_basis, |psis| {
                let key = (t.clone(), phi.clone(), psis.to_vec());
                index.insert(key.clone(), keys.len());
                keys.push(key);
            });
        }
    }
    let ngen = keys.len();

    let phi_elem = |t: &[usize], c: &TupleCode| {
        let ys: Vec<GSet> = t.iter().map(|&o| orbits[o].clone()).collect();
        MultiElement::basis_element(&ys, z, c.clone())
    };
    let psi_elem = |i: usize, o: usize, c: &TupleCode| {
        MultiElement::basis_element(&block_feet[i], &orbits[o], c.clone())
    };

    // Composition map, one column per generator.
    let mut fcols: Vec<Vec<Int>> = Vec::with_capacity(ngen);
    for (t, phi, psis) in &keys {
        let inner: Vec<MultiElement> = psis
            .iter()
            .enumerate()
            .map(|(i, c)| psi_elem(i, t[i], c))
            .collect();
        let comp = multi_compose(&phi_elem(t, phi), &inner)?;
        fcols.push(comp.to_vector(&target_basis)?);
    }
    let f = Matrix::from_columns(&fcols, target_basis.len());

    // Coend relations.
    let mut rels: Vec<Vec<Int>> = Vec::new();
    for i in 0..nblocks {
        for t in &tuples {
            for src in 0..k {
                let s_basis = hom_basis(&orbits[src], &orbits[t[i]])?;
                let mut t2 = t.clone();
                t2[i] = src;
                for s in &s_basis {
                    let s_multi = MultiElement::from_span(&BurnsideElement::basis_element(
                        &orbits[src],
                        &orbits[t[i]],
                        *s,
                    ));
                    for phi in &phi_basis[t] {
                        // phi precomposed with s in slot i
                        let inner: Vec<MultiElement> = (0..nblocks)
                            .map(|j| {
                                if j == i {
                                    s_multi.clone()
                                } else {
                                    MultiElement::identity(&orbits[t[j]])
                                }
                            })
                            .collect();
                        let lhs_phi = multi_compose(&phi_elem(t, phi), &inner)?;
                        for_each_choice(&t2, &psi_basis, |psis| {
                            let mut row = vec![Int::ZERO; ngen];
                            for (c, kk) in &lhs_phi.terms {
                                row[index[&(t2.clone(), c.clone(), psis.to_vec())]] += kk.clone();
                            }
                            // s after psi_i
                            let sp = multi_compose(&s_multi, &[psi_elem(i, src, &psis[i])])
                                .expect("composable");
                            for (c, kk) in &sp.terms {
                                let mut p2 = psis.to_vec();
                                p2[i] = c.clone();
                                row[index[&(t.clone(), phi.clone(), p2)]] -= kk.clone();
                            }
                            if row.iter().any(|v| !v.is_zero()) {
                                rels.push(row);
                            }
                        });
                    }
                }
            }
        }
    }
    let nrel = rels.len();
    let r = Lattice::from_rows(&Matrix::from_rows(rels, ngen));
    let ker = Lattice::from_columns(&kernel(&f));
    let img = Lattice::from_columns(&f);
    Ok(PromonoidalReport {
        feet: feet.to_vec(),
        target,
        grouping: grouping.to_vec(),
        generators: ngen,
        relations: nrel,
        target_rank: target_basis.len(),
        well_defined: ker.contains_lattice(&r),
        surjective: img.contains_lattice(&Lattice::full(target_basis.len())),
        injective: r.contains_lattice(&ker),
    })
}

fn for_each_choice(
    t: &[usize],
    psi_basis: &[Vec<Vec<TupleCode>>],
    mut f: impl FnMut(&[TupleCode]),
) {
    let lists: Vec<&Vec<TupleCode>> = t
        .iter()
        .enumerate()
        .map(|(i, &o)| &psi_basis[i][o])
        .collect();
    if lists.iter().any(|l| l.is_empty()) {
        return;
    }
    let mut idx = vec![0usize; lists.len()];
    loop {
        let choice: Vec<TupleCode> = idx.iter().zip(&lists).map(|(&j, l)| l[j].clone()).collect();
        f(&choice);
        let mut i = lists.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < lists[i].len() {
                break;
            }
            idx[i] = 0;
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ProductDecompositionReport {
    pub bound: usize,
    /// Iso classes of G-sets over the coproduct, of size at most `bound`.
    pub left: usize,
    /// Tuples of iso classes over the summands, of total size at most `bound`.
    pub right: usize,
    pub bijective: bool,
}

/// Multi-spans to a tuple `(y_j)` with grouping `I = ⊔ I_j` are G-sets over
/// `⊔_j (prod_{i in I_j} x_i) x y_j`; checks, by enumerating all such G-sets of
/// size at most `bound`, that splitting the middle along the summands is a
/// bijection onto tuples of per-`j` multi-spans.
pub fn product_decomposition_check(
    g: &GroupRef,
    feet: &[GSet],
    targets: &[GSet],
    grouping: &[Vec<usize>],
    bound: usize,
) -> Result<ProductDecompositionReport> {
    if grouping.len() != targets.len() {
        return Err(Error::Dimension("one block per target".into()));
    }
    let pieces: Vec<GSet> = grouping
        .iter()
        .zip(targets)
        .map(|(b, y)| {
            let mut fs: Vec<GSet> = b.iter().map(|&i| feet[i].clone()).collect();
            fs.push(y.clone());
            product_many(&fs, g).map(|p| p.0)
        })
        .collect::<Result<_>>()?;
    let mut total = GSet::empty(g);
    let mut offsets = Vec::new();
    for p in &pieces {
        offsets.push(total.size());
        total = coproduct(&total, p)?.set;
    }
    let over_total = tuple_basis(&[total.clone()]);
    let over_pieces: Vec<Vec<TupleCode>> =
        pieces.iter().map(|p| tuple_basis(&[p.clone()])).collect();

    let weight = |c: &TupleCode| g.index(c.class);
    let left = multisets(&over_total, &weight, bound);
    let mut seen: HashSet<Vec<Vec<TupleCode>>> = HashSet::new();
    let mut bijective = true;
    for m in &left {
        // Split each transitive component by the summand containing its image.
        let mut parts: Vec<Vec<TupleCode>> = vec![Vec::new(); pieces.len()];
        for c in m {
            let t = c.point[0];
            let j = offsets.iter().rposition(|&o| o <= t).expect("offset");
            let local = canonical_tuple(&[pieces[j].clone()], g.rep(c.class), &[t - offsets[j]]);
            parts[j].push(local);
        }
        for p in &mut parts {
            p.sort();
        }
        if !seen.insert(parts) {
            bijective = false;
        }
    }
    // Count tuples of multisets with total weight <= bound.
    let per: Vec<Vec<usize>> = over_pieces
        .iter()
        .map(|b| {
            let mut counts = vec![0usize; bound + 1];
            for m in multisets(b, &weight, bound) {
                counts[m.iter().map(&weight).sum::<usize>()] += 1;
            }
            counts
        })
        .collect();
    let mut conv = vec![0usize; bound + 1];
    conv[0] = 1;
    for c in &per {
        let mut next = vec![0usize; bound + 1];
        for (a, &x) in conv.iter().enumerate() {
            for (b, &y) in c.iter().enumerate() {
                if a + b <= bound {
                    next[a + b] += x * y;
                }
            }
        }
        conv = next;
    }
    let right: usize = conv.iter().sum();
    Ok(ProductDecompositionReport {
        bound,
        left: left.len(),
        right,
        bijective: bijective && seen.len() == right,
    })
}

/// All multisets of `items` with total weight at most `bound`, as sorted lists.
fn multisets(
    items: &[TupleCode],
    weight: &dyn Fn(&TupleCode) -> usize,
    bound: usize,
) -> Vec<Vec<TupleCode>> {
    fn go(
        items: &[TupleCode],
        weight: &dyn Fn(&TupleCode) -> usize,
        start: usize,
        left: usize,
        cur: &mut Vec<TupleCode>,
        out: &mut Vec<Vec<TupleCode>>,
    ) {
        out.push(cur.clone());
        for i in start..items.len() {
            let w = weight(&items[i]);
            if w <= left {
                cur.push(items[i].clone());
                go(items, weight, i, left - w, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(items, weight, 0, bound, &mut Vec::new(), &mut out);
    out
}
