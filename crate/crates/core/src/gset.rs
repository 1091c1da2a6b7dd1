//! Finite G-sets and equivariant maps.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{Elem, ElemSet, GroupRef};

/// One orbit of a G-set, identified with `G/H` for the representative `H` of its class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub class: usize,
    /// A point whose stabilizer is exactly the class representative.
    pub base: usize,
    /// `points[k]` is `r_k . base`, where `r_k` is the k-th coset representative of `G/H`.
    pub points: Vec<usize>,
}

struct Inner {
    group: GroupRef,
    size: usize,
    /// `action[g * size + x] = g . x`
    action: Vec<usize>,
    orbits: Vec<Orbit>,
    /// point -> (orbit index, coset index)
    locate: Vec<(usize, usize)>,
}

/// A finite G-set given by its action table.
#[derive(Clone)]
pub struct GSet(Arc<Inner>);

impl PartialEq for GSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (*self.0.group == *other.0.group
                && self.0.size == other.0.size
                && self.0.action == other.0.action)
    }
}

impl Eq for GSet {}

impl fmt::Debug for GSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GSet(|X|={}, orbits={:?})",
            self.size(),
            self.orbit_type()
        )
    }
}

impl GSet {
    /// Validates an action table `action[g][x] = g . x`.
    pub fn new(group: GroupRef, action: Vec<Vec<usize>>) -> Result<GSet> {
        if action.len() != group.order() {
            return Err(Error::Malformed(format!(
                "action has {} rows, group order is {}",
                action.len(),
                group.order()
            )));
        }
        let size = action.first().map_or(0, |r| r.len());
        let mut flat = Vec::with_capacity(size * group.order());
        for (g, row) in action.iter().enumerate() {
            if row.len() != size {
                return Err(Error::Malformed(format!("action row {g} has wrong length")));
            }
            let mut seen = vec![false; size];
            for &y in row {
                if y >= size || seen[y] {
                    return Err(Error::Malformed(format!(
                        "element {g} does not act by a permutation"
                    )));
                }
                seen[y] = true;
            }
            flat.extend_from_slice(row);
        }
        for x in 0..size {
            if flat[x] != x {
                return Err(Error::Invalid("identity does not act trivially".into()));
            }
        }
        for g in group.elements() {
            for h in group.elements() {
                let gh = group.mul(g, h);
                for x in 0..size {
                    if flat[gh * size + x] != flat[g * size + flat[h * size + x]] {
                        return Err(Error::Invalid(format!(
                            "action is not compatible at ({g}, {h}, {x})"
                        )));
                    }
                }
            }
        }
        Ok(GSet::from_flat(group, size, flat))
    }

    fn from_flat(group: GroupRef, size: usize, action: Vec<usize>) -> GSet {
        let n = group.order();
        let stab = |x: usize| ElemSet::from_elems((0..n).filter(|&g| action[g * size + x] == x));
        let mut orbit_of = vec![usize::MAX; size];
        let mut raw: Vec<Orbit> = Vec::new();
        for x in 0..size {
            if orbit_of[x] != usize::MAX {
                continue;
            }
            let mut members: Vec<usize> = (0..n).map(|g| action[g * size + x]).collect();
            members.sort_unstable();
            members.dedup();
            for &y in &members {
                orbit_of[y] = raw.len();
            }
            let (class, _) = group.classify(stab(x)).expect("stabilizer is a subgroup");
            let rep = group.rep(class);
            let base = *members
                .iter()
                .find(|&&y| stab(y) == rep)
                .expect("some point has the representative as stabilizer");
            let points = group
                .cosets(class)
                .reps
                .iter()
                .map(|&r| action[r * size + base])
                .collect();
            raw.push(Orbit {
                class,
                base,
                points,
            });
        }
        // Orbits are listed in order of first point; sort by class, stable.
        raw.sort_by_key(|o| o.class);
        let mut locate = vec![(0, 0); size];
        for (i, o) in raw.iter().enumerate() {
            for (k, &p) in o.points.iter().enumerate() {
                locate[p] = (i, k);
            }
        }
        GSet(Arc::new(Inner {
            group,
            size,
            action,
            orbits: raw,
            locate,
        }))
    }

    pub fn empty(group: &GroupRef) -> GSet {
        GSet::from_flat(group.clone(), 0, Vec::new())
    }

    /// The one-point G-set.
    pub fn point(group: &GroupRef) -> GSet {
        GSet::orbit(group, group.top_class())
    }

    /// The orbit `G/H` for the representative `H` of a class, points labelled by coset index.
    pub fn orbit(group: &GroupRef, class: usize) -> GSet {
        GSet::from_orbits(group, &[(class, 1)])
    }

    /// Canonical disjoint union of orbits, ordered by class.
    pub fn from_orbits(group: &GroupRef, orbit_type: &[(usize, usize)]) -> GSet {
        let mut types: Vec<(usize, usize)> = orbit_type.to_vec();
        types.sort();
        let mut blocks: Vec<usize> = Vec::new();
        for &(c, m) in &types {
            blocks.extend(std::iter::repeat(c).take(m));
        }
        let size: usize = blocks.iter().map(|&c| group.index(c)).sum();
        let n = group.order();
        let mut action = vec![0; n * size];
        let mut offset = 0;
        for &c in &blocks {
            let cos = group.cosets(c);
            for g in 0..n {
                for (k, &r) in cos.reps.iter().enumerate() {
                    action[g * size + offset + k] = offset + cos.coset_of[group.mul(g, r)];
                }
            }
            offset += cos.len();
        }
        GSet::from_flat(group.clone(), size, action)
    }

    pub fn group(&self) -> &GroupRef {
        &self.0.group
    }

    pub fn size(&self) -> usize {
        self.0.size
    }

    pub fn is_empty(&self) -> bool {
        self.0.size == 0
    }

    pub fn act(&self, g: Elem, x: usize) -> usize {
        self.0.action[g * self.0.size + x]
    }

    pub fn action_table(&self) -> Vec<Vec<usize>> {
        let s = self.0.size;
        (0..self.0.group.order())
            .map(|g| self.0.action[g * s..(g + 1) * s].to_vec())
            .collect()
    }

    pub fn orbits(&self) -> &[Orbit] {
        &self.0.orbits
    }

    /// `(orbit index, coset index)` of a point.
    pub fn locate(&self, x: usize) -> (usize, usize) {
        self.0.locate[x]
    }

    /// Multiset of orbit classes as `(class, multiplicity)`, sorted by class.
    pub fn orbit_type(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for o in &self.0.orbits {
            match out.last_mut() {
                Some((c, m)) if *c == o.class => *m += 1,
                _ => out.push((o.class, 1)),
            }
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.0.orbits.len() == 1
    }

    pub fn stabilizer(&self, x: usize) -> ElemSet {
        ElemSet::from_elems(self.0.group.elements().filter(|&g| self.act(g, x) == x))
    }

    /// Points fixed by every element of `h`.
    pub fn fixed_points(&self, h: ElemSet) -> Vec<usize> {
        (0..self.size())
            .filter(|&x| h.iter().all(|g| self.act(g, x) == x))
            .collect()
    }

    /// Isomorphism onto the canonical form [`GSet::from_orbits`] of the orbit type:
    /// `iso[x]` is the canonical label of `x`.
    pub fn canonical_iso(&self) -> Vec<usize> {
        let g = &self.0.group;
        let mut offsets = Vec::with_capacity(self.0.orbits.len());
        let mut off = 0;
        for o in &self.0.orbits {
            offsets.push(off);
            off += g.index(o.class);
        }
        (0..self.size())
            .map(|x| {
                let (i, k) = self.locate(x);
                offsets[i] + k
            })
            .collect()
    }

    pub fn canonical(&self) -> (GSet, GMap) {
        let c = GSet::from_orbits(&self.0.group, &self.orbit_type());
        let map = GMap::new_unchecked(self.clone(), c.clone(), self.canonical_iso());
        (c, map)
    }

    pub fn same_group(&self, other: &GSet) -> Result<()> {
        if *self.0.group == *other.0.group {
            Ok(())
        } else {
            Err(Error::GroupMismatch(format!(
                "{} vs {}",
                self.0.group.name(),
                other.0.group.name()
            )))
        }
    }

    /// Relabels points: `perm[x]` is the new label of `x`.
    pub fn relabel(&self, perm: &[usize]) -> Result<(GSet, GMap)> {
        let s = self.size();
        if perm.len() != s {
            return Err(Error::Dimension("relabeling has wrong length".into()));
        }
        let mut action = vec![0; self.0.action.len()];
        for g in self.0.group.elements() {
            for x in 0..s {
                action[g * s + perm[x]] = perm[self.act(g, x)];
            }
        }
        let y = GSet::from_flat(self.0.group.clone(), s, action);
        let m = GMap::new(self.clone(), y.clone(), perm.to_vec())?;
        Ok((y, m))
    }
}

/// An equivariant map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GMap {
    pub source: GSet,
    pub target: GSet,
    pub map: Vec<usize>,
}

impl GMap {
    pub fn new(source: GSet, target: GSet, map: Vec<usize>) -> Result<GMap> {
        source.same_group(&target)?;
        if map.len() != source.size() || map.iter().any(|&y| y >= target.size()) {
            return Err(Error::Dimension(
                "map does not fit source and target".into(),
            ));
        }
        for g in source.group().elements() {
            for x in 0..source.size() {
                if map[source.act(g, x)] != target.act(g, map[x]) {
                    return Err(Error::NotEquivariant(format!(
                        "f({g} . {x}) != {g} . f({x})"
                    )));
                }
            }
        }
        Ok(GMap {
            source,
            target,
            map,
        })
    }

    pub(crate) fn new_unchecked(source: GSet, target: GSet, map: Vec<usize>) -> GMap {
        GMap {
            source,
            target,
            map,
        }
    }

    pub fn identity(x: &GSet) -> GMap {
        GMap::new_unchecked(x.clone(), x.clone(), (0..x.size()).collect())
    }

    /// The unique map to the point.
    pub fn to_point(x: &GSet) -> GMap {
        GMap::new_unchecked(x.clone(), GSet::point(x.group()), vec![0; x.size()])
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// `self` after `first`.
    pub fn after(&self, first: &GMap) -> Result<GMap> {
        if first.target != self.source {
            return Err(Error::FootMismatch("maps are not composable".into()));
        }
        Ok(GMap::new_unchecked(
            first.source.clone(),
            self.target.clone(),
            first.map.iter().map(|&x| self.map[x]).collect(),
        ))
    }

    pub fn is_bijective(&self) -> bool {
        if self.source.size() != self.target.size() {
            return false;
        }
        let mut seen = vec![false; self.target.size()];
        self.map
            .iter()
            .all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn inverse(&self) -> Option<GMap> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        Some(GMap::new_unchecked(
            self.target.clone(),
            self.source.clone(),
            inv,
        ))
    }
}

/// `X x Y` with pairs labelled `x * |Y| + y`.
#[derive(Clone, Debug)]
pub struct Product {
    pub set: GSet,
    pub left: GMap,
    pub right: GMap,
}

impl Product {
    pub fn pair(&self, x: usize, y: usize) -> usize {
        x * self.right.target.size() + y
    }

    pub fn split(&self, p: usize) -> (usize, usize) {
        let ny = self.right.target.size();
        (p / ny, p % ny)
    }
}

pub fn product(x: &GSet, y: &GSet) -> Result<Product> {
    x.same_group(y)?;
    let g = x.group();
    let (nx, ny) = (x.size(), y.size());
    let size = nx * ny;
    let mut action = vec![0; g.order() * size];
    for e in g.elements() {
        for a in 0..nx {
            let ea = x.act(e, a) * ny;
            for b in 0..ny {
                action[e * size + a * ny + b] = ea + y.act(e, b);
            }
        }
    }
    let set = GSet::from_flat(g.clone(), size, action);
    let left = GMap::new_unchecked(
        set.clone(),
        x.clone(),
        (0..size).map(|p| p / ny.max(1)).collect(),
    );
    let right = GMap::new_unchecked(
        set.clone(),
        y.clone(),
        (0..size).map(|p| p % ny.max(1)).collect(),
    );
    Ok(Product { set, left, right })
}

/// Iterated product with tuples in lexicographic (mixed-radix) order.
pub fn product_many(factors: &[GSet], group: &GroupRef) -> Result<(GSet, Vec<GMap>)> {
    let mut acc = GSet::point(group);
    let mut projections: Vec<Vec<usize>> = Vec::new();
    for f in factors {
        let p = product(&acc, f)?;
        projections = projections
            .into_iter()
            .map(|proj| (0..p.set.size()).map(|q| proj[p.split(q).0]).collect())
            .collect();
        projections.push((0..p.set.size()).map(|q| p.split(q).1).collect());
        acc = p.set;
    }
    let maps = projections
        .into_iter()
        .zip(factors)
        .map(|(m, f)| GMap::new_unchecked(acc.clone(), f.clone(), m))
        .collect();
    Ok((acc, maps))
}

/// `X ⊔ Y`, points of `X` first.
#[derive(Clone, Debug)]
pub struct Coproduct {
    pub set: GSet,
    pub left: GMap,
    pub right: GMap,
}

pub fn coproduct(x: &GSet, y: &GSet) -> Result<Coproduct> {
    x.same_group(y)?;
    let g = x.group();
    let (nx, ny) = (x.size(), y.size());
    let size = nx + ny;
    let mut action = vec![0; g.order() * size];
    for e in g.elements() {
        for a in 0..nx {
            action[e * size + a] = x.act(e, a);
        }
        for b in 0..ny {
            action[e * size + nx + b] = nx + y.act(e, b);
        }
    }
    let set = GSet::from_flat(g.clone(), size, action);
    let left = GMap::new_unchecked(x.clone(), set.clone(), (0..nx).collect());
    let right = GMap::new_unchecked(y.clone(), set.clone(), (nx..size).collect());
    Ok(Coproduct { set, left, right })
}

/// `X x_Z Y` with pairs in lexicographic order.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub set: GSet,
    pub pairs: Vec<(usize, usize)>,
    pub left: GMap,
    pub right: GMap,
}

pub fn pullback(f: &GMap, g: &GMap) -> Result<Pullback> {
    if f.target != g.target {
        return Err(Error::FootMismatch(
            "pullback legs have different targets".into(),
        ));
    }
    let grp = f.source.group();
    let mut pairs = Vec::new();
    let mut index = HashMap::new();
    for x in 0..f.source.size() {
        for y in 0..g.source.size() {
            if f.map[x] == g.map[y] {
                index.insert((x, y), pairs.len());
                pairs.push((x, y));
            }
        }
    }
    let size = pairs.len();
    let mut action = vec![0; grp.order() * size];
    for e in grp.elements() {
        for (i, &(x, y)) in pairs.iter().enumerate() {
            action[e * size + i] = index[&(f.source.act(e, x), g.source.act(e, y))];
        }
    }
    let set = GSet::from_flat(grp.clone(), size, action);
    let left = GMap::new_unchecked(
        set.clone(),
        f.source.clone(),
        pairs.iter().map(|p| p.0).collect(),
    );
    let right = GMap::new_unchecked(
        set.clone(),
        g.source.clone(),
        pairs.iter().map(|p| p.1).collect(),
    );
    Ok(Pullback {
        set,
        pairs,
        left,
        right,
    })
}

/// An equivariant bijection `X -> Y`, when one exists.
pub fn find_isomorphism(x: &GSet, y: &GSet) -> Option<GMap> {
    if x.same_group(y).is_err() || x.orbit_type() != y.orbit_type() {
        return None;
    }
    let (_, to_c) = x.canonical();
    let (_, from_c) = y.canonical();
    let back = from_c.inverse()?;
    let map: Vec<usize> = to_c.map.iter().map(|&c| back.map[c]).collect();
    GMap::new(x.clone(), y.clone(), map).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    fn s3() -> GroupRef {
        FiniteGroup::named("S3").unwrap()
    }

    /// Backtracking search for an equivariant bijection, independent of orbit decomposition.
    fn brute_iso(x: &GSet, y: &GSet) -> bool {
        fn go(
            x: &GSet,
            y: &GSet,
            map: &mut Vec<Option<usize>>,
            used: &mut Vec<bool>,
            i: usize,
        ) -> bool {
            if i == x.size() {
                return true;
            }
            if map[i].is_some() {
                return go(x, y, map, used, i + 1);
            }
            for t in 0..y.size() {
                if used[t] {
                    continue;
                }
                // Assigning i -> t forces g.i -> g.t on the whole orbit.
                let mut assigned = Vec::new();
                let mut ok = true;
                for g in x.group().elements() {
                    let (a, b) = (x.act(g, i), y.act(g, t));
                    match map[a] {
                        Some(bb) if bb != b => ok = false,
                        Some(_) => {}
                        None => {
                            if used[b] {
                                ok = false;
                            } else {
                                map[a] = Some(b);
                                used[b] = true;
                                assigned.push(a);
                            }
                        }
                    }
                    if !ok {
                        break;
                    }
                }
                if ok && go(x, y, map, used, i + 1) {
                    return true;
                }
                for a in assigned {
                    used[map[a].unwrap()] = false;
                    map[a] = None;
                }
            }
            false
        }
        x.size() == y.size()
            && go(
                x,
                y,
                &mut vec![None; x.size()],
                &mut vec![false; y.size()],
                0,
            )
    }

    #[test]
    fn decompose_examples() {
        let g = s3();
        assert!(GSet::empty(&g).orbit_type().is_empty());
        let regular = GSet::orbit(&g, 0);
        assert_eq!(regular.orbit_type(), vec![(0, 1)]);
        // S3 on three letters: the permutation action of the labelled elements.
        let perms: Vec<Vec<usize>> = {
            let mut v: Vec<Vec<usize>> = vec![
                vec![0, 1, 2],
                vec![0, 2, 1],
                vec![1, 0, 2],
                vec![1, 2, 0],
                vec![2, 0, 1],
                vec![2, 1, 0],
            ];
            v.sort();
            v
        };
        let letters = GSet::new(g.clone(), perms).unwrap();
        assert_eq!(letters.orbit_type(), vec![(1, 1)]);
        let c = letters.canonical_iso();
        let mut sorted = c.clone();
        sorted.sort();
        assert_eq!(sorted, vec![0, 1, 2]);
    }

    #[test]
    fn product_examples() {
        let c2 = FiniteGroup::named("C2").unwrap();
        let free = GSet::orbit(&c2, 0);
        let p = product(&free, &free).unwrap();
        assert_eq!(p.set.orbit_type(), vec![(0, 2)]);
        let g = s3();
        let x = GSet::orbit(&g, 1);
        let p = product(&x, &x).unwrap();
        assert_eq!(p.set.size(), 9);
        assert_eq!(p.set.orbit_type(), vec![(0, 1), (1, 1)]);
        let pt = GSet::point(&g);
        let p = product(&x, &pt).unwrap();
        assert!(find_isomorphism(&p.set, &x).is_some());
    }

    #[test]
    fn pullback_examples() {
        let c2 = FiniteGroup::named("C2").unwrap();
        let free = GSet::orbit(&c2, 0);
        let f = GMap::to_point(&free);
        let pb = pullback(&f, &f).unwrap();
        assert_eq!(pb.set.orbit_type(), vec![(0, 2)]);
        let id = GMap::identity(&free);
        assert!(find_isomorphism(&pullback(&id, &id).unwrap().set, &free).is_some());
        // Orbits of G/H x_pt G/K correspond to double cosets.
        let g = s3();
        for a in 0..g.class_count() {
            for b in 0..g.class_count() {
                let x = GSet::orbit(&g, a);
                let y = GSet::orbit(&g, b);
                let pb = pullback(&GMap::to_point(&x), &GMap::to_point(&y)).unwrap();
                let dc = g.double_cosets(g.rep(a), g.rep(b)).unwrap();
                assert_eq!(pb.set.orbits().len(), dc.len());
            }
        }
    }

    #[test]
    fn fixed_point_examples() {
        let c2 = FiniteGroup::named("C2").unwrap();
        assert_eq!(GSet::orbit(&c2, 0).fixed_points(c2.all()).len(), 0);
        assert_eq!(GSet::orbit(&c2, 1).fixed_points(c2.all()).len(), 1);
        let g = s3();
        for c in 0..g.class_count() {
            let x = GSet::orbit(&g, c);
            assert_eq!(x.fixed_points(g.rep(0)).len(), x.size());
            assert_eq!(!x.fixed_points(g.all()).is_empty(), c == g.top_class());
        }
    }

    #[test]
    fn isomorphism_of_relabelings() {
        let g = s3();
        let x = GSet::from_orbits(&g, &[(1, 1), (2, 1)]);
        let perm = vec![4, 0, 3, 1, 2];
        let (y, _) = x.relabel(&perm).unwrap();
        let perm2 = vec![2, 3, 4, 0, 1];
        let (z, _) = x.relabel(&perm2).unwrap();
        let iso = find_isomorphism(&y, &z).unwrap();
        assert!(iso.is_bijective());
        assert!(find_isomorphism(&GSet::orbit(&g, 0), &GSet::point(&g)).is_none());
    }

    #[test]
    fn orbit_type_is_complete_invariant() {
        for name in ["C2", "C3", "C4", "C2xC2", "S3"] {
            let g = FiniteGroup::named(name).unwrap();
            let k = g.class_count();
            // All G-sets with at most two orbits.
            let mut sets = vec![GSet::empty(&g)];
            for a in 0..k {
                sets.push(GSet::from_orbits(&g, &[(a, 1)]));
                for b in a..k {
                    let s = GSet::from_orbits(&g, &[(a, 1), (b, 1)]);
                    if s.size() <= 12 {
                        sets.push(s);
                    }
                }
            }
            for x in &sets {
                for y in &sets {
                    if x.size() != y.size() {
                        continue;
                    }
                    let (y2, _) = y.relabel(&(0..y.size()).rev().collect::<Vec<_>>()).unwrap();
                    assert_eq!(
                        brute_iso(x, &y2),
                        x.orbit_type() == y.orbit_type(),
                        "{name}"
                    );
                    assert_eq!(
                        find_isomorphism(x, &y2).is_some(),
                        x.orbit_type() == y.orbit_type()
                    );
                }
            }
        }
    }

    #[test]
    fn product_fixed_points_multiply() {
        let g = s3();
        let x = GSet::from_orbits(&g, &[(1, 1), (2, 1)]);
        let y = GSet::from_orbits(&g, &[(0, 1), (1, 1)]);
        let p = product(&x, &y).unwrap();
        assert_eq!(p.set.size(), x.size() * y.size());
        for h in g.all_subgroups() {
            assert_eq!(
                p.set.fixed_points(h).len(),
                x.fixed_points(h).len() * y.fixed_points(h).len()
            );
        }
    }

    #[test]
    fn distributivity_and_pullback_coproduct() {
        let g = s3();
        let x = GSet::orbit(&g, 1);
        let u = GSet::orbit(&g, 2);
        let v = GSet::orbit(&g, 0);
        let uv = coproduct(&u, &v).unwrap();
        let lhs = product(&x, &uv.set).unwrap().set;
        let rhs = coproduct(&product(&x, &u).unwrap().set, &product(&x, &v).unwrap().set)
            .unwrap()
            .set;
        assert!(find_isomorphism(&lhs, &rhs).is_some());
        // pullback over the point of (X1 ⊔ X2, Y)
        let y = GSet::orbit(&g, 1);
        let p = |a: &GSet| {
            pullback(&GMap::to_point(a), &GMap::to_point(&y))
                .unwrap()
                .set
        };
        let lhs = p(&uv.set);
        let rhs = coproduct(&p(&u), &p(&v)).unwrap().set;
        assert!(find_isomorphism(&lhs, &rhs).is_some());
    }

    #[test]
    fn rejects_bad_input() {
        let c2 = FiniteGroup::named("C2").unwrap();
        assert!(GSet::new(c2.clone(), vec![vec![1, 0], vec![0, 1]]).is_err());
        assert!(GSet::new(c2.clone(), vec![vec![0, 1]]).is_err());
        let free = GSet::orbit(&c2, 0);
        let pt = GSet::point(&c2);
        assert!(GMap::new(pt, free, vec![0]).is_err());
    }
}
