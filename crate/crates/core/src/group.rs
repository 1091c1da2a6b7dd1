//! Finite groups given by exact multiplication data, and their subgroup
//! lattice up to conjugacy.
//!
//! Elements are dense labels `0..order` with `0` the identity. Subgroups are
//! bitmasks over the labels, so groups are limited to order 128.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub type Elem = usize;

/// Largest supported group order.
pub const MAX_ORDER: usize = 128;

/// A subset of group elements.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ElemSet(u128);

impl ElemSet {
    pub const EMPTY: ElemSet = ElemSet(0);

    pub fn singleton(e: Elem) -> ElemSet {
        ElemSet(1u128 << e)
    }

    pub fn from_elems(elems: impl IntoIterator<Item = Elem>) -> ElemSet {
        let mut s = 0u128;
        for e in elems {
            s |= 1u128 << e;
        }
        ElemSet(s)
    }

    pub fn contains(self, e: Elem) -> bool {
        e < 128 && (self.0 >> e) & 1 == 1
    }

    pub fn insert(&mut self, e: Elem) {
        self.0 |= 1u128 << e;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, o: ElemSet) -> ElemSet {
        ElemSet(self.0 | o.0)
    }

    pub fn intersection(self, o: ElemSet) -> ElemSet {
        ElemSet(self.0 & o.0)
    }

    pub fn is_subset(self, o: ElemSet) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Elem> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        })
    }

    pub fn elements(self) -> Vec<Elem> {
        self.iter().collect()
    }

    pub fn min(self) -> Option<Elem> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A conjugacy class of subgroups.
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    pub index: usize,
    /// Lexicographically least member of the class (as a sorted label list).
    pub representative: ElemSet,
    pub conjugates: Vec<ElemSet>,
    pub normalizer: ElemSet,
    /// `|N_G(H) / H|`.
    pub weyl_order: usize,
    pub order: usize,
    /// Isomorphism-type name such as `C2` or `S3`, when one is known.
    pub type_name: Option<String>,
}

/// Left cosets `gH` of a subgroup, indexed by increasing minimal element.
#[derive(Clone, Debug)]
pub struct Cosets {
    /// Minimal element of each coset.
    pub reps: Vec<Elem>,
    /// Coset index of each group element.
    pub coset_of: Vec<usize>,
}

impl Cosets {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleCoset {
    /// Minimal element of `H g K`.
    pub representative: Elem,
    pub elements: ElemSet,
}

pub struct FiniteGroup {
    name: String,
    order: usize,
    mult: Vec<Elem>,
    inv: Vec<Elem>,
    classes: Vec<SubgroupClass>,
    /// Every subgroup, with its class and the least `t` such that `t S t^-1` is the representative.
    lookup: HashMap<ElemSet, (usize, Elem)>,
    cosets: Vec<Cosets>,
    labels: Vec<String>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.order)
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.mult == other.mult
    }
}

impl Eq for FiniteGroup {}

pub type GroupRef = Arc<FiniteGroup>;

/// Built-in group names.
pub const NAMED_GROUPS: &[&str] = &["trivial", "C2", "C3", "C4", "C2xC2", "S3", "C6", "D4", "Q8"];

impl FiniteGroup {
    /// Validates a multiplication table (`table[a][b] = a*b`). If the identity
    /// is not label 0 the labels `0` and `e` are swapped.
    pub fn from_table(name: &str, table: &[Vec<usize>]) -> Result<GroupRef> {
        let n = table.len();
        if n == 0 {
            return Err(Error::Malformed("empty multiplication table".into()));
        }
        if n > MAX_ORDER {
            return Err(Error::Malformed(format!(
                "group order {n} exceeds the supported maximum {MAX_ORDER}"
            )));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Malformed(format!(
                    "table row {i} has length {}",
                    row.len()
                )));
            }
            if let Some(&v) = row.iter().find(|&&v| v >= n) {
                return Err(Error::Malformed(format!(
                    "table entry {v} out of range in row {i}"
                )));
            }
        }
        let id = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::NotAGroup("no two-sided identity".into()))?;
        // Relabel so the identity is 0.
        let swap = |x: usize| {
            if x == 0 {
                id
            } else if x == id {
                0
            } else {
                x
            }
        };
        let mut mult = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                mult[a * n + b] = swap(table[swap(a)][swap(b)]);
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = mult[a * n + b];
                for c in 0..n {
                    if mult[ab * n + c] != mult[a * n + mult[b * n + c]] {
                        return Err(Error::NotAGroup(format!(
                            "not associative at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        let mut inv = vec![usize::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| mult[a * n + b] == 0 && mult[b * n + a] == 0) {
                Some(b) => inv[a] = b,
                None => return Err(Error::NotAGroup(format!("element {a} has no inverse"))),
            }
        }
        Ok(Arc::new(FiniteGroup::build(name.to_string(), n, mult, inv)))
    }

    /// Closure of permutation generators given in one-line notation (0- or 1-based).
    /// Elements are labelled by sorting the permutations lexicographically, so
    /// the identity gets label 0.
    pub fn from_permutations(
        name: &str,
        degree: usize,
        generators: &[Vec<usize>],
    ) -> Result<GroupRef> {
        let mut gens = Vec::new();
        for g in generators {
            if g.len() != degree {
                return Err(Error::Malformed(format!(
                    "permutation {g:?} does not have degree {degree}"
                )));
            }
            let one_based = !g.contains(&0);
            let p: Vec<usize> = if one_based {
                g.iter().map(|&x| x.wrapping_sub(1)).collect()
            } else {
                g.clone()
            };
            let mut seen = vec![false; degree];
            for &x in &p {
                if x >= degree || seen[x] {
                    return Err(Error::Malformed(format!("{g:?} is not a permutation")));
                }
                seen[x] = true;
            }
            gens.push(p);
        }
        let id: Vec<usize> = (0..degree).collect();
        let mut elems: BTreeSet<Vec<usize>> = BTreeSet::new();
        elems.insert(id.clone());
        let mut queue = VecDeque::from([id]);
        while let Some(p) = queue.pop_front() {
            for g in &gens {
                // (g p)(x) = g(p(x))
                let q: Vec<usize> = p.iter().map(|&x| g[x]).collect();
                if elems.insert(q.clone()) {
                    if elems.len() > MAX_ORDER {
                        return Err(Error::Malformed(format!(
                            "generated group exceeds order {MAX_ORDER}"
                        )));
                    }
                    queue.push_back(q);
                }
            }
        }
        let list: Vec<Vec<usize>> = elems.into_iter().collect();
        let index: HashMap<&Vec<usize>, usize> =
            list.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let n = list.len();
        let mut table = vec![vec![0; n]; n];
        for (a, pa) in list.iter().enumerate() {
            for (b, pb) in list.iter().enumerate() {
                // (a b)(x) = a(b(x))
                let ab: Vec<usize> = pb.iter().map(|&x| pa[x]).collect();
                table[a][b] = index[&ab];
            }
        }
        FiniteGroup::from_table(name, &table)
    }

    pub fn cyclic(n: usize) -> Result<GroupRef> {
        if n == 0 || n > MAX_ORDER {
            return Err(Error::Malformed(format!(
                "cyclic group order {n} out of range"
            )));
        }
        let table: Vec<Vec<usize>> = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        let name = if n == 1 {
            "trivial".to_string()
        } else {
            format!("C{n}")
        };
        FiniteGroup::from_table(&name, &table)
    }

    /// One of [`NAMED_GROUPS`], or `C<n>` for any supported `n`.
    pub fn named(name: &str) -> Result<GroupRef> {
        match name {
            "trivial" | "1" | "C1" => FiniteGroup::cyclic(1),
            "C2xC2" | "V4" | "K4" => {
                FiniteGroup::from_permutations("C2xC2", 4, &[vec![1, 0, 3, 2], vec![2, 3, 0, 1]])
            }
            "S3" => FiniteGroup::from_permutations("S3", 3, &[vec![1, 0, 2], vec![1, 2, 0]]),
            "D4" => FiniteGroup::from_permutations("D4", 4, &[vec![1, 2, 3, 0], vec![2, 1, 0, 3]]),
            "S4" => FiniteGroup::from_permutations("S4", 4, &[vec![1, 0, 2, 3], vec![1, 2, 3, 0]]),
            "Q8" => FiniteGroup::from_table("Q8", &quaternion_table()),
            _ => {
                if let Some(n) = name.strip_prefix('C').and_then(|s| s.parse::<usize>().ok()) {
                    return FiniteGroup::cyclic(n);
                }
                Err(Error::Malformed(format!("unknown group name {name:?}")))
            }
        }
    }

    fn build(name: String, order: usize, mult: Vec<Elem>, inv: Vec<Elem>) -> FiniteGroup {
        let mut g = FiniteGroup {
            name,
            order,
            mult,
            inv,
            classes: Vec::new(),
            lookup: HashMap::new(),
            cosets: Vec::new(),
            labels: Vec::new(),
        };
        g.enumerate_subgroups();
        g
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        0
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    pub fn all(&self) -> ElemSet {
        ElemSet::from_elems(0..self.order)
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mult[a * self.order + b]
    }

    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a]
    }

    /// `a b a^-1`.
    pub fn conj(&self, a: Elem, b: Elem) -> Elem {
        self.mul(self.mul(a, b), self.inv(a))
    }

    pub fn table(&self) -> Vec<Vec<Elem>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    pub fn element_order(&self, a: Elem) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Subgroup generated by a set of elements.
    pub fn closure(&self, gens: ElemSet) -> ElemSet {
        let mut s = gens.union(ElemSet::singleton(0));
        let gl = gens.elements();
        let mut frontier: Vec<Elem> = s.elements();
        while let Some(x) = frontier.pop() {
            for &g in &gl {
                let y = self.mul(x, g);
                if !s.contains(y) {
                    s.insert(y);
                    frontier.push(y);
                }
            }
        }
        s
    }

    pub fn is_subgroup(&self, s: ElemSet) -> bool {
        if !s.contains(0) || s.iter().any(|e| e >= self.order) {
            return false;
        }
        s.iter()
            .all(|a| s.iter().all(|b| s.contains(self.mul(a, self.inv(b)))))
    }

    pub fn check_subgroup(&self, s: ElemSet) -> Result<()> {
        if self.is_subgroup(s) {
            Ok(())
        } else {
            Err(Error::NotASubgroup(format!(
                "{s:?} is not a subgroup of {}",
                self.name
            )))
        }
    }

    /// `g S g^-1`.
    pub fn conjugate(&self, g: Elem, s: ElemSet) -> ElemSet {
        ElemSet::from_elems(s.iter().map(|h| self.conj(g, h)))
    }

    pub fn normalizer(&self, s: ElemSet) -> ElemSet {
        ElemSet::from_elems((0..self.order).filter(|&g| self.conjugate(g, s) == s))
    }

    fn enumerate_subgroups(&mut self) {
        let n = self.order;
        let mut cyclic: BTreeSet<ElemSet> = BTreeSet::new();
        for g in 0..n {
            cyclic.insert(self.closure(ElemSet::singleton(g)));
        }
        let mut all: BTreeSet<ElemSet> = cyclic.clone();
        let mut queue: VecDeque<ElemSet> = cyclic.iter().copied().collect();
        while let Some(a) = queue.pop_front() {
            for &c in &cyclic {
                if c.is_subset(a) {
                    continue;
                }
                let j = self.closure(a.union(c));
                if all.insert(j) {
                    queue.push_back(j);
                }
            }
        }
        // Group into conjugacy classes.
        let mut assigned: HashMap<ElemSet, usize> = HashMap::new();
        let mut raw: Vec<(ElemSet, Vec<ElemSet>)> = Vec::new();
        for &s in &all {
            if assigned.contains_key(&s) {
                continue;
            }
            let mut conj: BTreeSet<ElemSet> = BTreeSet::new();
            for g in 0..n {
                conj.insert(self.conjugate(g, s));
            }
            let conj: Vec<ElemSet> = conj.into_iter().collect();
            let rep = *conj
                .iter()
                .min_by(|a, b| a.elements().cmp(&b.elements()))
                .expect("nonempty class");
            for &c in &conj {
                assigned.insert(c, raw.len());
            }
            raw.push((rep, conj));
        }
        raw.sort_by(|a, b| (a.0.len(), a.0.elements()).cmp(&(b.0.len(), b.0.elements())));
        self.classes = raw
            .into_iter()
            .enumerate()
            .map(|(index, (rep, mut conjugates))| {
                conjugates.sort_by_key(|a| a.elements());
                let normalizer = self.normalizer(rep);
                SubgroupClass {
                    index,
                    representative: rep,
                    conjugates,
                    normalizer,
                    weyl_order: normalizer.len() / rep.len(),
                    order: rep.len(),
                    type_name: self.type_name(rep),
                }
            })
            .collect();
        for c in &self.classes {
            for &s in &c.conjugates {
                let t = (0..n)
                    .find(|&t| self.conjugate(t, s) == c.representative)
                    .expect("conjugate of representative");
                self.lookup.insert(s, (c.index, t));
            }
        }
        self.cosets = self
            .classes
            .iter()
            .map(|c| self.left_cosets(c.representative))
            .collect();
        let mut labels = Vec::new();
        for c in &self.classes {
            let unique = c.type_name.as_ref().filter(|t| {
                self.classes
                    .iter()
                    .filter(|d| d.type_name.as_ref() == Some(t))
                    .count()
                    == 1
            });
            labels.push(match unique {
                Some(t) => t.clone(),
                None => format!("H{}", c.index),
            });
        }
        self.labels = labels;
    }

    /// Small-order isomorphism type names.
    fn type_name(&self, s: ElemSet) -> Option<String> {
        let elems = s.elements();
        let n = elems.len();
        let orders: Vec<usize> = elems.iter().map(|&e| self.element_order(e)).collect();
        let abelian = elems
            .iter()
            .all(|&a| elems.iter().all(|&b| self.mul(a, b) == self.mul(b, a)));
        let exponent = orders.iter().copied().max().unwrap_or(1);
        let involutions = orders.iter().filter(|&&o| o == 2).count();
        if n == 1 {
            return Some("e".into());
        }
        if exponent == n {
            return Some(format!("C{n}"));
        }
        match (n, abelian) {
            (4, true) => Some("C2xC2".into()),
            (6, false) => Some("S3".into()),
            (8, true) if exponent == 4 => Some("C4xC2".into()),
            (8, true) => Some("C2xC2xC2".into()),
            (8, false) if involutions == 5 => Some("D4".into()),
            (8, false) if involutions == 1 => Some("Q8".into()),
            (9, true) => Some("C3xC3".into()),
            (12, true) => Some("C6xC2".into()),
            (12, false) if involutions == 3 && exponent == 6 => Some("A4".into()),
            (12, false) if involutions == 7 => Some("D6".into()),
            (12, false) if involutions == 1 => Some("Dic3".into()),
            (24, false) if exponent == 12 => Some("S4".into()),
            _ => None,
        }
    }

    fn left_cosets(&self, h: ElemSet) -> Cosets {
        let n = self.order;
        let mut coset_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for g in 0..n {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let idx = reps.len();
            reps.push(g);
            for x in h.iter() {
                coset_of[self.mul(g, x)] = idx;
            }
        }
        Cosets { reps, coset_of }
    }

    /// Subgroup classes ordered by `(order, lexicographic representative)`.
    pub fn subgroup_classes(&self) -> &[SubgroupClass] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> &SubgroupClass {
        &self.classes[i]
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn rep(&self, class: usize) -> ElemSet {
        self.classes[class].representative
    }

    /// Class index of the trivial subgroup (always 0).
    pub fn trivial_class(&self) -> usize {
        0
    }

    /// Class index of the whole group (always last).
    pub fn top_class(&self) -> usize {
        self.classes.len() - 1
    }

    /// Class of a subgroup and the least `t` with `t S t^-1 = representative`.
    pub fn classify(&self, s: ElemSet) -> Option<(usize, Elem)> {
        self.lookup.get(&s).copied()
    }

    pub fn all_subgroups(&self) -> Vec<ElemSet> {
        let mut v: Vec<ElemSet> = self.lookup.keys().copied().collect();
        v.sort_by(|a, b| (a.len(), a.elements()).cmp(&(b.len(), b.elements())));
        v
    }

    /// Left cosets of the representative of a class.
    pub fn cosets(&self, class: usize) -> &Cosets {
        &self.cosets[class]
    }

    /// Index `[G : H]` of a class representative.
    pub fn index(&self, class: usize) -> usize {
        self.order / self.classes[class].order
    }

    /// Display label of a class: its type name when unique in the group, else `H<i>`.
    pub fn class_label(&self, class: usize) -> &str {
        &self.labels[class]
    }

    /// Resolves `H<i>`, `e`, `G`, or a unique type label.
    pub fn class_by_label(&self, label: &str) -> Result<usize> {
        if let Some(i) = label
            .strip_prefix('H')
            .and_then(|s| s.parse::<usize>().ok())
        {
            if i < self.classes.len() {
                return Ok(i);
            }
        }
        if label == "e" || label == "1" {
            return Ok(0);
        }
        if label == "G" {
            return Ok(self.top_class());
        }
        if let Some(i) = self.labels.iter().position(|l| l == label) {
            return Ok(i);
        }
        let matches: Vec<usize> = self
            .classes
            .iter()
            .filter(|c| c.type_name.as_deref() == Some(label))
            .map(|c| c.index)
            .collect();
        match matches.len() {
            0 => Err(Error::Malformed(format!(
                "no subgroup class labelled {label:?} in {}",
                self.name
            ))),
            _ => Err(Error::Malformed(format!(
                "subgroup label {label:?} is ambiguous in {}; use H<i>",
                self.name
            ))),
        }
    }

    /// Double cosets `H g K`, each with its least element, sorted by that element.
    pub fn double_cosets(&self, h: ElemSet, k: ElemSet) -> Result<Vec<DoubleCoset>> {
        self.check_subgroup(h)?;
        self.check_subgroup(k)?;
        let mut seen = ElemSet::EMPTY;
        let mut out = Vec::new();
        for g in 0..self.order {
            if seen.contains(g) {
                continue;
            }
            let mut dc = ElemSet::EMPTY;
            for x in h.iter() {
                let xg = self.mul(x, g);
                for y in k.iter() {
                    dc.insert(self.mul(xg, y));
                }
            }
            seen = seen.union(dc);
            out.push(DoubleCoset {
                representative: g,
                elements: dc,
            });
        }
        Ok(out)
    }
}

fn quaternion_table() -> Vec<Vec<usize>> {
    // Label 2*u + s encodes (-1)^s * unit[u], unit = [1, i, j, k].
    // unit product table: (sign, unit)
    let unit_mul = |a: usize, b: usize| -> (usize, usize) {
        match (a, b) {
            (0, x) | (x, 0) => (0, x),
            (x, y) if x == y => (1, 0),
            (1, 2) => (0, 3),
            (2, 3) => (0, 1),
            (3, 1) => (0, 2),
            (2, 1) => (1, 3),
            (3, 2) => (1, 1),
            (1, 3) => (1, 2),
            _ => unreachable!(),
        }
    };
    let mut t = vec![vec![0; 8]; 8];
    for a in 0..8 {
        for b in 0..8 {
            let (ua, sa) = (a / 2, a % 2);
            let (ub, sb) = (b / 2, b % 2);
            let (s, u) = unit_mul(ua, ub);
            t[a][b] = 2 * u + ((sa + sb + s) % 2);
        }
    }
    t
}
