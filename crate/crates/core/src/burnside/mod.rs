//! Spans of finite G-sets up to isomorphism, composed by pullback.
//!
//! A transitive span `X <- G/L -> Y` is determined by the class of `L` and the
//! image of `eL` in `X x Y`, up to the normalizer. [`SpanCode`] stores the class
//! and the lexicographically least point of that normalizer orbit; the
//! representative `L` itself is the class representative.

mod marks;
mod multi;

pub use marks::{burnside_ring, table_of_marks, BurnsideRing};
pub use multi::{
    multi_basis, multi_canonicalize, multi_compose, product_decomposition_check, promonoidal_check,
    MultiElement, ProductDecompositionReport, PromonoidalReport, TupleCode,
};

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::ElemSet;
use crate::gset::{product, Coproduct, GMap, GSet, Product};
use crate::int::Int;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct SpanCode {
    pub class: usize,
    pub x: usize,
    pub y: usize,
}

/// Code of the transitive span with stabilizer `stab` whose base point maps to `(px, py)`.
pub fn canonical_code(x: &GSet, y: &GSet, stab: ElemSet, px: usize, py: usize) -> SpanCode {
    let g = x.group();
    let (class, t) = g.classify(stab).expect("stabilizer is a subgroup");
    let start = (x.act(t, px), y.act(t, py));
    let best = g
        .class(class)
        .normalizer
        .iter()
        .map(|n| (x.act(n, start.0), y.act(n, start.1)))
        .min()
        .unwrap_or(start);
    SpanCode {
        class,
        x: best.0,
        y: best.1,
    }
}

/// Basis of `A(X, Y)`: every transitive span code, sorted.
pub fn hom_basis(x: &GSet, y: &GSet) -> Result<Vec<SpanCode>> {
    x.same_group(y)?;
    let g = x.group();
    let mut out = Vec::new();
    for c in 0..g.class_count() {
        let cls = g.class(c);
        let fx = x.fixed_points(cls.representative);
        let fy = y.fixed_points(cls.representative);
        let mut seen = std::collections::HashSet::new();
        for &a in &fx {
            for &b in &fy {
                let code = canonical_code(x, y, cls.representative, a, b);
                if seen.insert((code.x, code.y)) {
                    out.push(code);
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Middle of a transitive span: `G/L` with its two legs.
pub fn realize(x: &GSet, y: &GSet, code: SpanCode) -> (GSet, GMap, GMap) {
    let g = x.group();
    let m = GSet::orbit(g, code.class);
    let reps = &g.cosets(code.class).reps;
    let fx = reps.iter().map(|&r| x.act(r, code.x)).collect();
    let fy = reps.iter().map(|&r| y.act(r, code.y)).collect();
    (
        m.clone(),
        GMap::new_unchecked(m.clone(), x.clone(), fx),
        GMap::new_unchecked(m, y.clone(), fy),
    )
}

/// Transitive components of `code2 . code1` (with repetition).
pub fn compose_codes(x: &GSet, y: &GSet, z: &GSet, c1: SpanCode, c2: SpanCode) -> Vec<SpanCode> {
    let g = x.group();
    let l1 = g.rep(c1.class);
    let cos2 = g.cosets(c2.class);
    // Cosets hL2 with h . y' = y, acted on by L1.
    let fiber: Vec<usize> = (0..cos2.len())
        .filter(|&k| y.act(cos2.reps[k], c2.x) == c1.y)
        .collect();
    let mut done = vec![false; cos2.len()];
    let mut out = Vec::new();
    for &k in &fiber {
        if done[k] {
            continue;
        }
        for l in l1.iter() {
            done[cos2.coset_of[g.mul(l, cos2.reps[k])]] = true;
        }
        let h = cos2.reps[k];
        let stab = l1.intersection(g.conjugate(h, g.rep(c2.class)));
        out.push(canonical_code(x, z, stab, c1.x, z.act(h, c2.y)));
    }
    out
}

/// Components of the product of two transitive spans, over `X x X'` and `Y x Y'`.
pub fn tensor_codes(px: &Product, py: &Product, c1: SpanCode, c2: SpanCode) -> Vec<SpanCode> {
    let g = px.set.group();
    let (l1, l2) = (g.rep(c1.class), g.rep(c2.class));
    let x2 = &px.right.target;
    let y2 = &py.right.target;
    g.double_cosets(l1, l2)
        .expect("representatives are subgroups")
        .into_iter()
        .map(|dc| {
            let d = dc.representative;
            let stab = l1.intersection(g.conjugate(d, l2));
            canonical_code(
                &px.set,
                &py.set,
                stab,
                px.pair(c1.x, x2.act(d, c2.x)),
                py.pair(c1.y, y2.act(d, c2.y)),
            )
        })
        .collect()
}

/// An element of the Burnside hom-group `A(X, Y)`.
#[derive(Clone, PartialEq, Eq)]
pub struct BurnsideElement {
    source: GSet,
    target: GSet,
    terms: BTreeMap<SpanCode, Int>,
}

impl fmt::Debug for BurnsideElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.terms.iter().map(|(c, k)| ((c.class, c.x, c.y), k)))
            .finish()
    }
}

impl BurnsideElement {
    pub fn zero(source: &GSet, target: &GSet) -> Result<BurnsideElement> {
        source.same_group(target)?;
        Ok(BurnsideElement {
            source: source.clone(),
            target: target.clone(),
            terms: BTreeMap::new(),
        })
    }

    /// Builds from codes; each code is re-canonicalized and checked.
    pub fn from_terms(
        source: &GSet,
        target: &GSet,
        terms: impl IntoIterator<Item = (SpanCode, Int)>,
    ) -> Result<BurnsideElement> {
        let mut e = BurnsideElement::zero(source, target)?;
        let g = source.group();
        for (c, k) in terms {
            if c.class >= g.class_count() || c.x >= source.size() || c.y >= target.size() {
                return Err(Error::Invalid(format!("span code {c:?} out of range")));
            }
            let rep = g.rep(c.class);
            if rep
                .iter()
                .any(|h| source.act(h, c.x) != c.x || target.act(h, c.y) != c.y)
            {
                return Err(Error::Invalid(format!(
                    "span code {c:?}: point is not fixed by the representative"
                )));
            }
            let canon = canonical_code(source, target, rep, c.x, c.y);
            e.add_term(canon, k);
        }
        Ok(e)
    }

    pub(crate) fn from_canonical_terms(
        source: &GSet,
        target: &GSet,
        terms: impl IntoIterator<Item = (SpanCode, Int)>,
    ) -> BurnsideElement {
        let mut e = BurnsideElement {
            source: source.clone(),
            target: target.clone(),
            terms: BTreeMap::new(),
        };
        for (c, k) in terms {
            e.add_term(c, k);
        }
        e
    }

    pub fn basis_element(source: &GSet, target: &GSet, code: SpanCode) -> BurnsideElement {
        BurnsideElement::from_canonical_terms(source, target, [(code, Int::ONE)])
    }

    pub fn identity(x: &GSet) -> BurnsideElement {
        let g = x.group();
        BurnsideElement::from_canonical_terms(
            x,
            x,
            x.orbits().iter().map(|o| {
                (
                    canonical_code(x, x, g.rep(o.class), o.base, o.base),
                    Int::ONE,
                )
            }),
        )
    }

    /// The span `X <- U -> Y` with the given legs.
    pub fn from_span(left: &GMap, right: &GMap) -> Result<BurnsideElement> {
        if left.source != right.source {
            return Err(Error::FootMismatch(
                "span legs have different sources".into(),
            ));
        }
        let g = left.source.group();
        for leg in [left, right] {
            for e in g.elements() {
                for u in 0..leg.source.size() {
                    if leg.map[leg.source.act(e, u)] != leg.target.act(e, leg.map[u]) {
                        return Err(Error::NotEquivariant(format!(
                            "span leg fails equivariance at ({e}, {u})"
                        )));
                    }
                }
            }
        }
        Ok(BurnsideElement::from_canonical_terms(
            &left.target,
            &right.target,
            left.source.orbits().iter().map(|o| {
                (
                    canonical_code(
                        &left.target,
                        &right.target,
                        g.rep(o.class),
                        left.map[o.base],
                        right.map[o.base],
                    ),
                    Int::ONE,
                )
            }),
        ))
    }

    /// Covariant span of a map: `X = X -> Y`.
    pub fn from_map(f: &GMap) -> BurnsideElement {
        BurnsideElement::from_span(&GMap::identity(&f.source), f).expect("graph span")
    }

    /// Contravariant span of a map: `Y <- X = X`.
    pub fn from_map_op(f: &GMap) -> BurnsideElement {
        BurnsideElement::from_span(f, &GMap::identity(&f.source)).expect("graph span")
    }

    pub fn source(&self) -> &GSet {
        &self.source
    }

    pub fn target(&self) -> &GSet {
        &self.target
    }

    pub fn terms(&self) -> &BTreeMap<SpanCode, Int> {
        &self.terms
    }

    pub fn coefficient(&self, c: &SpanCode) -> Int {
        self.terms.get(c).cloned().unwrap_or(Int::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, c: SpanCode, k: Int) {
        if k.is_zero() {
            return;
        }
        let e = self.terms.entry(c).or_insert(Int::ZERO);
        *e += k;
        if e.is_zero() {
            self.terms.remove(&c);
        }
    }

    fn check_feet(&self, other: &BurnsideElement) -> Result<()> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::FootMismatch(
                "elements live in different hom-groups".into(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &BurnsideElement) -> Result<BurnsideElement> {
        self.check_feet(other)?;
        let mut e = self.clone();
        for (c, k) in &other.terms {
            e.add_term(*c, k.clone());
        }
        Ok(e)
    }

    pub fn sub(&self, other: &BurnsideElement) -> Result<BurnsideElement> {
        self.add(&other.scale(&Int::from(-1)))
    }

    pub fn scale(&self, k: &Int) -> BurnsideElement {
        let mut e = BurnsideElement {
            source: self.source.clone(),
            target: self.target.clone(),
            terms: BTreeMap::new(),
        };
        for (c, v) in &self.terms {
            e.add_term(*c, v * k);
        }
        e
    }

    /// Coordinates in [`hom_basis`] order.
    pub fn to_vector(&self, basis: &[SpanCode]) -> Result<Vec<Int>> {
        let index: HashMap<&SpanCode, usize> =
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

    pub fn from_vector(
        source: &GSet,
        target: &GSet,
        basis: &[SpanCode],
        v: &[Int],
    ) -> BurnsideElement {
        BurnsideElement::from_canonical_terms(
            source,
            target,
            basis.iter().zip(v).map(|(c, k)| (*c, k.clone())),
        )
    }

    /// Total size of the middle, for elements with nonnegative coefficients.
    pub fn middle_size(&self) -> Int {
        let g = self.source.group();
        self.terms
            .iter()
            .map(|(c, k)| k * &Int::from(g.index(c.class)))
            .sum()
    }
}

/// `s2 . s1`.
pub fn compose(s2: &BurnsideElement, s1: &BurnsideElement) -> Result<BurnsideElement> {
    if s1.target != s2.source {
        return Err(Error::FootMismatch(
            "target of the first span differs from the source of the second".into(),
        ));
    }
    let (x, y, z) = (&s1.source, &s1.target, &s2.target);
    let mut out = BurnsideElement::from_canonical_terms(x, z, []);
    for (c1, k1) in &s1.terms {
        for (c2, k2) in &s2.terms {
            if c1.y >= y.size() {
                continue;
            }
            let k = k1 * k2;
            for c in compose_codes(x, y, z, *c1, *c2) {
                out.add_term(c, k.clone());
            }
        }
    }
    Ok(out)
}

/// Cartesian product of spans, from `X x X'` to `Y x Y'`.
pub fn tensor(s: &BurnsideElement, t: &BurnsideElement) -> Result<BurnsideElement> {
    s.source.same_group(&t.source)?;
    let px = product(&s.source, &t.source)?;
    let py = product(&s.target, &t.target)?;
    let mut out = BurnsideElement::from_canonical_terms(&px.set, &py.set, []);
    for (c1, k1) in &s.terms {
        for (c2, k2) in &t.terms {
            let k = k1 * k2;
            for c in tensor_codes(&px, &py, *c1, *c2) {
                out.add_term(c, k.clone());
            }
        }
    }
    Ok(out)
}

/// The flipped span `Y <- U -> X`.
pub fn dual(s: &BurnsideElement) -> BurnsideElement {
    let g = s.source.group();
    BurnsideElement::from_canonical_terms(
        &s.target,
        &s.source,
        s.terms.iter().map(|(c, k)| {
            (
                canonical_code(&s.target, &s.source, g.rep(c.class), c.y, c.x),
                k.clone(),
            )
        }),
    )
}

/// `X x X -> pt` with middle `X` and legs (diagonal, !).
pub fn evaluation_span(x: &GSet) -> BurnsideElement {
    let p = product(x, x).expect("same group");
    let diag = GMap::new_unchecked(
        x.clone(),
        p.set.clone(),
        (0..x.size()).map(|a| p.pair(a, a)).collect(),
    );
    BurnsideElement::from_span(&diag, &GMap::to_point(x)).expect("evaluation span")
}

/// `pt -> X x X` with middle `X` and legs (!, diagonal).
pub fn coevaluation_span(x: &GSet) -> BurnsideElement {
    dual(&evaluation_span(x))
}

/// Splits an element out of `X ⊔ X'` into its parts out of `X` and `X'`.
pub fn direct_sum_decompose(
    e: &BurnsideElement,
    c: &Coproduct,
) -> Result<(BurnsideElement, BurnsideElement)> {
    if e.source != c.set {
        return Err(Error::FootMismatch(
            "source is not the given coproduct".into(),
        ));
    }
    let nx = c.left.source.size();
    let mut a = BurnsideElement::zero(&c.left.source, &e.target)?;
    let mut b = BurnsideElement::zero(&c.right.source, &e.target)?;
    for (code, k) in &e.terms {
        if code.x < nx {
            a.add_term(*code, k.clone());
        } else {
            b.add_term(
                SpanCode {
                    x: code.x - nx,
                    ..*code
                },
                k.clone(),
            );
        }
    }
    Ok((a, b))
}

/// Inverse of [`direct_sum_decompose`].
pub fn direct_sum_join(
    a: &BurnsideElement,
    b: &BurnsideElement,
    c: &Coproduct,
) -> Result<BurnsideElement> {
    if a.target != b.target || a.source != c.left.source || b.source != c.right.source {
        return Err(Error::FootMismatch(
            "parts do not match the coproduct".into(),
        ));
    }
    let nx = c.left.source.size();
    let mut out = BurnsideElement::zero(&c.set, &a.target)?;
    for (code, k) in &a.terms {
        out.add_term(*code, k.clone());
    }
    for (code, k) in &b.terms {
        out.add_term(
            SpanCode {
                x: code.x + nx,
                ..*code
            },
            k.clone(),
        );
    }
    Ok(out)
}

/// Splits an element into `Y ⊔ Y'` into its parts into `Y` and `Y'`.
pub fn direct_sum_decompose_target(
    e: &BurnsideElement,
    c: &Coproduct,
) -> Result<(BurnsideElement, BurnsideElement)> {
    let (a, b) = direct_sum_decompose(&dual(e), c)?;
    Ok((dual(&a), dual(&b)))
}

/// Unitor `X -> X x pt`.
pub fn right_unitor(x: &GSet) -> BurnsideElement {
    let p = product(x, &GSet::point(x.group())).expect("same group");
    BurnsideElement::from_map(&GMap::new_unchecked(
        x.clone(),
        p.set,
        (0..x.size()).collect(),
    ))
}

/// Unitor `pt x X -> X`.
pub fn left_unitor_inv(x: &GSet) -> BurnsideElement {
    let p = product(&GSet::point(x.group()), x).expect("same group");
    BurnsideElement::from_map_op(&GMap::new_unchecked(
        x.clone(),
        p.set,
        (0..x.size()).collect(),
    ))
}

/// Associator `X x (Y x Z) -> (X x Y) x Z`.
pub fn associator(x: &GSet, y: &GSet, z: &GSet) -> Result<BurnsideElement> {
    let yz = product(y, z)?;
    let l = product(x, &yz.set)?;
    let xy = product(x, y)?;
    let r = product(&xy.set, z)?;
    let map = (0..l.set.size())
        .map(|p| {
            let (a, q) = l.split(p);
            let (b, c) = yz.split(q);
            r.pair(xy.pair(a, b), c)
        })
        .collect();
    Ok(BurnsideElement::from_map(&GMap::new(l.set, r.set, map)?))
}

/// The zig-zag `X -> X x pt -> X x (X x X) -> (X x X) x X -> pt x X -> X`.
pub fn triangle_composite(x: &GSet) -> Result<BurnsideElement> {
    let pt = GSet::point(x.group());
    let step1 = right_unitor(x);
    let step2 = tensor(&BurnsideElement::identity(x), &coevaluation_span(x))?;
    let step3 = associator(x, x, x)?;
    let step4 = tensor(&evaluation_span(x), &BurnsideElement::identity(x))?;
    let step5 = left_unitor_inv(x);
    debug_assert_eq!(step1.target().size(), x.size() * pt.size());
    let mut acc = step1;
    for s in [step2, step3, step4, step5] {
        acc = compose(&s, &acc)?;
    }
    Ok(acc)
}

/// A random element with up to `max_terms` terms and coefficients in `-bound..=bound`.
pub fn random_element<R: Rng>(
    x: &GSet,
    y: &GSet,
    rng: &mut R,
    max_terms: usize,
    bound: i64,
) -> Result<BurnsideElement> {
    let basis = hom_basis(x, y)?;
    let mut e = BurnsideElement::zero(x, y)?;
    if basis.is_empty() {
        return Ok(e);
    }
    let n = rng.gen_range(0..=max_terms);
    for _ in 0..n {
        let c = basis[rng.gen_range(0..basis.len())];
        e.add_term(c, Int::from(rng.gen_range(-bound..=bound)));
    }
    Ok(e)
}

/// Rank of `A(X, Y)`.
pub fn hom_rank(x: &GSet, y: &GSet) -> Result<usize> {
    Ok(hom_basis(x, y)?.len())
}

/// All orbits `G/H`, one per subgroup class.
pub fn orbits(group: &crate::group::GroupRef) -> Vec<GSet> {
    (0..group.class_count())
        .map(|c| GSet::orbit(group, c))
        .collect()
}

#[cfg(test)]
mod tests;
