//! Bounded chain complexes of Mackey functors, filtrations and their spectral sequences.

use std::collections::BTreeMap;

use crate::abgroup::Subquotient;
use crate::error::{Error, Result};
use crate::int::Int;
use crate::linalg::Lattice;
use crate::mackey::{generating_orbit_maps, induced_functor, MackeyFunctor, MackeyMorphism};
use crate::matrix::Matrix;

/// `C_start <- C_{start+1} <- ...`; `diffs[i]: C_{start+i+1} -> C_{start+i}`.
#[derive(Clone, Debug)]
pub struct MackeyChainComplex {
    start: i64,
    objects: Vec<MackeyFunctor>,
    diffs: Vec<MackeyMorphism>,
}

impl MackeyChainComplex {
    pub fn new(
        start: i64,
        objects: Vec<MackeyFunctor>,
        diffs: Vec<MackeyMorphism>,
    ) -> Result<MackeyChainComplex> {
        if objects.is_empty() {
            return Err(Error::Invalid("a complex needs at least one object".into()));
        }
        if diffs.len() + 1 != objects.len() {
            return Err(Error::Dimension(format!(
                "{} objects need {} differentials, got {}",
                objects.len(),
                objects.len() - 1,
                diffs.len()
            )));
        }
        let g = objects[0].group();
        if objects.iter().any(|o| o.group() != g) {
            return Err(Error::GroupMismatch(
                "complex objects over different groups".into(),
            ));
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.source() != &objects[i + 1] || d.target() != &objects[i] {
                return Err(Error::FootMismatch(format!(
                    "differential out of degree {}",
                    start + i as i64 + 1
                )));
            }
        }
        for (i, w) in diffs.windows(2).enumerate() {
            if !MackeyMorphism::then(&w[1], &w[0])?.is_zero() {
                return Err(Error::axiom(
                    "d o d = 0",
                    format!("degree {}", start + i as i64 + 2),
                ));
            }
        }
        Ok(MackeyChainComplex {
            start,
            objects,
            diffs,
        })
    }

    /// A single object in degree `n`.
    pub fn concentrated(n: i64, m: &MackeyFunctor) -> MackeyChainComplex {
        MackeyChainComplex {
            start: n,
            objects: vec![m.clone()],
            diffs: Vec::new(),
        }
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    /// Highest degree.
    pub fn end(&self) -> i64 {
        self.start + self.objects.len() as i64 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.start..=self.end()
    }

    pub fn group(&self) -> &crate::group::GroupRef {
        self.objects[0].group()
    }

    pub fn objects(&self) -> &[MackeyFunctor] {
        &self.objects
    }

    pub fn differentials(&self) -> &[MackeyMorphism] {
        &self.diffs
    }

    pub fn object(&self, n: i64) -> Option<&MackeyFunctor> {
        let i = n.checked_sub(self.start)?;
        usize::try_from(i).ok().and_then(|i| self.objects.get(i))
    }

    /// `d_n: C_n -> C_{n-1}`.
    pub fn differential(&self, n: i64) -> Option<&MackeyMorphism> {
        let i = n.checked_sub(self.start + 1)?;
        usize::try_from(i).ok().and_then(|i| self.diffs.get(i))
    }

    fn class_count(&self) -> usize {
        self.group().class_count()
    }

    /// Rank of `C_n` at level `c` (0 outside the complex).
    fn rank(&self, n: i64, c: usize) -> usize {
        self.object(n).map_or(0, |o| o.rank(c))
    }

    /// Matrix of `d_n` at level `c`, zero-sized outside the complex.
    fn d(&self, n: i64, c: usize) -> Matrix {
        match self.differential(n) {
            Some(d) => d.level(c).clone(),
            None => Matrix::zeros(self.rank(n - 1, c), self.rank(n, c)),
        }
    }

    fn relations(&self, n: i64, c: usize) -> Lattice {
        self.object(n)
            .map_or(Lattice::zero(0), |o| o.level(c).relation_lattice())
    }

    /// Cycles at level `c`: vectors mapping into the relations of `C_{n-1}`.
    fn cycles(&self, n: i64, c: usize) -> Lattice {
        match self.object(n - 1) {
            Some(t) => t.level(c).kernel_lattice(&self.d(n, c)),
            None => Lattice::full(self.rank(n, c)),
        }
    }

    /// Boundaries plus relations at level `c`.
    fn boundaries(&self, n: i64, c: usize) -> Lattice {
        self.relations(n, c)
            .sum(&Lattice::from_columns(&self.d(n + 1, c)))
    }

    pub fn homology(&self, n: i64) -> Homology {
        let k = self.class_count();
        let subs: Vec<Subquotient> = (0..k)
            .map(|c| {
                Subquotient::new(self.cycles(n, c), self.boundaries(n, c))
                    .expect("boundaries are cycles")
            })
            .collect();
        match self.object(n) {
            Some(o) => Homology::new(o, subs),
            None => Homology::new(&MackeyFunctor::zero(self.group()), subs),
        }
    }
}

/// A Mackey functor presented levelwise as `numerator / denominator` inside
/// an ambient functor: homology objects and spectral sequence entries.
#[derive(Clone, Debug)]
pub struct Homology {
    pub functor: MackeyFunctor,
    pub subs: Vec<Subquotient>,
}

impl Homology {
    fn new(ambient: &MackeyFunctor, subs: Vec<Subquotient>) -> Homology {
        Homology {
            functor: induced_functor(ambient, &subs),
            subs,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.functor.is_zero()
    }

    /// The map induced by `f` on ambients: `f(lift) -> project`.
    pub fn map_to(&self, other: &Homology, f: &[Matrix]) -> Result<MackeyMorphism> {
        let maps = (0..self.subs.len())
            .map(|c| {
                let img = &f[c] * &self.subs[c].lift_matrix();
                let cols = (0..img.cols())
                    .map(|j| {
                        other.subs[c].project(&img.column(j)).ok_or_else(|| {
                            Error::Invalid("image leaves the target numerator".into())
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Matrix::from_columns(&cols, other.functor.rank(c)))
            })
            .collect::<Result<Vec<_>>>()?;
        MackeyMorphism::new(&self.functor, &other.functor, maps)
    }

    /// The map induced by the identity of a common ambient.
    pub fn compare(&self, other: &Homology) -> Result<MackeyMorphism> {
        let ids: Vec<Matrix> = self
            .subs
            .iter()
            .map(|s| Matrix::identity(s.numerator.dim()))
            .collect();
        self.map_to(other, &ids)
    }
}

/// `F_{p_min} <= ... <= F_{p_max}`; `stages[p - p_min][n - start][c]` is a
/// lattice containing the relations of `C_n(G/H_c)`.
#[derive(Clone, Debug)]
pub struct Filtration {
    p_min: i64,
    start: i64,
    stages: Vec<Vec<Vec<Lattice>>>,
}

impl Filtration {
    /// Checks that the bottom stage is zero, the top is everything, and every
    /// stage is a nested subfunctor and subcomplex.
    pub fn new(
        complex: &MackeyChainComplex,
        p_min: i64,
        stages: Vec<Vec<Vec<Lattice>>>,
    ) -> Result<Filtration> {
        let k = complex.class_count();
        let g = complex.group().clone();
        if stages.is_empty() {
            return Err(Error::Invalid("empty filtration".into()));
        }
        for (s, stage) in stages.iter().enumerate() {
            if stage.len() != complex.objects.len() || stage.iter().any(|l| l.len() != k) {
                return Err(Error::Dimension(format!(
                    "filtration stage {} has the wrong shape",
                    p_min + s as i64
                )));
            }
            for (i, lv) in stage.iter().enumerate() {
                let n = complex.start + i as i64;
                for (c, l) in lv.iter().enumerate() {
                    if l.dim() != complex.rank(n, c)
                        || !l.contains_lattice(&complex.relations(n, c))
                    {
                        return Err(Error::Invalid(format!(
                            "stage {} in degree {n} level {c} does not contain the relations",
                            p_min + s as i64
                        )));
                    }
                }
            }
        }
        let f = Filtration {
            p_min,
            start: complex.start,
            stages,
        };
        for n in complex.degrees() {
            for c in 0..k {
                if f.stage(p_min, n, c) != complex.relations(n, c) {
                    return Err(Error::UnboundedFiltration(format!(
                        "stage {p_min} is not zero in degree {n}; no vanishing stage below"
                    )));
                }
                if f.stage(f.p_max(), n, c) != Lattice::full(complex.rank(n, c)) {
                    return Err(Error::Invalid(format!(
                        "top stage {} is not the whole complex",
                        f.p_max()
                    )));
                }
            }
        }
        for p in p_min..=f.p_max() {
            for n in complex.degrees() {
                let obj = complex.object(n).unwrap();
                for c in 0..k {
                    let l = f.stage(p, n, c);
                    if p > p_min && !l.contains_lattice(&f.stage(p - 1, n, c)) {
                        return Err(Error::Invalid(format!(
                            "stage {} not contained in stage {p}",
                            p - 1
                        )));
                    }
                    if complex.object(n - 1).is_some()
                        && !f
                            .stage(p, n - 1, c)
                            .contains_lattice(&l.image(&complex.d(n, c)))
                    {
                        return Err(Error::Invalid(format!(
                            "stage {p} is not a subcomplex in degree {n}"
                        )));
                    }
                }
                for om in generating_orbit_maps(&g) {
                    let (res, tr) = (obj.res(om), obj.tr(om));
                    if !f
                        .stage(p, n, om.from)
                        .contains_lattice(&f.stage(p, n, om.to).image(res))
                        || !f
                            .stage(p, n, om.to)
                            .contains_lattice(&f.stage(p, n, om.from).image(tr))
                    {
                        return Err(Error::Invalid(format!(
                            "stage {p} in degree {n} is not a subfunctor"
                        )));
                    }
                }
            }
        }
        Ok(f)
    }

    /// `F_p = C_{<= p}`.
    pub fn skeletal(complex: &MackeyChainComplex) -> Result<Filtration> {
        let k = complex.class_count();
        let stages = (complex.start - 1..=complex.end())
            .map(|p| {
                complex
                    .degrees()
                    .map(|n| {
                        (0..k)
                            .map(|c| {
                                if n <= p {
                                    Lattice::full(complex.rank(n, c))
                                } else {
                                    complex.relations(n, c)
                                }
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Filtration::new(complex, complex.start - 1, stages)
    }

    /// `0 = F_{-1} <= F_0 = C`.
    pub fn trivial(complex: &MackeyChainComplex) -> Result<Filtration> {
        let k = complex.class_count();
        let zero = complex
            .degrees()
            .map(|n| (0..k).map(|c| complex.relations(n, c)).collect())
            .collect();
        let full = complex
            .degrees()
            .map(|n| (0..k).map(|c| Lattice::full(complex.rank(n, c))).collect())
            .collect();
        Filtration::new(complex, -1, vec![zero, full])
    }

    /// `0 = F_{-1} <= F_0 = sub <= F_1 = C` for a subcomplex given by
    /// levelwise generators (`sub[n - start][c]`, columns in `C_n(G/H_c)`).
    pub fn two_step(complex: &MackeyChainComplex, sub: &[Vec<Matrix>]) -> Result<Filtration> {
        let k = complex.class_count();
        let zero: Vec<Vec<Lattice>> = complex
            .degrees()
            .map(|n| (0..k).map(|c| complex.relations(n, c)).collect())
            .collect();
        let full = complex
            .degrees()
            .map(|n| (0..k).map(|c| Lattice::full(complex.rank(n, c))).collect())
            .collect();
        let mid = zero
            .iter()
            .zip(sub)
            .map(|(z, s)| {
                z.iter()
                    .zip(s)
                    .map(|(l, m)| l.sum(&Lattice::from_columns(m)))
                    .collect()
            })
            .collect();
        Filtration::new(complex, -1, vec![zero, mid, full])
    }

    pub fn p_min(&self) -> i64 {
        self.p_min
    }

    pub fn p_max(&self) -> i64 {
        self.p_min + self.stages.len() as i64 - 1
    }

    /// `F_p C_n` at level `c`, clamped outside `p_min..=p_max`.
    fn stage(&self, p: i64, n: i64, c: usize) -> Lattice {
        let s = (p.clamp(self.p_min, self.p_max()) - self.p_min) as usize;
        self.stages[s][(n - self.start) as usize][c].clone()
    }
}

/// One page `E_r`: entries `E_r^{p,q}` (total degree `p + q`) and `d_r`.
#[derive(Clone, Debug)]
pub struct SpectralSequencePage {
    pub r: usize,
    pub entries: BTreeMap<(i64, i64), Homology>,
    /// `d_r: E_r^{p,q} -> E_r^{p-r,q+r-1}`, keyed by source.
    pub differentials: BTreeMap<(i64, i64), MackeyMorphism>,
}

impl SpectralSequencePage {
    pub fn entry(&self, p: i64, q: i64) -> Option<&Homology> {
        self.entries.get(&(p, q))
    }

    /// Invariant factors of every nonzero entry, level by level.
    pub fn table(&self) -> Vec<((i64, i64), Vec<Vec<Int>>)> {
        self.entries
            .iter()
            .filter(|(_, e)| !e.is_zero())
            .map(|(&k, e)| (k, e.functor.invariant_factors()))
            .collect()
    }
}

fn entry(cx: &MackeyChainComplex, f: &Filtration, r: usize, p: i64, n: i64) -> Homology {
    let r = r as i64;
    let obj = cx.object(n).expect("degree inside the complex");
    let subs = (0..cx.class_count())
        .map(|c| {
            let fp = f.stage(p, n, c);
            let z = match cx.object(n - 1) {
                Some(_) => fp.intersection(&f.stage(p - r, n - 1, c).preimage(&cx.d(n, c))),
                None => fp,
            };
            let below = f.stage(p - 1, n, c);
            let d = match cx.object(n + 1) {
                Some(_) => f.stage(p + r - 1, n + 1, c).image(&cx.d(n + 1, c)),
                None => Lattice::zero(cx.rank(n, c)),
            };
            let den = below.sum(&d);
            Subquotient::new(z.sum(&den), den).expect("nested")
        })
        .collect();
    Homology::new(obj, subs)
}

/// `E_r` with entries `(Z + F_{p-1} + dF_{p+r-1}) / (F_{p-1} + dF_{p+r-1})`,
/// `Z = F_p cap d^{-1} F_{p-r}`, levelwise in `C_{p+q}`.
pub fn ss_page(cx: &MackeyChainComplex, f: &Filtration, r: usize) -> Result<SpectralSequencePage> {
    let mut entries = BTreeMap::new();
    for p in f.p_min() + 1..=f.p_max() {
        for n in cx.degrees() {
            entries.insert((p, n - p), entry(cx, f, r, p, n));
        }
    }
    let ri = r as i64;
    let mut differentials = BTreeMap::new();
    for (&(p, q), e) in &entries {
        let n = p + q;
        let Some(d) = cx.differential(n) else {
            continue;
        };
        let Some(t) = entries.get(&(p - ri, q + ri - 1)) else {
            continue;
        };
        differentials.insert((p, q), e.map_to(t, d.levels())?);
    }
    for (&(p, q), d) in &differentials {
        if let Some(next) = differentials.get(&(p - ri, q + ri - 1)) {
            if !MackeyMorphism::then(d, next)?.is_zero() {
                return Err(Error::axiom(
                    "d_r o d_r = 0",
                    format!("r = {r}, (p, q) = ({p}, {q})"),
                ));
            }
        }
    }
    Ok(SpectralSequencePage {
        r,
        entries,
        differentials,
    })
}

/// Pages `E_1..E_{r_max}`, each checked against the homology of the previous one.
pub fn ss_pages(
    cx: &MackeyChainComplex,
    f: &Filtration,
    r_max: usize,
) -> Result<Vec<SpectralSequencePage>> {
    let mut pages: Vec<SpectralSequencePage> = Vec::with_capacity(r_max);
    for r in 1..=r_max {
        let page = ss_page(cx, f, r)?;
        if let Some(prev) = pages.last() {
            compare_pages(prev, &page)?;
        }
        pages.push(page);
    }
    Ok(pages)
}

/// Checks `E_{r+1} = H(E_r, d_r)` entrywise by invariant factors.
pub fn compare_pages(a: &SpectralSequencePage, b: &SpectralSequencePage) -> Result<()> {
    let r = a.r as i64;
    for (&(p, q), e) in &a.entries {
        let Some(next) = b.entries.get(&(p, q)) else {
            continue;
        };
        for c in 0..e.subs.len() {
            let level = e.functor.level(c);
            let z = match (
                a.differentials.get(&(p, q)),
                a.entries.get(&(p - r, q + r - 1)),
            ) {
                (Some(d), Some(t)) => t.functor.level(c).kernel_lattice(d.level(c)),
                _ => Lattice::full(level.generator_count()),
            };
            let b_in = match a.differentials.get(&(p + r, q - r + 1)) {
                Some(d) => Lattice::from_columns(d.level(c)),
                None => Lattice::zero(level.generator_count()),
            };
            let h =
                Subquotient::new(z, level.relation_lattice().sum(&b_in)).expect("d_r o d_r = 0");
            if h.group().invariant_factors() != next.functor.level(c).invariant_factors() {
                return Err(Error::axiom(
                    "E_{r+1} = H(E_r)",
                    format!("r = {r}, (p, q) = ({p}, {q}), level {c}"),
                ));
            }
        }
    }
    Ok(())
}

/// The page that no differential leaves or enters.
pub fn e_infinity(cx: &MackeyChainComplex, f: &Filtration) -> Result<SpectralSequencePage> {
    ss_page(cx, f, (f.p_max() - f.p_min() + 1) as usize)
}

/// `F_p H_n / F_{p-1} H_n`, with `F_p H_n` the image of `H_n(F_p)`.
pub fn associated_graded(cx: &MackeyChainComplex, f: &Filtration, p: i64, n: i64) -> Homology {
    let obj = cx.object(n).expect("degree inside the complex");
    let subs = (0..cx.class_count())
        .map(|c| {
            let (z, b) = (cx.cycles(n, c), cx.boundaries(n, c));
            let num = z.intersection(&f.stage(p, n, c)).sum(&b);
            let den = z.intersection(&f.stage(p - 1, n, c)).sum(&b);
            Subquotient::new(num, den).expect("nested")
        })
        .collect();
    Homology::new(obj, subs)
}

/// The comparison `Gr_p H_{p+q} -> E_inf^{p,q}` induced by the identity.
pub fn abutment_iso(
    cx: &MackeyChainComplex,
    f: &Filtration,
    e_inf: &SpectralSequencePage,
    p: i64,
    q: i64,
) -> Result<MackeyMorphism> {
    let target = e_inf
        .entry(p, q)
        .ok_or_else(|| Error::Invalid(format!("no entry ({p}, {q})")))?;
    associated_graded(cx, f, p, p + q).compare(target)
}
