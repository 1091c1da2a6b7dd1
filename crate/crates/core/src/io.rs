//! JSON wire formats (`schema_version` 1). Every loader validates what it
//! builds; every writer emits something its loader accepts.
//!
//! Subgroup classes are referred to by label (`e`, `G`, a unique type name,
//! or `H<i>`), in the group's canonical class order: increasing order, then
//! lexicographically least member.

use serde::{Deserialize, Serialize};

use crate::abgroup::FinPresAbGroup;
use crate::burnside::{BurnsideElement, SpanCode};
use crate::convolution::{
    burnside_green, green_from_levelwise, GreenFunctor, GreenModule, MultTable,
};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupRef};
use crate::gset::{GMap, GSet};
use crate::homalg::{Filtration, MackeyChainComplex};
use crate::int::Int;
use crate::linalg::Lattice;
use crate::mackey::{generating_orbit_maps, MackeyFunctor, MackeyMorphism, MapKind, OrbitMap};
use crate::matrix::Matrix;

pub const SCHEMA_VERSION: u32 = 1;

fn check_version(v: Option<u32>, required: bool) -> Result<()> {
    match v {
        Some(SCHEMA_VERSION) => Ok(()),
        Some(other) => Err(Error::Malformed(format!(
            "unsupported schema_version {other}"
        ))),
        None if required => Err(Error::Malformed("missing schema_version".into())),
        None => Ok(()),
    }
}

fn parse<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T> {
    serde_json::from_str(text).map_err(Error::from)
}

fn rows(m: &Matrix) -> Vec<Vec<Int>> {
    m.row_vecs()
}

fn matrix(data: &[Vec<Int>], rows: usize, cols: usize, what: &str) -> Result<Matrix> {
    if data.len() != rows || data.iter().any(|r| r.len() != cols) {
        return Err(Error::Dimension(format!(
            "{what}: expected a {rows}x{cols} matrix"
        )));
    }
    Ok(Matrix::from_rows(data.to_vec(), cols))
}

// ---------------------------------------------------------------- groups

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PermutationsDoc {
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema_version: Option<u32>,
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub permutations: Option<PermutationsDoc>,
}

impl GroupDoc {
    pub fn build(&self) -> Result<GroupRef> {
        match (&self.table, &self.permutations) {
            (Some(_), Some(_)) => Err(Error::Malformed(
                "give either a table or permutations, not both".into(),
            )),
            (Some(t), None) => FiniteGroup::from_table(&self.name, t),
            (None, Some(p)) => FiniteGroup::from_permutations(&self.name, p.degree, &p.generators),
            (None, None) => FiniteGroup::named(&self.name),
        }
    }

    pub fn of(g: &GroupRef) -> GroupDoc {
        GroupDoc {
            schema_version: None,
            name: g.name().to_string(),
            table: Some(g.table()),
            permutations: None,
        }
    }
}

pub fn group_from_json(text: &str) -> Result<GroupRef> {
    let d: GroupDoc = parse(text)?;
    check_version(d.schema_version, true)?;
    d.build()
}

pub fn group_to_json(g: &GroupRef) -> String {
    let mut d = GroupDoc::of(g);
    d.schema_version = Some(SCHEMA_VERSION);
    serde_json::to_string(&d).expect("serializable")
}

// ---------------------------------------------------------------- G-sets

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitCount {
    pub class: String,
    pub count: usize,
}

/// A G-set by its full action table (`action[g][x]`) or by orbit counts.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GSetDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema_version: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbits: Option<Vec<OrbitCount>>,
}

impl GSetDoc {
    pub fn build(&self, g: &GroupRef) -> Result<GSet> {
        match (&self.action, &self.orbits) {
            (Some(a), None) => GSet::new(g.clone(), a.clone()),
            (None, Some(o)) => {
                let types = o
                    .iter()
                    .map(|oc| Ok((g.class_by_label(&oc.class)?, oc.count)))
                    .collect::<Result<Vec<_>>>()?;
                Ok(GSet::from_orbits(g, &types))
            }
            _ => Err(Error::Malformed(
                "a G-set needs exactly one of action or orbits".into(),
            )),
        }
    }

    pub fn of(x: &GSet) -> GSetDoc {
        GSetDoc {
            schema_version: None,
            group: None,
            action: Some(x.action_table()),
            orbits: None,
        }
    }
}

pub fn gset_from_json(text: &str) -> Result<GSet> {
    let d: GSetDoc = parse(text)?;
    check_version(d.schema_version, true)?;
    let g = d
        .group
        .as_ref()
        .ok_or_else(|| Error::Malformed("G-set without a group".into()))?
        .build()?;
    d.build(&g)
}

pub fn gset_to_json(x: &GSet) -> String {
    let mut d = GSetDoc::of(x);
    d.schema_version = Some(SCHEMA_VERSION);
    d.group = Some(GroupDoc::of(x.group()));
    serde_json::to_string(&d).expect("serializable")
}

// ---------------------------------------------------------------- Mackey functors

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevelDoc {
    pub class: String,
    /// Cyclic orders of the generators; 0 means Z.
    pub orders: Vec<Int>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDoc {
    /// `res` or `tr`.
    pub kind: String,
    pub from: String,
    pub to: String,
    /// The element `a` of the orbit map `xA -> xaB`.
    pub elem: usize,
    pub matrix: Vec<Vec<Int>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MackeyDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema_version: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupDoc>,
    pub levels: Vec<LevelDoc>,
    pub maps: Vec<MapDoc>,
}

impl MackeyDoc {
    pub fn build(&self, g: &GroupRef) -> Result<MackeyFunctor> {
        let k = g.class_count();
        let mut levels: Vec<Option<FinPresAbGroup>> = vec![None; k];
        for l in &self.levels {
            let c = g.class_by_label(&l.class)?;
            if levels[c].is_some() {
                return Err(Error::Malformed(format!("level {} given twice", l.class)));
            }
            levels[c] = Some(FinPresAbGroup::diagonal(l.orders.clone())?);
        }
        let levels: Vec<FinPresAbGroup> = levels
            .into_iter()
            .enumerate()
            .map(|(c, l)| {
                l.ok_or_else(|| Error::Malformed(format!("missing level {}", g.class_label(c))))
            })
            .collect::<Result<_>>()?;
        let mut entries = Vec::with_capacity(self.maps.len());
        for m in &self.maps {
            let kind = match m.kind.as_str() {
                "res" => MapKind::Res,
                "tr" => MapKind::Tr,
                other => return Err(Error::Malformed(format!("unknown map kind {other:?}"))),
            };
            let (from, to) = (g.class_by_label(&m.from)?, g.class_by_label(&m.to)?);
            if m.elem >= g.order() {
                return Err(Error::Malformed(format!("element {} out of range", m.elem)));
            }
            let om = OrbitMap::new(g, from, to, m.elem)?;
            let (r, c) = match kind {
                MapKind::Res => (levels[from].generator_count(), levels[to].generator_count()),
                MapKind::Tr => (levels[to].generator_count(), levels[from].generator_count()),
            };
            entries.push((kind, om, matrix(&m.matrix, r, c, "structure map")?));
        }
        MackeyFunctor::from_generators(g, levels, entries)
    }

    pub fn of(m: &MackeyFunctor) -> MackeyDoc {
        let g = m.group();
        let levels = (0..g.class_count())
            .map(|c| LevelDoc {
                class: g.class_label(c).to_string(),
                orders: m.level(c).orders().to_vec(),
            })
            .collect();
        let mut maps = Vec::new();
        for om in generating_orbit_maps(g) {
            for (kind, name) in [(MapKind::Res, "res"), (MapKind::Tr, "tr")] {
                maps.push(MapDoc {
                    kind: name.into(),
                    from: g.class_label(om.from).to_string(),
                    to: g.class_label(om.to).to_string(),
                    elem: om.elem,
                    matrix: rows(m.map(kind, om)),
                });
            }
        }
        MackeyDoc {
            schema_version: None,
            group: None,
            levels,
            maps,
        }
    }
}

fn group_of(doc: &Option<GroupDoc>, fallback: Option<&GroupRef>) -> Result<GroupRef> {
    match (doc, fallback) {
        (Some(d), Some(g)) => {
            let built = d.build()?;
            if *built != **g {
                return Err(Error::GroupMismatch(
                    "nested group differs from the enclosing one".into(),
                ));
            }
            Ok(g.clone())
        }
        (Some(d), None) => d.build(),
        (None, Some(g)) => Ok(g.clone()),
        (None, None) => Err(Error::Malformed("missing group".into())),
    }
}

pub fn mackey_from_json(text: &str) -> Result<MackeyFunctor> {
    let d: MackeyDoc = parse(text)?;
    check_version(d.schema_version, true)?;
    let g = group_of(&d.group, None)?;
    d.build(&g)
}

pub fn mackey_doc(m: &MackeyFunctor) -> MackeyDoc {
    let mut d = MackeyDoc::of(m);
    d.schema_version = Some(SCHEMA_VERSION);
    d.group = Some(GroupDoc::of(m.group()));
    d
}

pub fn mackey_to_json(m: &MackeyFunctor) -> String {
    serde_json::to_string(&mackey_doc(m)).expect("serializable")
}

// ---------------------------------------------------------------- Green functors and modules

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GreenDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema_version: Option<u32>,
    /// `burnside` builds the Burnside Green functor of `group`, ignoring the rest.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mackey: Option<MackeyDoc>,
    /// `tables[level][i][j]` is the product of generators `i` and `j`.
    #[serde(default)]
    pub tables: Vec<MultTable>,
    #[serde(default)]
    pub units: Vec<Vec<Int>>,
}

impl GreenDoc {
    pub fn build(&self) -> Result<GreenFunctor> {
        if self.kind.as_deref() == Some("burnside") {
            let g = group_of(&self.group, None)?;
            return burnside_green(&g);
        }
        if let Some(k) = &self.kind {
            return Err(Error::Malformed(format!(
                "unknown Green functor kind {k:?}"
            )));
        }
        let m = self
            .mackey
            .as_ref()
            .ok_or_else(|| Error::Malformed("Green functor without mackey".into()))?;
        let g = group_of(&self.group, None).or_else(|_| group_of(&m.group, None))?;
        let f = m.build(&g)?;
        green_from_levelwise(&f, self.tables.clone(), self.units.clone())
    }

    pub fn of(r: &GreenFunctor) -> GreenDoc {
        GreenDoc {
            schema_version: Some(SCHEMA_VERSION),
            kind: None,
            group: Some(GroupDoc::of(r.group())),
            mackey: Some(MackeyDoc::of(r.functor())),
            tables: r.tables().to_vec(),
            units: r.units().to_vec(),
        }
    }
}

pub fn green_from_json(text: &str) -> Result<GreenFunctor> {
    let d: GreenDoc = parse(text)?;
    check_version(d.schema_version, true)?;
    d.build()
}

pub fn green_to_json(r: &GreenFunctor) -> String {
    serde_json::to_string(&GreenDoc::of(r)).expect("serializable")
}

/// A module: a Mackey functor and its action tables. Without tables the
/// functor is taken as a module over the Burnside Green functor.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema_version: Option<u32>,
    pub mackey: MackeyDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<Vec<MultTable>>,
}

pub fn module_from_json(ring: &GreenFunctor, text: &str) -> Result<GreenModule> {
    let d: ModuleDoc = parse(text)?;
    check_version(d.schema_version, true)?;
    let g = group_of(&d.mackey.group, Some(ring.group()))?;
    let m = d.mackey.build(&g)?;
    match d.action {
        Some(a) => GreenModule::from_levelwise(ring, &m, a),
        None => GreenModule::over_burnside(ring, &m),
    }
}

pub fn module_to_json(m: &GreenModule) -> String {
    let mut mackey = MackeyDoc::of(m.underlying());
    mackey.group = Some(GroupDoc::of(m.ring().group()));
    serde_json::to_string(&ModuleDoc {
        schema_version: Some(SCHEMA_VERSION),
        mackey,
        action: Some(m.action_tables().to_vec()),
    })
    .expect("serializable")
}

// ---------------------------------------------------------------- complexes

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiltrationDoc {
    /// `skeletal`, `trivial`, or `explicit`.
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_min: Option<i64>,
    /// `stages[s][degree][level]`: generators of the stage as rows.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stages: Option<Vec<Vec<Vec<Vec<Vec<Int>>>>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema_version: Option<u32>,
    pub group: GroupDoc,
    pub start: i64,
    pub objects: Vec<MackeyDoc>,
    /// `differentials[i][level]`: `C_{start+i+1} -> C_{start+i}`.
    pub differentials: Vec<Vec<Vec<Vec<Int>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub filtration: Option<FiltrationDoc>,
}

pub fn complex_from_json(text: &str) -> Result<(MackeyChainComplex, Option<Filtration>)> {
    let d: ComplexDoc = parse(text)?;
    check_version(d.schema_version, true)?;
    let g = d.group.build()?;
    let objects = d
        .objects
        .iter()
        .map(|o| {
            let gg = group_of(&o.group, Some(&g))?;
            o.build(&gg)
        })
        .collect::<Result<Vec<_>>>()?;
    if objects.is_empty() {
        return Err(Error::Malformed("complex without objects".into()));
    }
    if d.differentials.len() + 1 != objects.len() {
        return Err(Error::Dimension(
            "need one differential between consecutive objects".into(),
        ));
    }
    let k = g.class_count();
    let diffs = d
        .differentials
        .iter()
        .enumerate()
        .map(|(i, levels)| {
            let (src, tgt) = (&objects[i + 1], &objects[i]);
            if levels.len() != k {
                return Err(Error::Dimension("one differential matrix per level".into()));
            }
            let maps = levels
                .iter()
                .enumerate()
                .map(|(c, m)| matrix(m, tgt.rank(c), src.rank(c), "differential"))
                .collect::<Result<Vec<_>>>()?;
            MackeyMorphism::new(src, tgt, maps)
        })
        .collect::<Result<Vec<_>>>()?;
    let cx = MackeyChainComplex::new(d.start, objects, diffs)?;
    let filtration = match &d.filtration {
        None => None,
        Some(f) => Some(match f.kind.as_str() {
            "skeletal" => Filtration::skeletal(&cx)?,
            "trivial" => Filtration::trivial(&cx)?,
            "explicit" => {
                let p_min = f
                    .p_min
                    .ok_or_else(|| Error::Malformed("explicit filtration needs p_min".into()))?;
                let stages = f
                    .stages
                    .as_ref()
                    .ok_or_else(|| Error::Malformed("explicit filtration needs stages".into()))?;
                let built = stages
                    .iter()
                    .map(|stage| {
                        if stage.len() != cx.objects().len() {
                            return Err(Error::Dimension(
                                "one entry per degree in each stage".into(),
                            ));
                        }
                        stage
                            .iter()
                            .zip(cx.objects())
                            .map(|(lv, obj)| {
                                if lv.len() != k {
                                    return Err(Error::Dimension(
                                        "one entry per level in each stage".into(),
                                    ));
                                }
                                lv.iter()
                                    .enumerate()
                                    .map(|(c, gens)| {
                                        let n = obj.rank(c);
                                        let m =
                                            matrix(gens, gens.len(), n, "filtration generators")?;
                                        Ok(obj
                                            .level(c)
                                            .relation_lattice()
                                            .sum(&Lattice::from_rows(&m)))
                                    })
                                    .collect::<Result<Vec<_>>>()
                            })
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                Filtration::new(&cx, p_min, built)?
            }
            other => {
                return Err(Error::Malformed(format!(
                    "unknown filtration kind {other:?}"
                )))
            }
        }),
    };
    Ok((cx, filtration))
}

pub fn complex_to_json(cx: &MackeyChainComplex, filtration: Option<&str>) -> String {
    let g = cx.group();
    let d = ComplexDoc {
        schema_version: Some(SCHEMA_VERSION),
        group: GroupDoc::of(g),
        start: cx.start(),
        objects: cx.objects().iter().map(MackeyDoc::of).collect(),
        differentials: cx
            .differentials()
            .iter()
            .map(|d| d.levels().iter().map(rows).collect())
            .collect(),
        filtration: filtration.map(|kind| FiltrationDoc {
            kind: kind.into(),
            p_min: None,
            stages: None,
        }),
    };
    serde_json::to_string(&d).expect("serializable")
}

// ---------------------------------------------------------------- spans

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub code: SpanCode,
    pub coefficient: Int,
}

/// A Burnside element `source -> target`: either canonical terms or an
/// explicit span `source <- middle -> target`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpanDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema_version: Option<u32>,
    pub group: GroupDoc,
    pub source: GSetDoc,
    pub target: GSetDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub terms: Option<Vec<TermDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub middle: Option<GSetDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right: Option<Vec<usize>>,
}

pub fn span_from_json(text: &str) -> Result<BurnsideElement> {
    let d: SpanDoc = parse(text)?;
    check_version(d.schema_version, true)?;
    let g = d.group.build()?;
    let (x, y) = (d.source.build(&g)?, d.target.build(&g)?);
    match (&d.terms, &d.middle, &d.left, &d.right) {
        (Some(terms), None, None, None) => {
            let basis = crate::burnside::hom_basis(&x, &y)?;
            let mut v = vec![Int::ZERO; basis.len()];
            for t in terms {
                let i = basis.iter().position(|c| *c == t.code).ok_or_else(|| {
                    Error::Malformed(format!("{:?} is not a canonical code", t.code))
                })?;
                v[i] += t.coefficient.clone();
            }
            Ok(BurnsideElement::from_vector(&x, &y, &basis, &v))
        }
        (None, Some(m), Some(l), Some(r)) => {
            let u = m.build(&g)?;
            let left = GMap::new(u.clone(), x, l.clone())?;
            let right = GMap::new(u, y, r.clone())?;
            BurnsideElement::from_span(&left, &right)
        }
        _ => Err(Error::Malformed(
            "a span needs either terms or middle, left and right".into(),
        )),
    }
}

pub fn span_to_json(e: &BurnsideElement) -> String {
    let d = SpanDoc {
        schema_version: Some(SCHEMA_VERSION),
        group: GroupDoc::of(e.source().group()),
        source: GSetDoc::of(e.source()),
        target: GSetDoc::of(e.target()),
        terms: Some(
            e.terms()
                .iter()
                .map(|(c, k)| TermDoc {
                    code: *c,
                    coefficient: k.clone(),
                })
                .collect(),
        ),
        middle: None,
        left: None,
        right: None,
    };
    serde_json::to_string(&d).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::burnside::random_element;
    use crate::convolution::fixed_point_green;
    use crate::mackey::{burnside_functor, fixed_point_mackey, Representation};
    use rand::SeedableRng;

    #[test]
    fn groups_round_trip() {
        for name in ["trivial", "C2", "C4", "C2xC2", "S3", "Q8"] {
            let g = FiniteGroup::named(name).unwrap();
            let back = group_from_json(&group_to_json(&g)).unwrap();
            assert_eq!(*back, *g);
            assert_eq!(back.class_count(), g.class_count());
        }
        let g = group_from_json(
            r#"{"schema_version":1,"name":"C2","permutations":{"degree":2,"generators":[[1,0]]}}"#,
        )
        .unwrap();
        assert_eq!(g.order(), 2);
        assert!(group_from_json(r#"{"name":"C2"}"#).is_err());
        assert!(group_from_json(r#"{"schema_version":2,"name":"C2"}"#).is_err());
    }

    #[test]
    fn mackey_functors_round_trip() {
        for name in ["C2", "S3", "C2xC2"] {
            let g = FiniteGroup::named(name).unwrap();
            let fp = fixed_point_mackey(
                &Representation::trivial(&g, FinPresAbGroup::cyclic(2)).unwrap(),
            )
            .unwrap();
            for m in [burnside_functor(&g), fp] {
                let back = mackey_from_json(&mackey_to_json(&m)).unwrap();
                assert_eq!(back, m);
            }
        }
    }

    #[test]
    fn green_functors_round_trip() {
        let g = FiniteGroup::named("C2").unwrap();
        let v = Representation::trivial(&g, FinPresAbGroup::free(1)).unwrap();
        let r = fixed_point_green(&v, &vec![vec![vec![Int::ONE]]], &[Int::ONE]).unwrap();
        let back = green_from_json(&green_to_json(&r)).unwrap();
        assert_eq!(back, r);
        let b = green_from_json(r#"{"schema_version":1,"kind":"burnside","group":{"name":"C3"}}"#)
            .unwrap();
        assert_eq!(b.functor().rank(1), 2);
        let m = GreenModule::regular(&r);
        let back = module_from_json(&r, &module_to_json(&m)).unwrap();
        assert_eq!(back.underlying(), m.underlying());
    }

    #[test]
    fn spans_round_trip() {
        let g = FiniteGroup::named("S3").unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let orbits = crate::burnside::orbits(&g);
        for _ in 0..20 {
            let e = random_element(&orbits[1], &orbits[2], &mut rng, 3, 4).unwrap();
            assert_eq!(span_from_json(&span_to_json(&e)).unwrap(), e);
        }
    }

    #[test]
    fn complexes_round_trip() {
        let g = FiniteGroup::named("C2").unwrap();
        let a = fixed_point_mackey(&Representation::trivial(&g, FinPresAbGroup::free(1)).unwrap())
            .unwrap();
        let d = MackeyMorphism::new(&a, &a, vec![Matrix::from_i64_rows(&[vec![2]], 1); 2]).unwrap();
        let cx = MackeyChainComplex::new(0, vec![a.clone(), a], vec![d]).unwrap();
        let (back, f) = complex_from_json(&complex_to_json(&cx, Some("skeletal"))).unwrap();
        assert_eq!(back.objects(), cx.objects());
        assert!(f.is_some());
    }
}
