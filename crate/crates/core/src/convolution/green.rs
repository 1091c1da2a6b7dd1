//! Green functors (monoids for the box product) and their modules.

use crate::burnside::{canonical_code, hom_basis};
use crate::error::{Error, Result};
use crate::gset::GSet;
use crate::int::Int;
use crate::mackey::{
    burnside_functor, generating_orbit_maps, representable, yoneda, MackeyFunctor, MackeyMorphism,
    OrbitMap, Representation,
};
use crate::matrix::Matrix;

use super::{box_product, box_unit_iso, BoxProduct};

/// `table[i][j]` is `e_i * e_j` at one level.
pub type MultTable = Vec<Vec<Vec<Int>>>;

fn unit_vec(n: usize, i: usize) -> Vec<Int> {
    let mut v = vec![Int::ZERO; n];
    v[i] = Int::ONE;
    v
}

fn bilinear(table: &MultTable, x: &[Int], y: &[Int], n: usize) -> Vec<Int> {
    let mut out = vec![Int::ZERO; n];
    for (i, a) in x.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in y.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            let ab = a * b;
            for (o, t) in out.iter_mut().zip(&table[i][j]) {
                if !t.is_zero() {
                    *o += &ab * t;
                }
            }
        }
    }
    out
}

fn fail(axiom: &str, cell: String) -> Error {
    Error::axiom(axiom, cell)
}

fn map_label(g: &crate::group::GroupRef, om: OrbitMap) -> String {
    format!(
        "{} -> {} via element {}",
        g.class_label(om.from),
        g.class_label(om.to),
        om.elem
    )
}

/// Index of the identity span `pt <- G/C = G/C` in `hom_basis(pt, G/C)`.
pub(crate) fn burnside_one(g: &crate::group::GroupRef, c: usize) -> usize {
    let pt = GSet::point(g);
    let o = GSet::orbit(g, c);
    let code = canonical_code(&pt, &o, g.rep(c), 0, 0);
    hom_basis(&pt, &o)
        .expect("same group")
        .iter()
        .position(|x| *x == code)
        .expect("identity span is a basis element")
}

/// A commutative Green functor: a Mackey functor with levelwise rings,
/// restrictions ring maps and transfers satisfying Frobenius reciprocity.
#[derive(Clone, Debug)]
pub struct GreenFunctor {
    functor: MackeyFunctor,
    tables: Vec<MultTable>,
    units: Vec<Vec<Int>>,
    square: BoxProduct,
    mult: MackeyMorphism,
    unit: MackeyMorphism,
}

impl GreenFunctor {
    /// From levelwise multiplication tables and units; every axiom is checked.
    pub fn from_levelwise(
        functor: &MackeyFunctor,
        tables: Vec<MultTable>,
        units: Vec<Vec<Int>>,
    ) -> Result<GreenFunctor> {
        check_levelwise(functor, &tables, &units)?;
        let square = box_product(functor, functor)?;
        let mult = dress_multiplication(functor, &tables, &square)?;
        let g = functor.group();
        let pt = representable(&GSet::point(g))?;
        let unit = yoneda(&pt, functor, &units[g.top_class()])?;
        let unit = MackeyMorphism::new(unit.source(), unit.target(), unit.levels().to_vec())?;
        Ok(GreenFunctor {
            functor: functor.clone(),
            tables,
            units,
            square,
            mult,
            unit,
        })
    }

    /// From a multiplication `R box R -> R` and a unit `A_pt -> R`.
    pub fn from_mult(
        square: &BoxProduct,
        mult: &MackeyMorphism,
        unit: &MackeyMorphism,
    ) -> Result<GreenFunctor> {
        let r = square.left();
        let g = r.group().clone();
        if square.right() != r || mult.source() != square.functor() || mult.target() != r {
            return Err(Error::FootMismatch(
                "multiplication must be R box R -> R".into(),
            ));
        }
        if *unit.source() != burnside_functor(&g) || unit.target() != r {
            return Err(Error::FootMismatch("unit must be A_pt -> R".into()));
        }
        let k = g.class_count();
        let mut tables = Vec::with_capacity(k);
        let mut units = Vec::with_capacity(k);
        for c in 0..k {
            let n = r.rank(c);
            let table = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            let p = square.diagonal_pair(c, &unit_vec(n, i), &unit_vec(n, j));
                            r.level(c).normalize(&mult.level(c).mul_vec(&p))
                        })
                        .collect()
                })
                .collect();
            tables.push(table);
            units.push(unit.level(c).column(burnside_one(&g, c)));
        }
        check_levelwise(r, &tables, &units)?;
        let dress = dress_multiplication(r, &tables, square)?;
        if !dress.equals(mult) {
            return Err(fail(
                "multiplication",
                "mult differs from the pairing it induces".into(),
            ));
        }
        Ok(GreenFunctor {
            functor: r.clone(),
            tables,
            units,
            square: square.clone(),
            mult: mult.clone(),
            unit: unit.clone(),
        })
    }

    pub fn functor(&self) -> &MackeyFunctor {
        &self.functor
    }

    pub fn group(&self) -> &crate::group::GroupRef {
        self.functor.group()
    }

    pub fn table(&self, c: usize) -> &MultTable {
        &self.tables[c]
    }

    pub fn tables(&self) -> &[MultTable] {
        &self.tables
    }

    pub fn unit(&self, c: usize) -> &[Int] {
        &self.units[c]
    }

    pub fn units(&self) -> &[Vec<Int>] {
        &self.units
    }

    pub fn square(&self) -> &BoxProduct {
        &self.square
    }

    pub fn mult(&self) -> &MackeyMorphism {
        &self.mult
    }

    pub fn unit_morphism(&self) -> &MackeyMorphism {
        &self.unit
    }

    /// `x * y` at level `c`.
    pub fn mul(&self, c: usize, x: &[Int], y: &[Int]) -> Vec<Int> {
        let n = self.functor.rank(c);
        self.functor
            .level(c)
            .normalize(&bilinear(&self.tables[c], x, y, n))
    }

    /// Multiplication of `e_i` as a matrix at level `c`.
    pub fn left_mult(&self, c: usize, x: &[Int]) -> Matrix {
        let n = self.functor.rank(c);
        let cols: Vec<Vec<Int>> = (0..n).map(|j| self.mul(c, x, &unit_vec(n, j))).collect();
        Matrix::from_columns(&cols, n)
    }
}

impl PartialEq for GreenFunctor {
    fn eq(&self, other: &GreenFunctor) -> bool {
        self.functor == other.functor && self.tables == other.tables && self.units == other.units
    }
}

/// Same as [`GreenFunctor::from_mult`].
pub fn green_from_mult(
    square: &BoxProduct,
    mult: &MackeyMorphism,
    unit: &MackeyMorphism,
) -> Result<GreenFunctor> {
    GreenFunctor::from_mult(square, mult, unit)
}

/// Same as [`GreenFunctor::from_levelwise`].
pub fn green_from_levelwise(
    functor: &MackeyFunctor,
    tables: Vec<MultTable>,
    units: Vec<Vec<Int>>,
) -> Result<GreenFunctor> {
    GreenFunctor::from_levelwise(functor, tables, units)
}

/// `A_pt` with multiplication the unitor `A_pt box A_pt -> A_pt`.
pub fn burnside_green(g: &crate::group::GroupRef) -> Result<GreenFunctor> {
    let a = burnside_functor(g);
    let square = box_product(&a, &a)?;
    let mult = box_unit_iso(&square)?;
    GreenFunctor::from_mult(&square, &mult, &MackeyMorphism::identity(&a))
}

/// Fixed points of a G-ring `V` (product given on the module generators).
pub fn fixed_point_green(
    v: &Representation,
    product: &MultTable,
    one: &[Int],
) -> Result<GreenFunctor> {
    let g = v.group().clone();
    let fp = crate::mackey::fixed_point_mackey(v)?;
    let n = v.module().generator_count();
    let mut tables = Vec::new();
    let mut units = Vec::new();
    for c in 0..g.class_count() {
        let sub = v.invariants(g.rep(c));
        let lift = sub.lift_matrix();
        let r = fp.rank(c);
        let mut table = vec![vec![Vec::new(); r]; r];
        for (i, row) in table.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let p = bilinear(product, &lift.column(i), &lift.column(j), n);
                *cell = sub.project(&v.module().normalize(&p)).ok_or_else(|| {
                    fail(
                        "closure",
                        format!(
                            "product of invariants at {} is not invariant",
                            g.class_label(c)
                        ),
                    )
                })?;
            }
        }
        tables.push(table);
        units.push(
            sub.project(one)
                .ok_or_else(|| fail("unit", "unit is not invariant".into()))?,
        );
    }
    GreenFunctor::from_levelwise(&fp, tables, units)
}

fn check_levelwise(r: &MackeyFunctor, tables: &[MultTable], units: &[Vec<Int>]) -> Result<()> {
    let g = r.group();
    let k = g.class_count();
    if tables.len() != k || units.len() != k {
        return Err(Error::Dimension("one table and unit per level".into()));
    }
    for c in 0..k {
        let n = r.rank(c);
        let lvl = r.level(c);
        let lab = g.class_label(c);
        if units[c].len() != n
            || tables[c].len() != n
            || tables[c]
                .iter()
                .any(|row| row.len() != n || row.iter().any(|v| v.len() != n))
        {
            return Err(Error::Dimension(format!("table shape at level {lab}")));
        }
        let mul = |x: &[Int], y: &[Int]| lvl.normalize(&bilinear(&tables[c], x, y, n));
        let orders = lvl.orders();
        for i in 0..n {
            for j in 0..n {
                let eij = &tables[c][i][j];
                if !orders[i].is_zero() {
                    let t: Vec<Int> = eij.iter().map(|x| x * &orders[i]).collect();
                    if !lvl.is_zero_element(&t) {
                        return Err(fail(
                            "well-defined",
                            format!("level {lab}: ord(e{i}) e{i}*e{j} != 0"),
                        ));
                    }
                }
                if !lvl.elements_equal(eij, &tables[c][j][i]) {
                    return Err(fail(
                        "commutativity",
                        format!("level {lab}: e{i}*e{j} != e{j}*e{i}"),
                    ));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = mul(&unit_vec(n, i), &unit_vec(n, j));
                for l in 0..n {
                    let lhs = mul(&ij, &unit_vec(n, l));
                    let jl = mul(&unit_vec(n, j), &unit_vec(n, l));
                    let rhs = mul(&unit_vec(n, i), &jl);
                    if !lvl.elements_equal(&lhs, &rhs) {
                        return Err(fail(
                            "associativity",
                            format!("level {lab}: (e{i}*e{j})*e{l} != e{i}*(e{j}*e{l})"),
                        ));
                    }
                }
            }
            if !lvl.elements_equal(&mul(&units[c], &unit_vec(n, i)), &unit_vec(n, i)) {
                return Err(fail("unit", format!("level {lab}: 1*e{i} != e{i}")));
            }
        }
    }
    for om in generating_orbit_maps(g) {
        let (a, b) = (om.from, om.to);
        let (na, nb) = (r.rank(a), r.rank(b));
        let (la, lb) = (r.level(a), r.level(b));
        let res = r.res(om);
        let tr = r.tr(om);
        let mul_a = |x: &[Int], y: &[Int]| la.normalize(&bilinear(&tables[a], x, y, na));
        let mul_b = |x: &[Int], y: &[Int]| lb.normalize(&bilinear(&tables[b], x, y, nb));
        if !la.elements_equal(&res.mul_vec(&units[b]), &units[a]) {
            return Err(fail(
                "unit",
                format!("res {} does not preserve 1", map_label(g, om)),
            ));
        }
        for i in 0..nb {
            for j in 0..nb {
                let lhs = res.mul_vec(&mul_b(&unit_vec(nb, i), &unit_vec(nb, j)));
                let rhs = mul_a(&res.column(i), &res.column(j));
                if !la.elements_equal(&lhs, &rhs) {
                    return Err(fail(
                        "restriction",
                        format!("res {} (e{i}*e{j})", map_label(g, om)),
                    ));
                }
            }
        }
        for i in 0..na {
            for j in 0..nb {
                let lhs = tr.mul_vec(&mul_a(&unit_vec(na, i), &res.column(j)));
                let rhs = mul_b(&tr.column(i), &unit_vec(nb, j));
                if !lb.elements_equal(&lhs, &rhs) {
                    return Err(fail(
                        "Frobenius",
                        format!("tr {}: x = e{i}, y = e{j}", map_label(g, om)),
                    ));
                }
            }
        }
    }
    Ok(())
}

/// The morphism `R box R -> R` induced by the levelwise product:
/// `[phi; e_i, e_j] -> tr_c(res_a e_i * res_b e_j)` for `phi` with legs `a, b, c`.
fn dress_multiplication(
    r: &MackeyFunctor,
    tables: &[MultTable],
    square: &BoxProduct,
) -> Result<MackeyMorphism> {
    let o = square.orbits();
    square
        .descend(r, |j, k, l, code, i, jj| {
            let (a, b, c) = o.legs(k, l, j, code);
            let m = code.class;
            let n = r.rank(m);
            let x = r.res(a).column(i);
            let y = r.res(b).column(jj);
            let p = r.level(m).normalize(&bilinear(&tables[m], &x, &y, n));
            Ok(r.level(j).normalize(&r.tr(c).mul_vec(&p)))
        })
        .map_err(|e| match e {
            Error::Axiom { .. } => fail(
                "Frobenius",
                format!("levelwise data does not induce R box R -> R: {e}"),
            ),
            other => other,
        })
}

/// A module over a Green functor, with levelwise action tables
/// (`action[c][i][j] = r_i . m_j`).
#[derive(Clone, Debug)]
pub struct GreenModule {
    ring: GreenFunctor,
    underlying: MackeyFunctor,
    action: Vec<MultTable>,
}

impl GreenModule {
    pub fn from_levelwise(
        ring: &GreenFunctor,
        underlying: &MackeyFunctor,
        action: Vec<MultTable>,
    ) -> Result<GreenModule> {
        check_module(ring, underlying, &action)?;
        Ok(GreenModule {
            ring: ring.clone(),
            underlying: underlying.clone(),
            action,
        })
    }

    /// From an action morphism `R box M -> M`.
    pub fn from_action(
        ring: &GreenFunctor,
        b: &BoxProduct,
        act: &MackeyMorphism,
    ) -> Result<GreenModule> {
        let (r, m) = (ring.functor(), b.right());
        if b.left() != r || act.source() != b.functor() || act.target() != m {
            return Err(Error::FootMismatch("action must be R box M -> M".into()));
        }
        let k = r.group().class_count();
        let action = (0..k)
            .map(|c| {
                (0..r.rank(c))
                    .map(|i| {
                        (0..m.rank(c))
                            .map(|j| {
                                let p = b.diagonal_pair(
                                    c,
                                    &unit_vec(r.rank(c), i),
                                    &unit_vec(m.rank(c), j),
                                );
                                m.level(c).normalize(&act.level(c).mul_vec(&p))
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        GreenModule::from_levelwise(ring, m, action)
    }

    /// The ring acting on itself.
    pub fn regular(ring: &GreenFunctor) -> GreenModule {
        GreenModule {
            ring: ring.clone(),
            underlying: ring.functor().clone(),
            action: ring.tables.clone(),
        }
    }

    /// Any Mackey functor as a module over the Burnside Green functor.
    pub fn over_burnside(ring: &GreenFunctor, m: &MackeyFunctor) -> Result<GreenModule> {
        if *ring.functor() != burnside_functor(m.group()) {
            return Err(Error::FootMismatch(
                "ring is not the Burnside Green functor".into(),
            ));
        }
        let b = box_product(ring.functor(), m)?;
        let act = box_unit_iso(&b)?;
        GreenModule::from_action(ring, &b, &act)
    }

    pub fn ring(&self) -> &GreenFunctor {
        &self.ring
    }

    pub fn underlying(&self) -> &MackeyFunctor {
        &self.underlying
    }

    pub fn action_table(&self, c: usize) -> &MultTable {
        &self.action[c]
    }

    pub fn action_tables(&self) -> &[MultTable] {
        &self.action
    }

    /// `r . m` at level `c`.
    pub fn act(&self, c: usize, r: &[Int], m: &[Int]) -> Vec<Int> {
        let n = self.underlying.rank(c);
        self.underlying
            .level(c)
            .normalize(&bilinear(&self.action[c], r, m, n))
    }

    /// The action morphism `R box M -> M` on a given box product.
    pub fn action_morphism(&self, b: &BoxProduct) -> Result<MackeyMorphism> {
        if b.left() != self.ring.functor() || b.right() != &self.underlying {
            return Err(Error::FootMismatch("box product is not R box M".into()));
        }
        let (r, m) = (self.ring.functor(), &self.underlying);
        let o = b.orbits();
        b.descend(m, |j, k, l, code, i, jj| {
            let (a, bb, c) = o.legs(k, l, j, code);
            let x = r.res(a).column(i);
            let y = m.res(bb).column(jj);
            let p = self.act(code.class, &x, &y);
            Ok(m.level(j).normalize(&m.tr(c).mul_vec(&p)))
        })
    }

    /// Whether a Mackey morphism between modules is R-linear.
    pub fn is_linear(&self, other: &GreenModule, f: &MackeyMorphism) -> bool {
        let k = self.ring.group().class_count();
        (0..k).all(|c| {
            let r = self.ring.functor().rank(c);
            (0..r).all(|i| {
                (0..self.underlying.rank(c)).all(|j| {
                    let e = unit_vec(r, i);
                    let lhs =
                        f.level(c)
                            .mul_vec(&self.act(c, &e, &unit_vec(self.underlying.rank(c), j)));
                    let rhs = other.act(c, &e, &f.level(c).column(j));
                    other.underlying.level(c).elements_equal(&lhs, &rhs)
                })
            })
        })
    }
}

fn check_module(ring: &GreenFunctor, m: &MackeyFunctor, action: &[MultTable]) -> Result<()> {
    let r = ring.functor();
    let g = r.group();
    if m.group() != g {
        return Err(Error::GroupMismatch(
            "module and ring over different groups".into(),
        ));
    }
    let k = g.class_count();
    if action.len() != k {
        return Err(Error::Dimension("one action table per level".into()));
    }
    let act = |c: usize, x: &[Int], y: &[Int]| {
        m.level(c).normalize(&bilinear(&action[c], x, y, m.rank(c)))
    };
    for c in 0..k {
        let (nr, nm) = (r.rank(c), m.rank(c));
        let lab = g.class_label(c);
        if action[c].len() != nr
            || action[c]
                .iter()
                .any(|row| row.len() != nm || row.iter().any(|v| v.len() != nm))
        {
            return Err(Error::Dimension(format!(
                "action table shape at level {lab}"
            )));
        }
        let (ro, mo) = (r.level(c).orders(), m.level(c).orders());
        for i in 0..nr {
            for j in 0..nm {
                for (d, what) in [(&ro[i], "ring"), (&mo[j], "module")] {
                    if !d.is_zero() {
                        let t: Vec<Int> = action[c][i][j].iter().map(|x| x * d).collect();
                        if !m.level(c).is_zero_element(&t) {
                            return Err(fail(
                                "well-defined",
                                format!("level {lab}: {what} torsion of r{i}.m{j}"),
                            ));
                        }
                    }
                }
                for l in 0..nr {
                    let lhs = act(
                        c,
                        &ring.mul(c, &unit_vec(nr, l), &unit_vec(nr, i)),
                        &unit_vec(nm, j),
                    );
                    let rhs = act(c, &unit_vec(nr, l), &action[c][i][j]);
                    if !m.level(c).elements_equal(&lhs, &rhs) {
                        return Err(fail(
                            "module associativity",
                            format!("level {lab}: (r{l}*r{i}).m{j}"),
                        ));
                    }
                }
            }
        }
        for j in 0..nm {
            if !m
                .level(c)
                .elements_equal(&act(c, ring.unit(c), &unit_vec(nm, j)), &unit_vec(nm, j))
            {
                return Err(fail("module unit", format!("level {lab}: 1.m{j} != m{j}")));
            }
        }
    }
    for om in generating_orbit_maps(g) {
        let (a, b) = (om.from, om.to);
        let (rres, rtr, mres, mtr) = (r.res(om), r.tr(om), m.res(om), m.tr(om));
        let (ra, rb, ma, mb) = (r.rank(a), r.rank(b), m.rank(a), m.rank(b));
        for i in 0..rb {
            for j in 0..mb {
                let lhs = mres.mul_vec(&act(b, &unit_vec(rb, i), &unit_vec(mb, j)));
                let rhs = act(a, &rres.column(i), &mres.column(j));
                if !m.level(a).elements_equal(&lhs, &rhs) {
                    return Err(fail(
                        "module restriction",
                        format!("res {} (r{i}.m{j})", map_label(g, om)),
                    ));
                }
            }
        }
        // tr(x . res m) = tr(x) . m and tr(res r . y) = r . tr(y).
        for i in 0..ra {
            for j in 0..mb {
                let lhs = mtr.mul_vec(&act(a, &unit_vec(ra, i), &mres.column(j)));
                let rhs = act(b, &rtr.column(i), &unit_vec(mb, j));
                if !m.level(b).elements_equal(&lhs, &rhs) {
                    return Err(fail(
                        "module Frobenius",
                        format!("tr {}: r = e{i}, m = e{j}", map_label(g, om)),
                    ));
                }
            }
        }
        for i in 0..rb {
            for j in 0..ma {
                let lhs = mtr.mul_vec(&act(a, &rres.column(i), &unit_vec(ma, j)));
                let rhs = act(b, &unit_vec(rb, i), &mtr.column(j));
                if !m.level(b).elements_equal(&lhs, &rhs) {
                    return Err(fail(
                        "module Frobenius",
                        format!("tr {}: r = e{i}, m = e{j} (right)", map_label(g, om)),
                    ));
                }
            }
        }
    }
    Ok(())
}
