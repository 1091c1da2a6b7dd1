use super::*;
use crate::abgroup::FinPresAbGroup;
use crate::burnside::burnside_ring;
use crate::group::FiniteGroup;
use crate::mackey::{
    burnside_functor, fixed_point_mackey, representable, MackeyFunctor, Representation,
};

fn grp(name: &str) -> GroupRef {
    FiniteGroup::named(name).unwrap()
}

fn ranks(f: &MackeyFunctor) -> Vec<usize> {
    (0..f.levels().len()).map(|c| f.rank(c)).collect()
}

fn fp_z(g: &GroupRef) -> MackeyFunctor {
    fixed_point_mackey(&Representation::trivial(g, FinPresAbGroup::free(1)).unwrap()).unwrap()
}

fn battery(g: &GroupRef) -> Vec<MackeyFunctor> {
    let mut out = vec![burnside_functor(g), fp_z(g)];
    out.push(
        fixed_point_mackey(&Representation::trivial(g, FinPresAbGroup::cyclic(2)).unwrap())
            .unwrap(),
    );
    out.push(
        fixed_point_mackey(&Representation::permutation(&GSet::orbit(g, 0), 0).unwrap()).unwrap(),
    );
    out.push(representable(&GSet::orbit(g, 0)).unwrap().functor);
    out
}

#[test]
fn unit_law_on_small_groups() {
    for name in ["trivial", "C2", "C3", "C2xC2"] {
        let g = grp(name);
        let a = burnside_functor(&g);
        for m in battery(&g) {
            let b = box_product(&a, &m).unwrap();
            let iso = box_unit_iso(&b).unwrap();
            let inv = iso.inverse().unwrap();
            assert!(MackeyMorphism::then(&iso, &inv)
                .unwrap()
                .equals(&MackeyMorphism::identity(b.functor())));
        }
    }
}

#[test]
fn zero_boxes_to_zero() {
    let g = grp("C2");
    let z = MackeyFunctor::zero(&g);
    let b = box_product(&z, &fp_z(&g)).unwrap();
    assert!(b.functor().is_zero());
}

#[test]
fn representables_are_monoidal() {
    for name in ["C2", "C3"] {
        let g = grp(name);
        let k = g.class_count();
        for x in 0..k {
            for y in 0..k {
                let (rx, ry) = (
                    representable(&GSet::orbit(&g, x)).unwrap(),
                    representable(&GSet::orbit(&g, y)).unwrap(),
                );
                let xy = product(&rx.gset, &ry.gset).unwrap().set;
                let rxy = representable(&xy).unwrap();
                let b = box_product(&rx.functor, &ry.functor).unwrap();
                let iso = representable_monoidal_iso(&b, &rx, &ry, &rxy).unwrap();
                assert!(iso.is_iso(), "{name}: {x} x {y}");
            }
        }
    }
    let g = grp("C2");
    let free = representable(&GSet::orbit(&g, 0)).unwrap();
    let b = box_product(&free.functor, &free.functor).unwrap();
    // C2/e x C2/e is two free orbits.
    assert_eq!(ranks(b.functor()), vec![4, 2]);
}

#[test]
fn free_module_evaluation() {
    let g = grp("C2");
    let free = GSet::orbit(&g, 0);
    let rep = representable(&free).unwrap();
    let f = internal_hom_rep(&free, &fp_z(&g)).unwrap();
    f.validate().unwrap();
    assert_eq!(ranks(&f), vec![2, 1]);
    for m in battery(&g) {
        let b = box_product(&m, &rep.functor).unwrap();
        let target = internal_hom_rep(&free, &m).unwrap();
        assert!(box_free_eval_iso(&b, &rep, &target).unwrap().is_iso());
    }
    let pt = representable(&GSet::point(&g)).unwrap();
    let m = fp_z(&g);
    let b = box_product(&m, &pt.functor).unwrap();
    let target = internal_hom_rep(&GSet::point(&g), &m).unwrap();
    assert_eq!(ranks(&target), ranks(&m));
    assert!(box_free_eval_iso(&b, &pt, &target).unwrap().is_iso());
}

#[test]
fn free_orbit_is_monoidal() {
    for name in ["C2", "C3", "S3"] {
        let g = grp(name);
        let ms = battery(&g);
        for m in &ms[1..3] {
            for n in &ms[3..] {
                let b = box_product(m, n).unwrap();
                let t = free_orbit_tensor_iso(&b);
                assert!(t.bijective && t.equivariant, "{name}");
            }
        }
    }
}

#[test]
fn comm_iso_is_an_involution() {
    let g = grp("C2");
    let ms = battery(&g);
    let (m, n) = (&ms[1], &ms[4]);
    let mn = box_product(m, n).unwrap();
    let nm = box_product(n, m).unwrap();
    let there = box_comm_iso(&mn, &nm).unwrap();
    let back = box_comm_iso(&nm, &mn).unwrap();
    assert!(MackeyMorphism::then(&there, &back)
        .unwrap()
        .equals(&MackeyMorphism::identity(mn.functor())));
}

#[test]
fn assoc_pentagon_on_representables() {
    let g = grp("C2");
    let a = representable(&GSet::orbit(&g, 0)).unwrap().functor;
    let p = burnside_functor(&g);
    let (m, n, q, r) = (&a, &p, &a, &p);
    let bx = |x: &MackeyFunctor, y: &MackeyFunctor| box_product(x, y).unwrap();
    let mn = bx(m, n);
    let nq = bx(n, q);
    let qr = bx(q, r);
    let mn_q = bx(mn.functor(), q);
    let m_nq = bx(m, nq.functor());
    let nq_r = bx(nq.functor(), r);
    let n_qr = bx(n, qr.functor());
    // ((MN)Q)R -> (M(NQ))R -> M((NQ)R) -> M(N(QR))
    let mn_q_then_r = bx(mn_q.functor(), r);
    let m_nq_then_r = bx(m_nq.functor(), r);
    let m_then_nq_r = bx(m, nq_r.functor());
    let m_then_n_qr = bx(m, n_qr.functor());
    let a1 = box_map(
        &box_assoc_iso(&mn, &nq, &mn_q, &m_nq).unwrap(),
        &MackeyMorphism::identity(r),
        &mn_q_then_r,
        &m_nq_then_r,
    )
    .unwrap();
    let a2 = box_assoc_iso(&m_nq, &nq_r, &m_nq_then_r, &m_then_nq_r).unwrap();
    let a3 = box_map(
        &MackeyMorphism::identity(m),
        &box_assoc_iso(&nq, &qr, &nq_r, &n_qr).unwrap(),
        &m_then_nq_r,
        &m_then_n_qr,
    )
    .unwrap();
    // ((MN)Q)R -> (MN)(QR) -> M(N(QR))
    let mn_then_qr = bx(mn.functor(), qr.functor());
    let b1 = box_assoc_iso(&mn_q, &qr, &mn_q_then_r, &mn_then_qr).unwrap();
    let b2 = box_assoc_iso(&mn, &n_qr, &mn_then_qr, &m_then_n_qr).unwrap();
    let lhs = MackeyMorphism::then(&MackeyMorphism::then(&a1, &a2).unwrap(), &a3).unwrap();
    let rhs = MackeyMorphism::then(&b1, &b2).unwrap();
    assert!(lhs.equals(&rhs));
    assert!(a2.is_iso() && b1.is_iso());
}

#[test]
fn burnside_green_functor_of_c2() {
    let g = grp("C2");
    let r = burnside_green(&g).unwrap();
    let top = g.top_class();
    let basis = crate::burnside::hom_basis(&GSet::point(&g), &GSet::orbit(&g, top)).unwrap();
    let ring = burnside_ring(&g);
    for (i, ci) in basis.iter().enumerate() {
        for (j, cj) in basis.iter().enumerate() {
            let got = &r.table(top)[i][j];
            for (k, ck) in basis.iter().enumerate() {
                assert_eq!(got[k], Int::from(ring.table[ci.class][cj.class][ck.class]));
            }
        }
    }
    // Round trip through the levelwise description.
    let again = green_from_levelwise(r.functor(), r.tables().to_vec(), r.units().to_vec()).unwrap();
    assert_eq!(again, r);
    assert!(again.mult().equals(r.mult()));
}

#[test]
fn fixed_point_green_of_z() {
    let g = grp("C2");
    let v = Representation::trivial(&g, FinPresAbGroup::free(1)).unwrap();
    let r = fixed_point_green(&v, &vec![vec![vec![Int::ONE]]], &[Int::ONE]).unwrap();
    assert_eq!(ranks(r.functor()), vec![1, 1]);
    let again = green_from_mult(r.square(), r.mult(), r.unit_morphism()).unwrap();
    assert_eq!(again, r);
}

#[test]
fn frobenius_violation_is_reported() {
    let g = grp("C2");
    let up = OrbitMap::new(&g, 0, 1, 0).unwrap();
    let flip = OrbitMap::new(&g, 0, 0, 1).unwrap();
    let m = |rows: &[Vec<i64>], c: usize| Matrix::from_i64_rows(rows, c);
    // Z x Z on top with res the first projection; tr(1) = (2, 3).
    let levels = vec![FinPresAbGroup::free(1), FinPresAbGroup::free(2)];
    let entries = vec![
        (MapKind::Res, up, m(&[vec![1, 0]], 2)),
        (MapKind::Tr, up, m(&[vec![2], vec![3]], 1)),
        (MapKind::Res, flip, m(&[vec![1]], 1)),
    ];
    let f = MackeyFunctor::from_generators(&g, levels, entries).unwrap();
    let i = |v: &[i64]| v.iter().map(|&x| Int::from(x)).collect::<Vec<_>>();
    let tables = vec![
        vec![vec![i(&[1])]],
        vec![vec![i(&[1, 0]), i(&[0, 0])], vec![i(&[0, 0]), i(&[0, 1])]],
    ];
    let units = vec![i(&[1]), i(&[1, 1])];
    let err = green_from_levelwise(&f, tables, units).unwrap_err();
    match err {
        Error::Axiom { axiom, cell } => {
            assert_eq!(axiom, "Frobenius");
            assert!(cell.contains("tr"), "{cell}");
        }
        other => panic!("{other}"),
    }
}

#[test]
fn modules_over_burnside() {
    let g = grp("C2");
    let r = burnside_green(&g).unwrap();
    for m in battery(&g) {
        let md = GreenModule::over_burnside(&r, &m).unwrap();
        let b = box_product(r.functor(), &m).unwrap();
        let act = md.action_morphism(&b).unwrap();
        assert!(act.equals(&box_unit_iso(&b).unwrap()));
    }
}
