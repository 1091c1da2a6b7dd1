use std::path::Path;

use mackeykit::burnside::{
    burnside_ring, compose, hom_basis, orbits, promonoidal_check, random_element, table_of_marks,
    triangle_composite, BurnsideElement, SpanCode,
};
use mackeykit::convolution::{box_comm_iso, box_product, box_unit_iso};
use mackeykit::group::{FiniteGroup, GroupRef};
use mackeykit::gset::GSet;
use mackeykit::homalg::{
    abutment_iso, e_infinity, rel_box, ss_pages, tor, tor0_comparison, Filtration,
};
use mackeykit::io;
use mackeykit::ktheory::bpq_verify;
use mackeykit::mackey::{burnside_functor, MackeyFunctor};
use mackeykit::{Error, Int, Matrix};
use rand::SeedableRng;
use serde_json::{json, Value};

use crate::report::{fmt_group, fmt_ints, fmt_matrix, Report};
use crate::{Cli, Command};

pub enum Failure {
    Usage(String),
    /// A library error that means the input failed verification.
    Verify(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Json(_) | Error::Malformed(_) | Error::Dimension(_) => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Verify(other),
        }
    }
}

type Out = Result<Report, Failure>;

/// Runs a subcommand; `Err` carries a usage message.
pub fn run(cli: &Cli) -> Result<Report, String> {
    let result = match &cli.command {
        Command::GroupInfo { group } => group_info(group),
        Command::Marks { group } => marks(group),
        Command::BurnsideRing { group } => ring(group),
        Command::HomBasis {
            group,
            source,
            target,
        } => basis(group.as_deref(), source, target),
        Command::Compose {
            first,
            second,
            group,
            trials,
        } => match (first, second, group) {
            (Some(a), Some(b), None) => compose_files(a, b),
            (None, None, Some(g)) => compose_laws(g, cli.seed, *trials),
            _ => Err(Failure::Usage(
                "compose takes two span files, or --group for random law checks".into(),
            )),
        },
        Command::MackeyCheck { mackey } => mackey_check(mackey),
        Command::Box { left, right } => box_cmd(left, right),
        Command::GreenCheck { green } => green_check(green),
        Command::Tor {
            ring,
            left,
            right,
            pmax,
        } => tor_cmd(ring, left, right, *pmax),
        Command::Ss { complex, rmax } => ss(complex, *rmax),
        Command::Bpq { group } => bpq(group),
        Command::DualityCheck { group } => duality(group),
        Command::PromonoidalCheck { group, feet } => promonoidal(group, *feet),
    };
    match result {
        Err(Failure::Verify(e)) => {
            let mut r = Report::new();
            match &e {
                Error::Axiom { axiom, cell } => {
                    r.check(&format!("axiom {axiom}"), false, Some(cell.clone()))
                }
                other => r.check("input", false, Some(other.to_string())),
            }
            r.set("error", e.to_string());
            Ok(r)
        }
        Err(Failure::Usage(msg)) => Err(msg),
        Ok(r) => Ok(r),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn looks_like_file(s: &str) -> bool {
    s.ends_with(".json") || Path::new(s).is_file()
}

/// A group by name or from a group file.
fn load_group(s: &str) -> Result<GroupRef, Failure> {
    let g = if looks_like_file(s) {
        io::group_from_json(&read(Path::new(s))?)
    } else {
        FiniteGroup::named(s)
    };
    g.map_err(|e| Failure::Usage(e.to_string()))
}

fn label(g: &GroupRef, c: usize) -> String {
    g.class_label(c).to_string()
}

fn labels(g: &GroupRef) -> Vec<String> {
    (0..g.class_count()).map(|c| label(g, c)).collect()
}

fn int_rows(m: &Matrix) -> Vec<Vec<Int>> {
    m.row_vecs()
}

fn group_info(name: &str) -> Out {
    let g = load_group(name)?;
    let mut r = Report::new();
    r.line(format!("group {} of order {}", g.name(), g.order()));
    let mut rows = Vec::new();
    let mut classes = Vec::new();
    for c in 0..g.class_count() {
        let cl = g.class(c);
        rows.push(vec![
            label(&g, c),
            cl.order.to_string(),
            g.index(c).to_string(),
            cl.conjugates.len().to_string(),
            cl.normalizer.len().to_string(),
            cl.weyl_order.to_string(),
            fmt_ints(&cl.representative.elements()),
        ]);
        classes.push(json!({
            "label": label(&g, c),
            "order": cl.order,
            "index": g.index(c),
            "conjugates": cl.conjugates.len(),
            "normalizer_order": cl.normalizer.len(),
            "weyl_order": cl.weyl_order,
            "representative": cl.representative.elements(),
        }));
    }
    r.table(
        &[
            "class",
            "order",
            "index",
            "conjugates",
            "|N(H)|",
            "|W(H)|",
            "elements",
        ],
        &rows,
    );
    r.set("group", g.name());
    r.set("order", g.order());
    r.set("abelian", g.is_abelian());
    r.set("class_count", g.class_count());
    r.set("classes", classes);
    Ok(r)
}

fn marks(name: &str) -> Out {
    let g = load_group(name)?;
    let m = table_of_marks(&g);
    let mut r = Report::new();
    let names = labels(&g);
    let mut header = vec!["G/H \\ K"];
    header.extend(names.iter().map(String::as_str));
    let rows: Vec<Vec<String>> = int_rows(&m)
        .iter()
        .enumerate()
        .map(|(i, row)| {
            std::iter::once(names[i].clone())
                .chain(row.iter().map(|x| x.to_string()))
                .collect()
        })
        .collect();
    r.table(&header, &rows);
    r.set(
        "marks",
        serde_json::to_value(int_rows(&m)).expect("serializable"),
    );
    Ok(r)
}

fn ring(name: &str) -> Out {
    let g = load_group(name)?;
    let b = burnside_ring(&g);
    let names = labels(&g);
    let mut r = Report::new();
    let mut rows = Vec::new();
    for i in 0..b.rank() {
        for j in i..b.rank() {
            let terms: Vec<String> = b.table[i][j]
                .iter()
                .enumerate()
                .filter(|(_, &k)| k != 0)
                .map(|(k, &n)| {
                    if n == 1 {
                        format!("[G/{}]", names[k])
                    } else {
                        format!("{n}[G/{}]", names[k])
                    }
                })
                .collect();
            let prod = if terms.is_empty() {
                "0".to_string()
            } else {
                terms.join(" + ")
            };
            rows.push(vec![
                format!("[G/{}]", names[i]),
                format!("[G/{}]", names[j]),
                prod,
            ]);
        }
    }
    r.table(&["a", "b", "a * b"], &rows);
    r.set("basis", names);
    r.set(
        "table",
        serde_json::to_value(&b.table).expect("serializable"),
    );
    Ok(r)
}

fn load_gset(group: Option<&GroupRef>, s: &str) -> Result<GSet, Failure> {
    if looks_like_file(s) {
        let x = io::gset_from_json(&read(Path::new(s))?)?;
        if let Some(g) = group {
            if **x.group() != **g {
                return Err(Failure::Usage(format!("{s} is over a different group")));
            }
        }
        Ok(x)
    } else {
        let g = group.ok_or_else(|| {
            Failure::Usage(format!("{s} is not a file; pass --group to name an orbit"))
        })?;
        let c = g
            .class_by_label(s)
            .map_err(|e| Failure::Usage(e.to_string()))?;
        Ok(GSet::orbit(g, c))
    }
}

fn code_json(g: &GroupRef, c: &SpanCode) -> Value {
    json!({"class": label(g, c.class), "x": c.x, "y": c.y})
}

fn basis(group: Option<&str>, source: &str, target: &str) -> Out {
    let g = group.map(load_group).transpose()?;
    let x = load_gset(g.as_ref(), source)?;
    let y = load_gset(g.as_ref().or(Some(x.group())), target)?;
    let g = x.group().clone();
    let b = hom_basis(&x, &y)?;
    let mut r = Report::new();
    r.line(format!("spans {source} -> {target}: rank {}", b.len()));
    let rows: Vec<Vec<String>> = b
        .iter()
        .enumerate()
        .map(|(i, c)| {
            vec![
                i.to_string(),
                label(&g, c.class),
                c.x.to_string(),
                c.y.to_string(),
            ]
        })
        .collect();
    r.table(&["#", "stabilizer", "x", "y"], &rows);
    r.set("rank", b.len());
    r.set(
        "basis",
        b.iter().map(|c| code_json(&g, c)).collect::<Vec<_>>(),
    );
    Ok(r)
}

fn describe_span(e: &BurnsideElement, r: &mut Report) {
    let g = e.source().group().clone();
    let rows: Vec<Vec<String>> = e
        .terms()
        .iter()
        .map(|(c, k)| {
            vec![
                k.to_string(),
                label(&g, c.class),
                c.x.to_string(),
                c.y.to_string(),
            ]
        })
        .collect();
    r.table(&["coefficient", "stabilizer", "x", "y"], &rows);
    r.set(
        "terms",
        e.terms()
            .iter()
            .map(|(c, k)| json!({"code": code_json(&g, c), "coefficient": serde_json::to_value(k).expect("int")}))
            .collect::<Vec<_>>(),
    );
}

fn compose_files(first: &Path, second: &Path) -> Out {
    let a = io::span_from_json(&read(first)?)?;
    let b = io::span_from_json(&read(second)?)?;
    if a.target() != b.source() {
        return Err(Failure::Usage(
            "the first span's target is not the second span's source".into(),
        ));
    }
    let c = compose(&b, &a)?;
    let mut r = Report::new();
    r.line(format!("composite: {} terms", c.terms().len()));
    describe_span(&c, &mut r);
    r.artifact = Some(io::span_to_json(&c));
    Ok(r)
}

fn compose_laws(name: &str, seed: u64, trials: usize) -> Out {
    let g = load_group(name)?;
    let obs = orbits(&g);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let pick = |rng: &mut rand_chacha::ChaCha8Rng| {
        use rand::Rng;
        obs[rng.gen_range(0..obs.len())].clone()
    };
    let (mut assoc, mut ident) = (0usize, 0usize);
    for _ in 0..trials {
        let (w, x, y, z) = (
            pick(&mut rng),
            pick(&mut rng),
            pick(&mut rng),
            pick(&mut rng),
        );
        let a = random_element(&w, &x, &mut rng, 3, 3)?;
        let b = random_element(&x, &y, &mut rng, 3, 3)?;
        let c = random_element(&y, &z, &mut rng, 3, 3)?;
        if compose(&c, &compose(&b, &a)?)? == compose(&compose(&c, &b)?, &a)? {
            assoc += 1;
        }
        if compose(&BurnsideElement::identity(&x), &a)? == a
            && compose(&a, &BurnsideElement::identity(&w))? == a
        {
            ident += 1;
        }
    }
    let mut r = Report::new();
    r.line(format!(
        "group {}, seed {seed}, {trials} random triples",
        g.name()
    ));
    r.check(
        "associativity",
        assoc == trials,
        Some(format!("{assoc}/{trials}")),
    );
    r.check(
        "identity",
        ident == trials,
        Some(format!("{ident}/{trials}")),
    );
    r.set("seed", seed);
    r.set("trials", trials);
    Ok(r)
}

fn level_rows(m: &MackeyFunctor) -> (Vec<Vec<String>>, Value) {
    let g = m.group();
    let inv = m.invariant_factors();
    let rows = (0..g.class_count())
        .map(|c| vec![label(g, c), m.rank(c).to_string(), fmt_group(&inv[c])])
        .collect();
    let json = (0..g.class_count())
        .map(|c| json!({"class": label(g, c), "rank": m.rank(c), "invariant_factors": serde_json::to_value(&inv[c]).expect("ints")}))
        .collect::<Vec<_>>();
    (rows, Value::Array(json))
}

fn show_levels(m: &MackeyFunctor, r: &mut Report, key: &str) {
    let (rows, json) = level_rows(m);
    r.table(&["class", "generators", "value"], &rows);
    r.set(key, json);
}

fn load_mackey(path: &Path) -> Result<MackeyFunctor, Failure> {
    Ok(io::mackey_from_json(&read(path)?)?)
}

fn mackey_check(path: &Path) -> Out {
    let m = load_mackey(path)?;
    let mut r = Report::new();
    r.line(format!("Mackey functor for {}", m.group().name()));
    show_levels(&m, &mut r, "levels");
    let v = m.validate();
    r.check("Mackey axioms", v.is_ok(), v.err().map(|e| e.to_string()));
    r.artifact = Some(io::mackey_to_json(&m));
    Ok(r)
}

fn box_cmd(left: &Path, right: &Path) -> Out {
    let (m, n) = (load_mackey(left)?, load_mackey(right)?);
    if m.group() != n.group() {
        return Err(Failure::Usage(
            "the two functors are over different groups".into(),
        ));
    }
    let b = box_product(&m, &n)?;
    let mut r = Report::new();
    r.line(format!("box product over {}", m.group().name()));
    show_levels(b.functor(), &mut r, "levels");
    let v = b.functor().validate();
    r.check("Mackey axioms", v.is_ok(), v.err().map(|e| e.to_string()));
    let a = burnside_functor(m.group());
    for (name, f) in [
        ("unit law (left factor)", &m),
        ("unit law (right factor)", &n),
    ] {
        let ok = box_product(&a, f)
            .and_then(|u| box_unit_iso(&u))
            .map(|i| i.is_iso());
        r.check(
            name,
            matches!(ok, Ok(true)),
            ok.err().map(|e| e.to_string()),
        );
    }
    let sym = box_product(&n, &m)
        .and_then(|nm| box_comm_iso(&b, &nm))
        .map(|i| i.is_iso());
    r.check(
        "symmetry",
        matches!(sym, Ok(true)),
        sym.err().map(|e| e.to_string()),
    );
    r.artifact = Some(io::mackey_to_json(b.functor()));
    Ok(r)
}

fn green_check(path: &Path) -> Out {
    let ring = io::green_from_json(&read(path)?)?;
    let g = ring.group().clone();
    let mut r = Report::new();
    r.line(format!("Green functor over {}", g.name()));
    show_levels(ring.functor(), &mut r, "levels");
    r.check("Mackey axioms", true, None);
    for axiom in [
        "associativity",
        "commutativity",
        "unit",
        "restriction is a ring map",
        "Frobenius reciprocity",
    ] {
        r.check(axiom, true, None);
    }
    r.set(
        "units",
        (0..g.class_count())
            .map(|c| json!({"class": label(&g, c), "unit": serde_json::to_value(ring.unit(c)).expect("ints")}))
            .collect::<Vec<_>>(),
    );
    r.artifact = Some(io::green_to_json(&ring));
    Ok(r)
}

fn tor_cmd(ring: &Path, left: &Path, right: &Path, pmax: usize) -> Out {
    let rg = io::green_from_json(&read(ring)?)?;
    let m = io::module_from_json(&rg, &read(left)?)?;
    let n = io::module_from_json(&rg, &read(right)?)?;
    let t = tor(&m, &n, pmax)?;
    let g = rg.group().clone();
    let mut r = Report::new();
    r.line(format!("Tor over {}, p = 0..{pmax}", g.name()));
    let mut rows = Vec::new();
    let mut out = Vec::new();
    for p in 0..=pmax {
        let f = t.functor(p);
        let inv = f.invariant_factors();
        for (c, v) in inv.iter().enumerate() {
            rows.push(vec![p.to_string(), label(&g, c), fmt_group(v)]);
        }
        out.push(json!({"p": p, "levels": level_rows(f).1}));
    }
    r.table(&["p", "class", "Tor_p"], &rows);
    r.set("tor", out);
    let comparison = rel_box(&m, &n)
        .and_then(|rb| tor0_comparison(&m, &t, &rb))
        .map(|f| f.is_iso());
    r.check(
        "Tor_0 is the relative box product",
        matches!(comparison, Ok(true)),
        comparison.err().map(|e| e.to_string()),
    );
    Ok(r)
}

fn ss(path: &Path, rmax: usize) -> Out {
    let (cx, f) = io::complex_from_json(&read(path)?)?;
    let f = match f {
        Some(f) => f,
        None => Filtration::skeletal(&cx)?,
    };
    let g = cx.group().clone();
    let pages = ss_pages(&cx, &f, rmax.max(1))?;
    let einf = e_infinity(&cx, &f)?;
    let mut r = Report::new();
    r.line(format!(
        "spectral sequence over {}, filtration p = {}..{}",
        g.name(),
        f.p_min(),
        f.p_max()
    ));
    let mut rows = Vec::new();
    let mut out = Vec::new();
    let mut record = |name: String, page: &mackeykit::homalg::SpectralSequencePage| {
        let mut entries = Vec::new();
        for ((p, q), inv) in page.table() {
            for (c, v) in inv.iter().enumerate() {
                rows.push(vec![
                    name.clone(),
                    p.to_string(),
                    q.to_string(),
                    label(&g, c),
                    fmt_group(v),
                ]);
            }
            entries.push(json!({"p": p, "q": q, "invariant_factors": serde_json::to_value(&inv).expect("ints")}));
        }
        out.push(json!({"page": name, "entries": entries}));
    };
    for page in &pages {
        record(page.r.to_string(), page);
    }
    record("inf".into(), &einf);
    r.table(&["r", "p", "q", "class", "E_r^{p,q}"], &rows);
    r.set("pages", out);
    r.check(
        "d_r o d_r = 0 and E_{r+1} = H(E_r)",
        true,
        Some(format!("r = 1..{}", rmax.max(1))),
    );
    let mut abut = Ok(true);
    for &(p, q) in einf.entries.keys() {
        match abutment_iso(&cx, &f, &einf, p, q) {
            Ok(iso) if iso.is_iso() => {}
            Ok(_) => abut = Err(format!("(p, q) = ({p}, {q})")),
            Err(e) => abut = Err(format!("(p, q) = ({p}, {q}): {e}")),
        }
        if abut.is_err() {
            break;
        }
    }
    r.check(
        "E_inf is the associated graded of homology",
        abut.is_ok(),
        abut.err(),
    );
    Ok(r)
}

fn bpq(name: &str) -> Out {
    let g = load_group(name)?;
    let w = bpq_verify(&g)?;
    let mut r = Report::new();
    r.line(format!(
        "K_0 of G-sets over orbits versus the Burnside Green functor, {}",
        g.name()
    ));
    let mut rows = Vec::new();
    let mut iso = Vec::new();
    for c in 0..g.class_count() {
        let m = int_rows(w.iso.level(c));
        rows.push(vec![
            label(&g, c),
            w.k0.functor().rank(c).to_string(),
            fmt_matrix(&m),
        ]);
        iso.push(json!({"class": label(&g, c), "matrix": serde_json::to_value(&m).expect("ints")}));
    }
    r.table(&["class", "rank", "iso"], &rows);
    r.check("isomorphism of Green functors", true, None);
    r.set("iso", iso);
    r.set(
        "k0",
        serde_json::from_str::<Value>(&io::green_to_json(&w.k0)).expect("valid json"),
    );
    r.set(
        "burnside",
        serde_json::from_str::<Value>(&io::green_to_json(&w.burnside)).expect("valid json"),
    );
    r.artifact = Some(io::green_to_json(&w.k0));
    Ok(r)
}

fn duality(name: &str) -> Out {
    let g = load_group(name)?;
    let mut r = Report::new();
    let mut all = Vec::new();
    for (c, x) in orbits(&g).iter().enumerate() {
        let ok = triangle_composite(x)? == BurnsideElement::identity(x);
        r.check(&format!("triangle on G/{}", label(&g, c)), ok, None);
        all.push(json!({"class": label(&g, c), "passed": ok}));
    }
    r.set("orbits", all);
    Ok(r)
}

fn promonoidal(name: &str, feet: usize) -> Out {
    let g = load_group(name)?;
    if feet > 2 {
        return Err(Failure::Usage("at most 2 feet are supported".into()));
    }
    let k = g.class_count();
    let mut r = Report::new();
    let mut reports = Vec::new();
    let (mut total, mut passed) = (0usize, 0usize);
    let mut cases: Vec<(Vec<usize>, usize, Vec<Vec<usize>>)> = Vec::new();
    for z in 0..k {
        for a in 0..k {
            if feet >= 1 {
                cases.push((vec![a], z, vec![vec![0]]));
            }
            if feet >= 2 {
                for b in 0..k {
                    cases.push((vec![a, b], z, vec![vec![0, 1]]));
                    cases.push((vec![a, b], z, vec![vec![0], vec![1]]));
                }
            }
        }
    }
    for (fs, z, grouping) in cases {
        let rep = promonoidal_check(&g, &fs, z, &grouping)?;
        total += 1;
        if rep.passed() {
            passed += 1;
        } else {
            let feet: Vec<String> = fs.iter().map(|&c| label(&g, c)).collect();
            r.check(
                "coend bijection",
                false,
                Some(format!(
                    "feet {} -> G/{}, grouping {grouping:?}",
                    feet.join(", "),
                    label(&g, z)
                )),
            );
        }
        reports.push(serde_json::to_value(&rep).expect("serializable"));
    }
    r.check(
        "coend condition",
        passed == total,
        Some(format!("{passed}/{total} cases")),
    );
    r.set("cases", reports);
    Ok(r)
}
