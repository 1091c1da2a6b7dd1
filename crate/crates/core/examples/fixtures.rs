//! Writes sample input documents for the command-line tool into a directory.
//!
//! cargo run -p mackeykit --example fixtures -- <dir>

use std::path::Path;

use mackeykit::abgroup::FinPresAbGroup;
use mackeykit::burnside::{hom_basis, BurnsideElement};
use mackeykit::convolution::{burnside_green, fixed_point_green};
use mackeykit::group::FiniteGroup;
use mackeykit::gset::GSet;
use mackeykit::homalg::MackeyChainComplex;
use mackeykit::io;
use mackeykit::mackey::{burnside_functor, fixed_point_mackey, MackeyMorphism, Representation};
use mackeykit::{Int, Matrix};

fn main() -> mackeykit::Result<()> {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "fixtures".into());
    let dir = Path::new(&dir);
    std::fs::create_dir_all(dir).expect("create output directory");
    let write = |name: &str, body: String| {
        std::fs::write(dir.join(name), body + "\n").expect("write fixture")
    };

    let g = FiniteGroup::named("C2")?;
    let z = fixed_point_mackey(&Representation::trivial(&g, FinPresAbGroup::free(1))?)?;
    let z2 = fixed_point_mackey(&Representation::trivial(&g, FinPresAbGroup::cyclic(2))?)?;
    let perm = fixed_point_mackey(&Representation::permutation(&GSet::orbit(&g, 0), 0)?)?;
    write(
        "c2_burnside.json",
        io::mackey_to_json(&burnside_functor(&g)),
    );
    write("c2_fp_z.json", io::mackey_to_json(&z));
    write("c2_fp_z2.json", io::mackey_to_json(&z2));
    write("c2_fp_perm.json", io::mackey_to_json(&perm));

    write(
        "c2_burnside_green.json",
        io::green_to_json(&burnside_green(&g)?),
    );
    let one = vec![vec![vec![Int::ONE]]];
    let fz = fixed_point_green(
        &Representation::trivial(&g, FinPresAbGroup::free(1))?,
        &one,
        &[Int::ONE],
    )?;
    write("c2_fp_z_green.json", io::green_to_json(&fz));

    // Top level Z x Z, restriction the first projection, transfer a -> (2a, a):
    // a Mackey functor with ring structure everywhere that fails Frobenius.
    write(
        "c2_frobenius_violation.json",
        r#"{"schema_version":1,"group":{"name":"C2"},"mackey":{"levels":[{"class":"e","orders":[0]},{"class":"C2","orders":[0,0]}],"maps":[{"kind":"res","from":"e","to":"e","elem":1,"matrix":[[1]]},{"kind":"res","from":"e","to":"C2","elem":0,"matrix":[[1,0]]},{"kind":"tr","from":"e","to":"C2","elem":0,"matrix":[[2],[1]]}]},"tables":[[[[1]]],[[[1,0],[0,0]],[[0,0],[0,1]]]],"units":[[1],[1,1]]}"#.into(),
    );

    for (name, m) in [
        ("c2_module_z.json", &z),
        ("c2_module_z2.json", &z2),
        ("c2_module_perm.json", &perm),
    ] {
        let doc = io::mackey_doc(m);
        let body = serde_json::json!({"schema_version": 1, "mackey": doc});
        write(name, body.to_string());
    }

    let d = MackeyMorphism::new(&z, &z, vec![Matrix::from_i64_rows(&[vec![2]], 1); 2])?;
    let cx = MackeyChainComplex::new(0, vec![z.clone(), z.clone()], vec![d])?;
    write(
        "c2_complex.json",
        io::complex_to_json(&cx, Some("skeletal")),
    );

    let (free, pt) = (GSet::orbit(&g, 0), GSet::point(&g));
    let b1 = hom_basis(&free, &pt)?;
    let s = BurnsideElement::from_vector(&free, &pt, &b1, &vec![Int::from(2); b1.len()]);
    write("c2_span_free_to_point.json", io::span_to_json(&s));
    let b2 = hom_basis(&pt, &free)?;
    let t = BurnsideElement::from_vector(&pt, &free, &b2, &vec![Int::ONE; b2.len()]);
    write("c2_span_point_to_free.json", io::span_to_json(&t));
    write("c2_free_orbit.json", io::gset_to_json(&free));
    write("s3.json", io::group_to_json(&FiniteGroup::named("S3")?));
    Ok(())
}
