use sphinv_core::families::manifold_specs;
use sphinv_core::involutions::{classes, involution_reps, isometry_label, lift_parent};
use sphinv_core::tables::{rows, twist_key};

#[test]
fn every_class_matches_one_table_row() {
    let mut bad = Vec::new();
    for g in manifold_specs(120) {
        let cs = match classes(&g) {
            Ok(c) => c,
            Err(e) => {
                bad.push(format!("{}: {}", g, e));
                continue;
            }
        };
        let p = lift_parent(&g).unwrap();
        let table = rows(&p).unwrap();
        let reps = involution_reps(isometry_label(&g).unwrap()).unwrap();
        if cs.len() != table.len() || cs.len() != reps.len() {
            bad.push(format!("{}: {} classes, {} rows, {} reps", g, cs.len(), table.len(), reps.len()));
            continue;
        }
        let mut hit = vec![false; table.len()];
        for c in &cs {
            let key = (c.extension.kinds(), twist_key(&c.extension_spec));
            let k = table
                .iter()
                .enumerate()
                .position(|(i, r)| !hit[i] && (r.ext.construct().unwrap().kinds(), twist_key(&r.ext)) == key);
            match k {
                Some(i) => hit[i] = true,
                None => bad.push(format!("{} {}: {} unmatched", g, c.class_label, c.extension_spec)),
            }
        }
    }
    assert!(bad.is_empty(), "{} failures:\n{}", bad.len(), bad.join("\n"));
}
