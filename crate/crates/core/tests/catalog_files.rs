use std::collections::BTreeMap;
use std::path::PathBuf;

use grouplab::construct::{load_catalog_dir, reference_catalog_files};
use grouplab::spectrum::OrderHistogram;
use grouplab::{FiniteGroup, Limits};

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../catalog")
}

/// Invariants that separate the groups of each shipped order.
fn fingerprint(g: &FiniteGroup) -> (OrderHistogram, usize, usize, usize, BTreeMap<usize, usize>) {
    let lattice = g.subgroups(&Limits::default()).unwrap();
    (
        OrderHistogram::of_group(g),
        g.center().order(),
        g.derived_subgroup(&g.whole()).order(),
        g.conjugacy_classes().len(),
        lattice.count_by_order(),
    )
}

#[test]
fn shipped_files_match_the_generator() {
    for n in [16, 24, 36] {
        let dir = root().join(n.to_string());
        let expected = reference_catalog_files(n, &Limits::default()).unwrap();
        let mut on_disk: Vec<String> = std::fs::read_dir(&dir)
            .unwrap()
            .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
            .collect();
        on_disk.sort();
        let names: Vec<String> = expected.iter().map(|(name, _)| name.clone()).collect();
        assert_eq!(on_disk, names, "order {n}");
        for (name, text) in expected {
            let disk = std::fs::read_to_string(dir.join(&name)).unwrap();
            assert!(disk == text, "{name} differs from its recipe");
        }
    }
}

#[test]
fn shipped_catalogs_are_complete_and_distinct() {
    for (n, count) in [(16, 14), (24, 15), (36, 14)] {
        let cat = load_catalog_dir(&root(), n, &Limits::default())
            .unwrap()
            .unwrap();
        assert!(cat.complete);
        assert_eq!(cat.groups.len(), count, "order {n}");
        let prints: Vec<_> = cat.groups.iter().map(fingerprint).collect();
        for i in 0..prints.len() {
            for j in i + 1..prints.len() {
                assert_ne!(
                    prints[i],
                    prints[j],
                    "{} and {} look isomorphic",
                    cat.groups[i].label(),
                    cat.groups[j].label()
                );
            }
        }
    }
}

#[test]
fn missing_directory_is_none() {
    assert!(load_catalog_dir(&root(), 40, &Limits::default())
        .unwrap()
        .is_none());
}
