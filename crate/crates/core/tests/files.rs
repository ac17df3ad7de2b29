use std::path::PathBuf;

use cdga::catalog::{self, CatalogEntry};
use cdga::io::{dump_presentation, load, load_str, PresentationFile};

fn shipped(name: &str) -> PathBuf {
    [
        env!("CARGO_MANIFEST_DIR"),
        "examples",
        "presentations",
        name,
    ]
    .iter()
    .collect()
}

fn file_of(entry: &CatalogEntry) -> PresentationFile {
    PresentationFile::from_dga(&entry.presentation, Some(entry.dimension))
}

#[test]
fn shipped_files_match_catalog() {
    let mut pairs = vec![
        ("heisenberg.cdga", "heisenberg"),
        ("e-nilmanifold.cdga", "e-nilmanifold"),
        ("x.cdga", "X"),
        ("x-prime.cdga", "X'"),
    ];
    let spheres: Vec<(String, String)> = (1..=6)
        .map(|k| (format!("sphere{k}.cdga"), format!("sphere:{k}")))
        .collect();
    let tori: Vec<(String, String)> = (1..=4)
        .map(|k| (format!("torus{k}.cdga"), format!("torus:{k}")))
        .collect();
    pairs.extend(
        spheres
            .iter()
            .chain(&tori)
            .map(|(f, n)| (f.as_str(), n.as_str())),
    );
    for (file, name) in pairs {
        let loaded = load(shipped(file)).unwrap();
        let entry = catalog::lookup(name).unwrap();
        let from_file = PresentationFile::from_dga(&loaded.dga, loaded.dimension);
        assert_eq!(from_file, file_of(&entry), "{file}");
        assert_eq!(
            loaded.dga.betti_vector(entry.dimension),
            entry.presentation.betti_vector(entry.dimension),
            "{file}"
        );
    }
}

#[test]
fn dump_is_stable_under_reload() {
    for file in [
        "heisenberg.cdga",
        "e-nilmanifold.cdga",
        "sphere4.cdga",
        "x-prime.cdga",
    ] {
        let loaded = load(shipped(file)).unwrap();
        let once = dump_presentation(&loaded.dga, loaded.dimension);
        let again = load_str(&once).unwrap();
        assert_eq!(
            dump_presentation(&again.dga, again.dimension),
            once,
            "{file}"
        );
    }
}

#[test]
fn missing_file_is_an_error() {
    let err = load(shipped("no-such-file.cdga")).unwrap_err();
    assert!(err.to_string().contains("no-such-file.cdga"));
}
