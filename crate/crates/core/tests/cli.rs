//! Golden-file tests for the `vk` binary. Set `VK_UPDATE_GOLDEN=1` to rewrite
//! the goldens after an intended output change.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn manifest() -> &'static Path {
    Path::new(env!("CARGO_MANIFEST_DIR"))
}

fn vk_in(catalog: Option<&Path>, args: &[&str]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_vk"));
    cmd.current_dir(manifest()).args(args).env_remove("VK_CATALOG");
    if let Some(dir) = catalog {
        cmd.env("VK_CATALOG", dir);
    }
    cmd.output().unwrap()
}

fn vk(args: &[&str]) -> Output {
    vk_in(None, args)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn golden(name: &str, args: &[&str]) {
    let o = vk(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
    let got = stdout(&o);
    let path: PathBuf = manifest().join("tests/golden").join(format!("{name}.txt"));
    if std::env::var_os("VK_UPDATE_GOLDEN").is_some() {
        fs::create_dir_all(path.parent().unwrap()).unwrap();
        fs::write(&path, &got).unwrap();
    }
    let want = fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden {}", path.display()));
    assert_eq!(got, want, "{args:?}");
}

#[test]
fn documented_examples() {
    assert_eq!(stdout(&vk(&["genus", "O1+ O2+ U1+ U2+"])), "1\n");
    assert_eq!(stdout(&vk(&["ac", "O1+ U2+ O3+ U1+ O2+ U3+"])), "true\n");
    let o = vk(&["movie", "verify", "data/fig4.movie"]);
    assert!(stdout(&o).contains("births=0 saddles=2 deaths=2"), "{}", stdout(&o));
    assert!(stdout(&o).contains("ok=true"));
}

#[test]
fn goldens() {
    golden("parse_link", &["parse", "O1+ U2+ / O2+ U1+"]);
    golden("genus_vtrefoil", &["genus", "@vtrefoil"]);
    golden("ac_json", &["--json", "ac", "@vtrefoil"]);
    golden("odd_writhe", &["invariant", "odd-writhe", "@vtrefoil"]);
    golden("writhe_poly", &["invariant", "writhe-poly", "@vtrefoil"]);
    golden("alexander_fig8", &["invariant", "alexander", "@figure-8"]);
    golden("galexander", &["invariant", "galexander", "@vtrefoil"]);
    golden("kishino", &["connect-sum", "U1+ U2- O1+ O2-", "U1- U2+ O1- O2+", "--at-a", "1", "--at-b", "3"]);
    golden("splice_kt", &["splice", "@trefoil", "0", "3"]);
    golden("satellite_unknot", &["satellite", "@unknot"]);
    golden("movie_kt", &["movie", "verify", "data/kt_trefoil.movie"]);
    golden("movie_composite_json", &["--json", "movie", "verify", "data/fig4.movie"]);
    golden("slice_vtrefoil", &["slice-check", "@vtrefoil"]);
    golden("slice_trefoil_json", &["--json", "slice-check", "@trefoil"]);
    golden("catalog_list", &["catalog", "list"]);
    golden("catalog_show", &["catalog", "show", "trefoil"]);
}

#[test]
fn output_is_stable() {
    let a = stdout(&vk(&["--json", "catalog", "show", "kt"]));
    let b = stdout(&vk(&["--json", "catalog", "show", "kt"]));
    assert_eq!(a, b);
}

#[test]
fn references_match_inline_codes() {
    for (name, code) in [("trefoil", "O1+ U2+ O3+ U1+ O2+ U3+"), ("vtrefoil", "O1+ O2+ U1+ U2+")] {
        for args in [vec!["genus"], vec!["invariant", "galexander"], vec!["slice-check"]] {
            let r = format!("@{name}");
            let with = |c: &str| stdout(&vk(&[args.clone(), vec![c]].concat()));
            assert_eq!(with(&r), with(code), "{args:?} {name}");
        }
    }
}

#[test]
fn exit_codes() {
    let usage = vk(&["genus", "--frobnicate", "x"]);
    assert_eq!(usage.status.code(), Some(2));
    assert!(stderr(&usage).contains("--frobnicate"));
    assert_eq!(vk(&["invariant", "jones", "O1+ U1+"]).status.code(), Some(2));
    let bad = vk(&["genus", "O1+ U1-"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stderr(&bad).contains("sign"));
    assert_eq!(vk(&["ac", "@nope"]).status.code(), Some(1));
    assert_eq!(vk(&["movie", "verify", "data/one_saddle.movie"]).status.code(), Some(1));
    assert_eq!(vk(&["splice", "@trefoil", "0", "3", "--anti"]).status.code(), Some(1));
    assert_eq!(vk(&["--help"]).status.code(), Some(0));
}

#[test]
fn import_flow() {
    let tmp = tempfile::tempdir().unwrap();
    let cat = tmp.path().join("catalog");
    let placeholder = vk_in(Some(&cat), &["invariant", "writhe-poly", "@4.105"]);
    assert_eq!(placeholder.status.code(), Some(1));
    assert!(stderr(&placeholder).contains("placeholder"));

    let table = tmp.path().join("table.txt");
    fs::write(&table, "vt: O1+ O2+ U1+ U2+\nbad: O1+ U1-\n").unwrap();
    let t = table.to_str().unwrap();
    let strict = vk_in(Some(&cat), &["catalog", "import", t]);
    assert_eq!(strict.status.code(), Some(1));
    assert!(stderr(&strict).contains("line 2"));
    assert_eq!(vk_in(Some(&cat), &["genus", "@vt"]).status.code(), Some(1));
    let lenient = vk_in(Some(&cat), &["catalog", "import", "--lenient", t]);
    assert_eq!(lenient.status.code(), Some(0));
    assert!(stdout(&lenient).contains("added vt"));
    assert_eq!(stdout(&vk_in(Some(&cat), &["genus", "@vt"])), "1\n");

    let dup = vk_in(Some(&cat), &["catalog", "import", t]);
    assert!(stderr(&dup).contains("duplicate"));

    let o = vk_in(Some(&cat), &["catalog", "import", "data/composite_standins.txt"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(cat.join("goldens/4.105.txt").exists());
    let wp = vk_in(Some(&cat), &["invariant", "writhe-poly", "@4.105"]);
    assert_eq!(stdout(&wp), "0\n");
    let show = stdout(&vk_in(Some(&cat), &["catalog", "show", "4.105"]));
    assert!(show.contains("provenance=imported data/composite_standins.txt:4"), "{show}");
    let list = stdout(&vk_in(Some(&cat), &["catalog", "list"]));
    assert!(!list.contains("placeholder"));

    // a tampered golden is caught on recomputation
    fs::write(cat.join("goldens/4.105.txt"), "genus=3\n").unwrap();
    let stale = vk_in(Some(&cat), &["catalog", "show", "4.105"]);
    assert_eq!(stale.status.code(), Some(1));
}
