use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn bimod(args: &[&str]) -> Output {
    let args: Vec<String> = args
        .iter()
        .map(|a| if a.contains('.') && !a.starts_with('-') { data(a).display().to_string() } else { a.to_string() })
        .collect();
    Command::new(env!("CARGO_BIN_EXE_bimod")).args(&args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn canon_prints_weyr_form_and_trace() {
    let o = bimod(&["canon", "-p", "similarity.problem", "-m", "jordan.rep", "--trace", "--transform"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("# step 1: loop weyr"), "{out}");
    assert!(out.contains("entry 1 3 1") && out.contains("entry 3 4 1") && out.contains("# multiplicities"), "{out}");
    assert!(out.contains("# transform"));
}

#[test]
fn isomorphic_inputs_print_the_same_form() {
    let a = bimod(&["canon", "-p", "similarity.problem", "-m", "jordan.rep"]);
    let b = bimod(&["canon", "-p", "similarity.problem", "-m", "jordan_swapped.rep"]);
    let c = bimod(&["canon", "-p", "similarity.problem", "-m", "other.rep"]);
    assert_eq!(stdout(&a), stdout(&b));
    assert_ne!(stdout(&a), stdout(&c));
}

#[test]
fn parallel_jobs_keep_input_order() {
    let serial = bimod(&["canon", "-p", "similarity.problem", "-m", "jordan.rep", "-m", "other.rep", "-m", "jordan_swapped.rep"]);
    let parallel = bimod(&[
        "canon", "-p", "similarity.problem", "-m", "jordan.rep", "-m", "other.rep", "-m", "jordan_swapped.rep", "--jobs", "3",
    ]);
    assert!(parallel.status.success());
    assert_eq!(stdout(&serial), stdout(&parallel));
}

#[test]
fn iso_answers_both_ways() {
    let yes = bimod(&["iso", "-p", "similarity.problem", "-m", "jordan.rep", "-n", "jordan_swapped.rep"]);
    assert_eq!(stdout(&yes), "isomorphic: true\n");
    let no = bimod(&["iso", "-p", "similarity.problem", "-m", "jordan.rep", "-n", "other.rep"]);
    assert_eq!(stdout(&no), "isomorphic: false\n");
}

#[test]
fn decompose_reports_multiplicities() {
    let o = bimod(&["decompose", "-p", "similarity.problem", "-m", "other.rep"]);
    let out = stdout(&o);
    assert!(out.contains("# summands 1") && out.contains("multiplicity 2"), "{out}");
}

#[test]
fn weyr_reports_partition() {
    let o = bimod(&["weyr", "-m", "weyr.matrix"]);
    assert!(stdout(&o).contains("# eigenvalue 0: m = (1, 1, 1)"), "{}", stdout(&o));
}

#[test]
fn bocs_of_two_loop_algebra() {
    let o = bimod(&["bocs", "-a", "two_loops.alg"]);
    let out = stdout(&o);
    assert!(out.contains("d(bb*) = ~b'b* - b*~b"), "{out}");
    assert!(out.contains("d(ab*) = 2~b'a* - a*~b + ~a'b* - 2b*~a"), "{out}");
    let dot = stdout(&bimod(&["bocs", "-a", "two_loops.alg", "--dot"]));
    assert!(dot.starts_with("digraph") && dot.contains("style=dashed"));
}

#[test]
fn fromalg_output_feeds_bocs() {
    let o = bimod(&["fromalg", "-a", "two_loops.alg"]);
    let dir = std::env::temp_dir().join(format!("bimod-fromalg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("p1.problem");
    std::fs::write(&path, stdout(&o)).unwrap();
    let b = bimod(&["bocs", "-p", path.to_str().unwrap()]);
    assert!(b.status.success(), "{}", stderr(&b));
    assert!(stdout(&b).contains("4 solid, 8 dotted"), "{}", stdout(&b));
}

#[test]
fn wild_and_tame_verdicts() {
    let w = bimod(&["wild", "-p", "two_loops_wild.problem"]);
    assert!(stdout(&w).starts_with("WILD (case 1"), "{}", stdout(&w));
    let t = bimod(&["wild", "-p", "one_loop.problem"]);
    assert!(stdout(&t).starts_with("NOT DETECTED"), "{}", stdout(&t));
}

#[test]
fn exit_codes_separate_domain_and_parse_errors() {
    let split = bimod(&["canon", "-p", "similarity.problem", "-m", "irrational.rep"]);
    assert_eq!(split.status.code(), Some(1));
    assert!(stderr(&split).starts_with("error[non-split-spectrum]"));
    let bad = bimod(&["canon", "-p", "bad.problem", "-m", "jordan.rep"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(stderr(&bad).starts_with("parse error: line 3"));
    let field = bimod(&["--field", "gf:5", "canon", "-p", "similarity.problem", "-m", "jordan.rep"]);
    assert_eq!(field.status.code(), Some(2));
    let missing = bimod(&["weyr", "-m", "no-such.matrix"]);
    assert_eq!(missing.status.code(), Some(2));
}
