use std::io::Write;
use std::path::Path;
use std::process::{Command, Stdio};

use mncolor::cli::dispatch;
use mncolor::homsearch::{chromatic_number, is_homomorphism, is_valid_partition, Partition};
use mncolor::signed::{is_signed_clique, PairRule, TwoEdgeColoring};
use mncolor::{MixedGraph, SimpleGraph};

const P4: &str = "mixed 1 0 4\na 0 1 1\na 1 2 1\na 2 3 1\n";

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn run(args: &[&str]) -> mncolor::cli::CommandResult {
    dispatch(std::iter::once("mncolor").chain(args.iter().copied()))
}

fn partition_from(line: &str, prefix: &str) -> Partition {
    let rest = line.strip_prefix(prefix).unwrap();
    Partition::new(
        rest.split_whitespace()
            .map(|x| x.parse().unwrap())
            .collect(),
    )
    .unwrap()
}

#[test]
fn check_clique_outcomes() {
    let dir = tempfile::tempdir().unwrap();
    let h = run(&["construct", "outerplanar-clique", "--m", "1", "--n", "0"]);
    assert_eq!(h.code, 0);
    let hf = write(dir.path(), "h.mg", &h.stdout);
    let r = run(&["check-clique", &hf]);
    assert_eq!((r.code, r.stdout.as_str()), (0, "clique\n"));

    let p4 = write(dir.path(), "p4.mg", P4);
    let r = run(&["check-clique", &p4]);
    assert_eq!((r.code, r.stdout.as_str()), (1, "failing-pair 0 3\n"));

    let r = run(&["absolute-clique", &p4]);
    assert_eq!(r.stdout, "{\"size\":3,\"vertices\":[0,1,2]}\n");
    let r = run(&["relative-clique", &hf]);
    assert!(r.stdout.starts_with("{\"size\":7,"));
}

#[test]
fn max_chromatic_witness_reverifies() {
    let dir = tempfile::tempdir().unwrap();
    let p5 = write(
        dir.path(),
        "p5.sg",
        &run(&["construct", "path", "5"]).stdout,
    );
    let r = run(&["max-chromatic", &p5, "--m", "0", "--n", "2"]);
    assert_eq!(r.code, 0);
    let mut lines = r.stdout.lines();
    assert_eq!(lines.next(), Some("4"));
    let body: String = r.stdout.split_once('\n').unwrap().1.to_string();
    let witness = MixedGraph::parse(&body).unwrap();
    assert_eq!(
        witness.underlying(),
        SimpleGraph::parse(&std::fs::read_to_string(&p5).unwrap()).unwrap()
    );
    assert_eq!(chromatic_number(&witness).value, 4);
    let last = r.stdout.lines().last().unwrap();
    let p = partition_from(last, "# partition");
    assert_eq!(p.part_count(), 4);
    assert!(is_valid_partition(&witness, &p).unwrap());
}

#[test]
fn chromatic_and_hom_witnesses() {
    let dir = tempfile::tempdir().unwrap();
    let p4 = write(dir.path(), "p4.mg", P4);
    let r = run(&["chromatic", &p4]);
    assert_eq!(r.code, 0);
    let mut lines = r.stdout.lines();
    assert_eq!(lines.next(), Some("3"));
    let g = MixedGraph::parse(P4).unwrap();
    let p = partition_from(lines.next().unwrap(), "partition");
    assert!(is_valid_partition(&g, &p).unwrap());
    assert_eq!(p.part_count(), 3);

    let tri = write(
        dir.path(),
        "t.mg",
        "mixed 1 0 3\na 0 1 1\na 1 2 1\na 2 0 1\n",
    );
    let r = run(&["hom", &p4, &tri]);
    assert_eq!(r.code, 0);
    let map: Vec<usize> = r
        .stdout
        .trim()
        .strip_prefix("hom")
        .unwrap()
        .split_whitespace()
        .map(|x| x.parse().unwrap())
        .collect();
    let h = MixedGraph::parse("mixed 1 0 3\na 0 1 1\na 1 2 1\na 2 0 1\n").unwrap();
    assert!(is_homomorphism(&g, &h, &map));

    let edge = write(dir.path(), "e.mg", "mixed 1 0 2\na 0 1 1\n");
    let r = run(&["hom", &tri, &edge]);
    assert_eq!((r.code, r.stdout.as_str()), (1, "none\n"));
    let other = write(dir.path(), "o.mg", "mixed 0 1 2\ne 0 1 1\n");
    assert_eq!(run(&["hom", &tri, &other]).code, 2);
}

#[test]
fn signed_commands() {
    let dir = tempfile::tempdir().unwrap();
    let c4 = write(
        dir.path(),
        "c4.sg",
        &run(&["construct", "cycle", "4"]).stdout,
    );
    let r = run(&["signed-colorable", &c4]);
    assert_eq!(r.code, 0);
    let g = SimpleGraph::parse(&std::fs::read_to_string(&c4).unwrap()).unwrap();
    let col = TwoEdgeColoring::parse(&r.stdout).unwrap();
    assert!(is_signed_clique(&g, &col, PairRule::NonAdjacent)
        .unwrap()
        .is_signed_clique());
    let colf = write(dir.path(), "c4.col", &r.stdout);
    assert_eq!(
        run(&["verify-signed", &c4, &colf]).stdout,
        "signed-clique\n"
    );

    let bad = write(
        dir.path(),
        "bad.col",
        "c 0 1 1\nc 1 2 1\nc 2 3 1\nc 0 3 1\n",
    );
    let r = run(&["verify-signed", &c4, &bad]);
    assert_eq!((r.code, r.stdout.as_str()), (1, "failing-pair 0 2\n"));
    let partial = write(dir.path(), "p.col", "c 0 1 1\n");
    assert_eq!(run(&["verify-signed", &c4, &partial]).code, 2);

    let p3 = write(dir.path(), "p3.sg", "simple 3\ne 0 1\ne 1 2\n");
    assert_eq!(run(&["signed-colorable", &p3]).stdout, "none\n");
    let k8 = write(dir.path(), "k8.sg", &SimpleGraph::complete(8).to_text());
    assert_eq!(run(&["signed-colorable", &k8]).code, 3);
    assert_eq!(run(&["signed-colorable", &k8, "--budget", "30"]).code, 0);
}

#[test]
fn nae_commands() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "f.cnf", "p nae 3 1\n1 2 3 0\n");
    let r = run(&["nae-solve", &f]);
    assert_eq!((r.code, r.stdout.as_str()), (0, "sat 1 0 0\n"));
    let fano = write(
        dir.path(),
        "fano.cnf",
        "p nae 7 7\n1 2 3 0\n1 4 5 0\n1 6 7 0\n2 4 6 0\n2 5 7 0\n3 4 7 0\n3 5 6 0\n",
    );
    assert_eq!(run(&["nae-solve", &fano]).stdout, "unsat\n");
    assert_eq!(run(&["nae-solve", &fano, "--budget", "10"]).code, 3);

    let out = dir.path().join("g.sg");
    let r = run(&["reduce-nae", &f, "--out", out.to_str().unwrap()]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("\"vertices\":150"));
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(SimpleGraph::parse(&text).unwrap().vertex_count(), 150);
    assert_eq!(text.lines().filter(|l| l.starts_with("# rep ")).count(), 9);
    assert!(text.contains("# role 0 r1\n"));

    let r = run(&["reduce-nae", &f, "--connectors", "single"]);
    assert!(r.stdout.starts_with("simple 93\n"));

    let bad = write(dir.path(), "bad.cnf", "p nae 3 1\n1 2 2 0\n");
    assert_eq!(run(&["nae-solve", &bad]).code, 2);
}

#[test]
fn construct_outputs_parse() {
    let dir = tempfile::tempdir().unwrap();
    let r = run(&["construct", "planar-clique", "--m", "1", "--n", "1"]);
    let g = MixedGraph::parse(&r.stdout).unwrap();
    assert_eq!(g.vertex_count(), 31);
    assert_eq!(
        r.stdout
            .lines()
            .filter(|l| l.starts_with("# role "))
            .count(),
        31
    );
    assert_eq!(
        run(&["construct", "outerplanar-clique", "--m", "0", "--n", "1"]).code,
        2
    );

    let p3 = write(
        dir.path(),
        "p3.sg",
        &run(&["construct", "path", "2"]).stdout,
    );
    let r = run(&["construct", "join", &p3, &p3]);
    let j = SimpleGraph::parse(&r.stdout).unwrap();
    assert_eq!((j.vertex_count(), j.edge_count()), (7, 10));
    assert!(r.stdout.contains("# role 6 inf\n"));
    let r = run(&["construct", "iterate", &p3, "--k", "2"]);
    assert_eq!(SimpleGraph::parse(&r.stdout).unwrap().vertex_count(), 7);
    assert_eq!(run(&["construct", "cycle", "2"]).code, 2);
}

#[test]
fn experiment_outputs() {
    let r = run(&[
        "experiment",
        "enumerate",
        "--m",
        "1",
        "--n",
        "0",
        "--k",
        "2",
    ]);
    assert_eq!(
        r.stdout,
        "{\"mode\":\"exact\",\"m\":1,\"n\":0,\"k\":2,\"total\":3,\"clique_count\":2,\"fraction\":0.6666666666666666}\n"
    );
    let r = run(&[
        "experiment",
        "union-bound",
        "--m",
        "1",
        "--n",
        "0",
        "--k",
        "3",
    ]);
    assert_eq!(
        r.stdout,
        "{\"m\":1,\"n\":0,\"k\":3,\"exact_noncliques\":13,\"bound\":21,\"holds\":true}\n"
    );
    let a = run(&[
        "experiment",
        "random",
        "--m",
        "0",
        "--n",
        "2",
        "--k",
        "5",
        "--trials",
        "300",
        "--seed",
        "4",
    ]);
    let b = run(&[
        "experiment",
        "random",
        "--m",
        "0",
        "--n",
        "2",
        "--k",
        "5",
        "--trials",
        "300",
        "--seed",
        "4",
        "--jobs",
        "5",
    ]);
    assert_eq!(a, b);
    assert!(a.stdout.contains("\"prng\":\"chacha8\""));
    let r = run(&[
        "experiment",
        "enumerate",
        "--m",
        "1",
        "--n",
        "0",
        "--k",
        "6",
        "--budget",
        "100",
    ]);
    assert_eq!(r.code, 3);
    assert!(r.stdout.is_empty());
    assert!(r.stderr.contains("exceeds budget"));
}

#[test]
fn usage_and_parse_errors() {
    let r = run(&["frobnicate"]);
    assert_eq!(r.code, 2);
    assert!(r.stdout.is_empty());
    assert!(r.stderr.contains("Usage"));
    assert_eq!(run(&["--help"]).code, 0);

    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.mg", "mixed 0 2 2\ne 0 1 3\n");
    let r = run(&["check-clique", &bad]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("out of range"));
    assert_eq!(run(&["check-clique", "/nonexistent/file"]).code, 2);
    let zero = run(&["construct", "planar-clique", "--m", "0", "--n", "0"]);
    assert_eq!(zero.code, 2);
}

#[test]
fn binary_reads_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_mncolor"))
        .args(["check-clique", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(P4.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(out.stdout, b"failing-pair 0 3\n");
}
