use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use pwsample_core::generators::{make_complete_bipartite, random_pw_signal};
use pwsample_core::io::{parse_artifact_header, write_spacetime_samples, RunConfig};
use pwsample_core::spacetime::take_spacetime_samples;
use pwsample_core::{eigendecompose, MeasureMode};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tempfile::TempDir;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pwsample"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(String::from).collect())
        .collect()
}

fn num(s: &str) -> f64 {
    s.parse().unwrap()
}

const K53_SIDE: &str = "0,1,2,3,4";

#[test]
fn spectrum_of_a_path() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("p3.txt"), "# P3\n0 1\n1 2 1.0\n").unwrap();
    let o = run(dir.path(), &["spectrum", "--graph", "p3.txt"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("\nj,lambda,0,1,2\n"));
    let r = rows(&text);
    assert_eq!(r.len(), 3);
    for (row, want) in r.iter().zip([0.0, 1.0, 3.0]) {
        assert!((num(&row[1]) - want).abs() < 1e-12);
        assert_eq!(row.len(), 5);
    }
    assert_eq!(parse_artifact_header(&text).unwrap().command, "spectrum");
}

#[test]
fn bad_graph_files() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("empty.txt"), "").unwrap();
    let o = run(dir.path(), &["spectrum", "--graph", "empty.txt"]);
    assert_eq!(o.status.code(), Some(2));

    fs::write(dir.path().join("bad.txt"), "0 1 1\n1 2 heavy\n").unwrap();
    let o = run(dir.path(), &["spectrum", "--graph", "bad.txt"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));

    let o = run(dir.path(), &["spectrum", "--graph", "missing.txt"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn certify_bipartite_side() {
    let dir = TempDir::new().unwrap();
    let o = run(
        dir.path(),
        &[
            "certify",
            "--generate",
            "complete-bipartite:5:3",
            "--set",
            K53_SIDE,
            "--omega",
            "4",
            "--dual-dir",
            "dual",
        ],
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("\nset,omega,K_S,D_S,sigma,poincare_complement,c,C\n"));
    let r = rows(&text);
    assert_eq!(r.len(), 1);
    assert_eq!(r[0][0], "0;1;2;3;4");
    for i in [2, 4, 5] {
        assert!((num(&r[0][i]) - 5.0).abs() < 1e-9);
    }
    assert!(num(&r[0][6]) > 0.0);
    for v in 0..5 {
        let dual = fs::read_to_string(dir.path().join(format!("dual/dual_{v}.csv"))).unwrap();
        assert_eq!(rows(&dual).len(), 8);
    }
}

#[test]
fn certify_rejects_the_full_set() {
    let dir = TempDir::new().unwrap();
    let o = run(
        dir.path(),
        &[
            "certify",
            "--generate",
            "complete-bipartite:5:3",
            "--set",
            "0,1,2,3,4,5,6,7",
            "--omega",
            "4",
        ],
    );
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("whole graph"));
}

#[test]
fn certify_random_graph_chain() {
    let dir = TempDir::new().unwrap();
    let o = run(
        dir.path(),
        &[
            "certify",
            "--generate",
            "erdos-renyi:30:0.15",
            "--graph-seed",
            "9",
            "--set",
            "0,3,5,7,11,20",
            "--omega",
            "0.1",
        ],
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let r = &rows(&stdout(&o))[0];
    let (k_s, sigma, lambda) = (num(&r[2]), num(&r[4]), num(&r[5]));
    assert!(
        k_s <= sigma + 1e-9 && sigma <= lambda + 1e-9,
        "{k_s} {sigma} {lambda}"
    );
}

#[test]
fn evolve_time_series() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("g.txt"), "a b 1\nb c 2\nc a 0.5\nc d 1\n").unwrap();
    fs::write(dir.path().join("f.txt"), "a 1 0\nb 0 1\nc -0.5\nd 2 2\n").unwrap();
    let o = run(
        dir.path(),
        &[
            "evolve",
            "--graph",
            "g.txt",
            "--signal",
            "f.txt",
            "--t-grid",
            "0:2:0.5",
            "--out",
            "series.csv",
        ],
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let text = fs::read_to_string(dir.path().join("series.csv")).unwrap();
    let r = rows(&text);
    assert_eq!(r.len(), 5 * 4);
    let start: Vec<(f64, f64)> = r[..4].iter().map(|x| (num(&x[2]), num(&x[3]))).collect();
    assert_eq!(start, vec![(1.0, 0.0), (0.0, 1.0), (-0.5, 0.0), (2.0, 2.0)]);
    let norm0 = num(&r[0][4]);
    assert!((norm0 - 10.25f64.sqrt()).abs() < 1e-12);
    assert!(r.iter().all(|x| (num(&x[4]) - norm0).abs() < 1e-12 * norm0));
    let leftovers: Vec<_> = fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(leftovers.len(), 3);

    let o = run(
        dir.path(),
        &[
            "evolve", "--graph", "g.txt", "--signal", "f.txt", "--t-grid", "1:0:0.5",
        ],
    );
    assert!(o.status.success());
    assert!(rows(&stdout(&o)).is_empty());
    assert!(stdout(&o).ends_with("t,v,re,im,norm\n"));
}

fn write_samples(dir: &Path, keep_laplacian: bool) {
    let (g, s) = make_complete_bipartite::<f64>(5, 3, MeasureMode::Counting).unwrap();
    let spec = eigendecompose(&g).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let f = random_pw_signal(&g, &spec, 4.0, &mut rng).unwrap();
    let st = take_spacetime_samples(&spec, &f, &s, 4.0, 50).unwrap();
    let st = if keep_laplacian {
        st
    } else {
        st.without_laplacian()
    };
    fs::write(
        dir.join("samples.txt"),
        write_spacetime_samples(&g, &st, &RunConfig::default()),
    )
    .unwrap();
    let edges: String = g
        .edges()
        .map(|(i, j, _)| format!("{} {}\n", g.vertex(i), g.vertex(j)))
        .collect();
    fs::write(dir.join("k53.txt"), edges).unwrap();
}

#[test]
fn reconstruct_from_sample_files() {
    let dir = TempDir::new().unwrap();
    write_samples(dir.path(), false);
    let base = [
        "reconstruct",
        "--graph",
        "k53.txt",
        "--set",
        K53_SIDE,
        "--omega",
        "4",
        "--K",
        "50",
        "--samples",
        "samples.txt",
        "--t",
        "0,0.3",
    ];
    let o = run(
        dir.path(),
        &[&base[..], &["--derive-laplacian", "off"]].concat(),
    );
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("Laplacian"));
    let o = run(
        dir.path(),
        &[&base[..], &["--derive-laplacian", "on"]].concat(),
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let r = rows(&stdout(&o));
    assert_eq!(r.len(), 16);
    assert!(r.iter().all(|x| x[4].is_empty()));

    write_samples(dir.path(), true);
    let o = run(
        dir.path(),
        &[&base[..], &["--derive-laplacian", "off"]].concat(),
    );
    assert!(o.status.success(), "{}", stderr(&o));
}

#[test]
fn reconstruct_generated_end_to_end() {
    let dir = TempDir::new().unwrap();
    let o = run(
        dir.path(),
        &[
            "reconstruct",
            "--generate",
            "complete-bipartite:5:3",
            "--set",
            K53_SIDE,
            "--omega",
            "4",
            "--K",
            "2000",
            "--seed",
            "5",
            "--t-grid",
            "-0.75:0.75:0.25",
        ],
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let r = rows(&stdout(&o));
    assert_eq!(r.len(), 7 * 8);
    let worst = r.iter().map(|x| num(&x[4])).fold(0.0, f64::max);
    assert!(worst < 1e-5, "{worst}");
}

#[test]
fn reconstruct_rejects_non_sampling_sets() {
    let dir = TempDir::new().unwrap();
    let o = run(
        dir.path(),
        &[
            "reconstruct",
            "--generate",
            "complete-bipartite:5:3",
            "--set",
            "5,6,7",
            "--omega",
            "4",
            "--K",
            "10",
            "--t",
            "0.1",
        ],
    );
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("c = 0e0"), "{}", stderr(&o));
}

#[test]
fn reconstruct_rejects_out_of_band_signal() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("g.txt"), "0 1\n1 2\n").unwrap();
    fs::write(dir.path().join("f.txt"), "0 1\n1 -2\n2 1\n").unwrap();
    let o = run(
        dir.path(),
        &[
            "reconstruct",
            "--graph",
            "g.txt",
            "--signal",
            "f.txt",
            "--set",
            "0,1",
            "--omega",
            "1.5",
            "--K",
            "4",
            "--t",
            "0.1",
        ],
    );
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn demo_bipartite_reports() {
    let dir = TempDir::new().unwrap();
    let o = run(
        dir.path(),
        &["demo-bipartite", "5", "3", "--out", "report.csv"],
    );
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("overall: PASS"));
    let csv = fs::read_to_string(dir.path().join("report.csv")).unwrap();
    assert!(rows(&csv).iter().all(|x| x[x.len() - 2] == "true"));
    let cfg = parse_artifact_header(&csv).unwrap();
    assert_eq!(cfg.command, "demo-bipartite");
    assert!(cfg.generator.is_some());

    let o = run(dir.path(), &["demo-bipartite", "2", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("bad sizes"));
}

#[test]
fn generated_graphs_replay_bit_for_bit() {
    let dir = TempDir::new().unwrap();
    let first = run(
        dir.path(),
        &["gen", "--generate", "erdos-renyi:20:0.2", "--seed", "4"],
    );
    assert!(first.status.success());
    let text = stdout(&first);
    let cfg = parse_artifact_header(&text).unwrap();
    let spec = cfg.generator.unwrap().to_string();
    let again = run(dir.path(), &["gen", "--generate", &spec]);
    assert_eq!(stdout(&again), text);

    fs::write(dir.path().join("g.txt"), &text).unwrap();
    let a = run(dir.path(), &["spectrum", "--graph", "g.txt"]);
    let b = run(dir.path(), &["spectrum", "--generate", &spec]);
    assert_eq!(rows(&stdout(&a)), rows(&stdout(&b)));
}
