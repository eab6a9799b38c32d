use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use stylemeter::synth::{synthetic_corpus, SyntheticConfig};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_stylemeter"))
}

fn run(dir: &Path, args: &[&str]) -> Output {
    bin()
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(dir: &Path, args: &[&str]) -> String {
    let out = run(dir, args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}\n{}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(dir: &Path, args: &[&str]) -> (i32, String) {
    let out = run(dir, args);
    (
        out.status.code().unwrap(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn corpus_file(dir: &Path, per_group: usize, sentences: (usize, usize)) -> PathBuf {
    let path = dir.join("corpus.jsonl");
    synthetic_corpus(&SyntheticConfig {
        per_group,
        sentences,
        seed: 5,
        ..Default::default()
    })
    .write_jsonl(&path)
    .unwrap();
    path
}

fn svg_root(path: &Path) -> String {
    let text = fs::read_to_string(path).unwrap();
    let doc = roxmltree::Document::parse(&text).expect("well-formed SVG");
    assert_eq!(doc.root().children().filter(|n| n.is_element()).count(), 1);
    text
}

#[test]
fn reference_page_is_current() {
    let out = bin().arg("reference").output().unwrap();
    let want = fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/../../docs/cli-reference.md"
    ))
    .unwrap();
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        want,
        "regenerate with `stylemeter reference > docs/cli-reference.md`"
    );
}

#[test]
fn echo_pipeline_end_to_end() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    corpus_file(dir, 12, (6, 9));
    ok(
        dir,
        &[
            "ingest",
            "--input",
            "corpus.jsonl",
            "--cue-words",
            "25",
            "--out",
            "ingested",
        ],
    );
    assert_eq!(
        fs::read_to_string(dir.join("ingested/splits.jsonl"))
            .unwrap()
            .lines()
            .count(),
        24
    );

    ok(
        dir,
        &[
            "complete",
            "--input",
            "corpus.jsonl",
            "--client",
            "echo",
            "--out",
            "run",
        ],
    );
    assert_eq!(
        fs::read_to_string(dir.join("run/records.jsonl"))
            .unwrap()
            .lines()
            .count(),
        72
    );
    assert_eq!(
        fs::read_to_string(dir.join("run/failures.jsonl")).unwrap(),
        ""
    );

    let profile = [
        "profile",
        "--input",
        "run/references.jsonl",
        "--input",
        "run/completions.jsonl",
        "--out",
        "features.csv",
    ];
    ok(dir, &profile);
    let first = fs::read(dir.join("features.csv")).unwrap();
    ok(dir, &profile);
    assert_eq!(
        fs::read(dir.join("features.csv")).unwrap(),
        first,
        "profiling is deterministic"
    );
    assert_eq!(String::from_utf8_lossy(&first).lines().count(), 1 + 24 + 72);

    ok(
        dir,
        &["compare", "--features", "features.csv", "--out", "cmp"],
    );
    let csv = fs::read_to_string(dir.join("cmp/comparison_reddit.csv")).unwrap();
    let header: Vec<&str> = csv.lines().next().unwrap().split(',').collect();
    assert_eq!(
        &header[..8],
        [
            "feature",
            "n_lower",
            "n_upper",
            "mean_lower",
            "mean_upper",
            "U",
            "p",
            "significant"
        ]
    );
    let echo_col = header
        .iter()
        .position(|h| *h == "ratio:lower/echo/imp")
        .unwrap();
    let anchor_col = header
        .iter()
        .position(|h| *h == "ratio:lower/human")
        .unwrap();
    for line in csv.lines().skip(1) {
        let cells: Vec<&str> = line.split(',').collect();
        assert!(
            cells[anchor_col].is_empty() || cells[anchor_col] == "1",
            "{line}"
        );
        assert_eq!(cells[echo_col], cells[anchor_col], "{line}");
    }
    svg_root(&dir.join("cmp/forest_reddit.svg"));

    let table = ok(
        dir,
        &["readability", "--features", "features.csv", "--out", "cmp"],
    );
    assert!(table.contains("flesch_reading_ease"));
    assert!(fs::read_to_string(dir.join("cmp/readability_reddit.csv"))
        .unwrap()
        .starts_with("metric,mean:lower/human,mean:upper/human,"));
}

#[test]
fn ablation_with_mocks() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    corpus_file(dir, 6, (14, 18));
    ok(
        dir,
        &[
            "ablate",
            "--input",
            "corpus.jsonl",
            "--client",
            "echo",
            "--out",
            "echo",
        ],
    );
    let csv = fs::read_to_string(dir.join("echo/ablation.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 4 * 2);
    for line in csv.lines().skip(1) {
        assert_eq!(line.split(',').nth(3), Some("0"), "{line}");
    }
    svg_root(&dir.join("echo/ablation.svg"));
    // reuses the stores without a client
    ok(dir, &["ablate", "--input", "corpus.jsonl", "--out", "echo"]);

    ok(
        dir,
        &[
            "ablate",
            "--input",
            "corpus.jsonl",
            "--client",
            "shuffle",
            "--seed",
            "3",
            "--out",
            "shuffle",
        ],
    );
    let csv = fs::read_to_string(dir.join("shuffle/ablation.csv")).unwrap();
    for line in csv.lines().skip(1) {
        let v: f64 = line.split(',').nth(3).unwrap().parse().unwrap();
        assert!(v > 0.0, "{line}");
    }
}

#[test]
fn three_rows_for_three_instances() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let text = [
        r#"{"id":"a","platform":"reddit","ses":"lower","author":"human","prompt_variant":null,"text":"I was so tired today."}"#,
        r#"{"id":"b","platform":"reddit","ses":"upper","author":"human","prompt_variant":null,"text":"The report was finished on time."}"#,
        r#"{"id":"c","platform":"youtube","ses":"lower","author":"human","prompt_variant":null,"text":"Hey guys, welcome back!"}"#,
    ]
    .join("\n");
    fs::write(dir.join("c.jsonl"), text).unwrap();
    ok(dir, &["profile", "--input", "c.jsonl", "--out", "f.csv"]);
    let csv = fs::read_to_string(dir.join("f.csv")).unwrap();
    assert_eq!(csv.lines().count(), 4);
    assert_eq!(csv.lines().next().unwrap().split(',').count(), 5 + 101);
}

#[test]
fn exit_codes() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    fs::write(dir.join("bad.jsonl"), "{\"id\": 3}\n").unwrap();
    assert_eq!(code(dir, &["ingest", "--input", "bad.jsonl"]).0, 1);
    assert_eq!(code(dir, &["ingest", "--input", "missing.jsonl"]).0, 2);
    assert_eq!(code(dir, &["ingest"]).0, 1);
    assert_eq!(code(dir, &["frobnicate"]).0, 1);
    assert_eq!(code(dir, &["--help"]).0, 0);

    corpus_file(dir, 4, (6, 8));
    assert_eq!(
        code(
            dir,
            &[
                "profile",
                "--input",
                "corpus.jsonl",
                "--annotation",
                "conllu"
            ]
        )
        .0,
        1
    );
    ok(
        dir,
        &["profile", "--input", "corpus.jsonl", "--out", "f.csv"],
    );
    assert_eq!(
        code(dir, &["compare", "--features", "f.csv", "--alpha", "1.5"]).0,
        1
    );
    let (c, err) = code(
        dir,
        &["compare", "--features", "f.csv", "--anchor", "lower/gpt"],
    );
    assert_eq!(c, 1, "{err}");
    assert!(err.contains("lower/gpt"), "{err}");

    let (c, err) = code(
        dir,
        &[
            "ablate",
            "--input",
            "corpus.jsonl",
            "--min-words",
            "10",
            "--cue-lengths",
            "5",
            "--out",
            "abl",
        ],
    );
    assert_eq!(c, 1);
    assert!(err.contains("cue length 5"), "{err}");
    assert_eq!(
        code(
            dir,
            &[
                "complete",
                "--input",
                "corpus.jsonl",
                "--client",
                "carrier-pigeon"
            ]
        )
        .0,
        1
    );
}

#[test]
fn unreachable_endpoint_writes_manifest() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    corpus_file(dir, 1, (6, 8));
    let listener = std::net::TcpListener::bind("127.0.0.1:0").unwrap();
    let url = format!("http://{}/v1", listener.local_addr().unwrap());
    drop(listener);
    fs::write(
        dir.join("run.toml"),
        format!("[completion]\nclient = \"http\"\nvariants = [\"imp\"]\n[endpoint]\nbase_url = \"{url}\"\nmodel = \"m\"\nmax_attempts = 2\nbackoff_ms = 1\n"),
    )
    .unwrap();
    let (c, err) = code(
        dir,
        &[
            "--config",
            "run.toml",
            "complete",
            "--input",
            "corpus.jsonl",
            "--out",
            "run",
        ],
    );
    assert_eq!(c, 2, "{err}");
    let manifest = fs::read_to_string(dir.join("run/failures.jsonl")).unwrap();
    assert_eq!(manifest.lines().count(), 2);
    assert!(manifest.contains("\"attempts\":2"));
}

#[test]
fn flags_override_config() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    corpus_file(dir, 4, (6, 8));
    fs::write(
        dir.join("run.toml"),
        "[corpus]\ninputs = [\"corpus.jsonl\"]\n[output]\ndir = \"from-config\"\n",
    )
    .unwrap();
    ok(dir, &["--config", "run.toml", "ingest"]);
    assert!(dir.join("from-config/corpus.jsonl").exists());
    ok(
        dir,
        &["--config", "run.toml", "ingest", "--out", "from-flag"],
    );
    assert!(dir.join("from-flag/corpus.jsonl").exists());
    fs::write(dir.join("typo.toml"), "[output]\ndri = \"x\"\n").unwrap();
    assert_eq!(code(dir, &["--config", "typo.toml", "ingest"]).0, 1);
}

#[test]
fn api_key_never_reaches_outputs() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    corpus_file(dir, 1, (6, 8));
    let listener = std::net::TcpListener::bind("127.0.0.1:0").unwrap();
    let url = format!("http://{}/v1", listener.local_addr().unwrap());
    drop(listener);
    let secret = "sk-never-written-0123";
    let out = bin()
        .current_dir(dir)
        .env("STYLEMETER_TEST_API_KEY", secret)
        .args([
            "complete",
            "--input",
            "corpus.jsonl",
            "--client",
            "http",
            "--model",
            "m",
            "--base-url",
            &url,
        ])
        .args([
            "--api-key-env",
            "STYLEMETER_TEST_API_KEY",
            "--variants",
            "imp",
            "--out",
            "run",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(!String::from_utf8_lossy(&out.stderr).contains(secret));
    for entry in fs::read_dir(dir.join("run")).unwrap() {
        let text = fs::read_to_string(entry.unwrap().path()).unwrap();
        assert!(!text.contains(secret));
    }
}
