use std::collections::BTreeSet;
use std::path::Path;
use std::process::{Command, Output};

use wflag::record::{CompletionRecord, JournalLine, ResultRecord};

fn wflag(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wflag"))
        .args(args)
        .env_remove("WFLAG_JOBS")
        .env_remove("WFLAG_CONFIG")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn records(text: &str) -> Vec<ResultRecord> {
    text.lines()
        .filter_map(|l| match serde_json::from_str::<JournalLine>(l).unwrap() {
            JournalLine::Result(r) => Some(*r),
            JournalLine::Completion(_) => None,
        })
        .collect()
}

#[test]
fn qorb_prints_the_half_point() {
    let o = wflag(&["qorb", "--r", "2", "--type", "1,1,1", "--k", "1"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("B(t)    -t^3"), "{}", s);
    assert!(s.contains("P_Q(t)  (-t^3) / ((1 - t)^3 (1 - t^2))"), "{}", s);
}

#[test]
fn weights_and_hilbert() {
    let o = wflag(&["weights", "--format", "g2", "--mu", "-1,1", "--u", "3"]);
    assert_eq!(stdout(&o).trim(), "[1,2^4,3^4,4^4,5]");
    let o = wflag(&["hilbert", "--format", "g2", "--mu=-1,1", "--u", "3", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["q"], 33);
    assert_eq!(v["canonical_weight"], -9);
    assert_eq!(v["numerator"][4], -3);
}

#[test]
fn decompose_and_initial_on_x7() {
    let dir = tempfile::tempdir().unwrap();
    let series = write(dir.path(), "x7.txt", "# degree 7 hypersurface\n(1 - t^7) /\n((1 - t)^4 (1 - t^2))\n");
    let good = write(dir.path(), "good.txt", "1/2(1,1,1)\n");
    let bad = write(dir.path(), "bad.txt", "2x1/2(1,1,1)\n");

    let o = wflag(&["initial", "--series", &series, "--n", "3", "--k", "1"]);
    assert!(stdout(&o).contains("A(t)    1 + t^2 + t^3 + t^5"));

    let o = wflag(&["decompose", "--series", &series, "--basket", &good, "--n", "3", "--k", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("identity holds"));

    let o = wflag(&["decompose", "--series", &series, "--basket", &bad, "--n", "3", "--k", "1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn exit_codes() {
    // domain errors
    assert_eq!(wflag(&["qorb", "--r", "2", "--type", "1,1,1", "--k", "0"]).status.code(), Some(1));
    assert_eq!(wflag(&["qorb", "--r", "4", "--type", "1,2,1", "--k", "0"]).status.code(), Some(1));
    assert_eq!(wflag(&["weights", "--format", "g2", "--mu", "-5,0", "--u", "1"]).status.code(), Some(1));
    // usage errors
    assert_eq!(wflag(&["qorb", "--r", "2", "--k", "1"]).status.code(), Some(2));
    assert_eq!(wflag(&["weights", "--format", "e8", "--mu", "0", "--u", "1"]).status.code(), Some(2));
    assert_eq!(wflag(&["params", "--format", "gr25", "--u-max", "2"]).status.code(), Some(2));
    assert_eq!(
        wflag(&["search", "--format", "g2", "--k", "-1", "--n", "1", "--u-max", "2"]).status.code(),
        Some(2)
    );
    assert_eq!(wflag(&["search", "--format", "g2", "--k", "-1", "--n", "3"]).status.code(), Some(2));
}

#[test]
fn params_lists_distinct_embeddings() {
    let o = wflag(&["params", "--format", "g2", "--u-max", "3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines.iter().any(|l| l.ends_with("[1,2^4,3^4,4^4,5]")));
    let weights: BTreeSet<&str> = lines.iter().map(|l| l.split_whitespace().last().unwrap()).collect();
    assert_eq!(weights.len(), lines.len());
}

fn search(extra: &[&str]) -> Output {
    let mut args = vec!["search", "--format", "g2", "--k", "-1", "--n", "3", "--u-max", "3", "--quiet"];
    args.extend_from_slice(extra);
    wflag(&args)
}

#[test]
fn search_emits_the_first_rows() {
    let o = search(&["--jobs", "2"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let recs = records(&stdout(&o));
    assert!(recs.iter().all(|r| r.schema_version == 1));
    let smooth = recs.iter().find(|r| r.candidate.weights == vec![1; 12]).unwrap();
    assert_eq!((smooth.candidate.degree.num.as_str(), smooth.candidate.degree.den.as_str()), ("18", "1"));
    let row2 = recs
        .iter()
        .find(|r| r.candidate.weights == [1, 2, 2, 2, 2, 3, 3, 3, 3, 4, 4, 5] && r.candidate.basket.len() == 2)
        .unwrap();
    assert_eq!((row2.candidate.degree.num.as_str(), row2.candidate.degree.den.as_str()), ("9", "10"));
    assert!(!row2.candidate.kernels.is_empty());

    // worker count does not change the candidates or their order; timings differ
    let serial = records(&stdout(&search(&["--jobs", "1"])));
    assert_eq!(
        serial.iter().map(|r| &r.candidate).collect::<Vec<_>>(),
        recs.iter().map(|r| &r.candidate).collect::<Vec<_>>()
    );
}

#[test]
fn emitters_agree() {
    let json = records(&stdout(&search(&[])));
    let csv_out = stdout(&search(&["--emit", "csv"]));
    let mut rdr = csv::Reader::from_reader(csv_out.as_bytes());
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), json.len());
    for (row, rec) in rows.iter().zip(&json) {
        let deg = if rec.candidate.degree.den == "1" {
            rec.candidate.degree.num.clone()
        } else {
            format!("{}/{}", rec.candidate.degree.num, rec.candidate.degree.den)
        };
        assert_eq!(&row[6], deg);
    }
    let text = stdout(&search(&["--emit", "text"]));
    assert_eq!(text.lines().count(), json.len() + 1);
}

#[test]
fn resume_skips_finished_embeddings() {
    let dir = tempfile::tempdir().unwrap();
    let journal = dir.path().join("journal.jsonl");
    let j = journal.to_str().unwrap();
    let out1 = dir.path().join("a.jsonl");
    let out2 = dir.path().join("b.jsonl");

    let o = search(&["--resume", j, "--out", out1.to_str().unwrap()]);
    assert!(o.status.success());
    let first = std::fs::read_to_string(&journal).unwrap();
    let o = search(&["--resume", j, "--out", out2.to_str().unwrap()]);
    assert!(o.status.success());
    // nothing was appended on the second run
    assert_eq!(std::fs::read_to_string(&journal).unwrap(), first);
    assert_eq!(std::fs::read_to_string(&out1).unwrap(), std::fs::read_to_string(&out2).unwrap());

    let keys: Vec<_> = first
        .lines()
        .filter_map(|l| serde_json::from_str::<CompletionRecord>(l).ok())
        .map(|c| c.completed)
        .collect();
    let distinct: BTreeSet<_> = keys.iter().cloned().collect();
    assert_eq!(keys.len(), distinct.len());

    // a journal cut after its first embedding is completed on rerun
    let cut: String = first
        .lines()
        .scan(false, |done, l| {
            if *done {
                return None;
            }
            *done = serde_json::from_str::<CompletionRecord>(l).is_ok();
            Some(format!("{}\n", l))
        })
        .collect();
    std::fs::write(&journal, cut).unwrap();
    let o = search(&["--resume", j, "--out", out2.to_str().unwrap()]);
    assert!(o.status.success());
    // timings differ for the recomputed embeddings
    let cands = |p: &Path| -> Vec<_> {
        records(&std::fs::read_to_string(p).unwrap()).into_iter().map(|r| r.candidate).collect()
    };
    assert_eq!(cands(&out1), cands(&out2));

    // the journal itself can be inspected
    let o = wflag(&["inspect", j]);
    let inspected: Vec<_> = records(&stdout(&o)).into_iter().map(|r| r.candidate).collect();
    assert_eq!(inspected, cands(&out1));
}

#[test]
fn config_file_sets_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "wflag.toml", "emit = \"csv\"\njobs = 2\n");
    let o = search(&["--config", &cfg]);
    assert!(stdout(&o).starts_with("format,mu,u,weights"));
    // flags win
    let o = search(&["--config", &cfg, "--emit", "json"]);
    assert!(stdout(&o).starts_with('{'));
    let bad = write(dir.path(), "bad.toml", "colour = 1\n");
    assert_eq!(search(&["--config", &bad]).status.code(), Some(1));
}
