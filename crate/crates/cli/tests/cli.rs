use quivmon_cli::{
    execute, render_dot, Graph, Outcome, EXIT_CAP, EXIT_DOMAIN, EXIT_OK, EXIT_USAGE,
};
use serde_json::{json, Value};

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}.json", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Outcome {
    let argv = std::iter::once("quivmon").chain(args.iter().copied());
    execute(argv.map(String::from))
}

fn run_json(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.code, EXIT_OK, "{args:?}: {}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

#[test]
fn ext_on_kronecker() {
    let kron = fixture("kron");
    let out = run(&["ext", "-Q", &kron, "-e", "1,0", "-d", "0,1"]);
    assert_eq!(out.stdout, "{\"ext\":2,\"vanishes\":false}\n");
    let kron3 = fixture("kron3");
    for route in [None, Some("--dual")] {
        let mut args = vec!["ext", "-Q", &kron3, "-e", "2,3", "-d", "3,1"];
        args.extend(route);
        assert_eq!(run_json(&args), json!({"ext": 0, "vanishes": true}));
    }
}

#[test]
fn normal_form_of_word() {
    let v = run_json(&["nf", "-Q", &fixture("kron"), "-w", "1,2"]);
    assert_eq!(v["normal_form"], json!([[1, 1]]));
    assert_eq!(v["input"], json!([[1, 0], [0, 1]]));
    let p = run_json(&["nf", "-Q", &fixture("kron"), "-p", "1,0;0,1"]);
    assert_eq!(p, v);
}

#[test]
fn hasse_dot_has_twelve_nodes() {
    let out = run(&["hasse", "-Q", &fixture("a2a2"), "-d", "1,2,1", "--dot"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.starts_with("digraph {\n"));
    assert_eq!(out.stdout.matches("[label=").count(), 12);
    let v = run_json(&["hasse", "-Q", &fixture("a2a2"), "-d", "1,2,1"]);
    assert_eq!(v["nodes"].as_array().unwrap().len(), 12);
    assert_eq!(v["edges"].as_array().unwrap().len(), 15);
}

#[test]
fn output_is_deterministic() {
    let args = ["hasse", "-Q", &fixture("a2a2"), "-d", "1,2,1", "--dot"];
    assert_eq!(run(&args), run(&args));
    let oracle = ["oracle", "-Q", &fixture("kron"), "set", "-w", "1212"];
    assert_eq!(run(&oracle), run(&oracle));
}

#[test]
fn quiver_level_commands() {
    let kron = fixture("kron");
    assert_eq!(
        run_json(&["euler", "-Q", &kron, "-d", "1,1", "-e", "1,1"]),
        json!({"euler": 0})
    );
    assert_eq!(
        run_json(&[
            "euler",
            "-Q",
            &kron,
            "-d",
            "1,0",
            "-e",
            "0,1",
            "--symmetric"
        ]),
        json!({"symmetric": -2})
    );
    assert_eq!(
        run_json(&["dims", "-Q", &kron, "-d", "2,2"]),
        json!({"dim_r": 8, "dim_g": 8, "euler": 0})
    );
    assert_eq!(
        run_json(&["order", "-Q", &kron]),
        json!({"order": ["1", "2"]})
    );
}

#[test]
fn schofield_commands() {
    let kron = fixture("kron");
    assert_eq!(
        run_json(&["hom", "-Q", &kron, "-e", "1,0", "-d", "0,1"]),
        json!({"hom": 0})
    );
    assert_eq!(
        run_json(&["schur", "-Q", &kron, "-d", "1,1"]),
        json!({"schur": true})
    );
    assert_eq!(
        run_json(&["schur", "-Q", &kron, "-d", "2,2"]),
        json!({"schur": false})
    );
    assert_eq!(
        run_json(&["candec", "-Q", &kron, "-d", "2,2"]),
        json!({"decomposition": [[1, 1], [1, 1]]})
    );
    assert_eq!(
        run_json(&["candec", "-Q", &fixture("a2"), "-d", "2,1", "--reversed"]),
        json!({"decomposition": [[1, 0], [1, 1]]})
    );
    assert_eq!(
        run_json(&["isotropic", "-Q", &kron, "-d", "1,1"]),
        json!({"isotropic": true})
    );
    let rels = run_json(&["obsrel", "-Q", &kron, "--bound", "2"]);
    assert_eq!(
        rels,
        json!({"relations": [
            {"d": [1, 0], "e": [1, 0]},
            {"d": [1, 0], "e": [0, 1]},
            {"d": [0, 1], "e": [0, 1]},
        ]})
    );
    assert_eq!(
        run_json(&["drel3", "-n", "3", "-k", "1", "-x", "2"]),
        json!({"threshold": 4})
    );
    assert_eq!(
        run(&["drel3", "-n", "3", "-k", "2", "-x", "1"]).code,
        EXIT_DOMAIN
    );
}

#[test]
fn word_commands() {
    let a3 = fixture("a3");
    let long = "iikijkkjjikijijjjkkij";
    assert_eq!(
        run_json(&["degree", "-Q", &a3, "-w", long]),
        json!({"degree": [7, 6, 8]})
    );
    let v = run_json(&["vfun", "-Q", &a3, "-w", long]);
    assert_eq!(v["v"][0], json!(7));
    let p = run_json(&["pattern", "-Q", &a3, "-w", long]);
    assert_eq!(p["arrows"][0]["rows"][1], json!("0******"));
    let a2a2 = fixture("a2a2");
    assert_eq!(
        run_json(&["wleq", "-Q", &a2a2, "-a", "ijjk", "-b", "jijk"]),
        json!({"leq": true})
    );
    assert_eq!(
        run_json(&["wleq", "-Q", &a2a2, "-a", "jijk", "-b", "ijjk"]),
        json!({"leq": false})
    );
    assert_eq!(
        run_json(&[
            "wleq",
            "-Q",
            &a2a2,
            "-a",
            "ijjk",
            "-b",
            "jijk",
            "--inclusion"
        ]),
        json!({"inclusion": true})
    );
    let kron = fixture("kron");
    assert_eq!(
        run_json(&["codimbound", "-Q", &kron, "-w", "21"]),
        json!({"codim_lower_bound": 2})
    );
    assert_eq!(
        run_json(&["eq", "-Q", &kron, "-a", "12", "-b", "12"]),
        json!({"verdict": "equal"})
    );
    assert_eq!(
        run_json(&["eq", "-Q", &kron, "-a", "12", "-b", "21"]),
        json!({"verdict": "unknown"})
    );
}

#[test]
fn algebra_commands() {
    let a2 = fixture("a2");
    let out = run(&["qserre", "-Q", &a2, "-i", "i", "-j", "j"]);
    assert_eq!(
        out.stdout.lines().next().unwrap(),
        "E_i^2 E_j - (q+1) E_i E_j E_i + q^2 E_j E_i^2"
    );
    let js = run_json(&["qserre", "-Q", &a2, "-i", "i", "-j", "j", "--json"]);
    assert_eq!(js["relations"].as_array().unwrap().len(), 2);
    assert_eq!(
        run(&["qserre", "-Q", &a2, "-i", "j", "-j", "i"]).code,
        EXIT_DOMAIN
    );
    let b = run_json(&["qbinom", "-m", "2", "-n", "2"]);
    assert_eq!(b["poly"], json!("q^4+q^3+2q^2+q+1"));
    let kron = fixture("kron");
    let ideal = run_json(&["idealdim", "-Q", &kron, "-d", "2,2"]);
    assert_eq!(ideal["dim"], json!(0));
    assert_eq!(ideal["words"], json!(6));
    assert_eq!(
        run_json(&["u0eq", "-Q", &kron, "-a", "1212", "-b", "1122"]),
        json!({"equal": false})
    );
    assert_eq!(
        run_json(&["u0eq", "-Q", &a2, "-a", "iij", "-b", "iji"]),
        json!({"equal": true})
    );
}

#[test]
fn oracle_commands() {
    let kron = fixture("kron");
    let cmp = run_json(&["oracle", "-Q", &kron, "cmp", "-a", "1212", "-b", "1122"]);
    assert_eq!(cmp["relation"], json!("equal"));
    assert_eq!(cmp["first"], json!(256));
    let rational = run_json(&[
        "oracle",
        "-Q",
        &kron,
        "--flag-degree",
        "1",
        "cmp",
        "-a",
        "1212",
        "-b",
        "1122",
    ]);
    assert_eq!(rational["relation"], json!("first_in_second"));
    let set = run_json(&["oracle", "-Q", &kron, "set", "-w", "21"]);
    assert_eq!(set["count"], json!(1));
    assert_eq!(set["sha256"].as_str().unwrap().len(), 64);
    let reps = run_json(&["oracle", "-Q", &kron, "enum", "-d", "1,1"]);
    assert_eq!(reps["count"], json!(4));
    let rep = reps["reps"][3].to_string();
    assert_eq!(
        run_json(&["oracle", "-Q", &kron, "member", "-w", "21", "-r", &rep]),
        json!({"member": false})
    );
    let zero = reps["reps"][0].to_string();
    assert_eq!(
        run_json(&["oracle", "-Q", &kron, "hom", "-x", &zero, "-y", &zero]),
        json!({"hom": 2, "ext": 2})
    );
    assert_eq!(
        run_json(&["oracle", "-Q", &kron, "genext", "-e", "1,0", "-d", "0,1"]),
        json!({"ext": 2})
    );
    let a2 = fixture("a2");
    let dim = run_json(&["oracle", "-Q", &a2, "--dynkin", "dim", "-w", "ji"]);
    assert_eq!(dim["codim"], json!(1));
    assert_eq!(
        run_json(&[
            "oracle",
            "-Q",
            &a2,
            "--dynkin",
            "dynkin-eq",
            "-a",
            "iij",
            "-b",
            "iji"
        ]),
        json!({"equal": true})
    );
    assert_eq!(
        run(&["oracle", "-Q", &a2, "dynkin-eq", "-a", "ij", "-b", "ji"]).code,
        EXIT_DOMAIN
    );
    let sd = run_json(&["oracle", "-Q", &a2, "sd", "-d", "1,1"]);
    assert_eq!(sd["count"], json!(1));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&[]).code, EXIT_USAGE);
    assert_eq!(run(&["frobnicate"]).code, EXIT_USAGE);
    assert_eq!(
        run(&["ext", "-Q", &fixture("kron"), "-e", "1,0"]).code,
        EXIT_USAGE
    );
    assert_eq!(run(&["--help"]).code, EXIT_OK);
    let cycle = run(&["order", "-Q", &fixture("cycle")]);
    assert_eq!(cycle.code, EXIT_DOMAIN);
    assert!(cycle.stdout.is_empty());
    assert_eq!(
        run(&["order", "-Q", "/nonexistent/q.json"]).code,
        EXIT_DOMAIN
    );
    assert_eq!(
        run(&["dims", "-Q", &fixture("kron"), "-d", "1,2,3"]).code,
        EXIT_DOMAIN
    );
    assert_eq!(
        run(&["dims", "-Q", &fixture("kron"), "-d", "1,x"]).code,
        EXIT_DOMAIN
    );
    let capped = run(&[
        "hasse",
        "-Q",
        &fixture("a2a2"),
        "-d",
        "2,2,2",
        "--hasse-cap",
        "5",
    ]);
    assert_eq!(capped.code, EXIT_CAP);
    let capped = run(&[
        "oracle",
        "-Q",
        &fixture("kron"),
        "--enum-cap",
        "10",
        "set",
        "-w",
        "1122",
    ]);
    assert_eq!(capped.code, EXIT_CAP);
}

#[test]
fn dot_rendering() {
    assert_eq!(render_dot(&Graph::default()), "digraph {\n}\n");
    let one = Graph {
        nodes: vec!["(i)".into()],
        edges: vec![],
    };
    assert_eq!(render_dot(&one), "digraph {\n  n0 [label=\"(i)\"];\n}\n");
    let pair = Graph {
        nodes: vec!["(ji)".into(), "(ij)".into()],
        edges: vec![(1, 0)],
    };
    assert_eq!(
        render_dot(&pair),
        "digraph {\n  n0 [label=\"(ij)\"];\n  n1 [label=\"(ji)\"];\n  n0 -> n1;\n}\n"
    );
}

#[test]
fn hasse_of_two_commuting_letters_is_one_edge() {
    let free = std::env::temp_dir().join("quivmon-free-pair.json");
    std::fs::write(&free, r#"{"vertices": ["i", "j"], "arrows": []}"#).unwrap();
    let v = run_json(&["hasse", "-Q", free.to_str().unwrap(), "-d", "1,1"]);
    assert_eq!(v["nodes"].as_array().unwrap().len(), 2);
    assert_eq!(v["edges"], json!([[0, 1]]));
}
