//! Command-line front end: argument parsing, dispatch, and JSON/DOT output.

use std::fs;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use quivmon_core::normal_form::{word_to_product, DEFAULT_CLASS_CAP, DEFAULT_STEP_CAP};
use quivmon_core::oracle::{
    compare_families, Direction, Relation, DEFAULT_ENUM_CAP, DEFAULT_FLAG_DEGREE, DEFAULT_GROUP_CAP,
};
use quivmon_core::qalgebra::{
    graded_ideal_dim, q_binomial, serre_relations, u0_monomials_equal, u0_relations,
};
use quivmon_core::schofield::DEFAULT_EXT_CAP;
use quivmon_core::word::{
    codim_lower_bound, hasse_diagram, inclusion_implied, word_leq, zero_pattern, DEFAULT_HASSE_CAP,
    DEFAULT_WORD_CAP,
};
use quivmon_core::{
    drel3_threshold, DimVector, Error, ExtRoute, FqRep, NormalForms, Oracle, ProductForm, Quiver,
    Schofield, Verdict, Word,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_CAP: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// A labelled directed graph for DOT export.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    pub nodes: Vec<String>,
    pub edges: Vec<(usize, usize)>,
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// DOT digraph with nodes sorted by label and edges sorted by endpoints.
pub fn render_dot(graph: &Graph) -> String {
    let mut order: Vec<usize> = (0..graph.nodes.len()).collect();
    order.sort_by(|&a, &b| graph.nodes[a].cmp(&graph.nodes[b]).then(a.cmp(&b)));
    let mut position = vec![0; graph.nodes.len()];
    for (k, &n) in order.iter().enumerate() {
        position[n] = k;
    }
    let mut edges: Vec<(usize, usize)> = graph
        .edges
        .iter()
        .map(|&(a, b)| (position[a], position[b]))
        .collect();
    edges.sort_unstable();
    edges.dedup();
    let mut out = String::from("digraph {\n");
    for (k, &n) in order.iter().enumerate() {
        out.push_str(&format!(
            "  n{k} [label=\"{}\"];\n",
            dot_escape(&graph.nodes[n])
        ));
    }
    for (a, b) in edges {
        out.push_str(&format!("  n{a} -> n{b};\n"));
    }
    out.push_str("}\n");
    out
}

#[derive(Parser, Debug)]
#[command(
    name = "quivmon",
    version,
    about = "Composition monoid calculus for acyclic quivers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct QuiverArg {
    /// Quiver JSON file: {"vertices": [...], "arrows": [[tail, head], ...]}
    #[arg(short = 'Q', long = "quiver")]
    quiver: String,
}

#[derive(Args, Debug)]
struct ExtCap {
    /// Cap on |d| + |e| for the ext recursion
    #[arg(long, default_value_t = DEFAULT_EXT_CAP)]
    ext_cap: u64,
}

#[derive(Args, Debug)]
struct WordCap {
    /// Cap on the number of words of a degree
    #[arg(long, default_value_t = DEFAULT_WORD_CAP)]
    word_cap: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Euler form <d,e>
    Euler {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(short, long)]
        d: String,
        #[arg(short, long)]
        e: String,
        /// Symmetrized form (d,e) = <d,e> + <e,d>
        #[arg(long)]
        symmetric: bool,
    },
    /// dim R_d and dim G_d
    Dims {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(short, long)]
        d: String,
    },
    /// Admissible vertex order
    Order {
        #[command(flatten)]
        q: QuiverArg,
    },
    /// Generic ext(e, d)
    Ext {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(short, long)]
        e: String,
        #[arg(short, long)]
        d: String,
        /// Decide vanishing through quotient vectors of d instead of subvectors of e
        #[arg(long)]
        dual: bool,
        #[command(flatten)]
        cap: ExtCap,
    },
    /// Generic hom(e, d)
    Hom {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(short, long)]
        e: String,
        #[arg(short, long)]
        d: String,
        #[command(flatten)]
        cap: ExtCap,
    },
    /// Is d a Schur root?
    Schur {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(short, long)]
        d: String,
        #[command(flatten)]
        cap: ExtCap,
    },
    /// Canonical decomposition of d
    Candec {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(short, long)]
        d: String,
        /// Try splits in reverse order
        #[arg(long)]
        reversed: bool,
        #[command(flatten)]
        cap: ExtCap,
    },
    /// Is d an isotropic root?
    Isotropic {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(short, long)]
        d: String,
        #[command(flatten)]
        cap: ExtCap,
    },
    /// Pairs (d, e) with R_d * R_e = R_{d+e}
    Obsrel {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(long)]
        bound: u32,
        #[command(flatten)]
        cap: ExtCap,
    },
    /// Least y with ext(x·σ_1 + y·σ_2, σ_1 + k·σ_2) = 0 on the n-Kronecker quiver, x >= k
    Drel3 {
        #[arg(short, long)]
        n: u64,
        #[arg(short, long)]
        k: u64,
        #[arg(short, long)]
        x: u64,
    },
    /// Degree of a word
    Degree {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(short, long)]
        w: String,
    },
    /// v-function of a word
    Vfun {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(short, long)]
        w: String,
    },
    /// Forced-zero pattern of a word
    Pattern {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(short, long)]
        w: String,
    },
    /// Word order a <= b
    Wleq {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(short, long)]
        a: String,
        #[arg(short, long)]
        b: String,
        /// Report whether E_a ⊇ E_b follows from the order
        #[arg(long)]
        inclusion: bool,
        #[command(flatten)]
        cap: WordCap,
    },
    /// Hasse diagram of the words of degree d
    Hasse {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(short, long)]
        d: String,
        #[arg(long)]
        dot: bool,
        #[command(flatten)]
        cap: WordCap,
        /// Cap on the number of nodes
        #[arg(long, default_value_t = DEFAULT_HASSE_CAP)]
        hasse_cap: u64,
    },
    /// Lower bound for codim E_w
    Codimbound {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(short, long)]
        w: String,
    },
    /// Normal form of a word or product
    Nf {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(short, long, conflicts_with = "p", required_unless_present = "p")]
        w: Option<String>,
        /// Product of dimension vectors separated by ';'
        #[arg(short, long)]
        p: Option<String>,
        #[command(flatten)]
        cap: ExtCap,
        #[arg(long, default_value_t = DEFAULT_STEP_CAP)]
        step_cap: u64,
        #[arg(long, default_value_t = DEFAULT_CLASS_CAP)]
        class_cap: usize,
    },
    /// Decide E_a = E_b through normal forms
    Eq {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(short, long)]
        a: String,
        #[arg(short, long)]
        b: String,
        #[command(flatten)]
        cap: ExtCap,
        #[arg(long, default_value_t = DEFAULT_STEP_CAP)]
        step_cap: u64,
        #[arg(long, default_value_t = DEFAULT_CLASS_CAP)]
        class_cap: usize,
    },
    /// Brute-force checks over a prime field
    Oracle(OracleArgs),
    /// Quantum Serre relations for a pair of vertices
    Qserre {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(short, long)]
        i: String,
        #[arg(short, long)]
        j: String,
        #[arg(long)]
        json: bool,
    },
    /// Gaussian binomial [M+N over M]
    Qbinom {
        #[arg(short, long)]
        m: usize,
        #[arg(short, long)]
        n: usize,
    },
    /// Dimension of the degree-d component of the q = 0 relation ideal
    Idealdim {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(short, long)]
        d: String,
        #[command(flatten)]
        cap: WordCap,
    },
    /// Equality of two monomials in the q = 0 algebra
    U0eq {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(short, long)]
        a: String,
        #[arg(short, long)]
        b: String,
        #[command(flatten)]
        cap: WordCap,
    },
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[command(flatten)]
    q: QuiverArg,
    /// Prime field order
    #[arg(long = "field", default_value_t = 2)]
    field: u64,
    /// Composition series are sought over F_{q^m}
    #[arg(long, default_value_t = DEFAULT_FLAG_DEGREE)]
    flag_degree: u32,
    /// Declare the quiver representation-finite
    #[arg(long)]
    dynkin: bool,
    #[arg(long, default_value_t = DEFAULT_ENUM_CAP)]
    enum_cap: u64,
    #[arg(long, default_value_t = DEFAULT_GROUP_CAP)]
    group_cap: u64,
    #[arg(long, default_value_t = DEFAULT_WORD_CAP)]
    word_cap: u64,
    #[command(subcommand)]
    command: OracleCommand,
}

#[derive(Subcommand, Debug)]
enum OracleCommand {
    /// Every point of R_d
    Enum {
        #[arg(short, long)]
        d: String,
    },
    /// Does a representation admit a composition series of type w?
    Member {
        #[arg(short, long)]
        w: String,
        /// Representation JSON, inline or as a file path
        #[arg(short, long)]
        rep: String,
    },
    /// Digest of E_w
    Set {
        #[arg(short, long)]
        w: String,
    },
    /// Compare E_a and E_b as point sets
    Cmp {
        #[arg(short, long)]
        a: String,
        #[arg(short, long)]
        b: String,
    },
    /// dim Hom and dim Ext between two representations
    Hom {
        #[arg(short, long)]
        x: String,
        #[arg(short, long)]
        y: String,
    },
    /// Dimension of E_w
    Dim {
        #[arg(short, long)]
        w: String,
    },
    /// R_d minus the proper families E_w
    Sd {
        #[arg(short, long)]
        d: String,
    },
    /// Equality of E_a and E_b on a representation-finite quiver
    DynkinEq {
        #[arg(short, long)]
        a: String,
        #[arg(short, long)]
        b: String,
    },
    /// Minimal dim Ext(X, Y) over X in R_e, Y in R_d
    Genext {
        #[arg(short, long)]
        e: String,
        #[arg(short, long)]
        d: String,
    },
}

fn load_quiver(arg: &QuiverArg) -> quivmon_core::Result<Quiver> {
    let text = fs::read_to_string(&arg.quiver)
        .map_err(|e| Error::MalformedSpec(format!("{}: {e}", arg.quiver)))?;
    Quiver::parse(&text)
}

fn parse_dim(q: &Quiver, text: &str) -> quivmon_core::Result<DimVector> {
    let coords: Vec<u32> = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<u32>()
                .map_err(|_| Error::MalformedSpec(format!("bad dimension vector {text:?}")))
        })
        .collect::<quivmon_core::Result<_>>()?;
    q.dim_from_display(&coords)
}

fn parse_product(q: &Quiver, text: &str) -> quivmon_core::Result<ProductForm> {
    let factors = text
        .split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|s| parse_dim(q, s))
        .collect::<quivmon_core::Result<_>>()?;
    Ok(ProductForm::new(factors))
}

fn load_rep(q: &Quiver, text: &str) -> quivmon_core::Result<FqRep> {
    let raw = if text.trim_start().starts_with('{') {
        text.to_string()
    } else {
        fs::read_to_string(text).map_err(|e| Error::MalformedSpec(format!("{text}: {e}")))?
    };
    let value: Value = serde_json::from_str(&raw)
        .map_err(|e| Error::MalformedSpec(format!("representation: {e}")))?;
    FqRep::from_json(q, &value)
}

fn word_str(q: &Quiver, w: &Word) -> String {
    w.display(q).to_string()
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Equal => "equal",
        Verdict::Unknown => "unknown",
    }
}

fn json_out(v: Value) -> String {
    format!("{v}\n")
}

fn run(cli: Cli) -> quivmon_core::Result<String> {
    match cli.command {
        Command::Euler { q, d, e, symmetric } => {
            let q = load_quiver(&q)?;
            let (d, e) = (parse_dim(&q, &d)?, parse_dim(&q, &e)?);
            Ok(json_out(if symmetric {
                json!({ "symmetric": q.symmetrized_form(&d, &e)? })
            } else {
                json!({ "euler": q.euler_form(&d, &e)? })
            }))
        }
        Command::Dims { q, d } => {
            let q = load_quiver(&q)?;
            let d = parse_dim(&q, &d)?;
            let (dim_r, dim_g) = q.ambient_dims(&d)?;
            Ok(json_out(json!({
                "dim_r": dim_r,
                "dim_g": dim_g,
                "euler": q.euler_form(&d, &d)?,
            })))
        }
        Command::Order { q } => {
            let q = load_quiver(&q)?;
            let names: Vec<&str> = q
                .admissible_order()
                .sequence()
                .iter()
                .map(|&v| q.name(v))
                .collect();
            Ok(json_out(json!({ "order": names })))
        }
        Command::Ext { q, e, d, dual, cap } => {
            let q = load_quiver(&q)?;
            let (e, d) = (parse_dim(&q, &e)?, parse_dim(&q, &d)?);
            let calc = Schofield::with_cap(&q, cap.ext_cap);
            let route = if dual {
                ExtRoute::Quotient
            } else {
                ExtRoute::Sub
            };
            let vanishes = calc.ext_vanishes_via(route, &e, &d)?;
            let ext = calc.ext_value(&e, &d)?;
            Ok(json_out(json!({ "ext": ext, "vanishes": vanishes })))
        }
        Command::Hom { q, e, d, cap } => {
            let q = load_quiver(&q)?;
            let (e, d) = (parse_dim(&q, &e)?, parse_dim(&q, &d)?);
            let calc = Schofield::with_cap(&q, cap.ext_cap);
            Ok(json_out(json!({ "hom": calc.generic_hom(&e, &d)? })))
        }
        Command::Schur { q, d, cap } => {
            let q = load_quiver(&q)?;
            let d = parse_dim(&q, &d)?;
            let calc = Schofield::with_cap(&q, cap.ext_cap);
            Ok(json_out(json!({ "schur": calc.is_schur_root(&d)? })))
        }
        Command::Candec {
            q,
            d,
            reversed,
            cap,
        } => {
            let q = load_quiver(&q)?;
            let d = parse_dim(&q, &d)?;
            let calc = Schofield::with_cap(&q, cap.ext_cap);
            let dec = calc.canonical_decomposition_ordered(&d, reversed)?;
            let parts: Vec<Vec<u32>> = dec.parts.iter().map(|p| q.dim_to_display(p)).collect();
            Ok(json_out(json!({ "decomposition": parts })))
        }
        Command::Isotropic { q, d, cap } => {
            let q = load_quiver(&q)?;
            let d = parse_dim(&q, &d)?;
            let calc = Schofield::with_cap(&q, cap.ext_cap);
            Ok(json_out(
                json!({ "isotropic": calc.is_isotropic_root(&d)? }),
            ))
        }
        Command::Obsrel { q, bound, cap } => {
            let q = load_quiver(&q)?;
            let calc = Schofield::with_cap(&q, cap.ext_cap);
            let rels: Vec<Value> = calc
                .enumerate_obs_relations(bound)?
                .iter()
                .map(|(d, e)| json!({ "d": q.dim_to_display(d), "e": q.dim_to_display(e) }))
                .collect();
            Ok(json_out(json!({ "relations": rels })))
        }
        Command::Drel3 { n, k, x } => {
            Ok(json_out(json!({ "threshold": drel3_threshold(n, k, x)? })))
        }
        Command::Degree { q, w } => {
            let q = load_quiver(&q)?;
            let w = Word::parse(&q, &w)?;
            Ok(json_out(
                json!({ "degree": q.dim_to_display(&w.degree(&q)) }),
            ))
        }
        Command::Vfun { q, w } => {
            let q = load_quiver(&q)?;
            let w = Word::parse(&q, &w)?;
            Ok(json_out(json!({ "v": w.v_function() })))
        }
        Command::Pattern { q, w } => {
            let q = load_quiver(&q)?;
            let w = Word::parse(&q, &w)?;
            let arrows: Vec<Value> = zero_pattern(&q, &w)
                .arrows
                .iter()
                .map(|a| {
                    json!({
                        "tail": q.name(a.tail),
                        "head": q.name(a.head),
                        "rows": a.render(),
                        "forced_zeros": a.forced_zero_count(),
                    })
                })
                .collect();
            Ok(json_out(
                json!({ "word": word_str(&q, &w), "arrows": arrows }),
            ))
        }
        Command::Wleq {
            q,
            a,
            b,
            inclusion,
            cap,
        } => {
            let q = load_quiver(&q)?;
            let (a, b) = (Word::parse(&q, &a)?, Word::parse(&q, &b)?);
            Ok(json_out(if inclusion {
                json!({ "inclusion": inclusion_implied(&q, &a, &b, cap.word_cap)? })
            } else {
                json!({ "leq": word_leq(&q, &a, &b, cap.word_cap)? })
            }))
        }
        Command::Hasse {
            q,
            d,
            dot,
            cap,
            hasse_cap,
        } => {
            let q = load_quiver(&q)?;
            let d = parse_dim(&q, &d)?;
            if quivmon_core::word::word_count(&d) > cap.word_cap {
                return Err(Error::CapExceeded {
                    what: "words of degree d",
                    cap: cap.word_cap,
                });
            }
            let h = hasse_diagram(&q, &d, hasse_cap)?;
            let nodes: Vec<String> = h.nodes.iter().map(|w| word_str(&q, w)).collect();
            if dot {
                return Ok(render_dot(&Graph {
                    nodes,
                    edges: h.edges,
                }));
            }
            Ok(json_out(json!({ "nodes": nodes, "edges": h.edges })))
        }
        Command::Codimbound { q, w } => {
            let q = load_quiver(&q)?;
            let w = Word::parse(&q, &w)?;
            Ok(json_out(
                json!({ "codim_lower_bound": codim_lower_bound(&q, &w)? }),
            ))
        }
        Command::Nf {
            q,
            w,
            p,
            cap,
            step_cap,
            class_cap,
        } => {
            let q = load_quiver(&q)?;
            let input = match (w, p) {
                (Some(w), _) => word_to_product(&q, &Word::parse(&q, &w)?),
                (None, Some(p)) => parse_product(&q, &p)?,
                (None, None) => unreachable!("clap requires one of -w, -p"),
            };
            let calc = Schofield::with_cap(&q, cap.ext_cap);
            let nf = NormalForms::with_caps(&calc, step_cap, class_cap);
            let pnf = nf.partial_normal_form(&input)?;
            let full = nf.normal_form(&input)?;
            Ok(json_out(json!({
                "input": input.to_display(&q),
                "partial_normal_form": pnf.to_display(&q),
                "normal_form": full.to_display(&q),
            })))
        }
        Command::Eq {
            q,
            a,
            b,
            cap,
            step_cap,
            class_cap,
        } => {
            let q = load_quiver(&q)?;
            let (a, b) = (Word::parse(&q, &a)?, Word::parse(&q, &b)?);
            let calc = Schofield::with_cap(&q, cap.ext_cap);
            let nf = NormalForms::with_caps(&calc, step_cap, class_cap);
            let v = nf.decide_equal(&word_to_product(&q, &a), &word_to_product(&q, &b))?;
            Ok(json_out(json!({ "verdict": verdict_name(v) })))
        }
        Command::Oracle(args) => run_oracle(args),
        Command::Qserre { q, i, j, json } => {
            let q = load_quiver(&q)?;
            let (i, j) = (q.vertex(&i)?, q.vertex(&j)?);
            let (first, second) = serre_relations(&q, i, j)?;
            if json {
                return Ok(json_out(json!({
                    "relations": [first.to_json(&q), second.to_json(&q)]
                })));
            }
            Ok(format!("{}\n{}\n", first.render(&q), second.render(&q)))
        }
        Command::Qbinom { m, n } => {
            let poly = q_binomial(m, n)?;
            Ok(json_out(
                json!({ "poly": poly.to_string(), "coeffs": poly.to_json() }),
            ))
        }
        Command::Idealdim { q, d, cap } => {
            let q = load_quiver(&q)?;
            let d = parse_dim(&q, &d)?;
            let words = quivmon_core::word::word_count(&d);
            let (dim, basis) = graded_ideal_dim(&q, &u0_relations(&q), &d, cap.word_cap)?;
            let basis: Vec<String> = basis.iter().map(|b| b.render(&q)).collect();
            Ok(json_out(
                json!({ "dim": dim, "words": words, "basis": basis }),
            ))
        }
        Command::U0eq { q, a, b, cap } => {
            let q = load_quiver(&q)?;
            let (a, b) = (Word::parse(&q, &a)?, Word::parse(&q, &b)?);
            Ok(json_out(
                json!({ "equal": u0_monomials_equal(&q, &a, &b, cap.word_cap)? }),
            ))
        }
    }
}

fn relation_name(r: Relation) -> &'static str {
    match r {
        Relation::Equal => "equal",
        Relation::StrictSubset(Direction::FirstInSecond) => "first_in_second",
        Relation::StrictSubset(Direction::SecondInFirst) => "second_in_first",
        Relation::Incomparable => "incomparable",
    }
}

fn run_oracle(args: OracleArgs) -> quivmon_core::Result<String> {
    let q = load_quiver(&args.q)?;
    let o = Oracle::new(&q, args.field)?
        .with_flag_degree(args.flag_degree)?
        .with_enum_cap(args.enum_cap)
        .with_group_cap(args.group_cap)
        .with_word_cap(args.word_cap)
        .with_dynkin(args.dynkin);
    match args.command {
        OracleCommand::Enum { d } => {
            let d = parse_dim(&q, &d)?;
            let reps: Vec<Value> = o
                .enumerate_reps(&d)?
                .iter()
                .map(|x| x.to_json(&q))
                .collect();
            Ok(json_out(json!({ "count": reps.len(), "reps": reps })))
        }
        OracleCommand::Member { w, rep } => {
            let w = Word::parse(&q, &w)?;
            let x = load_rep(&q, &rep)?;
            Ok(json_out(json!({ "member": o.has_comp_series(&x, &w)? })))
        }
        OracleCommand::Set { w } => {
            let w = Word::parse(&q, &w)?;
            Ok(json_out(o.variety_points(&w)?.digest(&q)))
        }
        OracleCommand::Cmp { a, b } => {
            let (a, b) = (Word::parse(&q, &a)?, Word::parse(&q, &b)?);
            if a.degree(&q) != b.degree(&q) {
                return Err(Error::DegreeMismatch(format!(
                    "{} and {} have different degrees",
                    word_str(&q, &a),
                    word_str(&q, &b)
                )));
            }
            let c = compare_families(&o.variety_points(&a)?, &o.variety_points(&b)?)?;
            Ok(json_out(json!({
                "relation": relation_name(c.relation),
                "first": c.first,
                "second": c.second,
                "common": c.common,
            })))
        }
        OracleCommand::Hom { x, y } => {
            let (x, y) = (load_rep(&q, &x)?, load_rep(&q, &y)?);
            Ok(json_out(
                json!({ "hom": o.hom_dim(&x, &y)?, "ext": o.ext_dim(&x, &y)? }),
            ))
        }
        OracleCommand::Dim { w } => {
            let w = Word::parse(&q, &w)?;
            let (lower, exact) = o.variety_dim(&w)?;
            let (codim_upper, codim_exact) = o.codim(&w)?;
            Ok(json_out(json!({
                "dim_lower": lower,
                "dim": exact,
                "codim_upper": codim_upper,
                "codim": codim_exact,
            })))
        }
        OracleCommand::Sd { d } => {
            let d = parse_dim(&q, &d)?;
            Ok(json_out(o.s_d_points(&d)?.digest(&q)))
        }
        OracleCommand::DynkinEq { a, b } => {
            let (a, b) = (Word::parse(&q, &a)?, Word::parse(&q, &b)?);
            Ok(json_out(json!({ "equal": o.dynkin_equal(&a, &b)? })))
        }
        OracleCommand::Genext { e, d } => {
            let (e, d) = (parse_dim(&q, &e)?, parse_dim(&q, &d)?);
            Ok(json_out(json!({ "ext": o.generic_ext_oracle(&e, &d)? })))
        }
    }
}

/// Parses `argv` (program name first) and runs the command.
pub fn execute<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome {
                        code: EXIT_OK,
                        stdout: text,
                        stderr: String::new(),
                    }
                }
                _ => Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    match run(cli) {
        Ok(stdout) => Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: if e.is_cap() { EXIT_CAP } else { EXIT_DOMAIN },
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}
