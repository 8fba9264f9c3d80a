use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::bail;
use clap::{Parser, Subcommand, ValueEnum};
use raagpath::experiments::{self, ExperimentReport};
use raagpath::io::{self, LoadedMap};
use raagpath::{parse_range, report};
use raagpath_core::certify::{
    certify_injective, certify_noninjective, synthesize_sipl_tree, Certificate, Verdict,
};
use raagpath_core::hom::{self, OrderedMap};
use raagpath_core::path::{self, PathKind};
use raagpath_core::word::{self, ReducedWords};
use raagpath_core::{Graph, GraphMap, TotalOrder, Word};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(author, version, about, long_about = None)]
struct Cli {
    /// Print a text table instead of JSON
    #[arg(long, global = true)]
    table: bool,
    /// Seed for commands that sample
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphOut {
    Summary,
    Json,
    Adj,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    All,
    Induced,
    Semi,
}

#[derive(Clone, Copy, ValueEnum)]
enum Lifting {
    Pl,
    Ipl,
    Sipl,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Auto,
    Injective,
    Noninjective,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Expect {
    Injective,
    Noninjective,
    Unknown,
}

#[derive(Clone, Copy, ValueEnum)]
enum Bench {
    All,
    Cycles,
    Bounds,
}

/// Graphs are given as a file (`.json`, otherwise adjacency text) or a family
/// name: C5, P8, K4, K2,3, G9. Maps are given as a JSON file, `phi:N,M` or
/// `folded-square`.
#[derive(Subcommand)]
enum Command {
    /// Inspect or convert a graph
    Graph {
        graph: String,
        #[arg(long, value_enum, default_value = "summary")]
        to: GraphOut,
        /// Use the complement graph
        #[arg(long)]
        complement: bool,
        /// Write to a file instead of stdout (format from the extension)
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Inspect a map and optionally check a lifting property
    Map {
        map: String,
        #[arg(long, value_enum)]
        lifting: Option<Lifting>,
        /// Base set in the domain (default: every vertex)
        #[arg(long, value_delimiter = ',')]
        base: Vec<String>,
        /// Codomain order for SIPL (default: vertex order)
        #[arg(long, value_delimiter = ',')]
        order: Vec<String>,
        /// Print the map as JSON in the input format
        #[arg(long)]
        export: bool,
    },
    /// Enumerate paths from a vertex
    Paths {
        graph: String,
        #[arg(long)]
        from: String,
        #[arg(long, value_enum, default_value = "all")]
        kind: Kind,
        /// Vertex order for semi-induced paths (default: vertex order)
        #[arg(long, value_delimiter = ',')]
        order: Vec<String>,
        #[arg(long)]
        maximal: bool,
        #[arg(long)]
        count_only: bool,
    },
    /// Reduce a word in the right-angled Artin group on the complement
    Word {
        graph: String,
        /// Letters separated by spaces, e.g. "a b^-1 a^-1"
        word: String,
        /// Compare with another word as group elements
        #[arg(long)]
        equal: Option<String>,
    },
    /// Apply the induced homomorphism to a word over the codomain
    Hom { map: String, word: String },
    /// Search for reduced words refuting that a vertex survives
    Survive {
        map: String,
        /// Domain vertex (default: every vertex)
        #[arg(long)]
        vertex: Option<String>,
        #[arg(long, default_value_t = 6)]
        bound: usize,
    },
    /// Search for a nontrivial kernel element up to a length bound
    Kernel {
        map: String,
        #[arg(long, default_value_t = 6)]
        bound: usize,
        /// Also sample this many reduced words for length distortion
        #[arg(long)]
        distortion: Option<usize>,
    },
    /// Certify injectivity or non-injectivity of the induced homomorphism
    Certify {
        map: String,
        #[arg(long, value_enum, default_value = "auto")]
        mode: Mode,
        /// JSON list of walks `{"base": .., "steps": [..]}` in the codomain
        #[arg(long)]
        base_set: Option<PathBuf>,
        /// When the verdict is unknown, run a bounded kernel search
        #[arg(long)]
        bound: Option<usize>,
        /// Exit with status 1 if the verdict differs
        #[arg(long, value_enum)]
        expect: Option<Expect>,
    },
    /// Build a tree with SIPL whose base set covers the graph
    Synth {
        graph: String,
        #[arg(long, value_delimiter = ',')]
        order: Vec<String>,
        #[arg(long)]
        dot: bool,
    },
    /// Decide injectivity for cycles into paths over a grid
    Cycles {
        /// `M`, `A..B` or `A..=B`
        #[arg(long, default_value = "3..=8")]
        m: String,
        /// `N`, `A..B` or `A..=B` (default: 1..=2m for each m)
        #[arg(long)]
        n: Option<String>,
    },
    /// Count lifted induced-path endpoints in the lower-bound family
    Lowerbound {
        #[arg(long, default_value = "3..=12")]
        m: String,
    },
    /// Run experiments with timings
    Bench {
        #[arg(value_enum, default_value = "all")]
        experiment: Bench,
        #[arg(long, default_value_t = 8)]
        m_max: usize,
    },
}

struct Out {
    value: Value,
    text: Option<String>,
    pass: bool,
}

impl Out {
    fn json(value: Value) -> Self {
        Out {
            value,
            text: None,
            pass: true,
        }
    }

    fn report(r: ExperimentReport) -> Self {
        Out {
            pass: r.pass,
            value: r.to_value(),
            text: None,
        }
    }
}

fn order_for(g: &Graph, names: &[String]) -> anyhow::Result<TotalOrder> {
    if names.is_empty() {
        Ok(TotalOrder::natural(g.order()))
    } else {
        Ok(TotalOrder::from_names(g, names)?)
    }
}

fn ordered(lm: LoadedMap) -> anyhow::Result<OrderedMap> {
    Ok(match lm.domain_order {
        Some(o) => OrderedMap::new(lm.map, o)?,
        None => OrderedMap::with_index_order(lm.map),
    })
}

fn graph_cmd(
    spec: &str,
    to: GraphOut,
    complement: bool,
    output: Option<PathBuf>,
) -> anyhow::Result<Out> {
    let mut g = io::load_graph(spec)?;
    if complement {
        g = g.complement();
    }
    if let Some(p) = output {
        io::save_graph_file(&p, &g)?;
        return Ok(Out::json(json!({ "written": p.display().to_string() })));
    }
    let text = match to {
        GraphOut::Summary => {
            return Ok(Out::json(json!({
                "vertices": g.order(),
                "edges": g.edge_count(),
                "components": g.components().len(),
                "connected": g.is_connected(),
                "forest": g.is_forest(),
                "degrees": g.vertices().map(|v| g.degree(v)).collect::<Vec<_>>(),
            })))
        }
        GraphOut::Json => io::to_json(&g) + "\n",
        GraphOut::Adj => io::to_adjacency(&g),
        GraphOut::Dot => io::to_dot(&g, spec, &[]),
    };
    Ok(Out {
        value: Value::Null,
        text: Some(text),
        pass: true,
    })
}

fn map_cmd(
    spec: &str,
    lifting: Option<Lifting>,
    base: &[String],
    order: &[String],
    export: bool,
) -> anyhow::Result<Out> {
    let lm = io::load_map(spec)?;
    let f = &lm.map;
    if export {
        return Ok(Out {
            value: Value::Null,
            text: Some(io::map_to_json(f, lm.domain_order.as_ref()) + "\n"),
            pass: true,
        });
    }
    let mut v = report::map_summary(f);
    if let Some(kind) = lifting {
        let d = f.domain();
        let base: Vec<_> = if base.is_empty() {
            d.vertices().collect()
        } else {
            base.iter()
                .map(|b| d.vertex_checked(b))
                .collect::<Result<_, _>>()?
        };
        let r = match kind {
            Lifting::Pl => path::has_pl(f, &base)?,
            Lifting::Ipl => path::has_ipl(f, &base)?,
            Lifting::Sipl => path::has_sipl(f, &order_for(f.codomain(), order)?, &base)?,
        };
        v["lifting"] = report::lift_report(f, &r);
    }
    Ok(Out::json(v))
}

fn paths_cmd(
    spec: &str,
    from: &str,
    kind: Kind,
    order: &[String],
    maximal: bool,
    count_only: bool,
) -> anyhow::Result<Out> {
    let g = io::load_graph(spec)?;
    let start = g.vertex_checked(from)?;
    let ord = order_for(&g, order)?;
    let k = match kind {
        Kind::All => PathKind::All,
        Kind::Induced => PathKind::Induced,
        Kind::Semi => PathKind::SemiInduced(&ord),
    };
    let ps = if maximal {
        path::maximal_paths_from(&g, k, start)?
    } else {
        path::paths_from(&g, k, start)?
    };
    let mut v = json!({ "from": from, "count": ps.len() });
    if !count_only {
        v["rows"] = ps
            .iter()
            .map(|p| json!({ "length": p.length(), "path": report::path_names(&g, p) }))
            .collect();
    }
    Ok(Out::json(v))
}

fn word_cmd(spec: &str, text: &str, equal: Option<&str>) -> anyhow::Result<Out> {
    let g = io::load_graph(spec)?;
    let w = Word::parse(&g, text)?;
    let r = word::reduce(&g, &w);
    let mut v = json!({
        "word": w.to_text(&g),
        "is_reduced": word::is_reduced(&g, &w),
        "cancellation": word::find_cancellation(&g, &w).map(|(i, j)| [i, j]),
        "reduced": r.to_text(&g),
        "normal_form": word::normal_form(&g, &w).to_text(&g),
        "length": r.len(),
        "trivial": r.is_empty(),
        "support": report::set_names(&g, &word::support_elem(&g, &w)),
        "letter_support": report::set_names(&g, &w.support()),
    });
    if let Some(e) = equal {
        let w2 = Word::parse(&g, e)?;
        v["equal"] = json!(word::equal_elements(&g, &w, &w2));
    }
    Ok(Out::json(v))
}

fn hom_cmd(spec: &str, text: &str) -> anyhow::Result<Out> {
    let om = ordered(io::load_map(spec)?)?;
    let w = Word::parse(om.gamma(), text)?;
    let img = om.phi_star_word(&w)?;
    let red = om.phi_star_reduced(&w)?;
    let l = om.lambda();
    Ok(Out::json(json!({
        "word": w.to_text(om.gamma()),
        "image": img.to_text(l),
        "image_reduced": red.to_text(l),
        "length": red.len(),
        "support": report::set_names(l, &word::support_elem(l, &red)),
    })))
}

fn survive_cmd(spec: &str, vertex: Option<&str>, bound: usize) -> anyhow::Result<Out> {
    let om = ordered(io::load_map(spec)?)?;
    let l = om.lambda();
    let vs: Vec<_> = match vertex {
        Some(n) => vec![l.vertex_checked(n)?],
        None => l.vertices().collect(),
    };
    let rows: Vec<Value> = vs
        .iter()
        .map(|&v| {
            let w = hom::surviving_violation_search(&om, v, bound)?;
            Ok(json!({
                "vertex": l.name(v),
                "surviving_up_to_bound": w.is_none(),
                "witness": w.as_ref().map(|w| w.word.to_text(om.gamma())),
                "span": w.as_ref().map(|w| [w.span.0, w.span.1]),
            }))
        })
        .collect::<anyhow::Result<_>>()?;
    Ok(Out::json(json!({ "bound": bound, "rows": rows })))
}

fn kernel_cmd(
    spec: &str,
    bound: usize,
    distortion: Option<usize>,
    seed: u64,
) -> anyhow::Result<Out> {
    let om = ordered(io::load_map(spec)?)?;
    let k = hom::kernel_search(&om, bound);
    let mut v = json!({
        "bound": bound,
        "kernel_word": k.as_ref().map(|w| w.to_text(om.gamma())),
    });
    if let Some(n) = distortion {
        let words: Vec<Word> = ReducedWords::new(om.gamma(), bound)
            .min_len(1)
            .take(200_000)
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pick = rand::seq::index::sample(&mut rng, words.len(), n.min(words.len()));
        let sample: Vec<Word> = pick.into_iter().map(|i| words[i].clone()).collect();
        let stats = hom::length_distortion_sample(&om, &sample)?;
        v["distortion"] = match stats {
            Some(s) => json!({ "samples": s.samples, "min": s.min, "max": s.max }),
            None => Value::Null,
        };
    }
    Ok(Out::json(v))
}

fn expect_matches(e: Expect, v: Verdict) -> bool {
    matches!(
        (e, v),
        (Expect::Injective, Verdict::CertifiedInjective)
            | (Expect::Noninjective, Verdict::CertifiedNonInjective)
            | (Expect::Unknown, Verdict::Unknown)
    )
}

fn certify_cmd(
    spec: &str,
    mode: Mode,
    base_set: Option<PathBuf>,
    bound: Option<usize>,
    expect: Option<Expect>,
) -> anyhow::Result<Out> {
    let lm = io::load_map(spec)?;
    let f: &GraphMap = &lm.map;
    let walks = match &base_set {
        Some(p) => Some(io::load_walks(p, f.codomain())?),
        None => None,
    };
    let mut notes = Vec::new();
    let mut cert: Option<Certificate> = None;
    if mode != Mode::Noninjective {
        cert = Some(certify_injective(f)?);
    }
    let tried = cert.as_ref().map(|c| c.verdict);
    if mode == Mode::Noninjective || (mode == Mode::Auto && tried == Some(Verdict::Unknown)) {
        match certify_noninjective(f, walks.as_deref()) {
            Ok(c) => cert = Some(c),
            Err(e) if mode == Mode::Auto => {
                notes.push(format!("non-injectivity not attempted: {e}"))
            }
            Err(e) => return Err(e.into()),
        }
    }
    let cert = cert.expect("some certifier ran");
    let mut v = report::certificate(f, &cert);
    if cert.verdict == Verdict::Unknown {
        if let Some(b) = bound {
            let om = ordered(lm)?;
            v["kernel_search"] = json!({
                "bound": b,
                "word": hom::kernel_search(&om, b).map(|w| w.to_text(om.gamma())),
            });
        }
    }
    if !notes.is_empty() {
        v["notes"] = json!(notes);
    }
    let pass = expect.is_none_or(|e| expect_matches(e, cert.verdict));
    Ok(Out {
        value: v,
        text: None,
        pass,
    })
}

fn synth_cmd(spec: &str, order: &[String], dot: bool) -> anyhow::Result<Out> {
    let g = io::load_graph(spec)?;
    let t = synthesize_sipl_tree(&g, &order_for(&g, order)?)?;
    let verified = t.verify()?;
    if dot {
        let hl: Vec<_> = t.base_set.iter().map(|&v| t.forest_in_tree[v]).collect();
        return Ok(Out {
            value: Value::Null,
            text: Some(io::to_dot(&t.tree, "T", &hl)),
            pass: verified,
        });
    }
    let d = t.map.domain();
    Ok(Out {
        value: json!({
            "tree_vertices": t.tree.order(),
            "bound": t.size_bound().to_string(),
            "verified": verified,
            "bridges": report::names(&t.tree, t.bridges.iter().copied()),
            "base_set": report::names(d, t.base_set.iter().copied()),
            "images": t.base_set.iter().map(|&v| g.name(t.map.image(v)).to_string()).collect::<Vec<_>>(),
        }),
        text: None,
        pass: verified,
    })
}

fn cycle_cells(m: &str, n: Option<&str>) -> anyhow::Result<Vec<(usize, usize)>> {
    let ms = parse_range(m)?;
    let ns = n.map(parse_range).transpose()?;
    let mut cells = Vec::new();
    for &m in &ms {
        if m < 3 {
            bail!("m must be at least 3");
        }
        match &ns {
            Some(ns) => cells.extend(ns.iter().map(|&n| (m, n))),
            None => cells.extend((1..=2 * m).map(|n| (m, n))),
        }
    }
    Ok(cells)
}

fn run(cli: Cli) -> anyhow::Result<Out> {
    match cli.command {
        Command::Graph {
            graph,
            to,
            complement,
            output,
        } => graph_cmd(&graph, to, complement, output),
        Command::Map {
            map,
            lifting,
            base,
            order,
            export,
        } => map_cmd(&map, lifting, &base, &order, export),
        Command::Paths {
            graph,
            from,
            kind,
            order,
            maximal,
            count_only,
        } => paths_cmd(&graph, &from, kind, &order, maximal, count_only),
        Command::Word { graph, word, equal } => word_cmd(&graph, &word, equal.as_deref()),
        Command::Hom { map, word } => hom_cmd(&map, &word),
        Command::Survive { map, vertex, bound } => survive_cmd(&map, vertex.as_deref(), bound),
        Command::Kernel {
            map,
            bound,
            distortion,
        } => kernel_cmd(&map, bound, distortion, cli.seed),
        Command::Certify {
            map,
            mode,
            base_set,
            bound,
            expect,
        } => certify_cmd(&map, mode, base_set, bound, expect),
        Command::Synth { graph, order, dot } => synth_cmd(&graph, &order, dot),
        Command::Cycles { m, n } => Ok(Out::report(experiments::run_cycle_grid(&cycle_cells(
            &m,
            n.as_deref(),
        )?))),
        Command::Lowerbound { m } => {
            let ms = parse_range(&m)?;
            if ms.iter().any(|&m| m < 3) {
                bail!("m must be at least 3");
            }
            Ok(Out::report(experiments::run_lowerbound(&ms)))
        }
        Command::Bench { experiment, m_max } => {
            let mut reports = Vec::new();
            if matches!(experiment, Bench::All | Bench::Cycles) {
                let cells = experiments::default_cycle_cells(m_max);
                reports.push(experiments::timed(|| experiments::run_cycle_grid(&cells)));
            }
            if matches!(experiment, Bench::All | Bench::Bounds) {
                let graphs = experiments::default_bound_graphs();
                let ms: Vec<usize> = (3..=2 * m_max).collect();
                reports.push(experiments::timed(|| experiments::run_bounds(&graphs, &ms)));
            }
            let pass = reports.iter().all(|r| r.pass);
            let summary: Vec<Value> = reports
                .iter()
                .map(|r| {
                    json!({
                        "experiment": r.experiment,
                        "rows": r.rows.len(),
                        "runtime_ms": r.runtime_ms,
                        "pass": r.pass,
                    })
                })
                .collect();
            Ok(Out {
                value: json!({ "threads": experiments::threads(), "rows": summary, "reports": reports }),
                text: None,
                pass,
            })
        }
    }
}

// A closed pipe (`| head`) is not an error worth a panic.
fn emit(s: &str) {
    let _ = std::io::stdout().lock().write_all(s.as_bytes());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let table = cli.table;
    match run(cli) {
        Ok(out) => {
            match out.text {
                Some(t) => emit(&t),
                None if table => {
                    let mut v = out.value;
                    if let Some(o) = v.as_object_mut() {
                        o.remove("reports");
                    }
                    emit(&report::table(&v));
                }
                None => emit(&(serde_json::to_string_pretty(&out.value).expect("json") + "\n")),
            }
            if out.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
