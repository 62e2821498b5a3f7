//! Command-line front end. [`run`] does all the work against caller-supplied
//! streams so that it can be driven in-process by tests.

pub mod args;

use std::fmt::Write as _;
use std::fs;
use std::io::{Read, Write};

use hyperfactor::{
    balanced_partite_hypergraph, build_u, check_conjecture_d3, check_corollary_degrees,
    check_dow_gibson, check_lemma4, check_proof_identities, check_schrijver, check_theorem4,
    check_theorem5_partite, check_trivial, count_factorizations, count_latin_fixed_column,
    count_latin_squares, count_one_factors, count_proper_orientations, dow_gibson_bound,
    enumerate_one_factors, factorization_bound_main_terms, generate, permanent,
    permanent::asym_main_term, permanent_2d_int, trivial_upper_bound, BipartiteGraph, BoolTensor,
    CheckReport, Error, Hypergraph, IntMatrix2D, MainTermsReport, SearchConfig, Verdict,
};
use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{Map, Value};

pub use args::{Check, Cli, Command, Format, GenCommand, GlobalOpts, Input};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug)]
enum Failure {
    Input(String),
    Budget(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_budget() {
            Failure::Budget(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

/// Flat key/value result of a counting command.
struct Record {
    command: String,
    fields: Vec<(String, Value)>,
}

impl Record {
    fn new(command: &str) -> Self {
        Record {
            command: command.to_string(),
            fields: Vec::new(),
        }
    }

    fn count(self, key: &str, v: &BigUint) -> Self {
        self.field(key, v.to_string())
    }

    fn field(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.fields.push((key.to_string(), v.into()));
        self
    }

    fn json(&self) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), self.command.clone().into());
        for (k, v) in &self.fields {
            m.insert(k.clone(), v.clone());
        }
        Value::Object(m)
    }

    fn text(&self) -> String {
        let mut s = String::new();
        for (k, v) in &self.fields {
            match v {
                Value::String(x) => writeln!(s, "{k}: {x}"),
                other => writeln!(s, "{k}: {other}"),
            }
            .unwrap();
        }
        s
    }
}

enum Output {
    /// Instance text written verbatim, for piping into other commands.
    Raw(String),
    Record(Record),
    Checks {
        json: Value,
        text: String,
        reports: Vec<CheckReport>,
    },
}

/// Runs one command. Returns the process exit status: 0 on success, 1 when a
/// check is violated, 2 on input errors, 3 when the node budget runs out.
pub fn run(cli: &Cli, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let mut cfg = SearchConfig::default().with_budget(cli.global.budget);
    if let Some(t) = cli.global.threads {
        cfg = cfg.with_threads(t as usize);
    }
    let result = dispatch(&cli.command, &cfg, stdin);
    let output = match result {
        Ok(o) => o,
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_INPUT;
        }
        Err(Failure::Budget(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_BUDGET;
        }
    };
    let json = cli.global.format == Format::Json;
    let (body, violations) = match output {
        Output::Raw(s) => (s, Vec::new()),
        Output::Record(r) => (
            if json { json_line(&r.json()) } else { r.text() },
            Vec::new(),
        ),
        Output::Checks {
            json: j,
            text,
            reports,
        } => {
            let v: Vec<CheckReport> = reports.into_iter().filter(|r| r.is_violation()).collect();
            (if json { json_line(&j) } else { text }, v)
        }
    };
    if out
        .write_all(body.as_bytes())
        .and_then(|_| out.flush())
        .is_err()
    {
        return EXIT_INPUT;
    }
    if violations.is_empty() {
        return EXIT_OK;
    }
    for r in &violations {
        let _ = writeln!(
            err,
            "VIOLATION: {} fails on {}: lhs {} > rhs {} (root {})",
            r.theorem, r.instance, r.lhs, r.rhs, r.root
        );
    }
    EXIT_VIOLATED
}

fn json_line(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

fn read_input(input: &Input, stdin: &mut dyn Read) -> Result<String, Failure> {
    match input.file.as_deref() {
        Some(p) if p.as_os_str() != "-" => fs::read_to_string(p)
            .map_err(|e| Failure::Input(format!("cannot read {}: {e}", p.display()))),
        _ => {
            let mut s = String::new();
            stdin
                .read_to_string(&mut s)
                .map_err(|e| Failure::Input(format!("cannot read standard input: {e}")))?;
            Ok(s)
        }
    }
}

fn parse<T: std::str::FromStr<Err = Error>>(
    input: &Input,
    stdin: &mut dyn Read,
) -> Result<T, Failure> {
    Ok(read_input(input, stdin)?.parse::<T>()?)
}

fn dispatch(cmd: &Command, cfg: &SearchConfig, stdin: &mut dyn Read) -> Result<Output, Failure> {
    let out = match cmd {
        Command::Permanent {
            input,
            axis,
            hypergraph,
            matrix,
        } => {
            if *matrix {
                let m: IntMatrix2D = parse(input, stdin)?;
                let per = permanent_2d_int(&m, cfg)?;
                Output::Record(
                    Record::new("permanent")
                        .field("order", m.order())
                        .count("per", &per),
                )
            } else {
                let t = if *hypergraph {
                    parse::<Hypergraph>(input, stdin)?.adjacency_tensor()?
                } else {
                    parse::<BoolTensor>(input, stdin)?
                };
                Output::Record(permanent_record(&t, *axis, cfg)?)
            }
        }
        Command::Factors { input, list } => {
            let g: Hypergraph = parse(input, stdin)?;
            let mut r = Record::new("factors").count("phi", &count_one_factors(&g, cfg)?);
            if *list {
                let factors = enumerate_one_factors(&g, cfg)?;
                let shown: Vec<String> = factors
                    .iter()
                    .map(|f| {
                        f.iter()
                            .map(|e| format!("{e:?}"))
                            .collect::<Vec<_>>()
                            .join(" ")
                    })
                    .collect();
                r = r.field("factors", shown);
            }
            Output::Record(r)
        }
        Command::Factorizations { input, unordered } => {
            let g: Hypergraph = parse(input, stdin)?;
            let c = count_factorizations(&g, cfg)?;
            let (convention, count) = if *unordered {
                ("unordered", &c.unordered)
            } else {
                ("ordered", &c.ordered)
            };
            Output::Record(
                Record::new("factorizations")
                    .field("convention", convention)
                    .count("count", count)
                    .field("factors_per_factorization", c.factors),
            )
        }
        Command::Orientations { input } => {
            let g: Hypergraph = parse(input, stdin)?;
            Output::Record(
                Record::new("orientations").count("proper", &count_proper_orientations(&g, cfg)?),
            )
        }
        Command::Latin { n } => Output::Record(
            Record::new("latin")
                .field("n", *n)
                .count("all", &count_latin_squares(*n, cfg)?)
                .count("fixed_column", &count_latin_fixed_column(*n, cfg)?),
        ),
        Command::UTensor {
            d,
            permanent: with_per,
        } => {
            let u = build_u(*d)?;
            if *with_per {
                Output::Record(
                    Record::new("u-tensor")
                        .field("d", *d)
                        .count("per", &permanent(&u, cfg)?)
                        .count("fixed_column_latin", &count_latin_fixed_column(*d, cfg)?),
                )
            } else {
                Output::Raw(u.to_text())
            }
        }
        Command::Gen(g) => Output::Raw(generate_text(g)?),
        Command::Verify { check, input, axis } => verify(*check, input, *axis, cfg, stdin)?,
        Command::Bounds { n, d } => {
            let r = factorization_bound_main_terms(*n, *d)?;
            Output::Checks {
                json: serde_json::to_value(&r).expect("report serializes"),
                text: main_terms_text(&r),
                reports: Vec::new(),
            }
        }
    };
    Ok(out)
}

fn permanent_record(t: &BoolTensor, axis: usize, cfg: &SearchConfig) -> Result<Record, Failure> {
    let trivial = trivial_upper_bound(t, axis)?;
    let per = permanent(t, cfg)?;
    let mut r = Record::new("permanent")
        .field("dim", t.dim())
        .field("order", t.order())
        .field("axis", axis)
        .count("per", &per)
        .count("trivial_bound", &trivial);
    if t.dim() == 3 {
        r = r.field(
            "dow_gibson_bound",
            dow_gibson_bound(t, axis)?.approx().to_string(),
        );
    }
    if t.dim() >= 2 {
        r = r
            .field("main_term", asym_main_term(t, axis)?.to_string())
            .field("main_term_note", "main term only, not a certified bound");
    }
    Ok(r)
}

fn generate_text(g: &GenCommand) -> Result<String, Failure> {
    let text = match *g {
        GenCommand::Complete { n, d } => Hypergraph::complete(n, d)?.to_text(),
        GenCommand::Partite {
            k,
            d,
            density,
            seed,
        } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let pg = generate::random_partite(k, d, density, &mut rng)?;
            format!(
                "# {d}-partite, parts of size {k}: part of v is v / {k}\n{}",
                pg.graph().to_text()
            )
        }
        GenCommand::Random {
            n,
            d,
            density,
            planted,
            seed,
        } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            generate::random_hypergraph(n, d, density, planted, &mut rng)?.to_text()
        }
        GenCommand::Bipartite { n, d, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            generate::random_regular_bipartite(n, d, &mut rng)?.to_text()
        }
        GenCommand::Tensor {
            d,
            n,
            density,
            seed,
        } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            generate::random_tensor(d, n, density, &mut rng)?.to_text()
        }
        GenCommand::Matrix { n, k, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            generate::random_regular_matrix(n, k, &mut rng)?.to_string()
        }
    };
    Ok(text)
}

fn verify(
    check: Check,
    input: &Input,
    axis: usize,
    cfg: &SearchConfig,
    stdin: &mut dyn Read,
) -> Result<Output, Failure> {
    let report = match check {
        Check::Theorem4 => check_theorem4(&parse(input, stdin)?, cfg)?,
        Check::Corollary3 => check_corollary_degrees(&parse(input, stdin)?, cfg)?,
        Check::ConjectureD3 => check_conjecture_d3(&parse(input, stdin)?, cfg)?,
        Check::Theorem5 => {
            let g: Hypergraph = parse(input, stdin)?;
            let (n, d) = (g.vertex_count(), g.uniformity());
            if d == 0 || n % d != 0 {
                return Err(Failure::Input(format!(
                    "a balanced {d}-partite hypergraph needs d | n, got n = {n}"
                )));
            }
            let pg = balanced_partite_hypergraph(n / d, d, g.edges().to_vec())?;
            check_theorem5_partite(&pg, cfg)?
        }
        Check::Lemma4 => check_lemma4(&parse::<BipartiteGraph>(input, stdin)?, cfg)?,
        Check::Schrijver => check_schrijver(&parse::<IntMatrix2D>(input, stdin)?, cfg)?,
        Check::DowGibson => check_dow_gibson(&parse(input, stdin)?, axis, cfg)?,
        Check::Trivial => check_trivial(&parse(input, stdin)?, axis, cfg)?,
        Check::Identities => {
            let f: Hypergraph = parse(input, stdin)?;
            let ids = check_proof_identities(&f, cfg)?;
            let rec = Record::new("identities")
                .count("delta", &ids.delta)
                .count("phi", &ids.phi)
                .count("r", &ids.r)
                .count("p", &ids.p)
                .count("t", &ids.t);
            let mut json = rec.json();
            json["reports"] = serde_json::to_value(&ids.reports).expect("reports serialize");
            let mut text = rec.text();
            for r in &ids.reports {
                text.push_str(&report_text(r));
            }
            return Ok(Output::Checks {
                json,
                text,
                reports: ids.reports,
            });
        }
    };
    Ok(Output::Checks {
        json: serde_json::to_value(&report).expect("report serializes"),
        text: report_text(&report),
        reports: vec![report],
    })
}

fn verdict_word(v: Verdict) -> &'static str {
    match v {
        Verdict::Holds => "holds",
        Verdict::Tight => "tight",
        Verdict::Violated => "VIOLATED",
    }
}

fn report_text(r: &CheckReport) -> String {
    let mut s = String::new();
    writeln!(
        s,
        "{} [{}]: {}",
        r.theorem,
        r.instance,
        verdict_word(r.verdict)
    )
    .unwrap();
    writeln!(s, "  lhs: {}", r.lhs).unwrap();
    writeln!(s, "  rhs: {}", r.rhs).unwrap();
    writeln!(s, "  root: {}", r.root).unwrap();
    for (k, v) in &r.decimals {
        writeln!(s, "  {k}: {v}").unwrap();
    }
    s
}

fn main_terms_text(r: &MainTermsReport) -> String {
    let mut s = String::new();
    writeln!(
        s,
        "main terms for n={} d={} (not certified bounds)",
        r.n, r.d
    )
    .unwrap();
    writeln!(
        s,
        "factors per factorization: {}",
        r.factors_per_factorization
    )
    .unwrap();
    writeln!(s, "exponent n^d/d!: {}", r.exponent).unwrap();
    if !r.hyperplane_ones.is_empty() {
        writeln!(s, "hyperplane ones: {}", r.hyperplane_ones.join(" ")).unwrap();
    }
    for t in &r.terms {
        writeln!(s, "{}: {}", t.name, t.value).unwrap();
    }
    if let (Some(o), Some(u)) = (&r.exact_ordered, &r.exact_unordered) {
        writeln!(s, "exact ordered: {o}").unwrap();
        writeln!(s, "exact unordered: {u}").unwrap();
    }
    s
}
