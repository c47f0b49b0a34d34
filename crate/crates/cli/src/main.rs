use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use latkit::enumerate::{conjecture1_scan, lattices_up_to, verify_corpus, LatticeStream, DEFAULT_ENUM_CAP};
use latkit::gj::{check_theorem, verify_prop_width2, verify_prop_width3, verify_theorem};
use latkit::jonsson::d_sequence;
use latkit::ladder::{decorate, split_lattice, split_report, window, DecorationSpec};
use latkit::lattice::{to_dot, LatticeFile, DEFAULT_MAX_N};
use latkit::properties::{
    forbidden_report, is_distributive, is_modular, is_semidistributive, whitman_w, Pattern, PropertyReport, Side,
};
use latkit::subalgebra::{gadget, gadget_census};
use latkit::term::{canonical, free_leq, parse};
use latkit::{Error, FiniteLattice};

#[derive(Parser)]
#[command(name = "latkit", version, about = "Finite lattice toolkit")]
struct Cli {
    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for the parallel verbs (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Test lattice laws.
    Check {
        file: PathBuf,
        #[arg(long, value_enum, value_delimiter = ',', required = true)]
        property: Vec<Property>,
    },
    /// Jónsson's D-sequence and its dual.
    Dseq { file: PathBuf },
    /// Linear-sum blocks and the distributive/DR-free classification.
    Classify { file: PathBuf },
    /// The sublattice generated by `a`, `b`, `c` (with `b < c`, `a` incomparable to both).
    Gadget { file: PathBuf, a: usize, b: usize, c: usize },
    /// Tally every gadget over all lattices up to a size.
    GadgetCensus(EnumSize),
    /// Word problem in the free lattice.
    Free {
        #[command(subcommand)]
        op: FreeOp,
    },
    /// Ladders and their splittings.
    Ladder {
        #[command(subcommand)]
        op: LadderOp,
    },
    /// Enumerate lattices up to isomorphism, as JSON lines.
    Enum {
        #[command(flatten)]
        size: EnumSize,
        #[arg(long)]
        width: Option<usize>,
        #[arg(long, value_enum, value_delimiter = ',')]
        property: Vec<Property>,
        /// Write one file per lattice into this directory instead of stdout.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Scan for counterexamples.
    Scan {
        #[command(subcommand)]
        what: ScanOp,
    },
    /// Exhaustive verification runs.
    Verify {
        #[command(subcommand)]
        what: VerifyOp,
    },
    /// Hasse diagram as Graphviz DOT.
    Render { file: PathBuf },
}

#[derive(Args, Clone, Copy)]
struct EnumSize {
    #[arg(long)]
    max_n: usize,
    /// Largest size the enumerator may be asked for.
    #[arg(long, default_value_t = DEFAULT_ENUM_CAP)]
    cap: usize,
}

#[derive(Subcommand)]
enum FreeOp {
    /// Is `s <= t` in every lattice?
    Leq { s: String, t: String },
    /// Canonical form of a term.
    Canon { t: String },
}

#[derive(Subcommand)]
enum LadderOp {
    /// Split through the cover `a < b` of a lattice file, or of a decorated
    /// window when `--radius` is given (the file is then a decoration spec and
    /// the cover is `(0,0) < (1,0)`).
    Split {
        file: PathBuf,
        #[arg(long)]
        a: Option<usize>,
        #[arg(long)]
        b: Option<usize>,
        #[arg(long)]
        radius: Option<usize>,
    },
    /// The window of radius `k`, optionally decorated, as a lattice file.
    Window {
        #[arg(long)]
        radius: usize,
        #[arg(long)]
        decoration: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ScanOp {
    Conjecture1 {
        #[command(flatten)]
        size: EnumSize,
        /// Include every scanned lattice in the report.
        #[arg(long)]
        entries: bool,
    },
}

#[derive(Subcommand)]
enum VerifyOp {
    /// Width-two, width-three and block-structure checks.
    Gj(EnumSize),
    /// Every exhaustive check.
    Corpus(EnumSize),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Property {
    Modular,
    Distributive,
    SdJoin,
    SdMeet,
    Sd,
    Whitman,
    ForbiddenM3,
    ForbiddenN5,
    All,
}

impl Property {
    fn expand(ps: &[Property]) -> Vec<Property> {
        use Property::*;
        if ps.contains(&All) {
            return vec![Modular, Distributive, SdJoin, SdMeet, Sd, Whitman, ForbiddenM3, ForbiddenN5];
        }
        let mut v = ps.to_vec();
        v.dedup();
        v
    }

    fn report(self, l: &FiniteLattice) -> PropertyReport {
        match self {
            Property::Modular => is_modular(l),
            Property::Distributive => is_distributive(l),
            Property::SdJoin => is_semidistributive(l, Side::Join),
            Property::SdMeet => is_semidistributive(l, Side::Meet),
            Property::Sd | Property::All => is_semidistributive(l, Side::Both),
            Property::Whitman => whitman_w(l),
            Property::ForbiddenM3 => forbidden_report(l, Pattern::M3),
            Property::ForbiddenN5 => forbidden_report(l, Pattern::N5),
        }
    }

    /// True when the lattice has the property (for the forbidden patterns:
    /// when the pattern is absent).
    fn holds(self, l: &FiniteLattice) -> bool {
        let r = self.report(l);
        match self {
            Property::ForbiddenM3 | Property::ForbiddenN5 => !r.verdict,
            _ => r.verdict,
        }
    }
}

/// A failure together with its exit code.
struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

impl Failure {
    fn input(message: impl Display) -> Self {
        Failure { code: 2, kind: "invalid-input", message: message.to_string() }
    }

    fn verification(message: impl Display) -> Self {
        Failure { code: 1, kind: "verification-failure", message: message.to_string() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Disagreement(_)
            | Error::TheoremDisagreement(_)
            | Error::UniversalityFailure { .. }
            | Error::AbsorptionFailed { .. }
            | Error::CounterexampleFound(_) => Failure::verification(e),
            Error::SplitObstruction { .. } | Error::ChainExhausted(_) | Error::ExtractionFailed(_) => {
                Failure { code: 1, kind: "obstruction", message: e.to_string() }
            }
            e => Failure::input(e),
        }
    }
}

type Outcome = Result<u8, Failure>;

struct Ctx {
    json: bool,
    max_n: usize,
}

impl Ctx {
    fn load(&self, path: &Path) -> Result<FiniteLattice, Failure> {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
        Ok(FiniteLattice::from_json_capped(&text, self.max_n)?)
    }

    /// Prints `value` as JSON, or `human` otherwise.
    fn emit<T: Serialize>(&self, value: &T, human: impl FnOnce() -> String) {
        if self.json {
            println!("{}", serde_json::to_string(value).expect("reports serialize"));
        } else {
            println!("{}", human());
        }
    }
}

fn max_n_from_env() -> Result<usize, Failure> {
    match std::env::var("LATKIT_MAX_N") {
        Ok(v) => {
            v.trim().parse().map_err(|_| Failure::input(format!("LATKIT_MAX_N must be a positive integer, got {v:?}")))
        }
        Err(_) => Ok(DEFAULT_MAX_N),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let json = cli.json;
    let result = max_n_from_env().and_then(|max_n| {
        if let Some(jobs) = cli.jobs {
            rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global().map_err(Failure::input)?;
        }
        run(cli.verb, &Ctx { json, max_n })
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            if json {
                eprintln!("{}", serde_json::json!({ "error": f.kind, "message": f.message }));
            } else {
                eprintln!("latkit: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}

fn fmt_witness(w: &Option<Vec<usize>>) -> String {
    w.as_ref().map(|w| format!("  witness {w:?}")).unwrap_or_default()
}

fn run(verb: Verb, ctx: &Ctx) -> Outcome {
    match verb {
        Verb::Check { file, property } => {
            let l = ctx.load(&file)?;
            let reports: Vec<PropertyReport> = Property::expand(&property).iter().map(|p| p.report(&l)).collect();
            ctx.emit(&reports, || {
                reports
                    .iter()
                    .map(|r| format!("{}: {}{}", r.property, r.verdict, fmt_witness(&r.witness)))
                    .collect::<Vec<_>>()
                    .join("\n")
            });
            Ok(0)
        }
        Verb::Dseq { file } => {
            let l = ctx.load(&file)?;
            let d = d_sequence(&l);
            ctx.emit(&d, || {
                let mut s: Vec<String> =
                    d.layers.iter().enumerate().map(|(k, layer)| format!("D_{k} = {layer:?}")).collect();
                s.push(format!("D(L) = {:?}", d.d_full));
                s.push(format!("D^d(L) = {:?}", d.dual_full));
                s.push(format!("quadrant {}", d.quadrant));
                s.join("\n")
            });
            Ok(0)
        }
        Verb::Classify { file } => {
            let l = ctx.load(&file)?;
            #[derive(Serialize)]
            struct Classification {
                width: usize,
                linearly_indecomposable: bool,
                doubly_reducible: Vec<usize>,
                #[serde(flatten)]
                verdict: latkit::gj::GJVerdict,
            }
            let c = Classification {
                width: l.width(),
                linearly_indecomposable: l.is_linearly_indecomposable(),
                doubly_reducible: l.doubly_reducible(),
                verdict: check_theorem(&l)?,
            };
            ctx.emit(&c, || {
                let mut s = vec![
                    format!("width {}", c.width),
                    format!("distributive {}, DR-free {}", c.verdict.distributive, c.verdict.dr_free),
                ];
                for b in &c.verdict.blocks {
                    s.push(format!("block {}: {:?} {:?}", b.block.position, b.tag, b.block.elements));
                }
                s.push(format!("passes {}", c.verdict.passes));
                s.join("\n")
            });
            Ok(0)
        }
        Verb::Gadget { file, a, b, c } => {
            let l = ctx.load(&file)?;
            let g = gadget(&l, a, b, c)?;
            ctx.emit(&g, || {
                format!(
                    "size {}  fingerprint {}  class {}\ngenerated {:?}",
                    g.size, g.fingerprint, g.iso_class, g.generated
                )
            });
            Ok(0)
        }
        Verb::GadgetCensus(size) => {
            let all = lattices_up_to(size.max_n, size.cap)?;
            let census = gadget_census(&all);
            ctx.emit(&census, || {
                let mut s = vec![format!(
                    "{} lattices, {} gadgets, {} iso classes, {} fingerprints",
                    census.lattices, census.gadgets, census.iso_classes, census.fingerprints
                )];
                s.extend(census.classes.iter().map(|((f, i), n)| format!("{f} {i} {n}")));
                s.join("\n")
            });
            Ok(0)
        }
        Verb::Free { op } => free(op, ctx),
        Verb::Ladder { op } => ladder(op, ctx),
        Verb::Enum { size, width, property, emit } => enumerate(size, width, property, emit, ctx),
        Verb::Scan { what: ScanOp::Conjecture1 { size, entries } } => {
            let mut r = conjecture1_scan(size.max_n, size.cap)?;
            if !entries {
                r.entries.clear();
            }
            ctx.emit(&r, || {
                format!(
                    "scanned {}, width 2 with (W): {}, SD failures: {}, decomposition failures: {}",
                    r.scanned,
                    r.width2_w,
                    r.sd_failures.len(),
                    r.decomposition_failures.len()
                )
            });
            Ok(if r.sd_failures.is_empty() && r.decomposition_failures.is_empty() { 0 } else { 1 })
        }
        Verb::Verify { what: VerifyOp::Gj(size) } => {
            let all = lattices_up_to(size.max_n, size.cap)?;
            #[derive(Serialize)]
            struct GjRun {
                max_n: usize,
                width3: latkit::gj::WidthReport,
                width2: latkit::gj::WidthReport,
                theorem: latkit::gj::WidthReport,
            }
            let r = GjRun {
                max_n: size.max_n,
                width3: verify_prop_width3(&all)?,
                width2: verify_prop_width2(&all)?,
                theorem: verify_theorem(&all)?,
            };
            ctx.emit(&r, || {
                format!(
                    "{} lattices: width 3 qualifying {}, width 2 qualifying {}, block structure holds for {}",
                    r.theorem.scanned, r.width3.qualifying, r.width2.qualifying, r.theorem.qualifying
                )
            });
            Ok(0)
        }
        Verb::Verify { what: VerifyOp::Corpus(size) } => {
            let r = verify_corpus(size.max_n, size.cap)?;
            ctx.emit(&r, || {
                let mut s = vec![format!("{} lattices", r.lattices)];
                s.extend(
                    r.checks
                        .iter()
                        .map(|c| format!("{} {}: {}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.detail)),
                );
                s.join("\n")
            });
            Ok(if r.passed { 0 } else { 1 })
        }
        Verb::Render { file } => {
            let l = ctx.load(&file)?;
            print!("{}", to_dot(&l));
            Ok(0)
        }
    }
}

fn free(op: FreeOp, ctx: &Ctx) -> Outcome {
    match op {
        FreeOp::Leq { s, t } => {
            let (s, t) = (parse(&s)?, parse(&t)?);
            let leq = free_leq(&s, &t);
            let out = serde_json::json!({ "s": s, "t": t, "leq": leq });
            ctx.emit(&out, || leq.to_string());
        }
        FreeOp::Canon { t } => {
            let t = parse(&t)?;
            let c = canonical(&t);
            let out = serde_json::json!({ "term": t, "canonical": c });
            ctx.emit(&out, || c.to_string());
        }
    }
    Ok(0)
}

fn ladder(op: LadderOp, ctx: &Ctx) -> Outcome {
    let read = |p: &Path| std::fs::read_to_string(p).map_err(|e| Failure::input(format!("{}: {e}", p.display())));
    match op {
        LadderOp::Split { file, a, b, radius } => {
            let report = match (radius, a, b) {
                (Some(k), None, None) => split_report(k, &DecorationSpec::from_json(&read(&file)?)?)?,
                (Some(_), _, _) => {
                    return Err(Failure::input("--a/--b are fixed to (0,0)/(1,0) when --radius is given"))
                }
                (None, Some(a), Some(b)) => split_lattice(&ctx.load(&file)?, a, b)?,
                (None, _, _) => return Err(Failure::input("give --a and --b, or --radius with a decoration spec")),
            };
            ctx.emit(&report, || {
                let name = |x: &usize| report.labels[*x].clone();
                let mut s = vec![
                    format!("A = {:?}", report.split.a.iter().map(name).collect::<Vec<_>>()),
                    format!("B = {:?}", report.split.b.iter().map(name).collect::<Vec<_>>()),
                    format!("property (1): {}", report.split.prop1.holds),
                ];
                s.extend(report.prop2_band.iter().map(|b| {
                    let k2 = b.at_k2.map_or("-".to_string(), |v| v.to_string());
                    format!("  {} {:?}: |H_x \\ H| = {} / {}", b.label, b.side, b.at_k, k2)
                }));
                s.push(format!("stable: {} (relative to the window)", report.stable));
                s.join("\n")
            });
            Ok(if report.split.prop1.holds && report.stable { 0 } else { 1 })
        }
        LadderOp::Window { radius, decoration } => {
            let w = window(radius)?;
            let l = match decoration {
                Some(p) => decorate(&w, &DecorationSpec::from_json(&read(&p)?)?)?.lattice,
                None => w.carrier,
            };
            println!("{}", l.to_json());
            Ok(0)
        }
    }
}

fn enumerate(
    size: EnumSize,
    width: Option<usize>,
    property: Vec<Property>,
    emit: Option<PathBuf>,
    ctx: &Ctx,
) -> Outcome {
    let mut stream = LatticeStream::sizes(1, size.max_n, size.cap)?;
    if let Some(w) = width {
        stream = stream.filter(move |l| l.width() == w);
    }
    for p in Property::expand(&property) {
        stream = stream.filter(move |l| p.holds(l));
    }
    if let Some(dir) = &emit {
        std::fs::create_dir_all(dir).map_err(|e| Failure::input(format!("{}: {e}", dir.display())))?;
    }
    let mut count = 0usize;
    let mut by_size = std::collections::BTreeMap::<usize, usize>::new();
    for l in stream {
        count += 1;
        *by_size.entry(l.len()).or_default() += 1;
        let line = serde_json::to_string(&LatticeFile::from_lattice(&l)).expect("lattice file serializes");
        match &emit {
            Some(dir) => {
                let path = dir.join(format!("lattice-{count:06}.json"));
                std::fs::write(&path, line + "\n").map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
            }
            None => println!("{line}"),
        }
    }
    let summary = serde_json::json!({ "summary": { "max_n": size.max_n, "count": count, "by_size": by_size } });
    // The lattice stream owns stdout unless files were emitted.
    if emit.is_some() {
        ctx.emit(&summary, || format!("{count} lattices written"));
    } else {
        eprintln!("{summary}");
    }
    Ok(0)
}
