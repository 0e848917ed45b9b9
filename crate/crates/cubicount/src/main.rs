//! One command-line entry point for the whole toolkit: divisor-class
//! enumeration, Weyl orbits, scroll and quadric classification,
//! residuation, 2-secant-line counts, Riemann–Roch Chern classes,
//! deformation dimensions, splitting types, count-sheet audits, and the
//! finite-field oracle.
//!
//! # Output contract
//!
//! Text mode prints human-readable reports. With `--json`, every command
//! prints exactly one object `{"command": …, "inputs": …, "result": …}`
//! whose keys appear in lexicographic order at every level, so identical
//! invocations produce bit-identical output. `--threads` (oracle
//! commands) tunes scheduling only and never appears in the output.
//!
//! # Exit codes
//!
//! - `0` — success;
//! - `1` — an audit ran and at least one sheet failed;
//! - `2` — usage or input errors (bad flags, malformed classes or files).
//!
//! # Cubic-form files
//!
//! `--form file:<path>` reads a plain-text cubic: one monomial per line,
//! the exponents of every variable (summing to 3) followed by one
//! coefficient; `#` starts a comment and blank lines are skipped. A
//! coefficient is the index of a field element (base-`p` digits are the
//! polynomial coordinates), and a negative integer `-c` means the prime
//! subfield element `-c mod p`. Five columns describe a surface in `P^3`,
//! six a threefold in `P^4`. See `assets/forms/fermat-cubic-surface.form`
//! for a worked example.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write as _};
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use chow_grr::{
    b_of_C, c2e_closed_form_in, grr_c2e_symbolic, grr_c2E, ChowCxC, CxcRing, Scalar, CXC_BASIS,
};
use count_sheets::{audit, bundled_sheets, parse_sheets};
use cubic_classes::{enumerate_classes, s6_orbits, weyl_orbit};
use deformation::{
    chi_normal, expected_dims, feasible_splittings, h0_h1, pushforward_split, CurveOnThreefold,
    SplitBundle,
};
use fq_oracle::{
    cubic_through_curve, incidence_edges, lines_in_hypersurface, make_field, parse_cubic_form,
    three_secant_census, two_secant_census, CubicForm, FqField, RncCurve, SecantCensus,
    SMOOTHNESS_NOTE,
};
use scroll_classes::{residual_profile, solve_classes, ClassQuery};
use surface_lattice::{parse_class, SurfaceLattice};

#[derive(Parser)]
#[command(
    name = "cubicount",
    version,
    about = "Exact enumerative checks for curves on cubic surfaces, scrolls, and threefolds",
    propagate_version = true
)]
struct Cli {
    /// Print one JSON object {"command", "inputs", "result"} instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate cubic-surface classes with a given degree and self-intersection.
    Enum(EnumArgs),
    /// The full Weyl-group orbit of a cubic-surface class.
    Orbit(OrbitArgs),
    /// Curve classes of a given degree and genus on a scroll or quadric.
    Classify(ClassifyArgs),
    /// Residual class of a curve (plus secant lines) inside the cubic cut.
    Residual(ResidualArgs),
    /// Expected number of 2-secant lines, b(C), for a degree and genus.
    SecantCount(SecantCountArgs),
    /// c2 of the secant bundle by Grothendieck-Riemann-Roch.
    Grr(GrrArgs),
    /// chi of the normal bundle: the expected Hilbert-scheme dimension.
    Chi(ChiArgs),
    /// Splitting types of vector bundles on P^1.
    Split(SplitArgs),
    /// Re-add every contribution of a directory of count sheets.
    Audit(AuditArgs),
    /// Brute-force finite-field verification of line and secant counts.
    Oracle(OracleArgs),
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests go to stdout and succeed; genuine
            // usage errors go to stderr with the documented exit code.
            let ok = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let _ = e.print();
            return if ok { 0 } else { 2 };
        }
    };
    match dispatch(cli.command) {
        Ok(report) => {
            let rendered = if cli.json {
                let envelope = json!({
                    "command": report.command,
                    "inputs": report.inputs,
                    "result": report.result,
                });
                let mut out =
                    serde_json::to_string_pretty(&envelope).expect("the envelope is tree-shaped");
                out.push('\n');
                out
            } else {
                report.text
            };
            // A consumer that stops reading early (say, `head`) closes the
            // pipe; that is its business, not a crash of ours.
            let _ = io::stdout().write_all(rendered.as_bytes());
            report.exit
        }
        Err(message) => {
            eprintln!("error: {message}");
            2
        }
    }
}

/// What a command produced: both renderings plus the exit status, so the
/// output mode is decided in exactly one place.
struct Report {
    command: &'static str,
    inputs: Value,
    result: Value,
    text: String,
    exit: i32,
}

type CommandResult = Result<Report, String>;

fn dispatch(command: Command) -> CommandResult {
    match command {
        Command::Enum(args) => cmd_enum(args),
        Command::Orbit(args) => cmd_orbit(args),
        Command::Classify(args) => cmd_classify(args),
        Command::Residual(args) => cmd_residual(args),
        Command::SecantCount(args) => cmd_secant_count(args),
        Command::Grr(args) => cmd_grr(args),
        Command::Chi(args) => cmd_chi(args),
        Command::Split(args) => match args.verb {
            SplitVerb::Types(args) => cmd_split_types(args),
            SplitVerb::Pushforward(args) => cmd_split_pushforward(args),
        },
        Command::Audit(args) => cmd_audit(args),
        Command::Oracle(args) => match args.verb {
            OracleVerb::Lines(args) => cmd_oracle_lines(args),
            OracleVerb::Secants(args) => cmd_oracle_secants(args),
            OracleVerb::ThreeSecants(args) => cmd_oracle_three_secants(args),
        },
    }
}

// -- lattice commands -------------------------------------------------------

#[derive(Args)]
struct EnumArgs {
    /// Anticanonical degree of the classes.
    #[arg(long, allow_negative_numbers = true)]
    degree: i64,
    /// Required self-intersection.
    #[arg(long, allow_negative_numbers = true)]
    self_int: i64,
}

fn cmd_enum(args: EnumArgs) -> CommandResult {
    let set = enumerate_classes(args.degree, args.self_int);
    let orbits = s6_orbits(&set).map_err(|e| e.to_string())?;
    let mut text = format!(
        "{} classes with degree {} and self-intersection {}\n",
        set.len(),
        args.degree,
        args.self_int
    );
    if !orbits.is_empty() {
        text.push_str("permutation orbits (representative, size):\n");
        for (rep, size) in &orbits {
            let _ = writeln!(text, "  {rep}  {size}");
        }
    }
    if !set.is_empty() {
        text.push_str("classes:\n");
        for class in &set {
            let _ = writeln!(text, "  {class}");
        }
    }
    Ok(Report {
        command: "enum",
        inputs: json!({"degree": args.degree, "self_int": args.self_int}),
        result: json!({
            "count": set.len(),
            "classes": class_strings(set.iter()),
            "orbits": orbits
                .iter()
                .map(|(rep, size)| json!({"representative": rep.to_string(), "size": size}))
                .collect::<Vec<_>>(),
        }),
        text,
        exit: 0,
    })
}

#[derive(Args)]
struct OrbitArgs {
    /// Starting class, e.g. `l` or `2l-e1-e2-e3`.
    #[arg(long, allow_hyphen_values = true)]
    class: String,
}

fn cmd_orbit(args: OrbitArgs) -> CommandResult {
    let seed = parse_class(SurfaceLattice::CubicSurface, &args.class).map_err(|e| e.to_string())?;
    let set = weyl_orbit(&seed).map_err(|e| e.to_string())?;
    let mut text = format!("{} classes in the Weyl orbit of {}\n", set.len(), seed);
    for class in &set {
        let _ = writeln!(text, "  {class}");
    }
    Ok(Report {
        command: "orbit",
        inputs: json!({"class": seed.to_string()}),
        result: json!({
            "count": set.len(),
            "classes": class_strings(set.iter()),
        }),
        text,
        exit: 0,
    })
}

// -- scroll and quadric commands ----------------------------------------------

#[derive(Clone, Copy, ValueEnum)]
enum SurfaceArg {
    /// The cubic scroll, with directrix/ruling basis D, F.
    Scroll,
    /// The smooth quadric, with bidegree classes (a,b).
    Quadric,
}

impl SurfaceArg {
    fn lattice(self) -> SurfaceLattice {
        match self {
            SurfaceArg::Scroll => SurfaceLattice::Scroll,
            SurfaceArg::Quadric => SurfaceLattice::Quadric,
        }
    }

    fn name(self) -> &'static str {
        match self {
            SurfaceArg::Scroll => "scroll",
            SurfaceArg::Quadric => "quadric",
        }
    }
}

#[derive(Args)]
struct ClassifyArgs {
    /// Surface carrying the classes.
    #[arg(long, value_enum)]
    surface: SurfaceArg,
    /// Curve degree against the hyperplane class.
    #[arg(long, allow_negative_numbers = true)]
    degree: i64,
    /// Arithmetic genus.
    #[arg(long, allow_negative_numbers = true)]
    genus: i64,
    /// Keep only classes an irreducible curve can have.
    #[arg(long)]
    irreducible: bool,
}

fn cmd_classify(args: ClassifyArgs) -> CommandResult {
    let query = ClassQuery::new(
        args.surface.lattice(),
        args.degree,
        args.genus,
        args.irreducible,
    )
    .map_err(|e| e.to_string())?;
    let classes = solve_classes(&query);
    let mut text = String::new();
    for class in &classes {
        let _ = writeln!(text, "{class}");
    }
    Ok(Report {
        command: "classify",
        inputs: json!({
            "surface": args.surface.name(),
            "degree": args.degree,
            "genus": args.genus,
            "irreducible": args.irreducible,
        }),
        result: json!({
            "count": classes.len(),
            "classes": class_strings(classes.iter()),
        }),
        text,
        exit: 0,
    })
}

#[derive(Args)]
struct ResidualArgs {
    /// Surface carrying the classes.
    #[arg(long, value_enum)]
    surface: SurfaceArg,
    /// Class of the curve being residuated, e.g. `2D+2F` or `(1,1)`.
    #[arg(long, allow_hyphen_values = true)]
    curve: String,
    /// Class of the secant lines removed with the curve (default: none).
    #[arg(long, allow_hyphen_values = true)]
    secants: Option<String>,
}

fn cmd_residual(args: ResidualArgs) -> CommandResult {
    let lattice = args.surface.lattice();
    let curve = parse_class(lattice, &args.curve).map_err(|e| e.to_string())?;
    let secants = match &args.secants {
        Some(s) => parse_class(lattice, s).map_err(|e| e.to_string())?,
        None => lattice.zero(),
    };
    let profile = residual_profile(lattice, &curve, &secants).map_err(|e| e.to_string())?;
    Ok(Report {
        command: "residual",
        inputs: json!({
            "surface": args.surface.name(),
            "curve": curve.to_string(),
            "secants": secants.to_string(),
        }),
        result: json!({
            "class": profile.class.to_string(),
            "degree": profile.degree,
            "genus": profile.genus,
        }),
        text: format!(
            "{}  (degree {}, genus {})\n",
            profile.class, profile.degree, profile.genus
        ),
        exit: 0,
    })
}

// -- secant count and Chern classes -----------------------------------------

#[derive(Args)]
struct SecantCountArgs {
    /// Curve degree.
    #[arg(long, allow_negative_numbers = true)]
    degree: i64,
    /// Curve genus.
    #[arg(long, allow_negative_numbers = true)]
    genus: i64,
}

fn cmd_secant_count(args: SecantCountArgs) -> CommandResult {
    check_degree_genus(args.degree, args.genus)?;
    let count = b_of_C(args.degree, args.genus);
    let mut text = format!("{}\n", count.value);
    if count.out_of_regime {
        text.push_str("note: negative, so not the degree of an actual secant scheme\n");
    }
    Ok(Report {
        command: "secant-count",
        inputs: json!({"degree": args.degree, "genus": args.genus}),
        result: json!({"value": count.value, "out_of_regime": count.out_of_regime}),
        text,
        exit: 0,
    })
}

#[derive(Args)]
struct GrrArgs {
    /// Evaluate at this curve degree (with --genus); omit both for the
    /// symbolic answer in d and g.
    #[arg(long, requires = "genus", allow_negative_numbers = true)]
    degree: Option<i64>,
    /// Evaluate at this curve genus (with --degree).
    #[arg(long, requires = "degree", allow_negative_numbers = true)]
    genus: Option<i64>,
}

fn cmd_grr(args: GrrArgs) -> CommandResult {
    match (args.degree, args.genus) {
        (Some(d), Some(g)) => {
            check_degree_genus(d, g)?;
            let c2e = grr_c2E(d, g);
            let closed = c2e_closed_form_in(&CxcRing::numeric(d, g));
            grr_report(json!({"degree": d, "genus": g}), &c2e, c2e == closed)
        }
        (None, None) => {
            let c2e = grr_c2e_symbolic();
            let closed = c2e_closed_form_in(&CxcRing::symbolic());
            grr_report(json!({"degree": null, "genus": null}), &c2e, c2e == closed)
        }
        _ => unreachable!("clap ties --degree and --genus together"),
    }
}

fn grr_report<S: Scalar>(inputs: Value, c2e: &ChowCxC<S>, matches: bool) -> CommandResult {
    let mut coefficients = serde_json::Map::new();
    for (name, coeff) in CXC_BASIS.iter().zip(c2e.coeffs()) {
        coefficients.insert((*name).to_string(), json!(coeff.to_string()));
    }
    let text = format!(
        "c2(E) = {}\nclosed-form route agrees: {}\n",
        cxc_text(c2e),
        if matches { "yes" } else { "NO" }
    );
    Ok(Report {
        command: "grr",
        inputs,
        result: json!({"c2E": coefficients, "matches_closed_form": matches}),
        text,
        exit: 0,
    })
}

/// Human-readable form of a class on C×C, coefficients over the fixed basis.
fn cxc_text<S: Scalar>(class: &ChowCxC<S>) -> String {
    let mut parts = Vec::new();
    for (name, coeff) in CXC_BASIS.iter().zip(class.coeffs()) {
        if coeff.is_zero() {
            continue;
        }
        let rendered = coeff.to_string();
        let part = if *name == "1" {
            rendered
        } else if rendered == "1" {
            (*name).to_string()
        } else if rendered.contains(' ') {
            format!("({rendered}) {name}")
        } else {
            format!("{rendered} {name}")
        };
        parts.push(part);
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

// -- deformation commands -----------------------------------------------------

#[derive(Args)]
struct ChiArgs {
    /// Curve degree (with --genus).
    #[arg(
        long,
        requires = "genus",
        conflicts_with = "max_degree",
        allow_negative_numbers = true
    )]
    degree: Option<i64>,
    /// Arithmetic genus (with --degree).
    #[arg(
        long,
        requires = "degree",
        conflicts_with = "max_degree",
        allow_negative_numbers = true
    )]
    genus: Option<i64>,
    /// Tabulate every treated (degree, genus) pair up to this degree.
    #[arg(long, allow_negative_numbers = true)]
    max_degree: Option<i64>,
}

fn cmd_chi(args: ChiArgs) -> CommandResult {
    match (args.degree, args.genus, args.max_degree) {
        (Some(d), Some(g), None) => {
            check_degree_genus(d, g)?;
            let chi = chi_normal(&CurveOnThreefold::on_cubic_threefold(d, g));
            Ok(Report {
                command: "chi",
                inputs: json!({"degree": d, "genus": g}),
                result: json!({"chi": chi}),
                text: format!("{chi}\n"),
                exit: 0,
            })
        }
        (None, None, Some(max_degree)) => {
            if max_degree < 1 {
                return Err(format!("max degree must be at least 1, got {max_degree}"));
            }
            let rows = expected_dims(max_degree);
            let mut text = String::from("degree  genus  expected dim\n");
            for (d, g, dim) in &rows {
                let _ = writeln!(text, "{d:>6}  {g:>5}  {dim:>12}");
            }
            Ok(Report {
                command: "chi",
                inputs: json!({"max_degree": max_degree}),
                result: json!({
                    "rows": rows
                        .iter()
                        .map(|(d, g, dim)| json!({"degree": d, "genus": g, "dim": dim}))
                        .collect::<Vec<_>>(),
                }),
                text,
                exit: 0,
            })
        }
        _ => Err("provide either --degree with --genus, or --max-degree".to_string()),
    }
}

#[derive(Args)]
struct SplitArgs {
    #[command(subcommand)]
    verb: SplitVerb,
}

#[derive(Subcommand)]
enum SplitVerb {
    /// All splitting types with a given rank and total degree.
    Types(SplitTypesArgs),
    /// Pushforward of a line bundle along a degree-2 cover of P^1.
    Pushforward(PushforwardArgs),
}

#[derive(Args)]
struct SplitTypesArgs {
    /// Number of line-bundle summands.
    #[arg(long)]
    rank: usize,
    /// Sum of the summand degrees.
    #[arg(long, allow_negative_numbers = true)]
    total: i64,
    /// Smallest allowed summand degree.
    #[arg(long, allow_negative_numbers = true)]
    min: i64,
    /// Largest allowed summand degree.
    #[arg(long, allow_negative_numbers = true)]
    max: i64,
    /// Also report h0 and h1 after twisting by O(TWIST).
    #[arg(long, allow_negative_numbers = true)]
    twist: Option<i64>,
}

fn cmd_split_types(args: SplitTypesArgs) -> CommandResult {
    if args.rank < 1 {
        return Err(format!("rank must be at least 1, got {}", args.rank));
    }
    let bundles = feasible_splittings(args.rank, args.total, args.min, args.max);
    let mut text = String::new();
    let mut entries = Vec::new();
    for bundle in &bundles {
        let display = bundle_text(bundle);
        match args.twist {
            Some(twist) => {
                let (h0, h1) = h0_h1(bundle, twist);
                let _ = writeln!(text, "{display}: h0 {h0}, h1 {h1}");
                entries.push(json!({"bundle": display, "h0": h0, "h1": h1}));
            }
            None => {
                let _ = writeln!(text, "{display}");
                entries.push(json!({"bundle": display}));
            }
        }
    }
    let mut inputs = json!({
        "rank": args.rank,
        "total": args.total,
        "min": args.min,
        "max": args.max,
    });
    if let Some(twist) = args.twist {
        inputs
            .as_object_mut()
            .expect("inputs is an object")
            .insert("twist".to_string(), json!(twist));
    }
    Ok(Report {
        command: "split types",
        inputs,
        result: json!({"count": bundles.len(), "bundles": entries}),
        text,
        exit: 0,
    })
}

#[derive(Args)]
struct PushforwardArgs {
    /// Degree of the line bundle upstairs.
    #[arg(long, allow_negative_numbers = true)]
    degree: i64,
    /// The bundle is pulled back from the base P^1.
    #[arg(long)]
    pullback: bool,
}

fn cmd_split_pushforward(args: PushforwardArgs) -> CommandResult {
    let bundle = pushforward_split(args.degree, args.pullback).map_err(|e| e.to_string())?;
    let display = bundle_text(&bundle);
    Ok(Report {
        command: "split pushforward",
        inputs: json!({"degree": args.degree, "pullback": args.pullback}),
        result: json!({"bundle": display, "total_degree": bundle.total_degree()}),
        text: format!("{display}\n"),
        exit: 0,
    })
}

fn bundle_text(bundle: &SplitBundle) -> String {
    match bundle {
        SplitBundle::P1(degrees) => degrees
            .iter()
            .map(|k| format!("O({k})"))
            .collect::<Vec<_>>()
            .join(" + "),
        SplitBundle::Quadric(bidegrees) => bidegrees
            .iter()
            .map(|(a, b)| format!("O({a},{b})"))
            .collect::<Vec<_>>()
            .join(" + "),
    }
}

// -- audit ------------------------------------------------------------------

#[derive(Args)]
struct AuditArgs {
    /// Directory of .sheet files; audits the compiled-in bundle when omitted.
    dir: Option<PathBuf>,
}

fn cmd_audit(args: AuditArgs) -> CommandResult {
    let (sheets, source) = match &args.dir {
        None => (bundled_sheets(), "bundled".to_string()),
        Some(dir) => {
            let mut files = Vec::new();
            for entry in
                fs::read_dir(dir).map_err(|e| format!("cannot read {}: {e}", dir.display()))?
            {
                let entry = entry.map_err(|e| format!("cannot read {}: {e}", dir.display()))?;
                let path = entry.path();
                if path.extension().is_some_and(|ext| ext == "sheet") {
                    files.push(path);
                }
            }
            files.sort();
            if files.is_empty() {
                return Err(format!("no .sheet files in {}", dir.display()));
            }
            let mut sheets = Vec::new();
            for file in &files {
                let text = fs::read_to_string(file)
                    .map_err(|e| format!("cannot read {}: {e}", file.display()))?;
                let parsed =
                    parse_sheets(&text).map_err(|e| format!("{}: {e}", file.display()))?;
                sheets.extend(parsed);
            }
            (sheets, dir.display().to_string())
        }
    };
    let report = audit(&sheets);
    let exit = if report.all_passed() { 0 } else { 1 };
    Ok(Report {
        command: "audit",
        inputs: json!({"source": source}),
        result: serde_json::to_value(&report).expect("audit reports serialize"),
        text: format!("{report}\n"),
        exit,
    })
}

// -- oracle -------------------------------------------------------------------

#[derive(Args)]
struct OracleArgs {
    #[command(subcommand)]
    verb: OracleVerb,
}

#[derive(Subcommand)]
enum OracleVerb {
    /// Exhaustively enumerate the lines lying in a cubic hypersurface.
    Lines(LinesArgs),
    /// Census of 2-secant chords of the standard quartic curve inside a cubic.
    Secants(SecantsArgs),
    /// Census of 3-secant lines of a seeded quintic curve in P^4.
    ThreeSecants(ThreeSecantsArgs),
}

#[derive(Args)]
struct LinesArgs {
    /// Field characteristic (a prime).
    #[arg(long)]
    p: u32,
    /// Extension degree: the field is F_{p^k}.
    #[arg(long, default_value_t = 1)]
    k: u32,
    /// Cubic form: fermat3-surface, fermat3-threefold, or file:<path>.
    #[arg(long)]
    form: String,
    /// Worker threads for the sweep; scheduling only, output unchanged.
    #[arg(long)]
    threads: Option<usize>,
}

fn cmd_oracle_lines(args: LinesArgs) -> CommandResult {
    if !(1..=6).contains(&args.k) {
        return Err(format!("k must be between 1 and 6, got {}", args.k));
    }
    let field = make_field(args.p, args.k).map_err(|e| e.to_string())?;
    let form = resolve_form(&field, &args.form)?;
    let lines = with_threads(args.threads, || lines_in_hypersurface(&form))?
        .map_err(|e| e.to_string())?;
    let edges = incidence_edges(&field, &lines);
    let text = format!(
        "{} lines in the cubic over {}\n{} incident pairs\n",
        lines.len(),
        field_name(args.p, args.k),
        edges.len()
    );
    Ok(Report {
        command: "oracle lines",
        inputs: json!({"p": args.p, "k": args.k, "form": args.form}),
        result: json!({"count": lines.len(), "incident_pairs": edges.len()}),
        text,
        exit: 0,
    })
}

#[derive(Args)]
struct SecantsArgs {
    /// Field characteristic (a prime); curve and cubic live over F_p.
    #[arg(long)]
    p: u32,
    /// Sweep the extensions F_{p^e} for e = 1..=k (at most 4).
    #[arg(long, default_value_t = 4)]
    k: u32,
    /// Generate the cubic through the curve from this seed.
    #[arg(long, conflicts_with = "form")]
    seed: Option<u64>,
    /// Explicit cubic containing the curve (usually file:<path>).
    #[arg(long)]
    form: Option<String>,
    /// Worker threads for the sweep; scheduling only, output unchanged.
    #[arg(long)]
    threads: Option<usize>,
}

fn cmd_oracle_secants(args: SecantsArgs) -> CommandResult {
    if !(1..=4).contains(&args.k) {
        return Err(format!("k must be between 1 and 4, got {}", args.k));
    }
    let field = make_field(args.p, 1).map_err(|e| e.to_string())?;
    let curve = RncCurve::rational_normal(&field, 4);
    let (cubic, inputs) = match (args.seed, &args.form) {
        (Some(seed), None) => (
            cubic_through_curve(&curve, seed),
            json!({"p": args.p, "k": args.k, "seed": seed}),
        ),
        (None, Some(spec)) => {
            let form = resolve_form(&field, spec)?;
            if form.n() != 4 {
                return Err(
                    "the secant census needs a threefold cubic (six columns per line)".to_string(),
                );
            }
            (form, json!({"p": args.p, "k": args.k, "form": spec}))
        }
        (None, None) => {
            return Err("provide --seed (generate the cubic) or --form (explicit cubic)".to_string())
        }
        (Some(_), Some(_)) => unreachable!("clap rejects --seed together with --form"),
    };
    let census = with_threads(args.threads, || two_secant_census(&curve, &cubic, args.k))?
        .map_err(|e| e.to_string())?;
    let mut text = census_text("2-secant chords of the quartic curve in the cubic", &census);
    text.push_str(SMOOTHNESS_NOTE);
    text.push('\n');
    let mut result = serde_json::to_value(&census).expect("censuses serialize");
    result
        .as_object_mut()
        .expect("a census is an object")
        .insert("note".to_string(), json!(SMOOTHNESS_NOTE));
    Ok(Report {
        command: "oracle secants",
        inputs,
        result,
        text,
        exit: 0,
    })
}

#[derive(Args)]
struct ThreeSecantsArgs {
    /// Field characteristic (a prime); the curve lives over F_p.
    #[arg(long)]
    p: u32,
    /// Sweep the extensions F_{p^e} for e = 1..=k (at most 2).
    #[arg(long, default_value_t = 1)]
    k: u32,
    /// Seed for the projection of the quintic normal curve into P^4.
    #[arg(long)]
    seed: u64,
    /// Worker threads for the sweep; scheduling only, output unchanged.
    #[arg(long)]
    threads: Option<usize>,
}

fn cmd_oracle_three_secants(args: ThreeSecantsArgs) -> CommandResult {
    if !(1..=2).contains(&args.k) {
        return Err(format!("k must be 1 or 2, got {}", args.k));
    }
    let field = make_field(args.p, 1).map_err(|e| e.to_string())?;
    let curve = RncCurve::projected_quintic(&field, args.seed);
    let census = with_threads(args.threads, || three_secant_census(&curve, args.k))?
        .map_err(|e| e.to_string())?;
    let text = census_text("3-secant lines of the projected quintic curve", &census);
    Ok(Report {
        command: "oracle three-secants",
        inputs: json!({"p": args.p, "k": args.k, "seed": args.seed}),
        result: serde_json::to_value(&census).expect("censuses serialize"),
        text,
        exit: 0,
    })
}

// -- shared helpers -----------------------------------------------------------

fn check_degree_genus(degree: i64, genus: i64) -> Result<(), String> {
    if degree < 1 {
        return Err(format!("degree must be at least 1, got {degree}"));
    }
    if genus < 0 {
        return Err(format!("genus must be nonnegative, got {genus}"));
    }
    Ok(())
}

fn class_strings<'a>(classes: impl Iterator<Item = &'a surface_lattice::DivisorClass>) -> Vec<String> {
    classes.map(ToString::to_string).collect()
}

/// Build a cubic form from its command-line specification.
fn resolve_form(field: &FqField, spec: &str) -> Result<CubicForm, String> {
    match spec {
        "fermat3-surface" => Ok(CubicForm::fermat_surface(field)),
        "fermat3-threefold" => Ok(CubicForm::fermat_threefold(field)),
        other => {
            let path = other.strip_prefix("file:").ok_or_else(|| {
                format!(
                    "unknown form `{other}`: expected fermat3-surface, fermat3-threefold, or file:<path>"
                )
            })?;
            let text =
                fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?;
            let n = ambient_dim_of(&text)?;
            parse_cubic_form(field, n, &text).map_err(|e| format!("{path}: {e}"))
        }
    }
}

/// The ambient dimension a form file describes, read off its first data
/// line: five columns are a surface in P^3, six a threefold in P^4.
fn ambient_dim_of(text: &str) -> Result<usize, String> {
    for line in text.lines() {
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        return match body.split_whitespace().count() {
            5 => Ok(3),
            6 => Ok(4),
            t => Err(format!(
                "form lines need 5 columns (P^3) or 6 (P^4); the first data line has {t}"
            )),
        };
    }
    Err("the form file has no data lines".to_string())
}

/// Run `job` on the global pool or on a dedicated pool of `threads`
/// workers. The sweeps sort their results, so the answer is identical
/// either way; the flag only tunes scheduling.
fn with_threads<T: Send>(
    threads: Option<usize>,
    job: impl FnOnce() -> T + Send,
) -> Result<T, String> {
    match threads {
        None => Ok(job()),
        Some(0) => Err("--threads must be at least 1".to_string()),
        Some(n) => Ok(rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| format!("cannot build a pool of {n} threads: {e}"))?
            .install(job)),
    }
}

fn field_name(p: u32, e: u32) -> String {
    if e == 1 {
        format!("F_{p}")
    } else {
        format!("F_{p}^{e}")
    }
}

fn census_text(title: &str, census: &SecantCensus) -> String {
    let mut text = format!("{title}\n");
    for (i, count) in census.rational_counts.iter().enumerate() {
        let _ = writeln!(
            text,
            "  rational over {}: {}",
            field_name(census.p, i as u32 + 1),
            count
        );
    }
    text.push_str("closed points by degree:\n");
    if census.degree_counts.is_empty() {
        text.push_str("  none\n");
    }
    for (degree, count) in &census.degree_counts {
        let _ = writeln!(text, "  degree {degree}: {count}");
    }
    let _ = writeln!(text, "geometric total: {}", census.geometric_total);
    text
}
