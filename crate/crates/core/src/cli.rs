//! Batch command-line front end over the library.
//!
//! Four subcommands cover the whole surface: `triangle` renders a colored
//! path triangle from any of its constructions, `count` reports a single
//! family count with optional cross-checks, `bijection` maps one object or
//! verifies a whole domain, and `oeis` scans triangles against a local
//! sequence catalog and regenerates the published comparison grids.
//!
//! Data goes to stdout, diagnostics to stderr. Exit code 2 means the
//! invocation was invalid (bad flags, unreadable input, parameters outside
//! a route's domain); exit code 3 means a verification ran and failed.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Display;
use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::json;

use crate::bijections::{
    dyck_to_motzkin, motzkin_to_dyck, motzkin_to_tree, peak0_forward, peak0_inverse, peak_scheme,
    rowsum_forward, rowsum_inverse, tree_to_motzkin,
};
use crate::closedform::{fine_series, fuss_catalan_number, prodinger_count};
use crate::oeis::{
    self, load_bfile, load_stripped, match_sequence, SequenceDb, TableScan, TableSpec,
};
use crate::oracle::{
    count_dyck, count_fine, count_motzkin, count_peak_parity, count_trees, enumerate_dyck,
    enumerate_motzkin, enumerate_peak_parity, enumerate_trees, SRestriction,
};
use crate::paths::{ColorScheme, DyckPath, KaryTree, MotzkinPath};
use crate::riordan::{
    dh_from_az, dyck_az, dyck_scheme, fine_az, motzkin_az, triangle_from_az, triangle_from_dh,
    AzSpec, Provenance, Triangle,
};

/// Most rows any recurrence- or series-built triangle may have without
/// `--unsafe`.
pub const AZ_ROW_CAP: usize = 64;
/// Largest size parameter any exhaustive-enumeration route accepts without
/// `--unsafe`.
pub const ORACLE_CAP: usize = 10;

const DEFAULT_OEIS_BASE: &str = "https://oeis.org";

/// A command that could not run: carries the process exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure { code: 2, message: message.into() }
    }

    fn mismatch(message: impl Into<String>) -> Failure {
        Failure { code: 3, message: message.into() }
    }
}

fn bad(err: impl Display) -> Failure {
    Failure::usage(err.to_string())
}

#[derive(Debug, Parser)]
#[command(
    name = "motzkin",
    version,
    about = "Enumerate colored-path triangles, family counts, bijections, and catalog scans"
)]
pub struct Cli {
    /// Output format for data printed to stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Render the triangle of path counts for one pair of color tuples.
    Triangle(TriangleArgs),
    /// Count one path or tree family, optionally cross-checking the value.
    Count(CountArgs),
    /// Apply a bijection to one object, or verify it over a whole domain.
    Bijection(BijectionArgs),
    /// Scan triangles against a sequence catalog and render the grids.
    Oeis(OeisArgs),
}

/// Entry point for the binary: parse, dispatch, map failures to exit codes.
pub fn run() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

pub fn dispatch(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Triangle(args) => cmd_triangle(args, cli.format),
        Command::Count(args) => cmd_count(args, cli.format),
        Command::Bijection(args) => cmd_bijection(args, cli.format),
        Command::Oeis(args) => cmd_oeis(args, cli.format),
    }
}

fn cap_check(what: &str, value: usize, cap: usize, unchecked: bool) -> Result<(), Failure> {
    if value > cap && !unchecked {
        return Err(Failure::usage(format!(
            "{what} is capped at {cap} (got {value}); pass --unsafe to override"
        )));
    }
    Ok(())
}

fn build_scheme(order: usize, alpha: &[u64], beta: &[u64]) -> Result<ColorScheme, Failure> {
    if alpha.len() != order || beta.len() != order {
        return Err(Failure::usage(format!(
            "--order {order} does not match the tuple lengths (alpha has {}, beta has {})",
            alpha.len(),
            beta.len()
        )));
    }
    ColorScheme::new(alpha.to_vec(), beta.to_vec()).map_err(bad)
}

// ---------------------------------------------------------------- triangle

#[derive(Debug, Args)]
pub struct TriangleArgs {
    /// Order of the color tuples (must equal their length).
    #[arg(long)]
    pub order: usize,

    /// Comma-separated axis color counts a0,a1,...
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub alpha: Vec<u64>,

    /// Comma-separated above-axis color counts b0,b1,...
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub beta: Vec<u64>,

    /// Number of rows to generate.
    #[arg(long)]
    pub rows: usize,

    /// Construction to build the triangle from.
    #[arg(long, value_enum, default_value_t = TriangleSource::Az)]
    pub source: TriangleSource,

    /// Build from every available construction and require equality.
    #[arg(long)]
    pub verify: bool,

    /// Lift the built-in size caps.
    #[arg(long = "unsafe")]
    pub unchecked: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TriangleSource {
    /// Row-by-row recurrence from the two step sequences.
    Az,
    /// Coefficients of the generating-function pair.
    Dh,
    /// Exhaustive path enumeration.
    Oracle,
}

fn cmd_triangle(args: &TriangleArgs, format: Format) -> Result<(), Failure> {
    let scheme = build_scheme(args.order, &args.alpha, &args.beta)?;
    if args.rows == 0 {
        return Err(Failure::usage("--rows must be at least 1"));
    }
    let az = motzkin_az(&scheme);

    if args.verify {
        cap_check("--rows", args.rows, AZ_ROW_CAP, args.unchecked)?;
        let mut triangles = vec![triangle_from_az(&az, args.rows).map_err(bad)?];
        let dh = dh_from_az(&az, args.rows).map_err(bad)?;
        triangles.push(triangle_from_dh(&dh, args.rows).map_err(bad)?);
        if args.rows <= ORACLE_CAP || args.unchecked {
            triangles.push(oracle_triangle(&scheme, args.rows).map_err(bad)?);
        } else {
            eprintln!(
                "note: oracle construction skipped above {ORACLE_CAP} rows; \
                 pass --unsafe to include it"
            );
        }
        for other in &triangles[1..] {
            if let Some((n, m)) = first_difference(&triangles[0], other) {
                return Err(Failure::mismatch(format!(
                    "construction {} disagrees with {} at entry ({n}, {m}): {} vs {}",
                    other.provenance().label(),
                    triangles[0].provenance().label(),
                    other.entry(n, m),
                    triangles[0].entry(n, m),
                )));
            }
        }
        let labels: Vec<&str> = triangles.iter().map(|t| t.provenance().label()).collect();
        eprintln!("verified: {} ({} rows)", labels.join(" = "), args.rows);
        print_triangle(&triangles[0], format);
        return Ok(());
    }

    let cap = match args.source {
        TriangleSource::Oracle => ORACLE_CAP,
        _ => AZ_ROW_CAP,
    };
    cap_check("--rows", args.rows, cap, args.unchecked)?;
    let triangle = match args.source {
        TriangleSource::Az => triangle_from_az(&az, args.rows).map_err(bad)?,
        TriangleSource::Dh => {
            let dh = dh_from_az(&az, args.rows).map_err(bad)?;
            triangle_from_dh(&dh, args.rows).map_err(bad)?
        }
        TriangleSource::Oracle => oracle_triangle(&scheme, args.rows).map_err(bad)?,
    };
    print_triangle(&triangle, format);
    Ok(())
}

fn oracle_triangle(
    scheme: &ColorScheme,
    rows: usize,
) -> Result<Triangle, crate::riordan::RiordanError> {
    let data = (0..rows).map(|n| (0..=n).map(|m| count_motzkin(n, m, scheme)).collect()).collect();
    Triangle::from_rows(data, Provenance::Oracle)
}

fn first_difference(a: &Triangle, b: &Triangle) -> Option<(usize, usize)> {
    for (n, (row_a, row_b)) in a.rows().iter().zip(b.rows()).enumerate() {
        if row_a != row_b {
            let m = row_a
                .iter()
                .zip(row_b)
                .position(|(x, y)| x != y)
                .unwrap_or_else(|| row_a.len().min(row_b.len()));
            return Some((n, m));
        }
    }
    None
}

fn print_triangle(triangle: &Triangle, format: Format) {
    match format {
        Format::Text => print!("{}", triangle.to_aligned_text()),
        Format::Csv => print!("{}", triangle.to_csv()),
        Format::Json => {
            println!(
                "{}",
                serde_json::to_string_pretty(&triangle.to_json())
                    .expect("triangle json always serializes")
            );
        }
    }
}

// ------------------------------------------------------------------- count

#[derive(Debug, Args)]
pub struct CountArgs {
    /// Path or tree family to count.
    #[arg(long, value_enum)]
    pub family: Family,

    /// Step width k of the family.
    #[arg(long)]
    pub k: usize,

    /// Depth allowed below the axis (families dyck, fine, peak).
    #[arg(long, default_value_t = 0)]
    pub a: usize,

    /// Forbidden-hill width (family fine).
    #[arg(long)]
    pub r: Option<usize>,

    /// Residue class of the peak heights modulo k (family peak).
    #[arg(long, default_value_t = 0)]
    pub class: usize,

    /// Size parameter: semilength for paths, edge count for trees.
    #[arg(long)]
    pub n: usize,

    /// End semiheight (families dyck, fine, peak).
    #[arg(long, default_value_t = 0)]
    pub m: usize,

    /// Allowed child counts for family tree: "all" or a comma list.
    #[arg(long, default_value = "all")]
    pub arities: String,

    /// Recompute the count through an independent route and require equality.
    #[arg(long, value_enum)]
    pub check: Option<CheckKind>,

    /// Lift the built-in size caps.
    #[arg(long = "unsafe")]
    pub unchecked: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// k-step paths bounded below by a shifted axis.
    Dyck,
    /// The same paths with forbidden return hills.
    Fine,
    /// The same paths filtered by peak height residue.
    Peak,
    /// k-ary trees counted by edges.
    Tree,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    /// A closed formula or generating-function coefficient.
    Closedform,
    /// The generating-function pair construction of the triangle.
    Riordan,
    /// Exhaustive enumeration.
    Oracle,
}

fn family_name(family: Family) -> &'static str {
    match family {
        Family::Dyck => "dyck",
        Family::Fine => "fine",
        Family::Peak => "peak",
        Family::Tree => "tree",
    }
}

fn cmd_count(args: &CountArgs, format: Format) -> Result<(), Failure> {
    let count = primary_count(args)?;
    if let Some(kind) = args.check {
        let (label, expected) = check_count(args, kind)?;
        if expected != count {
            return Err(Failure::mismatch(format!(
                "{label} gives {expected}, but the primary count is {count}"
            )));
        }
        eprintln!("check ok: {label} agrees ({count})");
    }
    print_count(args, &count, format);
    Ok(())
}

fn need_r(args: &CountArgs) -> Result<usize, Failure> {
    args.r.ok_or_else(|| Failure::usage("--family fine needs --r"))
}

/// The count each family routes through by default: a triangle entry when a
/// recurrence covers the family, exhaustive enumeration otherwise.
fn primary_count(args: &CountArgs) -> Result<BigInt, Failure> {
    match args.family {
        Family::Dyck => {
            let az = dyck_az(args.k, args.a).map_err(bad)?;
            entry_of(&az, args.n, args.m, args.unchecked)
        }
        Family::Fine => {
            let az = fine_az(args.k, args.a, need_r(args)?).map_err(bad)?;
            entry_of(&az, args.n, args.m, args.unchecked)
        }
        Family::Peak => peak_count(args),
        Family::Tree => {
            let scheme = tree_scheme(args.k, &parse_arities(&args.arities)?)?;
            entry_of(&motzkin_az(&scheme), args.n, 0, args.unchecked)
        }
    }
}

fn entry_of(az: &AzSpec, n: usize, m: usize, unchecked: bool) -> Result<BigInt, Failure> {
    cap_check("--n", n, AZ_ROW_CAP - 1, unchecked)?;
    let triangle = triangle_from_az(az, n + 1).map_err(bad)?;
    Ok(triangle.entry(n, m))
}

fn peak_count(args: &CountArgs) -> Result<BigInt, Failure> {
    let (k, a, class, n, m) = (args.k, args.a, args.class, args.n, args.m);
    if n == 0 {
        return Err(Failure::usage("peak-residue families need --n at least 1"));
    }
    if k == 0 || class >= k {
        return Err(Failure::usage("--class must lie in 0..k"));
    }
    if class == 0 {
        let scheme = peak_scheme(k, a).map_err(bad)?;
        entry_of(&motzkin_az(&scheme), n, m, args.unchecked)
    } else if class == k - 1 && a == 0 && m == 0 {
        // Stripping the forced leading run of a deepest-residue path leaves
        // a residue-0 path of full depth and one less semilength.
        let scheme = peak_scheme(k, k - 1).map_err(bad)?;
        entry_of(&motzkin_az(&scheme), n - 1, 0, args.unchecked)
    } else {
        cap_check("--n for the enumeration route", n, ORACLE_CAP, args.unchecked)?;
        count_peak_parity(k, a, class, n, m).map(BigInt::from).map_err(bad)
    }
}

fn parse_arities(text: &str) -> Result<SRestriction, Failure> {
    let text = text.trim();
    if text.eq_ignore_ascii_case("all") {
        return Ok(SRestriction::All);
    }
    let mut set = BTreeSet::new();
    for part in text.split(',') {
        let part = part.trim();
        let value: usize = part
            .parse()
            .map_err(|_| Failure::usage(format!("--arities entry {part:?} is not a number")))?;
        set.insert(value);
    }
    Ok(SRestriction::Subset(set))
}

/// Child counts an internal vertex may have: the listed ones below k, plus
/// k itself which is always allowed.
fn allowed_arities(k: usize, restriction: &SRestriction) -> Result<BTreeSet<usize>, Failure> {
    match restriction {
        SRestriction::All => Ok((1..=k).collect()),
        SRestriction::Subset(set) => {
            if let Some(&entry) = set.iter().find(|&&i| i > k) {
                return Err(Failure::usage(format!("--arities entry {entry} exceeds k = {k}")));
            }
            let mut allowed: BTreeSet<usize> =
                set.iter().copied().filter(|&i| (1..k).contains(&i)).collect();
            allowed.insert(k);
            Ok(allowed)
        }
    }
}

/// The color tuples whose height-0 paths the trees map onto: one color per
/// allowed child count below k, on and above the axis alike.
fn tree_scheme(k: usize, restriction: &SRestriction) -> Result<ColorScheme, Failure> {
    if k < 2 {
        return Err(Failure::usage("--k must be at least 2"));
    }
    let allowed = allowed_arities(k, restriction)?;
    let alpha: Vec<u64> = (1..k).map(|i| u64::from(allowed.contains(&i))).collect();
    ColorScheme::new(alpha.clone(), alpha).map_err(bad)
}

fn check_count(args: &CountArgs, kind: CheckKind) -> Result<(String, BigInt), Failure> {
    match (args.family, kind) {
        (Family::Dyck, CheckKind::Closedform) => {
            if args.m != 0 {
                return Err(Failure::usage("the closed form covers --m 0 only"));
            }
            let value =
                prodinger_count(args.k as u64, args.a as u64, args.n as u64).map_err(bad)?;
            Ok(("the closed-form count".to_string(), value))
        }
        (Family::Dyck, CheckKind::Riordan) => {
            let az = dyck_az(args.k, args.a).map_err(bad)?;
            dh_entry(&az, args.n, args.m, args.unchecked)
        }
        (Family::Dyck, CheckKind::Oracle) => {
            cap_check("--n for the enumeration check", args.n, ORACLE_CAP, args.unchecked)?;
            let value = count_dyck(args.k, args.a, args.n, args.m).map_err(bad)?;
            Ok((enum_label(), BigInt::from(value)))
        }
        (Family::Fine, CheckKind::Closedform) => {
            let r = need_r(args)?;
            if args.a != 0 || args.m != 0 {
                return Err(Failure::usage(
                    "the generating-function check covers --a 0 --m 0 only",
                ));
            }
            let series = fine_series(args.k, r, args.n + 1).map_err(bad)?;
            Ok(("the generating-function coefficient".to_string(), series.coeff(args.n).clone()))
        }
        (Family::Fine, CheckKind::Riordan) => {
            let az = fine_az(args.k, args.a, need_r(args)?).map_err(bad)?;
            dh_entry(&az, args.n, args.m, args.unchecked)
        }
        (Family::Fine, CheckKind::Oracle) => {
            cap_check("--n for the enumeration check", args.n, ORACLE_CAP, args.unchecked)?;
            let value = count_fine(args.k, args.a, need_r(args)?, args.n, args.m).map_err(bad)?;
            Ok((enum_label(), BigInt::from(value)))
        }
        (Family::Peak, CheckKind::Closedform) => {
            Err(Failure::usage("no closed form is wired up for peak-residue counts"))
        }
        (Family::Peak, CheckKind::Riordan) => {
            if args.n == 0 {
                return Err(Failure::usage("peak-residue families need --n at least 1"));
            }
            if args.class == 0 {
                let scheme = peak_scheme(args.k, args.a).map_err(bad)?;
                dh_entry(&motzkin_az(&scheme), args.n, args.m, args.unchecked)
            } else if args.class == args.k - 1 && args.a == 0 && args.m == 0 {
                let scheme = peak_scheme(args.k, args.k - 1).map_err(bad)?;
                dh_entry(&motzkin_az(&scheme), args.n - 1, 0, args.unchecked)
            } else {
                Err(Failure::usage(
                    "no recurrence route covers this parameter combination; \
                     use --check oracle",
                ))
            }
        }
        (Family::Peak, CheckKind::Oracle) => {
            cap_check("--n for the enumeration check", args.n, ORACLE_CAP, args.unchecked)?;
            let value =
                count_peak_parity(args.k, args.a, args.class, args.n, args.m).map_err(bad)?;
            Ok((enum_label(), BigInt::from(value)))
        }
        (Family::Tree, CheckKind::Closedform) => {
            let restriction = parse_arities(&args.arities)?;
            let allowed = allowed_arities(args.k, &restriction)?;
            if allowed.len() != 1 {
                return Err(Failure::usage("the closed form covers full trees only (--arities k)"));
            }
            let value = if args.n.is_multiple_of(args.k) {
                fuss_catalan_number(args.k as u64, (args.n / args.k) as u64).map_err(bad)?
            } else {
                BigInt::from(0)
            };
            Ok(("the closed-form count".to_string(), value))
        }
        (Family::Tree, CheckKind::Riordan) => {
            let scheme = tree_scheme(args.k, &parse_arities(&args.arities)?)?;
            dh_entry(&motzkin_az(&scheme), args.n, 0, args.unchecked)
        }
        (Family::Tree, CheckKind::Oracle) => {
            cap_check("--n for the enumeration check", args.n, ORACLE_CAP, args.unchecked)?;
            let restriction = parse_arities(&args.arities)?;
            let value = count_trees(args.k, args.n, &restriction).map_err(bad)?;
            Ok((enum_label(), BigInt::from(value)))
        }
    }
}

fn enum_label() -> String {
    "exhaustive enumeration".to_string()
}

fn dh_entry(az: &AzSpec, n: usize, m: usize, unchecked: bool) -> Result<(String, BigInt), Failure> {
    cap_check("--n", n, AZ_ROW_CAP - 1, unchecked)?;
    let dh = dh_from_az(az, n + 1).map_err(bad)?;
    let triangle = triangle_from_dh(&dh, n + 1).map_err(bad)?;
    Ok(("the generating-pair construction".to_string(), triangle.entry(n, m)))
}

fn print_count(args: &CountArgs, count: &BigInt, format: Format) {
    let family = family_name(args.family);
    // Which flags are meaningful for the family, for the structured formats.
    let a = matches!(args.family, Family::Dyck | Family::Fine | Family::Peak);
    let r = matches!(args.family, Family::Fine);
    let class = matches!(args.family, Family::Peak);
    let m = a;
    let arities = matches!(args.family, Family::Tree);
    match format {
        Format::Text => println!("{count}"),
        Format::Csv => {
            println!("family,k,a,r,class,n,m,arities,count");
            println!(
                "{family},{},{},{},{},{},{},{},{count}",
                args.k,
                if a { args.a.to_string() } else { String::new() },
                if r { args.r.map(|v| v.to_string()).unwrap_or_default() } else { String::new() },
                if class { args.class.to_string() } else { String::new() },
                args.n,
                if m { args.m.to_string() } else { String::new() },
                if arities { args.arities.clone() } else { String::new() },
            );
        }
        Format::Json => {
            let mut object = BTreeMap::new();
            object.insert("family", json!(family));
            object.insert("k", json!(args.k));
            if a {
                object.insert("a", json!(args.a));
            }
            if r {
                object.insert("r", json!(args.r));
            }
            if class {
                object.insert("class", json!(args.class));
            }
            object.insert("n", json!(args.n));
            if m {
                object.insert("m", json!(args.m));
            }
            if arities {
                object.insert("arities", json!(args.arities));
            }
            object.insert("count", json!(count.to_string()));
            println!(
                "{}",
                serde_json::to_string_pretty(&object).expect("count json always serializes")
            );
        }
    }
}

// --------------------------------------------------------------- bijection

#[derive(Debug, Args)]
pub struct BijectionArgs {
    /// Which bijection to run.
    #[arg(long, value_enum)]
    pub name: BijectionName,

    /// Map a single object in this direction.
    #[arg(long, value_enum, conflicts_with = "verify_all")]
    pub direction: Option<Direction>,

    /// File holding the input object as JSON, or "-" for stdin.
    #[arg(long, conflicts_with = "verify_all")]
    pub input: Option<String>,

    /// Round-trip every object of the size --n domain and compare images.
    #[arg(long)]
    pub verify_all: bool,

    /// Domain size for --verify-all.
    #[arg(long)]
    pub n: Option<usize>,

    /// Step width k (bijections dyck, peak0, tree).
    #[arg(long)]
    pub k: Option<usize>,

    /// Depth allowed below the axis (bijections dyck, peak0).
    #[arg(long)]
    pub a: Option<usize>,

    /// Comma-separated axis color counts (bijection rowsum).
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub alpha: Option<Vec<u64>>,

    /// Comma-separated above-axis color counts (bijection rowsum; defaults
    /// to --alpha, which the map requires them to equal).
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub beta: Option<Vec<u64>>,

    /// Allowed child counts for bijection tree: "all" or a comma list.
    #[arg(long, default_value = "all")]
    pub arities: String,

    /// Lift the built-in size caps.
    #[arg(long = "unsafe")]
    pub unchecked: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BijectionName {
    /// Height-m paths onto height-0 paths over the lifted tuples.
    Rowsum,
    /// Colored paths onto k-step paths via the drop codebooks.
    Dyck,
    /// Colored paths onto k-step paths with peak heights divisible by k.
    Peak0,
    /// k-ary trees onto height-0 paths over the all-ones tuples.
    Tree,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Direction {
    /// Towards the image family.
    Fwd,
    /// Back from the image family.
    Inv,
}

/// One mapped object, whichever side of a bijection it lives on.
enum Mapped {
    Motzkin(MotzkinPath),
    Dyck(DyckPath),
    Tree(KaryTree),
}

fn cmd_bijection(args: &BijectionArgs, format: Format) -> Result<(), Failure> {
    if args.verify_all {
        return bijection_verify_all(args, format);
    }
    let Some(direction) = args.direction else {
        return Err(Failure::usage("pass --direction with --input, or --verify-all"));
    };
    let text = read_input(args.input.as_deref())?;
    let mapped = match (args.name, direction) {
        (BijectionName::Rowsum, Direction::Fwd) => {
            let path: MotzkinPath = parse_object(&text, "a colored path")?;
            Mapped::Motzkin(rowsum_forward(&path).map_err(bad)?)
        }
        (BijectionName::Rowsum, Direction::Inv) => {
            let path: MotzkinPath = parse_object(&text, "a colored path")?;
            Mapped::Motzkin(rowsum_inverse(&path).map_err(bad)?)
        }
        (BijectionName::Dyck, Direction::Fwd) => {
            let path: MotzkinPath = parse_object(&text, "a colored path")?;
            let (k, a) = need_k_a(args)?;
            Mapped::Dyck(motzkin_to_dyck(&path, k, a).map_err(bad)?)
        }
        (BijectionName::Dyck, Direction::Inv) => {
            let path: DyckPath = parse_object(&text, "a k-step path")?;
            Mapped::Motzkin(dyck_to_motzkin(&path).map_err(bad)?)
        }
        (BijectionName::Peak0, Direction::Fwd) => {
            let path: MotzkinPath = parse_object(&text, "a colored path")?;
            let (k, a) = need_k_a(args)?;
            Mapped::Dyck(peak0_forward(&path, k, a).map_err(bad)?)
        }
        (BijectionName::Peak0, Direction::Inv) => {
            let path: DyckPath = parse_object(&text, "a k-step path")?;
            Mapped::Motzkin(peak0_inverse(&path).map_err(bad)?)
        }
        (BijectionName::Tree, Direction::Fwd) => {
            let tree: KaryTree = parse_object(&text, "a k-ary tree")?;
            Mapped::Motzkin(tree_to_motzkin(&tree))
        }
        (BijectionName::Tree, Direction::Inv) => {
            let path: MotzkinPath = parse_object(&text, "a colored path")?;
            let k =
                args.k.ok_or_else(|| Failure::usage("bijection tree --direction inv needs --k"))?;
            Mapped::Tree(motzkin_to_tree(&path, k).map_err(bad)?)
        }
    };
    print_mapped(&mapped, format)
}

fn need_k_a(args: &BijectionArgs) -> Result<(usize, usize), Failure> {
    let k = args.k.ok_or_else(|| Failure::usage("this bijection needs --k"))?;
    Ok((k, args.a.unwrap_or(0)))
}

fn read_input(input: Option<&str>) -> Result<String, Failure> {
    match input {
        None => Err(Failure::usage("pass --input FILE (or --input - for stdin)")),
        Some("-") => {
            let mut buffer = String::new();
            io::stdin()
                .read_to_string(&mut buffer)
                .map_err(|e| Failure::usage(format!("cannot read stdin: {e}")))?;
            Ok(buffer)
        }
        Some(path) => {
            fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {path}: {e}")))
        }
    }
}

fn parse_object<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> Result<T, Failure> {
    serde_json::from_str(text)
        .map_err(|e| Failure::usage(format!("cannot parse the input as {what}: {e}")))
}

fn print_mapped(mapped: &Mapped, format: Format) -> Result<(), Failure> {
    match format {
        Format::Text => {
            let text = match mapped {
                Mapped::Motzkin(path) => path.to_text(),
                Mapped::Dyck(path) => path.to_text(),
                Mapped::Tree(tree) => tree.to_text(),
            };
            println!("{text}");
        }
        Format::Json => {
            let value = match mapped {
                Mapped::Motzkin(path) => serde_json::to_value(path),
                Mapped::Dyck(path) => serde_json::to_value(path),
                Mapped::Tree(tree) => serde_json::to_value(tree),
            }
            .expect("mapped objects always serialize");
            println!(
                "{}",
                serde_json::to_string_pretty(&value).expect("mapped json always serializes")
            );
        }
        Format::Csv => {
            return Err(Failure::usage("--format csv does not apply to bijection output"));
        }
    }
    Ok(())
}

/// The outcome of an exhaustive bijection check.
struct Verified {
    total: usize,
    image_note: String,
    certificates: Vec<serde_json::Value>,
}

fn bijection_verify_all(args: &BijectionArgs, format: Format) -> Result<(), Failure> {
    let n = args.n.ok_or_else(|| Failure::usage("--verify-all needs --n"))?;
    cap_check("--n for --verify-all", n, ORACLE_CAP, args.unchecked)?;
    let verified = match args.name {
        BijectionName::Rowsum => {
            let alpha = args
                .alpha
                .clone()
                .ok_or_else(|| Failure::usage("bijection rowsum --verify-all needs --alpha"))?;
            if let Some(beta) = &args.beta {
                if *beta != alpha {
                    return Err(Failure::usage(
                        "the row-sum map needs matching tuples; omit --beta or repeat --alpha",
                    ));
                }
            }
            let scheme = ColorScheme::new(alpha.clone(), alpha).map_err(bad)?;
            verify_rowsum(&scheme, n)?
        }
        BijectionName::Dyck => {
            let (k, a) = need_k_a(args)?;
            verify_dyck(k, a, n)?
        }
        BijectionName::Peak0 => {
            let (k, a) = need_k_a(args)?;
            verify_peak0(k, a, n)?
        }
        BijectionName::Tree => {
            let k =
                args.k.ok_or_else(|| Failure::usage("bijection tree --verify-all needs --k"))?;
            verify_tree(k, n, &parse_arities(&args.arities)?)?
        }
    };
    match format {
        Format::Text => {
            println!("{}/{} round-trips OK", verified.total, verified.total);
            println!("{}", verified.image_note);
        }
        Format::Json => {
            let report = json!({
                "name": bijection_name(args.name),
                "n": n,
                "total": verified.total,
                "ok": verified.total,
                "image": verified.image_note,
                "certificates": verified.certificates,
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("report json always serializes")
            );
        }
        Format::Csv => {
            return Err(Failure::usage("--format csv does not apply to bijection output"));
        }
    }
    Ok(())
}

fn bijection_name(name: BijectionName) -> &'static str {
    match name {
        BijectionName::Rowsum => "rowsum",
        BijectionName::Dyck => "dyck",
        BijectionName::Peak0 => "peak0",
        BijectionName::Tree => "tree",
    }
}

fn roundtrip_failure(kind: &str, input: &str, forward: &str, back: &str) -> Failure {
    Failure::mismatch(format!(
        "{kind} round-trip broke: {input:?} mapped to {forward:?} but came back as {back:?}"
    ))
}

fn verify_rowsum(scheme: &ColorScheme, n: usize) -> Result<Verified, Failure> {
    let mut total = 0;
    let mut certificates = Vec::new();
    let mut image = BTreeSet::new();
    for m in 0..=n {
        for path in enumerate_motzkin(n, m, scheme) {
            let forward = rowsum_forward(&path).map_err(|e| {
                Failure::mismatch(format!("forward map failed on {:?}: {e}", path.to_text()))
            })?;
            let back = rowsum_inverse(&forward).map_err(|e| {
                Failure::mismatch(format!("inverse map failed on {:?}: {e}", forward.to_text()))
            })?;
            if back != path {
                return Err(roundtrip_failure(
                    "rowsum",
                    &path.to_text(),
                    &forward.to_text(),
                    &back.to_text(),
                ));
            }
            image.insert(forward.to_text());
            certificates.push(json!({ "input": path, "output": forward }));
            total += 1;
        }
    }
    if image.len() != total {
        return Err(Failure::mismatch("the forward map is not injective on the domain"));
    }
    let mut alpha = scheme.alpha().to_vec();
    alpha[0] += 1;
    let lifted = ColorScheme::new(alpha, scheme.beta().to_vec()).map_err(bad)?;
    let expected: BTreeSet<String> =
        enumerate_motzkin(n, 0, &lifted).into_iter().map(|p| p.to_text()).collect();
    if image != expected {
        return Err(Failure::mismatch(format!(
            "image mismatch: mapped {} paths but the lifted tuples admit {}",
            image.len(),
            expected.len()
        )));
    }
    Ok(Verified {
        total,
        image_note: format!(
            "image matches all {} height-0 paths over the lifted tuples",
            expected.len()
        ),
        certificates,
    })
}

fn verify_dyck(k: usize, a: usize, n: usize) -> Result<Verified, Failure> {
    let scheme = dyck_scheme(k, a).map_err(bad)?;
    let mut total = 0;
    let mut certificates = Vec::new();
    for m in 0..=n {
        let mut image = BTreeSet::new();
        for path in enumerate_motzkin(n, m, &scheme) {
            let forward = motzkin_to_dyck(&path, k, a).map_err(|e| {
                Failure::mismatch(format!("forward map failed on {:?}: {e}", path.to_text()))
            })?;
            let back = dyck_to_motzkin(&forward).map_err(|e| {
                Failure::mismatch(format!("inverse map failed on {:?}: {e}", forward.to_text()))
            })?;
            if back != path {
                return Err(roundtrip_failure(
                    "dyck",
                    &path.to_text(),
                    &forward.to_text(),
                    &back.to_text(),
                ));
            }
            image.insert(forward.to_text());
            certificates.push(json!({ "input": path, "output": forward }));
            total += 1;
        }
        let expected: BTreeSet<String> =
            enumerate_dyck(k, a, n, m).map_err(bad)?.into_iter().map(|p| p.to_text()).collect();
        if image != expected {
            return Err(Failure::mismatch(format!(
                "image mismatch at end height {m}: mapped {} paths, enumerated {}",
                image.len(),
                expected.len()
            )));
        }
    }
    Ok(Verified {
        total,
        image_note: format!("images match the enumerated k-step paths at every end height 0..={n}"),
        certificates,
    })
}

fn verify_peak0(k: usize, a: usize, n: usize) -> Result<Verified, Failure> {
    if n == 0 {
        return Err(Failure::usage("peak-residue domains need --n at least 1"));
    }
    let scheme = peak_scheme(k, a).map_err(bad)?;
    let mut total = 0;
    let mut certificates = Vec::new();
    for m in 0..=n {
        let mut image = BTreeSet::new();
        for path in enumerate_motzkin(n, m, &scheme) {
            let forward = peak0_forward(&path, k, a).map_err(|e| {
                Failure::mismatch(format!("forward map failed on {:?}: {e}", path.to_text()))
            })?;
            let back = peak0_inverse(&forward).map_err(|e| {
                Failure::mismatch(format!("inverse map failed on {:?}: {e}", forward.to_text()))
            })?;
            if back != path {
                return Err(roundtrip_failure(
                    "peak0",
                    &path.to_text(),
                    &forward.to_text(),
                    &back.to_text(),
                ));
            }
            image.insert(forward.to_text());
            certificates.push(json!({ "input": path, "output": forward }));
            total += 1;
        }
        let expected: BTreeSet<String> = enumerate_peak_parity(k, a, 0, n, m)
            .map_err(bad)?
            .into_iter()
            .map(|p| p.to_text())
            .collect();
        if image != expected {
            return Err(Failure::mismatch(format!(
                "image mismatch at end height {m}: mapped {} paths, enumerated {}",
                image.len(),
                expected.len()
            )));
        }
    }
    Ok(Verified {
        total,
        image_note: format!(
            "images match the enumerated residue-0 paths at every end height 0..={n}"
        ),
        certificates,
    })
}

fn verify_tree(k: usize, n: usize, restriction: &SRestriction) -> Result<Verified, Failure> {
    let trees = enumerate_trees(k, n, restriction).map_err(bad)?;
    let mut total = 0;
    let mut certificates = Vec::new();
    let mut image = BTreeSet::new();
    for tree in &trees {
        let forward = tree_to_motzkin(tree);
        let back = motzkin_to_tree(&forward, k).map_err(|e| {
            Failure::mismatch(format!("inverse map failed on {:?}: {e}", forward.to_text()))
        })?;
        if back != *tree {
            return Err(roundtrip_failure(
                "tree",
                &tree.to_text(),
                &forward.to_text(),
                &back.to_text(),
            ));
        }
        image.insert(forward.to_text());
        certificates.push(json!({ "input": tree, "output": forward }));
        total += 1;
    }
    if image.len() != total {
        return Err(Failure::mismatch("the forward map is not injective on the domain"));
    }
    let image_note = match restriction {
        SRestriction::All => {
            let ones = ColorScheme::new(vec![1; k - 1], vec![1; k - 1]).map_err(bad)?;
            let expected: BTreeSet<String> =
                enumerate_motzkin(n, 0, &ones).into_iter().map(|p| p.to_text()).collect();
            if image != expected {
                return Err(Failure::mismatch(format!(
                    "image mismatch: mapped {} trees but the tuples admit {} paths",
                    image.len(),
                    expected.len()
                )));
            }
            format!("image matches all {} height-0 paths over the all-ones tuples", expected.len())
        }
        SRestriction::Subset(_) => {
            let scheme = tree_scheme(k, restriction)?;
            let expected = triangle_from_az(&motzkin_az(&scheme), n + 1).map_err(bad)?.entry(n, 0);
            if expected != BigInt::from(total) {
                return Err(Failure::mismatch(format!(
                    "image mismatch: mapped {total} trees but the restricted triangle counts \
                     {expected}"
                )));
            }
            format!("image size matches the restricted triangle entry ({total})")
        }
    };
    Ok(Verified { total, image_note, certificates })
}

// -------------------------------------------------------------------- oeis

#[derive(Debug, Args)]
pub struct OeisArgs {
    /// Grid to regenerate, or "custom" with --spec.
    #[arg(long, value_enum)]
    pub scan: Option<ScanChoice>,

    /// JSON grid description for --scan custom (one grid or an array).
    #[arg(long)]
    pub spec: Option<PathBuf>,

    /// Sequence catalog in stripped format (falls back to env OEIS_DB).
    #[arg(long, alias = "oeis-db")]
    pub db: Option<PathBuf>,

    /// Fewest agreeing terms a match needs.
    #[arg(long, default_value_t = oeis::DEFAULT_MIN_MATCH)]
    pub min_len: usize,

    /// Largest stored-terms offset a match may start at.
    #[arg(long, default_value_t = oeis::DEFAULT_MAX_SHIFT)]
    pub max_shift: usize,

    /// Fetch one sequence's term file by id over HTTP (cached on disk).
    #[arg(long, alias = "oeis-fetch", value_name = "ID")]
    pub fetch: Option<String>,

    /// Directory for cached term files.
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScanChoice {
    Table5,
    Table6,
    Table7,
    Table8,
    Custom,
}

fn cmd_oeis(args: &OeisArgs, format: Format) -> Result<(), Failure> {
    match (&args.scan, &args.fetch) {
        (Some(choice), None) => oeis_scan(args, *choice, format),
        (None, Some(id)) => oeis_fetch(args, id, format),
        (Some(_), Some(_)) => Err(Failure::usage("pass either --scan or --fetch, not both")),
        (None, None) => Err(Failure::usage("pass --scan GRID or --fetch ID")),
    }
}

fn db_path(args: &OeisArgs) -> Option<PathBuf> {
    args.db.clone().or_else(|| std::env::var_os("OEIS_DB").map(PathBuf::from))
}

fn load_db(args: &OeisArgs) -> Result<SequenceDb, Failure> {
    let path = db_path(args)
        .ok_or_else(|| Failure::usage("no sequence catalog: pass --db FILE or set OEIS_DB"))?;
    let file = fs::File::open(&path)
        .map_err(|e| Failure::usage(format!("cannot open catalog {}: {e}", path.display())))?;
    load_stripped(io::BufReader::new(file)).map_err(bad)
}

fn oeis_scan(args: &OeisArgs, choice: ScanChoice, format: Format) -> Result<(), Failure> {
    let db = load_db(args)?;
    let specs: Vec<TableSpec> = match choice {
        ScanChoice::Custom => {
            let path = args
                .spec
                .as_ref()
                .ok_or_else(|| Failure::usage("--scan custom needs --spec FILE"))?;
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
            serde_json::from_str::<Vec<TableSpec>>(&text)
                .or_else(|_| serde_json::from_str::<TableSpec>(&text).map(|spec| vec![spec]))
                .map_err(|e| Failure::usage(format!("cannot parse {}: {e}", path.display())))?
        }
        ScanChoice::Table5 => oeis::builtin_tables("table5").map_err(bad)?,
        ScanChoice::Table6 => oeis::builtin_tables("table6").map_err(bad)?,
        ScanChoice::Table7 => oeis::builtin_tables("table7").map_err(bad)?,
        ScanChoice::Table8 => oeis::builtin_tables("table8").map_err(bad)?,
    };
    let mut scans: Vec<TableScan> = Vec::with_capacity(specs.len());
    for spec in &specs {
        scans.push(oeis::scan_table(spec, &db, args.min_len, args.max_shift).map_err(bad)?);
    }

    match format {
        Format::Text => {
            for (i, scan) in scans.iter().enumerate() {
                if i > 0 {
                    println!();
                }
                print!("{}", scan.to_markdown());
            }
        }
        Format::Csv => {
            for (i, scan) in scans.iter().enumerate() {
                if i > 0 {
                    println!();
                }
                println!("# {}", scan.spec.title);
                print!("{}", scan.to_csv());
            }
        }
        Format::Json => {
            println!(
                "{}",
                serde_json::to_string_pretty(&scans).expect("scan json always serializes")
            );
        }
    }

    let mut contradicted = 0;
    for scan in &scans {
        for cell in scan.flagged() {
            eprintln!(
                "note: {} cell ({}, {}): claim {} has no catalog entry to check ({:?})",
                scan.spec.title, cell.row, cell.col, cell.claim, cell.verdict
            );
        }
        for cell in scan.contradictions() {
            eprintln!(
                "contradiction: {} cell ({}, {}): computed {} but the table prints {}",
                scan.spec.title,
                cell.row,
                cell.col,
                cell.shown(),
                cell.claim
            );
            contradicted += 1;
        }
    }
    if contradicted > 0 {
        return Err(Failure::mismatch(format!(
            "{contradicted} cell(s) contradict the source table"
        )));
    }
    Ok(())
}

fn oeis_fetch(args: &OeisArgs, id: &str, format: Format) -> Result<(), Failure> {
    if !oeis::valid_id(id) {
        return Err(Failure::usage(format!(
            "{id:?} is not a valid sequence id (expected A followed by six digits)"
        )));
    }
    let cache_dir =
        args.cache_dir.clone().unwrap_or_else(|| std::env::temp_dir().join("motzkin-oeis-cache"));
    fs::create_dir_all(&cache_dir)
        .map_err(|e| Failure::usage(format!("cannot create {}: {e}", cache_dir.display())))?;
    let cache_file = cache_dir.join(format!("{id}.txt"));
    let (text, source) = if cache_file.exists() {
        let text = fs::read_to_string(&cache_file)
            .map_err(|e| Failure::usage(format!("cannot read {}: {e}", cache_file.display())))?;
        eprintln!("note: served from cache {}", cache_file.display());
        (text, "cache")
    } else {
        let base = std::env::var("OEIS_BASE_URL").unwrap_or_else(|_| DEFAULT_OEIS_BASE.to_string());
        let url = format!("{base}/{id}/b{}.txt", &id[1..]);
        let mut response = ureq::get(&url)
            .call()
            .map_err(|e| Failure::usage(format!("fetching {url} failed: {e}")))?;
        let body = response
            .body_mut()
            .read_to_string()
            .map_err(|e| Failure::usage(format!("reading {url} failed: {e}")))?;
        fs::write(&cache_file, &body)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", cache_file.display())))?;
        eprintln!("note: fetched {url} and cached at {}", cache_file.display());
        (body, "network")
    };
    let record = load_bfile(id, text.as_bytes()).map_err(bad)?;

    let matches = match db_path(args) {
        Some(_) => {
            let db = load_db(args)?;
            if record.terms().len() >= args.min_len {
                Some(
                    match_sequence(&db, record.terms(), args.min_len, args.max_shift)
                        .map_err(bad)?
                        .matches,
                )
            } else {
                None
            }
        }
        None => None,
    };

    match format {
        Format::Text => {
            let terms: Vec<String> = record.terms().iter().map(BigInt::to_string).collect();
            println!("{}: {}", record.id(), terms.join(","));
            if let Some(found) = &matches {
                if found.is_empty() {
                    println!("no catalog match");
                } else {
                    for m in found {
                        println!(
                            "match: {} (offset {}, {} terms)",
                            m.id,
                            m.kind.offset(),
                            m.matched_len
                        );
                    }
                }
            }
        }
        Format::Csv => {
            println!("n,term");
            for (i, term) in record.terms().iter().enumerate() {
                println!("{i},{term}");
            }
        }
        Format::Json => {
            let terms: Vec<String> = record.terms().iter().map(BigInt::to_string).collect();
            let mut object = BTreeMap::new();
            object.insert("id", json!(record.id()));
            object.insert("source", json!(source));
            object.insert("terms", json!(terms));
            if let Some(found) = &matches {
                object.insert("matches", serde_json::to_value(found).expect("match json"));
            }
            println!(
                "{}",
                serde_json::to_string_pretty(&object).expect("fetch json always serializes")
            );
        }
    }
    Ok(())
}
