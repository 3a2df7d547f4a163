use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use mirror_certifier::algebra::{parse_poly, scalar_to_string, Side};
use mirror_certifier::cert::{verify_certificate, Certificate, Method, Verdict};
use mirror_certifier::game::Game;
use mirror_certifier::ideal::{
    build_invalid_set, build_mirror_ideal_generators, build_universal_relations, complete,
    CompletionOptions, Family, GeneratorSet, IdealError, RewriteSystem,
};
use mirror_certifier::sos::{
    certify, default_degree_bound, CertifyError, CertifyOptions, SideSelect,
};

const EXIT_OK: u8 = 0;
const EXIT_ERROR: u8 = 1;
const EXIT_UNKNOWN: u8 = 2;
const EXIT_NOT_APPLICABLE: u8 = 3;

/// Certifies the nonexistence of perfect commuting operator strategies for
/// regular mirror games.
///
/// Exit codes: 0 success / certificate found; 1 error or failed
/// verification; 2 no verdict (unknown); 3 not a mirror game / not regular.
#[derive(Parser)]
#[command(name = "mirror-certifier", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report mirror maps, regularity, classical value, and generator counts
    Inspect(InspectArgs),
    /// Search for a no-perfect-strategy certificate and emit it
    Certify(CertifyArgs),
    /// Re-verify a certificate against a game file by exact replay
    Verify(VerifyArgs),
    /// Print the normal form of a polynomial modulo a game's completed ideal
    Reduce(ReduceArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum RelationsArg {
    /// Star-closed side-ideal generators (mirror products + family relations)
    Mirror,
    /// Universal relations of both families only
    Universal,
    /// The empty system: reduction is the identity
    None,
}

#[derive(Args)]
struct InspectArgs {
    /// Game file (JSON)
    #[arg(long, env = "MIRROR_CERT_INPUT")]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "text", env = "MIRROR_CERT_FORMAT")]
    format: OutputFormat,
    /// Strategy-pair budget for the classical-value brute force
    #[arg(long, default_value_t = 10_000_000, env = "MIRROR_CERT_ENUM_BUDGET")]
    enum_budget: u128,
}

#[derive(Args)]
struct CertifyArgs {
    /// Game file (JSON)
    #[arg(long, env = "MIRROR_CERT_INPUT")]
    input: PathBuf,
    /// Which side ideal to try (1, 2, or both: side 1 first, then side 2)
    #[arg(long, value_enum, default_value = "both", env = "MIRROR_CERT_SIDE")]
    side: SideArg,
    /// Completion degree bound D (>= 2); default 2*max(|A|,|B|)+2
    #[arg(long, env = "MIRROR_CERT_DEGREE_BOUND")]
    degree_bound: Option<usize>,
    /// Largest SOS basis degree d (>= 1); default D-1
    #[arg(long, env = "MIRROR_CERT_SOS_MAX_DEGREE")]
    sos_max_degree: Option<usize>,
    /// SDP feasibility tolerance (> 0)
    #[arg(long, default_value_t = 1e-8, env = "MIRROR_CERT_TOL")]
    tol: f64,
    /// Cap on the monomial basis size
    #[arg(long, default_value_t = 2000, env = "MIRROR_CERT_BASIS_CAP")]
    basis_cap: usize,
    /// SDP iteration cap
    #[arg(long, default_value_t = 100_000, env = "MIRROR_CERT_ITER_CAP")]
    iter_cap: usize,
    /// Cap on completion rule growth
    #[arg(long, default_value_t = 20_000, env = "MIRROR_CERT_RULE_CAP")]
    rule_cap: usize,
    /// Largest denominator tried when rounding Gram matrices
    #[arg(long, default_value_t = 1_000_000, env = "MIRROR_CERT_DENOMINATOR_BOUND")]
    denominator_bound: u64,
    #[arg(long, value_enum, default_value = "text", env = "MIRROR_CERT_FORMAT")]
    format: OutputFormat,
    /// Write the certificate document (JSON) to this path
    #[arg(long, env = "MIRROR_CERT_OUT")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Game file (JSON)
    #[arg(long, env = "MIRROR_CERT_INPUT")]
    input: PathBuf,
    /// Certificate document to re-verify
    #[arg(long, env = "MIRROR_CERT_CERTIFICATE")]
    certificate: PathBuf,
}

#[derive(Args)]
struct ReduceArgs {
    /// Game file (JSON)
    #[arg(long, env = "MIRROR_CERT_INPUT")]
    input: PathBuf,
    /// Polynomial in the textual syntax, e.g. "e1[0,0]+e1[0,1]-1"
    poly: String,
    /// Side ideal for --relations mirror
    #[arg(long, value_enum, default_value = "1", env = "MIRROR_CERT_SIDE")]
    side: SideArg,
    /// Which relation set to complete and reduce by
    #[arg(long, value_enum, default_value = "mirror")]
    relations: RelationsArg,
    #[arg(long, env = "MIRROR_CERT_DEGREE_BOUND")]
    degree_bound: Option<usize>,
    #[arg(long, default_value_t = 20_000, env = "MIRROR_CERT_RULE_CAP")]
    rule_cap: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Inspect(a) => cmd_inspect(&a),
        Command::Certify(a) => cmd_certify(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::Reduce(a) => cmd_reduce(&a),
    };
    match code {
        Ok(c) => ExitCode::from(c),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn load_game(path: &PathBuf) -> Result<Game> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read game file {}", path.display()))?;
    Game::from_json_str(&text).with_context(|| format!("invalid game file {}", path.display()))
}

#[derive(Serialize)]
struct GeneratorCounts {
    total: usize,
    by_kind: Vec<(String, usize)>,
}

#[derive(Serialize)]
struct InspectReport {
    sha256: String,
    nx: usize,
    ny: usize,
    na: usize,
    nb: usize,
    mirror: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    xi: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    eta: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    regular: Option<bool>,
    classical_value: String,
    perfect_deterministic: bool,
    invalid_set_size: usize,
    universal_both: GeneratorCounts,
    #[serde(skip_serializing_if = "Option::is_none")]
    side1: Option<GeneratorCounts>,
    #[serde(skip_serializing_if = "Option::is_none")]
    side2: Option<GeneratorCounts>,
}

fn counts(set: &GeneratorSet) -> GeneratorCounts {
    GeneratorCounts {
        total: set.len(),
        by_kind: set
            .counts_by_kind()
            .into_iter()
            .map(|(k, n)| (k.label().to_string(), n))
            .collect(),
    }
}

fn cmd_inspect(args: &InspectArgs) -> Result<u8> {
    let game = load_game(&args.input)?;
    let maps = game.find_mirror_maps();
    let classical = game.classical_report(args.enum_budget)?;
    let (side1, side2) = match &maps {
        Some(m) if m.regular => (
            build_mirror_ideal_generators(&game, m, Side::Alice).ok(),
            build_mirror_ideal_generators(&game, m, Side::Bob).ok(),
        ),
        _ => (None, None),
    };
    let report = InspectReport {
        sha256: game.sha256_hex(),
        nx: game.nx(),
        ny: game.ny(),
        na: game.na(),
        nb: game.nb(),
        mirror: maps.is_some(),
        xi: maps.as_ref().map(|m| m.xi.clone()),
        eta: maps.as_ref().map(|m| m.eta.clone()),
        regular: maps.as_ref().map(|m| m.regular),
        classical_value: scalar_to_string(&classical.value),
        perfect_deterministic: classical.perfect,
        invalid_set_size: build_invalid_set(&game).len(),
        universal_both: counts(&build_universal_relations(&game, Family::Both)),
        side1: side1.as_ref().map(counts),
        side2: side2.as_ref().map(counts),
    };
    match args.format {
        OutputFormat::Json => println!("{}", serde_json::to_string_pretty(&report)?),
        OutputFormat::Text => {
            println!("game: {}", args.input.display());
            println!("sha256: {}", report.sha256);
            println!(
                "sizes: |X|={} |Y|={} |A|={} |B|={}",
                report.nx, report.ny, report.na, report.nb
            );
            match &maps {
                None => println!("mirror: no (some question has no valid mirror candidate)"),
                Some(m) => {
                    println!("mirror: yes");
                    println!("xi:  {}", render_map(&m.xi));
                    println!("eta: {}", render_map(&m.eta));
                    println!("regular: {}", if m.regular { "yes" } else { "no" });
                }
            }
            println!(
                "classical value: {} (perfect deterministic strategy: {})",
                report.classical_value,
                if report.perfect_deterministic {
                    "yes"
                } else {
                    "no"
                }
            );
            println!("invalid set: {} words", report.invalid_set_size);
            print_counts(
                "universal relations (both families)",
                &report.universal_both,
            );
            if let Some(c) = &report.side1 {
                print_counts("side-1 ideal generators", c);
            }
            if let Some(c) = &report.side2 {
                print_counts("side-2 ideal generators", c);
            }
        }
    }
    Ok(EXIT_OK)
}

fn render_map(map: &[usize]) -> String {
    map.iter()
        .enumerate()
        .map(|(i, v)| format!("{i}->{v}"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn print_counts(label: &str, c: &GeneratorCounts) {
    let parts: Vec<String> = c.by_kind.iter().map(|(k, n)| format!("{k}={n}")).collect();
    println!("{label}: {} ({} total)", parts.join(" "), c.total);
}

fn certify_exit_code(err: &CertifyError) -> u8 {
    match err {
        CertifyError::NotMirror => EXIT_NOT_APPLICABLE,
        CertifyError::Ideal(IdealError::NotRegular) => EXIT_NOT_APPLICABLE,
        _ => EXIT_ERROR,
    }
}

fn cmd_certify(args: &CertifyArgs) -> Result<u8> {
    if let Some(d) = args.degree_bound {
        if d < 2 {
            bail!("--degree-bound must be at least 2");
        }
    }
    if let Some(d) = args.sos_max_degree {
        if d < 1 {
            bail!("--sos-max-degree must be at least 1");
        }
    }
    if !(args.tol > 0.0) {
        bail!("--tol must be positive");
    }
    let game = load_game(&args.input)?;
    let opts = CertifyOptions {
        side: match args.side {
            SideArg::One => SideSelect::One,
            SideArg::Two => SideSelect::Two,
            SideArg::Both => SideSelect::Both,
        },
        degree_bound: args.degree_bound,
        sos_max_degree: args.sos_max_degree,
        tol: args.tol,
        iter_cap: args.iter_cap,
        basis_cap: args.basis_cap,
        rule_cap: args.rule_cap,
        denominator_bound: args.denominator_bound,
    };
    let cert = match certify(&game, &opts) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("certify: {e}");
            return Ok(certify_exit_code(&e));
        }
    };
    if let Some(path) = &args.out {
        fs::write(path, cert.to_json())
            .with_context(|| format!("cannot write certificate to {}", path.display()))?;
    }
    match args.format {
        OutputFormat::Json => println!("{}", cert.to_json()),
        OutputFormat::Text => {
            let verdict = match cert.verdict {
                Verdict::NoPerfectStrategy => "no-perfect-strategy",
                Verdict::Unknown => "unknown",
            };
            println!("verdict: {verdict}");
            if let Some(method) = cert.method {
                println!(
                    "method: {}",
                    match method {
                        Method::GbMembership => "gb-membership",
                        Method::Sos => "sos",
                    }
                );
            }
            if let Some(side) = cert.side {
                println!("side: {side}");
            }
            println!("xi:  {}", render_map(&cert.mirror_maps.xi));
            println!("eta: {}", render_map(&cert.mirror_maps.eta));
            println!(
                "degree bound: {} (sos degrees up to {})",
                cert.degree_bound, cert.sos_max_degree
            );
            if let Some(d) = cert.sos_degree {
                println!("sos degree: {d}");
            }
            if let Some(w) = &cert.witness {
                println!(
                    "witness: {} generators, {} squares, {} combination terms",
                    w.generators.len(),
                    w.sos_terms.len(),
                    w.combination.len()
                );
            }
            if let Some(path) = &args.out {
                println!("certificate written to {}", path.display());
            }
        }
    }
    Ok(match cert.verdict {
        Verdict::NoPerfectStrategy => EXIT_OK,
        Verdict::Unknown => EXIT_UNKNOWN,
    })
}

fn cmd_verify(args: &VerifyArgs) -> Result<u8> {
    let game = load_game(&args.input)?;
    let text = fs::read_to_string(&args.certificate)
        .with_context(|| format!("cannot read certificate {}", args.certificate.display()))?;
    let cert = match Certificate::from_json_str(&text) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("verify: {e}");
            return Ok(EXIT_ERROR);
        }
    };
    match verify_certificate(&game, &cert) {
        Ok(()) => {
            println!("verify: ok");
            Ok(EXIT_OK)
        }
        Err(e) => {
            eprintln!("verify: FAILED: {e}");
            Ok(EXIT_ERROR)
        }
    }
}

fn cmd_reduce(args: &ReduceArgs) -> Result<u8> {
    if let Some(d) = args.degree_bound {
        if d < 2 {
            bail!("--degree-bound must be at least 2");
        }
    }
    let game = load_game(&args.input)?;
    let poly = parse_poly(&args.poly).map_err(|e| anyhow::anyhow!("polynomial: {e}"))?;
    for (w, _) in poly.terms() {
        for s in w.symbols() {
            let (nq, na) = match s.side {
                Side::Alice => (game.nx(), game.na()),
                Side::Bob => (game.ny(), game.nb()),
            };
            if s.question as usize >= nq || s.answer as usize >= na {
                bail!("symbol {s} out of range for this game");
            }
        }
    }
    let degree_bound = args
        .degree_bound
        .unwrap_or_else(|| default_degree_bound(&game));
    let completion_opts = CompletionOptions {
        degree_bound,
        rule_cap: args.rule_cap,
    };
    let rs = match args.relations {
        RelationsArg::None => RewriteSystem::empty(game.alice_symbols(), degree_bound),
        RelationsArg::Universal => {
            let gens = build_universal_relations(&game, Family::Both);
            let mut symbols = game.alice_symbols();
            symbols.extend(game.bob_symbols());
            complete(&gens, symbols, &completion_opts)?
        }
        RelationsArg::Mirror => {
            let side = match args.side {
                SideArg::One => Side::Alice,
                SideArg::Two => Side::Bob,
                SideArg::Both => bail!("--relations mirror requires --side 1 or --side 2"),
            };
            let m = match game.find_mirror_maps() {
                Some(m) => m,
                None => {
                    eprintln!("reduce: the game admits no mirror maps");
                    return Ok(EXIT_NOT_APPLICABLE);
                }
            };
            let gens = match build_mirror_ideal_generators(&game, &m, side) {
                Ok(g) => g,
                Err(IdealError::NotRegular) => {
                    eprintln!("reduce: {}", IdealError::NotRegular);
                    return Ok(EXIT_NOT_APPLICABLE);
                }
                Err(e) => return Err(e.into()),
            };
            let symbols = match side {
                Side::Alice => game.alice_symbols(),
                Side::Bob => game.bob_symbols(),
            };
            complete(&gens, symbols, &completion_opts)?
        }
    };
    if rs.contains_one() {
        eprintln!(
            "note: the completed system contains the constant rule; every polynomial reduces to 0"
        );
    }
    println!("{}", rs.reduce(&poly));
    Ok(EXIT_OK)
}
