//! `sgkit`: generate semigroups, compute aperiodic pointlikes with
//! certificates, emit decomposition certificates, and decide first-order
//! separability of regular languages.
//!
//! Exit codes: 0 success, 2 usage/input/resource errors, 3 inseparable,
//! 4 verification failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use sgkit::closure::transformation_closure;
use sgkit::io::{parse_sg, parse_tgen, print_sg};
use sgkit::krd::{format_tree, kr_decompose, verify_tree};
use sgkit::langsep::{decide_fo_separability, parse_dfa};
use sgkit::merge::{division_from_cover, verify_merge};
use sgkit::psat::{format_family, format_subset, henckell_pointlikes};
use sgkit::random::{seeded_merge_inputs, MERGE_CHECK_SEED};
use sgkit::selftest::run_selftest;
use sgkit::witness::pointlikes_with_certificate;
use sgkit::{Caps, Error, Semigroup};

#[derive(Parser)]
#[command(name = "sgkit", version, about = "finite semigroup toolkit")]
struct Cli {
    /// Closure cap (elements).
    #[arg(long, default_value_t = 100_000, global = true)]
    cap: usize,
    /// Subset-family cap (members).
    #[arg(long, default_value_t = 1 << 20, global = true)]
    family_cap: usize,
    /// Recursion depth cap.
    #[arg(long, default_value_t = 64, global = true)]
    depth_cap: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Close transformation generators (.tgen) into a semigroup (.sg).
    Gen { file: PathBuf },
    /// Print the aperiodic pointlike family of a semigroup (.sg).
    Pointlikes { file: PathBuf },
    /// Construct and audit the aperiodic witness for a semigroup (.sg).
    Witness { file: PathBuf },
    /// Emit a decomposition certificate for a semigroup (.sg) and verify it.
    Decompose { file: PathBuf },
    /// Verify the merge construction on the built-in and random fixtures.
    MergeCheck {
        /// Number of seeded random inputs.
        #[arg(long, default_value_t = 50)]
        random: usize,
        /// Maximum word length checked.
        #[arg(short = 'L', long, default_value_t = 6)]
        max_len: usize,
    },
    /// Decide first-order separability of two languages (.dfa files).
    Separate { first: PathBuf, second: PathBuf },
    /// Run the fixture-corpus acceptance suite.
    Selftest,
}

fn main() -> ExitCode {
    // Die quietly when stdout is closed early (e.g. piped into `head`).
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let caps = Caps { closure: cli.cap, family: cli.family_cap, depth: cli.depth_cap };
    let (name, result) = match &cli.cmd {
        Cmd::Gen { file } => ("gen", gen(file, caps)),
        Cmd::Pointlikes { file } => ("pointlikes", pointlikes(file, caps)),
        Cmd::Witness { file } => ("witness", witness(file, caps)),
        Cmd::Decompose { file } => ("decompose", decompose(file, caps)),
        Cmd::MergeCheck { random, max_len } => {
            ("merge-check", merge_check(*random, *max_len, caps))
        }
        Cmd::Separate { first, second } => ("separate", separate(first, second, caps)),
        Cmd::Selftest => ("selftest", selftest(caps)),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error[{name}]: {e}");
            ExitCode::from(2)
        }
    }
}

type CmdResult = sgkit::Result<ExitCode>;

fn read(file: &PathBuf) -> sgkit::Result<String> {
    std::fs::read_to_string(file).map_err(|e| Error::Unsupported(format!("{}: {e}", file.display())))
}

fn load_sg(file: &PathBuf) -> sgkit::Result<Semigroup> {
    parse_sg(&read(file)?)
}

fn gen(file: &PathBuf, caps: Caps) -> CmdResult {
    let maps = parse_tgen(&read(file)?)?;
    let generated = transformation_closure(&maps, caps.closure)?;
    print!("{}", print_sg(&generated.sg));
    Ok(ExitCode::SUCCESS)
}

fn pointlikes(file: &PathBuf, caps: Caps) -> CmdResult {
    let s = load_sg(file)?;
    let family = henckell_pointlikes(&s, caps)?;
    println!("{}", format_family(&s, family.members()));
    Ok(ExitCode::SUCCESS)
}

fn witness(file: &PathBuf, caps: Caps) -> CmdResult {
    let s = load_sg(file)?;
    let cert = pointlikes_with_certificate(&s, caps)?;
    let gen_names: Vec<String> = cert.generators.iter().map(|&g| s.label(g)).collect();
    println!("generators: {}", gen_names.join(" "));
    println!("|T| = {}", cert.witness.t.size());
    println!("depth = {}", cert.witness.depth);
    println!("k(phi) = {} (proof formula)", cert.k_proof);
    println!("k = {} (statement formula, 2^|A| term)", cert.k_statement);
    for (t, fiber) in cert.rel.fibers.iter().enumerate() {
        println!("fiber {t}: {} in-sat=yes", format_subset(&s, fiber));
    }
    println!("pointlike family size: {}", cert.family.len());
    println!("cross-validation: witness family equals fixpoint family");
    Ok(ExitCode::SUCCESS)
}

fn decompose(file: &PathBuf, caps: Caps) -> CmdResult {
    let s = load_sg(file)?;
    let tree = kr_decompose(&s, caps)?;
    print!("{}", format_tree(&tree));
    let report = verify_tree(&tree);
    println!(
        "verify: {} (sl-leaves={} group-leaves={:?} depth={})",
        if report.all_ok() { "ok" } else { "FAILED" },
        report.semilattice_leaves,
        report.group_leaf_sizes,
        report.depth
    );
    Ok(if report.all_ok() { ExitCode::SUCCESS } else { ExitCode::from(4) })
}

fn merge_check(random: usize, max_len: usize, caps: Caps) -> CmdResult {
    let mut ok = true;
    let lz2 = sgkit::fixtures::lz2();
    let u1 = sgkit::fixtures::u1();
    for (name, s, t1, t2) in [
        ("lz2-cover", &lz2, vec![0usize], vec![1usize]),
        ("u1-cover", &u1, vec![0], vec![1]),
    ] {
        let div = division_from_cover(s, &t1, &t2, caps)?;
        let report = verify_merge(div.merge.input, max_len, caps)?;
        ok &= report.passed();
        println!("{name}: {report}");
    }
    for (i, input) in seeded_merge_inputs(MERGE_CHECK_SEED, random, 3).into_iter().enumerate() {
        let report = verify_merge(input, max_len, caps)?;
        ok &= report.passed();
        println!("random-{i}: {report}");
    }
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(4) })
}

fn separate(first: &PathBuf, second: &PathBuf, caps: Caps) -> CmdResult {
    let d1 = parse_dfa(&read(first)?)?;
    let d2 = parse_dfa(&read(second)?)?;
    let sep = decide_fo_separability(&d1, &d2, caps)?;
    println!("{}", sep.render(&d1.alphabet));
    Ok(if sep.is_separable() { ExitCode::SUCCESS } else { ExitCode::from(3) })
}

fn selftest(caps: Caps) -> CmdResult {
    let report = run_selftest(caps);
    println!("{report}");
    Ok(if report.all_passed() { ExitCode::SUCCESS } else { ExitCode::from(4) })
}
