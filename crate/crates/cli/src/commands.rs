//! Subcommands.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use tilesum_core::engine::{
    build_accepting_tiling, claims_audit, forced_search, verify_zero, Certificate, SearchOutcome,
};
use tilesum_core::group::{certificate_from_witness, make_submonoid_instance, SubmonoidVerifier};
use tilesum_core::rational::{
    rational_instance, rational_member_bounded, regex_to_nfa, RationalSearch,
};
use tilesum_core::semimodule::{
    member_bounded, subset_sum_bounded, tiling_to_instance, tiling_to_subset_sum, Search,
    SemimoduleInstance,
};
use tilesum_core::tiling::{compile_tiles, initial_map};
use tilesum_core::tm::{normalize, run, validate, RunOutcome};
use tilesum_core::{EdgeMap, Names, Ring, SymbolId, TilingSystem, TuringMachine, Window};

use crate::formats::{
    read_json, read_machine, to_json, CertificateFile, ColorReader, EdgeMapFile, FlavorTag,
    Instance, InstanceFile, NfaFile, RationalFile, SubmonoidFile, TilingFile, TmFile, WindowArg,
    WitnessFile,
};
use crate::render;
use crate::UsageError;

/// Outcome of a command that ran to completion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
}

#[derive(Debug, Parser)]
#[command(
    name = "tilesum",
    version,
    about = "Turing machines, tiling sums and group membership certificates"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Turing machine files.
    #[command(subcommand)]
    Tm(TmCommand),
    /// Tiling systems, initial maps and certificates.
    #[command(subcommand)]
    Tile(TileCommand),
    /// Build instances of the algebraic problems.
    #[command(subcommand)]
    Reduce(ReduceCommand),
    /// Bounded searches for witnesses.
    #[command(subcommand)]
    Solve(SolveCommand),
    /// Draw a certificate or an edge map.
    Render(RenderArgs),
}

#[derive(Debug, Args)]
pub struct MachineArg {
    /// Machine file (JSON).
    #[arg(long = "tm")]
    pub tm: PathBuf,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Machine file (JSON).
    #[arg(long = "tm")]
    pub tm: PathBuf,
    /// Input word: comma separated symbol names, or one symbol per character.
    #[arg(long, allow_hyphen_values = true)]
    pub input: String,
}

#[derive(Debug, Args)]
pub struct OutArg {
    /// Output file; standard output when omitted.
    #[arg(short = 'o', long = "out")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum TmCommand {
    /// Check the machine's structural invariants.
    Validate(MachineArg),
    /// Rewrite the machine so every accepting run ends on a blank tape.
    Normalize {
        #[command(flatten)]
        machine: MachineArg,
        #[command(flatten)]
        out: OutArg,
    },
    /// Simulate the machine.
    Run {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, default_value_t = 10_000)]
        fuel: u64,
        /// Print every configuration of an accepting run.
        #[arg(long)]
        trace: bool,
    },
}

#[derive(Debug, Args)]
pub struct RingArg {
    /// Coefficient ring: `Z` or `Zmod:n`.
    #[arg(long, default_value = "Z")]
    pub ring: Ring,
}

#[derive(Debug, Subcommand)]
pub enum TileCommand {
    /// Compile the machine's tiling system.
    Compile {
        #[command(flatten)]
        machine: MachineArg,
        #[command(flatten)]
        out: OutArg,
    },
    /// The initial edge map of an input word.
    Initial {
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        ring: RingArg,
        #[command(flatten)]
        out: OutArg,
    },
    /// Build the certificate of an accepting run.
    Build {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, default_value_t = 10_000)]
        fuel: u64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Check that a certificate cancels the initial map.
    Verify {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        cert: PathBuf,
        #[command(flatten)]
        ring: RingArg,
    },
    /// Search for a certificate using tile colours only.
    Search(SearchArgs),
    /// Report placements that break the shape of constructed certificates.
    Audit {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        cert: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// Machine file; compiled to tiles before searching.
    #[arg(long = "tm", requires = "input", conflicts_with_all = ["tiles", "map"])]
    pub tm: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    pub input: Option<String>,
    /// Tiling system file, used with `--map` instead of `--tm`.
    #[arg(long, requires = "map")]
    pub tiles: Option<PathBuf>,
    /// Initial edge map file.
    #[arg(long, requires = "tiles")]
    pub map: Option<PathBuf>,
    #[arg(long, default_value_t = 8)]
    pub max_m: i64,
    #[arg(long, default_value_t = 64)]
    pub max_rows: i64,
    #[command(flatten)]
    pub out: OutArg,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FlavorArg {
    Wreath,
    FreeMetabelian,
}

#[derive(Debug, Subcommand)]
pub enum ReduceCommand {
    /// Tiling sum to semimodule membership.
    Semimodule {
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        ring: RingArg,
        #[command(flatten)]
        out: OutArg,
    },
    /// Tiling sum to subset sum over a finite ring.
    SubsetSum {
        #[command(flatten)]
        run: RunArgs,
        /// `Zmod:n`.
        #[arg(long)]
        ring: Ring,
        #[command(flatten)]
        out: OutArg,
    },
    /// Semimodule membership over `Z` to submonoid membership.
    Submonoid {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, value_enum)]
        flavor: FlavorArg,
        /// Transport this witness to a generator sequence and check it.
        #[arg(long, requires = "certificate_out")]
        witness: Option<PathBuf>,
        #[arg(long, requires = "witness")]
        certificate_out: Option<PathBuf>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Subset sum to rational subset membership.
    Rational {
        #[arg(long)]
        instance: PathBuf,
        /// Also write the automaton of the language.
        #[arg(long)]
        nfa: Option<PathBuf>,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long)]
    pub instance: PathBuf,
    /// Shift window `x0,y0,x1,y1`.
    #[arg(long, allow_hyphen_values = true)]
    pub window: Option<WindowArg>,
    /// Derive the window from this machine's accepting run when `--window` is absent.
    #[arg(long = "tm", requires = "input")]
    pub tm: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    pub input: Option<String>,
    #[arg(long, default_value_t = 10_000)]
    pub fuel: u64,
    #[command(flatten)]
    pub out: OutArg,
}

#[derive(Debug, Subcommand)]
pub enum SolveCommand {
    /// Semimodule membership within a shift window
    Semimodule {
        #[command(flatten)]
        bounds: BoundsArgs,
        #[arg(long, default_value_t = 1)]
        max_coeff: u64,
    },
    /// Subset sum within a shift window
    SubsetSum {
        #[command(flatten)]
        bounds: BoundsArgs,
    },
    /// Rational subset membership up to a word length
    Rational {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        max_len: usize,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Format {
    Ascii,
    Svg,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    #[arg(long, conflicts_with = "map", required_unless_present = "map")]
    pub cert: Option<PathBuf>,
    #[arg(long)]
    pub map: Option<PathBuf>,
    /// Defaults to SVG for a `.svg` output file and ASCII otherwise.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[command(flatten)]
    pub out: OutArg,
}

fn emit(out: &mut dyn Write, target: &OutArg, content: &str) -> Result<()> {
    match &target.out {
        Some(path) => {
            fs::write(path, content).with_context(|| format!("writing {}", path.display()))
        }
        None => out.write_all(content.as_bytes()).context("writing output"),
    }
}

fn parse_word(tm: &TuringMachine, text: &str) -> Result<Vec<SymbolId>> {
    let parts: Vec<String> = if text.contains(',') {
        text.split(',').map(|s| s.trim().to_string()).collect()
    } else {
        text.chars().map(String::from).collect()
    };
    let refs: Vec<&str> = parts.iter().map(String::as_str).collect();
    Ok(tm.word(&refs)?)
}

fn load_run(args: &RunArgs) -> Result<(TuringMachine, Vec<SymbolId>)> {
    let tm = read_machine(&args.tm)?;
    let w = parse_word(&tm, &args.input)?;
    Ok((tm, w))
}

fn load_certificate(path: &Path, names: &Names, ts: Option<&TilingSystem>) -> Result<Certificate> {
    let mut names = names.clone();
    let mut r = ColorReader {
        names: &mut names,
        intern: false,
    };
    read_json::<CertificateFile>(path)?
        .to_certificate(&mut r, ts)
        .with_context(|| format!("certificate in {}", path.display()))
}

fn verdict(yes: bool) -> Verdict {
    if yes {
        Verdict::Yes
    } else {
        Verdict::No
    }
}

pub fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<Verdict> {
    match cli.command {
        Command::Tm(c) => tm_command(c, out),
        Command::Tile(c) => tile_command(c, out),
        Command::Reduce(c) => reduce_command(c, out),
        Command::Solve(c) => solve_command(c, out),
        Command::Render(args) => render_command(args, out),
    }
}

fn tm_command(c: TmCommand, out: &mut dyn Write) -> Result<Verdict> {
    match c {
        TmCommand::Validate(m) => {
            let tm = read_machine(&m.tm)?;
            let violations = validate(&tm);
            for v in &violations {
                writeln!(out, "{}", v.describe(tm.names()))?;
            }
            if violations.is_empty() {
                writeln!(out, "ok")?;
            }
            Ok(verdict(violations.is_empty()))
        }
        TmCommand::Normalize { machine, out: o } => {
            let tm = read_machine(&machine.tm)?;
            emit(out, &o, &to_json(&TmFile::from_machine(&normalize(&tm))))?;
            Ok(Verdict::Yes)
        }
        TmCommand::Run {
            run: r,
            fuel,
            trace,
        } => {
            let (tm, w) = load_run(&r)?;
            match run(&tm, &w, fuel)? {
                RunOutcome::Accepted(t) => {
                    if trace {
                        for c in &t.configs {
                            let names = tm.names();
                            let cells: Vec<String> = c
                                .trimmed(tm.blank())
                                .tape
                                .iter()
                                .enumerate()
                                .map(|(i, &a)| {
                                    if i == c.head {
                                        format!("[{} {}]", names.state(c.state), names.symbol(a))
                                    } else {
                                        names.symbol(a).to_string()
                                    }
                                })
                                .collect();
                            writeln!(out, "{}", cells.join(" "))?;
                        }
                    }
                    writeln!(
                        out,
                        "accepted after {} steps using {} cells",
                        t.steps, t.space
                    )?;
                    Ok(Verdict::Yes)
                }
                RunOutcome::OutOfFuel => {
                    writeln!(out, "out of fuel after {fuel} steps")?;
                    Ok(Verdict::No)
                }
                RunOutcome::Stuck(c) => {
                    writeln!(
                        out,
                        "halted without accepting in state {}",
                        tm.names().state(c.state)
                    )?;
                    Ok(Verdict::No)
                }
            }
        }
    }
}

fn tile_command(c: TileCommand, out: &mut dyn Write) -> Result<Verdict> {
    match c {
        TileCommand::Compile { machine, out: o } => {
            let tm = read_machine(&machine.tm)?;
            emit(
                out,
                &o,
                &to_json(&TilingFile::from_system(&compile_tiles(&tm))),
            )?;
            Ok(Verdict::Yes)
        }
        TileCommand::Initial {
            run: r,
            ring,
            out: o,
        } => {
            let (tm, w) = load_run(&r)?;
            let f0 = initial_map(&tm, &w, ring.ring)?;
            emit(out, &o, &to_json(&EdgeMapFile::from_map(&f0, tm.names())))?;
            Ok(Verdict::Yes)
        }
        TileCommand::Build {
            run: r,
            fuel,
            out: o,
        } => {
            let (tm, w) = load_run(&r)?;
            let cert = build_accepting_tiling(&tm, &w, fuel)?;
            emit(
                out,
                &o,
                &to_json(&CertificateFile::from_certificate(&cert, tm.names())),
            )?;
            if o.out.is_some() {
                writeln!(
                    out,
                    "{} placements, m = {}, {} rows",
                    cert.placements.len(),
                    cert.width_m,
                    cert.height_n
                )?;
            }
            Ok(Verdict::Yes)
        }
        TileCommand::Verify { run: r, cert, ring } => {
            let (tm, w) = load_run(&r)?;
            let ts = compile_tiles(&tm);
            let cert = load_certificate(&cert, tm.names(), Some(&ts))?;
            let f0 = initial_map(&tm, &w, ring.ring)?;
            let ok = verify_zero(&f0, &cert, &ts)?;
            writeln!(
                out,
                "{}",
                if ok {
                    "verified"
                } else {
                    "not a zero tiling sum"
                }
            )?;
            Ok(verdict(ok))
        }
        TileCommand::Search(args) => search_command(args, out),
        TileCommand::Audit { run: r, cert } => {
            let (tm, w) = load_run(&r)?;
            let ts = compile_tiles(&tm);
            let cert = load_certificate(&cert, tm.names(), Some(&ts))?;
            let f0 = initial_map(&tm, &w, Ring::Integers)?;
            let report = claims_audit(&cert, &f0);
            for flag in &report.flags {
                writeln!(out, "{flag:?}")?;
            }
            if report.is_clean() {
                writeln!(out, "clean")?;
            }
            Ok(verdict(report.is_clean()))
        }
    }
}

fn search_command(args: SearchArgs, out: &mut dyn Write) -> Result<Verdict> {
    let (ts, f0): (TilingSystem, EdgeMap) = match (&args.tm, &args.tiles, &args.map) {
        (Some(tm), None, None) => {
            let tm = read_machine(tm)?;
            let w = parse_word(&tm, args.input.as_deref().unwrap_or_default())?;
            let f0 = initial_map(&tm, &w, Ring::Integers)?;
            (compile_tiles(&tm), f0)
        }
        (None, Some(tiles), Some(map)) => {
            let ts = read_json::<TilingFile>(tiles)?.to_system()?;
            let mut names = ts.names().clone();
            let mut r = ColorReader {
                names: &mut names,
                intern: false,
            };
            let f0 = read_json::<EdgeMapFile>(map)?.to_map(&mut r)?;
            (ts, f0)
        }
        _ => {
            return Err(
                UsageError("give either --tm and --input, or --tiles and --map".into()).into(),
            )
        }
    };
    match forced_search(&ts, &f0, args.max_m, args.max_rows)? {
        SearchOutcome::Found(cert) => {
            emit(
                out,
                &args.out,
                &to_json(&CertificateFile::from_certificate(&cert, ts.names())),
            )?;
            if args.out.out.is_some() {
                writeln!(out, "found: m = {}, {} rows", cert.width_m, cert.height_n)?;
            }
            Ok(Verdict::Yes)
        }
        SearchOutcome::NoneWithinBounds => {
            writeln!(
                out,
                "no certificate with m <= {} and at most {} rows",
                args.max_m, args.max_rows
            )?;
            Ok(Verdict::No)
        }
    }
}

fn reduce_command(c: ReduceCommand, out: &mut dyn Write) -> Result<Verdict> {
    match c {
        ReduceCommand::Semimodule {
            run: r,
            ring,
            out: o,
        } => {
            let (tm, w) = load_run(&r)?;
            let f0 = initial_map(&tm, &w, ring.ring)?;
            let inst = tiling_to_instance(&compile_tiles(&tm), &f0);
            emit(out, &o, &to_json(&InstanceFile::from_semimodule(&inst)))?;
            Ok(Verdict::Yes)
        }
        ReduceCommand::SubsetSum {
            run: r,
            ring,
            out: o,
        } => {
            if ring == Ring::Integers {
                return Err(UsageError("subset sum needs a finite ring `Zmod:n`".into()).into());
            }
            let (tm, w) = load_run(&r)?;
            let f0 = initial_map(&tm, &w, ring)?;
            let (inst, _) = tiling_to_subset_sum(&compile_tiles(&tm), &f0)?;
            emit(out, &o, &to_json(&InstanceFile::from_subset_sum(&inst)))?;
            Ok(Verdict::Yes)
        }
        ReduceCommand::Submonoid {
            instance,
            flavor,
            witness,
            certificate_out,
            out: o,
        } => {
            let inst = read_semimodule(&instance)?;
            let flavor = match flavor {
                FlavorArg::Wreath => FlavorTag::Wreath,
                FlavorArg::FreeMetabelian => FlavorTag::FreeMetabelian,
            };
            let sub = make_submonoid_instance(&inst, flavor.into())?;
            emit(out, &o, &to_json(&SubmonoidFile::from_instance(&sub)))?;
            if let (Some(wpath), Some(cpath)) = (witness, certificate_out) {
                let wit = read_json::<WitnessFile>(&wpath)?.to_witness()?;
                let cert = certificate_from_witness(&sub, &wit);
                fs::write(&cpath, to_json(&cert))
                    .with_context(|| format!("writing {}", cpath.display()))?;
                let ok = SubmonoidVerifier::new(&sub)?.verify(&cert)?;
                writeln!(
                    out,
                    "certificate of {} factors {}",
                    cert.len(),
                    if ok { "verified" } else { "rejected" }
                )?;
                return Ok(verdict(ok));
            }
            Ok(Verdict::Yes)
        }
        ReduceCommand::Rational {
            instance,
            nfa,
            out: o,
        } => {
            let inst = match read_json::<InstanceFile>(&instance)?.to_instance()? {
                Instance::SubsetSum(s) => s,
                Instance::Semimodule(_) => {
                    bail!("{} is not a subset sum instance", instance.display())
                }
            };
            let rat = rational_instance(&inst)?;
            emit(out, &o, &to_json(&RationalFile::from_instance(&rat)))?;
            if let Some(path) = nfa {
                let text = to_json(&NfaFile::from_nfa(&regex_to_nfa(&rat.expr)));
                fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
            }
            Ok(Verdict::Yes)
        }
    }
}

fn read_semimodule(path: &Path) -> Result<SemimoduleInstance> {
    Ok(match read_json::<InstanceFile>(path)?.to_instance()? {
        Instance::Semimodule(s) => s,
        Instance::SubsetSum(s) => s.as_semimodule(),
    })
}

fn window_for(b: &BoundsArgs) -> Result<Window> {
    if let Some(w) = b.window {
        return Ok(w.0);
    }
    let (Some(tm), Some(input)) = (&b.tm, &b.input) else {
        return Err(UsageError("give --window, or --tm and --input to derive one".into()).into());
    };
    let tm = read_machine(tm)?;
    let w = parse_word(&tm, input)?;
    let cert = build_accepting_tiling(&tm, &w, b.fuel)
        .map_err(|e| anyhow!("cannot derive a window: {e}"))?;
    Ok(Window::new(0, 0, cert.width_m, cert.height_n))
}

fn report_search(out: &mut dyn Write, target: &OutArg, s: Search) -> Result<Verdict> {
    match s {
        Search::Found(w) => {
            emit(out, target, &to_json(&WitnessFile::from_witness(&w)))?;
            if target.out.is_some() {
                writeln!(out, "member: witness with {} terms", w.terms.len())?;
            }
            Ok(Verdict::Yes)
        }
        Search::NoneWithinBounds => {
            writeln!(out, "no witness within bounds")?;
            Ok(Verdict::No)
        }
    }
}

fn solve_command(c: SolveCommand, out: &mut dyn Write) -> Result<Verdict> {
    match c {
        SolveCommand::Semimodule { bounds, max_coeff } => {
            let window = window_for(&bounds)?;
            let inst = read_semimodule(&bounds.instance)?;
            report_search(out, &bounds.out, member_bounded(&inst, window, max_coeff))
        }
        SolveCommand::SubsetSum { bounds } => {
            let window = window_for(&bounds)?;
            let inst = match read_json::<InstanceFile>(&bounds.instance)?.to_instance()? {
                Instance::SubsetSum(s) => s,
                Instance::Semimodule(_) => {
                    bail!("{} is not a subset sum instance", bounds.instance.display())
                }
            };
            report_search(out, &bounds.out, subset_sum_bounded(&inst, window))
        }
        SolveCommand::Rational {
            instance,
            max_len,
            out: o,
        } => {
            let rat = read_json::<RationalFile>(&instance)?.to_instance()?;
            let nfa = regex_to_nfa(&rat.expr);
            match rational_member_bounded(&nfa, &rat.bindings, &rat.target, max_len)? {
                RationalSearch::Found(word) => {
                    emit(out, &o, &format!("{word}\n"))?;
                    Ok(Verdict::Yes)
                }
                RationalSearch::NoneWithinBounds => {
                    writeln!(out, "no word of length <= {max_len}")?;
                    Ok(Verdict::No)
                }
            }
        }
    }
}

fn render_command(args: RenderArgs, out: &mut dyn Write) -> Result<Verdict> {
    let svg = match args.format {
        Some(Format::Svg) => true,
        Some(Format::Ascii) => false,
        None => args
            .out
            .out
            .as_ref()
            .is_some_and(|p| p.extension().is_some_and(|e| e == "svg")),
    };
    let mut names = Names::new();
    let mut r = ColorReader {
        names: &mut names,
        intern: true,
    };
    let text = if let Some(path) = &args.cert {
        let cert = read_json::<CertificateFile>(path)?.to_certificate(&mut r, None)?;
        if svg {
            render::certificate_svg(&cert, &names)
        } else {
            render::certificate_ascii(&cert, &names)
        }
    } else {
        let path = args.map.as_ref().expect("clap requires --cert or --map");
        let f = read_json::<EdgeMapFile>(path)?.to_map(&mut r)?;
        if svg {
            render::edgemap_svg(&f, &names)
        } else {
            render::edgemap_ascii(&f, &names)
        }
    };
    emit(out, &args.out, &text)?;
    Ok(Verdict::Yes)
}
