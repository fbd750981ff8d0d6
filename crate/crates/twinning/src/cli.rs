//! The `twinning` command line.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use twinning_core::catalog::GeometrySpec;
use twinning_core::coxeter::CoxeterMatrix;
use twinning_core::homotopy::{
    check_lco, check_lsco, components, simply_2_connected, Limits, OppositionReport, Outcome, Status,
};
use twinning_core::panelcalc::PanelError;
use twinning_core::twinner::{TwinError, DEFAULT_CAP};

use crate::format::{parse_building, parse_codistance, valid_name, write_building, write_codistance, BuildingBundle};
use crate::report::{pass_fail, Report};
use crate::twin::{self, DirError};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "twinning", version, about = "Finite buildings, codistances and twin buildings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a building bundle.
    Gen(GenArgs),
    /// Check a building or a codistance.
    #[command(subcommand)]
    Validate(ValidateCmd),
    /// Construct codistances.
    #[command(subcommand)]
    Codist(CodistCmd),
    /// Check condition (lco) or (lsco) on every residue.
    Check {
        condition: Condition,
        #[arg(long)]
        building: PathBuf,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Print f^op with its connectivity and simple 2-connectivity.
    Fop {
        #[arg(long)]
        codistance: PathBuf,
        #[arg(long)]
        building: PathBuf,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Build or verify a twin building.
    #[command(subcommand)]
    Twin(TwinCmd),
    /// Inspect the Weyl group.
    #[command(subcommand)]
    Weyl(WeylCmd),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Family {
    Pg2,
    Pg3,
    Sp4,
    Digon,
    Thin,
}

#[derive(Debug, Args)]
struct GenArgs {
    family: Family,
    /// Field order for pg2, pg3, sp4.
    #[arg(long)]
    q: Option<u32>,
    /// Number of points of a digon.
    #[arg(long)]
    a: Option<usize>,
    /// Number of lines of a digon.
    #[arg(long)]
    b: Option<usize>,
    /// Coxeter type of a thin building, e.g. A3 or A1xA1xA1.
    #[arg(long = "type")]
    ty: Option<String>,
    /// Bundle name; defaults to the family name with its parameters.
    #[arg(long)]
    name: Option<String>,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Debug, Subcommand)]
enum ValidateCmd {
    Building {
        file: PathBuf,
    },
    Codistance {
        file: PathBuf,
        #[arg(long)]
        building: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
enum CodistCmd {
    /// f(x) = r·δ(c, x) for a chamber c.
    FromOpposite {
        #[arg(long)]
        building: PathBuf,
        #[arg(long)]
        chamber: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Condition {
    Lco,
    Lsco,
}

#[derive(Debug, Subcommand)]
enum TwinCmd {
    Build {
        #[arg(long)]
        building: PathBuf,
        #[arg(long)]
        codistance: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Maximum number of atlas members.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[command(flatten)]
        limits: LimitArgs,
    },
    Verify {
        dir: PathBuf,
        #[command(flatten)]
        limits: LimitArgs,
    },
}

#[derive(Debug, Subcommand)]
enum WeylCmd {
    Enumerate {
        #[arg(long)]
        building: PathBuf,
    },
}

#[derive(Debug, Args)]
struct LimitArgs {
    /// Coset cap for simple 2-connectivity.
    #[arg(long, default_value_t = Limits::default().max_cosets)]
    max_cosets: usize,
}

impl LimitArgs {
    fn limits(&self) -> Limits {
        Limits { max_cosets: self.max_cosets, ..Limits::default() }
    }
}

/// A failure with its exit code.
struct Failure {
    code: i32,
    msg: String,
}

fn input(msg: impl ToString) -> Failure {
    Failure { code: EXIT_INPUT, msg: msg.to_string() }
}

type Res = Result<i32, Failure>;

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Io<'_> {
    fn say(&mut self, s: impl std::fmt::Display) {
        let _ = writeln!(self.out, "{s}");
    }

    fn warn(&mut self, s: impl std::fmt::Display) {
        let _ = writeln!(self.err, "warning: {s}");
    }
}

/// Runs the command line `argv` (program name first) and returns the exit
/// code: 0 pass, 1 violation, 2 inconclusive, 3 input error.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_PASS };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut io = Io { out, err };
    match dispatch(cli.command, &mut io) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(io.err, "error: {}", f.msg);
            f.code
        }
    }
}

fn dispatch(cmd: Command, io: &mut Io) -> Res {
    match cmd {
        Command::Gen(a) => gen(a, io),
        Command::Validate(ValidateCmd::Building { file }) => validate_building(&file, io),
        Command::Validate(ValidateCmd::Codistance { file, building }) => validate_codistance(&file, &building, io),
        Command::Codist(CodistCmd::FromOpposite { building, chamber, output }) => {
            from_opposite(&building, chamber, &output, io)
        }
        Command::Check { condition, building, limits } => check(condition, &building, &limits.limits(), io),
        Command::Fop { codistance, building, limits } => fop(&codistance, &building, &limits.limits(), io),
        Command::Twin(TwinCmd::Build { building, codistance, output, cap, limits }) => {
            twin_build(&building, &codistance, &output, cap, &limits.limits(), io)
        }
        Command::Twin(TwinCmd::Verify { dir, limits }) => twin_verify(&dir, &limits.limits(), io),
        Command::Weyl(WeylCmd::Enumerate { building }) => weyl_enumerate(&building, io),
    }
}

fn read_file(p: &Path) -> Result<String, Failure> {
    fs::read_to_string(p).map_err(|e| input(format!("{}: {e}", p.display())))
}

fn write_file(p: &Path, body: &str) -> Result<(), Failure> {
    fs::write(p, body).map_err(|e| input(format!("{}: {e}", p.display())))
}

fn load_building(p: &Path) -> Result<BuildingBundle, Failure> {
    parse_building(&read_file(p)?).map_err(|e| input(format!("{}: {e}", p.display())))
}

fn load_codistance(
    p: &Path,
    b: &BuildingBundle,
    io: &mut Io,
) -> Result<twinning_core::codistance::Codistance, Failure> {
    let loaded = parse_codistance(&read_file(p)?, b).map_err(|e| input(format!("{}: {e}", p.display())))?;
    for line in &loaded.rewritten {
        io.warn(format!("{}:{line}: word is not in canonical form; rewritten", p.display()));
    }
    Ok(loaded.codistance)
}

fn require<T>(v: Option<T>, flag: &str, family: Family) -> Result<T, Failure> {
    v.ok_or_else(|| input(format!("{family:?} needs --{flag}").to_lowercase()))
}

fn gen(a: GenArgs, io: &mut Io) -> Res {
    let spec = match a.family {
        Family::Pg2 => GeometrySpec::Pg2 { q: require(a.q, "q", a.family)? },
        Family::Pg3 => GeometrySpec::Pg3 { q: require(a.q, "q", a.family)? },
        Family::Sp4 => GeometrySpec::Sp4 { q: require(a.q, "q", a.family)? },
        Family::Digon => GeometrySpec::Digon { a: require(a.a, "a", a.family)?, b: require(a.b, "b", a.family)? },
        Family::Thin => {
            let ty = require(a.ty.as_deref(), "type", a.family)?;
            GeometrySpec::Thin(CoxeterMatrix::from_type_name(ty).map_err(input)?)
        }
    };
    let name = a.name.unwrap_or_else(|| spec.name());
    if !valid_name(&name) {
        return Err(input(format!("bad bundle name {name:?}")));
    }
    let b = spec.build().map_err(input)?;
    write_file(&a.output, &write_building(&name, &b))?;
    io.say(format!("{name}: {} chambers, rank {}", b.num_chambers(), b.rank()));
    Ok(EXIT_PASS)
}

fn validate_building(file: &Path, io: &mut Io) -> Res {
    let text = read_file(file)?;
    let bundle = match parse_building(&text) {
        Ok(b) => b,
        // Panels that do not even form a chamber system.
        Err(crate::format::FormatError::Build(e)) => {
            io.say(format!("not a building: {e}"));
            io.say("RESULT=fail");
            return Ok(EXIT_VIOLATION);
        }
        Err(e) => return Err(input(format!("{}: {e}", file.display()))),
    };
    let b = &bundle.building;
    let mut r = Report::default();
    r.line(format!("{}: rank {}, {} chambers, thick: {}", bundle.name, b.rank(), b.num_chambers(), b.is_thick()));
    let res = b.validate();
    if let Err(v) = &res {
        r.line(format!("violation: {v}"));
    }
    r.set("RESULT", pass_fail(res.is_ok()));
    io.say(&r);
    Ok(if res.is_ok() { EXIT_PASS } else { EXIT_VIOLATION })
}

fn validate_codistance(file: &Path, building: &Path, io: &mut Io) -> Res {
    let bundle = load_building(building)?;
    let f = load_codistance(file, &bundle, io)?;
    let mut r = Report::default();
    let res = f.validate();
    if let Err(v) = &res {
        r.line(format!("violation: {v}"));
    }
    r.set("RESULT", pass_fail(res.is_ok()));
    r.set("FOP_SIZE", f.fop().len());
    io.say(&r);
    Ok(if res.is_ok() { EXIT_PASS } else { EXIT_VIOLATION })
}

fn from_opposite(building: &Path, chamber: usize, output: &Path, io: &mut Io) -> Res {
    let bundle = load_building(building)?;
    if chamber >= bundle.building.num_chambers() {
        return Err(input(format!("chamber {chamber} out of range (0..{})", bundle.building.num_chambers())));
    }
    let f = twin::opposite_chamber_seed(&bundle, chamber);
    write_file(output, &write_codistance(&bundle.name, &f))?;
    io.say(format!("|f^op| = {}", f.fop().len()));
    Ok(EXIT_PASS)
}

fn outcome_code(o: Outcome) -> i32 {
    match o {
        Outcome::Pass => EXIT_PASS,
        Outcome::Fail => EXIT_VIOLATION,
        Outcome::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

fn opposition_report(rep: &OppositionReport, b: &BuildingBundle) -> Report {
    let mut r = Report::default();
    r.line(format!("{}: {} (residue, chamber) pairs checked", rep.condition, rep.checked));
    let gens = b.building.weyl().matrix().gens();
    for (label, list) in [("failure", &rep.failures), ("inconclusive", &rep.inconclusive)] {
        for e in list {
            let ty: Vec<&str> = e.residue.ty.iter().map(|s| gens[s].as_str()).collect();
            r.line(format!(
                "{label}: residue {{{}}} #{} chamber {}: {} opposite chambers, {:?} {:?}",
                ty.join(","),
                e.residue.index,
                e.chamber,
                e.size,
                e.status,
                e.certificate
            ));
        }
    }
    let key = if rep.condition == "lco" { "LCO" } else { "LSCO" };
    r.set("RESULT", rep.outcome().as_str().to_ascii_lowercase());
    r.set(key, rep.outcome().as_str().to_ascii_lowercase());
    r
}

fn check(cond: Condition, building: &Path, limits: &Limits, io: &mut Io) -> Res {
    let bundle = load_building(building)?;
    let rep = match cond {
        Condition::Lco => check_lco(&bundle.building),
        Condition::Lsco => check_lsco(&bundle.building, limits),
    };
    io.say(opposition_report(&rep, &bundle));
    Ok(outcome_code(rep.outcome()))
}

fn fop(codistance: &Path, building: &Path, limits: &Limits, io: &mut Io) -> Res {
    let bundle = load_building(building)?;
    let b = &bundle.building;
    let f = load_codistance(codistance, &bundle, io)?;
    if let Err(v) = f.validate() {
        io.say(format!("not a codistance: {v}\n\nRESULT=fail"));
        return Ok(EXIT_VIOLATION);
    }
    let op = f.fop();
    let mut r = Report::default();
    let ids: Vec<String> = op.iter().map(|c| c.to_string()).collect();
    r.line(format!("f^op: {}", ids.join(" ")));
    let comps = components(b, &op, twinning_core::coxeter::GenSet::all(b.rank()));
    r.line(format!("components: {}", comps.len()));
    let outcome = if comps.len() != 1 {
        r.line("simply 2-connected: no (disconnected)");
        Outcome::Fail
    } else {
        match simply_2_connected(b, &op, limits) {
            Ok(v) => {
                r.line(format!("simply 2-connected: {:?} {:?}", v.status, v.certificate));
                match v.status {
                    Status::ProvenTrivial => Outcome::Pass,
                    Status::ProvenNontrivial => Outcome::Fail,
                    Status::Inconclusive => Outcome::Inconclusive,
                }
            }
            Err(e) => return Err(input(e)),
        }
    };
    r.set("RESULT", outcome.as_str().to_ascii_lowercase());
    r.set("FOP_SIZE", op.len());
    io.say(&r);
    Ok(outcome_code(outcome))
}

fn twin_error_code(e: &TwinError) -> i32 {
    match e {
        TwinError::Panel(PanelError::HomotopyInconclusive(Status::Inconclusive)) | TwinError::CapExceeded(_) => {
            EXIT_INCONCLUSIVE
        }
        _ => EXIT_VIOLATION,
    }
}

fn twin_build(building: &Path, codistance: &Path, output: &Path, cap: usize, limits: &Limits, io: &mut Io) -> Res {
    let bundle = load_building(building)?;
    let f = load_codistance(codistance, &bundle, io)?;
    match twin::build(&f, cap, limits) {
        Ok((assembly, checks)) => {
            let report = twin::twin_report(&bundle, &assembly, &checks, limits);
            let files = twin::render(&bundle, &assembly, &report);
            twin::write_dir(output, &files).map_err(input)?;
            io.say(&report);
            Ok(if checks.passed() { EXIT_PASS } else { EXIT_VIOLATION })
        }
        Err(e) => {
            let mut r = Report::default();
            r.line(format!("construction stopped: {e}"));
            let code = twin_error_code(&e);
            r.set("RESULT", if code == EXIT_INCONCLUSIVE { "inconclusive" } else { "fail" });
            r.set("FOP_SIZE", f.fop().len());
            let (lco, lsco) = twin::opposition_keys(&bundle, limits);
            r.set("LCO", lco.as_str().to_ascii_lowercase());
            r.set("LSCO", lsco.as_str().to_ascii_lowercase());
            fs::create_dir_all(output).map_err(|e| input(format!("{}: {e}", output.display())))?;
            write_file(&output.join(twin::REPORT_FILE), &r.to_string())?;
            io.say(&r);
            Ok(code)
        }
    }
}

fn twin_verify(dir: &Path, limits: &Limits, io: &mut Io) -> Res {
    let (minus, assembly) = match twin::load_dir(dir) {
        Ok(x) => x,
        Err(DirError::Twin(e)) => return Err(Failure { code: EXIT_VIOLATION, msg: e.to_string() }),
        Err(e) => return Err(input(e)),
    };
    if let Err(v) = assembly.plus().validate() {
        io.say(format!("plus building is not a building: {v}\n\nRESULT=fail\nTW_AXIOMS=fail"));
        return Ok(EXIT_VIOLATION);
    }
    let checks = assembly.verify();
    let report = twin::twin_report(&minus, &assembly, &checks, limits);
    io.say(&report);
    Ok(if checks.passed() { EXIT_PASS } else { EXIT_VIOLATION })
}

fn weyl_enumerate(building: &Path, io: &mut Io) -> Res {
    let bundle = load_building(building)?;
    let w = bundle.building.weyl();
    io.say(format!("|W| = {}", w.size()));
    io.say(format!("longest element: {}", w.format_word(w.longest())));
    for (l, n) in w.length_histogram().iter().enumerate() {
        io.say(format!("length {l}: {n}"));
    }
    Ok(EXIT_PASS)
}
