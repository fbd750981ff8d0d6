//! Building a twin from a seed codistance, and the twin output directory.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use twinning_core::codistance::Codistance;
use twinning_core::coxeter::WeylElt;
use twinning_core::homotopy::{check_lco, check_lsco, Limits, Outcome};
use twinning_core::twinner::{assemble_twin, atlas_component, TwinAssembly, TwinError, TwinReport};

use crate::format::{
    parse_building, parse_codistance, parse_word, write_building, write_codistance, BuildingBundle, FormatError,
};
use crate::report::{pass_fail, Report};

pub const MINUS_FILE: &str = "minus.bld";
pub const PLUS_FILE: &str = "plus.bld";
pub const SEED_FILE: &str = "seed.cod";
pub const COSTAR_FILE: &str = "costar.txt";
pub const REPORT_FILE: &str = "report.txt";
pub const MEMBERS_DIR: &str = "members";

#[derive(Debug, thiserror::Error)]
pub enum DirError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Format { path: String, source: FormatError },
    #[error("{path}: {msg}")]
    Content { path: String, msg: String },
    #[error(transparent)]
    Twin(#[from] TwinError),
}

fn read(dir: &Path, name: &str) -> Result<String, DirError> {
    let p = dir.join(name);
    fs::read_to_string(&p).map_err(|source| DirError::Io { path: p.display().to_string(), source })
}

pub fn member_file(i: usize, count: usize) -> String {
    let width = count.saturating_sub(1).to_string().len().max(4);
    format!("{MEMBERS_DIR}/m{i:0width$}.cod")
}

pub fn plus_name(minus: &str) -> String {
    format!("{minus}_plus")
}

/// Conditions (lco) and (lsco) of a building, lower case.
pub fn opposition_keys(b: &BuildingBundle, limits: &Limits) -> (Outcome, Outcome) {
    (check_lco(&b.building).outcome(), check_lsco(&b.building, limits).outcome())
}

fn outcome_key(o: Outcome) -> String {
    o.as_str().to_ascii_lowercase()
}

/// Human and machine summary of a verified twin.
pub fn twin_report(minus: &BuildingBundle, twin: &TwinAssembly, checks: &TwinReport, limits: &Limits) -> Report {
    let mut r = Report::default();
    let (lco, lsco) = opposition_keys(minus, limits);
    r.line(format!("building {}: rank {}, {} chambers", minus.name, minus.building.rank(), checks.minus_size));
    r.line(format!("seed: member {}, |f^op| = {}", twin.origin(), checks.seed_fop_size));
    r.line(format!("atlas: {} codistances", checks.plus_size));
    for c in &checks.checks {
        match &c.outcome {
            Ok(n) => r.line(format!("{}: pass ({n} instances)", c.name)),
            Err(v) => r.line(format!("{}: FAIL {v}", c.name)),
        }
    }
    r.set("RESULT", pass_fail(checks.passed()));
    r.set("ATLAS_SIZE", checks.plus_size);
    r.set("FOP_SIZE", checks.seed_fop_size);
    r.set("LCO", outcome_key(lco));
    r.set("LSCO", outcome_key(lsco));
    r.set("TW_AXIOMS", pass_fail(checks.twin_axioms()));
    r.set("SEED_MATCH", pass_fail(checks.seed_match()));
    r
}

/// Runs the construction from `seed`, returning the assembled twin and
/// its verification.
pub fn build(seed: &Codistance, cap: usize, limits: &Limits) -> Result<(TwinAssembly, TwinReport), TwinError> {
    seed.validate()?;
    let atlas = atlas_component(seed, cap, limits)?;
    let (twin, report) = assemble_twin(&atlas)?;
    atlas.check_lemmas()?;
    Ok((twin, report))
}

/// All files of the output directory, by relative path, in write order.
pub fn render(minus: &BuildingBundle, twin: &TwinAssembly, report: &Report) -> Vec<(String, String)> {
    let w = minus.building.weyl();
    let rows = twin.costar_rows();
    let mut files = vec![
        (MINUS_FILE.to_string(), write_building(&minus.name, &minus.building)),
        (PLUS_FILE.to_string(), write_building(&plus_name(&minus.name), twin.plus())),
    ];
    let seed = Codistance::new(minus.building.clone(), rows[twin.origin()].clone()).expect("row length");
    files.push((SEED_FILE.to_string(), write_codistance(&minus.name, &seed)));
    for (g, row) in rows.iter().enumerate() {
        let f = Codistance::new(minus.building.clone(), row.clone()).expect("row length");
        files.push((member_file(g, rows.len()), write_codistance(&minus.name, &f)));
    }
    let mut table = String::new();
    for c in minus.building.chambers() {
        for (g, row) in rows.iter().enumerate() {
            writeln!(table, "{c} {g} {}", w.format_word(row[c])).unwrap();
        }
    }
    files.push((COSTAR_FILE.to_string(), table));
    files.push((REPORT_FILE.to_string(), report.to_string()));
    files
}

pub fn write_dir(dir: &Path, files: &[(String, String)]) -> Result<(), DirError> {
    let io = |p: &Path| {
        let path = p.display().to_string();
        move |source| DirError::Io { path, source }
    };
    fs::create_dir_all(dir.join(MEMBERS_DIR)).map_err(io(dir))?;
    for (name, body) in files {
        let p = dir.join(name);
        fs::write(&p, body).map_err(io(&p))?;
    }
    Ok(())
}

/// Reads a directory written by [`render`]/[`write_dir`]. The `δ*` table
/// is authoritative; member files must agree with it.
pub fn load_dir(dir: &Path) -> Result<(BuildingBundle, TwinAssembly), DirError> {
    let fmt = |path: &str| {
        let path = path.to_string();
        move |source| DirError::Format { path, source }
    };
    let minus = parse_building(&read(dir, MINUS_FILE)?).map_err(fmt(MINUS_FILE))?;
    let plus = parse_building(&read(dir, PLUS_FILE)?).map_err(fmt(PLUS_FILE))?;
    if plus.building.weyl().matrix() != minus.building.weyl().matrix() {
        return Err(DirError::Content { path: PLUS_FILE.into(), msg: "type differs from the minus building".into() });
    }
    let seed = parse_codistance(&read(dir, SEED_FILE)?, &minus).map_err(fmt(SEED_FILE))?.codistance;
    let (n_minus, n_plus) = (minus.building.num_chambers(), plus.building.num_chambers());
    let w = minus.building.weyl();
    let mut costar = vec![vec![None; n_minus]; n_plus];
    let table = read(dir, COSTAR_FILE)?;
    let bad = |i: usize, msg: &str| DirError::Content { path: COSTAR_FILE.into(), msg: format!("line {}: {msg}", i + 1) };
    for (i, l) in table.lines().enumerate() {
        let mut it = l.splitn(3, ' ');
        let (Some(c), Some(g), Some(word)) = (it.next(), it.next(), it.next()) else {
            return Err(bad(i, "expected `<chamber> <member> <word>`"));
        };
        let (Ok(c), Ok(g)) = (c.parse::<usize>(), g.parse::<usize>()) else {
            return Err(bad(i, "bad chamber or member id"));
        };
        if c >= n_minus || g >= n_plus {
            return Err(bad(i, "id out of range"));
        }
        let v = parse_word(w, word).ok_or_else(|| bad(i, "unknown generator"))?;
        if costar[g][c].replace(v).is_some() {
            return Err(bad(i, "duplicate entry"));
        }
    }
    let costar: Vec<Vec<WeylElt>> = costar
        .into_iter()
        .map(|row| row.into_iter().collect::<Option<Vec<_>>>())
        .collect::<Option<_>>()
        .ok_or_else(|| DirError::Content { path: COSTAR_FILE.into(), msg: "missing entries".into() })?;
    for (g, row) in costar.iter().enumerate() {
        let name = member_file(g, n_plus);
        let f = parse_codistance(&read(dir, &name)?, &minus).map_err(fmt(&name))?.codistance;
        if f.values() != row.as_slice() {
            return Err(DirError::Content { path: name, msg: "differs from the costar table".into() });
        }
    }
    let origin = costar
        .iter()
        .position(|row| row.as_slice() == seed.values())
        .ok_or_else(|| DirError::Content { path: SEED_FILE.into(), msg: "seed is not a member".into() })?;
    let twin = TwinAssembly::from_parts(minus.building.clone(), plus.building.clone(), costar, origin, seed.values().to_vec())?;
    Ok((minus, twin))
}

/// Seed codistance for chamber `c` of a bundle.
pub fn opposite_chamber_seed(b: &BuildingBundle, c: usize) -> Codistance {
    Codistance::from_opposite_chamber(Arc::clone(&b.building), c)
}
