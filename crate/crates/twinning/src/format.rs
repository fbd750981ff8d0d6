//! Text formats: building bundles and codistance files.

use std::fmt::Write as _;
use std::sync::Arc;

use twinning_core::chambersys::{BuildError, Building};
use twinning_core::codistance::{Codistance, CodistanceError};
use twinning_core::coxeter::{CoxeterError, CoxeterMatrix, WeylElt, WeylTable, DEFAULT_CAP};

pub const BUILDING_HEADER: &str = "%building 1";
pub const CODISTANCE_HEADER: &str = "%codistance 1";

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("unsupported format header {0:?}")]
    Version(String),
    #[error("bad Coxeter data: {0}")]
    Coxeter(#[from] CoxeterError),
    #[error("panels do not form a chamber system: {0}")]
    Build(#[from] BuildError),
    #[error("codistance does not fit the building: {0}")]
    Codistance(#[from] CodistanceError),
    #[error("codistance refers to building {found:?}, expected {expected:?}")]
    NameMismatch { expected: String, found: String },
}

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, msg: msg.into() }
}

/// A building together with the name it is stored under.
#[derive(Debug, Clone)]
pub struct BuildingBundle {
    pub name: String,
    pub building: Arc<Building>,
}

pub fn valid_name(name: &str) -> bool {
    !name.is_empty() && name.chars().all(|c| c.is_ascii_alphanumeric() || "_.-".contains(c))
}

struct Lines<'a> {
    it: std::iter::Enumerate<std::str::Lines<'a>>,
    line: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines { it: text.lines().enumerate(), line: 0 }
    }

    fn next(&mut self) -> Result<&'a str, FormatError> {
        match self.it.next() {
            Some((i, l)) => {
                self.line = i + 1;
                Ok(l)
            }
            None => Err(syntax(self.line + 1, "unexpected end of file")),
        }
    }

    /// The rest of a line starting with `key` and a space.
    fn keyed(&mut self, key: &str) -> Result<&'a str, FormatError> {
        let l = self.next()?;
        l.strip_prefix(key)
            .and_then(|r| r.strip_prefix(' '))
            .ok_or_else(|| syntax(self.line, format!("expected `{key} ...`")))
    }

    fn exact(&mut self, want: &str) -> Result<(), FormatError> {
        let l = self.next()?;
        if l != want {
            return Err(syntax(self.line, format!("expected `{want}`")));
        }
        Ok(())
    }

    fn header(&mut self, want: &str) -> Result<(), FormatError> {
        let l = self.next()?;
        if l != want {
            return Err(FormatError::Version(l.to_string()));
        }
        Ok(())
    }

    fn number<T: std::str::FromStr>(&self, tok: &str) -> Result<T, FormatError> {
        tok.parse().map_err(|_| syntax(self.line, format!("bad number {tok:?}")))
    }

    fn finish(&mut self) -> Result<(), FormatError> {
        self.exact("end")?;
        if let Some((i, _)) = self.it.by_ref().find(|(_, l)| !l.is_empty()) {
            return Err(syntax(i + 1, "content after `end`"));
        }
        Ok(())
    }
}

pub fn write_building(name: &str, b: &Building) -> String {
    let m = b.weyl().matrix();
    let mut out = String::new();
    writeln!(out, "{BUILDING_HEADER}").unwrap();
    writeln!(out, "name {name}").unwrap();
    writeln!(out, "rank {}", m.rank()).unwrap();
    writeln!(out, "gens {}", m.gens().join(" ")).unwrap();
    writeln!(out, "matrix").unwrap();
    for row in m.rows() {
        writeln!(out, "{}", join(row)).unwrap();
    }
    writeln!(out, "chambers {}", b.num_chambers()).unwrap();
    for s in 0..m.rank() {
        writeln!(out, "panels {}", m.gens()[s]).unwrap();
        for p in b.panels(s) {
            writeln!(out, "{}", join(p)).unwrap();
        }
    }
    writeln!(out, "end").unwrap();
    out
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

/// Parses a bundle and builds its chamber system; the building axioms are
/// left to [`Building::validate`].
pub fn parse_building(text: &str) -> Result<BuildingBundle, FormatError> {
    let mut ls = Lines::new(text);
    ls.header(BUILDING_HEADER)?;
    let name = ls.keyed("name")?.to_string();
    if !valid_name(&name) {
        return Err(syntax(ls.line, format!("bad name {name:?}")));
    }
    let rank: usize = {
        let r = ls.keyed("rank")?;
        ls.number(r)?
    };
    let gens: Vec<String> = ls.keyed("gens")?.split(' ').map(str::to_string).collect();
    if gens.len() != rank {
        return Err(syntax(ls.line, format!("{} generator names for rank {rank}", gens.len())));
    }
    ls.exact("matrix")?;
    let mut m = Vec::with_capacity(rank);
    for _ in 0..rank {
        let row = ls.next()?;
        let row: Vec<u32> = row.split(' ').map(|t| ls.number(t)).collect::<Result<_, _>>()?;
        if row.len() != rank {
            return Err(syntax(ls.line, format!("matrix row has {} entries", row.len())));
        }
        m.push(row);
    }
    let matrix = CoxeterMatrix::new(gens, m)?;
    let n: usize = {
        let c = ls.keyed("chambers")?;
        ls.number(c)?
    };
    let mut panels = vec![Vec::new(); rank];
    let mut pending = ls.next()?;
    for (s, slot) in panels.iter_mut().enumerate() {
        let want = format!("panels {}", matrix.gens()[s]);
        if pending != want {
            return Err(syntax(ls.line, format!("expected `{want}`")));
        }
        loop {
            pending = ls.next()?;
            if pending.starts_with("panels ") || pending == "end" {
                break;
            }
            let p: Vec<usize> = pending.split(' ').map(|t| ls.number(t)).collect::<Result<_, _>>()?;
            if p.windows(2).any(|w| w[0] >= w[1]) {
                return Err(syntax(ls.line, "panel chambers must be strictly ascending"));
            }
            slot.push(p);
        }
    }
    if pending != "end" {
        return Err(syntax(ls.line, "expected `end`"));
    }
    if let Some((i, _)) = ls.it.by_ref().find(|(_, l)| !l.is_empty()) {
        return Err(syntax(i + 1, "content after `end`"));
    }
    let weyl = Arc::new(WeylTable::enumerate(&matrix, DEFAULT_CAP)?);
    let building = Arc::new(Building::new(weyl, n, panels)?);
    Ok(BuildingBundle { name, building })
}

pub fn write_codistance(building_name: &str, f: &Codistance) -> String {
    let w = f.weyl();
    let mut out = String::new();
    writeln!(out, "{CODISTANCE_HEADER}").unwrap();
    writeln!(out, "building {building_name}").unwrap();
    writeln!(out, "values").unwrap();
    for (c, &v) in f.values().iter().enumerate() {
        writeln!(out, "{c} {}", w.format_word(v)).unwrap();
    }
    writeln!(out, "end").unwrap();
    out
}

/// A parsed codistance with the lines whose words were not in canonical
/// form and got rewritten.
#[derive(Debug, Clone)]
pub struct LoadedCodistance {
    pub codistance: Codistance,
    pub rewritten: Vec<usize>,
}

/// Parses a word of generator names separated by spaces, `-` for `1_W`.
pub fn parse_word(w: &WeylTable, word: &str) -> Option<WeylElt> {
    if word == "-" {
        return Some(WeylElt::IDENTITY);
    }
    let gens: Option<Vec<usize>> = word.split(' ').map(|g| w.matrix().gen_index(g)).collect();
    Some(w.from_word(&gens?))
}

pub fn parse_codistance(text: &str, bundle: &BuildingBundle) -> Result<LoadedCodistance, FormatError> {
    let b = &bundle.building;
    let w = b.weyl();
    let mut ls = Lines::new(text);
    ls.header(CODISTANCE_HEADER)?;
    let found = ls.keyed("building")?;
    if found != bundle.name {
        return Err(FormatError::NameMismatch { expected: bundle.name.clone(), found: found.to_string() });
    }
    ls.exact("values")?;
    let mut values = Vec::with_capacity(b.num_chambers());
    let mut rewritten = Vec::new();
    for c in 0..b.num_chambers() {
        let l = ls.next()?;
        let (id, word) = l.split_once(' ').ok_or_else(|| syntax(ls.line, "expected `<id> <word>`"))?;
        let id: usize = ls.number(id)?;
        if id != c {
            return Err(syntax(ls.line, format!("expected chamber {c}, found {id}")));
        }
        let v = parse_word(w, word).ok_or_else(|| syntax(ls.line, format!("unknown generator in {word:?}")))?;
        if w.format_word(v) != word {
            rewritten.push(ls.line);
        }
        values.push(v);
    }
    ls.finish()?;
    Ok(LoadedCodistance { codistance: Codistance::new(b.clone(), values)?, rewritten })
}
