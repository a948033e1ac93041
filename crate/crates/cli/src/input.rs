use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use finitype::diagram::{parse_gauss, parse_pd, Diagram, GaussCode};
use finitype::goussarov::DetourFamily;
use finitype::table::KnotTable;

/// Input problems; each kind has its own message prefix and exits with 2.
#[derive(Debug)]
pub enum CliError {
    Read(String),
    Parse(String),
    Input(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Read(m) => write!(f, "read error: {m}"),
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Input(m) => write!(f, "input error: {m}"),
        }
    }
}

pub fn parse_err(e: impl fmt::Display) -> CliError {
    CliError::Parse(e.to_string())
}

pub fn input_err(e: impl fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Read(format!("{}: {e}", path.display())))
}

fn looks_inline(text: &str) -> bool {
    let t = text.trim_start();
    t.starts_with("X[") || t.starts_with("components=") || t.starts_with('O') || t.starts_with('U')
}

/// PD text, or Gauss text when it starts with a pass token. `|` separates
/// link components in Gauss text.
pub fn parse_diagram_text(text: &str) -> Result<Diagram, CliError> {
    let t = text.trim();
    if t.starts_with('O') || t.starts_with('U') {
        if t.contains('|') {
            return GaussCode::parse_link(t)
                .and_then(|g| g.to_diagram())
                .map_err(parse_err);
        }
        return parse_gauss(t).map_err(parse_err);
    }
    parse_pd(t).map_err(parse_err)
}

fn table_at(path: &Path) -> Result<KnotTable, CliError> {
    if path.exists() {
        return KnotTable::parse(&read(path)?).map_err(parse_err);
    }
    if path.file_name().is_some_and(|n| n == "knots.pdtab") {
        return Ok(KnotTable::bundled());
    }
    Err(CliError::Read(format!("{}: no such file", path.display())))
}

/// `file`, `file#name` or inline code. A missing `knots.pdtab` means the
/// bundled table.
pub fn load_diagram(source: &str, base: &Path, max_crossings: usize) -> Result<Diagram, CliError> {
    let d = if let Some((file, name)) = source.split_once('#').filter(|_| !looks_inline(source)) {
        let table = table_at(&base.join(file))?;
        table
            .get(name)
            .cloned()
            .ok_or_else(|| CliError::Input(format!("no table entry {name} in {file}")))?
    } else {
        let path = base.join(source);
        if path.is_file() {
            parse_diagram_text(&read(&path)?)?
        } else if looks_inline(source) {
            parse_diagram_text(source)?
        } else {
            return Err(CliError::Read(format!("{source}: no such file")));
        }
    };
    if d.crossing_count() > max_crossings {
        return Err(CliError::Input(format!(
            "{} crossings exceeds --max-crossings {max_crossings}",
            d.crossing_count()
        )));
    }
    Ok(d)
}

pub fn load_family(path: &Path) -> Result<DetourFamily, CliError> {
    DetourFamily::from_json(&read(path)?).map_err(parse_err)
}

/// Comma-separated numbers; the empty string is the empty list.
pub fn parse_list(text: &str) -> Result<Vec<usize>, CliError> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse()
                .map_err(|_| CliError::Parse(format!("bad index {s:?}")))
        })
        .collect()
}

/// One line of a suite manifest: `pdfile<TAB>crossings`.
pub struct SuiteCase {
    pub source: String,
    pub diagram: Diagram,
    pub crossings: Vec<usize>,
}

/// Reads and parses every case before anything is evaluated. Paths are
/// relative to the manifest.
pub fn load_suite(path: &Path, max_crossings: usize) -> Result<Vec<SuiteCase>, CliError> {
    let text = read(path)?;
    let base: PathBuf = path.parent().map(Path::to_path_buf).unwrap_or_default();
    let mut cases = Vec::new();
    for (n, line) in text.lines().enumerate() {
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        let (file, crossings) = line.split_once('\t').ok_or_else(|| {
            CliError::Parse(format!(
                "{}:{}: expected pdfile<TAB>crossings",
                path.display(),
                n + 1
            ))
        })?;
        cases.push(SuiteCase {
            source: file.trim().to_string(),
            diagram: load_diagram(file.trim(), &base, max_crossings)?,
            crossings: parse_list(crossings)?,
        });
    }
    Ok(cases)
}
