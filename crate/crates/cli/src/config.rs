use std::path::{Path, PathBuf};

use serde::Deserialize;
use wlax::pdo::RatMat;
use wlax::ring::Rat;
use wlax::walg::Pyramid;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Latex,
    Text,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Latex => "tex",
            Format::Text => "txt",
        }
    }

    fn parse(s: &str) -> Result<Format, String> {
        match s {
            "json" => Ok(Format::Json),
            "latex" => Ok(Format::Latex),
            "text" => Ok(Format::Text),
            other => Err(format!("unknown format {:?}", other)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SbarSpec {
    Identity,
    E11,
    Matrix(RatMat),
}

/// Settings read from a config file; every key is optional and flags take precedence.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub partition: Option<String>,
    pub sbar: Option<String>,
    pub floor: Option<i64>,
    pub flows: Option<u32>,
    pub root: Option<u32>,
    pub format: Option<String>,
    pub reduce: Option<String>,
    pub out: Option<PathBuf>,
    pub fixture: Option<bool>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<FileConfig, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {}", path.display(), e))?;
        toml::from_str(&text).map_err(|e| format!("{}: {}", path.display(), e))
    }
}

/// Fully resolved run settings.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub pyr: Pyramid,
    pub sbar: RatMat,
    pub sbar_spec: SbarSpec,
    pub floor: i64,
    pub flows: u32,
    pub root: Option<u32>,
    pub format: Format,
    pub constrained: bool,
    pub out: Option<PathBuf>,
    pub fixture: bool,
    pub corrupt: bool,
}

pub fn parse_partition(s: &str) -> Result<Vec<u16>, String> {
    s.split(',')
        .map(|t| t.trim().parse::<u16>().map_err(|_| format!("bad partition entry {:?}", t)))
        .collect()
}

fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    let bad = || format!("bad rational {:?}", s);
    match s.split_once('/') {
        Some((n, d)) => {
            let (n, d): (i64, i64) = (n.trim().parse().map_err(|_| bad())?, d.trim().parse().map_err(|_| bad())?);
            if d == 0 {
                return Err(bad());
            }
            Ok(Rat::new(n.into(), d.into()))
        }
        None => Ok(Rat::from_integer(s.parse::<i64>().map_err(|_| bad())?.into())),
    }
}

/// A matrix given one row per line, entries separated by whitespace or commas.
pub fn parse_matrix(text: &str) -> Result<RatMat, String> {
    let rows: Vec<Vec<Rat>> = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| l.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()).map(parse_rat).collect())
        .collect::<Result<_, _>>()?;
    if rows.is_empty() || rows.iter().any(|r| r.len() != rows[0].len()) {
        return Err("matrix rows must be nonempty and of equal length".into());
    }
    Ok(RatMat::from_rows(rows))
}

pub fn parse_sbar(s: &str) -> Result<SbarSpec, String> {
    match s {
        "identity" => Ok(SbarSpec::Identity),
        "E11" | "e11" => Ok(SbarSpec::E11),
        path => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {}", path, e))?;
            Ok(SbarSpec::Matrix(parse_matrix(&text)?))
        }
    }
}

/// Flag values before merging with the config file.
#[derive(Debug, Default, Clone)]
pub struct FlagValues {
    pub partition: Option<String>,
    pub sbar: Option<String>,
    pub floor: Option<i64>,
    pub flows: Option<u32>,
    pub root: Option<u32>,
    pub format: Option<Format>,
    pub reduce: Option<String>,
    pub out: Option<PathBuf>,
    pub fixture: bool,
    pub corrupt: bool,
}

/// Environment variable overriding the output directory.
pub const OUT_DIR_VAR: &str = "WLAX_OUT_DIR";

pub fn resolve(flags: FlagValues, file: FileConfig, env_out: Option<PathBuf>) -> Result<RunConfig, String> {
    let partition = flags.partition.or(file.partition).ok_or("no partition given")?;
    let pyr = Pyramid::new(&parse_partition(&partition)?).map_err(|e| e.to_string())?;
    let spec = match flags.sbar.or(file.sbar) {
        Some(s) => parse_sbar(&s)?,
        None => SbarSpec::Identity,
    };
    let r1 = pyr.r1() as usize;
    let sbar = match &spec {
        SbarSpec::Identity => RatMat::identity(r1),
        SbarSpec::E11 => RatMat::unit(r1, r1, 0, 0),
        SbarSpec::Matrix(m) => m.clone(),
    };
    if sbar.rows != r1 || sbar.cols != r1 {
        return Err(format!("S-bar must be {}x{}, got {}x{}", r1, r1, sbar.rows, sbar.cols));
    }
    let format = match (flags.format, file.format) {
        (Some(f), _) => f,
        (None, Some(s)) => Format::parse(&s)?,
        (None, None) => Format::Json,
    };
    let constrained = match flags.reduce.or(file.reduce).as_deref() {
        None | Some("none") => false,
        Some("constrained") => true,
        Some(other) => return Err(format!("unknown reduction {:?}", other)),
    };
    let floor = flags.floor.or(file.floor).unwrap_or(-(2 * pyr.p1() as i64 + 2));
    Ok(RunConfig {
        sbar,
        sbar_spec: spec,
        floor,
        flows: flags.flows.or(file.flows).unwrap_or(3),
        root: flags.root.or(file.root),
        format,
        constrained,
        out: flags.out.or(env_out).or(file.out),
        fixture: flags.fixture || file.fixture.unwrap_or(false),
        corrupt: flags.corrupt,
        pyr,
    })
}
