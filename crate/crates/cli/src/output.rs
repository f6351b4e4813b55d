use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use rings_core::ComplexPoint;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
    Text,
    /// `coeff i j` triples of a bivariate polynomial.
    Poly,
}

impl Format {
    fn name(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
            Format::Svg => "svg",
            Format::Text => "text",
            Format::Poly => "poly",
        }
    }

    fn from_extension(path: &Path) -> Option<Self> {
        match path.extension()?.to_str()? {
            "csv" => Some(Format::Csv),
            "json" => Some(Format::Json),
            "svg" => Some(Format::Svg),
            "txt" | "text" => Some(Format::Text),
            "poly" => Some(Format::Poly),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Target {
    Stdout,
    File(PathBuf),
}

/// Where and how a subcommand writes its result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub target: Target,
    pub format: Format,
}

impl Output {
    /// Resolves `--out` and `--format` against the formats a subcommand
    /// supports; the first supported format is the default.
    pub fn resolve(out: Option<&str>, format: Option<Format>, supported: &[Format]) -> Result<Self, CliError> {
        let bare = out.and_then(|s| Format::from_str(s, true).ok());
        let (target, implied) = match (out, bare) {
            (None, _) | (Some("-"), _) => (Target::Stdout, None),
            (Some(_), Some(f)) => (Target::Stdout, Some(f)),
            (Some(path), None) => {
                let path = PathBuf::from(path);
                let ext = Format::from_extension(&path);
                (Target::File(path), ext)
            }
        };
        let format = match (format, implied, bare) {
            (Some(f), Some(g), Some(_)) if f != g => {
                return Err(CliError::Usage(format!("--out {} conflicts with --format {}", g.name(), f.name())))
            }
            (Some(f), _, _) => f,
            (None, Some(g), _) => g,
            (None, None, _) => supported[0],
        };
        if !supported.contains(&format) {
            let names: Vec<&str> = supported.iter().map(|f| f.name()).collect();
            return Err(CliError::Usage(format!(
                "format {} is not available here; choose one of {}",
                format.name(),
                names.join(", ")
            )));
        }
        Ok(Output { target, format })
    }

    pub fn write(&self, body: &str) -> Result<(), CliError> {
        match &self.target {
            Target::Stdout => {
                let mut stdout = io::stdout().lock();
                stdout.write_all(body.as_bytes())?;
                stdout.flush()?;
            }
            Target::File(path) => {
                fs::write(path, body).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            }
        }
        Ok(())
    }
}

pub fn num(x: f64) -> String {
    // Plain `{}` is the shortest representation that reads back exactly.
    if x == 0.0 {
        "0".into()
    } else {
        format!("{x}")
    }
}

fn finish(writer: csv::Writer<Vec<u8>>) -> Result<String, CliError> {
    let bytes = writer.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is ASCII"))
}

/// `re,im` rows.
pub fn points_csv(points: &[ComplexPoint]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["re", "im"])?;
    for p in points {
        w.write_record([num(p.re), num(p.im)])?;
    }
    finish(w)
}

/// `branch,re,im` rows, one branch per polyline.
pub fn branches_csv(branches: &[Vec<ComplexPoint>]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["branch", "re", "im"])?;
    for (k, branch) in branches.iter().enumerate() {
        for p in branch {
            w.write_record([k.to_string(), num(p.re), num(p.im)])?;
        }
    }
    finish(w)
}

pub fn rows_csv<I, R>(header: Option<&[String]>, rows: I) -> Result<String, CliError>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut w = csv::WriterBuilder::new().flexible(false).from_writer(Vec::new());
    if let Some(h) = header {
        w.write_record(h)?;
    }
    for row in rows {
        w.write_record(row)?;
    }
    finish(w)
}

/// Reads a point file written by any subcommand: needs `re` and `im`
/// columns; an optional `branch` column splits it into polylines.
pub fn read_polylines(path: &Path) -> Result<Vec<Vec<ComplexPoint>>, CliError> {
    let mut reader = csv::Reader::from_path(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let headers = reader.headers()?.clone();
    let column = |name: &str| headers.iter().position(|h| h.trim() == name);
    let (re, im) = match (column("re"), column("im")) {
        (Some(re), Some(im)) => (re, im),
        _ => return Err(CliError::Usage(format!("{}: needs `re` and `im` columns", path.display()))),
    };
    let branch = column("branch");
    let mut lines: Vec<Vec<ComplexPoint>> = Vec::new();
    let mut current: Option<String> = None;
    for record in reader.records() {
        let record = record?;
        let field = |i: usize| -> Result<f64, CliError> {
            let text = record.get(i).unwrap_or("").trim();
            text.parse().map_err(|_| CliError::Usage(format!("{}: bad number {text:?}", path.display())))
        };
        let p = ComplexPoint::new(field(re)?, field(im)?);
        let key = branch.map(|b| record.get(b).unwrap_or("").to_owned());
        if lines.is_empty() || key != current {
            lines.push(Vec::new());
            current = key;
        }
        lines.last_mut().expect("pushed above").push(p);
    }
    Ok(lines)
}
