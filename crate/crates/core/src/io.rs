//! Text formats: `.poly` cell lists and tiling certificates.
//!
//! `.poly`: `dim n` on the first line, then one cell per line as
//! space-separated integers. Lines starting with `%` are comments.
//!
//! Certificate:
//!
//! ```text
//! dim 3
//! lattice 80 60 0
//! lattice -80 60 0
//! lattice 0 0 60
//! params 4 3
//! tile encoder encoder.poly
//! encoder 0 0 0
//! ```
//!
//! `lattice` rows span the period lattice, `params t p` is optional, tile
//! paths are relative to the certificate, and every other line is a
//! placement `tile_id dx dy dz [dw]`.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use crate::error::{FormatError, ParseError, TilingError};
use crate::geometry::{Cell, Polyform, MAX_DIM};
use crate::lattice::QuotientRegion;
use crate::layers::parse_layer_diagram;
use crate::tiling::{Params, Placement, TileRef, TilingCertificate};

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, message: message.into() }
}

fn ints<T: std::str::FromStr>(line: usize, words: &[&str]) -> Result<Vec<T>, ParseError> {
    words.iter().map(|w| w.parse::<T>().map_err(|_| syntax(line, format!("`{w}` is not an integer")))).collect()
}

pub fn parse_poly(text: &str) -> Result<Polyform, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(n, l)| (n + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('%'));
    let (n, header) = lines.next().ok_or_else(|| syntax(0, "empty file"))?;
    let dim: usize = header
        .strip_prefix("dim")
        .and_then(|d| d.trim().parse().ok())
        .ok_or_else(|| syntax(n, "expected `dim n`"))?;
    if !(2..=MAX_DIM).contains(&dim) {
        return Err(syntax(n, format!("unsupported dimension {dim}")));
    }
    let mut cells = Vec::new();
    for (n, line) in lines {
        let words: Vec<&str> = line.split_whitespace().collect();
        if words.len() != dim {
            return Err(syntax(n, format!("expected {dim} coordinates, found {}", words.len())));
        }
        cells.push(Cell::new(&ints::<i32>(n, &words)?));
    }
    Ok(Polyform::from_cells(dim, cells))
}

/// Reads either `.poly` text or a layer diagram.
pub fn parse_polyform(text: &str) -> Result<Polyform, ParseError> {
    let first = text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('%'));
    match first {
        Some(l) if l.starts_with("layer") => parse_layer_diagram(text),
        _ => parse_poly(text),
    }
}

pub fn write_poly(p: &Polyform) -> String {
    let mut out = String::with_capacity(16 * p.volume() + 8);
    writeln!(out, "dim {}", p.dim()).expect("write to string");
    for c in p.cells() {
        let coords: Vec<String> = c.coords(p.dim()).iter().map(i32::to_string).collect();
        out.push_str(&coords.join(" "));
        out.push('\n');
    }
    out
}

fn io_err(path: &Path, source: std::io::Error) -> FormatError {
    FormatError::Io { path: path.display().to_string(), source }
}

pub fn read_text(path: &Path) -> Result<String, FormatError> {
    fs::read_to_string(path).map_err(|e| io_err(path, e))
}

pub fn write_text(path: &Path, text: &str) -> Result<(), FormatError> {
    fs::write(path, text).map_err(|e| io_err(path, e))
}

pub fn read_polyform(path: &Path) -> Result<Polyform, FormatError> {
    Ok(parse_polyform(&read_text(path)?)?)
}

/// Certificate text, naming each tile by `paths[i]`.
pub fn certificate_text(cert: &TilingCertificate, paths: &[String]) -> String {
    let dim = cert.dim();
    let mut out = String::new();
    writeln!(out, "dim {dim}").expect("write to string");
    for row in cert.region.rows() {
        let r: Vec<String> = row.iter().map(i64::to_string).collect();
        writeln!(out, "lattice {}", r.join(" ")).expect("write to string");
    }
    if let Some(Params { t, p }) = cert.params {
        writeln!(out, "params {t} {p}").expect("write to string");
    }
    for (tile, path) in cert.tiles.iter().zip(paths) {
        writeln!(out, "tile {} {}", tile.name, path).expect("write to string");
    }
    for p in &cert.placements {
        let coords: Vec<String> = p.offset.coords(dim).iter().map(i32::to_string).collect();
        writeln!(out, "{} {}", cert.tiles[p.tile].name, coords.join(" ")).expect("write to string");
    }
    out
}

/// A parsed certificate before its tiles are loaded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateFile {
    pub dim: usize,
    pub lattice: Vec<Vec<i64>>,
    pub params: Option<Params>,
    pub tiles: Vec<(String, String)>,
    pub placements: Vec<(String, Cell)>,
}

pub fn parse_certificate(text: &str) -> Result<CertificateFile, ParseError> {
    let mut dim = None;
    let mut file = CertificateFile { dim: 0, lattice: Vec::new(), params: None, tiles: Vec::new(), placements: Vec::new() };
    for (n, raw) in text.lines().enumerate() {
        let n = n + 1;
        let words: Vec<&str> = raw.split_whitespace().collect();
        let Some((&head, rest)) = words.split_first() else {
            continue;
        };
        if head.starts_with('%') {
            continue;
        }
        if head == "dim" {
            let d: usize = rest.first().and_then(|d| d.parse().ok()).ok_or_else(|| syntax(n, "expected `dim n`"))?;
            if !(1..=MAX_DIM).contains(&d) {
                return Err(syntax(n, format!("unsupported dimension {d}")));
            }
            dim = Some(d);
            continue;
        }
        let d = dim.ok_or_else(|| syntax(n, "`dim` must come first"))?;
        match head {
            "lattice" if rest.len() == d => file.lattice.push(ints(n, rest)?),
            "params" if rest.len() == 2 => {
                let v: Vec<usize> = ints(n, rest)?;
                file.params = Some(Params { t: v[0], p: v[1] });
            }
            "tile" if rest.len() == 2 => file.tiles.push((rest[0].to_string(), rest[1].to_string())),
            "lattice" | "params" | "tile" => return Err(syntax(n, format!("malformed `{head}` line"))),
            name if rest.len() == d => file.placements.push((name.to_string(), Cell::new(&ints::<i32>(n, rest)?))),
            _ => return Err(syntax(n, format!("expected `tile_id` and {d} coordinates"))),
        }
    }
    file.dim = dim.ok_or_else(|| syntax(0, "missing `dim`"))?;
    Ok(file)
}

pub fn load_certificate(path: &Path) -> Result<TilingCertificate, FormatError> {
    let file = parse_certificate(&read_text(path)?)?;
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    let mut tiles = Vec::new();
    for (name, rel) in &file.tiles {
        let shape = read_polyform(&base.join(rel))?;
        tiles.push(TileRef { name: name.clone(), shape: Arc::new(shape) });
    }
    assemble(file, tiles)
}

/// Joins a parsed certificate with its tile shapes.
pub fn assemble(file: CertificateFile, tiles: Vec<TileRef>) -> Result<TilingCertificate, FormatError> {
    if file.lattice.len() != file.dim {
        return Err(TilingError::LatticeShape { dim: file.dim }.into());
    }
    let region = QuotientRegion::new(file.lattice)?;
    let mut cert = TilingCertificate::new(region, tiles);
    cert.params = file.params;
    for (name, offset) in file.placements {
        let tile = cert.tile_index(&name).ok_or(TilingError::UnknownTile(name))?;
        cert.placements.push(Placement { tile, offset });
    }
    Ok(cert)
}

/// Writes `certificate.txt` and one `<tile>.poly` per tile into `dir`.
pub fn save_certificate(dir: &Path, cert: &TilingCertificate) -> Result<PathBuf, FormatError> {
    fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    let mut paths = Vec::new();
    for tile in &cert.tiles {
        let name = format!("{}.poly", tile.name);
        write_text(&dir.join(&name), &write_poly(&tile.shape))?;
        paths.push(name);
    }
    let path = dir.join("certificate.txt");
    write_text(&path, &certificate_text(cert, &paths))?;
    Ok(path)
}
