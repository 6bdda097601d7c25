use std::error::Error;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use wangcube::blocks::{block, verify_catalog, BlockId};
use wangcube::io::{
    certificate_text, load_certificate, read_polyform, read_text, save_certificate, write_poly, write_text,
};
use wangcube::lattice::QuotientRegion;
use wangcube::reduction::{build_tileset, encoder_layout3, encoder_layout4, linker_layout3, linker_layout4, LinkerVariant};
use wangcube::render::{render_level1, render_level1_svg, render_level2, render_level2_svg};
use wangcube::solver::{self, Limits, Mode, Outcome, Region};
use wangcube::tiling::{
    build_tiling3, build_tiling4, encoder_column_check, linker_lattice_check, verify_partition, TileRef,
    TilingCertificate,
};
use wangcube::wang::{smallest_torus, solve_torus, WangAssignment, WangTileSet};
use wangcube::Polyform;

#[derive(Parser)]
#[command(name = "wangcube", version, about = "Compile Wang tile sets into polycube tile sets and verify the tilings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Block catalog commands.
    #[command(subcommand)]
    Blocks(BlocksCmd),
    /// Compile a Wang tile set into encoder, linker and filler tiles.
    Compile {
        wang: PathBuf,
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Wang tile set commands.
    #[command(subcommand)]
    Wang(WangCmd),
    /// Periodic tilings: build, verify, lattice checks.
    #[command(subcommand)]
    Tiling(TilingCmd),
    /// Exact-cover search for a tiling of a box or a torus.
    Solve(SolveArgs),
    /// Layer diagrams.
    #[command(subcommand)]
    Render(RenderCmd),
}

#[derive(Subcommand)]
enum BlocksCmd {
    /// Audit the shipped block catalog.
    Verify,
}

#[derive(Subcommand)]
enum WangCmd {
    /// Find a periodic Wang tiling.
    Solve {
        wang: PathBuf,
        #[command(flatten)]
        torus: TorusArgs,
    },
}

#[derive(clap::Args)]
struct TorusArgs {
    /// Fixed torus size `AxB`; otherwise the smallest one is searched.
    #[arg(long, value_parser = parse_torus)]
    torus: Option<(usize, usize)>,
    #[arg(long, default_value_t = 4)]
    max_side: usize,
}

#[derive(Subcommand)]
enum TilingCmd {
    /// Solve a torus and write the space tiling certificate.
    Build {
        wang: PathBuf,
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        torus: TorusArgs,
    },
    /// Check that a certificate is an exact partition.
    Verify { certificate: PathBuf },
    /// Check linker lattice and encoder columns of a built certificate.
    CheckLattice { certificate: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum SolveMode {
    First,
    Count,
}

#[derive(clap::Args)]
struct SolveArgs {
    /// Directory of `.poly` tiles, taken in file name order.
    #[arg(long)]
    tiles: PathBuf,
    /// Box size such as `4x4` or `10x10x10`.
    #[arg(long, conflicts_with = "lattice", required_unless_present = "lattice")]
    region: Option<String>,
    /// File of lattice rows, one per line.
    #[arg(long)]
    lattice: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "first")]
    mode: SolveMode,
    /// Node budget.
    #[arg(long)]
    budget: Option<u64>,
    /// Where to write the certificate of a found tiling.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum RenderCmd {
    /// Cell-level layer diagram of a block name or a `.poly` file.
    Level1 {
        shape: String,
        #[arg(long)]
        svg: bool,
    },
    /// Block-level layer diagram of a compiled tile.
    Level2 {
        wang: PathBuf,
        #[arg(long, default_value = "encoder")]
        tile: String,
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[arg(long)]
        svg: bool,
        /// Tint the four segments of encoding rows.
        #[arg(long)]
        segments: bool,
    },
}

/// Failure modes mapped to exit codes.
enum Failure {
    /// Search found nothing or a check failed.
    Negative(String),
    /// Bad input or I/O.
    Usage(String),
}

impl<E: Error> From<E> for Failure {
    fn from(e: E) -> Failure {
        Failure::Usage(e.to_string())
    }
}

type Run = Result<(), Failure>;

fn parse_torus(s: &str) -> Result<(usize, usize), String> {
    let dims = parse_dims(s)?;
    match dims[..] {
        [a, b] if a > 0 && b > 0 => Ok((a as usize, b as usize)),
        _ => Err(format!("expected AxB, got `{s}`")),
    }
}

fn parse_dims(s: &str) -> Result<Vec<i32>, String> {
    s.split('x').map(|d| d.trim().parse::<i32>().map_err(|_| format!("bad size `{s}`"))).collect()
}

fn load_wang(path: &Path) -> Result<WangTileSet, Failure> {
    Ok(WangTileSet::from_json(&read_text(path)?)?)
}

fn find_torus(w: &WangTileSet, args: &TorusArgs) -> Result<WangAssignment, Failure> {
    let found = match args.torus {
        Some((a, b)) => solve_torus(w, a, b),
        None => smallest_torus(w, args.max_side),
    };
    found.ok_or_else(|| Failure::Negative("no periodic Wang tiling on the requested tori".into()))
}

fn blocks_verify() -> Run {
    let checks = verify_catalog();
    for c in &checks {
        println!("{c}");
    }
    let failed = checks.iter().filter(|c| c.failure.is_some()).count();
    if failed > 0 {
        return Err(Failure::Negative(format!("{failed} catalog check(s) failed")));
    }
    Ok(())
}

fn compile(wang: &Path, dim: usize, out: &Path) -> Run {
    let ts = build_tileset(&load_wang(wang)?, dim)?;
    fs::create_dir_all(out).map_err(|e| Failure::Usage(format!("{}: {e}", out.display())))?;
    for tile in &ts.tiles {
        write_text(&out.join(format!("{}.poly", tile.name)), &write_poly(&tile.shape))?;
        println!("{} {}", tile.name, tile.shape.volume());
    }
    write_text(&out.join("manifest.txt"), &ts.manifest())?;
    Ok(())
}

fn wang_solve(wang: &Path, torus: &TorusArgs) -> Run {
    let a = find_torus(&load_wang(wang)?, torus)?;
    let (na, nb) = a.dims();
    println!("torus {na}x{nb}");
    print!("{a}");
    Ok(())
}

fn tiling_build(wang: &Path, dim: usize, out: &Path, torus: &TorusArgs) -> Run {
    let w = load_wang(wang)?;
    let a = find_torus(&w, torus)?;
    let cert = match dim {
        3 => build_tiling3(&w, &a)?,
        4 => build_tiling4(&w, &a)?,
        d => return Err(Failure::Usage(format!("dimension {d} is not 3 or 4"))),
    };
    let path = save_certificate(out, &cert)?;
    let (na, nb) = a.dims();
    println!("torus {na}x{nb}");
    println!("det {}", cert.region.det());
    println!("placements {}", cert.placements.len());
    println!("wrote {}", path.display());
    Ok(())
}

fn tiling_verify(path: &Path) -> Run {
    let cert = load_certificate(path)?;
    match verify_partition(&cert)? {
        None => {
            println!("ok: {} placements partition {} cells", cert.placements.len(), cert.region.det());
            Ok(())
        }
        Some(v) => {
            let by = v.placement.map(|k| format!(" (placement {k})")).unwrap_or_default();
            Err(Failure::Negative(format!("{:?} cell {:?}{by}", v.kind, v.cell.coords(cert.dim()))))
        }
    }
}

fn check_lattice(path: &Path) -> Run {
    let cert = load_certificate(path)?;
    let linkers = linker_lattice_check(&cert)?;
    let columns = encoder_column_check(&cert)?;
    println!("linker lattice {}", if linkers { "ok" } else { "FAIL" });
    println!("encoder columns {}", if columns { "ok" } else { "FAIL" });
    if linkers && columns {
        Ok(())
    } else {
        Err(Failure::Negative("lattice check failed".into()))
    }
}

fn load_tiles(dir: &Path) -> Result<Vec<(String, Polyform)>, Failure> {
    let entries = fs::read_dir(dir).map_err(|e| Failure::Usage(format!("{}: {e}", dir.display())))?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "poly"))
        .collect();
    paths.sort();
    let mut tiles = Vec::new();
    for p in paths {
        let name = p.file_stem().unwrap_or_default().to_string_lossy().into_owned();
        tiles.push((name, read_polyform(&p)?));
    }
    if tiles.is_empty() {
        return Err(Failure::Usage(format!("no .poly files in {}", dir.display())));
    }
    Ok(tiles)
}

fn load_lattice(path: &Path) -> Result<QuotientRegion, Failure> {
    let mut rows = Vec::new();
    for line in read_text(path)?.lines() {
        let line = line.trim();
        let line = line.strip_prefix("lattice").unwrap_or(line);
        if line.trim().is_empty() || line.starts_with('%') {
            continue;
        }
        let row: Result<Vec<i64>, _> = line.split_whitespace().map(str::parse).collect();
        rows.push(row.map_err(|_| Failure::Usage(format!("bad lattice row `{line}`")))?);
    }
    Ok(QuotientRegion::new(rows)?)
}

fn solve(args: &SolveArgs) -> Run {
    let named = load_tiles(&args.tiles)?;
    let tiles: Vec<Polyform> = named.iter().map(|(_, t)| t.clone()).collect();
    let region = match (&args.region, &args.lattice) {
        (Some(r), _) => Region::Box(parse_dims(r).map_err(Failure::Usage)?),
        (None, Some(l)) => Region::Quotient(load_lattice(l)?),
        (None, None) => return Err(Failure::Usage("give --region or --lattice".into())),
    };
    let mode = match args.mode {
        SolveMode::First => Mode::First,
        SolveMode::Count => Mode::Count,
    };
    let limits = Limits { nodes: args.budget.unwrap_or(u64::MAX), ..Limits::default() };
    match solver::solve(&tiles, &region, mode, limits)? {
        Outcome::Found(placements) => {
            let mut cert = solver::certificate(&tiles, &region, placements);
            cert.tiles = named.iter().map(|(n, t)| TileRef { name: n.clone(), shape: Arc::new(t.clone()) }).collect();
            print_placements(&cert);
            if let Some(dir) = &args.out {
                save_certificate(dir, &cert)?;
            }
            Ok(())
        }
        Outcome::Count(n) => {
            println!("count {n}");
            if n == 0 {
                Err(Failure::Negative("no tiling".into()))
            } else {
                Ok(())
            }
        }
        Outcome::Unsat => Err(Failure::Negative("no tiling".into())),
        Outcome::BudgetExhausted { nodes, counted } => {
            Err(Failure::Negative(format!("budget exhausted after {nodes} nodes, {counted} tiling(s) seen")))
        }
    }
}

fn print_placements(cert: &TilingCertificate) {
    let text = certificate_text(cert, &[]);
    for line in text.lines().filter(|l| !l.starts_with("dim") && !l.starts_with("lattice")) {
        println!("{line}");
    }
}

fn render_level1_cmd(shape: &str, svg: bool) -> Run {
    let p = match shape.parse::<BlockId>() {
        Ok(id) => block(id).clone(),
        Err(_) => read_polyform(Path::new(shape))?,
    };
    if p.dim() != 3 {
        return Err(Failure::Usage("level-1 diagrams are drawn for 3D shapes".into()));
    }
    print!("{}", if svg { render_level1_svg(&p)? } else { render_level1(&p)? });
    Ok(())
}

fn render_level2_cmd(wang: &Path, tile: &str, dim: usize, svg: bool, segments: bool) -> Run {
    let w = load_wang(wang)?;
    let layout = match (dim, tile) {
        (3, "encoder") => encoder_layout3(&w)?.blocks,
        (4, "encoder") => encoder_layout4(&w)?.blocks,
        (3, "linker-U") => linker_layout3(&w, LinkerVariant::U)?,
        (3, "linker-D") => linker_layout3(&w, LinkerVariant::D)?,
        (4, "linker") => linker_layout4(&w)?,
        _ => return Err(Failure::Usage(format!("no {dim}D tile `{tile}`"))),
    };
    if svg {
        print!("{}", render_level2_svg(&layout, segments.then(|| w.t())));
    } else {
        print!("{}", render_level2(&layout));
    }
    Ok(())
}

fn run(cli: Cli) -> Run {
    match cli.command {
        Command::Blocks(BlocksCmd::Verify) => blocks_verify(),
        Command::Compile { wang, dim, out } => compile(&wang, dim, &out),
        Command::Wang(WangCmd::Solve { wang, torus }) => wang_solve(&wang, &torus),
        Command::Tiling(TilingCmd::Build { wang, dim, out, torus }) => tiling_build(&wang, dim, &out, &torus),
        Command::Tiling(TilingCmd::Verify { certificate }) => tiling_verify(&certificate),
        Command::Tiling(TilingCmd::CheckLattice { certificate }) => check_lattice(&certificate),
        Command::Solve(args) => solve(&args),
        Command::Render(RenderCmd::Level1 { shape, svg }) => render_level1_cmd(&shape, svg),
        Command::Render(RenderCmd::Level2 { wang, tile, dim, svg, segments }) => {
            render_level2_cmd(&wang, &tile, dim, svg, segments)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Negative(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
