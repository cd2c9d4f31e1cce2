//! The `lozenge-forge` command line.

pub mod render;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lozenge_core::domain::DomainJson;
use lozenge_core::enumerator::{enumerate_with_jobs, stream_tilings};
use lozenge_core::fracture::{fracture_zones, ZoneKind};
use lozenge_core::heights::height_from_tiling;
use lozenge_core::partitions::{
    limited_partitions, limited_partitions_unpruned, limited_plane_partitions, limited_plane_partitions_unpruned,
};
use lozenge_core::seeds::PileSpace;
use lozenge_core::{from_contour, hexagon, thurston, Domain, Error, Mode, Partition, PlanePartition, Tiling, Vertex};
use serde_json::json;

use crate::render::{render, RenderFormat, RenderSpec};

pub const SEED_LOG_VAR: &str = "LOZENGE_FORGE_SEED_LOG";

#[derive(Parser, Debug)]
#[command(name = "lozenge-forge", version, about = "Lozenge tilings: tileability, extremal tilings, exhaustive generation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct DomainArgs {
    /// Contour word over a b c A B C, read counterclockwise.
    #[arg(long)]
    contour: Option<String>,
    /// JSON file with `contour` and `start` fields.
    #[arg(long)]
    domain: Option<PathBuf>,
    /// Hexagon side lengths as x,y,z.
    #[arg(long, value_parser = parse_triple)]
    hexagon: Option<(i32, i32, i32)>,
}

#[derive(Args, Debug, Clone)]
pub struct Input {
    #[command(flatten)]
    domain: DomainArgs,
    /// Starting vertex p,q of the contour.
    #[arg(long, value_parser = parse_pair, default_value = "0,0", allow_hyphen_values = true)]
    start: (i32, i32),
    /// Worker threads for fertile zones; output does not depend on it.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TilingFormat {
    Json,
    Height,
    Ascii,
    Svg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LatticeFormat {
    Dot,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Extreme {
    Min,
    Max,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Picture {
    Svg,
    Ascii,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Report whether the domain can be tiled.
    Check(Input),
    /// Print the minimal tiling.
    Min {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "json")]
        format: TilingFormat,
    },
    /// Print the maximal tiling.
    Max {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "json")]
        format: TilingFormat,
    },
    /// Print the number of tilings.
    Count(Input),
    /// Print every tiling, one per line.
    Enumerate {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "json")]
        format: TilingFormat,
        /// Print the lattice of tilings instead of the tilings.
        #[arg(long, value_enum)]
        lattice: Option<LatticeFormat>,
        /// Write enumeration counters to stderr as JSON.
        #[arg(long)]
        stats: bool,
    },
    /// Print the lattice of tilings.
    Lattice {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "dot")]
        format: LatticeFormat,
        /// Attach the rank of each node.
        #[arg(long)]
        ranks: bool,
    },
    /// Print solid vertices and zones.
    Fracture(Input),
    /// Print the chain of proper seeds of every fertile zone.
    Seeds(Input),
    /// Print the partitions (or plane partitions) below a limit.
    Partitions {
        /// Limit partition, e.g. 3,2,2.
        #[arg(long, value_parser = parse_partition, conflicts_with = "plane", required_unless_present = "plane")]
        limit: Option<Partition>,
        /// Limit plane partition, rows separated by `;`, e.g. "2,1;1,0".
        #[arg(long, value_parser = parse_plane)]
        plane: Option<PlanePartition>,
        /// Only this weight; every weight when absent.
        #[arg(long, allow_hyphen_values = true)]
        weight: Option<i64>,
        /// Use the recursion without its pruning tests.
        #[arg(long)]
        unpruned: bool,
    },
    /// Draw the minimal or maximal tiling.
    Render {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "svg")]
        format: Picture,
        #[arg(long, value_enum, default_value = "min")]
        which: Extreme,
        /// Pixels per unit for SVG (default 20), rows per triangle for ASCII (default 1).
        #[arg(long)]
        scale: Option<u32>,
        /// Write to this file instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn parse_ints(s: &str) -> Result<Vec<i64>, String> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|x| x.trim().parse::<i64>().map_err(|e| format!("{x:?}: {e}"))).collect()
}

fn parse_triple(s: &str) -> Result<(i32, i32, i32), String> {
    match parse_ints(s)?.as_slice() {
        &[x, y, z] => Ok((x as i32, y as i32, z as i32)),
        _ => Err("expected three comma-separated integers".into()),
    }
}

fn parse_pair(s: &str) -> Result<(i32, i32), String> {
    match parse_ints(s)?.as_slice() {
        &[p, q] => Ok((p as i32, q as i32)),
        _ => Err("expected two comma-separated integers".into()),
    }
}

fn parse_parts(s: &str) -> Result<Vec<u32>, String> {
    parse_ints(s)?.into_iter().map(|x| u32::try_from(x).map_err(|_| format!("{x} is negative"))).collect()
}

fn parse_partition(s: &str) -> Result<Partition, String> {
    let p = Partition::new(parse_parts(s)?);
    if !p.is_non_increasing() {
        return Err("parts must be non-increasing".into());
    }
    Ok(p)
}

fn parse_plane(s: &str) -> Result<PlanePartition, String> {
    let rows = s.split(';').map(parse_parts).collect::<Result<Vec<_>, _>>()?;
    PlanePartition::from_rows(rows).map_err(|e| e.to_string())
}

/// Failures carry their exit code: 1 for untileable input, 2 otherwise.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e == Error::Untileable { 1 } else { 2 };
        Failure { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure { code: 2, message: e.to_string() }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure { code: 2, message: e.to_string() }
    }
}

type Outcome = Result<(), Failure>;

impl Input {
    fn load(&self) -> Result<Domain, Failure> {
        let start = Vertex::new(self.start.0, self.start.1);
        let d = &self.domain;
        if let Some(word) = &d.contour {
            return Ok(from_contour(word, start)?);
        }
        if let Some(path) = &d.domain {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure { code: 2, message: format!("{}: {e}", path.display()) })?;
            let json: DomainJson = serde_json::from_str(&text)?;
            return Ok(json.to_domain()?);
        }
        let (x, y, z) = d.hexagon.expect("clap enforces one domain source");
        Ok(hexagon(x, y, z)?)
    }
}

fn tiling_line(d: &Domain, t: &Tiling, format: TilingFormat) -> Result<String, Failure> {
    Ok(match format {
        TilingFormat::Json => serde_json::to_string(t)?,
        TilingFormat::Height => serde_json::to_string(&height_from_tiling(d, t)?.to_json(d))?,
        TilingFormat::Ascii => render(t, &RenderSpec::new(RenderFormat::Ascii, 1)),
        TilingFormat::Svg => render(t, &RenderSpec::new(RenderFormat::Svg, 20)),
    })
}

fn write_tiling(out: &mut dyn Write, d: &Domain, t: &Tiling, format: TilingFormat) -> Outcome {
    // pictures end with a newline already, so they come out separated by a
    // blank line
    writeln!(out, "{}", tiling_line(d, t, format)?)?;
    Ok(())
}

/// Dump the proper seeds of every generation of every fertile zone.
fn seed_records(d: &Domain) -> Result<Vec<serde_json::Value>, Failure> {
    let zones = fracture_zones(d)?;
    let mut lines = Vec::new();
    for (z, zone) in zones.zones.iter().enumerate().filter(|(_, z)| z.kind == ZoneKind::Fertile) {
        let space = PileSpace::new(Arc::new(zone.domain.clone()))?;
        for (k, g) in space.dk_chain()?.iter().enumerate() {
            lines.push(json!({ "zone": z, "generation": k, "seeds": g.seeds }));
        }
    }
    Ok(lines)
}

fn log_seeds(d: &Domain, err: &mut dyn Write) -> Outcome {
    if std::env::var(SEED_LOG_VAR).is_ok_and(|v| v == "1") {
        for line in seed_records(d)? {
            writeln!(err, "{line}")?;
        }
    }
    Ok(())
}

fn execute(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Check(input) => {
            let d = input.load()?;
            match thurston(&d, Mode::Minimal) {
                Ok(_) => writeln!(out, "tileable")?,
                Err(Error::Untileable) => {
                    writeln!(out, "untileable")?;
                    return Err(Failure { code: 1, message: String::new() });
                }
                Err(e) => return Err(e.into()),
            }
        }
        Command::Min { input, format } => {
            let d = input.load()?;
            write_tiling(out, &d, &thurston(&d, Mode::Minimal)?, format)?;
        }
        Command::Max { input, format } => {
            let d = input.load()?;
            write_tiling(out, &d, &thurston(&d, Mode::Maximal)?, format)?;
        }
        Command::Count(input) => {
            let d = input.load()?;
            log_seeds(&d, err)?;
            let stats = stream_tilings(&d, input.jobs, |_| {})?;
            writeln!(out, "{}", stats.emitted)?;
        }
        Command::Enumerate { input, format, lattice, stats } => {
            let d = input.load()?;
            log_seeds(&d, err)?;
            let counters = if let Some(kind) = lattice {
                let res = enumerate_with_jobs(&d, input.jobs)?;
                write_lattice(out, &res.full, kind, false)?;
                res.stats
            } else {
                let mut failure = None;
                let counters = stream_tilings(&d, input.jobs, |t| {
                    if failure.is_none() {
                        failure = write_tiling(out, &d, t, format).err();
                    }
                })?;
                if let Some(f) = failure {
                    return Err(f);
                }
                counters
            };
            if stats {
                writeln!(err, "{}", serde_json::to_string(&counters)?)?;
            }
        }
        Command::Lattice { input, format, ranks } => {
            let d = input.load()?;
            let res = enumerate_with_jobs(&d, input.jobs)?;
            write_lattice(out, &res.full, format, ranks)?;
        }
        Command::Fracture(input) => {
            let d = input.load()?;
            let z = fracture_zones(&d)?;
            for (i, zone) in z.zones.iter().enumerate() {
                let line = json!({
                    "zone": i,
                    "kind": zone.kind,
                    "triangles": zone.triangles().len(),
                    "contour": zone.boundary_word(),
                    "start": zone.boundary()[0],
                    "lozenge": zone.lozenge,
                });
                writeln!(out, "{line}")?;
            }
            writeln!(out, "{}", json!({ "solid": z.solid, "merged": z.merged }))?;
        }
        Command::Seeds(input) => {
            let d = input.load()?;
            for line in seed_records(&d)? {
                writeln!(out, "{line}")?;
            }
        }
        Command::Partitions { limit, plane, weight, unpruned } => {
            if let Some(p) = limit {
                let weights: Vec<i64> = weight.map_or_else(|| (0..=p.weight() as i64).collect(), |w| vec![w]);
                for s in weights {
                    let stream = if unpruned { limited_partitions_unpruned(s, &p)? } else { limited_partitions(s, &p)? };
                    for a in stream {
                        writeln!(out, "{}", serde_json::to_string(&a.parts)?)?;
                    }
                }
            } else if let Some(p) = plane {
                let weights: Vec<i64> = weight.map_or_else(|| (0..=p.weight() as i64).collect(), |w| vec![w]);
                for s in weights {
                    let stream = if unpruned {
                        limited_plane_partitions_unpruned(s, &p)?
                    } else {
                        limited_plane_partitions(s, &p)?
                    };
                    for a in stream {
                        let rows: Vec<&Vec<u32>> = a.rows.iter().map(|r| &r.parts).collect();
                        writeln!(out, "{}", serde_json::to_string(&rows)?)?;
                    }
                }
            }
        }
        Command::Render { input, format, which, scale, output } => {
            let d = input.load()?;
            let mode = if which == Extreme::Min { Mode::Minimal } else { Mode::Maximal };
            let t = thurston(&d, mode)?;
            let kind = if format == Picture::Svg { RenderFormat::Svg } else { RenderFormat::Ascii };
            let scale = scale.unwrap_or(if kind == RenderFormat::Svg { 20 } else { 1 });
            let text = render(&t, &RenderSpec::new(kind, scale));
            match output {
                Some(path) => std::fs::write(&path, text)
                    .map_err(|e| Failure { code: 2, message: format!("{}: {e}", path.display()) })?,
                None => write!(out, "{text}")?,
            }
        }
    }
    Ok(())
}

fn write_lattice(
    out: &mut dyn Write,
    l: &lozenge_core::lattice::TilingLattice,
    format: LatticeFormat,
    ranks: bool,
) -> Outcome {
    match format {
        LatticeFormat::Dot => write!(out, "{}", l.to_dot(ranks))?,
        LatticeFormat::Json => {
            let levels: Vec<usize> = l.levels().iter().map(Vec::len).collect();
            let edges: Vec<(usize, usize)> = l.edges().collect();
            let line = json!({ "size": l.len(), "bottom": l.bottom(), "top": l.top(), "levels": levels, "edges": edges });
            writeln!(out, "{line}")?;
        }
    }
    Ok(())
}

/// Parse `args` and run; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return 2;
            }
            let _ = write!(out, "{}", e.render());
            return 0;
        }
    };
    match execute(cli.command, out, err) {
        Ok(()) => 0,
        Err(f) => {
            if !f.message.is_empty() {
                let _ = writeln!(err, "error: {}", f.message);
            }
            f.code
        }
    }
}
