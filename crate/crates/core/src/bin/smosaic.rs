use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};

use spherical_mosaic::io::{census_csv, parse_any, parse_kmt, render, serialize_smt, Style};
use spherical_mosaic::knotid::{
    classify_with_limit, extract_codes, KnotIdError, KnotTable, DEFAULT_CROSSING_LIMIT,
};
use spherical_mosaic::search::{
    census, invariants_exhaustive, search_knot, Certainty, Invariant, InvariantBudget, SearchConstraints,
    SearchOutcome,
};
use spherical_mosaic::sphere::validate;
use spherical_mosaic::trace::{components, stats};
use spherical_mosaic::transforms::{
    embed, max_crossing_construction, reduce_tiling, wrap_shrink_one, wrap_shrink_two, CornerChoice,
};
use spherical_mosaic::{ClassicalMosaic, FaceId, SphericalMosaic};

const LARGE_N: usize = 8;

// writes to stdout, ignoring a closed pipe
macro_rules! say {
    ($($arg:tt)*) => {{
        let _ = writeln!(io::stdout(), $($arg)*);
    }};
}

#[derive(Parser)]
#[command(name = "smosaic", version, about = "Spherical knot mosaics on the cube surface")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum RenderStyle {
    Svg,
    Ascii,
}

#[derive(Subcommand)]
enum Command {
    /// Check that every connection point meets another one.
    Validate { file: PathBuf },
    /// List the strand components of a mosaic.
    Trace { file: PathBuf },
    /// Identify the knot type of a knot mosaic.
    Classify { file: PathBuf },
    /// Draw the cube net.
    Render {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "svg")]
        style: RenderStyle,
    },
    /// Place a classical mosaic on one face of the cube.
    Embed {
        kmt: PathBuf,
        #[arg(long, default_value = "F")]
        face: String,
    },
    /// Wrap a classical n-mosaic onto a smaller cube.
    Shrink {
        kmt: PathBuf,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
        levels: u8,
        #[arg(long, default_value = "bl")]
        corner: String,
    },
    /// Fold a classical mosaic around the cube at the given cell.
    ReduceTiling {
        kmt: PathBuf,
        #[arg(long)]
        pos: String,
    },
    /// Build a mosaic with a crossing tile in every cell.
    Maxcross {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        alternating: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Enumerate mosaics up to rotation and write the census CSV.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        require_knot: bool,
        #[arg(long)]
        max_tiles: Option<usize>,
        #[arg(long)]
        csv: PathBuf,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Look for a mosaic of the given knot type.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        knot: String,
        #[arg(long, default_value_t = 2_000_000)]
        budget: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Bound the spherical mosaic invariants of a table knot.
    Invariants {
        #[arg(long)]
        knot: String,
        #[arg(long, default_value_t = 2)]
        nmax: usize,
        #[arg(long)]
        tiles: Option<usize>,
        #[arg(long)]
        nodes: Option<u64>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

enum Failure {
    User(anyhow::Error),
    Internal(anyhow::Error),
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Failure {
        Failure::User(e.into())
    }
}

type CliResult = Result<(), Failure>;

fn read_input(path: &Path) -> anyhow::Result<String> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text).context("reading standard input")?;
        Ok(text)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn read_mosaic(path: &Path) -> anyhow::Result<SphericalMosaic> {
    let text = read_input(path)?;
    parse_any(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read_classical(path: &Path) -> anyhow::Result<ClassicalMosaic> {
    let text = read_input(path)?;
    parse_kmt(&text).with_context(|| format!("parsing {}", path.display()))
}

fn require_valid(m: &SphericalMosaic) -> CliResult {
    let report = validate(m);
    if report.is_valid() {
        return Ok(());
    }
    for mm in &report.mismatches {
        eprintln!("mismatch: {mm}");
    }
    Err(Failure::User(anyhow!("not suitably connected: {} mismatched midpoints", report.mismatches.len())))
}

fn warn_large(n: usize) {
    if n > LARGE_N {
        eprintln!("warning: n = {n} is large; this may take very long");
    }
}

fn write_stdout(text: &str) -> CliResult {
    match io::stdout().write_all(text.as_bytes()) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(Failure::User(anyhow!(e).context("writing output"))),
        _ => Ok(()),
    }
}

fn describe(inv: &Invariant) -> String {
    let certainty = match inv.certainty {
        Certainty::Exhaustive => "exhaustive",
        Certainty::BoundAndWitness => "bound and witness",
        Certainty::Undetermined => "undetermined",
    };
    match (inv.value(), inv.upper) {
        (Some(v), _) => format!("{v} ({certainty})"),
        (None, Some(u)) => format!("{} <= value <= {u} ({certainty})", inv.lower),
        (None, None) => format!(">= {} ({certainty})", inv.lower),
    }
}

fn run(command: Command) -> CliResult {
    let table = KnotTable::bundled();
    match command {
        Command::Validate { file } => {
            let m = read_mosaic(&file)?;
            require_valid(&m)?;
            say!("valid");
        }
        Command::Trace { file } => {
            let m = read_mosaic(&file)?;
            require_valid(&m)?;
            let comps = components(&m).map_err(|e| Failure::Internal(e.into()))?;
            let s = stats(&m).map_err(|e| Failure::Internal(e.into()))?;
            say!(
                "components: {}\ntiles: {}\nfaces: {}\ncrossings: {}",
                s.components, s.non_empty_tiles, s.non_empty_faces, s.crossing_tiles
            );
            for (i, c) in comps.iter().enumerate() {
                let cells: Vec<String> = c.steps.iter().map(|st| st.cell.to_string()).collect();
                say!("component {}: {} steps: {}", i + 1, c.len(), cells.join(" "));
            }
            if s.components == 1 {
                let codes = extract_codes(&m).map_err(|e| Failure::Internal(e.into()))?;
                say!("pd: {}\ngauss: {}", codes.pd, codes.gauss);
            }
        }
        Command::Classify { file } => {
            let m = read_mosaic(&file)?;
            require_valid(&m)?;
            match classify_with_limit(&m, table, DEFAULT_CROSSING_LIMIT) {
                Ok(c) => {
                    say!("{}", c.knot);
                    say!("crossings: {}", c.crossings);
                    say!("jones: {}", c.jones);
                    say!("determinant: {}", c.determinant);
                }
                Err(e @ KnotIdError::DeterminantMismatch { .. }) => return Err(Failure::Internal(e.into())),
                Err(e) => return Err(Failure::User(e.into())),
            }
        }
        Command::Render { file, out, style } => {
            let m = read_mosaic(&file)?;
            let style = match style {
                RenderStyle::Svg => Style::Svg,
                RenderStyle::Ascii => Style::Ascii,
            };
            let doc = render(&m, style);
            match out {
                Some(path) => fs::write(&path, doc).with_context(|| format!("writing {}", path.display()))?,
                None => write_stdout(&doc)?,
            }
        }
        Command::Embed { kmt, face } => {
            let k = read_classical(&kmt)?;
            let face = face
                .chars()
                .next()
                .filter(|_| face.len() == 1)
                .and_then(|c| FaceId::from_letter(c.to_ascii_uppercase()))
                .ok_or_else(|| anyhow!("unknown face `{face}`, expected one of U L F R B D"))?;
            write_stdout(&serialize_smt(&embed(&k, face)?))?;
        }
        Command::Shrink { kmt, levels, corner } => {
            let k = read_classical(&kmt)?;
            let m = if levels == 1 {
                let corner =
                    CornerChoice::parse(&corner).ok_or_else(|| anyhow!("unknown corner `{corner}`"))?;
                wrap_shrink_one(&k, corner)?
            } else {
                wrap_shrink_two(&k)?
            };
            write_stdout(&serialize_smt(&m))?;
        }
        Command::ReduceTiling { kmt, pos } => {
            let k = read_classical(&kmt)?;
            let (r, c) = pos
                .split_once(',')
                .and_then(|(r, c)| Some((r.trim().parse().ok()?, c.trim().parse().ok()?)))
                .ok_or_else(|| anyhow!("--pos expects R,C"))?;
            write_stdout(&serialize_smt(&reduce_tiling(&k, r, c)?))?;
        }
        Command::Maxcross { n, alternating, seed } => {
            if n == 0 {
                return Err(Failure::User(anyhow!("n must be positive")));
            }
            warn_large(n);
            let run = max_crossing_construction(n, alternating, seed);
            let s = stats(&run.mosaic).map_err(|e| Failure::Internal(e.into()))?;
            if s.components != 1 {
                return Err(Failure::Internal(anyhow!("construction left {} components", s.components)));
            }
            eprintln!(
                "crossing tiles: {}, replacements: {}, components: {} -> 1",
                s.crossing_tiles,
                run.replaced.len(),
                run.initial_components
            );
            write_stdout(&serialize_smt(&run.mosaic))?;
        }
        Command::Enumerate { n, require_knot, max_tiles, csv, jobs } => {
            warn_large(n);
            let base = if require_knot { SearchConstraints::knots(n) } else { SearchConstraints::new(n) };
            let c = SearchConstraints { max_tiles, ..base };
            let records = census(&c, table, jobs.max(1))?;
            fs::write(&csv, census_csv(&records)).with_context(|| format!("writing {}", csv.display()))?;
            let visits: usize = records.iter().map(|r| r.orbit_size).sum();
            eprintln!("{} mosaics in {} rotation classes", visits, records.len());
        }
        Command::Search { n, knot, budget, seed } => {
            warn_large(n);
            if table.get(&knot).is_none() {
                return Err(Failure::User(anyhow!("`{knot}` is not in the knot table")));
            }
            match search_knot(n, &knot, budget, seed, table) {
                SearchOutcome::Found { mosaic, nodes } => {
                    eprintln!("found after {nodes} nodes");
                    write_stdout(&serialize_smt(&mosaic))?;
                }
                SearchOutcome::NotFound { nodes, exhausted } => {
                    let why = if exhausted { "none exists" } else { "budget spent" };
                    return Err(Failure::User(anyhow!("no witness after {nodes} nodes ({why})")));
                }
            }
        }
        Command::Invariants { knot, nmax, tiles, nodes, seed } => {
            warn_large(nmax);
            let defaults = InvariantBudget::default();
            let budget = InvariantBudget {
                tiles: tiles.unwrap_or(defaults.tiles),
                nodes: nodes.unwrap_or(defaults.nodes),
                seed,
                ..defaults
            };
            let report = invariants_exhaustive(&knot, nmax, budget, table)
                .ok_or_else(|| anyhow!("`{knot}` is not in the knot table"))?;
            say!("knot: {}", report.knot);
            say!("sm: {}", describe(&report.sm));
            say!("st: {}", describe(&report.st));
            say!("st_M: {}", describe(&report.st_m));
            say!("sf: {}", describe(&report.sf));
            for (n, inv) in &report.sf_n {
                say!("sf_{n}: {}", describe(inv));
            }
            say!("sf_M: {}", describe(&report.sf_m));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::User(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Internal(e)) => {
            eprintln!("internal error: {e:#}");
            ExitCode::from(2)
        }
    }
}
