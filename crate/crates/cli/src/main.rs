//! Command-line surface for the convexity engine.
//!
//! Every subcommand reads plain-text files, writes its whole report to
//! standard output, and exits with 0 on success, 1 on a mathematical
//! failure or violation (with the report explaining it), and 2 on malformed
//! input. Identical inputs always produce byte-identical output.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use convexity::lattice::FiniteLattice;
use convexity::setfam::Mask;
use convexity::textio;
use convexity::{
    antipode_chain, antipode_recursive, boolean_geometry, canonical_key, chain_geometry,
    check_antiexchange, convex_shelling, coproduct, geometry_from_lattice, has_forbidden_minor,
    lattice_of_closed_sets, minor, poset_shelling, product_geometry, validate_family,
    verify_hopf_axiom, ConvexGeometry,
};

#[derive(Parser)]
#[command(
    name = "convexity",
    version,
    about = "Exact computations on finite convex geometries and their incidence Hopf algebra"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the closed-family axioms and the antiexchange property
    Validate { geom: PathBuf },
    /// Print lattice statistics and the cover relation of the closed sets
    Lattice { geom: PathBuf },
    /// Emit the convex shelling of a rational point file as a geometry file
    ShellPoints { points: PathBuf },
    /// Emit the downset geometry of a poset file as a geometry file
    ShellPoset { poset: PathBuf },
    /// Emit the chain geometry on n elements
    Chain { n: usize },
    /// Emit the Boolean geometry on n elements (every subset closed)
    Boolean { n: usize },
    /// Emit the minor between two closed sets (comma-separated labels, {} for empty)
    Minor {
        geom: PathBuf,
        #[arg(long)]
        lower: String,
        #[arg(long)]
        upper: String,
    },
    /// Emit the product geometry on the disjoint union of two ground sets
    Product { left: PathBuf, right: PathBuf },
    /// Expand the coproduct over closed sets as a formal tensor sum
    Coproduct { geom: PathBuf },
    /// Compute the antipode of the geometry's isomorphism class
    Antipode {
        geom: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Chain)]
        method: Method,
    },
    /// Verify the antipode axiom for the geometry in exact arithmetic
    CheckHopf { geom: PathBuf },
    /// Search all minors for one isomorphic to a pattern geometry
    Forbidden {
        geom: PathBuf,
        #[arg(long)]
        pattern: PathBuf,
    },
    /// Print the canonical key of the lattice of closed sets
    Canon { geom: PathBuf },
    /// Emit the Hasse diagram of the closed sets (DOT with --dot)
    Hasse {
        geom: PathBuf,
        #[arg(long)]
        dot: bool,
    },
    /// Inspect an abstract lattice file (M3/N5-style fixtures)
    LatticeCheck { lattice: PathBuf },
    /// Emit the geometry realizing a meet-distributive lattice file
    FromLattice { lattice: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    /// Signed sum over chains of closed sets
    Chain,
    /// Graded recursion, memoized on canonical keys
    Recursive,
}

/// A failed run: the report still goes to standard output, the exit code
/// tells input errors (2) apart from mathematical violations (1).
enum Failure {
    Input(String),
    Math(String),
}

type CmdResult = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(report) => {
            print!("{report}");
            ExitCode::SUCCESS
        }
        Err(Failure::Math(report)) => {
            print!("{report}");
            ExitCode::from(1)
        }
        Err(Failure::Input(diagnostic)) => {
            print!("{diagnostic}");
            ExitCode::from(2)
        }
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}\n", path.display())))
}

fn input_at(path: &Path, err: &textio::ParseError) -> Failure {
    match err.line {
        Some(n) => Failure::Input(format!("{}:{n}: {}\n", path.display(), err.message)),
        None => Failure::Input(format!("{}: {}\n", path.display(), err.message)),
    }
}

fn load_geometry(path: &Path) -> Result<ConvexGeometry, Failure> {
    let text = read_file(path)?;
    let (ground, masks) = textio::parse_geometry_parts(&text).map_err(|e| input_at(path, &e))?;
    validate_family(ground, masks).map_err(|v| Failure::Math(format!("{}: {v}\n", path.display())))
}

fn load_lattice(path: &Path) -> Result<FiniteLattice, Failure> {
    let text = read_file(path)?;
    textio::parse_lattice(&text).map_err(|e| match e {
        textio::LatticeReadError::Parse(p) => input_at(path, &p),
        textio::LatticeReadError::Lattice(l) => {
            Failure::Input(format!("{}: not a lattice: {l}\n", path.display()))
        }
    })
}

/// Resolves a comma-separated label set (`{}` for empty) against a ground set.
fn parse_set_arg(g: &ConvexGeometry, arg: &str) -> Result<Mask, Failure> {
    if arg == "{}" {
        return Ok(Mask::EMPTY);
    }
    let mut mask = Mask::EMPTY;
    for token in arg.split(',') {
        let token = token.trim();
        match g.ground().index_of(token) {
            Some(i) => mask = mask.insert(i),
            None => {
                return Err(Failure::Input(format!("unknown label `{token}`\n")));
            }
        }
    }
    Ok(mask)
}

fn run(command: Command) -> CmdResult {
    match command {
        Command::Validate { geom } => cmd_validate(&geom),
        Command::Lattice { geom } => cmd_lattice(&geom),
        Command::ShellPoints { points } => cmd_shell_points(&points),
        Command::ShellPoset { poset } => cmd_shell_poset(&poset),
        Command::Chain { n } => emit_geometry(&chain_geometry(checked_size(n)?)),
        Command::Boolean { n } => emit_geometry(&boolean_geometry(checked_size(n)?)),
        Command::Minor { geom, lower, upper } => cmd_minor(&geom, &lower, &upper),
        Command::Product { left, right } => {
            let g1 = load_geometry(&left)?;
            let g2 = load_geometry(&right)?;
            let total = g1.ground().size() + g2.ground().size();
            checked_size(total)?;
            emit_geometry(&product_geometry(&g1, &g2))
        }
        Command::Coproduct { geom } => {
            let g = load_geometry(&geom)?;
            Ok(format!("{}\n", coproduct(&g)))
        }
        Command::Antipode { geom, method } => {
            let g = load_geometry(&geom)?;
            let s = match method {
                Method::Chain => antipode_chain(&g),
                Method::Recursive => antipode_recursive(&g),
            };
            Ok(format!("{s}\n"))
        }
        Command::CheckHopf { geom } => cmd_check_hopf(&geom),
        Command::Forbidden { geom, pattern } => cmd_forbidden(&geom, &pattern),
        Command::Canon { geom } => {
            let g = load_geometry(&geom)?;
            Ok(format!("{}\n", canonical_key(&lattice_of_closed_sets(&g))))
        }
        Command::Hasse { geom, dot } => cmd_hasse(&geom, dot),
        Command::LatticeCheck { lattice } => cmd_lattice_check(&lattice),
        Command::FromLattice { lattice } => {
            let l = load_lattice(&lattice)?;
            let g = geometry_from_lattice(&l)
                .map_err(|e| Failure::Math(format!("{}: {e}\n", lattice.display())))?;
            emit_geometry(&g)
        }
    }
}

fn checked_size(n: usize) -> Result<usize, Failure> {
    if n > convexity::setfam::MAX_GROUND {
        return Err(Failure::Input(format!(
            "n = {n} exceeds the {} element cap\n",
            convexity::setfam::MAX_GROUND
        )));
    }
    Ok(n)
}

fn emit_geometry(g: &ConvexGeometry) -> CmdResult {
    Ok(textio::format_geometry(g))
}

fn cmd_validate(path: &Path) -> CmdResult {
    let g = load_geometry(path)?;
    let mut out = format!(
        "valid convex geometry: {} elements, {} closed sets\n",
        g.ground().size(),
        g.closed_sets().len()
    );
    match check_antiexchange(&g) {
        Ok(()) => out.push_str("antiexchange: ok\n"),
        Err(cx) => {
            return Err(Failure::Math(format!(
                "antiexchange fails at A={}, x={}, y={}\n",
                g.ground().render(cx.set),
                g.ground().label(cx.x),
                g.ground().label(cx.y)
            )));
        }
    }
    Ok(out)
}

fn cmd_lattice(path: &Path) -> CmdResult {
    let g = load_geometry(path)?;
    let l = lattice_of_closed_sets(&g);
    let ranks: Vec<String> = l.rank_counts().iter().map(usize::to_string).collect();
    let mut out = String::new();
    let _ = writeln!(out, "elements: {}", l.len());
    let _ = writeln!(out, "height: {}", l.height());
    let _ = writeln!(out, "ranks: {}", ranks.join(" "));
    let _ = writeln!(out, "meet-distributive: {}", l.is_meet_distributive());
    let _ = writeln!(out, "covers:");
    for (a, b) in l.cover_pairs() {
        let _ = writeln!(out, "{} < {}", l.label(a), l.label(b));
    }
    Ok(out)
}

fn cmd_shell_points(path: &Path) -> CmdResult {
    let text = read_file(path)?;
    let pc = textio::parse_points(&text).map_err(|e| input_at(path, &e))?;
    emit_geometry(&convex_shelling(&pc))
}

fn cmd_shell_poset(path: &Path) -> CmdResult {
    let text = read_file(path)?;
    let poset = textio::parse_poset(&text).map_err(|e| input_at(path, &e))?;
    emit_geometry(&poset_shelling(&poset))
}

fn cmd_minor(path: &Path, lower: &str, upper: &str) -> CmdResult {
    let g = load_geometry(path)?;
    let a = parse_set_arg(&g, lower)?;
    let b = parse_set_arg(&g, upper)?;
    let m = minor(&g, a, b).map_err(|e| Failure::Math(format!("{e}\n")))?;
    emit_geometry(&m)
}

fn cmd_check_hopf(path: &Path) -> CmdResult {
    let g = load_geometry(path)?;
    match verify_hopf_axiom(&g) {
        Ok(()) => Ok("OK\n".to_string()),
        Err(failure) => Err(Failure::Math(format!("{failure}\n"))),
    }
}

fn cmd_forbidden(path: &Path, pattern_path: &Path) -> CmdResult {
    let g = load_geometry(path)?;
    let pattern = load_geometry(pattern_path)?;
    match has_forbidden_minor(&g, &pattern) {
        Some(w) => Ok(format!(
            "minor found: lower={} upper={}\n",
            g.ground().render(w.lower),
            g.ground().render(w.upper)
        )),
        None => Ok("no minor isomorphic to pattern\n".to_string()),
    }
}

fn dot_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn cmd_hasse(path: &Path, dot: bool) -> CmdResult {
    let g = load_geometry(path)?;
    let l = lattice_of_closed_sets(&g);
    // nodes by (cardinality, label); the closed-set order already sorts by
    // cardinality first, so sort keys are (|set|, rendered label)
    let mut nodes: Vec<(usize, String)> = g
        .closed_sets()
        .iter()
        .map(|&m| (m.len(), g.ground().render(m)))
        .collect();
    nodes.sort();
    let mut edges: Vec<(usize, String, String)> = l
        .cover_pairs()
        .iter()
        .map(|&(a, b)| {
            (
                g.closed_sets()[a].len(),
                l.label(a).to_string(),
                l.label(b).to_string(),
            )
        })
        .collect();
    edges.sort();
    if !dot {
        let mut out = String::new();
        for (_, a, b) in &edges {
            let _ = writeln!(out, "{a} -> {b}");
        }
        return Ok(out);
    }
    let mut out = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=box];\n");
    for (_, label) in &nodes {
        let _ = writeln!(out, "  {};", dot_quote(label));
    }
    let max_card = g.ground().size();
    for card in 0..=max_card {
        let level: Vec<&(usize, String)> = nodes.iter().filter(|(c, _)| *c == card).collect();
        if level.is_empty() {
            continue;
        }
        out.push_str("  { rank=same;");
        for (_, label) in level {
            out.push(' ');
            out.push_str(&dot_quote(label));
            out.push(';');
        }
        out.push_str(" }\n");
    }
    for (_, a, b) in &edges {
        let _ = writeln!(out, "  {} -> {};", dot_quote(a), dot_quote(b));
    }
    out.push_str("}\n");
    Ok(out)
}

fn cmd_lattice_check(path: &Path) -> CmdResult {
    let l = load_lattice(path)?;
    let ranks: Vec<String> = l.rank_counts().iter().map(usize::to_string).collect();
    let mut out = String::new();
    let _ = writeln!(out, "elements: {}", l.len());
    let _ = writeln!(out, "height: {}", l.height());
    let _ = writeln!(out, "ranks: {}", ranks.join(" "));
    let _ = writeln!(out, "boolean: {}", l.is_boolean());
    let _ = writeln!(out, "distributive: {}", l.is_distributive());
    let _ = writeln!(out, "meet-distributive: {}", l.is_meet_distributive());
    let _ = writeln!(out, "canonical-key: {}", canonical_key(&l));
    Ok(out)
}
