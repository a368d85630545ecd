//! Plain-text file formats.
//!
//! Four formats are supported: closed-set geometries, abstract lattices,
//! rational point sets, and posets. Emitters are canonical (same value, same
//! bytes); parsers skip `#` comment lines and blank lines, require a
//! trailing newline, and report one-line diagnostics with 1-based line
//! numbers.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::constructions::{FinitePoset, PointConfiguration};
use crate::lattice::{FiniteLattice, LatticeError};
use crate::setfam::{validate_family, AxiomViolation, ConvexGeometry, GroundSet, Mask};
use crate::Rat;

/// A syntax-level failure, attributed to a line when one is responsible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: Option<usize>,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(n) => write!(f, "line {n}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

impl std::error::Error for ParseError {}

fn err_at(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line: Some(line),
        message: message.into(),
    }
}

fn err_file(message: impl Into<String>) -> ParseError {
    ParseError {
        line: None,
        message: message.into(),
    }
}

/// Significant lines (1-based numbers), after the trailing-newline check and
/// with comments and blanks dropped.
fn significant_lines(text: &str) -> Result<Vec<(usize, &str)>, ParseError> {
    if text.is_empty() {
        return Err(err_file("empty file"));
    }
    if !text.ends_with('\n') {
        return Err(err_file("missing trailing newline"));
    }
    Ok(text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect())
}

// ---------------------------------------------------------------------------
// geometry files
// ---------------------------------------------------------------------------

/// Reading a geometry can fail at the syntax level or, with well-formed
/// syntax, because the family violates a closed-family axiom.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryReadError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Axiom(#[from] AxiomViolation),
}

/// Parses the syntactic content of a geometry file: the ground set and the
/// listed subsets, without checking the axioms.
pub fn parse_geometry_parts(text: &str) -> Result<(GroundSet, Vec<Mask>), ParseError> {
    let lines = significant_lines(text)?;
    let Some(&(first_no, first)) = lines.first() else {
        return Err(err_file("expected a `ground:` line"));
    };
    let Some(rest) = first.strip_prefix("ground:") else {
        return Err(err_at(first_no, "expected a `ground:` line"));
    };
    let ground = GroundSet::new(rest.split_whitespace().map(str::to_string))
        .map_err(|e| err_at(first_no, e.to_string()))?;
    let mut masks = Vec::new();
    for &(no, line) in &lines[1..] {
        masks.push(parse_set_line(&ground, no, line)?);
    }
    Ok((ground, masks))
}

fn parse_set_line(ground: &GroundSet, no: usize, line: &str) -> Result<Mask, ParseError> {
    if line == "{}" {
        return Ok(Mask::EMPTY);
    }
    let mut mask = Mask::EMPTY;
    for token in line.split(',') {
        let token = token.trim();
        let Some(i) = ground.index_of(token) else {
            return Err(err_at(no, format!("unknown label `{token}`")));
        };
        if mask.contains(i) {
            return Err(err_at(no, format!("label `{token}` listed twice")));
        }
        mask = mask.insert(i);
    }
    Ok(mask)
}

/// Parses and validates a geometry file.
pub fn parse_geometry(text: &str) -> Result<ConvexGeometry, GeometryReadError> {
    let (ground, masks) = parse_geometry_parts(text)?;
    Ok(validate_family(ground, masks)?)
}

/// Canonical emission: `ground:` line, then one closed set per line,
/// comma-separated labels in ground order, lines sorted by (cardinality,
/// ground-order lexicographic), `{}` for the empty set, trailing newline.
pub fn format_geometry(g: &ConvexGeometry) -> String {
    let ground = g.ground();
    let mut out = String::from("ground:");
    for label in ground.labels() {
        out.push(' ');
        out.push_str(label);
    }
    out.push('\n');
    let mut sets: Vec<Mask> = g.closed_sets().to_vec();
    sets.sort_by(|a, b| ground.lex_cmp(*a, *b));
    for m in sets {
        if m.is_empty() {
            out.push_str("{}");
        } else {
            let labels: Vec<&str> = m.iter().map(|i| ground.label(i)).collect();
            out.push_str(&labels.join(","));
        }
        out.push('\n');
    }
    out
}

// ---------------------------------------------------------------------------
// abstract lattice files
// ---------------------------------------------------------------------------

/// Reading a lattice can fail syntactically or because the cover relation
/// does not describe a lattice.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeReadError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Parses an abstract lattice file: `elements: n`, then one cover pair
/// `i < j` per line (0-based indices).
pub fn parse_lattice(text: &str) -> Result<FiniteLattice, LatticeReadError> {
    let lines = significant_lines(text)?;
    let Some(&(first_no, first)) = lines.first() else {
        return Err(err_file("expected an `elements:` line").into());
    };
    let Some(rest) = first.strip_prefix("elements:") else {
        return Err(err_at(first_no, "expected an `elements:` line").into());
    };
    let n: usize = rest
        .trim()
        .parse()
        .map_err(|_| err_at(first_no, format!("invalid element count `{}`", rest.trim())))?;
    let mut pairs = Vec::new();
    for &(no, line) in &lines[1..] {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let [a, lt, b] = tokens.as_slice() else {
            return Err(err_at(no, "expected a cover pair `i < j`").into());
        };
        if *lt != "<" {
            return Err(err_at(no, "expected a cover pair `i < j`").into());
        }
        let a: usize = a
            .parse()
            .map_err(|_| err_at(no, format!("invalid index `{a}`")))?;
        let b: usize = b
            .parse()
            .map_err(|_| err_at(no, format!("invalid index `{b}`")))?;
        pairs.push((a, b));
    }
    Ok(FiniteLattice::from_cover_pairs(n, &pairs)?)
}

/// Canonical emission of the cover relation.
pub fn format_lattice(l: &FiniteLattice) -> String {
    let mut out = format!("elements: {}\n", l.len());
    for (a, b) in l.cover_pairs() {
        out.push_str(&format!("{a} < {b}\n"));
    }
    out
}

// ---------------------------------------------------------------------------
// point files
// ---------------------------------------------------------------------------

/// Parses a point file: one `label x y …` line per point, coordinates as
/// integers or `p/q` rationals.
pub fn parse_points(text: &str) -> Result<PointConfiguration, ParseError> {
    let lines = significant_lines(text)?;
    let mut labels: Vec<String> = Vec::new();
    let mut coords: Vec<Vec<Rat>> = Vec::new();
    let mut line_of: Vec<usize> = Vec::new();
    for &(no, line) in &lines {
        let mut tokens = line.split_whitespace();
        let label = tokens.next().expect("significant lines are nonempty");
        let point: Vec<Rat> = tokens
            .map(|t| Rat::from_str(t).map_err(|_| err_at(no, format!("invalid rational `{t}`"))))
            .collect::<Result<_, _>>()?;
        if point.is_empty() {
            return Err(err_at(no, "a point needs at least one coordinate"));
        }
        if let Some(first) = coords.first() {
            if point.len() != first.len() {
                return Err(err_at(
                    no,
                    format!(
                        "point has dimension {}, expected {}",
                        point.len(),
                        first.len()
                    ),
                ));
            }
        }
        if let Some(dup) = coords.iter().position(|c| *c == point) {
            return Err(err_at(no, format!("duplicate of point `{}`", labels[dup])));
        }
        labels.push(label.to_string());
        coords.push(point);
        line_of.push(no);
    }
    PointConfiguration::new(labels, coords).map_err(|e| err_file(e.to_string()))
}

// ---------------------------------------------------------------------------
// poset files
// ---------------------------------------------------------------------------

/// Parses a poset file: `elems: a b c …`, then one cover pair `a < b` per
/// line; the order is the reflexive-transitive closure of the covers.
pub fn parse_poset(text: &str) -> Result<FinitePoset, ParseError> {
    let lines = significant_lines(text)?;
    let Some(&(first_no, first)) = lines.first() else {
        return Err(err_file("expected an `elems:` line"));
    };
    let Some(rest) = first.strip_prefix("elems:") else {
        return Err(err_at(first_no, "expected an `elems:` line"));
    };
    let elems: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
    let index_of = |t: &str| elems.iter().position(|e| e == t);
    let mut pairs = Vec::new();
    for &(no, line) in &lines[1..] {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let [a, lt, b] = tokens.as_slice() else {
            return Err(err_at(no, "expected a cover pair `a < b`"));
        };
        if *lt != "<" {
            return Err(err_at(no, "expected a cover pair `a < b`"));
        }
        let a = index_of(a).ok_or_else(|| err_at(no, format!("unknown element `{a}`")))?;
        let b = index_of(b).ok_or_else(|| err_at(no, format!("unknown element `{b}`")))?;
        pairs.push((a, b));
    }
    FinitePoset::from_covers(elems, &pairs).map_err(|e| err_file(e.to_string()))
}
