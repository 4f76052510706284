//! Flag and file parsing: the restricted polynomial grammar for `--phi`,
//! comma-separated rational vectors, and the JSON basis/generators files.

use std::path::Path;

use serde::Deserialize;

use cyclat::lattice::LatticeBasis;
use cyclat::polyring::{Poly, QuotientContext, RingElement};
use cyclat::rat::{parse_rational, rat, to_f64, Rational};
use cyclat::Error;

use crate::Failure;

/// Parses a monic integer polynomial in the restricted grammar: terms
/// `c`, `x`, `x^k`, or `c*x^k`, joined by `+` and `-`, whitespace free or
/// not.  Ring validation (monic, squarefree, nonzero constant term) runs
/// afterward, so "x^2-2*x+1" parses but is rejected as a modulus.
pub fn parse_phi(text: &str) -> cyclat::Result<QuotientContext> {
    QuotientContext::new(parse_integer_poly(text)?)
}

fn parse_integer_poly(text: &str) -> cyclat::Result<Poly> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    // Split into sign-prefixed terms.
    let mut terms: Vec<(i64, String)> = Vec::new();
    let mut sign = 1i64;
    let mut current = String::new();
    for (i, ch) in compact.chars().enumerate() {
        match ch {
            '+' | '-' => {
                if i == 0 {
                    sign = if ch == '-' { -1 } else { 1 };
                } else {
                    if current.is_empty() {
                        return Err(Error::Parse(format!("dangling sign in '{text}'")));
                    }
                    terms.push((sign, std::mem::take(&mut current)));
                    sign = if ch == '-' { -1 } else { 1 };
                }
            }
            _ => current.push(ch),
        }
    }
    if current.is_empty() {
        return Err(Error::Parse(format!("dangling sign in '{text}'")));
    }
    terms.push((sign, current));

    let mut coeffs: Vec<i64> = Vec::new();
    for (sign, term) in terms {
        let (coeff, degree) = parse_term(&term)?;
        if coeffs.len() <= degree {
            coeffs.resize(degree + 1, 0);
        }
        coeffs[degree] += sign * coeff;
    }
    Ok(Poly::new(coeffs.into_iter().map(rat).collect()))
}

/// One unsigned term: `c`, `x`, `x^k`, or `c*x^k`.
fn parse_term(term: &str) -> cyclat::Result<(i64, usize)> {
    let bad = || Error::Parse(format!("unrecognized term '{term}'"));
    match term.find('x') {
        None => {
            let c: i64 = term.parse().map_err(|_| bad())?;
            Ok((c, 0))
        }
        Some(pos) => {
            let coeff = match &term[..pos] {
                "" => 1,
                head => {
                    let head = head.strip_suffix('*').ok_or_else(bad)?;
                    head.parse().map_err(|_| bad())?
                }
            };
            let degree = match &term[pos + 1..] {
                "" => 1,
                tail => {
                    let tail = tail.strip_prefix('^').ok_or_else(bad)?;
                    tail.parse().map_err(|_| bad())?
                }
            };
            Ok((coeff, degree))
        }
    }
}

/// Comma-separated rationals, lowest coefficient first.
pub fn parse_vector(text: &str) -> cyclat::Result<Vec<Rational>> {
    text.split(',').map(|part| parse_rational(part.trim())).collect()
}

/// A ring element from a `--g`-style flag; the vector length must match
/// the ring dimension.
pub fn parse_element(ctx: &QuotientContext, text: &str) -> cyclat::Result<RingElement> {
    ctx.element_from_vector(&parse_vector(text)?)
}

/// Quality flag: a rational like `1/2` or a float like `0.25`.
pub fn parse_epsilon(text: &str) -> cyclat::Result<f64> {
    let value = if text.contains('/') {
        to_f64(&parse_rational(text)?)
    } else {
        text.trim().parse().map_err(|_| Error::Parse(format!("bad quality '{text}'")))?
    };
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Parse(format!("quality must be positive and finite, got '{text}'")))
    }
}

#[derive(Deserialize)]
struct BasisFile {
    n: usize,
    m: usize,
    basis: Vec<Vec<String>>,
}

#[derive(Deserialize)]
struct GeneratorsFile {
    phi: Vec<String>,
    generators: Vec<Vec<String>>,
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::Io(format!("bad JSON in {}: {e}", path.display())))
}

fn rational_columns(raw: &[Vec<String>]) -> Result<Vec<Vec<Rational>>, Failure> {
    raw.iter()
        .map(|col| col.iter().map(|s| parse_rational(s)).collect::<cyclat::Result<Vec<_>>>())
        .collect::<cyclat::Result<Vec<_>>>()
        .map_err(|e| Failure::Io(format!("bad rational in file: {e}")))
}

/// Loads a `{"n", "m", "basis": [[...] per column]}` file into a validated
/// basis; shape mismatches are treated as parse failures, rank problems as
/// domain errors.
pub fn load_basis(path: &Path) -> Result<LatticeBasis, Failure> {
    let file: BasisFile = read_json(path)?;
    if file.basis.len() != file.m || file.basis.iter().any(|col| col.len() != file.n) {
        return Err(Failure::Io(format!(
            "basis shape in {} does not match n = {}, m = {}",
            path.display(),
            file.n,
            file.m
        )));
    }
    let columns = rational_columns(&file.basis)?;
    LatticeBasis::from_columns(&columns).map_err(Failure::Domain)
}

/// Loads a `{"phi": [...], "generators": [[...], ...]}` file into a ring
/// and its module generators.
pub fn load_generators(path: &Path) -> Result<(QuotientContext, Vec<RingElement>), Failure> {
    let file: GeneratorsFile = read_json(path)?;
    let phi_coeffs = rational_columns(std::slice::from_ref(&file.phi))?.pop().expect("one row");
    let ctx = QuotientContext::new(Poly::new(phi_coeffs)).map_err(Failure::Domain)?;
    let generators = rational_columns(&file.generators)?
        .iter()
        .map(|v| ctx.element_from_vector(v))
        .collect::<cyclat::Result<Vec<_>>>()
        .map_err(Failure::Domain)?;
    Ok((ctx, generators))
}
