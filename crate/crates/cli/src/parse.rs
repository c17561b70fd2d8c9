//! Line-oriented input formats. `#` starts a comment; blank lines are ignored.
//!
//! Ring file:
//!
//! ```text
//! prime 101
//! [factor]
//! vars x y
//! relations x^2, y^2
//! [factor]
//! ```
//!
//! A `[factor]` without `vars` is the prime field. `prime` defaults to 101.
//!
//! Complex file:
//!
//! ```text
//! ring local.ring
//! [site 0]
//! window -1 0
//! ranks 1 1
//! [diff -1]
//! x
//! ```
//!
//! `ring` is resolved relative to the complex file and may be omitted when a
//! ring is given on the command line. Sites without a block are zero. A
//! `[diff i]` block holds the matrix of `d^i: X^i -> X^{i+1}` as `rank(i+1)`
//! rows of `rank(i)` comma-separated entries; omitted blocks are zero.
//! Entries are integer-coefficient sums of monomials such as `3*x^2*y - y + 1`.
//!
//! Poset file:
//!
//! ```text
//! [elements]
//! p depth=0
//! q depth=1 singular
//! [covers]
//! p < q
//! ```

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use resolvent_core::algebra::{LocalAlgebra, ProductRing};
use resolvent_core::complex::{FreeComplex, LocalComplex};
use resolvent_core::field::PrimeField;
use resolvent_core::matrix::LocalMatrix;
use resolvent_core::spectrum::SpecPoset;
use resolvent_core::Error;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("{path}:{line}:{col}: {msg}")]
    Parse { path: String, line: usize, col: usize, msg: String },
    #[error("{path}: invariant violation: {msg}")]
    InvariantViolation { path: String, msg: String },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
}

impl InputError {
    pub fn invariant(path: &Path, msg: impl ToString) -> Self {
        InputError::InvariantViolation { path: path.display().to_string(), msg: msg.to_string() }
    }

    /// Wraps a library error raised while validating a file.
    pub fn core(path: &Path, e: Error) -> Self {
        match e {
            Error::InvariantViolation(msg) => Self::invariant(path, msg),
            other => Self::invariant(path, other),
        }
    }
}

struct Line<'a> {
    no: usize,
    text: &'a str,
    /// Byte offset of `text` within the raw line.
    offset: usize,
}

struct Source<'a> {
    path: &'a Path,
    lines: Vec<Line<'a>>,
}

impl<'a> Source<'a> {
    fn new(path: &'a Path, text: &'a str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .filter_map(|(i, raw)| {
                let body = raw.split('#').next().unwrap_or("");
                let trimmed = body.trim();
                if trimmed.is_empty() {
                    return None;
                }
                let offset = body.len() - body.trim_start().len();
                Some(Line { no: i + 1, text: trimmed, offset })
            })
            .collect();
        Source { path, lines }
    }

    fn err(&self, line: &Line, col: usize, msg: impl Into<String>) -> InputError {
        InputError::Parse {
            path: self.path.display().to_string(),
            line: line.no,
            col: line.offset + col + 1,
            msg: msg.into(),
        }
    }
}

fn read(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|source| InputError::Io { path: path.display().to_string(), source })
}

/// Splits `key rest` and returns the column where `rest` starts.
fn keyword(text: &str) -> (&str, &str, usize) {
    match text.find(char::is_whitespace) {
        Some(i) => {
            let rest = text[i..].trim_start();
            (&text[..i], rest, text.len() - rest.len())
        }
        None => (text, "", text.len()),
    }
}

/// Parses a section header `[name arg]`.
fn header(text: &str) -> Option<(&str, &str)> {
    let inner = text.strip_prefix('[')?.strip_suffix(']')?.trim();
    let (name, arg, _) = keyword(inner);
    Some((name, arg))
}

fn parse_monomial(src: &Source, line: &Line, col: usize, text: &str, vars: &[String]) -> Result<Vec<u32>, InputError> {
    let mut exps = vec![0u32; vars.len()];
    for factor in text.split('*') {
        let f = factor.trim();
        let fcol = col + (factor.as_ptr() as usize - text.as_ptr() as usize) + (factor.len() - factor.trim_start().len());
        let (name, exp) = match f.split_once('^') {
            Some((n, e)) => {
                let e: u32 = e.trim().parse().map_err(|_| src.err(line, fcol, format!("bad exponent in `{f}`")))?;
                (n.trim(), e)
            }
            None => (f, 1),
        };
        let Some(i) = vars.iter().position(|v| v == name) else {
            return Err(src.err(line, fcol, format!("unknown variable `{name}`")));
        };
        exps[i] += exp;
    }
    Ok(exps)
}

type Relation = (usize, usize, String);

pub fn parse_ring_text(path: &Path, text: &str) -> Result<ProductRing, InputError> {
    let src = Source::new(path, text);
    let mut p = PrimeField::default().p();
    // (vars, relations as (line, column, text)) per factor
    let mut blocks: Vec<(Vec<String>, Vec<Relation>)> = Vec::new();
    for line in &src.lines {
        if let Some((name, _)) = header(line.text) {
            if name != "factor" {
                return Err(src.err(line, 0, format!("unknown section `{name}`")));
            }
            blocks.push((Vec::new(), Vec::new()));
            continue;
        }
        let (key, rest, col) = keyword(line.text);
        match (key, blocks.last_mut()) {
            ("prime", None) => {
                p = rest.parse().map_err(|_| src.err(line, col, format!("bad prime `{rest}`")))?;
            }
            ("vars", Some(block)) => block.0 = rest.split_whitespace().map(str::to_string).collect(),
            ("relations", Some(block)) => {
                let mut at = col;
                for rel in rest.split(',') {
                    block.1.push((line.no, at + rel.len() - rel.trim_start().len(), rel.trim().to_string()));
                    at += rel.len() + 1;
                }
            }
            _ => return Err(src.err(line, 0, format!("unexpected `{key}`"))),
        }
    }
    if blocks.is_empty() {
        return Err(InputError::invariant(path, "no [factor] blocks"));
    }
    let field = PrimeField::new(p).map_err(|e| InputError::core(path, e))?;
    let mut factors = Vec::new();
    for (vars, rels) in blocks {
        if vars.is_empty() {
            factors.push(LocalAlgebra::prime_field(field));
            continue;
        }
        let mut monomials = Vec::new();
        for (no, col, rel) in rels.iter().filter(|r| !r.2.is_empty()) {
            let line = src.lines.iter().find(|l| l.no == *no).expect("line exists");
            monomials.push(parse_monomial(&src, line, *col, rel, &vars)?);
        }
        factors.push(LocalAlgebra::new(field, vars, monomials).map_err(|e| InputError::core(path, e))?);
    }
    ProductRing::new(factors).map_err(|e| InputError::core(path, e))
}

pub fn load_ring(path: &Path) -> Result<Arc<ProductRing>, InputError> {
    Ok(Arc::new(parse_ring_text(path, &read(path)?)?))
}

/// Parses a polynomial with integer coefficients into an element of `alg`.
fn parse_poly(src: &Source, line: &Line, col: usize, text: &str, alg: &LocalAlgebra) -> Result<Vec<u32>, InputError> {
    let field = alg.field();
    let mut out = alg.zero();
    let bytes = text.as_bytes();
    let mut i = 0;
    let mut terms = 0;
    while i < bytes.len() {
        while i < bytes.len() && bytes[i] == b' ' {
            i += 1;
        }
        if i == bytes.len() {
            break;
        }
        let mut negative = false;
        if bytes[i] == b'+' || bytes[i] == b'-' {
            negative = bytes[i] == b'-';
            i += 1;
        } else if terms > 0 {
            return Err(src.err(line, col + i, "expected `+` or `-`"));
        }
        let start = i;
        while i < bytes.len() && bytes[i] != b'+' && bytes[i] != b'-' {
            i += 1;
        }
        let term = text[start..i].trim();
        let tcol = col + start + (text[start..i].len() - text[start..i].trim_start().len());
        if term.is_empty() {
            return Err(src.err(line, tcol, "empty term"));
        }
        let mut coef: i64 = 1;
        let mut mono = vec![0u32; alg.vars().len()];
        let mut fcol = tcol;
        for factor in term.split('*') {
            let f = factor.trim();
            if f.chars().all(|c| c.is_ascii_digit()) && !f.is_empty() {
                let v: i64 = f.parse().map_err(|_| src.err(line, fcol, format!("bad coefficient `{f}`")))?;
                coef = (coef * field.reduce(v) as i64) % field.p() as i64;
            } else {
                let m = parse_monomial(src, line, fcol, f, alg.vars())?;
                for (a, b) in mono.iter_mut().zip(m) {
                    *a += b;
                }
            }
            fcol += factor.len() + 1;
        }
        if let Some(k) = alg.monomial_index(&mono) {
            let c = if negative { field.neg(field.reduce(coef)) } else { field.reduce(coef) };
            out[k] = field.add(out[k], c);
        }
        terms += 1;
    }
    if terms == 0 {
        return Err(src.err(line, col, "empty entry"));
    }
    Ok(out)
}

#[derive(Default)]
struct SiteBlock {
    window: Option<(i64, i64)>,
    ranks: Option<Vec<usize>>,
    diffs: Vec<(i64, Vec<usize>)>,
}

/// Parses a complex; `ring` is used when given, otherwise the file's own
/// `ring` line is loaded.
pub fn parse_complex_text(
    path: &Path,
    text: &str,
    ring: Option<&Arc<ProductRing>>,
) -> Result<FreeComplex, InputError> {
    let src = Source::new(path, text);
    let mut ring_ref: Option<PathBuf> = None;
    let mut sites: Vec<(usize, SiteBlock)> = Vec::new();
    let mut in_diff = false;
    for (idx, line) in src.lines.iter().enumerate() {
        if let Some((name, arg)) = header(line.text) {
            match name {
                "site" => {
                    let s: usize = arg.parse().map_err(|_| src.err(line, 0, format!("bad site `{arg}`")))?;
                    if sites.iter().any(|b| b.0 == s) {
                        return Err(src.err(line, 0, format!("site {s} given twice")));
                    }
                    sites.push((s, SiteBlock::default()));
                    in_diff = false;
                }
                "diff" => {
                    let d: i64 = arg.parse().map_err(|_| src.err(line, 0, format!("bad degree `{arg}`")))?;
                    let Some(block) = sites.last_mut() else {
                        return Err(src.err(line, 0, "[diff] outside a [site] block"));
                    };
                    block.1.diffs.push((d, Vec::new()));
                    in_diff = true;
                }
                other => return Err(src.err(line, 0, format!("unknown section `{other}`"))),
            }
            continue;
        }
        if in_diff {
            let block = sites.last_mut().expect("inside a site");
            block.1.diffs.last_mut().expect("inside a diff").1.push(idx);
            continue;
        }
        let (key, rest, col) = keyword(line.text);
        match (key, sites.last_mut()) {
            ("ring", None) => {
                let base = path.parent().unwrap_or(Path::new("."));
                ring_ref = Some(base.join(rest));
            }
            ("window", Some(block)) => {
                if rest == "none" {
                    block.1.window = None;
                    block.1.ranks = Some(Vec::new());
                    continue;
                }
                let nums: Vec<i64> = rest
                    .split_whitespace()
                    .map(|t| t.parse().map_err(|_| src.err(line, col, format!("bad window `{rest}`"))))
                    .collect::<Result<_, _>>()?;
                match nums[..] {
                    [lo, hi] if lo <= hi => block.1.window = Some((lo, hi)),
                    _ => return Err(src.err(line, col, "window needs `lo hi` with lo <= hi")),
                }
            }
            ("ranks", Some(block)) => {
                let ranks = rest
                    .split_whitespace()
                    .map(|t| t.parse().map_err(|_| src.err(line, col, format!("bad rank `{t}`"))))
                    .collect::<Result<_, _>>()?;
                block.1.ranks = Some(ranks);
            }
            _ => return Err(src.err(line, 0, format!("unexpected `{key}`"))),
        }
    }
    let ring = match (ring, ring_ref) {
        (Some(r), _) => r.clone(),
        (None, Some(p)) => load_ring(&p)?,
        (None, None) => return Err(InputError::Usage(format!("{}: no ring given", path.display()))),
    };
    let mut parts: Vec<LocalComplex> = ring.factors().iter().map(|a| LocalComplex::zero(a.clone())).collect();
    for (s, block) in sites {
        if s >= ring.num_sites() {
            return Err(InputError::invariant(path, format!("site {s} is out of range")));
        }
        let alg = ring.factors()[s].clone();
        let Some((lo, hi)) = block.window else {
            if !block.diffs.is_empty() {
                return Err(InputError::invariant(path, format!("site {s}: differentials without a window")));
            }
            continue;
        };
        let ranks = block.ranks.unwrap_or_default();
        if ranks.len() as i64 != hi - lo + 1 {
            return Err(InputError::invariant(
                path,
                format!("site {s}: window has {} degrees but {} ranks", hi - lo + 1, ranks.len()),
            ));
        }
        let rank = |d: i64| if (lo..=hi).contains(&d) { ranks[(d - lo) as usize] } else { 0 };
        let mut diffs: Vec<LocalMatrix> = (lo..hi).map(|d| LocalMatrix::zeros(&alg, rank(d + 1), rank(d))).collect();
        for (d, rows) in block.diffs {
            if !(lo..hi).contains(&d) {
                return Err(InputError::invariant(path, format!("site {s}: d^{d} lies outside the window")));
            }
            let m = &mut diffs[(d - lo) as usize];
            if rows.len() != m.rows() {
                return Err(InputError::invariant(
                    path,
                    format!("site {s}: d^{d} has {} rows, expected {}", rows.len(), m.rows()),
                ));
            }
            for (r, &idx) in rows.iter().enumerate() {
                let line = &src.lines[idx];
                let mut at = 0;
                let cells: Vec<&str> = line.text.split(',').collect();
                if cells.len() != m.cols() {
                    return Err(src.err(line, 0, format!("row has {} entries, expected {}", cells.len(), m.cols())));
                }
                for (c, cell) in cells.iter().enumerate() {
                    m.set(r, c, parse_poly(&src, line, at, cell, &alg)?);
                    at += cell.len() + 1;
                }
            }
        }
        parts[s] = LocalComplex::new(alg, lo, ranks, diffs).map_err(|e| InputError::core(path, e))?;
    }
    FreeComplex::from_parts(ring, parts).map_err(|e| InputError::core(path, e))
}

pub fn load_complex(path: &Path, ring: Option<&Arc<ProductRing>>) -> Result<FreeComplex, InputError> {
    parse_complex_text(path, &read(path)?, ring)
}

pub fn parse_poset_text(path: &Path, text: &str) -> Result<SpecPoset, InputError> {
    let src = Source::new(path, text);
    let mut section = "";
    let mut labels: Vec<String> = Vec::new();
    let mut depth = Vec::new();
    let mut singular = Vec::new();
    let mut covers = Vec::new();
    for line in &src.lines {
        if let Some((name, _)) = header(line.text) {
            if name != "elements" && name != "covers" {
                return Err(src.err(line, 0, format!("unknown section `{name}`")));
            }
            section = if name == "elements" { "elements" } else { "covers" };
            continue;
        }
        match section {
            "elements" => {
                let mut words = line.text.split_whitespace();
                let label = words.next().expect("nonempty line").to_string();
                if labels.contains(&label) {
                    return Err(src.err(line, 0, format!("element `{label}` given twice")));
                }
                let (mut d, mut sing) = (0u32, false);
                for w in words {
                    let col = w.as_ptr() as usize - line.text.as_ptr() as usize;
                    if w == "singular" {
                        sing = true;
                    } else if let Some(v) = w.strip_prefix("depth=") {
                        d = v.parse().map_err(|_| src.err(line, col, format!("bad depth `{v}`")))?;
                    } else {
                        return Err(src.err(line, col, format!("unknown attribute `{w}`")));
                    }
                }
                labels.push(label);
                depth.push(d);
                singular.push(sing);
            }
            "covers" => {
                let Some((a, b)) = line.text.split_once('<') else {
                    return Err(src.err(line, 0, "expected `p < q`"));
                };
                let find = |name: &str, col: usize| {
                    labels
                        .iter()
                        .position(|l| l == name)
                        .ok_or_else(|| src.err(line, col, format!("unknown element `{name}`")))
                };
                let bcol = a.len() + 1 + (b.len() - b.trim_start().len());
                covers.push((find(a.trim(), 0)?, find(b.trim(), bcol)?));
            }
            _ => return Err(src.err(line, 0, "expected a section header")),
        }
    }
    SpecPoset::new(labels, &covers, depth, singular).map_err(|e| InputError::core(path, e))
}

pub fn load_poset(path: &Path) -> Result<SpecPoset, InputError> {
    parse_poset_text(path, &read(path)?)
}

/// Writes a complex in the complex-file format, without a `ring` line.
pub fn format_complex(x: &FreeComplex) -> String {
    let mut out = String::new();
    for (s, c) in x.parts().iter().enumerate() {
        let Some((lo, hi)) = c.window() else {
            continue;
        };
        let alg = c.algebra();
        out.push_str(&format!("[site {s}]\nwindow {lo} {hi}\n"));
        let ranks: Vec<String> = (lo..=hi).map(|d| c.rank(d).to_string()).collect();
        out.push_str(&format!("ranks {}\n", ranks.join(" ")));
        for d in lo..hi {
            let m = c.diff(d);
            if m.is_zero() {
                continue;
            }
            out.push_str(&format!("[diff {d}]\n"));
            for r in 0..m.rows() {
                let row: Vec<String> = (0..m.cols()).map(|k| alg.format_element(m.get(r, k))).collect();
                out.push_str(&row.join(", "));
                out.push('\n');
            }
        }
    }
    out
}

/// Writes a ring in the ring-file format.
pub fn format_ring(ring: &ProductRing) -> String {
    let mut out = format!("prime {}\n", ring.field().p());
    for a in ring.factors() {
        out.push_str("[factor]\n");
        if a.vars().is_empty() {
            continue;
        }
        out.push_str(&format!("vars {}\n", a.vars().join(" ")));
        let rels: Vec<String> = a
            .relations()
            .iter()
            .map(|m| {
                let parts: Vec<String> = m
                    .iter()
                    .zip(a.vars())
                    .filter(|(&e, _)| e > 0)
                    .map(|(&e, v)| if e == 1 { v.clone() } else { format!("{v}^{e}") })
                    .collect();
                parts.join("*")
            })
            .collect();
        out.push_str(&format!("relations {}\n", rels.join(", ")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> &'static Path {
        Path::new("test")
    }

    #[test]
    fn ring_dims() {
        let r = parse_ring_text(p(), "prime 101\n[factor]\nvars x\nrelations x^2\n").unwrap();
        assert_eq!(r.factors()[0].dim(), 2);
        let r = parse_ring_text(p(), "[factor]\nvars x y\nrelations x^2, y^3, x*y\n[factor]\n").unwrap();
        assert_eq!(r.factors()[0].dim(), 4);
        assert!(r.factors()[1].is_field());
    }

    #[test]
    fn ring_errors_have_positions() {
        let e = parse_ring_text(p(), "[factor]\nvars x\nrelations x^2, z\n").unwrap_err();
        assert_eq!(e.to_string(), "test:3:16: unknown variable `z`");
        let e = parse_ring_text(p(), "[factor]\nvars x y\nrelations x^2\n").unwrap_err();
        assert!(matches!(e, InputError::InvariantViolation { .. }));
    }

    #[test]
    fn complex_roundtrip() {
        let r = Arc::new(parse_ring_text(p(), "[factor]\nvars x y\nrelations x^2, y^2\n[factor]\n").unwrap());
        let text = "[site 0]\nwindow -1 0\nranks 2 1\n[diff -1]\n3*x - y + 2*x, x*y\n[site 1]\nwindow 0 0\nranks 1\n";
        let x = parse_complex_text(p(), text, Some(&r)).unwrap();
        let a = &r.factors()[0];
        assert_eq!(x.part(resolvent_core::PrimeSite(0)).diff(-1).get(0, 0), &a.add(&a.scale(5, &a.variable(0)), &a.neg(&a.variable(1)))[..]);
        let back = parse_complex_text(p(), &format_complex(&x), Some(&r)).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn d_squared_is_rejected() {
        let r = Arc::new(parse_ring_text(p(), "[factor]\nvars x\nrelations x^3\n").unwrap());
        let text = "[site 0]\nwindow -2 0\nranks 1 1 1\n[diff -2]\nx\n[diff -1]\nx\n";
        let e = parse_complex_text(p(), text, Some(&r)).unwrap_err();
        assert_eq!(e.to_string(), "test: invariant violation: d∘d ≠ 0 at degree -2");
    }

    #[test]
    fn cyclic_poset_is_rejected() {
        let text = "[elements]\na\nb\n[covers]\na < b\nb < a\n";
        let e = parse_poset_text(p(), text).unwrap_err();
        assert_eq!(e.to_string(), "test: invariant violation: order not antisymmetric");
    }

    #[test]
    fn poset_attributes() {
        let text = "[elements]\na depth=0\nb depth=1 singular\n[covers]\na < b\n";
        let poset = parse_poset_text(p(), text).unwrap();
        assert!(poset.leq(0, 1) && poset.is_singular(1) && poset.depth(1) == 1);
        let e = parse_poset_text(p(), "[elements]\na\n[covers]\na < c\n").unwrap_err();
        assert_eq!(e.to_string(), "test:4:5: unknown element `c`");
    }
}
