use std::fmt::Write as _;

use thiserror::Error;

use crate::sphere::{ClassicalMosaic, FaceId, SphericalMosaic};
use crate::tiles::Tile;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}, column {col}: {message}")]
    Parse { line: usize, col: usize, message: String },
    #[error("line {line}: expected {expected} entries, found {found}")]
    DimensionMismatch { line: usize, expected: usize, found: usize },
}

fn parse_error(line: usize, col: usize, message: impl Into<String>) -> FormatError {
    FormatError::Parse { line, col, message: message.into() }
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Lines<'a> {
        Lines { inner: text.lines().enumerate(), last: 0 }
    }

    /// Next line with its 1-based number, trailing whitespace removed.
    fn next(&mut self, what: &str) -> Result<(usize, &'a str), FormatError> {
        match self.inner.next() {
            Some((i, l)) => {
                self.last = i + 1;
                Ok((i + 1, l.trim_end()))
            }
            None => Err(parse_error(self.last + 1, 1, format!("unexpected end of input, expected {what}"))),
        }
    }

    fn finish(mut self) -> Result<(), FormatError> {
        for (i, l) in self.inner.by_ref() {
            if !l.trim().is_empty() {
                return Err(parse_error(i + 1, 1, "trailing content"));
            }
        }
        Ok(())
    }
}

fn parse_header(lines: &mut Lines, tag: &str) -> Result<usize, FormatError> {
    let (no, line) = lines.next("header")?;
    let rest = line
        .strip_prefix(tag)
        .and_then(|r| r.strip_prefix(" v1 n="))
        .ok_or_else(|| parse_error(no, 1, format!("expected header `{tag} v1 n=<n>`")))?;
    let col = line.len() - rest.len() + 1;
    let n: usize = rest.parse().map_err(|_| parse_error(no, col, "n must be a positive integer"))?;
    if n == 0 {
        return Err(parse_error(no, col, "n must be positive"));
    }
    Ok(n)
}

fn parse_row(lines: &mut Lines, n: usize, out: &mut Vec<Tile>) -> Result<(), FormatError> {
    let (no, line) = lines.next("a row of tiles")?;
    let mut found = 0;
    let mut col = 1;
    for tok in line.split(' ') {
        if tok.is_empty() {
            return Err(parse_error(no, col, "tiles must be separated by single spaces"));
        }
        let tile = tok
            .parse::<u8>()
            .ok()
            .filter(|_| tok == "0" || !tok.starts_with('0'))
            .and_then(Tile::new)
            .ok_or_else(|| parse_error(no, col, format!("unknown tile `{tok}`")))?;
        found += 1;
        if found <= n {
            out.push(tile);
        }
        col += tok.len() + 1;
    }
    if found != n {
        return Err(FormatError::DimensionMismatch { line: no, expected: n, found });
    }
    Ok(())
}

/// Parses the `.smt` format; connectivity is not checked.
pub fn parse_smt(text: &str) -> Result<SphericalMosaic, FormatError> {
    let mut lines = Lines::new(text);
    let n = parse_header(&mut lines, "smt")?;
    let mut tiles = Vec::with_capacity(6 * n * n);
    for face in FaceId::ALL {
        let (no, line) = lines.next("a face label")?;
        if line != face.letter().to_string() {
            return Err(parse_error(no, 1, format!("expected face label `{}`", face.letter())));
        }
        for _ in 0..n {
            parse_row(&mut lines, n, &mut tiles)?;
        }
    }
    lines.finish()?;
    Ok(SphericalMosaic::from_tiles(n, tiles).expect("six full faces"))
}

fn write_rows(out: &mut String, tiles: &[Tile], n: usize) {
    for row in tiles.chunks(n) {
        let tokens: Vec<String> = row.iter().map(|t| t.kind().to_string()).collect();
        out.push_str(&tokens.join(" "));
        out.push('\n');
    }
}

pub fn serialize_smt(m: &SphericalMosaic) -> String {
    let n = m.n();
    let mut out = String::new();
    writeln!(out, "smt v1 n={n}").expect("string write");
    for face in FaceId::ALL {
        out.push(face.letter());
        out.push('\n');
        write_rows(&mut out, m.face_tiles(face), n);
    }
    out
}

pub fn parse_kmt(text: &str) -> Result<ClassicalMosaic, FormatError> {
    let mut lines = Lines::new(text);
    let n = parse_header(&mut lines, "kmt")?;
    let mut tiles = Vec::with_capacity(n * n);
    for _ in 0..n {
        parse_row(&mut lines, n, &mut tiles)?;
    }
    lines.finish()?;
    let rows: Vec<Vec<Tile>> = tiles.chunks(n).map(|r| r.to_vec()).collect();
    Ok(ClassicalMosaic::from_rows(&rows).expect("square"))
}

pub fn serialize_kmt(k: &ClassicalMosaic) -> String {
    let mut out = format!("kmt v1 n={}\n", k.n());
    write_rows(&mut out, k.tiles(), k.n());
    out
}

/// One-line form `n:` then faces split by `|`, rows by `/`, tiles by `.`.
pub fn to_compact(m: &SphericalMosaic) -> String {
    let n = m.n();
    let faces: Vec<String> = FaceId::ALL
        .into_iter()
        .map(|f| {
            m.face_tiles(f)
                .chunks(n)
                .map(|r| r.iter().map(|t| t.kind().to_string()).collect::<Vec<_>>().join("."))
                .collect::<Vec<_>>()
                .join("/")
        })
        .collect();
    format!("{n}:{}", faces.join("|"))
}

pub fn parse_compact(text: &str) -> Result<SphericalMosaic, FormatError> {
    let text = text.trim();
    let (n, body) = text.split_once(':').ok_or_else(|| parse_error(1, 1, "expected `n:`"))?;
    let n: usize = n.parse().ok().filter(|n| *n > 0).ok_or_else(|| parse_error(1, 1, "bad size"))?;
    let mut tiles = Vec::with_capacity(6 * n * n);
    let faces: Vec<&str> = body.split('|').collect();
    if faces.len() != 6 {
        return Err(FormatError::DimensionMismatch { line: 1, expected: 6, found: faces.len() });
    }
    for face in faces {
        let rows: Vec<&str> = face.split('/').collect();
        if rows.len() != n {
            return Err(FormatError::DimensionMismatch { line: 1, expected: n, found: rows.len() });
        }
        for row in rows {
            let toks: Vec<&str> = row.split('.').collect();
            if toks.len() != n {
                return Err(FormatError::DimensionMismatch { line: 1, expected: n, found: toks.len() });
            }
            for tok in toks {
                let t = tok
                    .parse::<u8>()
                    .ok()
                    .and_then(Tile::new)
                    .ok_or_else(|| parse_error(1, 1, format!("unknown tile `{tok}`")))?;
                tiles.push(t);
            }
        }
    }
    Ok(SphericalMosaic::from_tiles(n, tiles).expect("six full faces"))
}

/// Accepts `.smt`, `.kmt` (embedded on F) or the compact form.
pub fn parse_any(text: &str) -> Result<SphericalMosaic, FormatError> {
    let head = text.trim_start();
    if head.starts_with("kmt") {
        let k = parse_kmt(text)?;
        let mut m = SphericalMosaic::blank(k.n());
        for r in 0..k.n() {
            for c in 0..k.n() {
                m.set(crate::sphere::CellAddr::new(FaceId::F, r, c), k.get(r, c));
            }
        }
        Ok(m)
    } else if head.starts_with("smt") {
        parse_smt(text)
    } else {
        parse_compact(text)
    }
}
