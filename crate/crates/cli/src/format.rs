//! Line-oriented text formats for free complexes and module presentations.
//!
//! Complex files:
//!
//! ```text
//! group 2 1
//! deg 0 rank 1
//! deg 1 rank 1
//! d 1
//! -1 1
//! ```
//!
//! Each row of `d i` lists `k_i` blocks separated by ` | `, one block per
//! entry, holding the `p^r` coefficients in lexicographic element order. An
//! optional trailing `window lo hi` marks a truncated infinite complex.
//!
//! Module files hold `group p r` (optional when the group comes from the
//! command line), `gens g`, `relations c` followed by `g` rows of `c`
//! integers, and one `action i` block of `g` rows per generator. The single
//! token `trivial` is `Z` with identity actions.

use std::str::FromStr;

use tatecoh::{
    ElementaryAbelianGroup, FreeChainComplex, GroupRingElement, GroupRingMatrix, IntMatrix,
    Integer, ModulePresentation,
};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("unexpected end of input: {0}")]
    Eof(String),
    #[error("module group {found} does not match {expected}")]
    GroupMismatch {
        expected: ElementaryAbelianGroup,
        found: ElementaryAbelianGroup,
    },
    #[error("no group given for the module")]
    MissingGroup,
    #[error(transparent)]
    Core(#[from] tatecoh::Error),
}

type Result<T> = std::result::Result<T, FormatError>;

struct Lines<'a> {
    inner: std::iter::Peekable<Box<dyn Iterator<Item = (usize, &'a str)> + 'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let it: Box<dyn Iterator<Item = (usize, &'a str)>> = Box::new(
            text.lines()
                .enumerate()
                .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
                .filter(|(_, l)| !l.is_empty()),
        );
        Lines {
            inner: it.peekable(),
        }
    }

    fn next(&mut self, what: &str) -> Result<(usize, &'a str)> {
        self.inner
            .next()
            .ok_or_else(|| FormatError::Eof(what.to_string()))
    }

    fn peek_keyword(&mut self) -> Option<&'a str> {
        self.inner
            .peek()
            .and_then(|(_, l)| l.split_whitespace().next())
    }

    /// Reads a line `keyword a b ...` and returns the integer fields.
    fn keyword<T: FromStr>(&mut self, keyword: &str, count: usize) -> Result<(usize, Vec<T>)> {
        let (line, text) = self.next(keyword)?;
        let mut words = text.split_whitespace();
        if words.next() != Some(keyword) {
            return Err(syntax(line, format!("expected `{keyword}`")));
        }
        let fields: Vec<&str> = words.collect();
        if fields.len() != count {
            return Err(syntax(line, format!("`{keyword}` takes {count} numbers")));
        }
        let values = fields
            .iter()
            .map(|w| {
                w.parse::<T>()
                    .map_err(|_| syntax(line, format!("bad number `{w}`")))
            })
            .collect::<Result<_>>()?;
        Ok((line, values))
    }

    fn int_row(&mut self, len: usize, what: &str) -> Result<Vec<Integer>> {
        let (line, text) = self.next(what)?;
        let row = ints(line, text)?;
        if row.len() != len {
            return Err(syntax(
                line,
                format!("{what}: expected {len} integers, found {}", row.len()),
            ));
        }
        Ok(row)
    }

    fn matrix(&mut self, rows: usize, cols: usize, what: &str) -> Result<IntMatrix> {
        if rows == 0 || cols == 0 {
            return Ok(IntMatrix::zeros(rows, cols));
        }
        let data = (0..rows)
            .map(|_| self.int_row(cols, what))
            .collect::<Result<Vec<_>>>()?;
        Ok(IntMatrix::from_vec(rows, cols, data.concat()))
    }
}

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        msg: msg.into(),
    }
}

fn ints(line: usize, text: &str) -> Result<Vec<Integer>> {
    text.split_whitespace()
        .map(|w| {
            w.parse::<Integer>()
                .map_err(|_| syntax(line, format!("bad integer `{w}`")))
        })
        .collect()
}

fn group_line(lines: &mut Lines) -> Result<ElementaryAbelianGroup> {
    let (line, v) = lines.keyword::<u32>("group", 2)?;
    ElementaryAbelianGroup::new(v[0], v[1]).map_err(|e| syntax(line, e.to_string()))
}

fn render_row(row: &[Integer]) -> String {
    row.iter()
        .map(Integer::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn render_complex(c: &FreeChainComplex) -> String {
    let g = c.group();
    let mut out = format!("group {} {}\n", g.prime(), g.rank());
    for i in c.lo()..=c.hi() {
        out.push_str(&format!("deg {i} rank {}\n", c.rank(i)));
    }
    for i in c.lo() + 1..=c.hi() {
        out.push_str(&format!("d {i}\n"));
        let d = c.differential(i);
        for r in 0..d.rows() {
            let blocks: Vec<String> = (0..d.cols())
                .map(|k| render_row(d.get(r, k).coeffs()))
                .collect();
            if !blocks.is_empty() {
                out.push_str(&blocks.join(" | "));
                out.push('\n');
            }
        }
    }
    if let Some((lo, hi)) = c.window() {
        out.push_str(&format!("window {lo} {hi}\n"));
    }
    out
}

pub fn parse_complex(text: &str) -> Result<FreeChainComplex> {
    let mut lines = Lines::new(text);
    let group = group_line(&mut lines)?;
    let mut degrees = Vec::new();
    while lines.peek_keyword() == Some("deg") {
        let (line, text) = lines.next("deg")?;
        let w: Vec<&str> = text.split_whitespace().collect();
        let parsed = match w.as_slice() {
            ["deg", i, "rank", k] => i.parse::<i32>().ok().zip(k.parse::<usize>().ok()),
            _ => None,
        };
        let (i, k) = parsed.ok_or_else(|| syntax(line, "expected `deg i rank k`"))?;
        if let Some(&(prev, _)) = degrees.last() {
            if i != prev + 1 {
                return Err(syntax(line, "degrees must be consecutive"));
            }
        }
        degrees.push((i, k));
    }
    let Some(&(lo, _)) = degrees.first() else {
        return Err(FormatError::Eof("at least one `deg` line".into()));
    };
    let ranks: Vec<usize> = degrees.iter().map(|&(_, k)| k).collect();
    let n = group.order();
    let mut diffs = Vec::new();
    for (idx, &(i, cols)) in degrees.iter().enumerate().skip(1) {
        let rows = ranks[idx - 1];
        let (line, v) = lines.keyword::<i32>("d", 1)?;
        if v[0] != i {
            return Err(syntax(line, format!("expected `d {i}`")));
        }
        let mut entries = Vec::with_capacity(rows * cols);
        if rows > 0 && cols > 0 {
            for _ in 0..rows {
                let (line, text) = lines.next("differential row")?;
                let blocks: Vec<&str> = text.split('|').collect();
                if blocks.len() != cols {
                    return Err(syntax(
                        line,
                        format!("expected {cols} blocks, found {}", blocks.len()),
                    ));
                }
                for b in blocks {
                    let coeffs = ints(line, b)?;
                    if coeffs.len() != n {
                        return Err(syntax(line, format!("a block needs {n} coefficients")));
                    }
                    entries.push(GroupRingElement::from_coeffs(group, coeffs));
                }
            }
        }
        diffs.push(
            GroupRingMatrix::from_entries(group, rows, cols, entries)
                .map_err(tatecoh::Error::from)?,
        );
    }
    let mut c = FreeChainComplex::new(group, lo, ranks, diffs)?;
    if lines.peek_keyword() == Some("window") {
        let (_, v) = lines.keyword::<i32>("window", 2)?;
        c = c.with_window(v[0], v[1]);
    }
    if let Ok((line, _)) = lines.next("") {
        return Err(syntax(line, "trailing input"));
    }
    Ok(c)
}

pub fn render_module(m: &ModulePresentation) -> String {
    let g = m.group();
    let mut out = format!("group {} {}\ngens {}\n", g.prime(), g.rank(), m.gens());
    let matrix = |out: &mut String, a: &IntMatrix| {
        if a.cols() > 0 {
            for r in 0..a.rows() {
                out.push_str(&render_row(a.row(r)));
                out.push('\n');
            }
        }
    };
    out.push_str(&format!("relations {}\n", m.relations().cols()));
    matrix(&mut out, m.relations());
    for (i, a) in m.actions().iter().enumerate() {
        out.push_str(&format!("action {i}\n"));
        matrix(&mut out, a);
    }
    out
}

/// Parses a module; `group` is required when the text has no `group` line.
pub fn parse_module(
    text: &str,
    group: Option<ElementaryAbelianGroup>,
) -> Result<ModulePresentation> {
    let mut lines = Lines::new(text);
    let declared = if lines.peek_keyword() == Some("group") {
        Some(group_line(&mut lines)?)
    } else {
        None
    };
    let g = match (declared, group) {
        (Some(a), Some(b)) if a != b => {
            return Err(FormatError::GroupMismatch {
                expected: b,
                found: a,
            })
        }
        (Some(a), _) | (None, Some(a)) => a,
        (None, None) => return Err(FormatError::MissingGroup),
    };
    if lines.peek_keyword() == Some("trivial") {
        lines.next("trivial")?;
        if let Ok((line, _)) = lines.next("") {
            return Err(syntax(line, "trailing input after `trivial`"));
        }
        return Ok(ModulePresentation::trivial(g));
    }
    let (_, v) = lines.keyword::<usize>("gens", 1)?;
    let gens = v[0];
    let (_, v) = lines.keyword::<usize>("relations", 1)?;
    let relations = lines.matrix(gens, v[0], "relations")?;
    let mut actions = Vec::new();
    for i in 0..g.rank() as usize {
        let (line, v) = lines.keyword::<usize>("action", 1)?;
        if v[0] != i {
            return Err(syntax(line, format!("expected `action {i}`")));
        }
        actions.push(lines.matrix(gens, gens, "action")?);
    }
    if let Ok((line, _)) = lines.next("") {
        return Err(syntax(line, "trailing input"));
    }
    Ok(ModulePresentation::new(g, gens, relations, actions)?.validated()?)
}
