//! Line-oriented certificate format for vertical and full grid colourings.
//!
//! ```text
//! gridram v1
//! type full
//! m 2 n 2 r 2
//! v 1 1 2 1
//! v 2 1 2 1
//! h 1 1 2 1
//! h 2 1 2 2
//! ```
//!
//! Lines starting with `#` and blank lines are ignored. Every edge must appear
//! exactly once.

use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;

use crate::error::{Error, Result};
use crate::grid::{choose2, pairs0, rank0, CliqueColoring, Color, FullGridColoring, VerticalColoring};

/// Largest number of edge lines a certificate may declare.
const MAX_EDGES: usize = 50_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Vertical(VerticalColoring),
    Full(FullGridColoring),
}

impl Certificate {
    pub fn vertical(&self) -> &VerticalColoring {
        match self {
            Certificate::Vertical(v) => v,
            Certificate::Full(f) => f.vertical(),
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            Certificate::Vertical(v) => write_vertical(v),
            Certificate::Full(f) => write_full(f),
        }
    }
}

fn header(out: &mut String, kind: &str, m: usize, n: usize, r: usize) {
    let _ = writeln!(out, "gridram v1");
    let _ = writeln!(out, "type {kind}");
    let _ = writeln!(out, "m {m} n {n} r {r}");
}

fn vertical_lines(out: &mut String, chi: &VerticalColoring) {
    let pairs = pairs0(chi.m());
    for (i, col) in chi.columns().iter().enumerate() {
        for (&(a, b), c) in pairs.iter().zip(col.colors()) {
            let _ = writeln!(out, "v {} {} {} {}", i + 1, a + 1, b + 1, c);
        }
    }
}

pub fn write_vertical(chi: &VerticalColoring) -> String {
    let mut out = String::new();
    header(&mut out, "vertical", chi.m(), chi.n(), chi.r());
    vertical_lines(&mut out, chi);
    out
}

pub fn write_full(full: &FullGridColoring) -> String {
    let chi = full.vertical();
    let mut out = String::new();
    header(&mut out, "full", chi.m(), chi.n(), chi.r());
    vertical_lines(&mut out, chi);
    let pairs = pairs0(chi.n());
    for a in 1..=chi.m() {
        for (&(i, j), c) in pairs.iter().zip(full.row(a).colors()) {
            let _ = writeln!(out, "h {} {} {} {}", a, i + 1, j + 1, c);
        }
    }
    out
}

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn ints(line: usize, fields: &[&str]) -> Result<Vec<usize>> {
    fields
        .iter()
        .map(|f| f.parse::<usize>().map_err(|_| err(line, format!("`{f}` is not a non-negative integer"))))
        .collect()
}

/// A grid of optional colours filled while reading edge lines.
struct Slots {
    order: usize,
    count: usize,
    cells: Vec<Vec<Option<Color>>>,
}

impl Slots {
    fn new(copies: usize, order: usize) -> Self {
        Slots { order, count: copies, cells: vec![vec![None; choose2(order)]; copies] }
    }

    fn set(&mut self, line: usize, kind: char, owner: usize, a: usize, b: usize, c: Color) -> Result<()> {
        let (what, range) = if kind == 'v' { ("column", "rows") } else { ("row", "columns") };
        if owner == 0 || owner > self.count {
            return Err(err(line, format!("{what} {owner} is outside [1, {}]", self.count)));
        }
        if a == 0 || a >= b || b > self.order {
            return Err(err(line, format!("{range} ({a}, {b}) must satisfy 1 <= a < b <= {}", self.order)));
        }
        let slot = &mut self.cells[owner - 1][rank0(a - 1, b - 1, self.order)];
        if slot.is_some() {
            return Err(err(line, format!("duplicate edge {kind} {owner} {a} {b}")));
        }
        *slot = Some(c);
        Ok(())
    }

    fn finish(self, kind: char, last_line: usize) -> Result<Vec<CliqueColoring>> {
        let pairs = pairs0(self.order);
        let order = self.order;
        self.cells
            .into_iter()
            .enumerate()
            .map(|(owner, cells)| {
                let colors = cells
                    .into_iter()
                    .zip(&pairs)
                    .map(|(c, &(a, b))| {
                        c.ok_or_else(|| err(last_line, format!("missing edge {kind} {} {} {}", owner + 1, a + 1, b + 1)))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(CliqueColoring::new(order, colors).expect("slot grid has C(order,2) entries"))
            })
            .collect()
    }
}

pub fn parse(text: &str) -> Result<Certificate> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (ln, magic) = lines.next().ok_or_else(|| err(1, "empty certificate"))?;
    if magic != "gridram v1" {
        return Err(err(ln, format!("expected `gridram v1`, found `{magic}`")));
    }
    let (ln, kind) = lines.next().ok_or_else(|| err(ln + 1, "missing `type` line"))?;
    let full = match kind {
        "type vertical" => false,
        "type full" => true,
        _ => return Err(err(ln, format!("expected `type vertical` or `type full`, found `{kind}`"))),
    };
    let (ln, dims) = lines.next().ok_or_else(|| err(ln + 1, "missing dimension line"))?;
    let fields: Vec<&str> = dims.split_whitespace().collect();
    let (m, n, r) = match fields[..] {
        ["m", m, "n", n, "r", r] => {
            let v = ints(ln, &[m, n, r])?;
            (v[0], v[1], v[2])
        }
        _ => return Err(err(ln, format!("expected `m <int> n <int> r <int>`, found `{dims}`"))),
    };
    if m == 0 || n == 0 || r == 0 {
        return Err(err(ln, "m, n and r must be positive"));
    }
    if r > u16::MAX as usize {
        return Err(err(ln, format!("r = {r} exceeds {}", u16::MAX)));
    }
    let declared = choose2(m)
        .checked_mul(n)
        .and_then(|v| v.checked_add(if full { choose2(n).checked_mul(m)? } else { 0 }));
    if declared.is_none_or(|e| e > MAX_EDGES) {
        return Err(err(ln, "certificate declares too many edges"));
    }

    let mut vertical = Slots::new(n, m);
    let mut horizontal = Slots::new(if full { m } else { 0 }, n);
    let mut last = ln;
    for (ln, line) in lines {
        last = ln;
        let fields: Vec<&str> = line.split_whitespace().collect();
        let (kind, rest) = match fields.split_first() {
            Some((&"v", rest)) => ('v', rest),
            Some((&"h", rest)) if full => ('h', rest),
            Some((&"h", _)) => return Err(err(ln, "horizontal edge in a vertical certificate")),
            _ => return Err(err(ln, format!("unrecognised line `{line}`"))),
        };
        if rest.len() != 4 {
            return Err(err(ln, format!("expected `{kind} <int> <int> <int> <colour>`")));
        }
        let v = ints(ln, rest)?;
        if v[3] == 0 || v[3] > r {
            return Err(err(ln, format!("colour {} is outside [1, {r}]", v[3])));
        }
        let c = Color(v[3] as u16);
        if kind == 'v' {
            vertical.set(ln, 'v', v[0], v[1], v[2], c)?;
        } else {
            horizontal.set(ln, 'h', v[0], v[1], v[2], c)?;
        }
    }

    let columns = vertical.finish('v', last)?;
    let chi = VerticalColoring::new(m, r, columns).map_err(|e| err(last, e.to_string()))?;
    if !full {
        return Ok(Certificate::Vertical(chi));
    }
    let rows = horizontal.finish('h', last)?;
    let f = FullGridColoring::new(chi, rows).map_err(|e| err(last, e.to_string()))?;
    Ok(Certificate::Full(f))
}

/// Reads a certificate from a path, or from standard input when the path is `-`.
pub fn read_text(path: &Path) -> std::io::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
    }
}
