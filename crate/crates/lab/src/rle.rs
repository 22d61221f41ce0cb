//! Run-length encoded cell lists, in the spirit of the Life RLE format.
//!
//! ```text
//! #T 40
//! x = 5, y = 3, x0 = -2, y0 = -1
//! 2b3o$5o$o!
//! ```
//!
//! Rows run from the top (`y0 + y - 1`) down to `y0`; `b` is vacant, `o`
//! occupied, `$` ends a row and `!` ends the pattern. Trailing vacant cells
//! of a row may be omitted. `#T` records the time and is optional.

use std::fmt::Write as _;

use polygrowth::{LatticeState, Rect, Site};

use crate::error::{LabError, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellList {
    pub window: Rect,
    pub time: u64,
    pub cells: Vec<Site>,
}

impl CellList {
    /// Occupied cells of a state, framed by their bounding box.
    pub fn from_state(state: &LatticeState) -> Self {
        let cells = state.occupied_sites();
        let window = polygrowth::ca::bounding_box(cells.iter().copied());
        CellList { window, time: state.time(), cells }
    }

    pub fn to_state(&self) -> LatticeState {
        LatticeState::finite(&self.cells)
    }
}

const LINE: usize = 70;

pub fn encode(list: &CellList) -> String {
    let w = list.window;
    let mut out = String::new();
    let _ = writeln!(out, "#T {}", list.time);
    let _ = writeln!(out, "x = {}, y = {}, x0 = {}, y0 = {}", w.width, w.height, w.x0, w.y0);
    let mut rows = vec![Vec::new(); w.height.max(0) as usize];
    for s in &list.cells {
        if w.contains(*s) {
            rows[(w.y1() - 1 - s.y) as usize].push(s.x);
        }
    }
    let mut body = String::new();
    let mut pending_rows = 0usize;
    let push = |body: &mut String, n: usize, c: char| {
        if n > 1 {
            let _ = write!(body, "{n}");
        }
        body.push(c);
    };
    for xs in rows.iter_mut() {
        xs.sort_unstable();
        xs.dedup();
        if xs.is_empty() {
            pending_rows += 1;
            continue;
        }
        if pending_rows > 0 {
            push(&mut body, pending_rows, '$');
        }
        let mut x = w.x0;
        let mut i = 0;
        while i < xs.len() {
            if xs[i] > x {
                push(&mut body, (xs[i] - x) as usize, 'b');
            }
            let mut j = i;
            while j + 1 < xs.len() && xs[j + 1] == xs[j] + 1 {
                j += 1;
            }
            push(&mut body, j - i + 1, 'o');
            x = xs[j] + 1;
            i = j + 1;
        }
        pending_rows = 1;
    }
    body.push('!');
    // Wrap without splitting a run.
    let mut line = 0;
    let mut token = String::new();
    for c in body.chars() {
        token.push(c);
        if !c.is_ascii_digit() {
            if line + token.len() > LINE {
                out.push('\n');
                line = 0;
            }
            out.push_str(&token);
            line += token.len();
            token.clear();
        }
    }
    out.push('\n');
    out
}

pub fn decode(text: &str, file: &str) -> Result<CellList> {
    let bad = |field: &str, msg: String| LabError::config(file, field, msg);
    let mut time = 0;
    let mut header = None;
    let mut body = String::new();
    for line in text.lines() {
        let line = line.trim();
        if let Some(rest) = line.strip_prefix("#T") {
            time = rest.trim().parse().map_err(|_| bad("#T", format!("bad time {rest:?}")))?;
        } else if line.starts_with('#') || line.is_empty() {
            continue;
        } else if header.is_none() {
            header = Some(parse_header(line).ok_or_else(|| bad("header", format!("bad header {line:?}")))?);
        } else {
            body.push_str(line);
        }
    }
    let window = header.ok_or_else(|| bad("header", "missing header".into()))?;
    let mut cells = Vec::new();
    let (mut x, mut y) = (window.x0, window.y1() - 1);
    let mut count = String::new();
    for c in body.chars() {
        if c.is_ascii_digit() {
            count.push(c);
            continue;
        }
        let n: i64 = if count.is_empty() { 1 } else { count.parse().map_err(|_| bad("body", "bad run".into()))? };
        count.clear();
        match c {
            'b' => x += n,
            'o' => {
                for k in 0..n {
                    cells.push(Site::new(x + k, y));
                }
                x += n;
            }
            '$' => {
                y -= n;
                x = window.x0;
            }
            '!' => break,
            c if c.is_whitespace() => {}
            other => return Err(bad("body", format!("unexpected {other:?}"))),
        }
    }
    if let Some(s) = cells.iter().find(|s| !window.contains(**s)) {
        return Err(bad("body", format!("cell ({}, {}) outside the declared window", s.x, s.y)));
    }
    Ok(CellList { window, time, cells })
}

fn parse_header(line: &str) -> Option<Rect> {
    let mut vals = [None; 4];
    for part in line.split(',') {
        let (k, v) = part.split_once('=')?;
        let v: i64 = v.trim().parse().ok()?;
        let slot = ["x", "y", "x0", "y0"].iter().position(|n| *n == k.trim())?;
        vals[slot] = Some(v);
    }
    let [w, h, x0, y0] = vals;
    Some(Rect::new(x0.unwrap_or(0), y0.unwrap_or(0), w?, h?))
}
