use std::path::Path;

use polygrowth::geometry::{wulff_shape, Q};
use polygrowth::MonotoneRule;

use super::write_text;
use crate::error::{IoContext, Result};
use crate::rle::decode;
use crate::svg::{Figure, Item, Style};

/// SVG of a stored state, optionally with `t L` of `rule` drawn on top
/// (`t` defaults to the state's recorded time).
pub fn render(state: &Path, overlay: Option<(&MonotoneRule, Option<u64>)>, out: &Path, size: u32) -> Result<()> {
    let text = std::fs::read_to_string(state).at(state)?;
    let list = decode(&text, &state.display().to_string())?;
    let mut fig = Figure::new(format!("{} at t = {}", state.display(), list.time));
    fig.push(Item::Cells { cells: list.cells.iter().map(|&s| (s, 0)).collect(), palette: vec!["#4a5a6a".into()] });
    if let Some((rule, t)) = overlay {
        let t = t.unwrap_or(list.time);
        let l = wulff_shape(&rule.skeleton())?;
        fig.push(Item::polygon(&l.scaled(Q::from_integer(t as i128)), "crimson"));
    }
    write_text(out, &fig.render(&Style { size, ..Style::default() }))
}
