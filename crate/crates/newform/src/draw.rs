//! Segment diagrams on a shared integer axis, smallest segment on top.

use newform_core::{Multisegment, MultisegError};

const CELL: usize = 3;

fn row(label: &str, label_width: usize, lo: i64, a: i64, b: i64) -> String {
    let mut line = format!("{label:<label_width$}");
    line.push_str(&" ".repeat((a - lo) as usize * CELL));
    for x in a..=b {
        line.push('|');
        if x < b {
            line.push_str(&"-".repeat(CELL - 1));
        }
    }
    line
}

fn block(out: &mut Vec<String>, m: &Multisegment, prime: &str, label_width: usize, lo: i64) {
    let segs = m.segments();
    for (i, s) in segs.iter().enumerate().rev() {
        out.push(row(&format!("Δ{prime}{}", i + 1), label_width, lo, s.a(), s.b()));
    }
}

/// One row per segment of `m`, then one per segment of `dual` if given. Rows are
/// numbered in canonical order and listed from the last (smallest) upward.
pub fn draw(m: &Multisegment, dual: Option<&Multisegment>) -> Result<String, MultisegError> {
    if let Some(s) = m.segments().iter().find(|s| !s.label().is_unipotent()) {
        return Err(MultisegError::Ramified(s.label().line().into()));
    }
    if m.lines().len() > 1 {
        return Err(MultisegError::MixedLines);
    }
    let Some((lo, hi)) = m.support() else {
        return Ok("(empty multisegment: no points on the axis)\n".into());
    };
    let rows = m.card() + dual.map_or(0, Multisegment::card);
    let label_width = format!("Δ'{rows}").chars().count() + 2;
    let mut axis = " ".repeat(label_width);
    for x in lo..=hi {
        axis.push_str(&format!("{x:<CELL$}"));
    }
    let mut out = vec![axis.trim_end().to_string()];
    block(&mut out, m, "", label_width, lo);
    if let Some(d) = dual {
        out.push(String::new());
        block(&mut out, d, "'", label_width, lo);
    }
    let mut text = out.join("\n");
    text.push('\n');
    Ok(text)
}
