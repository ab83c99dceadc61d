use alloc::vec::Vec;

use super::{MultisegError, Multisegment, Segment};

impl Multisegment {
    /// Dual of a ladder by the dotted-line picture.
    ///
    /// Rows are the segments from the smallest up. A dot at `x` on one row joins the
    /// dot at `x+1` on the next row; each maximal chain of joined dots is one dual
    /// segment, read as an interval of x-coordinates.
    pub fn ladder_dual(&self) -> Result<Multisegment, MultisegError> {
        if !self.is_ladder()? {
            return Err(MultisegError::NotLadder);
        }
        let rows: Vec<&Segment> = self.segs.iter().rev().collect();
        let mut out = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            for x in row.a..=row.b {
                let has_pred = i > 0 && rows[i - 1].contains_point(x - 1);
                if has_pred {
                    continue;
                }
                let mut end = x;
                let mut j = i;
                while j + 1 < rows.len() && rows[j + 1].contains_point(end + 1) {
                    end += 1;
                    j += 1;
                }
                out.push(row.with_bounds(x, end));
            }
        }
        Ok(Multisegment::from_sorted_unchecked(out))
    }

    /// Ramified part of a unipotent ladder: `[x_{i−1} − 1, y_i]` for consecutive rows,
    /// skipping empty intervals.
    pub fn ladder_ram(&self) -> Result<Multisegment, MultisegError> {
        if !self.is_ladder()? {
            return Err(MultisegError::NotLadder);
        }
        self.single_unipotent()?;
        let out = self
            .segs
            .windows(2)
            .filter(|w| w[0].a - 1 <= w[1].b)
            .map(|w| w[1].with_bounds(w[0].a - 1, w[1].b))
            .collect();
        Ok(Multisegment::from_sorted_unchecked(out))
    }
}
