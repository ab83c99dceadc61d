use alloc::format;
use alloc::vec::Vec;

use super::{LambdaVec, MultisegError, Multisegment, Segment};
use crate::gradedpair::{self, OracleConfig};

impl Multisegment {
    /// `m⁻`: drop the last point of every segment.
    pub fn derivative(&self) -> Multisegment {
        let segs = self
            .segs
            .iter()
            .filter(|s| s.a < s.b)
            .map(|s| s.with_bounds(s.a, s.b - 1))
            .collect();
        Multisegment::from_sorted_unchecked(segs)
    }

    /// The `j`-fold derivative.
    pub fn derivative_iter(&self, j: u32) -> Multisegment {
        let segs = self
            .segs
            .iter()
            .filter(|s| s.b - s.a >= j as i64)
            .map(|s| s.with_bounds(s.a, s.b - j as i64))
            .collect();
        Multisegment::from_sorted_unchecked(segs)
    }

    /// Translates every segment by `c`.
    pub fn shift(&self, c: i64) -> Multisegment {
        let segs = self.segs.iter().map(|s| s.with_bounds(s.a + c, s.b + c)).collect();
        Multisegment::from_sorted_unchecked(segs)
    }

    /// `(m_max, m^max)`: the inclusion-maximal segments once each, and the rest.
    pub fn split_max(&self) -> Result<(Multisegment, Multisegment), MultisegError> {
        self.single_label()?;
        let mut top: Vec<Segment> = Vec::new();
        let mut rest: Vec<Segment> = Vec::new();
        for s in &self.segs {
            let maximal = !self.segs.iter().any(|t| t != s && t.contains(s));
            if maximal && !top.contains(s) {
                top.push(s.clone());
            } else {
                rest.push(s.clone());
            }
        }
        Ok((Multisegment::from_sorted_unchecked(top), Multisegment::from_sorted_unchecked(rest)))
    }

    /// Starts and ends strictly decrease in canonical order.
    pub fn is_ladder(&self) -> Result<bool, MultisegError> {
        self.single_label()?;
        Ok(self.segs.windows(2).all(|w| w[0].a > w[1].a && w[0].b > w[1].b))
    }

    /// `m^ram` for a unipotent multisegment, one line at a time.
    pub fn ram(&self) -> Result<Multisegment, MultisegError> {
        let mut out = Vec::new();
        for line in self.lines() {
            line.single_unipotent()?;
            let mut cur = line;
            while !cur.is_empty() {
                let (top, rest) = cur.split_max()?;
                out.extend(top.ladder_ram()?.segs);
                cur = rest;
            }
        }
        Ok(Multisegment::from_sorted_unchecked(out))
    }

    /// `λ_m`: ramified segments give `l(Δ)` parts equal to `c_ρ`, each segment of the
    /// ramified part of a unipotent line gives `l(Δ)` parts equal to 1.
    pub fn lambda(&self) -> LambdaVec {
        let mut acc = LambdaVec::empty();
        for line in self.lines() {
            if line.is_unipotent() {
                let ram = line.ram().expect("unipotent line");
                for s in ram.segments() {
                    acc = acc.vee(&LambdaVec::uniform(s.len() as usize, 1));
                }
            } else {
                for s in line.segments() {
                    acc = acc.vee(&LambdaVec::uniform(s.len() as usize, s.label.conductor()));
                }
            }
        }
        acc
    }

    /// `c = |λ_m|`.
    pub fn conductor(&self) -> u32 {
        self.lambda().size()
    }

    /// λ from the conductors of successive derivatives: `λ_k = c^{(n−k)} − c^{(n−k+1)}`.
    pub fn lambda_via_derivatives(&self) -> Result<LambdaVec, MultisegError> {
        let n = self.rank();
        let c: Vec<u32> = (0..=n).map(|j| self.derivative_iter(j).conductor()).collect();
        let mut padded = Vec::with_capacity(n as usize);
        for k in 1..=n as usize {
            let (hi, lo) = (c[n as usize - k], c[n as usize - k + 1]);
            if hi < lo {
                return Err(MultisegError::Invariant(format!("conductor increased at derivative {}", n as usize - k)));
            }
            padded.push(hi - lo);
        }
        LambdaVec::from_padded(&padded)
            .ok_or_else(|| MultisegError::Invariant(format!("derivative jumps not monotone: {padded:?}")))
    }

    /// The Zelevinsky dual of a unipotent single-line multisegment.
    ///
    /// Ladders use the dotted-line picture; anything else goes through the pair oracle.
    pub fn zelevinsky_dual(&self, cfg: &OracleConfig) -> Result<Multisegment, MultisegError> {
        self.single_unipotent()?;
        if self.is_empty() {
            return Ok(Multisegment::empty());
        }
        let dual = if self.is_ladder()? {
            self.ladder_dual()?
        } else {
            gradedpair::dual_with_escalation(self, cfg)?.value
        };
        check_dual(self, &dual)?;
        Ok(dual)
    }
}

/// Support and edge-count checks a dual must pass.
pub(crate) fn check_dual(m: &Multisegment, dual: &Multisegment) -> Result<(), MultisegError> {
    if dual.len() != m.len() {
        return Err(MultisegError::DualCheck(format!("length {} vs {}", dual.len(), m.len())));
    }
    let Some((lo, hi)) = m.support() else {
        return if dual.is_empty() { Ok(()) } else { Err(MultisegError::DualCheck(format!("{dual} for empty input"))) };
    };
    if let Some((dlo, dhi)) = dual.support() {
        if dlo < lo || dhi > hi {
            return Err(MultisegError::DualCheck(format!("support of {dual} leaves [{lo},{hi}]")));
        }
    }
    for x in lo..=hi {
        if dual.point_count(x) != m.point_count(x) {
            return Err(MultisegError::DualCheck(format!("point {x} covered differently by {dual}")));
        }
        let expected = m.kz_dual_edge_count(x)?;
        if dual.edge_count(x) as u64 != expected {
            return Err(MultisegError::DualCheck(format!("edge [{x},{}] count {} vs {expected}", x + 1, dual.edge_count(x))));
        }
    }
    Ok(())
}
