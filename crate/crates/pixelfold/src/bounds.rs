//! Closed-form paper-size arithmetic: the edge-technique bound, the
//! asymptotic seamless bound, mean folded thickness, and the two-scale
//! feasibility split.

use crate::geometry::GeometryError;
use num_rational::Ratio;

/// Semiperimeter bounds for an n×n board.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundReport {
    pub n: u32,
    /// Edge-technique bound: s = n².
    pub edge_bound: u64,
    /// Seamless asymptotic bound: s = ½n² + 8n + 8 − 5(n mod 4).
    pub demaine_bound: u64,
    pub best_known: u64,
    /// True once the asymptotic bound undercuts the edge bound.
    pub crossover: bool,
}

pub fn bound_report(n: u32) -> Result<BoundReport, GeometryError> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(GeometryError::BadBoardSide(n as i64));
    }
    let n64 = n as u64;
    let edge_bound = n64 * n64;
    let demaine_bound = n64 * n64 / 2 + 8 * n64 + 8 - 5 * (n64 % 4);
    Ok(BoundReport {
        n,
        edge_bound,
        demaine_bound,
        best_known: edge_bound.min(demaine_bound),
        crossover: demaine_bound < edge_bound,
    })
}

/// Mean folded thickness: paper area over board area, exact.
pub fn mean_thickness(paper_w: u64, paper_h: u64, n: u32) -> Ratio<u64> {
    Ratio::new(paper_w * paper_h, (n as u64) * (n as u64))
}

/// Whether the two-scale construction admits a square coarse sheet, and
/// the mechanism counts and side lengths it needs. For n = 4k+2 a square
/// of side a = 6 + 4m works with m = 2k(k+1) − 1; for n = 4k only the
/// almost-square a1 × a2 split does, with a1 + a2 = n².
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScaleSeparation {
    /// n = 2: the formula gives m = −1; no edge-mechanism pair fits.
    Degenerate { n: u32 },
    Square { n: u32, m: u64, a: u64 },
    AlmostSquare { n: u32, m1: u64, m2: u64, a1: u64, a2: u64 },
}

impl ScaleSeparation {
    pub fn feasible_square(&self) -> bool {
        matches!(self, ScaleSeparation::Square { .. })
    }

    /// Mean thickness of the coarse sheet over the board.
    pub fn mean_thickness(&self) -> Option<Ratio<u64>> {
        match *self {
            ScaleSeparation::Degenerate { .. } => None,
            ScaleSeparation::Square { n, a, .. } => {
                Some(Ratio::new(a * a, (n as u64) * (n as u64)))
            }
            ScaleSeparation::AlmostSquare { n, a1, a2, .. } => {
                Some(Ratio::new(a1 * a2, (n as u64) * (n as u64)))
            }
        }
    }
}

pub fn scale_separation(n: u32) -> Result<ScaleSeparation, GeometryError> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(GeometryError::BadBoardSide(n as i64));
    }
    let n64 = n as u64;
    if n % 4 == 2 {
        let k = (n64 - 2) / 4;
        if k == 0 {
            return Ok(ScaleSeparation::Degenerate { n });
        }
        let m = 2 * k * (k + 1) - 1;
        Ok(ScaleSeparation::Square { n, m, a: 6 + 4 * m })
    } else {
        let k = n64 / 4;
        let m1 = 2 * k * k - 2;
        let m2 = 2 * k * k - 1;
        Ok(ScaleSeparation::AlmostSquare {
            n,
            m1,
            m2,
            a1: n64 * n64 / 2 - 2,
            a2: n64 * n64 / 2 + 2,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_examples() {
        let b = bound_report(8).unwrap();
        assert_eq!((b.edge_bound, b.demaine_bound, b.crossover), (64, 104, false));
        let b = bound_report(16).unwrap();
        assert_eq!((b.edge_bound, b.demaine_bound, b.crossover), (256, 264, false));
        let b = bound_report(18).unwrap();
        assert_eq!(b.edge_bound, 324);
        assert_eq!(b.demaine_bound, 162 + 144 + 8 - 10);
        assert!(b.crossover);
        assert!(bound_report(7).is_err());
        assert!(bound_report(0).is_err());
    }

    #[test]
    fn first_crossover_is_after_16() {
        let first = (2..=40)
            .step_by(2)
            .find(|&n| bound_report(n).unwrap().crossover)
            .unwrap();
        assert_eq!(first, 18);
    }

    #[test]
    fn bound_gap_shrinks_monotonically_until_crossover() {
        // the −5(n mod 4) term makes the gap sawtooth over consecutive even
        // n (28 at n=10, 32 at n=12), so monotonicity holds per residue
        // class mod 4
        for start in [8u32, 10] {
            let mut prev: Option<i64> = None;
            for n in (start..=40).step_by(4) {
                let b = bound_report(n).unwrap();
                let gap = b.demaine_bound as i64 - b.edge_bound as i64;
                if let Some(p) = prev {
                    assert!(gap < p, "n={n}");
                }
                if b.crossover {
                    break;
                }
                prev = Some(gap);
            }
        }
    }

    #[test]
    fn thickness_examples() {
        assert_eq!(mean_thickness(8, 66, 8), Ratio::new(33, 4)); // 8.25
        assert_eq!(mean_thickness(32, 32, 8), Ratio::from_integer(16));
        for n in [2u32, 4, 6, 8] {
            let n2 = (n as u64) * (n as u64);
            assert_eq!(mean_thickness(n2, n2, n), Ratio::from_integer(n2));
        }
    }

    #[test]
    fn scale_separation_cases() {
        assert_eq!(scale_separation(6).unwrap(), ScaleSeparation::Square { n: 6, m: 3, a: 18 });
        assert_eq!(
            scale_separation(8).unwrap(),
            ScaleSeparation::AlmostSquare { n: 8, m1: 6, m2: 7, a1: 30, a2: 34 }
        );
        assert_eq!(scale_separation(2).unwrap(), ScaleSeparation::Degenerate { n: 2 });
        // thickness of the n=8 split: 30·34/64 = 15.9375 = n²/4 − 4/n²
        let t = scale_separation(8).unwrap().mean_thickness().unwrap();
        assert_eq!(t, Ratio::new(1020, 64));
    }

    #[test]
    fn sides_reconstruct_the_semiperimeter() {
        for n in (2..=40u32).step_by(2) {
            match scale_separation(n).unwrap() {
                ScaleSeparation::Degenerate { .. } => {}
                ScaleSeparation::Square { n, m, a } => {
                    assert_eq!(a, 6 + 4 * m);
                    assert_eq!(2 * a, (n as u64) * (n as u64));
                }
                ScaleSeparation::AlmostSquare { n, m1, m2, a1, a2 } => {
                    assert_eq!(a1, 6 + 4 * m1);
                    assert_eq!(a2, 6 + 4 * m2);
                    assert_eq!(a1 + a2, (n as u64) * (n as u64));
                }
            }
        }
    }

    #[test]
    fn almost_square_is_thinner_than_square() {
        for n in (4..=40u32).step_by(4) {
            let n2 = (n as u64) * (n as u64);
            let t = scale_separation(n).unwrap().mean_thickness().unwrap();
            assert!(t < Ratio::new(n2, 4));
        }
    }
}
