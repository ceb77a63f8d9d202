use super::AdgSpec;
use crate::gf::Fe;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Assignments up to this many are enumerated in full.
const EXHAUSTIVE_LIMIT: u64 = 1 << 24;
const SAMPLES: u64 = 100_000;
const SEED: u64 = 0x5eed;

/// An assignment with `f_j(p, ℓ) ≠ f_j(ℓ, p)`. Coordinates not read by `f_j`
/// are zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryWitness {
    pub function: usize,
    pub points: Vec<Fe>,
    pub lines: Vec<Fe>,
}

impl fmt::Display for SymmetryWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "f_{} differs under p = {:?}, l = {:?}",
            self.function, self.points, self.lines
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryReport {
    pub symmetric: bool,
    /// Whether every assignment was tried; otherwise a seeded sample.
    pub exhaustive: bool,
    pub checked: u64,
    pub witness: Option<SymmetryWitness>,
}

/// Tests `f_j(ℓ_1, p_1, ..) = f_j(p_1, ℓ_1, ..)` for every `j`, enumerating
/// all values of the coordinates each `f_j` actually reads when that space is
/// small enough, and a fixed-seed sample of it otherwise.
pub fn is_point_line_symmetric(spec: &AdgSpec) -> SymmetryReport {
    let q = spec.q() as u64;
    let mut exhaustive = true;
    let mut checked = 0;
    for j in 2..=spec.m() {
        let vars: Vec<usize> = spec.function(j).indices().into_iter().collect();
        let width = 2 * vars.len();
        let domain = q
            .checked_pow(width as u32)
            .filter(|&d| d <= EXHAUSTIVE_LIMIT);
        let assign = |digits: &[u32]| {
            let mut points = vec![Fe::ZERO; j - 1];
            let mut lines = vec![Fe::ZERO; j - 1];
            for (k, &i) in vars.iter().enumerate() {
                points[i - 1] = Fe(digits[k]);
                lines[i - 1] = Fe(digits[vars.len() + k]);
            }
            (points, lines)
        };
        let differs = |points: &[Fe], lines: &[Fe]| {
            spec.eval(j, points, lines) != spec.eval(j, lines, points)
        };
        let bad = match domain {
            Some(d) => {
                checked += d;
                (0..d)
                    .into_par_iter()
                    .map(|mut t| {
                        let mut digits = vec![0u32; width];
                        for slot in digits.iter_mut().rev() {
                            *slot = (t % q) as u32;
                            t /= q;
                        }
                        let (points, lines) = assign(&digits);
                        differs(&points, &lines).then_some((points, lines))
                    })
                    .find_first(Option::is_some)
                    .flatten()
            }
            None => {
                exhaustive = false;
                checked += SAMPLES;
                let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ j as u64);
                (0..SAMPLES).find_map(|_| {
                    let digits: Vec<u32> = (0..width).map(|_| rng.gen_range(0..q as u32)).collect();
                    let (points, lines) = assign(&digits);
                    differs(&points, &lines).then_some((points, lines))
                })
            }
        };
        if let Some((points, lines)) = bad {
            return SymmetryReport {
                symmetric: false,
                exhaustive,
                checked,
                witness: Some(SymmetryWitness {
                    function: j,
                    points,
                    lines,
                }),
            };
        }
    }
    SymmetryReport {
        symmetric: true,
        exhaustive,
        checked,
        witness: None,
    }
}
